//! Splitting homomorphisms into (classical algebra) ⊗ (noncommutative tori).

use std::collections::{BTreeMap, HashMap};

use crate::diffforms::FormsAlgebra;
use crate::ncalg::{NCPoly, Word};
use crate::qgroup::{Bialgebra, Block};
use crate::rewrite::{Presentation, RewriteError, Theta};
use crate::scalar::{Angle, Coeff, CycloScalar};

/// Classical graded-commutative monomial (even exponents, sorted odd letters)
/// times a normal-ordered torus monomial in each torus factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplitMono {
    pub even: Vec<u32>,
    pub odd: Vec<bool>,
    pub tori: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SplitElement {
    pub terms: BTreeMap<SplitMono, CycloScalar>,
}

impl SplitElement {
    pub fn zero() -> Self {
        SplitElement { terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: SplitMono, c: CycloScalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(CycloScalar::zero);
        *e = e.add(&c);
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add_scaled(&mut self, o: &Self, s: &CycloScalar) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c.mul(s));
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.add_scaled(o, &CycloScalar::one().neg());
        r
    }

    /// True iff every torus factor is the unit.
    pub fn torus_trivial(&self) -> bool {
        self.terms.keys().all(|m| m.tori.iter().all(|t| t.iter().all(|&k| k == 0)))
    }
}

/// The target algebra: `n_even`/`n_odd` classical generators and tori with the given θ's.
#[derive(Clone, Debug)]
pub struct SplitAlgebra {
    pub n_even: usize,
    pub n_odd: usize,
    pub tori: Vec<Theta>,
}

impl SplitAlgebra {
    pub fn unit(&self) -> SplitMono {
        SplitMono {
            even: vec![0; self.n_even],
            odd: vec![false; self.n_odd],
            tori: self.tori.iter().map(|t| vec![0; t.n]).collect(),
        }
    }

    pub fn one(&self) -> SplitElement {
        let mut e = SplitElement::zero();
        e.add_term(self.unit(), CycloScalar::one());
        e
    }

    /// U^k U^l = exp(i Σ_{μ>ν} θ_{μν} k_μ l_ν) U^{k+l}.
    fn torus_phase(theta: &Theta, k: &[i64], l: &[i64]) -> Angle {
        let mut a = Angle::zero();
        for mu in 0..k.len() {
            for nu in 0..mu {
                let e = k[mu] * l[nu];
                if e != 0 {
                    a = a.add(theta.get(mu, nu).scale(e));
                }
            }
        }
        a
    }

    pub fn mul_mono(&self, a: &SplitMono, b: &SplitMono) -> Option<(SplitMono, CycloScalar)> {
        let mut sign = 0;
        let mut odd = a.odd.clone();
        for (i, &bi) in b.odd.iter().enumerate() {
            if !bi {
                continue;
            }
            if odd[i] {
                return None;
            }
            sign += a.odd[i + 1..].iter().filter(|&&x| x).count();
            odd[i] = true;
        }
        let even = a.even.iter().zip(&b.even).map(|(x, y)| x + y).collect();
        let mut phase = Angle::zero();
        let mut tori = Vec::with_capacity(a.tori.len());
        for (t, th) in self.tori.iter().enumerate() {
            phase = phase.add(Self::torus_phase(th, &a.tori[t], &b.tori[t]));
            tori.push(a.tori[t].iter().zip(&b.tori[t]).map(|(x, y)| x + y).collect());
        }
        let mut c = phase.phase();
        if sign % 2 == 1 {
            c = c.neg();
        }
        Some((SplitMono { even, odd, tori }, c))
    }

    pub fn mul(&self, x: &SplitElement, y: &SplitElement) -> SplitElement {
        let mut out = SplitElement::zero();
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                if let Some((m, c)) = self.mul_mono(a, b) {
                    out.add_term(m, c.mul(ca).mul(cb));
                }
            }
        }
        out
    }

    /// Image of p under the homomorphism with the given generator images.
    pub fn hom_image(&self, p: &NCPoly<CycloScalar>, images: &[SplitElement]) -> SplitElement {
        let mut out = SplitElement::zero();
        for (w, c) in &p.terms {
            let mut acc = self.one();
            for &g in w.letters() {
                acc = self.mul(&acc, &images[g as usize]);
            }
            out.add_scaled(&acc, c);
        }
        out
    }

    /// (d⊗I) with d the classical de Rham differential, even generator i ↦ odd generator i.
    pub fn d(&self, x: &SplitElement) -> SplitElement {
        let mut out = SplitElement::zero();
        for (m, c) in &x.terms {
            for i in 0..self.n_even {
                if m.even[i] == 0 || m.odd[i] {
                    continue;
                }
                let mut nm = m.clone();
                nm.even[i] -= 1;
                nm.odd[i] = true;
                let before = m.odd[..i].iter().filter(|&&b| b).count();
                let mut k = c.mul(&CycloScalar::from_i64(m.even[i] as i64));
                if before % 2 == 1 {
                    k = k.neg();
                }
                out.add_term(nm, k);
            }
        }
        out
    }

    /// Involution: classical letters permuted by `perm` (even part only), coefficients
    /// conjugated, (U₁^{k₁}⋯U_n^{k_n})* = U_n^{−k_n}⋯U₁^{−k₁} brought to normal order.
    pub fn star(&self, x: &SplitElement, perm: &[usize]) -> SplitElement {
        let mut out = SplitElement::zero();
        for (m, c) in &x.terms {
            assert!(m.odd.iter().all(|b| !b), "star is implemented on the even part");
            let mut acc = self.unit();
            for (i, &e) in m.even.iter().enumerate() {
                acc.even[perm[i]] += e;
            }
            let mut coeff = c.conj();
            for t in 0..self.tori.len() {
                for mu in (0..m.tori[t].len()).rev() {
                    let mut f = self.unit();
                    f.tori[t][mu] = -m.tori[t][mu];
                    let (nm, ph) = self.mul_mono(&acc, &f).expect("even");
                    acc = nm;
                    coeff = coeff.mul(&ph);
                }
            }
            out.add_term(acc, coeff);
        }
        out
    }

    fn gen_mono(&self, even: Option<usize>, odd: Option<usize>, tori: Vec<Vec<i64>>) -> SplitElement {
        let mut m = self.unit();
        if let Some(i) = even {
            m.even[i] = 1;
        }
        if let Some(i) = odd {
            m.odd[i] = true;
        }
        m.tori = tori;
        let mut e = SplitElement::zero();
        e.add_term(m, CycloScalar::one());
        e
    }
}

fn unit_vec(n: usize, i: usize, s: i64) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = s;
    v
}

/// st for Ω_alg(R^m_θ) and its quotients: z^μ ↦ z^μ₍₀₎ ⊗ U^μ, z̄^μ ↦ z̄^μ₍₀₎ ⊗ U^μ*,
/// x ↦ x₍₀₎ ⊗ 1, d-generators alike. Covers Pol(R^m_θ) as the degree-0 part.
pub struct PlaneSplitting {
    pub n: usize,
    pub with_x: bool,
    pub target: SplitAlgebra,
    images: Vec<SplitElement>,
}

impl PlaneSplitting {
    pub fn new(n: usize, theta: &Theta, with_x: bool) -> Self {
        let k = 2 * n + with_x as usize;
        let target = SplitAlgebra { n_even: k, n_odd: k, tori: vec![theta.clone()] };
        let torus = |g: usize| -> Vec<i64> {
            if g < n {
                unit_vec(n, g, 1)
            } else if g < 2 * n {
                unit_vec(n, g - n, -1)
            } else {
                vec![0; n]
            }
        };
        let mut images = Vec::new();
        for g in 0..k {
            images.push(target.gen_mono(Some(g), None, vec![torus(g)]));
        }
        for g in 0..k {
            images.push(target.gen_mono(None, Some(g), vec![torus(g)]));
        }
        PlaneSplitting { n, with_x, target, images }
    }

    pub fn st(&self, p: &NCPoly<CycloScalar>) -> SplitElement {
        self.target.hom_image(p, &self.images)
    }

    /// z ↔ z̄ on the classical letters, x fixed.
    pub fn conj_perm(&self) -> Vec<usize> {
        let n = self.n;
        (0..self.target.n_even).map(|g| if g < n { g + n } else if g < 2 * n { g - n } else { g }).collect()
    }

    /// Torus weight of a classical monomial: z ↦ e_μ, z̄ ↦ −e_μ.
    fn classical_weight(&self, m: &SplitMono) -> Vec<i64> {
        let n = self.n;
        let mut w = vec![0; n];
        for mu in 0..n {
            w[mu] += m.even[mu] as i64 - m.even[n + mu] as i64;
            w[mu] += m.odd[mu] as i64 - m.odd[n + mu] as i64;
        }
        w
    }

    /// Invariance under σ_s ⊗ τ_{−s}: classical weight equals torus exponent termwise.
    pub fn diagonal_invariant(&self, x: &SplitElement) -> bool {
        x.terms.keys().all(|m| self.classical_weight(m) == m.tori[0])
    }

    /// st(σ_s p) − (σ_s⊗I) st(p), with σ_s(z^μ) = e^{i s_μ} z^μ.
    pub fn sigma_defect(&self, p: &NCPoly<CycloScalar>, s: &[Angle]) -> SplitElement {
        let mut sp = NCPoly::zero();
        for (w, c) in &p.terms {
            let mut a = Angle::zero();
            for &g in w.letters() {
                let g = g as usize % (2 * self.n + self.with_x as usize);
                if g < self.n {
                    a = a.add(s[g]);
                } else if g < 2 * self.n {
                    a = a.sub(s[g - self.n]);
                }
            }
            sp.add_term(w.clone(), c.mul(&a.phase()));
        }
        let lhs = self.st(&sp);
        let mut rhs = SplitElement::zero();
        for (m, c) in &self.st(p).terms {
            let w = self.classical_weight(m);
            let a = (0..self.n).fold(Angle::zero(), |acc, mu| acc.add(s[mu].scale(w[mu])));
            rhs.add_term(m.clone(), c.mul(&a.phase()));
        }
        lhs.sub(&rhs)
    }

    /// The classical polynomial ⊗ 1 for p over the same generator names.
    pub fn classical(&self, p: &NCPoly<CycloScalar>) -> SplitElement {
        let k = 2 * self.n + self.with_x as usize;
        let mut imgs = Vec::new();
        let t = vec![vec![0; self.n]];
        for g in 0..k {
            imgs.push(self.target.gen_mono(Some(g), None, t.clone()));
        }
        for g in 0..k {
            imgs.push(self.target.gen_mono(None, Some(g), t.clone()));
        }
        self.target.hom_image(p, &imgs)
    }

    /// st(dω) − (d⊗I) st(ω); ω over Ω_alg generators.
    pub fn d_defect(&self, forms: &FormsAlgebra, p: &NCPoly<CycloScalar>) -> SplitElement {
        self.st(&forms.d_raw(p)).sub(&self.target.d(&self.st(p)))
    }
}

/// st : M_θ(2n,R) → M(2n,R) ⊗ T^n_θ ⊗ T^n_{−θ} (and Ω over it).
pub struct QGroupSplitting {
    pub n: usize,
    pub target: SplitAlgebra,
    images: Vec<SplitElement>,
    classical_images: Vec<SplitElement>,
}

impl QGroupSplitting {
    pub fn new(q: &Bialgebra) -> Self {
        let n = q.n;
        let k = q.gen_count();
        let target = SplitAlgebra { n_even: k, n_odd: k, tori: vec![q.theta.clone(), q.theta.neg()] };
        let mut images = vec![SplitElement::zero(); 2 * k];
        let mut classical_images = vec![SplitElement::zero(); 2 * k];
        let zero = vec![vec![0; n], vec![0; n]];
        for mu in 0..n {
            for nu in 0..n {
                for (b, s1, s2) in [(Block::A, 1, 1), (Block::B, 1, -1), (Block::ABar, -1, -1), (Block::BBar, -1, 1)] {
                    let g = q.idx(b, mu, nu);
                    let t = vec![unit_vec(n, mu, s1), unit_vec(n, nu, s2)];
                    images[g] = target.gen_mono(Some(g), None, t.clone());
                    images[g + k] = target.gen_mono(None, Some(g), t);
                    classical_images[g] = target.gen_mono(Some(g), None, zero.clone());
                    classical_images[g + k] = target.gen_mono(None, Some(g), zero.clone());
                }
            }
        }
        QGroupSplitting { n, target, images, classical_images }
    }

    pub fn st(&self, p: &NCPoly<CycloScalar>) -> SplitElement {
        self.target.hom_image(p, &self.images)
    }

    pub fn classical(&self, p: &NCPoly<CycloScalar>) -> SplitElement {
        self.target.hom_image(p, &self.classical_images)
    }

    /// a ↔ ā, b ↔ b̄ on the classical letters.
    pub fn conj_perm(&self) -> Vec<usize> {
        let nn = self.n * self.n;
        (0..self.target.n_even).map(|g| (g + 2 * nn) % (4 * nn)).collect()
    }

    /// Invariance under (σ_s⊗σ_t)(τ_{−s}⊗τ_{−t}).
    pub fn diagonal_invariant(&self, q: &Bialgebra, x: &SplitElement) -> bool {
        let n = self.n;
        x.terms.keys().all(|m| {
            let mut w = vec![0i64; 2 * n];
            for g in 0..q.gen_count() {
                let e = m.even[g] as i64 + m.odd[g] as i64;
                if e == 0 {
                    continue;
                }
                let r = g % (n * n);
                let (mu, nu) = (r / n, r % n);
                let (s1, s2) = match g / (n * n) {
                    0 => (1, 1),
                    1 => (1, -1),
                    2 => (-1, -1),
                    _ => (-1, 1),
                };
                w[mu] += s1 * e;
                w[n + nu] += s2 * e;
            }
            w[..n] == m.tori[0][..] && w[n..] == m.tori[1][..]
        })
    }
}

/// Every defining relation of `pres` maps to zero under `st`.
pub fn relations_vanish(pres: &Presentation, st: impl Fn(&NCPoly<CycloScalar>) -> SplitElement) -> bool {
    pres.relations.iter().all(|r| st(r).is_zero())
}

/// st(normal_form(w)) = st(w) for every word of degree ≤ `d`.
pub fn normal_form_compatible(
    pres: &Presentation,
    d: usize,
    st: impl Fn(&NCPoly<CycloScalar>) -> SplitElement,
) -> Result<bool, RewriteError> {
    let k = pres.gens.len();
    let mut layer = vec![Word::unit()];
    for _ in 0..d {
        let mut next = Vec::new();
        for w in &layer {
            for g in 0..k {
                let nw = w.concat(&Word::gen(g));
                let p = NCPoly::monomial(nw.clone(), CycloScalar::one());
                if st(&p) != st(&pres.normal_form(&p)?) {
                    return Ok(false);
                }
                next.push(nw);
            }
        }
        layer = next;
    }
    Ok(true)
}

/// Rank of a set of split elements by sparse elimination.
pub fn split_rank(elems: &[SplitElement]) -> usize {
    let mut cols: HashMap<SplitMono, usize> = HashMap::new();
    let mut pivots: HashMap<usize, BTreeMap<usize, CycloScalar>> = HashMap::new();
    let mut rank = 0;
    for e in elems {
        let mut row: BTreeMap<usize, CycloScalar> = BTreeMap::new();
        for (m, c) in &e.terms {
            let n = cols.len();
            let col = *cols.entry(m.clone()).or_insert(n);
            row.insert(col, c.clone());
        }
        while let Some((&c0, v)) = row.iter().next() {
            let v = v.clone();
            match pivots.get(&c0) {
                Some(p) => {
                    for (col, pc) in p {
                        let nv = row.get(col).cloned().unwrap_or_else(CycloScalar::zero).sub(&v.mul(pc));
                        if nv.is_zero() {
                            row.remove(col);
                        } else {
                            row.insert(*col, nv);
                        }
                    }
                }
                None => {
                    let inv = v.inv().expect("nonzero");
                    let p = row.iter().map(|(c, x)| (*c, x.mul(&inv))).collect();
                    pivots.insert(c0, p);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// Images of the normal words of each degree ≤ `d` have full rank; returns (degree, words, rank).
pub fn injectivity_ranks(
    pres: &Presentation,
    d: usize,
    st: impl Fn(&NCPoly<CycloScalar>) -> SplitElement,
) -> Vec<(usize, usize, usize)> {
    (0..=d)
        .map(|k| {
            let words = pres.normal_words(k);
            let imgs: Vec<_> = words.iter().map(|w| st(&NCPoly::monomial(w.clone(), CycloScalar::one()))).collect();
            (k, words.len(), split_rank(&imgs))
        })
        .collect()
}
