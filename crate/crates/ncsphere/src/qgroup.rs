//! The quantum matrix bialgebra M_θ(2n,R), its differential extension, the
//! coaction on forms, det_θ and the orthogonal quotient O_θ(2n).

use std::collections::HashMap;

use crate::diffforms::FormsAlgebra;
use crate::ncalg::{NCPoly, TensorChain, Word};
use crate::rewrite::{phase_presentation, PhaseGen, Presentation, RewriteError, Theta};
use crate::scalar::{Coeff, CycloScalar};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum QGroupError {
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error("coaction of the top form is not a multiple of the top form")]
    TopFormFactorization,
}

/// Which block a generator index belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Block {
    A,
    B,
    ABar,
    BBar,
}

/// M_θ(2n,R) and Ω_alg over it. Generators a^μ_ν, b^μ_ν, ā^μ_ν, b̄^μ_ν (each
/// block row-major, n² entries), then in the forms algebra their differentials.
#[derive(Clone, Debug)]
pub struct Bialgebra {
    pub n: usize,
    pub theta: Theta,
    pub m: Presentation,
    pub omega: Presentation,
    pub odd: Vec<bool>,
}

fn unit(n: usize, i: usize, s: i64) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = s;
    v
}

fn m_gens(n: usize, differentials: bool) -> Vec<PhaseGen> {
    let nn = n * n;
    let mut g = Vec::new();
    let blocks = [("a", 1, 1, 2), ("b", 1, -1, 3), ("a*", -1, -1, 0), ("b*", -1, 1, 1)];
    for (name, s1, s2, star_block) in blocks {
        for mu in 0..n {
            for nu in 0..n {
                let mut w = unit(n, mu, s1);
                w.extend(unit(n, nu, s2));
                let label = match name {
                    "a*" => format!("a{}{}*", mu + 1, nu + 1),
                    "b*" => format!("b{}{}*", mu + 1, nu + 1),
                    _ => format!("{}{}{}", name, mu + 1, nu + 1),
                };
                g.push(PhaseGen { name: label, star: star_block * nn + mu * n + nu, weight: w, odd: false });
            }
        }
    }
    if differentials {
        let k = g.len();
        for i in 0..k {
            let b = g[i].clone();
            g.push(PhaseGen { name: format!("d{}", b.name), star: b.star + k, weight: b.weight, odd: true });
        }
    }
    g
}

impl Bialgebra {
    pub fn new(n: usize, theta: &Theta) -> Result<Self, RewriteError> {
        let big = theta.direct_sum(&theta.neg());
        let m = phase_presentation(&format!("M_theta({},R)", 2 * n), &m_gens(n, false), &big, Vec::new())?;
        let omega = phase_presentation(&format!("Omega(M_theta({},R))", 2 * n), &m_gens(n, true), &big, Vec::new())?;
        let k = 4 * n * n;
        let odd = (0..2 * k).map(|g| g >= k).collect();
        Ok(Bialgebra { n, theta: theta.clone(), m, omega, odd })
    }

    pub fn gen_count(&self) -> usize {
        4 * self.n * self.n
    }

    pub fn idx(&self, b: Block, mu: usize, nu: usize) -> usize {
        let nn = self.n * self.n;
        let base = match b {
            Block::A => 0,
            Block::B => nn,
            Block::ABar => 2 * nn,
            Block::BBar => 3 * nn,
        };
        base + mu * self.n + nu
    }

    fn block_of(&self, g: usize) -> (Block, usize, usize) {
        let nn = self.n * self.n;
        let g = g % (4 * nn);
        let b = [Block::A, Block::B, Block::ABar, Block::BBar][g / nn];
        let r = g % nn;
        (b, r / self.n, r % self.n)
    }

    /// Δ on a generator of Ω(M_θ), as a list of (left letter, right letter) pairs with coefficient 1.
    fn delta_gen(&self, g: usize) -> TensorChain<CycloScalar> {
        let k = self.gen_count();
        let (blk, mu, nu) = self.block_of(g);
        let (first, second) = match blk {
            Block::A => ((Block::A, Block::A), (Block::B, Block::BBar)),
            Block::ABar => ((Block::ABar, Block::ABar), (Block::BBar, Block::B)),
            Block::B => ((Block::A, Block::B), (Block::B, Block::ABar)),
            Block::BBar => ((Block::ABar, Block::BBar), (Block::BBar, Block::A)),
        };
        let mut c = TensorChain::zero(2);
        let one = CycloScalar::one();
        for l in 0..self.n {
            for (x, y) in [first, second] {
                let left = self.idx(x, mu, l);
                let right = self.idx(y, l, nu);
                if g < k {
                    c.add_term(vec![Word::gen(left), Word::gen(right)], one.clone());
                } else {
                    // co-Leibniz: d x ⊗ y + x ⊗ d y (x has degree 0)
                    c.add_term(vec![Word::gen(left + k), Word::gen(right)], one.clone());
                    c.add_term(vec![Word::gen(left), Word::gen(right + k)], one.clone());
                }
            }
        }
        c
    }

    /// Graded tensor algebra Ω(M) ⊗_gr Ω(M).
    pub fn square(&self) -> GradedTensor<'_> {
        GradedTensor::new(vec![(&self.omega, &self.odd), (&self.omega, &self.odd)])
    }

    pub fn cube(&self) -> GradedTensor<'_> {
        GradedTensor::new(vec![(&self.omega, &self.odd), (&self.omega, &self.odd), (&self.omega, &self.odd)])
    }

    /// The coproduct, extended to Ω(M_θ) as a graded algebra homomorphism.
    pub fn coproduct(&self, p: &NCPoly<CycloScalar>) -> Result<TensorChain<CycloScalar>, RewriteError> {
        let images: Vec<_> = (0..self.odd.len()).map(|g| self.delta_gen(g)).collect();
        self.square().hom_image(p, &images)
    }

    pub fn counit(&self, p: &NCPoly<CycloScalar>) -> CycloScalar {
        let mut s = CycloScalar::zero();
        'terms: for (w, c) in &p.terms {
            for &g in w.letters() {
                let g = g as usize;
                if g >= self.gen_count() {
                    continue 'terms;
                }
                let (b, mu, nu) = self.block_of(g);
                if matches!(b, Block::B | Block::BBar) || mu != nu {
                    continue 'terms;
                }
            }
            s = s.add(c);
        }
        s
    }

    /// d on Ω(M_θ).
    pub fn d(&self, p: &NCPoly<CycloScalar>) -> Result<NCPoly<CycloScalar>, RewriteError> {
        let k = self.gen_count();
        let mut out = NCPoly::zero();
        for (w, c) in &p.terms {
            let l = w.letters();
            let mut odd_before = 0;
            for i in 0..l.len() {
                if (l[i] as usize) < k {
                    let mut nw = l.to_vec();
                    nw[i] += k as u8;
                    out.add_term(Word::from_slice(&nw), if odd_before % 2 == 1 { c.neg() } else { c.clone() });
                } else {
                    odd_before += 1;
                }
            }
        }
        self.omega.normal_form(&out)
    }

    /// (Δ⊗I)Δ(p) − (I⊗Δ)Δ(p).
    pub fn coassociativity_defect(&self, p: &NCPoly<CycloScalar>) -> Result<TensorChain<CycloScalar>, RewriteError> {
        let dp = self.coproduct(p)?;
        let cube = self.cube();
        let mut l = TensorChain::zero(3);
        let mut r = TensorChain::zero(3);
        for (t, c) in &dp.terms {
            let d0 = self.coproduct(&NCPoly::monomial(t[0].clone(), CycloScalar::one()))?;
            for (u, c2) in &d0.terms {
                l.add_term(vec![u[0].clone(), u[1].clone(), t[1].clone()], c.mul(c2));
            }
            let d1 = self.coproduct(&NCPoly::monomial(t[1].clone(), CycloScalar::one()))?;
            for (u, c2) in &d1.terms {
                r.add_term(vec![t[0].clone(), u[0].clone(), u[1].clone()], c.mul(c2));
            }
        }
        Ok(cube.reduce(&l.sub(&r))?)
    }

    /// (ε⊗I)Δ(p) − p and (I⊗ε)Δ(p) − p.
    pub fn counit_defect(&self, p: &NCPoly<CycloScalar>) -> Result<(NCPoly<CycloScalar>, NCPoly<CycloScalar>), RewriteError> {
        let dp = self.coproduct(p)?;
        let mut l = NCPoly::zero();
        let mut r = NCPoly::zero();
        for (t, c) in &dp.terms {
            let e0 = self.counit(&NCPoly::monomial(t[0].clone(), CycloScalar::one()));
            let e1 = self.counit(&NCPoly::monomial(t[1].clone(), CycloScalar::one()));
            l.add_term(t[1].clone(), c.mul(&e0));
            r.add_term(t[0].clone(), c.mul(&e1));
        }
        let p = self.omega.normal_form(p)?;
        Ok((self.omega.normal_form(&l.sub(&p))?, self.omega.normal_form(&r.sub(&p))?))
    }

    /// Δ(dω) − (d⊗I + (−1)^gr⊗d)Δ(ω).
    pub fn co_leibniz_defect(&self, p: &NCPoly<CycloScalar>) -> Result<TensorChain<CycloScalar>, RewriteError> {
        let lhs = self.coproduct(&self.d(p)?)?;
        let dp = self.coproduct(p)?;
        let mut rhs = TensorChain::zero(2);
        for (t, c) in &dp.terms {
            let a = NCPoly::monomial(t[0].clone(), CycloScalar::one());
            let b = NCPoly::monomial(t[1].clone(), CycloScalar::one());
            let da = self.d(&a)?;
            let db = self.d(&b)?;
            let sign = if self.word_degree(&t[0]) % 2 == 1 { c.neg() } else { c.clone() };
            rhs.add_scaled(&TensorChain::tensor(&[&da, &b]), c);
            rhs.add_scaled(&TensorChain::tensor(&[&a, &db]), &sign);
        }
        Ok(lhs.sub(&self.square().reduce(&rhs)?))
    }

    pub fn word_degree(&self, w: &Word) -> usize {
        w.letters().iter().filter(|&&g| self.odd[g as usize]).count()
    }

    /// Δ(r) for every defining relation of Ω(M_θ) reduces to 0.
    pub fn coproduct_respects_relations(&self) -> Result<bool, RewriteError> {
        for r in &self.omega.relations {
            if !self.coproduct(r)?.is_zero() {
                return Ok(false);
            }
            if !self.counit(r).is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The coaction δ : Ω(R^{2n}_θ) → Ω(M_θ) ⊗_gr Ω(R^{2n}_θ). With
    /// `differential = false` the images of dz are the ζ^μ (no da terms),
    /// landing in M_θ ⊗ Ω.
    pub fn coaction(&self, forms: &FormsAlgebra, p: &NCPoly<CycloScalar>, differential: bool) -> Result<TensorChain<CycloScalar>, RewriteError> {
        let n = self.n;
        assert!(!forms.with_x && forms.n == n);
        let k = self.gen_count();
        let one = CycloScalar::one();
        let mut images = Vec::new();
        // generators of forms: z (0..n), z̄ (n..2n), dz (2n..3n), dz̄ (3n..4n)
        for g in 0..4 * n {
            let (bar, dd) = ((g / n) % 2 == 1, g >= 2 * n);
            let mu = g % n;
            let mut c = TensorChain::zero(2);
            for nu in 0..n {
                let (x, y) = if bar { (Block::ABar, Block::BBar) } else { (Block::A, Block::B) };
                let zx = if bar { n + nu } else { nu };
                let zy = if bar { nu } else { n + nu };
                for (blk, z) in [(x, zx), (y, zy)] {
                    let m = self.idx(blk, mu, nu);
                    if dd {
                        c.add_term(vec![Word::gen(m), Word::gen(z + 2 * n)], one.clone());
                        if differential {
                            c.add_term(vec![Word::gen(m + k), Word::gen(z)], one.clone());
                        }
                    } else {
                        c.add_term(vec![Word::gen(m), Word::gen(z)], one.clone());
                    }
                }
            }
            images.push(c);
        }
        let t = GradedTensor::new(vec![(&self.omega, &self.odd), (&forms.pres, &forms.odd)]);
        t.hom_image(p, &images)
    }

    /// δ maps every relation of Ω(R^{2n}_θ) to 0.
    pub fn coaction_respects_relations(&self, forms: &FormsAlgebra, differential: bool) -> Result<bool, RewriteError> {
        for r in &forms.pres.relations {
            if !self.coaction(forms, r, differential)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// (Δ⊗I)δ(ω) − (I⊗δ)δ(ω).
    pub fn coaction_coassociativity_defect(&self, forms: &FormsAlgebra, p: &NCPoly<CycloScalar>) -> Result<TensorChain<CycloScalar>, RewriteError> {
        let dp = self.coaction(forms, p, true)?;
        let mut l = TensorChain::zero(3);
        let mut r = TensorChain::zero(3);
        for (t, c) in &dp.terms {
            let d0 = self.coproduct(&NCPoly::monomial(t[0].clone(), CycloScalar::one()))?;
            for (u, c2) in &d0.terms {
                l.add_term(vec![u[0].clone(), u[1].clone(), t[1].clone()], c.mul(c2));
            }
            let d1 = self.coaction(forms, &NCPoly::monomial(t[1].clone(), CycloScalar::one()), true)?;
            for (u, c2) in &d1.terms {
                // t[0] ⊗ (u0 ⊗ u1): moving nothing past anything, no sign
                r.add_term(vec![t[0].clone(), u[0].clone(), u[1].clone()], c.mul(c2));
            }
        }
        let t = GradedTensor::new(vec![(&self.omega, &self.odd), (&self.omega, &self.odd), (&forms.pres, &forms.odd)]);
        t.reduce(&l.sub(&r))
    }

    /// (ε⊗I)δ(ω) − ω.
    pub fn coaction_counit_defect(&self, forms: &FormsAlgebra, p: &NCPoly<CycloScalar>) -> Result<NCPoly<CycloScalar>, RewriteError> {
        let dp = self.coaction(forms, p, true)?;
        let mut l = NCPoly::zero();
        for (t, c) in &dp.terms {
            l.add_term(t[1].clone(), c.mul(&self.counit(&NCPoly::monomial(t[0].clone(), CycloScalar::one()))));
        }
        forms.pres.normal_form(&l.sub(p))
    }

    /// det_θ from δ(Π dz̄^μ dz^μ) = det_θ ⊗ Π dz̄^μ dz^μ.
    pub fn det_theta(&self) -> Result<NCPoly<CycloScalar>, QGroupError> {
        let forms = FormsAlgebra::plane(self.n, &self.theta, false)?;
        let top = forms.top_form();
        let top_nf = forms.pres.normal_form(&top)?;
        let (tw, tc) = match top_nf.terms.iter().next() {
            Some((w, c)) if top_nf.len() == 1 => (w.clone(), c.clone()),
            _ => return Err(QGroupError::TopFormFactorization),
        };
        let img = self.coaction(&forms, &top, false)?;
        let inv = tc.inv().expect("nonzero");
        let mut det = NCPoly::zero();
        for (t, c) in &img.terms {
            if t[1] != tw {
                return Err(QGroupError::TopFormFactorization);
            }
            det.add_term(t[0].clone(), c.mul(&inv));
        }
        Ok(self.m.normal_form(&det)?)
    }

    /// The O_θ(2n) ideal generators: Σ_μ(ā^μ_α a^μ_β + b^μ_α b̄^μ_β) − δ_{αβ},
    /// Σ_μ(ā^μ_α b^μ_β + b^μ_α ā^μ_β), Σ_μ(b̄^μ_α a^μ_β + a^μ_α b̄^μ_β).
    pub fn orthogonal_relations(&self) -> Vec<Vec<NCPoly<CycloScalar>>> {
        let n = self.n;
        let one = CycloScalar::one();
        let mut fams = vec![Vec::new(), Vec::new(), Vec::new()];
        for al in 0..n {
            for be in 0..n {
                let mut r = [NCPoly::zero(), NCPoly::zero(), NCPoly::zero()];
                for mu in 0..n {
                    let w = |x: Block, y: Block| Word::from_slice(&[self.idx(x, mu, al) as u8, self.idx(y, mu, be) as u8]);
                    r[0].add_term(w(Block::ABar, Block::A), one.clone());
                    r[0].add_term(w(Block::B, Block::BBar), one.clone());
                    r[1].add_term(w(Block::ABar, Block::B), one.clone());
                    r[1].add_term(w(Block::B, Block::ABar), one.clone());
                    r[2].add_term(w(Block::BBar, Block::A), one.clone());
                    r[2].add_term(w(Block::A, Block::BBar), one.clone());
                }
                if al == be {
                    r[0].add_term(Word::unit(), one.neg());
                }
                for (f, x) in fams.iter_mut().zip(r) {
                    f.push(x);
                }
            }
        }
        fams
    }

    /// C_alg(O_θ(2n)) completed through `degree`; `omit` drops one relation family.
    pub fn orthogonal_quotient(&self, degree: usize, omit: Option<usize>) -> Result<Presentation, RewriteError> {
        let mut rels: Vec<NCPoly<CycloScalar>> = self.m.rules().iter().map(|r| r.as_poly()).collect();
        let mut added = Vec::new();
        for (i, f) in self.orthogonal_relations().into_iter().enumerate() {
            if Some(i) != omit {
                added.extend(f);
            }
        }
        rels.extend(added.iter().cloned());
        let mut p = Presentation::from_relations(&format!("O_theta({})", 2 * self.n), self.m.gens.clone(), rels, degree)?;
        p.relations = self.m.relations.clone();
        p.relations.extend(added);
        Ok(p)
    }

    /// (det_θ)² − 1 reduces to 0 in the quotient completed through `degree`.
    /// Every rule lies in the ideal, so reduction to 0 certifies membership
    /// even when the completion is truncated.
    pub fn det_squared_is_one(&self, degree: usize) -> Result<bool, QGroupError> {
        let det = self.det_theta()?;
        let o = self.orthogonal_quotient(degree, None)?;
        Ok(o.normal_form(&det.mul(&det).sub(&NCPoly::one()))?.is_zero())
    }

    /// δ_R(Σ z̄^μ z^μ) = 1 ⊗ Σ z̄^μ z^μ in O_θ(2n) ⊗ Ω(R^{2n}_θ).
    pub fn orthogonal_quotient_check(&self, quotient: &Presentation) -> Result<bool, RewriteError> {
        let forms = FormsAlgebra::plane(self.n, &self.theta, false)?;
        let n = self.n;
        let mut r = NCPoly::zero();
        for mu in 0..n {
            r.add_term(Word::from_slice(&[(n + mu) as u8, mu as u8]), CycloScalar::one());
        }
        let img = self.coaction(&forms, &r, false)?;
        let t = GradedTensor::new(vec![(quotient, &self.odd[..self.gen_count()]), (&forms.pres, &forms.odd)]);
        let img = t.reduce(&img)?;
        let want = t.reduce(&TensorChain::tensor(&[&NCPoly::one(), &r]))?;
        Ok(img == want)
    }
}

/// Graded tensor product of presentations; each leg is reduced independently
/// and (a⊗b)(c⊗d) = (−1)^{|b||c|} ac⊗bd.
pub struct GradedTensor<'a> {
    legs: Vec<(&'a Presentation, &'a [bool])>,
}

impl<'a> GradedTensor<'a> {
    pub fn new(legs: Vec<(&'a Presentation, &'a [bool])>) -> Self {
        GradedTensor { legs }
    }

    fn degree(&self, leg: usize, w: &Word) -> usize {
        let odd = self.legs[leg].1;
        w.letters().iter().filter(|&&g| odd.get(g as usize).copied().unwrap_or(false)).count()
    }

    /// Reduce every leg to normal form and expand.
    pub fn reduce(&self, c: &TensorChain<CycloScalar>) -> Result<TensorChain<CycloScalar>, RewriteError> {
        let mut cache: Vec<HashMap<Word, NCPoly<CycloScalar>>> = vec![HashMap::new(); self.legs.len()];
        let mut out = TensorChain::zero(self.legs.len());
        for (t, c) in &c.terms {
            for (i, w) in t.iter().enumerate() {
                if !cache[i].contains_key(w) {
                    let nf = self.legs[i].0.normal_form(&NCPoly::monomial(w.clone(), CycloScalar::one()))?;
                    cache[i].insert(w.clone(), nf);
                }
            }
            let parts: Vec<_> = t.iter().enumerate().map(|(i, w)| &cache[i][w]).collect();
            out.add_scaled(&TensorChain::tensor(&parts), c);
        }
        Ok(out)
    }

    pub fn mul(&self, x: &TensorChain<CycloScalar>, y: &TensorChain<CycloScalar>) -> Result<TensorChain<CycloScalar>, RewriteError> {
        let k = self.legs.len();
        let mut raw = TensorChain::zero(k);
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                let mut sign = 0;
                for i in 0..k {
                    for j in 0..i {
                        sign += self.degree(i, &a[i]) * self.degree(j, &b[j]);
                    }
                }
                let t: Vec<Word> = (0..k).map(|i| a[i].concat(&b[i])).collect();
                let c = ca.mul(cb);
                raw.add_term(t, if sign % 2 == 1 { c.neg() } else { c });
            }
        }
        self.reduce(&raw)
    }

    /// Image of p under the algebra homomorphism sending generator g to images[g].
    pub fn hom_image(&self, p: &NCPoly<CycloScalar>, images: &[TensorChain<CycloScalar>]) -> Result<TensorChain<CycloScalar>, RewriteError> {
        let k = self.legs.len();
        let mut out = TensorChain::zero(k);
        let mut memo: HashMap<Word, TensorChain<CycloScalar>> = HashMap::new();
        for (w, c) in &p.terms {
            let l = w.letters();
            // longest memoized prefix
            let mut acc = TensorChain::zero(k);
            acc.add_term(vec![Word::unit(); k], CycloScalar::one());
            let mut start = 0;
            for j in (1..=l.len()).rev() {
                if let Some(v) = memo.get(&Word::from_slice(&l[..j])) {
                    acc = v.clone();
                    start = j;
                    break;
                }
            }
            for j in start..l.len() {
                acc = self.mul(&acc, &images[l[j] as usize])?;
                memo.insert(Word::from_slice(&l[..j + 1]), acc.clone());
            }
            out.add_scaled(&acc, c);
        }
        Ok(out)
    }
}
