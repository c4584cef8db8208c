//! Presentations as rewriting systems with deg-lex word order.
//!
//! Phase-commutation algebras (θ-planes, tori, quantum matrices, forms) are
//! given by quadratic rules that are confluent as written. The algebras 𝒜_u
//! and Sklyanin S(J) are not: no ranking of x⁰..x³ makes their six quadratic
//! rules confluent, so their rule sets are completed by overlap resolution up
//! to a fixed degree. Normal forms are unique for polynomials of degree at
//! most [`Presentation::complete_through`].

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use thiserror::Error;

use crate::ncalg::{AlgError, GeneratorSet, NCPoly, Word};
use crate::scalar::{Angle, Coeff, CycloScalar};

pub const DEFAULT_STEP_BUDGET: usize = 1_000_000;
/// Completion degree used by [`make_a_u`].
pub const AU_DEFAULT_DEGREE: usize = 6;

#[derive(Debug, Error, PartialEq)]
pub enum RewriteError {
    #[error("reduction exceeded the step budget of {0}")]
    BudgetExceeded(usize),
    #[error("singular elimination for triple {triple:?}: {reason}")]
    SingularElimination { triple: (usize, usize, usize), reason: String },
    #[error("theta matrix is not antisymmetric")]
    NonAntisymmetric,
    #[error("relation is not central")]
    NotCentral,
    #[error("unresolved overlaps remain at degree {0}")]
    ConfluenceFailure(usize),
    #[error("relations collapse the algebra (a nonzero constant lies in the ideal)")]
    Inconsistent,
    #[error(transparent)]
    Alg(#[from] AlgError),
}

/// lhs → rhs with every rhs word strictly below lhs.
#[derive(Clone, Debug, PartialEq)]
pub struct RewriteRule<C: Coeff> {
    pub lhs: Word,
    pub rhs: NCPoly<C>,
}

impl<C: Coeff> RewriteRule<C> {
    /// lhs − rhs, the ideal element the rule encodes.
    pub fn as_poly(&self) -> NCPoly<C> {
        let mut p = self.rhs.neg();
        p.add_term(self.lhs.clone(), C::one());
        p
    }
}

/// An unresolved ambiguity: the overlap word and the difference of the two
/// reduction results.
#[derive(Clone, Debug)]
pub struct Overlap<C: Coeff> {
    pub word: Word,
    pub difference: NCPoly<C>,
}

#[derive(Clone, Debug)]
pub struct Presentation<C: Coeff = CycloScalar> {
    pub name: String,
    pub gens: Arc<GeneratorSet>,
    rules: Vec<RewriteRule<C>>,
    /// The defining two-sided ideal generators, as supplied.
    pub relations: Vec<NCPoly<C>>,
    /// `None` when the rule set is confluent in every degree.
    pub complete_through: Option<usize>,
    pair_index: HashMap<(u8, u8), Vec<usize>>,
    single: Vec<Option<usize>>,
}

impl<C: Coeff> Presentation<C> {
    /// Rules taken as given (no completion). `complete_through` is set from
    /// the lhs lengths; call [`Presentation::check_confluence`] to verify.
    pub fn from_rules(name: &str, gens: Arc<GeneratorSet>, rules: Vec<RewriteRule<C>>, relations: Vec<NCPoly<C>>) -> Self {
        let mut p = Presentation {
            name: name.to_string(),
            gens,
            rules,
            relations,
            complete_through: None,
            pair_index: HashMap::new(),
            single: Vec::new(),
        };
        p.rebuild_index();
        p
    }

    /// Build by completing the given relations through `max_degree`.
    pub fn from_relations(
        name: &str,
        gens: Arc<GeneratorSet>,
        relations: Vec<NCPoly<C>>,
        max_degree: usize,
    ) -> Result<Self, RewriteError> {
        let mut p = Self::from_rules(name, gens, Vec::new(), relations.clone());
        for r in &relations {
            p.gens.check(r)?;
            p.add_relation(r.clone())?;
        }
        p.complete(max_degree)?;
        Ok(p)
    }

    pub fn rules(&self) -> &[RewriteRule<C>] {
        &self.rules
    }

    pub fn max_lhs_len(&self) -> usize {
        self.rules.iter().map(|r| r.lhs.len()).max().unwrap_or(0)
    }

    fn rebuild_index(&mut self) {
        self.pair_index.clear();
        self.single = vec![None; self.gens.len()];
        for (i, r) in self.rules.iter().enumerate() {
            let l = r.lhs.letters();
            if l.len() == 1 {
                self.single[l[0] as usize] = Some(i);
            } else {
                self.pair_index.entry((l[0], l[1])).or_default().push(i);
            }
        }
    }

    /// Leftmost rule occurrence in `w`: (rule index, position).
    fn find_redex(&self, w: &Word) -> Option<(usize, usize)> {
        let l = w.letters();
        for i in 0..l.len() {
            if let Some(r) = self.single.get(l[i] as usize).copied().flatten() {
                return Some((r, i));
            }
            if i + 1 < l.len() {
                if let Some(cands) = self.pair_index.get(&(l[i], l[i + 1])) {
                    for &r in cands {
                        let lhs = self.rules[r].lhs.letters();
                        if i + lhs.len() <= l.len() && &l[i..i + lhs.len()] == lhs {
                            return Some((r, i));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_normal_word(&self, w: &Word) -> bool {
        self.find_redex(w).is_none()
    }

    pub fn normal_form_budget(&self, p: &NCPoly<C>, budget: usize) -> Result<NCPoly<C>, RewriteError> {
        let mut work = p.clone();
        let mut out = NCPoly::zero();
        let mut steps = 0usize;
        while let Some((w, c)) = work.terms.pop_last() {
            match self.find_redex(&w) {
                None => {
                    out.terms.insert(w, c);
                }
                Some((r, pos)) => {
                    steps += 1;
                    if steps > budget {
                        return Err(RewriteError::BudgetExceeded(budget));
                    }
                    let rule = &self.rules[r];
                    let end = pos + rule.lhs.len();
                    for (rw, rc) in &rule.rhs.terms {
                        work.add_term(w.splice(pos, end, rw), c.mul(rc));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn normal_form(&self, p: &NCPoly<C>) -> Result<NCPoly<C>, RewriteError> {
        self.normal_form_budget(p, DEFAULT_STEP_BUDGET)
    }

    /// Normal form of a product of normal forms.
    pub fn mul(&self, a: &NCPoly<C>, b: &NCPoly<C>) -> Result<NCPoly<C>, RewriteError> {
        self.normal_form(&a.mul(b))
    }

    fn add_relation(&mut self, p: NCPoly<C>) -> Result<bool, RewriteError> {
        let r = self.normal_form(&p)?;
        let Some((lw, lc)) = r.leading() else {
            return Ok(false);
        };
        if lw.is_empty() {
            return Err(RewriteError::Inconsistent);
        }
        let lw = lw.clone();
        let inv = lc.inv().expect("nonzero leading coefficient");
        let mut rhs = r.scale(&inv.neg());
        rhs.terms.remove(&lw);
        // rules whose lhs contains the new lhs are no longer reduced
        let (keep, dropped): (Vec<_>, Vec<_>) = std::mem::take(&mut self.rules).into_iter().partition(|x| x.lhs.find(&lw).is_none());
        self.rules = keep;
        self.rules.push(RewriteRule { lhs: lw.clone(), rhs });
        self.rebuild_index();
        for i in 0..self.rules.len() {
            if self.rules[i].rhs.terms.keys().any(|w| w.find(&lw).is_some()) {
                let nf = self.normal_form(&self.rules[i].rhs)?;
                self.rules[i].rhs = nf;
            }
        }
        for d in dropped {
            self.add_relation(d.as_poly())?;
        }
        Ok(true)
    }

    /// S-polynomial of an overlap: lhs_a = u·v, lhs_b = v·t with |v| = k.
    fn overlap_poly(a: &RewriteRule<C>, b: &RewriteRule<C>, k: usize) -> NCPoly<C> {
        let t = Word::from_slice(&b.lhs.letters()[k..]);
        let u = Word::from_slice(&a.lhs.letters()[..a.lhs.len() - k]);
        let mut s = NCPoly::zero();
        for (w, c) in &a.rhs.terms {
            s.add_term(w.concat(&t), c.clone());
        }
        for (w, c) in &b.rhs.terms {
            s.add_term(u.concat(w), c.neg());
        }
        s
    }

    fn overlaps_upto(&self, d: usize) -> Vec<(Word, Word, usize)> {
        let mut out = Vec::new();
        for a in &self.rules {
            for b in &self.rules {
                let (la, lb) = (a.lhs.letters(), b.lhs.letters());
                for k in 1..la.len().min(lb.len()) {
                    if la.len() + lb.len() - k <= d && la[la.len() - k..] == lb[..k] {
                        out.push((a.lhs.clone(), b.lhs.clone(), k));
                    }
                }
            }
        }
        out.sort_by(|x, y| (x.0.len() + x.1.len() - x.2).cmp(&(y.0.len() + y.1.len() - y.2)));
        out
    }

    fn rule_by_lhs(&self, w: &Word) -> Option<&RewriteRule<C>> {
        self.rules.iter().find(|r| &r.lhs == w)
    }

    fn complete(&mut self, max_degree: usize) -> Result<(), RewriteError> {
        let mut done: HashSet<(Word, Word, usize)> = HashSet::new();
        for deg in 2..=max_degree {
            loop {
                let mut added = false;
                for key in self.overlaps_upto(deg) {
                    if done.contains(&key) {
                        continue;
                    }
                    let (Some(a), Some(b)) = (self.rule_by_lhs(&key.0), self.rule_by_lhs(&key.1)) else {
                        continue;
                    };
                    let s = Self::overlap_poly(a, b, key.2);
                    done.insert(key);
                    if self.add_relation(s)? {
                        added = true;
                    }
                }
                if !added {
                    break;
                }
            }
        }
        let l = self.max_lhs_len();
        self.complete_through = if l > 0 && 2 * l - 1 > max_degree { Some(max_degree) } else { None };
        Ok(())
    }

    /// Resolve every ambiguity whose overlap word has length ≤ `max_degree`
    /// and return those that do not resolve.
    pub fn check_confluence(&self, max_degree: usize) -> Result<Vec<Overlap<C>>, RewriteError> {
        let mut bad = Vec::new();
        for (la, lb, k) in self.overlaps_upto(max_degree) {
            let a = self.rule_by_lhs(&la).unwrap();
            let b = self.rule_by_lhs(&lb).unwrap();
            let s = self.normal_form(&Self::overlap_poly(a, b, k))?;
            if !s.is_zero() {
                let word = la.concat(&Word::from_slice(&lb.letters()[k..]));
                bad.push(Overlap { word, difference: s });
            }
        }
        // inclusion ambiguities
        for a in &self.rules {
            for b in &self.rules {
                if a.lhs == b.lhs || a.lhs.len() > max_degree {
                    continue;
                }
                if let Some(i) = a.lhs.find(&b.lhs) {
                    let mut s = a.rhs.clone();
                    let u = Word::from_slice(&a.lhs.letters()[..i]);
                    let t = Word::from_slice(&a.lhs.letters()[i + b.lhs.len()..]);
                    for (w, c) in &b.rhs.terms {
                        s.add_term(u.concat(w).concat(&t), c.neg());
                    }
                    let s = self.normal_form(&s)?;
                    if !s.is_zero() {
                        bad.push(Overlap { word: a.lhs.clone(), difference: s });
                    }
                }
            }
        }
        Ok(bad)
    }

    /// True iff p commutes with every generator modulo the relations.
    pub fn is_central(&self, p: &NCPoly<C>) -> Result<bool, RewriteError> {
        for g in 0..self.gens.len() {
            let x = NCPoly::gen(g);
            if !self.normal_form(&p.commutator(&x))?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Graded-commutative centrality: p·ω = (−1)^{|p||ω|} ω·p on generators,
    /// with `odd[g]` the parity of generator g.
    pub fn is_graded_central(&self, p: &NCPoly<C>, p_odd: bool, odd: &[bool]) -> Result<bool, RewriteError> {
        for g in 0..self.gens.len() {
            let x = NCPoly::gen(g);
            let sign = if p_odd && odd[g] { C::one() } else { C::one().neg() };
            let mut c = p.mul(&x);
            c.add_scaled(&x.mul(p), &sign);
            if !self.normal_form(&c)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All normal words of length d.
    pub fn normal_words(&self, d: usize) -> Vec<Word> {
        let mut cur = vec![Word::unit()];
        for len in 1..=d {
            let mut next = Vec::new();
            for w in &cur {
                for g in 0..self.gens.len() {
                    let mut l = w.0.clone();
                    l.push(g as u8);
                    let nw = Word(l);
                    // only occurrences ending at the last letter can be new
                    let ok = self.rules.iter().all(|r| {
                        let ll = r.lhs.len();
                        ll > len || nw.letters()[len - ll..] != *r.lhs.letters()
                    });
                    if ok {
                        next.push(nw);
                    }
                }
            }
            cur = next;
        }
        cur
    }

    pub fn graded_dimension(&self, d: usize) -> usize {
        self.normal_words(d).len()
    }

    /// Every defining relation reduces to zero.
    pub fn relations_reduce_to_zero(&self) -> Result<bool, RewriteError> {
        for r in &self.relations {
            if !self.normal_form(r)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The star of every defining relation lies in the ideal.
    pub fn star_stable(&self) -> Result<bool, RewriteError> {
        for r in &self.relations {
            if !self.normal_form(&self.gens.star(r))?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Free function form of [`Presentation::normal_form_budget`].
pub fn normal_form<C: Coeff>(p: &NCPoly<C>, pres: &Presentation<C>, step_budget: usize) -> Result<NCPoly<C>, RewriteError> {
    pres.normal_form_budget(p, step_budget)
}

pub fn check_confluence<C: Coeff>(pres: &Presentation<C>, max_degree: usize) -> Result<Vec<Overlap<C>>, RewriteError> {
    pres.check_confluence(max_degree)
}

pub fn is_central<C: Coeff>(p: &NCPoly<C>, pres: &Presentation<C>) -> Result<bool, RewriteError> {
    pres.is_central(p)
}

pub fn graded_dimension<C: Coeff>(pres: &Presentation<C>, d: usize) -> usize {
    pres.graded_dimension(d)
}

// ---------------------------------------------------------------------------
// θ matrices and phase-commutation systems

/// Antisymmetric real matrix with entries π·p/q.
#[derive(Clone, Debug, PartialEq)]
pub struct Theta {
    pub n: usize,
    entries: Vec<Angle>,
}

impl Theta {
    pub fn from_matrix(n: usize, entries: Vec<Angle>) -> Result<Self, RewriteError> {
        assert_eq!(entries.len(), n * n);
        for i in 0..n {
            for j in 0..n {
                if entries[i * n + j] != entries[j * n + i].neg() {
                    return Err(RewriteError::NonAntisymmetric);
                }
            }
        }
        Ok(Theta { n, entries })
    }
    pub fn zero(n: usize) -> Self {
        Theta { n, entries: vec![Angle::zero(); n * n] }
    }
    /// θ_{μν} = a for μ < ν.
    pub fn uniform(n: usize, a: Angle) -> Self {
        Self::from_upper(n, &vec![a; n * (n - 1) / 2])
    }
    /// Entries above the diagonal, row by row.
    pub fn from_upper(n: usize, upper: &[Angle]) -> Self {
        let mut e = vec![Angle::zero(); n * n];
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                e[i * n + j] = upper[k];
                e[j * n + i] = upper[k].neg();
                k += 1;
            }
        }
        Theta { n, entries: e }
    }
    pub fn get(&self, i: usize, j: usize) -> Angle {
        self.entries[i * self.n + j]
    }
    /// λ^{μν} = e^{iθ_{μν}}.
    pub fn lambda(&self, i: usize, j: usize) -> CycloScalar {
        self.get(i, j).phase()
    }
    pub fn neg(&self) -> Self {
        Theta { n: self.n, entries: self.entries.iter().map(|a| a.neg()).collect() }
    }
    pub fn direct_sum(&self, o: &Theta) -> Self {
        let n = self.n + o.n;
        let mut e = vec![Angle::zero(); n * n];
        for i in 0..self.n {
            for j in 0..self.n {
                e[i * n + j] = self.get(i, j);
            }
        }
        for i in 0..o.n {
            for j in 0..o.n {
                e[(self.n + i) * n + self.n + j] = o.get(i, j);
            }
        }
        Theta { n, entries: e }
    }
    /// ⟨v, θ w⟩ for integer vectors.
    pub fn pairing(&self, v: &[i64], w: &[i64]) -> Angle {
        let mut a = Angle::zero();
        for i in 0..self.n {
            if v[i] == 0 {
                continue;
            }
            for j in 0..self.n {
                if w[j] != 0 {
                    a = a.add(self.get(i, j).scale(v[i] * w[j]));
                }
            }
        }
        a
    }
}

/// A generator of a phase-commutation algebra.
#[derive(Clone, Debug)]
pub struct PhaseGen {
    pub name: String,
    pub star: usize,
    pub weight: Vec<i64>,
    pub odd: bool,
}

/// g·h = c(g,h)·h·g.
pub fn exchange_phase(theta: &Theta, g: &PhaseGen, h: &PhaseGen) -> CycloScalar {
    let c = theta.pairing(&g.weight, &h.weight).phase();
    if g.odd && h.odd {
        c.neg()
    } else {
        c
    }
}

/// Quadratic phase-commutation presentation; `extra` relations are added and
/// the system completed through degree 4.
pub fn phase_presentation(
    name: &str,
    gens: &[PhaseGen],
    theta: &Theta,
    extra: Vec<NCPoly<CycloScalar>>,
) -> Result<Presentation, RewriteError> {
    let set = GeneratorSet::new(gens.iter().map(|g| g.name.clone()).collect(), gens.iter().map(|g| g.star).collect())?;
    let mut rules = Vec::new();
    let mut relations = Vec::new();
    for a in 0..gens.len() {
        for b in 0..a {
            let c = exchange_phase(theta, &gens[a], &gens[b]);
            let lhs = Word::from_slice(&[a as u8, b as u8]);
            let rhs = NCPoly::monomial(Word::from_slice(&[b as u8, a as u8]), c);
            let rule = RewriteRule { lhs, rhs };
            relations.push(rule.as_poly());
            rules.push(rule);
        }
        if gens[a].odd {
            let lhs = Word::from_slice(&[a as u8, a as u8]);
            relations.push(NCPoly::monomial(lhs.clone(), CycloScalar::one()));
            rules.push(RewriteRule { lhs, rhs: NCPoly::zero() });
        }
    }
    let mut p = Presentation::from_rules(name, set, rules, relations);
    if !extra.is_empty() {
        for e in &extra {
            p.relations.push(e.clone());
            p.add_relation(e.clone())?;
        }
        p.complete(4)?;
    }
    Ok(p)
}

/// z¹..zⁿ, z̄¹..z̄ⁿ (and x) with their torus weights.
pub fn plane_gens(n: usize, with_x: bool) -> Vec<PhaseGen> {
    let mut g = Vec::new();
    for mu in 0..n {
        let mut w = vec![0; n];
        w[mu] = 1;
        g.push(PhaseGen { name: format!("z{}", mu + 1), star: n + mu, weight: w, odd: false });
    }
    for mu in 0..n {
        let mut w = vec![0; n];
        w[mu] = -1;
        g.push(PhaseGen { name: format!("zb{}", mu + 1), star: mu, weight: w, odd: false });
    }
    if with_x {
        g.push(PhaseGen { name: "x".into(), star: 2 * n, weight: vec![0; n], odd: false });
    }
    g
}

/// Pol(R^{2n}_θ): generators z¹..zⁿ, z̄¹..z̄ⁿ in that ranking.
pub fn make_r2n_theta(n: usize, theta: &Theta) -> Result<Presentation, RewriteError> {
    assert_eq!(theta.n, n);
    phase_presentation(&format!("R{}_theta", 2 * n), &plane_gens(n, false), theta, Vec::new())
}

/// Pol(R^{2n+1}_θ): adds a central hermitian x ranked last.
pub fn make_r2n1_theta(n: usize, theta: &Theta) -> Result<Presentation, RewriteError> {
    assert_eq!(theta.n, n);
    phase_presentation(&format!("R{}_theta", 2 * n + 1), &plane_gens(n, true), theta, Vec::new())
}

/// Σ_μ z^μ z̄^μ (+ x² when present).
pub fn radius_squared(n: usize, with_x: bool) -> NCPoly<CycloScalar> {
    let mut p = NCPoly::zero();
    for mu in 0..n {
        p.add_term(Word::from_slice(&[mu as u8, (n + mu) as u8]), CycloScalar::one());
    }
    if with_x {
        p.add_term(Word::from_slice(&[2 * n as u8, 2 * n as u8]), CycloScalar::one());
    }
    p
}

/// Pol(S^{2n}_θ) = Pol(R^{2n+1}_θ)/(Σ z z̄ + x² − 1).
pub fn make_s2n_theta(n: usize, theta: &Theta) -> Result<Presentation, RewriteError> {
    let p = make_r2n1_theta(n, theta)?;
    let rel = radius_squared(n, true).sub(&NCPoly::one());
    let mut s = make_sphere_quotient(&p, &rel)?;
    s.name = format!("S{}_theta", 2 * n);
    Ok(s)
}

/// Pol(S^{2n−1}_θ) = Pol(R^{2n}_θ)/(Σ z z̄ − 1).
pub fn make_s2nm1_theta(n: usize, theta: &Theta) -> Result<Presentation, RewriteError> {
    let p = make_r2n_theta(n, theta)?;
    let rel = radius_squared(n, false).sub(&NCPoly::one());
    let mut s = make_sphere_quotient(&p, &rel)?;
    s.name = format!("S{}_theta", 2 * n - 1);
    Ok(s)
}

/// Pol(T^n_θ): unitaries U¹..Uⁿ followed by their adjoints, U^μU^ν = λ^{μν}U^νU^μ.
pub fn make_torus(n: usize, theta: &Theta) -> Result<Presentation, RewriteError> {
    let mut g = plane_gens(n, false);
    for mu in 0..n {
        g[mu].name = format!("U{}", mu + 1);
        g[n + mu].name = format!("U{}*", mu + 1);
    }
    let mut extra = Vec::new();
    for mu in 0..n {
        let mut a = NCPoly::word(&[mu, n + mu]);
        a.add_term(Word::unit(), CycloScalar::one().neg());
        let mut b = NCPoly::word(&[n + mu, mu]);
        b.add_term(Word::unit(), CycloScalar::one().neg());
        extra.push(a);
        extra.push(b);
    }
    let mut p = phase_presentation(&format!("T{}_theta", n), &g, theta, extra)?;
    p.complete_through = None;
    Ok(p)
}

/// Add a central radius relation and complete through degree
/// max(4, degree already complete).
pub fn make_sphere_quotient(p: &Presentation, radius_relation: &NCPoly<CycloScalar>) -> Result<Presentation, RewriteError> {
    if !p.is_central(radius_relation)? {
        return Err(RewriteError::NotCentral);
    }
    let degree = p.complete_through.unwrap_or(0).max(4);
    let mut rels: Vec<NCPoly<CycloScalar>> = p.rules.iter().map(|r| r.as_poly()).collect();
    rels.push(radius_relation.clone());
    let mut q = Presentation::from_relations(&format!("{}/sphere", p.name), p.gens.clone(), rels, degree)?;
    q.relations = p.relations.clone();
    q.relations.push(radius_relation.clone());
    let check = if q.complete_through.is_none() { 2 * q.max_lhs_len() - 1 } else { degree };
    if !q.check_confluence(check.max(3))?.is_empty() {
        return Err(RewriteError::ConfluenceFailure(check));
    }
    Ok(q)
}

// ---------------------------------------------------------------------------
// 𝒜_u and Sklyanin algebras

/// Cyclic triples (k, ℓ, m) of (1,2,3).
pub const TRIPLES: [(usize, usize, usize); 3] = [(1, 2, 3), (2, 3, 1), (3, 1, 2)];

fn phi(u: &[Angle; 3], k: usize) -> Angle {
    if k == 0 {
        Angle::zero()
    } else {
        u[k - 1]
    }
}

fn x(g: usize) -> NCPoly<CycloScalar> {
    NCPoly::gen(g)
}

/// The six defining quadratic relations of 𝒜_u, two per cyclic triple:
/// cos φ_k [x⁰,x^k]₋ − i sin(φ_ℓ−φ_m)[x^ℓ,x^m]₊ and
/// cos(φ_ℓ−φ_m)[x^ℓ,x^m]₋ + i sin φ_k [x⁰,x^k]₊.
pub fn a_u_relations(u: &[Angle; 3]) -> Vec<NCPoly<CycloScalar>> {
    let i = CycloScalar::i();
    let mut out = Vec::new();
    for &(k, l, m) in &TRIPLES {
        let ck = phi(u, k).cos();
        let sk = phi(u, k).sin();
        let d = phi(u, l).sub(phi(u, m));
        let (clm, slm) = (d.cos(), d.sin());
        let a = x(0).commutator(&x(k)).scale(&ck).sub(&x(l).anticommutator(&x(m)).scale(&i.mul(&slm)));
        let b = x(l).commutator(&x(m)).scale(&clm).add(&x(0).anticommutator(&x(k)).scale(&i.mul(&sk)));
        out.push(a);
        out.push(b);
    }
    out
}

fn pair_rank(a: &NCPoly<CycloScalar>, b: &NCPoly<CycloScalar>) -> usize {
    if a.is_zero() && b.is_zero() {
        return 0;
    }
    if a.is_zero() || b.is_zero() {
        return 1;
    }
    let (lw, lc) = a.leading().unwrap();
    let f = b.coeff(lw).mul(&lc.inv().unwrap());
    let mut r = b.clone();
    r.add_scaled(a, &f.neg());
    if r.is_zero() {
        1
    } else {
        2
    }
}

fn a_u_degeneracy(u: &[Angle; 3], rels: &[NCPoly<CycloScalar>]) -> Result<(), RewriteError> {
    for (t, &(k, l, m)) in TRIPLES.iter().enumerate() {
        let triple = (k, l, m);
        if phi(u, k).cos().is_zero() {
            return Err(RewriteError::SingularElimination { triple, reason: format!("cos(phi_{k}) = 0") });
        }
        if phi(u, l).sub(phi(u, m)).cos().is_zero() {
            return Err(RewriteError::SingularElimination { triple, reason: format!("cos(phi_{l} - phi_{m}) = 0") });
        }
        if pair_rank(&rels[2 * t], &rels[2 * t + 1]) < 2 {
            return Err(RewriteError::SingularElimination { triple, reason: "relations are dependent".into() });
        }
    }
    Ok(())
}

fn hermitian4(names: [&str; 4]) -> Arc<GeneratorSet> {
    GeneratorSet::hermitian(&names)
}

/// The two quadratic central elements of 𝒜_u: Σ_μ z^{μ*}z^μ = Σ_μ (x^μ)² and
/// Σ_k cos(φ_k−φ_ℓ−φ_m)·cos φ_k·sin φ_k·(x^k)².
pub fn a_u_central_elements(u: &[Angle; 3]) -> [NCPoly<CycloScalar>; 2] {
    let mut c1 = NCPoly::zero();
    for mu in 0..4u8 {
        c1.add_term(Word::from_slice(&[mu, mu]), CycloScalar::one());
    }
    let mut c2 = NCPoly::zero();
    for &(k, l, m) in &TRIPLES {
        let a = phi(u, k).sub(phi(u, l)).sub(phi(u, m));
        let c = a.cos().mul(&phi(u, k).cos()).mul(&phi(u, k).sin());
        c2.add_term(Word::from_slice(&[k as u8, k as u8]), c);
    }
    [c1, c2]
}

/// 𝒜_u completed through [`AU_DEFAULT_DEGREE`].
pub fn make_a_u(u: &[Angle; 3]) -> Result<Presentation, RewriteError> {
    make_a_u_deg(u, AU_DEFAULT_DEGREE)
}

/// 𝒜_u completed through `max_degree`, ranking x⁰ < x¹ < x² < x³.
pub fn make_a_u_deg(u: &[Angle; 3], max_degree: usize) -> Result<Presentation, RewriteError> {
    let rels = a_u_relations(u);
    a_u_degeneracy(u, &rels)?;
    Presentation::from_relations(
        &format!("A_u({},{},{})", u[0], u[1], u[2]),
        hermitian4(["x0", "x1", "x2", "x3"]),
        rels,
        max_degree,
    )
}

/// 𝒜_u with only the degree-2 part of the completion (the six quadratic
/// relations brought to echelon form). No confluence is claimed; usable on
/// the degenerate loci.
pub fn make_a_u_raw(u: &[Angle; 3]) -> Result<Presentation, RewriteError> {
    Presentation::from_relations(
        &format!("A_u_raw({},{},{})", u[0], u[1], u[2]),
        hermitian4(["x0", "x1", "x2", "x3"]),
        a_u_relations(u),
        2,
    )
    .map(|mut p| {
        p.complete_through = Some(2);
        p
    })
}

/// Pol(S³_u): 𝒜_u modulo Σ(x^μ)² − 1.
pub fn make_s3_u(u: &[Angle; 3], max_degree: usize) -> Result<Presentation, RewriteError> {
    let p = make_a_u_deg(u, max_degree)?;
    let mut rel = NCPoly::zero();
    for mu in 0..4 {
        rel.add_term(Word::from_slice(&[mu, mu]), CycloScalar::one());
    }
    rel.add_term(Word::unit(), CycloScalar::one().neg());
    let mut s = make_sphere_quotient(&p, &rel)?;
    s.name = format!("S3_u({},{},{})", u[0], u[1], u[2]);
    Ok(s)
}

/// Pol(R⁵_u): 𝒜_u with a central hermitian x⁴ ranked last.
pub fn make_r5_u(u: &[Angle; 3], max_degree: usize) -> Result<Presentation, RewriteError> {
    let mut rels = a_u_relations(u);
    a_u_degeneracy(u, &rels)?;
    for mu in 0..4 {
        rels.push(x(4).commutator(&x(mu)));
    }
    Presentation::from_relations(
        &format!("R5_u({},{},{})", u[0], u[1], u[2]),
        GeneratorSet::hermitian(&["x0", "x1", "x2", "x3", "x4"]),
        rels,
        max_degree,
    )
}

/// Pol(S⁴_u): Pol(R⁵_u) modulo Σ(x^μ)² + (x⁴)² − 1.
pub fn make_s4_u(u: &[Angle; 3], max_degree: usize) -> Result<Presentation, RewriteError> {
    let p = make_r5_u(u, max_degree)?;
    let mut rel = NCPoly::zero();
    for mu in 0..5 {
        rel.add_term(Word::from_slice(&[mu, mu]), CycloScalar::one());
    }
    rel.add_term(Word::unit(), CycloScalar::one().neg());
    let mut s = make_sphere_quotient(&p, &rel)?;
    s.name = format!("S4_u({},{},{})", u[0], u[1], u[2]);
    Ok(s)
}

/// J_{ℓm} = −tan(φ_ℓ−φ_m)·tan φ_k, returned as [J₁₂, J₂₃, J₃₁].
pub fn sklyanin_j_exact(u: &[Angle; 3]) -> Result<[CycloScalar; 3], RewriteError> {
    let mut j = [CycloScalar::zero(), CycloScalar::zero(), CycloScalar::zero()];
    for &(k, l, m) in &TRIPLES {
        let d = phi(u, l).sub(phi(u, m));
        let ck = phi(u, k).cos();
        let cd = d.cos();
        let (Some(ick), Some(icd)) = (ck.inv(), cd.inv()) else {
            return Err(RewriteError::SingularElimination { triple: (k, l, m), reason: "tangent undefined".into() });
        };
        let v = d.sin().mul(&icd).mul(&phi(u, k).sin()).mul(&ick).neg();
        // slot of J_{ℓm}
        let slot = match (l, m) {
            (1, 2) => 0,
            (2, 3) => 1,
            _ => 2,
        };
        j[slot] = v;
    }
    Ok(j)
}

/// The relations of S(J): [S₀,S_k]₋ − iJ_{ℓm}[S_ℓ,S_m]₊ and [S_ℓ,S_m]₋ − i[S₀,S_k]₊.
pub fn sklyanin_relations<C: Coeff>(j: &[C; 3]) -> Vec<NCPoly<C>> {
    let i = C::i();
    let mut out = Vec::new();
    for &(k, l, m) in &TRIPLES {
        let jlm = match (l, m) {
            (1, 2) => &j[0],
            (2, 3) => &j[1],
            _ => &j[2],
        };
        let s = |g: usize| NCPoly::<C>::gen(g);
        let a = s(0).commutator(&s(k)).sub(&s(l).anticommutator(&s(m)).scale(&i.mul(jlm)));
        let b = s(l).commutator(&s(m)).sub(&s(0).anticommutator(&s(k)).scale(&i));
        out.push(a);
        out.push(b);
    }
    out
}

/// Sklyanin algebra S(J) with hermitian generators S₀..S₃, completed through `max_degree`.
pub fn make_sklyanin(j: &[CycloScalar; 3], max_degree: usize) -> Result<Presentation, RewriteError> {
    Presentation::from_relations("Sklyanin", hermitian4(["S0", "S1", "S2", "S3"]), sklyanin_relations(j), max_degree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a(p: i64, q: i64) -> Angle {
        Angle::new(p, q)
    }

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn r4_theta_reorders_with_phase() {
        let th = Theta::uniform(2, a(1, 3));
        let p = make_r2n_theta(2, &th).unwrap();
        let nf = p.normal_form(&NCPoly::word(&[1, 0])).unwrap();
        assert_eq!(nf, NCPoly::word(&[0, 1]).scale(&th.lambda(1, 0)));
        assert!(p.check_confluence(3).unwrap().is_empty());
        assert!(p.relations_reduce_to_zero().unwrap());
        for d in 0..=5 {
            assert_eq!(p.graded_dimension(d), binom(d + 3, d));
        }
    }

    #[test]
    fn commutative_limit() {
        let p = make_r2n_theta(2, &Theta::zero(2)).unwrap();
        let q = NCPoly::word(&[2, 0]).sub(&NCPoly::word(&[0, 2]));
        assert!(p.normal_form(&q).unwrap().is_zero());
    }

    #[test]
    fn non_antisymmetric_rejected() {
        let e = vec![Angle::zero(), a(1, 3), a(1, 3), Angle::zero()];
        assert_eq!(Theta::from_matrix(2, e), Err(RewriteError::NonAntisymmetric));
    }

    #[test]
    fn torus_phase() {
        let th = Theta::uniform(2, a(1, 4));
        let t = make_torus(2, &th).unwrap();
        let nf = t.normal_form(&NCPoly::word(&[1, 0])).unwrap();
        assert_eq!(nf, NCPoly::word(&[0, 1]).scale(&th.lambda(1, 0)));
        assert_eq!(t.normal_form(&NCPoly::word(&[2, 0])).unwrap(), NCPoly::one());
        assert!(t.check_confluence(4).unwrap().is_empty());
    }

    #[test]
    fn a_u_at_identity_is_commutative() {
        let p = make_a_u_deg(&[Angle::zero(); 3], 4).unwrap();
        for r in p.rules() {
            let l = r.lhs.letters();
            assert_eq!(l.len(), 2);
            assert!(l[0] > l[1]);
            assert_eq!(r.rhs, NCPoly::word(&[l[1] as usize, l[0] as usize]));
        }
        assert_eq!(p.rules().len(), 6);
    }

    #[test]
    fn a_u_rules_reproduce_relations() {
        let u = [a(1, 3), a(1, 4), a(1, 5)];
        let p = make_a_u_deg(&u, 4).unwrap();
        assert!(p.relations_reduce_to_zero().unwrap());
        assert!(p.star_stable().unwrap());
        assert_eq!(p.graded_dimension(2), 10);
        assert_eq!(p.graded_dimension(3), 20);
        assert!(p.check_confluence(4).unwrap().is_empty());
    }

    #[test]
    fn quadratic_rules_alone_do_not_resolve() {
        let u = [a(1, 3), a(1, 4), a(1, 6)];
        let p = make_a_u_raw(&u).unwrap();
        assert_eq!(p.rules().len(), 6);
        assert!(!p.check_confluence(3).unwrap().is_empty());
    }

    #[test]
    fn corrupted_rules_fail_confluence() {
        let th = Theta::uniform(2, a(1, 3));
        let p = make_r2n_theta(2, &th).unwrap();
        let mut rules = p.rules().to_vec();
        rules[0].rhs.add_term(Word::from_slice(&[0, 0]), CycloScalar::one());
        let bad = Presentation::from_rules("bad", p.gens.clone(), rules, vec![]);
        assert!(!bad.check_confluence(3).unwrap().is_empty());
    }

    #[test]
    fn degenerate_u_reports_triple() {
        let r = make_a_u(&[a(1, 2), a(1, 2), a(1, 2)]);
        assert!(matches!(r, Err(RewriteError::SingularElimination { .. })));
    }

    #[test]
    fn sphere_rules() {
        let th = Theta::uniform(2, a(1, 3));
        let s = make_s2n_theta(2, &th).unwrap();
        let r = radius_squared(2, true);
        assert_eq!(s.normal_form(&r).unwrap(), NCPoly::one());
        assert!(s.check_confluence(4).unwrap().is_empty());
        // x²·x and x·x² agree
        let xg = 4;
        let l = s.normal_form(&NCPoly::word(&[xg, xg]).mul(&NCPoly::gen(xg))).unwrap();
        let rr = s.normal_form(&NCPoly::gen(xg).mul(&NCPoly::word(&[xg, xg]))).unwrap();
        assert_eq!(l, rr);
        let odd = make_s2nm1_theta(2, &th).unwrap();
        assert_eq!(odd.normal_form(&radius_squared(2, false)).unwrap(), NCPoly::one());
    }

    #[test]
    fn s3_u_radius() {
        let u = [a(1, 3), a(1, 4), a(1, 6)];
        let s = make_s3_u(&u, 4).unwrap();
        let mut r = NCPoly::zero();
        for mu in 0..4 {
            r.add_term(Word::from_slice(&[mu, mu]), CycloScalar::one());
        }
        assert_eq!(s.normal_form(&r).unwrap(), NCPoly::one());
    }

    #[test]
    fn central_elements_of_a_u() {
        let u = [a(1, 3), a(1, 4), a(1, 5)];
        let p = make_a_u_deg(&u, 4).unwrap();
        let mut c = NCPoly::zero();
        for mu in 0..4 {
            c.add_term(Word::from_slice(&[mu, mu]), CycloScalar::one());
        }
        assert!(p.is_central(&c).unwrap());
        assert!(!p.is_central(&NCPoly::gen(1)).unwrap());
        assert!(p.is_central(&NCPoly::one()).unwrap());
        for c in a_u_central_elements(&u) {
            assert!(p.is_central(&c).unwrap());
        }
        // the k = 1 term alone is not central
        let [_, c2] = a_u_central_elements(&u);
        let single = NCPoly::monomial(Word::from_slice(&[1, 1]), c2.coeff(&Word::from_slice(&[1, 1])));
        assert!(!p.is_central(&single).unwrap());
    }

    #[test]
    fn sklyanin_builds_and_j_constraint() {
        let u = [a(1, 3), a(1, 4), a(1, 6)];
        let j = sklyanin_j_exact(&u).unwrap();
        let lhs = j[0].add(&j[1]).add(&j[2]).add(&j[0].mul(&j[1]).mul(&j[2]));
        assert!(lhs.is_zero());
        let s = make_sklyanin(&j, 4).unwrap();
        assert!(s.relations_reduce_to_zero().unwrap());
        assert_eq!(s.graded_dimension(3), 20);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn normal_form_idempotent_and_compatible(ws in prop::collection::vec(prop::collection::vec(0usize..4, 0..4), 1..4),
                                                 vs in prop::collection::vec(prop::collection::vec(0usize..4, 0..3), 1..3)) {
            let u = [a(1, 3), a(1, 4), a(1, 6)];
            let pres = make_a_u_deg(&u, 6).unwrap();
            let mut p = NCPoly::zero();
            for w in &ws { p.add_term(w.iter().map(|&g| g as u8).collect(), CycloScalar::one()); }
            let mut q = NCPoly::zero();
            for w in &vs { q.add_term(w.iter().map(|&g| g as u8).collect(), CycloScalar::i()); }
            let np = pres.normal_form(&p).unwrap();
            prop_assert_eq!(pres.normal_form(&np).unwrap(), np.clone());
            let nq = pres.normal_form(&q).unwrap();
            prop_assert_eq!(pres.normal_form(&p.mul(&q)).unwrap(), pres.normal_form(&np.mul(&nq)).unwrap());
        }

        #[test]
        fn theta_planes_confluent(p1 in -12i64..12, p2 in -12i64..12, p3 in -12i64..12) {
            let th = Theta::from_upper(3, &[a(p1, 12), a(p2, 12), a(p3, 12)]);
            let p = make_r2n_theta(3, &th).unwrap();
            prop_assert!(p.check_confluence(3).unwrap().is_empty());
        }
    }
}
