//! The free product M₂(C) * C[U, U⁻¹] in the Pauli basis, the averaging
//! projection onto the universal Grassmannian, and the bracket μ = [x₀,x₁,x₂,x₃].

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::ncalg::NCPoly;
use crate::rewrite::{make_a_u_deg, RewriteError};
use crate::scalar::{Angle, Coeff, CycloScalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    /// σ₁, σ₂, σ₃.
    Sigma(u8),
    /// U^j, j ≠ 0.
    U(i64),
}

/// An alternating word σ_{i₁}U^{j₁}⋯σ_{i_k}U^{j_k} with no identity σ and no zero power.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FPWord(pub Vec<Letter>);

impl fmt::Display for FPWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| match l {
                Letter::Sigma(i) => format!("s{i}"),
                Letter::U(1) => "U".to_string(),
                Letter::U(j) => format!("U^{j}"),
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// σ_aσ_b = i^k σ_c with (k, c); c = 0 is the identity.
fn pauli(a: u8, b: u8) -> (u8, u8) {
    if a == b {
        return (0, 0);
    }
    let c = 6 - a - b;
    // cyclic (1,2,3) gives +i
    let cyclic = (a % 3) + 1 == b;
    (if cyclic { 1 } else { 3 }, c)
}

fn i_pow(k: u8) -> CycloScalar {
    match k % 4 {
        0 => CycloScalar::one(),
        1 => CycloScalar::i(),
        2 => CycloScalar::one().neg(),
        _ => CycloScalar::i().neg(),
    }
}

impl FPWord {
    pub fn unit() -> Self {
        FPWord(Vec::new())
    }

    pub fn parse(s: &[Letter]) -> (FPWord, CycloScalar) {
        let mut w = FPWord::unit();
        let k = w.push_all(s);
        (w, i_pow(k))
    }

    /// Append letters, merging; returns the accumulated power of i.
    fn push_all(&mut self, letters: &[Letter]) -> u8 {
        let mut k = 0u8;
        for &l in letters {
            match (self.0.last().copied(), l) {
                (_, Letter::Sigma(0)) | (_, Letter::U(0)) => {}
                (Some(Letter::Sigma(a)), Letter::Sigma(b)) => {
                    self.0.pop();
                    let (p, c) = pauli(a, b);
                    k = (k + p) % 4;
                    if c != 0 {
                        self.0.push(Letter::Sigma(c));
                    }
                }
                (Some(Letter::U(a)), Letter::U(b)) => {
                    self.0.pop();
                    if a + b != 0 {
                        self.0.push(Letter::U(a + b));
                    }
                }
                _ => self.0.push(l),
            }
        }
        k
    }

    /// Adjoint: reversed, U^j ↦ U^{−j}, σ self-adjoint.
    pub fn adjoint(&self) -> FPWord {
        FPWord(
            self.0
                .iter()
                .rev()
                .map(|l| match *l {
                    Letter::U(j) => Letter::U(-j),
                    s => s,
                })
                .collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct FPElement {
    pub terms: BTreeMap<FPWord, CycloScalar>,
}

impl FPElement {
    pub fn zero() -> Self {
        FPElement::default()
    }

    pub fn one() -> Self {
        Self::letters(&[])
    }

    pub fn sigma(i: u8) -> Self {
        Self::letters(&[Letter::Sigma(i)])
    }

    pub fn u_pow(j: i64) -> Self {
        Self::letters(&[Letter::U(j)])
    }

    pub fn letters(l: &[Letter]) -> Self {
        let (w, c) = FPWord::parse(l);
        let mut e = FPElement::zero();
        e.add_term(w, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &FPWord) -> CycloScalar {
        self.terms.get(w).cloned().unwrap_or_else(CycloScalar::zero)
    }

    pub fn add_term(&mut self, w: FPWord, c: CycloScalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert_with(CycloScalar::zero);
        *e = e.add(&c);
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add_scaled(&mut self, o: &Self, s: &CycloScalar) {
        for (w, c) in &o.terms {
            self.add_term(w.clone(), c.mul(s));
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.add_scaled(o, &CycloScalar::one());
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.add_scaled(o, &CycloScalar::one().neg());
        r
    }

    pub fn scale(&self, s: &CycloScalar) -> Self {
        let mut r = FPElement::zero();
        r.add_scaled(self, s);
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        fp_mul(self, o)
    }

    pub fn adjoint(&self) -> Self {
        let mut r = FPElement::zero();
        for (w, c) in &self.terms {
            r.add_term(w.adjoint(), c.conj());
        }
        r
    }

    /// Σ |Re c| + |Im c| over the coefficients.
    pub fn l1_norm(&self) -> f64 {
        self.terms.values().map(|c| c.to_complex().norm()).sum()
    }
}

pub fn fp_mul(x: &FPElement, y: &FPElement) -> FPElement {
    let mut out = FPElement::zero();
    for (a, ca) in &x.terms {
        for (b, cb) in &y.terms {
            let mut w = a.clone();
            let k = w.push_all(&b.0);
            out.add_term(w, ca.mul(cb).mul(&i_pow(k)));
        }
    }
    out
}

/// σ(a) for a ∈ Γ = (Z/2)², indexed 0..4 as (0,0), (0,1), (1,0), (1,1).
pub fn sigma_of(a: usize) -> FPElement {
    if a == 0 {
        FPElement::one()
    } else {
        FPElement::sigma(a as u8)
    }
}

/// ⟨a, a'⟩ = αβ' − α'β mod 2, with a = (α, β) and index 2α + β.
pub fn gamma_form(a: usize, b: usize) -> u8 {
    let (a1, a2, b1, b2) = (a >> 1, a & 1, b >> 1, b & 1);
    ((a1 * b2 + b1 * a2) % 2) as u8
}

/// P(T) = ¼ Σ_Γ σ(a) T σ(a)⁻¹.
pub fn proj_p(t: &FPElement) -> FPElement {
    let mut out = FPElement::zero();
    let q = CycloScalar::from_ratio(1, 4);
    for a in 0..4 {
        out.add_scaled(&sigma_of(a).mul(t).mul(&sigma_of(a)), &q);
    }
    out
}

/// x_a = P(σ(a)U).
pub fn x_gen(a: usize) -> FPElement {
    proj_p(&sigma_of(a).mul(&FPElement::u_pow(1)))
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    if n == 0 {
        return vec![(Vec::new(), true)];
    }
    let mut out = Vec::new();
    for (p, even) in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            // inserting at pos moves n−1 past (len − pos) entries
            let flips = (p.len() - pos) % 2 == 1;
            out.push((q, even ^ flips));
        }
    }
    out
}

/// [x₁,…,x_n] = Σ_σ ε(σ) x_{σ(1)}⋯x_{σ(n)} for any multiplication.
pub fn antisym_bracket_with<T: Clone>(
    xs: &[T],
    zero: T,
    mul: impl Fn(&T, &T) -> T,
    add_signed: impl Fn(&T, &T, bool) -> T,
) -> T {
    let mut out = zero;
    for (p, even) in permutations(xs.len()) {
        let mut acc = xs[p[0]].clone();
        for &i in &p[1..] {
            acc = mul(&acc, &xs[i]);
        }
        out = add_signed(&out, &acc, even);
    }
    out
}

pub fn antisym_bracket(xs: &[FPElement]) -> FPElement {
    antisym_bracket_with(xs, FPElement::zero(), fp_mul, |a, b, even| if even { a.add(b) } else { a.sub(b) })
}

#[derive(Clone, Debug, Serialize)]
pub struct GrassmannReport {
    pub mu_support: usize,
    pub coeff_sigma2: String,
    pub coeff_sigma1: String,
    pub commutator_support: usize,
    pub witness_word: String,
    pub witness_coeff: String,
    pub mu_star_mu_has_positive_leading_power: bool,
}

/// μ = [x₀,x₁,x₂,x₃] and c = μμ* − μ*μ.
pub fn mu_and_commutator() -> (FPElement, FPElement) {
    let xs: Vec<_> = (0..4).map(x_gen).collect();
    let mu = antisym_bracket(&xs);
    let ms = mu.adjoint();
    let c = mu.mul(&ms).sub(&ms.mul(&mu));
    (mu, c)
}

pub fn word_u3_s_u_s(i: u8) -> FPWord {
    FPWord(vec![Letter::U(3), Letter::Sigma(i), Letter::U(1), Letter::Sigma(i)])
}

/// The normal form of U³σ₁Uσ₁σ₂U⁻¹σ₂U⁻³ (σ₁σ₂ = iσ₃), with that factor i.
pub fn witness_word() -> (FPWord, CycloScalar) {
    FPWord::parse(&[
        Letter::U(3),
        Letter::Sigma(1),
        Letter::U(1),
        Letter::Sigma(1),
        Letter::Sigma(2),
        Letter::U(-1),
        Letter::Sigma(2),
        Letter::U(-3),
    ])
}

pub fn report() -> GrassmannReport {
    let (mu, c) = mu_and_commutator();
    let mm = mu.mul(&mu.adjoint());
    let ms_m = mu.adjoint().mul(&mu);
    let (w, phase) = witness_word();
    // coefficient of the paper's (unreduced) word: divide out σ₁σ₂ = iσ₃
    let wc = mm.coeff(&w).mul(&phase.inv().unwrap());
    let positive = ms_m.terms.keys().any(|w| matches!(w.0.first(), Some(Letter::U(j)) if *j > 0));
    GrassmannReport {
        mu_support: mu.len(),
        coeff_sigma2: mu.coeff(&word_u3_s_u_s(2)).to_string(),
        coeff_sigma1: mu.coeff(&word_u3_s_u_s(1)).to_string(),
        commutator_support: c.len(),
        witness_word: w.to_string(),
        witness_coeff: wc.to_string(),
        mu_star_mu_has_positive_leading_power: positive,
    }
}

/// Bracket of z⁰ = x⁰, z^k = e^{iφ_k}x^k over the generators x⁰..x³.
pub fn m_of_u(u: &[Angle; 3]) -> NCPoly<CycloScalar> {
    let z: Vec<NCPoly<CycloScalar>> = (0..4)
        .map(|m| if m == 0 { NCPoly::gen(0) } else { NCPoly::gen(m).scale(&u[m - 1].phase()) })
        .collect();
    antisym_bracket_with(&z, NCPoly::zero(), |a, b| a.mul(b), |a, b, even| if even { a.add(b) } else { a.sub(b) })
}

/// normal_form([m, m*]) = 0 in 𝒜_u, using the completion through degree 8.
pub fn mu_vanishes_in_au(u: &[Angle; 3]) -> Result<bool, RewriteError> {
    let pres = make_a_u_deg(u, 8)?;
    let m = m_of_u(u);
    let ms = pres.gens.star(&m);
    Ok(pres.normal_form(&m.commutator(&ms))?.is_zero())
}

/// The same commutator in the free *-algebra on x⁰..x³ and their adjoints
/// (no hermiticity, no relations).
pub fn mu_vanishes_in_free(u: &[Angle; 3]) -> bool {
    let names = ["x0", "x1", "x2", "x3", "x0*", "x1*", "x2*", "x3*"].map(String::from).to_vec();
    let gens = crate::ncalg::GeneratorSet::new(names, vec![4, 5, 6, 7, 0, 1, 2, 3]).expect("valid pairing");
    let m = m_of_u(u);
    m.commutator(&gens.star(&m)).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> CycloScalar {
        CycloScalar::from_ratio(n, d)
    }

    #[test]
    fn multiplication_table() {
        assert_eq!(FPElement::sigma(1).mul(&FPElement::sigma(2)), FPElement::sigma(3).scale(&CycloScalar::i()));
        assert_eq!(FPElement::sigma(2).mul(&FPElement::sigma(1)), FPElement::sigma(3).scale(&CycloScalar::i().neg()));
        assert_eq!(FPElement::u_pow(1).mul(&FPElement::u_pow(-1)), FPElement::one());
        let s1u = FPElement::letters(&[Letter::Sigma(1), Letter::U(1)]);
        let sq = s1u.mul(&s1u);
        assert_eq!(sq.len(), 1);
        assert_eq!(sq.terms.keys().next().unwrap().0.len(), 4);
    }

    #[test]
    fn gamma_commutation_signs() {
        for a in 0..4 {
            for b in 0..4 {
                let lhs = sigma_of(a).mul(&sigma_of(b));
                let rhs = sigma_of(b).mul(&sigma_of(a));
                let s = if gamma_form(a, b) == 1 { q(-1, 1) } else { q(1, 1) };
                assert_eq!(lhs, rhs.scale(&s));
            }
        }
    }

    #[test]
    fn projection_basics() {
        assert_eq!(proj_p(&FPElement::one()), FPElement::one());
        assert!(proj_p(&FPElement::sigma(1)).is_zero());
        for a in 0..4 {
            let x = x_gen(a);
            assert!(!x.is_zero());
            assert_eq!(proj_p(&x), x);
            for b in 1..4 {
                assert_eq!(sigma_of(b).mul(&x), x.mul(&sigma_of(b)));
            }
        }
    }

    #[test]
    fn bracket_properties() {
        let xs: Vec<_> = (0..4).map(x_gen).collect();
        let rep = [xs[0].clone(), xs[1].clone(), xs[1].clone(), xs[3].clone()];
        assert!(antisym_bracket(&rep).is_zero());
        let lam = [q(2, 1), q(3, 1), q(-1, 2), CycloScalar::i()];
        let ys: Vec<_> = xs.iter().zip(&lam).map(|(x, l)| x.scale(l)).collect();
        let det = lam.iter().fold(q(1, 1), |a, b| a.mul(b));
        assert_eq!(antisym_bracket(&ys), antisym_bracket(&xs).scale(&det));
        // the unit's four positions contribute with alternating signs
        let with_unit = antisym_bracket(&[FPElement::one(), xs[1].clone(), xs[2].clone(), xs[3].clone()]);
        assert!(with_unit.is_zero());
    }

    #[test]
    fn mu_coefficients_and_commutator() {
        let (mu, c) = mu_and_commutator();
        let i32 = CycloScalar::i().mul(&q(1, 32));
        assert_eq!(mu.coeff(&word_u3_s_u_s(2)), i32);
        assert_eq!(mu.coeff(&word_u3_s_u_s(1)), i32);
        assert!(!c.is_zero());
        for b in 1..4 {
            assert_eq!(sigma_of(b).mul(&mu), mu.mul(&sigma_of(b)));
        }
        let r = report();
        assert!(!r.mu_star_mu_has_positive_leading_power);
        let (w, _) = witness_word();
        assert!(!c.coeff(&w).is_zero());
    }

    #[test]
    fn m_commutator_in_a_u() {
        let u = [Angle::new(1, 3), Angle::new(1, 4), Angle::new(1, 6)];
        assert!(mu_vanishes_in_au(&u).unwrap());
        assert!(!mu_vanishes_in_free(&u));
        assert!(mu_vanishes_in_au(&[Angle::zero(); 3]).unwrap());
    }

    fn letter() -> impl Strategy<Value = Letter> {
        prop_oneof![(1u8..4).prop_map(Letter::Sigma), (-2i64..3).prop_filter("nonzero", |j| *j != 0).prop_map(Letter::U)]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn fp_mul_associative(a in prop::collection::vec(letter(), 0..5), b in prop::collection::vec(letter(), 0..5), c in prop::collection::vec(letter(), 0..5)) {
            let (x, y, z) = (FPElement::letters(&a), FPElement::letters(&b), FPElement::letters(&c));
            prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        }

        #[test]
        fn projection_idempotent_and_contracting(a in prop::collection::vec(letter(), 0..6), b in prop::collection::vec(letter(), 0..6)) {
            let t = FPElement::letters(&a).add(&FPElement::letters(&b).scale(&CycloScalar::i()));
            let p = proj_p(&t);
            prop_assert_eq!(proj_p(&p), p.clone());
            prop_assert!(p.l1_norm() <= t.l1_norm() + 1e-12);
        }
    }
}
