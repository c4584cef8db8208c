//! Hochschild chains in 𝒜 ⊗ 𝒜̃^{⊗k}, the boundary b, B on cyclic chains and
//! the Chern characters of idempotents and unitaries.

use std::collections::HashMap;

use thiserror::Error;

use crate::ncalg::{circ_chain, AlgError, MatrixPoly, NCPoly, TensorChain, Word};
use crate::rewrite::{Presentation, RewriteError};
use crate::scalar::{Angle, Coeff, CycloScalar};

/// A tensor chain whose legs are normal forms and whose legs ≥ 1 carry no unit word.
pub type HochschildChain<C> = TensorChain<C>;

#[derive(Debug, Error, PartialEq)]
pub enum HomologyError {
    #[error("chain is not fixed by the signed cyclic permutation")]
    NotCyclic,
    #[error("matrix is not a hermitian idempotent")]
    NotIdempotent,
    #[error("matrix is not unitary (U U* = U* U scalar-diagonal fails)")]
    NotUnitary,
    #[error("chain of arity {0} has no boundary")]
    ArityTooSmall(usize),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

struct NfCache<'a, C: Coeff> {
    pres: &'a Presentation<C>,
    memo: HashMap<Word, NCPoly<C>>,
}

impl<'a, C: Coeff> NfCache<'a, C> {
    fn new(pres: &'a Presentation<C>) -> Self {
        NfCache { pres, memo: HashMap::new() }
    }
    fn word(&mut self, w: &Word) -> Result<NCPoly<C>, RewriteError> {
        if let Some(p) = self.memo.get(w) {
            return Ok(p.clone());
        }
        let p = self.pres.normal_form(&NCPoly::monomial(w.clone(), C::one()))?;
        self.memo.insert(w.clone(), p.clone());
        Ok(p)
    }
}

/// Add c · (p₀ ⊗ … ⊗ p_k) to `out`.
fn push_product<C: Coeff>(out: &mut TensorChain<C>, legs: &[NCPoly<C>], c: &C) {
    if legs.iter().any(|l| l.is_zero()) {
        return;
    }
    let refs: Vec<&NCPoly<C>> = legs.iter().collect();
    out.add_scaled(&TensorChain::tensor(&refs), c);
}

/// Reduce every leg to normal form and pass to the 𝒜̃ convention.
pub fn reduce_chain<C: Coeff>(c: &TensorChain<C>, pres: &Presentation<C>) -> Result<HochschildChain<C>, HomologyError> {
    let mut cache = NfCache::new(pres);
    let mut out = TensorChain::zero(c.arity);
    for (t, coef) in &c.terms {
        let legs = t.iter().map(|w| cache.word(w)).collect::<Result<Vec<_>, _>>()?;
        push_product(&mut out, &legs, coef);
    }
    Ok(out.drop_units())
}

/// b(a₀⊗…⊗a_k) = Σ_{i<k} (−1)^i …⊗a_i a_{i+1}⊗… + (−1)^k a_k a₀⊗a₁⊗…⊗a_{k−1}.
pub fn boundary_b<C: Coeff>(c: &HochschildChain<C>, pres: &Presentation<C>) -> Result<HochschildChain<C>, HomologyError> {
    if c.arity < 2 {
        return Err(HomologyError::ArityTooSmall(c.arity));
    }
    let k = c.arity - 1;
    let mut cache = NfCache::new(pres);
    let mut out = TensorChain::zero(k);
    for (t, coef) in &c.terms {
        for i in 0..=k {
            let sign = if i % 2 == 0 { coef.clone() } else { coef.neg() };
            let mut legs = Vec::with_capacity(k);
            if i < k {
                for (j, w) in t.iter().enumerate() {
                    if j == i {
                        legs.push(cache.word(&w.concat(&t[i + 1]))?);
                    } else if j != i + 1 {
                        legs.push(cache.word(w)?);
                    }
                }
            } else {
                legs.push(cache.word(&t[k].concat(&t[0]))?);
                for w in &t[1..k] {
                    legs.push(cache.word(w)?);
                }
            }
            push_product(&mut out, &legs, &sign);
        }
    }
    Ok(out.drop_units())
}

/// t(a₀⊗…⊗a_k) = (−1)^k a_k⊗a₀⊗…⊗a_{k−1}.
pub fn cyclic_permutation<C: Coeff>(c: &TensorChain<C>) -> TensorChain<C> {
    let k = c.arity - 1;
    let mut out = TensorChain::zero(c.arity);
    for (t, coef) in &c.terms {
        let mut r = Vec::with_capacity(c.arity);
        r.push(t[k].clone());
        r.extend_from_slice(&t[..k]);
        out.add_term(r, if k % 2 == 1 { coef.neg() } else { coef.clone() });
    }
    out.drop_units()
}

pub fn is_cyclic<C: Coeff>(c: &TensorChain<C>) -> bool {
    cyclic_permutation(c) == *c
}

/// On a cyclic chain B is 1 ⊗ c (normalization fixed to 1).
pub fn operator_b_on_cyclic<C: Coeff>(c: &HochschildChain<C>) -> Result<HochschildChain<C>, HomologyError> {
    if !is_cyclic(c) {
        return Err(HomologyError::NotCyclic);
    }
    let mut out = TensorChain::zero(c.arity + 1);
    for (t, coef) in &c.terms {
        let mut r = Vec::with_capacity(c.arity + 1);
        r.push(Word::unit());
        r.extend_from_slice(t);
        out.add_term(r, coef.clone());
    }
    Ok(out)
}

fn reduce_matrix<C: Coeff>(m: &MatrixPoly<C>, pres: &Presentation<C>) -> Result<MatrixPoly<C>, RewriteError> {
    let entries = m.entries.iter().map(|p| pres.normal_form(p)).collect::<Result<Vec<_>, _>>()?;
    Ok(MatrixPoly { size: m.size, entries })
}

/// e = e² = e* entrywise after reduction.
pub fn is_hermitian_idempotent<C: Coeff>(e: &MatrixPoly<C>, pres: &Presentation<C>) -> Result<bool, HomologyError> {
    let sq = reduce_matrix(&e.mul(e)?.sub(e), pres)?;
    let st = reduce_matrix(&e.star(&pres.gens).sub(e), pres)?;
    Ok(sq.is_zero() && st.is_zero())
}

/// U U* = U* U and this product is a multiple of the identity matrix.
pub fn is_unitary_up_to_center<C: Coeff>(u: &MatrixPoly<C>, pres: &Presentation<C>) -> Result<bool, HomologyError> {
    let us = u.star(&pres.gens);
    let a = reduce_matrix(&u.mul(&us)?, pres)?;
    let b = reduce_matrix(&us.mul(u)?, pres)?;
    if a != b {
        return Ok(false);
    }
    let n = a.size;
    for i in 0..n {
        for j in 0..n {
            let ok = if i == j { a.get(i, i) == a.get(0, 0) } else { a.get(i, j).is_zero() };
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// ch_k(e) = tr((e − ½) ⊛ e ⊛ … ⊛ e) with 2k+1 factors.
pub fn ch_even<C: Coeff>(e: &MatrixPoly<C>, k: usize, pres: &Presentation<C>) -> Result<HochschildChain<C>, HomologyError> {
    if !is_hermitian_idempotent(e, pres)? {
        return Err(HomologyError::NotIdempotent);
    }
    Ok(ch_even_unchecked(e, k, pres)?)
}

pub fn ch_even_unchecked<C: Coeff>(e: &MatrixPoly<C>, k: usize, pres: &Presentation<C>) -> Result<HochschildChain<C>, HomologyError> {
    let e = reduce_matrix(e, pres)?;
    let half = C::from_ratio(1, 2);
    let first = e.sub(&MatrixPoly::identity(e.size).scale(&half));
    let mut factors = vec![&first];
    for _ in 0..2 * k {
        factors.push(&e);
    }
    Ok(circ_chain(&factors)?.trace().drop_units())
}

/// ch_{k+½}(U) = tr(U ⊛ U* ⊛ … ⊛ U* − U* ⊛ U ⊛ … ⊛ U) with 2k+2 factors.
pub fn ch_odd<C: Coeff>(u: &MatrixPoly<C>, k: usize, pres: &Presentation<C>) -> Result<HochschildChain<C>, HomologyError> {
    if !is_unitary_up_to_center(u, pres)? {
        return Err(HomologyError::NotUnitary);
    }
    ch_odd_unchecked(u, k, pres)
}

pub fn ch_odd_unchecked<C: Coeff>(u: &MatrixPoly<C>, k: usize, pres: &Presentation<C>) -> Result<HochschildChain<C>, HomologyError> {
    let u = reduce_matrix(u, pres)?;
    let us = reduce_matrix(&u.star(&pres.gens), pres)?;
    let mut f1 = Vec::new();
    let mut f2 = Vec::new();
    for i in 0..2 * k + 2 {
        if i % 2 == 0 {
            f1.push(&u);
            f2.push(&us);
        } else {
            f1.push(&us);
            f2.push(&u);
        }
    }
    let a = circ_chain(&f1)?.trace();
    let b = circ_chain(&f2)?.trace();
    Ok(a.sub(&b).drop_units())
}

fn levi_civita4(p: [usize; 4]) -> i64 {
    let mut s = 1;
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] == p[j] {
                return 0;
            }
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

/// The closed-form 3-cycle on x⁰..x³:
/// −Σ ε_{αβγδ} cos(φ_α−φ_β+φ_γ−φ_δ) x^α⊗x^β⊗x^γ⊗x^δ + iΣ sin(2(φ_μ−φ_ν)) x^μ⊗x^ν⊗x^μ⊗x^ν, φ₀ = 0.
pub fn closed_form_ch32(u: &[Angle; 3]) -> TensorChain<CycloScalar> {
    let phi = |m: usize| if m == 0 { Angle::zero() } else { u[m - 1] };
    let w = |m: usize| Word::gen(m);
    let mut c = TensorChain::zero(4);
    for a in 0..4 {
        for b in 0..4 {
            for g in 0..4 {
                for d in 0..4 {
                    let eps = levi_civita4([a, b, g, d]);
                    if eps == 0 {
                        continue;
                    }
                    let ang = phi(a).sub(phi(b)).add(phi(g)).sub(phi(d));
                    c.add_term(vec![w(a), w(b), w(g), w(d)], ang.cos().mul(&CycloScalar::int(-eps)));
                }
            }
        }
    }
    for m in 0..4 {
        for n in 0..4 {
            let s = phi(m).sub(phi(n)).scale(2).sin();
            c.add_term(vec![w(m), w(n), w(m), w(n)], CycloScalar::i().mul(&s));
        }
    }
    c
}

/// Exact scalar λ with a = λ·b, if one exists.
pub fn chain_ratio<C: Coeff>(a: &TensorChain<C>, b: &TensorChain<C>) -> Option<C> {
    let (t, cb) = b.terms.iter().next()?;
    let lambda = a.coeff(t).mul(&cb.inv()?);
    if a.sub(&b.scale(&lambda)).is_zero() {
        Some(lambda)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::GeneratorSet;
    use crate::rewrite::{make_a_u_deg, make_r2n_theta, Theta};

    fn a(p: i64, q: i64) -> Angle {
        Angle::new(p, q)
    }

    fn w(g: &[u8]) -> Word {
        Word::from_slice(g)
    }

    #[test]
    fn boundary_at_arity_two() {
        let th = Theta::uniform(2, a(1, 3));
        let p = make_r2n_theta(2, &th).unwrap();
        let mut c = TensorChain::zero(2);
        c.add_term(vec![w(&[1]), w(&[0])], CycloScalar::one());
        let b = boundary_b(&c, &p).unwrap();
        // z²z¹ − z¹z² = (λ²¹ − 1) z¹z²
        let mut expect = TensorChain::zero(1);
        expect.add_term(vec![w(&[0, 1])], th.lambda(1, 0).sub(&CycloScalar::one()));
        assert_eq!(b, expect);
    }

    #[test]
    fn b_squared_vanishes() {
        let u = [a(1, 3), a(1, 4), a(1, 6)];
        let p = make_a_u_deg(&u, 4).unwrap();
        let mut c = TensorChain::zero(3);
        c.add_term(vec![w(&[3]), w(&[1]), w(&[2])], CycloScalar::one());
        c.add_term(vec![w(&[0]), w(&[2]), w(&[2])], CycloScalar::i());
        c.add_term(vec![w(&[]), w(&[3]), w(&[0])], CycloScalar::int(3));
        let bb = boundary_b(&boundary_b(&c, &p).unwrap(), &p).unwrap();
        assert!(bb.is_zero());
    }

    #[test]
    fn not_cyclic_rejected() {
        let mut c: TensorChain<CycloScalar> = TensorChain::zero(2);
        c.add_term(vec![w(&[0]), w(&[1])], CycloScalar::one());
        assert_eq!(operator_b_on_cyclic(&c), Err(HomologyError::NotCyclic));
    }

    #[test]
    fn closed_form_is_cyclic() {
        let c = closed_form_ch32(&[a(1, 3), a(1, 4), a(1, 5)]);
        assert!(is_cyclic(&c));
        let b = operator_b_on_cyclic(&c).unwrap();
        assert_eq!(b.arity, 5);
        assert_eq!(b.len(), c.len());
    }

    #[test]
    fn idempotent_check_rejects() {
        let gens = GeneratorSet::hermitian(&["x"]);
        let p: Presentation = Presentation::from_rules("free", gens, vec![], vec![]);
        let mut e = MatrixPoly::zero(1);
        e.entries[0] = NCPoly::gen(0);
        assert_eq!(ch_even(&e, 0, &p), Err(HomologyError::NotIdempotent));
        let one = MatrixPoly::<CycloScalar>::identity(2);
        // ch₀(1₂) = tr(1 − ½) = 1
        let c = ch_even(&one, 0, &p).unwrap();
        assert_eq!(c.coeff(&[Word::unit()]), CycloScalar::one());
    }
}
