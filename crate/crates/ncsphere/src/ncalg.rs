//! Free *-algebras on finitely many generators: words, polynomials, tensor
//! chains and matrices with polynomial entries.
//!
//! Words compare degree-lexicographically, with generator indices taken as
//! their rank. Every presentation orders its generator list by rank, so this
//! is the word order used for rewriting.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;
use thiserror::Error;

use crate::scalar::Coeff;

#[derive(Debug, Error, PartialEq)]
pub enum AlgError {
    #[error("generator index {0} out of range for a set of {1} generators")]
    GeneratorMismatch(usize, usize),
    #[error("matrix size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("star pairing is not an involution")]
    BadStar,
}

/// Ordered generator labels with the *-involution on indices.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSet {
    pub names: Vec<String>,
    pub star_pairing: Vec<usize>,
}

impl GeneratorSet {
    pub fn new(names: Vec<String>, star_pairing: Vec<usize>) -> Result<Arc<Self>, AlgError> {
        let n = names.len();
        if star_pairing.len() != n || star_pairing.iter().enumerate().any(|(i, &j)| j >= n || star_pairing[j] != i) {
            return Err(AlgError::BadStar);
        }
        assert!(n <= 256, "at most 256 generators");
        Ok(Arc::new(GeneratorSet { names, star_pairing }))
    }

    /// All generators self-adjoint.
    pub fn hermitian(names: &[&str]) -> Arc<Self> {
        let n = names.len();
        Self::new(names.iter().map(|s| s.to_string()).collect(), (0..n).collect()).unwrap()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn check<C: Coeff>(&self, p: &NCPoly<C>) -> Result<(), AlgError> {
        for w in p.terms.keys() {
            for &g in w.letters() {
                if g as usize >= self.len() {
                    return Err(AlgError::GeneratorMismatch(g as usize, self.len()));
                }
            }
        }
        Ok(())
    }

    /// Antilinear antimultiplicative involution.
    pub fn star<C: Coeff>(&self, p: &NCPoly<C>) -> NCPoly<C> {
        let mut out = NCPoly::zero();
        for (w, c) in &p.terms {
            let sw: Word = w.letters().iter().rev().map(|&g| self.star_pairing[g as usize] as u8).collect();
            out.add_term(sw, c.conj());
        }
        out
    }

    pub fn word_string(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.letters().iter().map(|&g| self.names[g as usize].as_str()).collect::<Vec<_>>().join("*")
    }

    pub fn poly_string<C: Coeff>(&self, p: &NCPoly<C>) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        p.terms
            .iter()
            .rev()
            .map(|(w, c)| format!("({})*{}", c, self.word_string(w)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// A word in the generators; the empty word is the unit.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub SmallVec<[u8; 16]>);

impl Word {
    pub fn unit() -> Self {
        Word(SmallVec::new())
    }
    pub fn from_slice(s: &[u8]) -> Self {
        Word(SmallVec::from_slice(s))
    }
    pub fn gen(g: usize) -> Self {
        Word::from_slice(&[g as u8])
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
    pub fn letters(&self) -> &[u8] {
        &self.0
    }
    pub fn concat(&self, o: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Word(v)
    }
    /// self[..i] ++ mid ++ self[j..]
    pub fn splice(&self, i: usize, j: usize, mid: &Word) -> Word {
        let mut v: SmallVec<[u8; 16]> = SmallVec::with_capacity(self.len() - (j - i) + mid.len());
        v.extend_from_slice(&self.0[..i]);
        v.extend_from_slice(&mid.0);
        v.extend_from_slice(&self.0[j..]);
        Word(v)
    }
    pub fn find(&self, pat: &Word) -> Option<usize> {
        if pat.len() > self.len() {
            return None;
        }
        (0..=self.len() - pat.len()).find(|&i| self.0[i..i + pat.len()] == pat.0[..])
    }
}

impl FromIterator<u8> for Word {
    fn from_iter<I: IntoIterator<Item = u8>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Finite linear combination of words. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Debug)]
pub struct NCPoly<C: Coeff> {
    pub terms: BTreeMap<Word, C>,
}

impl<C: Coeff> Default for NCPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> NCPoly<C> {
    pub fn zero() -> Self {
        NCPoly { terms: BTreeMap::new() }
    }
    pub fn one() -> Self {
        Self::constant(C::one())
    }
    pub fn constant(c: C) -> Self {
        Self::monomial(Word::unit(), c)
    }
    pub fn gen(g: usize) -> Self {
        Self::monomial(Word::gen(g), C::one())
    }
    pub fn word(letters: &[usize]) -> Self {
        Self::monomial(letters.iter().map(|&g| g as u8).collect(), C::one())
    }
    pub fn monomial(w: Word, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
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
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(|w| w.len())
    }
    pub fn coeff(&self, w: &Word) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }
    pub fn leading(&self) -> Option<(&Word, &C)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, w: Word, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_assign(&mut self, o: &Self) {
        for (w, c) in &o.terms {
            self.add_term(w.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, o: &Self, s: &C) {
        for (w, c) in &o.terms {
            self.add_term(w.clone(), c.mul(s));
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.add_assign(o);
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.add_scaled(o, &C::one().neg());
        r
    }

    pub fn neg(&self) -> Self {
        self.scale(&C::one().neg())
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        NCPoly { terms: self.terms.iter().map(|(w, c)| (w.clone(), c.mul(s))).collect() }
    }

    /// Product in the free algebra.
    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                r.add_term(w1.concat(w2), c1.mul(c2));
            }
        }
        r
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn anticommutator(&self, o: &Self) -> Self {
        self.mul(o).add(&o.mul(self))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> NCPoly<D> {
        let mut r = NCPoly::zero();
        for (w, c) in &self.terms {
            r.add_term(w.clone(), f(c));
        }
        r
    }

    /// Substitute each generator g by `images[g]` (an algebra map out of the free algebra).
    pub fn substitute(&self, images: &[NCPoly<C>]) -> NCPoly<C> {
        let mut r = NCPoly::zero();
        for (w, c) in &self.terms {
            let mut t = NCPoly::constant(c.clone());
            for &g in w.letters() {
                t = t.mul(&images[g as usize]);
            }
            r.add_assign(&t);
        }
        r
    }

    /// Keep only the homogeneous component of the given degree.
    pub fn homogeneous_part(&self, d: usize) -> Self {
        NCPoly { terms: self.terms.iter().filter(|(w, _)| w.len() == d).map(|(w, c)| (w.clone(), c.clone())).collect() }
    }
}

/// Linear combination of (k+1)-tuples of words.
#[derive(Clone, PartialEq, Debug)]
pub struct TensorChain<C: Coeff> {
    pub arity: usize,
    pub terms: BTreeMap<Vec<Word>, C>,
}

impl<C: Coeff> TensorChain<C> {
    pub fn zero(arity: usize) -> Self {
        TensorChain { arity, terms: BTreeMap::new() }
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
    pub fn add_term(&mut self, t: Vec<Word>, c: C) {
        debug_assert_eq!(t.len(), self.arity);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(t) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }
    pub fn coeff(&self, t: &[Word]) -> C {
        self.terms.get(t).cloned().unwrap_or_else(C::zero)
    }
    pub fn add_scaled(&mut self, o: &Self, s: &C) {
        assert_eq!(self.arity, o.arity);
        for (t, c) in &o.terms {
            self.add_term(t.clone(), c.mul(s));
        }
    }
    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.add_scaled(o, &C::one());
        r
    }
    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.add_scaled(o, &C::one().neg());
        r
    }
    pub fn scale(&self, s: &C) -> Self {
        let mut r = Self::zero(self.arity);
        r.add_scaled(self, s);
        r
    }

    /// p₀ ⊗ p₁ ⊗ … expanded multilinearly.
    pub fn tensor(polys: &[&NCPoly<C>]) -> Self {
        let mut acc: Vec<(Vec<Word>, C)> = vec![(Vec::new(), C::one())];
        for p in polys {
            let mut next = Vec::with_capacity(acc.len() * p.len());
            for (t, c) in &acc {
                for (w, d) in &p.terms {
                    let mut t2 = t.clone();
                    t2.push(w.clone());
                    next.push((t2, c.mul(d)));
                }
            }
            acc = next;
        }
        let mut r = Self::zero(polys.len());
        for (t, c) in acc {
            r.add_term(t, c);
        }
        r
    }

    /// Append a factor: (Σ c t) ⊗ p.
    pub fn tensor_right(&self, p: &NCPoly<C>) -> Self {
        let mut r = Self::zero(self.arity + 1);
        for (t, c) in &self.terms {
            for (w, d) in &p.terms {
                let mut t2 = t.clone();
                t2.push(w.clone());
                r.add_term(t2, c.mul(d));
            }
        }
        r
    }

    /// Pass to 𝒜 ⊗ 𝒜̃^{⊗k}: drop terms with a unit word in any slot ≥ 1.
    pub fn drop_units(&self) -> Self {
        let mut r = Self::zero(self.arity);
        for (t, c) in &self.terms {
            if t.iter().skip(1).all(|w| !w.is_empty()) {
                r.add_term(t.clone(), c.clone());
            }
        }
        r
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|c| c.to_complex().norm()).fold(0.0, f64::max)
    }
}

/// Square matrix with polynomial entries, row-major.
#[derive(Clone, PartialEq, Debug)]
pub struct MatrixPoly<C: Coeff> {
    pub size: usize,
    pub entries: Vec<NCPoly<C>>,
}

impl<C: Coeff> MatrixPoly<C> {
    pub fn zero(size: usize) -> Self {
        MatrixPoly { size, entries: vec![NCPoly::zero(); size * size] }
    }
    pub fn identity(size: usize) -> Self {
        let mut m = Self::zero(size);
        for i in 0..size {
            m.entries[i * size + i] = NCPoly::one();
        }
        m
    }
    /// Scalar matrix (row-major) times a polynomial.
    pub fn from_scalar(size: usize, a: &[C], p: &NCPoly<C>) -> Self {
        assert_eq!(a.len(), size * size);
        MatrixPoly { size, entries: a.iter().map(|c| p.scale(c)).collect() }
    }
    pub fn get(&self, i: usize, j: usize) -> &NCPoly<C> {
        &self.entries[i * self.size + j]
    }
    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.size, o.size);
        MatrixPoly { size: self.size, entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a.add(b)).collect() }
    }
    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.size, o.size);
        MatrixPoly { size: self.size, entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a.sub(b)).collect() }
    }
    pub fn scale(&self, s: &C) -> Self {
        MatrixPoly { size: self.size, entries: self.entries.iter().map(|a| a.scale(s)).collect() }
    }
    /// Matrix product in the free algebra (no reduction).
    pub fn mul(&self, o: &Self) -> Result<Self, AlgError> {
        if self.size != o.size {
            return Err(AlgError::SizeMismatch(self.size, o.size));
        }
        let n = self.size;
        let mut r = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        r.entries[i * n + j].add_assign(&a.mul(b));
                    }
                }
            }
        }
        Ok(r)
    }
    /// Conjugate transpose with the generator involution.
    pub fn star(&self, gens: &GeneratorSet) -> Self {
        let n = self.size;
        let mut r = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                r.entries[j * n + i] = gens.star(self.get(i, j));
            }
        }
        r
    }
    pub fn map_entries(&self, f: impl Fn(&NCPoly<C>) -> NCPoly<C>) -> Self {
        MatrixPoly { size: self.size, entries: self.entries.iter().map(f).collect() }
    }
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }
}

/// Square matrix of tensor chains of a common arity.
#[derive(Clone, PartialEq, Debug)]
pub struct ChainMatrix<C: Coeff> {
    pub size: usize,
    pub arity: usize,
    pub entries: Vec<TensorChain<C>>,
}

impl<C: Coeff> ChainMatrix<C> {
    /// View a polynomial matrix as a matrix of 1-chains.
    pub fn from_matrix(m: &MatrixPoly<C>) -> Self {
        ChainMatrix { size: m.size, arity: 1, entries: m.entries.iter().map(|p| TensorChain::tensor(&[p])).collect() }
    }

    /// (self ⊛ N)^α_β = Σ_γ self^α_γ ⊗ N^γ_β.
    pub fn circ(&self, n: &MatrixPoly<C>) -> Result<Self, AlgError> {
        if self.size != n.size {
            return Err(AlgError::SizeMismatch(self.size, n.size));
        }
        let s = self.size;
        let mut entries = vec![TensorChain::zero(self.arity + 1); s * s];
        for a in 0..s {
            for g in 0..s {
                let left = &self.entries[a * s + g];
                if left.is_zero() {
                    continue;
                }
                for b in 0..s {
                    let right = n.get(g, b);
                    if !right.is_zero() {
                        let t = left.tensor_right(right);
                        entries[a * s + b].add_scaled(&t, &C::one());
                    }
                }
            }
        }
        Ok(ChainMatrix { size: s, arity: self.arity + 1, entries })
    }

    pub fn trace(&self) -> TensorChain<C> {
        let mut r = TensorChain::zero(self.arity);
        for i in 0..self.size {
            r.add_scaled(&self.entries[i * self.size + i], &C::one());
        }
        r
    }
}

/// M ⊛ N for polynomial matrices.
pub fn circledcirc<C: Coeff>(m: &MatrixPoly<C>, n: &MatrixPoly<C>) -> Result<ChainMatrix<C>, AlgError> {
    ChainMatrix::from_matrix(m).circ(n)
}

/// M₁ ⊛ M₂ ⊛ … ⊛ M_r.
pub fn circ_chain<C: Coeff>(ms: &[&MatrixPoly<C>]) -> Result<ChainMatrix<C>, AlgError> {
    let mut acc = ChainMatrix::from_matrix(ms[0]);
    for m in &ms[1..] {
        acc = acc.circ(m)?;
    }
    Ok(acc)
}

pub fn trace<C: Coeff>(m: &ChainMatrix<C>) -> TensorChain<C> {
    m.trace()
}
