//! Coefficient arithmetic.
//!
//! [`CycloScalar`] is an exact element of Q(ζ_N) for N a multiple of 4, stored
//! as a polynomial in ζ_N reduced modulo the N-th cyclotomic polynomial, with a
//! single common denominator. [`ApproxScalar`] is a complex double used by the
//! numeric parts of the crate.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub type Rational = BigRational;

/// Field operations shared by exact and approximate coefficients.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn from_ratio(n: i64, d: i64) -> Self;
    /// The imaginary unit.
    fn i() -> Self;
    fn to_complex(&self) -> Complex64;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn from_i64(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }
    fn is_one(&self) -> bool {
        self.sub(&Self::one()).is_zero()
    }
}

// ---------------------------------------------------------------------------
// cyclotomic polynomials

fn cyclo_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients (low degree first) of the n-th cyclotomic polynomial.
pub fn cyclotomic_poly(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1);
    if let Some(p) = cyclo_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by every Φ_d with d | n, d < n
    let mut p: Vec<i128> = vec![0; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let q = cyclotomic_poly(d);
            p = div_monic(&p, &q);
        }
    }
    let out: Arc<Vec<i64>> = Arc::new(p.iter().map(|&c| c as i64).collect());
    cyclo_cache().lock().unwrap().insert(n, out.clone());
    out
}

fn div_monic(p: &[i128], d: &[i64]) -> Vec<i128> {
    let dp = d.len() - 1;
    let mut r = p.to_vec();
    let mut q = vec![0i128; p.len() - dp];
    for i in (dp..p.len()).rev() {
        let c = r[i];
        if c != 0 {
            q[i - dp] = c;
            for (j, &dj) in d.iter().enumerate() {
                r[i - dp + j] -= c * dj as i128;
            }
        }
    }
    debug_assert!(r.iter().all(|&c| c == 0), "inexact cyclotomic division");
    q
}

pub fn euler_phi(n: u32) -> usize {
    cyclotomic_poly(n).len() - 1
}

fn lcm(a: u32, b: u32) -> u32 {
    a / a.gcd(&b) * b
}

// ---------------------------------------------------------------------------
// exact scalars

/// Exact element of the cyclotomic field of order `order`.
///
/// Canonical: `num` has length at most φ(order) with no trailing zeros, the
/// numerators and `den` are coprime and `den > 0`. Zero has empty `num`.
#[derive(Clone, Debug)]
pub struct CycloScalar {
    order: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycloScalar {
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Σ coeffs[k] ζ^k for the given order; coefficients may have any length.
    pub fn from_poly(order: u32, coeffs: &[Rational]) -> Self {
        assert!(order % 4 == 0 && order > 0, "order must be a positive multiple of 4");
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let num: Vec<BigInt> = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Self::from_parts(order, num, den)
    }

    fn from_parts(order: u32, mut num: Vec<BigInt>, den: BigInt) -> Self {
        let n = order as usize;
        if num.len() > n {
            // fold ζ^N = 1 first
            for i in n..num.len() {
                let c = std::mem::take(&mut num[i]);
                num[i % n] += c;
            }
            num.truncate(n);
        }
        reduce_mod_cyclo(order, &mut num);
        let mut s = CycloScalar { order, num, den };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        while self.num.last().is_some_and(|c| c.is_zero()) {
            self.num.pop();
        }
        if self.num.is_empty() {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in self.num.iter_mut() {
                *c = -&*c;
            }
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            self.den = &self.den / &g;
            for c in self.num.iter_mut() {
                *c = &*c / &g;
            }
        }
    }

    pub fn rational(r: Rational) -> Self {
        Self::from_poly(4, &[r])
    }

    pub fn int(n: i64) -> Self {
        Self::from_parts(4, vec![BigInt::from(n)], BigInt::one())
    }

    pub fn zeta_power(order: u32, k: i64) -> Self {
        let k = k.rem_euclid(order as i64) as usize;
        let mut num = vec![BigInt::zero(); k + 1];
        num[k] = BigInt::one();
        Self::from_parts(order, num, BigInt::one())
    }

    /// Coefficient map exponent → rational of the canonical representation.
    pub fn coeffs(&self) -> Vec<(usize, Rational)> {
        self.num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, Rational::new(c.clone(), self.den.clone())))
            .collect()
    }

    pub fn is_rational(&self) -> bool {
        self.num.len() <= 1
    }

    pub fn to_rational(&self) -> Option<Rational> {
        match self.num.len() {
            0 => Some(Rational::zero()),
            1 => Some(Rational::new(self.num[0].clone(), self.den.clone())),
            _ => None,
        }
    }

    /// Re-express in the field of order `target` (a multiple of the current order).
    pub fn lift(&self, target: u32) -> Self {
        if target == self.order {
            return self.clone();
        }
        assert!(target % self.order == 0);
        let step = (target / self.order) as usize;
        let mut num = vec![BigInt::zero(); self.num.len().saturating_sub(1) * step + 1];
        for (k, c) in self.num.iter().enumerate() {
            num[k * step] = c.clone();
        }
        if self.num.is_empty() {
            num.clear();
        }
        Self::from_parts(target, num, self.den.clone())
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.order == b.order {
            return (a.clone(), b.clone());
        }
        let n = lcm(a.order, b.order);
        (a.lift(n), b.lift(n))
    }

    /// Apply the Galois automorphism ζ ↦ ζ^k (k coprime to the order).
    pub fn galois(&self, k: i64) -> Self {
        let n = self.order as i64;
        let mut num = vec![BigInt::zero(); self.order as usize];
        for (j, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                let e = (j as i64 * k).rem_euclid(n) as usize;
                num[e] += c;
            }
        }
        Self::from_parts(self.order, num, self.den.clone())
    }

    /// Numerical value.
    pub fn embed(&self) -> ApproxScalar {
        let n = self.order as f64;
        let mut z = Complex64::new(0.0, 0.0);
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let r = Rational::new(c.clone(), self.den.clone()).to_f64().unwrap();
            let a = 2.0 * std::f64::consts::PI * k as f64 / n;
            z += Complex64::new(r * a.cos(), r * a.sin());
        }
        ApproxScalar(z)
    }

    fn mul_impl(&self, o: &Self) -> Self {
        if self.num.is_empty() || o.num.is_empty() {
            return Self::zero_of(self.order.max(o.order));
        }
        if self.order != o.order {
            let (a, b) = Self::common(self, o);
            return a.mul_impl(&b);
        }
        let mut prod = vec![BigInt::zero(); self.num.len() + o.num.len() - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Self::from_parts(self.order, prod, &self.den * &o.den)
    }

    fn add_impl(&self, o: &Self) -> Self {
        if o.num.is_empty() {
            return self.clone();
        }
        if self.num.is_empty() {
            return o.clone();
        }
        if self.order != o.order {
            let (a, b) = Self::common(self, o);
            return a.add_impl(&b);
        }
        let len = self.num.len().max(o.num.len());
        let mut num = Vec::with_capacity(len);
        if self.den == o.den {
            for k in 0..len {
                let mut c = self.num.get(k).cloned().unwrap_or_default();
                if let Some(b) = o.num.get(k) {
                    c += b;
                }
                num.push(c);
            }
            let mut s = CycloScalar { order: self.order, num, den: self.den.clone() };
            s.normalize();
            return s;
        }
        for k in 0..len {
            let mut c = BigInt::zero();
            if let Some(a) = self.num.get(k) {
                c += a * &o.den;
            }
            if let Some(b) = o.num.get(k) {
                c += b * &self.den;
            }
            num.push(c);
        }
        let mut s = CycloScalar { order: self.order, num, den: &self.den * &o.den };
        s.normalize();
        s
    }

    fn zero_of(order: u32) -> Self {
        CycloScalar { order, num: Vec::new(), den: BigInt::one() }
    }

    fn scale_rational(&self, r: &Rational) -> Self {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        let mut s = CycloScalar { order: self.order, num, den: &self.den * r.denom() };
        s.normalize();
        s
    }

    fn inv_impl(&self) -> Option<Self> {
        if self.num.is_empty() {
            return None;
        }
        if let Some(r) = self.to_rational() {
            return Some(Self::rational(r.recip()).lift(self.order));
        }
        // product of the nontrivial Galois conjugates; x·y is the field norm
        let n = self.order as i64;
        let mut y = Self::int(1).lift(self.order);
        for k in 2..n {
            if k.gcd(&n) == 1 {
                y = y.mul_impl(&self.galois(k));
            }
        }
        let norm = self.mul_impl(&y).to_rational().expect("norm is rational");
        Some(y.scale_rational(&norm.recip()))
    }
}

fn reduce_mod_cyclo(order: u32, num: &mut Vec<BigInt>) {
    let phi = cyclotomic_poly(order);
    let d = phi.len() - 1;
    if num.len() <= d {
        return;
    }
    for i in (d..num.len()).rev() {
        if num[i].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut num[i]);
        for (j, &pj) in phi.iter().enumerate().take(d) {
            if pj != 0 {
                num[i - d + j] -= &c * pj;
            }
        }
    }
    num.truncate(d);
}

impl PartialEq for CycloScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.num == other.num && self.den == other.den;
        }
        let (a, b) = Self::common(self, other);
        a.num == b.num && a.den == b.den
    }
}

impl Coeff for CycloScalar {
    fn zero() -> Self {
        Self::zero_of(4)
    }
    fn one() -> Self {
        Self::int(1)
    }
    fn is_zero(&self) -> bool {
        self.num.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        self.add_impl(other)
    }
    fn mul(&self, other: &Self) -> Self {
        self.mul_impl(other)
    }
    fn neg(&self) -> Self {
        CycloScalar {
            order: self.order,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
    fn conj(&self) -> Self {
        self.galois(-1)
    }
    fn inv(&self) -> Option<Self> {
        self.inv_impl()
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        Self::rational(Rational::new(BigInt::from(n), BigInt::from(d)))
    }
    fn i() -> Self {
        Self::zeta_power(4, 1)
    }
    fn to_complex(&self) -> Complex64 {
        self.embed().0
    }
}

impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{}", r);
        }
        let mut first = true;
        for (k, c) in self.coeffs() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{}", c)?;
            } else {
                write!(f, "({})*z{}^{}", c, self.order, k)?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                Coeff::add(&self, &o)
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                Coeff::sub(&self, &o)
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t {
                Coeff::mul(&self, &o)
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                Coeff::neg(&self)
            }
        }
        impl<'a> Add<&'a $t> for &'a $t {
            type Output = $t;
            fn add(self, o: &$t) -> $t {
                Coeff::add(self, o)
            }
        }
        impl<'a> Sub<&'a $t> for &'a $t {
            type Output = $t;
            fn sub(self, o: &$t) -> $t {
                Coeff::sub(self, o)
            }
        }
        impl<'a> Mul<&'a $t> for &'a $t {
            type Output = $t;
            fn mul(self, o: &$t) -> $t {
                Coeff::mul(self, o)
            }
        }
    };
}

forward_ops!(CycloScalar);
forward_ops!(ApproxScalar);

// ---------------------------------------------------------------------------
// exact linear algebra

/// Row rank by Gaussian elimination; exact for [`CycloScalar`].
pub fn rank<C: Coeff>(mut rows: Vec<Vec<C>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for col in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = rows[r][col].inv().expect("nonzero pivot");
        for j in col..ncols {
            rows[r][j] = rows[r][j].mul(&inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for j in col..ncols {
                if !pivot_row[j].is_zero() {
                    row[j] = row[j].sub(&f.mul(&pivot_row[j]));
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

// ---------------------------------------------------------------------------
// angles that are rational multiples of π

/// The angle π·p/q, kept in lowest terms with q > 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Angle {
    pub p: i64,
    pub q: i64,
}

impl Angle {
    pub fn new(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        let g = p.gcd(&q).max(1);
        let s = if q < 0 { -1 } else { 1 };
        Angle { p: s * p / g, q: s * q / g }
    }
    pub fn zero() -> Self {
        Angle { p: 0, q: 1 }
    }
    pub fn is_zero(&self) -> bool {
        self.p == 0
    }
    pub fn add(self, o: Angle) -> Angle {
        Angle::new(self.p * o.q + o.p * self.q, self.q * o.q)
    }
    pub fn sub(self, o: Angle) -> Angle {
        self.add(o.neg())
    }
    pub fn neg(self) -> Angle {
        Angle { p: -self.p, q: self.q }
    }
    pub fn scale(self, k: i64) -> Angle {
        Angle::new(self.p * k, self.q)
    }
    pub fn half(self) -> Angle {
        Angle::new(self.p, 2 * self.q)
    }
    pub fn radians(self) -> f64 {
        std::f64::consts::PI * self.p as f64 / self.q as f64
    }
    pub fn phase(self) -> CycloScalar {
        phase(self.p, self.q)
    }
    pub fn cos(self) -> CycloScalar {
        cos_pi(self.p, self.q)
    }
    pub fn sin(self) -> CycloScalar {
        sin_pi(self.p, self.q)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Angle {
    type Err = String;
    /// Parses `p/q` (meaning π·p/q) or a bare integer `p`.
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let (p, q) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, "1"),
        };
        let p: i64 = p.parse().map_err(|_| format!("bad angle numerator in {s:?}"))?;
        let q: i64 = q.parse().map_err(|_| format!("bad angle denominator in {s:?}"))?;
        if q <= 0 {
            return Err(format!("angle denominator must be positive in {s:?}"));
        }
        Ok(Angle::new(p, q))
    }
}

/// exp(iπ p/q) in the field of order lcm(4, 2q).
pub fn phase(p: i64, q: i64) -> CycloScalar {
    assert!(q >= 1);
    let n = lcm(4, 2 * q as u32);
    let k = p * (n as i64 / (2 * q));
    CycloScalar::zeta_power(n, k)
}

pub fn cos_pi(p: i64, q: i64) -> CycloScalar {
    let z = phase(p, q);
    let s = z.add_impl(&z.conj());
    s.scale_rational(&Rational::new(1.into(), 2.into()))
}

pub fn sin_pi(p: i64, q: i64) -> CycloScalar {
    let z = phase(p, q);
    let d = z.add_impl(&z.conj().neg());
    // (z - z̄)/(2i) = -i(z - z̄)/2
    d.mul_impl(&CycloScalar::i().neg()).scale_rational(&Rational::new(1.into(), 2.into()))
}

// ---------------------------------------------------------------------------
// approximate scalars

#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct ApproxScalar(pub Complex64);

impl ApproxScalar {
    pub fn new(re: f64, im: f64) -> Self {
        ApproxScalar(Complex64::new(re, im))
    }
    pub fn re(&self) -> f64 {
        self.0.re
    }
    pub fn im(&self) -> f64 {
        self.0.im
    }
    pub fn abs(&self) -> f64 {
        self.0.norm()
    }
    pub fn is_finite(&self) -> bool {
        self.0.re.is_finite() && self.0.im.is_finite()
    }
}

impl Coeff for ApproxScalar {
    fn zero() -> Self {
        ApproxScalar::new(0.0, 0.0)
    }
    fn one() -> Self {
        ApproxScalar::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.0.re == 0.0 && self.0.im == 0.0
    }
    fn add(&self, o: &Self) -> Self {
        ApproxScalar(self.0 + o.0)
    }
    fn mul(&self, o: &Self) -> Self {
        ApproxScalar(self.0 * o.0)
    }
    fn neg(&self) -> Self {
        ApproxScalar(-self.0)
    }
    fn conj(&self) -> Self {
        ApproxScalar(self.0.conj())
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(ApproxScalar(self.0.inv()))
        }
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        ApproxScalar::new(n as f64 / d as f64, 0.0)
    }
    fn i() -> Self {
        ApproxScalar::new(0.0, 1.0)
    }
    fn to_complex(&self) -> Complex64 {
        self.0
    }
}

impl fmt::Display for ApproxScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}i", self.0.re, self.0.im)
    }
}
