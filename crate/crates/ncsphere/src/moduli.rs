//! Numeric geometry of the parameter torus Σ = T³: the scaling vector field,
//! the Sklyanin constants, the Weyl action and the case classification.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ncalg::NCPoly;
use crate::scalar::{ApproxScalar, Coeff};

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_DT: f64 = 1e-3;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum ModuliError {
    #[error("on degenerate locus: {0}")]
    OnDegenerateLocus(String),
    #[error("ambiguous within tolerance: {0:?}")]
    AmbiguousWithinTolerance(Vec<CaseLabel>),
}

/// φ₁, φ₂, φ₃ in radians, reduced to [0, π).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuliPoint {
    pub phi: [f64; 3],
}

fn mod_pi(x: f64) -> f64 {
    let r = x.rem_euclid(PI);
    if PI - r < 1e-13 {
        0.0
    } else {
        r
    }
}

/// Distance between two angles modulo π.
pub fn dist_mod_pi(a: f64, b: f64) -> f64 {
    let r = (a - b).rem_euclid(PI);
    r.min(PI - r)
}

impl ModuliPoint {
    pub fn new(p1: f64, p2: f64, p3: f64) -> Self {
        ModuliPoint { phi: [mod_pi(p1), mod_pi(p2), mod_pi(p3)] }
    }

    pub fn from_array(p: [f64; 3]) -> Self {
        Self::new(p[0], p[1], p[2])
    }

    pub fn close_to(&self, o: &ModuliPoint, tol: f64) -> bool {
        (0..3).all(|i| dist_mod_pi(self.phi[i], o.phi[i]) <= tol)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct JTriple {
    pub j12: f64,
    pub j23: f64,
    pub j31: f64,
}

impl JTriple {
    /// J₁₂ + J₂₃ + J₃₁ + J₁₂J₂₃J₃₁.
    pub fn constraint_residual(&self) -> f64 {
        (self.j12 + self.j23 + self.j31 + self.j12 * self.j23 * self.j31).abs()
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.j12, self.j23, self.j31]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CaseLabel {
    Generic,
    POrbit,
    PPrimeOrbit,
    OOrbit,
    CPlus,
    CMinus,
    F1,
    F2,
    L,
    LPrime,
    DSet,
}

impl CaseLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseLabel::Generic => "GENERIC",
            CaseLabel::POrbit => "P_ORBIT",
            CaseLabel::PPrimeOrbit => "P_PRIME_ORBIT",
            CaseLabel::OOrbit => "O_ORBIT",
            CaseLabel::CPlus => "C_PLUS",
            CaseLabel::CMinus => "C_MINUS",
            CaseLabel::F1 => "F1",
            CaseLabel::F2 => "F2",
            CaseLabel::L => "L",
            CaseLabel::LPrime => "L_PRIME",
            CaseLabel::DSet => "D_SET",
        }
    }
}

const CYCLIC: [(usize, usize, usize); 3] = [(0, 1, 2), (1, 2, 0), (2, 0, 1)];

/// Z_k = sin(2φ_k)·sin(φ_ℓ+φ_m−φ_k).
pub fn vector_field_z(phi: &[f64; 3]) -> [f64; 3] {
    let mut z = [0.0; 3];
    for &(k, l, m) in &CYCLIC {
        z[k] = (2.0 * phi[k]).sin() * (phi[l] + phi[m] - phi[k]).sin();
    }
    z
}

fn axpy(a: &[f64; 3], s: f64, b: &[f64; 3]) -> [f64; 3] {
    [a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]]
}

/// A point φ = n·π/2 + ψ with |ψ_k| ≤ π/4. Orbits of Z run into the lattice
/// (π/2)Z³, where J = −tan·tan is 0·∞; keeping ψ separate preserves its
/// relative precision there.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShiftedPoint {
    pub n: [i64; 3],
    pub psi: [f64; 3],
}

/// sin(n·π/2 + x).
fn sin_q(n: i64, x: f64) -> f64 {
    match n.rem_euclid(4) {
        0 => x.sin(),
        1 => x.cos(),
        2 => -x.sin(),
        _ => -x.cos(),
    }
}

fn cos_q(n: i64, x: f64) -> f64 {
    sin_q(n + 1, x)
}

impl ShiftedPoint {
    pub fn new(phi: &[f64; 3]) -> Self {
        let mut p = ShiftedPoint { n: [0; 3], psi: *phi };
        p.recenter();
        p
    }

    fn recenter(&mut self) {
        for k in 0..3 {
            let q = (self.psi[k] / FRAC_PI_2).round();
            if q != 0.0 {
                self.n[k] += q as i64;
                self.psi[k] -= q * FRAC_PI_2;
            }
        }
    }

    pub fn phi(&self) -> [f64; 3] {
        [0, 1, 2].map(|k| self.n[k] as f64 * FRAC_PI_2 + self.psi[k])
    }

    /// Z evaluated through ψ.
    pub fn z(&self) -> [f64; 3] {
        let (n, p) = (&self.n, &self.psi);
        let mut z = [0.0; 3];
        for &(k, l, m) in &CYCLIC {
            z[k] = sin_q(2 * n[k], 2.0 * p[k]) * sin_q(n[l] + n[m] - n[k], p[l] + p[m] - p[k]);
        }
        z
    }

    pub fn j(&self) -> Result<JTriple, ModuliError> {
        let (n, p) = (&self.n, &self.psi);
        let mut j = [0.0; 3];
        for &(k, l, m) in &CYCLIC {
            let (ck, cd) = (cos_q(n[k], p[k]), cos_q(n[l] - n[m], p[l] - p[m]));
            if ck.abs() < 1e-300 || cd.abs() < 1e-300 {
                return Err(ModuliError::OnDegenerateLocus(format!("J_{}{} undefined", l + 1, m + 1)));
            }
            j[l] = -(sin_q(n[l] - n[m], p[l] - p[m]) / cd) * (sin_q(n[k], p[k]) / ck);
        }
        Ok(JTriple { j12: j[0], j23: j[1], j31: j[2] })
    }

    pub fn lambda(&self) -> f64 {
        let (n, p) = (&self.n, &self.psi);
        let s = |a: i64, x: f64| sin_q(2 * a, 2.0 * x);
        s(n[0], p[0]) * s(n[1] - n[2], p[1] - p[2]) / (s(n[1], p[1]) * s(n[0] - n[2], p[0] - p[2]))
    }

    pub fn j_invariant(&self) -> f64 {
        j_from_lambda(self.lambda())
    }

    fn rk4_step(&self, h: f64) -> Self {
        let at = |q: &[f64; 3]| ShiftedPoint { n: self.n, psi: *q }.z();
        let p = &self.psi;
        let k1 = at(p);
        let k2 = at(&axpy(p, h / 2.0, &k1));
        let k3 = at(&axpy(p, h / 2.0, &k2));
        let k4 = at(&axpy(p, h, &k3));
        let mut out = ShiftedPoint { n: self.n, psi: *p };
        for i in 0..3 {
            out.psi[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        out.recenter();
        out
    }
}

/// Like [`flow_trajectory`], returning shifted points.
pub fn flow_trajectory_shifted(u: &[f64; 3], t: f64, dt: f64, every: usize) -> Vec<(f64, ShiftedPoint)> {
    assert!(dt > 0.0);
    let steps = (t / dt).round() as usize;
    let every = every.max(1);
    let mut p = ShiftedPoint::new(u);
    let mut out = vec![(0.0, p)];
    for s in 1..=steps {
        p = p.rk4_step(dt);
        if s % every == 0 || s == steps {
            out.push((s as f64 * dt, p));
        }
    }
    out
}

/// Samples (t, φ) of the orbit, integrated with a fixed RK4 step in shifted
/// coordinates; every `every`-th step is recorded (and the endpoint).
pub fn flow_trajectory(u: &[f64; 3], t: f64, dt: f64, every: usize) -> Vec<(f64, [f64; 3])> {
    flow_trajectory_shifted(u, t, dt, every).into_iter().map(|(t, p)| (t, p.phi())).collect()
}

/// Endpoint of the flow, reduced mod π. Shifting one φ_k by π reverses Z, so
/// the reduction keeps the point on the same leaf.
pub fn flow(u: &ModuliPoint, t: f64, dt: f64) -> ModuliPoint {
    let traj = flow_trajectory(&u.phi, t, dt, usize::MAX);
    ModuliPoint::from_array(traj.last().unwrap().1)
}

/// δ(u) = ∏ sin φ_k cos(φ_ℓ − φ_m).
pub fn delta(phi: &[f64; 3]) -> f64 {
    CYCLIC.iter().map(|&(k, l, m)| phi[k].sin() * (phi[l] - phi[m]).cos()).product()
}

/// J_{ℓm} = −tan(φ_ℓ−φ_m)·tan(φ_k).
pub fn j_of(phi: &[f64; 3]) -> Result<JTriple, ModuliError> {
    let mut j = [0.0; 3];
    for &(k, l, m) in &CYCLIC {
        if phi[k].cos().abs() < 1e-12 {
            return Err(ModuliError::OnDegenerateLocus(format!("cos(phi_{}) = 0", k + 1)));
        }
        if (phi[l] - phi[m]).cos().abs() < 1e-12 {
            return Err(ModuliError::OnDegenerateLocus(format!("cos(phi_{} - phi_{}) = 0", l + 1, m + 1)));
        }
        // J_{ℓm} sits in slot ℓ: (ℓ,m) = (1,2), (2,3), (3,1)
        j[l] = -(phi[l] - phi[m]).tan() * phi[k].tan();
    }
    Ok(JTriple { j12: j[0], j23: j[1], j31: j[2] })
}

/// The four scalars solving the s-system, normalized so ∏ s^μ = −δ(u).
pub fn s_coeffs(phi: &[f64; 3]) -> Result<[Complex64; 4], ModuliError> {
    let d = delta(phi);
    if d.abs() < 1e-12 {
        return Err(ModuliError::OnDegenerateLocus("delta(u) = 0".into()));
    }
    let sq = |x: f64| Complex64::new(x, 0.0).sqrt();
    let mut s = [Complex64::new(0.0, 0.0); 4];
    s[0] = sq(phi.iter().map(|p| p.sin()).product());
    for k in 0..3 {
        let mut v = phi[k].sin();
        for l in 0..3 {
            if l != k {
                v *= (phi[k] - phi[l]).cos();
            }
        }
        s[k + 1] = sq(v);
    }
    let prod = s[0] * s[1] * s[2] * s[3];
    if (prod + d).norm() > (prod - d).norm() {
        s[0] = -s[0];
    }
    Ok(s)
}

/// Residuals of the three s-equations and of ∏ s^μ + δ(u).
pub fn s_residuals(phi: &[f64; 3], s: &[Complex64; 4]) -> [f64; 4] {
    let mut r = [0.0; 4];
    for &(k, l, m) in &CYCLIC {
        r[k] = (s[0] * s[k + 1] * (phi[l] - phi[m]).cos() + s[l + 1] * s[m + 1] * phi[k].sin()).norm();
    }
    r[3] = (s[0] * s[1] * s[2] * s[3] + delta(phi)).norm();
    r
}

fn x(g: usize) -> NCPoly<ApproxScalar> {
    NCPoly::gen(g)
}

/// The 𝒜_u relations in hermitian generators x⁰..x³, for real angles:
/// cos φ_k [x⁰,x^k] − i sin(φ_ℓ−φ_m)[x^ℓ,x^m]₊ and
/// cos(φ_ℓ−φ_m)[x^ℓ,x^m] + i sin φ_k [x⁰,x^k]₊.
pub fn a_u_relations_numeric(phi: &[f64; 3]) -> Vec<NCPoly<ApproxScalar>> {
    let i = ApproxScalar::i();
    let r = |v: f64| ApproxScalar::new(v, 0.0);
    let mut out = Vec::new();
    for &(k, l, m) in &CYCLIC {
        let (k1, l1, m1) = (k + 1, l + 1, m + 1);
        let d = phi[l] - phi[m];
        out.push(x(0).commutator(&x(k1)).scale(&r(phi[k].cos())).sub(&x(l1).anticommutator(&x(m1)).scale(&i.mul(&r(d.sin())))));
        out.push(x(l1).commutator(&x(m1)).scale(&r(d.cos())).add(&x(0).anticommutator(&x(k1)).scale(&i.mul(&r(phi[k].sin())))));
    }
    out
}

fn normalize_on(p: &NCPoly<ApproxScalar>, w: &[usize]) -> NCPoly<ApproxScalar> {
    let c = p.coeff(&crate::ncalg::Word::from_slice(&w.iter().map(|&g| g as u8).collect::<Vec<_>>()));
    p.scale(&c.inv().expect("normalizing coefficient is nonzero"))
}

fn max_coeff(p: &NCPoly<ApproxScalar>) -> f64 {
    p.terms.values().map(|c| c.0.norm()).fold(0.0, f64::max)
}

/// Substituting x^μ = S_μ/s^μ into the 𝒜_u relations and comparing with the
/// S(J) relations; returns the largest coefficient discrepancy.
pub fn sklyanin_residual(phi: &[f64; 3]) -> Result<f64, ModuliError> {
    let j = j_of(phi)?;
    let s = s_coeffs(phi)?;
    let images: Vec<_> = (0..4).map(|m| x(m).scale(&ApproxScalar(Complex64::new(1.0, 0.0) / s[m]))).collect();
    let jj = [ApproxScalar::new(j.j12, 0.0), ApproxScalar::new(j.j23, 0.0), ApproxScalar::new(j.j31, 0.0)];
    let sk = crate::rewrite::sklyanin_relations(&jj);
    let mut worst: f64 = 0.0;
    for (t, &(k, l, m)) in CYCLIC.iter().enumerate() {
        let rels = a_u_relations_numeric(phi);
        let a = normalize_on(&rels[2 * t].substitute(&images), &[0, k + 1]);
        let b = normalize_on(&rels[2 * t + 1].substitute(&images), &[l + 1, m + 1]);
        worst = worst.max(max_coeff(&a.sub(&normalize_on(&sk[2 * t], &[0, k + 1]))));
        worst = worst.max(max_coeff(&b.sub(&normalize_on(&sk[2 * t + 1], &[l + 1, m + 1]))));
    }
    Ok(worst)
}

/// An element of W acting linearly on (φ₁, φ₂, φ₃) modulo π.
pub type WeylElement = [[i64; 3]; 3];

pub const W_GENERATOR: WeylElement = [[-1, 0, 0], [-1, 0, 1], [-1, 1, 0]];

pub fn weyl_apply(g: &WeylElement, phi: &[f64; 3]) -> [f64; 3] {
    let mut out = [0.0; 3];
    for i in 0..3 {
        out[i] = (0..3).map(|j| g[i][j] as f64 * phi[j]).sum();
    }
    out
}

fn mat_mul(a: &WeylElement, b: &WeylElement) -> WeylElement {
    let mut c = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

const IDENTITY: WeylElement = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];

fn permutation_matrices() -> Vec<WeylElement> {
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    perms
        .iter()
        .map(|p| {
            let mut m = [[0; 3]; 3];
            for i in 0..3 {
                m[i][p[i]] = 1;
            }
            m
        })
        .collect()
}

/// The group generated by w and coordinate permutations, as integer matrices.
pub fn weyl_group() -> Vec<WeylElement> {
    let mut gens = permutation_matrices();
    gens.push(W_GENERATOR);
    let mut group = vec![IDENTITY];
    let mut i = 0;
    while i < group.len() {
        for g in &gens {
            let h = mat_mul(g, &group[i]);
            if !group.contains(&h) {
                group.push(h);
            }
        }
        i += 1;
    }
    group
}

/// K = {id} ∪ {σ w σ⁻¹ : σ ∈ S₃}.
pub fn weyl_k() -> Vec<WeylElement> {
    let mut k = vec![IDENTITY];
    for p in permutation_matrices() {
        let mut pinv = [[0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                pinv[i][j] = p[j][i];
            }
        }
        let c = mat_mul(&mat_mul(&p, &W_GENERATOR), &pinv);
        if !k.contains(&c) {
            k.push(c);
        }
    }
    k
}

pub fn weyl_orbit(u: &ModuliPoint) -> Vec<ModuliPoint> {
    let mut out: Vec<ModuliPoint> = Vec::new();
    for g in weyl_group() {
        let v = ModuliPoint::from_array(weyl_apply(&g, &u.phi));
        if !out.iter().any(|o| o.close_to(&v, 1e-12)) {
            out.push(v);
        }
    }
    out
}

/// Sort descending after reducing mod π: π > φ₁ ≥ φ₂ ≥ φ₃ ≥ 0.
pub fn reduce_to_cell(u: &ModuliPoint) -> ModuliPoint {
    let mut p = ModuliPoint::from_array(u.phi).phi;
    p.sort_by(|a, b| b.partial_cmp(a).unwrap());
    ModuliPoint { phi: p }
}

pub fn lambda_of(phi: &[f64; 3]) -> f64 {
    (2.0 * phi[0]).sin() * (2.0 * (phi[1] - phi[2])).sin() / ((2.0 * phi[1]).sin() * (2.0 * (phi[0] - phi[2])).sin())
}

pub fn j_from_lambda(l: f64) -> f64 {
    256.0 * (l * l - l + 1.0).powi(3) / (l * l * (1.0 - l).powi(2))
}

pub fn j_invariant(phi: &[f64; 3]) -> f64 {
    j_from_lambda(lambda_of(phi))
}

fn eq(a: f64, b: f64, tol: f64) -> bool {
    dist_mod_pi(a, b) <= tol
}

fn on_c_plus(p: &[f64; 3], tol: f64) -> bool {
    eq(p[0], p[1], tol) && eq(p[2], 0.0, tol)
}

fn on_c_minus(p: &[f64; 3], tol: f64) -> bool {
    eq(p[0], FRAC_PI_2 + p[2], tol) && eq(p[1], FRAC_PI_2, tol)
}

fn on_l(p: &[f64; 3], tol: f64) -> bool {
    eq(p[0], FRAC_PI_2, tol) && eq(p[1], p[2], tol)
}

fn on_l_prime(p: &[f64; 3], tol: f64) -> bool {
    eq(p[0], FRAC_PI_2, tol) && eq(p[1], FRAC_PI_2, tol)
}

fn in_d(p: &[f64; 3], tol: f64) -> bool {
    CYCLIC.iter().any(|&(k, l, m)| eq(p[k], 0.0, tol) || eq(p[l] - p[m], FRAC_PI_2, tol))
}

fn on_f2(p: &[f64; 3], tol: f64) -> bool {
    eq(p[0], FRAC_PI_2, tol)
        && !eq(p[1], p[2], tol)
        && !eq(p[1], FRAC_PI_2, tol)
        && !eq(p[2], FRAC_PI_2, tol)
        && !in_d(p, tol)
}

fn on_f1(p: &[f64; 3], tol: f64) -> bool {
    if in_d(p, tol) || (0..3).any(|k| eq(p[k], FRAC_PI_2, tol)) {
        return false;
    }
    // J_{ℓm} = 0 iff φ_ℓ = φ_m here (tan φ_k ≠ 0 off D)
    CYCLIC.iter().any(|&(_, l, m)| eq(p[l], p[m], tol))
}

/// Case label of u, testing the defining conditions on every point of the W-orbit.
pub fn classify(u: &ModuliPoint, tol: f64) -> Result<CaseLabel, ModuliError> {
    let orbit = weyl_orbit(u);
    let any = |f: &dyn Fn(&[f64; 3]) -> bool| orbit.iter().any(|v| f(&v.phi));
    let near = |c: [f64; 3]| orbit.iter().any(|v| v.close_to(&ModuliPoint::from_array(c), tol));
    if near([0.0, 0.0, 0.0]) {
        return Ok(CaseLabel::OOrbit);
    }
    if near([FRAC_PI_2, FRAC_PI_2, FRAC_PI_2]) {
        return Ok(CaseLabel::POrbit);
    }
    if near([FRAC_PI_2, FRAC_PI_2, 0.0]) {
        return Ok(CaseLabel::PPrimeOrbit);
    }
    let tiers: [&[(CaseLabel, fn(&[f64; 3], f64) -> bool)]; 3] = [
        &[(CaseLabel::CPlus, on_c_plus), (CaseLabel::CMinus, on_c_minus)],
        &[(CaseLabel::L, on_l), (CaseLabel::LPrime, on_l_prime)],
        &[(CaseLabel::F2, on_f2)],
    ];
    for tier in tiers {
        let hits: Vec<CaseLabel> = tier.iter().filter(|(_, f)| any(&|p| f(p, tol))).map(|(l, _)| *l).collect();
        match hits.len() {
            0 => {}
            1 => return Ok(hits[0]),
            _ => return Err(ModuliError::AmbiguousWithinTolerance(hits)),
        }
    }
    if !any(&|p| !in_d(p, tol)) {
        return Ok(CaseLabel::DSet);
    }
    if any(&|p| on_f1(p, tol)) {
        return Ok(CaseLabel::F1);
    }
    Ok(CaseLabel::Generic)
}

/// Labels over a k³ grid of the fundamental cell (points with φ₁ ≥ φ₂ ≥ φ₃).
pub fn classify_grid(k: usize, tol: f64) -> Vec<(ModuliPoint, Result<CaseLabel, ModuliError>)> {
    use rayon::prelude::*;
    let h = PI / k as f64;
    let mut pts = Vec::new();
    for a in 0..k {
        for b in 0..=a {
            for c in 0..=b {
                pts.push(ModuliPoint { phi: [a as f64 * h, b as f64 * h, c as f64 * h] });
            }
        }
    }
    pts.into_par_iter().map(|p| (p, classify(&p, tol))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::FRAC_PI_4;
    use rand_chacha::ChaCha8Rng;

    fn generic(rng: &mut ChaCha8Rng) -> [f64; 3] {
        loop {
            let p = [rng.gen_range(0.05..3.1), rng.gen_range(0.05..3.1), rng.gen_range(0.05..3.1)];
            if delta(&p).abs() > 1e-3 && p.iter().all(|x| x.cos().abs() > 1e-2) {
                return p;
            }
        }
    }

    #[test]
    fn z_vanishes_on_critical_set() {
        assert!(vector_field_z(&[FRAC_PI_2; 3]).iter().all(|z| z.abs() < 1e-14));
        for a in [0.1, 0.7, 1.3, 2.9] {
            assert!(vector_field_z(&[a, a, 0.0]).iter().all(|z| z.abs() < 1e-14));
            assert!(vector_field_z(&[FRAC_PI_2 + a, FRAC_PI_2, a]).iter().all(|z| z.abs() < 1e-14));
        }
        let z = vector_field_z(&[PI / 3.0, PI / 4.0, PI / 5.0]);
        assert!(z.iter().map(|v| v.abs()).sum::<f64>() > 0.1);
    }

    #[test]
    fn z_vanishes_on_p_orbit() {
        for v in weyl_orbit(&ModuliPoint::new(FRAC_PI_2, FRAC_PI_2, FRAC_PI_2)) {
            assert!(vector_field_z(&v.phi).iter().all(|z| z.abs() < 1e-14));
        }
    }

    #[test]
    fn flow_conserves_invariants() {
        let u = [PI / 3.0, PI / 4.0, PI / 5.0];
        let (j0, l0) = (j_of(&u).unwrap(), j_invariant(&u));
        for (_, p) in flow_trajectory_shifted(&u, 10.0, 1e-3, 50) {
            let j1 = p.j().unwrap();
            for (a, b) in j0.as_array().iter().zip(j1.as_array()) {
                assert!((a - b).abs() < 1e-8, "{a} {b}");
            }
            assert!((p.j_invariant() - l0).abs() / l0.abs().max(1.0) < 1e-6);
        }
        let c = ModuliPoint::new(0.7, 0.7, 0.0);
        assert!(flow(&c, 3.0, 1e-3).close_to(&c, 1e-12));
    }

    #[test]
    fn shifted_point_agrees_with_plain() {
        let p = [2.1, -0.4, 4.0];
        let s = ShiftedPoint::new(&p);
        assert!(s.psi.iter().all(|x| x.abs() <= FRAC_PI_4 + 1e-15));
        let (a, b) = (s.j().unwrap().as_array(), j_of(&p).unwrap().as_array());
        assert!((0..3).all(|i| (a[i] - b[i]).abs() < 1e-12));
        assert!((0..3).all(|i| (s.z()[i] - vector_field_z(&p)[i]).abs() < 1e-12));
        assert!((s.j_invariant() - j_invariant(&p)).abs() < 1e-9);
    }

    #[test]
    fn j_constraint_and_s_system() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let p = generic(&mut rng);
            assert!(j_of(&p).unwrap().constraint_residual() < 1e-12);
            let s = s_coeffs(&p).unwrap();
            assert!(s_residuals(&p, &s).iter().all(|r| *r < 1e-12));
            assert!(sklyanin_residual(&p).unwrap() < 1e-10);
        }
        assert!(matches!(s_coeffs(&[0.4, 0.4 + FRAC_PI_2, 1.0]), Err(ModuliError::OnDegenerateLocus(_))));
    }

    #[test]
    fn weyl_structure() {
        let w = weyl_group();
        assert_eq!(w.len(), 24);
        assert_eq!(mat_mul(&W_GENERATOR, &W_GENERATOR), IDENTITY);
        let k = weyl_k();
        assert_eq!(k.len(), 4);
        for a in &k {
            for b in &k {
                assert_eq!(mat_mul(a, b), mat_mul(b, a));
            }
        }
        let r = reduce_to_cell(&ModuliPoint::new(PI / 5.0, 4.0 * PI / 5.0, FRAC_PI_2));
        assert!(PI > r.phi[0] && r.phi[0] >= r.phi[1] && r.phi[1] >= r.phi[2] && r.phi[2] >= 0.0);
    }

    #[test]
    fn z_is_weyl_equivariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let p = generic(&mut rng);
            let z = vector_field_z(&p);
            for g in weyl_group() {
                let lhs = weyl_apply(&g, &z);
                let rhs = vector_field_z(&weyl_apply(&g, &p));
                assert!((0..3).all(|i| (lhs[i] - rhs[i]).abs() < 1e-10), "{g:?}");
            }
        }
    }

    #[test]
    fn j_of_lambda_minus_one() {
        assert!((j_from_lambda(-1.0) - 1728.0).abs() < 1e-9);
    }

    #[test]
    fn probe_labels() {
        let cases = [
            ([FRAC_PI_2, FRAC_PI_2, FRAC_PI_2], CaseLabel::POrbit),
            ([FRAC_PI_2, FRAC_PI_2, 0.0], CaseLabel::PPrimeOrbit),
            ([0.0, 0.0, 0.0], CaseLabel::OOrbit),
            ([0.6, 0.6, 0.0], CaseLabel::CPlus),
            ([FRAC_PI_2 + 0.3, FRAC_PI_2, 0.3], CaseLabel::CMinus),
            ([FRAC_PI_2, 0.4, 0.4], CaseLabel::L),
            ([FRAC_PI_2, FRAC_PI_2, 0.7], CaseLabel::LPrime),
            ([FRAC_PI_2, 1.1, 0.3], CaseLabel::F2),
            ([1.1, 1.1, 0.4], CaseLabel::F1),
            ([PI / 3.0, PI / 4.0, PI / 5.0], CaseLabel::Generic),
        ];
        for (p, want) in cases {
            let u = ModuliPoint::from_array(p);
            assert_eq!(classify(&u, DEFAULT_TOL), Ok(want), "{p:?}");
            for g in weyl_group() {
                assert_eq!(classify(&ModuliPoint::from_array(weyl_apply(&g, &p)), DEFAULT_TOL), Ok(want));
            }
        }
    }
}
