//! Algebraic differential forms on θ-planes and θ-spheres as graded
//! phase-commutation systems, with the differential d and the graded involution.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::clifford::{build_rep, CMatrix};
use crate::ncalg::{NCPoly, Word};
use crate::rewrite::{phase_presentation, plane_gens, radius_squared, PhaseGen, Presentation, RewriteError, Theta};
use crate::scalar::{Coeff, CycloScalar};

pub type FormPoly = NCPoly<CycloScalar>;

/// Ω_alg over a θ-plane or θ-sphere. Generators: the degree-0 coordinates
/// (z¹..zⁿ, z̄¹..z̄ⁿ, x) followed by their differentials in the same order.
#[derive(Clone, Debug)]
pub struct FormsAlgebra {
    pub n: usize,
    pub with_x: bool,
    pub theta: Theta,
    pub pres: Presentation,
    /// Form degree of each generator.
    pub odd: Vec<bool>,
    /// d(generator g) = generator dmap[g], for g of degree 0.
    pub dmap: Vec<Option<usize>>,
}

fn form_gens(n: usize, with_x: bool) -> Vec<PhaseGen> {
    let base = plane_gens(n, with_x);
    let k = base.len();
    let mut g = base.clone();
    for b in &base {
        g.push(PhaseGen { name: format!("d{}", b.name), star: b.star + k, weight: b.weight.clone(), odd: true });
    }
    g
}

impl FormsAlgebra {
    fn assemble(n: usize, with_x: bool, theta: &Theta, pres: Presentation) -> Self {
        let k = 2 * n + with_x as usize;
        let odd = (0..2 * k).map(|g| g >= k).collect();
        let dmap = (0..2 * k).map(|g| if g < k { Some(g + k) } else { None }).collect();
        FormsAlgebra { n, with_x, theta: theta.clone(), pres, odd, dmap }
    }

    /// Ω_alg(R^{2n}_θ), or Ω_alg(R^{2n+1}_θ) when `with_x`.
    pub fn plane(n: usize, theta: &Theta, with_x: bool) -> Result<Self, RewriteError> {
        let name = format!("Omega(R{}_theta)", 2 * n + with_x as usize);
        let pres = phase_presentation(&name, &form_gens(n, with_x), theta, Vec::new())?;
        Ok(Self::assemble(n, with_x, theta, pres))
    }

    /// Quotient by the differential ideal of Σ z z̄ (+ x²) − 1.
    pub fn sphere(n: usize, theta: &Theta, with_x: bool) -> Result<Self, RewriteError> {
        let plane = Self::plane(n, theta, with_x)?;
        let r = radius_squared(n, with_x).sub(&NCPoly::one());
        let dr = plane.d_raw(&r);
        let mut rels: Vec<FormPoly> = plane.pres.rules().iter().map(|x| x.as_poly()).collect();
        rels.push(r.clone());
        rels.push(dr.clone());
        let name = format!("Omega(S{}_theta)", 2 * n - 1 + with_x as usize);
        let mut pres = Presentation::from_relations(&name, plane.pres.gens.clone(), rels, 4)?;
        pres.relations = plane.pres.relations.clone();
        pres.relations.push(r);
        pres.relations.push(dr);
        Ok(Self::assemble(n, with_x, theta, pres))
    }

    pub fn generator_count(&self) -> usize {
        self.odd.len()
    }

    pub fn word_degree(&self, w: &Word) -> usize {
        w.letters().iter().filter(|&&g| self.odd[g as usize]).count()
    }

    /// Graded Leibniz extension of d on the free algebra, no reduction.
    pub fn d_raw(&self, p: &FormPoly) -> FormPoly {
        let mut out = NCPoly::zero();
        for (w, c) in &p.terms {
            let l = w.letters();
            let mut odd_before = 0;
            for i in 0..l.len() {
                let g = l[i] as usize;
                if let Some(dg) = self.dmap[g] {
                    let mut nw: Vec<u8> = l.to_vec();
                    nw[i] = dg as u8;
                    let s = if odd_before % 2 == 1 { c.neg() } else { c.clone() };
                    out.add_term(Word::from_slice(&nw), s);
                }
                if self.odd[g] {
                    odd_before += 1;
                }
            }
        }
        out
    }

    pub fn differential_d(&self, p: &FormPoly) -> Result<FormPoly, RewriteError> {
        let p = self.pres.normal_form(p)?;
        self.pres.normal_form(&self.d_raw(&p))
    }

    /// ω ↦ ω̄ with (ωω')‾ = (−1)^{pp'} ω̄' ω̄.
    pub fn bar(&self, p: &FormPoly) -> FormPoly {
        let mut out = NCPoly::zero();
        for (w, c) in &self.pres.gens.star(p).terms {
            let k = self.word_degree(w);
            let s = if (k * k.saturating_sub(1) / 2) % 2 == 1 { c.neg() } else { c.clone() };
            out.add_term(w.clone(), s);
        }
        out
    }

    pub fn bar_reduced(&self, p: &FormPoly) -> Result<FormPoly, RewriteError> {
        self.pres.normal_form(&self.bar(p))
    }

    /// Π_μ dz̄^μ dz^μ.
    pub fn top_form(&self) -> FormPoly {
        let k = 2 * self.n + self.with_x as usize;
        let mut letters = Vec::new();
        for mu in 0..self.n {
            letters.push(k + self.n + mu);
            letters.push(k + mu);
        }
        NCPoly::word(&letters)
    }

    /// The σ-invariant generators z̄^μz^μ, z̄^μdz^μ, z^μdz̄^μ, dz̄^μdz^μ with their parities.
    pub fn invariant_elements(&self) -> Vec<(FormPoly, bool)> {
        let n = self.n;
        let k = 2 * n + self.with_x as usize;
        let mut v = Vec::new();
        for mu in 0..n {
            v.push((NCPoly::word(&[n + mu, mu]), false));
            v.push((NCPoly::word(&[n + mu, k + mu]), true));
            v.push((NCPoly::word(&[mu, k + n + mu]), true));
            v.push((NCPoly::word(&[k + n + mu, k + mu]), false));
        }
        v
    }

    pub fn is_graded_central(&self, p: &FormPoly, p_odd: bool) -> Result<bool, RewriteError> {
        self.pres.is_graded_central(p, p_odd, &self.odd)
    }

    /// d maps every defining relation into the ideal.
    pub fn d_preserves_relations(&self) -> Result<bool, RewriteError> {
        for r in &self.pres.relations {
            if !self.pres.normal_form(&self.d_raw(r))?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Random form: up to `terms` words of length ≤ `max_len` with small Gaussian-integer coefficients.
    pub fn random_form<R: Rng>(&self, rng: &mut R, terms: usize, max_len: usize) -> FormPoly {
        let g = self.generator_count();
        let mut p = NCPoly::zero();
        for _ in 0..terms {
            let len = rng.gen_range(0..=max_len);
            let w: Word = (0..len).map(|_| rng.gen_range(0..g) as u8).collect();
            let c = CycloScalar::int(rng.gen_range(-3..=3)).add(&CycloScalar::i().mul(&CycloScalar::int(rng.gen_range(-3..=3))));
            p.add_term(w, c);
        }
        p
    }
}

// ---------------------------------------------------------------------------
// Numeric self-duality at θ = 0 on S⁴

type M4 = [[Complex64; 4]; 4];

fn to_m4(m: &CMatrix) -> M4 {
    let mut r = [[Complex64::new(0.0, 0.0); 4]; 4];
    for (i, row) in r.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = m.get(i, j).to_complex();
        }
    }
    r
}

fn m4_mul(a: &M4, b: &M4) -> M4 {
    let mut r = [[Complex64::new(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        for k in 0..4 {
            for j in 0..4 {
                r[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    r
}

fn m4_lin(terms: &[(f64, &M4)]) -> M4 {
    let mut r = [[Complex64::new(0.0, 0.0); 4]; 4];
    for (s, m) in terms {
        for i in 0..4 {
            for j in 0..4 {
                r[i][j] += m[i][j] * *s;
            }
        }
    }
    r
}

/// The five matrices G_a with e = ½(1 + Σ G_a y_a), where z^μ = y_{2μ−1} + i y_{2μ}, x = y₅.
pub fn s4_coordinate_gammas() -> [CMatrix; 5] {
    let rep = build_rep(2, &Theta::zero(2));
    let i = CycloScalar::i();
    let re = |m: usize| rep.gamma_star[m].add(&rep.gamma[m]);
    let im = |m: usize| rep.gamma_star[m].sub(&rep.gamma[m]).scale(&i);
    [re(0), im(0), re(1), im(1), rep.chirality.clone()]
}

fn det(m: &[[f64; 5]; 5]) -> f64 {
    let mut a = *m;
    let mut d = 1.0;
    for c in 0..5 {
        let p = (c..5).max_by(|&x, &y| a[x][c].abs().total_cmp(&a[y][c].abs())).unwrap();
        if a[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= a[c][c];
        for r in c + 1..5 {
            let f = a[r][c] / a[c][c];
            for k in c..5 {
                a[r][k] -= f * a[c][k];
            }
        }
    }
    d
}

/// Orientation of R⁵ (hence of S⁴ by the outward normal).
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Orientation {
    /// The one in which G₁G₂G₃G₄G₅ acts as +1 in the representation.
    Clifford,
    /// dy₁∧…∧dy₅ with y = (Re z¹, Im z¹, Re z², Im z², x).
    Coordinate,
}

impl Orientation {
    fn sign(self) -> f64 {
        match self {
            Orientation::Coordinate => 1.0,
            Orientation::Clifford => {
                let g = s4_coordinate_gammas();
                let w = g[0].mul(&g[1]).mul(&g[2]).mul(&g[3]).mul(&g[4]);
                if w.get(0, 0).is_one() {
                    1.0
                } else {
                    -1.0
                }
            }
        }
    }
}

/// Orthonormal frame of T_pS⁴ with sign·det[p, t₁..t₄] > 0.
fn tangent_frame(p: &[f64; 5], sign: f64) -> Option<[[f64; 5]; 4]> {
    let mut basis: Vec<[f64; 5]> = vec![*p];
    for k in 0..5 {
        let mut v = [0.0; 5];
        v[k] = 1.0;
        for b in &basis {
            let d: f64 = (0..5).map(|i| v[i] * b[i]).sum();
            for i in 0..5 {
                v[i] -= d * b[i];
            }
        }
        let nrm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if nrm > 0.3 {
            basis.push(v.map(|x| x / nrm));
        }
        if basis.len() == 5 {
            break;
        }
    }
    if basis.len() < 5 {
        return None;
    }
    let m = [basis[0], basis[1], basis[2], basis[3], basis[4]];
    if sign * det(&m) < 0.0 {
        basis[4] = basis[4].map(|x| -x);
    }
    Some([basis[1], basis[2], basis[3], basis[4]])
}

fn random_sphere_point<R: Rng>(rng: &mut R) -> [f64; 5] {
    loop {
        let v: [f64; 5] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 0.1 && n <= 1.0 {
            return v.map(|x| x / n);
        }
    }
}

fn levi4(p: [usize; 4]) -> f64 {
    let mut s = 1.0;
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] == p[j] {
                return 0.0;
            }
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

/// max over entries of |∗F − target·F| at p, F = e(de)² on the tangent frame; `minus` uses e₋.
pub fn selfduality_residual_at(p: &[f64; 5], minus: bool, target: f64, orientation: Orientation) -> Option<f64> {
    let g: Vec<M4> = s4_coordinate_gammas().iter().map(to_m4).collect();
    let frame = tangent_frame(p, orientation.sign())?;
    let s = if minus { -1.0 } else { 1.0 };
    let id = to_m4(&CMatrix::identity(4));
    let mut terms: Vec<(f64, &M4)> = vec![(0.5, &id)];
    for a in 0..5 {
        terms.push((0.5 * s * p[a], &g[a]));
    }
    let e = m4_lin(&terms);
    // A_i = ½ s Σ_a G_a t_{i,a} is de(t_i)
    let a_i: Vec<M4> = frame
        .iter()
        .map(|t| m4_lin(&(0..5).map(|a| (0.5 * s * t[a], &g[a])).collect::<Vec<_>>()))
        .collect();
    let mut f = vec![vec![[[Complex64::new(0.0, 0.0); 4]; 4]; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let c = m4_lin(&[(1.0, &m4_mul(&a_i[i], &a_i[j])), (-1.0, &m4_mul(&a_i[j], &a_i[i]))]);
            f[i][j] = m4_mul(&e, &c);
        }
    }
    let mut worst: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            let mut star = [[Complex64::new(0.0, 0.0); 4]; 4];
            for k in 0..4 {
                for l in 0..4 {
                    let eps = levi4([i, j, k, l]);
                    if eps != 0.0 {
                        star = m4_lin(&[(1.0, &star), (0.5 * eps, &f[k][l])]);
                    }
                }
            }
            for r in 0..4 {
                for c in 0..4 {
                    worst = worst.max((star[r][c] - f[i][j][r][c] * target).norm());
                }
            }
        }
    }
    Some(worst)
}

/// Max residual of ∗e(de)² − i²e(de)² (or of ∗e₋(de₋)² + i²e₋(de₋)² when `minus`)
/// over `samples` random points of the round S⁴.
pub fn selfduality_numeric_s4(samples: usize, seed: u64, minus: bool, orientation: Orientation) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts = Vec::with_capacity(samples);
    while pts.len() < samples {
        let p = random_sphere_point(&mut rng);
        if tangent_frame(&p, 1.0).is_some() {
            pts.push(p);
        }
    }
    let target = if minus { 1.0 } else { -1.0 };
    pts.par_iter()
        .map(|p| selfduality_residual_at(p, minus, target, orientation).unwrap_or(f64::INFINITY))
        .reduce(|| 0.0, f64::max)
}

/// Per-point residuals, for CSV output.
pub fn selfduality_samples(samples: usize, seed: u64, minus: bool, orientation: Orientation) -> Vec<([f64; 5], f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let target = if minus { 1.0 } else { -1.0 };
    let mut out = Vec::new();
    while out.len() < samples {
        let p = random_sphere_point(&mut rng);
        if let Some(r) = selfduality_residual_at(&p, minus, target, orientation) {
            out.push((p, r));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Angle;
    use proptest::prelude::*;

    fn th() -> Theta {
        Theta::uniform(2, Angle::new(1, 3))
    }

    #[test]
    fn leibniz_on_product() {
        let f = FormsAlgebra::plane(2, &th(), false).unwrap();
        // d(z¹z²) = dz¹ z² + z¹ dz²
        let got = f.differential_d(&NCPoly::word(&[0, 1])).unwrap();
        let want = f.pres.normal_form(&NCPoly::word(&[4, 1]).add(&NCPoly::word(&[0, 5]))).unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn d_squared_on_generators() {
        for with_x in [false, true] {
            let f = FormsAlgebra::plane(2, &th(), with_x).unwrap();
            for g in 0..f.generator_count() {
                let dd = f.differential_d(&f.differential_d(&NCPoly::gen(g)).unwrap()).unwrap();
                assert!(dd.is_zero());
            }
        }
    }

    #[test]
    fn d_well_defined() {
        assert!(FormsAlgebra::plane(2, &th(), true).unwrap().d_preserves_relations().unwrap());
        let s = FormsAlgebra::sphere(2, &th(), true).unwrap();
        assert!(s.d_preserves_relations().unwrap());
        let r = radius_squared(2, true).sub(&NCPoly::one());
        assert!(s.differential_d(&r).unwrap().is_zero());
    }

    #[test]
    fn sphere_forms_confluent() {
        let s = FormsAlgebra::sphere(2, &th(), false).unwrap();
        assert!(s.pres.check_confluence(4).unwrap().is_empty());
    }

    #[test]
    fn invariant_elements_graded_central() {
        let f = FormsAlgebra::plane(2, &th(), false).unwrap();
        for (p, odd) in f.invariant_elements() {
            assert!(f.is_graded_central(&p, odd).unwrap());
        }
        // z¹ is not
        assert!(!f.is_graded_central(&NCPoly::gen(0), false).unwrap());
        let top = f.top_form();
        assert!(f.is_graded_central(&top, false).unwrap());
        assert!(f.differential_d(&top).unwrap().is_zero());
        assert!(!f.pres.normal_form(&top).unwrap().is_zero());
    }

    #[test]
    fn selfduality_at_theta_zero() {
        assert!(selfduality_numeric_s4(20, 3, false, Orientation::Clifford) < 1e-10);
        assert!(selfduality_numeric_s4(20, 3, true, Orientation::Clifford) < 1e-10);
        let p = [0.6, 0.0, 0.0, 0.0, 0.8];
        assert!(selfduality_residual_at(&p, false, 1.0, Orientation::Clifford).unwrap() > 1e-3);
        // the coordinate orientation is the opposite one here
        assert!(selfduality_residual_at(&p, false, 1.0, Orientation::Coordinate).unwrap() < 1e-12);
    }

    #[test]
    fn coordinate_volume_element_is_minus_one() {
        let g = s4_coordinate_gammas();
        let c = g[0].mul(&g[1]).mul(&g[2]).mul(&g[3]).mul(&g[4]);
        assert!(c.sub(&CMatrix::identity(4).scale(&CycloScalar::int(-1))).is_zero());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn d_squared_and_conjugation(seed in 0u64..1000) {
            let f = FormsAlgebra::plane(2, &th(), true).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let w = f.random_form(&mut rng, 4, 3);
            let dw = f.differential_d(&w).unwrap();
            prop_assert!(f.differential_d(&dw).unwrap().is_zero());
            let lhs = f.differential_d(&f.bar(&w)).unwrap();
            let rhs = f.bar_reduced(&dw).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
