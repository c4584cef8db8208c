//! Batch driver: verification suites, JSON reports and flow CSVs.
//!
//! Report schema (one JSON object, fields in this order):
//!
//! ```text
//! {
//!   "task":   "verify:<suite>" | "flow" | "classify" | "grassmann",
//!   "inputs": { "<name>": "<value>", ... },          // sorted by name
//!   "checks": [ { "name", "expected", "got", "pass" }, ... ],
//!   "passed": bool,
//!   "timing_ms": { "<suite>": n, ... }               // only with --timing
//! }
//! ```
//!
//! Without `timing_ms` a report is a pure function of the config and seed.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::clifford::{
    clifford_square_identity, euclidean_gammas, lemma3_check, lemma5_check, projection_e_theta, projection_e_u,
    rep_relations_via_presentation, symbol_rep_check, unitary_u_theta, unitary_u_u, Twist,
};
use crate::diffforms::{selfduality_numeric_s4, FormsAlgebra, Orientation};
use crate::grassmann;
use crate::homology::{boundary_b, ch_even, ch_odd, ch_odd_unchecked, chain_ratio, closed_form_ch32, operator_b_on_cyclic};
use crate::moduli::{self, CaseLabel, ModuliPoint};
use crate::ncalg::{GeneratorSet, NCPoly};
use crate::qgroup::Bialgebra;
use crate::rewrite::{
    a_u_central_elements, make_a_u_deg, make_r2n_theta, make_s2n_theta, make_s2nm1_theta, make_s4_u, make_sklyanin,
    make_torus, sklyanin_j_exact, Presentation, Theta,
};
use crate::scalar::{Angle, Coeff, CycloScalar};
use crate::splitting::{injectivity_ranks, relations_vanish, PlaneSplitting, QGroupSplitting};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Relations,
    Confluence,
    Chern,
    Clifford,
    DetTheta,
    Splitting,
    ModuliFlow,
    Classify,
    Grassmann,
    Selfduality,
    All,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Relations,
        Suite::Confluence,
        Suite::Chern,
        Suite::Clifford,
        Suite::DetTheta,
        Suite::Splitting,
        Suite::ModuliFlow,
        Suite::Classify,
        Suite::Grassmann,
        Suite::Selfduality,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Suite::Relations => "relations",
            Suite::Confluence => "confluence",
            Suite::Chern => "chern",
            Suite::Clifford => "clifford",
            Suite::DetTheta => "dettheta",
            Suite::Splitting => "splitting",
            Suite::ModuliFlow => "moduli-flow",
            Suite::Classify => "classify",
            Suite::Grassmann => "grassmann",
            Suite::Selfduality => "selfduality",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .iter()
            .chain(std::iter::once(&Suite::All))
            .find(|x| x.as_str() == s)
            .copied()
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub suite: Suite,
    /// Exact angles (multiples of π).
    pub u: [Angle; 3],
    pub seed: u64,
    /// Completion degree for 𝒜_u.
    pub degree: usize,
    /// Numeric tolerance for moduli and self-duality checks.
    pub tol: f64,
    pub timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            suite: Suite::All,
            u: [Angle::new(1, 3), Angle::new(1, 4), Angle::new(1, 6)],
            seed: 0,
            degree: 4,
            tol: 1e-8,
            timing: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, expected: impl Display, got: impl Display, pass: bool) -> Self {
        Check { name: name.into(), expected: expected.to_string(), got: got.to_string(), pass }
    }

    /// Pass iff `got` equals `expected`.
    pub fn eq<T: Display + PartialEq>(name: impl Into<String>, expected: T, got: T) -> Self {
        let pass = expected == got;
        Check::new(name, expected, got, pass)
    }

    fn boolean<E: Display>(name: impl Into<String>, expected: bool, got: Result<bool, E>) -> Self {
        match got {
            Ok(b) => Check::eq(name, expected, b),
            Err(e) => Check::new(name, expected, format!("error: {e}"), false),
        }
    }

    fn at_most(name: impl Into<String>, bound: f64, got: f64) -> Self {
        Check::new(name, format!("<= {bound:e}"), format!("{got:e}"), got <= bound)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub task: String,
    pub inputs: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<BTreeMap<String, u128>>,
}

impl Report {
    pub fn new(task: impl Into<String>, inputs: BTreeMap<String, String>, checks: Vec<Check>) -> Self {
        let passed = checks.iter().all(|c| c.pass);
        Report { task: task.into(), inputs, checks, passed, timing_ms: None }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Parses `p/q,p/q,p/q` into three exact angles.
pub fn parse_angles(s: &str) -> Result<[Angle; 3], String> {
    let v: Vec<Angle> = s.split(',').map(Angle::from_str).collect::<Result<_, _>>()?;
    v.try_into().map_err(|v: Vec<Angle>| format!("expected 3 angles, got {}", v.len()))
}

/// Parses `a,b,c` as radians, or as exact `p/q` angles converted to radians.
pub fn parse_radians(s: &str) -> Result<[f64; 3], String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| {
            let x = x.trim();
            if x.contains('/') {
                Angle::from_str(x).map(|a| a.radians())
            } else {
                x.parse::<f64>().map_err(|_| format!("bad angle {x:?}"))
            }
        })
        .collect::<Result<_, _>>()?;
    v.try_into().map_err(|v: Vec<f64>| format!("expected 3 angles, got {}", v.len()))
}

fn fmt_u(u: &[Angle; 3]) -> String {
    format!("{},{},{}", u[0], u[1], u[2])
}

/// θ with entries p/q, q ∈ {3, 4, 6}, 0 < p < q, drawn from `rng`.
pub fn random_theta<R: Rng>(rng: &mut R, n: usize) -> Theta {
    let upper: Vec<Angle> = (0..n * (n - 1) / 2)
        .map(|_| {
            let q = [3, 4, 6][rng.gen_range(0..3)];
            Angle::new(rng.gen_range(1..q), q)
        })
        .collect();
    Theta::from_upper(n, &upper)
}

fn free4() -> Presentation {
    Presentation::from_rules("free", GeneratorSet::hermitian(&["x0", "x1", "x2", "x3"]), vec![], vec![])
}

pub fn run(cfg: &RunConfig) -> Report {
    let suites: Vec<Suite> = if cfg.suite == Suite::All { Suite::ALL.to_vec() } else { vec![cfg.suite] };
    let results: Vec<(Vec<Check>, u128)> = suites
        .par_iter()
        .map(|s| {
            let t = Instant::now();
            let checks = run_suite(*s, cfg);
            (checks, t.elapsed().as_millis())
        })
        .collect();
    let mut inputs = BTreeMap::new();
    inputs.insert("suite".into(), cfg.suite.as_str().into());
    inputs.insert("u".into(), fmt_u(&cfg.u));
    inputs.insert("seed".into(), cfg.seed.to_string());
    inputs.insert("degree".into(), cfg.degree.to_string());
    inputs.insert("tol".into(), format!("{:e}", cfg.tol));
    let mut checks = Vec::new();
    let mut timing = BTreeMap::new();
    for (s, (c, ms)) in suites.iter().zip(results) {
        checks.extend(c.into_iter().map(|mut c| {
            c.name = format!("{}/{}", s.as_str(), c.name);
            c
        }));
        timing.insert(s.as_str().to_string(), ms);
    }
    let mut r = Report::new(format!("verify:{}", cfg.suite.as_str()), inputs, checks);
    if cfg.timing {
        r.timing_ms = Some(timing);
    }
    r
}

pub fn run_suite(s: Suite, cfg: &RunConfig) -> Vec<Check> {
    match s {
        Suite::Relations => suite_relations(cfg),
        Suite::Confluence => suite_confluence(cfg),
        Suite::Chern => suite_chern(cfg),
        Suite::Clifford => suite_clifford(cfg),
        Suite::DetTheta => suite_det(cfg),
        Suite::Splitting => suite_splitting(cfg),
        Suite::ModuliFlow => suite_moduli_flow(cfg),
        Suite::Classify => suite_classify(cfg),
        Suite::Grassmann => suite_grassmann(cfg),
        Suite::Selfduality => suite_selfduality(cfg),
        Suite::All => Suite::ALL.iter().flat_map(|s| run_suite(*s, cfg)).collect(),
    }
}

fn reduces(name: &str, p: Result<Presentation, impl Display>) -> Check {
    Check::boolean(format!("{name} relations reduce to 0"), true, p.map_err(|e| e.to_string()).and_then(|p| {
        p.relations_reduce_to_zero().map_err(|e| e.to_string())
    }))
}

fn confluent(name: &str, p: Result<Presentation, impl Display>, degree: usize) -> Check {
    let got = p.map_err(|e| e.to_string()).and_then(|p| p.check_confluence(degree).map_err(|e| e.to_string()));
    match got {
        Ok(o) => Check::new(format!("{name} overlaps through degree {degree}"), 0, o.len(), o.is_empty()),
        Err(e) => Check::new(format!("{name} overlaps through degree {degree}"), 0, format!("error: {e}"), false),
    }
}

fn binom3(d: usize) -> usize {
    (d + 1) * (d + 2) * (d + 3) / 6
}

fn suite_relations(cfg: &RunConfig) -> Vec<Check> {
    let u = &cfg.u;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let th = random_theta(&mut rng, 2);
    let th3 = random_theta(&mut rng, 3);
    let mut out = vec![
        reduces("A_u", make_a_u_deg(u, cfg.degree)),
        reduces("S4_u", make_s4_u(u, cfg.degree)),
        reduces("R4_theta", make_r2n_theta(2, &th)),
        reduces("S4_theta", make_s2n_theta(2, &th)),
        reduces("S3_theta", make_s2nm1_theta(2, &th)),
        reduces("R6_theta", make_r2n_theta(3, &th3)),
        reduces("T2_theta", make_torus(2, &th)),
        reduces("Sklyanin S(J(u))", sklyanin_j_exact(u).and_then(|j| make_sklyanin(&j, 3))),
        reduces("M_theta(4)", Bialgebra::new(2, &th).map(|q| q.m)),
    ];
    match make_a_u_deg(u, cfg.degree) {
        Ok(p) => {
            let [c1, c2] = a_u_central_elements(u);
            out.push(Check::boolean("A_u sum of squares is central", true, p.is_central(&c1)));
            out.push(Check::boolean("A_u weighted sum of squares is central", true, p.is_central(&c2)));
            out.push(Check::boolean("A_u relations are star-stable", true, p.star_stable()));
        }
        Err(e) => out.push(Check::new("A_u central elements", true, format!("error: {e}"), false)),
    }
    // differential calculus on R5_theta
    match FormsAlgebra::plane(2, &th, true) {
        Ok(f) => {
            let mut d2 = true;
            let mut conj = true;
            let mut frng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed);
            for g in 0..f.generator_count() {
                let dd = f.differential_d(&NCPoly::gen(g)).and_then(|x| f.differential_d(&x));
                d2 &= dd.map(|x| x.is_zero()).unwrap_or(false);
            }
            for _ in 0..20 {
                let w = f.random_form(&mut frng, 4, 3);
                let ok = (|| {
                    let dw = f.differential_d(&w)?;
                    let zero = f.differential_d(&dw)?.is_zero();
                    let bar = f.differential_d(&f.bar(&w))? == f.bar_reduced(&dw)?;
                    Ok::<_, crate::rewrite::RewriteError>((zero, bar))
                })();
                let (a, b) = ok.unwrap_or((false, false));
                d2 &= a;
                conj &= b;
            }
            out.push(Check::eq("forms: d^2 = 0 on generators and random forms", true, d2));
            out.push(Check::eq("forms: d commutes with conjugation", true, conj));
            out.push(Check::boolean("forms: d preserves relations", true, f.d_preserves_relations()));
            let top = f.top_form();
            out.push(Check::boolean("forms: top form is graded central", true, f.is_graded_central(&top, false)));
        }
        Err(e) => out.push(Check::new("forms algebra", true, format!("error: {e}"), false)),
    }
    out
}

fn suite_confluence(cfg: &RunConfig) -> Vec<Check> {
    let u = &cfg.u;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let th = random_theta(&mut rng, 2);
    let mut out = vec![
        confluent("A_u", make_a_u_deg(u, cfg.degree), 3),
        confluent("R4_theta", make_r2n_theta(2, &th), 3),
        confluent("S4_theta", make_s2n_theta(2, &th), 4),
        confluent("S3_theta", make_s2nm1_theta(2, &th), 4),
        confluent("T2_theta", make_torus(2, &th), 3),
        confluent("Sklyanin S(J(u))", sklyanin_j_exact(u).and_then(|j| make_sklyanin(&j, 3)), 3),
        confluent("M_theta(4)", Bialgebra::new(2, &th).map(|q| q.m), 3),
    ];
    let d_max = cfg.degree.max(2);
    match make_a_u_deg(u, d_max) {
        Ok(p) => {
            for d in 0..=d_max {
                out.push(Check::eq(format!("A_u graded dimension d={d}"), binom3(d), p.graded_dimension(d)));
            }
        }
        Err(e) => out.push(Check::new("A_u graded dimensions", "C(d+3,3)", format!("error: {e}"), false)),
    }
    match make_r2n_theta(2, &th) {
        Ok(p) => {
            for d in 0..=d_max {
                out.push(Check::eq(format!("R4_theta graded dimension d={d}"), binom3(d), p.graded_dimension(d)));
            }
        }
        Err(e) => out.push(Check::new("R4_theta graded dimensions", "C(d+3,3)", format!("error: {e}"), false)),
    }
    out
}

fn suite_chern(cfg: &RunConfig) -> Vec<Check> {
    let u = &cfg.u;
    let mut out = Vec::new();
    let uu = unitary_u_u(u);
    match make_a_u_deg(u, 3) {
        Ok(p) => {
            let c12 = ch_odd(&uu, 0, &p);
            out.push(Check::boolean("ch_1/2(U_u) = 0", true, c12.map(|c| c.is_zero())));
            match ch_odd(&uu, 1, &p) {
                Ok(c) => {
                    let closed = closed_form_ch32(u);
                    let ratio = chain_ratio(&c, &closed);
                    let got = ratio.as_ref().map(|r| r.to_string()).unwrap_or_else(|| "not proportional".into());
                    let pass = ratio.map(|r| r == CycloScalar::int(-4)).unwrap_or(false);
                    out.push(Check::new("ch_3/2(U_u) / closed-form 3-cycle", "-4", got, pass));
                    out.push(Check::boolean("b(ch_3/2(U_u)) = 0", true, boundary_b(&c, &p).map(|x| x.is_zero())));
                    let bb = operator_b_on_cyclic(&c)
                        .map_err(|e| e.to_string())
                        .and_then(|x| boundary_b(&x, &p).map_err(|e| e.to_string()));
                    out.push(Check::boolean("b(B ch_3/2(U_u)) = 0", true, bb.map(|x| x.is_zero())));
                }
                Err(e) => out.push(Check::new("ch_3/2(U_u)", "chain", format!("error: {e}"), false)),
            }
        }
        Err(e) => out.push(Check::new("A_u presentation", "built", format!("error: {e}"), false)),
    }
    let free = free4();
    for (label, v) in [("pi/2,pi/2,pi/2", [Angle::new(1, 2); 3]), ("pi/2,0,0", [Angle::new(1, 2), Angle::zero(), Angle::zero()])] {
        let c = ch_odd_unchecked(&unitary_u_u(&v), 1, &free);
        out.push(Check::boolean(format!("ch_3/2(U_u) = 0 at {label}"), true, c.map(|c| c.is_zero())));
    }
    out
}

fn suite_clifford(cfg: &RunConfig) -> Vec<Check> {
    let u = &cfg.u;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let th = random_theta(&mut rng, 2);
    let mut out = Vec::new();
    match make_a_u_deg(u, 3) {
        Ok(p) => {
            out.push(Check::boolean("twisted Clifford square identity", true, lemma3_check(u, &p)));
            let (g, _) = euclidean_gammas();
            out.push(Check::boolean("untwisted Clifford square identity (control)", false, clifford_square_identity(&g, &p)));
        }
        Err(e) => out.push(Check::new("A_u presentation", "built", format!("error: {e}"), false)),
    }
    match make_s4_u(u, 4) {
        Ok(p) => {
            let e = projection_e_u(u);
            out.push(Check::boolean("ch_0(e_u) = 0", true, ch_even(&e, 0, &p).map(|c| c.is_zero())));
            out.push(Check::boolean("ch_1(e_u) = 0", true, ch_even(&e, 1, &p).map(|c| c.is_zero())));
        }
        Err(e) => out.push(Check::new("S4_u presentation", "built", format!("error: {e}"), false)),
    }
    match projection_e_theta(2, &th, false) {
        Ok((p, e)) => {
            for k in 0..3 {
                let c = ch_even(&e, k, &p).map(|c| c.is_zero());
                out.push(Check::boolean(format!("ch_{k}(e_theta) = 0, n=2"), k < 2, c));
            }
        }
        Err(e) => out.push(Check::new("e_theta", "projection", format!("error: {e}"), false)),
    }
    match unitary_u_theta(2, &th) {
        Ok(d) => {
            out.push(Check::boolean("U_theta unitary up to center, n=2", true, ch_odd(&d.u, 0, &d.pres).map(|_| true)));
            let direct = d.ch_direct(1).map_err(|e| e.to_string());
            let via = d.ch_gamma_trace(1).map_err(|e| e.to_string());
            out.push(Check::boolean("ch_1/2(U_theta) = 0, n=2", true, direct.as_ref().map(|c| c.is_zero()).map_err(|e| e.clone())));
            let same = direct.and_then(|a| via.map(|b| a == b));
            out.push(Check::boolean("ch_1/2(U_theta) equals tr(gamma Gamma^2)", true, same));
        }
        Err(e) => out.push(Check::new("U_theta", "unitary", format!("error: {e}"), false)),
    }
    out.push(Check::boolean("gamma-field relations on the sphere, n=2", true, lemma5_check(2, &th)));
    out.push(Check::boolean("torus-symbol Clifford family relations", true, symbol_rep_check(2, &th)));
    out.push(Check::boolean(
        "standard family obeys swapped relations (control)",
        false,
        rep_relations_via_presentation(2, &th, Twist::Swapped),
    ));
    out
}

fn suite_det(cfg: &RunConfig) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let th = random_theta(&mut rng, 2);
    let q = match Bialgebra::new(2, &th) {
        Ok(q) => q,
        Err(e) => return vec![Check::new("M_theta(4)", "built", format!("error: {e}"), false)],
    };
    let mut out = Vec::new();
    let mut coassoc = true;
    let mut counit = true;
    for g in 0..2 * q.gen_count() {
        let p = NCPoly::gen(g);
        coassoc &= q.coassociativity_defect(&p).map(|c| c.is_zero()).unwrap_or(false);
        counit &= q.counit_defect(&p).map(|(l, r)| l.is_zero() && r.is_zero()).unwrap_or(false);
    }
    out.push(Check::eq("coproduct coassociative on generators", true, coassoc));
    out.push(Check::eq("counit axiom on generators", true, counit));
    out.push(Check::boolean("coproduct respects relations", true, q.coproduct_respects_relations()));
    let leib = (0..q.gen_count()).all(|g| q.co_leibniz_defect(&NCPoly::gen(g)).map(|c| c.is_zero()).unwrap_or(false));
    out.push(Check::eq("differential is a coderivation on generators", true, leib));
    match q.det_theta() {
        Ok(det) => {
            out.push(Check::boolean("det_theta central", true, q.m.is_central(&det)));
            out.push(Check::boolean("det_theta hermitian", true, q.m.normal_form(&q.m.gens.star(&det)).map(|s| s == det)));
            out.push(Check::eq("counit(det_theta)", CycloScalar::one().to_string(), q.counit(&det).to_string()));
            let grouplike = q
                .coproduct(&det)
                .and_then(|dd| q.square().reduce(&crate::ncalg::TensorChain::tensor(&[&det, &det])).map(|w| dd == w));
            out.push(Check::boolean("det_theta grouplike", true, grouplike));
        }
        Err(e) => out.push(Check::new("det_theta", "defined", format!("error: {e}"), false)),
    }
    let classical = Bialgebra::new(2, &Theta::zero(2)).map_err(|e| e.to_string()).and_then(|q0| {
        let det0 = q0.det_theta().map_err(|e| e.to_string())?;
        Ok(det0.len())
    });
    match classical {
        Ok(n) => out.push(Check::eq("det at theta = 0 has 24 terms", 24, n)),
        Err(e) => out.push(Check::new("det at theta = 0", 24, format!("error: {e}"), false)),
    }
    out.push(Check::boolean("det_theta^2 = 1 in the orthogonal quotient", true, q.det_squared_is_one(6)));
    out
}

fn suite_splitting(cfg: &RunConfig) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let th = random_theta(&mut rng, 2);
    let mut out = Vec::new();
    let plane = PlaneSplitting::new(2, &th, false);
    match make_r2n_theta(2, &th) {
        Ok(p) => {
            out.push(Check::eq("st kills R4_theta relations", true, relations_vanish(&p, |x| plane.st(x))));
            let full = injectivity_ranks(&p, 4, |x| plane.st(x)).iter().all(|(_, w, r)| w == r);
            out.push(Check::eq("st injective on R4_theta through degree 4", true, full));
        }
        Err(e) => out.push(Check::new("R4_theta", "built", format!("error: {e}"), false)),
    }
    let sphere = PlaneSplitting::new(2, &th, true);
    match make_s2n_theta(2, &th) {
        Ok(p) => {
            let ok = p.relations.iter().all(|x| sphere.st(x) == sphere.classical(x) || sphere.st(x).is_zero());
            out.push(Check::eq("st maps S4_theta relations to classical ones", true, ok));
        }
        Err(e) => out.push(Check::new("S4_theta", "built", format!("error: {e}"), false)),
    }
    match FormsAlgebra::plane(2, &th, false) {
        Ok(f) => {
            out.push(Check::eq("st kills form relations", true, relations_vanish(&f.pres, |x| plane.st(x))));
            let mut frng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xd);
            let ok = (0..10).all(|_| plane.d_defect(&f, &f.random_form(&mut frng, 4, 3)).is_zero());
            out.push(Check::eq("st intertwines d", true, ok));
        }
        Err(e) => out.push(Check::new("forms", "built", format!("error: {e}"), false)),
    }
    match Bialgebra::new(2, &th) {
        Ok(q) => {
            let s = QGroupSplitting::new(&q);
            out.push(Check::eq("st kills quantum-group relations", true, relations_vanish(&q.omega, |x| s.st(x))));
            let classical = Bialgebra::new(2, &Theta::zero(2)).ok().and_then(|q0| q0.det_theta().ok());
            match (q.det_theta(), classical) {
                (Ok(det), Some(det0)) => {
                    let sd = s.st(&det);
                    out.push(Check::eq("st(det_theta) = det (x) 1", true, sd.torus_trivial() && sd == s.classical(&det0)));
                }
                _ => out.push(Check::new("st(det_theta)", "classical", "error", false)),
            }
        }
        Err(e) => out.push(Check::new("M_theta(4)", "built", format!("error: {e}"), false)),
    }
    out
}

fn suite_moduli_flow(cfg: &RunConfig) -> Vec<Check> {
    use std::f64::consts::{FRAC_PI_2, PI};
    let mut out = Vec::new();
    let zmax = |p: [f64; 3]| moduli::vector_field_z(&p).iter().fold(0.0f64, |m, z| m.max(z.abs()));
    let mut zc = 0.0f64;
    for a in [0.1, 0.7, 1.3, 2.9] {
        zc = zc.max(zmax([a, a, 0.0])).max(zmax([FRAC_PI_2 + a, FRAC_PI_2, a]));
    }
    out.push(Check::at_most("Z on C+ and C-", 1e-14, zc));
    let zp = moduli::weyl_orbit(&ModuliPoint::new(FRAC_PI_2, FRAC_PI_2, FRAC_PI_2))
        .iter()
        .fold(0.0f64, |m, v| m.max(zmax(v.phi)));
    out.push(Check::at_most("Z on the W-orbit of P", 1e-14, zp));
    let u = cfg.u.map(|a| a.radians());
    match moduli::j_of(&u) {
        Ok(j0) => {
            let l0 = moduli::j_invariant(&u);
            let (mut dj, mut dl) = (0.0f64, 0.0f64);
            for (_, p) in moduli::flow_trajectory_shifted(&u, 10.0, moduli::DEFAULT_DT, 100) {
                if let Ok(j1) = p.j() {
                    dj = j0.as_array().iter().zip(j1.as_array()).fold(dj, |m, (a, b)| m.max((a - b).abs()));
                }
                dl = dl.max((p.j_invariant() - l0).abs() / l0.abs().max(1.0));
            }
            out.push(Check::at_most("J drift along flow, t=10", 1e-8, dj));
            out.push(Check::at_most("j drift along flow, t=10 (relative)", 1e-6, dl));
            out.push(Check::at_most("J constraint residual", 1e-12, j0.constraint_residual()));
        }
        Err(e) => out.push(Check::new("J at u", "defined", format!("error: {e}"), false)),
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut worst = 0.0f64;
    let mut n = 0;
    while n < 20 {
        let p = [rng.gen_range(0.05..PI - 0.05), rng.gen_range(0.05..PI - 0.05), rng.gen_range(0.05..PI - 0.05)];
        if moduli::delta(&p).abs() < 1e-3 || p.iter().any(|x| x.cos().abs() < 1e-2) {
            continue;
        }
        match moduli::sklyanin_residual(&p) {
            Ok(r) => worst = worst.max(r),
            Err(_) => continue,
        }
        n += 1;
    }
    out.push(Check::at_most("Sklyanin correspondence residual, 20 points", 1e-10, worst));
    out
}

/// One probe point per case label.
pub fn probe_points() -> Vec<([f64; 3], CaseLabel)> {
    use std::f64::consts::{FRAC_PI_2, PI};
    vec![
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
    ]
}

fn suite_classify(_cfg: &RunConfig) -> Vec<Check> {
    probe_points()
        .into_iter()
        .map(|(p, want)| {
            let got = moduli::classify(&ModuliPoint::from_array(p), moduli::DEFAULT_TOL);
            let name = format!("classify({:.4},{:.4},{:.4})", p[0], p[1], p[2]);
            match got {
                Ok(l) => Check::eq(name, want.as_str(), l.as_str()),
                Err(e) => Check::new(name, want.as_str(), format!("error: {e}"), false),
            }
        })
        .collect()
}

fn suite_grassmann(cfg: &RunConfig) -> Vec<Check> {
    let r = grassmann::report();
    let i32 = CycloScalar::i().mul(&CycloScalar::from_ratio(1, 32)).to_string();
    let mut out = vec![
        Check::eq("coefficient of U^3 s2 U s2 in mu", i32.clone(), r.coeff_sigma2.clone()),
        Check::eq("coefficient of U^3 s1 U s1 in mu", i32, r.coeff_sigma1.clone()),
        Check::new("[mu, mu*] in the free product", "nonzero", format!("{} terms", r.commutator_support), r.commutator_support > 0),
        Check::new("witness word coefficient", "nonzero", r.witness_coeff.clone(), r.witness_coeff != "0"),
        Check::eq("free *-algebra [m, m*] = 0 (control)", false, grassmann::mu_vanishes_in_free(&cfg.u)),
    ];
    out.push(Check::boolean("[m, m*] = 0 in A_u", true, grassmann::mu_vanishes_in_au(&cfg.u)));
    out
}

fn suite_selfduality(cfg: &RunConfig) -> Vec<Check> {
    let tol = cfg.tol;
    vec![
        Check::at_most("e self-dual on S4, 100 points", tol, selfduality_numeric_s4(100, cfg.seed, false, Orientation::Clifford)),
        Check::at_most("e_minus anti-self-dual on S4, 100 points", tol, selfduality_numeric_s4(100, cfg.seed, true, Orientation::Clifford)),
    ]
}

/// Rows (t, φ₁, φ₂, φ₃, J₁₂, J₂₃, J₃₁, j) sampled every `every` steps.
pub fn flow_csv(u: &[f64; 3], t: f64, dt: f64, every: usize) -> String {
    let mut s = String::from("t,phi1,phi2,phi3,J12,J23,J31,j\n");
    for (time, sp) in moduli::flow_trajectory_shifted(u, t, dt, every) {
        let (j12, j23, j31) = match sp.j() {
            Ok(j) => (j.j12, j.j23, j.j31),
            Err(_) => (f64::NAN, f64::NAN, f64::NAN),
        };
        let p = sp.phi();
        s.push_str(&format!(
            "{time:.6},{:.15e},{:.15e},{:.15e},{j12:.15e},{j23:.15e},{j31:.15e},{:.15e}\n",
            p[0],
            p[1],
            p[2],
            sp.j_invariant()
        ));
    }
    s
}

/// Labeled CSV of the k³ grid over the fundamental cell.
pub fn classify_csv(k: usize, tol: f64) -> String {
    let mut s = String::from("phi1,phi2,phi3,label\n");
    for (p, l) in moduli::classify_grid(k, tol) {
        let label = match l {
            Ok(l) => l.as_str().to_string(),
            Err(e) => format!("\"{e}\""),
        };
        s.push_str(&format!("{:.15e},{:.15e},{:.15e},{label}\n", p.phi[0], p.phi[1], p.phi[2]));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_angles() {
        let u = parse_angles("1/3, 1/4,1/5").unwrap();
        assert_eq!(u[2], Angle::new(1, 5));
        assert!(parse_angles("1/3,1/4").is_err());
        assert!(parse_angles("1/x,1/4,1/5").is_err());
        let r = parse_radians("0.5,1/2,0").unwrap();
        assert!((r[1] - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.as_str().parse::<Suite>(), Ok(s));
        }
        assert_eq!("all".parse::<Suite>(), Ok(Suite::All));
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn classify_suite_passes() {
        let r = run(&RunConfig { suite: Suite::Classify, ..Default::default() });
        assert!(r.passed, "{}", r.to_json());
        assert_eq!(r.checks.len(), 10);
    }

    #[test]
    fn failing_check_fails_report() {
        let r = Report::new("t", BTreeMap::new(), vec![Check::eq("a", 1, 1), Check::eq("b", 1, 2)]);
        assert!(!r.passed);
        assert!(r.to_json().contains("\"pass\": false"));
    }

    #[test]
    fn csv_header_and_rows() {
        let s = flow_csv(&[1.0, 0.8, 0.6], 0.01, 1e-3, 5);
        let lines: Vec<_> = s.lines().collect();
        assert_eq!(lines[0], "t,phi1,phi2,phi3,J12,J23,J31,j");
        assert_eq!(lines[1].split(',').count(), 8);
        assert!(lines.len() >= 3);
    }
}
