//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::f64::consts::{FRAC_PI_2, PI};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ncsphere::cli::{probe_points, random_theta};
use ncsphere::clifford::{
    euclidean_gammas, clifford_square_identity, lemma3_check, lemma5_check, projection_e_theta, symbol_rep_check,
    unitary_u_theta, unitary_u_u,
};
use ncsphere::diffforms::{selfduality_numeric_s4, FormsAlgebra, Orientation};
use ncsphere::grassmann;
use ncsphere::homology::{
    boundary_b, ch_even, ch_odd, ch_odd_unchecked, closed_form_ch32, is_hermitian_idempotent, is_unitary_up_to_center,
    operator_b_on_cyclic,
};
use ncsphere::moduli::{self, ModuliPoint};
use ncsphere::ncalg::{GeneratorSet, NCPoly, TensorChain, Word};
use ncsphere::qgroup::{Bialgebra, Block};
use ncsphere::rewrite::{
    a_u_central_elements, make_a_u, make_a_u_deg, make_r2n_theta, make_s2n_theta, make_s2nm1_theta, make_sklyanin,
    make_torus, sklyanin_j_exact, Presentation, Theta,
};
use ncsphere::scalar::{Angle, Coeff, CycloScalar};
use ncsphere::splitting::{injectivity_ranks, relations_vanish, PlaneSplitting, QGroupSplitting};

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Deterministic non-degenerate points with denominators in {3, 4, 6, 12}
/// (cyclotomic order 24).
fn generic_points(count: usize, seed: u64) -> Vec<[Angle; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<[Angle; 3]> = Vec::new();
    while out.len() < count {
        let u = [0; 3].map(|_| {
            let q = [3, 4, 6, 12][rng.gen_range(0..4)];
            Angle::new(rng.gen_range(1..2 * q), q)
        });
        let phi = u.map(|a| a.radians());
        // stay away from the critical set and the degenerate loci
        if moduli::delta(&phi).abs() < 1e-3 || moduli::vector_field_z(&phi).iter().all(|z| z.abs() < 1e-9) {
            continue;
        }
        if out.contains(&u) || make_a_u_deg(&u, 2).is_err() {
            continue;
        }
        out.push(u);
    }
    out
}

fn binom3(d: usize) -> usize {
    (d + 1) * (d + 2) * (d + 3) / 6
}

fn relations_and_overlaps(name: &str, p: &Presentation, degree: usize) -> Outcome {
    ensure(p.relations_reduce_to_zero().map_err(s)?, || format!("{name}: a relation does not reduce to 0"))?;
    let o = p.check_confluence(degree).map_err(s)?;
    ensure(o.is_empty(), || format!("{name}: {} unresolved overlaps at degree {degree}", o.len()))
}

fn c1_relations() -> Outcome {
    for u in generic_points(10, 1) {
        let p = make_a_u_deg(&u, 4).map_err(s)?;
        relations_and_overlaps(&p.name, &p, 3)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for n in 1..=3 {
        let th = if n == 1 { Theta::zero(1) } else { random_theta(&mut rng, n) };
        relations_and_overlaps("R2n_theta", &make_r2n_theta(n, &th).map_err(s)?, 3)?;
        relations_and_overlaps("T^n_theta", &make_torus(n, &th).map_err(s)?, 3)?;
        if n >= 2 {
            relations_and_overlaps("S2n_theta", &make_s2n_theta(n, &th).map_err(s)?, 4)?;
            relations_and_overlaps("S2n-1_theta", &make_s2nm1_theta(n, &th).map_err(s)?, 4)?;
        }
    }
    let u = [Angle::new(1, 3), Angle::new(1, 4), Angle::new(1, 6)];
    let j = sklyanin_j_exact(&u).map_err(s)?;
    relations_and_overlaps("Sklyanin", &make_sklyanin(&j, 4).map_err(s)?, 3)?;
    let th = random_theta(&mut rng, 2);
    relations_and_overlaps("M_theta(4,R)", &Bialgebra::new(2, &th).map_err(s)?.m, 3)
}

fn c2_pbw() -> Outcome {
    for u in generic_points(2, 3) {
        let p = make_a_u(&u).map_err(s)?;
        for d in 0..=6 {
            let g = p.graded_dimension(d);
            ensure(g == binom3(d), || format!("A_u at {:?}: dim_{d} = {g}, want {}", u, binom3(d)))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let p = make_r2n_theta(2, &random_theta(&mut rng, 2)).map_err(s)?;
    for d in 0..=6 {
        let g = p.graded_dimension(d);
        ensure(g == binom3(d), || format!("R4_theta: dim_{d} = {g}, want {}", binom3(d)))?;
    }
    Ok(())
}

fn free4() -> Presentation {
    Presentation::from_rules("free", GeneratorSet::hermitian(&["x0", "x1", "x2", "x3"]), vec![], vec![])
}

fn w4(a: usize, b: usize, c: usize, d: usize) -> Vec<Word> {
    vec![Word::gen(a), Word::gen(b), Word::gen(c), Word::gen(d)]
}

fn c3_chern() -> Outcome {
    let minus_four = CycloScalar::int(-4);
    for u in generic_points(20, 5) {
        let p = make_a_u_deg(&u, 3).map_err(s)?;
        let uu = unitary_u_u(&u);
        ensure(ch_odd(&uu, 0, &p).map_err(s)?.is_zero(), || format!("ch_1/2 != 0 at {u:?}"))?;
        let c = ch_odd(&uu, 1, &p).map_err(s)?;
        // the closed form with the fixed normalization −4 of tr(U⊛U*⊛U⊛U* − …)
        let want = closed_form_ch32(&u).scale(&minus_four);
        ensure(c == want, || format!("ch_3/2 differs from the closed form at {u:?}"))?;
        // spot-check two coefficients against the formula directly
        let phi = |m: usize| if m == 0 { Angle::zero() } else { u[m - 1] };
        let c0123 = phi(0).sub(phi(1)).add(phi(2)).sub(phi(3)).cos().neg().mul(&minus_four);
        ensure(c.coeff(&w4(0, 1, 2, 3)) == c0123, || format!("x0⊗x1⊗x2⊗x3 coefficient at {u:?}"))?;
        let c1212 = CycloScalar::i().mul(&phi(1).sub(phi(2)).scale(2).sin()).mul(&minus_four);
        ensure(c.coeff(&w4(1, 2, 1, 2)) == c1212, || format!("x1⊗x2⊗x1⊗x2 coefficient at {u:?}"))?;
    }
    let free = free4();
    let h = Angle::new(1, 2);
    for v in [[h, h, h], [h, Angle::zero(), Angle::zero()]] {
        let c = ch_odd_unchecked(&unitary_u_u(&v), 1, &free).map_err(s)?;
        ensure(c.is_zero(), || format!("ch_3/2 != 0 at {v:?}"))?;
    }
    Ok(())
}

fn c4_cycle() -> Outcome {
    for u in generic_points(5, 6) {
        let p = make_a_u_deg(&u, 3).map_err(s)?;
        let c = ch_odd(&unitary_u_u(&u), 1, &p).map_err(s)?;
        ensure(!c.is_zero(), || format!("ch_3/2 vanishes at {u:?}"))?;
        ensure(boundary_b(&c, &p).map_err(s)?.is_zero(), || format!("b(ch_3/2) != 0 at {u:?}"))?;
        let bc = operator_b_on_cyclic(&c).map_err(s)?;
        ensure(boundary_b(&bc, &p).map_err(s)?.is_zero(), || format!("b(B ch_3/2) != 0 at {u:?}"))?;
    }
    Ok(())
}

fn c5_theorem4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..5 {
        for n in 2..=3 {
            let th = random_theta(&mut rng, n);
            let (p, e) = projection_e_theta(n, &th, false).map_err(s)?;
            ensure(is_hermitian_idempotent(&e, &p).map_err(s)?, || format!("e not a projection, n={n}"))?;
            for m in 0..n {
                ensure(ch_even(&e, m, &p).map_err(s)?.is_zero(), || format!("ch_{m}(e) != 0, n={n}"))?;
            }
            if n == 2 {
                ensure(!ch_even(&e, 2, &p).map_err(s)?.is_zero(), || "ch_2(e) = 0, n=2".into())?;
            }
            let d = unitary_u_theta(n, &th).map_err(s)?;
            ensure(is_unitary_up_to_center(&d.u, &d.pres).map_err(s)?, || format!("U not unitary, n={n}"))?;
            for m in 1..n {
                let via = d.ch_gamma_trace(m).map_err(s)?;
                ensure(via.is_zero(), || format!("tr(gamma Gamma^{}) != 0, n={n}", 2 * m))?;
                ensure(d.ch_direct(m).map_err(s)? == via, || format!("ch_{m}-1/2(U) != tr(gamma Gamma^2m), n={n}"))?;
            }
        }
    }
    Ok(())
}

fn c6_lemmas() -> Outcome {
    for u in generic_points(3, 8) {
        let p = make_a_u_deg(&u, 4).map_err(s)?;
        for c in a_u_central_elements(&u) {
            ensure(p.is_central(&c).map_err(s)?, || format!("quadratic element not central at {u:?}"))?;
        }
        ensure(lemma3_check(&u, &p).map_err(s)?, || format!("twisted Clifford identity fails at {u:?}"))?;
        let (g, _) = euclidean_gammas();
        ensure(!clifford_square_identity(&g, &p).map_err(s)?, || "untwisted identity holds".into())?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for n in 2..=3 {
        let th = random_theta(&mut rng, n);
        ensure(lemma5_check(n, &th).map_err(s)?, || format!("gamma-field relations fail, n={n}"))?;
        ensure(symbol_rep_check(n, &th).map_err(s)?, || format!("symbol family relations fail, n={n}"))?;
    }
    Ok(())
}

fn generic_radians(rng: &mut ChaCha8Rng) -> [f64; 3] {
    loop {
        let p = [0; 3].map(|_| rng.gen_range(0.05..PI - 0.05));
        if moduli::delta(&p).abs() > 1e-3 && p.iter().all(|x| x.cos().abs() > 1e-2) {
            return p;
        }
    }
}

fn c7_sklyanin() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..20 {
        let p = generic_radians(&mut rng);
        let r = moduli::sklyanin_residual(&p).map_err(s)?;
        ensure(r <= 1e-10, || format!("Sklyanin residual {r:e} at {p:?}"))?;
        let c = moduli::j_of(&p).map_err(s)?.constraint_residual();
        ensure(c <= 1e-12, || format!("J constraint residual {c:e} at {p:?}"))?;
    }
    Ok(())
}

fn c8_foliation() -> Outcome {
    let zmax = |p: [f64; 3]| moduli::vector_field_z(&p).iter().fold(0.0f64, |m, z| m.max(z.abs()));
    for a in [0.1, 0.5, 0.9, 1.3, 2.0, 2.9] {
        ensure(zmax([a, a, 0.0]) <= 1e-14, || format!("Z != 0 on C+ at {a}"))?;
        ensure(zmax([FRAC_PI_2 + a, FRAC_PI_2, a]) <= 1e-14, || format!("Z != 0 on C- at {a}"))?;
    }
    for v in moduli::weyl_orbit(&ModuliPoint::new(FRAC_PI_2, FRAC_PI_2, FRAC_PI_2)) {
        ensure(zmax(v.phi) <= 1e-14, || format!("Z != 0 at {:?}", v.phi))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let u = generic_radians(&mut rng);
        let j0 = moduli::j_of(&u).map_err(s)?.as_array();
        let (l0, jj0) = (moduli::lambda_of(&u), moduli::j_invariant(&u));
        for (t, p) in moduli::flow_trajectory_shifted(&u, 10.0, 1e-3, 10) {
            let j1 = p.j().map_err(s)?.as_array();
            let dj = (0..3).fold(0.0f64, |m, i| m.max((j0[i] - j1[i]).abs()));
            ensure(dj <= 1e-8, || format!("J drift {dj:e} at t={t} from {u:?}"))?;
            // λ is determined up to λ ↦ 1/λ, 1 − λ, …; compare j and λ's orbit
            let dl = (p.j_invariant() - jj0).abs() / jj0.abs().max(1.0);
            ensure(dl <= 1e-6, || format!("j drift {dl:e} at t={t} from {u:?}"))?;
            let l1 = p.lambda();
            let lam_ok = [l1, 1.0 / l1, 1.0 - l1, 1.0 / (1.0 - l1), l1 / (l1 - 1.0), (l1 - 1.0) / l1]
                .iter()
                .any(|x| (x - l0).abs() / l0.abs().max(1.0) <= 1e-6);
            ensure(lam_ok, || format!("lambda left its anharmonic orbit at t={t} from {u:?}"))?;
        }
    }
    for (p, want) in probe_points() {
        let got = moduli::classify(&ModuliPoint::from_array(p), moduli::DEFAULT_TOL).map_err(s)?;
        ensure(got == want, || format!("classify({p:?}) = {}, want {}", got.as_str(), want.as_str()))?;
    }
    Ok(())
}

/// Determinant by cofactor expansion along the first row, entries treated as
/// commuting polynomials (used at θ = 0 only).
fn cofactor_det(m: &[Vec<NCPoly<CycloScalar>>]) -> NCPoly<CycloScalar> {
    if m.len() == 1 {
        return m[0][0].clone();
    }
    let mut out = NCPoly::zero();
    for j in 0..m.len() {
        let minor: Vec<Vec<_>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let t = m[0][j].mul(&cofactor_det(&minor));
        out = if j % 2 == 0 { out.add(&t) } else { out.sub(&t) };
    }
    out
}

fn c9_qgroup() -> Outcome {
    let th = Theta::uniform(2, Angle::new(1, 3));
    let q = Bialgebra::new(2, &th).map_err(s)?;
    for g in 0..2 * q.gen_count() {
        let p = NCPoly::gen(g);
        ensure(q.coassociativity_defect(&p).map_err(s)?.is_zero(), || format!("coassociativity fails on gen {g}"))?;
        let (l, r) = q.counit_defect(&p).map_err(s)?;
        ensure(l.is_zero() && r.is_zero(), || format!("counit fails on gen {g}"))?;
    }
    let det = q.det_theta().map_err(s)?;
    ensure(q.m.is_central(&det).map_err(s)?, || "det not central".into())?;
    ensure(q.m.normal_form(&q.m.gens.star(&det)).map_err(s)? == det, || "det not hermitian".into())?;
    let dd = q.coproduct(&det).map_err(s)?;
    let want = q.square().reduce(&TensorChain::tensor(&[&det, &det])).map_err(s)?;
    ensure(dd == want && q.counit(&det) == CycloScalar::one(), || "det not grouplike".into())?;

    let q0 = Bialgebra::new(2, &Theta::zero(2)).map_err(s)?;
    let e = |b, mu, nu| NCPoly::gen(q0.idx(b, mu, nu));
    let mut l = vec![vec![NCPoly::zero(); 4]; 4];
    for mu in 0..2 {
        for nu in 0..2 {
            l[mu][nu] = e(Block::A, mu, nu);
            l[mu][2 + nu] = e(Block::B, mu, nu);
            l[2 + mu][nu] = e(Block::BBar, mu, nu);
            l[2 + mu][2 + nu] = e(Block::ABar, mu, nu);
        }
    }
    let classical = q0.m.normal_form(&cofactor_det(&l)).map_err(s)?;
    ensure(q0.det_theta().map_err(s)? == classical, || "det at theta = 0 differs from cofactor expansion".into())?;
    ensure(q.det_squared_is_one(6).map_err(s)?, || "(det)^2 - 1 not in the orthogonal ideal".into())
}

fn c10_splitting() -> Outcome {
    let th = Theta::uniform(2, Angle::new(1, 3));
    let plane = PlaneSplitting::new(2, &th, false);
    let r4 = make_r2n_theta(2, &th).map_err(s)?;
    ensure(relations_vanish(&r4, |x| plane.st(x)), || "plane relations".into())?;
    let sphere = PlaneSplitting::new(2, &th, true);
    let s4 = make_s2n_theta(2, &th).map_err(s)?;
    let ok = s4.relations.iter().all(|x| sphere.st(x) == sphere.classical(x) || sphere.st(x).is_zero());
    ensure(ok, || "sphere relations".into())?;
    let f = FormsAlgebra::plane(2, &th, false).map_err(s)?;
    ensure(relations_vanish(&f.pres, |x| plane.st(x)), || "form relations".into())?;
    let q = Bialgebra::new(2, &th).map_err(s)?;
    let qs = QGroupSplitting::new(&q);
    ensure(relations_vanish(&q.omega, |x| qs.st(x)), || "quantum group relations".into())?;
    let sd = qs.st(&q.det_theta().map_err(s)?);
    let classical = Bialgebra::new(2, &Theta::zero(2)).map_err(s)?.det_theta().map_err(s)?;
    ensure(sd.torus_trivial() && sd == qs.classical(&classical), || "st(det) is not det (x) 1".into())?;
    for (name, ranks) in [
        ("R4_theta", injectivity_ranks(&r4, 5, |x| plane.st(x))),
        ("M_theta", injectivity_ranks(&q.m, 5, |x| qs.st(x))),
    ] {
        for (d, words, rank) in ranks {
            ensure(words == rank, || format!("{name}: degree {d} rank {rank} < {words}"))?;
        }
    }
    Ok(())
}

fn c11_appendix() -> Outcome {
    let r = grassmann::report();
    let i32 = CycloScalar::i().mul(&CycloScalar::from_ratio(1, 32)).to_string();
    ensure(r.coeff_sigma2 == i32, || format!("U3 s2 U s2 coefficient {}", r.coeff_sigma2))?;
    ensure(r.coeff_sigma1 == i32, || format!("U3 s1 U s1 coefficient {}", r.coeff_sigma1))?;
    ensure(r.commutator_support > 0, || "[mu, mu*] = 0 in the free product".into())?;
    for u in generic_points(5, 12) {
        ensure(grassmann::mu_vanishes_in_au(&u).map_err(s)?, || format!("[m, m*] != 0 at {u:?}"))?;
    }
    Ok(())
}

fn c12_selfduality() -> Outcome {
    let plus = selfduality_numeric_s4(100, 13, false, Orientation::Clifford);
    ensure(plus <= 1e-8, || format!("self-duality residual {plus:e}"))?;
    let minus = selfduality_numeric_s4(100, 13, true, Orientation::Clifford);
    ensure(minus <= 1e-8, || format!("anti-self-duality residual {minus:e}"))
}

fn c13_calculus() -> Outcome {
    let th = Theta::uniform(2, Angle::new(1, 3));
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for with_x in [false, true] {
        let f = FormsAlgebra::plane(2, &th, with_x).map_err(s)?;
        for g in 0..f.generator_count() {
            let dd = f.differential_d(&f.differential_d(&NCPoly::gen(g)).map_err(s)?).map_err(s)?;
            ensure(dd.is_zero(), || format!("d^2 != 0 on generator {g}"))?;
        }
        for i in 0..50 {
            let w = f.random_form(&mut rng, 4, 3);
            let dw = f.differential_d(&w).map_err(s)?;
            ensure(f.differential_d(&dw).map_err(s)?.is_zero(), || format!("d^2 != 0 on random form {i}"))?;
            let lhs = f.differential_d(&f.bar(&w)).map_err(s)?;
            ensure(lhs == f.bar_reduced(&dw).map_err(s)?, || format!("d(bar w) != bar(dw) on random form {i}"))?;
        }
        let top = f.top_form();
        ensure(f.is_graded_central(&top, false).map_err(s)?, || "top form not central".into())?;
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, u64, fn() -> Outcome); 13] = [
        ("relations and confluence", 30, c1_relations),
        ("PBW dimensions", 30, c2_pbw),
        ("Chern character of U_u", 60, c3_chern),
        ("Hochschild cycle", 60, c4_cycle),
        ("projections and unitaries on theta-spheres", 120, c5_theorem4),
        ("centrality and Clifford identities", 60, c6_lemmas),
        ("Sklyanin correspondence", 10, c7_sklyanin),
        ("scaling foliation", 10, c8_foliation),
        ("quantum group", 120, c9_qgroup),
        ("splitting homomorphisms", 60, c10_splitting),
        ("free-product Grassmannian", 60, c11_appendix),
        ("self-duality", 10, c12_selfduality),
        ("differential calculus", 30, c13_calculus),
    ];
    let mut failed = 0;
    for (i, (name, limit, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = f();
        let el = t.elapsed();
        let r = r.and_then(|_| {
            ensure(el <= Duration::from_secs(*limit), || format!("took {:.1} s, limit {limit} s", el.as_secs_f64()))
        });
        match r {
            Ok(()) => println!("PASS {:>2} {name} ({:.2} s, limit {limit} s)", i + 1, el.as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({:.2} s, limit {limit} s): {e}", i + 1, el.as_secs_f64());
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
