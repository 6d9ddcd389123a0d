//! Acceptance suite: one PASS/FAIL line per criterion. Run with
//! `cargo test --test acceptance -- --nocapture` to see the lines.

use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use ybe_core::algebra::{diagonal_algebra, direct_sum, mat_algebra, AlgebraRef};
use ybe_core::arith::RatQ;
use ybe_core::baxterize::{baxterize, spectral_ybe, unitary_deform_yang, yang_matrix};
use ybe_core::bd::{
    assemble_bd_r, build_big_triple, canonical_Q_bd, classical_limit, cremmer_gervais, d_basis, validate_bd,
    BdTriple, PrecOrder,
};
use ybe_core::checkers::{check_intertwining, hecke_constant, is_cybe, is_hecke, is_ybe, hecke_lift_defect};
use ybe_core::error::Error;
use ybe_core::solutions::{diagonal_hecke, dj_closed, dj_recursive, triangular_q, twist, DiagonalHeckeParams, Sign, TwistF};
use ybe_core::tensor::Tensor2;
use ybe_core::triples::{dj_triple, mat_index, permutation_element, validate_triple};

/// Collects failed sub-checks for one criterion and prints its line.
struct Criterion {
    id: u32,
    title: &'static str,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Criterion {
    fn new(id: u32, title: &'static str) -> Self {
        Criterion {
            id,
            title,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn finish(self) {
        let status = if self.failures.is_empty() { "PASS" } else { "FAIL" };
        let mut line = format!("{status} [{}] {}", self.id, self.title);
        if !self.notes.is_empty() {
            line.push_str(&format!(" ({})", self.notes.join("; ")));
        }
        if !self.failures.is_empty() {
            line.push_str(&format!(": {} failed: {}", self.failures.len(), self.failures.join("; ")));
        }
        println!("{line}");
        assert!(self.failures.is_empty(), "criterion {} failed", self.id);
    }
}

fn inv_omega_sq() -> RatQ {
    RatQ::inv_omega().pow(2)
}

fn mat(n: usize) -> AlgebraRef {
    Arc::new(mat_algebra(n).unwrap())
}

fn bd_corpus() -> Vec<(&'static str, BdTriple)> {
    vec![
        ("empty n=2", BdTriple::empty(2)),
        ("empty n=3", BdTriple::empty(3)),
        ("empty n=4", BdTriple::empty(4)),
        ("arrow n=3", BdTriple::from_map(3, &[(1, 2)])),
        ("arrow n=4", BdTriple::from_map(4, &[(1, 2)])),
        ("cg n=3", BdTriple::cremmer_gervais(3)),
        ("cg n=4", BdTriple::cremmer_gervais(4)),
        ("two-component n=5", BdTriple::from_map(5, &[(1, 2), (3, 4)])),
    ]
}

fn standard_for(bd: &BdTriple) -> DiagonalHeckeParams {
    DiagonalHeckeParams::standard(validate_bd(bd).unwrap().representatives().len())
}

fn sign_patterns(k: usize) -> Vec<Vec<Sign>> {
    (0..1u32 << k)
        .map(|mask| {
            (0..k)
                .map(|i| if mask >> i & 1 == 1 { Sign::Minus } else { Sign::Plus })
                .collect()
        })
        .collect()
}

#[test]
fn criterion_1_permutation_solutions() {
    let mut c = Criterion::new(1, "permutation elements solve YBE and intertwine");
    let mut algs: Vec<(String, AlgebraRef)> = (1..=4).map(|n| (format!("Mat_{n}"), mat(n))).collect();
    for k in 1..=5 {
        algs.push((format!("diag_{k}"), Arc::new(diagonal_algebra(k).unwrap())));
    }
    let m2 = mat_algebra(2).unwrap();
    algs.push(("Mat_2 (+) -Mat_2".into(), Arc::new(direct_sum(&m2, &m2, -1).unwrap())));
    for (name, a) in &algs {
        let s = permutation_element(a).unwrap();
        c.check(is_ybe(&s).passed, format!("{name}: YBE"));
        c.check(check_intertwining(&s).unwrap().passed, format!("{name}: intertwining"));
    }
    c.note(format!("{} algebras", algs.len()));
    c.finish();
}

#[test]
fn criterion_2_drinfeld_jimbo() {
    let mut c = Criterion::new(2, "Drinfeld-Jimbo closed and recursive forms");
    for n in 2..=4 {
        let r = dj_closed(n).unwrap();
        c.check(is_ybe(&r).passed, format!("n={n}: YBE"));
        c.check(dj_recursive(n).unwrap() == r, format!("n={n}: recursive != closed"));
        let s = r.scale(&RatQ::inv_omega());
        let sigma = permutation_element(r.algebra()).unwrap();
        c.check(is_hecke(&s, &sigma, &inv_omega_sq()).unwrap().passed, format!("n={n}: Hecke 1/w^2"));
        let t = dj_triple(n).unwrap();
        let defect = hecke_lift_defect(&t.q().unwrap(), &t.sigma_d().unwrap()).unwrap();
        c.check(defect.is_zero(), format!("n={n}: Hecke lift defect has {} terms", defect.len()));
    }
    c.finish();
}

#[test]
fn criterion_3_diagonal_hecke_solutions() {
    let mut c = Criterion::new(3, "diagonal Hecke solutions, classical limit iff all signs +");
    let ratios = [RatQ::one(), RatQ::int(2), RatQ::q()];
    let mut cases = 0;
    let mut limit_mismatch = Vec::new();
    for k in 1..=4 {
        let sigma = permutation_element(&Arc::new(diagonal_algebra(k).unwrap())).unwrap();
        for signs in sign_patterns(k) {
            let bs: &[RatQ] = if k == 1 { &ratios[..1] } else { &ratios };
            for b in bs {
                let mut p = DiagonalHeckeParams::with_signs(signs.clone());
                if k > 1 {
                    p = p.with_ratio(0, 1, b.clone()).unwrap();
                }
                let s = diagonal_hecke(&p).unwrap();
                let tag = format!("k={k} signs={} b12={b}", signs.iter().map(|s| s.symbol()).collect::<String>());
                c.check(is_ybe(&s).passed, format!("{tag}: YBE"));
                c.check(is_hecke(&s, &sigma, &inv_omega_sq()).unwrap().passed, format!("{tag}: Hecke"));
                let limit = classical_limit(&s.scale(&RatQ::omega()));
                let exists = match &limit {
                    Ok(_) => true,
                    Err(Error::NoClassicalLimit | Error::EvaluationPole(_)) => false,
                    Err(e) => panic!("{tag}: {e}"),
                };
                if exists != p.all_plus() {
                    limit_mismatch.push(tag);
                }
                cases += 1;
            }
        }
    }
    c.note(format!("{cases} cases"));
    c.check(
        limit_mismatch.is_empty(),
        format!("limit existence differs from all-plus in: {}", limit_mismatch.join(", ")),
    );
    c.finish();
}

#[test]
fn criterion_4_twists() {
    let mut c = Criterion::new(4, "diagonal twists of Drinfeld-Jimbo");
    let mut rng = StdRng::seed_from_u64(2024);
    let mut count = 0;
    for n in 2..=3 {
        let r = dj_closed(n).unwrap();
        let alg = r.algebra().clone();
        let q = triangular_q(&alg, n).unwrap();
        let sigma = permutation_element(&alg).unwrap();
        for trial in 0..5 {
            let f: Vec<Vec<RatQ>> = (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| {
                            let v = RatQ::frac(rng.gen_range(1..6), rng.gen_range(1..6));
                            if rng.gen_bool(0.3) {
                                v.mul_ref(&RatQ::q_pow(rng.gen_range(-2..3)))
                            } else {
                                v
                            }
                        })
                        .collect()
                })
                .collect();
            let tf = TwistF::diagonal(&alg, &f).unwrap();
            let tag = format!("n={n} trial {trial}");
            c.check(tf.preserves(&q).unwrap(), format!("{tag}: F Q F21^-1 != Q"));
            match twist(&r, &tf, &q) {
                Ok(t) => {
                    c.check(is_ybe(&t).passed, format!("{tag}: YBE"));
                    let s = t.scale(&RatQ::inv_omega());
                    c.check(is_hecke(&s, &sigma, &inv_omega_sq()).unwrap().passed, format!("{tag}: Hecke"));
                }
                Err(e) => c.check(false, format!("{tag}: {e}")),
            }
            count += 1;
        }
    }
    c.note(format!("{count} random twists, seed 2024"));
    c.finish();
}

#[test]
fn criterion_5_baxterization() {
    let mut c = Criterion::new(5, "baxterization and Yang-type spectral solutions");
    for n in 2..=3 {
        let r = dj_closed(n).unwrap();
        let rf = baxterize(&r).unwrap();
        c.check(spectral_ybe(&rf).unwrap().passed, format!("DJ n={n}: spectral YBE"));
        let inv21 = r.flip().inverse().expect("R21 invertible");
        let p = permutation_element(r.algebra()).unwrap();
        c.check(r.sub(&inv21).unwrap() == p.scale(&RatQ::omega()), format!("DJ n={n}: R - R21^-1 != wP"));
    }
    let a2 = mat(2);
    for lam in [RatQ::one(), RatQ::frac(3, 2)] {
        let y = yang_matrix(&a2, &lam).unwrap();
        c.check(spectral_ybe(&y).unwrap().passed, format!("Yang lambda={lam}"));
    }
    let mut rng = StdRng::seed_from_u64(99);
    for trial in 0..3 {
        let n = 2 + trial % 2;
        let a = mat(n);
        let mut s = Tensor2::zero(a.clone());
        for i in 1..=n {
            let sii = if rng.gen_bool(0.5) { RatQ::one() } else { RatQ::int(-1) };
            s.add_term((mat_index(n, i, i), mat_index(n, i, i)), sii).unwrap();
            for k in i + 1..=n {
                let v = RatQ::frac(rng.gen_range(1..9), rng.gen_range(1..9));
                s.add_term((mat_index(n, i, i), mat_index(n, k, k)), v.clone()).unwrap();
                s.add_term((mat_index(n, k, k), mat_index(n, i, i)), v.inv().unwrap()).unwrap();
            }
        }
        let lam = RatQ::int(rng.gen_range(1..5));
        c.check(unitary_deform_yang(&s, &lam).is_ok(), format!("unitary deformation trial {trial}"));
    }
    c.finish();
}

#[test]
fn criterion_6_bd_pipeline() {
    let mut c = Criterion::new(6, "BD pipeline on the corpus");
    for (name, bd) in bd_corpus() {
        let data = match validate_bd(&bd) {
            Ok(d) => d,
            Err(e) => {
                c.check(false, format!("{name}: {e}"));
                continue;
            }
        };
        c.check(PrecOrder::new(&data).is_strict_partial_order(), format!("{name}: order"));
        let t = build_big_triple(&bd).unwrap();
        c.check(validate_triple(&t).passed, format!("{name}: triple conditions"));
        let d = d_basis(&bd).unwrap();
        let form = t.algebra().form().unwrap();
        let gram = form.pairing(&d, &d);
        c.check(
            gram == ybe_core::linalg::Matrix::identity(d.len()),
            format!("{name}: D basis not orthonormal"),
        );
        c.check(d.len() + data.card() == bd.n, format!("{name}: D has dimension {}", d.len()));
        match canonical_Q_bd(&bd) {
            Ok(q) => c.check(q == t.q().unwrap(), format!("{name}: explicit Q != generic")),
            Err(e) => c.check(false, format!("{name}: {e}")),
        }
        match assemble_bd_r(&bd, &standard_for(&bd)) {
            Ok(out) => {
                if bd.n <= 3 {
                    c.check(out.big_ybe.map(|r| r.passed) == Some(true), format!("{name}: big YBE"));
                }
                c.check(out.proj_ybe.passed, format!("{name}: projected YBE"));
                if data.card() == 0 {
                    c.check(out.r_proj == dj_closed(bd.n).unwrap(), format!("{name}: != DJ"));
                }
            }
            Err(e) => c.check(false, format!("{name}: {e}")),
        }
    }
    c.finish();
}

#[test]
fn criterion_7_cremmer_gervais() {
    let mut c = Criterion::new(7, "Cremmer-Gervais matrices");
    let lam = RatQ::q().mul_ref(&RatQ::inv_omega());
    for n in 3..=4 {
        let r = cremmer_gervais(n, &lam).unwrap();
        c.check(is_ybe(&r).passed, format!("n={n}: YBE"));
        let sigma = permutation_element(r.algebra()).unwrap();
        match hecke_constant(&r, &sigma).unwrap() {
            Some(k) => {
                c.check(k == inv_omega_sq(), format!("n={n}: unexpected Hecke constant {k}"));
                c.note(format!("n={n} Hecke constant {k}"));
            }
            None => c.check(false, format!("n={n}: not Hecke")),
        }
    }
    // hand specialization of the projected formulas for n = 3
    let w = RatQ::omega();
    let u = |i, j| mat_index(3, i, j);
    let mut want = Tensor2::one(mat(3)).scale(&w.mul_ref(&lam));
    for (a, b, s) in [
        ((1, 1), (2, 2), -1),
        ((1, 1), (3, 3), -1),
        ((2, 2), (3, 3), -1),
        ((1, 2), (2, 1), 1),
        ((2, 3), (3, 2), 1),
        ((1, 3), (3, 1), 1),
        ((2, 3), (2, 1), 1),
        ((2, 1), (2, 3), -1),
    ] {
        want.add_term((u(a.0, a.1), u(b.0, b.1)), w.mul_ref(&RatQ::int(s))).unwrap();
    }
    let r3 = cremmer_gervais(3, &lam).unwrap().scale(&w);
    c.check(r3 == want, "n=3 differs from the hand formula");
    let piped = assemble_bd_r(&BdTriple::cremmer_gervais(3), &DiagonalHeckeParams::standard(1)).unwrap();
    c.check(piped.r_proj == want, "n=3 pipeline differs from the hand formula");
    c.finish();
}

#[test]
fn criterion_8_classical_limits() {
    let mut c = Criterion::new(8, "classical limits satisfy cYBE");
    for n in 2..=3 {
        match classical_limit(&dj_closed(n).unwrap()) {
            Ok(r) => c.check(is_cybe(&r).passed, format!("DJ n={n}: cYBE")),
            Err(e) => c.check(false, format!("DJ n={n}: {e}")),
        }
    }
    for (name, bd) in bd_corpus() {
        let out = assemble_bd_r(&bd, &standard_for(&bd)).unwrap();
        match classical_limit(&out.r_proj) {
            Ok(r) => c.check(is_cybe(&r).passed, format!("{name}: cYBE")),
            Err(e) => c.check(false, format!("{name}: {e}")),
        }
    }
    c.finish();
}

#[test]
fn criterion_9_negative_controls() {
    let mut c = Criterion::new(9, "negative controls are rejected");
    let mut rs: Vec<(String, Tensor2)> = (2..=4).map(|n| (format!("DJ n={n}"), dj_closed(n).unwrap())).collect();
    let lam = RatQ::q().mul_ref(&RatQ::inv_omega());
    rs.push(("CG n=3".into(), cremmer_gervais(3, &lam).unwrap()));
    for (name, bd) in bd_corpus() {
        rs.push((name.into(), assemble_bd_r(&bd, &standard_for(&bd)).unwrap().r_proj));
    }
    for (name, r) in &rs {
        let n = (1..).find(|k| k * k == r.algebra().dim()).unwrap();
        let mut bad = r.clone();
        bad.add_term((mat_index(n, 1, 2), mat_index(n, 1, 1)), RatQ::one()).unwrap();
        c.check(!is_ybe(&bad).passed, format!("{name}: perturbation accepted"));
    }
    let has = |bd: &BdTriple, v: &str| match validate_bd(bd) {
        Err(Error::InvalidBd(vs)) => vs.iter().any(|x| x.name() == v),
        _ => false,
    };
    c.check(has(&BdTriple::from_map(3, &[(1, 1)]), "IdempotentOrbitStuck"), "fixed point accepted");
    c.check(has(&BdTriple::from_map(4, &[(2, 2)]), "NotNilpotent"), "fixed point accepted (n=4)");
    c.check(has(&BdTriple::from_map(5, &[(1, 4), (2, 3)]), "BreaksOrientation"), "reversal accepted");
    c.note(format!("{} perturbed matrices", rs.len()));
    c.finish();
}
