//! Acceptance run: one line per criterion, non-zero exit if any fails.

use std::io::Write;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use lgfrob::fixtures::{self, Fixture};
use lgfrob::frobenius::{build_algebra, FrobeniusAlgebra, TraceStrategy};
use lgfrob::jacobian::{JacobianSystem, PieceOptions};
use lgfrob::lattice::smith_normal_form;
use lgfrob::matrix::{integer_determinant, Matrix};
use lgfrob::poly::{parse_polynomial, Monomial, Polynomial};
use lgfrob::report::{cmd_report, cmd_validate, ExitStatus, Report, ReportSettings};
use lgfrob::scalar::{rat, rat_int};
use lgfrob::toric::{anticanonical_polytope, class_group, monomial_basis, ExtraisomStatus, Witness};
use lgfrob::Rational;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Verdict = Result<(), String>;
type Suite<'a> = (&'a str, &'a dyn Fn(&mut ChaCha8Rng) -> Verdict);
type Criterion = (&'static str, fn() -> Verdict);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn run_report(name: &str) -> (Report, ExitStatus, Duration) {
    let cfg = fixtures::by_name(name).expect("fixture").to_config();
    let t = Instant::now();
    let out = cmd_report(&cfg, ReportSettings::default()).expect("report");
    (out.report, out.status, t.elapsed())
}

fn within(elapsed: Duration, limit: Duration) -> Verdict {
    ensure!(elapsed < limit, "took {:.2?}, limit {:?}", elapsed, limit);
    Ok(())
}

fn dims(r: &Report) -> Vec<usize> {
    r.jacobian
        .as_ref()
        .map(|j| j.dims.iter().map(|d| d.dim).collect())
        .unwrap_or_default()
}

/// Axioms pass and every Gram matrix is square of full rank.
fn algebra_ok(r: &Report) -> Verdict {
    let j = r.jacobian.as_ref().ok_or("no Jacobian stage")?;
    let alg = j
        .algebra
        .as_ref()
        .ok_or_else(|| format!("no algebra: {}", j.algebra_error.clone().unwrap_or_default()))?;
    ensure!(alg.axioms.all_pass(), "axioms fail: {:?}", alg.axioms);
    for g in &alg.gram {
        ensure!(
            g.rows == g.cols && g.rank == g.rows,
            "G_{} is {}x{} of rank {}",
            g.a,
            g.rows,
            g.cols,
            g.rank
        );
    }
    Ok(())
}

fn macaulay_ok(r: &Report, expect: &[i64]) -> Verdict {
    let mac = r
        .jacobian
        .as_ref()
        .and_then(|j| j.macaulay.as_ref())
        .ok_or("no Macaulay check")?;
    let ps: Vec<i64> = mac.dims.iter().map(|(p, _)| *p).collect();
    ensure!(ps == expect, "Macaulay degrees {ps:?}");
    ensure!(mac.pass, "Macaulay vanishing fails: {:?}", mac.dims);
    Ok(())
}

fn socle(r: &Report) -> Result<(usize, usize, Vec<String>, Vec<String>), String> {
    let s = r
        .jacobian
        .as_ref()
        .and_then(|j| j.socle.as_ref())
        .ok_or("no socle certificate")?;
    Ok((
        s.top_dim,
        s.euler_socle_dim,
        s.top_generators.clone(),
        s.euler_socle_generators.clone(),
    ))
}

fn fermat_cubic() -> Verdict {
    let (r, status, t) = run_report("projective-3");
    ensure!(dims(&r) == [1, 1], "dims {:?}", dims(&r));
    let (top, euler, g1, g2) = socle(&r)?;
    ensure!((top, euler) == (1, 1), "socle ({top}, {euler})");
    ensure!(
        g1 == ["z0*z1*z2"] && g2 == ["z0^2*z1^2*z2^2"],
        "socle generators {g1:?} {g2:?}"
    );
    let alg = r.jacobian.as_ref().unwrap().algebra.as_ref().ok_or("no algebra")?;
    ensure!(alg.normalized_volume == 9, "m!Vol = {}", alg.normalized_volume);
    ensure!(alg.socle_trace == "9", "trace of [xyz] = {}", alg.socle_trace);
    ensure!(alg.unit_exponent == 1, "unit (2πi)^{}", alg.unit_exponent);
    algebra_ok(&r)?;
    ensure!(status == ExitStatus::Ok, "status {status:?}");
    within(t, Duration::from_secs(1))
}

fn fermat_quintic() -> Verdict {
    let (r, _, t) = run_report("projective-5");
    ensure!(dims(&r) == [1, 101, 101, 1], "dims {:?}", dims(&r));
    macaulay_ok(&r, &[4, 5])?;
    let alg = r.jacobian.as_ref().unwrap().algebra.as_ref().ok_or("no algebra")?;
    let g1 = &alg.gram[1];
    ensure!(
        (g1.rows, g1.cols, g1.rank) == (101, 101, 101),
        "G_1 {}x{} rank {}",
        g1.rows,
        g1.cols,
        g1.rank
    );
    for (name, ax) in [
        ("associativity", &alg.axioms.associativity),
        ("invariance", &alg.axioms.invariance),
    ] {
        ensure!(ax.pass, "{name} fails: {:?}", ax.witness);
        ensure!(
            ax.checked == 200 && !ax.exhaustive,
            "{name} checked {} triples",
            ax.checked
        );
    }
    algebra_ok(&r)?;
    within(t, Duration::from_secs(600))
}

fn product_p1p1() -> Verdict {
    let (r, _, t) = run_report("product-p1p1");
    ensure!(
        dims(&r) == [1, 1],
        "dims {:?}, socle {:?}",
        dims(&r),
        socle(&r).map(|s| (s.0, s.1))
    );
    algebra_ok(&r)?;
    within(t, Duration::from_secs(1))
}

fn weighted_p112() -> Verdict {
    let (r, status, t) = run_report("weighted-p112");
    let v = &r.validation;
    ensure!(v.all_pass(), "validation {v:?}");
    ensure!(v.gorenstein.pass, "Gorenstein fails");
    let fan = fixtures::weighted_p112().fan;
    let poly = anticanonical_polytope(&fan).map_err(|e| e.to_string())?;
    ensure!(
        poly.vertices.len() == fan.max_cones.len(),
        "vertices {:?}",
        poly.vertices
    );
    ensure!(dims(&r) == [1, 1], "dims {:?}", dims(&r));
    algebra_ok(&r)?;
    ensure!(status == ExitStatus::Ok, "status {status:?}");
    within(t, Duration::from_secs(1))
}

fn bundle_p2() -> Verdict {
    let (r, status, t) = run_report("bundle-p2");
    let j = r.jacobian.as_ref().ok_or("no Jacobian stage")?;
    ensure!(j.crit.len() == 2 && j.crit.iter().all(|c| c.pass), "crit {:?}", j.crit);
    let d = dims(&r);
    ensure!(d.len() == 3 && d[0] == 1 && d[2] == 1, "dims {d:?}");
    ensure!(j.hodge_symmetric == Some(true), "Hodge symmetry fails");
    macaulay_ok(&r, &[3, 4])?;
    let (top, euler, _, _) = socle(&r)?;
    ensure!((top, euler) == (1, 1), "socle ({top}, {euler})");
    algebra_ok(&r)?;
    ensure!(status == ExitStatus::Ok, "status {status:?}");
    within(t, Duration::from_secs(60))
}

fn bundle_p6() -> Verdict {
    let (r, status, t) = run_report("bundle-p6");
    let v = &r.validation;
    ensure!(
        v.simplicial.pass && v.complete_criterion.pass && v.gorenstein.pass && v.ample.pass && v.all_pass(),
        "validation {v:?}"
    );
    let g = r.grading.as_ref().ok_or("no grading")?;
    ensure!(g.rank == 2, "class group rank {}", g.rank);
    let exp = g.expected.as_ref().ok_or("no expected-degree comparison")?;
    ensure!(exp.pass, "degrees {:?} do not match up to transform", g.degrees);
    let tr = exp.transform.as_ref().ok_or("no transform")?;
    let beta: Vec<i64> = tr
        .iter()
        .map(|row| row.iter().zip(&g.beta).map(|(a, b)| a * b).sum())
        .collect();
    ensure!(beta == [2, 2], "β maps to {beta:?}");
    let mut poincare = [0i64; 15];
    for i in 0..7 {
        poincare[2 * i] += 1;
        poincare[2 * i + 2] += 1;
    }
    ensure!(r.betti.as_deref() == Some(&poincare[..]), "Betti {:?}", r.betti);
    ensure!(
        r.extraisom == Some(ExtraisomStatus::TriviallyHolds),
        "extraisom {:?}",
        r.extraisom
    );
    let j = r.jacobian.as_ref().ok_or("no Jacobian stage")?;
    ensure!(j.crit.len() == 2 && j.crit.iter().all(|c| c.pass), "crit {:?}", j.crit);
    ensure!(j.degree_cap == Some(1), "cap {:?}", j.degree_cap);
    let d = dims(&r);
    ensure!(d.len() == 2 && d[0] == 1 && d[1] > 0, "dims {d:?}");
    ensure!(status == ExitStatus::Ok, "status {status:?}");
    within(t, Duration::from_secs(600))
}

fn exit_code(args: &[&str], stdin: Option<&str>) -> (i32, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lgfrob"));
    cmd.args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null());
    let mut child = cmd.spawn().expect("spawn lgfrob");
    if let Some(text) = stdin {
        child.stdin.as_mut().unwrap().write_all(text.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    let out = child.wait_with_output().expect("lgfrob output");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn negative_controls() -> Verdict {
    let cfg = fixtures::hirzebruch3().to_config();
    let out = cmd_validate(&cfg, ReportSettings::default()).map_err(|e| e.0)?;
    let w = out.report.validation.ample.witness.clone();
    ensure!(!out.report.validation.ample.pass, "F_3 passes ample");
    ensure!(
        w == Some(Witness::Pairing {
            cone: 0,
            ray: 2,
            value: "-2".into()
        }),
        "ample witness {w:?}"
    );
    let (r, status, _) = run_report("degenerate-cubic");
    let (top, euler, _, _) = socle(&r)?;
    ensure!((top, euler) != (1, 1), "x^3 passes socle certificates");
    ensure!(status == ExitStatus::Certificate, "x^3 status {status:?}");

    let cases: [(&[&str], Option<&str>, i32); 8] = [
        (&["validate", "--fixture", "projective-3"], None, 0),
        (&["report", "--fixture", "projective-3", "--json-only"], None, 0),
        (&["validate", "--fixture", "hirzebruch-3"], None, 3),
        (&["report", "--fixture", "hirzebruch-3"], None, 3),
        (&["report", "--fixture", "degenerate-cubic"], None, 4),
        (&["report", "--input", "-"], Some("{\"fan\": "), 2),
        (&["report", "--fixture", "no-such-fixture"], None, 2),
        (&["report", "--fixture", "projective-3", "--samples", "0"], None, 2),
    ];
    for (args, stdin, code) in cases {
        let (got, _) = exit_code(args, stdin);
        ensure!(got == code, "lgfrob {} exited {got}, expected {code}", args.join(" "));
    }
    let (_, doc) = exit_code(&["fixture", "bundle-p2"], None);
    let (code, _) = exit_code(&["validate", "--input", "-"], Some(&doc));
    ensure!(code == 0, "fixture document round trip exited {code}");
    Ok(())
}

fn system(fx: &Fixture) -> JacobianSystem<Rational> {
    let g = class_group(&fx.fan).unwrap();
    let f = parse_polynomial(&fx.polynomial, &fx.variables).unwrap();
    JacobianSystem::new(f, g, fx.fan.clone()).unwrap()
}

fn algebra(fx: &Fixture, s: TraceStrategy) -> Result<FrobeniusAlgebra<Rational>, String> {
    build_algebra(&system(fx), s, PieceOptions::default()).map_err(|e| e.to_string())
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-20..21), rng.gen_range(1..9))
}

fn parser_round_trip(rng: &mut ChaCha8Rng) -> Verdict {
    let names: Vec<String> = ["x", "y", "z", "w"].iter().map(|s| s.to_string()).collect();
    for _ in 0..200 {
        let terms = (0..rng.gen_range(0..8)).map(|_| {
            let e = (0..4).map(|_| rng.gen_range(0..5)).collect();
            (Monomial::new(e), random_rational(rng))
        });
        let p = Polynomial::from_terms(4, terms.collect::<Vec<_>>());
        let text = p.to_text(&names);
        let q = parse_polynomial(&text, &names).map_err(|e| format!("{text}: {e}"))?;
        ensure!(p == q, "round trip changed {text}");
    }
    Ok(())
}

fn smith_certificates(rng: &mut ChaCha8Rng) -> Verdict {
    for _ in 0..200 {
        let (r, c) = (rng.gen_range(1..5), rng.gen_range(1..6));
        let rows = (0..r)
            .map(|_| (0..c).map(|_| rng.gen_range(-6i64..7)).collect())
            .collect();
        let a = Matrix::from_rows_with_cols(rows, c);
        let s = smith_normal_form(&a);
        ensure!(s.u.matmul(&a).matmul(&s.v) == s.d, "U·A·V != D for {a:?}");
        let d = s.diagonal();
        ensure!(
            d.windows(2)
                .all(|w| if w[0] == 0 { w[1] == 0 } else { w[1] % w[0] == 0 }),
            "divisibility {d:?}"
        );
        ensure!(
            integer_determinant(&s.u).abs() == 1 && integer_determinant(&s.v).abs() == 1,
            "transforms not unimodular"
        );
    }
    Ok(())
}

fn lattice_count_agreement() -> Verdict {
    for fx in [
        fixtures::projective(3).unwrap(),
        fixtures::product_p1p1(),
        fixtures::weighted_p112(),
        fixtures::bundle_p2(),
    ] {
        let g = class_group(&fx.fan).map_err(|e| e.to_string())?;
        let poly = anticanonical_polytope(&fx.fan).map_err(|e| e.to_string())?;
        let radius = poly.vertices.iter().flatten().map(|x| x.abs()).max().unwrap();
        for a in 0..=3i64 {
            let n = monomial_basis(&g, &fx.fan, &g.beta_multiple(a))
                .map_err(|e| e.to_string())?
                .len();
            // independent sweep over a box around aΔ
            let b = a * radius + 1;
            let dim = fx.fan.dim as u32;
            let side = (2 * b + 1) as usize;
            let count = (0..side.pow(dim))
                .filter(|&k| {
                    let p: Vec<i64> = (0..dim).map(|i| (k / side.pow(i) % side) as i64 - b).collect();
                    fx.fan
                        .rays
                        .iter()
                        .all(|r| r.iter().zip(&p).map(|(x, y)| x * y).sum::<i64>() >= -a)
                })
                .count();
            ensure!(n == count, "{} a={a}: {n} monomials vs {count} lattice points", fx.name);
        }
    }
    Ok(())
}

fn grading_additivity(rng: &mut ChaCha8Rng) -> Verdict {
    let fx = fixtures::bundle_p2();
    let g = class_group(&fx.fan).unwrap();
    let n = fx.variables.len();
    let random = |rng: &mut ChaCha8Rng| {
        let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..3)).collect();
        let alpha = g.exponent_degree(&e);
        let basis = monomial_basis(&g, &fx.fan, &alpha).unwrap();
        let terms: Vec<_> = basis
            .choose_multiple(rng, 3)
            .map(|m| (m.clone(), random_rational(rng)))
            .collect();
        (Polynomial::from_terms(n, terms), alpha)
    };
    for _ in 0..50 {
        let (p, dp) = random(rng);
        let (q, dq) = random(rng);
        let mut pq = &p * &q;
        let want: Vec<i64> = dp.iter().zip(&dq).map(|(a, b)| a + b).collect();
        let got = pq.check_homogeneous(&g).map_err(|e| e.to_string())?;
        ensure!(
            pq.is_zero() || got == Some(want.clone()),
            "deg(pq) = {got:?}, expected {want:?}"
        );
    }
    Ok(())
}

fn strategy_proportionality() -> Verdict {
    for r in [3, 4, 5] {
        let fx = fixtures::projective(r).unwrap();
        let gen = algebra(&fx, TraceStrategy::Generic)?;
        let hes = algebra(&fx, TraceStrategy::ProjectiveHessian)?;
        let one = [Rational::one()];
        let ratio =
            hes.trace(&one).map_err(|e| e.to_string())?.value / gen.trace(&one).map_err(|e| e.to_string())?.value;
        for a in 0..r - 1 {
            let g1 = gen.gram_matrix(a).map_err(|e| e.to_string())?;
            let g2 = hes.gram_matrix(a).map_err(|e| e.to_string())?;
            ensure!(
                g2 == g1.map(|x| x * &ratio),
                "projective-{r}: G_{a} not proportional with ratio {ratio}"
            );
        }
    }
    Ok(())
}

fn sign_law(rng: &mut ChaCha8Rng) -> Verdict {
    for fx in [
        fixtures::projective(3).unwrap(),
        fixtures::projective(4).unwrap(),
        fixtures::bundle_p2(),
    ] {
        let alg = algebra(&fx, TraceStrategy::Generic)?;
        let dims = alg.hodge_row();
        let m = dims.len();
        let sign = rat_int(if (m - 1) % 2 == 0 { 1 } else { -1 });
        for a in 0..m {
            let b = m - 1 - a;
            for _ in 0..10 {
                let u: Vec<Rational> = (0..dims[a]).map(|_| random_rational(rng)).collect();
                let v: Vec<Rational> = (0..dims[b]).map(|_| random_rational(rng)).collect();
                let uv = alg.mul_twisted(a, &u, b, &v).map_err(|e| e.to_string())?;
                let vu = alg.mul_twisted(b, &v, a, &u).map_err(|e| e.to_string())?;
                let want: Vec<Rational> = vu.iter().map(|x| x * &sign).collect();
                ensure!(uv == want, "{}: mul(u,v) != (-1)^(m-1) mul(v,u) at a={a}", fx.name);
            }
        }
    }
    Ok(())
}

fn thread_determinism() -> Verdict {
    for name in ["projective-4", "bundle-p2", "degenerate-cubic"] {
        let outs: Vec<(i32, String)> = ["1", "4"]
            .iter()
            .map(|t| exit_code(&["report", "--fixture", name, "--threads", t, "--json-only"], None))
            .collect();
        ensure!(outs[0] == outs[1], "{name}: output differs between 1 and 4 threads");
    }
    Ok(())
}

fn property_suites() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let suites: [Suite; 7] = [
        ("parser round trip", &parser_round_trip),
        ("Smith certificates", &smith_certificates),
        ("lattice count", &|_| lattice_count_agreement()),
        ("grading additivity", &grading_additivity),
        ("strategy proportionality", &|_| strategy_proportionality()),
        ("mul_twisted sign law", &sign_law),
        ("thread determinism", &|_| thread_determinism()),
    ];
    for (name, suite) in suites {
        suite(&mut rng).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("Fermat cubic on P2", fermat_cubic),
        ("Fermat quintic on P4", fermat_quintic),
        ("P1 x P1 with the committed (2,2) polynomial", product_p1p1),
        ("P(1,1,2) with x^4 + y^4 + z^2", weighted_p112),
        ("bundle-p2", bundle_p2),
        ("bundle-p6", bundle_p6),
        ("negative controls and exit codes", negative_controls),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let verdict = check();
        let secs = t.elapsed().as_secs_f64();
        match verdict {
            Ok(()) => println!("criterion {}: PASS  {name} ({secs:.2} s)", k + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({secs:.2} s): {e}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
