//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use scl_core::hyperbolic::{
    default_audit_grid, hk_min_core_length, length_gap_bound, optimal_epsilon, scl_lower_from_tube,
    surgery_proof_audit, tube_qm_value, GapParams, GapVariant, TubeParams,
};
use scl_core::quasimorphism::{lift_from_matrix, rotation_number, CircleLift};
use scl_core::scl::{cl_upper, scl_lower_bavard, scl_upper_from_power};
use scl_core::sol::{commutator_certificate, paper_log_decomposition, AnosovMatrix, SolElement, SolGroup};
use scl_core::{FreeGroup, Rational, ReducedWord};
use scl_lab::audit::{brooks_defect_scan, counting_oracle, nz_limit_check};
use scl_lab::output::parse_frac;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn w(s: &str) -> ReducedWord {
    ReducedWord::parse(s, 2).unwrap()
}

fn criterion_1() -> Outcome {
    // through the command line front end, as a user would run it
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = scl_lab::run(["scl-lab", "scl", "--word", "[a,b]", "--rank", "2"], &mut out, &mut err);
    let rec: serde_json::Value = match serde_json::from_slice(&out) {
        Ok(v) => v,
        Err(e) => return outcome(false, format!("exit {code}, unparsable output: {e}")),
    };
    let lower = rec["result"]["lower"].as_str().and_then(parse_frac);
    let upper = rec["result"]["upper"].as_str().and_then(parse_frac);
    let verified = rec["certificates"]["upper"]["verified"] == true && rec["certificates"]["upper"]["genus"] == 1;

    // the abAB quasimorphism alone gives the same exact lower bound
    let a = w("[a,b]");
    let (only_abab, witness) = scl_lower_bavard(&a, &[w("abAB")]).unwrap();
    let cert = cl_upper(&a, 1, 1).unwrap().unwrap().certificate;
    let covering = scl_upper_from_power(&a, 1, &cert).unwrap();
    let pass = code == 0
        && lower == Some(Rational::new(1, 12))
        && upper == Some(Rational::new(1, 2))
        && verified
        && only_abab == Rational::new(1, 12)
        && witness.defect == 6
        && covering == Rational::new(2 * 1 - 1, 2);
    outcome(
        pass,
        format!(
            "lower {} upper {}; abAB alone: phi_bar = {}, defect {}, bound {}; cl = 1 certificate gives {}",
            rec["result"]["lower"], rec["result"]["upper"], witness.value, witness.defect, only_abab, covering
        ),
    )
}

fn criterion_2() -> Outcome {
    let a = w("[a,b]^3");
    let found = match cl_upper(&a, 2, 6) {
        Ok(Some(f)) => f,
        other => return outcome(false, format!("no witness: {other:?}")),
    };
    let rank_two = FreeGroup { rank: 2 };
    let verified = found.certificate.verify(&rank_two) && found.certificate.evaluate(&rank_two) == a;
    let bound = scl_upper_from_power(&w("[a,b]"), 3, &found.certificate).unwrap();
    let shown: Vec<String> = found.certificate.pairs().iter().map(|(x, y)| format!("[{x}, {y}]")).collect();
    outcome(
        found.genus == 2 && verified && bound == Rational::new(2 * 2 - 1, 6),
        format!("genus {}, {} verified={verified}, scl <= {bound}", found.genus, shown.join("")),
    )
}

fn criterion_3() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for p in ["ab", "abAB"] {
        let r = brooks_defect_scan(p, 5).unwrap();
        pass &= r.violations == 0 && r.max_defect <= Rational::from_integer(3);
        parts.push(format!("{p}: {} pairs, max {}, violations {}", r.pairs, r.max_defect, r.violations));
    }
    outcome(pass, parts.join("; "))
}

fn criterion_4() -> Outcome {
    let r = counting_oracle(4, 12);
    outcome(
        r.mismatches == 0 && r.texts == 1_062_881,
        format!("{} patterns x {} texts = {} pairs, {} mismatches", r.patterns, r.texts, r.pairs, r.mismatches),
    )
}

fn criterion_5() -> Outcome {
    let audit = surgery_proof_audit(&default_audit_grid(1000)).unwrap();
    let printed = &audit.checks[..2];
    let pass = audit.grid_points == 1000 && printed.iter().all(|c| c.violations == 0);
    let margins: Vec<String> =
        printed.iter().map(|c| format!("{}: min margin {:.6} at T = {:.3}", c.name, c.min_margin, c.at_radius)).collect();
    outcome(pass, margins.join("; "))
}

fn criterion_6() -> Outcome {
    let samples = nz_limit_check(0, 10, 1000, 1).unwrap();
    let worst = samples.iter().map(|s| s.relative_error).fold(0.0, f64::max);
    outcome(samples.len() == 10 && worst < 0.01, format!("10 cusps, max relative error {worst:.3e} (< 1e-2)"))
}

fn criterion_7() -> Outcome {
    // 40-digit evaluations of the same closed forms
    const HK_2: f64 = 0.019_077_049_306_020_386;
    const QM: f64 = 0.241_790_693_856_467_92;
    const SCL_LOWER: f64 = 0.019_241_092_060_438_019;
    let tube = TubeParams::new(0.1, 2.0).unwrap();
    let hk = hk_min_core_length(2.0).unwrap();
    let qm = tube_qm_value(&tube).value;
    let lower = scl_lower_from_tube(&tube);
    let pass = (hk - HK_2).abs() <= 1e-6
        && (qm - QM).abs() <= 1e-6
        && (lower - SCL_LOWER).abs() <= 1e-6
        && (hk - 0.019077).abs() <= 1e-6
        && (qm - 0.241791).abs() <= 1e-6;
    outcome(
        pass,
        format!(
            "hk(2) = {hk:.9}, tube_qm(0.1, 2) = {qm:.9}, scl_lower(0.1, 2) = {lower:.9} (extended precision {SCL_LOWER:.9}; \
             the quoted 0.019243 is {:.1e} away from the formula's value)",
            (0.019243 - SCL_LOWER).abs()
        ),
    )
}

/// Least squares fit of `y` on `x`; returns `(slope, r_squared)`.
fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let (mx, my) = (x.iter().sum::<f64>() / n, y.iter().sum::<f64>() / n);
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    let slope = sxy / sxx;
    (slope, if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) })
}

fn criterion_8() -> Outcome {
    let matrices = [[2, 1, 1, 1], [3, 1, 2, 1], [5, 2, 2, 1]].map(|e| AnosovMatrix::from_row_major(e).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut round_trips = 0;
    for i in 0..1000 {
        let m = matrices[i % 3];
        let u = [rng.random_range(-1_000_000i64..=1_000_000), rng.random_range(-1_000_000i64..=1_000_000)];
        let a = m.minus_identity(u).unwrap();
        let g = SolGroup::new(m);
        let direct = commutator_certificate(a, &m).unwrap();
        let rec = paper_log_decomposition(a, &m, 200).unwrap();
        if direct.evaluate(&g) == SolElement::fiber(a) && rec.expression.evaluate(&g) == SolElement::fiber(a) {
            round_trips += 1;
        }
    }

    let fib: Vec<i64> = (0..=61).scan((0i64, 1i64), |s, _| {
        let f = s.0;
        *s = (s.1, s.0 + s.1);
        Some(f)
    })
    .collect();
    let mut parts = vec![format!("{round_trips}/1000 round trips")];
    let mut pass = round_trips == 1000;
    for m in matrices {
        let (mut x, mut y) = (Vec::new(), Vec::new());
        for k in 2..=60 {
            let a = m.minus_identity([fib[k], fib[k - 1]]).unwrap();
            let d = paper_log_decomposition(a, &m, 200).unwrap();
            x.push((a[0].abs().max(a[1].abs()) as f64).ln());
            y.push(d.factor_count() as f64);
        }
        let (slope, r2) = linear_fit(&x, &y);
        let e = m.entries();
        let max = y.iter().cloned().fold(0.0, f64::max);
        if slope.abs() < 1e-12 {
            // Fibonacci vectors lie on one orbit of the golden matrix: bounded, trivially logarithmic
            pass &= max <= 2.0;
            parts.push(format!("{e:?}: constant {max} factors"));
        } else {
            pass &= r2 > 0.9;
            parts.push(format!("{e:?}: slope {slope:.3} per log|a|, R^2 {r2:.3}"));
        }
    }
    outcome(pass, parts.join("; "))
}

fn matmul(a: [[f64; 2]; 2], b: [[f64; 2]; 2]) -> [[f64; 2]; 2] {
    [
        [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
        [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
    ]
}

fn criterion_9() -> Outcome {
    let third = rotation_number(&CircleLift::rotation(1.0 / 3.0), 300).unwrap().value;
    let diag = lift_from_matrix([[2.0, 0.0], [0.0, 0.5]], 0).unwrap();
    let exact_zero = (1..=300).all(|n| rotation_number(&diag, n).unwrap().value == 0.0);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst_gap = 0.0f64;
    let n = 300u64;
    for _ in 0..50 {
        let mut sl2 = || {
            let (x, y, t): (f64, f64, f64) = (rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0), rng.random_range(0.0..6.3));
            let rot = [[t.cos(), -t.sin()], [t.sin(), t.cos()]];
            matmul(matmul([[1.0, x], [0.0, 1.0]], [[1.0, 0.0], [y, 1.0]]), rot)
        };
        let f = lift_from_matrix(sl2(), 0).unwrap();
        let h = lift_from_matrix(sl2(), 0).unwrap();
        let a = rotation_number(&f, n).unwrap().value;
        let b = rotation_number(&f.conjugate_by(&h), n).unwrap().value;
        worst_gap = worst_gap.max((a - b).abs());
    }
    let pass = (third - 1.0 / 3.0).abs() <= 1.0 / 300.0 && exact_zero && worst_gap <= 2.0 / n as f64;
    outcome(pass, format!("rotation 1/3 -> {third:.9}; diagonal exactly 0 for n <= 300: {exact_zero}; conjugacy gap {worst_gap:.2e} <= {:.2e}", 2.0 / n as f64))
}

fn criterion_10() -> Outcome {
    let opt = optimal_epsilon(1.0).unwrap();
    let n = 1_000_000;
    let (mut best_e, mut best_v) = (0.0, f64::INFINITY);
    for i in 1..=n {
        let e = i as f64 / n as f64;
        let v = 4.0 * e + std::f64::consts::PI / (6.0 * e);
        if v < best_v {
            best_e = e;
            best_v = v;
        }
    }
    let gp = GapParams { m: 100, g: 1, epsilon: 0.3618, margulis_n: None, margulis_2: None };
    let gap = length_gap_bound(&gp, GapVariant::Uniform).unwrap();
    let pass = (opt.eps - 0.361801).abs() <= 1e-5
        && (opt.min_constant - 2.894405).abs() <= 1e-5
        && (opt.eps - best_e).abs() <= 1e-5
        && (opt.min_constant - best_v).abs() <= 1e-5
        && (gap - 0.197346).abs() <= 1e-4;
    outcome(
        pass,
        format!(
            "optimal ({:.6}, {:.6}), grid ({best_e:.6}, {best_v:.6}); length_gap_bound(100, 1, 0.3618) = {gap:.6}",
            opt.eps, opt.min_constant
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, f64); 10] = [
        ("scl([a,b]) in [1/12, 1/2], both exact", criterion_1, 5.0),
        ("genus-2 witness for [a,b]^3", criterion_2, 60.0),
        ("Brooks defect <= 3 on |a|, |b| <= 5", criterion_3, 120.0),
        ("greedy count = brute force, |w| <= 4, |a| <= 12", criterion_4, f64::INFINITY),
        ("surgery inequalities on 1000 radii in (2, 10]", criterion_5, 1.0),
        ("Neumann-Zagier limit within 1%", criterion_6, 1.0),
        ("tube pipeline values within 1e-6", criterion_7, f64::INFINITY),
        ("Sol certificates and logarithmic factor growth", criterion_8, 30.0),
        ("rotation numbers", criterion_9, 1.0),
        ("gap calculator and optimal epsilon", criterion_10, f64::INFINITY),
    ];
    let mut failures = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = check();
        let secs = start.elapsed().as_secs_f64();
        let in_time = secs < *limit;
        let pass = o.pass && in_time;
        if !pass {
            failures += 1;
        }
        let budget = if limit.is_finite() { format!(", limit {limit} s") } else { String::new() };
        println!(
            "criterion {:>2}: {} ({secs:.2} s{budget}) {name}: {}",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
