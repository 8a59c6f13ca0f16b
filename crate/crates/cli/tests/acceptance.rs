//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any criterion fails.

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use fibbraid::algebra::{enumerate_basis, generator, representation, ModelConstants, QSpin};
use fibbraid::braid::{evaluate, format, parse, BraidWord, GateTarget};
use fibbraid::matrix::{c, cis, from_rows, identity, op_norm, restrict, CMatrix};
use fibbraid::search::{
    exhaustive_search, find_effective_braiding_weave, find_injection_weave, find_not_weave, mitm_search,
    SearchOptions, SearchResult,
};
use fibbraid::sk::{random_rotation, sk_refine, BaseNet, SkParams};
use fibbraid::su2::to_matrix;
use fibbraid::two_qubit::{
    align_phases, cnot_matrix, compile_cnot, compile_controlled_phase, computational_blocks, leakage, QubitLayout,
};
use fibbraid::verify::random_word;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ALGEBRA_TOL: f64 = 1e-12;
const LONG_BUDGET: usize = 46;
const LONG_EFFECTIVE: f64 = 2.3e-3;
const LONG_INJECTION: f64 = 1.5e-3;
const LONG_NOT: f64 = 8.5e-4;
const DESK_BUDGET: usize = 24;
const DESK_EPS: f64 = 5e-2;
const DESK_TIME: Duration = Duration::from_secs(300);
const MITM_TARGETS: usize = 50;
const MITM_BUDGET: usize = 10;
const SK_BASE_LENGTH: usize = 20;
const SK_SUITE: usize = 20;
const SK_GAIN: f64 = 10.0;
const SK_GROWTH: f64 = 6.0;
const SK_EXPONENT: (f64, f64) = (2.5, 5.0);
const EXACT_TOL: f64 = 1e-10;
const CPHASE_FACTOR: f64 = 3.0;
const CNOT_EPS: f64 = 5e-3;
const CORPUS: usize = 1000;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn dimension_law() -> Outcome {
    let clock = Instant::now();
    let (mut a, mut b) = (1usize, 2usize);
    let mut ok = enumerate_basis(1).unwrap().dim() == 1 && enumerate_basis(2).unwrap().dim() == 2;
    for n in 3..=16 {
        (a, b) = (b, a + b);
        ok &= enumerate_basis(n).unwrap().dim() == b;
    }
    let b6 = enumerate_basis(6).unwrap();
    let split = (b6.block_size(QSpin::Zero), b6.block_size(QSpin::One));
    ok &= enumerate_basis(3).unwrap().dim() == 3 && b6.dim() == 13 && split == (5, 8);
    let t = clock.elapsed();
    ok &= t < Duration::from_secs(1);
    outcome(ok, format!("n = 1..16 follow the recurrence, n = 6 splits {} + {}, {t:.2?}", split.0, split.1))
}

fn algebraic_invariants() -> Outcome {
    let mut worst = [0.0f64; 5];
    for n in 3..=6usize {
        let r = representation(n).unwrap();
        for i in 1..n {
            let g = r.generator(i);
            worst[0] = worst[0].max(op_norm(&(g.adjoint() * g - identity(r.dim()))));
            let mut p = identity(r.dim());
            for _ in 0..10 {
                p = g * p;
            }
            worst[3] = worst[3].max(op_norm(&(p - identity(r.dim()))));
            worst[4] = worst[4].max(generator(n as i64, i as i64).unwrap().max_off_block());
            if i + 1 < n {
                let h = r.generator(i + 1);
                worst[1] = worst[1].max(op_norm(&(g * h * g - h * g * h)));
            }
            for j in i + 2..n {
                let h = r.generator(j);
                worst[2] = worst[2].max(op_norm(&(g * h - h * g)));
            }
        }
    }
    let names = ["unitarity", "Yang-Baxter", "far commutation", "tenth power", "block leakage"];
    let detail = names.iter().zip(worst).map(|(n, w)| format!("{n} {w:.1e}")).collect::<Vec<_>>().join(", ");
    outcome(worst.iter().all(|&w| w <= ALGEBRA_TOL), format!("n = 3..6: {detail}"))
}

fn derived_matrix_fact() -> Outcome {
    let k = ModelConstants::standard();
    let (t, s) = (k.tau, k.tau.sqrt());
    let f = from_rows(&[&[c(t, 0.0), c(s, 0.0)], &[c(s, 0.0), c(-t, 0.0)]]);
    let r = from_rows(&[&[cis(-4.0 * PI / 5.0), c(0.0, 0.0)], &[c(0.0, 0.0), cis(3.0 * PI / 5.0)]]);
    let oracle = &f * r * &f;
    let s2 = representation(3).unwrap().generator(2).clone();
    let block = restrict(&s2, &[0, 1], &[0, 1]);
    let dev = op_norm(&(block - &oracle));
    let abs = (s2[(0, 0)].norm() - t).abs();
    outcome(dev <= ALGEBRA_TOL && abs <= ALGEBRA_TOL, format!("|(s2)00| - tau = {abs:.1e}, block vs F R F = {dev:.1e}"))
}

struct Weaves {
    effective: SearchResult,
    injection: SearchResult,
    not: SearchResult,
}

fn find_weaves(budget: usize) -> (Weaves, [Duration; 3]) {
    let opts = SearchOptions::with_length(budget);
    let clock = Instant::now();
    let effective = find_effective_braiding_weave(1, &opts).unwrap();
    let t0 = clock.elapsed();
    let injection = find_injection_weave(&opts).unwrap();
    let t1 = clock.elapsed() - t0;
    let not = find_not_weave(&opts).unwrap();
    let t2 = clock.elapsed() - t0 - t1;
    (Weaves { effective, injection, not }, [t0, t1, t2])
}

fn search_quality_long(w: &Weaves) -> Outcome {
    let rows = [
        ("effective m=1", &w.effective, LONG_EFFECTIVE),
        ("injection", &w.injection, LONG_INJECTION),
        ("NOT", &w.not, LONG_NOT),
    ];
    let ok = rows.iter().all(|(_, r, t)| r.epsilon <= *t && r.best_word.length() <= LONG_BUDGET as u64);
    let detail = rows
        .iter()
        .map(|(n, r, t)| format!("{n} {:.3e} (<= {t:.1e}, length {})", r.epsilon, r.best_word.length()))
        .collect::<Vec<_>>()
        .join("; ");
    outcome(ok, format!("budget {LONG_BUDGET}: {detail}"))
}

fn search_quality_desk(w: &Weaves, times: [Duration; 3]) -> Outcome {
    let rows = [("effective m=1", &w.effective), ("injection", &w.injection), ("NOT", &w.not)];
    let ok = rows.iter().all(|(_, r)| r.epsilon <= DESK_EPS) && times.iter().all(|t| *t < DESK_TIME);
    let detail = rows
        .iter()
        .zip(times)
        .map(|((n, r), t)| format!("{n} {:.3e} in {t:.1?}", r.epsilon))
        .collect::<Vec<_>>()
        .join("; ");
    outcome(ok, format!("budget {DESK_BUDGET}, each <= {DESK_EPS:.0e}: {detail}"))
}

fn random_target(rng: &mut ChaCha8Rng, k: usize) -> (GateTarget, SearchOptions) {
    let block = to_matrix(&random_rotation(rng)) * cis(rng.gen_range(-PI..PI));
    let opts = SearchOptions::with_length(MITM_BUDGET);
    match k % 4 {
        0 => (GateTarget::block(block, true).unwrap(), opts),
        1 => {
            let mut m = CMatrix::zeros(3, 3);
            m.view_mut((0, 0), (2, 2)).copy_from(&block);
            m[(2, 2)] = cis(rng.gen_range(-PI..PI));
            (GateTarget::full(m, false).unwrap(), opts)
        }
        2 => (GateTarget::block(block, false).unwrap(), opts.weave(2, Some(2))),
        _ => (GateTarget::block(block, true).unwrap(), opts.weave(1, None)),
    }
}

fn mitm_correctness() -> Outcome {
    let clock = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut mismatches = 0;
    for k in 0..MITM_TARGETS {
        let (t, opts) = random_target(&mut rng, k);
        let a = exhaustive_search(&t, &opts).unwrap();
        let b = mitm_search(&t, &opts).unwrap();
        if a.epsilon != b.epsilon {
            mismatches += 1;
        }
    }
    let t = clock.elapsed();
    outcome(
        mismatches == 0 && t < Duration::from_secs(60),
        format!("{MITM_TARGETS} targets at budget {MITM_BUDGET}: {mismatches} mismatches, {t:.1?}"),
    )
}

fn solovay_kitaev() -> Outcome {
    let clock = Instant::now();
    let net = BaseNet::build(SK_BASE_LENGTH, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut log_eps = [0.0f64; 4];
    let mut len = [0.0f64; 4];
    let mut points = Vec::new();
    for _ in 0..SK_SUITE {
        let target = to_matrix(&random_rotation(&mut rng));
        let r = sk_refine(&target, &SkParams::new(3), &net).unwrap();
        for l in &r.trace {
            log_eps[l.depth] += l.epsilon.ln() / SK_SUITE as f64;
            len[l.depth] += l.length as f64 / SK_SUITE as f64;
            points.push(((-l.epsilon.ln()).ln(), (l.length as f64).ln()));
        }
    }
    let gain = (log_eps[0] - log_eps[1]).exp();
    let growth = len[1] / len[0];
    let n = points.len() as f64;
    let (mx, my) = (points.iter().map(|p| p.0).sum::<f64>() / n, points.iter().map(|p| p.1).sum::<f64>() / n);
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let exponent = sxy / sxx;
    let ok = gain >= SK_GAIN && growth <= SK_GROWTH && (SK_EXPONENT.0..=SK_EXPONENT.1).contains(&exponent);
    let eps: Vec<String> = log_eps.iter().map(|l| format!("{:.1e}", l.exp())).collect();
    outcome(
        ok,
        format!(
            "{SK_SUITE} rotations, net {} entries: gain {gain:.1}x, length x{growth:.2}, exponent {exponent:.2}; eps by depth [{}], {:.1?}",
            net.len(),
            eps.join(", "),
            clock.elapsed()
        ),
    )
}

fn controlled_phase(w: &Weaves) -> Outcome {
    let emb = QubitLayout::default().embedding().unwrap();
    let weave = w.effective.weave.as_ref().unwrap();
    let (composite, report) = compile_controlled_phase(1, weave).unwrap();
    let ideal = composite.ideal_operator().unwrap();
    let exact_leak = leakage(&ideal, &emb);
    let mut angle_dev = 0.0f64;
    for (_, a) in computational_blocks(&ideal, &emb) {
        let on = restrict(&a, &[2, 3], &[2, 3]);
        let d = (on[(0, 0)] / on[(1, 1)]).arg().rem_euclid(2.0 * PI);
        angle_dev = angle_dev.max((d - 6.0 * PI / 5.0).abs());
    }
    let eps_w = w.effective.epsilon;
    let ok = exact_leak <= EXACT_TOL
        && angle_dev <= EXACT_TOL
        && report.max_eps() <= CPHASE_FACTOR * eps_w
        && report.leakage <= eps_w;
    outcome(
        ok,
        format!(
            "exact limit: leakage {exact_leak:.1e}, angle error {angle_dev:.1e}; weave eps_w {eps_w:.3e}: block eps {:.3e} / {:.3e} (<= {:.3e}), leakage {:.3e}",
            report.eps_block0,
            report.eps_block1,
            CPHASE_FACTOR * eps_w,
            report.leakage
        ),
    )
}

fn cnot(w: &Weaves) -> Outcome {
    let emb = QubitLayout::default().embedding().unwrap();
    let (inj, not) = (w.injection.weave.as_ref().unwrap(), w.not.weave.as_ref().unwrap());
    let (composite, report) = compile_cnot(inj, not).unwrap();
    let ideal = composite.ideal_operator().unwrap();
    let (mut exact, mut square) = (leakage(&ideal, &emb), 0.0f64);
    for (_, a) in computational_blocks(&ideal, &emb) {
        let (e, fit) = align_phases(&a, &cnot_matrix());
        let corrected = fit.strip(&a);
        exact = exact.max(e);
        square = square.max(op_norm(&(&corrected * &corrected - identity(4))));
    }
    let ok = report.eps_block0 <= CNOT_EPS && report.eps_block1 <= CNOT_EPS && exact <= EXACT_TOL && square <= EXACT_TOL;
    outcome(
        ok,
        format!(
            "components inj {:.3e}, NOT {:.3e}: block eps {:.3e} (q-spin 0) / {:.3e} (q-spin 1), leakage {:.3e}; exact limit {exact:.1e}, CNOT^2 {square:.1e}",
            w.injection.epsilon, w.not.epsilon, report.eps_block0, report.eps_block1, report.leakage
        ),
    )
}

fn round_trip_and_determinism() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut round_trip, mut worst) = (true, 0.0f64);
    for _ in 0..CORPUS {
        let n = rng.gen_range(3..=6);
        let len = rng.gen_range(0..16);
        let w: BraidWord = random_word(&mut rng, n, len);
        let canon = w.free_reduce();
        round_trip &= parse(&format(&canon), n).unwrap() == canon;
        round_trip &= parse(&format(&w), n).unwrap() == canon;
        let d = op_norm(&(evaluate(&w, n).unwrap().entries - evaluate(&canon, n).unwrap().entries));
        worst = worst.max(d);
    }
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_fibbraid"))
            .args(["search", "--target", "h", "--max-length", "20", "--weave", "2", "--threads", threads])
            .output()
            .unwrap()
    };
    let outputs: Vec<_> = ["1", "2", "4", "8"].iter().map(|t| run(t)).collect();
    let deterministic = outputs.iter().all(|o| o.status.success() && o.stdout == outputs[0].stdout);
    let ok = round_trip && worst <= ALGEBRA_TOL && deterministic;
    outcome(
        ok,
        format!("{CORPUS} words: round trip {round_trip}, canonical form deviation {worst:.1e}; CLI search identical for 1/2/4/8 threads: {deterministic}"),
    )
}

fn main() {
    let mut results: Vec<(&str, Outcome)> = Vec::new();
    let mut report = |name: &'static str, o: Outcome| {
        println!("[{}] {name}: {}", if o.passed { "PASS" } else { "FAIL" }, o.detail);
        results.push((name, o));
    };
    report("1 dimension law", dimension_law());
    report("2 algebraic invariants", algebraic_invariants());
    report("3 derived matrix fact", derived_matrix_fact());
    let (long, _) = find_weaves(LONG_BUDGET);
    report("4 search quality, long tier", search_quality_long(&long));
    let (desk, times) = find_weaves(DESK_BUDGET);
    report("4 search quality, desk tier", search_quality_desk(&desk, times));
    report("5 meet-in-the-middle correctness", mitm_correctness());
    report("6 Solovay-Kitaev", solovay_kitaev());
    report("7 controlled phase", controlled_phase(&long));
    report("8 controlled NOT", cnot(&long));
    report("9 round trip and determinism", round_trip_and_determinism());
    let failed: Vec<&str> = results.iter().filter(|(_, o)| !o.passed).map(|(n, _)| *n).collect();
    println!("acceptance: {} of {} criteria pass", results.len() - failed.len(), results.len());
    if !failed.is_empty() {
        println!("failing: {}", failed.join(", "));
        std::process::exit(1);
    }
}
