//! Self-check suite: the model's algebraic invariants and the compiler's end-to-end contracts,
//! each reduced to a pass/fail line.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{enumerate_basis, representation, ModelConstants, QSpin};
use crate::braid::{
    classify_weave, evaluate, format, parse, phase_distance, phase_distance_numeric, BraidWord, Crossing, GateTarget,
};
use crate::matrix::{identity, op_norm, CMatrix};
use crate::search::{exhaustive_search, mitm_search, SearchOptions};
use crate::sk::{group_commutator_decompose, random_rotation, sk_refine, BaseNet, SkParams};
use crate::su2::{projective_distance, to_matrix};
use crate::two_qubit::{
    align_phases, cnot_matrix, compile_cnot, compile_controlled_phase, computational_blocks, leakage, lift_op,
    lift_weave, QubitLayout, N_ANYONS,
};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, worst: f64, tol: f64) -> Check {
    Check { name, passed: worst <= tol, detail: format!("worst {worst:.3e} (tolerance {tol:.0e})") }
}

/// A random word on `n` strands with `len` crossings and exponents in -4..=5.
pub fn random_word<R: Rng>(rng: &mut R, n: usize, len: usize) -> BraidWord {
    let crossings =
        (0..len).map(|_| Crossing::new(rng.gen_range(1..n), [-4, -3, -2, -1, 1, 2, 3, 4, 5][rng.gen_range(0..9)])).collect();
    BraidWord { n_strands: n, crossings }
}

fn max_over<T>(items: impl IntoIterator<Item = T>, f: impl Fn(T) -> f64) -> f64 {
    items.into_iter().map(f).fold(0.0, f64::max)
}

fn algebra_checks(out: &mut Vec<Check>) {
    let mut fib = (1usize, 1usize);
    let mut ok = true;
    for n in 1..=16i64 {
        let want = if n == 1 { 1 } else { fib.0 + fib.1 };
        if n >= 2 {
            fib = (fib.1, want);
        }
        ok &= enumerate_basis(n).map(|b| b.dim()).ok() == Some(if n == 1 { 1 } else { fib.1 });
    }
    let b6 = enumerate_basis(6).expect("n = 6");
    ok &= b6.block_size(QSpin::Zero) == 5 && b6.block_size(QSpin::One) == 8;
    out.push(Check { name: "dimension law", passed: ok, detail: "n = 1..16, n = 6 split 5 + 8".into() });

    let reps: Vec<_> = (3..=6).map(|n| representation(n).expect("n in 3..=6")).collect();
    out.push(check(
        "unitarity",
        max_over(&reps, |r| max_over(1..r.strands(), |i| crate::matrix::unitarity_defect(r.generator(i)))),
        1e-12,
    ));
    out.push(check(
        "Yang-Baxter",
        max_over(&reps, |r| {
            max_over(1..r.strands() - 1, |i| {
                let (a, b) = (r.generator(i), r.generator(i + 1));
                op_norm(&(a * b * a - b * a * b))
            })
        }),
        1e-12,
    ));
    out.push(check(
        "far commutation",
        max_over(&reps, |r| {
            let n = r.strands();
            max_over((1..n).flat_map(|i| (i + 2..n).map(move |j| (i, j))), |(i, j)| {
                let (a, b) = (r.generator(i), r.generator(j));
                op_norm(&(a * b - b * a))
            })
        }),
        1e-12,
    ));
    out.push(check(
        "tenth power is identity",
        max_over(&reps, |r| max_over(1..r.strands(), |i| op_norm(&(r.power(i, 5) * r.power(i, 5) - identity(r.dim()))))),
        1e-12,
    ));
    out.push(check(
        "charge blocks preserved",
        max_over(&reps, |r| max_over(1..r.strands(), |i| crate::algebra::generator(r.strands() as i64, i as i64).map(|g| g.max_off_block()).unwrap_or(f64::INFINITY))),
        1e-12,
    ));
    let k = ModelConstants::standard();
    let s2 = representation(3).expect("n = 3").generator(2).clone();
    out.push(check("|sigma2[0][0]| = tau", (s2[(0, 0)].norm() - k.tau).abs(), 1e-12));
}

fn word_checks(out: &mut Vec<Check>, rng: &mut ChaCha8Rng) {
    let mut round_trip = true;
    let mut canon = 0.0f64;
    let mut homo = 0.0f64;
    for _ in 0..1000 {
        let n = rng.gen_range(3..=6);
        let len = rng.gen_range(0..12);
        let w = random_word(rng, n, len);
        let c = w.free_reduce();
        round_trip &= parse(&format(&c), n).ok().as_ref() == Some(&c) && c.is_canonical();
        let (u, v) = (evaluate(&w, n).expect("valid"), evaluate(&c, n).expect("valid"));
        canon = canon.max(op_norm(&(u.entries - v.entries)));
        let x = random_word(rng, n, 3);
        let ux = evaluate(&x, n).expect("valid").entries;
        let uc = evaluate(&c, n).expect("valid").entries;
        let joint = evaluate(&c.then(&x).expect("same strands"), n).expect("valid").entries;
        homo = homo.max(op_norm(&(joint - ux * uc)));
    }
    out.push(Check { name: "parse/format round trip", passed: round_trip, detail: "1000 random words".into() });
    out.push(check("canonicalization preserves the unitary", canon, 1e-12));
    out.push(check("evaluation is a homomorphism", homo, 1e-12));

    let mut worst = 0.0f64;
    for _ in 0..20 {
        let u = evaluate(&random_word(rng, 3, 6), 3).expect("valid").entries;
        let v = evaluate(&random_word(rng, 3, 6), 3).expect("valid").entries;
        let (e, _) = phase_distance(&u, &v).expect("same shape");
        let (n, _) = phase_distance_numeric(&u, &v).expect("same shape");
        worst = worst.max((e - n).abs());
    }
    out.push(check("phase-free distance matches numeric minimization", worst, 1e-8));
}

fn search_checks(out: &mut Vec<Check>, rng: &mut ChaCha8Rng) {
    let mut worst = 0.0f64;
    for k in 0..5 {
        let q = random_rotation(rng);
        let t = GateTarget::block(to_matrix(&q), true).expect("unitary");
        let mut opts = SearchOptions::with_length(8);
        if k % 2 == 1 {
            opts = opts.weave(2, Some(2));
        }
        match (exhaustive_search(&t, &opts), mitm_search(&t, &opts)) {
            (Ok(a), Ok(b)) => worst = worst.max((a.epsilon - b.epsilon).abs()),
            _ => worst = f64::INFINITY,
        }
    }
    out.push(check("meet-in-the-middle agrees with exhaustive search", worst, 1e-12));
}

fn two_qubit_checks(out: &mut Vec<Check>) {
    let w = |p: &[(usize, i64)], s: usize| classify_weave(&BraidWord::from_pairs(3, p).expect("valid"), s).expect("weave");
    let ret = w(&[(1, 1), (2, 2), (1, -1)], 1);
    let lifted = lift_weave(&ret, 1, N_ANYONS).and_then(|x| evaluate(&x, N_ANYONS));
    let u3 = evaluate(&ret.word, 3).expect("valid").entries;
    let lo = lift_op(&u3, 1, 1, N_ANYONS);
    let dev = match (lifted, lo) {
        (Ok(a), Ok(b)) => op_norm(&(a.entries - b)),
        _ => f64::INFINITY,
    };
    out.push(check("lifted weave equals lifted operator", dev, 1e-12));

    let emb = QubitLayout::default().embedding().expect("layout");
    let cnot = compile_cnot(&w(&[(1, 1), (2, 3)], 1), &w(&[(1, 2), (2, 2), (1, -4)], 2))
        .and_then(|(c, _)| c.ideal_operator());
    let (mut eps, mut sq, mut leak) = (f64::INFINITY, f64::INFINITY, f64::INFINITY);
    if let Ok(u) = cnot {
        leak = leakage(&u, &emb);
        eps = 0.0;
        sq = 0.0;
        for (_, a) in computational_blocks(&u, &emb) {
            let (e, fit) = align_phases(&a, &cnot_matrix());
            let c: CMatrix = fit.strip(&a);
            eps = eps.max(e);
            sq = sq.max(op_norm(&(&c * &c - identity(4))));
        }
    }
    out.push(check("exact-component CNOT up to phases", eps.max(leak), 1e-10));
    out.push(check("exact-component CNOT squared", sq, 1e-10));

    let phase = compile_controlled_phase(1, &ret).and_then(|(c, _)| c.ideal_operator());
    let dev = match phase {
        Ok(u) => max_over(computational_blocks(&u, &emb), |(_, a)| {
            let d = (a[(2, 2)] / a[(3, 3)]).arg().rem_euclid(2.0 * std::f64::consts::PI);
            (d - 6.0 * std::f64::consts::PI / 5.0).abs()
        })
        .max(leakage(&u, &emb)),
        Err(_) => f64::INFINITY,
    };
    out.push(check("controlled phase angle 6pi/5", dev, 1e-10));
}

fn sk_checks(out: &mut Vec<Check>, rng: &mut ChaCha8Rng) {
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let d = random_rotation(rng);
        let d = crate::sk::rotation([d.i, d.j, d.k], rng.gen_range(0.0..1.5));
        match group_commutator_decompose(&d) {
            Ok((v, w)) => worst = worst.max(projective_distance(&(v * w * v.conjugate() * w.conjugate()), &d)),
            Err(_) => worst = f64::INFINITY,
        }
    }
    out.push(check("group commutator reproduces its input", worst, 1e-10));

    let res = BaseNet::build(12, 2).and_then(|net| {
        let t = to_matrix(&random_rotation(rng));
        let r = sk_refine(&t, &SkParams::new(2), &net)?;
        let u = evaluate(&r.word, 3)?.entries;
        let (e, _) = GateTarget::block(t, true)?.epsilon(&u)?;
        let weave = classify_weave(&r.word, 2)?;
        let monotone = r.trace.windows(2).all(|p| p[1].epsilon < p[0].epsilon);
        Ok((e - r.epsilon).abs() + if weave.returns_to_start() && monotone { 0.0 } else { 1.0 })
    });
    out.push(check("refined words re-evaluate to their reported error", res.unwrap_or(f64::INFINITY), 1e-10));
}

/// Run every check with a fixed seed.
pub fn invariant_suite(seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    algebra_checks(&mut out);
    word_checks(&mut out, &mut rng);
    search_checks(&mut out, &mut rng);
    two_qubit_checks(&mut out);
    sk_checks(&mut out, &mut rng);
    out
}

#[cfg(test)]
mod tests {
    #[test]
    fn suite_passes() {
        for c in super::invariant_suite(1) {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }
}
