//! Acceptance run. Each criterion prints one PASS/FAIL line; the process exits
//! nonzero if any criterion fails.

use std::time::{Duration, Instant};

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use srcirc::canonical::{
    det2, eval_ab, hamiltonian, kernel_k, ode_residual, reconstruct_polynomial, transfer_product,
    StepHamiltonian,
};
use srcirc::certify::{certify_on_circle, symbolic_delta, CertOutcome};
use srcirc::criterion::{delta_omega, delta_simple, verdict_simple, VerdictClass};
use srcirc::embedding::{embed_simple, CoeffVector, LogScale};
use srcirc::exact::{det_bareiss, int, rat, to_f64, ExtRational, Poly, Rational};
use srcirc::expoly::{eval_a_b, eval_e};
use srcirc::oracle::{verdict_oracle, RootClass};
use srcirc::recursion::{build_pk, build_qk, delta_recursive, det_pk_closed_form, pinv_times_q};

const SEED: u64 = 0x5eed_c1c1;

struct Line {
    ok: bool,
    detail: String,
}

fn line(ok: bool, detail: impl Into<String>) -> Line {
    Line { ok, detail: detail.into() }
}

fn random_int_coeffs(rng: &mut ChaCha8Rng, g: usize) -> CoeffVector {
    let mut c: Vec<i64> = (0..=g).map(|_| rng.gen_range(-9..=9)).collect();
    while c[0] == 0 {
        c[0] = rng.gen_range(-9..=9);
    }
    CoeffVector::from_ints(&c).unwrap()
}

fn random_rational(rng: &mut ChaCha8Rng, nonzero: bool) -> Rational {
    loop {
        let r = rat(rng.gen_range(-20..=20), rng.gen_range(1..=9));
        if !nonzero || !r.is_zero() {
            return r;
        }
    }
}

/// `prod (x^2 - 2 lambda x + 1)`; roots on the unit circle when every
/// `|lambda| < 1`, simple when the lambdas are distinct.
fn from_lambdas(lambdas: &[Rational]) -> CoeffVector {
    let mut p = Poly::one();
    for l in lambdas {
        p = &p * &Poly::new(vec![int(1), -(int(2) * l), int(1)]);
    }
    let full: Vec<Rational> = (0..=2 * lambdas.len()).map(|k| p.coeff(k)).collect();
    CoeffVector::from_palindrome(&full).unwrap()
}

fn distinct_lambdas(rng: &mut ChaCha8Rng, g: usize) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::with_capacity(g);
    while out.len() < g {
        let q = rng.gen_range(2..=7);
        let l = rat(rng.gen_range(-q + 1..q), q);
        if !out.contains(&l) {
            out.push(l);
        }
    }
    out
}

/// Inputs with known root geometry, per `g`: simple on-circle, repeated
/// on-circle roots, and one pair pushed off the circle.
fn constructed(rng: &mut ChaCha8Rng, g: usize, simple: usize) -> Vec<CoeffVector> {
    let mut out = Vec::new();
    for _ in 0..simple {
        out.push(from_lambdas(&distinct_lambdas(rng, g)));
    }
    if g >= 2 {
        let mut l = distinct_lambdas(rng, g - 1);
        l.push(l[0].clone());
        out.push(from_lambdas(&l));
    }
    let mut l = distinct_lambdas(rng, g);
    l[0] = rat(rng.gen_range(5..=9), 4);
    out.push(from_lambdas(&l));
    out
}

fn random_corpus(per_g: usize, seed: u64) -> Vec<CoeffVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (1..=6)
        .flat_map(|g| (0..per_g).map(|_| random_int_coeffs(&mut rng, g)).collect::<Vec<_>>())
        .collect()
}

fn constructed_corpus(seed: u64, simple: usize) -> Vec<CoeffVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![CoeffVector::from_ints(&[1, 0, 2]).unwrap()];
    for g in 1..=6 {
        out.extend(constructed(&mut rng, g, simple));
    }
    out
}

fn finite(e: &ExtRational) -> Option<&Rational> {
    e.finite()
}

// 1 ---------------------------------------------------------------------------

fn golden_g2() -> Line {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 1);
    let l = LogScale::default();
    let (mut checked, mut bad) = (0, Vec::new());
    for _ in 0..200 {
        let (c0, c1, c2) = (
            random_rational(&mut rng, true),
            random_rational(&mut rng, false),
            random_rational(&mut rng, false),
        );
        let c = CoeffVector::new(vec![c0.clone(), c1.clone(), c2.clone()]).unwrap();
        let d = delta_simple(&c, &l).unwrap().deltas();
        let two = int(2);
        let four = int(4);
        let eight = int(8);
        let forms = [
            (&four * &c0 + &c1, &four * &c0 - &c1),
            (
                &eight * &c0 * &c0 - &two * &c1 * &c1 + &four * &c0 * &c2,
                &eight * &c0 * &c0 + &c1 * &c1 - &four * &c0 * &c2,
            ),
            (&two * &c0 + &two * &c1 + &c2, &two * &c0 - &two * &c1 + &c2),
        ];
        for (i, (num, den)) in forms.iter().enumerate() {
            let n = i + 2;
            if den.is_zero() {
                // the closed form has a pole; the determinant form must not be finite and positive
                if d[n - 1].is_positive_finite() {
                    bad.push(format!("{c:?} n={n}"));
                }
                continue;
            }
            checked += 1;
            if finite(&d[n - 1]) != Some(&(num / den)) {
                bad.push(format!("c=({c0},{c1},{c2}) n={n}: got {:?}", d[n - 1]));
            }
        }
    }
    let el = start.elapsed();
    let ok = bad.is_empty() && el < Duration::from_secs(5);
    line(
        ok,
        format!(
            "g=2 closed forms for delta_2..4: {checked} exact matches, {} mismatches, {:.2?} (limit 5s){}",
            bad.len(),
            el,
            bad.first().map(|b| format!("; first: {b}")).unwrap_or_default()
        ),
    )
}

// 2, 3, 4 ---------------------------------------------------------------------

fn delta_one(corpus: &[CoeffVector]) -> Line {
    let l = LogScale::default();
    let bad = corpus
        .par_iter()
        .filter(|c| delta_simple(c, &l).unwrap().deltas()[0] != ExtRational::Finite(int(1)))
        .count();
    line(bad == 0, format!("delta_1 = 1 on {} inputs, {bad} exceptions", corpus.len()))
}

fn q_independence(corpus: &[CoeffVector]) -> Line {
    let bad = corpus
        .par_iter()
        .filter(|c| {
            let a = delta_simple(c, &LogScale::new(int(2), c.g()).unwrap()).unwrap();
            let b = delta_simple(c, &LogScale::new(int(3), c.g()).unwrap()).unwrap();
            a.deltas() != b.deltas() || a.zero_pattern() != b.zero_pattern()
        })
        .count();
    line(
        bad == 0,
        format!("delta and det-zero pattern identical at log q = 2 and 3 on {} inputs, {bad} differ", corpus.len()),
    )
}

fn route_equivalence(corpus: &[CoeffVector]) -> Line {
    let l = LogScale::default();
    let results: Vec<(bool, bool, bool)> = corpus
        .par_iter()
        .map(|c| {
            let rep = delta_simple(c, &l).unwrap();
            let degenerate = rep.zero_pattern().iter().any(|&(p, m)| p || m);
            match delta_recursive(c, &l) {
                Ok(rec) => {
                    let same = rep.deltas().iter().zip(&rec).all(|(d, r)| finite(d) == Some(r));
                    (degenerate, true, same || degenerate)
                }
                Err(_) => (degenerate, false, degenerate),
            }
        })
        .collect();
    let compared = results.iter().filter(|r| !r.0 && r.1).count();
    let broke = results.iter().filter(|r| !r.1).count();
    let bad = results.iter().filter(|r| !r.2).count();
    line(
        bad == 0,
        format!(
            "recursion vs determinants: {compared} non-degenerate inputs compared, {broke} breakdowns, {bad} violations"
        ),
    )
}

// 5, 6 ------------------------------------------------------------------------

fn oracle_agreement(corpus: &[CoeffVector], extra: &[CoeffVector]) -> Line {
    let start = Instant::now();
    let all: Vec<&CoeffVector> = corpus.iter().chain(extra).collect();
    let res: Vec<Option<bool>> = all
        .par_iter()
        .map(|c| {
            let simple = verdict_simple(c).unwrap().class == VerdictClass::SimpleOnCircle;
            match verdict_oracle(c).unwrap().class() {
                RootClass::Uncertain => None,
                k => Some(simple == (k == RootClass::AllSimpleOnT)),
            }
        })
        .collect();
    let el = start.elapsed();
    let uncertain = res.iter().filter(|r| r.is_none()).count();
    let bad = res.iter().filter(|r| **r == Some(false)).count();
    line(
        bad == 0 && el < Duration::from_secs(60),
        format!(
            "verdict_simple vs root oracle on {} inputs: {bad} disagreements, {uncertain} uncertain, {:.2?} (limit 60s)",
            all.len(),
            el
        ),
    )
}

fn certified_split(corpus: &[CoeffVector], extra: &[CoeffVector]) -> Line {
    let all: Vec<&CoeffVector> = corpus.iter().chain(extra).collect();
    let res: Vec<(Option<bool>, bool)> = all
        .par_iter()
        .map(|c| {
            let cert = certify_on_circle(c).unwrap();
            let inconclusive = matches!(cert.outcome, CertOutcome::Inconclusive { .. });
            match verdict_oracle(c).unwrap().class() {
                RootClass::Uncertain => (None, inconclusive),
                k => (Some(cert.is_on_circle() == (k != RootClass::OffT) && !inconclusive), inconclusive),
            }
        })
        .collect();
    let bad = res.iter().filter(|r| r.0 == Some(false)).count();
    let inconclusive = res.iter().filter(|r| r.1).count();

    let sq = CoeffVector::from_ints(&[1, 0, 2]).unwrap();
    let v = verdict_simple(&sq).unwrap();
    let sq_ok = certify_on_circle(&sq).unwrap().is_on_circle()
        && v.class != VerdictClass::SimpleOnCircle
        && v.reports[0].deltas()[2] == ExtRational::Infinity;
    line(
        bad == 0 && sq_ok,
        format!(
            "certify vs oracle on/off split on {} inputs: {bad} disagreements, {inconclusive} inconclusive; (x^2+1)^2 CertifiedOnT with delta_3 = inf: {sq_ok}",
            all.len()
        ),
    )
}

// 7 ---------------------------------------------------------------------------

/// `K` is fitted per `(input, n)` as twice the larger of the two ratios
/// `|delta_n(c; t) - delta_n(c)| / log t` at `t = 1 + 2^-4` and `1 + 2^-5`.
fn limit_law(items: &[CoeffVector]) -> Line {
    let l = LogScale::default();
    let res: Vec<(usize, usize, usize)> = items
        .par_iter()
        .map(|c| {
            let base = delta_simple(c, &l).unwrap().deltas();
            let base: Vec<Rational> = base.iter().map(|d| finite(d).unwrap().clone()).collect();
            let err_at = |k: u32| -> Vec<f64> {
                let t = int(1) + rat(1, 1i64 << k);
                delta_omega(c, &t)
                    .unwrap()
                    .deltas()
                    .iter()
                    .zip(&base)
                    .map(|(d, b)| match finite(d) {
                        Some(v) => to_f64(&(v - b).abs()),
                        None => f64::INFINITY,
                    })
                    .collect()
            };
            let log_t = |k: u32| (1.0 + 0.5f64.powi(k as i32)).ln();
            let (e4, e5) = (err_at(4), err_at(5));
            let kfit: Vec<f64> = e4
                .iter()
                .zip(&e5)
                .map(|(a, b)| 2.0 * (a / log_t(4)).max(b / log_t(5)))
                .collect();
            let mut bound_bad = 0;
            for k in 4..=12 {
                let e = err_at(k);
                bound_bad += e.iter().zip(&kfit).filter(|(e, kf)| !(**e <= **kf * log_t(k))).count();
            }
            // exact value at t = 1 of the reduced rational functions
            let (mut defined, mut exact_bad) = (0, 0);
            for s in symbolic_delta(c).unwrap() {
                if let Some(v) = s.eval(&int(1)) {
                    defined += 1;
                    if v != base[s.n - 1] {
                        exact_bad += 1;
                    }
                }
            }
            (bound_bad, defined, exact_bad)
        })
        .collect();
    let bound_bad: usize = res.iter().map(|r| r.0).sum();
    let defined: usize = res.iter().map(|r| r.1).sum();
    let exact_bad: usize = res.iter().map(|r| r.2).sum();
    line(
        bound_bad == 0 && exact_bad == 0 && defined > 0,
        format!(
            "{} simple on-circle inputs, k = 4..12: {bound_bad} bound violations; exact t=1 limit defined for {defined} deltas, {exact_bad} mismatches",
            items.len()
        ),
    )
}

// 8 ---------------------------------------------------------------------------

fn lemma_closed_forms() -> Line {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    let (mut det_bad, mut block_bad, mut cases) = (0, 0, 0);
    for k in 1..=12 {
        let q = build_qk(k);
        for _ in 0..20 {
            let m = random_rational(&mut rng, true);
            let p = build_pk(k, &m);
            cases += 1;
            if det_bareiss(&p).unwrap() != det_pk_closed_form(k, &m) {
                det_bad += 1;
            }
            if p.mul(&pinv_times_q(k, &m).unwrap()).unwrap() != q {
                block_bad += 1;
            }
        }
    }
    line(
        det_bad == 0 && block_bad == 0,
        format!("{cases} (k, m) cases, k <= 12: {det_bad} determinant mismatches, {block_bad} block-product mismatches"),
    )
}

// 9 ---------------------------------------------------------------------------

fn canonical_checks(items: &[CoeffVector]) -> Line {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    let l = LogScale::default();
    let mut worst_boundary = 0.0f64;
    let mut worst_det = 0.0f64;
    let mut worst_det_scaled = 0.0f64;
    let mut worst_terminal = 0.0f64;
    let mut orders: Vec<f64> = Vec::new();
    let mut kernel_bad = 0;
    let mut points = 0;
    for c in items {
        let h: StepHamiltonian = hamiltonian(c, &l).unwrap();
        let s = embed_simple(c, &l).unwrap();
        let e0 = eval_e(&s, &l, Complex64::new(0.0, 0.0)).unwrap();
        worst_terminal = worst_terminal.max((e0 - to_f64(&c.p_at_one())).norm());
        for _ in 0..100 {
            let z = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-0.5..0.5));
            points += 1;
            let (a, b) = eval_a_b(&s, &l, z).unwrap();
            let (a1, b1) = eval_ab(&h, z, 1, 0.0).unwrap();
            let scale = 1.0 + a.norm().max(b.norm());
            worst_boundary = worst_boundary.max((a - a1).norm().max((b - b1).norm()) / scale);

            let n = rng.gen_range(1..=2 * c.g());
            let frac = rng.gen_range(0.0..1.0);
            // a 2x2 determinant in f64 carries about eps * |M|^2 of cancellation
            let m = transfer_product(&h, n, frac, z).unwrap();
            let size = m.iter().flatten().map(|e| e.norm()).fold(1.0, f64::max);
            let err = (det2(&m) - 1.0).norm();
            worst_det = worst_det.max(err);
            worst_det_scaled = worst_det_scaled.max(err / (size * size));

            let (at, bt) = eval_ab(&h, z, 2 * c.g(), 1.0 - 1e-13).unwrap();
            worst_terminal = worst_terminal.max((at - e0).norm().max(bt.norm()) / (1.0 + e0.norm()));

            let zu = Complex64::new(z.re, z.im.abs() + 0.05);
            let k = kernel_k(&h, n, frac, zu, zu).unwrap();
            if !(k.re > 0.0) || k.im.abs() > 1e-9 * k.re {
                kernel_bad += 1;
            }
        }
        for _ in 0..5 {
            let z = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-0.5..0.5));
            let n = rng.gen_range(1..=2 * c.g());
            let (a1, b1) = ode_residual(&h, z, n, 0.5, 1e-2).unwrap();
            let (a2, b2) = ode_residual(&h, z, n, 0.5, 5e-3).unwrap();
            let (r1, r2) = (a1.max(b1), a2.max(b2));
            if r2 > 1e-9 {
                orders.push((r1 / r2).log2());
            }
        }
    }
    let el = start.elapsed();
    let order_min = orders.iter().cloned().fold(f64::INFINITY, f64::min);
    let order_max = orders.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let ok = worst_boundary <= 1e-10
        && worst_det_scaled <= 1e-12
        && worst_terminal <= 1e-10
        && !orders.is_empty()
        && order_min > 1.8
        && order_max < 2.2
        && kernel_bad == 0
        && el < Duration::from_secs(30);
    line(
        ok,
        format!(
            "{} inputs, {points} points: boundary {worst_boundary:.1e}, |det-1| {worst_det_scaled:.1e} relative to |M|^2 ({worst_det:.1e} absolute), terminal {worst_terminal:.1e}, ODE order [{order_min:.3}, {order_max:.3}] over {} stencils, {kernel_bad} non-positive kernels, {:.2?} (limit 30s)",
            items.len(),
            orders.len(),
            el
        ),
    )
}

// 10 --------------------------------------------------------------------------

fn round_trip(items: &[CoeffVector]) -> Line {
    let l = LogScale::default();
    let bad = items
        .par_iter()
        .filter(|c| {
            let h = hamiltonian(c, &l).unwrap();
            reconstruct_polynomial(&h.gammas(), &h.e0).ok().as_ref() != Some(*c)
        })
        .count();
    line(bad == 0, format!("hamiltonian -> reconstruct on {} simple on-circle inputs, {bad} differ", items.len()))
}

fn simple_on_circle(items: &[CoeffVector]) -> Vec<CoeffVector> {
    items
        .par_iter()
        .filter(|c| verdict_simple(c).unwrap().class == VerdictClass::SimpleOnCircle)
        .cloned()
        .collect()
}

fn main() {
    let total = Instant::now();
    let small = random_corpus(200, SEED ^ 2);
    let big = random_corpus(500, SEED ^ 5);
    let extra = constructed_corpus(SEED ^ 6, 4);

    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let limit_items: Vec<CoeffVector> = (0..50)
        .map(|i| from_lambdas(&distinct_lambdas(&mut rng, 1 + i % 4)))
        .collect();

    let mut lines = Vec::new();
    let mut run = |k: usize, f: &dyn Fn() -> Line| {
        let t = Instant::now();
        let r = f();
        println!(
            "{} criterion {k}: {} [{:.2?}]",
            if r.ok { "PASS" } else { "FAIL" },
            r.detail,
            t.elapsed()
        );
        lines.push(r.ok);
    };
    run(1, &golden_g2);
    run(2, &|| delta_one(&small));
    run(3, &|| q_independence(&small));
    run(4, &|| route_equivalence(&small));
    run(5, &|| oracle_agreement(&big, &extra));
    run(6, &|| certified_split(&big, &extra));
    run(7, &|| limit_law(&limit_items));
    run(8, &lemma_closed_forms);
    let hb: Vec<CoeffVector> = simple_on_circle(&extra);
    run(9, &|| canonical_checks(&hb.iter().filter(|c| c.g() <= 4).cloned().collect::<Vec<_>>()));
    let mut rt = simple_on_circle(&big);
    rt.extend(hb.iter().cloned());
    run(10, &|| round_trip(&rt));

    let passed = lines.iter().filter(|ok| **ok).count();
    println!("acceptance: {passed}/{} criteria passed in {:.2?}", lines.len(), total.elapsed());
    if passed != lines.len() {
        std::process::exit(1);
    }
}
