//! Acceptance harness: one pass/fail line per criterion.
//!
//! 1. Oracle equivalence over F_2, n <= 4, every pair, both modes.
//! 2. Oracle equivalence over F_3, n <= 3.
//! 3. Witness round trip on every YES class of 1 and 2 and on the rational
//!    atlas for p = q = t^2 + 1 up to size 8.
//! 4. Verdicts of the worked rational examples.
//! 5. Block-cyclic invariant-factor law.
//! 6. Identities of the algebra `W(p,q,x)`.
//! 7. Hensel-lifted splittings over F_2, F_3 and F_5.
//! 8. Polynomial transform laws.
//! 9. Command-line golden files.

mod common;

use std::time::Instant;

use pqdecomp_core::canon::{block_cyclic_invariants, companion_sum};
use pqdecomp_core::classify::{classify_matrix, indecomposable_atlas, ClassifyOptions, Mode, QuadraticPair, Verdict};
use pqdecomp_core::construct::{build_witness, verify};
use pqdecomp_core::field::{BaseField, ExtElem, Field, Fp, QElem, QuotientRing, RatFunc, Rational, Ring};
use pqdecomp_core::linalg::{companion, Matrix};
use pqdecomp_core::oracle::{all_pairs, compare_with_classifier, enumerate_reachable, ClassCache, DEFAULT_MATRIX_CAP};
use pqdecomp_core::poly::factor::FactorOptions;
use pqdecomp_core::poly::transform::{
    difference_shape, difference_shape_inverse, g_differential, homothety, palindromial_split, r_delta,
    r_delta_inverse, translate,
};
use pqdecomp_core::poly::Poly;
use pqdecomp_core::quadform::{isotropy, IsotropyOptions, IsotropyVerdict};
use pqdecomp_core::walgebra::{hensel_adapted_pair, split_to_2x2, WAlgebra, WElement};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

type Outcome = Result<String, String>;

/// YES classes met during the oracle sweeps, kept for the round trip.
struct YesClass {
    pair: QuadraticPair<Fp>,
    matrix: Matrix<Fp>,
}

fn oracle_sweep(prime: u64, nmax: usize, yes: &mut Vec<YesClass>) -> Outcome {
    let opts = ClassifyOptions { transition: false, ..ClassifyOptions::default() };
    let mut cache = ClassCache::new();
    let (mut pairs, mut classes) = (0, 0);
    for mode in [Mode::Difference, Mode::Quotient] {
        for pair in all_pairs(prime, mode).map_err(|e| e.to_string())? {
            pairs += 1;
            for n in 1..=nmax {
                let table = enumerate_reachable(&pair, n, DEFAULT_MATRIX_CAP, &mut cache).map_err(|e| e.to_string())?;
                let report = compare_with_classifier(&table, &opts).map_err(|e| e.to_string())?;
                if let Some(m) = report.first() {
                    return Err(format!("p = {}, q = {}, {mode}, n = {n}: {m}", pair.p, pair.q));
                }
                classes += table.classes.len();
                for c in table.classes.iter().filter(|c| c.reachable()) {
                    yes.push(YesClass { pair: pair.clone(), matrix: companion_sum(&prime, &c.factors) });
                }
            }
        }
    }
    Ok(format!("{pairs} pair/mode combinations, {classes} classes, empty reports"))
}

fn round_trip<F: BaseField>(m: &Matrix<F>, pair: &QuadraticPair<F>, opts: &ClassifyOptions) -> Result<(), String> {
    let cert = classify_matrix(m, pair, opts).map_err(|e| e.to_string())?;
    if cert.verdict != Verdict::Yes {
        return Err(format!("expected YES, got {}", cert.verdict));
    }
    let w = build_witness(m, pair, &cert, opts, 0).map_err(|e| e.to_string())?;
    if w.verified && verify(m, &w.a, &w.b, &pair.p, &pair.q, pair.mode) {
        Ok(())
    } else {
        Err("witness failed verification".into())
    }
}

fn witness_round_trip(yes: &[YesClass]) -> Outcome {
    let opts = ClassifyOptions::default();
    for c in yes {
        round_trip(&c.matrix, &c.pair, &opts)
            .map_err(|e| format!("F_{} p = {} q = {} {}: {e}", c.pair.ctx(), c.pair.p, c.pair.q, c.pair.mode))?;
    }
    let mut atlas = 0;
    let circle = Poly::<Rational>::from_i64s(&(), &[1, 0, 1]);
    for mode in [Mode::Difference, Mode::Quotient] {
        let pair = QuadraticPair::new(circle.clone(), circle.clone(), mode, &FactorOptions::default())
            .map_err(|e| e.to_string())?;
        for e in indecomposable_atlas(&pair, 8, &opts).map_err(|e| e.to_string())? {
            round_trip(&e.matrix, &pair, &opts).map_err(|err| format!("{mode} {} {}: {err}", e.label, pair.p))?;
            atlas += 1;
        }
    }
    Ok(format!("{} oracle classes and {atlas} rational atlas blocks verified", yes.len()))
}

fn rational_examples() -> Outcome {
    let opts = ClassifyOptions::default();
    let qp = |c: &[i64]| Poly::<Rational>::from_i64s(&(), c);
    let circle = qp(&[1, 0, 1]);
    let pair = |mode| QuadraticPair::new(circle.clone(), circle.clone(), mode, &FactorOptions::default()).unwrap();
    let (quot, diff) = (pair(Mode::Quotient), pair(Mode::Difference));
    let single = |f: &Poly<Rational>| companion_sum(&(), std::slice::from_ref(f));
    let doubled = |f: &Poly<Rational>| companion_sum(&(), &[f.clone(), f.clone()]);
    let cases: Vec<(&str, Matrix<Rational>, &QuadraticPair<Rational>, Verdict)> = vec![
        ("quotient C(t^2-3t+1)", single(&qp(&[1, -3, 1])), &quot, Verdict::Yes),
        ("quotient C(t^2-t+1)", single(&qp(&[1, -1, 1])), &quot, Verdict::No),
        ("quotient C(t^2-t+1) doubled", doubled(&qp(&[1, -1, 1])), &quot, Verdict::Yes),
        ("difference C(t^2+2)", single(&qp(&[2, 0, 1])), &diff, Verdict::No),
        ("difference C(t^2+2) doubled", doubled(&qp(&[2, 0, 1])), &diff, Verdict::Yes),
        ("difference C(t^2-1)", single(&qp(&[-1, 0, 1])), &diff, Verdict::Yes),
    ];
    for (name, m, pair, want) in &cases {
        let got = classify_matrix(m, pair, &opts).map_err(|e| e.to_string())?.verdict;
        if got != *want {
            return Err(format!("{name}: expected {want}, got {got}"));
        }
        if *want == Verdict::Yes {
            round_trip(m, pair, &opts).map_err(|e| format!("{name}: {e}"))?;
        }
    }
    Ok(format!("{} verdicts as expected, YES instances with verified witnesses", cases.len()))
}

fn irreducibles(prime: u64) -> Vec<Poly<Fp>> {
    let elems = Fp::elements(&prime, 64).unwrap();
    let opts = FactorOptions::default();
    (1..=2)
        .flat_map(|d| Poly::all_monic(&prime, &elems, d))
        .filter(|r| {
            let f = Fp::factor(r, &opts).unwrap();
            f.factors.len() == 1 && f.factors[0].1 == 1
        })
        .collect()
}

fn block_cyclic() -> Outcome {
    let mut checked = 0;
    for prime in [2u64, 3] {
        for pirr in irreducibles(prime) {
            for n in 1..=5 {
                let (pred, comp) = block_cyclic_invariants(&companion(&pirr), &pirr, n).map_err(|e| e.to_string())?;
                if pred != comp {
                    return Err(format!("F_{prime}, P = {pirr}, n = {n}"));
                }
                checked += 1;
            }
        }
    }
    let s = RatFunc::s(2);
    let pirr = Poly::new(&2, vec![s, RatFunc::zero(&2), RatFunc::one(&2)]);
    for n in 1..=5 {
        let (pred, comp) = block_cyclic_invariants(&companion(&pirr), &pirr, n).map_err(|e| e.to_string())?;
        if pred != comp {
            return Err(format!("F_2(s), P = {pirr}, n = {n}"));
        }
        checked += 1;
    }
    Ok(format!("{checked} (P, n) configurations agree"))
}

fn w_identities<F: Field>(ctx: &F::Ctx, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || F::random(ctx, &mut rng);
    let (lambda, mu, alpha, beta, x) = (draw(), draw(), draw(), draw(), draw());
    let w = WAlgebra::new(lambda.clone(), mu.clone(), alpha.clone(), beta.clone(), x.clone());
    let (a, b) = (w.gen_a(), w.gen_b());
    let i4 = Matrix::identity(ctx, 4);
    let s = |m: &Matrix<F>, c: &F| m.scale(c);
    let check = |ok: bool, what: &str| if ok { Ok(()) } else { Err(format!("{what} fails at seed {seed}")) };
    check(a.mul(b).add(&b.mul(a)) == s(a, &mu).add(&s(b, &lambda)).sub(&s(&i4, &x)), "AB + BA")?;
    check(a.mul(a).sub(&s(a, &lambda)).add(&s(&i4, &alpha)).is_zero(), "p(A) = 0")?;
    check(b.mul(b).sub(&s(b, &mu)).add(&s(&i4, &beta)).is_zero(), "q(B) = 0")?;
    let d = a.sub(b);
    let diff = d.mul(&d).sub(&s(&d, &lambda.sub(&mu)));
    check(diff == s(&i4, &x.sub(&alpha).sub(&beta)), "difference quadratic")?;
    if !beta.is_zero() {
        let u = a.mul(&b.inverse().unwrap());
        let binv = beta.inv();
        check(u.mul(&u) == s(&u, &x.mul(&binv)).sub(&s(&i4, &alpha.mul(&binv))), "quotient quadratic")?;
    }
    let mut elem = || WElement::new(draw(), draw(), draw(), draw());
    let (h1, h2) = (elem(), elem());
    let h1s = w.star(&h1);
    check(w.matrix(&h1).mul(&w.matrix(&h1s)) == s(&i4, &w.norm(&h1)), "h h* = N(h)")?;
    check(w.star(&w.mul(&h1, &h2)) == w.mul(&w.star(&h2), &h1s), "(h1 h2)* = h2* h1*")?;
    let four = F::from_i64(ctx, 4);
    let gamma = lambda.mul(&lambda).mul(&beta).add(&mu.mul(&mu).mul(&alpha)).sub(&four.mul(&alpha).mul(&beta));
    let value = x.mul(&x).sub(&lambda.mul(&mu).mul(&x)).add(&gamma);
    check(w.is_degenerate() == value.is_zero(), "degeneracy polynomial")?;
    if F::characteristic(ctx) != 2 {
        check(w.is_degenerate() == w.gram_singular(), "Gram cross-check")?;
    }
    Ok(())
}

/// Runs `body` on `cases` seeds drawn by proptest.
fn property(cases: u32, body: impl Fn(u64) -> Result<(), String>) -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    runner.run(&any::<u64>(), |seed| body(seed).map_err(TestCaseError::fail)).map_err(|e| e.to_string())
}

fn w_suite() -> Outcome {
    property(1000, |seed| {
        w_identities::<Fp>(&2, seed)?;
        w_identities::<Fp>(&3, seed)?;
        w_identities::<Fp>(&5, seed)?;
        w_identities::<Rational>(&(), seed)
    })?;
    Ok("1000 configurations per field over F_2, F_3, F_5 and Q".into())
}

fn hensel_case(p: &Poly<Fp>, q: &Poly<Fp>, r: &Poly<Fp>, n: usize) -> Result<Option<bool>, String> {
    let residue = QuotientRing::new_unchecked(r, 1);
    let res_embed = |c: &Fp| ExtElem::from_base(&residue, c);
    let res_alg = WAlgebra::from_pair(p, q, ExtElem::generator(&residue), res_embed).map_err(|e| e.to_string())?;
    if res_alg.is_degenerate() {
        return Ok(None);
    }
    let witness = match isotropy(&res_alg, p, q, &IsotropyOptions::default()).map_err(|e| e.to_string())? {
        IsotropyVerdict::Isotropic(w) => w,
        _ => return Ok(None),
    };
    let ring = QuotientRing::new_unchecked(r, n);
    let embed = |c: &Fp| QElem::from_base(&ring, c);
    let alg = WAlgebra::from_pair(p, q, QElem::t(&ring), embed).map_err(|e| e.to_string())?;
    let (x, y) = hensel_adapted_pair(&alg, &witness).map_err(|e| e.to_string())?;
    let anti = alg.add(&alg.mul(&x, &y), &alg.mul(&y, &x));
    let exact = alg.mul(&x, &x).is_zero() && alg.mul(&y, &y).is_zero() && anti == alg.one();
    let (a, b) = split_to_2x2(&alg, &x, &y).map_err(|e| e.to_string())?;
    let pa = a.eval_poly(&p.map(&ring, embed)).is_zero();
    let qb = b.eval_poly(&q.map(&ring, embed)).is_zero();
    Ok(Some(exact && pa && qb))
}

fn hensel_sweep() -> Outcome {
    let mut eligible = 0;
    for prime in [2u64, 3, 5] {
        let elems = Fp::elements(&prime, 64).unwrap();
        let quads = Poly::all_monic(&prime, &elems, 2);
        let rs = irreducibles(prime);
        for p in &quads {
            for q in &quads {
                for r in &rs {
                    for n in 1..=3 {
                        match hensel_case(p, q, r, n)? {
                            Some(true) => eligible += 1,
                            Some(false) => return Err(format!("F_{prime}: p = {p}, q = {q}, r = {r}, n = {n}")),
                            None => {}
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{eligible} eligible configurations split exactly"))
}

fn monic<F: Field>(ctx: &F::Ctx, rng: &mut ChaCha8Rng, deg: usize) -> Poly<F> {
    let mut c: Vec<F> = (0..deg).map(|_| F::random(ctx, rng)).collect();
    c.push(F::one(ctx));
    Poly::new(ctx, c)
}

fn any_poly<F: Field>(ctx: &F::Ctx, rng: &mut ChaCha8Rng, deg: usize) -> Poly<F> {
    Poly::new(ctx, (0..=deg).map(|_| F::random(ctx, rng)).collect())
}

fn nonzero<F: Field>(ctx: &F::Ctx, rng: &mut ChaCha8Rng) -> F {
    loop {
        let d = F::random(ctx, rng);
        if !d.is_zero() {
            return d;
        }
    }
}

fn small(rng: &mut ChaCha8Rng, n: u32) -> usize {
    (rng.next_u32() % n) as usize
}

fn r_delta_law<F: Field>(ctx: &F::Ctx, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (d1, d2) = (small(&mut rng, 4), small(&mut rng, 4));
    let r = monic::<F>(ctx, &mut rng, d1);
    let s = monic::<F>(ctx, &mut rng, d2);
    let delta = nonzero::<F>(ctx, &mut rng);
    let rs = r_delta(&r.mul(&s), &delta).map_err(|e| e.to_string())?;
    let (rr, ss) = (r_delta(&r, &delta).unwrap(), r_delta(&s, &delta).unwrap());
    if rs != rr.mul(&ss) {
        return Err(format!("multiplicativity fails for {r} and {s}"));
    }
    if r.gcd(&s).is_one() && !rr.gcd(&ss).is_one() {
        return Err(format!("coprimality lost for {r} and {s}"));
    }
    if r_delta_inverse(&rs, &delta) != Some(r.mul(&s)) {
        return Err(format!("inverse fails for {r} {s}"));
    }
    Ok(())
}

fn palindromial_law<F: Field>(ctx: &F::Ctx, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = 1 + small(&mut rng, 4);
    let p = any_poly::<F>(ctx, &mut rng, m);
    let q = any_poly::<F>(ctx, &mut rng, m - 1);
    let delta = nonzero::<F>(ctx, &mut rng);
    // R = t^m P(t + δ/t) + t^(m-1) Q(t + δ/t), expanded in powers of t^2 + δ.
    let u = Poly::new(ctx, vec![delta.clone(), F::zero(ctx), F::one(ctx)]);
    let mut big = Poly::zero(ctx);
    let mut upow = Poly::one(ctx);
    for k in 0..=m {
        big = big.add(&upow.shift_up(m - k).scale(&p.coeff(k)));
        if k < m {
            big = big.add(&upow.shift_up(m - 1 - k).scale(&q.coeff(k)));
        }
        upow = upow.mul(&u);
    }
    match palindromial_split(&big, m, &delta) {
        Ok((p2, q2)) if p2 == p && q2 == q => Ok(()),
        _ => Err(format!("split of {big} does not recover {p} and {q}")),
    }
}

fn expansion_law<F: Field>(ctx: &F::Ctx, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let deg = small(&mut rng, 6);
    let r = any_poly::<F>(ctx, &mut rng, deg);
    let (t, x) = (F::random(ctx, &mut rng), F::random(ctx, &mut rng));
    let mut sum = F::zero(ctx);
    let mut xpow = F::one(ctx);
    for n in 0..=deg + 1 {
        sum = sum.add(&g_differential(&r, n).eval(&t).mul(&xpow));
        xpow = xpow.mul(&x);
    }
    if sum == r.eval(&t.add(&x)) {
        Ok(())
    } else {
        Err(format!("expansion of {r} fails"))
    }
}

fn shift_law<F: Field>(ctx: &F::Ctx, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = monic::<F>(ctx, &mut rng, 2);
    let d = F::random(ctx, &mut rng);
    let e = nonzero::<F>(ctx, &mut rng);
    let back = homothety(&homothety(&p, &e).map_err(|e| e.to_string())?, &e.inv()).map_err(|e| e.to_string())?;
    if translate(&translate(&p, &d), &d.neg()) != p || back != p {
        return Err(format!("shifts of {p} do not invert"));
    }
    let deg = small(&mut rng, 4);
    let r = monic::<F>(ctx, &mut rng, deg);
    if difference_shape_inverse(&difference_shape(&r, &d), &d) != Some(r.clone()) {
        return Err(format!("difference shape of {r} does not invert"));
    }
    Ok(())
}

fn transform_laws() -> Outcome {
    let suites: [(&str, fn(u64) -> Result<(), String>); 4] = [
        ("multiplicativity", |s| {
            r_delta_law::<Fp>(&5, s)?;
            r_delta_law::<Fp>(&2, s)?;
            r_delta_law::<Rational>(&(), s)
        }),
        ("palindromial", |s| {
            palindromial_law::<Fp>(&3, s)?;
            palindromial_law::<Fp>(&2, s)?;
            palindromial_law::<Rational>(&(), s)
        }),
        ("expansion", |s| {
            expansion_law::<Fp>(&2, s)?;
            expansion_law::<Fp>(&7, s)?;
            expansion_law::<Rational>(&(), s)
        }),
        ("shifts", |s| {
            shift_law::<Fp>(&3, s)?;
            shift_law::<Fp>(&2, s)?;
            shift_law::<Rational>(&(), s)
        }),
    ];
    for (name, body) in suites {
        property(1000, body).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok("4 suites of 1000 cases each".into())
}

fn golden() -> Outcome {
    let n = common::cases().len();
    if n < 12 {
        return Err(format!("only {n} golden files"));
    }
    let failures = common::check_all();
    if failures.is_empty() {
        Ok(format!("{n} golden files byte-identical, witnesses verify"))
    } else {
        Err(failures.join("\n"))
    }
}

fn main() {
    let mut yes = Vec::new();
    let mut all_ok = true;
    let mut report = |k: usize, name: &str, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {k} {name}: {detail} ({secs:.1}s)"),
            Err(why) => {
                all_ok = false;
                println!("FAIL {k} {name}: {why} ({secs:.1}s)");
            }
        }
    };
    report(1, "oracle equivalence over F_2", &mut || oracle_sweep(2, 4, &mut yes));
    report(2, "oracle equivalence over F_3", &mut || oracle_sweep(3, 3, &mut yes));
    report(3, "witness round trip", &mut || witness_round_trip(&yes));
    report(4, "worked rational examples", &mut rational_examples);
    report(5, "block-cyclic law", &mut block_cyclic);
    report(6, "algebra identities", &mut w_suite);
    report(7, "Hensel splitting", &mut hensel_sweep);
    report(8, "polynomial transform laws", &mut transform_laws);
    report(9, "command-line golden files", &mut golden);
    if !all_ok {
        std::process::exit(1);
    }
}
