//! Field axioms, polynomial arithmetic and dense linear algebra checked on
//! random inputs over every supported coefficient field.

use pqdecomp_core::field::{ExtElem, Field, Fp, QuotientRing, RatFunc, Rational};
use pqdecomp_core::linalg::{companion, Matrix};
use pqdecomp_core::poly::Poly;
use proptest::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

fn field_axioms<F: Field>(ctx: &F::Ctx, seed: u64) -> Result<(), TestCaseError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = F::random(ctx, &mut rng);
    let b = F::random(ctx, &mut rng);
    let c = F::random(ctx, &mut rng);
    let (zero, one) = (F::zero(ctx), F::one(ctx));
    prop_assert_eq!(a.add(&b), b.add(&a));
    prop_assert_eq!(a.mul(&b), b.mul(&a));
    prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
    prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    prop_assert_eq!(a.add(&zero), a.clone());
    prop_assert_eq!(a.mul(&one), a.clone());
    prop_assert!(a.add(&a.neg()).is_zero());
    prop_assert_eq!(a.sub(&b), a.add(&b.neg()));
    if !a.is_zero() {
        prop_assert_eq!(a.mul(&a.inv()), one.clone());
        prop_assert_eq!(b.div(&a).mul(&a), b.clone());
    } else {
        prop_assert!(a.try_inv().is_none());
    }
    let p = F::characteristic(ctx);
    if p > 0 {
        prop_assert!(F::from_i64(ctx, p as i64).is_zero());
    }
    Ok(())
}

fn rand_poly<F: Field>(ctx: &F::Ctx, rng: &mut ChaCha8Rng, deg: usize) -> Poly<F> {
    Poly::new(ctx, (0..=deg).map(|_| F::random(ctx, rng)).collect())
}

fn poly_laws<F: Field>(ctx: &F::Ctx, seed: u64) -> Result<(), TestCaseError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = rand_poly::<F>(ctx, &mut rng, 4);
    let b = rand_poly::<F>(ctx, &mut rng, 3);
    let x = F::random(ctx, &mut rng);
    prop_assert_eq!(a.mul(&b).eval(&x), a.eval(&x).mul(&b.eval(&x)));
    prop_assert_eq!(a.compose(&b).eval(&x), a.eval(&b.eval(&x)));
    if !b.is_zero() {
        let (q, r) = a.divrem(&b);
        prop_assert_eq!(q.mul(&b).add(&r), a.clone());
        prop_assert!(r.degree().unwrap_or(0) < b.degree().unwrap().max(1));
        let g = a.gcd(&b);
        prop_assert!(g.divides(&a) && g.divides(&b));
        let (g2, s, t) = a.xgcd(&b);
        prop_assert_eq!(s.mul(&a).add(&t.mul(&b)), g2.clone());
        prop_assert!(g.divides(&g2) && g2.divides(&g));
    }
    let d = F::random(ctx, &mut rng);
    prop_assert_eq!(a.translate(&d).eval(&x), a.eval(&x.add(&d)));
    prop_assert_eq!(a.mul(&b).derivative(), a.derivative().mul(&b).add(&a.mul(&b.derivative())));
    Ok(())
}

fn matrix_laws<F: Field>(ctx: &F::Ctx, seed: u64, n: usize) -> Result<(), TestCaseError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || -> Matrix<F> {
        Matrix::from_rows(ctx, (0..n).map(|_| (0..n).map(|_| F::random(ctx, &mut rng)).collect()).collect())
    };
    let a = draw();
    let b = draw();
    prop_assert_eq!(a.mul(&b).det(), a.det().mul(&b.det()));
    prop_assert!(a.eval_poly(&a.char_poly()).is_zero());
    prop_assert!(a.eval_poly(&a.min_poly()).is_zero());
    prop_assert!(a.min_poly().divides(&a.char_poly()));
    prop_assert_eq!(a.rank() + a.kernel().len(), n);
    for v in a.kernel() {
        prop_assert!(a.mul_vec(&v).iter().all(|c| c.is_zero()));
    }
    match a.inverse() {
        Some(ai) => {
            prop_assert!(a.mul(&ai).is_identity());
            prop_assert!(!a.det().is_zero());
        }
        None => prop_assert!(a.det().is_zero()),
    }
    prop_assert_eq!(a.mul(&b).transpose(), b.transpose().mul(&a.transpose()));
    prop_assert_eq!(a.mul(&b).trace(), b.mul(&a).trace());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn prime_field_axioms(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3, 5, 7, 101])) {
        field_axioms::<Fp>(&p, seed)?;
        poly_laws::<Fp>(&p, seed)?;
    }

    #[test]
    fn rational_axioms(seed in any::<u64>()) {
        field_axioms::<Rational>(&(), seed)?;
        poly_laws::<Rational>(&(), seed)?;
    }

    #[test]
    fn rational_function_axioms(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3])) {
        field_axioms::<RatFunc>(&p, seed)?;
    }

    #[test]
    fn extension_field_axioms(seed in any::<u64>()) {
        // F_4 = F_2[t]/(t^2+t+1) and F_9 = F_3[t]/(t^2+1).
        for (p, r) in [(2u64, [1i64, 1, 1]), (3, [1, 0, 1])] {
            let field = QuotientRing::new(&Poly::from_i64s(&p, &r), 1).unwrap();
            field_axioms::<ExtElem<Fp>>(&field, seed)?;
            poly_laws::<ExtElem<Fp>>(&field, seed)?;
        }
    }

    #[test]
    fn dense_matrix_laws(seed in any::<u64>(), n in 1usize..5) {
        matrix_laws::<Fp>(&3, seed, n)?;
        matrix_laws::<Rational>(&(), seed, n.min(3))?;
    }

    #[test]
    fn companion_has_its_polynomial(c in prop::collection::vec(0i64..5, 1..6)) {
        let mut coeffs = c.clone();
        coeffs.push(1);
        let f = Poly::<Fp>::from_i64s(&5, &coeffs);
        let m = companion(&f);
        prop_assert_eq!(m.char_poly(), f.clone());
        prop_assert_eq!(m.min_poly(), f);
    }
}
