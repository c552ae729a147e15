//! The field of rational numbers on top of arbitrary-precision integers.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand_core::RngCore;

use super::{BaseField, Field, FieldDescriptor, Ring};
use crate::error::Result;
use crate::poly::factor::{self, FactorOptions, Factorization};
use crate::poly::Poly;

/// A rational number in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_int(v: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Self {
        Rational(BigRational::new(num, den))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Ring for Rational {
    type Ctx = ();

    fn ctx(&self) {}

    fn zero(_: &()) -> Self {
        Rational(BigRational::zero())
    }

    fn one(_: &()) -> Self {
        Rational(BigRational::one())
    }

    fn from_i64(_: &(), v: i64) -> Self {
        Rational::from_int(v)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        Rational(&self.0 + &rhs.0)
    }

    fn sub(&self, rhs: &Self) -> Self {
        Rational(&self.0 - &rhs.0)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Rational(&self.0 * &rhs.0)
    }

    fn neg(&self) -> Self {
        Rational(-&self.0)
    }

    fn try_inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    fn characteristic(_: &()) -> u64 {
        0
    }

    fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

impl Field for Rational {
    fn order(_: &()) -> Option<u128> {
        None
    }

    fn elements(_: &(), _limit: u128) -> Option<Vec<Self>> {
        None
    }

    /// Integers `0, 1, -1, 2, -2, ...` up to `bound` in absolute value.
    fn search_elements(_: &(), bound: usize) -> Vec<Self> {
        let mut out = Vec::with_capacity(2 * bound + 1);
        out.push(Rational::from_int(0));
        for k in 1..=bound as i64 {
            out.push(Rational::from_int(k));
            out.push(Rational::from_int(-k));
        }
        out
    }

    fn random(_: &(), rng: &mut dyn RngCore) -> Self {
        let num = (rng.next_u32() % 41) as i64 - 20;
        let den = (rng.next_u32() % 6) as i64 + 1;
        Rational::new(num, den)
    }
}

impl BaseField for Rational {
    fn descriptor(_: &()) -> FieldDescriptor {
        FieldDescriptor::Rationals
    }

    fn factor(p: &Poly<Self>, opts: &FactorOptions) -> Result<Factorization<Self>> {
        factor::factor_rational(p, opts)
    }

    fn to_rational(&self) -> Option<BigRational> {
        Some(self.0.clone())
    }

    fn from_rational(_: &(), q: &BigRational) -> Option<Self> {
        Some(Rational(q.clone()))
    }
}
