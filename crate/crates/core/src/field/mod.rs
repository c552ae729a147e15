//! Exact arithmetic: the [`Ring`] and [`Field`] traits and their
//! implementations for prime fields, the rationals, rational functions over a
//! prime field, truncated quotient rings `F[t]/(r^n)` and residue fields
//! `F[t]/(r)`.

mod fp;
mod quotient;
mod ratfunc;
mod rational;

use alloc::vec::Vec;
use core::fmt::{self, Debug, Display};
use core::hash::Hash;

use num_rational::BigRational;
use rand_core::RngCore;

use crate::error::Result;
use crate::poly::factor::{FactorOptions, Factorization};
use crate::poly::Poly;

pub use fp::{is_prime, Fp};
pub use quotient::{ExtElem, QElem, QuotientRing};
pub use ratfunc::RatFunc;
pub use rational::Rational;

/// A commutative unital ring with exact arithmetic.
///
/// Every element carries enough context (`Ctx`) to build constants of the
/// same ring, so zero polynomials and empty matrices stay well typed.
pub trait Ring: Clone + PartialEq + Eq + Hash + Debug + Display {
    /// Runtime description of the ring (the prime, a modulus, ...).
    type Ctx: Clone + PartialEq + Debug;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_i64(ctx: &Self::Ctx, v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse when the element is a unit.
    fn try_inv(&self) -> Option<Self>;
    /// Characteristic of the ring (0 for the rationals).
    fn characteristic(ctx: &Self::Ctx) -> u64;

    fn is_one(&self) -> bool {
        *self == Self::one(&self.ctx())
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self) -> Self {
        self.try_inv().expect("inverse of zero field element")
    }

    fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv())
    }

    /// Number of elements, `None` for infinite fields.
    fn order(ctx: &Self::Ctx) -> Option<u128>;

    /// Every element in a fixed order (zero first), for finite fields whose
    /// order does not exceed `limit`.
    fn elements(ctx: &Self::Ctx, limit: u128) -> Option<Vec<Self>>;

    /// A deterministic list of "small" elements (zero first). Finite fields
    /// list everything; infinite fields list elements of bounded height.
    fn search_elements(ctx: &Self::Ctx, bound: usize) -> Vec<Self>;

    fn random(ctx: &Self::Ctx, rng: &mut dyn RngCore) -> Self;
}

/// The base fields a problem can be posed over.
pub trait BaseField: Field {
    fn descriptor(ctx: &Self::Ctx) -> FieldDescriptor;

    /// Factor a nonzero polynomial into monic irreducibles.
    fn factor(p: &Poly<Self>, opts: &FactorOptions) -> Result<Factorization<Self>>;

    /// The value as a rational number (rationals only).
    fn to_rational(&self) -> Option<BigRational> {
        None
    }

    /// Embed a rational number (rationals only).
    fn from_rational(_ctx: &Self::Ctx, _q: &BigRational) -> Option<Self> {
        None
    }
}

/// Runtime descriptor of a base field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    PrimeField(u64),
    Rationals,
    RationalFunctionField(u64),
}

impl FieldDescriptor {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDescriptor::PrimeField(p) | FieldDescriptor::RationalFunctionField(p) => *p,
            FieldDescriptor::Rationals => 0,
        }
    }
}

impl Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::PrimeField(p) => write!(f, "Fp {p}"),
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::RationalFunctionField(p) => write!(f, "Fps {p}"),
        }
    }
}

/// Sum of a slice of ring elements.
pub fn sum<R: Ring>(ctx: &R::Ctx, items: &[R]) -> R {
    items.iter().fold(R::zero(ctx), |acc, x| acc.add(x))
}
