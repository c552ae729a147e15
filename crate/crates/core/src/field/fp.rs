//! Prime fields `F_p` with `p < 2^32`.

use alloc::vec::Vec;
use core::fmt;

use rand_core::RngCore;

use super::{BaseField, Field, FieldDescriptor, Ring};
use crate::error::{Error, Result};
use crate::poly::factor::{self, FactorOptions, Factorization};
use crate::poly::Poly;

/// Element of `F_p`, stored as its residue in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp {
    v: u64,
    p: u64,
}

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Fp {
    /// Validate a characteristic for use as a context.
    pub fn check_prime(p: u64) -> Result<u64> {
        if p >= (1 << 32) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(p)
    }

    pub fn new(v: i64, p: u64) -> Self {
        let m = p as i64;
        Fp { v: v.rem_euclid(m) as u64, p }
    }

    pub fn value(&self) -> u64 {
        self.v
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Ring for Fp {
    type Ctx = u64;

    fn ctx(&self) -> u64 {
        self.p
    }

    fn zero(ctx: &u64) -> Self {
        Fp { v: 0, p: *ctx }
    }

    fn one(ctx: &u64) -> Self {
        Fp { v: 1 % *ctx, p: *ctx }
    }

    fn from_i64(ctx: &u64, v: i64) -> Self {
        Fp::new(v, *ctx)
    }

    fn is_zero(&self) -> bool {
        self.v == 0
    }

    fn add(&self, rhs: &Self) -> Self {
        let s = self.v + rhs.v;
        Fp { v: if s >= self.p { s - self.p } else { s }, p: self.p }
    }

    fn sub(&self, rhs: &Self) -> Self {
        let v = if self.v >= rhs.v { self.v - rhs.v } else { self.v + self.p - rhs.v };
        Fp { v, p: self.p }
    }

    fn mul(&self, rhs: &Self) -> Self {
        Fp { v: (self.v * rhs.v) % self.p, p: self.p }
    }

    fn neg(&self) -> Self {
        Fp { v: if self.v == 0 { 0 } else { self.p - self.v }, p: self.p }
    }

    fn try_inv(&self) -> Option<Self> {
        if self.v == 0 {
            return None;
        }
        // Extended Euclid on signed integers.
        let (mut r0, mut r1) = (self.p as i64, self.v as i64);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        Some(Fp::new(s0, self.p))
    }

    fn characteristic(ctx: &u64) -> u64 {
        *ctx
    }

    fn is_one(&self) -> bool {
        self.v == 1
    }
}

impl Field for Fp {
    fn order(ctx: &u64) -> Option<u128> {
        Some(*ctx as u128)
    }

    fn elements(ctx: &u64, limit: u128) -> Option<Vec<Self>> {
        if (*ctx as u128) > limit {
            return None;
        }
        Some((0..*ctx).map(|v| Fp { v, p: *ctx }).collect())
    }

    fn search_elements(ctx: &u64, _bound: usize) -> Vec<Self> {
        (0..*ctx).map(|v| Fp { v, p: *ctx }).collect()
    }

    fn random(ctx: &u64, rng: &mut dyn RngCore) -> Self {
        Fp { v: rng.next_u64() % *ctx, p: *ctx }
    }
}

impl BaseField for Fp {
    fn descriptor(ctx: &u64) -> FieldDescriptor {
        FieldDescriptor::PrimeField(*ctx)
    }

    fn factor(p: &Poly<Self>, opts: &FactorOptions) -> Result<Factorization<Self>> {
        factor::factor_finite(p, opts)
    }
}
