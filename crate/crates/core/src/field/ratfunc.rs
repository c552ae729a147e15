//! The rational function field `F_p(s)`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use rand_core::RngCore;

use super::{BaseField, Field, FieldDescriptor, Fp, Ring};
use crate::error::Result;
use crate::poly::factor::{self, FactorOptions, Factorization};
use crate::poly::Poly;

/// A reduced fraction `num/den` of polynomials in `s` over `F_p`, with a
/// monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: Poly<Fp>,
    den: Poly<Fp>,
}

impl RatFunc {
    /// Build and normalize `num/den`; `den` must be nonzero.
    pub fn new(num: Poly<Fp>, den: Poly<Fp>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let p = *num.ctx();
        if num.is_zero() {
            return RatFunc { num, den: Poly::one(&p) };
        }
        let g = num.gcd(&den);
        let mut n = num.div_exact(&g);
        let mut d = den.div_exact(&g);
        let lc = *d.lc();
        if !lc.is_one() {
            let inv = lc.inv();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        RatFunc { num: n, den: d }
    }

    pub fn from_poly(num: Poly<Fp>) -> Self {
        let p = *num.ctx();
        RatFunc { num, den: Poly::one(&p) }
    }

    /// The variable `s`.
    pub fn s(p: u64) -> Self {
        RatFunc::from_poly(Poly::x(&p))
    }

    pub fn numer(&self) -> &Poly<Fp> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<Fp> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }
}

fn wrap(s: String) -> String {
    if s.contains('+') || s[1..].contains('-') {
        format!("({s})")
    } else {
        s
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.num.to_compact_string("s");
        if self.is_polynomial() {
            write!(f, "{n}")
        } else {
            let d = self.den.to_compact_string("s");
            write!(f, "{}/{}", wrap(n), wrap(d))
        }
    }
}

impl Ring for RatFunc {
    type Ctx = u64;

    fn ctx(&self) -> u64 {
        *self.num.ctx()
    }

    fn zero(ctx: &u64) -> Self {
        RatFunc { num: Poly::zero(ctx), den: Poly::one(ctx) }
    }

    fn one(ctx: &u64) -> Self {
        RatFunc { num: Poly::one(ctx), den: Poly::one(ctx) }
    }

    fn from_i64(ctx: &u64, v: i64) -> Self {
        RatFunc::from_poly(Poly::constant(Fp::new(v, *ctx)))
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return RatFunc::new(self.num.add(&rhs.num), self.den.clone());
        }
        RatFunc::new(self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)), self.den.mul(&rhs.den))
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        RatFunc::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    fn try_inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(RatFunc::new(self.den.clone(), self.num.clone()))
        }
    }

    fn characteristic(ctx: &u64) -> u64 {
        *ctx
    }

    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
}

impl Field for RatFunc {
    fn order(_: &u64) -> Option<u128> {
        None
    }

    fn elements(_: &u64, _limit: u128) -> Option<Vec<Self>> {
        None
    }

    /// All polynomials in `s` of degree at most `bound`.
    fn search_elements(ctx: &u64, bound: usize) -> Vec<Self> {
        let p = *ctx;
        let digits = bound + 1;
        let total = (p as usize).pow(digits as u32);
        let mut out = Vec::with_capacity(total);
        for idx in 0..total {
            let mut k = idx;
            let mut coeffs = Vec::with_capacity(digits);
            for _ in 0..digits {
                coeffs.push(Fp::new((k % p as usize) as i64, p));
                k /= p as usize;
            }
            out.push(RatFunc::from_poly(Poly::new(&p, coeffs)));
        }
        out
    }

    fn random(ctx: &u64, rng: &mut dyn RngCore) -> Self {
        let p = *ctx;
        let mut rand_poly = |max_deg: u32, monic: bool| {
            let deg = rng.next_u32() % (max_deg + 1);
            let mut c: Vec<Fp> = (0..=deg).map(|_| Fp::new((rng.next_u64() % p) as i64, p)).collect();
            if monic {
                *c.last_mut().unwrap() = Fp::one(&p);
            }
            Poly::new(&p, c)
        };
        let num = rand_poly(3, false);
        let den = rand_poly(2, true);
        RatFunc::new(num, den)
    }
}

impl BaseField for RatFunc {
    fn descriptor(ctx: &u64) -> FieldDescriptor {
        FieldDescriptor::RationalFunctionField(*ctx)
    }

    fn factor(p: &Poly<Self>, opts: &FactorOptions) -> Result<Factorization<Self>> {
        factor::factor_ratfunc(p, opts)
    }
}
