//! Dense univariate polynomials with coefficients stored low-to-high.

pub mod factor;
pub mod transform;

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::hash::{Hash, Hasher};

use crate::field::{Field, Ring};

pub use factor::{Certainty, FactorOptions, Factorization};

/// A polynomial `c_0 + c_1 t + ... + c_d t^d` with `c_d != 0`, or zero.
#[derive(Clone, Debug)]
pub struct Poly<R: Ring> {
    coeffs: Vec<R>,
    ctx: R::Ctx,
}

impl<R: Ring> PartialEq for Poly<R> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<R: Ring> Eq for Poly<R> {}

impl<R: Ring> Hash for Poly<R> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl<R: Ring> Poly<R> {
    /// Build from low-to-high coefficients, trimming trailing zeros.
    pub fn new(ctx: &R::Ctx, mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs, ctx: ctx.clone() }
    }

    pub fn from_i64s(ctx: &R::Ctx, coeffs: &[i64]) -> Self {
        Poly::new(ctx, coeffs.iter().map(|&c| R::from_i64(ctx, c)).collect())
    }

    pub fn zero(ctx: &R::Ctx) -> Self {
        Poly { coeffs: Vec::new(), ctx: ctx.clone() }
    }

    pub fn one(ctx: &R::Ctx) -> Self {
        Poly::new(ctx, vec![R::one(ctx)])
    }

    /// The indeterminate `t`.
    pub fn x(ctx: &R::Ctx) -> Self {
        Poly::new(ctx, vec![R::zero(ctx), R::one(ctx)])
    }

    pub fn constant(c: R) -> Self {
        let ctx = c.ctx();
        Poly::new(&ctx, vec![c])
    }

    /// `c t^k`.
    pub fn monomial(c: R, k: usize) -> Self {
        let ctx = c.ctx();
        let mut coeffs = vec![R::zero(&ctx); k];
        coeffs.push(c);
        Poly::new(&ctx, coeffs)
    }

    /// `t - c`.
    pub fn linear(c: &R) -> Self {
        let ctx = c.ctx();
        Poly::new(&ctx, vec![c.neg(), R::one(&ctx)])
    }

    pub fn ctx(&self) -> &R::Ctx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Coefficient of `t^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(|| R::zero(&self.ctx))
    }

    /// Leading coefficient; panics on the zero polynomial.
    pub fn lc(&self) -> &R {
        self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&rhs.coeff(i))).collect();
        Poly::new(&self.ctx, coeffs)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).sub(&rhs.coeff(i))).collect();
        Poly::new(&self.ctx, coeffs)
    }

    pub fn neg(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| c.neg()).collect(), ctx: self.ctx.clone() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.ctx);
        }
        let mut out = vec![R::zero(&self.ctx); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::new(&self.ctx, out)
    }

    pub fn scale(&self, c: &R) -> Self {
        Poly::new(&self.ctx, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Multiply by `t^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![R::zero(&self.ctx); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs, ctx: self.ctx.clone() }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.ctx);
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

    /// Horner evaluation at a ring element.
    pub fn eval(&self, x: &R) -> R {
        let mut acc = R::zero(&self.ctx);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Composition `self(g(t))`.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Poly::zero(&self.ctx);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        let coeffs =
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.mul(&R::from_i64(&self.ctx, i as i64))).collect();
        Poly::new(&self.ctx, coeffs)
    }

    /// Trace of a monic polynomial: minus the coefficient of `t^(d-1)`.
    pub fn trace(&self) -> R {
        let d = self.degree().expect("trace of zero polynomial");
        assert!(d >= 1, "trace of a constant");
        self.coeff(d - 1).neg()
    }

    /// Apply a coefficient map.
    pub fn map<S: Ring>(&self, ctx: &S::Ctx, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(ctx, self.coeffs.iter().map(f).collect())
    }

    /// Human readable form with the given variable name and no spaces.
    pub fn to_compact_string(&self, var: &str) -> String {
        self.render(var, false)
    }

    /// Human readable form with spaces around the signs.
    pub fn to_spaced_string(&self, var: &str) -> String {
        self.render(var, true)
    }

    fn render(&self, var: &str, spaced: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mut s = c.to_string();
            let mut negative = false;
            if let Some(rest) = s.strip_prefix('-') {
                if !rest.contains(['+', '-', ' ']) {
                    negative = true;
                    s = rest.to_string();
                }
            }
            let simple = s.chars().all(|ch| ch.is_ascii_digit());
            let body = if k == 0 {
                if simple || !s.contains(['+', '-', ' ']) {
                    s
                } else {
                    alloc::format!("({s})")
                }
            } else {
                let mono = if k == 1 { var.to_string() } else { alloc::format!("{var}^{k}") };
                if s == "1" {
                    mono
                } else if simple {
                    alloc::format!("{s}{mono}")
                } else {
                    alloc::format!("({s}){mono}")
                }
            };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                let sign = if negative { '-' } else { '+' };
                if spaced {
                    out.push(' ');
                    out.push(sign);
                    out.push(' ');
                } else {
                    out.push(sign);
                }
            }
            out.push_str(&body);
        }
        out
    }
}

impl<R: Ring> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_spaced_string("t"))
    }
}

impl<F: Field> Poly<F> {
    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let Some(sd) = self.degree() else {
            return (Poly::zero(&self.ctx), Poly::zero(&self.ctx));
        };
        if sd < dd {
            return (Poly::zero(&self.ctx), self.clone());
        }
        let inv = d.lc().inv();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![F::zero(&self.ctx); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = rem[k + dd].mul(&inv);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].sub(&c.mul(dc));
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(&self.ctx, quot), Poly::new(&self.ctx, rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        if let (Some(a), Some(b)) = (self.degree(), d.degree()) {
            if a < b {
                return self.clone();
            }
        }
        self.divrem(d).1
    }

    /// Exact quotient; panics when the remainder is nonzero.
    pub fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self.divrem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Quotient when `d` divides `self`.
    pub fn try_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic associate (zero stays zero).
    pub fn monic(&self) -> Self {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(&self.lc().inv())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: `(g, s, t)` with `s self + t other = g`, `g` monic.
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let ctx = &self.ctx;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(ctx), Poly::zero(ctx));
        let (mut t0, mut t1) = (Poly::zero(ctx), Poly::one(ctx));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = r1;
            r1 = r;
            let s = s0.sub(&q.mul(&s1));
            s0 = s1;
            s1 = s;
            let t = t0.sub(&q.mul(&t1));
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().inv();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.ctx);
        }
        self.mul(other).div_exact(&self.gcd(other)).monic()
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: u128, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Poly::one(&self.ctx).rem(m);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }

    /// Multiplicity of the nonconstant polynomial `d` as a divisor.
    pub fn valuation(&self, d: &Self) -> usize {
        assert!(d.degree().unwrap_or(0) >= 1, "valuation needs a nonconstant divisor");
        if self.is_zero() {
            return usize::MAX;
        }
        let mut cur = self.clone();
        let mut v = 0;
        while let Some(q) = cur.try_div(d) {
            cur = q;
            v += 1;
        }
        v
    }

    /// Translate: `self(t + d)`, by repeated Horner shifts.
    pub fn translate(&self, d: &F) -> Self {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let add = c[j + 1].mul(d);
                c[j] = c[j].add(&add);
            }
        }
        Poly::new(&self.ctx, c)
    }

    /// Monic polynomials of the given degree in lexicographic order of their
    /// lower coefficients, over a finite coefficient list.
    pub fn all_monic(ctx: &F::Ctx, elements: &[F], degree: usize) -> Vec<Self> {
        let q = elements.len();
        let total = q.pow(degree as u32);
        let mut out = Vec::with_capacity(total);
        for idx in 0..total {
            let mut k = idx;
            let mut coeffs = Vec::with_capacity(degree + 1);
            for _ in 0..degree {
                coeffs.push(elements[k % q].clone());
                k /= q;
            }
            coeffs.push(F::one(ctx));
            out.push(Poly::new(ctx, coeffs));
        }
        out
    }
}

impl<R: Ring> Ring for Poly<R> {
    type Ctx = R::Ctx;

    fn ctx(&self) -> Self::Ctx {
        self.ctx.clone()
    }
    fn zero(ctx: &Self::Ctx) -> Self {
        Poly::zero(ctx)
    }
    fn one(ctx: &Self::Ctx) -> Self {
        Poly::one(ctx)
    }
    fn from_i64(ctx: &Self::Ctx, v: i64) -> Self {
        Poly::constant(R::from_i64(ctx, v))
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        Poly::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Poly::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Poly::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        Poly::neg(self)
    }
    fn try_inv(&self) -> Option<Self> {
        if self.degree() == Some(0) {
            self.coeffs[0].try_inv().map(Poly::constant)
        } else {
            None
        }
    }
    fn characteristic(ctx: &Self::Ctx) -> u64 {
        R::characteristic(ctx)
    }
}
