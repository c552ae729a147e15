//! Truncated local rings `F[t]/(r^n)` and residue fields `F[t]/(r)`.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::hash::{Hash, Hasher};

use rand_core::RngCore;

use super::{BaseField, Field, Ring};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::factor::{Certainty, FactorOptions};
use crate::poly::Poly;

/// The ring `F[t]/(r^n)` for a monic irreducible `r`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientRing<F: Field> {
    root: Poly<F>,
    exponent: usize,
    modulus: Poly<F>,
}

impl<F: BaseField> QuotientRing<F> {
    /// Build `F[t]/(r^n)`, checking that `r` is monic and irreducible.
    pub fn new(r: &Poly<F>, n: usize) -> Result<Arc<Self>> {
        if !r.is_monic() || r.degree().unwrap_or(0) == 0 {
            return Err(Error::NotMonic(format!("{r}")));
        }
        let fact = F::factor(r, &FactorOptions::default())?;
        if fact.certainty != Certainty::Proven || fact.factors.len() != 1 || fact.factors[0].1 != 1 {
            return Err(Error::NotIrreducible(format!("{r}")));
        }
        Ok(Self::new_unchecked(r, n))
    }
}

impl<F: Field> QuotientRing<F> {
    /// Build `F[t]/(r^n)` when `r` is already known to be monic irreducible.
    pub fn new_unchecked(r: &Poly<F>, n: usize) -> Arc<Self> {
        assert!(n >= 1 && r.is_monic() && r.degree().unwrap_or(0) >= 1);
        Arc::new(QuotientRing { root: r.clone(), exponent: n, modulus: r.pow(n as u64) })
    }

    pub fn root(&self) -> &Poly<F> {
        &self.root
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    pub fn modulus(&self) -> &Poly<F> {
        &self.modulus
    }

    pub fn base_ctx(&self) -> &F::Ctx {
        self.root.ctx()
    }

    /// Dimension over the base field.
    pub fn dim(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    /// The residue field `F[t]/(r)`.
    pub fn residue_field(&self) -> Arc<QuotientRing<F>> {
        QuotientRing::new_unchecked(&self.root, 1)
    }
}

/// Reduce `p` into the ring.
pub fn qelem<F: Field>(ring: &Arc<QuotientRing<F>>, p: &Poly<F>) -> QElem<F> {
    QElem { rep: p.rem(&ring.modulus), ring: ring.clone() }
}

/// Element of `F[t]/(r^n)`, represented by its remainder modulo `r^n`.
#[derive(Clone, Debug)]
pub struct QElem<F: Field> {
    rep: Poly<F>,
    ring: Arc<QuotientRing<F>>,
}

impl<F: Field> QElem<F> {
    pub fn new(ring: &Arc<QuotientRing<F>>, p: &Poly<F>) -> Self {
        qelem(ring, p)
    }

    pub fn from_base(ring: &Arc<QuotientRing<F>>, c: &F) -> Self {
        QElem { rep: Poly::constant(c.clone()), ring: ring.clone() }
    }

    /// Class of `t`.
    pub fn t(ring: &Arc<QuotientRing<F>>) -> Self {
        qelem(ring, &Poly::x(ring.base_ctx()))
    }

    pub fn rep(&self) -> &Poly<F> {
        &self.rep
    }

    pub fn ring(&self) -> &Arc<QuotientRing<F>> {
        &self.ring
    }

    /// Image in the residue field `F[t]/(r)`.
    pub fn reduce(&self, residue: &Arc<QuotientRing<F>>) -> ExtElem<F> {
        ExtElem(qelem(residue, &self.rep))
    }

    /// Lift a residue class using its representative of degree `< deg r`.
    pub fn lift(ring: &Arc<QuotientRing<F>>, y: &ExtElem<F>) -> Self {
        qelem(ring, &y.0.rep)
    }

    /// Unit test with inverse, through the extended gcd with the modulus.
    pub fn is_unit(&self) -> Option<Self> {
        self.try_inv()
    }

    /// Matrix of multiplication by this element on the basis `1, t, t^2, ...`.
    pub fn mult_matrix(&self) -> Matrix<F> {
        let d = self.ring.dim();
        let ctx = self.ring.base_ctx().clone();
        let mut m = Matrix::zeros(&ctx, d, d);
        let mut col = self.rep.clone();
        let t = Poly::x(&ctx);
        for j in 0..d {
            for i in 0..d {
                m.set(i, j, col.coeff(i));
            }
            col = col.mul(&t).rem(&self.ring.modulus);
        }
        m
    }

    /// Quotient by `r^k` of the representative (which must be divisible by it),
    /// reduced into the residue field.
    pub fn divide_by_root_power(&self, k: usize, residue: &Arc<QuotientRing<F>>) -> ExtElem<F> {
        let rk = self.ring.root.pow(k as u64);
        let (q, r) = self.rep.divrem(&rk);
        assert!(r.is_zero(), "element not divisible by r^{k}");
        ExtElem(qelem(residue, &q))
    }
}

impl<F: Field> PartialEq for QElem<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep
    }
}

impl<F: Field> Eq for QElem<F> {}

impl<F: Field> Hash for QElem<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rep.hash(state);
    }
}

impl<F: Field> fmt::Display for QElem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.rep.to_compact_string("t"))
    }
}

impl<F: Field> Ring for QElem<F> {
    type Ctx = Arc<QuotientRing<F>>;

    fn ctx(&self) -> Self::Ctx {
        self.ring.clone()
    }

    fn zero(ctx: &Self::Ctx) -> Self {
        QElem { rep: Poly::zero(ctx.base_ctx()), ring: ctx.clone() }
    }

    fn one(ctx: &Self::Ctx) -> Self {
        QElem { rep: Poly::one(ctx.base_ctx()), ring: ctx.clone() }
    }

    fn from_i64(ctx: &Self::Ctx, v: i64) -> Self {
        qelem(ctx, &Poly::constant(F::from_i64(ctx.base_ctx(), v)))
    }

    fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        QElem { rep: self.rep.add(&rhs.rep), ring: self.ring.clone() }
    }

    fn sub(&self, rhs: &Self) -> Self {
        QElem { rep: self.rep.sub(&rhs.rep), ring: self.ring.clone() }
    }

    fn mul(&self, rhs: &Self) -> Self {
        qelem(&self.ring, &self.rep.mul(&rhs.rep))
    }

    fn neg(&self) -> Self {
        QElem { rep: self.rep.neg(), ring: self.ring.clone() }
    }

    fn try_inv(&self) -> Option<Self> {
        if self.rep.is_zero() {
            return None;
        }
        let (g, s, _) = self.rep.xgcd(&self.ring.modulus);
        if g.degree() != Some(0) {
            return None;
        }
        Some(qelem(&self.ring, &s.scale(&g.lc().inv())))
    }

    fn characteristic(ctx: &Self::Ctx) -> u64 {
        F::characteristic(ctx.base_ctx())
    }
}

/// Element of the residue field `F[t]/(r)` (a quotient ring with `n = 1`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtElem<F: Field>(pub QElem<F>);

impl<F: Field> ExtElem<F> {
    pub fn new(field: &Arc<QuotientRing<F>>, p: &Poly<F>) -> Self {
        debug_assert_eq!(field.exponent, 1);
        ExtElem(qelem(field, p))
    }

    pub fn from_base(field: &Arc<QuotientRing<F>>, c: &F) -> Self {
        ExtElem(QElem::from_base(field, c))
    }

    /// The generator `θ`, class of `t`.
    pub fn generator(field: &Arc<QuotientRing<F>>) -> Self {
        ExtElem(QElem::t(field))
    }

    pub fn rep(&self) -> &Poly<F> {
        &self.0.rep
    }

    /// The element as a base-field scalar when it lies in `F`.
    pub fn as_base(&self) -> Option<F> {
        match self.0.rep.degree() {
            None => Some(F::zero(self.0.ring.base_ctx())),
            Some(0) => Some(self.0.rep.coeff(0)),
            _ => None,
        }
    }

    pub fn mult_matrix(&self) -> Matrix<F> {
        self.0.mult_matrix()
    }
}

impl<F: Field> fmt::Display for ExtElem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl<F: Field> Ring for ExtElem<F> {
    type Ctx = Arc<QuotientRing<F>>;

    fn ctx(&self) -> Self::Ctx {
        self.0.ring.clone()
    }

    fn zero(ctx: &Self::Ctx) -> Self {
        ExtElem(QElem::zero(ctx))
    }

    fn one(ctx: &Self::Ctx) -> Self {
        ExtElem(QElem::one(ctx))
    }

    fn from_i64(ctx: &Self::Ctx, v: i64) -> Self {
        ExtElem(QElem::from_i64(ctx, v))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        ExtElem(self.0.add(&rhs.0))
    }

    fn sub(&self, rhs: &Self) -> Self {
        ExtElem(self.0.sub(&rhs.0))
    }

    fn mul(&self, rhs: &Self) -> Self {
        ExtElem(self.0.mul(&rhs.0))
    }

    fn neg(&self) -> Self {
        ExtElem(self.0.neg())
    }

    fn try_inv(&self) -> Option<Self> {
        self.0.try_inv().map(ExtElem)
    }

    fn characteristic(ctx: &Self::Ctx) -> u64 {
        F::characteristic(ctx.base_ctx())
    }
}

fn combos<F: Field>(field: &Arc<QuotientRing<F>>, digits: &[F]) -> Vec<ExtElem<F>> {
    let d = field.dim();
    let base = digits.len();
    let total = base.pow(d as u32);
    let mut out = Vec::with_capacity(total);
    for idx in 0..total {
        let mut k = idx;
        let mut coeffs = Vec::with_capacity(d);
        for _ in 0..d {
            coeffs.push(digits[k % base].clone());
            k /= base;
        }
        out.push(ExtElem::new(field, &Poly::new(field.base_ctx(), coeffs)));
    }
    out
}

impl<F: Field> Field for ExtElem<F> {
    fn order(ctx: &Self::Ctx) -> Option<u128> {
        let q = F::order(ctx.base_ctx())?;
        q.checked_pow(ctx.dim() as u32)
    }

    fn elements(ctx: &Self::Ctx, limit: u128) -> Option<Vec<Self>> {
        let order = Self::order(ctx)?;
        if order > limit {
            return None;
        }
        let digits = F::elements(ctx.base_ctx(), limit)?;
        Some(combos(ctx, &digits))
    }

    fn search_elements(ctx: &Self::Ctx, bound: usize) -> Vec<Self> {
        let digits = F::search_elements(ctx.base_ctx(), bound);
        combos(ctx, &digits)
    }

    fn random(ctx: &Self::Ctx, rng: &mut dyn RngCore) -> Self {
        let coeffs: Vec<F> = (0..ctx.dim()).map(|_| F::random(ctx.base_ctx(), rng)).collect();
        ExtElem::new(ctx, &Poly::new(ctx.base_ctx(), coeffs))
    }
}
