//! The 4-dimensional algebra `W(p,q,x)_R` spanned by `I, A, B, C = AB` with
//! `p(A) = 0`, `q(B) = 0` and `AB + BA = μA + λB - xI`: trace, star
//! involution, norm and polar form, degeneracy test, regular
//! representations for duplication, and Hensel-lifted splittings to `2x2`
//! matrices over `F[t]/(r^n)`.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{ExtElem, Field, QElem, QuotientRing, Ring};
use crate::linalg::Matrix;
use crate::poly::Poly;

/// `a I + b A + c B + d C` in coordinates `(a, b, c, d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WElement<R: Ring> {
    pub coords: [R; 4],
}

impl<R: Ring> WElement<R> {
    pub fn new(a: R, b: R, c: R, d: R) -> Self {
        WElement { coords: [a, b, c, d] }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> WElement<S> {
        WElement { coords: [f(&self.coords[0]), f(&self.coords[1]), f(&self.coords[2]), f(&self.coords[3])] }
    }
}

/// Which ordered basis the regular representation uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisVariant {
    /// `(I, A - B, B, (A - B) B)`.
    DifferenceBasis,
    /// `(B, A, I, A B^-1)`; needs `β` to be a unit.
    QuotientBasis,
}

/// `W(p,q,x)_R` with its matrix model: the left regular representation on
/// the basis `(I, A, B, C)`, so that the generators have first columns
/// `e_1, ..., e_4` and `coords(h1 h2) = Mat(h1) coords(h2)`.
#[derive(Clone, Debug)]
pub struct WAlgebra<R: Ring> {
    pub lambda: R,
    pub mu: R,
    pub alpha: R,
    pub beta: R,
    pub x: R,
    mats: [Matrix<R>; 3],
}

fn trace_and_const<F: Field>(p: &Poly<F>) -> Result<(F, F)> {
    if p.degree() != Some(2) || !p.is_monic() {
        return Err(Error::BadPair(format!("{p} is not monic of degree 2")));
    }
    Ok((p.coeff(1).neg(), p.coeff(0)))
}

impl<R: Ring> WAlgebra<R> {
    /// Build from `λ = tr p`, `μ = tr q`, `α = p(0)`, `β = q(0)` and `x`.
    pub fn new(lambda: R, mu: R, alpha: R, beta: R, x: R) -> Self {
        let ctx = x.ctx();
        let z = R::zero(&ctx);
        let o = R::one(&ctx);
        let col = |v: [R; 4]| v;
        let from_cols = |cols: [[R; 4]; 4]| Matrix::from_fn(&ctx, 4, 4, |i, j| cols[j][i].clone());
        let a = from_cols([
            col([z.clone(), o.clone(), z.clone(), z.clone()]),
            col([alpha.neg(), lambda.clone(), z.clone(), z.clone()]),
            col([z.clone(), z.clone(), z.clone(), o.clone()]),
            col([z.clone(), z.clone(), alpha.neg(), lambda.clone()]),
        ]);
        let b = from_cols([
            col([z.clone(), z.clone(), o.clone(), z.clone()]),
            col([x.neg(), mu.clone(), lambda.clone(), o.neg()]),
            col([beta.neg(), z.clone(), mu.clone(), z.clone()]),
            col([lambda.mul(&beta).neg(), beta.clone(), lambda.mul(&mu).sub(&x), z.clone()]),
        ]);
        let c = a.mul(&b);
        WAlgebra { lambda, mu, alpha, beta, x, mats: [a, b, c] }
    }

    /// Build from monic quadratics over a base field embedded into `R`.
    pub fn from_pair<F: Field>(p: &Poly<F>, q: &Poly<F>, x: R, embed: impl Fn(&F) -> R) -> Result<Self> {
        let (lambda, alpha) = trace_and_const(p)?;
        let (mu, beta) = trace_and_const(q)?;
        Ok(Self::new(embed(&lambda), embed(&mu), embed(&alpha), embed(&beta), x))
    }

    /// Change the coefficient ring through a ring homomorphism.
    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> WAlgebra<S> {
        WAlgebra::new(f(&self.lambda), f(&self.mu), f(&self.alpha), f(&self.beta), f(&self.x))
    }

    pub fn ctx(&self) -> R::Ctx {
        self.x.ctx()
    }

    /// Matrix model of `A`.
    pub fn gen_a(&self) -> &Matrix<R> {
        &self.mats[0]
    }

    /// Matrix model of `B`.
    pub fn gen_b(&self) -> &Matrix<R> {
        &self.mats[1]
    }

    /// Matrix model of `C = AB`.
    pub fn gen_c(&self) -> &Matrix<R> {
        &self.mats[2]
    }

    fn basis(&self, k: usize) -> WElement<R> {
        let ctx = self.ctx();
        let mut coords = [R::zero(&ctx), R::zero(&ctx), R::zero(&ctx), R::zero(&ctx)];
        coords[k] = R::one(&ctx);
        WElement { coords }
    }

    pub fn one(&self) -> WElement<R> {
        self.basis(0)
    }

    pub fn a(&self) -> WElement<R> {
        self.basis(1)
    }

    pub fn b(&self) -> WElement<R> {
        self.basis(2)
    }

    pub fn c(&self) -> WElement<R> {
        self.basis(3)
    }

    /// Standard basis element `k` (`I, A, B, C`).
    pub fn basis_element(&self, k: usize) -> WElement<R> {
        self.basis(k)
    }

    /// The `4x4` matrix of `h` in the model.
    pub fn matrix(&self, h: &WElement<R>) -> Matrix<R> {
        let ctx = self.ctx();
        let [a, b, c, d] = &h.coords;
        Matrix::scalar(&ctx, 4, a).add(&self.mats[0].scale(b)).add(&self.mats[1].scale(c)).add(&self.mats[2].scale(d))
    }

    /// Read coordinates off the first column of a model matrix.
    pub fn from_matrix(&self, m: &Matrix<R>) -> WElement<R> {
        WElement { coords: [m.get(0, 0).clone(), m.get(1, 0).clone(), m.get(2, 0).clone(), m.get(3, 0).clone()] }
    }

    pub fn add(&self, h1: &WElement<R>, h2: &WElement<R>) -> WElement<R> {
        WElement { coords: core::array::from_fn(|i| h1.coords[i].add(&h2.coords[i])) }
    }

    pub fn sub(&self, h1: &WElement<R>, h2: &WElement<R>) -> WElement<R> {
        WElement { coords: core::array::from_fn(|i| h1.coords[i].sub(&h2.coords[i])) }
    }

    pub fn scale(&self, h: &WElement<R>, s: &R) -> WElement<R> {
        WElement { coords: core::array::from_fn(|i| h.coords[i].mul(s)) }
    }

    pub fn mul(&self, h1: &WElement<R>, h2: &WElement<R>) -> WElement<R> {
        let v = self.matrix(h1).mul_vec(&h2.coords);
        WElement { coords: [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()] }
    }

    /// `Tr(h) = 2a + λb + μc + (λμ - x)d`.
    pub fn trace(&self, h: &WElement<R>) -> R {
        let [a, b, c, d] = &h.coords;
        a.add(a).add(&self.lambda.mul(b)).add(&self.mu.mul(c)).add(&self.lambda.mul(&self.mu).sub(&self.x).mul(d))
    }

    /// `h* = Tr(h) I - h`.
    pub fn star(&self, h: &WElement<R>) -> WElement<R> {
        let tr = self.trace(h);
        let ctx = self.ctx();
        let mut s = self.scale(h, &R::one(&ctx).neg());
        s.coords[0] = s.coords[0].add(&tr);
        s
    }

    /// The quaternary norm with `h h* = N(h) I`.
    pub fn norm(&self, h: &WElement<R>) -> R {
        let [a, b, c, d] = &h.coords;
        let (l, m, al, be, x) = (&self.lambda, &self.mu, &self.alpha, &self.beta, &self.x);
        let lm_x = l.mul(m).sub(x);
        let t1 = a.mul(&a.add(&l.mul(b)).add(&m.mul(c)).add(&lm_x.mul(d)));
        let t2 = b.mul(&al.mul(b).add(&x.mul(c)).add(&al.mul(m).mul(d)));
        let t3 = be.mul(c).mul(c);
        let t4 = l.mul(be).mul(c).add(&al.mul(be).mul(d)).mul(d);
        t1.add(&t2).add(&t3).add(&t4)
    }

    /// `b_N(h1, h2) = N(h1 + h2) - N(h1) - N(h2)`.
    pub fn polar(&self, h1: &WElement<R>, h2: &WElement<R>) -> R {
        self.norm(&self.add(h1, h2)).sub(&self.norm(h1)).sub(&self.norm(h2))
    }

    /// Gram matrix of `b_N` on `(I, A, B, C)`.
    pub fn gram(&self) -> Matrix<R> {
        let ctx = self.ctx();
        Matrix::from_fn(&ctx, 4, 4, |i, j| self.polar(&self.basis(i), &self.basis(j)))
    }

    /// `x^2 - λμx + γ` with `γ = λ²β + μ²α - 4αβ`.
    pub fn degeneracy_value(&self) -> R {
        let ctx = self.ctx();
        let (l, m, al, be, x) = (&self.lambda, &self.mu, &self.alpha, &self.beta, &self.x);
        let four = R::from_i64(&ctx, 4);
        let gamma = l.mul(l).mul(be).add(&m.mul(m).mul(al)).sub(&four.mul(al).mul(be));
        x.mul(x).sub(&l.mul(m).mul(x)).add(&gamma)
    }

    /// Matrices `A'`, `B'` of left multiplication by `A` and `B` in the
    /// chosen ordered basis.
    pub fn regular_representation(&self, variant: BasisVariant) -> Result<(Matrix<R>, Matrix<R>)> {
        let ctx = self.ctx();
        let basis: [WElement<R>; 4] = match variant {
            BasisVariant::DifferenceBasis => {
                let amb = self.sub(&self.a(), &self.b());
                let ambb = self.mul(&amb, &self.b());
                [self.one(), amb, self.b(), ambb]
            }
            BasisVariant::QuotientBasis => {
                let binv = self.beta.try_inv().ok_or(Error::NonUnitBeta)?;
                let u = self.scale(&self.mul(&self.a(), &self.star(&self.b())), &binv);
                [self.b(), self.a(), self.one(), u]
            }
        };
        let q = Matrix::from_fn(&ctx, 4, 4, |i, j| basis[j].coords[i].clone());
        let qinv = q.inverse_ring().ok_or_else(|| Error::Internal("regular basis is not a basis".into()))?;
        Ok((qinv.mul(self.gen_a()).mul(&q), qinv.mul(self.gen_b()).mul(&q)))
    }
}

impl<F: Field> WAlgebra<F> {
    /// Degeneracy of the norm over a field: `x² - λμx + γ = 0`.
    pub fn is_degenerate(&self) -> bool {
        self.degeneracy_value().is_zero()
    }

    /// Singularity of the Gram matrix; meaningful when the characteristic is
    /// not 2.
    pub fn gram_singular(&self) -> bool {
        self.gram().det().is_zero()
    }
}

fn solve_linear<F: Field>(rows: Vec<[F; 4]>, rhs: Vec<F>) -> Result<WElement<F>> {
    let ctx = rhs[0].ctx();
    let m = Matrix::from_rows(&ctx, rows.into_iter().map(|r| r.to_vec()).collect());
    let sol =
        m.solve_vector(&rhs).ok_or_else(|| Error::Internal("adapted-pair linear system is inconsistent".into()))?;
    Ok(WElement::new(sol[0].clone(), sol[1].clone(), sol[2].clone(), sol[3].clone()))
}

/// Row vector of the linear form `U -> b_N(h, U)`.
fn polar_row<R: Ring>(alg: &WAlgebra<R>, h: &WElement<R>) -> [R; 4] {
    core::array::from_fn(|k| alg.polar(h, &alg.basis_element(k)))
}

/// Adapted pair over the residue field from an isotropic vector: `Tr X =
/// Tr Y = 0`, `N(X) = N(Y) = 0`, `b_N(X, Y) = -1`.
pub fn residue_adapted_pair<F: Field>(alg: &WAlgebra<F>, witness: &WElement<F>) -> Result<(WElement<F>, WElement<F>)> {
    if alg.is_degenerate() {
        return Err(Error::DegenerateNorm);
    }
    if witness.is_zero() || !alg.norm(witness).is_zero() {
        return Err(Error::AnisotropicNorm);
    }
    let ctx = alg.ctx();
    let tr = alg.trace(witness);
    let x = if tr.is_zero() {
        witness.clone()
    } else {
        // e is an idempotent of norm 0; e w e* is isotropic with trace 0.
        let e = alg.scale(witness, &tr.inv());
        let es = alg.star(&e);
        (0..4)
            .map(|k| alg.mul(&alg.mul(&e, &alg.basis_element(k)), &es))
            .find(|h| !h.is_zero())
            .ok_or_else(|| Error::Internal("no nonzero e w e* found".into()))?
    };
    let y0 =
        solve_linear(vec![polar_row(alg, &alg.one()), polar_row(alg, &x)], vec![F::zero(&ctx), F::one(&ctx).neg()])?;
    let y = alg.add(&y0, &alg.scale(&x, &alg.norm(&y0)));
    Ok((x, y))
}

fn check_adapted<R: Ring>(alg: &WAlgebra<R>, x: &WElement<R>, y: &WElement<R>) -> bool {
    let ctx = alg.ctx();
    alg.trace(x).is_zero()
        && alg.trace(y).is_zero()
        && alg.norm(x).is_zero()
        && alg.norm(y).is_zero()
        && alg.polar(x, y) == R::one(&ctx).neg()
}

/// Hensel-lifted adapted pair `(X, Y)` over `R = F[t]/(r^n)`, starting from
/// an isotropic vector of the residue algebra. The result satisfies
/// `X² = Y² = 0` and `XY + YX = I` exactly.
pub fn hensel_adapted_pair<F: Field>(
    alg: &WAlgebra<QElem<F>>,
    witness: &WElement<ExtElem<F>>,
) -> Result<(WElement<QElem<F>>, WElement<QElem<F>>)> {
    let ring: Arc<QuotientRing<F>> = alg.x.ring().clone();
    let residue = ring.residue_field();
    let res_alg = alg.map(|v| v.reduce(&residue));
    let (x0, y0) = residue_adapted_pair(&res_alg, witness)?;
    let lift = |h: &WElement<ExtElem<F>>| h.map(|v| QElem::lift(&ring, v));
    let mut x = lift(&x0);
    let mut y = lift(&y0);
    let one_row = polar_row(&res_alg, &res_alg.one());
    for k in 1..ring.exponent() {
        let eps_k = QElem::new(&ring, &ring.root().pow(k as u64));
        let down = |v: &QElem<F>| v.divide_by_root_power(k, &residue);
        // Correct X: Tr(Z) = -h1, b(X, Z) = -h2.
        let h1 = down(&alg.trace(&x));
        let h2 = down(&alg.norm(&x));
        let xb = x.map(|v| v.reduce(&residue));
        let z = solve_linear(vec![one_row.clone(), polar_row(&res_alg, &xb)], vec![h1.neg(), h2.neg()])?;
        x = alg.add(&x, &alg.scale(&lift(&z), &eps_k));
        // Correct Y: Tr(Z) = -h1, b(Y, Z) = -h2, b(X, Z) = -h3.
        let minus_one = QElem::from_base(&ring, &F::one(ring.base_ctx())).neg();
        let h1 = down(&alg.trace(&y));
        let h2 = down(&alg.norm(&y));
        let h3 = down(&alg.polar(&x, &y).sub(&minus_one));
        let xb = x.map(|v| v.reduce(&residue));
        let yb = y.map(|v| v.reduce(&residue));
        let z = solve_linear(
            vec![one_row.clone(), polar_row(&res_alg, &yb), polar_row(&res_alg, &xb)],
            vec![h1.neg(), h2.neg(), h3.neg()],
        )?;
        y = alg.add(&y, &alg.scale(&lift(&z), &eps_k));
    }
    if !check_adapted(alg, &x, &y) {
        return Err(Error::Internal("lifted pair is not adapted".into()));
    }
    let xy = alg.mul(&x, &y);
    let yx = alg.mul(&y, &x);
    if !alg.mul(&x, &x).is_zero() || !alg.mul(&y, &y).is_zero() || alg.add(&xy, &yx) != alg.one() {
        return Err(Error::Internal("adapted pair identities failed".into()));
    }
    Ok((x, y))
}

/// Images `a`, `b` of `A`, `B` under the isomorphism onto `Mat_2(R)` sending
/// `I, X, Y, XY` to `I_2, E_12, E_21, E_11`.
pub fn split_to_2x2<R: Ring>(alg: &WAlgebra<R>, x: &WElement<R>, y: &WElement<R>) -> Result<(Matrix<R>, Matrix<R>)> {
    let ctx = alg.ctx();
    let xy = alg.mul(x, y);
    let basis = [alg.one(), x.clone(), y.clone(), xy];
    let q = Matrix::from_fn(&ctx, 4, 4, |i, j| basis[j].coords[i].clone());
    let qinv = q.inverse_ring().ok_or_else(|| Error::Internal("(I, X, Y, XY) is not a basis".into()))?;
    let image = |h: &WElement<R>| {
        let c = qinv.mul_vec(&h.coords);
        Matrix::from_rows(&ctx, vec![vec![c[0].add(&c[3]), c[1].clone()], vec![c[2].clone(), c[0].clone()]])
    };
    let a = image(&alg.a());
    let b = image(&alg.b());
    // p(a) = 0, q(b) = 0, ab + ba = μa + λb - x I.
    let i2 = Matrix::identity(&ctx, 2);
    let pa = a.mul(&a).sub(&a.scale(&alg.lambda)).add(&i2.scale(&alg.alpha));
    let qb = b.mul(&b).sub(&b.scale(&alg.mu)).add(&i2.scale(&alg.beta));
    let rel = a.mul(&b).add(&b.mul(&a)).sub(&a.scale(&alg.mu)).sub(&b.scale(&alg.lambda)).add(&i2.scale(&alg.x));
    if !pa.is_zero() || !qb.is_zero() || !rel.is_zero() {
        return Err(Error::Internal("split images violate the defining relations".into()));
    }
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rational};
    use proptest::prelude::*;

    fn alg_fp(p: u64, l: i64, m: i64, a: i64, b: i64, x: i64) -> WAlgebra<Fp> {
        WAlgebra::new(Fp::new(l, p), Fp::new(m, p), Fp::new(a, p), Fp::new(b, p), Fp::new(x, p))
    }

    fn alg_q(pq: [i64; 4], x: i64) -> WAlgebra<Rational> {
        let r = Rational::from_int;
        WAlgebra::new(r(pq[0]), r(pq[1]), r(pq[2]), r(pq[3]), r(x))
    }

    #[test]
    fn trace_and_norm_examples() {
        let w = alg_q([0, 0, 1, 1], 3);
        assert_eq!(w.trace(&w.one()), Rational::from_int(2));
        assert!(alg_fp(2, 1, 1, 1, 1, 1).trace(&alg_fp(2, 1, 1, 1, 1, 1).one()).is_zero());
        assert_eq!(w.norm(&w.one()), Rational::from_int(1));
        assert_eq!(w.norm(&w.a()), w.alpha);
        // p = t^2 - 1 has root 1, so N(A - I) = 0.
        let w = alg_q([0, 2, -1, 3], 5);
        let h = w.sub(&w.a(), &w.one());
        assert!(w.norm(&h).is_zero());
    }

    #[test]
    fn degeneracy_examples() {
        assert!(alg_q([0, 0, 1, 1], 2).is_degenerate());
        assert!(!alg_q([0, 0, 1, 1], 0).is_degenerate());
        assert!(alg_fp(2, 1, 1, 1, 1, 1).is_degenerate());
    }

    #[test]
    fn regular_representation_blocks() {
        // Difference basis: A' - B' is block [[0, x - α - β], [1, δ]] twice.
        let w = alg_q([3, 1, 2, 5], 11);
        let (ap, bp) = w.regular_representation(BasisVariant::DifferenceBasis).unwrap();
        let d = ap.sub(&bp);
        let y = Rational::from_int(11 - 2 - 5);
        let delta = Rational::from_int(2);
        let blk = |a: &Rational, b: &Rational| {
            Matrix::from_rows(&(), vec![vec![Rational::from_int(0), a.clone()], vec![Rational::from_int(1), b.clone()]])
        };
        assert_eq!(d, Matrix::direct_sum(&(), &[blk(&y, &delta), blk(&y, &delta)]));
        // Quotient basis: A' B'^-1 is block [[0, -α/β], [1, x/β]] twice.
        let (ap, bp) = w.regular_representation(BasisVariant::QuotientBasis).unwrap();
        let u = ap.mul(&bp.inverse().unwrap());
        let dq = Rational::new(-2, 5);
        let xb = Rational::new(11, 5);
        assert_eq!(u, Matrix::direct_sum(&(), &[blk(&dq, &xb), blk(&dq, &xb)]));
    }

    #[test]
    fn split_over_residue_field() {
        // F_3, p = q = t^2 + 1, x = 0: nondegenerate, isotropic (x = 1 is
        // degenerate since 1 - 4 = 0 in F_3).
        assert!(alg_fp(3, 0, 0, 1, 1, 1).is_degenerate());
        let w = alg_fp(3, 0, 0, 1, 1, 0);
        assert!(!w.is_degenerate());
        let elems = Fp::elements(&3, 3).unwrap();
        let mut wit = None;
        'outer: for a in &elems {
            for b in &elems {
                for c in &elems {
                    for d in &elems {
                        let h = WElement::new(*a, *b, *c, *d);
                        if !h.is_zero() && w.norm(&h).is_zero() {
                            wit = Some(h);
                            break 'outer;
                        }
                    }
                }
            }
        }
        let (x, y) = residue_adapted_pair(&w, &wit.unwrap()).unwrap();
        let (a, b) = split_to_2x2(&w, &x, &y).unwrap();
        assert_eq!(a.rows(), 2);
        assert_eq!(b.rows(), 2);
    }

    fn arb_elem(p: u64) -> impl Strategy<Value = WElement<Fp>> {
        proptest::array::uniform4(0..p as i64)
            .prop_map(move |c| WElement::new(Fp::new(c[0], p), Fp::new(c[1], p), Fp::new(c[2], p), Fp::new(c[3], p)))
    }

    proptest! {
        #[test]
        fn model_identities(params in proptest::array::uniform5(0i64..5), h1 in arb_elem(5), h2 in arb_elem(5)) {
            let w = alg_fp(5, params[0], params[1], params[2], params[3], params[4]);
            let (a, b) = (w.gen_a(), w.gen_b());
            let i4 = Matrix::identity(&5, 4);
            let rel = a.mul(b).add(&b.mul(a)).sub(&a.scale(&w.mu)).sub(&b.scale(&w.lambda)).add(&i4.scale(&w.x));
            prop_assert!(rel.is_zero());
            prop_assert!(a.mul(a).sub(&a.scale(&w.lambda)).add(&i4.scale(&w.alpha)).is_zero());
            let hs = w.star(&h1);
            prop_assert_eq!(w.mul(&h1, &hs), w.scale(&w.one(), &w.norm(&h1)));
            prop_assert_eq!(w.star(&w.mul(&h1, &h2)), w.mul(&w.star(&h2), &hs));
            prop_assert_eq!(w.star(&hs), h1.clone());
            let pol = w.add(&w.mul(&h1, &w.star(&h2)), &w.mul(&h2, &hs));
            prop_assert_eq!(pol, w.scale(&w.one(), &w.polar(&h1, &h2)));
            prop_assert_eq!(w.is_degenerate(), w.gram_singular());
        }
    }
}
