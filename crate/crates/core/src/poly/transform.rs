//! Polynomial transforms used by the classification: resultants,
//! translations, homotheties, the `R_δ` transform and its inverse through
//! palindromial splitting, the differential `G^n`, and root multiplicities.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Field, Ring};
use crate::linalg::Matrix;
use crate::poly::Poly;

/// Resultant of two nonzero polynomials over a field (Euclidean recursion).
pub fn resultant<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Result<F> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ctx = a.ctx().clone();
    let mut a = a.clone();
    let mut b = b.clone();
    let mut acc = F::one(&ctx);
    loop {
        let m = a.degree().unwrap();
        let n = b.degree().unwrap();
        if n == 0 {
            return Ok(acc.mul(&b.lc().pow(m as u64)));
        }
        if m == 0 {
            return Ok(acc.mul(&a.lc().pow(n as u64)));
        }
        let r = a.rem(&b);
        if r.is_zero() {
            return Ok(F::zero(&ctx));
        }
        let k = r.degree().unwrap();
        if (m * n) % 2 == 1 {
            acc = acc.neg();
        }
        acc = acc.mul(&b.lc().pow((m - k) as u64));
        a = b;
        b = r;
    }
}

/// Sylvester matrix of `a` (degree m) and `b` (degree n), size `(m+n)`.
pub fn sylvester<R: Ring>(a: &Poly<R>, b: &Poly<R>) -> Matrix<R> {
    let ctx = a.ctx().clone();
    let m = a.degree().unwrap();
    let n = b.degree().unwrap();
    let size = m + n;
    let mut s = Matrix::zeros(&ctx, size, size);
    for row in 0..n {
        for k in 0..=m {
            s.set(row, row + k, a.coeff(m - k));
        }
    }
    for row in 0..m {
        for k in 0..=n {
            s.set(n + row, row + k, b.coeff(n - k));
        }
    }
    s
}

/// `p(t + d)`.
pub fn translate<F: Field>(p: &Poly<F>, d: &F) -> Poly<F> {
    p.translate(d)
}

/// `H_d(p) = d^-2 p(d t)` for a monic quadratic `p`.
pub fn homothety<F: Field>(p: &Poly<F>, d: &F) -> Result<Poly<F>> {
    if d.is_zero() {
        return Err(Error::ZeroRatio);
    }
    if p.degree() != Some(2) || !p.is_monic() {
        return Err(Error::BadPair(alloc::format!("{p}")));
    }
    let dinv = d.inv();
    let c0 = p.coeff(0).mul(&dinv).mul(&dinv);
    let c1 = p.coeff(1).mul(&dinv);
    Ok(Poly::new(p.ctx(), vec![c0, c1, F::one(p.ctx())]))
}

/// `R_δ(r) = t^d r(t + δ/t)` for a monic `r` of degree `d`.
pub fn r_delta<F: Field>(r: &Poly<F>, delta: &F) -> Result<Poly<F>> {
    if delta.is_zero() {
        return Err(Error::ZeroDelta);
    }
    if !r.is_monic() {
        return Err(Error::NotMonic(alloc::format!("{r}")));
    }
    let ctx = r.ctx();
    let d = r.degree().unwrap();
    let u = Poly::new(ctx, vec![delta.clone(), F::zero(ctx), F::one(ctx)]);
    let mut acc = Poly::zero(ctx);
    let mut upow = Poly::one(ctx);
    for k in 0..=d {
        acc = acc.add(&upow.shift_up(d - k).scale(&r.coeff(k)));
        upow = upow.mul(&u);
    }
    Ok(acc)
}

/// Write `R = t^m P(t + δ/t) + t^(m-1) Q(t + δ/t)` with `deg P <= m` and
/// `deg Q <= m - 1`.
pub fn palindromial_split<F: Field>(r: &Poly<F>, m: usize, delta: &F) -> Result<(Poly<F>, Poly<F>)> {
    if delta.is_zero() {
        return Err(Error::ZeroDelta);
    }
    assert!(m >= 1, "palindromial split needs m >= 1");
    if r.degree().is_some_and(|d| d > 2 * m) {
        return Err(Error::Dimension(alloc::format!("degree of {r} exceeds {}", 2 * m)));
    }
    let ctx = r.ctx();
    let u = Poly::new(ctx, vec![delta.clone(), F::zero(ctx), F::one(ctx)]);
    // Columns: P-basis t^(m-k)(t^2+δ)^k for k = 0..=m, then Q-basis
    // t^(m-1-k)(t^2+δ)^k for k = 0..m.
    let size = 2 * m + 1;
    let mut sys = Matrix::zeros(ctx, size, size);
    let mut upow = Poly::one(ctx);
    let mut col = 0;
    let mut qcols = Vec::new();
    for k in 0..=m {
        let pb = upow.shift_up(m - k);
        for i in 0..size {
            sys.set(i, col, pb.coeff(i));
        }
        if k < m {
            qcols.push(upow.shift_up(m - 1 - k));
        }
        col += 1;
        upow = upow.mul(&u);
    }
    for qb in qcols {
        for i in 0..size {
            sys.set(i, col, qb.coeff(i));
        }
        col += 1;
    }
    let rhs: Vec<F> = (0..size).map(|i| r.coeff(i)).collect();
    let sol = sys.solve_vector(&rhs).ok_or_else(|| Error::Internal("palindromial system is singular".into()))?;
    let p = Poly::new(ctx, sol[..=m].to_vec());
    let q = Poly::new(ctx, sol[m + 1..].to_vec());
    Ok((p, q))
}

/// Binomial coefficient as a field element.
fn binomial<F: Field>(ctx: &F::Ctx, n: usize, k: usize) -> F {
    // Pascal row reduced in the field, valid in every characteristic.
    let mut row = vec![F::one(ctx)];
    for _ in 0..n {
        let mut next = vec![F::one(ctx); row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1].add(&row[i]);
        }
        row = next;
    }
    row.get(k).cloned().unwrap_or_else(|| F::zero(ctx))
}

/// `G^n(r)`: the coefficient of `x^n` in `r(t + x)`.
pub fn g_differential<F: Field>(r: &Poly<F>, n: usize) -> Poly<F> {
    let ctx = r.ctx();
    let Some(d) = r.degree() else {
        return Poly::zero(ctx);
    };
    if n > d {
        return Poly::zero(ctx);
    }
    let coeffs = (n..=d).map(|k| r.coeff(k).mul(&binomial::<F>(ctx, k, n))).collect();
    Poly::new(ctx, coeffs)
}

/// Multiplicity of the roots of an irreducible polynomial in its splitting
/// field: 1 when separable, otherwise the `p^e` with `r(t) = s(t^(p^e))`, `s`
/// separable.
pub fn root_multiplicity<F: Field>(r: &Poly<F>) -> u64 {
    let p = F::characteristic(r.ctx());
    let dr = r.derivative();
    if !dr.is_zero() {
        return 1;
    }
    assert!(p > 0, "zero derivative in characteristic zero");
    // r = s(t^p): keep every p-th coefficient.
    let d = r.degree().unwrap();
    let coeffs = (0..=d / p as usize).map(|k| r.coeff(k * p as usize)).collect();
    let s = Poly::new(r.ctx(), coeffs);
    p * root_multiplicity(&s)
}

/// `r(t^2 - δ t)`.
pub fn difference_shape<F: Field>(r: &Poly<F>, delta: &F) -> Poly<F> {
    let ctx = r.ctx();
    let u = Poly::new(ctx, vec![F::zero(ctx), delta.neg(), F::one(ctx)]);
    r.compose(&u)
}

/// Recover `r` from `R = r(t^2 - δ t)` by downward coefficient extraction,
/// or `None` when `R` has no such form.
pub fn difference_shape_inverse<F: Field>(big: &Poly<F>, delta: &F) -> Option<Poly<F>> {
    let ctx = big.ctx();
    let d = big.degree()?;
    if d % 2 == 1 {
        return None;
    }
    let m = d / 2;
    let u = Poly::new(ctx, vec![F::zero(ctx), delta.neg(), F::one(ctx)]);
    let upows: Vec<Poly<F>> = {
        let mut v = vec![Poly::one(ctx)];
        for k in 1..=m {
            let next = v[k - 1].mul(&u);
            v.push(next);
        }
        v
    };
    let mut cur = big.clone();
    let mut coeffs = vec![F::zero(ctx); m + 1];
    for k in (0..=m).rev() {
        let c = cur.coeff(2 * k);
        cur = cur.sub(&upows[k].scale(&c));
        coeffs[k] = c;
    }
    cur.is_zero().then(|| Poly::new(ctx, coeffs))
}

/// Recover `r` from `R = R_δ(r)` (`None` when `R` is not of that form).
pub fn r_delta_inverse<F: Field>(big: &Poly<F>, delta: &F) -> Option<Poly<F>> {
    let d = big.degree()?;
    if d % 2 == 1 || d == 0 {
        return (d == 0 && big.is_one()).then(|| big.clone());
    }
    let (p, q) = palindromial_split(big, d / 2, delta).ok()?;
    (q.is_zero() && p.is_monic() && p.degree() == Some(d / 2)).then_some(p)
}
