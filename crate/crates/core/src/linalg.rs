//! Dense matrices over a [`Ring`], with Gaussian elimination, kernels,
//! inverses, determinants, characteristic and minimal polynomials over a
//! [`Field`].

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::field::{ExtElem, Field, QElem, Ring};
use crate::poly::Poly;

/// A row-major `rows x cols` matrix.
#[derive(Clone, Debug)]
pub struct Matrix<R: Ring> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
    ctx: R::Ctx,
}

impl<R: Ring> PartialEq for Matrix<R> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl<R: Ring> Eq for Matrix<R> {}

impl<R: Ring> core::hash::Hash for Matrix<R> {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.data.hash(state);
    }
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(ctx: &R::Ctx, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![R::zero(ctx); rows * cols], ctx: ctx.clone() }
    }

    pub fn identity(ctx: &R::Ctx, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.set(i, i, R::one(ctx));
        }
        m
    }

    /// Scalar matrix `c I`.
    pub fn scalar(ctx: &R::Ctx, n: usize, c: &R) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    /// Build from rows; all rows must have the same length.
    pub fn from_rows(ctx: &R::Ctx, rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect(), ctx: ctx.clone() }
    }

    /// Build from integer rows.
    pub fn from_i64(ctx: &R::Ctx, rows: &[&[i64]]) -> Self {
        Self::from_rows(ctx, rows.iter().map(|r| r.iter().map(|&v| R::from_i64(ctx, v)).collect()).collect())
    }

    pub fn from_fn(ctx: &R::Ctx, rows: usize, cols: usize, f: impl Fn(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data, ctx: ctx.clone() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ctx(&self) -> &R::Ctx {
        &self.ctx
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<R> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.ctx, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "shape mismatch in add");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.add(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data, ctx: self.ctx.clone() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "shape mismatch in sub");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.sub(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data, ctx: self.ctx.clone() }
    }

    pub fn neg(&self) -> Self {
        let data = self.data.iter().map(|a| a.neg()).collect();
        Matrix { rows: self.rows, cols: self.cols, data, ctx: self.ctx.clone() }
    }

    pub fn scale(&self, c: &R) -> Self {
        let data = self.data.iter().map(|a| a.mul(c)).collect();
        Matrix { rows: self.rows, cols: self.cols, data, ctx: self.ctx.clone() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in mul");
        let mut out = Self::zeros(&self.ctx, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * rhs.cols + j;
                        out.data[idx] = out.data[idx].add(&a.mul(b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[R]) -> Vec<R> {
        assert_eq!(self.cols, v.len(), "shape mismatch in mul_vec");
        (0..self.rows)
            .map(|i| {
                let mut acc = R::zero(&self.ctx);
                for (j, x) in v.iter().enumerate() {
                    acc = acc.add(&self.get(i, j).mul(x));
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(&self.ctx, self.rows);
        let mut base = self.clone();
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

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let a = self.get(i, j);
                    if i == j {
                        a.is_one()
                    } else {
                        a.is_zero()
                    }
                })
            })
    }

    /// Is this `c I` for some `c`?
    pub fn is_scalar(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols)
                    .all(|j| if i == j { *self.get(i, j) == *self.get(0, 0) } else { self.get(i, j).is_zero() })
            })
    }

    pub fn trace(&self) -> R {
        let mut acc = R::zero(&self.ctx);
        for i in 0..self.rows.min(self.cols) {
            acc = acc.add(self.get(i, i));
        }
        acc
    }

    /// `p(self)` by Horner's rule.
    pub fn eval_poly(&self, p: &Poly<R>) -> Self {
        assert!(self.is_square());
        let n = self.rows;
        let mut acc = Self::zeros(&self.ctx, n, n);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).add(&Self::scalar(&self.ctx, n, c));
        }
        acc
    }

    pub fn submatrix(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        Self::from_fn(&self.ctx, nr, nc, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(ctx: &R::Ctx, blocks: &[Self]) -> Self {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(ctx, r, c);
        let (mut i, mut j) = (0, 0);
        for b in blocks {
            out.set_block(i, j, b);
            i += b.rows;
            j += b.cols;
        }
        out
    }

    pub fn map<S: Ring>(&self, ctx: &S::Ctx, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect(), ctx: ctx.clone() }
    }

    /// Replace every entry by a `d x d` block.
    pub fn expand<S: Ring>(&self, ctx: &S::Ctx, d: usize, f: impl Fn(&R) -> Matrix<S>) -> Matrix<S> {
        let mut out = Matrix::zeros(ctx, self.rows * d, self.cols * d);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let b = f(self.get(i, j));
                assert!(b.rows == d && b.cols == d, "expansion block has the wrong size");
                out.set_block(i * d, j * d, &b);
            }
        }
        out
    }

    /// Determinant by cofactor expansion; division free, meant for small
    /// matrices over rings such as `F[t]`.
    pub fn det_expand(&self) -> R {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return R::one(&self.ctx);
        }
        if n == 1 {
            return self.get(0, 0).clone();
        }
        let mut acc = R::zero(&self.ctx);
        for j in 0..n {
            let a = self.get(0, j);
            if a.is_zero() {
                continue;
            }
            let minor =
                Self::from_fn(&self.ctx, n - 1, n - 1, |r, c| self.get(r + 1, if c < j { c } else { c + 1 }).clone());
            let term = a.mul(&minor.det_expand());
            acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }

    /// Conjugate `P self P^-1` given both `P` and `P^-1`.
    pub fn conjugate(&self, p: &Self, pinv: &Self) -> Self {
        p.mul(self).mul(pinv)
    }

    /// Flatten row-major.
    pub fn to_vec(&self) -> Vec<R> {
        self.data.clone()
    }
}

impl<R: Ring> Matrix<R> {
    /// Inverse over a commutative ring by Gauss-Jordan elimination with unit
    /// pivots; complete over fields and local rings.
    pub fn inverse_ring(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(&self.ctx, n);
        for c in 0..n {
            let (p, u) = (c..n).find_map(|i| a.get(i, c).try_inv().map(|u| (i, u)))?;
            a.swap_rows(p, c);
            inv.swap_rows(p, c);
            for j in 0..n {
                let v = a.get(c, j).mul(&u);
                a.set(c, j, v);
                let w = inv.get(c, j).mul(&u);
                inv.set(c, j, w);
            }
            for i in 0..n {
                if i == c || a.get(i, c).is_zero() {
                    continue;
                }
                let f = a.get(i, c).clone();
                for j in 0..n {
                    let v = a.get(i, j).sub(&f.mul(a.get(c, j)));
                    a.set(i, j, v);
                    let w = inv.get(i, j).sub(&f.mul(inv.get(c, j)));
                    inv.set(i, j, w);
                }
            }
        }
        Some(inv)
    }
}

impl<R: Ring> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|x| alloc::format!("{x}")).collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

/// Companion matrix of a monic polynomial: ones on the subdiagonal and
/// `-c_i` in the last column, so that `e_1` is a cyclic vector.
pub fn companion<R: Ring>(p: &Poly<R>) -> Matrix<R> {
    assert!(p.is_monic(), "companion matrix of a non-monic polynomial");
    let ctx = p.ctx();
    let n = p.degree().unwrap();
    let mut m = Matrix::zeros(ctx, n, n);
    for i in 0..n {
        if i + 1 < n {
            m.set(i + 1, i, R::one(ctx));
        }
        m.set(i, n - 1, p.coeff(i).neg());
    }
    m
}

impl<F: Field> Matrix<F> {
    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv();
            for j in c..m.cols {
                let v = m.get(r, j).mul(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j).sub(&f.mul(m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let (m, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![F::zero(&self.ctx); self.cols];
            v[free] = F::one(&self.ctx);
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = m.get(r, free).neg();
            }
            basis.push(v);
        }
        basis
    }

    /// Some solution of `self x = rhs`, if one exists.
    pub fn solve_vector(&self, rhs: &[F]) -> Option<Vec<F>> {
        assert_eq!(rhs.len(), self.rows);
        let mut aug = Self::zeros(&self.ctx, self.rows, self.cols + 1);
        aug.set_block(0, 0, self);
        for (i, v) in rhs.iter().enumerate() {
            aug.set(i, self.cols, v.clone());
        }
        let (m, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(&self.ctx); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = m.get(r, self.cols).clone();
        }
        Some(x)
    }

    /// Some solution `X` of `self X = rhs`, if one exists.
    pub fn solve(&self, rhs: &Self) -> Option<Self> {
        let mut out = Self::zeros(&self.ctx, self.cols, rhs.cols);
        for j in 0..rhs.cols {
            let x = self.solve_vector(&rhs.col(j))?;
            for (i, v) in x.into_iter().enumerate() {
                out.set(i, j, v);
            }
        }
        Some(out)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let mut aug = Self::zeros(&self.ctx, n, 2 * n);
        aug.set_block(0, 0, self);
        aug.set_block(0, n, &Self::identity(&self.ctx, n));
        let (m, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(m.submatrix(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Determinant by elimination.
    pub fn det(&self) -> F {
        assert!(self.is_square());
        let mut m = self.clone();
        let n = m.rows;
        let mut acc = F::one(&self.ctx);
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return F::zero(&self.ctx);
            };
            if p != c {
                m.swap_rows(p, c);
                acc = acc.neg();
            }
            let piv = m.get(c, c).clone();
            acc = acc.mul(&piv);
            let inv = piv.inv();
            for i in c + 1..n {
                let f = m.get(i, c).mul(&inv);
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j).sub(&f.mul(m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        acc
    }

    /// Characteristic polynomial `det(t I - self)` through a Hessenberg
    /// reduction.
    pub fn char_poly(&self) -> Poly<F> {
        assert!(self.is_square());
        let n = self.rows;
        let ctx = self.ctx.clone();
        let mut h = self.clone();
        // Similarity reduction to upper Hessenberg form.
        for c in 0..n.saturating_sub(2) {
            let Some(p) = (c + 1..n).find(|&i| !h.get(i, c).is_zero()) else { continue };
            if p != c + 1 {
                h.swap_rows(p, c + 1);
                h.swap_cols(p, c + 1);
            }
            let inv = h.get(c + 1, c).inv();
            for i in c + 2..n {
                let f = h.get(i, c).mul(&inv);
                if f.is_zero() {
                    continue;
                }
                // Row_i -= f Row_{c+1}, then Col_{c+1} += f Col_i.
                for j in 0..n {
                    let v = h.get(i, j).sub(&f.mul(h.get(c + 1, j)));
                    h.set(i, j, v);
                }
                for r in 0..n {
                    let v = h.get(r, c + 1).add(&f.mul(h.get(r, i)));
                    h.set(r, c + 1, v);
                }
            }
        }
        let t = Poly::x(&ctx);
        let mut ps: Vec<Poly<F>> = vec![Poly::one(&ctx)];
        for m in 0..n {
            let mut next = t.sub(&Poly::constant(h.get(m, m).clone())).mul(&ps[m]);
            let mut prod = F::one(&ctx);
            for i in (0..m).rev() {
                prod = prod.mul(h.get(i + 1, i));
                if prod.is_zero() {
                    break;
                }
                let c = prod.mul(h.get(i, m));
                next = next.sub(&ps[i].scale(&c));
            }
            ps.push(next);
        }
        ps.pop().unwrap()
    }

    /// Minimal polynomial: the first linear dependency among `I, M, M^2, ...`.
    pub fn min_poly(&self) -> Poly<F> {
        assert!(self.is_square());
        let n = self.rows;
        let ctx = self.ctx.clone();
        let mut powers: Vec<Vec<F>> = vec![Self::identity(&ctx, n).data];
        let mut cur = Self::identity(&ctx, n);
        for k in 1..=n {
            cur = cur.mul(self);
            let cols = k;
            // Solve sum_{i<k} c_i M^i = -M^k.
            let sys = Self::from_fn(&ctx, n * n, cols, |r, c| powers[c][r].clone());
            let rhs: Vec<F> = cur.data.iter().map(|v| v.neg()).collect();
            if let Some(sol) = sys.solve_vector(&rhs) {
                let mut coeffs = sol;
                coeffs.push(F::one(&ctx));
                return Poly::new(&ctx, coeffs);
            }
            powers.push(cur.data.clone());
        }
        unreachable!("Cayley-Hamilton bounds the minimal polynomial degree")
    }
}

/// View an `F[t]/(r)`-matrix as an `F`-matrix of size `n deg r`.
pub fn restrict_ext<F: Field>(m: &Matrix<ExtElem<F>>, base: &F::Ctx, d: usize) -> Matrix<F> {
    m.expand(base, d, |x| x.mult_matrix())
}

/// View an `F[t]/(r^k)`-matrix as an `F`-matrix of size `n k deg r`.
pub fn restrict_local<F: Field>(m: &Matrix<QElem<F>>, base: &F::Ctx, d: usize) -> Matrix<F> {
    m.expand(base, d, |x| x.mult_matrix())
}
