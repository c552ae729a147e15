//! Canonical forms: invariant factors through the Smith normal form of
//! `tI - M` over `F[t]`, rational canonical bases and similarity
//! transporters, elementary divisors, Jordan-type counters `n_k`,
//! intertwined sequences, primary splittings, and the block-cyclic law.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{BaseField, Field};
use crate::linalg::{companion, Matrix};
use crate::poly::factor::{Certainty, FactorOptions};
use crate::poly::transform::root_multiplicity;
use crate::poly::Poly;

/// Invariant factors `r_1, r_2, ...` with `r_{i+1} | r_i`, constant factors
/// omitted.
pub type InvariantFactors<F> = Vec<Poly<F>>;

/// Rational canonical form with its base change: `p M p^-1 = form`.
#[derive(Clone, Debug)]
pub struct RationalCanonical<F: Field> {
    pub factors: InvariantFactors<F>,
    pub form: Matrix<F>,
    pub p: Matrix<F>,
    pub pinv: Matrix<F>,
}

/// Smith diagonal of `tI - M` (in increasing divisibility order), optionally
/// with the inverse of the accumulated row transform.
fn smith<F: Field>(m: &Matrix<F>, track: bool) -> (Vec<Poly<F>>, Option<Matrix<Poly<F>>>) {
    assert!(m.is_square());
    let n = m.rows();
    let ctx = m.ctx().clone();
    let t = Poly::x(&ctx);
    let mut a: Matrix<Poly<F>> = Matrix::from_fn(&ctx, n, n, |i, j| {
        let c = Poly::constant(m.get(i, j).neg());
        if i == j {
            t.add(&c)
        } else {
            c
        }
    });
    let mut pinv: Option<Matrix<Poly<F>>> = track.then(|| Matrix::identity(&ctx, n));
    let col_op = |pinv: &mut Option<Matrix<Poly<F>>>, dst: usize, src: usize, q: &Poly<F>| {
        // column dst += q * column src
        if let Some(pm) = pinv.as_mut() {
            for r in 0..n {
                let v = pm.get(r, dst).add(&pm.get(r, src).mul(q));
                pm.set(r, dst, v);
            }
        }
    };
    for k in 0..n {
        loop {
            // Pivot of minimal degree.
            let mut best: Option<(usize, usize, usize)> = None;
            for i in k..n {
                for j in k..n {
                    if let Some(d) = a.get(i, j).degree() {
                        if best.is_none_or(|b| d < b.2) {
                            best = Some((i, j, d));
                        }
                    }
                }
            }
            let Some((pi, pj, _)) = best else { break };
            if pi != k {
                a.swap_rows(pi, k);
                if let Some(pm) = pinv.as_mut() {
                    pm.swap_cols(pi, k);
                }
            }
            a.swap_cols(pj, k);
            let piv = a.get(k, k).clone();
            let mut dirty = false;
            for i in k + 1..n {
                if a.get(i, k).is_zero() {
                    continue;
                }
                let (q, r) = a.get(i, k).divrem(&piv);
                for j in k..n {
                    let v = a.get(i, j).sub(&q.mul(a.get(k, j)));
                    a.set(i, j, v);
                }
                col_op(&mut pinv, k, i, &q);
                dirty |= !r.is_zero();
            }
            for j in k + 1..n {
                if a.get(k, j).is_zero() {
                    continue;
                }
                let (q, r) = a.get(k, j).divrem(&piv);
                for i in k..n {
                    let v = a.get(i, j).sub(&q.mul(a.get(i, k)));
                    a.set(i, j, v);
                }
                dirty |= !r.is_zero();
            }
            if dirty {
                continue;
            }
            // Divisibility of the remaining block by the pivot.
            let bad = (k + 1..n).find(|&i| (k + 1..n).any(|j| !piv.divides(a.get(i, j))));
            match bad {
                Some(i) => {
                    // row k += row i
                    for j in k..n {
                        let v = a.get(k, j).add(a.get(i, j));
                        a.set(k, j, v);
                    }
                    if let Some(pm) = pinv.as_mut() {
                        for r in 0..n {
                            let v = pm.get(r, i).sub(pm.get(r, k));
                            pm.set(r, i, v);
                        }
                    }
                }
                None => break,
            }
        }
        let lc = a.get(k, k).lc().clone();
        let inv = lc.inv();
        let v = a.get(k, k).scale(&inv);
        a.set(k, k, v);
        if let Some(pm) = pinv.as_mut() {
            for r in 0..n {
                let v = pm.get(r, k).scale(&lc);
                pm.set(r, k, v);
            }
        }
    }
    ((0..n).map(|i| a.get(i, i).clone()).collect(), pinv)
}

/// Invariant factors of a square matrix, largest first.
pub fn invariant_factors<F: Field>(m: &Matrix<F>) -> InvariantFactors<F> {
    let (diag, _) = smith(m, false);
    diag.into_iter().rev().filter(|d| d.degree() != Some(0)).collect()
}

/// `f(M) v` by Horner's rule on vectors.
fn poly_apply<F: Field>(m: &Matrix<F>, f: &Poly<F>, v: &[F]) -> Vec<F> {
    let ctx = m.ctx();
    let mut acc = vec![F::zero(ctx); v.len()];
    for c in f.coeffs().iter().rev() {
        acc = m.mul_vec(&acc);
        for (a, x) in acc.iter_mut().zip(v) {
            *a = a.add(&c.mul(x));
        }
    }
    acc
}

/// Direct sum of companion matrices.
pub fn companion_sum<F: Field>(ctx: &F::Ctx, factors: &[Poly<F>]) -> Matrix<F> {
    let blocks: Vec<Matrix<F>> = factors.iter().map(companion).collect();
    Matrix::direct_sum(ctx, &blocks)
}

/// Rational canonical form `⊕ C(r_i)` (largest factor first) with a verified
/// base change.
pub fn rational_canonical<F: Field>(m: &Matrix<F>) -> Result<RationalCanonical<F>> {
    let n = m.rows();
    let ctx = m.ctx().clone();
    let (diag, pinv) = smith(m, true);
    let pinv = pinv.unwrap();
    let mut cols: Vec<Vec<F>> = Vec::new();
    let mut factors = Vec::new();
    for j in (0..n).rev() {
        let d = diag[j].degree().unwrap();
        if d == 0 {
            continue;
        }
        // Generator: sum_i pinv[i][j](M) e_i.
        let mut v = vec![F::zero(&ctx); n];
        for i in 0..n {
            let mut e = vec![F::zero(&ctx); n];
            e[i] = F::one(&ctx);
            let w = poly_apply(m, pinv.get(i, j), &e);
            for (a, b) in v.iter_mut().zip(w) {
                *a = a.add(&b);
            }
        }
        for _ in 0..d {
            let next = m.mul_vec(&v);
            cols.push(v);
            v = next;
        }
        factors.push(diag[j].clone());
    }
    let q = Matrix::from_fn(&ctx, n, n, |i, j| cols[j][i].clone());
    let p = q.inverse().ok_or_else(|| Error::Internal("rational canonical basis is singular".into()))?;
    let form = companion_sum(&ctx, &factors);
    if p.mul(m) != form.mul(&p) {
        return Err(Error::Internal("rational canonical base change failed verification".into()));
    }
    Ok(RationalCanonical { factors, form, p, pinv: q })
}

/// An invertible `P` with `P M P^-1 = N`, verified by multiplication.
pub fn find_similarity<F: Field>(m: &Matrix<F>, n: &Matrix<F>) -> Result<Matrix<F>> {
    if !m.is_square() || !n.is_square() || m.rows() != n.rows() {
        return Err(Error::Dimension(format!("{}x{} vs {}x{}", m.rows(), m.cols(), n.rows(), n.cols())));
    }
    let cm = rational_canonical(m)?;
    let cn = rational_canonical(n)?;
    if cm.factors != cn.factors {
        return Err(Error::NotSimilar { left: format_factors(&cm.factors), right: format_factors(&cn.factors) });
    }
    let p = cn.pinv.mul(&cm.p);
    if p.mul(m) != n.mul(&p) {
        return Err(Error::Internal("similarity transporter failed verification".into()));
    }
    Ok(p)
}

/// Render a factor list as `(f1, f2, ...)`.
pub fn format_factors<F: Field>(fs: &[Poly<F>]) -> alloc::string::String {
    let parts: Vec<alloc::string::String> = fs.iter().map(|f| format!("{f}")).collect();
    format!("({})", parts.join(", "))
}

/// Elementary divisors: every `(π, e)` with `π^e` exactly dividing some
/// invariant factor, one entry per invariant factor.
pub fn elementary_divisors<F: BaseField>(
    factors: &[Poly<F>],
    opts: &FactorOptions,
) -> Result<(Vec<(Poly<F>, usize)>, Certainty)> {
    let mut out = Vec::new();
    let mut certainty = Certainty::Proven;
    for f in factors {
        let fact = F::factor(f, opts)?;
        if fact.certainty != Certainty::Proven {
            certainty = Certainty::BoundedSearchInconclusive;
        }
        out.extend(fact.factors);
    }
    Ok((out, certainty))
}

/// Rebuild invariant factors from elementary divisors.
pub fn from_elementary<F: Field>(ctx: &F::Ctx, divs: &[(Poly<F>, usize)]) -> InvariantFactors<F> {
    let mut by_prime: Vec<(Poly<F>, Vec<usize>)> = Vec::new();
    for (p, e) in divs {
        match by_prime.iter_mut().find(|(q, _)| q == p) {
            Some(slot) => slot.1.push(*e),
            None => by_prime.push((p.clone(), vec![*e])),
        }
    }
    let len = by_prime.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
    for (_, v) in by_prime.iter_mut() {
        v.sort_unstable_by(|a, b| b.cmp(a));
    }
    (0..len)
        .map(|i| {
            let mut acc = Poly::one(ctx);
            for (p, v) in &by_prime {
                if let Some(e) = v.get(i) {
                    acc = acc.mul(&p.pow(*e as u64));
                }
            }
            acc
        })
        .collect()
}

/// `dim Ker (M - λ)^k - dim Ker (M - λ)^(k-1)`.
pub fn n_k_counter<F: Field>(m: &Matrix<F>, lam: &F, k: usize) -> usize {
    assert!(k >= 1);
    let n = m.rows();
    let shifted = m.sub(&Matrix::scalar(m.ctx(), n, lam));
    let hi = shifted.pow(k as u64).rank();
    let lo = shifted.pow(k as u64 - 1).rank();
    lo - hi
}

/// Number of invariant factors divisible by `π^k`, i.e. the `n_k` sequence
/// for an irreducible `π`, read off the factor list.
pub fn n_k_from_factors<F: Field>(factors: &[Poly<F>], pi: &Poly<F>, k: usize) -> usize {
    factors.iter().filter(|f| f.valuation(pi) >= k).count()
}

/// Are the (finitely supported, non-increasing) sequences `p`-intertwined?
pub fn intertwined(a: &[usize], b: &[usize], p: usize) -> bool {
    let at = |s: &[usize], i: usize| s.get(i).copied().unwrap_or(0);
    let len = a.len().max(b.len());
    (0..len).all(|i| at(a, i + p) <= at(b, i) && at(b, i + p) <= at(a, i))
}

/// Decomposition of the space into the generalized kernel `E` of `f(M)` and
/// the stable image `R`.
#[derive(Clone, Debug)]
pub struct PrimarySplit<F: Field> {
    pub exceptional_basis: Matrix<F>,
    pub regular_basis: Matrix<F>,
    pub exceptional_block: Matrix<F>,
    pub regular_block: Matrix<F>,
}

impl<F: Field> PrimarySplit<F> {
    /// `Q = [E | R]`, so that `Q^-1 M Q = E-block ⊕ R-block`.
    pub fn transition(&self) -> Matrix<F> {
        let n = self.exceptional_basis.rows();
        let e = self.exceptional_basis.cols();
        let mut q = Matrix::zeros(self.exceptional_basis.ctx(), n, n);
        q.set_block(0, 0, &self.exceptional_basis);
        q.set_block(0, e, &self.regular_basis);
        q
    }
}

fn columns_to_matrix<F: Field>(ctx: &F::Ctx, n: usize, cols: &[Vec<F>]) -> Matrix<F> {
    Matrix::from_fn(ctx, n, cols.len(), |i, j| cols[j][i].clone())
}

/// Restriction of `M` to the invariant subspace spanned by the columns of
/// `basis`.
fn restrict<F: Field>(m: &Matrix<F>, basis: &Matrix<F>) -> Matrix<F> {
    if basis.cols() == 0 {
        return Matrix::zeros(m.ctx(), 0, 0);
    }
    basis.solve(&m.mul(basis)).expect("subspace is not invariant")
}

/// Split along `f`: `E = Ker f(M)^n`, `R = Im f(M)^n`, iterating until the
/// kernel stops growing.
pub fn primary_split<F: Field>(m: &Matrix<F>, f: &Poly<F>) -> PrimarySplit<F> {
    let n = m.rows();
    let ctx = m.ctx().clone();
    let fm = m.eval_poly(f);
    let mut power = Matrix::identity(&ctx, n);
    let mut rank = n;
    loop {
        let next = power.mul(&fm);
        let r = next.rank();
        power = next;
        if r == rank {
            break;
        }
        rank = r;
    }
    let ker = power.kernel();
    let (_, pivots) = power.rref();
    let img: Vec<Vec<F>> = pivots.iter().map(|&j| power.col(j)).collect();
    let eb = columns_to_matrix(&ctx, n, &ker);
    let rb = columns_to_matrix(&ctx, n, &img);
    PrimarySplit {
        exceptional_block: restrict(m, &eb),
        regular_block: restrict(m, &rb),
        exceptional_basis: eb,
        regular_basis: rb,
    }
}

/// The lower block-bidiagonal matrix with `n` diagonal copies of `N` and
/// identity blocks on the subdiagonal.
pub fn block_cyclic_matrix<F: Field>(nmat: &Matrix<F>, n: usize) -> Matrix<F> {
    let d = nmat.rows();
    let ctx = nmat.ctx();
    let mut m = Matrix::zeros(ctx, n * d, n * d);
    for k in 0..n {
        m.set_block(k * d, k * d, nmat);
        if k + 1 < n {
            m.set_block((k + 1) * d, k * d, &Matrix::identity(ctx, d));
        }
    }
    m
}

/// Predicted and computed invariant factors of the block-cyclic matrix:
/// `m - r` copies of `P^q` and `r` copies of `P^(q+1)`, where `m` is the
/// root multiplicity of `P` and `n = q m + r`. Errors if they disagree.
pub fn block_cyclic_invariants<F: Field>(
    nmat: &Matrix<F>,
    pirr: &Poly<F>,
    n: usize,
) -> Result<(InvariantFactors<F>, InvariantFactors<F>)> {
    if !nmat.eval_poly(pirr).is_zero() || nmat.rows() != pirr.degree().unwrap_or(0) {
        return Err(Error::AnnihilationFailure);
    }
    let m = root_multiplicity(pirr) as usize;
    let (q, r) = (n / m, n % m);
    let mut predicted = Vec::new();
    for _ in 0..r {
        predicted.push(pirr.pow(q as u64 + 1));
    }
    if q > 0 {
        for _ in 0..m - r {
            predicted.push(pirr.pow(q as u64));
        }
    }
    let computed = invariant_factors(&block_cyclic_matrix(nmat, n));
    if predicted != computed {
        return Err(Error::CertificateMismatch(format!(
            "block-cyclic law predicted {} but found {}",
            format_factors(&predicted),
            format_factors(&computed)
        )));
    }
    Ok((predicted, computed))
}
