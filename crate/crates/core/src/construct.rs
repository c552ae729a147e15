//! Witness construction. Every certified block gets an explicit pair
//! `(A, B)`: duplication through the regular representation of `W(p,q,x)`,
//! Type 1 blocks through a Hensel-lifted splitting into `2x2` matrices,
//! split roots through lower bidiagonal chains, split `q` through block
//! bidiagonal chains, and the remaining exceptional pairs through the same
//! chains over `L = F[t]/(p)` restricted back to `F`. Block witnesses are
//! conjugated onto companion form, summed and transported to the input
//! matrix, then verified. A bounded search is the fallback.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::canon::{companion_sum, find_similarity, format_factors, invariant_factors};
use crate::classify::{
    BlockLabel, CaseTag, Certificate, ClassifyOptions, IndecomposableBlock, Mode, QuadraticPair, Reduction, Verdict,
};
use crate::error::{Error, Result};
use crate::field::{BaseField, ExtElem, Field, QElem, QuotientRing, Ring};
use crate::linalg::{companion, restrict_ext, restrict_local, Matrix};
use crate::poly::transform::homothety;
use crate::poly::Poly;
use crate::quadform::{root_in_extension, IsotropyVerdict, RootSearch};
use crate::walgebra::{hensel_adapted_pair, split_to_2x2, BasisVariant, WAlgebra};

/// A verified splitting of a matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness<F: Field> {
    pub a: Matrix<F>,
    pub b: Matrix<F>,
    pub mode: Mode,
    /// Always true on values returned by this module.
    pub verified: bool,
}

/// `A - B` or `A B^-1` (`None` when `B` is singular).
pub fn combine<F: Field>(a: &Matrix<F>, b: &Matrix<F>, mode: Mode) -> Option<Matrix<F>> {
    match mode {
        Mode::Difference => Some(a.sub(b)),
        Mode::Quotient => b.inverse().map(|bi| a.mul(&bi)),
    }
}

/// Check `p(A) = 0`, `q(B) = 0` and `A - B = M` (or `A B^-1 = M`).
pub fn verify<F: Field>(m: &Matrix<F>, a: &Matrix<F>, b: &Matrix<F>, p: &Poly<F>, q: &Poly<F>, mode: Mode) -> bool {
    a.rows() == m.rows()
        && b.rows() == m.rows()
        && a.eval_poly(p).is_zero()
        && b.eval_poly(q).is_zero()
        && combine(a, b, mode).is_some_and(|c| &c == m)
}

fn verified<F: Field>(
    m: &Matrix<F>,
    a: Matrix<F>,
    b: Matrix<F>,
    pair_p: &Poly<F>,
    pair_q: &Poly<F>,
    mode: Mode,
) -> Result<Witness<F>> {
    if !verify(m, &a, &b, pair_p, pair_q, mode) {
        return Err(Error::Internal("witness failed verification".into()));
    }
    Ok(Witness { a, b, mode, verified: true })
}

// ---------------------------------------------------------------------------
// Chains over an arbitrary field

/// Lower bidiagonal `A`, `B` with diagonals drawn from the roots `xs` of `p`
/// and `ys` of `q`, whose combination is cyclic with eigenvalue multiset
/// `target`. Ownership of the subdiagonal alternates between `A` and `B`;
/// at an owned step the owner's next diagonal entry is the other root.
pub fn split_chain<K: Field>(
    xs: &[K; 2],
    ys: &[K; 2],
    mode: Mode,
    target: &[(K, usize)],
) -> Option<(Matrix<K>, Matrix<K>)> {
    let ctx = xs[0].ctx();
    let len: usize = target.iter().map(|(_, c)| c).sum();
    if len == 0 {
        return Some((Matrix::zeros(&ctx, 0, 0), Matrix::zeros(&ctx, 0, 0)));
    }
    let value = |i: usize, j: usize| match mode {
        Mode::Difference => xs[i].sub(&ys[j]),
        Mode::Quotient => xs[i].div(&ys[j]),
    };
    let slot = |i: usize, j: usize| target.iter().position(|(z, c)| *c > 0 && *z == value(i, j));
    // State: remaining counts, current indices, owner of the next step.
    struct Search<'a> {
        slot: &'a dyn Fn(usize, usize) -> Option<usize>,
        dead: BTreeSet<(Vec<usize>, usize, usize, bool)>,
        path: Vec<(usize, usize)>,
    }
    fn go(s: &mut Search<'_>, counts: &mut Vec<usize>, i: usize, j: usize, a_owns: bool) -> bool {
        if counts.iter().all(|&c| c == 0) {
            return true;
        }
        let key = (counts.clone(), i, j, a_owns);
        if s.dead.contains(&key) {
            return false;
        }
        let (ni_opts, nj_opts): (Vec<usize>, Vec<usize>) =
            if a_owns { (vec![1 - i], vec![0, 1]) } else { (vec![0, 1], vec![1 - j]) };
        for &ni in &ni_opts {
            for &nj in &nj_opts {
                if let Some(k) = (s.slot)(ni, nj) {
                    if counts[k] == 0 {
                        continue;
                    }
                    counts[k] -= 1;
                    s.path.push((ni, nj));
                    if go(s, counts, ni, nj, !a_owns) {
                        return true;
                    }
                    s.path.pop();
                    counts[k] += 1;
                }
            }
        }
        s.dead.insert(key);
        false
    }
    let base: Vec<usize> = target.iter().map(|(_, c)| *c).collect();
    for i in 0..2 {
        for j in 0..2 {
            let Some(k) = slot(i, j) else { continue };
            for a_owns in [true, false] {
                let mut counts = base.clone();
                counts[k] -= 1;
                let mut s = Search { slot: &slot, dead: BTreeSet::new(), path: vec![(i, j)] };
                if go(&mut s, &mut counts, i, j, a_owns) {
                    let n = s.path.len();
                    let mut a = Matrix::zeros(&ctx, n, n);
                    let mut b = Matrix::zeros(&ctx, n, n);
                    for (k, &(pi, pj)) in s.path.iter().enumerate() {
                        a.set(k, k, xs[pi].clone());
                        b.set(k, k, ys[pj].clone());
                        if k + 1 < n {
                            let owner_a = (k % 2 == 0) == a_owns;
                            let target = if owner_a { &mut a } else { &mut b };
                            target.set(k + 1, k, K::one(&ctx));
                        }
                    }
                    return Some((a, b));
                }
            }
        }
    }
    None
}

/// Block chain for an irreducible-or-not quadratic `P` and a sequence of
/// roots `ys` of `Q = (t - y1)(t - y2)` alternating between the two roots.
/// Returns `(A_s, B_s)` with `P(A_s) = 0`, `Q(B_s) = 0`; the combination has
/// the images of `P` at the `y_k` on its diagonal blocks.
pub fn image_chain<K: Field>(p: &Poly<K>, ys: &[K], mode: Mode) -> Result<(Matrix<K>, Matrix<K>)> {
    let ctx = p.ctx().clone();
    let s = ys.len();
    let kmat = Matrix::from_fn(&ctx, 2, 2, |i, j| if i == 0 && j == 1 { K::one(&ctx) } else { K::zero(&ctx) });
    let mut a = Matrix::zeros(&ctx, 2 * s, 2 * s);
    let mut t = Matrix::zeros(&ctx, 2 * s, 2 * s);
    for (k, y) in ys.iter().enumerate() {
        match mode {
            Mode::Difference => {
                let blk = companion(&p.translate(y)).add(&Matrix::scalar(&ctx, 2, y));
                a.set_block(2 * k, 2 * k, &blk);
                t.set_block(2 * k, 2 * k, &Matrix::scalar(&ctx, 2, y));
                if k + 1 < s {
                    t.set_block(2 * k + 2, 2 * k, &kmat.neg());
                }
            }
            Mode::Quotient => {
                let blk = companion(&homothety(p, y)?).scale(y);
                a.set_block(2 * k, 2 * k, &blk);
                t.set_block(2 * k, 2 * k, &Matrix::scalar(&ctx, 2, &y.inv()));
                if k + 1 < s {
                    t.set_block(2 * k + 2, 2 * k, &kmat);
                }
            }
        }
    }
    let b = match mode {
        Mode::Difference => t,
        Mode::Quotient => t.inverse().ok_or(Error::NotInvertible)?,
    };
    Ok((a, b))
}

// ---------------------------------------------------------------------------
// Block constructions over the base field

/// Duplication: `C(S(ρ)) ⊕ C(S(ρ))` from the regular representation of
/// `W(p,q,x)` over `F[t]/(ρ)`.
fn duplication<F: BaseField>(pair: &QuadraticPair<F>, rho: &Poly<F>) -> Result<(Matrix<F>, Matrix<F>)> {
    let ring = QuotientRing::new_unchecked(rho, 1);
    let embed = |c: &F| QElem::from_base(&ring, c);
    let x = pair.x_param(&QElem::t(&ring), embed);
    let alg = WAlgebra::from_pair(&pair.p, &pair.q, x, embed)?;
    let variant = match pair.mode {
        Mode::Difference => BasisVariant::DifferenceBasis,
        Mode::Quotient => BasisVariant::QuotientBasis,
    };
    let (a, b) = alg.regular_representation(variant)?;
    let d = rho.degree().unwrap();
    let base = pair.ctx();
    Ok((restrict_local(&a, &base, d), restrict_local(&b, &base, d)))
}

/// Type 1 single: `C(S(r^n))` from an adapted pair lifted to `F[t]/(r^n)`.
fn type_one<F: BaseField>(
    pair: &QuadraticPair<F>,
    r: &Poly<F>,
    n: usize,
    opts: &ClassifyOptions,
) -> Result<(Matrix<F>, Matrix<F>)> {
    let witness = match pair.decide_type(r, &opts.isotropy)? {
        IsotropyVerdict::Isotropic(w) => w,
        _ => return Err(Error::CertificateMismatch(format!("{r} is not certified Type 1"))),
    };
    let ring = QuotientRing::new_unchecked(r, n);
    let embed = |c: &F| QElem::from_base(&ring, c);
    let x = pair.x_param(&QElem::t(&ring), embed);
    let alg = WAlgebra::from_pair(&pair.p, &pair.q, x, embed)?;
    let (xx, yy) = hensel_adapted_pair(&alg, &witness)?;
    let (a, b) = split_to_2x2(&alg, &xx, &yy)?;
    let d = ring.dim();
    let base = pair.ctx();
    Ok((restrict_local(&a, &base, d), restrict_local(&b, &base, d)))
}

fn alternate<K: Clone>(first: &K, second: &K, len: usize) -> Vec<K> {
    (0..len).map(|k| if k % 2 == 0 { first.clone() } else { second.clone() }).collect()
}

/// Exponents of the target block at the candidate roots `zs`.
fn exponents<K: Field>(f: &Poly<K>, zs: &[K]) -> Vec<(K, usize)> {
    let mut out: Vec<(K, usize)> = Vec::new();
    for z in zs {
        if out.iter().any(|(w, _)| w == z) {
            continue;
        }
        let lin = Poly::new(&z.ctx(), vec![z.neg(), K::one(&z.ctx())]);
        let e = f.valuation(&lin);
        if e > 0 {
            out.push((z.clone(), e));
        }
    }
    out
}

fn split_block<F: BaseField>(pair: &QuadraticPair<F>, blk: &IndecomposableBlock<F>) -> Result<(Matrix<F>, Matrix<F>)> {
    let xs = [pair.p_roots[0].clone(), pair.p_roots[1].clone()];
    let ys = [pair.q_roots[0].clone(), pair.q_roots[1].clone()];
    let zs: Vec<F> =
        (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).map(|(i, j)| pair.combine(&xs[i], &ys[j])).collect();
    let target = exponents(&blk.factors[0], &zs);
    split_chain(&xs, &ys, pair.mode, &target)
        .ok_or_else(|| Error::Internal(format!("no bidiagonal chain for {}", format_factors(&blk.factors))))
}

fn image_block<F: BaseField>(pair: &QuadraticPair<F>, blk: &IndecomposableBlock<F>) -> Result<(Matrix<F>, Matrix<F>)> {
    let (y1, y2) = (&pair.q_roots[0], &pair.q_roots[1]);
    let len = blk.size() / 2;
    let seq = if blk.label == BlockLabel::ImageFree || pair.image(y1) == blk.prime {
        alternate(y1, y2, len)
    } else {
        alternate(y2, y1, len)
    };
    image_chain(&pair.p, &seq, pair.mode)
}

/// Candidate constructions over `L = F[t]/(p)` for strict or loose pairs.
fn extension_candidates<F: BaseField>(
    pair: &QuadraticPair<F>,
    blk: &IndecomposableBlock<F>,
    opts: &ClassifyOptions,
) -> Result<Vec<(Matrix<F>, Matrix<F>)>> {
    let field = QuotientRing::new_unchecked(&pair.p, 1);
    let embed = |c: &F| ExtElem::from_base(&field, c);
    let theta = ExtElem::generator(&field);
    let xs = [theta.clone(), embed(&pair.lambda).sub(&theta)];
    let base = pair.ctx();
    let mut out = Vec::new();
    let restrict = |m: &Matrix<ExtElem<F>>| restrict_ext(m, &base, 2);
    match &pair.case {
        CaseTag::BothIrrSameField(_) => {
            let RootSearch::Found(y) = root_in_extension(&pair.q, &field, &opts.factor)? else {
                return Err(Error::Internal("q has no root in the splitting field of p".into()));
            };
            let ys = [y.clone(), embed(&pair.mu).sub(&y)];
            let pi = &blk.prime;
            let (a, b) = (blk.n + blk.epsilon, blk.n);
            let pl = pi.map(&field, embed);
            let targets: Vec<Vec<(ExtElem<F>, usize)>> = if pi.degree() == Some(1) {
                vec![vec![(embed(&pi.coeff(0).neg()), a)]]
            } else {
                let RootSearch::Found(z1) = root_in_extension(pi, &field, &opts.factor)? else {
                    return Err(Error::Internal(format!("{pi} does not split over the splitting field of p")));
                };
                let z2 = pl.coeff(1).neg().sub(&z1);
                if z1 == z2 {
                    vec![vec![(z1, a + b)]]
                } else {
                    vec![vec![(z1.clone(), a), (z2.clone(), b)], vec![(z1, b), (z2, a)]]
                }
            };
            for mut t in targets {
                t.retain(|(_, c)| *c > 0);
                if let Some((al, bl)) = split_chain(&xs, &ys, pair.mode, &t) {
                    out.push((restrict(&al), restrict(&bl)));
                }
            }
        }
        CaseTag::BothIrrDistinctFields { .. } => {
            // Swapped chain: q over L with the roots of p, then exchange.
            let ql = pair.q.map(&field, embed);
            let size: usize = blk.size();
            let s = size / 4;
            for (first, second) in [(&xs[0], &xs[1]), (&xs[1], &xs[0])] {
                let seq = alternate(first, second, s);
                let (aq, bp) = image_chain(&ql, &seq, pair.mode)?;
                out.push((restrict(&bp), restrict(&aq)));
            }
        }
        _ => return Err(Error::Internal("extension route needs irreducible p and q".into())),
    }
    Ok(out)
}

fn pair_block<F: BaseField>(
    pair: &QuadraticPair<F>,
    blk: &IndecomposableBlock<F>,
    opts: &ClassifyOptions,
) -> Result<Vec<(Matrix<F>, Matrix<F>)>> {
    let mut out = Vec::new();
    if blk.factors.len() == 2 && blk.factors[0] == blk.factors[1] {
        if let Some(rho) = pair.shape_inverse(&blk.factors[0]) {
            if rho.degree().unwrap_or(0) > 0 {
                out.push(duplication(pair, &rho)?);
            }
        }
    }
    out.extend(extension_candidates(pair, blk, opts)?);
    Ok(out)
}

/// Candidate witnesses for one block, before similarity matching.
fn block_candidates<F: BaseField>(
    pair: &QuadraticPair<F>,
    blk: &IndecomposableBlock<F>,
    opts: &ClassifyOptions,
) -> Result<Vec<(Matrix<F>, Matrix<F>)>> {
    Ok(match blk.label {
        BlockLabel::RegularDoubled => {
            vec![duplication(pair, &blk.prime.pow(blk.n as u64))?]
        }
        BlockLabel::RegularTypeOne => vec![type_one(pair, &blk.prime, blk.n, opts)?],
        BlockLabel::SplitFree | BlockLabel::SplitGapTwo | BlockLabel::SplitGapOne => {
            vec![split_block(pair, blk)?]
        }
        BlockLabel::ImageFree | BlockLabel::ImageBalanced => vec![image_block(pair, blk)?],
        BlockLabel::StrictPair | BlockLabel::LoosePair => pair_block(pair, blk, opts)?,
    })
}

/// A witness `(A, B)` whose combination equals the block matrix exactly.
pub fn build_block<F: BaseField>(
    pair: &QuadraticPair<F>,
    blk: &IndecomposableBlock<F>,
    opts: &ClassifyOptions,
    search_budget: u64,
) -> Result<Witness<F>> {
    let ctx = pair.ctx();
    let target = blk.matrix(&ctx);
    let expected = invariant_factors(&target);
    let candidates = block_candidates(pair, blk, opts).unwrap_or_default();
    for (a, b) in candidates {
        let Some(m) = combine(&a, &b, pair.mode) else { continue };
        if m.rows() != target.rows() || invariant_factors(&m) != expected {
            continue;
        }
        let s = find_similarity(&m, &target)?;
        let sinv = s.inverse().ok_or(Error::NotInvertible)?;
        return verified(&target, a.conjugate(&s, &sinv), b.conjugate(&s, &sinv), &pair.p, &pair.q, pair.mode);
    }
    search_witness(&target, pair, search_budget)
}

/// Build and verify a witness for a YES certificate of `m`.
pub fn build_witness<F: BaseField>(
    m: &Matrix<F>,
    pair: &QuadraticPair<F>,
    cert: &Certificate<F>,
    opts: &ClassifyOptions,
    search_budget: u64,
) -> Result<Witness<F>> {
    if cert.verdict != Verdict::Yes {
        return Err(Error::CertificateMismatch(format!("verdict is {}", cert.verdict)));
    }
    let (work_pair, work_m) = match cert.reduction {
        None => (pair.clone(), m.clone()),
        Some(Reduction::Negate) => (pair.swapped(&opts.factor)?, m.neg()),
        Some(Reduction::Invert) => (pair.swapped(&opts.factor)?, m.inverse().ok_or(Error::NotInvertible)?),
    };
    let ctx = pair.ctx();
    let mut a_blocks = Vec::new();
    let mut b_blocks = Vec::new();
    for blk in cert.blocks() {
        let w = build_block(&work_pair, blk, opts, search_budget)?;
        a_blocks.push(w.a);
        b_blocks.push(w.b);
    }
    let target = cert.block_matrix(&ctx);
    let p = match &cert.transition {
        Some(p) => p.clone(),
        None => find_similarity(&work_m, &target)?,
    };
    if p.mul(&work_m) != target.mul(&p) {
        return Err(Error::CertificateMismatch("transition does not conjugate the matrix onto its blocks".into()));
    }
    let pinv = p.inverse().ok_or(Error::NotInvertible)?;
    let a = Matrix::direct_sum(&ctx, &a_blocks).conjugate(&pinv, &p);
    let b = Matrix::direct_sum(&ctx, &b_blocks).conjugate(&pinv, &p);
    let (a, b) = match cert.reduction {
        None => (a, b),
        Some(_) => (b, a),
    };
    verified(m, a, b, &pair.p, &pair.q, pair.mode)
}

/// Matrices with entries from `elems` in row-major counter order.
fn counter_matrix<F: Field>(ctx: &F::Ctx, elems: &[F], n: usize, mut code: u128) -> Matrix<F> {
    let k = elems.len() as u128;
    let mut m = Matrix::zeros(ctx, n, n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, elems[(code % k) as usize].clone());
            code /= k;
        }
    }
    m
}

/// Canonical `q`-annihilated forms: chains of invariant factors dividing
/// `q`, in lexicographic order of their degree sequences.
fn q_canonical_forms<F: BaseField>(pair: &QuadraticPair<F>, n: usize) -> Vec<Matrix<F>> {
    let ctx = pair.ctx();
    let mut divisors: Vec<Poly<F>> = vec![pair.q.clone()];
    for z in &pair.q_roots {
        let lin = Poly::new(&ctx, vec![z.neg(), F::one(&ctx)]);
        if !divisors.contains(&lin) {
            divisors.push(lin);
        }
    }
    let mut out = Vec::new();
    fn extend<F: Field>(divs: &[Poly<F>], chain: &mut Vec<Poly<F>>, remaining: usize, out: &mut Vec<Vec<Poly<F>>>) {
        if remaining == 0 {
            out.push(chain.clone());
            return;
        }
        for d in divs {
            let deg = d.degree().unwrap();
            if deg > remaining || chain.last().is_some_and(|g| !d.divides(g)) {
                continue;
            }
            chain.push(d.clone());
            extend(divs, chain, remaining - deg, out);
            chain.pop();
        }
    }
    let mut chains = Vec::new();
    extend(&divisors, &mut Vec::new(), n, &mut chains);
    chains.sort_by_key(|c| c.iter().map(|f| core::cmp::Reverse(f.degree().unwrap())).collect::<Vec<_>>());
    for c in chains {
        out.push(companion_sum(&ctx, &c));
    }
    out
}

/// Enumerate `B = S B_can S^-1` over canonical `q`-annihilated forms and a
/// counter enumeration of `S`, testing `p(M + B) = 0` (or `p(M B) = 0`).
/// Complete over finite fields once the counter is exhausted.
pub fn search_witness<F: BaseField>(m: &Matrix<F>, pair: &QuadraticPair<F>, budget: u64) -> Result<Witness<F>> {
    let ctx = pair.ctx();
    let n = m.rows();
    let mut tried = 0u64;
    if budget == 0 {
        return Err(Error::SearchExhausted { tried });
    }
    let elems = F::elements(&ctx, 1 << 16).unwrap_or_else(|| F::search_elements(&ctx, 1));
    let total = (elems.len() as u128).checked_pow((n * n) as u32).unwrap_or(u128::MAX);
    let forms = q_canonical_forms(pair, n);
    for code in 0..total {
        let s = counter_matrix(&ctx, &elems, n, code);
        let Some(sinv) = s.inverse() else { continue };
        for bc in &forms {
            if tried >= budget {
                return Err(Error::SearchExhausted { tried });
            }
            tried += 1;
            let b = bc.conjugate(&s, &sinv);
            let a = match pair.mode {
                Mode::Difference => m.add(&b),
                Mode::Quotient => m.mul(&b),
            };
            if a.eval_poly(&pair.p).is_zero() {
                return verified(m, a, b, &pair.p, &pair.q, pair.mode);
            }
        }
    }
    Err(Error::SearchExhausted { tried })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{classify_matrix, indecomposable_atlas};
    use crate::field::{Fp, Rational};
    use crate::poly::factor::FactorOptions;

    fn fp(p: u64, c: &[i64]) -> Poly<Fp> {
        Poly::from_i64s(&p, c)
    }

    fn qp(c: &[i64]) -> Poly<Rational> {
        Poly::from_i64s(&(), c)
    }

    fn pair<F: BaseField>(p: Poly<F>, q: Poly<F>, mode: Mode) -> QuadraticPair<F> {
        QuadraticPair::new(p, q, mode, &FactorOptions::default()).unwrap()
    }

    fn round_trip<F: BaseField>(m: &Matrix<F>, pr: &QuadraticPair<F>) -> Witness<F> {
        let opts = ClassifyOptions::default();
        let cert = classify_matrix(m, pr, &opts).unwrap();
        assert_eq!(cert.verdict, Verdict::Yes, "{}", format_factors(&cert.invariant_factors));
        build_witness(m, pr, &cert, &opts, 0).unwrap()
    }

    #[test]
    fn trivial_examples() {
        let pr = pair(fp(3, &[1, 0, 1]), fp(3, &[1, 0, 1]), Mode::Difference);
        let w = round_trip(&Matrix::zeros(&3, 2, 2), &pr);
        assert_eq!(w.a, w.b);
        let pr = pair(fp(2, &[1, 1, 1]), fp(2, &[1, 1, 1]), Mode::Quotient);
        let w = round_trip(&Matrix::identity(&2, 2), &pr);
        assert_eq!(w.a, w.b);
    }

    #[test]
    fn rational_type_one_quotient() {
        let pr = pair(qp(&[1, 0, 1]), qp(&[1, 0, 1]), Mode::Quotient);
        let m = companion(&qp(&[1, -3, 1]));
        let w = round_trip(&m, &pr);
        assert!(w.verified);
    }

    #[test]
    fn search_examples() {
        let pr = pair(fp(2, &[1, 1, 1]), fp(2, &[1, 1, 1]), Mode::Difference);
        assert!(search_witness(&Matrix::identity(&2, 2), &pr, 1 << 20).is_ok());
        let c = companion(&fp(2, &[1, 1, 1]));
        assert!(matches!(search_witness(&c, &pr, 1 << 20), Err(Error::SearchExhausted { tried }) if tried > 0));
        assert_eq!(search_witness(&c, &pr, 0), Err(Error::SearchExhausted { tried: 0 }));
    }

    #[test]
    fn chains_realize_targets() {
        let x = |v: i64| Fp::new(v, 5);
        let (a, b) =
            split_chain(&[x(1), x(2)], &[x(3), x(4)], Mode::Difference, &[(x(3), 2), (x(3), 0), (x(2), 1)]).unwrap();
        let m = a.sub(&b);
        assert_eq!(invariant_factors(&m).len(), 1);
        let (a, b) = image_chain(&fp(5, &[2, 0, 1]), &[x(1), x(4), x(1)], Mode::Quotient).unwrap();
        assert!(a.eval_poly(&fp(5, &[2, 0, 1])).is_zero());
        assert!(b.eval_poly(&fp(5, &[4, 0, 1])).is_zero());
    }

    #[test]
    fn atlas_round_trip_small() {
        for (p, q) in [(&[1, 1, 1][..], &[1, 1, 1][..]), (&[1, 0, 1], &[0, 1, 1]), (&[1, 1, 1], &[1, 0, 1])] {
            for mode in [Mode::Difference, Mode::Quotient] {
                if mode == Mode::Quotient && (p[0] == 0 || q[0] == 0) {
                    continue;
                }
                let pr = pair(fp(2, p), fp(2, q), mode);
                for e in indecomposable_atlas(&pr, 4, &ClassifyOptions::default()).unwrap() {
                    round_trip(&e.matrix, &pr);
                }
            }
        }
    }
}
