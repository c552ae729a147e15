//! Brute-force ground truth over small prime fields. `A` runs over one
//! representative of each similarity class annihilated by `p`, `B` over every
//! matrix annihilated by `q`; the similarity classes of `A - B` (or `A B^-1`)
//! that occur are recorded and compared with the classifier on every class
//! of the ambient matrix space.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::canon::{companion_sum, format_factors, invariant_factors, InvariantFactors};
use crate::classify::{classify_matrix, ClassifyOptions, Mode, QuadraticPair, Verdict};
use crate::error::{Error, Result};
use crate::field::{Field, Fp, Ring};
use crate::linalg::Matrix;
use crate::poly::Poly;

/// Largest number of matrices `p^(n²)` the oracle will enumerate.
pub const DEFAULT_MATRIX_CAP: u64 = 1 << 20;

/// One similarity class with a sample splitting when it is reachable.
#[derive(Clone, Debug)]
pub struct ClassEntry {
    pub factors: InvariantFactors<Fp>,
    pub witness: Option<(Matrix<Fp>, Matrix<Fp>)>,
}

impl ClassEntry {
    pub fn reachable(&self) -> bool {
        self.witness.is_some()
    }
}

/// Every similarity class of `n x n` matrices (invertible ones in quotient
/// mode), each marked reachable or not.
#[derive(Clone, Debug)]
pub struct ReachabilityTable {
    pub pair: QuadraticPair<Fp>,
    pub n: usize,
    pub classes: Vec<ClassEntry>,
}

/// A class on which the classifier and the enumeration disagree.
#[derive(Clone, Debug)]
pub struct Mismatch {
    pub factors: InvariantFactors<Fp>,
    pub reachable: bool,
    pub verdict: Verdict,
}

impl core::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "class {}: enumeration says {}, classifier says {}",
            format_factors(&self.factors),
            if self.reachable { "reachable" } else { "unreachable" },
            self.verdict
        )
    }
}

fn key(fs: &[Poly<Fp>]) -> Vec<Vec<u64>> {
    fs.iter().map(|f| f.coeffs().iter().map(|c| c.value()).collect()).collect()
}

/// Every invariant-factor chain `f_1, f_2, ...` (`f_{i+1} | f_i`) with total
/// degree `n`; `invertible` drops chains with `f_1(0) = 0`.
pub fn all_classes(prime: u64, n: usize, invertible: bool) -> Vec<InvariantFactors<Fp>> {
    let elems = Fp::elements(&prime, u128::MAX).expect("prime fields are finite");
    let mut by_degree: Vec<Vec<Poly<Fp>>> = vec![Vec::new()];
    for d in 1..=n {
        by_degree.push(Poly::all_monic(&prime, &elems, d));
    }
    fn extend(
        by_degree: &[Vec<Poly<Fp>>],
        chain: &mut Vec<Poly<Fp>>,
        remaining: usize,
        out: &mut Vec<InvariantFactors<Fp>>,
    ) {
        if remaining == 0 {
            out.push(chain.clone());
            return;
        }
        let cap = chain.last().map_or(remaining, |f| f.degree().unwrap().min(remaining));
        for d in (1..=cap).rev() {
            for f in &by_degree[d] {
                if chain.last().is_some_and(|g| !f.divides(g)) {
                    continue;
                }
                chain.push(f.clone());
                extend(by_degree, chain, remaining - d, out);
                chain.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(&by_degree, &mut Vec::new(), n, &mut out);
    if invertible {
        out.retain(|fs| fs.first().is_none_or(|f| !f.coeff(0).is_zero()));
    }
    out
}

/// Matrix with entries given by the base-`p` digits of `code`.
fn decode(prime: u64, n: usize, mut code: u64) -> Matrix<Fp> {
    let mut m = Matrix::zeros(&prime, n, n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, Fp::new((code % prime) as i64, prime));
            code /= prime;
        }
    }
    m
}

fn encode(m: &Matrix<Fp>) -> u64 {
    let prime = *m.ctx();
    let mut code = 0u64;
    for i in (0..m.rows()).rev() {
        for j in (0..m.cols()).rev() {
            code = code * prime + m.get(i, j).value();
        }
    }
    code
}

fn annihilates(f: &Poly<Fp>, m: &Matrix<Fp>) -> bool {
    m.eval_poly(f).is_zero()
}

/// Caches invariant factors keyed by field, size and matrix code.
#[derive(Clone, Debug, Default)]
pub struct ClassCache {
    memo: BTreeMap<(u64, usize, u64), InvariantFactors<Fp>>,
}

impl ClassCache {
    pub fn new() -> Self {
        Self::default()
    }

    fn factors(&mut self, m: &Matrix<Fp>) -> &InvariantFactors<Fp> {
        self.memo.entry((*m.ctx(), m.rows(), encode(m))).or_insert_with(|| invariant_factors(m))
    }
}

/// Enumerate the reachable classes for `pair` in size `n`, refusing when
/// `p^(n²)` exceeds `cap`.
pub fn enumerate_reachable(
    pair: &QuadraticPair<Fp>,
    n: usize,
    cap: u64,
    cache: &mut ClassCache,
) -> Result<ReachabilityTable> {
    let prime = pair.ctx();
    let total = prime
        .checked_pow((n * n) as u32)
        .filter(|&t| t <= cap)
        .ok_or_else(|| Error::BudgetExceeded(format!("{prime}^{} matrices exceed the cap {cap}", n * n)))?;
    let quotient = pair.mode == Mode::Quotient;
    let mut classes: Vec<ClassEntry> =
        all_classes(prime, n, quotient).into_iter().map(|factors| ClassEntry { factors, witness: None }).collect();
    let index: BTreeMap<Vec<Vec<u64>>, usize> = classes.iter().enumerate().map(|(i, c)| (key(&c.factors), i)).collect();
    // Canonical p-annihilated matrices: chains whose first factor divides p.
    let a_list: Vec<Matrix<Fp>> = all_classes(prime, n, false)
        .into_iter()
        .filter(|fs| fs.first().is_none_or(|f| f.divides(&pair.p)))
        .map(|fs| companion_sum(&prime, &fs))
        .collect();
    let b_list: Vec<Matrix<Fp>> = (0..total).map(|c| decode(prime, n, c)).filter(|b| annihilates(&pair.q, b)).collect();
    for a in &a_list {
        for b in &b_list {
            let m = if quotient {
                match b.inverse() {
                    Some(binv) => a.mul(&binv),
                    None => continue,
                }
            } else {
                a.sub(b)
            };
            let fs = cache.factors(&m);
            let slot = *index
                .get(&key(fs))
                .ok_or_else(|| Error::Internal(format!("class {} missing from the list", format_factors(fs))))?;
            if classes[slot].witness.is_none() {
                classes[slot].witness = Some((a.clone(), b.clone()));
            }
        }
    }
    Ok(ReachabilityTable { pair: pair.clone(), n, classes })
}

/// Classify the companion representative of every class and report where
/// the verdict differs from reachability (Unknown always counts).
pub fn compare_with_classifier(table: &ReachabilityTable, opts: &ClassifyOptions) -> Result<Vec<Mismatch>> {
    let prime = table.pair.ctx();
    let opts = ClassifyOptions { transition: false, ..opts.clone() };
    let mut out = Vec::new();
    for c in &table.classes {
        let m = companion_sum(&prime, &c.factors);
        let verdict = classify_matrix(&m, &table.pair, &opts)?.verdict;
        if verdict == Verdict::Unknown || (verdict == Verdict::Yes) != c.reachable() {
            out.push(Mismatch { factors: c.factors.clone(), reachable: c.reachable(), verdict });
        }
    }
    Ok(out)
}

/// Every ordered pair of monic quadratics over `F_p` valid for `mode`.
pub fn all_pairs(prime: u64, mode: Mode) -> Result<Vec<QuadraticPair<Fp>>> {
    let elems = Fp::elements(&prime, u128::MAX).expect("prime fields are finite");
    let quads = Poly::all_monic(&prime, &elems, 2);
    let mut out = Vec::new();
    for p in &quads {
        for q in &quads {
            if mode == Mode::Quotient && (p.coeff(0).is_zero() || q.coeff(0).is_zero()) {
                continue;
            }
            out.push(QuadraticPair::new(p.clone(), q.clone(), mode, &Default::default())?);
        }
    }
    Ok(out)
}

/// Human-readable summary line of a table.
pub fn summary(table: &ReachabilityTable) -> String {
    let reach = table.classes.iter().filter(|c| c.reachable()).count();
    format!(
        "p = {}, q = {}, {}, n = {}: {reach} of {} classes reachable",
        table.pair.p,
        table.pair.q,
        table.pair.mode,
        table.n,
        table.classes.len()
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldDescriptor;

    fn fp(p: u64, c: &[i64]) -> Poly<Fp> {
        Poly::from_i64s(&p, c)
    }

    fn pair(p: u64, a: &[i64], b: &[i64], mode: Mode) -> QuadraticPair<Fp> {
        QuadraticPair::new(fp(p, a), fp(p, b), mode, &Default::default()).unwrap()
    }

    fn reachable_keys(t: &ReachabilityTable) -> Vec<InvariantFactors<Fp>> {
        t.classes.iter().filter(|c| c.reachable()).map(|c| c.factors.clone()).collect()
    }

    #[test]
    fn class_counts() {
        // Similarity classes of 2x2 matrices over F_q: q² + q.
        assert_eq!(all_classes(2, 2, false).len(), 6);
        assert_eq!(all_classes(3, 2, false).len(), 12);
        // 3x3 over F_2: q³ + q² + q.
        assert_eq!(all_classes(2, 3, false).len(), 14);
        assert_eq!(all_classes(2, 1, true).len(), 1);
    }

    #[test]
    fn trinomial_difference_reaches_scalars_only() {
        let pr = pair(2, &[1, 1, 1], &[1, 1, 1], Mode::Difference);
        let t = enumerate_reachable(&pr, 2, DEFAULT_MATRIX_CAP, &mut ClassCache::new()).unwrap();
        let keys = reachable_keys(&t);
        assert_eq!(keys.len(), 2);
        assert!(keys.contains(&vec![fp(2, &[0, 1]), fp(2, &[0, 1])]));
        assert!(keys.contains(&vec![fp(2, &[1, 1]), fp(2, &[1, 1])]));
        assert!(compare_with_classifier(&t, &ClassifyOptions::default()).unwrap().is_empty());
    }

    #[test]
    fn trinomial_quotient_reaches_companion() {
        let pr = pair(2, &[1, 1, 1], &[1, 1, 1], Mode::Quotient);
        let t = enumerate_reachable(&pr, 2, DEFAULT_MATRIX_CAP, &mut ClassCache::new()).unwrap();
        let keys = reachable_keys(&t);
        assert!(keys.contains(&vec![fp(2, &[1, 1, 1])]));
        assert!(keys.contains(&vec![fp(2, &[1, 1]), fp(2, &[1, 1])]));
        assert!(compare_with_classifier(&t, &ClassifyOptions::default()).unwrap().is_empty());
    }

    #[test]
    fn odd_size_with_irreducible_p_is_empty() {
        let pr = pair(2, &[1, 1, 1], &[1, 0, 1], Mode::Difference);
        let t = enumerate_reachable(&pr, 1, DEFAULT_MATRIX_CAP, &mut ClassCache::new()).unwrap();
        assert!(reachable_keys(&t).is_empty());
        assert_eq!(FieldDescriptor::PrimeField(2).characteristic(), 2);
    }

    #[test]
    fn injected_fault_is_reported() {
        let pr = pair(2, &[1, 1, 1], &[1, 1, 1], Mode::Difference);
        let mut t = enumerate_reachable(&pr, 2, DEFAULT_MATRIX_CAP, &mut ClassCache::new()).unwrap();
        let slot = t.classes.iter().position(|c| c.reachable()).unwrap();
        t.classes[slot].witness = None;
        let report = compare_with_classifier(&t, &ClassifyOptions::default()).unwrap();
        assert_eq!(report.len(), 1);
        assert!(report[0].verdict == Verdict::Yes && !report[0].reachable);
        t.classes.clear();
        assert!(compare_with_classifier(&t, &ClassifyOptions::default()).unwrap().is_empty());
    }

    #[test]
    fn budget_is_enforced() {
        let pr = pair(3, &[1, 0, 1], &[1, 0, 1], Mode::Difference);
        let err = enumerate_reachable(&pr, 4, 1000, &mut ClassCache::new()).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded(_)));
    }
}
