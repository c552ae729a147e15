//! Factorization into monic irreducibles over finite fields (square-free
//! split, distinct-degree split, then exhaustive or randomized equal-degree
//! split), over the rationals (Yun square-free split, rational roots and
//! Kronecker interpolation) and over `F_p(s)` (Gauss-lemma root test and a
//! bounded search for quadratic factors).

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Field, Fp, RatFunc, Rational, Ring};
use crate::poly::Poly;

/// Whether every listed factor is known to be irreducible.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certainty {
    Proven,
    BoundedSearchInconclusive,
}

/// `unit * prod factor_i^mult_i`.
#[derive(Clone, Debug)]
pub struct Factorization<F: Field> {
    pub unit: F,
    pub factors: Vec<(Poly<F>, usize)>,
    pub certainty: Certainty,
}

impl<F: Field> Factorization<F> {
    /// Multiply everything back together.
    pub fn reconstruct(&self) -> Poly<F> {
        let ctx = self.unit.ctx();
        let mut acc = Poly::constant(self.unit.clone());
        for (f, m) in &self.factors {
            acc = acc.mul(&f.pow(*m as u64));
        }
        if acc.is_zero() {
            Poly::zero(&ctx)
        } else {
            acc
        }
    }

    /// Linear factors as roots, with multiplicity.
    pub fn roots(&self) -> Vec<(F, usize)> {
        self.factors.iter().filter(|(f, _)| f.degree() == Some(1)).map(|(f, m)| (f.coeff(0).neg(), *m)).collect()
    }

    pub fn is_proven(&self) -> bool {
        self.certainty == Certainty::Proven
    }
}

/// Knobs for the factorization routines.
#[derive(Clone, Debug)]
pub struct FactorOptions {
    /// Degree bound for candidate coefficients over `F_p(s)`.
    pub fps_bound: usize,
    /// Seed of the randomized equal-degree splitting.
    pub seed: u64,
    /// Largest exhaustive candidate count before switching to randomized
    /// splitting over finite fields.
    pub exhaustive_limit: u128,
}

impl Default for FactorOptions {
    fn default() -> Self {
        FactorOptions { fps_bound: 4, seed: 0, exhaustive_limit: 1_000_000 }
    }
}

fn merge<F: Field>(factors: Vec<(Poly<F>, usize)>) -> Vec<(Poly<F>, usize)> {
    let mut out: Vec<(Poly<F>, usize)> = Vec::new();
    for (f, m) in factors {
        if let Some(slot) = out.iter_mut().find(|(g, _)| *g == f) {
            slot.1 += m;
        } else {
            out.push((f, m));
        }
    }
    out.sort_by_key(|(f, _)| f.degree());
    out
}

fn finish<F: Field>(
    input: &Poly<F>,
    unit: F,
    factors: Vec<(Poly<F>, usize)>,
    certainty: Certainty,
) -> Result<Factorization<F>> {
    let fact = Factorization { unit, factors: merge(factors), certainty };
    if fact.reconstruct() != *input {
        return Err(Error::Internal(alloc::format!("factorization of {input} does not multiply back")));
    }
    Ok(fact)
}

// ---------------------------------------------------------------------------
// Finite fields

fn finite_pth_root<F: Field>(a: &F, q: u128, p: u64) -> F {
    let mut e = q / p as u128;
    let mut base = a.clone();
    let mut acc = F::one(&a.ctx());
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base);
        }
        e >>= 1;
        base = base.mul(&base);
    }
    acc
}

fn poly_pth_root<F: Field>(f: &Poly<F>, q: u128, p: u64) -> Poly<F> {
    let d = f.degree().unwrap();
    let coeffs = (0..=d / p as usize).map(|k| finite_pth_root(&f.coeff(k * p as usize), q, p)).collect();
    Poly::new(f.ctx(), coeffs)
}

fn squarefree_finite<F: Field>(f: &Poly<F>, q: u128, p: u64) -> Vec<(Poly<F>, usize)> {
    let mut out = Vec::new();
    if f.degree() == Some(0) {
        return out;
    }
    let df = f.derivative();
    if df.is_zero() {
        for (h, m) in squarefree_finite(&poly_pth_root(f, q, p), q, p) {
            out.push((h, m * p as usize));
        }
        return out;
    }
    let mut c = f.gcd(&df);
    let mut w = f.div_exact(&c);
    let mut i = 1;
    while w.degree() != Some(0) {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y);
        if fac.degree() != Some(0) {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(&w);
        i += 1;
    }
    if c.degree() != Some(0) {
        for (h, m) in squarefree_finite(&poly_pth_root(&c, q, p), q, p) {
            out.push((h, m * p as usize));
        }
    }
    out
}

fn distinct_degree<F: Field>(f: &Poly<F>, q: u128) -> Vec<(Poly<F>, usize)> {
    let ctx = f.ctx();
    let x = Poly::x(ctx);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut i = 1;
    while rest.degree().unwrap() >= 2 * i {
        h = h.pow_mod(q, &rest);
        let g = rest.gcd(&h.sub(&x));
        if g.degree() != Some(0) {
            rest = rest.div_exact(&g);
            h = h.rem(&rest);
            out.push((g, i));
        }
        i += 1;
    }
    if rest.degree().unwrap() > 0 {
        let d = rest.degree().unwrap();
        out.push((rest, d));
    }
    out
}

fn equal_degree<F: Field>(g: &Poly<F>, d: usize, q: u128, opts: &FactorOptions, rng: &mut ChaCha8Rng) -> Vec<Poly<F>> {
    let n = g.degree().unwrap();
    if n == d {
        return vec![g.clone()];
    }
    let ctx = g.ctx().clone();
    let count = q.checked_pow(d as u32);
    if let Some(count) = count.filter(|c| *c <= opts.exhaustive_limit) {
        if let Some(elems) = F::elements(&ctx, count) {
            let mut found = Vec::new();
            let mut rest = g.clone();
            for cand in Poly::all_monic(&ctx, &elems, d) {
                if rest.degree() == Some(d) {
                    found.push(rest.clone());
                    break;
                }
                if let Some(quot) = rest.try_div(&cand) {
                    found.push(cand);
                    rest = quot;
                }
            }
            return found;
        }
    }
    let p = F::characteristic(&ctx);
    let qd = q.pow(d as u32);
    loop {
        let a = Poly::new(&ctx, (0..n).map(|_| F::random(&ctx, rng)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // Absolute trace of a into F_2.
            let k = (qd.trailing_zeros()) as usize;
            let mut acc = a.clone();
            let mut cur = a.clone();
            for _ in 1..k {
                cur = cur.mul(&cur).rem(g);
                acc = acc.add(&cur);
            }
            acc
        } else {
            a.pow_mod((qd - 1) / 2, g).sub(&Poly::one(&ctx))
        };
        let h = g.gcd(&b);
        let hd = h.degree().unwrap_or(0);
        if hd > 0 && hd < n {
            let mut out = equal_degree(&h, d, q, opts, rng);
            out.extend(equal_degree(&g.div_exact(&h), d, q, opts, rng));
            return out;
        }
    }
}

/// Factor over a finite field (a prime field or a finite extension of one).
pub fn factor_finite<F: Field>(f: &Poly<F>, opts: &FactorOptions) -> Result<Factorization<F>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ctx = f.ctx().clone();
    let q = F::order(&ctx).ok_or_else(|| Error::Unsupported("infinite field".into()))?;
    let p = F::characteristic(&ctx);
    let unit = f.lc().clone();
    let g = f.monic();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut factors = Vec::new();
    for (h, m) in squarefree_finite(&g, q, p) {
        for (part, d) in distinct_degree(&h, q) {
            for irr in equal_degree(&part, d, q, opts, &mut rng) {
                factors.push((irr, m));
            }
        }
    }
    finish(f, unit, factors, Certainty::Proven)
}

// ---------------------------------------------------------------------------
// Rationals

fn yun<F: Field>(f: &Poly<F>) -> Vec<(Poly<F>, usize)> {
    let mut out = Vec::new();
    if f.degree() == Some(0) {
        return out;
    }
    let df = f.derivative();
    let b = f.gcd(&df);
    let mut c = f.div_exact(&b);
    let mut d = df.div_exact(&b).sub(&c.derivative());
    let mut i = 1;
    while c.degree() != Some(0) {
        let a = c.gcd(&d);
        c = c.div_exact(&a);
        d = d.div_exact(&a).sub(&c.derivative());
        if a.degree() != Some(0) {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

type IntPoly = Vec<BigInt>;

fn int_eval(f: &IntPoly, x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in f.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn to_primitive_int(f: &Poly<Rational>) -> IntPoly {
    let mut l = BigInt::one();
    for c in f.coeffs() {
        l = l.lcm(c.denom());
    }
    let mut v: IntPoly =
        f.coeffs().iter().map(|c| (&c.0 * BigRational::from_integer(l.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for c in &v {
        g = g.gcd(c);
    }
    if !g.is_zero() {
        for c in v.iter_mut() {
            *c = &*c / &g;
        }
    }
    if v.last().is_some_and(|c| c.is_negative()) {
        for c in v.iter_mut() {
            *c = -&*c;
        }
    }
    v
}

fn int_to_monic(f: &IntPoly) -> Poly<Rational> {
    let lc = BigRational::from_integer(f.last().unwrap().clone());
    Poly::new(&(), f.iter().map(|c| Rational(BigRational::from_integer(c.clone()) / &lc)).collect())
}

fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    assert!(!n.is_zero());
    // Trial-division factorization, then all products.
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut m = n.clone();
    let mut d = BigInt::from(2);
    while &d * &d <= m {
        let mut e = 0;
        while (&m % &d).is_zero() {
            m /= &d;
            e += 1;
        }
        if e > 0 {
            primes.push((d.clone(), e));
        }
        d += 1;
    }
    if m > BigInt::one() {
        primes.push((m, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (pr, e) in primes {
        let mut next = Vec::new();
        for dv in &divs {
            let mut pw = BigInt::one();
            for _ in 0..=e {
                next.push(dv * &pw);
                pw *= &pr;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

fn rational_poly_from_points(xs: &[BigInt], ys: &[BigInt]) -> Poly<Rational> {
    // Lagrange interpolation over the rationals.
    let mut acc = Poly::zero(&());
    for i in 0..xs.len() {
        let mut basis = Poly::one(&());
        let mut denom = BigRational::one();
        for j in 0..xs.len() {
            if i == j {
                continue;
            }
            basis = basis.mul(&Poly::linear(&Rational(BigRational::from_integer(xs[j].clone()))));
            denom *= BigRational::from_integer(&xs[i] - &xs[j]);
        }
        let c = Rational(BigRational::from_integer(ys[i].clone()) / denom);
        acc = acc.add(&basis.scale(&c));
    }
    acc
}

fn poly_to_int(f: &Poly<Rational>) -> Option<IntPoly> {
    f.coeffs().iter().map(|c| c.0.is_integer().then(|| c.0.to_integer())).collect()
}

fn int_divides(d: &IntPoly, f: &IntPoly) -> Option<IntPoly> {
    let dq = Poly::new(&(), d.iter().map(|c| Rational(BigRational::from_integer(c.clone()))).collect());
    let fq = Poly::new(&(), f.iter().map(|c| Rational(BigRational::from_integer(c.clone()))).collect());
    let (q, r) = fq.divrem(&dq);
    if !r.is_zero() {
        return None;
    }
    poly_to_int(&q)
}

/// Factor a primitive squarefree integer polynomial with no rational roots
/// into factors of degree >= 2 by Kronecker's method.
fn kronecker(f: &IntPoly) -> Vec<IntPoly> {
    let n = f.len() - 1;
    for d in 2..=n / 2 {
        // Candidate evaluation points with the fewest divisors.
        let mut pts: Vec<(usize, BigInt, BigInt)> = Vec::new();
        for k in -12i64..=12 {
            let x = BigInt::from(k);
            let v = int_eval(f, &x);
            if v.is_zero() {
                continue;
            }
            let nd = positive_divisors(&v).len();
            pts.push((nd, x, v));
        }
        pts.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.abs().cmp(&b.1.abs())));
        pts.truncate(d + 1);
        let xs: Vec<BigInt> = pts.iter().map(|p| p.1.clone()).collect();
        let divs: Vec<Vec<BigInt>> = pts.iter().map(|p| positive_divisors(&p.2)).collect();
        let lead = f.last().unwrap().clone();
        let mut idx = vec![0usize; d + 1];
        let mut signs = vec![false; d + 1];
        'outer: loop {
            // Sign of the first value fixed positive.
            let ys: Vec<BigInt> =
                (0..=d).map(|i| if signs[i] { -divs[i][idx[i]].clone() } else { divs[i][idx[i]].clone() }).collect();
            let cand = rational_poly_from_points(&xs, &ys);
            if cand.degree() == Some(d) {
                if let Some(ci) = poly_to_int(&cand) {
                    if (&lead % ci.last().unwrap()).is_zero() {
                        if let Some(quot) = int_divides(&ci, f) {
                            let mut g = BigInt::zero();
                            for c in &ci {
                                g = g.gcd(c);
                            }
                            let mut ci = ci;
                            if ci.last().unwrap().is_negative() {
                                g = -g;
                            }
                            for c in ci.iter_mut() {
                                *c = &*c / &g;
                            }
                            let quot = int_divides(&ci, f).unwrap_or(quot);
                            let mut out = vec![ci];
                            out.extend(kronecker(&quot));
                            return out;
                        }
                    }
                }
            }
            // Advance the mixed-radix counter (signs on points 1..d).
            for i in (0..=d).rev() {
                if i > 0 && !signs[i] {
                    signs[i] = true;
                    continue 'outer;
                }
                signs[i] = false;
                idx[i] += 1;
                if idx[i] < divs[i].len() {
                    continue 'outer;
                }
                idx[i] = 0;
                if i == 0 {
                    break 'outer;
                }
            }
        }
    }
    vec![f.clone()]
}

fn rational_roots(f: &IntPoly) -> Vec<BigRational> {
    let mut out = Vec::new();
    if f[0].is_zero() {
        out.push(BigRational::zero());
        return out;
    }
    let a = positive_divisors(&f[0]);
    let b = positive_divisors(f.last().unwrap());
    for num in &a {
        for den in &b {
            for s in [1i32, -1] {
                let cand = BigRational::new(num * BigInt::from(s), den.clone());
                let mut acc = BigRational::zero();
                for c in f.iter().rev() {
                    acc = acc * &cand + BigRational::from_integer(c.clone());
                }
                if acc.is_zero() && !out.contains(&cand) {
                    out.push(cand);
                }
            }
        }
    }
    out
}

fn factor_squarefree_rational(h: &Poly<Rational>) -> Vec<Poly<Rational>> {
    let mut out = Vec::new();
    let mut work = h.clone();
    for root in rational_roots(&to_primitive_int(h)) {
        let lin = Poly::linear(&Rational(root));
        work = work.div_exact(&lin);
        out.push(lin);
    }
    if work.degree().unwrap_or(0) >= 1 {
        let ip = to_primitive_int(&work);
        for fac in kronecker(&ip) {
            out.push(int_to_monic(&fac));
        }
    }
    out
}

/// Factor over the rationals.
pub fn factor_rational(f: &Poly<Rational>, _opts: &FactorOptions) -> Result<Factorization<Rational>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let unit = f.lc().clone();
    let g = f.monic();
    let mut factors = Vec::new();
    for (h, m) in yun(&g) {
        for fac in factor_squarefree_rational(&h) {
            factors.push((fac, m));
        }
    }
    finish(f, unit, factors, Certainty::Proven)
}

// ---------------------------------------------------------------------------
// Rational functions F_p(s)

/// Monic divisors of a nonzero polynomial over `F_p`, times every nonzero
/// scalar.
fn fp_divisors(a: &Poly<Fp>) -> Result<Vec<Poly<Fp>>> {
    let p = *a.ctx();
    let fact = factor_finite(a, &FactorOptions::default())?;
    let mut divs = vec![Poly::one(&p)];
    for (pr, e) in &fact.factors {
        let mut next = Vec::new();
        for d in &divs {
            let mut pw = Poly::one(&p);
            for _ in 0..=*e {
                next.push(d.mul(&pw));
                pw = pw.mul(pr);
            }
        }
        divs = next;
    }
    let mut out = Vec::new();
    for d in &divs {
        for c in 1..p {
            out.push(d.scale(&Fp::new(c as i64, p)));
        }
    }
    Ok(out)
}

fn poly_as_rf(a: &Poly<Fp>) -> RatFunc {
    RatFunc::from_poly(a.clone())
}

/// Degree bound (in `s`) for the roots of a monic polynomial with polynomial
/// coefficients: `max deg(H_i) / (n - i)`, as a floor over a rational.
fn root_height(h: &Poly<RatFunc>) -> (usize, usize) {
    let n = h.degree().unwrap();
    let mut best = (0usize, 1usize);
    for i in 0..n {
        let c = h.coeff(i);
        if c.is_zero() {
            continue;
        }
        let dg = c.numer().degree().unwrap();
        // Compare dg/(n-i) against best.0/best.1.
        if dg * best.1 > best.0 * (n - i) {
            best = (dg, n - i);
        }
    }
    best
}

fn factor_integral_monic(h: &Poly<RatFunc>, opts: &FactorOptions) -> Result<(Vec<Poly<RatFunc>>, Certainty)> {
    let p = *h.ctx();
    let mut out = Vec::new();
    let mut work = h.clone();
    let mut certainty = Certainty::Proven;
    // Linear factors: roots divide the constant term (Gauss lemma).
    loop {
        let Some(deg) = work.degree() else { break };
        if deg == 0 {
            break;
        }
        let c0 = work.coeff(0);
        let candidates: Vec<RatFunc> = if c0.is_zero() {
            vec![RatFunc::zero(&p)]
        } else {
            fp_divisors(c0.numer())?.iter().map(poly_as_rf).collect()
        };
        let mut found = None;
        for a in candidates {
            if work.eval(&a).is_zero() {
                found = Some(a);
                break;
            }
        }
        match found {
            Some(a) => {
                let lin = Poly::linear(&a);
                work = work.div_exact(&lin);
                out.push(lin);
            }
            None => break,
        }
    }
    // Quadratic factors t^2 + b t + c with b, c polynomials in s.
    loop {
        let deg = work.degree().unwrap();
        if deg < 4 {
            break;
        }
        let (num, den) = root_height(&work);
        let bound_b = num / den;
        let search_b = bound_b.min(opts.fps_bound);
        if bound_b > opts.fps_bound {
            certainty = Certainty::BoundedSearchInconclusive;
        }
        let bs = RatFunc::search_elements(&p, search_b);
        let cs: Vec<RatFunc> = fp_divisors(work.coeff(0).numer())?.iter().map(poly_as_rf).collect();
        let mut found = None;
        'search: for c in &cs {
            for b in &bs {
                let quad = Poly::new(&p, vec![c.clone(), b.clone(), RatFunc::one(&p)]);
                if work.rem(&quad).is_zero() {
                    found = Some(quad);
                    break 'search;
                }
            }
        }
        match found {
            Some(quad) => {
                work = work.div_exact(&quad);
                out.push(quad);
            }
            None => break,
        }
    }
    if let Some(d) = work.degree() {
        if d >= 6 {
            certainty = Certainty::BoundedSearchInconclusive;
        }
        if d >= 1 {
            out.push(work);
        }
    }
    Ok((out, certainty))
}

/// Factor over `F_p(s)`; irreducibility is only established within the
/// configured search bound.
pub fn factor_ratfunc(f: &Poly<RatFunc>, opts: &FactorOptions) -> Result<Factorization<RatFunc>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let p = *f.ctx();
    let unit = f.lc().clone();
    let g = f.monic();
    let n = g.degree().unwrap();
    if n == 0 {
        return finish(f, unit, Vec::new(), Certainty::Proven);
    }
    // Substitute t -> t / D so that all coefficients become polynomials.
    let mut dl = Poly::one(&p);
    for c in g.coeffs() {
        dl = dl.lcm(c.denom());
    }
    let d = RatFunc::from_poly(dl);
    let integral = Poly::new(&p, (0..=n).map(|i| g.coeff(i).mul(&d.pow((n - i) as u64))).collect());
    let (facs, certainty) = factor_integral_monic(&integral, opts)?;
    let dinv = d.inv();
    let mut factors: BTreeMap<usize, Vec<(Poly<RatFunc>, usize)>> = BTreeMap::new();
    for h in facs {
        let k = h.degree().unwrap();
        // h(D t) / D^k.
        let back = Poly::new(&p, (0..=k).map(|i| h.coeff(i).mul(&dinv.pow((k - i) as u64))).collect());
        factors.entry(k).or_default().push((back, 1));
    }
    let flat: Vec<(Poly<RatFunc>, usize)> = factors.into_values().flatten().collect();
    finish(f, unit, flat, certainty)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64, c: &[i64]) -> Poly<Fp> {
        Poly::from_i64s(&p, c)
    }

    fn q(c: &[i64]) -> Poly<Rational> {
        Poly::from_i64s(&(), c)
    }

    #[test]
    fn finite_field_factorizations_multiply_back() {
        let opts = FactorOptions::default();
        // (t^2+t+1)^2 (t+1)^3 t over F_2.
        let f = fp(2, &[1, 1, 1]).pow(2).mul(&fp(2, &[1, 1]).pow(3)).mul(&fp(2, &[0, 1]));
        let fact = factor_finite(&f, &opts).unwrap();
        assert_eq!(fact.factors.len(), 3);
        assert!(fact.factors.contains(&(fp(2, &[1, 1, 1]), 2)));
        assert!(fact.factors.contains(&(fp(2, &[1, 1]), 3)));
        // t^4 + 1 = (t+1)^4 over F_2 needs the p-th root step.
        let fact = factor_finite(&fp(2, &[1, 0, 0, 0, 1]), &opts).unwrap();
        assert_eq!(fact.factors, vec![(fp(2, &[1, 1]), 4)]);
        // t^2 + 1 is irreducible over F_3 and splits over F_5.
        assert_eq!(factor_finite(&fp(3, &[1, 0, 1]), &opts).unwrap().factors.len(), 1);
        assert_eq!(factor_finite(&fp(5, &[1, 0, 1]), &opts).unwrap().factors.len(), 2);
    }

    #[test]
    fn randomized_split_agrees_with_exhaustive() {
        let exhaustive = FactorOptions::default();
        let random = FactorOptions { exhaustive_limit: 0, ..FactorOptions::default() };
        for p in [2u64, 3, 5, 7] {
            // Product of all monic irreducible quadratics found by brute force.
            let elems = Fp::elements(&p, 100).unwrap();
            let mut prod = Poly::one(&p);
            for cand in Poly::all_monic(&p, &elems, 2) {
                if elems.iter().all(|e| !cand.eval(e).is_zero()) {
                    prod = prod.mul(&cand);
                }
            }
            let a = factor_finite(&prod, &exhaustive).unwrap();
            let b = factor_finite(&prod, &random).unwrap();
            assert_eq!(a.factors.len(), b.factors.len());
            for f in &a.factors {
                assert!(b.factors.contains(f));
            }
        }
    }

    #[test]
    fn rational_factorizations() {
        let opts = FactorOptions::default();
        // t^4 + t^2 + 1 = (t^2+t+1)(t^2-t+1).
        let fact = factor_rational(&q(&[1, 0, 1, 0, 1]), &opts).unwrap();
        assert_eq!(fact.factors.len(), 2);
        // 2 t^3 - 3 t^2 + 1 = 2 (t - 1)^2 (t + 1/2).
        let fact = factor_rational(&q(&[1, 0, -3, 2]), &opts).unwrap();
        assert_eq!(fact.unit, Rational::from_int(2));
        assert!(fact.factors.contains(&(q(&[-1, 1]), 2)));
        // t^4 + 1 is irreducible.
        assert_eq!(factor_rational(&q(&[1, 0, 0, 0, 1]), &opts).unwrap().factors.len(), 1);
        // (t^2 - 2)(t^3 - 3).
        let fact = factor_rational(&q(&[-2, 0, 1]).mul(&q(&[-3, 0, 0, 1])), &opts).unwrap();
        assert_eq!(fact.factors.len(), 2);
    }

    #[test]
    fn ratfunc_factorizations() {
        let opts = FactorOptions::default();
        let s = RatFunc::s(2);
        let one = RatFunc::one(&2);
        // t^2 + s is irreducible (and inseparable) over F_2(s).
        let f = Poly::new(&2, vec![s.clone(), RatFunc::zero(&2), one.clone()]);
        let fact = factor_ratfunc(&f, &opts).unwrap();
        assert_eq!(fact.factors.len(), 1);
        assert!(fact.is_proven());
        // (t + s)(t + 1/s) and (t^2 + s)^2 t.
        let g = Poly::linear(&s).mul(&Poly::linear(&s.inv()));
        assert_eq!(factor_ratfunc(&g, &opts).unwrap().factors.len(), 2);
        let h = f.pow(2).mul(&Poly::x(&2));
        let fact = factor_ratfunc(&h, &opts).unwrap();
        assert!(fact.factors.contains(&(f.clone(), 2)));
        assert!(fact.is_proven());
    }
}
