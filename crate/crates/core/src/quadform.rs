//! Isotropy of the norm form of `W(p,q,x)_L` over a residue field `L`:
//! roots of `p` or `q` in `L` give immediate witnesses, finite fields are
//! searched exhaustively, `L = Q` is decided by the real place and Hilbert
//! symbols with an explicit witness search, and everything else falls back
//! to a bounded search that may end in `Unknown`.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{BaseField, ExtElem, Field, FieldDescriptor, QuotientRing, Rational, Ring};
use crate::linalg::Matrix;
use crate::poly::factor::{Certainty, FactorOptions};
use crate::poly::Poly;
use crate::walgebra::{WAlgebra, WElement};

/// A place of `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Place {
    Real,
    Prime(u64),
}

/// Why a form has no nontrivial zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnisotropyProof {
    FiniteFieldExhausted,
    LocalObstruction(Place),
}

/// Outcome of an isotropy decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsotropyVerdict<F: Ring> {
    /// A verified nonzero vector of norm zero.
    Isotropic(WElement<F>),
    Anisotropic(AnisotropyProof),
    /// Neither a witness nor an obstruction was found.
    Unknown {
        search_bound: usize,
        detail: String,
    },
}

/// Search limits for the isotropy decision.
#[derive(Clone, Debug)]
pub struct IsotropyOptions {
    /// Coefficient bound for searches over infinite fields.
    pub search_bound: usize,
    /// Largest integer height tried for rational witnesses.
    pub witness_cap: i64,
    pub factor: FactorOptions,
}

impl Default for IsotropyOptions {
    fn default() -> Self {
        IsotropyOptions { search_bound: 1, witness_cap: 40, factor: FactorOptions::default() }
    }
}

/// Result of looking for a root of a polynomial in `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootSearch<F: Field> {
    Found(ExtElem<F>),
    NoRoot,
    Undetermined,
}

/// A root in `L = F[t]/(r)` of a monic quadratic over `F`.
pub fn root_in_extension<F: BaseField>(
    poly: &Poly<F>,
    field: &Arc<QuotientRing<F>>,
    opts: &FactorOptions,
) -> Result<RootSearch<F>> {
    if poly == field.root() && field.exponent() == 1 {
        return Ok(RootSearch::Found(ExtElem::generator(field)));
    }
    let fact = F::factor(poly, opts)?;
    if let Some((z, _)) = fact.roots().into_iter().next() {
        return Ok(RootSearch::Found(ExtElem::from_base(field, &z)));
    }
    if fact.certainty != Certainty::Proven {
        return Ok(RootSearch::Undetermined);
    }
    if field.dim() == 1 {
        return Ok(RootSearch::NoRoot);
    }
    let lift = |c: &F| ExtElem::from_base(field, c);
    if let Some(elems) = ExtElem::elements(field, 1 << 20) {
        let pl = poly.map(field, lift);
        return Ok(match elems.into_iter().find(|z| pl.eval(z).is_zero()) {
            Some(z) => RootSearch::Found(z),
            None => RootSearch::NoRoot,
        });
    }
    trager_root(poly, field, opts)
}

/// Root of the irreducible `poly` in `L` through the factorization of the
/// root `r` of `L` over `E = F[y]/(poly)`: a factor `g = G0 + y G1` of `r`
/// gives `y = -G0(θ)/G1(θ)` in `L`.
fn trager_root<F: BaseField>(
    poly: &Poly<F>,
    field: &Arc<QuotientRing<F>>,
    opts: &FactorOptions,
) -> Result<RootSearch<F>> {
    let ctx = poly.ctx().clone();
    let r = field.root();
    if poly.derivative().is_zero() || r.derivative().is_zero() {
        return Ok(RootSearch::Undetermined);
    }
    let t = Poly::x(&ctx);
    for c in F::search_elements(&ctx, 2) {
        // N(t) = Res_y(poly(y), r(t - c y)) over F[t].
        let lin: Poly<Poly<F>> = Poly::new(&ctx, vec![t.clone(), Poly::constant(c.neg())]);
        let mut shifted: Poly<Poly<F>> = Poly::zero(&ctx);
        for coeff in r.coeffs().iter().rev() {
            shifted = shifted.mul(&lin).add(&Poly::constant(Poly::constant(coeff.clone())));
        }
        let pl: Poly<Poly<F>> = poly.map(&ctx, |v| Poly::constant(v.clone()));
        let norm = crate::poly::transform::sylvester(&pl, &shifted).det_expand();
        if norm.gcd(&norm.derivative()).degree() != Some(0) {
            continue;
        }
        let fact = F::factor(&norm, opts)?;
        if fact.certainty != Certainty::Proven {
            return Ok(RootSearch::Undetermined);
        }
        if fact.factors.len() == 1 {
            return Ok(RootSearch::NoRoot);
        }
        let e = QuotientRing::new_unchecked(poly, 1);
        let emb = |v: &F| ExtElem::from_base(&e, v);
        let y = ExtElem::generator(&e);
        let r_e = r.map(&e, emb);
        let h = &fact.factors[0].0;
        // h(t + c y) over E.
        let lin_e = Poly::new(&e, vec![y.mul(&emb(&c)), ExtElem::one(&e)]);
        let mut h_e: Poly<ExtElem<F>> = Poly::zero(&e);
        for coeff in h.coeffs().iter().rev() {
            h_e = h_e.mul(&lin_e).add(&Poly::constant(emb(coeff)));
        }
        let g = r_e.gcd(&h_e);
        let gd = g.degree().unwrap_or(0);
        if gd == 0 || gd >= r.degree().unwrap() {
            return Err(Error::Internal("norm factor does not split the extension root".into()));
        }
        let g0 = Poly::new(&ctx, g.coeffs().iter().map(|a| a.rep().coeff(0)).collect());
        let g1 = Poly::new(&ctx, g.coeffs().iter().map(|a| a.rep().coeff(1)).collect());
        let g1l = ExtElem::new(field, &g1);
        let Some(g1inv) = g1l.try_inv() else {
            return Err(Error::Internal("degenerate extension factor".into()));
        };
        let z = ExtElem::new(field, &g0).neg().mul(&g1inv);
        let pl = poly.map(field, |v| ExtElem::from_base(field, v));
        if !pl.eval(&z).is_zero() {
            return Err(Error::Internal("extension root failed verification".into()));
        }
        return Ok(RootSearch::Found(z));
    }
    Ok(RootSearch::Undetermined)
}

fn verified<F: Field>(alg: &WAlgebra<F>, w: WElement<F>) -> Result<IsotropyVerdict<F>> {
    if w.is_zero() || !alg.norm(&w).is_zero() {
        return Err(Error::Internal("isotropy witness failed verification".into()));
    }
    Ok(IsotropyVerdict::Isotropic(w))
}

/// First nonzero projective vector (leading nonzero coordinate 1) of norm
/// zero with coordinates in `elems`.
fn projective_search<F: Field>(alg: &WAlgebra<F>, elems: &[F]) -> Option<WElement<F>> {
    let ctx = alg.ctx();
    let n = elems.len();
    for lead in 0..4 {
        let free = 3 - lead;
        let total = n.checked_pow(free as u32)?;
        for idx in 0..total {
            let mut k = idx;
            let mut coords: [F; 4] = core::array::from_fn(|_| F::zero(&ctx));
            coords[lead] = F::one(&ctx);
            for slot in coords.iter_mut().skip(lead + 1) {
                *slot = elems[k % n].clone();
                k /= n;
            }
            let w = WElement { coords };
            if alg.norm(&w).is_zero() {
                return Some(w);
            }
        }
    }
    None
}

/// Decide isotropy of the norm of `W(p,q,x)_L` where `L = F[t]/(r)`.
pub fn isotropy<F: BaseField>(
    alg: &WAlgebra<ExtElem<F>>,
    p: &Poly<F>,
    q: &Poly<F>,
    opts: &IsotropyOptions,
) -> Result<IsotropyVerdict<ExtElem<F>>> {
    if alg.is_degenerate() {
        return Err(Error::DegenerateNorm);
    }
    let field = alg.ctx();
    let base_ctx = field.base_ctx().clone();
    // A root z of p (or q) in L gives N(A - z I) = 0 (or N(B - z I) = 0).
    for (poly, slot) in [(p, 1usize), (q, 2usize)] {
        if let RootSearch::Found(z) = root_in_extension(poly, &field, &opts.factor)? {
            let mut w = alg.basis_element(slot);
            w.coords[0] = z.neg();
            return verified(alg, w);
        }
    }
    if let Some(elems) = ExtElem::elements(&field, 1 << 16) {
        return match projective_search(alg, &elems) {
            Some(w) => verified(alg, w),
            None => Ok(IsotropyVerdict::Anisotropic(AnisotropyProof::FiniteFieldExhausted)),
        };
    }
    if F::descriptor(&base_ctx) == FieldDescriptor::Rationals && field.dim() == 1 {
        let gram = alg
            .gram()
            .map(&(), |v| Rational(v.as_base().and_then(|b| b.to_rational()).expect("rational residue field")));
        return Ok(match rational_isotropy(&gram, opts.witness_cap) {
            RationalVerdict::Isotropic(v) => {
                let w = WElement {
                    coords: core::array::from_fn(|i| {
                        ExtElem::from_base(&field, &F::from_rational(&base_ctx, &v[i].0).unwrap())
                    }),
                };
                return verified(alg, w);
            }
            RationalVerdict::Anisotropic(place) => {
                IsotropyVerdict::Anisotropic(AnisotropyProof::LocalObstruction(place))
            }
            RationalVerdict::Unknown => IsotropyVerdict::Unknown {
                search_bound: opts.witness_cap as usize,
                detail: "locally isotropic but no witness within the height cap".into(),
            },
        });
    }
    let elems = ExtElem::search_elements(&field, opts.search_bound);
    match projective_search(alg, &elems) {
        Some(w) => verified(alg, w),
        None => Ok(IsotropyVerdict::Unknown {
            search_bound: opts.search_bound,
            detail: alloc::format!("no isotropic vector among coordinates of height <= {}", opts.search_bound),
        }),
    }
}

// ---------------------------------------------------------------------------
// Rational forms

/// Verdict for a nondegenerate rational quadratic form given by its Gram
/// matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RationalVerdict {
    Isotropic(Vec<Rational>),
    Anisotropic(Place),
    Unknown,
}

/// Congruence diagonalization `P^T G P = D` of a symmetric rational matrix.
pub fn diagonalize(g: &Matrix<Rational>) -> (Vec<Rational>, Matrix<Rational>) {
    let n = g.rows();
    let mut a = g.clone();
    let mut p: Matrix<Rational> = Matrix::identity(&(), n);
    for k in 0..n {
        if a.get(k, k).is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a.get(j, j).is_zero()) {
                a.swap_rows(k, j);
                a.swap_cols(k, j);
                p.swap_cols(k, j);
            } else if let Some(j) = (k + 1..n).find(|&j| !a.get(k, j).is_zero()) {
                // e_k <- e_k + e_j makes the diagonal entry 2 g_kj.
                for i in 0..n {
                    let v = a.get(k, i).add(a.get(j, i));
                    a.set(k, i, v);
                }
                for i in 0..n {
                    let v = a.get(i, k).add(a.get(i, j));
                    a.set(i, k, v);
                }
                for i in 0..n {
                    let v = p.get(i, k).add(p.get(i, j));
                    p.set(i, k, v);
                }
            } else {
                continue;
            }
        }
        let piv = a.get(k, k).clone();
        for j in k + 1..n {
            let f = a.get(k, j).div(&piv);
            if f.is_zero() {
                continue;
            }
            for i in 0..n {
                let v = a.get(j, i).sub(&f.mul(a.get(k, i)));
                a.set(j, i, v);
            }
            for i in 0..n {
                let v = a.get(i, j).sub(&f.mul(a.get(i, k)));
                a.set(i, j, v);
            }
            for i in 0..n {
                let v = p.get(i, j).sub(&f.mul(p.get(i, k)));
                p.set(i, j, v);
            }
        }
    }
    ((0..n).map(|i| a.get(i, i).clone()).collect(), p)
}

fn small_primes_dividing(n: &BigInt) -> Vec<u64> {
    let mut m = n.abs();
    let mut out = Vec::new();
    let mut d = 2u64;
    while BigInt::from(d) * BigInt::from(d) <= m {
        let bd = BigInt::from(d);
        if (&m % &bd).is_zero() {
            out.push(d);
            while (&m % &bd).is_zero() {
                m /= &bd;
            }
        }
        d += 1;
    }
    if m > BigInt::one() {
        out.push(m.to_u64().expect("prime factor too large"));
    }
    out
}

/// Square-free part (with sign) of a nonzero integer.
fn squarefree_part(n: &BigInt) -> BigInt {
    let mut out = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut m = n.abs();
    for p in small_primes_dividing(n) {
        let bp = BigInt::from(p);
        let mut e = 0;
        while (&m % &bp).is_zero() {
            m /= &bp;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &bp;
        }
    }
    out
}

fn split_valuation(a: &BigInt, p: u64) -> (u32, BigInt) {
    let bp = BigInt::from(p);
    let mut u = a.clone();
    let mut v = 0;
    while (&u % &bp).is_zero() {
        u /= &bp;
        v += 1;
    }
    (v, u)
}

fn legendre(u: &BigInt, p: u64) -> i32 {
    let bp = BigInt::from(p);
    let r = u.mod_floor(&bp);
    if r.is_zero() {
        return 0;
    }
    let e = BigInt::from((p - 1) / 2);
    if r.modpow(&e, &bp).is_one() {
        1
    } else {
        -1
    }
}

/// Hilbert symbol `(a, b)_p` of nonzero integers.
pub fn hilbert_symbol(a: &BigInt, b: &BigInt, p: u64) -> i32 {
    let (alpha, u) = split_valuation(a, p);
    let (beta, v) = split_valuation(b, p);
    let parity = |x: &BigInt, m: u32| x.mod_floor(&BigInt::from(m)).to_u32().unwrap();
    if p == 2 {
        let eps = |x: &BigInt| (parity(x, 4) - 1) / 2 % 2;
        let omega = |x: &BigInt| {
            let r = parity(x, 8);
            if r == 3 || r == 5 {
                1
            } else {
                0
            }
        };
        let e = eps(&u) * eps(&v) + alpha * omega(&v) + beta * omega(&u);
        if e % 2 == 0 {
            1
        } else {
            -1
        }
    } else {
        let mut s = if (alpha * beta) % 2 == 1 && (p - 1) / 2 % 2 == 1 { -1 } else { 1 };
        if beta % 2 == 1 {
            s *= legendre(&u, p);
        }
        if alpha % 2 == 1 {
            s *= legendre(&v, p);
        }
        s
    }
}

fn is_local_square(d: &BigInt, p: u64) -> bool {
    let (v, u) = split_valuation(d, p);
    if v % 2 == 1 {
        return false;
    }
    if p == 2 {
        u.mod_floor(&BigInt::from(8)) == BigInt::one()
    } else {
        legendre(&u, p) == 1
    }
}

/// Local isotropy of a diagonal form with square-free integer entries.
fn local_obstruction(diag: &[BigInt]) -> Option<Place> {
    if diag.iter().all(|a| a.is_positive()) || diag.iter().all(|a| a.is_negative()) {
        return Some(Place::Real);
    }
    if diag.len() != 4 {
        return None;
    }
    let mut primes = vec![2u64];
    for a in diag {
        for p in small_primes_dividing(a) {
            if !primes.contains(&p) {
                primes.push(p);
            }
        }
    }
    primes.sort_unstable();
    let d: BigInt = diag.iter().product();
    let minus_one = -BigInt::one();
    for p in primes {
        if !is_local_square(&d, p) {
            continue;
        }
        let mut eps = 1;
        for i in 0..4 {
            for j in i + 1..4 {
                eps *= hilbert_symbol(&diag[i], &diag[j], p);
            }
        }
        if eps != hilbert_symbol(&minus_one, &minus_one, p) {
            return Some(Place::Prime(p));
        }
    }
    None
}

/// Decide isotropy of a nondegenerate rational form in four variables by
/// the local conditions, then search an integer witness up to `cap`.
pub fn rational_isotropy(gram: &Matrix<Rational>, cap: i64) -> RationalVerdict {
    let (diag, p) = diagonalize(gram);
    assert!(diag.iter().all(|a| !a.is_zero()), "degenerate rational form");
    // a_i = den_i^2 * (num_i den_i) / den_i^4 ...; use the integer
    // representative a_i * den_i^2 of the same square class.
    let ints: Vec<BigInt> = diag.iter().map(|a| a.numer() * a.denom()).collect();
    let sf: Vec<BigInt> = ints.iter().map(squarefree_part).collect();
    if let Some(place) = local_obstruction(&sf) {
        return RationalVerdict::Anisotropic(place);
    }
    // Search sum ints_i y_i^2 = 0 with y_4 determined by a square test.
    let n = ints.len();
    for bound in 1..=cap {
        let mut ys = vec![0i64; n - 1];
        let total = (2 * bound + 1).pow((n - 1) as u32);
        for idx in 0..total {
            let mut k = idx;
            for y in ys.iter_mut() {
                *y = k % (2 * bound + 1) - bound;
                k /= 2 * bound + 1;
            }
            if ys.iter().all(|y| y.abs() < bound) {
                continue;
            }
            let partial: BigInt = ys.iter().zip(&ints).map(|(y, a)| a * BigInt::from(*y) * BigInt::from(*y)).sum();
            let last = &ints[n - 1];
            let neg = -partial;
            if !(&neg % last).is_zero() {
                continue;
            }
            let sq = &neg / last;
            if sq.is_negative() {
                continue;
            }
            let root = sq.sqrt();
            if &root * &root != sq {
                continue;
            }
            // Undo the scaling: diagonal coordinate z_i = y_i * den_i.
            let mut z: Vec<Rational> = ys.iter().map(|y| Rational::from_int(*y)).collect();
            z.push(Rational(BigRational::from_integer(root)));
            for (zi, a) in z.iter_mut().zip(&diag) {
                *zi = zi.mul(&Rational(BigRational::from_integer(a.denom().clone())));
            }
            let v = p.mul_vec(&z);
            return RationalVerdict::Isotropic(v);
        }
    }
    RationalVerdict::Unknown
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use proptest::prelude::*;

    fn ext_alg<F: BaseField>(p: &Poly<F>, q: &Poly<F>, r: &Poly<F>, x: &Poly<F>) -> WAlgebra<ExtElem<F>> {
        let l = QuotientRing::new(r, 1).unwrap();
        let xe = ExtElem::new(&l, x);
        WAlgebra::from_pair(p, q, xe, |c| ExtElem::from_base(&l, c)).unwrap()
    }

    fn qp(c: &[i64]) -> Poly<Rational> {
        Poly::from_i64s(&(), c)
    }

    #[test]
    fn finite_field_example() {
        let p = Poly::<Fp>::from_i64s(&3, &[1, 0, 1]);
        let alg = ext_alg(&p, &p, &Poly::from_i64s(&3, &[0, 1]), &Poly::zero(&3));
        assert!(matches!(isotropy(&alg, &p, &p, &IsotropyOptions::default()).unwrap(), IsotropyVerdict::Isotropic(_)));
        // x = 1 is degenerate over F_3.
        let alg = ext_alg(&p, &p, &Poly::from_i64s(&3, &[0, 1]), &Poly::one(&3));
        assert_eq!(isotropy(&alg, &p, &p, &IsotropyOptions::default()), Err(Error::DegenerateNorm));
    }

    #[test]
    fn rational_examples() {
        let p = qp(&[1, 0, 1]);
        let r = qp(&[0, 1]);
        let opts = IsotropyOptions::default();
        let alg = ext_alg(&p, &p, &r, &qp(&[1]));
        assert_eq!(
            isotropy(&alg, &p, &p, &opts).unwrap(),
            IsotropyVerdict::Anisotropic(AnisotropyProof::LocalObstruction(Place::Real))
        );
        let alg = ext_alg(&p, &p, &r, &qp(&[3]));
        assert!(matches!(isotropy(&alg, &p, &p, &opts).unwrap(), IsotropyVerdict::Isotropic(_)));
    }

    #[test]
    fn hilbert_symbol_values() {
        let b = BigInt::from;
        assert_eq!(hilbert_symbol(&b(-1), &b(-1), 2), -1);
        assert_eq!(hilbert_symbol(&b(-1), &b(-1), 3), 1);
        assert_eq!(hilbert_symbol(&b(2), &b(3), 3), -1);
        assert_eq!(hilbert_symbol(&b(2), &b(-1), 2), 1);
        assert_eq!(hilbert_symbol(&b(3), &b(3), 2), -1);
    }

    #[test]
    fn extension_roots() {
        let opts = FactorOptions::default();
        let p = qp(&[1, 0, 1]);
        let l = QuotientRing::new(&qp(&[1, 0, 0, 0, 1]), 1).unwrap();
        assert!(matches!(root_in_extension(&p, &l, &opts).unwrap(), RootSearch::Found(_)));
        let l = QuotientRing::new(&qp(&[-2, 0, 1]), 1).unwrap();
        assert_eq!(root_in_extension(&p, &l, &opts).unwrap(), RootSearch::NoRoot);
        let l = QuotientRing::new(&qp(&[1, 1, 1]), 1).unwrap();
        // t^2 + 3 = (2θ + 1)^2 - ... has a root in Q(sqrt(-3)).
        assert!(matches!(root_in_extension(&qp(&[3, 0, 1]), &l, &opts).unwrap(), RootSearch::Found(_)));
    }

    #[test]
    fn nondegenerate_finite_forms_are_isotropic() {
        for pr in [2u64, 3, 5] {
            let elems = Fp::elements(&pr, 10).unwrap();
            let quads = Poly::all_monic(&pr, &elems, 2);
            for p in &quads {
                for q in &quads {
                    for x in &elems {
                        let r = Poly::from_i64s(&pr, &[0, 1]);
                        let alg = ext_alg(p, q, &r, &Poly::constant(*x));
                        if alg.is_degenerate() {
                            continue;
                        }
                        let v = isotropy(&alg, p, q, &IsotropyOptions::default()).unwrap();
                        assert!(matches!(v, IsotropyVerdict::Isotropic(_)));
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn rational_verdict_is_scale_invariant(
            l in -3i64..4, m in -3i64..4, a in -4i64..5, b in -4i64..5, x in -6i64..7, c in 1i64..4
        ) {
            let r = Rational::from_int;
            let w = WAlgebra::new(r(l), r(m), r(a), r(b), r(x));
            prop_assume!(!w.is_degenerate());
            let g = w.gram();
            let v1 = rational_isotropy(&g, 15);
            let v2 = rational_isotropy(&g.scale(&r(c * c)), 15);
            let kind = |v: &RationalVerdict| match v {
                RationalVerdict::Isotropic(_) => 0,
                RationalVerdict::Anisotropic(_) => 1,
                RationalVerdict::Unknown => 2,
            };
            prop_assert_eq!(kind(&v1), kind(&v2));
            if let RationalVerdict::Isotropic(vec) = &v1 {
                let h = WElement::new(vec[0].clone(), vec[1].clone(), vec[2].clone(), vec[3].clone());
                prop_assert!(!h.is_zero() && w.norm(&h).is_zero());
            }
            if let RationalVerdict::Anisotropic(_) = v1 {
                // No small integer zero may exist.
                let elems: Vec<Rational> = (-3..=3).map(r).collect();
                prop_assert!(projective_search(&w, &elems).is_none());
            }
        }
    }
}
