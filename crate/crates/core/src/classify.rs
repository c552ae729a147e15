//! The decision procedure. A matrix `M` is split along the fundamental
//! polynomial of the pair (`F` for differences, `G` for quotients) into an
//! exceptional part, whose eigenvalues are root differences (or ratios) of
//! `p` and `q`, and a regular part. The regular part must have invariant
//! factors `r_i(t² - δt)` (or `R_δ(r_i)`), with unpaired multiplicities only
//! at irreducible factors whose norm form is isotropic. The exceptional part
//! is tested against the rule that belongs to the pair's case tag.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::canon::{companion_sum, find_similarity, format_factors, invariant_factors, primary_split};
use crate::error::{Error, Result};
use crate::field::{BaseField, ExtElem, Field, QuotientRing, Ring};
use crate::linalg::Matrix;
use crate::poly::factor::{Certainty, FactorOptions};
use crate::poly::transform::{
    difference_shape, difference_shape_inverse, homothety, r_delta, r_delta_inverse, sylvester,
};
use crate::poly::Poly;
use crate::quadform::{isotropy, root_in_extension, IsotropyOptions, IsotropyVerdict, RootSearch};
use crate::walgebra::WAlgebra;

/// Which splitting is asked for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// `M = A - B`.
    Difference,
    /// `M = A B^-1`.
    Quotient,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Difference => "difference",
            Mode::Quotient => "quotient",
        })
    }
}

/// Three-valued answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Yes,
    No,
    /// A factorization or isotropy sub-decision could not be settled.
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "YES",
            Verdict::No => "NO",
            Verdict::Unknown => "UNKNOWN",
        })
    }
}

/// Knobs shared by the classifier and the witness builder.
#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    pub factor: FactorOptions,
    pub isotropy: IsotropyOptions,
    /// Compute the similarity `P M P^-1 = ⊕ blocks` on YES verdicts.
    pub transition: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { factor: FactorOptions::default(), isotropy: IsotropyOptions::default(), transition: true }
    }
}

/// Sub-cases when `p` and `q` are irreducible with the same splitting field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SameFieldKind {
    /// Neither a translation nor a homothety relates `q` to `p`.
    Generic { separable: bool },
    /// `q = p(t + d)` (differences).
    Translation { char_two: bool, separable: bool },
    /// `q = H_d(p)` (quotients).
    Homothety { trace_zero: bool, char_two: bool },
}

/// The dichotomies that select the exceptional rule.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CaseTag {
    BothSplit {
        p_double: bool,
        q_double: bool,
    },
    /// `p` irreducible, `q` split; `images_equal` when both translated (or
    /// homothetic) images of `p` coincide.
    PIrrQSplit {
        images_equal: bool,
    },
    /// Handled by swapping the roles of `p` and `q`.
    PSplitQIrr {
        images_equal: bool,
    },
    BothIrrSameField(SameFieldKind),
    BothIrrDistinctFields {
        p_separable: bool,
        q_separable: bool,
    },
    /// Factorization or root finding was inconclusive.
    Undetermined(String),
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseTag::BothSplit { p_double, q_double } => {
                let s = |d: &bool| if *d { "double" } else { "simple" };
                write!(f, "both split (p {}, q {})", s(p_double), s(q_double))
            }
            CaseTag::PIrrQSplit { images_equal } => {
                write!(f, "p irreducible, q split (images {})", if *images_equal { "equal" } else { "distinct" })
            }
            CaseTag::PSplitQIrr { images_equal } => {
                write!(f, "p split, q irreducible (images {})", if *images_equal { "equal" } else { "distinct" })
            }
            CaseTag::BothIrrSameField(kind) => match kind {
                SameFieldKind::Generic { separable } => {
                    write!(f, "same splitting field, generic, {}", sep_word(*separable))
                }
                SameFieldKind::Translation { char_two, separable } => write!(
                    f,
                    "same splitting field, translation, {}{}",
                    if *char_two { "characteristic 2, " } else { "" },
                    sep_word(*separable)
                ),
                SameFieldKind::Homothety { trace_zero, char_two } => write!(
                    f,
                    "same splitting field, homothety, trace {}{}",
                    if *trace_zero { "zero" } else { "nonzero" },
                    if *char_two { ", characteristic 2" } else { "" }
                ),
            },
            CaseTag::BothIrrDistinctFields { p_separable, q_separable } => {
                write!(f, "distinct splitting fields (p {}, q {})", sep_word(*p_separable), sep_word(*q_separable))
            }
            CaseTag::Undetermined(why) => write!(f, "undetermined ({why})"),
        }
    }
}

fn sep_word(s: bool) -> &'static str {
    if s {
        "separable"
    } else {
        "inseparable"
    }
}

/// A pair of monic quadratics with every derived quantity the classifier
/// uses.
#[derive(Clone, Debug)]
pub struct QuadraticPair<F: BaseField> {
    pub p: Poly<F>,
    pub q: Poly<F>,
    pub mode: Mode,
    /// `tr p`.
    pub lambda: F,
    /// `tr q`.
    pub mu: F,
    /// `p(0)`.
    pub alpha: F,
    /// `q(0)`.
    pub beta: F,
    /// `tr p - tr q` or `p(0)/q(0)`.
    pub delta: F,
    /// `F` (roots `x - y`) or `G` (roots `x / y`).
    pub fundamental: Poly<F>,
    /// `Λ` or `Θ`.
    pub reduced: Poly<F>,
    pub case: CaseTag,
    /// Roots of `p` and `q` in the base field, with multiplicity.
    pub p_roots: Vec<F>,
    pub q_roots: Vec<F>,
}

fn check_quadratic<F: Field>(p: &Poly<F>) -> Result<(F, F)> {
    if p.degree() != Some(2) || !p.is_monic() {
        return Err(Error::BadPair(format!("{p}")));
    }
    Ok((p.coeff(1).neg(), p.coeff(0)))
}

fn lift<F: Field>(p: &Poly<F>) -> Poly<Poly<F>> {
    p.map(p.ctx(), |c| Poly::constant(c.clone()))
}

/// `F = res_x(p(x), q(x - t))`, `Λ = t² + (2(α+β) - λμ) t + F(0)` and
/// `δ = λ - μ`; the identity `F = Λ(t² - δt)` is checked.
pub fn fundamental_difference<F: Field>(p: &Poly<F>, q: &Poly<F>) -> Result<(Poly<F>, Poly<F>, F)> {
    let (lambda, alpha) = check_quadratic(p)?;
    let (mu, beta) = check_quadratic(q)?;
    let ctx = p.ctx().clone();
    let t = Poly::x(&ctx);
    // q(x - t) = x² - (2t + μ) x + (t² + μt + β).
    let c1 = t.scale(&F::from_i64(&ctx, 2)).add(&Poly::constant(mu.clone())).neg();
    let c0 = t.mul(&t).add(&t.scale(&mu)).add(&Poly::constant(beta.clone()));
    let qs: Poly<Poly<F>> = Poly::new(&ctx, vec![c0, c1, Poly::one(&ctx)]);
    let f = sylvester(&lift(p), &qs).det_expand();
    let two = F::from_i64(&ctx, 2);
    let lam_big = Poly::new(&ctx, vec![f.coeff(0), two.mul(&alpha.add(&beta)).sub(&lambda.mul(&mu)), F::one(&ctx)]);
    let delta = lambda.sub(&mu);
    if difference_shape(&lam_big, &delta) != f {
        return Err(Error::Internal("F = Λ(t² - δt) failed".into()));
    }
    Ok((f, lam_big, delta))
}

/// `G = β^-2 res_x(p(x), x² - μtx + βt²)`, `Θ = t² - λμt + (βλ² + αμ² -
/// 4αβ)` and `δ = α/β`; the identity `β² G(t) = t² Θ(βt + α/t)` is checked.
pub fn fundamental_quotient<F: Field>(p: &Poly<F>, q: &Poly<F>) -> Result<(Poly<F>, Poly<F>, F)> {
    let (lambda, alpha) = check_quadratic(p)?;
    let (mu, beta) = check_quadratic(q)?;
    if alpha.is_zero() || beta.is_zero() {
        return Err(Error::NonInvertibleConstant);
    }
    let ctx = p.ctx().clone();
    let t = Poly::x(&ctx);
    let qs: Poly<Poly<F>> = Poly::new(&ctx, vec![t.mul(&t).scale(&beta), t.scale(&mu).neg(), Poly::one(&ctx)]);
    let binv = beta.inv();
    let g = sylvester(&lift(p), &qs).det_expand().scale(&binv.mul(&binv));
    let four = F::from_i64(&ctx, 4);
    let c = beta.mul(&lambda).mul(&lambda).add(&alpha.mul(&mu).mul(&mu)).sub(&four.mul(&alpha).mul(&beta));
    let theta = Poly::new(&ctx, vec![c.clone(), lambda.mul(&mu).neg(), F::one(&ctx)]);
    // t² Θ(βt + α/t) = (βt² + α)² - λμ t (βt² + α) + c t².
    let w = Poly::new(&ctx, vec![alpha.clone(), F::zero(&ctx), beta.clone()]);
    let rhs = w.mul(&w).sub(&w.shift_up(1).scale(&lambda.mul(&mu))).add(&Poly::monomial(c, 2));
    if g.scale(&beta.mul(&beta)) != rhs {
        return Err(Error::Internal("β² G(t) = t² Θ(βt + α/t) failed".into()));
    }
    Ok((g, theta, alpha.mul(&binv)))
}

/// Roots with multiplicity when the quadratic splits, `None` when it is
/// irreducible; `Err` text when the factorization is inconclusive.
fn split_roots<F: BaseField>(
    p: &Poly<F>,
    opts: &FactorOptions,
) -> Result<core::result::Result<Option<Vec<F>>, String>> {
    let fact = F::factor(p, opts)?;
    if fact.certainty != Certainty::Proven {
        return Ok(Err(format!("factorization of {p} is inconclusive")));
    }
    let mut roots = Vec::new();
    for (z, m) in fact.roots() {
        for _ in 0..m {
            roots.push(z.clone());
        }
    }
    Ok(Ok((roots.len() == 2).then_some(roots)))
}

fn separable<F: Field>(lambda: &F, alpha: &F) -> bool {
    let ctx = lambda.ctx();
    if F::characteristic(&ctx) == 2 {
        !lambda.is_zero()
    } else {
        !lambda.mul(lambda).sub(&F::from_i64(&ctx, 4).mul(alpha)).is_zero()
    }
}

impl<F: BaseField> QuadraticPair<F> {
    /// Validate the pair, compute the fundamental data and the case tag.
    pub fn new(p: Poly<F>, q: Poly<F>, mode: Mode, opts: &FactorOptions) -> Result<Self> {
        let (lambda, alpha) = check_quadratic(&p)?;
        let (mu, beta) = check_quadratic(&q)?;
        let (fundamental, reduced, delta) = match mode {
            Mode::Difference => fundamental_difference(&p, &q)?,
            Mode::Quotient => fundamental_quotient(&p, &q)?,
        };
        let mut pair = QuadraticPair {
            p,
            q,
            mode,
            lambda,
            mu,
            alpha,
            beta,
            delta,
            fundamental,
            reduced,
            case: CaseTag::Undetermined(String::new()),
            p_roots: Vec::new(),
            q_roots: Vec::new(),
        };
        pair.case = pair.compute_case(opts)?;
        Ok(pair)
    }

    pub fn ctx(&self) -> F::Ctx {
        self.p.ctx().clone()
    }

    /// The problem with `p` and `q` exchanged (same mode).
    pub fn swapped(&self, opts: &FactorOptions) -> Result<Self> {
        QuadraticPair::new(self.q.clone(), self.p.clone(), self.mode, opts)
    }

    /// The shape map: `r(t² - δt)` or `R_δ(r)`.
    pub fn shape(&self, r: &Poly<F>) -> Poly<F> {
        match self.mode {
            Mode::Difference => difference_shape(r, &self.delta),
            Mode::Quotient => r_delta(r, &self.delta).expect("δ is nonzero in quotient mode"),
        }
    }

    /// Inverse of [`Self::shape`], `None` if the polynomial has no such form.
    pub fn shape_inverse(&self, big: &Poly<F>) -> Option<Poly<F>> {
        match self.mode {
            Mode::Difference => difference_shape_inverse(big, &self.delta),
            Mode::Quotient => r_delta_inverse(big, &self.delta),
        }
    }

    /// `x - y` or `x / y`.
    pub fn combine(&self, x: &F, y: &F) -> F {
        match self.mode {
            Mode::Difference => x.sub(y),
            Mode::Quotient => x.div(y),
        }
    }

    /// The image of `p` attached to a root `y` of `q`: `p(t + y)` or
    /// `H_y(p)`, whose roots are `x - y` or `x / y`.
    pub fn image(&self, y: &F) -> Poly<F> {
        match self.mode {
            Mode::Difference => self.p.translate(y),
            Mode::Quotient => homothety(&self.p, y).expect("roots of q are nonzero"),
        }
    }

    /// The algebra parameter `x` for an irreducible regular factor, given
    /// the class `y` of `t`: `y + α + β` or `β y`.
    pub fn x_param<R: Ring>(&self, y: &R, embed: impl Fn(&F) -> R) -> R {
        match self.mode {
            Mode::Difference => y.add(&embed(&self.alpha.add(&self.beta))),
            Mode::Quotient => y.mul(&embed(&self.beta)),
        }
    }

    fn compute_case(&mut self, opts: &FactorOptions) -> Result<CaseTag> {
        let pr = match split_roots(&self.p, opts)? {
            Ok(r) => r,
            Err(why) => return Ok(CaseTag::Undetermined(why)),
        };
        let qr = match split_roots(&self.q, opts)? {
            Ok(r) => r,
            Err(why) => return Ok(CaseTag::Undetermined(why)),
        };
        let ctx = self.ctx();
        let char_two = F::characteristic(&ctx) == 2;
        Ok(match (pr, qr) {
            (Some(xs), Some(ys)) => {
                let tag = CaseTag::BothSplit { p_double: xs[0] == xs[1], q_double: ys[0] == ys[1] };
                self.p_roots = xs;
                self.q_roots = ys;
                tag
            }
            (None, Some(ys)) => {
                let images_equal = self.image(&ys[0]) == self.image(&ys[1]);
                self.q_roots = ys;
                CaseTag::PIrrQSplit { images_equal }
            }
            (Some(xs), None) => {
                // Images of q at the roots of p, as in the swapped problem.
                let img = |x: &F| match self.mode {
                    Mode::Difference => self.q.translate(x),
                    Mode::Quotient => homothety(&self.q, x).expect("roots of p are nonzero"),
                };
                let images_equal = img(&xs[0]) == img(&xs[1]);
                self.p_roots = xs;
                CaseTag::PSplitQIrr { images_equal }
            }
            (None, None) => {
                let field = QuotientRing::new_unchecked(&self.p, 1);
                let p_sep = separable(&self.lambda, &self.alpha);
                let q_sep = separable(&self.mu, &self.beta);
                // A separable and an inseparable quadratic never share a
                // splitting field.
                let search =
                    if p_sep != q_sep { RootSearch::NoRoot } else { root_in_extension(&self.q, &field, opts)? };
                match search {
                    RootSearch::Undetermined => {
                        CaseTag::Undetermined("splitting-field comparison is inconclusive".into())
                    }
                    RootSearch::NoRoot => CaseTag::BothIrrDistinctFields { p_separable: p_sep, q_separable: q_sep },
                    RootSearch::Found(_) => CaseTag::BothIrrSameField(match self.mode {
                        Mode::Difference => match self.translation(opts)? {
                            Some(_) => SameFieldKind::Translation { char_two, separable: p_sep },
                            None => SameFieldKind::Generic { separable: p_sep },
                        },
                        Mode::Quotient => match self.homothety_ratio(opts)? {
                            Some(_) => SameFieldKind::Homothety { trace_zero: self.lambda.is_zero(), char_two },
                            None => SameFieldKind::Generic { separable: p_sep },
                        },
                    }),
                }
            }
        })
    }

    /// A `d` with `q = p(t + d)`.
    pub fn translation(&self, opts: &FactorOptions) -> Result<Option<F>> {
        let ctx = self.ctx();
        // p(t + d) = t² + (2d - λ) t + p(d): need p(d) = β and 2d - λ = -μ.
        let eq = Poly::new(&ctx, vec![self.alpha.sub(&self.beta), self.lambda.neg(), F::one(&ctx)]);
        let two = F::from_i64(&ctx, 2);
        let fact = F::factor(&eq, opts)?;
        Ok(fact.roots().into_iter().map(|(d, _)| d).find(|d| two.mul(d).sub(&self.lambda) == self.mu.neg()))
    }

    /// A `d` with `q = H_d(p)`, i.e. `d² = α/β` and `λ = μ d`.
    pub fn homothety_ratio(&self, opts: &FactorOptions) -> Result<Option<F>> {
        let ctx = self.ctx();
        let eq = Poly::new(&ctx, vec![self.alpha.div(&self.beta).neg(), F::zero(&ctx), F::one(&ctx)]);
        let fact = F::factor(&eq, opts)?;
        Ok(fact.roots().into_iter().map(|(d, _)| d).find(|d| self.mu.mul(d) == self.lambda))
    }

    /// Residue field `L = F[t]/(r)` and the algebra `W(p,q,x)_L` whose norm
    /// decides the Type of the irreducible regular factor `r`.
    pub fn type_algebra(&self, r: &Poly<F>) -> Result<(Arc<QuotientRing<F>>, WAlgebra<ExtElem<F>>)> {
        let field = QuotientRing::new_unchecked(r, 1);
        let embed = |c: &F| ExtElem::from_base(&field, c);
        let x = self.x_param(&ExtElem::generator(&field), embed);
        let alg = WAlgebra::from_pair(&self.p, &self.q, x, embed)?;
        Ok((field, alg))
    }

    /// Isotropy of the norm attached to `r`: isotropic means Type 1,
    /// anisotropic means Type 2.
    pub fn decide_type(&self, r: &Poly<F>, opts: &IsotropyOptions) -> Result<IsotropyVerdict<ExtElem<F>>> {
        let (_, alg) = self.type_algebra(r)?;
        match isotropy(&alg, &self.p, &self.q, opts) {
            Err(Error::DegenerateNorm) => {
                Err(Error::Internal(format!("regular factor {r} has a degenerate norm form")))
            }
            other => other,
        }
    }
}

/// Descriptive names of the indecomposable building blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockLabel {
    /// `C(S(r^n)) ⊕ C(S(r^n))` for an irreducible regular factor `r`, where
    /// `S` is the shape map.
    RegularDoubled,
    /// `C(S(r^n))` for a Type 1 irreducible regular factor `r`.
    RegularTypeOne,
    /// `C((t - z)^n)` where every multiplicity is allowed.
    SplitFree,
    /// `C((t - z)^(n+ε) (t - z')^n)` with `ε <= 2` (one double root).
    SplitGapTwo,
    /// `C((t - z)^(n+ε) (t - z')^n)` with `ε <= 1` (simple roots).
    SplitGapOne,
    /// `C(π^n)` where both images of `p` coincide.
    ImageFree,
    /// `C(π^(n+ε) π'^n)` for the two distinct images of `p`, `ε <= 1`.
    ImageBalanced,
    /// `C(π^n) ⊕ C(π^n)`.
    StrictPair,
    /// `C(π^(n+ε)) ⊕ C(π^n)` with `ε <= 1`.
    LoosePair,
}

impl fmt::Display for BlockLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BlockLabel::RegularDoubled => "regular-doubled",
            BlockLabel::RegularTypeOne => "regular-type-one",
            BlockLabel::SplitFree => "split-free",
            BlockLabel::SplitGapTwo => "split-gap-two",
            BlockLabel::SplitGapOne => "split-gap-one",
            BlockLabel::ImageFree => "image-free",
            BlockLabel::ImageBalanced => "image-balanced",
            BlockLabel::StrictPair => "strict-pair",
            BlockLabel::LoosePair => "loose-pair",
        })
    }
}

/// One block of the certified decomposition. Its representing matrix is
/// `⊕ C(f)` over `factors`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndecomposableBlock<F: Field> {
    pub label: BlockLabel,
    pub factors: Vec<Poly<F>>,
    /// The irreducible (or linear) factor the block is built on; for
    /// two-root blocks, the one carrying the larger exponent.
    pub prime: Poly<F>,
    /// The partner factor of two-root blocks.
    pub partner: Option<Poly<F>>,
    pub n: usize,
    pub epsilon: usize,
    /// `Some(1)` for Type 1 singles, `None` where the Type is irrelevant.
    pub type_tag: Option<u8>,
}

impl<F: Field> IndecomposableBlock<F> {
    pub fn size(&self) -> usize {
        self.factors.iter().map(|f| f.degree().unwrap()).sum()
    }

    pub fn matrix(&self, ctx: &F::Ctx) -> Matrix<F> {
        companion_sum(ctx, &self.factors)
    }
}

/// Why a matrix was rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure<F: Field> {
    /// A regular invariant factor is not in the image of the shape map.
    RegularShape { factor: Poly<F> },
    /// A Type 2 factor whose multiplicities are not paired.
    TypeTwoUnpaired { prime: Poly<F>, valuations: Vec<usize> },
    /// An exceptional invariant factor whose exponents at two paired roots
    /// (or images) differ by more than `bound`.
    Unbalanced { factor: Poly<F>, bound: usize },
    /// Multiplicities of `prime` must come in equal pairs.
    StrictParity { prime: Poly<F>, valuations: Vec<usize> },
    /// Multiplicities of `prime` must come in pairs differing by at most 1.
    LooseParity { prime: Poly<F>, valuations: Vec<usize> },
}

impl<F: Field> fmt::Display for Failure<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::RegularShape { factor } => {
                write!(f, "regular invariant factor {factor} is not in the image of the shape map")
            }
            Failure::TypeTwoUnpaired { prime, valuations } => {
                write!(f, "Type 2 factor {prime} has unpaired multiplicities {valuations:?}")
            }
            Failure::Unbalanced { factor, bound } => {
                write!(f, "exponent gap in {factor} exceeds {bound}")
            }
            Failure::StrictParity { prime, valuations } => {
                write!(f, "multiplicities {valuations:?} of {prime} are not equal in pairs")
            }
            Failure::LooseParity { prime, valuations } => {
                write!(f, "multiplicities {valuations:?} of {prime} are not paired up to 1")
            }
        }
    }
}

/// Preprocessing applied before classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reduction {
    /// Classify `-M` against `(q, p)`.
    Negate,
    /// Classify `M^-1` against `(q, p)`.
    Invert,
}

/// The classifier's answer with its evidence.
#[derive(Clone, Debug)]
pub struct Certificate<F: BaseField> {
    pub verdict: Verdict,
    pub mode: Mode,
    pub case: CaseTag,
    /// When set, the blocks and the transition describe the reduced matrix
    /// against the swapped pair.
    pub reduction: Option<Reduction>,
    pub invariant_factors: Vec<Poly<F>>,
    pub exceptional_part: Vec<IndecomposableBlock<F>>,
    pub regular_part: Vec<IndecomposableBlock<F>>,
    pub failure: Option<Failure<F>>,
    /// Which sub-decision stayed open on an Unknown verdict.
    pub unknown_reason: Option<String>,
    /// `P` with `P M' P^-1 = ⊕ blocks` (exceptional first), where `M'` is
    /// the (possibly reduced) matrix.
    pub transition: Option<Matrix<F>>,
}

impl<F: BaseField> Certificate<F> {
    pub fn blocks(&self) -> impl Iterator<Item = &IndecomposableBlock<F>> {
        self.exceptional_part.iter().chain(self.regular_part.iter())
    }

    /// `⊕` of every block matrix, exceptional part first.
    pub fn block_matrix(&self, ctx: &F::Ctx) -> Matrix<F> {
        let ms: Vec<Matrix<F>> = self.blocks().map(|b| b.matrix(ctx)).collect();
        Matrix::direct_sum(ctx, &ms)
    }
}

struct Outcome<F: Field> {
    blocks: Vec<IndecomposableBlock<F>>,
    failure: Option<Failure<F>>,
    unknown: Option<String>,
}

impl<F: Field> Outcome<F> {
    fn new() -> Self {
        Outcome { blocks: Vec::new(), failure: None, unknown: None }
    }

    fn fail(&mut self, f: Failure<F>) {
        if self.failure.is_none() {
            self.failure = Some(f);
        }
    }
}

fn linear<F: Field>(z: &F) -> Poly<F> {
    Poly::new(&z.ctx(), vec![z.neg(), F::one(&z.ctx())])
}

fn block<F: Field>(
    label: BlockLabel,
    factors: Vec<Poly<F>>,
    prime: Poly<F>,
    n: usize,
    epsilon: usize,
) -> IndecomposableBlock<F> {
    IndecomposableBlock { label, factors, prime, partner: None, n, epsilon, type_tag: None }
}

/// Cyclic block `C(π^a π'^b)` with the larger exponent first.
fn two_root_block<F: Field>(
    label: BlockLabel,
    pi: &Poly<F>,
    pi2: &Poly<F>,
    a: usize,
    b: usize,
) -> IndecomposableBlock<F> {
    let (hi, lo, ea, eb) = if a >= b { (pi, pi2, a, b) } else { (pi2, pi, b, a) };
    IndecomposableBlock {
        label,
        factors: vec![hi.pow(ea as u64).mul(&lo.pow(eb as u64))],
        prime: hi.clone(),
        partner: Some(lo.clone()),
        n: eb,
        epsilon: ea - eb,
        type_tag: None,
    }
}

/// One free block per elementary divisor `π^e`.
fn free_blocks<F: Field>(out: &mut Outcome<F>, label: BlockLabel, factors: &[Poly<F>], pi: &Poly<F>) {
    for f in factors {
        let e = f.valuation(pi);
        if e > 0 {
            out.blocks.push(block(label, vec![pi.pow(e as u64)], pi.clone(), e, 0));
        }
    }
}

/// Per invariant factor, exponents at `π` and `π'` must differ by at most
/// `bound`.
fn balanced_blocks<F: Field>(
    out: &mut Outcome<F>,
    label: BlockLabel,
    factors: &[Poly<F>],
    pi: &Poly<F>,
    pi2: &Poly<F>,
    bound: usize,
) {
    for f in factors {
        let (a, b) = (f.valuation(pi), f.valuation(pi2));
        if a.abs_diff(b) > bound {
            out.fail(Failure::Unbalanced { factor: f.clone(), bound });
        } else if a + b > 0 {
            out.blocks.push(two_root_block(label, pi, pi2, a, b));
        }
    }
}

/// Pair up the multiplicities of `π` (largest first); `gap` is the largest
/// allowed difference inside a pair.
fn paired_blocks<F: Field>(out: &mut Outcome<F>, factors: &[Poly<F>], pi: &Poly<F>, gap: usize) {
    let vals: Vec<usize> = factors.iter().map(|f| f.valuation(pi)).filter(|&v| v > 0).collect();
    let label = if gap == 0 { BlockLabel::StrictPair } else { BlockLabel::LoosePair };
    for chunk in vals.chunks(2) {
        let a = chunk[0];
        let b = chunk.get(1).copied().unwrap_or(0);
        if a - b > gap {
            out.fail(if gap == 0 {
                Failure::StrictParity { prime: pi.clone(), valuations: vals.clone() }
            } else {
                Failure::LooseParity { prime: pi.clone(), valuations: vals.clone() }
            });
            return;
        }
        let mut fs = vec![pi.pow(a as u64)];
        if b > 0 {
            fs.push(pi.pow(b as u64));
        }
        out.blocks.push(block(label, fs, pi.clone(), b, a - b));
    }
}

fn factor_primes<F: BaseField>(
    f: &Poly<F>,
    opts: &FactorOptions,
) -> Result<core::result::Result<Vec<(Poly<F>, usize)>, String>> {
    let fact = F::factor(f, opts)?;
    if fact.certainty != Certainty::Proven {
        return Ok(Err(format!("factorization of {f} is inconclusive")));
    }
    Ok(Ok(fact.factors))
}

fn exceptional<F: BaseField>(pair: &QuadraticPair<F>, ef: &[Poly<F>], opts: &ClassifyOptions) -> Result<Outcome<F>> {
    let mut out = Outcome::new();
    if ef.is_empty() {
        return Ok(out);
    }
    match &pair.case {
        CaseTag::Undetermined(why) => out.unknown = Some(why.clone()),
        CaseTag::PSplitQIrr { .. } => return Err(Error::Internal("swap case reached the exceptional rules".into())),
        CaseTag::BothSplit { p_double, q_double } => {
            let (xs, ys) = (&pair.p_roots, &pair.q_roots);
            let z = |i: usize, j: usize| linear(&pair.combine(&xs[i], &ys[j]));
            match (p_double, q_double) {
                (true, true) => free_blocks(&mut out, BlockLabel::SplitFree, ef, &z(0, 0)),
                (true, false) | (false, true) => {
                    let (z1, z2) = if *p_double { (z(0, 0), z(0, 1)) } else { (z(0, 0), z(1, 0)) };
                    balanced_blocks(&mut out, BlockLabel::SplitGapTwo, ef, &z1, &z2, 2);
                }
                (false, false) => {
                    for (a, b) in [(z(0, 0), z(1, 1)), (z(0, 1), z(1, 0))] {
                        if a == b {
                            free_blocks(&mut out, BlockLabel::SplitFree, ef, &a);
                        } else {
                            balanced_blocks(&mut out, BlockLabel::SplitGapOne, ef, &a, &b, 1);
                        }
                    }
                }
            }
        }
        CaseTag::PIrrQSplit { images_equal } => {
            let (pi1, pi2) = (pair.image(&pair.q_roots[0]), pair.image(&pair.q_roots[1]));
            if *images_equal {
                free_blocks(&mut out, BlockLabel::ImageFree, ef, &pi1);
            } else {
                balanced_blocks(&mut out, BlockLabel::ImageBalanced, ef, &pi1, &pi2, 1);
            }
        }
        CaseTag::BothIrrSameField(_) => match factor_primes(&pair.fundamental, &opts.factor)? {
            Err(why) => out.unknown = Some(why),
            Ok(primes) => {
                for (pi, _) in &primes {
                    let gap = if pi.degree() == Some(1) { 0 } else { 1 };
                    paired_blocks(&mut out, ef, pi, gap);
                }
            }
        },
        CaseTag::BothIrrDistinctFields { .. } => match factor_primes(&pair.fundamental, &opts.factor)? {
            Err(why) => out.unknown = Some(why),
            Ok(primes) => match primes.as_slice() {
                [(pi, 1)] => paired_blocks(&mut out, ef, pi, 1),
                [(pi, 2)] => paired_blocks(&mut out, ef, pi, 0),
                _ => {
                    return Err(Error::Internal(format!(
                        "unexpected fundamental factorization for distinct splitting fields: {}",
                        pair.fundamental
                    )))
                }
            },
        },
    }
    Ok(out)
}

fn regular<F: BaseField>(pair: &QuadraticPair<F>, rf: &[Poly<F>], opts: &ClassifyOptions) -> Result<Outcome<F>> {
    let mut out = Outcome::new();
    let mut rs = Vec::with_capacity(rf.len());
    for g in rf {
        match pair.shape_inverse(g) {
            Some(r) => rs.push(r),
            None => {
                out.fail(Failure::RegularShape { factor: g.clone() });
                return Ok(out);
            }
        }
    }
    let Some(first) = rs.first() else {
        return Ok(out);
    };
    let primes = match factor_primes(first, &opts.factor)? {
        Ok(p) => p,
        Err(why) => {
            out.unknown = Some(why);
            return Ok(out);
        }
    };
    for (pi, _) in &primes {
        let vals: Vec<usize> = rs.iter().map(|r| r.valuation(pi)).filter(|&v| v > 0).collect();
        let mut pairs = Vec::new();
        let mut singles = Vec::new();
        let mut i = 0;
        while i < vals.len() {
            if i + 1 < vals.len() && vals[i] == vals[i + 1] {
                pairs.push(vals[i]);
                i += 2;
            } else {
                singles.push(vals[i]);
                i += 1;
            }
        }
        let mut type_tag = None;
        if !singles.is_empty() {
            match pair.decide_type(pi, &opts.isotropy)? {
                IsotropyVerdict::Isotropic(_) => type_tag = Some(1),
                IsotropyVerdict::Anisotropic(_) => {
                    out.fail(Failure::TypeTwoUnpaired { prime: pi.clone(), valuations: vals.clone() });
                    continue;
                }
                IsotropyVerdict::Unknown { detail, .. } => {
                    if out.unknown.is_none() {
                        out.unknown = Some(format!("Type of {pi}: {detail}"));
                    }
                    continue;
                }
            }
        }
        for n in pairs {
            let s = pair.shape(&pi.pow(n as u64));
            out.blocks.push(block(BlockLabel::RegularDoubled, vec![s.clone(), s], pi.clone(), n, 0));
        }
        for n in singles {
            let mut b = block(BlockLabel::RegularTypeOne, vec![pair.shape(&pi.pow(n as u64))], pi.clone(), n, 0);
            b.type_tag = type_tag;
            out.blocks.push(b);
        }
    }
    Ok(out)
}

/// Classify `m` against the pair.
pub fn classify_matrix<F: BaseField>(
    m: &Matrix<F>,
    pair: &QuadraticPair<F>,
    opts: &ClassifyOptions,
) -> Result<Certificate<F>> {
    if !m.is_square() {
        return Err(Error::Dimension(format!("{}x{} is not square", m.rows(), m.cols())));
    }
    if pair.mode == Mode::Quotient && !m.is_invertible() {
        return Err(Error::NotInvertible);
    }
    if let CaseTag::PSplitQIrr { .. } = pair.case {
        let swapped = pair.swapped(&opts.factor)?;
        let (reduced, red) = match pair.mode {
            Mode::Difference => (m.neg(), Reduction::Negate),
            Mode::Quotient => (m.inverse().ok_or(Error::NotInvertible)?, Reduction::Invert),
        };
        let mut cert = classify_matrix(&reduced, &swapped, opts)?;
        cert.case = pair.case.clone();
        cert.reduction = Some(red);
        cert.invariant_factors = invariant_factors(m);
        return Ok(cert);
    }
    let split = primary_split(m, &pair.fundamental);
    let ef = invariant_factors(&split.exceptional_block);
    let rf = invariant_factors(&split.regular_block);
    let exc = exceptional(pair, &ef, opts)?;
    let reg = regular(pair, &rf, opts)?;
    let failure = exc.failure.or(reg.failure);
    let unknown_reason = exc.unknown.or(reg.unknown);
    let verdict = if failure.is_some() {
        Verdict::No
    } else if unknown_reason.is_some() {
        Verdict::Unknown
    } else {
        Verdict::Yes
    };
    let mut cert = Certificate {
        verdict,
        mode: pair.mode,
        case: pair.case.clone(),
        reduction: None,
        invariant_factors: invariant_factors(m),
        exceptional_part: exc.blocks,
        regular_part: reg.blocks,
        failure,
        unknown_reason: if verdict == Verdict::Unknown { unknown_reason } else { None },
        transition: None,
    };
    if verdict == Verdict::Yes && opts.transition {
        let target = cert.block_matrix(&pair.ctx());
        cert.transition = Some(find_similarity(m, &target).map_err(|e| match e {
            Error::NotSimilar { left, right } => {
                Error::CertificateMismatch(format!("blocks {right} do not reassemble {left}"))
            }
            other => other,
        })?);
    }
    Ok(cert)
}

/// An entry of the atlas of indecomposable blocks.
#[derive(Clone, Debug)]
pub struct AtlasEntry<F: BaseField> {
    pub matrix: Matrix<F>,
    pub label: BlockLabel,
    pub factors: Vec<Poly<F>>,
}

/// Irreducible regular candidates of degree `d`: every monic irreducible
/// over finite fields, small-coefficient ones otherwise.
fn regular_candidates<F: BaseField>(pair: &QuadraticPair<F>, d: usize, opts: &FactorOptions) -> Result<Vec<Poly<F>>> {
    let ctx = pair.ctx();
    let elems = match F::elements(&ctx, 64) {
        Some(e) => e,
        None if d <= 2 => F::search_elements(&ctx, 1),
        None => return Ok(Vec::new()),
    };
    let mut out = Vec::new();
    for r in Poly::all_monic(&ctx, &elems, d) {
        let fact = F::factor(&r, opts)?;
        if fact.certainty != Certainty::Proven || fact.factors.len() != 1 || fact.factors[0].1 != 1 {
            continue;
        }
        if pair.shape(&r).gcd(&pair.fundamental).degree() == Some(0) {
            out.push(r);
        }
    }
    Ok(out)
}

/// Every block from the decomposition rules whose size is at most `bound`,
/// each checked to classify YES.
pub fn indecomposable_atlas<F: BaseField>(
    pair: &QuadraticPair<F>,
    bound: usize,
    opts: &ClassifyOptions,
) -> Result<Vec<AtlasEntry<F>>> {
    let ctx = pair.ctx();
    if let CaseTag::PSplitQIrr { .. } = pair.case {
        let swapped = pair.swapped(&opts.factor)?;
        let inner = indecomposable_atlas(&swapped, bound, opts)?;
        return inner
            .into_iter()
            .map(|e| {
                let matrix = match pair.mode {
                    Mode::Difference => e.matrix.neg(),
                    Mode::Quotient => e.matrix.inverse().ok_or(Error::NotInvertible)?,
                };
                Ok(AtlasEntry { factors: invariant_factors(&matrix), matrix, label: e.label })
            })
            .collect();
    }
    let mut blocks: Vec<IndecomposableBlock<F>> = Vec::new();
    let push_free = |pi: &Poly<F>, label: BlockLabel, blocks: &mut Vec<IndecomposableBlock<F>>| {
        let d = pi.degree().unwrap();
        for e in 1..=bound / d {
            blocks.push(block(label, vec![pi.pow(e as u64)], pi.clone(), e, 0));
        }
    };
    let balanced =
        |pi: &Poly<F>, pi2: &Poly<F>, gap: usize, label: BlockLabel, blocks: &mut Vec<IndecomposableBlock<F>>| {
            let d = pi.degree().unwrap();
            for n in 0..=bound / d {
                for eps in 0..=gap {
                    for (a, b) in [(n + eps, n), (n, n + eps)] {
                        if a + b == 0 || (a + b) * d > bound || (eps == 0 && a != n) {
                            continue;
                        }
                        let blk = two_root_block(label, pi, pi2, a, b);
                        if !blocks.contains(&blk) {
                            blocks.push(blk);
                        }
                    }
                }
            }
        };
    let paired = |pi: &Poly<F>, gap: usize, blocks: &mut Vec<IndecomposableBlock<F>>| {
        let d = pi.degree().unwrap();
        let label = if gap == 0 { BlockLabel::StrictPair } else { BlockLabel::LoosePair };
        for n in 0..=bound / d {
            for eps in 0..=gap {
                let a = n + eps;
                if a == 0 || (a + n) * d > bound {
                    continue;
                }
                let mut fs = vec![pi.pow(a as u64)];
                if n > 0 {
                    fs.push(pi.pow(n as u64));
                }
                blocks.push(block(label, fs, pi.clone(), n, eps));
            }
        }
    };
    match &pair.case {
        CaseTag::Undetermined(why) => return Err(Error::Unsupported(why.clone())),
        CaseTag::PSplitQIrr { .. } => unreachable!(),
        CaseTag::BothSplit { p_double, q_double } => {
            let (xs, ys) = (&pair.p_roots, &pair.q_roots);
            let z = |i: usize, j: usize| linear(&pair.combine(&xs[i], &ys[j]));
            match (p_double, q_double) {
                (true, true) => push_free(&z(0, 0), BlockLabel::SplitFree, &mut blocks),
                (true, false) => balanced(&z(0, 0), &z(0, 1), 2, BlockLabel::SplitGapTwo, &mut blocks),
                (false, true) => balanced(&z(0, 0), &z(1, 0), 2, BlockLabel::SplitGapTwo, &mut blocks),
                (false, false) => {
                    for (a, b) in [(z(0, 0), z(1, 1)), (z(0, 1), z(1, 0))] {
                        if a == b {
                            push_free(&a, BlockLabel::SplitFree, &mut blocks);
                        } else {
                            balanced(&a, &b, 1, BlockLabel::SplitGapOne, &mut blocks);
                        }
                    }
                }
            }
        }
        CaseTag::PIrrQSplit { images_equal } => {
            let (pi1, pi2) = (pair.image(&pair.q_roots[0]), pair.image(&pair.q_roots[1]));
            if *images_equal {
                push_free(&pi1, BlockLabel::ImageFree, &mut blocks);
            } else {
                balanced(&pi1, &pi2, 1, BlockLabel::ImageBalanced, &mut blocks);
            }
        }
        CaseTag::BothIrrSameField(_) | CaseTag::BothIrrDistinctFields { .. } => {
            let primes = factor_primes(&pair.fundamental, &opts.factor)?.map_err(Error::Unsupported)?;
            let same = matches!(pair.case, CaseTag::BothIrrSameField(_));
            for (pi, mult) in &primes {
                let strict = if same { pi.degree() == Some(1) } else { *mult == 2 };
                paired(pi, if strict { 0 } else { 1 }, &mut blocks);
            }
        }
    }
    // Regular blocks: singles for Type 1, doubled copies for Type 2.
    for d in 1..=bound / 2 {
        for r in regular_candidates(pair, d, &opts.factor)? {
            let type_one = match pair.decide_type(&r, &opts.isotropy)? {
                IsotropyVerdict::Isotropic(_) => true,
                IsotropyVerdict::Anisotropic(_) => false,
                IsotropyVerdict::Unknown { .. } => continue,
            };
            for n in 1..=bound / (2 * d) {
                let s = pair.shape(&r.pow(n as u64));
                if type_one {
                    let mut b = block(BlockLabel::RegularTypeOne, vec![s], r.clone(), n, 0);
                    b.type_tag = Some(1);
                    blocks.push(b);
                } else if 4 * d * n <= bound {
                    blocks.push(block(BlockLabel::RegularDoubled, vec![s.clone(), s], r.clone(), n, 0));
                }
            }
        }
    }
    let check = ClassifyOptions { transition: false, ..opts.clone() };
    let mut out = Vec::with_capacity(blocks.len());
    for b in blocks {
        let matrix = b.matrix(&ctx);
        let cert = classify_matrix(&matrix, pair, &check)?;
        if cert.verdict != Verdict::Yes {
            return Err(Error::Internal(format!(
                "atlas block {} {} does not classify YES",
                b.label,
                format_factors(&b.factors)
            )));
        }
        out.push(AtlasEntry { matrix, label: b.label, factors: b.factors });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rational};
    use crate::linalg::companion;

    fn qp(c: &[i64]) -> Poly<Rational> {
        Poly::from_i64s(&(), c)
    }

    fn fp(p: u64, c: &[i64]) -> Poly<Fp> {
        Poly::from_i64s(&p, c)
    }

    fn pair_q(p: &[i64], q: &[i64], mode: Mode) -> QuadraticPair<Rational> {
        QuadraticPair::new(qp(p), qp(q), mode, &FactorOptions::default()).unwrap()
    }

    fn pair_f(pr: u64, p: &[i64], q: &[i64], mode: Mode) -> QuadraticPair<Fp> {
        QuadraticPair::new(fp(pr, p), fp(pr, q), mode, &FactorOptions::default()).unwrap()
    }

    fn verdict<F: BaseField>(m: &Matrix<F>, pair: &QuadraticPair<F>) -> Verdict {
        classify_matrix(m, pair, &ClassifyOptions::default()).unwrap().verdict
    }

    #[test]
    fn fundamental_examples() {
        let (f, lam, d) = fundamental_difference(&qp(&[1, 0, 1]), &qp(&[1, 0, 1])).unwrap();
        assert_eq!(f, qp(&[0, 0, 4, 0, 1]));
        assert_eq!(lam, qp(&[0, 4, 1]));
        assert!(d.is_zero());
        // q = (t - 1)²: F = p(t + 1)².
        let (f, _, _) = fundamental_difference(&qp(&[1, 0, 1]), &qp(&[1, -2, 1])).unwrap();
        assert_eq!(f, qp(&[1, 0, 1]).translate(&Rational::from_int(1)).pow(2));
        let (g, theta, d) = fundamental_quotient(&qp(&[1, 0, 1]), &qp(&[1, 0, 1])).unwrap();
        assert_eq!(g, qp(&[-1, 0, 1]).pow(2));
        assert_eq!(theta, qp(&[-4, 0, 1]));
        assert_eq!(d, Rational::from_int(1));
        let (g, _, _) = fundamental_quotient(&fp(2, &[1, 1, 1]), &fp(2, &[1, 1, 1])).unwrap();
        assert_eq!(g, fp(2, &[1, 1]).pow(2).mul(&fp(2, &[1, 1, 1])));
        let (_, theta, _) = fundamental_quotient(&qp(&[-2, 0, 1]), &qp(&[-3, 0, 1])).unwrap();
        assert_eq!(theta, qp(&[-24, 0, 1]));
        assert_eq!(fundamental_quotient(&qp(&[0, 1, 1]), &qp(&[1, 0, 1])).unwrap_err(), Error::NonInvertibleConstant);
    }

    #[test]
    fn case_tags() {
        let d = Mode::Difference;
        assert_eq!(
            pair_q(&[1, 0, 1], &[1, 0, 1], d).case,
            CaseTag::BothIrrSameField(SameFieldKind::Translation { char_two: false, separable: true })
        );
        assert_eq!(
            pair_q(&[-2, 0, 1], &[-3, 0, 1], d).case,
            CaseTag::BothIrrDistinctFields { p_separable: true, q_separable: true }
        );
        assert_eq!(pair_q(&[1, 0, 1], &[-1, 0, 1], d).case, CaseTag::PIrrQSplit { images_equal: false });
        assert_eq!(pair_q(&[-1, 0, 1], &[1, 0, 1], d).case, CaseTag::PSplitQIrr { images_equal: false });
        assert_eq!(pair_q(&[1, -2, 1], &[0, 1, 1], d).case, CaseTag::BothSplit { p_double: true, q_double: false });
        assert_eq!(
            pair_q(&[1, 0, 1], &[4, 0, 1], d).case,
            CaseTag::BothIrrSameField(SameFieldKind::Generic { separable: true })
        );
        assert_eq!(
            pair_q(&[1, 0, 1], &[4, 0, 1], Mode::Quotient).case,
            CaseTag::BothIrrSameField(SameFieldKind::Homothety { trace_zero: true, char_two: false })
        );
        assert_eq!(
            pair_f(2, &[1, 1, 1], &[1, 1, 1], d).case,
            CaseTag::BothIrrSameField(SameFieldKind::Translation { char_two: true, separable: true })
        );
    }

    #[test]
    fn small_field_examples() {
        let pf = pair_f(3, &[1, 0, 1], &[1, 0, 1], Mode::Difference);
        let cert = classify_matrix(&Matrix::zeros(&3, 2, 2), &pf, &ClassifyOptions::default()).unwrap();
        assert_eq!(cert.verdict, Verdict::Yes);
        assert_eq!(cert.exceptional_part.len(), 1);
        assert_eq!(cert.exceptional_part[0].label, BlockLabel::StrictPair);
        let c = companion(&fp(2, &[1, 1, 1]));
        let pd = pair_f(2, &[1, 1, 1], &[1, 1, 1], Mode::Difference);
        let cert = classify_matrix(&c, &pd, &ClassifyOptions::default()).unwrap();
        assert_eq!(cert.verdict, Verdict::No);
        assert!(matches!(cert.failure, Some(Failure::StrictParity { .. }) | Some(Failure::RegularShape { .. })));
        let pq = pair_f(2, &[1, 1, 1], &[1, 1, 1], Mode::Quotient);
        let cert = classify_matrix(&c, &pq, &ClassifyOptions::default()).unwrap();
        assert_eq!(cert.verdict, Verdict::Yes);
        assert_eq!(cert.exceptional_part[0].label, BlockLabel::LoosePair);
        assert_eq!((cert.exceptional_part[0].n, cert.exceptional_part[0].epsilon), (0, 1));
        let p = cert.transition.unwrap();
        assert_eq!(p.mul(&c).mul(&p.inverse().unwrap()), c);
    }

    fn quad(x: i64) -> Poly<Rational> {
        qp(&[1, -x, 1])
    }

    #[test]
    fn rational_examples() {
        let pq = pair_q(&[1, 0, 1], &[1, 0, 1], Mode::Quotient);
        assert_eq!(verdict(&companion(&quad(3)), &pq), Verdict::Yes);
        for n in 1..=2 {
            let single = companion(&quad(1).pow(n));
            assert_eq!(verdict(&single, &pq), Verdict::No);
            let doubled = Matrix::direct_sum(&(), &[single.clone(), single]);
            assert_eq!(verdict(&doubled, &pq), Verdict::Yes);
        }
        // Differences with δ = 0: C(t² - x) for the regular factor t - x.
        let pd = pair_q(&[1, 0, 1], &[1, 0, 1], Mode::Difference);
        let single = companion(&qp(&[2, 0, 1]));
        assert_eq!(verdict(&single, &pd), Verdict::No);
        let doubled = Matrix::direct_sum(&(), &[single.clone(), single]);
        assert_eq!(verdict(&doubled, &pd), Verdict::Yes);
        assert_eq!(verdict(&companion(&qp(&[-1, 0, 1])), &pd), Verdict::Yes);
        // Unknown: a quadratic regular factor over Q whose norm form is
        // anisotropic at both real places, so no witness search succeeds.
        let m = companion(&qp(&[2, 0, 4, 0, 1]));
        let cert = classify_matrix(&m, &pd, &ClassifyOptions::default()).unwrap();
        assert_eq!(cert.verdict, Verdict::Unknown);
        assert!(cert.unknown_reason.is_some());
    }

    #[test]
    fn swap_reduction_is_recorded() {
        let pd = pair_q(&[-1, 0, 1], &[1, 0, 1], Mode::Difference);
        let m = companion(&qp(&[1, 0, 1]));
        let cert = classify_matrix(&m, &pd, &ClassifyOptions::default()).unwrap();
        assert_eq!(cert.reduction, Some(Reduction::Negate));
        let pq = pair_q(&[-1, 0, 1], &[1, 0, 1], Mode::Quotient);
        let cert = classify_matrix(&m, &pq, &ClassifyOptions::default()).unwrap();
        assert_eq!(cert.reduction, Some(Reduction::Invert));
    }

    #[test]
    fn quotient_needs_invertible() {
        let pq = pair_q(&[1, 0, 1], &[1, 0, 1], Mode::Quotient);
        let err = classify_matrix(&Matrix::zeros(&(), 2, 2), &pq, &ClassifyOptions::default()).unwrap_err();
        assert_eq!(err, Error::NotInvertible);
    }

    #[test]
    fn atlas_examples() {
        let pq = pair_f(2, &[1, 1, 1], &[1, 1, 1], Mode::Quotient);
        let atlas = indecomposable_atlas(&pq, 2, &ClassifyOptions::default()).unwrap();
        let keys: Vec<Vec<Poly<Fp>>> = atlas.iter().map(|e| e.factors.clone()).collect();
        assert_eq!(keys.len(), 2);
        assert!(keys.contains(&vec![fp(2, &[1, 1]), fp(2, &[1, 1])]));
        assert!(keys.contains(&vec![fp(2, &[1, 1, 1])]));
        assert!(indecomposable_atlas(&pq, 0, &ClassifyOptions::default()).unwrap().is_empty());
        let pd = pair_q(&[1, 0, 1], &[1, 0, 1], Mode::Difference);
        let atlas = indecomposable_atlas(&pd, 4, &ClassifyOptions::default()).unwrap();
        let keys: Vec<Vec<Poly<Rational>>> = atlas.iter().map(|e| e.factors.clone()).collect();
        assert!(keys.contains(&vec![qp(&[0, 1]), qp(&[0, 1])]));
        assert!(keys.contains(&vec![qp(&[4, 0, 1]), qp(&[4, 0, 1])]));
        assert!(keys.contains(&vec![qp(&[4, 0, 1])]));
    }
}
