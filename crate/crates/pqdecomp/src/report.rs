//! Serializable views of certificates, witnesses and oracle reports. Every
//! field element is a string in the input syntax and every polynomial a
//! list of coefficients, low to high.

use pqdecomp_core::classify::{AtlasEntry, Certificate, IndecomposableBlock, Reduction};
use pqdecomp_core::{Matrix, Poly};
use serde::Serialize;

use crate::input::{EntryField, Problem};

pub type PolyView = Vec<String>;
pub type MatrixView = Vec<Vec<String>>;

pub fn poly_view<F: EntryField>(p: &Poly<F>) -> PolyView {
    p.coeffs().iter().map(|c| c.render_entry()).collect()
}

pub fn matrix_view<F: EntryField>(m: &Matrix<F>) -> MatrixView {
    m.to_rows().iter().map(|r| r.iter().map(|c| c.render_entry()).collect()).collect()
}

/// The pair and mode a command ran against.
#[derive(Serialize)]
pub struct ProblemView {
    pub field: String,
    pub p: PolyView,
    pub q: PolyView,
    pub mode: String,
}

impl ProblemView {
    pub fn new<F: EntryField>(pr: &Problem<F>) -> Self {
        ProblemView {
            field: F::descriptor(&pr.ctx).to_string(),
            p: poly_view(&pr.p),
            q: poly_view(&pr.q),
            mode: pr.mode.to_string(),
        }
    }
}

#[derive(Serialize)]
pub struct BlockView {
    pub label: String,
    pub factors: Vec<PolyView>,
    pub prime: PolyView,
    pub partner: Option<PolyView>,
    pub n: usize,
    pub epsilon: usize,
    pub type_tag: Option<u8>,
}

impl BlockView {
    pub fn new<F: EntryField>(b: &IndecomposableBlock<F>) -> Self {
        BlockView {
            label: b.label.to_string(),
            factors: b.factors.iter().map(poly_view).collect(),
            prime: poly_view(&b.prime),
            partner: b.partner.as_ref().map(poly_view),
            n: b.n,
            epsilon: b.epsilon,
            type_tag: b.type_tag,
        }
    }
}

#[derive(Serialize)]
pub struct CertificateView {
    pub verdict: String,
    pub case: String,
    pub reduction: Option<String>,
    pub invariant_factors: Vec<PolyView>,
    pub exceptional_part: Vec<BlockView>,
    pub regular_part: Vec<BlockView>,
    pub failure: Option<String>,
    pub unknown_reason: Option<String>,
    pub transition: Option<MatrixView>,
}

pub fn reduction_name(r: Option<Reduction>) -> Option<&'static str> {
    r.map(|r| match r {
        Reduction::Negate => "negate",
        Reduction::Invert => "invert",
    })
}

impl CertificateView {
    pub fn new<F: EntryField>(c: &Certificate<F>) -> Self {
        CertificateView {
            verdict: c.verdict.to_string(),
            case: c.case.to_string(),
            reduction: reduction_name(c.reduction).map(str::to_string),
            invariant_factors: c.invariant_factors.iter().map(poly_view).collect(),
            exceptional_part: c.exceptional_part.iter().map(BlockView::new).collect(),
            regular_part: c.regular_part.iter().map(BlockView::new).collect(),
            failure: c.failure.as_ref().map(|f| f.to_string()),
            unknown_reason: c.unknown_reason.clone(),
            transition: c.transition.as_ref().map(matrix_view),
        }
    }
}

#[derive(Serialize)]
pub struct ClassifyReport {
    pub problem: ProblemView,
    pub matrix: MatrixView,
    pub certificate: CertificateView,
}

#[derive(Serialize)]
pub struct WitnessView {
    pub a: MatrixView,
    pub b: MatrixView,
    pub verified: bool,
}

#[derive(Serialize)]
pub struct WitnessReport {
    pub problem: ProblemView,
    pub matrix: MatrixView,
    pub verdict: String,
    pub witness: Option<WitnessView>,
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub problem: ProblemView,
    pub p_annihilates_a: bool,
    pub q_annihilates_b: bool,
    pub recombines: bool,
    pub valid: bool,
}

#[derive(Serialize)]
pub struct AtlasEntryView {
    pub label: String,
    pub factors: Vec<PolyView>,
    pub matrix: MatrixView,
}

impl AtlasEntryView {
    pub fn new<F: EntryField>(e: &AtlasEntry<F>) -> Self {
        AtlasEntryView {
            label: e.label.to_string(),
            factors: e.factors.iter().map(poly_view).collect(),
            matrix: matrix_view(&e.matrix),
        }
    }
}

#[derive(Serialize)]
pub struct AtlasReport {
    pub problem: ProblemView,
    pub bound: usize,
    pub entries: Vec<AtlasEntryView>,
}

#[derive(Serialize)]
pub struct MismatchView {
    pub factors: Vec<PolyView>,
    pub reachable: bool,
    pub verdict: String,
}

#[derive(Serialize)]
pub struct SizeReport {
    pub n: usize,
    pub classes: usize,
    pub reachable: usize,
    pub mismatches: Vec<MismatchView>,
}

#[derive(Serialize)]
pub struct OracleReport {
    pub problem: ProblemView,
    pub sizes: Vec<SizeReport>,
}
