//! The singularity criterion: a hyperbolic word `g = s_1 ⋯ s_k` whose translation
//! length beats its walk weight `-Σ log μ(s_i)` forces the Green metric and the
//! geometric distance to drift apart along the powers of `g`.
//!
//! [`criterion_gap`] evaluates that comparison for any model, measure and word;
//! [`closed_form`] holds the closed-form versions for the canonical words and the
//! monotone bounding functions; [`sweep`] scans `(n, m)` grids.

pub mod closed_form;
mod measure;
pub mod sweep;

use alloc::string::String;
use alloc::vec;

pub use closed_form::{
    aux_functions, dirichlet_heuristic, even_inequality, fuchsian_margin, odd_inequality,
    AuxValues, DirichletEstimate, InequalityOutcome,
};
pub use measure::{StepMeasure, MEASURE_SUM_TOL};
pub use sweep::{sweep, MuFamily, Parity, RegionRow, RegionTable, SweepRequest, DEFAULT_SWEEP_CAP};

use crate::groups::{Family, GroupError, GroupModel, Word};
use crate::hypgeom::{translation_length, GeomError, HYPERBOLIC_TOL};

/// Margins closer to zero than this are flagged as borderline; the verdict itself is
/// always the strict comparison `margin > 0`.
pub const BORDERLINE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CriterionError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("word {word} is not hyperbolic (translation length {length:e})")]
    NotHyperbolic { word: String, length: f64 },
    #[error("measure has {got} weights but the group has {expected} generators")]
    MeasureSize { expected: usize, got: usize },
    #[error("invalid step measure: {0}")]
    BadWeights(String),
    #[error("letter {label} is outside the support of the measure")]
    OutsideSupport { label: String },
    #[error("measure is not generating: every generator needs positive weight")]
    NotGenerating,
    #[error("measure is not symmetric: weight({label}) != weight({inverse_label})")]
    Asymmetric { label: String, inverse_label: String },
    #[error("(n, m) = ({n}, {m}) is outside the domain: {reason}")]
    Domain { n: u32, m: u32, reason: &'static str },
    #[error("sweep range {lo}..={hi} exceeds the cap {cap}")]
    RangeCap { lo: u32, hi: u32, cap: u32 },
}

/// Outcome of comparing translation length with walk weight for one word.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CriterionReport {
    pub family: Family,
    pub n: u32,
    pub m: u32,
    /// Comma-separated generator labels.
    pub word: String,
    pub translation_length: f64,
    /// `-Σ log μ(s_i)` over the letters of the word.
    pub weight_cost: f64,
    /// `translation_length - weight_cost`.
    pub gap: f64,
    /// `gap > 0`.
    pub verdict: bool,
    pub borderline: bool,
}

/// Compares the translation length of `word` with its walk weight under `mu`.
///
/// A true verdict certifies strict inequality between entropy and drift times volume
/// growth for the walk; a false one is inconclusive.
pub fn criterion_gap(
    model: &GroupModel,
    mu: &StepMeasure,
    word: &Word,
) -> Result<CriterionReport, CriterionError> {
    mu.check_generating(model)?;
    if model.family == Family::Fuchsian {
        mu.check_symmetric(model)?;
    }
    let iso = model.evaluate(word)?;
    let length = translation_length(&iso)?;
    if length <= HYPERBOLIC_TOL {
        return Err(CriterionError::NotHyperbolic {
            word: model.format_word(word),
            length,
        });
    }
    let cost = mu.cost(model, word)?;
    Ok(report(model, word, length, cost))
}

fn report(model: &GroupModel, word: &Word, length: f64, cost: f64) -> CriterionReport {
    let gap = length - cost;
    CriterionReport {
        family: model.family,
        n: model.n(),
        m: model.m(),
        word: model.format_word(word),
        translation_length: length,
        weight_cost: cost,
        gap,
        verdict: gap > 0.0,
        borderline: libm::fabs(gap) < BORDERLINE_TOL,
    }
}

/// The Fuchsian criterion for a symmetric generating measure: the heaviest generator
/// `t_i` (weight at least `1/n`) is a translation by twice the inradius, so the check
/// is `2h > -log μ(t_i)`.
pub fn fuchsian_criterion(n: u32, m: u32, mu: &StepMeasure) -> Result<CriterionReport, CriterionError> {
    let model = GroupModel::build(Family::Fuchsian, n, m)?;
    fuchsian_criterion_for(&model, mu)
}

/// [`fuchsian_criterion`] on an already built model.
pub fn fuchsian_criterion_for(model: &GroupModel, mu: &StepMeasure) -> Result<CriterionReport, CriterionError> {
    if model.family != Family::Fuchsian {
        return Err(CriterionError::Domain {
            n: model.n(),
            m: model.m(),
            reason: "the Fuchsian criterion needs the Fuchsian family",
        });
    }
    mu.check_generating(model)?;
    mu.check_symmetric(model)?;
    let heaviest = mu
        .weights()
        .iter()
        .enumerate()
        .fold(0, |best, (i, &w)| if w > mu.weights()[best] { i } else { best });
    criterion_gap(model, mu, &Word::new(vec![heaviest]))
}
