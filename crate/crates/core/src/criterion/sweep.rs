//! Scans of `(n, m)` grids: one verdict per valid hyperbolic pair, in row order
//! `n` then `m`, plus the exceptional pairs where the criterion is inconclusive.

use alloc::vec::Vec;

use super::{
    criterion_gap, even_inequality, fuchsian_criterion_for, fuchsian_margin, odd_inequality,
    CriterionError, StepMeasure, BORDERLINE_TOL,
};
use crate::groups::{Family, GroupModel, Word};
use crate::hypgeom::is_hyperbolic;

/// Default upper bound for both ranges.
pub const DEFAULT_SWEEP_CAP: u32 = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Parity {
    #[default]
    Any,
    Even,
    Odd,
}

impl Parity {
    fn admits(self, n: u32) -> bool {
        match self {
            Parity::Any => true,
            Parity::Even => n.is_multiple_of(2),
            Parity::Odd => n % 2 == 1,
        }
    }
}

/// Step measure used at each pair.
#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum MuFamily {
    #[default]
    Uniform,
    /// Weights by generator index, renormalized; applied only to pairs whose
    /// generator count matches the length.
    Custom(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRequest {
    pub family: Family,
    pub n_range: (u32, u32),
    pub m_range: (u32, u32),
    /// Restricts `n` for the reflection family; ignored for the Fuchsian one.
    pub parity: Parity,
    pub mu: MuFamily,
    pub cap: u32,
}

impl SweepRequest {
    pub fn new(family: Family, n_range: (u32, u32), m_range: (u32, u32)) -> Self {
        SweepRequest {
            family,
            n_range,
            m_range,
            parity: Parity::Any,
            mu: MuFamily::Uniform,
            cap: DEFAULT_SWEEP_CAP,
        }
    }

    pub fn parity(mut self, parity: Parity) -> Self {
        self.parity = parity;
        self
    }

    pub fn mu(mut self, mu: MuFamily) -> Self {
        self.mu = mu;
        self
    }

    pub fn cap(mut self, cap: u32) -> Self {
        self.cap = cap;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RegionRow {
    pub n: u32,
    pub m: u32,
    pub margin: f64,
    pub verdict: bool,
    pub borderline: bool,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RegionTable {
    pub family: Family,
    pub pairs: Vec<RegionRow>,
    /// Pairs of `pairs` with a false verdict.
    pub exceptional: Vec<(u32, u32)>,
    /// Pairs that pass the parity filters but are Euclidean or spherical.
    pub rejected: Vec<(u32, u32)>,
}

impl RegionTable {
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

fn in_domain(family: Family, parity: Parity, n: u32, m: u32) -> bool {
    match family {
        Family::Reflection => {
            let n_ok = if n.is_multiple_of(2) { n >= 4 } else { n >= 5 };
            n_ok && parity.admits(n) && m >= 4 && m.is_multiple_of(2)
        }
        Family::Fuchsian => n >= 4 && n.is_multiple_of(2) && m >= 3,
    }
}

/// Evaluates the criterion on every valid pair of the two inclusive ranges.
///
/// Uniform measures use the closed forms. A custom measure goes through the matrix
/// criterion: for the reflection family the best of the opposite-side words
/// `r_k r_{k+n/2}` (even `n`) or `r_k r_{k+(n±1)/2}` (odd `n`), and for the Fuchsian
/// family the heaviest generator.
pub fn sweep(request: &SweepRequest) -> Result<RegionTable, CriterionError> {
    let (n_lo, n_hi) = request.n_range;
    let (m_lo, m_hi) = request.m_range;
    for (lo, hi) in [request.n_range, request.m_range] {
        if hi > request.cap {
            return Err(CriterionError::RangeCap {
                lo,
                hi,
                cap: request.cap,
            });
        }
    }
    let mut table = RegionTable {
        family: request.family,
        pairs: Vec::new(),
        exceptional: Vec::new(),
        rejected: Vec::new(),
    };
    for n in n_lo..=n_hi {
        if let MuFamily::Custom(weights) = &request.mu {
            if weights.len() != n as usize {
                continue;
            }
        }
        for m in m_lo..=m_hi {
            if !in_domain(request.family, request.parity, n, m) {
                continue;
            }
            if !is_hyperbolic(n, m) {
                table.rejected.push((n, m));
                continue;
            }
            let margin = match &request.mu {
                MuFamily::Uniform => uniform_margin(request.family, n, m)?,
                MuFamily::Custom(weights) => custom_margin(request.family, n, m, weights)?,
            };
            let verdict = margin > 0.0;
            if !verdict {
                table.exceptional.push((n, m));
            }
            table.pairs.push(RegionRow {
                n,
                m,
                margin,
                verdict,
                borderline: libm::fabs(margin) < BORDERLINE_TOL,
            });
        }
    }
    Ok(table)
}

fn uniform_margin(family: Family, n: u32, m: u32) -> Result<f64, CriterionError> {
    let outcome = match family {
        Family::Fuchsian => fuchsian_margin(n, m)?,
        Family::Reflection if n.is_multiple_of(2) => even_inequality(n, m)?,
        Family::Reflection => odd_inequality(n, m)?,
    };
    Ok(outcome.margin)
}

fn custom_margin(family: Family, n: u32, m: u32, weights: &[f64]) -> Result<f64, CriterionError> {
    let model = GroupModel::build(family, n, m)?;
    let mu = StepMeasure::normalized(weights.into())?;
    if family == Family::Fuchsian {
        return Ok(fuchsian_criterion_for(&model, &mu)?.gap);
    }
    let n = n as usize;
    let offsets: &[usize] = if n.is_multiple_of(2) {
        &[n / 2]
    } else {
        &[(n - 1) / 2, n.div_ceil(2)]
    };
    let mut best = f64::NEG_INFINITY;
    for k in 0..n {
        for &off in offsets {
            let word = Word::new(alloc::vec![k, (k + off) % n]);
            best = best.max(criterion_gap(&model, &mu, &word)?.gap);
        }
    }
    Ok(best)
}
