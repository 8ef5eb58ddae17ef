//! Monte Carlo for nearest-neighbour walks `X_k = s_1 ⋯ s_k` with i.i.d. letters.
//!
//! Each estimator is split into a per-trial function and an aggregator over the
//! per-trial results in trial order, so a parallel runner only has to map trials and
//! collect them in order to reproduce the serial answer exactly.

mod estimator;
mod rng;

use alloc::string::String;
use alloc::vec::Vec;

pub use estimator::{
    aggregate_boundary, aggregate_first_passage, aggregate_stats, boundary_trial, divergence_probe,
    estimate_drift, estimate_entropy, estimate_stats, first_hit, first_passage, first_passage_curve,
    rotation_check, sample_boundary, trial_endpoint, Endpoint, EntropyEstimate, Estimate,
    ElementKey, FirstPassage, PassageTarget, ProbeRow, RotationCheck,
};
pub use rng::StepSampler;

use crate::criterion::{CriterionError, StepMeasure};
use crate::groups::{GroupError, GroupModel, Word};
use crate::hypgeom::{DiskPoint, Isometry};

pub const DEFAULT_STOP_RADIUS: f64 = 1.0 - 1e-4;
pub const DEFAULT_STEP_CAP: usize = 100_000;
/// Below this many steps the drift estimate is dominated by the start.
pub const SHORT_HORIZON: usize = 50;
pub const MAX_PROBE_POWER: usize = 5;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum WalkError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Criterion(#[from] CriterionError),
    #[error("steps must be at least 1")]
    ZeroSteps,
    #[error("trials must be at least 1")]
    ZeroTrials,
    #[error("stop radius must lie in [0.9, 1), got {0}")]
    StopRadius(f64),
    #[error("measure has {got} weights but the group has {expected} generators")]
    MeasureSize { expected: usize, got: usize },
    #[error("horizon {horizon} is shorter than the target word ({word_length} letters)")]
    Horizon { horizon: usize, word_length: usize },
    #[error("probe power {k_max} exceeds {max}")]
    ProbePower { k_max: usize, max: usize },
    #[error("word {0} is not hyperbolic")]
    NotHyperbolic(String),
    #[error("histogram needs a positive multiple of n = {n} bins, got {bins}")]
    Bins { bins: usize, n: u32 },
    #[error("only {converged} of {trials} trials reached the stop radius; lower it or raise the step cap")]
    NotConverged { converged: usize, trials: usize },
}

/// Everything a simulation needs. Measures need not be generating: a point mass is
/// allowed here for deterministic checks.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkConfig {
    pub model: GroupModel,
    pub mu: StepMeasure,
    pub steps: usize,
    pub trials: usize,
    pub seed: u64,
    pub stop_radius: f64,
    /// Per-trial step limit for boundary runs.
    pub step_cap: usize,
    /// Histogram bins for boundary runs; `None` means `8n`.
    pub bins: Option<usize>,
    /// Growth rate used for the fundamental-inequality gap.
    pub volume: f64,
}

impl WalkConfig {
    pub fn new(model: GroupModel, mu: StepMeasure) -> Self {
        WalkConfig {
            model,
            mu,
            steps: SHORT_HORIZON,
            trials: 1000,
            seed: 0,
            stop_radius: DEFAULT_STOP_RADIUS,
            step_cap: DEFAULT_STEP_CAP,
            bins: None,
            volume: 1.0,
        }
    }

    /// The simple walk.
    pub fn simple(model: GroupModel) -> Self {
        let mu = StepMeasure::uniform(model.rank());
        WalkConfig::new(model, mu)
    }

    pub fn steps(mut self, steps: usize) -> Self {
        self.steps = steps;
        self
    }

    pub fn trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn stop_radius(mut self, r: f64) -> Self {
        self.stop_radius = r;
        self
    }

    pub fn bins(mut self, bins: usize) -> Self {
        self.bins = Some(bins);
        self
    }

    pub fn volume(mut self, v: f64) -> Self {
        self.volume = v;
        self
    }

    pub fn validate(&self) -> Result<(), WalkError> {
        if self.steps == 0 {
            return Err(WalkError::ZeroSteps);
        }
        self.validate_sampling()
    }

    /// Checks that do not involve the step count.
    pub fn validate_sampling(&self) -> Result<(), WalkError> {
        if self.trials == 0 {
            return Err(WalkError::ZeroTrials);
        }
        if self.mu.len() != self.model.rank() {
            return Err(WalkError::MeasureSize {
                expected: self.model.rank(),
                got: self.mu.len(),
            });
        }
        if !(0.9..1.0).contains(&self.stop_radius) {
            return Err(WalkError::StopRadius(self.stop_radius));
        }
        Ok(())
    }

    pub fn histogram_bins(&self) -> Result<usize, WalkError> {
        let n = self.model.n();
        let bins = self.bins.unwrap_or(8 * n as usize);
        if bins == 0 || !bins.is_multiple_of(n as usize) {
            return Err(WalkError::Bins { bins, n });
        }
        Ok(bins)
    }

    pub fn sampler(&self, trial: usize) -> StepSampler {
        StepSampler::new(&self.mu, self.seed, trial as u64)
    }
}

/// Estimates for one configuration.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WalkStats {
    pub drift_hat: f64,
    pub drift_stderr: f64,
    pub entropy_hat: f64,
    pub entropy_stderr: f64,
    pub volume_hat: f64,
    /// `drift_hat·volume_hat - entropy_hat`.
    pub fi_gap: f64,
    /// Standard error of `fi_gap`, treating the two estimates as independent.
    pub fi_stderr: f64,
    pub samples_used: usize,
    pub steps: usize,
    pub distinct_endpoints: usize,
    /// The plug-in entropy underestimates the `steps`-step entropy; always set.
    pub entropy_biased_low: bool,
    /// At most one distinct endpoint.
    pub degenerate: bool,
    /// `steps` below 50.
    pub short_horizon: bool,
}

/// Exit angles of walks run until the orbit point leaves the disk of radius `stop_radius`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BoundarySample {
    /// Angles in `[0, 2π)` of converged trials, in trial order.
    pub angles: Vec<f64>,
    pub trials: usize,
    pub converged: usize,
    pub histogram: Vec<u64>,
}

impl BoundarySample {
    pub fn bin_width(&self) -> f64 {
        core::f64::consts::TAU / self.histogram.len() as f64
    }

    pub fn bin_centers(&self) -> Vec<f64> {
        let w = self.bin_width();
        (0..self.histogram.len()).map(|j| (j as f64 + 0.5) * w).collect()
    }
}

/// One position of a path.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PathPoint {
    /// Number of letters multiplied so far.
    pub word_length: usize,
    /// `X_k.x_0`.
    pub point: DiskPoint,
    /// `d(x_0, X_k.x_0)`.
    pub distance: f64,
}

/// Tracks a partial product in the base-point frame, where distances from the base
/// point stay accurate at any range.
#[derive(Debug, Clone)]
pub(crate) struct Walker<'a> {
    model: &'a GroupModel,
    steps: Vec<Isometry>,
    pub(crate) current: Isometry,
}

impl<'a> Walker<'a> {
    pub(crate) fn new(model: &'a GroupModel) -> Self {
        Walker {
            model,
            steps: model.frame_generators(),
            current: Isometry::IDENTITY,
        }
    }

    pub(crate) fn step(&mut self, letter: usize) {
        self.current = self.current.compose(&self.steps[letter]);
    }

    pub(crate) fn distance(&self) -> f64 {
        self.current.displacement_from_origin()
    }

    /// The orbit point in the frame chart, where the base point is the origin.
    pub(crate) fn frame_point(&self) -> DiskPoint {
        self.current.orbit_of_origin()
    }

    pub(crate) fn orbit_point(&self) -> DiskPoint {
        self.model.orbit_point(&self.model.from_frame(&self.current))
    }

    fn path_point(&self, word_length: usize) -> PathPoint {
        PathPoint {
            word_length,
            point: self.orbit_point(),
            distance: self.distance(),
        }
    }
}

/// The path `e, s_1, s_1 s_2, …` of a given word, as orbit points.
pub fn path_of_word(model: &GroupModel, word: &Word) -> Result<Vec<PathPoint>, WalkError> {
    model.check_word(word)?;
    let mut walker = Walker::new(model);
    let mut path = Vec::with_capacity(word.len() + 1);
    path.push(walker.path_point(0));
    for (k, &letter) in word.letters.iter().enumerate() {
        walker.step(letter);
        path.push(walker.path_point(k + 1));
    }
    Ok(path)
}

/// The letters drawn by `trial`, `count` of them.
pub fn sample_letters(config: &WalkConfig, trial: usize, count: usize) -> Vec<usize> {
    let mut sampler = config.sampler(trial);
    (0..count).map(|_| sampler.next_letter()).collect()
}

/// The path of `trial` with `config.steps` steps; `steps = 0` gives just the base point.
pub fn sample_path(config: &WalkConfig, trial: usize) -> Result<Vec<PathPoint>, WalkError> {
    config.validate_sampling()?;
    let letters = sample_letters(config, trial, config.steps);
    path_of_word(&config.model, &Word::new(letters))
}
