use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use super::{BoundarySample, WalkConfig, WalkError, WalkStats, Walker, MAX_PROBE_POWER, SHORT_HORIZON};
use crate::groups::{GroupModel, Word};
use crate::hypgeom::{translation_length, DiskPoint, Isometry, HYPERBOLIC_TOL};

/// Orbit points closer than this in the base-point frame count as the same element.
const HIT_TOL: f64 = 1e-7;
/// Resolution of the canonical matrix key, relative to the matrix norm.
const KEY_GRID: f64 = 1e-9;

/// A mean with its standard error over trials.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Estimate {
    pub value: f64,
    pub stderr: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EntropyEstimate {
    pub value: f64,
    pub stderr: f64,
    pub distinct_endpoints: usize,
    pub degenerate: bool,
}

/// Group element identity: orientation plus the sign-fixed, norm-scaled matrix on a
/// relative grid. Disk coordinates cannot separate elements tens of units away from
/// the base point; the matrix can.
pub type ElementKey = (bool, [i64; 4]);

fn element_key(g: &Isometry) -> ElementKey {
    let scale = libm::sqrt(g.frobenius_sq());
    let mut e = [g.a / scale, g.b / scale, g.c / scale, g.d / scale];
    if let Some(&lead) = e.iter().find(|x| libm::fabs(**x) > 1e-3) {
        if lead < 0.0 {
            e.iter_mut().for_each(|x| *x = -*x);
        }
    }
    (g.reversing, e.map(|x| libm::round(x / KEY_GRID) as i64))
}

/// Where one trial ended after `config.steps` steps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Endpoint {
    pub distance: f64,
    pub key: ElementKey,
}

pub fn trial_endpoint(config: &WalkConfig, trial: usize) -> Endpoint {
    let mut sampler = config.sampler(trial);
    let mut walker = Walker::new(&config.model);
    for _ in 0..config.steps {
        walker.step(sampler.next_letter());
    }
    Endpoint {
        distance: walker.distance(),
        key: element_key(&walker.current),
    }
}

/// Neumaier-compensated sum in iteration order.
fn compensated_sum(values: impl Iterator<Item = f64>) -> f64 {
    let (mut sum, mut carry) = (0.0f64, 0.0f64);
    for v in values {
        let t = sum + v;
        if libm::fabs(sum) >= libm::fabs(v) {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }
    sum + carry
}

fn mean_and_stderr(values: &[f64]) -> Estimate {
    let n = values.len() as f64;
    let mean = compensated_sum(values.iter().copied()) / n;
    if values.len() < 2 {
        return Estimate { value: mean, stderr: 0.0 };
    }
    let var = compensated_sum(values.iter().map(|v| (v - mean) * (v - mean))) / (n - 1.0);
    Estimate {
        value: mean,
        stderr: libm::sqrt(var / n),
    }
}

fn drift_from(config: &WalkConfig, ends: &[Endpoint]) -> Estimate {
    let per_step: Vec<f64> = ends.iter().map(|e| e.distance / config.steps as f64).collect();
    mean_and_stderr(&per_step)
}

/// Plug-in estimate `-mean log p̂(X_n) / n` over the empirical endpoint distribution.
/// A single endpoint gives 0 with zero error and the degenerate flag.
fn entropy_from(config: &WalkConfig, ends: &[Endpoint]) -> EntropyEstimate {
    let mut counts: BTreeMap<ElementKey, usize> = BTreeMap::new();
    for e in ends {
        *counts.entry(e.key).or_default() += 1;
    }
    let total = ends.len() as f64;
    let per_trial: Vec<f64> = ends
        .iter()
        .map(|e| -libm::log(counts[&e.key] as f64 / total) / config.steps as f64)
        .collect();
    let est = mean_and_stderr(&per_trial);
    EntropyEstimate {
        value: est.value,
        stderr: est.stderr,
        distinct_endpoints: counts.len(),
        degenerate: counts.len() <= 1,
    }
}

/// Drift, entropy and the fundamental-inequality gap from endpoints in trial order.
pub fn aggregate_stats(config: &WalkConfig, ends: &[Endpoint]) -> Result<WalkStats, WalkError> {
    config.validate()?;
    if ends.is_empty() {
        return Err(WalkError::ZeroTrials);
    }
    let drift = drift_from(config, ends);
    let entropy = entropy_from(config, ends);
    let v = config.volume;
    Ok(WalkStats {
        drift_hat: drift.value,
        drift_stderr: drift.stderr,
        entropy_hat: entropy.value,
        entropy_stderr: entropy.stderr,
        volume_hat: v,
        fi_gap: drift.value * v - entropy.value,
        fi_stderr: libm::sqrt(v * v * drift.stderr * drift.stderr + entropy.stderr * entropy.stderr),
        samples_used: ends.len(),
        steps: config.steps,
        distinct_endpoints: entropy.distinct_endpoints,
        entropy_biased_low: true,
        degenerate: entropy.degenerate,
        short_horizon: config.steps < SHORT_HORIZON,
    })
}

fn endpoints(config: &WalkConfig) -> Vec<Endpoint> {
    (0..config.trials).map(|t| trial_endpoint(config, t)).collect()
}

pub fn estimate_stats(config: &WalkConfig) -> Result<WalkStats, WalkError> {
    config.validate()?;
    aggregate_stats(config, &endpoints(config))
}

/// Mean of `d(x_0, X_n.x_0)/n` over trials.
pub fn estimate_drift(config: &WalkConfig) -> Result<Estimate, WalkError> {
    config.validate()?;
    Ok(drift_from(config, &endpoints(config)))
}

pub fn estimate_entropy(config: &WalkConfig) -> Result<EntropyEstimate, WalkError> {
    config.validate()?;
    Ok(entropy_from(config, &endpoints(config)))
}

/// A target element prepared for first-passage matching.
#[derive(Debug, Clone)]
pub struct PassageTarget {
    point: DiskPoint,
    distance: f64,
    word_length: usize,
}

impl PassageTarget {
    pub fn new(model: &GroupModel, word: &Word) -> Result<Self, WalkError> {
        let g = model.to_frame(&model.evaluate(word)?);
        Ok(PassageTarget {
            point: g.orbit_of_origin(),
            distance: g.displacement_from_origin(),
            word_length: word.len(),
        })
    }
}

/// The first step `k <= horizon` at which `X_k` equals the target, if any.
pub fn first_hit(config: &WalkConfig, target: &PassageTarget, horizon: usize, trial: usize) -> Option<usize> {
    let reach = config.model.max_step_displacement();
    let mut sampler = config.sampler(trial);
    let mut walker = Walker::new(&config.model);
    for k in 0..=horizon {
        if k > 0 {
            walker.step(sampler.next_letter());
        }
        let d = walker.distance();
        if libm::fabs(d - target.distance) <= 1e-6 && walker.frame_point().euclid_dist(&target.point) <= HIT_TOL {
            return Some(k);
        }
        // too far out to come back in the remaining steps
        if d - (horizon - k) as f64 * reach > target.distance + 1.0 {
            return None;
        }
    }
    None
}

/// Fraction of trials that reach the target by the horizon.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FirstPassage {
    pub horizon: usize,
    pub trials: usize,
    pub hits: usize,
    pub f_hat: f64,
    pub stderr: f64,
    /// `-log f_hat`, an upper bound for the Green distance; infinite without hits.
    pub green_upper: f64,
    pub zero_hits: bool,
}

pub fn aggregate_first_passage(hits: &[Option<usize>], horizon: usize) -> FirstPassage {
    let trials = hits.len();
    let count = hits.iter().filter(|h| matches!(h, Some(k) if *k <= horizon)).count();
    let p = count as f64 / trials as f64;
    FirstPassage {
        horizon,
        trials,
        hits: count,
        f_hat: p,
        stderr: libm::sqrt(p * (1.0 - p) / trials as f64),
        green_upper: if count == 0 { f64::INFINITY } else { -libm::log(p) },
        zero_hits: count == 0,
    }
}

fn hits(config: &WalkConfig, word: &Word, horizon: usize) -> Result<Vec<Option<usize>>, WalkError> {
    config.validate_sampling()?;
    if horizon < word.len() {
        return Err(WalkError::Horizon {
            horizon,
            word_length: word.len(),
        });
    }
    let target = PassageTarget::new(&config.model, word)?;
    debug_assert_eq!(target.word_length, word.len());
    Ok((0..config.trials).map(|t| first_hit(config, &target, horizon, t)).collect())
}

/// Estimates `P(∃ k <= horizon : X_k = target)`.
pub fn first_passage(config: &WalkConfig, target: &Word, horizon: usize) -> Result<FirstPassage, WalkError> {
    Ok(aggregate_first_passage(&hits(config, target, horizon)?, horizon))
}

/// `f_hat` at every horizon `0..=horizon` from one set of trials; nondecreasing.
pub fn first_passage_curve(config: &WalkConfig, target: &Word, horizon: usize) -> Result<Vec<f64>, WalkError> {
    let first = hits(config, target, horizon)?;
    let mut per_step = vec![0usize; horizon + 1];
    for k in first.iter().flatten() {
        per_step[*k] += 1;
    }
    let total = config.trials as f64;
    let mut acc = 0usize;
    Ok(per_step
        .into_iter()
        .map(|c| {
            acc += c;
            acc as f64 / total
        })
        .collect())
}

/// One power of the probed word.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ProbeRow {
    pub k: usize,
    pub geo_distance: f64,
    /// `-log f_hat` for `g^k`.
    pub green_upper: f64,
    pub f_hat: f64,
    pub zero_hits: bool,
    /// `k` times the walk weight of `g`.
    pub weight_cost: f64,
    /// `geo_distance - weight_cost`.
    pub lower_gap: f64,
}

/// Geometric distance and first-passage Green bound along the powers `g^0, …, g^k_max`.
/// Each power is searched for up to `max(steps, k·|g|)` steps.
pub fn divergence_probe(config: &WalkConfig, g: &Word, k_max: usize) -> Result<Vec<ProbeRow>, WalkError> {
    config.validate_sampling()?;
    if k_max > MAX_PROBE_POWER {
        return Err(WalkError::ProbePower {
            k_max,
            max: MAX_PROBE_POWER,
        });
    }
    let model = &config.model;
    let iso = model.evaluate(g)?;
    let hyperbolic = !iso.reversing && translation_length(&iso).is_ok_and(|l| l > HYPERBOLIC_TOL);
    if !hyperbolic {
        return Err(WalkError::NotHyperbolic(model.format_word(g)));
    }
    let cost = config.mu.cost(model, g)?;
    (0..=k_max)
        .map(|k| {
            let word = g.power(k);
            let geo = model.geo_distance(&word)?;
            let fp = first_passage(config, &word, config.steps.max(word.len()))?;
            let weight_cost = k as f64 * cost;
            Ok(ProbeRow {
                k,
                geo_distance: geo,
                green_upper: fp.green_upper,
                f_hat: fp.f_hat,
                zero_hits: fp.zero_hits,
                weight_cost,
                lower_gap: geo - weight_cost,
            })
        })
        .collect()
}

/// Exit angle of one trial, or `None` if it stays inside the stop radius for
/// `step_cap` steps.
pub fn boundary_trial(config: &WalkConfig, trial: usize) -> Option<f64> {
    let model = &config.model;
    let mut sampler = config.sampler(trial);
    let mut g = Isometry::IDENTITY;
    for _ in 0..config.step_cap {
        g = g.compose(&model.generators[sampler.next_letter()].iso);
        let p = model.orbit_point(&g);
        if p.norm() > config.stop_radius {
            return Some(p.angle());
        }
    }
    None
}

pub fn aggregate_boundary(config: &WalkConfig, exits: &[Option<f64>]) -> Result<BoundarySample, WalkError> {
    let bins = config.histogram_bins()?;
    let angles: Vec<f64> = exits.iter().flatten().copied().collect();
    if 2 * angles.len() < exits.len() {
        return Err(WalkError::NotConverged {
            converged: angles.len(),
            trials: exits.len(),
        });
    }
    let width = TAU / bins as f64;
    let mut histogram = vec![0u64; bins];
    for &a in &angles {
        let j = (libm::floor(a / width) as usize).min(bins - 1);
        histogram[j] += 1;
    }
    Ok(BoundarySample {
        converged: angles.len(),
        trials: exits.len(),
        angles,
        histogram,
    })
}

/// Runs every trial to the stop radius and bins the exit angles.
pub fn sample_boundary(config: &WalkConfig) -> Result<BoundarySample, WalkError> {
    config.validate_sampling()?;
    config.histogram_bins()?;
    let exits: Vec<Option<f64>> = (0..config.trials).map(|t| boundary_trial(config, t)).collect();
    aggregate_boundary(config, &exits)
}

/// Compares each bin with the bin one `2π/n` rotation ahead.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RotationCheck {
    /// Bins per rotation step.
    pub shift: usize,
    /// Largest `|h_j - h_{j+shift}| / sqrt(h_j + h_{j+shift})`.
    pub max_abs_z: f64,
    /// Mean squared z over the bins.
    pub chi2_per_bin: f64,
    /// `max_abs_z < 4` and `chi2_per_bin < 2`.
    pub passes: bool,
}

pub fn rotation_check(sample: &BoundarySample, n: u32) -> RotationCheck {
    let bins = sample.histogram.len();
    let shift = bins / n as usize;
    let (mut max_abs_z, mut chi2) = (0.0f64, 0.0f64);
    for j in 0..bins {
        let a = sample.histogram[j] as f64;
        let b = sample.histogram[(j + shift) % bins] as f64;
        if a + b > 0.0 {
            let z = (a - b) / libm::sqrt(a + b);
            max_abs_z = max_abs_z.max(libm::fabs(z));
            chi2 += z * z;
        }
    }
    let chi2_per_bin = chi2 / bins as f64;
    RotationCheck {
        shift,
        max_abs_z,
        chi2_per_bin,
        passes: max_abs_z < 4.0 && chi2_per_bin < 2.0,
    }
}
