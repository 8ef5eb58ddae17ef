use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::CriterionError;
use crate::groups::{GroupModel, Word};

/// Allowed deviation of the total weight from 1.
pub const MEASURE_SUM_TOL: f64 = 1e-12;

/// A probability vector over generator indices; the nearest-neighbour step law.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StepMeasure {
    weights: Vec<f64>,
}

impl StepMeasure {
    pub fn uniform(rank: usize) -> Self {
        StepMeasure {
            weights: vec![1.0 / rank as f64; rank],
        }
    }

    /// All mass on one generator. Not generating; only the walk simulator accepts it.
    pub fn point_mass(rank: usize, index: usize) -> Self {
        let mut weights = vec![0.0; rank];
        weights[index] = 1.0;
        StepMeasure { weights }
    }

    /// Weights must be finite, non-negative and sum to 1 within [`MEASURE_SUM_TOL`].
    pub fn new(weights: Vec<f64>) -> Result<Self, CriterionError> {
        Self::validate(&weights)?;
        let sum: f64 = weights.iter().sum();
        if libm::fabs(sum - 1.0) > MEASURE_SUM_TOL {
            return Err(CriterionError::BadWeights(format!("weights sum to {sum}, not 1")));
        }
        Ok(StepMeasure { weights })
    }

    /// Rescales non-negative weights to total mass 1.
    pub fn normalized(raw: Vec<f64>) -> Result<Self, CriterionError> {
        Self::validate(&raw)?;
        let sum: f64 = raw.iter().sum();
        Ok(StepMeasure {
            weights: raw.into_iter().map(|w| w / sum).collect(),
        })
    }

    fn validate(weights: &[f64]) -> Result<(), CriterionError> {
        if weights.is_empty() {
            return Err(CriterionError::BadWeights("no weights".into()));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(CriterionError::BadWeights(format!("weight {w} is not a finite non-negative number")));
        }
        if weights.iter().all(|&w| w == 0.0) {
            return Err(CriterionError::BadWeights("all weights are zero".into()));
        }
        Ok(())
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, index: usize) -> f64 {
        self.weights.get(index).copied().unwrap_or(0.0)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn is_generating(&self) -> bool {
        self.weights.iter().all(|&w| w > 0.0)
    }

    pub(crate) fn check_size(&self, model: &GroupModel) -> Result<(), CriterionError> {
        if self.len() != model.rank() {
            return Err(CriterionError::MeasureSize {
                expected: model.rank(),
                got: self.len(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_generating(&self, model: &GroupModel) -> Result<(), CriterionError> {
        self.check_size(model)?;
        if !self.is_generating() {
            return Err(CriterionError::NotGenerating);
        }
        Ok(())
    }

    /// `μ(s) = μ(s⁻¹)` for every generator.
    pub fn check_symmetric(&self, model: &GroupModel) -> Result<(), CriterionError> {
        self.check_size(model)?;
        for (i, gen) in model.generators.iter().enumerate() {
            if libm::fabs(self.weights[i] - self.weights[gen.inverse]) > MEASURE_SUM_TOL {
                return Err(CriterionError::Asymmetric {
                    label: gen.label.clone(),
                    inverse_label: model.generators[gen.inverse].label.clone(),
                });
            }
        }
        Ok(())
    }

    /// `-Σ log μ(s_i)` over the letters of `word`.
    pub fn cost(&self, model: &GroupModel, word: &Word) -> Result<f64, CriterionError> {
        model.check_word(word)?;
        word.letters.iter().try_fold(0.0, |acc, &i| {
            let w = self.weight(i);
            if w > 0.0 {
                Ok(acc - libm::log(w))
            } else {
                Err(CriterionError::OutsideSupport {
                    label: model.label(i).into(),
                })
            }
        })
    }
}
