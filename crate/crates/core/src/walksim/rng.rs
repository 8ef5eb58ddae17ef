use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::criterion::StepMeasure;

/// Draws generator indices for one trial.
///
/// The ChaCha key comes from the seed and the stream number is the trial index, so
/// every trial has its own reproducible block sequence; the block counter advances
/// with the step. Trials can run in any order or on any worker.
pub struct StepSampler {
    rng: ChaCha8Rng,
    law: WeightedIndex<f64>,
}

impl StepSampler {
    pub fn new(mu: &StepMeasure, seed: u64, trial: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        let law = WeightedIndex::new(mu.weights().iter().copied())
            .expect("step measures are validated non-negative with positive mass");
        StepSampler { rng, law }
    }

    pub fn next_letter(&mut self) -> usize {
        self.law.sample(&mut self.rng)
    }
}
