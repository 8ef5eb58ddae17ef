//! Trial-parallel versions of the walk estimators. Trials are mapped on a rayon pool
//! and collected in trial order, then handed to the same aggregators the serial code
//! uses, so results do not depend on the worker count.

use hyperwalk_core::walksim::{
    aggregate_boundary, aggregate_first_passage, aggregate_stats, boundary_trial, first_hit, trial_endpoint,
    FirstPassage, PassageTarget, WalkError,
};
use hyperwalk_core::{BoundarySample, WalkConfig, WalkStats, Word};
use rayon::prelude::*;

pub struct Runner {
    pool: rayon::ThreadPool,
}

impl Runner {
    /// `threads = None` uses one worker per core.
    pub fn new(threads: Option<usize>) -> anyhow::Result<Self> {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads.unwrap_or(0)).build()?;
        Ok(Runner { pool })
    }

    fn map<T: Send>(&self, trials: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
        self.pool.install(|| (0..trials).into_par_iter().map(f).collect())
    }

    pub fn stats(&self, config: &WalkConfig) -> Result<WalkStats, WalkError> {
        config.validate()?;
        let ends = self.map(config.trials, |t| trial_endpoint(config, t));
        aggregate_stats(config, &ends)
    }

    pub fn boundary(&self, config: &WalkConfig) -> Result<BoundarySample, WalkError> {
        config.validate_sampling()?;
        config.histogram_bins()?;
        let exits = self.map(config.trials, |t| boundary_trial(config, t));
        aggregate_boundary(config, &exits)
    }

    pub fn first_passage(&self, config: &WalkConfig, target: &Word, horizon: usize) -> Result<FirstPassage, WalkError> {
        config.validate_sampling()?;
        if horizon < target.len() {
            return Err(WalkError::Horizon {
                horizon,
                word_length: target.len(),
            });
        }
        let prepared = PassageTarget::new(&config.model, target)?;
        let hits = self.map(config.trials, |t| first_hit(config, &prepared, horizon, t));
        Ok(aggregate_first_passage(&hits, horizon))
    }
}
