//! End-to-end Monte Carlo secrecy estimator.
//!
//! Samples all three hop SNRs from the physical channel models (never from
//! the analytic formulas) and estimates SOP and PPSC as Bernoulli means with
//! standard errors, serving as the independent oracle for the closed forms.
//!
//! # Stream-splitting contract
//!
//! The sample stream of a run `(seed, n_samples, batch_size)` is defined
//! batch-wise: batch `i` covers samples `[i b, min((i+1) b, n))` and owns a
//! ChaCha8 generator seeded with `child_seed(seed, i)`. Within a batch each
//! sample consumes draws in the fixed order: optical hop (X, Y, U), main RF
//! hop (LoS power, phase, scatter re, scatter im), eavesdropper RF hop
//! (same four). Batches may run concurrently; outage counts are summed, so
//! serial and parallel executions of the same configuration are
//! bit-identical. `batch_size` is part of the stream definition: changing it
//! changes the stream.

use crate::channels::{draw_gg, draw_sr};
use crate::error::{Error, Result};
use crate::rng::child_seed;
use crate::secrecy::SecrecySystem;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Which secrecy outage event to count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SopEvent {
    /// `1 + gamma_0 < gamma_th (1 + gamma_E)` — the defining event.
    Exact,
    /// `gamma_0 < gamma_th gamma_E` — the high-SNR approximation the closed
    /// form resolves.
    Approximate,
}

/// Monte Carlo run configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McConfig {
    n_samples: u64,
    seed: u64,
    batch_size: u64,
    definition: SopEvent,
}

impl McConfig {
    /// `n_samples >= 10^4` keeps the normal-approximation standard error
    /// meaningful; smaller runs are rejected.
    pub fn new(n_samples: u64, seed: u64, batch_size: u64, definition: SopEvent) -> Result<Self> {
        if n_samples < 10_000 {
            return Err(Error::InvalidParameter(format!(
                "n_samples = {n_samples} below 10^4; standard-error reporting needs more"
            )));
        }
        if batch_size == 0 {
            return Err(Error::InvalidParameter("batch_size must be positive".into()));
        }
        Ok(McConfig {
            n_samples,
            seed,
            batch_size,
            definition,
        })
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn n_samples(&self) -> u64 {
        self.n_samples
    }
    pub fn seed(&self) -> u64 {
        self.seed
    }
    pub fn batch_size(&self) -> u64 {
        self.batch_size
    }
    pub fn definition(&self) -> SopEvent {
        self.definition
    }
}

impl Default for McConfig {
    fn default() -> Self {
        McConfig {
            n_samples: 1_000_000,
            seed: 0x5a75ec,
            batch_size: 100_000,
            definition: SopEvent::Approximate,
        }
    }
}

/// A Bernoulli-mean estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub value: f64,
    /// `sqrt(value (1 - value) / n)`.
    pub std_error: f64,
    pub n: u64,
    pub seed: u64,
}

impl McEstimate {
    fn from_count(count: u64, cfg: &McConfig) -> McEstimate {
        let n = cfg.n_samples;
        let value = count as f64 / n as f64;
        McEstimate {
            value,
            std_error: (value * (1.0 - value) / n as f64).sqrt(),
            n,
            seed: cfg.seed,
        }
    }
}

fn count_event<E>(sys: &SecrecySystem, cfg: &McConfig, event: E) -> u64
where
    E: Fn(f64, f64) -> bool + Sync,
{
    let n_batches = cfg.n_samples.div_ceil(cfg.batch_size);
    (0..n_batches)
        .into_par_iter()
        .map(|i| {
            let lo = i * cfg.batch_size;
            let hi = (lo + cfg.batch_size).min(cfg.n_samples);
            let mut rng = ChaCha8Rng::seed_from_u64(child_seed(cfg.seed, i));
            let mut count = 0u64;
            for _ in lo..hi {
                let g_sr = draw_gg(&sys.fso, &mut rng);
                let g_rd = draw_sr(&sys.main_rf, &mut rng);
                let g_re = draw_sr(&sys.eve_rf, &mut rng);
                let g0 = g_sr.min(g_rd);
                if event(g0, g_re) {
                    count += 1;
                }
            }
            count
        })
        .sum()
}

/// Estimate the secrecy outage probability by counting `C_s < R_s` events.
pub fn sop_mc(sys: &SecrecySystem, cfg: &McConfig) -> McEstimate {
    let gth = sys.gamma_th();
    let count = match cfg.definition {
        SopEvent::Exact => count_event(sys, cfg, |g0, ge| 1.0 + g0 < gth * (1.0 + ge)),
        SopEvent::Approximate => count_event(sys, cfg, |g0, ge| g0 < gth * ge),
    };
    McEstimate::from_count(count, cfg)
}

/// Estimate the probability of positive secrecy capacity, `Pr[gamma_0 >
/// gamma_E]`. Ties count as non-positive; they have probability zero under
/// the continuous channel models.
pub fn ppsc_mc(sys: &SecrecySystem, cfg: &McConfig) -> McEstimate {
    let count = count_event(sys, cfg, |g0, ge| g0 > ge);
    McEstimate::from_count(count, cfg)
}
