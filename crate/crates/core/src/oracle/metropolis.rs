use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetropolisConfig {
    pub temperature: f64,
    pub n_samples: usize,
    pub burn_in: usize,
    pub seed: u64,
}

impl MetropolisConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.temperature > 0.0) {
            return Err(Error::InvalidConfig("temperature must be positive".into()));
        }
        if self.n_samples == 0 {
            return Err(Error::InvalidConfig("at least one sample is required".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetropolisResult<S> {
    /// One state per step after burn-in.
    pub samples: Vec<S>,
    /// Accepted fraction of the post-burn-in proposals.
    pub acceptance_rate: f64,
}

/// Metropolis chain: a proposal lowering or keeping the energy is taken;
/// a raise by ΔE is taken with probability exp(−ΔE/T), otherwise the chain
/// stays put. `proposal` must be symmetric.
pub fn metropolis_sample<S, E, P>(
    mut energy: E,
    mut proposal: P,
    init: S,
    cfg: &MetropolisConfig,
) -> Result<MetropolisResult<S>>
where
    S: Clone,
    E: FnMut(&S) -> f64,
    P: FnMut(&S, &mut ChaCha8Rng) -> S,
{
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut state = init;
    let mut e = energy(&state);
    let mut samples = Vec::with_capacity(cfg.n_samples);
    let mut accepted = 0usize;
    for step in 0..cfg.burn_in + cfg.n_samples {
        let candidate = proposal(&state, &mut rng);
        let e_new = energy(&candidate);
        let de = e_new - e;
        let take = de <= 0.0 || rng.gen::<f64>() < (-de / cfg.temperature).exp();
        if take {
            state = candidate;
            e = e_new;
        }
        if step >= cfg.burn_in {
            accepted += usize::from(take);
            samples.push(state.clone());
        }
    }
    Ok(MetropolisResult {
        samples,
        acceptance_rate: accepted as f64 / cfg.n_samples as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(temperature: f64, n_samples: usize, seed: u64) -> MetropolisConfig {
        MetropolisConfig {
            temperature,
            n_samples,
            burn_in: 1000,
            seed,
        }
    }

    #[test]
    fn hot_chain_accepts_everything() {
        let landscape = [0.3, -1.2, 2.5, 0.0, 4.1, -0.4, 1.7, 3.3];
        let r = metropolis_sample(
            |&s: &usize| landscape[s],
            |_, rng: &mut ChaCha8Rng| rng.gen_range(0..8),
            0,
            &cfg(1e9, 20_000, 1),
        )
        .unwrap();
        assert!((r.acceptance_rate - 1.0).abs() <= 0.01);
    }

    #[test]
    fn two_level_boltzmann_ratio() {
        let n = 100_000;
        let r = metropolis_sample(|&s: &u8| f64::from(s), |&s, _: &mut ChaCha8Rng| 1 - s, 0u8, &cfg(1.0, n, 7)).unwrap();
        let upper = r.samples.iter().filter(|&&s| s == 1).count() as f64 / n as f64;
        let p = (-1.0f64).exp() / (1.0 + (-1.0f64).exp());
        let sigma = (p * (1.0 - p) / n as f64).sqrt();
        assert!((upper - p).abs() < 3.0 * sigma, "{upper} vs {p}");
    }

    #[test]
    fn seeded_chain_is_reproducible() {
        let run = |seed| {
            metropolis_sample(
                |&s: &i32| f64::from(s * s) / 4.0,
                |&s, rng: &mut ChaCha8Rng| if rng.gen() { s + 1 } else { s - 1 },
                0,
                &cfg(0.7, 500, seed),
            )
            .unwrap()
        };
        assert_eq!(run(3), run(3));
        assert_ne!(run(3).samples, run(4).samples);
    }

    #[test]
    fn invalid_configs() {
        let e = |_: &u8| 0.0;
        let p = |&s: &u8, _: &mut ChaCha8Rng| s;
        assert!(metropolis_sample(e, p, 0, &cfg(0.0, 10, 0)).is_err());
        assert!(metropolis_sample(e, p, 0, &cfg(1.0, 0, 0)).is_err());
    }
}
