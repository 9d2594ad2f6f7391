//! Seeded initialization and the full-batch Adam training loop.
//!
//! Every epoch computes gradients over the whole training set and applies
//! one optimizer step to both matrices, sharing a single step counter.
//! All randomness comes from the configured seed.

use alloc::vec::Vec;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use thiserror::Error;

use crate::dataset::TrainingExample;
use crate::entity::EntityIndex;
use crate::matrix::Matrix;
use crate::model::{loss, loss_gradients, EmbeddingSet, ModelError};

/// Training hyperparameters. The defaults are the reference configuration:
/// dimension 5, learning rate 0.001, 100 epochs, standard Adam moments.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainConfig {
    /// Embedding dimension D.
    pub dim: usize,
    pub learning_rate: f64,
    pub epochs: usize,
    pub seed: u64,
    pub beta1: f64,
    pub beta2: f64,
    pub adam_epsilon: f64,
    /// Standard deviation of the zero-mean normal initialization.
    pub init_scale: f64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            dim: 5,
            learning_rate: 1e-3,
            epochs: 100,
            seed: 0,
            beta1: 0.9,
            beta2: 0.999,
            adam_epsilon: 1e-8,
            init_scale: 0.1,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<(), TrainError> {
        if self.dim == 0 {
            return Err(TrainError::InvalidConfig("dim must be at least 1"));
        }
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return Err(TrainError::InvalidConfig("learning_rate must be positive"));
        }
        for (name, beta) in [("beta1", self.beta1), ("beta2", self.beta2)] {
            if !(0.0..1.0).contains(&beta) {
                return Err(TrainError::InvalidConfig(match name {
                    "beta1" => "beta1 must be in [0, 1)",
                    _ => "beta2 must be in [0, 1)",
                }));
            }
        }
        if !(self.adam_epsilon > 0.0 && self.adam_epsilon.is_finite()) {
            return Err(TrainError::InvalidConfig("adam_epsilon must be positive"));
        }
        if !(self.init_scale >= 0.0 && self.init_scale.is_finite()) {
            return Err(TrainError::InvalidConfig("init_scale must be non-negative"));
        }
        Ok(())
    }
}

/// Adam accumulators for both parameter matrices plus the shared step count.
#[derive(Debug, Clone, PartialEq)]
pub struct AdamState {
    pub m_riders: Matrix,
    pub v_riders: Matrix,
    pub m_races: Matrix,
    pub v_races: Matrix,
    pub step: u64,
}

impl AdamState {
    pub fn new(n_riders: usize, n_races: usize, dim: usize) -> Self {
        Self {
            m_riders: Matrix::zeros(n_riders, dim),
            v_riders: Matrix::zeros(n_riders, dim),
            m_races: Matrix::zeros(n_races, dim),
            v_races: Matrix::zeros(n_races, dim),
            step: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TrainError {
    #[error("invalid training config: {0}")]
    InvalidConfig(&'static str),
    #[error("no training examples")]
    EmptyTrainingSet,
    #[error("shape mismatch: params are {params:?} but {other} is {found:?}")]
    ShapeMismatch {
        params: (usize, usize),
        other: &'static str,
        found: (usize, usize),
    },
    #[error("adam step counter must be at least 1")]
    ZeroStep,
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Draws both embedding matrices i.i.d. from a seeded normal distribution
/// with mean 0 and standard deviation `init_scale`.
///
/// The rider matrix is sampled before the race matrix, in row-major order,
/// from a single ChaCha8 stream, so one seed pins every entry.
pub fn init_embeddings(
    index: &EntityIndex,
    config: &TrainConfig,
) -> Result<EmbeddingSet, TrainError> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let normal = Normal::new(0.0, config.init_scale)
        .map_err(|_| TrainError::InvalidConfig("init_scale must be non-negative"))?;
    let riders = Matrix::from_fn(index.n_riders(), config.dim, |_, _| normal.sample(&mut rng));
    let races = Matrix::from_fn(index.n_races(), config.dim, |_, _| normal.sample(&mut rng));
    Ok(EmbeddingSet::new(riders, races, index.clone()).expect("sampled matrices are finite"))
}

/// One Adam update on a single parameter matrix.
///
/// `m` and `v` are that matrix's slice of the optimizer state; `step` is the
/// shared counter and must already be incremented for this update.
///
/// m <- b1 m + (1-b1) g;  v <- b2 v + (1-b2) g^2;
/// params -= lr * (m / (1-b1^t)) / (sqrt(v / (1-b2^t)) + eps)
pub fn adam_step(
    params: &mut Matrix,
    grads: &Matrix,
    m: &mut Matrix,
    v: &mut Matrix,
    step: u64,
    config: &TrainConfig,
) -> Result<(), TrainError> {
    for (other, found) in [("grads", grads.shape()), ("m", m.shape()), ("v", v.shape())] {
        if found != params.shape() {
            return Err(TrainError::ShapeMismatch {
                params: params.shape(),
                other,
                found,
            });
        }
    }
    if step == 0 {
        return Err(TrainError::ZeroStep);
    }
    let m_correction = 1.0 - libm::pow(config.beta1, step as f64);
    let v_correction = 1.0 - libm::pow(config.beta2, step as f64);
    let params = params.as_mut_slice();
    let m = m.as_mut_slice();
    let v = v.as_mut_slice();
    for (i, &g) in grads.as_slice().iter().enumerate() {
        m[i] = config.beta1 * m[i] + (1.0 - config.beta1) * g;
        v[i] = config.beta2 * v[i] + (1.0 - config.beta2) * g * g;
        let m_hat = m[i] / m_correction;
        let v_hat = v[i] / v_correction;
        params[i] -= config.learning_rate * m_hat / (libm::sqrt(v_hat) + config.adam_epsilon);
    }
    Ok(())
}

/// Trains embeddings with full-batch Adam for `config.epochs` epochs.
///
/// The loss history holds the loss before each step plus a final
/// evaluation, `epochs + 1` entries in total. Fixed inputs and seed give
/// bit-identical results.
pub fn train(
    examples: &[TrainingExample],
    index: &EntityIndex,
    config: &TrainConfig,
) -> Result<(EmbeddingSet, Vec<f64>), TrainError> {
    config.validate()?;
    if examples.is_empty() {
        return Err(TrainError::EmptyTrainingSet);
    }
    let mut embeddings = init_embeddings(index, config)?;
    let mut state = AdamState::new(index.n_riders(), index.n_races(), config.dim);
    let mut history = Vec::with_capacity(config.epochs + 1);
    for _ in 0..config.epochs {
        history.push(loss(&embeddings, examples)?);
        let (grad_riders, grad_races) = loss_gradients(&embeddings, examples)?;
        state.step += 1;
        adam_step(
            embeddings.riders_mut(),
            &grad_riders,
            &mut state.m_riders,
            &mut state.v_riders,
            state.step,
            config,
        )?;
        adam_step(
            embeddings.races_mut(),
            &grad_races,
            &mut state.m_races,
            &mut state.v_races,
            state.step,
            config,
        )?;
    }
    history.push(loss(&embeddings, examples)?);
    Ok((embeddings, history))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entity::RaceKey;
    use alloc::format;
    use alloc::string::ToString;
    use alloc::vec;

    fn test_index(n_riders: usize, n_races: usize) -> EntityIndex {
        let riders = (0..n_riders).map(|i| format!("rider{i:04}")).collect();
        let races = (0..n_races)
            .map(|i| RaceKey::OneDay {
                race_id: format!("race{i:04}"),
            })
            .collect();
        EntityIndex::from_keys(riders, races).unwrap()
    }

    #[test]
    fn default_config_is_reference_configuration() {
        let c = TrainConfig::default();
        assert_eq!(c.dim, 5);
        assert_eq!(c.learning_rate, 1e-3);
        assert_eq!(c.epochs, 100);
        assert_eq!(c.beta1, 0.9);
        assert_eq!(c.beta2, 0.999);
        assert_eq!(c.adam_epsilon, 1e-8);
        assert_eq!(c.init_scale, 0.1);
        assert!(c.validate().is_ok());
    }

    #[test]
    fn config_validation_rejects_bad_values() {
        for bad in [
            TrainConfig { dim: 0, ..Default::default() },
            TrainConfig { learning_rate: 0.0, ..Default::default() },
            TrainConfig { learning_rate: -1.0, ..Default::default() },
            TrainConfig { beta1: 1.0, ..Default::default() },
            TrainConfig { beta2: -0.1, ..Default::default() },
            TrainConfig { adam_epsilon: 0.0, ..Default::default() },
            TrainConfig { init_scale: -0.5, ..Default::default() },
        ] {
            assert!(bad.validate().is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn init_is_deterministic_per_seed() {
        let index = test_index(7, 4);
        let config = TrainConfig { seed: 9, ..Default::default() };
        let a = init_embeddings(&index, &config).unwrap();
        let b = init_embeddings(&index, &config).unwrap();
        assert_eq!(a.riders().as_slice(), b.riders().as_slice());
        assert_eq!(a.races().as_slice(), b.races().as_slice());

        let other = init_embeddings(&index, &TrainConfig { seed: 10, ..Default::default() }).unwrap();
        assert_ne!(a.riders().as_slice(), other.riders().as_slice());
    }

    #[test]
    fn init_scale_zero_gives_zero_matrices() {
        let index = test_index(3, 2);
        let config = TrainConfig { init_scale: 0.0, ..Default::default() };
        let emb = init_embeddings(&index, &config).unwrap();
        assert!(emb.riders().as_slice().iter().all(|&v| v == 0.0));
        assert!(emb.races().as_slice().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn init_sample_statistics_match_scale() {
        // 2000 riders x 5 dims = 1e4 draws.
        let index = test_index(2000, 0);
        let config = TrainConfig { seed: 4, ..Default::default() };
        let emb = init_embeddings(&index, &config).unwrap();
        let samples = emb.riders().as_slice();
        assert_eq!(samples.len(), 10_000);
        let mean: f64 = samples.iter().sum::<f64>() / samples.len() as f64;
        let var: f64 =
            samples.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / samples.len() as f64;
        let std = libm::sqrt(var);
        assert!(mean.abs() < 0.01, "sample mean {mean}");
        assert!((std - 0.1).abs() < 0.01, "sample std {std}");
    }

    #[test]
    fn zero_gradient_from_fresh_state_is_a_fixed_point() {
        let mut params = Matrix::from_rows(vec![vec![1.5, -2.0], vec![0.25, 3.0]], 2);
        let before = params.clone();
        let grads = Matrix::zeros(2, 2);
        let mut m = Matrix::zeros(2, 2);
        let mut v = Matrix::zeros(2, 2);
        adam_step(&mut params, &grads, &mut m, &mut v, 1, &TrainConfig::default()).unwrap();
        assert_eq!(params, before);
    }

    #[test]
    fn first_step_magnitude_is_about_learning_rate() {
        let config = TrainConfig::default();
        for g in [1e-3, 0.1, 5.0] {
            let mut params = Matrix::zeros(1, 1);
            let grads = Matrix::from_fn(1, 1, |_, _| g);
            let mut m = Matrix::zeros(1, 1);
            let mut v = Matrix::zeros(1, 1);
            adam_step(&mut params, &grads, &mut m, &mut v, 1, &config).unwrap();
            let step = -params.get(0, 0);
            assert!(
                (step - config.learning_rate).abs() < 1e-6,
                "gradient {g}: step {step}"
            );
        }
    }

    #[test]
    fn adam_step_rejects_shape_mismatch() {
        let mut params = Matrix::zeros(2, 2);
        let grads = Matrix::zeros(2, 3);
        let mut m = Matrix::zeros(2, 2);
        let mut v = Matrix::zeros(2, 2);
        assert!(matches!(
            adam_step(&mut params, &grads, &mut m, &mut v, 1, &TrainConfig::default()),
            Err(TrainError::ShapeMismatch { other: "grads", .. })
        ));
    }

    #[test]
    fn zero_epochs_returns_initialization() {
        let index = test_index(2, 2);
        let config = TrainConfig { epochs: 0, seed: 3, ..Default::default() };
        let examples = vec![TrainingExample {
            rider_index: 0,
            race_index: 0,
            target: 1.0,
        }];
        let (trained, history) = train(&examples, &index, &config).unwrap();
        let init = init_embeddings(&index, &config).unwrap();
        assert_eq!(trained.riders().as_slice(), init.riders().as_slice());
        assert_eq!(trained.races().as_slice(), init.races().as_slice());
        assert_eq!(history.len(), 1);
    }

    #[test]
    fn empty_training_set_is_rejected() {
        let index = test_index(1, 1);
        let err = train(&[], &index, &TrainConfig::default()).unwrap_err();
        assert_eq!(err, TrainError::EmptyTrainingSet);
        assert_eq!(err.to_string(), "no training examples");
    }

    #[test]
    fn history_length_is_epochs_plus_one() {
        let index = test_index(2, 2);
        let config = TrainConfig { epochs: 7, ..Default::default() };
        let examples = vec![TrainingExample {
            rider_index: 1,
            race_index: 0,
            target: 0.8,
        }];
        let (_, history) = train(&examples, &index, &config).unwrap();
        assert_eq!(history.len(), 8);
        assert!(history.iter().all(|l| l.is_finite() && *l >= 0.0));
    }
}
