//! Property tests for the model invariants.

use proptest::prelude::*;
use veloembed_core::dataset::TrainingExample;
use veloembed_core::entity::{EntityIndex, RaceKey};
use veloembed_core::matrix::Matrix;
use veloembed_core::model::{loss, predict, sigmoid, EmbeddingSet};

fn finite_vector(len: usize) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(-1e3..1e3f64, len)
}

proptest! {
    /// Predictions stay strictly inside (0, 1) for any finite vectors, even
    /// deep in sigmoid saturation.
    #[test]
    fn predict_is_strictly_inside_unit_interval(
        (a, b) in (1usize..8).prop_flat_map(|dim| (finite_vector(dim), finite_vector(dim))),
    ) {
        let p = predict(&a, &b).unwrap();
        prop_assert!(p > 0.0 && p < 1.0, "p = {p}");
        prop_assert!(p.is_finite());
    }

    /// Loss is non-negative for any in-range instance.
    #[test]
    fn loss_is_non_negative(
        entries in proptest::collection::vec(-5.0..5.0f64, 12),
        targets in proptest::collection::vec(0.0..=1.0f64, 1..10),
    ) {
        let riders = Matrix::from_fn(3, 2, |r, c| entries[r * 2 + c]);
        let races = Matrix::from_fn(3, 2, |r, c| entries[6 + r * 2 + c]);
        let index = EntityIndex::from_keys(
            (0..3).map(|i| format!("r{i}")).collect(),
            (0..3)
                .map(|i| RaceKey::OneDay { race_id: format!("x{i}") })
                .collect(),
        )
        .unwrap();
        let embeddings = EmbeddingSet::new(riders, races, index).unwrap();
        let examples: Vec<TrainingExample> = targets
            .iter()
            .enumerate()
            .map(|(i, &target)| TrainingExample {
                rider_index: i % 3,
                race_index: (i / 3) % 3,
                target,
            })
            .collect();
        let value = loss(&embeddings, &examples).unwrap();
        prop_assert!(value >= 0.0);
        prop_assert!(value.is_finite());
    }

    /// Sigmoid is monotone and symmetric: s(-x) = 1 - s(x).
    #[test]
    fn sigmoid_symmetry_and_monotonicity(x in -700.0..700.0f64, y in -700.0..700.0f64) {
        prop_assert!((sigmoid(-x) - (1.0 - sigmoid(x))).abs() <= 1e-15);
        if x < y {
            prop_assert!(sigmoid(x) <= sigmoid(y));
        }
    }
}
