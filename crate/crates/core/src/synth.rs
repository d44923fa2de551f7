//! Synthetic test data: uniform random matrices and matrices with planted
//! rectangles plus noise. Generators are seeded and reproducible.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fca::{AttributeSet, ObjectSet};
use crate::matrix::{BooleanMatrix, MatrixBuilder};

/// Each cell is one with probability `density`.
pub fn random_matrix(rows: usize, cols: usize, density: f64, seed: u64) -> BooleanMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    BooleanMatrix::from_fn(rows, cols, |_, _| rng.gen_bool(density))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Noise {
    /// Each cell becomes one with the noise probability.
    Additive,
    /// Each cell is inverted with the noise probability.
    Flip,
}

#[derive(Clone, Debug)]
pub struct PlantedSpec {
    pub rows: usize,
    pub cols: usize,
    pub rectangles: usize,
    /// Inclusive bounds on the number of objects of a rectangle.
    pub extent_size: (usize, usize),
    /// Inclusive bounds on the number of attributes of a rectangle.
    pub intent_size: (usize, usize),
    pub noise: f64,
    pub noise_kind: Noise,
}

#[derive(Clone, Debug)]
pub struct Planted {
    pub matrix: BooleanMatrix,
    pub rectangles: Vec<(ObjectSet, AttributeSet)>,
}

/// Plants `spec.rectangles` random rectangles (objects and attributes drawn
/// uniformly without replacement) and then applies noise.
pub fn planted(spec: &PlantedSpec, seed: u64) -> Planted {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = MatrixBuilder::new(spec.rows, spec.cols);
    let mut rectangles = Vec::with_capacity(spec.rectangles);
    for _ in 0..spec.rectangles {
        let h = rng.gen_range(spec.extent_size.0..=spec.extent_size.1);
        let w = rng.gen_range(spec.intent_size.0..=spec.intent_size.1);
        let extent = ObjectSet::from_indices(spec.rows, sample(&mut rng, spec.rows, h));
        let intent = AttributeSet::from_indices(spec.cols, sample(&mut rng, spec.cols, w));
        b.fill_rectangle(&extent, &intent);
        rectangles.push((extent, intent));
    }
    for i in 0..spec.rows {
        for j in 0..spec.cols {
            if rng.gen_bool(spec.noise) {
                let v = match spec.noise_kind {
                    Noise::Additive => true,
                    Noise::Flip => !b.get(i, j),
                };
                b.set(i, j, v);
            }
        }
    }
    Planted {
        matrix: b.build(),
        rectangles,
    }
}
