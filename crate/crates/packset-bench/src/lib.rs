//! Shared instance builders for the benchmark targets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use packset::packset::{ExtNat, ExtPoint, PackingSet};
use packset::{PackingPolyhedron, QVector, Rational};

/// The worked 2x2 instance: A = [[2,1],[1,2]], b = (2,2).
pub fn canonical_instance() -> PackingPolyhedron {
    PackingPolyhedron::new(
        2,
        vec![QVector::from_ints(&[2, 1]), QVector::from_ints(&[1, 2])],
        vec![Rational::from_int(2), Rational::from_int(2)],
    )
    .unwrap()
}

/// A dense all-positive instance with the given shape.
pub fn positive_instance(dim: usize, rows: usize, seed: u64) -> PackingPolyhedron {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    PackingPolyhedron::new(
        dim,
        (0..rows)
            .map(|_| {
                QVector::new(
                    (0..dim)
                        .map(|_| Rational::from_int(rng.random_range(1..=4)))
                        .collect(),
                )
            })
            .collect(),
        (0..rows)
            .map(|_| Rational::from_int(rng.random_range(1..=3)))
            .collect(),
    )
    .unwrap()
}

/// A reproducible stream of random packing sets.
pub fn random_stream(len: usize, dim: usize, coord_max: u64, seed: u64) -> Vec<PackingSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..len)
        .map(|_| {
            let gens = (0..rng.random_range(1..=4))
                .map(|_| {
                    ExtPoint::new(
                        (0..dim)
                            .map(|_| ExtNat::Fin(rng.random_range(0..=coord_max)))
                            .collect(),
                    )
                })
                .collect();
            PackingSet::new(dim, gens).unwrap()
        })
        .collect()
}
