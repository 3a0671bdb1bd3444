//! Seeded, splittable random streams.
//!
//! Every random draw in an experiment is taken from a stream addressed by a
//! path of integers, e.g. `[SPATIAL, dim, n, partition, trial, AXIS_X]`. The
//! stream depends only on the master seed and the path, so tasks can run in
//! any order, on any number of threads, and still see the same numbers.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator handed out by [`SeedTree::stream`].
pub type StreamRng = ChaCha8Rng;

/// Tags that keep streams for different purposes apart.
pub mod purpose {
    pub const SUPERPOSITION: u64 = 1;
    pub const SPATIAL: u64 = 2;
    pub const HEATMAP: u64 = 3;
    pub const SELFTEST: u64 = 4;
    pub const PARTITION_SAMPLE: u64 = 10;
    pub const AXIS_X: u64 = 20;
    pub const AXIS_Y: u64 = 21;
    pub const VOCABULARY: u64 = 22;
    pub const POSITIONS: u64 = 23;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeedTree {
    master: u64,
}

impl SeedTree {
    pub fn new(master: u64) -> Self {
        Self { master }
    }

    pub fn master(&self) -> u64 {
        self.master
    }

    /// Independent generator for the given path.
    pub fn stream(&self, path: &[u64]) -> StreamRng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master);
        rng.set_stream(fold_path(path));
        rng
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn fold_path(path: &[u64]) -> u64 {
    // Length goes in first so [a] and [a, 0] differ.
    path.iter().fold(splitmix64(path.len() as u64), |acc, &p| splitmix64(acc ^ splitmix64(p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn same_path_same_numbers() {
        let tree = SeedTree::new(42);
        let a: Vec<u64> = (0..8)
            .map({
                let mut r = tree.stream(&[1, 2, 3]);
                move |_| r.random()
            })
            .collect();
        let b: Vec<u64> = (0..8)
            .map({
                let mut r = tree.stream(&[1, 2, 3]);
                move |_| r.random()
            })
            .collect();
        assert_eq!(a, b);
    }

    #[test]
    fn distinct_paths_and_seeds_differ() {
        let tree = SeedTree::new(42);
        let x: u64 = tree.stream(&[1, 2, 3]).random();
        let y: u64 = tree.stream(&[1, 2, 4]).random();
        let z: u64 = tree.stream(&[1, 2, 3, 0]).random();
        let w: u64 = SeedTree::new(43).stream(&[1, 2, 3]).random();
        assert_ne!(x, y);
        assert_ne!(x, z);
        assert_ne!(x, w);
    }
}
