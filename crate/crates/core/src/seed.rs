//! Deterministic derivation of independent random streams from a master seed
//! and an index path, so results never depend on execution order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

#[inline]
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Folds `path` into `seed`, one splitmix round per component.
pub fn derive(seed: u64, path: &[u64]) -> u64 {
    path.iter()
        .fold(splitmix64(seed), |acc, &k| splitmix64(acc ^ splitmix64(k.wrapping_add(GOLDEN))))
}

pub fn stream(seed: u64, path: &[u64]) -> StreamRng {
    ChaCha8Rng::seed_from_u64(derive(seed, path))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn distinct_paths_give_distinct_streams() {
        let a = derive(7, &[0, 1]);
        let b = derive(7, &[1, 0]);
        let c = derive(7, &[0, 2]);
        let d = derive(8, &[0, 1]);
        assert!(a != b && a != c && a != d);
        assert_eq!(derive(7, &[0, 1]), a);
    }

    #[test]
    fn streams_replay() {
        let x: u64 = stream(3, &[4]).random();
        let y: u64 = stream(3, &[4]).random();
        assert_eq!(x, y);
    }
}
