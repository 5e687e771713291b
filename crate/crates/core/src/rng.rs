//! Reproducible random streams keyed by `(seed, cell, replicate)`.
//!
//! Every Monte-Carlo replicate owns an independent ChaCha8 stream. The key
//! `(seed, cell)` is expanded into the 256-bit ChaCha key with SplitMix64 and
//! the replicate index selects the ChaCha stream, so the draws of a replicate
//! never depend on which thread runs it or in which order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Stream = ChaCha8Rng;

#[inline]
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Independent stream for replicate `replicate` of cell `cell` under `seed`.
pub fn stream(seed: u64, cell: u64, replicate: u64) -> Stream {
    let mut state = seed ^ splitmix64(&mut cell.wrapping_mul(0xD1B5_4A32_D192_ED03));
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(replicate);
    rng
}

/// Child key for nested experiments (e.g. meta-runs of a whole experiment).
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut state = seed ^ index.wrapping_mul(0xA24B_AED4_963E_E407);
    splitmix64(&mut state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::RngCore;

    fn head(mut rng: Stream) -> [u64; 4] {
        [rng.next_u64(), rng.next_u64(), rng.next_u64(), rng.next_u64()]
    }

    #[test]
    fn same_key_same_stream() {
        assert_eq!(head(stream(42, 3, 17)), head(stream(42, 3, 17)));
    }

    #[test]
    fn distinct_keys_distinct_streams() {
        let base = head(stream(42, 3, 17));
        assert_ne!(base, head(stream(43, 3, 17)));
        assert_ne!(base, head(stream(42, 4, 17)));
        assert_ne!(base, head(stream(42, 3, 18)));
        // (seed, cell) must not commute.
        assert_ne!(head(stream(1, 2, 0)), head(stream(2, 1, 0)));
    }

    #[test]
    fn derived_seeds_differ() {
        let seeds: std::collections::HashSet<u64> = (0..1000).map(|i| derive_seed(9, i)).collect();
        assert_eq!(seeds.len(), 1000);
    }
}

/// Generator that returns the same word forever.
#[cfg(test)]
pub(crate) struct ConstRng(pub u64);

#[cfg(test)]
impl rand::RngCore for ConstRng {
    fn next_u32(&mut self) -> u32 {
        (self.0 >> 32) as u32
    }

    fn next_u64(&mut self) -> u64 {
        self.0
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        for chunk in dst.chunks_mut(8) {
            chunk.copy_from_slice(&self.0.to_le_bytes()[..chunk.len()]);
        }
    }
}
