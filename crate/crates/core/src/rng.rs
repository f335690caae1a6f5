//! Deterministic counter-based random streams.
//!
//! [`SplitMix64`] is a 64-bit-state generator whose substreams are keyed by
//! `(seed, stream index)`. Because each stream is derived purely from its
//! key, trial-level work can be partitioned across workers in any way
//! without changing a single drawn value. There is no global RNG state.

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
fn mix64(mut z: u64) -> u64 {
    z ^= z >> 33;
    z = z.wrapping_mul(0xFF51_AFD7_ED55_8CCD);
    z ^= z >> 33;
    z = z.wrapping_mul(0xC4CE_B9FE_1A85_EC53);
    z ^ (z >> 33)
}

/// SplitMix64 stream.
#[derive(Debug, Clone, Copy)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    /// Independent substream for `(seed, index)`; the index is a counter
    /// (e.g. the Monte Carlo trial number), not a previous state.
    pub fn substream(seed: u64, index: u64) -> Self {
        let key = mix64(seed) ^ mix64(index.wrapping_mul(GOLDEN_GAMMA).wrapping_add(1));
        Self::new(key)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1) with 53 significant bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}
