//! Tiny deterministic generator for seeded fixtures and property sweeps.
//!
//! SplitMix64: fixed, portable, no dependencies, so every randomized check in
//! the crate reproduces exactly from its seed.

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[lo, hi]` (inclusive).
    pub fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }

    /// Small-height rational: numerator in [-h, h], denominator in [1, h].
    pub fn small_rat(&mut self, h: i64) -> crate::rat::Rat {
        let n = self.range_i64(-h, h);
        let d = self.range_i64(1, h);
        crate::rat::ratq(n, d)
    }
}
