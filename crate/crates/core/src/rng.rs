//! Portable deterministic randomness.
//!
//! Every random stream is a ChaCha8 keystream keyed by
//! `SHA-256(master_seed as u64 LE ‖ path)`, where `path` names what the stream
//! is for (`"task1/p03/cell07"`). Sampling helpers are implemented here on
//! raw `u64` words so generated files do not depend on the `rand`
//! distribution code of any particular version.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone)]
pub struct PathRng {
    inner: ChaCha8Rng,
    path: String,
}

impl PathRng {
    pub fn new(master_seed: u64, path: impl Into<String>) -> Self {
        let path = path.into();
        let mut h = Sha256::new();
        h.update(master_seed.to_le_bytes());
        h.update(path.as_bytes());
        let key: [u8; 32] = h.finalize().into();
        Self {
            inner: ChaCha8Rng::from_seed(key),
            path,
        }
    }

    /// Provenance string of this stream.
    pub fn path(&self) -> &str {
        &self.path
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    /// Uniform integer in `0..n` by rejection (no modulo bias).
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "below(0)");
        let zone = u64::MAX - (u64::MAX % n);
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % n;
            }
        }
    }

    pub fn index(&mut self, len: usize) -> usize {
        self.below(len as u64) as usize
    }

    pub fn coin(&mut self) -> bool {
        self.next_u64() >> 63 == 1
    }

    /// Standard normal via Box–Muller.
    pub fn normal(&mut self) -> f64 {
        let u1 = 1.0 - self.unit();
        let u2 = self.unit();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }

    /// Fisher–Yates shuffle.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_path_same_stream() {
        let mut a = PathRng::new(7, "task1/p00");
        let mut b = PathRng::new(7, "task1/p00");
        for _ in 0..16 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn path_and_seed_separate_streams() {
        let a = PathRng::new(7, "task1/p00").next_u64();
        let b = PathRng::new(7, "task1/p01").next_u64();
        let c = PathRng::new(8, "task1/p00").next_u64();
        assert_ne!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn frozen_stream_prefix() {
        // values from a separate ChaCha8 implementation; guards trial-file
        // reproducibility across dependency upgrades
        assert_eq!(PathRng::new(0, "").next_u64(), 0x4a76_ff63_8dd8_ea62);
        assert_eq!(
            PathRng::new(42, "task1/p00").next_u64(),
            0x97e5_8f53_8ee4_f802
        );
    }

    #[test]
    fn helpers_stay_in_range() {
        let mut r = PathRng::new(1, "range");
        for _ in 0..10_000 {
            let u = r.unit();
            assert!((0.0..1.0).contains(&u));
            let v = r.uniform(-3.0, 5.0);
            assert!((-3.0..5.0).contains(&v));
            assert!(r.below(7) < 7);
        }
    }

    #[test]
    fn below_is_roughly_uniform() {
        let mut r = PathRng::new(3, "hist");
        let mut counts = [0u32; 4];
        for _ in 0..40_000 {
            counts[r.below(4) as usize] += 1;
        }
        for c in counts {
            assert!((c as f64 / 10_000.0 - 1.0).abs() < 0.05, "{counts:?}");
        }
    }

    #[test]
    fn shuffle_is_a_permutation() {
        let mut r = PathRng::new(5, "shuffle");
        let mut v: Vec<u32> = (0..50).collect();
        r.shuffle(&mut v);
        let mut sorted = v.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..50).collect::<Vec<_>>());
        assert_ne!(v, sorted);
    }

    #[test]
    fn normal_moments() {
        let mut r = PathRng::new(11, "normal");
        let xs: Vec<f64> = (0..50_000).map(|_| r.normal()).collect();
        let mean = xs.iter().sum::<f64>() / xs.len() as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / xs.len() as f64;
        assert!(mean.abs() < 0.02);
        assert!((var - 1.0).abs() < 0.03);
    }
}
