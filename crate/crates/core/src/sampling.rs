//! Seeded deterministic sampling for the randomized checks.
//!
//! All sampled verifications draw from a ChaCha stream seeded from the
//! manifest, so reports are reproducible byte-for-byte.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

#[derive(Clone, Debug)]
pub struct DetRng {
    inner: ChaCha8Rng,
}

impl DetRng {
    pub fn new(seed: u64) -> Self {
        DetRng { inner: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Value in `0..n`; the modulo bias is irrelevant at our sample sizes.
    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0);
        (self.next_u64() % n as u64) as usize
    }

    /// Integer in the closed interval `[lo, hi]`.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        lo + self.below((hi - lo + 1) as usize) as i64
    }

    /// Small nonzero rational coefficient for random elements.
    pub fn small_coeff(&mut self) -> crate::exactnum::Scalar {
        let n = self.int_in(-3, 3);
        let n = if n == 0 { 1 } else { n };
        let d = self.int_in(1, 3);
        crate::exactnum::Scalar::rational(n, d)
    }
}
