//! The random source behind every suite and search.
//!
//! Trial `t` of a run with seed `s` draws from ChaCha8 seeded with
//! `seed_from_u64(s)` and switched to stream `t`. Integers in a range are
//! drawn by rejection from raw 64-bit outputs, so the sequence depends only
//! on the ChaCha8 keystream and is identical on every platform.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

pub struct TrialRng {
    inner: ChaCha8Rng,
}

impl TrialRng {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        TrialRng { inner }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform in `0..n`; `n` must be positive.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "empty range");
        let zone = u64::MAX - (u64::MAX - n + 1) % n;
        loop {
            let x = self.next_u64();
            if x <= zone {
                return x % n;
            }
        }
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.below(n as u64) as usize
    }

    /// Uniform in `[-bound, bound]`.
    pub fn int_in(&mut self, bound: i64) -> i64 {
        let bound = bound.abs();
        self.below(2 * bound as u64 + 1) as i64 - bound
    }

    /// Uniform in `[-bound, bound] \ {0}`; `bound` must be at least 1.
    pub fn nonzero_int(&mut self, bound: i64) -> i64 {
        let bound = bound.abs().max(1);
        let v = self.below(2 * bound as u64) as i64 - bound;
        if v >= 0 {
            v + 1
        } else {
            v
        }
    }

    /// Uniform in `lo..=hi`.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    pub fn coin(&mut self) -> bool {
        self.below(2) == 1
    }

    /// True with probability `num / den`.
    pub fn chance(&mut self, num: u64, den: u64) -> bool {
        self.below(den) < num
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.index(items.len())]
    }
}
