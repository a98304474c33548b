//! Seeded sampling of small rationals for the randomized suites.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{rat, Rational};

pub const DEFAULT_SEED: u64 = 20240601;

/// Numerators and denominators are bounded by this in the sampled suites.
pub const DEFAULT_BOUND: i64 = 40;

pub struct Sampler {
    rng: ChaCha8Rng,
    bound: i64,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler::with_bound(seed, DEFAULT_BOUND)
    }

    pub fn with_bound(seed: u64, bound: i64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            bound: bound.max(1),
        }
    }

    /// An independent stream for sub-task `key`, so the values a suite item
    /// sees do not depend on how many draws other items made.
    pub fn fork(seed: u64, key: u64) -> Self {
        Sampler::new(seed ^ key.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }

    /// `a/b` with `|a| ≤ bound` and `1 ≤ b ≤ bound`.
    pub fn rational(&mut self) -> Rational {
        let a = self.rng.gen_range(-self.bound..=self.bound);
        let b = self.rng.gen_range(1..=self.bound);
        rat(a, b)
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let r = self.rational();
            if !r.is_zero() {
                return r;
            }
        }
    }

    /// The first sampled value accepted by `keep`; gives up after many tries.
    pub fn rational_where(&mut self, mut keep: impl FnMut(&Rational) -> bool) -> Option<Rational> {
        (0..10_000).map(|_| self.rational()).find(|r| keep(r))
    }

    pub fn integer(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn choose(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }
}
