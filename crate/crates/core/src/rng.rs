//! Deterministic pseudo-randomness for sampling.
//!
//! SplitMix64 (Steele, Lea & Flood 2014; constants as in Vigna's reference
//! implementation): a 64-bit seedable, splittable generator whose output is
//! identical on every platform.  Sampling code derives everything it needs
//! from `next_u64`, so a fixed seed pins every report byte.

use num_bigint::BigInt;
use num_traits::One;

use crate::exactnum::Rational;

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// An independent child stream; the parent advances by one step.
    pub fn split(&mut self) -> SplitMix64 {
        SplitMix64::new(self.next_u64())
    }

    /// Uniform draw from `0..bound` by rejection, free of modulo bias.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        let threshold = bound.wrapping_neg() % bound;
        loop {
            let x = self.next_u64();
            if x >= threshold {
                return x % bound;
            }
        }
    }

    /// A dyadic rational `k / 2^64` in `[0, 1)`, exact.
    pub fn unit_dyadic(&mut self) -> Rational {
        Rational::new(BigInt::from(self.next_u64()), BigInt::one() << 64)
    }
}
