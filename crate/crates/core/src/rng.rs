//! Deterministic counter-based random streams.
//!
//! Every stream is a pure function of `(seed, chunk)` and its own counter:
//! regenerating a chunk never depends on any other chunk, so serial and
//! parallel generation produce bit-identical results on every platform and
//! thread count.

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Counter stream keyed by `(seed, chunk)`.
#[derive(Debug, Clone)]
pub struct CounterRng {
    base: u64,
    counter: u64,
}

impl CounterRng {
    pub fn new(seed: u64, chunk: u64) -> Self {
        let base = mix64(mix64(seed ^ GAMMA) ^ chunk.wrapping_mul(GAMMA));
        CounterRng { base, counter: 0 }
    }

    pub fn next_u64(&mut self) -> u64 {
        let v = mix64(self.base.wrapping_add(self.counter.wrapping_mul(GAMMA)));
        self.counter += 1;
        v
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[-1, 1)`.
    pub fn next_signed(&mut self) -> f64 {
        2.0 * self.next_f64() - 1.0
    }
}

/// Derives a child seed from a parent seed and a tag path, used to give
/// sweeps, repetitions and ensemble slots disjoint streams.
pub fn derive_seed(seed: u64, tags: &[u64]) -> u64 {
    let mut s = mix64(seed ^ GAMMA);
    for &t in tags {
        s = mix64(s.wrapping_add(GAMMA) ^ mix64(t ^ 0x5851_F42D_4C95_7F2D));
    }
    s
}
