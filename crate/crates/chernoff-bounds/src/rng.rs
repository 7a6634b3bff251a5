//! Deterministic pseudo-random generation for the sampling experiments.
//!
//! The generator is xoshiro256++ (Blackman & Vigna), seeded by expanding a
//! single `u64` through splitmix64. Uniform doubles take the top 53 bits of
//! an output word, so every draw is reproducible bit-for-bit from the seed
//! across platforms. Categorical draws use inverse-CDF lookup.
//!
//! State is always passed explicitly; there is no global generator.

/// splitmix64 step, used only to expand seeds.
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// xoshiro256++ generator.
#[derive(Debug, Clone)]
pub struct Xoshiro256PlusPlus {
    s: [u64; 4],
}

impl Xoshiro256PlusPlus {
    /// Seeds the full 256-bit state from one `u64` via splitmix64.
    pub fn seed_from_u64(seed: u64) -> Self {
        let mut sm = seed;
        let s = [
            splitmix64(&mut sm),
            splitmix64(&mut sm),
            splitmix64(&mut sm),
            splitmix64(&mut sm),
        ];
        Self { s }
    }

    pub fn next_u64(&mut self) -> u64 {
        let result = self.s[0]
            .wrapping_add(self.s[3])
            .rotate_left(23)
            .wrapping_add(self.s[0]);
        let t = self.s[1] << 17;
        self.s[2] ^= self.s[0];
        self.s[3] ^= self.s[1];
        self.s[1] ^= self.s[2];
        self.s[0] ^= self.s[3];
        self.s[2] ^= t;
        self.s[3] = self.s[3].rotate_left(45);
        result
    }

    /// Uniform draw in `[0, 1)` with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// Draws `n` observations from the categorical distribution `prob` and
/// returns per-category counts.
///
/// Each observation is one uniform draw located in the cumulative
/// distribution by binary search, so the output is a multinomial sample
/// that depends only on the generator state.
pub fn multinomial_counts(rng: &mut Xoshiro256PlusPlus, n: u64, prob: &[f64]) -> Vec<u64> {
    let mut cdf = Vec::with_capacity(prob.len());
    let mut acc = 0.0;
    for &p in prob {
        acc += p;
        cdf.push(acc);
    }
    let mut counts = vec![0u64; prob.len()];
    let last = prob.len() - 1;
    for _ in 0..n {
        let u = rng.next_f64();
        // first index with cdf > u; clamp guards the final rounding gap
        let idx = cdf.partition_point(|&c| c <= u).min(last);
        counts[idx] += 1;
    }
    counts
}
