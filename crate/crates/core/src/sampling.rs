//! Fixed-size, seeded sentence sampling.
//!
//! Sentences are shuffled with Fisher–Yates driven by [`XorShift64Star`] and
//! accumulated until the rune count reaches the target. The sentence that
//! crosses the target is kept whole. If the corpus runs out first, the same
//! index array is shuffled again (continuing the generator stream) and
//! accumulation continues, so small corpora are resampled with repeats.

use alloc::vec::Vec;

use crate::{Corpus, Error, Result};

/// xorshift64* generator.
///
/// State update `x ^= x >> 12; x ^= x << 25; x ^= x >> 27`, output
/// `x * 0x2545F4914F6CDD1D` (wrapping). The initial state is one SplitMix64
/// step of the seed: `z = seed + 0x9E3779B97F4A7C15`, then
/// `z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9`,
/// `z = (z ^ (z >> 27)) * 0x94D049BB133111EB`, `z ^ (z >> 31)`; a zero result
/// is replaced by `0x9E3779B97F4A7C15`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XorShift64Star {
    state: u64,
}

impl XorShift64Star {
    pub fn new(seed: u64) -> Self {
        let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
        if z == 0 {
            z = 0x9E37_79B9_7F4A_7C15;
        }
        XorShift64Star { state: z }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    /// Uniform integer in `0..bound` (Lemire's multiply-and-reject).
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        let mut m = u128::from(self.next_u64()) * u128::from(bound);
        if (m as u64) < bound {
            let threshold = bound.wrapping_neg() % bound;
            while (m as u64) < threshold {
                m = u128::from(self.next_u64()) * u128::from(bound);
            }
        }
        (m >> 64) as u64
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SamplingConfig {
    /// Target number of runes (base letters).
    pub target_base_chars: usize,
    pub seed: u64,
}

impl SamplingConfig {
    pub const DEFAULT_TARGET: usize = 300_000;

    pub fn new(target_base_chars: usize, seed: u64) -> Result<Self> {
        if target_base_chars == 0 {
            return Err(Error::ZeroTarget);
        }
        Ok(SamplingConfig {
            target_base_chars,
            seed,
        })
    }
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig {
            target_base_chars: Self::DEFAULT_TARGET,
            seed: 0,
        }
    }
}

/// Indices of the sampled sentences, in output order.
pub fn sample_indices(rune_counts: &[usize], cfg: &SamplingConfig) -> Result<Vec<usize>> {
    if cfg.target_base_chars == 0 {
        return Err(Error::ZeroTarget);
    }
    if rune_counts.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    if rune_counts.iter().all(|&n| n == 0) {
        return Err(Error::UnsampleableCorpus);
    }
    let mut rng = XorShift64Star::new(cfg.seed);
    let mut order: Vec<usize> = (0..rune_counts.len()).collect();
    let mut picked = Vec::new();
    let mut total = 0usize;
    loop {
        rng.shuffle(&mut order);
        for &i in &order {
            picked.push(i);
            total += rune_counts[i];
            if total >= cfg.target_base_chars {
                return Ok(picked);
            }
        }
    }
}

pub fn sample(corpus: &Corpus, cfg: &SamplingConfig) -> Result<Corpus> {
    let counts: Vec<usize> = corpus.sentences.iter().map(|s| s.runes().len()).collect();
    let picked = sample_indices(&counts, cfg)?;
    Ok(corpus.with_sentences(
        picked
            .into_iter()
            .map(|i| corpus.sentences[i].clone())
            .collect(),
    ))
}
