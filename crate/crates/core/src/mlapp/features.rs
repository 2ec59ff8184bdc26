//! Deterministic hashed character-n-gram featurizer.
//!
//! Tokens are wrapped in boundary sentinels and their 2- and 3-grams hashed
//! (FNV-1a, fixed seed) into a power-of-two bucket space; index 0 is a bias
//! feature shared by every token. No lexical resources and no dependence on
//! process-level hash randomization, so featurization is reproducible
//! across runs and platforms.

/// Hashed n-gram feature map with a fixed seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FeatureMap {
    pub buckets: usize,
    pub seed: u64,
}

impl Default for FeatureMap {
    fn default() -> Self {
        Self {
            buckets: 1 << 14,
            seed: 0x6e67_7261_6d73,
        }
    }
}

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

fn fnv1a(seed: u64, bytes: &[u8]) -> u64 {
    let mut h = FNV_OFFSET ^ seed;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(FNV_PRIME);
    }
    h
}

impl FeatureMap {
    pub fn with_buckets(buckets: usize) -> Self {
        assert!(buckets >= 2, "need at least the bias bucket plus one");
        Self {
            buckets,
            ..Self::default()
        }
    }

    /// Sparse (index, count) features of one token, sorted by index. Always
    /// includes the bias feature at index 0 with weight 1.
    pub fn features(&self, token: &str) -> Vec<(usize, f64)> {
        let wrapped: Vec<char> = std::iter::once('^')
            .chain(token.chars())
            .chain(std::iter::once('$'))
            .collect();
        let mut idx: Vec<usize> = Vec::new();
        for n in [2usize, 3] {
            if wrapped.len() < n {
                continue;
            }
            for w in wrapped.windows(n) {
                let gram: String = w.iter().collect();
                let h = fnv1a(self.seed, gram.as_bytes());
                idx.push(1 + (h as usize) % (self.buckets - 1));
            }
        }
        idx.sort_unstable();
        let mut out: Vec<(usize, f64)> = vec![(0, 1.0)];
        for i in idx {
            match out.last_mut() {
                Some((j, c)) if *j == i => *c += 1.0,
                _ => out.push((i, 1.0)),
            }
        }
        out
    }
}
