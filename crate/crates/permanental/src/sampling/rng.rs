//! Deterministic per-replicate RNG streams.
//!
//! Each replicate draws from its own counter-based ChaCha stream derived
//! from `(master seed, sampler id, replicate index)`, so batches are
//! bit-identical however the replicates are scheduled across workers.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Identifies which sampler produced a batch (also part of the stream key).
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SamplerId {
    Gamma = 1,
    Bivariate = 2,
    HalfIntField = 3,
    PathGrid = 4,
    RebirthChain = 5,
}

impl SamplerId {
    pub fn code(self) -> u32 {
        self as u32
    }

    pub fn from_code(c: u32) -> Option<Self> {
        match c {
            1 => Some(SamplerId::Gamma),
            2 => Some(SamplerId::Bivariate),
            3 => Some(SamplerId::HalfIntField),
            4 => Some(SamplerId::PathGrid),
            5 => Some(SamplerId::RebirthChain),
            _ => None,
        }
    }
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// The stream for one replicate. Replicates index a 56-bit counter; the
/// sampler id occupies the top byte so distinct samplers never share
/// a stream even under the same master seed.
pub fn replicate_rng(seed: u64, sampler: SamplerId, replicate: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    let mut s = seed;
    for chunk in key.chunks_mut(8) {
        s = splitmix(s);
        chunk.copy_from_slice(&s.to_le_bytes());
    }
    let mut rng = ChaCha8Rng::from_seed(key);
    debug_assert!(replicate < (1 << 56));
    rng.set_stream(((sampler.code() as u64) << 56) | replicate);
    rng
}
