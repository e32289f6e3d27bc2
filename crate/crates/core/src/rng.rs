//! Seeded randomness.
//!
//! Every random choice in the crate is drawn from `ChaCha8Rng` seeded through
//! [`stream`]. Stages derive their own seeds with [`subseed`] so that a stage
//! can be rerun in isolation: the sub-seed is the first eight bytes
//! (little-endian) of SHA-256 over the parent seed's little-endian bytes
//! followed by the stage name.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

pub type Rng = ChaCha8Rng;

pub fn stream(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn subseed(seed: u64, stage: &str) -> u64 {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(stage.as_bytes());
    let digest = h.finalize();
    let mut out = [0u8; 8];
    out.copy_from_slice(&digest[..8]);
    u64::from_le_bytes(out)
}
