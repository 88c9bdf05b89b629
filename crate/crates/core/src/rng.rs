//! Counter-based random substreams.
//!
//! Every realization of every protocol draws from its own ChaCha stream keyed
//! by `(seed, domain)` and selected by `index`, so realization `i` is
//! reproducible without replaying realizations `0..i`.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

pub type StreamRng = ChaCha12Rng;

/// Domain tags separating independent uses of one user seed.
pub mod domain {
    pub const SEQPT_EXPERIMENT: u64 = 0x5345_5150_5400_0001;
    pub const SEQPT_PAIRS: u64 = 0x5345_5150_5400_0002;
    pub const LOCAL_TWIRL: u64 = 0x4c4f_4341_4c00_0001;
    pub const HAAR: u64 = 0x4841_4152_0000_0001;
    pub const CLIFFORD_PAIRS: u64 = 0x434c_4946_0000_0001;
    pub const POSITIVITY: u64 = 0x504f_5349_0000_0001;
    pub const GENERIC: u64 = 0x4745_4e45_0000_0001;
}

pub fn substream(seed: u64, domain: u64, index: u64) -> StreamRng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&domain.to_le_bytes());
    let mut rng = ChaCha12Rng::from_seed(key);
    rng.set_stream(index);
    rng
}
