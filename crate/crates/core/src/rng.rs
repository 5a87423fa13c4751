//! Seeded random streams.
//!
//! Every random stream is a `ChaCha8Rng`. Independent streams are split from a
//! master seed by hashing the master seed together with a path of task
//! indices (SplitMix64 finalizer folded over the path), so a sweep gives the
//! same numbers no matter how grid points are scheduled across workers.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

/// Stream tags used inside a single sampling call.
pub(crate) mod tag {
    pub const MEASUREMENT: u64 = 0x6d65_6173;
    pub const GATE_1Q: u64 = 0x6731_7120;
    pub const GATE_2Q: u64 = 0x6732_7120;
    pub const PAULI_CHOICE: u64 = 0x7061_756c;
    pub const READOUT: u64 = 0x7265_6164;
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives a child seed from `master` and a task path.
pub fn derive_seed(master: u64, path: &[u64]) -> u64 {
    path.iter().fold(splitmix64(master), |acc, &idx| splitmix64(acc ^ splitmix64(idx)))
}

/// Opens the stream for `master` split along `path`.
pub fn stream(master: u64, path: &[u64]) -> StreamRng {
    ChaCha8Rng::seed_from_u64(derive_seed(master, path))
}

/// Stable 64-bit tag for a label (FNV-1a), used to key streams by name.
pub fn label_tag(label: &str) -> u64 {
    label.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3))
}
