//! Per-replicate seed derivation, scheme `kirchhoff-seed-v1`.
//!
//! The derived seed is the first 8 bytes, read little-endian, of
//!
//! ```text
//! SHA-256( "kirchhoff-seed-v1" || master || scenario || n || replicate )
//! ```
//!
//! where each of the four integers is encoded as 8 little-endian bytes.
//! Any change to this layout must bump the version tag.

use sha2::{Digest, Sha256};

pub const SEED_SCHEME: &str = "kirchhoff-seed-v1";

pub fn derive_seed(master: u64, scenario_id: usize, n: usize, replicate: usize) -> u64 {
    let mut hasher = Sha256::new();
    hasher.update(SEED_SCHEME.as_bytes());
    hasher.update(master.to_le_bytes());
    hasher.update((scenario_id as u64).to_le_bytes());
    hasher.update((n as u64).to_le_bytes());
    hasher.update((replicate as u64).to_le_bytes());
    let digest = hasher.finalize();
    let mut head = [0u8; 8];
    head.copy_from_slice(&digest[..8]);
    u64::from_le_bytes(head)
}
