//! Deterministic randomness.
//!
//! Every random choice comes from `ChaCha20Rng::seed_from_u64(seed)` with a
//! purpose-specific stream id set through `set_stream`. Streams never
//! overlap, so adding a new consumer cannot perturb existing outputs.
//! Verification tasks that run in parallel use stream `base + task`.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

/// Colour sampling; round `k` uses `PRUNE + k`.
pub const PRUNE: u64 = 0x100;
/// Tiling phases of the slab families.
pub const PHASE: u64 = 0x200;
/// Monte-Carlo volume estimation; chunk `k` uses `MC + k`.
pub const MC: u64 = 0x1_0000;
/// Coverage and volume-bound sampling.
pub const VERIFY: u64 = 0x2_0000;
/// Free for callers (query generation and similar).
pub const USER: u64 = 0x10_0000;

pub fn stream(seed: u64, id: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}
