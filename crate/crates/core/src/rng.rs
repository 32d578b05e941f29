//! Seeded random streams.
//!
//! Every random consumer draws from a ChaCha8 stream addressed by `(seed, stream)`.
//! ChaCha is counter based, so distinct stream ids give independent sequences and
//! the same pair always reproduces the same draws regardless of scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

pub fn stream(seed: u64, stream: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Stream ids reserved for distinct purposes within one run; the realization index is
/// added on top, so consumers stay disjoint as long as realizations < `STRIDE`.
pub mod purpose {
    pub const STRIDE: u64 = 1 << 40;
    pub const INITIAL_POSITIONS: u64 = 0;
    pub const GRW: u64 = STRIDE;
    pub const BATH: u64 = 2 * STRIDE;
    pub const BORN_SAMPLE: u64 = 3 * STRIDE;
    pub const WIENER: u64 = 4 * STRIDE;
    pub const COLLISIONS: u64 = 5 * STRIDE;
    pub const STATISTICS: u64 = 6 * STRIDE;
}
