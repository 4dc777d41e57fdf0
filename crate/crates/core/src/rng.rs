//! Seeding rules shared by the generators and the genetic algorithm.
//!
//! Every random stream is a ChaCha8 generator keyed by a 64-bit master seed.
//! Independent consumers derived from the same seed use distinct ChaCha
//! stream ids, so a suite of instances (or the runs of a benchmark cell) is
//! reproducible across platforms and independent of evaluation order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

/// Generator for stream `stream` of master seed `seed`.
pub fn stream(seed: u64, stream: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
