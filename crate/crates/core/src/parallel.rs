//! Deterministic chunked Monte Carlo driver.
//!
//! A run of `samples` draws is cut into fixed chunks of [`CHUNK_SIZE`]. Chunk
//! `k` owns its own ChaCha8 stream `(seed, k)`, so the draws a chunk sees do
//! not depend on which thread runs it or how many threads exist. Chunk
//! results come back in chunk order; callers merge them sequentially.
//!
//! With the `parallel` feature (default) chunks are spread over a rayon pool
//! of `workers` threads. Without it, or with `workers == 1`, the same chunks
//! run in a plain loop.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub const CHUNK_SIZE: u64 = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Chunk {
    pub index: u64,
    /// Number of samples in this chunk (the last one may be short).
    pub len: u64,
}

impl Chunk {
    pub fn rng(&self, seed: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(self.index);
        rng
    }
}

pub fn chunks(samples: u64) -> impl Iterator<Item = Chunk> + Clone {
    let count = samples.div_ceil(CHUNK_SIZE);
    (0..count).map(move |index| Chunk {
        index,
        len: (samples - index * CHUNK_SIZE).min(CHUNK_SIZE),
    })
}

/// Runs `work` once per chunk and returns the per-chunk results in chunk order.
pub fn run_chunks<A, F>(samples: u64, seed: u64, workers: usize, work: F) -> Result<Vec<A>>
where
    A: Send,
    F: Fn(Chunk, &mut ChaCha8Rng) -> Result<A> + Sync,
{
    if workers == 0 {
        return Err(Error::Parameter("worker count must be positive".into()));
    }
    let run_one = |chunk: Chunk| {
        let mut rng = chunk.rng(seed);
        work(chunk, &mut rng)
    };

    #[cfg(feature = "parallel")]
    if workers > 1 {
        use rayon::prelude::*;
        let all: Vec<Chunk> = chunks(samples).collect();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::Resource(format!("cannot start worker pool: {e}")))?;
        return pool.install(|| all.into_par_iter().map(run_one).collect());
    }

    chunks(samples).map(run_one).collect()
}
