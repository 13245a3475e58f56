//! Parallel execution helpers. With the `parallel` feature the maps run on
//! rayon; without it they degrade to plain iterators with identical results
//! (order is always restored, so outputs are byte-identical either way).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Derive a ChaCha8 RNG from the run seed and a few domain-separation tags
/// (callers mix in their inputs). Derivation depends only on the data, never
/// on scheduling, so parallel and sequential runs draw identical streams.
pub(crate) fn rng_for(seed: u64, tags: &[u64]) -> ChaCha8Rng {
    let mut h = 0xcbf29ce484222325u64 ^ seed;
    for &t in tags {
        for byte in t.to_le_bytes() {
            h ^= byte as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    }
    ChaCha8Rng::seed_from_u64(h)
}

#[cfg(feature = "parallel")]
mod imp {
    use rayon::prelude::*;

    pub(crate) fn map_collect<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
    where
        T: Send,
        U: Send,
        F: Fn(T) -> U + Send + Sync,
    {
        items.into_par_iter().map(f).collect()
    }

    pub(crate) fn try_map_collect<T, U, E, F>(items: Vec<T>, f: F) -> Result<Vec<U>, E>
    where
        T: Send,
        U: Send,
        E: Send,
        F: Fn(T) -> Result<U, E> + Send + Sync,
    {
        items.into_par_iter().map(f).collect()
    }

    pub(crate) const BACKEND: &str = "rayon";
}

#[cfg(not(feature = "parallel"))]
mod imp {
    pub(crate) fn map_collect<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
    where
        T: Send,
        U: Send,
        F: Fn(T) -> U + Send + Sync,
    {
        items.into_iter().map(f).collect()
    }

    pub(crate) fn try_map_collect<T, U, E, F>(items: Vec<T>, f: F) -> Result<Vec<U>, E>
    where
        T: Send,
        U: Send,
        E: Send,
        F: Fn(T) -> Result<U, E> + Send + Sync,
    {
        items.into_iter().map(f).collect()
    }

    pub(crate) const BACKEND: &str = "sequential";
}

pub(crate) use imp::{map_collect, try_map_collect};

/// Name of the active execution backend ("rayon" or "sequential").
pub fn backend() -> &'static str {
    imp::BACKEND
}
