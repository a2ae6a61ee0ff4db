//! Counter-splittable RNG derivation: (master seed, module tag, replica,
//! position) → independent ChaCha8 streams. Deterministic across runs and
//! thread schedules.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E3779B97F4A7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

fn fnv1a(tag: &str) -> u64 {
    let mut h = 0xCBF29CE484222325u64;
    for b in tag.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x100000001B3);
    }
    h
}

fn derive(words: [u64; 3]) -> ChaCha8Rng {
    let mut state = 0u64;
    for w in words {
        state ^= w;
        splitmix64(&mut state);
    }
    let mut seed = [0u8; 32];
    for i in 0..4 {
        seed[8 * i..8 * i + 8].copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    ChaCha8Rng::from_seed(seed)
}

pub fn rng_for(master: u64, tag: &str, replica: u64) -> ChaCha8Rng {
    derive([master, fnv1a(tag), replica])
}

/// Positional substream: windows of different extents agree on shared positions.
pub fn rng_for_pos(master: u64, tag: &str, replica: u64, pos: i64) -> ChaCha8Rng {
    let mut state = master;
    splitmix64(&mut state);
    state ^= fnv1a(tag);
    splitmix64(&mut state);
    state ^= replica;
    splitmix64(&mut state);
    state ^= pos as u64;
    let mut seed = [0u8; 32];
    for i in 0..4 {
        seed[8 * i..8 * i + 8].copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    ChaCha8Rng::from_seed(seed)
}
