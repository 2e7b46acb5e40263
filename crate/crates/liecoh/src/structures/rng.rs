//! Counter-based deterministic sampling streams.
//!
//! Every random draw in the verdict engines is keyed by
//! `(seed, algebra hash, domain tag, trial, coordinate)`, so serial and
//! parallel evaluation orders produce identical bits. SplitMix64 is used both
//! as the key mixer and as the generator.

pub(crate) const DOMAIN_SYMPLECTIC: u64 = 1;
pub(crate) const DOMAIN_FROBENIUS: u64 = 2;
pub(crate) const DOMAIN_AFFINE_DERIVATION: u64 = 3;
pub(crate) const DOMAIN_AFFINE_COADJOINT: u64 = 4;
pub(crate) const DOMAIN_CNLA: u64 = 5;

fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub(crate) struct Stream {
    state: u64,
}

impl Stream {
    /// Derive a stream from key components; each component is absorbed
    /// through one mixing round.
    pub fn keyed(parts: &[u64]) -> Stream {
        let mut state: u64 = 0x243f_6a88_85a3_08d3;
        for &p in parts {
            state ^= p;
            splitmix(&mut state);
            state = state.rotate_left(17) ^ p.wrapping_mul(0x9e37_79b9_7f4a_7c15);
        }
        Stream { state }
    }

    pub fn next_u64(&mut self) -> u64 {
        splitmix(&mut self.state)
    }

    /// Uniform draw from `[-r, r]` by rejection sampling.
    pub fn int_symmetric(&mut self, r: u64) -> i64 {
        let range = 2 * r + 1;
        let limit = u64::MAX - u64::MAX % range;
        loop {
            let x = self.next_u64();
            if x < limit {
                let v = x % range;
                return v as i64 - r as i64;
            }
        }
    }
}

/// One sampled integer for a fully specified coordinate of a trial.
pub(crate) fn sample_coordinate(
    seed: u64,
    algebra_hash: u64,
    domain: u64,
    trial: u64,
    coordinate: u64,
    radius: u64,
) -> i64 {
    Stream::keyed(&[seed, algebra_hash, domain, trial, coordinate]).int_symmetric(radius)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_keyed() {
        let a = sample_coordinate(0, 42, DOMAIN_SYMPLECTIC, 0, 0, 100);
        let b = sample_coordinate(0, 42, DOMAIN_SYMPLECTIC, 0, 0, 100);
        assert_eq!(a, b);
        let c = sample_coordinate(0, 42, DOMAIN_FROBENIUS, 0, 0, 100);
        let d = sample_coordinate(1, 42, DOMAIN_SYMPLECTIC, 0, 0, 100);
        // Different domains or seeds should decorrelate; equality here would
        // be a (vanishingly unlikely) collision for these fixed keys.
        assert!(a != c || a != d);
    }

    #[test]
    fn symmetric_draws_stay_in_range() {
        let mut s = Stream::keyed(&[7, 9]);
        for _ in 0..1000 {
            let v = s.int_symmetric(5);
            assert!((-5..=5).contains(&v));
        }
    }
}
