//! Seeded generator shared by every randomized routine.
//!
//! The state is initialised with one splitmix64 step applied to the seed and
//! advanced with xorshift64* (shifts 12, 25, 27; multiplier
//! 0x2545F4914F6CDD1D). A zero state is replaced by the splitmix64 increment.

use crate::ring::{Ring, Scalar};

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Clone, Debug)]
pub struct Rng {
    state: u64,
}

fn splitmix64(seed: u64) -> u64 {
    let mut z = seed.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl Rng {
    pub fn new(seed: u64) -> Rng {
        let s = splitmix64(seed);
        Rng {
            state: if s == 0 { GOLDEN } else { s },
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    /// Uniform-ish value in `0..n` by reduction; `n > 0`.
    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    /// A ring element: a residue over 𝔽_p, a small integer in `[-4, 4]` over ℚ.
    pub fn scalar(&mut self, ring: Ring) -> Scalar {
        match ring {
            Ring::PrimeField(p) => ring.from_i64(self.below(p) as i64),
            Ring::Rational => ring.from_i64(self.below(9) as i64 - 4),
        }
    }

    pub fn vector(&mut self, ring: Ring, n: usize) -> Vec<Scalar> {
        (0..n).map(|_| self.scalar(ring)).collect()
    }

    /// Derives an independent stream, e.g. one per property in a suite.
    pub fn fork(&mut self) -> Rng {
        Rng::new(self.next_u64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frozen_vectors() {
        let mut r = Rng::new(0);
        let got: Vec<u64> = (0..3).map(|_| r.next_u64()).collect();
        assert_eq!(got, FROZEN_SEED0);
        let mut r = Rng::new(42);
        assert_eq!(r.next_u64(), FROZEN_SEED42);
    }

    // computed independently from the documented recurrence
    const FROZEN_SEED0: [u64; 3] = [8916199331640804048, 16032783972208265725, 12954103179475586193];
    const FROZEN_SEED42: u64 = 3580622183945639842;

    #[test]
    fn reproducible() {
        let ring = Ring::PrimeField(5);
        let a = Rng::new(7).vector(ring, 20);
        let b = Rng::new(7).vector(ring, 20);
        assert_eq!(a, b);
        assert!(Rng::new(7).vector(Ring::Rational, 50).iter().all(|s| {
            let v = s.to_i64().unwrap();
            (-4..=4).contains(&v)
        }));
    }
}
