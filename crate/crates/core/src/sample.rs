//! Seeded random elements for identity sampling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ncalg::{Algebra, Gen, NcPoly, Word};
use crate::scalar::Scalar;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// A random word over `gens` of length at most `max_len`.
    pub fn word(&mut self, gens: &[Gen], max_len: usize) -> Word {
        if gens.is_empty() {
            return Vec::new();
        }
        let len = self.rng.gen_range(0..=max_len);
        (0..len).map(|_| gens[self.rng.gen_range(0..gens.len())]).collect()
    }

    fn coeff(&mut self) -> Scalar {
        let mut c = 0;
        while c == 0 {
            c = self.rng.gen_range(-3..=3);
        }
        Scalar::from_int(c)
    }

    /// A random combination of up to `terms` words, reduced in `alg`.
    pub fn element(&mut self, alg: &Algebra, gens: &[Gen], max_len: usize, terms: usize) -> NcPoly {
        let mut p = NcPoly::zero();
        let n = self.rng.gen_range(1..=terms.max(1));
        for _ in 0..n {
            let w = self.word(gens, max_len);
            let c = self.coeff();
            p.add_term(w, c);
        }
        alg.nf(&p)
    }

    /// A random element all of whose words have the same degree.
    pub fn homogeneous(&mut self, alg: &Algebra, gens: &[Gen], max_len: usize, terms: usize) -> NcPoly {
        let p = self.element(alg, gens, max_len, terms);
        let parts = alg.homogeneous_parts(&p);
        if parts.is_empty() {
            return p;
        }
        let keys: Vec<i32> = parts.keys().copied().collect();
        let k = keys[self.rng.gen_range(0..keys.len())];
        parts[&k].clone()
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }
}
