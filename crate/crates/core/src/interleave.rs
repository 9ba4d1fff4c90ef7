//! Seeded random interleaver.
//!
//! `apply` maps code order to channel order, `out[i] = in[forward[i]]`;
//! `invert` undoes it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    forward: Vec<u32>,
    inverse: Vec<u32>,
    seed: u64,
}

impl Permutation {
    /// Fisher-Yates shuffle driven by ChaCha8 keyed with `seed`.
    pub fn random(seed: u64, len: usize) -> Result<Self> {
        if len == 0 || len > u32::MAX as usize {
            return Err(Error::Domain(format!("interleaver length {len} out of range")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut forward: Vec<u32> = (0..len as u32).collect();
        for i in (1..len).rev() {
            let j = rng.random_range(0..=i as u64) as usize;
            forward.swap(i, j);
        }
        Ok(Self::from_forward(forward, seed))
    }

    pub fn identity(len: usize) -> Self {
        Self::from_forward((0..len as u32).collect(), 0)
    }

    fn from_forward(forward: Vec<u32>, seed: u64) -> Self {
        let mut inverse = vec![0u32; forward.len()];
        for (i, &f) in forward.iter().enumerate() {
            inverse[f as usize] = i as u32;
        }
        Self { forward, inverse, seed }
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Source index of output position `i`.
    pub fn forward(&self, i: usize) -> usize {
        self.forward[i] as usize
    }

    /// Output position that receives input index `j`.
    pub fn inverse(&self, j: usize) -> usize {
        self.inverse[j] as usize
    }

    fn check(&self, len: usize) -> Result<()> {
        if len != self.len() {
            return Err(Error::Dimension(format!(
                "vector of length {len} for an interleaver of length {}",
                self.len()
            )));
        }
        Ok(())
    }

    pub fn apply<T: Copy>(&self, input: &[T]) -> Result<Vec<T>> {
        self.check(input.len())?;
        Ok(self.forward.iter().map(|&f| input[f as usize]).collect())
    }

    pub fn invert<T: Copy>(&self, input: &[T]) -> Result<Vec<T>> {
        self.check(input.len())?;
        Ok(self.inverse.iter().map(|&g| input[g as usize]).collect())
    }
}
