#![allow(dead_code)]

use std::sync::Arc;

use filtra_core::linalg::{Matrix, PrimeField};
use filtra_core::quiverrep::{enumerate_reps, Quiver, Representation};
use filtra_core::search::Budget;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Desk {
    pub quiver: Arc<Quiver>,
    pub field: PrimeField,
}

impl Desk {
    pub fn new(n: usize, p: u32) -> Self {
        Desk {
            quiver: Arc::new(Quiver::linear_a(n)),
            field: PrimeField::new(p).unwrap(),
        }
    }

    pub fn s(&self, v: usize) -> Representation {
        Representation::simple(self.quiver.clone(), self.field, v)
    }

    pub fn p(&self, v: usize) -> Representation {
        Representation::projective(self.quiver.clone(), self.field, v)
    }

    pub fn enumerate(&self, max: &[usize]) -> Vec<Representation> {
        enumerate_reps(&self.quiver, self.field, max, &mut Budget::unlimited()).unwrap()
    }

    pub fn random(&self, seed: u64, max_dim: usize) -> Representation {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = self.field.modulus();
        let dims: Vec<usize> = (0..self.quiver.vertex_count()).map(|_| rng.gen_range(0..=max_dim)).collect();
        let maps = self
            .quiver
            .arrows()
            .iter()
            .map(|a| {
                let (r, c) = (dims[a.target], dims[a.source]);
                Matrix::from_vec(self.field, r, c, (0..r * c).map(|_| rng.gen_range(0..p)).collect()).unwrap()
            })
            .collect();
        Representation::new(self.quiver.clone(), self.field, dims, maps).unwrap()
    }
}

pub fn coords(seed: u64, p: u32, n: usize) -> Vec<u32> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.gen_range(0..p)).collect()
}
