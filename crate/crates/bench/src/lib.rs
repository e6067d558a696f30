//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use filtra_core::quiverrep::{Quiver, Representation, ThetaFamily};
use filtra_core::PrimeField;

pub struct LinearA {
    pub quiver: Arc<Quiver>,
    pub field: PrimeField,
}

impl LinearA {
    pub fn new(n: usize, p: u32) -> Self {
        LinearA {
            quiver: Arc::new(Quiver::linear_a(n)),
            field: PrimeField::new(p).expect("prime modulus"),
        }
    }

    pub fn simple(&self, v: usize) -> Representation {
        Representation::simple(self.quiver.clone(), self.field, v)
    }

    pub fn projective(&self, v: usize) -> Representation {
        Representation::projective(self.quiver.clone(), self.field, v)
    }

    /// The family of simples in vertex order.
    pub fn simples(&self) -> ThetaFamily {
        ThetaFamily::new((0..self.quiver.vertex_count()).map(|v| self.simple(v)).collect()).expect("simples are ordered")
    }
}
