//! Θ-filtered representations of acyclic quivers over prime fields: Ext
//! groups, conflations, filtration calculus, membership decision and
//! approximation triangles.

pub mod approx;
pub mod conflation;
pub mod error;
pub mod filtration;
pub mod linalg;
pub mod quiverrep;
pub mod search;
pub mod suite;

pub use conflation::{Conflation, ExtClass, ExtSpace};
pub use error::{Error, Result};
pub use linalg::{Matrix, PrimeField, Vector};
pub use quiverrep::{Quiver, RepMorphism, Representation, ThetaFamily};
pub use search::Budget;
pub use approx::{ApproxResult, ApproxSide, PerpSide};
pub use filtration::{ClassExpr, Filtration, GroupedFiltration};
