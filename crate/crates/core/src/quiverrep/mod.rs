//! Objects of the category: representations of a finite acyclic quiver over
//! a prime field, together with their morphisms, decompositions and
//! desk-scale enumeration.

mod enumerate;
mod iso;
mod morphism;
mod theta;

use std::fmt;
use std::sync::Arc;

use petgraph::graphmap::DiGraphMap;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, PrimeField};

pub use enumerate::{enumerate_reps, enumerate_subreps, subspaces};
pub use iso::{
    decompose, find_split, is_indecomposable, is_isomorphic, krull_schmidt, IsoClassMemo, IsoKey,
    Summand,
};
pub use morphism::{
    cokernel_quot, direct_sum, hom_space, image_sub, kernel_sub, quotient_by, restrict_to, Biproduct,
    HomSpace, RepMorphism,
};
pub use theta::ThetaFamily;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver without oriented cycles. Vertices are `0..vertex_count`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<Arrow>,
    paths: Vec<Vec<usize>>,
}

impl Quiver {
    pub fn new<S: Into<String>>(vertex_count: usize, arrows: Vec<(S, usize, usize)>) -> Result<Self> {
        let arrows: Vec<Arrow> = arrows
            .into_iter()
            .map(|(name, source, target)| Arrow {
                name: name.into(),
                source,
                target,
            })
            .collect();
        let mut graph = DiGraphMap::<usize, ()>::new();
        for v in 0..vertex_count {
            graph.add_node(v);
        }
        for (i, a) in arrows.iter().enumerate() {
            if a.source >= vertex_count || a.target >= vertex_count {
                return Err(Error::InvalidQuiver(format!(
                    "arrow {} joins a vertex outside 0..{vertex_count}",
                    a.name
                )));
            }
            if arrows[..i].iter().any(|b| b.name == a.name) {
                return Err(Error::InvalidQuiver(format!("duplicate arrow name {}", a.name)));
            }
            if a.source == a.target {
                return Err(Error::InvalidQuiver("quiver must be acyclic".into()));
            }
            graph.add_edge(a.source, a.target, ());
        }
        if petgraph::algo::is_cyclic_directed(&graph) {
            return Err(Error::InvalidQuiver("quiver must be acyclic".into()));
        }
        let paths = all_paths(vertex_count, &arrows);
        Ok(Quiver {
            vertex_count,
            arrows,
            paths,
        })
    }

    /// Linearly oriented `A_n`: `1 → 2 → … → n`, arrows named `a1, a2, …`.
    pub fn linear_a(n: usize) -> Self {
        let arrows = (1..n).map(|i| (format!("a{i}"), i - 1, i)).collect();
        Quiver::new(n, arrows).expect("A_n is acyclic")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// All paths of positive length as arrow sequences (first arrow first),
    /// ordered by length, then lexicographically.
    pub fn paths(&self) -> &[Vec<usize>] {
        &self.paths
    }
}

fn all_paths(n: usize, arrows: &[Arrow]) -> Vec<Vec<usize>> {
    let mut layer: Vec<Vec<usize>> = (0..arrows.len()).map(|i| vec![i]).collect();
    let mut out = Vec::new();
    // Acyclic, so no path is longer than n - 1 arrows.
    for _ in 0..n {
        if layer.is_empty() {
            break;
        }
        out.extend(layer.iter().cloned());
        let mut next = Vec::new();
        for path in &layer {
            let end = arrows[*path.last().unwrap()].target;
            for (i, a) in arrows.iter().enumerate() {
                if a.source == end {
                    let mut p = path.clone();
                    p.push(i);
                    next.push(p);
                }
            }
        }
        layer = next;
    }
    out
}

/// A representation: one vector space `F_p^{dim[v]}` per vertex and one
/// matrix of shape `dim[target] × dim[source]` per arrow.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Representation {
    quiver: Arc<Quiver>,
    field: PrimeField,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rep{:?}", self.dims)?;
        let maps: Vec<_> = self.maps.iter().map(Matrix::to_rows).collect();
        write!(f, "{maps:?}")
    }
}

impl Representation {
    pub fn new(quiver: Arc<Quiver>, field: PrimeField, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        if dims.len() != quiver.vertex_count() {
            return Err(Error::InvalidRepresentation(format!(
                "{} dimensions given for {} vertices",
                dims.len(),
                quiver.vertex_count()
            )));
        }
        if maps.len() != quiver.arrows().len() {
            return Err(Error::InvalidRepresentation(format!(
                "{} matrices given for {} arrows",
                maps.len(),
                quiver.arrows().len()
            )));
        }
        for (a, m) in quiver.arrows().iter().zip(&maps) {
            if m.field() != field {
                return Err(Error::InvalidRepresentation(format!("matrix for {} over the wrong field", a.name)));
            }
            let want = (dims[a.target], dims[a.source]);
            if m.shape() != want {
                return Err(Error::InvalidRepresentation(format!(
                    "matrix for arrow {} has shape {}x{}, expected {}x{}",
                    a.name,
                    m.rows(),
                    m.cols(),
                    want.0,
                    want.1
                )));
            }
        }
        Ok(Representation {
            quiver,
            field,
            dims,
            maps,
        })
    }

    pub(crate) fn from_parts(quiver: Arc<Quiver>, field: PrimeField, dims: Vec<usize>, maps: Vec<Matrix>) -> Self {
        debug_assert!(Self::new(quiver.clone(), field, dims.clone(), maps.clone()).is_ok());
        Representation {
            quiver,
            field,
            dims,
            maps,
        }
    }

    pub fn zero(quiver: Arc<Quiver>, field: PrimeField) -> Self {
        let dims = vec![0; quiver.vertex_count()];
        let maps = quiver.arrows().iter().map(|_| Matrix::zeros(field, 0, 0)).collect();
        Representation {
            quiver,
            field,
            dims,
            maps,
        }
    }

    /// The simple representation at vertex `v`.
    pub fn simple(quiver: Arc<Quiver>, field: PrimeField, v: usize) -> Self {
        let mut dims = vec![0; quiver.vertex_count()];
        dims[v] = 1;
        Self::with_zero_maps(quiver, field, dims)
    }

    pub fn with_zero_maps(quiver: Arc<Quiver>, field: PrimeField, dims: Vec<usize>) -> Self {
        let maps = quiver
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(field, dims[a.target], dims[a.source]))
            .collect();
        Representation {
            quiver,
            field,
            dims,
            maps,
        }
    }

    /// The indecomposable projective at `v`: basis at `w` is the set of
    /// paths `v ⇝ w` (the trivial path included when `w = v`).
    pub fn projective(quiver: Arc<Quiver>, field: PrimeField, v: usize) -> Self {
        let mut basis: Vec<Vec<Vec<usize>>> = vec![Vec::new(); quiver.vertex_count()];
        basis[v].push(Vec::new());
        for path in quiver.paths() {
            if quiver.arrows()[path[0]].source == v {
                let end = quiver.arrows()[*path.last().unwrap()].target;
                basis[end].push(path.clone());
            }
        }
        let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
        let maps = quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let mut m = Matrix::zeros(field, dims[a.target], dims[a.source]);
                for (c, path) in basis[a.source].iter().enumerate() {
                    let mut ext = path.clone();
                    ext.push(ai);
                    let r = basis[a.target].iter().position(|q| *q == ext).unwrap();
                    m.set(r, c, 1);
                }
                m
            })
            .collect();
        Representation::from_parts(quiver, field, dims, maps)
    }

    /// The indecomposable injective at `v`: basis at `w` is the set of paths `w ⇝ v`.
    pub fn injective(quiver: Arc<Quiver>, field: PrimeField, v: usize) -> Self {
        let mut basis: Vec<Vec<Vec<usize>>> = vec![Vec::new(); quiver.vertex_count()];
        basis[v].push(Vec::new());
        for path in quiver.paths() {
            if quiver.arrows()[*path.last().unwrap()].target == v {
                let start = quiver.arrows()[path[0]].source;
                basis[start].push(path.clone());
            }
        }
        let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
        let maps = quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let mut m = Matrix::zeros(field, dims[a.target], dims[a.source]);
                for (c, path) in basis[a.source].iter().enumerate() {
                    if path.first() == Some(&ai) {
                        let rest = path[1..].to_vec();
                        let r = basis[a.target].iter().position(|q| *q == rest).unwrap();
                        m.set(r, c, 1);
                    }
                }
                m
            })
            .collect();
        Representation::from_parts(quiver, field, dims, maps)
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn map(&self, arrow: usize) -> &Matrix {
        &self.maps[arrow]
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// Same quiver and field.
    pub fn compatible(&self, other: &Representation) -> bool {
        self.field == other.field && (Arc::ptr_eq(&self.quiver, &other.quiver) || self.quiver == other.quiver)
    }

    pub(crate) fn check_compatible(&self, other: &Representation) -> Result<()> {
        if self.compatible(other) {
            Ok(())
        } else {
            Err(Error::QuiverMismatch)
        }
    }

    /// Composite map along a path (first arrow applied first).
    pub fn path_map(&self, path: &[usize]) -> Matrix {
        let first = &self.quiver.arrows()[path[0]];
        let mut m = Matrix::identity(self.field, self.dims[first.source]);
        for &a in path {
            m = self.maps[a].mul(&m);
        }
        m
    }

    /// `M^k` as a block-diagonal sum of `k` copies.
    pub fn power(&self, k: usize) -> Representation {
        let dims = self.dims.iter().map(|d| d * k).collect();
        let maps = self
            .maps
            .iter()
            .map(|m| {
                let mut out = Matrix::zeros(self.field, m.rows() * k, m.cols() * k);
                for i in 0..k {
                    out.paste(i * m.rows(), i * m.cols(), m);
                }
                out
            })
            .collect();
        Representation::from_parts(self.quiver.clone(), self.field, dims, maps)
    }

    /// Conjugates by vertexwise invertible matrices: `M'_α = P_t · M_α · P_s⁻¹`.
    /// Returns the new representation and the isomorphism `M → M'` (components `P_v`).
    pub fn transport(&self, changes: &[Matrix]) -> Result<(Representation, RepMorphism)> {
        let mut maps = Vec::with_capacity(self.maps.len());
        for (a, m) in self.quiver.arrows().iter().zip(&self.maps) {
            let inv = changes[a.source]
                .inverse()
                .ok_or_else(|| Error::InvalidMorphism("change of basis is not invertible".into()))?;
            maps.push(changes[a.target].mul(m).mul(&inv));
        }
        let new = Representation::new(self.quiver.clone(), self.field, self.dims.clone(), maps)?;
        let iso = RepMorphism::new(self.clone(), new.clone(), changes.to_vec())?;
        Ok((new, iso))
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// `A₂ = 1 → 2` over `F_p` with `S1`, `S2`, `P1`.
    pub struct A2 {
        pub quiver: Arc<Quiver>,
        pub field: PrimeField,
        pub s1: Representation,
        pub s2: Representation,
        pub p1: Representation,
    }

    pub fn a2(p: u32) -> A2 {
        let quiver = Arc::new(Quiver::linear_a(2));
        let field = PrimeField::new(p).unwrap();
        A2 {
            s1: Representation::simple(quiver.clone(), field, 0),
            s2: Representation::simple(quiver.clone(), field, 1),
            p1: Representation::projective(quiver.clone(), field, 0),
            quiver,
            field,
        }
    }

    pub fn rep(q: &A2, dims: [usize; 2], entries: &[u32]) -> Representation {
        let m = Matrix::from_vec(q.field, dims[1], dims[0], entries.to_vec()).unwrap();
        Representation::new(q.quiver.clone(), q.field, dims.to_vec(), vec![m]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn rejects_cycles_and_duplicates() {
        let err = Quiver::new(2, vec![("a", 0, 1), ("b", 1, 0)]).unwrap_err();
        assert_eq!(err, Error::InvalidQuiver("quiver must be acyclic".into()));
        assert!(Quiver::new(1, vec![("l", 0, 0)]).is_err());
        assert!(Quiver::new(2, vec![("a", 0, 1), ("a", 0, 1)]).is_err());
        assert!(Quiver::new(2, vec![("a", 0, 1), ("b", 0, 1)]).is_ok());
    }

    #[test]
    fn paths_of_a3() {
        let q = Quiver::linear_a(3);
        assert_eq!(q.paths(), &[vec![0], vec![1], vec![0, 1]]);
    }

    #[test]
    fn projectives_and_injectives_of_a3() {
        let q = Arc::new(Quiver::linear_a(3));
        let f = PrimeField::new(2).unwrap();
        let p1 = Representation::projective(q.clone(), f, 0);
        assert_eq!(p1.dims(), &[1, 1, 1]);
        assert_eq!(p1.path_map(&[0, 1]).rank(), 1);
        assert_eq!(Representation::projective(q.clone(), f, 2), Representation::simple(q.clone(), f, 2));
        let i3 = Representation::injective(q.clone(), f, 2);
        assert_eq!(i3.dims(), &[1, 1, 1]);
        assert_eq!(Representation::injective(q.clone(), f, 0), Representation::simple(q, f, 0));
    }

    #[test]
    fn shape_validation() {
        let a = a2(2);
        let bad = Matrix::zeros(a.field, 1, 2);
        assert!(Representation::new(a.quiver.clone(), a.field, vec![1, 1], vec![bad]).is_err());
        assert_eq!(a.p1.map(0), &Matrix::identity(a.field, 1));
        assert!(Representation::zero(a.quiver.clone(), a.field).is_zero());
    }
}
