use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};

use super::Representation;

/// A morphism of representations: one matrix per vertex, intertwining the
/// arrow maps.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RepMorphism {
    source: Representation,
    target: Representation,
    components: Vec<Matrix>,
}

impl fmt::Debug for RepMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<_> = self.components.iter().map(Matrix::to_rows).collect();
        write!(f, "Mor({:?} -> {:?}: {comps:?})", self.source.dims(), self.target.dims())
    }
}

impl RepMorphism {
    pub fn new(source: Representation, target: Representation, components: Vec<Matrix>) -> Result<Self> {
        source.check_compatible(&target)?;
        let n = source.quiver().vertex_count();
        if components.len() != n {
            return Err(Error::InvalidMorphism(format!("{} components for {n} vertices", components.len())));
        }
        for (v, c) in components.iter().enumerate() {
            if c.shape() != (target.dim(v), source.dim(v)) || c.field() != source.field() {
                return Err(Error::InvalidMorphism(format!(
                    "component at vertex {} has shape {}x{}, expected {}x{}",
                    v + 1,
                    c.rows(),
                    c.cols(),
                    target.dim(v),
                    source.dim(v)
                )));
            }
        }
        for (ai, a) in source.quiver().arrows().iter().enumerate() {
            let lhs = target.map(ai).mul(&components[a.source]);
            let rhs = components[a.target].mul(source.map(ai));
            if lhs != rhs {
                return Err(Error::InvalidMorphism(format!("intertwiner law fails on arrow {}", a.name)));
            }
        }
        Ok(RepMorphism {
            source,
            target,
            components,
        })
    }

    pub(crate) fn from_parts(source: Representation, target: Representation, components: Vec<Matrix>) -> Self {
        debug_assert!(
            Self::new(source.clone(), target.clone(), components.clone()).is_ok(),
            "invalid morphism assembled internally"
        );
        RepMorphism {
            source,
            target,
            components,
        }
    }

    pub fn identity(m: &Representation) -> Self {
        let components = m.dims().iter().map(|&d| Matrix::identity(m.field(), d)).collect();
        RepMorphism::from_parts(m.clone(), m.clone(), components)
    }

    pub fn zero(source: &Representation, target: &Representation) -> Self {
        let components = source
            .dims()
            .iter()
            .zip(target.dims())
            .map(|(&s, &t)| Matrix::zeros(source.field(), t, s))
            .collect();
        RepMorphism::from_parts(source.clone(), target.clone(), components)
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn components(&self) -> &[Matrix] {
        &self.components
    }

    pub fn component(&self, v: usize) -> &Matrix {
        &self.components[v]
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &RepMorphism) -> Result<RepMorphism> {
        if first.target != self.source {
            return Err(Error::EndpointMismatch("composition of non-composable morphisms".into()));
        }
        Ok(self.after(first))
    }

    /// `self ∘ first` without the endpoint check (debug-asserted).
    pub(crate) fn after(&self, first: &RepMorphism) -> RepMorphism {
        debug_assert_eq!(first.target, self.source);
        let components = self.components.iter().zip(&first.components).map(|(g, f)| g.mul(f)).collect();
        RepMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            components,
        }
    }

    pub fn add(&self, other: &RepMorphism) -> Result<RepMorphism> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::EndpointMismatch("sum of morphisms with different endpoints".into()));
        }
        let components = self.components.iter().zip(&other.components).map(|(a, b)| a.add(b)).collect();
        Ok(RepMorphism {
            components,
            ..self.clone()
        })
    }

    pub fn scale(&self, s: u32) -> RepMorphism {
        RepMorphism {
            components: self.components.iter().map(|c| c.scale(s)).collect(),
            ..self.clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Matrix::is_zero)
    }

    pub fn is_injective(&self) -> bool {
        self.components.iter().all(|c| c.rank() == c.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.components.iter().all(|c| c.rank() == c.rows())
    }

    pub fn is_iso(&self) -> bool {
        self.components.iter().all(Matrix::is_invertible)
    }

    pub fn inverse(&self) -> Option<RepMorphism> {
        let components = self.components.iter().map(Matrix::inverse).collect::<Option<Vec<_>>>()?;
        Some(RepMorphism::from_parts(self.target.clone(), self.source.clone(), components))
    }

    /// Is this endomorphism nilpotent? Vertexwise, so the exponent is the largest dimension.
    pub fn is_nilpotent(&self) -> bool {
        let n = self.source.dims().iter().copied().max().unwrap_or(0) as u32;
        self.components.iter().all(|c| c.pow(n).is_zero())
    }

    /// Components flattened row-major and concatenated vertex by vertex.
    pub fn flatten(&self) -> Vector {
        self.components.iter().flat_map(|c| c.entries().iter().copied()).collect()
    }

    pub(crate) fn unflatten(source: &Representation, target: &Representation, v: &[u32]) -> RepMorphism {
        let mut offset = 0;
        let components = (0..source.dims().len())
            .map(|i| {
                let (r, c) = (target.dim(i), source.dim(i));
                let m = Matrix::from_vec(source.field(), r, c, v[offset..offset + r * c].to_vec()).unwrap();
                offset += r * c;
                m
            })
            .collect();
        RepMorphism::from_parts(source.clone(), target.clone(), components)
    }
}

/// `Hom(M, N)` with a deterministic basis.
#[derive(Clone, Debug)]
pub struct HomSpace {
    source: Representation,
    target: Representation,
    basis: Vec<RepMorphism>,
    /// Columns are the flattened basis vectors.
    basis_matrix: Matrix,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[RepMorphism] {
        &self.basis
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    /// Coordinates of `f` in the basis.
    pub fn coordinates(&self, f: &RepMorphism) -> Result<Vector> {
        if f.source != self.source || f.target != self.target {
            return Err(Error::EndpointMismatch("morphism does not live in this Hom space".into()));
        }
        self.basis_matrix
            .solve(&f.flatten())?
            .ok_or_else(|| Error::InvariantViolated("morphism outside the Hom space".into()))
    }

    /// `Σ coeffs[k] · basis[k]`.
    pub fn element(&self, coeffs: &[u32]) -> RepMorphism {
        let v = self.basis_matrix.mul_vec(coeffs);
        RepMorphism::unflatten(&self.source, &self.target, &v)
    }

    /// Number of elements, `p^dim`, saturating.
    pub fn cardinality(&self) -> u128 {
        (self.source.field().modulus() as u128).saturating_pow(self.dim() as u32)
    }
}

/// Solves the intertwiner equations `N_α · h_s − h_t · M_α = 0`.
pub fn hom_space(m: &Representation, n: &Representation) -> Result<HomSpace> {
    m.check_compatible(n)?;
    let f = m.field();
    let nv = m.dims().len();
    let mut offsets = Vec::with_capacity(nv);
    let mut unknowns = 0;
    for v in 0..nv {
        offsets.push(unknowns);
        unknowns += n.dim(v) * m.dim(v);
    }
    let arrows = m.quiver().arrows();
    let equations: usize = arrows.iter().map(|a| n.dim(a.target) * m.dim(a.source)).sum();
    let mut system = Matrix::zeros(f, equations, unknowns);
    let mut row = 0;
    for (ai, a) in arrows.iter().enumerate() {
        let (i, j) = (a.source, a.target);
        let (na, ma) = (n.map(ai), m.map(ai));
        for r in 0..n.dim(j) {
            for c in 0..m.dim(i) {
                // Σ_k N_α[r,k] h_i[k,c]
                for k in 0..n.dim(i) {
                    let col = offsets[i] + k * m.dim(i) + c;
                    let v = f.add(system.get(row, col), na.get(r, k));
                    system.set(row, col, v);
                }
                // − Σ_k h_j[r,k] M_α[k,c]
                for k in 0..m.dim(j) {
                    let col = offsets[j] + r * m.dim(j) + k;
                    let v = f.sub(system.get(row, col), ma.get(k, c));
                    system.set(row, col, v);
                }
                row += 1;
            }
        }
    }
    let kernel = system.kernel_basis();
    let basis_matrix = Matrix::from_columns(f, unknowns, &kernel);
    let basis = kernel.iter().map(|v| RepMorphism::unflatten(m, n, v)).collect();
    Ok(HomSpace {
        source: m.clone(),
        target: n.clone(),
        basis,
        basis_matrix,
    })
}

/// `M ⊕ N` with its canonical injections and projections.
#[derive(Clone, Debug)]
pub struct Biproduct {
    pub sum: Representation,
    pub inj: [RepMorphism; 2],
    pub proj: [RepMorphism; 2],
}

pub fn direct_sum(m: &Representation, n: &Representation) -> Result<Biproduct> {
    m.check_compatible(n)?;
    let f = m.field();
    let dims: Vec<usize> = m.dims().iter().zip(n.dims()).map(|(a, b)| a + b).collect();
    let maps = m.maps().iter().zip(n.maps()).map(|(a, b)| a.block_diag(b)).collect();
    let sum = Representation::from_parts(m.quiver().clone(), f, dims, maps);
    let blocks = |first: bool, inject: bool| -> Vec<Matrix> {
        (0..m.dims().len())
            .map(|v| {
                let (dm, dn) = (m.dim(v), n.dim(v));
                let part = if first {
                    Matrix::identity(f, dm).vstack(&Matrix::zeros(f, dn, dm))
                } else {
                    Matrix::zeros(f, dm, dn).vstack(&Matrix::identity(f, dn))
                };
                if inject {
                    part
                } else {
                    part.transpose()
                }
            })
            .collect()
    };
    Ok(Biproduct {
        inj: [
            RepMorphism::from_parts(m.clone(), sum.clone(), blocks(true, true)),
            RepMorphism::from_parts(n.clone(), sum.clone(), blocks(false, true)),
        ],
        proj: [
            RepMorphism::from_parts(sum.clone(), m.clone(), blocks(true, false)),
            RepMorphism::from_parts(sum.clone(), n.clone(), blocks(false, false)),
        ],
        sum,
    })
}

/// The subrepresentation spanned vertexwise by the columns of `bases`
/// (which must be linearly independent and arrow-closed) and its inclusion.
pub fn restrict_to(m: &Representation, bases: &[Matrix]) -> Result<(Representation, RepMorphism)> {
    let f = m.field();
    let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
    let mut maps = Vec::with_capacity(m.maps().len());
    for (ai, a) in m.quiver().arrows().iter().enumerate() {
        let image = m.map(ai).mul(&bases[a.source]);
        let restricted = bases[a.target]
            .solve_matrix(&image)?
            .ok_or_else(|| Error::InvalidRepresentation(format!("subspace not closed under arrow {}", a.name)))?;
        maps.push(restricted);
    }
    let sub = Representation::new(m.quiver().clone(), f, dims, maps)?;
    let incl = RepMorphism::new(sub.clone(), m.clone(), bases.to_vec())?;
    Ok((sub, incl))
}

/// The quotient of `m` by the arrow-closed subspaces spanned by `bases`,
/// with the canonical projection.
pub fn quotient_by(m: &Representation, bases: &[Matrix]) -> Result<(Representation, RepMorphism)> {
    let cokernels: Vec<_> = bases.iter().map(Matrix::cokernel).collect();
    let dims: Vec<usize> = cokernels.iter().map(|c| c.dim()).collect();
    let maps = m
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            cokernels[a.target]
                .projection
                .mul(m.map(ai))
                .mul(&cokernels[a.source].section())
        })
        .collect();
    let quot = Representation::new(m.quiver().clone(), m.field(), dims, maps)?;
    let proj = RepMorphism::new(m.clone(), quot.clone(), cokernels.into_iter().map(|c| c.projection).collect())?;
    Ok((quot, proj))
}

pub fn kernel_sub(f: &RepMorphism) -> Result<(Representation, RepMorphism)> {
    let fld = f.source.field();
    let bases: Vec<Matrix> = f
        .components
        .iter()
        .map(|c| Matrix::from_columns(fld, c.cols(), &c.kernel_basis()))
        .collect();
    restrict_to(&f.source, &bases)
}

pub fn image_sub(f: &RepMorphism) -> Result<(Representation, RepMorphism)> {
    let bases: Vec<Matrix> = f.components.iter().map(Matrix::column_basis).collect();
    restrict_to(&f.target, &bases)
}

pub fn cokernel_quot(f: &RepMorphism) -> Result<(Representation, RepMorphism)> {
    quotient_by(&f.target, &f.components)
}
