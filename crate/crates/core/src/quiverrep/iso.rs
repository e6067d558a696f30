//! Isomorphism testing, indecomposability and Krull–Schmidt decomposition.
//!
//! Endomorphism algebras are searched exhaustively while they have at most
//! [`SEARCH_BOUND`] elements. Above that, a split is found by Fitting's lemma
//! (an endomorphism that is neither nilpotent nor invertible splits `M` as
//! `ker f^n ⊕ im f^n`), locality is certified when `End(M) = F_p·1 + N` with
//! `N` a nilpotent ideal, and anything still undecided surfaces
//! [`Error::SearchBoundExceeded`].

use std::collections::HashMap;

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::search::{rng, Tuples, RANDOM_TRIALS, SEARCH_BOUND};

use super::morphism::{hom_space, image_sub, kernel_sub, HomSpace, RepMorphism};
use super::Representation;

/// Cheap isomorphism invariant used to screen candidates before a full test.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IsoKey {
    pub dims: Vec<usize>,
    /// Rank of the composite map along every path, in [`super::Quiver::paths`] order.
    pub path_ranks: Vec<usize>,
    /// `(dim Hom(M, X), dim Hom(X, M))` for each probe object `X`.
    pub probes: Vec<(usize, usize)>,
}

impl IsoKey {
    pub fn of(m: &Representation) -> IsoKey {
        let path_ranks = m.quiver().paths().iter().map(|p| m.path_map(p).rank()).collect();
        IsoKey {
            dims: m.dims().to_vec(),
            path_ranks,
            probes: Vec::new(),
        }
    }

    pub fn with_probes(m: &Representation, probes: &[Representation]) -> Result<IsoKey> {
        let mut key = IsoKey::of(m);
        for x in probes {
            key.probes.push((hom_space(m, x)?.dim(), hom_space(x, m)?.dim()));
        }
        Ok(key)
    }
}

/// A map keyed by isomorphism class: [`IsoKey`] buckets, resolved by
/// [`is_isomorphic`] inside a bucket.
#[derive(Clone, Debug)]
pub struct IsoClassMemo<V> {
    probes: Vec<Representation>,
    buckets: HashMap<IsoKey, Vec<(Representation, V)>>,
    len: usize,
}

impl<V> Default for IsoClassMemo<V> {
    fn default() -> Self {
        Self::new(Vec::new())
    }
}

impl<V> IsoClassMemo<V> {
    pub fn new(probes: Vec<Representation>) -> Self {
        IsoClassMemo {
            probes,
            buckets: HashMap::new(),
            len: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn key(&self, m: &Representation) -> Result<IsoKey> {
        IsoKey::with_probes(m, &self.probes)
    }

    pub fn get(&self, m: &Representation) -> Result<Option<&V>> {
        let key = self.key(m)?;
        self.get_keyed(&key, m)
    }

    pub fn get_keyed(&self, key: &IsoKey, m: &Representation) -> Result<Option<&V>> {
        if let Some(bucket) = self.buckets.get(key) {
            for (rep, v) in bucket {
                if is_isomorphic(rep, m)?.is_some() {
                    return Ok(Some(v));
                }
            }
        }
        Ok(None)
    }

    pub fn get_mut(&mut self, m: &Representation) -> Result<Option<&mut V>> {
        let key = self.key(m)?;
        let Some(bucket) = self.buckets.get_mut(&key) else {
            return Ok(None);
        };
        for (rep, v) in bucket.iter_mut() {
            if is_isomorphic(rep, m)?.is_some() {
                return Ok(Some(v));
            }
        }
        Ok(None)
    }

    /// Inserts without checking for an existing class.
    pub fn insert_keyed(&mut self, key: IsoKey, m: Representation, v: V) {
        self.buckets.entry(key).or_default().push((m, v));
        self.len += 1;
    }

    /// Inserts `m` unless its class is present; returns whether it was new.
    pub fn insert(&mut self, m: Representation, v: V) -> Result<bool> {
        let key = self.key(&m)?;
        if self.get_keyed(&key, &m)?.is_some() {
            return Ok(false);
        }
        self.insert_keyed(key, m, v);
        Ok(true)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Representation, &V)> {
        self.buckets.values().flatten().map(|(r, v)| (r, v))
    }
}

/// An isomorphism `M → N`, or `None` when none exists.
pub fn is_isomorphic(m: &Representation, n: &Representation) -> Result<Option<RepMorphism>> {
    m.check_compatible(n)?;
    if m.dims() != n.dims() {
        return Ok(None);
    }
    if m == n {
        return Ok(Some(RepMorphism::identity(m)));
    }
    if IsoKey::of(m) != IsoKey::of(n) {
        return Ok(None);
    }
    let hmn = hom_space(m, n)?;
    let hnm = hom_space(n, m)?;
    let end_m = hom_space(m, m)?.dim();
    let end_n = hom_space(n, n)?.dim();
    if hmn.dim() != end_m || hnm.dim() != end_m || end_n != end_m {
        return Ok(None);
    }
    if hmn.cardinality() <= SEARCH_BOUND as u128 {
        let p = m.field().modulus();
        return Ok(Tuples::new(p, hmn.dim()).map(|c| hmn.element(&c)).find(RepMorphism::is_iso));
    }
    let mut r = rng(hmn.dim() as u64);
    let p = m.field().modulus();
    for _ in 0..RANDOM_TRIALS {
        let coeffs: Vec<u32> = (0..hmn.dim()).map(|_| r.gen_range(0..p)).collect();
        let f = hmn.element(&coeffs);
        if f.is_iso() {
            return Ok(Some(f));
        }
    }
    iso_by_decomposition(m, n)
}

/// Matches indecomposable summands; exact once both decompositions succeed.
fn iso_by_decomposition(m: &Representation, n: &Representation) -> Result<Option<RepMorphism>> {
    let dm = decompose(m)?;
    let dn = decompose(n)?;
    if dm.len() != dn.len() {
        return Ok(None);
    }
    let mut used = vec![false; dn.len()];
    let mut total = RepMorphism::zero(m, n);
    for s in &dm {
        let mut matched = false;
        for (j, t) in dn.iter().enumerate() {
            if used[j] {
                continue;
            }
            if let Some(f) = indecomposables_isomorphic(&s.rep, &t.rep)? {
                total = total.add(&t.inclusion.after(&f).after(&s.projection))?;
                used[j] = true;
                matched = true;
                break;
            }
        }
        if !matched {
            return Ok(None);
        }
    }
    if !total.is_iso() {
        return Err(Error::InvariantViolated("assembled summand isomorphisms are not invertible".into()));
    }
    Ok(Some(total))
}

/// For indecomposable `a`, `b` (local endomorphism rings): an isomorphism
/// exists iff some basis pair `f: a → b`, `g: b → a` has `g ∘ f` not nilpotent.
fn indecomposables_isomorphic(a: &Representation, b: &Representation) -> Result<Option<RepMorphism>> {
    if a.dims() != b.dims() {
        return Ok(None);
    }
    let hab = hom_space(a, b)?;
    let hba = hom_space(b, a)?;
    for f in hab.basis() {
        for g in hba.basis() {
            if !g.after(f).is_nilpotent() {
                if !f.is_iso() {
                    return Err(Error::InvariantViolated(
                        "non-nilpotent round trip through a non-invertible map between indecomposables".into(),
                    ));
                }
                return Ok(Some(f.clone()));
            }
        }
    }
    Ok(None)
}

fn is_fitting_splitter(f: &RepMorphism) -> bool {
    !f.is_iso() && !f.is_nilpotent()
}

/// An endomorphism that is neither nilpotent nor invertible, or `None` when
/// `M` is certified indecomposable.
pub fn find_split(m: &Representation) -> Result<Option<RepMorphism>> {
    if m.is_zero() {
        return Ok(None);
    }
    let end = hom_space(m, m)?;
    if end.dim() <= 1 {
        return Ok(None);
    }
    let p = m.field().modulus();
    let id = RepMorphism::identity(m);
    let shifts: Vec<u32> = if p <= 64 { (0..p).collect() } else { vec![0, 1] };
    for b in end.basis() {
        for &lambda in &shifts {
            let f = b.add(&id.scale(m.field().neg(lambda)))?;
            if is_fitting_splitter(&f) {
                return Ok(Some(f));
            }
        }
    }
    if is_scalar_plus_nilpotent(&end, m)? {
        return Ok(None);
    }
    if end.cardinality() <= SEARCH_BOUND as u128 {
        return Ok(Tuples::new(p, end.dim())
            .map(|c| end.element(&c))
            .find(is_fitting_splitter));
    }
    let mut r = rng(0xe4d0 ^ end.dim() as u64);
    for _ in 0..RANDOM_TRIALS {
        let coeffs: Vec<u32> = (0..end.dim()).map(|_| r.gen_range(0..p)).collect();
        let f = end.element(&coeffs);
        if is_fitting_splitter(&f) {
            return Ok(Some(f));
        }
    }
    Err(Error::SearchBoundExceeded {
        size: format!("{p}^{}", end.dim()),
        bound: SEARCH_BOUND,
    })
}

/// Certifies `End(M) = F_p·1 + N` with `N` a nilpotent ideal, hence local.
fn is_scalar_plus_nilpotent(end: &HomSpace, m: &Representation) -> Result<bool> {
    let f = m.field();
    if f.modulus() > 256 {
        return Ok(false);
    }
    let id = RepMorphism::identity(m);
    let mut nil = Vec::with_capacity(end.dim());
    for b in end.basis() {
        let shifted = (0..f.modulus())
            .map(|l| b.add(&id.scale(f.neg(l))))
            .find(|x| x.as_ref().map_or(true, RepMorphism::is_nilpotent));
        match shifted {
            Some(x) => nil.push(x?),
            None => return Ok(false),
        }
    }
    let len = id.flatten().len();
    let as_matrix = |ms: &[RepMorphism]| {
        let cols: Vec<_> = ms.iter().map(RepMorphism::flatten).collect();
        Matrix::from_columns(f, len, &cols)
    };
    let span = as_matrix(&nil);
    let span_rank = span.rank();
    let mut power = nil.clone();
    for _ in 0..=m.total_dim() + 1 {
        let products: Vec<RepMorphism> = power
            .iter()
            .flat_map(|a| nil.iter().map(move |b| a.after(b)))
            .filter(|x| !x.is_zero())
            .collect();
        if products.is_empty() {
            return Ok(true);
        }
        let prod = as_matrix(&products);
        if span.hstack(&prod).rank() != span_rank {
            return Ok(false);
        }
        let basis = prod.column_basis();
        power = (0..basis.cols())
            .map(|c| RepMorphism::unflatten(m, m, &basis.column(c)))
            .collect();
    }
    Ok(false)
}

pub fn is_indecomposable(m: &Representation) -> Result<bool> {
    if m.is_zero() {
        return Err(Error::InvalidRepresentation("the zero representation has no indecomposability status".into()));
    }
    Ok(find_split(m)?.is_none())
}

/// One summand of a direct-sum decomposition with its inclusion into and
/// projection from the decomposed object.
#[derive(Clone, Debug)]
pub struct Summand {
    pub rep: Representation,
    pub inclusion: RepMorphism,
    pub projection: RepMorphism,
}

/// `M = ker g ⊕ im g` for `g = f^n` (Fitting).
fn fitting_split(m: &Representation, f: &RepMorphism) -> Result<[Summand; 2]> {
    let n = m.dims().iter().copied().max().unwrap_or(0) as u32;
    let comps: Vec<Matrix> = f.components().iter().map(|c| c.pow(n)).collect();
    let g = RepMorphism::from_parts(m.clone(), m.clone(), comps);
    let (k, k_incl) = kernel_sub(&g)?;
    let (i, i_incl) = image_sub(&g)?;
    let mut k_proj = Vec::new();
    let mut i_proj = Vec::new();
    for v in 0..m.dims().len() {
        let both = k_incl.component(v).hstack(i_incl.component(v));
        let inv = both
            .inverse()
            .ok_or_else(|| Error::InvariantViolated("Fitting summands do not span".into()))?;
        let kd = k.dim(v);
        k_proj.push(inv.submatrix(0..kd, 0..m.dim(v)));
        i_proj.push(inv.submatrix(kd..m.dim(v), 0..m.dim(v)));
    }
    Ok([
        Summand {
            projection: RepMorphism::from_parts(m.clone(), k.clone(), k_proj),
            rep: k,
            inclusion: k_incl,
        },
        Summand {
            projection: RepMorphism::from_parts(m.clone(), i.clone(), i_proj),
            rep: i,
            inclusion: i_incl,
        },
    ])
}

/// Decomposes `M` into indecomposable summands, sorted by total dimension
/// and then dimension vector.
pub fn decompose(m: &Representation) -> Result<Vec<Summand>> {
    let mut done = Vec::new();
    let mut stack = vec![Summand {
        rep: m.clone(),
        inclusion: RepMorphism::identity(m),
        projection: RepMorphism::identity(m),
    }];
    while let Some(s) = stack.pop() {
        if s.rep.is_zero() {
            continue;
        }
        match find_split(&s.rep)? {
            None => done.push(s),
            Some(f) => {
                for part in fitting_split(&s.rep, &f)? {
                    stack.push(Summand {
                        inclusion: s.inclusion.after(&part.inclusion),
                        projection: part.projection.after(&s.projection),
                        rep: part.rep,
                    });
                }
            }
        }
    }
    done.sort_by(|a, b| {
        (a.rep.total_dim(), a.rep.dims()).cmp(&(b.rep.total_dim(), b.rep.dims()))
    });
    Ok(done)
}

/// Indecomposable summands up to isomorphism with multiplicities.
pub fn krull_schmidt(m: &Representation) -> Result<Vec<(Representation, usize)>> {
    let mut out: Vec<(Representation, usize)> = Vec::new();
    'next: for s in decompose(m)? {
        for (rep, mult) in out.iter_mut() {
            if indecomposables_isomorphic(rep, &s.rep)?.is_some() {
                *mult += 1;
                continue 'next;
            }
        }
        out.push((s.rep, 1));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::morphism::direct_sum;
    use super::*;

    fn sum(parts: &[&Representation]) -> Representation {
        let mut acc = Representation::zero(parts[0].quiver().clone(), parts[0].field());
        for p in parts {
            acc = direct_sum(&acc, p).unwrap().sum;
        }
        acc
    }

    #[test]
    fn isomorphism_examples() {
        let a = a2(2);
        assert!(is_isomorphic(&a.p1, &a.p1).unwrap().is_some());
        assert!(is_isomorphic(&a.s1, &a.s2).unwrap().is_none());
        let s12 = sum(&[&a.s1, &a.s2]);
        assert!(is_isomorphic(&a.p1, &s12).unwrap().is_none());
        // The same object in another basis.
        let m = sum(&[&a.p1, &a.s1]);
        let change = [Matrix::from_rows(a.field, &[vec![1, 1], vec![0, 1]]), Matrix::identity(a.field, 1)];
        let (m2, _) = m.transport(&change).unwrap();
        assert_ne!(m, m2);
        let w = is_isomorphic(&m, &m2).unwrap().unwrap();
        assert!(w.is_iso());
    }

    #[test]
    fn indecomposability_examples() {
        let a = a2(2);
        assert!(is_indecomposable(&a.s1).unwrap());
        assert!(!is_indecomposable(&sum(&[&a.s1, &a.s1])).unwrap());
        assert!(is_indecomposable(&a.p1).unwrap());
        assert!(is_indecomposable(&Representation::zero(a.quiver.clone(), a.field)).is_err());
    }

    #[test]
    fn krull_schmidt_examples() {
        let a = a2(2);
        assert!(krull_schmidt(&Representation::zero(a.quiver.clone(), a.field)).unwrap().is_empty());
        let ks = krull_schmidt(&sum(&[&a.s1, &a.s1, &a.s2])).unwrap();
        assert_eq!(ks.len(), 2);
        // Equal total dimension, so dimension vectors decide: (0,1) < (1,0).
        assert_eq!((ks[0].0.dims(), ks[0].1), (&[0usize, 1][..], 1));
        assert_eq!((ks[1].0.dims(), ks[1].1), (&[1usize, 0][..], 2));
        // dim (2,1) with arrow map [1 0] is P1 ⊕ S1.
        let m = rep(&a, [2, 1], &[1, 0]);
        let ks = krull_schmidt(&m).unwrap();
        assert_eq!(ks.len(), 2);
        assert!(is_isomorphic(&ks[0].0, &a.s1).unwrap().is_some());
        assert_eq!(ks[0].1, 1);
        assert!(is_isomorphic(&ks[1].0, &a.p1).unwrap().is_some());
        assert_eq!(ks[1].1, 1);
    }

    #[test]
    fn large_endomorphism_algebras_use_the_structured_paths() {
        // End(S1^3 ⊕ S2^3 ⊕ P1) over F_2 has 2^19 elements.
        let a = a2(2);
        let s1_3 = a.s1.power(3);
        let s2_3 = a.s2.power(3);
        let m = sum(&[&s1_3, &s2_3, &a.p1]);
        assert!(hom_space(&m, &m).unwrap().cardinality() > SEARCH_BOUND as u128);
        let ks = krull_schmidt(&m).unwrap();
        let mults: Vec<_> = ks.iter().map(|(r, k)| (r.dims().to_vec(), *k)).collect();
        assert_eq!(mults, vec![(vec![0, 1], 3), (vec![1, 0], 3), (vec![1, 1], 1)]);
        let change = [
            Matrix::from_rows(a.field, &[vec![1, 1, 0, 1], vec![0, 1, 1, 0], vec![0, 0, 1, 1], vec![0, 0, 0, 1]]),
            Matrix::from_rows(a.field, &[vec![1, 0, 0, 0], vec![1, 1, 0, 0], vec![0, 1, 1, 0], vec![1, 0, 1, 1]]),
        ];
        let (m2, _) = m.transport(&change).unwrap();
        assert!(is_isomorphic(&m, &m2).unwrap().unwrap().is_iso());
        let other = sum(&[&a.s1.power(2), &a.s2.power(2), &a.p1, &a.p1]);
        assert!(is_isomorphic(&m, &other).unwrap().is_none());
    }

    #[test]
    fn decomposition_reassembles() {
        let a = a2(3);
        let m = sum(&[&a.p1, &a.s2, &a.s1, &a.p1]);
        let parts = decompose(&m).unwrap();
        let mut id = RepMorphism::zero(&m, &m);
        for s in &parts {
            assert_eq!(s.projection.after(&s.inclusion), RepMorphism::identity(&s.rep));
            id = id.add(&s.inclusion.after(&s.projection)).unwrap();
        }
        assert_eq!(id, RepMorphism::identity(&m));
        let rebuilt = sum(&parts.iter().map(|s| &s.rep).collect::<Vec<_>>());
        assert!(is_isomorphic(&rebuilt, &m).unwrap().is_some());
    }
}
