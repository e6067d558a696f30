//! Bounded enumeration of subspaces, subrepresentations and iso classes.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::Result;
use crate::linalg::{Matrix, PrimeField};
use crate::search::{cardinality, Budget, Tuples};

use super::iso::{IsoClassMemo, IsoKey};
use super::morphism::{restrict_to, RepMorphism};
use super::{Quiver, Representation};

/// Every subspace of `F_p^n` as an `n × k` matrix whose columns form its
/// reduced-echelon basis. Ordered by dimension, then pivot set
/// (lexicographic), then free entries.
pub fn subspaces(field: PrimeField, n: usize) -> Vec<Matrix> {
    let mut out = Vec::new();
    for k in 0..=n {
        for pivots in combinations(n, k) {
            let free: Vec<(usize, usize)> = (0..k)
                .flat_map(|r| {
                    let pivots = &pivots;
                    (pivots[r] + 1..n).filter(move |c| !pivots.contains(c)).map(move |c| (r, c))
                })
                .collect();
            for values in Tuples::new(field.modulus(), free.len()) {
                let mut rows = Matrix::zeros(field, k, n);
                for (r, &c) in pivots.iter().enumerate() {
                    rows.set(r, c, 1);
                }
                for (&(r, c), &v) in free.iter().zip(&values) {
                    rows.set(r, c, v);
                }
                out.push(rows.transpose());
            }
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn closed_under(m: &Representation, arrow: usize, bases: &[Matrix]) -> bool {
    let a = &m.quiver().arrows()[arrow];
    let image = m.map(arrow).mul(&bases[a.source]);
    let target = &bases[a.target];
    target.hstack(&image).rank() == target.cols()
}

/// Every subrepresentation of `m` with its inclusion, vertexwise subspaces
/// taken in [`subspaces`] order (vertex 1 varying slowest).
pub fn enumerate_subreps(m: &Representation, budget: &mut Budget) -> Result<Vec<(Representation, RepMorphism)>> {
    let f = m.field();
    if m.dims().is_empty() {
        return Ok(vec![(m.clone(), RepMorphism::identity(m))]);
    }
    let mut lattices: HashMap<usize, Vec<Matrix>> = HashMap::new();
    for &d in m.dims() {
        lattices.entry(d).or_insert_with(|| subspaces(f, d));
    }
    let per_vertex: Vec<&Vec<Matrix>> = m.dims().iter().map(|d| &lattices[d]).collect();
    let n = m.dims().len();
    let mut chosen: Vec<Matrix> = Vec::with_capacity(n);
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    let mut v = 0;
    // Iterative depth-first search; arrows are checked once both endpoints are fixed.
    loop {
        if v == n {
            let (sub, incl) = restrict_to(m, &chosen)?;
            out.push((sub, incl));
            v -= 1;
            chosen.pop();
            idx[v] += 1;
            continue;
        }
        if idx[v] == per_vertex[v].len() {
            if v == 0 {
                break;
            }
            idx[v] = 0;
            v -= 1;
            chosen.pop();
            idx[v] += 1;
            continue;
        }
        budget.spend(1)?;
        chosen.push(per_vertex[v][idx[v]].clone());
        let ok = m.quiver().arrows().iter().enumerate().all(|(ai, a)| {
            let last = a.source.max(a.target);
            last != v || closed_under(m, ai, &chosen)
        });
        if ok {
            v += 1;
        } else {
            chosen.pop();
            idx[v] += 1;
        }
    }
    Ok(out)
}

/// One representative per isomorphism class of representations with
/// `dims ≤ max_dims` componentwise, sorted by total dimension and then
/// dimension vector. The zero representation comes first.
pub fn enumerate_reps(
    quiver: &Arc<Quiver>,
    field: PrimeField,
    max_dims: &[usize],
    budget: &mut Budget,
) -> Result<Vec<Representation>> {
    let n = quiver.vertex_count();
    assert_eq!(max_dims.len(), n, "one bound per vertex");
    let mut dim_vectors = vec![Vec::new()];
    for &bound in max_dims {
        dim_vectors = dim_vectors
            .into_iter()
            .flat_map(|prefix: Vec<usize>| {
                (0..=bound).map(move |d| {
                    let mut next = prefix.clone();
                    next.push(d);
                    next
                })
            })
            .collect();
    }
    let total: u128 = dim_vectors
        .iter()
        .map(|dims| {
            let entries: usize = quiver.arrows().iter().map(|a| dims[a.source] * dims[a.target]).sum();
            cardinality(field.modulus(), entries)
        })
        .sum();
    budget.require(total)?;
    dim_vectors.sort_by_key(|d| (d.iter().sum::<usize>(), d.clone()));

    let mut out = Vec::new();
    for dims in dim_vectors {
        let shapes: Vec<(usize, usize)> = quiver.arrows().iter().map(|a| (dims[a.target], dims[a.source])).collect();
        let entries: usize = shapes.iter().map(|(r, c)| r * c).sum();
        let mut memo: IsoClassMemo<()> = IsoClassMemo::default();
        for values in Tuples::new(field.modulus(), entries) {
            budget.spend(1)?;
            let mut offset = 0;
            let maps = shapes
                .iter()
                .map(|&(r, c)| {
                    let m = Matrix::from_vec(field, r, c, values[offset..offset + r * c].to_vec())
                        .expect("shape matches entry count");
                    offset += r * c;
                    m
                })
                .collect();
            let rep = Representation::from_parts(quiver.clone(), field, dims.clone(), maps);
            let key = IsoKey::of(&rep);
            if memo.get_keyed(&key, &rep)?.is_none() {
                memo.insert_keyed(key, rep.clone(), ());
                out.push(rep);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::is_isomorphic;
    use super::*;

    /// Number of `k`-dimensional subspaces of `F_p^n`.
    fn gaussian_binomial(p: u64, n: u32, k: u32) -> u64 {
        let mut num = 1u64;
        let mut den = 1u64;
        for i in 0..k {
            num *= p.pow(n - i) - 1;
            den *= p.pow(i + 1) - 1;
        }
        num / den
    }

    #[test]
    fn subspace_counts_match_gaussian_binomials() {
        for p in [2u32, 3] {
            let f = PrimeField::new(p).unwrap();
            for n in 0..=3 {
                let all = subspaces(f, n);
                let expected: u64 = (0..=n as u32).map(|k| gaussian_binomial(p as u64, n as u32, k)).sum();
                assert_eq!(all.len() as u64, expected);
                for s in &all {
                    assert_eq!(s.rank(), s.cols());
                }
            }
        }
    }

    #[test]
    fn subreps_of_simples_and_p1() {
        let a = a2(2);
        let mut b = Budget::default();
        let subs = enumerate_subreps(&a.s1, &mut b).unwrap();
        assert_eq!(subs.len(), 2);
        assert!(subs[0].0.is_zero());
        assert_eq!(subs[1].0, a.s1);
        let subs = enumerate_subreps(&a.p1, &mut b).unwrap();
        assert_eq!(subs.len(), 3);
        assert!(subs.iter().any(|(s, _)| s.dims() == [0, 1] && is_isomorphic(s, &a.s2).unwrap().is_some()));
        assert!(!subs.iter().any(|(s, _)| s.dims() == [1, 0]));
        for (_, incl) in &subs {
            assert!(incl.is_injective());
        }
    }

    #[test]
    fn a2_classes_up_to_one_one() {
        let a = a2(2);
        let reps = enumerate_reps(&a.quiver, a.field, &[1, 1], &mut Budget::default()).unwrap();
        assert_eq!(reps.len(), 5);
        assert!(reps[0].is_zero());
    }

    #[test]
    fn a2_class_counts_match_partition_count() {
        // Indecomposables of A2 are S1, S2, P1, so classes of dimension
        // (a, b) are indexed by the multiplicity m of P1 with m ≤ min(a, b).
        let a = a2(3);
        let reps = enumerate_reps(&a.quiver, a.field, &[2, 2], &mut Budget::default()).unwrap();
        let expected: usize = (0..=2).flat_map(|x| (0..=2).map(move |y| x.min(y) + 1)).sum();
        assert_eq!(reps.len(), expected);
    }

    #[test]
    fn budget_is_enforced() {
        let a = a2(2);
        assert!(enumerate_reps(&a.quiver, a.field, &[3, 3], &mut Budget::new(100)).is_err());
    }
}
