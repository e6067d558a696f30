//! Θ-filtrations: chains `0 = M_{-1} → M_0 → … → M_n = M` of conflations
//! `M_{i-1} → M_i → X_i` with each `X_i ≅ Θ(k_i)`, their manipulation
//! (extension, exchange, collapse, reordering, grouping), the star
//! operation on classes, and membership decision for `F(Θ)`.

use std::collections::{HashMap, HashSet};

use crate::conflation::{et4_compose, et4op_compose, ext_space, is_split, realize_cocycle, Conflation, ExtClass};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, PrimeField};
use crate::quiverrep::{
    cokernel_quot, hom_space, is_isomorphic, kernel_sub, krull_schmidt, enumerate_subreps, IsoClassMemo, RepMorphism,
    Representation, ThetaFamily,
};
use crate::search::{Budget, Tuples, SEARCH_BOUND};

/// A Θ-filtration with literal shared objects: `steps[i].a() == steps[i-1].b()`.
/// Labels are 0-based indices into the family; `witnesses[i] : X_i → Θ(labels[i])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    object: Representation,
    steps: Vec<Conflation>,
    labels: Vec<usize>,
    witnesses: Vec<RepMorphism>,
}

impl Filtration {
    /// The filtration of length 0 of the zero object.
    pub fn empty(zero: &Representation) -> Result<Self> {
        if !zero.is_zero() {
            return Err(Error::InvalidFiltration("only the zero object has an empty filtration".into()));
        }
        Ok(Filtration {
            object: zero.clone(),
            steps: Vec::new(),
            labels: Vec::new(),
            witnesses: Vec::new(),
        })
    }

    pub fn new(
        theta: &ThetaFamily,
        object: Representation,
        steps: Vec<Conflation>,
        labels: Vec<usize>,
        witnesses: Vec<RepMorphism>,
    ) -> Result<Self> {
        let f = Filtration {
            object,
            steps,
            labels,
            witnesses,
        };
        f.validate(theta)?;
        Ok(f)
    }

    pub fn validate(&self, theta: &ThetaFamily) -> Result<()> {
        let n = self.steps.len();
        if self.labels.len() != n || self.witnesses.len() != n {
            return Err(Error::InvalidFiltration("one label and one witness per step are required".into()));
        }
        match self.steps.first() {
            None if !self.object.is_zero() => {
                return Err(Error::InvalidFiltration("an empty filtration must filter the zero object".into()))
            }
            Some(first) if !first.a().is_zero() => {
                return Err(Error::InvalidFiltration("the first step must start at the zero object".into()))
            }
            _ => {}
        }
        for i in 1..n {
            if self.steps[i].a() != self.steps[i - 1].b() {
                return Err(Error::InvalidFiltration(format!("steps {i} and {} do not share their object", i + 1)));
            }
        }
        if let Some(last) = self.steps.last() {
            if last.b() != &self.object {
                return Err(Error::InvalidFiltration("the last step does not end at the filtered object".into()));
            }
        }
        for (i, (&k, w)) in self.labels.iter().zip(&self.witnesses).enumerate() {
            if k >= theta.len() {
                return Err(Error::InvalidFiltration(format!("label {} is out of range", k + 1)));
            }
            if w.source() != self.steps[i].c() || w.target() != theta.member(k) || !w.is_iso() {
                return Err(Error::InvalidFiltration(format!(
                    "step {} lacks an isomorphism onto its labelled member",
                    i + 1
                )));
            }
        }
        Ok(())
    }

    /// Builds a filtration by successive extensions: step `i` realizes the
    /// class with the given coordinates in `E(Θ(label), M_{i-1})`.
    pub fn from_extensions(theta: &ThetaFamily, layers: &[(usize, Vec<u32>)]) -> Result<Self> {
        let first = theta.member(0);
        let mut f = Filtration::empty(&Representation::zero(first.quiver().clone(), first.field()))?;
        for (label, coords) in layers {
            f.push_extension(theta, *label, coords.clone())?;
        }
        Ok(f)
    }

    /// Appends a step `M → M' → Θ(label)` realizing the given class in `E(Θ(label), M)`.
    pub fn push_extension(&mut self, theta: &ThetaFamily, label: usize, coords: Vec<u32>) -> Result<()> {
        if label >= theta.len() {
            return Err(Error::InvalidFiltration(format!("label {} is out of range", label + 1)));
        }
        let member = theta.member(label);
        let class = ExtClass::new(ext_space(member, &self.object)?, coords)?;
        let step = realize_cocycle(member, &self.object, &class.cocycle())?;
        self.push(step, label, RepMorphism::identity(member));
        Ok(())
    }

    fn push(&mut self, step: Conflation, label: usize, witness: RepMorphism) {
        debug_assert_eq!(step.a(), &self.object);
        self.object = step.b().clone();
        self.steps.push(step);
        self.labels.push(label);
        self.witnesses.push(witness);
    }

    pub fn object(&self) -> &Representation {
        &self.object
    }

    pub fn steps(&self) -> &[Conflation] {
        &self.steps
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn witnesses(&self) -> &[RepMorphism] {
        &self.witnesses
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `[M : Θ(i)]` for `i < t`.
    pub fn multiplicities(&self, t: usize) -> Vec<usize> {
        let mut m = vec![0; t];
        for &k in &self.labels {
            m[k] += 1;
        }
        m
    }

    /// Labels non-increasing from bottom to top: `k_n ≤ … ≤ k_1`.
    pub fn is_ordered(&self) -> bool {
        self.labels.windows(2).all(|w| w[1] <= w[0])
    }

    fn pop(&mut self) -> Option<(Conflation, usize, RepMorphism)> {
        let step = self.steps.pop()?;
        self.object = step.a().clone();
        Some((step, self.labels.pop()?, self.witnesses.pop()?))
    }
}

pub fn multiplicities(f: &Filtration, theta: &ThetaFamily) -> Vec<usize> {
    f.multiplicities(theta.len())
}

/// A filtration whose layers are `Θ(λ_i)^{m_i}` with `λ` strictly
/// decreasing from bottom to top.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupedFiltration {
    pub object: Representation,
    pub steps: Vec<Conflation>,
    pub labels: Vec<usize>,
    pub multiplicities: Vec<usize>,
}

impl GroupedFiltration {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn validate(&self, theta: &ThetaFamily) -> Result<()> {
        if !self.labels.windows(2).all(|w| w[1] < w[0]) {
            return Err(Error::InvalidFiltration("grouped labels must strictly decrease".into()));
        }
        for (i, step) in self.steps.iter().enumerate() {
            if i == 0 && !step.a().is_zero() || i > 0 && step.a() != self.steps[i - 1].b() {
                return Err(Error::InvalidFiltration(format!("grouped step {} breaks the chain", i + 1)));
            }
            if step.c() != &theta.member(self.labels[i]).power(self.multiplicities[i]) {
                return Err(Error::InvalidFiltration(format!("grouped step {} has the wrong layer", i + 1)));
            }
        }
        let end = self.steps.last().map_or(self.object.is_zero(), |s| s.b() == &self.object);
        if !end {
            return Err(Error::InvalidFiltration("grouped filtration does not end at its object".into()));
        }
        Ok(())
    }
}

/// `A → B` replaced by `A → B'` along an isomorphism `B → B'`.
fn move_middle(c: &Conflation, iso: &RepMorphism) -> Result<Conflation> {
    let inv = iso
        .inverse()
        .ok_or_else(|| Error::InvariantViolated("middle transport along a non-isomorphism".into()))?;
    Conflation::new(iso.compose(c.x())?, c.y().compose(&inv)?)
}

/// A filtration of `B` from one of `A` and one of `C` for a conflation
/// `A → B → C`, with multiplicities adding up.
pub fn extend(c: &Conflation, fa: &Filtration, fc: &Filtration) -> Result<Filtration> {
    if fa.object() != c.a() || fc.object() != c.c() {
        return Err(Error::EndpointMismatch("filtrations do not filter the end terms of the conflation".into()));
    }
    let mut fc = fc.clone();
    match fc.pop() {
        None => {
            // C = 0, so x is an isomorphism; move the top of fA onto B.
            let mut out = fa.clone();
            match out.pop() {
                None => Filtration::empty(c.b()),
                Some((top, label, w)) => {
                    let moved = move_middle(&top, c.x())?;
                    out.push(moved, label, w);
                    Ok(out)
                }
            }
        }
        Some((top, label, w)) => {
            let diag = et4op_compose(c, &top)?;
            let mut out = extend(&diag.c4, fa, &fc)?;
            out.push(diag.c3, label, w);
            Ok(out)
        }
    }
}

/// From `Z → Y → U` and `Y → X → V` with `E(V, U) = 0`, the exchanged pair
/// `Z → W → V` and `W → X → U`.
pub fn exchange(c1: &Conflation, c2: &Conflation) -> Result<(Conflation, Conflation)> {
    if c1.b() != c2.a() {
        return Err(Error::MiddleObjectMismatch("the conflations do not share their object".into()));
    }
    let dim = ext_space(c2.c(), c1.c())?.dim();
    if dim != 0 {
        return Err(Error::ExtObstruction { dim });
    }
    let diag = et4_compose(c1, c2)?;
    // U → E → V splits.
    let w = is_split(&diag.c4)?.ok_or_else(|| Error::InvariantViolated("a conflation with vanishing Ext does not split".into()))?;
    let swapped = Conflation::new(w.section, w.retraction)?;
    let dual = et4op_compose(&diag.c3, &swapped)?;
    Ok((dual.c4, dual.c3))
}

/// Collapses consecutive steps `M_{i-1} → M_i → A` with the same literal
/// third term into `M_0 → M_k → A^k`, provided `E(A, A) = 0`.
pub fn collapse(steps: &[Conflation]) -> Result<Conflation> {
    let first = steps
        .first()
        .ok_or_else(|| Error::ChainMismatch("nothing to collapse".into()))?;
    let a = first.c();
    for (i, s) in steps.iter().enumerate().skip(1) {
        if s.a() != steps[i - 1].b() {
            return Err(Error::ChainMismatch(format!("steps {i} and {} do not share their object", i + 1)));
        }
        if s.c() != a {
            return Err(Error::ChainMismatch(format!("step {} has a different third term", i + 1)));
        }
    }
    let dim = ext_space(a, a)?.dim();
    if dim != 0 {
        return Err(Error::ExtObstruction { dim });
    }
    let mut xi = first.clone();
    for (j, eta) in steps.iter().enumerate().skip(1) {
        let diag = et4_compose(&xi, eta)?;
        // L_j → E → A splits; identify E with L_j ⊕ A = A^{j+1}.
        let w = is_split(&diag.c4)?
            .ok_or_else(|| Error::InvariantViolated("a conflation with vanishing Ext does not split".into()))?;
        let target = a.power(j + 1);
        let comps = (0..target.dims().len())
            .map(|v| w.retraction.component(v).vstack(diag.e.component(v)))
            .collect();
        let phi = RepMorphism::new(diag.c4.b().clone(), target, comps)?;
        if !phi.is_iso() {
            return Err(Error::InvariantViolated("the collapsed layer is not a power of the quotient".into()));
        }
        xi = Conflation::new(diag.c3.x().clone(), phi.compose(diag.c3.y())?)?;
    }
    Ok(xi)
}

fn check_family(f: &Filtration, theta: &ThetaFamily) -> Result<()> {
    f.validate(theta)?;
    // The ordering condition is re-checked so exchange hypotheses are guaranteed.
    ThetaFamily::new(theta.members().to_vec()).map(|_| ())
}

/// An ordered filtration of the same object by adjacent exchanges.
pub fn reorder(f: &Filtration, theta: &ThetaFamily) -> Result<Filtration> {
    check_family(f, theta)?;
    let mut out = f.clone();
    let n = out.len();
    for pass in 0..n {
        let mut swapped = false;
        for i in 0..n.saturating_sub(1 + pass) {
            if out.labels[i + 1] > out.labels[i] {
                let (lower, upper) = exchange(&out.steps[i], &out.steps[i + 1])?;
                out.steps[i] = lower;
                out.steps[i + 1] = upper;
                out.labels.swap(i, i + 1);
                out.witnesses.swap(i, i + 1);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    debug_assert!(out.validate(theta).is_ok());
    Ok(out)
}

/// Bundles runs of equal labels of an ordered filtration into single layers.
pub fn group(f: &Filtration, theta: &ThetaFamily) -> Result<GroupedFiltration> {
    check_family(f, theta)?;
    if !f.is_ordered() {
        return Err(Error::InvalidFiltration("grouping needs an ordered filtration".into()));
    }
    // Make each third term literally Θ(k_i).
    let literal: Vec<Conflation> = f
        .steps
        .iter()
        .zip(&f.witnesses)
        .map(|(s, w)| Conflation::new(s.x().clone(), w.compose(s.y())?))
        .collect::<Result<_>>()?;
    let mut steps = Vec::new();
    let mut labels = Vec::new();
    let mut mults = Vec::new();
    let mut start = 0;
    while start < literal.len() {
        let label = f.labels[start];
        let mut end = start + 1;
        while end < literal.len() && f.labels[end] == label {
            end += 1;
        }
        steps.push(collapse(&literal[start..end])?);
        labels.push(label);
        mults.push(end - start);
        start = end;
    }
    let g = GroupedFiltration {
        object: f.object.clone(),
        steps,
        labels,
        multiplicities: mults,
    };
    debug_assert!(g.validate(theta).is_ok());
    Ok(g)
}

/// Can `target` be written as `Σ_{i ≥ from} c_i · dims[i]` with `c_i ≥ 0`?
struct DimKnapsack {
    dims: Vec<Vec<usize>>,
    failed: HashSet<(Vec<usize>, usize)>,
}

impl DimKnapsack {
    fn new(dims: Vec<Vec<usize>>) -> Self {
        DimKnapsack {
            dims,
            failed: HashSet::new(),
        }
    }

    fn feasible(&mut self, target: &[usize], from: usize) -> bool {
        if target.iter().all(|&d| d == 0) {
            return true;
        }
        if self.failed.contains(&(target.to_vec(), from)) {
            return false;
        }
        for i in from..self.dims.len() {
            let d = &self.dims[i];
            if d.iter().zip(target).all(|(a, b)| a <= b) && d.iter().any(|&a| a > 0) {
                let rest: Vec<usize> = target.iter().zip(d).map(|(b, a)| b - a).collect();
                if self.feasible(&rest, i) {
                    return true;
                }
            }
        }
        self.failed.insert((target.to_vec(), from));
        false
    }
}

/// Whether every filtration of an object has the same length: true when the
/// dimension vectors of the members are linearly independent over `Q`
/// (certified by full rank modulo a large prime).
pub fn length_is_exact(theta: &ThetaFamily) -> bool {
    let q = PrimeField::new(65521).expect("65521 is prime");
    let cols: Vec<Vec<u32>> = theta
        .members()
        .iter()
        .map(|m| m.dims().iter().map(|&d| d as u32).collect())
        .collect();
    let n = theta.member(0).dims().len();
    Matrix::from_columns(q, n, &cols).rank() == theta.len()
}

struct Decider<'a> {
    theta: &'a ThetaFamily,
    budget: &'a mut Budget,
    knapsack: DimKnapsack,
    /// Smallest starting label known to fail, per iso class.
    failures: IsoClassMemo<usize>,
}

impl Decider<'_> {
    fn peel(&mut self, n: &Representation, min_label: usize) -> Result<Option<Filtration>> {
        if n.is_zero() {
            return Filtration::empty(n).map(Some);
        }
        if !self.knapsack.feasible(n.dims(), min_label) {
            return Ok(None);
        }
        if let Some(&l) = self.failures.get(n)? {
            if l <= min_label {
                return Ok(None);
            }
        }
        let p = n.field().modulus();
        for i in min_label..self.theta.len() {
            let target = self.theta.member(i);
            if target.dims().iter().zip(n.dims()).any(|(a, b)| a > b) {
                continue;
            }
            let hom = hom_space(n, target)?;
            if hom.cardinality() > SEARCH_BOUND as u128 {
                return Err(Error::SearchBoundExceeded {
                    size: format!("{p}^{}", hom.dim()),
                    bound: SEARCH_BOUND,
                });
            }
            let mut kernels: IsoClassMemo<()> = IsoClassMemo::default();
            for coeffs in Tuples::new(p, hom.dim()) {
                self.budget.spend(1)?;
                let f = hom.element(&coeffs);
                if !f.is_surjective() {
                    continue;
                }
                let (k, incl) = kernel_sub(&f)?;
                if !kernels.insert(k.clone(), ())? {
                    continue;
                }
                if let Some(mut sub) = self.peel(&k, i)? {
                    sub.push(Conflation::new(incl, f)?, i, RepMorphism::identity(target));
                    return Ok(Some(sub));
                }
            }
        }
        match self.failures.get_mut(n)? {
            Some(l) => *l = (*l).min(min_label),
            None => {
                self.failures.insert(n.clone(), min_label)?;
            }
        }
        Ok(None)
    }
}

/// A Θ-filtration of `m`, or `None` when `m ∉ F(Θ)`.
///
/// Searches top-down: every epimorphism `M → Θ(i)` is tried, and along a
/// peel sequence labels never decrease, which loses nothing because every
/// filtration can be reordered. The result is ordered.
pub fn decide_filtered(m: &Representation, theta: &ThetaFamily, budget: &mut Budget) -> Result<Option<Filtration>> {
    m.check_compatible(theta.member(0))?;
    let dims = theta.members().iter().map(|x| x.dims().to_vec()).collect();
    let mut d = Decider {
        theta,
        budget,
        knapsack: DimKnapsack::new(dims),
        failures: IsoClassMemo::new(theta.members().to_vec()),
    };
    d.peel(m, 0)
}

/// Brute-force membership test for `F(Θ)` by recursion over all
/// subrepresentations, with no ordering assumption.
pub fn oracle_filtered(m: &Representation, theta: &ThetaFamily, budget: &mut Budget) -> Result<bool> {
    m.check_compatible(theta.member(0))?;
    let mut memo: IsoClassMemo<bool> = IsoClassMemo::new(theta.members().to_vec());
    oracle_rec(m, theta, budget, &mut memo)
}

fn oracle_rec(
    n: &Representation,
    theta: &ThetaFamily,
    budget: &mut Budget,
    memo: &mut IsoClassMemo<bool>,
) -> Result<bool> {
    if n.is_zero() {
        return Ok(true);
    }
    if let Some(&v) = memo.get(n)? {
        return Ok(v);
    }
    let mut found = false;
    for (sub, incl) in enumerate_subreps(n, budget)? {
        if sub.total_dim() == n.total_dim() {
            continue;
        }
        let (q, _) = cokernel_quot(&incl)?;
        let mut quotient_in_theta = false;
        for t in theta.members() {
            if is_isomorphic(&q, t)?.is_some() {
                quotient_in_theta = true;
                break;
            }
        }
        if quotient_in_theta && oracle_rec(&sub, theta, budget, memo)? {
            found = true;
            break;
        }
    }
    memo.insert(n.clone(), found)?;
    Ok(found)
}

/// The class of finite direct sums (zero included) of the given objects.
#[derive(Clone, Debug)]
pub struct SumsClass {
    members: Vec<Representation>,
    decompositions: Vec<Vec<(Representation, usize)>>,
}

impl SumsClass {
    pub fn new(members: Vec<Representation>) -> Result<Self> {
        let decompositions = members.iter().map(krull_schmidt).collect::<Result<_>>()?;
        Ok(SumsClass {
            members,
            decompositions,
        })
    }

    pub fn members(&self) -> &[Representation] {
        &self.members
    }

    /// Krull–Schmidt multiset of `m` as a nonnegative combination of the members'.
    pub fn contains(&self, m: &Representation) -> Result<bool> {
        if m.is_zero() {
            return Ok(true);
        }
        let target = krull_schmidt(m)?;
        let mut vectors = Vec::new();
        'member: for dec in &self.decompositions {
            let mut v = vec![0usize; target.len()];
            for (rep, mult) in dec {
                let mut hit = false;
                for (j, (t, _)) in target.iter().enumerate() {
                    if is_isomorphic(rep, t)?.is_some() {
                        v[j] += mult;
                        hit = true;
                        break;
                    }
                }
                if !hit {
                    continue 'member;
                }
            }
            if v.iter().any(|&x| x > 0) {
                vectors.push(v);
            }
        }
        let goal: Vec<usize> = target.iter().map(|(_, k)| *k).collect();
        Ok(DimKnapsack::new(vectors).feasible(&goal, 0))
    }
}

/// A class of objects built from direct-sum classes by the star operation.
#[derive(Clone, Debug)]
pub enum ClassExpr {
    Sums(SumsClass),
    /// `X ∗ Y`: objects `A` with a conflation `X → A → Y`.
    Star(Box<ClassExpr>, Box<ClassExpr>),
}

/// A witness for membership in a [`ClassExpr`].
#[derive(Clone, Debug)]
pub enum StarWitness {
    Member(Representation),
    Extension {
        conflation: Box<Conflation>,
        sub: Box<StarWitness>,
        quotient: Box<StarWitness>,
    },
}

impl StarWitness {
    /// The conflations along the left spine, bottom first.
    pub fn chain(&self) -> Vec<Conflation> {
        match self {
            StarWitness::Member(_) => Vec::new(),
            StarWitness::Extension { conflation, sub, .. } => {
                let mut c = sub.chain();
                c.push((**conflation).clone());
                c
            }
        }
    }
}

impl ClassExpr {
    pub fn sums(members: Vec<Representation>) -> Result<Self> {
        SumsClass::new(members).map(ClassExpr::Sums)
    }

    /// `{0}`.
    pub fn zero() -> Self {
        ClassExpr::Sums(SumsClass {
            members: Vec::new(),
            decompositions: Vec::new(),
        })
    }

    pub fn star(self, other: ClassExpr) -> ClassExpr {
        ClassExpr::Star(Box::new(self), Box::new(other))
    }

    /// `F_0(X) = {0}` and `F_n(X) = F_{n-1}(X) ∗ X`.
    pub fn filtered(x: &ClassExpr, n: usize) -> ClassExpr {
        (0..n).fold(ClassExpr::zero(), |acc, _| acc.star(x.clone()))
    }

    pub fn contains(&self, m: &Representation, budget: &mut Budget) -> Result<Option<StarWitness>> {
        let mut failures = HashMap::new();
        self.search(m, budget, &mut failures)
    }

    fn search(
        &self,
        m: &Representation,
        budget: &mut Budget,
        failures: &mut HashMap<*const ClassExpr, IsoClassMemo<()>>,
    ) -> Result<Option<StarWitness>> {
        let id = self as *const ClassExpr;
        if let Some(memo) = failures.get(&id) {
            if memo.get(m)?.is_some() {
                return Ok(None);
            }
        }
        let found = match self {
            ClassExpr::Sums(s) => s.contains(m)?.then(|| StarWitness::Member(m.clone())),
            ClassExpr::Star(x, y) => {
                let mut hit = None;
                for (sub, incl) in enumerate_subreps(m, budget)? {
                    let (q, proj) = cokernel_quot(&incl)?;
                    let Some(wq) = y.search(&q, budget, failures)? else {
                        continue;
                    };
                    let Some(ws) = x.search(&sub, budget, failures)? else {
                        continue;
                    };
                    hit = Some(StarWitness::Extension {
                        conflation: Box::new(Conflation::new(incl, proj)?),
                        sub: Box::new(ws),
                        quotient: Box::new(wq),
                    });
                    break;
                }
                hit
            }
        };
        if found.is_none() {
            failures.entry(id).or_default().insert(m.clone(), ())?;
        }
        Ok(found)
    }
}

/// Membership of `m` in `X_1 ∗ X_2 ∗ … ∗ X_k`, with the witness chain
/// `K_1 → K_2 → Q_2, …, K_{k-1} → M → Q_k` (bottom first).
pub fn star_membership(m: &Representation, classes: &[ClassExpr], budget: &mut Budget) -> Result<Option<Vec<Conflation>>> {
    let Some((first, rest)) = classes.split_first() else {
        return Ok(m.is_zero().then(Vec::new));
    };
    let expr = rest.iter().fold(first.clone(), |acc, x| acc.star(x.clone()));
    Ok(expr.contains(m, budget)?.map(|w| w.chain()))
}
