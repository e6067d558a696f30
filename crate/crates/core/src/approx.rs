//! Universal extensions, Θ-injective preenvelopes and Θ-projective
//! precovers, perpendicular classes and checks of the approximation property.

use crate::conflation::{connecting_map, et4_compose, et4op_compose, ext_space, realize_cocycle, Conflation, Side};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::quiverrep::{enumerate_reps, hom_space, is_indecomposable, RepMorphism, Representation, ThetaFamily};
use crate::search::Budget;

pub fn is_theta_injective(a: &Representation, theta: &ThetaFamily) -> Result<bool> {
    for t in theta.members() {
        if ext_space(t, a)?.dim() != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_theta_projective(a: &Representation, theta: &ThetaFamily) -> Result<bool> {
    for t in theta.members() {
        if ext_space(a, t)?.dim() != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `A^n → B → C` realizing the class whose components form the basis of
/// `E(C, A)`, so `Hom(A^n, A) → E(C, A)` is onto.
pub fn universal_extension_cover(c: &Representation, a: &Representation) -> Result<Conflation> {
    let space = ext_space(c, a)?;
    let n = space.dim();
    if n == 0 {
        return Err(Error::ZeroExt);
    }
    let basis = space.basis();
    let g: Vec<Matrix> = (0..basis[0].len())
        .map(|arrow| {
            basis[1..]
                .iter()
                .fold(basis[0][arrow].clone(), |acc, d| acc.vstack(&d[arrow]))
        })
        .collect();
    let conf = realize_cocycle(c, &a.power(n), &g)?;
    if connecting_map(&conf, a, Side::Right)?.rank() != n {
        return Err(Error::InvariantViolated("universal extension: connecting map is not onto".into()));
    }
    if ext_space(a, a)?.dim() == 0 && ext_space(conf.b(), a)?.dim() != 0 {
        return Err(Error::InvariantViolated("universal extension: E(B, A) does not vanish".into()));
    }
    Ok(conf)
}

/// `N → N_T → T^m` with `m = dim E(T, N)`, after which `E(T, N_T) = 0`.
/// The identity conflation when `m = 0`.
pub fn universal_extension_env(n: &Representation, t: &Representation) -> Result<Conflation> {
    let space = ext_space(t, n)?;
    let m = space.dim();
    if m == 0 {
        return Ok(Conflation::identity_left(n));
    }
    let basis = space.basis();
    let g: Vec<Matrix> = (0..basis[0].len())
        .map(|arrow| {
            basis[1..]
                .iter()
                .fold(basis[0][arrow].clone(), |acc, d| acc.hstack(&d[arrow]))
        })
        .collect();
    let conf = realize_cocycle(&t.power(m), n, &g)?;
    if connecting_map(&conf, t, Side::Left)?.rank() != m {
        return Err(Error::InvariantViolated("universal extension: connecting map is not onto".into()));
    }
    if ext_space(t, conf.b())?.dim() != 0 {
        return Err(Error::InvariantViolated("universal extension: E(T, N_T) does not vanish".into()));
    }
    Ok(conf)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ApproxSide {
    Envelope,
    Cover,
}

/// `X → Y_X → C_X` with `map` the inflation (envelope), or
/// `K_X → Q_X → X` with `map` the deflation (cover).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxResult {
    pub triangle: Conflation,
    pub map: RepMorphism,
    pub side: ApproxSide,
}

impl ApproxResult {
    /// `Y_X` or `Q_X`.
    pub fn approximation(&self) -> &Representation {
        self.triangle.b()
    }

    /// `C_X` or `K_X`.
    pub fn remainder(&self) -> &Representation {
        match self.side {
            ApproxSide::Envelope => self.triangle.c(),
            ApproxSide::Cover => self.triangle.a(),
        }
    }
}

/// An `I(Θ)`-preenvelope `X → Y_X` with cokernel in `F(Θ)`, by universal
/// extensions by `Θ(t), …, Θ(1)` in turn.
pub fn preenvelope(x: &Representation, theta: &ThetaFamily) -> Result<ApproxResult> {
    x.check_compatible(theta.member(0))?;
    let mut running = Conflation::identity_left(x);
    for i in (0..theta.len()).rev() {
        let step = universal_extension_env(running.b(), theta.member(i))?;
        if !step.c().is_zero() {
            running = et4_compose(&running, &step)?.c3;
        }
        for j in i..theta.len() {
            if ext_space(theta.member(j), running.b())?.dim() != 0 {
                return Err(Error::InvariantViolated(format!(
                    "preenvelope: E(Θ({}), −) survives the step for Θ({})",
                    j + 1,
                    i + 1
                )));
            }
        }
    }
    Ok(ApproxResult {
        map: running.x().clone(),
        triangle: running,
        side: ApproxSide::Envelope,
    })
}

/// A `P(Θ)`-precover `Q_X → X` with kernel in `F(Θ)`, by universal
/// extensions by `Θ(1), …, Θ(t)` in turn.
pub fn precover(x: &Representation, theta: &ThetaFamily) -> Result<ApproxResult> {
    x.check_compatible(theta.member(0))?;
    let mut running = Conflation::identity_right(x);
    for i in 0..theta.len() {
        let a = theta.member(i);
        if ext_space(running.b(), a)?.dim() != 0 {
            let step = universal_extension_cover(running.b(), a)?;
            running = et4op_compose(&step, &running)?.c3;
        }
        for j in 0..=i {
            if ext_space(running.b(), theta.member(j))?.dim() != 0 {
                return Err(Error::InvariantViolated(format!(
                    "precover: E(−, Θ({})) survives the step for Θ({})",
                    j + 1,
                    i + 1
                )));
            }
        }
    }
    Ok(ApproxResult {
        map: running.y().clone(),
        triangle: running,
        side: ApproxSide::Cover,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyEntry {
    pub object: Representation,
    /// `None` when the object is outside the class and was skipped.
    pub passed: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub entries: Vec<VerifyEntry>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed != Some(false))
    }

    pub fn checked(&self) -> usize {
        self.entries.iter().filter(|e| e.passed.is_some()).count()
    }

    pub fn skipped(&self) -> usize {
        self.entries.len() - self.checked()
    }
}

fn sort_key(m: &Representation) -> (usize, Vec<usize>, Vec<Vec<u32>>) {
    (m.total_dim(), m.dims().to_vec(), m.maps().iter().map(|a| a.entries().to_vec()).collect())
}

/// Rank of `Hom(from, to) → Hom(via, to)` (or its covariant dual) equals the target dimension.
fn induced_onto(
    domain: &[RepMorphism],
    target_src: &Representation,
    target_tgt: &Representation,
    apply: impl Fn(&RepMorphism) -> Result<RepMorphism>,
) -> Result<bool> {
    let h = hom_space(target_src, target_tgt)?;
    let cols = domain
        .iter()
        .map(|g| h.coordinates(&apply(g)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(target_src.field(), h.dim(), &cols).rank() == h.dim())
}

fn report(
    theta: &ThetaFamily,
    tests: &[Representation],
    in_class: impl Fn(&Representation, &ThetaFamily) -> Result<bool>,
    check: impl Fn(&Representation) -> Result<bool>,
) -> Result<VerifyReport> {
    let mut entries = Vec::with_capacity(tests.len());
    for t in tests {
        let passed = if in_class(t, theta)? { Some(check(t)?) } else { None };
        entries.push(VerifyEntry {
            object: t.clone(),
            passed,
        });
    }
    entries.sort_by_key(|e| sort_key(&e.object));
    Ok(VerifyReport { entries })
}

/// Every `Y' ∈ I(Θ)` among `tests` gets `Hom(Y_X, Y') → Hom(X, Y')`, `g ↦ g∘β`, checked onto.
pub fn verify_preenvelope(r: &ApproxResult, theta: &ThetaFamily, tests: &[Representation]) -> Result<VerifyReport> {
    if r.side != ApproxSide::Envelope {
        return Err(Error::InvalidConflation("not a preenvelope".into()));
    }
    let beta = &r.map;
    report(theta, tests, is_theta_injective, |y| {
        let hom = hom_space(beta.target(), y)?;
        induced_onto(hom.basis(), beta.source(), y, |g| g.compose(beta))
    })
}

/// Every `Q' ∈ P(Θ)` among `tests` gets `Hom(Q', Q_X) → Hom(Q', X)`, `g ↦ π∘g`, checked onto.
pub fn verify_precover(r: &ApproxResult, theta: &ThetaFamily, tests: &[Representation]) -> Result<VerifyReport> {
    if r.side != ApproxSide::Cover {
        return Err(Error::InvalidConflation("not a precover".into()));
    }
    let pi = &r.map;
    report(theta, tests, is_theta_projective, |q| {
        let hom = hom_space(q, pi.source())?;
        induced_onto(hom.basis(), q, pi.target(), |g| pi.compose(g))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PerpSide {
    /// `Hom(A, Θ) = 0`.
    HomLeft,
    /// `Hom(Θ, A) = 0`.
    HomRight,
    /// `E(A, Θ) = 0`, the class `P(Θ)`.
    ExtLeft,
    /// `E(Θ, A) = 0`, the class `I(Θ)`.
    ExtRight,
}

pub fn in_perp(a: &Representation, members: &[Representation], side: PerpSide) -> Result<bool> {
    for t in members {
        let d = match side {
            PerpSide::HomLeft => hom_space(a, t)?.dim(),
            PerpSide::HomRight => hom_space(t, a)?.dim(),
            PerpSide::ExtLeft => ext_space(a, t)?.dim(),
            PerpSide::ExtRight => ext_space(t, a)?.dim(),
        };
        if d != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn perp_class(theta: &ThetaFamily, side: PerpSide, candidates: &[Representation]) -> Result<Vec<Representation>> {
    let mut out = Vec::new();
    for c in candidates {
        if in_perp(c, theta.members(), side)? {
            out.push(c.clone());
        }
    }
    Ok(out)
}

/// Indecomposables with dimensions bounded by `max_dims` lying in the given perpendicular class.
pub fn indecomposables_in_perp(
    theta: &ThetaFamily,
    side: PerpSide,
    max_dims: &[usize],
    budget: &mut Budget,
) -> Result<Vec<Representation>> {
    let first = theta.member(0);
    let mut out = Vec::new();
    for m in enumerate_reps(first.quiver(), first.field(), max_dims, budget)? {
        if !m.is_zero() && is_indecomposable(&m)? && in_perp(&m, theta.members(), side)? {
            out.push(m);
        }
    }
    Ok(out)
}
