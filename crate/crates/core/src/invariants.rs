//! Invariant rings of `mu_n` and of the binary dihedral group scheme `BD_n`
//! acting on `k[x, y]`, and their identification with catalog equations.
//!
//! `mu_n` acts through a `Z/n`-grading, so invariance is a weight-zero
//! condition on every term. This stays meaningful when `p | n`, where `mu_n`
//! is infinitesimal and has no nontrivial points to act with.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::catalog::{self, CatalogError, DynkinType, SingularityModel, EQUATION_VARS};
use crate::exec::Exec;
use crate::gfpoly::{Monomial, PolyError, PolyFp, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported action: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

const PLANE_VARS: [&str; 2] = ["x", "y"];
const RELATION_VARS: [&str; 3] = ["u", "v", "w"];

fn plane_ring(p: u64) -> Result<Arc<Ring>, PolyError> {
    Ring::new(p, &PLANE_VARS)
}

fn relation_ring(p: u64) -> Result<Arc<Ring>, PolyError> {
    Ring::new(p, &RELATION_VARS)
}

/// Diagonal `mu_n` action: `x^a y^b` has weight `a*w1 + b*w2 mod n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MuAction {
    order: u32,
    weights: (u32, u32),
}

impl MuAction {
    /// The action `x -> t x`, `y -> t^{n-1} y`.
    pub fn new(order: u32) -> Result<Self, InvariantError> {
        Self::with_weights(order, 1, order.saturating_sub(1))
    }

    pub fn with_weights(order: u32, w1: u32, w2: u32) -> Result<Self, InvariantError> {
        if order == 0 {
            return Err(InvariantError::Domain("mu_n needs n >= 1".into()));
        }
        Ok(MuAction {
            order,
            weights: (w1 % order, w2 % order),
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn weights(&self) -> (u32, u32) {
        self.weights
    }

    pub fn is_default(&self) -> bool {
        self.weights == (1 % self.order, (self.order - 1) % self.order)
    }

    pub fn weight(&self, m: &Monomial) -> u32 {
        let e = m.exponents();
        let n = self.order as u64;
        ((e[0] as u64 * self.weights.0 as u64 + e[1] as u64 * self.weights.1 as u64) % n) as u32
    }

    pub fn is_invariant(&self, f: &PolyFp) -> bool {
        f.terms().iter().all(|(m, _)| self.weight(m) == 0)
    }
}

/// Hilbert basis of the invariant monoid `{(a, b) : a w1 + b w2 = 0 mod n}`:
/// the invariant monomials that are not products of two nonconstant invariant
/// monomials. Listed in descending lex order (`x^n, ..., y^n`).
pub fn mu_invariant_basis(action: &MuAction) -> Vec<Monomial> {
    let bound = 2 * action.order;
    let invariant: Vec<Monomial> = (0..=bound)
        .flat_map(|a| (0..=bound - a).map(move |b| Monomial::from_exponents(vec![a, b])))
        .filter(|m| !m.is_one() && action.weight(m) == 0)
        .collect();
    let mut basis = minimal_elements(&invariant);
    basis.sort_by(|a, b| b.exponents().cmp(a.exponents()));
    basis
}

/// Elements not divisible by any other element of the set.
fn minimal_elements(set: &[Monomial]) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = Vec::new();
    for m in set {
        let reducible = set.iter().any(|d| d != m && d.divides(m));
        if !reducible && !out.contains(m) {
            out.push(m.clone());
        }
    }
    out
}

/// Checks that `u -> x^n, v -> y^n, w -> xy` kills `uv - w^n`, and that these three
/// monomials generate the invariant monoid (their minimal elements are the Hilbert basis).
pub fn verify_mu_relation(action: &MuAction, p: u64) -> Result<bool, InvariantError> {
    if !action.is_default() {
        return Err(InvariantError::Unsupported(
            "the A-type relation is stated for weights (1, n-1)".into(),
        ));
    }
    let n = action.order;
    let plane = plane_ring(p)?;
    let rel_ring = relation_ring(p)?;
    let (x, y) = plane_vars(&plane);
    let images = [x.pow(n), y.pow(n), &x * &y];
    let relation = mu_relation(&rel_ring, n);
    let substituted = substitute_uvw(&relation, &images)?;

    let claimed: Vec<Monomial> = images
        .iter()
        .map(|g| g.leading_monomial().expect("monomial").clone())
        .collect();
    let mut claimed = minimal_elements(&claimed);
    claimed.sort_by(|a, b| b.exponents().cmp(a.exponents()));
    Ok(substituted.is_zero() && claimed == mu_invariant_basis(action))
}

/// `uv - w^n`
pub fn mu_relation(ring: &Arc<Ring>, n: u32) -> PolyFp {
    let (u, v, w) = relation_vars(ring);
    &(&u * &v) - &w.pow(n)
}

/// The binary dihedral group scheme `BD_n` (`n >= 2`, `p >= 3`) with a triple of
/// candidate invariants, by default `x^{2n} + y^{2n}`, `(xy)^2`, `xy(x^{2n} - y^{2n})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BdnAction {
    n: u32,
    p: u64,
    generators: [PolyFp; 3],
}

impl BdnAction {
    pub fn new(n: u32, p: u64) -> Result<Self, InvariantError> {
        if n < 2 {
            return Err(InvariantError::Domain(format!("BD_n needs n >= 2, got {n}")));
        }
        if p < 3 {
            return Err(InvariantError::Domain(format!(
                "BD_n is only linearly reductive for p >= 3, got {p}"
            )));
        }
        let ring = plane_ring(p)?;
        let (x, y) = plane_vars(&ring);
        let x2n = x.pow(2 * n);
        let y2n = y.pow(2 * n);
        let xy = &x * &y;
        let generators = [&x2n + &y2n, xy.pow(2), &xy * &(&x2n - &y2n)];
        Ok(BdnAction { n, p, generators })
    }

    /// Replaces the candidate invariants, e.g. to test a non-invariant triple.
    pub fn with_generators(mut self, generators: [PolyFp; 3]) -> Result<Self, InvariantError> {
        let ring = plane_ring(self.p)?;
        for g in &generators {
            if **g.ring() != *ring {
                return Err(PolyError::ContextMismatch.into());
            }
        }
        self.generators = generators;
        Ok(self)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn generators(&self) -> &[PolyFp; 3] {
        &self.generators
    }

    /// The diagonal `mu_{2n}` with weights `(1, 2n - 1)`.
    pub fn diagonal_part(&self) -> MuAction {
        MuAction::new(2 * self.n).expect("2n >= 4")
    }

    /// The substitution `x -> y, y -> -x` given by the matrix `(0 1; -1 0)`.
    pub fn swap(&self, f: &PolyFp) -> Result<PolyFp, InvariantError> {
        let ring = f.ring();
        let (x, y) = plane_vars(ring);
        Ok(f.substitute_indexed(&[Some(&y), Some(&-&x)])?)
    }
}

/// `w^2 - u^2 v + 4 v^{n+1}`, the relation satisfied by the default `BD_n` invariants.
///
/// Substituting gives `w^2 - u^2 v = -4 (xy)^{2n+2} = -4 v^{n+1}`, so this holds over `Z`.
/// With the opposite sign on `v^{n+1}` one obtains the same singularity after
/// rescaling by a square root of `-1`.
pub fn bdn_relation(ring: &Arc<Ring>, n: u32) -> PolyFp {
    let (u, v, w) = relation_vars(ring);
    &(&w.pow(2) - &(&u.pow(2) * &v)) + &v.pow(n + 1).scale(4)
}

/// Every generator has weight zero under the diagonal part and is fixed by the swap.
pub fn verify_bdn_invariance(action: &BdnAction) -> Result<bool, InvariantError> {
    let diag = action.diagonal_part();
    for g in &action.generators {
        if !diag.is_invariant(g) || action.swap(g)? != *g {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn verify_bdn_relation(action: &BdnAction) -> Result<bool, InvariantError> {
    let rel_ring = relation_ring(action.p)?;
    let relation = bdn_relation(&rel_ring, action.n);
    Ok(substitute_uvw(&relation, &action.generators)?.is_zero())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuotientAction {
    Mu(MuAction),
    BinaryDihedral(BdnAction),
}

/// Matches a verified quotient presentation to its catalog model:
/// `mu_n` with weights `(1, n-1)` gives `A_{n-1}`, `BD_n` gives `D_{n+2}`.
pub fn identify_quotient(
    action: &QuotientAction,
    p: u64,
) -> Result<SingularityModel, InvariantError> {
    match action {
        QuotientAction::Mu(mu) => {
            if !mu.is_default() || mu.order < 2 {
                return Err(InvariantError::Unsupported(
                    "only mu_n with n >= 2 and weights (1, n-1) gives an A singularity".into(),
                ));
            }
            if !verify_mu_relation(mu, p)? {
                return Err(InvariantError::Unsupported("relation check failed".into()));
            }
            let model = catalog::equation_for(DynkinType::a(mu.order - 1)?, p)?;
            // uv - w^n under u, v, w -> x, y, z is the catalog equation verbatim.
            let renamed = rename_to_xyz(&mu_relation(&relation_ring(p)?, mu.order), p)?;
            if renamed != model.equation {
                return Err(InvariantError::Unsupported(
                    "relation does not match the catalog equation".into(),
                ));
            }
            Ok(model)
        }
        QuotientAction::BinaryDihedral(bd) => {
            if bd.p != p {
                return Err(InvariantError::Domain(format!(
                    "action is over F_{} but F_{p} was requested",
                    bd.p
                )));
            }
            if !verify_bdn_invariance(bd)? || !verify_bdn_relation(bd)? {
                return Err(InvariantError::Unsupported(
                    "generators are not verified BD_n invariants".into(),
                ));
            }
            Ok(catalog::equation_for(DynkinType::d_from_dihedral(bd.n)?, p)?)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantCheck {
    pub group: &'static str,
    pub n: u32,
    #[serde(rename = "char")]
    pub characteristic: u64,
    pub invariance: bool,
    pub relation: bool,
}

/// `verify_mu_relation` over `1..=max_n` times `primes`.
pub fn mu_grid(max_n: u32, primes: &[u64], exec: Exec) -> Result<Vec<InvariantCheck>, InvariantError> {
    let pairs: Vec<(u32, u64)> = (1..=max_n)
        .flat_map(|n| primes.iter().map(move |&p| (n, p)))
        .collect();
    exec.map(&pairs, |&(n, p)| {
        let action = MuAction::new(n)?;
        let relation = verify_mu_relation(&action, p)?;
        let basis = mu_invariant_basis(&action);
        let invariance = basis.iter().all(|m| action.weight(m) == 0);
        Ok(InvariantCheck {
            group: "mu",
            n,
            characteristic: p,
            invariance,
            relation,
        })
    })
    .into_iter()
    .collect()
}

/// `verify_bdn_invariance` and `verify_bdn_relation` over `2..=max_n` times the primes `>= 3`.
pub fn bdn_grid(max_n: u32, primes: &[u64], exec: Exec) -> Result<Vec<InvariantCheck>, InvariantError> {
    let pairs: Vec<(u32, u64)> = (2..=max_n)
        .flat_map(|n| primes.iter().filter(|&&p| p >= 3).map(move |&p| (n, p)))
        .collect();
    exec.map(&pairs, |&(n, p)| {
        let action = BdnAction::new(n, p)?;
        Ok(InvariantCheck {
            group: "bd",
            n,
            characteristic: p,
            invariance: verify_bdn_invariance(&action)?,
            relation: verify_bdn_relation(&action)?,
        })
    })
    .into_iter()
    .collect()
}

fn plane_vars(ring: &Arc<Ring>) -> (PolyFp, PolyFp) {
    (
        PolyFp::var(ring, "x").expect("plane ring"),
        PolyFp::var(ring, "y").expect("plane ring"),
    )
}

fn relation_vars(ring: &Arc<Ring>) -> (PolyFp, PolyFp, PolyFp) {
    (
        PolyFp::var(ring, "u").expect("relation ring"),
        PolyFp::var(ring, "v").expect("relation ring"),
        PolyFp::var(ring, "w").expect("relation ring"),
    )
}

fn substitute_uvw(relation: &PolyFp, images: &[PolyFp]) -> Result<PolyFp, PolyError> {
    let assignment: HashMap<&str, PolyFp> = RELATION_VARS
        .iter()
        .copied()
        .zip(images.iter().cloned())
        .collect();
    relation.substitute(&assignment)
}

fn rename_to_xyz(f: &PolyFp, p: u64) -> Result<PolyFp, InvariantError> {
    let target = catalog::equation_ring(p)?;
    let images: Vec<PolyFp> = EQUATION_VARS
        .iter()
        .map(|v| PolyFp::var(&target, v))
        .collect::<Result<_, _>>()?;
    Ok(substitute_uvw(f, &images)?)
}
