//! Buchberger's algorithm, normal forms, ideal membership and the dimension of
//! zero-dimensional quotient algebras.

use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::gfpoly::{Monomial, OrderKind, PolyError, PolyFp, Ring};

pub const DEFAULT_DEGREE_CAP: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("an ideal needs at least one nonzero generator")]
    EmptyIdeal,
    #[error("intermediate polynomial of degree {degree} exceeds the cap of {cap}")]
    DegreeCapExceeded { degree: u32, cap: u32 },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Generators of an ideal in a common ring. Zero generators are dropped.
#[derive(Clone, Debug)]
pub struct IdealSpec {
    ring: Arc<Ring>,
    generators: Vec<PolyFp>,
}

impl IdealSpec {
    pub fn new(generators: Vec<PolyFp>) -> Result<Self, GroebnerError> {
        let generators: Vec<PolyFp> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        let ring = generators
            .first()
            .ok_or(GroebnerError::EmptyIdeal)?
            .ring()
            .clone();
        if generators.iter().any(|g| **g.ring() != *ring) {
            return Err(PolyError::ContextMismatch.into());
        }
        Ok(IdealSpec { ring, generators })
    }

    /// The same generators under another monomial order.
    pub fn with_order(&self, kind: OrderKind) -> IdealSpec {
        let ring = self.ring.reordered(kind);
        let generators = self
            .generators
            .iter()
            .map(|g| g.in_ring(&ring).expect("same field and variables"))
            .collect();
        IdealSpec { ring, generators }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[PolyFp] {
        &self.generators
    }
}

#[derive(Clone, Copy, Debug)]
pub struct BuchbergerConfig {
    /// Hard limit on the total degree of any polynomial entering the basis.
    pub degree_cap: u32,
}

impl Default for BuchbergerConfig {
    fn default() -> Self {
        BuchbergerConfig {
            degree_cap: DEFAULT_DEGREE_CAP,
        }
    }
}

/// A reduced Groebner basis: monic, inter-reduced, sorted by ascending leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    basis: Vec<PolyFp>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn basis(&self) -> &[PolyFp] {
        &self.basis
    }

    pub fn leading_monomials(&self) -> Vec<&Monomial> {
        self.basis
            .iter()
            .map(|g| g.leading_monomial().expect("basis elements are nonzero"))
            .collect()
    }

    pub fn contains(&self, f: &PolyFp) -> Result<bool, GroebnerError> {
        Ok(normal_form(f, self)?.is_zero())
    }

    /// Standard monomials (divisible by no leading monomial) when the quotient is finite.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        let bounds = self.staircase_bounds()?;
        let lms = self.leading_monomials();
        let mut out = Vec::new();
        let mut exps = vec![0u32; bounds.len()];
        if bounds.contains(&0) {
            return Some(out);
        }
        loop {
            let m = Monomial::from_exponents(exps.clone());
            if !lms.iter().any(|l| l.divides(&m)) {
                out.push(m);
            }
            // odometer over the box prod [0, bound_i)
            let mut i = 0;
            loop {
                if i == exps.len() {
                    out.sort_by(|a, b| self.ring.order().compare(a, b));
                    return Some(out);
                }
                exps[i] += 1;
                if exps[i] < bounds[i] {
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
        }
    }

    /// Per-variable exponent of the smallest pure power among the leading monomials.
    /// `None` if some variable has no pure power (the quotient is infinite).
    fn staircase_bounds(&self) -> Option<Vec<u32>> {
        let n = self.ring.nvars();
        let lms = self.leading_monomials();
        if lms.iter().any(|m| m.is_one()) {
            return Some(vec![0; n]);
        }
        let mut bounds: Vec<Option<u32>> = vec![None; n];
        for m in lms {
            if let Some((v, e)) = m.pure_power() {
                bounds[v] = Some(bounds[v].map_or(e, |b| b.min(e)));
            }
        }
        bounds.into_iter().collect()
    }
}

impl fmt::Display for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, g) in self.basis.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str("}")
    }
}

/// `k`-dimension of `R / I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuotientDimension {
    Finite(usize),
    Infinite,
}

impl QuotientDimension {
    pub fn finite(self) -> Option<usize> {
        match self {
            QuotientDimension::Finite(d) => Some(d),
            QuotientDimension::Infinite => None,
        }
    }
}

impl fmt::Display for QuotientDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotientDimension::Finite(d) => write!(f, "{d}"),
            QuotientDimension::Infinite => f.write_str("INFINITE"),
        }
    }
}

impl Serialize for QuotientDimension {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            QuotientDimension::Finite(d) => s.serialize_u64(*d as u64),
            QuotientDimension::Infinite => s.serialize_str("INFINITE"),
        }
    }
}

/// Full reduction of `f` by `divisors` (all nonzero, same ring).
///
/// The remainder has no term divisible by any leading monomial of `divisors`.
pub fn reduce(f: &PolyFp, divisors: &[PolyFp]) -> PolyFp {
    let ring = f.ring().clone();
    let field = ring.field();
    let mut rest = f.clone();
    let mut remainder: Vec<(Monomial, u64)> = Vec::new();
    while let Some(lm) = rest.leading_monomial() {
        let lc = rest.leading_coeff();
        let hit = divisors.iter().find_map(|g| {
            let glm = g.leading_monomial()?;
            lm.div(glm).map(|q| (g, q))
        });
        match hit {
            Some((g, q)) => {
                let c = field.mul(lc, field.inv(g.leading_coeff()).expect("nonzero"));
                rest = &rest - &g.mul_term(&q, c);
            }
            None => {
                remainder.push((lm.clone(), lc));
                rest = rest.tail();
            }
        }
    }
    PolyFp::from_sorted_terms(&ring, remainder)
}

pub fn s_polynomial(f: &PolyFp, g: &PolyFp) -> PolyFp {
    let field = f.field();
    let (fm, gm) = match (f.leading_monomial(), g.leading_monomial()) {
        (Some(a), Some(b)) => (a, b),
        _ => return PolyFp::zero(f.ring()),
    };
    let l = fm.lcm(gm);
    let fc = field.inv(f.leading_coeff()).expect("nonzero");
    let gc = field.inv(g.leading_coeff()).expect("nonzero");
    &f.mul_term(&l.div(fm).unwrap(), fc) - &g.mul_term(&l.div(gm).unwrap(), gc)
}

fn check_degree(f: &PolyFp, cap: u32) -> Result<(), GroebnerError> {
    match f.total_degree() {
        Some(d) if d > cap => Err(GroebnerError::DegreeCapExceeded { degree: d, cap }),
        _ => Ok(()),
    }
}

pub fn buchberger(ideal: &IdealSpec) -> Result<GroebnerBasis, GroebnerError> {
    buchberger_with(ideal, &BuchbergerConfig::default())
}

/// Buchberger's algorithm with the normal selection strategy and both of
/// Buchberger's criteria, followed by minimalization and inter-reduction.
pub fn buchberger_with(
    ideal: &IdealSpec,
    config: &BuchbergerConfig,
) -> Result<GroebnerBasis, GroebnerError> {
    let ring = ideal.ring.clone();
    let order = ring.order().clone();
    let mut g: Vec<PolyFp> = Vec::with_capacity(ideal.generators.len());
    for f in &ideal.generators {
        check_degree(f, config.degree_cap)?;
        g.push(f.monic());
    }

    let lm = |p: &PolyFp| p.leading_monomial().expect("nonzero").clone();
    let mut pending: Vec<(usize, usize)> = Vec::new();
    for j in 0..g.len() {
        for i in 0..j {
            pending.push((i, j));
        }
    }
    let is_pending = |pending: &[(usize, usize)], a: usize, b: usize| {
        let key = (a.min(b), a.max(b));
        pending.contains(&key)
    };

    while !g.iter().any(|p| p.is_constant()) && !pending.is_empty() {
        // Normal strategy: smallest lcm first, ties broken by index.
        let pick = (0..pending.len())
            .min_by(|&a, &b| {
                let (ia, ja) = pending[a];
                let (ib, jb) = pending[b];
                let la = lm(&g[ia]).lcm(&lm(&g[ja]));
                let lb = lm(&g[ib]).lcm(&lm(&g[jb]));
                order.compare(&la, &lb).then((ia, ja).cmp(&(ib, jb)))
            })
            .unwrap();
        let (i, j) = pending.swap_remove(pick);
        let (mi, mj) = (lm(&g[i]), lm(&g[j]));
        if mi.is_coprime(&mj) {
            continue;
        }
        let l = mi.lcm(&mj);
        let chain = (0..g.len()).any(|k| {
            k != i
                && k != j
                && lm(&g[k]).divides(&l)
                && !is_pending(&pending, i, k)
                && !is_pending(&pending, j, k)
        });
        if chain {
            continue;
        }
        let h = reduce(&s_polynomial(&g[i], &g[j]), &g);
        if h.is_zero() {
            continue;
        }
        check_degree(&h, config.degree_cap)?;
        let new = g.len();
        g.push(h.monic());
        for k in 0..new {
            pending.push((k, new));
        }
    }

    if let Some(c) = g.iter().find(|p| p.is_constant()) {
        let one = c.monic();
        return Ok(GroebnerBasis {
            ring,
            basis: vec![one],
        });
    }

    // Minimal basis: drop elements whose leading monomial is a multiple of another's.
    g.sort_by(|a, b| order.compare(&lm(a), &lm(b)));
    let mut minimal: Vec<PolyFp> = Vec::new();
    for p in g {
        let m = lm(&p);
        if !minimal.iter().any(|q| lm(q).divides(&m)) {
            minimal.push(p);
        }
    }
    let basis: Vec<PolyFp> = (0..minimal.len())
        .map(|i| {
            let others: Vec<PolyFp> = minimal
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i)
                .map(|(_, q)| q.clone())
                .collect();
            reduce(&minimal[i], &others).monic()
        })
        .collect();
    Ok(GroebnerBasis { ring, basis })
}

/// Unique remainder of `f` modulo the ideal of `gb`.
pub fn normal_form(f: &PolyFp, gb: &GroebnerBasis) -> Result<PolyFp, GroebnerError> {
    if **f.ring() != *gb.ring {
        return Err(PolyError::ContextMismatch.into());
    }
    Ok(reduce(f, &gb.basis))
}

/// Counts standard monomials if every variable has a pure power among the
/// leading monomials; otherwise the quotient is infinite-dimensional.
pub fn quotient_dimension(gb: &GroebnerBasis) -> QuotientDimension {
    match gb.standard_monomials() {
        Some(ms) => QuotientDimension::Finite(ms.len()),
        None => QuotientDimension::Infinite,
    }
}

pub fn ideal_contains_one(gb: &GroebnerBasis) -> bool {
    gb.basis.len() == 1 && gb.basis[0].is_one()
}

/// Buchberger criterion: every S-polynomial of basis pairs reduces to zero.
pub fn satisfies_buchberger_criterion(gb: &GroebnerBasis) -> bool {
    let b = &gb.basis;
    (0..b.len()).all(|j| (0..j).all(|i| reduce(&s_polynomial(&b[i], &b[j]), b).is_zero()))
}

/// Reducedness: monic, and no term of any element divisible by another's leading monomial.
pub fn is_reduced(gb: &GroebnerBasis) -> bool {
    let lms = gb.leading_monomials();
    gb.basis.iter().enumerate().all(|(i, g)| {
        g.leading_coeff() == 1
            && g.terms().iter().all(|(m, _)| {
                lms.iter()
                    .enumerate()
                    .all(|(k, l)| k == i || !l.divides(m))
            })
    })
}
