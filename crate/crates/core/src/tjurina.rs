//! Tjurina algebras of catalog singularities, the wild/tame split `d = n + 1`
//! versus `d = n`, derivations preserving `(f^m)`, and regularity of blow-up
//! charts of a one-parameter deformation.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::catalog::{self, classify, dynkin_data, CatalogError, DynkinType, Family, Grid, SingularityModel};
use crate::exec::Exec;
use crate::gfpoly::{Monomial, OrderKind, PolyError, PolyFp, Ring};
use crate::groebner::{
    buchberger, ideal_contains_one, normal_form, quotient_dimension, GroebnerError, IdealSpec,
    QuotientDimension,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TjurinaError {
    #[error("Tjurina algebra of {0} is infinite-dimensional (broken catalog entry)")]
    InfiniteTjurina(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("blow-up center: {0}")]
    InvalidCenter(String),
    #[error("structural error in chart {chart}: {reason}")]
    Structural { chart: String, reason: String },
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `(g, dg/dx_1, ..., dg/dx_k)`
pub fn jacobian_ideal(g: &PolyFp) -> Result<IdealSpec, GroebnerError> {
    let mut gens = vec![g.clone()];
    gens.extend(g.gradient());
    IdealSpec::new(gens)
}

/// `dim_k k[x,y,z] / (g, g_x, g_y, g_z)` under the default grevlex order.
pub fn tjurina_dimension(model: &SingularityModel) -> Result<usize, TjurinaError> {
    tjurina_dimension_with(model, OrderKind::Grevlex)
}

pub fn tjurina_dimension_with(
    model: &SingularityModel,
    order: OrderKind,
) -> Result<usize, TjurinaError> {
    tjurina_of(&model.equation, order)?
        .finite()
        .ok_or_else(|| TjurinaError::InfiniteTjurina(model.dynkin.to_string()))
}

/// Tjurina dimension of an arbitrary hypersurface equation.
pub fn tjurina_of(g: &PolyFp, order: OrderKind) -> Result<QuotientDimension, TjurinaError> {
    let ideal = jacobian_ideal(g)?.with_order(order);
    Ok(quotient_dimension(&buchberger(&ideal)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TjurinaReport {
    pub family: Family,
    pub index: u32,
    #[serde(rename = "char")]
    pub characteristic: u64,
    pub d: usize,
    pub n: u32,
    pub predicted_d: usize,
    pub wild: bool,
    pub matches: bool,
    #[serde(skip)]
    pub equation: String,
}

impl TjurinaReport {
    pub fn dynkin(&self) -> DynkinType {
        DynkinType::new(self.family, self.index).expect("constructed from a valid type")
    }
}

/// Computes `d`, and compares with `n + 1` for wild A-singularities and `n` otherwise.
pub fn tjurina_report(dynkin: DynkinType, p: u64) -> Result<TjurinaReport, TjurinaError> {
    tjurina_report_with(dynkin, p, OrderKind::Grevlex)
}

pub fn tjurina_report_with(
    dynkin: DynkinType,
    p: u64,
    order: OrderKind,
) -> Result<TjurinaReport, TjurinaError> {
    let model = catalog::equation_for(dynkin, p)?;
    let d = tjurina_dimension_with(&model, order)?;
    let n = dynkin_data(dynkin).curve_count;
    let wild = classify(dynkin, p)?.wild_a;
    let predicted_d = n as usize + usize::from(wild);
    Ok(TjurinaReport {
        family: dynkin.family(),
        index: dynkin.index(),
        characteristic: p,
        d,
        n,
        predicted_d,
        wild,
        matches: d == predicted_d,
        equation: model.equation.to_string(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridReport {
    pub rows: Vec<TjurinaReport>,
    /// Pairs outside the catalog (not linearly reductive).
    pub skipped: usize,
}

impl GridReport {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.matches)
    }

    pub fn wild_rows(&self) -> usize {
        self.rows.iter().filter(|r| r.wild).count()
    }
}

/// Reports over every catalog pair of the grid, sorted by type then characteristic.
pub fn tjurina_grid(grid: &Grid, order: OrderKind, exec: Exec) -> Result<GridReport, TjurinaError> {
    let results = exec.map(&grid.pairs(), |&(t, p)| tjurina_report_with(t, p, order));
    let mut rows = Vec::new();
    let mut skipped = 0;
    for r in results {
        match r {
            Ok(row) => rows.push(row),
            Err(TjurinaError::Catalog(CatalogError::NotInCatalog { .. })) => skipped += 1,
            Err(e) => return Err(e),
        }
    }
    Ok(GridReport { rows, skipped })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivationCheck {
    pub equation: String,
    pub multiplicity: u32,
    #[serde(rename = "char")]
    pub characteristic: u64,
    /// Every derivation of the plane maps `(f^m)` into itself.
    pub coincide: bool,
    pub p_divides_m: bool,
    /// Variables `v` with `d/dv (f^m)` outside `(f^m)`.
    pub failing: Vec<String>,
}

/// Decides whether `D(f^m) in (f^m)` for every derivation `D = a d/dx + b d/dy`.
///
/// The condition is linear in `(a, b)`, so it suffices to test `d/dx (f^m)` and
/// `d/dy (f^m)` for membership in the principal ideal `(f^m)`.
pub fn log_derivation_check(f: &PolyFp, m: u32) -> Result<DerivationCheck, TjurinaError> {
    if f.is_zero() {
        return Err(TjurinaError::Domain("f must be nonzero".into()));
    }
    if f.ring().nvars() != 2 {
        return Err(TjurinaError::Domain(format!(
            "f must live in a ring of two variables, got {}",
            f.ring().nvars()
        )));
    }
    if f.constant_term() != 0 {
        return Err(TjurinaError::Domain("f must vanish at the origin".into()));
    }
    if m == 0 {
        return Err(TjurinaError::Domain("multiplicity must be positive".into()));
    }
    let fm = f.pow(m);
    let gb = buchberger(&IdealSpec::new(vec![fm.clone()])?)?;
    let mut failing = Vec::new();
    for (i, name) in f.ring().vars().iter().enumerate() {
        if !normal_form(&fm.partial_index(i), &gb)?.is_zero() {
            failing.push(name.clone());
        }
    }
    let p = f.ring().characteristic();
    Ok(DerivationCheck {
        equation: f.to_string(),
        multiplicity: m,
        characteristic: p,
        coincide: failing.is_empty(),
        p_divides_m: (m as u64).is_multiple_of(p),
        failing,
    })
}

/// Named centers for blowing up `z^2 + tz + xy = 0` in `A^4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Center {
    /// `(x, y, z + t)`: the section through the singular point of the special fibre.
    Section,
    /// `(x, y, z)`
    Origin,
    /// `(x, z + t)`: a plane contained in the total space (Weil divisor).
    Divisor,
}

impl Center {
    pub fn generators(self, ring: &Arc<Ring>) -> Result<Vec<PolyFp>, PolyError> {
        let v = |n: &str| PolyFp::var(ring, n);
        Ok(match self {
            Center::Section => vec![v("x")?, v("y")?, &v("z")? + &v("t")?],
            Center::Origin => vec![v("x")?, v("y")?, v("z")?],
            Center::Divisor => vec![v("x")?, &v("z")? + &v("t")?],
        })
    }
}

pub const FAMILY_VARS: [&str; 4] = ["x", "y", "z", "t"];

/// The deformation `z^2 + tz + xy` of the `A_1` singularity over `k[t]`, in `F_p[x, y, z, t]`.
pub fn a1_deformation(p: u64) -> Result<PolyFp, PolyError> {
    let ring = Ring::new(p, &FAMILY_VARS)?;
    let v = |n: &str| PolyFp::var(&ring, n);
    Ok(&(&v("z")?.pow(2) + &(&v("t")? * &v("z")?)) + &(&v("x")? * &v("y")?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChartReport {
    /// Chart coordinates; the exceptional coordinate keeps its pivot's name.
    pub vars: Vec<String>,
    pub exceptional: String,
    pub exceptional_multiplicity: u32,
    pub strict_transform: String,
    pub regular: bool,
    /// Reduced Groebner basis of the singular locus when the chart is not regular.
    pub singular_locus: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionReport {
    #[serde(rename = "char")]
    pub characteristic: u64,
    pub equation: String,
    pub center: Vec<String>,
    pub charts: Vec<ChartReport>,
    pub resolved: bool,
}

/// A linear center generator `c = a * pivot + rest`, with `pivot` occurring in no other generator.
struct Pivot {
    var: usize,
    inv_coeff: u64,
    rest: PolyFp,
}

fn pivots(center: &[PolyFp]) -> Result<Vec<Pivot>, TjurinaError> {
    let ring = center[0].ring().clone();
    let field = ring.field();
    let occurs = |c: &PolyFp, v: usize| c.terms().iter().any(|(m, _)| m.exponents()[v] > 0);
    let mut out: Vec<Pivot> = Vec::new();
    for (j, c) in center.iter().enumerate() {
        if **c.ring() != *ring {
            return Err(PolyError::ContextMismatch.into());
        }
        if c.total_degree() != Some(1) || c.constant_term() != 0 {
            return Err(TjurinaError::InvalidCenter(format!(
                "generator `{c}` is not a linear form"
            )));
        }
        let var = (0..ring.nvars())
            .find(|&v| {
                occurs(c, v)
                    && center.iter().enumerate().all(|(k, o)| k == j || !occurs(o, v))
                    && out.iter().all(|p| p.var != v)
            })
            .ok_or_else(|| {
                TjurinaError::InvalidCenter(format!(
                    "generator `{c}` has no variable private to it"
                ))
            })?;
        let unit = Monomial::var(ring.nvars(), var);
        let a = c.coeff(&unit).value();
        let rest = c - &PolyFp::term(&ring, a as i64, unit);
        out.push(Pivot {
            var,
            inv_coeff: field.inv(a).expect("nonzero"),
            rest,
        });
    }
    Ok(out)
}

/// Blows up `V(f)` along the linear center and checks every affine chart of the
/// strict transform for regularity with the Jacobian criterion: the chart is
/// regular iff `(h, dh/dv_1, ..., dh/dv_k)` is the unit ideal.
pub fn blow_up_check(f: &PolyFp, center: &[PolyFp]) -> Result<ResolutionReport, TjurinaError> {
    if center.is_empty() {
        return Err(TjurinaError::InvalidCenter("empty center".into()));
    }
    let ring = f.ring().clone();
    if **center[0].ring() != *ring {
        return Err(PolyError::ContextMismatch.into());
    }
    let pivots = pivots(center)?;
    let mut charts = Vec::with_capacity(pivots.len());
    for (i, exc) in pivots.iter().enumerate() {
        let names: Vec<String> = ring
            .vars()
            .iter()
            .enumerate()
            .map(|(v, name)| match pivots.iter().position(|p| p.var == v) {
                Some(j) if j != i => format!("{name}1"),
                _ => name.clone(),
            })
            .collect();
        let chart_ring = Ring::new(ring.characteristic(), &names)?;
        let e = PolyFp::var(&chart_ring, &names[exc.var])?;
        // Non-pivot variables map to themselves; pivots are solved from s_j = c_j.
        let identity: Vec<PolyFp> = names
            .iter()
            .map(|n| PolyFp::var(&chart_ring, n))
            .collect::<Result<_, _>>()?;
        let mut images: Vec<PolyFp> = identity.clone();
        let non_pivot: Vec<Option<&PolyFp>> = (0..ring.nvars())
            .map(|v| {
                if pivots.iter().any(|p| p.var == v) {
                    None
                } else {
                    Some(&identity[v])
                }
            })
            .collect();
        for (j, pv) in pivots.iter().enumerate() {
            let s = if j == i {
                e.clone()
            } else {
                &e * &identity[pv.var]
            };
            let rest = if pv.rest.is_zero() {
                PolyFp::zero(&chart_ring)
            } else {
                pv.rest.substitute_indexed(&non_pivot)?
            };
            images[pv.var] = (&s - &rest).scale(pv.inv_coeff);
        }
        let image_refs: Vec<Option<&PolyFp>> = images.iter().map(Some).collect();
        let total = f.substitute_indexed(&image_refs)?;

        let k = total
            .terms()
            .iter()
            .map(|(m, _)| m.exponents()[exc.var])
            .min()
            .unwrap_or(0);
        let chart_name = names[exc.var].clone();
        if total.is_zero() || k == 0 {
            return Err(TjurinaError::Structural {
                chart: chart_name,
                reason: format!("total transform `{total}` is not divisible by the exceptional equation"),
            });
        }
        let strict = PolyFp::from_terms(
            &chart_ring,
            total.terms().iter().map(|(m, c)| {
                let mut ex = m.exponents().to_vec();
                ex[exc.var] -= k;
                (Monomial::from_exponents(ex), *c as i64)
            }),
        );
        let gb = buchberger(&crate::tjurina::jacobian_ideal(&strict)?)?;
        let regular = ideal_contains_one(&gb);
        charts.push(ChartReport {
            vars: names,
            exceptional: chart_name,
            exceptional_multiplicity: k,
            strict_transform: strict.to_string(),
            regular,
            singular_locus: (!regular).then(|| gb.basis().iter().map(|g| g.to_string()).collect()),
        });
    }
    Ok(ResolutionReport {
        characteristic: ring.characteristic(),
        equation: f.to_string(),
        center: center.iter().map(|c| c.to_string()).collect(),
        resolved: charts.iter().all(|c| c.regular),
        charts,
    })
}

pub fn resolution_report(p: u64, center: Center) -> Result<ResolutionReport, TjurinaError> {
    let f = a1_deformation(p)?;
    let gens = center.generators(f.ring())?;
    blow_up_check(&f, &gens)
}

/// Blows up `z^2 + tz + xy = 0` along `(x, y, z + t)` and reports whether every
/// chart of the strict transform is regular.
pub fn simultaneous_resolution_check(p: u64) -> Result<bool, TjurinaError> {
    Ok(resolution_report(p, Center::Section)?.resolved)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(f: Family, i: u32) -> DynkinType {
        DynkinType::new(f, i).unwrap()
    }

    #[test]
    fn dimension_examples() {
        let m = catalog::equation_for(t(Family::A, 2), 5).unwrap();
        assert_eq!(tjurina_dimension(&m).unwrap(), 2);
        let m = catalog::equation_for(t(Family::A, 2), 3).unwrap();
        assert_eq!(tjurina_dimension(&m).unwrap(), 3);
        let m = catalog::equation_for(t(Family::E, 8), 7).unwrap();
        assert_eq!(tjurina_dimension(&m).unwrap(), 8);
    }

    #[test]
    fn report_examples() {
        let r = tjurina_report(t(Family::A, 3), 2).unwrap();
        assert_eq!((r.n, r.d, r.predicted_d, r.wild, r.matches), (3, 4, 4, true, true));
        let r = tjurina_report(t(Family::D, 4), 5).unwrap();
        assert_eq!((r.n, r.d, r.predicted_d, r.wild, r.matches), (4, 4, 4, false, true));
        let r = tjurina_report(t(Family::A, 1), 3).unwrap();
        assert_eq!((r.n, r.d, r.matches), (1, 1, true));
        assert!(matches!(
            tjurina_report(t(Family::E, 8), 5),
            Err(TjurinaError::Catalog(CatalogError::NotInCatalog { .. }))
        ));
    }

    fn plane(p: u64) -> Arc<Ring> {
        Ring::new(p, &["x", "y"]).unwrap()
    }

    #[test]
    fn derivation_examples() {
        let r = plane(2);
        let xy = &PolyFp::var(&r, "x").unwrap() * &PolyFp::var(&r, "y").unwrap();
        assert!(log_derivation_check(&xy, 2).unwrap().coincide);
        let c = log_derivation_check(&xy, 3).unwrap();
        assert!(!c.coincide);
        assert_eq!(c.failing, ["x", "y"]);
        let r5 = plane(5);
        let x = PolyFp::var(&r5, "x").unwrap();
        assert!(log_derivation_check(&x, 5).unwrap().coincide);
        assert!(!log_derivation_check(&x, 4).unwrap().coincide);
    }

    #[test]
    fn derivation_domain_errors() {
        let r = plane(3);
        assert!(matches!(
            log_derivation_check(&PolyFp::zero(&r), 3),
            Err(TjurinaError::Domain(_))
        ));
        let shifted = &PolyFp::var(&r, "x").unwrap() + &PolyFp::one(&r);
        assert!(matches!(
            log_derivation_check(&shifted, 3),
            Err(TjurinaError::Domain(_))
        ));
    }

    #[test]
    fn section_center_leaves_double_points() {
        // The x- and y-charts of the blow-up along (x, y, z+t) contain an
        // ordinary double point; only the (z+t)-chart is regular.
        let rep = resolution_report(2, Center::Section).unwrap();
        let regular: Vec<bool> = rep.charts.iter().map(|c| c.regular).collect();
        assert_eq!(regular, [false, false, true]);
        assert_eq!(rep.charts[0].strict_transform, "x*z1^2 + x*y1 + z1*t");
        assert!(!rep.resolved);
        assert!(!simultaneous_resolution_check(2).unwrap());
    }

    #[test]
    fn divisor_center_resolves() {
        for p in [2, 3, 5, 7] {
            let rep = resolution_report(p, Center::Divisor).unwrap();
            assert!(rep.resolved, "p={p}: {rep:?}");
            assert!(rep.charts.iter().all(|c| c.exceptional_multiplicity == 1));
        }
    }

    #[test]
    fn origin_center_fails_somewhere() {
        let rep = resolution_report(2, Center::Origin).unwrap();
        assert!(rep.charts.iter().any(|c| !c.regular));
    }

    #[test]
    fn center_must_contain_equation() {
        let f = a1_deformation(2).unwrap();
        let r = f.ring().clone();
        let gens = vec![PolyFp::var(&r, "x").unwrap(), PolyFp::var(&r, "t").unwrap()];
        assert!(matches!(
            blow_up_check(&f, &gens),
            Err(TjurinaError::Structural { .. })
        ));
        let nonlinear = vec![PolyFp::var(&r, "x").unwrap().pow(2)];
        assert!(matches!(
            blow_up_check(&f, &nonlinear),
            Err(TjurinaError::InvalidCenter(_))
        ));
    }
}
