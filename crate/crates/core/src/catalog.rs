//! ADE types: Dynkin graph data, linear reductivity / tameness by characteristic,
//! and hypersurface equations in the range where the type determines the
//! singularity up to analytic isomorphism.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gfpoly::{is_prime, Monomial, PolyError, PolyFp, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("invalid Dynkin type {family}{index}: {reason}")]
    InvalidType {
        family: Family,
        index: u32,
        reason: &'static str,
    },
    #[error("cannot parse Dynkin type `{0}` (expected e.g. A5, D4, E8)")]
    Unparsable(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error(
        "{dynkin} in characteristic {p} is not a linearly reductive quotient; its equation is \
         not determined by the type (see Artin's lists of rational double points in small \
         characteristic, Coverings of the rational double points in characteristic p, sections 3-5)"
    )]
    NotInCatalog { dynkin: DynkinType, p: u64 },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::D => "D",
            Family::E => "E",
        })
    }
}

/// A simply laced Dynkin diagram, indexed by its number of nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DynkinType {
    family: Family,
    index: u32,
}

impl DynkinType {
    pub fn new(family: Family, index: u32) -> Result<Self, CatalogError> {
        let reason = match family {
            Family::A if index < 1 => Some("A needs index >= 1"),
            Family::D if index < 4 => Some("D needs index >= 4"),
            Family::E if !(6..=8).contains(&index) => Some("E needs index 6, 7 or 8"),
            _ => None,
        };
        match reason {
            Some(reason) => Err(CatalogError::InvalidType {
                family,
                index,
                reason,
            }),
            None => Ok(DynkinType { family, index }),
        }
    }

    pub fn a(m: u32) -> Result<Self, CatalogError> {
        Self::new(Family::A, m)
    }

    pub fn d(m: u32) -> Result<Self, CatalogError> {
        Self::new(Family::D, m)
    }

    pub fn e(k: u32) -> Result<Self, CatalogError> {
        Self::new(Family::E, k)
    }

    /// `D_{n+2}` from the binary dihedral parameter `n >= 2`.
    pub fn d_from_dihedral(n: u32) -> Result<Self, CatalogError> {
        Self::new(Family::D, n + 2)
    }

    /// For `D_m`, the binary dihedral parameter `n = m - 2`.
    pub fn dihedral_parameter(&self) -> Option<u32> {
        (self.family == Family::D).then(|| self.index - 2)
    }

    /// For `A_m`, the order `m + 1` of the cyclic group scheme.
    pub fn cyclic_order(&self) -> Option<u32> {
        (self.family == Family::A).then(|| self.index + 1)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    /// Edges of the standard diagram on nodes `0..index`.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let n = self.index;
        match self.family {
            Family::A => (1..n).map(|i| (i - 1, i)).collect(),
            // path 0..n-2 with node n-1 attached to node n-3
            Family::D => {
                let mut e: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
                e.push((n - 3, n - 1));
                e
            }
            // path 0..n-2 with node n-1 attached to node 2
            Family::E => {
                let mut e: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
                e.push((2, n - 1));
                e
            }
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.index)
    }
}

impl FromStr for DynkinType {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || CatalogError::Unparsable(s.to_string());
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('D') => Family::D,
            Some('E') => Family::E,
            _ => return Err(bad()),
        };
        let rest = chars.as_str().trim_start_matches('_');
        let index: u32 = rest.parse().map_err(|_| bad())?;
        DynkinType::new(family, index)
    }
}

impl Serialize for DynkinType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Graph data of a Dynkin diagram viewed as the dual graph of the exceptional
/// curves: `t_i` is the number of neighbours of curve `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DynkinData {
    pub curve_count: u32,
    pub node_degrees: Vec<u32>,
    pub sum_t: u32,
    pub h0_theta: i64,
}

pub fn dynkin_data(dynkin: DynkinType) -> DynkinData {
    let n = dynkin.index;
    let mut degrees = vec![0u32; n as usize];
    for (a, b) in dynkin.edges() {
        degrees[a as usize] += 1;
        degrees[b as usize] += 1;
    }
    let sum_t: u32 = degrees.iter().sum();
    DynkinData {
        curve_count: n,
        node_degrees: degrees,
        sum_t,
        h0_theta: 3 * n as i64 - sum_t as i64,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationRecord {
    pub linearly_reductive: bool,
    pub tame: bool,
    pub wild_a: bool,
}

/// Whether the canonical singularity of the given type in characteristic `p`
/// is a linearly reductive (resp. tame) quotient singularity.
pub fn classify(dynkin: DynkinType, p: u64) -> Result<ClassificationRecord, CatalogError> {
    if !is_prime(p) {
        return Err(CatalogError::NotPrime(p));
    }
    let record = match dynkin.family {
        // A_{n-1} = mu_n quotient: always linearly reductive, tame iff p does not divide n.
        Family::A => {
            let n = dynkin.index as u64 + 1;
            let divides = n.is_multiple_of(p);
            ClassificationRecord {
                linearly_reductive: true,
                tame: !divides,
                wild_a: divides,
            }
        }
        // D_{n+2} = BD_n quotient for p >= 3; tame iff additionally p does not divide n.
        Family::D => {
            let n = dynkin.index as u64 - 2;
            ClassificationRecord {
                linearly_reductive: p >= 3,
                tame: p >= 3 && !n.is_multiple_of(p),
                wild_a: false,
            }
        }
        Family::E => {
            let threshold = if dynkin.index == 8 { 7 } else { 5 };
            ClassificationRecord {
                linearly_reductive: p >= threshold,
                tame: p >= threshold,
                wild_a: false,
            }
        }
    };
    Ok(record)
}

/// Exponent of one variable in an equation template.
#[derive(Clone, Copy, Debug)]
enum Exp {
    Fixed(u32),
    /// `index + offset`
    Index(i32),
}

impl Exp {
    fn eval(self, index: u32) -> u32 {
        match self {
            Exp::Fixed(e) => e,
            Exp::Index(off) => (index as i32 + off) as u32,
        }
    }
}

struct EquationRow {
    family: Family,
    /// `None` covers the whole family.
    index: Option<u32>,
    min_char: u64,
    terms: &'static [(i64, [Exp; 3])],
}

use Exp::{Fixed as F, Index as I};

/// Normal forms in variables `(x, y, z)`, valid from `min_char` upwards.
const EQUATIONS: &[EquationRow] = &[
    // A_m: xy - z^{m+1}
    EquationRow {
        family: Family::A,
        index: None,
        min_char: 2,
        terms: &[(1, [F(1), F(1), F(0)]), (-1, [F(0), F(0), I(1)])],
    },
    // D_m, m = n + 2: z^2 - x^2 y - 4 y^{n+1}
    EquationRow {
        family: Family::D,
        index: None,
        min_char: 3,
        terms: &[
            (1, [F(0), F(0), F(2)]),
            (-1, [F(2), F(1), F(0)]),
            (-4, [F(0), I(-1), F(0)]),
        ],
    },
    // E6: x^2 + y^3 + z^4
    EquationRow {
        family: Family::E,
        index: Some(6),
        min_char: 5,
        terms: &[
            (1, [F(2), F(0), F(0)]),
            (1, [F(0), F(3), F(0)]),
            (1, [F(0), F(0), F(4)]),
        ],
    },
    // E7: x^2 + y^3 + y z^3
    EquationRow {
        family: Family::E,
        index: Some(7),
        min_char: 5,
        terms: &[
            (1, [F(2), F(0), F(0)]),
            (1, [F(0), F(3), F(0)]),
            (1, [F(0), F(1), F(3)]),
        ],
    },
    // E8: x^2 + y^3 + z^5
    EquationRow {
        family: Family::E,
        index: Some(8),
        min_char: 7,
        terms: &[
            (1, [F(2), F(0), F(0)]),
            (1, [F(0), F(3), F(0)]),
            (1, [F(0), F(0), F(5)]),
        ],
    },
];

pub const EQUATION_VARS: [&str; 3] = ["x", "y", "z"];

/// A catalog singularity: type, characteristic and equation `g` in `F_p[x, y, z]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularityModel {
    pub dynkin: DynkinType,
    pub characteristic: u64,
    pub equation: PolyFp,
}

pub fn equation_ring(p: u64) -> Result<Arc<Ring>, CatalogError> {
    Ok(Ring::new(p, &EQUATION_VARS)?)
}

pub fn equation_for(dynkin: DynkinType, p: u64) -> Result<SingularityModel, CatalogError> {
    if !classify(dynkin, p)?.linearly_reductive {
        return Err(CatalogError::NotInCatalog { dynkin, p });
    }
    let row = EQUATIONS
        .iter()
        .find(|r| {
            r.family == dynkin.family
                && r.index.is_none_or(|i| i == dynkin.index)
                && p >= r.min_char
        })
        .ok_or(CatalogError::NotInCatalog { dynkin, p })?;
    let ring = equation_ring(p)?;
    let terms = row.terms.iter().map(|(c, exps)| {
        let e: Vec<u32> = exps.iter().map(|x| x.eval(dynkin.index)).collect();
        (Monomial::from_exponents(e), *c)
    });
    Ok(SingularityModel {
        dynkin,
        characteristic: p,
        equation: PolyFp::from_terms(&ring, terms),
    })
}

/// The (type, characteristic) grid used by reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    pub types: Vec<DynkinType>,
    pub primes: Vec<u64>,
}

impl Grid {
    /// `A_1..A_max_a`, `D_4..D_max_d`, `E_6, E_7, E_8` against all primes `<= max_p`.
    pub fn new(max_p: u64, max_a: u32, max_d: u32) -> Self {
        let mut types: Vec<DynkinType> = (1..=max_a).map(|m| DynkinType::a(m).unwrap()).collect();
        types.extend((4..=max_d).map(|m| DynkinType::d(m).unwrap()));
        types.extend((6..=8).map(|k| DynkinType::e(k).unwrap()));
        Grid {
            types,
            primes: (2..=max_p).filter(|&p| is_prime(p)).collect(),
        }
    }

    /// All pairs, sorted by type then characteristic.
    pub fn pairs(&self) -> Vec<(DynkinType, u64)> {
        let mut out: Vec<_> = self
            .types
            .iter()
            .flat_map(|t| self.primes.iter().map(move |p| (*t, *p)))
            .collect();
        out.sort();
        out
    }
}

impl Default for Grid {
    fn default() -> Self {
        Grid::new(13, 12, 8)
    }
}

/// One catalog row in its JSON form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogRecord {
    pub family: Family,
    pub index: u32,
    #[serde(rename = "char")]
    pub characteristic: u64,
    pub equation: Option<String>,
    pub classification: ClassificationRecord,
}

pub fn catalog_record(dynkin: DynkinType, p: u64) -> Result<CatalogRecord, CatalogError> {
    let classification = classify(dynkin, p)?;
    let equation = match equation_for(dynkin, p) {
        Ok(m) => Some(m.equation.to_string()),
        Err(CatalogError::NotInCatalog { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(CatalogRecord {
        family: dynkin.family,
        index: dynkin.index,
        characteristic: p,
        equation,
        classification,
    })
}
