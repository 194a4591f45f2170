//! Command-line front end: argument model, polynomial parser, dispatch and rendering.

pub mod args;
pub mod parser;
pub mod render;

use std::io::Write;

use duval_core::catalog::{self, classify, CatalogError, DynkinType, Grid};
use duval_core::gfpoly::{is_prime, PolyError, PolyFp, Ring};
use duval_core::groebner::{buchberger, quotient_dimension, GroebnerError, IdealSpec};
use duval_core::invariants::{bdn_grid, mu_grid, InvariantError};
use duval_core::lattice::{
    embedding_search, injectivity_cardinality_bound, k3_obstruction_report, smith_normal_form,
    EmbeddingQuery, LatticeError,
};
use duval_core::tjurina::{self, Center, TjurinaError};
use duval_core::Exec;
use serde_json::{json, Value};

pub use args::{Cli, Command, LatticeCommand};
pub use parser::{parse_poly, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// A failed command: usage errors exit 2, domain errors exit 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    Usage(String),
    Domain(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Domain(_) => EXIT_DOMAIN,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Domain(m) => m,
        }
    }
}

impl From<CatalogError> for Failure {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::NotInCatalog { .. } => Failure::Domain(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<PolyError> for Failure {
    fn from(e: PolyError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Usage(format!("polynomial syntax error at {e}"))
    }
}

impl From<GroebnerError> for Failure {
    fn from(e: GroebnerError) -> Self {
        match e {
            GroebnerError::Poly(p) => p.into(),
            other => Failure::Domain(other.to_string()),
        }
    }
}

impl From<TjurinaError> for Failure {
    fn from(e: TjurinaError) -> Self {
        match e {
            TjurinaError::Catalog(c) => c.into(),
            TjurinaError::Poly(p) => p.into(),
            other => Failure::Domain(other.to_string()),
        }
    }
}

impl From<InvariantError> for Failure {
    fn from(e: InvariantError) -> Self {
        match e {
            InvariantError::Catalog(c) => c.into(),
            InvariantError::Poly(p) => p.into(),
            other => Failure::Domain(other.to_string()),
        }
    }
}

impl From<LatticeError> for Failure {
    fn from(e: LatticeError) -> Self {
        match e {
            LatticeError::SearchTooLarge { .. } => Failure::Domain(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn prime(p: u64) -> Result<u64, Failure> {
    if is_prime(p) {
        Ok(p)
    } else {
        Err(Failure::Usage(format!("{p} is not prime")))
    }
}

fn primes_upto(max_p: u64) -> Vec<u64> {
    (2..=max_p).filter(|&p| is_prime(p)).collect()
}

fn classify_row(t: DynkinType, p: u64) -> Result<Value, Failure> {
    let c = classify(t, p)?;
    Ok(json!({
        "type": t.to_string(),
        "family": t.family(),
        "index": t.index(),
        "char": p,
        "linearly_reductive": c.linearly_reductive,
        "tame": c.tame,
        "wild": c.wild_a,
    }))
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

/// Computes the report of a command as JSON.
pub fn execute(cli: &Cli) -> Result<Value, Failure> {
    let order = cli.order_kind();
    let exec = Exec::default();
    match &cli.command {
        Command::Classify { ty, characteristic, max_p, paper_d_index } => {
            let types = match ty {
                Some(t) => vec![t.resolve(*paper_d_index)?],
                None => Grid::default().types,
            };
            let primes = match characteristic {
                Some(p) => vec![prime(*p)?],
                None => primes_upto(*max_p),
            };
            let mut rows = Vec::new();
            for t in &types {
                for &p in &primes {
                    rows.push(classify_row(*t, p)?);
                }
            }
            Ok(json!({ "rows": rows }))
        }
        Command::Equation { ty, characteristic, paper_d_index } => {
            let t = ty.resolve(*paper_d_index)?;
            let model = catalog::equation_for(t, prime(*characteristic)?)?;
            Ok(json!({
                "type": t.to_string(),
                "family": t.family(),
                "index": t.index(),
                "char": model.characteristic,
                "equation": model.equation.to_string(),
            }))
        }
        Command::Tjurina { ty, characteristic, paper_d_index } => {
            let t = ty.resolve(*paper_d_index)?;
            let report = tjurina::tjurina_report_with(t, prime(*characteristic)?, order)?;
            Ok(to_value(&report))
        }
        Command::TjurinaGrid { max_p, max_a, max_d } => {
            if *max_a < 1 || *max_d < 4 {
                return Err(Failure::Usage("need --max-a >= 1 and --max-d >= 4".into()));
            }
            let grid = Grid::new(*max_p, *max_a, *max_d);
            let report = tjurina::tjurina_grid(&grid, order, exec)?;
            Ok(json!({
                "rows": to_value(&report.rows),
                "skipped": report.skipped,
                "wild_rows": report.wild_rows(),
                "all_match": report.all_match(),
            }))
        }
        Command::Invariants { group, max_n, max_p } => {
            let primes = primes_upto(*max_p);
            let mut rows = Vec::new();
            if group.is_none_or(|g| g == args::Group::Mu) {
                rows.extend(mu_grid(max_n.unwrap_or(20), &primes, exec)?);
            }
            if group.is_none_or(|g| g == args::Group::Bd) {
                rows.extend(bdn_grid(max_n.unwrap_or(10), &primes, exec)?);
            }
            let all = rows.iter().all(|r| r.invariance && r.relation);
            Ok(json!({ "rows": to_value(&rows), "all_verified": all }))
        }
        Command::Derivation { poly, m, characteristic } => {
            let ring = Ring::new(prime(*characteristic)?, &["x", "y"])?;
            let f = parse_poly(poly, &ring)?;
            Ok(to_value(&tjurina::log_derivation_check(&f, *m)?))
        }
        Command::ResolutionCheck { characteristic, center } => {
            let center = match center {
                args::CenterArg::Section => Center::Section,
                args::CenterArg::Origin => Center::Origin,
                args::CenterArg::Divisor => Center::Divisor,
            };
            let report = tjurina::resolution_report(prime(*characteristic)?, center)?;
            Ok(to_value(&report))
        }
        Command::Lattice { command } => match command {
            LatticeCommand::Search { k, rank, modulus, square, non_orthogonal, budget } => {
                let q = EmbeddingQuery {
                    k: *k,
                    square: *square,
                    rank: *rank,
                    modulus: *modulus,
                    orthogonal: !non_orthogonal,
                };
                Ok(to_value(&embedding_search(&q, *budget, exec)?))
            }
            LatticeCommand::Snf { matrix } => Ok(json!({
                "matrix": matrix.0,
                "invariant_factors": smith_normal_form(&matrix.0),
            })),
            LatticeCommand::Bound { r1, r2, modulus } => {
                if *modulus < 2 {
                    return Err(Failure::Usage("modulus must be at least 2".into()));
                }
                Ok(json!({
                    "rank_domain": r1,
                    "rank_codomain": r2,
                    "modulus": modulus,
                    "injective_possible": injectivity_cardinality_bound(*r1, *r2, *modulus),
                }))
            }
        },
        Command::K3Report { budget } => Ok(to_value(&k3_obstruction_report(*budget, exec)?)),
        Command::Groebner { vars, characteristic, polys } => {
            let ring = Ring::new(prime(*characteristic)?, vars)?.reordered(order);
            let gens = polys
                .iter()
                .map(|s| parse_poly(s, &ring))
                .collect::<Result<Vec<_>, _>>()?;
            let gb = buchberger(&IdealSpec::new(gens)?)?;
            let standard = gb.standard_monomials().map(|ms| {
                ms.into_iter()
                    .map(|m| PolyFp::term(&ring, 1, m).to_string())
                    .collect::<Vec<_>>()
            });
            Ok(json!({
                "char": ring.characteristic(),
                "vars": ring.vars(),
                "order": cli.order,
                "basis": gb.basis().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                "dimension": to_value(&quotient_dimension(&gb)),
                "standard_monomials": standard,
            }))
        }
    }
}

/// Runs a parsed command, writing the report to `out` (or `--out FILE`) and
/// diagnostics to `err`. Returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let value = match execute(cli) {
        Ok(v) => v,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            return f.exit_code();
        }
    };
    let text = if cli.json {
        serde_json::to_string_pretty(&value).expect("valid JSON") + "\n"
    } else {
        render::render(&value)
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &text),
        None => out.write_all(text.as_bytes()),
    };
    match written {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: cannot write report: {e}");
            EXIT_DOMAIN
        }
    }
}
