use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use duval_core::catalog::{DynkinType, Family};
use duval_core::gfpoly::OrderKind;
use duval_core::lattice::DEFAULT_BUDGET;

/// A type as typed on the command line, validated only when used.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TypeArg {
    pub family: Family,
    pub index: u32,
}

impl TypeArg {
    /// With `paper_d_index`, `Dn` names the quotient by `BD_n`, i.e. `D_{n+2}`.
    pub fn resolve(self, paper_d_index: bool) -> Result<DynkinType, duval_core::catalog::CatalogError> {
        match (self.family, paper_d_index) {
            (Family::D, true) => DynkinType::d_from_dihedral(self.index),
            _ => DynkinType::new(self.family, self.index),
        }
    }
}

impl FromStr for TypeArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("cannot parse type `{s}` (expected e.g. A5, D4, E8)");
        let mut chars = s.trim().chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('D') => Family::D,
            Some('E') => Family::E,
            _ => return Err(bad()),
        };
        let index = chars.as_str().trim_start_matches('_').parse().map_err(|_| bad())?;
        Ok(TypeArg { family, index })
    }
}

impl fmt::Display for TypeArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.index)
    }
}

/// Integer matrix written as rows separated by `;`, entries by `,`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixArg(pub Vec<Vec<i64>>);

impl FromStr for MatrixArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let rows: Vec<Vec<i64>> = s
            .split(';')
            .map(|r| {
                r.split(',')
                    .map(|e| e.trim().parse::<i64>().map_err(|e| format!("bad entry: {e}")))
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        let width = rows[0].len();
        if rows.iter().any(|r| r.len() != width) {
            return Err("rows have different lengths".into());
        }
        Ok(MatrixArg(rows))
    }
}

impl fmt::Display for MatrixArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .0
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        f.write_str(&rows.join(";"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Group {
    Mu,
    Bd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CenterArg {
    /// (x, y, z + t)
    Section,
    /// (x, y, z)
    Origin,
    /// (x, z + t)
    Divisor,
}

#[derive(Parser, Clone, Debug, PartialEq, Eq)]
#[command(name = "duval", version, about = "Rational double points over prime fields")]
pub struct Cli {
    /// Emit JSON instead of a text table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the report to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Monomial order for Groebner computations.
    #[arg(long, global = true, default_value = "grevlex", value_parser = ["lex", "grevlex"])]
    pub order: String,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Clone, Debug, PartialEq, Eq)]
pub enum Command {
    /// Linear reductivity and tameness; omit --type/--char to sweep the grid.
    Classify {
        #[arg(long = "type")]
        ty: Option<TypeArg>,
        #[arg(long = "char")]
        characteristic: Option<u64>,
        #[arg(long, default_value_t = 13)]
        max_p: u64,
        #[arg(long)]
        paper_d_index: bool,
    },
    /// Catalog equation of a type in a characteristic.
    Equation {
        #[arg(long = "type")]
        ty: TypeArg,
        #[arg(long = "char")]
        characteristic: u64,
        #[arg(long)]
        paper_d_index: bool,
    },
    /// Tjurina dimension against the predicted value.
    Tjurina {
        #[arg(long = "type")]
        ty: TypeArg,
        #[arg(long = "char")]
        characteristic: u64,
        #[arg(long)]
        paper_d_index: bool,
    },
    /// Tjurina reports over the whole catalog grid.
    TjurinaGrid {
        #[arg(long, default_value_t = 13)]
        max_p: u64,
        #[arg(long, default_value_t = 12)]
        max_a: u32,
        #[arg(long, default_value_t = 8)]
        max_d: u32,
    },
    /// Relation and invariance checks for mu_n and BD_n.
    Invariants {
        #[arg(long, value_enum)]
        group: Option<Group>,
        /// Defaults to 20 for mu and 10 for bd.
        #[arg(long)]
        max_n: Option<u32>,
        #[arg(long, default_value_t = 13)]
        max_p: u64,
    },
    /// Whether derivations of the plane preserve (f^m).
    Derivation {
        /// Polynomial in x, y.
        #[arg(long)]
        poly: String,
        #[arg(long)]
        m: u32,
        #[arg(long = "char")]
        characteristic: u64,
    },
    /// Blow up z^2 + tz + xy along a center and test every chart for regularity.
    ResolutionCheck {
        #[arg(long = "char", default_value_t = 2)]
        characteristic: u64,
        #[arg(long, value_enum, default_value_t = CenterArg::Section)]
        center: CenterArg,
    },
    /// Lattice utilities over Z and Z/m.
    Lattice {
        #[command(subcommand)]
        command: LatticeCommand,
    },
    /// The rank-21-into-rank-20 obstruction with its small search table.
    K3Report {
        #[arg(long, env = "DUVAL_BUDGET", default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Reduced Groebner basis and quotient dimension of an ideal.
    Groebner {
        #[arg(long, value_delimiter = ',', default_value = "x,y,z")]
        vars: Vec<String>,
        #[arg(long = "char")]
        characteristic: u64,
        /// Generators.
        #[arg(required = true, allow_hyphen_values = true)]
        polys: Vec<String>,
    },
}

#[derive(Subcommand, Clone, Debug, PartialEq, Eq)]
pub enum LatticeCommand {
    /// Exhaustive search for k orthogonal vectors of a given square under a perfect form.
    Search {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value_t = 4)]
        modulus: u64,
        #[arg(long, default_value_t = -2, allow_negative_numbers = true)]
        square: i64,
        /// Drop the orthogonality requirement.
        #[arg(long)]
        non_orthogonal: bool,
        #[arg(long, env = "DUVAL_BUDGET", default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Invariant factors of an integer matrix such as "2,1;1,2".
    Snf {
        #[arg(long, allow_hyphen_values = true)]
        matrix: MatrixArg,
    },
    /// Whether an injective map (Z/m)^r1 -> (Z/m)^r2 can exist.
    Bound {
        #[arg(long)]
        r1: u32,
        #[arg(long)]
        r2: u32,
        #[arg(long, default_value_t = 4)]
        modulus: u64,
    },
}

impl Cli {
    pub fn order_kind(&self) -> OrderKind {
        self.order.parse().expect("restricted by clap")
    }

    /// Arguments that parse back to `self` (without the program name).
    pub fn to_args(&self) -> Vec<String> {
        let mut a: Vec<String> = Vec::new();
        if self.json {
            a.push("--json".into());
        }
        if let Some(out) = &self.out {
            a.push("--out".into());
            a.push(out.display().to_string());
        }
        a.push("--order".into());
        a.push(self.order.clone());
        let flag = |a: &mut Vec<String>, name: &str, value: String| {
            a.push(format!("--{name}"));
            a.push(value);
        };
        match &self.command {
            Command::Classify { ty, characteristic, max_p, paper_d_index } => {
                a.push("classify".into());
                if let Some(t) = ty {
                    flag(&mut a, "type", t.to_string());
                }
                if let Some(p) = characteristic {
                    flag(&mut a, "char", p.to_string());
                }
                flag(&mut a, "max-p", max_p.to_string());
                if *paper_d_index {
                    a.push("--paper-d-index".into());
                }
            }
            Command::Equation { ty, characteristic, paper_d_index }
            | Command::Tjurina { ty, characteristic, paper_d_index } => {
                let verb = if matches!(self.command, Command::Equation { .. }) {
                    "equation"
                } else {
                    "tjurina"
                };
                a.push(verb.into());
                flag(&mut a, "type", ty.to_string());
                flag(&mut a, "char", characteristic.to_string());
                if *paper_d_index {
                    a.push("--paper-d-index".into());
                }
            }
            Command::TjurinaGrid { max_p, max_a, max_d } => {
                a.push("tjurina-grid".into());
                flag(&mut a, "max-p", max_p.to_string());
                flag(&mut a, "max-a", max_a.to_string());
                flag(&mut a, "max-d", max_d.to_string());
            }
            Command::Invariants { group, max_n, max_p } => {
                a.push("invariants".into());
                if let Some(g) = group {
                    let name = g.to_possible_value().expect("no skipped variants");
                    flag(&mut a, "group", name.get_name().into());
                }
                if let Some(n) = max_n {
                    flag(&mut a, "max-n", n.to_string());
                }
                flag(&mut a, "max-p", max_p.to_string());
            }
            Command::Derivation { poly, m, characteristic } => {
                a.push("derivation".into());
                a.push(format!("--poly={poly}"));
                flag(&mut a, "m", m.to_string());
                flag(&mut a, "char", characteristic.to_string());
            }
            Command::ResolutionCheck { characteristic, center } => {
                a.push("resolution-check".into());
                flag(&mut a, "char", characteristic.to_string());
                let name = center.to_possible_value().expect("no skipped variants");
                flag(&mut a, "center", name.get_name().into());
            }
            Command::Lattice { command } => {
                a.push("lattice".into());
                match command {
                    LatticeCommand::Search { k, rank, modulus, square, non_orthogonal, budget } => {
                        a.push("search".into());
                        flag(&mut a, "k", k.to_string());
                        flag(&mut a, "rank", rank.to_string());
                        flag(&mut a, "modulus", modulus.to_string());
                        a.push(format!("--square={square}"));
                        if *non_orthogonal {
                            a.push("--non-orthogonal".into());
                        }
                        flag(&mut a, "budget", budget.to_string());
                    }
                    LatticeCommand::Snf { matrix } => {
                        a.push("snf".into());
                        a.push(format!("--matrix={matrix}"));
                    }
                    LatticeCommand::Bound { r1, r2, modulus } => {
                        a.push("bound".into());
                        flag(&mut a, "r1", r1.to_string());
                        flag(&mut a, "r2", r2.to_string());
                        flag(&mut a, "modulus", modulus.to_string());
                    }
                }
            }
            Command::K3Report { budget } => {
                a.push("k3-report".into());
                flag(&mut a, "budget", budget.to_string());
            }
            Command::Groebner { vars, characteristic, polys } => {
                a.push("groebner".into());
                flag(&mut a, "vars", vars.join(","));
                flag(&mut a, "char", characteristic.to_string());
                a.push("--".into());
                a.extend(polys.iter().cloned());
            }
        }
        a
    }
}
