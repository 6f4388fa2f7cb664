//! Command-line definitions and the value parsers behind them.

use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::str::FromStr;

use bfs_core::integrals::MAX_LEVEL;
use bfs_core::GaussRule;
use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "bfs", version, about = "Bogner-Fox-Schmit C1 elements on rectangular meshes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample the 1D Hermite cubics and selected 2D basis functions.
    Basis(BasisArgs),
    /// Tabulate all 16 basis functions and their derivatives at Gauss points.
    Shape(ShapeArgs),
    /// Interpolate a function on a mesh and write the field and its derivatives.
    Field(FieldArgs),
    /// Write Gauss points on the reference square and on the level-1 mesh.
    Ips(IpsArgs),
    /// Run the refinement study and write the convergence report.
    Integrate(IntegrateArgs),
}

#[derive(Debug, Clone, Args)]
pub struct OutArgs {
    /// Output directory, created if missing.
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct DomainArgs {
    #[arg(
        long,
        num_args = 4,
        value_names = ["XMIN", "XMAX", "YMIN", "YMAX"],
        allow_negative_numbers = true,
        default_values_t = [-1.0, 1.0, -1.0, 1.0]
    )]
    pub domain: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct BasisArgs {
    #[command(flatten)]
    pub out: OutArgs,
    /// Samples of each 1D function.
    #[arg(long, default_value_t = 101)]
    pub samples: usize,
    /// Interval for the scaled 1D functions.
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true, default_values_t = [2.0, 5.0])]
    pub interval: Vec<f64>,
    /// 2D basis functions to sample, 1-based.
    #[arg(long, value_delimiter = ',', default_values_t = [2, 6, 8, 13])]
    pub basis: Vec<usize>,
    /// Grid points per direction for the 2D functions.
    #[arg(long, default_value_t = 21)]
    pub grid: usize,
    /// Element size used to scale the 2D functions.
    #[arg(long, num_args = 2, value_names = ["HX", "HY"], default_values_t = [1.0, 1.0])]
    pub size: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct ShapeArgs {
    #[command(flatten)]
    pub out: OutArgs,
    /// Gauss rule whose points are tabulated.
    #[arg(long, default_value = "9", value_parser = parse_rule)]
    pub rule: GaussRule,
    #[arg(long, num_args = 2, value_names = ["HX", "HY"], default_values_t = [1.0, 1.0])]
    pub size: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    #[command(flatten)]
    pub out: OutArgs,
    #[command(flatten)]
    pub domain: DomainArgs,
    /// Uniform refinement level; ignored with --mesh.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(0..=i64::from(MAX_LEVEL)))]
    pub level: u32,
    #[arg(long, default_value = "quartic")]
    pub function: FunctionSpec,
    /// Read the mesh from a file instead of generating it.
    #[arg(long)]
    pub mesh: Option<PathBuf>,
    /// Read nodal dofs from a file instead of interpolating.
    #[arg(long)]
    pub dofs: Option<PathBuf>,
    /// Reference sample points per direction in each element.
    #[arg(long, default_value_t = 3)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct IpsArgs {
    #[command(flatten)]
    pub out: OutArgs,
    #[command(flatten)]
    pub domain: DomainArgs,
    #[arg(long, default_value = "1,4,9", value_parser = parse_rules)]
    pub rules: RuleSet,
}

#[derive(Debug, Args)]
pub struct IntegrateArgs {
    #[command(flatten)]
    pub out: OutArgs,
    #[command(flatten)]
    pub domain: DomainArgs,
    #[arg(long, default_value = "1..8", value_parser = parse_levels)]
    pub levels: RangeInclusive<u32>,
    #[arg(long, default_value = "1,4,9", value_parser = parse_rules)]
    pub rules: RuleSet,
    #[arg(long, default_value = "quartic")]
    pub function: FunctionSpec,
    /// Load `f`: `x2y2` or `poly:<coeff-file>`.
    #[arg(long, default_value = "x2y2")]
    pub load: LoadSpec,
    /// Record wall-clock seconds in the report (otherwise 0).
    #[arg(long)]
    pub timing: bool,
}

/// Rules in ascending order, without repeats.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSet(pub Vec<GaussRule>);

/// `a..b`, `a..=b` or a single level `a`.
pub fn parse_levels(s: &str) -> Result<RangeInclusive<u32>, String> {
    let level = |t: &str| -> Result<u32, String> {
        let l = t.trim().parse::<u32>().map_err(|_| format!("invalid level '{t}'"))?;
        if l > MAX_LEVEL {
            return Err(format!("level {l} exceeds the maximum of {MAX_LEVEL}"));
        }
        Ok(l)
    };
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (level(a)?, level(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let l = level(s)?;
            (l, l)
        }
    };
    if a > b {
        return Err(format!("empty level range {a}..{b}"));
    }
    Ok(a..=b)
}

pub fn parse_rule(s: &str) -> Result<GaussRule, String> {
    let n = s.trim().parse::<usize>().map_err(|_| format!("invalid rule '{s}'"))?;
    GaussRule::try_from(n).map_err(|e| e.to_string())
}

pub fn parse_rules(s: &str) -> Result<RuleSet, String> {
    let mut rules = s.split(',').map(parse_rule).collect::<Result<Vec<_>, _>>()?;
    rules.sort();
    rules.dedup();
    Ok(RuleSet(rules))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctionSpec {
    Quartic,
    Poly(PathBuf),
}

impl FromStr for FunctionSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "quartic" => Ok(FunctionSpec::Quartic),
            _ => poly_path(s)
                .map(FunctionSpec::Poly)
                .ok_or_else(|| format!("unknown function '{s}' (expected 'quartic' or 'poly:<coeff-file>')")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LoadSpec {
    X2Y2,
    Poly(PathBuf),
}

impl FromStr for LoadSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "x2y2" => Ok(LoadSpec::X2Y2),
            _ => poly_path(s)
                .map(LoadSpec::Poly)
                .ok_or_else(|| format!("unknown load '{s}' (expected 'x2y2' or 'poly:<coeff-file>')")),
        }
    }
}

fn poly_path(s: &str) -> Option<PathBuf> {
    s.strip_prefix("poly:").filter(|p| !p.is_empty()).map(PathBuf::from)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn levels() {
        assert_eq!(parse_levels("1..8"), Ok(1..=8));
        assert_eq!(parse_levels("2..=5"), Ok(2..=5));
        assert_eq!(parse_levels("3"), Ok(3..=3));
        assert!(parse_levels("5..2").is_err());
        assert!(parse_levels("1..13").is_err());
        assert!(parse_levels("..4").is_err());
        assert!(parse_levels("a..b").is_err());
        assert!(parse_levels("").is_err());
    }

    #[test]
    fn rules() {
        assert_eq!(parse_rules("9,1,9").unwrap(), RuleSet(vec![GaussRule::One, GaussRule::Nine]));
        assert!(parse_rules("1,2").is_err());
        assert!(parse_rules("").is_err());
        assert!(parse_rules("4,").is_err());
    }

    #[test]
    fn functions() {
        assert_eq!("quartic".parse(), Ok(FunctionSpec::Quartic));
        assert_eq!("poly:c.txt".parse(), Ok(FunctionSpec::Poly("c.txt".into())));
        assert!("poly:".parse::<FunctionSpec>().is_err());
        assert!("sin".parse::<FunctionSpec>().is_err());
        assert_eq!("x2y2".parse(), Ok(LoadSpec::X2Y2));
        assert!("quartic".parse::<LoadSpec>().is_err());
    }

    #[test]
    fn negative_domain_bounds() {
        let cli = Cli::try_parse_from(["bfs", "ips", "--domain", "-2", "-1", "-0.5", "3"]).unwrap();
        let Command::Ips(a) = cli.command else { panic!() };
        assert_eq!(a.domain.domain, vec![-2.0, -1.0, -0.5, 3.0]);
        assert!(Cli::try_parse_from(["bfs", "ips", "--domain", "0", "1"]).is_err());
    }
}
