use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dwbc::lattice::DEFAULT_SIZE_CAP;
use dwbc::numerics::{Angle, DEFAULT_PRECISION};

#[derive(Debug, Parser)]
#[command(
    name = "dwbc",
    version,
    about = "Six-vertex model with domain wall boundary conditions: partition function, boundary correlators and refined ASM enumerations"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Working precision in bits.
    #[arg(long, global = true, env = "DWBC_PRECISION", default_value_t = DEFAULT_PRECISION)]
    pub precision: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Count positions from the left instead of from the right.
    #[arg(long, global = true)]
    pub left_origin: bool,
    /// Emit `elapsed_ms: null` so that output is byte-for-byte reproducible.
    #[arg(long, global = true)]
    pub no_timing: bool,
    /// Largest lattice size the enumeration oracle accepts.
    #[arg(long, global = true, default_value_t = DEFAULT_SIZE_CAP)]
    pub cap: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Route {
    /// Determinant formulas.
    Det,
    /// Orthogonal-polynomial formulas.
    Ortho,
    /// One-point identities (cumulative sums, two-point from one-point).
    Identity,
    /// Sums over reduced partition functions (inhomogeneous one-point only).
    Sum,
    /// Exhaustive enumeration.
    Oracle,
    /// Every route available for the quantity, with their largest mutual
    /// deviation.
    All,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Det => "det",
            Route::Ortho => "ortho",
            Route::Identity => "identity",
            Route::Sum => "sum",
            Route::Oracle => "oracle",
            Route::All => "all",
        }
    }
}

/// A single position or every position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Selector {
    All,
    At(usize),
}

impl FromStr for Selector {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(Selector::All);
        }
        s.parse::<usize>()
            .map(Selector::At)
            .map_err(|_| format!("expected a position or `all`, got `{s}`"))
    }
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    /// Lattice size; implied by `--lambdas` for the inhomogeneous model.
    #[arg(long)]
    pub n: Option<usize>,
    /// Spectral parameter: a decimal or a rational multiple of pi (`pi/2`, `2pi/3`).
    #[arg(long, default_value = "pi/2", allow_hyphen_values = true)]
    pub lambda: Angle,
    /// Crossing parameter.
    #[arg(long, default_value = "pi/6", allow_hyphen_values = true)]
    pub eta: Angle,
    /// Column parameters of the inhomogeneous model, comma separated,
    /// right to left.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub lambdas: Vec<Angle>,
    /// Row parameters of the inhomogeneous model, top to bottom.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub nus: Vec<Angle>,
    /// Accept parameters outside the disordered regime.
    #[arg(long)]
    pub allow_outside_regime: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Partition function.
    Partition {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_enum, default_value_t = Route::Det)]
        route: Route,
    },
    /// One-point boundary correlator, or the boundary polarization.
    Onepoint {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value = "all")]
        r: Selector,
        /// Report the polarization instead of the correlator.
        #[arg(long)]
        polarization: bool,
        #[arg(long, value_enum, default_value_t = Route::Det)]
        route: Route,
    },
    /// Two-point correlator between the first and last rows.
    Twopoint {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value = "all")]
        r1: Selector,
        #[arg(long, default_value = "all")]
        r2: Selector,
        #[arg(long, value_enum, default_value_t = Route::Det)]
        route: Route,
    },
    /// Refined x-enumerations of alternating sign matrices.
    Census {
        #[arg(long)]
        n: usize,
        /// Weights at which to evaluate the counts.
        #[arg(long, value_delimiter = ',', default_values_t = vec![1, 2, 3])]
        x: Vec<i64>,
    },
    /// Generating functions of the one- and two-point correlators.
    Genfun {
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Cross-route verification suite over seeded random parameters.
    Verify {
        #[arg(long, default_value_t = 5)]
        n_max: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Use the full acceptance sizes and sample counts, ignoring `--n-max`.
        #[arg(long)]
        full: bool,
    },
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn command_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn selectors() {
        assert_eq!("all".parse::<Selector>(), Ok(Selector::All));
        assert_eq!("3".parse::<Selector>(), Ok(Selector::At(3)));
        assert!("-1".parse::<Selector>().is_err());
    }

    #[test]
    fn angle_lists() {
        let cli = Cli::try_parse_from([
            "dwbc",
            "partition",
            "--lambdas",
            "pi/3,-0.2",
            "--nus",
            "0,0",
        ])
        .unwrap();
        let Command::Partition { model, .. } = cli.command else {
            panic!()
        };
        assert_eq!(
            model.lambdas,
            vec![Angle::pi_fraction(1, 3), "-0.2".parse().unwrap()]
        );
    }
}
