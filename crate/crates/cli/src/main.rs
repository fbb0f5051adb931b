//! `mvop`: build the polynomials, check their identities, print norm tables
//! and run the acceptance battery.
//!
//! Exit status: 0 success, 1 a verification failed, 2 bad usage or input,
//! 3 a mathematical error (printed as JSON).

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "mvop", version, about = "Multivariable AW, W, cH and J polynomials in exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the monic polynomial p_lambda and its renormalization constant.
    Poly(PolyArgs),
    /// Check one identity and print its report.
    Verify {
        #[command(subcommand)]
        identity: Identity,
    },
    /// Print a table.
    Table {
        #[command(subcommand)]
        table: Table,
    },
    /// Run the acceptance battery (or one criterion of it).
    Suite {
        #[arg(long)]
        criterion: Option<u8>,
    },
}

#[derive(Args, Debug, Clone)]
struct FamilyArgs {
    /// AW, W, CH or J.
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: usize,
    /// Comma-separated `name=value` pairs, values like `1/2` or `2/3-1/4i`.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    params: String,
    /// Solve the self-duality condition for t0 (AW), nu0 (W) or nu0p (cH).
    #[arg(long)]
    self_dual_params: bool,
}

#[derive(Args, Debug)]
struct PolyArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Comma-separated parts; missing trailing parts are zero.
    #[arg(long)]
    lambda: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum Identity {
    /// Telescoping difference equations of the Delta^ functions.
    Diffeq {
        #[command(flatten)]
        family: FamilyArgs,
        /// Largest shift checked.
        #[arg(long, default_value_t = 4)]
        kmax: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Pieri-type recurrence for E^_r P_lambda.
    Recurrence {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        lambda: String,
        /// Run even though the recurrence condition fails.
        #[arg(long)]
        override_condition: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// P_lambda at rho^ + mu against P^_mu at rho + lambda.
    Duality {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// p_lambda at the special point against the closed product.
    Specialization {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        lambda: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Numeric Gram matrix of all p_mu with mu <= lambda-max.
    Orthogonality {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        lambda_max: String,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Limits from AW to the given W, cH or J parameters.
    Limits {
        #[command(flatten)]
        family: FamilyArgs,
        /// Partitions separated by `;` (default: all with |lambda| <= 2).
        #[arg(long)]
        lambdas: Option<String>,
        /// First of four halving scales.
        #[arg(long = "limit-first-scale", default_value_t = mvop::limits::DEFAULT_FIRST_SCALE)]
        first_scale: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// The omega_r step relation of the norm ratio, for every r.
    Norms {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        lambda: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Args, Debug, Clone)]
struct GridArgs {
    #[arg(long = "grid-points")]
    points: Option<usize>,
    #[arg(long = "grid-panels")]
    panels: Option<usize>,
    #[arg(long = "grid-radius")]
    radius: Option<f64>,
    #[arg(long = "grid-tol")]
    tol: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum Table {
    /// Exact norm ratios for all mu <= lambda-max.
    Norms {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        lambda_max: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Pretty,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = commands::run(cli.command);
    print!("{}", outcome.output);
    ExitCode::from(outcome.status as u8)
}
