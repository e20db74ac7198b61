//! deltakit: exact solvers and verifiers for structure-constant algebras.
//!
//! Exit codes: 0 success / all requested checks hold; 1 a check ran and
//! failed; 2 usage, parse or shape errors.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod report;

#[derive(Parser)]
#[command(
    name = "deltakit",
    version,
    about = "Exact-arithmetic toolkit for delta-derivations of structure-constant algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check identities (jacobi, associative, ...) on an algebra file
    Verify(VerifyArgs),
    /// Solve for derivation-type spaces on an algebra file
    Solve(SolveArgs),
    /// Build the Kantor-style double of an algebra file
    Double(DoubleArgs),
    /// Emit a built-in algebra as JSON
    Catalog(CatalogArgs),
    /// Windowed 1/2-derivation checks on the Witt algebra
    Witt(WittArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Algebra JSON file
    file: String,
    /// Comma-separated identity names: anticommutative, jacobi,
    /// super-anticommutative, super-jacobi, associative, left-alternative,
    /// right-alternative, commutative, supercommutative, jordan
    #[arg(long, required = true)]
    identity: String,
    /// Emit the machine-readable report
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SolveArgs {
    /// Algebra JSON file
    file: String,
    /// Space to solve for
    #[arg(long, value_parser = ["der", "superder-even", "superder-odd", "centroid", "generalized"])]
    kind: String,
    /// The scalar delta, as a fraction string in the file's field (e.g. "-1", "1/2")
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<String>,
    /// Solve for several deltas (comma-separated); runs concurrently
    #[arg(long, allow_hyphen_values = true, conflicts_with = "delta")]
    delta_list: Option<String>,
    /// Emit the machine-readable report
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct DoubleArgs {
    /// Algebra JSON file
    file: String,
    /// Which product supplies the odd·odd bracket
    #[arg(long, value_parser = ["second", "primary"])]
    bracket: String,
    /// Write the double here; without this flag the double goes to stdout
    #[arg(short, long)]
    output: Option<String>,
    /// Emit the machine-readable report (to stdout alongside or instead of the file)
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CatalogArgs {
    /// Name: sl2 | sl2-printed | m2 | k3 | abelian | witt-modular
    /// (also accepts the spelling `catalog emit <name>`)
    #[arg(required = true, num_args = 1..=2)]
    name: Vec<String>,
    /// Dimension for `abelian`
    #[arg(long)]
    n: Option<usize>,
    /// Characteristic for `witt-modular`
    #[arg(long)]
    p: Option<u64>,
    /// Attach the primary product as the second product (bracket) as well
    #[arg(long)]
    with_bracket: bool,
    /// Write to a file instead of stdout
    #[arg(short, long)]
    output: Option<String>,
}

#[derive(Args)]
struct WittArgs {
    /// Basis indices i j k of the standard-polynomial arguments
    #[arg(long, num_args = 3, allow_hyphen_values = true)]
    tuple: Option<Vec<i64>>,
    /// Window bound N: the check runs over -1 <= i, j <= N
    #[arg(long)]
    window: i64,
    /// Scan all tuples e_i < e_j < e_k with indices in [-1, 2]
    #[arg(long)]
    search: bool,
    /// Emit the machine-readable report
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify(args) => commands::verify(&args.file, &args.identity, args.json),
        Command::Solve(args) => commands::solve(
            &args.file,
            &args.kind,
            args.delta.as_deref(),
            args.delta_list.as_deref(),
            args.json,
        ),
        Command::Double(args) => {
            commands::double(&args.file, &args.bracket, args.output.as_deref(), args.json)
        }
        Command::Catalog(args) => commands::catalog(
            &args.name,
            args.n,
            args.p,
            args.with_bracket,
            args.output.as_deref(),
        ),
        Command::Witt(args) => {
            commands::witt(args.tuple.as_deref(), args.window, args.search, args.json)
        }
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
