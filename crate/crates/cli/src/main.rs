use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{error::ErrorKind, Args, Parser, Subcommand};
use lietensor_core::catalog::{self, AlgebraSpec};
use lietensor_core::{tensorcalc, theorems, Error, LieAlgebra};

/// Tensor squares, exterior squares and triple tensor products of nilpotent
/// Lie algebras over the rationals.
#[derive(Parser)]
#[command(name = "lietensor", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Target {
    /// Catalog spec (`H:2`, `L6_22:1`, `sum(H:1,A:2)`) or path to a `.lie` file.
    #[arg(long, short)]
    algebra: String,
}

#[derive(Subcommand)]
enum Command {
    /// Check that the structure constants define a nilpotent Lie algebra.
    Validate(Target),
    /// Print dimension, class, derived subalgebra, center and Heisenberg rank.
    Info(Target),
    /// Dimension of the non-abelian tensor square.
    Tensor2(Target),
    /// Dimension of the exterior square.
    Wedge2(Target),
    /// Dimension of the triple tensor product.
    Tensor3 {
        #[command(flatten)]
        target: Target,
        /// Relation-quotient construction (default).
        #[arg(long, conflicts_with = "recipe")]
        structural: bool,
        /// Exact-sequence dimension recipe.
        #[arg(long)]
        recipe: bool,
    },
    /// Dimension of the triple exterior product.
    Wedge3(Target),
    /// Dimension of the Schur multiplier.
    Schur(Target),
    /// Decide capability through the exterior center.
    Capable(Target),
    /// List the built-in algebras.
    Catalog,
    /// Run every tabulated check and report the results.
    VerifyPaper {
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

enum Failure {
    Usage(String),
    Lie(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lie(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        e if e.is_domain() => 3,
        Error::ActionNotWellDefined(_) | Error::AuditFailure(_) => 1,
        _ => 2,
    }
}

fn load(spec: &str) -> Result<LieAlgebra, Failure> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        return Ok(catalog::parse(&text)?);
    }
    Ok(spec.parse::<AlgebraSpec>()?.build()?)
}

fn print_dim(op: &str, value: usize) {
    println!("dim {op} = {value}");
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Validate(t) => {
            let alg = load(&t.algebra)?;
            println!("valid: dim {}, class {}", alg.dim(), alg.nilpotency_class());
        }
        Command::Info(t) => {
            let alg = load(&t.algebra)?;
            println!("dim = {}", alg.dim());
            println!("class = {}", alg.nilpotency_class());
            println!("dim L^2 = {}", alg.derived_subalgebra().dim());
            println!("dim Z = {}", alg.center().dim());
            match alg.generalized_heisenberg_rank() {
                Some(r) => println!("generalized Heisenberg rank = {r}"),
                None => println!("generalized Heisenberg rank = none"),
            }
        }
        Command::Tensor2(t) => print_dim("tensor2", tensorcalc::tensor_square(&load(&t.algebra)?)?.quotient_dim()),
        Command::Wedge2(t) => print_dim(
            "wedge2",
            tensorcalc::exterior_square(&load(&t.algebra)?)?.quotient_dim(),
        ),
        Command::Tensor3 { target, recipe, .. } => {
            let alg = load(&target.algebra)?;
            let value = if recipe {
                tensorcalc::triple_tensor_recipe(&alg)?
            } else {
                tensorcalc::triple_tensor_structural(&alg)?.quotient_dim()
            };
            print_dim("tensor3", value);
        }
        Command::Wedge3(t) => print_dim("wedge3", tensorcalc::triple_exterior_recipe(&load(&t.algebra)?)?),
        Command::Schur(t) => print_dim("schur", theorems::schur_multiplier_dim(&load(&t.algebra)?)?),
        Command::Capable(t) => println!("capable = {}", theorems::is_capable(&load(&t.algebra)?)?),
        Command::Catalog => {
            for entry in catalog::entries() {
                let alg = entry.build()?;
                println!(
                    "{:<14} dim {:>2}  class {}",
                    entry.name(),
                    alg.dim(),
                    alg.nilpotency_class()
                );
            }
        }
        Command::VerifyPaper { json, out, jobs } => {
            if jobs == 0 {
                return Err(Failure::Usage("--jobs must be at least 1".into()));
            }
            let report = theorems::verify_paper(jobs);
            let text = if json {
                report.to_json() + "\n"
            } else {
                report.render_text()
            };
            match out {
                Some(path) => fs::write(&path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?,
                None => print!("{text}"),
            }
            let s = report.summary();
            if s.failed > 0 {
                eprintln!("{} of {} checks failed", s.failed, s.total);
                return Ok(4);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lie(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
