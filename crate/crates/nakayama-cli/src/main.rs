//! `nakayama`: exact checks on Frobenius algebras from JSON files or the
//! built-in gallery. Writes one JSON report to standard output.
//!
//! Exit codes: 0 pass, 1 fail, 2 inconclusive, 3 usage.

mod commands;
mod expectations;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use nakayama::gallery::{GalleryParams, FAMILIES};
use nakayama::verify::Status;

use commands::{Context, Inputs};
use report::Report;

const EXIT_USAGE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "nakayama", version, about = "Exact Frobenius algebra checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for ChaCha8Rng; governs every sampled check.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Highest Hochschild degree examined.
    #[arg(long, global = true)]
    max_degree: Option<usize>,
    /// Largest number of matrix entries a coboundary map may have.
    #[arg(long, global = true)]
    budget: Option<u128>,
    /// Override the field named in the algebra file: Q, F<p> or F<p>[c0,..,ck].
    #[arg(long, global = true)]
    field: Option<String>,
    /// Exit 0 instead of 2 when the worst verdict is inconclusive.
    #[arg(long, global = true)]
    allow_inconclusive: bool,
}

#[derive(Args, Debug)]
struct FileArgs {
    /// Algebra file (schema 1).
    #[arg(long)]
    file: PathBuf,
}

#[derive(Args, Debug)]
struct MapArgs {
    #[arg(long)]
    file: PathBuf,
    /// Map file (schema 1) with a role and columns.
    #[arg(long)]
    map: PathBuf,
}

#[derive(Args, Debug)]
struct CrossedArgs {
    #[arg(long)]
    file: PathBuf,
    /// Group, action and cocycle file (schema 1).
    #[arg(long)]
    crossed: PathBuf,
}

#[derive(Args, Debug)]
struct GalleryArgs {
    /// Family name.
    #[arg(value_parser = clap::builder::PossibleValuesParser::new(FAMILIES))]
    name: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    base: Option<String>,
    #[arg(long)]
    form: Option<String>,
    /// Run every applicable check suite on the structure.
    #[arg(long)]
    verify_all: bool,
}

#[derive(Args, Debug)]
struct VerifyAllArgs {
    /// Run a single acceptance criterion (1-13).
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=13))]
    criterion: Option<u8>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate an algebra file (and its Gram matrix, if present).
    CheckAlgebra(FileArgs),
    /// Frobenius form checks and the Nakayama automorphism.
    Frobenius(FileArgs),
    /// The Nakayama automorphism and whether it is inner.
    Nakayama(FileArgs),
    /// Jacobian of an endomorphism.
    Jacobian(MapArgs),
    /// Divergence of a derivation.
    Divergence(MapArgs),
    /// Derivation basis, inner derivations and divergence laws.
    Derivations(FileArgs),
    /// Hochschild cohomology dimensions.
    Hochschild(FileArgs),
    /// Certificates that the Nakayama automorphism acts trivially on Hochschild cohomology.
    VerifyMainTheorem(FileArgs),
    /// Twisted Hochschild homology and the duality of dimensions.
    Homology(FileArgs),
    /// Nakayama automorphism of a crossed product.
    CrossedProduct(CrossedArgs),
    /// Liouville polynomial of a locally nilpotent derivation.
    Liouville(MapArgs),
    /// Build a gallery structure, list its closed forms, optionally verify.
    Gallery(GalleryArgs),
    /// Run the acceptance criteria.
    VerifyAll(VerifyAllArgs),
}

fn read(path: &PathBuf) -> Result<(String, String), String> {
    std::fs::read_to_string(path)
        .map(|text| (path.display().to_string(), text))
        .map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn usage(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(EXIT_USAGE)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let field = match cli.field.as_deref().map(nakayama::io::parse_field).transpose() {
        Ok(f) => f,
        Err(e) => return usage(e),
    };
    let ctx = Context {
        seed: cli.seed,
        max_degree: cli.max_degree,
        budget: cli.budget.unwrap_or(nakayama::hochschild::DEFAULT_BUDGET),
        field,
    };
    let start = Instant::now();
    let (name, files) = match &cli.command {
        Command::CheckAlgebra(a)
        | Command::Frobenius(a)
        | Command::Nakayama(a)
        | Command::Derivations(a)
        | Command::Hochschild(a)
        | Command::VerifyMainTheorem(a)
        | Command::Homology(a) => (command_name(&cli.command), vec![&a.file]),
        Command::Jacobian(a) | Command::Divergence(a) | Command::Liouville(a) => {
            (command_name(&cli.command), vec![&a.file, &a.map])
        }
        Command::CrossedProduct(a) => (command_name(&cli.command), vec![&a.file, &a.crossed]),
        Command::Gallery(_) | Command::VerifyAll(_) => (command_name(&cli.command), vec![]),
    };
    let mut inputs = Vec::new();
    for f in files {
        match read(f) {
            Ok(x) => inputs.push(x),
            Err(e) => return usage(e),
        }
    }
    let inputs = Inputs { files: inputs };
    let outcome = match &cli.command {
        Command::CheckAlgebra(_) => commands::check_algebra(&inputs, &ctx),
        Command::Frobenius(_) => commands::frobenius(&inputs, &ctx),
        Command::Nakayama(_) => commands::nakayama(&inputs, &ctx),
        Command::Jacobian(_) => commands::jacobian(&inputs, &ctx),
        Command::Divergence(_) => commands::divergence(&inputs, &ctx),
        Command::Derivations(_) => commands::derivations(&inputs, &ctx),
        Command::Hochschild(_) => commands::hochschild(&inputs, &ctx),
        Command::VerifyMainTheorem(_) => commands::main_theorem(&inputs, &ctx),
        Command::Homology(_) => commands::homology(&inputs, &ctx),
        Command::CrossedProduct(_) => commands::crossed_product(&inputs, &ctx),
        Command::Liouville(_) => commands::liouville(&inputs, &ctx),
        Command::Gallery(g) => {
            let params = GalleryParams { n: g.n, q: g.q.clone(), p: g.p, base: g.base.clone(), form: g.form.clone() };
            match commands::gallery(&g.name, &params, g.verify_all, &ctx) {
                Ok(o) => o,
                Err(e) => return usage(e),
            }
        }
        Command::VerifyAll(v) => commands::verify_all(v.criterion.map(usize::from), &ctx),
    };
    let digest_source = match &cli.command {
        Command::Gallery(g) => {
            format!("gallery {} n={:?} q={:?} p={:?} base={:?} form={:?} verify_all={}", g.name, g.n, g.q, g.p, g.base, g.form, g.verify_all)
        }
        Command::VerifyAll(v) => format!("verify-all criterion={:?}", v.criterion),
        _ => String::new(),
    };
    let report = Report::new(name, &inputs, &digest_source, &ctx, outcome, start.elapsed());
    let text = serde_json::to_string_pretty(&report).expect("reports serialize");
    // A closed pipe downstream is not an error of ours.
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    ExitCode::from(match report.status {
        Status::Pass => 0,
        Status::Fail => 1,
        Status::Inconclusive if cli.allow_inconclusive => 0,
        Status::Inconclusive => 2,
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::CheckAlgebra(_) => "check-algebra",
        Command::Frobenius(_) => "frobenius",
        Command::Nakayama(_) => "nakayama",
        Command::Jacobian(_) => "jacobian",
        Command::Divergence(_) => "divergence",
        Command::Derivations(_) => "derivations",
        Command::Hochschild(_) => "hochschild",
        Command::VerifyMainTheorem(_) => "verify-main-theorem",
        Command::Homology(_) => "homology",
        Command::CrossedProduct(_) => "crossed-product",
        Command::Liouville(_) => "liouville",
        Command::Gallery(_) => "gallery",
        Command::VerifyAll(_) => "verify-all",
    }
}
