//! `lieforge` command-line front end.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lieforge::report::Report;

#[derive(Parser, Debug)]
#[command(name = "lieforge", version, about = "Exact checks for Lie, Novikov and symplectic structure constants")]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Antisymmetry, Jacobi identity and center.
    Check(SpecArgs),
    /// Dimensions of 2-cocycles, coboundaries and H2; checks declared cocycles.
    Cohomology(GradedArgs),
    /// Derivation space with its inner/outer split.
    Derivations(GradedArgs),
    /// Central extension by a declared 2-cochain.
    Extend(ExtendArgs),
    /// The bundled truncated Schrodinger-Virasoro algebra.
    #[command(subcommand)]
    Esvla(EsvlaCommand),
    /// Symplectic Novikov Lie algebras.
    #[command(subcommand)]
    Snla(SnlaCommand),
    /// Candidate automorphisms and coefficient recurrences.
    #[command(subcommand)]
    Aut(AutCommand),
}

#[derive(Args, Debug)]
struct SpecArgs {
    spec: String,
    /// Truncation window for spec files with index rules.
    #[arg(long)]
    window: Option<u32>,
}

#[derive(Args, Debug)]
struct GradedArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Restrict unknowns to grade-zero maps and cochains.
    #[arg(long)]
    grade_zero: bool,
}

#[derive(Args, Debug)]
struct ExtendArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Cochain name declared in the input file, or another spec file holding it.
    #[arg(long)]
    cocycle: String,
}

#[derive(Subcommand, Debug)]
enum EsvlaCommand {
    /// Window-scoped audit of the bracket table and its three cochains.
    Audit {
        #[arg(long)]
        window: u32,
        #[arg(long, value_enum, default_value_t = ConventionArg::Super)]
        convention: ConventionArg,
        #[arg(long = "n-index", value_enum, default_value_t = NIndexArg::Strict)]
        n_index: NIndexArg,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ConventionArg {
    Plain,
    Super,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum NIndexArg {
    Strict,
    Extended,
}

#[derive(Subcommand, Debug)]
enum SnlaCommand {
    /// Runs every identity check on a spec file with product and form.
    Verify { spec: String },
    /// Brute-force search over structure constants.
    Search {
        #[arg(long)]
        dim: usize,
        /// Comma-separated rationals, e.g. `-1,0,1`.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        /// Maximum number of candidates to examine.
        #[arg(long)]
        budget: Option<u128>,
        /// Also write the results as a JSON catalog to this file.
        #[arg(long)]
        catalog: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum AutCommand {
    /// Checks a matrix file against the bracket (and product and form, if present).
    Verify {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        map: String,
    },
    /// Checks `coef` lines against the coefficient recurrences.
    Recurrences {
        #[arg(long)]
        file: String,
        #[arg(long)]
        window: u32,
    },
}

fn dispatch(cli: &Cli) -> Report {
    use commands as c;
    match &cli.command {
        Command::Check(a) => c::check(&a.spec, a.window),
        Command::Cohomology(a) => c::cohomology(&a.spec.spec, a.spec.window, a.grade_zero),
        Command::Derivations(a) => c::derivations(&a.spec.spec, a.spec.window, a.grade_zero),
        Command::Extend(a) => c::extend(&a.spec.spec, a.spec.window, &a.cocycle),
        Command::Esvla(EsvlaCommand::Audit {
            window,
            convention,
            n_index,
        }) => c::esvla_audit(
            *window,
            matches!(convention, ConventionArg::Super),
            matches!(n_index, NIndexArg::Extended),
        ),
        Command::Snla(SnlaCommand::Verify { spec }) => c::snla_verify(spec),
        Command::Snla(SnlaCommand::Search {
            dim,
            coeffs,
            budget,
            catalog,
        }) => c::snla_search(*dim, coeffs, *budget, catalog.as_deref()),
        Command::Aut(AutCommand::Verify { spec, map }) => c::aut_verify(&spec.spec, spec.window, map),
        Command::Aut(AutCommand::Recurrences { file, window }) => c::aut_recurrences(file, *window),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let report = dispatch(&cli);
    if cli.json {
        let text = serde_json::to_string_pretty(&report).expect("report serializes");
        println!("{text}");
    } else {
        print!("{}", report.to_text());
    }
    ExitCode::from(report.verdict.exit_code() as u8)
}
