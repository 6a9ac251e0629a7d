use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;

#[derive(Parser)]
#[command(name = "doctrine", version, about = "Universal filters, ultrafilters and Herbrand-style entailment over Boolean doctrines")]
struct Cli {
    #[command(flatten)]
    opts: Opts,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
pub struct Opts {
    /// Term depth for witness morphisms and Herbrand instances
    #[arg(long, global = true, default_value_t = 2)]
    depth: usize,

    /// Largest number of instances on each side of a witness
    #[arg(long, global = true, default_value_t = 4)]
    max_n: usize,

    /// Largest carrier size searched for countermodels
    #[arg(long, global = true, default_value_t = 3)]
    model_bound: usize,

    /// Print one JSON object instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for independent clauses
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a sequent file against a theory
    Entail { theory: PathBuf, sequent: PathBuf },

    /// Re-verify a witness JSON for a sequent without searching
    WitnessCheck { theory: PathBuf, sequent: PathBuf, witness: PathBuf },

    /// Check a family of a finite doctrine against the axioms of a kind
    CheckFamily {
        doctrine: PathBuf,
        family: PathBuf,
        /// filter, ideal, ultrafilter, ultraideal or pair
        #[arg(long, default_value = "filter")]
        kind: String,
        /// Close the family (or both families of a pair) before checking
        #[arg(long)]
        close: bool,
    },

    /// Extend a universal filter to an ultrafilter disjoint from an ideal
    ExtendUltrafilter {
        doctrine: PathBuf,
        /// Universal filter to extend (default: the tops)
        #[arg(long)]
        filter: Option<PathBuf>,
        /// Universal ideal to avoid (default: the least ideal)
        #[arg(long)]
        ideal: Option<PathBuf>,
    },

    /// List every universal ultrafilter of a finite doctrine
    EnumUltrafilters { doctrine: PathBuf },

    /// List the models of a theory up to the model bound, or of a finite doctrine
    EnumModels { input: PathBuf },

    /// Compare two Free1 expressions over context S
    Free1Leq {
        theory: PathBuf,
        /// Size of the base context S
        #[arg(long, default_value_t = 0)]
        context: usize,
        lhs: String,
        rhs: String,
    },

    /// Quotient a covering model of a structure by its equality
    QuotientModel { theory: PathBuf, cover: PathBuf },
}

/// Exit status: what the command established.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Unknown,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let o = cli.opts;
    let result = match &cli.command {
        Command::Entail { theory, sequent } => commands::entail(o, theory, sequent),
        Command::WitnessCheck { theory, sequent, witness } => commands::witness_check(o, theory, sequent, witness),
        Command::CheckFamily { doctrine, family, kind, close } => commands::check_family(o, doctrine, family, kind, *close),
        Command::ExtendUltrafilter { doctrine, filter, ideal } => {
            commands::extend_ultrafilter(o, doctrine, filter.as_deref(), ideal.as_deref())
        }
        Command::EnumUltrafilters { doctrine } => commands::enum_ultrafilters(o, doctrine),
        Command::EnumModels { input } => commands::enum_models(o, input),
        Command::Free1Leq { theory, context, lhs, rhs } => commands::free1_leq(o, theory, *context, lhs, rhs),
        Command::QuotientModel { theory, cover } => commands::quotient_model(o, theory, cover),
    };
    match result {
        Ok(Outcome::Pass) => ExitCode::from(0),
        Ok(Outcome::Fail) => ExitCode::from(1),
        Ok(Outcome::Unknown) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}
