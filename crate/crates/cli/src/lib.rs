//! Command-line front end: argument parsing, JSON reports, the polynomial
//! cache and the verification suite.

pub mod cache;
pub mod commands;
pub mod error;
pub mod report;
pub mod spec;
pub mod verify;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::commands::{CertifyArgs, EmbedArgs, PolyArgs, PolyTarget, VerifyArgs};
use crate::error::{CliError, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};
use crate::spec::GroupSpec;

#[derive(Debug, Parser)]
#[command(
    name = "quadembed",
    version,
    about = "Decide which quadrilaterals embed in orbits of permutation groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// `name:parameter` (cyclic, dihedral, symmetric, alternating),
    /// `regular_dihedral8`, or `file:path` to a generator file
    #[arg(long, short)]
    pub group: String,
    /// Enumerate every triple instead of one per conjugacy class
    #[arg(long)]
    pub no_reduce: bool,
    /// Worker threads (default: available parallelism)
    #[arg(long, short)]
    pub jobs: Option<usize>,
    /// Maximum group order accepted when closing generators
    #[arg(long, default_value_t = spec::default_cap())]
    pub cap: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certify that no orbit contains a quadrilateral with the given alpha and transcendental beta
    Certify {
        #[command(flatten)]
        common: Common,
        #[arg(long, short, allow_hyphen_values = true)]
        alpha: Option<String>,
        /// Only "transcendental" is accepted
        #[arg(long, short)]
        beta: Option<String>,
        /// Use the alpha of the kite family with parameters (-1, a + 1)
        #[arg(long)]
        kite: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Record elapsed time in the output (makes it nondeterministic)
        #[arg(long)]
        timing: bool,
    },
    /// Find an orbit containing a quadrilateral with the given parameters
    Embed {
        #[command(flatten)]
        common: Common,
        #[arg(long, short, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, short, allow_hyphen_values = true)]
        beta: String,
        /// Kernel combinations tried per singular class
        #[arg(long, default_value_t = commands::default_attempts())]
        attempts: usize,
        /// Largest orbit cross-checked by brute-force scan
        #[arg(long, default_value_t = commands::default_scan_cap())]
        scan_cap: usize,
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[arg(long)]
        timing: bool,
    },
    /// Print pencil determinant polynomials
    Poly {
        #[command(flatten)]
        common: Common,
        /// Element indices `a,b,c`
        #[arg(long, value_parser = parse_triple, conflicts_with = "all_classes")]
        triple: Option<[usize; 3]>,
        /// One polynomial per simultaneous-conjugacy class
        #[arg(long)]
        all_classes: bool,
        /// Cache directory (default: $QUADEMBED_CACHE_DIR)
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        #[arg(long)]
        no_cache: bool,
        /// Recompute cached entries and fail on any mismatch
        #[arg(long)]
        check_cache: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run the exact self-verification suite
    VerifyPaper {
        /// Skip groups of larger degree
        #[arg(long, default_value_t = verify::DEFAULT_MAX_DEGREE)]
        max_degree: usize,
        /// Additional group spec for the certificate and polynomial checks
        #[arg(long)]
        extra_group: Vec<String>,
        #[arg(long, short)]
        jobs: Option<usize>,
        #[arg(long, default_value_t = spec::default_cap())]
        cap: usize,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

fn parse_triple(s: &str) -> Result<[usize; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b, c] = parts.as_slice() else {
        return Err(format!("expected three comma-separated indices, got {s:?}"));
    };
    let idx = |t: &str| {
        t.parse::<usize>()
            .map_err(|_| format!("invalid index {t:?}"))
    };
    Ok([idx(a)?, idx(b)?, idx(c)?])
}

fn execute(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Certify {
            common,
            alpha,
            beta,
            kite,
            output,
            timing,
        } => {
            let args = CertifyArgs {
                group: common.group.parse()?,
                alpha,
                beta,
                kite,
                reduce: !common.no_reduce,
                cap: common.cap,
                output: output.clone(),
                timing,
            };
            let bytes = commands::thread_pool(common.jobs)?.install(|| commands::certify(&args))?;
            commands::emit(&bytes, output.as_deref())?;
            Ok(EXIT_OK)
        }
        Command::Embed {
            common,
            alpha,
            beta,
            attempts,
            scan_cap,
            output,
            timing,
        } => {
            let args = EmbedArgs {
                group: common.group.parse()?,
                alpha,
                beta,
                attempts,
                scan_cap,
                reduce: !common.no_reduce,
                cap: common.cap,
                timing,
            };
            let bytes = commands::thread_pool(common.jobs)?.install(|| commands::embed(&args))?;
            commands::emit(&bytes, output.as_deref())?;
            Ok(EXIT_OK)
        }
        Command::Poly {
            common,
            triple,
            all_classes,
            cache_dir,
            no_cache,
            check_cache,
            output,
        } => {
            let target = match (triple, all_classes) {
                (Some(t), false) => PolyTarget::Triple(t),
                (None, true) => PolyTarget::AllClasses,
                _ => {
                    return Err(CliError::Usage(
                        "poly needs exactly one of --triple or --all-classes".into(),
                    ))
                }
            };
            let args = PolyArgs {
                group: common.group.parse()?,
                target,
                cache_dir,
                no_cache,
                check_cache,
                cap: common.cap,
            };
            let bytes = commands::thread_pool(common.jobs)?.install(|| commands::poly(&args))?;
            commands::emit(&bytes, output.as_deref())?;
            Ok(EXIT_OK)
        }
        Command::VerifyPaper {
            max_degree,
            extra_group,
            jobs,
            cap,
            output,
        } => {
            let extra_groups = extra_group
                .iter()
                .map(|s| s.parse())
                .collect::<Result<Vec<GroupSpec>, _>>()?;
            let jobs =
                jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let (bytes, passed) = commands::verify_paper(&VerifyArgs {
                max_degree,
                extra_groups,
                jobs,
                cap,
            })?;
            commands::emit(&bytes, output.as_deref())?;
            Ok(if passed { EXIT_OK } else { EXIT_FAILURE })
        }
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("quadembed: {e}");
            e.exit_code()
        }
    }
}
