//! Command-line driver for `majcl`.
//!
//! Exit status: 0 on success or membership, 1 on a clean negative answer
//! (non-member, majority mismatch, failed validation), 2 on usage or
//! file-format errors.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use majcl::characterize::{decide_membership, is_balanced, pseudo_balance, CycleCover};
use majcl::format::{parse_profile, parse_tournament, write_profile};
use majcl::oracle::{
    cross_validate_with, enumerate_tournaments, oracle_membership_with_limit, ORACLE_LIMIT,
};
use majcl::{mcgarvey_profile, profile_majority, synthesize, Error, IntegerProfile, Tournament};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "majcl",
    about = "Majority closures of symmetric tournament families"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Valencies, balance and pseudo-balance of a tournament.
    Analyze { tournament: PathBuf },
    /// Decide whether the target is a majority outcome of the generator's orbit.
    Decide { generator: PathBuf, target: PathBuf },
    /// Build a voter profile from the generator's orbit realizing the target.
    Synthesize {
        generator: PathBuf,
        target: PathBuf,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Count a profile's pairwise majorities and compare with the target.
    Verify { profile: PathBuf, target: PathBuf },
    /// Membership by direct LP over the generator's whole orbit.
    Oracle {
        generator: PathBuf,
        target: PathBuf,
        #[arg(long, default_value_t = ORACLE_LIMIT)]
        limit: usize,
    },
    /// One canonical representative per isomorphism class.
    Enumerate { n: usize },
    /// The m(m-1)-voter linear-order profile for the target.
    Mcgarvey {
        target: PathBuf,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Exhaustive decision-vs-oracle cross-validation.
    Validate {
        n: usize,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
}

enum Failure {
    Io(io::Error),
    Input(String),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_tournament(path: &Path) -> Result<Tournament, Failure> {
    parse_tournament(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_profile(path: &Path) -> Result<IntegerProfile, Failure> {
    parse_profile(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn lib_err(e: Error) -> Failure {
    Failure::Input(e.to_string())
}

fn emit_profile(
    out: &mut dyn Write,
    profile: &IntegerProfile,
    output: Option<&Path>,
) -> Result<(), Failure> {
    let text = write_profile(profile);
    let summary = format!(
        "voters={} ballots={}",
        profile.total(),
        profile.support_size()
    );
    match output {
        Some(path) => {
            fs::write(path, text)
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            writeln!(out, "{summary}")?;
        }
        // Commented so the stream still parses as a profile file.
        None => writeln!(out, "{text}# {summary}")?,
    }
    Ok(())
}

fn execute(command: &Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Analyze { tournament } => {
            let t = load_tournament(tournament)?;
            let vals: Vec<String> = t.valencies().iter().map(|v| v.to_string()).collect();
            writeln!(out, "n={}", t.n())?;
            writeln!(out, "valencies {}", vals.join(" "))?;
            writeln!(out, "balanced {}", is_balanced(&t))?;
            match pseudo_balance(&t) {
                CycleCover::Covered(cert) => {
                    writeln!(out, "pseudo_balanced true")?;
                    for cycle in cert.cycles() {
                        let names: Vec<String> = cycle.iter().map(|x| x.to_string()).collect();
                        writeln!(out, "cycle {}", names.join(" "))?;
                    }
                }
                CycleCover::Uncovered { u, v } => {
                    writeln!(out, "pseudo_balanced false")?;
                    writeln!(out, "acyclic_edge {u} {v}")?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Decide { generator, target } => {
            let (g, c) = (load_tournament(generator)?, load_tournament(target)?);
            let decision = decide_membership(&g, &c).map_err(lib_err)?;
            writeln!(out, "{decision}")?;
            Ok(if decision.member {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            })
        }
        Command::Synthesize {
            generator,
            target,
            output,
        } => {
            let (g, c) = (load_tournament(generator)?, load_tournament(target)?);
            match synthesize(&g, &c).map_err(lib_err)? {
                Some(profile) => {
                    emit_profile(out, &profile, output.as_deref())?;
                    Ok(EXIT_OK)
                }
                None => {
                    let decision = decide_membership(&g, &c).map_err(lib_err)?;
                    writeln!(out, "{decision}")?;
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        Command::Verify { profile, target } => {
            let (p, c) = (load_profile(profile)?, load_tournament(target)?);
            if p.n() != c.n() {
                return Err(lib_err(Error::SizeMismatch {
                    left: p.n(),
                    right: c.n(),
                }));
            }
            writeln!(out, "voters={}", p.total())?;
            match profile_majority(&p) {
                Ok(m) => {
                    writeln!(out, "majority={m}")?;
                    writeln!(out, "match={}", m == c)?;
                    Ok(if m == c { EXIT_OK } else { EXIT_NEGATIVE })
                }
                Err(Error::Tie(pairs)) => {
                    let list: Vec<String> = pairs.iter().map(|(i, j)| format!("{i}-{j}")).collect();
                    writeln!(out, "tied {}", list.join(" "))?;
                    writeln!(out, "match=false")?;
                    Ok(EXIT_NEGATIVE)
                }
                Err(e) => Err(lib_err(e)),
            }
        }
        Command::Oracle {
            generator,
            target,
            limit,
        } => {
            let (g, c) = (load_tournament(generator)?, load_tournament(target)?);
            let member = oracle_membership_with_limit(&g, &c, *limit).map_err(lib_err)?;
            writeln!(out, "oracle member={member}")?;
            Ok(if member { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Enumerate { n } => {
            for t in enumerate_tournaments(*n).map_err(lib_err)? {
                writeln!(out, "{t}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Mcgarvey { target, output } => {
            let c = load_tournament(target)?;
            let profile = mcgarvey_profile(&c);
            emit_profile(out, &profile, output.as_deref())?;
            Ok(EXIT_OK)
        }
        Command::Validate { n, workers } => {
            let report = cross_validate_with(*n, *workers).map_err(lib_err)?;
            write!(out, "{report}")?;
            Ok(if report.passed() {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            })
        }
    }
}

/// Parses `argv` (including the program name) and runs the command,
/// writing results to `out` and diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version are not errors.
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    match execute(&cli.command, out) {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}
