use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dpbb_core::equiv::{explain, minimize, rooted_equal, Joint, Kind};
use dpbb_core::proof::{cert, check};
use dpbb_core::semantics::{build_lts, Lts, DEFAULT_BUDGET};
use dpbb_core::ses::{prove_congruent, Congruence};
use dpbb_core::standardize::standardize;
use dpbb_core::syntax::{parse_expr, Expr};

#[derive(Parser)]
#[command(name = "dpbb", version, about = "Divergence-preserving branching bisimilarity: checking, proofs and certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rel {
    Strong,
    Branching,
    Dpbb,
    Rooted,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Aut,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether two expressions are related.
    Check {
        #[arg(long, value_enum, default_value = "rooted")]
        rel: Rel,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        file1: PathBuf,
        file2: PathBuf,
    },
    /// Derive `e = f` and print the certificate.
    Prove {
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        /// Write the certificate here instead of to stdout.
        #[arg(long)]
        cert: Option<PathBuf>,
        file1: PathBuf,
        file2: PathBuf,
    },
    /// Check a certificate.
    Verify { file: PathBuf },
    /// Print the standard sum of an expression and write its certificate.
    Std {
        /// Certificate path; defaults to FILE.cert.
        #[arg(long)]
        cert: Option<PathBuf>,
        file: PathBuf,
    },
    /// Print the transition system of an expression.
    Lts {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        file: PathBuf,
    },
    /// Print the quotient of the transition system by dpbb.
    Minimize {
        #[arg(long, value_enum, default_value = "aut")]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        file: PathBuf,
    },
}

// Exit 1 with a message, or exit 2 on an error.
enum Failure {
    No(String),
    Error(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Failure {
        Failure::Error(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Error(format!("{}: {e}", path.display())))
}

fn read_expr(path: &Path) -> Result<Expr, Failure> {
    let text = read(path)?;
    parse_expr(text.trim_end()).map_err(|e| Failure::Error(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Error(format!("{}: {e}", path.display())))
}

fn render(lts: &Lts, format: Format) -> String {
    match format {
        Format::Text => lts.to_text(),
        Format::Aut => lts.to_aut(),
    }
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Check {
            rel,
            budget,
            file1,
            file2,
        } => {
            let (e, f) = (read_expr(&file1)?, read_expr(&file2)?);
            let kind = match rel {
                Rel::Strong => Kind::Strong,
                Rel::Branching => Kind::Branching,
                Rel::Dpbb => Kind::Dpbb,
                Rel::Rooted => {
                    return match rooted_equal(&e, &f, budget)? {
                        None => {
                            println!("equivalent");
                            Ok(())
                        }
                        Some(m) => {
                            let (s, t) = m.states();
                            Err(Failure::No(format!("INEQ {} ({s},{t})\n{m}", m.clause())))
                        }
                    };
                }
            };
            let j = Joint::build(&[&e, &f], budget)?;
            match explain(&j.lts, kind, j.roots[0], j.roots[1]) {
                None => {
                    println!("equivalent");
                    Ok(())
                }
                Some(r) => {
                    let (s, t) = r.pair;
                    Err(Failure::No(format!("INEQ {} ({s},{t})", r.failure.clause())))
                }
            }
        }
        Command::Prove {
            budget,
            cert: out,
            file1,
            file2,
        } => {
            let (e, f) = (read_expr(&file1)?, read_expr(&file2)?);
            match prove_congruent(&e, &f, budget)? {
                Congruence::Proved(d) => {
                    let text = cert::to_text(&d);
                    match out {
                        Some(p) => write(&p, &text),
                        None => {
                            print!("{text}");
                            Ok(())
                        }
                    }
                }
                Congruence::Refuted(m) => {
                    let (s, t) = m.states();
                    Err(Failure::No(format!("INEQ {} ({s},{t})\n{m}", m.clause())))
                }
            }
        }
        Command::Verify { file } => {
            let text = read(&file)?;
            let d = cert::parse(&text).map_err(|e| Failure::No(format!("invalid: {e}")))?;
            check(&d).map_err(|e| Failure::No(format!("invalid: {e}")))?;
            match d.conclusion() {
                Some((l, r)) => println!("valid: {l} = {r}"),
                None => println!("valid: empty derivation"),
            }
            Ok(())
        }
        Command::Std { cert: out, file } => {
            let e = read_expr(&file)?;
            let (view, d) = standardize(&e)?;
            let path = out.unwrap_or_else(|| {
                let mut p = file.clone().into_os_string();
                p.push(".cert");
                PathBuf::from(p)
            });
            write(&path, &cert::to_text(&d))?;
            println!("{}", view.to_expr());
            Ok(())
        }
        Command::Lts { format, budget, file } => {
            let e = read_expr(&file)?;
            print!("{}", render(&build_lts(&e, budget)?, format));
            Ok(())
        }
        Command::Minimize { format, budget, file } => {
            let e = read_expr(&file)?;
            print!("{}", render(&minimize(&build_lts(&e, budget)?), format));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::No(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Error(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
