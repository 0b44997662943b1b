//! Command-line front end: parse tuples, derivations, and tame words from
//! text, run computations and verification suites, and emit canonical text
//! or a machine-readable JSON document.
//!
//! Exit codes: 0 success / verification pass, 1 domain rejection or
//! verification failure, 2 usage error.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use wittcas::endo::{verify_endomorphism, verify_xi_homomorphism, VerificationReport, WittEndomorphism};
use wittcas::jacobi::{jacobi_matrix, JacobiTuple};
use wittcas::parse;
use wittcas::poly::Polynomial;
use wittcas::{autgroup, Derivation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Parser)]
#[command(name = "wittcas", version, about = "Exact Witt-algebra computer algebra")]
struct Cli {
    /// Output format: canonical text or a JSON document.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Jacobian determinant of a tuple, with the constant check.
    Det { tuple: String },
    /// The dual theta-frame of a Jacobi tuple.
    Theta { tuple: String },
    /// Semigroup product of two Jacobi tuples: (f.g)_i = g_i(f).
    Compose { f: String, g: String },
    /// Endomorphism operations.
    Endo {
        #[command(subcommand)]
        command: EndoCommand,
    },
    /// Verification suites.
    Verify {
        #[command(subcommand)]
        command: VerifyCommand,
    },
    /// Tame automorphism words.
    Tame {
        #[command(subcommand)]
        command: TameCommand,
    },
    /// The Nagata automorphism tuple.
    Nagata,
    /// Rank-2 Witt algebra generator actions.
    W2 {
        #[command(subcommand)]
        command: W2Command,
    },
}

#[derive(Subcommand)]
enum EndoCommand {
    /// Apply the endomorphism of a Jacobi tuple to a derivation.
    Apply { tuple: String, derivation: String },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Check the Lie-homomorphism identity on all basis pairs.
    Endo {
        tuple: String,
        /// Degree bound; defaults to 3 for arity 2, 2 otherwise.
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Check sigma_(f.g) = sigma_f o sigma_g on all basis elements.
    Xi {
        f: String,
        g: String,
        #[arg(long)]
        degree: Option<u32>,
    },
}

#[derive(Subcommand)]
enum TameCommand {
    /// Evaluate a word to its Jacobi tuple.
    Eval {
        word: String,
        /// Ambient arity; defaults to the smallest arity fitting the word.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Syntactic inverse of a word.
    Invert {
        word: String,
        #[arg(long)]
        n: Option<usize>,
    },
}

#[derive(Subcommand)]
enum W2Command {
    /// Apply a single generator to a W_2 element by the closed-form action.
    Act {
        generator: String,
        element: String,
        /// Use the shear formula without the factor p (negative control).
        #[arg(long)]
        unscaled: bool,
    },
}

fn tuple_text(components: &[Polynomial]) -> String {
    let parts: Vec<String> = components.iter().map(|p| p.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn report_json(report: &VerificationReport) -> serde_json::Value {
    serde_json::to_value(report).expect("report serializes")
}

fn print_report(format: Format, command: &str, inputs: serde_json::Value, report: &VerificationReport) {
    match format {
        Format::Text => {
            if report.pass() {
                println!("pass: {} checks", report.checked);
            } else {
                println!("FAIL: {} of {} checks failed", report.failures, report.checked);
                if let Some(ce) = &report.counterexample {
                    println!("counterexample inputs: {}", ce.inputs.join(", "));
                    println!("  lhs = {}", ce.lhs);
                    println!("  rhs = {}", ce.rhs);
                }
            }
            eprintln!("elapsed: {:?}", report.elapsed);
        }
        Format::Structured => {
            let doc = json!({
                "command": command,
                "inputs": inputs,
                "report": report_json(report),
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
    }
}

/// Errors that map to exit code 1, with the message on stderr.
fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(1)
}

fn load_tuple(text: &str) -> Result<JacobiTuple, String> {
    let components = parse::parse_tuple(text).map_err(|e| e.to_string())?;
    JacobiTuple::try_new(components).map_err(|e| e.to_string())
}

fn run(cli: Cli) -> ExitCode {
    let format = cli.format;
    match cli.command {
        Command::Det { tuple } => {
            let components = match parse::parse_tuple(&tuple) {
                Ok(c) => c,
                Err(e) => return fail(e),
            };
            let m = match jacobi_matrix(&components) {
                Ok(m) => m,
                Err(e) => return fail(e),
            };
            let det = m.determinant();
            let constant = det.as_constant();
            let accepted = matches!(&constant, Some(c) if !num_traits::Zero::is_zero(c));
            match format {
                Format::Text => println!("J = {det}"),
                Format::Structured => {
                    let doc = json!({
                        "command": "det",
                        "inputs": { "tuple": tuple_text(&components) },
                        "jacobian": det.to_string(),
                        "constant": accepted,
                    });
                    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                }
            }
            if accepted {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::Theta { tuple } => {
            let t = match load_tuple(&tuple) {
                Ok(t) => t,
                Err(e) => return fail(e),
            };
            match format {
                Format::Text => {
                    println!("c = {}", t.constant());
                    for (j, th) in t.theta().iter().enumerate() {
                        println!("theta_{} = {}", j + 1, th);
                    }
                }
                Format::Structured => {
                    let doc = json!({
                        "command": "theta",
                        "inputs": { "tuple": tuple_text(t.components()) },
                        "c": t.constant().to_string(),
                        "theta": t.theta().iter().map(|d| d.to_string()).collect::<Vec<_>>(),
                    });
                    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                }
            }
            ExitCode::SUCCESS
        }
        Command::Compose { f, g } => {
            let (tf, tg) = match (load_tuple(&f), load_tuple(&g)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => return fail(e),
            };
            let h = match tf.compose(&tg) {
                Ok(h) => h,
                Err(e) => return fail(e),
            };
            match format {
                Format::Text => {
                    println!("{}", tuple_text(h.components()));
                    println!("c = {}", h.constant());
                }
                Format::Structured => {
                    let doc = json!({
                        "command": "compose",
                        "inputs": {
                            "f": tuple_text(tf.components()),
                            "g": tuple_text(tg.components()),
                        },
                        "product": tuple_text(h.components()),
                        "c": h.constant().to_string(),
                    });
                    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                }
            }
            ExitCode::SUCCESS
        }
        Command::Endo { command } => match command {
            EndoCommand::Apply { tuple, derivation } => {
                let t = match load_tuple(&tuple) {
                    Ok(t) => t,
                    Err(e) => return fail(e),
                };
                let d = match parse::parse_derivation(&derivation, t.arity()) {
                    Ok(d) => d,
                    Err(e) => return fail(e),
                };
                let e = WittEndomorphism::from_tuple(t);
                let image = match e.apply(&d) {
                    Ok(i) => i,
                    Err(err) => return fail(err),
                };
                match format {
                    Format::Text => println!("{image}"),
                    Format::Structured => {
                        let doc = json!({
                            "command": "endo apply",
                            "inputs": {
                                "tuple": tuple_text(e.tuple().components()),
                                "derivation": d.to_string(),
                            },
                            "image": image.to_string(),
                        });
                        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                    }
                }
                ExitCode::SUCCESS
            }
        },
        Command::Verify { command } => match command {
            VerifyCommand::Endo { tuple, degree } => {
                let t = match load_tuple(&tuple) {
                    Ok(t) => t,
                    Err(e) => return fail(e),
                };
                let d = degree.unwrap_or(if t.arity() == 2 { 3 } else { 2 });
                let e = WittEndomorphism::from_tuple(t);
                let report = match verify_endomorphism(&e, d) {
                    Ok(r) => r,
                    Err(err) => return fail(err),
                };
                let inputs = json!({
                    "tuple": tuple_text(e.tuple().components()),
                    "degree": d,
                });
                print_report(format, "verify endo", inputs, &report);
                if report.pass() {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                }
            }
            VerifyCommand::Xi { f, g, degree } => {
                let (tf, tg) = match (load_tuple(&f), load_tuple(&g)) {
                    (Ok(a), Ok(b)) => (a, b),
                    (Err(e), _) | (_, Err(e)) => return fail(e),
                };
                let d = degree.unwrap_or(if tf.arity() == 2 { 3 } else { 2 });
                let report = match verify_xi_homomorphism(&tf, &tg, d) {
                    Ok(r) => r,
                    Err(err) => return fail(err),
                };
                let inputs = json!({
                    "f": tuple_text(tf.components()),
                    "g": tuple_text(tg.components()),
                    "degree": d,
                });
                print_report(format, "verify xi", inputs, &report);
                if report.pass() {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                }
            }
        },
        Command::Tame { command } => match command {
            TameCommand::Eval { word, n } => {
                let arity = n.unwrap_or_else(|| guess_arity(&word));
                let w = match parse::parse_word(&word, arity) {
                    Ok(w) => w,
                    Err(e) => return fail(e),
                };
                let t = match w.to_tuple() {
                    Ok(t) => t,
                    Err(e) => return fail(e),
                };
                match format {
                    Format::Text => {
                        println!("{}", tuple_text(t.components()));
                        println!("c = {}", t.constant());
                    }
                    Format::Structured => {
                        let doc = json!({
                            "command": "tame eval",
                            "inputs": { "word": w.to_string(), "n": arity },
                            "tuple": tuple_text(t.components()),
                            "c": t.constant().to_string(),
                        });
                        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                    }
                }
                ExitCode::SUCCESS
            }
            TameCommand::Invert { word, n } => {
                let arity = n.unwrap_or_else(|| guess_arity(&word));
                let w = match parse::parse_word(&word, arity) {
                    Ok(w) => w,
                    Err(e) => return fail(e),
                };
                let inv = w.invert();
                match format {
                    Format::Text => println!("{inv}"),
                    Format::Structured => {
                        let doc = json!({
                            "command": "tame invert",
                            "inputs": { "word": w.to_string(), "n": arity },
                            "inverse": inv.to_string(),
                        });
                        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                    }
                }
                ExitCode::SUCCESS
            }
        },
        Command::Nagata => {
            let t = autgroup::nagata();
            match format {
                Format::Text => {
                    println!("{}", tuple_text(t.components()));
                    println!("c = {}", t.constant());
                }
                Format::Structured => {
                    let doc = json!({
                        "command": "nagata",
                        "tuple": tuple_text(t.components()),
                        "c": t.constant().to_string(),
                    });
                    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                }
            }
            ExitCode::SUCCESS
        }
        Command::W2 { command } => match command {
            W2Command::Act {
                generator,
                element,
                unscaled,
            } => {
                let g = match parse::parse_generator(&generator) {
                    Ok(g) => g,
                    Err(e) => return fail(e),
                };
                let u: Derivation = match parse::parse_derivation(&element, 2) {
                    Ok(u) => u,
                    Err(e) => return fail(e),
                };
                let image = match autgroup::w2_action(&g, &u, unscaled) {
                    Ok(i) => i,
                    Err(e) => return fail(e),
                };
                match format {
                    Format::Text => println!("{image}"),
                    Format::Structured => {
                        let doc = json!({
                            "command": "w2 act",
                            "inputs": {
                                "generator": g.to_string(),
                                "element": u.to_string(),
                                "unscaled": unscaled,
                            },
                            "image": image.to_string(),
                        });
                        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                    }
                }
                ExitCode::SUCCESS
            }
        },
    }
}

/// Best-effort arity for a word given without --n: parse leniently at a
/// large arity just to read the swap indices, then take the minimum.
fn guess_arity(word: &str) -> usize {
    const PROBE: usize = 64;
    match parse::parse_word(word, PROBE) {
        Ok(w) => parse::minimal_word_arity(w.generators()),
        Err(_) => 2, // the real parse at arity 2 will surface the error
    }
}

fn main() -> ExitCode {
    run(Cli::parse())
}
