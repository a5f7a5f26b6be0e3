//! Command-line front end.
//!
//! Every verb prints one JSON document
//! `{"input": .., "result": .., "rank": .., "level": ..}` on standard output.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | a verification suite reported failures |
//! | 2 | unreadable input: bad syntax, arity, ordinal text or command line |
//! | 3 | semantic error: non-finitary code, level violation, not a proposition, ... |
//! | 4 | a diagram file could not be read |

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value as Json};

use crate::decode::{self, Cardinality};
use crate::error::Error;
use crate::limits::{Diagram, Universal};
use crate::oracle::enumerate::PopulationBounds;
use crate::oracle::suites::{Harness, Suite};
use crate::rank::{complexity, rk, TowerConfig};
use crate::resize::{prop_res, PropCode};
use crate::syntax::{parse, parse_diagram, parse_value, print, print_value};
use crate::tower::{lift, LeveledCode};
use crate::Code;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_SEMANTIC: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "irtower",
    version,
    about = "Universe-tower kernel: ranks, levels, decoding, (co)limits, resizing"
)]
pub struct Cli {
    /// Level budgets as comma-separated ordinals, e.g. "w2*1,w2*2,w2*3".
    #[arg(long, global = true)]
    pub budgets: Option<String>,

    /// Indent the JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank and size of a code.
    Rank { expr: String },
    /// Least level containing a code.
    Level { expr: String },
    /// Decode a code to its elements.
    Eval { expr: String },
    /// Equality of two values of a code.
    Eq {
        expr: String,
        lhs: String,
        rhs: String,
    },
    /// Construct the limit of a diagram file.
    Limit { file: PathBuf },
    /// Construct the colimit of a diagram file.
    Colimit { file: PathBuf },
    /// Lift a code from its least level to level `--to`.
    Lift {
        expr: String,
        #[arg(long)]
        to: usize,
    },
    /// Resize an h-proposition at level `--level` down to level 0.
    Resize {
        expr: String,
        #[arg(long)]
        level: usize,
    },
    /// Run an exhaustive verification suite, or "all".
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 6)]
        max_size: usize,
        #[arg(long, default_value_t = 3)]
        max_fin: u64,
        /// Shuffles evaluation order only; reports are identical for every seed.
        #[arg(long)]
        seed: Option<u64>,
    },
}

enum Failure {
    Kernel(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Kernel(e)
    }
}

struct Output {
    input: Json,
    result: Json,
    rank: Option<String>,
    level: Option<usize>,
    verified: bool,
}

impl Output {
    fn about(input: impl Into<Json>, result: Json, code: &Code, cfg: &TowerConfig) -> Self {
        Output {
            input: input.into(),
            result,
            rank: Some(rk(code).to_string()),
            level: cfg.least_level(code),
            verified: true,
        }
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(output) => {
            let doc = json!({
                "input": output.input,
                "result": output.result,
                "rank": output.rank,
                "level": output.level,
            });
            let text = if cli.pretty {
                serde_json::to_string_pretty(&doc)
            } else {
                serde_json::to_string(&doc)
            }
            .expect("JSON documents always serialize");
            let _ = writeln!(out, "{text}");
            if output.verified {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            }
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(err, "irtower: {msg}");
            EXIT_IO
        }
        Err(Failure::Kernel(e)) => {
            let _ = writeln!(err, "irtower: {e}");
            if e.is_parse_error() {
                EXIT_PARSE
            } else {
                EXIT_SEMANTIC
            }
        }
    }
}

fn config(cli: &Cli) -> Result<TowerConfig, Error> {
    match &cli.budgets {
        Some(text) => TowerConfig::parse(text),
        None => Ok(TowerConfig::default()),
    }
}

fn dispatch(cli: &Cli) -> Result<Output, Failure> {
    let cfg = config(cli)?;
    Ok(match &cli.command {
        Command::Rank { expr } => {
            let c = parse(expr)?;
            Output::about(expr.as_str(), json!(complexity(&c)), &c, &cfg)
        }
        Command::Level { expr } => {
            let c = parse(expr)?;
            let level = cfg.least_level(&c);
            let result = json!({
                "level": level,
                "budget": level.map(|i| cfg.budgets()[i].to_string()),
            });
            Output::about(expr.as_str(), result, &c, &cfg)
        }
        Command::Eval { expr } => {
            let c = parse(expr)?;
            let values: Vec<String> = decode::elements(&c)?.iter().map(print_value).collect();
            let cardinality = match decode::cardinality(&c)? {
                Cardinality::Finite(n) => n,
                Cardinality::Infinite => unreachable!("elements succeeded"),
            };
            let result = json!({ "values": values, "cardinality": cardinality as u64 });
            Output::about(expr.as_str(), result, &c, &cfg)
        }
        Command::Eq { expr, lhs, rhs } => {
            let c = parse(expr)?;
            let (a, b) = (parse_value(lhs)?, parse_value(rhs)?);
            let equal = decode::value_eq(&c, &a, &b)?;
            Output::about(json!([expr, lhs, rhs]), json!(equal), &c, &cfg)
        }
        Command::Limit { file } | Command::Colimit { file } => {
            let text = std::fs::read_to_string(file)
                .map_err(|e| Failure::Io(format!("{}: {e}", file.display())))?;
            let diagram = parse_diagram(&text)?;
            let kind = match cli.command {
                Command::Limit { .. } => Universal::Limit,
                _ => Universal::Colimit,
            };
            construct(kind, &diagram, text.trim(), &cfg)?
        }
        Command::Lift { expr, to } => {
            let c = parse(expr)?;
            let base = LeveledCode::least(c.clone(), &cfg)?;
            let lifted = lift(&base, *to, &cfg)?;
            let result = json!({
                "code": print(lifted.code()),
                "from": base.level(),
                "to": lifted.level(),
            });
            Output::about(expr.as_str(), result, &c, &cfg)
        }
        Command::Resize { expr, level } => {
            let c = parse(expr)?;
            let p = PropCode::new(c.clone(), *level, &cfg)?;
            let r = prop_res(&p, &cfg)?;
            let result = json!({
                "code": print(r.prop.code()),
                "level": r.prop.level(),
                "epsilon": r.epsilon,
            });
            Output::about(expr.as_str(), result, &c, &cfg)
        }
        Command::Verify {
            suite,
            max_size,
            max_fin,
            seed,
        } => {
            let bounds = PopulationBounds::new(*max_size, *max_fin);
            let harness = Harness::new(bounds, cfg).with_seed(*seed);
            let reports = if suite == "all" {
                harness.run_all()?
            } else {
                vec![harness.run(suite.parse::<Suite>()?)?]
            };
            let clean = reports.iter().all(|r| r.is_clean());
            let result = if suite == "all" {
                json!(reports)
            } else {
                json!(reports[0])
            };
            Output {
                input: json!({ "suite": suite, "max_size": max_size, "max_fin": max_fin, "seed": seed }),
                result,
                rank: None,
                level: None,
                verified: clean,
            }
        }
    })
}

fn construct(
    kind: Universal,
    diagram: &Diagram,
    input: &str,
    cfg: &TowerConfig,
) -> Result<Output, Error> {
    let cone = match kind {
        Universal::Limit => diagram.limit()?,
        Universal::Colimit => diagram.colimit()?,
    };
    let values: Vec<String> = decode::elements(&cone.apex)?
        .iter()
        .map(print_value)
        .collect();
    let result = json!({
        "shape": diagram.shape()?,
        "code": print(&cone.apex),
        "cardinality": values.len(),
        "values": values,
        "legs": cone.legs,
    });
    Ok(Output::about(input, result, &cone.apex, cfg))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("irtower").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    fn doc(args: &[&str]) -> Json {
        let (code, out, err) = call(args);
        assert_eq!(code, EXIT_OK, "{err}");
        serde_json::from_str(&out).unwrap()
    }

    #[test]
    fn rank_of_quotient() {
        let d = doc(&["rank", "(Quot (Fin 3) (rel ((fin 0) (fin 1))))"]);
        assert_eq!(d["rank"], "w*1");
        assert_eq!(d["result"]["rank"], "w*1");
        assert_eq!(d["result"]["size"], 3);
        assert_eq!(d["level"], 0);
    }

    #[test]
    fn eval_lists_values() {
        let d = doc(&["eval", "(Pi (Fin 2) (const (Fin 2)))"]);
        assert_eq!(d["result"]["cardinality"], 4);
        assert_eq!(d["result"]["values"].as_array().unwrap().len(), 4);
        assert_eq!(
            d["result"]["values"][0],
            "(fun ((fin 0) (fin 0)) ((fin 1) (fin 0)))"
        );
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["eval", "Nat"]).0, EXIT_SEMANTIC);
        assert_eq!(call(&["eval", "(Fin"]).0, EXIT_PARSE);
        assert_eq!(call(&["rank", "(Fin 1 2)"]).0, EXIT_PARSE);
        assert_eq!(call(&["bogus"]).0, EXIT_PARSE);
        assert_eq!(
            call(&["--budgets", "w2*2,w2*1", "rank", "*"]).0,
            EXIT_SEMANTIC
        );
        assert_eq!(call(&["--budgets", "w3", "rank", "*"]).0, EXIT_PARSE);
        assert_eq!(
            call(&["resize", "(Fin 2)", "--level", "0"]).0,
            EXIT_SEMANTIC
        );
        assert_eq!(call(&["limit", "/nonexistent/diagram"]).0, EXIT_IO);
        assert_eq!(call(&["verify", "--suite", "nope"]).0, EXIT_SEMANTIC);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn lift_and_level() {
        let d = doc(&["lift", "(Pi (Fin 2) (const *))", "--to", "3"]);
        assert_eq!(d["result"]["from"], 0);
        assert_eq!(d["result"]["to"], 3);
        assert_eq!(d["result"]["code"], "(Pi (Fin 2) (const *))");
        assert_eq!(call(&["lift", "*", "--to", "8"]).0, EXIT_SEMANTIC);

        let d = doc(&["--budgets", "w,w2*1", "level", "(Quot (Fin 2) (rel))"]);
        assert_eq!(d["result"]["level"], 1);
        assert_eq!(d["result"]["budget"], "w2*1");
        let d = doc(&["--budgets", "w", "level", "(Quot (Fin 2) (rel))"]);
        assert_eq!(d["level"], Json::Null);
    }

    #[test]
    fn eq_and_resize() {
        let d = doc(&[
            "eq",
            "(Quot (Fin 3) (rel ((fin 0) (fin 2))))",
            "(class (fin 2))",
            "(class (fin 0))",
        ]);
        assert_eq!(d["result"], true);
        let d = doc(&["resize", "(Pi (Fin 2) (const *))", "--level", "1"]);
        assert_eq!(d["result"]["code"], "(Fin 1)");
        assert_eq!(d["result"]["level"], 0);
        assert!(d["result"]["epsilon"]["forward"].is_object());
    }

    #[test]
    fn verify_small() {
        let d = doc(&[
            "verify",
            "--suite",
            "rank-adequacy",
            "--max-size",
            "3",
            "--max-fin",
            "2",
        ]);
        assert_eq!(d["result"]["suite"], "rank-adequacy");
        assert_eq!(d["result"]["failure_count"], 0);
        assert_eq!(d["rank"], Json::Null);
    }

    #[test]
    fn pretty_output_is_the_same_document() {
        let (_, compact, _) = call(&["rank", "*"]);
        let (_, pretty, _) = call(&["--pretty", "rank", "*"]);
        assert!(pretty.lines().count() > 1);
        assert_eq!(
            serde_json::from_str::<Json>(&compact).unwrap(),
            serde_json::from_str::<Json>(&pretty).unwrap()
        );
    }
}
