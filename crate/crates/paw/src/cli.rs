//! Command-line front end.
//!
//! Results go to standard output (or a single JSON object with `--json`),
//! error messages to standard error. Exit codes: 0 success, 1 validation
//! or other semantic failures, 2 syntax and usage failures, 3 for asking
//! a question the file's acceptance condition does not support.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::automaton::{Condition, ProbAutomaton};
use crate::error::Error;
use crate::evaluator::eval_lasso;
use crate::format::{parse_automaton, parse_pcp, serialize_automaton};
use crate::limit::{embed_limit_reduction, limit_pair, witness_sequence};
use crate::mc::simulate;
use crate::pcp::{equality_gadget, rescale, solve_bounded, value_gadget, PcpInstance};
use crate::qualitative::{
    decide_almost_safety, decide_limit_safety, decide_positive_reachability,
};
use crate::rational::{decimal_string, format_rational, parse_rational, to_f64, Rational};
use crate::word::LassoWord;

const EXIT_OK: i32 = 0;
const EXIT_SEMANTIC: i32 = 1;
const EXIT_USAGE: i32 = 2;
const EXIT_UNSUPPORTED: i32 = 3;

#[derive(Parser)]
#[command(
    name = "paw",
    version,
    about = "Exact analysis of probabilistic automata on ultimately periodic words"
)]
struct Cli {
    /// Emit one machine-readable JSON object instead of plain lines.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an automaton file for structural problems.
    Validate { file: PathBuf },
    /// Exact value of an automaton on an ultimately periodic word.
    Eval {
        file: PathBuf,
        /// The word, written `u ; v` for the infinite word u v v v ...
        #[arg(long)]
        word: String,
    },
    /// Construct a reduction automaton and write it with its parts.
    #[command(subcommand)]
    BuildGadget(GadgetCommand),
    /// Move an automaton's decision threshold by affine mixing.
    Rescale {
        file: PathBuf,
        /// Threshold the automaton currently uses.
        #[arg(long)]
        from: String,
        /// Threshold the rewritten automaton should use.
        #[arg(long)]
        to: String,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Qualitative decisions with witness words.
    #[command(subcommand)]
    Decide(DecideCommand),
    /// A word pushing the coin-game pair above 1 - 2 eps.
    WitnessLimit {
        /// Coin bias, strictly between 1/2 and 1.
        #[arg(long)]
        x: String,
        #[arg(long)]
        eps: String,
    },
    /// Monte Carlo estimate of a word's value.
    Simulate {
        file: PathBuf,
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 64)]
        horizon: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Breadth-first search for a correspondence solution.
    SolvePcp {
        file: PathBuf,
        /// Longest solution length to consider.
        #[arg(long)]
        maxlen: usize,
    },
}

#[derive(Subcommand)]
enum GadgetCommand {
    /// Safety automaton hitting threshold 1/3 exactly on solutions.
    Equality {
        pcpfile: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Safety automaton exceeding threshold 1/8 exactly on solutions.
    Value {
        pcpfile: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Coin-game pair whose supremum value is 1 exactly when x > 1/2.
    Limit {
        #[arg(long)]
        x: String,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Embed an acceptance-absorbing automaton as the coin of the pair.
    Embed {
        bfile: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Subcommand)]
enum DecideCommand {
    /// Is the safety value exactly 1?
    AlmostSafety { file: PathBuf },
    /// Do values come arbitrarily close to 1?
    LimitSafety { file: PathBuf },
    /// Is the reachability value positive?
    PositiveReach { file: PathBuf },
}

/// A command failure: what to print on standard error and how to exit.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnsupportedCondition(_) => EXIT_UNSUPPORTED,
            _ => EXIT_SEMANTIC,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// What a successful command prints.
#[derive(Debug)]
struct Outcome {
    lines: Vec<String>,
    json: Value,
    code: i32,
}

impl Outcome {
    fn ok(lines: Vec<String>, json: Value) -> Self {
        Outcome {
            lines,
            json,
            code: EXIT_OK,
        }
    }
}

/// Entry point for the binary; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    let _ = env_logger::Builder::from_env(
        env_logger::Env::default().default_filter_or("warn"),
    )
    .try_init();
    match execute(&cli.command) {
        Ok(out) => {
            if cli.json {
                println!("{}", out.json);
            } else {
                for line in &out.lines {
                    println!("{line}");
                }
            }
            out.code
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, content: &str) -> Result<(), Failure> {
    fs::write(path, content)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

/// Loads and syntax-checks an automaton file (exit 2 on failure).
fn load_automaton(path: &Path) -> Result<(ProbAutomaton, Condition), Failure> {
    let text = read_file(path)?;
    parse_automaton(&text)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

/// Like [`load_automaton`] but additionally requires stochastic rows
/// (exit 1 on validation findings).
fn load_checked(path: &Path) -> Result<(ProbAutomaton, Condition), Failure> {
    let (a, condition) = load_automaton(path)?;
    let report = a.validate();
    if !report.is_empty() {
        return Err(Failure {
            code: EXIT_SEMANTIC,
            message: format!("{}: {}", path.display(), report.issues()[0]),
        });
    }
    Ok((a, condition))
}

fn load_pcp(path: &Path) -> Result<PcpInstance, Failure> {
    let text = read_file(path)?;
    parse_pcp(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

/// Rational given as a flag value; malformed text is a usage error.
fn flag_rational(name: &str, text: &str) -> Result<Rational, Failure> {
    parse_rational(text).map_err(|e| Failure::usage(format!("--{name}: {e}")))
}

fn flag_word(text: &str) -> Result<LassoWord, Failure> {
    LassoWord::parse(text).map_err(|e| Failure::usage(format!("--word: {e}")))
}

fn execute(command: &Command) -> Result<Outcome, Failure> {
    match command {
        Command::Validate { file } => {
            let (a, condition) = load_automaton(file)?;
            let inputs = json!({"file": file.display().to_string()});
            let report = a.validate();
            if report.is_empty() {
                Ok(Outcome::ok(
                    vec![format!("ok ({} condition)", condition.token())],
                    json!({"command": "validate", "inputs": inputs, "result": "ok"}),
                ))
            } else {
                let issues: Vec<String> =
                    report.issues().iter().map(|i| i.to_string()).collect();
                Ok(Outcome {
                    lines: issues.clone(),
                    json: json!({"command": "validate", "inputs": inputs, "result": issues}),
                    code: EXIT_SEMANTIC,
                })
            }
        }

        Command::Eval { file, word } => {
            let (a, condition) = load_checked(file)?;
            let w = flag_word(word)?;
            let value = eval_lasso(&a, condition, &w)?;
            let exact = format_rational(&value);
            Ok(Outcome::ok(
                vec![exact.clone(), format!("~ {}", decimal_string(&value))],
                json!({
                    "command": "eval",
                    "inputs": {
                        "file": file.display().to_string(),
                        "word": word,
                        "condition": condition.token(),
                    },
                    "result": exact,
                    "exact": exact,
                    "decimal": to_f64(&value),
                }),
            ))
        }

        Command::BuildGadget(which) => build_gadget(which),

        Command::Rescale {
            file,
            from,
            to,
            output,
        } => {
            let (a, condition) = load_checked(file)?;
            let from = flag_rational("from", from)?;
            let to = flag_rational("to", to)?;
            let rescaled = rescale(&a, &from, &to)?;
            write_file(output, &serialize_automaton(&rescaled, condition))?;
            let exact = format_rational(&to);
            Ok(Outcome::ok(
                vec![
                    format!("wrote {}", output.display()),
                    format!("threshold {exact}"),
                ],
                json!({
                    "command": "rescale",
                    "inputs": {
                        "file": file.display().to_string(),
                        "from": format_rational(&from),
                        "to": exact,
                    },
                    "result": {"output": output.display().to_string()},
                    "exact": exact,
                    "decimal": to_f64(&to),
                }),
            ))
        }

        Command::Decide(which) => {
            let (question, file) = match which {
                DecideCommand::AlmostSafety { file } => ("almost-safety", file),
                DecideCommand::LimitSafety { file } => ("limit-safety", file),
                DecideCommand::PositiveReach { file } => ("positive-reach", file),
            };
            let (a, condition) = load_checked(file)?;
            let required = match which {
                DecideCommand::PositiveReach { .. } => Condition::Reachability,
                _ => Condition::Safety,
            };
            if condition != required {
                return Err(Failure {
                    code: EXIT_UNSUPPORTED,
                    message: format!(
                        "`{question}` reads `{}` automata, file has condition `{}`",
                        required.token(),
                        condition.token()
                    ),
                });
            }
            let (yes, witness) = match which {
                DecideCommand::AlmostSafety { .. } => decide_almost_safety(&a),
                DecideCommand::LimitSafety { .. } => decide_limit_safety(&a),
                DecideCommand::PositiveReach { .. } => decide_positive_reachability(&a),
            };
            let verdict = if yes { "YES" } else { "NO" };
            let mut lines = vec![verdict.to_string()];
            let mut json = json!({
                "command": "decide",
                "inputs": {
                    "file": file.display().to_string(),
                    "question": question,
                },
                "result": verdict,
            });
            if let Some(w) = witness {
                lines.push(format!("witness {w}"));
                json["witness"] = Value::String(w.to_string());
            }
            Ok(Outcome::ok(lines, json))
        }

        Command::WitnessLimit { x, eps } => {
            let x = flag_rational("x", x)?;
            let eps = flag_rational("eps", eps)?;
            let ws = witness_sequence(&x, &eps)?;
            let word = ws.word();
            let ns: Vec<String> = ws.ns.iter().map(|n| n.to_string()).collect();
            Ok(Outcome::ok(
                vec![
                    format!("J {}", ws.ns.len()),
                    format!("n {}", ns.join(" ")),
                    format!("word {word}"),
                ],
                json!({
                    "command": "witness-limit",
                    "inputs": {
                        "x": format_rational(&x),
                        "eps": format_rational(&eps),
                    },
                    "result": {"J": ws.ns.len(), "n": ws.ns, "shift": ws.shift},
                    "witness": word.to_string(),
                }),
            ))
        }

        Command::Simulate {
            file,
            word,
            trials,
            horizon,
            seed,
        } => {
            let (a, condition) = load_checked(file)?;
            let w = flag_word(word)?;
            let est = simulate(&a, condition, &w, *trials, *horizon, *seed)?;
            Ok(Outcome::ok(
                vec![
                    format!("mean {}", est.mean),
                    format!("se {}", est.standard_error),
                    format!("trials {} seed {}", est.trials, est.seed),
                ],
                json!({
                    "command": "simulate",
                    "inputs": {
                        "file": file.display().to_string(),
                        "word": word,
                        "condition": condition.token(),
                        "trials": trials,
                        "horizon": horizon,
                        "seed": seed,
                    },
                    "result": {
                        "mean": est.mean,
                        "standard_error": est.standard_error,
                        "trials": est.trials,
                        "seed": est.seed,
                    },
                    "decimal": est.mean,
                }),
            ))
        }

        Command::SolvePcp { file, maxlen } => {
            let p = load_pcp(file)?;
            let inputs = json!({
                "file": file.display().to_string(),
                "maxlen": maxlen,
            });
            match solve_bounded(&p, *maxlen) {
                Some(w) => {
                    let text = w.to_string();
                    Ok(Outcome::ok(
                        vec![text.clone()],
                        json!({
                            "command": "solve-pcp",
                            "inputs": inputs,
                            "result": text.clone(),
                            "witness": text,
                        }),
                    ))
                }
                None => Ok(Outcome::ok(
                    vec!["NONE".to_string()],
                    json!({"command": "solve-pcp", "inputs": inputs, "result": "NONE"}),
                )),
            }
        }
    }
}

fn build_gadget(which: &GadgetCommand) -> Result<Outcome, Failure> {
    match which {
        GadgetCommand::Equality { pcpfile, output } => {
            let p = load_pcp(pcpfile)?;
            let g = equality_gadget(&p)?;
            let components: Vec<(&str, &ProbAutomaton)> = g
                .components
                .iter()
                .map(|(name, a)| (name.as_str(), a))
                .collect();
            write_gadget(
                json!({"pcpfile": pcpfile.display().to_string()}),
                output,
                &g.kind,
                &g.automaton,
                g.condition,
                &g.threshold,
                &components,
            )
        }
        GadgetCommand::Value { pcpfile, output } => {
            let p = load_pcp(pcpfile)?;
            let g = value_gadget(&p)?;
            let components: Vec<(&str, &ProbAutomaton)> = g
                .components
                .iter()
                .map(|(name, a)| (name.as_str(), a))
                .collect();
            write_gadget(
                json!({"pcpfile": pcpfile.display().to_string()}),
                output,
                &g.kind,
                &g.automaton,
                g.condition,
                &g.threshold,
                &components,
            )
        }
        GadgetCommand::Limit { x, output } => {
            let x = flag_rational("x", x)?;
            let pair = limit_pair(&x)?;
            write_gadget(
                json!({"x": format_rational(&x)}),
                output,
                "limit",
                pair.combined(),
                Condition::Reachability,
                &Rational::from_integer(1.into()),
                &[("left", pair.left()), ("right", pair.right())],
            )
        }
        GadgetCommand::Embed { bfile, output } => {
            let (b, _) = load_checked(bfile)?;
            let embedded = embed_limit_reduction(&b)?;
            write_gadget(
                json!({"bfile": bfile.display().to_string()}),
                output,
                "embed",
                &embedded,
                Condition::Reachability,
                &Rational::from_integer(1.into()),
                &[],
            )
        }
    }
}

/// Writes `gadget.pa`, one `.pa` file per component, and a `meta.txt`
/// naming the kind, condition, and threshold.
fn write_gadget(
    inputs: Value,
    dir: &Path,
    kind: &str,
    automaton: &ProbAutomaton,
    condition: Condition,
    threshold: &Rational,
    components: &[(&str, &ProbAutomaton)],
) -> Result<Outcome, Failure> {
    fs::create_dir_all(dir)
        .map_err(|e| Failure::usage(format!("{}: {e}", dir.display())))?;

    let mut lines = Vec::new();
    let mut files = Vec::new();
    let mut put = |name: &str, content: &str| -> Result<(), Failure> {
        let path = dir.join(name);
        write_file(&path, content)?;
        lines.push(format!("wrote {}", path.display()));
        files.push(name.to_string());
        Ok(())
    };

    put("gadget.pa", &serialize_automaton(automaton, condition))?;
    let mut meta = format!(
        "gadget v1\nkind {kind}\ncondition {}\nlambda {}\n",
        condition.token(),
        format_rational(threshold)
    );
    for (name, a) in components {
        let file = format!("{name}.pa");
        put(&file, &serialize_automaton(a, condition))?;
        meta += &format!("component {name} {file}\n");
    }
    put("meta.txt", &meta)?;

    let exact = format_rational(threshold);
    lines.push(format!("threshold {exact}"));
    Ok(Outcome::ok(
        lines,
        json!({
            "command": "build-gadget",
            "inputs": inputs,
            "result": {"kind": kind, "dir": dir.display().to_string(), "files": files},
            "exact": exact,
            "decimal": to_f64(threshold),
        }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn tmp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    fn coin_file() -> tempfile::NamedTempFile {
        tmp(concat!(
            "pa v1\n",
            "alphabet a\n",
            "states heads tails\n",
            "initial heads 1/1\n",
            "accepting heads\n",
            "condition safety\n",
            "trans a heads heads 1/2\n",
            "trans a heads tails 1/2\n",
            "trans a tails tails 1/1\n",
        ))
    }

    #[test]
    fn eval_prints_exact_value_first() {
        let f = coin_file();
        let out = execute(&Command::Eval {
            file: f.path().to_path_buf(),
            word: "a a ; a".to_string(),
        })
        .unwrap();
        assert_eq!(out.code, EXIT_OK);
        assert_eq!(out.lines[0], "0/1");
        assert_eq!(out.json["exact"], "0/1");
    }

    #[test]
    fn validate_flags_bad_rows_with_exit_one() {
        let f = tmp(
            "pa v1\nalphabet a\nstates q\ninitial q 1/1\naccepting q\ncondition safety\ntrans a q q 1/2\n",
        );
        let out = execute(&Command::Validate {
            file: f.path().to_path_buf(),
        })
        .unwrap();
        assert_eq!(out.code, EXIT_SEMANTIC);
        assert!(out.lines[0].contains("row"), "{}", out.lines[0]);
    }

    #[test]
    fn decide_rejects_mismatched_conditions_with_exit_three() {
        let f = tmp(
            "pa v1\nalphabet a\nstates q\ninitial q 1/1\naccepting q\ncondition buchi\ntrans a q q 1/1\n",
        );
        let err = execute(&Command::Decide(DecideCommand::AlmostSafety {
            file: f.path().to_path_buf(),
        }))
        .unwrap_err();
        assert_eq!(err.code, EXIT_UNSUPPORTED);
    }

    #[test]
    fn decide_reports_witnesses() {
        let f = tmp(
            "pa v1\nalphabet a\nstates q\ninitial q 1/1\naccepting q\ncondition safety\ntrans a q q 1/1\n",
        );
        let out = execute(&Command::Decide(DecideCommand::AlmostSafety {
            file: f.path().to_path_buf(),
        }))
        .unwrap();
        assert_eq!(out.lines[0], "YES");
        assert_eq!(out.lines[1], "witness ; a");
        assert_eq!(out.json["witness"], "; a");
    }

    #[test]
    fn missing_files_are_usage_errors() {
        let err = execute(&Command::Validate {
            file: PathBuf::from("/nonexistent/x.pa"),
        })
        .unwrap_err();
        assert_eq!(err.code, EXIT_USAGE);
    }

    #[test]
    fn build_gadget_outputs_validate_and_reparse() {
        let p = tmp("pcp v1\nbase 2\nmap a 1 1\n");
        let dir = tempfile::tempdir().unwrap();
        let out = execute(&Command::BuildGadget(GadgetCommand::Equality {
            pcpfile: p.path().to_path_buf(),
            output: dir.path().to_path_buf(),
        }))
        .unwrap();
        assert_eq!(out.code, EXIT_OK);
        assert!(out.lines.iter().any(|l| l.ends_with("threshold 1/3")));
        let (g, cond) = load_checked(&dir.path().join("gadget.pa")).unwrap();
        assert_eq!(cond, Condition::Safety);
        let w = LassoWord::parse("a $ ; $").unwrap();
        assert_eq!(
            eval_lasso(&g, cond, &w).unwrap(),
            crate::rational::rat(1, 3)
        );
        let meta = fs::read_to_string(dir.path().join("meta.txt")).unwrap();
        assert!(meta.starts_with("gadget v1\nkind equality\n"), "{meta}");
        assert!(meta.contains("lambda 1/3"), "{meta}");
    }

    #[test]
    fn witness_limit_emits_the_profile_and_word() {
        let out = execute(&Command::WitnessLimit {
            x: "3/4".to_string(),
            eps: "1/4".to_string(),
        })
        .unwrap();
        assert_eq!(out.lines[0], "J 1");
        assert!(out.lines[2].starts_with("word "), "{}", out.lines[2]);
        let err = execute(&Command::WitnessLimit {
            x: "1/3".to_string(),
            eps: "1/4".to_string(),
        })
        .unwrap_err();
        assert_eq!(err.code, EXIT_SEMANTIC);
    }

    #[test]
    fn solve_pcp_prints_none_when_out_of_reach() {
        let p = tmp("pcp v1\nbase 2\nmap a 1 11\n");
        let out = execute(&Command::SolvePcp {
            file: p.path().to_path_buf(),
            maxlen: 4,
        })
        .unwrap();
        assert_eq!(out.lines, vec!["NONE".to_string()]);
    }
}
