//! The `liarlab` command line.
//!
//! Exit status is 0 on success, 1 when the input is rejected (unparsable
//! text, an invalid derivation, a number that codes nothing) and 2 on usage
//! errors. With `--json` every command prints a single JSON object, and
//! Gödel codes appear as decimal strings.

use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::eval::{eval_sentence, EvalConfig, Verdict, DEFAULT_SEARCH_BOUND};
use crate::godel::{decode, encode};
use crate::kernel::{
    check_derivation_with, derive_liar_contradiction, enumerate, DerivationJson, Enumeration,
    EnumerationLimits, KernelConfig, Rule, Theory,
};
use crate::paradox::{build_reference_graph, classify_graph, DEFAULT_BUDGET};
use crate::quine::{
    build_natural_liar, diagonalize, is_prime, prime_term_denial, prime_term_function, quine_string,
};
use crate::syntax::{parse, parse_formula, Formula, Node, Term};

#[derive(Debug, Parser)]
#[command(name = "liarlab", version, about = "Quining, Gödel codes, truth and the liar")]
struct Cli {
    /// Print a single JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest value a quantifier search may reach.
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
    bound: Option<u64>,
    /// Largest number of sentences in a reference graph.
    #[arg(long, global = true, value_name = "N")]
    budget: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a formula or term and describe it.
    Parse { text: String },
    /// Print a formula or term in canonical form.
    Print { text: String },
    /// Gödel code of a formula or term.
    Encode { text: String },
    /// Formula or term with the given Gödel code.
    Decode {
        #[arg(value_parser = parse_natural)]
        code: BigUint,
    },
    /// Quine a string: replace each '#' by the quoted string.
    Quine {
        #[arg(long, required_unless_present = "natural_liar")]
        string: Option<String>,
        /// Quine the English liar template instead.
        #[arg(long, conflicts_with = "string")]
        natural_liar: bool,
    },
    /// Build the liar sentence ~T(Q(#n)) and check it is a fixed point.
    Diagonalize,
    /// Value of F(#n) and the sentence it codes.
    PrimeTerm {
        #[arg(long, value_parser = parse_natural)]
        n: BigUint,
    },
    /// Truth value of a sentence in the natural numbers.
    Eval {
        #[arg(long)]
        sentence: String,
    },
    /// Groundedness of a sentence with truth attributions.
    Analyze {
        #[arg(long)]
        sentence: String,
        /// Print the reference graph in DOT syntax.
        #[arg(long)]
        dot: bool,
    },
    /// The derivation of `false` from the liar.
    DeriveLiar,
    /// Check a JSON derivation against the toy arithmetic theory.
    Check {
        /// Path to the derivation, or '-' for standard input.
        file: PathBuf,
        #[arg(long)]
        no_t_scheme: bool,
        #[arg(long)]
        no_term_substitution: bool,
    },
    /// Theorems of the toy arithmetic theory up to an inference depth.
    Enumerate {
        #[arg(long)]
        depth: usize,
    },
}

fn parse_natural(s: &str) -> Result<BigUint, String> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("{s:?} is not a decimal natural number"));
    }
    s.parse::<BigUint>().map_err(|e| e.to_string())
}

/// Text written to standard output and the exit status.
type Outcome = Result<(String, u8), String>;

fn ok(text: impl Into<String>) -> Outcome {
    Ok((text.into(), 0))
}

fn render(cli: &Cli, value: Value, text: impl FnOnce() -> String) -> Outcome {
    if cli.json {
        ok(value.to_string())
    } else {
        ok(text())
    }
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::TrueInN => "TrueInN",
        Verdict::FalseInN => "FalseInN",
        Verdict::Unknown(_) => "Unknown",
    }
}

fn node(text: &str) -> Result<Node, String> {
    parse(text).map_err(|e| format!("parse error: {e}"))
}

fn sentence(text: &str) -> Result<Formula, String> {
    parse_formula(text).map_err(|e| format!("parse error: {e}"))
}

fn config(cli: &Cli) -> EvalConfig {
    EvalConfig::with_bound(cli.bound.unwrap_or(DEFAULT_SEARCH_BOUND)).expect("bound is positive")
}

fn kind(n: &Node) -> &'static str {
    match n {
        Node::Term(_) => "term",
        Node::Formula(_) => "formula",
    }
}

fn dispatch(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Parse { text } => {
            let n = node(text)?;
            let free: Vec<String> = match &n {
                Node::Formula(phi) => phi.free_vars().into_iter().collect(),
                Node::Term(t) => {
                    let mut vars = Default::default();
                    t.collect_vars(&mut vars);
                    vars.into_iter().collect()
                }
            };
            let value = json!({
                "kind": kind(&n),
                "text": n.to_string(),
                "free_vars": free,
                "closed": free.is_empty(),
            });
            render(cli, value, || {
                format!("{}: {}\nfree variables: {}", kind(&n), n, free.join(" "))
            })
        }
        Command::Print { text } => {
            let n = node(text)?;
            render(cli, json!({ "text": n.to_string() }), || n.to_string())
        }
        Command::Encode { text } => {
            let n = node(text)?;
            let code = encode(&n);
            render(
                cli,
                json!({ "kind": kind(&n), "text": n.to_string(), "code": code.to_string() }),
                || code.to_string(),
            )
        }
        Command::Decode { code } => {
            let n = decode(code).ok_or_else(|| format!("{code} is not the code of a term or formula"))?;
            render(
                cli,
                json!({ "code": code.to_string(), "kind": kind(&n), "text": n.to_string() }),
                || n.to_string(),
            )
        }
        Command::Quine {
            string,
            natural_liar,
        } => {
            let (input, output) = if *natural_liar {
                let s = build_natural_liar();
                let input = s
                    .split('\'')
                    .nth(1)
                    .expect("the natural liar quotes its template")
                    .to_string();
                (input, s)
            } else {
                let s = string.clone().expect("clap requires --string");
                let q = quine_string(&s);
                (s, q)
            };
            render(cli, json!({ "input": input, "output": output }), || output.clone())
        }
        Command::Diagonalize => {
            let d = diagonalize();
            let fixed = d.is_fixed_point();
            let value = json!({
                "n": d.n.to_string(),
                "k": d.k.to_string(),
                "liar": d.liar.to_string(),
                "fixed_point": fixed,
            });
            render(cli, value, || {
                format!(
                    "template: {}\nn: {}\nliar: {}\nk: {}\nfixed point: {}",
                    d.template, d.n, d.liar, d.k, fixed
                )
            })
        }
        Command::PrimeTerm { n } => {
            let prime = is_prime(n);
            let term = Term::app(crate::syntax::FnSymbol::F, Term::Num(n.clone()));
            let value = prime_term_function(n);
            let coded = decode(&value).expect("F yields sentence codes");
            let denial = prime_term_denial(n);
            render(
                cli,
                json!({
                    "n": n.to_string(),
                    "prime": prime,
                    "term": term.to_string(),
                    "value": value.to_string(),
                    "sentence": coded.to_string(),
                    "denial": denial.to_string(),
                }),
                || format!("term: {term}\nprime: {prime}\nvalue: {value}\nsentence: {coded}"),
            )
        }
        Command::Eval { sentence: text } => {
            let phi = sentence(text)?;
            let config = config(cli);
            let v = eval_sentence(&phi, &config).map_err(|e| e.to_string())?;
            let mut value = json!({
                "verdict": verdict_name(v),
                "bound": config.search_bound().to_string(),
            });
            if let Some(r) = v.reason() {
                value["reason"] = json!(r.to_string());
            }
            render(cli, value, || match v.reason() {
                Some(r) => format!("Unknown ({r})"),
                None => verdict_name(v).to_string(),
            })
        }
        Command::Analyze {
            sentence: text,
            dot,
        } => {
            let phi = sentence(text)?;
            let config = config(cli);
            let budget = cli.budget.unwrap_or(DEFAULT_BUDGET);
            let graph = build_reference_graph(&phi, &config, budget).map_err(|e| e.to_string())?;
            let verdict = classify_graph(&graph, &config).map_err(|e| e.to_string())?;
            let mut value = json!({
                "verdict": verdict.label(),
                "nodes": graph.nodes().len(),
                "edges": graph.edges().count(),
                "partial": graph.is_partial(),
            });
            if *dot {
                value["dot"] = json!(graph.to_dot());
            }
            render(cli, value, || {
                if *dot {
                    graph.to_dot().trim_end().to_string()
                } else {
                    verdict.label().to_string()
                }
            })
        }
        Command::DeriveLiar => {
            let d = derive_liar_contradiction();
            let exported = DerivationJson::from(&d);
            if cli.json {
                return ok(exported.to_json_pretty());
            }
            let lines: Vec<String> = d
                .steps
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    let premises = s.justification.premises();
                    if premises.is_empty() {
                        format!("{i}. {} [{}]", s.conclusion, s.justification.rule())
                    } else {
                        let p: Vec<String> = premises.iter().map(usize::to_string).collect();
                        format!("{i}. {} [{} {}]", s.conclusion, s.justification.rule(), p.join(","))
                    }
                })
                .collect();
            ok(lines.join("\n"))
        }
        Command::Check {
            file,
            no_t_scheme,
            no_term_substitution,
        } => {
            let text = if file.as_os_str() == "-" {
                let mut s = String::new();
                io::stdin().read_to_string(&mut s).map_err(|e| e.to_string())?;
                s
            } else {
                std::fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?
            };
            let d = DerivationJson::from_json(&text)
                .and_then(|j| j.to_derivation())
                .map_err(|e| e.to_string())?;
            let mut rules = KernelConfig::default();
            if *no_t_scheme {
                rules = rules.disable(Rule::TScheme);
            }
            if *no_term_substitution {
                rules = rules.disable(Rule::TermSubstitution);
            }
            let result = check_derivation_with(&d, &Theory::toy_arithmetic(), &config(cli), &rules);
            let conclusion = d.conclusion().map(Formula::to_string);
            match result {
                Ok(()) => render(
                    cli,
                    json!({ "valid": true, "steps": d.steps.len(), "conclusion": conclusion }),
                    || match &conclusion {
                        Some(c) => format!("valid: {} steps, concludes {c}", d.steps.len()),
                        None => "valid: empty derivation".to_string(),
                    },
                ),
                Err(e) => {
                    let value = json!({
                        "valid": false,
                        "step": e.step,
                        "rule": e.rule.name(),
                        "reason": e.reason.to_string(),
                    });
                    let text = if cli.json {
                        value.to_string()
                    } else {
                        format!("invalid: {e}")
                    };
                    Ok((text, 1))
                }
            }
        }
        Command::Enumerate { depth } => {
            let config = config(cli);
            let theory = Theory::toy_arithmetic();
            let e: Enumeration =
                enumerate(&theory, *depth, &config, &EnumerationLimits::default())
                    .map_err(|e| e.to_string())?;
            let mut rows = Vec::new();
            for phi in e.theorems() {
                let v = eval_sentence(&phi, &config).map_err(|e| e.to_string())?;
                rows.push((e.depth_of(&phi).expect("enumerated"), verdict_name(v), phi));
            }
            let value = json!({
                "theory": theory.name,
                "depth": depth,
                "count": rows.len(),
                "theorems": rows
                    .iter()
                    .map(|(d, v, phi)| json!({ "depth": d, "verdict": v, "formula": phi.to_string() }))
                    .collect::<Vec<_>>(),
            });
            render(cli, value, || {
                rows.iter()
                    .map(|(d, v, phi)| format!("{d}\t{v}\t{phi}"))
                    .collect::<Vec<_>>()
                    .join("\n")
            })
        }
    }
}

/// Runs the command line with `args` (program name first), writing to the
/// given streams. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    2
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok((text, code)) => {
            let _ = writeln!(out, "{text}");
            code
        }
        Err(message) => {
            if cli.json {
                let _ = writeln!(out, "{}", json!({ "error": message }));
            }
            let _ = writeln!(err, "liarlab: {message}");
            1
        }
    }
}

pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run(args, &mut io::stdout().lock(), &mut io::stderr().lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (u8, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("liarlab").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn quine() {
        assert_eq!(call(&["quine", "--string", "ab#c"]).1, "ab'ab#c'c\n");
        assert_eq!(call(&["quine", "--string", "abc"]).1, "abc\n");
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&[]).0, 2);
        assert_eq!(call(&["quine"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["eval", "--sentence", "0 = 0", "--bound", "0"]).0, 2);
        assert_eq!(call(&["decode", "12x"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn domain_errors_exit_one() {
        let (code, _, err) = call(&["parse", "0 ="]);
        assert_eq!(code, 1);
        assert!(err.contains("parse error"));
        assert_eq!(call(&["decode", "5"]).0, 1);
        assert_eq!(call(&["eval", "--sentence", "x = 0"]).0, 1);
    }

    #[test]
    fn encode_decode() {
        let (code, out, _) = call(&["encode", "0 = 0"]);
        assert_eq!((code, out.as_str()), (0, "562773\n"));
        assert_eq!(call(&["decode", "562773"]).1, "0 = 0\n");
        let (_, out, _) = call(&["--json", "encode", "0 = 0"]);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["code"], "562773");
    }

    #[test]
    fn eval_json() {
        let (_, out, _) = call(&["eval", "--sentence", "forall x. x = x", "--bound", "10", "--json"]);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["verdict"], "Unknown");
        assert_eq!(v["reason"], "bound-exceeded");
        assert_eq!(v["bound"], "10");
    }

    #[test]
    fn analyze() {
        assert_eq!(call(&["analyze", "--sentence", "~T(F(#7))"]).1, "GroundedFalse\n");
        assert_eq!(call(&["analyze", "--sentence", "~T(F(#6))"]).1, "Paradoxical\n");
        let (_, out, _) = call(&["analyze", "--sentence", "~T(F(#6))", "--dot"]);
        assert!(out.starts_with("digraph"));
    }
}
