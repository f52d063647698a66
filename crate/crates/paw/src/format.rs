//! Text formats for automata (`pa v1`) and correspondence instances
//! (`pcp v1`).
//!
//! Both formats are line based. An automaton file is
//!
//! ```text
//! pa v1
//! alphabet a $
//! states q0 q1
//! initial q0 1/1
//! accepting q0
//! condition safety
//! trans a q0 q0 1/2
//! trans a q0 q1 1/2
//! ...
//! ```
//!
//! Omitted transitions are probability zero. Serialization always writes
//! rationals as `p/q` in lowest terms and keeps the stored symbol and
//! state order, so parse-serialize reaches a fixed point after one round.
//! Parsing is purely syntactic; stochasticity of the rows is checked
//! separately by [`ProbAutomaton::validate`].
//!
//! A correspondence file is
//!
//! ```text
//! pcp v1
//! base 3
//! map a 1 111
//! map b 10111 10
//! ```
//!
//! with `-` standing for an empty image.

use std::collections::BTreeSet;
use std::fmt;

use crate::automaton::{Condition, Distribution, ProbAutomaton};
use crate::pcp::PcpInstance;
use crate::rational::{format_rational, parse_rational, Rational};
use num_traits::Zero;

/// A syntax error, pointing at the 1-based line it was found on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

type ParseResult<T> = std::result::Result<T, ParseError>;

/// Non-blank lines with their original line numbers.
fn logical_lines(text: &str) -> Vec<(usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i + 1, l.split_whitespace().collect()))
        .collect()
}

fn expect_line<'a, 'b>(
    lines: &'b [(usize, Vec<&'a str>)],
    at: usize,
    keyword: &str,
) -> ParseResult<(usize, &'b [&'a str])> {
    match lines.get(at) {
        Some((no, fields)) if fields[0] == keyword => Ok((*no, &fields[1..])),
        Some((no, fields)) => Err(ParseError::new(
            *no,
            format!("expected `{keyword}` line, found `{}`", fields[0]),
        )),
        None => Err(ParseError::new(
            lines.last().map(|(no, _)| *no).unwrap_or(0) + 1,
            format!("missing `{keyword}` line"),
        )),
    }
}

/// Parses an automaton file, returning the automaton together with the
/// acceptance condition named in it. The first syntax error wins.
pub fn parse_automaton(text: &str) -> ParseResult<(ProbAutomaton, Condition)> {
    let lines = logical_lines(text);

    let (no, header) = match lines.first() {
        Some((no, fields)) => (*no, fields.as_slice()),
        None => return Err(ParseError::new(1, "empty file, expected `pa v1`")),
    };
    if header != ["pa", "v1"] {
        return Err(ParseError::new(no, "expected header `pa v1`"));
    }

    let (no, alphabet_toks) = expect_line(&lines, 1, "alphabet")?;
    let mut alphabet: Vec<String> = Vec::new();
    for t in alphabet_toks {
        if alphabet.iter().any(|s| s == t) {
            return Err(ParseError::new(no, format!("duplicate symbol `{t}`")));
        }
        alphabet.push(t.to_string());
    }

    let (no, state_toks) = expect_line(&lines, 2, "states")?;
    if state_toks.is_empty() {
        return Err(ParseError::new(no, "at least one state is required"));
    }
    let mut states: Vec<String> = Vec::new();
    for t in state_toks {
        if states.iter().any(|s| s == t) {
            return Err(ParseError::new(no, format!("duplicate state `{t}`")));
        }
        states.push(t.to_string());
    }
    let state_index = |no: usize, t: &str| -> ParseResult<usize> {
        states
            .iter()
            .position(|s| s == t)
            .ok_or_else(|| ParseError::new(no, format!("unknown state `{t}`")))
    };

    let (no, initial_toks) = expect_line(&lines, 3, "initial")?;
    if initial_toks.len() % 2 != 0 {
        return Err(ParseError::new(
            no,
            "`initial` takes state-probability pairs",
        ));
    }
    let mut initial = vec![Rational::zero(); states.len()];
    for pair in initial_toks.chunks(2) {
        let q = state_index(no, pair[0])?;
        if !initial[q].is_zero() {
            return Err(ParseError::new(
                no,
                format!("state `{}` listed twice in `initial`", pair[0]),
            ));
        }
        initial[q] = parse_rational(pair[1]).map_err(|e| ParseError::new(no, e))?;
    }

    let (no, accepting_toks) = expect_line(&lines, 4, "accepting")?;
    let mut accepting = BTreeSet::new();
    for t in accepting_toks {
        accepting.insert(state_index(no, t)?);
    }

    let (no, condition_toks) = expect_line(&lines, 5, "condition")?;
    let condition = match condition_toks {
        [tok] => Condition::from_token(tok)
            .ok_or_else(|| ParseError::new(no, format!("unknown condition `{tok}`")))?,
        _ => return Err(ParseError::new(no, "`condition` takes exactly one token")),
    };

    let n = states.len();
    let mut matrices = vec![vec![vec![Rational::zero(); n]; n]; alphabet.len()];
    let mut seen = BTreeSet::new();
    for (no, fields) in &lines[6..] {
        let (no, fields) = (*no, fields.as_slice());
        match fields {
            ["trans", sym, from, to, value] => {
                let s = alphabet
                    .iter()
                    .position(|t| t == sym)
                    .ok_or_else(|| ParseError::new(no, format!("unknown symbol `{sym}`")))?;
                let from = state_index(no, from)?;
                let to = state_index(no, to)?;
                if !seen.insert((s, from, to)) {
                    return Err(ParseError::new(
                        no,
                        format!("duplicate transition `{sym} {} {}`", fields[2], fields[3]),
                    ));
                }
                matrices[s][from][to] =
                    parse_rational(value).map_err(|e| ParseError::new(no, e))?;
            }
            ["trans", ..] => {
                return Err(ParseError::new(
                    no,
                    "`trans` takes symbol, source, target, probability",
                ));
            }
            [other, ..] => {
                return Err(ParseError::new(
                    no,
                    format!("expected `trans` line, found `{other}`"),
                ));
            }
            [] => unreachable!("blank lines are filtered out"),
        }
    }

    let automaton = ProbAutomaton::new(
        states,
        alphabet,
        Distribution::from_masses(initial),
        matrices,
        accepting,
    );
    Ok((automaton, condition))
}

/// Serializes an automaton in the `pa v1` format, preserving its stored
/// symbol and state order and listing only nonzero masses.
pub fn serialize_automaton(a: &ProbAutomaton, condition: Condition) -> String {
    let join = |keyword: &str, items: &mut dyn Iterator<Item = String>| -> String {
        let mut line = keyword.to_string();
        for item in items {
            line.push(' ');
            line.push_str(&item);
        }
        line.push('\n');
        line
    };

    let mut out = String::from("pa v1\n");
    out += &join("alphabet", &mut a.alphabet().iter().cloned());
    out += &join("states", &mut a.states().iter().cloned());
    out += &join(
        "initial",
        &mut a
            .initial()
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(q, p)| format!("{} {}", a.state_name(q), format_rational(p))),
    );
    out += &join(
        "accepting",
        &mut a.accepting().iter().map(|&q| a.state_name(q).to_string()),
    );
    out += &join("condition", &mut std::iter::once(condition.token().into()));
    for (s, sym) in a.alphabet().iter().enumerate() {
        for from in 0..a.n_states() {
            for to in 0..a.n_states() {
                let p = a.entry(s, from, to);
                if !p.is_zero() {
                    out += &format!(
                        "trans {} {} {} {}\n",
                        sym,
                        a.state_name(from),
                        a.state_name(to),
                        format_rational(p)
                    );
                }
            }
        }
    }
    out
}

/// Parses a correspondence instance file.
pub fn parse_pcp(text: &str) -> ParseResult<PcpInstance> {
    let lines = logical_lines(text);

    let (no, header) = match lines.first() {
        Some((no, fields)) => (*no, fields.as_slice()),
        None => return Err(ParseError::new(1, "empty file, expected `pcp v1`")),
    };
    if header != ["pcp", "v1"] {
        return Err(ParseError::new(no, "expected header `pcp v1`"));
    }

    let (base_line, base_toks) = expect_line(&lines, 1, "base")?;
    let base: u32 = match base_toks {
        [tok] => tok
            .parse()
            .map_err(|_| ParseError::new(base_line, format!("bad base `{tok}`")))?,
        _ => {
            return Err(ParseError::new(
                base_line,
                "`base` takes exactly one number",
            ))
        }
    };

    let mut pairs: Vec<(String, Vec<u32>, Vec<u32>)> = Vec::new();
    for (no, fields) in &lines[2..] {
        let (no, fields) = (*no, fields.as_slice());
        match fields {
            ["map", sym, first, second] => {
                if pairs.iter().any(|(s, _, _)| s == sym) {
                    return Err(ParseError::new(no, format!("duplicate symbol `{sym}`")));
                }
                let digits = |text: &str| -> ParseResult<Vec<u32>> {
                    if text == "-" {
                        return Ok(Vec::new());
                    }
                    text.chars()
                        .map(|c| match c.to_digit(10) {
                            Some(d) if d < base => Ok(d),
                            _ => Err(ParseError::new(
                                no,
                                format!("bad digit `{c}` for base {base}"),
                            )),
                        })
                        .collect()
                };
                pairs.push((sym.to_string(), digits(first)?, digits(second)?));
            }
            ["map", ..] => {
                return Err(ParseError::new(
                    no,
                    "`map` takes a symbol and two digit strings",
                ));
            }
            [other, ..] => {
                return Err(ParseError::new(
                    no,
                    format!("expected `map` line, found `{other}`"),
                ));
            }
            [] => unreachable!("blank lines are filtered out"),
        }
    }

    // Residual constraints (base range, reserved symbols) live with the
    // instance itself; attribute them to the `base` line.
    PcpInstance::new(base, pairs).map_err(|e| ParseError::new(base_line, e.to_string()))
}

/// Serializes a correspondence instance in the `pcp v1` format.
pub fn serialize_pcp(p: &PcpInstance) -> String {
    let image = |digits: &[u32]| -> String {
        if digits.is_empty() {
            "-".to_string()
        } else {
            digits
                .iter()
                .map(|&d| char::from_digit(d, 10).expect("digits are below 10"))
                .collect()
        }
    };
    let mut out = format!("pcp v1\nbase {}\n", p.base());
    for sym in p.symbols() {
        let first = p.image(crate::pcp::Morphism::First, sym).unwrap();
        let second = p.image(crate::pcp::Morphism::Second, sym).unwrap();
        out += &format!("map {} {} {}\n", sym, image(first), image(second));
    }
    out
}
