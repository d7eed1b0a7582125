//! Text formats: the minterm-list spec, a single-output PLA subset, algebraic
//! expressions, and the JSON report.
//!
//! Minterm spec grammar (whitespace around tokens is ignored):
//!
//! ```text
//! vars=<n>; minterms=<i,j,...>; dontcares=<i,j,...>
//! ```
//!
//! `minterms` lists every minterm including don't-cares, and `dontcares`
//! must be a subset of it. The parsed [`ProblemSpec`] keeps the two sets
//! disjoint. `dontcares` may be omitted or left empty.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::cover::{Cover, MinimizeReport, PIChart};
use crate::cube::{Implicant, ProblemSpec, MAX_VARS};
use crate::error::{Error, ParseError, ParseErrorKind, Result};

/// How variables are named when printing expressions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum VariableNaming {
    /// `A`, `B`, `C`, ... (at most 26 variables).
    #[default]
    Letters,
    /// `x0`, `x1`, `x2`, ...
    Indexed,
}

impl VariableNaming {
    pub fn name(&self, var: u32) -> String {
        match self {
            VariableNaming::Letters => char::from(b'A' + var as u8).to_string(),
            VariableNaming::Indexed => format!("x{var}"),
        }
    }

    fn check(&self, vars: u32) -> Result<()> {
        if *self == VariableNaming::Letters && vars > 26 {
            return Err(Error::TooManyLetters(vars));
        }
        Ok(())
    }
}

/// Column (1-based, in chars) of byte offset `at` in `text`.
fn column_at(text: &str, at: usize) -> usize {
    text[..at].chars().count() + 1
}

/// Splits `s` on `sep`, yielding each piece with its byte offset in `s`.
fn split_with_offsets(s: &str, sep: char) -> impl Iterator<Item = (usize, &str)> {
    let mut start = 0;
    s.split(sep).map(move |piece| {
        let at = start;
        start += piece.len() + sep.len_utf8();
        (at, piece)
    })
}

fn trimmed(base: usize, piece: &str) -> (usize, &str) {
    let lead = piece.len() - piece.trim_start().len();
    (base + lead, piece.trim())
}

fn parse_index_list(text: &str, base: usize, list: &str) -> Result<Vec<(usize, u64)>, ParseError> {
    let (_, whole) = trimmed(base, list);
    if whole.is_empty() {
        return Ok(Vec::new());
    }
    split_with_offsets(list, ',')
        .map(|(off, item)| {
            let (at, tok) = trimmed(base + off, item);
            tok.parse::<u64>().map(|v| (at, v)).map_err(|_| {
                ParseError::new(
                    ParseErrorKind::Syntax(format!("expected a non-negative integer, got `{tok}`")),
                    1,
                    column_at(text, at),
                )
            })
        })
        .collect()
}

/// Parses the minterm-list grammar. With `allow_empty_onset` false, an input
/// whose onset is empty after removing don't-cares is rejected.
pub fn parse_minterm_spec(text: &str, allow_empty_onset: bool) -> Result<ProblemSpec, ParseError> {
    // Treat newlines like spaces so multi-line files work.
    let flat: String = text
        .chars()
        .map(|c| if c == '\n' || c == '\r' { ' ' } else { c })
        .collect();
    let text = flat.as_str();
    let err = |kind, at: usize| ParseError::new(kind, 1, column_at(text, at));

    let mut vars: Option<(usize, &str)> = None;
    let mut minterms: Option<(usize, &str)> = None;
    let mut dontcares: Option<(usize, &str)> = None;
    for (off, clause) in split_with_offsets(text, ';') {
        let (at, clause) = trimmed(off, clause);
        if clause.is_empty() {
            continue;
        }
        let Some(eq) = clause.find('=') else {
            return Err(err(
                ParseErrorKind::Syntax(format!("expected `key=value`, got `{clause}`")),
                at,
            ));
        };
        let key = clause[..eq].trim();
        let value = (at + eq + 1, &clause[eq + 1..]);
        let slot = match key {
            "vars" => &mut vars,
            "minterms" => &mut minterms,
            "dontcares" => &mut dontcares,
            other => {
                return Err(err(
                    ParseErrorKind::Syntax(format!("unknown key `{other}`")),
                    at,
                ));
            }
        };
        if slot.is_some() {
            return Err(err(
                ParseErrorKind::Syntax(format!("`{key}` given twice")),
                at,
            ));
        }
        *slot = Some(value);
    }

    let Some((vars_at, vars_text)) = vars else {
        return Err(err(ParseErrorKind::Syntax("missing `vars=`".into()), 0));
    };
    let (vars_at, vars_tok) = trimmed(vars_at, vars_text);
    let n = match vars_tok.parse::<i64>() {
        Ok(v) if v >= 1 && v <= i64::from(MAX_VARS) => v as u32,
        _ => {
            return Err(err(
                ParseErrorKind::BadVarCount(vars_tok.to_string()),
                vars_at,
            ))
        }
    };
    let Some((min_at, min_text)) = minterms else {
        return Err(err(
            ParseErrorKind::Syntax("missing `minterms=`".into()),
            text.len(),
        ));
    };
    let all = parse_index_list(text, min_at, min_text)?;
    let dcs = match dontcares {
        Some((at, list)) => parse_index_list(text, at, list)?,
        None => Vec::new(),
    };

    let limit = 1u64 << n;
    for list in [&all, &dcs] {
        for (i, &(at, m)) in list.iter().enumerate() {
            if i > 0 {
                let prev = list[i - 1].1;
                if m == prev {
                    return Err(err(ParseErrorKind::Duplicate(m), at));
                }
                if m < prev {
                    return Err(err(ParseErrorKind::NotAscending(m), at));
                }
            }
            if m >= limit {
                return Err(err(
                    ParseErrorKind::OutOfRange {
                        minterm: m,
                        vars: n,
                    },
                    at,
                ));
            }
        }
    }
    let all_set: BTreeSet<u64> = all.iter().map(|&(_, m)| m).collect();
    if let Some(&(at, m)) = dcs.iter().find(|(_, m)| !all_set.contains(m)) {
        return Err(err(ParseErrorKind::DontCareNotInMinterms(m), at));
    }
    let dc: Vec<u64> = dcs.iter().map(|&(_, m)| m).collect();
    let onset: Vec<u64> = all_set
        .into_iter()
        .filter(|m| dc.binary_search(m).is_err())
        .collect();
    if onset.is_empty() && !allow_empty_onset {
        return Err(err(ParseErrorKind::EmptyOnset, min_at));
    }
    Ok(ProblemSpec::new(n, onset, dc).expect("validated above"))
}

/// Parses a single-output PLA. Output `1` marks onset, `-` don't-care and
/// `0` nothing. `#` starts a comment.
pub fn parse_pla(text: &str) -> Result<ProblemSpec, ParseError> {
    let mut vars: Option<u32> = None;
    let mut onset = BTreeSet::new();
    let mut dontcare = BTreeSet::new();
    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.split('#').next().unwrap_or("");
        let content = line.trim();
        if content.is_empty() {
            continue;
        }
        let col = line.len() - line.trim_start().len() + 1;
        if let Some(directive) = content.strip_prefix('.') {
            let mut parts = directive.split_whitespace();
            let name = parts.next().unwrap_or("");
            let arg = parts.next().unwrap_or("");
            match name {
                "i" => match arg.parse::<u32>() {
                    Ok(v) if (1..=MAX_VARS).contains(&v) => vars = Some(v),
                    _ => {
                        return Err(ParseError::new(
                            ParseErrorKind::BadVarCount(arg.to_string()),
                            lineno,
                            col,
                        ))
                    }
                },
                "o" => {
                    if arg != "1" {
                        return Err(ParseError::new(
                            ParseErrorKind::OutputCount(arg.to_string()),
                            lineno,
                            col,
                        ));
                    }
                }
                "e" | "end" => break,
                "p" | "ilb" | "ob" => {}
                "type" if matches!(arg, "f" | "fd") => {}
                _ => {
                    return Err(ParseError::new(
                        ParseErrorKind::UnknownDirective(format!(".{directive}")),
                        lineno,
                        col,
                    ))
                }
            }
            continue;
        }
        let Some(n) = vars else {
            return Err(ParseError::new(ParseErrorKind::MissingInputs, lineno, col));
        };
        let chars: Vec<char> = content.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.len() != n as usize + 1 {
            return Err(ParseError::new(
                ParseErrorKind::CubeWidth {
                    expected: n as usize + 1,
                    got: chars.len(),
                },
                lineno,
                col,
            ));
        }
        let (mut value, mut dashes) = (0u64, 0u64);
        for &c in &chars[..n as usize] {
            value <<= 1;
            dashes <<= 1;
            match c {
                '0' => {}
                '1' => value |= 1,
                '-' => dashes |= 1,
                other => {
                    return Err(ParseError::new(
                        ParseErrorKind::BadCubeChar(other),
                        lineno,
                        col,
                    ))
                }
            }
        }
        let cube = Implicant::new(n, value, dashes).expect("width checked");
        let target = match chars[n as usize] {
            '1' => &mut onset,
            '-' => &mut dontcare,
            '0' => continue,
            other => {
                return Err(ParseError::new(
                    ParseErrorKind::BadCubeChar(other),
                    lineno,
                    col,
                ))
            }
        };
        target.extend(cube.expand_minterms());
    }
    let Some(n) = vars else {
        return Err(ParseError::new(ParseErrorKind::MissingInputs, 1, 1));
    };
    Ok(ProblemSpec::from_sets(n, onset, dontcare).expect("cubes are in range"))
}

/// Renders a cover as a sum of products, e.g. `B'D + BD' + C'D`.
pub fn emit_expression(cover: &Cover, naming: VariableNaming) -> Result<String> {
    naming.check(cover.vars())?;
    match cover.constant() {
        Some(false) => return Ok("0".to_string()),
        Some(true) => return Ok("1".to_string()),
        None => {}
    }
    let terms: Vec<String> = cover
        .implicants()
        .iter()
        .map(|imp| {
            let mut term = String::new();
            for var in 0..imp.vars() {
                if let Some(v) = imp.literal(var) {
                    term.push_str(&naming.name(var));
                    if !v {
                        term.push('\'');
                    }
                }
            }
            term
        })
        .collect();
    Ok(terms.join(" + "))
}

pub fn emit_pla(cover: &Cover) -> String {
    let mut out = String::new();
    let _ = writeln!(out, ".i {}", cover.vars());
    out.push_str(".o 1\n");
    let _ = writeln!(out, ".p {}", cover.len());
    for imp in cover.implicants() {
        let _ = writeln!(out, "{} 1", imp.render('-'));
    }
    out.push_str(".e\n");
    out
}

#[derive(Serialize)]
struct JsonProblem<'a> {
    vars: u32,
    onset: &'a [u64],
    dontcare: &'a [u64],
}

#[derive(Serialize)]
struct JsonChart {
    columns: Vec<u64>,
    rows: Vec<String>,
}

#[derive(Serialize)]
struct JsonCost {
    terms: usize,
    literals: usize,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    problem: JsonProblem<'a>,
    primes: Vec<String>,
    essentials: Vec<String>,
    reduced_chart: JsonChart,
    cover: Vec<String>,
    cost: JsonCost,
}

fn x_notation<'a>(it: impl IntoIterator<Item = &'a Implicant>) -> Vec<String> {
    it.into_iter().map(Implicant::to_string).collect()
}

fn chart_json(chart: &PIChart) -> JsonChart {
    JsonChart {
        columns: chart.columns().to_vec(),
        rows: x_notation(chart.rows()),
    }
}

/// Pretty-printed JSON report with a fixed key order.
pub fn emit_json(report: &MinimizeReport) -> String {
    let cost = report.cover.cost();
    let doc = JsonReport {
        problem: JsonProblem {
            vars: report.problem.vars(),
            onset: report.problem.onset(),
            dontcare: report.problem.dontcare(),
        },
        primes: x_notation(report.primes.iter()),
        essentials: x_notation(&report.essentials),
        reduced_chart: chart_json(&report.reduced),
        cover: x_notation(report.cover.implicants()),
        cost: JsonCost {
            terms: cost.terms,
            literals: cost.literals,
        },
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
    s.push('\n');
    s
}
