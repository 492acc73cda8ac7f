//! Problem files.
//!
//! ```text
//! # comment
//! ring z1 z2 : degrevlex
//! q0 = z1^2
//! q1 = z1*z2
//! q2 = z2^2
//! tracefree = c00 + c11; c10 + c21
//! ```
//!
//! The order after `:` is optional and may be `degrevlex`, `lex` or
//! `block:k`. Generators are `q<i>` lines, stored by index. Error positions
//! are 1-based line and column in the file.

use cover_forge::cover::CoverProblem;
use cover_forge::groebner::Ideal;
use cover_forge::{Error, Polynomial, Result, Ring, TermOrder};

#[derive(Clone, Debug)]
pub struct ProblemFile {
    pub ring: Ring,
    pub gens: Vec<Polynomial>,
    /// Line of each generator, for error reporting.
    pub lines: Vec<usize>,
    pub trace_free: Option<Vec<String>>,
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

pub fn parse_order(text: &str) -> Option<TermOrder> {
    match text {
        "degrevlex" => Some(TermOrder::DegRevLex),
        "lex" => Some(TermOrder::Lex),
        _ => text
            .strip_prefix("block:")?
            .parse()
            .ok()
            .map(TermOrder::Block),
    }
}

pub fn order_name(order: TermOrder) -> String {
    match order {
        TermOrder::DegRevLex => "degrevlex".into(),
        TermOrder::Lex => "lex".into(),
        TermOrder::Block(k) => format!("block:{k}"),
    }
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Column (1-based) of byte offset `at` in `line`.
fn column(line: &str, at: usize) -> usize {
    line[..at].chars().count() + 1
}

fn parse_ring(no: usize, line: &str, rest_at: usize) -> Result<Ring> {
    let rest = &line[rest_at..];
    let (vars_text, order) = match rest.find(':') {
        Some(k) => {
            let name = rest[k + 1..].trim();
            let order = parse_order(name).ok_or_else(|| {
                let at = rest_at + k + 1 + (rest[k + 1..].len() - rest[k + 1..].trim_start().len());
                parse_error(no, column(line, at), format!("unknown term order `{name}`"))
            })?;
            (&rest[..k], order)
        }
        None => (rest, TermOrder::DegRevLex),
    };
    let mut names = Vec::new();
    let mut offset = rest_at;
    for word in vars_text.split_whitespace() {
        let at = offset
            + line[offset..]
                .find(word)
                .expect("word comes from this line");
        offset = at + word.len();
        if !is_name(word) {
            return Err(parse_error(
                no,
                column(line, at),
                format!("invalid variable name `{word}`"),
            ));
        }
        if names.contains(&word) {
            return Err(parse_error(
                no,
                column(line, at),
                format!("variable `{word}` declared twice"),
            ));
        }
        names.push(word);
    }
    if names.is_empty() {
        return Err(parse_error(
            no,
            column(line, rest_at),
            "ring declares no variables",
        ));
    }
    Ring::new(&names, order)
}

/// Shift an error from a parse of `line[at..]` to file coordinates.
fn relocate(e: Error, no: usize, line: &str, at: usize) -> Error {
    match e {
        Error::Parse {
            column: c, message, ..
        } => {
            let byte = line[at..]
                .char_indices()
                .nth(c.saturating_sub(1))
                .map(|(b, _)| at + b)
                .unwrap_or(line.len());
            parse_error(no, column(line, byte), message)
        }
        Error::UnknownVariable(v) => {
            parse_error(no, column(line, at), format!("unknown variable `{v}`"))
        }
        other => other,
    }
}

pub fn parse_problem(text: &str) -> Result<ProblemFile> {
    let mut ring: Option<Ring> = None;
    let mut gens: Vec<(usize, usize, Polynomial)> = Vec::new();
    let mut trace_free = None;
    for (k, raw) in text.lines().enumerate() {
        let no = k + 1;
        let line = raw.split('#').next().unwrap_or("");
        let body = line.trim_start();
        if body.trim().is_empty() {
            continue;
        }
        let indent = line.len() - body.len();
        if let Some(rest) = body.strip_prefix("ring") {
            if rest.starts_with(char::is_whitespace) {
                if ring.is_some() {
                    return Err(parse_error(
                        no,
                        column(line, indent),
                        "second ring declaration",
                    ));
                }
                ring = Some(parse_ring(no, line, indent + 4)?);
                continue;
            }
        }
        let Some(eq) = body.find('=') else {
            return Err(parse_error(
                no,
                column(line, indent),
                "expected `ring ...`, `q<i> = ...` or `tracefree = ...`",
            ));
        };
        let label = body[..eq].trim();
        let value_at = indent + eq + 1;
        let Some(r) = ring.as_ref() else {
            return Err(parse_error(
                no,
                column(line, indent),
                "generator before the ring declaration",
            ));
        };
        if label == "tracefree" {
            if trace_free.is_some() {
                return Err(parse_error(
                    no,
                    column(line, indent),
                    "second tracefree line",
                ));
            }
            let forms: Vec<String> = line[value_at..]
                .split(';')
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect();
            if forms.is_empty() {
                return Err(parse_error(
                    no,
                    column(line, value_at),
                    "empty tracefree block",
                ));
            }
            trace_free = Some(forms);
            continue;
        }
        let index = label
            .strip_prefix('q')
            .filter(|d| !d.is_empty() && d.chars().all(|c| c.is_ascii_digit()))
            .and_then(|d| d.parse::<usize>().ok())
            .ok_or_else(|| {
                parse_error(no, column(line, indent), format!("unknown label `{label}`"))
            })?;
        if gens.iter().any(|(i, _, _)| *i == index) {
            return Err(parse_error(
                no,
                column(line, indent),
                format!("q{index} defined twice"),
            ));
        }
        let p = r
            .parse(&line[value_at..])
            .map_err(|e| relocate(e, no, line, value_at))?;
        gens.push((index, no, p));
    }
    let ring = ring.ok_or_else(|| parse_error(1, 1, "missing ring declaration"))?;
    if gens.is_empty() {
        return Err(parse_error(text.lines().count().max(1), 1, "no generators"));
    }
    gens.sort_by_key(|(i, _, _)| *i);
    Ok(ProblemFile {
        ring,
        lines: gens.iter().map(|(_, l, _)| *l).collect(),
        gens: gens.into_iter().map(|(_, _, p)| p).collect(),
        trace_free,
    })
}

impl ProblemFile {
    pub fn with_order(mut self, order: Option<TermOrder>) -> Result<Self> {
        if let Some(o) = order {
            let ring = self.ring.with_order(o)?;
            self.gens = self
                .gens
                .iter()
                .map(|g| g.to_ring(&ring))
                .collect::<Result<_>>()?;
            self.ring = ring;
        }
        Ok(self)
    }

    pub fn ideal(&self) -> Result<Ideal> {
        Ideal::new(&self.ring, self.gens.clone())
    }

    /// The cover problem; every generator must be a quadratic form.
    pub fn cover(&self) -> Result<CoverProblem> {
        for (g, line) in self.gens.iter().zip(&self.lines) {
            if !g.is_homogeneous() || g.total_degree() != Some(2) {
                return Err(parse_error(
                    *line,
                    1,
                    format!("`{g}` is not a quadratic form"),
                ));
            }
        }
        let p = CoverProblem::new(&self.ring, self.gens.clone())?;
        Ok(match &self.trace_free {
            Some(t) => p.with_trace_free(t),
            None => p,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_file() {
        let p =
            parse_problem("ring z1 z2 : degrevlex\nq0 = z1^2\nq1 = z1*z2\nq2 = z2^2\n").unwrap();
        assert_eq!(p.gens.len(), 3);
        let c = p.cover().unwrap();
        assert_eq!(c.fiber_vars(), ["z1", "z2"]);
    }

    #[test]
    fn dangling_caret() {
        let e = parse_problem("ring z1 z2 : degrevlex\nq0 = z1^\n").unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                line: 2,
                column: 8,
                message: "expected a non-negative integer exponent after `^`".into()
            }
        );
    }

    #[test]
    fn unknown_variable_has_a_position() {
        let e = parse_problem("ring x y\nq0 = x + t\n").unwrap_err();
        match e {
            Error::Parse {
                line,
                column,
                message,
            } => {
                assert_eq!((line, column), (2, 10));
                assert!(message.contains("`t`"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn generators_sort_by_index_and_orders_parse() {
        let p = parse_problem("ring x y z : block:1\nq1 = y\nq0 = x  # first\n").unwrap();
        assert_eq!(p.gens[0].to_string(), "x");
        assert_eq!(p.ring.order(), TermOrder::Block(1));
        assert!(parse_problem("ring x : grlex\nq0 = x").is_err());
    }

    #[test]
    fn cover_requires_quadrics() {
        let p = parse_problem("ring x y\nq0 = x^2\nq1 = x*y + y\n").unwrap();
        assert!(matches!(p.cover(), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn tracefree_block() {
        let p = parse_problem("ring z1 z2\nq0 = z1^2\ntracefree = c00 + c11; c10 + c21\n").unwrap();
        assert_eq!(p.trace_free.unwrap(), ["c00 + c11", "c10 + c21"]);
    }
}
