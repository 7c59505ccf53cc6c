//! The ideal file format.
//!
//! ```text
//! vars 3
//! names x,y,z        # optional
//! x^2
//! y^4
//! [0,2,2]
//! z^3
//! ```

use pommaret_core::{Error as CoreError, Monomial, MonomialIdeal, Ring};

use crate::CliError;

/// A parsed input: the ring (with display names) and the minimalized ideal.
#[derive(Clone, Debug)]
pub struct Input {
    pub ring: Ring,
    pub ideal: MonomialIdeal,
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> CliError {
    CliError::Syntax {
        line,
        col,
        msg: msg.into(),
    }
}

fn strip_comment(s: &str) -> &str {
    s.split_once('#').map_or(s, |(a, _)| a)
}

/// Index of the variable spelled `token`: a declared name, or `x<i>`.
fn variable(ring: &Ring, token: &str) -> Option<usize> {
    if let Some(k) = ring.names().iter().position(|n| n == token) {
        return Some(k + 1);
    }
    token.strip_prefix('x')?.parse::<usize>().ok()
}

fn parse_monomial(ring: &Ring, text: &str, line: usize, offset: usize) -> Result<Monomial, CliError> {
    let n = ring.n();
    let t = text.trim();
    let start = offset + text.find(t).unwrap_or(0) + 1;
    if t == "1" {
        return Ok(Monomial::one(n));
    }
    if let Some(inner) = t.strip_prefix('[') {
        let inner = inner
            .strip_suffix(']')
            .ok_or_else(|| syntax(line, start + t.len(), "missing ']'"))?;
        let exps = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| syntax(line, start, format!("bad exponent '{}'", p.trim())))
            })
            .collect::<Result<Vec<u32>, CliError>>()?;
        if exps.len() != n {
            return Err(CliError::Arity {
                line,
                expected: n,
                found: exps.len(),
            });
        }
        return Ok(Monomial::new(exps));
    }
    let mut exps = vec![0u32; n];
    let mut col = start;
    for factor in t.split('*') {
        let f = factor.trim();
        if f.is_empty() {
            return Err(syntax(line, col, "empty factor"));
        }
        let (name, exp) = match f.split_once('^') {
            Some((v, e)) => {
                let e = e
                    .parse::<u32>()
                    .map_err(|_| syntax(line, col + v.len() + 1, format!("bad exponent '{e}'")))?;
                (v, e)
            }
            None => (f, 1),
        };
        let valid = name
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid {
            return Err(syntax(line, col, format!("bad variable '{name}'")));
        }
        let k = variable(ring, name).ok_or_else(|| syntax(line, col, format!("unknown variable '{name}'")))?;
        if k == 0 || k > n {
            return Err(CliError::Arity {
                line,
                expected: n,
                found: k,
            });
        }
        exps[k - 1] = exps[k - 1]
            .checked_add(exp)
            .ok_or_else(|| syntax(line, col, "exponent overflow"))?;
        col += factor.len() + 1;
    }
    Ok(Monomial::new(exps))
}

/// Parses an ideal file. Generators are minimalized.
pub fn parse_ideal(text: &str) -> Result<Input, CliError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, strip_comment(l)))
        .filter(|(_, l)| !l.trim().is_empty());
    let (lno, header) = lines.next().ok_or_else(|| syntax(1, 1, "missing 'vars <n>' header"))?;
    let mut words = header.split_whitespace();
    if words.next() != Some("vars") {
        return Err(syntax(lno, 1, "expected 'vars <n>'"));
    }
    let n: usize = words
        .next()
        .and_then(|w| w.parse().ok())
        .filter(|&n| n >= 1)
        .ok_or_else(|| syntax(lno, 6, "expected a positive variable count"))?;
    let mut ring = Ring::new(n);
    let mut gens = Vec::new();
    let mut first = true;
    for (lno, l) in lines {
        let trimmed = l.trim_start();
        if first {
            first = false;
            if let Some(rest) = trimmed.strip_prefix("names") {
                let names: Vec<String> = rest.split(',').map(|s| s.trim().to_string()).collect();
                if names.len() != n {
                    return Err(CliError::Arity {
                        line: lno,
                        expected: n,
                        found: names.len(),
                    });
                }
                ring = Ring::with_names(names).map_err(|e| syntax(lno, 1, e.to_string()))?;
                continue;
            }
        }
        let m = parse_monomial(&ring, l, lno, 0)?;
        if m.is_one() {
            return Err(CliError::Core(CoreError::UnitGenerator));
        }
        gens.push(m);
    }
    let ideal = MonomialIdeal::new(gens).map_err(CliError::Core)?;
    Ok(Input { ring, ideal })
}
