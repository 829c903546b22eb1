//! Text and JSON forms of monomial ideals.
//!
//! The text form is a `ring <n>` header followed by generators, one per line or
//! comma separated. A generator is a `*`-separated product of `x<i>` or
//! `x<i>^<e>` factors with 1-based `i` and `e >= 1`. Blank lines and `#`
//! comments are ignored:
//!
//! ```text
//! ring 4
//! x1*x2, x2^2*x3
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{minimalize, Monomial, MonomialIdeal};

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct IdealJson {
    pub n: usize,
    pub generators: Vec<Vec<u32>>,
}

impl From<&MonomialIdeal> for IdealJson {
    fn from(ideal: &MonomialIdeal) -> Self {
        IdealJson {
            n: ideal.n(),
            generators: ideal
                .generators()
                .iter()
                .map(|g| g.exponents().to_vec())
                .collect(),
        }
    }
}

impl TryFrom<IdealJson> for MonomialIdeal {
    type Error = Error;

    fn try_from(json: IdealJson) -> Result<Self> {
        minimalize(json.generators.into_iter().map(Monomial::new), json.n)
    }
}

pub fn ideal_to_json(ideal: &MonomialIdeal) -> serde_json::Value {
    serde_json::to_value(IdealJson::from(ideal)).expect("plain data serializes")
}

/// Renders the text form: header line plus one generator per line.
pub fn format_ideal(ideal: &MonomialIdeal) -> String {
    let mut out = format!("ring {}\n", ideal.n());
    for g in ideal.generators() {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Strips a `#` comment, returning the remaining text of the line.
fn content(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    }
}

fn parse_header(text: &str, line: usize, offset: usize) -> Result<usize> {
    let mut words = text.split_whitespace();
    if words.next() != Some("ring") {
        return Err(parse_err(line, offset + 1, "expected header `ring <n>`"));
    }
    let Some(word) = words.next() else {
        return Err(parse_err(line, offset + text.len() + 1, "missing ring dimension"));
    };
    let col = offset + text.find(word).unwrap_or(0) + 1;
    let n: usize = word
        .parse()
        .map_err(|_| parse_err(line, col, format!("invalid ring dimension `{word}`")))?;
    if n == 0 {
        return Err(parse_err(line, col, "ring dimension must be positive"));
    }
    if let Some(extra) = words.next() {
        let col = offset + text.rfind(extra).unwrap_or(0) + 1;
        return Err(parse_err(line, col, format!("unexpected `{extra}` after header")));
    }
    Ok(n)
}

fn parse_number(s: &str, line: usize, col: usize, what: &str) -> Result<u32> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_err(line, col, format!("invalid {what} `{s}`")));
    }
    s.parse()
        .map_err(|_| parse_err(line, col, format!("{what} `{s}` out of range")))
}

/// Parses one generator. `col` is the 1-based column where `text` starts.
fn parse_generator(text: &str, n: usize, line: usize, col: usize) -> Result<Monomial> {
    let mut exps = vec![0u32; n];
    let mut pos = 0;
    for factor in text.split('*') {
        let lead = factor.len() - factor.trim_start().len();
        let fcol = col + pos + lead;
        let f = factor.trim();
        pos += factor.len() + 1;
        if f.is_empty() {
            return Err(parse_err(line, fcol, "empty factor"));
        }
        let Some(rest) = f.strip_prefix('x') else {
            return Err(parse_err(line, fcol, format!("expected variable, found `{f}`")));
        };
        let (index, exponent) = match rest.split_once('^') {
            Some((i, e)) => (i, Some(e)),
            None => (rest, None),
        };
        let i = parse_number(index, line, fcol + 1, "variable index")? as usize;
        if i == 0 || i > n {
            return Err(parse_err(
                line,
                fcol + 1,
                format!("variable x{i} outside ring of {n} variables"),
            ));
        }
        let e = match exponent {
            Some(e) => {
                let ecol = fcol + 2 + index.len();
                let e = parse_number(e, line, ecol, "exponent")?;
                if e == 0 {
                    return Err(parse_err(line, ecol, "exponent must be at least 1"));
                }
                e
            }
            None => 1,
        };
        exps[i - 1] = exps[i - 1]
            .checked_add(e)
            .ok_or_else(|| parse_err(line, fcol, "exponent overflow"))?;
    }
    Ok(Monomial::new(exps))
}

/// Parses a sequence of ideals, each introduced by its own `ring <n>` header.
pub fn parse_ideals(text: &str) -> Result<Vec<MonomialIdeal>> {
    let mut done = Vec::new();
    let mut current: Option<(usize, Vec<Monomial>)> = None;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = content(raw);
        let trimmed = body.trim();
        if trimmed.is_empty() {
            continue;
        }
        let offset = body.len() - body.trim_start().len();
        if trimmed.starts_with("ring") {
            if let Some((n, gens)) = current.take() {
                done.push(minimalize(gens, n)?);
            }
            current = Some((parse_header(trimmed, line, offset)?, Vec::new()));
            continue;
        }
        let Some((n, gens)) = current.as_mut() else {
            return Err(parse_err(line, offset + 1, "expected header `ring <n>`"));
        };
        let mut pos = 0;
        for token in body.split(',') {
            let lead = token.len() - token.trim_start().len();
            let col = pos + lead + 1;
            pos += token.len() + 1;
            let t = token.trim();
            if t.is_empty() {
                return Err(parse_err(line, col, "empty generator"));
            }
            if t == "1" {
                return Err(parse_err(line, col, "the unit ideal is not supported"));
            }
            gens.push(parse_generator(t, *n, line, col)?);
        }
    }
    match current {
        Some((n, gens)) => done.push(minimalize(gens, n)?),
        None if done.is_empty() => {
            return Err(parse_err(1, 1, "expected header `ring <n>`"));
        }
        None => {}
    }
    Ok(done)
}

/// Parses exactly one ideal.
pub fn parse_ideal(text: &str) -> Result<MonomialIdeal> {
    let mut ideals = parse_ideals(text)?;
    if ideals.len() != 1 {
        return Err(parse_err(1, 1, format!("expected one ideal, found {}", ideals.len())));
    }
    Ok(ideals.remove(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_example() {
        let i = parse_ideal("ring 4\nx1*x2, x2^2*x3\n").unwrap();
        assert_eq!(
            i,
            MonomialIdeal::from_exponents(4, &[&[1, 1, 0, 0], &[0, 2, 1, 0]]).unwrap()
        );
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# header next\n\nring 2  # two variables\nx1 # first\n\n x2 ^ 1\n";
        // `x2 ^ 1` has spaces inside the factor, which the grammar does not allow.
        assert!(parse_ideal(text).is_err());
        let text = "# header next\n\nring 2  # two variables\nx1 # first\n\n x2^1\n";
        assert_eq!(parse_ideal(text).unwrap(), MonomialIdeal::maximal(2));
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_ideal("ring 3\nx1*x4\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 2,
                column: 5,
                message: "variable x4 outside ring of 3 variables".into()
            }
        );
        let err = parse_ideal("ring 3\nx1, y2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 5, .. }), "{err:?}");
        let err = parse_ideal("ring 3\nx1^0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 4, .. }), "{err:?}");
        let err = parse_ideal("x1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, column: 1, .. }));
        let err = parse_ideal("ring 2\nx1,,x2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 4, .. }), "{err:?}");
    }

    #[test]
    fn format_then_parse() {
        let i = MonomialIdeal::from_exponents(3, &[&[2, 0, 1], &[0, 1, 1]]).unwrap();
        let text = format_ideal(&i);
        assert_eq!(text, "ring 3\nx2*x3\nx1^2*x3\n");
        assert_eq!(parse_ideal(&text).unwrap(), i);
    }

    #[test]
    fn json_shape() {
        let i = MonomialIdeal::from_exponents(2, &[&[1, 1]]).unwrap();
        assert_eq!(
            ideal_to_json(&i),
            serde_json::json!({"n": 2, "generators": [[1, 1]]})
        );
        let back: IdealJson = serde_json::from_value(ideal_to_json(&i)).unwrap();
        assert_eq!(MonomialIdeal::try_from(back).unwrap(), i);
    }

    #[test]
    fn parses_several_ideals() {
        let all = parse_ideals("ring 2\nx1\nring 3\nx3\n").unwrap();
        assert_eq!(all.len(), 2);
        assert_eq!(all[1].n(), 3);
    }
}
