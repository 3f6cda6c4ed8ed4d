//! The breakpoint file format.
//!
//! One breakpoint per line, `x y`, each coordinate an integer or `p/q`.
//! `#` starts a comment; blank lines are skipped. Decimals are rejected.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use plconj::{PlMap, Point, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based line number, or `None` for whole-file problems.
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(n) => write!(f, "line {n}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for ParseError {}

fn digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

/// Parses an exact rational written as `n`, `-n`, `p/q` or `-p/q`.
pub fn parse_rational(text: &str) -> Result<Rat, String> {
    let body = text.strip_prefix('-').unwrap_or(text);
    if body.contains('.') || body.contains('e') || body.contains('E') {
        return Err(format!(
            "'{text}' is not an exact rational (decimals are not accepted)"
        ));
    }
    let (num, den) = match body.split_once('/') {
        Some((p, q)) => (p, q),
        None => (body, "1"),
    };
    if !digits(num) || !digits(den) {
        return Err(format!("'{text}' is not a rational of the form p/q"));
    }
    let mut n: BigInt = num
        .parse()
        .map_err(|_| format!("bad numerator in '{text}'"))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| format!("bad denominator in '{text}'"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in '{text}'"));
    }
    if text.starts_with('-') {
        n = -n;
    }
    Ok(Rat::new(n, d))
}

/// Canonical reduced form: `p/q`, or plain `p` when `q = 1`.
pub fn format_rational(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses a breakpoint file into its raw points, with line-numbered errors.
pub fn parse_points(text: &str) -> Result<Vec<(usize, Point)>, ParseError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(ParseError {
                line: Some(line),
                message: format!("expected two coordinates, found {}", fields.len()),
            });
        }
        let x = parse_rational(fields[0]).map_err(|m| ParseError {
            line: Some(line),
            message: m,
        })?;
        let y = parse_rational(fields[1]).map_err(|m| ParseError {
            line: Some(line),
            message: m,
        })?;
        out.push((line, (x, y)));
    }
    Ok(out)
}

/// Parses a breakpoint file into a map.
pub fn parse_map(text: &str) -> Result<PlMap, ParseError> {
    let points = parse_points(text)?;
    let (first, last) = match (points.first(), points.last()) {
        (Some(f), Some(l)) if points.len() >= 2 => (f, l),
        _ => {
            return Err(ParseError {
                line: None,
                message: "a map needs at least the breakpoints 0 0 and 1 1".into(),
            })
        }
    };
    if !first.1 .0.is_zero() || !first.1 .1.is_zero() {
        return Err(ParseError {
            line: Some(first.0),
            message: "first breakpoint must be 0 0".into(),
        });
    }
    if !last.1 .0.is_one() || !last.1 .1.is_one() {
        return Err(ParseError {
            line: Some(last.0),
            message: "last breakpoint must be 1 1".into(),
        });
    }
    for pair in points.windows(2) {
        let ((_, a), (line, b)) = (&pair[0], &pair[1]);
        if b.0 <= a.0 {
            return Err(ParseError {
                line: Some(*line),
                message: "x coordinates must strictly increase".into(),
            });
        }
        if b.1 <= a.1 {
            return Err(ParseError {
                line: Some(*line),
                message: "y coordinates must strictly increase".into(),
            });
        }
    }
    PlMap::new(points.into_iter().map(|(_, p)| p).collect()).map_err(|e| ParseError {
        line: None,
        message: e.to_string(),
    })
}

/// Serializes a map in the breakpoint file format.
pub fn serialize_map(f: &PlMap) -> String {
    let mut out = String::new();
    for (x, y) in f.breakpoints() {
        out.push_str(&format_rational(x));
        out.push(' ');
        out.push_str(&format_rational(y));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use plconj::rat;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("6/8").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-2").unwrap(), rat(-2, 1));
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("+1").is_err());
        assert!(parse_rational("").is_err());
        assert_eq!(format_rational(&rat(6, 8)), "3/4");
        assert_eq!(format_rational(&rat(4, 2)), "2");
    }

    #[test]
    fn parse_f_with_comments() {
        let f = parse_map("# F\n0 0\n\n1/2 3/4   # the breakpoint\n1 1\n").unwrap();
        assert_eq!(serialize_map(&f), "0 0\n1/2 3/4\n1 1\n");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_map("0 0\n1/2 0.75\n1 1\n").unwrap_err();
        assert_eq!(e.line, Some(2));
        let e = parse_map("0 0\n1/2 3/4\n1/4 7/8\n1 1\n").unwrap_err();
        assert_eq!(e.line, Some(3));
        let e = parse_map("0 0\n1/2 3/4 1\n1 1\n").unwrap_err();
        assert_eq!(e.line, Some(2));
        let e = parse_map("0 0\n1/2 3/4\n").unwrap_err();
        assert_eq!(e.line, Some(2));
        assert_eq!(parse_map("# nothing\n").unwrap_err().line, None);
    }
}
