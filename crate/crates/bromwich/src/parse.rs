//! Text syntax for function specs, complex literals and grids.
//!
//! Spec strings follow
//!
//! ```text
//! exp:gamma=<r> | power:gamma=<r> | mixedexp:g1=<r>,g2=<r>
//! mixedpower:g1=<r>,g2=<r> | expminusx
//! ```
//!
//! Whitespace anywhere is ignored. Error columns are 1-based and count
//! characters of the original input, so a missing trailing value points one
//! past the last character.

use std::fmt;

use bromwich_core::{Complex64, Function, FunctionKind, FunctionSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub column: usize,
    pub expected: String,
}

impl ParseError {
    fn new(column: usize, expected: impl Into<String>) -> Self {
        ParseError {
            column,
            expected: expected.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: expected {}", self.column, self.expected)
    }
}

impl std::error::Error for ParseError {}

/// Keyword and parameter names of each kind, in parameter order.
fn grammar(kind: FunctionKind) -> (&'static str, &'static [&'static str]) {
    match kind {
        FunctionKind::Exp => ("exp", &["gamma"]),
        FunctionKind::Power => ("power", &["gamma"]),
        FunctionKind::MixedExp => ("mixedexp", &["g1", "g2"]),
        FunctionKind::MixedPower => ("mixedpower", &["g1", "g2"]),
        FunctionKind::ExpMinusX => ("expminusx", &[]),
    }
}

/// Lowercase keyword used in spec strings and JSON.
pub fn kind_name(kind: FunctionKind) -> &'static str {
    grammar(kind).0
}

pub fn kind_from_name(name: &str) -> Option<FunctionKind> {
    FunctionKind::ALL
        .into_iter()
        .find(|&k| kind_name(k) == name)
}

/// Cursor over the non-whitespace characters, remembering original columns.
struct Scanner {
    chars: Vec<(usize, char)>,
    pos: usize,
    end_column: usize,
}

impl Scanner {
    fn new(s: &str) -> Self {
        let all: Vec<char> = s.chars().collect();
        let chars = all
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(i, &c)| (i + 1, c))
            .collect();
        Scanner {
            chars,
            pos: 0,
            end_column: all.len() + 1,
        }
    }

    fn column(&self) -> usize {
        self.chars
            .get(self.pos)
            .map_or(self.end_column, |&(col, _)| col)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> String {
        let mut out = String::new();
        while let Some(c) = self.peek().filter(|&c| pred(c)) {
            out.push(c);
            self.pos += 1;
        }
        out
    }

    fn expect(&mut self, want: char) -> Result<(), ParseError> {
        if self.peek() == Some(want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(ParseError::new(self.column(), format!("'{want}'")))
        }
    }

    fn word(&mut self, want: &str) -> Result<(), ParseError> {
        let column = self.column();
        let got = self.take_while(|c| c.is_ascii_alphanumeric());
        if got == want {
            Ok(())
        } else {
            Err(ParseError::new(column, format!("'{want}'")))
        }
    }

    fn number(&mut self) -> Result<f64, ParseError> {
        let column = self.column();
        let text =
            self.take_while(|c| c.is_ascii_digit() || matches!(c, '.' | '+' | '-' | 'e' | 'E'));
        match text.parse::<f64>() {
            Ok(v) if !text.is_empty() && v.is_finite() => Ok(v),
            _ => Err(ParseError::new(column, "a decimal real")),
        }
    }
}

/// Parses a spec string such as `mixedexp:g1=1,g2=2`.
pub fn parse_spec_string(s: &str) -> Result<FunctionSpec, ParseError> {
    let mut sc = Scanner::new(s);
    let column = sc.column();
    let name = sc.take_while(|c| c.is_ascii_alphanumeric());
    let kind = kind_from_name(&name.to_ascii_lowercase()).ok_or_else(|| {
        ParseError::new(column, "one of exp, power, mixedexp, mixedpower, expminusx")
    })?;
    let (_, keys) = grammar(kind);
    let mut params = Vec::with_capacity(keys.len());
    if !keys.is_empty() {
        sc.expect(':')?;
        for (i, key) in keys.iter().enumerate() {
            if i > 0 {
                sc.expect(',')?;
            }
            sc.word(key)?;
            sc.expect('=')?;
            params.push(sc.number()?);
        }
    }
    if !sc.at_end() {
        return Err(ParseError::new(sc.column(), "end of input"));
    }
    FunctionSpec::from_params(kind, &params).map_err(|e| ParseError::new(column, e.to_string()))
}

/// Canonical spec string; `parse_spec_string(&format_spec(s))` returns `s`
/// up to spectator parameters, which have no string syntax.
pub fn format_spec(spec: &FunctionSpec) -> String {
    match spec.function() {
        Function::Exp { gamma } => format!("exp:gamma={gamma}"),
        Function::Power { gamma } => format!("power:gamma={gamma}"),
        Function::MixedExp { g1, g2 } => format!("mixedexp:g1={g1},g2={g2}"),
        Function::MixedPower { g1, g2 } => format!("mixedpower:g1={g1},g2={g2}"),
        Function::ExpMinusX => "expminusx".to_string(),
    }
}

/// Parses `a+bi`, `a-bi`, a bare real `a`, or a bare imaginary `bi`.
pub fn parse_complex(s: &str) -> Result<Complex64, ParseError> {
    let bad = || ParseError::new(1, "a complex literal a+bi");
    let s = s.trim();
    let Some(body) = s.strip_suffix('i') else {
        return s
            .parse::<f64>()
            .map(|re| Complex64::new(re, 0.0))
            .map_err(|_| bad());
    };
    // the imaginary sign is the last '+'/'-' not opening an exponent
    let split = body
        .char_indices()
        .rev()
        .find(|&(i, c)| (c == '+' || c == '-') && i > 0 && !body[..i].ends_with(['e', 'E']))
        .map(|(i, _)| i);
    let (re, im) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let im = match im {
        "+" | "" => "1",
        "-" => "-1",
        other => other,
    };
    let re: f64 = re.parse().map_err(|_| bad())?;
    let im: f64 = im.parse().map_err(|_| bad())?;
    if !re.is_finite() || !im.is_finite() {
        return Err(bad());
    }
    Ok(Complex64::new(re, im))
}

/// Complex literal in the syntax [`parse_complex`] reads.
pub fn format_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", z.re, sign, z.im.abs())
}

/// Expands `start:stop:count` into `count` evenly spaced values, both ends
/// included.
pub fn parse_grid(s: &str) -> Result<Vec<f64>, ParseError> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(ParseError::new(1, "start:stop:count"));
    }
    let mut column = 1;
    let mut bounds = [0.0; 2];
    for (slot, part) in bounds.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| ParseError::new(column, "a decimal real"))?;
        column += part.chars().count() + 1;
    }
    let count: usize = parts[2]
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| ParseError::new(column, "a positive point count"))?;
    let [start, stop] = bounds;
    if count == 1 {
        return Ok(vec![start]);
    }
    let step = (stop - start) / (count - 1) as f64;
    Ok((0..count)
        .map(|i| {
            if i == count - 1 {
                stop
            } else {
                start + step * i as f64
            }
        })
        .collect())
}

/// Parses a comma-separated list of reals.
pub fn parse_real_list(s: &str) -> Result<Vec<f64>, ParseError> {
    let mut column = 1;
    let mut out = Vec::new();
    for part in s.split(',') {
        let v = part
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| ParseError::new(column, "a decimal real"))?;
        out.push(v);
        column += part.chars().count() + 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        assert_eq!(
            parse_spec_string("exp:gamma=1").unwrap(),
            FunctionSpec::exp(1.0).unwrap()
        );
        assert_eq!(
            parse_spec_string("mixedexp:g1=1,g2=2").unwrap(),
            FunctionSpec::mixed_exp(1.0, 2.0).unwrap()
        );
        assert_eq!(parse_spec_string("exp:gamma=").unwrap_err().column, 11);
        assert_eq!(
            parse_spec_string(" expminusx ").unwrap(),
            FunctionSpec::exp_minus_x()
        );
    }

    #[test]
    fn whitespace_is_ignored() {
        let s = parse_spec_string(" mixed power : g1 = 0.5 , g2 = -1e-2 ").unwrap();
        assert_eq!(s, FunctionSpec::mixed_power(0.5, -0.01).unwrap());
        assert_eq!(parse_spec_string("exp : gamma =  ").unwrap_err().column, 16);
    }

    #[test]
    fn error_columns() {
        assert_eq!(parse_spec_string("").unwrap_err().column, 1);
        assert_eq!(parse_spec_string("cosh:gamma=1").unwrap_err().column, 1);
        assert_eq!(parse_spec_string("exp;gamma=1").unwrap_err().column, 4);
        assert_eq!(parse_spec_string("exp:beta=1").unwrap_err().column, 5);
        assert_eq!(parse_spec_string("exp:gamma=x").unwrap_err().column, 11);
        assert_eq!(parse_spec_string("mixedexp:g1=1").unwrap_err().column, 14);
        assert_eq!(parse_spec_string("exp:gamma=1,").unwrap_err().column, 12);
        assert_eq!(parse_spec_string("exp:gamma=inf").unwrap_err().column, 11);
    }

    #[test]
    fn complex_literals() {
        let c = Complex64::new;
        assert_eq!(parse_complex("1+0i").unwrap(), c(1.0, 0.0));
        assert_eq!(parse_complex("-0.5-2i").unwrap(), c(-0.5, -2.0));
        assert_eq!(parse_complex("1e-3+2.5e+1i").unwrap(), c(1e-3, 25.0));
        assert_eq!(parse_complex("3").unwrap(), c(3.0, 0.0));
        assert_eq!(parse_complex("-2i").unwrap(), c(0.0, -2.0));
        assert_eq!(parse_complex("1-i").unwrap(), c(1.0, -1.0));
        for bad in ["", "i+1", "1+2j", "a+bi", "1++2i", "nan+0i"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
        assert_eq!(format_complex(c(1.0, 0.0)), "1+0i");
        assert_eq!(format_complex(c(-0.5, -2.0)), "-0.5-2i");
    }

    #[test]
    fn grids() {
        assert_eq!(
            parse_grid("0.25:4:5").unwrap(),
            vec![0.25, 1.1875, 2.125, 3.0625, 4.0]
        );
        assert_eq!(parse_grid("-5:5:3").unwrap(), vec![-5.0, 0.0, 5.0]);
        assert_eq!(parse_grid("2:9:1").unwrap(), vec![2.0]);
        assert_eq!(parse_grid("0:1").unwrap_err().column, 1);
        assert_eq!(parse_grid("0:x:2").unwrap_err().column, 3);
        assert_eq!(parse_grid("0:1:0").unwrap_err().column, 5);
    }

    #[test]
    fn real_lists() {
        assert_eq!(
            parse_real_list("20, 40,80").unwrap(),
            vec![20.0, 40.0, 80.0]
        );
        assert_eq!(parse_real_list("1,,2").unwrap_err().column, 3);
    }
}
