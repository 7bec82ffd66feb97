//! Text forms: polynomial expressions, rationals and sequence records.
//!
//! Polynomial grammar (whitespace ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary | implicit)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | 'x' | '(' expr ')'
//! ```
//!
//! Division is only allowed by a nonzero constant, so `5/2` and `x/3` are
//! accepted while `1/x` is not.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numtheory::Rational;
use crate::poly::RatPoly;

/// Largest accepted exponent in `^`.
pub const MAX_EXPONENT: u32 = 4096;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    if !d.is_constant() || d.is_zero() {
                        self.pos = at;
                        return self.err("division by a non-constant or zero polynomial");
                    }
                    acc = acc.scale(&d.coeff(0).recip());
                }
                // implicit product such as `2x` or `3(x+1)`
                Some(b'x') | Some(b'(') => acc = &acc * &self.power()?,
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatPoly> {
        if self.eat(b'-') {
            return Ok(-&self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatPoly> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let at = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return self.err("expected a non-negative integer exponent");
            }
            let e: u32 = match digits.parse() {
                Ok(e) if e <= MAX_EXPONENT => e,
                _ => {
                    self.pos = at;
                    return self.err(format!("exponent overflow (max {MAX_EXPONENT})"));
                }
            };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<RatPoly> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(RatPoly::x())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n: BigInt = self.digits().parse().expect("ascii digits");
                Ok(RatPoly::constant(Rational::from_integer(n)))
            }
            Some(c) => self.err(format!("unexpected character '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a polynomial in `x`.
pub fn parse_poly(text: &str) -> Result<RatPoly> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let out = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(out)
}

/// Parses a rational literal: `-3`, `5/2`, ` -7 / 4 `.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let poly = parse_poly(text)?;
    if !poly.is_constant() {
        return Err(Error::Parse {
            pos: 0,
            msg: format!("expected a rational number, got '{text}'"),
        });
    }
    Ok(poly.coeff(0))
}

/// One `f = ...; g = ...; u0 = ...` record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceSpec {
    pub f: RatPoly,
    pub g: RatPoly,
    pub u0: Rational,
}

/// Parses one record. `u0` defaults to 1 when omitted.
pub fn parse_sequence_record(line: &str) -> Result<SequenceSpec> {
    let (mut f, mut g, mut u0) = (None, None, None);
    for field in line.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let Some((key, value)) = field.split_once('=') else {
            return Err(Error::Parse {
                pos: 0,
                msg: format!("expected 'key = value', got '{field}'"),
            });
        };
        match key.trim() {
            "f" => f = Some(parse_poly(value)?),
            "g" => g = Some(parse_poly(value)?),
            "u0" => u0 = Some(parse_rational(value)?),
            other => {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!("unknown field '{other}'"),
                })
            }
        }
    }
    match (f, g) {
        (Some(f), Some(g)) => Ok(SequenceSpec {
            f,
            g,
            u0: u0.unwrap_or_else(Rational::one),
        }),
        _ => Err(Error::Parse {
            pos: 0,
            msg: "record needs both f and g".into(),
        }),
    }
}

/// Parses a sequence file: one record per line, `#` starts a comment.
pub fn parse_sequence_file(text: &str) -> Result<Vec<SequenceSpec>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(parse_sequence_record)
        .collect()
}

/// Renders a record in the format `parse_sequence_record` reads.
pub fn format_sequence_record(spec: &SequenceSpec) -> String {
    format!("f = {}; g = {}; u0 = {}", spec.f, spec.g, spec.u0)
}

impl SequenceSpec {
    pub fn is_zero_start(&self) -> bool {
        self.u0.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::{int, rat};

    #[test]
    fn expands_products() {
        assert_eq!(
            parse_poly("(x^2-2)*(x^2-3)").unwrap(),
            RatPoly::from_ints(&[6, 0, -5, 0, 1])
        );
        assert_eq!(parse_poly("x").unwrap(), RatPoly::x());
        assert_eq!(
            parse_poly("1/2*x + 1/3").unwrap(),
            RatPoly::new(vec![rat(1, 3), rat(1, 2)])
        );
    }

    #[test]
    fn precedence_and_unary() {
        assert_eq!(parse_poly("-x^2").unwrap(), RatPoly::from_ints(&[0, 0, -1]));
        assert_eq!(parse_poly("2x(x+1)").unwrap(), RatPoly::from_ints(&[0, 2, 2]));
        assert_eq!(parse_poly("x/2 - -1").unwrap(), RatPoly::new(vec![int(1), rat(1, 2)]));
        assert_eq!(parse_poly("(x+1)^0").unwrap(), RatPoly::one());
        assert_eq!(
            parse_poly("(x^4-10*x^2+1)*x^2").unwrap(),
            RatPoly::from_ints(&[0, 0, 1, 0, -10, 0, 1])
        );
    }

    #[test]
    fn errors_carry_positions() {
        match parse_poly("x + * 2") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_poly("(x+1"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("x^99999"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("1/x"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("x^"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("y"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-3").unwrap(), int(-3));
        assert_eq!(parse_rational(" 10 / 4 ").unwrap(), rat(5, 2));
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn sequence_records() {
        let text = "# factorial\nf = 1; g = x; u0 = 1\n\nf = x+2; g = x+1 # telescoping\n";
        let specs = parse_sequence_file(text).unwrap();
        assert_eq!(specs.len(), 2);
        assert_eq!(specs[0].g, RatPoly::x());
        assert_eq!(specs[1].u0, int(1));
        let again = parse_sequence_record(&format_sequence_record(&specs[1])).unwrap();
        assert_eq!(again, specs[1]);
        assert!(parse_sequence_record("f = x").is_err());
        assert!(parse_sequence_record("f = x; h = 2").is_err());
    }
}
