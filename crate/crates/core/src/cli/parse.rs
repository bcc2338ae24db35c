//! Polynomial expressions in `x` and `y` with rational coefficients.
//!
//! ```text
//! expr    := sign? term (('+' | '-') term)*
//! term    := factor (('*')? factor)*
//! factor  := primary ('^' integer)?
//! primary := integer ('/' integer)? | variables | '(' expr ')'
//! ```
//!
//! Juxtaposition multiplies (`2x^2y`), a run of letters such as `xy` is a
//! product of variables, and decimals are rejected.

use std::fmt;

use num_bigint::BigInt;

use crate::exactnum::{FieldElem, Rational};
use crate::series2::BiPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: expected {}, found {found}", expected.join(" or "))]
    SyntaxError { position: usize, expected: Vec<String>, found: String },
    #[error("unknown variable {name} at position {position}")]
    UnknownVariable { name: String, position: usize },
    #[error("zero denominator at position {position}")]
    ZeroDenominator { position: usize },
    #[error("exponent too large at position {position}")]
    ExponentTooLarge { position: usize },
}

/// Exponents above this are rejected to keep expansion bounded.
pub const MAX_EXPONENT: u32 = 1000;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Letters(String),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "'{n}'"),
            Tok::Letters(s) => write!(f, "'{s}'"),
            Tok::Sym(c) => write!(f, "'{c}'"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn lex(s: &str) -> Vec<(usize, Tok)> {
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().map(|&(_, d)| d).collect();
            out.push((pos, Tok::Int(digits.parse().expect("digit run"))));
        } else if c.is_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].1.is_alphanumeric() {
                i += 1;
            }
            out.push((pos, Tok::Letters(chars[start..i].iter().map(|&(_, d)| d).collect())));
        } else {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        }
    }
    out.push((s.len(), Tok::End));
    out
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        self.at += 1;
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T, ParseError> {
        Err(ParseError::SyntaxError {
            position: self.pos(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().to_string(),
        })
    }

    fn expr(&mut self) -> Result<BiPoly, ParseError> {
        let mut negate = false;
        if let Tok::Sym(c @ ('+' | '-')) = self.peek() {
            negate = *c == '-';
            self.bump();
        }
        let first = self.term()?;
        let mut acc = if negate { -&first } else { first };
        while let Tok::Sym(c @ ('+' | '-')) = self.peek() {
            let minus = *c == '-';
            self.bump();
            let t = self.term()?;
            acc = if minus { &acc - &t } else { &acc + &t };
        }
        Ok(acc)
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Tok::Letters(_) | Tok::Sym('('))
    }

    fn term(&mut self) -> Result<BiPoly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if let Tok::Sym('*') = self.peek() {
                self.bump();
                let f = self.factor()?;
                acc = &acc * &f;
            } else if self.starts_factor() {
                let f = self.factor()?;
                acc = &acc * &f;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<BiPoly, ParseError> {
        let base = self.primary()?;
        if let Tok::Sym('^') = self.peek() {
            self.bump();
            let pos = self.pos();
            let Tok::Int(n) = self.peek().clone() else {
                return self.fail(&["nonnegative integer exponent"]);
            };
            self.bump();
            let e = u32::try_from(&n).ok().filter(|&e| e <= MAX_EXPONENT).ok_or(ParseError::ExponentTooLarge { position: pos })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<BiPoly, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                let mut value = Rational::from_integer(n);
                if let Tok::Sym('.') = self.peek() {
                    return self.fail(&["integer or fraction a/b (decimals are not accepted)"]);
                }
                if let Tok::Sym('/') = self.peek() {
                    self.bump();
                    let dpos = self.pos();
                    let Tok::Int(d) = self.peek().clone() else {
                        return self.fail(&["integer denominator"]);
                    };
                    self.bump();
                    if d == BigInt::from(0) {
                        return Err(ParseError::ZeroDenominator { position: dpos });
                    }
                    value /= Rational::from_integer(d);
                }
                Ok(BiPoly::constant(FieldElem::from(value)))
            }
            Tok::Letters(s) => {
                self.bump();
                let mut acc = BiPoly::one();
                for (k, c) in s.chars().enumerate() {
                    match c {
                        'x' => acc = &acc * &BiPoly::x(),
                        'y' => acc = &acc * &BiPoly::y(),
                        _ => {
                            let name = if s.chars().all(|c| c.is_alphabetic()) { c.to_string() } else { s.clone() };
                            return Err(ParseError::UnknownVariable { name, position: pos + k });
                        }
                    }
                }
                Ok(acc)
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                if let Tok::Sym(')') = self.peek() {
                    self.bump();
                    Ok(e)
                } else {
                    self.fail(&["')'", "operator"])
                }
            }
            _ => self.fail(&["number", "variable x or y", "'('"]),
        }
    }
}

pub fn parse_poly(s: &str) -> Result<BiPoly, ParseError> {
    let mut p = Parser { toks: lex(s), at: 0 };
    let e = p.expr()?;
    match p.peek() {
        Tok::End => Ok(e),
        Tok::Sym('.') => p.fail(&["integer or fraction a/b (decimals are not accepted)"]),
        Tok::Int(_) => p.fail(&["operator before a number"]),
        _ => p.fail(&["operator", "end of input"]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(terms: &[(i64, u32, u32)]) -> BiPoly {
        terms.iter().fold(BiPoly::zero(), |acc, &(c, i, j)| &acc + &BiPoly::term(c, i, j))
    }

    #[test]
    fn basic_expressions() {
        assert_eq!(parse_poly("y^2 + x^5").unwrap(), p(&[(1, 0, 2), (1, 5, 0)]));
        assert_eq!(parse_poly("(y+x^2)(y+x^3)").unwrap(), p(&[(1, 0, 2), (1, 2, 1), (1, 3, 1), (1, 5, 0)]));
        assert_eq!(parse_poly("2x^2y").unwrap(), p(&[(2, 2, 1)]));
        assert!(parse_poly("xy - -1").is_err());
        assert_eq!(parse_poly("-x*y*y").unwrap(), p(&[(-1, 1, 2)]));
        assert_eq!(parse_poly("y*(y+2x^2+x^3)+x^4").unwrap(), p(&[(1, 0, 2), (2, 2, 1), (1, 3, 1), (1, 4, 0)]));
    }

    #[test]
    fn fractions() {
        let half = parse_poly("1/2 x").unwrap();
        assert_eq!(half.coeff(1, 0), FieldElem::from(Rational::new(1.into(), 2.into())));
        assert_eq!(parse_poly("3/0"), Err(ParseError::ZeroDenominator { position: 2 }));
    }

    #[test]
    fn errors() {
        assert_eq!(parse_poly("y^2 + z"), Err(ParseError::UnknownVariable { name: "z".into(), position: 6 }));
        assert!(matches!(parse_poly("1.5x"), Err(ParseError::SyntaxError { position: 1, .. })));
        assert!(matches!(parse_poly("x^"), Err(ParseError::SyntaxError { position: 2, .. })));
        assert!(matches!(parse_poly("(x+y"), Err(ParseError::SyntaxError { position: 4, .. })));
        assert!(matches!(parse_poly("x 2"), Err(ParseError::SyntaxError { position: 2, .. })));
        assert!(matches!(parse_poly("x^-1"), Err(ParseError::SyntaxError { .. })));
        assert!(matches!(parse_poly(""), Err(ParseError::SyntaxError { position: 0, .. })));
        assert!(matches!(parse_poly("x^100000"), Err(ParseError::ExponentTooLarge { .. })));
    }

    fn arb_poly() -> impl Strategy<Value = BiPoly> {
        prop::collection::vec((-20i64..20, 1i64..6, 0u32..6, 0u32..6), 0..7).prop_map(|ts| {
            ts.into_iter().fold(BiPoly::zero(), |acc, (n, d, i, j)| {
                let c = FieldElem::from(Rational::new(n.into(), d.into()));
                &acc + &BiPoly::monomial(c, i, j)
            })
        })
    }

    proptest! {
        #[test]
        fn printing_round_trips(q in arb_poly()) {
            prop_assert_eq!(parse_poly(&q.to_text()).unwrap(), q);
        }
    }
}
