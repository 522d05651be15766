//! Parser for the textual polynomial format.
//!
//! Grammar:
//!   expr   := ['-'] term (('+'|'-') term)*
//!   term   := factor ('*' factor)*
//!   factor := INT | VAR | factor '^' INT | '(' expr ')'
//! Variables match [a-zA-Z][a-zA-Z0-9]*.

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::PolyRing;
use std::sync::Arc;

pub fn parse_polynomial(ring: &Arc<PolyRing>, text: &str) -> Result<Polynomial> {
    let mut p = Parser {
        ring,
        chars: text.char_indices().collect(),
        pos: 0,
    };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(Error::Syntax {
            pos: p.chars[p.pos].0,
            msg: format!("unexpected `{}`", p.chars[p.pos].1),
        });
    }
    Ok(poly)
}

struct Parser<'a> {
    ring: &'a Arc<PolyRing>,
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn here(&self) -> usize {
        self.chars.get(self.pos).map(|&(i, _)| i).unwrap_or_else(|| {
            self.chars.last().map(|&(i, c)| i + c.len_utf8()).unwrap_or(0)
        })
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut negate = false;
        if self.peek() == Some('-') {
            self.pos += 1;
            negate = true;
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&t)?;
                }
                '-' => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(&t)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = acc.mul(&f)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let mut base = self.atom()?;
        while self.peek() == Some('^') {
            self.pos += 1;
            let n = self.integer()?;
            base = pow(&base, n);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(Error::Syntax {
                        pos: self.here(),
                        msg: "expected `)`".into(),
                    });
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Polynomial::constant(
                    self.ring,
                    self.ring.field.from_i64(n as i64),
                ))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.here();
                let mut name = String::new();
                while let Some(&(_, ch)) = self.chars.get(self.pos) {
                    if ch.is_ascii_alphanumeric() {
                        name.push(ch);
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                match self.ring.var_index(&name) {
                    Some(i) => Ok(Polynomial::var(self.ring, i)),
                    None => Err(Error::UnknownVariable { name, pos: start }),
                }
            }
            _ => Err(Error::Syntax {
                pos: self.here(),
                msg: "expected integer, variable, or `(`".into(),
            }),
        }
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.here();
        let mut s = String::new();
        while let Some(&(_, ch)) = self.chars.get(self.pos) {
            if ch.is_ascii_digit() {
                s.push(ch);
                self.pos += 1;
            } else {
                break;
            }
        }
        if s.is_empty() {
            return Err(Error::Syntax {
                pos: start,
                msg: "expected integer".into(),
            });
        }
        s.parse::<u64>().map_err(|_| Error::Syntax {
            pos: start,
            msg: "integer too large".into(),
        })
    }
}

fn pow(p: &Polynomial, n: u64) -> Polynomial {
    let mut acc = Polynomial::one(&p.ring);
    for _ in 0..n {
        acc = acc.mul(p).unwrap();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    #[test]
    fn two_term_polynomial() {
        let r = PolyRing::standard(FieldSpec::default_prime(), &["x", "y", "z"]);
        let p = parse_polynomial(&r, "x^2 + x*y").unwrap();
        assert_eq!(p.num_terms(), 2);
    }

    #[test]
    fn bourbaki_generator_from_text() {
        let r = PolyRing::standard(
            FieldSpec::default_prime(),
            &["x", "y", "z", "z11", "z21", "z31", "z41"],
        );
        let p = parse_polynomial(&r, "z11*x^4 + z21*x^3*y").unwrap();
        assert_eq!(p.num_terms(), 2);
        assert!(p.is_homogeneous());
    }

    #[test]
    fn cancellation_to_zero() {
        let r = PolyRing::standard(FieldSpec::default_prime(), &["x", "y"]);
        let p = parse_polynomial(&r, "x - x").unwrap();
        assert!(p.is_zero());
        assert!(p.terms.is_empty());
    }

    #[test]
    fn unknown_variable_with_position() {
        let r = PolyRing::standard(FieldSpec::default_prime(), &["x", "y"]);
        match parse_polynomial(&r, "x + w2") {
            Err(Error::UnknownVariable { name, pos }) => {
                assert_eq!(name, "w2");
                assert_eq!(pos, 4);
            }
            other => panic!("expected UnknownVariable, got {other:?}"),
        }
    }

    #[test]
    fn syntax_error_with_position() {
        let r = PolyRing::standard(FieldSpec::default_prime(), &["x"]);
        assert!(matches!(
            parse_polynomial(&r, "x + + x"),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn parens_and_powers() {
        let r = PolyRing::standard(FieldSpec::Rationals, &["x", "y"]);
        let p = parse_polynomial(&r, "(x + y)^2 - x^2 - 2*x*y").unwrap();
        let y2 = parse_polynomial(&r, "y^2").unwrap();
        assert_eq!(p, y2);
    }

    #[test]
    fn render_roundtrip() {
        let r = PolyRing::standard(FieldSpec::default_prime(), &["x", "y", "z"]);
        for s in ["x^2 + x*y", "x - y + 3", "-x*y*z + 2", "0"] {
            let p = parse_polynomial(&r, s).unwrap();
            let q = parse_polynomial(&r, &p.render()).unwrap();
            assert_eq!(p, q, "roundtrip of {s}");
        }
    }
}
