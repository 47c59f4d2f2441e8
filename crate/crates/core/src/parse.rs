//! Expression parser for [`MultiPoly`].
//!
//! Grammar (whitespace insensitive):
//!
//! ```text
//! expr   := [sign] term { ("+" | "-") term }
//! term   := factor { "*" factor }
//! factor := atom [ "^" natural ]
//! atom   := rational | identifier | "(" expr ")"
//! rational := integer [ "/" integer ]
//! ```
//!
//! Multiplication is always explicit (`3*x`, never `3x`), exponents are
//! nonnegative integer literals, and `/` occurs only inside a rational
//! literal — there is no polynomial division operator. Identifiers must
//! name table variables. Errors carry the byte offset of the offending
//! token.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::poly::{MultiPoly, PolyError, Rat};
use crate::vars::VariableTable;

/// Parses `input` into a polynomial over `table`.
pub fn parse_poly(table: &Arc<VariableTable>, input: &str) -> Result<MultiPoly, PolyError> {
    let tokens = tokenize(input)?;
    let mut parser = Parser {
        table,
        tokens,
        pos: 0,
    };
    let poly = parser.expr()?;
    match parser.peek() {
        (Token::End, _) => Ok(poly),
        (tok, at) => Err(err(at, format!("unexpected {} after expression", tok.describe()))),
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    End,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Number(n) => format!("number {n}"),
            Token::Ident(s) => format!("identifier {s:?}"),
            Token::Plus => "'+'".into(),
            Token::Minus => "'-'".into(),
            Token::Star => "'*'".into(),
            Token::Caret => "'^'".into(),
            Token::Slash => "'/'".into(),
            Token::LParen => "'('".into(),
            Token::RParen => "')'".into(),
            Token::End => "end of input".into(),
        }
    }
}

fn err(pos: usize, msg: impl Into<String>) -> PolyError {
    PolyError::Parse {
        pos,
        msg: msg.into(),
    }
}

fn tokenize(input: &str) -> Result<Vec<(Token, usize)>, PolyError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => {
                out.push((Token::Plus, i));
                i += 1;
            }
            b'-' => {
                out.push((Token::Minus, i));
                i += 1;
            }
            b'*' => {
                out.push((Token::Star, i));
                i += 1;
            }
            b'^' => {
                out.push((Token::Caret, i));
                i += 1;
            }
            b'/' => {
                out.push((Token::Slash, i));
                i += 1;
            }
            b'(' => {
                out.push((Token::LParen, i));
                i += 1;
            }
            b')' => {
                out.push((Token::RParen, i));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let text = &input[start..i];
                let n: BigInt = text.parse().expect("digit run parses as integer");
                out.push((Token::Number(n), start));
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push((Token::Ident(input[start..i].to_string()), start));
            }
            other => {
                return Err(err(i, format!("unexpected character {:?}", other as char)));
            }
        }
    }
    out.push((Token::End, input.len()));
    Ok(out)
}

struct Parser<'a> {
    table: &'a Arc<VariableTable>,
    tokens: Vec<(Token, usize)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> (&Token, usize) {
        let (tok, at) = &self.tokens[self.pos];
        (tok, *at)
    }

    fn bump(&mut self) -> (Token, usize) {
        let entry = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        entry
    }

    fn expr(&mut self) -> Result<MultiPoly, PolyError> {
        let mut negate = false;
        // Optional leading sign (and tolerate "-(...)" / "+x" forms).
        match self.peek().0 {
            Token::Plus => {
                self.bump();
            }
            Token::Minus => {
                self.bump();
                negate = true;
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            match self.peek().0 {
                Token::Plus => {
                    self.bump();
                    let t = self.term()?;
                    acc += &t;
                }
                Token::Minus => {
                    self.bump();
                    let t = self.term()?;
                    acc -= &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = self.factor()?;
        while matches!(self.peek().0, Token::Star) {
            self.bump();
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly, PolyError> {
        let base = self.atom()?;
        if matches!(self.peek().0, Token::Caret) {
            self.bump();
            let (tok, at) = self.bump();
            match tok {
                Token::Number(n) => {
                    let exp = u64::try_from(&n)
                        .map_err(|_| err(at, format!("exponent {n} out of range")))?;
                    Ok(base.pow(exp))
                }
                other => Err(err(
                    at,
                    format!("expected integer exponent, found {}", other.describe()),
                )),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MultiPoly, PolyError> {
        let (tok, at) = self.bump();
        match tok {
            Token::Number(n) => {
                // A rational literal: integer optionally followed by
                // "/ integer". Division exists only at the literal level.
                if matches!(self.peek().0, Token::Slash) {
                    self.bump();
                    let (tok2, at2) = self.bump();
                    match tok2 {
                        Token::Number(d) => {
                            if d.is_zero() {
                                return Err(err(at2, "zero denominator in rational literal"));
                            }
                            Ok(MultiPoly::constant(self.table, Rat::new(n, d)))
                        }
                        other => Err(err(
                            at2,
                            format!(
                                "expected integer denominator, found {}",
                                other.describe()
                            ),
                        )),
                    }
                } else {
                    Ok(MultiPoly::constant(self.table, Rat::from(n)))
                }
            }
            Token::Ident(name) => match self.table.index(&name) {
                Some(idx) => Ok(MultiPoly::var_idx(self.table, idx)),
                None => Err(err(at, format!("unknown variable {name:?}"))),
            },
            Token::LParen => {
                let inner = self.expr()?;
                let (tok2, at2) = self.bump();
                match tok2 {
                    Token::RParen => Ok(inner),
                    other => Err(err(
                        at2,
                        format!("expected ')', found {}", other.describe()),
                    )),
                }
            }
            Token::Minus => {
                // Unary minus directly before an atom, e.g. "3*-2" is
                // rejected but "(-x)" and "-x" are fine via expr(); here we
                // support a minus opening a parenthesized subexpression
                // such as "2^..." – keep it simple: treat as error.
                Err(err(at, "unexpected '-' (write it at the start of a term)"))
            }
            other => Err(err(
                at,
                format!("expected number, variable or '(', found {}", other.describe()),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, rat_int};

    fn table() -> Arc<VariableTable> {
        VariableTable::canonical()
    }

    #[test]
    fn parses_simple_forms() {
        let t = table();
        let f = parse_poly(&t, "x^2 + 2*x*y - 1/2").unwrap();
        assert_eq!(f.coeff(&[2, 0, 0, 0, 0, 0, 0, 0, 0]), rat_int(1));
        assert_eq!(f.coeff(&[1, 1, 0, 0, 0, 0, 0, 0, 0]), rat_int(2));
        assert_eq!(f.constant_term(), rat(-1, 2));
    }

    #[test]
    fn parses_nested_expressions() {
        let t = table();
        let f = parse_poly(&t, "(x + y)^3 - (x - y)^3").unwrap();
        let g = parse_poly(&t, "6*x^2*y + 2*y^3").unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn parses_leading_sign_and_rationals() {
        let t = table();
        assert_eq!(
            parse_poly(&t, "-x + +0").unwrap_err(),
            PolyError::Parse {
                pos: 5,
                msg: "expected number, variable or '(', found '+'".into()
            }
        );
        let f = parse_poly(&t, "-x - -0").unwrap_err();
        match f {
            PolyError::Parse { .. } => {}
            other => panic!("expected parse error, got {other:?}"),
        }
        let g = parse_poly(&t, "-3/4*a0 + 1").unwrap();
        assert_eq!(g.coeff(&[0, 0, 1, 0, 0, 0, 0, 0, 0]), rat(-3, 4));
        assert_eq!(g.constant_term(), rat_int(1));
    }

    #[test]
    fn rejects_unknowns_and_garbage() {
        let t = table();
        assert!(matches!(
            parse_poly(&t, "x + q"),
            Err(PolyError::Parse { pos: 4, .. })
        ));
        assert!(matches!(
            parse_poly(&t, "x @ y"),
            Err(PolyError::Parse { pos: 2, .. })
        ));
        assert!(matches!(
            parse_poly(&t, "x^y"),
            Err(PolyError::Parse { .. })
        ));
        assert!(matches!(
            parse_poly(&t, "1/0"),
            Err(PolyError::Parse { .. })
        ));
        assert!(matches!(
            parse_poly(&t, "x/y"),
            Err(PolyError::Parse { .. })
        ));
        assert!(matches!(
            parse_poly(&t, "3x"),
            Err(PolyError::Parse { .. })
        ));
        assert!(matches!(
            parse_poly(&t, "(x"),
            Err(PolyError::Parse { .. })
        ));
        assert!(matches!(
            parse_poly(&t, ""),
            Err(PolyError::Parse { .. })
        ));
    }

    #[test]
    fn exponent_binds_tighter_than_star() {
        let t = table();
        let f = parse_poly(&t, "2*x^3").unwrap();
        assert_eq!(f.coeff(&[3, 0, 0, 0, 0, 0, 0, 0, 0]), rat_int(2));
        assert_eq!(f.num_terms(), 1);
    }
}
