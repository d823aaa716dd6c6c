//! Recursive-descent parser for the word grammar:
//!
//! ```text
//! word     := factor ('*' factor)*
//! factor   := primary ('^' exponent)*
//! primary  := IDENT | '(' word ')' | '[' word ',' word ']'
//! exponent := '-'? INT | IDENT | '(' '-'? INT ')' | '(' word ')'
//! ```
//!
//! An integer exponent is a power, a word exponent is a conjugation.

use super::{WordError, WordExpr};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Star,
    Caret,
    Minus,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, WordError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '-' => Tok::Minus,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBrack,
            ']' => Tok::RBrack,
            ',' => Tok::Comma,
            c if c.is_ascii_digit() => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = text[start..i].parse().map_err(|_| WordError::Syntax {
                    pos: start,
                    msg: "integer too large".into(),
                })?;
                out.push((Tok::Int(n), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            other => {
                return Err(WordError::Syntax {
                    pos: i,
                    msg: format!("unexpected character {other:?}"),
                })
            }
        };
        out.push((tok, i));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    generators: &'a [String],
}

/// Parses `text` against the ordered generator names.
pub fn parse_word(text: &str, generators: &[String]) -> Result<WordExpr, WordError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        generators,
    };
    let e = p.word()?;
    p.expect(Tok::End, "end of input")?;
    Ok(e)
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T, WordError> {
        Err(WordError::Syntax {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), WordError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {what}, found {:?}", self.peek()))
        }
    }

    fn word(&mut self) -> Result<WordExpr, WordError> {
        let mut factors = vec![self.factor()?];
        while *self.peek() == Tok::Star {
            self.bump();
            factors.push(self.factor()?);
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            WordExpr::Product(factors)
        })
    }

    fn factor(&mut self) -> Result<WordExpr, WordError> {
        let mut base = self.primary()?;
        while *self.peek() == Tok::Caret {
            self.bump();
            base = self.exponent(base)?;
        }
        Ok(base)
    }

    fn generator(&mut self, name: &str) -> Result<WordExpr, WordError> {
        match self.generators.iter().position(|g| g == name) {
            Some(i) => {
                self.bump();
                Ok(WordExpr::Gen(i))
            }
            None => Err(WordError::UnknownGenerator {
                name: name.to_string(),
                pos: self.offset(),
            }),
        }
    }

    fn primary(&mut self) -> Result<WordExpr, WordError> {
        match self.peek().clone() {
            Tok::Ident(name) => self.generator(&name),
            Tok::LParen => {
                self.bump();
                let e = self.word()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::LBrack => {
                self.bump();
                let a = self.word()?;
                self.expect(Tok::Comma, "','")?;
                let b = self.word()?;
                self.expect(Tok::RBrack, "']'")?;
                Ok(WordExpr::commutator(a, b))
            }
            other => self.error(format!("expected a generator, '(' or '[', found {other:?}")),
        }
    }

    fn exponent(&mut self, base: WordExpr) -> Result<WordExpr, WordError> {
        let at = self.offset();
        match self.peek().clone() {
            Tok::Int(_) | Tok::Minus => {
                let k = self.signed_int()?;
                power(base, k, at)
            }
            Tok::Ident(name) => Ok(WordExpr::conjugate(base, self.generator(&name)?)),
            Tok::LParen => {
                let is_int = match (self.peek_at(1), self.peek_at(2), self.peek_at(3)) {
                    (Tok::Int(_), Tok::RParen, _) => true,
                    (Tok::Minus, Tok::Int(_), Tok::RParen) => true,
                    _ => false,
                };
                self.bump();
                if is_int {
                    let k = self.signed_int()?;
                    self.expect(Tok::RParen, "')'")?;
                    power(base, k, at)
                } else {
                    let e = self.word()?;
                    self.expect(Tok::RParen, "')'")?;
                    Ok(WordExpr::conjugate(base, e))
                }
            }
            other => self.error(format!("expected an exponent, found {other:?}")),
        }
    }

    fn signed_int(&mut self) -> Result<i64, WordError> {
        let negative = *self.peek() == Tok::Minus;
        if negative {
            self.bump();
        }
        match self.bump() {
            Tok::Int(n) => Ok(if negative { -n } else { n }),
            other => Err(WordError::Syntax {
                pos: self.offset(),
                msg: format!("expected an integer, found {other:?}"),
            }),
        }
    }
}

fn power(base: WordExpr, k: i64, pos: usize) -> Result<WordExpr, WordError> {
    if k == 0 {
        Err(WordError::ZeroExponent { pos })
    } else {
        Ok(WordExpr::power(base, k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wordlang::WordExpr::*;

    fn names() -> Vec<String> {
        ["x", "y", "t"].iter().map(|s| s.to_string()).collect()
    }

    fn parse(s: &str) -> Result<WordExpr, WordError> {
        parse_word(s, &names())
    }

    #[test]
    fn shapes() {
        assert_eq!(parse("x").unwrap(), Gen(0));
        assert_eq!(parse("(x*y)^3").unwrap(), WordExpr::power(Product(vec![Gen(0), Gen(1)]), 3));
        assert_eq!(
            parse("t^(x^2)").unwrap(),
            WordExpr::conjugate(Gen(2), WordExpr::power(Gen(0), 2))
        );
        assert_eq!(parse("t^x").unwrap(), WordExpr::conjugate(Gen(2), Gen(0)));
        assert_eq!(parse("y*x^-1").unwrap(), Product(vec![Gen(1), WordExpr::power(Gen(0), -1)]));
        assert_eq!(parse("x^(-3)").unwrap(), WordExpr::power(Gen(0), -3));
        assert_eq!(
            parse("[x, y]^4").unwrap(),
            WordExpr::power(WordExpr::commutator(Gen(0), Gen(1)), 4)
        );
    }

    #[test]
    fn caret_is_left_associative() {
        assert_eq!(
            parse("t^x^2").unwrap(),
            WordExpr::power(WordExpr::conjugate(Gen(2), Gen(0)), 2)
        );
    }

    #[test]
    fn errors_report_positions() {
        assert_eq!(
            parse("x*z"),
            Err(WordError::UnknownGenerator {
                name: "z".into(),
                pos: 2
            })
        );
        assert_eq!(parse("x^0"), Err(WordError::ZeroExponent { pos: 2 }));
        assert!(matches!(parse("x y"), Err(WordError::Syntax { pos: 2, .. })));
        assert!(matches!(parse("(x*y"), Err(WordError::Syntax { pos: 4, .. })));
        assert!(matches!(parse("[x y]"), Err(WordError::Syntax { .. })));
        assert!(matches!(parse(""), Err(WordError::Syntax { pos: 0, .. })));
        assert!(matches!(parse("x^"), Err(WordError::Syntax { .. })));
        assert!(matches!(parse("x%y"), Err(WordError::Syntax { pos: 1, .. })));
    }
}
