//! Text grammars for differential polynomials and terms.
//!
//! ```text
//! generator := [A-Za-z][A-Za-z0-9_]*
//! letter    := generator ("'"+ | "^(" decimal ")")?
//! monomial  := letter (whitespace letter)*
//! poly      := [sign] [rational] monomial (sign [rational] monomial)*
//! rational  := decimal ["/" decimal]
//! term      := generator | "(" term "<" term ")" | "(" term ">" term ")"
//! ```
//!
//! `0` alone parses to the zero polynomial and a bare rational to a multiple
//! of the unit word.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::dasterm::{DasTerm, Op};
use crate::diffalg::{Alphabet, DiffLetter, DiffMonomial, DiffPoly, Generator};
use crate::error::{Error, Result};
use crate::rational::Rational;

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    alphabet: &'a mut Alphabet,
    pinned: bool,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str, alphabet: &'a mut Alphabet, pinned: bool) -> Self {
        Self {
            text,
            pos: 0,
            alphabet,
            pinned,
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected `{c}`"))
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.text.len()
    }

    fn decimal(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        (self.pos > start).then(|| &self.text[start..self.pos])
    }

    fn generator(&mut self) -> Result<Generator> {
        self.skip_ws();
        let start = self.pos;
        if !self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            return self.error("expected a generator name");
        }
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            self.bump();
        }
        let name = &self.text[start..self.pos];
        match self.alphabet.lookup(name) {
            Some(g) => Ok(g),
            None if self.pinned => Err(Error::UnknownGenerator(name.to_string())),
            None => Ok(self.alphabet.intern(name)),
        }
    }

    fn letter(&mut self) -> Result<DiffLetter> {
        let gen = self.generator()?;
        let mut order = 0u32;
        if self.peek() == Some('^') {
            self.bump();
            if self.bump() != Some('(') {
                return self.error("expected `(` after `^`");
            }
            let Some(digits) = self.decimal() else {
                return self.error("expected a derivative order");
            };
            order = match digits.parse() {
                Ok(n) => n,
                Err(_) => return self.error("derivative order too large"),
            };
            if self.bump() != Some(')') {
                return self.error("expected `)`");
            }
        } else {
            while self.peek() == Some('\'') {
                self.bump();
                order += 1;
            }
        }
        Ok(DiffLetter::new(gen, order))
    }

    fn monomial(&mut self) -> Result<DiffMonomial> {
        let mut letters = vec![self.letter()?];
        loop {
            self.skip_ws();
            if self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
                letters.push(self.letter()?);
            } else {
                return Ok(DiffMonomial::new(letters));
            }
        }
    }

    fn rational(&mut self) -> Result<Option<Rational>> {
        self.skip_ws();
        let Some(num) = self.decimal() else {
            return Ok(None);
        };
        let num: BigInt = num.parse().expect("digits");
        let den = if self.peek() == Some('/') {
            self.bump();
            let Some(d) = self.decimal() else {
                return self.error("expected a denominator");
            };
            d.parse::<BigInt>().expect("digits")
        } else {
            BigInt::one()
        };
        if den.is_zero() {
            return self.error("zero denominator");
        }
        Ok(Some(Rational::new(num, den)))
    }

    fn poly(&mut self) -> Result<DiffPoly> {
        let mut out = DiffPoly::zero();
        let mut first = true;
        loop {
            self.skip_ws();
            let mut sign = Rational::one();
            match self.peek() {
                Some('+') => {
                    self.bump();
                }
                Some('-') => {
                    self.bump();
                    sign = -sign;
                }
                None if !first => return Ok(out),
                _ if !first => return self.error("expected `+` or `-`"),
                _ => {}
            }
            first = false;
            let coeff = self.rational()?;
            self.skip_ws();
            let monomial = match (&coeff, self.peek()) {
                (_, Some(c)) if c.is_ascii_alphabetic() => self.monomial()?,
                (Some(_), _) => DiffMonomial::unit(),
                (None, _) => return self.error("expected a coefficient or a monomial"),
            };
            out.add_term(monomial, sign * coeff.unwrap_or_else(Rational::one));
        }
    }

    fn term(&mut self) -> Result<DasTerm> {
        self.skip_ws();
        if self.peek() != Some('(') {
            return Ok(DasTerm::Leaf(self.generator()?));
        }
        self.bump();
        let left = self.term()?;
        self.skip_ws();
        let op = match self.bump() {
            Some('<') => Op::Prec,
            Some('>') => Op::Succ,
            _ => {
                self.pos = self.pos.saturating_sub(1);
                return self.error("expected `<` or `>`");
            }
        };
        let right = self.term()?;
        self.expect(')')?;
        Ok(DasTerm::node(op, left, right))
    }

    fn finish<T>(&mut self, value: T) -> Result<T> {
        if self.at_end() {
            Ok(value)
        } else {
            self.error("unexpected trailing input")
        }
    }
}

/// Parses a polynomial. Unknown names are appended to `alphabet` unless
/// `pinned` is set, in which case they are errors.
pub fn parse_diffpoly(text: &str, alphabet: &mut Alphabet, pinned: bool) -> Result<DiffPoly> {
    let mut c = Cursor::new(text, alphabet, pinned);
    let p = c.poly()?;
    c.finish(p)
}

/// Parses a single word with no coefficient.
pub fn parse_monomial(text: &str, alphabet: &mut Alphabet, pinned: bool) -> Result<DiffMonomial> {
    let mut c = Cursor::new(text, alphabet, pinned);
    let m = c.monomial()?;
    c.finish(m)
}

pub fn parse_dasterm(text: &str, alphabet: &mut Alphabet, pinned: bool) -> Result<DasTerm> {
    let mut c = Cursor::new(text, alphabet, pinned);
    let t = c.term()?;
    c.finish(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn letters_and_words() {
        let mut a = Alphabet::default();
        let m = parse_monomial("x y''", &mut a, false).unwrap();
        assert_eq!(m, DiffMonomial::from_pairs(&[(0, 0), (1, 2)]));
        assert_eq!(a.names(), ["x", "y"]);
        let same = parse_monomial("x y^(2)", &mut a, true).unwrap();
        assert_eq!(same, m);
    }

    #[test]
    fn polynomials() {
        let mut a = Alphabet::default();
        let p = parse_diffpoly("x^(3) - 2 x' x''", &mut a, false).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(
            p.coefficient(&DiffMonomial::from_pairs(&[(0, 1), (0, 2)])),
            int(-2)
        );
        let q = parse_diffpoly("-1/2 x y' + 3x", &mut a, false).unwrap();
        assert_eq!(
            q.coefficient(&DiffMonomial::from_pairs(&[(0, 0), (1, 1)])),
            ratio(-1, 2)
        );
        assert!(parse_diffpoly("0", &mut a, false).unwrap().is_zero());
        assert!(parse_diffpoly("x - x", &mut a, false).unwrap().is_zero());
    }

    #[test]
    fn terms() {
        let mut a = Alphabet::default();
        let t = parse_dasterm("(x < (y > z))", &mut a, false).unwrap();
        assert_eq!(
            t,
            DasTerm::prec(
                DasTerm::leaf(0),
                DasTerm::succ(DasTerm::leaf(1), DasTerm::leaf(2))
            )
        );
        assert_eq!(t.display(&a), "(x < (y > z))");
    }

    #[test]
    fn errors() {
        let mut a = Alphabet::new(["x"]);
        assert_eq!(
            parse_diffpoly("x y", &mut a, true),
            Err(Error::UnknownGenerator("y".into()))
        );
        assert!(matches!(
            parse_diffpoly("x +", &mut a, true),
            Err(Error::Syntax { pos: 3, .. })
        ));
        assert!(matches!(
            parse_diffpoly("x^(", &mut a, true),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_dasterm("(x * x)", &mut a, true),
            Err(Error::Syntax { pos: 3, .. })
        ));
        assert!(matches!(
            parse_dasterm("(x < x", &mut a, true),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_diffpoly("1/0 x", &mut a, true),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_dasterm("x)", &mut a, true),
            Err(Error::Syntax { pos: 1, .. })
        ));
    }
}
