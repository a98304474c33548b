//! Parser for factored expressions in one variable, e.g.
//! `256(t^2+t+1)^3/(t^2(t+1)^2)` or `-2^15*3^3`.
//!
//! Grammar (juxtaposition is multiplication):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary | atom-start unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | variable | '(' expr ')'
//! ```

use num_bigint::BigInt;

use crate::arith::{big, Rational};
use crate::error::{Error, Result};
use crate::ratfunc::RationalFunction;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Var,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str, var: char) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => {}
            '+' => out.push(Tok::Plus),
            '-' => out.push(Tok::Minus),
            '*' | '·' => out.push(Tok::Star),
            '/' => out.push(Tok::Slash),
            '^' => out.push(Tok::Caret),
            '(' => out.push(Tok::LParen),
            ')' => out.push(Tok::RParen),
            d if d.is_ascii_digit() => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..=i].iter().collect();
                out.push(Tok::Num(s.parse().expect("digits")));
            }
            v if v == var => out.push(Tok::Var),
            other => {
                return Err(Error::Parse(format!(
                    "unexpected character {other:?} in {src:?}"
                )))
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at token {} in {:?}", self.pos, self.src))
    }

    fn expr(&mut self) -> Result<RationalFunction> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = acc.checked_div(&rhs).map_err(|_| self.err("division by zero"))?;
                }
                Some(Tok::Num(_) | Tok::Var | Tok::LParen) => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction> {
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RationalFunction> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            match self.bump() {
                Some(Tok::Num(e)) => {
                    let e: u32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
                    return Ok(base.pow(e));
                }
                _ => return Err(self.err("expected integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RationalFunction> {
        match self.bump() {
            Some(Tok::Num(n)) => Ok(RationalFunction::constant(big(n))),
            Some(Tok::Var) => Ok(RationalFunction::x()),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(self.err("expected ')'")),
                }
            }
            _ => Err(self.err("expected a number, variable or '('")),
        }
    }
}

/// Parses `src` as a rational function in the variable `var`.
pub fn parse_rf(src: &str, var: char) -> Result<RationalFunction> {
    let toks = tokenize(src, var)?;
    let mut p = Parser { toks, pos: 0, src };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

/// Parses a variable-free expression such as `-2^15*3^3` or `5*211^3/2^15`.
pub fn parse_constant(src: &str) -> Result<Rational> {
    // any letter is rejected by the tokenizer, so the variable is irrelevant
    let f = parse_rf(src, '\u{0}')?;
    f.constant_value()
        .ok_or_else(|| Error::Parse(format!("not a constant: {src:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::poly::Poly;

    #[test]
    fn factored_forms() {
        let f = parse_rf("(h+16)^3/h", 'h').unwrap();
        assert_eq!(f.num(), &Poly::from_ints(&[4096, 768, 48, 1]));
        assert_eq!(f.den(), &Poly::from_ints(&[0, 1]));
        let g = parse_rf("h(h^2+22h+125)", 'h').unwrap();
        assert_eq!(g.num(), &Poly::from_ints(&[0, 125, 22, 1]));
        let t = parse_rf("256(t^2+t+1)^3/(t^2(t+1)^2)", 't').unwrap();
        assert_eq!(t.eval(&int(1)).unwrap(), int(1728));
        let x = parse_rf("(4(t^2-1)/t)^2", 't').unwrap();
        assert_eq!(x.eval(&int(2)).unwrap(), int(36));
    }

    #[test]
    fn constants() {
        assert_eq!(parse_constant("-11*131^3").unwrap(), int(-11 * 131 * 131 * 131));
        assert_eq!(parse_constant("5*211^3/2^15").unwrap(), rat(5 * 211 * 211 * 211, 32768));
        assert_eq!(parse_constant("-5^2/2").unwrap(), rat(-25, 2));
        assert_eq!(parse_constant("-2^15").unwrap(), int(-32768));
    }

    #[test]
    fn unary_minus_binds_looser_than_power() {
        assert_eq!(parse_rf("-h^2", 'h').unwrap().eval(&int(3)).unwrap(), int(-9));
        assert_eq!(parse_rf("2-3h", 'h').unwrap().eval(&int(1)).unwrap(), int(-1));
    }

    #[test]
    fn errors() {
        assert!(parse_rf("(h+1", 'h').is_err());
        assert!(parse_rf("h+x", 'h').is_err());
        assert!(parse_rf("1/(h-h)", 'h').is_err());
        assert!(parse_constant("h").is_err());
        assert!(parse_rf("h^", 'h').is_err());
    }
}
