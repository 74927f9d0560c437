use num_bigint::BigInt;
use num_traits::Zero;

use super::SparsePoly;
use crate::error::{Error, Result};
use crate::exactnum::{ExtField, Rat, Value};

/// Parses a polynomial with rational coefficients.
///
/// ```text
/// expr     := sign? term (('+'|'-') term)*
/// term     := factor ('*' factor)*
/// factor   := base ('^' natural)?
/// base     := variable | rational | '(' expr ')'
/// rational := integer ('/' positive-integer)?
/// ```
pub fn parse_poly(text: &str, vars: &[&str]) -> Result<SparsePoly> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars,
        field: ExtField::rational(),
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [&'a str],
    field: ExtField,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
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

    fn zero(&self) -> SparsePoly {
        SparsePoly::zero(&self.field, self.vars)
    }

    fn expr(&mut self) -> Result<SparsePoly> {
        let mut neg = false;
        match self.peek() {
            Some(b'-') => {
                neg = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<SparsePoly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<SparsePoly> {
        let b = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let n = self.natural()?;
            let n: u32 = n.try_into().map_err(|_| self.err("exponent too large"))?;
            return Ok(b.pow(n));
        }
        Ok(b)
    }

    fn natural(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn base(&mut self) -> Result<SparsePoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.natural()?;
                let mut r = Rat::from_integer(n);
                let save = self.pos;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let d = self.natural()?;
                    if d.is_zero() {
                        self.pos = save;
                        return Err(self.err("zero denominator"));
                    }
                    r /= Rat::from_integer(d);
                }
                let z = self.zero();
                Ok(z.constant_like(Value::Q(r)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(self.zero().var_like(i)),
                    None => Err(Error::UnknownVariable(name.to_string())),
                }
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rat_int};

    #[test]
    fn reads_terms() {
        let f = parse_poly("x^2 - y^4", &["x", "y"]).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.coeff(&[2, 0]), Value::Q(rat_int(1)));
        assert_eq!(f.coeff(&[0, 4]), Value::Q(rat_int(-1)));
    }

    #[test]
    fn expands_powers() {
        let f = parse_poly("x0*x1*x2 + (x0^3 - x1^2)^2", &["x0", "x1", "x2"]).unwrap();
        assert_eq!(f.len(), 4);
        assert_eq!(f.coeff(&[3, 2, 0]), Value::Q(rat_int(-2)));
        let g = parse_poly("(x + 1/2)^2", &["x"]).unwrap();
        assert_eq!(g.coeff(&[0]), Value::Q(rat(1, 4)));
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_poly("x +", &["x"]),
            Err(Error::Syntax { pos: 3, .. })
        ));
        assert!(
            matches!(parse_poly("x + z", &["x", "y"]), Err(Error::UnknownVariable(v)) if v == "z")
        );
        assert!(matches!(
            parse_poly("x^", &["x"]),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_poly("(x", &["x"]),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_poly("1/0", &["x"]),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_poly("x y", &["x", "y"]),
            Err(Error::Syntax { .. })
        ));
    }
}
