//! Text form shared by polynomials and operators.
//!
//! A term is a `*`-separated product of factors: rationals (`3`, `-1/2`), variables
//! (`x0`, `x2^3`, `y1`, `th1`, `vt2`) and, for operators, derivatives (`d_x1`, `d_vt1`).
//! Terms are joined with `+` or `-`. The literal `0` is the zero polynomial.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::monomial::{SuperMonomial, Variable};
use super::polynomial::{Rational, SuperPolynomial};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Factor {
    Num(Rational),
    Var(Variable, u32),
    Deriv(Variable, u32),
}

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(txt.parse().unwrap())
    }

    fn small(&mut self) -> Result<u32> {
        let d = self.digits()?;
        u32::try_from(d).or_else(|_| self.err("index or exponent too large"))
    }

    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphabetic() || self.s[self.pos] == b'_') {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).unwrap()
    }

    fn variable(&mut self, head: &str) -> Result<Variable> {
        let idx = self.small()?;
        let idx16 = u16::try_from(idx).or_else(|_| self.err("index too large"))?;
        let v = match head {
            "x" if idx == 0 => Variable::X0,
            "x" => Variable::X(idx16),
            "y" if idx > 0 => Variable::Y(idx16),
            "th" if idx > 0 => Variable::Theta(idx16),
            "vt" if idx > 0 => Variable::VarTheta(idx16),
            _ => return self.err(format!("unknown variable {head}{idx}")),
        };
        Ok(v)
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.small()
        } else {
            Ok(1)
        }
    }

    fn factor(&mut self) -> Result<Factor> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let p = self.digits()?;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let q = self.digits()?;
                    if q.is_zero() {
                        return self.err("zero denominator");
                    }
                    Ok(Factor::Num(Rational::new(p, q)))
                } else {
                    Ok(Factor::Num(Rational::from_integer(p)))
                }
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let w = self.word();
                let (deriv, head) = match w.strip_prefix("d_") {
                    Some(h) => (true, h),
                    None => (false, w),
                };
                let v = self.variable(head)?;
                let e = self.exponent()?;
                Ok(if deriv { Factor::Deriv(v, e) } else { Factor::Var(v, e) })
            }
            _ => self.err("expected a factor"),
        }
    }
}

/// Split text into signed terms, each a list of factors in written order.
pub(crate) fn parse_terms(text: &str) -> Result<Vec<(bool, Vec<Factor>)>> {
    let mut lx = Lexer { s: text.as_bytes(), pos: 0 };
    let mut out = Vec::new();
    let mut first = true;
    loop {
        let mut neg = false;
        match lx.peek() {
            None if first => return lx.err("empty input"),
            None => break,
            Some(b'+') => lx.pos += 1,
            Some(b'-') => {
                neg = true;
                lx.pos += 1
            }
            Some(_) if first => {}
            Some(_) => return lx.err("expected + or -"),
        }
        first = false;
        let mut factors = vec![lx.factor()?];
        while lx.peek() == Some(b'*') {
            lx.pos += 1;
            factors.push(lx.factor()?);
        }
        out.push((neg, factors));
    }
    Ok(out)
}

/// Parse the text form of a super-polynomial. Fermionic factors may appear in any
/// order; they are brought to canonical order with the matching sign.
pub fn parse_polynomial(text: &str) -> Result<SuperPolynomial> {
    let mut out = SuperPolynomial::zero();
    for (neg, factors) in parse_terms(text)? {
        let mut c = if neg { -Rational::one() } else { Rational::one() };
        let mut vars = Vec::new();
        for f in factors {
            match f {
                Factor::Num(q) => c *= q,
                Factor::Var(v, e) => vars.push((v, e)),
                Factor::Deriv(v, _) => {
                    return Err(Error::Parse { pos: 0, msg: format!("derivative d_{v} in a polynomial") })
                }
            }
        }
        if let Some((s, m)) = SuperMonomial::from_factors(&vars)? {
            out.add_term(m, if s { -c } else { c });
        }
    }
    Ok(out)
}

/// Render a polynomial; identical to its `Display` form.
pub fn render(p: &SuperPolynomial) -> String {
    p.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::polynomial::ratio;

    #[test]
    fn roundtrip_with_signs() {
        let p = parse_polynomial("vt1*th1 + 3/6*x1^2*y3 - 2").unwrap();
        assert_eq!(p.to_string(), "-2/1 - 1/1*th1*vt1 + 1/2*x1^2*y3");
        assert_eq!(parse_polynomial(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn repeated_fermion_vanishes() {
        assert!(parse_polynomial("th1*x1*th1").unwrap().is_zero());
        assert!(parse_polynomial("0").unwrap().is_zero());
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_polynomial("x1 +").is_err());
        assert!(parse_polynomial("z1").is_err());
        assert!(parse_polynomial("d_x1").is_err());
        assert!(parse_polynomial("1/0").is_err());
        assert_eq!(parse_polynomial("-1/2*x0").unwrap().coeff(&SuperMonomial::var(Variable::X0)), ratio(-1, 2));
    }
}
