use super::element::WeylElement;
use super::poly::Poly;
use super::{Result, WeylError};
use crate::rational::{parse_q, Q};
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Var(bool, usize),
    Op(char),
}

fn var_index(name: &str) -> Option<(bool, usize)> {
    let alias = ["x", "y", "z"];
    if let Some(i) = alias.iter().position(|&a| a == name) {
        return Some((false, i));
    }
    if let Some(rest) = name.strip_prefix('d') {
        if let Some(i) = alias.iter().position(|&a| a == rest) {
            return Some((true, i));
        }
    }
    let (is_d, digits) = if let Some(r) = name.strip_prefix('x') {
        (false, r)
    } else if let Some(r) = name.strip_prefix('d') {
        (true, r)
    } else {
        return None;
    };
    let i: usize = digits.parse().ok()?;
    (i >= 1).then_some((is_d, i - 1))
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Tok::Num(cs[st..i].iter().collect()));
        } else if c.is_ascii_alphabetic() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let name: String = cs[st..i].iter().collect();
            let (d, k) = var_index(&name).ok_or_else(|| WeylError::Parse(format!("unknown variable `{name}`")))?;
            out.push(Tok::Var(d, k));
        } else if "+-*^()/".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(WeylError::Parse(format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    m: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<WeylElement> {
        let mut acc = if self.eat('-') {
            self.term()?.neg()
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<WeylElement> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.power()?);
            } else if self.eat('/') {
                let d = self.number()?;
                if d.is_zero() {
                    return Err(WeylError::Parse("division by zero".into()));
                }
                acc = acc.scale(&(Q::from_integer(1.into()) / d));
            } else {
                return Ok(acc);
            }
        }
    }

    fn number(&mut self) -> Result<Q> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                parse_q(&n).ok_or_else(|| WeylError::Parse(format!("bad number `{n}`")))
            }
            _ => Err(WeylError::Parse("expected a number".into())),
        }
    }

    fn power(&mut self) -> Result<WeylElement> {
        let base = self.atom()?;
        if self.eat('^') {
            let n = self.number()?;
            if !n.is_integer() || n < Q::zero() {
                return Err(WeylError::Parse("exponent must be a nonnegative integer".into()));
            }
            let k: u32 = n.to_integer().try_into().map_err(|_| WeylError::Parse("exponent too large".into()))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<WeylElement> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(_)) => Ok(WeylElement::constant(self.m, self.number()?)),
            Some(Tok::Var(d, i)) => {
                self.pos += 1;
                if i >= self.m {
                    return Err(WeylError::Parse(format!("variable index {} exceeds {}", i + 1, self.m)));
                }
                Ok(if d { WeylElement::d(self.m, i) } else { WeylElement::x(self.m, i) })
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(WeylError::Parse("expected `)`".into()));
                }
                Ok(e)
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(self.power()?.neg())
            }
            other => Err(WeylError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses operator text such as `x1*(x1-1)*d1` in `m` variables
/// (`x, y, z, dx, dy, dz` are accepted as aliases for the first three).
pub fn parse_weyl(s: &str, m: usize) -> Result<WeylElement> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(WeylError::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0, m };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(WeylError::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(e)
}

/// Parses a commutative polynomial in `x1..xm`.
pub fn parse_poly(s: &str, m: usize) -> Result<Poly> {
    let w = parse_weyl(s, m)?;
    if !w.is_polynomial() {
        return Err(WeylError::Parse("derivatives are not allowed here".into()));
    }
    Ok(Poly::from_terms(m, w.terms().iter().map(|(e, c)| (e[..m].to_vec(), c.clone()))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn parses_and_normal_orders() {
        let p = parse_weyl("d1*x1", 1).unwrap();
        assert_eq!(format!("{p}"), "x1*d1 + 1");
        let p = parse_weyl("x1*(x1-1)*d1", 1).unwrap();
        assert_eq!(format!("{p}"), "x1^2*d1 - x1*d1");
        let p = parse_weyl("-x + 3/2*dy^2", 2).unwrap();
        assert_eq!(p, WeylElement::d(2, 1).pow(2).scale(&crate::rational::qf(3, 2)).sub(&WeylElement::x(2, 0)));
        assert!(parse_weyl("x3", 2).is_err());
        assert!(parse_weyl("x1 +", 2).is_err());
        assert!(parse_weyl("x1 $", 2).is_err());
        assert_eq!(parse_poly("(x1+x2)^2", 2).unwrap().eval(&[q(1), q(2)]), q(9));
    }
}
