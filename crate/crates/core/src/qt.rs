//! The coefficient field `Q(q, t)`.
//!
//! A [`QtScalar`] is a reduced fraction of two polynomials in `Z[q, t]`. The
//! denominator's graded-lex leading coefficient is positive, zero is `0/1`,
//! and negative powers never appear inside either polynomial, so structural
//! equality is value equality.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::int::Int;
use crate::poly2::{Mon, Poly};
use crate::Error;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QtScalar {
    num: Poly,
    den: Poly,
}

/// t-adic valuation; `Infinite` only for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TVal {
    Finite(i64),
    Infinite,
}

impl fmt::Display for TVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TVal::Finite(v) => write!(f, "{v}"),
            TVal::Infinite => write!(f, "inf"),
        }
    }
}

impl QtScalar {
    pub fn zero() -> QtScalar {
        QtScalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> QtScalar {
        QtScalar::from_int(1)
    }

    pub fn from_int(c: i64) -> QtScalar {
        QtScalar {
            num: Poly::constant(Int::from(c)),
            den: Poly::one(),
        }
    }

    pub fn q() -> QtScalar {
        QtScalar::monomial(1, 1, 0)
    }

    pub fn t() -> QtScalar {
        QtScalar::monomial(1, 0, 1)
    }

    /// `c q^a t^b` with possibly negative exponents.
    pub fn monomial(c: i64, a: i32, b: i32) -> QtScalar {
        if c == 0 {
            return QtScalar::zero();
        }
        let num = Poly::monomial(Int::from(c), a.max(0) as u32, b.max(0) as u32);
        let den = Poly::monomial(Int::ONE, (-a).max(0) as u32, (-b).max(0) as u32);
        QtScalar { num, den }.sign_fix()
    }

    pub fn from_poly(p: Poly) -> QtScalar {
        QtScalar {
            num: p,
            den: Poly::one(),
        }
    }

    /// Reduces `num/den` to canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<QtScalar, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(QtScalar::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> QtScalar {
        if num.is_zero() {
            return QtScalar::zero();
        }
        if den.is_one() {
            return QtScalar { num, den };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides"),
                den.div_exact(&g).expect("gcd divides"),
            )
        };
        QtScalar { num, den }.sign_fix()
    }

    fn sign_fix(self) -> QtScalar {
        match self.den.grlex_leading() {
            Some((_, c)) if c.is_negative() => QtScalar {
                num: self.num.neg(),
                den: self.den.neg(),
            },
            _ => self,
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn neg(&self) -> QtScalar {
        QtScalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, o: &QtScalar) -> QtScalar {
        self.add_signed(o, false)
    }

    pub fn sub(&self, o: &QtScalar) -> QtScalar {
        self.add_signed(o, true)
    }

    fn add_signed(&self, o: &QtScalar, negate: bool) -> QtScalar {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { o.neg() } else { o.clone() };
        }
        let comb = |a: &Poly, b: &Poly| if negate { a.sub(b) } else { a.add(b) };
        if self.den == o.den {
            let n = comb(&self.num, &o.num);
            if self.den.is_one() {
                return QtScalar::from_poly(n);
            }
            return QtScalar::reduce(n, self.den.clone());
        }
        if self.den.is_monomial()
            && o.den.is_monomial()
            && self.den.terms()[0].1.is_one()
            && o.den.terms()[0].1.is_one()
        {
            // Laurent case: lcm of monic monomials is direct.
            let (ma, _) = self.den.terms()[0].clone();
            let (mb, _) = o.den.terms()[0].clone();
            let l = Mon::new(ma.q.max(mb.q), ma.t.max(mb.t));
            let fa = Poly::monomial(Int::ONE, l.q - ma.q, l.t - ma.t);
            let fb = Poly::monomial(Int::ONE, l.q - mb.q, l.t - mb.t);
            let n = comb(&self.num.mul(&fa), &o.num.mul(&fb));
            return QtScalar::reduce(n, Poly::monomial(Int::ONE, l.q, l.t));
        }
        let g = self.den.gcd(&o.den);
        let da = self.den.div_exact(&g).expect("gcd divides");
        let db = o.den.div_exact(&g).expect("gcd divides");
        let n = comb(&self.num.mul(&db), &o.num.mul(&da));
        if n.is_zero() {
            return QtScalar::zero();
        }
        let g2 = n.gcd(&g);
        let (n, g) = if g2.is_one() {
            (n, g)
        } else {
            (
                n.div_exact(&g2).expect("gcd divides"),
                g.div_exact(&g2).expect("gcd divides"),
            )
        };
        QtScalar {
            num: n,
            den: da.mul(&db).mul(&g),
        }
        .sign_fix()
    }

    pub fn mul(&self, o: &QtScalar) -> QtScalar {
        if self.is_zero() || o.is_zero() {
            return QtScalar::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return QtScalar::from_poly(self.num.mul(&o.num));
        }
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = o.den.div_exact(&g1).expect("gcd divides");
        let n2 = o.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        QtScalar {
            num: n1.mul(&n2),
            den: d1.mul(&d2),
        }
        .sign_fix()
    }

    pub fn inv(&self) -> Result<QtScalar, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(QtScalar {
            num: self.den.clone(),
            den: self.num.clone(),
        }
        .sign_fix())
    }

    pub fn div(&self, o: &QtScalar) -> Result<QtScalar, Error> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn scale_int(&self, c: i64) -> QtScalar {
        self.mul(&QtScalar::from_int(c))
    }

    pub fn pow(&self, e: i32) -> Result<QtScalar, Error> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs();
        Ok(QtScalar::reduce(base.num.pow(e), base.den.pow(e)))
    }

    /// Substitutes `q -> q^k`, `t -> t^k`.
    pub fn dilate(&self, k: u32) -> QtScalar {
        QtScalar::reduce(self.num.dilate(k), self.den.dilate(k))
    }

    pub fn t_adic_valuation(&self) -> TVal {
        if self.is_zero() {
            return TVal::Infinite;
        }
        TVal::Finite(self.num.min_t() as i64 - self.den.min_t() as i64)
    }

    /// Value at `t = 0`; requires nonnegative valuation.
    pub fn at_t_zero(&self) -> Option<QtScalar> {
        match self.t_adic_valuation() {
            TVal::Infinite => Some(QtScalar::zero()),
            TVal::Finite(v) if v > 0 => Some(QtScalar::zero()),
            TVal::Finite(0) => {
                let low = |p: &Poly| {
                    let m = p.min_t();
                    Poly::from_terms(
                        p.terms()
                            .iter()
                            .filter(|(e, _)| e.t == m)
                            .map(|(e, c)| (Mon::new(e.q, 0), c.clone())),
                    )
                };
                Some(QtScalar::reduce(low(&self.num), low(&self.den)))
            }
            _ => None,
        }
    }

    /// Total size measure used to pick cheap pivots.
    pub fn weight(&self) -> usize {
        self.num.len() + self.den.len()
    }

    /// Exact parse of the canonical text form or any rational expression in
    /// `q`, `t` with integer exponents (negative allowed).
    pub fn parse(s: &str) -> Result<QtScalar, Error> {
        let mut p = ExprParser {
            src: s.as_bytes(),
            pos: 0,
            text: s,
        };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("trailing input"));
        }
        Ok(v)
    }
}

impl fmt::Display for QtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // The numerator binds left of `/` already; a product in the
        // denominator must be grouped or it would reparse as a multiplier.
        let num = if self.num.len() > 1 {
            format!("({})", self.num)
        } else {
            self.num.to_string()
        };
        let den = self.den.to_string();
        let den = if self.den.len() > 1 || den.contains('*') {
            format!("({den})")
        } else {
            den
        };
        write!(f, "{num}/{den}")
    }
}

impl fmt::Debug for QtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for QtScalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<QtScalar, Error> {
        QtScalar::parse(s)
    }
}

impl Serialize for QtScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QtScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<QtScalar, D::Error> {
        let s = String::deserialize(d)?;
        QtScalar::parse(&s).map_err(serde::de::Error::custom)
    }
}

impl Default for QtScalar {
    fn default() -> QtScalar {
        QtScalar::zero()
    }
}

/// Arbitrary but deterministic total order, for canonical sorting only.
impl PartialOrd for QtScalar {
    fn partial_cmp(&self, o: &QtScalar) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for QtScalar {
    fn cmp(&self, o: &QtScalar) -> Ordering {
        self.den.cmp(&o.den).then_with(|| self.num.cmp(&o.num))
    }
}

struct ExprParser<'a> {
    src: &'a [u8],
    pos: usize,
    text: &'a str,
}

impl ExprParser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in {:?}", self.pos, self.text))
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

    fn expr(&mut self) -> Result<QtScalar, Error> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
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

    fn term(&mut self) -> Result<QtScalar, Error> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.power()?;
                    acc = acc.div(&d).map_err(|_| self.err("division by zero"))?;
                }
                Some(c) if c == b'(' || c == b'q' || c == b't' || c.is_ascii_digit() => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<QtScalar, Error> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let mut neg = false;
            match self.peek() {
                Some(b'-') => {
                    neg = true;
                    self.pos += 1;
                }
                Some(b'+') => self.pos += 1,
                _ => {}
            }
            let wrapped = self.peek() == Some(b'(');
            if wrapped {
                self.pos += 1;
                if self.peek() == Some(b'-') {
                    neg = !neg;
                    self.pos += 1;
                }
            }
            let e = self.integer()?;
            if wrapped {
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
            }
            let e = i32::try_from(e).map_err(|_| self.err("exponent too large"))?;
            return base
                .pow(if neg { -e } else { e })
                .map_err(|_| self.err("zero to a negative power"));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i64, Error> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        self.text[start..self.pos]
            .parse::<i64>()
            .map_err(|_| self.err("integer out of range"))
    }

    fn atom(&mut self) -> Result<QtScalar, Error> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(QtScalar::q())
            }
            Some(b't') => {
                self.pos += 1;
                Ok(QtScalar::t())
            }
            Some(c) if c.is_ascii_digit() => {
                self.skip_ws();
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = &self.text[start..self.pos];
                let big: num_bigint::BigInt =
                    digits.parse().map_err(|_| self.err("bad integer"))?;
                Ok(QtScalar::from_poly(Poly::constant(Int::from(big))))
            }
            _ => Err(self.err("expected operand")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> QtScalar {
        QtScalar::parse(x).unwrap()
    }

    #[test]
    fn cancellation_and_clearing() {
        let a = s("(1-t)*(1+t)");
        let b = s("1+t");
        assert_eq!(a.div(&b).unwrap().to_string(), "(1 - t)/1");
        let c = s("q^-1*(1-t)").div(&s("1-q^-1*t")).unwrap();
        assert_eq!(c.to_string(), "(1 - t)/(q - t)");
        assert_eq!(QtScalar::zero().mul(&s("q+t")).to_string(), "0/1");
        assert!(QtScalar::one().div(&QtScalar::zero()).is_err());
    }

    #[test]
    fn valuations() {
        assert_eq!(s("t^3*(1+q)/(1-t)").t_adic_valuation(), TVal::Finite(3));
        assert_eq!(s("1/t^2").t_adic_valuation(), TVal::Finite(-2));
        assert_eq!(s("t/(1-q^-1*t)").t_adic_valuation(), TVal::Finite(1));
        assert_eq!(QtScalar::zero().t_adic_valuation(), TVal::Infinite);
    }

    #[test]
    fn canonical_text_round_trips() {
        for x in [
            "(1 - t)/(q - t)",
            "q^2*t/1",
            "0/1",
            "1/1",
            "q/(-1 + q*t)",
            "(-1 + 2*t - t^2)/(-q^2 + q*t + q*t^2 - t^3)",
        ] {
            let v = s(x);
            assert_eq!(v.to_string(), x);
            assert_eq!(s(&v.to_string()), v);
        }
    }

    #[test]
    fn denominator_sign_is_positive_in_grlex() {
        // t - q has grlex leading term -q; stored negated.
        let v = s("1/(t-q)");
        assert_eq!(v.to_string(), "-1/(q - t)");
    }

    #[test]
    fn evaluation_at_t_zero() {
        assert_eq!(s("(1-t)/(q-t)").at_t_zero().unwrap(), s("1/q"));
        assert!(s("1/t").at_t_zero().is_none());
    }
}
