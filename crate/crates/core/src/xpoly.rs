//! Sparse Laurent polynomials in `x_1..x_n` over `Q(q, t)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::qt::QtScalar;
use crate::Error;

pub type Exp = Vec<i32>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct XPoly {
    nvars: usize,
    terms: BTreeMap<Exp, QtScalar>,
}

impl XPoly {
    pub fn zero(n: usize) -> XPoly {
        XPoly {
            nvars: n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> XPoly {
        XPoly::monomial(vec![0; n], QtScalar::one())
    }

    pub fn monomial(e: Exp, c: QtScalar) -> XPoly {
        let mut p = XPoly::zero(e.len());
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    /// The variable `x_i` (1-based).
    pub fn var(n: usize, i: usize) -> XPoly {
        let mut e = vec![0; n];
        e[i - 1] = 1;
        XPoly::monomial(e, QtScalar::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Exp, QtScalar)>>(n: usize, it: I) -> XPoly {
        let mut p = XPoly::zero(n);
        for (e, c) in it {
            assert_eq!(e.len(), n, "exponent length");
            p.add_term(e, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Exp, QtScalar> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Exp, QtScalar> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[i32]) -> QtScalar {
        self.terms.get(e).cloned().unwrap_or_else(QtScalar::zero)
    }

    pub fn add_term(&mut self, e: Exp, c: &QtScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = v.add(c);
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn add_assign(&mut self, o: &XPoly) {
        debug_assert_eq!(self.nvars, o.nvars);
        for (e, c) in &o.terms {
            self.add_term(e.clone(), c);
        }
    }

    /// `self += c * o`.
    pub fn add_scaled(&mut self, o: &XPoly, c: &QtScalar) {
        if c.is_zero() {
            return;
        }
        for (e, v) in &o.terms {
            self.add_term(e.clone(), &v.mul(c));
        }
    }

    pub fn add(&self, o: &XPoly) -> XPoly {
        let mut r = self.clone();
        r.add_assign(o);
        r
    }

    pub fn sub(&self, o: &XPoly) -> XPoly {
        let mut r = self.clone();
        r.add_scaled(o, &QtScalar::from_int(-1));
        r
    }

    pub fn scale(&self, c: &QtScalar) -> XPoly {
        if c.is_zero() {
            return XPoly::zero(self.nvars);
        }
        XPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v.mul(c)))
                .collect(),
        }
    }

    pub fn mul(&self, o: &XPoly) -> XPoly {
        let mut r = XPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e: Exp = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                r.add_term(e, &ca.mul(cb));
            }
        }
        r
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift(&self, shift: &[i32]) -> XPoly {
        XPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Applies `f` to each monomial, collecting the results.
    pub fn map_monomials<F: FnMut(&[i32]) -> Vec<(Exp, QtScalar)>>(&self, mut f: F) -> XPoly {
        let mut r = XPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            for (e2, c2) in f(e) {
                r.add_term(e2, &c2.mul(c));
            }
        }
        r
    }

    /// Swap `x_i <-> x_{i+1}` (1-based).
    pub fn swap(&self, i: usize) -> XPoly {
        XPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.swap(i - 1, i);
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Homogeneous degree, if homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<i32> {
        let mut it = self.terms.keys().map(|e| e.iter().sum::<i32>());
        let d = it.next()?;
        if it.all(|x| x == d) {
            Some(d)
        } else {
            None
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&a| a >= 0))
    }

    /// Whether `x_i` divides every term (as a polynomial).
    pub fn divisible_by_var(&self, i: usize) -> bool {
        self.terms.keys().all(|e| e[i - 1] >= 1)
    }

    /// Adds `extra` variables set to zero: terms involving them are dropped
    /// when shrinking, kept as-is when growing.
    pub fn with_nvars(&self, n: usize) -> XPoly {
        let mut r = XPoly::zero(n);
        for (e, c) in &self.terms {
            if n >= self.nvars {
                let mut e2 = e.clone();
                e2.resize(n, 0);
                r.terms.insert(e2, c.clone());
            } else if e[n..].iter().all(|&a| a == 0) {
                r.terms.insert(e[..n].to_vec(), c.clone());
            }
        }
        r
    }

    /// Structural text: `n=2; [2,0]: coeff; ...`.
    pub fn to_structural(&self) -> String {
        let mut s = format!("n={}", self.nvars);
        for (e, c) in self.terms.iter().rev() {
            s.push_str(&format!("; {}: {}", fmt_exp(e), c));
        }
        s
    }

    pub fn parse_structural(s: &str) -> Result<XPoly, Error> {
        let mut parts = s.split(';');
        let head = parts.next().unwrap_or("").trim();
        let n: usize = head
            .strip_prefix("n=")
            .and_then(|x| x.trim().parse().ok())
            .ok_or_else(|| Error::Parse(format!("expected n=<count>, got {head:?}")))?;
        let mut p = XPoly::zero(n);
        for part in parts {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (e, c) = part
                .split_once("]:")
                .ok_or_else(|| Error::Parse(format!("bad term {part:?}")))?;
            let e = parse_exp(&format!("{e}]"))?;
            if e.len() != n {
                return Err(Error::Parse(format!("exponent {e:?} has wrong length")));
            }
            p.add_term(e, &QtScalar::parse(c.trim())?);
        }
        Ok(p)
    }

    /// Human-readable form: `x1 + ((1 - t)/(q - t))*x1*x2`. Parses back with
    /// [`XPoly::parse_pretty`] given the variable count.
    pub fn to_pretty(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .rev()
            .map(|(e, c)| pretty_term(e, c))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn parse_pretty(n: usize, s: &str) -> Result<XPoly, Error> {
        let mut p = XPoly::zero(n);
        if s.trim() == "0" {
            return Ok(p);
        }
        for term in split_top_level(s, " + ") {
            let term = term.trim();
            let (coeff, mono) = if let Some(rest) = term.strip_prefix('(') {
                let close = matching_paren(rest)
                    .ok_or_else(|| Error::Parse(format!("unbalanced {term:?}")))?;
                let c = QtScalar::parse(&rest[..close])?;
                let after = &rest[close + 1..];
                (c, after.strip_prefix('*').unwrap_or(after))
            } else {
                (QtScalar::one(), term)
            };
            let mut e = vec![0; n];
            if !mono.is_empty() && mono != "1" {
                for factor in mono.split('*') {
                    let (v, pow) = match factor.split_once('^') {
                        Some((v, p)) => {
                            (v, p.trim_matches(|c| c == '(' || c == ')').parse::<i32>())
                        }
                        None => (factor, Ok(1)),
                    };
                    let idx: usize = v
                        .strip_prefix('x')
                        .and_then(|x| x.parse().ok())
                        .filter(|&i| i >= 1 && i <= n)
                        .ok_or_else(|| Error::Parse(format!("bad variable {v:?}")))?;
                    e[idx - 1] +=
                        pow.map_err(|_| Error::Parse(format!("bad power in {factor:?}")))?;
                }
            }
            p.add_term(e, &coeff);
        }
        Ok(p)
    }
}

pub(crate) fn fmt_exp(e: &[i32]) -> String {
    let inner: Vec<String> = e.iter().map(|a| a.to_string()).collect();
    format!("[{}]", inner.join(","))
}

pub(crate) fn parse_exp(s: &str) -> Result<Exp, Error> {
    let s = s.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|x| x.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected [..], got {s:?}")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<i32>()
                .map_err(|_| Error::Parse(format!("bad exponent {x:?}")))
        })
        .collect()
}

pub(crate) fn monomial_string(e: &[i32], var_offset: usize) -> String {
    let mut parts = Vec::new();
    for (i, &a) in e.iter().enumerate() {
        match a {
            0 => {}
            1 => parts.push(format!("x{}", i + 1 + var_offset)),
            a if a < 0 => parts.push(format!("x{}^({a})", i + 1 + var_offset)),
            a => parts.push(format!("x{}^{a}", i + 1 + var_offset)),
        }
    }
    parts.join("*")
}

fn pretty_term(e: &[i32], c: &QtScalar) -> String {
    let m = monomial_string(e, 0);
    match (c.is_one(), m.is_empty()) {
        (true, true) => "1".into(),
        (true, false) => m,
        (false, true) => format!("({c})"),
        (false, false) => format!("({c})*{m}"),
    }
}

pub(crate) fn matching_paren(s: &str) -> Option<usize> {
    let mut depth = 1;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

/// Splits on `sep` occurring outside parentheses and brackets.
pub(crate) fn split_top_level<'a>(s: &'a str, sep: &str) -> Vec<&'a str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'(' | b'[' => depth += 1,
            b')' | b']' => depth -= 1,
            _ => {}
        }
        if depth == 0 && s[i..].starts_with(sep) {
            out.push(&s[start..i]);
            i += sep.len();
            start = i;
            continue;
        }
        i += 1;
    }
    out.push(&s[start..]);
    out
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_pretty())
    }
}

impl fmt::Debug for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_structural())
    }
}

#[derive(Serialize, Deserialize)]
struct XPolyJson {
    nvars: usize,
    terms: Vec<(Exp, QtScalar)>,
}

impl Serialize for XPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        XPolyJson {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for XPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<XPoly, D::Error> {
        let j = XPolyJson::deserialize(d)?;
        if j.terms.iter().any(|(e, _)| e.len() != j.nvars) {
            return Err(serde::de::Error::custom("exponent length mismatch"));
        }
        Ok(XPoly::from_terms(j.nvars, j.terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> XPoly {
        let c = QtScalar::parse("(1-t)/(q-t)").unwrap();
        XPoly::from_terms(
            2,
            [
                (vec![2, 0], QtScalar::one()),
                (vec![1, 1], c),
                (vec![-1, 3], QtScalar::parse("-q").unwrap()),
            ],
        )
    }

    #[test]
    fn text_round_trips() {
        let p = sample();
        assert_eq!(XPoly::parse_structural(&p.to_structural()).unwrap(), p);
        assert_eq!(XPoly::parse_pretty(2, &p.to_pretty()).unwrap(), p);
        assert_eq!(XPoly::var(1, 1).to_pretty(), "x1");
        let j = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<XPoly>(&j).unwrap(), p);
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = sample();
        assert!(p.sub(&p).is_zero());
    }
}
