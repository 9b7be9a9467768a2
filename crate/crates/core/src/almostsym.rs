//! Almost-symmetric functions: finite sums of `x^a * m_lambda[x_{k+1} + ..]`.
//!
//! The split index `k` may be larger than necessary while operators run;
//! [`AlmostSym::normalize`] restores the minimal split. Equality and
//! serialization always go through the normal form.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::comb::Partition;
use crate::daha::Rep;
use crate::qt::QtScalar;
use crate::symfunc::{expand_in_hlp, split_monomial, Basis, SymFunc};
use crate::xpoly::{monomial_string, XPoly};
use crate::Error;

/// `(exponents of x_1..x_k, tail partition)`.
pub type Key = (Vec<u32>, Partition);

#[derive(Clone)]
pub struct AlmostSym {
    split: usize,
    terms: BTreeMap<Key, QtScalar>,
}

impl AlmostSym {
    pub fn zero() -> AlmostSym {
        AlmostSym {
            split: 0,
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> AlmostSym {
        AlmostSym::term(vec![], Partition::empty(), QtScalar::one())
    }

    /// `c * x^a * m_lambda[x_{len(a)+1} + ..]`.
    pub fn term(a: Vec<u32>, lambda: Partition, c: QtScalar) -> AlmostSym {
        let mut f = AlmostSym {
            split: a.len(),
            terms: BTreeMap::new(),
        };
        f.add_term((a, lambda), &c);
        f
    }

    /// `x_i` as an element of split `i`.
    pub fn var(i: usize) -> AlmostSym {
        let mut a = vec![0; i];
        a[i - 1] = 1;
        AlmostSym::term(a, Partition::empty(), QtScalar::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Key, QtScalar)>>(split: usize, it: I) -> AlmostSym {
        let mut f = AlmostSym {
            split,
            terms: BTreeMap::new(),
        };
        for (k, c) in it {
            assert_eq!(k.0.len(), split, "exponent length must equal the split");
            f.add_term(k, &c);
        }
        f
    }

    /// `F[x_1 + x_2 + ..]`.
    pub fn from_symfunc(f: &SymFunc) -> AlmostSym {
        let fm = f.to_basis(Basis::M);
        AlmostSym::from_terms(
            0,
            fm.terms()
                .iter()
                .map(|(l, c)| ((vec![], l.clone()), c.clone())),
        )
    }

    /// `F[x_{k+1} + ..]` at split `k`.
    pub fn from_symfunc_at(f: &SymFunc, k: usize) -> AlmostSym {
        let fm = f.to_basis(Basis::M);
        AlmostSym::from_terms(
            k,
            fm.terms()
                .iter()
                .map(|(l, c)| ((vec![0; k], l.clone()), c.clone())),
        )
    }

    /// A polynomial in `x_1..x_n` with nonnegative exponents, at split `n`.
    pub fn from_xpoly(p: &XPoly) -> Result<AlmostSym, Error> {
        if !p.is_polynomial() {
            return Err(Error::InvalidArgument(
                "negative exponent in a polynomial part".into(),
            ));
        }
        let n = p.nvars();
        Ok(AlmostSym::from_terms(
            n,
            p.terms().iter().map(|(e, c)| {
                (
                    (e.iter().map(|&x| x as u32).collect(), Partition::empty()),
                    c.clone(),
                )
            }),
        ))
    }

    pub fn split(&self) -> usize {
        self.split
    }

    pub fn terms(&self) -> &BTreeMap<Key, QtScalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, a: &[u32], lambda: &Partition) -> QtScalar {
        self.terms
            .get(&(a.to_vec(), lambda.clone()))
            .cloned()
            .unwrap_or_else(QtScalar::zero)
    }

    pub fn add_term(&mut self, k: Key, c: &QtScalar) {
        debug_assert_eq!(k.0.len(), self.split);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(v) => {
                let s = v.add(c);
                if s.is_zero() {
                    self.terms.remove(&k);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(k, c.clone());
            }
        }
    }

    /// Total degrees present.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self
            .terms
            .keys()
            .map(|(a, l)| a.iter().sum::<u32>() + l.size())
            .collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn max_degree(&self) -> u32 {
        self.degrees().last().copied().unwrap_or(0)
    }

    pub fn homogeneous_degree(&self) -> Option<u32> {
        match self.degrees().as_slice() {
            [d] => Some(*d),
            [] => Some(0),
            _ => None,
        }
    }

    /// Same element with tail starting at `x_{k+1}`.
    pub fn raise_split(&self, k: usize) -> AlmostSym {
        assert!(k >= self.split, "raise_split cannot lower the split");
        if k == self.split {
            return self.clone();
        }
        let j = k - self.split;
        let mut out = AlmostSym {
            split: k,
            terms: BTreeMap::new(),
        };
        for ((a, l), c) in &self.terms {
            for (b, nu) in split_monomial(l, j) {
                let mut e = a.clone();
                e.extend(b);
                out.add_term((e, nu), c);
            }
        }
        out
    }

    /// Lowers the split by one if the element lies in the smaller space.
    fn try_lower_once(&self) -> Option<AlmostSym> {
        if self.split == 0 {
            return None;
        }
        let k = self.split;
        // Raising a split-(k-1) element g reproduces the terms of g exactly on
        // the monomials with no x_k, so g is determined by those terms.
        let cand = AlmostSym::from_terms(
            k - 1,
            self.terms
                .iter()
                .filter(|((a, _), _)| a[k - 1] == 0)
                .map(|((a, l), c)| ((a[..k - 1].to_vec(), l.clone()), c.clone())),
        );
        if cand.raise_split(k).terms == self.terms {
            Some(cand)
        } else {
            None
        }
    }

    /// Minimal split presentation.
    pub fn lower_split(&self) -> AlmostSym {
        let mut f = self.clone();
        while let Some(g) = f.try_lower_once() {
            f = g;
        }
        f
    }

    pub fn normalize(&self) -> AlmostSym {
        self.lower_split()
    }

    /// `pi_n`: the tail alphabet becomes `x_{k+1}, .., x_n`.
    pub fn project_pi(&self, n: usize) -> Result<XPoly, Error> {
        if n < self.split {
            return Err(Error::InvalidArgument(format!(
                "pi_{n} needs n >= split {}",
                self.split
            )));
        }
        let mut out = XPoly::zero(n);
        for ((a, l), c) in &self.terms {
            for (b, rest) in split_monomial(l, n - self.split) {
                if !rest.is_empty() {
                    continue;
                }
                let e: Vec<i32> = a.iter().chain(b.iter()).map(|&x| x as i32).collect();
                out.add_term(e, c);
            }
        }
        Ok(out)
    }

    /// Keeps the terms divisible by `x_1`.
    pub fn rho(&self) -> AlmostSym {
        let f = self.raise_split(self.split.max(1));
        AlmostSym::from_terms(f.split, f.terms.into_iter().filter(|((a, _), _)| a[0] > 0))
    }

    fn map_poly_part<F: Fn(&[i32]) -> Vec<(Vec<i32>, QtScalar)>>(
        &self,
        min_split: usize,
        f: F,
    ) -> AlmostSym {
        let g = self.raise_split(self.split.max(min_split));
        let mut out = AlmostSym {
            split: g.split,
            terms: BTreeMap::new(),
        };
        for ((a, l), c) in &g.terms {
            let e: Vec<i32> = a.iter().map(|&x| x as i32).collect();
            for (b, v) in f(&e) {
                let b: Vec<u32> = b
                    .into_iter()
                    .map(|x| u32::try_from(x).expect("polynomial exponents stay nonnegative"))
                    .collect();
                out.add_term((b, l.clone()), &v.mul(c));
            }
        }
        out
    }

    /// `T_i`, acting on `x_i, x_{i+1}` after raising the split past `i + 1`.
    pub fn act_t(&self, i: usize) -> AlmostSym {
        assert!(i >= 1, "T_i needs i >= 1");
        let rep = Rep::new(i + 1);
        self.map_poly_part(i + 1, |e| rep.t_monomial(i, e))
    }

    /// `T_i^{-1} = t^{-1} T_i + (1 - t^{-1})`.
    pub fn act_t_inv(&self, i: usize) -> AlmostSym {
        let tinv = QtScalar::monomial(1, 0, -1);
        self.act_t(i)
            .scale(&tinv)
            .add(&self.scale(&QtScalar::one().sub(&tinv)))
    }

    /// Multiplication by `x_i`.
    pub fn act_x(&self, i: usize) -> AlmostSym {
        assert!(i >= 1, "X_i needs i >= 1");
        self.map_poly_part(i, |e| {
            let mut b = e.to_vec();
            b[i - 1] += 1;
            vec![(b, QtScalar::one())]
        })
    }

    pub fn scale(&self, c: &QtScalar) -> AlmostSym {
        if c.is_zero() {
            return AlmostSym {
                split: self.split,
                terms: BTreeMap::new(),
            };
        }
        AlmostSym {
            split: self.split,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v.mul(c)))
                .collect(),
        }
    }

    fn common(&self, o: &AlmostSym) -> (AlmostSym, AlmostSym) {
        let k = self.split.max(o.split);
        (self.raise_split(k), o.raise_split(k))
    }

    pub fn add(&self, o: &AlmostSym) -> AlmostSym {
        let (mut a, b) = self.common(o);
        for (k, c) in b.terms {
            a.add_term(k, &c);
        }
        a
    }

    pub fn sub(&self, o: &AlmostSym) -> AlmostSym {
        self.add(&o.scale(&QtScalar::from_int(-1)))
    }

    pub fn mul(&self, o: &AlmostSym) -> AlmostSym {
        let (a, b) = self.common(o);
        let mut out = AlmostSym {
            split: a.split,
            terms: BTreeMap::new(),
        };
        let mut tail_cache: BTreeMap<(Partition, Partition), SymFunc> = BTreeMap::new();
        for ((ea, la), ca) in &a.terms {
            for ((eb, lb), cb) in &b.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let prod = tail_cache
                    .entry((la.clone(), lb.clone()))
                    .or_insert_with(|| {
                        SymFunc::basis_element(Basis::M, la)
                            .mul(&SymFunc::basis_element(Basis::M, lb))
                            .to_basis(Basis::M)
                    })
                    .clone();
                let c = ca.mul(cb);
                for (nu, v) in prod.terms() {
                    out.add_term((e.clone(), nu.clone()), &v.mul(&c));
                }
            }
        }
        out
    }

    pub fn equals(&self, o: &AlmostSym) -> bool {
        let (a, b) = self.common(o);
        a.terms == b.terms
    }

    /// The tail part when the split is 0.
    pub fn to_symfunc(&self) -> Option<SymFunc> {
        let f = self.lower_split();
        if f.split != 0 {
            return None;
        }
        Some(SymFunc::from_terms(
            Basis::M,
            f.terms.into_iter().map(|((_, l), c)| (l, c)),
        ))
    }

    /// Coefficient-wise map, dropping zeros.
    pub fn map_coeffs<F: Fn(&QtScalar) -> QtScalar>(&self, f: F) -> AlmostSym {
        let mut out = AlmostSym {
            split: self.split,
            terms: BTreeMap::new(),
        };
        for (k, c) in &self.terms {
            out.add_term(k.clone(), &f(c));
        }
        out
    }

    /// `split=k; [a_1,..,a_k] ⊗ m[lambda]: coeff; ..`, in normal form.
    pub fn to_text(&self) -> String {
        let f = self.normalize();
        let mut s = format!("split={}", f.split);
        if f.terms.is_empty() {
            s.push_str("; 0");
        }
        for ((a, l), c) in f.terms.iter().rev() {
            let a: Vec<String> = a.iter().map(|x| x.to_string()).collect();
            s.push_str(&format!("; [{}] ⊗ m{}: {}", a.join(","), l, c));
        }
        s
    }

    /// Hall-Littlewood rendering, e.g. `x1 * P[1,1](x2+...)`, in normal form.
    pub fn to_hlp_text(&self) -> Result<String, Error> {
        let f = self.normalize();
        let k = f.split;
        let mut groups: BTreeMap<&Vec<u32>, SymFunc> = BTreeMap::new();
        for ((a, l), c) in &f.terms {
            groups
                .entry(a)
                .or_insert_with(|| SymFunc::zero(Basis::M))
                .add_term(l.clone(), c);
        }
        let mut out = Vec::new();
        for (a, sym) in groups.iter().rev() {
            let e: Vec<i32> = a.iter().map(|&x| x as i32).collect();
            let mono = monomial_string(&e, 0);
            for (l, c) in expand_in_hlp(sym)?.sorted_terms() {
                let mut factors = Vec::new();
                if !c.is_one() {
                    factors.push(format!("({c})"));
                }
                if !mono.is_empty() {
                    factors.push(mono.clone());
                }
                if !l.is_empty() {
                    let parts: Vec<String> = l.parts().iter().map(|x| x.to_string()).collect();
                    factors.push(format!("P[{}](x{}+...)", parts.join(","), k + 1));
                }
                if factors.is_empty() {
                    factors.push("1".into());
                }
                out.push(factors.join(" * "));
            }
        }
        if out.is_empty() {
            return Ok("0".into());
        }
        Ok(out.join(" + "))
    }

    pub fn parse_text(s: &str) -> Result<AlmostSym, Error> {
        let mut parts = s.split(';').map(str::trim);
        let head = parts.next().unwrap_or("");
        let k: usize = head
            .strip_prefix("split=")
            .and_then(|x| x.trim().parse().ok())
            .ok_or_else(|| Error::Parse(format!("expected split=k, got {head:?}")))?;
        let mut f = AlmostSym {
            split: k,
            terms: BTreeMap::new(),
        };
        for t in parts {
            if t == "0" || t.is_empty() {
                continue;
            }
            let (lhs, c) = t
                .split_once("]:")
                .ok_or_else(|| Error::Parse(format!("bad term {t:?}")))?;
            let (a, l) = lhs
                .split_once('⊗')
                .ok_or_else(|| Error::Parse(format!("bad term {t:?}")))?;
            let a = a.trim().trim_start_matches('[').trim_end_matches(']');
            let a: Vec<u32> = if a.trim().is_empty() {
                vec![]
            } else {
                a.split(',')
                    .map(|x| {
                        x.trim()
                            .parse::<u32>()
                            .map_err(|e| Error::Parse(e.to_string()))
                    })
                    .collect::<Result<_, _>>()?
            };
            if a.len() != k {
                return Err(Error::Parse(format!(
                    "exponent {a:?} does not match split {k}"
                )));
            }
            let l = l
                .trim()
                .strip_prefix('m')
                .ok_or_else(|| Error::Parse(format!("expected m[..] in {t:?}")))?;
            let l = Partition::parse(&format!("{l}]"))?;
            f.add_term((a, l), &QtScalar::parse(c.trim())?);
        }
        Ok(f)
    }
}

impl PartialEq for AlmostSym {
    fn eq(&self, o: &AlmostSym) -> bool {
        self.equals(o)
    }
}

impl fmt::Display for AlmostSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for AlmostSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    x: Vec<u32>,
    m: Vec<u32>,
    coeff: QtScalar,
}

#[derive(Serialize, Deserialize)]
struct AlmostSymJson {
    split: usize,
    terms: Vec<TermJson>,
}

impl Serialize for AlmostSym {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let f = self.normalize();
        AlmostSymJson {
            split: f.split,
            terms: f
                .terms
                .iter()
                .rev()
                .map(|((a, l), c)| TermJson {
                    x: a.clone(),
                    m: l.parts().to_vec(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlmostSym {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<AlmostSym, D::Error> {
        let j = AlmostSymJson::deserialize(d)?;
        let mut f = AlmostSym {
            split: j.split,
            terms: BTreeMap::new(),
        };
        for t in j.terms {
            if t.x.len() != j.split {
                return Err(serde::de::Error::custom(
                    "exponent length differs from split",
                ));
            }
            f.add_term(
                (t.x, Partition::new(t.m).map_err(serde::de::Error::custom)?),
                &t.coeff,
            );
        }
        Ok(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfunc::m;

    fn pt(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn tail(k: usize, l: &[u32]) -> AlmostSym {
        AlmostSym::term(vec![0; k], pt(l), QtScalar::one())
    }

    #[test]
    fn raise_and_lower() {
        let f = tail(1, &[1]);
        let g = f.raise_split(2);
        assert!(g.terms == AlmostSym::var(2).add(&tail(2, &[1])).terms);
        assert_eq!(g.lower_split().split(), 1);
        let x1 = AlmostSym::var(1);
        assert_eq!(x1.raise_split(3).lower_split().split(), 1);
        let h = tail(1, &[1, 1]).raise_split(2);
        let expect = AlmostSym::term(vec![0, 1], pt(&[1]), QtScalar::one()).add(&tail(2, &[1, 1]));
        assert!(h.terms == expect.terms);
        let x1m1 = AlmostSym::term(vec![1], pt(&[1]), QtScalar::one());
        assert_eq!(x1m1.lower_split().split(), 1);
    }

    #[test]
    fn projections() {
        let x1m1 = AlmostSym::term(vec![1], pt(&[1]), QtScalar::one());
        let p = x1m1.project_pi(2).unwrap();
        assert_eq!(p, XPoly::monomial(vec![1, 1], QtScalar::one()));
        assert!(tail(1, &[1, 1]).project_pi(1).unwrap().is_zero());
        assert!(x1m1.raise_split(2).project_pi(3).unwrap() == x1m1.project_pi(3).unwrap());
        assert!(x1m1.project_pi(0).is_err());
    }

    #[test]
    fn rho_examples() {
        let x1m1 = AlmostSym::term(vec![1], pt(&[1]), QtScalar::one());
        assert!(x1m1.rho().equals(&x1m1));
        assert!(AlmostSym::from_symfunc(&m(&[1]))
            .rho()
            .equals(&AlmostSym::var(1)));
        let x2sq = AlmostSym::term(vec![0, 2], Partition::empty(), QtScalar::one());
        assert!(x2sq.rho().is_zero());
    }

    #[test]
    fn actions() {
        let t = QtScalar::t();
        assert!(AlmostSym::var(2)
            .act_t(1)
            .equals(&AlmostSym::var(1).scale(&t)));
        let sym = AlmostSym::from_symfunc(&m(&[2, 1]));
        assert!(sym.act_t(1).equals(&sym));
        let x1m1 = AlmostSym::term(vec![1], pt(&[1]), QtScalar::one());
        assert!(tail(1, &[1]).act_x(1).equals(&x1m1));
        let f = x1m1.add(&AlmostSym::var(2));
        assert!(f.act_t(1).act_t_inv(1).equals(&f));
    }

    #[test]
    fn equality_and_text() {
        assert!(tail(1, &[1]).equals(&AlmostSym::var(2).add(&tail(2, &[1]))));
        assert!(!AlmostSym::var(1).equals(&AlmostSym::var(2)));
        assert!(AlmostSym::zero().equals(&AlmostSym::from_terms(4, [])));
        let f = AlmostSym::term(vec![1], pt(&[1]), QtScalar::parse("1/(q-t)").unwrap())
            .add(&AlmostSym::var(1));
        let s = f.to_text();
        assert_eq!(s, "split=1; [1] ⊗ m[1]: 1/(q - t); [1] ⊗ m[]: 1/1");
        assert!(AlmostSym::parse_text(&s).unwrap().equals(&f));
        let j = serde_json::to_string(&f).unwrap();
        assert!(serde_json::from_str::<AlmostSym>(&j).unwrap().equals(&f));
    }
}
