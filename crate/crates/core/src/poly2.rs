//! Sparse polynomials in `Z[q, t]` and their greatest common divisors.
//!
//! Terms are kept sorted by exponent, lexicographic with `q` first, largest
//! first. The gcd removes monomial and integer content, then runs a
//! heuristic evaluation gcd; when the heuristic gives up it falls back to a
//! primitive polynomial remainder sequence over `Z[q][t]`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::int::Int;

/// Exponent pair `q^q t^t`, ordered lexicographically with `q` first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mon {
    pub q: u32,
    pub t: u32,
}

impl Mon {
    pub const ONE: Mon = Mon { q: 0, t: 0 };

    pub fn new(q: u32, t: u32) -> Mon {
        Mon { q, t }
    }

    pub fn degree(&self) -> u32 {
        self.q + self.t
    }

    fn mul(self, o: Mon) -> Mon {
        Mon {
            q: self.q + o.q,
            t: self.t + o.t,
        }
    }

    fn divides(self, o: Mon) -> bool {
        self.q <= o.q && self.t <= o.t
    }

    fn div(self, o: Mon) -> Mon {
        Mon {
            q: self.q - o.q,
            t: self.t - o.t,
        }
    }

    /// Graded lexicographic comparison with `q` before `t`.
    pub fn grlex_cmp(&self, o: &Mon) -> Ordering {
        self.degree().cmp(&o.degree()).then(self.q.cmp(&o.q))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Mon, Int)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(Int::ONE)
    }

    pub fn constant(c: Int) -> Poly {
        Poly::monomial(c, 0, 0)
    }

    pub fn monomial(c: Int, q: u32, t: u32) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(Mon::new(q, t), c)],
            }
        }
    }

    pub fn q() -> Poly {
        Poly::monomial(Int::ONE, 1, 0)
    }

    pub fn t() -> Poly {
        Poly::monomial(Int::ONE, 0, 1)
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms<I: IntoIterator<Item = (Mon, Int)>>(iter: I) -> Poly {
        let mut terms: Vec<(Mon, Int)> = iter.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Mon, Int)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { terms: out }
    }

    pub fn terms(&self) -> &[(Mon, Int)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == Mon::ONE && self.terms[0].1.is_one()
    }

    /// A single term `c q^a t^b`.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == Mon::ONE)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn constant_term(&self) -> Int {
        match self.terms.last() {
            Some((m, c)) if *m == Mon::ONE => c.clone(),
            _ => Int::ZERO,
        }
    }

    pub fn deg_q(&self) -> u32 {
        self.terms.first().map(|(m, _)| m.q).unwrap_or(0)
    }

    pub fn deg_t(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.t).max().unwrap_or(0)
    }

    pub fn min_q(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.q).min().unwrap_or(0)
    }

    /// Lowest power of `t` present; the t-adic valuation of a nonzero polynomial.
    pub fn min_t(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.t).min().unwrap_or(0)
    }

    /// Leading term under graded lex with `q` before `t`.
    pub fn grlex_leading(&self) -> Option<&(Mon, Int)> {
        self.terms.iter().max_by(|a, b| a.0.grlex_cmp(&b.0))
    }

    pub fn content(&self) -> Int {
        let mut g = Int::ZERO;
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms
            .iter()
            .map(|(_, c)| c.to_big().abs())
            .max()
            .unwrap_or_default()
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        self.merge(o, false)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.merge(o, true)
    }

    fn merge(&self, o: &Poly, negate: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &o.terms;
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Less
            } else if j == b.len() {
                Ordering::Greater
            } else {
                a[i].0.cmp(&b[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly { terms: out }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return o.mul_term(*m, c);
        }
        if o.terms.len() == 1 {
            let (m, c) = &o.terms[0];
            return self.mul_term(*m, c);
        }
        let mut prods = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                prods.push((ma.mul(*mb), ca * cb));
            }
        }
        Poly::from_terms(prods)
    }

    pub fn mul_term(&self, m: Mon, c: &Int) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(tm, tc)| (tm.mul(m), tc * c))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Int) -> Poly {
        self.mul_term(Mon::ONE, c)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Divides every exponent by the monomial `m`; `m` must divide every term.
    fn div_monomial(&self, m: Mon) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(tm, c)| (tm.div(m), c.clone()))
                .collect(),
        }
    }

    fn div_int(&self, c: &Int) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, tc)| (*m, tc.div_exact(c)))
                .collect(),
        }
    }

    /// Substitutes `q -> q^k`, `t -> t^k`.
    pub fn dilate(&self, k: u32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Mon::new(m.q * k, m.t * k), c.clone()))
                .collect(),
        }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if d.terms.len() == 1 {
            let (dm, dc) = &d.terms[0];
            let mut out = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                if !dm.divides(*m) {
                    return None;
                }
                out.push((m.div(*dm), c.checked_div_exact(dc)?));
            }
            return Some(Poly { terms: out });
        }
        let (dq, dt) = (d.deg_q(), d.deg_t());
        let (aq, at) = (self.deg_q(), self.deg_t());
        if dq > aq || dt > at {
            return None;
        }
        let max_q = aq - dq;
        let max_t = at - dt;
        let (lm, lc) = d.terms[0].clone();
        let mut rem = self.clone();
        let mut quot: Vec<(Mon, Int)> = Vec::new();
        while let Some((rm, rc)) = rem.terms.first().cloned() {
            if !lm.divides(rm) {
                return None;
            }
            let qm = rm.div(lm);
            if qm.q > max_q || qm.t > max_t {
                return None;
            }
            let qc = rc.checked_div_exact(&lc)?;
            rem = rem.sub(&d.mul_term(qm, &qc));
            quot.push((qm, qc));
        }
        Some(Poly { terms: quot })
    }

    /// Value at `q = xi`, as a dense polynomial in `t` (index = degree).
    fn eval_q(&self, xi: &BigInt) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.deg_t() as usize + 1];
        let mut powers: Vec<BigInt> = vec![BigInt::from(1)];
        for _ in 0..self.deg_q() {
            let next = powers.last().unwrap() * xi;
            powers.push(next);
        }
        for (m, c) in &self.terms {
            out[m.t as usize] += c.to_big() * &powers[m.q as usize];
        }
        trim(&mut out);
        out
    }

    /// Sign normalization: leading coefficient under graded lex made positive.
    pub fn normalize_sign(self) -> Poly {
        match self.grlex_leading() {
            Some((_, c)) if c.is_negative() => self.neg(),
            _ => self,
        }
    }

    /// Greatest common divisor, normalized to positive graded-lex leading
    /// coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &Poly) -> Poly {
        if self.is_zero() {
            return o.clone().normalize_sign();
        }
        if o.is_zero() {
            return self.clone().normalize_sign();
        }
        let ma = Mon::new(self.min_q(), self.min_t());
        let mb = Mon::new(o.min_q(), o.min_t());
        let gm = Mon::new(ma.q.min(mb.q), ma.t.min(mb.t));
        let ca = self.content();
        let cb = o.content();
        let gi = ca.gcd(&cb);
        let mono = Poly::monomial(gi, gm.q, gm.t);
        if self.terms.len() == 1 || o.terms.len() == 1 {
            return mono;
        }
        let a = self.div_monomial(ma).div_int(&ca).normalize_sign();
        let b = o.div_monomial(mb).div_int(&cb).normalize_sign();
        if a.is_constant() || b.is_constant() {
            return mono;
        }
        let core = if a == b {
            a
        } else if let Some(g) = quick_divides(&a, &b) {
            g
        } else {
            match heuristic_gcd2(&a, &b) {
                Some(g) => g,
                None => prs_gcd2(&a, &b),
            }
        };
        mono.mul(&core).normalize_sign()
    }
}

fn quick_divides(a: &Poly, b: &Poly) -> Option<Poly> {
    if b.deg_q() <= a.deg_q() && b.deg_t() <= a.deg_t() && b.div_exact_cheap(a) {
        return Some(b.clone());
    }
    if a.deg_q() <= b.deg_q() && a.deg_t() <= b.deg_t() && a.div_exact_cheap(b) {
        return Some(a.clone());
    }
    None
}

impl Poly {
    /// Whether `self` divides `other`, bailing out early on size grounds.
    fn div_exact_cheap(&self, other: &Poly) -> bool {
        if self.terms.len() > other.terms.len() * 4 + 4 {
            return false;
        }
        other.div_exact(self).is_some()
    }
}

fn trim(v: &mut Vec<BigInt>) {
    while v.len() > 1 && v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

fn trim_int(v: &mut Vec<Int>) {
    while v.len() > 1 && v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

// ---------------------------------------------------------------------------
// Heuristic gcd (evaluation at large integers, xi-adic reconstruction)

const HEU_TRIES: usize = 6;
const HEU_MAX_BITS: u64 = 6000;

fn next_xi(xi: &BigInt) -> BigInt {
    xi * BigInt::from(73794) / BigInt::from(27011)
}

fn bound_xi(na: &BigInt, nb: &BigInt) -> BigInt {
    let m = if na < nb { na } else { nb };
    m * 2 + 29
}

/// Symmetric xi-adic digits of `g`, lowest first.
fn xi_adic(g: &BigInt, xi: &BigInt) -> Vec<BigInt> {
    let mut digits = Vec::new();
    let mut g = g.clone();
    let half: BigInt = xi / 2;
    while !g.is_zero() {
        let mut r = g.mod_floor(xi);
        if r > half {
            r -= xi;
        }
        g = (&g - &r) / xi;
        digits.push(r);
    }
    digits
}

fn uni_eval(p: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn uni_norm(p: &[BigInt]) -> BigInt {
    p.iter().map(|c| c.abs()).max().unwrap_or_default()
}

fn uni_content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn uni_is_zero(p: &[BigInt]) -> bool {
    p.iter().all(|c| c.is_zero())
}

/// Exact division in `Z[t]`.
fn uni_div_exact(a: &[BigInt], d: &[BigInt]) -> Option<Vec<BigInt>> {
    if uni_is_zero(a) {
        return Some(vec![BigInt::zero()]);
    }
    let da = a.len() - 1;
    let dd = d.len() - 1;
    if dd > da {
        return None;
    }
    let mut rem = a.to_vec();
    let lc = &d[dd];
    let mut quot = vec![BigInt::zero(); da - dd + 1];
    for k in (0..=da - dd).rev() {
        let c = &rem[k + dd];
        if c.is_zero() {
            continue;
        }
        let (qc, r) = c.div_rem(lc);
        if !r.is_zero() {
            return None;
        }
        for (i, dc) in d.iter().enumerate() {
            rem[k + i] -= &qc * dc;
        }
        quot[k] = qc;
    }
    if rem.iter().all(|c| c.is_zero()) {
        Some(quot)
    } else {
        None
    }
}

/// Full gcd (content times primitive gcd) in `Z[t]`, positive leading coefficient.
fn uni_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if uni_is_zero(a) {
        return uni_normalize(b.to_vec());
    }
    if uni_is_zero(b) {
        return uni_normalize(a.to_vec());
    }
    let ca = uni_content(a);
    let cb = uni_content(b);
    let c = ca.gcd(&cb);
    let pa: Vec<BigInt> = a.iter().map(|x| x / &ca).collect();
    let pb: Vec<BigInt> = b.iter().map(|x| x / &cb).collect();
    let g = if pa.len() == 1 || pb.len() == 1 {
        vec![BigInt::from(1)]
    } else {
        uni_heuristic(&pa, &pb).unwrap_or_else(|| uni_prs(&pa, &pb))
    };
    uni_normalize(g.into_iter().map(|x| x * &c).collect())
}

fn uni_normalize(mut p: Vec<BigInt>) -> Vec<BigInt> {
    trim(&mut p);
    if p.last().map(|c| c.is_negative()).unwrap_or(false) {
        for c in p.iter_mut() {
            *c = -&*c;
        }
    }
    p
}

fn uni_primitive(p: Vec<BigInt>) -> Vec<BigInt> {
    let c = uni_content(&p);
    if c.is_zero() {
        return p;
    }
    uni_normalize(p.into_iter().map(|x| x / &c).collect())
}

fn uni_heuristic(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut xi = bound_xi(&uni_norm(a), &uni_norm(b));
    let maxdeg = (a.len().max(b.len()) - 1) as u64;
    for _ in 0..HEU_TRIES {
        if xi.bits() * maxdeg > HEU_MAX_BITS {
            return None;
        }
        let ga = uni_eval(a, &xi);
        let gb = uni_eval(b, &xi);
        let gamma = ga.gcd(&gb);
        if !gamma.is_zero() {
            let mut g = xi_adic(&gamma, &xi);
            if g.is_empty() {
                g.push(BigInt::zero());
            }
            let g = uni_primitive(g);
            if g.len() > 1 || !g[0].is_zero() {
                if uni_div_exact(a, &g).is_some() && uni_div_exact(b, &g).is_some() {
                    return Some(g);
                }
            }
        }
        xi = next_xi(&xi);
    }
    None
}

fn uni_prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lc = &b[db];
    while r.len() > db && !uni_is_zero(&r) {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lc;
        }
        for (i, bc) in b.iter().enumerate() {
            r[dr - db + i] -= &lr * bc;
        }
        r.pop();
        trim(&mut r);
    }
    r
}

fn uni_prs(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (mut x, mut y) = if a.len() >= b.len() {
        (a.to_vec(), b.to_vec())
    } else {
        (b.to_vec(), a.to_vec())
    };
    while !uni_is_zero(&y) {
        let r = uni_prem(&x, &y);
        x = y;
        y = if uni_is_zero(&r) {
            vec![BigInt::zero()]
        } else {
            uni_primitive(r)
        };
    }
    uni_primitive(x)
}

/// Heuristic gcd of two primitive polynomials in `Z[q, t]` with no monomial content.
fn heuristic_gcd2(a: &Poly, b: &Poly) -> Option<Poly> {
    let mut xi = bound_xi(&a.max_abs_coeff(), &b.max_abs_coeff());
    let maxdeg = a.deg_q().max(b.deg_q()) as u64;
    if maxdeg == 0 {
        // Both are polynomials in t alone.
        let ua = to_uni_t(a);
        let ub = to_uni_t(b);
        return Some(from_uni_t(&uni_gcd(&ua, &ub)));
    }
    for _ in 0..HEU_TRIES {
        if xi.bits() * maxdeg > HEU_MAX_BITS {
            return None;
        }
        let ea = a.eval_q(&xi);
        let eb = b.eval_q(&xi);
        let gamma = uni_gcd(&ea, &eb);
        if !uni_is_zero(&gamma) {
            let mut terms = Vec::new();
            for (tdeg, c) in gamma.iter().enumerate() {
                for (qdeg, d) in xi_adic(c, &xi).into_iter().enumerate() {
                    if !d.is_zero() {
                        terms.push((Mon::new(qdeg as u32, tdeg as u32), Int::from(d)));
                    }
                }
            }
            let g = Poly::from_terms(terms);
            if !g.is_zero() {
                let c = g.content();
                let g = g.div_int(&c).normalize_sign();
                if a.div_exact(&g).is_some() && b.div_exact(&g).is_some() {
                    return Some(g);
                }
            }
        }
        xi = next_xi(&xi);
    }
    None
}

fn to_uni_t(p: &Poly) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); p.deg_t() as usize + 1];
    for (m, c) in &p.terms {
        out[m.t as usize] += c.to_big();
    }
    out
}

fn from_uni_t(v: &[BigInt]) -> Poly {
    Poly::from_terms(
        v.iter()
            .enumerate()
            .map(|(i, c)| (Mon::new(0, i as u32), Int::from(c.clone()))),
    )
}

// ---------------------------------------------------------------------------
// Primitive remainder sequence over Z[q][t] (guaranteed fallback)

type QPoly = Vec<Int>; // dense in q, index = degree

fn qpoly_is_zero(p: &QPoly) -> bool {
    p.iter().all(|c| c.is_zero())
}

fn qpoly_mul(a: &QPoly, b: &QPoly) -> QPoly {
    if qpoly_is_zero(a) || qpoly_is_zero(b) {
        return vec![Int::ZERO];
    }
    let mut out = vec![Int::ZERO; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    trim_int(&mut out);
    out
}

fn qpoly_sub(a: &QPoly, b: &QPoly) -> QPoly {
    let n = a.len().max(b.len());
    let mut out: QPoly = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            let y = b.get(i).cloned().unwrap_or_default();
            &x - &y
        })
        .collect();
    trim_int(&mut out);
    out
}

fn qpoly_to_big(a: &QPoly) -> Vec<BigInt> {
    a.iter().map(|c| c.to_big()).collect()
}

fn qpoly_from_big(a: Vec<BigInt>) -> QPoly {
    let mut out: QPoly = a.into_iter().map(Int::from).collect();
    trim_int(&mut out);
    out
}

fn qpoly_gcd(a: &QPoly, b: &QPoly) -> QPoly {
    qpoly_from_big(uni_gcd(&qpoly_to_big(a), &qpoly_to_big(b)))
}

fn qpoly_div_exact(a: &QPoly, d: &QPoly) -> QPoly {
    qpoly_from_big(
        uni_div_exact(&qpoly_to_big(a), &qpoly_to_big(d)).expect("exact division in Z[q]"),
    )
}

/// Dense representation in `t` with `Z[q]` coefficients.
fn to_qt(p: &Poly) -> Vec<QPoly> {
    let mut out = vec![vec![Int::ZERO]; p.deg_t() as usize + 1];
    for (m, c) in &p.terms {
        let slot = &mut out[m.t as usize];
        if slot.len() <= m.q as usize {
            slot.resize(m.q as usize + 1, Int::ZERO);
        }
        slot[m.q as usize] += c;
    }
    out
}

fn from_qt(v: &[QPoly]) -> Poly {
    let mut terms = Vec::new();
    for (tdeg, cq) in v.iter().enumerate() {
        for (qdeg, c) in cq.iter().enumerate() {
            terms.push((Mon::new(qdeg as u32, tdeg as u32), c.clone()));
        }
    }
    Poly::from_terms(terms)
}

fn qt_trim(v: &mut Vec<QPoly>) {
    while v.len() > 1 && v.last().map(qpoly_is_zero).unwrap_or(false) {
        v.pop();
    }
}

fn qt_is_zero(v: &[QPoly]) -> bool {
    v.iter().all(qpoly_is_zero)
}

fn qt_content(v: &[QPoly]) -> QPoly {
    let mut g = vec![Int::ZERO];
    for c in v {
        g = qpoly_gcd(&g, c);
    }
    g
}

fn qt_primitive(v: Vec<QPoly>) -> Vec<QPoly> {
    let c = qt_content(&v);
    if qpoly_is_zero(&c) {
        return v;
    }
    v.iter()
        .map(|x| {
            if qpoly_is_zero(x) {
                vec![Int::ZERO]
            } else {
                qpoly_div_exact(x, &c)
            }
        })
        .collect()
}

fn qt_prem(a: &[QPoly], b: &[QPoly]) -> Vec<QPoly> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lc = b[db].clone();
    while r.len() > db && !qt_is_zero(&r) {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c = qpoly_mul(c, &lc);
        }
        for (i, bc) in b.iter().enumerate() {
            let idx = dr - db + i;
            r[idx] = qpoly_sub(&r[idx], &qpoly_mul(&lr, bc));
        }
        r.pop();
        qt_trim(&mut r);
    }
    r
}

/// Gcd of two primitive polynomials via content/primitive-part recursion.
fn prs_gcd2(a: &Poly, b: &Poly) -> Poly {
    let mut x = to_qt(a);
    let mut y = to_qt(b);
    let c = qpoly_gcd(&qt_content(&x), &qt_content(&y));
    x = qt_primitive(x);
    y = qt_primitive(y);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !qt_is_zero(&y) {
        if y.len() == 1 {
            // y is a nonzero constant in t: the primitive gcd is trivial.
            x = vec![vec![Int::ONE]];
            break;
        }
        let r = qt_prem(&x, &y);
        x = y;
        y = if qt_is_zero(&r) {
            vec![vec![Int::ZERO]]
        } else {
            qt_primitive(r)
        };
    }
    let g = from_qt(&qt_primitive(x));
    let content = from_qt(&[c]);
    let g = g.mul(&content);
    let k = g.content();
    g.div_int(&k).normalize_sign()
}

// ---------------------------------------------------------------------------

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Poly) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Poly {
    fn cmp(&self, other: &Poly) -> Ordering {
        self.terms.len().cmp(&other.terms.len()).then_with(|| {
            for (a, b) in self.terms.iter().zip(other.terms.iter()) {
                let c = a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1));
                if c != Ordering::Equal {
                    return c;
                }
            }
            Ordering::Equal
        })
    }
}

fn write_mon(f: &mut fmt::Formatter<'_>, m: Mon) -> fmt::Result {
    let mut first = true;
    for (name, e) in [("q", m.q), ("t", m.t)] {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "{name}")?;
        } else {
            write!(f, "{name}^{e}")?;
        }
    }
    Ok(())
}

/// Canonical text: terms in ascending graded-lex order (`q` before `t` within a
/// degree), e.g. `1 - t`, `q - t`, `2*q^2*t`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut sorted: Vec<&(Mon, Int)> = self.terms.iter().collect();
        sorted.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then(b.0.q.cmp(&a.0.q)));
        for (i, (m, c)) in sorted.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if *m == Mon::ONE {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write_mon(f, *m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// Evaluates `p` at integer points; test helper for checking identities.
pub fn eval_at(p: &Poly, q: i64, t: i64) -> BigInt {
    let mut acc = BigInt::zero();
    for (m, c) in p.terms() {
        acc += c.to_big() * BigInt::from(q).pow(m.q) * BigInt::from(t).pow(m.t);
    }
    acc
}

#[allow(dead_code)]
fn to_i64(b: &BigInt) -> Option<i64> {
    b.to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, u32, u32)]) -> Poly {
        Poly::from_terms(
            terms
                .iter()
                .map(|&(c, q, t)| (Mon::new(q, t), Int::from(c))),
        )
    }

    #[test]
    fn gcd_of_products() {
        let f = p(&[(1, 0, 0), (-1, 0, 1)]); // 1 - t
        let g = p(&[(1, 1, 0), (-1, 0, 1)]); // q - t
        let h = p(&[(1, 0, 0), (1, 1, 1)]); // 1 + qt
        let a = f.mul(&g).mul(&g);
        let b = g.mul(&h).mul(&f).scale(&Int::from(6));
        let expect = f.mul(&g).normalize_sign();
        assert_eq!(a.gcd(&b), expect);
        assert_eq!(prs_gcd2(&a, &b.div_int(&Int::from(6))), expect);
    }

    #[test]
    fn gcd_with_monomial_content() {
        let a = p(&[(2, 2, 1), (4, 1, 3)]); // 2q^2 t + 4 q t^3
        let b = p(&[(6, 1, 2)]);
        assert_eq!(a.gcd(&b), p(&[(2, 1, 1)]));
    }

    #[test]
    fn exact_division() {
        let f = p(&[(1, 0, 0), (-1, 0, 1)]);
        let g = p(&[(1, 0, 0), (1, 0, 1)]);
        let prod = f.mul(&g);
        assert_eq!(prod.div_exact(&g), Some(f.clone()));
        assert_eq!(prod.div_exact(&p(&[(1, 1, 0), (-1, 0, 1)])), None);
    }

    #[test]
    fn display_is_ascending_grlex() {
        assert_eq!(p(&[(1, 0, 0), (-1, 0, 1)]).to_string(), "1 - t");
        assert_eq!(p(&[(1, 1, 0), (-1, 0, 1)]).to_string(), "q - t");
        assert_eq!(p(&[(-2, 2, 1), (3, 0, 0)]).to_string(), "3 - 2*q^2*t");
    }

    #[test]
    fn prs_agrees_with_heuristic() {
        let a = p(&[(1, 3, 0), (-2, 1, 2), (5, 0, 1), (1, 0, 0)]);
        let b = p(&[(1, 0, 2), (-1, 2, 0), (3, 1, 1)]);
        let c = p(&[(7, 1, 1), (-1, 0, 0), (2, 0, 3)]);
        let x = a.mul(&c);
        let y = b.mul(&c);
        let h = heuristic_gcd2(&x, &y).unwrap();
        assert_eq!(h, prs_gcd2(&x, &y));
        assert_eq!(h, c.normalize_sign());
    }
}
