//! The double affine Hecke algebra of rank `n` acting on Laurent polynomials:
//! Demazure-Lusztig operators `T_i`, the rotation `omega`, Cherednik
//! operators `Y_i`, a box-based relation checker, eigenvalues, and an
//! eigenspace oracle for `E_mu` that is independent of any filling formula.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::comb::{support_below, Composition};
use crate::linalg::{Echelon, Row};
use crate::qt::QtScalar;
use crate::xpoly::{Exp, XPoly};
use crate::Error;

/// The standard representation on `n` variables.
///
/// `factor` multiplies the divided-difference part of `T_i`; it is `1 - t`
/// in the genuine representation and 1 in the perturbed negative control.
#[derive(Clone, Debug)]
pub struct Rep {
    n: usize,
    factor: QtScalar,
}

impl Rep {
    pub fn new(n: usize) -> Rep {
        Rep {
            n,
            factor: QtScalar::parse("1-t").expect("literal"),
        }
    }

    /// A deliberately broken `T_i` that drops the `1 - t` factor.
    pub fn perturbed(n: usize) -> Rep {
        Rep {
            n,
            factor: QtScalar::one(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check(&self, f: &XPoly) {
        assert_eq!(f.nvars(), self.n, "variable count mismatch");
    }

    /// `T_i` on the monomial `x^e`.
    pub fn t_monomial(&self, i: usize, e: &[i32]) -> Vec<(Exp, QtScalar)> {
        let (a, b) = (e[i - 1], e[i]);
        let mut sw = e.to_vec();
        sw.swap(i - 1, i);
        let mut out = vec![(sw, QtScalar::one())];
        if a != b {
            let d = (a - b).abs();
            let m = a.min(b);
            let c = if a > b {
                self.factor.clone()
            } else {
                self.factor.neg()
            };
            for k in 0..d {
                let mut x = e.to_vec();
                x[i - 1] = m + k + 1;
                x[i] = m + d - 1 - k;
                out.push((x, c.clone()));
            }
        }
        out
    }

    pub fn t(&self, i: usize, f: &XPoly) -> XPoly {
        self.check(f);
        assert!(i >= 1 && i < self.n, "T_{i} needs 1 <= i < n");
        f.map_monomials(|e| self.t_monomial(i, e))
    }

    /// `T_i^{-1} = t^{-1} (T_i - 1 + t)`.
    pub fn t_inv(&self, i: usize, f: &XPoly) -> XPoly {
        self.check(f);
        assert!(i >= 1 && i < self.n, "T_{i} needs 1 <= i < n");
        let tinv = QtScalar::monomial(1, 0, -1);
        let diag = QtScalar::one().sub(&tinv);
        f.map_monomials(|e| {
            let mut v: Vec<(Exp, QtScalar)> = self
                .t_monomial(i, e)
                .into_iter()
                .map(|(x, c)| (x, c.mul(&tinv)))
                .collect();
            v.push((e.to_vec(), diag.clone()));
            v
        })
    }

    pub fn s(&self, i: usize, f: &XPoly) -> XPoly {
        self.check(f);
        f.swap(i)
    }

    pub fn x(&self, i: usize, f: &XPoly, power: i32) -> XPoly {
        self.check(f);
        let mut sh = vec![0; self.n];
        sh[i - 1] = power;
        f.shift(&sh)
    }

    /// `omega f(x_1..x_n) = f(q^{-1} x_n, x_1, .., x_{n-1})`.
    pub fn omega(&self, f: &XPoly) -> XPoly {
        self.check(f);
        let n = self.n;
        f.map_monomials(|e| {
            let mut b = vec![0; n];
            b[..n - 1].copy_from_slice(&e[1..]);
            b[n - 1] = e[0];
            vec![(b, QtScalar::monomial(1, -e[0], 0))]
        })
    }

    /// `omega^{-1} f(x_1..x_n) = f(x_2, .., x_n, q x_1)`.
    pub fn omega_inv(&self, f: &XPoly) -> XPoly {
        self.check(f);
        let n = self.n;
        f.map_monomials(|e| {
            let mut b = vec![0; n];
            b[1..].copy_from_slice(&e[..n - 1]);
            b[0] = e[n - 1];
            vec![(b, QtScalar::monomial(1, e[n - 1], 0))]
        })
    }

    /// `Y_r = t^{-(r-1)} T_{r-1}..T_1 omega^{-1} T_{n-1}^{-1}..T_r^{-1}`.
    pub fn y(&self, r: usize, f: &XPoly) -> XPoly {
        self.apply(&Word::y(self.n, r), f)
    }

    pub fn y_inv(&self, r: usize, f: &XPoly) -> XPoly {
        self.apply(&Word::y_inv(self.n, r), f)
    }

    /// Applies a word right to left.
    pub fn apply(&self, w: &Word, f: &XPoly) -> XPoly {
        let mut g = f.clone();
        for gen in w.gens.iter().rev() {
            g = match *gen {
                Gen::T(i) => self.t(i, &g),
                Gen::TInv(i) => self.t_inv(i, &g),
                Gen::X(i) => self.x(i, &g, 1),
                Gen::XInv(i) => self.x(i, &g, -1),
                Gen::Y(i) => self.y(i, &g),
                Gen::YInv(i) => self.y_inv(i, &g),
                Gen::Omega => self.omega(&g),
                Gen::OmegaInv => self.omega_inv(&g),
                Gen::S(i) => self.s(i, &g),
            };
            if g.is_zero() {
                break;
            }
        }
        g.scale(&w.scalar)
    }

    pub fn apply_combo(&self, c: &Combo, f: &XPoly) -> XPoly {
        let mut acc = XPoly::zero(self.n);
        for w in &c.0 {
            acc.add_assign(&self.apply(w, f));
        }
        acc
    }
}

/// A generator of the rank-`n` algebra acting on `P_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Gen {
    T(usize),
    TInv(usize),
    X(usize),
    XInv(usize),
    Y(usize),
    YInv(usize),
    Omega,
    OmegaInv,
    S(usize),
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::T(i) => write!(f, "T{i}"),
            Gen::TInv(i) => write!(f, "T{i}^-1"),
            Gen::X(i) => write!(f, "X{i}"),
            Gen::XInv(i) => write!(f, "X{i}^-1"),
            Gen::Y(i) => write!(f, "Y{i}"),
            Gen::YInv(i) => write!(f, "Y{i}^-1"),
            Gen::Omega => write!(f, "w"),
            Gen::OmegaInv => write!(f, "w^-1"),
            Gen::S(i) => write!(f, "s{i}"),
        }
    }
}

/// A scalar times a product of generators, applied right to left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    pub scalar: QtScalar,
    pub gens: Vec<Gen>,
}

impl Word {
    pub fn new(gens: Vec<Gen>) -> Word {
        Word {
            scalar: QtScalar::one(),
            gens,
        }
    }

    pub fn scaled(scalar: QtScalar, gens: Vec<Gen>) -> Word {
        Word { scalar, gens }
    }

    /// Defining word of `Y_r` in terms of `T`, `omega`.
    pub fn y(n: usize, r: usize) -> Word {
        let mut g: Vec<Gen> = (1..r).rev().map(Gen::T).collect();
        g.push(Gen::OmegaInv);
        g.extend((r..n).rev().map(Gen::TInv));
        Word::scaled(QtScalar::monomial(1, 0, -(r as i32 - 1)), g)
    }

    pub fn y_inv(n: usize, r: usize) -> Word {
        let mut g: Vec<Gen> = (r..n).map(Gen::T).collect();
        g.push(Gen::Omega);
        g.extend((1..r).map(Gen::TInv));
        Word::scaled(QtScalar::monomial(1, 0, r as i32 - 1), g)
    }

    /// Checks every index against the variable count.
    pub fn validate(&self, n: usize) -> Result<(), Error> {
        for g in &self.gens {
            let ok = match *g {
                Gen::T(i) | Gen::TInv(i) | Gen::S(i) => i >= 1 && i < n,
                Gen::X(i) | Gen::XInv(i) | Gen::Y(i) | Gen::YInv(i) => i >= 1 && i <= n,
                Gen::Omega | Gen::OmegaInv => n >= 1,
            };
            if !ok {
                return Err(Error::InvalidArgument(format!(
                    "generator {g} invalid for n = {n}"
                )));
            }
        }
        Ok(())
    }

    /// Parses space- or `*`-separated generators such as `T1 T2^-1 X1 w^-1 Y2 s1`,
    /// with an optional leading scalar in brackets: `[t^-1] T1`.
    pub fn parse(s: &str) -> Result<Word, Error> {
        let mut scalar = QtScalar::one();
        let mut rest = s.trim();
        if let Some(r) = rest.strip_prefix('[') {
            let end = r
                .find(']')
                .ok_or_else(|| Error::Parse("unterminated scalar".into()))?;
            scalar = QtScalar::parse(&r[..end])?;
            rest = &r[end + 1..];
        }
        let mut gens = Vec::new();
        for tok in rest
            .split(|c: char| c.is_whitespace() || c == '*')
            .filter(|x| !x.is_empty())
        {
            let (head, inv) = match tok.strip_suffix("^-1") {
                Some(h) => (h, true),
                None => (tok, false),
            };
            let bad = || Error::Parse(format!("malformed generator {tok:?}"));
            let idx = |h: &str| h[1..].parse::<usize>().map_err(|_| bad());
            let g = match head.chars().next() {
                Some('T') => {
                    let i = idx(head)?;
                    if inv {
                        Gen::TInv(i)
                    } else {
                        Gen::T(i)
                    }
                }
                Some('X') => {
                    let i = idx(head)?;
                    if inv {
                        Gen::XInv(i)
                    } else {
                        Gen::X(i)
                    }
                }
                Some('Y') => {
                    let i = idx(head)?;
                    if inv {
                        Gen::YInv(i)
                    } else {
                        Gen::Y(i)
                    }
                }
                Some('s') if !inv => Gen::S(idx(head)?),
                _ if head == "w" || head == "omega" => {
                    if inv {
                        Gen::OmegaInv
                    } else {
                        Gen::Omega
                    }
                }
                _ => return Err(bad()),
            };
            gens.push(g);
        }
        Ok(Word { scalar, gens })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.scalar.is_one() {
            write!(f, "[{}] ", self.scalar)?;
        }
        if self.gens.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A linear combination of words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Combo(pub Vec<Word>);

impl Combo {
    pub fn word(w: Word) -> Combo {
        Combo(vec![w])
    }
}

impl fmt::Display for Combo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|w| w.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Evaluates a parsed word on `f`.
pub fn compose_ops(word: &str, f: &XPoly) -> Result<XPoly, Error> {
    let w = Word::parse(word)?;
    w.validate(f.nvars())?;
    Ok(Rep::new(f.nvars()).apply(&w, f))
}

// ---------------------------------------------------------------------------
// Relations

/// The eleven relation families of the rank-`n` algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    Quadratic,
    Braid,
    TFarCommute,
    TXTwist,
    TXCommute,
    XXCommute,
    TYTwist,
    TYCommute,
    YYCommute,
    YTXExchange,
    YXCyclic,
}

impl Relation {
    pub const ALL: [Relation; 11] = [
        Relation::Quadratic,
        Relation::Braid,
        Relation::TFarCommute,
        Relation::TXTwist,
        Relation::TXCommute,
        Relation::XXCommute,
        Relation::TYTwist,
        Relation::TYCommute,
        Relation::YYCommute,
        Relation::YTXExchange,
        Relation::YXCyclic,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Relation::Quadratic => "i-quadratic",
            Relation::Braid => "i-braid",
            Relation::TFarCommute => "i-far-commute",
            Relation::TXTwist => "ii-twist",
            Relation::TXCommute => "ii-commute",
            Relation::XXCommute => "ii-xx",
            Relation::TYTwist => "iii-twist",
            Relation::TYCommute => "iii-commute",
            Relation::YYCommute => "iii-yy",
            Relation::YTXExchange => "iv",
            Relation::YXCyclic => "v",
        }
    }

    pub fn from_name(s: &str) -> Option<Relation> {
        Relation::ALL.iter().copied().find(|r| r.name() == s)
    }

    /// Concrete instances `(lhs, rhs)` for rank `n`.
    pub fn instances(&self, n: usize) -> Vec<(Combo, Combo)> {
        let w = |g: Vec<Gen>| Word::new(g);
        let ws = |c: QtScalar, g: Vec<Gen>| Word::scaled(c, g);
        let one = || Combo(vec![]);
        let t = QtScalar::t();
        let mut out = Vec::new();
        match self {
            Relation::Quadratic => {
                // (T-1)(T+t) = T^2 + (t-1) T - t
                for i in 1..n {
                    let lhs = Combo(vec![
                        w(vec![Gen::T(i), Gen::T(i)]),
                        ws(t.sub(&QtScalar::one()), vec![Gen::T(i)]),
                        ws(t.neg(), vec![]),
                    ]);
                    out.push((lhs, one()));
                }
            }
            Relation::Braid => {
                for i in 1..n.saturating_sub(1) {
                    out.push((
                        Combo::word(w(vec![Gen::T(i), Gen::T(i + 1), Gen::T(i)])),
                        Combo::word(w(vec![Gen::T(i + 1), Gen::T(i), Gen::T(i + 1)])),
                    ));
                }
            }
            Relation::TFarCommute => {
                for i in 1..n {
                    for j in i + 2..n {
                        out.push((
                            Combo::word(w(vec![Gen::T(i), Gen::T(j)])),
                            Combo::word(w(vec![Gen::T(j), Gen::T(i)])),
                        ));
                    }
                }
            }
            Relation::TXTwist => {
                for i in 1..n {
                    out.push((
                        Combo::word(w(vec![Gen::TInv(i), Gen::X(i), Gen::TInv(i)])),
                        Combo::word(ws(QtScalar::monomial(1, 0, -1), vec![Gen::X(i + 1)])),
                    ));
                }
            }
            Relation::TXCommute => {
                for i in 1..n {
                    for j in 1..=n {
                        if j != i && j != i + 1 {
                            out.push((
                                Combo::word(w(vec![Gen::T(i), Gen::X(j)])),
                                Combo::word(w(vec![Gen::X(j), Gen::T(i)])),
                            ));
                        }
                    }
                }
            }
            Relation::XXCommute => {
                for i in 1..=n {
                    for j in i + 1..=n {
                        out.push((
                            Combo::word(w(vec![Gen::X(i), Gen::X(j)])),
                            Combo::word(w(vec![Gen::X(j), Gen::X(i)])),
                        ));
                    }
                }
            }
            Relation::TYTwist => {
                for i in 1..n {
                    out.push((
                        Combo::word(w(vec![Gen::T(i), Gen::Y(i), Gen::T(i)])),
                        Combo::word(ws(t.clone(), vec![Gen::Y(i + 1)])),
                    ));
                }
            }
            Relation::TYCommute => {
                for i in 1..n {
                    for j in 1..=n {
                        if j != i && j != i + 1 {
                            out.push((
                                Combo::word(w(vec![Gen::T(i), Gen::Y(j)])),
                                Combo::word(w(vec![Gen::Y(j), Gen::T(i)])),
                            ));
                        }
                    }
                }
            }
            Relation::YYCommute => {
                for i in 1..=n {
                    for j in i + 1..=n {
                        out.push((
                            Combo::word(w(vec![Gen::Y(i), Gen::Y(j)])),
                            Combo::word(w(vec![Gen::Y(j), Gen::Y(i)])),
                        ));
                    }
                }
            }
            Relation::YTXExchange => {
                if n >= 2 {
                    out.push((
                        Combo::word(w(vec![Gen::Y(1), Gen::T(1), Gen::X(1)])),
                        Combo::word(w(vec![Gen::X(2), Gen::Y(1), Gen::T(1)])),
                    ));
                }
            }
            Relation::YXCyclic => {
                let xs: Vec<Gen> = (1..=n).map(Gen::X).collect();
                let mut l = vec![Gen::Y(1)];
                l.extend(xs.iter().copied());
                let mut r = xs.clone();
                r.push(Gen::Y(1));
                out.push((Combo::word(w(l)), Combo::word(ws(QtScalar::q(), r))));
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub relation: String,
    pub n: usize,
    #[serde(rename = "box")]
    pub exponent_box: (i32, i32),
    pub instances: usize,
    pub checks: usize,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

/// All Laurent monomials with exponents in `lo..=hi`.
pub fn monomial_box(n: usize, lo: i32, hi: i32) -> Vec<Exp> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * (hi - lo + 1).max(0) as usize);
        for e in &out {
            for a in lo..=hi {
                let mut v: Exp = e.clone();
                v.push(a);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Memoized operator applications on single monomials, shared across the
/// instances of one check run.
struct OpCache<'a> {
    rep: &'a Rep,
    memo: HashMap<(Gen, Exp), XPoly>,
}

impl<'a> OpCache<'a> {
    fn gen_monomial(&mut self, g: Gen, e: &Exp) -> XPoly {
        if let Some(v) = self.memo.get(&(g, e.clone())) {
            return v.clone();
        }
        let m = XPoly::monomial(e.clone(), QtScalar::one());
        let v = self.rep.apply(&Word::new(vec![g]), &m);
        self.memo.insert((g, e.clone()), v.clone());
        v
    }

    fn gen(&mut self, g: Gen, f: &XPoly) -> XPoly {
        let mut acc = XPoly::zero(f.nvars());
        for (e, c) in f.terms() {
            let v = self.gen_monomial(g, e);
            acc.add_scaled(&v, c);
        }
        acc
    }

    fn word(&mut self, w: &Word, f: &XPoly) -> XPoly {
        let mut g = f.clone();
        for gen in w.gens.iter().rev() {
            g = self.gen(*gen, &g);
        }
        g.scale(&w.scalar)
    }

    fn combo(&mut self, c: &Combo, f: &XPoly) -> XPoly {
        let mut acc = XPoly::zero(f.nvars());
        for w in &c.0 {
            acc.add_assign(&self.word(w, f));
        }
        acc
    }
}

/// Checks one relation family on every monomial of the box `[lo, hi]^n`.
pub fn relation_check(rep: &Rep, rel: Relation, lo: i32, hi: i32) -> RelationReport {
    let n = rep.n();
    let inst = rel.instances(n);
    let mut cache = OpCache {
        rep,
        memo: HashMap::new(),
    };
    let mut checks = 0;
    let mut counterexample = None;
    'outer: for (lhs, rhs) in &inst {
        for e in monomial_box(n, lo, hi) {
            let f = XPoly::monomial(e.clone(), QtScalar::one());
            let a = cache.combo(lhs, &f);
            let b = cache.combo(rhs, &f);
            checks += 1;
            if a != b {
                counterexample = Some(format!("{lhs} != {rhs} on x^{:?}", e));
                break 'outer;
            }
        }
    }
    RelationReport {
        relation: rel.name().into(),
        n,
        exponent_box: (lo, hi),
        instances: inst.len(),
        checks,
        status: if counterexample.is_none() {
            "pass".into()
        } else {
            "fail".into()
        },
        counterexample,
    }
}

// ---------------------------------------------------------------------------
// Weights

/// `beta_mu(i)` for 1-based `i`.
pub fn beta(mu: &[u32], i: usize) -> u32 {
    let v = mu[i - 1];
    let left = mu[..i].iter().filter(|&&m| m <= v).count();
    let right = mu[i..].iter().filter(|&&m| v > m).count();
    (left + right) as u32
}

/// Finite weight `alpha_mu^{(m)}(i) = q^{mu_i} t^{1 - beta_{mu*0^m}(i)}`, `i = 1..n+m`.
pub fn weight_alpha(mu: &Composition, m: usize) -> Vec<QtScalar> {
    let full = mu.pad_zeros(m);
    let p = full.parts();
    (1..=p.len())
        .map(|i| QtScalar::monomial(1, p[i - 1] as i32, 1 - beta(p, i) as i32))
        .collect()
}

/// Limit weight `alpha~_mu`: `t^n alpha^{(0)}(i)` where `mu_i != 0`, else 0.
/// Coordinates past `n` are zero and not stored.
pub fn weight_alpha_tilde(mu: &Composition) -> Vec<QtScalar> {
    let n = mu.len() as i32;
    let a0 = weight_alpha(mu, 0);
    a0.into_iter()
        .zip(mu.parts())
        .map(|(a, &m)| {
            if m == 0 {
                QtScalar::zero()
            } else {
                a.mul(&QtScalar::monomial(1, 0, n))
            }
        })
        .collect()
}

pub fn weight_at(w: &[QtScalar], i: usize) -> QtScalar {
    w.get(i - 1).cloned().unwrap_or_else(QtScalar::zero)
}

// ---------------------------------------------------------------------------
// Eigenspace oracle

type YMatrices = Arc<Vec<Vec<XPoly>>>;

fn y_matrix_cache() -> &'static Mutex<HashMap<(usize, u32), YMatrices>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u32), YMatrices>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `Y_i` applied to each degree-`d` monomial of `n` variables, in the order
/// of [`Composition::all_of_size`].
fn y_columns(n: usize, d: u32) -> YMatrices {
    if let Some(m) = y_matrix_cache().lock().expect("cache").get(&(n, d)) {
        return m.clone();
    }
    let rep = Rep::new(n);
    let basis = Composition::all_of_size(n, d);
    let mut cache = OpCache {
        rep: &rep,
        memo: HashMap::new(),
    };
    let mats: Vec<Vec<XPoly>> = (1..=n)
        .map(|i| {
            let w = Word::y(n, i);
            basis
                .iter()
                .map(|b| {
                    let e: Exp = b.parts().iter().map(|&x| x as i32).collect();
                    cache.word(&w, &XPoly::monomial(e, QtScalar::one()))
                })
                .collect()
        })
        .collect();
    let mats = Arc::new(mats);
    y_matrix_cache()
        .lock()
        .expect("cache")
        .insert((n, d), mats.clone());
    mats
}

/// `E_mu` as the unique joint eigenvector of `Y_1..Y_n` on the degree-`|mu|`
/// component with `x^mu` coefficient 1.
pub fn oracle_e(mu: &Composition) -> Result<XPoly, Error> {
    let n = mu.len();
    if n == 0 {
        return Ok(XPoly::one(0));
    }
    let d = mu.size();
    let basis = Composition::all_of_size(n, d);
    let index: HashMap<Exp, usize> = basis
        .iter()
        .enumerate()
        .map(|(k, b)| (b.parts().iter().map(|&x| x as i32).collect(), k))
        .collect();
    let cols = y_columns(n, d);
    let alpha = weight_alpha(mu, 0);
    let mut ech = Echelon::new(basis.len());
    for (i, mat) in cols.iter().enumerate() {
        // Row r of (Y_i - alpha_i): entries from column images.
        let mut rows: Vec<Row> = vec![Vec::new(); basis.len()];
        for (c, img) in mat.iter().enumerate() {
            for (e, v) in img.terms() {
                let r = index[e];
                rows[r].push((c, v.clone()));
            }
        }
        for (r, mut row) in rows.into_iter().enumerate() {
            match row.iter_mut().find(|(c, _)| *c == r) {
                Some(entry) => entry.1 = entry.1.sub(&alpha[i]),
                None => row.push((r, alpha[i].neg())),
            }
            row.retain(|(_, v)| !v.is_zero());
            row.sort_by_key(|(c, _)| *c);
            ech.insert(row);
        }
    }
    let ker = ech.kernel();
    if ker.len() != 1 {
        return Err(Error::EigenspaceDimension {
            mu: mu.to_string(),
            dim: ker.len(),
        });
    }
    let lead: Exp = mu.parts().iter().map(|&x| x as i32).collect();
    let k = index[&lead];
    let v = &ker[0];
    let norm = v[k]
        .inv()
        .map_err(|_| Error::IdentityFailed(format!("x^mu coefficient vanishes for {mu}")))?;
    Ok(XPoly::from_terms(
        n,
        basis
            .iter()
            .zip(v)
            .filter(|(_, c)| !c.is_zero())
            .map(|(b, c)| (b.parts().iter().map(|&x| x as i32).collect(), c.mul(&norm))),
    ))
}

/// Support test for triangularity against `mu`.
pub fn bruhat_support_ok(mu: &Composition, p: &XPoly) -> bool {
    let m: Vec<i32> = mu.parts().iter().map(|&x| x as i32).collect();
    p.terms().keys().all(|e| *e == m || support_below(e, &m))
}

/// Intertwiner `phi_i = T_i Y_i - Y_i T_i` on `P_n`, evaluated in both
/// equivalent forms; errors if they disagree.
pub fn intertwiner_phi(rep: &Rep, i: usize, f: &XPoly) -> Result<XPoly, Error> {
    let a = rep.t(i, &rep.y(i, f)).sub(&rep.y(i, &rep.t(i, f)));
    let yi = rep.y(i, f);
    let yi1 = rep.y(i + 1, f);
    let one_minus_t = QtScalar::parse("1-t")?;
    let b = rep.t(i, &yi.sub(&yi1)).add(&yi1.scale(&one_minus_t));
    if a != b {
        return Err(Error::IdentityFailed(format!(
            "intertwiner forms disagree for i = {i}"
        )));
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> QtScalar {
        QtScalar::parse(x).unwrap()
    }

    #[test]
    fn demazure_lusztig_examples() {
        let rep = Rep::new(2);
        let x1 = XPoly::var(2, 1);
        let x2 = XPoly::var(2, 2);
        assert_eq!(rep.t(1, &x1), x2.add(&x1.scale(&s("1-t"))));
        assert_eq!(rep.t(1, &x2), x1.scale(&s("t")));
        let f = XPoly::monomial(vec![1, 2], QtScalar::one());
        assert_eq!(rep.t_inv(1, &rep.t(1, &f)), f);
    }

    #[test]
    fn words() {
        let x1 = XPoly::var(2, 1);
        assert_eq!(compose_ops("s1", &x1).unwrap(), XPoly::var(2, 2));
        assert_eq!(
            compose_ops("w", &x1).unwrap(),
            XPoly::var(2, 2).scale(&s("q^-1"))
        );
        let x1x2 = XPoly::monomial(vec![1, 1], QtScalar::one());
        assert_eq!(compose_ops("w^-1 w", &x1x2).unwrap(), x1x2);
        assert!(compose_ops("T3", &x1).is_err());
        assert!(compose_ops("Q1", &x1).is_err());
    }

    #[test]
    fn cherednik_eigenvalues_small() {
        let rep = Rep::new(2);
        let one = XPoly::one(2);
        assert_eq!(rep.y(1, &one), one);
        assert_eq!(rep.y(2, &one), one.scale(&s("t^-1")));
        let x1 = XPoly::var(2, 1);
        assert_eq!(rep.y(1, &x1), x1.scale(&s("q/t")));
        assert_eq!(rep.y(2, &x1), x1);
    }

    #[test]
    fn limit_weights() {
        let w = weight_alpha_tilde(&Composition::new(vec![0, 2]));
        assert_eq!(w, vec![QtScalar::zero(), s("q^2*t")]);
        assert_eq!(
            weight_alpha_tilde(&Composition::new(vec![1, 1, 1]))[0],
            s("q*t^3")
        );
    }

    #[test]
    fn oracle_small_cases() {
        assert_eq!(
            oracle_e(&Composition::new(vec![1])).unwrap(),
            XPoly::var(1, 1)
        );
        assert_eq!(
            oracle_e(&Composition::new(vec![1, 0])).unwrap(),
            XPoly::var(2, 1)
        );
        let e01 = oracle_e(&Composition::new(vec![0, 1])).unwrap();
        let expect = XPoly::var(2, 2).add(&XPoly::var(2, 1).scale(&s("q*(1-t)/(q-t)")));
        assert_eq!(e01, expect);
        assert_eq!(
            oracle_e(&Composition::new(vec![3])).unwrap(),
            XPoly::monomial(vec![3], QtScalar::one())
        );
    }

    #[test]
    fn relations_hold_small_box() {
        let rep = Rep::new(3);
        for rel in Relation::ALL {
            let r = relation_check(&rep, rel, -1, 1);
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn perturbed_quadratic_fails() {
        let r = relation_check(&Rep::perturbed(2), Relation::Quadratic, 0, 2);
        assert!(!r.passed());
        assert!(r.counterexample.is_some());
    }
}
