//! Symmetric functions over `Q(q, t)`.
//!
//! Elements carry a basis tag. Power sums are the pivot: plethysm is diagonal
//! there and products are concatenations. The Hall-Littlewood family is
//! defined by iterating Jing operators on 1, and expansions into it go through
//! the monomial basis, where it is triangular under dominance.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::comb::Partition;
use crate::linalg::invert;
use crate::qt::QtScalar;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Basis {
    M,
    P,
    H,
    E,
    HLP,
}

impl Basis {
    pub fn tag(&self) -> &'static str {
        match self {
            Basis::M => "m",
            Basis::P => "p",
            Basis::H => "h",
            Basis::E => "e",
            Basis::HLP => "HLP",
        }
    }

    pub fn from_tag(s: &str) -> Option<Basis> {
        [Basis::M, Basis::P, Basis::H, Basis::E, Basis::HLP]
            .into_iter()
            .find(|b| b.tag() == s)
    }
}

#[derive(Clone)]
pub struct SymFunc {
    basis: Basis,
    terms: BTreeMap<Partition, QtScalar>,
}

/// Canonical term order: by degree, then larger partitions (reverse lex) first.
fn term_order(a: &Partition, b: &Partition) -> std::cmp::Ordering {
    a.size()
        .cmp(&b.size())
        .then_with(|| b.parts().cmp(a.parts()))
}

impl SymFunc {
    pub fn zero(basis: Basis) -> SymFunc {
        SymFunc {
            basis,
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> SymFunc {
        SymFunc::single(Basis::M, Partition::empty(), QtScalar::one())
    }

    pub fn single(basis: Basis, lambda: Partition, c: QtScalar) -> SymFunc {
        let mut f = SymFunc::zero(basis);
        f.add_term(lambda, &c);
        f
    }

    pub fn basis_element(basis: Basis, lambda: &Partition) -> SymFunc {
        SymFunc::single(basis, lambda.clone(), QtScalar::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Partition, QtScalar)>>(
        basis: Basis,
        it: I,
    ) -> SymFunc {
        let mut f = SymFunc::zero(basis);
        for (l, c) in it {
            f.add_term(l, &c);
        }
        f
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<Partition, QtScalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, l: &Partition) -> QtScalar {
        self.terms.get(l).cloned().unwrap_or_else(QtScalar::zero)
    }

    pub fn add_term(&mut self, l: Partition, c: &QtScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&l) {
            Some(v) => {
                let s = v.add(c);
                if s.is_zero() {
                    self.terms.remove(&l);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(l, c.clone());
            }
        }
    }

    /// Degrees present.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(|l| l.size()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(|l| l.size()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &QtScalar) -> SymFunc {
        if c.is_zero() {
            return SymFunc::zero(self.basis);
        }
        SymFunc {
            basis: self.basis,
            terms: self
                .terms
                .iter()
                .map(|(l, v)| (l.clone(), v.mul(c)))
                .collect(),
        }
    }

    pub fn add(&self, o: &SymFunc) -> SymFunc {
        let o = o.to_basis(self.basis);
        let mut r = self.clone();
        for (l, c) in &o.terms {
            r.add_term(l.clone(), c);
        }
        r
    }

    pub fn sub(&self, o: &SymFunc) -> SymFunc {
        self.add(&o.scale(&QtScalar::from_int(-1)))
    }

    pub fn mul(&self, o: &SymFunc) -> SymFunc {
        let a = self.to_basis(Basis::P);
        let b = o.to_basis(Basis::P);
        let mut r = SymFunc::zero(Basis::P);
        for (la, ca) in &a.terms {
            for (lb, cb) in &b.terms {
                let l = Partition::from_unsorted(la.parts().iter().chain(lb.parts()).copied());
                r.add_term(l, &ca.mul(cb));
            }
        }
        r.to_basis(self.basis)
    }

    /// Same element expressed in `target`.
    pub fn to_basis(&self, target: Basis) -> SymFunc {
        if self.basis == target {
            return self.clone();
        }
        let m = self.to_m();
        match target {
            Basis::M => m,
            Basis::HLP => expand_in_hlp(&m).expect("Hall-Littlewood family triangular"),
            Basis::P | Basis::H | Basis::E => {
                let p = m_to_p(&m);
                if target == Basis::P {
                    p
                } else {
                    p_to_basis(&p, target)
                }
            }
        }
    }

    fn to_m(&self) -> SymFunc {
        match self.basis {
            Basis::M => self.clone(),
            Basis::P => p_to_m(self),
            Basis::H | Basis::E => p_to_m(&basis_to_p(self)),
            Basis::HLP => {
                let mut r = SymFunc::zero(Basis::M);
                for (l, c) in &self.terms {
                    for (mu, v) in &hall_littlewood_p(l).terms {
                        r.add_term(mu.clone(), &v.mul(c));
                    }
                }
                r
            }
        }
    }

    /// Value equality across bases.
    pub fn equals(&self, o: &SymFunc) -> bool {
        if self.basis == o.basis {
            return self.terms == o.terms;
        }
        self.to_m().terms == o.to_m().terms
    }

    pub fn sorted_terms(&self) -> Vec<(&Partition, &QtScalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| term_order(a.0, b.0));
        v
    }

    /// `HLP: [2]: 1/1; [1,1]: 1/(q - t)`.
    pub fn to_text(&self) -> String {
        let body: Vec<String> = self
            .sorted_terms()
            .iter()
            .map(|(l, c)| format!("{l}: {c}"))
            .collect();
        if body.is_empty() {
            format!("{}: 0", self.basis.tag())
        } else {
            format!("{}: {}", self.basis.tag(), body.join("; "))
        }
    }

    pub fn parse_text(s: &str) -> Result<SymFunc, Error> {
        let (tag, body) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("missing basis tag in {s:?}")))?;
        let basis = Basis::from_tag(tag.trim())
            .ok_or_else(|| Error::Parse(format!("unknown basis {tag:?}")))?;
        let mut f = SymFunc::zero(basis);
        let body = body.trim();
        if body == "0" {
            return Ok(f);
        }
        for part in body.split(';') {
            let (l, c) = part
                .split_once("]:")
                .ok_or_else(|| Error::Parse(format!("bad term {part:?}")))?;
            let l = Partition::parse(&format!("{}]", l.trim()))?;
            f.add_term(l, &QtScalar::parse(c.trim())?);
        }
        Ok(f)
    }
}

impl PartialEq for SymFunc {
    fn eq(&self, o: &SymFunc) -> bool {
        self.equals(o)
    }
}

impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl fmt::Debug for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

#[derive(Serialize, Deserialize)]
struct SymFuncJson {
    basis: String,
    terms: Vec<(Vec<u32>, QtScalar)>,
}

impl Serialize for SymFunc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SymFuncJson {
            basis: self.basis.tag().into(),
            terms: self
                .sorted_terms()
                .into_iter()
                .map(|(l, c)| (l.parts().to_vec(), c.clone()))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymFunc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<SymFunc, D::Error> {
        let j = SymFuncJson::deserialize(d)?;
        let basis =
            Basis::from_tag(&j.basis).ok_or_else(|| serde::de::Error::custom("unknown basis"))?;
        let mut f = SymFunc::zero(basis);
        for (l, c) in j.terms {
            f.add_term(Partition::new(l).map_err(serde::de::Error::custom)?, &c);
        }
        Ok(f)
    }
}

// ---------------------------------------------------------------------------
// Transition matrices

struct Transition {
    parts: Vec<Partition>,
    index: HashMap<Partition, usize>,
    /// Row `i`: basis element `i` in the power sums.
    to_p: Vec<Vec<QtScalar>>,
    /// Row `i`: `p_{parts[i]}` in the basis.
    from_p: Vec<Vec<QtScalar>>,
}

type TransitionCache = Mutex<HashMap<(Basis, u32), Arc<Transition>>>;

fn transition_cache() -> &'static TransitionCache {
    static C: OnceLock<TransitionCache> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Number of maps `f: parts(mu) -> rows(lambda)` with row sums equal to `lambda`;
/// this is the `m_lambda` coefficient of `p_mu`.
fn p_in_m_coeff(mu: &[u32], lambda: &[u32]) -> i64 {
    fn rec(mu: &[u32], k: usize, rem: &mut Vec<u32>) -> i64 {
        if k == mu.len() {
            return if rem.iter().all(|&r| r == 0) { 1 } else { 0 };
        }
        let mut total = 0;
        for i in 0..rem.len() {
            if rem[i] >= mu[k] {
                rem[i] -= mu[k];
                total += rec(mu, k + 1, rem);
                rem[i] += mu[k];
            }
        }
        total
    }
    rec(mu, 0, &mut lambda.to_vec())
}

fn transition(basis: Basis, d: u32) -> Arc<Transition> {
    if let Some(t) = transition_cache().lock().expect("cache").get(&(basis, d)) {
        return t.clone();
    }
    let parts = Partition::all_of_size(d);
    let index: HashMap<Partition, usize> = parts
        .iter()
        .enumerate()
        .map(|(i, l)| (l.clone(), i))
        .collect();
    let n = parts.len();
    let to_p: Vec<Vec<QtScalar>> = match basis {
        Basis::M => {
            // Invert the p -> m matrix.
            let p_in_m: Vec<Vec<QtScalar>> = parts
                .iter()
                .map(|mu| {
                    parts
                        .iter()
                        .map(|l| QtScalar::from_int(p_in_m_coeff(mu.parts(), l.parts())))
                        .collect()
                })
                .collect();
            invert(&p_in_m).expect("p -> m matrix is triangular")
        }
        Basis::P => (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            QtScalar::one()
                        } else {
                            QtScalar::zero()
                        }
                    })
                    .collect()
            })
            .collect(),
        Basis::H | Basis::E => parts
            .iter()
            .map(|l| {
                let mut acc = SymFunc::one().to_basis(Basis::P);
                for &k in l.parts() {
                    acc = acc.mul(&single_part_in_p(basis, k));
                }
                parts.iter().map(|mu| acc.coeff(mu)).collect()
            })
            .collect(),
        Basis::HLP => unreachable!("Hall-Littlewood conversions go through m"),
    };
    let from_p = invert(&to_p).expect("transition matrix invertible");
    let t = Arc::new(Transition {
        parts,
        index,
        to_p,
        from_p,
    });
    transition_cache()
        .lock()
        .expect("cache")
        .insert((basis, d), t.clone());
    t
}

/// `h_k` or `e_k` in power sums: sum over `lambda |- k` of `(+-1) p_lambda / z_lambda`.
fn single_part_in_p(basis: Basis, k: u32) -> SymFunc {
    let mut f = SymFunc::zero(Basis::P);
    for l in Partition::all_of_size(k) {
        let sign = if basis == Basis::E && (k as usize - l.len()) % 2 == 1 {
            -1
        } else {
            1
        };
        let c = QtScalar::from_int(sign)
            .div(&QtScalar::from_int(l.z() as i64))
            .expect("z nonzero");
        f.add_term(l, &c);
    }
    f
}

fn convert_with(f: &SymFunc, from: Basis, to: Basis, via_to_p: bool) -> SymFunc {
    let mut r = SymFunc::zero(to);
    for (l, c) in &f.terms {
        let key = if via_to_p { from } else { to };
        let tr = transition(key, l.size());
        let i = tr.index[l];
        let row = if via_to_p { &tr.to_p[i] } else { &tr.from_p[i] };
        for (j, v) in row.iter().enumerate() {
            if !v.is_zero() {
                r.add_term(tr.parts[j].clone(), &v.mul(c));
            }
        }
    }
    r
}

fn m_to_p(f: &SymFunc) -> SymFunc {
    convert_with(f, Basis::M, Basis::P, true)
}

fn p_to_m(f: &SymFunc) -> SymFunc {
    convert_with(f, Basis::P, Basis::M, false)
}

fn basis_to_p(f: &SymFunc) -> SymFunc {
    convert_with(f, f.basis, Basis::P, true)
}

fn p_to_basis(f: &SymFunc, target: Basis) -> SymFunc {
    convert_with(f, Basis::P, target, false)
}

/// Convenience: `m_lambda`, `p_lambda`, and so on.
pub fn m(l: &[u32]) -> SymFunc {
    SymFunc::basis_element(Basis::M, &Partition::new(l.to_vec()).expect("partition"))
}

pub fn p(l: &[u32]) -> SymFunc {
    SymFunc::basis_element(Basis::P, &Partition::new(l.to_vec()).expect("partition"))
}

pub fn h(l: &[u32]) -> SymFunc {
    SymFunc::basis_element(Basis::H, &Partition::new(l.to_vec()).expect("partition"))
}

pub fn e(l: &[u32]) -> SymFunc {
    SymFunc::basis_element(Basis::E, &Partition::new(l.to_vec()).expect("partition"))
}

// ---------------------------------------------------------------------------
// Plethysm

/// A Laurent series in `z` with symmetric-function coefficients (power sums).
#[derive(Clone, Debug, Default)]
pub struct ZSeries {
    pub coeffs: BTreeMap<i32, SymFunc>,
}

impl ZSeries {
    pub fn constant(f: SymFunc) -> ZSeries {
        let mut s = ZSeries::default();
        s.add(0, &f);
        s
    }

    fn add(&mut self, k: i32, f: &SymFunc) {
        if f.is_zero() {
            return;
        }
        let f = f.to_basis(Basis::P);
        let entry = self
            .coeffs
            .entry(k)
            .or_insert_with(|| SymFunc::zero(Basis::P));
        *entry = entry.add(&f);
        if entry.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn mul(&self, o: &ZSeries) -> ZSeries {
        let mut r = ZSeries::default();
        for (a, fa) in &self.coeffs {
            for (b, fb) in &o.coeffs {
                r.add(a + b, &fa.mul(fb));
            }
        }
        r
    }

    pub fn coeff(&self, k: i32) -> SymFunc {
        self.coeffs
            .get(&k)
            .cloned()
            .unwrap_or_else(|| SymFunc::zero(Basis::P))
    }
}

/// A plethystic alphabet `sum_k z^k (c_k + b_k X)` where `c_k`, `b_k` are
/// scalars read plethystically (`p_j[c] = c(q^j, t^j)`).
#[derive(Clone, Debug, Default)]
pub struct Alphabet {
    pub constant: BTreeMap<i32, QtScalar>,
    pub x_coeff: BTreeMap<i32, QtScalar>,
}

impl Alphabet {
    /// `c X`.
    pub fn x_times(c: QtScalar) -> Alphabet {
        Alphabet {
            constant: BTreeMap::new(),
            x_coeff: BTreeMap::from([(0, c)]),
        }
    }

    /// `X - z^{-1}`.
    pub fn x_minus_zinv() -> Alphabet {
        Alphabet {
            constant: BTreeMap::from([(-1, QtScalar::from_int(-1))]),
            x_coeff: BTreeMap::from([(0, QtScalar::one())]),
        }
    }

    /// `(1 - t) z X`.
    pub fn one_minus_t_z_x() -> Alphabet {
        Alphabet {
            constant: BTreeMap::new(),
            x_coeff: BTreeMap::from([(1, QtScalar::parse("1-t").expect("literal"))]),
        }
    }

    pub fn zero() -> Alphabet {
        Alphabet::default()
    }

    /// `p_j[A]` as a z-series.
    pub fn power_sum(&self, j: u32) -> ZSeries {
        let mut s = ZSeries::default();
        for (k, c) in &self.constant {
            s.add(
                k * j as i32,
                &SymFunc::single(Basis::P, Partition::empty(), c.dilate(j)),
            );
        }
        for (k, c) in &self.x_coeff {
            s.add(
                k * j as i32,
                &SymFunc::single(
                    Basis::P,
                    Partition::new(vec![j]).expect("part"),
                    c.dilate(j),
                ),
            );
        }
        s
    }
}

/// `f[A]` as a z-series.
pub fn plethysm(f: &SymFunc, a: &Alphabet) -> ZSeries {
    let fp = f.to_basis(Basis::P);
    let mut out = ZSeries::default();
    let mut cache: HashMap<u32, ZSeries> = HashMap::new();
    for (l, c) in &fp.terms {
        let mut acc = ZSeries::constant(SymFunc::single(Basis::P, Partition::empty(), c.clone()));
        for &k in l.parts() {
            let pk = cache.entry(k).or_insert_with(|| a.power_sum(k)).clone();
            acc = acc.mul(&pk);
        }
        for (k, g) in acc.coeffs {
            out.add(k, &g);
        }
    }
    out
}

/// Plethysm without `z`: `f[c X]`.
pub fn plethysm_scalar_x(f: &SymFunc, c: &QtScalar) -> SymFunc {
    plethysm(f, &Alphabet::x_times(c.clone())).coeff(0)
}

type HCache = Mutex<HashMap<u32, SymFunc>>;

/// `h_n[(1 - t) X]` in power sums.
fn h_one_minus_t(n: u32) -> SymFunc {
    static C: OnceLock<HCache> = OnceLock::new();
    let cache = C.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().expect("cache").get(&n) {
        return v.clone();
    }
    let mut f = SymFunc::zero(Basis::P);
    for l in Partition::all_of_size(n) {
        let mut c = QtScalar::one()
            .div(&QtScalar::from_int(l.z() as i64))
            .expect("z nonzero");
        for &k in l.parts() {
            c = c.mul(&QtScalar::one().sub(&QtScalar::monomial(1, 0, k as i32)));
        }
        f.add_term(l, &c);
    }
    cache.lock().expect("cache").insert(n, f.clone());
    f
}

/// `Exp[(1 - t) z X]` truncated at `z^N`.
pub fn plethystic_exp(order: u32) -> ZSeries {
    let mut s = ZSeries::default();
    for n in 0..=order {
        s.add(n as i32, &h_one_minus_t(n));
    }
    s
}

/// Jing operator: `B_n(F) = <z^n> F[X - z^{-1}] Exp[(1 - t) z X]`, returned in
/// the monomial basis. The series is truncated at `z^{n + deg F}`, which is
/// exact because `F[X - z^{-1}]` has no power of `z` below `-deg F`.
pub fn jing_b(n: u32, f: &SymFunc) -> SymFunc {
    let fp = f.to_basis(Basis::P);
    let mut out = SymFunc::zero(Basis::P);
    for (l, c) in &fp.terms {
        // p_l[X - z^{-1}] = prod_i (p_{l_i} - z^{-l_i}); expand over subsets.
        let parts = l.parts();
        let k = parts.len();
        for mask in 0u32..(1 << k) {
            let mut zpow = 0u32;
            let mut kept = Vec::new();
            for (i, &pi) in parts.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    zpow += pi;
                } else {
                    kept.push(pi);
                }
            }
            let sign = if mask.count_ones() % 2 == 1 { -1 } else { 1 };
            let kept = Partition::from_unsorted(kept);
            let hpart = h_one_minus_t(n + zpow);
            let factor = SymFunc::single(Basis::P, kept, c.scale_int(sign));
            out = out.add(&factor.mul(&hpart));
        }
    }
    out.to_basis(Basis::M)
}

type HlpCache = Mutex<HashMap<Partition, SymFunc>>;

/// `P_lambda = B_{lambda_1} .. B_{lambda_l}(1)`, in the monomial basis.
pub fn hall_littlewood_p(l: &Partition) -> SymFunc {
    static C: OnceLock<HlpCache> = OnceLock::new();
    let cache = C.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().expect("cache").get(l) {
        return v.clone();
    }
    let v = if l.is_empty() {
        SymFunc::one()
    } else {
        let rest = Partition::new(l.parts()[1..].to_vec()).expect("tail of a partition");
        jing_b(l.parts()[0], &hall_littlewood_p(&rest))
    };
    cache.lock().expect("cache").insert(l.clone(), v.clone());
    v
}

/// Checks that `{P_lambda : |lambda| = d}` is triangular against `m` under
/// dominance with nonzero diagonal; returns the diagonal.
pub fn hlp_triangularity(d: u32) -> Result<Vec<(Partition, QtScalar)>, Error> {
    let mut diag = Vec::new();
    for l in Partition::all_of_size(d) {
        let pl = hall_littlewood_p(&l);
        for mu in pl.terms.keys() {
            if mu != &l && !mu.dominance_less(&l) {
                return Err(Error::Singular(format!(
                    "P{l} has m{mu} outside the dominance order ideal"
                )));
            }
        }
        let c = pl.coeff(&l);
        if c.is_zero() {
            return Err(Error::Singular(format!(
                "P{l} has zero diagonal coefficient"
            )));
        }
        diag.push((l, c));
    }
    Ok(diag)
}

/// Coefficients `c_lambda` with `f = sum c_lambda P_lambda`, by triangular
/// elimination from the dominance-top partitions down.
pub fn expand_in_hlp(f: &SymFunc) -> Result<SymFunc, Error> {
    let mut rem = f.to_basis(Basis::M);
    let mut out = SymFunc::zero(Basis::HLP);
    for d in rem.degrees() {
        hlp_triangularity(d)?;
    }
    // Partitions of one degree in reverse lex order list every dominance-larger
    // partition first.
    while let Some(l) = rem
        .terms
        .keys()
        .max_by(|a, b| {
            a.size()
                .cmp(&b.size())
                .then_with(|| a.parts().cmp(b.parts()))
        })
        .cloned()
    {
        let c = rem.coeff(&l);
        let pl = hall_littlewood_p(&l);
        let k = c.div(&pl.coeff(&l))?;
        rem = rem.sub(&pl.scale(&k));
        out.add_term(l, &k);
    }
    Ok(out)
}

/// Monomial-basis split: `f[x_1 + .. + x_j + T]` as a sum of
/// `x^a * m_nu[T]`.
pub type SplitTerms = BTreeMap<(Vec<u32>, Partition), QtScalar>;

pub fn split_alphabet(f: &SymFunc, j: usize) -> SplitTerms {
    let fm = f.to_basis(Basis::M);
    let mut out = SplitTerms::new();
    for (l, c) in &fm.terms {
        for (a, nu) in split_monomial(l, j) {
            let e = out.entry((a, nu)).or_insert_with(QtScalar::zero);
            *e = e.add(c);
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Distinct exponent vectors `a` of length `j` whose nonzero entries form a
/// sub-multiset of `lambda`, paired with the remaining parts.
pub fn split_monomial(lambda: &Partition, j: usize) -> Vec<(Vec<u32>, Partition)> {
    let mut out = Vec::new();
    let mults = lambda.multiplicities();
    let mut a = vec![0u32; j];
    fn rec(
        pos: usize,
        a: &mut Vec<u32>,
        avail: &mut Vec<(u32, u32)>,
        out: &mut Vec<(Vec<u32>, Partition)>,
    ) {
        if pos == a.len() {
            let rest = Partition::from_unsorted(
                avail
                    .iter()
                    .flat_map(|&(p, m)| std::iter::repeat_n(p, m as usize)),
            );
            out.push((a.clone(), rest));
            return;
        }
        a[pos] = 0;
        rec(pos + 1, a, avail, out);
        for k in 0..avail.len() {
            if avail[k].1 > 0 {
                avail[k].1 -= 1;
                a[pos] = avail[k].0;
                rec(pos + 1, a, avail, out);
                avail[k].1 += 1;
            }
        }
        a[pos] = 0;
    }
    let mut avail = mults;
    rec(0, &mut a, &mut avail, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> QtScalar {
        QtScalar::parse(x).unwrap()
    }

    fn pt(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn classical_conversions() {
        let p11 = p(&[1, 1]).to_basis(Basis::M);
        assert!(p11.equals(&m(&[2]).add(&m(&[1, 1]).scale(&s("2")))));
        assert!(h(&[1]).equals(&m(&[1])));
        assert!(h(&[1]).equals(&p(&[1])));
        let f = e(&[2, 1]).add(&h(&[3]));
        for b in [Basis::M, Basis::P, Basis::H, Basis::E, Basis::HLP] {
            assert!(f.to_basis(b).to_basis(Basis::E).equals(&f));
        }
    }

    #[test]
    fn plethysm_examples() {
        let r = plethysm_scalar_x(&p(&[2]), &s("1-t"));
        assert!(r.equals(&p(&[2]).scale(&s("1-t^2"))));
        let r = plethysm(&p(&[1]), &Alphabet::x_minus_zinv());
        assert!(r.coeff(0).equals(&p(&[1])));
        assert!(r.coeff(-1).equals(&SymFunc::one().scale(&s("-1"))));
        let h2 = plethysm_scalar_x(&h(&[2]), &s("1-t"));
        let expect = m(&[2])
            .scale(&s("1-t"))
            .add(&m(&[1, 1]).scale(&s("(1-t)^2")));
        assert!(h2.equals(&expect));
    }

    #[test]
    fn exp_series() {
        let ex = plethystic_exp(2);
        assert!(ex.coeff(0).equals(&SymFunc::one()));
        assert!(ex.coeff(1).equals(&p(&[1]).scale(&s("1-t"))));
        let expect = m(&[2])
            .scale(&s("1-t"))
            .add(&m(&[1, 1]).scale(&s("(1-t)^2")));
        assert!(ex.coeff(2).equals(&expect));
        let zero = plethysm(&h(&[2]), &Alphabet::zero());
        assert!(zero.coeffs.is_empty());
    }

    #[test]
    fn jing_examples() {
        let b2 = jing_b(2, &SymFunc::one());
        assert!(b2.equals(
            &m(&[2])
                .scale(&s("1-t"))
                .add(&m(&[1, 1]).scale(&s("(1-t)^2")))
        ));
        assert!(jing_b(0, &SymFunc::one()).equals(&SymFunc::one()));
        assert!(jing_b(1, &p(&[1])).equals(&m(&[1, 1]).scale(&s("(1-t)*(1+t)"))));
        assert!(jing_b(0, &p(&[1])).equals(&p(&[1]).scale(&s("t"))));
    }

    #[test]
    fn hall_littlewood_examples() {
        assert!(hall_littlewood_p(&pt(&[1, 1])).equals(&m(&[1, 1]).scale(&s("(1-t)^2*(1+t)"))));
        assert!(hall_littlewood_p(&Partition::empty()).equals(&SymFunc::one()));
        let f = m(&[2])
            .scale(&s("1-t"))
            .add(&m(&[1, 1]).scale(&s("(1-t)^2")));
        let x = expand_in_hlp(&f).unwrap();
        assert_eq!(x.to_text(), "HLP: [2]: 1/1");
        let g = SymFunc::basis_element(Basis::HLP, &pt(&[1, 1]))
            .add(&SymFunc::basis_element(Basis::HLP, &pt(&[2])));
        assert!(expand_in_hlp(&g).unwrap().equals(&g));
    }

    #[test]
    fn split_examples() {
        let sp = split_alphabet(&m(&[1, 1]), 1);
        assert_eq!(sp.len(), 2);
        assert_eq!(sp[&(vec![1], pt(&[1]))], QtScalar::one());
        assert_eq!(sp[&(vec![0], pt(&[1, 1]))], QtScalar::one());
        let sp = split_alphabet(&m(&[2]), 2);
        assert_eq!(sp.len(), 3);
        assert!(sp.contains_key(&(vec![2, 0], Partition::empty())));
        assert!(sp.contains_key(&(vec![0, 2], Partition::empty())));
        assert!(sp.contains_key(&(vec![0, 0], pt(&[2]))));
    }

    #[test]
    fn text_round_trip() {
        let f = SymFunc::from_terms(
            Basis::HLP,
            [(pt(&[2]), s("1")), (pt(&[1, 1]), s("1/(q-t)"))],
        );
        assert_eq!(f.to_text(), "HLP: [2]: 1/1; [1,1]: 1/(q - t)");
        assert!(SymFunc::parse_text(&f.to_text()).unwrap().equals(&f));
        let j = serde_json::to_string(&f).unwrap();
        assert!(serde_json::from_str::<SymFunc>(&j).unwrap().equals(&f));
    }
}
