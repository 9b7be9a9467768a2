//! Limit Cherednik operators on almost-symmetric functions, the lowering
//! operators, stable-limit symmetrization and the weight basis `E~_(mu|lambda)`.
//!
//! `Y1` in `n` variables is `omega^{-1} T_{n-1}^{-1} .. T_1^{-1}`. On
//! `f` in `P(k)+`, the factors `T_1^{-1} .. T_k^{-1}` act on the polynomial
//! part, and `T_{k+1}^{-1} .. T_{n-1}^{-1}` move `x_{k+1}` through the `N =
//! n - k - 1` tail variables. The latter output is symmetric in all but the
//! last variable, so it is a table of coefficients
//! `C_N[(c, nu) -> (c', nu')]` for `y_0^c m_nu(y_1..y_N) -> m_nu'(y_0..y_{N-1}) y_N^c'`.
//! For `N` past the degree, entries with `c' > 0` have the exact shape
//! `A t^{-N} + S`, so `t^n C_N` tends to `A t^{k+1}`; `A` is read off and
//! confirmed constant over three consecutive `N`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::almostsym::AlmostSym;
use crate::comb::{binomial, partition_count, Composition, Partition};
use crate::daha::{weight_alpha_tilde, weight_at, Rep};
use crate::hhl::stable_e;
use crate::linalg::{rank, Row};
use crate::qt::{QtScalar, TVal};
use crate::symfunc::{expand_in_hlp, jing_b, Basis, SymFunc};
use crate::xpoly::XPoly;
use crate::Error;

type Table = BTreeMap<(u32, Partition), QtScalar>;
type TableKey = (usize, u32, Partition);

fn table_cache() -> &'static Mutex<HashMap<TableKey, Arc<Table>>> {
    static C: OnceLock<Mutex<HashMap<TableKey, Arc<Table>>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `T^{-1}` on `a^e0 b^e1`.
fn t_inv_pair(e0: u32, e1: u32) -> Vec<(u32, u32, QtScalar)> {
    let rep = Rep::new(2);
    let tinv = QtScalar::monomial(1, 0, -1);
    let mut out: Vec<(u32, u32, QtScalar)> = rep
        .t_monomial(1, &[e0 as i32, e1 as i32])
        .into_iter()
        .map(|(e, c)| (e[0] as u32, e[1] as u32, c.mul(&tinv)))
        .collect();
    out.push((e0, e1, QtScalar::one().sub(&tinv)));
    out
}

/// Removes one copy of each distinct part, or nothing (`j = 0`).
fn remove_one(nu: &Partition) -> Vec<(u32, Partition)> {
    let mut out = vec![(0, nu.clone())];
    for (p, _) in nu.multiplicities() {
        out.push((p, nu.remove_parts(&[p]).expect("part present")));
    }
    out
}

/// `C_N` for the input `y_0^c m_nu(y_1..y_N)`.
pub fn transfer_table(big_n: usize, c: u32, nu: &Partition) -> Arc<Table> {
    let key = (big_n, c, nu.clone());
    if let Some(t) = table_cache().lock().expect("cache").get(&key) {
        return t.clone();
    }
    let mut out = Table::new();
    if big_n == 0 {
        if nu.is_empty() {
            out.insert((c, Partition::empty()), QtScalar::one());
        }
    } else if nu.len() <= big_n {
        for (j, rest) in remove_one(nu) {
            if rest.len() > big_n - 1 {
                continue;
            }
            let prev = transfer_table(big_n - 1, c, &rest);
            for ((c1, nu1), v) in prev.iter() {
                for (e0, e1, w) in t_inv_pair(*c1, j) {
                    // Read the coefficient of m_nu''(y_0..y_{N-1}) off the
                    // monomial whose y_{N-1} exponent is the smallest part.
                    let nu2 = if e0 == 0 {
                        nu1.clone()
                    } else if nu1.len() == big_n - 1 && nu1.parts().last().is_none_or(|&m| e0 <= m)
                    {
                        nu1.with_part(e0)
                    } else {
                        continue;
                    };
                    let k = (e1, nu2);
                    let s = out
                        .get(&k)
                        .cloned()
                        .unwrap_or_else(QtScalar::zero)
                        .add(&v.mul(&w));
                    if s.is_zero() {
                        out.remove(&k);
                    } else {
                        out.insert(k, s);
                    }
                }
            }
        }
    }
    let out = Arc::new(out);
    table_cache()
        .lock()
        .expect("cache")
        .insert(key, out.clone());
    out
}

fn limit_cache() -> &'static Mutex<HashMap<(u32, Partition), Arc<Table>>> {
    static C: OnceLock<Mutex<HashMap<(u32, Partition), Arc<Table>>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `A` with `C_N = A t^{-N} + S` on the entries with `c' > 0`.
fn growth_at(big_n: usize, c: u32, nu: &Partition) -> Table {
    let cn = transfer_table(big_n, c, nu);
    let tn = QtScalar::monomial(1, 0, big_n as i32);
    let mut out = Table::new();
    let mut keys: Vec<(u32, Partition)> = cn.keys().filter(|(c2, _)| *c2 > 0).cloned().collect();
    // S collects the constant-in-N entries feeding (c', nu'); include its keys too.
    let mut s_parts: BTreeMap<(u32, Partition), QtScalar> = BTreeMap::new();
    for (j, rest) in remove_one(nu) {
        if j == 0 {
            continue;
        }
        for ((c2, nu2), v) in transfer_table(big_n, c, &rest).iter() {
            if *c2 == 0 {
                let k = (j, nu2.clone());
                let e = s_parts.entry(k).or_insert_with(QtScalar::zero);
                *e = e.add(v);
            }
        }
    }
    keys.extend(s_parts.keys().cloned());
    keys.sort();
    keys.dedup();
    for k in keys {
        let c_val = cn.get(&k).cloned().unwrap_or_else(QtScalar::zero);
        let s_val = s_parts.get(&k).cloned().unwrap_or_else(QtScalar::zero);
        let a = c_val.sub(&s_val).mul(&tn);
        if !a.is_zero() {
            out.insert(k, a);
        }
    }
    out
}

/// Limit growth table for `y_0^c m_nu`, confirmed constant on three
/// consecutive `N` past the degree.
pub fn limit_table(c: u32, nu: &Partition) -> Result<Arc<Table>, Error> {
    let key = (c, nu.clone());
    if let Some(t) = limit_cache().lock().expect("cache").get(&key) {
        return Ok(t.clone());
    }
    let start = (c + nu.size()) as usize + 2;
    let a0 = growth_at(start, c, nu);
    for big_n in start + 1..start + 3 {
        let a = growth_at(big_n, c, nu);
        if a != a0 {
            return Err(Error::NoConvergence(format!(
                "growth coefficients for y0^{c} m{nu} differ between N={start} and N={big_n}"
            )));
        }
    }
    let a0 = Arc::new(a0);
    limit_cache().lock().expect("cache").insert(key, a0.clone());
    Ok(a0)
}

/// `T_k^{-1} .. T_1^{-1} f` at split `k + 1`, where `k` is the split of `f`.
fn pre_bubble(f: &AlmostSym) -> AlmostSym {
    let k = f.split();
    let mut h = f.raise_split(k + 1);
    for i in 1..=k {
        h = h.act_t_inv(i);
    }
    h
}

/// The limit operator `Y_1` on `P_as+`.
pub fn limit_y1(f: &AlmostSym) -> Result<AlmostSym, Error> {
    let k = f.split();
    let h = pre_bubble(f);
    let tk = QtScalar::monomial(1, 0, k as i32 + 1);
    let mut out = AlmostSym::from_terms(k + 1, []);
    for ((a, nu), v) in h.terms() {
        let table = limit_table(a[k], nu)?;
        let base = v.mul(&tk);
        for ((c2, nu2), w) in table.iter() {
            let mut e = vec![*c2];
            e.extend_from_slice(&a[..k]);
            out.add_term(
                (e, nu2.clone()),
                &base.mul(w).mul(&QtScalar::monomial(1, *c2 as i32, 0)),
            );
        }
    }
    Ok(out)
}

/// `t^n rho Y_1 pi_n f` from the transfer tables, exact at finite `n`.
pub fn finite_y1(f: &AlmostSym, n: usize) -> Result<XPoly, Error> {
    let k = f.split();
    if n < k + 1 {
        return Err(Error::InvalidArgument(format!("need n > split {k}")));
    }
    let big_n = n - k - 1;
    let h = pre_bubble(f);
    let tn = QtScalar::monomial(1, 0, n as i32);
    let mut out = AlmostSym::from_terms(k + 1, []);
    for ((a, nu), v) in h.terms() {
        let table = transfer_table(big_n, a[k], nu);
        let base = v.mul(&tn);
        for ((c2, nu2), w) in table.iter() {
            if *c2 == 0 {
                continue;
            }
            let mut e = vec![*c2];
            e.extend_from_slice(&a[..k]);
            out.add_term(
                (e, nu2.clone()),
                &base.mul(w).mul(&QtScalar::monomial(1, *c2 as i32, 0)),
            );
        }
    }
    out.project_pi(n)
}

/// `t^n rho Y_1^{(n)} pi_n f` by direct evaluation in `n` variables.
pub fn truncated_y1(f: &AlmostSym, n: usize) -> Result<XPoly, Error> {
    let p = f.project_pi(n)?;
    let y = Rep::new(n).y(1, &p);
    let tn = QtScalar::monomial(1, 0, n as i32);
    Ok(XPoly::from_terms(
        n,
        y.terms()
            .iter()
            .filter(|(e, _)| e[0] > 0)
            .map(|(e, c)| (e.clone(), c.mul(&tn))),
    ))
}

#[derive(Clone, Debug, Serialize)]
pub struct TruncationRow {
    pub n: usize,
    /// Minimal t-adic valuation of `g_n - pi_n(limit)`.
    pub valuation: String,
    /// Whether the direct evaluation agrees exactly with the transfer tables.
    pub tables_agree: bool,
}

/// `limit_y1` plus direct truncations for `n0..=n_max` (raised so that at
/// least three faithful truncations run); fails unless every
/// truncation matches the tables exactly and the distance to the limit has
/// strictly increasing t-adic valuation.
pub fn limit_y1_checked(
    f: &AlmostSym,
    n0: usize,
    n_max: usize,
) -> Result<(AlmostSym, Vec<TruncationRow>), Error> {
    let lim = limit_y1(f)?;
    let mut rows = Vec::new();
    let mut prev: Option<TVal> = None;
    // Below `split + max l(lambda)` the projection kills tail terms, so those
    // truncations say nothing about the limit.
    let longest = f.terms().keys().map(|(_, l)| l.len()).max().unwrap_or(0);
    let faithful = f.split() + longest.max(1);
    for n in n0.max(faithful)..=n_max.max(faithful + 2) {
        let g = truncated_y1(f, n)?;
        let tables_agree = g == finite_y1(f, n)?;
        let diff = g.sub(&lim.project_pi(n)?);
        let v = diff
            .terms()
            .values()
            .map(|c| c.t_adic_valuation())
            .min()
            .unwrap_or(TVal::Infinite);
        rows.push(TruncationRow {
            n,
            valuation: v.to_string(),
            tables_agree,
        });
        if !tables_agree {
            return Err(Error::NoConvergence(format!(
                "direct truncation at n={n} disagrees with the transfer tables"
            )));
        }
        if let Some(p) = prev {
            if !(v > p || v == TVal::Infinite) {
                return Err(Error::NoConvergence(format!(
                    "valuation did not increase at n={n}: {p} then {v}"
                )));
            }
        }
        prev = Some(v);
    }
    Ok((lim, rows))
}

/// `Y_i` from `Y_{i+1} = t^{-1} T_i Y_i T_i`.
pub fn limit_y(i: usize, f: &AlmostSym) -> Result<AlmostSym, Error> {
    if i == 0 {
        return Err(Error::InvalidArgument("Y_i needs i >= 1".into()));
    }
    if i == 1 {
        return limit_y1(f);
    }
    let inner = limit_y(i - 1, &f.act_t(i - 1))?;
    Ok(inner.act_t(i - 1).scale(&QtScalar::monomial(1, 0, -1)))
}

/// `alpha~_mu(r) T_{r-1}..T_1 rho T_1^{-1}..T_{r-1}^{-1} E~_mu`.
pub fn eq1_path(r: usize, mu: &Composition) -> AlmostSym {
    let e = stable_e(mu);
    let mut g = e.clone();
    for i in (1..r).rev() {
        g = g.act_t_inv(i);
    }
    g = g.rho();
    for i in 1..r {
        g = g.act_t(i);
    }
    g.scale(&weight_at(&weight_alpha_tilde(mu), r))
}

/// `d_-^{(k)}`: `x^a x_k^n F[x_{k+1} + ..] -> x^a B_n(F)[x_k + ..]`.
pub fn partial_minus(k: usize, f: &AlmostSym) -> Result<AlmostSym, Error> {
    if k == 0 {
        return Err(Error::InvalidArgument("d_-^{(k)} needs k >= 1".into()));
    }
    if f.split() > k {
        return Err(Error::InvalidArgument(format!(
            "d_-^{{({k})}} needs split <= {k}, got {}",
            f.split()
        )));
    }
    let g = f.raise_split(k);
    let mut out = AlmostSym::from_terms(k - 1, []);
    let mut cache: HashMap<(u32, Partition), SymFunc> = HashMap::new();
    for ((a, lam), c) in g.terms() {
        let n = a[k - 1];
        let b = cache
            .entry((n, lam.clone()))
            .or_insert_with(|| jing_b(n, &SymFunc::basis_element(Basis::M, lam)))
            .clone();
        for (nu, v) in b.terms() {
            out.add_term((a[..k - 1].to_vec(), nu.clone()), &v.mul(c));
        }
    }
    Ok(out)
}

/// `sigma~ = d_-^{(1)} .. d_-^{(n)}` with `n` the split.
pub fn sigma_tilde(f: &AlmostSym) -> SymFunc {
    let mut g = f.clone();
    for k in (1..=f.split()).rev() {
        g = partial_minus(k, &g).expect("split decreases by one each step");
    }
    g.to_symfunc().expect("split 0 after full lowering")
}

fn a_cache() -> &'static Mutex<HashMap<Partition, SymFunc>> {
    static C: OnceLock<Mutex<HashMap<Partition, SymFunc>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `A_lambda = sigma~(E~_lambda)`, expanded in the Hall-Littlewood basis.
pub fn a_function(lambda: &Partition) -> SymFunc {
    if let Some(v) = a_cache().lock().expect("cache").get(lambda) {
        return v.clone();
    }
    let v = sigma_tilde(&stable_e(&lambda.as_composition())).to_basis(Basis::HLP);
    a_cache()
        .lock()
        .expect("cache")
        .insert(lambda.clone(), v.clone());
    v
}

/// `gamma_mu` with `sigma~(E~_mu) = gamma_mu A_{sort(mu)}`.
pub fn gamma_mu(mu: &Composition) -> Result<QtScalar, Error> {
    let s = sigma_tilde(&stable_e(mu)).to_basis(Basis::HLP);
    let a = a_function(&mu.sort());
    let lead = mu.sort();
    let g = s.coeff(&lead).div(&a.coeff(&lead))?;
    if !s.equals(&a.scale(&g)) {
        return Err(Error::IdentityFailed(format!(
            "sigma~(E~{mu}) is not proportional to A{lead}"
        )));
    }
    if g.is_zero() {
        return Err(Error::IdentityFailed(format!("gamma{mu} vanishes")));
    }
    Ok(g)
}

/// `(mu|lambda)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct IndexedPair {
    pub mu: Composition,
    pub lambda: Partition,
}

impl IndexedPair {
    pub fn new(mu: Composition, lambda: Partition) -> IndexedPair {
        IndexedPair { mu, lambda }
    }

    /// `mu` empty or with nonzero last part.
    pub fn is_admissible(&self) -> bool {
        self.mu.parts().last().is_none_or(|&m| m != 0)
    }

    pub fn star(&self) -> Composition {
        self.mu.star(self.lambda.parts())
    }

    pub fn degree(&self) -> u32 {
        self.mu.size() + self.lambda.size()
    }
}

impl std::fmt::Display for IndexedPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let m: Vec<String> = self.mu.parts().iter().map(|x| x.to_string()).collect();
        let l: Vec<String> = self.lambda.parts().iter().map(|x| x.to_string()).collect();
        let m = if m.is_empty() {
            "∅".to_string()
        } else {
            m.join(",")
        };
        let l = if l.is_empty() {
            "∅".to_string()
        } else {
            l.join(",")
        };
        write!(f, "({m}|{l})")
    }
}

/// `E~_(mu|lambda) = d_-^{(l(mu)+1)} .. d_-^{(l(mu)+l(lambda))} E~_{mu*lambda}`.
pub fn stable_e_pair(p: &IndexedPair) -> AlmostSym {
    let mut g = stable_e(&p.star());
    let l = p.mu.len();
    for k in (l + 1..=l + p.lambda.len()).rev() {
        let gk = g.raise_split(g.split().max(k));
        let gk = if gk.split() > k { gk.lower_split() } else { gk };
        g = partial_minus(k, &gk).expect("E~ of a composition of length k lies in P(k)+");
    }
    g
}

/// `(alpha~_{mu*lambda}(1), .., alpha~_{mu*lambda}(l(mu)), 0, ..)`, sparse.
pub fn pair_weight(p: &IndexedPair) -> Vec<QtScalar> {
    let w = weight_alpha_tilde(&p.star());
    (1..=p.mu.len()).map(|i| weight_at(&w, i)).collect()
}

/// Applies `Y_i` for `i = 1..=i_max` and reads off the eigenvalues; errors if
/// some `Y_i f` is not a multiple of `f`.
pub fn measured_weight(f: &AlmostSym, i_max: usize) -> Result<Vec<QtScalar>, Error> {
    if f.is_zero() {
        return Err(Error::InvalidArgument("weight of the zero element".into()));
    }
    let mut out = Vec::new();
    for i in 1..=i_max {
        let y = limit_y(i, f)?;
        let k = f.terms().keys().next().expect("nonzero");
        let y_at = y.raise_split(y.split().max(f.split()));
        let f_at = f.raise_split(y_at.split());
        // Read the eigenvalue off a term of f in the common presentation.
        let key = f_at
            .terms()
            .keys()
            .find(|kk| kk.1 == k.1 && kk.0.starts_with(&k.0))
            .cloned();
        let key = key.unwrap_or_else(|| f_at.terms().keys().next().expect("nonzero").clone());
        let ev = y_at
            .coeff(&key.0, &key.1)
            .div(&f_at.coeff(&key.0, &key.1))?;
        if !y.equals(&f.scale(&ev)) {
            return Err(Error::IdentityFailed(format!(
                "Y_{i} f is not a multiple of f"
            )));
        }
        out.push(ev);
    }
    Ok(out)
}

/// Sparse `[(i, scalar)]` rendering of a weight.
pub fn weight_sparse(w: &[QtScalar]) -> Vec<(usize, String)> {
    w.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i + 1, c.to_string()))
        .collect()
}

/// Admissible pairs with `l(mu) <= k` and degree `d`.
pub fn admissible_pairs(k: usize, d: u32) -> Vec<IndexedPair> {
    let mut out = Vec::new();
    for len in 0..=k {
        for a in 0..=d {
            let mus = if len == 0 {
                if a == 0 {
                    vec![Composition::empty()]
                } else {
                    vec![]
                }
            } else {
                Composition::all_of_size(len, a)
            };
            for mu in mus {
                for lambda in Partition::all_of_size(d - a) {
                    let p = IndexedPair::new(mu.clone(), lambda);
                    if p.is_admissible() {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// Dimension of the degree-`d` part of `P(k)+`.
pub fn dimension(k: usize, d: u32) -> u64 {
    (0..=d)
        .map(|a| {
            let monomials = if k == 0 {
                u64::from(a == 0)
            } else {
                binomial((a as usize + k - 1) as u64, (k - 1) as u64)
            };
            monomials * partition_count(d - a)
        })
        .sum()
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub k: usize,
    pub d: u32,
    pub pairs: Vec<String>,
    pub dim: u64,
    pub rank: usize,
    pub sigma_independent: bool,
    pub status: String,
    pub witness: Option<String>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

/// Count, rank and symmetrization checks for the weight basis in degree `d`.
pub fn basis_certificate(k: usize, d: u32) -> Certificate {
    let pairs = admissible_pairs(k, d);
    let dim = dimension(k, d);
    let mut columns: BTreeMap<(Vec<u32>, Partition), usize> = BTreeMap::new();
    let mut rows: Vec<Row> = Vec::new();
    for p in &pairs {
        let e = stable_e_pair(p).raise_split(k);
        let mut row: Row = Vec::new();
        for (key, c) in e.terms() {
            let n = columns.len();
            let idx = *columns.entry(key.clone()).or_insert(n);
            row.push((idx, c.clone()));
        }
        row.sort_by_key(|(i, _)| *i);
        rows.push(row);
    }
    let ncols = columns.len().max(1);
    let r = rank(rows, ncols);
    // Symmetrization: distinct sorted shapes give A-functions that are
    // unitriangular in the Hall-Littlewood basis.
    let mut shapes: Vec<Partition> = pairs.iter().map(|p| p.star().sort()).collect();
    shapes.sort();
    shapes.dedup();
    let sigma_independent = shapes.iter().all(|l| {
        let a = a_function(l);
        a.coeff(l).is_one() && a.terms().keys().all(|m| m == l || m.dominance_less(l))
    });
    let mut witness = None;
    let status = if pairs.len() as u64 != dim {
        witness = Some(format!("{} pairs for dimension {dim}", pairs.len()));
        "fail"
    } else if r != pairs.len() {
        witness = Some(format!("rank {r} of {} vectors", pairs.len()));
        "fail"
    } else if !sigma_independent {
        witness = Some("an A-function is not unitriangular".into());
        "fail"
    } else {
        "pass"
    };
    Certificate {
        k,
        d,
        pairs: pairs.iter().map(|p| p.to_string()).collect(),
        dim,
        rank: r,
        sigma_independent,
        status: status.into(),
        witness,
    }
}

/// HLP expansion used by the text renderings.
pub fn hlp(f: &SymFunc) -> Result<SymFunc, Error> {
    expand_in_hlp(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: &[u32]) -> Composition {
        Composition::new(v.to_vec())
    }

    #[test]
    fn y1_on_one_vanishes() {
        assert!(limit_y1(&AlmostSym::one()).unwrap().is_zero());
    }

    #[test]
    fn y1_eigen_2_0() {
        let e = stable_e(&c(&[2, 0]));
        let y = limit_y1(&e).unwrap();
        assert!(y.equals(&e.scale(&QtScalar::parse("q^2*t").unwrap())));
    }

    #[test]
    fn tables_match_direct_truncation() {
        let e = stable_e(&c(&[1, 1]));
        let (_, rows) = limit_y1_checked(&e, 3, 6).unwrap();
        assert!(rows.iter().all(|r| r.tables_agree));
    }
}
