//! Non-attacking fillings and the combinatorial formulas for `E_mu` and its
//! stable limit.
//!
//! Diagrams are columns: column `i` has cells `(i, 1..=mu_i)` above a basement
//! cell `(i, 0)` labelled `i`. `d(u)` is the cell directly below `u`.
//!
//! The statistics depend on a handful of orientation choices collected in
//! [`Conventions`]. [`Conventions::PINNED`] reproduces the eigen-oracle; the
//! only other matching choice in [`Conventions::all`] differs in the same-row
//! tie-break, which never fires because cells in one row attack each other.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::almostsym::AlmostSym;
use crate::comb::{Composition, Partition};
use crate::qt::QtScalar;
use crate::xpoly::XPoly;
use crate::Error;

/// Order used to break ties between equal labels inside a triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TieBreak {
    /// Rows top to bottom, each left to right.
    TopLeftFirst,
    /// Rows top to bottom, each right to left.
    TopRightFirst,
    /// Rows bottom to top, each left to right.
    BottomLeftFirst,
    /// Rows bottom to top, each right to left.
    BottomRightFirst,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conventions {
    /// `true`: cell `(i, r)` attacks `(k, r - 1)` for `k > i`, and arms look
    /// left in the same row and right in the row below. `false`: the mirror.
    pub mirrored: bool,
    /// `true`: a triple `(u, v, d(u))` with `v` in the arm of `u` is compared
    /// as a cyclic sequence in that order. `false`: by geometric orientation.
    pub cyclic_sequence: bool,
    /// A triple counts toward `coinv` when its sorted labels run in the
    /// forward (`true`) or backward direction.
    pub clockwise: bool,
    pub tie_break: TieBreak,
    /// Descent when `label(u) > label(d(u))`; otherwise when `<`.
    pub descent_greater: bool,
    /// Negative control only: exchanges arm and leg inside every cell factor.
    pub swap_arm_leg: bool,
}

impl Conventions {
    pub const PINNED: Conventions = Conventions {
        mirrored: true,
        cyclic_sequence: true,
        clockwise: true,
        tie_break: TieBreak::TopLeftFirst,
        descent_greater: true,
        swap_arm_leg: false,
    };

    /// The pinned conventions with a deliberately corrupted cell factor.
    pub const PERTURBED_GAMMA: Conventions = Conventions {
        swap_arm_leg: true,
        ..Conventions::PINNED
    };

    pub fn all() -> Vec<Conventions> {
        let mut v = Vec::new();
        for mirrored in [true, false] {
            for cyclic_sequence in [true, false] {
                for clockwise in [true, false] {
                    for tie_break in [
                        TieBreak::TopLeftFirst,
                        TieBreak::TopRightFirst,
                        TieBreak::BottomLeftFirst,
                        TieBreak::BottomRightFirst,
                    ] {
                        for descent_greater in [true, false] {
                            v.push(Conventions {
                                mirrored,
                                cyclic_sequence,
                                clockwise,
                                tie_break,
                                descent_greater,
                                swap_arm_leg: false,
                            });
                        }
                    }
                }
            }
        }
        v
    }
}

impl Default for Conventions {
    fn default() -> Conventions {
        Conventions::PINNED
    }
}

/// A cell `(column, row)`, both 1-based in column and 0-based in row.
pub type Cell = (usize, u32);

/// Column diagram of a composition with its basement.
#[derive(Clone, Debug)]
pub struct Diagram {
    mu: Vec<u32>,
    conv: Conventions,
}

impl Diagram {
    pub fn new(mu: &Composition, conv: Conventions) -> Diagram {
        Diagram {
            mu: mu.parts().to_vec(),
            conv,
        }
    }

    pub fn n(&self) -> usize {
        self.mu.len()
    }

    pub fn height(&self, i: usize) -> u32 {
        self.mu[i - 1]
    }

    pub fn contains(&self, (i, r): Cell) -> bool {
        i >= 1 && i <= self.n() && r <= self.height(i)
    }

    /// Non-basement cells, column by column.
    pub fn cells(&self) -> Vec<Cell> {
        (1..=self.n())
            .flat_map(|i| (1..=self.height(i)).map(move |r| (i, r)))
            .collect()
    }

    pub fn leg(&self, (i, r): Cell) -> u32 {
        self.height(i) - r
    }

    /// Cells `v` forming a triple with `u`: the arm of `u`.
    pub fn arm_cells(&self, (i, r): Cell) -> Vec<Cell> {
        let h = self.height(i);
        let mut out = Vec::new();
        for k in 1..=self.n() {
            let hk = self.height(k);
            let same_row_side = if self.conv.mirrored { k < i } else { k > i };
            let below_side = if self.conv.mirrored { k > i } else { k < i };
            if same_row_side && hk <= h && r <= hk {
                out.push((k, r));
            }
            if below_side && hk < h && r - 1 <= hk {
                out.push((k, r - 1));
            }
        }
        out
    }

    pub fn arm(&self, u: Cell) -> u32 {
        self.arm_cells(u).len() as u32
    }

    /// Whether two distinct cells attack each other.
    pub fn attacks(&self, (i, r): Cell, (k, s): Cell) -> bool {
        if r == s {
            return i != k;
        }
        let ((ui, _), (li, _)) = if r == s + 1 {
            ((i, r), (k, s))
        } else if s == r + 1 {
            ((k, s), (i, r))
        } else {
            return false;
        };
        if self.conv.mirrored {
            li > ui
        } else {
            li < ui
        }
    }

    fn reading_key(&self, (i, r): Cell) -> (i64, i64) {
        match self.conv.tie_break {
            TieBreak::TopLeftFirst => (-(r as i64), i as i64),
            TieBreak::TopRightFirst => (-(r as i64), -(i as i64)),
            TieBreak::BottomLeftFirst => (r as i64, i as i64),
            TieBreak::BottomRightFirst => (r as i64, -(i as i64)),
        }
    }
}

/// A labelling of the non-basement cells; `labels[i - 1][r - 1]` is the label
/// of `(i, r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filling {
    pub labels: Vec<Vec<u32>>,
}

impl Filling {
    /// `sigma-hat`: the label including the basement.
    pub fn label(&self, (i, r): Cell) -> u32 {
        if r == 0 {
            i as u32
        } else {
            self.labels[i - 1][r as usize - 1]
        }
    }

    /// Exponent of `x_j` is the number of cells labelled `j`, for `j <= n`.
    pub fn x_exponent(&self, n: usize) -> Vec<i32> {
        let mut e = vec![0; n];
        for col in &self.labels {
            for &l in col {
                if (l as usize) <= n {
                    e[l as usize - 1] += 1;
                }
            }
        }
        e
    }

    pub fn is_descent(&self, d: &Diagram, u: Cell) -> bool {
        let (a, b) = (self.label(u), self.label((u.0, u.1 - 1)));
        if d.conv.descent_greater {
            a > b
        } else {
            a < b
        }
    }

    pub fn maj(&self, d: &Diagram) -> u32 {
        d.cells()
            .into_iter()
            .filter(|&u| self.is_descent(d, u))
            .map(|u| d.leg(u) + 1)
            .sum()
    }

    /// Number of triples whose labels increase in the counted orientation.
    pub fn coinv(&self, d: &Diagram) -> u32 {
        let mut count = 0;
        for u in d.cells() {
            let z = (u.0, u.1 - 1);
            for v in d.arm_cells(u) {
                let seq = [u, v, z];
                let mut idx = [0usize, 1, 2];
                idx.sort_by_key(|&k| (self.label(seq[k]), d.reading_key(seq[k])));
                let forward = if d.conv.cyclic_sequence {
                    // Sorted order is a rotation of (u, v, z).
                    (idx[1] + 3 - idx[0]) % 3 == 1
                } else {
                    let (p1, p2, p3) = (seq[idx[0]], seq[idx[1]], seq[idx[2]]);
                    let cross = (p2.0 as i64 - p1.0 as i64) * (p3.1 as i64 - p1.1 as i64)
                        - (p2.1 as i64 - p1.1 as i64) * (p3.0 as i64 - p1.0 as i64);
                    cross < 0
                };
                if forward == d.conv.clockwise {
                    count += 1;
                }
            }
        }
        count
    }

    /// Product over cells with `label(u) != label(d(u))`; in limit mode the
    /// row-1 cells contribute `1 - t`.
    pub fn gamma_factor(&self, d: &Diagram, limit: bool) -> QtScalar {
        let one_minus_t = QtScalar::one().sub(&QtScalar::t());
        let mut acc = QtScalar::one();
        for u in d.cells() {
            if self.label(u) == self.label((u.0, u.1 - 1)) {
                continue;
            }
            if limit && u.1 == 1 {
                acc = acc.mul(&one_minus_t);
            } else {
                let (leg, arm) = if d.conv.swap_arm_leg {
                    (d.arm(u), d.leg(u))
                } else {
                    (d.leg(u), d.arm(u))
                };
                acc = acc.mul(&cell_factor(leg, arm));
            }
        }
        acc
    }

    /// `q^{-maj} t^{coinv} Gamma`.
    pub fn weight(&self, d: &Diagram, limit: bool) -> QtScalar {
        QtScalar::monomial(1, -(self.maj(d) as i32), self.coinv(d) as i32)
            .mul(&self.gamma_factor(d, limit))
    }

    /// `(col,row):label` for every cell, column by column.
    pub fn cells_string(&self, d: &Diagram) -> String {
        d.cells()
            .iter()
            .map(|&(i, r)| format!("({i},{r}):{}", self.label((i, r))))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// `(1 - t) / (1 - q^{-(leg+1)} t^{arm+1})`.
pub fn cell_factor(leg: u32, arm: u32) -> QtScalar {
    let num = QtScalar::one().sub(&QtScalar::t());
    let den = QtScalar::one().sub(&QtScalar::monomial(1, -(leg as i32 + 1), arm as i32 + 1));
    num.div(&den)
        .expect("denominator is a nonconstant polynomial")
}

/// Every non-attacking filling of `mu` with labels in `1..=alphabet`. When
/// `counts` is given, label `l` must be used exactly `counts[l]` times for
/// each key `l`.
pub fn enumerate_fillings(
    mu: &Composition,
    alphabet: u32,
    counts: Option<&BTreeMap<u32, u32>>,
    conv: Conventions,
) -> Vec<Filling> {
    let d = Diagram::new(mu, conv);
    let n = d.n();
    let top = mu.parts().iter().copied().max().unwrap_or(0);
    // Cells in row order, bottom row first, left to right.
    let order: Vec<Cell> = (1..=top)
        .flat_map(|r| {
            (1..=n)
                .filter(move |&i| mu.parts()[i - 1] >= r)
                .map(move |i| (i, r))
        })
        .collect();
    let mut labels: Vec<Vec<u32>> = mu.parts().iter().map(|&h| vec![0; h as usize]).collect();
    let mut used: BTreeMap<u32, u32> = BTreeMap::new();
    let required: u32 = counts.map(|c| c.values().sum()).unwrap_or(0);
    let mut out = Vec::new();

    struct Ctx<'a> {
        d: &'a Diagram,
        order: &'a [Cell],
        alphabet: u32,
        counts: Option<&'a BTreeMap<u32, u32>>,
        required: u32,
    }

    fn label_at(labels: &[Vec<u32>], (i, r): Cell) -> u32 {
        if r == 0 {
            i as u32
        } else {
            labels[i - 1][r as usize - 1]
        }
    }

    fn rec(
        ctx: &Ctx,
        pos: usize,
        labels: &mut Vec<Vec<u32>>,
        used: &mut BTreeMap<u32, u32>,
        placed_req: u32,
        out: &mut Vec<Filling>,
    ) {
        if let Some(c) = ctx.counts {
            // Remaining cells must be able to absorb the remaining required labels.
            if ((ctx.order.len() - pos) as u32) < ctx.required - placed_req {
                return;
            }
            if pos == ctx.order.len() {
                if c.iter()
                    .all(|(l, k)| used.get(l).copied().unwrap_or(0) == *k)
                {
                    out.push(Filling {
                        labels: labels.clone(),
                    });
                }
                return;
            }
        } else if pos == ctx.order.len() {
            out.push(Filling {
                labels: labels.clone(),
            });
            return;
        }
        let u = ctx.order[pos];
        'label: for l in 1..=ctx.alphabet {
            let mut req_inc = 0;
            if let Some(c) = ctx.counts {
                if let Some(&k) = c.get(&l) {
                    if used.get(&l).copied().unwrap_or(0) >= k {
                        continue;
                    }
                    req_inc = 1;
                }
            }
            // Earlier cells: the same row to the left and the whole row below.
            for &v in &ctx.order[..pos] {
                if (v.1 == u.1 || v.1 + 1 == u.1) && ctx.d.attacks(u, v) && label_at(labels, v) == l
                {
                    continue 'label;
                }
            }
            if u.1 == 1 {
                for k in 1..=ctx.d.n() {
                    if ctx.d.attacks(u, (k, 0)) && k as u32 == l {
                        continue 'label;
                    }
                }
            }
            labels[u.0 - 1][u.1 as usize - 1] = l;
            *used.entry(l).or_insert(0) += 1;
            rec(ctx, pos + 1, labels, used, placed_req + req_inc, out);
            *used.get_mut(&l).expect("just inserted") -= 1;
        }
        labels[u.0 - 1][u.1 as usize - 1] = 0;
    }

    let ctx = Ctx {
        d: &d,
        order: &order,
        alphabet,
        counts,
        required,
    };
    rec(&ctx, 0, &mut labels, &mut used, 0, &mut out);
    out
}

/// `E_mu` from the combinatorial formula, in `n = len(mu)` variables.
pub fn hhl_e(mu: &Composition) -> XPoly {
    hhl_e_with(mu, Conventions::PINNED)
}

pub fn hhl_e_with(mu: &Composition, conv: Conventions) -> XPoly {
    let n = mu.len();
    let d = Diagram::new(mu, conv);
    let mut out = XPoly::zero(n);
    for f in enumerate_fillings(mu, n as u32, None, conv) {
        out.add_term(f.x_exponent(n), &f.weight(&d, false));
    }
    out
}

/// The stable limit `E~_mu` at split `len(mu)`, from the limit formula.
pub fn stable_e(mu: &Composition) -> AlmostSym {
    stable_e_with(mu, Conventions::PINNED)
}

pub fn stable_e_with(mu: &Composition, conv: Conventions) -> AlmostSym {
    let n = mu.len();
    let mut out = AlmostSym::from_terms(n, []);
    for lambda in Partition::all_up_to(mu.size()) {
        let ext = mu.pad_zeros(lambda.len());
        let d = Diagram::new(&ext, conv);
        let counts: BTreeMap<u32, u32> = lambda
            .parts()
            .iter()
            .enumerate()
            .map(|(i, &p)| ((n + i + 1) as u32, p))
            .collect();
        for f in enumerate_fillings(&ext, (n + lambda.len()) as u32, Some(&counts), conv) {
            let e: Vec<u32> = f.x_exponent(n).into_iter().map(|x| x as u32).collect();
            out.add_term((e, lambda.clone()), &f.weight(&d, true));
        }
    }
    out
}

/// `Delta_m = E_{mu * 0^m} - pi_{n+m}(E~_mu)` and its minimal t-adic valuation.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessRow {
    pub m: usize,
    pub valuation: String,
    pub terms: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceWitness {
    pub mu: String,
    pub rows: Vec<WitnessRow>,
    pub weakly_increasing: bool,
}

pub fn convergence_witness(mu: &Composition, m_max: usize) -> Result<ConvergenceWitness, Error> {
    if m_max < 1 {
        return Err(Error::InvalidArgument("m_max must be at least 1".into()));
    }
    let stable = stable_e(mu);
    let mut rows = Vec::new();
    let mut vals = Vec::new();
    for m in 0..=m_max {
        let ext = mu.pad_zeros(m);
        let diff = hhl_e(&ext).sub(&stable.project_pi(ext.len())?);
        let v = diff
            .terms()
            .values()
            .map(|c| c.t_adic_valuation())
            .min()
            .unwrap_or(crate::TVal::Infinite);
        rows.push(WitnessRow {
            m,
            valuation: v.to_string(),
            terms: diff.len(),
        });
        vals.push(v);
    }
    let weakly_increasing = vals.windows(2).all(|w| w[0] <= w[1]);
    let w = ConvergenceWitness {
        mu: mu.to_string(),
        rows,
        weakly_increasing,
    };
    if !weakly_increasing {
        return Err(Error::NoConvergence(format!(
            "valuations not weakly increasing for {mu}: {:?}",
            w.rows
        )));
    }
    Ok(w)
}

/// One enumerated filling with its statistics.
#[derive(Clone, Debug, Serialize)]
pub struct FillingRow {
    pub cells: String,
    pub maj: u32,
    pub coinv: u32,
    pub gamma: String,
}

impl fmt::Display for FillingRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} maj={} coinv={} gamma={}",
            self.cells, self.maj, self.coinv, self.gamma
        )
    }
}

/// Every filling of `mu` under the pinned conventions, in enumeration order.
pub fn dump_fillings(
    mu: &Composition,
    alphabet: u32,
    counts: Option<&BTreeMap<u32, u32>>,
    limit: bool,
) -> Vec<FillingRow> {
    let conv = Conventions::PINNED;
    let d = Diagram::new(mu, conv);
    enumerate_fillings(mu, alphabet, counts, conv)
        .iter()
        .map(|f| FillingRow {
            cells: f.cells_string(&d),
            maj: f.maj(&d),
            coinv: f.coinv(&d),
            gamma: f.gamma_factor(&d, limit).to_string(),
        })
        .collect()
}

impl fmt::Display for Conventions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "mirrored={} cyclic_sequence={} forward={} tie_break={:?} descent_greater={}",
            self.mirrored,
            self.cyclic_sequence,
            self.clockwise,
            self.tie_break,
            self.descent_greater
        )?;
        if self.swap_arm_leg {
            write!(f, " swap_arm_leg")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::daha::oracle_e;

    fn c(v: &[u32]) -> Composition {
        Composition::new(v.to_vec())
    }

    #[test]
    fn swapped_cell_factor_changes_gamma() {
        let mu = c(&[2, 2]);
        assert!(!stable_e_with(&mu, Conventions::PERTURBED_GAMMA).equals(&stable_e(&mu)));
        // Row-1 cells carry a bare 1 - t in the limit, so (1) is unaffected.
        assert!(stable_e_with(&c(&[1]), Conventions::PERTURBED_GAMMA).equals(&stable_e(&c(&[1]))));
    }

    #[test]
    fn dump_row_format() {
        let rows = dump_fillings(&c(&[1, 1]), 2, None, false);
        assert_eq!(rows.len(), 1);
        assert_eq!(
            rows[0].to_string(),
            "(1,1):1 (2,1):2 maj=0 coinv=0 gamma=1/1"
        );
    }

    #[test]
    fn convention_search() {
        let cases: Vec<Composition> = [
            &[0, 1][..],
            &[1, 0],
            &[0, 2],
            &[2, 0],
            &[1, 1],
            &[0, 0, 1],
            &[0, 1, 1],
            &[1, 0, 1],
            &[0, 2, 1],
            &[1, 2],
            &[2, 1, 0],
            &[0, 3],
            &[2, 2],
        ]
        .iter()
        .map(|v| c(v))
        .collect();
        let oracle: Vec<XPoly> = cases.iter().map(|m| oracle_e(m).unwrap()).collect();
        let winners: Vec<Conventions> = Conventions::all()
            .into_iter()
            .filter(|&conv| {
                cases
                    .iter()
                    .zip(&oracle)
                    .all(|(m, o)| &hhl_e_with(m, conv) == o)
            })
            .collect();
        for w in &winners {
            eprintln!("matches oracle: {w}");
        }
        assert!(
            winners.contains(&Conventions::PINNED),
            "pinned conventions fail the oracle; winners: {winners:?}"
        );
    }
}
