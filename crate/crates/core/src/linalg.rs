//! Exact sparse linear algebra over `Q(q, t)`.
//!
//! Rows are inserted one at a time into a reduced row echelon form. Every
//! stored pivot row has a 1 at its pivot column and zeros at every other
//! pivot column. The pivot inside a new row is the cheapest nonzero entry,
//! which keeps fill-in and coefficient growth low on the nearly triangular
//! operator matrices met in practice.

use std::collections::BTreeMap;

use crate::qt::QtScalar;

pub type Row = Vec<(usize, QtScalar)>;

/// `a - c * b` on sorted sparse rows.
pub fn row_axpy(a: &Row, c: &QtScalar, b: &Row) -> Row {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, b[j].1.mul(c).neg()));
            j += 1;
        } else {
            let v = a[i].1.sub(&b[j].1.mul(c));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn row_from_dense(v: &[QtScalar]) -> Row {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

#[derive(Clone, Debug, Default)]
pub struct Echelon {
    ncols: usize,
    pivots: BTreeMap<usize, Row>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Echelon {
        Echelon {
            ncols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Reduces `row` against the current pivots.
    pub fn reduce(&self, row: &Row) -> Row {
        let hits: Vec<(usize, QtScalar)> = row
            .iter()
            .filter(|(c, _)| self.pivots.contains_key(c))
            .cloned()
            .collect();
        let mut r = row.clone();
        for (c, v) in hits {
            r = row_axpy(&r, &v, &self.pivots[&c]);
        }
        r
    }

    /// Inserts a row; returns whether the rank grew.
    pub fn insert(&mut self, row: Row) -> bool {
        debug_assert!(row.iter().all(|(c, _)| *c < self.ncols));
        let r = self.reduce(&row);
        if r.is_empty() {
            return false;
        }
        let (pc, pv) = r
            .iter()
            .min_by_key(|(c, v)| (v.weight(), *c))
            .cloned()
            .expect("nonempty");
        let inv = pv.inv().expect("nonzero pivot");
        let r: Row = r
            .into_iter()
            .map(|(c, v)| {
                if c == pc {
                    (c, QtScalar::one())
                } else {
                    (c, v.mul(&inv))
                }
            })
            .collect();
        for prow in self.pivots.values_mut() {
            if let Ok(k) = prow.binary_search_by_key(&pc, |(c, _)| *c) {
                let e = prow[k].1.clone();
                *prow = row_axpy(prow, &e, &r);
            }
        }
        self.pivots.insert(pc, r);
        true
    }

    /// Basis of the right kernel `{v : A v = 0}`, one vector per free column,
    /// each with a 1 at its free column.
    pub fn kernel(&self) -> Vec<Vec<QtScalar>> {
        let mut out = Vec::new();
        for f in 0..self.ncols {
            if self.pivots.contains_key(&f) {
                continue;
            }
            let mut v = vec![QtScalar::zero(); self.ncols];
            v[f] = QtScalar::one();
            for (p, row) in &self.pivots {
                if let Ok(k) = row.binary_search_by_key(&f, |(c, _)| *c) {
                    v[*p] = row[k].1.neg();
                }
            }
            out.push(v);
        }
        out
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }
}

pub fn rank(rows: impl IntoIterator<Item = Row>, ncols: usize) -> usize {
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(r);
        if e.rank() == ncols {
            break;
        }
    }
    e.rank()
}

pub fn kernel(rows: impl IntoIterator<Item = Row>, ncols: usize) -> Vec<Vec<QtScalar>> {
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(r);
        if e.rank() == ncols {
            break;
        }
    }
    e.kernel()
}

/// Solves `A x = b` for square nonsingular `A` given by rows; `None` if singular.
pub fn solve(rows: &[Row], b: &[QtScalar]) -> Option<Vec<QtScalar>> {
    let n = rows.len();
    let mut e = Echelon::new(n + 1);
    for (r, bi) in rows.iter().zip(b) {
        let mut row = r.clone();
        if !bi.is_zero() {
            row.push((n, bi.neg()));
        }
        e.insert(row);
    }
    let k = e.kernel();
    // Nonsingular iff the kernel is one vector with nonzero last entry.
    if k.len() != 1 || k[0][n].is_zero() {
        return None;
    }
    let inv = k[0][n].inv().ok()?;
    Some(k[0][..n].iter().map(|x| x.mul(&inv)).collect())
}

/// Inverse of a dense square matrix, or `None` when singular.
pub fn invert(m: &[Vec<QtScalar>]) -> Option<Vec<Vec<QtScalar>>> {
    let n = m.len();
    let mut cols: Vec<Vec<QtScalar>> = vec![Vec::with_capacity(n); n];
    for j in 0..n {
        let mut e = vec![QtScalar::zero(); n];
        e[j] = QtScalar::one();
        let rows: Vec<Row> = m.iter().map(|r| row_from_dense(r)).collect();
        let x = solve(&rows, &e)?;
        cols[j] = x;
    }
    // cols[j] is column j of the inverse.
    Some(
        (0..n)
            .map(|i| (0..n).map(|j| cols[j][i].clone()).collect())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> QtScalar {
        QtScalar::parse(x).unwrap()
    }

    #[test]
    fn kernel_of_rank_one() {
        // [[1, q], [t, q t]] has kernel spanned by (-q, 1).
        let rows = vec![
            vec![(0, s("1")), (1, s("q"))],
            vec![(0, s("t")), (1, s("q*t"))],
        ];
        let k = kernel(rows, 2);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert_eq!(v[1].mul(&s("q")).add(&v[0]), QtScalar::zero());
    }

    #[test]
    fn solve_two_by_two() {
        let rows = vec![
            vec![(0, s("1")), (1, s("1"))],
            vec![(0, s("q")), (1, s("t"))],
        ];
        let x = solve(&rows, &[s("1"), s("0")]).unwrap();
        assert_eq!(x[0], s("t/(t-q)"));
        assert_eq!(x[1], s("q/(q-t)"));
        let sing = vec![vec![(0, s("1"))], vec![(0, s("2"))]];
        assert!(solve(&sing, &[s("1"), s("1")]).is_none());
    }
}
