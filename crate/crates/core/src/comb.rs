//! Compositions, partitions and the orders on them.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::Error;

/// Finite sequence of nonnegative integers, possibly empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Composition(pub Vec<u32>);

/// Weakly decreasing sequence of positive integers, possibly empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Partition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Composition {
        Composition(parts)
    }

    pub fn empty() -> Composition {
        Composition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Concatenation `mu * beta`.
    pub fn star(&self, other: &[u32]) -> Composition {
        let mut v = self.0.clone();
        v.extend_from_slice(other);
        Composition(v)
    }

    pub fn pad_zeros(&self, m: usize) -> Composition {
        self.star(&vec![0; m])
    }

    /// Nonzero parts in weakly decreasing order.
    pub fn sort(&self) -> Partition {
        Partition::from_unsorted(self.0.iter().copied())
    }

    /// Swaps positions `i`, `i+1` (1-based).
    pub fn s(&self, i: usize) -> Composition {
        let mut v = self.0.clone();
        v.swap(i - 1, i);
        Composition(v)
    }

    /// Drops trailing zeros.
    pub fn trim(&self) -> Composition {
        let mut v = self.0.clone();
        while v.last() == Some(&0) {
            v.pop();
        }
        Composition(v)
    }

    pub fn is_partition(&self) -> bool {
        self.0.iter().all(|&p| p > 0) && self.0.windows(2).all(|w| w[0] >= w[1])
    }

    /// All compositions of `d` with exactly `n` parts, lexicographically decreasing.
    pub fn all_of_size(n: usize, d: u32) -> Vec<Composition> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        fn rec(n: usize, d: u32, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
            if cur.len() + 1 == n {
                cur.push(d);
                out.push(Composition(cur.clone()));
                cur.pop();
                return;
            }
            for a in (0..=d).rev() {
                cur.push(a);
                rec(n, d - a, cur, out);
                cur.pop();
            }
        }
        if n == 0 {
            if d == 0 {
                out.push(Composition::empty());
            }
            return out;
        }
        rec(n, d, &mut cur, &mut out);
        out
    }

    /// Parses `"empty"` or a comma-separated list.
    pub fn parse(s: &str) -> Result<Composition, Error> {
        let s = s.trim();
        let s = s
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .unwrap_or(s);
        let s = s
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .unwrap_or(s);
        let s = s.trim();
        if s.is_empty() || s == "empty" {
            return Ok(Composition::empty());
        }
        s.split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad composition part {p:?}")))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Composition)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Composition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Composition, Error> {
        Composition::parse(s)
    }
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Partition, Error> {
        let ok = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1]);
        if ok {
            Ok(Partition(parts))
        } else {
            Err(Error::InvalidArgument(format!(
                "{parts:?} is not a partition"
            )))
        }
    }

    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    pub fn from_unsorted<I: IntoIterator<Item = u32>>(it: I) -> Partition {
        let mut v: Vec<u32> = it.into_iter().filter(|&p| p > 0).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition(v)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn as_composition(&self) -> Composition {
        Composition(self.0.clone())
    }

    /// `(part, multiplicity)` pairs, largest part first.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// `z_lambda = prod_i i^{m_i} m_i!`.
    pub fn z(&self) -> u64 {
        self.multiplicities()
            .iter()
            .map(|&(p, m)| (p as u64).pow(m) * (1..=m as u64).product::<u64>())
            .product()
    }

    /// Removes one copy of each part listed in `used`; `None` if not a sub-multiset.
    pub fn remove_parts(&self, used: &[u32]) -> Option<Partition> {
        let mut v = self.0.clone();
        for u in used {
            let pos = v.iter().position(|x| x == u)?;
            v.remove(pos);
        }
        Some(Partition(v))
    }

    pub fn with_part(&self, p: u32) -> Partition {
        Partition::from_unsorted(self.0.iter().copied().chain(std::iter::once(p)))
    }

    /// Partitions of `d` in reverse lexicographic order (`(d)` first).
    pub fn all_of_size(d: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        rec(d, d, &mut cur, &mut out);
        out
    }

    pub fn all_up_to(d: u32) -> Vec<Partition> {
        (0..=d).flat_map(Partition::all_of_size).collect()
    }

    /// Strict dominance `self < other`; partitions of different size are incomparable.
    pub fn dominance_less(&self, other: &Partition) -> bool {
        if self.size() != other.size() || self == other {
            return false;
        }
        let (mut a, mut b) = (0u32, 0u32);
        for k in 0..self.len().max(other.len()) {
            a += self.0.get(k).copied().unwrap_or(0);
            b += other.0.get(k).copied().unwrap_or(0);
            if a > b {
                return false;
            }
        }
        true
    }

    pub fn parse(s: &str) -> Result<Partition, Error> {
        Partition::new(Composition::parse(s)?.0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Partition, Error> {
        Partition::parse(s)
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

pub fn partition_count(d: u32) -> u64 {
    Partition::all_of_size(d).len() as u64
}

/// Same-orbit order: every vector reachable from `mu` by swapping a pair
/// `i < j` with `v_i < v_j` is strictly below `mu`.
pub fn orbit_below(mu: &[i32]) -> BTreeSet<Vec<i32>> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([mu.to_vec()]);
    while let Some(v) = queue.pop_front() {
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] < v[j] {
                    let mut w = v.clone();
                    w.swap(i, j);
                    if seen.insert(w.clone()) {
                        queue.push_back(w);
                    }
                }
            }
        }
    }
    seen
}

/// Whether `nu` is strictly below `mu` in the support order used for
/// triangularity: strictly dominated sorted vectors, or same orbit and
/// reachable by the swap rule.
pub fn support_below(nu: &[i32], mu: &[i32]) -> bool {
    if nu == mu || nu.len() != mu.len() {
        return false;
    }
    if nu.iter().any(|&x| x < 0) || mu.iter().any(|&x| x < 0) {
        return false;
    }
    let sn = Partition::from_unsorted(nu.iter().map(|&x| x as u32));
    let sm = Partition::from_unsorted(mu.iter().map(|&x| x as u32));
    if sn == sm {
        orbit_below(mu).contains(nu)
    } else {
        sn.dominance_less(&sm)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn sorting() {
        assert_eq!(Composition(vec![0, 2, 0, 1]).sort(), p(&[2, 1]));
        assert_eq!(Composition(vec![0, 0]).sort(), Partition::empty());
        assert_eq!(Composition(vec![2, 2]).sort(), p(&[2, 2]));
    }

    #[test]
    fn dominance() {
        assert!(p(&[1, 1, 1]).dominance_less(&p(&[2, 1])));
        assert!(p(&[2, 2]).dominance_less(&p(&[3, 1])));
        assert!(!p(&[2, 1]).dominance_less(&p(&[2, 1])));
        assert!(!p(&[2]).dominance_less(&p(&[2, 1])));
    }

    #[test]
    fn orbit_rule() {
        assert!(support_below(&[2, 0], &[0, 2]));
        assert!(!support_below(&[0, 2], &[2, 0]));
        assert!(support_below(&[1, 1], &[0, 2]));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(partition_count(6), 11);
        assert_eq!(Composition::all_of_size(4, 5).len() as u64, binomial(8, 3));
        assert_eq!(Composition::all_of_size(0, 0), vec![Composition::empty()]);
        assert_eq!(p(&[2, 1, 1]).z(), 2 * 2 * 1);
    }

    #[test]
    fn parsing() {
        assert_eq!(Composition::parse("empty").unwrap(), Composition::empty());
        assert_eq!(Composition::parse("0,2").unwrap(), Composition(vec![0, 2]));
        assert!(Partition::parse("1,2").is_err());
    }
}
