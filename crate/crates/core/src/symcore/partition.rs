use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::SymError;

/// Integer partition with strictly positive, weakly decreasing parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl TryFrom<Vec<usize>> for Partition {
    type Error = SymError;
    fn try_from(v: Vec<usize>) -> Result<Self, SymError> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, SymError> {
        if parts.iter().any(|&p| p == 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(SymError::InvalidPartition(format!("{parts:?}")));
        }
        Ok(Partition(parts))
    }

    /// Sorts and drops zero entries.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// `(1, 1, ..., 1)` with `k` parts.
    pub fn column(k: usize) -> Self {
        Partition(vec![1; k])
    }

    pub fn row(k: usize) -> Self {
        if k == 0 {
            Self::empty()
        } else {
            Partition(vec![k])
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Self {
        let first = self.part(0);
        Partition(
            (0..first)
                .map(|j| self.0.iter().filter(|&&p| p > j).count())
                .collect(),
        )
    }

    /// Side of the largest square contained in the diagram.
    pub fn durfee(&self) -> usize {
        self.0.iter().enumerate().filter(|&(i, &p)| p > i).count()
    }

    /// `n(λ) = Σ (i-1) λ_i`.
    pub fn n_stat(&self) -> usize {
        self.0.iter().enumerate().map(|(i, &p)| i * p).sum()
    }

    /// Cells `(row, col)`, 0-based, row 0 is the longest part.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (0..p).map(move |j| (i, j)))
            .collect()
    }

    /// Multiplicities of each part size, indexed by size.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.part(0) + 1];
        for &p in &self.0 {
            m[p] += 1;
        }
        m
    }

    /// `z_λ = Π i^{m_i} m_i!`.
    pub fn z(&self) -> BigInt {
        let mut z = BigInt::one();
        for (i, &mi) in self.multiplicities().iter().enumerate().skip(1) {
            for j in 1..=mi {
                z *= BigInt::from(i) * BigInt::from(j);
            }
        }
        z
    }

    /// Number of standard Young tableaux, by the hook length formula.
    pub fn num_syt(&self) -> BigInt {
        let conj = self.conjugate();
        let mut num = BigInt::one();
        for i in 2..=self.size() {
            num *= i;
        }
        let mut den = BigInt::one();
        for (i, j) in self.cells() {
            den *= (self.0[i] - j - 1) + (conj.0[j] - i - 1) + 1;
        }
        num / den
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// Union of parts (the partition of the concatenated multiset).
    pub fn union(&self, other: &Partition) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Self::from_unsorted(v)
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        Self::all_bounded(n, n, usize::MAX)
    }

    /// Partitions of `n` with largest part at most `max_part` and at most `max_len` parts.
    pub fn all_bounded(n: usize, max_part: usize, max_len: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(
            n: usize,
            max_part: usize,
            max_len: usize,
            cur: &mut Vec<usize>,
            out: &mut Vec<Partition>,
        ) {
            if n == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            if cur.len() == max_len {
                return;
            }
            for p in (1..=max_part.min(n)).rev() {
                cur.push(p);
                rec(n - p, p, max_len, cur, out);
                cur.pop();
            }
        }
        rec(n, max_part, max_len, &mut cur, &mut out);
        out
    }

    /// Partitions `ν ⊆ self` with `self/ν` a vertical strip of size `i`.
    pub fn remove_vertical_strips(&self, i: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        fn rec(row: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if row == cur.len() {
                if left == 0 && cur.windows(2).all(|w| w[0] >= w[1]) {
                    out.push(Partition::from_unsorted(cur.clone()));
                }
                return;
            }
            rec(row + 1, left, cur, out);
            if left > 0 {
                cur[row] -= 1;
                rec(row + 1, left - 1, cur, out);
                cur[row] += 1;
            }
        }
        rec(0, i, &mut self.0.clone(), &mut out);
        out.sort();
        out.reverse();
        out
    }

    /// Partitions `μ ⊇ self` with `μ/self` a horizontal strip of size `k`.
    pub fn add_horizontal_strips(&self, k: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = self.0.clone();
        cur.push(0);
        // row r may grow up to the old length of row r-1 (row 0 unbounded)
        fn rec(
            row: usize,
            left: usize,
            src: &[usize],
            cur: &mut Vec<usize>,
            out: &mut Vec<Partition>,
        ) {
            if row == cur.len() {
                if left == 0 {
                    out.push(Partition::from_unsorted(cur.clone()));
                }
                return;
            }
            let cap = if row == 0 {
                left
            } else {
                (src[row - 1] - src.get(row).copied().unwrap_or(0)).min(left)
            };
            for add in 0..=cap {
                cur[row] += add;
                rec(row + 1, left - add, src, cur, out);
                cur[row] -= add;
            }
        }
        let src = self.0.clone();
        rec(0, k, &src, &mut cur, &mut out);
        out.sort();
        out.reverse();
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Composition(Vec<usize>);

impl TryFrom<Vec<usize>> for Composition {
    type Error = SymError;
    fn try_from(v: Vec<usize>) -> Result<Self, SymError> {
        Composition::new(v)
    }
}

impl From<Composition> for Vec<usize> {
    fn from(c: Composition) -> Self {
        c.0
    }
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self, SymError> {
        if parts.contains(&0) {
            return Err(SymError::InvalidComposition(format!("{parts:?}")));
        }
        Ok(Composition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All compositions of `n`, in lexicographic order.
    pub fn all(n: usize) -> Vec<Composition> {
        let mut out = Vec::new();
        fn rec(n: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
            if n == 0 {
                out.push(Composition(cur.clone()));
                return;
            }
            for p in 1..=n {
                cur.push(p);
                rec(n - p, cur, out);
                cur.pop();
            }
        }
        if n > 0 {
            rec(n, &mut Vec::new(), &mut out);
        }
        out
    }

    /// Append a part on the right.
    pub fn push(&self, a: usize) -> Self {
        let mut v = self.0.clone();
        v.push(a);
        Composition(v)
    }

    pub fn prepend(&self, a: usize) -> Self {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(a);
        v.extend_from_slice(&self.0);
        Composition(v)
    }

    /// Partial sums `α_1, α_1+α_2, …`.
    pub fn partial_sums(&self) -> Vec<usize> {
        self.0
            .iter()
            .scan(0, |s, &p| {
                *s += p;
                Some(*s)
            })
            .collect()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn conjugate_and_durfee() {
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(p(&[2, 2]).durfee(), 2);
        assert_eq!(p(&[3, 1, 1]).durfee(), 1);
        for q in Partition::all(7) {
            assert_eq!(q.conjugate().conjugate(), q);
        }
    }

    #[test]
    fn rejects_bad_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(Composition::new(vec![1, 0]).is_err());
    }

    #[test]
    fn counts() {
        assert_eq!(Partition::all(5).len(), 7);
        assert_eq!(Partition::all(5)[0], p(&[5]));
        assert_eq!(Composition::all(4).len(), 8);
        assert_eq!(p(&[2, 1]).num_syt(), BigInt::from(2));
        assert_eq!(p(&[3, 2]).num_syt(), BigInt::from(5));
        assert_eq!(p(&[2, 1, 1]).z(), BigInt::from(4));
        assert_eq!(p(&[2, 1]).n_stat(), 1);
    }

    #[test]
    fn strips() {
        assert_eq!(
            p(&[2, 1]).remove_vertical_strips(1),
            vec![p(&[2]), p(&[1, 1])]
        );
        assert_eq!(
            p(&[1, 1]).remove_vertical_strips(2),
            vec![Partition::empty()]
        );
        assert_eq!(p(&[2, 2]).remove_vertical_strips(2), vec![p(&[1, 1])]);
        assert_eq!(p(&[1]).add_horizontal_strips(2), vec![p(&[3]), p(&[2, 1])]);
        assert_eq!(Partition::empty().add_horizontal_strips(2), vec![p(&[2])]);
    }
}
