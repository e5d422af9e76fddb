//! Cyclic (m,n)-parking functions, tuples of them, and their statistics.

pub mod enumerate;

pub use enumerate::{enumerate_chains, enumerate_cpf, enumerate_cpf_capped, ChainKind};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("m and n must be coprime positive integers, got ({0},{1})")]
    NotCoprime(u32, u32),
    #[error("invalid connecting permutation: {0}")]
    InvalidConnectingPermutation(String),
    #[error("invalid path: {0}")]
    InvalidPath(String),
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn check_coprime(m: u32, n: u32) -> Result<(), PathError> {
    if m == 0 || n == 0 || gcd(m as u64, n as u64) != 1 {
        return Err(PathError::NotCoprime(m, n));
    }
    Ok(())
}

/// `⌊m y / n⌋`, the largest x with `(x, y)` weakly above the line `my = nx`.
pub fn line_x(m: u32, n: u32, y: i64) -> i64 {
    (m as i64 * y).div_euclid(n as i64)
}

/// `C(m,n,k) = ((mk-1)(nk-1) + k - 1) / 2`.
pub fn c_const(m: u32, n: u32, k: usize) -> i64 {
    let (m, n, k) = (m as i64, n as i64, k as i64);
    ((m * k - 1) * (n * k - 1) + k - 1) / 2
}

/// A labeled lattice path with `n` north steps starting at `(start_x, 0)`.
///
/// `north_x[y]` is the x-coordinate of the north step from height `y` to `y+1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LabeledPath {
    pub m: u32,
    pub n: u32,
    pub start_x: i32,
    pub north_x: Vec<i32>,
    pub labels: Vec<u32>,
}

/// Outcome of [`validate_cpf`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Validation {
    pub valid: bool,
    pub diagnostics: Vec<String>,
}

impl LabeledPath {
    pub fn new(m: u32, n: u32, north_x: Vec<i32>, labels: Vec<u32>) -> Self {
        let start_x = north_x.first().copied().unwrap_or(0);
        Self {
            m,
            n,
            start_x,
            north_x,
            labels,
        }
    }

    /// Endpoint x-coordinate when the path is a cyclic parking function on its own.
    pub fn own_end_x(&self) -> i32 {
        self.start_x + self.m as i32
    }

    pub fn aseq(&self) -> Vec<i64> {
        self.north_x
            .iter()
            .enumerate()
            .map(|(y, &x)| line_x(self.m, self.n, y as i64) - x as i64)
            .collect()
    }

    pub fn area(&self) -> i64 {
        self.aseq().iter().sum()
    }

    /// Passes through the origin (equivalently, the first area entry is zero).
    pub fn is_bar(&self) -> bool {
        self.start_x == 0
    }

    /// Row, area entry and label of each north step.
    pub fn skeleton(&self) -> Skeleton {
        let a = self.aseq();
        Skeleton::from_triples(
            (0..self.n as usize)
                .map(|y| (y as u32 + 1, a[y] as u32, self.labels[y]))
                .collect(),
        )
    }

    /// Periodic extension of `north_x`: index `j` may run past `n`.
    pub fn x_at(&self, j: i64) -> i64 {
        let n = self.n as i64;
        let (q, r) = (j.div_euclid(n), j.rem_euclid(n));
        self.north_x[r as usize] as i64 + q * self.m as i64
    }

    pub fn label_at(&self, j: i64) -> u32 {
        self.labels[j.rem_euclid(self.n as i64) as usize]
    }

    /// Shape checks shared by cyclic parking functions and tuple components.
    ///
    /// `end_x` is the endpoint; `next_label` is the label the final vertex
    /// must stay below when the path ends with a north step.
    pub fn shape_diagnostics(&self, end_x: i32, next_label: u32) -> Vec<String> {
        let mut d = Vec::new();
        let n = self.n as usize;
        if check_coprime(self.m, self.n).is_err() {
            d.push(format!("(m,n)=({},{}) not coprime", self.m, self.n));
        }
        if self.north_x.len() != n || self.labels.len() != n {
            d.push(format!("expected {n} north steps and labels"));
            return d;
        }
        if self.north_x[0] != self.start_x {
            d.push("path must begin with a north step at start_x".into());
        }
        for y in 1..n {
            if self.north_x[y] < self.north_x[y - 1] {
                d.push(format!("north_x decreases at row {}", y + 1));
            }
        }
        for (y, &x) in self.north_x.iter().enumerate() {
            if x as i64 > line_x(self.m, self.n, y as i64) {
                d.push(format!("vertex ({x},{y}) lies below the line"));
            }
        }
        if (end_x as i64) > self.m as i64 {
            d.push(format!("endpoint ({end_x},{n}) lies below the line"));
        }
        if end_x < self.north_x[n - 1] {
            d.push("negative number of final east steps".into());
        }
        if self.labels.contains(&0) {
            d.push("labels must be positive".into());
        }
        for y in 1..n {
            if self.north_x[y] == self.north_x[y - 1] && self.labels[y] <= self.labels[y - 1] {
                d.push(format!(
                    "labels not increasing on consecutive north steps at row {}",
                    y + 1
                ));
            }
        }
        if self.north_x[n - 1] == end_x && self.labels[n - 1] >= next_label {
            d.push("path ends with a north step but the wrap label condition fails".into());
        }
        d
    }
}

impl fmt::Display for LabeledPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]{{", self.start_x)?;
        for (i, (x, l)) in self.north_x.iter().zip(&self.labels).enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{x}:{l}")?;
        }
        write!(f, "}}")
    }
}

pub fn validate_cpf(p: &LabeledPath) -> Validation {
    let mut d = Vec::new();
    if p.start_x > 0 {
        d.push(format!("start_x = {} must be <= 0", p.start_x));
    }
    let first = p.labels.first().copied().unwrap_or(0);
    d.extend(p.shape_diagnostics(p.own_end_x(), first));
    Validation {
        valid: d.is_empty(),
        diagnostics: d,
    }
}

pub fn area_and_aseq(p: &LabeledPath) -> (i64, Vec<i64>) {
    let a = p.aseq();
    (a.iter().sum(), a)
}

/// `π ≺ π'`: `π'` weakly left of `π`, no shared east step, and labels weakly
/// decrease across every shared vertex.
pub fn precedes(p: &LabeledPath, q: &LabeledPath) -> bool {
    if p.m != q.m || p.n != q.n {
        return false;
    }
    let n = p.n as i64;
    for h in 1..=n {
        let xq = q.x_at(h);
        let xp = p.x_at(h - 1);
        if xq > xp {
            return false;
        }
        if xq == xp && p.label_at(h - 1) < q.label_at(h) {
            return false;
        }
    }
    true
}

/// Commutative monomial `Π z_{row, area, label}`, stored as a sorted list.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Skeleton(Vec<(u32, u32, u32)>);

impl Skeleton {
    pub fn from_triples(mut v: Vec<(u32, u32, u32)>) -> Self {
        v.sort_unstable();
        Skeleton(v)
    }

    pub fn triples(&self) -> &[(u32, u32, u32)] {
        &self.0
    }

    pub fn mul(&self, o: &Skeleton) -> Skeleton {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Self::from_triples(v)
    }

    /// Total t-degree under `z_{i,j,k} ↦ t^j x_k`.
    pub fn area(&self) -> u32 {
        self.0.iter().map(|t| t.1).sum()
    }

    /// Label multiplicities: entry `k-1` counts label `k`.
    pub fn content(&self) -> Vec<u32> {
        let mut c = Vec::new();
        for &(_, _, l) in &self.0 {
            if c.len() < l as usize {
                c.resize(l as usize, 0);
            }
            c[l as usize - 1] += 1;
        }
        c
    }
}

impl fmt::Display for Skeleton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self
            .0
            .iter()
            .map(|(i, j, k)| format!("z[{i},{j},{k}]"))
            .collect();
        write!(f, "{}", s.join("*"))
    }
}

/// Ordered tuple of paths; component `ℓ` lives in sheet `ℓ + 1`.
///
/// `perm` is the connecting permutation (0-based); `None` means identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathTuple {
    pub m: u32,
    pub n: u32,
    pub components: Vec<LabeledPath>,
    pub perm: Option<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct TupleRepr {
    components: Vec<LabeledPath>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    perm: Option<Vec<usize>>,
}

impl Serialize for PathTuple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TupleRepr {
            components: self.components.clone(),
            perm: self
                .perm
                .as_ref()
                .map(|p| p.iter().map(|x| x + 1).collect()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PathTuple {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = TupleRepr::deserialize(d)?;
        let first = r
            .components
            .first()
            .ok_or_else(|| serde::de::Error::custom("empty tuple"))?;
        let (m, n) = (first.m, first.n);
        let perm = match r.perm {
            None => None,
            Some(p) => {
                if p.contains(&0) {
                    return Err(serde::de::Error::custom("perm is 1-based"));
                }
                Some(p.into_iter().map(|x| x - 1).collect())
            }
        };
        Ok(PathTuple {
            m,
            n,
            components: r.components,
            perm,
        })
    }
}

/// Per-step contents of one tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepContents {
    /// `(content, label)` for each north step, per component
    pub north: Vec<Vec<(i64, u32)>>,
    /// content of each east step, per component
    pub east: Vec<Vec<i64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TupleStats {
    pub pdinv: i64,
    pub ldinv: i64,
    pub stat: i64,
    pub area: i64,
}

impl PathTuple {
    pub fn new(components: Vec<LabeledPath>) -> Self {
        let (m, n) = components.first().map(|p| (p.m, p.n)).unwrap_or((1, 1));
        Self {
            m,
            n,
            components,
            perm: None,
        }
    }

    pub fn with_perm(components: Vec<LabeledPath>, perm: Vec<usize>) -> Self {
        let mut t = Self::new(components);
        t.perm = Some(perm);
        t
    }

    pub fn empty(m: u32, n: u32) -> Self {
        Self {
            m,
            n,
            components: Vec::new(),
            perm: None,
        }
    }

    pub fn k(&self) -> usize {
        self.components.len()
    }

    pub fn phi(&self, l: usize) -> usize {
        self.perm.as_ref().map_or(l, |p| p[l])
    }

    pub fn end_x(&self, l: usize) -> i32 {
        self.components[self.phi(l)].start_x + self.m as i32
    }

    pub fn area(&self) -> i64 {
        self.components.iter().map(|p| p.area()).sum()
    }

    pub fn skeleton(&self) -> Skeleton {
        self.components
            .iter()
            .fold(Skeleton::default(), |acc, p| acc.mul(&p.skeleton()))
    }

    pub fn check_perm(&self) -> Result<(), PathError> {
        if let Some(p) = &self.perm {
            let mut seen = vec![false; self.k()];
            if p.len() != self.k() {
                return Err(PathError::InvalidConnectingPermutation(format!(
                    "length {} != {}",
                    p.len(),
                    self.k()
                )));
            }
            for &x in p {
                if x >= self.k() || seen[x] {
                    return Err(PathError::InvalidConnectingPermutation(format!(
                        "{p:?} is not a permutation"
                    )));
                }
                seen[x] = true;
            }
        }
        Ok(())
    }

    /// Boundary and label conditions of every component under the connecting permutation.
    pub fn validate(&self) -> Result<(), PathError> {
        self.check_perm()?;
        for (l, p) in self.components.iter().enumerate() {
            if p.m != self.m || p.n != self.n {
                return Err(PathError::InvalidPath(format!(
                    "component {} has different (m,n)",
                    l + 1
                )));
            }
            let next = &self.components[self.phi(l)];
            let d = p.shape_diagnostics(self.end_x(l), next.labels.first().copied().unwrap_or(0));
            if !d.is_empty() {
                return Err(PathError::InvalidPath(format!(
                    "component {}: {}",
                    l + 1,
                    d.join("; ")
                )));
            }
        }
        Ok(())
    }

    pub fn step_contents(&self) -> StepContents {
        let k = self.k() as i64;
        let (m, n) = (self.m as i64, self.n as i64);
        let mut north = Vec::new();
        let mut east = Vec::new();
        for (l, p) in self.components.iter().enumerate() {
            let i = l as i64 + 1;
            let nc: Vec<(i64, u32)> = (0..n as usize)
                .map(|y| {
                    (
                        k * (m * y as i64 - n * p.north_x[y] as i64) + i - 1,
                        p.labels[y],
                    )
                })
                .collect();
            let mut ec = Vec::new();
            let end = self.end_x(l) as i64;
            for h in 1..=n {
                let from = p.north_x[(h - 1) as usize] as i64;
                let to = if h < n {
                    p.north_x[h as usize] as i64
                } else {
                    end
                };
                for x in from..to {
                    ec.push(k * (m * (h - 1) - n * (x + 1)) + i - 1);
                }
            }
            north.push(nc);
            east.push(ec);
        }
        StepContents { north, east }
    }

    pub fn stats(&self) -> TupleStats {
        let c = self.step_contents();
        let (pdinv, ldinv) = dinv_counts(&c, self.k() as i64 * self.m as i64);
        TupleStats {
            pdinv,
            ldinv,
            stat: c_const(self.m, self.n, self.k()) - pdinv - ldinv,
            area: self.area(),
        }
    }

    /// Concatenation `(self, other)` with identity connecting permutation.
    pub fn concat(&self, other: &PathTuple) -> PathTuple {
        let mut c = self.components.clone();
        c.extend(other.components.iter().cloned());
        PathTuple {
            m: self.m,
            n: self.n,
            components: c,
            perm: None,
        }
    }
}

/// `(pdinv, ldinv)` from step contents; `window = k m`.
pub fn dinv_counts(c: &StepContents, window: i64) -> (i64, i64) {
    let norths: Vec<(i64, u32)> = c.north.iter().flatten().copied().collect();
    let mut easts: Vec<i64> = c.east.iter().flatten().copied().collect();
    easts.sort_unstable();
    let mut pdinv = 0i64;
    for &(cn, _) in &norths {
        // easts with content > cn
        pdinv += (easts.len() - easts.partition_point(|&e| e <= cn)) as i64;
    }
    let mut ldinv = 0i64;
    for &(c1, f1) in &norths {
        for &(c2, f2) in &norths {
            if c1 < c2 && c2 < c1 + window && f1 >= f2 {
                ldinv += 1;
            }
        }
    }
    (pdinv, ldinv)
}

pub fn tuple_stats(t: &PathTuple) -> TupleStats {
    t.stats()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_one_aseq() {
        let p = LabeledPath::new(4, 3, vec![-3, -1, -1], vec![3, 2, 4]);
        assert_eq!(area_and_aseq(&p), (8, vec![3, 2, 3]));
        let q = LabeledPath::new(4, 3, vec![-2, -2, 1], vec![1, 2, 1]);
        assert_eq!(area_and_aseq(&q), (6, vec![2, 3, 1]));
    }

    #[test]
    fn validation_examples() {
        assert!(validate_cpf(&LabeledPath::new(2, 1, vec![0], vec![1])).valid);
        assert!(validate_cpf(&LabeledPath::new(1, 1, vec![0], vec![1])).valid);
        let bad = validate_cpf(&LabeledPath::new(3, 2, vec![1, 1], vec![1, 2]));
        assert!(!bad.valid);
        assert!(bad.diagnostics.iter().any(|d| d.contains("start_x")));
        // ends with a north step: (2,1) with the path at x = 2? impossible; use (1,2)
        let wrap = LabeledPath::new(1, 2, vec![-1, 0], vec![1, 2]);
        assert!(!validate_cpf(&wrap).valid);
        let wrap_ok = LabeledPath::new(1, 2, vec![-1, 0], vec![2, 1]);
        assert!(validate_cpf(&wrap_ok).valid);
    }

    #[test]
    fn single_step_contents() {
        let t = PathTuple::new(vec![LabeledPath::new(2, 1, vec![0], vec![1])]);
        let c = t.step_contents();
        assert_eq!(c.north, vec![vec![(0, 1)]]);
        assert_eq!(c.east, vec![vec![-1, -2]]);
        assert_eq!(
            t.stats(),
            TupleStats {
                pdinv: 0,
                ldinv: 0,
                stat: 0,
                area: 0
            }
        );
    }

    #[test]
    fn precedes_examples() {
        let a0 = LabeledPath::new(1, 1, vec![0], vec![1]);
        let a1 = LabeledPath::new(1, 1, vec![-1], vec![1]);
        assert!(precedes(&a0, &a1));
        let b0 = LabeledPath::new(2, 1, vec![0], vec![1]);
        let b1 = LabeledPath::new(2, 1, vec![-1], vec![1]);
        assert!(!precedes(&b0, &b1));
        assert!(!precedes(&a0, &a0));
    }

    #[test]
    fn constant() {
        assert_eq!(c_const(4, 3, 2), 18);
        assert_eq!(c_const(2, 1, 1), 0);
        assert_eq!(c_const(5, 3, 0), 0);
    }
}

#[cfg(test)]
mod figure_one {
    use super::*;

    #[test]
    fn golden_tuple() {
        let p = LabeledPath::new(4, 3, vec![-3, -1, -1], vec![3, 2, 4]);
        let q = LabeledPath::new(4, 3, vec![-2, -2, 1], vec![1, 2, 1]);
        let t = PathTuple::with_perm(vec![p, q], vec![1, 0]);
        t.validate().unwrap();
        let s = t.stats();
        assert_eq!((s.pdinv, s.ldinv, s.stat, s.area), (7, 3, 8, 14));
    }
}
