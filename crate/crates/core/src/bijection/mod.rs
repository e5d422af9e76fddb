//! Crossings, `pos`, (km,kn)-parking functions, `mix`, `Γ`, `Ψ` and `up`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::paths::{
    c_const, dinv_counts, line_x, precedes, LabeledPath, PathError, PathTuple, Skeleton,
    StepContents, TupleStats,
};
use crate::symcore::Composition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error("strip condition violated: {0}")]
    StripConditionViolated(String),
    #[error("no crossing between the inserted path and any component")]
    NoCrossing,
    #[error("not a P-tableau: {0}")]
    NotPTableau(String),
    #[error(transparent)]
    Path(#[from] PathError),
}

/// Lattice path from `(0,0)` to `(km,kn)` weakly above `my = nx`, with labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GlobalParkingFunction {
    pub m: u32,
    pub n: u32,
    pub k: usize,
    pub north_x: Vec<i32>,
    pub labels: Vec<u32>,
}

impl GlobalParkingFunction {
    pub fn validate(&self) -> Result<(), BijectionError> {
        let len = self.k * self.n as usize;
        let bad = |s: String| Err(BijectionError::StripConditionViolated(s));
        if self.north_x.len() != len || self.labels.len() != len {
            return bad(format!("expected {len} north steps"));
        }
        if self.north_x[0] != 0 {
            return bad("path must start at the origin".into());
        }
        for y in 0..len {
            if y > 0 && self.north_x[y] < self.north_x[y - 1] {
                return bad(format!("north_x decreases at row {}", y + 1));
            }
            if self.north_x[y] as i64 > line_x(self.m, self.n, y as i64) {
                return bad(format!("row {} lies below the line", y + 1));
            }
            if y > 0
                && self.north_x[y] == self.north_x[y - 1]
                && self.labels[y] <= self.labels[y - 1]
            {
                return bad(format!("labels not increasing at row {}", y + 1));
            }
        }
        if self.labels.contains(&0) {
            return bad("labels must be positive".into());
        }
        Ok(())
    }

    pub fn area(&self) -> i64 {
        self.north_x
            .iter()
            .enumerate()
            .map(|(y, &x)| line_x(self.m, self.n, y as i64) - x as i64)
            .sum()
    }

    /// Contact points with the diagonal, as multiples `i` of `(m,n)`.
    pub fn contacts(&self) -> Vec<usize> {
        let n = self.n as usize;
        let mut c = vec![0];
        for i in 1..self.k {
            if self.north_x[i * n] == (i as i32) * self.m as i32 {
                c.push(i);
            }
        }
        c.push(self.k);
        c
    }

    /// Statistics on the `(km,kn)` path; ties between translates of a cell are broken by
    /// the column strip `⌊x/m⌋` of its south-east corner.
    pub fn stats(&self) -> TupleStats {
        let (m, n, k) = (self.m as i64, self.n as i64, self.k as i64);
        let cont = |x: i64, y: i64| k * (m * y - n * x) + x.div_euclid(m).clamp(0, k - 1);
        let len = self.north_x.len();
        let mut north = Vec::with_capacity(len);
        let mut east = Vec::new();
        for y in 0..len {
            let x = self.north_x[y] as i64;
            north.push((cont(x, y as i64), self.labels[y]));
            let next = if y + 1 < len {
                self.north_x[y + 1] as i64
            } else {
                k * m
            };
            east.extend((x..next).map(|e| cont(e + 1, y as i64)));
        }
        let c = StepContents {
            north: vec![north],
            east: vec![east],
        };
        let (pdinv, ldinv) = dinv_counts(&c, k * m);
        TupleStats {
            pdinv,
            ldinv,
            stat: c_const(self.m, self.n, self.k) - pdinv - ldinv,
            area: self.area(),
        }
    }

    pub fn skeleton(&self) -> Skeleton {
        decompose_pf(self).skeleton()
    }
}

pub fn touch(g: &GlobalParkingFunction) -> Composition {
    let c = g.contacts();
    Composition::new(c.windows(2).map(|w| w[1] - w[0]).collect()).expect("positive gaps")
}

fn cyclic_shift(k: usize) -> Vec<usize> {
    (0..k).map(|l| (l + 1) % k).collect()
}

/// Cut into horizontal strips; connecting permutation is the cyclic shift.
pub fn decompose_pf(g: &GlobalParkingFunction) -> PathTuple {
    let n = g.n as usize;
    let comps = (0..g.k)
        .map(|l| {
            let shift = (l as i32) * g.m as i32;
            let xs = g.north_x[l * n..(l + 1) * n]
                .iter()
                .map(|x| x - shift)
                .collect();
            LabeledPath::new(g.m, g.n, xs, g.labels[l * n..(l + 1) * n].to_vec())
        })
        .collect();
    PathTuple::with_perm(comps, cyclic_shift(g.k))
}

pub fn recompose(t: &PathTuple) -> Result<GlobalParkingFunction, BijectionError> {
    let k = t.k();
    if k == 0 {
        return Err(BijectionError::StripConditionViolated("empty tuple".into()));
    }
    let shift = cyclic_shift(k);
    if t.perm.as_ref().is_some_and(|p| *p != shift) || (t.perm.is_none() && k > 1) {
        return Err(BijectionError::StripConditionViolated(
            "connecting permutation must be the cyclic shift".into(),
        ));
    }
    let mut north_x = Vec::new();
    let mut labels = Vec::new();
    for (l, p) in t.components.iter().enumerate() {
        north_x.extend(p.north_x.iter().map(|x| x + (l as i32) * t.m as i32));
        labels.extend_from_slice(&p.labels);
    }
    let g = GlobalParkingFunction {
        m: t.m,
        n: t.n,
        k,
        north_x,
        labels,
    };
    g.validate()?;
    Ok(g)
}

/// A path with one extra labeled north step appended at its end.
#[derive(Clone, Debug)]
struct Extended {
    x: Vec<i64>,
    l: Vec<u32>,
}

impl Extended {
    fn new(p: &LabeledPath, end_x: i32, next_label: u32) -> Self {
        let mut x: Vec<i64> = p.north_x.iter().map(|&v| v as i64).collect();
        let mut l = p.labels.clone();
        x.push(end_x as i64);
        l.push(next_label);
        Self { x, l }
    }
}

fn extends(x: i64, a: u32, x2: i64, a2: u32) -> bool {
    x < x2 || (x == x2 && a < a2)
}

/// Crossings `(y, x)` between two extended paths, `y` ascending.
fn crossings(a: &Extended, b: &Extended) -> Vec<(usize, i64)> {
    let n = a.x.len() - 1;
    (1..=n)
        .filter(|&y| {
            extends(a.x[y - 1], a.l[y - 1], b.x[y], b.l[y])
                && extends(b.x[y - 1], b.l[y - 1], a.x[y], a.l[y])
        })
        .map(|y| (y, a.x[y].min(b.x[y])))
        .collect()
}

fn extended_components(t: &PathTuple) -> Vec<Extended> {
    (0..t.k())
        .map(|l| {
            let next = &t.components[t.phi(l)];
            Extended::new(&t.components[l], t.end_x(l), next.labels[0])
        })
        .collect()
}

/// Positive crossings over all component pairs, earlier sheet first.
pub fn pos_crossings(t: &PathTuple) -> Result<i64, BijectionError> {
    t.check_perm()?;
    let ext = extended_components(t);
    let mut total = 0i64;
    for i in 0..ext.len() {
        for j in i + 1..ext.len() {
            let (a, b) = (&ext[i], &ext[j]);
            for (y, _) in crossings(a, b) {
                if a.x[y - 1] < b.x[y - 1] || (a.x[y - 1] == b.x[y - 1] && a.l[y - 1] < b.l[y - 1])
                {
                    total += 1;
                }
            }
        }
    }
    Ok(total)
}

/// Every connecting permutation under which `t`'s components satisfy the boundary conditions.
pub fn valid_connecting_perms(t: &PathTuple) -> Vec<Vec<usize>> {
    let k = t.k();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..k).collect();
    permutations(&mut perm, 0, &mut |p| {
        let cand = PathTuple {
            perm: Some(p.to_vec()),
            ..t.clone()
        };
        if cand.validate().is_ok() {
            out.push(p.to_vec());
        }
    });
    out
}

pub(crate) fn permutations(v: &mut Vec<usize>, i: usize, f: &mut dyn FnMut(&[usize])) {
    if i == v.len() {
        f(v);
        return;
    }
    for j in i..v.len() {
        v.swap(i, j);
        permutations(v, i + 1, f);
        v.swap(i, j);
    }
}

/// Splice `head[..y]` with `tail[y..]`.
fn splice(m: u32, n: u32, head: &LabeledPath, tail: &LabeledPath, y: usize) -> LabeledPath {
    let mut xs = head.north_x[..y].to_vec();
    xs.extend_from_slice(&tail.north_x[y..]);
    let mut ls = head.labels[..y].to_vec();
    ls.extend_from_slice(&tail.labels[y..]);
    LabeledPath::new(m, n, xs, ls)
}

/// Insert the cyclic parking function `tau` into `g` at its last crossing.
pub fn mix(
    tau: &LabeledPath,
    g: &GlobalParkingFunction,
) -> Result<GlobalParkingFunction, BijectionError> {
    let t = decompose_pf(g);
    let ext = extended_components(&t);
    let et = Extended::new(tau, tau.own_end_x(), tau.labels[0]);
    let (lmax, y) = (0..t.k())
        .rev()
        .find_map(|l| crossings(&et, &ext[l]).last().map(|&(y, _)| (l, y)))
        .ok_or(BijectionError::NoCrossing)?;
    let (m, n) = (g.m, g.n);
    let p = &t.components[lmax];
    let mut comps: Vec<LabeledPath> = t.components[..lmax].to_vec();
    comps.push(splice(m, n, p, tau, y));
    comps.push(splice(m, n, tau, p, y));
    comps.extend_from_slice(&t.components[lmax + 1..]);
    recompose(&PathTuple::with_perm(comps, cyclic_shift(t.k() + 1)))
}

pub fn is_ptableau(t: &PathTuple) -> bool {
    t.k() > 0
        && t.components[0].start_x == 0
        && t.components
            .iter()
            .all(|p| crate::paths::validate_cpf(p).valid)
        && t.components.windows(2).all(|w| !precedes(&w[0], &w[1]))
}

pub fn gamma(t: &PathTuple) -> Result<GlobalParkingFunction, BijectionError> {
    if !is_ptableau(t) {
        return Err(BijectionError::NotPTableau(
            "defining conditions fail".into(),
        ));
    }
    let first = &t.components[0];
    let mut g = GlobalParkingFunction {
        m: t.m,
        n: t.n,
        k: 1,
        north_x: first.north_x.clone(),
        labels: first.labels.clone(),
    };
    for tau in &t.components[1..] {
        g = mix(tau, &g)?;
    }
    Ok(g)
}

pub fn psi(g: &GlobalParkingFunction) -> Result<PathTuple, BijectionError> {
    g.validate()?;
    let mut peeled: Vec<LabeledPath> = Vec::new();
    let mut t = decompose_pf(g);
    while t.k() > 1 {
        let ext = extended_components(&t);
        let (i, y) = (0..t.k() - 1)
            .rev()
            .find_map(|i| crossings(&ext[i], &ext[i + 1]).last().map(|&(y, _)| (i, y)))
            .ok_or(BijectionError::NoCrossing)?;
        let (a, b) = (&t.components[i], &t.components[i + 1]);
        let base = splice(t.m, t.n, a, b, y);
        let tau = splice(t.m, t.n, b, a, y);
        let mut comps = t.components[..i].to_vec();
        comps.push(base);
        comps.extend_from_slice(&t.components[i + 2..]);
        peeled.push(tau);
        let k = comps.len();
        t = PathTuple::with_perm(comps, cyclic_shift(k));
    }
    let mut comps = vec![LabeledPath::new(
        t.m,
        t.n,
        t.components[0].north_x.clone(),
        t.components[0].labels.clone(),
    )];
    comps.extend(peeled.into_iter().rev());
    let out = PathTuple::new(comps);
    if !is_ptableau(&out) {
        return Err(BijectionError::NotPTableau(
            "inverse image fails the defining conditions".into(),
        ));
    }
    Ok(out)
}

/// Indices (1-based) where a P-tableau of type `α` must pass through the origin.
fn alpha_zero_starts(alpha: &Composition) -> Vec<usize> {
    let mut v = vec![1];
    v.extend(alpha.partial_sums().into_iter().map(|s| s + 1));
    v
}

pub fn in_ptab_alpha(t: &PathTuple, alpha: &Composition) -> bool {
    if alpha.size() != t.k() || !is_ptableau(t) {
        return false;
    }
    let zeros = alpha_zero_starts(alpha);
    t.components
        .iter()
        .enumerate()
        .all(|(i, p)| p.is_bar() == zeros.contains(&(i + 1)))
}

pub fn ptab_filter(tuples: &[PathTuple], alpha: &Composition) -> Vec<PathTuple> {
    tuples
        .iter()
        .filter(|t| in_ptab_alpha(t, alpha))
        .cloned()
        .collect()
}

/// `(a, b)` with `n a - m b = 1` and `0 <= b < n`.
pub fn bezout(m: u32, n: u32) -> (i64, i64) {
    let (m, n) = (m as i64, n as i64);
    for b in 0..n {
        if (1 + m * b).rem_euclid(n) == 0 {
            return ((1 + m * b) / n, b);
        }
    }
    unreachable!("m and n coprime")
}

/// Shift the periodic path by `(-a, -b)`; raises area by one.
pub fn up(p: &LabeledPath) -> LabeledPath {
    let (a, b) = bezout(p.m, p.n);
    let n = p.n as i64;
    let xs = (0..n).map(|j| (p.x_at(j + b) - a) as i32).collect();
    let ls = (0..n).map(|j| p.label_at(j + b)).collect();
    LabeledPath::new(p.m, p.n, xs, ls)
}

/// Inverse of [`up`].
pub fn down(p: &LabeledPath) -> LabeledPath {
    let (a, b) = bezout(p.m, p.n);
    let n = p.n as i64;
    let xs = (0..n).map(|j| (p.x_at(j - b) + a) as i32).collect();
    let ls = (0..n).map(|j| p.label_at(j - b)).collect();
    LabeledPath::new(p.m, p.n, xs, ls)
}

/// Every global parking function of order `k` with labels in `1..=max_label`.
pub fn enumerate_global_pf(m: u32, n: u32, k: usize, max_label: u32) -> Vec<GlobalParkingFunction> {
    let len = k * n as usize;
    let mut out = Vec::new();
    let mut xs = Vec::with_capacity(len);
    let mut ls = Vec::with_capacity(len);
    fn rec(
        m: u32,
        n: u32,
        k: usize,
        max_label: u32,
        xs: &mut Vec<i32>,
        ls: &mut Vec<u32>,
        out: &mut Vec<GlobalParkingFunction>,
    ) {
        let y = xs.len();
        if y == k * n as usize {
            out.push(GlobalParkingFunction {
                m,
                n,
                k,
                north_x: xs.clone(),
                labels: ls.clone(),
            });
            return;
        }
        let lo = xs.last().copied().unwrap_or(0);
        let hi = if y == 0 {
            0
        } else {
            line_x(m, n, y as i64) as i32
        };
        for x in lo..=hi {
            let lmin = if y > 0 && x == xs[y - 1] {
                ls[y - 1] + 1
            } else {
                1
            };
            for l in lmin..=max_label {
                xs.push(x);
                ls.push(l);
                rec(m, n, k, max_label, xs, ls, out);
                xs.pop();
                ls.pop();
            }
        }
    }
    rec(m, n, k, max_label, &mut xs, &mut ls, &mut out);
    out
}

/// Largest area of a global parking function of order `k`.
pub fn max_global_area(m: u32, n: u32, k: usize) -> u32 {
    (0..(k * n as usize) as i64)
        .map(|y| line_x(m, n, y))
        .sum::<i64>() as u32
}

/// Every P-tableau of order `k` with total area at most `max_area`.
pub fn enumerate_ptableaux(
    m: u32,
    n: u32,
    k: usize,
    max_area: u32,
    max_label: u32,
) -> Vec<PathTuple> {
    let pool = crate::paths::enumerate::enumerate_cpf(m, n, max_area, max_label);
    let mut out = Vec::new();
    let mut cur: Vec<&LabeledPath> = Vec::new();
    fn rec<'a>(
        pool: &'a [LabeledPath],
        k: usize,
        left: i64,
        cur: &mut Vec<&'a LabeledPath>,
        out: &mut Vec<PathTuple>,
    ) {
        if cur.len() == k {
            out.push(PathTuple::new(cur.iter().map(|p| (*p).clone()).collect()));
            return;
        }
        for p in pool {
            let ar = p.area();
            if ar > left {
                break;
            }
            let ok = match cur.last() {
                None => p.start_x == 0,
                Some(prev) => !precedes(prev, p),
            };
            if ok {
                cur.push(p);
                rec(pool, k, left - ar, cur, out);
                cur.pop();
            }
        }
    }
    if k > 0 {
        rec(&pool, k, max_area as i64, &mut cur, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::validate_cpf;

    #[test]
    fn touch_examples() {
        let g = GlobalParkingFunction {
            m: 1,
            n: 1,
            k: 2,
            north_x: vec![0, 1],
            labels: vec![1, 1],
        };
        g.validate().unwrap();
        assert_eq!(touch(&g).parts(), &[1, 1]);
        let g = GlobalParkingFunction {
            m: 1,
            n: 1,
            k: 2,
            north_x: vec![0, 0],
            labels: vec![1, 2],
        };
        assert_eq!(touch(&g).parts(), &[2]);
    }

    #[test]
    fn roundtrip_decomposition() {
        let g = GlobalParkingFunction {
            m: 3,
            n: 2,
            k: 2,
            north_x: vec![0, 1, 3, 4],
            labels: vec![1, 2, 3, 4],
        };
        g.validate().unwrap();
        let t = decompose_pf(&g);
        t.validate().unwrap();
        assert_eq!(recompose(&t).unwrap(), g);
        assert_eq!(t.area(), g.area());
    }

    #[test]
    fn up_examples() {
        assert_eq!(bezout(2, 1), (1, 0));
        assert_eq!(bezout(3, 2), (2, 1));
        let p = LabeledPath::new(3, 2, vec![0, 1], vec![5, 7]);
        let u = up(&p);
        assert_eq!(u.north_x, vec![-1, 1]);
        assert_eq!(u.labels, vec![7, 5]);
        assert!(validate_cpf(&u).valid);
        assert_eq!(u.area(), p.area() + 1);
        assert_eq!(down(&u), p);
    }

    #[test]
    fn gamma_psi_small() {
        for (m, n, k, lab) in [(1, 1, 2, 2), (2, 1, 2, 2), (1, 2, 2, 2), (1, 1, 3, 2)] {
            let pfs = enumerate_global_pf(m, n, k, lab);
            let tabs = enumerate_ptableaux(m, n, k, max_global_area(m, n, k), lab);
            assert_eq!(pfs.len(), tabs.len(), "({m},{n}) k={k}");
            for t in &tabs {
                let g = gamma(t).unwrap();
                assert_eq!(g.area(), t.area());
                assert_eq!(&psi(&g).unwrap(), t);
            }
        }
    }

    #[test]
    fn identical_components_have_no_positive_crossing() {
        let p = LabeledPath::new(3, 2, vec![-1, 0], vec![1, 2]);
        let t = PathTuple::new(vec![p.clone(), p]);
        assert_eq!(pos_crossings(&t).unwrap(), 0);
    }
}
