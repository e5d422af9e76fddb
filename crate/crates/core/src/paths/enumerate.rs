use serde::{Deserialize, Serialize};

use super::{line_x, precedes, LabeledPath};

/// Which chains to produce: all, those whose first path avoids the origin, or those through it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainKind {
    All,
    Hat,
    Bar,
}

impl ChainKind {
    pub fn admits_first(self, p: &LabeledPath) -> bool {
        match self {
            ChainKind::All => true,
            ChainKind::Hat => !p.is_bar(),
            ChainKind::Bar => p.is_bar(),
        }
    }
}

/// North-step coordinates of every (m,n) shape with area at most `max_area`.
pub fn shapes(m: u32, n: u32, max_area: u32) -> Vec<Vec<i32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n as usize);
    fn rec(m: u32, n: u32, left: i64, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        let y = cur.len() as i64;
        if y == n as i64 {
            if cur[n as usize - 1] <= cur[0] + m as i32 {
                out.push(cur.clone());
            }
            return;
        }
        let top = line_x(m, n, y);
        let lo = match cur.last() {
            Some(&prev) => (prev as i64).max(top - left),
            None => top - left,
        };
        for x in lo..=top {
            cur.push(x as i32);
            rec(m, n, left - (top - x), cur, out);
            cur.pop();
        }
    }
    rec(m, n, max_area as i64, &mut cur, &mut out);
    out
}

/// Every valid labeling of a shape with labels in `1..=max_label`.
///
/// `cap[k-1]`, when given, bounds how often label `k` may be used.
pub fn labelings(m: u32, shape: &[i32], max_label: u32, cap: Option<&[u32]>) -> Vec<Vec<u32>> {
    let n = shape.len();
    let wraps = shape[n - 1] == shape[0] + m as i32;
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    let mut used = vec![0u32; max_label as usize + 1];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        shape: &[i32],
        wraps: bool,
        max_label: u32,
        cap: Option<&[u32]>,
        cur: &mut Vec<u32>,
        used: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        let y = cur.len();
        if y == shape.len() {
            if !wraps || cur[0] > cur[y - 1] {
                out.push(cur.clone());
            }
            return;
        }
        let lo = if y > 0 && shape[y] == shape[y - 1] {
            cur[y - 1] + 1
        } else {
            1
        };
        for l in lo..=max_label {
            if let Some(c) = cap {
                if used[l as usize] >= c.get(l as usize - 1).copied().unwrap_or(0) {
                    continue;
                }
            }
            used[l as usize] += 1;
            cur.push(l);
            rec(shape, wraps, max_label, cap, cur, used, out);
            cur.pop();
            used[l as usize] -= 1;
        }
    }
    rec(shape, wraps, max_label, cap, &mut cur, &mut used, &mut out);
    out
}

/// Cyclic (m,n)-parking functions with area ≤ `max_area` and labels ≤ `max_label`,
/// sorted by `(area, north_x, labels)`.
pub fn enumerate_cpf(m: u32, n: u32, max_area: u32, max_label: u32) -> Vec<LabeledPath> {
    enumerate_cpf_capped(m, n, max_area, max_label, None)
}

pub fn enumerate_cpf_capped(
    m: u32,
    n: u32,
    max_area: u32,
    max_label: u32,
    cap: Option<&[u32]>,
) -> Vec<LabeledPath> {
    let mut out = Vec::new();
    if max_label == 0 {
        return out;
    }
    for shape in shapes(m, n, max_area) {
        for labels in labelings(m, &shape, max_label, cap) {
            out.push(LabeledPath::new(m, n, shape.clone(), labels));
        }
    }
    out.sort_by_cached_key(|p| (p.area(), p.north_x.clone(), p.labels.clone()));
    out
}

/// Chains `π_1 ≺ π_2 ≺ … ≺ π_a` with total area ≤ `max_area`.
pub fn enumerate_chains(
    kind: ChainKind,
    a: usize,
    m: u32,
    n: u32,
    max_area: u32,
    max_label: u32,
) -> Vec<Vec<LabeledPath>> {
    let pool = enumerate_cpf(m, n, max_area, max_label);
    let mut out = Vec::new();
    if a == 0 {
        out.push(Vec::new());
        return out;
    }
    let mut cur: Vec<&LabeledPath> = Vec::new();
    fn rec<'a>(
        pool: &'a [LabeledPath],
        kind: ChainKind,
        a: usize,
        left: i64,
        cur: &mut Vec<&'a LabeledPath>,
        out: &mut Vec<Vec<LabeledPath>>,
    ) {
        if cur.len() == a {
            out.push(cur.iter().map(|p| (*p).clone()).collect());
            return;
        }
        for p in pool {
            let ar = p.area();
            if ar > left {
                break; // pool is sorted by area
            }
            let ok = match cur.last() {
                None => kind.admits_first(p),
                Some(prev) => precedes(prev, p),
            };
            if ok {
                cur.push(p);
                rec(pool, kind, a, left - ar, cur, out);
                cur.pop();
            }
        }
    }
    rec(&pool, kind, a, max_area as i64, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_cpf(2, 1, 1, 1).len(), 2);
        assert!(enumerate_cpf(2, 1, 3, 0).is_empty());
        let v = enumerate_cpf(1, 1, 0, 2);
        assert_eq!(v.len(), 2);
        assert!(v.iter().all(|p| p.start_x == 0));
    }

    #[test]
    fn chain_split() {
        for (m, n) in [(1, 1), (2, 1), (3, 2)] {
            let all = enumerate_chains(ChainKind::All, 1, m, n, 3, 2).len();
            let hat = enumerate_chains(ChainKind::Hat, 1, m, n, 3, 2).len();
            let bar = enumerate_chains(ChainKind::Bar, 1, m, n, 3, 2).len();
            assert_eq!(all, hat + bar);
        }
        let ch = enumerate_chains(ChainKind::All, 2, 1, 1, 1, 1);
        let a0 = LabeledPath::new(1, 1, vec![0], vec![1]);
        let a1 = LabeledPath::new(1, 1, vec![-1], vec![1]);
        assert!(ch.contains(&vec![a0, a1]));
    }
}
