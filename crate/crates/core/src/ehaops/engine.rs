//! Word evaluation by depth-first search over chains of cyclic parking functions.
//!
//! A tuple built by a word gets coefficient `q^{stat}`. Sheet tie-breaks only matter for equal
//! raw contents, so the dinv between two components depends on their order and not on the total
//! number of components; it is summed pair by pair during the search.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{OperatorSymbol, SignedWordSum, SymbolKind, Word};
use crate::exactalg::{rat, QTCoeff, QTRatFun};
use crate::paths::enumerate::enumerate_cpf;
use crate::paths::{c_const, precedes, LabeledPath, PathTuple, Skeleton};
use crate::symcore::{Partition, SymPoly};

/// Truncation knobs: total area `area`, labels in `1..=labels`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Budget {
    pub m: u32,
    pub n: u32,
    pub area: u32,
    pub labels: u32,
}

impl Budget {
    pub fn new(m: u32, n: u32, area: u32, labels: u32) -> Self {
        Self { m, n, area, labels }
    }
}

/// Every cyclic parking function inside a budget, sorted by area, with precomputed contents.
#[derive(Debug)]
pub struct Catalog {
    pub budget: Budget,
    pub paths: Vec<LabeledPath>,
    area: Vec<u32>,
    north: Vec<Vec<(i64, u32)>>,
    east: Vec<Vec<i64>>,
    self_dinv: Vec<i64>,
    label_counts: Vec<Vec<(u32, u32)>>,
    triples: Vec<Vec<(u32, u32, u32)>>,
    all: Vec<u32>,
    hat: Vec<u32>,
    bar: Vec<u32>,
}

impl Catalog {
    pub fn get(budget: Budget) -> Arc<Catalog> {
        static CACHE: OnceLock<Mutex<HashMap<Budget, Arc<Catalog>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(c) = cache.lock().unwrap().get(&budget) {
            return c.clone();
        }
        let c = Arc::new(Self::build(budget));
        cache.lock().unwrap().insert(budget, c.clone());
        c
    }

    fn build(budget: Budget) -> Self {
        let Budget { m, n, area, labels } = budget;
        let paths = enumerate_cpf(m, n, area, labels);
        let (mi, ni) = (m as i64, n as i64);
        let mut c = Catalog {
            budget,
            area: Vec::new(),
            north: Vec::new(),
            east: Vec::new(),
            self_dinv: Vec::new(),
            label_counts: Vec::new(),
            triples: Vec::new(),
            all: Vec::new(),
            hat: Vec::new(),
            bar: Vec::new(),
            paths: Vec::new(),
        };
        for (i, p) in paths.iter().enumerate() {
            let north: Vec<(i64, u32)> = (0..n as usize)
                .map(|y| (mi * y as i64 - ni * p.north_x[y] as i64, p.labels[y]))
                .collect();
            let mut east = Vec::new();
            let end = p.own_end_x() as i64;
            for h in 1..=ni {
                let from = p.north_x[(h - 1) as usize] as i64;
                let to = if h < ni {
                    p.north_x[h as usize] as i64
                } else {
                    end
                };
                east.extend((from..to).map(|x| mi * (h - 1) - ni * (x + 1)));
            }
            let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
            for &l in &p.labels {
                *counts.entry(l).or_default() += 1;
            }
            c.area.push(p.area() as u32);
            c.self_dinv
                .push(pair_dinv(&north, &east, &north, &east, mi, true));
            c.north.push(north);
            c.east.push(east);
            c.label_counts.push(counts.into_iter().collect());
            c.triples.push(p.skeleton().triples().to_vec());
            c.all.push(i as u32);
            if p.is_bar() {
                c.bar.push(i as u32);
            } else {
                c.hat.push(i as u32);
            }
        }
        c.paths = paths;
        c
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    fn first_slot(&self, kind: SymbolKind) -> &[u32] {
        match kind {
            SymbolKind::H => &self.all,
            SymbolKind::Hhat => &self.hat,
            SymbolKind::Hbar => &self.bar,
        }
    }

    /// dinv between component `a` and a later component `b`.
    fn cross(&self, a: usize, b: usize) -> i64 {
        pair_dinv(
            &self.north[a],
            &self.east[a],
            &self.north[b],
            &self.east[b],
            self.budget.m as i64,
            false,
        )
    }
}

/// Inversions among steps of `a` and `b` (`b` in a later sheet), or within `a` when `same`.
fn pair_dinv(
    an: &[(i64, u32)],
    ae: &[i64],
    bn: &[(i64, u32)],
    be: &[i64],
    m: i64,
    same: bool,
) -> i64 {
    let mut d = 0i64;
    if same {
        for &(r, _) in an {
            d += ae.iter().filter(|&&e| r < e).count() as i64;
        }
        for &(r, f) in an {
            for &(r2, f2) in an {
                let k = r2 - r;
                if (1..m).contains(&k) && f >= f2 {
                    d += 1;
                }
            }
        }
        return d;
    }
    for &(r, _) in an {
        d += be.iter().filter(|&&e| r <= e).count() as i64;
    }
    for &(r, _) in bn {
        d += ae.iter().filter(|&&e| r < e).count() as i64;
    }
    for &(r, f) in an {
        for &(r2, f2) in bn {
            if (0..m).contains(&(r2 - r)) && f >= f2 {
                d += 1;
            }
        }
    }
    for &(r, f) in bn {
        for &(r2, f2) in an {
            if (1..=m).contains(&(r2 - r)) && f >= f2 {
                d += 1;
            }
        }
    }
    d
}

/// Chain slots in tuple order: the rightmost symbol's chain comes first.
fn slots(word: &[OperatorSymbol]) -> Vec<(SymbolKind, bool)> {
    let mut out = Vec::new();
    for s in word.iter().rev() {
        for j in 0..s.index.max(0) {
            out.push((s.kind, j == 0));
        }
    }
    out
}

trait Sink {
    fn leaf(&mut self, cat: &Catalog, chosen: &[u32], stat: i64, area: u32);
}

struct Search<'a, S> {
    cat: &'a Catalog,
    slots: &'a [(SymbolKind, bool)],
    cap: Option<&'a [u32]>,
    counts: Vec<u32>,
    chosen: Vec<u32>,
    c: i64,
    sink: S,
}

impl<S: Sink> Search<'_, S> {
    fn fits(&self, i: usize) -> bool {
        match self.cap {
            None => true,
            Some(cap) => self.cat.label_counts[i]
                .iter()
                .all(|&(l, c)| self.counts[l as usize] + c <= cap[l as usize]),
        }
    }

    fn push(&mut self, i: usize) {
        if self.cap.is_some() {
            for &(l, c) in &self.cat.label_counts[i] {
                self.counts[l as usize] += c;
            }
        }
        self.chosen.push(i as u32);
    }

    fn pop(&mut self) {
        let i = self.chosen.pop().unwrap() as usize;
        if self.cap.is_some() {
            for &(l, c) in &self.cat.label_counts[i] {
                self.counts[l as usize] -= c;
            }
        }
    }

    fn added_dinv(&self, i: usize) -> i64 {
        self.cat.self_dinv[i]
            + self
                .chosen
                .iter()
                .map(|&j| self.cat.cross(j as usize, i))
                .sum::<i64>()
    }

    fn step(&mut self, i: usize, left: u32, dinv: i64) {
        let d = dinv + self.added_dinv(i);
        self.push(i);
        self.rec(left - self.cat.area[i], d);
        self.pop();
    }

    fn rec(&mut self, left: u32, dinv: i64) {
        let depth = self.chosen.len();
        if depth == self.slots.len() {
            let area = self.cat.budget.area - left;
            self.sink.leaf(self.cat, &self.chosen, self.c - dinv, area);
            return;
        }
        let (kind, first) = self.slots[depth];
        let cat = self.cat;
        if first {
            for &i in cat.first_slot(kind) {
                let i = i as usize;
                if cat.area[i] > left {
                    break;
                }
                if self.fits(i) {
                    self.step(i, left, dinv);
                }
            }
        } else {
            let prev = *self.chosen.last().unwrap() as usize;
            for i in 0..cat.len() {
                if cat.area[i] > left {
                    break;
                }
                if precedes(&cat.paths[prev], &cat.paths[i]) && self.fits(i) {
                    self.step(i, left, dinv);
                }
            }
        }
    }
}

/// Run the search for one word, splitting the first slot across threads.
fn run_word<S, F>(cat: &Catalog, word: &[OperatorSymbol], cap: Option<&[u32]>, make: F) -> Vec<S>
where
    S: Sink + Send,
    F: Fn() -> S + Sync,
{
    let sl = slots(word);
    let k = sl.len();
    let c = c_const(cat.budget.m, cat.budget.n, k);
    let new_search = || Search {
        cat,
        slots: &sl,
        cap,
        counts: vec![0; cat.budget.labels as usize + 1],
        chosen: Vec::with_capacity(k),
        c,
        sink: make(),
    };
    if k == 0 {
        let mut s = new_search();
        s.rec(cat.budget.area, 0);
        return vec![s.sink];
    }
    let firsts = cat.first_slot(sl[0].0).to_vec();
    firsts
        .par_iter()
        .filter(|&&i| cat.area[i as usize] <= cat.budget.area)
        .map(|&i| {
            let mut s = new_search();
            if s.fits(i as usize) {
                s.step(i as usize, cat.budget.area, 0);
            }
            s.sink
        })
        .collect()
}

fn laurent(q_counts: &HashMap<(i64, u32), i64>) -> QTCoeff {
    let mut c = QTCoeff::zero();
    for (&(qe, te), &v) in q_counts {
        c.add_term(qe as i32, te as i32, &rat(v));
    }
    c
}

// ---------------------------------------------------------------- tuple level

/// Truncated element of the tuple-level algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleSeries {
    pub budget: Budget,
    pub terms: BTreeMap<PathTuple, QTCoeff>,
}

impl TupleSeries {
    /// The empty tuple with coefficient 1.
    pub fn one(budget: Budget) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(PathTuple::empty(budget.m, budget.n), QTCoeff::one());
        Self { budget, terms }
    }

    pub fn add(&mut self, t: PathTuple, c: &QTCoeff) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(t.clone()).or_insert_with(QTCoeff::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&t);
        }
    }

    pub fn skeletons(&self) -> SkeletonSeries {
        let mut out = SkeletonSeries::default();
        for (t, c) in &self.terms {
            out.add(t.skeleton(), c);
        }
        out
    }

    pub fn omega(&self) -> OmegaSeries {
        self.skeletons().omega(self.budget)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(t, c)| serde_json::json!({"tuple": t, "coeff": c}))
                .collect(),
        )
    }
}

struct TupleSink(Vec<(Vec<u32>, i64)>);

impl Sink for TupleSink {
    fn leaf(&mut self, _: &Catalog, chosen: &[u32], stat: i64, _: u32) {
        self.0.push((chosen.to_vec(), stat));
    }
}

/// Chains of type `kind` and length `a` within `left` area.
fn chains(cat: &Catalog, kind: SymbolKind, a: i32, left: u32) -> Vec<Vec<u32>> {
    let sl = slots(&[OperatorSymbol { kind, index: a }]);
    let mut s = Search {
        cat,
        slots: &sl,
        cap: None,
        counts: vec![0; cat.budget.labels as usize + 1],
        chosen: Vec::new(),
        c: 0,
        sink: TupleSink(Vec::new()),
    };
    s.rec(left, 0);
    s.sink.0.into_iter().map(|(c, _)| c).collect()
}

/// `s · x`: append every chain that fits, weighted by `q^{Δstat}`.
pub fn apply_symbol(s: OperatorSymbol, x: &TupleSeries) -> TupleSeries {
    let mut out = TupleSeries {
        budget: x.budget,
        terms: BTreeMap::new(),
    };
    match s.normalize() {
        super::Normalized::Zero => return out,
        super::Normalized::One => return x.clone(),
        super::Normalized::Symbol(_) => {}
    }
    let cat = Catalog::get(x.budget);
    for (tau, c) in &x.terms {
        let used = tau.area() as u32;
        if used > x.budget.area {
            continue;
        }
        let before = tau.stats().stat;
        for ch in chains(&cat, s.kind, s.index, x.budget.area - used) {
            let pi = PathTuple::new(ch.iter().map(|&i| cat.paths[i as usize].clone()).collect());
            let t = tau.concat(&pi);
            let delta = t.stats().stat - before;
            out.add(t, &c.shift(delta as i32, 0));
        }
    }
    out
}

/// Tuple-level value of `Σ c_w w · 1`.
pub fn evaluate_tuples(sum: &SignedWordSum, budget: Budget) -> TupleSeries {
    let cat = Catalog::get(budget);
    let mut out = TupleSeries {
        budget,
        terms: BTreeMap::new(),
    };
    for (w, c) in sum.terms() {
        for sink in run_word(&cat, w, None, || TupleSink(Vec::new())) {
            for (chosen, stat) in sink.0 {
                let t = PathTuple::new(
                    chosen
                        .iter()
                        .map(|&i| cat.paths[i as usize].clone())
                        .collect(),
                );
                out.add(t, &c.shift(stat as i32, 0));
            }
        }
    }
    out
}

// ------------------------------------------------------------- skeleton level

/// Finite sum of skeleton monomials with `q,t` coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SkeletonSeries {
    pub terms: BTreeMap<Skeleton, QTCoeff>,
}

impl SkeletonSeries {
    pub fn add(&mut self, z: Skeleton, c: &QTCoeff) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(z.clone()).or_insert_with(QTCoeff::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&z);
        }
    }

    pub fn add_series(&mut self, o: &Self) {
        for (z, c) in &o.terms {
            self.add(z.clone(), c);
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (z, c) in &o.terms {
            out.add(z.clone(), &-c);
        }
        out
    }

    pub fn scale(&self, c: &QTCoeff) -> Self {
        let mut out = Self::default();
        for (z, d) in &self.terms {
            out.add(z.clone(), &(c * d));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `z_{i,j,k} ↦ t^j x_k`, keeping the coefficient of `x^λ` for partitions `λ`.
    pub fn omega(&self, budget: Budget) -> OmegaSeries {
        let mut poly = SymPoly::zero(budget.labels as usize);
        for (z, c) in &self.terms {
            let mut counts = vec![0usize; budget.labels as usize];
            for &(_, _, l) in z.triples() {
                counts[l as usize - 1] += 1;
            }
            if counts.windows(2).any(|w| w[0] < w[1]) {
                continue;
            }
            let lam = Partition::from_unsorted(counts);
            poly.add_term(lam, &QTRatFun::from(c.shift(0, z.area() as i32)));
        }
        OmegaSeries {
            poly,
            max_t: budget.area as i32,
        }
    }
}

struct SkeletonSink(HashMap<(Vec<(u32, u32, u32)>, i64), i64>);

impl Sink for SkeletonSink {
    fn leaf(&mut self, cat: &Catalog, chosen: &[u32], stat: i64, _: u32) {
        let mut z: Vec<(u32, u32, u32)> = chosen
            .iter()
            .flat_map(|&i| cat.triples[i as usize].iter().copied())
            .collect();
        z.sort_unstable();
        *self.0.entry((z, stat)).or_default() += 1;
    }
}

/// Skeleton projection of `Σ c_w w · 1`.
pub fn evaluate_skeletons(sum: &SignedWordSum, budget: Budget) -> SkeletonSeries {
    let cat = Catalog::get(budget);
    let mut out = SkeletonSeries::default();
    for (w, c) in sum.terms() {
        let mut acc: HashMap<Vec<(u32, u32, u32)>, QTCoeff> = HashMap::new();
        for sink in run_word(&cat, w, None, || SkeletonSink(HashMap::new())) {
            for ((z, stat), v) in sink.0 {
                acc.entry(z)
                    .or_insert_with(QTCoeff::zero)
                    .add_term(stat as i32, 0, &rat(v));
            }
        }
        for (z, q) in acc {
            out.add(Skeleton::from_triples(z), &(c * &q));
        }
    }
    out
}

// ---------------------------------------------------------------- Ω level

/// `Ω` of a truncated series: coefficients of `x^λ` (λ a partition), exact for `t`-degree `≤ max_t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaSeries {
    pub poly: SymPoly,
    pub max_t: i32,
}

impl OmegaSeries {
    pub fn zero(nvars: usize, max_t: i32) -> Self {
        Self {
            poly: SymPoly::zero(nvars),
            max_t,
        }
    }

    pub fn truncated(&self, max_t: i32) -> SymPoly {
        self.poly
            .truncate_t(max_t.min(self.max_t))
            .expect("polynomial coefficients")
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            poly: self.poly.add(&o.poly),
            max_t: self.max_t.min(o.max_t),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self {
            poly: self.poly.sub(&o.poly),
            max_t: self.max_t.min(o.max_t),
        }
    }

    /// Multiply by a polynomial in `q,t` with no negative `t` powers.
    pub fn scale(&self, c: &QTCoeff) -> Self {
        Self {
            poly: self.poly.scale_laurent(c),
            max_t: self.max_t,
        }
    }

    pub fn shift_t(&self, dt: i32) -> Self {
        Self {
            poly: self.poly.scale_laurent(&QTCoeff::t_pow(dt)),
            max_t: self.max_t + dt,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            omega_rows(&self.poly)
                .into_iter()
                .map(|(t, lam, c)| serde_json::json!({"t": t, "xexp": lam.parts(), "coeff": c}))
                .collect(),
        )
    }
}

/// `(t-degree, λ, q-coefficient)` rows of a polynomial with Laurent coefficients, by `t` then dominance-descending `λ`.
pub fn omega_rows(poly: &SymPoly) -> Vec<(i32, Partition, QTCoeff)> {
    let terms = poly.laurent_terms().expect("polynomial coefficients");
    let mut rows = Vec::new();
    for (lam, c) in terms {
        let mut by_t: BTreeMap<i32, QTCoeff> = BTreeMap::new();
        for (&(qe, te), v) in c.terms() {
            by_t.entry(te)
                .or_insert_with(QTCoeff::zero)
                .add_term(qe, 0, v);
        }
        for (te, qc) in by_t {
            rows.push((te, lam.clone(), qc));
        }
    }
    rows.sort_by(|a, b| (a.0, std::cmp::Reverse(&a.1)).cmp(&(b.0, std::cmp::Reverse(&b.1))));
    rows
}

struct OmegaSink(HashMap<(i64, u32), i64>);

impl Sink for OmegaSink {
    fn leaf(&mut self, _: &Catalog, _: &[u32], stat: i64, area: u32) {
        *self.0.entry((stat, area)).or_default() += 1;
    }
}

pub fn word_degree(w: &Word) -> usize {
    w.iter().map(|s| s.index.max(0) as usize).sum()
}

/// `Ω(Σ c_w w · 1)` truncated at `t^{budget.area}`.
///
/// Each `x^λ` is counted separately with label multiplicities capped by `λ`, which keeps the
/// search small.
pub fn evaluate_omega(sum: &SignedWordSum, budget: Budget) -> OmegaSeries {
    let cat = Catalog::get(budget);
    let nv = budget.labels as usize;
    let mut out = OmegaSeries::zero(nv, budget.area as i32);
    for (w, c) in sum.terms() {
        let deg = word_degree(w) * budget.n as usize;
        let parts: Vec<Partition> = Partition::all(deg)
            .into_iter()
            .filter(|l| l.len() <= nv)
            .collect();
        let results: Vec<(Partition, QTCoeff)> = parts
            .par_iter()
            .map(|lam| {
                let mut cap = vec![0u32; nv + 1];
                for (i, &p) in lam.parts().iter().enumerate() {
                    cap[i + 1] = p as u32;
                }
                let mut acc: HashMap<(i64, u32), i64> = HashMap::new();
                for sink in run_word(&cat, w, Some(&cap), || OmegaSink(HashMap::new())) {
                    for (k, v) in sink.0 {
                        *acc.entry(k).or_default() += v;
                    }
                }
                (lam.clone(), laurent(&acc))
            })
            .collect();
        for (lam, q) in results {
            if !q.is_zero() {
                out.poly.add_term(lam, &QTRatFun::from(c * &q));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::parse_word;
    use super::*;

    #[test]
    fn incremental_stat_matches_tuple_stats() {
        let budget = Budget::new(3, 2, 3, 3);
        let sum = SignedWordSum::single(parse_word("h1 hhat1 hbar1").unwrap());
        let series = evaluate_tuples(&sum, budget);
        assert!(!series.terms.is_empty());
        for (t, c) in &series.terms {
            let st = t.stats().stat as i32;
            assert_eq!(*c, QTCoeff::q_pow(st));
        }
    }

    #[test]
    fn bar_one_at_two_one() {
        let budget = Budget::new(2, 1, 2, 1);
        let s = evaluate_tuples(&SignedWordSum::single(parse_word("hbar1").unwrap()), budget);
        assert_eq!(s.terms.len(), 1);
        assert!(s.terms.values().next().unwrap().is_one());
        let o = evaluate_omega(
            &SignedWordSum::single(parse_word("hbar1").unwrap()),
            Budget::new(2, 1, 3, 2),
        );
        assert_eq!(o.poly, SymPoly::monomial(Partition::row(1), 2));
    }

    #[test]
    fn projections_agree() {
        let budget = Budget::new(2, 1, 3, 2);
        let sum = SignedWordSum::single(parse_word("hhat1 h1").unwrap());
        let tuples = evaluate_tuples(&sum, budget);
        assert_eq!(tuples.skeletons(), evaluate_skeletons(&sum, budget));
        assert_eq!(tuples.omega(), evaluate_omega(&sum, budget));
    }

    #[test]
    fn apply_telescopes() {
        let budget = Budget::new(3, 2, 3, 2);
        let mut x = TupleSeries::one(budget);
        let w = parse_word("h2 hbar1").unwrap();
        for s in w.iter().rev() {
            x = apply_symbol(*s, &x);
        }
        assert_eq!(x, evaluate_tuples(&SignedWordSum::single(w), budget));
    }
}
