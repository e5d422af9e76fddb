//! Named verification checks. Each check runs every case for one parameter point and
//! reports the first mismatch it sees.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::bijection::{
    down, enumerate_global_pf, enumerate_ptableaux, gamma, max_global_area, pos_crossings, psi,
    ptab_filter, touch, up, valid_connecting_perms, BijectionError,
};
use crate::ehaops::{
    build_h, build_j, build_jprime, det_expand, evaluate_omega, evaluate_skeletons, pf_touch_sum,
    phi_operator, rhs_main, rhs_wilson, Budget, OpError, OperatorSymbol, SignedWordSum,
    SkeletonSeries, SymbolKind,
};
use crate::exactalg::QTCoeff;
use crate::macdonald::{
    c_alpha, nabla_power, neg_q_pow, schur_expansion, schur_to_calpha, MacError,
};
use crate::paths::enumerate::{enumerate_chains, enumerate_cpf, ChainKind};
use crate::paths::{validate_cpf, LabeledPath, PathError, PathTuple, Skeleton};
use crate::symcore::{basis_vector, Basis, Composition, Partition, SymError, SymPoly};

pub const CHECK_NAMES: [&str; 13] = [
    "sw",
    "qsw",
    "calpha",
    "gamma",
    "nabla-n1",
    "jacobi-trudi",
    "lw",
    "main",
    "wilson",
    "cycling",
    "resheet",
    "counts",
    "positivity",
];

#[derive(Debug, Error)]
pub enum CheckError {
    #[error("unknown check {0:?}")]
    UnknownCheck(String),
    #[error("area budget {area} with guard {guard} at order {k} leaves no comparable t-degree")]
    BudgetTooSmall { area: u32, guard: u32, k: usize },
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error(transparent)]
    Op(#[from] OpError),
    #[error(transparent)]
    Mac(#[from] MacError),
    #[error(transparent)]
    Sym(#[from] SymError),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Bijection(#[from] BijectionError),
}

/// Parameters shared by all checks. Unset budgets fall back to per-check defaults.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckParams {
    pub m: u32,
    pub n: u32,
    pub k: usize,
    pub alpha: Option<Composition>,
    pub lambda: Option<Partition>,
    pub area: Option<u32>,
    pub labels: Option<u32>,
    pub guard: u32,
}

impl CheckParams {
    pub fn new(m: u32, n: u32, k: usize) -> Self {
        Self {
            m,
            n,
            k,
            alpha: None,
            lambda: None,
            area: None,
            labels: None,
            guard: 1,
        }
    }

    pub fn area(mut self, a: u32) -> Self {
        self.area = Some(a);
        self
    }

    pub fn labels(mut self, l: u32) -> Self {
        self.labels = Some(l);
        self
    }

    pub fn alpha(mut self, a: Composition) -> Self {
        self.alpha = Some(a);
        self
    }

    pub fn lambda(mut self, l: Partition) -> Self {
        self.lambda = Some(l);
        self
    }

    pub fn guard(mut self, g: u32) -> Self {
        self.guard = g;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

/// First disagreement: the case that failed, the graded component and both values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub case: String,
    pub t: Option<i32>,
    pub xexp: Option<Vec<usize>>,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub params: CheckParams,
    pub verdict: Verdict,
    pub cases: usize,
    pub witness: Option<Witness>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn summary(&self) -> String {
        let p = &self.params;
        let mut s = format!(
            "{} {:?} (m,n)=({},{}) k={} cases={} [{:.2?}]",
            self.name, self.verdict, p.m, p.n, p.k, self.cases, self.elapsed
        );
        if let Some(w) = &self.witness {
            s.push_str(&format!(
                " witness: {} t={:?} x={:?} left={} right={}",
                w.case, w.t, w.xexp, w.left, w.right
            ));
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

#[derive(Default)]
struct Tally {
    cases: usize,
    witness: Option<Witness>,
}

impl Tally {
    fn record(&mut self, w: Option<Witness>) {
        self.cases += 1;
        if self.witness.is_none() {
            self.witness = w;
        }
    }

    fn expect(&mut self, ok: bool, case: impl FnOnce() -> Witness) {
        self.record(if ok { None } else { Some(case()) });
    }
}

fn plain(case: String, left: impl ToString, right: impl ToString) -> Witness {
    Witness {
        case,
        t: None,
        xexp: None,
        left: left.to_string(),
        right: right.to_string(),
    }
}

/// First `(t, λ)` component, in that order, where two polynomials differ.
pub fn compare_poly(case: &str, left: &SymPoly, right: &SymPoly) -> Option<Witness> {
    if left == right {
        return None;
    }
    let (Ok(l), Ok(r)) = (left.laurent_terms(), right.laurent_terms()) else {
        return Some(plain(case.into(), left, right));
    };
    let zero = QTCoeff::zero();
    let mut keys: BTreeSet<(i32, Partition)> = BTreeSet::new();
    for (lam, c) in l.iter().chain(r.iter()) {
        for ((_, te), _) in c.terms() {
            keys.insert((*te, lam.clone()));
        }
    }
    for (te, lam) in keys {
        let a = l.get(&lam).unwrap_or(&zero).t_slice(te);
        let b = r.get(&lam).unwrap_or(&zero).t_slice(te);
        if a != b {
            return Some(Witness {
                case: case.into(),
                t: Some(te),
                xexp: Some(lam.parts().to_vec()),
                left: a.to_string(),
                right: b.to_string(),
            });
        }
    }
    Some(plain(case.into(), left, right))
}

fn compare_skeletons(case: &str, left: &SkeletonSeries, right: &SkeletonSeries) -> Option<Witness> {
    let diff = left.sub(right);
    let (z, _) = diff.terms.iter().next()?;
    let get = |s: &SkeletonSeries| s.terms.get(z).cloned().unwrap_or_else(QTCoeff::zero);
    Some(Witness {
        case: format!("{case} at {z}"),
        t: Some(z.area() as i32),
        xexp: Some(z.content().iter().map(|&c| c as usize).collect()),
        left: get(left).to_string(),
        right: get(right).to_string(),
    })
}

fn sym(kind: SymbolKind, index: i32) -> OperatorSymbol {
    OperatorSymbol { kind, index }
}

fn words(terms: &[(i64, Vec<OperatorSymbol>)]) -> SignedWordSum {
    let mut out = SignedWordSum::new();
    for (c, w) in terms {
        out.add_symbols(w, &QTCoeff::from_int(*c));
    }
    out
}

fn short_prefixes() -> Vec<Vec<OperatorSymbol>> {
    vec![
        vec![],
        vec![OperatorSymbol::h(1)],
        vec![OperatorSymbol::hhat(1)],
        vec![OperatorSymbol::hbar(1)],
    ]
}

fn label_word(w: &[OperatorSymbol]) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        w.iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// `∇^m f` in `nvars` variables, truncated at `t^max_t`.
fn nabla_oracle(f: &SymPoly, m: u32, nvars: usize, max_t: i32) -> Result<SymPoly, CheckError> {
    let deg = f.degrees().into_iter().max().unwrap_or(0).max(1);
    let full = nabla_power(f, m as i32, nvars.max(deg))?;
    Ok(full.with_nvars(nvars).truncate_t(max_t)?)
}

fn need_n1(p: &CheckParams, name: &str) -> Result<(), CheckError> {
    if p.n != 1 {
        return Err(CheckError::BadParams(format!("{name} needs n = 1")));
    }
    Ok(())
}

fn window(p: &CheckParams, area: u32) -> Result<i32, CheckError> {
    let w = area as i64 - (p.guard as i64) * p.k as i64;
    if w < 0 {
        return Err(CheckError::BudgetTooSmall {
            area,
            guard: p.guard,
            k: p.k,
        });
    }
    Ok(w as i32)
}

fn check_sw(p: &CheckParams) -> Result<Tally, CheckError> {
    let b = Budget::new(p.m, p.n, p.area.unwrap_or(4), p.labels.unwrap_or(4));
    let top = p.k.max(2) as i32;
    let mut t = Tally::default();
    for kind in [SymbolKind::H, SymbolKind::Hhat, SymbolKind::Hbar] {
        for a in 1..=top {
            for c in a + 1..=top {
                let w1 = vec![sym(kind, a), sym(kind, c)];
                let w2 = vec![sym(kind, c), sym(kind, a)];
                let l = evaluate_skeletons(&SignedWordSum::single(w1.clone()), b);
                let r = evaluate_skeletons(&SignedWordSum::single(w2.clone()), b);
                t.record(compare_skeletons(
                    &format!("{} vs {}", label_word(&w1), label_word(&w2)),
                    &l,
                    &r,
                ));
            }
        }
    }
    Ok(t)
}

fn check_qsw(p: &CheckParams) -> Result<Tally, CheckError> {
    let b = Budget::new(p.m, p.n, p.area.unwrap_or(4), p.labels.unwrap_or(4));
    let top = p.k.max(2) as i32;
    let mut t = Tally::default();
    for a in 1..=top {
        for c in 1..=top {
            for v in short_prefixes() {
                let with = |x: OperatorSymbol, y: OperatorSymbol| {
                    let mut w = v.clone();
                    w.extend([x, y]);
                    w
                };
                let (hh, hb) = (OperatorSymbol::hhat, OperatorSymbol::hbar);
                let lhs = words(&[(1, with(hh(c), hb(a))), (-1, with(hh(a - 1), hb(c + 1)))])
                    .scale(&QTCoeff::q());
                let rhs = words(&[(1, with(hb(a), hh(c))), (-1, with(hb(c + 1), hh(a - 1)))]);
                let l = evaluate_skeletons(&lhs, b);
                let r = evaluate_skeletons(&rhs, b);
                t.record(compare_skeletons(
                    &format!("a={a} b={c} prefix {}", label_word(&v)),
                    &l,
                    &r,
                ));
            }
        }
    }
    Ok(t)
}

fn compositions(p: &CheckParams) -> Vec<Composition> {
    match &p.alpha {
        Some(a) => vec![a.clone()],
        None => Composition::all(p.k),
    }
}

fn check_calpha(p: &CheckParams) -> Result<Tally, CheckError> {
    let mut t = Tally::default();
    for alpha in compositions(p) {
        let k = alpha.size();
        let labels = p.labels.unwrap_or((k * p.n as usize) as u32);
        let area = max_global_area(p.m, p.n, k);
        let lhs = evaluate_omega(
            &det_expand(&build_h(&alpha)),
            Budget::new(p.m, p.n, area, labels),
        )
        .truncated(area as i32);
        let rhs = pf_touch_sum(p.m, p.n, k, Some(&alpha), labels);
        t.record(compare_poly(&format!("H{alpha}"), &lhs, &rhs));
    }
    Ok(t)
}

fn check_gamma(p: &CheckParams) -> Result<Tally, CheckError> {
    let (m, n, k) = (p.m, p.n, p.k);
    let labels = p.labels.unwrap_or((k * n as usize) as u32);
    let pfs = enumerate_global_pf(m, n, k, labels);
    let tabs = enumerate_ptableaux(m, n, k, max_global_area(m, n, k), labels);
    let mut t = Tally::default();
    t.expect(pfs.len() == tabs.len(), || {
        plain("|PTab| vs |PF|".into(), tabs.len(), pfs.len())
    });
    let mut by_touch: BTreeMap<Composition, usize> = BTreeMap::new();
    for g in &pfs {
        *by_touch.entry(touch(g)).or_default() += 1;
    }
    for alpha in Composition::all(k) {
        let c = ptab_filter(&tabs, &alpha).len();
        let d = by_touch.get(&alpha).copied().unwrap_or(0);
        t.expect(c == d, || {
            plain(format!("|PTab(k;{alpha})| vs touch count"), c, d)
        });
    }
    for tab in &tabs {
        let g = gamma(tab)?;
        let back = psi(&g)?;
        t.expect(back == *tab, || {
            plain(
                "psi(gamma(T)) = T".into(),
                format!("{back:?}"),
                format!("{tab:?}"),
            )
        });
        let (a, b) = (tab.stats(), g.stats());
        t.expect(tab.skeleton() == g.skeleton(), || {
            plain("skeleton preserved".into(), tab.skeleton(), g.skeleton())
        });
        t.expect(
            a.pdinv + a.ldinv == b.pdinv + b.ldinv && a.area == b.area,
            || {
                plain(
                    format!("dinv preserved on {tab:?}"),
                    a.pdinv + a.ldinv,
                    b.pdinv + b.ldinv,
                )
            },
        );
    }
    for g in &pfs {
        let back = gamma(&psi(g)?)?;
        t.expect(back == *g, || {
            plain(
                "gamma(psi(g)) = g".into(),
                format!("{back:?}"),
                format!("{g:?}"),
            )
        });
    }
    Ok(t)
}

fn standard_functions(p: &CheckParams) -> Vec<(String, Basis, Partition)> {
    if let Some(l) = &p.lambda {
        return vec![(format!("s{l}"), Basis::S, l.clone())];
    }
    let part = |v: Vec<usize>| Partition::new(v).expect("valid");
    [
        ("e1", Basis::E, part(vec![1])),
        ("e2", Basis::E, part(vec![1, 1])),
        ("h2", Basis::H, part(vec![2])),
        ("s21", Basis::S, part(vec![2, 1])),
        ("s111", Basis::S, part(vec![1, 1, 1])),
    ]
    .into_iter()
    .filter(|(_, _, l)| l.size() <= p.k)
    .map(|(s, b, l)| (s.to_string(), b, l))
    .collect()
}

fn check_nabla_n1(p: &CheckParams) -> Result<Tally, CheckError> {
    need_n1(p, "nabla-n1")?;
    let mut t = Tally::default();
    let mut cases: Vec<(String, usize, SignedWordSum, SymPoly)> = Vec::new();
    if p.alpha.is_none() {
        for (name, basis, lam) in standard_functions(p) {
            let d = lam.size();
            let f = basis_vector(basis, &lam, d);
            cases.push((format!("Phi({name})"), d, phi_operator(&f)?, f));
        }
    }
    if p.lambda.is_none() {
        let alphas = match &p.alpha {
            Some(a) => vec![a.clone()],
            None => (1..=p.k).flat_map(Composition::all).collect(),
        };
        for alpha in alphas {
            let d = alpha.size();
            cases.push((
                format!("H{alpha}"),
                d,
                det_expand(&build_h(&alpha)),
                c_alpha(&alpha, d)?,
            ));
        }
    }
    for (case, d, sum, f) in cases {
        let labels = p.labels.unwrap_or(d as u32);
        let area = p.area.unwrap_or(max_global_area(p.m, 1, d));
        let lhs = evaluate_omega(&sum, Budget::new(p.m, 1, area, labels)).truncated(area as i32);
        let rhs = nabla_oracle(&f, p.m, labels as usize, area as i32)?;
        t.record(compare_poly(&case, &lhs, &rhs));
    }
    Ok(t)
}

fn partitions(p: &CheckParams) -> Vec<Partition> {
    match &p.lambda {
        Some(l) => vec![l.clone()],
        None => (1..=p.k).flat_map(Partition::all).collect(),
    }
}

/// Shared driver for `jacobi-trudi` and `lw`: `left(λ)` must equal `Φ(s_λ)` on skeletons, and `∇^m s_λ` when `n = 1`.
fn check_schur_forms(
    p: &CheckParams,
    tag: &str,
    left: impl Fn(&Partition) -> Result<SignedWordSum, CheckError>,
) -> Result<Tally, CheckError> {
    let mut t = Tally::default();
    for lam in partitions(p) {
        let d = lam.size();
        let labels = p.labels.unwrap_or((d * p.n as usize) as u32);
        let sl = basis_vector(Basis::S, &lam, d);
        let sum = left(&lam)?;
        if p.n == 1 {
            let area = p.area.unwrap_or(max_global_area(p.m, 1, d));
            let lhs =
                evaluate_omega(&sum, Budget::new(p.m, 1, area, labels)).truncated(area as i32);
            let rhs = nabla_oracle(&sl, p.m, labels as usize, area as i32)?;
            t.record(compare_poly(&format!("{tag}{lam} vs nabla"), &lhs, &rhs));
        }
        let b = Budget::new(p.m, p.n, p.area.unwrap_or(4), labels);
        let l = evaluate_skeletons(&sum, b);
        let r = evaluate_skeletons(&phi_operator(&sl)?, b);
        t.record(compare_skeletons(
            &format!("{tag}{lam} vs Phi(s{lam})"),
            &l,
            &r,
        ));
    }
    Ok(t)
}

fn check_jacobi_trudi(p: &CheckParams) -> Result<Tally, CheckError> {
    check_schur_forms(p, "J", |lam| Ok(det_expand(&build_j(lam)?)))
}

fn check_lw(p: &CheckParams) -> Result<Tally, CheckError> {
    check_schur_forms(p, "J'", |lam| {
        let jp = build_jprime(lam)?;
        Ok(det_expand(&jp.matrix).scale(&neg_q_pow(jp.adj)))
    })
}

fn main_budget(p: &CheckParams) -> (u32, u32) {
    let area = p.area.unwrap_or(if p.n == 1 { 5 } else { 6 });
    (area, p.labels.unwrap_or((p.k * p.n as usize) as u32))
}

/// `Σ_λ f^λ Σ_α d_{λ,α} · (touch-α sum)`, the combinatorial side assembled without operators.
pub fn assembled_main(m: u32, n: u32, k: usize, labels: u32) -> Result<SymPoly, CheckError> {
    let e1k = basis_vector(Basis::E, &Partition::row(1), k).pow(k as u32);
    let mut out = SymPoly::zero(labels as usize);
    for (lam, f) in &schur_expansion(&e1k)?.coeffs {
        for (alpha, d) in schur_to_calpha(lam) {
            let pf = pf_touch_sum(m, n, k, Some(&alpha), labels);
            out.add_assign(&pf.scale(&f.mul_laurent(&d)));
        }
    }
    Ok(out)
}

fn check_main(p: &CheckParams) -> Result<Tally, CheckError> {
    let (area, labels) = main_budget(p);
    let w = window(p, area)?;
    let got = rhs_main(p.m, p.n, p.k, area, labels).truncated(w);
    let want = if p.n == 1 {
        let e1k = basis_vector(Basis::E, &Partition::row(1), p.k).pow(p.k as u32);
        nabla_oracle(&e1k, p.m, labels as usize, w)?
    } else {
        assembled_main(p.m, p.n, p.k, labels)?.truncate_t(w)?
    };
    let mut t = Tally::default();
    t.record(compare_poly(
        if p.n == 1 {
            "main vs nabla"
        } else {
            "main vs touch sums"
        },
        &got,
        &want,
    ));
    Ok(t)
}

fn check_wilson(p: &CheckParams) -> Result<Tally, CheckError> {
    if p.k == 0 {
        return Err(CheckError::BadParams("wilson needs k >= 1".into()));
    }
    let (area, labels) = main_budget(p);
    let w = window(p, area)?;
    let a = rhs_main(p.m, p.n, p.k, area, labels).truncated(w);
    let b = rhs_wilson(p.m, p.n, p.k, area, labels).truncated(w);
    let mut t = Tally::default();
    t.record(compare_poly("main vs wilson", &a, &b));
    Ok(t)
}

/// Every `k`-tuple of cyclic parking functions with total area at most `area`.
fn small_tuples(m: u32, n: u32, k: usize, area: u32, labels: u32) -> Vec<PathTuple> {
    let pool = enumerate_cpf(m, n, area, labels);
    let mut out = Vec::new();
    fn rec(
        pool: &[LabeledPath],
        k: usize,
        left: i64,
        cur: &mut Vec<LabeledPath>,
        out: &mut Vec<PathTuple>,
    ) {
        if cur.len() == k {
            out.push(PathTuple::new(cur.clone()));
            return;
        }
        for p in pool {
            if p.area() > left {
                break;
            }
            cur.push(p.clone());
            rec(pool, k, left - p.area(), cur, out);
            cur.pop();
        }
    }
    rec(&pool, k, area as i64, &mut Vec::new(), &mut out);
    out
}

fn small_budget(p: &CheckParams) -> (u32, u32) {
    (p.area.unwrap_or(3), p.labels.unwrap_or(3))
}

fn check_cycling(p: &CheckParams) -> Result<Tally, CheckError> {
    let (area, labels) = small_budget(p);
    let mut t = Tally::default();
    for tup in small_tuples(p.m, p.n, p.k.max(1), area, labels) {
        let mut comps = tup.components.clone();
        let last = comps.pop().expect("nonempty");
        comps.insert(0, up(&last));
        let cyc = PathTuple::new(comps);
        let (a, b) = (tup.stats().stat, cyc.stats().stat);
        t.expect(a == b, || plain(format!("stat cycling on {tup:?}"), a, b));
    }
    let b = Budget::new(p.m, p.n, area, labels);
    for a in 1..=2 {
        for v in short_prefixes() {
            let mut lw = v.clone();
            lw.push(OperatorSymbol::hhat(a));
            let mut rw = vec![OperatorSymbol::h(a)];
            rw.extend(v.iter().copied());
            let l = evaluate_omega(&words(&[(1, lw.clone())]), b).truncated(area as i32);
            let r = evaluate_omega(&words(&[(1, rw.clone())]), b)
                .shift_t(a)
                .truncated(area as i32);
            t.record(compare_poly(
                &format!(
                    "Omega({}) vs t^{a} Omega({})",
                    label_word(&lw),
                    label_word(&rw)
                ),
                &l,
                &r,
            ));
        }
    }
    Ok(t)
}

fn pd_ld_pos(t: &PathTuple) -> Result<i64, CheckError> {
    let s = t.stats();
    Ok(s.pdinv + s.ldinv + pos_crossings(t)?)
}

fn check_resheet(p: &CheckParams) -> Result<Tally, CheckError> {
    const SAMPLE: usize = 500;
    let (area, labels) = small_budget(p);
    let k = p.k.max(1);
    let all = small_tuples(p.m, p.n, k, area, labels);
    let stride = all.len().div_ceil(SAMPLE).max(1);
    let mut t = Tally::default();
    for tup in all.iter().step_by(stride) {
        let base = pd_ld_pos(tup)?;
        let mut order: Vec<usize> = (0..k).collect();
        let mut orders = Vec::new();
        crate::bijection::permutations(&mut order, 0, &mut |o| orders.push(o.to_vec()));
        for o in orders {
            let re = PathTuple::new(o.iter().map(|&i| tup.components[i].clone()).collect());
            let v = pd_ld_pos(&re)?;
            t.expect(v == base, || {
                plain(format!("resheet {o:?} of {tup:?}"), base, v)
            });
        }
        // Independence of the connecting permutation only holds up to two components.
        if k <= 2 {
            let pos0 = pos_crossings(tup)?;
            for phi in valid_connecting_perms(tup) {
                let v = pos_crossings(&PathTuple::with_perm(tup.components.clone(), phi.clone()))?;
                t.expect(v == pos0, || {
                    plain(format!("pos under {phi:?} for {tup:?}"), pos0, v)
                });
            }
        }
    }
    // The q-increment of appending a chain depends only on the skeleton of what it is appended to.
    let base_len = k.saturating_sub(1).max(1);
    let mut groups: BTreeMap<Skeleton, Vec<PathTuple>> = BTreeMap::new();
    for b in small_tuples(p.m, p.n, base_len, area.saturating_sub(1), labels) {
        groups.entry(b.skeleton()).or_default().push(b);
    }
    for (z, group) in groups.iter().filter(|(_, g)| g.len() > 1) {
        let left = area - z.area();
        for len in 1..=2 {
            for chain in enumerate_chains(ChainKind::All, len, p.m, p.n, left, labels) {
                let c = PathTuple::new(chain);
                let incs: Vec<i64> = group
                    .iter()
                    .map(|x| x.concat(&c).stats().stat - x.stats().stat)
                    .collect();
                t.expect(incs.iter().all(|&d| d == incs[0]), || {
                    plain(
                        format!("stat increment over skeleton {z}"),
                        incs[0],
                        format!("{incs:?}"),
                    )
                });
            }
        }
    }
    Ok(t)
}

/// Among `k`-tuples admitting several connecting permutations, how many get different `pos` values.
pub fn pos_phi_dependence(
    m: u32,
    n: u32,
    k: usize,
    area: u32,
    labels: u32,
) -> Result<(usize, usize), CheckError> {
    let (mut several, mut dependent) = (0, 0);
    for tup in small_tuples(m, n, k, area, labels) {
        let perms = valid_connecting_perms(&tup);
        if perms.len() < 2 {
            continue;
        }
        several += 1;
        let pos0 = pos_crossings(&tup)?;
        for phi in perms {
            if pos_crossings(&PathTuple::with_perm(tup.components.clone(), phi))? != pos0 {
                dependent += 1;
                break;
            }
        }
    }
    Ok((several, dependent))
}

fn check_counts(p: &CheckParams) -> Result<Tally, CheckError> {
    let (m, n, k) = (p.m, p.n, p.k.max(1));
    let labels = p.labels.unwrap_or((k * n as usize) as u32);
    let mut t = Tally::default();
    let pfs = enumerate_global_pf(m, n, k, labels);
    let tabs = enumerate_ptableaux(m, n, k, max_global_area(m, n, k), labels);
    t.expect(pfs.len() == tabs.len(), || {
        plain("|PTab| vs |PF|".into(), tabs.len(), pfs.len())
    });
    // up: CH_1 -> hat CH_1, raising area by one.
    let area = p.area.unwrap_or(4);
    let ch = enumerate_cpf(m, n, area, labels);
    let hats: BTreeSet<LabeledPath> = enumerate_cpf(m, n, area + 1, labels)
        .into_iter()
        .filter(|q| !q.is_bar())
        .collect();
    let mut image = BTreeSet::new();
    for q in &ch {
        let u = up(q);
        let ok =
            validate_cpf(&u).valid && !u.is_bar() && u.area() == q.area() + 1 && down(&u) == *q;
        t.expect(ok, || {
            plain(format!("up({q})"), &u, format!("area {}", q.area() + 1))
        });
        image.insert(u);
    }
    t.expect(image == hats, || {
        plain("up image vs hat chains".into(), image.len(), hats.len())
    });
    Ok(t)
}

fn check_positivity(p: &CheckParams) -> Result<Tally, CheckError> {
    if p.k == 0 {
        return Err(CheckError::BadParams("positivity needs k >= 1".into()));
    }
    let (area, labels) = main_budget(p);
    let mut w = vec![OperatorSymbol::h(1); p.k - 1];
    w.push(OperatorSymbol::hbar(1));
    let om = evaluate_omega(
        &SignedWordSum::single(w),
        Budget::new(p.m, p.n, area, labels),
    )
    .truncated(area as i32);
    let mut t = Tally::default();
    for (lam, c) in &schur_expansion(&om)?.coeffs {
        let ok = c
            .as_laurent()
            .is_some_and(|c| c.has_nonnegative_integer_coeffs());
        t.expect(ok, || Witness {
            case: "Schur coefficient".into(),
            t: None,
            xexp: Some(lam.parts().to_vec()),
            left: c.to_string(),
            right: ">= 0".into(),
        });
    }
    Ok(t)
}

/// Run one named check at one parameter point.
pub fn run_check(name: &str, p: &CheckParams) -> Result<CheckReport, CheckError> {
    let start = Instant::now();
    let tally = match name {
        "sw" => check_sw(p)?,
        "qsw" => check_qsw(p)?,
        "calpha" => check_calpha(p)?,
        "gamma" => check_gamma(p)?,
        "nabla-n1" => check_nabla_n1(p)?,
        "jacobi-trudi" => check_jacobi_trudi(p)?,
        "lw" => check_lw(p)?,
        "main" => check_main(p)?,
        "wilson" => check_wilson(p)?,
        "cycling" => check_cycling(p)?,
        "resheet" => check_resheet(p)?,
        "counts" => check_counts(p)?,
        "positivity" => check_positivity(p)?,
        other => return Err(CheckError::UnknownCheck(other.into())),
    };
    let verdict = match (&tally.witness, tally.cases) {
        (Some(_), _) => Verdict::Fail,
        (None, 0) => Verdict::Skipped,
        (None, _) => Verdict::Pass,
    };
    Ok(CheckReport {
        name: name.into(),
        params: p.clone(),
        verdict,
        cases: tally.cases,
        witness: tally.witness,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_name() {
        assert!(matches!(
            run_check("nope", &CheckParams::new(1, 1, 1)),
            Err(CheckError::UnknownCheck(_))
        ));
    }

    #[test]
    fn guard_leaves_nothing() {
        let p = CheckParams::new(2, 1, 3).area(2);
        assert!(matches!(
            run_check("main", &p),
            Err(CheckError::BudgetTooSmall { .. })
        ));
    }

    #[test]
    fn calpha_single_part() {
        let p = CheckParams::new(2, 1, 1).alpha(Composition::new(vec![1]).unwrap());
        let r = run_check("calpha", &p).unwrap();
        assert!(r.passed(), "{}", r.summary());
    }

    #[test]
    fn nabla_e1() {
        let p = CheckParams::new(2, 1, 1).lambda(Partition::new(vec![1]).unwrap());
        let r = run_check("nabla-n1", &p).unwrap();
        assert!(r.passed());
        assert_eq!(r.cases, 1);
    }

    #[test]
    fn gamma_one_one() {
        let r = run_check("gamma", &CheckParams::new(1, 1, 2)).unwrap();
        assert!(r.passed(), "{}", r.summary());
    }

    #[test]
    fn witness_points_at_first_component() {
        let a = basis_vector(Basis::E, &Partition::row(1), 2);
        let b = a.scale_laurent(&QTCoeff::t());
        let w = compare_poly("x", &a, &b).unwrap();
        assert_eq!((w.t, w.xexp.clone()), (Some(0), Some(vec![1])));
        assert_eq!(w.right, "0");
    }
}
