//! Right-hand sides: chain sums over `cPF^k`, the variant through the origin, and the finite
//! parking-function sums grouped by touch composition.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::engine::{evaluate_omega, Budget, OmegaSeries};
use super::{OpError, OperatorSymbol, SignedWordSum};
use crate::bijection::{touch, GlobalParkingFunction};
use crate::exactalg::{rat, QTCoeff, QTRatFun};
use crate::paths::line_x;
use crate::symcore::{Composition, Partition, SymPoly};

/// `Ω(Σ c_w w · 1)`; alias kept for call sites that read better with it.
pub fn omega_of_sum(sum: &SignedWordSum, budget: Budget) -> OmegaSeries {
    evaluate_omega(sum, budget)
}

fn h1_power(k: usize, last: Option<OperatorSymbol>) -> SignedWordSum {
    let mut w = vec![OperatorSymbol::h(1); k];
    if let Some(s) = last {
        w.push(s);
    }
    SignedWordSum::single(w)
}

/// `(1-t)^k Ω(𝔥_1^k · 1)`.
pub fn rhs_main(m: u32, n: u32, k: usize, area: u32, labels: u32) -> OmegaSeries {
    let o = evaluate_omega(&h1_power(k, None), Budget::new(m, n, area, labels));
    o.scale(&QTCoeff::one_minus_t_pow(k as u32))
}

/// `(1-t)^{k-1} Ω(𝔥_1^{k-1} 𝔥̄_1 · 1)`.
pub fn rhs_wilson(m: u32, n: u32, k: usize, area: u32, labels: u32) -> OmegaSeries {
    assert!(k >= 1, "order must be positive");
    let o = evaluate_omega(
        &h1_power(k - 1, Some(OperatorSymbol::hbar(1))),
        Budget::new(m, n, area, labels),
    );
    o.scale(&QTCoeff::one_minus_t_pow(k as u32 - 1))
}

/// `c_λ`: coefficient of `h_λ[Y]` in `f[(1-t)Y]`.
pub fn clambda(f: &SymPoly) -> Result<BTreeMap<Partition, QTCoeff>, OpError> {
    let mut out = BTreeMap::new();
    for (lam, c) in super::one_minus_t_h(f)? {
        let c = c
            .as_laurent()
            .ok_or(OpError::Sym(crate::symcore::SymError::NotPolynomial))?
            .clone();
        out.insert(lam, c);
    }
    Ok(out)
}

/// Every global parking function whose label multiset is exactly `lam` (label `i` used `λ_i` times).
fn pfs_with_content(m: u32, n: u32, k: usize, lam: &Partition) -> Vec<GlobalParkingFunction> {
    let len = k * n as usize;
    let mut cap: Vec<u32> = lam.parts().iter().map(|&p| p as u32).collect();
    let nl = cap.len() as u32;
    let mut out = Vec::new();
    let mut xs = Vec::with_capacity(len);
    let mut ls = Vec::with_capacity(len);
    #[allow(clippy::too_many_arguments)]
    fn rec(
        m: u32,
        n: u32,
        k: usize,
        nl: u32,
        cap: &mut Vec<u32>,
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
            for l in lmin..=nl {
                if cap[l as usize - 1] == 0 {
                    continue;
                }
                cap[l as usize - 1] -= 1;
                xs.push(x);
                ls.push(l);
                rec(m, n, k, nl, cap, xs, ls, out);
                xs.pop();
                ls.pop();
                cap[l as usize - 1] += 1;
            }
        }
    }
    rec(m, n, k, nl, &mut cap, &mut xs, &mut ls, &mut out);
    out
}

/// `Σ q^{stat} t^{area} x^f` over `PF_{km,kn}` with `touch = α` (all of them when `alpha` is `None`),
/// as coefficients of `x^λ` in `labels` variables.
pub fn pf_touch_sum(m: u32, n: u32, k: usize, alpha: Option<&Composition>, labels: u32) -> SymPoly {
    let deg = k * n as usize;
    let nv = labels as usize;
    let parts: Vec<Partition> = Partition::all(deg)
        .into_iter()
        .filter(|l| l.len() <= nv)
        .collect();
    let rows: Vec<(Partition, QTCoeff)> = parts
        .par_iter()
        .map(|lam| {
            let mut c = QTCoeff::zero();
            for g in pfs_with_content(m, n, k, lam) {
                if alpha.is_none_or(|a| touch(&g) == *a) {
                    c.add_term(g.stats().stat as i32, g.area() as i32, &rat(1));
                }
            }
            (lam.clone(), c)
        })
        .collect();
    let mut out = SymPoly::zero(nv);
    for (lam, c) in rows {
        if !c.is_zero() {
            out.add_term(lam, &QTRatFun::from(c));
        }
    }
    out
}
