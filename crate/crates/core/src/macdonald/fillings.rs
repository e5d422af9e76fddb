//! Fillings formula for `H̃_μ`: `Σ_σ q^{inv σ} t^{maj σ} x^σ`.

use std::collections::BTreeMap;

use crate::exactalg::{rat, QTCoeff};
use crate::symcore::{distinct_permutations, Partition};

/// Diagram geometry in French convention: row 0 is the bottom (longest) row.
struct Diagram {
    cells: Vec<(usize, usize)>,
    /// index of the cell directly below, if any
    below: Vec<Option<usize>>,
    arm: Vec<usize>,
    leg: Vec<usize>,
    /// attacking pairs `(u, v)` with `u` read before `v`
    attacks: Vec<(usize, usize)>,
}

impl Diagram {
    fn new(mu: &Partition) -> Self {
        let conj = mu.conjugate();
        // reading order: rows top to bottom, left to right
        let mut cells = Vec::new();
        for r in (0..mu.len()).rev() {
            for c in 0..mu.part(r) {
                cells.push((r, c));
            }
        }
        let pos = |r: usize, c: usize| cells.iter().position(|&x| x == (r, c));
        let below = cells
            .iter()
            .map(|&(r, c)| if r == 0 { None } else { pos(r - 1, c) })
            .collect();
        let arm = cells.iter().map(|&(r, c)| mu.part(r) - 1 - c).collect();
        let leg = cells.iter().map(|&(r, c)| conj.part(c) - 1 - r).collect();
        let mut attacks = Vec::new();
        for (i, &(r, c)) in cells.iter().enumerate() {
            for (j, &(r2, c2)) in cells.iter().enumerate() {
                let same_row = r == r2 && c < c2;
                let upper_right = r == r2 + 1 && c > c2;
                if same_row || upper_right {
                    debug_assert!(i < j);
                    attacks.push((i, j));
                }
            }
        }
        Self {
            cells,
            below,
            arm,
            leg,
            attacks,
        }
    }

    fn stats(&self, sigma: &[usize]) -> (i32, i32) {
        let mut inv = 0i32;
        let mut maj = 0i32;
        for &(u, v) in &self.attacks {
            if sigma[u] > sigma[v] {
                inv += 1;
            }
        }
        for u in 0..self.cells.len() {
            if let Some(b) = self.below[u] {
                if sigma[u] > sigma[b] {
                    maj += self.leg[u] as i32 + 1;
                    inv -= self.arm[u] as i32;
                }
            }
        }
        (inv, maj)
    }
}

/// Coefficient of each `m_λ` in `H̃_μ` (independent of the number of variables).
pub fn htilde_monomial_coeffs(mu: &Partition) -> BTreeMap<Partition, QTCoeff> {
    let diagram = Diagram::new(mu);
    let mut out = BTreeMap::new();
    for lam in Partition::all(mu.size()) {
        let mut word: Vec<usize> = Vec::new();
        for (i, &p) in lam.parts().iter().enumerate() {
            word.extend(std::iter::repeat_n(i + 1, p));
        }
        let mut acc = QTCoeff::zero();
        for sigma in distinct_permutations(&word) {
            let (inv, maj) = diagram.stats(&sigma);
            acc.add_term(inv, maj, &rat(1));
        }
        if !acc.is_zero() {
            out.insert(lam, acc);
        }
    }
    out
}
