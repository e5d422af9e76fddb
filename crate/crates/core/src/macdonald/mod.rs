//! Modified Macdonald polynomials, `∇` and the operators `C_a`.

mod fillings;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

use crate::exactalg::{QTCoeff, QTRatFun};
use crate::symcore::{
    basis_vector, expand_in_basis, plethysm_hmz, skew_by_e, Basis, BasisExpansion, Composition,
    Partition, SymError, SymPoly,
};

pub use fillings::htilde_monomial_coeffs;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MacError {
    #[error("{nvars} variables cannot faithfully hold degree {degree}")]
    TooFewVariables { degree: usize, nvars: usize },
    #[error("Macdonald table of degree {0} is singular")]
    SingularTable(usize),
    #[error(transparent)]
    Sym(#[from] SymError),
}

/// `T_μ = t^{n(μ)} q^{n(μ')}`.
pub fn t_mu(mu: &Partition) -> QTCoeff {
    QTCoeff::monomial(
        crate::exactalg::rat(1),
        mu.conjugate().n_stat() as i32,
        mu.n_stat() as i32,
    )
}

/// `H̃_μ[X; q, t]` in `n` variables.
pub fn htilde(mu: &Partition, n: usize) -> Result<SymPoly, MacError> {
    if n < mu.size() {
        return Err(MacError::TooFewVariables {
            degree: mu.size(),
            nvars: n,
        });
    }
    let mut out = SymPoly::zero(n);
    for (lam, c) in htilde_monomial_coeffs(mu) {
        out.add_term(lam, &QTRatFun::from(c));
    }
    Ok(out)
}

/// The modified Macdonald basis of one degree, with its inverse change of basis.
#[derive(Debug)]
pub struct MacdonaldTable {
    pub degree: usize,
    pub nvars: usize,
    pub entries: BTreeMap<Partition, SymPoly>,
    pub eigen: BTreeMap<Partition, QTCoeff>,
    parts: Vec<Partition>,
    index: HashMap<Partition, usize>,
    /// `inv[λ][μ]`: coefficient of `H̃_μ` in `m_λ`.
    inv: Vec<Vec<QTRatFun>>,
}

impl MacdonaldTable {
    pub fn build(degree: usize, nvars: usize) -> Result<Self, MacError> {
        if nvars < degree {
            return Err(MacError::TooFewVariables { degree, nvars });
        }
        let parts = Partition::all(degree);
        let index: HashMap<Partition, usize> = parts
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let mut entries = BTreeMap::new();
        let mut eigen = BTreeMap::new();
        let mut mat = vec![vec![QTRatFun::zero(); parts.len()]; parts.len()];
        for (i, mu) in parts.iter().enumerate() {
            let h = htilde(mu, nvars)?;
            for (lam, c) in h.terms() {
                mat[i][index[lam]] = c.clone();
            }
            entries.insert(mu.clone(), h);
            eigen.insert(mu.clone(), t_mu(mu));
        }
        let inv = invert(mat).ok_or(MacError::SingularTable(degree))?;
        Ok(Self {
            degree,
            nvars,
            entries,
            eigen,
            parts,
            index,
            inv,
        })
    }

    /// Coordinates of a homogeneous degree-`d` polynomial in the `H̃` basis.
    pub fn coordinates(&self, f: &SymPoly) -> BTreeMap<Partition, QTRatFun> {
        let mut acc = vec![QTRatFun::zero(); self.parts.len()];
        for (lam, c) in f.terms() {
            let row = &self.inv[self.index[lam]];
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    acc[j] = &acc[j] + &(c * x);
                }
            }
        }
        self.parts
            .iter()
            .cloned()
            .zip(acc)
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .entries
            .iter()
            .rev()
            .map(|(mu, h)| serde_json::json!({"partition": mu, "eigen": self.eigen[mu], "htilde": sympoly_json(h)}))
            .collect();
        serde_json::json!({"degree": self.degree, "nvars": self.nvars, "entries": rows})
    }
}

pub fn sympoly_json(f: &SymPoly) -> serde_json::Value {
    let terms: Vec<serde_json::Value> = f
        .terms()
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
        .map(|(k, v)| serde_json::json!({"xexp": k, "coeff": v}))
        .collect();
    serde_json::json!({"nvars": f.nvars(), "terms": terms})
}

/// Gauss-Jordan inverse; pivots on the simplest nonzero entry.
fn invert(mut a: Vec<Vec<QTRatFun>>) -> Option<Vec<Vec<QTRatFun>>> {
    let n = a.len();
    let mut inv: Vec<Vec<QTRatFun>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        QTRatFun::one()
                    } else {
                        QTRatFun::zero()
                    }
                })
                .collect()
        })
        .collect();
    let weight = |x: &QTRatFun| x.numerator().len() + x.denominator().len();
    for col in 0..n {
        let piv = (col..n)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| weight(&a[r][col]))?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col].recip().ok()?;
        for j in 0..n {
            a[col][j] = &a[col][j] * &p;
            inv[col][j] = &inv[col][j] * &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    if !a[col][j].is_zero() {
                        a[r][j] = &a[r][j] - &(&f * &a[col][j]);
                    }
                    if !inv[col][j].is_zero() {
                        inv[r][j] = &inv[r][j] - &(&f * &inv[col][j]);
                    }
                }
            }
        }
    }
    Some(inv)
}

/// Shared table for degree `d`, built once per process.
pub fn table(d: usize) -> Result<Arc<MacdonaldTable>, MacError> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<MacdonaldTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().unwrap().get(&d) {
        return Ok(t.clone());
    }
    let t = Arc::new(MacdonaldTable::build(d, d)?);
    cache.lock().unwrap().insert(d, t.clone());
    Ok(t)
}

/// `∇^m f`; negative `m` applies the inverse.
pub fn nabla_power(f: &SymPoly, m: i32, n: usize) -> Result<SymPoly, MacError> {
    let f = f.with_nvars(n);
    let mut out = SymPoly::zero(n);
    for d in f.degrees() {
        if d > n {
            return Err(MacError::TooFewVariables {
                degree: d,
                nvars: n,
            });
        }
        let tab = table(d)?;
        for (mu, c) in tab.coordinates(&f.homogeneous_part(d)) {
            let scale = if m >= 0 {
                tab.eigen[&mu].pow(m as u32)
            } else {
                let (&(a, b), _) = tab.eigen[&mu].terms().next().unwrap();
                QTCoeff::monomial(crate::exactalg::rat(1), a * m, b * m)
            };
            out.add_assign(&tab.entries[&mu].with_nvars(n).scale(&c.mul_laurent(&scale)));
        }
    }
    Ok(out)
}

/// `(-q)^e` for any integer `e`.
pub fn neg_q_pow(e: i32) -> QTCoeff {
    let sign = if e.rem_euclid(2) == 0 { 1 } else { -1 };
    QTCoeff::monomial(crate::exactalg::rat(sign), e, 0)
}

/// `C_a f = (-q)^{1-a} f[X - (q-1)/(qz)] Σ_m z^m h_m[X] |_{z^a}`.
pub fn hmz_c(a: usize, f: &SymPoly) -> Result<SymPoly, MacError> {
    let n = f.nvars();
    let shifted = plethysm_hmz(f)?;
    let mut out = SymPoly::zero(n);
    for (e, g) in shifted {
        // e <= 0 pairs with h_{a - e}
        let h = basis_vector(Basis::H, &Partition::row(a + (-e) as usize), n);
        out.add_assign(&g.mul(&h));
    }
    Ok(out.scale_laurent(&neg_q_pow(1 - a as i32)))
}

/// `C_α = C_{α_1} ⋯ C_{α_ℓ} · 1`, so `α_ℓ` acts first and `α_1` is the first segment of the touch composition.
pub fn c_alpha(alpha: &Composition, n: usize) -> Result<SymPoly, MacError> {
    let mut f = SymPoly::one(n);
    for &a in alpha.parts().iter().rev() {
        f = hmz_c(a, &f)?;
    }
    Ok(f)
}

/// Coefficients `d_{λ,α}` with `s_λ = Σ_α d_{λ,α} C_α`.
pub fn schur_to_calpha(lambda: &Partition) -> BTreeMap<Composition, QTCoeff> {
    static CACHE: OnceLock<Mutex<HashMap<Partition, BTreeMap<Composition, QTCoeff>>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(lambda) {
        return v.clone();
    }
    let mut out: BTreeMap<Composition, QTCoeff> = BTreeMap::new();
    if lambda.is_empty() {
        out.insert(Composition::new(vec![]).unwrap(), QTCoeff::one());
    } else {
        let l1 = lambda.part(0);
        let mu = Partition::from_unsorted(lambda.parts()[1..].to_vec());
        let pre = neg_q_pow(l1 as i32 - 1);
        let smu = BasisExpansion::single(Basis::S, mu.clone(), mu.size().max(1));
        for i in 0..=mu.len() {
            let skew = skew_by_e(i, &smu).expect("schur input");
            for (nu, c) in &skew.coeffs {
                let c = c.as_laurent().expect("integral skew coefficients").clone();
                for (beta, d) in schur_to_calpha(nu) {
                    let key = beta.prepend(l1 + i);
                    let add = &pre * &(&c * &d);
                    let e = out.entry(key.clone()).or_insert_with(QTCoeff::zero);
                    *e += &add;
                    if e.is_zero() {
                        out.remove(&key);
                    }
                }
            }
        }
    }
    cache.lock().unwrap().insert(lambda.clone(), out.clone());
    out
}

/// Schur expansion of `f`, coefficientwise.
pub fn schur_expansion(f: &SymPoly) -> Result<BasisExpansion, MacError> {
    Ok(expand_in_basis(f, Basis::S)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn s(v: &[usize], n: usize) -> SymPoly {
        basis_vector(Basis::S, &p(v), n)
    }

    #[test]
    fn small_htilde() {
        let q = QTRatFun::from(QTCoeff::q());
        let t = QTRatFun::from(QTCoeff::t());
        assert_eq!(
            htilde(&p(&[1]), 3).unwrap(),
            basis_vector(Basis::M, &p(&[1]), 3)
        );
        assert_eq!(
            htilde(&p(&[2]), 2).unwrap(),
            s(&[2], 2).add(&s(&[1, 1], 2).scale(&q))
        );
        assert_eq!(
            htilde(&p(&[1, 1]), 2).unwrap(),
            s(&[2], 2).add(&s(&[1, 1], 2).scale(&t))
        );
        let expect = s(&[3], 3)
            .add(&s(&[2, 1], 3).scale(&(&q + &t)))
            .add(&s(&[1, 1, 1], 3).scale(&(&q * &t)));
        assert_eq!(htilde(&p(&[2, 1]), 3).unwrap(), expect);
        assert!(matches!(
            htilde(&p(&[2, 1]), 2),
            Err(MacError::TooFewVariables { .. })
        ));
    }

    #[test]
    fn nabla_basics() {
        let e1 = basis_vector(Basis::E, &p(&[1]), 3);
        assert_eq!(nabla_power(&e1, 2, 3).unwrap(), e1);
        let h2 = htilde(&p(&[2]), 2).unwrap();
        assert_eq!(
            nabla_power(&h2, 1, 2).unwrap(),
            h2.scale_laurent(&QTCoeff::q())
        );
    }

    #[test]
    fn c1_of_one_is_e1() {
        let c = c_alpha(&Composition::new(vec![1]).unwrap(), 2).unwrap();
        assert_eq!(c, basis_vector(Basis::E, &p(&[1]), 2));
    }

    #[test]
    fn schur_reassembly_small() {
        for lam in [p(&[1]), p(&[2]), p(&[1, 1]), p(&[2, 1])] {
            let n = lam.size();
            let mut acc = SymPoly::zero(n);
            for (alpha, d) in schur_to_calpha(&lam) {
                acc.add_assign(&c_alpha(&alpha, n).unwrap().scale_laurent(&d));
            }
            assert_eq!(acc, basis_vector(Basis::S, &lam, n), "λ = {lam}");
        }
    }
}
