use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::sympoly::monomial_product;
use super::{Partition, SymError, SymPoly};
use crate::exactalg::{QTRatFun, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    M,
    E,
    H,
    P,
    S,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Basis::M => "m",
            Basis::E => "e",
            Basis::H => "h",
            Basis::P => "p",
            Basis::S => "s",
        };
        write!(f, "{s}")
    }
}

impl std::str::FromStr for Basis {
    type Err = SymError;
    fn from_str(s: &str) -> Result<Self, SymError> {
        Ok(match s {
            "m" => Basis::M,
            "e" => Basis::E,
            "h" => Basis::H,
            "p" => Basis::P,
            "s" => Basis::S,
            _ => return Err(SymError::UnknownBasis(s.to_string())),
        })
    }
}

type IntSym = BTreeMap<Partition, BigInt>;

fn int_mul(a: &IntSym, b: &IntSym, n: usize) -> IntSym {
    let mut out = IntSym::new();
    for (la, ca) in a {
        for (lb, cb) in b {
            for (nu, k) in monomial_product(la, lb, n).iter() {
                *out.entry(nu.clone()).or_insert_with(BigInt::zero) += ca * cb * k;
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Kostka number: semistandard tableaux of shape `lambda` and content `mu`.
pub fn kostka(lambda: &Partition, mu: &[usize]) -> BigInt {
    fn rec(
        shape: Vec<usize>,
        mu: &[usize],
        memo: &mut HashMap<(Vec<usize>, usize), BigInt>,
    ) -> BigInt {
        let Some((&last, rest)) = mu.split_last() else {
            return if shape.is_empty() {
                BigInt::one()
            } else {
                BigInt::zero()
            };
        };
        let key = (shape.clone(), mu.len());
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        // remove a horizontal strip of size `last`: row i keeps between shape[i+1] and shape[i]
        let mut total = BigInt::zero();
        let mut cur = shape.clone();
        fn strips(
            i: usize,
            left: usize,
            shape: &[usize],
            cur: &mut Vec<usize>,
            rest: &[usize],
            memo: &mut HashMap<(Vec<usize>, usize), BigInt>,
            total: &mut BigInt,
        ) {
            if i == shape.len() {
                if left == 0 {
                    let mut v = cur.clone();
                    v.retain(|&x| x > 0);
                    *total += rec(v, rest, memo);
                }
                return;
            }
            let floor = shape.get(i + 1).copied().unwrap_or(0);
            let maxrm = (shape[i] - floor).min(left);
            for r in 0..=maxrm {
                cur[i] = shape[i] - r;
                strips(i + 1, left - r, shape, cur, rest, memo, total);
            }
            cur[i] = shape[i];
        }
        strips(0, last, &shape, &mut cur, rest, memo, &mut total);
        memo.insert(key, total.clone());
        total
    }
    if lambda.size() != mu.iter().sum::<usize>() {
        return BigInt::zero();
    }
    rec(lambda.parts().to_vec(), mu, &mut HashMap::new())
}

fn expansion_cache() -> &'static Mutex<HashMap<(Basis, Partition, usize), Arc<IntSym>>> {
    static CACHE: OnceLock<Mutex<HashMap<(Basis, Partition, usize), Arc<IntSym>>>> =
        OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Integer monomial expansion of a basis element in `n` variables.
fn monomial_expansion(kind: Basis, lambda: &Partition, n: usize) -> Arc<IntSym> {
    let key = (kind, lambda.clone(), n);
    if let Some(v) = expansion_cache().lock().unwrap().get(&key) {
        return v.clone();
    }
    let one: IntSym = [(Partition::empty(), BigInt::one())].into_iter().collect();
    let factor = |k: usize| -> IntSym {
        match kind {
            Basis::P => [(Partition::row(k), BigInt::one())].into_iter().collect(),
            Basis::E if k <= n => [(Partition::column(k), BigInt::one())]
                .into_iter()
                .collect(),
            Basis::E => IntSym::new(),
            Basis::H => Partition::all_bounded(k, k, n)
                .into_iter()
                .map(|p| (p, BigInt::one()))
                .collect(),
            _ => unreachable!(),
        }
    };
    let v = match kind {
        Basis::M => {
            if lambda.len() <= n {
                [(lambda.clone(), BigInt::one())].into_iter().collect()
            } else {
                IntSym::new()
            }
        }
        Basis::S => Partition::all_bounded(lambda.size(), lambda.size(), n)
            .into_iter()
            .map(|mu| {
                let k = kostka(lambda, mu.parts());
                (mu, k)
            })
            .filter(|(_, k)| !k.is_zero())
            .collect(),
        _ => lambda
            .parts()
            .iter()
            .fold(one, |acc, &k| int_mul(&acc, &factor(k), n)),
    };
    let v = Arc::new(v);
    expansion_cache().lock().unwrap().insert(key, v.clone());
    v
}

/// The basis element `b_λ` in `n` variables.
pub fn basis_vector(kind: Basis, lambda: &Partition, n: usize) -> SymPoly {
    let mut out = SymPoly::zero(n);
    for (mu, c) in monomial_expansion(kind, lambda, n).iter() {
        out.add_term(
            mu.clone(),
            &QTRatFun::from(BigRational::from_integer(c.clone())),
        );
    }
    out
}

struct Transition {
    parts: Vec<Partition>,
    index: HashMap<Partition, usize>,
    /// `inv[μ][λ]`: coefficient of `b_λ` in `m_μ`.
    inv: Vec<Vec<Rational>>,
}

fn transition(kind: Basis, d: usize) -> Arc<Transition> {
    static CACHE: OnceLock<Mutex<HashMap<(Basis, usize), Arc<Transition>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&(kind, d)) {
        return v.clone();
    }
    let parts = Partition::all(d);
    let index: HashMap<Partition, usize> = parts
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let n = parts.len();
    let nv = d.max(1);
    let mut mat = vec![vec![Rational::zero(); n]; n];
    for (i, lam) in parts.iter().enumerate() {
        for (mu, c) in monomial_expansion(kind, lam, nv).iter() {
            mat[i][index[mu]] = BigRational::from_integer(c.clone());
        }
    }
    let inv = invert(mat).expect("basis transition matrix is invertible");
    let t = Arc::new(Transition { parts, index, inv });
    cache.lock().unwrap().insert((kind, d), t.clone());
    t
}

/// Gauss-Jordan inverse over the rationals.
fn invert(mut a: Vec<Vec<Rational>>) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col].recip();
        for j in 0..n {
            a[col][j] = &a[col][j] * &p;
            inv[col][j] = &inv[col][j] * &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let x = &f * &a[col][j];
                    a[r][j] -= x;
                    let y = &f * &inv[col][j];
                    inv[r][j] -= y;
                }
            }
        }
    }
    Some(inv)
}

/// A symmetric polynomial written in one of the classical bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisExpansion {
    pub basis: Basis,
    pub nvars: usize,
    pub coeffs: BTreeMap<Partition, QTRatFun>,
}

impl BasisExpansion {
    pub fn new(basis: Basis, nvars: usize) -> Self {
        Self {
            basis,
            nvars,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn single(basis: Basis, lambda: Partition, nvars: usize) -> Self {
        let mut out = Self::new(basis, nvars);
        out.add(lambda, &QTRatFun::one());
        out
    }

    pub fn add(&mut self, lambda: Partition, c: &QTRatFun) {
        if c.is_zero() {
            return;
        }
        let e = self
            .coeffs
            .entry(lambda.clone())
            .or_insert_with(QTRatFun::zero);
        *e = &*e + c;
        if e.is_zero() {
            self.coeffs.remove(&lambda);
        }
    }

    pub fn coeff(&self, lambda: &Partition) -> QTRatFun {
        self.coeffs
            .get(lambda)
            .cloned()
            .unwrap_or_else(QTRatFun::zero)
    }

    pub fn reassemble(&self) -> SymPoly {
        let mut out = SymPoly::zero(self.nvars);
        for (lam, c) in &self.coeffs {
            out.add_assign(&basis_vector(self.basis, lam, self.nvars).scale(c));
        }
        out
    }

    /// Entries sorted in reverse lexicographic order of partitions.
    pub fn sorted_entries(&self) -> Vec<(&Partition, &QTRatFun)> {
        self.coeffs.iter().rev().collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let coeffs: Vec<serde_json::Value> = self
            .sorted_entries()
            .into_iter()
            .map(|(p, v)| serde_json::json!({"partition": p, "value": v}))
            .collect();
        serde_json::json!({"basis": self.basis, "coeffs": coeffs})
    }
}

pub fn expand_in_basis(f: &SymPoly, kind: Basis) -> Result<BasisExpansion, SymError> {
    let mut out = BasisExpansion::new(kind, f.nvars());
    for d in f.degrees() {
        if d > f.nvars() {
            return Err(SymError::DegreeExceedsVars {
                degree: d,
                nvars: f.nvars(),
            });
        }
        let tr = transition(kind, d);
        let mut acc: Vec<QTRatFun> = vec![QTRatFun::zero(); tr.parts.len()];
        for (mu, c) in f.homogeneous_part(d).terms() {
            let row = &tr.inv[tr.index[mu]];
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    acc[j] = &acc[j] + &c.scale(x);
                }
            }
        }
        for (lam, c) in tr.parts.iter().zip(acc) {
            out.add(lam.clone(), &c);
        }
    }
    Ok(out)
}

/// Hall inner product, computed through power sums.
pub fn inner_product(f: &SymPoly, g: &SymPoly) -> Result<QTRatFun, SymError> {
    if f.is_zero() || g.is_zero() {
        return Ok(QTRatFun::zero());
    }
    let (df, dg) = (f.degrees(), g.degrees());
    if df.len() != 1 || df != dg {
        return Err(SymError::DegreeMismatch);
    }
    let a = expand_in_basis(f, Basis::P)?;
    let b = expand_in_basis(g, Basis::P)?;
    let mut acc = QTRatFun::zero();
    for (lam, ca) in &a.coeffs {
        if let Some(cb) = b.coeffs.get(lam) {
            acc = &acc + &(ca * cb).scale(&BigRational::from_integer(lam.z()));
        }
    }
    Ok(acc)
}

fn to_schur(f: &BasisExpansion) -> Result<BasisExpansion, SymError> {
    if f.basis == Basis::S {
        Ok(f.clone())
    } else {
        expand_in_basis(&f.reassemble(), Basis::S)
    }
}

/// `ω`, acting on a Schur expansion by conjugating shapes.
pub fn omega_involution(f: &BasisExpansion) -> Result<BasisExpansion, SymError> {
    let s = to_schur(f)?;
    let mut out = BasisExpansion::new(Basis::S, s.nvars);
    for (lam, c) in &s.coeffs {
        out.add(lam.conjugate(), c);
    }
    Ok(out)
}

pub fn omega(f: &SymPoly) -> Result<SymPoly, SymError> {
    Ok(omega_involution(&expand_in_basis(f, Basis::S)?)?.reassemble())
}

/// `e_i^⊥` on a Schur expansion: remove vertical strips of size `i`.
pub fn skew_by_e(i: usize, f: &BasisExpansion) -> Result<BasisExpansion, SymError> {
    let s = to_schur(f)?;
    let mut out = BasisExpansion::new(Basis::S, s.nvars);
    for (mu, c) in &s.coeffs {
        for nu in mu.remove_vertical_strips(i) {
            out.add(nu, c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ratio;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn small_basis_vectors() {
        assert_eq!(
            basis_vector(Basis::H, &p(&[1]), 2),
            SymPoly::monomial(p(&[1]), 2)
        );
        assert_eq!(
            basis_vector(Basis::E, &p(&[2]), 2),
            SymPoly::monomial(p(&[1, 1]), 2)
        );
        let s21 = basis_vector(Basis::S, &p(&[2, 1]), 3);
        assert_eq!(s21.coeff(&p(&[2, 1])), QTRatFun::from_int(1));
        assert_eq!(s21.coeff(&p(&[1, 1, 1])), QTRatFun::from_int(2));
        assert_eq!(s21.len(), 2);
        assert!(basis_vector(Basis::S, &p(&[1, 1, 1]), 2).is_zero());
    }

    #[test]
    fn expansions() {
        let e1 = basis_vector(Basis::E, &p(&[1]), 2);
        let h = expand_in_basis(&e1.mul(&e1), Basis::H).unwrap();
        assert_eq!(h.coeffs.len(), 1);
        assert!(h.coeff(&p(&[1, 1])).is_one());
        let e = expand_in_basis(&basis_vector(Basis::S, &p(&[1, 1]), 2), Basis::E).unwrap();
        assert_eq!(e.coeffs.len(), 1);
        assert!(e.coeff(&p(&[2])).is_one());
        let pp = expand_in_basis(&basis_vector(Basis::H, &p(&[2]), 2), Basis::P).unwrap();
        assert_eq!(pp.coeff(&p(&[1, 1])), QTRatFun::from(ratio(1, 2)));
        assert_eq!(pp.coeff(&p(&[2])), QTRatFun::from(ratio(1, 2)));
    }

    #[test]
    fn degree_guard() {
        let f = basis_vector(Basis::P, &p(&[3]), 2);
        assert!(matches!(
            expand_in_basis(&f, Basis::S),
            Err(SymError::DegreeExceedsVars { .. })
        ));
    }

    #[test]
    fn inner_products() {
        let s2 = basis_vector(Basis::S, &p(&[2]), 2);
        let s11 = basis_vector(Basis::S, &p(&[1, 1]), 2);
        let h2 = basis_vector(Basis::H, &p(&[2]), 2);
        assert!(inner_product(&s2, &s2).unwrap().is_one());
        assert!(inner_product(&s2, &s11).unwrap().is_zero());
        // <h2,h2> with the p-basis route lands on 1 (h2 = s2); <h11,h11> = 2
        assert!(inner_product(&h2, &h2).unwrap().is_one());
        let h11 = basis_vector(Basis::H, &p(&[1, 1]), 2);
        assert_eq!(inner_product(&h11, &h11).unwrap(), QTRatFun::from_int(2));
        let s1 = basis_vector(Basis::S, &p(&[1]), 2);
        assert_eq!(inner_product(&s1, &s2), Err(SymError::DegreeMismatch));
    }

    #[test]
    fn omega_examples() {
        let s2 = BasisExpansion::single(Basis::S, p(&[2]), 3);
        assert_eq!(
            omega_involution(&s2).unwrap(),
            BasisExpansion::single(Basis::S, p(&[1, 1]), 3)
        );
        let e3 = basis_vector(Basis::E, &p(&[3]), 3);
        assert_eq!(omega(&e3).unwrap(), basis_vector(Basis::H, &p(&[3]), 3));
    }

    #[test]
    fn skewing() {
        let s21 = BasisExpansion::single(Basis::S, p(&[2, 1]), 3);
        let r = skew_by_e(1, &s21).unwrap();
        assert_eq!(r.coeffs.len(), 2);
        assert!(r.coeff(&p(&[2])).is_one() && r.coeff(&p(&[1, 1])).is_one());
        let s11 = BasisExpansion::single(Basis::S, p(&[1, 1]), 3);
        let r = skew_by_e(2, &s11).unwrap();
        assert!(r.coeff(&Partition::empty()).is_one());
        assert_eq!(skew_by_e(0, &s21).unwrap(), s21);
    }

    #[test]
    fn kostka_values() {
        assert_eq!(kostka(&p(&[2, 1]), &[1, 1, 1]), BigInt::from(2));
        assert_eq!(kostka(&p(&[3, 2]), &[2, 2, 1]), BigInt::from(2));
        assert_eq!(kostka(&p(&[2, 2]), &[3, 1]), BigInt::from(0));
    }
}
