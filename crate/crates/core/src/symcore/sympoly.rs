use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Partition, SymError};
use crate::exactalg::{QTCoeff, QTRatFun};

/// Symmetric polynomial in `nvars` variables, stored in the monomial basis.
///
/// Key `λ` stands for `m_λ(x_1..x_N)`; keys never have more than `nvars` parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymPoly {
    nvars: usize,
    terms: BTreeMap<Partition, QTRatFun>,
}

impl SymPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(Partition::empty(), nvars)
    }

    /// `m_λ`, or zero when λ has more parts than variables.
    pub fn monomial(lambda: Partition, nvars: usize) -> Self {
        let mut out = Self::zero(nvars);
        out.add_term(lambda, &QTRatFun::one());
        out
    }

    pub fn constant(c: QTRatFun, nvars: usize) -> Self {
        let mut out = Self::zero(nvars);
        out.add_term(Partition::empty(), &c);
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &QTRatFun)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, lambda: &Partition) -> QTRatFun {
        self.terms
            .get(lambda)
            .cloned()
            .unwrap_or_else(QTRatFun::zero)
    }

    pub fn add_term(&mut self, lambda: Partition, c: &QTRatFun) {
        if c.is_zero() || lambda.len() > self.nvars {
            return;
        }
        match self.terms.get_mut(&lambda) {
            Some(v) => {
                *v = &*v + c;
                if v.is_zero() {
                    self.terms.remove(&lambda);
                }
            }
            None => {
                self.terms.insert(lambda, c.clone());
            }
        }
    }

    /// Total degrees present, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(|p| p.size()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn homogeneous_part(&self, d: usize) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.size() == d)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &QTRatFun) -> Self {
        let mut out = Self::zero(self.nvars);
        if c.is_zero() {
            return out;
        }
        for (k, v) in &self.terms {
            out.add_term(k.clone(), &(v * c));
        }
        out
    }

    pub fn scale_laurent(&self, c: &QTCoeff) -> Self {
        self.scale(&QTRatFun::from(c.clone()))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(o);
        out
    }

    pub fn add_assign(&mut self, o: &Self) {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        for (k, v) in &o.terms {
            self.add_term(k.clone(), v);
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let mut out = Self::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                let c = ca * cb;
                for (nu, k) in monomial_product(a, b, self.nvars).iter() {
                    out.add_term(nu.clone(), &c.scale(&BigRational::from_integer(k.clone())));
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Same polynomial viewed in a different number of variables.
    ///
    /// Shrinking drops monomials that need more variables than remain.
    pub fn with_nvars(&self, nvars: usize) -> Self {
        let mut out = Self::zero(nvars);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v);
        }
        out
    }

    /// Apply `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&QTRatFun) -> QTRatFun) -> Self {
        let mut out = Self::zero(self.nvars);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), &f(v));
        }
        out
    }

    /// Coefficients as Laurent polynomials; fails on a genuine fraction.
    pub fn laurent_terms(&self) -> Result<BTreeMap<Partition, QTCoeff>, SymError> {
        self.terms
            .iter()
            .map(|(k, v)| {
                v.as_laurent()
                    .cloned()
                    .map(|c| (k.clone(), c))
                    .ok_or(SymError::NotPolynomial)
            })
            .collect()
    }

    /// Drop all terms with t-degree above `max` (coefficients must be Laurent).
    pub fn truncate_t(&self, max: i32) -> Result<Self, SymError> {
        let mut out = Self::zero(self.nvars);
        for (k, v) in self.laurent_terms()? {
            out.add_term(k, &QTRatFun::from(v.truncate_t(max)));
        }
        Ok(out)
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(k, v)| format!("({v})*m{k}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

type ProductKey = (Partition, Partition, usize);
type ProductTable = Vec<(Partition, BigInt)>;

fn product_cache() -> &'static Mutex<HashMap<ProductKey, Arc<ProductTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<ProductKey, Arc<ProductTable>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Structure constants of `m_λ m_μ` in `n` variables.
pub(crate) fn monomial_product(l: &Partition, m: &Partition, n: usize) -> Arc<ProductTable> {
    let key = (l.clone(), m.clone(), n);
    if let Some(v) = product_cache().lock().unwrap().get(&key) {
        return v.clone();
    }
    let table = Arc::new(compute_monomial_product(l, m, n));
    product_cache().lock().unwrap().insert(key, table.clone());
    table
}

fn padded(p: &Partition, n: usize) -> Vec<usize> {
    let mut v = p.parts().to_vec();
    v.resize(n, 0);
    v
}

fn stabilizer(v: &[usize]) -> BigInt {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &x in v {
        *counts.entry(x).or_default() += 1;
    }
    let mut s = BigInt::one();
    for (_, c) in counts {
        for j in 2..=c {
            s *= j;
        }
    }
    s
}

/// Distinct permutations of `v`, in lexicographic order.
pub(crate) fn distinct_permutations(v: &[usize]) -> Vec<Vec<usize>> {
    let mut cur = v.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    loop {
        // next_permutation
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
    out
}

fn compute_monomial_product(l: &Partition, m: &Partition, n: usize) -> ProductTable {
    if l.len() > n || m.len() > n {
        return Vec::new();
    }
    let mu = padded(m, n);
    let mut counts: BTreeMap<Vec<usize>, BigInt> = BTreeMap::new();
    for alpha in distinct_permutations(&padded(l, n)) {
        let mut nu: Vec<usize> = alpha.iter().zip(&mu).map(|(a, b)| a + b).collect();
        nu.sort_unstable_by(|a, b| b.cmp(a));
        *counts.entry(nu).or_insert_with(BigInt::zero) += 1;
    }
    let smu = stabilizer(&mu);
    counts
        .into_iter()
        .map(|(nu, c)| {
            let k = c * stabilizer(&nu) / &smu;
            (Partition::from_unsorted(nu), k)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn square_of_m1() {
        let m1 = SymPoly::monomial(p(&[1]), 2);
        let sq = m1.mul(&m1);
        assert_eq!(sq.coeff(&p(&[2])), QTRatFun::from_int(1));
        assert_eq!(sq.coeff(&p(&[1, 1])), QTRatFun::from_int(2));
    }

    #[test]
    fn product_respects_variable_count() {
        let m1 = SymPoly::monomial(p(&[1]), 1);
        let sq = m1.mul(&m1);
        assert_eq!(sq, SymPoly::monomial(p(&[2]), 1));
        assert!(SymPoly::monomial(p(&[1, 1]), 1).is_zero());
    }

    #[test]
    fn m21_times_m1() {
        // m21*m1 = m31 + 2 m22 + 2 m211 in three variables
        let prod = SymPoly::monomial(p(&[2, 1]), 3).mul(&SymPoly::monomial(p(&[1]), 3));
        assert_eq!(prod.coeff(&p(&[3, 1])), QTRatFun::from_int(1));
        assert_eq!(prod.coeff(&p(&[2, 2])), QTRatFun::from_int(2));
        assert_eq!(prod.coeff(&p(&[2, 1, 1])), QTRatFun::from_int(2));
        assert_eq!(prod.len(), 3);
    }
}
