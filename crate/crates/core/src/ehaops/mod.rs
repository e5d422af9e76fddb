//! Chain-appending operators `𝔥_a`, `𝔥̂_a`, `𝔥̄_a`, their noncommutative determinants, and
//! evaluation on truncated series of path tuples.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::{QTCoeff, QTRatFun};
use crate::symcore::{
    plethysm_one_minus_t, plethysm_y_minus_z, Basis, Composition, Partition, SymError, SymPoly,
};

mod engine;
mod rhs;

pub use engine::{
    apply_symbol, evaluate_omega, evaluate_skeletons, evaluate_tuples, omega_rows, word_degree,
    Budget, Catalog, OmegaSeries, SkeletonSeries, TupleSeries,
};
pub use rhs::{clambda, omega_of_sum, pf_touch_sum, rhs_main, rhs_wilson};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OpError {
    #[error("cannot parse operator symbol {0:?}")]
    BadSymbol(String),
    #[error("empty partition")]
    EmptyPartition,
    #[error(transparent)]
    Sym(#[from] SymError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SymbolKind {
    H,
    Hhat,
    Hbar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OperatorSymbol {
    pub kind: SymbolKind,
    pub index: i32,
}

/// What a symbol reduces to before it touches a series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalized {
    Zero,
    One,
    Symbol(OperatorSymbol),
}

impl OperatorSymbol {
    pub fn h(index: i32) -> Self {
        Self {
            kind: SymbolKind::H,
            index,
        }
    }

    pub fn hhat(index: i32) -> Self {
        Self {
            kind: SymbolKind::Hhat,
            index,
        }
    }

    pub fn hbar(index: i32) -> Self {
        Self {
            kind: SymbolKind::Hbar,
            index,
        }
    }

    pub fn lowered(self, by: i32) -> Self {
        Self {
            index: self.index - by,
            ..self
        }
    }

    pub fn normalize(self) -> Normalized {
        match (self.index, self.kind) {
            (i, _) if i < 0 => Normalized::Zero,
            (0, SymbolKind::Hbar) => Normalized::Zero,
            (0, _) => Normalized::One,
            _ => Normalized::Symbol(self),
        }
    }
}

impl fmt::Display for OperatorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            SymbolKind::H => "h",
            SymbolKind::Hhat => "hhat",
            SymbolKind::Hbar => "hbar",
        };
        write!(f, "{k}{}", self.index)
    }
}

impl FromStr for OperatorSymbol {
    type Err = OpError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (kind, rest) = if let Some(r) = s.strip_prefix("hhat") {
            (SymbolKind::Hhat, r)
        } else if let Some(r) = s.strip_prefix("hbar") {
            (SymbolKind::Hbar, r)
        } else if let Some(r) = s.strip_prefix('h') {
            (SymbolKind::H, r)
        } else {
            return Err(OpError::BadSymbol(s.into()));
        };
        let index = rest
            .trim_start_matches('_')
            .parse()
            .map_err(|_| OpError::BadSymbol(s.into()))?;
        Ok(Self { kind, index })
    }
}

pub type Word = Vec<OperatorSymbol>;

pub fn word_to_string(w: &[OperatorSymbol]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Parse a whitespace separated word such as `"h1 hhat2"`.
pub fn parse_word(s: &str) -> Result<Word, OpError> {
    s.split_whitespace()
        .filter(|t| *t != "1")
        .map(str::parse)
        .collect()
}

/// Square matrix given by its first row; row `r` lowers every index by `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorMatrix {
    pub first_row: Vec<OperatorSymbol>,
}

impl OperatorMatrix {
    pub fn new(first_row: Vec<OperatorSymbol>) -> Self {
        Self { first_row }
    }

    pub fn size(&self) -> usize {
        self.first_row.len()
    }

    /// Entry at 0-based `(r, c)`.
    pub fn entry(&self, r: usize, c: usize) -> OperatorSymbol {
        self.first_row[c].lowered(r as i32)
    }
}

impl fmt::Display for OperatorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.first_row.iter().map(|s| s.to_string()).collect();
        write!(f, "[{}]", v.join(","))
    }
}

/// `Σ c · word`, words applied right to left.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SignedWordSum {
    terms: BTreeMap<Word, QTCoeff>,
}

impl SignedWordSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, word: Word, c: &QTCoeff) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(word.clone()).or_insert_with(QTCoeff::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&word);
        }
    }

    /// Add `c · s_1 ⋯ s_r` after normalizing each symbol; a zero symbol drops the term.
    pub fn add_symbols(&mut self, symbols: &[OperatorSymbol], c: &QTCoeff) {
        let mut word = Vec::with_capacity(symbols.len());
        for s in symbols {
            match s.normalize() {
                Normalized::Zero => return,
                Normalized::One => {}
                Normalized::Symbol(s) => word.push(s),
            }
        }
        self.add(word, c);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &QTCoeff)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &QTCoeff) -> Self {
        let mut out = Self::new();
        for (w, d) in &self.terms {
            out.add(w.clone(), &(c * d));
        }
        out
    }

    pub fn add_sum(&mut self, o: &Self) {
        for (w, c) in &o.terms {
            self.add(w.clone(), c);
        }
    }

    /// Concatenation product `self · o`.
    pub fn compose(&self, o: &Self) -> Self {
        let mut out = Self::new();
        for (a, c) in &self.terms {
            for (b, d) in &o.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add(w, &(c * d));
            }
        }
        out
    }

    pub fn single(word: Word) -> Self {
        let mut s = Self::new();
        s.add(word, &QTCoeff::one());
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(w, c)| serde_json::json!({"word": word_to_string(w), "coeff": c}))
                .collect(),
        )
    }
}

fn parity(p: &[usize]) -> bool {
    let mut inv = 0usize;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv % 2 == 1
}

/// `det(A) = Σ_w sgn(w) A_{w_1,1} ⋯ A_{w_ℓ,ℓ}`.
pub fn det_expand(mat: &OperatorMatrix) -> SignedWordSum {
    let l = mat.size();
    let mut out = SignedWordSum::new();
    let mut rows: Vec<usize> = (0..l).collect();
    crate::bijection::permutations(&mut rows, 0, &mut |w| {
        let mut word = Vec::with_capacity(l);
        for (c, &r) in w.iter().enumerate() {
            match mat.entry(r, c).normalize() {
                Normalized::Zero => return,
                Normalized::One => {}
                Normalized::Symbol(s) => word.push(s),
            }
        }
        let sign = if parity(w) { -1 } else { 1 };
        out.add(word, &QTCoeff::from_int(sign));
    });
    out
}

/// `H(α)`: position `i` is `𝔥̄_i` when `i` is a partial sum of `α` read from the end.
pub fn build_h(alpha: &Composition) -> OperatorMatrix {
    let mut rev = alpha.parts().to_vec();
    rev.reverse();
    let bars = Composition::new(rev)
        .expect("parts positive")
        .partial_sums();
    let row = (1..=alpha.size() as i32)
        .map(|i| {
            if bars.contains(&(i as usize)) {
                OperatorSymbol::hbar(i)
            } else {
                OperatorSymbol::hhat(i)
            }
        })
        .collect();
    OperatorMatrix::new(row)
}

/// `J(λ) = [𝔥_{λ_ℓ}, 𝔥_{λ_{ℓ-1}+1}, …, 𝔥_{λ_1+ℓ-1}, 𝔥̂_ℓ, …, 𝔥̂_{λ_1+ℓ-1}]`.
pub fn build_j(lambda: &Partition) -> Result<OperatorMatrix, OpError> {
    if lambda.is_empty() {
        return Err(OpError::EmptyPartition);
    }
    let l = lambda.len();
    let mut row: Vec<OperatorSymbol> = (0..l)
        .map(|i| OperatorSymbol::h((lambda.part(l - 1 - i) + i) as i32))
        .collect();
    row.extend((l..lambda.part(0) + l).map(|j| OperatorSymbol::hhat(j as i32)));
    Ok(OperatorMatrix::new(row))
}

/// Data behind the modified matrix `J'(λ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JPrime {
    pub matrix: OperatorMatrix,
    pub adj: i32,
    pub v: Vec<usize>,
    /// 1-based
    pub piv: Vec<usize>,
    pub bo: Vec<i64>,
}

pub fn build_jprime(lambda: &Partition) -> Result<JPrime, OpError> {
    if lambda.is_empty() {
        return Err(OpError::EmptyPartition);
    }
    let l = lambda.len();
    let l1 = lambda.part(0);
    let s = lambda.durfee();
    let adj = (1..=s).map(|i| lambda.part(i - 1) as i32 - i as i32).sum();
    let mut v: Vec<usize> = (1..=l).map(|i| lambda.part(i - 1) + l - i).collect();
    v.extend(l..l1 + l);
    v.sort_unstable();
    let mut piv = Vec::with_capacity(s);
    for i in 1..=s {
        let target = lambda.part(s - i) + l - (s + 1 - i);
        let a = (0..v.len() - 1)
            .find(|&a| v[a] == target && v[a + 1] == target)
            .expect("repeated value");
        piv.push(a + 1);
    }
    let bo = v
        .iter()
        .enumerate()
        .map(|(i, &x)| (s + 1 + i) as i64 - x as i64)
        .collect();
    let row = v
        .iter()
        .enumerate()
        .map(|(i0, &x)| {
            let i = i0 + 1;
            if i <= l - s {
                OperatorSymbol::h(x as i32)
            } else if piv.contains(&i) {
                OperatorSymbol::hbar(x as i32)
            } else {
                OperatorSymbol::hhat(x as i32)
            }
        })
        .collect();
    Ok(JPrime {
        matrix: OperatorMatrix::new(row),
        adj,
        v,
        piv,
        bo,
    })
}

/// `Φ(f)`: `h_λ[Y] h_μ[Z] ↦ 𝔥_λ 𝔥̂_μ`; inside a block the largest part acts first.
pub fn phi_operator(f: &SymPoly) -> Result<SignedWordSum, OpError> {
    let two = plethysm_y_minus_z(f)?;
    let mut out = SignedWordSum::new();
    for ((lam, mu), c) in &two.coeffs {
        let c = c
            .as_laurent()
            .ok_or(OpError::Sym(SymError::NotPolynomial))?;
        let mut word: Word = lam
            .parts()
            .iter()
            .rev()
            .map(|&a| OperatorSymbol::h(a as i32))
            .collect();
        word.extend(
            mu.parts()
                .iter()
                .rev()
                .map(|&a| OperatorSymbol::hhat(a as i32)),
        );
        out.add(word, c);
    }
    Ok(out)
}

/// `Φ` of a basis element, in enough variables to be faithful.
pub fn phi_of_basis(kind: Basis, lambda: &Partition) -> Result<SignedWordSum, OpError> {
    let n = lambda.size().max(1);
    phi_operator(&crate::symcore::basis_vector(kind, lambda, n))
}

/// `f[(1-t)Y]` on the `h` basis, as used by [`clambda`].
pub(crate) fn one_minus_t_h(f: &SymPoly) -> Result<BTreeMap<Partition, QTRatFun>, OpError> {
    let g = plethysm_one_minus_t(f)?;
    Ok(crate::symcore::expand_in_basis(&g, Basis::H)?.coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn row(s: &str) -> Vec<OperatorSymbol> {
        parse_word(s).unwrap()
    }

    #[test]
    fn normalization() {
        assert_eq!(OperatorSymbol::h(0).normalize(), Normalized::One);
        assert_eq!(OperatorSymbol::hhat(0).normalize(), Normalized::One);
        assert_eq!(OperatorSymbol::hbar(0).normalize(), Normalized::Zero);
        assert_eq!(OperatorSymbol::h(-1).normalize(), Normalized::Zero);
        assert_eq!(
            "hhat3".parse::<OperatorSymbol>().unwrap(),
            OperatorSymbol::hhat(3)
        );
        assert!("x1".parse::<OperatorSymbol>().is_err());
    }

    #[test]
    fn two_by_two() {
        let d = det_expand(&OperatorMatrix::new(row("hhat1 hbar2")));
        let mut want = SignedWordSum::single(row("hhat1 hbar1"));
        want.add(row("hbar2"), &QTCoeff::from_int(-1));
        assert_eq!(d, want);
    }

    #[test]
    fn h_matrices() {
        let a = Composition::new(vec![2, 3]).unwrap();
        assert_eq!(build_h(&a).first_row, row("hhat1 hhat2 hbar3 hhat4 hbar5"));
        assert_eq!(
            build_h(&Composition::new(vec![1]).unwrap()).first_row,
            row("hbar1")
        );
        assert_eq!(
            build_h(&Composition::new(vec![1, 1]).unwrap()).first_row,
            row("hbar1 hbar2")
        );
        // block triangular
        let big = det_expand(&build_h(&a));
        let small = det_expand(&OperatorMatrix::new(row("hhat1 hhat2 hbar3")))
            .compose(&det_expand(&OperatorMatrix::new(row("hhat1 hbar2"))));
        assert_eq!(big, small);
    }

    #[test]
    fn j_matrices() {
        assert_eq!(
            build_j(&p(&[2, 2])).unwrap().first_row,
            row("h2 h3 hhat2 hhat3")
        );
        assert_eq!(build_j(&p(&[1])).unwrap().size(), 2);
        let jp = build_jprime(&p(&[2, 2])).unwrap();
        assert_eq!(jp.v, vec![2, 2, 3, 3]);
        assert_eq!(jp.piv, vec![1, 3]);
        assert_eq!(jp.adj, 1);
        assert_eq!(jp.bo, vec![1, 2, 2, 3]);
        assert_eq!(jp.matrix.first_row, row("hbar2 hhat2 hbar3 hhat3"));
    }

    #[test]
    fn displayed_four_by_four() {
        let m = OperatorMatrix::new(row("h2 h3 hbar2 hhat3"));
        assert_eq!(m.entry(2, 0).normalize(), Normalized::One);
        assert_eq!(m.entry(3, 0).normalize(), Normalized::Zero);
        assert_eq!(m.entry(2, 2).normalize(), Normalized::Zero);
        assert_eq!(m.entry(3, 3).normalize(), Normalized::One);
        assert!(!det_expand(&m).is_empty());
    }

    #[test]
    fn phi_examples() {
        let e1 = phi_of_basis(Basis::H, &p(&[1])).unwrap();
        let mut want = SignedWordSum::single(row("h1"));
        want.add(row("hhat1"), &QTCoeff::from_int(-1));
        assert_eq!(e1, want);
        assert_eq!(phi_of_basis(Basis::S, &p(&[2, 2])).unwrap().len(), 11);
    }
}
