use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use super::{basis_vector, expand_in_basis, Basis, BasisExpansion, Partition, SymError, SymPoly};
use crate::exactalg::{QTCoeff, QTRatFun};

/// Alphabets `A` for which `f[A]` is supported.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlphabetSpec {
    /// `X` itself.
    Identity,
    /// `(1 - t) X`.
    OneMinusT,
    /// `Y - Z`, reported on the basis `h_λ[Y] h_μ[Z]`.
    YMinusZ,
    /// `X - (q - 1)/(q z)`, reported as a Laurent series in `z`.
    HmzShift,
    /// `a - a^{-1}`, reported as a Laurent polynomial in `a`.
    AMinusInvA,
}

impl std::str::FromStr for AlphabetSpec {
    type Err = SymError;
    fn from_str(s: &str) -> Result<Self, SymError> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        Ok(match compact.as_str() {
            "X" => AlphabetSpec::Identity,
            "(1-t)X" | "(1-t)Y" => AlphabetSpec::OneMinusT,
            "Y-Z" => AlphabetSpec::YMinusZ,
            "X-(q-1)/(qz)" => AlphabetSpec::HmzShift,
            "a-a^-1" | "a-1/a" => AlphabetSpec::AMinusInvA,
            _ => return Err(SymError::UnsupportedAlphabet(s.to_string())),
        })
    }
}

/// Coefficients `c_{λ,μ}` of `h_λ[Y] h_μ[Z]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TwoAlphabetExpansion {
    pub coeffs: BTreeMap<(Partition, Partition), QTRatFun>,
}

impl TwoAlphabetExpansion {
    pub fn add(&mut self, key: (Partition, Partition), c: &QTRatFun) {
        if c.is_zero() {
            return;
        }
        let e = self
            .coeffs
            .entry(key.clone())
            .or_insert_with(QTRatFun::zero);
        *e = &*e + c;
        if e.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::default();
        for ((a, b), c) in &self.coeffs {
            for ((x, y), d) in &o.coeffs {
                out.add((a.union(x), b.union(y)), &(c * d));
            }
        }
        out
    }
}

/// Laurent series in an auxiliary variable with symmetric-polynomial coefficients.
pub type ZGraded = BTreeMap<i32, SymPoly>;

/// Laurent polynomial in an auxiliary variable with rational-function coefficients.
pub type ALaurent = BTreeMap<i32, QTRatFun>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlethysmOutput {
    Sym(SymPoly),
    TwoAlphabet(TwoAlphabetExpansion),
    ZGraded(ZGraded),
    ALaurent(ALaurent),
}

pub fn plethysm(f: &SymPoly, alphabet: AlphabetSpec) -> Result<PlethysmOutput, SymError> {
    Ok(match alphabet {
        AlphabetSpec::Identity => PlethysmOutput::Sym(f.clone()),
        AlphabetSpec::OneMinusT => PlethysmOutput::Sym(plethysm_one_minus_t(f)?),
        AlphabetSpec::YMinusZ => PlethysmOutput::TwoAlphabet(plethysm_y_minus_z(f)?),
        AlphabetSpec::HmzShift => PlethysmOutput::ZGraded(plethysm_hmz(f)?),
        AlphabetSpec::AMinusInvA => PlethysmOutput::ALaurent(plethysm_a(f)?),
    })
}

/// `f[(1-t)X]`.
pub fn plethysm_one_minus_t(f: &SymPoly) -> Result<SymPoly, SymError> {
    let pe = expand_in_basis(f, Basis::P)?;
    let mut out = BasisExpansion::new(Basis::P, f.nvars());
    for (lam, c) in &pe.coeffs {
        let factor = lam.parts().iter().fold(QTCoeff::one(), |acc, &k| {
            acc * (QTCoeff::one() - QTCoeff::t_pow(k as i32))
        });
        out.add(lam.clone(), &c.mul_laurent(&factor));
    }
    Ok(out.reassemble())
}

/// Subsets of the parts of `lam` (by position), as (kept, removed).
fn part_splits(lam: &Partition) -> Vec<(Partition, Partition)> {
    let parts = lam.parts();
    (0u32..(1 << parts.len()))
        .map(|mask| {
            let (mut keep, mut drop) = (Vec::new(), Vec::new());
            for (i, &p) in parts.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    drop.push(p);
                } else {
                    keep.push(p);
                }
            }
            (
                Partition::from_unsorted(keep),
                Partition::from_unsorted(drop),
            )
        })
        .collect()
}

/// h-expansion of `p_α`, independent of the number of variables.
fn p_in_h(alpha: &Partition) -> Arc<BasisExpansion> {
    static CACHE: OnceLock<Mutex<HashMap<Partition, Arc<BasisExpansion>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(alpha) {
        return v.clone();
    }
    let n = alpha.size().max(1);
    let v = Arc::new(
        expand_in_basis(&basis_vector(Basis::P, alpha, n), Basis::H).expect("degree fits"),
    );
    cache.lock().unwrap().insert(alpha.clone(), v.clone());
    v
}

/// `f[Y - Z]` on the basis `h_λ[Y] h_μ[Z]`.
pub fn plethysm_y_minus_z(f: &SymPoly) -> Result<TwoAlphabetExpansion, SymError> {
    let pe = expand_in_basis(f, Basis::P)?;
    let mut out = TwoAlphabetExpansion::default();
    for (lam, c) in &pe.coeffs {
        for (keep, drop) in part_splits(lam) {
            let sign = if drop.len() % 2 == 0 { 1 } else { -1 };
            let c = c.scale(&crate::exactalg::rat(sign));
            let hy = p_in_h(&keep);
            let hz = p_in_h(&drop);
            for (a, ca) in &hy.coeffs {
                for (b, cb) in &hz.coeffs {
                    out.add((a.clone(), b.clone()), &(&c * &(ca * cb)));
                }
            }
        }
    }
    Ok(out)
}

/// `f[X - (q-1)/(qz)]`, graded by the exponent of `z`.
pub fn plethysm_hmz(f: &SymPoly) -> Result<ZGraded, SymError> {
    let n = f.nvars();
    let pe = expand_in_basis(f, Basis::P)?;
    let mut acc: BTreeMap<i32, BasisExpansion> = BTreeMap::new();
    for (lam, c) in &pe.coeffs {
        for (keep, drop) in part_splits(lam) {
            // p_k[X - (q-1)/(qz)] = p_k - (1 - q^{-k}) z^{-k}
            let w = drop.parts().iter().fold(QTCoeff::one(), |acc, &k| {
                acc * (QTCoeff::q_pow(-(k as i32)) - QTCoeff::one())
            });
            let e = -(drop.size() as i32);
            acc.entry(e)
                .or_insert_with(|| BasisExpansion::new(Basis::P, n))
                .add(keep, &c.mul_laurent(&w));
        }
    }
    Ok(acc
        .into_iter()
        .map(|(e, b)| (e, b.reassemble()))
        .filter(|(_, p)| !p.is_zero())
        .collect())
}

/// `f[a - a^{-1}]`, graded by the exponent of `a`.
pub fn plethysm_a(f: &SymPoly) -> Result<ALaurent, SymError> {
    let pe = expand_in_basis(f, Basis::P)?;
    let mut out = ALaurent::new();
    for (lam, c) in &pe.coeffs {
        // Π (a^k - a^{-k})
        let mut poly: BTreeMap<i32, i64> = [(0, 1)].into_iter().collect();
        for &k in lam.parts() {
            let mut next: BTreeMap<i32, i64> = BTreeMap::new();
            for (&e, &v) in &poly {
                *next.entry(e + k as i32).or_default() += v;
                *next.entry(e - k as i32).or_default() -= v;
            }
            poly = next;
        }
        for (e, v) in poly {
            if v != 0 {
                let entry = out.entry(e).or_insert_with(QTRatFun::zero);
                *entry = &*entry + &c.scale(&crate::exactalg::rat(v));
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

pub fn zgraded_mul(a: &ZGraded, b: &ZGraded) -> ZGraded {
    let mut out = ZGraded::new();
    for (i, x) in a {
        for (j, y) in b {
            let p = x.mul(y);
            match out.get_mut(&(i + j)) {
                Some(acc) => acc.add_assign(&p),
                None => {
                    out.insert(i + j, p);
                }
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

pub fn alaurent_mul(a: &ALaurent, b: &ALaurent) -> ALaurent {
    let mut out = ALaurent::new();
    for (i, x) in a {
        for (j, y) in b {
            let e = out.entry(i + j).or_insert_with(QTRatFun::zero);
            *e = &*e + &(x * y);
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn e_column_with_one_minus_t() {
        for k in 1..=3usize {
            let f = basis_vector(Basis::E, &Partition::column(k), k);
            let g = plethysm_one_minus_t(&f).unwrap();
            let expect = basis_vector(Basis::H, &Partition::column(k), k)
                .scale_laurent(&QTCoeff::one_minus_t_pow(k as u32));
            assert_eq!(g, expect);
        }
    }

    #[test]
    fn h1_two_alphabets() {
        let r = plethysm_y_minus_z(&basis_vector(Basis::H, &p(&[1]), 1)).unwrap();
        assert_eq!(r.coeffs.len(), 2);
        assert!(r.coeffs[&(p(&[1]), Partition::empty())].is_one());
        assert_eq!(
            r.coeffs[&(Partition::empty(), p(&[1]))],
            QTRatFun::from_int(-1)
        );
    }

    #[test]
    fn s22_two_alphabets_has_eleven_terms() {
        let r = plethysm_y_minus_z(&basis_vector(Basis::S, &p(&[2, 2]), 4)).unwrap();
        assert_eq!(r.coeffs.len(), 11);
        assert!(r.coeffs[&(p(&[2, 2]), Partition::empty())].is_one());
        assert_eq!(
            r.coeffs[&(p(&[3, 1]), Partition::empty())],
            QTRatFun::from_int(-1)
        );
        assert_eq!(r.coeffs[&(p(&[2, 1]), p(&[1]))], QTRatFun::from_int(-1));
    }

    #[test]
    fn a_specialization_of_p2() {
        let r = plethysm_a(&basis_vector(Basis::P, &p(&[2]), 2)).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r[&2].is_one());
        assert_eq!(r[&-2], QTRatFun::from_int(-1));
    }

    #[test]
    fn unsupported_alphabet() {
        assert!(matches!(
            "X+Y".parse::<AlphabetSpec>(),
            Err(SymError::UnsupportedAlphabet(_))
        ));
        assert_eq!(
            "Y - Z".parse::<AlphabetSpec>().unwrap(),
            AlphabetSpec::YMinusZ
        );
    }
}
