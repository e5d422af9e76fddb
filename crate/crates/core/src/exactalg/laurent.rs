use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{ExactError, Rational};

/// Sparse Laurent polynomial in `q` and `t` with rational coefficients.
///
/// Keys are `(q exponent, t exponent)`. Zero coefficients are never stored,
/// so structural equality is mathematical equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QTCoeff {
    terms: BTreeMap<(i32, i32), Rational>,
}

/// One serialized term of a [`QTCoeff`].
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct QTerm {
    pub q: i32,
    pub t: i32,
    pub num: String,
    pub den: String,
}

impl QTCoeff {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn monomial(c: Rational, qe: i32, te: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((qe, te), c);
        }
        Self { terms }
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    pub fn t() -> Self {
        Self::t_pow(1)
    }

    pub fn q_pow(e: i32) -> Self {
        Self::monomial(Rational::one(), e, 0)
    }

    pub fn t_pow(e: i32) -> Self {
        Self::monomial(Rational::one(), 0, e)
    }

    /// `(1 - t)^k`.
    pub fn one_minus_t_pow(k: u32) -> Self {
        (Self::one() - Self::t()).pow(k)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i32, i32), &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, qe: i32, te: i32) -> Rational {
        self.terms
            .get(&(qe, te))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, qe: i32, te: i32, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let key = (qe, te);
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Multiply by `q^dq t^dt`.
    pub fn shift(&self, dq: i32, dt: i32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), v)| ((a + dq, b + dt), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Smallest q exponent and smallest t exponent (taken independently).
    pub fn min_exponents(&self) -> Option<(i32, i32)> {
        let mq = self.terms.keys().map(|k| k.0).min()?;
        let mt = self.terms.keys().map(|k| k.1).min()?;
        Some((mq, mt))
    }

    pub fn max_t_degree(&self) -> Option<i32> {
        self.terms.keys().map(|k| k.1).max()
    }

    /// Keep only terms with t exponent at most `max`.
    pub fn truncate_t(&self, max: i32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.1 <= max)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    /// The coefficient of `t^te`, as a Laurent polynomial in q alone.
    pub fn t_slice(&self, te: i32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.1 == te)
                .map(|(&(a, _), v)| ((a, 0), v.clone()))
                .collect(),
        }
    }

    /// Leading term in lexicographic `(q, t)` order.
    pub fn leading(&self) -> Option<(&(i32, i32), &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn has_nonnegative_integer_coeffs(&self) -> bool {
        self.terms
            .values()
            .all(|c| c.is_integer() && !c.is_negative())
    }

    pub fn sum_of_coefficients(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    pub fn specialize(&self, q0: &Rational, t0: &Rational) -> Result<Rational, ExactError> {
        let mut acc = Rational::zero();
        for (&(a, b), c) in &self.terms {
            acc += c * rpow(q0, a)? * rpow(t0, b)?;
        }
        Ok(acc)
    }

    pub fn to_terms(&self) -> Vec<QTerm> {
        self.terms
            .iter()
            .map(|(&(q, t), c)| QTerm {
                q,
                t,
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            })
            .collect()
    }

    pub fn from_terms(terms: &[QTerm]) -> Result<Self, String> {
        let mut out = Self::zero();
        for term in terms {
            let num: BigInt = term
                .num
                .parse()
                .map_err(|_| format!("bad numerator {:?}", term.num))?;
            let den: BigInt = term
                .den
                .parse()
                .map_err(|_| format!("bad denominator {:?}", term.den))?;
            if den.is_zero() {
                return Err("zero denominator".into());
            }
            out.add_term(term.q, term.t, &BigRational::new(num, den));
        }
        Ok(out)
    }
}

fn rpow(x: &Rational, e: i32) -> Result<Rational, ExactError> {
    if e >= 0 {
        return Ok(num_traits::pow(x.clone(), e as usize));
    }
    if x.is_zero() {
        return Err(ExactError::PoleAtZero);
    }
    Ok(num_traits::pow(x.recip(), (-e) as usize))
}

impl From<Rational> for QTCoeff {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for QTCoeff {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl AddAssign<&QTCoeff> for QTCoeff {
    fn add_assign(&mut self, rhs: &QTCoeff) {
        for (&(a, b), c) in &rhs.terms {
            self.add_term(a, b, c);
        }
    }
}

impl SubAssign<&QTCoeff> for QTCoeff {
    fn sub_assign(&mut self, rhs: &QTCoeff) {
        for (&(a, b), c) in &rhs.terms {
            self.add_term(a, b, &-c);
        }
    }
}

impl Add<&QTCoeff> for &QTCoeff {
    type Output = QTCoeff;
    fn add(self, rhs: &QTCoeff) -> QTCoeff {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&QTCoeff> for &QTCoeff {
    type Output = QTCoeff;
    fn sub(self, rhs: &QTCoeff) -> QTCoeff {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&QTCoeff> for &QTCoeff {
    type Output = QTCoeff;
    fn mul(self, rhs: &QTCoeff) -> QTCoeff {
        let mut out = QTCoeff::zero();
        for (&(a, b), c) in &self.terms {
            for (&(x, y), d) in &rhs.terms {
                out.add_term(a + x, b + y, &(c * d));
            }
        }
        out
    }
}

impl MulAssign<&QTCoeff> for QTCoeff {
    fn mul_assign(&mut self, rhs: &QTCoeff) {
        *self = &*self * rhs;
    }
}

impl Neg for &QTCoeff {
    type Output = QTCoeff;
    fn neg(self) -> QTCoeff {
        QTCoeff {
            terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect(),
        }
    }
}

impl Neg for QTCoeff {
    type Output = QTCoeff;
    fn neg(self) -> QTCoeff {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr<QTCoeff> for QTCoeff {
            type Output = QTCoeff;
            fn $f(self, rhs: QTCoeff) -> QTCoeff {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&QTCoeff> for QTCoeff {
            type Output = QTCoeff;
            fn $f(self, rhs: &QTCoeff) -> QTCoeff {
                (&self).$f(rhs)
            }
        }
        impl $tr<QTCoeff> for &QTCoeff {
            type Output = QTCoeff;
            fn $f(self, rhs: QTCoeff) -> QTCoeff {
                self.$f(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl fmt::Display for QTCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&(a, b), c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut parts = Vec::new();
            if !mag.is_one() || (a == 0 && b == 0) {
                parts.push(mag.to_string());
            }
            match a {
                0 => {}
                1 => parts.push("q".into()),
                _ => parts.push(format!("q^{a}")),
            }
            match b {
                0 => {}
                1 => parts.push("t".into()),
                _ => parts.push(format!("t^{b}")),
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl Serialize for QTCoeff {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_terms().serialize(s)
    }
}

impl<'de> Deserialize<'de> for QTCoeff {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms = Vec::<QTerm>::deserialize(d)?;
        QTCoeff::from_terms(&terms).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, ratio};

    #[test]
    fn cancellation_and_telescoping() {
        let q = QTCoeff::q();
        let t = QTCoeff::t();
        assert_eq!(&(&q + &t) + &(&q - &t), q.scale(&rat(2)));
        let one = QTCoeff::one();
        let lhs = (&one - &t) * (&(&one + &t) + &t.pow(2));
        assert_eq!(lhs, &one - &t.pow(3));
        assert_eq!(QTCoeff::q_pow(-1) * QTCoeff::q(), one);
    }

    #[test]
    fn extraction() {
        let p = QTCoeff::q().scale(&rat(2)) + QTCoeff::t().scale(&rat(3));
        assert_eq!(p.coeff(1, 0), rat(2));
        let c = QTCoeff::one() - QTCoeff::t_pow(3);
        assert_eq!(c.coeff(0, 5), rat(0));
        assert_eq!(c.coeff(0, 3), rat(-1));
    }

    #[test]
    fn specialization() {
        let p = (QTCoeff::one() - QTCoeff::t()) * (QTCoeff::one() + QTCoeff::t());
        assert_eq!(p.specialize(&rat(5), &rat(1)).unwrap(), rat(0));
        let p = QTCoeff::q() + QTCoeff::q_pow(-1);
        assert_eq!(p.specialize(&rat(2), &rat(0)).unwrap(), ratio(5, 2));
        assert_eq!(p.specialize(&rat(0), &rat(1)), Err(ExactError::PoleAtZero));
        assert_eq!(
            QTCoeff::q_pow(18).specialize(&rat(1), &rat(1)).unwrap(),
            rat(1)
        );
    }

    #[test]
    fn json_is_sorted() {
        let p = QTCoeff::t().scale(&ratio(-1, 2)) + QTCoeff::q_pow(-2);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(
            s,
            r#"[{"q":-2,"t":0,"num":"1","den":"1"},{"q":0,"t":1,"num":"-1","den":"2"}]"#
        );
        let back: QTCoeff = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn display() {
        let p = QTCoeff::one() - QTCoeff::q_pow(-1).scale(&rat(3)) + QTCoeff::t_pow(2);
        assert_eq!(p.to_string(), "-3*q^-1 + 1 + t^2");
    }
}
