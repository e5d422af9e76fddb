use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::BiPoly;
use super::{ExactError, QTCoeff, Rational};

/// Reduced rational function `num / den` in q and t.
///
/// Canonical form: `den` is a polynomial not divisible by q or t, shares no
/// factor with `num`, has coprime integer coefficients and a positive
/// coefficient on its lexicographically largest `(q, t)` term. Any monomial
/// factor lives in `num`, which may carry negative exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QTRatFun {
    num: QTCoeff,
    den: QTCoeff,
}

impl Default for QTRatFun {
    fn default() -> Self {
        Self::zero()
    }
}

impl QTRatFun {
    pub fn zero() -> Self {
        Self {
            num: QTCoeff::zero(),
            den: QTCoeff::one(),
        }
    }

    pub fn one() -> Self {
        Self {
            num: QTCoeff::one(),
            den: QTCoeff::one(),
        }
    }

    pub fn from_int(c: i64) -> Self {
        Self::from(QTCoeff::from_int(c))
    }

    pub fn new(num: QTCoeff, den: QTCoeff) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let (dq, dt) = den.min_exponents().unwrap();
        let (nq, nt) = num.min_exponents().unwrap();
        let d = den.shift(-dq, -dt);
        let n = num.shift(-nq, -nt);
        let (sq, st) = (nq - dq, nt - dt);
        if d.len() == 1 {
            // d is a nonzero constant
            let c = d.coeff(0, 0).recip();
            return Ok(Self {
                num: n.scale(&c).shift(sq, st),
                den: QTCoeff::one(),
            });
        }
        let bn = BiPoly::from_qt(&n);
        let bd = BiPoly::from_qt(&d);
        let g = BiPoly::gcd(&bn, &bd);
        let (n, d) = if g.0.len() <= 1 && g.0.first().is_none_or(|u| u.is_constant()) {
            (n, d)
        } else {
            (
                bn.exact_div(&g).expect("gcd divides numerator").to_qt(),
                bd.exact_div(&g).expect("gcd divides denominator").to_qt(),
            )
        };
        let s = normalizer(&d);
        Ok(Self {
            num: n.scale(&s).shift(sq, st),
            den: d.scale(&s),
        })
    }

    pub fn numerator(&self) -> &QTCoeff {
        &self.num
    }

    pub fn denominator(&self) -> &QTCoeff {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The Laurent polynomial this function equals, if it is one.
    pub fn as_laurent(&self) -> Option<&QTCoeff> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn recip(&self) -> Result<Self, ExactError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_laurent(&self, c: &QTCoeff) -> Self {
        if self.den.is_one() {
            return Self {
                num: &self.num * c,
                den: QTCoeff::one(),
            };
        }
        Self::new(&self.num * c, self.den.clone()).expect("nonzero denominator")
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self, ExactError> {
        if o.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Self::new(&self.num * &o.den, &self.den * &o.num)
    }

    pub fn specialize(&self, q0: &Rational, t0: &Rational) -> Result<Rational, ExactError> {
        let d = self.den.specialize(q0, t0)?;
        if d.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(self.num.specialize(q0, t0)? / d)
    }
}

/// Scalar making `d` integer-primitive with positive leading coefficient.
fn normalizer(d: &QTCoeff) -> Rational {
    let mut l = BigInt::one();
    let mut g = BigInt::zero();
    for (_, c) in d.terms() {
        l = l.lcm(c.denom());
    }
    for (_, c) in d.terms() {
        let v = c * BigRational::from_integer(l.clone());
        g = g.gcd(v.numer());
    }
    let mut s = BigRational::new(l, g);
    if d.leading().unwrap().1.is_negative() {
        s = -s;
    }
    s
}

impl From<QTCoeff> for QTRatFun {
    fn from(c: QTCoeff) -> Self {
        Self {
            num: c,
            den: QTCoeff::one(),
        }
    }
}

impl From<Rational> for QTRatFun {
    fn from(c: Rational) -> Self {
        Self::from(QTCoeff::constant(c))
    }
}

impl Add<&QTRatFun> for &QTRatFun {
    type Output = QTRatFun;
    fn add(self, o: &QTRatFun) -> QTRatFun {
        if self.den == o.den {
            if self.den.is_one() {
                return QTRatFun {
                    num: &self.num + &o.num,
                    den: QTCoeff::one(),
                };
            }
            return QTRatFun::new(&self.num + &o.num, self.den.clone()).unwrap();
        }
        QTRatFun::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
        .unwrap()
    }
}

impl Sub<&QTRatFun> for &QTRatFun {
    type Output = QTRatFun;
    fn sub(self, o: &QTRatFun) -> QTRatFun {
        self + &(-o)
    }
}

impl Mul<&QTRatFun> for &QTRatFun {
    type Output = QTRatFun;
    fn mul(self, o: &QTRatFun) -> QTRatFun {
        if self.is_zero() || o.is_zero() {
            return QTRatFun::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return QTRatFun {
                num: &self.num * &o.num,
                den: QTCoeff::one(),
            };
        }
        QTRatFun::new(&self.num * &o.num, &self.den * &o.den).unwrap()
    }
}

impl Div<&QTRatFun> for &QTRatFun {
    type Output = QTRatFun;
    /// Panics on division by zero; use [`QTRatFun::checked_div`] to handle it.
    fn div(self, o: &QTRatFun) -> QTRatFun {
        self.checked_div(o)
            .expect("division by zero rational function")
    }
}

impl Neg for &QTRatFun {
    type Output = QTRatFun;
    fn neg(self) -> QTRatFun {
        QTRatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for QTRatFun {
    type Output = QTRatFun;
    fn neg(self) -> QTRatFun {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr<QTRatFun> for QTRatFun {
            type Output = QTRatFun;
            fn $f(self, rhs: QTRatFun) -> QTRatFun {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&QTRatFun> for QTRatFun {
            type Output = QTRatFun;
            fn $f(self, rhs: &QTRatFun) -> QTRatFun {
                (&self).$f(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl fmt::Display for QTRatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RatFunRepr {
    num: QTCoeff,
    den: QTCoeff,
}

impl Serialize for QTRatFun {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RatFunRepr {
            num: self.num.clone(),
            den: self.den.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QTRatFun {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = RatFunRepr::deserialize(d)?;
        QTRatFun::new(r.num, r.den).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn one_minus(x: QTCoeff) -> QTCoeff {
        QTCoeff::one() - x
    }

    #[test]
    fn inverse_times_self() {
        let a = QTRatFun::new(QTCoeff::one(), one_minus(QTCoeff::t())).unwrap();
        let b = QTRatFun::from(one_minus(QTCoeff::t()));
        assert!((&a * &b).is_one());
    }

    #[test]
    fn common_denominator() {
        let a = QTRatFun::new(QTCoeff::one(), one_minus(QTCoeff::q())).unwrap();
        let b = QTRatFun::new(QTCoeff::one(), one_minus(QTCoeff::t())).unwrap();
        let expect = QTRatFun::new(
            QTCoeff::from_int(2) - QTCoeff::q() - QTCoeff::t(),
            one_minus(QTCoeff::q()) * one_minus(QTCoeff::t()),
        )
        .unwrap();
        assert_eq!(&a + &b, expect);
    }

    #[test]
    fn self_quotient_is_one() {
        let f = QTCoeff::q() - QTCoeff::t();
        assert!(QTRatFun::new(f.clone(), f).unwrap().is_one());
    }

    #[test]
    fn sign_and_content_are_canonical() {
        let a = QTRatFun::new(QTCoeff::one(), QTCoeff::t() - QTCoeff::one()).unwrap();
        let b = QTRatFun::new(
            QTCoeff::from_int(-2),
            (QTCoeff::one() - QTCoeff::t()).scale(&rat(2)),
        )
        .unwrap();
        assert_eq!(a, b);
        assert!(a.denominator().leading().unwrap().1 > &rat(0));
    }

    #[test]
    fn monomials_move_to_numerator() {
        let a = QTRatFun::new(QTCoeff::one(), QTCoeff::q_pow(2) * QTCoeff::t()).unwrap();
        assert_eq!(a.as_laurent(), Some(&QTCoeff::monomial(rat(1), -2, -1)));
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(
            QTRatFun::one().checked_div(&QTRatFun::zero()),
            Err(ExactError::DivisionByZero)
        );
    }

    #[test]
    fn cancellation_through_gcd() {
        // (q^2 - t^2) / (q + t)  ==  q - t
        let n = QTCoeff::q_pow(2) - QTCoeff::t_pow(2);
        let d = QTCoeff::q() + QTCoeff::t();
        let r = QTRatFun::new(n, d).unwrap();
        assert_eq!(r.as_laurent(), Some(&(QTCoeff::q() - QTCoeff::t())));
    }
}
