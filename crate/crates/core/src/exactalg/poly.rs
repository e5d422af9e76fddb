//! Dense polynomials used for gcd reduction: `Q[q]` and `Q[q][t]`.

use num_traits::{One, Zero};

use super::{QTCoeff, Rational};

/// Univariate polynomial in q, coefficients low degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct UPoly(pub Vec<Rational>);

impl UPoly {
    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn one() -> Self {
        UPoly(vec![Rational::one()])
    }

    fn trimmed(mut v: Vec<Rational>) -> Self {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        UPoly(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    pub fn lc(&self) -> &Rational {
        self.0
            .last()
            .expect("leading coefficient of zero polynomial")
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let z = Rational::zero();
        Self::trimmed(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&z) - o.0.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::trimmed(v)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UPoly(self.0.iter().map(|a| a * c).collect())
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut r = self.0.clone();
        if r.len() < d.0.len() {
            return (Self::zero(), self.clone());
        }
        let dl = d.0.len();
        let inv = d.lc().recip();
        let mut quo = vec![Rational::zero(); r.len() - dl + 1];
        for i in (0..quo.len()).rev() {
            let c = &r[i + dl - 1] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.0.iter().enumerate() {
                r[i + j] -= &c * dj;
            }
            quo[i] = c;
        }
        r.truncate(dl - 1);
        (Self::trimmed(quo), Self::trimmed(r))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.lc().recip())
    }

    pub fn gcd(a: &Self, b: &Self) -> Self {
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let (_, r) = x.divrem(&y);
            x = y;
            y = r;
        }
        x.monic()
    }
}

/// Polynomial in t with coefficients in `Q[q]`, low degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BiPoly(pub Vec<UPoly>);

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly(Vec::new())
    }

    fn trimmed(mut v: Vec<UPoly>) -> Self {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        BiPoly(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn deg(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lc(&self) -> &UPoly {
        self.0
            .last()
            .expect("leading coefficient of zero polynomial")
    }

    /// Requires all exponents nonnegative.
    pub fn from_qt(c: &QTCoeff) -> Self {
        let mut v: Vec<Vec<Rational>> = Vec::new();
        for (&(a, b), x) in c.terms() {
            assert!(
                a >= 0 && b >= 0,
                "negative exponent in polynomial conversion"
            );
            let (a, b) = (a as usize, b as usize);
            if v.len() <= b {
                v.resize(b + 1, Vec::new());
            }
            if v[b].len() <= a {
                v[b].resize(a + 1, Rational::zero());
            }
            v[b][a] = x.clone();
        }
        Self::trimmed(v.into_iter().map(UPoly::trimmed).collect())
    }

    pub fn to_qt(&self) -> QTCoeff {
        let mut out = QTCoeff::zero();
        for (b, u) in self.0.iter().enumerate() {
            for (a, x) in u.0.iter().enumerate() {
                out.add_term(a as i32, b as i32, x);
            }
        }
        out
    }

    fn content(&self) -> UPoly {
        let mut g = UPoly::zero();
        for c in &self.0 {
            g = UPoly::gcd(&g, c);
            if g.is_constant() && !g.is_zero() {
                return UPoly::one();
            }
        }
        g
    }

    fn div_upoly(&self, c: &UPoly) -> Self {
        BiPoly(
            self.0
                .iter()
                .map(|x| {
                    let (qq, r) = x.divrem(c);
                    debug_assert!(r.is_zero());
                    qq
                })
                .collect(),
        )
    }

    fn mul_upoly(&self, c: &UPoly) -> Self {
        Self::trimmed(self.0.iter().map(|x| x.mul(c)).collect())
    }

    fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let c = self.content();
        self.div_upoly(&c)
    }

    /// `self - c * t^s * o`
    fn sub_shifted(&self, c: &UPoly, s: usize, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len() + s);
        let mut v: Vec<UPoly> = (0..n)
            .map(|i| self.0.get(i).cloned().unwrap_or_else(UPoly::zero))
            .collect();
        for (i, x) in o.0.iter().enumerate() {
            v[i + s] = v[i + s].sub(&x.mul(c));
        }
        Self::trimmed(v)
    }

    fn pseudo_rem(&self, b: &Self) -> Self {
        let lcb = b.lc().clone();
        let mut r = self.clone();
        while !r.is_zero() && r.deg() >= b.deg() {
            let s = r.deg() - b.deg();
            let lcr = r.lc().clone();
            r = r.mul_upoly(&lcb).sub_shifted(&lcr, s, b);
        }
        r
    }

    pub fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return b.primitive().mul_upoly(&b.content().monic());
        }
        if b.is_zero() {
            return a.primitive().mul_upoly(&a.content().monic());
        }
        let c = UPoly::gcd(&a.content(), &b.content());
        let (mut x, mut y) = (a.primitive(), b.primitive());
        if x.deg() < y.deg() {
            std::mem::swap(&mut x, &mut y);
        }
        while !y.is_zero() {
            let r = x.pseudo_rem(&y);
            x = y;
            y = r.primitive();
        }
        x.primitive().mul_upoly(&c)
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let mut r = self.clone();
        let mut quo: Vec<UPoly> = Vec::new();
        while !r.is_zero() {
            if r.deg() < d.deg() {
                return None;
            }
            let s = r.deg() - d.deg();
            let (c, rem) = r.lc().divrem(d.lc());
            if !rem.is_zero() {
                return None;
            }
            if quo.len() <= s {
                quo.resize(s + 1, UPoly::zero());
            }
            r = r.sub_shifted(&c, s, d);
            quo[s] = c;
        }
        Some(Self::trimmed(quo))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &[(i32, i32, i64)]) -> QTCoeff {
        let mut out = QTCoeff::zero();
        for &(a, b, c) in s {
            out.add_term(a, b, &crate::exactalg::rat(c));
        }
        out
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let f = p(&[(1, 0, 1), (0, 1, -1)]); // q - t
        let g = p(&[(0, 0, 1), (1, 1, 1)]); // 1 + qt
        let h = p(&[(2, 0, 1), (0, 0, 3), (0, 2, 1)]);
        let a = BiPoly::from_qt(&(&f * &g));
        let b = BiPoly::from_qt(&(&f * &h));
        let gg = BiPoly::gcd(&a, &b);
        let q = BiPoly::from_qt(&f).exact_div(&gg).expect("divides");
        assert_eq!(q.0.len(), 1);
        assert!(q.0[0].is_constant());
    }

    #[test]
    fn exact_div_detects_nondivisible() {
        let a = BiPoly::from_qt(&p(&[(1, 0, 1), (0, 1, 1)]));
        let b = BiPoly::from_qt(&p(&[(1, 0, 1), (0, 1, -1)]));
        assert!(a.exact_div(&b).is_none());
        let ab = BiPoly::from_qt(&(&a.to_qt() * &b.to_qt()));
        assert_eq!(ab.exact_div(&b).unwrap(), a);
    }
}
