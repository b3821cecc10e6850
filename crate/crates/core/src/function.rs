//! Elements `(a + b y) / d` of the function field Q(x)[y]/(y^2 - h).

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::curve::HyperellipticCurve;
use crate::error::AlgebraError;
use crate::poly::Polynomial;
use crate::rational::Rational;

/// Kept in canonical form: gcd(a, b, d) = 1 and d monic, so equality is literal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "FunctionRepr", into = "FunctionRepr")]
pub struct FunctionFieldElement {
    a: Polynomial,
    b: Polynomial,
    d: Polynomial,
}

#[derive(Serialize, Deserialize)]
struct FunctionRepr {
    a: Polynomial,
    #[serde(default)]
    b: Polynomial,
    #[serde(default = "Polynomial::one")]
    d: Polynomial,
}

impl TryFrom<FunctionRepr> for FunctionFieldElement {
    type Error = AlgebraError;
    fn try_from(r: FunctionRepr) -> Result<Self, AlgebraError> {
        FunctionFieldElement::new(r.a, r.b, r.d)
    }
}

impl From<FunctionFieldElement> for FunctionRepr {
    fn from(f: FunctionFieldElement) -> Self {
        FunctionRepr {
            a: f.a,
            b: f.b,
            d: f.d,
        }
    }
}

impl FunctionFieldElement {
    pub fn new(a: Polynomial, b: Polynomial, d: Polynomial) -> Result<Self, AlgebraError> {
        if d.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::normalized(a, b, d))
    }

    fn normalized(a: Polynomial, b: Polynomial, d: Polynomial) -> Self {
        if a.is_zero() && b.is_zero() {
            return Self::zero();
        }
        let g = a.gcd(&b).gcd(&d);
        let (a, b, d) = if g.deg() > 0 {
            (a.exact_div(&g), b.exact_div(&g), d.exact_div(&g))
        } else {
            (a, b, d)
        };
        let inv = d.lc().recip();
        Self {
            a: a.scale(&inv),
            b: b.scale(&inv),
            d: d.scale(&inv),
        }
    }

    pub fn zero() -> Self {
        Self {
            a: Polynomial::zero(),
            b: Polynomial::zero(),
            d: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn from_poly(a: Polynomial) -> Self {
        Self {
            a,
            b: Polynomial::zero(),
            d: Polynomial::one(),
        }
    }

    /// The coordinate function `x`.
    pub fn x() -> Self {
        Self::from_poly(Polynomial::x())
    }

    /// The coordinate function `y`.
    pub fn y() -> Self {
        Self {
            a: Polynomial::zero(),
            b: Polynomial::one(),
            d: Polynomial::one(),
        }
    }

    /// `p(x) / q(x)`.
    pub fn rational_function(p: Polynomial, q: Polynomial) -> Result<Self, AlgebraError> {
        Self::new(p, Polynomial::zero(), q)
    }

    pub fn a(&self) -> &Polynomial {
        &self.a
    }

    pub fn b(&self) -> &Polynomial {
        &self.b
    }

    pub fn d(&self) -> &Polynomial {
        &self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// The value if this is a constant function.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.b.is_zero() && self.a.deg() <= 0 && self.d.is_one() {
            Some(self.a.coeff(0))
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// Invariant under `y -> -y`.
    pub fn is_even(&self) -> bool {
        self.b.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        let a = &(&self.a * &other.d) + &(&other.a * &self.d);
        let b = &(&self.b * &other.d) + &(&other.b * &self.d);
        Self::normalized(a, b, &self.d * &other.d)
    }

    pub fn neg(&self) -> Self {
        Self {
            a: -&self.a,
            b: -&self.b,
            d: self.d.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::normalized(self.a.scale(c), self.b.scale(c), self.d.clone())
    }

    pub fn mul(&self, other: &Self, curve: &HyperellipticCurve) -> Self {
        let h = curve.h();
        let a = &(&self.a * &other.a) + &(&(&self.b * &other.b) * h);
        let b = &(&self.a * &other.b) + &(&self.b * &other.a);
        Self::normalized(a, b, &self.d * &other.d)
    }

    /// `N = a^2 - b^2 h`, so that the norm of the element is `N / d^2`.
    pub fn norm_numerator(&self, curve: &HyperellipticCurve) -> Polynomial {
        &(&self.a * &self.a) - &(&(&self.b * &self.b) * curve.h())
    }

    pub fn inv(&self, curve: &HyperellipticCurve) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroFunction);
        }
        let n = self.norm_numerator(curve);
        Ok(Self::normalized(&self.a * &self.d, -&(&self.b * &self.d), n))
    }

    pub fn div(&self, other: &Self, curve: &HyperellipticCurve) -> Result<Self, AlgebraError> {
        Ok(self.mul(&other.inv(curve)?, curve))
    }

    pub fn pow(&self, n: i64, curve: &HyperellipticCurve) -> Result<Self, AlgebraError> {
        let base = if n < 0 { self.inv(curve)? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut result = Self::one();
        let mut acc = base;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&acc, curve);
            }
            e >>= 1;
            if e > 0 {
                acc = acc.mul(&acc, curve);
            }
        }
        Ok(result)
    }

    /// Pullback by the hyperelliptic involution `y -> -y`.
    pub fn involution(&self) -> Self {
        Self {
            a: self.a.clone(),
            b: -&self.b,
            d: self.d.clone(),
        }
    }

    /// Scales so that the leading coefficient of the numerator part is 1.
    ///
    /// The leading coefficient is that of `a` if nonzero, otherwise that of `b`.
    pub fn normalize_leading(&self) -> Self {
        let lead = if !self.a.is_zero() {
            self.a.lc()
        } else if !self.b.is_zero() {
            self.b.lc()
        } else {
            return self.clone();
        };
        self.scale(&lead.recip())
    }
}

impl fmt::Display for FunctionFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = match (self.a.is_zero(), self.b.is_zero()) {
            (true, true) => "0".to_string(),
            (false, true) => format!("{}", self.a),
            (true, false) => {
                if self.b.is_one() {
                    "y".to_string()
                } else {
                    format!("({})*y", self.b)
                }
            }
            (false, false) => format!("{} + ({})*y", self.a, self.b),
        };
        if self.d.is_one() {
            write!(f, "{num}")
        } else {
            write!(f, "({num}) / ({})", self.d)
        }
    }
}

impl fmt::Debug for FunctionFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FunctionFieldElement({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn canonical_form() {
        let x = Polynomial::x();
        let f = FunctionFieldElement::new(
            &x * &Polynomial::from_i64s(&[0, 2]),
            Polynomial::zero(),
            Polynomial::from_i64s(&[0, 4]),
        )
        .unwrap();
        assert_eq!(f, FunctionFieldElement::from_poly(Polynomial::from_i64s(&[0, 1, 0]).scale(&crate::rational::frac(1, 2))));
    }

    #[test]
    fn inverse_and_power() {
        let c = HyperellipticCurve::from_int_roots(&[0, 1, 3]).unwrap();
        let f = FunctionFieldElement::y().add(&FunctionFieldElement::x());
        let g = f.inv(&c).unwrap();
        assert_eq!(f.mul(&g, &c), FunctionFieldElement::one());
        let f3 = f.pow(3, &c).unwrap();
        let fm3 = f.pow(-3, &c).unwrap();
        assert_eq!(f3.mul(&fm3, &c), FunctionFieldElement::one());
        // y^2 = h
        let y2 = FunctionFieldElement::y().pow(2, &c).unwrap();
        assert_eq!(y2, FunctionFieldElement::from_poly(c.h().clone()));
        assert_eq!(
            FunctionFieldElement::constant(int(3)).as_constant(),
            Some(int(3))
        );
    }
}
