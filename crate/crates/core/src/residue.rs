//! Residue rings at closed points: Q[x]/(q), optionally extended by `w^2 = s`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;
use crate::poly::Polynomial;
use crate::rational::{self, Rational};

/// An element `u + v w` of `Q[x]/(q)` or of `(Q[x]/(q))[w]/(w^2 - s)`.
///
/// For a rational point `q` is linear and the element is a rational number.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Residue {
    modulus: Polynomial,
    square: Option<Polynomial>,
    u: Polynomial,
    v: Polynomial,
}

impl Residue {
    pub fn field(modulus: &Polynomial, u: &Polynomial) -> Self {
        Self {
            modulus: modulus.monic(),
            square: None,
            u: u.rem(modulus),
            v: Polynomial::zero(),
        }
    }

    pub fn quadratic(modulus: &Polynomial, square: &Polynomial, u: &Polynomial, v: &Polynomial) -> Self {
        Self {
            modulus: modulus.monic(),
            square: Some(square.rem(modulus)),
            u: u.rem(modulus),
            v: v.rem(modulus),
        }
    }

    pub fn rational(c: Rational) -> Self {
        Self {
            modulus: Polynomial::x(),
            square: None,
            u: Polynomial::constant(c),
            v: Polynomial::zero(),
        }
    }

    pub fn modulus(&self) -> &Polynomial {
        &self.modulus
    }

    fn same_ring(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.square == other.square
    }

    pub fn one_like(&self) -> Self {
        Self {
            modulus: self.modulus.clone(),
            square: self.square.clone(),
            u: Polynomial::one(),
            v: Polynomial::zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.u.is_one() && self.v.is_zero()
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert!(self.same_ring(other));
        let q = &self.modulus;
        let (u, v) = match &self.square {
            None => ((&self.u * &other.u).rem(q), Polynomial::zero()),
            Some(s) => (
                (&(&self.u * &other.u) + &(&(&self.v * &other.v) * s)).rem(q),
                (&(&self.u * &other.v) + &(&self.v * &other.u)).rem(q),
            ),
        };
        Self {
            modulus: q.clone(),
            square: self.square.clone(),
            u,
            v,
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            modulus: self.modulus.clone(),
            square: self.square.clone(),
            u: -&self.u,
            v: -&self.v,
        }
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        let q = &self.modulus;
        match &self.square {
            None => {
                let inv = self.u.inv_mod(q).ok_or(AlgebraError::DivisionByZero)?;
                Ok(Self::field(q, &inv))
            }
            Some(s) => {
                let n = (&(&self.u * &self.u) - &(&(&self.v * &self.v) * s)).rem(q);
                let ninv = n.inv_mod(q).ok_or(AlgebraError::DivisionByZero)?;
                Ok(Self::quadratic(q, s, &(&self.u * &ninv), &(-&(&self.v * &ninv))))
            }
        }
    }

    pub fn pow(&self, n: i64) -> Result<Self, AlgebraError> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut result = self.one_like();
        let mut acc = base;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&acc);
            }
            e >>= 1;
            if e > 0 {
                acc = acc.mul(&acc);
            }
        }
        Ok(result)
    }

    /// Norm down to Q.
    pub fn norm(&self) -> Rational {
        let q = &self.modulus;
        let base = match &self.square {
            None => self.u.clone(),
            Some(s) => (&(&self.u * &self.u) - &(&(&self.v * &self.v) * s)).rem(q),
        };
        q.resultant(&base)
    }

    /// The value as a rational number, when the residue ring is Q itself.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.modulus.deg() == 1 && self.v.is_zero() {
            Some(self.u.coeff(0))
        } else {
            None
        }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.as_rational() {
            return write!(f, "{}", rational::format_rational(&c));
        }
        match &self.square {
            None => write!(f, "{} mod ({})", self.u, self.modulus),
            Some(s) => write!(
                f,
                "{} + ({})*w mod ({}), w^2 = {}",
                self.u, self.v, self.modulus, s
            ),
        }
    }
}

impl fmt::Debug for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Residue({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn field_norm_and_inverse() {
        // Q(sqrt 2): x mod x^2 - 2 has norm -2
        let q = Polynomial::from_i64s(&[-2, 0, 1]);
        let a = Residue::field(&q, &Polynomial::x());
        assert_eq!(a.norm(), int(-2));
        assert!(a.mul(&a.inv().unwrap()).is_one());
        assert_eq!(a.pow(2).unwrap().as_rational(), None);
        assert_eq!(a.pow(2).unwrap(), Residue::field(&q, &Polynomial::from_i64s(&[2])));
    }

    #[test]
    fn quadratic_norm_is_multiplicative() {
        let q = Polynomial::from_i64s(&[-3, 1]);
        let s = Polynomial::from_i64s(&[5]);
        let a = Residue::quadratic(&q, &s, &Polynomial::from_i64s(&[1]), &Polynomial::from_i64s(&[2]));
        let b = Residue::quadratic(&q, &s, &Polynomial::from_i64s(&[3]), &Polynomial::from_i64s(&[-1]));
        assert_eq!(a.mul(&b).norm(), a.norm() * b.norm());
        assert_eq!(a.norm(), int(1 - 4 * 5));
    }
}
