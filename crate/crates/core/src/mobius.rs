//! Change of model by a fractional-linear substitution in x.
//!
//! An isomorphism sends `(x, y)` to `x' = (p x + q) / (r x + s)`,
//! `y' = mu y / (r x + s)^(g+1)`, and the target model is recomputed exactly.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::curve::{ClosedPoint, CurvePoint, HyperellipticCurve, InfinitySheet, Place};
use crate::divisor::Divisor;
use crate::error::AlgebraError;
use crate::function::FunctionFieldElement;
use crate::poly::Polynomial;
use crate::rational::{self, Rational};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MobiusMap {
    #[serde(with = "rational::serde_str")]
    pub p: Rational,
    #[serde(with = "rational::serde_str")]
    pub q: Rational,
    #[serde(with = "rational::serde_str")]
    pub r: Rational,
    #[serde(with = "rational::serde_str")]
    pub s: Rational,
}

impl MobiusMap {
    pub fn new(p: Rational, q: Rational, r: Rational, s: Rational) -> Result<Self, AlgebraError> {
        let m = Self { p, q, r, s };
        if m.det().is_zero() {
            return Err(AlgebraError::SingularMap);
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        Self {
            p: Rational::one(),
            q: Rational::zero(),
            r: Rational::zero(),
            s: Rational::one(),
        }
    }

    /// `x -> 1 / (x - b)`, which sends `b` to infinity.
    pub fn send_to_infinity(b: &Rational) -> Self {
        Self {
            p: Rational::zero(),
            q: Rational::one(),
            r: Rational::one(),
            s: -b.clone(),
        }
    }

    /// `x -> c x`.
    pub fn scaling(c: &Rational) -> Result<Self, AlgebraError> {
        Self::new(c.clone(), Rational::zero(), Rational::zero(), Rational::one())
    }

    pub fn det(&self) -> Rational {
        &self.p * &self.s - &self.q * &self.r
    }

    pub fn inverse(&self) -> Self {
        Self {
            p: self.s.clone(),
            q: -self.q.clone(),
            r: -self.r.clone(),
            s: self.p.clone(),
        }
    }

    /// Image of a finite x, or `None` for infinity.
    pub fn apply(&self, x: &Rational) -> Option<Rational> {
        let den = &self.r * x + &self.s;
        if den.is_zero() {
            None
        } else {
            Some((&self.p * x + &self.q) / den)
        }
    }
}

/// A model isomorphism between two hyperelliptic curves, with exact transport of
/// points and functions in both directions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MobiusTransport {
    source: HyperellipticCurve,
    target: HyperellipticCurve,
    map: MobiusMap,
    #[serde(with = "rational::serde_str")]
    mu: Rational,
}

impl std::fmt::Debug for MobiusMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "x -> ({} x + {}) / ({} x + {})",
            rational::format_rational(&self.p),
            rational::format_rational(&self.q),
            rational::format_rational(&self.r),
            rational::format_rational(&self.s)
        )
    }
}

impl MobiusTransport {
    pub fn new(source: &HyperellipticCurve, map: MobiusMap) -> Result<Self, AlgebraError> {
        Self::with_scale(source, map, Rational::one())
    }

    pub fn with_scale(
        source: &HyperellipticCurve,
        map: MobiusMap,
        mu: Rational,
    ) -> Result<Self, AlgebraError> {
        if map.det().is_zero() || mu.is_zero() {
            return Err(AlgebraError::SingularMap);
        }
        let n = 2 * source.genus() + 2;
        let inv = map.inverse();
        let numerator = source
            .h()
            .mobius_numerator(&inv.p, &inv.q, &inv.r, &inv.s, n);
        let factor = &mu * &mu / num_traits::pow(map.det(), n);
        let target = HyperellipticCurve::new(numerator.scale(&factor))?;
        Ok(Self {
            source: source.clone(),
            target,
            map,
            mu,
        })
    }

    pub fn identity(curve: &HyperellipticCurve) -> Self {
        Self {
            source: curve.clone(),
            target: curve.clone(),
            map: MobiusMap::identity(),
            mu: Rational::one(),
        }
    }

    pub fn source(&self) -> &HyperellipticCurve {
        &self.source
    }

    pub fn target(&self) -> &HyperellipticCurve {
        &self.target
    }

    pub fn map(&self) -> &MobiusMap {
        &self.map
    }

    /// The transport in the opposite direction; its target is exactly this source.
    pub fn inverse(&self) -> Self {
        let g = self.source.genus();
        Self {
            source: self.target.clone(),
            target: self.source.clone(),
            map: self.map.inverse(),
            mu: num_traits::pow(self.map.det(), g + 1) / &self.mu,
        }
    }

    pub fn forward_point(&self, pt: &CurvePoint) -> Result<CurvePoint, AlgebraError> {
        self.source.check_point(pt)?;
        let g1 = self.source.genus() + 1;
        let MobiusMap { p, q, r, s } = &self.map;
        let out = match pt {
            CurvePoint::Affine { x, .. } | CurvePoint::Branch { x } => {
                let y0 = pt.y().unwrap();
                let den = r * x + s;
                if !den.is_zero() {
                    let x1 = (p * x + q) / &den;
                    let y1 = &self.mu * &y0 / num_traits::pow(den, g1);
                    CurvePoint::affine(x1, y1)
                } else if y0.is_zero() {
                    CurvePoint::infinity()
                } else {
                    let ratio = &self.mu * &y0 / num_traits::pow(p * x + q, g1);
                    CurvePoint::Infinity {
                        sheet: HyperellipticCurve::sheet_from_sign(&ratio),
                    }
                }
            }
            CurvePoint::Infinity { sheet } => {
                let c = if *sheet == InfinitySheet::Single {
                    Rational::zero()
                } else {
                    let sign = HyperellipticCurve::infinity_sign(*sheet);
                    self.source.sqrt_lc().unwrap() * rational::int(sign as i64)
                };
                if !r.is_zero() {
                    let x1 = p / r;
                    let y1 = &self.mu * &c / num_traits::pow(r.clone(), g1);
                    CurvePoint::affine(x1, y1)
                } else if *sheet == InfinitySheet::Single {
                    CurvePoint::infinity()
                } else {
                    let ratio = &self.mu * &c / num_traits::pow(p.clone(), g1);
                    CurvePoint::Infinity {
                        sheet: HyperellipticCurve::sheet_from_sign(&ratio),
                    }
                }
            }
        };
        debug_assert!(self.target.contains(&out), "transported point off target");
        Ok(out)
    }

    pub fn backward_point(&self, pt: &CurvePoint) -> Result<CurvePoint, AlgebraError> {
        self.inverse().forward_point(pt)
    }

    /// Push a function on the source forward: returns `F o iso^{-1}` on the target.
    pub fn forward_function(&self, f: &FunctionFieldElement) -> FunctionFieldElement {
        // Source coordinates in terms of target ones: x = (s x1 - q) / L, L = -r x1 + p,
        // y = kappa y1 / L^(g+1), kappa = det^(g+1) / mu.
        let g1 = self.source.genus() + 1;
        let inv = self.map.inverse();
        let kappa = num_traits::pow(self.map.det(), g1) / &self.mu;
        let n = (f.a().deg().max(f.b().deg() + g1 as i64).max(f.d().deg())).max(0) as usize;
        let a = f.a().mobius_numerator(&inv.p, &inv.q, &inv.r, &inv.s, n);
        let b = if f.b().is_zero() {
            Polynomial::zero()
        } else {
            f.b()
                .mobius_numerator(&inv.p, &inv.q, &inv.r, &inv.s, n - g1)
                .scale(&kappa)
        };
        let d = f.d().mobius_numerator(&inv.p, &inv.q, &inv.r, &inv.s, n);
        FunctionFieldElement::new(a, b, d).expect("nonzero denominator")
    }

    pub fn backward_function(&self, f: &FunctionFieldElement) -> FunctionFieldElement {
        self.inverse().forward_function(f)
    }

    /// Transport of any place, including symbolic closed points.
    pub fn forward_place(&self, place: &Place) -> Result<Place, AlgebraError> {
        let closed = match place {
            Place::Point(p) => return Ok(Place::Point(self.forward_point(p)?)),
            Place::Closed(c) => c,
        };
        let g1 = (self.source.genus() + 1) as u32;
        let inv = self.map.inverse();
        if let ClosedPoint::InfinityPair = closed {
            if self.map.r.is_zero() {
                return Ok(place.clone());
            }
            let x1 = &self.map.p / &self.map.r;
            return Ok(Place::Closed(ClosedPoint::Fiber {
                q: Polynomial::linear(&x1),
            }));
        }
        let q = closed.modulus().expect("finite closed point");
        if q.deg() == 1 {
            let x0 = -q.coeff(0);
            if self.map.apply(&x0).is_none() {
                return Ok(Place::Closed(ClosedPoint::InfinityPair));
            }
        }
        let q1 = q
            .mobius_numerator(&inv.p, &inv.q, &inv.r, &inv.s, q.deg() as usize)
            .monic();
        // the source coordinate x as a residue mod q1
        let num = Polynomial::new(vec![inv.q.clone(), inv.p.clone()]);
        let den = Polynomial::new(vec![inv.s.clone(), inv.r.clone()]);
        let x_res = (&num * &den.inv_mod(&q1).ok_or(AlgebraError::SingularMap)?).rem(&q1);
        Ok(Place::Closed(match closed {
            ClosedPoint::Ramified { .. } => ClosedPoint::Ramified { q: q1 },
            ClosedPoint::Fiber { .. } => ClosedPoint::Fiber { q: q1 },
            ClosedPoint::Sheet { r, .. } => {
                let mut r_at = Polynomial::zero();
                for c in r.coeffs().iter().rev() {
                    r_at = (&(&r_at * &x_res) + &Polynomial::constant(c.clone())).rem(&q1);
                }
                let lin = (&(&x_res * &Polynomial::constant(self.map.r.clone()))
                    + &Polynomial::constant(self.map.s.clone()))
                    .rem(&q1);
                let lin_inv = lin.inv_mod(&q1).ok_or(AlgebraError::SingularMap)?;
                let r1 = (&r_at * &lin_inv.pow(g1)).rem(&q1).scale(&self.mu).rem(&q1);
                ClosedPoint::Sheet { q: q1, r: r1 }
            }
            ClosedPoint::InfinityPair => unreachable!(),
        }))
    }

    pub fn backward_place(&self, place: &Place) -> Result<Place, AlgebraError> {
        self.inverse().forward_place(place)
    }

    pub fn forward_divisor(&self, d: &Divisor) -> Result<Divisor, AlgebraError> {
        let mut terms = Vec::new();
        for (p, m) in d.terms() {
            terms.push((self.forward_place(p)?, m));
        }
        Ok(Divisor::from_terms(terms))
    }

    pub fn backward_divisor(&self, d: &Divisor) -> Result<Divisor, AlgebraError> {
        self.inverse().forward_divisor(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn inversion_on_legendre_curve() {
        // y^2 = x(x-1)(x-3) under x -> 1/x
        let e = HyperellipticCurve::from_int_roots(&[0, 1, 3]).unwrap();
        let t = MobiusTransport::new(
            &e,
            MobiusMap::new(int(0), int(1), int(1), int(0)).unwrap(),
        )
        .unwrap();
        let roots = t.target().h().rational_roots().unwrap();
        assert_eq!(roots, vec![int(0), frac(1, 3), int(1)]);
        // the branch point 0 went to infinity, so the model stays odd
        assert_eq!(t.target().degree(), 3);
        let fx = t.forward_function(&FunctionFieldElement::x());
        assert_eq!(
            fx,
            FunctionFieldElement::rational_function(Polynomial::one(), Polynomial::x()).unwrap()
        );
        assert_eq!(t.backward_function(&fx), FunctionFieldElement::x());
    }

    #[test]
    fn divisors_transport_with_functions() {
        let c = HyperellipticCurve::from_int_roots(&[0, 1, 2, 3, 4, 5]).unwrap();
        let f = FunctionFieldElement::new(
            Polynomial::from_i64s(&[3, 1, 1]),
            Polynomial::from_i64s(&[1]),
            Polynomial::from_i64s(&[-7, 0, 1]),
        )
        .unwrap();
        let t = MobiusTransport::new(&c, MobiusMap::send_to_infinity(&int(2))).unwrap();
        let d = c.divisor_of(&f).unwrap();
        assert!(!d.is_rational());
        let moved = t.forward_divisor(&d).unwrap();
        assert_eq!(moved, t.target().divisor_of(&t.forward_function(&f)).unwrap());
        assert_eq!(t.backward_divisor(&moved).unwrap(), d);
    }

    #[test]
    fn points_round_trip() {
        let c = HyperellipticCurve::from_int_roots(&[0, 1, 2, 3, 4]).unwrap();
        let maps = [
            MobiusMap::send_to_infinity(&int(2)),
            MobiusMap::new(int(2), int(1), int(1), int(3)).unwrap(),
            MobiusMap::scaling(&frac(3, 2)).unwrap(),
        ];
        for m in maps {
            let t = MobiusTransport::new(&c, m).unwrap();
            for pt in c
                .rational_branch_points()
                .unwrap()
                .into_iter()
                .chain(c.search_points(12))
            {
                let img = t.forward_point(&pt).unwrap();
                assert!(t.target().contains(&img));
                assert_eq!(t.backward_point(&img).unwrap(), pt);
            }
        }
    }
}
