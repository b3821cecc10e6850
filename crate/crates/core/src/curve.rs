//! Hyperelliptic curves `y^2 = h(x)` over Q, their rational points and places.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;
use crate::poly::Polynomial;
use crate::rational::{self, format_rational, int, rational_sqrt, Rational};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "CurveRepr", into = "CurveRepr")]
pub struct HyperellipticCurve {
    h: Polynomial,
    genus: usize,
    sqrt_lc: Option<Rational>,
}

#[derive(Serialize, Deserialize)]
struct CurveRepr {
    h: Polynomial,
}

impl TryFrom<CurveRepr> for HyperellipticCurve {
    type Error = AlgebraError;
    fn try_from(r: CurveRepr) -> Result<Self, AlgebraError> {
        HyperellipticCurve::new(r.h)
    }
}

impl From<HyperellipticCurve> for CurveRepr {
    fn from(c: HyperellipticCurve) -> Self {
        CurveRepr { h: c.h }
    }
}

/// Which point at infinity: the single ramified one on odd models, or one of the
/// two sheets on even models, `Plus` being where `y / x^(g+1)` tends to `+sqrt(lc h)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InfinitySheet {
    Single,
    Plus,
    Minus,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CurvePoint {
    Affine {
        #[serde(with = "rational::serde_str")]
        x: Rational,
        #[serde(with = "rational::serde_str")]
        y: Rational,
    },
    Branch {
        #[serde(with = "rational::serde_str")]
        x: Rational,
    },
    Infinity {
        sheet: InfinitySheet,
    },
}

impl CurvePoint {
    pub fn affine(x: Rational, y: Rational) -> Self {
        if y.is_zero() {
            CurvePoint::Branch { x }
        } else {
            CurvePoint::Affine { x, y }
        }
    }

    pub fn branch(x: Rational) -> Self {
        CurvePoint::Branch { x }
    }

    pub fn infinity() -> Self {
        CurvePoint::Infinity {
            sheet: InfinitySheet::Single,
        }
    }

    pub fn x(&self) -> Option<&Rational> {
        match self {
            CurvePoint::Affine { x, .. } | CurvePoint::Branch { x } => Some(x),
            CurvePoint::Infinity { .. } => None,
        }
    }

    pub fn y(&self) -> Option<Rational> {
        match self {
            CurvePoint::Affine { y, .. } => Some(y.clone()),
            CurvePoint::Branch { .. } => Some(Rational::zero()),
            CurvePoint::Infinity { .. } => None,
        }
    }

    /// Fixed by the hyperelliptic involution.
    pub fn is_weierstrass(&self) -> bool {
        matches!(
            self,
            CurvePoint::Branch { .. }
                | CurvePoint::Infinity {
                    sheet: InfinitySheet::Single
                }
        )
    }

    pub fn involution(&self) -> Self {
        match self {
            CurvePoint::Affine { x, y } => CurvePoint::Affine {
                x: x.clone(),
                y: -y,
            },
            CurvePoint::Infinity { sheet } => CurvePoint::Infinity {
                sheet: match sheet {
                    InfinitySheet::Single => InfinitySheet::Single,
                    InfinitySheet::Plus => InfinitySheet::Minus,
                    InfinitySheet::Minus => InfinitySheet::Plus,
                },
            },
            p => p.clone(),
        }
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Affine { x, y } => {
                write!(f, "({}, {})", format_rational(x), format_rational(y))
            }
            CurvePoint::Branch { x } => write!(f, "branch({})", format_rational(x)),
            CurvePoint::Infinity { sheet } => match sheet {
                InfinitySheet::Single => write!(f, "infinity"),
                InfinitySheet::Plus => write!(f, "infinity+"),
                InfinitySheet::Minus => write!(f, "infinity-"),
            },
        }
    }
}

impl fmt::Debug for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A closed point that is not defined over Q, carried through its x-projection.
///
/// `q` is monic, squarefree and without rational roots. It may bundle several
/// Galois orbits, all carrying the same multiplicity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClosedPoint {
    /// Ramified points over the roots of `q`, a factor of `h`.
    Ramified { q: Polynomial },
    /// Both points over each root of `q`, counted together.
    Fiber { q: Polynomial },
    /// The points over roots of `q` where `y = r(x)`; `r^2 = h mod q`.
    Sheet { q: Polynomial, r: Polynomial },
    /// The two conjugate points at infinity of an even model whose leading coefficient is not a square.
    InfinityPair,
}

impl ClosedPoint {
    pub fn degree(&self) -> i64 {
        match self {
            ClosedPoint::Ramified { q } | ClosedPoint::Sheet { q, .. } => q.deg(),
            ClosedPoint::Fiber { q } => 2 * q.deg(),
            ClosedPoint::InfinityPair => 2,
        }
    }

    pub fn modulus(&self) -> Option<&Polynomial> {
        match self {
            ClosedPoint::Ramified { q } | ClosedPoint::Fiber { q } | ClosedPoint::Sheet { q, .. } => {
                Some(q)
            }
            ClosedPoint::InfinityPair => None,
        }
    }
}

impl fmt::Display for ClosedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedPoint::Ramified { q } => write!(f, "ramified[{q}]"),
            ClosedPoint::Fiber { q } => write!(f, "fiber[{q}]"),
            ClosedPoint::Sheet { q, r } => write!(f, "sheet[{q}; y = {r}]"),
            ClosedPoint::InfinityPair => write!(f, "infinity-pair"),
        }
    }
}

impl fmt::Debug for ClosedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Place {
    Point(CurvePoint),
    Closed(ClosedPoint),
}

impl Place {
    pub fn degree(&self) -> i64 {
        match self {
            Place::Point(_) => 1,
            Place::Closed(c) => c.degree(),
        }
    }

    pub fn as_point(&self) -> Option<&CurvePoint> {
        match self {
            Place::Point(p) => Some(p),
            Place::Closed(_) => None,
        }
    }
}

impl From<CurvePoint> for Place {
    fn from(p: CurvePoint) -> Self {
        Place::Point(p)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Point(p) => write!(f, "{p}"),
            Place::Closed(c) => write!(f, "{c}"),
        }
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl HyperellipticCurve {
    pub fn new(h: Polynomial) -> Result<Self, AlgebraError> {
        let deg = h.deg();
        if deg < 3 {
            return Err(AlgebraError::InvalidCurve(format!(
                "h must have degree at least 3, got {h}"
            )));
        }
        if !h.is_squarefree() {
            return Err(AlgebraError::InvalidCurve(format!("h = {h} is not squarefree")));
        }
        let genus = (deg as usize).div_ceil(2) - 1;
        let sqrt_lc = if deg % 2 == 0 {
            rational_sqrt(&h.lc())
        } else {
            None
        };
        Ok(Self { h, genus, sqrt_lc })
    }

    /// `y^2 = scale * prod (x - r)`.
    pub fn from_roots(scale: Rational, roots: &[Rational]) -> Result<Self, AlgebraError> {
        Self::new(Polynomial::from_roots(roots).scale(&scale))
    }

    /// `y^2 = prod (x - r)` for integer roots.
    pub fn from_int_roots(roots: &[i64]) -> Result<Self, AlgebraError> {
        let roots: Vec<Rational> = roots.iter().map(|&r| int(r)).collect();
        Self::from_roots(Rational::one(), &roots)
    }

    pub fn h(&self) -> &Polynomial {
        &self.h
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn degree(&self) -> usize {
        self.h.degree().unwrap()
    }

    pub fn is_odd_degree(&self) -> bool {
        self.degree() % 2 == 1
    }

    /// `sqrt(lc h)` for even models with square leading coefficient.
    pub fn sqrt_lc(&self) -> Option<&Rational> {
        self.sqrt_lc.as_ref()
    }

    pub fn infinity_points(&self) -> Vec<CurvePoint> {
        if self.is_odd_degree() {
            vec![CurvePoint::infinity()]
        } else if self.sqrt_lc.is_some() {
            vec![
                CurvePoint::Infinity {
                    sheet: InfinitySheet::Plus,
                },
                CurvePoint::Infinity {
                    sheet: InfinitySheet::Minus,
                },
            ]
        } else {
            Vec::new()
        }
    }

    pub fn infinite_places(&self) -> Vec<Place> {
        if !self.is_odd_degree() && self.sqrt_lc.is_none() {
            vec![Place::Closed(ClosedPoint::InfinityPair)]
        } else {
            self.infinity_points().into_iter().map(Place::Point).collect()
        }
    }

    pub fn contains(&self, p: &CurvePoint) -> bool {
        match p {
            CurvePoint::Affine { x, y } => !y.is_zero() && y * y == self.h.eval(x),
            CurvePoint::Branch { x } => self.h.eval(x).is_zero(),
            CurvePoint::Infinity { sheet } => match sheet {
                InfinitySheet::Single => self.is_odd_degree(),
                _ => !self.is_odd_degree() && self.sqrt_lc.is_some(),
            },
        }
    }

    pub fn check_point(&self, p: &CurvePoint) -> Result<(), AlgebraError> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(AlgebraError::NotOnCurve(format!("{p} on y^2 = {}", self.h)))
        }
    }

    pub fn point(&self, x: Rational, y: Rational) -> Result<CurvePoint, AlgebraError> {
        let p = CurvePoint::affine(x, y);
        self.check_point(&p)?;
        Ok(p)
    }

    /// Rational points with the given x-coordinate, `+y` first.
    pub fn points_over(&self, x: &Rational) -> Vec<CurvePoint> {
        let hx = self.h.eval(x);
        if hx.is_zero() {
            return vec![CurvePoint::branch(x.clone())];
        }
        match rational_sqrt(&hx) {
            Some(y) => vec![
                CurvePoint::Affine {
                    x: x.clone(),
                    y: y.clone(),
                },
                CurvePoint::Affine { x: x.clone(), y: -y },
            ],
            None => Vec::new(),
        }
    }

    /// Rational Weierstrass points, finite ones in increasing order, then infinity if ramified.
    pub fn rational_branch_points(&self) -> Result<Vec<CurvePoint>, AlgebraError> {
        let mut out: Vec<CurvePoint> = self
            .h
            .rational_roots()?
            .into_iter()
            .map(CurvePoint::branch)
            .collect();
        if self.is_odd_degree() {
            out.push(CurvePoint::infinity());
        }
        Ok(out)
    }

    /// Rational non-branch points with x = p/q, |p| <= height, 1 <= q <= height.
    pub fn search_points(&self, height: i64) -> Vec<CurvePoint> {
        let mut xs: Vec<Rational> = Vec::new();
        for q in 1..=height {
            for p in -height..=height {
                let x = rational::frac(p, q);
                if x.denom() == &num_bigint::BigInt::from(q) {
                    xs.push(x);
                }
            }
        }
        xs.sort();
        xs.dedup();
        xs.iter()
            .flat_map(|x| self.points_over(x))
            .filter(|p| !p.is_weierstrass())
            .collect()
    }

    /// Sign of `y / x^(g+1)` at an even-model infinity point, as +1 or -1.
    pub(crate) fn infinity_sign(sheet: InfinitySheet) -> i32 {
        match sheet {
            InfinitySheet::Minus => -1,
            _ => 1,
        }
    }

    pub(crate) fn sheet_from_sign(value: &Rational) -> InfinitySheet {
        if value.is_negative() {
            InfinitySheet::Minus
        } else {
            InfinitySheet::Plus
        }
    }
}

impl fmt::Display for HyperellipticCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = {}", self.h)
    }
}

impl fmt::Debug for HyperellipticCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HyperellipticCurve({self}, genus {})", self.genus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn genus_and_infinity() {
        let e = HyperellipticCurve::from_int_roots(&[0, 1, 2]).unwrap();
        assert_eq!(e.genus(), 1);
        assert_eq!(e.infinity_points().len(), 1);
        let c = HyperellipticCurve::from_int_roots(&[0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(c.genus(), 2);
        assert_eq!(c.infinity_points().len(), 2);
        let twist = HyperellipticCurve::from_roots(int(2), &[int(0), int(1), int(2), int(3)]).unwrap();
        assert!(twist.infinity_points().is_empty());
        assert_eq!(twist.infinite_places().len(), 1);
    }

    #[test]
    fn rejects_bad_curves() {
        assert!(HyperellipticCurve::new(Polynomial::from_i64s(&[0, 0, 1, 1])).is_err());
        assert!(HyperellipticCurve::new(Polynomial::from_i64s(&[1, 1])).is_err());
    }

    #[test]
    fn points_and_involution() {
        // y^2 = x(x-1)(x-2): x = -1 gives -6, x = 3 gives 6, x = 1/2 gives 3/8
        let e = HyperellipticCurve::from_int_roots(&[0, 1, 2]).unwrap();
        assert!(e.points_over(&int(3)).is_empty());
        let c = HyperellipticCurve::from_int_roots(&[-1, 0, 1]).unwrap();
        let pts = c.points_over(&int(-1));
        assert_eq!(pts, vec![CurvePoint::branch(int(-1))]);
        let d = HyperellipticCurve::new(Polynomial::from_i64s(&[1, 0, 0, 1])).unwrap();
        let p = d.point(int(2), int(3)).unwrap();
        assert!(d.contains(&p.involution()));
        assert!(d.point(frac(1, 2), int(1)).is_err());
        assert!(!c.contains(&CurvePoint::affine(int(2), int(1))));
    }
}
