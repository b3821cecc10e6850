//! Divisor classes in Mumford form, Cantor arithmetic and Pic^d bookkeeping.
//!
//! Arithmetic runs on an odd-degree model of the curve with a single point `O`
//! at infinity. A Mumford pair `(u, v)` stands for the class of
//! `D(u, v) - deg(u) O` where `D(u, v)` is the effective divisor cut out by
//! `u(x) = 0, y = v(x)`.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::curve::{ClosedPoint, CurvePoint, HyperellipticCurve, Place};
use crate::divisor::Divisor;
use crate::error::{AlgebraError, JacobianError};
use crate::function::FunctionFieldElement;
use crate::mobius::{MobiusMap, MobiusTransport};
use crate::poly::Polynomial;
use crate::rational::Rational;

/// Reduced Mumford pair. `u` monic, `deg v < deg u <= g`, `u | v^2 - h`.
///
/// Equal classes have identical pairs, so derived equality and hashing are
/// class equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct JacobianClass {
    u: Polynomial,
    v: Polynomial,
}

impl JacobianClass {
    pub fn identity() -> Self {
        Self {
            u: Polynomial::one(),
            v: Polynomial::zero(),
        }
    }

    pub fn u(&self) -> &Polynomial {
        &self.u
    }

    pub fn v(&self) -> &Polynomial {
        &self.v
    }

    pub fn is_identity(&self) -> bool {
        self.u.is_one()
    }

    /// Degree of the effective part of the reduced representative.
    pub fn weight(&self) -> usize {
        self.u.deg() as usize
    }
}

impl fmt::Display for JacobianClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

impl fmt::Debug for JacobianClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "JacobianClass{self}")
    }
}

/// A point of Pic^d, stored as the class of `D - d w1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PicPoint {
    pub degree: i64,
    pub cls: JacobianClass,
}

impl PicPoint {
    pub fn new(degree: i64, cls: JacobianClass) -> Self {
        Self { degree, cls }
    }

    pub fn zero(degree: i64) -> Self {
        Self::new(degree, JacobianClass::identity())
    }
}

impl fmt::Display for PicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pic^{}{}", self.degree, self.cls)
    }
}

impl fmt::Debug for PicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Outcome of a principality test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Principality {
    pub principal: bool,
    /// `F` with `div(F) = D`, scaled so the leading numerator coefficient is 1.
    pub witness: Option<FunctionFieldElement>,
}

/// A semi-reduced pair together with `F` such that the tracked divisor
/// equals `D(u, v) - deg(u) O + div(F)`.
#[derive(Clone, Debug)]
struct Tracked {
    u: Polynomial,
    v: Polynomial,
    witness: Option<FunctionFieldElement>,
}

impl Tracked {
    fn identity(track: bool) -> Self {
        Self {
            u: Polynomial::one(),
            v: Polynomial::zero(),
            witness: track.then(FunctionFieldElement::one),
        }
    }

    fn untracked(c: &JacobianClass) -> Self {
        Self {
            u: c.u.clone(),
            v: c.v.clone(),
            witness: None,
        }
    }

    fn class(&self) -> JacobianClass {
        JacobianClass {
            u: self.u.clone(),
            v: self.v.clone(),
        }
    }
}

/// The Jacobian of a hyperelliptic curve with a rational Weierstrass basepoint `w1`.
///
/// Since `w1` is Weierstrass, `P + iota(P) ~ 2 w1` for every point `P`.
#[derive(Clone, Debug)]
pub struct Jacobian {
    transport: MobiusTransport,
    basepoint: CurvePoint,
    // [w1 - O] on the model
    base: JacobianClass,
}

impl Jacobian {
    /// Odd curves are used as they are. Even curves are moved to an odd model by
    /// sending their smallest rational branch point to infinity.
    pub fn new(curve: &HyperellipticCurve, basepoint: &CurvePoint) -> Result<Self, JacobianError> {
        curve.check_point(basepoint)?;
        if !basepoint.is_weierstrass() {
            return Err(JacobianError::BasepointNotWeierstrass(basepoint.to_string()));
        }
        let transport = if curve.is_odd_degree() {
            MobiusTransport::identity(curve)
        } else {
            let branch = curve.rational_branch_points()?;
            let b = branch
                .iter()
                .filter_map(|p| p.x().cloned())
                .min()
                .expect("the basepoint is a finite rational branch point");
            MobiusTransport::new(curve, MobiusMap::send_to_infinity(&b))?
        };
        let mut jac = Self {
            transport,
            basepoint: basepoint.clone(),
            base: JacobianClass::identity(),
        };
        let w1 = jac.transport.forward_point(basepoint)?;
        jac.base = jac.reduce(jac.point_pair(&Place::Point(w1), false)?).class();
        Ok(jac)
    }

    pub fn curve(&self) -> &HyperellipticCurve {
        self.transport.source()
    }

    /// The odd-degree model the Mumford pairs refer to.
    pub fn model(&self) -> &HyperellipticCurve {
        self.transport.target()
    }

    pub fn transport(&self) -> &MobiusTransport {
        &self.transport
    }

    pub fn basepoint(&self) -> &CurvePoint {
        &self.basepoint
    }

    pub fn genus(&self) -> usize {
        self.curve().genus()
    }

    /// The point of the user curve sitting at infinity on the model.
    pub fn origin(&self) -> CurvePoint {
        self.transport
            .backward_point(&CurvePoint::infinity())
            .expect("model infinity has a preimage")
    }

    /// Validates and reduces an arbitrary pair on the model.
    pub fn reduce_pair(&self, u: &Polynomial, v: &Polynomial) -> Result<JacobianClass, JacobianError> {
        if u.is_zero() {
            return Err(AlgebraError::DivisionByZero.into());
        }
        let u = u.monic();
        let h = self.model().h();
        if !u.divides(&(&(v * v) - h)) {
            return Err(AlgebraError::InvalidCurve(format!("u = {u} does not divide v^2 - h for v = {v}")).into());
        }
        Ok(self
            .reduce(Tracked {
                v: v.rem(&u),
                u,
                witness: None,
            })
            .class())
    }

    fn compose(&self, a: &Tracked, b: &Tracked) -> Tracked {
        let h = self.model().h();
        let (d0, e1, e2) = a.u.xgcd(&b.u);
        let (d, c1, c2) = d0.xgcd(&(&a.v + &b.v));
        let s1 = &c1 * &e1;
        let s2 = &c1 * &e2;
        let u = (&a.u * &b.u).exact_div(&(&d * &d));
        let num = &(&(&(&s1 * &a.u) * &b.v) + &(&(&s2 * &b.u) * &a.v)) + &(&c2 * &(&(&a.v * &b.v) + h));
        let v = num.exact_div(&d).rem(&u);
        let witness = match (&a.witness, &b.witness) {
            (Some(f), Some(g)) => {
                let fg = f.mul(g, self.model());
                Some(if d.is_one() {
                    fg
                } else {
                    fg.mul(&FunctionFieldElement::from_poly(d), self.model())
                })
            }
            _ => None,
        };
        Tracked { u, v, witness }
    }

    fn reduce(&self, mut t: Tracked) -> Tracked {
        let g = self.genus() as i64;
        let h = self.model().h();
        while t.u.deg() > g {
            let u1 = (h - &(&t.v * &t.v)).exact_div(&t.u).monic();
            let v1 = (-&t.v).rem(&u1);
            if let Some(f) = &t.witness {
                let m = self.model();
                let y_minus_v = FunctionFieldElement::new(-&t.v, Polynomial::one(), u1.clone())
                    .expect("nonzero modulus");
                t.witness = Some(f.mul(&y_minus_v, m));
            }
            t.u = u1;
            t.v = v1;
        }
        t
    }

    fn negate(&self, t: &Tracked) -> Tracked {
        let witness = t.witness.as_ref().map(|f| {
            f.mul(&FunctionFieldElement::from_poly(t.u.clone()), self.model())
                .inv(self.model())
                .expect("nonzero witness")
        });
        Tracked {
            u: t.u.clone(),
            v: (-&t.v).rem(&t.u),
            witness,
        }
    }

    fn add_tracked(&self, a: &Tracked, b: &Tracked) -> Tracked {
        self.reduce(self.compose(a, b))
    }

    fn mul_tracked(&self, t: &Tracked, n: i64) -> Tracked {
        let track = t.witness.is_some();
        let mut base = if n < 0 { self.negate(t) } else { t.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Tracked::identity(track);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.add_tracked(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.add_tracked(&base, &base);
            }
        }
        acc
    }

    /// The pair of `P - deg(P) O` for a place of the model.
    fn point_pair(&self, place: &Place, track: bool) -> Result<Tracked, JacobianError> {
        let pair = |u: Polynomial, v: Polynomial| Tracked {
            u,
            v,
            witness: track.then(FunctionFieldElement::one),
        };
        Ok(match place {
            Place::Point(CurvePoint::Infinity { .. }) => Tracked::identity(track),
            Place::Point(CurvePoint::Branch { x }) => pair(Polynomial::linear(x), Polynomial::zero()),
            Place::Point(CurvePoint::Affine { x, y }) => {
                pair(Polynomial::linear(x), Polynomial::constant(y.clone()))
            }
            Place::Closed(ClosedPoint::Ramified { q }) => pair(q.clone(), Polynomial::zero()),
            Place::Closed(ClosedPoint::Sheet { q, r }) => pair(q.clone(), r.rem(q)),
            Place::Closed(ClosedPoint::Fiber { q }) => Tracked {
                u: Polynomial::one(),
                v: Polynomial::zero(),
                witness: track.then(|| FunctionFieldElement::from_poly(q.clone())),
            },
            Place::Closed(ClosedPoint::InfinityPair) => {
                return Err(AlgebraError::Unsupported("two points at infinity on an odd model".into()).into())
            }
        })
    }

    /// `D - deg(D) O` on the model, with optional witness.
    fn divisor_pair(&self, d: &Divisor, track: bool) -> Result<Tracked, JacobianError> {
        let moved = self.transport.forward_divisor(d)?;
        let mut acc = Tracked::identity(track);
        for (place, m) in moved.terms() {
            let p = self.point_pair(place, track)?;
            let p = self.reduce(p);
            acc = self.add_tracked(&acc, &self.mul_tracked(&p, m));
        }
        Ok(acc)
    }

    /// The class of `D - d w1` for a divisor of degree `d`.
    pub fn class_of(&self, d: &Divisor, degree: i64) -> Result<PicPoint, JacobianError> {
        if d.degree() != degree {
            return Err(JacobianError::DegreeMismatch {
                expected: degree,
                actual: d.degree(),
            });
        }
        let t = self.divisor_pair(d, false)?;
        let base = self.mul_tracked(&Tracked::untracked(&self.base), -degree);
        Ok(PicPoint::new(degree, self.add_tracked(&t, &base).class()))
    }

    /// `class_of(P, 1)`.
    pub fn point_class(&self, p: &CurvePoint) -> Result<PicPoint, JacobianError> {
        self.class_of(&Divisor::point(p.clone()), 1)
    }

    pub fn add(&self, a: &PicPoint, b: &PicPoint) -> PicPoint {
        let t = self.add_tracked(&Tracked::untracked(&a.cls), &Tracked::untracked(&b.cls));
        PicPoint::new(a.degree + b.degree, t.class())
    }

    pub fn neg(&self, a: &PicPoint) -> PicPoint {
        PicPoint::new(-a.degree, self.negate(&Tracked::untracked(&a.cls)).class())
    }

    pub fn sub(&self, a: &PicPoint, b: &PicPoint) -> PicPoint {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &PicPoint, n: i64) -> PicPoint {
        PicPoint::new(a.degree * n, self.mul_tracked(&Tracked::untracked(&a.cls), n).class())
    }

    /// Class of `D - deg(D) O` with `O` the point at infinity of the model.
    pub fn origin_class(&self, p: &PicPoint) -> JacobianClass {
        let base = self.mul_tracked(&Tracked::untracked(&self.base), p.degree);
        self.add_tracked(&Tracked::untracked(&p.cls), &base).class()
    }

    /// Inverse of [`Jacobian::origin_class`].
    pub fn from_origin_class(&self, cls: &JacobianClass, degree: i64) -> PicPoint {
        let base = self.mul_tracked(&Tracked::untracked(&self.base), -degree);
        PicPoint::new(degree, self.add_tracked(&Tracked::untracked(cls), &base).class())
    }

    /// `D(u, v)` as an effective divisor on the user curve.
    pub fn effective_divisor(&self, cls: &JacobianClass) -> Result<Divisor, JacobianError> {
        let h = self.model().h();
        let mut terms = Vec::new();
        let mut rest = cls.u.clone();
        for r in cls.u.rational_roots()? {
            let (stripped, m) = rest.strip_factor(&Polynomial::linear(&r));
            rest = stripped;
            let pt = CurvePoint::affine(r.clone(), cls.v.eval(&r));
            terms.push((Place::Point(pt), m as i64));
        }
        for (q, m) in squarefree_decomposition(&rest) {
            let r = cls.v.rem(&q);
            let c = if r.is_zero() && q.divides(h) {
                ClosedPoint::Ramified { q }
            } else {
                ClosedPoint::Sheet { q, r }
            };
            terms.push((Place::Closed(c), m as i64));
        }
        Ok(self.transport.backward_divisor(&Divisor::from_terms(terms))?)
    }

    /// Decides whether a degree-zero divisor is principal; if so returns `F` with
    /// `div(F) = D`.
    pub fn is_principal(&self, d: &Divisor) -> Result<Principality, JacobianError> {
        if d.degree() != 0 {
            return Err(JacobianError::DegreeMismatch {
                expected: 0,
                actual: d.degree(),
            });
        }
        let t = self.divisor_pair(d, true)?;
        if !t.u.is_one() {
            return Ok(Principality {
                principal: false,
                witness: None,
            });
        }
        let f = t.witness.expect("tracked");
        let f = self.transport.backward_function(&f).normalize_leading();
        Ok(Principality {
            principal: true,
            witness: Some(f),
        })
    }

    fn check_branch(&self, p: &CurvePoint) -> Result<(), JacobianError> {
        if p.is_weierstrass() && self.curve().contains(p) {
            Ok(())
        } else {
            Err(JacobianError::NotBranchPoint(p.to_string()))
        }
    }

    /// The class of `sum_{e in S} e - |S| w1`, a point of order dividing 2.
    pub fn two_torsion_from_branch_partition(&self, s: &[CurvePoint]) -> Result<PicPoint, JacobianError> {
        if s.len() % 2 == 1 {
            return Err(JacobianError::OddSubset(s.len()));
        }
        for p in s {
            self.check_branch(p)?;
        }
        let d = Divisor::from_points(s.iter().map(|p| (p.clone(), 1)));
        let n = d.degree();
        let c = self.class_of(&d, n)?;
        Ok(PicPoint::new(0, c.cls))
    }

    /// `p -> -p + 2(t + w1)`, from Pic^3 to Pic^1.
    pub fn pic3_to_pic1(&self, p: &PicPoint, t: &CurvePoint) -> Result<PicPoint, JacobianError> {
        if p.degree != 3 {
            return Err(JacobianError::DegreeMismatch {
                expected: 3,
                actual: p.degree,
            });
        }
        let shift = self.two_t_w1(t)?;
        Ok(self.add(&self.neg(p), &shift))
    }

    /// Inverse of [`Jacobian::pic3_to_pic1`].
    pub fn pic1_to_pic3(&self, p: &PicPoint, t: &CurvePoint) -> Result<PicPoint, JacobianError> {
        if p.degree != 1 {
            return Err(JacobianError::DegreeMismatch {
                expected: 1,
                actual: p.degree,
            });
        }
        let shift = self.two_t_w1(t)?;
        Ok(self.add(&self.neg(p), &shift))
    }

    fn two_t_w1(&self, t: &CurvePoint) -> Result<PicPoint, JacobianError> {
        let d = Divisor::from_points([(t.clone(), 2), (self.basepoint.clone(), 2)]);
        self.class_of(&d, 4)
    }
}

/// `u = prod q_i^{m_i}` with `q_i` monic, squarefree and pairwise coprime.
fn squarefree_decomposition(u: &Polynomial) -> Vec<(Polynomial, usize)> {
    let mut out = Vec::new();
    if u.deg() <= 0 {
        return out;
    }
    let u = u.monic();
    let mut c = u.gcd(&u.derivative());
    let mut w = u.exact_div(&c);
    let mut i = 1;
    while w.deg() > 0 {
        let y = w.gcd(&c);
        let z = w.exact_div(&y);
        if z.deg() > 0 {
            out.push((z.monic(), i));
        }
        c = c.exact_div(&y);
        w = y;
        i += 1;
    }
    out
}

impl Jacobian {
    /// Whether the class has the form `[P - O]` for a rational point `P`, and which.
    pub fn single_point(&self, cls: &JacobianClass) -> Result<Option<CurvePoint>, JacobianError> {
        match cls.weight() {
            0 => Ok(Some(self.origin())),
            1 => {
                let x0 = -cls.u.coeff(0);
                let y0: Rational = cls.v.coeff(0);
                let p = if y0.is_zero() {
                    CurvePoint::branch(x0)
                } else {
                    CurvePoint::affine(x0, y0)
                };
                Ok(Some(self.transport.backward_point(&p)?))
            }
            _ => Ok(None),
        }
    }
}
