//! Formal sums of (curve in Pic^d, function on it), their boundaries, and exact
//! intersections of translates of the curve inside the Jacobian.
//!
//! Every embedding used here is affine in the point: `P -> sign [P - w1] + offset`.
//! Because `w1` is a Weierstrass point, `-[P - w1] = [iota(P) - w1]`, so the image
//! only depends on `offset`. That offset is the canonical key of the curve, and a
//! function `f` on a curve with `sign = -1` becomes `f o iota` in key coordinates.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::curve::{CurvePoint, Place};
use crate::divisor::Divisor;
use crate::error::CycleError;
use crate::function::FunctionFieldElement;
use crate::jacobian::{Jacobian, PicPoint};

/// How a copy of the curve sits inside `Pic^d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Embedding {
    /// `P -> P + s - w1` in `Pic^1`.
    Translate { s: PicPoint },
    /// `P -> P + y + z` in `Pic^3`.
    Sum { y: CurvePoint, z: CurvePoint },
    /// `P -> -P + 2(a1 + a2)` in `Pic^3`.
    Flip { a1: CurvePoint, a2: CurvePoint },
    /// `P -> sign [P - w1] + offset`.
    Affine { sign: i8, offset: PicPoint },
}

/// An embedding followed by a translation by a degree-0 class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddedCurve {
    pub embedding: Embedding,
    pub translation: PicPoint,
}

/// The reduced description `P -> sign [P - w1] + offset` of an embedding.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineForm {
    pub sign: i8,
    pub offset: PicPoint,
}

impl EmbeddedCurve {
    pub fn new(embedding: Embedding) -> Self {
        Self {
            embedding,
            translation: PicPoint::zero(0),
        }
    }

    pub fn translate(s: PicPoint) -> Self {
        Self::new(Embedding::Translate { s })
    }

    pub fn sum(y: CurvePoint, z: CurvePoint) -> Self {
        Self::new(Embedding::Sum { y, z })
    }

    pub fn flip(a1: CurvePoint, a2: CurvePoint) -> Self {
        Self::new(Embedding::Flip { a1, a2 })
    }

    pub fn affine(sign: i8, offset: PicPoint) -> Self {
        Self::new(Embedding::Affine { sign, offset })
    }

    /// The same curve moved by a degree-0 class.
    pub fn translated(&self, jac: &Jacobian, by: &PicPoint) -> Self {
        Self {
            embedding: self.embedding.clone(),
            translation: jac.add(&self.translation, &PicPoint::new(0, by.cls.clone())),
        }
    }

    pub fn affine_form(&self, jac: &Jacobian) -> Result<AffineForm, CycleError> {
        let w1 = jac.basepoint().clone();
        let (sign, offset) = match &self.embedding {
            Embedding::Translate { s } => {
                if s.degree != 1 {
                    return Err(CycleError::AmbientMismatch(1, s.degree));
                }
                (1, s.clone())
            }
            Embedding::Sum { y, z } => {
                let d = Divisor::from_points([(y.clone(), 1), (z.clone(), 1), (w1, 1)]);
                (1, jac.class_of(&d, 3)?)
            }
            Embedding::Flip { a1, a2 } => {
                let d = Divisor::from_points([(a1.clone(), 2), (a2.clone(), 2), (w1, -1)]);
                (-1, jac.class_of(&d, 3)?)
            }
            Embedding::Affine { sign, offset } => {
                if *sign != 1 && *sign != -1 {
                    return Err(CycleError::InvalidDatum(format!("embedding sign {sign}")));
                }
                (*sign, offset.clone())
            }
        };
        let offset = jac.add(&offset, &PicPoint::new(0, self.translation.cls.clone()));
        Ok(AffineForm { sign, offset })
    }

    pub fn ambient(&self, jac: &Jacobian) -> Result<i64, CycleError> {
        Ok(self.affine_form(jac)?.offset.degree)
    }

    /// Image of a point of the curve.
    pub fn embed_point(&self, jac: &Jacobian, p: &CurvePoint) -> Result<PicPoint, CycleError> {
        self.affine_form(jac)?.image(jac, p)
    }
}

impl AffineForm {
    /// Image of a point given in the embedding's own coordinates.
    pub fn image(&self, jac: &Jacobian, p: &CurvePoint) -> Result<PicPoint, CycleError> {
        self.image_key(jac, &self.to_key(p))
    }

    /// `[p - w1] + offset`.
    pub fn image_key(&self, jac: &Jacobian, p: &CurvePoint) -> Result<PicPoint, CycleError> {
        jac.curve().check_point(p)?;
        let c = jac.point_class(p)?;
        Ok(PicPoint::new(self.offset.degree, jac.add(&PicPoint::new(0, c.cls), &self.offset).cls))
    }

    /// Key coordinates of a point given in the embedding's own coordinates.
    /// The change of coordinates is an involution, so this also converts back.
    pub fn to_key(&self, p: &CurvePoint) -> CurvePoint {
        if self.sign < 0 {
            p.involution()
        } else {
            p.clone()
        }
    }

    pub fn function_to_key(&self, f: &FunctionFieldElement) -> FunctionFieldElement {
        if self.sign < 0 {
            f.involution()
        } else {
            f.clone()
        }
    }

    /// Whether a point of `Pic^d` lies on the curve, and over which point (key coordinates).
    pub fn preimage(&self, jac: &Jacobian, x: &PicPoint) -> Result<Option<CurvePoint>, CycleError> {
        if x.degree != self.offset.degree {
            return Ok(None);
        }
        let diff = jac.sub(x, &self.offset);
        let at_origin = jac.origin_class(&PicPoint::new(1, diff.cls));
        Ok(jac.single_point(&at_origin)?)
    }
}

/// A 0-cycle on the Jacobian with rational support, inside a fixed `Pic^d`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroCycleOnJ {
    pub degree: i64,
    #[serde(with = "term_list")]
    terms: BTreeMap<PicPoint, i64>,
}

mod term_list {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::jacobian::PicPoint;

    #[derive(Serialize, Deserialize)]
    struct Term {
        point: PicPoint,
        multiplicity: i64,
    }

    pub fn serialize<S: Serializer>(m: &BTreeMap<PicPoint, i64>, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<Term> = m
            .iter()
            .map(|(p, k)| Term {
                point: p.clone(),
                multiplicity: *k,
            })
            .collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<PicPoint, i64>, D::Error> {
        let v = Vec::<Term>::deserialize(d)?;
        let mut m = BTreeMap::new();
        for t in v {
            *m.entry(t.point).or_insert(0) += t.multiplicity;
        }
        m.retain(|_, k| *k != 0);
        Ok(m)
    }
}

impl ZeroCycleOnJ {
    pub fn zero(degree: i64) -> Self {
        Self {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_point(&mut self, p: PicPoint, m: i64) -> Result<(), CycleError> {
        if p.degree != self.degree {
            return Err(CycleError::AmbientMismatch(self.degree, p.degree));
        }
        let total = self.multiplicity(&p) + m;
        if total == 0 {
            self.terms.remove(&p);
        } else {
            self.terms.insert(p, total);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, CycleError> {
        let mut out = self.clone();
        for (p, m) in &other.terms {
            out.add_point(p.clone(), *m)?;
        }
        Ok(out)
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = Self::zero(self.degree);
        if k != 0 {
            out.terms = self.terms.iter().map(|(p, m)| (p.clone(), m * k)).collect();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PicPoint, i64)> {
        self.terms.iter().map(|(p, m)| (p, *m))
    }

    pub fn multiplicity(&self, p: &PicPoint) -> i64 {
        self.terms.get(p).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Moves every point by a degree-0 class.
    pub fn translate(&self, jac: &Jacobian, by: &PicPoint) -> Self {
        let mut out = Self::zero(self.degree);
        for (p, m) in &self.terms {
            out.terms.insert(jac.add(p, &PicPoint::new(0, by.cls.clone())), *m);
        }
        out
    }
}

impl fmt::Display for ZeroCycleOnJ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(p, m)| format!("{m}*[{p}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for ZeroCycleOnJ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZeroCycleOnJ({self})")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleTerm {
    pub curve: EmbeddedCurve,
    pub function: FunctionFieldElement,
    pub multiplicity: i64,
}

/// A formal sum of `multiplicity * (curve ⊗ function)` inside `Pic^ambient`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreCycle {
    pub ambient: i64,
    pub terms: Vec<CycleTerm>,
}

/// A precycle collapsed to one function per distinct curve, in key coordinates.
/// Terms whose product function is 1 are dropped, so equal cycles compare equal.
pub type ConsolidatedCycle = BTreeMap<PicPoint, FunctionFieldElement>;

impl PreCycle {
    pub fn new(ambient: i64) -> Self {
        Self {
            ambient,
            terms: Vec::new(),
        }
    }

    pub fn push(&mut self, curve: EmbeddedCurve, function: FunctionFieldElement, multiplicity: i64) {
        self.terms.push(CycleTerm {
            curve,
            function,
            multiplicity,
        });
    }

    pub fn add(&self, other: &Self) -> Result<Self, CycleError> {
        if self.ambient != other.ambient {
            return Err(CycleError::AmbientMismatch(self.ambient, other.ambient));
        }
        let mut out = self.clone();
        out.terms.extend(other.terms.iter().cloned());
        Ok(out)
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = self.clone();
        for t in &mut out.terms {
            t.multiplicity *= k;
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CycleError> {
        self.add(&other.neg())
    }

    /// `sum_i m_i * (pushforward of div f_i)`.
    pub fn boundary(&self, jac: &Jacobian) -> Result<ZeroCycleOnJ, CycleError> {
        let mut out = ZeroCycleOnJ::zero(self.ambient);
        for t in &self.terms {
            if t.multiplicity == 0 {
                continue;
            }
            let form = t.curve.affine_form(jac)?;
            if form.offset.degree != self.ambient {
                return Err(CycleError::AmbientMismatch(self.ambient, form.offset.degree));
            }
            let div = jac.curve().divisor_of(&t.function)?;
            for (place, m) in div.terms() {
                let p = match place {
                    Place::Point(p) => p,
                    Place::Closed(c) => {
                        return Err(CycleError::NonRationalSupport(format!("{c} in div({})", t.function)))
                    }
                };
                out.add_point(form.image(jac, p)?, m * t.multiplicity)?;
            }
        }
        Ok(out)
    }

    pub fn is_cycle(&self, jac: &Jacobian) -> Result<bool, CycleError> {
        Ok(self.boundary(jac)?.is_zero())
    }

    pub fn translate(&self, jac: &Jacobian, by: &PicPoint) -> Self {
        Self {
            ambient: self.ambient,
            terms: self
                .terms
                .iter()
                .map(|t| CycleTerm {
                    curve: t.curve.translated(jac, by),
                    function: t.function.clone(),
                    multiplicity: t.multiplicity,
                })
                .collect(),
        }
    }

    pub fn consolidate(&self, jac: &Jacobian) -> Result<ConsolidatedCycle, CycleError> {
        let curve = jac.curve();
        let mut out: ConsolidatedCycle = BTreeMap::new();
        for t in &self.terms {
            let form = t.curve.affine_form(jac)?;
            let f = form.function_to_key(&t.function).pow(t.multiplicity, curve)?;
            let e = out.entry(form.offset).or_insert_with(FunctionFieldElement::one);
            *e = e.mul(&f, curve);
        }
        out.retain(|_, f| *f != FunctionFieldElement::one());
        Ok(out)
    }

    /// Distinct curves in key form, in order of first appearance.
    pub fn curves(&self, jac: &Jacobian) -> Result<Vec<AffineForm>, CycleError> {
        let mut out: Vec<AffineForm> = Vec::new();
        for t in &self.terms {
            let form = t.curve.affine_form(jac)?;
            if !out.iter().any(|c| c.offset == form.offset) {
                out.push(form);
            }
        }
        Ok(out)
    }
}

/// One point where two curves meet, with its preimages in each curve's own coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionPoint {
    pub point: PicPoint,
    pub on_first: CurvePoint,
    pub on_second: CurvePoint,
    pub multiplicity: u32,
}

/// Intersection of two translates of the curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Intersection {
    /// The two curves are the same subset of `Pic^d`.
    pub coincident: bool,
    pub points: Vec<IntersectionPoint>,
    /// Geometric points defined only over a quadratic extension.
    pub irrational_points: usize,
}

impl Intersection {
    /// Number of intersection points counted with multiplicity.
    pub fn count(&self) -> usize {
        self.points.iter().map(|p| p.multiplicity as usize).sum::<usize>() + self.irrational_points
    }
}

/// Solves `sA [P - w1] + cA = sB [Q - w1] + cB` exactly (genus at least 2).
///
/// In key coordinates this is `[P - Q] = cB - cA = [D - deg(D) O]` with `D` reduced.
/// `deg D = 1` gives `(D, O)` and `(O, iota D)`; `deg D = 2`, `D = R1 + R2`, gives
/// `(R1, iota R2)` and `(R2, iota R1)`; larger `D` gives nothing.
pub fn intersect(jac: &Jacobian, a: &AffineForm, b: &AffineForm) -> Result<Intersection, CycleError> {
    if jac.genus() < 2 {
        return Err(CycleError::Genus {
            expected: 2,
            actual: jac.genus(),
        });
    }
    if a.offset.degree != b.offset.degree {
        return Err(CycleError::AmbientMismatch(a.offset.degree, b.offset.degree));
    }
    let delta = jac.sub(&b.offset, &a.offset);
    let mut out = Intersection {
        coincident: false,
        points: Vec::new(),
        irrational_points: 0,
    };
    let mut pairs = Vec::new();
    match delta.cls.weight() {
        0 => out.coincident = true,
        1 => {
            let r = jac.single_point(&delta.cls)?.expect("weight one");
            let o = jac.origin();
            pairs.push((r.clone(), o.clone(), 1));
            pairs.push((o, r.involution(), 1));
        }
        2 => {
            let d = jac.effective_divisor(&delta.cls)?;
            let pts: Vec<(CurvePoint, i64)> = d.point_terms().map(|(p, m)| (p.clone(), m)).collect();
            match pts.as_slice() {
                [(r, 2)] => pairs.push((r.clone(), r.involution(), 2)),
                [(r1, 1), (r2, 1)] => {
                    pairs.push((r1.clone(), r2.involution(), 1));
                    pairs.push((r2.clone(), r1.involution(), 1));
                }
                _ => out.irrational_points = 2,
            }
        }
        _ => {}
    }
    for (p, q, m) in pairs {
        let point = a.image_key(jac, &p)?;
        debug_assert_eq!(point, b.image_key(jac, &q)?);
        out.points.push(IntersectionPoint {
            point,
            on_first: a.to_key(&p),
            on_second: b.to_key(&q),
            multiplicity: m,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::HyperellipticCurve;
    use crate::rational::int;

    #[test]
    fn flip_is_translate_of_involution() {
        let c = HyperellipticCurve::from_int_roots(&[0, 1, 2, 3, 4, 5, 6]).unwrap();
        let j = Jacobian::new(&c, &CurvePoint::branch(int(0))).unwrap();
        let e = EmbeddedCurve::flip(CurvePoint::branch(int(1)), CurvePoint::branch(int(2)));
        let form = e.affine_form(&j).unwrap();
        assert_eq!(form.sign, -1);
        let p = CurvePoint::branch(int(1));
        // -a' + 2a' + 2a'' = a' + 2a''
        let direct = j
            .class_of(&Divisor::from_points([(p.clone(), 1), (CurvePoint::branch(int(2)), 2)]), 3)
            .unwrap();
        assert_eq!(e.embed_point(&j, &p).unwrap(), direct);
        let back = form.preimage(&j, &direct).unwrap().unwrap();
        assert_eq!(form.to_key(&back), p);
    }
}
