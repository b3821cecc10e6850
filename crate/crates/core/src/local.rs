//! Valuations, divisors, evaluation and tame symbols of function-field elements.
//!
//! Everything is computed from the polynomial data of `(a + b y) / d` without root
//! finding in extensions: at a place over the roots of `q` the uniformizer is `q`
//! itself (unramified) or `y` (ramified), and points at infinity are moved to
//! `x = 0` by `x -> 1/x`.

use num_traits::{One, Zero};

use crate::curve::{ClosedPoint, CurvePoint, HyperellipticCurve, InfinitySheet, Place};
use crate::divisor::Divisor;
use crate::error::AlgebraError;
use crate::function::FunctionFieldElement;
use crate::mobius::{MobiusMap, MobiusTransport};
use crate::poly::{coprime_basis, Polynomial};
use crate::rational::{self, Rational};
use crate::residue::Residue;

/// Value of a function at a rational point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Finite(Rational),
    Infinity,
}

/// Value of a function at an arbitrary place, in its residue ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlaceValue {
    Finite(Residue),
    Zero,
    Infinity,
}

/// Local data of a place with finite x-projection.
enum Finite {
    /// Over the roots of `q`, a factor of `h`.
    Ramified(Polynomial),
    /// Over the roots of `q`, on the sheet `y = r mod q`.
    Sheet(Polynomial, Polynomial),
    /// Both points over the roots of `q`, not told apart.
    Fiber(Polynomial),
}

fn ord(p: &Polynomial, q: &Polynomial) -> i64 {
    if p.is_zero() {
        i64::MAX
    } else {
        p.multiplicity_of(q) as i64
    }
}

fn pow_q(q: &Polynomial, k: i64) -> Polynomial {
    q.pow(k as u32)
}

/// Square root of `h` modulo `q^n` lifting `r`, with `r` a unit mod `q`.
fn hensel_sqrt(h: &Polynomial, q: &Polynomial, r: &Polynomial, n: u32) -> Polynomial {
    let mut y = r.rem(q);
    let mut prec = 1u32;
    while prec < n {
        prec = (2 * prec).min(n);
        let m = q.pow(prec);
        let two_y = y.scale(&rational::int(2));
        let inv = two_y.inv_mod(&m).expect("lift of a unit");
        let err = (&(&y * &y) - h).rem(&m);
        y = (&y - &(&err * &inv)).rem(&m);
    }
    y
}

fn to_finite(curve: &HyperellipticCurve, place: &Place) -> Option<Finite> {
    match place {
        Place::Point(CurvePoint::Affine { x, y }) => {
            Some(Finite::Sheet(Polynomial::linear(x), Polynomial::constant(y.clone())))
        }
        Place::Point(CurvePoint::Branch { x }) => Some(Finite::Ramified(Polynomial::linear(x))),
        Place::Point(CurvePoint::Infinity { .. }) => None,
        Place::Closed(ClosedPoint::Ramified { q }) => Some(Finite::Ramified(q.clone())),
        Place::Closed(ClosedPoint::Sheet { q, r }) => Some(Finite::Sheet(q.clone(), r.clone())),
        Place::Closed(ClosedPoint::Fiber { q }) => Some(Finite::Fiber(q.clone())),
        Place::Closed(ClosedPoint::InfinityPair) => {
            let _ = curve;
            None
        }
    }
}

/// Valuation and leading coefficient of `a + b y` at a finite place, the
/// uniformizer being `q` (unramified) or `y` (ramified).
fn numerator_local(
    curve: &HyperellipticCurve,
    a: &Polynomial,
    b: &Polynomial,
    place: &Finite,
) -> Result<(i64, Residue), AlgebraError> {
    let h = curve.h();
    match place {
        Finite::Ramified(q) => {
            // q = y^2 / h1 with h1 = h / q a unit at the place
            let h1 = h.exact_div(q);
            let oa = ord(a, q);
            let ob = ord(b, q);
            let (nu, coeff, k) = if oa.saturating_mul(2) < ob.saturating_mul(2).saturating_add(1) {
                (2 * oa, a.exact_div(&pow_q(q, oa)), oa)
            } else {
                (2 * ob + 1, b.exact_div(&pow_q(q, ob)), ob)
            };
            let scale = h1.pow(k as u32).inv_mod(q).ok_or_else(|| {
                AlgebraError::Unsupported(format!("non-uniform ramified place over {q}"))
            })?;
            Ok((nu, Residue::field(q, &(&coeff * &scale))))
        }
        Finite::Sheet(q, r) => {
            let k = ord(a, q).min(ord(b, q));
            let qk = pow_q(q, k);
            let a1 = a.exact_div(&qk);
            let b1 = b.exact_div(&qk);
            let s = (&a1 + &(&b1 * r)).rem(q);
            if !s.is_zero() {
                if s.inv_mod(q).is_none() {
                    return Err(AlgebraError::Unsupported(format!(
                        "function not uniform on the closed point over {q}"
                    )));
                }
                return Ok((k, Residue::field(q, &s)));
            }
            let n1 = &(&a1 * &a1) - &(&(&b1 * &b1) * h);
            let e = ord(&n1, q);
            let y = hensel_sqrt(h, q, r, (e + 1) as u32);
            let m = q.pow((e + 1) as u32);
            let val = (&a1 + &(&b1 * &y)).rem(&m);
            let (lead, rest) = val.div_rem(&pow_q(q, e))?;
            debug_assert!(rest.is_zero());
            Ok((k + e, Residue::field(q, &lead)))
        }
        Finite::Fiber(q) => {
            let k = ord(a, q).min(ord(b, q));
            let qk = pow_q(q, k);
            let a1 = a.exact_div(&qk);
            let b1 = b.exact_div(&qk);
            let n1 = (&(&a1 * &a1) - &(&(&b1 * &b1) * h)).rem(q);
            if n1.inv_mod(q).is_none() {
                return Err(AlgebraError::Unsupported(format!(
                    "function separates the sheets over {q}; use sheet places"
                )));
            }
            Ok((k, Residue::quadratic(q, h, &a1, &b1)))
        }
    }
}

/// Valuation of `a + b y` alone; avoids the lift needed for the leading coefficient.
fn numerator_valuation(
    curve: &HyperellipticCurve,
    a: &Polynomial,
    b: &Polynomial,
    place: &Finite,
) -> Result<i64, AlgebraError> {
    match place {
        Finite::Ramified(q) => {
            let (oa, ob) = (ord(a, q), ord(b, q));
            Ok((oa.saturating_mul(2)).min(ob.saturating_mul(2).saturating_add(1)))
        }
        Finite::Sheet(q, r) => {
            let k = ord(a, q).min(ord(b, q));
            let qk = pow_q(q, k);
            let a1 = a.exact_div(&qk);
            let b1 = b.exact_div(&qk);
            let s = (&a1 + &(&b1 * r)).rem(q);
            if !s.is_zero() {
                if s.inv_mod(q).is_none() {
                    return Err(AlgebraError::Unsupported(format!(
                        "function not uniform on the closed point over {q}"
                    )));
                }
                return Ok(k);
            }
            // a1 - b1 r is a unit, so the whole q-order of the norm sits on this sheet
            let n1 = &(&a1 * &a1) - &(&(&b1 * &b1) * curve.h());
            Ok(k + ord(&n1, q))
        }
        Finite::Fiber(_) => Ok(numerator_local(curve, a, b, place)?.0),
    }
}

fn denominator_local(curve: &HyperellipticCurve, d: &Polynomial, place: &Finite) -> (i64, Residue) {
    match place {
        Finite::Ramified(q) => {
            let h1 = curve.h().exact_div(q);
            let od = ord(d, q);
            let coeff = d.exact_div(&pow_q(q, od));
            let scale = h1.pow(od as u32).inv_mod(q).expect("squarefree h");
            (2 * od, Residue::field(q, &(&coeff * &scale)))
        }
        Finite::Sheet(q, _) | Finite::Fiber(q) => {
            let od = ord(d, q);
            let coeff = d.exact_div(&pow_q(q, od));
            let res = match place {
                Finite::Fiber(_) => {
                    Residue::quadratic(q, curve.h(), &coeff, &Polynomial::zero())
                }
                _ => Residue::field(q, &coeff),
            };
            (od, res)
        }
    }
}

fn finite_valuation(
    curve: &HyperellipticCurve,
    f: &FunctionFieldElement,
    place: &Finite,
) -> Result<i64, AlgebraError> {
    if f.is_zero() {
        return Err(AlgebraError::ValuationOfZero);
    }
    let nn = numerator_valuation(curve, f.a(), f.b(), place)?;
    let nd = match place {
        Finite::Ramified(q) => 2 * ord(f.d(), q),
        Finite::Sheet(q, _) | Finite::Fiber(q) => ord(f.d(), q),
    };
    Ok(nn - nd)
}

fn finite_local(
    curve: &HyperellipticCurve,
    f: &FunctionFieldElement,
    place: &Finite,
) -> Result<(i64, Residue), AlgebraError> {
    if f.is_zero() {
        return Err(AlgebraError::ValuationOfZero);
    }
    let (nn, ln) = numerator_local(curve, f.a(), f.b(), place)?;
    let (nd, ld) = denominator_local(curve, f.d(), place);
    Ok((nn - nd, ln.mul(&ld.inv()?)))
}

/// `x -> 1/x`, moving infinity to `x = 0`.
fn inversion(curve: &HyperellipticCurve) -> MobiusTransport {
    let map = MobiusMap::new(Rational::zero(), Rational::one(), Rational::one(), Rational::zero())
        .expect("invertible");
    MobiusTransport::new(curve, map).expect("inversion of a valid model")
}

fn infinity_image(curve: &HyperellipticCurve, place: &Place) -> Place {
    match place {
        Place::Point(CurvePoint::Infinity { sheet }) => match sheet {
            InfinitySheet::Single => Place::Point(CurvePoint::branch(Rational::zero())),
            s => {
                let c = curve.sqrt_lc().expect("rational infinity points").clone();
                let y = if *s == InfinitySheet::Plus { c } else { -c };
                Place::Point(CurvePoint::affine(Rational::zero(), y))
            }
        },
        _ => Place::Closed(ClosedPoint::Fiber { q: Polynomial::x() }),
    }
}

fn check_place(curve: &HyperellipticCurve, place: &Place) -> Result<(), AlgebraError> {
    match place {
        Place::Point(p) => curve.check_point(p),
        Place::Closed(ClosedPoint::InfinityPair) => {
            if !curve.is_odd_degree() && curve.sqrt_lc().is_none() {
                Ok(())
            } else {
                Err(AlgebraError::NotOnCurve("infinity-pair".into()))
            }
        }
        Place::Closed(_) => Ok(()),
    }
}

// generic order of the pole of a + b y at an unramified place over infinity
fn pole_order(f: &FunctionFieldElement, g: i64) -> i64 {
    let ta = if f.a().is_zero() { i64::MIN } else { f.a().deg() };
    let tb = if f.b().is_zero() { i64::MIN } else { f.b().deg() + g + 1 };
    ta.max(tb)
}

impl HyperellipticCurve {
    /// Valuation and leading coefficient at a place, for a fixed uniformizer.
    fn local(
        &self,
        f: &FunctionFieldElement,
        place: &Place,
    ) -> Result<(i64, Residue), AlgebraError> {
        if f.is_zero() {
            return Err(AlgebraError::ValuationOfZero);
        }
        check_place(self, place)?;
        match to_finite(self, place) {
            Some(fin) => finite_local(self, f, &fin),
            None => {
                let t = inversion(self);
                let g = t.forward_function(f);
                let img = infinity_image(self, place);
                let fin = to_finite(t.target(), &img).expect("finite image");
                finite_local(t.target(), &g, &fin)
            }
        }
    }

    pub fn valuation(&self, f: &FunctionFieldElement, p: &CurvePoint) -> Result<i64, AlgebraError> {
        self.valuation_at(f, &Place::Point(p.clone()))
    }

    pub fn valuation_at(&self, f: &FunctionFieldElement, place: &Place) -> Result<i64, AlgebraError> {
        if f.is_zero() {
            return Err(AlgebraError::ValuationOfZero);
        }
        check_place(self, place)?;
        let g = self.genus() as i64;
        match place {
            Place::Point(CurvePoint::Infinity { sheet }) => {
                let (da, db, dd) = (f.a().deg(), f.b().deg(), f.d().deg());
                if *sheet == InfinitySheet::Single {
                    let va = if f.a().is_zero() { i64::MAX } else { -2 * da };
                    let vb = if f.b().is_zero() {
                        i64::MAX
                    } else {
                        -2 * db - (2 * g + 1)
                    };
                    return Ok(va.min(vb) + 2 * dd);
                }
                let c = self.sqrt_lc().unwrap();
                let sign = rational::int(HyperellipticCurve::infinity_sign(*sheet) as i64);
                let top = pole_order(f, g);
                let cancels = !f.a().is_zero()
                    && !f.b().is_zero()
                    && da == db + g + 1
                    && (f.a().lc() + f.b().lc() * c * sign).is_zero();
                if cancels {
                    let n = f.norm_numerator(self);
                    Ok(-n.deg() + da + dd)
                } else {
                    Ok(-top + dd)
                }
            }
            Place::Closed(ClosedPoint::InfinityPair) => {
                Ok(-pole_order(f, g) + f.d().deg())
            }
            _ => match to_finite(self, place) {
                Some(fin) => finite_valuation(self, f, &fin),
                None => Ok(self.local(f, place)?.0),
            },
        }
    }

    /// Places carrying the zeros and poles of the given functions, refined so that
    /// each function behaves uniformly over every returned place.
    pub fn support_places(
        &self,
        fs: &[&FunctionFieldElement],
    ) -> Result<Vec<Place>, AlgebraError> {
        let h = self.h();
        let mut inputs = vec![h.clone()];
        let mut relevant = Vec::new();
        for f in fs {
            if f.is_zero() {
                return Err(AlgebraError::ValuationOfZero);
            }
            let n = f.norm_numerator(self);
            inputs.extend([f.a().clone(), f.b().clone(), f.d().clone(), n.clone()]);
            relevant.push(n);
            relevant.push(f.d().clone());
        }
        let inputs: Vec<Polynomial> = inputs.into_iter().filter(|p| !p.is_zero()).collect();
        let mut pieces = Vec::new();
        for q in coprime_basis(&inputs) {
            if !relevant.iter().any(|p| p.deg() > 0 && !q.gcd(p).is_one()) {
                continue;
            }
            let roots = q.rational_roots()?;
            let mut rest = q.clone();
            for r in roots {
                let lin = Polynomial::linear(&r);
                rest = rest.exact_div(&lin);
                pieces.push(lin);
            }
            if rest.deg() > 0 {
                pieces.push(rest.monic());
            }
        }

        let mut places = Vec::new();
        let mut work = pieces;
        while let Some(q) = work.pop() {
            if q.divides(h) {
                if q.deg() == 1 {
                    places.push(Place::Point(CurvePoint::branch(-q.coeff(0))));
                } else {
                    places.push(Place::Closed(ClosedPoint::Ramified { q }));
                }
                continue;
            }
            // sheet residues of the functions vanishing to higher order on one sheet
            let mut residues: Vec<Polynomial> = Vec::new();
            for f in fs {
                let k = ord(f.a(), &q).min(ord(f.b(), &q));
                let qk = pow_q(&q, k);
                let a1 = f.a().exact_div(&qk);
                let b1 = f.b().exact_div(&qk);
                let n1 = &(&a1 * &a1) - &(&(&b1 * &b1) * h);
                if ord(&n1, &q) > 0 {
                    let binv = b1.inv_mod(&q).expect("b unit where the sheets separate");
                    residues.push((-&(&a1 * &binv)).rem(&q));
                }
            }
            let mut split = None;
            'outer: for i in 0..residues.len() {
                for j in i + 1..residues.len() {
                    for cand in [&residues[i] - &residues[j], &residues[i] + &residues[j]] {
                        let g = q.gcd(&cand);
                        if g.deg() > 0 && g.deg() < q.deg() {
                            split = Some(g);
                            break 'outer;
                        }
                    }
                }
            }
            if let Some(g) = split {
                work.push(q.exact_div(&g).monic());
                work.push(g);
                continue;
            }
            match residues.first() {
                Some(r) => {
                    let neg = (-r).rem(&q);
                    if q.deg() == 1 {
                        let x0 = -q.coeff(0);
                        places.push(Place::Point(CurvePoint::affine(x0.clone(), r.coeff(0))));
                        places.push(Place::Point(CurvePoint::affine(x0, neg.coeff(0))));
                    } else {
                        places.push(Place::Closed(ClosedPoint::Sheet { q: q.clone(), r: r.clone() }));
                        places.push(Place::Closed(ClosedPoint::Sheet { q, r: neg }));
                    }
                }
                None => {
                    if q.deg() == 1 {
                        let x0 = -q.coeff(0);
                        let pts = self.points_over(&x0);
                        if pts.is_empty() {
                            places.push(Place::Closed(ClosedPoint::Fiber { q }));
                        } else {
                            places.extend(pts.into_iter().map(Place::Point));
                        }
                    } else {
                        places.push(Place::Closed(ClosedPoint::Fiber { q }));
                    }
                }
            }
        }
        places.extend(self.infinite_places());
        places.sort();
        Ok(places)
    }

    pub fn divisor_of(&self, f: &FunctionFieldElement) -> Result<Divisor, AlgebraError> {
        let places = self.support_places(&[f])?;
        let mut terms = Vec::with_capacity(places.len());
        for p in places {
            let v = self.valuation_at(f, &p)?;
            terms.push((p, v));
        }
        Ok(Divisor::from_terms(terms))
    }

    pub fn evaluate(&self, f: &FunctionFieldElement, p: &CurvePoint) -> Result<Value, AlgebraError> {
        match self.evaluate_at(f, &Place::Point(p.clone()))? {
            PlaceValue::Zero => Ok(Value::Finite(Rational::zero())),
            PlaceValue::Infinity => Ok(Value::Infinity),
            PlaceValue::Finite(r) => Ok(Value::Finite(
                r.as_rational().expect("rational residue at a rational point"),
            )),
        }
    }

    pub fn evaluate_at(&self, f: &FunctionFieldElement, place: &Place) -> Result<PlaceValue, AlgebraError> {
        let nu = self.valuation_at(f, place)?;
        if nu > 0 {
            return Ok(PlaceValue::Zero);
        }
        if nu < 0 {
            return Ok(PlaceValue::Infinity);
        }
        Ok(PlaceValue::Finite(self.local(f, place)?.1))
    }

    /// `(-1)^(v(a) v(b)) a^v(b) / b^v(a)` evaluated at a rational point.
    pub fn tame_symbol(
        &self,
        a: &FunctionFieldElement,
        b: &FunctionFieldElement,
        p: &CurvePoint,
    ) -> Result<Rational, AlgebraError> {
        let r = self.tame_symbol_at(a, b, &Place::Point(p.clone()))?;
        Ok(r.as_rational().expect("rational residue at a rational point"))
    }

    /// Tame symbol at any place, as an element of its residue ring.
    pub fn tame_symbol_at(
        &self,
        a: &FunctionFieldElement,
        b: &FunctionFieldElement,
        place: &Place,
    ) -> Result<Residue, AlgebraError> {
        let (va, la) = self.local(a, place)?;
        let (vb, lb) = self.local(b, place)?;
        let mut t = la.pow(vb)?.mul(&lb.pow(-va)?);
        if (va * vb) % 2 != 0 {
            t = t.neg();
        }
        Ok(t)
    }

    /// Product over all places of the norms of the tame symbols; 1 by Weil reciprocity.
    pub fn tame_symbol_norm_product(
        &self,
        a: &FunctionFieldElement,
        b: &FunctionFieldElement,
    ) -> Result<Rational, AlgebraError> {
        let mut prod = Rational::one();
        for place in self.support_places(&[a, b])? {
            prod *= self.tame_symbol_at(a, b, &place)?.norm();
        }
        Ok(prod)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn legendre(l: i64) -> HyperellipticCurve {
        HyperellipticCurve::from_int_roots(&[0, 1, l]).unwrap()
    }

    #[test]
    fn coordinate_valuations() {
        let e = legendre(3);
        let x = FunctionFieldElement::x();
        let y = FunctionFieldElement::y();
        assert_eq!(e.valuation(&x, &CurvePoint::branch(int(0))).unwrap(), 2);
        assert_eq!(e.valuation(&x, &CurvePoint::infinity()).unwrap(), -2);
        assert_eq!(e.valuation(&y, &CurvePoint::branch(int(1))).unwrap(), 1);
        assert_eq!(
            e.valuation(&FunctionFieldElement::zero(), &CurvePoint::infinity()),
            Err(AlgebraError::ValuationOfZero)
        );
    }

    #[test]
    fn divisor_of_coordinates() {
        let e = legendre(3);
        let dx = e.divisor_of(&FunctionFieldElement::x()).unwrap();
        let expected = Divisor::from_points([
            (CurvePoint::branch(int(0)), 2),
            (CurvePoint::infinity(), -2),
        ]);
        assert_eq!(dx, expected);
        let dy = e.divisor_of(&FunctionFieldElement::y()).unwrap();
        let expected = Divisor::from_points([
            (CurvePoint::branch(int(0)), 1),
            (CurvePoint::branch(int(1)), 1),
            (CurvePoint::branch(int(3)), 1),
            (CurvePoint::infinity(), -3),
        ]);
        assert_eq!(dy, expected);
    }

    #[test]
    fn evaluation_and_tame() {
        // y^2 = x(x-1)(x-2) has the point (-1, ?) no; use (2, 0) branch and x = 4: 4*3*2 = 24 no.
        let e = HyperellipticCurve::from_int_roots(&[0, 1, 2]).unwrap();
        let x = FunctionFieldElement::x();
        let f = FunctionFieldElement::rational_function(
            Polynomial::from_i64s(&[-1, 1]),
            Polynomial::x(),
        )
        .unwrap();
        assert_eq!(
            e.evaluate(&f, &CurvePoint::branch(int(1))).unwrap(),
            Value::Finite(int(0))
        );
        assert_eq!(e.evaluate(&f, &CurvePoint::branch(int(0))).unwrap(), Value::Infinity);
        assert_eq!(
            e.evaluate(&f, &CurvePoint::infinity()).unwrap(),
            Value::Finite(int(1))
        );
        // tame symbol of x and y at branch(0) is the limit x / y^2 = 1 / ((0-1)(0-2))
        let y = FunctionFieldElement::y();
        assert_eq!(
            e.tame_symbol(&x, &y, &CurvePoint::branch(int(0))).unwrap(),
            frac(1, 2)
        );
        assert_eq!(e.tame_symbol(&x, &x, &CurvePoint::branch(int(0))).unwrap(), int(1));
        assert_eq!(e.tame_symbol(&y, &y, &CurvePoint::branch(int(0))).unwrap(), int(-1));
    }

    #[test]
    fn evaluation_on_sheet_with_cancellation() {
        // y^2 = x^3 + 1, P = (2, 3): f = (y - 3) / (x - 2) has value h'(2) / (2 * 3) = 12 / 6 = 2
        let c = HyperellipticCurve::new(Polynomial::from_i64s(&[1, 0, 0, 1])).unwrap();
        let f = FunctionFieldElement::new(
            Polynomial::from_i64s(&[-3]),
            Polynomial::one(),
            Polynomial::from_i64s(&[-2, 1]),
        )
        .unwrap();
        let p = c.point(int(2), int(3)).unwrap();
        assert_eq!(c.valuation(&f, &p).unwrap(), 0);
        assert_eq!(c.evaluate(&f, &p).unwrap(), Value::Finite(int(2)));
        // on the other sheet y - 3 = -6, so f has a pole
        assert_eq!(c.evaluate(&f, &p.involution()).unwrap(), Value::Infinity);
        let d = c.divisor_of(&f).unwrap();
        assert_eq!(d.degree(), 0);
    }

    #[test]
    fn weil_reciprocity_small() {
        let e = legendre(3);
        let x = FunctionFieldElement::x();
        let y = FunctionFieldElement::y();
        let g = FunctionFieldElement::from_poly(Polynomial::from_i64s(&[-5, 0, 1])).add(&y);
        assert_eq!(e.tame_symbol_norm_product(&x, &y).unwrap(), int(1));
        assert_eq!(e.tame_symbol_norm_product(&g, &y).unwrap(), int(1));
        assert_eq!(e.tame_symbol_norm_product(&g, &x).unwrap(), int(1));
    }
}
