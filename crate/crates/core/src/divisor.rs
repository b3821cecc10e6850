//! Divisors on a hyperelliptic curve with rational and symbolic closed-point support.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::curve::{ClosedPoint, CurvePoint, Place};
use crate::poly::{coprime_basis, Polynomial};

/// Finite formal sum of places. Zero multiplicities are never stored and closed
/// points are kept in a canonical grouping, so equality is term-by-term.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<DivisorTerm>", into = "Vec<DivisorTerm>")]
pub struct Divisor {
    terms: BTreeMap<Place, i64>,
}

#[derive(Clone, Serialize, Deserialize)]
pub struct DivisorTerm {
    pub place: Place,
    pub multiplicity: i64,
}

impl From<Vec<DivisorTerm>> for Divisor {
    fn from(v: Vec<DivisorTerm>) -> Self {
        Divisor::from_terms(v.into_iter().map(|t| (t.place, t.multiplicity)))
    }
}

impl From<Divisor> for Vec<DivisorTerm> {
    fn from(d: Divisor) -> Self {
        d.terms
            .into_iter()
            .map(|(place, multiplicity)| DivisorTerm {
                place,
                multiplicity,
            })
            .collect()
    }
}

impl Divisor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn point(p: CurvePoint) -> Self {
        Self::from_terms([(Place::Point(p), 1)])
    }

    pub fn from_points<I: IntoIterator<Item = (CurvePoint, i64)>>(terms: I) -> Self {
        Self::from_terms(terms.into_iter().map(|(p, m)| (Place::Point(p), m)))
    }

    pub fn from_terms<I: IntoIterator<Item = (Place, i64)>>(terms: I) -> Self {
        let mut points: BTreeMap<Place, i64> = BTreeMap::new();
        let mut closed: Vec<(ClosedPoint, i64)> = Vec::new();
        for (place, m) in terms {
            if m == 0 {
                continue;
            }
            match place {
                Place::Closed(c) if c != ClosedPoint::InfinityPair => closed.push((c, m)),
                other => *points.entry(other).or_insert(0) += m,
            }
        }
        points.retain(|_, m| *m != 0);
        for (c, m) in canonical_closed(closed) {
            points.insert(Place::Closed(c), m);
        }
        Self { terms: points }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.terms.iter().map(|(p, m)| p.degree() * m).sum()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Place, i64)> {
        self.terms.iter().map(|(p, m)| (p, *m))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn multiplicity(&self, place: &Place) -> i64 {
        self.terms.get(place).copied().unwrap_or(0)
    }

    pub fn multiplicity_at(&self, p: &CurvePoint) -> i64 {
        self.multiplicity(&Place::Point(p.clone()))
    }

    /// True when every term is a rational point.
    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(|p| matches!(p, Place::Point(_)))
    }

    pub fn closed_terms(&self) -> impl Iterator<Item = (&ClosedPoint, i64)> {
        self.terms.iter().filter_map(|(p, m)| match p {
            Place::Closed(c) => Some((c, *m)),
            _ => None,
        })
    }

    pub fn point_terms(&self) -> impl Iterator<Item = (&CurvePoint, i64)> {
        self.terms.iter().filter_map(|(p, m)| match p {
            Place::Point(c) => Some((c, *m)),
            _ => None,
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(p, m)| (p.clone(), *m)),
        )
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(p, m)| (p.clone(), m * k)))
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Effective divisors (positive part, negative part) with `self = pos - neg`.
    pub fn split(&self) -> (Self, Self) {
        let pos = Self::from_terms(
            self.terms
                .iter()
                .filter(|(_, m)| **m > 0)
                .map(|(p, m)| (p.clone(), *m)),
        );
        let neg = Self::from_terms(
            self.terms
                .iter()
                .filter(|(_, m)| **m < 0)
                .map(|(p, m)| (p.clone(), -*m)),
        );
        (pos, neg)
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (p, m) in &self.terms {
            let sign = if *m < 0 { "-" } else { "+" };
            if first {
                if *m < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = m.abs();
            if a == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{a}*{p}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Divisor({self})")
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Ramified,
    Fiber,
    Sheet,
}

struct Local {
    kind: Kind,
    r: Polynomial,
    m: i64,
}

fn split_closed(c: ClosedPoint) -> (Kind, Polynomial, Polynomial) {
    match c {
        ClosedPoint::Ramified { q } => (Kind::Ramified, q, Polynomial::zero()),
        ClosedPoint::Fiber { q } => (Kind::Fiber, q, Polynomial::zero()),
        ClosedPoint::Sheet { q, r } => (Kind::Sheet, q, r),
        ClosedPoint::InfinityPair => unreachable!("handled as a point-like term"),
    }
}

/// Refines closed terms to a common basis, resolves fibers against known sheets, and
/// regroups factors carrying identical data, which makes the result canonical.
fn canonical_closed(terms: Vec<(ClosedPoint, i64)>) -> Vec<(ClosedPoint, i64)> {
    if terms.is_empty() {
        return Vec::new();
    }
    let raw: Vec<(Kind, Polynomial, Polynomial, i64)> = terms
        .into_iter()
        .map(|(c, m)| {
            let (k, q, r) = split_closed(c);
            (k, q, r, m)
        })
        .collect();
    let qs: Vec<Polynomial> = raw.iter().map(|t| t.1.clone()).collect();
    let mut work: Vec<(Polynomial, Vec<Local>)> = coprime_basis(&qs)
        .into_iter()
        .map(|b| {
            let locals = raw
                .iter()
                .filter(|t| b.divides(&t.1))
                .map(|t| Local {
                    kind: t.0,
                    r: t.2.rem(&b),
                    m: t.3,
                })
                .collect();
            (b, locals)
        })
        .collect();

    // split basis elements until sheet residues agree up to sign
    let mut settled: Vec<(Polynomial, Vec<Local>)> = Vec::new();
    while let Some((b, locals)) = work.pop() {
        let sheets: Vec<&Polynomial> = locals
            .iter()
            .filter(|l| l.kind == Kind::Sheet)
            .map(|l| &l.r)
            .collect();
        let mut splitter: Option<Polynomial> = None;
        'outer: for i in 0..sheets.len() {
            for j in i + 1..sheets.len() {
                for cand in [sheets[i] - sheets[j], sheets[i] + sheets[j]] {
                    let g = b.gcd(&cand);
                    if g.deg() > 0 && g.deg() < b.deg() {
                        splitter = Some(g);
                        break 'outer;
                    }
                }
            }
        }
        match splitter {
            Some(g) => {
                let other = b.exact_div(&g).monic();
                for part in [g, other] {
                    let sub = locals
                        .iter()
                        .map(|l| Local {
                            kind: l.kind,
                            r: l.r.rem(&part),
                            m: l.m,
                        })
                        .collect();
                    work.push((part, sub));
                }
            }
            None => settled.push((b, locals)),
        }
    }

    // per basis element: ramified mult, fiber mult, optional sheet excess
    let mut ramified: BTreeMap<i64, Vec<Polynomial>> = BTreeMap::new();
    let mut fiber: BTreeMap<i64, Vec<Polynomial>> = BTreeMap::new();
    let mut sheet: BTreeMap<i64, Vec<(Polynomial, Polynomial)>> = BTreeMap::new();
    for (b, locals) in settled {
        let ram: i64 = locals
            .iter()
            .filter(|l| l.kind == Kind::Ramified)
            .map(|l| l.m)
            .sum();
        if ram != 0 {
            ramified.entry(ram).or_default().push(b.clone());
        }
        let fib: i64 = locals
            .iter()
            .filter(|l| l.kind == Kind::Fiber)
            .map(|l| l.m)
            .sum();
        let reference = locals
            .iter()
            .find(|l| l.kind == Kind::Sheet)
            .map(|l| l.r.clone());
        match reference {
            None => {
                if fib != 0 {
                    fiber.entry(fib).or_default().push(b);
                }
            }
            Some(r) => {
                let mut plus = fib;
                let mut minus = fib;
                for l in locals.iter().filter(|l| l.kind == Kind::Sheet) {
                    if l.r == r {
                        plus += l.m;
                    } else {
                        minus += l.m;
                    }
                }
                let common = plus.min(minus);
                if common != 0 {
                    fiber.entry(common).or_default().push(b.clone());
                }
                if plus > common {
                    sheet.entry(plus - common).or_default().push((b, r));
                } else if minus > common {
                    let neg_r = (-&r).rem(&b);
                    sheet.entry(minus - common).or_default().push((b, neg_r));
                }
            }
        }
    }

    let product = |v: &[Polynomial]| v.iter().fold(Polynomial::one(), |acc, p| &acc * p);
    let mut out = Vec::new();
    for (m, qs) in ramified {
        out.push((ClosedPoint::Ramified { q: product(&qs) }, m));
    }
    for (m, qs) in fiber {
        out.push((ClosedPoint::Fiber { q: product(&qs) }, m));
    }
    for (m, parts) in sheet {
        let (q, r) = crt(&parts);
        out.push((ClosedPoint::Sheet { q, r }, m));
    }
    out
}

/// Chinese remainder: the unique r mod prod(b_i) with r = r_i mod b_i.
pub(crate) fn crt(parts: &[(Polynomial, Polynomial)]) -> (Polynomial, Polynomial) {
    let m = parts
        .iter()
        .fold(Polynomial::one(), |acc, (b, _)| &acc * b);
    let mut r = Polynomial::zero();
    for (b, ri) in parts {
        let mi = m.exact_div(b);
        let inv = mi.inv_mod(b).expect("coprime moduli");
        let term = &(ri * &inv).rem(b) * &mi;
        r = &r + &term;
    }
    let r = r.rem(&m);
    (m, r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn pol(c: &[i64]) -> Polynomial {
        Polynomial::from_i64s(c)
    }

    #[test]
    fn zero_terms_are_dropped() {
        let p = CurvePoint::branch(int(0));
        let d = Divisor::point(p.clone()).sub(&Divisor::point(p));
        assert!(d.is_zero());
        assert_eq!(d.degree(), 0);
    }

    #[test]
    fn closed_points_regroup_canonically() {
        let q1 = pol(&[-2, 0, 1]);
        let q2 = pol(&[-3, 0, 1]);
        let together = Divisor::from_terms([(
            Place::Closed(ClosedPoint::Fiber { q: &q1 * &q2 }),
            1,
        )]);
        let apart = Divisor::from_terms([
            (Place::Closed(ClosedPoint::Fiber { q: q1.clone() }), 1),
            (Place::Closed(ClosedPoint::Fiber { q: q2.clone() }), 1),
        ]);
        assert_eq!(together, apart);
        assert_eq!(together.degree(), 8);
        let mixed = apart.add(&Divisor::from_terms([(
            Place::Closed(ClosedPoint::Fiber { q: q1.clone() }),
            1,
        )]));
        assert_eq!(mixed.len(), 2);
        assert_eq!(mixed.degree(), 12);
    }

    #[test]
    fn fiber_resolves_against_sheet() {
        // y^2 = h with h = x mod (x^2 - 2): r = ... take h = x^3 + x^2 ... only residues matter here
        let q = pol(&[-2, 0, 1]);
        let r = pol(&[0, 1]);
        let fiber = Divisor::from_terms([(Place::Closed(ClosedPoint::Fiber { q: q.clone() }), 1)]);
        let plus = Divisor::from_terms([(
            Place::Closed(ClosedPoint::Sheet {
                q: q.clone(),
                r: r.clone(),
            }),
            1,
        )]);
        let minus = Divisor::from_terms([(
            Place::Closed(ClosedPoint::Sheet {
                q: q.clone(),
                r: -&r,
            }),
            1,
        )]);
        assert_eq!(plus.add(&minus), fiber);
        let d = fiber.sub(&minus);
        assert_eq!(d, plus);
    }
}
