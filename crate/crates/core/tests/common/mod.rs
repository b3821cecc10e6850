#![allow(dead_code)]

use hyperchow_core::rational::{frac, int, rational_sqrt};
use hyperchow_core::*;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn curve(scale: i64, roots: &[i64]) -> HyperellipticCurve {
    let roots: Vec<Rational> = roots.iter().map(|r| int(*r)).collect();
    HyperellipticCurve::from_roots(int(scale), &roots).unwrap()
}

/// Genus 2 and genus 3 test curves (quadratic twists with small rational points).
pub fn genus2() -> HyperellipticCurve {
    curve(210, &[0, 1, 2, 3, 4])
}

pub fn genus3() -> HyperellipticCurve {
    curve(1001, &[0, 1, 2, 3, 4, 5, 6])
}

pub fn genus2_xs() -> Vec<Rational> {
    vec![int(10), frac(1, 2), frac(9, 2), frac(7, 3), frac(16, 7)]
}

pub fn genus3_xs() -> Vec<Rational> {
    vec![int(15), int(16), frac(3, 7)]
}

pub fn point_at(c: &HyperellipticCurve, x: &Rational) -> CurvePoint {
    c.points_over(x).into_iter().next().expect("rational point")
}

/// A random curve of the given genus, twisted so that it has rational points
/// over two abscissae. Odd or even degree at random.
pub fn random_curve(rng: &mut ChaCha8Rng, genus: usize) -> (HyperellipticCurve, Vec<CurvePoint>) {
    loop {
        let n = 2 * genus + 1 + rng.gen_range(0..2);
        let mut pool: Vec<i64> = (-9..=9).collect();
        pool.shuffle(rng);
        let roots: Vec<Rational> = pool[..n].iter().map(|r| int(*r)).collect();
        let h0 = Polynomial::from_roots(&roots);
        // y^2 = c h0 with c = h0(x0) has a point over x0
        let x0 = int(pool[n]);
        let c = h0.eval(&x0);
        let h = h0.scale(&c);
        let Some(x1) = pool[n + 1..].iter().map(|x| int(*x)).find(|x| rational_sqrt(&h.eval(x)).is_some()) else {
            continue;
        };
        let Ok(curve) = HyperellipticCurve::new(h) else { continue };
        let pts = vec![point_at(&curve, &x0), point_at(&curve, &x1)];
        return (curve, pts);
    }
}

pub fn random_poly(rng: &mut ChaCha8Rng, max_deg: usize, bound: i64) -> Polynomial {
    let d = rng.gen_range(0..=max_deg);
    let coeffs: Vec<Rational> = (0..=d).map(|_| int(rng.gen_range(-bound..=bound))).collect();
    Polynomial::new(coeffs)
}

/// A random nonzero element `(a + b y) / d` of small height.
pub fn random_function(rng: &mut ChaCha8Rng, g: usize) -> FunctionFieldElement {
    loop {
        let a = random_poly(rng, g + 2, 4);
        let b = if rng.gen_bool(0.6) { random_poly(rng, 1, 3) } else { Polynomial::zero() };
        let mut d = random_poly(rng, 2, 3);
        if d.is_zero() {
            d = Polynomial::one();
        }
        let f = FunctionFieldElement::new(a, b, d).unwrap();
        if !f.is_zero() {
            return f;
        }
    }
}

/// Weierstrass basepoint: the first rational branch point.
pub fn basepoint(c: &HyperellipticCurve) -> CurvePoint {
    c.rational_branch_points().unwrap()[0].clone()
}

/// Random divisor supported on the given points, their conjugates and the
/// rational branch points. Multiplicities on non-torsion points stay small,
/// since heights of Jacobian points grow quadratically with them.
pub fn random_divisor(rng: &mut ChaCha8Rng, c: &HyperellipticCurve, pts: &[CurvePoint]) -> Divisor {
    let mut terms: Vec<(CurvePoint, i64)> = Vec::new();
    for p in pts {
        terms.push((p.clone(), rng.gen_range(-1..=1)));
        terms.push((p.involution(), rng.gen_range(-1..=1)));
    }
    for b in c.rational_branch_points().unwrap() {
        terms.push((b, rng.gen_range(-2..=2)));
    }
    Divisor::from_points(terms)
}
