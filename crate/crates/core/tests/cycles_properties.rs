mod common;

use common::*;
use hyperchow_core::rational::int;
use hyperchow_core::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed_0002;

/// A datum `(a', a'', p', p'')` whose class `(a' + a'') - (p' + p'')` is 2-torsion.
fn random_datum(
    rng: &mut ChaCha8Rng,
    branch: &[CurvePoint],
    pts: &[CurvePoint],
) -> [CurvePoint; 4] {
    let mut bs = branch.to_vec();
    bs.shuffle(rng);
    let p = pts.choose(rng).unwrap().clone();
    match rng.gen_range(0..4) {
        0 => [bs[0].clone(), bs[1].clone(), bs[2].clone(), bs[3].clone()],
        // P + iota P is the hyperelliptic class 2 w1
        1 => [p.clone(), p.involution(), bs[0].clone(), bs[1].clone()],
        2 => [bs[0].clone(), bs[1].clone(), p.clone(), p.involution()],
        // the specialization shape (t, e, t, e')
        _ => [p.clone(), bs[0].clone(), p, bs[1].clone()],
    }
}

fn fixed_setups() -> Vec<(Jacobian, Vec<CurvePoint>)> {
    let c2 = genus2();
    let p2 = genus2_xs().iter().map(|x| point_at(&c2, x)).collect();
    let c3 = genus3();
    let p3 = genus3_xs().iter().map(|x| point_at(&c3, x)).collect();
    vec![
        (Jacobian::new(&c2, &CurvePoint::branch(int(0))).unwrap(), p2),
        (Jacobian::new(&c3, &CurvePoint::branch(int(0))).unwrap(), p3),
    ]
}

#[test]
fn random_four_configurations_are_cycles() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for g in [2, 3] {
        let mut done = 0;
        while done < 50 {
            // alternate the fixed curves with random twists, some of even degree
            let (jac, pts) = if done % 2 == 0 {
                fixed_setups().swap_remove(g - 2)
            } else {
                let (c, pts) = random_curve(&mut rng, g);
                let bs = c.rational_branch_points().unwrap();
                let w1 = bs.choose(&mut rng).unwrap().clone();
                (Jacobian::new(&c, &w1).unwrap(), pts)
            };
            let branch = jac.curve().rational_branch_points().unwrap();
            if branch.len() < 4 {
                continue;
            }
            let [a1, a2, p1, p2] = random_datum(&mut rng, &branch, &pts);
            let (z, report) = four_configuration(&jac, &a1, &a2, &p1, &p2).unwrap();
            assert!(z.is_cycle(&jac).unwrap(), "datum {a1} {a2} {p1} {p2} on {}", jac.curve());
            assert!(report.is_cycle);
            assert!(report.boundary.is_empty());
            done += 1;
        }
    }
}

/// A function whose divisor is supported on rational points: a product of
/// `(x - x_i)^{m_i}` over abscissae with rational points, times a power of
/// the Weierstrass function.
fn random_rational_function(rng: &mut ChaCha8Rng, jac: &Jacobian, pts: &[CurvePoint]) -> FunctionFieldElement {
    let c = jac.curve();
    let branch = c.rational_branch_points().unwrap();
    let mut xs: Vec<Rational> = pts.iter().filter_map(|p| p.x().cloned()).collect();
    xs.extend(branch.iter().filter_map(|p| p.x().cloned()));
    let mut f = FunctionFieldElement::one();
    for x in xs {
        let m = rng.gen_range(-1..=1);
        let lin = FunctionFieldElement::from_poly(Polynomial::linear(&x));
        f = f.mul(&lin.pow(m, c).unwrap(), c);
    }
    let w2 = branch.iter().find(|b| *b != jac.basepoint()).unwrap();
    let d = Divisor::from_points([(jac.basepoint().clone(), 2), (w2.clone(), -2)]);
    let theta = jac.is_principal(&d).unwrap().witness.unwrap();
    f.mul(&theta.pow(rng.gen_range(-1..=1), c).unwrap(), c)
}

fn random_precycle(rng: &mut ChaCha8Rng, jac: &Jacobian, pts: &[CurvePoint]) -> PreCycle {
    let mut z = PreCycle::new(1);
    for _ in 0..rng.gen_range(1..=3) {
        let p = pts.choose(rng).unwrap();
        let s = jac.point_class(p).unwrap();
        let curve = match rng.gen_range(0..3) {
            0 => EmbeddedCurve::translate(s),
            1 => EmbeddedCurve::translate(PicPoint::zero(1)).translated(jac, &PicPoint::new(0, s.cls)),
            _ => EmbeddedCurve::affine(-1, s),
        };
        z.push(curve, random_rational_function(rng, jac, pts), rng.gen_range(-2..=2));
    }
    z
}

#[test]
fn boundary_is_additive() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 1);
    for (jac, pts) in fixed_setups() {
        for _ in 0..10 {
            let a = random_precycle(&mut rng, &jac, &pts);
            let b = random_precycle(&mut rng, &jac, &pts);
            let sum = a.add(&b).unwrap().boundary(&jac).unwrap();
            let parts = a.boundary(&jac).unwrap().add(&b.boundary(&jac).unwrap()).unwrap();
            assert_eq!(sum, parts);
            assert_eq!(a.scale(3).boundary(&jac).unwrap(), a.boundary(&jac).unwrap().scale(3));
            assert!(a.sub(&a).unwrap().boundary(&jac).unwrap().is_zero());
        }
    }
}

#[test]
fn boundary_is_translation_equivariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 2);
    for (jac, pts) in fixed_setups() {
        for _ in 0..10 {
            let z = random_precycle(&mut rng, &jac, &pts);
            let t = pts.choose(&mut rng).unwrap().clone();
            let t = if rng.gen_bool(0.5) { t.involution() } else { t };
            let by = PicPoint::new(0, jac.point_class(&t).unwrap().cls);
            let moved = translate_cycle(&jac, &z, &t).unwrap();
            assert_eq!(
                moved.boundary(&jac).unwrap(),
                z.boundary(&jac).unwrap().translate(&jac, &by)
            );
        }
    }
}

#[test]
fn translates_of_k_are_cycles() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 3);
    for (jac, pts) in fixed_setups() {
        let branch = jac.curve().rational_branch_points().unwrap();
        for w2 in branch.iter().filter(|b| *b != jac.basepoint()) {
            let k = basic_cycle(&jac, w2).unwrap();
            assert!(k.is_cycle(&jac).unwrap());
            for _ in 0..2 {
                let t = pts.choose(&mut rng).unwrap();
                assert!(translate_cycle(&jac, &k, t).unwrap().is_cycle(&jac).unwrap());
                let (zt, _) = hyperelliptic_configuration(&jac, w2, t).unwrap();
                assert!(zt.is_cycle(&jac).unwrap());
            }
        }
    }
}

#[test]
fn closed_point_support_is_reported() {
    let (jac, _) = fixed_setups().swap_remove(0);
    // x^2 - 3 has no rational roots
    let f = FunctionFieldElement::from_poly(Polynomial::from_i64s(&[-3, 0, 1]));
    let mut z = PreCycle::new(1);
    z.push(EmbeddedCurve::translate(PicPoint::zero(1)), f, 1);
    assert!(matches!(z.boundary(&jac), Err(CycleError::NonRationalSupport(_))));
}
