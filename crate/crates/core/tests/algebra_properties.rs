mod common;

use common::*;
use hyperchow_core::rational::{frac, int};
use hyperchow_core::*;
use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn curves() -> Vec<HyperellipticCurve> {
    vec![
        curve(1, &[0, 1, 3]),
        curve(1, &[-1, 0, 1, 2]),
        genus2(),
        curve(-3, &[-2, 0, 1, 2, 5, 7]),
        genus3(),
    ]
}

fn function_strategy() -> impl Strategy<Value = (usize, u64)> {
    (0..5usize, any::<u64>())
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 48,
        rng_seed: RngSeed::Fixed(0x5eed_0003),
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn principal_divisors_have_degree_zero((ci, seed) in function_strategy()) {
        let c = &curves()[ci];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_function(&mut rng, c.genus());
        let d = c.divisor_of(&f).unwrap();
        prop_assert_eq!(d.degree(), 0);
    }

    #[test]
    fn divisor_is_multiplicative((ci, seed) in function_strategy()) {
        let c = &curves()[ci];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_function(&mut rng, c.genus());
        let g = random_function(&mut rng, c.genus());
        let fg = f.mul(&g, c);
        prop_assert_eq!(c.divisor_of(&fg).unwrap(), c.divisor_of(&f).unwrap().add(&c.divisor_of(&g).unwrap()));
        let inv = f.inv(c).unwrap();
        prop_assert_eq!(c.divisor_of(&inv).unwrap(), c.divisor_of(&f).unwrap().neg());
    }

    #[test]
    fn weil_reciprocity((ci, seed) in function_strategy()) {
        let c = &curves()[ci];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_function(&mut rng, c.genus());
        let g = random_function(&mut rng, c.genus());
        prop_assert_eq!(c.tame_symbol_norm_product(&f, &g).unwrap(), int(1));
    }

    #[test]
    fn valuation_laws((ci, seed) in function_strategy()) {
        let c = &curves()[ci];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_function(&mut rng, c.genus());
        let g = random_function(&mut rng, c.genus());
        let fg = f.mul(&g, c);
        let sum = f.add(&g);
        for place in c.support_places(&[&f, &g]).unwrap() {
            let (vf, vg) = (c.valuation_at(&f, &place).unwrap(), c.valuation_at(&g, &place).unwrap());
            prop_assert_eq!(c.valuation_at(&fg, &place).unwrap(), vf + vg);
            if !sum.is_zero() {
                let vs = c.valuation_at(&sum, &place).unwrap();
                prop_assert!(vs >= vf.min(vg));
                if vf != vg {
                    prop_assert_eq!(vs, vf.min(vg));
                }
            }
        }
    }

    #[test]
    fn mobius_round_trip((ci, seed) in function_strategy()) {
        let c = &curves()[ci];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = c.rational_branch_points().unwrap().iter().filter_map(|p| p.x().cloned()).next().unwrap();
        let t = MobiusTransport::new(c, MobiusMap::send_to_infinity(&b)).unwrap();
        prop_assert!(t.target().is_odd_degree());
        let f = random_function(&mut rng, c.genus());
        let moved = t.forward_function(&f);
        prop_assert_eq!(t.backward_function(&moved), f.clone());
        prop_assert_eq!(t.forward_divisor(&c.divisor_of(&f).unwrap()).unwrap(), t.target().divisor_of(&moved).unwrap());
        for p in c.rational_branch_points().unwrap() {
            let q = t.forward_point(&p).unwrap();
            prop_assert!(q.is_weierstrass());
            prop_assert_eq!(t.backward_point(&q).unwrap(), p);
        }
    }
}

#[test]
fn divisor_zero_is_empty() {
    let d = Divisor::from_points([(CurvePoint::branch(int(0)), 2), (CurvePoint::branch(int(0)), -2)]);
    assert!(d.is_empty());
    assert_eq!(d, Divisor::zero());
}

#[test]
fn coordinate_function_divisors() {
    // x on the odd model: 2(0, 0) - 2 infinity
    let c = curve(1, &[0, 1, 2, 3, 4]);
    let d = c.divisor_of(&FunctionFieldElement::x()).unwrap();
    assert_eq!(d, Divisor::from_points([(CurvePoint::branch(int(0)), 2), (CurvePoint::infinity(), -2)]));
    let y = c.divisor_of(&FunctionFieldElement::y()).unwrap();
    assert_eq!(y.degree(), 0);
    assert_eq!(y.multiplicity_at(&CurvePoint::infinity()), -5);
}

/// `y^2 = x (x - 1)(x - l)`.
fn legendre(l: Rational) -> HyperellipticCurve {
    HyperellipticCurve::from_roots(int(1), &[int(0), int(1), l]).unwrap()
}

#[test]
fn legendre_valuations() {
    let l = frac(5, 3);
    let e = legendre(l.clone());
    let x = FunctionFieldElement::x();
    let y = FunctionFieldElement::y();
    assert_eq!(e.valuation(&x, &CurvePoint::branch(int(0))).unwrap(), 2);
    assert_eq!(e.valuation(&x, &CurvePoint::infinity()).unwrap(), -2);
    assert_eq!(e.valuation(&y, &CurvePoint::branch(int(1))).unwrap(), 1);
    let dy = e.divisor_of(&y).unwrap();
    let expected = Divisor::from_points([
        (CurvePoint::branch(int(0)), 1),
        (CurvePoint::branch(int(1)), 1),
        (CurvePoint::branch(l.clone()), 1),
        (CurvePoint::infinity(), -3),
    ]);
    assert_eq!(dy, expected);
    for (p, m) in expected.point_terms() {
        assert_eq!(e.valuation(&y, p).unwrap(), m);
    }
    // tame symbol of x, y at (0, 0) is the limit of x / y^2 = 1 / l
    assert_eq!(e.tame_symbol(&x, &y, &CurvePoint::branch(int(0))).unwrap(), int(1) / l);
    assert!(matches!(e.valuation(&FunctionFieldElement::zero(), &CurvePoint::infinity()), Err(AlgebraError::ValuationOfZero)));
}

#[test]
fn coordinate_evaluation() {
    // y^2 = 6 x (x - 1)(x - 2) has the points (4, ±12)
    let e = curve(6, &[0, 1, 2]);
    for p in e.points_over(&int(4)) {
        assert_eq!(e.evaluate(&FunctionFieldElement::x(), &p).unwrap(), Value::Finite(int(4)));
    }
    let f = FunctionFieldElement::rational_function(Polynomial::from_i64s(&[-1, 1]), Polynomial::x()).unwrap();
    assert_eq!(e.evaluate(&f, &CurvePoint::branch(int(1))).unwrap(), Value::Finite(int(0)));
    let g = f.inv(&e).unwrap();
    assert_eq!(e.evaluate(&g, &CurvePoint::branch(int(1))).unwrap(), Value::Infinity);
}

#[test]
fn inversion_moves_legendre_branch_set() {
    let l = int(3);
    let e = legendre(l.clone());
    let inv = MobiusMap::new(int(0), int(1), int(1), int(0)).unwrap();
    let t = MobiusTransport::new(&e, inv).unwrap();
    let target = t.target();
    // {0, 1, l, oo} -> {oo, 1, 1/l, 0}
    assert_eq!(target.h().rational_roots().unwrap(), vec![int(0), frac(1, 3), int(1)]);
    let fx = t.forward_function(&FunctionFieldElement::x());
    assert_eq!(fx, FunctionFieldElement::rational_function(Polynomial::one(), Polynomial::x()).unwrap());
    // the transported points satisfy the new equation
    let src = curve(6, &[0, 1, 3]);
    let ts = MobiusTransport::new(&src, MobiusMap::new(int(0), int(1), int(1), int(0)).unwrap()).unwrap();
    for p in src.search_points(12).into_iter().take(5) {
        let q = ts.forward_point(&p).unwrap();
        assert!(ts.target().contains(&q));
        assert_eq!(ts.backward_point(&q).unwrap(), p);
    }
}

#[test]
fn scaling_relates_lambda_and_inverse() {
    // x -> l x carries E_{1/l} to a model of E_l, and x on E_{1/l} becomes x / l
    let l = frac(7, 2);
    let e_inv = legendre(int(1) / l.clone());
    let m = MobiusMap::new(l.clone(), int(0), int(0), int(1)).unwrap();
    let t = MobiusTransport::new(&e_inv, m).unwrap();
    assert_eq!(t.target().h().rational_roots().unwrap(), vec![int(0), int(1), l.clone()]);
    let fx = t.forward_function(&FunctionFieldElement::x());
    let x_over_l = FunctionFieldElement::from_poly(Polynomial::x().scale(&(int(1) / l)));
    assert_eq!(fx, x_over_l);
}

#[test]
fn identity_transport_is_trivial() {
    let c = genus2();
    let t = MobiusTransport::identity(&c);
    assert_eq!(t.target(), &c);
    let f = FunctionFieldElement::y();
    assert_eq!(t.forward_function(&f), f);
}
