//! Verification suites. Each returns records in a fixed order.

use hyperchow_core::rational::{format_rational, int, rational_sqrt, to_f64};
use hyperchow_core::{
    basic_cycle, four_configuration, genus2_decomposition_check, hyperelliptic_configuration, specialize,
    translate_cycle, ConfigurationReport, CurvePoint, Divisor, FunctionFieldElement, HyperellipticCurve, Jacobian,
    PicPoint, Polynomial, Rational,
};
use hyperchow_numerics::{
    bielliptic_identity_check, build_genus3_cover, covolume_by_quadrature, elliptic_periods, functional_equation,
    gram_normalize, gram_normalize_basis, i_of_lambda, monte_carlo_i, regulator_pairing_k, Complex64,
    ComplexCurveModel, LogFactor, QuadOptions, Verdict,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{format_complex, CurveFile, CurveSetup, UsageError};
use crate::report::{timed, Record, Status};

pub mod anchor {
    pub const CYCLE: &str = "boundary of the precycle vanishes";
    pub const DEGENERATE: &str = "Z_t vanishes when t = w1";
    pub const INCIDENCE: &str = "intersection pattern of the 4-configuration";
    pub const SPECIALIZATION: &str = "specialized 4-configuration maps to Z_t";
    pub const GENUS2: &str = "genus-2 Z_t is a tame symbol up to constants";
    pub const DEGREE: &str = "principal divisors have degree 0";
    pub const RECIPROCITY: &str = "Weil reciprocity";
    pub const GROUP: &str = "Jacobian group laws";
    pub const TORSION: &str = "branch partitions give 2-torsion";
    pub const I_LAMBDA: &str = "I(lambda) with unit-mass volume form";
    pub const FUNCTIONAL: &str = "I(lambda) - I(1/lambda) = log|lambda|";
    pub const COVOLUME: &str = "mass of |dx/y|^2 equals the lattice covolume";
    pub const MONTE_CARLO: &str = "I(lambda) by sampling the period parallelogram";
    pub const BIELLIPTIC_MODEL: &str = "bielliptic curve maps to both Legendre curves";
    pub const SPLITTING: &str = "I(f) + I(fbar) = I(g) against the diagonal form";
    pub const MASSES: &str = "pulled-back volume forms have equal mass";
    pub const NONZERO: &str = "I(f, tau_C) is nonzero";
    pub const PAIRING: &str = "pairing of K with tau";
    pub const SWAP: &str = "swapping the forms negates the pairing";
    pub const COVER: &str = "unramified double cover by a genus-3 curve";
}

pub const FUNCTIONAL_BOUND: f64 = 1e-6;
pub const COVOLUME_BOUND: f64 = 1e-8;
pub const SPLITTING_BOUND: f64 = 1e-5;
pub const MASS_BOUND: f64 = 1e-6;
pub const MC_SIGMAS: f64 = 3.0;

pub const FUNCTIONAL_LAMBDAS: [f64; 4] = [2.0, 3.0, 5.0, 1.5];
pub const COVOLUME_LAMBDAS: [(f64, f64); 5] = [(2.0, 0.0), (3.0, 0.0), (5.0, 0.0), (-1.0, 0.0), (2.0, 1.0)];
pub const MONTE_CARLO_LAMBDAS: [(f64, f64); 3] = [(2.0, 0.0), (5.0, 0.0), (2.0, 1.0)];
pub const BIELLIPTIC_PAIRS: [(f64, f64); 3] = [(2.0, 3.0), (2.0, 5.0), (3.0, 5.0)];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

// ---------------------------------------------------------------------------
// exact cycles

fn curve_file(scale: i64, roots: std::ops::RangeInclusive<i64>, ts: &[&str], datum: [&str; 4], random: usize) -> CurveFile {
    CurveFile {
        scale: Some(scale.to_string()),
        roots: Some(roots.map(|r| r.to_string()).collect()),
        coefficients: None,
        w1: "0".into(),
        w2: Some("inf".into()),
        t: ts.iter().map(|s| s.to_string()).collect(),
        datum: Some(datum.map(String::from).to_vec()),
        random_data: random,
    }
}

/// `y^2 = 210 x(x-1)...(x-4)` and `y^2 = 1001 x(x-1)...(x-6)`, quadratic twists
/// chosen to carry small rational points.
pub fn standard_setups(random_data: usize) -> Vec<(String, CurveSetup)> {
    let g2 = curve_file(210, 0..=4, &["10", "1/2", "9/2", "7/3", "16/7", "0"], ["1", "2", "3", "4"], random_data / 2);
    let g3 = curve_file(1001, 0..=6, &["15", "16", "3/7"], ["1", "2", "3", "4"], random_data - random_data / 2);
    vec![
        ("genus 2".to_string(), g2.setup().expect("built-in curve")),
        ("genus 3".to_string(), g3.setup().expect("built-in curve")),
    ]
}

/// Rational non-Weierstrass points of small height.
pub fn point_pool(curve: &HyperellipticCurve, extra: &[CurvePoint]) -> Vec<CurvePoint> {
    let mut pool: Vec<CurvePoint> = extra.iter().filter(|p| !p.is_weierstrass()).cloned().collect();
    for p in curve.search_points(12) {
        if !p.is_weierstrass() && !pool.contains(&p) {
            pool.push(p);
        }
    }
    pool
}

/// A datum `(a', a'', p', p'')` with `(a' + a'') - (p' + p'')` 2-torsion, drawn
/// from the shapes available without solving for torsion points.
pub fn random_datum(rng: &mut ChaCha8Rng, branch: &[CurvePoint], pool: &[CurvePoint]) -> Option<[CurvePoint; 4]> {
    if branch.len() < 2 {
        return None;
    }
    let mut bs = branch.to_vec();
    bs.shuffle(rng);
    let shapes = if pool.is_empty() { 1 } else { 4 };
    if bs.len() < 4 && shapes == 1 {
        return None;
    }
    let lo = if bs.len() < 4 { 1 } else { 0 };
    let Some(p) = pool.choose(rng).cloned() else {
        return Some([bs[0].clone(), bs[1].clone(), bs[2].clone(), bs[3].clone()]);
    };
    Some(match rng.gen_range(lo..shapes) {
        0 => [bs[0].clone(), bs[1].clone(), bs[2].clone(), bs[3].clone()],
        // P + iota P is 2 w1
        1 => [p.clone(), p.involution(), bs[0].clone(), bs[1].clone()],
        2 => [bs[0].clone(), bs[1].clone(), p.clone(), p.involution()],
        _ => [p.clone(), bs[0].clone(), p, bs[1].clone()],
    })
}

fn incidence_shape(report: &ConfigurationReport) -> (usize, Vec<usize>) {
    let mut per: Vec<usize> = report.incidences.iter().map(|i| i.curves.len()).collect();
    per.sort_unstable();
    per.dedup();
    (report.points_total, per)
}

fn has_shape(report: &ConfigurationReport, points: usize, per_point: usize) -> bool {
    report.points_total == points
        && report.incidences.len() == points
        && report.incidences.iter().all(|i| i.curves.len() == per_point)
}

fn shape_text(report: &ConfigurationReport) -> String {
    let (n, per) = incidence_shape(report);
    format!("{n} points on {per:?} curves each, pair counts {:?}", report.pair_counts())
}

fn datum_text(d: &[CurvePoint]) -> String {
    d.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
}

/// The cycle condition and its companions on one curve.
pub fn cycle_suite(label: &str, setup: &CurveSetup, seed: u64) -> Vec<Record> {
    let jac = &setup.jac;
    let w1 = jac.basepoint().clone();
    let mut out = Vec::new();
    let Some(w2) = setup.w2.clone() else {
        out.push(Record::failed(format!("{label}: setup"), anchor::CYCLE, "w2 is required"));
        return out;
    };
    let k = basic_cycle(jac, &w2);
    out.push(match k.as_ref().map(|k| k.is_cycle(jac)) {
        Ok(Ok(ok)) => Record::exact(format!("{label}: K"), anchor::CYCLE, ok, "exact"),
        Ok(Err(e)) => Record::failed(format!("{label}: K"), anchor::CYCLE, e),
        Err(e) => Record::failed(format!("{label}: K"), anchor::CYCLE, e),
    });
    for t in &setup.ts {
        out.extend(t_records(label, jac, &w2, t, k.as_ref().ok()));
    }
    if let Some(d) = &setup.datum {
        out.push(datum_record(label, jac, d));
    }
    if let Some(t) = setup.ts.iter().find(|t| !t.is_weierstrass()) {
        let name = format!("{label}: specialized 4-configuration at t = {t}");
        out.push(match four_configuration(jac, t, &w1, t, &w2) {
            Ok((z, report)) => {
                let cyc = z.is_cycle(jac).unwrap_or(false);
                Record::exact(name, anchor::INCIDENCE, cyc && has_shape(&report, 4, 3), shape_text(&report))
                    .note("expected 4 points on 3 curves each")
            }
            Err(e) => Record::failed(name, anchor::INCIDENCE, e),
        });
    }
    if setup.random_data > 0 {
        out.push(random_configurations(label, jac, setup, seed));
    }
    out
}

pub fn t_records(label: &str, jac: &Jacobian, w2: &CurvePoint, t: &CurvePoint, k: Option<&hyperchow_core::PreCycle>) -> Vec<Record> {
    let mut out = Vec::new();
    let at = format!("{label}, t = {t}");
    if t == jac.basepoint() {
        let name = format!("{at}: Z_t");
        out.push(match hyperelliptic_configuration(jac, w2, t).and_then(|(z, _)| z.consolidate(jac)) {
            Ok(z) => Record::exact(name, anchor::DEGENERATE, z.is_empty(), "zero precycle"),
            Err(e) => Record::failed(name, anchor::DEGENERATE, e),
        });
        return out;
    }
    if let Some(k) = k {
        let name = format!("{at}: K_t");
        out.push(match translate_cycle(jac, k, t).and_then(|kt| kt.is_cycle(jac)) {
            Ok(ok) => Record::exact(name, anchor::CYCLE, ok, "exact"),
            Err(e) => Record::failed(name, anchor::CYCLE, e),
        });
    }
    let name = format!("{at}: Z_t");
    out.push(match hyperelliptic_configuration(jac, w2, t) {
        Ok((z, report)) => match z.is_cycle(jac) {
            Ok(ok) => Record::exact(name, anchor::CYCLE, ok && report.is_cycle, format!("{} intersection points", report.points_total)),
            Err(e) => Record::failed(name, anchor::CYCLE, e),
        },
        Err(e) => Record::failed(name, anchor::CYCLE, e),
    });
    if !t.is_weierstrass() {
        let name = format!("{at}: specialization");
        out.push(match specialize(jac, w2, t) {
            Ok(s) => {
                let mapped = s.curve_map.iter().all(|(_, hit)| hit.is_some());
                let map: Vec<String> = s
                    .curve_map
                    .iter()
                    .map(|(a, b)| format!("{a} -> {}", b.as_deref().unwrap_or("?")))
                    .collect();
                Record::exact(name, anchor::SPECIALIZATION, s.equal && mapped, map.join(", "))
            }
            Err(e) => Record::failed(name, anchor::SPECIALIZATION, e),
        });
    }
    if jac.genus() == 2 {
        let name = format!("{at}: genus-2 decomposition");
        out.push(match genus2_decomposition_check(jac, w2, t) {
            Ok(r) => {
                let matches = r.restrictions.iter().filter(|c| c.matches).count();
                let constants = r.residual.iter().all(|(_, g)| g.is_constant());
                let consts: Vec<String> = r
                    .restrictions
                    .iter()
                    .filter_map(|c| c.constant.as_ref().map(|k| format!("{} on {}: {}", c.function, c.curve, format_rational(k))))
                    .collect();
                let ok = matches == r.restrictions.len() && constants && r.decomposable;
                Record::exact(name, anchor::GENUS2, ok, format!("{matches}/{} restrictions match; {}", r.restrictions.len(), consts.join(", ")))
            }
            Err(e) => Record::failed(name, anchor::GENUS2, e),
        });
    }
    out
}

fn datum_record(label: &str, jac: &Jacobian, d: &[CurvePoint; 4]) -> Record {
    let name = format!("{label}: 4-configuration ({})", datum_text(d));
    match four_configuration(jac, &d[0], &d[1], &d[2], &d[3]) {
        Ok((z, report)) => {
            let cyc = z.is_cycle(jac).unwrap_or(false);
            let generic = has_shape(&report, 8, 2);
            let mut r = Record::exact(name, anchor::INCIDENCE, cyc, shape_text(&report));
            if !cyc {
                r = r.note("boundary is nonzero");
            } else if jac.genus() == 2 {
                // translates of the curve are theta divisors and meet pairwise in 2 points
                r = r.note("genus 2: every pair of curves meets, so the genus-3 pattern does not apply");
            } else if !generic {
                r.status = Status::Indeterminate;
                r = r.note("not the generic pattern of 8 points on 2 curves each");
            }
            r
        }
        Err(e) => Record::failed(name, anchor::INCIDENCE, e),
    }
}

fn random_configurations(label: &str, jac: &Jacobian, setup: &CurveSetup, seed: u64) -> Record {
    let name = format!("{label}: {} random 4-configurations", setup.random_data);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let branch = match jac.curve().rational_branch_points() {
        Ok(b) => b,
        Err(e) => return Record::failed(name, anchor::CYCLE, e),
    };
    let pool = point_pool(jac.curve(), &setup.ts);
    let mut good = 0;
    for _ in 0..setup.random_data {
        let Some(d) = random_datum(&mut rng, &branch, &pool) else {
            return Record::new(name, anchor::CYCLE, Status::Indeterminate).detail("too few rational points for a datum");
        };
        match four_configuration(jac, &d[0], &d[1], &d[2], &d[3]).and_then(|(z, _)| z.is_cycle(jac)) {
            Ok(true) => good += 1,
            Ok(false) => return Record::exact(name, anchor::CYCLE, false, format!("datum {}", datum_text(&d))),
            Err(e) => return Record::failed(name, anchor::CYCLE, format!("datum {}: {e}", datum_text(&d))),
        }
    }
    Record::exact(name, anchor::CYCLE, true, format!("{good}/{} cycles", setup.random_data))
}

/// Cycle suites on the built-in genus-2 and genus-3 curves.
pub fn standard_cycle_suite(seed: u64, random_data: usize) -> Vec<Record> {
    let mut out = Vec::new();
    for (i, (label, setup)) in standard_setups(random_data).iter().enumerate() {
        out.extend(cycle_suite(label, setup, seed ^ i as u64));
    }
    out
}

// ---------------------------------------------------------------------------
// algebraic properties

struct AlgebraSetup {
    jac: Jacobian,
    pts: Vec<CurvePoint>,
}

fn random_poly(rng: &mut ChaCha8Rng, max_deg: usize, bound: i64) -> Polynomial {
    let d = rng.gen_range(0..=max_deg);
    Polynomial::new((0..=d).map(|_| int(rng.gen_range(-bound..=bound))).collect())
}

/// A random nonzero `(a + b y) / d` of small height.
pub fn random_function(rng: &mut ChaCha8Rng, g: usize) -> FunctionFieldElement {
    loop {
        let a = random_poly(rng, g + 2, 4);
        let b = if rng.gen_bool(0.6) { random_poly(rng, 1, 3) } else { Polynomial::zero() };
        let mut d = random_poly(rng, 2, 3);
        if d.is_zero() {
            d = Polynomial::one();
        }
        if let Ok(f) = FunctionFieldElement::new(a, b, d) {
            if !f.is_zero() {
                return f;
            }
        }
    }
}

/// A random curve of genus `g` twisted to have rational points over two abscissae.
pub fn random_curve(rng: &mut ChaCha8Rng, g: usize) -> (HyperellipticCurve, Vec<CurvePoint>) {
    loop {
        let n = 2 * g + 1 + rng.gen_range(0..2);
        let mut pool: Vec<i64> = (-9..=9).collect();
        pool.shuffle(rng);
        let roots: Vec<Rational> = pool[..n].iter().map(|r| int(*r)).collect();
        let h0 = Polynomial::from_roots(&roots);
        let x0 = int(pool[n]);
        let h = h0.scale(&h0.eval(&x0));
        let Some(x1) = pool[n + 1..].iter().map(|x| int(*x)).find(|x| rational_sqrt(&h.eval(x)).is_some()) else {
            continue;
        };
        let Ok(curve) = HyperellipticCurve::new(h) else { continue };
        let pts: Vec<CurvePoint> = [x0, x1].iter().filter_map(|x| curve.points_over(x).into_iter().next()).collect();
        return (curve, pts);
    }
}

fn random_divisor(rng: &mut ChaCha8Rng, s: &AlgebraSetup) -> Divisor {
    let mut terms = Vec::new();
    for p in &s.pts {
        terms.push((p.clone(), rng.gen_range(-1..=1)));
        terms.push((p.involution(), rng.gen_range(-1..=1)));
    }
    for b in s.jac.curve().rational_branch_points().unwrap_or_default() {
        terms.push((b, rng.gen_range(-2..=2)));
    }
    Divisor::from_points(terms)
}

fn algebra_setups(rng: &mut ChaCha8Rng) -> Vec<AlgebraSetup> {
    let mut out = Vec::new();
    for g in 1..=3 {
        let (c, pts) = random_curve(rng, g);
        let Some(b) = c.rational_branch_points().ok().and_then(|b| b.first().cloned()) else { continue };
        if let Ok(jac) = Jacobian::new(&c, &b) {
            out.push(AlgebraSetup { jac, pts });
        }
    }
    for (_, s) in standard_setups(0) {
        let pts = s.ts.iter().filter(|p| !p.is_weierstrass()).take(3).cloned().collect();
        out.push(AlgebraSetup { jac: s.jac, pts });
    }
    out
}

fn tally(name: &str, anchor: &str, ok: usize, total: usize, first_failure: Option<String>) -> Record {
    let mut r = Record::exact(name, anchor, ok == total && total > 0, format!("{ok}/{total} cases"));
    if let Some(f) = first_failure {
        r = r.note(f);
    }
    r
}

/// Randomized algebraic identities over several curves, fixed by `seed`.
pub fn algebra_suite(seed: u64, cases: usize) -> Vec<Record> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let setups = algebra_setups(&mut rng);
    let mut records = Vec::new();

    let (mut ok, mut total, mut bad) = (0, 0, None);
    for s in &setups {
        let c = s.jac.curve();
        for _ in 0..cases {
            let f = random_function(&mut rng, c.genus());
            total += 1;
            let good = c.divisor_of(&f).is_ok_and(|d| {
                d.degree() == 0
                    && s.jac
                        .is_principal(&d)
                        .is_ok_and(|p| p.principal && p.witness.is_some_and(|w| c.divisor_of(&w).ok() == Some(d.clone())))
            });
            if good {
                ok += 1;
            } else if bad.is_none() {
                bad = Some(format!("f = {f} on {c}"));
            }
        }
    }
    records.push(tally("divisors of random functions", anchor::DEGREE, ok, total, bad));

    let (mut ok, mut total, mut bad) = (0, 0, None);
    for s in &setups {
        let c = s.jac.curve();
        for _ in 0..cases {
            let f = random_function(&mut rng, c.genus());
            let g = random_function(&mut rng, c.genus());
            total += 1;
            if c.tame_symbol_norm_product(&f, &g).is_ok_and(|v| v == int(1)) {
                ok += 1;
            } else if bad.is_none() {
                bad = Some(format!("f = {f}, g = {g} on {c}"));
            }
        }
    }
    records.push(tally("product of tame symbols", anchor::RECIPROCITY, ok, total, bad));

    let (mut ok, mut total, mut bad) = (0, 0, None);
    for s in &setups {
        let jac = &s.jac;
        for _ in 0..cases {
            let class = |rng: &mut ChaCha8Rng| {
                let d = random_divisor(rng, s);
                jac.class_of(&d, d.degree())
            };
            let (Ok(a), Ok(b), Ok(c3)) = (class(&mut rng), class(&mut rng), class(&mut rng)) else {
                total += 1;
                bad.get_or_insert_with(|| format!("class_of failed on {}", jac.curve()));
                continue;
            };
            total += 1;
            let zero = PicPoint::zero(0);
            let good = jac.add(&jac.add(&a, &b), &c3) == jac.add(&a, &jac.add(&b, &c3))
                && jac.add(&a, &b) == jac.add(&b, &a)
                && jac.add(&a, &jac.neg(&a)) == zero
                && jac.add(&a, &zero) == a
                && jac.sub(&jac.add(&a, &b), &b) == a
                && jac.mul(&a, 3) == jac.add(&jac.add(&a, &a), &a)
                && a.cls.weight() <= jac.genus();
            if good {
                ok += 1;
            } else if bad.is_none() {
                bad = Some(format!("a = {a}, b = {b}, c = {c3} on {}", jac.curve()));
            }
        }
    }
    records.push(tally("Cantor arithmetic", anchor::GROUP, ok, total, bad));

    let (mut ok, mut total, mut bad) = (0, 0, None);
    for s in setups.iter().filter(|s| s.jac.curve().genus() >= 2) {
        let jac = &s.jac;
        let Ok(bs) = jac.curve().rational_branch_points() else { continue };
        if bs.len() != 2 * jac.genus() + 2 {
            continue;
        }
        let mut seen = std::collections::BTreeSet::new();
        for m in (0u32..1 << bs.len()).filter(|m| m.count_ones() % 2 == 0) {
            let sub: Vec<CurvePoint> = (0..bs.len()).filter(|i| m >> i & 1 == 1).map(|i| bs[i].clone()).collect();
            let comp: Vec<CurvePoint> = bs.iter().filter(|b| !sub.contains(b)).cloned().collect();
            total += 1;
            let good = match (
                jac.two_torsion_from_branch_partition(&sub),
                jac.two_torsion_from_branch_partition(&comp),
            ) {
                (Ok(e), Ok(f)) => {
                    let g = jac.add(&e, &e).cls.is_identity() && e == f;
                    seen.insert(e);
                    g
                }
                _ => false,
            };
            if good {
                ok += 1;
            } else if bad.is_none() {
                bad = Some(format!("subset {} on {}", datum_text(&sub), jac.curve()));
            }
        }
        // the partitions exhaust J[2]
        total += 1;
        if seen.len() == 1 << (2 * jac.genus()) {
            ok += 1;
        } else if bad.is_none() {
            bad = Some(format!("{} classes from partitions on {}", seen.len(), jac.curve()));
        }
    }
    records.push(tally("branch partitions", anchor::TORSION, ok, total, bad));
    records
}

// ---------------------------------------------------------------------------
// numerics

fn lam(l: Complex64) -> String {
    format_complex(l)
}

pub fn i_lambda_records(lambdas: &[Complex64], opts: &QuadOptions) -> Vec<Record> {
    let mut out = Vec::new();
    for &l in lambdas {
        let name = format!("I({})", lam(l));
        out.extend(timed(|| {
            vec![match i_of_lambda(l, opts) {
                Ok(r) => {
                    let status = if !r.value.converged || !r.mass.converged {
                        Status::Indeterminate
                    } else {
                        Status::from_bool(r.mass_residual.abs() <= MASS_BOUND)
                    };
                    Record::new(name, anchor::I_LAMBDA, status)
                        .value(r.value.value, r.value.error_estimate)
                        .detail(format!("mass residual {:.1e}, {} cells", r.mass_residual, r.value.cells_used))
                }
                Err(e) => Record::failed(name, anchor::I_LAMBDA, e),
            }]
        }));
    }
    out
}

pub fn functional_equation_records(lambdas: &[Complex64], opts: &QuadOptions) -> Vec<Record> {
    let mut out = Vec::new();
    for &l in lambdas {
        let name = format!("functional equation at {}", lam(l));
        out.extend(timed(|| {
            vec![match functional_equation(l, opts) {
                Ok(r) => {
                    let conv = r.i_lambda.value.converged && r.i_inverse.value.converged;
                    Record::bounded(name, anchor::FUNCTIONAL, r.residual, r.error_estimate, FUNCTIONAL_BOUND, conv).note(
                        format!(
                            "I = {:.12}, I(1/lambda) = {:.12}, log|lambda| = {:.12}",
                            r.i_lambda.value.value, r.i_inverse.value.value, r.log_abs_lambda
                        ),
                    )
                }
                Err(e) => Record::failed(name, anchor::FUNCTIONAL, e),
            }]
        }));
    }
    out
}

pub fn covolume_records(lambdas: &[Complex64], opts: &QuadOptions) -> Vec<Record> {
    let mut out = Vec::new();
    for &l in lambdas {
        let name = format!("covolume at {}", lam(l));
        out.extend(timed(|| {
            let r = elliptic_periods(l).map(|p| (p.covolume, covolume_by_quadrature(l, opts)));
            vec![match r {
                Ok((agm, Ok(q))) => {
                    let rel = (q.value - agm) / agm;
                    Record::bounded(name, anchor::COVOLUME, rel, q.error_estimate / agm, COVOLUME_BOUND, q.converged)
                        .note(format!("AGM {agm:.15}, quadrature {:.15}", q.value))
                }
                Ok((_, Err(e))) | Err(e) => Record::failed(name, anchor::COVOLUME, e),
            }]
        }));
    }
    out
}

pub fn monte_carlo_records(lambdas: &[Complex64], samples: usize, seed: u64, opts: &QuadOptions) -> Vec<Record> {
    let mut out = Vec::new();
    for (k, &l) in lambdas.iter().enumerate() {
        let name = format!("Monte Carlo at {}", lam(l));
        out.extend(timed(|| {
            let r = monte_carlo_i(l, samples, seed.wrapping_add(k as u64)).and_then(|mc| Ok((mc, i_of_lambda(l, opts)?)));
            vec![match r {
                Ok((mc, q)) => {
                    let diff = mc.mean - q.value.value;
                    let sigma = mc.standard_error.hypot(q.value.error_estimate);
                    let status = if !q.value.converged {
                        Status::Indeterminate
                    } else {
                        Status::from_bool(diff.abs() <= MC_SIGMAS * sigma)
                    };
                    Record::new(name, anchor::MONTE_CARLO, status).value(diff, sigma).detail(format!(
                        "mean {:.6} ± {:.1e} over {} samples (seed {}), quadrature {:.10}; {:.2} standard errors",
                        mc.mean,
                        mc.standard_error,
                        mc.samples,
                        mc.seed,
                        q.value.value,
                        diff.abs() / sigma
                    ))
                }
                Err(e) => Record::failed(name, anchor::MONTE_CARLO, e),
            }]
        }));
    }
    out
}

/// Splitting identity, equal masses and the non-vanishing verdict for one pair,
/// followed by the pairing of K against tau on the same curve.
pub fn bielliptic_records(l1: Complex64, l2: Complex64, opts: &QuadOptions) -> Vec<Record> {
    let tag = format!("({}, {})", lam(l1), lam(l2));
    timed(|| {
        let report = match bielliptic_identity_check(l1, l2, opts) {
            Ok(r) => r,
            Err(e) => return vec![Record::failed(format!("bielliptic {tag}"), anchor::BIELLIPTIC_MODEL, e)],
        };
        let ck = &report.model.checks;
        let mut out = vec![Record::exact(
            format!("bielliptic {tag}: model"),
            anchor::BIELLIPTIC_MODEL,
            ck.diagram_residual <= 1e-9 && ck.c_spread <= 1e-9 && ck.degree_g == 4,
            format!(
                "diagram residual {:.1e}, f fbar / g spread {:.1e}, deg g = {}",
                ck.diagram_residual, ck.c_spread, ck.degree_g
            ),
        )];
        let conv = report.i_f.iter().chain(&report.i_fbar).chain(&report.i_g).all(|r| r.converged);
        out.push(
            Record::bounded(
                format!("bielliptic {tag}: splitting"),
                anchor::SPLITTING,
                report.splitting_residual,
                report.splitting_error,
                SPLITTING_BOUND,
                conv,
            )
            .note(format!(
                "measured I(g_i)/I(lambda_i) = {:.9}, {:.9}",
                report.degree_ratios[0], report.degree_ratios[1]
            )),
        );
        out.push(Record::bounded(
            format!("bielliptic {tag}: masses"),
            anchor::MASSES,
            report.mass_difference,
            report.mass_difference_error,
            MASS_BOUND,
            report.masses.iter().all(|m| m.converged),
        ));
        let t = &report.i_f_tau;
        let status = match report.verdict {
            Verdict::Nonzero => Status::Pass,
            Verdict::Indeterminate => Status::Indeterminate,
        };
        out.push(
            Record::new(format!("bielliptic {tag}: I(f, tau_C)"), anchor::NONZERO, status)
                .value(t.value, t.error_estimate)
                .detail("numerical verdict |value| > 5 error, not a proof"),
        );

        let basis = report.model.pullback_basis();
        let f = LogFactor::weierstrass(Some(c(0.0, 0.0)), None);
        let pairing = gram_normalize_basis(&report.model.curve, &basis, opts)
            .and_then(|g| Ok((regulator_pairing_k(&report.model.curve, &f, &g, opts)?, g)));
        match pairing {
            Ok((p, g)) => {
                let expect = 2.0 * t.value;
                let err = p.error_estimate + 2.0 * t.error_estimate;
                let bound = (10.0 * err).max(opts.tol);
                out.push(
                    Record::bounded(format!("bielliptic {tag}: pairing with K"), anchor::PAIRING, p.value - expect, err, bound, p.converged && t.converged)
                        .note(format!("<R(K), tau> = {:.12} against 2 I(f, tau_C)", p.value)),
                );
                out.push(swap_record(&format!("bielliptic {tag}"), &report.model.curve, &f, &g, p.value, opts));
            }
            Err(e) => out.push(Record::failed(format!("bielliptic {tag}: pairing with K"), anchor::PAIRING, e)),
        }
        out
    })
}

fn swap_record(
    tag: &str,
    model: &ComplexCurveModel,
    f: &LogFactor,
    g: &hyperchow_numerics::GramData,
    value: f64,
    opts: &QuadOptions,
) -> Record {
    let name = format!("{tag}: swapped forms");
    match regulator_pairing_k(model, f, &g.reordered(&[1, 0]), opts) {
        // same cells and nodes, so only rounding separates the two
        Ok(s) => Record::bounded(name, anchor::SWAP, s.value + value, 0.0, 1e-12 * value.abs().max(1.0), s.converged),
        Err(e) => Record::failed(name, anchor::SWAP, e),
    }
}

/// Numerical model of an exact curve file.
pub fn complex_model(file: &CurveFile) -> Result<ComplexCurveModel, UsageError> {
    let curve = file.curve()?;
    let err = |e: hyperchow_numerics::NumericsError| UsageError(e.to_string());
    match (&file.scale, &file.roots) {
        (Some(_), Some(_)) => {
            let lc = to_f64(&curve.h().lc());
            let mut roots = Vec::new();
            for r in file.roots.iter().flatten() {
                roots.push(c(to_f64(&crate::config::rational(r)?), 0.0));
            }
            ComplexCurveModel::new(c(lc, 0.0), roots).map_err(err)
        }
        _ => {
            let coeffs: Vec<Complex64> = curve.h().coeffs().iter().map(|q| c(to_f64(q), 0.0)).collect();
            ComplexCurveModel::from_coefficients(&coeffs).map_err(err)
        }
    }
}

/// `<R(K), tau>` on a curve file with `f = (x - x(w1)) / (x - x(w2))`.
pub fn pairing_file_records(file: &CurveFile, opts: &QuadOptions) -> Result<Vec<Record>, UsageError> {
    let setup = file.setup()?;
    let model = complex_model(file)?;
    if model.genus() < 2 {
        return Err(UsageError(format!("pairing needs genus at least 2, the curve has genus {}", model.genus())));
    }
    let w2 = setup.w2.ok_or_else(|| UsageError("w2 is required".into()))?;
    let xs = |p: &CurvePoint| p.x().map(|x| c(to_f64(x), 0.0));
    if !setup.curve.is_odd_degree() && (xs(setup.jac.basepoint()).is_none() || xs(&w2).is_none()) {
        return Err(UsageError("even degree model: w1 and w2 must be finite".into()));
    }
    let f = LogFactor::weierstrass(xs(setup.jac.basepoint()), xs(&w2));
    Ok(timed(|| {
        let name = "pairing with K".to_string();
        match gram_normalize(&model, opts).and_then(|g| Ok((regulator_pairing_k(&model, &f, &g, opts)?, g))) {
            Ok((p, g)) => {
                let status = if p.converged { Status::Pass } else { Status::Indeterminate };
                vec![
                    Record::new(name, anchor::PAIRING, status)
                        .value(p.value, p.error_estimate)
                        .detail(format!("{} cells; forms orthonormalized in monomial order", p.cells_used)),
                    swap_record("pairing", &model, &f, &g, p.value, opts),
                ]
            }
            Err(e) => vec![Record::failed(name, anchor::PAIRING, e)],
        }
    }))
}

pub fn cover_records(opts: &QuadOptions) -> Vec<Record> {
    timed(|| {
        let name = "genus-3 cover over (2; 3, -2)".to_string();
        match build_genus3_cover(c(2.0, 0.0), c(3.0, 0.0), c(-2.0, 0.0)) {
            Ok(cover) => {
                let k = &cover.checks;
                let (up, down) = cover.pullback_mass(opts);
                let shape = k.unramified() && k.branch_over_legendre && (k.genus_c, k.genus_g) == (3, 2);
                let diff = up.value - 2.0 * down.value;
                let err = up.error_estimate + 2.0 * down.error_estimate;
                let mut r = Record::bounded(name, anchor::COVER, diff, err, MASS_BOUND, up.converged && down.converged).note(format!(
                    "genera {} -> {}, ramification {}, diagram residual {:.1e}; mass on C minus twice mass on G",
                    k.genus_c, k.genus_g, k.ramification_degree, k.diagram_residual
                ));
                if !shape || k.diagram_residual > 1e-9 {
                    r.status = Status::Fail;
                }
                vec![r]
            }
            Err(e) => vec![Record::failed(name, anchor::COVER, e)],
        }
    })
}

pub fn real_lambdas(v: &[f64]) -> Vec<Complex64> {
    v.iter().map(|&x| c(x, 0.0)).collect()
}

pub fn complex_lambdas(v: &[(f64, f64)]) -> Vec<Complex64> {
    v.iter().map(|&(a, b)| c(a, b)).collect()
}

pub struct FullReportOptions {
    pub quad: QuadOptions,
    pub seed: u64,
    pub samples: usize,
    pub random_data: usize,
    pub cases: usize,
}

/// Every suite in a fixed order.
pub fn full_report(o: &FullReportOptions) -> Vec<Record> {
    let mut out = timed(|| standard_cycle_suite(o.seed, o.random_data));
    out.extend(timed(|| algebra_suite(o.seed, o.cases)));
    out.extend(functional_equation_records(&real_lambdas(&FUNCTIONAL_LAMBDAS), &o.quad));
    out.extend(covolume_records(&complex_lambdas(&COVOLUME_LAMBDAS), &o.quad));
    out.extend(monte_carlo_records(&complex_lambdas(&MONTE_CARLO_LAMBDAS), o.samples, o.seed, &o.quad));
    for (a, b) in BIELLIPTIC_PAIRS {
        out.extend(bielliptic_records(c(a, 0.0), c(b, 0.0), &o.quad));
    }
    out.extend(cover_records(&o.quad));
    out
}
