//! The concrete precycles: `K`, its translates `K_t`, the hyperelliptic
//! configuration `Z_t = K - K_t`, the 4-configuration in `Pic^3`, and the
//! genus-2 tame-symbol check.

use serde::{Deserialize, Serialize};

use crate::curve::{CurvePoint, Place};
use crate::cycles::{intersect, AffineForm, EmbeddedCurve, Intersection, PreCycle, ZeroCycleOnJ};
use crate::divisor::Divisor;
use crate::error::CycleError;
use crate::function::FunctionFieldElement;
use crate::jacobian::{Jacobian, PicPoint};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportCurve {
    pub label: String,
    pub form: AffineForm,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairIntersection {
    pub first: String,
    pub second: String,
    pub intersection: Intersection,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Incidence {
    pub point: PicPoint,
    pub curves: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigurationReport {
    pub boundary: ZeroCycleOnJ,
    pub is_cycle: bool,
    pub curves: Vec<ReportCurve>,
    /// Every unordered pair of distinct curves, in label order.
    pub intersection_table: Vec<PairIntersection>,
    /// Each rational intersection point with the curves passing through it.
    pub incidences: Vec<Incidence>,
    /// Distinct intersection points, including those over quadratic fields.
    pub points_total: usize,
    pub notes: Vec<String>,
}

impl ConfigurationReport {
    /// Intersection counts over the pairs, in table order.
    pub fn pair_counts(&self) -> Vec<usize> {
        self.intersection_table.iter().map(|p| p.intersection.count()).collect()
    }

    /// Points lying on all the named curves.
    pub fn common_points(&self, labels: &[&str]) -> Vec<PicPoint> {
        self.incidences
            .iter()
            .filter(|i| labels.iter().all(|l| i.curves.iter().any(|c| c == l)))
            .map(|i| i.point.clone())
            .collect()
    }
}

/// Builds the report for a precycle whose curves are labelled in order.
pub fn configuration_report(
    jac: &Jacobian,
    cycle: &PreCycle,
    curves: &[(String, EmbeddedCurve)],
) -> Result<ConfigurationReport, CycleError> {
    let boundary = cycle.boundary(jac)?;
    let mut forms: Vec<ReportCurve> = Vec::new();
    for (label, c) in curves {
        forms.push(ReportCurve {
            label: label.clone(),
            form: c.affine_form(jac)?,
        });
    }
    let mut table = Vec::new();
    let mut points: Vec<PicPoint> = Vec::new();
    let mut irrational = 0;
    if jac.genus() >= 2 {
        for i in 0..forms.len() {
            for j in i + 1..forms.len() {
                let x = intersect(jac, &forms[i].form, &forms[j].form)?;
                for p in &x.points {
                    if !points.contains(&p.point) {
                        points.push(p.point.clone());
                    }
                }
                irrational += x.irrational_points;
                table.push(PairIntersection {
                    first: forms[i].label.clone(),
                    second: forms[j].label.clone(),
                    intersection: x,
                });
            }
        }
    }
    let mut incidences = Vec::new();
    for p in &points {
        let mut on = Vec::new();
        for c in &forms {
            if c.form.preimage(jac, p)?.is_some() {
                on.push(c.label.clone());
            }
        }
        incidences.push(Incidence {
            point: p.clone(),
            curves: on,
        });
    }
    let mut notes = Vec::new();
    if irrational > 0 {
        notes.push(format!(
            "{irrational} intersection points are defined over quadratic fields; listed by count only"
        ));
    }
    if table.iter().any(|p| p.intersection.coincident) {
        notes.push("some curves coincide as subsets of Pic".to_string());
    }
    Ok(ConfigurationReport {
        is_cycle: boundary.is_zero(),
        boundary,
        curves: forms,
        intersection_table: table,
        incidences,
        points_total: points.len() + irrational,
        notes,
    })
}

fn weierstrass_function(jac: &Jacobian, w2: &CurvePoint) -> Result<FunctionFieldElement, CycleError> {
    let w1 = jac.basepoint();
    if !w2.is_weierstrass() || !jac.curve().contains(w2) {
        return Err(CycleError::InvalidDatum(format!("{w2} is not a branch point")));
    }
    if w2 == w1 {
        return Err(CycleError::InvalidDatum("w1 and w2 coincide".into()));
    }
    let d = Divisor::from_points([(w1.clone(), 2), (w2.clone(), -2)]);
    jac.is_principal(&d)?
        .witness
        .ok_or_else(|| CycleError::InvalidDatum(format!("2({w1}) - 2({w2}) is not principal")))
}

/// Labelled curves of `K`: `W1`, `W2`.
pub fn basic_curves(jac: &Jacobian, w2: &CurvePoint) -> Result<Vec<(String, EmbeddedCurve)>, CycleError> {
    Ok(vec![
        ("W1".to_string(), EmbeddedCurve::translate(PicPoint::zero(1))),
        ("W2".to_string(), EmbeddedCurve::translate(jac.point_class(w2)?)),
    ])
}

/// `K = W1 ⊗ f + W2 ⊗ f` with `div f = 2 w1 - 2 w2`.
pub fn basic_cycle(jac: &Jacobian, w2: &CurvePoint) -> Result<PreCycle, CycleError> {
    let f = weierstrass_function(jac, w2)?;
    let mut k = PreCycle::new(1);
    for (_, c) in basic_curves(jac, w2)? {
        k.push(c, f.clone(), 1);
    }
    Ok(k)
}

fn translation_by(jac: &Jacobian, t: &CurvePoint) -> Result<PicPoint, CycleError> {
    Ok(PicPoint::new(0, jac.point_class(t)?.cls))
}

/// Moves every curve of a `Pic^1` precycle by the class of `t - w1`.
pub fn translate_cycle(jac: &Jacobian, z: &PreCycle, t: &CurvePoint) -> Result<PreCycle, CycleError> {
    if z.ambient != 1 {
        return Err(CycleError::AmbientMismatch(1, z.ambient));
    }
    Ok(z.translate(jac, &translation_by(jac, t)?))
}

/// `Z_t = K - K_t` and its report, with curves `W1, W2, C_t, C_t+eps`.
pub fn hyperelliptic_configuration(
    jac: &Jacobian,
    w2: &CurvePoint,
    t: &CurvePoint,
) -> Result<(PreCycle, ConfigurationReport), CycleError> {
    let k = basic_cycle(jac, w2)?;
    let kt = translate_cycle(jac, &k, t)?;
    let z = k.sub(&kt)?;
    let shift = translation_by(jac, t)?;
    let mut curves = basic_curves(jac, w2)?;
    curves.push(("C_t".to_string(), curves[0].1.translated(jac, &shift)));
    curves.push(("C_t+eps".to_string(), curves[1].1.translated(jac, &shift)));
    let mut report = configuration_report(jac, &z, &curves)?;
    let common = report.common_points(&["C_t", "W1", "W2"]);
    let shown: Vec<String> = common.iter().map(|p| p.to_string()).collect();
    report
        .notes
        .push(format!("C_t ∩ W1 ∩ W2 = {{{}}}", shown.join(", ")));
    Ok((z, report))
}

/// Labelled curves of the 4-configuration: `C(a',a'')`, `G`, `C(p',p'')`, `G_eps`.
fn four_curves(
    jac: &Jacobian,
    a: (&CurvePoint, &CurvePoint),
    p: (&CurvePoint, &CurvePoint),
) -> Result<(Vec<(String, EmbeddedCurve)>, PicPoint), CycleError> {
    let eps = jac.class_of(
        &Divisor::from_points([(a.0.clone(), 1), (a.1.clone(), 1), (p.0.clone(), -1), (p.1.clone(), -1)]),
        0,
    )?;
    let g = EmbeddedCurve::flip(a.0.clone(), a.1.clone());
    Ok((
        vec![
            ("C(a',a'')".to_string(), EmbeddedCurve::sum(a.0.clone(), a.1.clone())),
            ("G".to_string(), g.clone()),
            ("C(p',p'')".to_string(), EmbeddedCurve::sum(p.0.clone(), p.1.clone())),
            ("G_eps".to_string(), g.translated(jac, &eps)),
        ],
        eps,
    ))
}

/// `Z = -C(a',a'') ⊗ f + G ⊗ f - C(p',p'') ⊗ f + G_eps ⊗ f` with
/// `div f = 2((a' + a'') - (p' + p''))`.
pub fn four_configuration(
    jac: &Jacobian,
    a1: &CurvePoint,
    a2: &CurvePoint,
    p1: &CurvePoint,
    p2: &CurvePoint,
) -> Result<(PreCycle, ConfigurationReport), CycleError> {
    for q in [a1, a2, p1, p2] {
        jac.curve().check_point(q)?;
    }
    let (curves, eps) = four_curves(jac, (a1, a2), (p1, p2))?;
    if !jac.add(&eps, &eps).cls.is_identity() {
        return Err(CycleError::NotFourConfiguration(format!(
            "class of ({a1}) + ({a2}) - ({p1}) - ({p2}) is not 2-torsion"
        )));
    }
    let d = Divisor::from_points([(a1.clone(), 2), (a2.clone(), 2), (p1.clone(), -2), (p2.clone(), -2)]);
    let f = jac
        .is_principal(&d)?
        .witness
        .ok_or_else(|| CycleError::NotFourConfiguration("no witness".into()))?;
    let mut z = PreCycle::new(3);
    for (i, (_, c)) in curves.iter().enumerate() {
        let sign = if i % 2 == 0 { -1 } else { 1 };
        z.push(c.clone(), f.clone(), sign);
    }
    let mut report = configuration_report(jac, &z, &curves)?;
    report.notes.push(
        "hyperelliptic model: C(a',a'') ∩ C(p',p'') and G ∩ G_eps are computed, not assumed empty".to_string(),
    );
    Ok((z, report))
}

/// Result of mapping the specialized 4-configuration to `Pic^1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Specialization {
    pub equal: bool,
    /// Each curve of `Z(t)` with the curve of `Z_t` it lands on, if any.
    pub curve_map: Vec<(String, Option<String>)>,
}

/// Maps `Z(t)`, built from the datum `(t, w1, t, w2)`, through `p -> -p + 2(t + w1)`
/// and compares it with `Z_t` term by term.
pub fn specialize(jac: &Jacobian, w2: &CurvePoint, t: &CurvePoint) -> Result<Specialization, CycleError> {
    let w1 = jac.basepoint().clone();
    let (z3, _) = four_configuration(jac, t, &w1, t, w2)?;
    let (curves3, _) = four_curves(jac, (t, &w1), (t, w2))?;
    let map_curve = |c: &EmbeddedCurve| -> Result<EmbeddedCurve, CycleError> {
        let form = c.affine_form(jac)?;
        Ok(EmbeddedCurve::affine(-form.sign, jac.pic3_to_pic1(&form.offset, t)?))
    };
    let mut z1 = PreCycle::new(1);
    for term in &z3.terms {
        z1.push(map_curve(&term.curve)?, term.function.clone(), term.multiplicity);
    }
    let (zt, report) = hyperelliptic_configuration(jac, w2, t)?;
    let equal = z1.consolidate(jac)? == zt.consolidate(jac)?;
    let mut curve_map = Vec::new();
    for (label, c) in &curves3 {
        let offset = map_curve(c)?.affine_form(jac)?.offset;
        let hit = report
            .curves
            .iter()
            .find(|r| r.form.offset == offset)
            .map(|r| r.label.clone());
        curve_map.push((label.clone(), hit));
    }
    Ok(Specialization { equal, curve_map })
}

pub fn specialize_and_compare(jac: &Jacobian, w2: &CurvePoint, t: &CurvePoint) -> Result<bool, CycleError> {
    Ok(specialize(jac, w2, t)?.equal)
}

/// Restriction of a function on `J` to one curve, known through its divisor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictionCheck {
    pub curve: String,
    /// `theta_t` or `theta`.
    pub function: String,
    /// Sum of `ord_Y * (Y . X)` in the curve's own coordinates.
    pub divisor: Divisor,
    pub expected_power_of_f: i64,
    pub matches: bool,
    /// The restriction divided by `f^power`; a constant when `matches`.
    #[serde(with = "crate::rational::serde_opt", default)]
    pub constant: Option<Rational>,
    pub restriction: Option<FunctionFieldElement>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolValuation {
    pub curve: String,
    pub theta_t: i64,
    pub theta: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Genus2Report {
    pub configuration: ConfigurationReport,
    pub restrictions: Vec<RestrictionCheck>,
    pub valuations: Vec<SymbolValuation>,
    pub symbol_cycle: PreCycle,
    /// `symbol_cycle - 2 Z_t` collapsed per curve.
    pub residual: Vec<(PicPoint, FunctionFieldElement)>,
    pub decomposable: bool,
}

/// Checks, with exact arithmetic, the curve-level identities behind the
/// decomposition of `Z_t` in genus 2.
///
/// `div(theta) = 2 W1 - 2 W2` and `div(theta_t) = 2 C_t - 2 C_t+eps` are given; the
/// restriction of each to the other curves is determined by intersections,
/// compared with `div f^{±1}`, and the tame symbol `{theta_t, theta}` is assembled
/// from the restrictions.
pub fn genus2_decomposition_check(
    jac: &Jacobian,
    w2: &CurvePoint,
    t: &CurvePoint,
) -> Result<Genus2Report, CycleError> {
    if jac.genus() != 2 {
        return Err(CycleError::Genus {
            expected: 2,
            actual: jac.genus(),
        });
    }
    let curve = jac.curve();
    let f = weierstrass_function(jac, w2)?;
    let (zt, configuration) = hyperelliptic_configuration(jac, w2, t)?;
    let forms: Vec<(String, AffineForm)> = configuration
        .curves
        .iter()
        .map(|c| (c.label.clone(), c.form.clone()))
        .collect();
    let form = |label: &str| forms.iter().find(|(l, _)| l == label).map(|(_, f)| f.clone()).unwrap();
    let theta = [("W1", 2), ("W2", -2)];
    let theta_t = [("C_t", 2), ("C_t+eps", -2)];
    let mut curves = basic_curves(jac, w2)?;
    let shift = translation_by(jac, t)?;
    curves.push(("C_t".to_string(), curves[0].1.translated(jac, &shift)));
    curves.push(("C_t+eps".to_string(), curves[1].1.translated(jac, &shift)));

    // restriction of the function with divisor `div` to curve `x`
    let restrict = |name: &str, div: &[(&str, i64)], x: &str, power: i64| -> Result<RestrictionCheck, CycleError> {
        let fx = form(x);
        let mut terms = Vec::new();
        for (y, m) in div {
            let hit = intersect(jac, &fx, &form(y))?;
            if hit.coincident || hit.irrational_points > 0 {
                return Err(CycleError::InvalidDatum(format!("{x} and {y} do not meet in rational points")));
            }
            for p in &hit.points {
                terms.push((Place::Point(p.on_first.clone()), m * p.multiplicity as i64));
            }
        }
        let divisor = Divisor::from_terms(terms);
        let expected = curve.divisor_of(&f)?.scale(power);
        let matches = divisor == expected;
        let (restriction, constant) = if matches {
            let r = jac
                .is_principal(&divisor)?
                .witness
                .ok_or_else(|| CycleError::InvalidDatum("restriction divisor is not principal".into()))?;
            let ratio = r.mul(&f.pow(-power, curve)?, curve);
            (Some(r), ratio.as_constant())
        } else {
            (None, None)
        };
        Ok(RestrictionCheck {
            curve: x.to_string(),
            function: name.to_string(),
            divisor,
            expected_power_of_f: power,
            matches,
            constant,
            restriction,
        })
    };
    let restrictions = vec![
        restrict("theta_t", &theta_t, "W1", 1)?,
        restrict("theta_t", &theta_t, "W2", -1)?,
        restrict("theta", &theta, "C_t", 1)?,
        restrict("theta", &theta, "C_t+eps", -1)?,
    ];

    let mut valuations = Vec::new();
    let mut symbol = PreCycle::new(1);
    for ((label, curve_emb), check) in curves.iter().zip(&restrictions) {
        debug_assert_eq!(label, &check.curve);
        let a = theta_t.iter().find(|(l, _)| l == label).map_or(0, |(_, m)| *m);
        let b = theta.iter().find(|(l, _)| l == label).map_or(0, |(_, m)| *m);
        valuations.push(SymbolValuation {
            curve: label.clone(),
            theta_t: a,
            theta: b,
        });
        // (-1)^{ab} theta_t^b / theta^a with one of a, b zero
        let r = check
            .restriction
            .clone()
            .ok_or_else(|| CycleError::InvalidDatum(format!("restriction to {label} does not match")))?;
        let value = if a == 0 { r.pow(b, curve)? } else { r.pow(-a, curve)? };
        symbol.push(curve_emb.clone(), value, 1);
    }
    let residual = symbol.sub(&zt.scale(2))?.consolidate(jac)?;
    let decomposable = residual.values().all(|g| g.is_constant());
    Ok(Genus2Report {
        configuration,
        restrictions,
        valuations,
        symbol_cycle: symbol,
        residual: residual.into_iter().collect(),
        decomposable,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    /// The constant family `t -> K`.
    Straight,
    /// `t -> K_t`.
    Twisted,
    /// `t -> K - K_t`.
    Difference,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDescriptor {
    pub kind: FamilyKind,
    pub w2: CurvePoint,
}

pub fn family_section(jac: &Jacobian, family: &FamilyDescriptor, t: &CurvePoint) -> Result<PreCycle, CycleError> {
    jac.curve().check_point(t)?;
    let k = basic_cycle(jac, &family.w2)?;
    match family.kind {
        FamilyKind::Straight => Ok(k),
        FamilyKind::Twisted => translate_cycle(jac, &k, t),
        FamilyKind::Difference => k.sub(&translate_cycle(jac, &k, t)?),
    }
}
