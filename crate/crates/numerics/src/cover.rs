use crate::bielliptic::{sample_points, DoubleCover};
use crate::model::ComplexCurveModel;
use crate::quadrature::{integrate_curve, Integrand, QuadOptions, QuadratureResult};
use crate::NumericsError;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoverChecks {
    /// Largest relative residual of the target equations at `pi(P)` and
    /// `k_E(P)`, and of `f_G(pi(P)) - h(f(P))`.
    pub diagram_residual: f64,
    pub samples: usize,
    /// Every branch point of C maps into `{0, 1, inf, lambda}`.
    pub branch_over_legendre: bool,
    /// Smallest `|dY/dz|` at the critical points of `h`, where `Y` is the
    /// local parameter of G at the branch points over `a_1, a_2`.
    pub min_local_derivative: f64,
    /// `h` is unramified at every branch point of C.
    pub unramified_at_branch_points: bool,
    pub genus_c: usize,
    pub genus_g: usize,
    /// `2 g_C - 2 - 2 (2 g_G - 2)`; zero for an unramified double cover.
    pub ramification_degree: i64,
}

impl CoverChecks {
    pub fn unramified(&self) -> bool {
        self.ramification_degree == 0 && self.min_local_derivative > 1e-8 && self.unramified_at_branch_points
    }
}

/// An unramified double cover `pi: C -> G` of genus-2 curves by a genus-3 curve.
///
/// G is branched over `{0, 1, inf, lambda, a_1, a_2}` and `h` is the double
/// cover of the line with critical values `a_1, a_2`. C is branched over
/// `h^-1 {0, 1, inf, lambda}`, and
/// `pi(z, y) = (h(z), alpha^(5/2) (z - c_1)(z - c_2) y / (z - delta)^3)`,
/// `k_E(z, y) = (h(z), alpha^(3/2) y / (z - delta)^2)` into
/// `E: Y^2 = X (X - 1)(X - lambda)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Genus3Cover {
    pub lambda: Complex64,
    pub a: [Complex64; 2],
    pub cover: DoubleCover,
    pub c: ComplexCurveModel,
    pub g: ComplexCurveModel,
    pub e: ComplexCurveModel,
    pub checks: CoverChecks,
}

impl Genus3Cover {
    pub fn pi(&self, z: Complex64, y: Complex64) -> (Complex64, Complex64) {
        let d = &self.cover;
        let [c1, c2] = d.critical_points;
        let w = z - d.delta;
        (d.h(z), d.alpha.powf(2.5) * (z - c1) * (z - c2) * y / (w * w * w))
    }

    pub fn k_e(&self, z: Complex64, y: Complex64) -> (Complex64, Complex64) {
        let d = &self.cover;
        let w = z - d.delta;
        (d.h(z), d.alpha.powf(1.5) * y / (w * w))
    }

    /// `int_C pi^*(theta)` and `int_G theta` for `theta = (i/2) dX/Y ^ conj(dX/Y)`.
    /// Uses `pi^*(dX/Y) = alpha^(-3/2) (z - delta) dz / y`.
    pub fn pullback_mass(&self, opts: &QuadOptions) -> (QuadratureResult, QuadratureResult) {
        let (alpha, delta) = (self.cover.alpha, self.cover.delta);
        let scale = alpha.norm().powi(-3);
        let up = Integrand::new(1, vec![], |z: Complex64, y: Complex64, out: &mut [f64]| {
            out[0] = scale * (z - delta).norm_sqr() / y.norm_sqr();
        });
        let down = Integrand::new(1, vec![], |_x, y: Complex64, out: &mut [f64]| out[0] = 1.0 / y.norm_sqr());
        (integrate_curve(&self.c, &up, opts).component(0), integrate_curve(&self.g, &down, opts).component(0))
    }
}

pub fn build_genus3_cover(lambda: Complex64, a1: Complex64, a2: Complex64) -> Result<Genus3Cover, NumericsError> {
    let values = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), lambda, a1, a2];
    for (i, v) in values.iter().enumerate() {
        if !v.is_finite() || values[..i].iter().any(|w| (v - w).norm() < 1e-12) {
            return Err(NumericsError::Degenerate(format!("branch values must be distinct and finite, got {v}")));
        }
    }
    let cover = DoubleCover::with_critical_values(a1, a2)?;
    let [m1, m2] = cover.preimages(lambda);
    let one = Complex64::new(1.0, 0.0);
    let roots = vec![Complex64::new(0.0, 0.0), cover.sigma0(), one, cover.sigma1(), m1, m2, cover.delta];
    let c = ComplexCurveModel::new(one, roots)?;
    let g = ComplexCurveModel::new(one, values.to_vec())?;
    let e = ComplexCurveModel::legendre(lambda)?;
    let mut out = Genus3Cover {
        lambda,
        a: [a1, a2],
        cover,
        c,
        g,
        e,
        checks: CoverChecks {
            diagram_residual: 0.0,
            samples: 0,
            branch_over_legendre: false,
            min_local_derivative: 0.0,
            unramified_at_branch_points: false,
            genus_c: 0,
            genus_g: 0,
            ramification_degree: 0,
        },
    };

    let pts = sample_points(20, Complex64::new(0.13, -0.05));
    let mut residual = 0.0f64;
    for z in &pts {
        let y = out.c.y(*z);
        let (x, yy) = out.pi(*z, y);
        let rhs = out.g.h(x);
        residual = residual.max((yy * yy - rhs).norm() / rhs.norm().max(1.0));
        residual = residual.max((x - cover.h(*z)).norm() / x.norm().max(1.0));
        let (x, yy) = out.k_e(*z, y);
        let rhs = out.e.h(x);
        residual = residual.max((yy * yy - rhs).norm() / rhs.norm().max(1.0));
    }

    let targets = [Complex64::new(0.0, 0.0), one, lambda];
    let over = |b: &Complex64| {
        (b - cover.delta).norm() < 1e-9 || targets.iter().any(|t| (cover.h(*b) - t).norm() < 1e-9 * (1.0 + t.norm()))
    };
    let branch_over_legendre = out.c.branch_points().iter().all(over) && out.c.is_odd();
    let unramified_at_branch_points = out.c.branch_points().iter().all(|b| {
        (b - cover.delta).norm() < 1e-9 || cover.derivative(*b).norm() > 1e-8
    });
    // near a critical point c_i, Y / (z - c_i) tends to the derivative below
    let min_local_derivative = cover
        .critical_points
        .iter()
        .map(|&ci| {
            let [c1, c2] = cover.critical_points;
            let other = if (ci - c1).norm() < 1e-12 { c2 } else { c1 };
            let w = ci - cover.delta;
            (cover.alpha.powf(2.5) * (ci - other) * out.c.y(ci) / (w * w * w)).norm()
        })
        .fold(f64::INFINITY, f64::min);
    let (gc, gg) = (out.c.genus(), out.g.genus());
    out.checks = CoverChecks {
        diagram_residual: residual,
        samples: pts.len(),
        branch_over_legendre,
        min_local_derivative,
        unramified_at_branch_points,
        genus_c: gc,
        genus_g: gg,
        ramification_degree: (2 * gc as i64 - 2) - 2 * (2 * gg as i64 - 2),
    };
    Ok(out)
}
