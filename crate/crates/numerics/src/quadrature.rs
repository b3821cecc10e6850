//! Adaptive cubature over the x-plane of a hyperelliptic curve.
//!
//! The plane is covered by a smooth partition of unity: a bump around every
//! special point (branch points and the zeros and poles of log factors),
//! integrated in polar coordinates on geometrically graded annuli; a bump
//! around infinity, integrated in the chart `w = 1/x`; and the remainder,
//! which is smooth and integrated on a square. Every piece is refined by
//! tensor Gauss-Kronrod (7, 15) rules, always splitting the cell with the
//! largest error estimate.

use crate::model::ComplexCurveModel;
use crate::sum::Neumaier;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::FRAC_PI_2;

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

const N: usize = 15;
/// Grading stops at this fraction of the disk radius.
const INNERMOST: f64 = 1e-12;
const BATCH: usize = 16;

fn node(i: usize) -> f64 {
    if i < 8 {
        -XGK[i]
    } else {
        XGK[14 - i]
    }
}

fn kronrod_weight(i: usize) -> f64 {
    WGK[i.min(14 - i)]
}

fn gauss_weight(i: usize) -> f64 {
    let k = i.min(14 - i);
    if k % 2 == 1 {
        WG[k / 2]
    } else {
        0.0
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    #[default]
    Double,
    /// Compensated sums inside every cell rule and a target sixteen times
    /// tighter than the requested tolerance.
    Extended,
}

impl std::str::FromStr for Precision {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "double" => Ok(Precision::Double),
            "extended" => Ok(Precision::Extended),
            _ => Err(format!("unknown precision mode {s:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadOptions {
    /// Absolute target for the summed error estimate.
    pub tol: f64,
    /// Maximum number of cells evaluated.
    pub budget: usize,
    /// Disk radius as a fraction of the distance to the nearest other special point.
    pub disk_fraction: f64,
    /// Ratio between consecutive radii of the graded annuli.
    pub grading: f64,
    pub precision: Precision,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self { tol: 1e-8, budget: 200_000, disk_fraction: 0.1, grading: 0.5, precision: Precision::Double }
    }
}

impl QuadOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self { tol, ..Self::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub cells_used: usize,
    pub tolerance_requested: f64,
    pub converged: bool,
}

impl QuadratureResult {
    /// Acceptance rule for comparing against a target value.
    pub fn agrees_with(&self, target: f64, k: f64) -> bool {
        (self.value - target).abs() <= self.tolerance_requested.max(k * self.error_estimate)
    }
}

/// A vector of integrals computed on a common set of cells.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveIntegral {
    pub values: Vec<f64>,
    pub errors: Vec<f64>,
    pub cells_used: usize,
    pub tolerance_requested: f64,
    pub converged: bool,
}

impl CurveIntegral {
    pub fn component(&self, i: usize) -> QuadratureResult {
        QuadratureResult {
            value: self.values[i],
            error_estimate: self.errors[i],
            cells_used: self.cells_used,
            tolerance_requested: self.tolerance_requested,
            converged: self.converged,
        }
    }
}

/// A real density on the curve, given per sheet.
pub trait Density: Sync {
    fn dim(&self) -> usize;

    /// Writes the density at `(x, y)` into `out`. `y` is one square root of
    /// `h(x)`, so `y.norm_sqr() == |h(x)|`.
    fn eval(&self, x: Complex64, y: Complex64, out: &mut [f64]);

    /// Whether the density takes equal values on both sheets.
    fn sheet_even(&self) -> bool {
        true
    }

    /// Finite points where the density has a logarithmic singularity, beyond
    /// the branch points.
    fn singular_points(&self) -> Vec<Complex64> {
        Vec::new()
    }
}

/// A closure density.
pub struct Integrand<F> {
    pub dim: usize,
    pub singular: Vec<Complex64>,
    pub sheet_even: bool,
    pub f: F,
}

impl<F> Integrand<F>
where
    F: Fn(Complex64, Complex64, &mut [f64]) + Sync,
{
    pub fn new(dim: usize, singular: Vec<Complex64>, f: F) -> Self {
        Self { dim, singular, sheet_even: true, f }
    }
}

impl<F> Density for Integrand<F>
where
    F: Fn(Complex64, Complex64, &mut [f64]) + Sync,
{
    fn dim(&self) -> usize {
        self.dim
    }
    fn eval(&self, x: Complex64, y: Complex64, out: &mut [f64]) {
        (self.f)(x, y, out)
    }
    fn sheet_even(&self) -> bool {
        self.sheet_even
    }
    fn singular_points(&self) -> Vec<Complex64> {
        self.singular.clone()
    }
}

fn smooth_step(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else {
        let a = (-1.0 / t).exp();
        let b = (-1.0 / (1.0 - t)).exp();
        a / (a + b)
    }
}

#[derive(Clone, Copy, Debug)]
enum Chart {
    Plane,
    Disk(usize),
    Exterior,
}

#[derive(Clone, Copy, Debug)]
struct Rect {
    chart: Chart,
    u0: f64,
    u1: f64,
    v0: f64,
    v1: f64,
}

impl Rect {
    fn halves(&self, along_u: bool) -> [Rect; 2] {
        let mut a = *self;
        let mut b = *self;
        if along_u {
            let m = 0.5 * (self.u0 + self.u1);
            a.u1 = m;
            b.u0 = m;
        } else {
            let m = 0.5 * (self.v0 + self.v1);
            a.v1 = m;
            b.v0 = m;
        }
        [a, b]
    }
}

struct Layout {
    centers: Vec<Complex64>,
    radii: Vec<f64>,
    outer: f64,
}

impl Layout {
    fn new(points: &[Complex64], fraction: f64) -> Self {
        let mut centers: Vec<Complex64> = Vec::new();
        for p in points {
            let scale = 1.0 + p.norm();
            if !centers.iter().any(|c| (c - p).norm() <= 1e-12 * scale) {
                centers.push(*p);
            }
        }
        let far = centers.iter().fold(1.0f64, |m, c| m.max(c.norm()));
        let outer = 2.0 * far;
        let radii = centers
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let gap = centers
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, d)| (c - d).norm())
                    .fold(far, f64::min);
                fraction * gap
            })
            .collect();
        Self { centers, radii, outer }
    }

    fn disk_cutoff(&self, i: usize, r: f64) -> f64 {
        let rho = self.radii[i];
        1.0 - smooth_step((r - 0.5 * rho) / (0.5 * rho))
    }

    fn inner_cutoff(&self, r: f64) -> f64 {
        1.0 - smooth_step((r - self.outer) / self.outer)
    }

    /// The point and the weight (Jacobian times cutoff) at parameters (u, v).
    fn map(&self, chart: Chart, u: f64, v: f64) -> Option<(Complex64, f64)> {
        match chart {
            Chart::Plane => {
                let x = Complex64::new(u, v);
                let mut w = self.inner_cutoff(x.norm());
                if w == 0.0 {
                    return None;
                }
                let near: f64 =
                    self.centers.iter().enumerate().map(|(i, c)| self.disk_cutoff(i, (x - c).norm())).sum();
                w *= 1.0 - near;
                (w != 0.0).then_some((x, w))
            }
            Chart::Disk(i) => {
                let w = self.disk_cutoff(i, u);
                (w != 0.0).then(|| (self.centers[i] + Complex64::from_polar(u, v), w * u))
            }
            Chart::Exterior => {
                let w = 1.0 - self.inner_cutoff(1.0 / u);
                (w != 0.0).then(|| (Complex64::from_polar(1.0 / u, -v), w / (u * u * u)))
            }
        }
    }

    fn initial_cells(&self, grading: f64) -> Vec<Rect> {
        let mut rects = Vec::new();
        let side = 2.0 * self.outer;
        let k = 8;
        let h = 2.0 * side / k as f64;
        for a in 0..k {
            for b in 0..k {
                let u0 = -side + a as f64 * h;
                let v0 = -side + b as f64 * h;
                rects.push(Rect { chart: Chart::Plane, u0, u1: u0 + h, v0, v1: v0 + h });
            }
        }
        let mut polar = |chart: Chart, rho: f64| {
            let mut hi = rho;
            while hi > 0.0 {
                let lo = if hi * grading < INNERMOST * rho { 0.0 } else { hi * grading };
                for q in 0..4 {
                    let v0 = q as f64 * FRAC_PI_2;
                    rects.push(Rect { chart, u0: lo, u1: hi, v0, v1: v0 + FRAC_PI_2 });
                }
                hi = lo;
            }
        };
        for (i, rho) in self.radii.iter().enumerate() {
            polar(Chart::Disk(i), *rho);
        }
        polar(Chart::Exterior, 1.0 / self.outer);
        rects
    }
}

struct Cell {
    rect: Rect,
    values: Vec<f64>,
    errors: Vec<f64>,
    err: f64,
    split_u: bool,
}

fn evaluate<D: Density + ?Sized>(
    model: &ComplexCurveModel,
    density: &D,
    layout: &Layout,
    rect: Rect,
    precision: Precision,
) -> Cell {
    let dim = density.dim();
    let mut f = vec![0.0; N * N * dim];
    let mut out = vec![0.0; dim];
    let mut other = vec![0.0; dim];
    let (hu, hv) = (0.5 * (rect.u1 - rect.u0), 0.5 * (rect.v1 - rect.v0));
    let (mu, mv) = (rect.u0 + hu, rect.v0 + hv);
    for i in 0..N {
        let u = mu + hu * node(i);
        for j in 0..N {
            let v = mv + hv * node(j);
            let Some((x, w)) = layout.map(rect.chart, u, v) else { continue };
            let y = model.y(x);
            density.eval(x, y, &mut out);
            let slot = &mut f[(i * N + j) * dim..(i * N + j + 1) * dim];
            if density.sheet_even() {
                for (s, o) in slot.iter_mut().zip(&out) {
                    *s = 2.0 * w * o;
                }
            } else {
                density.eval(x, -y, &mut other);
                for ((s, o), p) in slot.iter_mut().zip(&out).zip(&other) {
                    *s = w * (o + p);
                }
            }
        }
    }
    // a node can round onto a singular point; it carries no mass
    for v in f.iter_mut().filter(|v| !v.is_finite()) {
        *v = 0.0;
    }
    let scale = hu * hv;
    let mut values = vec![0.0; dim];
    let mut errors = vec![0.0; dim];
    let (mut eu, mut ev) = (0.0f64, 0.0f64);
    for c in 0..dim {
        let mut sums = [Neumaier::new(); 4];
        let mut plain = [0.0f64; 4];
        for i in 0..N {
            let (ki, gi) = (kronrod_weight(i), gauss_weight(i));
            for j in 0..N {
                let val = f[(i * N + j) * dim + c];
                if val == 0.0 {
                    continue;
                }
                let (kj, gj) = (kronrod_weight(j), gauss_weight(j));
                let terms = [ki * kj * val, gi * gj * val, gi * kj * val, ki * gj * val];
                match precision {
                    Precision::Double => {
                        for (p, t) in plain.iter_mut().zip(terms) {
                            *p += t;
                        }
                    }
                    Precision::Extended => {
                        for (s, t) in sums.iter_mut().zip(terms) {
                            s.add(t);
                        }
                    }
                }
            }
        }
        let r = match precision {
            Precision::Double => plain,
            Precision::Extended => sums.map(|s| s.value()),
        };
        let [kk, gg, gk, kg] = r.map(|x| x * scale);
        values[c] = kk;
        errors[c] = (kk - gg).abs();
        eu = eu.max((kk - gk).abs());
        ev = ev.max((kk - kg).abs());
    }
    let err = errors.iter().copied().fold(0.0, f64::max);
    let err = if err.is_finite() { err } else { f64::MAX };
    Cell { rect, values, errors, err, split_u: eu >= ev }
}

#[derive(PartialEq)]
struct Key(f64, usize);

impl Eq for Key {}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        // larger errors first, then older cells
        self.0.total_cmp(&other.0).then_with(|| other.1.cmp(&self.1))
    }
}

/// Integrates a density over the whole curve, summing both sheets.
///
/// The result is independent of how rayon schedules the cell evaluations:
/// refinement decisions depend only on computed values, and the leaves are
/// summed in creation order.
pub fn integrate_curve<D: Density + ?Sized>(
    model: &ComplexCurveModel,
    density: &D,
    opts: &QuadOptions,
) -> CurveIntegral {
    let mut points = model.branch_points().to_vec();
    points.extend(density.singular_points().into_iter().filter(|p| p.is_finite()));
    let layout = Layout::new(&points, opts.disk_fraction);
    let target = match opts.precision {
        Precision::Double => opts.tol,
        Precision::Extended => opts.tol / 16.0,
    };
    let eval = |r: Rect| evaluate(model, density, &layout, r, opts.precision);

    let mut cells: Vec<Cell> = layout.initial_cells(opts.grading).into_par_iter().map(eval).collect();
    let mut active = vec![true; cells.len()];
    let mut heap: BinaryHeap<Key> = cells.iter().enumerate().map(|(i, c)| Key(c.err, i)).collect();
    let mut total: f64 = cells.iter().map(|c| c.err).collect::<Neumaier>().value();
    let mut rounds = 0usize;
    while total > target && cells.len() + 2 <= opts.budget {
        let room = (opts.budget - cells.len()) / 2;
        let mut picked = Vec::new();
        while picked.len() < BATCH.min(room) {
            match heap.pop() {
                Some(Key(e, i)) if e > 0.0 => picked.push(i),
                _ => break,
            }
        }
        if picked.is_empty() {
            break;
        }
        let rects: Vec<Rect> =
            picked.iter().flat_map(|&i| cells[i].rect.halves(cells[i].split_u)).collect();
        let children: Vec<Cell> = rects.into_par_iter().map(eval).collect();
        for &i in &picked {
            active[i] = false;
            total -= cells[i].err;
        }
        for c in children {
            total += c.err;
            heap.push(Key(c.err, cells.len()));
            cells.push(c);
            active.push(true);
        }
        rounds += 1;
        if rounds.is_multiple_of(64) {
            total = cells.iter().zip(&active).filter(|(_, a)| **a).map(|(c, _)| c.err).collect::<Neumaier>().value();
        }
    }
    total = cells.iter().zip(&active).filter(|(_, a)| **a).map(|(c, _)| c.err).collect::<Neumaier>().value();

    let dim = density.dim();
    let mut values = vec![Neumaier::new(); dim];
    let mut errors = vec![Neumaier::new(); dim];
    for (c, _) in cells.iter().zip(&active).filter(|(_, a)| **a) {
        for k in 0..dim {
            values[k].add(c.values[k]);
            errors[k].add(c.errors[k]);
        }
    }
    CurveIntegral {
        values: values.iter().map(|s| s.value()).collect(),
        errors: errors.iter().map(|s| s.value()).collect(),
        cells_used: cells.len(),
        tolerance_requested: opts.tol,
        converged: total <= target,
    }
}

/// Scalar convenience wrapper around [`integrate_curve`].
pub fn integrate_scalar<F>(
    model: &ComplexCurveModel,
    singular: Vec<Complex64>,
    f: F,
    opts: &QuadOptions,
) -> QuadratureResult
where
    F: Fn(Complex64, Complex64) -> f64 + Sync,
{
    let d = Integrand::new(1, singular, |x, y, out: &mut [f64]| out[0] = f(x, y));
    integrate_curve(model, &d, opts).component(0)
}
