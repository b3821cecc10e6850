use crate::model::ComplexCurveModel;
use crate::quadrature::{integrate_curve, CurveIntegral, Integrand, QuadOptions};
use crate::NumericsError;
use nalgebra::DMatrix;
use num_complex::Complex64;

fn powers(x: Complex64, g: usize) -> Vec<Complex64> {
    let mut p = Vec::with_capacity(g);
    let mut acc = Complex64::new(1.0, 0.0);
    for _ in 0..g {
        p.push(acc);
        acc *= x;
    }
    p
}

/// A real (1,1)-form `sum M_jk (i/2) mu_j ^ conj(mu_k)` in the basis
/// `mu_j = x^(j-1) dx / y`.
///
/// Because `(i/2) dx ^ conj(dx)` is the Lebesgue area element, the density
/// per sheet with respect to `du dv` is `sum M_jk x^(j-1) conj(x)^(k-1) / |h(x)|`.
#[derive(Clone, Debug, PartialEq)]
pub struct VolumeForm {
    pub matrix: DMatrix<Complex64>,
}

impl VolumeForm {
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self, NumericsError> {
        let scale = matrix.iter().fold(1.0f64, |m, z| m.max(z.norm()));
        if !matrix.is_square() || (&matrix - matrix.adjoint()).iter().any(|z| z.norm() > 1e-12 * scale) {
            return Err(NumericsError::NotHermitian);
        }
        Ok(Self { matrix })
    }

    pub fn zero(g: usize) -> Self {
        Self { matrix: DMatrix::zeros(g, g) }
    }

    pub fn diagonal(entries: &[f64]) -> Self {
        let d: Vec<Complex64> = entries.iter().map(|&e| e.into()).collect();
        Self { matrix: DMatrix::from_diagonal(&nalgebra::DVector::from_vec(d)) }
    }

    /// `sum_a s_a (i/2) zeta_a ^ conj(zeta_a)`, where row `a` of `forms`
    /// holds the monomial coefficients of `zeta_a`.
    pub fn from_forms(forms: &DMatrix<Complex64>, signs: &[f64]) -> Self {
        let g = forms.ncols();
        let mut m = DMatrix::zeros(g, g);
        for (a, s) in signs.iter().enumerate() {
            for j in 0..g {
                for k in 0..g {
                    m[(j, k)] += *s * forms[(a, j)] * forms[(a, k)].conj();
                }
            }
        }
        Self { matrix: m }
    }

    pub fn genus(&self) -> usize {
        self.matrix.nrows()
    }

    /// Density per sheet at `x`, given `|h(x)|`.
    pub fn density(&self, x: Complex64, abs_h: f64) -> f64 {
        let g = self.genus();
        let p = powers(x, g);
        let mut s = 0.0;
        for j in 0..g {
            for k in 0..g {
                s += (self.matrix[(j, k)] * p[j] * p[k].conj()).re;
            }
        }
        s / abs_h
    }
}

/// Orthonormalized holomorphic forms.
#[derive(Clone, Debug)]
pub struct GramData {
    /// `G_jk = <mu_j, mu_k> = (i/2) int_C mu_j ^ conj(mu_k)`.
    pub gram: DMatrix<Complex64>,
    /// Largest quadrature error among the Gram entries.
    pub error: f64,
    /// Row `a` holds the monomial coefficients of the starting form `b_a`.
    pub basis: DMatrix<Complex64>,
    /// Row `a` holds the monomial coefficients of `zeta_a`, so that
    /// `zeta * G * zeta^*` is the identity.
    pub zeta: DMatrix<Complex64>,
    pub quadrature: CurveIntegral,
}

impl GramData {
    /// `<alpha, beta>` for forms given by monomial coefficients.
    pub fn inner(&self, a: &[Complex64], b: &[Complex64]) -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        for (j, x) in a.iter().enumerate() {
            for (k, y) in b.iter().enumerate() {
                s += x * y.conj() * self.gram[(j, k)];
            }
        }
        s
    }

    /// The same data with the orthonormal forms permuted.
    pub fn reordered(&self, order: &[usize]) -> Self {
        let g = self.zeta.ncols();
        let zeta = DMatrix::from_fn(order.len(), g, |a, j| self.zeta[(order[a], j)]);
        Self { zeta, ..self.clone() }
    }

    /// `(i/2) (zeta_1 ^ conj(zeta_1) - zeta_2 ^ conj(zeta_2))`.
    pub fn tau(&self) -> VolumeForm {
        VolumeForm::from_forms(&self.zeta, &[1.0, -1.0])
    }

    /// Recomputes `<zeta_a, zeta_b>` by quadrature of `zeta_a conj(zeta_b) / |h|`.
    pub fn inner_products_by_quadrature(
        &self,
        model: &ComplexCurveModel,
        opts: &QuadOptions,
    ) -> (DMatrix<Complex64>, f64) {
        let n = self.zeta.nrows();
        let g = self.zeta.ncols();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
        let zeta = &self.zeta;
        let d = Integrand::new(2 * pairs.len(), vec![], |x: Complex64, y: Complex64, out: &mut [f64]| {
            let p = powers(x, g);
            let vals: Vec<Complex64> = (0..n).map(|a| (0..g).map(|j| zeta[(a, j)] * p[j]).sum()).collect();
            let ah = y.norm_sqr();
            for (i, &(a, b)) in pairs.iter().enumerate() {
                let v = vals[a] * vals[b].conj() / ah;
                out[2 * i] = v.re;
                out[2 * i + 1] = v.im;
            }
        });
        let r = integrate_curve(model, &d, opts);
        let mut m = DMatrix::zeros(n, n);
        for (i, &(a, b)) in pairs.iter().enumerate() {
            let v = Complex64::new(r.values[2 * i], r.values[2 * i + 1]);
            m[(a, b)] = v;
            m[(b, a)] = v.conj();
        }
        (m, r.errors.iter().copied().fold(0.0, f64::max))
    }
}

/// The Gram matrix of the monomial forms, by quadrature.
pub fn gram_matrix(model: &ComplexCurveModel, opts: &QuadOptions) -> (DMatrix<Complex64>, CurveIntegral) {
    let g = model.genus();
    let pairs: Vec<(usize, usize)> = (0..g).flat_map(|j| (j..g).map(move |k| (j, k))).collect();
    let d = Integrand::new(2 * pairs.len(), vec![], |x: Complex64, y: Complex64, out: &mut [f64]| {
        let p = powers(x, g);
        let ah = y.norm_sqr();
        for (i, &(j, k)) in pairs.iter().enumerate() {
            let v = p[j] * p[k].conj() / ah;
            out[2 * i] = v.re;
            out[2 * i + 1] = v.im;
        }
    });
    let r = integrate_curve(model, &d, opts);
    let mut m = DMatrix::zeros(g, g);
    for (i, &(j, k)) in pairs.iter().enumerate() {
        let v = Complex64::new(r.values[2 * i], r.values[2 * i + 1]);
        m[(j, k)] = v;
        m[(k, j)] = v.conj();
    }
    (m, r)
}

/// Orthonormalizes the monomial basis in order (Cholesky).
pub fn gram_normalize(model: &ComplexCurveModel, opts: &QuadOptions) -> Result<GramData, NumericsError> {
    gram_normalize_basis(model, &DMatrix::identity(model.genus(), model.genus()), opts)
}

/// Orthonormalizes the rows of `basis` in order. Row `a` holds the monomial
/// coefficients of the `a`-th form.
pub fn gram_normalize_basis(
    model: &ComplexCurveModel,
    basis: &DMatrix<Complex64>,
    opts: &QuadOptions,
) -> Result<GramData, NumericsError> {
    let g = model.genus();
    if basis.ncols() != g || basis.nrows() == 0 || basis.nrows() > g {
        return Err(NumericsError::BasisShape { rows: basis.nrows(), cols: basis.ncols(), genus: g });
    }
    let (gram, quadrature) = gram_matrix(model, opts);
    // <b_a, b_b> = (B G B^*)_{ab} with G_jk = <mu_j, mu_k>
    let gb = basis * &gram * basis.adjoint();
    let chol = nalgebra::linalg::Cholesky::new(gb).ok_or(NumericsError::NotPositiveDefinite)?;
    let linv = chol.l().try_inverse().ok_or(NumericsError::NotPositiveDefinite)?;
    let zeta = linv * basis;
    let error = quadrature.errors.iter().copied().fold(0.0, f64::max);
    Ok(GramData { gram, error, basis: basis.clone(), zeta, quadrature })
}
