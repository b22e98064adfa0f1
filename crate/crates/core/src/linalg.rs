//! Dense complex linear algebra helpers shared across the crate.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Frobenius norm of `m† m − I`, the standard unitarity deviation.
pub fn unitarity_deviation(m: &CMatrix) -> f64 {
    let n = m.ncols();
    let gram = m.adjoint() * m;
    (gram - CMatrix::identity(n, n)).norm()
}

pub fn is_finite_matrix(m: &CMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

pub fn is_finite_vector(v: &CVector) -> bool {
    v.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Complex standard-Gaussian matrix (unit-variance entries).
pub fn complex_gaussian_matrix<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    CMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re * scale, im * scale)
    })
}

/// Haar-distributed random unitary, obtained from the singular vectors of a
/// complex Gaussian matrix.
pub fn haar_unitary<R: Rng>(n: usize, rng: &mut R) -> CMatrix {
    let g = complex_gaussian_matrix(n, n, rng);
    let svd = sorted_svd(&g).expect("SVD of a Gaussian matrix converges");
    svd.u
}

/// Full (square-factor) SVD with singular values sorted descending.
pub struct FullSvd {
    /// m×m unitary.
    pub u: CMatrix,
    /// Singular values, length min(m, n), descending.
    pub sigma: Vec<f64>,
    /// n×n unitary; `v_h` is V† so that `a = u · embed(sigma) · v_h`.
    pub v_h: CMatrix,
}

/// Computes a full SVD of `a`, completing the thin singular-vector factors to
/// square unitaries. Columns paired with zero singular values may be any
/// orthonormal completion; the product is unchanged because they multiply
/// zeros in Σ.
pub fn sorted_svd(a: &CMatrix) -> Result<FullSvd> {
    let (m, n) = (a.nrows(), a.ncols());
    let svd = a
        .clone()
        .try_svd_unordered(true, true, f64::EPSILON, 0)
        .ok_or_else(|| Error::Numeric("SVD failed to converge".into()))?;
    let u_thin = svd.u.expect("u requested");
    let v_t = svd.v_t.expect("v_t requested");
    let k = svd.singular_values.len();

    // Sort descending; stable in the original index on ties.
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&i, &j| {
        svd.singular_values[j]
            .partial_cmp(&svd.singular_values[i])
            .unwrap()
            .then(i.cmp(&j))
    });
    let sigma: Vec<f64> = order.iter().map(|&i| svd.singular_values[i]).collect();

    let v_thin = v_t.adjoint();
    let u_cols: Vec<CVector> = order.iter().map(|&i| u_thin.column(i).into()).collect();
    let v_cols: Vec<CVector> = order.iter().map(|&i| v_thin.column(i).into()).collect();

    let u = complete_unitary(&u_cols, m);
    let v = complete_unitary(&v_cols, n);
    Ok(FullSvd {
        u,
        sigma,
        v_h: v.adjoint(),
    })
}

/// Extends `cols` (at most `dim` nearly-orthonormal columns) to a `dim`×`dim`
/// unitary by modified Gram-Schmidt, substituting canonical basis vectors for
/// degenerate columns. Positions of well-conditioned input columns are kept,
/// so singular-vector/value pairings survive the completion.
pub fn complete_unitary(cols: &[CVector], dim: usize) -> CMatrix {
    assert!(cols.len() <= dim);
    let mut out: Vec<CVector> = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut v = if i < cols.len() {
            orthogonalize(cols[i].clone(), &out)
        } else {
            CVector::zeros(dim)
        };
        let mut norm = v.norm();
        if norm <= 1e-8 {
            // Degenerate input column (or none supplied): take the canonical
            // basis vector with the largest orthogonal residual; one always
            // has residual ≥ 1/√dim.
            let mut best = (f64::NEG_INFINITY, 0);
            for k in 0..dim {
                let mut e = CVector::zeros(dim);
                e[k] = Complex64::new(1.0, 0.0);
                let r = orthogonalize(e, &out).norm();
                if r > best.0 {
                    best = (r, k);
                }
            }
            let mut e = CVector::zeros(dim);
            e[best.1] = Complex64::new(1.0, 0.0);
            v = orthogonalize(e, &out);
            norm = v.norm();
        }
        out.push(v / Complex64::new(norm, 0.0));
    }
    CMatrix::from_columns(&out)
}

fn orthogonalize(mut v: CVector, basis: &[CVector]) -> CVector {
    // Two MGS passes keep orthogonality near machine precision.
    for _ in 0..2 {
        for b in basis {
            let proj = b.dotc(&v);
            v.axpy(-proj, b, Complex64::new(1.0, 0.0));
        }
    }
    v
}
