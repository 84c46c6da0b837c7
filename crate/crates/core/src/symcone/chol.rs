use crate::error::Result;

use super::matrix::{GeneralMatrix, PsdMatrix};
use super::ops::psd_sqrt;

/// Lower-triangular L with L Lᵀ ≈ a, defined for singular PSD matrices too.
///
/// The classical outer-product factorization with zero-clamped pivots handles
/// almost every input exactly; when an ill-ordered near-singular matrix makes
/// its residual degrade, the factor is rebuilt from the matrix square root by
/// LQ re-triangularization.
pub fn chol_psd(a: &PsdMatrix) -> Result<GeneralMatrix> {
    let d = a.dim();
    let scale = a.base().max_abs().max(1.0);
    let pivot_floor = a.eig_floor() * scale;

    let mut l = GeneralMatrix::zeros(d);
    for j in 0..d {
        let mut diag = a.at(j, j);
        for k in 0..j {
            diag -= l.at(j, k) * l.at(j, k);
        }
        if diag > pivot_floor {
            let ljj = diag.sqrt();
            l.set(j, j, ljj);
            for i in (j + 1)..d {
                let mut s = a.at(i, j);
                for k in 0..j {
                    s -= l.at(i, k) * l.at(j, k);
                }
                l.set(i, j, s / ljj);
            }
        }
        // diag within the floor: semidefinite pivot, column stays zero.
    }

    let residual = l.mul(&l.transpose()).max_abs_diff(&a.to_general());
    if residual <= 1e-11 * scale {
        return Ok(l);
    }
    // Ordering-sensitive case: factor through the square root instead.
    let s = psd_sqrt(a)?;
    Ok(lq_lower_factor(&s.to_general()))
}

/// Lower-triangular L from the LQ factorization of a symmetric s, so that
/// L Lᵀ = s sᵀ. Computed as the transposed Householder QR of sᵀ with the
/// diagonal normalized nonnegative.
fn lq_lower_factor(s: &GeneralMatrix) -> GeneralMatrix {
    let (_, r) = householder_qr(&s.transpose());
    let d = s.dim();
    let mut l = GeneralMatrix::zeros(d);
    for i in 0..d {
        let sign = if r.at(i, i) < 0.0 { -1.0 } else { 1.0 };
        for j in i..d {
            l.set(j, i, sign * r.at(i, j));
        }
    }
    l
}

/// Householder QR of a square matrix: a = Q R with Q orthogonal and R upper
/// triangular.
pub(crate) fn householder_qr(a: &GeneralMatrix) -> (GeneralMatrix, GeneralMatrix) {
    let d = a.dim();
    let mut r = a.clone();
    let mut q = GeneralMatrix::identity(d);
    for k in 0..d {
        let mut norm = 0.0;
        for i in k..d {
            norm += r.at(i, k) * r.at(i, k);
        }
        let norm = norm.sqrt();
        if norm == 0.0 {
            continue;
        }
        let alpha = if r.at(k, k) > 0.0 { -norm } else { norm };
        let mut v = vec![0.0; d];
        v[k] = r.at(k, k) - alpha;
        for i in (k + 1)..d {
            v[i] = r.at(i, k);
        }
        let vtv: f64 = v.iter().map(|x| x * x).sum();
        if vtv == 0.0 {
            continue;
        }
        // R ← (I - 2vvᵀ/vᵀv) R ;  Q ← Q (I - 2vvᵀ/vᵀv)
        for j in 0..d {
            let mut dot = 0.0;
            for i in k..d {
                dot += v[i] * r.at(i, j);
            }
            let f = 2.0 * dot / vtv;
            for i in k..d {
                r.set(i, j, r.at(i, j) - f * v[i]);
            }
        }
        for i in 0..d {
            let mut dot = 0.0;
            for j in k..d {
                dot += q.at(i, j) * v[j];
            }
            let f = 2.0 * dot / vtv;
            for j in k..d {
                q.set(i, j, q.at(i, j) - f * v[j]);
            }
        }
    }
    (q, r)
}
