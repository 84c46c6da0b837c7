use crate::error::{Result, WishartError};

use super::matrix::{GeneralMatrix, SymMatrix};

/// Spectral decomposition a = V Λ Vᵀ with eigenvalues sorted descending and
/// eigenvectors in the corresponding columns of `vectors`.
#[derive(Debug, Clone)]
pub struct SymEigen {
    pub values: Vec<f64>,
    pub vectors: GeneralMatrix,
}

impl SymEigen {
    /// V diag(values) Vᵀ for a replacement set of eigenvalues.
    pub fn reassemble(&self, values: &[f64]) -> SymMatrix {
        let d = self.vectors.dim();
        assert_eq!(values.len(), d, "eigenvalue count mismatch");
        let mut out = GeneralMatrix::zeros(d);
        for i in 0..d {
            for j in 0..d {
                let mut s = 0.0;
                for (k, &lambda) in values.iter().enumerate() {
                    s += self.vectors.at(i, k) * lambda * self.vectors.at(j, k);
                }
                out.set(i, j, s);
            }
        }
        SymMatrix::symmetrized(&out)
    }
}

/// Cyclic Jacobi eigensolver for symmetric matrices.
///
/// Row-cyclic sweep order, no pivot searching, so runs are bitwise
/// reproducible for identical input. The sweep cap follows the off-diagonal
/// norm falling below 1e-14 · ‖a‖.
pub fn sym_eig(a: &SymMatrix) -> Result<SymEigen> {
    let d = a.dim();
    if d == 0 {
        return Ok(SymEigen {
            values: vec![],
            vectors: GeneralMatrix::zeros(0),
        });
    }

    let mut m = a.to_general();
    let mut v = GeneralMatrix::identity(d);
    let norm = a.frobenius_norm();
    let target = 1e-14 * norm.max(1e-300);
    let max_sweeps = 100 * d * d;

    let mut converged = d == 1 || norm == 0.0;
    for _ in 0..max_sweeps {
        if converged {
            break;
        }
        let mut off = 0.0;
        for p in 0..d {
            for q in (p + 1)..d {
                off += 2.0 * m.at(p, q) * m.at(p, q);
            }
        }
        if off.sqrt() <= target {
            converged = true;
            break;
        }
        for p in 0..d {
            for q in (p + 1)..d {
                let apq = m.at(p, q);
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let app = m.at(p, p);
                let aqq = m.at(q, q);
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                m.set(p, p, app - t * apq);
                m.set(q, q, aqq + t * apq);
                m.set(p, q, 0.0);
                m.set(q, p, 0.0);
                for i in 0..d {
                    if i == p || i == q {
                        continue;
                    }
                    let aip = m.at(i, p);
                    let aiq = m.at(i, q);
                    m.set(i, p, c * aip - s * aiq);
                    m.set(p, i, c * aip - s * aiq);
                    m.set(i, q, s * aip + c * aiq);
                    m.set(q, i, s * aip + c * aiq);
                }
                for i in 0..d {
                    let vip = v.at(i, p);
                    let viq = v.at(i, q);
                    v.set(i, p, c * vip - s * viq);
                    v.set(i, q, s * vip + c * viq);
                }
            }
        }
    }
    if !converged {
        return Err(WishartError::NumericalFailure(format!(
            "Jacobi eigensolver did not converge within {max_sweeps} sweeps (d = {d})"
        )));
    }

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| {
        m.at(j, j)
            .partial_cmp(&m.at(i, i))
            .expect("finite eigenvalues")
    });
    let values: Vec<f64> = order.iter().map(|&i| m.at(i, i)).collect();
    let mut vectors = GeneralMatrix::zeros(d);
    for (col, &src) in order.iter().enumerate() {
        for row in 0..d {
            vectors.set(row, col, v.at(row, src));
        }
    }
    Ok(SymEigen { values, vectors })
}
