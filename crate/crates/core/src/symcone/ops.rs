use num_complex::Complex64;

use crate::error::{Result, WishartError};

use super::eigen::sym_eig;
use super::lu::{c_lu_factor, CMatrix};
use super::matrix::{GeneralMatrix, PsdMatrix, SymMatrix, RANK_TOL};

/// Unique PSD square root. Eigenvalues inside the validation floor are
/// clipped to zero before rooting.
pub fn psd_sqrt(a: &PsdMatrix) -> Result<PsdMatrix> {
    let eig = sym_eig(a.base())?;
    let roots: Vec<f64> = eig.values.iter().map(|&l| l.max(0.0).sqrt()).collect();
    Ok(PsdMatrix::trusted(eig.reassemble(&roots)))
}

/// Count of eigenvalues above `rel_tol * max(largest eigenvalue, 1)`.
pub fn rank_psd(a: &PsdMatrix, rel_tol: f64) -> Result<usize> {
    let eig = sym_eig(a.base())?;
    let lambda_max = eig.values.first().copied().unwrap_or(0.0);
    let cut = rel_tol * lambda_max.max(1.0);
    Ok(eig.values.iter().filter(|&&l| l > cut).count())
}

/// `rank_psd` at the default tolerance.
pub fn rank_psd_default(a: &PsdMatrix) -> Result<usize> {
    rank_psd(a, RANK_TOL)
}

/// log det(I + σu) for PSD σ, u, through the symmetrized form
/// det(I + √σ u √σ) so the determinant stays provably positive.
pub fn logdet_shifted(sigma: &PsdMatrix, u: &PsdMatrix) -> Result<f64> {
    let eig = shifted_spectrum(sigma, u.base())?;
    Ok(eig.iter().map(|&l| l.max(0.0).ln_1p()).sum())
}

/// log det(I + σv) for symmetric v, defined while I + √σ v √σ stays positive
/// definite; errors once the argument leaves that domain.
pub fn logdet_shifted_sym(sigma: &PsdMatrix, v: &SymMatrix) -> Result<f64> {
    let eig = shifted_spectrum(sigma, v)?;
    let mut acc = 0.0;
    for &l in &eig {
        if l <= -1.0 + 1e-14 {
            return Err(WishartError::OutsideDomain(format!(
                "I + \u{221a}\u{3c3} v \u{221a}\u{3c3} has eigenvalue {:e} \u{2264} 0",
                1.0 + l
            )));
        }
        acc += l.ln_1p();
    }
    Ok(acc)
}

/// Eigenvalues of √σ v √σ.
pub(crate) fn shifted_spectrum(sigma: &PsdMatrix, v: &SymMatrix) -> Result<Vec<f64>> {
    let s = psd_sqrt(sigma)?.to_general();
    let m = SymMatrix::symmetrized(&s.mul(&v.to_general()).mul(&s));
    Ok(sym_eig(&m)?.values)
}

/// Principal-branch log det(I + σz) for complex symmetric z = re + i·im,
/// accumulated over the diagonal pivots of an LU factorization. Far from the
/// real axis this may differ from the continuous analytic continuation by
/// multiples of 2πi per factor.
pub fn logdet_shifted_c(sigma: &PsdMatrix, re: &SymMatrix, im: &SymMatrix) -> Result<Complex64> {
    let sig = sigma.to_general();
    let shifted = CMatrix::from_re_im(
        &GeneralMatrix::identity(sigma.dim()).add(&sig.mul(&re.to_general())),
        &sig.mul(&im.to_general()),
    );
    Ok(c_lu_factor(&shifted, "det(I + \u{3c3}z)")?.log_det())
}
