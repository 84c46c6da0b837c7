use num_complex::Complex64;

use crate::error::{Result, WishartError};

use super::matrix::GeneralMatrix;

/// LU factorization with partial pivoting, kept packed in place.
pub(crate) struct Lu {
    d: usize,
    packed: Vec<f64>,
    perm: Vec<usize>,
}

pub(crate) fn lu_factor(a: &GeneralMatrix, context: &str) -> Result<Lu> {
    let d = a.dim();
    let mut m = a.entries().to_vec();
    let mut perm: Vec<usize> = (0..d).collect();
    let scale = a.max_abs().max(1.0);
    for k in 0..d {
        let mut pivot_row = k;
        let mut pivot_val = m[k * d + k].abs();
        for i in (k + 1)..d {
            let v = m[i * d + k].abs();
            if v > pivot_val {
                pivot_val = v;
                pivot_row = i;
            }
        }
        if pivot_val <= 1e-14 * scale {
            return Err(WishartError::Singular {
                context: context.to_string(),
            });
        }
        if pivot_row != k {
            for j in 0..d {
                m.swap(k * d + j, pivot_row * d + j);
            }
            perm.swap(k, pivot_row);
        }
        let pivot = m[k * d + k];
        for i in (k + 1)..d {
            let f = m[i * d + k] / pivot;
            m[i * d + k] = f;
            for j in (k + 1)..d {
                m[i * d + j] -= f * m[k * d + j];
            }
        }
    }
    Ok(Lu { d, packed: m, perm })
}

impl Lu {
    fn solve_vec(&self, b: &[f64]) -> Vec<f64> {
        let d = self.d;
        let mut x: Vec<f64> = self.perm.iter().map(|&i| b[i]).collect();
        for i in 1..d {
            for k in 0..i {
                x[i] -= self.packed[i * d + k] * x[k];
            }
        }
        for i in (0..d).rev() {
            for k in (i + 1)..d {
                x[i] -= self.packed[i * d + k] * x[k];
            }
            x[i] /= self.packed[i * d + i];
        }
        x
    }

    /// Solve A X = B column by column.
    pub(crate) fn solve(&self, b: &GeneralMatrix) -> GeneralMatrix {
        let d = self.d;
        assert_eq!(b.dim(), d, "rhs dimension mismatch");
        let mut x = GeneralMatrix::zeros(d);
        let mut col = vec![0.0; d];
        for j in 0..d {
            for i in 0..d {
                col[i] = b.at(i, j);
            }
            let sol = self.solve_vec(&col);
            for i in 0..d {
                x.set(i, j, sol[i]);
            }
        }
        x
    }
}

/// Solve A X = B with partial pivoting.
pub(crate) fn solve(a: &GeneralMatrix, b: &GeneralMatrix, context: &str) -> Result<GeneralMatrix> {
    Ok(lu_factor(a, context)?.solve(b))
}

/// Dense complex square matrix for the analytic transform path.
#[derive(Debug, Clone)]
pub(crate) struct CMatrix {
    d: usize,
    e: Vec<Complex64>,
}

impl CMatrix {
    pub(crate) fn zeros(d: usize) -> Self {
        Self {
            d,
            e: vec![Complex64::new(0.0, 0.0); d * d],
        }
    }

    pub(crate) fn from_re_im(re: &GeneralMatrix, im: &GeneralMatrix) -> Self {
        let d = re.dim();
        assert_eq!(im.dim(), d, "re/im dimension mismatch");
        let e = re
            .entries()
            .iter()
            .zip(im.entries())
            .map(|(&r, &i)| Complex64::new(r, i))
            .collect();
        Self { d, e }
    }

    pub(crate) fn from_re(re: &GeneralMatrix) -> Self {
        Self::from_re_im(re, &GeneralMatrix::zeros(re.dim()))
    }

    pub(crate) fn dim(&self) -> usize {
        self.d
    }

    #[inline]
    pub(crate) fn at(&self, i: usize, j: usize) -> Complex64 {
        self.e[i * self.d + j]
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.e[i * self.d + j] = v;
    }

    pub(crate) fn identity(d: usize) -> Self {
        let mut m = Self::zeros(d);
        for i in 0..d {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub(crate) fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.d, other.d, "matrix product dimension mismatch");
        let d = self.d;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let aik = self.at(i, k);
                if aik.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..d {
                    let v = out.at(i, j) + aik * other.at(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub(crate) fn add(&self, other: &Self) -> Self {
        assert_eq!(self.d, other.d, "matrix sum dimension mismatch");
        let e = self.e.iter().zip(&other.e).map(|(a, b)| a + b).collect();
        Self { d: self.d, e }
    }

    pub(crate) fn max_abs(&self) -> f64 {
        self.e.iter().fold(0.0, |m, z| m.max(z.norm()))
    }
}

pub(crate) struct CLu {
    d: usize,
    packed: Vec<Complex64>,
    perm: Vec<usize>,
    swaps: usize,
}

/// Complex LU with partial pivoting by modulus. The pivot floor implements
/// the near-zero-determinant singularity check.
pub(crate) fn c_lu_factor(a: &CMatrix, context: &str) -> Result<CLu> {
    let d = a.dim();
    let mut m = a.e.clone();
    let mut perm: Vec<usize> = (0..d).collect();
    let mut swaps = 0;
    let scale = a.max_abs().max(1.0);
    for k in 0..d {
        let mut pivot_row = k;
        let mut pivot_val = m[k * d + k].norm();
        for i in (k + 1)..d {
            let v = m[i * d + k].norm();
            if v > pivot_val {
                pivot_val = v;
                pivot_row = i;
            }
        }
        if pivot_val <= 1e-14 * scale {
            return Err(WishartError::Singular {
                context: context.to_string(),
            });
        }
        if pivot_row != k {
            for j in 0..d {
                m.swap(k * d + j, pivot_row * d + j);
            }
            perm.swap(k, pivot_row);
            swaps += 1;
        }
        let pivot = m[k * d + k];
        for i in (k + 1)..d {
            let f = m[i * d + k] / pivot;
            m[i * d + k] = f;
            for j in (k + 1)..d {
                let v = m[i * d + j] - f * m[k * d + j];
                m[i * d + j] = v;
            }
        }
    }
    Ok(CLu {
        d,
        packed: m,
        perm,
        swaps,
    })
}

impl CLu {
    /// Principal-branch log-determinant accumulated factor-wise over the
    /// diagonal pivots; the permutation parity contributes iπ per swap.
    pub(crate) fn log_det(&self) -> Complex64 {
        let d = self.d;
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..d {
            acc += self.packed[i * d + i].ln();
        }
        if self.swaps % 2 == 1 {
            acc += Complex64::new(0.0, std::f64::consts::PI);
        }
        acc
    }

    fn solve_vec(&self, b: &[Complex64]) -> Vec<Complex64> {
        let d = self.d;
        let mut x: Vec<Complex64> = self.perm.iter().map(|&i| b[i]).collect();
        for i in 1..d {
            for k in 0..i {
                let v = x[i] - self.packed[i * d + k] * x[k];
                x[i] = v;
            }
        }
        for i in (0..d).rev() {
            for k in (i + 1)..d {
                let v = x[i] - self.packed[i * d + k] * x[k];
                x[i] = v;
            }
            x[i] /= self.packed[i * d + i];
        }
        x
    }

    pub(crate) fn solve(&self, b: &CMatrix) -> CMatrix {
        let d = self.d;
        assert_eq!(b.dim(), d, "rhs dimension mismatch");
        let mut x = CMatrix::zeros(d);
        let mut col = vec![Complex64::new(0.0, 0.0); d];
        for j in 0..d {
            for i in 0..d {
                col[i] = b.at(i, j);
            }
            let sol = self.solve_vec(&col);
            for i in 0..d {
                x.set(i, j, sol[i]);
            }
        }
        x
    }
}
