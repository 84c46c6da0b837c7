use crate::error::{Result, WishartError};

use super::eigen::sym_eig;

/// Relative asymmetry tolerated before a constructor rejects its input.
pub const SYMMETRY_TOL: f64 = 1e-9;

/// Default relative eigenvalue floor for positive semidefiniteness checks.
pub const PSD_FLOOR: f64 = 1e-10;

/// Default relative tolerance for rank decisions.
pub const RANK_TOL: f64 = 1e-10;

/// Dense square matrix without structural constraints, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralMatrix {
    d: usize,
    entries: Vec<f64>,
}

impl GeneralMatrix {
    pub fn zeros(d: usize) -> Self {
        Self {
            d,
            entries: vec![0.0; d * d],
        }
    }

    pub fn identity(d: usize) -> Self {
        let mut m = Self::zeros(d);
        for i in 0..d {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn diag(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    /// Build from a row-major slice of length `d * d`.
    pub fn from_rows(d: usize, rows: &[f64]) -> Result<Self> {
        if rows.len() != d * d {
            return Err(WishartError::DimensionMismatch {
                left: d * d,
                right: rows.len(),
            });
        }
        Ok(Self {
            d,
            entries: rows.to_vec(),
        })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.d + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.entries[i * self.d + j] = v;
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        let d = self.d;
        let mut t = Self::zeros(d);
        for i in 0..d {
            for j in 0..d {
                t.set(j, i, self.at(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.d, other.d, "matrix product dimension mismatch");
        let d = self.d;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let aik = self.at(i, k);
                if aik == 0.0 {
                    continue;
                }
                for j in 0..d {
                    out.entries[i * d + j] += aik * other.entries[k * d + j];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.d, other.d, "matrix sum dimension mismatch");
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Self { d: self.d, entries }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.d, other.d, "matrix difference dimension mismatch");
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Self { d: self.d, entries }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            d: self.d,
            entries: self.entries.iter().map(|a| a * s).collect(),
        }
    }

    pub fn trace(&self) -> f64 {
        (0..self.d).map(|i| self.at(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, a| m.max(a.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.d, other.d, "matrix comparison dimension mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Apply a vector: y = A x.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.d, "matrix-vector dimension mismatch");
        let d = self.d;
        let mut y = vec![0.0; d];
        for i in 0..d {
            let mut s = 0.0;
            for j in 0..d {
                s += self.at(i, j) * x[j];
            }
            y[i] = s;
        }
        y
    }
}

/// Symmetric d×d matrix; `entries[i][j] == entries[j][i]` holds exactly.
///
/// Constructors symmetrize small floating-point drift ((a + aᵀ)/2 when the
/// asymmetry stays below `SYMMETRY_TOL * max_abs`) and reject anything worse.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    d: usize,
    entries: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(d: usize) -> Self {
        Self {
            d,
            entries: vec![0.0; d * d],
        }
    }

    pub fn identity(d: usize) -> Self {
        Self::from_general(&GeneralMatrix::identity(d)).expect("identity is symmetric")
    }

    pub fn diag(values: &[f64]) -> Self {
        Self::from_general(&GeneralMatrix::diag(values)).expect("diagonal is symmetric")
    }

    /// Validate and adopt a general matrix.
    pub fn from_general(a: &GeneralMatrix) -> Result<Self> {
        let d = a.dim();
        let mut max_asym: f64 = 0.0;
        for i in 0..d {
            for j in (i + 1)..d {
                max_asym = max_asym.max((a.at(i, j) - a.at(j, i)).abs());
            }
        }
        let tol = SYMMETRY_TOL * a.max_abs().max(1.0);
        if max_asym > tol {
            return Err(WishartError::NotSymmetric { max_asym, tol });
        }
        Ok(Self::symmetrized(a))
    }

    pub fn from_rows(d: usize, rows: &[f64]) -> Result<Self> {
        Self::from_general(&GeneralMatrix::from_rows(d, rows)?)
    }

    /// (a + aᵀ)/2 with exact symmetry by construction. No tolerance check:
    /// this is the explicit symmetrization used to kill rounding asymmetry.
    pub fn symmetrized(a: &GeneralMatrix) -> Self {
        let d = a.dim();
        let mut m = Self::zeros(d);
        for i in 0..d {
            m.entries[i * d + i] = a.at(i, i);
            for j in (i + 1)..d {
                let v = 0.5 * (a.at(i, j) + a.at(j, i));
                m.entries[i * d + j] = v;
                m.entries[j * d + i] = v;
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.d + j]
    }

    /// Set the (i, j) and (j, i) entries together.
    pub fn set_sym(&mut self, i: usize, j: usize, v: f64) {
        self.entries[i * self.d + j] = v;
        self.entries[j * self.d + i] = v;
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn to_general(&self) -> GeneralMatrix {
        GeneralMatrix {
            d: self.d,
            entries: self.entries.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.d, other.d, "matrix sum dimension mismatch");
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Self { d: self.d, entries }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.d, other.d, "matrix difference dimension mismatch");
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Self { d: self.d, entries }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            d: self.d,
            entries: self.entries.iter().map(|a| a * s).collect(),
        }
    }

    pub fn trace(&self) -> f64 {
        (0..self.d).map(|i| self.at(i, i)).sum()
    }

    /// ⟨x, y⟩ = tr(xy), the trace inner product on symmetric matrices.
    pub fn dot(&self, other: &Self) -> f64 {
        assert_eq!(self.d, other.d, "inner product dimension mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, a| m.max(a.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.d, other.d, "matrix comparison dimension mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Outer product m mᵀ.
    pub fn outer(m: &[f64]) -> Self {
        let d = m.len();
        let mut out = Self::zeros(d);
        for i in 0..d {
            for j in 0..d {
                out.entries[i * d + j] = m[i] * m[j];
            }
        }
        out
    }

    /// Congruence g · self · gᵀ, symmetrized.
    pub fn congruence(&self, g: &GeneralMatrix) -> Self {
        let prod = g.mul(&self.to_general()).mul(&g.transpose());
        Self::symmetrized(&prod)
    }

    /// Principal submatrix on rows/columns `0..k`.
    pub fn leading_block(&self, k: usize) -> Self {
        assert!(k <= self.d, "leading block larger than matrix");
        let mut out = Self::zeros(k);
        for i in 0..k {
            for j in 0..k {
                out.entries[i * k + j] = self.at(i, j);
            }
        }
        out
    }
}

/// Symmetric positive semidefinite matrix, validated on construction against
/// a relative eigenvalue floor.
#[derive(Debug, Clone, PartialEq)]
pub struct PsdMatrix {
    base: SymMatrix,
    eig_floor: f64,
}

impl PsdMatrix {
    /// Validate with the default floor: smallest eigenvalue must be at least
    /// `-PSD_FLOOR * max(largest eigenvalue, 1)`.
    pub fn new(base: SymMatrix) -> Result<Self> {
        Self::with_floor(base, PSD_FLOOR)
    }

    pub fn with_floor(base: SymMatrix, eig_floor: f64) -> Result<Self> {
        let eig = sym_eig(&base)?;
        let lambda_max = eig.values.first().copied().unwrap_or(0.0);
        let lambda_min = eig.values.last().copied().unwrap_or(0.0);
        let floor = eig_floor * lambda_max.max(1.0);
        if lambda_min < -floor {
            return Err(WishartError::NotPsd {
                eigenvalue: lambda_min,
                floor,
            });
        }
        Ok(Self { base, eig_floor })
    }

    /// Eigenvalue-clip onto the cone. Returns the projected matrix and
    /// whether any eigenvalue was actually clipped; never silent.
    pub fn repair(base: &SymMatrix) -> Result<(Self, bool)> {
        let eig = sym_eig(base)?;
        let clipped = eig.values.iter().any(|&l| l < 0.0);
        if !clipped {
            return Ok((
                Self {
                    base: base.clone(),
                    eig_floor: PSD_FLOOR,
                },
                false,
            ));
        }
        let values: Vec<f64> = eig.values.iter().map(|&l| l.max(0.0)).collect();
        let rebuilt = eig.reassemble(&values);
        Ok((
            Self {
                base: rebuilt,
                eig_floor: PSD_FLOOR,
            },
            true,
        ))
    }

    /// Adopt a matrix already known PSD (e.g. reassembled from clipped
    /// eigenvalues) without re-validating.
    pub(crate) fn trusted(base: SymMatrix) -> Self {
        Self {
            base,
            eig_floor: PSD_FLOOR,
        }
    }

    pub fn zeros(d: usize) -> Self {
        Self {
            base: SymMatrix::zeros(d),
            eig_floor: PSD_FLOOR,
        }
    }

    pub fn identity(d: usize) -> Self {
        Self {
            base: SymMatrix::identity(d),
            eig_floor: PSD_FLOOR,
        }
    }

    /// Diagonal matrix with nonnegative entries.
    pub fn diag(values: &[f64]) -> Result<Self> {
        Self::new(SymMatrix::diag(values))
    }

    pub fn from_rows(d: usize, rows: &[f64]) -> Result<Self> {
        Self::new(SymMatrix::from_rows(d, rows)?)
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn base(&self) -> &SymMatrix {
        &self.base
    }

    pub fn eig_floor(&self) -> f64 {
        self.eig_floor
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.base.at(i, j)
    }

    pub fn to_general(&self) -> GeneralMatrix {
        self.base.to_general()
    }

    pub fn scale(&self, s: f64) -> Result<Self> {
        if s < 0.0 {
            return Err(WishartError::InvalidParameter(format!(
                "negative scale {s} leaves the cone"
            )));
        }
        Ok(Self {
            base: self.base.scale(s),
            eig_floor: self.eig_floor,
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            base: self.base.add(&other.base),
            eig_floor: self.eig_floor,
        }
    }
}
