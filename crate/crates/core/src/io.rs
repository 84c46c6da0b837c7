//! JSON document schemas shared with the command-line front end. Matrices
//! travel as row-major nested arrays and must be symmetric to 1e-9.

use serde::{Deserialize, Serialize};

use crate::error::{Result, WishartError};
use crate::process::{ProcessMode, WishartProcessParams};
use crate::symcone::{GeneralMatrix, PsdMatrix, SymMatrix};
use crate::wishart::{GuptaNagarParams, LetacParams, WishartParams};

pub fn rows_from_sym(m: &SymMatrix) -> Vec<Vec<f64>> {
    let d = m.dim();
    (0..d)
        .map(|i| (0..d).map(|j| m.at(i, j)).collect())
        .collect()
}

pub fn rows_from_general(m: &GeneralMatrix) -> Vec<Vec<f64>> {
    let d = m.dim();
    (0..d)
        .map(|i| (0..d).map(|j| m.at(i, j)).collect())
        .collect()
}

pub fn general_from_rows(d: usize, rows: &[Vec<f64>], what: &str) -> Result<GeneralMatrix> {
    if rows.len() != d || rows.iter().any(|r| r.len() != d) {
        return Err(WishartError::InvalidParameter(format!(
            "{what} must be a {d}x{d} row-major grid"
        )));
    }
    let flat: Vec<f64> = rows.iter().flatten().copied().collect();
    if flat.iter().any(|v| !v.is_finite()) {
        return Err(WishartError::InvalidParameter(format!(
            "{what} contains non-finite entries"
        )));
    }
    GeneralMatrix::from_rows(d, &flat)
}

pub fn sym_from_rows(d: usize, rows: &[Vec<f64>], what: &str) -> Result<SymMatrix> {
    SymMatrix::from_general(&general_from_rows(d, rows, what)?)
}

pub fn psd_from_rows(d: usize, rows: &[Vec<f64>], what: &str) -> Result<PsdMatrix> {
    PsdMatrix::new(sym_from_rows(d, rows, what)?)
}

/// {"d", "p", "omega", "sigma"} — the native parameter document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParamsDoc {
    pub d: usize,
    pub p: f64,
    pub omega: Vec<Vec<f64>>,
    pub sigma: Vec<Vec<f64>>,
}

impl ParamsDoc {
    pub fn from_params(params: &WishartParams) -> Self {
        Self {
            d: params.dim(),
            p: params.p(),
            omega: rows_from_sym(params.omega().base()),
            sigma: rows_from_sym(params.sigma().base()),
        }
    }

    pub fn to_params(&self) -> Result<WishartParams> {
        WishartParams::new(
            self.p,
            psd_from_rows(self.d, &self.omega, "omega")?,
            psd_from_rows(self.d, &self.sigma, "sigma")?,
        )
    }
}

/// {"d", "p", "alpha", "beta", "mode"} — the process document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProcessDoc {
    pub d: usize,
    pub p: f64,
    pub alpha: Vec<Vec<f64>>,
    pub beta: Vec<Vec<f64>>,
    #[serde(default = "default_mode")]
    pub mode: String,
}

fn default_mode() -> String {
    "strict".to_string()
}

impl ProcessDoc {
    pub fn from_params(params: &WishartProcessParams) -> Self {
        Self {
            d: params.dim(),
            p: params.p(),
            alpha: rows_from_sym(params.alpha().base()),
            beta: rows_from_general(params.beta()),
            mode: match params.mode() {
                ProcessMode::Strict => "strict".to_string(),
                ProcessMode::Formal => "formal".to_string(),
            },
        }
    }

    pub fn to_params(&self) -> Result<WishartProcessParams> {
        let alpha = psd_from_rows(self.d, &self.alpha, "alpha")?;
        let beta = general_from_rows(self.d, &self.beta, "beta")?;
        match self.mode.as_str() {
            "strict" => WishartProcessParams::new(self.p, alpha, beta),
            "formal" => WishartProcessParams::new_formal(self.p, alpha, beta),
            other => Err(WishartError::InvalidParameter(format!(
                "mode must be \"strict\" or \"formal\", got {other:?}"
            ))),
        }
    }
}

/// {"d", "p", "a", "sigma"} — the a-parameterization document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LetacDoc {
    pub d: usize,
    pub p: f64,
    pub a: Vec<Vec<f64>>,
    pub sigma: Vec<Vec<f64>>,
}

impl LetacDoc {
    pub fn from_params(lp: &LetacParams) -> Self {
        Self {
            d: lp.a.dim(),
            p: lp.p,
            a: rows_from_sym(lp.a.base()),
            sigma: rows_from_sym(lp.sigma.base()),
        }
    }

    pub fn to_params(&self) -> Result<LetacParams> {
        LetacParams::new(
            self.p,
            psd_from_rows(self.d, &self.a, "a")?,
            psd_from_rows(self.d, &self.sigma, "sigma")?,
        )
    }
}

/// {"d", "k", "Sigma", "Theta"} — the degrees-of-freedom document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GuptaNagarDoc {
    pub d: usize,
    pub k: f64,
    #[serde(rename = "Sigma")]
    pub scale: Vec<Vec<f64>>,
    #[serde(rename = "Theta")]
    pub theta: Vec<Vec<f64>>,
}

impl GuptaNagarDoc {
    pub fn from_params(gp: &GuptaNagarParams) -> Self {
        Self {
            d: gp.scale.dim(),
            k: gp.k,
            scale: rows_from_sym(gp.scale.base()),
            theta: rows_from_sym(&gp.theta),
        }
    }

    pub fn to_params(&self) -> Result<GuptaNagarParams> {
        GuptaNagarParams::new(
            self.k,
            psd_from_rows(self.d, &self.scale, "Sigma")?,
            sym_from_rows(self.d, &self.theta, "Theta")?,
        )
    }
}

/// Any of the accepted parameter documents, told apart by their keys.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AnyParamsDoc {
    GuptaNagar(GuptaNagarDoc),
    Letac(LetacDoc),
    Native(ParamsDoc),
}

impl AnyParamsDoc {
    /// Convert to the native triple whichever document arrived.
    pub fn to_native(&self) -> Result<WishartParams> {
        match self {
            AnyParamsDoc::Native(doc) => doc.to_params(),
            AnyParamsDoc::Letac(doc) => WishartParams::from_letac(&doc.to_params()?),
            AnyParamsDoc::GuptaNagar(doc) => WishartParams::from_gupta_nagar(&doc.to_params()?),
        }
    }
}
