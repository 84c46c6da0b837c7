//! Affine process engine on the PSD cone: flows of the linear drift, the
//! generalized Riccati system, closed-form characteristic exponents, and the
//! transition kernels they define.

use crate::error::{Result, WishartError};
use crate::existence::drift_condition_check;
use crate::symcone::{logdet_shifted, mat_exp, GeneralMatrix, PsdMatrix, SymMatrix};
use crate::wishart::WishartParams;

/// Whether a parameter triple was admitted under the drift condition
/// p ≥ (d−1)/2 (Strict) or constructed formally for the non-existence
/// experiments (Formal; no stochastic process backs it).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProcessMode {
    Strict,
    Formal,
}

/// Parameter triple (p, α, β) of the Wishart process, with the constant
/// drift 2pα derived from it.
#[derive(Debug, Clone)]
pub struct WishartProcessParams {
    d: usize,
    p: f64,
    alpha: PsdMatrix,
    beta: GeneralMatrix,
    mode: ProcessMode,
}

/// Characteristic exponents (φ, ψ) at horizon t and argument u.
#[derive(Debug, Clone)]
pub struct CharExponents {
    pub phi: f64,
    pub psi: SymMatrix,
    pub t: f64,
    pub u: PsdMatrix,
}

/// State flow e^{βt} x e^{βᵀt} paired with its accumulated integral
/// σ_t = 2∫₀ᵗ e^{βs} α e^{βᵀs} ds.
#[derive(Debug, Clone)]
pub struct FlowPair {
    pub omega_t: PsdMatrix,
    pub sigma_t: PsdMatrix,
    pub t: f64,
}

/// Deviations found by the Chapman–Kolmogorov composition check.
#[derive(Debug, Clone)]
pub struct SemigroupReport {
    pub phi_dev: f64,
    pub psi_dev: f64,
    pub max_rel_dev: f64,
}

impl WishartProcessParams {
    /// Strict construction: rejects shapes below the drift condition, under
    /// which no process exists.
    pub fn new(p: f64, alpha: PsdMatrix, beta: GeneralMatrix) -> Result<Self> {
        let params = Self::new_formal(p, alpha, beta)?;
        if !drift_condition_check(params.d, p) {
            return Err(WishartError::Precondition(format!(
                "drift condition violated: p = {p} < (d-1)/2 = {}; no such process exists \
                 (use formal mode for transform-level experiments)",
                (params.d as f64 - 1.0) / 2.0
            )));
        }
        Ok(Self {
            mode: ProcessMode::Strict,
            ..params
        })
    }

    /// Formal construction: admits any p ≥ 0 so the transform-level
    /// machinery can be exercised where the process itself does not exist.
    /// The object is tagged non-stochastic and refused by the samplers.
    pub fn new_formal(p: f64, alpha: PsdMatrix, beta: GeneralMatrix) -> Result<Self> {
        if p < 0.0 || !p.is_finite() {
            return Err(WishartError::InvalidParameter(format!(
                "shape p = {p} must be ≥ 0"
            )));
        }
        if alpha.dim() != beta.dim() {
            return Err(WishartError::DimensionMismatch {
                left: alpha.dim(),
                right: beta.dim(),
            });
        }
        Ok(Self {
            d: alpha.dim(),
            p,
            alpha,
            beta,
            mode: ProcessMode::Formal,
        })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn alpha(&self) -> &PsdMatrix {
        &self.alpha
    }

    pub fn beta(&self) -> &GeneralMatrix {
        &self.beta
    }

    pub fn mode(&self) -> ProcessMode {
        self.mode
    }

    /// Constant drift b = 2pα.
    pub fn constant_drift(&self) -> SymMatrix {
        self.alpha.base().scale(2.0 * self.p)
    }

    /// Right-hand side of the Riccati system at ψ:
    /// F = 2p⟨α, ψ⟩ and R = −2ψαψ + ψβ + βᵀψ, the latter symmetrized to
    /// kill rounding asymmetry.
    pub fn riccati_rhs(&self, psi: &SymMatrix) -> (f64, SymMatrix) {
        let f = 2.0 * self.p * self.alpha.base().dot(psi);
        let psi_g = psi.to_general();
        let quad = psi_g.mul(&self.alpha.to_general()).mul(&psi_g).scale(-2.0);
        let lin = psi_g
            .mul(&self.beta)
            .add(&self.beta.transpose().mul(&psi_g));
        (f, SymMatrix::symmetrized(&quad.add(&lin)))
    }

    /// Closed-form exponents: φ = p log det(I + u σ_t) and
    /// ψ = e^{βᵀt} u (I + σ_t u)⁻¹ e^{βt}. The resolvent form avoids
    /// inverting u, so singular arguments are fine.
    pub fn char_exponents_closed(&self, t: f64, u: &PsdMatrix) -> Result<CharExponents> {
        if u.dim() != self.d {
            return Err(WishartError::DimensionMismatch {
                left: u.dim(),
                right: self.d,
            });
        }
        if t == 0.0 {
            return Ok(CharExponents {
                phi: 0.0,
                psi: u.base().clone(),
                t,
                u: u.clone(),
            });
        }
        let sigma_t = flow_sigma(&self.beta, t, &self.alpha)?;
        let phi = self.p * logdet_shifted(&sigma_t, u)?;
        // X = u(I + σ_t u)⁻¹ = (I + u σ_t)⁻¹ u.
        let ug = u.to_general();
        let shifted = GeneralMatrix::identity(self.d).add(&ug.mul(&sigma_t.to_general()));
        let x = crate::symcone::lu::solve(&shifted, &ug, "I + u σ_t")?;
        let ebt = mat_exp(&self.beta, t);
        let psi = SymMatrix::symmetrized(&ebt.transpose().mul(&x).mul(&ebt));
        Ok(CharExponents {
            phi,
            psi,
            t,
            u: u.clone(),
        })
    }

    /// Classical fixed-step 4th-order integration of the Riccati system from
    /// (0, u). Fixed step keeps test artifacts reproducible.
    pub fn riccati_integrate(&self, t: f64, u: &PsdMatrix, steps: usize) -> Result<CharExponents> {
        if u.dim() != self.d {
            return Err(WishartError::DimensionMismatch {
                left: u.dim(),
                right: self.d,
            });
        }
        if steps == 0 {
            return Err(WishartError::Precondition(
                "integration needs at least one step".into(),
            ));
        }
        let h = t / steps as f64;
        let mut phi = 0.0;
        let mut psi = u.base().clone();
        for _ in 0..steps {
            let (f1, r1) = self.riccati_rhs(&psi);
            let (f2, r2) = self.riccati_rhs(&psi.add(&r1.scale(h / 2.0)));
            let (f3, r3) = self.riccati_rhs(&psi.add(&r2.scale(h / 2.0)));
            let (f4, r4) = self.riccati_rhs(&psi.add(&r3.scale(h)));
            phi += h / 6.0 * (f1 + 2.0 * f2 + 2.0 * f3 + f4);
            let incr = r1
                .add(&r2.scale(2.0))
                .add(&r3.scale(2.0))
                .add(&r4)
                .scale(h / 6.0);
            psi = psi.add(&incr);
            let norm = psi.frobenius_norm();
            if !norm.is_finite() || norm > 1e12 {
                return Err(WishartError::NumericalFailure(
                    "Riccati integration diverged".into(),
                ));
            }
        }
        Ok(CharExponents {
            phi,
            psi,
            t,
            u: u.clone(),
        })
    }

    /// Transition law at horizon t from state x: Γ(p, ω_t(x), σ_t(α)).
    pub fn transition_params(&self, t: f64, x: &PsdMatrix) -> Result<WishartParams> {
        if t <= 0.0 || !t.is_finite() {
            return Err(WishartError::InvalidParameter(format!(
                "transition law requires t > 0, got {t}"
            )));
        }
        if x.dim() != self.d {
            return Err(WishartError::DimensionMismatch {
                left: x.dim(),
                right: self.d,
            });
        }
        if self.alpha.base().max_abs() == 0.0 {
            return Err(WishartError::UnsupportedParameter(
                "transition law requires a nonzero diffusion parameter".into(),
            ));
        }
        let omega_t = flow_omega(&self.beta, t, x);
        let sigma_t = flow_sigma(&self.beta, t, &self.alpha)?;
        WishartParams::new(self.p, omega_t, sigma_t)
    }

    /// Chapman–Kolmogorov composition: ψ(t+s, u) = ψ(t, ψ(s, u)) and
    /// φ(t+s, u) = φ(s, u) + φ(t, ψ(s, u)), evaluated from closed forms.
    pub fn semigroup_check(&self, t: f64, s: f64, u: &PsdMatrix) -> Result<SemigroupReport> {
        if t < 0.0 || s < 0.0 {
            return Err(WishartError::InvalidParameter(
                "semigroup check needs nonnegative horizons".into(),
            ));
        }
        let whole = self.char_exponents_closed(t + s, u)?;
        let inner = self.char_exponents_closed(s, u)?;
        let inner_psi = PsdMatrix::new(inner.psi.clone())?;
        let outer = self.char_exponents_closed(t, &inner_psi)?;

        let phi_rhs = inner.phi + outer.phi;
        let phi_dev = (whole.phi - phi_rhs).abs() / whole.phi.abs().max(1.0);
        let psi_dev = whole.psi.max_abs_diff(&outer.psi) / whole.psi.max_abs().max(1.0);
        Ok(SemigroupReport {
            phi_dev,
            psi_dev,
            max_rel_dev: phi_dev.max(psi_dev),
        })
    }
}

/// Flow of the linear drift: ω_t(x) = e^{βt} x e^{βᵀt}.
pub fn flow_omega(beta: &GeneralMatrix, t: f64, x: &PsdMatrix) -> PsdMatrix {
    let ebt = mat_exp(beta, t);
    PsdMatrix::trusted(x.base().congruence(&ebt))
}

/// σ_t(α) = 2∫₀ᵗ e^{βs} α e^{βᵀs} ds by composite 5-point Gauss–Legendre
/// quadrature; the panel count grows with t·(1+‖β‖) so the smooth integrand
/// is resolved to machine precision.
pub fn flow_sigma(beta: &GeneralMatrix, t: f64, alpha: &PsdMatrix) -> Result<PsdMatrix> {
    if t < 0.0 {
        return Err(WishartError::InvalidParameter(format!(
            "flow integral requires t ≥ 0, got {t}"
        )));
    }
    assert_eq!(beta.dim(), alpha.dim(), "flow dimension mismatch");
    let d = alpha.dim();
    if t == 0.0 {
        return Ok(PsdMatrix::zeros(d));
    }

    const NODES: [f64; 5] = [
        -0.906179845938664,
        -0.5384693101056831,
        0.0,
        0.5384693101056831,
        0.906179845938664,
    ];
    const WEIGHTS: [f64; 5] = [
        0.23692688505618908,
        0.47862867049936647,
        0.5688888888888889,
        0.47862867049936647,
        0.23692688505618908,
    ];

    let panels = (64.0 * t * (1.0 + beta.frobenius_norm())).ceil().max(16.0) as usize;
    let width = t / panels as f64;
    let mut acc = GeneralMatrix::zeros(d);
    for panel in 0..panels {
        let left = panel as f64 * width;
        for (node, weight) in NODES.iter().zip(WEIGHTS.iter()) {
            let s = left + 0.5 * width * (1.0 + node);
            let ebs = mat_exp(beta, s);
            let term = ebs.mul(&alpha.to_general()).mul(&ebs.transpose());
            acc = acc.add(&term.scale(weight * 0.5 * width));
        }
    }
    Ok(PsdMatrix::trusted(SymMatrix::symmetrized(&acc.scale(2.0))))
}
