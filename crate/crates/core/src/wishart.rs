//! The distribution core: the (shape, non-centrality, scale) parameter
//! triple, Laplace/Fourier transform evaluation, the moment-generating-
//! function domain, the pushforward/tilting/convolution/scaling toolbox, and
//! converters to the other parameterizations in circulation.

use num_complex::Complex64;

use crate::error::{Result, WishartError};
use crate::existence::{existence_verdict, GindikinVerdict};
use crate::symcone::lu::{c_lu_factor, CMatrix};
use crate::symcone::{
    logdet_shifted_c, logdet_shifted_sym, psd_sqrt, rank_psd_default, shifted_spectrum,
    GeneralMatrix, PsdMatrix, SymMatrix,
};

/// Entrywise tolerance when two scales must agree exactly (convolution) or a
/// scale must be the identity (tilting base).
const SCALE_MATCH_TOL: f64 = 1e-12;

/// Parameter triple of the non-central Wishart law: shape p ≥ 0,
/// non-centrality ω, scale σ, both PSD.
#[derive(Debug, Clone)]
pub struct WishartParams {
    d: usize,
    p: f64,
    omega: PsdMatrix,
    sigma: PsdMatrix,
}

/// Transform argument u, optionally with an imaginary part v for z = u + iv.
#[derive(Debug, Clone)]
pub struct TransformArgument {
    real_part: PsdMatrix,
    imag_part: Option<SymMatrix>,
}

impl TransformArgument {
    pub fn real(u: PsdMatrix) -> Self {
        Self {
            real_part: u,
            imag_part: None,
        }
    }

    pub fn complex(u: PsdMatrix, v: SymMatrix) -> Result<Self> {
        if u.dim() != v.dim() {
            return Err(WishartError::DimensionMismatch {
                left: u.dim(),
                right: v.dim(),
            });
        }
        Ok(Self {
            real_part: u,
            imag_part: Some(v),
        })
    }

    pub fn real_part(&self) -> &PsdMatrix {
        &self.real_part
    }

    pub fn imag_part(&self) -> Option<&SymMatrix> {
        self.imag_part.as_ref()
    }
}

/// Record of an exponential tilt: direction v in the mgf domain and the
/// normalization constant c = tr((σ−I)ω) it produces.
#[derive(Debug, Clone)]
pub struct NaturalExponentialTilt {
    pub v: SymMatrix,
    pub c: f64,
}

/// Alternative parameterization with a = σ⁻¹ωσ⁻¹; requires invertible σ.
#[derive(Debug, Clone)]
pub struct LetacParams {
    pub p: f64,
    pub a: PsdMatrix,
    pub sigma: PsdMatrix,
}

impl LetacParams {
    pub fn new(p: f64, a: PsdMatrix, sigma: PsdMatrix) -> Result<Self> {
        if p < 0.0 || p.is_nan() {
            return Err(WishartError::InvalidParameter(format!(
                "shape p = {p} must be ≥ 0"
            )));
        }
        if a.dim() != sigma.dim() {
            return Err(WishartError::DimensionMismatch {
                left: a.dim(),
                right: sigma.dim(),
            });
        }
        if rank_psd_default(&sigma)? != sigma.dim() {
            return Err(WishartError::Singular {
                context: "scale of the a-parameterization must be invertible".into(),
            });
        }
        Ok(Self { p, a, sigma })
    }
}

/// Degrees-of-freedom parameterization (shape k, scale Σ, non-centrality Θ);
/// only the symmetric-Θ subclass is representable here.
#[derive(Debug, Clone)]
pub struct GuptaNagarParams {
    pub k: f64,
    pub scale: PsdMatrix,
    pub theta: SymMatrix,
}

impl GuptaNagarParams {
    pub fn new(k: f64, scale: PsdMatrix, theta: SymMatrix) -> Result<Self> {
        if k < 0.0 || k.is_nan() {
            return Err(WishartError::InvalidParameter(format!(
                "shape k = {k} must be ≥ 0"
            )));
        }
        if scale.dim() != theta.dim() {
            return Err(WishartError::DimensionMismatch {
                left: scale.dim(),
                right: theta.dim(),
            });
        }
        if rank_psd_default(&scale)? != scale.dim() {
            return Err(WishartError::Singular {
                context: "degrees-of-freedom parameterization requires invertible scale".into(),
            });
        }
        Ok(Self { k, scale, theta })
    }

    /// Transform value in this parameterization, evaluated directly from
    /// det(I + 2Σu)^{-k/2} e^{−tr(Θ(I+2Σu)⁻¹Σu)} without converting. Serves
    /// as the independent route for the conversion contract.
    pub fn log_transform(&self, u: &PsdMatrix) -> Result<f64> {
        let d = self.scale.dim();
        if u.dim() != d {
            return Err(WishartError::DimensionMismatch {
                left: u.dim(),
                right: d,
            });
        }
        let two_sigma = PsdMatrix::trusted(self.scale.base().scale(2.0));
        let logdet = crate::symcone::logdet_shifted(&two_sigma, u)?;
        // tr(Θ (I+2Σu)⁻¹ Σu): solve (I + 2Σu) Y = Σu.
        let sig_u = self.scale.to_general().mul(&u.to_general());
        let shifted = GeneralMatrix::identity(d).add(&sig_u.scale(2.0));
        let y = crate::symcone::lu::solve(&shifted, &sig_u, "I + 2Σu")?;
        let theta_g = self.theta.to_general();
        let trace = theta_g.mul(&y).trace();
        Ok(-(self.k / 2.0) * logdet - trace)
    }
}

impl WishartParams {
    pub fn new(p: f64, omega: PsdMatrix, sigma: PsdMatrix) -> Result<Self> {
        if p < 0.0 || !p.is_finite() {
            return Err(WishartError::InvalidParameter(format!(
                "shape p = {p} must be ≥ 0"
            )));
        }
        if omega.dim() != sigma.dim() {
            return Err(WishartError::DimensionMismatch {
                left: omega.dim(),
                right: sigma.dim(),
            });
        }
        Ok(Self {
            d: omega.dim(),
            p,
            omega,
            sigma,
        })
    }

    pub fn central(p: f64, sigma: PsdMatrix) -> Result<Self> {
        let d = sigma.dim();
        Self::new(p, PsdMatrix::zeros(d), sigma)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn omega(&self) -> &PsdMatrix {
        &self.omega
    }

    pub fn sigma(&self) -> &PsdMatrix {
        &self.sigma
    }

    /// Point mass at zero: p = 0 and ω = 0.
    pub fn is_trivial(&self) -> bool {
        self.p == 0.0 && self.omega.base().max_abs() == 0.0
    }

    /// Existence verdict for this triple; ranks are taken at the kernel's
    /// default tolerance.
    pub fn verdict(&self) -> Result<GindikinVerdict> {
        let rank_omega = rank_psd_default(&self.omega)?;
        let rank_sigma = rank_psd_default(&self.sigma)?;
        existence_verdict(self.d, self.p, rank_omega, rank_sigma, rank_omega == 0)
    }

    /// log of the transform at a symmetric argument v, defined on the whole
    /// mgf domain (I + √σ v √σ positive definite). The trace term is
    /// computed by linear solve, never by inverting v.
    pub fn log_laplace_sym(&self, v: &SymMatrix) -> Result<f64> {
        if v.dim() != self.d {
            return Err(WishartError::DimensionMismatch {
                left: v.dim(),
                right: self.d,
            });
        }
        let logdet = logdet_shifted_sym(&self.sigma, v)?;
        // X = v(I+σv)⁻¹ = (I+vσ)⁻¹v, symmetric; ⟨X, ω⟩ is the exponent.
        let vg = v.to_general();
        let shifted = GeneralMatrix::identity(self.d).add(&vg.mul(&self.sigma.to_general()));
        let x = crate::symcone::lu::solve(&shifted, &vg, "I + vσ")?;
        let trace = SymMatrix::symmetrized(&x).dot(self.omega.base());
        Ok(-self.p * logdet - trace)
    }

    /// Transform value at a PSD argument; always in (0, 1].
    pub fn laplace(&self, u: &PsdMatrix) -> Result<f64> {
        Ok(self.log_laplace_sym(u.base())?.exp())
    }

    /// Analytic extension of the transform to z = u + iv with PSD real part.
    pub fn fourier_laplace(&self, z: &TransformArgument) -> Result<Complex64> {
        let u = z.real_part();
        if u.dim() != self.d {
            return Err(WishartError::DimensionMismatch {
                left: u.dim(),
                right: self.d,
            });
        }
        let zero;
        let v = match z.imag_part() {
            Some(v) => v,
            None => {
                zero = SymMatrix::zeros(self.d);
                &zero
            }
        };
        let logdet = logdet_shifted_c(&self.sigma, u.base(), v)?;
        let zc = CMatrix::from_re_im(&u.to_general(), &v.to_general());
        let sigma_c = CMatrix::from_re(&self.sigma.to_general());
        let shifted = CMatrix::identity(self.d).add(&zc.mul(&sigma_c));
        let x = c_lu_factor(&shifted, "I + zσ")?.solve(&zc);
        let mut trace = Complex64::new(0.0, 0.0);
        for i in 0..self.d {
            for j in 0..self.d {
                trace += x.at(i, j) * self.omega.at(j, i);
            }
        }
        Ok((-self.p * logdet - trace).exp())
    }

    /// Membership of v in the mgf domain −σ⁻¹ + interior of the cone;
    /// requires invertible σ.
    pub fn mgf_domain_contains(&self, v: &SymMatrix) -> Result<bool> {
        if v.dim() != self.d {
            return Err(WishartError::DimensionMismatch {
                left: v.dim(),
                right: self.d,
            });
        }
        if rank_psd_default(&self.sigma)? != self.d {
            return Err(WishartError::UnsupportedParameter(
                "mgf domain is only characterized for invertible scale".into(),
            ));
        }
        let spectrum = shifted_spectrum(&self.sigma, v)?;
        let lambda_min = spectrum.last().copied().unwrap_or(0.0);
        let lambda_max = spectrum.first().copied().unwrap_or(0.0);
        let tol = 1e-12 * (1.0 + lambda_max.abs()).max(1.0);
        Ok(1.0 + lambda_min > tol)
    }

    /// First moment pσ + ω.
    pub fn mean(&self) -> SymMatrix {
        self.sigma.base().scale(self.p).add(self.omega.base())
    }

    /// Image law under ξ ↦ gξgᵀ for invertible g: (p, gωgᵀ, gσgᵀ).
    pub fn pushforward_congruence(&self, g: &GeneralMatrix) -> Result<WishartParams> {
        if g.dim() != self.d {
            return Err(WishartError::DimensionMismatch {
                left: g.dim(),
                right: self.d,
            });
        }
        // Invertibility check; the factorization is discarded.
        crate::symcone::lu::lu_factor(g, "pushforward congruence matrix")?;
        let omega = PsdMatrix::new(self.omega.base().congruence(g))?;
        let sigma = PsdMatrix::new(self.sigma.base().congruence(g))?;
        WishartParams::new(self.p, omega, sigma)
    }

    /// Exponential tilt of an identity-scale law onto the target scale:
    /// v = σ⁻¹ − I, giving Γ(p, σωσ; σ) and the constant c = tr((σ−I)ω).
    pub fn tilt_from_identity_scale(
        &self,
        target_sigma: &PsdMatrix,
    ) -> Result<(WishartParams, NaturalExponentialTilt)> {
        if target_sigma.dim() != self.d {
            return Err(WishartError::DimensionMismatch {
                left: target_sigma.dim(),
                right: self.d,
            });
        }
        let ident = SymMatrix::identity(self.d);
        if self.sigma.base().max_abs_diff(&ident) > SCALE_MATCH_TOL {
            return Err(WishartError::Precondition(
                "tilting is stated from identity-scale bases; pushforward first".into(),
            ));
        }
        if rank_psd_default(target_sigma)? != self.d {
            return Err(WishartError::Singular {
                context: "tilt target scale must be invertible".into(),
            });
        }
        let inv = crate::symcone::lu::solve(
            &target_sigma.to_general(),
            &GeneralMatrix::identity(self.d),
            "target scale inverse",
        )?;
        let v = SymMatrix::symmetrized(&inv.sub(&GeneralMatrix::identity(self.d)));
        let c = target_sigma.base().sub(&ident).dot(self.omega.base());
        let omega = PsdMatrix::new(self.omega.base().congruence(&target_sigma.to_general()))?;
        let tilted = WishartParams::new(self.p, omega, target_sigma.clone())?;
        Ok((tilted, NaturalExponentialTilt { v, c }))
    }

    /// Convolution of two laws with a common scale: shapes and
    /// non-centralities add.
    pub fn convolve(&self, other: &WishartParams) -> Result<WishartParams> {
        if other.d != self.d {
            return Err(WishartError::DimensionMismatch {
                left: other.d,
                right: self.d,
            });
        }
        let tol = SCALE_MATCH_TOL * self.sigma.base().max_abs().max(1.0);
        if self.sigma.base().max_abs_diff(other.sigma.base()) > tol {
            return Err(WishartError::Precondition(
                "convolution identity requires a common scale".into(),
            ));
        }
        WishartParams::new(
            self.p + other.p,
            self.omega.add(&other.omega),
            self.sigma.clone(),
        )
    }

    /// Γ(p, tω; σ) for t > 0. Rank, and with it the existence verdict, is
    /// unchanged.
    pub fn scale_noncentrality(&self, t: f64) -> Result<WishartParams> {
        if t <= 0.0 || !t.is_finite() {
            return Err(WishartError::InvalidParameter(format!(
                "non-centrality scaling requires t > 0, got {t}"
            )));
        }
        WishartParams::new(
            self.p,
            PsdMatrix::trusted(self.omega.base().scale(t)),
            self.sigma.clone(),
        )
    }

    /// Convert to the a-parameterization: a = σ⁻¹ωσ⁻¹.
    pub fn to_letac(&self) -> Result<LetacParams> {
        if rank_psd_default(&self.sigma)? != self.d {
            return Err(WishartError::Singular {
                context: "conversion to the a-parameterization requires invertible σ".into(),
            });
        }
        let y = crate::symcone::lu::solve(&self.sigma.to_general(), &self.omega.to_general(), "σ")?;
        // a = (σ⁻¹ω)σ⁻¹, via σ aᵀ = (σ⁻¹ω)ᵀ.
        let at = crate::symcone::lu::solve(&self.sigma.to_general(), &y.transpose(), "σ")?;
        let a = PsdMatrix::new(SymMatrix::symmetrized(&at))?;
        LetacParams::new(self.p, a, self.sigma.clone())
    }

    pub fn from_letac(lp: &LetacParams) -> Result<WishartParams> {
        let omega = PsdMatrix::new(lp.a.base().congruence(&lp.sigma.to_general()))?;
        WishartParams::new(lp.p, omega, lp.sigma.clone())
    }

    /// Convert from the degrees-of-freedom parameterization:
    /// (k, Σ, Θ) ↦ (k/2, (Θσ+σΘ)/4, σ) with σ = 2Σ.
    pub fn from_gupta_nagar(gp: &GuptaNagarParams) -> Result<WishartParams> {
        let sigma = PsdMatrix::trusted(gp.scale.base().scale(2.0));
        let theta_g = gp.theta.to_general();
        let sig_g = sigma.to_general();
        let mixed = theta_g.mul(&sig_g).add(&sig_g.mul(&theta_g)).scale(0.25);
        let omega = PsdMatrix::new(SymMatrix::symmetrized(&mixed)).map_err(|e| {
            WishartError::InvalidParameter(format!(
                "(Θσ+σΘ)/4 is not positive semidefinite ({e}); only the PSD-ω class is representable"
            ))
        })?;
        WishartParams::new(gp.k / 2.0, omega, sigma)
    }

    /// Point-mass location of the degenerate block when σ = diag(0, σ_r):
    /// the leading (d−r)×(d−r) block of ω. The caller aligns σ by orthogonal
    /// conjugation first.
    pub fn project_degenerate(&self, r: usize) -> Result<SymMatrix> {
        if r > self.d {
            return Err(WishartError::InvalidParameter(format!(
                "rank {r} exceeds dimension {}",
                self.d
            )));
        }
        let rank = rank_psd_default(&self.sigma)?;
        if rank != r {
            return Err(WishartError::Precondition(format!(
                "declared rank {r} does not match rank(σ) = {rank}"
            )));
        }
        let k = self.d - r;
        let tol = 1e-10 * self.sigma.base().max_abs().max(1.0);
        for i in 0..self.d {
            for j in 0..self.d {
                if (i < k || j < k) && self.sigma.at(i, j).abs() > tol {
                    return Err(WishartError::Precondition(
                        "scale is not in diag(0, σ_r) block form; conjugate by the eigenbasis first"
                            .into(),
                    ));
                }
            }
        }
        Ok(self.omega.base().leading_block(k))
    }
}

/// Helper shared by tests and the verification suites: the symmetrized
/// square root q of a PSD matrix, so σ = q².
pub fn symmetric_factor(sigma: &PsdMatrix) -> Result<PsdMatrix> {
    psd_sqrt(sigma)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: f64, omega: PsdMatrix, sigma: PsdMatrix) -> WishartParams {
        WishartParams::new(p, omega, sigma).unwrap()
    }

    fn psd(d: usize, rows: &[f64]) -> PsdMatrix {
        PsdMatrix::from_rows(d, rows).unwrap()
    }

    #[test]
    fn laplace_at_zero_is_one() {
        let w = params(1.3, psd(2, &[1.0, 0.2, 0.2, 0.5]), PsdMatrix::identity(2));
        assert_eq!(w.laplace(&PsdMatrix::zeros(2)).unwrap(), 1.0);
    }

    #[test]
    fn laplace_scalar_central() {
        let w = params(1.0, PsdMatrix::zeros(1), psd(1, &[1.0]));
        let v = w.laplace(&psd(1, &[1.0])).unwrap();
        assert!((v - 0.5).abs() < 1e-15);
    }

    #[test]
    fn laplace_diagonal_hand_evaluation() {
        // d=2, p=1/2, ω=diag(1,0), σ=I, u=I → 2⁻¹·e^{−1/2}.
        let w = params(
            0.5,
            PsdMatrix::diag(&[1.0, 0.0]).unwrap(),
            PsdMatrix::identity(2),
        );
        let v = w.laplace(&PsdMatrix::identity(2)).unwrap();
        let expected = 0.5 * (-0.5_f64).exp();
        assert!((v - expected).abs() < 1e-15, "got {v}, want {expected}");
    }

    #[test]
    fn laplace_in_unit_interval_and_monotone_on_rays() {
        let w = params(
            0.8,
            psd(2, &[0.7, 0.1, 0.1, 0.4]),
            psd(2, &[1.5, -0.3, -0.3, 0.9]),
        );
        let dir = psd(2, &[0.5, 0.2, 0.2, 0.3]);
        let mut prev = 1.0;
        for k in 0..6 {
            let u = PsdMatrix::trusted(dir.base().scale(k as f64 * 0.7));
            let v = w.laplace(&u).unwrap();
            assert!(v > 0.0 && v <= 1.0);
            assert!(v <= prev + 1e-15, "not monotone along the ray");
            prev = v;
        }
    }

    #[test]
    fn fourier_scalar() {
        // d=1, p=1, ω=0, σ=1, z=i → (1+i)⁻¹.
        let w = params(1.0, PsdMatrix::zeros(1), psd(1, &[1.0]));
        let z = TransformArgument::complex(PsdMatrix::zeros(1), SymMatrix::diag(&[1.0])).unwrap();
        let v = w.fourier_laplace(&z).unwrap();
        let expected = Complex64::new(1.0, 1.0).inv();
        assert!((v - expected).norm() < 1e-15);
    }

    #[test]
    fn fourier_real_slice_consistency() {
        let w = params(
            0.7,
            psd(2, &[0.6, 0.2, 0.2, 0.3]),
            psd(2, &[1.2, 0.4, 0.4, 0.8]),
        );
        let u = psd(2, &[0.9, -0.1, -0.1, 0.5]);
        let real = w.laplace(&u).unwrap();
        let z = TransformArgument::real(u);
        let cx = w.fourier_laplace(&z).unwrap();
        assert!((cx.re - real).abs() < 1e-14);
        assert!(cx.im.abs() < 1e-14);
    }

    #[test]
    fn mgf_domain_examples() {
        let w = params(1.0, PsdMatrix::zeros(1), psd(1, &[2.0]));
        assert!(w.mgf_domain_contains(&SymMatrix::zeros(1)).unwrap());
        // 1 + 2·(−1/2) = 0: boundary excluded.
        assert!(!w.mgf_domain_contains(&SymMatrix::diag(&[-0.5])).unwrap());
        assert!(w.mgf_domain_contains(&SymMatrix::diag(&[5.0])).unwrap());

        let degenerate = params(
            1.0,
            PsdMatrix::zeros(2),
            PsdMatrix::diag(&[1.0, 0.0]).unwrap(),
        );
        assert!(matches!(
            degenerate.mgf_domain_contains(&SymMatrix::zeros(2)),
            Err(WishartError::UnsupportedParameter(_))
        ));
    }

    #[test]
    fn mean_formula_scalar() {
        let w = params(2.0, psd(1, &[1.0]), psd(1, &[3.0]));
        assert!((w.mean().at(0, 0) - 7.0).abs() < 1e-15);
        let trivial = WishartParams::central(0.0, PsdMatrix::identity(2)).unwrap();
        assert_eq!(trivial.mean().max_abs(), 0.0);
    }

    #[test]
    fn mean_matches_finite_difference_gradient() {
        // −∇ log L at 0 via central differences, step 1e-5, agreement 1e-6.
        let w = params(
            1.4,
            psd(2, &[0.8, 0.3, 0.3, 0.5]),
            psd(2, &[1.1, -0.2, -0.2, 0.7]),
        );
        let h = 1e-5;
        let mean = w.mean();
        for i in 0..2 {
            for j in i..2 {
                let mut dir = SymMatrix::zeros(2);
                dir.set_sym(i, j, 1.0);
                let plus = w.log_laplace_sym(&dir.scale(h)).unwrap();
                let minus = w.log_laplace_sym(&dir.scale(-h)).unwrap();
                let fd = -(plus - minus) / (2.0 * h);
                let expected = if i == j {
                    mean.at(i, i)
                } else {
                    2.0 * mean.at(i, j)
                };
                assert!(
                    (fd - expected).abs() < 1e-6,
                    "entry ({i},{j}): fd {fd} vs formula {expected}"
                );
            }
        }
    }

    #[test]
    fn pushforward_identity_and_scalar() {
        let w = params(0.9, psd(1, &[0.4]), psd(1, &[1.0]));
        let g = GeneralMatrix::from_rows(1, &[3.0]).unwrap();
        let pf = w.pushforward_congruence(&g).unwrap();
        assert!((pf.omega().at(0, 0) - 3.6).abs() < 1e-14);
        assert!((pf.sigma().at(0, 0) - 9.0).abs() < 1e-14);

        let id = GeneralMatrix::identity(1);
        let same = w.pushforward_congruence(&id).unwrap();
        assert_eq!(same.omega().at(0, 0), w.omega().at(0, 0));
    }

    #[test]
    fn pushforward_transform_contract() {
        let w = params(
            0.75,
            psd(2, &[0.5, 0.1, 0.1, 0.3]),
            psd(2, &[1.0, 0.2, 0.2, 0.6]),
        );
        let g = GeneralMatrix::from_rows(2, &[1.2, -0.4, 0.3, 0.9]).unwrap();
        let pf = w.pushforward_congruence(&g).unwrap();
        let u = psd(2, &[0.7, 0.2, 0.2, 0.9]);
        let lhs = pf.log_laplace_sym(u.base()).unwrap();
        let pulled = u.base().congruence(&g.transpose());
        let rhs = w.log_laplace_sym(&pulled).unwrap();
        assert!((lhs - rhs).abs() < 1e-10 * lhs.abs().max(1.0));
    }

    #[test]
    fn pushforward_rejects_singular() {
        let w = params(1.0, PsdMatrix::zeros(2), PsdMatrix::identity(2));
        let g = GeneralMatrix::from_rows(2, &[1.0, 2.0, 2.0, 4.0]).unwrap();
        assert!(matches!(
            w.pushforward_congruence(&g),
            Err(WishartError::Singular { .. })
        ));
    }

    #[test]
    fn tilt_scalar_example() {
        // d=1, p=1, ω=1, target σ=2 → v = −1/2, c = 1, result Γ(1, 4; 2).
        let w = params(1.0, psd(1, &[1.0]), PsdMatrix::identity(1));
        let target = psd(1, &[2.0]);
        let (tilted, tilt) = w.tilt_from_identity_scale(&target).unwrap();
        assert!((tilt.v.at(0, 0) + 0.5).abs() < 1e-14);
        assert!((tilt.c - 1.0).abs() < 1e-14);
        assert!((tilted.omega().at(0, 0) - 4.0).abs() < 1e-13);
        assert!((tilted.sigma().at(0, 0) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn tilt_identity_target_is_noop() {
        let w = params(0.5, psd(2, &[0.3, 0.0, 0.0, 0.2]), PsdMatrix::identity(2));
        let (tilted, tilt) = w.tilt_from_identity_scale(&PsdMatrix::identity(2)).unwrap();
        assert_eq!(tilt.v.max_abs(), 0.0);
        assert_eq!(tilt.c, 0.0);
        assert!(tilted.omega().base().max_abs_diff(w.omega().base()) < 1e-14);
    }

    #[test]
    fn tilt_ratio_contract() {
        let w = params(1.1, psd(2, &[0.6, 0.2, 0.2, 0.4]), PsdMatrix::identity(2));
        let target = psd(2, &[1.4, 0.3, 0.3, 0.8]);
        let (tilted, tilt) = w.tilt_from_identity_scale(&target).unwrap();
        let u = psd(2, &[0.5, -0.1, -0.1, 0.7]);
        let lhs = w.log_laplace_sym(&u.base().add(&tilt.v)).unwrap()
            - w.log_laplace_sym(&tilt.v).unwrap();
        let rhs = tilted.log_laplace_sym(u.base()).unwrap();
        assert!((lhs - rhs).abs() < 1e-10 * rhs.abs().max(1.0));
    }

    #[test]
    fn tilt_requires_identity_base() {
        let w = params(1.0, PsdMatrix::zeros(2), psd(2, &[2.0, 0.0, 0.0, 1.0]));
        assert!(matches!(
            w.tilt_from_identity_scale(&PsdMatrix::identity(2)),
            Err(WishartError::Precondition(_))
        ));
    }

    #[test]
    fn convolve_identity_element_and_product() {
        let a = params(0.9, psd(2, &[0.5, 0.1, 0.1, 0.2]), PsdMatrix::identity(2));
        let trivial = params(0.0, PsdMatrix::zeros(2), PsdMatrix::identity(2));
        let c = a.convolve(&trivial).unwrap();
        assert_eq!(c.p(), a.p());
        assert!(c.omega().base().max_abs_diff(a.omega().base()) < 1e-15);

        let b = params(1.4, psd(2, &[0.3, 0.0, 0.0, 0.6]), PsdMatrix::identity(2));
        let c = a.convolve(&b).unwrap();
        let u = psd(2, &[0.8, 0.3, 0.3, 0.7]);
        let log_prod = a.log_laplace_sym(u.base()).unwrap() + b.log_laplace_sym(u.base()).unwrap();
        let log_conv = c.log_laplace_sym(u.base()).unwrap();
        assert!((log_prod - log_conv).abs() < 1e-12 * log_conv.abs().max(1.0));

        // Central ⋆ central: shapes add.
        let c0 = WishartParams::central(0.7, PsdMatrix::identity(2)).unwrap();
        let c1 = WishartParams::central(1.1, PsdMatrix::identity(2)).unwrap();
        let cc = c0.convolve(&c1).unwrap();
        assert!((cc.p() - 1.8).abs() < 1e-15);
        assert_eq!(cc.omega().base().max_abs(), 0.0);
    }

    #[test]
    fn convolve_rejects_mismatched_scale() {
        let a = params(1.0, PsdMatrix::zeros(2), PsdMatrix::identity(2));
        let b = params(1.0, PsdMatrix::zeros(2), psd(2, &[2.0, 0.0, 0.0, 1.0]));
        assert!(matches!(a.convolve(&b), Err(WishartError::Precondition(_))));
    }

    #[test]
    fn scale_noncentrality_examples() {
        let w = params(
            0.5,
            PsdMatrix::diag(&[1.0, 0.0]).unwrap(),
            PsdMatrix::identity(2),
        );
        let unchanged = w.scale_noncentrality(1.0).unwrap();
        assert_eq!(unchanged.omega().base().max_abs_diff(w.omega().base()), 0.0);
        let s = w.scale_noncentrality(2.0).unwrap();
        assert_eq!(s.omega().at(0, 0), 2.0);
        assert!(w.scale_noncentrality(0.0).is_err());
        assert!(w.scale_noncentrality(-1.0).is_err());
        // Verdict is rank-driven, hence invariant.
        assert_eq!(w.verdict().unwrap(), s.verdict().unwrap());
    }

    #[test]
    fn letac_round_trip_scalar() {
        let w = params(1.0, psd(1, &[8.0]), psd(1, &[2.0]));
        let lp = w.to_letac().unwrap();
        assert!((lp.a.at(0, 0) - 2.0).abs() < 1e-13);
        let back = WishartParams::from_letac(&lp).unwrap();
        assert!((back.omega().at(0, 0) - 8.0).abs() < 1e-12);
    }

    #[test]
    fn letac_identity_scale() {
        let w = params(1.0, psd(2, &[0.5, 0.2, 0.2, 0.9]), PsdMatrix::identity(2));
        let lp = w.to_letac().unwrap();
        assert!(lp.a.base().max_abs_diff(w.omega().base()) < 1e-13);
    }

    #[test]
    fn letac_rejects_singular_scale() {
        let w = params(
            1.0,
            PsdMatrix::zeros(2),
            PsdMatrix::diag(&[1.0, 0.0]).unwrap(),
        );
        assert!(matches!(w.to_letac(), Err(WishartError::Singular { .. })));
    }

    #[test]
    fn gupta_nagar_central_and_identity_scale() {
        let gn = GuptaNagarParams::new(3.0, PsdMatrix::identity(2), SymMatrix::zeros(2)).unwrap();
        let w = WishartParams::from_gupta_nagar(&gn).unwrap();
        assert_eq!(w.p(), 1.5);
        assert_eq!(w.omega().base().max_abs(), 0.0);
        assert!((w.sigma().at(0, 0) - 2.0).abs() < 1e-15);

        // Σ = I/2 ⇒ σ = I and ω = Θ/2.
        let theta = SymMatrix::from_rows(2, &[0.8, 0.2, 0.2, 0.4]).unwrap();
        let gn = GuptaNagarParams::new(
            2.0,
            PsdMatrix::trusted(SymMatrix::identity(2).scale(0.5)),
            theta.clone(),
        )
        .unwrap();
        let w = WishartParams::from_gupta_nagar(&gn).unwrap();
        assert!(w.omega().base().max_abs_diff(&theta.scale(0.5)) < 1e-14);
    }

    #[test]
    fn gupta_nagar_transform_contract() {
        let scale = psd(2, &[0.9, 0.15, 0.15, 0.55]);
        let theta = psd(2, &[0.7, 0.2, 0.2, 0.5]);
        let gn = GuptaNagarParams::new(2.6, scale, theta.base().clone()).unwrap();
        let w = WishartParams::from_gupta_nagar(&gn).unwrap();
        let u = psd(2, &[0.6, -0.2, -0.2, 0.8]);
        let ours = w.log_laplace_sym(u.base()).unwrap();
        let theirs = gn.log_transform(&u).unwrap();
        assert!((ours - theirs).abs() < 1e-12 * ours.abs().max(1.0));
    }

    #[test]
    fn project_degenerate_block() {
        let sigma = PsdMatrix::diag(&[0.0, 1.0]).unwrap();
        let w = params(1.0, PsdMatrix::identity(2), sigma);
        let block = w.project_degenerate(1).unwrap();
        assert_eq!(block.dim(), 1);
        assert_eq!(block.at(0, 0), 1.0);

        let zero_omega = params(
            1.0,
            PsdMatrix::zeros(2),
            PsdMatrix::diag(&[0.0, 1.0]).unwrap(),
        );
        assert_eq!(zero_omega.project_degenerate(1).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn project_degenerate_rejects_unaligned() {
        let sigma = psd(2, &[0.5, 0.5, 0.5, 0.5]);
        let w = params(1.0, PsdMatrix::zeros(2), sigma);
        assert!(matches!(
            w.project_degenerate(1),
            Err(WishartError::Precondition(_))
        ));
    }

    #[test]
    fn composition_coherence_of_pushforwards() {
        let w = params(
            0.6,
            psd(2, &[0.4, 0.1, 0.1, 0.3]),
            psd(2, &[1.0, 0.3, 0.3, 0.7]),
        );
        let g = GeneralMatrix::from_rows(2, &[1.0, 0.5, -0.2, 0.8]).unwrap();
        let h = GeneralMatrix::from_rows(2, &[0.9, -0.1, 0.4, 1.1]).unwrap();
        let seq = w
            .pushforward_congruence(&g)
            .unwrap()
            .pushforward_congruence(&h)
            .unwrap();
        let combined = w.pushforward_congruence(&h.mul(&g)).unwrap();
        assert!(seq.omega().base().max_abs_diff(combined.omega().base()) < 1e-12);
        assert!(seq.sigma().base().max_abs_diff(combined.sigma().base()) < 1e-12);
    }
}
