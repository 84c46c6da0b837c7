//! Sampling of Wishart laws — exact where the quadratic and triangular
//! constructions reach, SDE-approximate elsewhere — plus path simulation and
//! the empirical-transform verification harness.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};

use crate::error::{Result, WishartError};
use crate::existence::{drift_condition_check, ExistenceStatus, HALF_INTEGER_TOL};
use crate::process::{ProcessMode, WishartProcessParams};
use crate::symcone::{
    chol_psd, psd_sqrt, rank_psd_default, sym_eig, GeneralMatrix, PsdMatrix, SymMatrix, RANK_TOL,
};
use crate::wishart::WishartParams;

/// Euler discretization default, per unit of time.
pub const EULER_STEPS_PER_UNIT_TIME: usize = 400;

/// Generator behind every random draw in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RngAlgorithm {
    ChaCha12,
}

impl RngAlgorithm {
    pub fn tag(&self) -> &'static str {
        match self {
            RngAlgorithm::ChaCha12 => "chacha12",
        }
    }
}

/// Seedable deterministic random stream. Identical (seed, stream) replays
/// the identical draw sequence on a given build; distinct stream indices are
/// mapped to the cipher's independent stream counters, so substreams never
/// overlap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RngState {
    pub algorithm: RngAlgorithm,
    pub seed: u64,
    pub stream: u64,
}

impl RngState {
    pub fn from_seed(seed: u64) -> Self {
        Self {
            algorithm: RngAlgorithm::ChaCha12,
            seed,
            stream: 0,
        }
    }

    /// Substream with a distinct stream index, independent of every other
    /// index under the same seed.
    pub fn substream(&self, index: u64) -> Self {
        Self {
            stream: index,
            ..*self
        }
    }

    pub fn rng(&self) -> ChaCha12Rng {
        let mut rng = ChaCha12Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}

/// Gaussian factor of the quadratic construction: Y ~ N(m, Σ) with Σ = σ/2,
/// contributing the rank-one summand YYᵀ.
#[derive(Debug, Clone)]
pub struct GaussianFactor {
    mean: Vec<f64>,
    covariance: PsdMatrix,
}

impl GaussianFactor {
    pub fn new(mean: Vec<f64>, covariance: PsdMatrix) -> Result<Self> {
        if mean.len() != covariance.dim() {
            return Err(WishartError::DimensionMismatch {
                left: mean.len(),
                right: covariance.dim(),
            });
        }
        Ok(Self { mean, covariance })
    }

    pub fn mean(&self) -> &[f64] {
        &self.mean
    }

    pub fn covariance(&self) -> &PsdMatrix {
        &self.covariance
    }
}

/// How a sample was produced: an exact construction, or the Euler fallback.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleMethod {
    Exact,
    EulerApproximate,
}

impl SampleMethod {
    pub fn tag(&self) -> &'static str {
        match self {
            SampleMethod::Exact => "exact",
            SampleMethod::EulerApproximate => "euler-approximate",
        }
    }
}

/// Simulated path on the uniform grid 0, h, 2h, …, T.
#[derive(Debug, Clone)]
pub struct SamplePath {
    pub times: Vec<f64>,
    pub states: Vec<PsdMatrix>,
    pub x0: PsdMatrix,
    pub params: WishartProcessParams,
    pub step: f64,
}

fn gaussian_vector<R: Rng>(mean: &[f64], chol: &GeneralMatrix, rng: &mut R) -> Vec<f64> {
    let d = mean.len();
    let g: Vec<f64> = (0..d).map(|_| StandardNormal.sample(rng)).collect();
    let mut y = chol.apply(&g);
    for i in 0..d {
        y[i] += mean[i];
    }
    y
}

/// Draw YYᵀ with Y ~ N(m, Σ); the result has rank ≤ 1 and law
/// Γ(1/2, mmᵀ; 2Σ).
pub fn sample_rank_one<R: Rng>(factor: &GaussianFactor, rng: &mut R) -> Result<PsdMatrix> {
    let chol = chol_psd(factor.covariance())?;
    let y = gaussian_vector(factor.mean(), &chol, rng);
    Ok(PsdMatrix::trusted(SymMatrix::outer(&y)))
}

/// Exact sampler for half-integer shapes: 2p independent Gaussian factors
/// whose mean outer products decompose ω, so the law is supported on
/// matrices of rank ≤ 2p.
pub fn sample_halfinteger<R: Rng>(params: &WishartParams, rng: &mut R) -> Result<PsdMatrix> {
    let two_p = (2.0 * params.p()).round();
    if (2.0 * params.p() - two_p).abs() > HALF_INTEGER_TOL || two_p < 0.0 {
        return Err(WishartError::Precondition(format!(
            "half-integer sampler needs 2p integer, got p = {}",
            params.p()
        )));
    }
    let factors = two_p as usize;
    let d = params.dim();
    let rank = rank_psd_default(params.omega())?;
    if rank > factors {
        return Err(WishartError::Precondition(format!(
            "rank(ω) = {rank} exceeds 2p = {factors}; consult the existence verdict"
        )));
    }

    let means = mean_split(params.omega(), rank)?;
    let chol = chol_psd(&PsdMatrix::trusted(params.sigma().base().scale(0.5)))?;
    let zero = vec![0.0; d];
    let mut acc = SymMatrix::zeros(d);
    for k in 0..factors {
        let mean = means.get(k).map(Vec::as_slice).unwrap_or(&zero);
        let y = gaussian_vector(mean, &chol, rng);
        acc = acc.add(&SymMatrix::outer(&y));
    }
    Ok(PsdMatrix::trusted(acc))
}

/// ω = Σ mᵢmᵢᵀ over the leading eigenpairs; near-null directions are
/// dropped, which only adds central mass.
fn mean_split(omega: &PsdMatrix, rank: usize) -> Result<Vec<Vec<f64>>> {
    let eig = sym_eig(omega.base())?;
    let d = omega.dim();
    let cut = RANK_TOL * eig.values.first().copied().unwrap_or(0.0).max(1.0);
    let mut means = Vec::with_capacity(rank);
    for (k, &lambda) in eig.values.iter().enumerate().take(rank) {
        if lambda <= cut {
            break;
        }
        let root = lambda.sqrt();
        means.push((0..d).map(|i| root * eig.vectors.at(i, k)).collect());
    }
    Ok(means)
}

/// Central sampler through the triangular construction, valid for shapes
/// q ≥ (d−1)/2. The i-th diagonal entry squares to a Gamma(q − (i−1)/2, 2)
/// draw; at the boundary shape the last degree hits zero and the samples
/// land on the singular matrices.
pub fn sample_central_bartlett<R: Rng>(
    q: f64,
    sigma: &PsdMatrix,
    rng: &mut R,
) -> Result<PsdMatrix> {
    let d = sigma.dim();
    if !drift_condition_check(d, q) {
        return Err(WishartError::Precondition(format!(
            "triangular construction needs q ≥ (d-1)/2, got q = {q}, d = {d}"
        )));
    }
    let l = chol_psd(&PsdMatrix::trusted(sigma.base().scale(0.5)))?;
    let mut t = GeneralMatrix::zeros(d);
    for i in 0..d {
        let shape = q - i as f64 / 2.0;
        let diag = if shape <= 1e-12 {
            0.0
        } else {
            let gamma = Gamma::new(shape, 2.0).map_err(|e| {
                WishartError::NumericalFailure(format!("gamma sampler rejected shape {shape}: {e}"))
            })?;
            gamma.sample(rng).sqrt()
        };
        t.set(i, i, diag);
        for j in 0..i {
            t.set(i, j, StandardNormal.sample(rng));
        }
    }
    let half = l.mul(&t);
    Ok(PsdMatrix::trusted(SymMatrix::symmetrized(
        &half.mul(&half.transpose()),
    )))
}

/// Sample Γ(p, ω; σ) when it exists: exactly when the shape splits as
/// p = rank(ω)/2 + q with a reachable central remainder q, otherwise through
/// the Euler scheme on the process that reproduces the law at time one.
pub fn sample_noncentral<R: Rng>(
    params: &WishartParams,
    rng: &mut R,
) -> Result<(PsdMatrix, SampleMethod)> {
    let verdict = params.verdict()?;
    if verdict.status != ExistenceStatus::Exists {
        return Err(WishartError::SamplingRefused {
            status: verdict.status.to_string(),
            rule: verdict.rule,
        });
    }
    let d = params.dim();
    let n = rank_psd_default(params.omega())?;
    let q = params.p() - n as f64 / 2.0;

    if q.abs() <= HALF_INTEGER_TOL {
        return Ok((sample_halfinteger(params, rng)?, SampleMethod::Exact));
    }
    if q > 0.0 {
        let bartlett_ok = drift_condition_check(d, q);
        let halfint_ok = (2.0 * q - (2.0 * q).round()).abs() <= HALF_INTEGER_TOL;
        if bartlett_ok || halfint_ok {
            let noncentral = sample_halfinteger(
                &WishartParams::new(
                    n as f64 / 2.0,
                    params.omega().clone(),
                    params.sigma().clone(),
                )?,
                rng,
            )?;
            let central = if bartlett_ok {
                sample_central_bartlett(q, params.sigma(), rng)?
            } else {
                sample_halfinteger(&WishartParams::central(q, params.sigma().clone())?, rng)?
            };
            return Ok((
                PsdMatrix::trusted(noncentral.base().add(central.base())),
                SampleMethod::Exact,
            ));
        }
    }

    // Euler fallback: the process with β = 0, α = σ/(2T), started at ω,
    // has law Γ(p, ω; σ) at time T.
    let t_end = 1.0;
    if !drift_condition_check(d, params.p()) {
        return Err(WishartError::UnsupportedParameter(format!(
            "no exact construction reaches p = {}, and the SDE fallback needs p ≥ (d-1)/2",
            params.p()
        )));
    }
    let alpha = PsdMatrix::trusted(params.sigma().base().scale(1.0 / (2.0 * t_end)));
    let process = WishartProcessParams::new(params.p(), alpha, GeneralMatrix::zeros(d))?;
    let steps = (EULER_STEPS_PER_UNIT_TIME as f64 * t_end).ceil() as usize;
    let path = sde_euler_path(&process, params.omega(), t_end, steps, rng)?;
    let last = path
        .states
        .last()
        .expect("path has at least the initial state")
        .clone();
    Ok((last, SampleMethod::EulerApproximate))
}

/// Euler–Maruyama simulation of dX = √X dB Q + Qᵀ dBᵀ √X + (2pα + βX + Xβᵀ)dt
/// with QᵀQ = α, projecting back onto the cone by eigenvalue clipping after
/// each step.
pub fn sde_euler_path<R: Rng>(
    params: &WishartProcessParams,
    x0: &PsdMatrix,
    t_end: f64,
    steps: usize,
    rng: &mut R,
) -> Result<SamplePath> {
    if params.mode() != ProcessMode::Strict {
        return Err(WishartError::Precondition(
            "only strict-mode processes exist; formal parameters cannot be simulated".into(),
        ));
    }
    if x0.dim() != params.dim() {
        return Err(WishartError::DimensionMismatch {
            left: x0.dim(),
            right: params.dim(),
        });
    }
    if steps == 0 {
        return Err(WishartError::Precondition(
            "simulation needs at least one step".into(),
        ));
    }
    if t_end < 0.0 || t_end.is_nan() {
        return Err(WishartError::InvalidParameter(format!(
            "horizon {t_end} must be ≥ 0"
        )));
    }
    if t_end == 0.0 {
        return Ok(SamplePath {
            times: vec![0.0],
            states: vec![x0.clone()],
            x0: x0.clone(),
            params: params.clone(),
            step: 0.0,
        });
    }

    let d = params.dim();
    let h = t_end / steps as f64;
    let sqrt_h = h.sqrt();
    let q = chol_psd(params.alpha())?.transpose();
    let drift_const = params.constant_drift().to_general();
    let beta = params.beta().clone();
    let beta_t = beta.transpose();

    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    times.push(0.0);
    states.push(x0.clone());

    let mut x = x0.clone();
    for k in 0..steps {
        let root = psd_sqrt(&x)?;
        let mut db = GeneralMatrix::zeros(d);
        for i in 0..d {
            for j in 0..d {
                let g: f64 = StandardNormal.sample(rng);
                db.set(i, j, g * sqrt_h);
            }
        }
        let noise = root.to_general().mul(&db).mul(&q);
        let xg = x.to_general();
        let drift = drift_const
            .add(&beta.mul(&xg))
            .add(&xg.mul(&beta_t))
            .scale(h);
        let next = xg.add(&noise).add(&noise.transpose()).add(&drift);
        let (projected, _clipped) = PsdMatrix::repair(&SymMatrix::symmetrized(&next))?;
        x = projected;
        times.push(h * (k + 1) as f64);
        states.push(x.clone());
    }
    Ok(SamplePath {
        times,
        states,
        x0: x0.clone(),
        params: params.clone(),
        step: h,
    })
}

/// Sample mean and standard error of e^{−⟨u, ξ⟩} over the sample set.
pub fn empirical_laplace(samples: &[PsdMatrix], u: &PsdMatrix) -> Result<(f64, f64)> {
    if samples.is_empty() {
        return Err(WishartError::Precondition(
            "empirical transform of an empty sample".into(),
        ));
    }
    let n = samples.len() as f64;
    let values: Vec<f64> = samples
        .iter()
        .map(|s| (-u.base().dot(s.base())).exp())
        .collect();
    let mean = values.iter().sum::<f64>() / n;
    if samples.len() == 1 {
        return Ok((mean, 0.0));
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    Ok((mean, (var / n).sqrt()))
}

/// Gaussian-entry matrix scaled by `scale`.
pub fn random_general<R: Rng>(d: usize, scale: f64, rng: &mut R) -> GeneralMatrix {
    let mut m = GeneralMatrix::zeros(d);
    for i in 0..d {
        for j in 0..d {
            let g: f64 = StandardNormal.sample(rng);
            m.set(i, j, scale * g);
        }
    }
    m
}

pub fn random_sym<R: Rng>(d: usize, scale: f64, rng: &mut R) -> SymMatrix {
    SymMatrix::symmetrized(&random_general(d, scale, rng))
}

/// Random PSD draw AᵀA/d at the requested scale.
pub fn random_psd<R: Rng>(d: usize, scale: f64, rng: &mut R) -> PsdMatrix {
    let a = random_general(d, 1.0, rng);
    let m = SymMatrix::symmetrized(&a.transpose().mul(&a)).scale(scale / d as f64);
    PsdMatrix::trusted(m)
}

/// Random PSD direction with unit Frobenius norm.
pub fn random_psd_direction<R: Rng>(d: usize, rng: &mut R) -> PsdMatrix {
    loop {
        let p = random_psd(d, 1.0, rng);
        let norm = p.base().frobenius_norm();
        if norm > 1e-8 {
            return PsdMatrix::trusted(p.base().scale(1.0 / norm));
        }
    }
}

/// Random positive definite draw with spectrum bounded away from zero.
pub fn random_pd<R: Rng>(d: usize, scale: f64, rng: &mut R) -> PsdMatrix {
    let p = random_psd(d, scale, rng);
    PsdMatrix::trusted(p.base().add(&SymMatrix::identity(d).scale(0.2 * scale)))
}

/// Haar-ish orthogonal matrix from the QR factorization of a Gaussian draw.
pub fn random_orthogonal<R: Rng>(d: usize, rng: &mut R) -> GeneralMatrix {
    let a = random_general(d, 1.0, rng);
    let (q, _r) = crate::symcone::householder_qr(&a);
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rng_streams_are_deterministic_and_distinct() {
        let state = RngState::from_seed(42);
        let a: Vec<f64> = state.rng().sample_iter(StandardNormal).take(8).collect();
        let b: Vec<f64> = state.rng().sample_iter(StandardNormal).take(8).collect();
        assert_eq!(a, b);
        let c: Vec<f64> = state
            .substream(1)
            .rng()
            .sample_iter(StandardNormal)
            .take(8)
            .collect();
        assert_ne!(a, c);
    }

    #[test]
    fn rank_one_zero_covariance_is_deterministic() {
        let factor = GaussianFactor::new(vec![1.0, -2.0], PsdMatrix::zeros(2)).unwrap();
        let mut rng = RngState::from_seed(7).rng();
        let x = sample_rank_one(&factor, &mut rng).unwrap();
        let expected = SymMatrix::outer(&[1.0, -2.0]);
        assert!(x.base().max_abs_diff(&expected) < 1e-14);
    }

    #[test]
    fn rank_one_output_rank() {
        let factor = GaussianFactor::new(vec![0.5, 0.0, -0.3], PsdMatrix::identity(3)).unwrap();
        let mut rng = RngState::from_seed(3).rng();
        for _ in 0..50 {
            let x = sample_rank_one(&factor, &mut rng).unwrap();
            assert!(rank_psd_default(&x).unwrap() <= 1);
        }
    }

    #[test]
    fn rank_one_scalar_mean() {
        // m=0, d=1, σ=2: squared standard normal, mean 1 = pσ + ω.
        let factor = GaussianFactor::new(vec![0.0], PsdMatrix::diag(&[1.0]).unwrap()).unwrap();
        let mut rng = RngState::from_seed(11).rng();
        let n = 40_000;
        let mut acc = 0.0;
        for _ in 0..n {
            acc += sample_rank_one(&factor, &mut rng).unwrap().at(0, 0);
        }
        let mean = acc / n as f64;
        assert!((mean - 1.0).abs() < 0.05, "empirical mean {mean}");
    }

    #[test]
    fn halfinteger_reduces_to_rank_one() {
        let omega = PsdMatrix::new(SymMatrix::outer(&[0.6, -0.2])).unwrap();
        let params = WishartParams::new(0.5, omega, PsdMatrix::identity(2)).unwrap();
        let mut rng = RngState::from_seed(5).rng();
        let x = sample_halfinteger(&params, &mut rng).unwrap();
        assert!(rank_psd_default(&x).unwrap() <= 1);
    }

    #[test]
    fn halfinteger_rejects_bad_shape_or_rank() {
        let params = WishartParams::new(0.7, PsdMatrix::zeros(2), PsdMatrix::identity(2)).unwrap();
        let mut rng = RngState::from_seed(1).rng();
        assert!(matches!(
            sample_halfinteger(&params, &mut rng),
            Err(WishartError::Precondition(_))
        ));
        let full = PsdMatrix::identity(2);
        let params = WishartParams::new(0.5, full, PsdMatrix::identity(2)).unwrap();
        assert!(matches!(
            sample_halfinteger(&params, &mut rng),
            Err(WishartError::Precondition(_))
        ));
    }

    #[test]
    fn bartlett_boundary_shape_is_singular() {
        // q = (d−1)/2: the last chi-square degree is zero.
        let sigma = PsdMatrix::identity(3);
        let mut rng = RngState::from_seed(9).rng();
        for _ in 0..20 {
            let x = sample_central_bartlett(1.0, &sigma, &mut rng).unwrap();
            assert!(rank_psd_default(&x).unwrap() <= 2);
        }
    }

    #[test]
    fn bartlett_rejects_below_threshold() {
        let mut rng = RngState::from_seed(2).rng();
        assert!(matches!(
            sample_central_bartlett(0.7, &PsdMatrix::identity(3), &mut rng),
            Err(WishartError::Precondition(_))
        ));
    }

    #[test]
    fn bartlett_scalar_mean() {
        // d=1, q=1, σ=2: Gamma(1, 2) law, mean 2 = qσ.
        let mut rng = RngState::from_seed(13).rng();
        let n = 40_000;
        let sigma = PsdMatrix::diag(&[2.0]).unwrap();
        let mut acc = 0.0;
        for _ in 0..n {
            acc += sample_central_bartlett(1.0, &sigma, &mut rng)
                .unwrap()
                .at(0, 0);
        }
        let mean = acc / n as f64;
        assert!((mean - 2.0).abs() < 0.1, "empirical mean {mean}");
    }

    #[test]
    fn noncentral_dispatch() {
        let mut rng = RngState::from_seed(17).rng();
        // ω = 0, p ≥ (d−1)/2: pure central, exact.
        let central = WishartParams::central(1.6, PsdMatrix::identity(3)).unwrap();
        let (_, method) = sample_noncentral(&central, &mut rng).unwrap();
        assert_eq!(method, SampleMethod::Exact);

        // d=3, p=3/2, rank ω=1: n=1, q=1, exact path.
        let omega = PsdMatrix::new(SymMatrix::outer(&[1.0, 0.0, 0.5])).unwrap();
        let params = WishartParams::new(1.5, omega, PsdMatrix::identity(3)).unwrap();
        let (_, method) = sample_noncentral(&params, &mut rng).unwrap();
        assert_eq!(method, SampleMethod::Exact);

        // d=3, p=1, ω full rank: q = −1/2, fallback.
        let params =
            WishartParams::new(1.0, PsdMatrix::identity(3), PsdMatrix::identity(3)).unwrap();
        let (_, method) = sample_noncentral(&params, &mut rng).unwrap();
        assert_eq!(method, SampleMethod::EulerApproximate);
    }

    #[test]
    fn noncentral_refuses_bad_verdicts() {
        let mut rng = RngState::from_seed(23).rng();
        // d=3, p=1/2, rank ω = 3: NotExists.
        let params =
            WishartParams::new(0.5, PsdMatrix::identity(3), PsdMatrix::identity(3)).unwrap();
        assert!(matches!(
            sample_noncentral(&params, &mut rng),
            Err(WishartError::SamplingRefused { .. })
        ));
        // Trivial point mass is refused here too; callers special-case it.
        let trivial = WishartParams::central(0.0, PsdMatrix::identity(2)).unwrap();
        assert!(matches!(
            sample_noncentral(&trivial, &mut rng),
            Err(WishartError::SamplingRefused { .. })
        ));
    }

    #[test]
    fn euler_path_degenerate_cases() {
        let proc =
            WishartProcessParams::new(1.0, PsdMatrix::zeros(2), GeneralMatrix::zeros(2)).unwrap();
        let x0 = PsdMatrix::identity(2);
        let mut rng = RngState::from_seed(31).rng();
        // T = 0: the path is just the initial state.
        let path = sde_euler_path(&proc, &x0, 0.0, 10, &mut rng).unwrap();
        assert_eq!(path.states.len(), 1);
        // α = 0, β = 0: SDE collapses to a constant path.
        let path = sde_euler_path(&proc, &x0, 1.0, 16, &mut rng).unwrap();
        for s in &path.states {
            assert!(s.base().max_abs_diff(x0.base()) < 1e-14);
        }
        assert_eq!(path.times.len(), 17);
    }

    #[test]
    fn euler_path_rejects_formal_mode() {
        let proc =
            WishartProcessParams::new_formal(0.25, PsdMatrix::identity(2), GeneralMatrix::zeros(2))
                .unwrap();
        let mut rng = RngState::from_seed(37).rng();
        assert!(matches!(
            sde_euler_path(&proc, &PsdMatrix::identity(2), 1.0, 8, &mut rng),
            Err(WishartError::Precondition(_))
        ));
    }

    #[test]
    fn euler_path_reproducible() {
        let proc = WishartProcessParams::new(
            1.2,
            PsdMatrix::identity(2),
            GeneralMatrix::from_rows(2, &[0.1, 0.0, 0.2, -0.1]).unwrap(),
        )
        .unwrap();
        let x0 = PsdMatrix::identity(2);
        let run = |seed: u64| {
            let mut rng = RngState::from_seed(seed).rng();
            sde_euler_path(&proc, &x0, 0.5, 32, &mut rng).unwrap()
        };
        let a = run(99);
        let b = run(99);
        for (sa, sb) in a.states.iter().zip(&b.states) {
            assert_eq!(sa.base().entries(), sb.base().entries());
        }
    }

    #[test]
    fn empirical_laplace_edge_cases() {
        let xi = PsdMatrix::identity(2);
        let u = PsdMatrix::diag(&[0.3, 0.1]).unwrap();
        let (mean, se) = empirical_laplace(std::slice::from_ref(&xi), &u).unwrap();
        assert!((mean - (-0.4_f64).exp()).abs() < 1e-15);
        assert_eq!(se, 0.0);
        let (mean, se) = empirical_laplace(&[xi], &PsdMatrix::zeros(2)).unwrap();
        assert_eq!(mean, 1.0);
        assert_eq!(se, 0.0);
        assert!(empirical_laplace(&[], &u).is_err());
    }

    #[test]
    fn orthogonal_draw_is_orthogonal() {
        let mut rng = RngState::from_seed(41).rng();
        let q = random_orthogonal(4, &mut rng);
        let qtq = q.transpose().mul(&q);
        assert!(qtq.max_abs_diff(&GeneralMatrix::identity(4)) < 1e-12);
    }
}
