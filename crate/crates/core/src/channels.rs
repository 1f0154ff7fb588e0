//! SNR distributions of the two hops, analytic and sampled.
//!
//! RF hops (relay-to-ground, relay-to-eavesdropper) fade as shadowed-Rician:
//! a Rician channel whose line-of-sight amplitude is itself Nakagami-m
//! shadowed. For integer `m` the SNR density and distribution reduce to
//! finite sums:
//!
//! ```text
//! f(g) = sum_{k<m} alpha_z (1-m)_k (-delta_z)^k g^k / (gbar^(k+1) (k!)^2) exp(-lambda_z g)
//! F(g) = 1 - sum_{k<m} sum_{i<=k} alpha_z (1-m)_k (-delta_z)^k g^i
//!            / (i! lambda_z^(k-i+1) gbar^(k+1) k!) exp(-lambda_z g)
//! ```
//!
//! The optical hop fades as Gamma-Gamma turbulence with pointing errors; its
//! SNR law is expressed through Meijer G-functions. Each analytic law is
//! paired with a physical-model sampler ([`sample_sr`], [`sample_gg`]) that
//! serves as the Monte Carlo oracle: the sampler never touches the analytic
//! formulas, only the constructive channel definition.

use crate::error::{Error, Result};
use crate::rng::child_seed;
use crate::special::{delta_list, ln_gamma, meijer_g, pochhammer, MeijerGSpec};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma as GammaDist};

/// Noise tolerance accepted outside [0, 1] before clamping CDF values.
pub const CDF_NOISE_TOL: f64 = 1e-8;

/// Shadowing regime presets for the RF hops.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShadowingRegime {
    /// m = 1, b = 0.063, Omega = 8.94e-4.
    FrequentHeavy,
    /// m = 10, b = 0.126, Omega = 0.835.
    Average,
    /// m = 19, b = 0.158, Omega = 1.29.
    InfrequentLight,
}

impl ShadowingRegime {
    pub fn params(self) -> (u32, f64, f64) {
        match self {
            ShadowingRegime::FrequentHeavy => (1, 0.063, 8.94e-4),
            ShadowingRegime::Average => (10, 0.126, 0.835),
            ShadowingRegime::InfrequentLight => (19, 0.158, 1.29),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ShadowingRegime::FrequentHeavy => "fhs",
            ShadowingRegime::Average => "as",
            ShadowingRegime::InfrequentLight => "ils",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "fhs" => Ok(ShadowingRegime::FrequentHeavy),
            "as" => Ok(ShadowingRegime::Average),
            "ils" => Ok(ShadowingRegime::InfrequentLight),
            other => Err(Error::InvalidParameter(format!(
                "unknown shadowing regime '{other}' (expected fhs, as, or ils)"
            ))),
        }
    }
}

/// One shadowed-Rician RF hop.
#[derive(Debug, Clone, PartialEq)]
pub struct ShadowedRicianLink {
    m: u32,
    b: f64,
    omega: f64,
    gamma_bar: f64,
    // derived constants of the finite-sum forms
    alpha_z: f64,
    beta_z: f64,
    delta_z: f64,
    lambda_z: f64,
}

impl ShadowedRicianLink {
    /// `m >= 1` integer Nakagami shadowing parameter, `b > 0` half multipath
    /// power, `omega >= 0` LoS power, `gamma_bar > 0` average-SNR scale.
    pub fn new(m: u32, b: f64, omega: f64, gamma_bar: f64) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidParameter(
                "shadowed-Rician m must be a positive integer".into(),
            ));
        }
        if !(b > 0.0) {
            return Err(Error::InvalidParameter("multipath parameter b must be positive".into()));
        }
        if omega < 0.0 {
            return Err(Error::InvalidParameter("LoS power omega must be non-negative".into()));
        }
        if !(gamma_bar > 0.0) {
            return Err(Error::InvalidParameter("gamma_bar must be positive".into()));
        }
        let tb = 2.0 * b;
        let mf = m as f64;
        let alpha_z = (tb * mf / (tb * mf + omega)).powi(m as i32) / tb;
        let beta_z = 1.0 / tb;
        let delta_z = omega / (tb * (tb * mf + omega));
        let lambda_z = (beta_z - delta_z) / gamma_bar;
        debug_assert!(lambda_z > 0.0);
        Ok(ShadowedRicianLink {
            m,
            b,
            omega,
            gamma_bar,
            alpha_z,
            beta_z,
            delta_z,
            lambda_z,
        })
    }

    /// Reject non-integer `m` values coming from configuration files: the
    /// finite-sum SNR forms hold for integer `m` only.
    pub fn with_real_m(m: f64, b: f64, omega: f64, gamma_bar: f64) -> Result<Self> {
        if m.fract() != 0.0 || !(1.0..=1e6).contains(&m) {
            return Err(Error::InvalidParameter(format!(
                "shadowing parameter m = {m} must be a positive integer (finite-sum SNR forms)"
            )));
        }
        ShadowedRicianLink::new(m as u32, b, omega, gamma_bar)
    }

    pub fn from_regime(regime: ShadowingRegime, gamma_bar: f64) -> Result<Self> {
        let (m, b, omega) = regime.params();
        ShadowedRicianLink::new(m, b, omega, gamma_bar)
    }

    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn omega(&self) -> f64 {
        self.omega
    }
    pub fn gamma_bar(&self) -> f64 {
        self.gamma_bar
    }
    pub fn alpha_z(&self) -> f64 {
        self.alpha_z
    }
    pub fn beta_z(&self) -> f64 {
        self.beta_z
    }
    pub fn delta_z(&self) -> f64 {
        self.delta_z
    }
    pub fn lambda_z(&self) -> f64 {
        self.lambda_z
    }

    /// Same link at a different average SNR.
    pub fn with_gamma_bar(&self, gamma_bar: f64) -> Result<Self> {
        ShadowedRicianLink::new(self.m, self.b, self.omega, gamma_bar)
    }
}

/// SNR density of a shadowed-Rician hop.
pub fn sr_pdf(gamma: f64, link: &ShadowedRicianLink) -> f64 {
    if gamma < 0.0 {
        return 0.0;
    }
    let lg = link.lambda_z * gamma;
    if lg > 745.0 {
        return 0.0; // exp underflows past any representable density
    }
    let mut sum = 0.0;
    for k in 0..link.m {
        let kf = k as f64;
        let coeff = link.alpha_z * pochhammer(1.0 - link.m as f64, k) * (-link.delta_z).powi(k as i32)
            / (link.gamma_bar.powi(k as i32 + 1) * factorial(k) * factorial(k));
        sum += coeff * gamma.powf(kf);
    }
    sum * (-lg).exp()
}

/// SNR distribution function of a shadowed-Rician hop.
pub fn sr_cdf(gamma: f64, link: &ShadowedRicianLink) -> f64 {
    if gamma <= 0.0 {
        return 0.0;
    }
    let lg = link.lambda_z * gamma;
    if lg > 745.0 {
        return 1.0;
    }
    let mut sum = 0.0;
    for k in 0..link.m {
        let base = link.alpha_z * pochhammer(1.0 - link.m as f64, k) * (-link.delta_z).powi(k as i32)
            / (link.gamma_bar.powi(k as i32 + 1) * factorial(k));
        for i in 0..=k {
            sum += base * gamma.powf(i as f64)
                / (factorial(i) * link.lambda_z.powi((k - i) as i32 + 1));
        }
    }
    (1.0 - sum * (-lg).exp()).clamp(0.0, 1.0)
}

fn factorial(k: u32) -> f64 {
    let mut f = 1.0;
    for j in 2..=k {
        f *= j as f64;
    }
    f
}

/// Detection type of the optical receiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Detection {
    /// Heterodyne detection, `r = 1`.
    Heterodyne,
    /// Intensity modulation with direct detection, `r = 2`.
    IntensityModulation,
}

impl Detection {
    pub fn order(self) -> u32 {
        match self {
            Detection::Heterodyne => 1,
            Detection::IntensityModulation => 2,
        }
    }

    pub fn from_order(r: u32) -> Result<Self> {
        match r {
            1 => Ok(Detection::Heterodyne),
            2 => Ok(Detection::IntensityModulation),
            other => Err(Error::InvalidParameter(format!(
                "detection order r = {other} not supported (1 = HD, 2 = IM/DD)"
            ))),
        }
    }
}

/// The optical hop: Gamma-Gamma turbulence with pointing errors.
#[derive(Debug, Clone, PartialEq)]
pub struct FsoLink {
    alpha: f64,
    beta: f64,
    xi: f64,
    detection: Detection,
    mu_r: f64,
    // derived constants
    h: f64,
    big_b: f64,
    big_d: f64,
    k1: Vec<f64>,
    k2: Vec<f64>,
}

impl FsoLink {
    pub fn new(alpha: f64, beta: f64, xi: f64, detection: Detection, mu_r: f64) -> Result<Self> {
        if !(alpha > 0.0) || !(beta > 0.0) {
            return Err(Error::InvalidParameter(
                "turbulence severity parameters must be positive".into(),
            ));
        }
        if !(xi > 0.0) {
            return Err(Error::InvalidParameter(
                "pointing-error coefficient xi must be positive".into(),
            ));
        }
        if !(mu_r > 0.0) {
            return Err(Error::InvalidParameter("average SNR mu_r must be positive".into()));
        }
        let r = detection.order();
        let rf = r as f64;
        let xi2 = xi * xi;
        let h = xi2 / (xi2 + 1.0);
        // B = xi^2 r^(alpha+beta-2) / ((2 pi)^(r-1) Gamma(alpha) Gamma(beta))
        let ln_b = xi2.ln() + (alpha + beta - 2.0) * rf.ln()
            - (rf - 1.0) * (2.0 * std::f64::consts::PI).ln()
            - ln_gamma(alpha)?
            - ln_gamma(beta)?;
        let big_b = ln_b.exp();
        let big_d = (h * alpha * beta).powi(r as i32) / (mu_r * rf.powi(2 * r as i32));
        let mut k2 = delta_list(r, xi2);
        k2.extend(delta_list(r, alpha));
        k2.extend(delta_list(r, beta));
        Ok(FsoLink {
            alpha,
            beta,
            xi,
            detection,
            mu_r,
            h,
            big_b,
            big_d,
            k1: delta_list(r, xi2 + 1.0),
            k2,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn beta(&self) -> f64 {
        self.beta
    }
    pub fn xi(&self) -> f64 {
        self.xi
    }
    pub fn detection(&self) -> Detection {
        self.detection
    }
    pub fn r(&self) -> u32 {
        self.detection.order()
    }
    pub fn mu_r(&self) -> f64 {
        self.mu_r
    }
    /// Pointing-error mean factor `h = xi^2 / (xi^2 + 1)`.
    pub fn h(&self) -> f64 {
        self.h
    }
    pub fn big_b(&self) -> f64 {
        self.big_b
    }
    pub fn big_d(&self) -> f64 {
        self.big_d
    }
    pub fn k1(&self) -> &[f64] {
        &self.k1
    }
    pub fn k2(&self) -> &[f64] {
        &self.k2
    }

    /// Same link at a different average SNR.
    pub fn with_mu_r(&self, mu_r: f64) -> Result<Self> {
        FsoLink::new(self.alpha, self.beta, self.xi, self.detection, mu_r)
    }

    /// Scale the CDF argument constant `D`; verification hook for
    /// sensitivity checks, not part of the channel model.
    #[doc(hidden)]
    pub fn with_d_scale(mut self, scale: f64) -> Self {
        self.big_d *= scale;
        self
    }
}

/// SNR density of the optical hop.
pub fn gg_pdf(gamma: f64, link: &FsoLink) -> Result<f64> {
    if !(gamma > 0.0) {
        return Err(Error::Domain(format!("gg_pdf requires gamma > 0, got {gamma}")));
    }
    let r = link.r() as f64;
    let z = link.h * link.alpha * link.beta * (gamma / link.mu_r).powf(1.0 / r);
    let spec = MeijerGSpec::new(
        3,
        0,
        vec![link.xi * link.xi + 1.0],
        vec![link.xi * link.xi, link.alpha, link.beta],
        z,
    )?;
    let g = meijer_g(&spec)?;
    let ln_pre = (link.xi * link.xi).ln()
        - r.ln()
        - ln_gamma(link.alpha)?
        - ln_gamma(link.beta)?
        - gamma.ln();
    Ok((ln_pre.exp() * g).max(0.0))
}

/// SNR distribution function of the optical hop, `B G(D gamma | 1, k1; k2, 0)`.
pub fn gg_cdf(gamma: f64, link: &FsoLink) -> Result<f64> {
    if gamma < 0.0 {
        return Err(Error::Domain(format!("gg_cdf requires gamma >= 0, got {gamma}")));
    }
    if gamma == 0.0 {
        return Ok(0.0);
    }
    let r = link.r() as usize;
    let mut a = vec![1.0];
    a.extend_from_slice(&link.k1);
    let mut b = link.k2.clone();
    b.push(0.0);
    let spec = MeijerGSpec::new(3 * r, 1, a, b, link.big_d * gamma)?;
    let raw = link.big_b * meijer_g(&spec)?;
    clamp_probability(raw)
}

/// Clamp a probability within the accepted noise tolerance, erroring beyond.
pub fn clamp_probability(raw: f64) -> Result<f64> {
    if !(-CDF_NOISE_TOL..=1.0 + CDF_NOISE_TOL).contains(&raw) {
        return Err(Error::AccuracyLoss {
            value: raw,
            tol: CDF_NOISE_TOL,
        });
    }
    Ok(raw.clamp(0.0, 1.0))
}

/// Draw `n` SNR samples from the physical shadowed-Rician model: LoS power
/// Gamma(m, Omega/m), uniform LoS phase, complex Gaussian scatter of total
/// power 2b, SNR = gamma_bar * |A e^(j phi) + Z|^2.
///
/// Per sample the generator is consumed in the fixed order: LoS power, phase,
/// scatter real, scatter imaginary.
pub fn sample_sr(link: &ShadowedRicianLink, seed: u64, n: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(child_seed(seed, 0));
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(draw_sr(link, &mut rng));
    }
    out
}

pub(crate) fn draw_sr(link: &ShadowedRicianLink, rng: &mut ChaCha8Rng) -> f64 {
    let a2 = if link.omega > 0.0 {
        // Nakagami-m LoS amplitude: A^2 ~ Gamma(shape m, mean Omega)
        GammaDist::new(link.m as f64, link.omega / link.m as f64)
            .expect("validated parameters")
            .sample(rng)
    } else {
        rng.gen::<f64>(); // keep the stream layout fixed
        0.0
    };
    let phi = rng.gen::<f64>() * std::f64::consts::TAU;
    let sigma = link.b.sqrt();
    let (zr, zi) = (gauss(rng) * sigma, gauss(rng) * sigma);
    let a = a2.sqrt();
    let re = a * phi.cos() + zr;
    let im = a * phi.sin() + zi;
    link.gamma_bar * (re * re + im * im)
}

/// Draw `n` SNR samples from the physical Gamma-Gamma pointing-error model:
/// irradiance I = X Y U^(1/xi^2) with unit-mean Gamma factors X, Y and U
/// uniform on (0, 1]; SNR = mu_r (I / h)^r.
///
/// Per sample the generator order is: X, Y, U.
pub fn sample_gg(link: &FsoLink, seed: u64, n: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(child_seed(seed, 0));
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(draw_gg(link, &mut rng));
    }
    out
}

pub(crate) fn draw_gg(link: &FsoLink, rng: &mut ChaCha8Rng) -> f64 {
    let x = GammaDist::new(link.alpha, 1.0 / link.alpha)
        .expect("validated parameters")
        .sample(rng);
    let y = GammaDist::new(link.beta, 1.0 / link.beta)
        .expect("validated parameters")
        .sample(rng);
    let u = 1.0 - rng.gen::<f64>(); // (0, 1]
    let ip = u.powf(1.0 / (link.xi * link.xi));
    let i = x * y * ip;
    link.mu_r * (i / link.h).powi(link.r() as i32)
}

/// Box-Muller standard normal; two uniforms per call keeps the stream
/// layout independent of rand_distr internals.
fn gauss(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}
