//! End-to-end secrecy metrics of the relayed system.
//!
//! Decode-and-forward relaying makes the legitimate end-to-end SNR the
//! minimum of the optical and RF hop SNRs, so its distribution is
//!
//! ```text
//! F_0(g) = 1 - (1 - F_fso(g)) (1 - F_rf(g))
//! ```
//!
//! The secrecy outage probability is `Pr[C_s < R_s]` with threshold
//! `gamma_th = 2^(2 Rs)`; expanding the finite shadowed-Rician sums and
//! resolving the resulting Laplace-type integrals with Meijer-G identities
//! gives the closed form implemented in [`sop_closed`]. The defining
//! integrals are also evaluated directly by adaptive quadrature
//! ([`sop_quadrature`], [`ppsc_quadrature`]) as an internal cross-check
//! path; the two routes share no code beyond the hop CDFs.

use crate::channels::{
    clamp_probability, gg_cdf, sr_cdf, sr_pdf, FsoLink, ShadowedRicianLink,
};
use crate::error::{Error, Result};
use crate::quad;
use crate::special::{meijer_g, pochhammer, MeijerGSpec};
use std::cell::RefCell;

/// The full source -> relay -> destination system with an eavesdropper on
/// the RF side.
#[derive(Debug, Clone)]
pub struct SecrecySystem {
    pub fso: FsoLink,
    pub main_rf: ShadowedRicianLink,
    pub eve_rf: ShadowedRicianLink,
    rs: f64,
}

impl SecrecySystem {
    /// `rs >= 0` is the threshold secrecy rate; the outage threshold is
    /// `gamma_th = 2^(2 rs) >= 1`.
    pub fn new(
        fso: FsoLink,
        main_rf: ShadowedRicianLink,
        eve_rf: ShadowedRicianLink,
        rs: f64,
    ) -> Result<Self> {
        if !(rs >= 0.0) || !rs.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "threshold rate rs = {rs} must be non-negative"
            )));
        }
        Ok(SecrecySystem {
            fso,
            main_rf,
            eve_rf,
            rs,
        })
    }

    pub fn rs(&self) -> f64 {
        self.rs
    }

    pub fn gamma_th(&self) -> f64 {
        (2.0 * self.rs).exp2()
    }
}

/// CDF of the end-to-end (min of hops) SNR.
pub fn e2e_cdf(gamma: f64, sys: &SecrecySystem) -> Result<f64> {
    if gamma < 0.0 {
        return Err(Error::Domain(format!("e2e_cdf requires gamma >= 0, got {gamma}")));
    }
    if gamma == 0.0 {
        return Ok(0.0);
    }
    let f_fso = gg_cdf(gamma, &sys.fso)?;
    let f_rf = sr_cdf(gamma, &sys.main_rf);
    Ok(1.0 - (1.0 - f_fso) * (1.0 - f_rf))
}

fn factorial(k: u32) -> f64 {
    let mut f = 1.0;
    for j in 2..=k {
        f *= j as f64;
    }
    f
}

/// The triple finite sum common to the closed-form SOP and PPSC: the
/// no-outage mass at threshold `gamma_th`, i.e. `1 - P_SO(gamma_th)`.
///
/// The `G_{1,1}^{1,1}` factor of the first bracket term is evaluated through
/// its exact reduction `Gamma(q+t+1) (1 + z)^(-(q+t+1))`; a unit test ties
/// that reduction to the general evaluator.
fn survival_sum(sys: &SecrecySystem, gamma_th: f64) -> Result<f64> {
    let rd = &sys.main_rf;
    let re = &sys.eve_rf;
    let fso = &sys.fso;
    let r = fso.r() as usize;

    let eta = re.lambda_z() + rd.lambda_z() * gamma_th;
    let w = fso.big_d() * gamma_th / eta;

    // the big Meijer G depends on (q + t) only; cache across the triple sum
    let mut g_cache: Vec<Option<f64>> = vec![None; (rd.m() + re.m()) as usize];
    let mut eval_g = |qt: u32| -> Result<f64> {
        if let Some(v) = g_cache[qt as usize] {
            return Ok(v);
        }
        let mut a = vec![1.0, -(qt as f64)];
        a.extend_from_slice(fso.k1());
        let mut b = fso.k2().to_vec();
        b.push(0.0);
        let spec = MeijerGSpec::new(3 * r, 2, a, b, w)?;
        let v = meijer_g(&spec)?;
        g_cache[qt as usize] = Some(v);
        Ok(v)
    };

    let m_rd = rd.m() as f64;
    let m_re = re.m() as f64;
    let mut total = 0.0;
    for p in 0..rd.m() {
        let base_p = rd.alpha_z() * pochhammer(1.0 - m_rd, p) * (-rd.delta_z()).powi(p as i32)
            / (rd.gamma_bar().powi(p as i32 + 1) * factorial(p));
        for t in 0..=p {
            let c_pt = base_p / (factorial(t) * rd.lambda_z().powi((p - t) as i32 + 1));
            for q in 0..re.m() {
                let d_q = re.alpha_z() * pochhammer(1.0 - m_re, q) * (-re.delta_z()).powi(q as i32)
                    / (re.gamma_bar().powi(q as i32 + 1) * factorial(q) * factorial(q));
                let qt = q + t;
                let s = qt + 1;
                let eta_pow = eta.powi(-(s as i32));
                // Gamma(q+t+1) (lambda_RD gth)^-s (1 + lambda_RE/(lambda_RD gth))^-s
                // collapses to Gamma(s) eta^-s
                let term1 = factorial(qt) * eta_pow;
                let term2 = fso.big_b() * eta_pow * eval_g(qt)?;
                total += c_pt * d_q * gamma_th.powi(t as i32) * (term1 - term2);
            }
        }
    }
    Ok(total)
}

/// Closed-form secrecy outage probability at the system's threshold rate
/// (the approximate-SOP event `gamma_0 < gamma_th gamma_E`).
pub fn sop_closed(sys: &SecrecySystem) -> Result<f64> {
    clamp_probability(1.0 - survival_sum(sys, sys.gamma_th())?)
}

/// Closed-form probability of positive secrecy capacity, `Pr[C_s > 0]`.
/// Equals the closed-form SOP complement at `gamma_th = 1`.
pub fn ppsc_closed(sys: &SecrecySystem) -> Result<f64> {
    clamp_probability(survival_sum(sys, 1.0)?)
}

/// Direct quadrature of the SOP integral.
///
/// `exact = true` integrates `F_0(g gth + gth - 1) f_E(g)`; `exact = false`
/// uses the high-SNR approximation `F_0(g gth) f_E(g)` that the closed form
/// resolves.
pub fn sop_quadrature(sys: &SecrecySystem, exact: bool) -> Result<f64> {
    let gth = sys.gamma_th();
    let shift = if exact { gth - 1.0 } else { 0.0 };
    integrate_against_eve(sys, move |g| g * gth + shift)
}

/// Direct quadrature of the PPSC integral `1 - int F_0(g) f_E(g) dg`.
pub fn ppsc_quadrature(sys: &SecrecySystem) -> Result<f64> {
    let outage = integrate_against_eve(sys, |g| g)?;
    clamp_probability(1.0 - outage)
}

/// `int_0^inf F_0(arg(g)) f_E(g) dg` by adaptive quadrature.
fn integrate_against_eve<A: Fn(f64) -> f64>(sys: &SecrecySystem, arg: A) -> Result<f64> {
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let integrand = |g: f64| {
        if failure.borrow().is_some() {
            return 0.0;
        }
        let fe = sr_pdf(g, &sys.eve_rf);
        if fe == 0.0 {
            return 0.0;
        }
        match e2e_cdf(arg(g).max(0.0), sys) {
            Ok(f0) => f0 * fe,
            Err(e) => {
                *failure.borrow_mut() = Some(e);
                0.0
            }
        }
    };
    // eavesdropper density scale sets where the mass lives
    let scale = 1.0 / sys.eve_rf.lambda_z();
    let r = quad::integrate_segmented(
        |u: f64| {
            // map [0,1) onto [0,inf) with the eve-link scale
            let onem = 1.0 - u;
            let x = scale * u / onem;
            integrand(x) * scale / (onem * onem)
        },
        &[0.0, 0.5, 0.9, 0.99, 1.0],
        1e-12,
        1e-10,
        4096,
    )?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    clamp_probability(r.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{Detection, ShadowingRegime};
    use crate::special::gamma;

    fn db(x: f64) -> f64 {
        10f64.powf(x / 10.0)
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    fn fhs_system(gbar_db: f64, ge_db: f64, xi: f64, rs: f64) -> SecrecySystem {
        let fso = FsoLink::new(8.9033, 7.3955, xi, Detection::Heterodyne, db(gbar_db)).unwrap();
        let rd = ShadowedRicianLink::from_regime(ShadowingRegime::FrequentHeavy, db(gbar_db)).unwrap();
        let re = ShadowedRicianLink::from_regime(ShadowingRegime::FrequentHeavy, db(ge_db)).unwrap();
        SecrecySystem::new(fso, rd, re, rs).unwrap()
    }

    fn system_with_main(
        regime: ShadowingRegime,
        gbar_db: f64,
        ge_db: f64,
        xi: f64,
    ) -> SecrecySystem {
        let fso = FsoLink::new(8.9033, 7.3955, xi, Detection::Heterodyne, db(gbar_db)).unwrap();
        let rd = ShadowedRicianLink::from_regime(regime, db(gbar_db)).unwrap();
        let re = ShadowedRicianLink::from_regime(ShadowingRegime::FrequentHeavy, db(ge_db)).unwrap();
        SecrecySystem::new(fso, rd, re, 0.01).unwrap()
    }

    #[test]
    fn gamma_th_definition() {
        let sys = fhs_system(10.0, 4.0, 6.7, 0.01);
        assert!((sys.gamma_th() - (2f64).powf(0.02)).abs() < 1e-15);
        assert_eq!(fhs_system(10.0, 4.0, 6.7, 0.0).gamma_th(), 1.0);
        assert!(SecrecySystem::new(
            sys.fso.clone(),
            sys.main_rf.clone(),
            sys.eve_rf.clone(),
            -0.1
        )
        .is_err());
    }

    #[test]
    fn sop_closed_reference_values() {
        // 30-digit evaluations of the closed form, cross-checked there
        // against direct integration of the defining integrand
        let cases = [
            (fhs_system(10.0, 4.0, 6.7, 0.01), 0.203008018892333757),
            (fhs_system(20.0, 12.0, 6.7, 0.01), 0.138454384045620545),
            (
                system_with_main(ShadowingRegime::Average, 15.0, 12.0, 1.1),
                0.0459168410820160115,
            ),
            (
                system_with_main(ShadowingRegime::InfrequentLight, 20.0, 4.0, 6.7),
                2.59517697218763431e-4,
            ),
        ];
        for (sys, want) in cases {
            let got = sop_closed(&sys).unwrap();
            assert!(rel(got, want) < 1e-8, "{got} vs {want}");
        }
    }

    #[test]
    fn sop_closed_imdd_reference() {
        let fso =
            FsoLink::new(8.9033, 7.3955, 6.7, Detection::IntensityModulation, db(10.0)).unwrap();
        let rd = ShadowedRicianLink::from_regime(ShadowingRegime::FrequentHeavy, db(10.0)).unwrap();
        let re = ShadowedRicianLink::from_regime(ShadowingRegime::FrequentHeavy, db(4.0)).unwrap();
        let sys = SecrecySystem::new(fso, rd, re, 0.01).unwrap();
        let got = sop_closed(&sys).unwrap();
        assert!(rel(got, 0.205928693228758512) < 1e-8, "got {got}");
    }

    #[test]
    fn quadrature_matches_closed_form() {
        for sys in [
            fhs_system(10.0, 4.0, 6.7, 0.01),
            fhs_system(15.0, 12.0, 6.7, 0.01),
            system_with_main(ShadowingRegime::Average, 15.0, 12.0, 1.1),
        ] {
            let c = sop_closed(&sys).unwrap();
            let q = sop_quadrature(&sys, false).unwrap();
            assert!(rel(c, q) < 1e-6, "closed {c} vs quad {q}");
        }
        // small-probability regime needs the absolute floor of the quadrature
        let sys = system_with_main(ShadowingRegime::InfrequentLight, 20.0, 4.0, 6.7);
        let c = sop_closed(&sys).unwrap();
        let q = sop_quadrature(&sys, false).unwrap();
        assert!((c - q).abs() < 1e-6 * q + 2e-10, "closed {c} vs quad {q}");
    }

    #[test]
    fn exact_event_reference_and_ordering() {
        let sys = fhs_system(10.0, 4.0, 6.7, 0.01);
        let exact = sop_quadrature(&sys, true).unwrap();
        assert!(rel(exact, 0.211728389917700777) < 1e-6, "got {exact}");
        // shifted CDF argument can only increase the outage mass
        for sys in [fhs_system(5.0, 4.0, 6.7, 0.01), fhs_system(20.0, 12.0, 6.7, 0.2)] {
            let e = sop_quadrature(&sys, true).unwrap();
            let a = sop_quadrature(&sys, false).unwrap();
            assert!(e >= a - 1e-8, "exact {e} < approx {a}");
        }
    }

    #[test]
    fn exact_equals_approx_at_zero_rate() {
        let sys = fhs_system(10.0, 4.0, 6.7, 0.0);
        let e = sop_quadrature(&sys, true).unwrap();
        let a = sop_quadrature(&sys, false).unwrap();
        assert!((e - a).abs() < 1e-12, "{e} vs {a}");
    }

    #[test]
    fn ppsc_reference_values() {
        let cases = [
            (fhs_system(20.0, 4.0, 6.7, 0.01), 0.975496632381233210),
            (fhs_system(20.0, 0.0, 6.7, 0.01), 0.990099009900841882),
            (fhs_system(10.0, 4.0, 6.7, 0.01), 0.799226328638069259),
        ];
        for (sys, want) in cases {
            let got = ppsc_closed(&sys).unwrap();
            assert!(rel(got, want) < 1e-8, "{got} vs {want}");
            let quad = ppsc_quadrature(&sys).unwrap();
            assert!(rel(got, quad) < 1e-6, "closed {got} vs quad {quad}");
        }
    }

    #[test]
    fn ppsc_vanishing_eavesdropper() {
        let sys = fhs_system(20.0, -40.0, 6.7, 0.01);
        let v = ppsc_closed(&sys).unwrap();
        assert!((v - 1.0).abs() <= 1e-6, "ppsc = {v}");
        let q = ppsc_quadrature(&sys).unwrap();
        assert!((q - 1.0).abs() <= 1e-6, "ppsc quad = {q}");
    }

    #[test]
    fn ppsc_complementarity() {
        for (g, ge) in [(5.0, 4.0), (12.0, 8.0), (25.0, 12.0)] {
            let sys = fhs_system(g, ge, 6.7, 0.0);
            let sum = ppsc_closed(&sys).unwrap() + sop_closed(&sys).unwrap();
            assert!((sum - 1.0).abs() < 1e-9, "sum = {sum}");
        }
    }

    #[test]
    fn ppsc_symmetric_links_half() {
        // identical RF fading on both sides and an effectively transparent
        // optical hop: Pr[X > Y] = 1/2 for iid continuous X, Y
        let fso = FsoLink::new(8.9033, 7.3955, 6.7, Detection::Heterodyne, db(70.0)).unwrap();
        let rd = ShadowedRicianLink::from_regime(ShadowingRegime::FrequentHeavy, db(10.0)).unwrap();
        let re = rd.clone();
        let sys = SecrecySystem::new(fso, rd, re, 0.0).unwrap();
        let c = ppsc_closed(&sys).unwrap();
        assert!((c - 0.5).abs() < 2e-3, "closed {c}");
        let q = ppsc_quadrature(&sys).unwrap();
        assert!((q - 0.5).abs() < 2e-3, "quad {q}");
    }

    #[test]
    fn e2e_cdf_bounds_and_limits() {
        let sys = fhs_system(10.0, 4.0, 6.7, 0.01);
        assert_eq!(e2e_cdf(0.0, &sys).unwrap(), 0.0);
        assert!((e2e_cdf(1e5, &sys).unwrap() - 1.0).abs() < 1e-9);
        for g in [0.1, 1.0, 5.0, 20.0, 80.0] {
            let f0 = e2e_cdf(g, &sys).unwrap();
            let ff = gg_cdf(g, &sys.fso).unwrap();
            let fr = sr_cdf(g, &sys.main_rf);
            assert!(f0 >= ff.max(fr) - 1e-12, "g={g}");
            assert!(f0 <= 1.0);
        }
    }

    #[test]
    fn sop_monotone_in_eve_snr() {
        let mut prev = 0.0;
        for ge in [0.0, 4.0, 8.0, 12.0, 16.0] {
            let v = sop_closed(&fhs_system(15.0, ge, 6.7, 0.01)).unwrap();
            assert!(v >= prev, "ge={ge}: {v} < {prev}");
            prev = v;
        }
    }

    #[test]
    fn sop_monotone_in_threshold_rate() {
        let mut prev = 0.0;
        for rs in [0.0, 0.01, 0.1, 0.5, 1.0] {
            let v = sop_closed(&fhs_system(15.0, 4.0, 6.7, rs)).unwrap();
            assert!(v >= prev, "rs={rs}");
            prev = v;
        }
    }

    #[test]
    fn sop_monotone_in_main_snr() {
        let mut prev = 1.0;
        for g in [0.0, 7.5, 15.0, 22.5, 30.0] {
            let v = sop_closed(&fhs_system(g, 4.0, 6.7, 0.01)).unwrap();
            assert!(v <= prev, "g={g}");
            prev = v;
        }
    }

    #[test]
    fn reduction_matches_general_evaluator() {
        // the closed form computes its G_{1,1}^{1,1} factor through the
        // exact reduction; tie the two evaluation paths together here
        for qt in [0u32, 3] {
            for z in [0.37, 2.4] {
                let spec =
                    MeijerGSpec::new(1, 1, vec![-(qt as f64)], vec![0.0], z).unwrap();
                let general = meijer_g(&spec).unwrap();
                let reduced = gamma(qt as f64 + 1.0).unwrap() * (1.0 + z).powi(-(qt as i32) - 1);
                assert!(rel(general, reduced) < 1e-9, "qt={qt} z={z}");
            }
        }
    }

    #[test]
    fn shadowing_ordering_fig4() {
        for g in [5.0, 15.0, 25.0] {
            let fhs = sop_closed(&system_with_main(ShadowingRegime::FrequentHeavy, g, 4.0, 6.7))
                .unwrap();
            let avg = sop_closed(&system_with_main(ShadowingRegime::Average, g, 4.0, 6.7)).unwrap();
            let ils =
                sop_closed(&system_with_main(ShadowingRegime::InfrequentLight, g, 4.0, 6.7))
                    .unwrap();
            assert!(ils <= avg && avg <= fhs, "g={g}: {ils} {avg} {fhs}");
        }
    }

    #[test]
    fn pointing_error_gap_fig3() {
        let gap = |xi: f64| {
            let fhs =
                sop_closed(&system_with_main(ShadowingRegime::FrequentHeavy, 30.0, 12.0, xi))
                    .unwrap();
            let avg =
                sop_closed(&system_with_main(ShadowingRegime::Average, 30.0, 12.0, xi)).unwrap();
            fhs - avg
        };
        assert!(gap(0.8) < gap(1.1), "{} vs {}", gap(0.8), gap(1.1));
        // at the milder pointing error the less-shadowed main link wins
        let s_avg = sop_closed(&system_with_main(ShadowingRegime::Average, 20.0, 12.0, 1.1)).unwrap();
        let s_fhs =
            sop_closed(&system_with_main(ShadowingRegime::FrequentHeavy, 20.0, 12.0, 1.1)).unwrap();
        assert!(s_avg <= s_fhs);
    }
}
