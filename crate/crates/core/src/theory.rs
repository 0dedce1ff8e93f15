//! Closed-form evaluation of the limit constants, thresholds, and predicted
//! curve shapes for a(k) in the three null models.
//!
//! For tau in (2, 3) the curves share one skeleton: a k-independent plateau
//! of height `plateau_prefactor * n^{(3-tau)/(tau-1)}` (times a stable random
//! multiplier across realizations) up to `k ~ n^{(tau-2)/(tau-1)}`, then a
//! decay `tail_constant * n^{3-tau} k^{tau-3}` up to the natural degree
//! cutoff `n^{1/(tau-1)}`.

use std::f64::consts::PI;

use crate::sampling::{DomainError, HrgParams, PowerLawSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    Ecm,
    Irg,
    Hrg,
}

impl ModelKind {
    pub fn name(&self) -> &'static str {
        match self {
            ModelKind::Ecm => "ecm",
            ModelKind::Irg => "irg",
            ModelKind::Hrg => "hrg",
        }
    }
}

/// Gamma function on the ranges the formulas need: positive reals and the
/// interval (-1, 0), the latter via `gamma(x) = gamma(x + 2) / (x (x + 1))`.
pub fn gamma(x: f64) -> f64 {
    assert!(
        x > -1.0 && x != 0.0,
        "gamma implemented for (-1, 0) and (0, inf), got {x}"
    );
    if x < 0.0 {
        gamma(x + 2.0) / (x * (x + 1.0))
    } else if x < 1.0 {
        gamma(x + 1.0) / x
    } else {
        lanczos_gamma(x)
    }
}

/// Lanczos approximation (g = 7, 9 terms), accurate to ~1e-14 relative for
/// x >= 1.
fn lanczos_gamma(x: f64) -> f64 {
    const G: f64 = 7.0;
    const COEFFICIENTS: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    let z = x - 1.0;
    let mut acc = COEFFICIENTS[0];
    for (i, &c) in COEFFICIENTS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + G + 0.5;
    (2.0 * PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * acc
}

fn check_tau(tau: f64) -> Result<(), DomainError> {
    if tau > 2.0 && tau < 3.0 {
        Ok(())
    } else {
        Err(DomainError::new(format!(
            "theory formulas need tau strictly inside (2, 3), got {tau}"
        )))
    }
}

/// The two degree scales of the a(k) curve: decay onset `n^{(tau-2)/(tau-1)}`
/// and natural maximum-degree cutoff `n^{1/(tau-1)}`.
pub fn thresholds(n: f64, tau: f64) -> Result<(f64, f64), DomainError> {
    check_tau(tau)?;
    if n.is_nan() || n < 2.0 {
        return Err(DomainError::new(format!("need n >= 2, got {n}")));
    }
    Ok((
        n.powf((tau - 2.0) / (tau - 1.0)),
        n.powf(1.0 / (tau - 1.0)),
    ))
}

/// Limit of `a(k) / (n^{3-tau} k^{tau-3})` in the decay regime.
pub fn tail_constant(
    model: ModelKind,
    tau: f64,
    c: f64,
    mu: f64,
    nu: Option<f64>,
) -> Result<f64, DomainError> {
    check_tau(tau)?;
    match model {
        ModelKind::Ecm => Ok(-c * mu.powf(2.0 - tau) * gamma(2.0 - tau)),
        ModelKind::Irg => Ok(c * mu.powf(2.0 - tau) / ((3.0 - tau) * (tau - 2.0))),
        ModelKind::Hrg => {
            let nu = nu.ok_or_else(|| {
                DomainError::new("hyperbolic tail constant needs the nu parameter")
            })?;
            Ok(nu * (tau - 1.0).powi(2) / ((tau - 2.0) * PI)
                * (PI / (2.0 * nu)).powf(2.0 - tau)
                * hrg_integral(tau)?)
        }
    }
}

/// `integral of x^{1-tau} * min(acos(1 - 2 x^2) / pi, 1) dx` over (0, inf),
/// the kernel moment entering the hyperbolic tail constant. Adaptive
/// quadrature at 1e-8 absolute tolerance.
pub fn hrg_integral(tau: f64) -> Result<f64, DomainError> {
    hrg_integral_with_tolerance(tau, 1e-8)
}

/// Same with an explicit tolerance, for self-consistency checks.
///
/// The minimum saturates at x = 1, so the tail is `1/(tau-2)` in closed
/// form. On (0, 1) the substitution x = sin(u) turns the head into
/// `(2/pi) * integral of u sin(u)^{1-tau} cos(u) du`, removing the arccos
/// derivative singularity at x = 1; the integrable u^{2-tau} endpoint at 0
/// is handled by its leading term below a small split point.
pub fn hrg_integral_with_tolerance(tau: f64, tolerance: f64) -> Result<f64, DomainError> {
    check_tau(tau)?;
    let u0: f64 = 1e-6;
    let head_leading = u0.powf(3.0 - tau) / (3.0 - tau);
    let integrand = |u: f64| u * u.sin().powf(1.0 - tau) * u.cos();
    let head = adaptive_simpson(&integrand, u0, PI / 2.0, tolerance, 50);
    Ok(2.0 / PI * (head_leading + head) + 1.0 / (tau - 2.0))
}

fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, a, b, fa, fm, fb, whole, tol, depth)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        simpson_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + simpson_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
}

/// Prefactor of the low-k plateau; the plateau height is this value times
/// `n^{(3-tau)/(tau-1)}` times a totally skewed stable multiplier
/// `S_{(tau-1)/2}` that varies across realizations.
pub fn plateau_prefactor(
    model: ModelKind,
    tau: f64,
    c: f64,
    mu: f64,
    nu: Option<f64>,
) -> Result<f64, DomainError> {
    check_tau(tau)?;
    let core = gamma(2.5 - 0.5 * tau) * (PI * (tau - 1.0) / 4.0).cos();
    let exponent = 2.0 / (tau - 1.0);
    match model {
        ModelKind::Ecm | ModelKind::Irg => {
            Ok((2.0 * c * core / ((tau - 1.0) * (3.0 - tau))).powf(exponent) / mu)
        }
        ModelKind::Hrg => {
            let nu = nu.ok_or_else(|| {
                DomainError::new("hyperbolic plateau prefactor needs the nu parameter")
            })?;
            Ok(2.0 * nu / PI * (2.0 / (3.0 - tau) * core).powf(exponent))
        }
    }
}

/// Constant of the ensemble-mean curve `E[a(k)] ~ const * (n/k)^{3-tau}`,
/// valid over the whole k range; identical to the erased-model tail constant.
pub fn expected_ak_constant(tau: f64, c: f64, mu: f64) -> Result<f64, DomainError> {
    tail_constant(ModelKind::Ecm, tau, c, mu, None)
}

/// Predicted clustering from the degree-correlation curve:
/// `c(k) = a(k)^2 / (mu n)` for k well above sqrt(n).
pub fn ck_relation(a_k: f64, mu: f64, n: f64) -> f64 {
    a_k * a_k / (mu * n)
}

/// The same prediction written directly in model constants:
/// `c^2 gamma(2-tau)^2 mu^{3-2tau} n^{5-2tau} k^{2tau-6}`.
pub fn ck_direct(tau: f64, c: f64, mu: f64, n: f64, k: f64) -> Result<f64, DomainError> {
    check_tau(tau)?;
    Ok(c * c * gamma(2.0 - tau).powi(2) * mu.powf(3.0 - 2.0 * tau) * n.powf(5.0 - 2.0 * tau)
        * k.powf(2.0 * tau - 6.0))
}

/// Every closed-form number the models predict for one parametrization.
#[derive(Debug, Clone, PartialEq)]
pub struct TheoryPrediction {
    pub model: ModelKind,
    pub n: usize,
    pub tau: f64,
    /// Density prefactor of the weight law entering the formulas; for the
    /// hyperbolic model this is the type-law analogue `tau - 1`.
    pub c: f64,
    /// Mean of the weight law; for the hyperbolic model the analogue
    /// `pi / (2 nu)`.
    pub mu: f64,
    pub nu: Option<f64>,
    pub threshold_k: f64,
    pub cutoff_k: f64,
    pub plateau_prefactor: f64,
    /// `n^{(3-tau)/(tau-1)}`
    pub plateau_scale: f64,
    /// Stability index of the plateau multiplier, `(tau-1)/2`.
    pub stable_alpha: f64,
    pub tail_constant: f64,
    /// `n^{3-tau}`
    pub tail_scale_factor: f64,
    /// `tau - 3`
    pub tail_exponent: f64,
    pub hrg_integral: Option<f64>,
    pub hrg_integral_tolerance: Option<f64>,
}

impl TheoryPrediction {
    /// Plateau height without the stable multiplier.
    pub fn plateau_value(&self) -> f64 {
        self.plateau_prefactor * self.plateau_scale
    }

    /// Tail prediction at degree k.
    pub fn tail_value(&self, k: f64) -> f64 {
        self.tail_constant * self.tail_scale_factor * k.powf(self.tail_exponent)
    }
}

pub fn predict_ecm(n: usize, law: &PowerLawSpec) -> Result<TheoryPrediction, DomainError> {
    predict_weight_model(ModelKind::Ecm, n, law)
}

pub fn predict_irg(n: usize, law: &PowerLawSpec) -> Result<TheoryPrediction, DomainError> {
    predict_weight_model(ModelKind::Irg, n, law)
}

fn predict_weight_model(
    model: ModelKind,
    n: usize,
    law: &PowerLawSpec,
) -> Result<TheoryPrediction, DomainError> {
    let (c, mu) = law.law_constants();
    let tau = law.tau();
    let (threshold_k, cutoff_k) = thresholds(n as f64, tau)?;
    Ok(TheoryPrediction {
        model,
        n,
        tau,
        c,
        mu,
        nu: None,
        threshold_k,
        cutoff_k,
        plateau_prefactor: plateau_prefactor(model, tau, c, mu, None)?,
        plateau_scale: (n as f64).powf((3.0 - tau) / (tau - 1.0)),
        stable_alpha: (tau - 1.0) / 2.0,
        tail_constant: tail_constant(model, tau, c, mu, None)?,
        tail_scale_factor: (n as f64).powf(3.0 - tau),
        tail_exponent: tau - 3.0,
        hrg_integral: None,
        hrg_integral_tolerance: None,
    })
}

pub fn predict_hrg(params: &HrgParams) -> Result<TheoryPrediction, DomainError> {
    let tau = params.tau();
    let nu = params.nu();
    let n = params.n();
    let (threshold_k, cutoff_k) = thresholds(n as f64, tau)?;
    let tolerance = 1e-8;
    Ok(TheoryPrediction {
        model: ModelKind::Hrg,
        n,
        tau,
        c: tau - 1.0,
        mu: PI / (2.0 * nu),
        nu: Some(nu),
        threshold_k,
        cutoff_k,
        plateau_prefactor: plateau_prefactor(ModelKind::Hrg, tau, tau - 1.0, 0.0, Some(nu))?,
        plateau_scale: (n as f64).powf((3.0 - tau) / (tau - 1.0)),
        stable_alpha: (tau - 1.0) / 2.0,
        tail_constant: tail_constant(ModelKind::Hrg, tau, tau - 1.0, 0.0, Some(nu))?,
        tail_scale_factor: (n as f64).powf(3.0 - tau),
        tail_exponent: tau - 3.0,
        hrg_integral: Some(hrg_integral_with_tolerance(tau, tolerance)?),
        hrg_integral_tolerance: Some(tolerance),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Plateau,
    Tail,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PredictedPoint {
    pub k: f64,
    pub regime: Regime,
    pub value: f64,
}

/// Piecewise curve skeleton: plateau (stable multiplier excluded, reported
/// via `stable_alpha`/`plateau_prefactor`) up to the threshold, then the
/// decaying tail. The two pieces meet only in order of magnitude; no
/// continuity is imposed at the junction.
pub fn predicted_curve(prediction: &TheoryPrediction, ks: &[f64]) -> Vec<PredictedPoint> {
    ks.iter()
        .map(|&k| {
            if k <= prediction.threshold_k {
                PredictedPoint {
                    k,
                    regime: Regime::Plateau,
                    value: prediction.plateau_value(),
                }
            } else {
                PredictedPoint {
                    k,
                    regime: Regime::Tail,
                    value: prediction.tail_value(k),
                }
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const ZETA_1_5: f64 = 2.612375348685488;

    #[test]
    fn gamma_at_minus_half_is_minus_two_root_pi() {
        let expected = -2.0 * PI.sqrt();
        assert!((gamma(-0.5) - expected).abs() < 1e-12 * expected.abs());
    }

    #[test]
    fn gamma_matches_reflection_formula() {
        // gamma(x) gamma(1 - x) = pi / sin(pi x) on (-1, 0)
        let mut x = -0.95;
        while x < -0.049 {
            let lhs = gamma(x) * gamma(1.0 - x);
            let rhs = PI / (PI * x).sin();
            assert!(
                ((lhs - rhs) / rhs).abs() < 1e-12,
                "x = {x}: {lhs} vs {rhs}"
            );
            x += 0.05;
        }
    }

    #[test]
    fn gamma_spot_values() {
        assert!((gamma(0.5) - PI.sqrt()).abs() < 1e-14);
        assert!((gamma(1.0) - 1.0).abs() < 1e-14);
        assert!((gamma(2.0) - 1.0).abs() < 1e-14);
        assert!((gamma(5.0) - 24.0).abs() < 1e-12);
        // gamma(5/4) = gamma(1/4) / 4
        assert!((gamma(1.25) - 0.906402477055477).abs() < 1e-13);
    }

    #[test]
    fn threshold_examples() {
        let (t, c) = thresholds(1e6, 2.5).unwrap();
        assert!((t - 100.0).abs() < 1e-9);
        assert!((c - 10_000.0).abs() < 1e-7);
        let (t, _) = thresholds(1e5, 2.5).unwrap();
        assert!((t - 10f64.powf(5.0 / 3.0)).abs() < 1e-9);
        assert!((t - 46.4159).abs() < 1e-3);
        // tau -> 2 pushes the decay onset toward k = 1
        let (t, _) = thresholds(1e6, 2.0001).unwrap();
        assert!(t < 1.01);
        assert!(thresholds(1e6, 3.0).is_err());
        assert!(thresholds(1.0, 2.5).is_err());
    }

    #[test]
    fn tail_constants_for_the_reference_law() {
        let (c, mu) = (1.5, ZETA_1_5);
        let ecm = tail_constant(ModelKind::Ecm, 2.5, c, mu, None).unwrap();
        let direct = -c * mu.powf(-0.5) * gamma(-0.5);
        assert!((ecm - direct).abs() < 1e-14);
        assert!((ecm - 3.2898).abs() < 1e-3, "ecm constant {ecm}");
        assert!(ecm > 0.0);

        let irg = tail_constant(ModelKind::Irg, 2.5, c, mu, None).unwrap();
        assert!((irg - c * mu.powf(-0.5) * 4.0).abs() < 1e-14);
        assert!((irg - 3.7123).abs() < 1e-3, "irg constant {irg}");

        assert!(tail_constant(ModelKind::Hrg, 2.5, c, mu, None).is_err());
    }

    #[test]
    fn tail_constants_positive_across_tau_grid() {
        let mut tau = 2.01;
        while tau < 2.995 {
            let law = PowerLawSpec::new(tau, 1).unwrap();
            let (c, mu) = law.law_constants();
            assert!(tail_constant(ModelKind::Ecm, tau, c, mu, None).unwrap() > 0.0);
            assert!(tail_constant(ModelKind::Irg, tau, c, mu, None).unwrap() > 0.0);
            assert!(tail_constant(ModelKind::Hrg, tau, c, mu, Some(1.0)).unwrap() > 0.0);
            assert!(
                plateau_prefactor(ModelKind::Ecm, tau, c, mu, None)
                    .unwrap()
                    .is_finite()
            );
            assert!(plateau_prefactor(ModelKind::Ecm, tau, c, mu, None).unwrap() > 0.0);
            assert!(plateau_prefactor(ModelKind::Hrg, tau, c, mu, Some(1.0)).unwrap() > 0.0);
            tau += 0.01;
        }
    }

    #[test]
    fn hrg_integral_tail_and_closed_form() {
        // Beta-function route: I(tau) = B((3-tau)/2, 1/2) / (pi (tau - 2)).
        for tau in [2.1, 2.5, 2.9] {
            let quad = hrg_integral(tau).unwrap();
            let closed = gamma((3.0 - tau) / 2.0) * gamma(0.5)
                / (gamma((4.0 - tau) / 2.0) * PI * (tau - 2.0));
            assert!(
                (quad - closed).abs() < 1e-6,
                "tau = {tau}: quadrature {quad} vs closed form {closed}"
            );
        }
        // for tau = 2.5 the saturated part alone integrates to 2
        let full = hrg_integral(2.5).unwrap();
        assert!(full > 2.0);
        assert!((full - 3.33851).abs() < 1e-3, "integral {full}");
    }

    #[test]
    fn hrg_integral_tolerance_self_consistency() {
        for tau in [2.2, 2.5, 2.8] {
            let coarse = hrg_integral_with_tolerance(tau, 1e-8).unwrap();
            let fine = hrg_integral_with_tolerance(tau, 1e-10).unwrap();
            assert!(
                ((coarse - fine) / fine).abs() < 1e-6,
                "tau = {tau}: {coarse} vs {fine}"
            );
        }
    }

    #[test]
    fn kernel_saturation_point() {
        // acos(1 - 2 x^2) / pi at x = 1/sqrt(2) is exactly 1/2
        let x = 1.0 / 2f64.sqrt();
        assert!(((1.0 - 2.0 * x * x).acos() / PI - 0.5).abs() < 1e-12);
    }

    #[test]
    fn plateau_prefactor_pieces() {
        assert!(((PI * 1.5 / 4.0).cos() - 0.3826834323650898).abs() < 1e-15);
        let law = PowerLawSpec::new(2.5, 1).unwrap();
        let (c, mu) = law.law_constants();
        let value = plateau_prefactor(ModelKind::Ecm, 2.5, c, mu, None).unwrap();
        let inner: f64 = 2.0 * c * gamma(1.25) * (3.0 * PI / 8.0).cos() / (1.5 * 0.5);
        assert!((value - inner.powf(4.0 / 3.0) / mu).abs() < 1e-14);
        let irg = plateau_prefactor(ModelKind::Irg, 2.5, c, mu, None).unwrap();
        assert_eq!(value, irg);
    }

    #[test]
    fn ck_routes_agree() {
        for tau in [2.1, 2.5, 2.9] {
            let law = PowerLawSpec::new(tau, 1).unwrap();
            let (c, mu) = law.law_constants();
            let n = 1e5f64;
            let k = 1e3f64;
            let a_k = tail_constant(ModelKind::Ecm, tau, c, mu, None).unwrap()
                * n.powf(3.0 - tau)
                * k.powf(tau - 3.0);
            let via_relation = ck_relation(a_k, mu, n);
            let direct = ck_direct(tau, c, mu, n, k).unwrap();
            assert!(
                ((via_relation - direct) / direct).abs() < 1e-12,
                "tau = {tau}: {via_relation} vs {direct}"
            );
        }
        assert_eq!(ck_relation(0.0, 2.6, 1e5), 0.0);
    }

    #[test]
    fn predicted_curve_skeleton() {
        let law = PowerLawSpec::new(2.5, 1).unwrap();
        let prediction = predict_ecm(100_000, &law).unwrap();
        let ks: Vec<f64> = (0..40).map(|i| 1.2f64.powi(i)).collect();
        let points = predicted_curve(&prediction, &ks);
        let mut plateau_seen = 0;
        for pair in points.windows(2) {
            match (pair[0].regime, pair[1].regime) {
                (Regime::Plateau, Regime::Plateau) => {
                    assert_eq!(pair[0].value, pair[1].value);
                    plateau_seen += 1;
                }
                (Regime::Tail, Regime::Tail) => {
                    let slope = (pair[1].value / pair[0].value).ln() / (pair[1].k / pair[0].k).ln();
                    assert!((slope - (prediction.tau - 3.0)).abs() < 1e-9);
                }
                (Regime::Plateau, Regime::Tail) => {
                    assert!(pair[0].k <= prediction.threshold_k);
                    assert!(pair[1].k > prediction.threshold_k);
                }
                (Regime::Tail, Regime::Plateau) => panic!("regimes out of order"),
            }
        }
        assert!(plateau_seen > 0);
    }

    #[test]
    fn prediction_bundles_are_consistent() {
        let law = PowerLawSpec::new(2.5, 1).unwrap();
        let ecm = predict_ecm(1_000_000, &law).unwrap();
        assert!((ecm.threshold_k - 100.0).abs() < 1e-9);
        assert!((ecm.cutoff_k - 1e4).abs() < 1e-7);
        assert!(ecm.threshold_k < ecm.cutoff_k);
        assert_eq!(ecm.stable_alpha, 0.75);
        assert!(ecm.hrg_integral.is_none());
        assert!(
            (expected_ak_constant(2.5, ecm.c, ecm.mu).unwrap() - ecm.tail_constant).abs() < 1e-15
        );

        let params = HrgParams::new(1_000_000, 2.5, 1.0).unwrap();
        let hrg = predict_hrg(&params).unwrap();
        assert!(hrg.hrg_integral.is_some());
        assert!(hrg.tail_constant > 0.0);
        assert!((hrg.mu - PI / 2.0).abs() < 1e-15);
    }
}
