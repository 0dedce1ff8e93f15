//! Seeded randomness and the samplers shared by the null models: power-law
//! degrees/weights with evenization, hyperbolic coordinates, and totally
//! skewed stable variates.
//!
//! All randomness flows from a [`SeedSpec`]: a ChaCha8 counter-based stream
//! per realization for sequential draws, plus stateless keyed uniforms per
//! vertex pair so that different edge-generation strategies can consume the
//! exact same randomness regardless of iteration order or thread count.

use std::error::Error;
use std::f64::consts::PI;
use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::VertexId;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Identifies one realization: a master seed plus a stream id. Equal specs
/// reproduce bit-identical realizations independent of thread count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SeedSpec {
    pub master_seed: u64,
    pub stream_id: u64,
}

impl SeedSpec {
    pub fn new(master_seed: u64, stream_id: u64) -> Self {
        SeedSpec {
            master_seed,
            stream_id,
        }
    }

    /// Sequential counter-based stream for this realization.
    pub fn stream_rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.stream_id);
        rng
    }

    /// Stateless uniform in `[0, 1)` keyed by the unordered pair `{u, v}`.
    ///
    /// Every edge-generation strategy that evaluates the pair sees the same
    /// value, which is what makes naive and pruned generators bit-equal.
    pub fn pair_uniform(&self, u: VertexId, v: VertexId) -> f64 {
        let (a, b) = if u <= v { (u, v) } else { (v, u) };
        let mut z = self.master_seed ^ self.stream_id.wrapping_mul(GOLDEN_GAMMA);
        z = mix64(z.wrapping_add(GOLDEN_GAMMA));
        z = mix64(z ^ (((a as u64) << 32) | b as u64));
        (z >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DomainError {
    message: String,
}

impl DomainError {
    pub(crate) fn new(message: impl Into<String>) -> Self {
        DomainError {
            message: message.into(),
        }
    }
}

impl fmt::Display for DomainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl Error for DomainError {}

/// Integer power law on `{x_min, x_min+1, ...}` sampled as
/// `D = floor(x_min * U^{-1/(tau-1)})`, so the tail is exactly
/// `P(D >= k) = (k / x_min)^{1-tau}` and the density satisfies
/// `P(D = k) ~ c k^{-tau}` with `c = (tau-1) x_min^{tau-1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawSpec {
    tau: f64,
    x_min: u32,
    c: f64,
    mu: f64,
}

impl PowerLawSpec {
    /// Requires `tau` in `(2, 3)` (finite mean, infinite variance) and
    /// `x_min >= 1`.
    pub fn new(tau: f64, x_min: u32) -> Result<Self, DomainError> {
        if !(tau > 2.0 && tau < 3.0) {
            return Err(DomainError::new(format!(
                "power-law exponent tau must lie in (2, 3), got {tau}"
            )));
        }
        if x_min < 1 {
            return Err(DomainError::new("x_min must be at least 1"));
        }
        let c = (tau - 1.0) * (x_min as f64).powf(tau - 1.0);
        let mu = floor_pareto_mean(tau, x_min);
        Ok(PowerLawSpec { tau, x_min, c, mu })
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn x_min(&self) -> u32 {
        self.x_min
    }

    /// The derived constants `(c, mu)`: asymptotic density prefactor and mean.
    pub fn law_constants(&self) -> (f64, f64) {
        (self.c, self.mu)
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Exact tail `P(D >= k)`.
    pub fn ccdf(&self, k: u64) -> f64 {
        if k <= self.x_min as u64 {
            1.0
        } else {
            (k as f64 / self.x_min as f64).powf(1.0 - self.tau)
        }
    }

    /// Exact probability mass `P(D = k)`.
    pub fn pmf(&self, k: u64) -> f64 {
        if k < self.x_min as u64 {
            0.0
        } else {
            self.ccdf(k) - self.ccdf(k + 1)
        }
    }

    /// Inverse-CDF map from a uniform `u` in `(0, 1]` to a degree.
    pub fn degree_from_uniform(&self, u: f64) -> u64 {
        debug_assert!(u > 0.0 && u <= 1.0);
        let x = self.x_min as f64 * u.powf(-1.0 / (self.tau - 1.0));
        // u -> 1 gives exactly x_min; cap guards against float overshoot
        (x.floor() as u64).max(self.x_min as u64)
    }
}

/// Mean of the floor-Pareto law: `x_min + x_min^{tau-1} * sum_{k>x_min} k^{1-tau}`,
/// summed explicitly with an Euler-Maclaurin tail so the remainder is far
/// below 1e-12.
fn floor_pareto_mean(tau: f64, x_min: u32) -> f64 {
    let s = tau - 1.0;
    x_min as f64 + (x_min as f64).powf(s) * power_tail_sum(s, x_min as u64 + 1)
}

/// `sum_{k >= from} k^{-s}` for `s > 1`.
fn power_tail_sum(s: f64, from: u64) -> f64 {
    let cutoff = from.max(100_000);
    let mut sum = 0.0;
    for k in from..cutoff {
        sum += (k as f64).powf(-s);
    }
    let x = cutoff as f64;
    // Euler-Maclaurin: integral + f/2 - f'/12 + f'''/720
    sum += x.powf(1.0 - s) / (s - 1.0) + x.powf(-s) / 2.0 + s * x.powf(-s - 1.0) / 12.0
        - s * (s + 1.0) * (s + 2.0) * x.powf(-s - 3.0) / 720.0;
    sum
}

/// I.i.d. floor-Pareto sample (used directly as rank-1 weights).
pub fn sample_power_law(spec: &PowerLawSpec, n: usize, seed: &SeedSpec) -> Vec<u64> {
    sample_power_law_with(spec, n, &mut seed.stream_rng())
}

/// Variant drawing from a caller-owned stream, for generators that continue
/// consuming the same stream afterwards.
pub fn sample_power_law_with(spec: &PowerLawSpec, n: usize, rng: &mut impl Rng) -> Vec<u64> {
    (0..n)
        .map(|_| spec.degree_from_uniform(1.0 - rng.random::<f64>()))
        .collect()
}

/// Degree sequence for the configuration model: floor-Pareto sample with the
/// last entry bumped by one if the total is odd, so a perfect matching of
/// half-edges exists.
pub fn sample_degree_sequence(spec: &PowerLawSpec, n: usize, seed: &SeedSpec) -> Vec<u64> {
    sample_degree_sequence_with(spec, n, &mut seed.stream_rng())
}

pub fn sample_degree_sequence_with(spec: &PowerLawSpec, n: usize, rng: &mut impl Rng) -> Vec<u64> {
    let mut degrees = sample_power_law_with(spec, n, rng);
    let total: u64 = degrees.iter().sum();
    if total % 2 == 1 {
        if let Some(last) = degrees.last_mut() {
            *last += 1;
        }
    }
    degrees
}

/// Parameters of the threshold hyperbolic random graph: `n` points on a disk
/// of radius `R = 2 ln(n / nu)`, radial density proportional to
/// `sinh(alpha r)` with `alpha = (tau - 1) / 2`, edges iff distance `<= R`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HrgParams {
    n: usize,
    tau: f64,
    nu: f64,
    alpha: f64,
    radius: f64,
}

impl HrgParams {
    pub fn new(n: usize, tau: f64, nu: f64) -> Result<Self, DomainError> {
        if !(tau > 2.0 && tau < 3.0) {
            return Err(DomainError::new(format!(
                "hyperbolic model needs tau in (2, 3), got {tau}"
            )));
        }
        if nu.is_nan() || nu <= 0.0 {
            return Err(DomainError::new("average-degree parameter nu must be positive"));
        }
        if (n as f64) <= nu {
            return Err(DomainError::new(format!(
                "need n > nu for a positive disk radius (n = {n}, nu = {nu})"
            )));
        }
        let alpha = (tau - 1.0) / 2.0;
        let radius = 2.0 * (n as f64 / nu).ln();
        Ok(HrgParams {
            n,
            tau,
            nu,
            alpha,
            radius,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Inverse CDF of the radial density: `u = 0` maps to the center,
    /// `u = 1` to the rim.
    pub fn radius_from_uniform(&self, u: f64) -> f64 {
        let span = (self.alpha * self.radius).cosh() - 1.0;
        (1.0 + u * span).acosh() / self.alpha
    }

    /// Radial CDF `P(r <= x)`, the inverse of [`Self::radius_from_uniform`].
    pub fn radial_cdf(&self, r: f64) -> f64 {
        ((self.alpha * r).cosh() - 1.0) / ((self.alpha * self.radius).cosh() - 1.0)
    }

    /// The weight-like type `t = e^{(R - r) / 2}`; its tail is
    /// `P(t > x) ~ x^{1 - tau}`.
    pub fn type_from_radius(&self, r: f64) -> f64 {
        ((self.radius - r) / 2.0).exp()
    }
}

/// A sampled vertex position on the hyperbolic disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HrgCoordinate {
    pub r: f64,
    pub phi: f64,
    /// `t = e^{(R - r) / 2}`
    pub t: f64,
}

pub fn sample_hrg_coordinates(params: &HrgParams, seed: &SeedSpec) -> Vec<HrgCoordinate> {
    let mut rng = seed.stream_rng();
    (0..params.n())
        .map(|_| {
            let u_r = rng.random::<f64>();
            let u_phi = rng.random::<f64>();
            let r = params.radius_from_uniform(u_r);
            HrgCoordinate {
                r,
                phi: u_phi * 2.0 * PI,
                t: params.type_from_radius(r),
            }
        })
        .collect()
}

/// Totally skewed stable variates (`beta = 1`, unit scale, zero shift) in the
/// parametrization where i.i.d. sums obey `(S_1 + S_2) / 2^{1/alpha} = S` in
/// distribution. For `alpha < 1` the support is the nonnegative half-line.
///
/// Sampling uses the Chambers-Mallows-Stuck transform; `alpha = 1` is not
/// supported.
pub fn sample_stable(alpha: f64, seed: &SeedSpec, count: usize) -> Result<Vec<f64>, DomainError> {
    check_stable_alpha(alpha)?;
    let mut rng = seed.stream_rng();
    Ok((0..count)
        .map(|_| {
            let u1 = rng.random::<f64>();
            let u2 = rng.random::<f64>();
            stable_from_uniforms(alpha, u1, u2)
        })
        .collect())
}

fn check_stable_alpha(alpha: f64) -> Result<(), DomainError> {
    if !(alpha > 0.0 && alpha <= 2.0) {
        return Err(DomainError::new(format!(
            "stability index alpha must lie in (0, 2], got {alpha}"
        )));
    }
    if alpha == 1.0 {
        return Err(DomainError::new(
            "alpha = 1 is a singular case of the sampling transform and is not supported",
        ));
    }
    Ok(())
}

/// Chambers-Mallows-Stuck map from two uniforms to one stable variate.
pub fn stable_from_uniforms(alpha: f64, u1: f64, u2: f64) -> f64 {
    const TINY: f64 = 1e-12;
    let u1 = u1.clamp(TINY, 1.0 - TINY);
    let u2 = u2.clamp(TINY, 1.0 - TINY);
    let v = PI * (u1 - 0.5);
    let w = -(1.0 - u2).ln();
    let beta_tan = (PI * alpha / 2.0).tan();
    let b = beta_tan.atan() / alpha;
    let scale = (1.0 + beta_tan * beta_tan).powf(1.0 / (2.0 * alpha));
    let phi = alpha * (v + b);
    scale * phi.sin() / v.cos().powf(1.0 / alpha)
        * ((v - phi).cos().max(f64::MIN_POSITIVE) / w).powf((1.0 - alpha) / alpha)
}

#[cfg(test)]
mod tests {
    use super::*;

    const ZETA_1_5: f64 = 2.612375348685488;

    #[test]
    fn law_constants_tau_2_5() {
        let spec = PowerLawSpec::new(2.5, 1).unwrap();
        let (c, mu) = spec.law_constants();
        assert!((c - 1.5).abs() < 1e-15);
        // floor-Pareto mean at x_min = 1 is exactly sum_k k^{1-tau}
        assert!((mu - ZETA_1_5).abs() < 1e-11, "mu = {mu}");
    }

    #[test]
    fn law_constants_shifted_x_min() {
        let spec = PowerLawSpec::new(2.5, 2).unwrap();
        assert!((spec.c() - 1.5 * 2f64.powf(1.5)).abs() < 1e-12);
        // independent route: direct expectation sum, truncated at K. The
        // missing tail sum_{k>=K} k P(D=k) is sandwiched by its integral
        // bounds, so mu must land between them.
        let cutoff = 2_000_000u64;
        let direct: f64 = (2..cutoff).map(|k| k as f64 * spec.pmf(k)).sum::<f64>();
        let tau = spec.tau();
        let tail_upper = spec.c() / (tau - 2.0) * ((cutoff - 1) as f64).powf(2.0 - tau);
        assert!(spec.mu() > direct, "{} vs {direct}", spec.mu());
        assert!(
            spec.mu() < direct + tail_upper,
            "{} vs {direct} + {tail_upper}",
            spec.mu()
        );
    }

    #[test]
    fn rejects_tau_outside_range() {
        assert!(PowerLawSpec::new(2.0, 1).is_err());
        assert!(PowerLawSpec::new(3.0, 1).is_err());
        assert!(PowerLawSpec::new(3.2, 1).is_err());
    }

    #[test]
    fn degree_inverse_cdf_examples() {
        let spec = PowerLawSpec::new(2.5, 1).unwrap();
        // 0.25^{-2/3} = 2.5198...
        assert_eq!(spec.degree_from_uniform(0.25), 2);
        assert_eq!(spec.degree_from_uniform(1.0), 1);
        assert_eq!(spec.degree_from_uniform(0.9999999), 1);
        assert!((spec.ccdf(10) - 10f64.powf(-1.5)).abs() < 1e-15);
    }

    #[test]
    fn empirical_ccdf_matches_exact_tail() {
        let spec = PowerLawSpec::new(2.5, 1).unwrap();
        let n = 100_000;
        let sample = sample_power_law(&spec, n, &SeedSpec::new(42, 0));
        for k in [1u64, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024] {
            let p = spec.ccdf(k);
            let hits = sample.iter().filter(|&&d| d >= k).count() as f64;
            let sigma = (n as f64 * p * (1.0 - p)).sqrt();
            assert!(
                (hits - n as f64 * p).abs() <= 3.0 * sigma.max(1.0),
                "k = {k}: observed {hits}, expected {}",
                n as f64 * p
            );
        }
    }

    #[test]
    fn evenization_bumps_at_most_last_entry() {
        let spec = PowerLawSpec::new(2.5, 1).unwrap();
        let mut bumped = 0;
        for stream in 0..50 {
            let seed = SeedSpec::new(7, stream);
            let raw = sample_power_law(&spec, 101, &seed);
            let even = sample_degree_sequence(&spec, 101, &seed);
            let total: u64 = even.iter().sum();
            assert_eq!(total % 2, 0);
            assert_eq!(&raw[..100], &even[..100]);
            let raw_total: u64 = raw.iter().sum();
            if raw_total % 2 == 1 {
                assert_eq!(even[100], raw[100] + 1);
                bumped += 1;
            } else {
                assert_eq!(even[100], raw[100]);
            }
        }
        assert!(bumped > 0, "expected some odd totals across 50 streams");
    }

    #[test]
    fn streams_are_deterministic_and_distinct() {
        let spec = PowerLawSpec::new(2.5, 1).unwrap();
        let a = sample_degree_sequence(&spec, 1000, &SeedSpec::new(9, 3));
        let b = sample_degree_sequence(&spec, 1000, &SeedSpec::new(9, 3));
        let c = sample_degree_sequence(&spec, 1000, &SeedSpec::new(9, 4));
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn pair_uniform_is_symmetric_and_stable() {
        let seed = SeedSpec::new(123, 5);
        assert_eq!(seed.pair_uniform(3, 9), seed.pair_uniform(9, 3));
        let x = seed.pair_uniform(0, 1);
        assert!((0.0..1.0).contains(&x));
        assert_eq!(x, seed.pair_uniform(0, 1));
        assert_ne!(x, seed.pair_uniform(0, 2));
        assert_ne!(x, SeedSpec::new(123, 6).pair_uniform(0, 1));
    }

    #[test]
    fn pair_uniform_looks_uniform() {
        let seed = SeedSpec::new(77, 0);
        let m = 100_000u32;
        let mean: f64 = (0..m).map(|v| seed.pair_uniform(v, v + 1)).sum::<f64>() / m as f64;
        assert!((mean - 0.5).abs() < 0.005, "mean = {mean}");
    }

    #[test]
    fn hrg_radius_endpoints() {
        let params = HrgParams::new(1000, 2.5, 2.0).unwrap();
        assert!((params.radius() - 2.0 * 500f64.ln()).abs() < 1e-12);
        assert!(params.radius_from_uniform(0.0).abs() < 1e-12);
        assert!((params.type_from_radius(0.0) - 500.0).abs() < 1e-9);
        assert!((params.radius_from_uniform(1.0) - params.radius()).abs() < 1e-9);
        assert!((params.type_from_radius(params.radius()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hrg_params_rejects_bad_inputs() {
        assert!(HrgParams::new(1000, 3.5, 1.0).is_err());
        assert!(HrgParams::new(1000, 2.5, 0.0).is_err());
        assert!(HrgParams::new(2, 2.5, 10.0).is_err());
    }

    #[test]
    fn radial_sampler_matches_cdf() {
        let params = HrgParams::new(100_000, 2.5, 1.0).unwrap();
        let coords = sample_hrg_coordinates(&params, &SeedSpec::new(11, 0));
        let mut radii: Vec<f64> = coords.iter().map(|c| c.r).collect();
        radii.sort_by(f64::total_cmp);
        let n = radii.len() as f64;
        let mut ks = 0f64;
        for (i, &r) in radii.iter().enumerate() {
            let f = params.radial_cdf(r);
            ks = ks.max((f - i as f64 / n).abs());
            ks = ks.max(((i + 1) as f64 / n - f).abs());
        }
        // one-sample Kolmogorov-Smirnov, 1% level
        let threshold = 1.628 / n.sqrt();
        assert!(ks < threshold, "KS statistic {ks} over threshold {threshold}");
        assert!(radii.iter().all(|&r| (0.0..=params.radius()).contains(&r)));
    }

    #[test]
    fn type_tail_follows_power_law() {
        let params = HrgParams::new(1_000_000, 2.5, 1.0).unwrap();
        let coords = sample_hrg_coordinates(&params, &SeedSpec::new(5, 0));
        let n = coords.len() as f64;
        for x in [4.0f64, 8.0, 16.0, 32.0] {
            let frac = coords.iter().filter(|c| c.t > x).count() as f64 / n;
            let predicted = x.powf(1.0 - params.tau());
            assert!(
                (frac / predicted - 1.0).abs() < 0.1,
                "x = {x}: fraction {frac} vs {predicted}"
            );
        }
    }

    #[test]
    fn stable_rejects_bad_alpha() {
        let seed = SeedSpec::new(1, 0);
        assert!(sample_stable(0.0, &seed, 1).is_err());
        assert!(sample_stable(1.0, &seed, 1).is_err());
        assert!(sample_stable(2.5, &seed, 1).is_err());
        assert!(sample_stable(0.75, &seed, 1).is_ok());
        // above 1 the transform still applies (two-sided support)
        let samples = sample_stable(1.5, &seed, 10_000).unwrap();
        assert!(samples.iter().all(|x| x.is_finite()));
        assert!(samples.iter().any(|&x| x < 0.0));
    }

    #[test]
    fn stable_totally_skewed_is_nonnegative_for_alpha_below_one() {
        let samples = sample_stable(0.75, &SeedSpec::new(3, 0), 100_000).unwrap();
        assert!(samples.iter().all(|&x| x >= 0.0 && x.is_finite()));
    }

    #[test]
    fn stable_sum_stability() {
        // (S1 + S2) / 2^{1/alpha} should match S in distribution.
        let alpha = 0.75;
        let a = sample_stable(alpha, &SeedSpec::new(21, 0), 200_000).unwrap();
        let b = sample_stable(alpha, &SeedSpec::new(21, 1), 200_000).unwrap();
        let reference = sample_stable(alpha, &SeedSpec::new(21, 2), 200_000).unwrap();
        let combined: Vec<f64> = a
            .iter()
            .zip(&b)
            .map(|(x, y)| (x + y) / 2f64.powf(1.0 / alpha))
            .collect();
        let d = two_sample_ks(&combined, &reference);
        // 1% level for equal sample sizes
        let threshold = 1.628 * (2.0 / 200_000f64).sqrt();
        assert!(d < threshold, "KS statistic {d} over threshold {threshold}");
    }

    fn two_sample_ks(a: &[f64], b: &[f64]) -> f64 {
        let mut a: Vec<f64> = a.to_vec();
        let mut b: Vec<f64> = b.to_vec();
        a.sort_by(f64::total_cmp);
        b.sort_by(f64::total_cmp);
        let (mut i, mut j, mut d) = (0usize, 0usize, 0f64);
        while i < a.len() && j < b.len() {
            if a[i] <= b[j] {
                i += 1;
            } else {
                j += 1;
            }
            let fa = i as f64 / a.len() as f64;
            let fb = j as f64 / b.len() as f64;
            d = d.max((fa - fb).abs());
        }
        d
    }
}
