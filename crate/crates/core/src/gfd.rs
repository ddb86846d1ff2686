//! Generalized fractional derivative scalars.
//!
//! The generalized fractional derivative of order δ acts on a differentiable
//! function as `D^δ f(x) = Q x^{1-δ} f'(x)` with
//! `Q = Γ(γ) / Γ(γ - δ + 1)`. At δ = 1 the factor Q is exactly one and the
//! operator is the ordinary derivative.

use std::f64::consts::PI;

use crate::error::{Result, SpectraError};

const LANCZOS_G: f64 = 7.0;

// Lanczos coefficients for g = 7, 15 terms, fitted by collocation at
// z = 0..14 with 60-digit arithmetic.
const LANCZOS_COEFFS: [f64; 15] = [
    1.000_000_000_000_000_007_4,
    676.520_368_121_883_537_2,
    -1_259.139_216_722_281_773_9,
    771.323_428_775_437_706_5,
    -176.615_029_145_989_781_1,
    12.507_343_225_028_745_33,
    -0.138_571_032_333_282_243_1,
    1.009_112_629_473_137_286e-5,
    -3.434_584_225_253_104_608e-7,
    8.359_337_835_712_596_538e-7,
    -8.597_755_644_539_608_755e-7,
    6.046_497_338_494_928_108e-7,
    -2.911_328_727_890_613_714e-7,
    8.589_129_313_568_226_856e-8,
    -1.164_606_563_986_785_153e-8,
];

/// The gamma function, via the Lanczos approximation with reflection below ½.
///
/// Relative accuracy is better than 1e-12 on (0, 170). Non-positive integers
/// are poles and return [`SpectraError::Pole`].
pub fn gamma_fn(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(SpectraError::InvalidInput("gamma of NaN".into()));
    }
    if x <= 0.0 && x == x.floor() {
        return Err(SpectraError::Pole(x));
    }
    if x < 0.5 {
        let s = (PI * x).sin();
        return Ok(PI / (s * gamma_fn(1.0 - x)?));
    }
    let z = x - 1.0;
    let mut sum = LANCZOS_COEFFS[0];
    for (k, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        sum += c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    // t^(z+1/2) is split in two halves so it stays finite up to x ≈ 171.
    let half = t.powf(0.5 * (z + 0.5));
    Ok((2.0 * PI).sqrt() * half * (half * (-t).exp()) * sum)
}

/// Fractional order δ together with the auxiliary order γ and derived factors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FractionalConfig {
    pub delta: f64,
    pub gamma_param: f64,
    /// `Γ(γ) / Γ(γ − δ + 1)`
    pub q: f64,
    /// `1 / q`
    pub lambda: f64,
}

impl FractionalConfig {
    /// The classical case δ = 1 (γ = 1).
    pub fn classical() -> Self {
        Self {
            delta: 1.0,
            gamma_param: 1.0,
            q: 1.0,
            lambda: 1.0,
        }
    }

    pub fn is_classical(&self) -> bool {
        self.delta == 1.0
    }
}

impl Default for FractionalConfig {
    fn default() -> Self {
        Self::classical()
    }
}

/// Builds a [`FractionalConfig`], rejecting δ outside (0, 1] and γ at or left of
/// the first pole.
pub fn make_config(delta: f64, gamma_param: f64) -> Result<FractionalConfig> {
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(SpectraError::InvalidInput(format!(
            "fractional order must lie in (0, 1], got {delta}"
        )));
    }
    if !(gamma_param > 0.0) || !gamma_param.is_finite() {
        return Err(SpectraError::InvalidInput(format!(
            "gamma parameter must be positive, got {gamma_param}"
        )));
    }
    let shifted = gamma_param - delta + 1.0;
    if !(shifted > 0.0) {
        return Err(SpectraError::InvalidInput(format!(
            "gamma - delta + 1 must be positive, got {shifted}"
        )));
    }
    let q = if delta == 1.0 {
        1.0
    } else {
        gamma_fn(gamma_param)? / gamma_fn(shifted)?
    };
    if !(q > 0.0) || !q.is_finite() {
        return Err(SpectraError::InvalidInput(format!(
            "Q factor is not positive and finite for delta={delta}, gamma={gamma_param}"
        )));
    }
    Ok(FractionalConfig {
        delta,
        gamma_param,
        q,
        lambda: 1.0 / q,
    })
}

/// Applies `D^δ` to the monomial `coeff · x^power`, returning the new
/// `(coeff, power)` pair: `D^δ[c x^p] = c Q p x^{p-δ}`.
pub fn gfd_monomial(coeff: f64, power: f64, cfg: &FractionalConfig) -> (f64, f64) {
    (coeff * cfg.q * power, power - cfg.delta)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent Γ: shift the argument above 30 with the recurrence, then use
    /// the Stirling series with eight Bernoulli terms.
    fn stirling_gamma(x: f64) -> f64 {
        let mut shift = 1.0;
        let mut z = x;
        while z < 30.0 {
            shift *= z;
            z += 1.0;
        }
        let b = [
            1.0 / 12.0,
            -1.0 / 360.0,
            1.0 / 1260.0,
            -1.0 / 1680.0,
            1.0 / 1188.0,
            -691.0 / 360360.0,
            1.0 / 156.0,
            -3617.0 / 122400.0,
        ];
        let mut series = 0.0;
        let mut zp = z;
        for c in b {
            series += c / zp;
            zp *= z * z;
        }
        let ln = (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + series;
        ln.exp() / shift
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn known_values() {
        assert!(rel(gamma_fn(1.0).unwrap(), 1.0) < 1e-14);
        assert!(rel(gamma_fn(0.5).unwrap(), PI.sqrt()) < 1e-13);
        assert!(rel(gamma_fn(5.0).unwrap(), 24.0) < 1e-14);
        assert!(rel(gamma_fn(-0.5).unwrap(), -2.0 * PI.sqrt()) < 1e-13);
        // Γ(171) = 170! ≈ 7.257415615307999e306
        assert!(rel(gamma_fn(171.0).unwrap(), 7.257_415_615_307_999e306) < 1e-12);
    }

    #[test]
    fn poles() {
        for x in [0.0, -1.0, -2.0, -17.0] {
            assert!(matches!(gamma_fn(x), Err(SpectraError::Pole(_))));
        }
    }

    #[test]
    fn agrees_with_stirling_oracle() {
        let mut x = 0.05;
        while x < 160.0 {
            let a = gamma_fn(x).unwrap();
            let b = stirling_gamma(x);
            assert!(rel(a, b) < 1e-12, "x={x}: {a} vs {b}");
            x += 0.37;
        }
    }

    #[test]
    fn recurrence() {
        for i in 1..=100 {
            let x = i as f64 / 10.0;
            let lhs = gamma_fn(x + 1.0).unwrap();
            let rhs = x * gamma_fn(x).unwrap();
            assert!(rel(lhs, rhs) < 1e-12, "x={x}");
        }
    }

    #[test]
    fn config_values() {
        let c = make_config(1.0, 7.3).unwrap();
        assert_eq!(c.q, 1.0);
        let c = make_config(0.5, 1.0).unwrap();
        assert!(rel(c.q, 2.0 / PI.sqrt()) < 1e-13);
        assert!(rel(c.lambda, PI.sqrt() / 2.0) < 1e-13);
        // 1/Γ(1.2); Γ(1.2) = 0.9181687423997607 (60-digit reference).
        let c = make_config(0.8, 1.0).unwrap();
        assert!(rel(c.q, 1.0 / 0.918_168_742_399_760_7) < 1e-13);
        assert!(rel(c.q, 1.0 / stirling_gamma(1.2)) < 1e-12);
    }

    #[test]
    fn config_rejects_bad_orders() {
        assert!(make_config(0.0, 1.0).is_err());
        assert!(make_config(1.5, 1.0).is_err());
        assert!(make_config(-0.2, 1.0).is_err());
        assert!(make_config(0.5, 0.0).is_err());
        assert!(make_config(0.5, f64::NAN).is_err());
    }

    #[test]
    fn monomial_rule() {
        let cfg = make_config(0.6, 2.0).unwrap();
        let (c, p) = gfd_monomial(1.0, cfg.delta, &cfg);
        assert!(rel(c, cfg.q * cfg.delta) < 1e-15);
        assert_eq!(p, 0.0);
        let (c, p) = gfd_monomial(3.5, 0.0, &cfg);
        assert_eq!((c, p), (0.0, -0.6));
        let classical = make_config(1.0, 1.0).unwrap();
        assert_eq!(gfd_monomial(1.0, 2.0, &classical), (2.0, 1.0));
    }

    proptest::proptest! {
        #[test]
        fn config_invariants(delta in 0.01f64..=1.0, gamma in 0.05f64..10.0) {
            let c = make_config(delta, gamma).unwrap();
            proptest::prop_assert!(c.q > 0.0);
            proptest::prop_assert!((c.q * c.lambda - 1.0).abs() < 1e-14);
            let classical = make_config(1.0, gamma).unwrap();
            proptest::prop_assert_eq!(classical.q, 1.0);
        }

        #[test]
        fn classical_monomial_is_ordinary_derivative(c in -10.0f64..10.0, p in -5.0f64..5.0, g in 0.1f64..5.0) {
            let cfg = make_config(1.0, g).unwrap();
            proptest::prop_assert_eq!(gfd_monomial(c, p, &cfg), (c * p, p - 1.0));
        }

        #[test]
        fn nested_application(c in -10.0f64..10.0, p in -5.0f64..5.0, delta in 0.05f64..=1.0, g in 0.1f64..5.0) {
            let cfg = make_config(delta, g).unwrap();
            let (c1, p1) = gfd_monomial(c, p, &cfg);
            let (c2, p2) = gfd_monomial(c1, p1, &cfg);
            let expected = cfg.q * cfg.q * c * p * (p - delta);
            proptest::prop_assert!((c2 - expected).abs() <= 1e-12 * expected.abs().max(1e-12));
            proptest::prop_assert!((p2 - (p - 2.0 * delta)).abs() < 1e-14);
        }
    }
}
