//! Radial eigenfunctions `F = χ·V_n` and their normalization.
//!
//! With `a = 2Λ√(ξ3−ε)` and `b = (2Λ/δ)√S`, the Rodrigues kernel
//! `ρ^{−a}(1−ρ^δ)^{−b} dⁿ/dρⁿ[Qⁿ ρ^{n+a}(1−ρ^δ)^{n+b}]` is a polynomial of
//! degree n in `ρ^δ`. It is computed exactly by differentiating terms of the
//! form `ρ^p(1−ρ^δ)^s` symbolically, and kept in the factored form
//! `Σ c_j ρ^{jδ}(1−ρ^δ)^{n−j}` for evaluation, which stays accurate as ρ → 1.

use crate::error::{Result, SpectraError};
use crate::gfd::FractionalConfig;
use crate::nu::{energy, epsilon_of_energy, xi_coefficients, PotentialSpec, QuantumState};

pub const DEFAULT_TRUNCATION_TOL: f64 = 1e-14;
pub const SERIES_TERM_CAP: usize = 100_000;
pub const DEFAULT_QUADRATURE_POINTS: usize = 4096;

const GL_ORDER: usize = 16;

/// Exponents `(on ρ, on 1−ρ^δ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentPair {
    pub rho: f64,
    pub one_minus: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Weight {
    pub prefactor: f64,
    pub exponents: ExponentPair,
}

fn radicands(
    spec: &PotentialSpec,
    state: &QuantumState,
    cfg: &FractionalConfig,
    e_ev: f64,
) -> Result<(f64, f64)> {
    let xi = xi_coefficients(spec, state, cfg);
    let t3 = xi.xi3 - epsilon_of_energy(e_ev, spec);
    if xi.s < 0.0 {
        return Err(SpectraError::NoBoundState("discriminant"));
    }
    // Round-off in ξ3 − ε at an eigenvalue with root ≈ 0.
    if t3 < -1e-12 * xi.xi3.abs().max(1.0) {
        return Err(SpectraError::NoBoundState("negative T3"));
    }
    Ok((t3.max(0.0).sqrt(), xi.s.sqrt()))
}

/// Exponents of `χ(ρ) = ρ^{(Qδ−1)/2 + √(ξ3−ε)} (1−ρ^δ)^{½ + (Λ/δ)√S}`.
pub fn chi(
    spec: &PotentialSpec,
    state: &QuantumState,
    cfg: &FractionalConfig,
    e_ev: f64,
) -> Result<ExponentPair> {
    let (rt3, rs) = radicands(spec, state, cfg, e_ev)?;
    Ok(ExponentPair {
        rho: (cfg.q * cfg.delta - 1.0) / 2.0 + rt3,
        one_minus: 0.5 + cfg.lambda / cfg.delta * rs,
    })
}

/// `ω(ρ) = Λ ρ^{2Λ√(ξ3−ε)} (1−ρ^δ)^{(2Λ/δ)√S}`.
pub fn weight(
    spec: &PotentialSpec,
    state: &QuantumState,
    cfg: &FractionalConfig,
    e_ev: f64,
) -> Result<Weight> {
    let (rt3, rs) = radicands(spec, state, cfg, e_ev)?;
    Ok(Weight {
        prefactor: cfg.lambda,
        exponents: ExponentPair {
            rho: 2.0 * cfg.lambda * rt3,
            one_minus: 2.0 * cfg.lambda / cfg.delta * rs,
        },
    })
}

impl Weight {
    pub fn eval(&self, rho: f64, delta: f64) -> f64 {
        self.prefactor
            * rho.powf(self.exponents.rho)
            * (1.0 - rho.powf(delta)).powf(self.exponents.one_minus)
    }
}

/// Coefficients `c_j` of `ρ^{−a}(1−ρ^δ)^{−b} dⁿ/dρⁿ[Qⁿ ρ^{n+a}(1−ρ^δ)^{n+b}]
/// = Σ_j c_j ρ^{jδ}(1−ρ^δ)^{n−j}`.
fn kernel_coefficients(n: u32, a: f64, b: f64, q: f64, delta: f64) -> Vec<f64> {
    let n = n as usize;
    let mut c = vec![0.0; n + 1];
    c[0] = q.powi(n as i32);
    let nf = n as f64;
    for k in 0..n {
        let mut next = vec![0.0; n + 1];
        for j in 0..=k {
            let p = nf + a - k as f64 + j as f64 * delta;
            let s = nf + b - j as f64;
            next[j] += c[j] * p;
            next[j + 1] -= c[j] * s * delta;
        }
        c = next;
    }
    c
}

/// Expands the factored kernel into monomials `(coeff, power)` in ρ.
fn kernel_monomials(c: &[f64], delta: f64) -> Vec<(f64, f64)> {
    let n = c.len() - 1;
    let mut d = vec![0.0; n + 1];
    for (j, cj) in c.iter().enumerate() {
        let mut binom = 1.0;
        for m in 0..=(n - j) {
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            d[j + m] += cj * binom * sign;
            binom = binom * (n - j - m) as f64 / (m + 1) as f64;
        }
    }
    d.into_iter()
        .enumerate()
        .map(|(k, v)| (v, k as f64 * delta))
        .collect()
}

/// A radial eigenfunction, `φ(r) = r^{−(N−1)/2} g_n χ(ρ) V_n(ρ)` with `ρ = e^{−αr}`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialWavefunction {
    pub spec: PotentialSpec,
    pub state: QuantumState,
    pub cfg: FractionalConfig,
    pub e_ev: f64,
    pub exp_rho: f64,
    pub exp_one_minus: f64,
    /// `V_n` as monomials `(coeff, power)` in ρ.
    pub series: Vec<(f64, f64)>,
    /// `V_n` in the factored form `Σ c_j ρ^{jδ}(1−ρ^δ)^{n−j}`.
    pub kernel: Vec<f64>,
    /// `ln χ(r_e)`, divided out so that deep wells do not underflow; the
    /// normalization constant is `g_n e^{−log_scale}`.
    pub log_scale: f64,
    pub g_n: f64,
}

impl RadialWavefunction {
    /// Builds the (unnormalized, `g_n = 1`) eigenfunction at the closed-form energy.
    pub fn new(spec: &PotentialSpec, state: &QuantumState, cfg: &FractionalConfig) -> Result<Self> {
        let e = energy(spec, state, cfg)?;
        let chi = chi(spec, state, cfg, e.e_ev)?;
        let w = weight(spec, state, cfg, e.e_ev)?;
        let kernel = kernel_coefficients(
            state.n,
            w.exponents.rho,
            w.exponents.one_minus,
            cfg.q,
            cfg.delta,
        );
        let mut wf = Self {
            spec: spec.clone(),
            state: *state,
            cfg: *cfg,
            e_ev: e.e_ev,
            exp_rho: chi.rho,
            exp_one_minus: chi.one_minus,
            series: kernel_monomials(&kernel, cfg.delta),
            kernel,
            log_scale: 0.0,
            g_n: 1.0,
        };
        wf.log_scale = wf.ln_chi(spec.alpha() * spec.molecule.r_e);
        Ok(wf)
    }

    fn ln_chi(&self, x: f64) -> f64 {
        let ln_om = (-(-self.cfg.delta * x).exp_m1()).ln();
        -x * self.exp_rho + self.exp_one_minus * ln_om
    }

    pub fn is_experimental(&self) -> bool {
        !self.cfg.is_classical()
    }

    pub fn rho(&self, r: f64) -> f64 {
        (-self.spec.alpha() * r).exp()
    }

    /// `V_n(ρ)` from the factored kernel; `x = αr`.
    fn poly_at(&self, x: f64) -> f64 {
        let d = self.cfg.delta;
        let rd = (-d * x).exp();
        let om = -(-d * x).exp_m1();
        let n = self.kernel.len() - 1;
        self.kernel
            .iter()
            .enumerate()
            .map(|(j, c)| c * rd.powi(j as i32) * om.powi((n - j) as i32))
            .sum()
    }

    /// `V_n(ρ)` from the monomial expansion.
    pub fn series_at(&self, rho: f64) -> f64 {
        self.series.iter().map(|(c, p)| c * rho.powf(*p)).sum()
    }

    /// `F(r) = g_n e^{−log_scale} χ(ρ) V_n(ρ)`.
    pub fn f_of_r(&self, r: f64) -> f64 {
        let x = self.spec.alpha() * r;
        self.g_n * (self.ln_chi(x) - self.log_scale).exp() * self.poly_at(x)
    }
}

/// `φ(r) = r^{−(N−1)/2} F(r)`.
pub fn evaluate(wf: &RadialWavefunction, r: f64) -> f64 {
    let half = (wf.state.dim as f64 - 1.0) / 2.0;
    wf.f_of_r(r) * r.powf(-half)
}

/// Generalized binomial series of the Rodrigues kernel, for cross-checking.
///
/// The series alternates with terms as large as `(1+ρ^δ)^{n+b}`, so it is only
/// usable when `b` is moderate; molecular wells give `b` in the thousands and
/// overflow or lose all precision. [`RadialWavefunction`] does not use it.
///
/// Returns monomials `(coeff, power)` of `ρ^{−a} dⁿ/dρⁿ[Qⁿ ρ^{n+a}(1−ρ^δ)^{n+b}]`;
/// multiplying their sum by `(1−ρ^δ)^{−b}` gives `V_n`. Terms are dropped once
/// their magnitude at `ρ(r_e)` falls below `truncation_tol` times the running
/// maximum.
pub fn rodrigues_series(
    spec: &PotentialSpec,
    state: &QuantumState,
    cfg: &FractionalConfig,
    e_ev: f64,
    truncation_tol: f64,
) -> Result<Vec<(f64, f64)>> {
    let w = weight(spec, state, cfg, e_ev)?;
    let (a, b) = (w.exponents.rho, w.exponents.one_minus);
    let d = cfg.delta;
    let n = state.n;
    let rho_e = (-spec.alpha() * spec.molecule.r_e).exp();
    let exponent = n as f64 + b;
    let qn = cfg.q.powi(n as i32);

    let mut out = Vec::new();
    let mut binom = 1.0; // C(n+b, k)(−1)^k
    let mut running_max: f64 = 0.0;
    for k in 0..SERIES_TERM_CAP {
        // ρ^{n+a+kδ}, differentiated n times, then times ρ^{−a}
        let p0 = n as f64 + a + k as f64 * d;
        let mut falling = 1.0;
        for i in 0..n {
            falling *= p0 - i as f64;
        }
        let coeff = qn * binom * falling;
        let power = k as f64 * d;
        let size = (coeff * rho_e.powf(power)).abs();
        if !size.is_finite() {
            return Err(SpectraError::Numerical(format!(
                "binomial series term {k} overflows"
            )));
        }
        running_max = running_max.max(size);
        out.push((coeff, power));
        // Finite expansion when n + b is a non-negative integer.
        if k as f64 == exponent {
            return Ok(out);
        }
        let next = binom * (k as f64 - exponent) / (k as f64 + 1.0);
        if k > 0 && size < truncation_tol * running_max {
            let next_size = (next * rho_e.powf(power + d)).abs();
            if next_size < truncation_tol * running_max {
                return Ok(out);
            }
        }
        binom = next;
    }
    Err(SpectraError::Convergence {
        terms: SERIES_TERM_CAP,
    })
}

/// Sums a [`rodrigues_series`] at ρ, including the `(1−ρ^δ)^{−b}` factor.
pub fn eval_rodrigues_series(series: &[(f64, f64)], rho: f64, delta: f64, b: f64) -> f64 {
    let s: f64 = series.iter().map(|(c, p)| c * rho.powf(*p)).sum();
    s * (1.0 - rho.powf(delta)).powf(-b)
}

/// Gauss–Legendre nodes and weights on [−1, 1] by Newton iteration.
pub fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; order];
    let mut w = vec![0.0; order];
    let nf = order as f64;
    for i in 0..order.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=order {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = nf * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[order - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[order - 1 - i] = wi;
    }
    (x, w)
}

/// Composite 16-point Gauss–Legendre rule with `points / 16` equal panels.
pub fn integrate<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, points: usize) -> f64 {
    let (x, w) = gauss_legendre(GL_ORDER);
    let panels = (points / GL_ORDER).max(1);
    let h = (hi - lo) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let mid = lo + (p as f64 + 0.5) * h;
        let mut s = 0.0;
        for (xi, wi) in x.iter().zip(&w) {
            s += wi * f(mid + 0.5 * h * xi);
        }
        total += 0.5 * h * s;
    }
    total
}

/// Upper end of the normalization range.
pub fn r_cut(wf: &RadialWavefunction) -> f64 {
    wf.spec.molecule.r_e + 40.0 / wf.spec.alpha()
}

/// `∫₀^{r_cut} |φ|² r^{N−1} dr` at the current `g_n`.
pub fn norm_integral(wf: &RadialWavefunction, quadrature_points: usize) -> f64 {
    integrate(|r| wf.f_of_r(r).powi(2), 0.0, r_cut(wf), quadrature_points)
}

/// Returns a copy with `g_n` set so that the normalization integral is one.
pub fn normalize(wf: &RadialWavefunction, quadrature_points: usize) -> Result<RadialWavefunction> {
    let mut unit = wf.clone();
    unit.g_n = 1.0;
    let integral = norm_integral(&unit, quadrature_points);
    if !integral.is_finite() || !(integral > 0.0) {
        return Err(SpectraError::Numerical(format!(
            "normalization integral is {integral}"
        )));
    }
    unit.g_n = 1.0 / integral.sqrt();
    Ok(unit)
}

/// Sign changes of φ on a uniform grid over [r_lo, r_hi], each confirmed by
/// bisection.
pub fn count_nodes(wf: &RadialWavefunction, r_lo: f64, r_hi: f64, samples: usize) -> usize {
    let samples = samples.max(2);
    let h = (r_hi - r_lo) / (samples - 1) as f64;
    let mut nodes = 0;
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..samples {
        let r = r_lo + i as f64 * h;
        let v = evaluate(wf, r);
        if v == 0.0 || !v.is_finite() {
            continue;
        }
        if let Some((pr, pv)) = prev {
            if pv.signum() != v.signum() && confirm_root(wf, pr, r, pv) {
                nodes += 1;
            }
        }
        prev = Some((r, v));
    }
    nodes
}

fn confirm_root(wf: &RadialWavefunction, mut a: f64, mut b: f64, fa: f64) -> bool {
    for _ in 0..60 {
        let m = 0.5 * (a + b);
        let fm = evaluate(wf, m);
        if !fm.is_finite() {
            return false;
        }
        if fm == 0.0 {
            return true;
        }
        if fm.signum() == fa.signum() {
            a = m;
        } else {
            b = m;
        }
    }
    evaluate(wf, a).signum() != evaluate(wf, b).signum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfd::make_config;
    use crate::molecule::{MoleculeDb, MoleculeParams};

    fn mol(name: &str) -> MoleculeParams {
        MoleculeDb::builtin().get(name).unwrap().clone()
    }

    fn wf(name: &str, n: u32, l: u32, cfg: FractionalConfig) -> RadialWavefunction {
        let spec = PotentialSpec::deng_fan(&mol(name)).unwrap();
        RadialWavefunction::new(&spec, &QuantumState::new(n, l, 3).unwrap(), &cfg).unwrap()
    }

    /// Jacobi polynomial by the three-term recurrence.
    fn jacobi(n: u32, a: f64, b: f64, x: f64) -> f64 {
        let mut p0 = 1.0;
        if n == 0 {
            return p0;
        }
        let mut p1 = 0.5 * (a - b + (a + b + 2.0) * x);
        for k in 2..=n {
            let k = k as f64;
            let c = 2.0 * k + a + b;
            let a1 = 2.0 * k * (k + a + b) * (c - 2.0);
            let a2 = (c - 1.0) * (a * a - b * b);
            let a3 = (c - 2.0) * (c - 1.0) * c;
            let a4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * c;
            let p2 = ((a2 + a3 * x) * p1 - a4 * p0) / a1;
            p0 = p1;
            p1 = p2;
        }
        p1
    }

    #[test]
    fn kernel_small_cases() {
        assert_eq!(kernel_coefficients(0, 3.0, 2.0, 1.7, 0.4), vec![1.0]);
        // d/dρ[ρ^{1+a}(1−ρ)^{1+b}] ρ^{−a}(1−ρ)^{−b} = (1+a)(1−ρ) − (1+b)ρ
        let c = kernel_coefficients(1, 3.0, 2.0, 1.0, 1.0);
        assert_eq!(c, vec![4.0, -3.0]);
        let m = kernel_monomials(&c, 1.0);
        assert_eq!(m, vec![(4.0, 0.0), (-7.0, 1.0)]);
    }

    #[test]
    fn chi_and_weight_classical() {
        let co = mol("CO");
        let spec = PotentialSpec::deng_fan(&co).unwrap();
        let cfg = FractionalConfig::classical();
        let s = QuantumState::new(0, 0, 3).unwrap();
        let e = energy(&spec, &s, &cfg).unwrap();
        let c = chi(&spec, &s, &cfg, e.e_ev).unwrap();
        assert!((c.rho - e.root).abs() < 1e-6 * e.root);
        assert!(c.rho > 0.0);
        let xi = xi_coefficients(&spec, &s, &cfg);
        assert!((c.one_minus - (0.5 + xi.s.sqrt())).abs() < 1e-12 * c.one_minus);
        let w = weight(&spec, &s, &cfg, e.e_ev).unwrap();
        assert_eq!(w.prefactor, 1.0);
        assert!((w.exponents.one_minus - 2.0 * xi.s.sqrt()).abs() < 1e-12 * w.exponents.one_minus);
        for i in 1..100 {
            assert!(w.eval(i as f64 / 100.0, 1.0) >= 0.0);
        }
        let half = make_config(0.5, 1.0).unwrap();
        let w = weight(&spec, &s, &half, energy(&spec, &s, &half).unwrap().e_ev).unwrap();
        assert!((w.prefactor - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-13);
    }

    #[test]
    fn series_structure() {
        let w0 = wf("CO", 0, 0, FractionalConfig::classical());
        assert_eq!(w0.series.len(), 1);
        let w1 = wf("CO", 1, 0, FractionalConfig::classical());
        assert_eq!(w1.series.len(), 2);
        assert!(w1.series.iter().all(|(c, p)| c.is_finite() && p.is_finite()));
    }

    #[test]
    fn matches_jacobi_oracle() {
        for name in ["CO", "H2", "I2"] {
            for n in 0..=3 {
                let w = wf(name, n, 1, FractionalConfig::classical());
                let p = w.exp_rho;
                let q = w.exp_one_minus - 0.5;
                let fact: f64 = (1..=n).map(|k| k as f64).product();
                for i in 1..=10 {
                    let r = w.spec.molecule.r_e * (0.6 + 0.08 * i as f64);
                    let rho = w.rho(r);
                    let ln_chi = p * rho.ln() + (q + 0.5) * (1.0 - rho).ln() - w.log_scale;
                    let oracle = ln_chi.exp() * fact * jacobi(n, 2.0 * p, 2.0 * q, 1.0 - 2.0 * rho);
                    let got = w.f_of_r(r);
                    let tol = 1e-8 * oracle.abs().max(1e-300);
                    assert!((got - oracle).abs() <= tol, "{name} n={n} r={r}: {got} vs {oracle}");
                    let mono = ln_chi.exp() * (1.0 - rho).powf(w.exp_one_minus - q - 0.5) * w.series_at(rho);
                    assert!((mono - oracle).abs() <= 1e-6 * oracle.abs().max(1e-300), "{name} n={n}");
                }
            }
        }
    }

    #[test]
    fn rodrigues_series_cross_check() {
        // A shallow, light well keeps the alternating binomial series well conditioned.
        let toy = MoleculeParams::new("toy", 1.0, 1.0, 0.5, 500.0).unwrap();
        for cfg in [FractionalConfig::classical(), make_config(0.9, 1.0).unwrap(), make_config(0.8, 1.0).unwrap()] {
            for n in 0..=2 {
                let spec = PotentialSpec::deng_fan(&toy).unwrap();
                let s = QuantumState::new(n, 0, 3).unwrap();
                let w = RadialWavefunction::new(&spec, &s, &cfg).unwrap();
                let series = rodrigues_series(&spec, &s, &cfg, w.e_ev, DEFAULT_TRUNCATION_TOL).unwrap();
                if n == 0 {
                    // No differentiation: the kernel is (1−ρ^δ)^b itself.
                    assert_eq!(series[0], (1.0, 0.0));
                }
                let b = weight(&spec, &s, &cfg, w.e_ev).unwrap().exponents.one_minus;
                let rho_e = w.rho(spec.molecule.r_e);
                let from_series = eval_rodrigues_series(&series, rho_e, cfg.delta, b);
                let exact = w.series_at(rho_e);
                assert!(
                    (from_series - exact).abs() <= 1e-7 * exact.abs().max(1.0),
                    "δ={} n={n}: {from_series} vs {exact}",
                    cfg.delta
                );
            }
        }
    }

    #[test]
    fn rodrigues_series_overflow_on_deep_wells() {
        let spec = PotentialSpec::deng_fan(&mol("CO")).unwrap();
        let s = QuantumState::new(1, 0, 3).unwrap();
        let cfg = make_config(0.5, 1.0).unwrap();
        let e = energy(&spec, &s, &cfg).unwrap().e_ev;
        assert!(matches!(
            rodrigues_series(&spec, &s, &cfg, e, DEFAULT_TRUNCATION_TOL),
            Err(SpectraError::Numerical(_))
        ));
    }

    #[test]
    fn rodrigues_series_term_cap() {
        let toy = MoleculeParams::new("toy", 1.0, 1.0, 0.5, 500.0).unwrap();
        let spec = PotentialSpec::deng_fan(&toy).unwrap();
        let s = QuantumState::new(1, 0, 3).unwrap();
        let cfg = FractionalConfig::classical();
        let e = energy(&spec, &s, &cfg).unwrap().e_ev;
        assert!(matches!(
            rodrigues_series(&spec, &s, &cfg, e, 0.0),
            Err(SpectraError::Convergence { .. })
        ));
    }

    #[test]
    fn gauss_legendre_exact_for_polynomials() {
        let (x, w) = gauss_legendre(16);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        let m30: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(30)).sum();
        assert!((m30 - 2.0 / 31.0).abs() < 1e-14);
        let v = integrate(|t| t.sin(), 0.0, std::f64::consts::PI, 64);
        assert!((v - 2.0).abs() < 1e-13);
    }

    #[test]
    fn normalization() {
        let w = wf("CO", 2, 1, FractionalConfig::classical());
        let a = normalize(&w, DEFAULT_QUADRATURE_POINTS).unwrap();
        assert!((norm_integral(&a, DEFAULT_QUADRATURE_POINTS) - 1.0).abs() < 1e-10);
        let b = normalize(&a, DEFAULT_QUADRATURE_POINTS).unwrap();
        assert!((a.g_n - b.g_n).abs() <= 1e-12 * a.g_n);
        let i1 = norm_integral(&a, DEFAULT_QUADRATURE_POINTS);
        let i2 = norm_integral(&a, 2 * DEFAULT_QUADRATURE_POINTS);
        assert!((i1 - i2).abs() <= 1e-8);
        let mut doubled = w.clone();
        doubled.kernel.iter_mut().for_each(|c| *c *= 2.0);
        let d = normalize(&doubled, DEFAULT_QUADRATURE_POINTS).unwrap();
        assert!((d.g_n - a.g_n / 2.0).abs() <= 1e-12 * a.g_n);
        // Same integral in r^{N−1}-weighted φ form.
        let phi2 = integrate(|r| evaluate(&a, r).powi(2) * r * r, 1e-9, r_cut(&a), DEFAULT_QUADRATURE_POINTS);
        assert!((phi2 - 1.0).abs() < 1e-6);
    }

    #[test]
    fn node_counts() {
        let scan = |w: &RadialWavefunction| count_nodes(w, 1e-3, r_cut(w), 20_000);
        assert_eq!(scan(&wf("CO", 0, 0, FractionalConfig::classical())), 0);
        assert_eq!(scan(&wf("CO", 2, 0, FractionalConfig::classical())), 2);
        assert_eq!(scan(&wf("I2", 3, 1, FractionalConfig::classical())), 3);
    }

    #[test]
    fn sign_pattern_and_decay() {
        let w = normalize(&wf("CO", 2, 0, FractionalConfig::classical()), DEFAULT_QUADRATURE_POINTS).unwrap();
        let re = w.spec.molecule.r_e;
        let mut signs = Vec::new();
        let mut r = 0.5;
        while r < re + 2.0 {
            let v = evaluate(&w, r);
            if v.abs() > 1e-3 {
                let s = v.signum();
                if signs.last() != Some(&s) {
                    signs.push(s);
                }
            }
            r += 1e-3;
        }
        assert_eq!(signs.len(), 3);
        assert_eq!(signs[0], signs[2]);
        assert_eq!(signs[0], -signs[1]);
        let mut prev = f64::INFINITY;
        let mut r = re + 1.0;
        while r < r_cut(&w) {
            let v = evaluate(&w, r).abs();
            assert!(v <= prev);
            prev = v;
            r += 0.1;
        }
    }

    #[test]
    fn fractional_is_real_and_decays() {
        let cfg = make_config(0.5, 1.0).unwrap();
        let w = wf("CO", 1, 0, cfg);
        assert!(w.is_experimental());
        assert!(w.exp_rho > 0.0);
        let far = w.f_of_r(r_cut(&w)).abs();
        let peak = (1..400).map(|i| w.f_of_r(i as f64 * 0.01).abs()).fold(0.0, f64::max);
        assert!(far < 1e-10 * peak);
        for i in 1..1000 {
            assert!(w.f_of_r(i as f64 * 0.01).is_finite());
        }
    }
}
