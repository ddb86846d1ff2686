//! Closed-form bound states of the Deng-Fan potential family.
//!
//! The radial equation is mapped to `ρ = e^{−αr}`, the centrifugal term is
//! replaced by its exponential-variable approximation
//! `1/r² ≈ α²[c₀ + ρ/(1−ρ) + ρ²/(1−ρ)²]` with `c₀ = 1/12`, and the
//! fractional Nikiforov–Uvarov construction (negative branch of `π`, `k = k₋`)
//! yields the quantization condition solved here.
//!
//! All energies are in eV. Dimensionless energies use
//! `ε = κE` with `κ = 2μc² / (α²(ħc)²)`.

use crate::error::{Result, SpectraError};
use crate::gfd::FractionalConfig;
use crate::molecule::MoleculeParams;
use crate::units;

/// Constant term of the centrifugal approximation.
pub const C0: f64 = 1.0 / 12.0;

/// Which member of the Deng-Fan family a [`PotentialSpec`] describes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Variant {
    /// `V0 = 0`
    DengFan,
    /// `V0 = −D_e`
    ShiftedDengFan,
    /// Arbitrary constant shift.
    General,
}

/// A Deng-Fan-family potential `V(r) = D_e(1 − b e^{−αr}/(1 − e^{−αr}))² + V0`.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialSpec {
    pub molecule: MoleculeParams,
    /// Constant shift in eV.
    pub v0: f64,
    /// `e^{α r_e} − 1`
    pub b: f64,
    pub variant: Variant,
    /// Dissociation energy in eV.
    pub d_e_ev: f64,
    /// `2μc² / (α²(ħc)²)` in eV⁻¹.
    pub kappa: f64,
}

impl PotentialSpec {
    fn build(molecule: &MoleculeParams, v0: f64, variant: Variant) -> Result<Self> {
        molecule.validate()?;
        if !v0.is_finite() {
            return Err(SpectraError::InvalidInput(format!("shift V0 must be finite, got {v0}")));
        }
        let mc2 = units::reduced_mass_to_ev(molecule.mu)?;
        let ahc = molecule.alpha * units::HBAR_C;
        Ok(Self {
            molecule: molecule.clone(),
            v0,
            b: (molecule.alpha * molecule.r_e).exp_m1(),
            variant,
            d_e_ev: molecule.d_e_ev(),
            kappa: 2.0 * mc2 / (ahc * ahc),
        })
    }

    pub fn deng_fan(molecule: &MoleculeParams) -> Result<Self> {
        Self::build(molecule, 0.0, Variant::DengFan)
    }

    pub fn shifted_deng_fan(molecule: &MoleculeParams) -> Result<Self> {
        Self::build(molecule, -molecule.d_e_ev(), Variant::ShiftedDengFan)
    }

    pub fn general(molecule: &MoleculeParams, v0: f64) -> Result<Self> {
        Self::build(molecule, v0, Variant::General)
    }

    pub fn alpha(&self) -> f64 {
        self.molecule.alpha
    }
}

/// Radial potential in eV at `r` (Å).
pub fn potential_eval(spec: &PotentialSpec, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(SpectraError::InvalidInput(format!("radius must be positive, got {r}")));
    }
    let x = spec.alpha() * r;
    // e^{-x}/(1-e^{-x}) = 1/(e^x - 1)
    let frac = spec.b / x.exp_m1();
    let t = 1.0 - frac;
    Ok(spec.d_e_ev * t * t + spec.v0)
}

/// Exponential-variable approximation of `1/r²`, in Å⁻².
pub fn pekeris_inverse_r2(r: f64, alpha: f64) -> f64 {
    let g = 1.0 / (alpha * r).exp_m1(); // ρ/(1−ρ)
    alpha * alpha * (C0 + g + g * g)
}

/// Rotational-dimensional quantum numbers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantumState {
    pub n: u32,
    pub l: u32,
    pub dim: u32,
    /// `l + (N − 2)/2`
    pub eta: f64,
}

impl QuantumState {
    pub fn new(n: u32, l: u32, dim: u32) -> Result<Self> {
        if dim < 2 {
            return Err(SpectraError::InvalidInput(format!("dimension must be at least 2, got {dim}")));
        }
        Ok(Self {
            n,
            l,
            dim,
            eta: l as f64 + (dim as f64 - 2.0) / 2.0,
        })
    }

    /// `η² − 1/4`, the centrifugal strength.
    pub fn centrifugal(&self) -> f64 {
        self.eta * self.eta - 0.25
    }
}

/// The three energy-independent coefficients of the quantization condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XiCoefficients {
    pub xi1: f64,
    pub xi2: f64,
    pub xi3: f64,
    /// `ξ1 + ξ2 + ξ3`, evaluated in its simplified V0-free form.
    pub s: f64,
    /// `ξ2 + 2ξ3`, evaluated in its simplified V0-free form.
    pub xi2_plus_2xi3: f64,
}

pub fn xi_coefficients(
    spec: &PotentialSpec,
    state: &QuantumState,
    cfg: &FractionalConfig,
) -> XiCoefficients {
    let qd = cfg.q * cfg.delta;
    let e = state.centrifugal();
    let k = spec.kappa;
    let de = spec.d_e_ev;
    let b = spec.b;
    let v0 = spec.v0;
    let u = 1.0 - 2.0 * qd;
    let w = qd - 1.0;
    XiCoefficients {
        xi1: u * u / 4.0 + C0 * e + k * (v0 + de * (b + 1.0) * (b + 1.0)),
        xi2: w * u / 2.0 - (2.0 * C0 - 1.0) * e - 2.0 * k * (de * (b + 1.0) + v0),
        xi3: w * w / 4.0 + C0 * e + k * (de + v0),
        s: qd * qd / 4.0 + e + k * de * b * b,
        xi2_plus_2xi3: -qd * w / 2.0 + e - 2.0 * k * de * b,
    }
}

/// Closed-form eigenvalue together with the quantities that certify it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyResult {
    pub e_ev: f64,
    /// `κE`
    pub epsilon: f64,
    pub sqrt_s: f64,
    /// `√(ξ3 − ε)`, the quantization quotient.
    pub root: f64,
    pub numerator: f64,
    pub denominator: f64,
    pub xi: XiCoefficients,
}

pub fn energy(
    spec: &PotentialSpec,
    state: &QuantumState,
    cfg: &FractionalConfig,
) -> Result<EnergyResult> {
    let xi = xi_coefficients(spec, state, cfg);
    if xi.s < 0.0 {
        return Err(SpectraError::NoBoundState("discriminant"));
    }
    let d = cfg.delta;
    let q = cfg.q;
    let n = state.n as f64;
    let two_n1 = 2.0 * n + 1.0;
    let sqrt_s = xi.s.sqrt();
    let numerator = d * (0.5 * (1.0 - 2.0 * q * d - q * n * (n + 1.0) * (d + 1.0)) - two_n1 * sqrt_s)
        - cfg.lambda * xi.xi2_plus_2xi3;
    let denominator = d * two_n1 + 2.0 * cfg.lambda * sqrt_s;
    let root = numerator / denominator;
    if !(root >= 0.0) {
        return Err(SpectraError::NoBoundState("quantization root negative"));
    }
    let epsilon = xi.xi3 - root * root;
    // Same value as epsilon/κ, grouped so the V0 shift enters additively.
    let w = q * d - 1.0;
    let e_ev = (w * w / 4.0 + C0 * state.centrifugal() - root * root) / spec.kappa
        + (spec.d_e_ev + spec.v0);
    Ok(EnergyResult {
        e_ev,
        epsilon,
        sqrt_s,
        root,
        numerator,
        denominator,
        xi,
    })
}

pub fn epsilon_of_energy(e_ev: f64, spec: &PotentialSpec) -> f64 {
    spec.kappa * e_ev
}

pub fn energy_of_epsilon(eps: f64, spec: &PotentialSpec) -> f64 {
    eps / spec.kappa
}

/// Coefficient records of the Nikiforov–Uvarov functions at a trial energy.
///
/// Functions of ρ are stored as `(constant, coefficient of ρ^δ)`; `k₋`,
/// `λ` and `λ_n` are coefficients of `ρ^{δ−1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NuIntermediates {
    pub a_coef: f64,
    pub b_coef: f64,
    pub c_coef: f64,
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
    pub k_minus: f64,
    pub pi_minus: (f64, f64),
    pub tau_gf: (f64, f64),
    pub lambda_const: f64,
    pub lambda_n_const: f64,
}

pub fn nu_intermediates(
    spec: &PotentialSpec,
    state: &QuantumState,
    cfg: &FractionalConfig,
    e_ev: f64,
) -> Result<NuIntermediates> {
    let eps = epsilon_of_energy(e_ev, spec);
    let e = state.centrifugal();
    let k = spec.kappa;
    let (de, b, v0) = (spec.d_e_ev, spec.b, spec.v0);
    let (d, q, lam) = (cfg.delta, cfg.q, cfg.lambda);
    let n = state.n as f64;

    let a_coef = C0 * e + k * (v0 + de * (b + 1.0) * (b + 1.0)) - eps;
    let b_coef = (2.0 * C0 - 1.0) * e + 2.0 * k * (v0 + de * (b + 1.0)) - 2.0 * eps;
    let c_coef = C0 * e + k * (v0 + de) - eps;

    let qd = q * d;
    let t1 = (1.0 - 2.0 * qd).powi(2) / 4.0 + a_coef;
    let t2 = (qd - 1.0) * (1.0 - 2.0 * qd) / 2.0 - b_coef;
    let t3 = (qd - 1.0).powi(2) / 4.0 + c_coef;
    let s = t1 + t2 + t3;
    if s < 0.0 {
        return Err(SpectraError::NoBoundState("discriminant"));
    }
    if t3 < 0.0 {
        return Err(SpectraError::NoBoundState("negative T3"));
    }
    let (rt3, rs) = (t3.sqrt(), s.sqrt());

    let k_minus = -lam * (t2 + 2.0 * t3 + 2.0 * (t3 * s).sqrt());
    let pi_minus = ((qd - 1.0) / 2.0 + rt3, (1.0 - 2.0 * qd) / 2.0 - rt3 - rs);
    let tau_gf = (2.0 * rt3 + q, -(q * (d + 1.0) + 2.0 * (rt3 + rs)));
    let lambda_const = -lam * (t2 + 2.0 * t3) + d * (0.5 * (1.0 - 2.0 * qd) - rt3) - rs * (d + 2.0 * lam * rt3);
    let lambda_n_const = n * d * (q * (n + 1.0) * (d + 1.0) / 2.0 + 2.0 * (rt3 + rs));

    Ok(NuIntermediates {
        a_coef,
        b_coef,
        c_coef,
        t1,
        t2,
        t3,
        k_minus,
        pi_minus,
        tau_gf,
        lambda_const,
        lambda_n_const,
    })
}

/// `λ − λ_n` (coefficient of `ρ^{δ−1}`) at a trial energy; zero at an eigenvalue.
pub fn nu_residual(
    spec: &PotentialSpec,
    state: &QuantumState,
    cfg: &FractionalConfig,
    e_ev: f64,
) -> Result<f64> {
    let m = nu_intermediates(spec, state, cfg, e_ev)?;
    Ok(m.lambda_const - m.lambda_n_const)
}

/// [`nu_residual`] divided by the magnitude of the largest term entering it
/// (at least 1), so that it can be compared against a relative tolerance
/// even for `n = 0` where `λ_n` vanishes.
pub fn nu_residual_relative(
    spec: &PotentialSpec,
    state: &QuantumState,
    cfg: &FractionalConfig,
    e_ev: f64,
) -> Result<f64> {
    let m = nu_intermediates(spec, state, cfg, e_ev)?;
    let (d, lam) = (cfg.delta, cfg.lambda);
    let rt3 = m.t3.sqrt();
    let rs = (m.t1 + m.t2 + m.t3).sqrt();
    let scale = [
        (lam * (m.t2 + 2.0 * m.t3)).abs(),
        (rs * (d + 2.0 * lam * rt3)).abs(),
        (d * rt3).abs(),
        m.lambda_n_const.abs(),
        1.0,
    ]
    .into_iter()
    .fold(0.0, f64::max);
    Ok((m.lambda_const - m.lambda_n_const) / scale)
}

/// Largest vibrational quantum number with a bound state for the given `l`.
pub fn n_max(spec: &PotentialSpec, l: u32, dim: u32, cfg: &FractionalConfig) -> Result<u32> {
    const SCAN_CAP: u32 = 1_000_000;
    let mut last = None;
    for n in 0..SCAN_CAP {
        let state = QuantumState::new(n, l, dim)?;
        match energy(spec, &state, cfg) {
            Ok(_) => last = Some(n),
            Err(SpectraError::NoBoundState(_)) => break,
            Err(e) => return Err(e),
        }
    }
    last.ok_or(SpectraError::NoBoundState("no bound state at n = 0"))
}
