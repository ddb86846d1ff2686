//! Finite-difference eigensolver for the classical (δ = 1) radial equation.
//!
//! Solves `−F″ + U(r) F = k E F` on a uniform grid with Dirichlet ends, where
//! `k = 2μc²/(ħc)²` and `U = k V(r) + (η² − ¼)/r²` (exact centrifugal term) or
//! its exponential-variable approximation. The lowest eigenvalues of the
//! symmetric tridiagonal matrix are found by Sturm-sequence bisection.

use crate::error::{Result, SpectraError};
use crate::nu::{energy, pekeris_inverse_r2, potential_eval, PotentialSpec, QuantumState};
use crate::gfd::FractionalConfig;
use crate::units;

pub const DEFAULT_POINTS: usize = 20_000;
pub const MAX_COUNT: usize = 20;
const MAX_BISECTIONS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    ExactCentrifugal,
    Pekeris,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub r_min: f64,
    pub r_max: f64,
    /// Interior nodes.
    pub points: usize,
}

impl GridSpec {
    pub fn new(r_min: f64, r_max: f64, points: usize) -> Result<Self> {
        let g = Self { r_min, r_max, points };
        g.validate()?;
        Ok(g)
    }

    /// `r_min = 10⁻³/α`, `r_max = r_e + 30/α`, 20000 interior nodes.
    pub fn default_for(spec: &PotentialSpec) -> Self {
        let a = spec.alpha();
        Self {
            r_min: 1e-3 / a,
            r_max: spec.molecule.r_e + 30.0 / a,
            points: DEFAULT_POINTS,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r_min > 0.0) {
            return Err(SpectraError::InvalidInput(format!(
                "radial grid needs r_min > 0, got {}",
                self.r_min
            )));
        }
        self.validate_interval()
    }

    /// Checks the interval and node count only, for grids that may cross zero.
    pub fn validate_interval(&self) -> Result<()> {
        if !(self.r_min < self.r_max && self.r_min.is_finite() && self.r_max.is_finite()) {
            return Err(SpectraError::InvalidInput(format!(
                "grid needs r_min < r_max, got [{}, {}]",
                self.r_min, self.r_max
            )));
        }
        if self.points < 100 {
            return Err(SpectraError::InvalidInput(format!(
                "grid needs at least 100 points, got {}",
                self.points
            )));
        }
        Ok(())
    }

    pub fn spacing(&self) -> f64 {
        (self.r_max - self.r_min) / (self.points + 1) as f64
    }

    /// Same interval with half the spacing.
    pub fn halved(&self) -> Self {
        Self {
            points: 2 * self.points + 1,
            ..*self
        }
    }

    pub fn node(&self, i: usize) -> f64 {
        self.r_min + (i + 1) as f64 * self.spacing()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    /// Ascending, in eV.
    pub eigenvalues: Vec<f64>,
    pub mode: Mode,
    pub grid: GridSpec,
    /// Twice the largest change under grid halving, in eV.
    pub estimated_error: f64,
}

/// Lowest `count` eigenvalues of `−u″ + U u = λ u` on the grid, Dirichlet ends.
pub fn lowest_eigenvalues<F: Fn(f64) -> f64>(
    u: F,
    grid: &GridSpec,
    count: usize,
) -> Result<Vec<f64>> {
    grid.validate_interval()?;
    let h = grid.spacing();
    let off = -1.0 / (h * h);
    let diag: Vec<f64> = (0..grid.points)
        .map(|i| 2.0 / (h * h) + u(grid.node(i)))
        .collect();
    if diag.iter().any(|d| !d.is_finite()) {
        return Err(SpectraError::Numerical("non-finite potential on grid".into()));
    }
    sturm_lowest(&diag, off, count)
}

/// Number of eigenvalues below `x` of the tridiagonal matrix with constant
/// off-diagonal `off`.
fn sturm_count(diag: &[f64], off: f64, x: f64) -> usize {
    let off2 = off * off;
    let mut count = 0;
    let mut d = 1.0;
    for (i, a) in diag.iter().enumerate() {
        d = if i == 0 { a - x } else { a - x - off2 / d };
        if d == 0.0 {
            d = -f64::EPSILON * (a.abs() + off.abs());
        }
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

fn sturm_lowest(diag: &[f64], off: f64, count: usize) -> Result<Vec<f64>> {
    // Gershgorin bounds.
    let lo0 = diag.iter().fold(f64::INFINITY, |m, d| m.min(*d)) - 2.0 * off.abs();
    let hi0 = diag.iter().fold(f64::NEG_INFINITY, |m, d| m.max(*d)) + 2.0 * off.abs();
    let count = count.min(diag.len());
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let (mut lo, mut hi) = (lo0, hi0);
        let mut converged = false;
        for _ in 0..MAX_BISECTIONS {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                converged = true;
                break;
            }
            if sturm_count(diag, off, mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        if !converged {
            return Err(SpectraError::Numerical(format!(
                "bisection for eigenvalue {k} did not converge"
            )));
        }
        out.push(0.5 * (lo + hi));
    }
    Ok(out)
}

/// `2μc²/(ħc)²` in Å⁻² eV⁻¹.
fn radial_scale(spec: &PotentialSpec) -> Result<f64> {
    Ok(2.0 * units::reduced_mass_to_ev(spec.molecule.mu)? / (units::HBAR_C * units::HBAR_C))
}

fn spectrum_on(
    spec: &PotentialSpec,
    centrifugal: f64,
    mode: Mode,
    grid: &GridSpec,
    count: usize,
) -> Result<Vec<f64>> {
    let k = radial_scale(spec)?;
    let alpha = spec.alpha();
    let u = |r: f64| {
        let v = potential_eval(spec, r).unwrap_or(f64::NAN);
        let c = match mode {
            Mode::ExactCentrifugal => 1.0 / (r * r),
            Mode::Pekeris => pekeris_inverse_r2(r, alpha),
        };
        k * v + centrifugal * c
    };
    Ok(lowest_eigenvalues(u, grid, count)?
        .into_iter()
        .map(|lam| lam / k)
        .collect())
}

/// Lowest `count` classical eigenvalues for angular momentum `l` in `dim` dimensions.
pub fn fd_spectrum(
    spec: &PotentialSpec,
    l: u32,
    dim: u32,
    mode: Mode,
    grid: &GridSpec,
    count: usize,
) -> Result<OracleResult> {
    grid.validate()?;
    if count == 0 || count > MAX_COUNT {
        return Err(SpectraError::InvalidInput(format!(
            "eigenvalue count must be in 1..={MAX_COUNT}, got {count}"
        )));
    }
    let centrifugal = QuantumState::new(0, l, dim)?.centrifugal();
    let coarse = spectrum_on(spec, centrifugal, mode, grid, count)?;
    let fine = spectrum_on(spec, centrifugal, mode, &grid.halved(), count)?;
    let estimated_error = 2.0
        * coarse
            .iter()
            .zip(&fine)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
    Ok(OracleResult {
        eigenvalues: coarse,
        mode,
        grid: *grid,
        estimated_error,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonRow {
    pub n: u32,
    pub l: u32,
    pub closed_form: f64,
    pub fd_pekeris: f64,
    pub fd_exact: f64,
    pub estimated_error: f64,
}

impl ComparisonRow {
    pub fn delta_pekeris(&self) -> f64 {
        self.fd_pekeris - self.closed_form
    }

    pub fn delta_exact(&self) -> f64 {
        self.fd_exact - self.closed_form
    }
}

/// Closed-form δ = 1 energies next to both FD modes, one row per (l, n).
pub fn compare_with_closed_form(
    spec: &PotentialSpec,
    l_values: &[u32],
    dim: u32,
    n_range: std::ops::RangeInclusive<u32>,
    grid: &GridSpec,
) -> Result<Vec<ComparisonRow>> {
    let count = *n_range.end() as usize + 1;
    let cfg = FractionalConfig::classical();
    let mut rows = Vec::new();
    for &l in l_values {
        let pek = fd_spectrum(spec, l, dim, Mode::Pekeris, grid, count)?;
        let exact = fd_spectrum(spec, l, dim, Mode::ExactCentrifugal, grid, count)?;
        for n in n_range.clone() {
            let e = energy(spec, &QuantumState::new(n, l, dim)?, &cfg)?;
            rows.push(ComparisonRow {
                n,
                l,
                closed_form: e.e_ev,
                fd_pekeris: pek.eigenvalues[n as usize],
                fd_exact: exact.eigenvalues[n as usize],
                estimated_error: pek.estimated_error,
            });
        }
    }
    Ok(rows)
}
