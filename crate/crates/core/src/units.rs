//! Physical constants and unit conversions.
//!
//! The values are the conversion factors used to produce the published energy
//! tables, not CODATA recommendations. Reproducing those tables at eight
//! decimals depends on using exactly these literals.

use crate::error::{Result, SpectraError};

/// ħc in eV·Å.
pub const HBAR_C: f64 = 1973.29;
/// One wavenumber (cm⁻¹) in eV.
pub const CM_INV_TO_EV: f64 = 1.239841875e-4;
/// One atomic mass unit in MeV/c².
pub const AMU_TO_MEV: f64 = 931.494028;

/// Bundle of the conversion constants, for callers that want them as data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub hbar_c: f64,
    pub cm_inv_to_ev: f64,
    pub amu_to_mev: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self {
            hbar_c: HBAR_C,
            cm_inv_to_ev: CM_INV_TO_EV,
            amu_to_mev: AMU_TO_MEV,
        }
    }
}

/// Converts a wavenumber in cm⁻¹ to eV.
pub fn cm_inv_to_ev(x: f64) -> f64 {
    x * CM_INV_TO_EV
}

/// Converts an energy in eV to cm⁻¹.
pub fn ev_to_cm_inv(e: f64) -> f64 {
    e / CM_INV_TO_EV
}

/// Rest energy μc² in eV of a reduced mass given in amu.
pub fn reduced_mass_to_ev(mu: f64) -> Result<f64> {
    if !(mu > 0.0) || !mu.is_finite() {
        return Err(SpectraError::InvalidInput(format!(
            "reduced mass must be positive and finite, got {mu}"
        )));
    }
    Ok(mu * AMU_TO_MEV * 1e6)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_wavenumber() {
        assert_eq!(cm_inv_to_ev(1.0), 1.239841875e-4);
        assert_eq!(cm_inv_to_ev(0.0), 0.0);
    }

    #[test]
    fn co_dissociation_energy() {
        // 87471.42567 × 1.239841875e-4 = 10.845073641161593125 (exact decimal product).
        // The CO DFP and SDFP ground states differ by this amount:
        // 0.14236930 - (-10.7027043) = 10.8450736.
        let de = cm_inv_to_ev(87471.42567);
        assert!((de - 10.845_073_641_161_593).abs() < 1e-13);
        assert!((0.14236930 - de - (-10.7027043)).abs() < 1e-7);
    }

    #[test]
    fn reduced_mass() {
        assert_eq!(reduced_mass_to_ev(1.0).unwrap(), 9.31494028e8);
        let h2 = reduced_mass_to_ev(0.50391).unwrap();
        // 0.50391 × 931494028 = 469389155.64948
        assert!((h2 - 469_389_155.649_48).abs() < 1e-6);
        assert_eq!(reduced_mass_to_ev(2.0).unwrap(), 2.0 * reduced_mass_to_ev(1.0).unwrap());
        assert!(matches!(reduced_mass_to_ev(0.0), Err(SpectraError::InvalidInput(_))));
        assert!(matches!(reduced_mass_to_ev(-3.0), Err(SpectraError::InvalidInput(_))));
    }

    #[test]
    fn constants_bundle() {
        let c = PhysicalConstants::default();
        assert_eq!(c.hbar_c, 1973.29);
        assert_eq!(c.amu_to_mev, 931.494028);
    }

    proptest::proptest! {
        #[test]
        fn conversions_are_linear(a in -1e6f64..1e6, b in -1e6f64..1e6, k in -100.0f64..100.0) {
            let lhs = cm_inv_to_ev(a + b);
            let rhs = cm_inv_to_ev(a) + cm_inv_to_ev(b);
            let scale = cm_inv_to_ev(a.abs() + b.abs());
            proptest::prop_assert!((lhs - rhs).abs() <= 4.0 * f64::EPSILON * scale.max(f64::MIN_POSITIVE));
            let lhs = cm_inv_to_ev(k * a);
            let rhs = k * cm_inv_to_ev(a);
            proptest::prop_assert!((lhs - rhs).abs() <= 4.0 * f64::EPSILON * lhs.abs().max(1e-300));
        }

        #[test]
        fn wavenumber_round_trip(e in -1e3f64..1e3) {
            let back = cm_inv_to_ev(ev_to_cm_inv(e));
            proptest::prop_assert!((back - e).abs() <= 1e-15 * e.abs().max(f64::MIN_POSITIVE));
        }
    }
}
