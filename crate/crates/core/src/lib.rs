//! Bound-state spectra of diatomic molecules in the Deng-Fan potential family,
//! in N dimensions and with a generalized fractional derivative of order δ.

pub mod error;
pub mod fd_oracle;
pub mod gfd;
pub mod molecule;
pub mod nu;
pub mod reference;
pub mod units;
pub mod wavefunction;

pub use error::{Result, SpectraError};
pub use gfd::{make_config, FractionalConfig};
pub use molecule::{MoleculeDb, MoleculeParams};
pub use nu::{energy, EnergyResult, PotentialSpec, QuantumState, Variant};
