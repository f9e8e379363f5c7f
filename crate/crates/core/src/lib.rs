pub mod barrier;
pub mod cli;
pub mod coefficients;
pub mod eigenfunctions;
pub mod error;
pub mod free_limit;
pub mod greens;
pub mod quadrature;
pub mod sampled;
pub mod spectral_measure;
pub mod test_space;
pub mod transforms;
pub mod verify;
pub mod wavepacket;

pub use barrier::{branch_sqrt, energy_point, EnergyPoint, PhysicalConfig};
pub use error::{Error, Result};
pub use num_complex::Complex64;
