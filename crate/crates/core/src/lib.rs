//! Rényi, Shannon and Tsallis entropies of three-dimensional isotropic
//! harmonic-oscillator states, split into angular and radial parts.

pub mod error;
pub mod specfun;

pub use error::{Error, Result};
pub mod angular;
pub mod entropy;
pub mod oracle;
pub mod radial;
pub mod rydberg;
pub mod state;

pub use state::{AngularState, EntropyOrder, OrderClass, OscillatorParams, QuantumState};
