//! Quantum numbers, oscillator parameters and entropy orders.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Orbital and magnetic quantum numbers (l, m) of a spherical harmonic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AngularState {
    pub l: u32,
    pub m: i32,
}

impl AngularState {
    pub fn new(l: u32, m: i32) -> Result<Self> {
        if m.unsigned_abs() > l {
            return Err(Error::domain(format!("|m| must not exceed l, got l = {l}, m = {m}")));
        }
        Ok(AngularState { l, m })
    }

    /// |m|; every angular quantity depends on m only through it.
    pub fn abs_m(&self) -> u32 {
        self.m.unsigned_abs()
    }
}

/// Oscillator quantum numbers (n, l, m), with n the radial quantum number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuantumState {
    pub n: u32,
    pub l: u32,
    pub m: i32,
}

impl QuantumState {
    pub fn new(n: u32, l: u32, m: i32) -> Result<Self> {
        AngularState::new(l, m)?;
        Ok(QuantumState { n, l, m })
    }

    pub fn angular(&self) -> AngularState {
        AngularState { l: self.l, m: self.m }
    }
}

/// Strength λ of the potential V(r) = ½λ²r².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscillatorParams {
    pub lambda: f64,
}

impl OscillatorParams {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::domain(format!("lambda must be positive and finite, got {lambda}")));
        }
        Ok(OscillatorParams { lambda })
    }
}

impl Default for OscillatorParams {
    fn default() -> Self {
        OscillatorParams { lambda: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderClass {
    /// p = 1, the Shannon limit.
    Shannon,
    /// 2p a positive integer.
    Lattice,
    General,
}

/// Rényi order p > 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyOrder {
    p: f64,
}

impl EntropyOrder {
    pub fn new(p: f64) -> Result<Self> {
        if !(p > 0.0 && p.is_finite()) {
            return Err(Error::domain(format!("entropy order must be positive and finite, got {p}")));
        }
        Ok(EntropyOrder { p })
    }

    pub fn value(&self) -> f64 {
        self.p
    }

    pub fn class(&self) -> OrderClass {
        if self.p == 1.0 {
            OrderClass::Shannon
        } else if self.twice().is_some() {
            OrderClass::Lattice
        } else {
            OrderClass::General
        }
    }

    /// 2p when it is a positive integer.
    pub fn twice(&self) -> Option<u32> {
        let q = 2.0 * self.p;
        (q.fract() == 0.0 && q <= u32::MAX as f64).then_some(q as u32)
    }

    pub fn is_shannon(&self) -> bool {
        self.p == 1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_classification() {
        assert_eq!(EntropyOrder::new(1.0).unwrap().class(), OrderClass::Shannon);
        assert_eq!(EntropyOrder::new(2.5).unwrap().class(), OrderClass::Lattice);
        assert_eq!(EntropyOrder::new(2.5).unwrap().twice(), Some(5));
        assert_eq!(EntropyOrder::new(0.7).unwrap().class(), OrderClass::General);
        assert!(EntropyOrder::new(0.0).is_err());
        assert!(EntropyOrder::new(f64::NAN).is_err());
    }

    #[test]
    fn state_validation() {
        assert!(QuantumState::new(0, 1, -1).is_ok());
        assert!(QuantumState::new(0, 1, 2).is_err());
        assert_eq!(AngularState::new(3, -2).unwrap().abs_m(), 2);
        assert!(OscillatorParams::new(-1.0).is_err());
    }
}
