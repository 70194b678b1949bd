//! Total entropies of oscillator states, the momentum-space rule and the
//! position–momentum uncertainty sums.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::angular::{renyi_angular, shannon_angular};
use crate::error::{Error, Result};
use crate::radial::{renyi_radial_exact, shannon_radial_exact};
use crate::rydberg::{renyi_radial_asymptotic, shannon_radial_asymptotic};
use crate::state::{EntropyOrder, OscillatorParams, QuantumState};

/// Largest |sum − bound| still counted as saturation.
pub const SATURATION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Space {
    Position,
    Momentum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exact,
    /// Large-n leading order for the radial part.
    Asymptotic,
}

/// A total entropy split as total = radial + angular (nats).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyDecomposition {
    pub radial: f64,
    pub angular: f64,
    pub total: f64,
    pub space: Space,
    pub mode: Mode,
    pub p: EntropyOrder,
    /// Set when the radial part carries an unknown O(1) remainder.
    pub caveat: bool,
    pub warnings: Vec<String>,
}

impl EntropyDecomposition {
    fn new(radial: f64, angular: f64, mode: Mode, p: EntropyOrder) -> Self {
        EntropyDecomposition {
            radial,
            angular,
            total: radial + angular,
            space: Space::Position,
            mode,
            p,
            caveat: false,
            warnings: Vec::new(),
        }
    }

    /// The same decomposition for the momentum density γ, which differs from the
    /// position density by the scaling λ → 1/λ of the radial part only.
    pub fn to_momentum(&self, params: OscillatorParams) -> EntropyDecomposition {
        if self.space == Space::Momentum {
            return self.clone();
        }
        let radial = self.radial + 3.0 * params.lambda.ln();
        EntropyDecomposition {
            radial,
            total: radial + self.angular,
            space: Space::Momentum,
            ..self.clone()
        }
    }
}

/// Rényi orders with 1/p + 1/q = 2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConjugatePair {
    p: f64,
    q: f64,
}

impl ConjugatePair {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        if !(p > 0.5 && q > 0.5) || !p.is_finite() || !q.is_finite() {
            return Err(Error::domain(format!("conjugate orders must exceed 1/2, got ({p}, {q})")));
        }
        if (1.0 / p + 1.0 / q - 2.0).abs() > 1e-12 {
            return Err(Error::domain(format!("({p}, {q}) is not conjugate: 1/p + 1/q = {}", 1.0 / p + 1.0 / q)));
        }
        Ok(ConjugatePair { p, q })
    }

    /// The pair (p, p/(2p−1)).
    pub fn with_dual(p: f64) -> Result<Self> {
        if !(p > 0.5) {
            return Err(Error::domain(format!("conjugate orders must exceed 1/2, got {p}")));
        }
        ConjugatePair::new(p, p / (2.0 * p - 1.0))
    }

    pub fn shannon() -> Self {
        ConjugatePair { p: 1.0, q: 1.0 }
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntropyKind {
    Renyi,
    Shannon,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UncertaintyReport {
    pub sum: f64,
    pub bound: f64,
    pub saturated: bool,
    /// Set in asymptotic mode when the transition branch enters; the inequality
    /// is then not asserted.
    pub caveat: bool,
    pub warnings: Vec<String>,
}

/// Total Rényi entropy R_p[ρ_{n,l,m}] split into radial and angular parts.
pub fn renyi_total(state: QuantumState, params: OscillatorParams, p: f64, mode: Mode) -> Result<EntropyDecomposition> {
    let order = EntropyOrder::new(p)?;
    if order.is_shannon() {
        return Err(Error::domain("p = 1 is the Shannon limit; use shannon_total"));
    }
    let angular = renyi_angular(state.angular(), p)?;
    let mut out = match mode {
        Mode::Exact => EntropyDecomposition::new(renyi_radial_exact(state, params, p)?, angular.renyi, mode, order),
        Mode::Asymptotic => {
            let asym = renyi_radial_asymptotic(state.n, state.l, params, p)?;
            let mut d = EntropyDecomposition::new(asym.value, angular.renyi, mode, order);
            d.caveat = asym.caveat;
            d
        }
    };
    out.warnings = angular.warnings;
    Ok(out)
}

/// Total Shannon entropy S[ρ_{n,l,m}] = S_radial + S[Y_{l,m}].
pub fn shannon_total(state: QuantumState, params: OscillatorParams, mode: Mode) -> Result<EntropyDecomposition> {
    let angular = shannon_angular(state.angular())?;
    let radial = match mode {
        Mode::Exact => shannon_radial_exact(state, params)?,
        Mode::Asymptotic => shannon_radial_asymptotic(state.n, params)?,
    };
    Ok(EntropyDecomposition::new(radial, angular, mode, EntropyOrder::new(1.0)?))
}

/// T_p = (e^{(1−p)R} − 1)/(1−p); equals R at p = 1.
pub fn tsallis_from_renyi(r: f64, p: f64) -> f64 {
    if p == 1.0 {
        return r;
    }
    ((1.0 - p) * r).exp_m1() / (1.0 - p)
}

/// ⟨ρ⟩ = ∫ρ² = exp(−R₂[ρ]).
pub fn disequilibrium(state: QuantumState, params: OscillatorParams) -> Result<f64> {
    Ok((-renyi_total(state, params, 2.0, Mode::Exact)?.total).exp())
}

/// R_p[γ] = R_p[ρ] + 3 ln λ. The shift is the same for every order, Shannon included.
pub fn momentum_renyi(position_value: f64, params: OscillatorParams) -> f64 {
    position_value + 3.0 * params.lambda.ln()
}

/// ln p/(1−p), continued by its limit −1 at p = 1.
fn ln_ratio(p: f64) -> f64 {
    if (p - 1.0).abs() < 1e-8 {
        // ln p/(1−p) = −1 − (p−1)/2 + O((p−1)²)
        -1.0 - 0.5 * (p - 1.0)
    } else {
        p.ln() / (1.0 - p)
    }
}

/// 3 ln π − (3/2)(ln p/(1−p) + ln q/(1−q)), the ground-state value of the
/// position–momentum Rényi sum and the lower bound for conjugate orders.
/// At p = q = 1 it reduces to 3(1 + ln π).
pub fn renyi_bound(p: f64, q: f64) -> f64 {
    3.0 * PI.ln() - 1.5 * (ln_ratio(p) + ln_ratio(q))
}

/// R_p[ρ] + R_q[γ] for arbitrary orders, without any conjugacy check.
pub fn position_momentum_sum(state: QuantumState, params: OscillatorParams, p: f64, q: f64, mode: Mode) -> Result<(f64, bool)> {
    let position = order_total(state, params, p, mode)?;
    let momentum = order_total(state, params, q, mode)?.to_momentum(params);
    Ok((position.total + momentum.total, position.caveat || momentum.caveat))
}

fn order_total(state: QuantumState, params: OscillatorParams, p: f64, mode: Mode) -> Result<EntropyDecomposition> {
    if p == 1.0 {
        shannon_total(state, params, mode)
    } else {
        renyi_total(state, params, p, mode)
    }
}

/// Position–momentum uncertainty sum with its bound and saturation flag.
pub fn uncertainty_sum(
    state: QuantumState,
    params: OscillatorParams,
    pair: ConjugatePair,
    kind: EntropyKind,
    mode: Mode,
) -> Result<UncertaintyReport> {
    let (p, q) = (pair.p(), pair.q());
    if kind == EntropyKind::Shannon && (p != 1.0 || q != 1.0) {
        return Err(Error::domain(format!("the Shannon sum needs p = q = 1, got ({p}, {q})")));
    }
    let (sum, caveat) = position_momentum_sum(state, params, p, q, mode)?;
    let bound = renyi_bound(p, q);
    let mut warnings = Vec::new();
    if caveat {
        warnings.push("transition-regime asymptotics carry an unknown O(1) remainder; inequality not asserted".to_string());
    } else if sum < bound - SATURATION_TOL {
        warnings.push(format!("sum {sum} lies below the bound {bound}"));
    }
    Ok(UncertaintyReport {
        sum,
        bound,
        saturated: !caveat && (sum - bound).abs() < SATURATION_TOL,
        caveat,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn ground() -> QuantumState {
        QuantumState::new(0, 0, 0).unwrap()
    }

    #[test]
    fn ground_state_values() {
        let unit = OscillatorParams::default();
        let r2 = renyi_total(ground(), unit, 2.0, Mode::Exact).unwrap();
        assert_relative_eq!(r2.total, 1.5 * (2.0 * PI).ln(), max_relative = 1e-12);
        assert_eq!(r2.total, r2.radial + r2.angular);
        let s = shannon_total(ground(), unit, Mode::Exact).unwrap();
        assert_relative_eq!(s.total, 1.5 * (1.0 + PI.ln()), max_relative = 1e-10);
        assert_relative_eq!(disequilibrium(ground(), unit).unwrap(), (2.0 * PI).powf(-1.5), max_relative = 1e-12);
        assert!(renyi_total(ground(), unit, 1.0, Mode::Exact).is_err());
    }

    #[test]
    fn tsallis_relation() {
        assert_eq!(tsallis_from_renyi(0.0, 3.0), 0.0);
        assert_relative_eq!(tsallis_from_renyi(0.7, 2.0), 1.0 - (-0.7f64).exp(), max_relative = 1e-14);
        assert_relative_eq!(tsallis_from_renyi(0.7, 1.0 + 1e-9), 0.7, max_relative = 1e-8);
    }

    #[test]
    fn momentum_shift() {
        let e = OscillatorParams::new(std::f64::consts::E).unwrap();
        assert_relative_eq!(momentum_renyi(1.25, e), 4.25, max_relative = 1e-15);
        assert_eq!(momentum_renyi(1.25, OscillatorParams::default()), 1.25);
    }

    #[test]
    fn conjugate_pairs() {
        assert!(ConjugatePair::new(2.0, 2.0 / 3.0).is_ok());
        assert!(ConjugatePair::new(1.5, 3.0).is_err());
        assert_relative_eq!(ConjugatePair::with_dual(3.0).unwrap().q(), 0.6, max_relative = 1e-15);
        assert_relative_eq!(renyi_bound(1.0, 1.0), 3.0 * (1.0 + PI.ln()), max_relative = 1e-15);
    }

    #[test]
    fn ground_state_saturates() {
        let unit = OscillatorParams::default();
        let r = uncertainty_sum(ground(), unit, ConjugatePair::new(2.0, 2.0 / 3.0).unwrap(), EntropyKind::Renyi, Mode::Exact).unwrap();
        assert!(r.saturated, "{r:?}");
        let s = uncertainty_sum(ground(), unit, ConjugatePair::shannon(), EntropyKind::Shannon, Mode::Exact).unwrap();
        assert!(s.saturated);
        assert!(uncertainty_sum(ground(), unit, ConjugatePair::with_dual(2.0).unwrap(), EntropyKind::Shannon, Mode::Exact).is_err());
    }

    #[test]
    fn rydberg_composition() {
        let cb = crate::rydberg::bessel_constant(0.5, -1.0, 3.0).unwrap().value.unwrap();
        let d = renyi_total(QuantumState::new(300, 0, 0).unwrap(), OscillatorParams::default(), 3.0, Mode::Asymptotic).unwrap();
        assert_relative_eq!(d.total, (4.0 * PI).ln() - 0.5 * (4.0 * cb).ln(), max_relative = 1e-12);
    }
}
