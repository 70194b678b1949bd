//! Brute-force entropies of the full three-dimensional density.
//!
//! The density is assembled here from the special functions alone and integrated
//! over ℝ³ on a tensor grid; nothing is shared with the angular or radial entropy
//! code.

use std::f64::consts::{LN_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::gamma::ln_gamma;
use crate::specfun::ortho::{gegenbauer_eval, laguerre_eval};
use crate::specfun::quad::gauss_legendre;
use crate::specfun::zeros::{gegenbauer_roots, laguerre_roots};
use crate::state::{EntropyOrder, OscillatorParams, QuantumState};

/// Relative disagreement between the full and half grids that is still accepted.
const GRID_REL_TOL: f64 = 1e-9;

/// Log-size below which the radial integrand is treated as zero.
const NEGLIGIBLE_LN: f64 = -50.0;

/// Tensor grid: Gauss nodes per radial and per polar panel, uniform azimuthal
/// nodes, and the radial cutoff in units of √((2n+l+3/2)/λ).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub radial_nodes: usize,
    pub polar_nodes: usize,
    pub azimuthal_nodes: usize,
    pub cutoff: f64,
}

impl GridSpec {
    pub fn new(radial_nodes: usize, polar_nodes: usize, azimuthal_nodes: usize, cutoff: f64) -> Result<Self> {
        if radial_nodes < 16 || polar_nodes < 16 || azimuthal_nodes < 16 {
            return Err(Error::domain("grid node counts must be at least 16"));
        }
        if !(cutoff >= 2.0) || !cutoff.is_finite() {
            return Err(Error::domain(format!("cutoff multiplier must be at least 2, got {cutoff}")));
        }
        Ok(GridSpec {
            radial_nodes,
            polar_nodes,
            azimuthal_nodes,
            cutoff,
        })
    }

    /// All node counts doubled.
    pub fn refined(&self) -> GridSpec {
        GridSpec {
            radial_nodes: 2 * self.radial_nodes,
            polar_nodes: 2 * self.polar_nodes,
            azimuthal_nodes: 2 * self.azimuthal_nodes,
            cutoff: self.cutoff,
        }
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            radial_nodes: 32,
            polar_nodes: 32,
            azimuthal_nodes: 16,
            cutoff: 6.0,
        }
    }
}

/// ln of the radial factor 2 n! λ^{l+3/2}/Γ(n+l+3/2) · r^{2l} e^{−λr²} [L_n^{(l+½)}(λr²)]².
fn ln_radial_factor(state: QuantumState, lambda: f64, r: f64) -> f64 {
    let (n, l) = (state.n as f64, state.l as f64);
    let x = lambda * r * r;
    let lag = laguerre_eval(state.n, l + 0.5, x, false).expect("unnormalized evaluation");
    let power = if state.l == 0 { 0.0 } else { l * (r * r).ln() };
    LN_2 + ln_gamma(n + 1.0) + (l + 1.5) * lambda.ln() - ln_gamma(n + l + 1.5) + power - x + 2.0 * lag.abs().ln()
}

/// ln |Y_{l,m}(θ,φ)|² with the associated Legendre function written as
/// P_l^m(t) = (−1)^m (2m)!/(2^m m!) (1−t²)^{m/2} C_{l−m}^{(m+½)}(t).
fn ln_angular_factor(state: QuantumState, theta: f64) -> f64 {
    let (l, m) = (state.l as f64, state.m.unsigned_abs() as f64);
    let geg = gegenbauer_eval(state.l - state.m.unsigned_abs(), m + 0.5, theta.cos());
    let sin_power = if m == 0.0 { 0.0 } else { 2.0 * m * theta.sin().abs().ln() };
    (2.0 * l + 1.0).ln() - (4.0 * PI).ln() + ln_gamma(l - m + 1.0) - ln_gamma(l + m + 1.0)
        + 2.0 * (ln_gamma(2.0 * m + 1.0) - m * LN_2 - ln_gamma(m + 1.0))
        + sin_power
        + 2.0 * geg.abs().ln()
}

/// ρ_{n,l,m}(r,θ,φ) = |R_{n,l}(r)|² |Y_{l,m}(θ,φ)|²; φ drops out since |e^{imφ}| = 1.
pub fn full_density(state: QuantumState, params: OscillatorParams, r: f64, theta: f64, _phi: f64) -> f64 {
    debug_assert!(r >= 0.0 && (0.0..=PI).contains(&theta));
    (ln_radial_factor(state, params.lambda, r) + ln_angular_factor(state, theta)).exp()
}

/// Nodes and weights of a panel rule with the polynomial change of variables
/// x = a + (b−a)ψ(s), ψ(s) = 10s³ − 15s⁴ + 6s⁵, which flattens endpoint
/// singularities such as ρ ln ρ at the nodal surfaces.
fn smoothed_panels(breaks: &[f64], nodes: usize) -> Vec<(f64, f64)> {
    let (xs, ws) = gauss_legendre(nodes);
    let mut out = Vec::with_capacity(nodes * breaks.len());
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b <= a {
            continue;
        }
        for (&x, &wt) in xs.iter().zip(&ws) {
            let s = 0.5 * (x + 1.0);
            let psi = s * s * s * (10.0 - 15.0 * s + 6.0 * s * s);
            let dpsi = 30.0 * s * s * (1.0 - s) * (1.0 - s);
            out.push((a + (b - a) * psi, 0.5 * wt * (b - a) * dpsi));
        }
    }
    out
}

fn refine(points: &[f64], max_width: f64) -> Vec<f64> {
    let mut out = vec![points[0]];
    for w in points.windows(2) {
        let pieces = ((w[1] - w[0]) / max_width).ceil().max(1.0) as usize;
        for k in 1..=pieces {
            out.push(w[0] + (w[1] - w[0]) * k as f64 / pieces as f64);
        }
    }
    out
}

fn radial_breaks(state: QuantumState, lambda: f64, grid: &GridSpec, p: f64) -> Vec<f64> {
    let alpha = state.l as f64 + 0.5;
    let width = 0.5 / lambda.sqrt();
    let mut cut = grid.cutoff * ((2.0 * state.n as f64 + alpha + 1.0) / lambda).sqrt();
    // extend until the weighted integrand r² ρ^p is negligible
    while 2.0 * cut.ln() + p * ln_radial_factor(state, lambda, cut) > NEGLIGIBLE_LN {
        cut += width;
    }
    let mut points = vec![0.0];
    points.extend(laguerre_roots(state.n, alpha).into_iter().map(|x| (x / lambda).sqrt()).filter(|&r| r < cut));
    points.push(cut);
    refine(&points, width)
}

fn polar_breaks(state: QuantumState) -> Vec<f64> {
    let m = state.m.unsigned_abs();
    let mut points = vec![0.0];
    let mut roots: Vec<f64> = gegenbauer_roots(state.l - m, m as f64 + 0.5).into_iter().map(f64::acos).collect();
    roots.sort_by(f64::total_cmp);
    points.extend(roots);
    points.push(PI);
    refine(&points, PI / 8.0)
}

/// ∫ g(ln ρ) d³r on the tensor grid.
fn tensor_integral<G: Fn(f64) -> f64>(state: QuantumState, params: OscillatorParams, grid: &GridSpec, p: f64, g: &G) -> f64 {
    let radial = smoothed_panels(&radial_breaks(state, params.lambda, grid, p), grid.radial_nodes);
    let polar = smoothed_panels(&polar_breaks(state), grid.polar_nodes);
    let ln_rad: Vec<f64> = radial.iter().map(|&(r, _)| ln_radial_factor(state, params.lambda, r)).collect();
    let ln_ang: Vec<f64> = polar.iter().map(|&(t, _)| ln_angular_factor(state, t)).collect();
    let dphi = 2.0 * PI / grid.azimuthal_nodes as f64;
    let mut total = 0.0;
    for (&(r, wr), &lr) in radial.iter().zip(&ln_rad) {
        let mut shell = 0.0;
        for (&(t, wt), &la) in polar.iter().zip(&ln_ang) {
            let mut ring = 0.0;
            for _ in 0..grid.azimuthal_nodes {
                ring += dphi * g(lr + la);
            }
            shell += wt * t.sin() * ring;
        }
        total += wr * r * r * shell;
    }
    total
}

/// Full-grid value checked against the half-node grid.
fn checked<G: Fn(f64) -> f64>(state: QuantumState, params: OscillatorParams, grid: &GridSpec, p: f64, g: G) -> Result<f64> {
    let value = tensor_integral(state, params, grid, p, &g);
    let half = GridSpec {
        radial_nodes: grid.radial_nodes / 2,
        polar_nodes: grid.polar_nodes / 2,
        ..*grid
    };
    let coarse = tensor_integral(state, params, &half, p, &g);
    let error = (value - coarse).abs();
    if !value.is_finite() || error > GRID_REL_TOL * value.abs().max(1.0) {
        return Err(Error::Accuracy { estimate: value, error });
    }
    Ok(value)
}

fn finite_or_zero(v: f64) -> f64 {
    if v.is_finite() {
        v
    } else {
        0.0
    }
}

/// ∫ ρ d³r.
pub fn normalization_full(state: QuantumState, params: OscillatorParams, grid: GridSpec) -> Result<f64> {
    checked(state, params, &grid, 1.0, |ln_rho| ln_rho.exp())
}

/// ∫ ρ^p d³r.
pub fn power_integral_full(state: QuantumState, params: OscillatorParams, p: f64, grid: GridSpec) -> Result<f64> {
    EntropyOrder::new(p)?;
    checked(state, params, &grid, p, |ln_rho| (p * ln_rho).exp())
}

/// R_p[ρ] = ln(∫ ρ^p d³r)/(1−p) on the tensor grid.
pub fn renyi_full(state: QuantumState, params: OscillatorParams, p: f64, grid: GridSpec) -> Result<f64> {
    if EntropyOrder::new(p)?.is_shannon() {
        return Err(Error::domain("p = 1 is the Shannon limit; use shannon_full"));
    }
    Ok(power_integral_full(state, params, p, grid)?.ln() / (1.0 - p))
}

/// (1 − ∫ ρ^p d³r)/(p − 1).
pub fn tsallis_full(state: QuantumState, params: OscillatorParams, p: f64, grid: GridSpec) -> Result<f64> {
    if EntropyOrder::new(p)?.is_shannon() {
        return Err(Error::domain("p = 1 is the Shannon limit; use shannon_full"));
    }
    Ok((1.0 - power_integral_full(state, params, p, grid)?) / (p - 1.0))
}

/// S[ρ] = −∫ ρ ln ρ d³r, with ρ ln ρ → 0 where ρ vanishes.
pub fn shannon_full(state: QuantumState, params: OscillatorParams, grid: GridSpec) -> Result<f64> {
    checked(state, params, &grid, 1.0, |ln_rho| finite_or_zero(-ln_rho.exp() * ln_rho))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn st(n: u32, l: u32, m: i32) -> QuantumState {
        QuantumState::new(n, l, m).unwrap()
    }

    #[test]
    fn ground_state_density() {
        let unit = OscillatorParams::default();
        for &(r, t) in &[(0.0f64, 0.3), (0.7, 1.2), (2.5, 3.0)] {
            let expected = PI.powf(-1.5) * (-r * r).exp();
            assert_relative_eq!(full_density(st(0, 0, 0), unit, r, t, 0.4), expected, max_relative = 1e-13);
        }
        let a = full_density(st(2, 2, -1), unit, 1.1, 0.8, 0.0);
        let b = full_density(st(2, 2, -1), unit, 1.1, 0.8, 4.0);
        assert_eq!(a, b);
    }

    #[test]
    fn normalization() {
        let unit = OscillatorParams::default();
        for &(n, l, m) in &[(0, 0, 0), (1, 1, 1), (3, 2, -2), (2, 1, 0)] {
            let v = normalization_full(st(n, l, m), unit, GridSpec::default()).unwrap();
            assert!((v - 1.0).abs() < 1e-10, "({n},{l},{m}): {v}");
        }
    }

    #[test]
    fn gaussian_values() {
        let unit = OscillatorParams::default();
        let r2 = renyi_full(st(0, 0, 0), unit, 2.0, GridSpec::default()).unwrap();
        assert_relative_eq!(r2, 1.5 * (2.0 * PI).ln(), max_relative = 1e-11);
        let s = shannon_full(st(0, 0, 0), unit, GridSpec::default()).unwrap();
        assert_relative_eq!(s, 1.5 * (1.0 + PI.ln()), max_relative = 1e-11);
        let s4 = shannon_full(st(0, 0, 0), OscillatorParams::new(4.0).unwrap(), GridSpec::default()).unwrap();
        assert_relative_eq!(s - s4, 1.5 * 4f64.ln(), max_relative = 1e-10);
        assert!(renyi_full(st(0, 0, 0), unit, 1.0, GridSpec::default()).is_err());
    }

    #[test]
    fn grid_validation() {
        assert!(GridSpec::new(8, 32, 32, 6.0).is_err());
        assert!(GridSpec::new(32, 32, 32, 1.0).is_err());
        assert_eq!(GridSpec::default().refined().radial_nodes, 64);
    }
}
