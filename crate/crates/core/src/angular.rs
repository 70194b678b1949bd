//! Angular functional Λ_{l,m} = ∫|Y_{l,m}|^{2p} dΩ and the angular Rényi and
//! Shannon entropies of spherical harmonics.

use std::f64::consts::{LN_2, PI};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::bell::poly_power_bell;
use crate::specfun::gamma::{ln_gamma, psi};
use crate::specfun::ortho::{gegenbauer_eval, orthonormal_jacobi};
use crate::specfun::quad::{integrate_panels, QuadratureSpec};
use crate::specfun::rational::{binomial, factorial, int, ln_abs, pochhammer, ratio, RationalPoly};
use crate::specfun::zeros::gegenbauer_roots;
use crate::state::{AngularState, EntropyOrder};

/// Largest degree (l−m)·2p of the exact polynomial power.
const MAX_EXACT_DEGREE: u32 = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AngularMethod {
    Linearization,
    Bell,
    ClosedForm,
    Quadrature,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngularResult {
    pub lambda_value: f64,
    /// R_p[Y_{l,m}] in nats; at p = 1 this is the Shannon entropy.
    pub renyi: f64,
    pub method: AngularMethod,
    pub p: EntropyOrder,
    /// Value of the polynomial route ∫ P^{2p} when it differs from the
    /// definition ∫ |P|^{2p} (odd 2p with a sign-changing Jacobi factor).
    pub polynomial_value: Option<f64>,
    pub warnings: Vec<String>,
}

impl AngularResult {
    fn new(state: AngularState, lambda_value: f64, p: EntropyOrder, method: AngularMethod) -> Result<Self> {
        let renyi = if p.is_shannon() {
            shannon_angular(state)?
        } else {
            lambda_value.ln() / (1.0 - p.value())
        };
        Ok(AngularResult {
            lambda_value,
            renyi,
            method,
            p,
            polynomial_value: None,
            warnings: Vec::new(),
        })
    }
}

/// ln A²_{l,m} with A²_{l,m} = (l+½)(l−m)! Γ(m+½)² / (2^{1−2m} π² (l+m)!).
fn ln_norm_const_squared(state: AngularState) -> f64 {
    let l = state.l as f64;
    let m = state.abs_m() as f64;
    (l + 0.5).ln() + ln_gamma(l - m + 1.0) + 2.0 * ln_gamma(m + 0.5)
        - (1.0 - 2.0 * m) * LN_2
        - 2.0 * PI.ln()
        - ln_gamma(l + m + 1.0)
}

/// Square of the spherical-harmonic normalization A_{l,m}.
pub fn norm_const_squared(state: AngularState) -> f64 {
    ln_norm_const_squared(state).exp()
}

fn lattice(p: f64, route: &str) -> Result<(EntropyOrder, u32)> {
    let order = EntropyOrder::new(p)?;
    let q = order
        .twice()
        .ok_or_else(|| Error::domain(format!("{route} route needs 2p to be a positive integer, got p = {p}")))?;
    Ok((order, q))
}

fn check_growth(state: AngularState, q: u32) -> Result<()> {
    let degree = (state.l - state.abs_m()) as u64 * q as u64;
    if degree > MAX_EXACT_DEGREE as u64 || q > 2 * MAX_EXACT_DEGREE {
        return Err(Error::UnboundedGrowth {
            l: state.l,
            m: state.m,
            p: q as f64 / 2.0,
        });
    }
    Ok(())
}

/// The Jacobi factor P_{l−m}^{(m,m)} changes sign inside (−1, 1) whenever l > m,
/// so for odd 2p the polynomial routes integrate P^{2p} instead of |P|^{2p}.
fn needs_abs_value(state: AngularState, q: u32) -> bool {
    q % 2 == 1 && state.l > state.abs_m()
}

/// Returns the quadrature value carrying the polynomial-route value as a discrepancy.
fn signed_route_fallback(state: AngularState, order: EntropyOrder, route_value: f64, route: &str) -> Result<AngularResult> {
    let mut result = lambda_quadrature(state, order.value())?;
    let rel = (route_value - result.lambda_value).abs() / result.lambda_value;
    result.polynomial_value = Some(route_value);
    result.warnings.push(format!(
        "odd 2p with sign-changing Jacobi factor: the {route} route integrates P^{{2p}} = {route_value:.15e} \
         instead of |P|^{{2p}}; returning the quadrature value (relative discrepancy {rel:.3e})"
    ));
    Ok(result)
}

/// ln A''_{l,m}, the prefactor of the linearization route.
fn ln_a_double_prime(l: f64, m: f64, p: f64) -> f64 {
    let bracket = 2.0 * ln_gamma(m + 0.5) + 2.0 * ln_gamma(m + 1.0) + ln_gamma(l - m + 1.0) + ln_gamma(l + m + 1.0)
        - 2.0 * ln_gamma(2.0 * m + 1.0)
        - 2.0 * ln_gamma(l + 1.0);
    (2.0 * p * (2.0 * m - 1.0) + 2.0) * LN_2 + p * (2.0 * l + 1.0).ln() - (2.0 * p - 1.0) * PI.ln()
        + 2.0 * ln_gamma(m * p + 1.0)
        - ln_gamma(2.0 * m * p + 2.0)
        + p * bracket
}

/// Exact c̃₀(p, l, m) for 2p = q.
///
/// The 2p-fold sum over j₁…j_{2p} depends on the indices only through their
/// total J and the product of single-index weights, so it is regrouped as
/// Σ_J (mp+1)_J/(2mp+2)_J · [z^J](Σ_j w_j z^j)^{2p}.
pub(crate) fn c0_tilde(l: u32, m: u32, q: u32) -> BigRational {
    let n = l - m;
    let weights: Vec<BigRational> = (0..=n)
        .map(|j| {
            pochhammer(&int(m as i64 - l as i64), j) * pochhammer(&int((l + m + 1) as i64), j)
                / (pochhammer(&int((m + 1) as i64), j) * BigRational::from_integer(factorial(j)))
        })
        .collect();
    let power = RationalPoly::new(weights).pow_scaled(q);
    let mp = ratio((m * q) as i64, 2);
    let one = BigRational::one();
    let (mut num, mut den) = (one.clone(), one.clone());
    let mut sum = BigRational::zero();
    for (j, coeff) in power.coeffs().iter().enumerate() {
        if j > 0 {
            let jj = int(j as i64 - 1);
            num *= &mp + &one + &jj;
            den *= &mp * int(2) + int(2) + &jj;
        }
        sum += coeff * &num / &den;
    }
    let lead = num_traits::pow::pow(BigRational::from_integer(binomial(l, n)), q as usize);
    sum * lead
}

/// Λ_{l,m} = A''_{l,m} c̃₀(p, l, m), with c̃₀ in exact rational arithmetic.
pub fn lambda_linearization(state: AngularState, p: f64) -> Result<AngularResult> {
    let (order, q) = lattice(p, "linearization")?;
    check_growth(state, q)?;
    let (l, m) = (state.l, state.abs_m());
    let c0 = c0_tilde(l, m, q);
    let ln_prefactor = ln_a_double_prime(l as f64, m as f64, p);
    let value = signed_exp(&c0, ln_prefactor);
    if needs_abs_value(state, q) {
        return signed_route_fallback(state, order, value, "linearization");
    }
    AngularResult::new(state, value, order, AngularMethod::Linearization)
}

/// exp(ln_factor) · q without overflow in either factor.
fn signed_exp(q: &BigRational, ln_factor: f64) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    let magnitude = (ln_abs(q) + ln_factor).exp();
    if q.is_negative() {
        -magnitude
    } else {
        magnitude
    }
}

/// Λ_{l,m} from the Bell-polynomial expansion of the 2p-th power of the
/// orthonormal Jacobi polynomial P̃_{l−m}^{(m,m)}, integrated termwise.
pub fn lambda_bell(state: AngularState, p: f64) -> Result<AngularResult> {
    let (order, q) = lattice(p, "Bell")?;
    check_growth(state, q)?;
    let (l, m) = (state.l, state.abs_m());
    let jacobi = orthonormal_jacobi(l - m, m as i64, m as i64)?;
    // P̃^{2p} = P^{2p} / h^p; the rational part P^{2p} is expanded exactly
    let power = poly_power_bell(&jacobi.base, q);
    // ∫₋₁¹ t^k (1−t²)^{mp} dt = [1+(−1)^k]/2 · Γ((k+1)/2) Γ(mp+1) / Γ((k+3+2mp)/2);
    // successive even moments differ by the rational factor (k+1)/(k+3+2mp)
    let two_mp = int((m * q) as i64);
    let mut moment = BigRational::one();
    let mut sum = BigRational::zero();
    for (k, a_k) in power.coeffs().iter().enumerate().step_by(2) {
        if k > 0 {
            let k = k as i64;
            moment = moment * int(k - 1) / (int(k + 1) + &two_mp);
        }
        sum += a_k * &moment;
    }
    let mp = m as f64 * p;
    // Γ(mp+1)/(2^p π^{p−1}) · 2 Γ(½)/Γ((3+2mp)/2) · h^{−p}
    let ln_prefactor = ln_gamma(mp + 1.0) - p * LN_2 - (p - 1.0) * PI.ln() + LN_2 + 0.5 * PI.ln()
        - ln_gamma(1.5 + mp)
        - p * ln_abs(&jacobi.norm_square);
    let value = signed_exp(&sum, ln_prefactor);
    if needs_abs_value(state, q) {
        return signed_route_fallback(state, order, value, "Bell");
    }
    AngularResult::new(state, value, order, AngularMethod::Bell)
}

fn angular_quad_spec() -> QuadratureSpec {
    QuadratureSpec {
        rel_tol: 1e-13,
        abs_tol: 0.0,
        max_subdivisions: 4000,
        oscillations: None,
        tail: None,
    }
}

/// Polar breakpoints on [0, π/2]: the angles of the nonnegative Gegenbauer roots.
fn polar_breaks(state: AngularState) -> Vec<f64> {
    let (l, m) = (state.l, state.abs_m());
    let mut breaks = vec![0.0];
    let mut roots: Vec<f64> = gegenbauer_roots(l - m, m as f64 + 0.5)
        .into_iter()
        .filter(|&t| t > 0.0)
        .map(f64::acos)
        .collect();
    roots.sort_by(f64::total_cmp);
    breaks.extend(roots);
    breaks.push(0.5 * PI);
    breaks
}

/// ln |Y_{l,m}|² at polar angle θ (−∞ at nodes).
fn ln_density(state: AngularState, ln_a2: f64, theta: f64) -> f64 {
    let (l, m) = (state.l, state.abs_m());
    let (s, t) = theta.sin_cos();
    let c = gegenbauer_eval(l - m, m as f64 + 0.5, t);
    let ln_sin = if m == 0 { 0.0 } else { 2.0 * m as f64 * s.ln() };
    ln_a2 + 2.0 * c.abs().ln() + ln_sin
}

/// Λ_{l,m} = 2π A^{2p} ∫₋₁¹ |C_{l−m}^{(m+½)}(t)|^{2p} (1−t²)^{mp} dt by adaptive
/// quadrature in θ, with panels split at the Gegenbauer roots.
pub fn lambda_quadrature(state: AngularState, p: f64) -> Result<AngularResult> {
    let order = EntropyOrder::new(p)?;
    let ln_a2 = ln_norm_const_squared(state);
    let f = |theta: f64| {
        let g = ln_density(state, ln_a2, theta);
        if g == f64::NEG_INFINITY {
            0.0
        } else {
            (p * g).exp() * theta.sin()
        }
    };
    // the integrand is even in t, so integrate the upper hemisphere and double
    let half = integrate_panels(f, &polar_breaks(state), &angular_quad_spec())?;
    AngularResult::new(state, 4.0 * PI * half.value, order, AngularMethod::Quadrature)
}

/// ln K for the (l, l−1) family, K = (l+½)(2l−1)²Γ(l−½)² / (2^{3−2l}(2l−1)! π²).
fn ln_k_family(l: f64) -> f64 {
    (l + 0.5).ln() + 2.0 * (2.0 * l - 1.0).ln() + 2.0 * ln_gamma(l - 0.5)
        - (3.0 - 2.0 * l) * LN_2
        - ln_gamma(2.0 * l)
        - 2.0 * PI.ln()
}

/// Closed forms for the families (l,l), (l,l−1) and (1,0), valid for all real p > 0.
/// Returns `None` for other states.
pub fn lambda_closed(state: AngularState, p: f64) -> Result<Option<AngularResult>> {
    let order = EntropyOrder::new(p)?;
    let (l, m) = (state.l, state.abs_m());
    let lf = l as f64;
    let ln_lambda = if l == 1 && m == 0 {
        p * 3f64.ln() + (1.0 - p) * (4.0 * PI).ln() - (2.0 * p + 1.0).ln()
    } else if m == l {
        ((2.0 * lf - 1.0) * p + 1.0) * LN_2 + p * (lf + 0.5).ln() - (2.0 * p - 1.5) * PI.ln()
            + 2.0 * p * ln_gamma(lf + 0.5)
            + ln_gamma(lf * p + 1.0)
            - p * ln_gamma(2.0 * lf + 1.0)
            - ln_gamma(lf * p + 1.5)
    } else if m + 1 == l {
        (2.0 * PI).ln() + p * ln_k_family(lf) + ln_gamma(p + 0.5) + ln_gamma(p * lf - p + 1.0)
            - ln_gamma(p * lf + 1.5)
    } else {
        return Ok(None);
    };
    AngularResult::new(state, ln_lambda.exp(), order, AngularMethod::ClosedForm).map(Some)
}

/// R_p[Y_{l,m}] = ln Λ_{l,m} / (1−p), using a closed form when the state belongs to
/// one of the families, the linearization route when 2p is an integer, and
/// quadrature otherwise.
pub fn renyi_angular(state: AngularState, p: f64) -> Result<AngularResult> {
    let order = EntropyOrder::new(p)?;
    if order.is_shannon() {
        return Err(Error::domain("p = 1 is the Shannon limit; use shannon_angular"));
    }
    if let Some(result) = lambda_closed(state, p)? {
        return Ok(result);
    }
    if let Some(q) = order.twice() {
        match lambda_linearization(state, p) {
            Err(Error::UnboundedGrowth { .. }) => {
                let mut result = lambda_quadrature(state, p)?;
                result.warnings.push(format!(
                    "exact linearization too large for 2p = {q}, l−m = {}; used quadrature",
                    state.l - state.abs_m()
                ));
                return Ok(result);
            }
            other => return other,
        }
    }
    lambda_quadrature(state, p)
}

/// Closed-form angular Shannon entropy for the (l,l), (l,l−1) and (1,0) families.
pub fn shannon_angular_closed(state: AngularState) -> Option<f64> {
    let (l, m) = (state.l, state.abs_m());
    let lf = l as f64;
    if l == 1 && m == 0 {
        Some(2.0 / 3.0 + (4.0 * PI / 3.0).ln())
    } else if m == l {
        Some(
            -lf * (psi(lf + 1.0) - psi(lf + 1.5) + 4f64.ln()) + (4.0 * PI * PI / (2.0 * lf + 1.0)).ln()
                + ln_gamma(2.0 * lf + 1.0)
                - 2.0 * ln_gamma(lf + 0.5),
        )
    } else if m + 1 == l {
        Some(-ln_k_family(lf) - psi(1.5) - (lf - 1.0) * psi(lf) + lf * psi(lf + 1.5))
    } else {
        None
    }
}

/// −∫ |Y|² ln |Y|² dΩ by adaptive quadrature.
pub fn shannon_angular_quadrature(state: AngularState) -> Result<f64> {
    let ln_a2 = ln_norm_const_squared(state);
    let f = |theta: f64| {
        let g = ln_density(state, ln_a2, theta);
        if g == f64::NEG_INFINITY {
            0.0
        } else {
            -g.exp() * g * theta.sin()
        }
    };
    let half = integrate_panels(f, &polar_breaks(state), &angular_quad_spec())?;
    Ok(4.0 * PI * half.value)
}

/// Angular Shannon entropy S[Y_{l,m}]: closed form for the families, quadrature otherwise.
pub fn shannon_angular(state: AngularState) -> Result<f64> {
    match shannon_angular_closed(state) {
        Some(v) => Ok(v),
        None => shannon_angular_quadrature(state),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn st(l: u32, m: i32) -> AngularState {
        AngularState::new(l, m).unwrap()
    }

    /// The 2p-fold nested sum exactly as written, one index per factor.
    fn c0_nested(l: u32, m: u32, q: u32) -> BigRational {
        let n = l - m;
        let single = |j: u32| {
            pochhammer(&int(m as i64 - l as i64), j) * pochhammer(&int((l + m + 1) as i64), j)
                / (pochhammer(&int((m + 1) as i64), j) * BigRational::from_integer(factorial(j)))
        };
        let mp = ratio((m * q) as i64, 2);
        let mut total = BigRational::zero();
        let mut idx = vec![0u32; q as usize];
        loop {
            let big_j: u32 = idx.iter().sum();
            let mut term = pochhammer(&(&mp + int(1)), big_j) / pochhammer(&(&mp * int(2) + int(2)), big_j);
            for &j in &idx {
                term *= single(j);
            }
            total += term;
            // odometer increment
            let mut pos = 0;
            loop {
                if pos == idx.len() {
                    let lead = num_traits::pow::pow(BigRational::from_integer(binomial(l, n)), q as usize);
                    return total * lead;
                }
                idx[pos] += 1;
                if idx[pos] <= n {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }

    #[test]
    fn grouped_sum_equals_nested_sum() {
        for l in 0..=4 {
            for m in 0..=l {
                for q in 1..=4 {
                    assert_eq!(c0_tilde(l, m, q), c0_nested(l, m, q), "l={l} m={m} q={q}");
                }
            }
        }
        assert_eq!(c0_tilde(1, 0, 4), ratio(1, 5));
    }

    #[test]
    fn normalization_at_p_one() {
        for l in 0..6 {
            for m in 0..=l {
                let r = lambda_linearization(st(l, m as i32), 1.0).unwrap();
                assert_relative_eq!(r.lambda_value, 1.0, max_relative = 1e-12);
                let b = lambda_bell(st(l, m as i32), 1.0).unwrap();
                assert_relative_eq!(b.lambda_value, 1.0, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn norm_constant() {
        assert_relative_eq!(norm_const_squared(st(0, 0)), 1.0 / (4.0 * PI), max_relative = 1e-14);
        // |Y₁₁|² = (3/8π) sin²θ
        assert_relative_eq!(norm_const_squared(st(1, 1)), 3.0 / (8.0 * PI), max_relative = 1e-13);
        assert_eq!(norm_const_squared(st(3, -2)), norm_const_squared(st(3, 2)));
    }

    #[test]
    fn spec_examples() {
        let four_pi = 4.0 * PI;
        assert_relative_eq!(lambda_linearization(st(0, 0), 2.0).unwrap().lambda_value, 1.0 / four_pi, max_relative = 1e-13);
        assert_relative_eq!(lambda_linearization(st(1, 1), 2.0).unwrap().lambda_value, 3.0 / (10.0 * PI), max_relative = 1e-13);
        assert_relative_eq!(lambda_bell(st(0, 0), 3.0).unwrap().lambda_value, four_pi.powi(-2), max_relative = 1e-13);
        let lin = lambda_linearization(st(2, 1), 2.0).unwrap().lambda_value;
        let bell = lambda_bell(st(2, 1), 2.0).unwrap().lambda_value;
        assert_relative_eq!(lin, bell, max_relative = 1e-12);
        assert_relative_eq!(lambda_quadrature(st(1, 0), 2.0).unwrap().lambda_value, 9.0 / (20.0 * PI), max_relative = 1e-12);
        assert_relative_eq!(lambda_quadrature(st(0, 0), 0.7).unwrap().lambda_value, four_pi.powf(0.3), max_relative = 1e-12);
        assert_relative_eq!(lambda_quadrature(st(3, 1), 1.0).unwrap().lambda_value, 1.0, max_relative = 1e-12);
        assert_relative_eq!(lambda_closed(st(3, 3), 1.0).unwrap().unwrap().lambda_value, 1.0, max_relative = 1e-12);
        assert_relative_eq!(lambda_closed(st(1, 0), 2.0).unwrap().unwrap().lambda_value, 9.0 / (20.0 * PI), max_relative = 1e-13);
        assert_relative_eq!(lambda_closed(st(1, 1), 2.0).unwrap().unwrap().lambda_value, 3.0 / (10.0 * PI), max_relative = 1e-13);
        assert!(lambda_closed(st(3, 1), 2.0).unwrap().is_none());
        for p in [0.5, 2.0, 3.0, 0.3] {
            assert_relative_eq!(renyi_angular(st(0, 0), p).unwrap().renyi, four_pi.ln(), max_relative = 1e-13);
        }
        assert_relative_eq!(renyi_angular(st(1, 0), 2.0).unwrap().renyi, (20.0 * PI / 9.0).ln(), max_relative = 1e-13);
        assert_relative_eq!(renyi_angular(st(1, 1), 2.0).unwrap().renyi, (10.0 * PI / 3.0).ln(), max_relative = 1e-13);
        assert!(renyi_angular(st(1, 1), 1.0).is_err());
        assert!(lambda_linearization(st(1, 1), 0.7).is_err());
    }

    #[test]
    fn shannon_examples() {
        assert_relative_eq!(shannon_angular(st(0, 0)).unwrap(), (4.0 * PI).ln(), max_relative = 1e-13);
        assert_relative_eq!(shannon_angular(st(1, 1)).unwrap(), (2.0 * PI / 3.0).ln() + 5.0 / 3.0, max_relative = 1e-13);
        assert_relative_eq!(shannon_angular(st(1, 0)).unwrap(), 2.0 / 3.0 + (4.0 * PI / 3.0).ln(), max_relative = 1e-13);
        for (l, m) in [(0, 0), (1, 1), (1, 0), (3, 3), (4, 3), (2, 1)] {
            let closed = shannon_angular_closed(st(l, m)).unwrap();
            assert_relative_eq!(shannon_angular_quadrature(st(l, m)).unwrap(), closed, max_relative = 1e-11);
        }
        assert!(shannon_angular_closed(st(2, 0)).is_none());
    }

    #[test]
    fn odd_lattice_with_sign_change_falls_back() {
        let r = lambda_linearization(st(2, 0), 1.5).unwrap();
        assert_eq!(r.method, AngularMethod::Quadrature);
        assert!(r.polynomial_value.is_some());
        assert_eq!(r.warnings.len(), 1);
        let definite = lambda_bell(st(2, 2), 1.5).unwrap();
        assert_eq!(definite.method, AngularMethod::Bell);
        assert!(definite.warnings.is_empty());
    }

    #[test]
    fn growth_limit() {
        let err = lambda_linearization(st(300, 0), 2.0).unwrap_err();
        assert!(matches!(err, Error::UnboundedGrowth { l: 300, .. }));
    }
}
