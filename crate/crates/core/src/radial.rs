//! Radial part of the oscillator states: energies, radial densities, the Laguerre
//! norms N_{n,l}(p) and the radial Rényi and Shannon entropies.

use std::f64::consts::{LN_2, PI};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::gamma::ln_gamma;
use crate::specfun::ortho::{laguerre_eval_negparam, laguerre_poly, LaguerreTable};
use crate::specfun::quad::{integrate_estimate, integrate_panels, QuadratureSpec, Tail};
use crate::specfun::rational::{factorial, int, ln_abs, pochhammer, ratio};
use crate::specfun::zeros::laguerre_roots;
use crate::state::{EntropyOrder, OscillatorParams, QuantumState};

/// Largest degree 2np of the exact expansion of L^{2p}.
const MAX_SYMBOLIC_DEGREE: u64 = 400;

/// Sub-panels per interval between consecutive Laguerre roots.
const PANELS_PER_GAP: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormPath {
    Symbolic,
    Quadrature,
    ClosedN1,
}

/// The value N_{n,l}(p) = ∫₀^∞ ([L̂_n^{(α)}]² ω_α)^p x^β dx with α = l+½, β = (1−p)/2.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LaguerreNorm {
    pub value: f64,
    pub path: NormPath,
    pub alpha: f64,
    pub beta: f64,
    pub warnings: Vec<String>,
}

impl LaguerreNorm {
    fn new(value: f64, path: NormPath, l: u32, p: f64) -> Self {
        LaguerreNorm {
            value,
            path,
            alpha: l as f64 + 0.5,
            beta: 0.5 * (1.0 - p),
            warnings: Vec::new(),
        }
    }
}

/// E = λ(2n + l + 3/2).
pub fn energy(state: QuantumState, params: OscillatorParams) -> f64 {
    params.lambda * (2.0 * state.n as f64 + state.l as f64 + 1.5)
}

/// ρ_{n,l}(r) = 2 n! λ^{l+3/2} / Γ(n+l+3/2) · r^{2l} e^{−λr²} [L_n^{(l+½)}(λr²)]².
pub fn radial_density(state: QuantumState, params: OscillatorParams, r: f64) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(Error::domain(format!("radius must be nonnegative, got {r}")));
    }
    let table = LaguerreTable::new(state.n, state.l as f64 + 0.5)?;
    Ok(radial_density_with(&table, params.lambda, r))
}

fn radial_density_with(table: &LaguerreTable, lambda: f64, r: f64) -> f64 {
    let x = lambda * r * r;
    if x == 0.0 {
        // only l = 0 survives at the origin
        if table.alpha() != 0.5 {
            return 0.0;
        }
        let ln_l0 = table.eval_log(0.0).ln_abs;
        return (LN_2 + 1.5 * lambda.ln() + 2.0 * ln_l0).exp();
    }
    // 2 λ^{3/2} x^{−1/2} L̂² ω
    (LN_2 + 1.5 * lambda.ln() - 0.5 * x.ln() + table.ln_weighted_square(x)).exp()
}

fn check_norm_args(l: u32, p: f64) -> Result<EntropyOrder> {
    let order = EntropyOrder::new(p)?;
    // β + pα = pl + ½ must exceed −1 for the integral to converge at the origin
    if !(p * l as f64 + 0.5 > -1.0) {
        return Err(Error::Divergence(format!("norm integral diverges at the origin for l = {l}, p = {p}")));
    }
    Ok(order)
}

/// ln of the squared Laguerre norm h = Γ(n+l+3/2)/n! = √π (½)_{n+l+1}/n!.
fn ln_h(n: u32, l: u32) -> f64 {
    0.5 * PI.ln() + ln_abs(&(pochhammer(&ratio(1, 2), n + l + 1) / BigRational::from_integer(factorial(n))))
}

/// Termwise Gamma integration of the exact expansion of L_n^{2p}.
///
/// Available when p is an integer (so the expansion has rational coefficients and
/// L^{2p} = |L|^{2p}) or when n = 0.
pub fn laguerre_norm_symbolic(n: u32, l: u32, p: f64) -> Result<LaguerreNorm> {
    check_norm_args(l, p)?;
    let s = p * l as f64 + 1.5;
    let ln_sum = if n == 0 {
        0.0
    } else {
        if p.fract() != 0.0 {
            return Err(Error::domain(format!(
                "symbolic Laguerre norm needs integer p for n ≥ 1, got p = {p}"
            )));
        }
        let q = 2 * p as u64;
        if n as u64 * q > MAX_SYMBOLIC_DEGREE {
            return Err(Error::UnboundedGrowth { l, m: 0, p });
        }
        let pi = int(p as i64);
        let power = laguerre_poly(n, &ratio(2 * l as i64 + 1, 2)).pow_scaled(q as u32);
        // ∫ x^{k+s−1} e^{−px} dx = Γ(s)/p^s · (s)_k / p^k
        let s_exact = &pi * int(l as i64) + ratio(3, 2);
        let mut factor = BigRational::one();
        let mut sum = BigRational::zero();
        for (k, a_k) in power.coeffs().iter().enumerate() {
            if k > 0 {
                factor = factor * (&s_exact + int(k as i64 - 1)) / &pi;
            }
            sum += a_k * &factor;
        }
        if !sum.is_positive() {
            return Err(Error::domain("symbolic Laguerre norm is not positive"));
        }
        ln_abs(&sum)
    };
    let ln_value = ln_sum + ln_gamma(s) - s * p.ln() - p * ln_h(n, l);
    Ok(LaguerreNorm::new(ln_value.exp(), NormPath::Symbolic, l, p))
}

/// Panel breakpoints in y = √x: the square roots of the Laguerre zeros, each gap
/// split evenly, continued past the last zero until `ln_f` has dropped by `drop`.
fn radial_breaks<F: Fn(f64) -> f64>(n: u32, alpha: f64, ln_f: F, drop: f64) -> Vec<f64> {
    let roots: Vec<f64> = laguerre_roots(n, alpha).into_iter().map(f64::sqrt).collect();
    let mut breaks = vec![0.0];
    let mut last = 0.0;
    for &r in &roots {
        for k in 1..=PANELS_PER_GAP {
            breaks.push(last + (r - last) * k as f64 / PANELS_PER_GAP as f64);
        }
        last = r;
    }
    let step = if roots.len() >= 2 {
        (roots[roots.len() - 1] - roots[roots.len() - 2]) / PANELS_PER_GAP as f64
    } else {
        0.25 * (alpha + 1.0).sqrt()
    };
    let mut peak = f64::NEG_INFINITY;
    for &b in breaks.iter().skip(1) {
        let v = ln_f(b - 0.5 * step.min(b));
        peak = peak.max(v);
    }
    let mut y = last;
    loop {
        y += step;
        breaks.push(y);
        let v = ln_f(y);
        peak = peak.max(v);
        if v < peak - drop || y > 1e4 {
            break;
        }
    }
    breaks
}

/// Integral of exp(ln_f) over [0, ∞) in y, on the Laguerre panels plus a mapped tail.
fn integrate_radial<F: Fn(f64) -> f64, G: Fn(f64) -> f64>(
    n: u32,
    alpha: f64,
    ln_f: F,
    f: G,
    decay: f64,
    rel_tol: f64,
) -> Result<f64> {
    let breaks = radial_breaks(n, alpha, &ln_f, 75.0);
    let spec = QuadratureSpec {
        rel_tol,
        abs_tol: 0.0,
        max_subdivisions: 20 * breaks.len() + 2000,
        oscillations: None,
        tail: None,
    };
    let body = integrate_panels(&f, &breaks, &spec)?;
    let end = *breaks.last().expect("nonempty breaks");
    let tail_spec = QuadratureSpec {
        rel_tol: 1e-6,
        abs_tol: 1e-3 * rel_tol * body.value.abs(),
        tail: Some(Tail::Exponential { rate: (decay * end).max(1.0) }),
        ..spec
    };
    let tail = integrate_estimate(&f, end, f64::INFINITY, &tail_spec)?;
    Ok(body.value + tail.value)
}

/// N_{n,l}(p) by adaptive quadrature in y = √x with panels at the Laguerre zeros.
pub fn laguerre_norm_quadrature(n: u32, l: u32, p: f64) -> Result<LaguerreNorm> {
    check_norm_args(l, p)?;
    let alpha = l as f64 + 0.5;
    let table = LaguerreTable::new(n, alpha)?;
    let beta = 0.5 * (1.0 - p);
    // dx = 2y dy, integrand (L̂²ω)^p x^β
    let ln_f = |y: f64| {
        if y <= 0.0 {
            return f64::NEG_INFINITY;
        }
        let x = y * y;
        LN_2 + y.ln() + p * table.ln_weighted_square(x) + beta * x.ln()
    };
    let f = |y: f64| {
        let v = ln_f(y);
        if v == f64::NEG_INFINITY || v.is_nan() {
            0.0
        } else {
            v.exp()
        }
    };
    let value = integrate_radial(n, alpha, ln_f, f, 2.0 * p, 1e-12)?;
    Ok(LaguerreNorm::new(value, NormPath::Quadrature, l, p))
}

/// N_{n,l}(p). Integer p (and any p for n = 0) uses the exact expansion of
/// L^{2p}; otherwise, or when the expansion is too large, quadrature is used.
pub fn laguerre_norm(n: u32, l: u32, p: f64) -> Result<LaguerreNorm> {
    let order = check_norm_args(l, p)?;
    let lattice_odd = order.twice().is_some_and(|q| q % 2 == 1);
    match laguerre_norm_symbolic(n, l, p) {
        Ok(norm) => Ok(norm),
        Err(Error::UnboundedGrowth { .. }) => {
            let mut norm = laguerre_norm_quadrature(n, l, p)?;
            norm.warnings.push(format!(
                "exact expansion of degree {} exceeds the supported size; used quadrature",
                2 * n as u64 * p as u64
            ));
            Ok(norm)
        }
        Err(Error::Domain(_)) => {
            let mut norm = laguerre_norm_quadrature(n, l, p)?;
            if lattice_odd {
                norm.warnings.push(
                    "odd 2p: the polynomial expansion gives ∫L^{2p} rather than ∫|L|^{2p}; used quadrature".into(),
                );
            }
            Ok(norm)
        }
        Err(e) => Err(e),
    }
}

/// Closed form N_{1,l}(p) = Γ(lp+3/2)/Γ(l+5/2)^p · (2p)!/p^{(l+2)p+3/2}
/// · L_{2p}^{(−(l+2)p−3/2)}(−(l+3/2)p), for 2p a positive integer.
pub fn closed_n1l(l: u32, p: f64) -> Result<LaguerreNorm> {
    let order = check_norm_args(l, p)?;
    let q = order
        .twice()
        .ok_or_else(|| Error::domain(format!("closed N_(1,l) form needs 2p to be a positive integer, got p = {p}")))?;
    let lf = l as f64;
    let lag = laguerre_eval_negparam(q, -(lf + 2.0) * p - 1.5, -(lf + 1.5) * p);
    let ln_prefactor = ln_gamma(lf * p + 1.5) - p * ln_gamma(lf + 2.5) + ln_gamma(2.0 * p + 1.0)
        - ((lf + 2.0) * p + 1.5) * p.ln();
    let mut norm = LaguerreNorm::new(ln_prefactor.exp() * lag, NormPath::ClosedN1, l, p);
    if q % 2 == 1 {
        norm.warnings.push("closed N_(1,l) form evaluated at odd 2p".into());
    }
    Ok(norm)
}

/// ((−1)^n / (n! Γ(ν))) ∫₀^∞ (x+y)^n y^{ν−1} e^{−y} dy, which equals L_n^{(−n−ν)}(x).
pub fn negparam_laguerre_integral(n: u32, nu: f64, x: f64) -> Result<f64> {
    if !(nu > 0.0 && nu.is_finite()) {
        return Err(Error::domain(format!("nu must be positive, got {nu}")));
    }
    let spec = QuadratureSpec::with_tolerance(1e-13, 0.0);
    let nf = n as i32;
    let head = if nu < 1.0 {
        // y = w^{1/ν} on [0, 1] absorbs the singular y^{ν−1}
        integrate_estimate(|w: f64| (x + w.powf(1.0 / nu)).powi(nf) * (-w.powf(1.0 / nu)).exp() / nu, 0.0, 1.0, &spec)?
    } else {
        integrate_estimate(|y: f64| (x + y).powi(nf) * y.powf(nu - 1.0) * (-y).exp(), 0.0, 1.0, &spec)?
    };
    // a map rate below the true decay keeps the mapped integrand vanishing at the end
    let tail_spec = QuadratureSpec {
        tail: Some(Tail::Exponential { rate: 0.5 }),
        ..spec
    };
    let tail = integrate_estimate(|y: f64| (x + y).powi(nf) * y.powf(nu - 1.0) * (-y).exp(), 1.0, f64::INFINITY, &tail_spec)?;
    let sign = if n % 2 == 1 { -1.0 } else { 1.0 };
    Ok(sign * (head.value + tail.value) * (-ln_gamma(n as f64 + 1.0) - ln_gamma(nu)).exp())
}

/// R_p[ρ_{n,l}] = ln[(2λ^{3/2})^{p−1} N_{n,l}(p)] / (1−p).
pub fn renyi_radial_exact(state: QuantumState, params: OscillatorParams, p: f64) -> Result<f64> {
    let order = EntropyOrder::new(p)?;
    if order.is_shannon() {
        return Err(Error::domain("p = 1 is the Shannon limit; use shannon_radial_exact"));
    }
    let norm = laguerre_norm(state.n, state.l, p)?;
    Ok(renyi_from_norm(norm.value, params, p))
}

/// R_p[ρ_{n,l}] from a precomputed Laguerre norm N_{n,l}(p).
pub fn renyi_from_norm(norm: f64, params: OscillatorParams, p: f64) -> f64 {
    -(LN_2 + 1.5 * params.lambda.ln()) + norm.ln() / (1.0 - p)
}

/// S[ρ_{n,l}] = −∫ ρ ln ρ r² dr, by quadrature on the Laguerre panels.
pub fn shannon_radial_exact(state: QuantumState, params: OscillatorParams) -> Result<f64> {
    let alpha = state.l as f64 + 0.5;
    let table = LaguerreTable::new(state.n, alpha)?;
    // S = −ln(2λ^{3/2}) + ∫ 2y e^g (ln y − g) dy with g = ln(L̂²ω) at x = y²
    let ln_f = |y: f64| {
        if y <= 0.0 {
            return f64::NEG_INFINITY;
        }
        LN_2 + y.ln() + table.ln_weighted_square(y * y)
    };
    let f = |y: f64| {
        if y <= 0.0 {
            return 0.0;
        }
        let g = table.ln_weighted_square(y * y);
        if g == f64::NEG_INFINITY || g.is_nan() {
            // removable: e^g g → 0 at the zeros of the density
            return 0.0;
        }
        2.0 * y * g.exp() * (y.ln() - g)
    };
    let integral = integrate_radial(state.n, alpha, ln_f, f, 2.0, 1e-11)?;
    Ok(-(LN_2 + 1.5 * params.lambda.ln()) + integral)
}
