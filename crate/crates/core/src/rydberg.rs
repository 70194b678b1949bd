//! Large-n (Rydberg) asymptotics of the radial Rényi and Shannon entropies.

use std::collections::HashMap;
use std::f64::consts::{LN_2, PI};
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::bessel::{bessel_j, bessel_zeros};
use crate::specfun::gamma::ln_gamma;
use crate::specfun::quad::{integrate_estimate, QuadratureSpec};
use crate::state::{EntropyOrder, OscillatorParams};

/// Order at which the cosine regime gives way to the Bessel regime.
pub const P_STAR: f64 = 1.5;

/// Relative accuracy targeted for the Bessel-regime constant.
const BESSEL_REL_TOL: f64 = 1e-8;
const MIN_ZEROS: usize = 64;
const MAX_ZEROS: usize = 1 << 15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstantKind {
    Cosine,
    Bessel,
}

/// C(β,p) or C_B(α,β,p); `value` is `None` where the defining integral diverges.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeConstant {
    pub kind: ConstantKind,
    pub value: Option<f64>,
    pub alpha: f64,
    pub beta: f64,
    pub p: f64,
}

impl RegimeConstant {
    pub fn is_divergent(&self) -> bool {
        self.value.is_none()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Cosine,
    Transition,
    Bessel,
}

impl Regime {
    pub fn of(p: f64) -> Regime {
        if p < P_STAR {
            Regime::Cosine
        } else if p == P_STAR {
            Regime::Transition
        } else {
            Regime::Bessel
        }
    }
}

/// Leading-order value of the radial Rényi entropy for large n.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticValue {
    pub value: f64,
    pub regime: Regime,
    /// Coefficient of ln n.
    pub leading_exponent: f64,
    /// Set when an unknown O(1) remainder enters at leading order.
    pub caveat: bool,
}

/// C(β,p) = 2^{β+1}/π^{p+½} · Γ(β+1−p/2)Γ(1−p/2)Γ(p+½) / (Γ(β+2−p)Γ(1+p)) with
/// β = (1−p)/2. The cosine-regime integral converges only for p < 3/2; larger p
/// (including the pole at p = 3/2) yield the divergent marker.
pub fn cosine_constant(p: f64) -> Result<RegimeConstant> {
    EntropyOrder::new(p)?;
    let beta = 0.5 * (1.0 - p);
    let value = (p < P_STAR).then(|| {
        let ln_c = (beta + 1.0) * LN_2 - (p + 0.5) * PI.ln() + ln_gamma(beta + 1.0 - 0.5 * p) + ln_gamma(1.0 - 0.5 * p)
            + ln_gamma(p + 0.5)
            - ln_gamma(beta + 2.0 - p)
            - ln_gamma(1.0 + p);
        ln_c.exp()
    });
    Ok(RegimeConstant {
        kind: ConstantKind::Cosine,
        value,
        alpha: f64::NAN,
        beta,
        p,
    })
}

type MemoKey = (u64, u64, u64);

fn memo() -> &'static Mutex<HashMap<MemoKey, f64>> {
    static TABLE: OnceLock<Mutex<HashMap<MemoKey, f64>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// C_B(α,β,p) = 2∫₀^∞ t^{2β+1} |J_α(2t)|^{2p} dt for p > 3/2.
///
/// With u = 2t the integral is 2^{−s}∫ u^s |J_α(u)|^{2p} du, s = 2β+1. It is summed
/// over the intervals between consecutive zeros of J_α; beyond the last zero U the
/// integrand is replaced by its period average A_p (2/(πu))^p u^s, with
/// A_p = Γ(p+½)/(√π Γ(p+1)), and the truncated sums for U, 2U, 4U… are
/// accelerated by Aitken's Δ² process.
pub fn bessel_constant(alpha: f64, beta: f64, p: f64) -> Result<RegimeConstant> {
    if !(p > P_STAR) {
        return Err(Error::Divergence(format!(
            "the Bessel-regime integral needs p > 3/2, got p = {p}"
        )));
    }
    if !(alpha >= 0.0) || !beta.is_finite() {
        return Err(Error::domain(format!("invalid Bessel parameters alpha = {alpha}, beta = {beta}")));
    }
    let s = 2.0 * beta + 1.0;
    if !(s + 2.0 * p * alpha > -1.0) {
        return Err(Error::Divergence(format!("integrand not integrable at the origin for alpha = {alpha}, beta = {beta}, p = {p}")));
    }
    if !(p - s - 1.0 > 0.0) {
        return Err(Error::Divergence(format!("integrand decays too slowly for beta = {beta}, p = {p}")));
    }
    let key = (alpha.to_bits(), beta.to_bits(), p.to_bits());
    let cached = memo().lock().expect("memo lock").get(&key).copied();
    let value = match cached {
        Some(v) => v,
        None => {
            let v = bessel_integral(alpha, s, p)? * (-s * LN_2).exp();
            memo().lock().expect("memo lock").entry(key).or_insert(v);
            v
        }
    };
    Ok(RegimeConstant {
        kind: ConstantKind::Bessel,
        value: Some(value),
        alpha,
        beta,
        p,
    })
}

fn bessel_integral(alpha: f64, s: f64, p: f64) -> Result<f64> {
    let f = |u: f64| {
        if u == 0.0 {
            return 0.0;
        }
        let j = bessel_j(alpha, u).abs();
        if j == 0.0 {
            0.0
        } else {
            (s * u.ln() + 2.0 * p * j.ln()).exp()
        }
    };
    let mean = (ln_gamma(p + 0.5) - 0.5 * PI.ln() - ln_gamma(p + 1.0)).exp() * (2.0 / PI).powf(p);
    let tail = |u: f64| mean * u.powf(s - p + 1.0) / (p - s - 1.0);
    let spec = QuadratureSpec::with_tolerance(1e-13, 0.0);

    let mut zeros = bessel_zeros(alpha, MIN_ZEROS);
    let mut partial = 0.0;
    let mut lo = 0.0;
    let mut done = 0usize;
    let mut estimates: Vec<f64> = Vec::new();
    let mut accelerated: Vec<f64> = Vec::new();
    let mut count = MIN_ZEROS;
    loop {
        if zeros.len() < count {
            zeros = bessel_zeros(alpha, count);
        }
        for &z in &zeros[done..count] {
            partial += integrate_estimate(f, lo, z, &spec)?.value;
            lo = z;
        }
        done = count;
        estimates.push(partial + tail(lo));
        if let [.., a, b, c] = estimates[..] {
            let denom = (c - b) - (b - a);
            let acc = if denom != 0.0 { c - (c - b) * (c - b) / denom } else { c };
            accelerated.push(acc);
            if let [.., prev, last] = accelerated[..] {
                let error = (last - prev).abs();
                if error <= BESSEL_REL_TOL * last.abs() {
                    return Ok(last);
                }
                if count >= MAX_ZEROS {
                    return Err(Error::Accuracy { estimate: last, error });
                }
            }
        }
        count *= 2;
    }
}

/// Leading-order radial Rényi entropy of the state (n, l) for large n.
///
/// Cosine regime p < 3/2: ln[λ^{3(p−1)/2} C(β,p) (2n³)^{(1−p)/2}]/(1−p).
/// Transition p = 3/2: −2 ln[λ^{3/4} 8√2/(3π^{5/2}) n^{−3/4} ln n], flagged because
/// the O(1) companion of ln n is unknown.
/// Bessel regime p > 3/2: ln[(2λ^{3/2})^{p−1} C_B(l+½, β, p) n^{(p−3)/2}]/(1−p).
pub fn renyi_radial_asymptotic(n: u32, l: u32, params: OscillatorParams, p: f64) -> Result<AsymptoticValue> {
    let order = EntropyOrder::new(p)?;
    if order.is_shannon() {
        return Err(Error::domain("p = 1 is the Shannon limit; use shannon_radial_asymptotic"));
    }
    if n == 0 {
        return Err(Error::domain("asymptotic values need n ≥ 1"));
    }
    let nf = n as f64;
    let ln_lambda = params.lambda.ln();
    let beta = 0.5 * (1.0 - p);
    let regime = Regime::of(p);
    match regime {
        Regime::Cosine => {
            let c = cosine_constant(p)?.value.expect("finite below p*");
            let inner = 1.5 * (p - 1.0) * ln_lambda + c.ln() + 0.5 * (1.0 - p) * (LN_2 + 3.0 * nf.ln());
            Ok(AsymptoticValue {
                value: inner / (1.0 - p),
                regime,
                leading_exponent: 1.5,
                caveat: false,
            })
        }
        Regime::Transition => {
            if n < 2 {
                return Err(Error::domain("the transition-regime formula needs n ≥ 2 (ln n > 0)"));
            }
            let k = 8.0 * 2f64.sqrt() / (3.0 * PI.powf(2.5));
            let inner = 0.75 * ln_lambda + k.ln() - 0.75 * nf.ln() + nf.ln().ln();
            Ok(AsymptoticValue {
                value: -2.0 * inner,
                regime,
                leading_exponent: 1.5,
                caveat: true,
            })
        }
        Regime::Bessel => {
            let cb = bessel_constant(l as f64 + 0.5, beta, p)?.value.expect("convergent above p*");
            let inner = (p - 1.0) * (LN_2 + 1.5 * ln_lambda) + cb.ln() + 0.5 * (p - 3.0) * nf.ln();
            Ok(AsymptoticValue {
                value: inner / (1.0 - p),
                regime,
                leading_exponent: (p - 3.0) / (2.0 * (1.0 - p)),
                caveat: false,
            })
        }
    }
}

/// Leading-order radial Shannon entropy (3/2) ln n − (3/2) ln λ + ln π − 1.
pub fn shannon_radial_asymptotic(n: u32, params: OscillatorParams) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("asymptotic values need n ≥ 1"));
    }
    Ok(1.5 * (n as f64).ln() - 1.5 * params.lambda.ln() + PI.ln() - 1.0)
}
