use std::f64::consts::PI;

use approx::assert_relative_eq;
use oscent_core::entropy::{
    disequilibrium, renyi_total, shannon_total, tsallis_from_renyi, uncertainty_sum, ConjugatePair, EntropyKind, Mode,
};
use oscent_core::oracle::{shannon_full, tsallis_full, GridSpec};
use oscent_core::radial::laguerre_norm;
use oscent_core::rydberg::bessel_constant;
use oscent_core::{Error, OscillatorParams, QuantumState};

fn st(n: u32, l: u32, m: i32) -> QuantumState {
    QuantumState::new(n, l, m).unwrap()
}

fn unit() -> OscillatorParams {
    OscillatorParams::default()
}

#[test]
fn gaussian_totals() {
    assert_relative_eq!(renyi_total(st(0, 0, 0), unit(), 2.0, Mode::Exact).unwrap().total, 1.5 * (2.0 * PI).ln(), max_relative = 1e-12);
    assert_relative_eq!(shannon_total(st(0, 0, 0), unit(), Mode::Exact).unwrap().total, 1.5 * (1.0 + PI.ln()), max_relative = 1e-10);
    assert_relative_eq!(disequilibrium(st(0, 0, 0), unit()).unwrap(), (2.0 * PI).powf(-1.5), max_relative = 1e-12);
    assert!(matches!(renyi_total(st(0, 0, 0), unit(), 1.0, Mode::Exact), Err(Error::Domain(_))));
}

#[test]
fn disequilibrium_scales_with_lambda() {
    let s = st(2, 1, 1);
    let ratio = disequilibrium(s, OscillatorParams::new(3.0).unwrap()).unwrap() / disequilibrium(s, unit()).unwrap();
    assert_relative_eq!(ratio, 3f64.powf(1.5), max_relative = 1e-11);
}

#[test]
fn shannon_agrees_with_oracle() {
    let d = shannon_total(st(1, 0, 0), unit(), Mode::Exact).unwrap();
    assert_eq!(d.total, d.radial + d.angular);
    let o = shannon_full(st(1, 0, 0), unit(), GridSpec::default()).unwrap();
    assert!((d.total - o).abs() < 1e-7);
}

#[test]
fn tsallis_agrees_with_oracle() {
    for n in 0..=2u32 {
        for l in 0..=2u32 {
            for p in [2.0, 3.0] {
                let s = st(n, l, 0);
                let r = renyi_total(s, unit(), p, Mode::Exact).unwrap().total;
                let direct = tsallis_full(s, unit(), p, GridSpec::default()).unwrap();
                assert!((tsallis_from_renyi(r, p) - direct).abs() < 1e-7, "({n},{l}) p={p}");
            }
        }
    }
}

#[test]
fn shannon_uncertainty_of_ground_state() {
    let r = uncertainty_sum(st(0, 0, 0), unit(), ConjugatePair::shannon(), EntropyKind::Shannon, Mode::Exact).unwrap();
    assert_relative_eq!(r.sum, 3.0 * (1.0 + PI.ln()), max_relative = 1e-10);
    assert_relative_eq!(r.sum, 6.434_189_7, epsilon = 1e-7);
    assert!(r.saturated);
}

#[test]
fn first_excited_s_state_sum() {
    // R_2[ρ] + R_{2/3}[γ] with the radial parts from N_{1,0}: each radial Rényi entropy is
    // −ln 2 + ln N/(1−p) and each angular part is ln 4π
    let pair = ConjugatePair::new(2.0, 2.0 / 3.0).unwrap();
    let r = uncertainty_sum(st(1, 0, 0), unit(), pair, EntropyKind::Renyi, Mode::Exact).unwrap();
    let n2 = laguerre_norm(1, 0, 2.0).unwrap().value;
    let n23 = laguerre_norm(1, 0, 2.0 / 3.0).unwrap().value;
    let want = 2.0 * ((4.0 * PI).ln() - 2f64.ln()) - n2.ln() + 3.0 * n23.ln();
    assert_relative_eq!(r.sum, want, max_relative = 1e-12);
    assert!(r.sum > r.bound + 1e-3);
    assert!(!r.saturated);
}

#[test]
fn rydberg_total_at_p3() {
    let d = renyi_total(st(1000, 0, 0), OscillatorParams::new(2.0).unwrap(), 3.0, Mode::Asymptotic).unwrap();
    let cb = bessel_constant(0.5, -1.0, 3.0).unwrap().value.unwrap();
    assert_relative_eq!(d.total, (4.0 * PI).ln() - 0.5 * (4.0 * 8.0 * cb).ln(), max_relative = 1e-12);
    assert_eq!(d.mode, Mode::Asymptotic);
}

#[test]
fn transition_sums_carry_caveat() {
    let pair = ConjugatePair::with_dual(1.5).unwrap();
    let r = uncertainty_sum(st(500, 0, 0), unit(), pair, EntropyKind::Renyi, Mode::Asymptotic).unwrap();
    assert!(r.caveat);
    assert!(!r.saturated);
    assert!(!r.warnings.is_empty());
}
