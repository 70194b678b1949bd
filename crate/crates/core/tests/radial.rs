use std::f64::consts::PI;

use approx::assert_relative_eq;
use oscent_core::radial::{closed_n1l, laguerre_norm, radial_density, renyi_radial_exact, shannon_radial_exact};
use oscent_core::{OscillatorParams, QuantumState};

fn laguerre(n: u32, a: f64, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 1.0 + a - x);
    if n == 0 {
        return 1.0;
    }
    for k in 1..n {
        let k = k as f64;
        let next = ((2.0 * k + 1.0 + a - x) * cur - (k + a) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

fn gamma(x: f64) -> f64 {
    // Γ(k + ½) and Γ(k) by recurrence; only these arguments occur here
    if x == 0.5 {
        PI.sqrt()
    } else if x == 1.0 {
        1.0
    } else {
        (x - 1.0) * gamma(x - 1.0)
    }
}

/// ρ_{n,l}(r) for λ = 1 straight from the textbook formula.
fn density(n: u32, l: u32, r: f64) -> f64 {
    let a = l as f64 + 0.5;
    let lag = laguerre(n, a, r * r);
    2.0 * gamma(n as f64 + 1.0) / gamma(n as f64 + a + 1.0) * r.powi(2 * l as i32) * (-r * r).exp() * lag * lag
}

fn radial_integral(f: impl Fn(f64) -> f64) -> f64 {
    let (n, hi) = (40_000, 12.0);
    let h = hi / n as f64;
    let mut sum = f(0.0) + f(hi);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(i as f64 * h);
    }
    sum * h / 3.0
}

fn unit() -> OscillatorParams {
    OscillatorParams::default()
}

#[test]
fn density_matches_textbook_formula() {
    for (n, l) in [(0, 0), (1, 2), (3, 1), (5, 0)] {
        let s = QuantumState::new(n, l, 0).unwrap();
        for r in [0.0, 0.3, 1.7, 3.2] {
            assert_relative_eq!(radial_density(s, unit(), r).unwrap(), density(n, l, r), max_relative = 1e-11, epsilon = 1e-300);
        }
        let norm = radial_integral(|r| density(n, l, r) * r * r);
        assert_relative_eq!(norm, 1.0, max_relative = 1e-10);
    }
}

#[test]
fn renyi_matches_simpson_oracle() {
    for n in 0..=3u32 {
        for l in 0..=2u32 {
            for p in [2.0, 3.0] {
                let s = QuantumState::new(n, l, 0).unwrap();
                let want = radial_integral(|r| density(n, l, r).powf(p) * r * r).ln() / (1.0 - p);
                assert_relative_eq!(renyi_radial_exact(s, unit(), p).unwrap(), want, max_relative = 1e-9);
            }
        }
    }
}

#[test]
fn ground_state_shannon() {
    // Gaussian differential entropy minus ln 4π
    let want = 1.5 * (1.0 + PI.ln()) - (4.0 * PI).ln();
    let got = shannon_radial_exact(QuantumState::new(0, 0, 0).unwrap(), unit()).unwrap();
    assert_relative_eq!(got, want, max_relative = 1e-10);
    assert_relative_eq!(got, 0.686_070_6, epsilon = 1e-7);
}

#[test]
fn shannon_matches_simpson_oracle() {
    for (n, l) in [(1, 0), (2, 1), (3, 2)] {
        let want = radial_integral(|r| {
            let d = density(n, l, r);
            if d > 0.0 {
                -d * d.ln() * r * r
            } else {
                0.0
            }
        });
        let got = shannon_radial_exact(QuantumState::new(n, l, 0).unwrap(), unit()).unwrap();
        assert_relative_eq!(got, want, max_relative = 1e-7);
    }
}

#[test]
fn norms_are_one_at_first_order() {
    for (n, l) in [(0, 0), (1, 3), (4, 2), (30, 1)] {
        assert_relative_eq!(laguerre_norm(n, l, 1.0).unwrap().value, 1.0, max_relative = 1e-10);
    }
    for l in 0..=3 {
        assert_relative_eq!(closed_n1l(l, 1.0).unwrap().value, 1.0, max_relative = 1e-10);
    }
}

#[test]
fn closed_n1l_even_orders() {
    for l in 0..=3u32 {
        for p in [1.0, 2.0, 3.0] {
            let closed = closed_n1l(l, p).unwrap().value;
            assert_relative_eq!(closed, laguerre_norm(1, l, p).unwrap().value, max_relative = 1e-10);
        }
    }
}

#[test]
fn lambda_scaling() {
    let s = QuantumState::new(2, 1, 0).unwrap();
    let four = OscillatorParams::new(4.0).unwrap();
    let shift = renyi_radial_exact(s, unit(), 2.0).unwrap() - renyi_radial_exact(s, four, 2.0).unwrap();
    assert_relative_eq!(shift, 1.5 * 4f64.ln(), max_relative = 1e-12);
}
