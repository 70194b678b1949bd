//! Built-in consistency suites for the `verify` command.

use std::f64::consts::PI;

use oscent_core::angular::{lambda_bell, lambda_closed, lambda_linearization, lambda_quadrature};
use oscent_core::entropy::{position_momentum_sum, renyi_bound, renyi_total, shannon_total, Mode};
use oscent_core::oracle::{normalization_full, renyi_full, shannon_full, GridSpec};
use oscent_core::radial::laguerre_norm;
use oscent_core::rydberg::bessel_constant;
use oscent_core::{AngularState, OscillatorParams, QuantumState, Result};
use rayon::prelude::*;

use crate::args::Suite;
use crate::report::Record;

/// Failed checks listed per suite before the rest are summarized.
const LISTED_FAILURES: usize = 5;

#[derive(Default)]
struct Tally {
    checks: usize,
    worst: f64,
    failures: Vec<String>,
}

impl Tally {
    fn compare(&mut self, label: String, got: Result<f64>, want: Result<f64>, tol: f64, relative: bool) {
        self.checks += 1;
        match (got, want) {
            (Ok(g), Ok(w)) => {
                let diff = (g - w).abs();
                let scaled = if relative { diff / w.abs() } else { diff };
                self.worst = self.worst.max(scaled);
                if !(scaled <= tol) {
                    self.failures.push(format!("{label}: {g} vs {w}"));
                }
            }
            (Err(e), _) | (_, Err(e)) => self.failures.push(format!("{label}: {e}")),
        }
    }

    fn require(&mut self, label: String, ok: bool) {
        self.checks += 1;
        if !ok {
            self.failures.push(label);
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checks += other.checks;
        self.worst = self.worst.max(other.worst);
        self.failures.extend(other.failures);
        self
    }
}

fn ang(l: u32, m: u32) -> AngularState {
    AngularState { l, m: m as i32 }
}

fn small_states(n_max: u32, l_max: u32, all_m: bool) -> Vec<QuantumState> {
    let mut out = Vec::new();
    for n in 0..=n_max {
        for l in 0..=l_max {
            let ms: Vec<i32> = if all_m { (-(l as i32)..=l as i32).collect() } else { (0..=l as i32).collect() };
            out.extend(ms.into_iter().map(|m| QuantumState { n, l, m }));
        }
    }
    out
}

fn angular_methods(tol: f64) -> Tally {
    let cases: Vec<(u32, u32, u32)> = (0..=4u32).flat_map(|l| (0..=l).flat_map(move |m| (1..=4u32).map(move |k| (l, m, 2 * k)))).collect();
    cases
        .par_iter()
        .map(|&(l, m, q)| {
            let mut t = Tally::default();
            let p = q as f64 / 2.0;
            let s = ang(l, m);
            let quad = lambda_quadrature(s, p).map(|r| r.lambda_value);
            let label = format!("(l={l}, m={m}, 2p={q})");
            t.compare(format!("linearization {label}"), lambda_linearization(s, p).map(|r| r.lambda_value), quad.clone(), tol, true);
            t.compare(format!("Bell {label}"), lambda_bell(s, p).map(|r| r.lambda_value), quad, tol, true);
            t
        })
        .reduce(Tally::default, Tally::merge)
}

fn angular_closed(tol: f64) -> Tally {
    let cases: Vec<(u32, u32, f64)> = (1..=6u32)
        .flat_map(|l| [(l, l), (l, l - 1)])
        .flat_map(|(l, m)| [0.7, 1.3, 2.5].map(|p| (l, m, p)))
        .collect();
    cases
        .par_iter()
        .map(|&(l, m, p)| {
            let mut t = Tally::default();
            let s = ang(l, m);
            let closed = lambda_closed(s, p).and_then(|r| r.map(|r| r.lambda_value).ok_or_else(|| oscent_core::Error::Domain("no closed form".into())));
            t.compare(format!("closed (l={l}, m={m}, p={p})"), closed, lambda_quadrature(s, p).map(|r| r.lambda_value), tol, true);
            t
        })
        .reduce(Tally::default, Tally::merge)
}

fn normalization(tol: f64) -> Tally {
    small_states(3, 2, false)
        .par_iter()
        .map(|&s| {
            let mut t = Tally::default();
            t.compare(format!("norm {s:?}"), normalization_full(s, OscillatorParams::default(), GridSpec::default()), Ok(1.0), tol, false);
            t
        })
        .reduce(Tally::default, Tally::merge)
}

fn decomposition(tol: f64) -> Tally {
    let unit = OscillatorParams::default();
    small_states(2, 2, false)
        .par_iter()
        .map(|&s| {
            let mut t = Tally::default();
            for p in [0.5, 2.0, 3.0] {
                t.compare(
                    format!("R_{p} {s:?}"),
                    renyi_total(s, unit, p, Mode::Exact).map(|d| d.total),
                    renyi_full(s, unit, p, GridSpec::default()),
                    tol,
                    false,
                );
            }
            t.compare(format!("S {s:?}"), shannon_total(s, unit, Mode::Exact).map(|d| d.total), shannon_full(s, unit, GridSpec::default()), tol, false);
            t
        })
        .reduce(Tally::default, Tally::merge)
}

fn uncertainty(tol: f64) -> Tally {
    let unit = OscillatorParams::default();
    let pairs = [(2.0, 2.0 / 3.0), (3.0, 0.6), (1.5, 0.75), (1.0, 1.0)];
    small_states(3, 3, false)
        .par_iter()
        .map(|&s| {
            let mut t = Tally::default();
            for (p, q) in pairs {
                match position_momentum_sum(s, unit, p, q, Mode::Exact) {
                    Ok((sum, _)) => {
                        let gap = sum - renyi_bound(p, q);
                        if s.n == 0 && s.l == 0 {
                            t.compare(format!("ground state ({p},{q})"), Ok(sum), Ok(renyi_bound(p, q)), tol, false);
                        } else {
                            t.require(format!("{s:?} ({p},{q}) above the bound: gap {gap}"), gap > 1e-3);
                        }
                    }
                    Err(e) => t.require(format!("{s:?} ({p},{q}): {e}"), false),
                }
            }
            t
        })
        .reduce(Tally::default, Tally::merge)
}

fn rydberg(tol: f64) -> Tally {
    let mut t = Tally::default();
    let cb = bessel_constant(0.5, -0.5, 2.0).and_then(|c| c.value.ok_or_else(|| oscent_core::Error::Divergence("C_B".into())));
    t.compare("C_B(1/2,-1/2,2) vs 1/π".into(), cb.clone(), Ok(1.0 / PI), tol.max(1e-6), true);
    if let Ok(cb) = cb {
        let dev: Vec<f64> = [50u32, 100, 200]
            .par_iter()
            .map(|&n| laguerre_norm(n, 0, 2.0).map_or(f64::NAN, |x| (x.value * (n as f64).sqrt() / cb - 1.0).abs()))
            .collect();
        t.require(format!("p=2 norm ratio converges: {dev:?}"), dev.windows(2).all(|w| w[1] < w[0]));
    }
    t
}

pub fn run(suite: Suite, tol: f64) -> Vec<Record> {
    let all = [Suite::AngularMethods, Suite::AngularClosed, Suite::Normalization, Suite::Decomposition, Suite::Uncertainty, Suite::Rydberg];
    let selected: Vec<Suite> = if suite == Suite::All { all.to_vec() } else { vec![suite] };
    selected
        .into_iter()
        .map(|s| {
            let (name, tally) = match s {
                Suite::AngularMethods => ("angular-methods", angular_methods(tol)),
                Suite::AngularClosed => ("angular-closed", angular_closed(tol)),
                Suite::Normalization => ("normalization", normalization(tol)),
                Suite::Decomposition => ("decomposition", decomposition(tol)),
                Suite::Uncertainty => ("uncertainty", uncertainty(tol)),
                Suite::Rydberg | Suite::All => ("rydberg", rydberg(tol)),
            };
            let mut listed: Vec<String> = tally.failures.iter().take(LISTED_FAILURES).cloned().collect();
            if tally.failures.len() > LISTED_FAILURES {
                listed.push(format!("{} more failures", tally.failures.len() - LISTED_FAILURES));
            }
            Record::new()
                .text("suite", name)
                .int("checks", tally.checks as i64)
                .int("failed", tally.failures.len() as i64)
                .num("worst_deviation", tally.worst)
                .num("tolerance", tol)
                .flag("pass", tally.failures.is_empty())
                .warn(listed)
        })
        .collect()
}
