//! Evaluation of each subcommand into report records.

use oscent_core::angular::{
    lambda_bell, lambda_closed, lambda_linearization, lambda_quadrature, renyi_angular, shannon_angular, shannon_angular_closed,
    shannon_angular_quadrature, AngularResult,
};
use oscent_core::entropy::{renyi_total, shannon_total, tsallis_from_renyi, uncertainty_sum, ConjugatePair, EntropyKind, Mode};
use oscent_core::radial::{laguerre_norm, renyi_from_norm, renyi_radial_exact, shannon_radial_exact};
use oscent_core::rydberg::{renyi_radial_asymptotic, shannon_radial_asymptotic, Regime};
use oscent_core::{AngularState, Error, OscillatorParams, QuantumState};
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{AngularArgs, AngularRoute, MSelector, ModeArg, Quantity, RadialArgs, Selector, SweepArgs, TotalArgs, UncertaintyArgs};
use crate::report::Record;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Evaluates `f` over `items` in parallel, keeping the input order and
/// reporting the first error in that order.
pub fn par_map<T: Sync, F>(items: &[T], f: F) -> CliResult<Vec<Record>>
where
    F: Fn(&T) -> CliResult<Record> + Sync + Send,
{
    items.par_iter().map(f).collect::<Vec<_>>().into_iter().collect()
}

fn kind(p: f64) -> &'static str {
    if p == 1.0 {
        "shannon"
    } else {
        "renyi"
    }
}

fn name<T: Serialize>(tag: T) -> String {
    match serde_json::to_value(tag) {
        Ok(serde_json::Value::String(s)) => s,
        _ => String::new(),
    }
}

fn mode(m: ModeArg) -> Mode {
    match m {
        ModeArg::Exact => Mode::Exact,
        ModeArg::Asymptotic => Mode::Asymptotic,
    }
}

fn states(n: &Selector, l: &Selector, m: &MSelector) -> CliResult<Vec<QuantumState>> {
    let mut out = Vec::new();
    for &nv in &n.0 {
        for &lv in &l.0 {
            for mv in m.values(lv) {
                out.push(QuantumState::new(nv, lv, mv)?);
            }
        }
    }
    Ok(out)
}

fn with_orders<T: Copy>(items: Vec<T>, ps: &[f64]) -> Vec<(T, f64)> {
    items.into_iter().flat_map(|s| ps.iter().map(move |&p| (s, p))).collect()
}

fn angular_value(state: AngularState, p: f64, route: AngularRoute) -> CliResult<AngularResult> {
    let missing = || CliError::Core(Error::Domain(format!("no closed form for (l, m) = ({}, {})", state.l, state.m)));
    Ok(match route {
        AngularRoute::Auto if p != 1.0 => renyi_angular(state, p)?,
        AngularRoute::Closed if p != 1.0 => lambda_closed(state, p)?.ok_or_else(missing)?,
        AngularRoute::Linearization => lambda_linearization(state, p)?,
        AngularRoute::Bell => lambda_bell(state, p)?,
        AngularRoute::Quadrature => lambda_quadrature(state, p)?,
        _ => unreachable!("Shannon routes are handled by the caller"),
    })
}

pub fn angular(args: &AngularArgs) -> CliResult<Vec<Record>> {
    let mut states = Vec::new();
    for &l in &args.l.0 {
        for m in args.m.values(l) {
            states.push(AngularState::new(l, m)?);
        }
    }
    let points = with_orders(states, &args.p);
    par_map(&points, |&(s, p)| {
        let base = Record::new().int("l", s.l).int("m", s.m).num("p", p).text("kind", kind(p));
        if p == 1.0 && matches!(args.method, AngularRoute::Auto | AngularRoute::Closed | AngularRoute::Quadrature) {
            let (value, method) = match args.method {
                AngularRoute::Quadrature => (shannon_angular_quadrature(s)?, "quadrature"),
                AngularRoute::Closed => (
                    shannon_angular_closed(s).ok_or_else(|| CliError::Core(Error::Domain(format!("no closed form for (l, m) = ({}, {})", s.l, s.m))))?,
                    "closed_form",
                ),
                _ => (
                    shannon_angular(s)?,
                    if shannon_angular_closed(s).is_some() { "closed_form" } else { "quadrature" },
                ),
            };
            return Ok(base.text("method", method).num("lambda", 1.0).entropy("renyi", value).opt_num("polynomial_value", None));
        }
        let r = angular_value(s, p, args.method)?;
        Ok(base
            .text("method", name(r.method))
            .num("lambda", r.lambda_value)
            .entropy("renyi", r.renyi)
            .opt_num("polynomial_value", r.polynomial_value)
            .warn(r.warnings))
    })
}

pub fn radial(args: &RadialArgs, params: OscillatorParams) -> CliResult<Vec<Record>> {
    let points = with_orders(states(&args.n, &args.l, &MSelector::List(vec![0]))?, &args.p);
    par_map(&points, |&(s, p)| {
        let base = Record::new().int("n", s.n).int("l", s.l).num("p", p).text("kind", kind(p));
        if p == 1.0 {
            let v = shannon_radial_exact(s, params)?;
            return Ok(base.opt_num("norm", None).text("path", "quadrature").entropy("entropy", v));
        }
        let norm = laguerre_norm(s.n, s.l, p)?;
        Ok(base
            .num("norm", norm.value)
            .text("path", name(norm.path))
            .entropy("entropy", renyi_from_norm(norm.value, params, p))
            .warn(norm.warnings))
    })
}

pub fn asymptotic(args: &RadialArgs, params: OscillatorParams) -> CliResult<Vec<Record>> {
    let points = with_orders(states(&args.n, &args.l, &MSelector::List(vec![0]))?, &args.p);
    par_map(&points, |&(s, p)| {
        let base = Record::new().int("n", s.n).int("l", s.l).num("p", p).text("kind", kind(p));
        if p == 1.0 {
            let v = shannon_radial_asymptotic(s.n, params)?;
            return Ok(base.text("regime", "shannon").entropy("entropy", v).num("leading_exponent", 1.5).flag("caveat", false));
        }
        let a = renyi_radial_asymptotic(s.n, s.l, params, p)?;
        let mut rec = base
            .text("regime", name(a.regime))
            .entropy("entropy", a.value)
            .num("leading_exponent", a.leading_exponent)
            .flag("caveat", a.caveat);
        if a.caveat {
            rec = rec.warn(["transition regime: the O(1) term accompanying ln n is unknown".to_string()]);
        }
        Ok(rec)
    })
}

pub fn total(args: &TotalArgs, params: OscillatorParams) -> CliResult<Vec<Record>> {
    let points = with_orders(states(&args.n, &args.l, &args.m)?, &args.p);
    par_map(&points, |&(s, p)| {
        let mut d = if p == 1.0 {
            shannon_total(s, params, mode(args.mode))?
        } else {
            renyi_total(s, params, p, mode(args.mode))?
        };
        if args.momentum {
            d = d.to_momentum(params);
        }
        Ok(Record::new()
            .int("n", s.n)
            .int("l", s.l)
            .int("m", s.m)
            .num("p", p)
            .text("kind", kind(p))
            .text("mode", name(d.mode))
            .text("space", name(d.space))
            .entropy("radial", d.radial)
            .entropy("angular", d.angular)
            .entropy("total", d.total)
            .num("tsallis", tsallis_from_renyi(d.total, p))
            .flag("caveat", d.caveat)
            .warn(d.warnings))
    })
}

pub fn uncertainty(args: &UncertaintyArgs, params: OscillatorParams) -> CliResult<Vec<Record>> {
    if args.q.is_some() && args.p.len() != 1 {
        return Err(CliError::Usage("--q can only be combined with a single --p".into()));
    }
    let points = with_orders(states(&args.n, &args.l, &args.m)?, &args.p);
    par_map(&points, |&(s, p)| {
        let (pair, kind) = if p == 1.0 && args.q.unwrap_or(1.0) == 1.0 {
            (ConjugatePair::shannon(), EntropyKind::Shannon)
        } else if let Some(q) = args.q {
            (ConjugatePair::new(p, q)?, EntropyKind::Renyi)
        } else {
            (ConjugatePair::with_dual(p)?, EntropyKind::Renyi)
        };
        let r = uncertainty_sum(s, params, pair, kind, mode(args.mode))?;
        Ok(Record::new()
            .int("n", s.n)
            .int("l", s.l)
            .int("m", s.m)
            .num("p", pair.p())
            .num("q", pair.q())
            .text("kind", name(kind))
            .entropy("sum", r.sum)
            .entropy("bound", r.bound)
            .entropy("excess", r.sum - r.bound)
            .flag("saturated", r.saturated)
            .flag("caveat", r.caveat)
            .warn(r.warnings))
    })
}

/// Exact against asymptotic radial entropies along an ascending n ladder.
pub fn emit_convergence_table(quantity: Quantity, p: Option<f64>, l: u32, params: OscillatorParams, ladder: &[u32]) -> CliResult<Vec<Record>> {
    if ladder.is_empty() {
        return Err(CliError::Usage("empty n ladder".into()));
    }
    if ladder.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CliError::Usage("the n ladder must be strictly ascending".into()));
    }
    let p = match (quantity, p) {
        (Quantity::RadialRenyi, None) => return Err(CliError::Usage("radial-renyi needs --p".into())),
        (Quantity::RadialRenyi, Some(p)) if p == 1.0 => return Err(CliError::Usage("p = 1 is the Shannon limit; use radial-shannon".into())),
        (Quantity::RadialRenyi, Some(p)) => p,
        (Quantity::RadialShannon, _) => 1.0,
    };
    par_map(ladder, |&n| {
        let s = QuantumState::new(n, l, 0)?;
        let base = Record::new().int("n", n).int("l", l).num("p", p);
        if p == 1.0 {
            let exact = shannon_radial_exact(s, params)?;
            let asym = shannon_radial_asymptotic(n, params)?;
            return Ok(base
                .entropy("exact", exact)
                .entropy("asymptotic", asym)
                .entropy("difference", exact - asym)
                .opt_num("norm_ratio", None)
                .text("regime", "shannon")
                .flag("caveat", false));
        }
        let exact = renyi_radial_exact(s, params, p)?;
        let a = renyi_radial_asymptotic(n, l, params, p)?;
        // both entropies share the −ln(2λ^{3/2}) offset, so N_exact/N_asym = e^{(1−p)ΔR}
        let ratio = (a.regime != Regime::Transition).then(|| ((1.0 - p) * (exact - a.value)).exp());
        Ok(base
            .entropy("exact", exact)
            .entropy("asymptotic", a.value)
            .entropy("difference", exact - a.value)
            .opt_num("norm_ratio", ratio)
            .text("regime", name(a.regime))
            .flag("caveat", a.caveat))
    })
}

pub fn sweep(args: &SweepArgs, params: OscillatorParams) -> CliResult<Vec<Record>> {
    emit_convergence_table(args.quantity, args.p, args.l, params, &args.n.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladder_validation() {
        let unit = OscillatorParams::default();
        assert!(matches!(emit_convergence_table(Quantity::RadialRenyi, Some(2.0), 0, unit, &[]), Err(CliError::Usage(_))));
        assert!(matches!(emit_convergence_table(Quantity::RadialRenyi, Some(2.0), 0, unit, &[5, 3]), Err(CliError::Usage(_))));
        assert!(matches!(emit_convergence_table(Quantity::RadialRenyi, None, 0, unit, &[5]), Err(CliError::Usage(_))));
        assert_eq!(emit_convergence_table(Quantity::RadialShannon, None, 0, unit, &[5, 10]).unwrap().len(), 2);
    }
}
