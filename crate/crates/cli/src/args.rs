//! Command-line grammar.

use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Serialize, Serializer};

#[derive(Debug, Parser, Serialize)]
#[command(name = "oscent", version, about = "Entropies of three-dimensional harmonic-oscillator states")]
pub struct Cli {
    #[command(subcommand)]
    #[serde(flatten)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Report entropies in bits instead of nats.
    #[arg(long, global = true)]
    pub bits: bool,

    /// Oscillator strength λ of V(r) = λ²r²/2.
    #[arg(long, global = true, default_value_t = 1.0, value_parser = parse_positive)]
    pub lambda: f64,

    /// Worker threads for independent points (default: all cores).
    #[arg(long, global = true)]
    #[serde(skip)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "lowercase", tag = "command")]
pub enum Command {
    /// Angular functional Λ and angular Rényi/Shannon entropy of Y_{l,m}.
    Angular(AngularArgs),
    /// Laguerre norm and radial Rényi/Shannon entropy of ρ_{n,l}.
    Radial(RadialArgs),
    /// Large-n leading-order radial Rényi entropy.
    Asymptotic(RadialArgs),
    /// Total entropy with its radial and angular parts.
    Total(TotalArgs),
    /// Position-momentum uncertainty sum and bound.
    Uncertainty(UncertaintyArgs),
    /// Run the built-in consistency suites.
    Verify(VerifyArgs),
    /// Convergence table of exact against asymptotic radial entropies.
    Sweep(SweepArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct AngularArgs {
    /// Orbital quantum numbers, e.g. `2`, `0..4` or `1,3`.
    #[arg(long, default_value = "0")]
    pub l: Selector,
    /// Magnetic quantum numbers, or `all` for every m with |m| ≤ l.
    #[arg(long, default_value = "0")]
    pub m: MSelector,
    /// Entropy orders; `1` gives the Shannon entropy. Fractions such as `3/2` are accepted.
    #[arg(long, required = true, value_delimiter = ',', value_parser = parse_order)]
    pub p: Vec<f64>,
    #[arg(long, value_enum, default_value_t = AngularRoute::Auto)]
    pub method: AngularRoute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AngularRoute {
    Auto,
    Linearization,
    Bell,
    Closed,
    Quadrature,
}

#[derive(Debug, Args, Serialize)]
pub struct RadialArgs {
    /// Radial quantum numbers.
    #[arg(long, default_value = "0")]
    pub n: Selector,
    #[arg(long, default_value = "0")]
    pub l: Selector,
    #[arg(long, required = true, value_delimiter = ',', value_parser = parse_order)]
    pub p: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Exact,
    Asymptotic,
}

#[derive(Debug, Args, Serialize)]
pub struct TotalArgs {
    #[arg(long, default_value = "0")]
    pub n: Selector,
    #[arg(long, default_value = "0")]
    pub l: Selector,
    #[arg(long, default_value = "0")]
    pub m: MSelector,
    #[arg(long, required = true, value_delimiter = ',', value_parser = parse_order)]
    pub p: Vec<f64>,
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    pub mode: ModeArg,
    /// Report the momentum-space entropy instead of the position-space one.
    #[arg(long)]
    pub momentum: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct UncertaintyArgs {
    #[arg(long, default_value = "0")]
    pub n: Selector,
    #[arg(long, default_value = "0")]
    pub l: Selector,
    #[arg(long, default_value = "0")]
    pub m: MSelector,
    /// Position-space orders; `1` selects the Shannon sum.
    #[arg(long, required = true, value_delimiter = ',', value_parser = parse_order)]
    pub p: Vec<f64>,
    /// Momentum-space order (default p/(2p−1)); only valid with a single p.
    #[arg(long, value_parser = parse_order)]
    pub q: Option<f64>,
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    pub mode: ModeArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    All,
    AngularMethods,
    AngularClosed,
    Normalization,
    Decomposition,
    Uncertainty,
    Rydberg,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// Comparison tolerance (default 1e-7, or OSCENT_PRECISION when set).
    #[arg(long, value_parser = parse_positive)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Quantity {
    RadialRenyi,
    RadialShannon,
}

#[derive(Debug, Args, Serialize)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub quantity: Quantity,
    /// Order for `radial-renyi`.
    #[arg(long, value_parser = parse_order)]
    pub p: Option<f64>,
    /// Ascending ladder of radial quantum numbers.
    #[arg(long)]
    pub n: Selector,
    #[arg(long, default_value_t = 0)]
    pub l: u32,
}

/// Nonnegative integers written as `3`, `0..4` (inclusive) or comma lists of both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Selector(pub Vec<u32>);

impl FromStr for Selector {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut out = Vec::new();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match item.split_once("..") {
                Some((a, b)) => {
                    let (a, b) = (parse_u32(a)?, parse_u32(b)?);
                    if a > b {
                        return Err(format!("empty range {item}"));
                    }
                    out.extend(a..=b);
                }
                None => out.push(parse_u32(item)?),
            }
        }
        if out.is_empty() {
            return Err("empty selector".into());
        }
        Ok(Selector(out))
    }
}

impl Serialize for Selector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

fn parse_u32(s: &str) -> Result<u32, String> {
    s.trim().parse().map_err(|_| format!("not a nonnegative integer: {s:?}"))
}

/// Magnetic quantum numbers, or every admissible m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MSelector {
    All,
    List(Vec<i32>),
}

impl MSelector {
    pub fn values(&self, l: u32) -> Vec<i32> {
        match self {
            MSelector::All => (-(l as i32)..=l as i32).collect(),
            MSelector::List(v) => v.clone(),
        }
    }
}

impl FromStr for MSelector {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim() == "all" {
            return Ok(MSelector::All);
        }
        let parse = |t: &str| t.trim().parse::<i32>().map_err(|_| format!("not an integer: {t:?}"));
        let mut out = Vec::new();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            // a leading minus belongs to the first bound
            let skip = usize::from(item.starts_with('-'));
            match item[skip..].find("..").map(|i| i + skip) {
                Some(i) => {
                    let (a, b) = (parse(&item[..i])?, parse(&item[i + 2..])?);
                    if a > b {
                        return Err(format!("empty range {item}"));
                    }
                    out.extend(a..=b);
                }
                None => out.push(parse(item)?),
            }
        }
        if out.is_empty() {
            return Err("empty selector".into());
        }
        Ok(MSelector::List(out))
    }
}

impl Serialize for MSelector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            MSelector::All => s.serialize_str("all"),
            MSelector::List(v) => v.serialize(s),
        }
    }
}

/// A positive order written as a decimal or a fraction `a/b`.
pub fn parse_order(s: &str) -> Result<f64, String> {
    let value = match s.split_once('/') {
        Some((a, b)) => {
            let a: f64 = a.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
            let b: f64 = b.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
            a / b
        }
        None => s.trim().parse().map_err(|_| format!("not a number: {s:?}"))?,
    };
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(format!("order must be positive and finite, got {s}"))
    }
}

fn parse_positive(s: &str) -> Result<f64, String> {
    match s.trim().parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("expected a positive number, got {s:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selectors() {
        assert_eq!("0..3,7".parse::<Selector>().unwrap().0, vec![0, 1, 2, 3, 7]);
        assert!("3..1".parse::<Selector>().is_err());
        assert!("".parse::<Selector>().is_err());
        assert_eq!("-2..1".parse::<MSelector>().unwrap().values(5), vec![-2, -1, 0, 1]);
        assert_eq!("all".parse::<MSelector>().unwrap().values(1), vec![-1, 0, 1]);
        assert_eq!("-1".parse::<MSelector>().unwrap().values(1), vec![-1]);
    }

    #[test]
    fn orders() {
        assert_eq!(parse_order("3/2").unwrap(), 1.5);
        assert_eq!(parse_order("2").unwrap(), 2.0);
        assert!(parse_order("0").is_err());
        assert!(parse_order("x").is_err());
    }
}
