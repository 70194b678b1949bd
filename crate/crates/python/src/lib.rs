//! Python bindings for `oscent_core`.

use pyo3::create_exception;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;

use oscent_core::entropy::{self, ConjugatePair, EntropyKind, Mode};
use oscent_core::{angular, oracle, radial, rydberg, AngularState, Error, OscillatorParams, QuantumState};

create_exception!(oscent, DomainError, PyValueError, "Argument outside the domain of the computation.");
create_exception!(oscent, DivergenceError, PyValueError, "The defining integral diverges.");
create_exception!(oscent, GrowthError, PyValueError, "An exact multi-sum is too large.");
create_exception!(oscent, AccuracyError, PyArithmeticError, "A numerical integral missed its tolerance.");

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Domain(msg) => DomainError::new_err(msg),
        Error::Divergence(msg) => DivergenceError::new_err(msg),
        e @ Error::UnboundedGrowth { .. } => GrowthError::new_err(e.to_string()),
        e @ Error::Accuracy { .. } => AccuracyError::new_err(e.to_string()),
    }
}

fn params(lam: f64) -> PyResult<OscillatorParams> {
    OscillatorParams::new(lam).map_err(py_err)
}

fn state(n: u32, l: u32, m: i32) -> PyResult<QuantumState> {
    QuantumState::new(n, l, m).map_err(py_err)
}

fn ang(l: u32, m: i32) -> PyResult<AngularState> {
    AngularState::new(l, m).map_err(py_err)
}

fn mode(name: &str) -> PyResult<Mode> {
    match name {
        "exact" => Ok(Mode::Exact),
        "asymptotic" => Ok(Mode::Asymptotic),
        other => Err(DomainError::new_err(format!("mode must be 'exact' or 'asymptotic', got {other:?}"))),
    }
}

#[pyclass(frozen, get_all, module = "oscent")]
pub struct AngularResult {
    lambda_value: f64,
    renyi: f64,
    method: String,
    p: f64,
    polynomial_value: Option<f64>,
    warnings: Vec<String>,
}

#[pymethods]
impl AngularResult {
    fn __repr__(&self) -> String {
        format!("AngularResult(lambda_value={}, renyi={}, method='{}')", self.lambda_value, self.renyi, self.method)
    }
}

impl From<angular::AngularResult> for AngularResult {
    fn from(r: angular::AngularResult) -> Self {
        AngularResult {
            lambda_value: r.lambda_value,
            renyi: r.renyi,
            method: format!("{:?}", r.method).to_lowercase(),
            p: r.p.value(),
            polynomial_value: r.polynomial_value,
            warnings: r.warnings,
        }
    }
}

#[pyclass(frozen, get_all, module = "oscent")]
pub struct LaguerreNorm {
    value: f64,
    path: String,
    alpha: f64,
    beta: f64,
    warnings: Vec<String>,
}

#[pymethods]
impl LaguerreNorm {
    fn __repr__(&self) -> String {
        format!("LaguerreNorm(value={}, path='{}')", self.value, self.path)
    }
}

impl From<radial::LaguerreNorm> for LaguerreNorm {
    fn from(r: radial::LaguerreNorm) -> Self {
        LaguerreNorm {
            value: r.value,
            path: format!("{:?}", r.path).to_lowercase(),
            alpha: r.alpha,
            beta: r.beta,
            warnings: r.warnings,
        }
    }
}

#[pyclass(frozen, get_all, module = "oscent")]
pub struct AsymptoticValue {
    value: f64,
    regime: String,
    leading_exponent: f64,
    caveat: bool,
}

#[pymethods]
impl AsymptoticValue {
    fn __repr__(&self) -> String {
        format!("AsymptoticValue(value={}, regime='{}', caveat={})", self.value, self.regime, self.caveat)
    }
}

#[pyclass(frozen, get_all, module = "oscent")]
pub struct EntropyDecomposition {
    radial: f64,
    angular: f64,
    total: f64,
    space: String,
    mode: String,
    p: f64,
    caveat: bool,
    warnings: Vec<String>,
}

#[pymethods]
impl EntropyDecomposition {
    fn __repr__(&self) -> String {
        format!("EntropyDecomposition(radial={}, angular={}, total={})", self.radial, self.angular, self.total)
    }
}

impl From<entropy::EntropyDecomposition> for EntropyDecomposition {
    fn from(d: entropy::EntropyDecomposition) -> Self {
        EntropyDecomposition {
            radial: d.radial,
            angular: d.angular,
            total: d.total,
            space: format!("{:?}", d.space).to_lowercase(),
            mode: format!("{:?}", d.mode).to_lowercase(),
            p: d.p.value(),
            caveat: d.caveat,
            warnings: d.warnings,
        }
    }
}

#[pyclass(frozen, get_all, module = "oscent")]
pub struct UncertaintyReport {
    sum: f64,
    bound: f64,
    saturated: bool,
    caveat: bool,
    warnings: Vec<String>,
}

#[pymethods]
impl UncertaintyReport {
    fn __repr__(&self) -> String {
        format!("UncertaintyReport(sum={}, bound={}, saturated={})", self.sum, self.bound, self.saturated)
    }
}

/// Angular Rényi entropy of Y_{l,m}; `method` is one of auto, linearization, bell,
/// closed, quadrature.
#[pyfunction]
#[pyo3(signature = (l, m, p, method = "auto"))]
fn renyi_angular(l: u32, m: i32, p: f64, method: &str) -> PyResult<AngularResult> {
    let s = ang(l, m)?;
    let r = match method {
        "auto" => angular::renyi_angular(s, p),
        "linearization" => angular::lambda_linearization(s, p),
        "bell" => angular::lambda_bell(s, p),
        "quadrature" => angular::lambda_quadrature(s, p),
        "closed" => angular::lambda_closed(s, p).and_then(|r| r.ok_or_else(|| Error::Domain(format!("no closed form for ({l}, {m})")))),
        other => return Err(DomainError::new_err(format!("unknown method {other:?}"))),
    };
    r.map(Into::into).map_err(py_err)
}

#[pyfunction]
fn shannon_angular(l: u32, m: i32) -> PyResult<f64> {
    angular::shannon_angular(ang(l, m)?).map_err(py_err)
}

#[pyfunction]
fn laguerre_norm(n: u32, l: u32, p: f64) -> PyResult<LaguerreNorm> {
    radial::laguerre_norm(n, l, p).map(Into::into).map_err(py_err)
}

#[pyfunction]
fn closed_n1l(l: u32, p: f64) -> PyResult<LaguerreNorm> {
    radial::closed_n1l(l, p).map(Into::into).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (n, l, p, lam = 1.0))]
fn renyi_radial(n: u32, l: u32, p: f64, lam: f64) -> PyResult<f64> {
    radial::renyi_radial_exact(state(n, l, 0)?, params(lam)?, p).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (n, l, lam = 1.0))]
fn shannon_radial(n: u32, l: u32, lam: f64) -> PyResult<f64> {
    radial::shannon_radial_exact(state(n, l, 0)?, params(lam)?).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (n, l, p, lam = 1.0))]
fn renyi_radial_asymptotic(n: u32, l: u32, p: f64, lam: f64) -> PyResult<AsymptoticValue> {
    let a = rydberg::renyi_radial_asymptotic(n, l, params(lam)?, p).map_err(py_err)?;
    Ok(AsymptoticValue {
        value: a.value,
        regime: format!("{:?}", a.regime).to_lowercase(),
        leading_exponent: a.leading_exponent,
        caveat: a.caveat,
    })
}

#[pyfunction]
#[pyo3(signature = (n, lam = 1.0))]
fn shannon_radial_asymptotic(n: u32, lam: f64) -> PyResult<f64> {
    rydberg::shannon_radial_asymptotic(n, params(lam)?).map_err(py_err)
}

/// C(β,p) with β = (1−p)/2, or None where the integral diverges.
#[pyfunction]
fn cosine_constant(p: f64) -> PyResult<Option<f64>> {
    rydberg::cosine_constant(p).map(|c| c.value).map_err(py_err)
}

#[pyfunction]
fn bessel_constant(alpha: f64, beta: f64, p: f64) -> PyResult<Option<f64>> {
    rydberg::bessel_constant(alpha, beta, p).map(|c| c.value).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (n, l, m, p, lam = 1.0, mode = "exact", momentum = false))]
fn renyi_total(n: u32, l: u32, m: i32, p: f64, lam: f64, mode: &str, momentum: bool) -> PyResult<EntropyDecomposition> {
    let prm = params(lam)?;
    let d = entropy::renyi_total(state(n, l, m)?, prm, p, self::mode(mode)?).map_err(py_err)?;
    Ok(if momentum { d.to_momentum(prm) } else { d }.into())
}

#[pyfunction]
#[pyo3(signature = (n, l, m, lam = 1.0, mode = "exact", momentum = false))]
fn shannon_total(n: u32, l: u32, m: i32, lam: f64, mode: &str, momentum: bool) -> PyResult<EntropyDecomposition> {
    let prm = params(lam)?;
    let d = entropy::shannon_total(state(n, l, m)?, prm, self::mode(mode)?).map_err(py_err)?;
    Ok(if momentum { d.to_momentum(prm) } else { d }.into())
}

#[pyfunction]
fn tsallis_from_renyi(r: f64, p: f64) -> f64 {
    entropy::tsallis_from_renyi(r, p)
}

#[pyfunction]
#[pyo3(signature = (n, l, m, lam = 1.0))]
fn disequilibrium(n: u32, l: u32, m: i32, lam: f64) -> PyResult<f64> {
    entropy::disequilibrium(state(n, l, m)?, params(lam)?).map_err(py_err)
}

/// Position-momentum sum for the pair (p, q); q defaults to p/(2p−1) and p = 1
/// selects the Shannon sum.
#[pyfunction]
#[pyo3(signature = (n, l, m, p, q = None, lam = 1.0, mode = "exact"))]
fn uncertainty_sum(n: u32, l: u32, m: i32, p: f64, q: Option<f64>, lam: f64, mode: &str) -> PyResult<UncertaintyReport> {
    let (pair, kind) = if p == 1.0 && q.unwrap_or(1.0) == 1.0 {
        (ConjugatePair::shannon(), EntropyKind::Shannon)
    } else {
        let pair = match q {
            Some(q) => ConjugatePair::new(p, q),
            None => ConjugatePair::with_dual(p),
        };
        (pair.map_err(py_err)?, EntropyKind::Renyi)
    };
    let r = entropy::uncertainty_sum(state(n, l, m)?, params(lam)?, pair, kind, self::mode(mode)?).map_err(py_err)?;
    Ok(UncertaintyReport {
        sum: r.sum,
        bound: r.bound,
        saturated: r.saturated,
        caveat: r.caveat,
        warnings: r.warnings,
    })
}

/// Brute-force R_p over ℝ³ (p ≠ 1) or Shannon entropy (p = 1).
#[pyfunction]
#[pyo3(signature = (n, l, m, p, lam = 1.0))]
fn oracle_entropy(n: u32, l: u32, m: i32, p: f64, lam: f64) -> PyResult<f64> {
    let (s, prm, grid) = (state(n, l, m)?, params(lam)?, oracle::GridSpec::default());
    if p == 1.0 {
        oracle::shannon_full(s, prm, grid).map_err(py_err)
    } else {
        oracle::renyi_full(s, prm, p, grid).map_err(py_err)
    }
}

#[pymodule]
fn oscent(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("DomainError", py.get_type::<DomainError>())?;
    m.add("DivergenceError", py.get_type::<DivergenceError>())?;
    m.add("GrowthError", py.get_type::<GrowthError>())?;
    m.add("AccuracyError", py.get_type::<AccuracyError>())?;
    m.add_class::<AngularResult>()?;
    m.add_class::<LaguerreNorm>()?;
    m.add_class::<AsymptoticValue>()?;
    m.add_class::<EntropyDecomposition>()?;
    m.add_class::<UncertaintyReport>()?;
    m.add_function(wrap_pyfunction!(renyi_angular, m)?)?;
    m.add_function(wrap_pyfunction!(shannon_angular, m)?)?;
    m.add_function(wrap_pyfunction!(laguerre_norm, m)?)?;
    m.add_function(wrap_pyfunction!(closed_n1l, m)?)?;
    m.add_function(wrap_pyfunction!(renyi_radial, m)?)?;
    m.add_function(wrap_pyfunction!(shannon_radial, m)?)?;
    m.add_function(wrap_pyfunction!(renyi_radial_asymptotic, m)?)?;
    m.add_function(wrap_pyfunction!(shannon_radial_asymptotic, m)?)?;
    m.add_function(wrap_pyfunction!(cosine_constant, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_constant, m)?)?;
    m.add_function(wrap_pyfunction!(renyi_total, m)?)?;
    m.add_function(wrap_pyfunction!(shannon_total, m)?)?;
    m.add_function(wrap_pyfunction!(tsallis_from_renyi, m)?)?;
    m.add_function(wrap_pyfunction!(disequilibrium, m)?)?;
    m.add_function(wrap_pyfunction!(uncertainty_sum, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_entropy, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
