//! Jacobi, Gegenbauer and Laguerre polynomials: exact coefficients and
//! extended-precision recurrences.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::ddouble::DoubleDouble;
use super::gamma::ln_gamma;
use super::rational::{binomial, factorial, int, pochhammer, to_f64, RationalPoly};
use crate::error::{Error, Result};

/// A classical polynomial together with the square of its normalization factor:
/// the orthonormal polynomial is `base / sqrt(norm_square)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrthonormalPoly {
    pub base: RationalPoly,
    #[serde(with = "rational_str")]
    pub norm_square: BigRational,
}

impl OrthonormalPoly {
    pub fn eval(&self, x: f64) -> f64 {
        self.base.eval(x) / to_f64(&self.norm_square).sqrt()
    }
}

mod rational_str {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

fn check_jacobi_params(a: &BigRational, b: &BigRational) -> Result<()> {
    let minus_one = -BigRational::one();
    if *a <= minus_one || *b <= minus_one {
        return Err(Error::domain(format!(
            "Jacobi parameters must exceed -1, got a = {a}, b = {b}"
        )));
    }
    Ok(())
}

/// Exact monomial coefficients of the classical Jacobi polynomial P_n^{(a,b)}.
///
/// Uses the expansion in powers of (t−1)/2,
/// P_n = (1/n!) Σ_i C(n,i) (a+i+1)_{n−i} (a+b+n+1)_i ((t−1)/2)^i.
pub fn jacobi_poly(n: u32, a: &BigRational, b: &BigRational) -> Result<RationalPoly> {
    check_jacobi_params(a, b)?;
    let one = BigRational::one();
    let shifted = a + b + int(n as i64) + &one;
    let mut coeffs = vec![BigRational::zero(); n as usize + 1];
    for i in 0..=n {
        let weight = BigRational::from_integer(binomial(n, i))
            * pochhammer(&(a + int(i as i64) + &one), n - i)
            * pochhammer(&shifted, i)
            / BigRational::from_integer(BigInt::from(2).pow(i));
        // ((t−1))^i = Σ_k C(i,k) t^k (−1)^{i−k}
        for k in 0..=i {
            let mut term = &weight * BigRational::from_integer(binomial(i, k));
            if (i - k) % 2 == 1 {
                term = -term;
            }
            coeffs[k as usize] += term;
        }
    }
    let inv_fact = BigRational::new(BigInt::one(), factorial(n));
    Ok(RationalPoly::new(coeffs).scale(&inv_fact))
}

/// Classical Jacobi polynomial with its exact squared norm on [−1, 1] under the
/// weight (1−t)^a (1+t)^b. The norm is rational only for integer parameters, so
/// those are required here.
pub fn orthonormal_jacobi(n: u32, a: i64, b: i64) -> Result<OrthonormalPoly> {
    if a < 0 || b < 0 {
        return Err(Error::domain(format!(
            "orthonormal_jacobi needs integer parameters ≥ 0, got a = {a}, b = {b}"
        )));
    }
    let base = jacobi_poly(n, &int(a), &int(b))?;
    let (a, b) = (a as u32, b as u32);
    // 2^{a+b+1} (n+a)! (n+b)! / (n! (2n+a+b+1) (n+a+b)!)
    let num = BigInt::from(2).pow(a + b + 1) * factorial(n + a) * factorial(n + b);
    let den = factorial(n) * BigInt::from(2 * n + a + b + 1) * factorial(n + a + b);
    Ok(OrthonormalPoly { base, norm_square: BigRational::new(num, den) })
}

/// Jacobi P_n^{(a,b)}(t) by the three-term recurrence in double-double.
pub fn jacobi_eval(n: u32, a: f64, b: f64, t: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let x = DoubleDouble::from_f64(t);
    let mut prev = DoubleDouble::ONE;
    let mut cur = DoubleDouble::from_f64(a + 1.0) + (x - DoubleDouble::ONE) * (0.5 * (a + b + 2.0));
    for k in 1..n {
        let k = k as f64;
        let s = 2.0 * k + a + b;
        let c1 = 2.0 * (k + 1.0) * (k + a + b + 1.0) * s;
        let c2 = (s + 1.0) * (a * a - b * b);
        let c3 = (s + 1.0) * (s + 2.0) * s;
        let c4 = 2.0 * (k + a) * (k + b) * (s + 2.0);
        let next = ((x * c3 + c2) * cur - prev * c4) / c1;
        prev = cur;
        cur = next;
    }
    cur.to_f64()
}

/// Gegenbauer C_n^{(λ)}(t) = (2λ)_n / (λ+½)_n · P_n^{(λ−½, λ−½)}(t).
pub fn gegenbauer_eval(n: u32, lam: f64, t: f64) -> f64 {
    let mut prefactor = 1.0;
    for k in 0..n {
        let k = k as f64;
        prefactor *= (2.0 * lam + k) / (lam + 0.5 + k);
    }
    prefactor * jacobi_eval(n, lam - 0.5, lam - 0.5, t)
}

/// Exact coefficients of the generalized Laguerre polynomial L_n^{(α)} for any rational α:
/// L_n^{(α)}(x) = Σ_j (α+j+1)_{n−j} / ((n−j)! j!) (−x)^j.
pub fn laguerre_poly(n: u32, alpha: &BigRational) -> RationalPoly {
    let one = BigRational::one();
    let coeffs = (0..=n)
        .map(|j| {
            let c = pochhammer(&(alpha + int(j as i64) + &one), n - j)
                / BigRational::from_integer(factorial(n - j) * factorial(j));
            if j % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect();
    RationalPoly::new(coeffs)
}

/// ln of the squared Laguerre norm Γ(n+α+1)/n!.
pub(crate) fn laguerre_ln_norm_square(n: u32, alpha: f64) -> f64 {
    ln_gamma(n as f64 + alpha + 1.0) - ln_gamma(n as f64 + 1.0)
}

/// Laguerre L_n^{(α)}(x) by the three-term recurrence in double-double; with
/// `orthonormal` the value is divided by sqrt(Γ(n+α+1)/n!).
pub fn laguerre_eval(n: u32, alpha: f64, x: f64, orthonormal: bool) -> Result<f64> {
    if orthonormal && !(alpha > -1.0) {
        return Err(Error::domain(format!(
            "orthonormal Laguerre polynomials need alpha > -1, got {alpha}"
        )));
    }
    let xd = DoubleDouble::from_f64(x);
    let mut prev = DoubleDouble::ONE;
    let mut cur = DoubleDouble::from_f64(alpha + 1.0) - xd;
    let value = if n == 0 {
        1.0
    } else {
        for k in 1..n {
            let k = k as f64;
            let next = ((DoubleDouble::from_f64(2.0 * k + alpha + 1.0) - xd) * cur
                - prev * (k + alpha))
                / (k + 1.0);
            prev = cur;
            cur = next;
        }
        cur.to_f64()
    };
    if orthonormal {
        Ok(value * (-0.5 * laguerre_ln_norm_square(n, alpha)).exp())
    } else {
        Ok(value)
    }
}

/// Generalized Laguerre polynomial for an arbitrary real parameter, by the explicit
/// finite sum with Pochhammer coefficients (accumulated in double-double).
pub fn laguerre_eval_negparam(n: u32, alpha: f64, x: f64) -> f64 {
    // c_j = (α+j+1)_{n−j} / ((n−j)! j!), built downward from c_n = 1/n!
    let mut coeff = DoubleDouble::ONE;
    for k in 1..=n {
        coeff = coeff / k as f64;
    }
    let mut sum = DoubleDouble::ZERO;
    let minus_x = -x;
    let mut j = n;
    loop {
        let term = coeff * minus_x.powi(j as i32);
        sum = sum + term;
        if j == 0 {
            break;
        }
        coeff = coeff * ((alpha + j as f64) * j as f64) / (n - j + 1) as f64;
        j -= 1;
    }
    sum.to_f64()
}

/// Sign and natural log of |value| of a quantity that may exceed the double range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedLog {
    pub negative: bool,
    pub ln_abs: f64,
}

/// Precomputed orthonormal recurrence for L̂_n^{(α)} at fixed (n, α), returning
/// log-scaled values so that degrees in the thousands neither overflow nor underflow.
#[derive(Debug, Clone)]
pub struct LaguerreTable {
    n: u32,
    alpha: f64,
    diag: Vec<DoubleDouble>,
    back: Vec<DoubleDouble>,
    inv_forward: Vec<DoubleDouble>,
    ln_scale: f64,
}

const RESCALE_THRESHOLD: f64 = 1e200;
const RESCALE_FACTOR: f64 = 1.0 / 1.157_920_892_373_162e77; // 2^-256

impl LaguerreTable {
    pub fn new(n: u32, alpha: f64) -> Result<Self> {
        if !(alpha > -1.0) {
            return Err(Error::domain(format!("alpha must exceed -1, got {alpha}")));
        }
        let count = n as usize + 1;
        let mut diag = Vec::with_capacity(count);
        let mut back = Vec::with_capacity(count);
        let mut inv_forward = Vec::with_capacity(count);
        for k in 0..count {
            let kf = k as f64;
            diag.push(DoubleDouble::from_f64(2.0 * kf + alpha + 1.0));
            // sqrt(k (k+α)) couples L̂_k to L̂_{k−1}
            back.push((DoubleDouble::from_f64(kf) * DoubleDouble::from_f64(kf + alpha)).sqrt());
            let fwd = (DoubleDouble::from_f64(kf + 1.0) * DoubleDouble::from_f64(kf + alpha + 1.0)).sqrt();
            inv_forward.push(DoubleDouble::ONE / fwd);
        }
        Ok(LaguerreTable {
            n,
            alpha,
            diag,
            back,
            inv_forward,
            ln_scale: -0.5 * ln_gamma(alpha + 1.0),
        })
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// L̂_n^{(α)}(x) as sign and log-magnitude.
    pub fn eval_log(&self, x: f64) -> SignedLog {
        let xd = DoubleDouble::from_f64(x);
        let mut prev = DoubleDouble::ZERO;
        let mut cur = DoubleDouble::ONE;
        let mut ln_acc = self.ln_scale;
        for k in 0..self.n as usize {
            let next = ((self.diag[k] - xd) * cur - self.back[k] * prev) * self.inv_forward[k];
            prev = cur;
            cur = next;
            if cur.hi.abs() > RESCALE_THRESHOLD {
                cur = cur.scale(RESCALE_FACTOR);
                prev = prev.scale(RESCALE_FACTOR);
                ln_acc -= RESCALE_FACTOR.ln();
            }
        }
        let v = cur.to_f64();
        SignedLog { negative: v < 0.0, ln_abs: v.abs().ln() + ln_acc }
    }

    /// ln of the weighted square L̂_n(x)² x^α e^{−x}.
    pub fn ln_weighted_square(&self, x: f64) -> f64 {
        let v = self.eval_log(x);
        2.0 * v.ln_abs + self.alpha * x.ln() - x
    }
}
