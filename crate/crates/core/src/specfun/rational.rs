//! Exact rational arithmetic helpers and polynomials with rational coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Rising factorial x(x+1)…(x+n−1), exactly.
pub fn pochhammer(x: &BigRational, n: u32) -> BigRational {
    let mut acc = BigRational::one();
    let mut term = x.clone();
    for _ in 0..n {
        if term.is_zero() {
            return BigRational::zero();
        }
        acc *= &term;
        term += BigRational::one();
    }
    acc
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Exact conversion of a finite double into a rational.
pub fn from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite value")
}

fn bigint_ln_abs(v: &BigInt) -> f64 {
    let bits = v.bits();
    if bits <= 1000 {
        return v.abs().to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 64;
    let top: BigInt = v.abs() >> shift;
    top.to_f64().expect("64-bit").ln() + shift as f64 * std::f64::consts::LN_2
}

/// ln|q| without overflow, for arbitrarily large numerators and denominators.
pub fn ln_abs(q: &BigRational) -> f64 {
    if q.is_zero() {
        return f64::NEG_INFINITY;
    }
    bigint_ln_abs(q.numer()) - bigint_ln_abs(q.denom())
}

/// x · 2^k without intermediate overflow.
fn ldexp(mut x: f64, mut k: i64) -> f64 {
    while k > 1000 {
        x *= 2f64.powi(1000);
        k -= 1000;
    }
    while k < -1000 {
        x *= 2f64.powi(-1000);
        k += 1000;
    }
    x * 2f64.powi(k as i32)
}

/// Double approximation of an exact rational (relative error below one ulp);
/// saturates to ±∞ or 0 outside the double range.
pub fn to_f64(q: &BigRational) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    let nb = q.numer().bits() as i64;
    let db = q.denom().bits() as i64;
    // scale so the integer quotient carries about 64 significant bits
    let shift = 64 - (nb - db);
    let (num, den) = if shift >= 0 {
        (q.numer().abs() << shift as u64, q.denom().clone())
    } else {
        (q.numer().abs(), q.denom() << (-shift) as u64)
    };
    let mantissa = num.div_floor(&den).to_f64().expect("64-bit quotient");
    let value = ldexp(mantissa, -shift);
    if q.is_negative() {
        -value
    } else {
        value
    }
}

/// Polynomial with exact rational coefficients in ascending degree order.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalPoly {
    #[serde(with = "rational_vec")]
    coeffs: Vec<BigRational>,
}

impl fmt::Debug for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "RationalPoly[{}]", parts.join(", "))
    }
}

impl RationalPoly {
    /// Builds a polynomial, trimming trailing zeros (the zero polynomial keeps one coefficient).
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigRational::zero());
        }
        RationalPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    /// Product by direct convolution.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// `self^q` by repeated convolution.
    pub fn pow_convolution(&self, q: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..q {
            acc = acc.mul(self);
        }
        acc
    }

    /// `self^q` using integer arithmetic on a common denominator (fast for high degree).
    pub fn pow_scaled(&self, q: u32) -> Self {
        let denom = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&denom / c.denom()))
            .collect();
        let mut acc = vec![BigInt::one()];
        let mut base = ints;
        let mut exp = q;
        // binary exponentiation on integer polynomials
        while exp > 0 {
            if exp & 1 == 1 {
                acc = int_convolve(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = int_convolve(&base, &base);
            }
        }
        let scale = num_traits::pow::pow(denom, q as usize);
        Self::new(
            acc.into_iter()
                .map(|c| BigRational::new(c, scale.clone()))
                .collect(),
        )
    }

    /// Exact evaluation at a rational point (Horner).
    pub fn eval_exact(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Floating evaluation: exact rational evaluation at the (exactly converted) point.
    pub fn eval(&self, x: f64) -> f64 {
        to_f64(&self.eval_exact(&from_f64(x)))
    }
}

fn int_convolve(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

mod rational_vec {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = v.iter().map(|c| c.to_string()).collect();
        strings.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        strings
            .iter()
            .map(|s| s.parse::<BigRational>().map_err(serde::de::Error::custom))
            .collect()
    }
}
