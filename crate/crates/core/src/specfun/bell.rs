//! Partial exponential Bell polynomials and polynomial powers.

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::rational::{binomial, factorial, RationalPoly};
use crate::error::{Error, Result};

/// Table of B_{N,j}(x₁, x₂, …) for N ≤ max_n, j ≤ max_k, from the recurrence
/// B_{N,j} = Σ_{i=1}^{N−j+1} C(N−1, i−1) x_i B_{N−i, j−1}.
fn bell_table<T, F>(max_n: usize, max_k: usize, args: &[T], zero: T, one: T, binom: F) -> Vec<Vec<T>>
where
    T: Clone + std::ops::Add<Output = T> + for<'a> std::ops::Mul<&'a T, Output = T>,
    F: Fn(usize, usize) -> T,
{
    let mut table = vec![vec![zero.clone(); max_k + 1]; max_n + 1];
    table[0][0] = one;
    for n in 1..=max_n {
        for k in 1..=max_k.min(n) {
            let mut acc = zero.clone();
            for i in 1..=(n - k + 1) {
                let Some(x) = args.get(i - 1) else { break };
                let prev = &table[n - i][k - 1];
                acc = acc + binom(n - 1, i - 1) * x * prev;
            }
            table[n][k] = acc;
        }
    }
    table
}

fn check_bell_indices(n: i64, k: i64) -> Result<(usize, usize)> {
    if k < 0 || n < 0 || k > n {
        return Err(Error::domain(format!("Bell polynomial needs 0 ≤ k ≤ n, got n = {n}, k = {k}")));
    }
    Ok((n as usize, k as usize))
}

/// Partial exponential Bell polynomial B_{n,k}(x₁, …, x_{n−k+1}).
pub fn bell_partial(n: i64, k: i64, args: &[f64]) -> Result<f64> {
    let (n, k) = check_bell_indices(n, k)?;
    let table = bell_table(n, k, args, 0.0, 1.0, |a, b| {
        binomial(a as u32, b as u32).to_f64().unwrap_or(f64::INFINITY)
    });
    Ok(table[n][k])
}

/// Exact B_{n,k} over rationals.
pub fn bell_partial_exact(n: i64, k: i64, args: &[BigRational]) -> Result<BigRational> {
    let (n, k) = check_bell_indices(n, k)?;
    let table = bell_table(n, k, args, BigRational::zero(), BigRational::one(), |a, b| {
        BigRational::from_integer(binomial(a as u32, b as u32))
    });
    Ok(table[n][k].clone())
}

/// Coefficients of `poly^q` from the Bell-polynomial expansion
/// A_{k,q} = q!/(k+q)! · B_{k+q,q}(c₀, 2!c₁, …, (k+1)!c_k).
pub fn poly_power_bell(poly: &RationalPoly, q: u32) -> RationalPoly {
    if q == 0 {
        return RationalPoly::one();
    }
    let q = q as usize;
    let top = poly.degree() * q;
    let args: Vec<BigRational> = (0..=top)
        .map(|i| poly.coeff(i) * BigRational::from_integer(factorial(i as u32 + 1)))
        .collect();
    let table = bell_table(top + q, q, &args, BigRational::zero(), BigRational::one(), |a, b| {
        BigRational::from_integer(binomial(a as u32, b as u32))
    });
    let q_fact = BigRational::from_integer(factorial(q as u32));
    let coeffs = (0..=top)
        .map(|k| &table[k + q][q] * &q_fact / BigRational::from_integer(factorial((k + q) as u32)))
        .collect();
    RationalPoly::new(coeffs)
}

/// Exact `poly^q`, computed both through Bell polynomials and by repeated
/// convolution; the two routes must coincide exactly.
pub fn poly_power(poly: &RationalPoly, q: u32) -> Result<RationalPoly> {
    if q == 0 {
        return Err(Error::domain("poly_power needs q ≥ 1"));
    }
    let bell = poly_power_bell(poly, q);
    let conv = poly.pow_convolution(q);
    assert_eq!(bell, conv, "Bell and convolution powers disagree");
    Ok(bell)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::rational::{int, ratio};

    #[test]
    fn bell_identities() {
        let xs = [1.5, -2.0, 0.25, 3.0, 7.0];
        assert_eq!(bell_partial(5, 1, &xs).unwrap(), 7.0);
        assert_eq!(bell_partial(3, 2, &xs[..2]).unwrap(), 3.0 * 1.5 * -2.0);
        assert!((bell_partial(4, 4, &xs[..1]).unwrap() - 1.5f64.powi(4)).abs() < 1e-15);
        assert_eq!(bell_partial(0, 0, &[]).unwrap(), 1.0);
        assert!(bell_partial(2, 3, &xs).is_err());
        assert!(bell_partial(2, -1, &xs).is_err());
    }

    #[test]
    fn bell_exact_counts_partitions() {
        // With all x_i = 1, B_{n,k} is the Stirling number of the second kind.
        let ones = vec![int(1); 6];
        assert_eq!(bell_partial_exact(6, 3, &ones).unwrap(), int(90));
        assert_eq!(bell_partial_exact(5, 2, &ones).unwrap(), int(15));
    }

    #[test]
    fn binomial_powers() {
        let one_plus_x = RationalPoly::from_i64(&[1, 1]);
        assert_eq!(poly_power(&one_plus_x, 2).unwrap(), RationalPoly::from_i64(&[1, 2, 1]));
        let one_minus_x = RationalPoly::from_i64(&[1, -1]);
        assert_eq!(poly_power(&one_minus_x, 3).unwrap(), RationalPoly::from_i64(&[1, -3, 3, -1]));
        let c = RationalPoly::constant(ratio(-2, 3));
        assert_eq!(poly_power(&c, 4).unwrap(), RationalPoly::constant(ratio(16, 81)));
        assert!(poly_power(&c, 0).is_err());
    }

    #[test]
    fn zero_constant_term() {
        // odd Legendre polynomial: c₀ = 0
        let p3 = RationalPoly::new(vec![int(0), ratio(-3, 2), int(0), ratio(5, 2)]);
        assert_eq!(poly_power_bell(&p3, 4), p3.pow_convolution(4));
    }
}
