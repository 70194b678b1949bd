//! Bessel functions of the first kind for real order α ≥ 0.

use std::f64::consts::PI;

use super::ddouble::DoubleDouble;
use super::gamma::ln_gamma;

/// Above this argument the Hankel expansion plus upward recurrence is used.
const SERIES_LIMIT: f64 = 30.0;

/// J_α(x) for α ≥ 0, x ≥ 0.
pub fn bessel_j(alpha: f64, x: f64) -> f64 {
    debug_assert!(alpha >= 0.0 && x >= 0.0);
    if x == 0.0 {
        return if alpha == 0.0 { 1.0 } else { 0.0 };
    }
    if x <= SERIES_LIMIT || alpha > 0.5 * x {
        return series(alpha, x);
    }
    let base = alpha.fract();
    let steps = alpha.floor() as u32;
    let j0 = hankel(base, x);
    if steps == 0 {
        return j0;
    }
    let mut prev = j0;
    let mut cur = hankel(base + 1.0, x);
    for k in 1..steps {
        let nu = base + k as f64;
        let next = 2.0 * nu / x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Power series (x/2)^α Σ (−x²/4)^k / (k! Γ(k+α+1)), accumulated in double-double.
fn series(alpha: f64, x: f64) -> f64 {
    let lead = (alpha * (0.5 * x).ln() - ln_gamma(alpha + 1.0)).exp();
    let q = -0.25 * x * x;
    let mut term = DoubleDouble::ONE;
    let mut sum = DoubleDouble::ONE;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term = term * q / (k * (k + alpha));
        sum = sum + term;
        if term.hi.abs() < 1e-34 * sum.hi.abs().max(1e-300) && k > 0.5 * x {
            break;
        }
        if k > 500.0 {
            break;
        }
    }
    lead * sum.to_f64()
}

/// Hankel asymptotic expansion, used for x > 30 and small order.
fn hankel(nu: f64, x: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..60 {
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) / (k as f64 * 8.0 * x);
        if term.abs() >= last {
            break;
        }
        last = term.abs();
        // a_k / x^k enters P (even k) or Q (odd k) with alternating signs
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if term.abs() < 1e-18 {
            break;
        }
    }
    let phase = (0.5 * nu + 0.25) * PI;
    let (sx, cx) = x.sin_cos();
    let (sp, cp) = phase.sin_cos();
    let cos_chi = cx * cp + sx * sp;
    let sin_chi = sx * cp - cx * sp;
    (2.0 / (PI * x)).sqrt() * (p * cos_chi - q * sin_chi)
}

/// First `count` positive zeros of J_α, from McMahon estimates refined by bisection.
pub fn bessel_zeros(alpha: f64, count: usize) -> Vec<f64> {
    let mut zeros: Vec<f64> = Vec::with_capacity(count);
    let mu = 4.0 * alpha * alpha;
    let mut k = 1usize;
    while zeros.len() < count {
        let beta = (k as f64 + 0.5 * alpha - 0.25) * PI;
        let guess = beta - (mu - 1.0) / (8.0 * beta);
        let floor = zeros.last().copied().unwrap_or(0.0) + 1e-9;
        let mut lo = (guess - 1.0).max(floor);
        let mut hi = guess + 1.0;
        let mut flo = bessel_j(alpha, lo);
        let fhi = bessel_j(alpha, hi);
        if flo * fhi > 0.0 {
            // estimate too rough (small k, larger order): scan forward for a sign change
            let mut a = floor;
            let mut fa = bessel_j(alpha, a);
            loop {
                let b = a + 0.25;
                let fb = bessel_j(alpha, b);
                if fa * fb <= 0.0 {
                    lo = a;
                    hi = b;
                    flo = fa;
                    break;
                }
                a = b;
                fa = fb;
            }
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let fm = bessel_j(alpha, mid);
            if fm * flo > 0.0 {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        let root = 0.5 * (lo + hi);
        if zeros.last().is_none_or(|&z| root > z + 1e-6) {
            zeros.push(root);
        }
        k += 1;
    }
    zeros
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn half_integer_orders_have_closed_forms() {
        for i in 0..400 {
            let x = 0.1 + i as f64 * 0.25;
            let s = (2.0 / (PI * x)).sqrt();
            let j_half = s * x.sin();
            let j_three_halves = s * (x.sin() / x - x.cos());
            if x.sin().abs() > 1e-2 {
                assert!(rel(bessel_j(0.5, x), j_half) < 1e-12, "x = {x}");
            }
            if j_three_halves.abs() > 1e-2 * s {
                assert!(rel(bessel_j(1.5, x), j_three_halves) < 1e-11, "x = {x}");
            }
        }
    }

    #[test]
    fn integer_order_reference_values() {
        assert!(rel(bessel_j(0.0, 1.0), 0.765_197_686_557_966_6) < 1e-14);
        assert!(rel(bessel_j(1.0, 10.0), 0.043_472_746_168_861_44) < 1e-11);
        assert!(rel(bessel_j(0.0, 50.0), 0.055_812_327_669_251_86) < 1e-11);
        assert_eq!(bessel_j(2.0, 0.0), 0.0);
        assert_eq!(bessel_j(0.0, 0.0), 1.0);
    }

    #[test]
    fn first_zero_of_j0() {
        let z = bessel_zeros(0.0, 3);
        assert!((z[0] - 2.404_825_557_695_773).abs() < 1e-12);
        assert!(bessel_j(0.0, 2.404_825_6).abs() < 1e-7);
        // zeros of J_{1/2} are multiples of π
        let z = bessel_zeros(0.5, 50);
        for (k, v) in z.iter().enumerate() {
            assert!((v - (k + 1) as f64 * PI).abs() < 1e-10);
        }
    }

    #[test]
    fn large_argument() {
        let x = 1e4;
        let expected = (2.0 / (PI * x)).sqrt() * x.sin();
        assert!(rel(bessel_j(0.5, x), expected) < 1e-10);
    }
}
