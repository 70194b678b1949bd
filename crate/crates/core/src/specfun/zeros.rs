//! Zeros of orthogonal polynomials as eigenvalues of their Jacobi matrices,
//! located by Sturm-sequence bisection.

/// Number of eigenvalues of the symmetric tridiagonal matrix below `x`.
fn sturm_count(diag: &[f64], off_sq: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for (i, &d) in diag.iter().enumerate() {
        let coupling = if i == 0 { 0.0 } else { off_sq[i - 1] / q };
        q = d - x - coupling;
        if q == 0.0 {
            q = -f64::EPSILON * (d.abs() + x.abs()).max(f64::MIN_POSITIVE);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Ascending eigenvalues of the symmetric tridiagonal matrix with the given
/// diagonal and off-diagonal (`off.len() == diag.len() - 1`).
pub fn tridiagonal_eigenvalues(diag: &[f64], off: &[f64]) -> Vec<f64> {
    let n = diag.len();
    if n == 0 {
        return Vec::new();
    }
    let off_sq: Vec<f64> = off.iter().map(|e| e * e).collect();
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for i in 0..n {
        let r = if i > 0 { off[i - 1].abs() } else { 0.0 } + if i + 1 < n { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    let pad = 1e-12 * (lo.abs() + hi.abs()) + f64::MIN_POSITIVE;
    lo -= pad;
    hi += pad;
    (0..n)
        .map(|k| {
            let (mut a, mut b) = (lo, hi);
            loop {
                let mid = 0.5 * (a + b);
                if mid <= a || mid >= b {
                    break mid;
                }
                if sturm_count(diag, &off_sq, mid) > k {
                    b = mid;
                } else {
                    a = mid;
                }
            }
        })
        .collect()
}

/// Zeros of L_n^{(α)} in ascending order.
pub fn laguerre_roots(n: u32, alpha: f64) -> Vec<f64> {
    let diag: Vec<f64> = (0..n).map(|k| 2.0 * k as f64 + alpha + 1.0).collect();
    let off: Vec<f64> = (1..n)
        .map(|k| (k as f64 * (k as f64 + alpha)).sqrt())
        .collect();
    tridiagonal_eigenvalues(&diag, &off)
}

/// Zeros of C_n^{(λ)} in ascending order.
pub fn gegenbauer_roots(n: u32, lam: f64) -> Vec<f64> {
    let diag = vec![0.0; n as usize];
    let off: Vec<f64> = (1..n)
        .map(|k| {
            let k = k as f64;
            (k * (k + 2.0 * lam - 1.0) / (4.0 * (k + lam) * (k + lam - 1.0))).sqrt()
        })
        .collect();
    let mut roots = tridiagonal_eigenvalues(&diag, &off);
    // symmetric spectrum: enforce exact antisymmetry
    let len = roots.len();
    for i in 0..len / 2 {
        let r = 0.5 * (roots[len - 1 - i] - roots[i]);
        roots[i] = -r;
        roots[len - 1 - i] = r;
    }
    if len % 2 == 1 {
        roots[len / 2] = 0.0;
    }
    roots
}
