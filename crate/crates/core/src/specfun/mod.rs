//! Special-function kernel: Gamma family, exact rational polynomials,
//! orthogonal polynomials, Bessel functions, Bell polynomials and quadrature.

pub mod bell;
pub mod bessel;
pub mod ddouble;
pub mod gamma;
pub mod ortho;
pub mod quad;
pub mod rational;
pub mod zeros;

pub use bell::{bell_partial, bell_partial_exact, poly_power};
pub use bessel::{bessel_j, bessel_zeros};
pub use gamma::{digamma, log_gamma};
pub use ortho::{
    gegenbauer_eval, jacobi_eval, jacobi_poly, laguerre_eval, laguerre_eval_negparam, laguerre_poly,
    orthonormal_jacobi, LaguerreTable, OrthonormalPoly,
};
pub use quad::{gauss_legendre, integrate, integrate_estimate, integrate_panels, Estimate, QuadratureSpec, Tail};
pub use rational::{pochhammer, RationalPoly};
pub use zeros::{gegenbauer_roots, laguerre_roots};
