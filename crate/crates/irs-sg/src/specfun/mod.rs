//! Special functions and numerical machinery.

mod gamma;
mod gil_pelaez;
mod hyper;
mod pcf;
mod quad;
mod taylor;

pub use gamma::{gamma, ln_gamma};
pub use gil_pelaez::{gil_pelaez_ccdf, gil_pelaez_raw};
pub use hyper::gauss_2f1;
pub use pcf::{gamma_square_lt_complex, ln_gamma_square_lt, ln_parabolic_cylinder_d, parabolic_cylinder_d};
pub use quad::{
    compensated_sum, gauss_legendre, gauss_legendre_on, gk21, integrate_adaptive, integrate_semiinf,
    integrate_semiinf_detail, QuadResult, QuadValue, QuadratureSpec,
};
pub use taylor::{taylor_exp_quad, taylor_exp_quad_complex, TaylorCoeffs};
