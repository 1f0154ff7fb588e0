//! Numerical substrate: gamma-family functions and the Meijer G-function.

mod gamma;
mod meijer;

pub use gamma::{
    delta_list, gamma, is_gamma_pole, ln_gamma, ln_gamma_complex, ln_gamma_sign, pochhammer,
};
pub use meijer::{meijer_g, MeijerGSpec, PERTURB_EPS, POLE_EPS};
