use crate::error::{Error, Result};
use num_complex::Complex64;

/// Taylor coefficients c_1..c_order of exp(-k1 x - k2 x^2) about 0.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorCoeffs {
    /// `coeffs[i - 1]` is c_i.
    pub coeffs: Vec<f64>,
    pub k1: f64,
    pub k2: f64,
}

impl TaylorCoeffs {
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// sum_{i=0}^{order} c_i x^i with c_0 = 1.
    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        1.0 + acc * x
    }
}

pub fn taylor_exp_quad(k1: f64, k2: f64, order: usize) -> Result<TaylorCoeffs> {
    if order < 1 {
        return Err(Error::domain("taylor_exp_quad", "order must be at least 1"));
    }
    if !(k1 >= 0.0 && k2 >= 0.0) {
        return Err(Error::domain("taylor_exp_quad", format!("k1 = {k1}, k2 = {k2} must be nonnegative")));
    }
    let coeffs = recurrence(k1, k2, order);
    Ok(TaylorCoeffs { coeffs, k1, k2 })
}

/// Same recurrence with complex k1, k2, used on the imaginary axis.
pub fn taylor_exp_quad_complex(k1: Complex64, k2: Complex64, order: usize) -> Vec<Complex64> {
    recurrence(k1, k2, order)
}

fn recurrence<T>(k1: T, k2: T, order: usize) -> Vec<T>
where
    T: Copy + std::ops::Mul<Output = T> + std::ops::Sub<Output = T> + std::ops::Neg<Output = T> + std::ops::Div<f64, Output = T> + std::ops::Mul<f64, Output = T> + From<f64>,
{
    // i c_i = -k1 c_{i-1} - 2 k2 c_{i-2}, c_0 = 1, c_{-1} = 0
    let mut c = Vec::with_capacity(order);
    let mut prev2 = T::from(0.0);
    let mut prev1 = T::from(1.0);
    for i in 1..=order {
        let ci = (-(k1 * prev1) - k2 * prev2 * 2.0) / i as f64;
        c.push(ci);
        prev2 = prev1;
        prev1 = ci;
    }
    c
}
