//! Legendre polynomials built symbolically from the Rodrigues formula
//! `P_m(x) = 1/(2^m m!) d^m/dx^m (x²−1)^m`. Used as an independent
//! reference for the Gegenbauer recurrence at n = 2.

use crate::error::{domain, Error, Result};

pub const MAX_RODRIGUES_DEGREE: usize = 8;

/// Dense polynomial, coefficient `i` multiplies `x^i`.
#[derive(Debug, Clone, PartialEq)]
pub struct LegendrePoly {
    pub coeffs: Vec<f64>,
}

impl LegendrePoly {
    /// Expand `(x²−1)^m`, differentiate `m` times, divide by `2^m m!`.
    pub fn rodrigues(m: usize) -> Result<Self> {
        if m > MAX_RODRIGUES_DEGREE {
            return Err(Error::Unsupported(format!(
                "Rodrigues reference limited to degree <= {MAX_RODRIGUES_DEGREE}, got {m}"
            )));
        }
        // (x²−1)^m = Σ_j binom(m,j) (−1)^{m−j} x^{2j}
        let mut expanded = vec![0.0; 2 * m + 1];
        let mut binom = 1.0;
        for j in 0..=m {
            let sign = if (m - j).is_multiple_of(2) { 1.0 } else { -1.0 };
            expanded[2 * j] = sign * binom;
            binom = binom * (m - j) as f64 / (j + 1) as f64;
        }
        let mut poly = LegendrePoly { coeffs: expanded };
        for _ in 0..m {
            poly = poly.derivative();
        }
        let scale = 2f64.powi(m as i32) * (1..=m).map(|i| i as f64).product::<f64>();
        poly.coeffs.iter_mut().for_each(|c| *c /= scale);
        Ok(poly)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return LegendrePoly { coeffs: vec![0.0] };
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * i as f64)
            .collect();
        LegendrePoly { coeffs }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }
}

/// P_m(x) from the expanded Rodrigues polynomial.
pub fn legendre_rodrigues_oracle(m: usize, x: f64) -> Result<f64> {
    if !(x.abs() <= 1.0) {
        return Err(domain(format!("x must lie in [-1, 1], got {x}")));
    }
    Ok(LegendrePoly::rodrigues(m)?.eval(x))
}

/// `(1−x²)P_m″(x) − 2xP_m′(x) + m(m+1)P_m(x)` on the exact expanded polynomial.
pub fn legendre_ode_residual(m: usize, x: f64) -> Result<f64> {
    if !(x.abs() <= 1.0) {
        return Err(domain(format!("x must lie in [-1, 1], got {x}")));
    }
    let p = LegendrePoly::rodrigues(m)?;
    let dp = p.derivative();
    let ddp = dp.derivative();
    let mm = (m * (m + 1)) as f64;
    Ok((1.0 - x * x) * ddp.eval(x) - 2.0 * x * dp.eval(x) + mm * p.eval(x))
}
