use crate::error::{domain, Result};

/// Normalized Gegenbauer values `P_k^α(t) / P_k^α(1)` with `α = (n−1)/2`,
/// yielded for k = 0, 1, 2, ….
///
/// The ratio obeys its own three-term recurrence
///
/// `r_k = [2(k+α−1) t r_{k−1} − (k−1) r_{k−2}] / (k+2α−1)`, `r_0 = 1`, `r_1 = t`,
///
/// obtained from the ultraspherical recurrence after dividing by
/// `C_k^α(1) = binom(k+2α−1, k)`. At α = 0 (the circle) it reduces to the
/// Chebyshev recurrence, so `r_k = cos(kθ)` for `t = cos θ`.
#[derive(Debug, Clone)]
pub struct GegenbauerRatios {
    alpha: f64,
    t: f64,
    k: usize,
    prev: f64,
    cur: f64,
}

impl Iterator for GegenbauerRatios {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let out = match self.k {
            0 => 1.0,
            1 => self.t,
            _ => {
                let k = self.k as f64;
                let next = (2.0 * (k + self.alpha - 1.0) * self.t * self.cur - (k - 1.0) * self.prev)
                    / (k + 2.0 * self.alpha - 1.0);
                self.prev = self.cur;
                next
            }
        };
        if self.k == 1 {
            self.prev = 1.0;
        }
        self.cur = out;
        self.k += 1;
        Some(out)
    }
}

/// Iterator over normalized Gegenbauer values for sphere dimension `n` at `t`.
pub fn gegenbauer_ratios(n: usize, t: f64) -> Result<GegenbauerRatios> {
    if n < 1 {
        return Err(domain("sphere dimension n must be >= 1"));
    }
    if !(t.abs() <= 1.0) {
        return Err(domain(format!("gegenbauer argument must lie in [-1, 1], got {t}")));
    }
    Ok(GegenbauerRatios {
        alpha: (n as f64 - 1.0) / 2.0,
        t,
        k: 0,
        prev: 0.0,
        cur: 0.0,
    })
}

/// `P_k^{(n−1)/2}(t) / P_k^{(n−1)/2}(1)`; for `n = 1` this is `cos(kθ)` with `t = cos θ`.
pub fn gegenbauer_ratio(k: usize, n: usize, t: f64) -> Result<f64> {
    Ok(gegenbauer_ratios(n, t)?.nth(k).expect("iterator is infinite"))
}
