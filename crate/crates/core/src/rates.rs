use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Fluorescence rates of the dark (`mu0`) and bright (`mu1`) states and the
/// bright-to-dark decay rate `lambda`. All rates are in ms⁻¹.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateParams {
    mu0: f64,
    mu1: f64,
    lambda: f64,
}

impl RateParams {
    pub fn new(mu0: f64, mu1: f64, lambda: f64) -> Result<Self> {
        if !(mu0.is_finite() && mu1.is_finite() && lambda.is_finite()) {
            return Err(domain("rates must be finite"));
        }
        if mu0 < 0.0 || mu1 < mu0 {
            return Err(domain(format!(
                "rates must satisfy 0 <= mu0 <= mu1 (got mu0={mu0}, mu1={mu1})"
            )));
        }
        if lambda < 0.0 {
            return Err(domain(format!("decay rate must be >= 0 (got {lambda})")));
        }
        Ok(Self { mu0, mu1, lambda })
    }

    pub fn mu0(&self) -> f64 {
        self.mu0
    }

    pub fn mu1(&self) -> f64 {
        self.mu1
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Same emission rates with the decay switched off.
    pub fn without_decay(&self) -> Self {
        Self { lambda: 0.0, ..*self }
    }
}

impl Default for RateParams {
    /// Neutral-atom fluorescence parameters: μ₀ = 3.5, μ₁ = 14, λ = 0.0041 (ms⁻¹).
    fn default() -> Self {
        Self {
            mu0: 3.5,
            mu1: 14.0,
            lambda: 0.0041,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_inverted_rates() {
        assert!(RateParams::new(14.0, 3.5, 0.0).is_err());
        assert!(RateParams::new(-1.0, 3.5, 0.0).is_err());
        assert!(RateParams::new(1.0, 3.5, -0.1).is_err());
        assert!(RateParams::new(1.0, f64::INFINITY, 0.0).is_err());
    }

    #[test]
    fn equal_rates_are_allowed() {
        let r = RateParams::new(5.0, 5.0, 1.0).unwrap();
        assert_eq!(r.mu0(), r.mu1());
    }
}
