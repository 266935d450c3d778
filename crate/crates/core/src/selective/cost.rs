//! Per-vertex access cost model: index lookup vs. linear scan.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CostModelParams {
    /// Per-operation cost of a TGER lookup.
    pub c: f64,
    /// Per-edge cost of a T-CSR scan.
    pub c_prime: f64,
    /// Selectivity at or below which the index is used.
    pub theta_sel: f64,
}

impl Default for CostModelParams {
    fn default() -> Self {
        Self {
            c: 1.0,
            c_prime: 1.0,
            theta_sel: 0.2,
        }
    }
}

impl CostModelParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.c > 0.0 && self.c_prime > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "cost constants must be positive (c = {}, c' = {})",
                self.c, self.c_prime
            )));
        }
        if !(self.theta_sel > 0.0 && self.theta_sel < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "theta_sel must lie in (0, 1), got {}",
                self.theta_sel
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AccessMethod {
    Tger,
    Scan,
}

/// Outcome of the per-vertex access decision. Estimates are absent for
/// unindexed vertices.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AccessDecision {
    pub method: AccessMethod,
    pub k_hat: Option<f64>,
    pub beta_hat: Option<f64>,
}

impl AccessDecision {
    pub fn unindexed() -> Self {
        Self {
            method: AccessMethod::Scan,
            k_hat: None,
            beta_hat: None,
        }
    }

    /// Index iff the estimated selectivity is at most `theta_sel`.
    pub fn from_estimate(k_hat: f64, deg: usize, theta_sel: f64) -> Self {
        let beta = if deg == 0 { 0.0 } else { k_hat / deg as f64 };
        Self {
            method: if beta <= theta_sel {
                AccessMethod::Tger
            } else {
                AccessMethod::Scan
            },
            k_hat: Some(k_hat),
            beta_hat: Some(beta),
        }
    }
}

/// `c * (log2(deg) + k)`.
pub fn cost_tger(deg: usize, k: f64, c: f64) -> Result<f64> {
    if deg == 0 {
        return Err(Error::Domain("TGER cost is undefined for degree 0".into()));
    }
    Ok(c * ((deg as f64).log2() + k))
}

/// `c' * deg`.
pub fn cost_scan(deg: usize, c_prime: f64) -> f64 {
    c_prime * deg as f64
}

/// One timed (vertex, window) pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimingSample {
    pub deg: usize,
    pub k: usize,
    pub tger_time: f64,
    pub scan_time: f64,
}

/// Least-squares fit through the origin of `tger_time ~ c * (log2 deg + k)`
/// and `scan_time ~ c' * deg`. `theta_sel` keeps its default.
pub fn fit_constants(samples: &[TimingSample]) -> Result<CostModelParams> {
    if samples.is_empty() {
        return Err(Error::Calibration("empty timing sample".into()));
    }
    let (mut xt, mut xx, mut dt, mut dd) = (0.0, 0.0, 0.0, 0.0);
    for s in samples {
        if s.deg == 0 {
            return Err(Error::Calibration("sampled vertex has degree 0".into()));
        }
        let x = (s.deg as f64).log2() + s.k as f64;
        xt += x * s.tger_time;
        xx += x * x;
        dt += s.deg as f64 * s.scan_time;
        dd += (s.deg * s.deg) as f64;
    }
    if xx == 0.0 {
        return Err(Error::Calibration(
            "every sample has log2(deg) + k = 0; c is unidentifiable".into(),
        ));
    }
    Ok(CostModelParams {
        c: xt / xx,
        c_prime: dt / dd,
        ..CostModelParams::default()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tger_cost_values() {
        assert_eq!(cost_tger(1, 0.0, 1.0).unwrap(), 0.0);
        assert_eq!(cost_tger(1024, 10.0, 1.0).unwrap(), 20.0);
        assert_eq!(cost_tger(4096, 100.0, 2.0).unwrap(), 224.0);
        assert!(matches!(cost_tger(0, 1.0, 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn scan_cost_values() {
        assert_eq!(cost_scan(0, 3.0), 0.0);
        assert_eq!(cost_scan(1000, 1.0), 1000.0);
        assert!((cost_scan(4096, 0.05) - 204.8).abs() < 1e-9);
    }

    #[test]
    fn decision_rule() {
        assert_eq!(AccessDecision::from_estimate(20.0, 100, 0.3).method, AccessMethod::Tger);
        assert_eq!(AccessDecision::from_estimate(100.0, 100, 0.2).method, AccessMethod::Scan);
        assert_eq!(AccessDecision::from_estimate(20.0, 100, 0.2).method, AccessMethod::Tger);
        assert_eq!(AccessDecision::unindexed().method, AccessMethod::Scan);
    }

    #[test]
    fn params_validation() {
        assert!(CostModelParams::default().validate().is_ok());
        let bad = CostModelParams {
            theta_sel: 1.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn calibration_round_trip() {
        let samples: Vec<_> = [(2048usize, 3usize), (4096, 100), (10_000, 7), (3000, 1500)]
            .into_iter()
            .map(|(deg, k)| TimingSample {
                deg,
                k,
                tger_time: 3.0 * ((deg as f64).log2() + k as f64),
                scan_time: 0.5 * deg as f64,
            })
            .collect();
        let p = fit_constants(&samples).unwrap();
        assert!((p.c - 3.0).abs() < 0.03);
        assert!((p.c_prime - 0.5).abs() < 0.005);
        assert_eq!(p.theta_sel, 0.2);
    }

    #[test]
    fn calibration_single_pair_and_empty() {
        let s = TimingSample {
            deg: 1024,
            k: 6,
            tger_time: 32.0,
            scan_time: 256.0,
        };
        let p = fit_constants(&[s]).unwrap();
        assert!((p.c - 2.0).abs() < 1e-12);
        assert!((p.c_prime - 0.25).abs() < 1e-12);
        assert!(matches!(fit_constants(&[]), Err(Error::Calibration(_))));
    }
}
