//! Log-log fits of measured cost against an envelope.

use super::envelope::Envelope;
use crate::error::{Error, Result};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ExponentFit {
    /// Slope of `ln cost` against `ln envelope`.
    pub slope: f64,
    /// `exp(intercept)`: the multiplicative constant of the fit.
    pub constant: f64,
    /// `ln cost - (slope ln envelope + intercept)` per point.
    pub residuals: Vec<f64>,
    /// `cost / envelope` per point.
    pub ratios: Vec<f64>,
}

/// Least squares of `ln y` on `ln x`.
pub fn loglog_fit(xs: &[f64], ys: &[f64]) -> Result<ExponentFit> {
    if xs.len() != ys.len() {
        return Err(Error::contract("fit needs equally many x and y values"));
    }
    if xs.len() < 4 {
        return Err(Error::Refused(format!("fit needs at least 4 points, got {}", xs.len())));
    }
    if xs.iter().chain(ys).any(|v| !(v.is_finite() && *v > 0.0)) {
        return Err(Error::Refused("fit needs positive finite values".into()));
    }
    let lx: Vec<f64> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    let k = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / k;
    let my = ly.iter().sum::<f64>() / k;
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx <= 1e-12 * k {
        return Err(Error::Refused("series does not vary in size".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    Ok(ExponentFit {
        slope,
        constant: intercept.exp(),
        residuals: lx.iter().zip(&ly).map(|(x, y)| y - (slope * x + intercept)).collect(),
        ratios: xs.iter().zip(ys).map(|(x, y)| y / x).collect(),
    })
}

/// Fits `(m, n, costJ)` triples against the two-sided envelope of `model`.
pub fn exponent_fit(series: &[(f64, f64, f64)], model: &Envelope) -> Result<ExponentFit> {
    let env = series
        .iter()
        .map(|&(m, n, _)| model.graph_value(m, n))
        .collect::<Result<Vec<f64>>>()?;
    let cost: Vec<f64> = series.iter().map(|s| s.2).collect();
    loglog_fit(&env, &cost)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(scale: f64) -> (Envelope, Vec<(f64, f64, f64)>) {
        let env = Envelope::new(vec![2, 2], 0.0).unwrap();
        let s = [16.0, 128.0, 432.0, 1024.0]
            .iter()
            .map(|&m| (m, m / 2.0, scale * env.graph_value(m, m / 2.0).unwrap()))
            .collect();
        (env, s)
    }

    #[test]
    fn exact_envelope_fits_slope_one() {
        let (env, s) = series(1.0);
        let f = exponent_fit(&s, &env).unwrap();
        assert!((f.slope - 1.0).abs() < 1e-12 && (f.constant - 1.0).abs() < 1e-9);
        assert!(f.residuals.iter().all(|r| r.abs() < 1e-9));
        let (env, s) = series(2.0);
        let f = exponent_fit(&s, &env).unwrap();
        assert!((f.slope - 1.0).abs() < 1e-12 && (f.constant - 2.0).abs() < 1e-9);
    }

    #[test]
    fn degenerate_series_refused() {
        let env = Envelope::new(vec![2, 2], 0.0).unwrap();
        let flat = vec![(10.0, 10.0, 5.0); 5];
        assert!(matches!(exponent_fit(&flat, &env), Err(Error::Refused(_))));
        assert!(matches!(exponent_fit(&flat[..2], &env), Err(Error::Refused(_))));
    }
}
