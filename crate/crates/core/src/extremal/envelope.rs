//! The envelope functions `E`, `F` and `F*` and the identities relating them.

use crate::error::{Error, Result};
use serde::Serialize;

/// Dimension vector and fit slack for an envelope.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Envelope {
    pub d_vec: Vec<u32>,
    pub eps: f64,
}

impl Envelope {
    pub fn new(d_vec: Vec<u32>, eps: f64) -> Result<Self> {
        if d_vec.len() < 2 {
            return Err(Error::invalid("an envelope needs at least two sides"));
        }
        if d_vec.iter().any(|&d| d < 1) {
            return Err(Error::invalid("dimensions must be at least 1"));
        }
        if !(eps >= 0.0 && eps.is_finite()) {
            return Err(Error::invalid("eps must be a finite non-negative number"));
        }
        Ok(Envelope { d_vec, eps })
    }

    /// Graph envelope `(mn)^eps * (m^a1 n^a2 + m + n)` for two sides.
    pub fn graph_value(&self, m: f64, n: f64) -> Result<f64> {
        if self.d_vec.len() != 2 {
            return Err(Error::invalid("graph envelope needs exactly two dimensions"));
        }
        let (a1, a2) = graph_exponents(self.d_vec[0], self.d_vec[1])?;
        Ok((m * n).powf(self.eps) * (m.powf(a1) * n.powf(a2) + m + n))
    }

    /// `F*` with this envelope's dimensions and slack.
    pub fn fstar_value(&self, n: &[f64]) -> Result<f64> {
        fstar_func(&self.d_vec, n, self.eps)
    }
}

fn check_sizes(d: &[u32], n: &[f64]) -> Result<()> {
    if d.len() != n.len() {
        return Err(Error::contract(format!(
            "{} dimensions but {} sizes",
            d.len(),
            n.len()
        )));
    }
    if let Some(x) = n.iter().find(|x| !(x.is_finite() && **x >= 1.0)) {
        return Err(Error::Domain(format!("sizes must be finite and at least 1, got {x}")));
    }
    Ok(())
}

fn check_domain(d: &[u32], n: &[f64]) -> Result<()> {
    if d.len() < 2 {
        return Err(Error::Domain("need at least two sides".into()));
    }
    check_sizes(d, n)?;
    if let Some(i) = d.iter().position(|&di| di < 2) {
        return Err(Error::Domain(format!(
            "d[{i}] = {} puts 1/(d-1) at its pole",
            d[i]
        )));
    }
    Ok(())
}

/// Exponents `alpha_i = 1 - (1/(d_i-1)) / (k - 1 + sum_l 1/(d_l-1))`.
pub fn alphas(d: &[u32]) -> Result<Vec<f64>> {
    if let Some(i) = d.iter().position(|&di| di < 2) {
        return Err(Error::Domain(format!("d[{i}] = {} puts 1/(d-1) at its pole", d[i])));
    }
    Ok(raw_alphas(d))
}

fn raw_alphas(d: &[u32]) -> Vec<f64> {
    let inv: Vec<f64> = d.iter().map(|&di| 1.0 / (di as f64 - 1.0)).collect();
    let s = (d.len() as f64 - 1.0) + inv.iter().sum::<f64>();
    inv.iter().map(|w| 1.0 - w / s).collect()
}

/// `E` over any number of sides; a single side gives 1.
fn e_raw(d: &[u32], n: &[f64]) -> f64 {
    if d.len() == 1 {
        return 1.0;
    }
    // Work in logs so large products do not overflow early.
    raw_alphas(d).iter().zip(n).map(|(a, x)| a * x.ln()).sum::<f64>().exp()
}

/// `E_d(n) = prod n_i^alpha_i`.
pub fn e_func(d: &[u32], n: &[f64]) -> Result<f64> {
    check_domain(d, n)?;
    Ok(e_raw(d, n))
}

fn subsets(k: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u32..(1 << k)).map(move |mask| (0..k).filter(|&i| mask >> i & 1 == 1).collect())
}

fn restrict<T: Copy>(v: &[T], idx: &[usize]) -> Vec<T> {
    idx.iter().map(|&i| v[i]).collect()
}

/// `F^eps_d(n)`: the sum over subsets `I` with `|I| >= 2` of
/// `E_{d_I}(n_I) * prod_{i in I} n_i^eps * prod_{i not in I} n_i`, plus `(sum 1/n_i) prod n_i`.
pub fn f_func(d: &[u32], n: &[f64], eps: f64) -> Result<f64> {
    check_domain(d, n)?;
    let k = d.len();
    let mut total = 0.0;
    for set in subsets(k).filter(|s| s.len() >= 2) {
        let mut term = e_raw(&restrict(d, &set), &restrict(n, &set));
        for i in 0..k {
            term *= if set.contains(&i) { n[i].powf(eps) } else { n[i] };
        }
        total += term;
    }
    let prod: f64 = n.iter().product();
    total += n.iter().map(|x| prod / x).sum::<f64>();
    Ok(total)
}

/// `F*^eps_d(n) = prod n_i^eps * sum over nonempty I of E_{d_I}(n_I) prod_{i not in I} n_i`,
/// with `E` of a single side equal to 1.
pub fn fstar_func(d: &[u32], n: &[f64], eps: f64) -> Result<f64> {
    check_domain(d, n)?;
    let k = d.len();
    let mut total = 0.0;
    for set in subsets(k) {
        let mut term = e_raw(&restrict(d, &set), &restrict(n, &set));
        for i in (0..k).filter(|i| !set.contains(i)) {
            term *= n[i];
        }
        total += term;
    }
    Ok(total * n.iter().map(|x| x.powf(eps)).product::<f64>())
}

/// Exponents of `m` and `n` in the two-sided bound:
/// `((d1 d2 - d2) / (d1 d2 - 1), (d1 d2 - d1) / (d1 d2 - 1))`. Allows one side of dimension 1.
pub fn graph_exponents(d1: u32, d2: u32) -> Result<(f64, f64)> {
    let p = d1 as f64 * d2 as f64;
    if d1 == 0 || d2 == 0 || p == 1.0 {
        return Err(Error::Domain(format!("exponents undefined for d = ({d1}, {d2})")));
    }
    Ok(((p - d2 as f64) / (p - 1.0), (p - d1 as f64) / (p - 1.0)))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ScalingReport {
    /// Largest relative residual of the scaling identity, over the choice of the `r`-scaled side.
    pub residual: f64,
    /// Largest absolute residual of `alpha_i = sum_{j != i} d_j (1 - alpha_j)`.
    pub matrix_residual: f64,
}

/// Checks `r^(sum_{j != i} d_j) E(n_j / r^{d_j} for j != i, n_i / r) = E(n)` for every `i`,
/// together with the linear system satisfied by the exponents.
pub fn check_scaling(d: &[u32], r: f64, n: &[f64]) -> Result<ScalingReport> {
    check_domain(d, n)?;
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::Domain(format!("r must be positive, got {r}")));
    }
    let k = d.len();
    let al = raw_alphas(d);
    let log_rhs: f64 = al.iter().zip(n).map(|(a, x)| a * x.ln()).sum();
    let mut residual: f64 = 0.0;
    for i in 0..k {
        // Compare in logs; the relative residual is |exp(lhs - rhs) - 1|.
        let mut log_lhs = 0.0;
        for j in 0..k {
            let scale = if j == i { 1.0 } else { d[j] as f64 };
            if j != i {
                log_lhs += scale * r.ln();
            }
            log_lhs += al[j] * (n[j].ln() - scale * r.ln());
        }
        residual = residual.max((log_lhs - log_rhs).exp_m1().abs());
    }
    let mut matrix_residual: f64 = 0.0;
    for i in 0..k {
        let s: f64 = (0..k).filter(|&j| j != i).map(|j| d[j] as f64 * (1.0 - al[j])).sum();
        matrix_residual = matrix_residual.max((al[i] - s).abs());
        // The printed system: alpha_i + sum_{j != i} d_j alpha_j = sum_j d_j - d_i.
        let lhs: f64 = al[i] + (0..k).filter(|&j| j != i).map(|j| d[j] as f64 * al[j]).sum::<f64>();
        let rhs: f64 = d.iter().map(|&x| x as f64).sum::<f64>() - d[i] as f64;
        matrix_residual = matrix_residual.max((lhs - rhs).abs());
    }
    Ok(ScalingReport { residual, matrix_residual })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "status")]
pub enum DecrementOutcome {
    Holds { lhs: f64, rhs: f64 },
    Fails { lhs: f64, rhs: f64 },
    HypothesisNotMet,
}

/// Compares `F_{d - e_i}(n)` with `F_d(n)` when `n_i >= n_j^(1/d_j)` for all `j != i`.
pub fn check_decrement(d: &[u32], i: usize, n: &[f64], eps: f64) -> Result<DecrementOutcome> {
    check_domain(d, n)?;
    if i >= d.len() {
        return Err(Error::contract(format!("side {i} out of range")));
    }
    if d[i] < 3 {
        return Err(Error::Domain(format!("d[{i}] must be at least 3 to decrement")));
    }
    let hyp = (0..d.len())
        .filter(|&j| j != i)
        .all(|j| n[i] >= n[j].powf(1.0 / d[j] as f64));
    if !hyp {
        return Ok(DecrementOutcome::HypothesisNotMet);
    }
    let mut dm = d.to_vec();
    dm[i] -= 1;
    let lhs = f_func(&dm, n, eps)?;
    let rhs = f_func(d, n, eps)?;
    // Relative slack for rounding in the two sums.
    Ok(if lhs <= rhs * (1.0 + 1e-12) {
        DecrementOutcome::Holds { lhs, rhs }
    } else {
        DecrementOutcome::Fails { lhs, rhs }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "status")]
pub enum DominanceOutcome {
    Ratio { ratio: f64 },
    PreconditionNotMet,
}

/// Ratio `E(n) prod n_i^eps / F^eps(n)` under `n_i < n_j^{d_i}` for all distinct `i, j`.
pub fn check_dominance(d: &[u32], n: &[f64], eps: f64) -> Result<DominanceOutcome> {
    check_domain(d, n)?;
    let k = d.len();
    for i in 0..k {
        for j in (0..k).filter(|&j| j != i) {
            if !(n[i] < n[j].powf(d[i] as f64)) {
                return Ok(DominanceOutcome::PreconditionNotMet);
            }
        }
    }
    let top = e_raw(d, n) * n.iter().map(|x| x.powf(eps)).product::<f64>();
    Ok(DominanceOutcome::Ratio { ratio: top / f_func(d, n, eps)? })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * b.abs().max(1.0)
    }

    #[test]
    fn e_examples() {
        assert!(close(e_func(&[2, 2], &[8.0, 8.0]).unwrap(), 16.0));
        let a = alphas(&[2, 3]).unwrap();
        assert!(close(a[0], 3.0 / 5.0) && close(a[1], 4.0 / 5.0));
        assert_eq!(graph_exponents(2, 3).unwrap(), (0.6, 0.8));
        assert_eq!(graph_exponents(1, 2).unwrap(), (0.0, 1.0));
        assert!(graph_exponents(1, 1).is_err());
        assert!(matches!(e_func(&[1, 2], &[4.0, 4.0]), Err(Error::Domain(_))));
    }

    #[test]
    fn graph_exponents_agree_with_alphas() {
        for d1 in 2..7 {
            for d2 in 2..7 {
                let a = alphas(&[d1, d2]).unwrap();
                let (g1, g2) = graph_exponents(d1, d2).unwrap();
                assert!(close(a[0], g1) && close(a[1], g2));
            }
        }
    }

    #[test]
    fn f_and_fstar_two_sides() {
        let (m, n) = (8.0, 8.0);
        let f = f_func(&[2, 2], &[m, n], 0.0).unwrap();
        assert!(close(f, 16.0 + m + n));
        assert!(close(fstar_func(&[2, 2], &[m, n], 0.0).unwrap(), 32.0));
        let eps = 0.1;
        let fs = fstar_func(&[2, 3], &[10.0, 50.0], eps).unwrap();
        let e = e_func(&[2, 3], &[10.0, 50.0]).unwrap();
        assert!(close(fs, 500f64.powf(eps) * (e + 60.0)));
        assert!(f_func(&[2, 2, 2], &[1.0, 1.0, 1.0], 0.0).unwrap().is_finite());
    }

    #[test]
    fn scaling_examples() {
        let rep = check_scaling(&[2, 2], 2.0, &[64.0, 64.0]).unwrap();
        assert!(rep.residual <= 1e-12 && rep.matrix_residual <= 1e-12);
        assert_eq!(check_scaling(&[3, 4, 5], 1.0, &[7.0, 9.0, 11.0]).unwrap().residual, 0.0);
    }

    #[test]
    fn decrement_examples() {
        let out = check_decrement(&[3, 3], 0, &[100.0, 100.0], 0.01).unwrap();
        assert!(matches!(out, DecrementOutcome::Holds { .. }));
        let gated = check_decrement(&[3, 3], 0, &[2.0, 1e6], 0.01).unwrap();
        assert_eq!(gated, DecrementOutcome::HypothesisNotMet);
    }

    #[test]
    fn dominance_two_sides() {
        for n in [64.0, 1e3, 1e5] {
            match check_dominance(&[2, 2], &[n, n], 0.0).unwrap() {
                DominanceOutcome::Ratio { ratio } => assert!(ratio > 1.0 / 3.0),
                other => panic!("{other:?}"),
            }
        }
        let edge = check_dominance(&[2, 2], &[100.0, 10.0], 0.0).unwrap();
        assert_eq!(edge, DominanceOutcome::PreconditionNotMet);
    }
}
