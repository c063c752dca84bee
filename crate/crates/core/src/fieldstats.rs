//! Photon-number statistics of the field mode in a ground branch.

use crate::eigen::GroundBranch;

/// Photon-number distribution and moments.
///
/// Two Mandel-type parameters are reported: the usual variance form
/// `(Var(n) − n̄)/n̄` and the dispersion form `(Δ − n̄)/n̄` with `Δ` the
/// standard deviation. Both are `None` when `n̄ = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhotonStats {
    /// `(n, P(n))`, ascending in `n`.
    pub distribution: Vec<(u64, f64)>,
    pub mean: f64,
    pub variance: f64,
    pub std_dev: f64,
    pub mandel_q_variance: Option<f64>,
    pub mandel_q_dispersion: Option<f64>,
}

/// `P(p − s) = |A_s|²`. Moments are taken over the atomic index `s` and
/// shifted, which keeps the variance accurate when `p ≫ N`.
pub fn photon_statistics(branch: &GroundBranch) -> PhotonStats {
    let p = branch.p;
    let w = &branch.weights;
    let mean_s = mean_excitation_atoms(w);
    let variance = w
        .iter()
        .enumerate()
        .map(|(s, &ws)| {
            let d = s as f64 - mean_s;
            ws * d * d
        })
        .sum::<f64>()
        .max(0.0);
    let mean = p as f64 - mean_s;
    let std_dev = variance.sqrt();
    let (mandel_q_variance, mandel_q_dispersion) = if mean > 0.0 {
        (
            Some((variance - mean) / mean),
            Some((std_dev - mean) / mean),
        )
    } else {
        (None, None)
    };
    let distribution = w
        .iter()
        .enumerate()
        .rev()
        .map(|(s, &ws)| (p - s as u64, ws))
        .collect();
    PhotonStats {
        distribution,
        mean,
        variance,
        std_dev,
        mandel_q_variance,
        mandel_q_dispersion,
    }
}

/// Mean number of excited atoms `Σ s·w_s`.
pub fn mean_excitation_atoms(weights: &[f64]) -> f64 {
    weights.iter().enumerate().map(|(s, &w)| s as f64 * w).sum()
}

/// `ln C(n, k)` for every `k = 0..=n`.
pub fn ln_binomials(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    out.push(acc);
    for k in 1..=n {
        acc += ((n - k + 1) as f64).ln() - (k as f64).ln();
        out.push(acc);
    }
    out
}

/// Strong-coupling amplitudes `(−1)^(N+s) · sqrt(C(N,s) / 2^N)`.
pub fn binomial_amplitudes(n_atoms: usize) -> Vec<f64> {
    let ln2n = n_atoms as f64 * std::f64::consts::LN_2;
    ln_binomials(n_atoms)
        .into_iter()
        .enumerate()
        .map(|(s, lb)| {
            let mag = (0.5 * (lb - ln2n)).exp();
            if (n_atoms + s).is_multiple_of(2) {
                mag
            } else {
                -mag
            }
        })
        .collect()
}

/// `max_s | |a_s| − |b_s| |` over a common length.
pub fn max_magnitude_gap(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x.abs() - y.abs()).abs())
        .fold(0.0, f64::max)
}

/// Total-variation distance `½ Σ |p_i − q_i|` (missing entries count as 0).
pub fn total_variation(p: &[f64], q: &[f64]) -> f64 {
    let n = p.len().max(q.len());
    0.5 * (0..n)
        .map(|i| (p.get(i).copied().unwrap_or(0.0) - q.get(i).copied().unwrap_or(0.0)).abs())
        .sum::<f64>()
}
