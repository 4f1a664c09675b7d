use num_complex::Complex64;
use serde::Serialize;

use super::DiracError;

/// Minimum-cost perfect matching on a square cost matrix; `out[i]` is the
/// column assigned to row `i`.
pub fn hungarian(cost: &[Vec<f64>]) -> Vec<usize> {
    let n = cost.len();
    let inf = f64::INFINITY;
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = inf;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut out = vec![0; n];
    for j in 1..=n {
        if p[j] > 0 {
            out[p[j] - 1] = j - 1;
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct MatchedPair {
    #[serde(serialize_with = "super::ser_complex")]
    pub computed: Complex64,
    #[serde(serialize_with = "super::ser_complex")]
    pub reference: Complex64,
    pub distance: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct MatchReport {
    pub max_distance: f64,
    pub mean_distance: f64,
    pub tolerance: f64,
    /// `permutation[i]` is the reference index matched to computed value `i`.
    pub permutation: Vec<usize>,
    pub pairs: Vec<MatchedPair>,
    /// Pairs farther apart than the tolerance.
    pub excess: Vec<MatchedPair>,
}

impl MatchReport {
    pub fn within_tolerance(&self) -> bool {
        self.max_distance <= self.tolerance
    }
}

/// Minimum-cost matching under `|z − w|`.
pub fn compare_spectrum(
    computed: &[Complex64],
    reference: &[Complex64],
    tolerance: f64,
) -> Result<MatchReport, DiracError> {
    if computed.len() != reference.len() {
        return Err(DiracError::LengthMismatch {
            computed: computed.len(),
            reference: reference.len(),
        });
    }
    let cost: Vec<Vec<f64>> = computed
        .iter()
        .map(|z| reference.iter().map(|w| (z - w).norm()).collect())
        .collect();
    let permutation = hungarian(&cost);
    let pairs: Vec<MatchedPair> = permutation
        .iter()
        .enumerate()
        .map(|(i, &j)| MatchedPair {
            computed: computed[i],
            reference: reference[j],
            distance: cost[i][j],
        })
        .collect();
    let max_distance = pairs.iter().map(|p| p.distance).fold(0.0, f64::max);
    let mean_distance = if pairs.is_empty() {
        0.0
    } else {
        pairs.iter().map(|p| p.distance).sum::<f64>() / pairs.len() as f64
    };
    let excess = pairs
        .iter()
        .filter(|p| p.distance > tolerance)
        .cloned()
        .collect();
    Ok(MatchReport {
        max_distance,
        mean_distance,
        tolerance,
        permutation,
        pairs,
        excess,
    })
}
