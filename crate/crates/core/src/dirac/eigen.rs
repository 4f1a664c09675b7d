use num_complex::Complex64;
use serde::Serialize;

use super::DiracError;

/// Dense row-major complex square matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        ComplexMatrix {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn conj(&self) -> Self {
        ComplexMatrix {
            n: self.n,
            data: self.data.iter().map(Complex64::conj).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius(&self) -> f64 {
        self.data
            .iter()
            .map(Complex64::norm_sqr)
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

/// Eigenvalues with a backward-error estimate each.
#[derive(Clone, Debug, Serialize)]
pub struct Eigenvalues {
    #[serde(serialize_with = "super::ser_complex_list")]
    pub values: Vec<Complex64>,
    /// `‖(M − λI)v‖ / ‖M‖_F` for the inverse-iteration vector `v`, `‖v‖ = 1`.
    pub residuals: Vec<f64>,
    pub iterations: usize,
}

impl Eigenvalues {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

const RADIX: f64 = 2.0;

/// Diagonal similarity by powers of two so that row and column norms are close.
fn balance(a: &mut ComplexMatrix) {
    let n = a.dim();
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let (mut c, mut r) = (0.0, 0.0);
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].l1_norm();
                    r += a[(i, j)].l1_norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= RADIX * RADIX;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= RADIX * RADIX;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                for j in 0..n {
                    a[(i, j)] /= f;
                    a[(j, i)] *= f;
                }
            }
        }
    }
}

/// Householder reduction to upper Hessenberg form.
fn hessenberg(a: &mut ComplexMatrix) {
    let n = a.dim();
    for k in 0..n.saturating_sub(2) {
        let norm: f64 = (k + 1..n).map(|i| a[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * norm;
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| a[(i, k)]).collect();
        v[0] -= alpha;
        let vn: f64 = v.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
        if vn == 0.0 {
            continue;
        }
        for x in &mut v {
            *x /= vn;
        }
        for j in 0..n {
            let dot: Complex64 = (k + 1..n).map(|i| v[i - k - 1].conj() * a[(i, j)]).sum();
            for i in k + 1..n {
                a[(i, j)] -= v[i - k - 1] * dot * 2.0;
            }
        }
        for i in 0..n {
            let dot: Complex64 = (k + 1..n).map(|j| a[(i, j)] * v[j - k - 1]).sum();
            for j in k + 1..n {
                a[(i, j)] -= dot * v[j - k - 1].conj() * 2.0;
            }
        }
        for i in k + 2..n {
            a[(i, k)] = Complex64::new(0.0, 0.0);
        }
    }
}

/// The eigenvalue of the trailing 2×2 block closer to its last diagonal entry.
fn wilkinson(h: &ComplexMatrix, hi: usize) -> Complex64 {
    let (a, b) = (h[(hi - 1, hi - 1)], h[(hi - 1, hi)]);
    let (c, d) = (h[(hi, hi - 1)], h[(hi, hi)]);
    let tr = a + d;
    let disc = ((a - d) * (a - d) / 4.0 + b * c).sqrt();
    let l1 = tr / 2.0 + disc;
    let l2 = tr / 2.0 - disc;
    if (l1 - d).norm() < (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// One shifted QR sweep on the active window `lo..=hi` by Givens rotations.
fn qr_step(h: &mut ComplexMatrix, lo: usize, hi: usize, shift: Complex64) {
    for i in lo..=hi {
        h[(i, i)] -= shift;
    }
    let mut rots = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let (a, b) = (h[(k, k)], h[(k + 1, k)]);
        let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
        let (c, s) = if r == 0.0 {
            (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
        } else {
            (a / r, b / r)
        };
        for j in k..=hi {
            let (x, y) = (h[(k, j)], h[(k + 1, j)]);
            h[(k, j)] = c.conj() * x + s.conj() * y;
            h[(k + 1, j)] = -s * x + c * y;
        }
        rots.push((c, s));
    }
    for (k, (c, s)) in (lo..hi).zip(rots) {
        for i in lo..=(k + 1).min(hi) {
            let (x, y) = (h[(i, k)], h[(i, k + 1)]);
            h[(i, k)] = x * c + y * s;
            h[(i, k + 1)] = -x * s.conj() + y * c.conj();
        }
    }
    for i in lo..=hi {
        h[(i, i)] += shift;
    }
}

const MAX_SWEEPS_PER_VALUE: usize = 60;

/// Balancing, Hessenberg reduction and single-shift QR.
pub fn eigenvalues(m: &ComplexMatrix) -> Result<Eigenvalues, DiracError> {
    if !m.is_finite() {
        return Err(DiracError::NonFinite);
    }
    let n = m.dim();
    let mut h = m.clone();
    balance(&mut h);
    hessenberg(&mut h);
    let mut total = 0;
    if n > 0 {
        let mut hi = n - 1;
        let mut stalled = 0;
        while hi > 0 {
            let mut lo = hi;
            while lo > 0 {
                let s = h[(lo, lo)].l1_norm() + h[(lo - 1, lo - 1)].l1_norm();
                if h[(lo, lo - 1)].l1_norm() <= f64::EPSILON * s.max(f64::MIN_POSITIVE) {
                    h[(lo, lo - 1)] = Complex64::new(0.0, 0.0);
                    break;
                }
                lo -= 1;
            }
            if lo == hi {
                hi -= 1;
                stalled = 0;
                continue;
            }
            stalled += 1;
            total += 1;
            if stalled > MAX_SWEEPS_PER_VALUE {
                return Err(DiracError::NoConvergence {
                    sweeps: total,
                    subdiagonal: h[(hi, hi - 1)].norm(),
                });
            }
            let shift = if stalled % 11 == 10 {
                h[(hi, hi)] + h[(hi, hi - 1)].norm() * 0.75
            } else {
                wilkinson(&h, hi)
            };
            qr_step(&mut h, lo, hi, shift);
        }
    }
    let values: Vec<Complex64> = (0..n).map(|i| h[(i, i)]).collect();
    let norm = m.frobenius().max(f64::MIN_POSITIVE);
    let residuals = values.iter().map(|&l| residual(m, l) / norm).collect();
    Ok(Eigenvalues {
        values,
        residuals,
        iterations: total,
    })
}

/// LU with partial pivoting of `m − λI`, perturbed off exact singularity.
fn lu_shifted(m: &ComplexMatrix, lambda: Complex64) -> (ComplexMatrix, Vec<usize>) {
    let n = m.dim();
    let tiny = f64::EPSILON * m.frobenius().max(1.0);
    let mut a = m.clone();
    for i in 0..n {
        a[(i, i)] -= lambda;
    }
    let mut piv: Vec<usize> = (0..n).collect();
    for k in 0..n {
        let p = (k..n)
            .max_by(|&x, &y| a[(x, k)].norm().total_cmp(&a[(y, k)].norm()))
            .unwrap_or(k);
        if p != k {
            for j in 0..n {
                let t = a[(k, j)];
                a[(k, j)] = a[(p, j)];
                a[(p, j)] = t;
            }
            piv.swap(k, p);
        }
        if a[(k, k)].norm() < tiny {
            a[(k, k)] = Complex64::new(tiny, 0.0);
        }
        for i in k + 1..n {
            let f = a[(i, k)] / a[(k, k)];
            a[(i, k)] = f;
            for j in k + 1..n {
                let t = a[(k, j)];
                a[(i, j)] -= f * t;
            }
        }
    }
    (a, piv)
}

fn lu_solve(lu: &ComplexMatrix, piv: &[usize], b: &[Complex64]) -> Vec<Complex64> {
    let n = lu.dim();
    let mut x: Vec<Complex64> = piv.iter().map(|&p| b[p]).collect();
    for i in 0..n {
        for j in 0..i {
            let t = x[j];
            x[i] -= lu[(i, j)] * t;
        }
    }
    for i in (0..n).rev() {
        for j in i + 1..n {
            let t = x[j];
            x[i] -= lu[(i, j)] * t;
        }
        x[i] /= lu[(i, i)];
    }
    x
}

fn normalize(v: &mut [Complex64]) {
    let n: f64 = v.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
    if n > 0.0 {
        for x in v {
            *x /= n;
        }
    }
}

/// `‖(M − λI)v‖` for a unit vector from two steps of inverse iteration.
pub fn residual(m: &ComplexMatrix, lambda: Complex64) -> f64 {
    let n = m.dim();
    let (lu, piv) = lu_shifted(m, lambda);
    let mut v: Vec<Complex64> = (0..n)
        .map(|i| Complex64::new(1.0, 0.0) / ((i + 1) as f64).sqrt())
        .collect();
    for _ in 0..2 {
        v = lu_solve(&lu, &piv, &v);
        normalize(&mut v);
    }
    let mv = m.mul_vec(&v);
    mv.iter()
        .zip(&v)
        .map(|(a, b)| (a - lambda * b).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    #[test]
    fn identity_has_unit_spectrum() {
        let e = eigenvalues(&ComplexMatrix::identity(32)).unwrap();
        assert_eq!(e.values.len(), 32);
        assert!(e.values.iter().all(|z| (z - c(1.0, 0.0)).norm() < 1e-14));
    }

    #[test]
    fn diagonal_one_to_thirty_two() {
        let m = ComplexMatrix::from_fn(32, |i, j| {
            if i == j {
                c((i + 1) as f64, 0.0)
            } else {
                c(0.0, 0.0)
            }
        });
        let e = sorted(eigenvalues(&m).unwrap().values);
        for (k, z) in e.iter().enumerate() {
            assert!((z - c((k + 1) as f64, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn embedded_companion_of_z_squared_minus_one() {
        let m = ComplexMatrix::from_fn(32, |i, j| match (i, j) {
            (0, 1) | (1, 0) => c(1.0, 0.0),
            _ if i == j && i >= 2 => c(7.0, 0.0),
            _ => c(0.0, 0.0),
        });
        let e = sorted(eigenvalues(&m).unwrap().values);
        assert!((e[0] - c(-1.0, 0.0)).norm() < 1e-12);
        assert!((e[1] - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn rotation_has_conjugate_pair() {
        let m = ComplexMatrix::from_fn(2, |i, j| match (i, j) {
            (0, 1) => c(-1.0, 0.0),
            (1, 0) => c(1.0, 0.0),
            _ => c(0.0, 0.0),
        });
        let e = eigenvalues(&m).unwrap();
        let s = sorted(e.values.clone());
        assert!((s[0] - c(0.0, -1.0)).norm() < 1e-14);
        assert!((s[1] - c(0.0, 1.0)).norm() < 1e-14);
        assert!(e.max_residual() < 1e-12);
    }
}
