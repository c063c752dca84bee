//! Extremal eigenpairs of the symmetric tridiagonal coupling matrices.
//!
//! Eigenvalues are bracketed by Sturm-sequence bisection (the inertia of
//! `T − xI` counts the eigenvalues below `x`), and the ground eigenvector is
//! then obtained by inverse iteration with a shift just below the bracket, so
//! that `T − σI` is positive definite and its LDLᵀ factorization is stable
//! without pivoting.

use crate::error::{DickeError, Result};
use crate::subspace::SubspaceBlock;

const EIGENVALUE_RTOL: f64 = 1e-13;
const RESIDUAL_TOL: f64 = 1e-10;
const MAX_BISECTION_STEPS: usize = 400;
const MAX_INVERSE_STEPS: usize = 8;

/// Ground data of one excitation block.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundBranch {
    pub p: u64,
    pub n_atoms: usize,
    /// Minimal eigenvalue `K(p)` of `T(p)`; the branch energy is `e0 + κ·K(p)`.
    pub k_slope: f64,
    /// Unit eigenvector, `amplitudes[0] > 0`.
    pub amplitudes: Vec<f64>,
    /// `amplitudes[s]²`.
    pub weights: Vec<f64>,
}

impl GroundBranch {
    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }
}

/// Symmetric tridiagonal matrix given by its diagonal and off-diagonal.
#[derive(Debug, Clone, Copy)]
pub struct SymTridiagonal<'a> {
    pub diag: &'a [f64],
    pub offdiag: &'a [f64],
}

impl<'a> SymTridiagonal<'a> {
    pub fn new(diag: &'a [f64], offdiag: &'a [f64]) -> Self {
        assert_eq!(
            diag.len(),
            offdiag.len() + 1,
            "off-diagonal must be one shorter than the diagonal"
        );
        Self { diag, offdiag }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Gershgorin enclosure `[lo, hi]` of the spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 {
                self.offdiag[i - 1].abs()
            } else {
                0.0
            };
            let right = if i + 1 < n {
                self.offdiag[i].abs()
            } else {
                0.0
            };
            let r = left + right;
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    fn pivot_floor(&self) -> f64 {
        let emax = self.offdiag.iter().fold(1.0f64, |m, e| m.max(e * e));
        f64::MIN_POSITIVE * emax
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn count_below(&self, x: f64) -> usize {
        let pivmin = self.pivot_floor();
        let mut count = 0;
        let mut q = self.diag[0] - x;
        for i in 0.. {
            if q.abs() < pivmin {
                q = -pivmin;
            }
            if q < 0.0 {
                count += 1;
            }
            if i + 1 == self.dim() {
                break;
            }
            let e = self.offdiag[i];
            q = (self.diag[i + 1] - x) - e * e / q;
        }
        count
    }

    /// Brackets the `k`-th smallest eigenvalue (0-based) to width `tol`.
    pub fn bisect(&self, k: usize, tol: f64) -> Result<(f64, f64)> {
        let (glo, ghi) = self.gershgorin();
        if glo == ghi {
            // spectrum is a single point, e.g. the zero matrix
            return Ok((glo, ghi));
        }
        let tol = tol.max(2.0 * f64::EPSILON * glo.abs().max(ghi.abs()));
        let pad = f64::EPSILON * (glo.abs().max(ghi.abs()) + 1.0);
        let mut lo = glo - pad;
        let mut hi = ghi + pad;
        for _ in 0..MAX_BISECTION_STEPS {
            if hi - lo <= tol {
                return Ok((lo, hi));
            }
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                // adjacent floats
                return Ok((lo, hi));
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Err(DickeError::NoConvergence(format!(
            "bisection for eigenvalue {k} stalled at [{lo}, {hi}]"
        )))
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut y = self.diag[i] * x[i];
                if i > 0 {
                    y += self.offdiag[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    y += self.offdiag[i] * x[i + 1];
                }
                y
            })
            .collect()
    }

    /// Solves `(T − σI) y = b` through LDLᵀ. Only stable when `T − σI` is
    /// positive definite, which holds for σ below the smallest eigenvalue.
    fn solve_shifted(&self, sigma: f64, b: &[f64]) -> Vec<f64> {
        let n = self.dim();
        let pivmin = self.pivot_floor();
        let mut d = vec![0.0; n];
        let mut l = vec![0.0; n.saturating_sub(1)];
        d[0] = (self.diag[0] - sigma).max(pivmin);
        for i in 0..n - 1 {
            l[i] = self.offdiag[i] / d[i];
            d[i + 1] = (self.diag[i + 1] - sigma - l[i] * self.offdiag[i]).max(pivmin);
        }
        let mut y = b.to_vec();
        for i in 1..n {
            y[i] -= l[i - 1] * y[i - 1];
        }
        for i in 0..n {
            y[i] /= d[i];
        }
        for i in (0..n - 1).rev() {
            y[i] -= l[i] * y[i + 1];
        }
        y
    }

    /// Lowest eigenpair; eigenvalue is the Rayleigh quotient of the
    /// converged vector, which is first-sign-positive.
    pub fn lowest_eigenpair(&self) -> Result<(f64, Vec<f64>)> {
        let n = self.dim();
        if n == 1 {
            return Ok((self.diag[0], vec![1.0]));
        }
        let (glo, ghi) = self.gershgorin();
        let radius = glo.abs().max(ghi.abs()).max(f64::MIN_POSITIVE);
        let tol = EIGENVALUE_RTOL * radius;
        let (lo, hi) = self.bisect(0, tol)?;
        let sigma = lo - tol;

        for attempt in 0..2 {
            let mut x: Vec<f64> = (0..n)
                .map(|i| {
                    if attempt == 0 {
                        1.0
                    } else {
                        1.0 + 1e-8 * i as f64
                    }
                })
                .collect();
            normalize(&mut x);
            for _ in 0..MAX_INVERSE_STEPS {
                x = self.solve_shifted(sigma, &x);
                normalize(&mut x);
                let tx = self.apply(&x);
                let lambda = dot(&x, &tx);
                let residual = tx
                    .iter()
                    .zip(&x)
                    .map(|(a, b)| (a - lambda * b).abs())
                    .fold(0.0, f64::max);
                if residual <= RESIDUAL_TOL * lambda.abs().max(1.0) {
                    // a start vector orthogonal to the ground state converges elsewhere
                    if !(lo - tol..=hi + tol).contains(&lambda) {
                        break;
                    }
                    // one more step takes the vector to working precision
                    x = self.solve_shifted(sigma, &x);
                    normalize(&mut x);
                    if x[0] < 0.0 {
                        x.iter_mut().for_each(|v| *v = -*v);
                    }
                    let lambda = dot(&x, &self.apply(&x));
                    return Ok((lambda, x));
                }
            }
        }
        Err(DickeError::NoConvergence(format!(
            "inverse iteration stagnated for dimension {n}"
        )))
    }

    /// All eigenvalues, ascending.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let (glo, ghi) = self.gershgorin();
        let radius = glo.abs().max(ghi.abs());
        let tol = (EIGENVALUE_RTOL * radius).min(1e-12);
        (0..self.dim())
            .map(|k| self.bisect(k, tol).map(|(lo, hi)| 0.5 * (lo + hi)))
            .collect()
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(x: &mut [f64]) {
    let scale = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    x.iter_mut().for_each(|v| *v /= scale);
    let norm = dot(x, x).sqrt();
    x.iter_mut().for_each(|v| *v /= norm);
}

/// Ground eigenpair of the coupling matrix of `block`.
pub fn ground_eigenpair(block: &SubspaceBlock) -> Result<GroundBranch> {
    let (k_slope, amplitudes) = if block.dim == 1 {
        (0.0, vec![1.0])
    } else {
        let diag = vec![0.0; block.dim];
        SymTridiagonal::new(&diag, &block.offdiag).lowest_eigenpair()?
    };
    let weights = amplitudes.iter().map(|a| a * a).collect();
    Ok(GroundBranch {
        p: block.p,
        n_atoms: block.n_atoms,
        k_slope,
        amplitudes,
        weights,
    })
}

/// Every eigenvalue of the coupling matrix of `block`, ascending.
pub fn full_spectrum(block: &SubspaceBlock) -> Result<Vec<f64>> {
    let diag = vec![0.0; block.dim];
    SymTridiagonal::new(&diag, &block.offdiag).eigenvalues()
}
