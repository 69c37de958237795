//! Lanczos iteration for the low end of a Hermitian spectrum.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub fn dot(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

#[derive(Debug, Clone)]
pub struct RitzPair {
    pub value: f64,
    pub vector: Vec<Complex64>,
    /// ‖A v − value v‖
    pub residual: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct LanczosConfig {
    pub want: usize,
    pub max_iter: usize,
    /// Residual tolerance for a Ritz pair to count as converged.
    pub tol: f64,
    pub seed: u64,
    pub check_every: usize,
    /// If set, only Ritz values below this level must converge, and the
    /// iteration may stop once the `want`-th Ritz value lies above it.
    pub converge_below: Option<f64>,
}

impl Default for LanczosConfig {
    fn default() -> Self {
        Self {
            want: 8,
            max_iter: 600,
            tol: 1e-8,
            seed: 0x5eed,
            check_every: 20,
            converge_below: None,
        }
    }
}

/// Smallest `want` eigenpairs of a Hermitian positive semidefinite operator,
/// with full reorthogonalization.
pub fn lanczos_smallest(
    n: usize,
    apply: impl Fn(&[Complex64]) -> Vec<Complex64>,
    cfg: LanczosConfig,
) -> Result<Vec<RitzPair>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut v: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let nv = norm(&v);
    v.iter_mut().for_each(|x| *x /= nv);

    let max_iter = cfg.max_iter.min(n);
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(max_iter);
    let mut alpha: Vec<f64> = Vec::new();
    let mut beta: Vec<f64> = Vec::new();
    basis.push(v);
    loop {
        let k = basis.len() - 1;
        let mut w = apply(&basis[k]);
        let a = dot(&basis[k], &w).re;
        alpha.push(a);
        // two passes of classical Gram-Schmidt against the whole basis
        for _ in 0..2 {
            for q in &basis {
                let c = dot(q, &w);
                w.iter_mut().zip(q).for_each(|(x, y)| *x -= c * y);
            }
        }
        let b = norm(&w);
        let m = basis.len();
        let done = m >= max_iter || b < 1e-14;
        if done || (m >= cfg.want && m % cfg.check_every == 0) {
            let pairs = ritz(&alpha, &beta, b, cfg.want);
            let converged = match cfg.converge_below {
                None => pairs.iter().all(|(_, r, _)| *r < cfg.tol),
                Some(level) => {
                    pairs.len() == cfg.want
                        && pairs.last().is_some_and(|p| p.0 > level)
                        && pairs
                            .iter()
                            .filter(|p| p.0 <= level)
                            .all(|(_, r, _)| *r < cfg.tol)
                }
            };
            if converged || done {
                return Ok(pairs
                    .into_iter()
                    .map(|(value, residual, s)| {
                        let mut vector = vec![Complex64::new(0.0, 0.0); n];
                        for (q, c) in basis.iter().zip(s.iter()) {
                            vector.iter_mut().zip(q).for_each(|(x, y)| *x += y * *c);
                        }
                        RitzPair {
                            value,
                            vector,
                            residual,
                        }
                    })
                    .collect());
            }
        }
        if b < 1e-14 {
            return Err(Error::LinearAlgebra("Lanczos breakdown".into()));
        }
        beta.push(b);
        w.iter_mut().for_each(|x| *x /= b);
        basis.push(w);
    }
}

/// Ritz values, residual estimates and coefficient vectors of the
/// tridiagonal matrix.
fn ritz(alpha: &[f64], beta: &[f64], next_beta: f64, want: usize) -> Vec<(f64, f64, Vec<f64>)> {
    let m = alpha.len();
    let mut t = DMatrix::<f64>::zeros(m, m);
    for i in 0..m {
        t[(i, i)] = alpha[i];
        if i + 1 < m {
            t[(i, i + 1)] = beta[i];
            t[(i + 1, i)] = beta[i];
        }
    }
    let eig = t.symmetric_eigen();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|a, b| eig.eigenvalues[*a].total_cmp(&eig.eigenvalues[*b]));
    order
        .into_iter()
        .take(want)
        .map(|i| {
            let s: Vec<f64> = eig.eigenvectors.column(i).iter().copied().collect();
            (eig.eigenvalues[i], (next_beta * s[m - 1]).abs(), s)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_spectrum() {
        let n = 400;
        let diag: Vec<f64> = (0..n).map(|i| 1e-6 + i as f64 / n as f64).collect();
        let apply = |x: &[Complex64]| x.iter().zip(&diag).map(|(a, d)| a * d).collect();
        let cfg = LanczosConfig {
            want: 3,
            max_iter: 400,
            tol: 1e-9,
            ..Default::default()
        };
        let pairs = lanczos_smallest(n, apply, cfg).unwrap();
        for (p, want) in pairs
            .iter()
            .zip([1e-6, 1e-6 + 1.0 / 400.0, 1e-6 + 2.0 / 400.0])
        {
            assert!((p.value - want).abs() < 1e-9, "{} vs {want}", p.value);
            assert!((norm(&p.vector) - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn early_stop_below_level() {
        let n = 2000;
        let diag: Vec<f64> = (0..n)
            .map(|i| {
                if i < 2 {
                    1e-8 * i as f64
                } else {
                    1.0 + i as f64 / n as f64
                }
            })
            .collect();
        let apply = |x: &[Complex64]| x.iter().zip(&diag).map(|(a, d)| a * d).collect();
        let cfg = LanczosConfig {
            want: 4,
            max_iter: 400,
            converge_below: Some(0.5),
            ..Default::default()
        };
        let pairs = lanczos_smallest(n, apply, cfg).unwrap();
        assert!(pairs[0].value.abs() < 1e-9 && (pairs[1].value - 1e-8).abs() < 1e-9);
        assert!(pairs[2].value > 0.5);
    }
}
