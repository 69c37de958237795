use num_complex::Complex64;

use super::projection::{ProjectionSpec, RieffelProjection};
use super::torus::build_torus;
use crate::dirac::build_dirac;
use crate::error::{Error, Result};
use crate::linalg::{dot, lanczos_smallest, LanczosConfig, RitzPair};
use crate::rep::{SparseOperator, TruncGrid};

#[derive(Debug, Clone, Copy)]
pub struct IndexConfig {
    /// Singular values below this count as kernel.
    pub tol: f64,
    pub lanczos: LanczosConfig,
}

impl Default for IndexConfig {
    fn default() -> Self {
        Self {
            tol: 1e-3,
            lanczos: LanczosConfig {
                want: 12,
                max_iter: 800,
                tol: 1e-9,
                converge_below: Some(1e-2),
                ..LanczosConfig::default()
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IndexReport {
    pub index: i64,
    pub kernel: usize,
    pub cokernel: usize,
    /// Smallest singular values of B and B* on localized vectors in the range of p.
    pub right_singular: Vec<f64>,
    pub left_singular: Vec<f64>,
    pub tol: f64,
    /// False when a singular value sits within a factor 4 of `tol`.
    pub determinate: bool,
}

fn mean_radius(grid: TruncGrid, v: &[Complex64]) -> f64 {
    v.iter()
        .enumerate()
        .map(|(i, x)| {
            let (_, j, k) = grid.site(i);
            x.norm_sqr() * ((j * j + k * k) as f64).sqrt()
        })
        .sum()
}

/// Index of pFp on the range of p, read off from B = pFp + (1 − p).
///
/// Kernel vectors of B and B* are counted if they lie in the range of p and
/// stay away from the truncation boundary; partners created by the cut live
/// near the boundary and are discarded.
pub fn fredholm_index_svd(
    p: &SparseOperator,
    f: &SparseOperator,
    cfg: IndexConfig,
) -> Result<IndexReport> {
    if p.grid() != f.grid() {
        return Err(Error::GridMismatch);
    }
    let grid = p.grid();
    let n = grid.dim();
    let defect = idempotency_probe(p);
    if defect > 1e-4 {
        return Err(Error::NotIdempotent(defect));
    }
    let (pt, ft) = (p.adjoint(), f.adjoint());
    // x ↦ pFpx + x − px, never formed as a matrix
    let compress = |p: &SparseOperator, f: &SparseOperator, x: &[Complex64]| -> Vec<Complex64> {
        let px = p.apply(x);
        let pfpx = p.apply(&f.apply(&px));
        pfpx.iter()
            .zip(x)
            .zip(&px)
            .map(|((a, b), c)| a + b - c)
            .collect()
    };
    let b = |x: &[Complex64]| compress(p, f, x);
    let bt = |x: &[Complex64]| compress(&pt, &ft, x);
    let right = lanczos_smallest(n, |x| bt(&b(x)), cfg.lanczos)?;
    let left = lanczos_smallest(n, |x| b(&bt(x)), cfg.lanczos)?;
    let keep = |pairs: Vec<RitzPair>| -> Vec<f64> {
        pairs
            .into_iter()
            .filter(|r| {
                let pv = p.apply(&r.vector);
                dot(&r.vector, &pv).re > 0.5
                    && mean_radius(grid, &r.vector) < grid.z_cut() as f64 / 2.0
            })
            .map(|r| r.value.max(0.0).sqrt())
            .collect()
    };
    let (rs, ls) = (keep(right), keep(left));
    let count = |s: &[f64]| s.iter().filter(|&&x| x < cfg.tol).count();
    let ambiguous = |s: &[f64]| s.iter().any(|&x| x >= cfg.tol / 4.0 && x <= 4.0 * cfg.tol);
    let (kernel, cokernel) = (count(&rs), count(&ls));
    Ok(IndexReport {
        index: kernel as i64 - cokernel as i64,
        kernel,
        cokernel,
        determinate: !ambiguous(&rs) && !ambiguous(&ls),
        right_singular: rs,
        left_singular: ls,
        tol: cfg.tol,
    })
}

/// max ‖p²e − pe‖ over basis vectors e at |j|, |k| ≤ 1 of the i = 0 slice.
fn idempotency_probe(p: &SparseOperator) -> f64 {
    let grid = p.grid();
    let mut worst: f64 = 0.0;
    for j in -1..=1 {
        for k in -1..=1 {
            let mut e = vec![Complex64::new(0.0, 0.0); grid.dim()];
            e[grid.index((0, j, k)).unwrap()] = Complex64::new(1.0, 0.0);
            let pe = p.apply(&e);
            let ppe = p.apply(&pe);
            let d: Vec<Complex64> = ppe.iter().zip(&pe).map(|(a, b)| a - b).collect();
            worst = worst.max(crate::linalg::norm(&d));
        }
    }
    worst
}

/// Extend an operator on the single-slice grid by zero to the i = 0 slice of `target`.
pub fn embed_slice(op: &SparseOperator, target: TruncGrid) -> Result<SparseOperator> {
    let src = op.grid();
    if src.n_cut() != 1 || src.z_cut() != target.z_cut() {
        return Err(Error::GridMismatch);
    }
    let t = op
        .entries()
        .map(|(r, c, v)| {
            (
                target.index(src.site(r)).unwrap(),
                target.index(src.site(c)).unwrap(),
                v,
            )
        })
        .collect();
    Ok(SparseOperator::from_triplets(target, t))
}

/// Index of the projection against the phase of the Dirac operator on a grid
/// with `n_cut` slices.
pub fn pairing_index(
    spec: ProjectionSpec,
    n_cut: usize,
    z_cut: usize,
    cfg: IndexConfig,
) -> Result<IndexReport> {
    let pair = build_torus(spec.theta, z_cut)?;
    let p = RieffelProjection::new(spec)?.operator(&pair);
    let grid = TruncGrid::new(n_cut, z_cut, 0)?;
    let p = embed_slice(&p, grid)?;
    let f = build_dirac(grid).phase_operator();
    fredholm_index_svd(&p, &f, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncindex::torus::phase_operator;

    #[test]
    fn identity_projection_has_index_zero() {
        let f = phase_operator(10).unwrap();
        let p = SparseOperator::identity(f.grid());
        let r = fredholm_index_svd(&p, &f, IndexConfig::default()).unwrap();
        assert_eq!(r.index, 0);
        assert!(r.determinate);
    }

    #[test]
    fn rejects_non_projection() {
        let f = phase_operator(8).unwrap();
        let p = SparseOperator::identity(f.grid()).scale(Complex64::new(0.5, 0.0));
        assert!(matches!(
            fredholm_index_svd(&p, &f, IndexConfig::default()),
            Err(Error::NotIdempotent(_))
        ));
    }

    #[test]
    fn shift_projection_index() {
        // p onto a single basis vector at the origin, where F = 1
        let f = phase_operator(6).unwrap();
        let g = f.grid();
        let o = g.index((0, 0, 0)).unwrap();
        let p = SparseOperator::from_triplets(g, vec![(o, o, Complex64::new(1.0, 0.0))]);
        let r = fredholm_index_svd(&p, &f, IndexConfig::default()).unwrap();
        assert_eq!(r.index, 0);
    }
}
