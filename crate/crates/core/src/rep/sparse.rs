use num_complex::Complex64;
use rayon::prelude::*;

use super::grid::{Site, TruncGrid};
use crate::error::{Error, Result};

/// Sparse operator on a truncated grid, stored row-major with duplicates
/// merged.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOperator {
    grid: TruncGrid,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<Complex64>,
}

/// Two-sided norm estimate: `lower <= ||A|| <= upper`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct NormEstimate {
    /// Largest entry magnitude.
    pub lower: f64,
    /// sqrt(max row sum * max column sum).
    pub upper: f64,
}

const PAR_THRESHOLD: usize = 1 << 16;

impl SparseOperator {
    /// Builds from (row, col, value) triplets, summing duplicates.
    pub fn from_triplets(grid: TruncGrid, mut t: Vec<(usize, usize, Complex64)>) -> Self {
        let dim = grid.dim();
        t.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut row_ptr = vec![0usize; dim + 1];
        let mut cols = Vec::with_capacity(t.len());
        let mut vals: Vec<Complex64> = Vec::with_capacity(t.len());
        let mut last: Option<(usize, usize)> = None;
        for (r, c, v) in t {
            debug_assert!(r < dim && c < dim);
            if last == Some((r, c)) {
                *vals.last_mut().unwrap() += v;
            } else {
                cols.push(c);
                vals.push(v);
                row_ptr[r + 1] += 1;
                last = Some((r, c));
            }
        }
        for r in 0..dim {
            row_ptr[r + 1] += row_ptr[r];
        }
        Self {
            grid,
            row_ptr,
            cols,
            vals,
        }
    }

    pub fn zero(grid: TruncGrid) -> Self {
        Self::from_triplets(grid, Vec::new())
    }

    pub fn identity(grid: TruncGrid) -> Self {
        Self::diagonal(grid, |_| Complex64::new(1.0, 0.0))
    }

    pub fn diagonal(grid: TruncGrid, f: impl Fn(Site) -> Complex64) -> Self {
        let t = (0..grid.dim()).map(|r| (r, r, f(grid.site(r)))).collect();
        Self::from_triplets(grid, t)
    }

    /// e_s ↦ weight(s) e_{s+shift}; targets outside the grid are dropped.
    pub fn weighted_shift(
        grid: TruncGrid,
        shift: Site,
        weight: impl Fn(Site) -> Complex64,
    ) -> Self {
        let mut t = Vec::with_capacity(grid.dim());
        for c in 0..grid.dim() {
            let s = grid.site(c);
            if let Some(r) = grid.index((s.0 + shift.0, s.1 + shift.1, s.2 + shift.2)) {
                let w = weight(s);
                if w != Complex64::new(0.0, 0.0) {
                    t.push((r, c, w));
                }
            }
        }
        Self::from_triplets(grid, t)
    }

    pub fn grid(&self) -> TruncGrid {
        self.grid
    }

    pub fn dim(&self) -> usize {
        self.grid.dim()
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        let span = self.row_ptr[r]..self.row_ptr[r + 1];
        self.cols[span.clone()]
            .iter()
            .copied()
            .zip(self.vals[span].iter().copied())
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        (0..self.dim()).flat_map(move |r| self.row(r).map(move |(c, v)| (r, c, v)))
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        let span = self.row_ptr[r]..self.row_ptr[r + 1];
        match self.cols[span.clone()].binary_search(&c) {
            Ok(p) => self.vals[span.start + p],
            Err(_) => Complex64::new(0.0, 0.0),
        }
    }

    pub fn get_sites(&self, r: Site, c: Site) -> Complex64 {
        match (self.grid.index(r), self.grid.index(c)) {
            (Some(r), Some(c)) => self.get(r, c),
            _ => Complex64::new(0.0, 0.0),
        }
    }

    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.dim());
        let row = |r: usize| self.row(r).map(|(c, v)| v * x[c]).sum::<Complex64>();
        if self.nnz() >= PAR_THRESHOLD {
            (0..self.dim()).into_par_iter().map(row).collect()
        } else {
            (0..self.dim()).map(row).collect()
        }
    }

    pub fn adjoint(&self) -> Self {
        let t = self.entries().map(|(r, c, v)| (c, r, v.conj())).collect();
        Self::from_triplets(self.grid, t)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = self.clone();
        out.vals.iter_mut().for_each(|v| *v *= s);
        out
    }

    fn same_grid(&self, other: &Self) -> Result<()> {
        if self.grid.dim() == other.grid.dim()
            && self.grid.n_cut() == other.grid.n_cut()
            && self.grid.z_cut() == other.grid.z_cut()
        {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }

    /// a*self + b*other
    pub fn combine(&self, a: Complex64, other: &Self, b: Complex64) -> Result<Self> {
        self.same_grid(other)?;
        let t = self
            .entries()
            .map(|(r, c, v)| (r, c, a * v))
            .chain(other.entries().map(|(r, c, v)| (r, c, b * v)))
            .collect();
        Ok(Self::from_triplets(self.grid, t))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(1.0.into(), other, 1.0.into())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(1.0.into(), other, (-1.0).into())
    }

    /// self · other
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.same_grid(other)?;
        let dim = self.dim();
        let mut acc = vec![Complex64::new(0.0, 0.0); dim];
        let mut stamp = vec![usize::MAX; dim];
        let mut touched = Vec::new();
        let mut row_ptr = vec![0usize; dim + 1];
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        for r in 0..dim {
            touched.clear();
            for (k, a) in self.row(r) {
                for (c, b) in other.row(k) {
                    if stamp[c] != r {
                        stamp[c] = r;
                        acc[c] = Complex64::new(0.0, 0.0);
                        touched.push(c);
                    }
                    acc[c] += a * b;
                }
            }
            touched.sort_unstable();
            for &c in &touched {
                cols.push(c);
                vals.push(acc[c]);
            }
            row_ptr[r + 1] = cols.len();
        }
        Ok(Self {
            grid: self.grid,
            row_ptr,
            cols,
            vals,
        })
    }

    /// [self, other]
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.matmul(other)?.sub(&other.matmul(self)?)
    }

    /// Integer power (identity for e = 0).
    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut out = Self::identity(self.grid);
        for _ in 0..e {
            out = out.matmul(self)?;
        }
        Ok(out)
    }

    /// Norm estimate of the operator restricted to columns selected by `keep`.
    pub fn norm_on_columns(&self, keep: impl Fn(usize) -> bool) -> NormEstimate {
        let mut col_sums = vec![0.0; self.dim()];
        let mut row_max: f64 = 0.0;
        let mut lower: f64 = 0.0;
        for r in 0..self.dim() {
            let mut s = 0.0;
            for (c, v) in self.row(r) {
                if keep(c) {
                    let a = v.norm();
                    s += a;
                    col_sums[c] += a;
                    lower = lower.max(a);
                }
            }
            row_max = row_max.max(s);
        }
        let col_max = col_sums.iter().cloned().fold(0.0, f64::max);
        NormEstimate {
            lower,
            upper: (row_max * col_max).sqrt(),
        }
    }

    /// Norm estimate restricted to interior columns of the grid.
    pub fn interior_norm(&self) -> NormEstimate {
        let g = self.grid;
        self.norm_on_columns(|c| g.is_interior_index(c))
    }

    /// Largest entry magnitude overall.
    pub fn max_abs(&self) -> f64 {
        self.vals.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Sum of squared magnitudes over interior columns.
    pub fn interior_frobenius_sq(&self) -> f64 {
        self.entries()
            .filter(|(_, c, _)| self.grid.is_interior_index(*c))
            .map(|(_, _, v)| v.norm_sqr())
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> TruncGrid {
        TruncGrid::new(3, 2, 0).unwrap()
    }

    #[test]
    fn duplicates_merge() {
        let g = grid();
        let op = SparseOperator::from_triplets(
            g,
            vec![(1, 2, 1.0.into()), (1, 2, 2.0.into()), (0, 0, 1.0.into())],
        );
        assert_eq!(op.nnz(), 2);
        assert_eq!(op.get(1, 2), Complex64::new(3.0, 0.0));
    }

    #[test]
    fn matmul_against_dense() {
        let g = grid();
        let a = SparseOperator::weighted_shift(g, (0, 1, 0), |s| {
            Complex64::new(s.0 as f64 + 1.0, s.2 as f64)
        });
        let b = SparseOperator::weighted_shift(g, (1, 0, -1), |s| Complex64::new(1.0, s.1 as f64));
        let ab = a.matmul(&b).unwrap();
        let n = g.dim();
        for r in 0..n {
            for c in 0..n {
                let want: Complex64 = (0..n).map(|k| a.get(r, k) * b.get(k, c)).sum();
                assert!((ab.get(r, c) - want).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn adjoint_involution() {
        let g = grid();
        let a = SparseOperator::weighted_shift(g, (1, -1, 0), |s| Complex64::new(0.5, s.1 as f64));
        assert_eq!(a.adjoint().adjoint(), a);
        let o = g.index((0, 0, 0)).unwrap();
        assert_eq!(
            a.adjoint().get(o, g.index((1, -1, 0)).unwrap()),
            Complex64::new(0.5, -0.0)
        );
    }

    #[test]
    fn apply_matches_entries() {
        let g = grid();
        let a = SparseOperator::weighted_shift(g, (0, 0, 1), |s| Complex64::new(s.2 as f64, 1.0));
        let mut x = vec![Complex64::new(0.0, 0.0); g.dim()];
        let c = g.index((1, 0, 0)).unwrap();
        x[c] = 1.0.into();
        let y = a.apply(&x);
        assert_eq!(y[g.index((1, 0, 1)).unwrap()], Complex64::new(0.0, 1.0));
    }
}
