use num_complex::Complex64;

use crate::error::Result;
use crate::rep::{SparseOperator, TruncGrid};

/// 2×2 block operator on the doubled space; missing blocks are zero.
#[derive(Debug, Clone)]
pub struct BlockOperator {
    blocks: [[Option<SparseOperator>; 2]; 2],
    grid: TruncGrid,
}

impl BlockOperator {
    pub fn new(blocks: [[Option<SparseOperator>; 2]; 2], grid: TruncGrid) -> Self {
        Self { blocks, grid }
    }

    /// diag(x, x)
    pub fn diagonal(x: &SparseOperator, grid: TruncGrid) -> Self {
        Self::new([[Some(x.clone()), None], [None, Some(x.clone())]], grid)
    }

    pub fn block(&self, r: usize, c: usize) -> Option<&SparseOperator> {
        self.blocks[r][c].as_ref()
    }

    fn map2(
        &self,
        other: &Self,
        f: impl Fn(Option<&SparseOperator>, Option<&SparseOperator>) -> Result<Option<SparseOperator>>,
    ) -> Result<Self> {
        let mut out: [[Option<SparseOperator>; 2]; 2] = Default::default();
        for (r, row) in out.iter_mut().enumerate() {
            for (c, slot) in row.iter_mut().enumerate() {
                *slot = f(self.block(r, c), other.block(r, c))?;
            }
        }
        Ok(Self::new(out, self.grid))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.map2(other, |a, b| match (a, b) {
            (Some(a), Some(b)) => a.add(b).map(Some),
            (Some(a), None) => Ok(Some(a.clone())),
            (None, Some(b)) => Ok(Some(b.clone())),
            (None, None) => Ok(None),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.map2(other, |a, b| match (a, b) {
            (Some(a), Some(b)) => a.sub(b).map(Some),
            (Some(a), None) => Ok(Some(a.clone())),
            (None, Some(b)) => Ok(Some(b.scale(Complex64::new(-1.0, 0.0)))),
            (None, None) => Ok(None),
        })
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        let mut out: [[Option<SparseOperator>; 2]; 2] = Default::default();
        for (r, row) in out.iter_mut().enumerate() {
            for (c, slot) in row.iter_mut().enumerate() {
                for k in 0..2 {
                    if let (Some(a), Some(b)) = (self.block(r, k), other.block(k, c)) {
                        let p = a.matmul(b)?;
                        *slot = Some(match slot.take() {
                            Some(acc) => acc.add(&p)?,
                            None => p,
                        });
                    }
                }
            }
        }
        Ok(Self::new(out, self.grid))
    }

    pub fn adjoint(&self) -> Self {
        let t = |r: usize, c: usize| self.block(c, r).map(|b| b.adjoint());
        Self::new([[t(0, 0), t(0, 1)], [t(1, 0), t(1, 1)]], self.grid)
    }

    pub fn max_abs(&self) -> f64 {
        self.blocks
            .iter()
            .flatten()
            .flatten()
            .map(|b| b.max_abs())
            .fold(0.0, f64::max)
    }
}
