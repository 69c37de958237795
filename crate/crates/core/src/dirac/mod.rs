//! The T³-equivariant Dirac operator: a diagonal T on the grid, doubled
//! into the off-diagonal block operator with grading diag(1, -1).

mod block;
mod commutators;
mod kernel;
mod spectrum;

use num_complex::Complex64;

pub use block::BlockOperator;
pub use commutators::{commutator_check, commutator_closed_form, CommutatorForm};
pub use kernel::{derivation_kernel_scan, monomial_commutator_norm, KernelScan};
pub use spectrum::{counting_function, counting_slope, summability_report, SummabilityReport};

use crate::error::Result;
use crate::rep::{torus_unitary, Site, SparseOperator, TruncGrid};

/// d(i,j,k): i + j + ik for j ≥ 0 and -i + j + ik for j < 0.
pub fn dirac_eigenvalue(i: i64, j: i64, k: i64) -> Complex64 {
    debug_assert!(i >= 0);
    let re = if j >= 0 { i + j } else { -i + j };
    Complex64::new(re as f64, k as f64)
}

/// Diagonal data of T on a grid.
#[derive(Debug, Clone)]
pub struct DiracSpec {
    grid: TruncGrid,
    eigenvalues: Vec<Complex64>,
}

pub fn build_dirac(grid: TruncGrid) -> DiracSpec {
    let eigenvalues = grid
        .sites()
        .map(|(i, j, k)| dirac_eigenvalue(i, j, k))
        .collect();
    DiracSpec { grid, eigenvalues }
}

impl DiracSpec {
    pub fn grid(&self) -> TruncGrid {
        self.grid
    }

    pub fn eigenvalue(&self, idx: usize) -> Complex64 {
        self.eigenvalues[idx]
    }

    pub fn eigenvalue_at(&self, s: Site) -> Option<Complex64> {
        self.grid.index(s).map(|i| self.eigenvalues[i])
    }

    /// T as a diagonal sparse operator.
    pub fn t_operator(&self) -> SparseOperator {
        SparseOperator::diagonal(self.grid, |s| self.eigenvalues[self.grid.index(s).unwrap()])
    }

    /// T|T|^{-1}, with value 1 on the kernel vector.
    pub fn phase_operator(&self) -> SparseOperator {
        SparseOperator::diagonal(self.grid, |s| {
            let d = self.eigenvalues[self.grid.index(s).unwrap()];
            if d.norm() == 0.0 {
                Complex64::new(1.0, 0.0)
            } else {
                d / d.norm()
            }
        })
    }

    /// Diagonal of |𝒟|^{-1} on one spinor copy; None on the kernel.
    pub fn abs_inverse(&self, s: Site) -> Option<f64> {
        let d = self.eigenvalue_at(s)?;
        (d.norm() > 0.0).then(|| 1.0 / d.norm())
    }

    /// Sites where T vanishes.
    pub fn kernel(&self) -> Vec<Site> {
        (0..self.grid.dim())
            .filter(|&i| self.eigenvalues[i].norm() == 0.0)
            .map(|i| self.grid.site(i))
            .collect()
    }

    /// [[0, T*], [T, 0]]
    pub fn doubled(&self) -> BlockOperator {
        let t = self.t_operator();
        BlockOperator::new([[None, Some(t.adjoint())], [Some(t), None]], self.grid)
    }

    /// diag(1, -1)
    pub fn grading(&self) -> BlockOperator {
        let one = SparseOperator::identity(self.grid);
        BlockOperator::new(
            [
                [Some(one.clone()), None],
                [None, Some(one.scale((-1.0).into()))],
            ],
            self.grid,
        )
    }
}

/// Residuals of U T U* - T and [U ⊕ U, γ] for a torus point.
pub fn equivariance_check(spec: &DiracSpec, z: [Complex64; 3]) -> Result<f64> {
    let u = torus_unitary(z, spec.grid)?;
    let t = spec.t_operator();
    let r1 = u.matmul(&t)?.matmul(&u.adjoint())?.sub(&t)?.max_abs();
    let u2 = BlockOperator::diagonal(&u, spec.grid);
    let gamma = spec.grading();
    let r2 = u2.matmul(&gamma)?.sub(&gamma.matmul(&u2)?)?.max_abs();
    let d = spec.doubled();
    let r3 = u2.matmul(&d)?.matmul(&u2.adjoint())?.sub(&d)?.max_abs();
    Ok(r1.max(r2).max(r3))
}
