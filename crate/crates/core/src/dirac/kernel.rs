use rayon::prelude::*;

use super::DiracSpec;
use crate::error::{Error, Result};
use crate::hopf::BasisMonomial;
use crate::rep::GeneratorSet;

/// Threshold below which a commutator counts as zero.
pub const KERNEL_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct KernelScan {
    pub max_degree: u32,
    /// Monomials whose commutator with T vanishes, in sorted order.
    pub kernel: Vec<BasisMonomial>,
    /// Every scanned monomial with its interior commutator norm.
    pub norms: Vec<(BasisMonomial, f64)>,
}

impl KernelScan {
    /// Smallest norm among monomials outside the kernel.
    pub fn min_outside(&self) -> Option<(BasisMonomial, f64)> {
        self.norms
            .iter()
            .filter(|(_, n)| *n > KERNEL_THRESHOLD)
            .copied()
            .min_by(|a, b| a.1.total_cmp(&b.1))
    }
}

/// ‖[T, π(m)]‖ over interior columns. The commutator of a monomial is a
/// single weighted shift, so its norm is the largest entry.
pub fn monomial_commutator_norm(m: &BasisMonomial, gens: &GeneratorSet, spec: &DiracSpec) -> f64 {
    let grid = gens.grid();
    (0..grid.dim())
        .into_par_iter()
        .filter(|&c| grid.is_interior_index(c))
        .filter_map(|c| {
            let (r, w) = gens.act_monomial(m, c)?;
            Some(((spec.eigenvalue(r) - spec.eigenvalue(c)) * w).norm())
        })
        .reduce(|| 0.0, f64::max)
}

/// Scans all monomials with |n|, m, k, |l| ≤ max_degree.
pub fn derivation_kernel_scan(
    max_degree: u32,
    gens: &GeneratorSet,
    spec: &DiracSpec,
) -> Result<KernelScan> {
    if max_degree > 4 {
        return Err(Error::InvalidArgument(format!(
            "max_degree {max_degree} exceeds 4"
        )));
    }
    let grid = gens.grid();
    if grid.interior_margin() < 2 * max_degree as usize || spec.grid() != grid {
        return Err(Error::InvalidGrid(format!(
            "kernel scan at degree {max_degree} needs a shared grid with interior margin at least {}",
            2 * max_degree
        )));
    }
    let norms: Vec<_> = BasisMonomial::cube(max_degree)
        .into_iter()
        .map(|m| (m, monomial_commutator_norm(&m, gens, spec)))
        .collect();
    let kernel = norms
        .iter()
        .filter(|(_, n)| *n <= KERNEL_THRESHOLD)
        .map(|(m, _)| *m)
        .collect();
    Ok(KernelScan {
        max_degree,
        kernel,
        norms,
    })
}
