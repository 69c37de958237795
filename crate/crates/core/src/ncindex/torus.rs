use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hopf::cis_pi;
use crate::rep::{SparseOperator, TruncGrid};

/// The two torus unitaries on the i = 0 slice of the grid:
/// u1 e_{j,k} = e_{j+1,k} and u2 e_{j,k} = e^{−2πiθj} e_{j,k+1}.
#[derive(Debug, Clone)]
pub struct TorusPair {
    pub theta: f64,
    pub u1: SparseOperator,
    pub u2: SparseOperator,
}

pub fn build_torus(theta: f64, z_cut: usize) -> Result<TorusPair> {
    if z_cut < 8 {
        return Err(Error::InvalidGrid(format!("z_cut {z_cut} below 8")));
    }
    let grid = TruncGrid::new(1, z_cut, 1)?;
    let u1 = SparseOperator::weighted_shift(grid, (0, 1, 0), |_| Complex64::new(1.0, 0.0));
    let u2 = SparseOperator::weighted_shift(grid, (0, 0, 1), |(_, j, _)| {
        cis_pi(-2.0 * theta * j as f64)
    });
    Ok(TorusPair { theta, u1, u2 })
}

impl TorusPair {
    pub fn grid(&self) -> TruncGrid {
        self.u1.grid()
    }

    /// Interior norm of u2 u1 − e^{−2πiθ} u1 u2.
    pub fn commutation_residual(&self) -> Result<f64> {
        let lhs = self.u2.matmul(&self.u1)?;
        let rhs = self.u1.matmul(&self.u2)?;
        Ok(lhs
            .combine(1.0.into(), &rhs, -cis_pi(-2.0 * self.theta))?
            .interior_norm()
            .upper)
    }

    /// Interior norm of u*u − 1 over both unitaries.
    pub fn unitarity_residual(&self) -> Result<f64> {
        let one = SparseOperator::identity(self.grid());
        let r1 = self
            .u1
            .adjoint()
            .matmul(&self.u1)?
            .sub(&one)?
            .interior_norm()
            .upper;
        let r2 = self
            .u2
            .adjoint()
            .matmul(&self.u2)?
            .sub(&one)?
            .interior_norm()
            .upper;
        Ok(r1.max(r2))
    }
}

/// Diagonal phase (j + ik)/|j + ik| on the grid of `build_torus`, 1 at the origin.
pub fn phase_operator(z_cut: usize) -> Result<SparseOperator> {
    let grid = TruncGrid::new(1, z_cut, 1)?;
    Ok(SparseOperator::diagonal(grid, |(_, j, k)| {
        phase_value(j, k)
    }))
}

pub fn phase_value(j: i64, k: i64) -> Complex64 {
    let v = Complex64::new(j as f64, k as f64);
    if v.norm() == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        v / v.norm()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutation_and_unitarity() {
        let t = build_torus(2f64.sqrt() - 1.0, 10).unwrap();
        assert!(t.commutation_residual().unwrap() < 1e-12);
        assert!(t.unitarity_residual().unwrap() < 1e-12);
        let t0 = build_torus(0.0, 10).unwrap();
        let c = t0.u1.commutator(&t0.u2).unwrap();
        assert_eq!(c.max_abs(), 0.0);
        assert!(build_torus(0.3, 4).is_err());
    }

    #[test]
    fn phase_examples() {
        assert!((phase_value(3, 4) - Complex64::new(0.6, 0.8)).norm() < 1e-15);
        assert_eq!(phase_value(-1, 0), Complex64::new(-1.0, 0.0));
        assert_eq!(phase_value(0, 0), Complex64::new(1.0, 0.0));
    }
}
