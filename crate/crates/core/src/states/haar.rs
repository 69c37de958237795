use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hopf::{AlgebraElement, BasisMonomial, QParam};
use crate::rep::{build_generators, TruncGrid};

/// Closed-form Haar state of a monomial.
pub fn haar_monomial(q: &QParam, m: &BasisMonomial) -> f64 {
    if m.n != 0 || m.l != 0 || m.m != m.k {
        return 0.0;
    }
    (1.0 - q.abs_pow(2)) / (1.0 - q.abs_pow(2 * m.m as i64 + 2))
}

pub fn haar(q: &QParam, x: &AlgebraElement) -> Complex64 {
    x.terms().map(|(m, c)| c * haar_monomial(q, m)).sum()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HaarEstimate {
    pub value: Complex64,
    /// Bound on the omitted terms i > i_max.
    pub tail_bound: f64,
}

/// Truncated series (1-|q|²) Σ_{i≤i_max} |q|^{2i} ⟨e_{i,0,0}, π(x) e_{i,0,0}⟩
/// evaluated with the represented generators.
pub fn haar_numeric(q: &QParam, x: &AlgebraElement, i_max: usize) -> Result<HaarEstimate> {
    if i_max < 1 {
        return Err(Error::InvalidArgument("i_max must be at least 1".into()));
    }
    let (mut na, mut zb) = (0usize, 1usize);
    for (m, _) in x.terms() {
        na = na.max(m.n.unsigned_abs() as usize);
        zb = zb.max(m.max_exponent() as usize);
    }
    let grid = TruncGrid::new(i_max + na + 2, zb + 1, 0)?;
    let gens = build_generators(*q, grid);
    let r2 = q.abs_pow(2);
    let mut value = Complex64::new(0.0, 0.0);
    let mut weight = 1.0 - r2;
    for i in 0..=i_max as i64 {
        let idx = grid.index((i, 0, 0)).expect("diagonal site inside grid");
        let v = BTreeMap::from([(idx, Complex64::new(1.0, 0.0))]);
        let image = gens.apply_element(x, &v);
        value += image.get(&idx).copied().unwrap_or_default() * weight;
        weight *= r2;
    }
    let tail_bound = q.abs_pow(2 * (i_max as i64 + 1)) * x.norm1();
    Ok(HaarEstimate { value, tail_bound })
}
