use std::collections::BTreeMap;

use num_complex::Complex64;

use super::expectation::{expectation_closed_form, Which};
use crate::error::{Error, Result};
use crate::hopf::{multiply, star, AlgebraElement, BasisMonomial, QParam};
use crate::rep::{build_generators, TruncGrid};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeReport {
    pub n: usize,
    pub which: Which,
    /// ⟨ξ, π(x*x − E(x*x)) ξ⟩ for the unit test vector ξ.
    pub rayleigh_value: f64,
    /// Upper bound on the Pimsner–Popa constant.
    pub bound_c: f64,
    pub closed_form_value: f64,
    /// ⟨ξ, π(E(x*x)) ξ⟩ / ⟨ξ, π(x*x) ξ⟩ as measured.
    pub implied_bound: f64,
}

/// Σ_{j<n} D^j for φ, Σ_{j≤n} b^j for ψ.
pub fn probe_element(n: usize, which: Which) -> AlgebraElement {
    match which {
        Which::Phi => AlgebraElement::from_terms(
            (0..n).map(|j| (BasisMonomial::new(0, 0, 0, j as i32), 1.0.into())),
        ),
        Which::Psi => AlgebraElement::from_terms(
            (0..=n).map(|j| (BasisMonomial::new(0, j as u32, 0, 0), 1.0.into())),
        ),
    }
}

/// Unit vector Σ e_{0,0,i} (i < n) for φ, Σ e_{0,k,0} (k ≤ n) for ψ.
pub fn probe_vector(
    n: usize,
    which: Which,
    grid: &TruncGrid,
) -> Result<BTreeMap<usize, Complex64>> {
    let sites: Vec<_> = match which {
        Which::Phi => (0..n as i64).map(|i| (0, 0, i)).collect(),
        Which::Psi => (0..=n as i64).map(|k| (0, k, 0)).collect(),
    };
    let norm = (sites.len() as f64).sqrt();
    sites
        .into_iter()
        .map(|s| {
            grid.index(s)
                .map(|idx| (idx, Complex64::new(1.0 / norm, 0.0)))
                .ok_or_else(|| {
                    Error::TruncationTooSmall(format!("grid misses test vector site {s:?}"))
                })
        })
        .collect()
}

fn closed_forms(n: usize, which: Which) -> (f64, f64) {
    let nf = n as f64;
    match which {
        Which::Phi => {
            let s: f64 = (1..n).map(|j| ((n - j) as f64).powi(2)).sum();
            (2.0 / nf * s, 3.0 * nf / (2.0 * nf * nf + 1.0))
        }
        Which::Psi => {
            let s: f64 = (1..=n).map(|i| ((n - i + 1) as f64).powi(2)).sum();
            (
                2.0 / (nf + 1.0) * s,
                3.0 * (nf + 1.0) / (2.0 * nf * nf + 4.0 * nf + 3.0),
            )
        }
    }
}

fn inner(u: &BTreeMap<usize, Complex64>, v: &BTreeMap<usize, Complex64>) -> Complex64 {
    u.iter()
        .filter_map(|(i, a)| v.get(i).map(|b| a.conj() * b))
        .sum()
}

/// Probe on the automatically chosen grid (1, 2n+2).
pub fn watatani_probe(q: &QParam, n: usize, which: Which) -> Result<ProbeReport> {
    watatani_probe_on(q, n, which, TruncGrid::new(1, 2 * n + 2, 0)?)
}

pub fn watatani_probe_on(
    q: &QParam,
    n: usize,
    which: Which,
    grid: TruncGrid,
) -> Result<ProbeReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let xi = probe_vector(n, which, &grid)?;
    let x = probe_element(n, which);
    let xx = multiply(q, &star(q, &x)?, &x)?;
    let e = expectation_closed_form(&xx, which);
    let gens = build_generators(*q, grid);
    let full = inner(&xi, &gens.apply_element(&xx, &xi)).re;
    let cond = inner(&xi, &gens.apply_element(&e, &xi)).re;
    let (closed_form_value, bound_c) = closed_forms(n, which);
    Ok(ProbeReport {
        n,
        which,
        rayleigh_value: full - cond,
        bound_c,
        closed_form_value,
        implied_bound: cond / full,
    })
}
