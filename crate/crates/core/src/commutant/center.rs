use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hopf::{BasisMonomial, Generator, QParam};
use crate::rep::{build_generators, GeneratorSet, TruncGrid};

/// Relative commutator size below which a direction counts as central.
pub const RANK_THRESHOLD: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct CenterProbe {
    pub dimension: usize,
    pub monomials: Vec<BasisMonomial>,
    /// sqrt of the generalized eigenvalues of (commutator Gram, operator
    /// Gram), ascending: min ‖[X, π(g)]‖ / ‖X‖ over successive directions.
    pub singular_values: Vec<f64>,
    /// Smallest eigenvalue of the normalized operator Gram matrix.
    pub operator_gram_min: f64,
}

/// Sparse column entries keyed by (generator slot, row, col).
type Entries = Vec<((u8, usize, usize), usize, Complex64)>;

fn assemble(gens: &GeneratorSet, monomials: &[BasisMonomial]) -> (Entries, Entries) {
    let grid = gens.grid();
    let mut comm = Vec::new();
    let mut ops = Vec::new();
    let interior: Vec<usize> = (0..grid.dim())
        .filter(|&c| grid.is_interior_index(c))
        .collect();
    for (mu, m) in monomials.iter().enumerate() {
        for &x in &interior {
            if let Some((r, w)) = gens.act_monomial(m, x) {
                ops.push(((0, r, x), mu, w));
            }
            for (slot, g) in Generator::ALL.iter().enumerate() {
                // π(μ)π(g) e_x − π(g)π(μ) e_x
                if let Some((y, wg)) = gens.act(*g, x) {
                    if let Some((r, wm)) = gens.act_monomial(m, y) {
                        comm.push(((slot as u8, r, x), mu, wm * wg));
                    }
                }
                if let Some((y, wm)) = gens.act_monomial(m, x) {
                    if let Some((r, wg)) = gens.act(*g, y) {
                        comm.push(((slot as u8, r, x), mu, -wm * wg));
                    }
                }
            }
        }
    }
    (comm, ops)
}

fn gram(mut entries: Entries, n: usize) -> DMatrix<Complex64> {
    entries.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut g = DMatrix::<Complex64>::zeros(n, n);
    let mut start = 0;
    while start < entries.len() {
        let mut end = start;
        while end < entries.len() && entries[end].0 == entries[start].0 {
            end += 1;
        }
        // merge duplicate monomials within the key
        let mut row: Vec<(usize, Complex64)> = Vec::new();
        for e in &entries[start..end] {
            match row.last_mut() {
                Some((mu, v)) if *mu == e.1 => *v += e.2,
                _ => row.push((e.1, e.2)),
            }
        }
        for (i, vi) in &row {
            for (j, vj) in &row {
                g[(*i, *j)] += vi.conj() * vj;
            }
        }
        start = end;
    }
    g
}

/// Generalized spectrum of the commutator Gram against the operator Gram.
pub fn center_probe(q: &QParam, grid: TruncGrid, m_cut: u32) -> Result<CenterProbe> {
    let margin = m_cut as usize + 1;
    let grid = grid
        .with_margin(margin.max(grid.interior_margin()))
        .map_err(|_| {
            Error::InvalidGrid(format!(
                "grid too small for monomials of degree {m_cut} (needs margin {margin})"
            ))
        })?;
    let gens = build_generators(*q, grid);
    let monomials = BasisMonomial::cube(m_cut);
    let n = monomials.len();
    let (comm, ops) = assemble(&gens, &monomials);
    let a = gram(comm, n);
    let p = gram(ops, n);

    let scale: Vec<f64> = (0..n).map(|i| 1.0 / p[(i, i)].re.sqrt()).collect();
    if scale.iter().any(|s| !s.is_finite()) {
        return Err(Error::LinearAlgebra(
            "a monomial vanishes on every interior column".into(),
        ));
    }
    let s = DMatrix::<Complex64>::from_diagonal(&nalgebra::DVector::from_iterator(
        n,
        scale.iter().map(|v| Complex64::new(*v, 0.0)),
    ));
    let a = &s * a * &s;
    let p = &s * p * &s;
    let operator_gram_min = p
        .clone()
        .symmetric_eigenvalues()
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);
    let chol = p.cholesky().ok_or_else(|| {
        Error::LinearAlgebra("represented monomials are linearly dependent on the grid".into())
    })?;
    let l = chol.l();
    let x = l
        .solve_lower_triangular(&a)
        .ok_or_else(|| Error::LinearAlgebra("triangular solve".into()))?;
    let c = l
        .solve_lower_triangular(&x.adjoint())
        .ok_or_else(|| Error::LinearAlgebra("triangular solve".into()))?
        .adjoint();
    let c = (&c + c.adjoint()) * Complex64::new(0.5, 0.0);
    let mut singular_values: Vec<f64> = c
        .symmetric_eigenvalues()
        .iter()
        .map(|v| v.max(0.0).sqrt())
        .collect();
    singular_values.sort_by(f64::total_cmp);
    let dimension = singular_values
        .iter()
        .filter(|v| **v <= RANK_THRESHOLD)
        .count();
    Ok(CenterProbe {
        dimension,
        monomials,
        singular_values,
        operator_gram_min,
    })
}

pub fn center_dimension(q: &QParam, grid: TruncGrid, m_cut: u32) -> Result<usize> {
    Ok(center_probe(q, grid, m_cut)?.dimension)
}
