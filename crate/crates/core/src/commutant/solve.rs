use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hopf::{cis_pi, Generator, QParam};
use crate::rep::{generator_action, GeneratorSet, Site, TruncGrid};

/// Default cap on the number of unknowns (dimension squared).
pub const DEFAULT_CAP: usize = 4_000_000;

const CONSISTENCY_TOL: f64 = 1e-10;

/// `c1 T[u1] - c2 T[u2] = 0`, with unknowns indexed as row * dim + col.
/// A term whose coefficient is zero is absent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Equation {
    pub u1: Option<(usize, Complex64)>,
    pub u2: Option<(usize, Complex64)>,
}

/// Entries of [T, π(g)] = 0 for the six generators. Equations that would
/// reference an entry beyond a truncation cut are omitted; terms that vanish
/// because of the genuine boundary i = 0 are simply absent.
pub fn commutant_equations(gens: &GeneratorSet) -> Vec<Equation> {
    let grid = gens.grid();
    let dim = grid.dim();
    let q = gens.q();
    let mut eqs = Vec::new();
    for g in Generator::ALL {
        for y in 0..dim {
            let ys = grid.site(y);
            // second term: w(z) T[z, x] with π(g) e_z = w(z) e_y
            let src = source_of(q, &grid, g, ys);
            let second = match src {
                Source::Absent => None,
                Source::Cut => continue,
                Source::At(z, w) => Some((z, w)),
            };
            for x in 0..dim {
                let first = match generator_action(q, g, grid.site(x)) {
                    None => None,
                    Some((t, w)) => match grid.index(t) {
                        Some(t) => Some((y * dim + t, w)),
                        None => continue,
                    },
                };
                let second = second.map(|(z, w)| (z * dim + x, w));
                if first.is_some() || second.is_some() {
                    eqs.push(Equation {
                        u1: first,
                        u2: second,
                    });
                }
            }
        }
    }
    eqs
}

enum Source {
    Absent,
    Cut,
    At(usize, Complex64),
}

/// Locates z with π(g) e_z ∝ e_y.
fn source_of(q: &QParam, grid: &TruncGrid, g: Generator, y: Site) -> Source {
    let (s, _) = generator_action(q, g, (1, 0, 0)).expect("generators act on interior sites");
    let shift = (s.0 - 1, s.1, s.2);
    let z = (y.0 - shift.0, y.1 - shift.1, y.2 - shift.2);
    if z.0 < 0 {
        return Source::Absent;
    }
    let Some(zi) = grid.index(z) else {
        return Source::Cut;
    };
    match generator_action(q, g, z) {
        Some((_, w)) => Source::At(zi, w),
        None => Source::Absent,
    }
}

/// A commuting operator, normalized to unit largest entry.
#[derive(Debug, Clone, PartialEq)]
pub struct CommutantSolution {
    pub grid: TruncGrid,
    /// Nonzero entries keyed by (row, col).
    pub alpha: BTreeMap<(usize, usize), Complex64>,
}

impl CommutantSolution {
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.alpha.get(&(row, col)).copied().unwrap_or_default()
    }

    pub fn get_sites(&self, r: Site, c: Site) -> Option<Complex64> {
        Some(self.get(self.grid.index(r)?, self.grid.index(c)?))
    }
}

/// Union-find where each node stores T[node] = ratio * T[parent].
struct RatioForest {
    parent: Vec<usize>,
    ratio: Vec<Complex64>,
    dead: Vec<bool>,
}

impl RatioForest {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            ratio: vec![Complex64::new(1.0, 0.0); n],
            dead: vec![false; n],
        }
    }

    /// Root of u and the factor p with T[u] = p T[root].
    fn find(&mut self, u: usize) -> (usize, Complex64) {
        let mut path = Vec::new();
        let mut r = u;
        while self.parent[r] != r {
            path.push(r);
            r = self.parent[r];
        }
        // compress from the top down so each ratio becomes relative to r
        for &v in path.iter().rev() {
            let p = self.parent[v];
            if p != r {
                self.ratio[v] = self.ratio[v] * self.ratio[p];
            }
            self.parent[v] = r;
        }
        (
            r,
            if u == r {
                Complex64::new(1.0, 0.0)
            } else {
                self.ratio[u]
            },
        )
    }

    /// Imposes T[u1] = rho T[u2].
    fn link(&mut self, u1: usize, u2: usize, rho: Complex64) {
        let (r1, p1) = self.find(u1);
        let (r2, p2) = self.find(u2);
        if r1 == r2 {
            let scale = p1.norm() + (rho * p2).norm();
            if (p1 - rho * p2).norm() > CONSISTENCY_TOL * scale {
                self.dead[r1] = true;
            }
            return;
        }
        // T[r1] = (rho p2 / p1) T[r2]
        self.parent[r1] = r2;
        self.ratio[r1] = rho * p2 / p1;
        self.dead[r2] |= self.dead[r1];
    }

    fn kill(&mut self, u: usize) {
        let (r, _) = self.find(u);
        self.dead[r] = true;
    }
}

/// Basis of the solution space of [T, π(g)] = 0, g ∈ {a, a*, b, b*, D, D*}.
pub fn commutant_solve(gens: &GeneratorSet, cap: usize) -> Result<Vec<CommutantSolution>> {
    let grid = gens.grid();
    let dim = grid.dim();
    let size = dim.saturating_mul(dim);
    if size > cap {
        return Err(Error::CapExceeded { size, cap });
    }
    let eqs = commutant_equations(gens);

    let mut forest = RatioForest::new(size);
    for e in &eqs {
        match (e.u1, e.u2) {
            (Some((u1, c1)), Some((u2, c2))) => forest.link(u1, u2, c2 / c1),
            (Some((u, _)), None) | (None, Some((u, _))) => forest.kill(u),
            (None, None) => {}
        }
    }

    let mut components: BTreeMap<usize, Vec<(usize, Complex64)>> = BTreeMap::new();
    for u in 0..size {
        let (r, p) = forest.find(u);
        if !forest.dead[r] {
            components.entry(r).or_default().push((u, p));
        }
    }
    Ok(components
        .into_values()
        .map(|members| {
            let peak = members.iter().map(|(_, p)| p.norm()).fold(0.0, f64::max);
            let alpha = members
                .into_iter()
                .map(|(u, p)| ((u / dim, u % dim), p / peak))
                .collect();
            CommutantSolution { grid, alpha }
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct StructureResidual {
    /// Largest deviation from the predicted form, relative to the largest entry.
    pub max_deviation: f64,
    /// Largest entry with different first-leg indices, relative.
    pub off_diagonal: f64,
    /// Number of interior entry pairs compared.
    pub compared: usize,
}

/// Compares a solution with
/// T[(i,j,k),(i',j',k')] = δ_{ii'} e^{2πiθ k (j'-j)} T[(0,0,0),(0,j'-j,k'-k)]
/// over interior index pairs whose reference entry lies in the grid.
pub fn structure_residuals(sol: &CommutantSolution, q: &QParam) -> StructureResidual {
    let grid = sol.grid;
    let dim = grid.dim();
    let peak = sol.alpha.values().map(|v| v.norm()).fold(0.0, f64::max);
    if peak == 0.0 {
        return StructureResidual::default();
    }
    let interior: Vec<usize> = (0..dim).filter(|&i| grid.is_interior_index(i)).collect();
    let mut out = StructureResidual::default();
    for &y in &interior {
        let (iy, jy, ky) = grid.site(y);
        for &x in &interior {
            let (ix, jx, kx) = grid.site(x);
            let actual = sol.get(y, x);
            let predicted = if iy != ix {
                out.off_diagonal = out.off_diagonal.max(actual.norm() / peak);
                Complex64::new(0.0, 0.0)
            } else {
                let Some(reference) = sol.get_sites((0, 0, 0), (0, jx - jy, kx - ky)) else {
                    continue;
                };
                reference * cis_pi(2.0 * q.theta() * (ky * (jx - jy)) as f64)
            };
            out.compared += 1;
            out.max_deviation = out.max_deviation.max((actual - predicted).norm() / peak);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::build_generators;
    use nalgebra::DMatrix;

    fn dense_nullity(gens: &GeneratorSet) -> usize {
        let eqs = commutant_equations(gens);
        let n = gens.grid().dim().pow(2);
        let mut m = DMatrix::<Complex64>::zeros(eqs.len(), n);
        for (r, e) in eqs.iter().enumerate() {
            if let Some((u, c)) = e.u1 {
                m[(r, u)] += c;
            }
            if let Some((u, c)) = e.u2 {
                m[(r, u)] -= c;
            }
        }
        let gram = m.adjoint() * &m;
        let eig = gram.symmetric_eigen();
        eig.eigenvalues.iter().filter(|v| v.abs() < 1e-12).count()
    }

    #[test]
    fn matches_dense_nullspace() {
        for theta in [2f64.sqrt() - 1.0, 0.0] {
            let q = QParam::new(0.5, theta).unwrap();
            let gens = build_generators(q, TruncGrid::new(2, 1, 0).unwrap());
            let sols = commutant_solve(&gens, DEFAULT_CAP).unwrap();
            assert_eq!(sols.len(), dense_nullity(&gens), "theta {theta}");
        }
    }

    #[test]
    fn identity_and_structure() {
        let q = QParam::new(0.5, 2f64.sqrt() - 1.0).unwrap();
        let grid = TruncGrid::new(3, 2, 1).unwrap();
        let gens = build_generators(q, grid);
        let sols = commutant_solve(&gens, DEFAULT_CAP).unwrap();
        let dim = grid.dim();
        let identity = sols
            .iter()
            .find(|s| s.get(0, 0).norm() > 0.0 && s.alpha.len() == dim);
        assert!(identity.is_some());
        for s in &sols {
            let r = structure_residuals(s, &q);
            assert!(r.max_deviation < 1e-8, "{r:?}");
            assert_eq!(r.off_diagonal, 0.0);
        }
        let z = 2 * grid.z_cut() as i64;
        assert_eq!(sols.len() as i64, (2 * z + 1).pow(2));
    }

    #[test]
    fn perturbed_solution_fails() {
        let q = QParam::new(0.5, 2f64.sqrt() - 1.0).unwrap();
        let grid = TruncGrid::new(3, 2, 1).unwrap();
        let gens = build_generators(q, grid);
        let mut sol = commutant_solve(&gens, DEFAULT_CAP).unwrap().remove(0);
        let o = grid.index((1, 0, 0)).unwrap();
        *sol.alpha.entry((o, o)).or_default() += 0.01;
        assert!(structure_residuals(&sol, &q).max_deviation > 1e-3);
    }

    #[test]
    fn cap() {
        let q = QParam::new(0.5, 0.3).unwrap();
        let gens = build_generators(q, TruncGrid::new(3, 3, 0).unwrap());
        assert!(matches!(
            commutant_solve(&gens, 100),
            Err(Error::CapExceeded { .. })
        ));
    }
}
