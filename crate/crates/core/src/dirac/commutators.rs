use num_complex::Complex64;

use super::DiracSpec;
use crate::error::Result;
use crate::hopf::{AlgebraElement, Generator, QParam};
use crate::rep::{monomial_operator, GeneratorSet, Site, SparseOperator, TruncGrid};

/// [T, g] as a weighted shift e_s ↦ weight(s) e_{s+shift}.
#[derive(Debug, Clone, Copy)]
pub struct CommutatorForm {
    pub generator: Generator,
    pub shift: Site,
    q: QParam,
}

pub fn commutator_closed_form(g: Generator, q: &QParam) -> CommutatorForm {
    let shift = match g {
        Generator::A => (1, 0, 0),
        Generator::AStar => (-1, 0, 0),
        Generator::B => (0, 1, 0),
        Generator::BStar => (0, -1, 0),
        Generator::D => (0, 0, 1),
        Generator::DStar => (0, 0, -1),
    };
    CommutatorForm {
        generator: g,
        shift,
        q: *q,
    }
}

impl CommutatorForm {
    pub fn weight(&self, (i, j, _k): Site) -> Complex64 {
        let q = &self.q;
        let r2 = q.modulus() * q.modulus();
        let sign = if j >= 0 { 1.0 } else { -1.0 };
        let i_unit = Complex64::new(0.0, 1.0);
        match self.generator {
            Generator::A => Complex64::new(sign * (1.0 - r2.powi(i as i32 + 1)).sqrt(), 0.0),
            Generator::AStar => Complex64::new(-sign * (1.0 - r2.powi(i as i32)).sqrt(), 0.0),
            Generator::B => q.q_pow(i) * if j == -1 { (2 * i + 1) as f64 } else { 1.0 },
            Generator::BStar => -q.qbar_pow(i) * if j == 0 { (2 * i + 1) as f64 } else { 1.0 },
            Generator::D => i_unit * crate::hopf::cis_pi(-2.0 * q.theta() * j as f64),
            Generator::DStar => -i_unit * crate::hopf::cis_pi(2.0 * q.theta() * j as f64),
        }
    }

    pub fn to_operator(&self, grid: TruncGrid) -> SparseOperator {
        SparseOperator::weighted_shift(grid, self.shift, |s| self.weight(s))
    }

    /// sup |weight| over the grid sites whose image stays in the grid.
    pub fn sup_weight(&self, grid: TruncGrid) -> f64 {
        self.to_operator(grid).max_abs()
    }
}

fn letters(m: &crate::hopf::BasisMonomial) -> Vec<Generator> {
    let mut w = Vec::new();
    let ag = if m.n >= 0 {
        Generator::A
    } else {
        Generator::AStar
    };
    let dg = if m.l >= 0 {
        Generator::D
    } else {
        Generator::DStar
    };
    w.extend(std::iter::repeat_n(ag, m.n.unsigned_abs() as usize));
    w.extend(std::iter::repeat_n(Generator::B, m.m as usize));
    w.extend(std::iter::repeat_n(Generator::BStar, m.k as usize));
    w.extend(std::iter::repeat_n(dg, m.l.unsigned_abs() as usize));
    w
}

/// [T, π(x)] assembled from the closed forms by the Leibniz rule.
pub fn leibniz_commutator(x: &AlgebraElement, gens: &GeneratorSet) -> Result<SparseOperator> {
    let grid = gens.grid();
    let mut out = SparseOperator::zero(grid);
    for (m, c) in x.terms() {
        let w = letters(m);
        for pos in 0..w.len() {
            let mut op = SparseOperator::identity(grid);
            for (t, g) in w.iter().enumerate() {
                let factor = if t == pos {
                    commutator_closed_form(*g, gens.q()).to_operator(grid)
                } else {
                    gens.op(*g).clone()
                };
                op = op.matmul(&factor)?;
            }
            out = out.combine(1.0.into(), &op, *c)?;
        }
    }
    Ok(out)
}

/// Interior max-entry difference between [T, π(x)] and its Leibniz
/// composition of closed forms.
pub fn commutator_check(x: &AlgebraElement, gens: &GeneratorSet, spec: &DiracSpec) -> Result<f64> {
    let t = spec.t_operator();
    let pix = monomial_operator(x, gens)?;
    let matrix = t.commutator(&pix)?;
    let diff = matrix.sub(&leibniz_commutator(x, gens)?)?;
    let grid = gens.grid();
    Ok(diff
        .entries()
        .filter(|(_, c, _)| grid.is_interior_index(*c))
        .map(|(_, _, v)| v.norm())
        .fold(0.0, f64::max))
}
