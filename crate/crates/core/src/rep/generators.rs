use std::collections::BTreeMap;

use num_complex::Complex64;

use super::grid::{Site, TruncGrid};
use super::sparse::{NormEstimate, SparseOperator};
use crate::error::{Error, Result};
use crate::hopf::{AlgebraElement, BasisMonomial, Generator, QParam};

/// Image of e_s under a generator, before truncation: (target, weight).
/// Returns None when the image is zero.
pub fn generator_action(q: &QParam, g: Generator, (i, j, k): Site) -> Option<(Site, Complex64)> {
    let r = q.modulus();
    let phase = |t: i64| crate::hopf::cis_pi(-2.0 * q.theta() * t as f64);
    match g {
        Generator::A => Some((
            (i + 1, j, k),
            Complex64::new((1.0 - r.powi(2 * i as i32 + 2)).sqrt(), 0.0),
        )),
        Generator::AStar => (i > 0).then(|| {
            (
                (i - 1, j, k),
                Complex64::new((1.0 - r.powi(2 * i as i32)).sqrt(), 0.0),
            )
        }),
        Generator::B => Some(((i, j + 1, k), q.q_pow(i))),
        Generator::BStar => Some(((i, j - 1, k), q.qbar_pow(i))),
        Generator::D => Some(((i, j, k + 1), phase(j))),
        Generator::DStar => Some(((i, j, k - 1), phase(-j))),
    }
}

/// The represented generators on a truncated grid.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    q: QParam,
    grid: TruncGrid,
    op_a: SparseOperator,
    op_b: SparseOperator,
    op_d: SparseOperator,
    op_a_star: SparseOperator,
    op_b_star: SparseOperator,
    op_d_star: SparseOperator,
}

fn shift_operator(q: &QParam, grid: TruncGrid, g: Generator) -> SparseOperator {
    let mut t = Vec::with_capacity(grid.dim());
    for c in 0..grid.dim() {
        if let Some((s, w)) = generator_action(q, g, grid.site(c)) {
            if let Some(r) = grid.index(s) {
                t.push((r, c, w));
            }
        }
    }
    SparseOperator::from_triplets(grid, t)
}

pub fn build_generators(q: QParam, grid: TruncGrid) -> GeneratorSet {
    let op_a = shift_operator(&q, grid, Generator::A);
    let op_b = shift_operator(&q, grid, Generator::B);
    let op_d = shift_operator(&q, grid, Generator::D);
    GeneratorSet {
        op_a_star: op_a.adjoint(),
        op_b_star: op_b.adjoint(),
        op_d_star: op_d.adjoint(),
        op_a,
        op_b,
        op_d,
        q,
        grid,
    }
}

impl GeneratorSet {
    pub fn q(&self) -> &QParam {
        &self.q
    }

    pub fn grid(&self) -> TruncGrid {
        self.grid
    }

    pub fn op(&self, g: Generator) -> &SparseOperator {
        match g {
            Generator::A => &self.op_a,
            Generator::AStar => &self.op_a_star,
            Generator::B => &self.op_b,
            Generator::BStar => &self.op_b_star,
            Generator::D => &self.op_d,
            Generator::DStar => &self.op_d_star,
        }
    }

    /// Generator applied to one basis vector of the grid.
    pub fn act(&self, g: Generator, idx: usize) -> Option<(usize, Complex64)> {
        let (s, w) = generator_action(&self.q, g, self.grid.site(idx))?;
        Some((self.grid.index(s)?, w))
    }

    /// Monomial applied to one basis vector, letter by letter from the right.
    pub fn act_monomial(&self, m: &BasisMonomial, idx: usize) -> Option<(usize, Complex64)> {
        let mut cur = (idx, Complex64::new(1.0, 0.0));
        for (g, e) in monomial_letters(m).into_iter().rev() {
            for _ in 0..e {
                let (next, w) = self.act(g, cur.0)?;
                cur = (next, cur.1 * w);
            }
        }
        Some(cur)
    }

    /// π(x) applied to a sparse vector.
    pub fn apply_element(
        &self,
        x: &AlgebraElement,
        v: &BTreeMap<usize, Complex64>,
    ) -> BTreeMap<usize, Complex64> {
        let mut out = BTreeMap::new();
        for (m, c) in x.terms() {
            for (idx, a) in v {
                if let Some((r, w)) = self.act_monomial(m, *idx) {
                    *out.entry(r).or_insert(Complex64::new(0.0, 0.0)) += c * a * w;
                }
            }
        }
        out
    }
}

/// Letter blocks of a monomial in normal order.
fn monomial_letters(m: &BasisMonomial) -> [(Generator, u32); 4] {
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
    [
        (ag, m.n.unsigned_abs()),
        (Generator::B, m.m),
        (Generator::BStar, m.k),
        (dg, m.l.unsigned_abs()),
    ]
}

/// π(x) as a product of represented generators, extended linearly.
pub fn monomial_operator(x: &AlgebraElement, gens: &GeneratorSet) -> Result<SparseOperator> {
    let mut out = SparseOperator::zero(gens.grid);
    for (m, c) in x.terms() {
        let mut op = SparseOperator::identity(gens.grid);
        for (g, e) in monomial_letters(m) {
            for _ in 0..e {
                op = op.matmul(gens.op(g))?;
            }
        }
        out = out.combine(1.0.into(), &op, *c)?;
    }
    Ok(out)
}

/// Interior norm estimates of the eight defining relations.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationResiduals {
    pub entries: Vec<(&'static str, NormEstimate)>,
}

impl RelationResiduals {
    pub fn max_upper(&self) -> f64 {
        self.entries
            .iter()
            .map(|(_, e)| e.upper)
            .fold(0.0, f64::max)
    }
}

pub fn relation_residuals(gens: &GeneratorSet) -> Result<RelationResiduals> {
    let q = gens.q;
    let (a, a_s, b, b_s, d, d_s) = (
        gens.op(Generator::A),
        gens.op(Generator::AStar),
        gens.op(Generator::B),
        gens.op(Generator::BStar),
        gens.op(Generator::D),
        gens.op(Generator::DStar),
    );
    let one = SparseOperator::identity(gens.grid);
    let c1 = Complex64::new(1.0, 0.0);
    let mut entries = Vec::with_capacity(8);
    entries.push((
        "ba = q ab",
        b.matmul(a)?.combine(c1, &a.matmul(b)?, -q.q())?,
    ));
    entries.push((
        "a*b = q ba*",
        a_s.matmul(b)?.combine(c1, &b.matmul(a_s)?, -q.q())?,
    ));
    entries.push(("bb* = b*b", b.commutator(b_s)?));
    entries.push((
        "aa* + bb* = 1",
        a.matmul(a_s)?.add(&b.matmul(b_s)?)?.sub(&one)?,
    ));
    entries.push(("aD = Da", a.commutator(d)?));
    entries.push((
        "bD = c Db",
        b.matmul(d)?.combine(c1, &d.matmul(b)?, -q.c_pow(1))?,
    ));
    let dd = d.matmul(d_s)?.sub(&one)?;
    let dd2 = d_s.matmul(d)?.sub(&one)?;
    entries.push((
        "a*a + |q|^2 b*b = 1",
        a_s.matmul(a)?
            .combine(c1, &b_s.matmul(b)?, q.abs_pow(2).into())?
            .sub(&one)?,
    ));
    let mut out: Vec<(&'static str, NormEstimate)> = entries
        .into_iter()
        .map(|(name, op)| (name, op.interior_norm()))
        .collect();
    let (e1, e2) = (dd.interior_norm(), dd2.interior_norm());
    out.insert(
        6,
        (
            "DD* = D*D = 1",
            NormEstimate {
                lower: e1.lower.max(e2.lower),
                upper: e1.upper.max(e2.upper),
            },
        ),
    );
    Ok(RelationResiduals { entries: out })
}

/// The diagonal unitary e_{i,j,k} ↦ z1^i z2^j z3^k e_{i,j,k}.
pub fn torus_unitary(z: [Complex64; 3], grid: TruncGrid) -> Result<SparseOperator> {
    for zi in z {
        if (zi.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::NonUnitary(zi.norm()));
        }
    }
    Ok(SparseOperator::diagonal(grid, |(i, j, k)| {
        z[0].powi(i as i32) * z[1].powi(j as i32) * z[2].powi(k as i32)
    }))
}

/// Max entrywise deviation of U π(g) U* from the rotated generator, over
/// a, b, D.
pub fn covariance_residual(gens: &GeneratorSet, z: [Complex64; 3]) -> Result<f64> {
    let u = torus_unitary(z, gens.grid)?;
    let u_s = u.adjoint();
    let mut worst: f64 = 0.0;
    for (g, zg) in [
        (Generator::A, z[0]),
        (Generator::B, z[1]),
        (Generator::D, z[2]),
    ] {
        let lhs = u.matmul(gens.op(g))?.matmul(&u_s)?;
        let diff = lhs.combine(1.0.into(), gens.op(g), -zg)?;
        worst = worst.max(diff.max_abs());
    }
    Ok(worst)
}
