use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::qparam::QParam;
use crate::error::{Error, Result};

/// Coefficients below this magnitude are dropped.
pub const PRUNE: f64 = 1e-14;

/// The normal-ordered word `a^n b^m (b*)^k D^l`, with `a*` powers for
/// negative `n` and `D*` powers for negative `l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisMonomial {
    pub n: i32,
    pub m: u32,
    pub k: u32,
    pub l: i32,
}

impl BasisMonomial {
    pub const ONE: BasisMonomial = BasisMonomial {
        n: 0,
        m: 0,
        k: 0,
        l: 0,
    };

    pub const fn new(n: i32, m: u32, k: u32, l: i32) -> Self {
        Self { n, m, k, l }
    }

    pub fn degree(&self) -> u32 {
        self.n.unsigned_abs() + self.m + self.k + self.l.unsigned_abs()
    }

    /// Largest of |n|, m, k, |l|.
    pub fn max_exponent(&self) -> u32 {
        self.n
            .unsigned_abs()
            .max(self.m)
            .max(self.k)
            .max(self.l.unsigned_abs())
    }

    /// All monomials with |n|, m, k, |l| <= bound, in sorted order.
    pub fn cube(bound: u32) -> Vec<BasisMonomial> {
        let b = bound as i32;
        let mut out = Vec::new();
        for n in -b..=b {
            for m in 0..=bound {
                for k in 0..=bound {
                    for l in -b..=b {
                        out.push(BasisMonomial::new(n, m, k, l));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for BasisMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{},{},{},{}>", self.n, self.m, self.k, self.l)
    }
}

/// A finite linear combination of PBW monomials.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AlgebraElement {
    terms: BTreeMap<BasisMonomial, Complex64>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BasisMonomial::ONE)
    }

    pub fn monomial(m: BasisMonomial) -> Self {
        Self::term(m, Complex64::new(1.0, 0.0))
    }

    pub fn term(m: BasisMonomial, c: Complex64) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (BasisMonomial, Complex64)>>(terms: I) -> Self {
        let mut e = Self::zero();
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn a() -> Self {
        Self::monomial(BasisMonomial::new(1, 0, 0, 0))
    }
    pub fn a_star() -> Self {
        Self::monomial(BasisMonomial::new(-1, 0, 0, 0))
    }
    pub fn b() -> Self {
        Self::monomial(BasisMonomial::new(0, 1, 0, 0))
    }
    pub fn b_star() -> Self {
        Self::monomial(BasisMonomial::new(0, 0, 1, 0))
    }
    pub fn d() -> Self {
        Self::monomial(BasisMonomial::new(0, 0, 0, 1))
    }
    pub fn d_star() -> Self {
        Self::monomial(BasisMonomial::new(0, 0, 0, -1))
    }

    pub fn add_term(&mut self, m: BasisMonomial, c: Complex64) {
        let entry = self.terms.entry(m).or_insert(Complex64::new(0.0, 0.0));
        *entry += c;
        if entry.norm() < PRUNE {
            self.terms.remove(&m);
        }
    }

    pub fn coeff(&self, m: &BasisMonomial) -> Complex64 {
        self.terms.get(m).copied().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisMonomial, &Complex64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of coefficient magnitudes.
    pub fn norm1(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).sum()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, v)| (*m, v * c)))
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn retain(&self, mut keep: impl FnMut(&BasisMonomial) -> bool) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (*m, *c))
                .collect(),
        }
    }

    pub(crate) fn check_finite(self, what: &str) -> Result<Self> {
        if self
            .terms
            .values()
            .all(|c| c.re.is_finite() && c.im.is_finite())
        {
            Ok(self)
        } else {
            Err(Error::CoefficientOverflow(what.to_string()))
        }
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({:.6}{:+.6}i){}", c.re, c.im, m)?;
        }
        Ok(())
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (m, c) in rhs.terms() {
            out.add_term(*m, *c);
        }
        out
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (m, c) in rhs.terms() {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul<Complex64> for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: Complex64) -> AlgebraElement {
        self.scale(rhs)
    }
}

/// Coefficients of prod_t (1 - w_t X) as a polynomial in X.
fn linear_product(weights: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut poly = vec![1.0];
    for w in weights {
        let mut next = vec![0.0; poly.len() + 1];
        for (j, c) in poly.iter().enumerate() {
            next[j] += c;
            next[j + 1] -= w * c;
        }
        poly = next;
    }
    poly
}

/// Product of two PBW monomials in closed form.
pub fn monomial_product(
    q: &QParam,
    x: &BasisMonomial,
    y: &BasisMonomial,
) -> Vec<(BasisMonomial, Complex64)> {
    let (l1, m2, k2, n2) = (x.l as i64, y.m as i64, y.k as i64, y.n as i64);
    let phase = q.c_pow(l1 * (k2 - m2)) * q.q_pow(x.m as i64 * n2) * q.qbar_pow(x.k as i64 * n2);

    let (n1, n2) = (x.n, y.n);
    let (n, poly) = if n1 >= 0 && n2 < 0 {
        // a^n a*^p: each cancelled pair contributes (1 - |q|^{-2(p-t)} bb*)
        let p = -n2;
        let s = n1.min(p);
        (
            n1 + n2,
            linear_product((1..=s).map(|t| q.abs_pow(-2 * (p - t) as i64))),
        )
    } else if n1 < 0 && n2 > 0 {
        // a*^p a^n: each cancelled pair contributes (1 - |q|^{2(n-t)} bb*)
        let p = -n1;
        let s = p.min(n2);
        (
            n1 + n2,
            linear_product((0..s).map(|t| q.abs_pow(2 * (n2 - t) as i64))),
        )
    } else {
        (n1 + n2, vec![1.0])
    };

    poly.iter()
        .enumerate()
        .filter(|(_, c)| **c != 0.0)
        .map(|(j, c)| {
            let j = j as u32;
            (
                BasisMonomial::new(n, x.m + y.m + j, x.k + y.k + j, x.l + y.l),
                phase * *c,
            )
        })
        .collect()
}

/// Product in the PBW normal form.
pub fn multiply(q: &QParam, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
    let mut out = AlgebraElement::zero();
    for (mx, cx) in x.terms() {
        for (my, cy) in y.terms() {
            for (m, c) in monomial_product(q, mx, my) {
                out.add_term(m, c * cx * cy);
            }
        }
    }
    out.check_finite("algebra elements")
}

/// Integer power by repeated multiplication.
pub fn power(q: &QParam, x: &AlgebraElement, e: u32) -> Result<AlgebraElement> {
    let mut out = AlgebraElement::one();
    for _ in 0..e {
        out = multiply(q, &out, x)?;
    }
    Ok(out)
}

/// Antilinear, antimultiplicative involution.
pub fn star(q: &QParam, x: &AlgebraElement) -> Result<AlgebraElement> {
    let mut out = AlgebraElement::zero();
    for (m, c) in x.terms() {
        // (a^n b^m b*^k D^l)* = D^-l b^k b*^m a^-n
        let d = AlgebraElement::monomial(BasisMonomial::new(0, 0, 0, -m.l));
        let bb = AlgebraElement::monomial(BasisMonomial::new(0, m.k, m.m, 0));
        let a = AlgebraElement::monomial(BasisMonomial::new(-m.n, 0, 0, 0));
        let t = multiply(q, &multiply(q, &d, &bb)?, &a)?;
        out = &out + &t.scale(c.conj());
    }
    Ok(out)
}
