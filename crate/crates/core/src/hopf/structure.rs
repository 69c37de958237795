use num_complex::Complex64;
use rand::Rng;

use super::element::{multiply, power, star, AlgebraElement, BasisMonomial};
use super::qparam::QParam;
use super::tensor::TensorElement;
use crate::error::Result;

fn mono(n: i32, m: u32, k: u32, l: i32) -> AlgebraElement {
    AlgebraElement::monomial(BasisMonomial::new(n, m, k, l))
}

/// Coproduct of a single generator letter.
fn delta_generator(q: &QParam, g: Generator) -> Result<TensorElement> {
    let (a, a_s, b, b_s, d, d_s) = (
        AlgebraElement::a(),
        AlgebraElement::a_star(),
        AlgebraElement::b(),
        AlgebraElement::b_star(),
        AlgebraElement::d(),
        AlgebraElement::d_star(),
    );
    Ok(match g {
        Generator::A => {
            let db_s = multiply(q, &d, &b_s)?;
            &TensorElement::simple(&a, &a) - &TensorElement::simple(&b, &db_s).scale(q.qbar_pow(1))
        }
        Generator::AStar => {
            let bd_s = multiply(q, &b, &d_s)?;
            &TensorElement::simple(&a_s, &a_s)
                - &TensorElement::simple(&b_s, &bd_s).scale(q.q_pow(1))
        }
        Generator::B => {
            let da_s = multiply(q, &d, &a_s)?;
            &TensorElement::simple(&a, &b) + &TensorElement::simple(&b, &da_s)
        }
        Generator::BStar => {
            let ad_s = multiply(q, &a, &d_s)?;
            &TensorElement::simple(&a_s, &b_s) + &TensorElement::simple(&b_s, &ad_s)
        }
        Generator::D => TensorElement::simple(&d, &d),
        Generator::DStar => TensorElement::simple(&d_s, &d_s),
    })
}

/// The six generators a, a*, b, b*, D, D*.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    A,
    AStar,
    B,
    BStar,
    D,
    DStar,
}

impl Generator {
    pub const ALL: [Generator; 6] = [
        Generator::A,
        Generator::AStar,
        Generator::B,
        Generator::BStar,
        Generator::D,
        Generator::DStar,
    ];

    pub fn element(self) -> AlgebraElement {
        match self {
            Generator::A => AlgebraElement::a(),
            Generator::AStar => AlgebraElement::a_star(),
            Generator::B => AlgebraElement::b(),
            Generator::BStar => AlgebraElement::b_star(),
            Generator::D => AlgebraElement::d(),
            Generator::DStar => AlgebraElement::d_star(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Generator::A => "a",
            Generator::AStar => "a*",
            Generator::B => "b",
            Generator::BStar => "b*",
            Generator::D => "D",
            Generator::DStar => "D*",
        }
    }
}

fn tensor_power(q: &QParam, t: &TensorElement, e: u32) -> Result<TensorElement> {
    let mut out = TensorElement::one();
    for _ in 0..e {
        out = out.multiply(q, t)?;
    }
    Ok(out)
}

/// Coproduct of a PBW monomial, as a product of generator coproducts.
pub fn comultiply_monomial(q: &QParam, m: &BasisMonomial) -> Result<TensorElement> {
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
    let mut t = tensor_power(q, &delta_generator(q, ag)?, m.n.unsigned_abs())?;
    t = t.multiply(
        q,
        &tensor_power(q, &delta_generator(q, Generator::B)?, m.m)?,
    )?;
    t = t.multiply(
        q,
        &tensor_power(q, &delta_generator(q, Generator::BStar)?, m.k)?,
    )?;
    t.multiply(
        q,
        &tensor_power(q, &delta_generator(q, dg)?, m.l.unsigned_abs())?,
    )
}

pub fn comultiply(q: &QParam, x: &AlgebraElement) -> Result<TensorElement> {
    let mut out = TensorElement::zero();
    for (m, c) in x.terms() {
        out = &out + &comultiply_monomial(q, m)?.scale(*c);
    }
    Ok(out)
}

pub fn counit_monomial(m: &BasisMonomial) -> Complex64 {
    if m.m == 0 && m.k == 0 {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::new(0.0, 0.0)
    }
}

pub fn counit(x: &AlgebraElement) -> Complex64 {
    x.terms().map(|(m, c)| c * counit_monomial(m)).sum()
}

/// Antipode on a monomial: S(D)^l S(b*)^k S(b)^m S(a)^n.
pub fn antipode_monomial(q: &QParam, m: &BasisMonomial) -> Result<AlgebraElement> {
    let s_d = mono(0, 0, 0, -m.l.signum());
    let s_b_s =
        multiply(q, &AlgebraElement::b_star(), &AlgebraElement::d())?.scale(-q.qbar_pow(-1));
    let s_b = multiply(q, &AlgebraElement::b(), &AlgebraElement::d_star())?.scale(-q.q_pow(1));
    let s_a = mono(-m.n.signum(), 0, 0, 0);
    let mut out = power(q, &s_d, m.l.unsigned_abs())?;
    out = multiply(q, &out, &power(q, &s_b_s, m.k)?)?;
    out = multiply(q, &out, &power(q, &s_b, m.m)?)?;
    multiply(q, &out, &power(q, &s_a, m.n.unsigned_abs())?)
}

pub fn antipode(q: &QParam, x: &AlgebraElement) -> Result<AlgebraElement> {
    let mut out = AlgebraElement::zero();
    for (m, c) in x.terms() {
        out = &out + &antipode_monomial(q, m)?.scale(*c);
    }
    Ok(out)
}

/// (x ⊗ y)* = x* ⊗ y*
pub fn tensor_star(q: &QParam, t: &TensorElement) -> Result<TensorElement> {
    let mut out = TensorElement::zero();
    for ((x, y), c) in t.terms() {
        let xs = star(q, &AlgebraElement::monomial(*x))?;
        let ys = star(q, &AlgebraElement::monomial(*y))?;
        out = &out + &TensorElement::simple(&xs, &ys).scale(c.conj());
    }
    Ok(out)
}

/// All monomials of total degree at most `d`.
pub fn monomials_up_to_degree(d: u32) -> Vec<BasisMonomial> {
    BasisMonomial::cube(d)
        .into_iter()
        .filter(|m| m.degree() <= d)
        .collect()
}

/// Random element with `terms` monomials of degree at most `max_degree` and
/// coefficients uniform in the unit square.
pub fn random_element<R: Rng>(rng: &mut R, max_degree: u32, terms: usize) -> AlgebraElement {
    let pool = monomials_up_to_degree(max_degree);
    let mut x = AlgebraElement::zero();
    for _ in 0..terms {
        let m = pool[rng.random_range(0..pool.len())];
        let c = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        x.add_term(m, c);
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> QParam {
        QParam::new(0.5, 2f64.sqrt() - 1.0).unwrap()
    }

    #[test]
    fn delta_d_is_grouplike() {
        let q = q();
        let got = comultiply(&q, &AlgebraElement::d()).unwrap();
        assert_eq!(
            got,
            TensorElement::simple(&AlgebraElement::d(), &AlgebraElement::d())
        );
        assert_eq!(
            comultiply(&q, &AlgebraElement::one()).unwrap(),
            TensorElement::one()
        );
    }

    #[test]
    fn delta_b_terms() {
        let q = q();
        let got = comultiply(&q, &AlgebraElement::b()).unwrap();
        let mut want = TensorElement::zero();
        want.add_term(
            BasisMonomial::new(1, 0, 0, 0),
            BasisMonomial::new(0, 1, 0, 0),
            1.0.into(),
        );
        want.add_term(
            BasisMonomial::new(0, 1, 0, 0),
            BasisMonomial::new(-1, 0, 0, 1),
            1.0.into(),
        );
        assert!((&got - &want).norm1() < 1e-15);
    }

    #[test]
    fn counit_examples() {
        assert_eq!(counit(&mono(0, 0, 0, 5)), Complex64::new(1.0, 0.0));
        assert_eq!(counit(&mono(2, 1, 0, 0)), Complex64::new(0.0, 0.0));
        assert_eq!(counit(&AlgebraElement::one()), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn antipode_examples() {
        let q = q();
        let got = antipode(&q, &AlgebraElement::b()).unwrap();
        let want = AlgebraElement::term(BasisMonomial::new(0, 1, 0, -1), -q.q());
        assert!((&got - &want).norm1() < 1e-15);
        assert_eq!(
            antipode(&q, &AlgebraElement::a()).unwrap(),
            AlgebraElement::a_star()
        );
    }

    #[test]
    fn antipode_reverses_products() {
        let q = q();
        for g in Generator::ALL {
            for h in Generator::ALL {
                let gh = multiply(&q, &g.element(), &h.element()).unwrap();
                let lhs = antipode(&q, &gh).unwrap();
                let rhs = multiply(
                    &q,
                    &antipode(&q, &h.element()).unwrap(),
                    &antipode(&q, &g.element()).unwrap(),
                )
                .unwrap();
                assert!((&lhs - &rhs).norm1() < 1e-12, "{} {}", g.name(), h.name());
            }
        }
    }
}
