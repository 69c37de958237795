//! Word rewriting into PBW normal form, one adjacent pair at a time.
//!
//! This is slower than the closed-form product in `element` and serves as
//! its cross-check.

use num_complex::Complex64;

use super::element::{AlgebraElement, BasisMonomial};
use super::qparam::QParam;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    A,
    AStar,
    B,
    BStar,
    D,
    DStar,
}

impl Letter {
    fn rank(self) -> u8 {
        match self {
            Letter::A | Letter::AStar => 0,
            Letter::B => 1,
            Letter::BStar => 2,
            Letter::D | Letter::DStar => 3,
        }
    }

    /// A, A*, D, D* are the letters that pair reductions can remove.
    fn removable(self) -> bool {
        matches!(self, Letter::A | Letter::AStar | Letter::D | Letter::DStar)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RewriteStats {
    pub steps: usize,
    pub words: usize,
}

/// Hard ceiling on rewrite steps for a single call.
pub const STEP_LIMIT: usize = 5_000_000;

/// Letters of a monomial in normal order.
pub fn letters(m: &BasisMonomial) -> Vec<Letter> {
    let mut w = Vec::with_capacity(m.degree() as usize);
    let a = if m.n >= 0 { Letter::A } else { Letter::AStar };
    w.extend(std::iter::repeat_n(a, m.n.unsigned_abs() as usize));
    w.extend(std::iter::repeat_n(Letter::B, m.m as usize));
    w.extend(std::iter::repeat_n(Letter::BStar, m.k as usize));
    let d = if m.l >= 0 { Letter::D } else { Letter::DStar };
    w.extend(std::iter::repeat_n(d, m.l.unsigned_abs() as usize));
    w
}

/// (removable letters, inversions); strictly decreases under every rule.
pub fn measure(w: &[Letter]) -> (usize, usize) {
    let removable = w.iter().filter(|l| l.removable()).count();
    let mut inversions = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i].rank() > w[j].rank() {
                inversions += 1;
            }
        }
    }
    (removable, inversions)
}

/// Replacement for the adjacent pair `xy`, or None if it is already ordered.
pub fn rule(q: &QParam, x: Letter, y: Letter) -> Option<Vec<(Complex64, Vec<Letter>)>> {
    use Letter::*;
    let one = Complex64::new(1.0, 0.0);
    let swap = |c: Complex64| Some(vec![(c, vec![y, x])]);
    match (x, y) {
        (A, AStar) => Some(vec![(one, vec![]), (-one, vec![B, BStar])]),
        (AStar, A) => Some(vec![(one, vec![]), (-one * q.abs_pow(2), vec![B, BStar])]),
        (D, DStar) | (DStar, D) => Some(vec![(one, vec![])]),
        (B, A) => swap(q.q_pow(1)),
        (B, AStar) => swap(q.q_pow(-1)),
        (BStar, A) => swap(q.qbar_pow(1)),
        (BStar, AStar) => swap(q.qbar_pow(-1)),
        (BStar, B) => swap(one),
        (D | DStar, A | AStar) => swap(one),
        (D, B) => swap(q.c_pow(-1)),
        (D, BStar) => swap(q.c_pow(1)),
        (DStar, B) => swap(q.c_pow(1)),
        (DStar, BStar) => swap(q.c_pow(-1)),
        _ => None,
    }
}

fn to_monomial(w: &[Letter]) -> BasisMonomial {
    let mut m = BasisMonomial::ONE;
    for l in w {
        match l {
            Letter::A => m.n += 1,
            Letter::AStar => m.n -= 1,
            Letter::B => m.m += 1,
            Letter::BStar => m.k += 1,
            Letter::D => m.l += 1,
            Letter::DStar => m.l -= 1,
        }
    }
    m
}

/// Rewrites a word into normal form, checking that the measure decreases at
/// every step.
pub fn normalize_word(q: &QParam, word: &[Letter]) -> Result<(AlgebraElement, RewriteStats)> {
    let mut stats = RewriteStats::default();
    let mut out = AlgebraElement::zero();
    let mut stack = vec![(Complex64::new(1.0, 0.0), word.to_vec())];
    while let Some((c, w)) = stack.pop() {
        stats.words += 1;
        let pos =
            (0..w.len().saturating_sub(1)).find_map(|i| rule(q, w[i], w[i + 1]).map(|r| (i, r)));
        let Some((i, replacements)) = pos else {
            out.add_term(to_monomial(&w), c);
            continue;
        };
        stats.steps += 1;
        if stats.steps > STEP_LIMIT {
            return Err(Error::RewriteLimit(STEP_LIMIT));
        }
        let before = measure(&w);
        for (rc, middle) in replacements {
            let mut next = Vec::with_capacity(w.len());
            next.extend_from_slice(&w[..i]);
            next.extend(middle);
            next.extend_from_slice(&w[i + 2..]);
            if measure(&next) >= before {
                return Err(Error::RewriteMeasure(stats.steps));
            }
            stack.push((c * rc, next));
        }
    }
    Ok((out, stats))
}

/// Product of two elements computed purely by rewriting concatenated words.
pub fn multiply_by_rewriting(
    q: &QParam,
    x: &AlgebraElement,
    y: &AlgebraElement,
) -> Result<(AlgebraElement, RewriteStats)> {
    let mut out = AlgebraElement::zero();
    let mut total = RewriteStats::default();
    for (mx, cx) in x.terms() {
        for (my, cy) in y.terms() {
            let mut w = letters(mx);
            w.extend(letters(my));
            let (e, s) = normalize_word(q, &w)?;
            total.steps += s.steps;
            total.words += s.words;
            out = &out + &e.scale(cx * cy);
        }
    }
    Ok((out, total))
}

/// Upper bound on steps for a word of length `len`: each word in the tree
/// has measure at most (len, len^2/2), and each pair reduction at most
/// doubles the number of live words.
pub fn step_bound(len: usize) -> usize {
    let per_word = len + len * len / 2 + 1;
    per_word.saturating_mul(1usize << (len / 2).min(40))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::element::multiply;

    fn q() -> QParam {
        QParam::new(0.6, 0.3).unwrap()
    }

    #[test]
    fn normal_words_are_fixed() {
        let m = BasisMonomial::new(-2, 1, 3, 2);
        let (e, s) = normalize_word(&q(), &letters(&m)).unwrap();
        assert_eq!(s.steps, 0);
        assert_eq!(e, AlgebraElement::monomial(m));
    }

    #[test]
    fn matches_closed_form_on_small_products() {
        let q = q();
        let ms = BasisMonomial::cube(1);
        for x in &ms {
            for y in &ms {
                let (x, y) = (AlgebraElement::monomial(*x), AlgebraElement::monomial(*y));
                let fast = multiply(&q, &x, &y).unwrap();
                let (slow, _) = multiply_by_rewriting(&q, &x, &y).unwrap();
                assert!((&fast - &slow).norm1() < 1e-12, "{x} * {y}");
            }
        }
    }

    #[test]
    fn mixed_a_words() {
        use Letter::*;
        let q = q();
        let (e, s) = normalize_word(&q, &[A, A, AStar, AStar, AStar, A]).unwrap();
        assert!(s.steps <= step_bound(6));
        let mut w = AlgebraElement::one();
        for l in [A, A, AStar, AStar, AStar, A] {
            let g = AlgebraElement::monomial(to_monomial(&[l]));
            w = multiply(&q, &w, &g).unwrap();
        }
        assert!((&e - &w).norm1() < 1e-12);
    }
}
