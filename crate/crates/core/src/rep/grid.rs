use crate::error::{Error, Result};

/// Truncation of ℓ²(ℕ)⊗ℓ²(ℤ)⊗ℓ²(ℤ) to `0..n_cut` on the first leg and
/// `-z_cut..=z_cut` on the other two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TruncGrid {
    n_cut: usize,
    z_cut: usize,
    interior_margin: usize,
}

/// A basis label (i, j, k).
pub type Site = (i64, i64, i64);

impl TruncGrid {
    pub fn new(n_cut: usize, z_cut: usize, interior_margin: usize) -> Result<Self> {
        if n_cut == 0 || z_cut == 0 {
            return Err(Error::InvalidGrid(format!(
                "cuts must be positive, got ({n_cut}, {z_cut})"
            )));
        }
        // a single slice has no cut in the first leg
        let limit = if n_cut == 1 { z_cut } else { n_cut.min(z_cut) };
        if interior_margin >= limit {
            return Err(Error::InvalidGrid(format!(
                "interior margin {interior_margin} must be below {limit}"
            )));
        }
        let w = 2 * z_cut + 1;
        n_cut
            .checked_mul(w * w)
            .ok_or_else(|| Error::InvalidGrid("dimension overflows".into()))?;
        Ok(Self {
            n_cut,
            z_cut,
            interior_margin,
        })
    }

    pub fn n_cut(&self) -> usize {
        self.n_cut
    }

    pub fn z_cut(&self) -> usize {
        self.z_cut
    }

    pub fn interior_margin(&self) -> usize {
        self.interior_margin
    }

    /// Same cuts, different margin.
    pub fn with_margin(&self, margin: usize) -> Result<Self> {
        Self::new(self.n_cut, self.z_cut, margin)
    }

    pub fn width(&self) -> usize {
        2 * self.z_cut + 1
    }

    pub fn dim(&self) -> usize {
        self.n_cut * self.width() * self.width()
    }

    pub fn contains(&self, (i, j, k): Site) -> bool {
        let z = self.z_cut as i64;
        i >= 0 && i < self.n_cut as i64 && j.abs() <= z && k.abs() <= z
    }

    pub fn index(&self, s: Site) -> Option<usize> {
        if !self.contains(s) {
            return None;
        }
        let (w, z) = (self.width() as i64, self.z_cut as i64);
        Some((s.0 * w * w + (s.1 + z) * w + (s.2 + z)) as usize)
    }

    pub fn site(&self, idx: usize) -> Site {
        let w = self.width();
        let z = self.z_cut as i64;
        let i = idx / (w * w);
        let rem = idx % (w * w);
        (i as i64, (rem / w) as i64 - z, (rem % w) as i64 - z)
    }

    /// True when every index is at least `interior_margin` away from each cut.
    /// The lower end of the first leg is a genuine boundary, not a cut, and a
    /// single-slice grid is not cut in the first leg at all.
    pub fn is_interior(&self, (i, j, k): Site) -> bool {
        let m = self.interior_margin as i64;
        let z = self.z_cut as i64;
        i >= 0
            && (self.n_cut == 1 || i < self.n_cut as i64 - m)
            && j.abs() <= z - m
            && k.abs() <= z - m
    }

    pub fn is_interior_index(&self, idx: usize) -> bool {
        self.is_interior(self.site(idx))
    }

    pub fn sites(&self) -> impl Iterator<Item = Site> + '_ {
        (0..self.dim()).map(|i| self.site(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_roundtrip() {
        let g = TruncGrid::new(3, 2, 1).unwrap();
        assert_eq!(g.dim(), 3 * 25);
        for idx in 0..g.dim() {
            assert_eq!(g.index(g.site(idx)), Some(idx));
        }
        assert_eq!(g.index((3, 0, 0)), None);
        assert_eq!(g.index((0, 3, 0)), None);
        assert_eq!(g.index((-1, 0, 0)), None);
    }

    #[test]
    fn interior() {
        let g = TruncGrid::new(4, 3, 1).unwrap();
        assert!(g.is_interior((0, 2, -2)));
        assert!(!g.is_interior((3, 0, 0)));
        assert!(!g.is_interior((0, 3, 0)));
    }

    #[test]
    fn margin_too_large() {
        assert!(TruncGrid::new(4, 3, 3).is_err());
        assert!(TruncGrid::new(0, 3, 0).is_err());
        assert!(TruncGrid::new(1, 3, 0).is_ok());
    }
}
