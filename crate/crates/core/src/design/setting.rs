use std::fmt;

use crate::error::{Error, Result};

/// Parameters `(v, r, k1, k2)` of the class `D(v, r; k1, k2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DesignSetting {
    v: usize,
    r: usize,
    k1: usize,
    k2: usize,
}

impl DesignSetting {
    pub fn new(v: usize, r: usize, k1: usize, k2: usize) -> Result<Self> {
        if k1 + k2 != v {
            return Err(Error::BadSetting(format!("k1 + k2 = {} != v = {v}", k1 + k2)));
        }
        if k1 < k2 {
            return Err(Error::BadSetting(format!(
                "k1 = {k1} must be the larger block size (k2 = {k2})"
            )));
        }
        if k2 < 2 {
            return Err(Error::BadSetting(format!("k2 = {k2} must be at least 2")));
        }
        if r < 2 {
            return Err(Error::BadSetting(format!("r = {r} must be at least 2")));
        }
        Ok(DesignSetting { v, r, k1, k2 })
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn k1(&self) -> usize {
        self.k1
    }

    pub fn k2(&self) -> usize {
        self.k2
    }

    /// Product of the block sizes `k1 * k2`.
    pub fn p(&self) -> usize {
        self.k1 * self.k2
    }

    /// `r <= v - 1`, the regime in which optimality verdicts are issued.
    pub fn small_r(&self) -> bool {
        self.r < self.v
    }

    pub fn equal_blocks(&self) -> bool {
        self.k1 == self.k2
    }

    /// Same block sizes, different replicate count.
    pub fn with_r(&self, r: usize) -> Result<Self> {
        DesignSetting::new(self.v, r, self.k1, self.k2)
    }
}

impl fmt::Display for DesignSetting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D({},{};{},{})", self.v, self.r, self.k1, self.k2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_valid() {
        let s = DesignSetting::new(9, 4, 6, 3).unwrap();
        assert_eq!(s.p(), 18);
        assert!(s.small_r());
        assert_eq!(s.to_string(), "D(9,4;6,3)");
        assert!(DesignSetting::new(10, 3, 5, 5).unwrap().equal_blocks());
        assert!(!DesignSetting::new(7, 7, 4, 3).unwrap().small_r());
    }

    #[test]
    fn rejects_invalid() {
        for (v, r, k1, k2) in [(9, 4, 6, 2), (9, 4, 3, 6), (5, 2, 4, 1), (4, 1, 2, 2)] {
            assert!(matches!(
                DesignSetting::new(v, r, k1, k2),
                Err(Error::BadSetting(_))
            ));
        }
    }
}
