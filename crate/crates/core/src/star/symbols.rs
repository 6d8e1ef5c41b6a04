use std::fmt;

use serde::{Deserialize, Serialize};

use super::params::StarParams;
use crate::error::{Error, Result};

/// `M^i_j(k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct StarModuleSymbol {
    pub i: usize,
    pub j: usize,
    pub k: i64,
}

impl StarModuleSymbol {
    pub fn new(p: StarParams, i: usize, j: usize, k: i64) -> Result<Self> {
        if !(1..=p.n()).contains(&i) || !(1..=p.n()).contains(&j) {
            return Err(Error::InvalidParameter(format!("M[{i},{j}] out of range for n={}", p.n())));
        }
        Ok(Self { i, j, k })
    }

    /// `δ_{i>j} n + 1 + j - i`.
    pub fn length(&self, p: StarParams) -> usize {
        (if self.i > self.j { p.n() } else { 0 }) + 1 + self.j - self.i
    }

    pub fn shifted(self, by: i64) -> Self {
        Self { k: self.k + by, ..self }
    }
}

impl fmt::Display for StarModuleSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M[{},{}]({})", self.i, self.j, self.k)
    }
}

/// `M^1_l(k)` with `1 <= l <= ⌊(n+1)/2⌋` and `0 <= k < P(l)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalObject {
    pub l: usize,
    pub k: i64,
}

impl CanonicalObject {
    pub fn new(p: StarParams, l: usize, k: i64) -> Result<Self> {
        if !(1..=p.max_length()).contains(&l) {
            return Err(Error::InvalidParameter(format!(
                "canonical length {l} outside 1..={}",
                p.max_length()
            )));
        }
        Ok(Self {
            l,
            k: k.rem_euclid(p.period(l)),
        })
    }

    /// Every canonical object, ordered by `(l, k)`.
    pub fn all(p: StarParams) -> Vec<CanonicalObject> {
        (1..=p.max_length())
            .flat_map(|l| (0..p.period(l)).map(move |k| CanonicalObject { l, k }))
            .collect()
    }

    pub fn shifted(self, p: StarParams, by: i64) -> Self {
        Self {
            l: self.l,
            k: (self.k + by).rem_euclid(p.period(self.l)),
        }
    }

    pub fn as_module(self) -> StarModuleSymbol {
        StarModuleSymbol { i: 1, j: self.l, k: self.k }
    }
}

impl fmt::Display for CanonicalObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C[{}]({})", self.l, self.k)
    }
}

/// `α^{a,i}_{b,j}: M^a_b -> M^i_j(-d δ_{a<i})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalMapSymbol {
    pub a: usize,
    pub b: usize,
    pub i: usize,
    pub j: usize,
}

impl CanonicalMapSymbol {
    pub fn domain(&self) -> StarModuleSymbol {
        StarModuleSymbol { i: self.a, j: self.b, k: 0 }
    }

    pub fn codomain(&self, p: StarParams) -> StarModuleSymbol {
        let k = if self.a < self.i { -p.di() } else { 0 };
        StarModuleSymbol { i: self.i, j: self.j, k }
    }
}

impl fmt::Display for CanonicalMapSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alpha[{},{};{},{}]", self.a, self.i, self.b, self.j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lengths() {
        let p = StarParams::new(3, 2).unwrap();
        let len = |i, j| StarModuleSymbol::new(p, i, j, 0).unwrap().length(p);
        assert_eq!(len(1, 1), 1);
        assert_eq!(len(1, 3), 3);
        assert_eq!(len(3, 1), 2);
        assert_eq!(len(2, 1), 3);
        assert!(StarModuleSymbol::new(p, 0, 1, 0).is_err());
    }

    #[test]
    fn canonical_objects_reduce_their_shift() {
        let p = StarParams::new(3, 2).unwrap();
        assert_eq!(CanonicalObject::new(p, 2, 9).unwrap().k, 2);
        assert_eq!(CanonicalObject::new(p, 1, -4).unwrap().k, 10);
        assert!(CanonicalObject::new(p, 3, 0).is_err());
        assert_eq!(CanonicalObject::all(p).len(), 21);
    }
}
