use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameters of `A_{n,d}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StarParams {
    n: usize,
    d: usize,
}

impl StarParams {
    pub fn new(n: usize, d: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("star algebra needs n >= 2, got {n}")));
        }
        Ok(Self { n, d })
    }

    pub fn n(self) -> usize {
        self.n
    }

    pub fn d(self) -> usize {
        self.d
    }

    pub(crate) fn ni(self) -> i64 {
        self.n as i64
    }

    pub(crate) fn di(self) -> i64 {
        self.d as i64
    }

    /// `P = (n+1)d + 2n`.
    pub fn big_p(self) -> i64 {
        ((self.n + 1) * self.d + 2 * self.n) as i64
    }

    /// Largest canonical length `⌊(n+1)/2⌋`.
    pub fn max_length(self) -> usize {
        self.n.div_ceil(2)
    }

    /// Is `l = (n+1)/2` exactly (odd `n`)?
    pub fn is_half(self, l: usize) -> bool {
        self.n % 2 == 1 && l == self.n.div_ceil(2)
    }

    /// Period of an object of length `l`.
    pub fn period(self, l: usize) -> i64 {
        if self.is_half(l) {
            self.big_p() / 2
        } else {
            self.big_p()
        }
    }

    /// `(d+2)`, the shift carried by one step along a row of the AR quiver.
    pub(crate) fn step(self) -> i64 {
        self.di() + 2
    }

    /// Reduce a vertex index into `1..=n`.
    pub(crate) fn vertex(self, x: i64) -> usize {
        ((x - 1).rem_euclid(self.ni()) + 1) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn periods() {
        let p = StarParams::new(3, 2).unwrap();
        assert_eq!(p.big_p(), 14);
        assert_eq!(p.period(1), 14);
        assert_eq!(p.period(2), 7);
        assert_eq!(StarParams::new(2, 0).unwrap().period(1), 4);
        assert!(StarParams::new(1, 0).is_err());
    }

    #[test]
    fn parity_of_the_period() {
        for n in 2..9 {
            for d in 0..6 {
                let p = StarParams::new(n, d).unwrap();
                assert_eq!(p.big_p() % 2 == 0, d % 2 == 0 || n % 2 == 1);
            }
        }
    }
}
