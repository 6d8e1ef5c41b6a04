//! Objects and morphisms of `A-dgstab`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::params::StarParams;
use super::symbols::{CanonicalObject, StarModuleSymbol};
use crate::error::{Error, Result};

/// The canonical representative of `M^i_j(k)` in `A-dgstab`.
pub fn normalize(p: StarParams, s: StarModuleSymbol) -> CanonicalObject {
    let r = s.length(p);
    // M^i_{i+r-1} ≅ M^1_r(-(d+2)(i-1))
    let mut k = s.k - p.step() * (s.i as i64 - 1);
    let mut l = r;
    if r > p.max_length() {
        // M^1_r ≅ M^1_{n+1-r}((d+2)(n+1-r) - 1)
        l = p.n() + 1 - r;
        k += p.step() * l as i64 - 1;
    }
    CanonicalObject {
        l,
        k: k.rem_euclid(p.period(l)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MorphismKind {
    F,
    G,
    Zero,
}

/// A multiple of `f_{l,r,j}` or `g_{l,r,j}`, or zero, between canonical objects.
///
/// Scalars are integers read in any field; generators carry `1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DgMorphism {
    pub kind: MorphismKind,
    pub l: usize,
    pub r: usize,
    pub j: usize,
    pub domain: CanonicalObject,
    pub codomain: CanonicalObject,
    pub scalar: i64,
}

fn f_range(l: usize, r: usize) -> std::ops::RangeInclusive<usize> {
    1..=l.min(r)
}

fn g_range(l: usize, r: usize) -> std::ops::RangeInclusive<usize> {
    (1 + l).saturating_sub(r).max(1)..=l
}

/// Codomain shift of `f_{l,r,j}` relative to its domain.
pub fn f_shift(p: StarParams, r: usize, j: usize) -> i64 {
    p.step() * (r as i64 - j as i64)
}

/// Codomain shift of `g_{l,r,j}` relative to its domain.
pub fn g_shift(p: StarParams, j: usize) -> i64 {
    p.step() * (p.ni() + 1 - j as i64) - 1
}

impl DgMorphism {
    pub fn zero(domain: CanonicalObject, codomain: CanonicalObject) -> Self {
        Self {
            kind: MorphismKind::Zero,
            l: domain.l,
            r: codomain.l,
            j: 0,
            domain,
            codomain,
            scalar: 0,
        }
    }

    /// `f_{l,r,j}` out of `C[l](k)`.
    pub fn f(p: StarParams, l: usize, r: usize, j: usize, k: i64) -> Result<Self> {
        Self::basis(p, MorphismKind::F, l, r, j, k)
    }

    /// `g_{l,r,j}` out of `C[l](k)`, rewritten as `f` when `r = (n+1)/2`.
    pub fn g(p: StarParams, l: usize, r: usize, j: usize, k: i64) -> Result<Self> {
        Self::basis(p, MorphismKind::G, l, r, j, k)
    }

    pub fn basis(p: StarParams, kind: MorphismKind, l: usize, r: usize, j: usize, k: i64) -> Result<Self> {
        let domain = CanonicalObject::new(p, l, k)?;
        CanonicalObject::new(p, r, 0)?;
        let shift = match kind {
            MorphismKind::F if f_range(l, r).contains(&j) => f_shift(p, r, j),
            MorphismKind::G if g_range(l, r).contains(&j) => g_shift(p, j),
            MorphismKind::Zero => {
                return Err(Error::InvalidParameter("zero has no basis form".into()));
            }
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "{kind:?}[{l},{r},{j}] outside its index range"
                )));
            }
        };
        let kind = if kind == MorphismKind::G && p.is_half(r) {
            MorphismKind::F
        } else {
            kind
        };
        Ok(Self {
            kind,
            l,
            r,
            j,
            domain,
            codomain: CanonicalObject::new(p, r, domain.k + shift)?,
            scalar: 1,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.kind == MorphismKind::Zero || self.scalar == 0
    }

    pub fn scaled(self, c: i64) -> Self {
        if c == 0 || self.is_zero() {
            return Self::zero(self.domain, self.codomain);
        }
        Self {
            scalar: self.scalar * c,
            ..self
        }
    }

    /// Same morphism up to its scalar.
    pub fn same_line(&self, other: &Self) -> bool {
        (self.kind, self.l, self.r, self.j, self.domain, self.codomain)
            == (other.kind, other.l, other.r, other.j, other.domain, other.codomain)
    }

    /// Sum of two morphisms with the same endpoints; the Hom space is at most one-dimensional.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.domain, self.codomain) != (other.domain, other.codomain) {
            return Err(Error::EndpointMismatch(format!("{self} + {other}")));
        }
        if self.is_zero() {
            return Ok(*other);
        }
        if other.is_zero() {
            return Ok(*self);
        }
        if !self.same_line(other) {
            return Err(Error::Inconsistent(format!("{self} and {other} span two dimensions")));
        }
        Ok(Self {
            scalar: self.scalar + other.scalar,
            ..*self
        }
        .normalized_zero())
    }

    fn normalized_zero(self) -> Self {
        if self.is_zero() {
            Self::zero(self.domain, self.codomain)
        } else {
            self
        }
    }

    /// The symbol of the underlying basis element, without domain shift.
    pub fn symbol(&self) -> String {
        match self.kind {
            MorphismKind::F => format!("f[{},{},{}]", self.l, self.r, self.j),
            MorphismKind::G => format!("g[{},{},{}]", self.l, self.r, self.j),
            MorphismKind::Zero => "0".into(),
        }
    }
}

impl fmt::Display for DgMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0:{}->{}", self.domain, self.codomain);
        }
        match self.scalar {
            1 => {}
            -1 => write!(f, "-")?,
            c => write!(f, "{c}*")?,
        }
        write!(f, "{}({})", self.symbol(), self.domain.k)
    }
}

/// Every basis element `X -> Y` whose congruence holds, `f` before `g`.
pub fn dgstab_hom_candidates(p: StarParams, x: CanonicalObject, y: CanonicalObject) -> Vec<DgMorphism> {
    let (l, r) = (x.l, y.l);
    let pr = p.period(r);
    let delta = (y.k - x.k).rem_euclid(pr);
    let mut out = Vec::new();
    for j in f_range(l, r) {
        if f_shift(p, r, j).rem_euclid(pr) == delta {
            out.push(DgMorphism::f(p, l, r, j, x.k).expect("index in range"));
        }
    }
    for j in g_range(l, r) {
        if g_shift(p, j).rem_euclid(pr) == delta {
            let m = DgMorphism::g(p, l, r, j, x.k).expect("index in range");
            if !out.iter().any(|o| o.same_line(&m)) {
                out.push(m);
            }
        }
    }
    out
}

/// The basis of `Hom_{A-dgstab}(X, Y)`, or zero.
pub fn dgstab_hom(p: StarParams, x: CanonicalObject, y: CanonicalObject) -> Result<DgMorphism> {
    let c = dgstab_hom_candidates(p, x, y);
    match c.len() {
        0 => Ok(DgMorphism::zero(x, y)),
        1 => Ok(c[0]),
        _ => Err(Error::Inconsistent(format!(
            "Hom({x}, {y}) has {} basis candidates",
            c.len()
        ))),
    }
}

/// `m2 ∘ m1`.
pub fn compose_dg(p: StarParams, m2: &DgMorphism, m1: &DgMorphism) -> Result<DgMorphism> {
    if m1.codomain != m2.domain {
        return Err(Error::EndpointMismatch(format!("{m2} after {m1}")));
    }
    let (x, z) = (m1.domain, m2.codomain);
    if m1.is_zero() || m2.is_zero() {
        return Ok(DgMorphism::zero(x, z));
    }
    let big_p = p.big_p();
    let shift_of = |m: &DgMorphism, kind: MorphismKind| match kind {
        MorphismKind::F => f_shift(p, m.r, m.j),
        _ => g_shift(p, m.j),
    };
    // the f- and g-forms into a half-period object differ by ψ^{1/2}; pick the one
    // landing on the stored codomain shift modulo P
    let mut k1 = m1.kind;
    if p.is_half(m1.r) && (x.k + shift_of(m1, k1) - m1.codomain.k).rem_euclid(big_p) != 0 {
        k1 = if k1 == MorphismKind::F { MorphismKind::G } else { MorphismKind::F };
    }
    let (l, r, j) = (m1.l as i64, m1.r as i64, m1.j as i64);
    let (c, q) = (m2.r as i64, m2.j as i64);
    let n1 = p.ni() + 1;
    let in_f = |t: i64| 1 <= t && t <= c.min(l);
    let in_g = |t: i64| (1 + l - c).max(1) <= t && t <= l;
    let result = match (k1, m2.kind) {
        (MorphismKind::F, MorphismKind::F) => {
            let t = q + j - r;
            in_f(t).then_some((MorphismKind::F, t))
        }
        (MorphismKind::F, MorphismKind::G) => {
            let t = q + j - r;
            in_g(t).then_some((MorphismKind::G, t))
        }
        (MorphismKind::G, MorphismKind::F) => {
            let t = q + j - c;
            in_g(t).then_some((MorphismKind::G, t))
        }
        (MorphismKind::G, MorphismKind::G) => {
            let t = q + j + c - n1;
            (l < q + j && q + j <= n1 && n1 < q + j + c).then_some((MorphismKind::F, t))
        }
        _ => unreachable!("zero handled above"),
    };
    let Some((kind, t)) = result else {
        return Ok(DgMorphism::zero(x, z));
    };
    let out = DgMorphism::basis(p, kind, m1.l, m2.r, t as usize, x.k)?;
    if out.codomain != z {
        return Err(Error::Inconsistent(format!(
            "{m2} after {m1} gives {out} with codomain {}",
            out.codomain
        )));
    }
    Ok(out.scaled(m1.scalar * m2.scalar))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: usize, d: usize) -> StarParams {
        StarParams::new(n, d).unwrap()
    }

    fn obj(p: StarParams, l: usize, k: i64) -> CanonicalObject {
        CanonicalObject::new(p, l, k).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let p = params(3, 2);
        let m = |i, j, k| StarModuleSymbol { i, j, k };
        assert_eq!(normalize(p, m(1, 2, 0)), obj(p, 2, 0));
        assert_eq!(normalize(p, m(2, 2, 0)), obj(p, 1, 10));
        assert_eq!(normalize(p, m(1, 3, 0)), obj(p, 1, 3));
    }

    #[test]
    fn normalize_is_idempotent() {
        for n in 2..=7 {
            for d in 0..=3 {
                let p = params(n, d);
                for c in CanonicalObject::all(p) {
                    assert_eq!(normalize(p, c.as_module()), c);
                }
            }
        }
    }

    #[test]
    fn normalize_is_constant_on_omega_orbits() {
        use super::super::grstab::omega_power;
        for n in 2..=6 {
            for d in 0..=3 {
                let p = params(n, d);
                for i in 1..=n {
                    for j in 1..=n {
                        let s = StarModuleSymbol { i, j, k: 1 };
                        let base = normalize(p, s);
                        for m in -(2 * n as i64)..=(2 * n as i64) {
                            assert_eq!(
                                normalize(p, omega_power(p, s, m).shifted(m)),
                                base,
                                "n={n} d={d} {s} m={m}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn hom_examples() {
        let p = params(3, 2);
        let x = obj(p, 2, 0);
        let id = dgstab_hom(p, x, x).unwrap();
        assert_eq!(id.symbol(), "f[2,2,2]");
        assert_eq!(dgstab_hom(p, x, obj(p, 2, 4)).unwrap().symbol(), "f[2,2,1]");
        assert!(dgstab_hom(p, obj(p, 1, 0), obj(p, 1, 2)).unwrap().is_zero());
    }

    #[test]
    fn at_most_one_basis_element() {
        for n in 2..=7 {
            for d in 0..=3 {
                let p = params(n, d);
                let objs = CanonicalObject::all(p);
                for &x in &objs {
                    for &y in &objs {
                        let c = dgstab_hom_candidates(p, x, y);
                        assert!(c.len() <= 1, "n={n} d={d} {x}->{y}: {c:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn identity_is_neutral() {
        for n in 2..=6 {
            for d in 0..=2 {
                let p = params(n, d);
                let objs = CanonicalObject::all(p);
                for &x in &objs {
                    for &y in &objs {
                        let m = dgstab_hom(p, x, y).unwrap();
                        let idx = dgstab_hom(p, x, x).unwrap();
                        let idy = dgstab_hom(p, y, y).unwrap();
                        assert_eq!(compose_dg(p, &m, &idx).unwrap(), m, "{m} after id");
                        assert_eq!(compose_dg(p, &idy, &m).unwrap(), m, "id after {m}");
                    }
                }
            }
        }
    }

    #[test]
    fn composition_examples() {
        let p = params(5, 0);
        let m1 = DgMorphism::f(p, 2, 3, 2, 0).unwrap();
        let m2 = DgMorphism::f(p, 3, 2, 1, m1.codomain.k).unwrap();
        assert!(compose_dg(p, &m2, &m1).unwrap().is_zero());
        assert!(compose_dg(p, &m1, &m1).is_err());
    }

    #[test]
    fn sums() {
        let p = params(3, 2);
        let m = DgMorphism::f(p, 2, 2, 1, 0).unwrap();
        assert!(m.add(&m.scaled(-1)).unwrap().is_zero());
        assert_eq!(m.add(&m).unwrap().scalar, 2);
        let z = DgMorphism::zero(m.domain, m.codomain);
        assert_eq!(z.add(&m).unwrap(), m);
    }
}
