//! Exact triangles `X -> Y -> Z -> X(1)` completing a basis morphism.

use serde::{Deserialize, Serialize};

use super::dg::{compose_dg, dgstab_hom, f_shift, g_shift, DgMorphism, MorphismKind};
use super::params::StarParams;
use super::symbols::CanonicalObject;
use crate::error::{Error, Result};

/// `X --first--> Y --second--> Z --third--> X(1)` with `Z` a sum of at most two objects.
///
/// `second` is a column (one entry per summand of `Z`), `third` a row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleSym {
    pub source: CanonicalObject,
    pub target: CanonicalObject,
    pub middle: Vec<CanonicalObject>,
    pub shifted_source: CanonicalObject,
    pub first: DgMorphism,
    pub second: Vec<DgMorphism>,
    pub third: Vec<DgMorphism>,
}

impl DgMorphism {
    /// `m(s)`, re-expressed in the basis at the shifted endpoints.
    pub fn shifted(&self, p: StarParams, s: i64) -> DgMorphism {
        let domain = self.domain.shifted(p, s);
        let codomain = self.codomain.shifted(p, s);
        let m = dgstab_hom(p, domain, codomain).expect("Hom is at most one-dimensional");
        if self.is_zero() {
            return DgMorphism::zero(domain, codomain);
        }
        debug_assert!(!m.is_zero(), "shift of a nonzero morphism vanished");
        m.scaled(self.scalar)
    }
}

// one summand of Z: its object and the closed-form symbols for the two maps through it,
// each as (kind, l, r, j, domain shift)
struct Summand {
    object: (usize, i64),
    into: (MorphismKind, usize, usize, usize, i64),
    out_of: (MorphismKind, usize, usize, usize, i64),
    sign: i64,
}

fn entry(p: StarParams, from: CanonicalObject, to: CanonicalObject, formula: (MorphismKind, usize, usize, usize, i64), sign: i64) -> Result<DgMorphism> {
    let m = dgstab_hom(p, from, to)?;
    if m.is_zero() {
        return Err(Error::Inconsistent(format!("cone map {from} -> {to} vanishes")));
    }
    let (kind, l, r, j, k) = formula;
    if let Ok(expected) = DgMorphism::basis(p, kind, l, r, j, k) {
        if expected.domain == from && expected.codomain == to && !expected.same_line(&m) {
            return Err(Error::Inconsistent(format!("cone map {expected} differs from the basis {m}")));
        }
    }
    Ok(m.scaled(sign))
}

/// The triangle on a nonzero basis morphism.
///
/// The second entry of the map `Z -> X(1)` carries a sign so that `third ∘ second`
/// vanishes in every characteristic.
pub fn cone(p: StarParams, m: &DgMorphism) -> Result<TriangleSym> {
    if m.is_zero() {
        return Err(Error::InvalidParameter("cone of the zero morphism".into()));
    }
    let (l, r, j) = (m.l, m.r, m.j);
    let k0 = m.domain.k;
    let n1 = p.n() + 1;
    let step = p.step();
    let big = step * n1 as i64;
    let mut parts = Vec::new();
    let use_f = m.kind == MorphismKind::F || p.is_half(r);
    if use_f {
        let s = k0 + f_shift(p, r, j);
        if j != r {
            parts.push(Summand {
                object: (r - j, s),
                into: (MorphismKind::F, r, r - j, r - j, s),
                out_of: (MorphismKind::G, r - j, l, r - j, s),
                sign: 1,
            });
        }
        if j != l {
            let s2 = k0 + g_shift(p, j);
            parts.push(Summand {
                object: (l - j, s2),
                into: (MorphismKind::G, r, l - j, r, s),
                out_of: (MorphismKind::F, l - j, l, l - j, s2),
                sign: -1,
            });
        }
    } else {
        let s = k0 + g_shift(p, j);
        if 2 * (j + r) >= n1 {
            if j + r != n1 {
                let t = n1 - (j + r);
                let s1 = k0 + step * (2 * n1 as i64 - (j + r) as i64) - 2;
                parts.push(Summand {
                    object: (t, s1),
                    into: (MorphismKind::G, r, t, r, s),
                    out_of: (MorphismKind::G, t, l, t, s1),
                    sign: 1,
                });
            }
        } else {
            let s1 = k0 + big - 1;
            parts.push(Summand {
                object: (j + r, s1),
                into: (MorphismKind::F, r, j + r, r, s),
                out_of: (MorphismKind::F, j + r, l, l, s1),
                sign: 1,
            });
        }
        if j != l {
            parts.push(Summand {
                object: (l - j, s),
                into: (MorphismKind::F, r, l - j, l - j, s),
                out_of: (MorphismKind::F, l - j, l, l - j, s),
                sign: -1,
            });
        }
    }
    let x1 = m.domain.shifted(p, 1);
    let mut middle = Vec::new();
    let mut second = Vec::new();
    let mut third = Vec::new();
    for s in parts {
        let z = CanonicalObject::new(p, s.object.0, s.object.1)?;
        second.push(entry(p, m.codomain, z, s.into, 1)?);
        third.push(entry(p, z, x1, s.out_of, s.sign)?);
        middle.push(z);
    }
    Ok(TriangleSym {
        source: m.domain,
        target: m.codomain,
        middle,
        shifted_source: x1,
        first: m.scaled(1),
        second,
        third,
    })
}

impl TriangleSym {
    /// `second ∘ first`, `third ∘ second` and `first(1) ∘ third`, as lists of entries.
    pub fn composites(&self, p: StarParams) -> Result<[Vec<DgMorphism>; 3]> {
        let a = self
            .second
            .iter()
            .map(|h| compose_dg(p, h, &self.first))
            .collect::<Result<Vec<_>>>()?;
        let mut b = DgMorphism::zero(self.target, self.shifted_source);
        for (h2, h1) in self.third.iter().zip(&self.second) {
            b = b.add(&compose_dg(p, h2, h1)?)?;
        }
        let f1 = self.first.shifted(p, 1);
        let c = self
            .third
            .iter()
            .map(|h| compose_dg(p, &f1, h))
            .collect::<Result<Vec<_>>>()?;
        Ok([a, vec![b], c])
    }

    /// Do all consecutive composites vanish?
    pub fn is_exact_shaped(&self, p: StarParams) -> Result<bool> {
        Ok(self.composites(p)?.iter().flatten().all(DgMorphism::is_zero))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: usize, d: usize) -> StarParams {
        StarParams::new(n, d).unwrap()
    }

    #[test]
    fn identity_has_zero_cone() {
        let p = params(3, 2);
        let x = CanonicalObject::new(p, 2, 3).unwrap();
        let t = cone(p, &dgstab_hom(p, x, x).unwrap()).unwrap();
        assert!(t.middle.is_empty());
    }

    #[test]
    fn cone_of_f221() {
        let p = params(3, 2);
        let m = DgMorphism::f(p, 2, 2, 1, 0).unwrap();
        let t = cone(p, &m).unwrap();
        assert_eq!(t.middle, vec![CanonicalObject::new(p, 1, 4).unwrap(), CanonicalObject::new(p, 1, 11).unwrap()]);
        assert!(t.is_exact_shaped(p).unwrap());
    }

    #[test]
    fn every_cone_is_exact_shaped() {
        for n in 2..=7 {
            for d in 0..=3 {
                let p = params(n, d);
                let objs = CanonicalObject::all(p);
                for &x in &objs {
                    for &y in &objs {
                        let m = dgstab_hom(p, x, y).unwrap();
                        if m.is_zero() {
                            continue;
                        }
                        let t = cone(p, &m).unwrap_or_else(|e| panic!("n={n} d={d} {m}: {e}"));
                        let c = t.composites(p).unwrap_or_else(|e| panic!("n={n} d={d} {m} {t:?}: {e}"));
                        assert!(
                            c.iter().flatten().all(DgMorphism::is_zero),
                            "n={n} d={d} {m}: {c:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn boundary_g_cones_agree() {
        // j + r = (n+1)/2: both g-forms of the triangle name the same middle term
        for n in [3usize, 5, 7] {
            for d in 0..=2 {
                let p = params(n, d);
                let h = n.div_ceil(2);
                for l in 1..=h {
                    for r in 1..h {
                        let j = h - r;
                        let Ok(m) = DgMorphism::g(p, l, r, j, 0) else { continue };
                        let t = cone(p, &m).unwrap();
                        let expected = CanonicalObject::new(p, j + r, p.step() * (n as i64 + 1) - 1).unwrap();
                        assert!(t.middle.contains(&expected), "n={n} d={d} {m}: {:?}", t.middle);
                    }
                }
            }
        }
    }
}
