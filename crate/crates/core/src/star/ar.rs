//! The Auslander-Reiten quiver of `A-dgstab`: a cylinder for even `d`, a Möbius strip for odd `d`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::dg::{compose_dg, dgstab_hom, normalize, DgMorphism};
use super::params::StarParams;
use super::symbols::{CanonicalObject, StarModuleSymbol};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Cylinder,
    Moebius,
}

/// `(x, y) -> (x+1, y+1)` or `(x, y) -> (x, y-1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArrowKind {
    Diagonal,
    Vertical,
}

pub type Vertex = (i64, usize);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArArrow {
    pub from: Vertex,
    pub to: Vertex,
    pub kind: ArrowKind,
    pub label: DgMorphism,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArQuiver {
    pub params: StarParams,
    pub shape: Shape,
    /// Columns of the covering quiver before any identification.
    pub columns: i64,
    pub rows: usize,
    #[serde(with = "vertex_list")]
    pub vertices: BTreeMap<Vertex, CanonicalObject>,
    pub arrows: Vec<ArArrow>,
}

mod vertex_list {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::{CanonicalObject, Vertex};

    #[derive(Serialize, Deserialize)]
    struct Entry {
        x: i64,
        y: usize,
        object: CanonicalObject,
    }

    pub fn serialize<S: Serializer>(m: &BTreeMap<Vertex, CanonicalObject>, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<Entry> = m.iter().map(|(&(x, y), &object)| Entry { x, y, object }).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<Vertex, CanonicalObject>, D::Error> {
        let v = Vec::<Entry>::deserialize(d)?;
        Ok(v.into_iter().map(|e| ((e.x, e.y), e.object)).collect())
    }
}

fn step(kind: ArrowKind, (x, y): Vertex) -> Vertex {
    match kind {
        ArrowKind::Diagonal => (x + 1, y + 1),
        ArrowKind::Vertical => (x, y - 1),
    }
}

fn admissible(n: usize, kind: ArrowKind, (_, y): Vertex) -> bool {
    match kind {
        ArrowKind::Diagonal => y < n,
        ArrowKind::Vertical => y > 1,
    }
}

impl ArQuiver {
    /// The object at a vertex of the covering quiver: `M^1_y((d+2)x)`.
    pub fn object_at(&self, (x, y): Vertex) -> CanonicalObject {
        normalize(
            self.params,
            StarModuleSymbol {
                i: 1,
                j: y,
                k: self.params.step() * x,
            },
        )
    }

    /// The stored representative of a covering vertex.
    pub fn representative(&self, (x, y): Vertex) -> Vertex {
        let v = (x.rem_euclid(self.columns), y);
        match self.shape {
            Shape::Cylinder => v,
            Shape::Moebius => {
                let t = tau(self.params, v);
                if self.vertices.contains_key(&v) {
                    v
                } else {
                    t
                }
            }
        }
    }

    /// The labelled arrow out of a covering vertex.
    pub fn arrow(&self, kind: ArrowKind, from: Vertex) -> Result<DgMorphism> {
        if !admissible(self.rows, kind, from) {
            return Err(Error::InvalidParameter(format!("no {kind:?} arrow at {from:?}")));
        }
        let m = dgstab_hom(self.params, self.object_at(from), self.object_at(step(kind, from)))?;
        if m.is_zero() {
            return Err(Error::Inconsistent(format!("arrow {kind:?} at {from:?} has no label")));
        }
        Ok(m)
    }

    /// Composite of the labels along a word, starting at a covering vertex.
    pub fn path_morphism(&self, start: Vertex, path: &[ArrowKind]) -> Result<DgMorphism> {
        let x = self.object_at(start);
        let mut acc = dgstab_hom(self.params, x, x)?;
        let mut v = start;
        for &kind in path {
            let a = self.arrow(kind, v)?;
            acc = compose_dg(self.params, &a, &acc)?;
            v = step(kind, v);
        }
        Ok(acc)
    }

    /// Is the composite along `path` zero? At least `y` vertical or `n+1-y` diagonal arrows.
    pub fn zero_path(&self, start: Vertex, path: &[ArrowKind]) -> Result<bool> {
        let mut v = start;
        for &kind in path {
            if !admissible(self.rows, kind, v) {
                return Err(Error::InvalidParameter(format!("path leaves the quiver at {v:?}")));
            }
            v = step(kind, v);
        }
        let vertical = path.iter().filter(|&&k| k == ArrowKind::Vertical).count();
        let diagonal = path.len() - vertical;
        let y = start.1;
        Ok(vertical >= y || diagonal >= self.rows + 1 - y)
    }

    /// All admissible words of length `len` from a covering vertex.
    pub fn paths_from(&self, start: Vertex, len: usize) -> Vec<Vec<ArrowKind>> {
        let mut out = vec![(start, Vec::new())];
        for _ in 0..len {
            let mut next = Vec::new();
            for (v, w) in out {
                for kind in [ArrowKind::Diagonal, ArrowKind::Vertical] {
                    if admissible(self.rows, kind, v) {
                        let mut w2: Vec<ArrowKind> = w.clone();
                        w2.push(kind);
                        next.push((step(kind, v), w2));
                    }
                }
            }
            out = next;
        }
        out.into_iter().map(|(_, w)| w).collect()
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        self.arrows.iter().filter(|a| a.to == v).count()
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.arrows.iter().filter(|a| a.from == v).count()
    }

    /// Graphviz rendering, vertices at their covering coordinates.
    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "digraph ar_quiver {{\n  label=\"A_{{{},{}}} {:?}\";",
            self.params.n(),
            self.params.d(),
            self.shape
        );
        for (&(x, y), o) in &self.vertices {
            let _ = writeln!(s, "  \"{x},{y}\" [label=\"{o}\", pos=\"{x},{y}!\"];");
        }
        for a in &self.arrows {
            let style = match a.kind {
                ArrowKind::Diagonal => "solid",
                ArrowKind::Vertical => "dashed",
            };
            let _ = writeln!(
                s,
                "  \"{},{}\" -> \"{},{}\" [label=\"{}\", style={style}];",
                a.from.0,
                a.from.1,
                a.to.0,
                a.to.1,
                a.label.symbol()
            );
        }
        s.push_str("}\n");
        s
    }
}

/// `τ(x, y) = (x - y + (P+n+1)/2, n+1-y)` on `Q_{P,n}`.
pub fn tau(p: StarParams, (x, y): Vertex) -> Vertex {
    let big = p.big_p();
    let shift = (big + p.ni() + 1) / 2;
    ((x - y as i64 + shift).rem_euclid(big), p.n() + 1 - y)
}

pub fn ar_quiver(p: StarParams) -> Result<ArQuiver> {
    let n = p.n();
    let (shape, columns) = if p.d().is_multiple_of(2) {
        (Shape::Cylinder, p.big_p() / 2)
    } else {
        (Shape::Moebius, p.big_p())
    };
    let mut q = ArQuiver {
        params: p,
        shape,
        columns,
        rows: n,
        vertices: BTreeMap::new(),
        arrows: Vec::new(),
    };
    for x in 0..columns {
        for y in 1..=n {
            let v = (x, y);
            let keep = match shape {
                Shape::Cylinder => true,
                Shape::Moebius => v <= tau(p, v),
            };
            if keep {
                q.vertices.insert(v, q.object_at(v));
            }
        }
    }
    let distinct: BTreeSet<_> = q.vertices.values().collect();
    if distinct.len() != q.vertices.len() {
        return Err(Error::Inconsistent("two AR vertices carry the same object".into()));
    }
    let reps: Vec<Vertex> = q.vertices.keys().copied().collect();
    for v in reps {
        for kind in [ArrowKind::Diagonal, ArrowKind::Vertical] {
            if admissible(n, kind, v) {
                let label = q.arrow(kind, v)?;
                let to = q.representative(step(kind, v));
                if q.vertices[&to] != label.codomain {
                    return Err(Error::Inconsistent(format!("arrow {v:?} -> {to:?} lands elsewhere")));
                }
                q.arrows.push(ArArrow { from: v, to, kind, label });
            }
        }
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quiver(n: usize, d: usize) -> ArQuiver {
        ar_quiver(StarParams::new(n, d).unwrap()).unwrap()
    }

    #[test]
    fn figures() {
        let q = quiver(3, 2);
        assert_eq!(q.shape, Shape::Cylinder);
        assert_eq!((q.columns, q.rows, q.vertices.len()), (7, 3, 21));
        let q = quiver(3, 1);
        assert_eq!(q.shape, Shape::Moebius);
        assert_eq!((q.columns, q.rows, q.vertices.len()), (10, 3, 15));
    }

    #[test]
    fn every_object_appears_once() {
        for n in 2..=6 {
            for d in 0..=3 {
                let p = StarParams::new(n, d).unwrap();
                let q = ar_quiver(p).unwrap();
                assert_eq!(q.vertices.len() as i64, n as i64 * p.big_p() / 2);
                let objs: BTreeSet<_> = q.vertices.values().copied().collect();
                assert_eq!(objs, CanonicalObject::all(p).into_iter().collect());
            }
        }
    }

    #[test]
    fn degrees_follow_length() {
        for n in 2..=5 {
            for d in 0..=3 {
                let q = quiver(n, d);
                for (&v, o) in &q.vertices {
                    let expected = if o.l == 1 { 1 } else { 2 };
                    assert_eq!(q.out_degree(v), expected, "n={n} d={d} {v:?} {o}");
                    assert_eq!(q.in_degree(v), expected, "n={n} d={d} {v:?} {o}");
                }
            }
        }
    }

    #[test]
    fn squares_commute() {
        use ArrowKind::*;
        for n in 3..=6 {
            for d in 0..=3 {
                let q = quiver(n, d);
                for x in 0..q.columns {
                    for y in 2..n {
                        let a = q.path_morphism((x, y), &[Diagonal, Vertical]).unwrap();
                        let b = q.path_morphism((x, y), &[Vertical, Diagonal]).unwrap();
                        assert!(!a.is_zero() && a.same_line(&b), "n={n} d={d} ({x},{y}): {a} vs {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn zero_path_examples() {
        use ArrowKind::*;
        let q = quiver(3, 2);
        assert!(q.zero_path((0, 1), &[Diagonal, Vertical]).unwrap());
        assert!(q.zero_path((0, 1), &[Vertical]).is_err());
        assert!(!q.zero_path((0, 3), &[Vertical, Vertical]).unwrap());
        assert!(!q.zero_path((0, 2), &[]).unwrap());
        assert!(q.zero_path((0, 2), &[Diagonal, Vertical, Vertical]).unwrap());
    }

    #[test]
    fn zero_path_matches_composition() {
        for n in 2..=5 {
            for d in 0..=3 {
                let q = quiver(n, d);
                for &v in q.vertices.keys() {
                    for len in 0..=n + 1 {
                        for w in q.paths_from(v, len) {
                            let pred = q.zero_path(v, &w).unwrap();
                            let m = q.path_morphism(v, &w).unwrap();
                            assert_eq!(pred, m.is_zero(), "n={n} d={d} {v:?} {w:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn tau_is_a_free_involution() {
        for n in 2..=6 {
            for d in [1usize, 3] {
                let p = StarParams::new(n, d).unwrap();
                for x in 0..p.big_p() {
                    for y in 1..=n {
                        let t = tau(p, (x, y));
                        assert_ne!(t, (x, y));
                        assert_eq!(tau(p, t), (x, y));
                    }
                }
            }
        }
    }

    #[test]
    fn dot_output() {
        let dot = quiver(2, 0).to_dot();
        assert!(dot.starts_with("digraph"));
        assert_eq!(dot.matches("->").count(), 4);
    }
}
