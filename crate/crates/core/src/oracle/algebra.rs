//! Graded quivers with relations and their standard-monomial path bases.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{FieldElem, Matrix, PrimeField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub degree: i64,
}

/// A directed path: a start vertex and a composable sequence of arrow indices,
/// read left to right (`a1 a2` means first `a1`, then `a2`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub start: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Self {
            start: v,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// Scalar-linear combination of paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(i64, Path)>,
}

impl Relation {
    pub fn monomial(path: Path) -> Self {
        Self {
            terms: vec![(1, path)],
        }
    }
}

/// A standard monomial of the quotient algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub path: Path,
    pub source: usize,
    pub target: usize,
    pub degree: i64,
}

/// Finite-dimensional quotient of a graded path algebra, with a reduction table.
pub struct AlgebraPresentation {
    field: PrimeField,
    vertex_count: usize,
    arrows: Vec<Arrow>,
    relations: Vec<Relation>,
    nilpotence_bound: usize,
    basis: Vec<BasisElement>,
    by_source: Vec<Vec<usize>>,
    // mult[b][a] = normal form of basis element b followed by arrow a
    mult: Vec<Vec<Vec<(usize, FieldElem)>>>,
    normal_forms: HashMap<Path, Vec<(usize, FieldElem)>>,
}

impl fmt::Debug for AlgebraPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgebraPresentation")
            .field("field", &self.field)
            .field("vertex_count", &self.vertex_count)
            .field("arrows", &self.arrows)
            .field("dim", &self.basis.len())
            .finish()
    }
}

impl AlgebraPresentation {
    pub fn new(
        field: PrimeField,
        vertex_count: usize,
        arrows: Vec<Arrow>,
        relations: Vec<Relation>,
        nilpotence_bound: usize,
    ) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidPresentation("no vertices".into()));
        }
        for a in &arrows {
            if a.source >= vertex_count || a.target >= vertex_count {
                return Err(Error::InvalidPresentation(format!("arrow {} out of range", a.name)));
            }
            if a.degree > 0 {
                return Err(Error::InvalidPresentation(format!(
                    "arrow {} has positive degree {}",
                    a.name, a.degree
                )));
            }
        }
        for rel in &relations {
            validate_relation(&arrows, rel)?;
        }

        let top = nilpotence_bound + 1;
        let mut by_len: Vec<Vec<Path>> = vec![(0..vertex_count).map(Path::trivial).collect()];
        for l in 1..=top {
            let mut next = Vec::new();
            for p in &by_len[l - 1] {
                let end = path_end(&arrows, p);
                for (ai, a) in arrows.iter().enumerate() {
                    if a.source == end {
                        let mut q = p.clone();
                        q.arrows.push(ai);
                        next.push(q);
                    }
                }
            }
            by_len.push(next);
        }

        let mut basis = Vec::new();
        let mut normal_forms: HashMap<Path, Vec<(usize, FieldElem)>> = HashMap::new();
        // (length, column) -> basis index for standard monomials
        for l in 0..=top {
            // later paths become pivots, so earlier ones survive as standard monomials
            let cols: Vec<&Path> = by_len[l].iter().rev().collect();
            let index: HashMap<&Path, usize> = cols.iter().enumerate().map(|(i, p)| (*p, i)).collect();
            let mut rows: Vec<Vec<FieldElem>> = Vec::new();
            for rel in &relations {
                let rl = rel.terms[0].1.len();
                if rl > l {
                    continue;
                }
                let (rs, rt) = relation_ends(&arrows, rel);
                for a in 0..=(l - rl) {
                    let b = l - rl - a;
                    for u in by_len[a].iter().filter(|u| path_end(&arrows, u) == rs) {
                        for w in by_len[b].iter().filter(|w| w.start == rt) {
                            let mut row = vec![0; cols.len()];
                            for (c, p) in &rel.terms {
                                let mut full = u.clone();
                                full.arrows.extend_from_slice(&p.arrows);
                                full.arrows.extend_from_slice(&w.arrows);
                                let j = index[&full];
                                row[j] = field.add(row[j], field.elem(*c));
                            }
                            rows.push(row);
                        }
                    }
                }
            }
            let ech = if rows.is_empty() {
                None
            } else {
                let flat: Vec<FieldElem> = rows.concat();
                Some(Matrix::from_vec(field, rows.len(), cols.len(), flat).echelon())
            };
            let mut is_pivot = vec![false; cols.len()];
            if let Some(e) = &ech {
                for &c in &e.pivots {
                    is_pivot[c] = true;
                }
            }
            let mut std_index = vec![usize::MAX; cols.len()];
            // basis indices in path order, not reversed column order
            for c in (0..cols.len()).rev() {
                if !is_pivot[c] {
                    if l == top {
                        return Err(Error::InvalidPresentation(format!(
                            "path of length {top} survives; nilpotence bound {nilpotence_bound} too small"
                        )));
                    }
                    let p = cols[c].clone();
                    std_index[c] = basis.len();
                    basis.push(BasisElement {
                        source: p.start,
                        target: path_end(&arrows, &p),
                        degree: p.arrows.iter().map(|&a| arrows[a].degree).sum(),
                        path: p,
                    });
                }
            }
            for c in 0..cols.len() {
                let nf = if !is_pivot[c] {
                    vec![(std_index[c], 1 % field.prime())]
                } else {
                    let e = ech.as_ref().unwrap();
                    let r = e.pivots.iter().position(|&pc| pc == c).unwrap();
                    (0..cols.len())
                        .filter(|&cc| !is_pivot[cc] && e.reduced.get(r, cc) != 0)
                        .map(|cc| (std_index[cc], field.neg(e.reduced.get(r, cc))))
                        .collect()
                };
                normal_forms.insert(cols[c].clone(), nf);
            }
        }

        let mut by_source = vec![Vec::new(); vertex_count];
        for (i, b) in basis.iter().enumerate() {
            by_source[b.source].push(i);
        }
        let mult = basis
            .iter()
            .map(|b| {
                arrows
                    .iter()
                    .enumerate()
                    .map(|(ai, a)| {
                        if a.source != b.target {
                            return Vec::new();
                        }
                        let mut p = b.path.clone();
                        p.arrows.push(ai);
                        normal_forms[&p].clone()
                    })
                    .collect()
            })
            .collect();

        Ok(Self {
            field,
            vertex_count,
            arrows,
            relations,
            nilpotence_bound,
            basis,
            by_source,
            mult,
            normal_forms,
        })
    }

    /// The presentation of the opposite algebra: arrows and paths reversed.
    pub fn opposite(&self) -> Result<Self> {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow {
                name: format!("{}*", a.name),
                source: a.target,
                target: a.source,
                degree: a.degree,
            })
            .collect();
        let relations = self
            .relations
            .iter()
            .map(|r| Relation {
                terms: r
                    .terms
                    .iter()
                    .map(|(c, p)| {
                        let end = path_end(&self.arrows, p);
                        (
                            *c,
                            Path {
                                start: end,
                                arrows: p.arrows.iter().rev().copied().collect(),
                            },
                        )
                    })
                    .collect(),
            })
            .collect();
        Self::new(self.field, self.vertex_count, arrows, relations, self.nilpotence_bound)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn nilpotence_bound(&self) -> usize {
        self.nilpotence_bound
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Basis elements of the indecomposable projective `e_v A`.
    pub fn basis_from(&self, v: usize) -> &[usize] {
        &self.by_source[v]
    }

    /// `b * a` in the standard-monomial basis.
    pub fn mul_arrow(&self, b: usize, a: usize) -> &[(usize, FieldElem)] {
        &self.mult[b][a]
    }

    /// Normal form of an arbitrary path; paths longer than the bound vanish.
    pub fn reduce_path(&self, p: &Path) -> Vec<(usize, FieldElem)> {
        if p.len() > self.nilpotence_bound + 1 {
            return Vec::new();
        }
        self.normal_forms.get(p).cloned().unwrap_or_default()
    }

    pub fn path_end(&self, p: &Path) -> usize {
        path_end(&self.arrows, p)
    }

    pub fn path_degree(&self, p: &Path) -> i64 {
        p.arrows.iter().map(|&a| self.arrows[a].degree).sum()
    }
}

fn path_end(arrows: &[Arrow], p: &Path) -> usize {
    p.arrows.last().map_or(p.start, |&a| arrows[a].target)
}

fn relation_ends(arrows: &[Arrow], rel: &Relation) -> (usize, usize) {
    let p = &rel.terms[0].1;
    (p.start, path_end(arrows, p))
}

fn validate_relation(arrows: &[Arrow], rel: &Relation) -> Result<()> {
    let Some((_, first)) = rel.terms.first() else {
        return Err(Error::InvalidPresentation("empty relation".into()));
    };
    if first.is_empty() {
        return Err(Error::InvalidPresentation("relation contains a trivial path".into()));
    }
    let ends = relation_ends(arrows, rel);
    let degree: i64 = first.arrows.iter().map(|&a| arrows[a].degree).sum();
    for (_, p) in &rel.terms {
        let mut at = p.start;
        for &a in &p.arrows {
            let arrow = arrows
                .get(a)
                .ok_or_else(|| Error::InvalidPresentation(format!("unknown arrow {a}")))?;
            if arrow.source != at {
                return Err(Error::InvalidPresentation("relation path not composable".into()));
            }
            at = arrow.target;
        }
        if (p.start, at) != ends {
            return Err(Error::InvalidPresentation("relation terms have different endpoints".into()));
        }
        if p.len() != first.len() {
            return Err(Error::InvalidPresentation("relation is not length-homogeneous".into()));
        }
        if p.arrows.iter().map(|&a| arrows[a].degree).sum::<i64>() != degree {
            return Err(Error::InvalidPresentation("relation is not degree-homogeneous".into()));
        }
    }
    Ok(())
}

/// A presentation together with its opposite, shared by all modules over it.
#[derive(Clone)]
pub struct Algebra {
    inner: Arc<AlgebraPair>,
}

struct AlgebraPair {
    label: String,
    ordinary: AlgebraPresentation,
    opposite: AlgebraPresentation,
}

/// Which of the two presentations a module is over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Ordinary,
    Opposite,
}

impl Side {
    pub fn flip(self) -> Self {
        match self {
            Side::Ordinary => Side::Opposite,
            Side::Opposite => Side::Ordinary,
        }
    }
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra({})", self.inner.label)
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }
}

impl Eq for Algebra {}

impl Algebra {
    pub fn new(label: impl Into<String>, presentation: AlgebraPresentation) -> Result<Self> {
        let opposite = presentation.opposite()?;
        Ok(Self {
            inner: Arc::new(AlgebraPair {
                label: label.into(),
                ordinary: presentation,
                opposite,
            }),
        })
    }

    pub fn label(&self) -> &str {
        &self.inner.label
    }

    pub fn field(&self) -> PrimeField {
        self.inner.ordinary.field
    }

    pub fn presentation(&self, side: Side) -> &AlgebraPresentation {
        match side {
            Side::Ordinary => &self.inner.ordinary,
            Side::Opposite => &self.inner.opposite,
        }
    }
}

/// Truncated cyclic quiver `A_{n,d}`: arrows `a_i: i -> i+1`, `deg a_n = -d`,
/// all paths of length `n + 1` set to zero.
pub fn build_star_algebra(field: PrimeField, n: usize, d: usize) -> Result<Algebra> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("star algebra needs n >= 2, got {n}")));
    }
    let arrows: Vec<Arrow> = (0..n)
        .map(|i| Arrow {
            name: format!("a{}", i + 1),
            source: i,
            target: (i + 1) % n,
            degree: if i == n - 1 { -(d as i64) } else { 0 },
        })
        .collect();
    let relations = (0..n)
        .map(|v| {
            Relation::monomial(Path {
                start: v,
                arrows: (0..=n).map(|t| (v + t) % n).collect(),
            })
        })
        .collect();
    let pres = AlgebraPresentation::new(field, n, arrows, relations, n)?;
    Algebra::new(format!("A(n={n},d={d})"), pres)
}

/// `k[x,y]/(x^2, y^2)` with `x` in degree 0 and `y` in degree -1.
pub fn build_kronecker_algebra(field: PrimeField) -> Result<Algebra> {
    let arrows = vec![
        Arrow {
            name: "x".into(),
            source: 0,
            target: 0,
            degree: 0,
        },
        Arrow {
            name: "y".into(),
            source: 0,
            target: 0,
            degree: -1,
        },
    ];
    let p = |a: &[usize]| Path {
        start: 0,
        arrows: a.to_vec(),
    };
    let relations = vec![
        Relation::monomial(p(&[0, 0])),
        Relation::monomial(p(&[1, 1])),
        Relation {
            terms: vec![(1, p(&[0, 1])), (-1, p(&[1, 0]))],
        },
    ];
    let pres = AlgebraPresentation::new(field, 1, arrows, relations, 2)?;
    Algebra::new("k[x,y]/(x^2,y^2)", pres)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> PrimeField {
        PrimeField::default()
    }

    #[test]
    fn star_algebra_shape() {
        let a = build_star_algebra(f(), 3, 2).unwrap();
        let p = a.presentation(Side::Ordinary);
        assert_eq!(p.vertex_count(), 3);
        assert_eq!(p.arrows().len(), 3);
        let degs: Vec<i64> = p.arrows().iter().map(|a| a.degree).collect();
        assert_eq!(degs, vec![0, 0, -2]);
        assert_eq!(p.dim(), 12);
    }

    #[test]
    fn star_projectives_have_length_n_plus_one() {
        let a = build_star_algebra(f(), 4, 1).unwrap();
        let p = a.presentation(Side::Ordinary);
        for v in 0..4 {
            assert_eq!(p.basis_from(v).len(), 5);
        }
        assert!(build_star_algebra(f(), 1, 0).is_err());
        let a = build_star_algebra(f(), 2, 0).unwrap();
        assert!(a.presentation(Side::Ordinary).arrows().iter().all(|a| a.degree == 0));
    }

    #[test]
    fn kronecker_basis() {
        let a = build_kronecker_algebra(f()).unwrap();
        let p = a.presentation(Side::Ordinary);
        let names: Vec<String> = p
            .basis()
            .iter()
            .map(|b| b.path.arrows.iter().map(|&i| p.arrows()[i].name.clone()).collect())
            .collect();
        assert_eq!(names, vec!["", "x", "y", "xy"]);
        let degs: Vec<i64> = p.basis().iter().map(|b| b.degree).collect();
        assert_eq!(degs, vec![0, 0, -1, -1]);
        let xyx = Path {
            start: 0,
            arrows: vec![0, 1, 0],
        };
        assert!(p.reduce_path(&xyx).is_empty());
        let yx = Path {
            start: 0,
            arrows: vec![1, 0],
        };
        assert_eq!(p.reduce_path(&yx), vec![(3, 1)]);
    }

    #[test]
    fn rejects_bad_presentations() {
        let arrows = vec![Arrow {
            name: "z".into(),
            source: 0,
            target: 0,
            degree: 1,
        }];
        assert!(AlgebraPresentation::new(f(), 1, arrows, vec![], 1).is_err());
        let arrows = vec![Arrow {
            name: "z".into(),
            source: 0,
            target: 0,
            degree: 0,
        }];
        // z^3 survives with bound 1 and only z^3 = 0 imposed
        let rel = Relation::monomial(Path {
            start: 0,
            arrows: vec![0, 0, 0],
        });
        assert!(AlgebraPresentation::new(f(), 1, arrows, vec![rel], 1).is_err());
    }

    #[test]
    fn opposite_reverses_arrows() {
        let a = build_star_algebra(f(), 3, 1).unwrap();
        let op = a.presentation(Side::Opposite);
        assert_eq!(op.arrows()[0].source, 1);
        assert_eq!(op.arrows()[0].target, 0);
        assert_eq!(op.dim(), 12);
    }
}
