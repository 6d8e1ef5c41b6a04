//! The graded algebra `k[x,y]/(x², y²)`: its indecomposables, Hom tables in A-grstab and
//! A-dgstab, and the cone `K` of `g = f₋₁ + f₋₂: S -> S(2)`, which lies outside the orbit category.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::linalg::{Matrix, PrimeField};
use crate::oracle::algebra::{build_kronecker_algebra, Algebra, Side};
use crate::oracle::module::GradedModule;
use crate::oracle::orbit::{les_cone_hom_dim, orbit_hom, OrbitMorphism};
use crate::oracle::stable::stable_hom;

const X: usize = 0;
const Y: usize = 1;

/// Indecomposable non-projective modules up to shift. `OmegaS(m)` is `K^m`, for any sign of `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum KroneckerKind {
    S,
    OmegaS(i64),
    M0(usize),
    Minf(usize),
}

impl KroneckerKind {
    pub fn dimension(self) -> usize {
        match self {
            KroneckerKind::S => 1,
            KroneckerKind::OmegaS(m) => 2 * m.unsigned_abs() as usize + 1,
            KroneckerKind::M0(m) | KroneckerKind::Minf(m) => 2 * m,
        }
    }
}

impl fmt::Display for KroneckerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KroneckerKind::S => write!(f, "S"),
            KroneckerKind::OmegaS(m) => write!(f, "OmegaS({m})"),
            KroneckerKind::M0(m) => write!(f, "M0({m})"),
            KroneckerKind::Minf(m) => write!(f, "Minf({m})"),
        }
    }
}

/// A shifted indecomposable `kind(shift)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct KroneckerObject {
    pub kind: KroneckerKind,
    pub shift: i64,
}

impl KroneckerObject {
    pub fn new(kind: KroneckerKind, shift: i64) -> Self {
        Self { kind, shift }
    }

    pub fn module(&self, alg: &Algebra) -> Result<GradedModule> {
        kronecker_module(alg, self.kind, self.shift)
    }
}

impl fmt::Display for KroneckerObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        if self.shift != 0 {
            write!(f, "({})", self.shift)?;
        }
        Ok(())
    }
}

/// Catalogue entry: an indecomposable with its total dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KroneckerCatalogueEntry {
    pub kind: KroneckerKind,
    pub shift: i64,
    pub dimension: usize,
}

impl From<KroneckerObject> for KroneckerCatalogueEntry {
    fn from(o: KroneckerObject) -> Self {
        Self {
            kind: o.kind,
            shift: o.shift,
            dimension: o.kind.dimension(),
        }
    }
}

// basis element: degree; edges: (arrow, from, to)
fn from_graph(alg: &Algebra, degrees: &[i64], edges: &[(usize, usize, usize)]) -> Result<GradedModule> {
    let field = alg.field();
    let mut index = Vec::with_capacity(degrees.len());
    let mut dims: BTreeMap<(usize, i64), usize> = BTreeMap::new();
    for &g in degrees {
        let e = dims.entry((0, g)).or_insert(0);
        index.push(*e);
        *e += 1;
    }
    let pres = alg.presentation(Side::Ordinary);
    let mut action: BTreeMap<(usize, i64), Matrix> = BTreeMap::new();
    for &(a, from, to) in edges {
        let g = degrees[from];
        let tg = g + pres.arrows()[a].degree;
        if degrees[to] != tg {
            return Err(Error::Inconsistent(format!("edge {from}->{to} has the wrong degree")));
        }
        let block = action
            .entry((a, g))
            .or_insert_with(|| Matrix::zeros(field, dims[&(0, tg)], dims[&(0, g)]));
        block.set(index[to], index[from], 1);
    }
    GradedModule::new(alg, Side::Ordinary, dims, action)
}

/// The explicit module `kind(shift)`; `k(i)` sits in degree `-i`.
pub fn kronecker_module(alg: &Algebra, kind: KroneckerKind, shift: i64) -> Result<GradedModule> {
    let pres = alg.presentation(Side::Ordinary);
    if pres.vertex_count() != 1 || pres.arrows().len() != 2 {
        return Err(Error::AlgebraMismatch);
    }
    let mut deg = Vec::new();
    let mut edges = Vec::new();
    match kind {
        KroneckerKind::S | KroneckerKind::OmegaS(0) => deg.push(0),
        KroneckerKind::OmegaS(m) if m > 0 => {
            // v_0..v_m then w_1..w_m
            let m = m as usize;
            deg.extend((0..=m).map(|i| -(i as i64)));
            deg.extend((1..=m).map(|i| -(i as i64)));
            let w = |i: usize| m + i;
            for i in 1..=m {
                edges.push((X, i, w(i)));
                edges.push((Y, i - 1, w(i)));
            }
        }
        KroneckerKind::OmegaS(m) => {
            // v_1..v_m then w_0..w_m
            let m = m.unsigned_abs() as usize;
            deg.extend((1..=m).map(|i| i as i64));
            deg.extend((0..=m).map(|i| i as i64));
            let v = |i: usize| i - 1;
            let w = |i: usize| m + i;
            for i in 1..=m {
                edges.push((X, v(i), w(i)));
                edges.push((Y, v(i), w(i - 1)));
            }
        }
        KroneckerKind::M0(m) => {
            if m == 0 {
                return Err(Error::InvalidParameter("M0 needs m >= 1".into()));
            }
            // v_1..v_m then w_0..w_{m-1}
            deg.extend((1..=m).map(|i| i as i64));
            deg.extend((0..m).map(|i| i as i64));
            let v = |i: usize| i - 1;
            let w = |i: usize| m + i;
            for i in 1..=m {
                if i < m {
                    edges.push((X, v(i), w(i)));
                }
                edges.push((Y, v(i), w(i - 1)));
            }
        }
        KroneckerKind::Minf(m) => {
            if m == 0 {
                return Err(Error::InvalidParameter("Minf needs m >= 1".into()));
            }
            // v_0..v_{m-1} then w_0..w_{m-1}
            deg.extend((0..m).map(|i| i as i64));
            deg.extend((0..m).map(|i| i as i64));
            for i in 0..m {
                edges.push((X, i, m + i));
                if i + 1 < m {
                    edges.push((Y, i + 1, m + i));
                }
            }
        }
    }
    Ok(from_graph(alg, &deg, &edges)?.shift(shift))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Category {
    Grstab,
    Dgstab,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableCell {
    pub from: String,
    pub to: String,
    pub expected: usize,
    pub computed: usize,
}

/// One closed-form Hom table, evaluated cell by cell.
#[derive(Clone, Debug, Serialize)]
pub struct HomTable {
    pub category: Category,
    pub formula: String,
    pub cells: Vec<TableCell>,
}

impl HomTable {
    pub fn mismatches(&self) -> impl Iterator<Item = &TableCell> {
        self.cells.iter().filter(|c| c.expected != c.computed)
    }

    pub fn passed(&self) -> bool {
        self.mismatches().next().is_none()
    }
}

/// `m` runs over `1..=m_max`, shifts over `-k_max..=k_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TableRanges {
    pub m_max: usize,
    pub k_max: i64,
}

impl Default for TableRanges {
    fn default() -> Self {
        Self { m_max: 4, k_max: 12 }
    }
}

type Cell = (usize, KroneckerObject, KroneckerObject, usize);

fn obj(kind: KroneckerKind, shift: i64) -> KroneckerObject {
    KroneckerObject::new(kind, shift)
}

fn ind(b: bool) -> usize {
    usize::from(b)
}

fn evaluate(
    field: PrimeField,
    category: Category,
    formulas: &[&str],
    cells: Vec<Cell>,
    exec: Execution,
) -> Result<Vec<HomTable>> {
    let alg = build_kronecker_algebra(field)?;
    let computed = exec.map(cells.clone(), |(_, x, y, _)| -> Result<usize> {
        let xm = x.module(&alg)?;
        let ym = y.module(&alg)?;
        Ok(match category {
            Category::Grstab => stable_hom(&xm, &ym)?.dim(),
            Category::Dgstab => orbit_hom(&xm, &ym)?.total_dim(),
        })
    });
    let mut tables: Vec<HomTable> = formulas
        .iter()
        .map(|f| HomTable {
            category,
            formula: f.to_string(),
            cells: Vec::new(),
        })
        .collect();
    for ((t, x, y, expected), c) in cells.into_iter().zip(computed) {
        tables[t].cells.push(TableCell {
            from: x.to_string(),
            to: y.to_string(),
            expected,
            computed: c?,
        });
    }
    Ok(tables)
}

/// The eight A-grstab tables, each cell computed by `stable_hom`.
pub fn grstab_tables(field: PrimeField, ranges: TableRanges, exec: Execution) -> Result<Vec<HomTable>> {
    use KroneckerKind::*;
    let formulas = [
        "dim Hom(S, Ω^m S(k)) = 1 iff -m <= k <= -1",
        "dim Hom(S, Ω^-n S(k)) = 1 iff 0 <= k <= n",
        "dim Hom(S, M0(m)(k)) = 1 iff 0 <= k <= m-1",
        "dim Hom(S, Minf(m)(k)) = 1 iff 0 <= k <= m-1",
        "dim Hom(M0(m), S(k)) = 1 iff -m <= k <= -1",
        "dim Hom(Minf(m), S(k)) = 1 iff -m+1 <= k <= 0",
        "dim Hom(Minf(m), Minf(1)(k)) = [k = 0] + [k = -m+1]",
        "dim Hom(M0(m), M0(1)(k)) = [k = 0] + [k = -m]",
    ];
    let s = obj(S, 0);
    let mut cells = Vec::new();
    for m in 1..=ranges.m_max {
        let mi = m as i64;
        for k in -ranges.k_max..=ranges.k_max {
            cells.push((0, s, obj(OmegaS(mi), k), ind((-mi..=-1).contains(&k))));
            cells.push((2, s, obj(M0(m), k), ind((0..mi).contains(&k))));
            cells.push((3, s, obj(Minf(m), k), ind((0..mi).contains(&k))));
            cells.push((4, obj(M0(m), 0), obj(S, k), ind((-mi..=-1).contains(&k))));
            cells.push((5, obj(Minf(m), 0), obj(S, k), ind((1 - mi..=0).contains(&k))));
            cells.push((6, obj(Minf(m), 0), obj(Minf(1), k), ind(k == 0) + ind(k == 1 - mi)));
            cells.push((7, obj(M0(m), 0), obj(M0(1), k), ind(k == 0) + ind(k == -mi)));
        }
    }
    for n in 0..=ranges.m_max as i64 {
        for k in -ranges.k_max..=ranges.k_max {
            cells.push((1, s, obj(OmegaS(-n), k), ind((0..=n).contains(&k))));
        }
    }
    evaluate(field, Category::Grstab, &formulas, cells, exec)
}

/// The eight A-dgstab tables, each cell the total dimension of `orbit_hom`.
pub fn dgstab_tables(field: PrimeField, ranges: TableRanges, exec: Execution) -> Result<Vec<HomTable>> {
    use KroneckerKind::*;
    let formulas = [
        "dim Hom(S, S(n)) = floor(n/2)+1 for n >= 0, floor(|n|/2) for n < 0",
        "dim Hom(S, M0(m)) = m",
        "dim Hom(S, Minf(m)(n)) = floor((m+1)/2) for n even, floor(m/2) for n odd",
        "dim Hom(M0(m), S(n)) = m",
        "dim Hom(M0(m), M0(1)) = 2",
        "dim Hom(Minf(m)(r), S(n)) = floor((m+1)/2) for n-r even, floor(m/2) for n-r odd",
        "dim Hom(Minf(m), Minf(1)) = 1 for m even, 2 for m odd",
        "dim Hom(Minf(m), Minf(1)(1)) = 1 for m even, 0 for m odd",
    ];
    let s = obj(S, 0);
    let parity = |m: usize, odd: bool| if odd { m / 2 } else { m.div_ceil(2) };
    let mut cells = Vec::new();
    for n in -ranges.k_max..=ranges.k_max {
        let e = if n >= 0 { n / 2 + 1 } else { n.abs() / 2 };
        cells.push((0, s, obj(S, n), e as usize));
    }
    for m in 1..=ranges.m_max {
        cells.push((1, s, obj(M0(m), 0), m));
        cells.push((4, obj(M0(m), 0), obj(M0(1), 0), 2));
        cells.push((6, obj(Minf(m), 0), obj(Minf(1), 0), if m % 2 == 0 { 1 } else { 2 }));
        cells.push((7, obj(Minf(m), 0), obj(Minf(1), 1), if m % 2 == 0 { 1 } else { 0 }));
        for n in -ranges.k_max..=ranges.k_max {
            cells.push((2, s, obj(Minf(m), n), parity(m, n.rem_euclid(2) == 1)));
            cells.push((3, obj(M0(m), 0), obj(S, n), m));
            for r in [0, 1] {
                cells.push((5, obj(Minf(m), r), obj(S, n), parity(m, (n - r).rem_euclid(2) == 1)));
            }
        }
    }
    evaluate(field, Category::Dgstab, &formulas, cells, exec)
}

/// `g = f₋₁ + f₋₂: S -> S(2)` together with its two basis components.
#[derive(Clone, Debug)]
pub struct ConeK {
    pub algebra: Algebra,
    pub s: GradedModule,
    pub s2: GradedModule,
    pub f_minus1: OrbitMorphism,
    pub f_minus2: OrbitMorphism,
    pub g: OrbitMorphism,
}

pub fn build_k(field: PrimeField) -> Result<ConeK> {
    let algebra = build_kronecker_algebra(field)?;
    let s = kronecker_module(&algebra, KroneckerKind::S, 0)?;
    let s2 = s.shift(2);
    let h = orbit_hom(&s, &s2)?;
    if h.support() != vec![-2, -1] || h.total_dim() != 2 {
        return Err(Error::Inconsistent(format!(
            "Hom(S, S(2)) has support {:?} and dimension {}",
            h.support(),
            h.total_dim()
        )));
    }
    let basis = h.basis();
    let f_minus2 = basis[0].clone();
    let f_minus1 = basis[1].clone();
    let g = f_minus1.add(&f_minus2)?;
    Ok(ConeK {
        algebra,
        s,
        s2,
        f_minus1,
        f_minus2,
        g,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ConeHomRow {
    pub target: String,
    pub expected: usize,
    pub computed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CandidateRow {
    pub candidate: String,
    /// `dim Hom(candidate, Z)` for each target `Z` of the K rows, in order.
    pub dims: Vec<usize>,
    pub distinguished_by: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleReport {
    pub hom_dims_k: Vec<ConeHomRow>,
    pub hom_dims_k_vs_candidates: Vec<CandidateRow>,
    pub excluded_candidates: Vec<String>,
    /// Catalogue objects and pairs whose `Hom(-, S(n))` is 1 for every `3 <= n <= 8`.
    pub sweep_survivors: Vec<String>,
    pub sweep_matches_candidates: bool,
    pub verdict: bool,
}

fn residual_candidates() -> Vec<Vec<KroneckerObject>> {
    use KroneckerKind::*;
    vec![
        vec![obj(Minf(2), 0)],
        vec![obj(Minf(2), 1)],
        vec![obj(Minf(1), 0), obj(Minf(1), 1)],
        vec![obj(M0(1), 0)],
    ]
}

fn label(objs: &[KroneckerObject]) -> String {
    objs.iter().map(|o| o.to_string()).collect::<Vec<_>>().join(" + ")
}

pub fn counterexample_report(field: PrimeField, exec: Execution) -> Result<CounterexampleReport> {
    use KroneckerKind::*;
    let k = build_k(field)?;
    let alg = k.algebra.clone();
    let mut targets: Vec<(KroneckerObject, usize)> = (3..=8).map(|n| (obj(S, n), 1)).collect();
    targets.push((obj(Minf(1), 0), 0));
    targets.push((obj(Minf(1), 1), 0));
    targets.push((obj(M0(1), 0), 0));

    let k_dims = exec.map(targets.clone(), |(z, _)| -> Result<usize> {
        les_cone_hom_dim(&k.g, &z.module(&alg)?)
    });
    let mut hom_dims_k = Vec::new();
    for ((z, expected), c) in targets.iter().zip(k_dims) {
        hom_dims_k.push(ConeHomRow {
            target: z.to_string(),
            expected: *expected,
            computed: c?,
        });
    }

    // additive over summands
    let candidates = residual_candidates();
    let pieces: Vec<(KroneckerObject, KroneckerObject)> = candidates
        .iter()
        .flatten()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .flat_map(|c| targets.iter().map(move |(z, _)| (c, *z)))
        .collect();
    let piece_dims = exec.map(pieces.clone(), |(c, z)| -> Result<usize> {
        Ok(orbit_hom(&c.module(&alg)?, &z.module(&alg)?)?.total_dim())
    });
    let mut table: BTreeMap<(KroneckerObject, KroneckerObject), usize> = BTreeMap::new();
    for (p, d) in pieces.into_iter().zip(piece_dims) {
        table.insert(p, d?);
    }
    let mut rows = Vec::new();
    let mut excluded = Vec::new();
    for cand in &candidates {
        let dims: Vec<usize> = targets
            .iter()
            .map(|(z, _)| cand.iter().map(|c| table[&(*c, *z)]).sum())
            .collect();
        let distinguished_by = targets
            .iter()
            .zip(&dims)
            .zip(&hom_dims_k)
            .find(|((_, d), row)| **d != row.computed)
            .map(|(((z, _), _), _)| z.to_string());
        if distinguished_by.is_some() {
            excluded.push(label(cand));
        }
        rows.push(CandidateRow {
            candidate: label(cand),
            dims,
            distinguished_by,
        });
    }

    let survivors = catalogue_sweep(&alg, exec)?;
    let expected: BTreeSet<String> = candidates.iter().map(|c| label(c)).collect();
    let sweep_matches_candidates = survivors.iter().cloned().collect::<BTreeSet<_>>() == expected;
    let k_ok = hom_dims_k.iter().all(|r| r.expected == r.computed);
    let verdict = k_ok && excluded.len() == candidates.len();
    Ok(CounterexampleReport {
        hom_dims_k,
        hom_dims_k_vs_candidates: rows,
        excluded_candidates: excluded,
        sweep_survivors: survivors,
        sweep_matches_candidates,
        verdict,
    })
}

/// Indecomposables of the orbit category (and pairs of them) matching `dim Hom(K, S(n)) = 1`
/// for `3 <= n <= 8`.
fn catalogue_sweep(alg: &Algebra, exec: Execution) -> Result<Vec<String>> {
    use KroneckerKind::*;
    let mut catalogue: Vec<KroneckerObject> = (-10..=10).map(|k| obj(S, k)).collect();
    for m in 1..=4 {
        catalogue.push(obj(M0(m), 0));
        catalogue.push(obj(Minf(m), 0));
        catalogue.push(obj(Minf(m), 1));
    }
    let patterns = exec.map(catalogue.clone(), |x| -> Result<Vec<usize>> {
        let xm = x.module(alg)?;
        (3..=8)
            .map(|n| Ok(orbit_hom(&xm, &kronecker_module(alg, S, n)?)?.total_dim()))
            .collect()
    });
    let patterns: Vec<Vec<usize>> = patterns.into_iter().collect::<Result<_>>()?;
    let mut out = Vec::new();
    for (i, p) in patterns.iter().enumerate() {
        if p.iter().all(|&v| v == 1) {
            out.push(label(&[catalogue[i]]));
        }
        for (j, q) in patterns.iter().enumerate().skip(i) {
            if p.iter().zip(q).all(|(a, b)| a + b == 1) {
                out.push(label(&[catalogue[i], catalogue[j]]));
            }
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::stable::{is_isomorphic, IsoVerdict, DEFAULT_SEED};
    use crate::oracle::syzygy::{omega, projective_cover};
    use KroneckerKind::*;

    fn alg() -> Algebra {
        build_kronecker_algebra(PrimeField::default()).unwrap()
    }

    #[test]
    fn catalogue_dimensions() {
        let a = alg();
        for kind in [S, OmegaS(1), OmegaS(3), OmegaS(-2), M0(1), M0(3), Minf(2)] {
            let m = kronecker_module(&a, kind, 0).unwrap();
            assert_eq!(m.total_dim(), kind.dimension(), "{kind}");
        }
        let s = kronecker_module(&a, S, 0).unwrap();
        assert!(s.action_blocks().is_empty());
        let m01 = kronecker_module(&a, M0(1), 0).unwrap();
        assert_eq!(m01.degree_support(), vec![0, 1]);
        assert!(kronecker_module(&a, M0(0), 0).is_err());
    }

    #[test]
    fn cover_of_s_is_the_algebra() {
        let a = alg();
        let s = kronecker_module(&a, S, 0).unwrap();
        assert_eq!(projective_cover(&s).free.module.total_dim(), 4);
    }

    #[test]
    fn omega_of_s_is_k1() {
        let a = alg();
        let s = kronecker_module(&a, S, 0).unwrap();
        let k1 = kronecker_module(&a, OmegaS(1), 0).unwrap();
        assert_eq!(is_isomorphic(&omega(&s), &k1, DEFAULT_SEED).unwrap(), IsoVerdict::Yes);
        let k2 = kronecker_module(&a, OmegaS(2), 0).unwrap();
        assert_eq!(is_isomorphic(&omega(&k1), &k2, DEFAULT_SEED).unwrap(), IsoVerdict::Yes);
    }

    #[test]
    fn omega_on_m0_and_minf() {
        let a = alg();
        for m in 1..=3 {
            let m0 = kronecker_module(&a, M0(m), 0).unwrap();
            assert_eq!(is_isomorphic(&omega(&m0), &m0, DEFAULT_SEED).unwrap(), IsoVerdict::Yes);
            let mi = kronecker_module(&a, Minf(m), 0).unwrap();
            let expected = kronecker_module(&a, Minf(m), 1).unwrap();
            assert_eq!(is_isomorphic(&omega(&mi), &expected, DEFAULT_SEED).unwrap(), IsoVerdict::Yes);
        }
    }

    #[test]
    fn hom_s_s2_is_two_dimensional() {
        let k = build_k(PrimeField::default()).unwrap();
        assert_eq!(k.g.components().keys().copied().collect::<Vec<_>>(), vec![-2, -1]);
        assert_eq!(k.f_minus1.components().keys().copied().collect::<Vec<_>>(), vec![-1]);
        assert_eq!(k.f_minus2.components().keys().copied().collect::<Vec<_>>(), vec![-2]);
    }

    #[test]
    fn cone_dims_ignore_scaling() {
        let k = build_k(PrimeField::default()).unwrap();
        let z = kronecker_module(&k.algebra, S, 4).unwrap();
        let a = les_cone_hom_dim(&k.g, &z).unwrap();
        let b = les_cone_hom_dim(&k.g.scale(5), &z).unwrap();
        assert_eq!((a, b), (1, 1));
    }

    #[test]
    fn small_tables() {
        let r = TableRanges { m_max: 2, k_max: 4 };
        for t in grstab_tables(PrimeField::default(), r, Execution::Sequential).unwrap() {
            assert!(t.passed(), "{}: {:?}", t.formula, t.mismatches().collect::<Vec<_>>());
        }
        for t in dgstab_tables(PrimeField::default(), r, Execution::Sequential).unwrap() {
            assert!(t.passed(), "{}: {:?}", t.formula, t.mismatches().collect::<Vec<_>>());
        }
    }
}
