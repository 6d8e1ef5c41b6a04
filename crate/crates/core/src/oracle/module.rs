//! Graded right modules given by one matrix per (arrow, degree), and degree-0 maps between them.
//!
//! A path from `v` to `w` acting on an element at vertex `v` lands at vertex `w`.
//! Shifts follow `X(n)^i = X^{i+n}`, so the slot `(v, g)` of `X` becomes `(v, g - n)` in `X(n)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{FieldElem, Matrix, PrimeField};

use super::algebra::{Algebra, AlgebraPresentation, Path, Side};

/// `(vertex, internal degree)`
pub type Slot = (usize, i64);

#[derive(Clone)]
pub struct GradedModule {
    inner: Arc<ModuleData>,
}

struct ModuleData {
    algebra: Algebra,
    side: Side,
    dims: BTreeMap<Slot, usize>,
    // keyed by (arrow, source degree); zero blocks are not stored
    action: BTreeMap<(usize, i64), Matrix>,
}

impl PartialEq for GradedModule {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.algebra == other.inner.algebra
                && self.inner.side == other.inner.side
                && self.inner.dims == other.inner.dims
                && self.inner.action == other.inner.action)
    }
}

impl Eq for GradedModule {}

impl fmt::Debug for GradedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedModule[{:?}", self.inner.side)?;
        for ((v, g), d) in &self.inner.dims {
            write!(f, " ({v},{g}):{d}")?;
        }
        write!(f, "]")
    }
}

impl GradedModule {
    /// Validated construction: shapes must fit the slots and every relation must act by zero.
    pub fn new(
        algebra: &Algebra,
        side: Side,
        dims: BTreeMap<Slot, usize>,
        action: BTreeMap<(usize, i64), Matrix>,
    ) -> Result<Self> {
        let m = Self::from_parts(algebra, side, dims, action);
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn from_parts(
        algebra: &Algebra,
        side: Side,
        mut dims: BTreeMap<Slot, usize>,
        mut action: BTreeMap<(usize, i64), Matrix>,
    ) -> Self {
        dims.retain(|_, d| *d > 0);
        action.retain(|_, m| !m.is_zero());
        Self {
            inner: Arc::new(ModuleData {
                algebra: algebra.clone(),
                side,
                dims,
                action,
            }),
        }
    }

    pub fn zero(algebra: &Algebra, side: Side) -> Self {
        Self::from_parts(algebra, side, BTreeMap::new(), BTreeMap::new())
    }

    fn validate(&self) -> Result<()> {
        let pres = self.presentation();
        for (&(a, g), m) in &self.inner.action {
            let arrow = pres
                .arrows()
                .get(a)
                .ok_or_else(|| Error::Inconsistent(format!("unknown arrow {a}")))?;
            let src = self.dim((arrow.source, g));
            let tgt = self.dim((arrow.target, g + arrow.degree));
            if m.cols() != src || m.rows() != tgt {
                return Err(Error::Inconsistent(format!(
                    "arrow {} at degree {g}: block {}x{} does not fit {tgt}x{src}",
                    arrow.name,
                    m.rows(),
                    m.cols()
                )));
            }
        }
        for rel in pres.relations() {
            for &(v, g) in self.inner.dims.keys() {
                if v != rel.terms[0].1.start {
                    continue;
                }
                let mut sum: Option<Matrix> = None;
                for (c, p) in &rel.terms {
                    let m = self.path_matrix((v, g), p).scale(self.field().elem(*c));
                    sum = Some(match sum {
                        None => m,
                        Some(s) => s.add(&m),
                    });
                }
                if sum.is_some_and(|s| !s.is_zero()) {
                    return Err(Error::Inconsistent(format!("relation fails at slot ({v},{g})")));
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Algebra {
        &self.inner.algebra
    }

    pub fn side(&self) -> Side {
        self.inner.side
    }

    pub fn presentation(&self) -> &AlgebraPresentation {
        self.inner.algebra.presentation(self.inner.side)
    }

    pub fn field(&self) -> PrimeField {
        self.inner.algebra.field()
    }

    pub fn same_category(&self, other: &GradedModule) -> bool {
        self.inner.algebra == other.inner.algebra && self.inner.side == other.inner.side
    }

    pub fn dim(&self, slot: Slot) -> usize {
        self.inner.dims.get(&slot).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<Slot, usize> {
        &self.inner.dims
    }

    pub fn slots(&self) -> impl Iterator<Item = Slot> + '_ {
        self.inner.dims.keys().copied()
    }

    pub fn total_dim(&self) -> usize {
        self.inner.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.inner.dims.is_empty()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.inner.dims.keys().map(|s| s.1).max()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.inner.dims.keys().map(|s| s.1).min()
    }

    /// Set of degrees carrying a nonzero slot.
    pub fn degree_support(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self.inner.dims.keys().map(|s| s.1).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn action_blocks(&self) -> &BTreeMap<(usize, i64), Matrix> {
        &self.inner.action
    }

    /// Action of arrow `a` on the slot `(source(a), g)`.
    pub fn arrow_matrix(&self, a: usize, g: i64) -> Matrix {
        if let Some(m) = self.inner.action.get(&(a, g)) {
            return m.clone();
        }
        let arrow = &self.presentation().arrows()[a];
        Matrix::zeros(
            self.field(),
            self.dim((arrow.target, g + arrow.degree)),
            self.dim((arrow.source, g)),
        )
    }

    /// Action of a path starting at `slot`; the start vertex of the path is ignored
    /// in favour of the slot's vertex.
    pub fn path_matrix(&self, slot: Slot, p: &Path) -> Matrix {
        let pres = self.presentation();
        let mut m = Matrix::identity(self.field(), self.dim(slot));
        let (mut v, mut g) = slot;
        for &a in &p.arrows {
            let arrow = &pres.arrows()[a];
            if arrow.source != v {
                return Matrix::zeros(self.field(), 0, self.dim(slot));
            }
            m = self.arrow_matrix(a, g).mul(&m);
            v = arrow.target;
            g += arrow.degree;
        }
        m
    }

    /// Image of vector `x` in `slot` under a path.
    pub fn act_path(&self, slot: Slot, x: &[FieldElem], p: &Path) -> (Slot, Vec<FieldElem>) {
        let pres = self.presentation();
        let (mut v, mut g) = slot;
        let mut cur = x.to_vec();
        for &a in &p.arrows {
            let arrow = &pres.arrows()[a];
            assert_eq!(arrow.source, v, "path not incident to slot");
            cur = self.arrow_matrix(a, g).mul_vec(&cur);
            v = arrow.target;
            g += arrow.degree;
        }
        ((v, g), cur)
    }

    /// `X(k)`: every slot `(v, g)` moves to `(v, g - k)`.
    pub fn shift(&self, k: i64) -> GradedModule {
        if k == 0 {
            return self.clone();
        }
        let dims = self.inner.dims.iter().map(|(&(v, g), &d)| ((v, g - k), d)).collect();
        let action = self
            .inner
            .action
            .iter()
            .map(|(&(a, g), m)| ((a, g - k), m.clone()))
            .collect();
        Self::from_parts(&self.inner.algebra, self.inner.side, dims, action)
    }

    /// Graded k-linear dual over the opposite presentation; `dual(dual(X)) == X` literally.
    pub fn dual(&self) -> GradedModule {
        let pres = self.presentation();
        let dims = self.inner.dims.iter().map(|(&(v, g), &d)| ((v, -g), d)).collect();
        let action = self
            .inner
            .action
            .iter()
            .map(|(&(a, g), m)| {
                let deg = pres.arrows()[a].degree;
                ((a, -g - deg), m.transpose())
            })
            .collect();
        Self::from_parts(&self.inner.algebra, self.inner.side.flip(), dims, action)
    }

    /// Direct sum with the canonical injections and projections.
    pub fn direct_sum(parts: &[GradedModule]) -> Result<DirectSum> {
        let first = parts
            .first()
            .ok_or_else(|| Error::InvalidParameter("empty direct sum".into()))?;
        if parts.iter().any(|p| !p.same_category(first)) {
            return Err(Error::AlgebraMismatch);
        }
        let f = first.field();
        let mut dims: BTreeMap<Slot, usize> = BTreeMap::new();
        let mut offsets: Vec<BTreeMap<Slot, usize>> = Vec::new();
        for p in parts {
            let mut off = BTreeMap::new();
            for (&s, &d) in p.dims() {
                let e = dims.entry(s).or_insert(0);
                off.insert(s, *e);
                *e += d;
            }
            offsets.push(off);
        }
        let mut action: BTreeMap<(usize, i64), Matrix> = BTreeMap::new();
        let pres = first.presentation();
        for (i, p) in parts.iter().enumerate() {
            for (&(a, g), m) in p.action_blocks() {
                let arrow = &pres.arrows()[a];
                let src = (arrow.source, g);
                let tgt = (arrow.target, g + arrow.degree);
                let block = action.entry((a, g)).or_insert_with(|| {
                    Matrix::zeros(f, dims[&tgt], dims[&src])
                });
                let (ro, co) = (offsets[i][&tgt], offsets[i][&src]);
                for r in 0..m.rows() {
                    for c in 0..m.cols() {
                        block.set(ro + r, co + c, m.get(r, c));
                    }
                }
            }
        }
        let sum = Self::from_parts(first.algebra(), first.side(), dims, action);
        let mut injections = Vec::new();
        let mut projections = Vec::new();
        for (i, p) in parts.iter().enumerate() {
            let mut inj = BTreeMap::new();
            let mut proj = BTreeMap::new();
            for (&s, &d) in p.dims() {
                let total = sum.dim(s);
                let mut e = Matrix::zeros(f, total, d);
                for k in 0..d {
                    e.set(offsets[i][&s] + k, k, 1);
                }
                proj.insert(s, e.transpose());
                inj.insert(s, e);
            }
            injections.push(GradedMorphism::from_blocks(p, &sum, inj));
            projections.push(GradedMorphism::from_blocks(&sum, p, proj));
        }
        Ok(DirectSum {
            module: sum,
            injections,
            projections,
        })
    }

    /// Columns spanning `X * J` at the given slot.
    pub fn radical_basis(&self, slot: Slot) -> Matrix {
        let pres = self.presentation();
        let mut cols = Matrix::zeros(self.field(), self.dim(slot), 0);
        for (a, arrow) in pres.arrows().iter().enumerate() {
            if arrow.target != slot.0 {
                continue;
            }
            let g = slot.1 - arrow.degree;
            if self.dim((arrow.source, g)) == 0 {
                continue;
            }
            cols = cols.hstack(&self.arrow_matrix(a, g));
        }
        cols.column_space()
    }

    /// Columns spanning the joint kernel of all arrows at the given slot.
    pub fn socle_basis(&self, slot: Slot) -> Matrix {
        let pres = self.presentation();
        let mut rows = Matrix::zeros(self.field(), 0, self.dim(slot));
        for (a, arrow) in pres.arrows().iter().enumerate() {
            if arrow.source == slot.0 {
                rows = rows.vstack(&self.arrow_matrix(a, slot.1));
            }
        }
        rows.kernel()
    }

    /// Submodule spanned per slot by the columns of `basis`; the caller guarantees closure.
    pub fn submodule(&self, basis: &BTreeMap<Slot, Matrix>) -> Result<(GradedModule, GradedMorphism)> {
        let pres = self.presentation();
        let mut dims = BTreeMap::new();
        let mut inc = BTreeMap::new();
        for (&s, b) in basis {
            if b.cols() > 0 {
                dims.insert(s, b.cols());
                inc.insert(s, b.clone());
            }
        }
        let mut action = BTreeMap::new();
        for (&(v, g), b) in &inc {
            for (a, arrow) in pres.arrows().iter().enumerate() {
                if arrow.source != v {
                    continue;
                }
                let tgt = (arrow.target, g + arrow.degree);
                let image = self.arrow_matrix(a, g).mul(b);
                if image.is_zero() {
                    continue;
                }
                let tb = inc
                    .get(&tgt)
                    .ok_or_else(|| Error::Inconsistent("subspace not closed under the action".into()))?;
                let c = tb
                    .solve_matrix(&image)
                    .ok_or_else(|| Error::Inconsistent("subspace not closed under the action".into()))?;
                action.insert((a, g), c);
            }
        }
        let sub = Self::from_parts(self.algebra(), self.side(), dims, action);
        let inclusion = GradedMorphism::from_blocks(&sub, self, inc);
        Ok((sub, inclusion))
    }

    /// Quotient by a submodule given per slot by spanning columns; returns the projection.
    pub fn quotient(&self, sub: &BTreeMap<Slot, Matrix>) -> Result<(GradedModule, GradedMorphism)> {
        let pres = self.presentation();
        let f = self.field();
        let mut proj = BTreeMap::new();
        let mut lifts = BTreeMap::new();
        for (&s, &d) in self.dims() {
            let q = match sub.get(&s) {
                Some(b) if b.cols() > 0 => b.cokernel_projection(),
                _ => Matrix::identity(f, d),
            };
            let r = q
                .right_inverse()
                .ok_or_else(|| Error::Inconsistent("projection without right inverse".into()))?;
            proj.insert(s, q);
            lifts.insert(s, r);
        }
        let mut dims = BTreeMap::new();
        for (&s, q) in &proj {
            dims.insert(s, q.rows());
        }
        let mut action = BTreeMap::new();
        for (&(a, g), m) in self.action_blocks() {
            let arrow = &pres.arrows()[a];
            let src = (arrow.source, g);
            let tgt = (arrow.target, g + arrow.degree);
            let c = proj[&tgt].mul(m).mul(&lifts[&src]);
            action.insert((a, g), c);
        }
        let q = Self::from_parts(self.algebra(), self.side(), dims, action);
        let projection = GradedMorphism::from_blocks(self, &q, proj);
        debug_assert!(projection.check().is_ok());
        Ok((q, projection))
    }

    /// `X / X J` with the projection.
    pub fn head(&self) -> Result<(GradedModule, GradedMorphism)> {
        let rad: BTreeMap<Slot, Matrix> = self.slots().map(|s| (s, self.radical_basis(s))).collect();
        self.quotient(&rad)
    }

    /// Joint kernel of the arrows, with the inclusion.
    pub fn socle(&self) -> Result<(GradedModule, GradedMorphism)> {
        let soc: BTreeMap<Slot, Matrix> = self.slots().map(|s| (s, self.socle_basis(s))).collect();
        self.submodule(&soc)
    }

    /// `X J` with the inclusion.
    pub fn radical(&self) -> Result<(GradedModule, GradedMorphism)> {
        let rad: BTreeMap<Slot, Matrix> = self.slots().map(|s| (s, self.radical_basis(s))).collect();
        self.submodule(&rad)
    }
}

pub struct DirectSum {
    pub module: GradedModule,
    pub injections: Vec<GradedMorphism>,
    pub projections: Vec<GradedMorphism>,
}

/// Degree-0 module map, one matrix per slot (rows: codomain, columns: domain).
#[derive(Clone, PartialEq, Eq)]
pub struct GradedMorphism {
    domain: GradedModule,
    codomain: GradedModule,
    blocks: BTreeMap<Slot, Matrix>,
}

impl fmt::Debug for GradedMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedMorphism")
            .field("domain", &self.domain)
            .field("codomain", &self.codomain)
            .field("blocks", &self.blocks)
            .finish()
    }
}

impl GradedMorphism {
    /// Validated construction: checks shapes and commutation with every arrow.
    pub fn new(domain: &GradedModule, codomain: &GradedModule, blocks: BTreeMap<Slot, Matrix>) -> Result<Self> {
        if !domain.same_category(codomain) {
            return Err(Error::AlgebraMismatch);
        }
        let m = Self::from_blocks(domain, codomain, blocks);
        m.check()?;
        Ok(m)
    }

    pub(crate) fn from_blocks(domain: &GradedModule, codomain: &GradedModule, mut blocks: BTreeMap<Slot, Matrix>) -> Self {
        blocks.retain(|s, m| !m.is_zero() && domain.dim(*s) > 0 && codomain.dim(*s) > 0);
        Self {
            domain: domain.clone(),
            codomain: codomain.clone(),
            blocks,
        }
    }

    pub fn zero(domain: &GradedModule, codomain: &GradedModule) -> Self {
        Self::from_blocks(domain, codomain, BTreeMap::new())
    }

    pub fn identity(m: &GradedModule) -> Self {
        let blocks = m.dims().iter().map(|(&s, &d)| (s, Matrix::identity(m.field(), d))).collect();
        Self::from_blocks(m, m, blocks)
    }

    pub fn domain(&self) -> &GradedModule {
        &self.domain
    }

    pub fn codomain(&self) -> &GradedModule {
        &self.codomain
    }

    pub fn blocks(&self) -> &BTreeMap<Slot, Matrix> {
        &self.blocks
    }

    pub fn block(&self, s: Slot) -> Matrix {
        self.blocks
            .get(&s)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.domain.field(), self.codomain.dim(s), self.domain.dim(s)))
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Shapes fit and `f_t X_a = Y_a f_s` for every arrow.
    pub fn check(&self) -> Result<()> {
        for (&s, m) in &self.blocks {
            if m.rows() != self.codomain.dim(s) || m.cols() != self.domain.dim(s) {
                return Err(Error::Inconsistent(format!("block at {s:?} has the wrong shape")));
            }
        }
        let pres = self.domain.presentation();
        for (a, arrow) in pres.arrows().iter().enumerate() {
            for &(v, g) in self.domain.dims().keys() {
                if v != arrow.source {
                    continue;
                }
                let t = (arrow.target, g + arrow.degree);
                let lhs = self.block(t).mul(&self.domain.arrow_matrix(a, g));
                let rhs = self.codomain.arrow_matrix(a, g).mul(&self.block((v, g)));
                if lhs != rhs {
                    return Err(Error::Inconsistent(format!(
                        "map does not commute with {} at degree {g}",
                        arrow.name
                    )));
                }
            }
        }
        Ok(())
    }

    /// `self ∘ first`
    pub fn after(&self, first: &GradedMorphism) -> Result<GradedMorphism> {
        if first.codomain != self.domain {
            return Err(Error::EndpointMismatch("composition of graded maps".into()));
        }
        let mut blocks = BTreeMap::new();
        for (&s, m) in &first.blocks {
            if let Some(n) = self.blocks.get(&s) {
                blocks.insert(s, n.mul(m));
            }
        }
        Ok(Self::from_blocks(&first.domain, &self.codomain, blocks))
    }

    pub fn add(&self, other: &GradedMorphism) -> Result<GradedMorphism> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::EndpointMismatch("sum of graded maps".into()));
        }
        let mut blocks = self.blocks.clone();
        for (&s, m) in &other.blocks {
            let e = blocks.entry(s).or_insert_with(|| {
                Matrix::zeros(m.field(), m.rows(), m.cols())
            });
            *e = e.add(m);
        }
        Ok(Self::from_blocks(&self.domain, &self.codomain, blocks))
    }

    pub fn scale(&self, c: FieldElem) -> GradedMorphism {
        let blocks = self.blocks.iter().map(|(&s, m)| (s, m.scale(c))).collect();
        Self::from_blocks(&self.domain, &self.codomain, blocks)
    }

    pub fn shift(&self, k: i64) -> GradedMorphism {
        let blocks = self.blocks.iter().map(|(&(v, g), m)| ((v, g - k), m.clone())).collect();
        Self::from_blocks(&self.domain.shift(k), &self.codomain.shift(k), blocks)
    }

    /// `D f: D Y -> D X`
    pub fn dual(&self) -> GradedMorphism {
        let blocks = self.blocks.iter().map(|(&(v, g), m)| ((v, -g), m.transpose())).collect();
        Self::from_blocks(&self.codomain.dual(), &self.domain.dual(), blocks)
    }

    /// Same blocks read as a map between literally equal modules.
    pub fn retarget(&self, domain: &GradedModule, codomain: &GradedModule) -> Result<GradedMorphism> {
        if *domain != self.domain || *codomain != self.codomain {
            return Err(Error::EndpointMismatch("retarget to different modules".into()));
        }
        Ok(Self::from_blocks(domain, codomain, self.blocks.clone()))
    }

    /// Bijective on every slot.
    pub fn is_isomorphism(&self) -> bool {
        if self.domain.dims() != self.codomain.dims() {
            return false;
        }
        self.domain.dims().iter().all(|(&s, &d)| self.block(s).rank() == d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::algebra::build_kronecker_algebra;

    fn kron() -> Algebra {
        build_kronecker_algebra(PrimeField::default()).unwrap()
    }

    fn simple(alg: &Algebra) -> GradedModule {
        GradedModule::new(alg, Side::Ordinary, BTreeMap::from([((0, 0), 1)]), BTreeMap::new()).unwrap()
    }

    #[test]
    fn relations_are_enforced() {
        let alg = kron();
        let f = alg.field();
        let dims = BTreeMap::from([((0, 0), 1), ((0, -1), 1)]);
        let action = BTreeMap::from([((1, 0), Matrix::from_rows(f, &[vec![1]]))]);
        assert!(GradedModule::new(&alg, Side::Ordinary, dims, action).is_ok());
        // yx acts nontrivially while xy does not
        let dims2 = BTreeMap::from([((0, 0), 1), ((0, -1), 2)]);
        let action2 = BTreeMap::from([
            ((1, 0), Matrix::from_rows(f, &[vec![1], vec![0]])),
            ((0, -1), Matrix::from_rows(f, &[vec![0, 0], vec![1, 0]])),
        ]);
        assert!(GradedModule::new(&alg, Side::Ordinary, dims2, action2).is_err());
    }

    #[test]
    fn simple_head_and_socle() {
        let alg = kron();
        let s = simple(&alg);
        let (h, _) = s.head().unwrap();
        let (so, _) = s.socle().unwrap();
        assert_eq!(h, s);
        assert_eq!(so, s);
        assert_eq!(s.dual().dual(), s);
        assert_eq!(s.dual().side(), Side::Opposite);
    }

    #[test]
    fn shift_moves_degrees_down() {
        let alg = kron();
        let s = simple(&alg).shift(3);
        assert_eq!(s.max_degree(), Some(-3));
        assert_eq!(s.shift(-3), simple(&alg));
    }
}
