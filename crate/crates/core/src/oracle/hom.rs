//! Degree-0 Hom spaces in A-grmod, by solving the commutation system.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{FieldElem, Matrix};

use super::module::{GradedModule, GradedMorphism, Slot};

/// Coordinates of the flattened block entries of maps `X -> Y`.
#[derive(Clone, Debug)]
pub struct HomLayout {
    slots: Vec<(Slot, usize, usize, usize)>,
    len: usize,
}

impl HomLayout {
    pub fn new(x: &GradedModule, y: &GradedModule) -> Self {
        let mut slots = Vec::new();
        let mut len = 0;
        for (&s, &dx) in x.dims() {
            let dy = y.dim(s);
            if dy > 0 {
                slots.push((s, dy, dx, len));
                len += dx * dy;
            }
        }
        Self { slots, len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn offset(&self, s: Slot) -> Option<(usize, usize, usize)> {
        self.slots
            .binary_search_by(|e| e.0.cmp(&s))
            .ok()
            .map(|i| (self.slots[i].1, self.slots[i].2, self.slots[i].3))
    }

    pub fn flatten(&self, f: &GradedMorphism) -> Vec<FieldElem> {
        let mut v = vec![0; self.len];
        for (&s, m) in f.blocks() {
            let (_, cols, off) = self.offset(s).expect("block outside the layout");
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    v[off + r * cols + c] = m.get(r, c);
                }
            }
        }
        v
    }

    pub fn unflatten(&self, x: &GradedModule, y: &GradedModule, v: &[FieldElem]) -> GradedMorphism {
        let f = x.field();
        let mut blocks = BTreeMap::new();
        for &(s, rows, cols, off) in &self.slots {
            blocks.insert(s, Matrix::from_vec(f, rows, cols, v[off..off + rows * cols].to_vec()));
        }
        GradedMorphism::from_blocks(x, y, blocks)
    }
}

/// Basis of `Hom_{A-grmod}(X, Y)`.
pub fn hom_grmod(x: &GradedModule, y: &GradedModule) -> Result<Vec<GradedMorphism>> {
    if !x.same_category(y) {
        return Err(Error::AlgebraMismatch);
    }
    let layout = HomLayout::new(x, y);
    if layout.is_empty() {
        return Ok(Vec::new());
    }
    let field = x.field();
    let pres = x.presentation();
    let mut eqs: Vec<Vec<FieldElem>> = Vec::new();
    for (a, arrow) in pres.arrows().iter().enumerate() {
        for (&(v, g), &dx) in x.dims() {
            if v != arrow.source {
                continue;
            }
            let s = (v, g);
            let t = (arrow.target, g + arrow.degree);
            let dyt = y.dim(t);
            if dyt == 0 {
                continue;
            }
            let xa = x.arrow_matrix(a, g);
            let ya = y.arrow_matrix(a, g);
            let phi_t = layout.offset(t);
            let phi_s = layout.offset(s);
            if phi_t.is_none() && phi_s.is_none() {
                continue;
            }
            // (phi_t X_a - Y_a phi_s)[r, c] = 0
            for r in 0..dyt {
                for c in 0..dx {
                    let mut row = vec![0; layout.len()];
                    if let Some((_, cols_t, off_t)) = phi_t {
                        for k in 0..xa.rows() {
                            let coef = xa.get(k, c);
                            if coef != 0 {
                                let i = off_t + r * cols_t + k;
                                row[i] = field.add(row[i], coef);
                            }
                        }
                    }
                    if let Some((_, cols_s, off_s)) = phi_s {
                        for k in 0..ya.cols() {
                            let coef = ya.get(r, k);
                            if coef != 0 {
                                let i = off_s + k * cols_s + c;
                                row[i] = field.sub(row[i], coef);
                            }
                        }
                    }
                    if row.iter().any(|&e| e != 0) {
                        eqs.push(row);
                    }
                }
            }
        }
    }
    let sys = Matrix::from_vec(field, eqs.len(), layout.len(), eqs.concat());
    Ok(sys
        .kernel_basis()
        .into_iter()
        .map(|v| {
            let m = layout.unflatten(x, y, &v);
            debug_assert!(m.check().is_ok());
            m
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::PrimeField;
    use crate::oracle::algebra::build_star_algebra;
    use crate::oracle::star_modules::star_module;

    #[test]
    fn endomorphisms_of_uniserials() {
        let alg = build_star_algebra(PrimeField::default(), 3, 0).unwrap();
        let m = star_module(&alg, 1, 2, 0).unwrap();
        let basis = hom_grmod(&m, &m).unwrap();
        assert_eq!(basis.len(), 1);
        assert!(basis[0].is_isomorphism());
    }

    #[test]
    fn disjoint_supports_give_nothing() {
        let alg = build_star_algebra(PrimeField::default(), 3, 2).unwrap();
        let m = star_module(&alg, 1, 2, 0).unwrap();
        assert!(hom_grmod(&m, &m.shift(5)).unwrap().is_empty());
    }

    #[test]
    fn identity_is_in_the_span() {
        let alg = build_star_algebra(PrimeField::default(), 4, 1).unwrap();
        let m = star_module(&alg, 2, 1, 0).unwrap();
        let layout = HomLayout::new(&m, &m);
        let basis: Vec<Vec<u32>> = hom_grmod(&m, &m).unwrap().iter().map(|b| layout.flatten(b)).collect();
        let id = layout.flatten(&GradedMorphism::identity(&m));
        let a = Matrix::from_columns(m.field(), layout.len(), &basis);
        assert!(a.solve(&id).is_some());
    }
}
