//! Uniserial modules over the star algebra, canonical maps between them, and
//! decomposition of arbitrary modules into uniserial summands.
//!
//! Vertices and indices are 1-based here (as in `M^i_j`) and 0-based inside modules.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::Matrix;

use super::algebra::{Algebra, Path, Side};
use super::module::{GradedModule, GradedMorphism, Slot};

fn star_n(alg: &Algebra) -> usize {
    alg.presentation(Side::Ordinary).vertex_count()
}

fn star_d(alg: &Algebra) -> i64 {
    let pres = alg.presentation(Side::Ordinary);
    -pres.arrows()[pres.vertex_count() - 1].degree
}

/// Length of `M^i_j`: `δ_{i>j} n + 1 + j - i`.
pub fn uniserial_length(n: usize, i: usize, j: usize) -> usize {
    (if i > j { n } else { 0 }) + 1 + j - i
}

/// Vertex (1-based) and degree offset of the `t`-th layer of a uniserial with top at vertex `i`.
fn layer(n: usize, d: i64, i: usize, t: usize) -> (usize, i64) {
    let v0 = i - 1;
    let crossings = (v0 + t) / n;
    ((v0 + t) % n + 1, -d * crossings as i64)
}

/// `M^i_j(k) = e_i A / e_i J^l`, shifted by `k`; one dimension per layer.
pub fn star_module(alg: &Algebra, i: usize, j: usize, k: i64) -> Result<GradedModule> {
    let n = star_n(alg);
    if !(1..=n).contains(&i) || !(1..=n).contains(&j) {
        return Err(Error::InvalidParameter(format!("M[{i},{j}] out of range for n={n}")));
    }
    uniserial(alg, i, uniserial_length(n, i, j), k)
}

/// Uniserial of length `len` (1..=n+1) with top at vertex `i` in degree `-k`.
pub fn uniserial(alg: &Algebra, i: usize, len: usize, k: i64) -> Result<GradedModule> {
    let n = star_n(alg);
    let d = star_d(alg);
    if len == 0 || len > n + 1 {
        return Err(Error::InvalidParameter(format!("uniserial length {len}")));
    }
    let field = alg.field();
    let mut dims = BTreeMap::new();
    let mut action = BTreeMap::new();
    for t in 0..len {
        let (v, off) = layer(n, d, i, t);
        let slot = (v - 1, off - k);
        dims.insert(slot, 1);
        if t + 1 < len {
            action.insert((v - 1, slot.1), Matrix::identity(field, 1));
        }
    }
    GradedModule::new(alg, Side::Ordinary, dims, action)
}

/// Arc containment `⟨a, j⟩ ⊂ ⟨i, b⟩` on the n-cycle.
pub fn arc_contains(n: usize, a: usize, j: usize, i: usize, b: usize) -> bool {
    let len = |x: usize, y: usize| (y + n - x) % n;
    len(i, a) + len(a, j) <= len(i, b)
}

/// Canonical map `α^{a,i}_{b,j}: M^a_b -> M^i_j(-d δ_{a<i})`, sending the top of the
/// source to the image of the path from `i` to `a` in the target. `None` when the arc condition fails.
pub fn canonical_map(alg: &Algebra, a: usize, b: usize, i: usize, j: usize) -> Result<Option<GradedMorphism>> {
    let n = star_n(alg);
    let d = star_d(alg);
    if !arc_contains(n, a, j, i, b) {
        return Ok(None);
    }
    let src = star_module(alg, a, b, 0)?;
    let shift = if a < i { -d } else { 0 };
    let tgt = star_module(alg, i, j, shift)?;
    let offset = (a + n - i) % n;
    let field = alg.field();
    let len_src = uniserial_length(n, a, b);
    let len_tgt = uniserial_length(n, i, j);
    let mut blocks = BTreeMap::new();
    for t in 0..len_src {
        if offset + t >= len_tgt {
            break;
        }
        let (v, off) = layer(n, d, a, t);
        let slot: Slot = (v - 1, off);
        if tgt.dim(slot) != 1 {
            return Err(Error::Inconsistent(format!(
                "canonical map layer {t} misses the target slot {slot:?}"
            )));
        }
        blocks.insert(slot, Matrix::identity(field, 1));
    }
    Ok(Some(GradedMorphism::new(&src, &tgt, blocks)?))
}

/// Multiplicity of each uniserial summand `(top slot, length)` of a module over the star algebra.
pub fn uniserial_decomposition(x: &GradedModule) -> Result<BTreeMap<(Slot, usize), usize>> {
    if x.side() != Side::Ordinary {
        return Err(Error::AlgebraMismatch);
    }
    let n = x.presentation().vertex_count();
    let mut out = BTreeMap::new();
    for s in x.slots() {
        let rad = x.radical_basis(s);
        // count[L] = number of summands with top at s and length >= L
        let mut counts = vec![0usize; n + 3];
        for (l, count) in counts.iter_mut().enumerate().take(n + 2).skip(1) {
            let p = Path {
                start: s.0,
                arrows: (0..l - 1).map(|t| (s.0 + t) % n).collect(),
            };
            let m = x.path_matrix(s, &p);
            *count = m.rank() - m.mul(&rad).rank();
        }
        for l in 1..=n + 1 {
            let c = counts[l] - counts[l + 1];
            if c > 0 {
                out.insert((s, l), c);
            }
        }
    }
    let total: usize = out.iter().map(|((_, l), c)| l * c).sum();
    if total != x.total_dim() {
        return Err(Error::Inconsistent("module is not a sum of uniserials".into()));
    }
    Ok(out)
}

/// Non-projective summands as symbols `(i, j, k)` meaning `M^i_j(k)`, with multiplicity.
pub fn nonprojective_summands(x: &GradedModule) -> Result<Vec<(usize, usize, i64)>> {
    let n = x.presentation().vertex_count();
    let mut out = Vec::new();
    for (((v, g), l), c) in uniserial_decomposition(x)? {
        if l == n + 1 {
            continue;
        }
        let i = v + 1;
        let j = (v + l - 1) % n + 1;
        for _ in 0..c {
            out.push((i, j, -g));
        }
    }
    out.sort_unstable();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::PrimeField;
    use crate::oracle::algebra::build_star_algebra;

    fn alg(n: usize, d: usize) -> Algebra {
        build_star_algebra(PrimeField::default(), n, d).unwrap()
    }

    #[test]
    fn examples_from_the_star_table() {
        let a = alg(3, 2);
        let s = star_module(&a, 1, 1, 0).unwrap();
        assert_eq!(s.dims(), &BTreeMap::from([((0, 0), 1)]));
        let m = star_module(&a, 1, 2, 0).unwrap();
        assert_eq!(m.dims(), &BTreeMap::from([((0, 0), 1), ((1, 0), 1)]));
        let m = star_module(&a, 3, 1, 0).unwrap();
        assert_eq!(m.dims(), &BTreeMap::from([((2, 0), 1), ((0, -2), 1)]));
        assert!(star_module(&a, 0, 1, 0).is_err());
        assert!(star_module(&a, 1, 4, 0).is_err());
    }

    #[test]
    fn head_and_socle_of_m12() {
        let a = alg(3, 2);
        let m = star_module(&a, 1, 2, 0).unwrap();
        assert_eq!(m.head().unwrap().0.dims(), &BTreeMap::from([((0, 0), 1)]));
        assert_eq!(m.socle().unwrap().0.dims(), &BTreeMap::from([((1, 0), 1)]));
    }

    #[test]
    fn decomposition_of_a_sum() {
        let a = alg(3, 1);
        let parts = vec![
            star_module(&a, 1, 2, 0).unwrap(),
            star_module(&a, 2, 2, 3).unwrap(),
            uniserial(&a, 2, 4, 0).unwrap(),
        ];
        let sum = GradedModule::direct_sum(&parts).unwrap().module;
        let summands = nonprojective_summands(&sum).unwrap();
        assert_eq!(summands, vec![(1, 2, 0), (2, 2, 3)]);
    }

    #[test]
    fn canonical_map_requires_arcs() {
        let a = alg(3, 2);
        assert!(canonical_map(&a, 1, 2, 1, 2).unwrap().is_some());
        assert!(canonical_map(&a, 1, 2, 3, 1).unwrap().is_some());
        assert!(canonical_map(&a, 1, 2, 2, 3).unwrap().is_none());
        assert!(canonical_map(&a, 2, 2, 1, 2).unwrap().is_some());
        assert!(canonical_map(&a, 2, 2, 1, 1).unwrap().is_none());
    }
}
