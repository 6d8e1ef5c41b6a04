//! Projective covers, syzygies and cosyzygies, on objects and on maps.
//!
//! `omega_inverse` is `dual ∘ omega ∘ dual`; it never builds the bimodule kernel of multiplication.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{FieldElem, Matrix};

use super::hom::{hom_grmod, HomLayout};
use super::module::{GradedModule, GradedMorphism, Slot};

/// `⊕ P_v(-g)` with one summand per generator `(v, g)`; the top of each summand sits in degree `g`.
#[derive(Clone, Debug)]
pub struct FreeModule {
    pub module: GradedModule,
    pub generators: Vec<Slot>,
    // positions[s][i]: slot and offset of the i-th basis element of summand s
    positions: Vec<Vec<(Slot, usize)>>,
}

impl FreeModule {
    pub fn new(base: &GradedModule, generators: Vec<Slot>) -> FreeModule {
        let pres = base.presentation();
        let field = base.field();
        let mut dims: BTreeMap<Slot, usize> = BTreeMap::new();
        let mut positions = Vec::with_capacity(generators.len());
        for &(v, g) in &generators {
            let mut pos = Vec::new();
            for &b in pres.basis_from(v) {
                let el = &pres.basis()[b];
                let slot = (el.target, g + el.degree);
                let e = dims.entry(slot).or_insert(0);
                pos.push((slot, *e));
                *e += 1;
            }
            positions.push(pos);
        }
        let mut action: BTreeMap<(usize, i64), Matrix> = BTreeMap::new();
        for (s, &(v, _)) in generators.iter().enumerate() {
            let local: Vec<usize> = pres.basis_from(v).to_vec();
            for (i, &b) in local.iter().enumerate() {
                let (src, col) = positions[s][i];
                for a in 0..pres.arrows().len() {
                    let prod = pres.mul_arrow(b, a);
                    if prod.is_empty() {
                        continue;
                    }
                    let arrow = &pres.arrows()[a];
                    let tgt = (arrow.target, src.1 + arrow.degree);
                    let block = action
                        .entry((a, src.1))
                        .or_insert_with(|| Matrix::zeros(field, dims[&tgt], dims[&src]));
                    for &(b2, c) in prod {
                        let j = local.iter().position(|&x| x == b2).expect("product leaves e_v A");
                        let (slot2, row) = positions[s][j];
                        debug_assert_eq!(slot2, tgt);
                        block.set(row, col, field.add(block.get(row, col), c));
                    }
                }
            }
        }
        let module = GradedModule::from_parts(base.algebra(), base.side(), dims, action);
        FreeModule {
            module,
            generators,
            positions,
        }
    }

    /// The map sending the top of summand `s` to `images[s]` (a vector in the generator's slot of `target`).
    pub fn map_to(&self, target: &GradedModule, images: &[Vec<FieldElem>]) -> GradedMorphism {
        let pres = self.module.presentation();
        let field = self.module.field();
        let mut blocks: BTreeMap<Slot, Matrix> = BTreeMap::new();
        for (s, &(v, g)) in self.generators.iter().enumerate() {
            for (i, &b) in pres.basis_from(v).iter().enumerate() {
                let (slot, col) = self.positions[s][i];
                if target.dim(slot) == 0 {
                    continue;
                }
                let (at, vec) = target.act_path((v, g), &images[s], &pres.basis()[b].path);
                debug_assert_eq!(at, slot);
                let block = blocks
                    .entry(slot)
                    .or_insert_with(|| Matrix::zeros(field, target.dim(slot), self.module.dim(slot)));
                for (r, &x) in vec.iter().enumerate() {
                    block.set(r, col, x);
                }
            }
        }
        let m = GradedMorphism::from_blocks(&self.module, target, blocks);
        debug_assert!(m.check().is_ok());
        m
    }

    /// The indecomposable projective `P_v(-g)` as a free module with one generator.
    pub fn indecomposable(base: &GradedModule, v: usize, g: i64) -> FreeModule {
        FreeModule::new(base, vec![(v, g)])
    }

    /// Position of the top of summand `s`.
    pub fn top(&self, s: usize) -> (Slot, usize) {
        self.positions[s][0]
    }
}

/// Minimal projective cover `π: P -> X` built from lifts of a basis of the head.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub free: FreeModule,
    pub map: GradedMorphism,
    pub generator_vectors: Vec<Vec<FieldElem>>,
}

pub fn projective_cover(x: &GradedModule) -> ProjectiveCover {
    let field = x.field();
    let mut gens = Vec::new();
    let mut vecs = Vec::new();
    for (&s, &d) in x.dims() {
        let rad = x.radical_basis(s);
        let aug = rad.hstack(&Matrix::identity(field, d));
        for c in aug.echelon().pivots {
            if c >= rad.cols() {
                let mut e = vec![0; d];
                e[c - rad.cols()] = 1;
                gens.push(s);
                vecs.push(e);
            }
        }
    }
    let free = FreeModule::new(x, gens);
    let map = free.map_to(x, &vecs);
    ProjectiveCover {
        free,
        map,
        generator_vectors: vecs,
    }
}

/// `ΩX` as the kernel of the projective cover.
#[derive(Clone, Debug)]
pub struct Syzygy {
    pub cover: ProjectiveCover,
    pub module: GradedModule,
    pub inclusion: GradedMorphism,
}

pub fn syzygy(x: &GradedModule) -> Syzygy {
    let cover = projective_cover(x);
    let p = &cover.free.module;
    let ker: BTreeMap<Slot, Matrix> = p.slots().map(|s| (s, cover.map.block(s).kernel())).collect();
    let (module, inclusion) = p.submodule(&ker).expect("kernel of a module map is a submodule");
    Syzygy {
        cover,
        module,
        inclusion,
    }
}

pub fn omega(x: &GradedModule) -> GradedModule {
    syzygy(x).module
}

/// `Ω⁻¹X` as the cokernel of an injective hull `ι: X -> I`, obtained by dualizing a cover.
#[derive(Clone, Debug)]
pub struct Cosyzygy {
    pub hull: GradedModule,
    pub embedding: GradedMorphism,
    pub projection: GradedMorphism,
    pub module: GradedModule,
}

pub fn cosyzygy(x: &GradedModule) -> Cosyzygy {
    let syz = syzygy(&x.dual());
    let embedding = syz.cover.map.dual();
    let projection = syz.inclusion.dual();
    Cosyzygy {
        hull: syz.cover.free.module.dual(),
        module: syz.module.dual(),
        embedding,
        projection,
    }
}

pub fn omega_inverse(x: &GradedModule) -> GradedModule {
    cosyzygy(x).module
}

/// One step of the witness iteration: `Ω(X)(1)` for `+1`, `Ω⁻¹(X)(-1)` for `-1`.
pub fn omega_step(x: &GradedModule, sign: i8) -> GradedModule {
    match sign {
        1 => omega(x).shift(1),
        -1 => omega_inverse(x).shift(-1),
        _ => panic!("sign must be ±1"),
    }
}

/// `Ω(f)` between the canonical syzygies of domain and codomain.
pub fn omega_on_morphism_with(sx: &Syzygy, sy: &Syzygy, f: &GradedMorphism) -> Result<GradedMorphism> {
    let cy = &sy.cover;
    let mut lifts = Vec::with_capacity(sx.cover.generator_vectors.len());
    for (s, x) in sx.cover.generator_vectors.iter().enumerate() {
        let slot = sx.cover.free.generators[s];
        let img = f.block(slot).mul_vec(x);
        let z = cy
            .map
            .block(slot)
            .solve(&img)
            .ok_or_else(|| Error::LiftFailed(format!("generator at {slot:?} does not lift")))?;
        lifts.push(z);
    }
    let h = sx.cover.free.map_to(&cy.free.module, &lifts);
    restrict_to_kernels(&sx.inclusion, &sy.inclusion, &h)
}

/// Given inclusions `i: K -> P`, `j: K' -> P'` and `h: P -> P'` with `h(K) ⊂ K'`, the induced `K -> K'`.
fn restrict_to_kernels(i: &GradedMorphism, j: &GradedMorphism, h: &GradedMorphism) -> Result<GradedMorphism> {
    let mut blocks = BTreeMap::new();
    for s in i.domain().slots() {
        if j.domain().dim(s) == 0 {
            if !h.block(s).mul(&i.block(s)).is_zero() {
                return Err(Error::LiftFailed("map leaves the target kernel".into()));
            }
            continue;
        }
        let rhs = h.block(s).mul(&i.block(s));
        let c = j
            .block(s)
            .solve_matrix(&rhs)
            .ok_or_else(|| Error::LiftFailed("map leaves the target kernel".into()))?;
        blocks.insert(s, c);
    }
    Ok(GradedMorphism::from_blocks(i.domain(), j.domain(), blocks))
}

/// `Ω^{±1}(f)`; the negative sign goes through duality.
pub fn omega_on_morphism(f: &GradedMorphism, sign: i8) -> Result<GradedMorphism> {
    match sign {
        1 => omega_on_morphism_with(&syzygy(f.domain()), &syzygy(f.codomain()), f),
        -1 => {
            let df = f.dual();
            let of = omega_on_morphism_with(&syzygy(df.domain()), &syzygy(df.codomain()), &df)?;
            Ok(of.dual())
        }
        _ => Err(Error::InvalidParameter(format!("sign {sign}"))),
    }
}

/// `Ω(f)(1)` or `Ω⁻¹(f)(-1)`.
pub fn omega_step_morphism(f: &GradedMorphism, sign: i8) -> Result<GradedMorphism> {
    Ok(omega_on_morphism(f, sign)?.shift(sign as i64))
}

/// Comparison `Ω(Ω⁻¹W) -> W`, a stable isomorphism.
pub fn compare_omega_of_cosyzygy(w: &GradedModule) -> Result<GradedMorphism> {
    let co = cosyzygy(w);
    let syz = syzygy(&co.module);
    let q = &co.projection;
    let mut lifts = Vec::new();
    for (s, x) in syz.cover.generator_vectors.iter().enumerate() {
        let slot = syz.cover.free.generators[s];
        let z = q
            .block(slot)
            .solve(x)
            .ok_or_else(|| Error::LiftFailed("cover does not lift through the hull".into()))?;
        lifts.push(z);
    }
    let h = syz.cover.free.map_to(&co.hull, &lifts);
    // h maps ker π into ker q = im ι
    restrict_to_kernels(&syz.inclusion, &co.embedding, &h)
}

/// Comparison `Ω⁻¹(ΩW) -> W`, a stable isomorphism.
pub fn compare_cosyzygy_of_omega(w: &GradedModule) -> Result<GradedMorphism> {
    let syz = syzygy(w);
    let k = &syz.module;
    let p = &syz.cover.free.module;
    let co = cosyzygy(k);
    // extend the inclusion K -> P along the hull K -> I'
    let hom = hom_grmod(&co.hull, p)?;
    let target = HomLayout::new(k, p);
    let rhs = target.flatten(&syz.inclusion);
    let cols: Vec<Vec<FieldElem>> = hom
        .iter()
        .map(|phi| target.flatten(&phi.after(&co.embedding).expect("endpoints agree")))
        .collect();
    let sys = Matrix::from_columns(w.field(), target.len(), &cols);
    let t = sys
        .solve(&rhs)
        .ok_or_else(|| Error::LiftFailed("inclusion does not extend over the hull".into()))?;
    let mut h = GradedMorphism::zero(&co.hull, p);
    for (phi, &c) in hom.iter().zip(&t) {
        if c != 0 {
            h = h.add(&phi.scale(c))?;
        }
    }
    let ph = syz.cover.map.after(&h)?;
    // π h kills K, so it factors through q: I' -> I'/K
    let mut blocks = BTreeMap::new();
    for s in co.module.slots() {
        if w.dim(s) == 0 {
            continue;
        }
        let r = co
            .projection
            .block(s)
            .right_inverse()
            .ok_or_else(|| Error::Inconsistent("hull projection not surjective".into()))?;
        blocks.insert(s, ph.block(s).mul(&r));
    }
    let c = GradedMorphism::from_blocks(&co.module, w, blocks);
    debug_assert!(c.check().is_ok());
    Ok(c)
}

/// Indecomposable projective summands split off: returns `X / Q` where `Q` is the
/// largest projective-injective submodule found by testing generators on socles.
pub fn strip_projective_summands(x: &GradedModule) -> Result<(GradedModule, usize)> {
    let pres = x.presentation();
    // socle path of each indecomposable projective (must be one-dimensional)
    let mut socle_paths = Vec::new();
    for v in 0..pres.vertex_count() {
        let free = FreeModule::indecomposable(x, v, 0);
        let (soc, inc) = free.module.socle()?;
        if soc.total_dim() != 1 {
            return Err(Error::InvalidPresentation(format!(
                "projective at vertex {v} does not have a simple socle"
            )));
        }
        let slot = soc.slots().next().unwrap();
        let vec = inc.block(slot).column(0);
        // find a basis element carrying the socle
        let idx = pres
            .basis_from(v)
            .iter()
            .enumerate()
            .find(|(i, _)| {
                let (ps, off) = free_position(&free, *i);
                ps == slot && vec[off] != 0
            })
            .map(|(_, &b)| b)
            .expect("socle is spanned by basis elements");
        socle_paths.push(pres.basis()[idx].path.clone());
    }
    // group candidate generators by the slot their socle lands in
    let mut by_target: BTreeMap<Slot, Vec<(Slot, Matrix)>> = BTreeMap::new();
    for s in x.slots() {
        let p = &socle_paths[s.0];
        let m = x.path_matrix(s, p);
        if m.is_zero() {
            continue;
        }
        let deg = pres.path_degree(p);
        let t = (pres.path_end(p), s.1 + deg);
        by_target.entry(t).or_default().push((s, m));
    }
    let mut gens: Vec<(Slot, Vec<FieldElem>)> = Vec::new();
    for (_, cands) in by_target {
        let mut stacked: Option<Matrix> = None;
        let mut owners = Vec::new();
        for (s, m) in &cands {
            for c in 0..m.cols() {
                owners.push((*s, c));
            }
            stacked = Some(match stacked {
                None => m.clone(),
                Some(a) => a.hstack(m),
            });
        }
        let stacked = stacked.unwrap();
        for c in stacked.echelon().pivots.iter().map(|&c| owners[c]) {
            let mut e = vec![0; x.dim(c.0)];
            e[c.1] = 1;
            gens.push((c.0, e));
        }
    }
    if gens.is_empty() {
        return Ok((x.clone(), 0));
    }
    let free = FreeModule::new(x, gens.iter().map(|g| g.0).collect());
    let vecs: Vec<Vec<FieldElem>> = gens.iter().map(|g| g.1.clone()).collect();
    let map = free.map_to(x, &vecs);
    let image: BTreeMap<Slot, Matrix> = x.slots().map(|s| (s, map.block(s).column_space())).collect();
    let (q, _) = x.quotient(&image)?;
    Ok((q, gens.len()))
}

fn free_position(free: &FreeModule, i: usize) -> (Slot, usize) {
    free.positions[0][i]
}

/// Is every indecomposable summand projective? (Equivalently, is `X` zero in the stable category.)
pub fn is_projective(x: &GradedModule) -> Result<bool> {
    Ok(strip_projective_summands(x)?.0.is_zero())
}

/// Third object of the triangle `X -> Y -> C -> Ω⁻¹X` on `f`: the pushout of `Y <- X -> I(X)`.
pub fn mapping_cone(f: &GradedMorphism) -> Result<GradedModule> {
    let x = f.domain();
    let co = cosyzygy(x);
    let sum = GradedModule::direct_sum(&[f.codomain().clone(), co.hull.clone()])?;
    let into_y = sum.injections[0].retarget(f.codomain(), &sum.module)?.after(f)?;
    let into_i = sum.injections[1].retarget(&co.hull, &sum.module)?.after(&co.embedding)?;
    let map = into_y.add(&into_i)?;
    let image: BTreeMap<Slot, Matrix> = x.slots().map(|s| (s, map.block(s).column_space())).collect();
    Ok(sum.module.quotient(&image)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::PrimeField;
    use crate::oracle::algebra::{build_star_algebra, Algebra};
    use crate::oracle::stable::{is_isomorphic, stable_hom, IsoVerdict, DEFAULT_SEED};
    use crate::oracle::star_modules::{canonical_map, star_module, uniserial};

    fn alg(n: usize, d: usize) -> Algebra {
        build_star_algebra(PrimeField::default(), n, d).unwrap()
    }

    fn iso(x: &GradedModule, y: &GradedModule) -> IsoVerdict {
        is_isomorphic(x, y, DEFAULT_SEED).unwrap()
    }

    #[test]
    fn cone_of_an_identity_is_projective() {
        let a = alg(3, 2);
        let m = star_module(&a, 1, 2, 0).unwrap();
        let c = mapping_cone(&GradedMorphism::identity(&m)).unwrap();
        assert!(is_projective(&c).unwrap());
    }

    #[test]
    fn cone_of_a_zero_map_is_a_sum() {
        let a = alg(3, 1);
        let x = star_module(&a, 1, 1, 0).unwrap();
        let y = star_module(&a, 2, 3, 0).unwrap();
        let c = mapping_cone(&GradedMorphism::zero(&x, &y)).unwrap();
        let (c, _) = strip_projective_summands(&c).unwrap();
        let expected = GradedModule::direct_sum(&[y, omega_inverse(&x)]).unwrap().module;
        assert_eq!(iso(&c, &expected), IsoVerdict::Yes);
    }

    #[test]
    fn cover_of_a_simple_is_its_projective() {
        let a = alg(3, 2);
        let s = star_module(&a, 1, 1, 0).unwrap();
        let c = projective_cover(&s);
        assert_eq!(c.free.module.total_dim(), 4);
        assert_eq!(c.free.generators, vec![(0, 0)]);
    }

    #[test]
    fn projectives_have_zero_syzygy() {
        let a = alg(3, 2);
        let p = uniserial(&a, 1, 4, 0).unwrap();
        assert!(omega(&p).is_zero());
        assert!(is_projective(&p).unwrap());
        let c = projective_cover(&p);
        assert!(c.map.is_isomorphism());
    }

    #[test]
    fn omega_of_m12() {
        let a = alg(3, 2);
        let m = star_module(&a, 1, 2, 0).unwrap();
        let expected = star_module(&a, 3, 1, 0).unwrap();
        assert_eq!(iso(&omega(&m), &expected), IsoVerdict::Yes);
    }

    #[test]
    fn cosyzygy_of_m12() {
        let a = alg(3, 2);
        let m = star_module(&a, 1, 2, 0).unwrap();
        let (co, _) = strip_projective_summands(&omega_inverse(&m)).unwrap();
        let expected = star_module(&a, 2, 3, -2).unwrap();
        assert_eq!(iso(&co, &expected), IsoVerdict::Yes);
    }

    #[test]
    fn omega_inverse_undoes_omega() {
        let a = alg(4, 1);
        let m = star_module(&a, 1, 3, 0).unwrap();
        let (back, _) = strip_projective_summands(&omega_inverse(&omega(&m))).unwrap();
        assert_eq!(iso(&back, &m), IsoVerdict::Yes);
        let c = compare_cosyzygy_of_omega(&m).unwrap();
        assert!(stable_hom(c.domain(), &m).unwrap().reduce(&c).unwrap().iter().any(|&x| x != 0));
    }

    #[test]
    fn double_dual_is_identity() {
        let a = alg(3, 2);
        let m = star_module(&a, 3, 2, 1).unwrap();
        let dm = m.dual();
        for (&(v, g), &k) in m.dims() {
            assert_eq!(dm.dim((v, -g)), k);
        }
        assert_eq!(dm.dual(), m);
    }

    #[test]
    fn omega_preserves_identities() {
        let a = alg(3, 1);
        let m = star_module(&a, 2, 3, 0).unwrap();
        for sign in [1, -1] {
            let f = omega_on_morphism(&GradedMorphism::identity(&m), sign).unwrap();
            assert!(f.is_isomorphism());
            assert_eq!(f, GradedMorphism::identity(f.domain()));
        }
    }

    #[test]
    fn omega_is_functorial_on_canonical_maps() {
        let a = alg(4, 1);
        let alpha = canonical_map(&a, 1, 3, 1, 2).unwrap().unwrap();
        let beta = canonical_map(&a, 1, 2, 4, 1).unwrap().unwrap();
        let beta = beta.retarget(alpha.codomain(), beta.codomain()).unwrap();
        let comp = beta.after(&alpha).unwrap();
        for sign in [1, -1] {
            let lhs = omega_on_morphism(&comp, sign).unwrap();
            let rhs = omega_on_morphism(&beta, sign)
                .unwrap()
                .after(&omega_on_morphism(&alpha, sign).unwrap())
                .unwrap();
            let sp = stable_hom(lhs.domain(), lhs.codomain()).unwrap();
            assert_eq!(sp.reduce(&lhs).unwrap(), sp.reduce(&rhs).unwrap());
        }
    }

    #[test]
    fn periodicity_of_omega() {
        let a = alg(3, 2);
        let m = star_module(&a, 1, 2, 0).unwrap();
        let mut w = m.clone();
        for _ in 0..6 {
            w = omega(&w);
        }
        assert_eq!(iso(&w, &star_module(&a, 1, 2, 8).unwrap()), IsoVerdict::Yes);
    }
}
