//! The orbit category `A-grstab / Ω(1)`: morphisms are finite families of stable maps
//! `X -> Ω^n Y(n)`, composed by `(g∘f)_j = Σ_i Ω^i(g_{j-i})(i) ∘ f_i`.
//!
//! `Ω^n Y(n)` always means the standard witness: `n` same-sign steps of [`omega_step`]
//! starting from `Y`. Anything built by mixed-sign steps is transported back to it.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{FieldElem, Matrix};

use super::module::{GradedModule, GradedMorphism};
use super::stable::StableHomSpace;
use super::syzygy::{
    compare_cosyzygy_of_omega, compare_omega_of_cosyzygy, omega_step, omega_step_morphism,
};

fn sign_of(n: i64) -> i8 {
    if n >= 0 {
        1
    } else {
        -1
    }
}

/// Lazily extended sequence of standard witnesses `W_n = Ω^n Y(n)`.
#[derive(Clone, Debug)]
pub struct WitnessChain {
    base: GradedModule,
    up: Vec<GradedModule>,
    down: Vec<GradedModule>,
}

impl WitnessChain {
    pub fn new(base: &GradedModule) -> Self {
        Self {
            base: base.clone(),
            up: Vec::new(),
            down: Vec::new(),
        }
    }

    pub fn base(&self) -> &GradedModule {
        &self.base
    }

    pub fn get(&mut self, n: i64) -> &GradedModule {
        if n == 0 {
            return &self.base;
        }
        let (list, sign) = if n > 0 {
            (&mut self.up, 1)
        } else {
            (&mut self.down, -1)
        };
        let k = n.unsigned_abs() as usize;
        while list.len() < k {
            let prev = list.last().unwrap_or(&self.base);
            let next = omega_step(prev, sign);
            list.push(next);
        }
        &list[k - 1]
    }
}

/// Apply a word of `omega_step`s to a module.
pub fn apply_word(base: &GradedModule, word: &[i8]) -> GradedModule {
    word.iter().fold(base.clone(), |m, &s| omega_step(&m, s))
}

fn apply_word_morphism(f: &GradedMorphism, word: &[i8]) -> Result<GradedMorphism> {
    let mut g = f.clone();
    for &s in word {
        g = omega_step_morphism(&g, s)?;
    }
    Ok(g)
}

/// Post-compose `phi: X -> word(base)` with comparison maps until the codomain is standard.
pub fn transport(base: &GradedModule, word: &[i8], phi: &GradedMorphism) -> Result<GradedMorphism> {
    let mut word = word.to_vec();
    let mut phi = phi.clone();
    while let Some(p) = (0..word.len().saturating_sub(1)).find(|&p| word[p] != word[p + 1]) {
        let prefix = apply_word(base, &word[..p]);
        // the pair (+,-) reads Ω⁻¹(Ω W); (-,+) reads Ω(Ω⁻¹ W); the shifts cancel
        let c = if word[p] == 1 {
            compare_cosyzygy_of_omega(&prefix)?
        } else {
            compare_omega_of_cosyzygy(&prefix)?
        };
        let c = apply_word_morphism(&c, &word[p + 2..])?;
        let c = c.retarget(phi.codomain(), c.codomain())?;
        phi = c.after(&phi)?;
        word.drain(p..p + 2);
    }
    Ok(phi)
}

/// A morphism of the orbit category; component `n` maps into the standard witness `Ω^n Y(n)`.
#[derive(Clone, Debug)]
pub struct OrbitMorphism {
    domain: GradedModule,
    codomain: GradedModule,
    components: BTreeMap<i64, GradedMorphism>,
}

impl OrbitMorphism {
    pub fn new(domain: &GradedModule, codomain: &GradedModule, components: BTreeMap<i64, GradedMorphism>) -> Result<Self> {
        let mut chain = WitnessChain::new(codomain);
        for (&n, c) in &components {
            if c.domain() != domain || c.codomain() != chain.get(n) {
                return Err(Error::EndpointMismatch(format!("component {n} has the wrong endpoints")));
            }
        }
        Ok(Self::from_components(domain, codomain, components))
    }

    fn from_components(domain: &GradedModule, codomain: &GradedModule, mut components: BTreeMap<i64, GradedMorphism>) -> Self {
        components.retain(|_, c| !c.is_zero());
        Self {
            domain: domain.clone(),
            codomain: codomain.clone(),
            components,
        }
    }

    pub fn zero(domain: &GradedModule, codomain: &GradedModule) -> Self {
        Self::from_components(domain, codomain, BTreeMap::new())
    }

    pub fn single(domain: &GradedModule, codomain: &GradedModule, n: i64, f: GradedMorphism) -> Self {
        Self::from_components(domain, codomain, BTreeMap::from([(n, f)]))
    }

    pub fn identity(x: &GradedModule) -> Self {
        Self::single(x, x, 0, GradedMorphism::identity(x))
    }

    pub fn domain(&self) -> &GradedModule {
        &self.domain
    }

    pub fn codomain(&self) -> &GradedModule {
        &self.codomain
    }

    pub fn components(&self) -> &BTreeMap<i64, GradedMorphism> {
        &self.components
    }

    pub fn add(&self, other: &OrbitMorphism) -> Result<OrbitMorphism> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::EndpointMismatch("sum of orbit morphisms".into()));
        }
        let mut comps = self.components.clone();
        for (&n, c) in &other.components {
            let e = match comps.remove(&n) {
                Some(a) => a.add(c)?,
                None => c.clone(),
            };
            comps.insert(n, e);
        }
        Ok(Self::from_components(&self.domain, &self.codomain, comps))
    }

    pub fn scale(&self, c: FieldElem) -> OrbitMorphism {
        let comps = self.components.iter().map(|(&n, f)| (n, f.scale(c))).collect();
        Self::from_components(&self.domain, &self.codomain, comps)
    }

    /// `f(k)`; components stay standard since the witness iteration commutes with shifts.
    pub fn shift(&self, k: i64) -> OrbitMorphism {
        let comps = self.components.iter().map(|(&n, f)| (n, f.shift(k))).collect();
        Self::from_components(&self.domain.shift(k), &self.codomain.shift(k), comps)
    }
}

/// `g ∘ f` in the orbit category.
pub fn orbit_compose(g: &OrbitMorphism, f: &OrbitMorphism) -> Result<OrbitMorphism> {
    if f.codomain != g.domain {
        return Err(Error::EndpointMismatch("orbit composition".into()));
    }
    let mut out: BTreeMap<i64, GradedMorphism> = BTreeMap::new();
    for (&i, fi) in &f.components {
        for (&t, gt) in &g.components {
            // Ω^i(g_t)(i): its domain is literally the witness Ω^i Y(i)
            let lifted = apply_word_morphism(gt, &vec![sign_of(i); i.unsigned_abs() as usize])?;
            let lifted = lifted.retarget(fi.codomain(), lifted.codomain())?;
            let term = lifted.after(fi)?;
            if term.is_zero() {
                continue;
            }
            let mut word = vec![sign_of(t); t.unsigned_abs() as usize];
            word.extend(std::iter::repeat_n(sign_of(i), i.unsigned_abs() as usize));
            let term = transport(&g.codomain, &word, &term)?;
            let j = i + t;
            let e = match out.remove(&j) {
                Some(a) => a.add(&term)?,
                None => term,
            };
            out.insert(j, e);
        }
    }
    Ok(OrbitMorphism::from_components(&f.domain, &g.codomain, out))
}

/// `⊕_n Hom_{A-grstab}(X, Ω^n Y(n))`, only the nonzero summands.
#[derive(Clone, Debug)]
pub struct OrbitHomSpace {
    domain: GradedModule,
    codomain: GradedModule,
    components: BTreeMap<i64, StableHomSpace>,
}

impl OrbitHomSpace {
    pub fn domain(&self) -> &GradedModule {
        &self.domain
    }

    pub fn codomain(&self) -> &GradedModule {
        &self.codomain
    }

    pub fn components(&self) -> &BTreeMap<i64, StableHomSpace> {
        &self.components
    }

    pub fn total_dim(&self) -> usize {
        self.components.values().map(|c| c.dim()).sum()
    }

    /// Degrees carrying a nonzero summand.
    pub fn support(&self) -> Vec<i64> {
        self.components.keys().copied().collect()
    }

    /// One orbit morphism per basis vector of each summand, in degree order.
    pub fn basis(&self) -> Vec<OrbitMorphism> {
        let mut out = Vec::new();
        for (&n, c) in &self.components {
            for b in c.basis() {
                out.push(OrbitMorphism::single(&self.domain, &self.codomain, n, b.clone()));
            }
        }
        out
    }

    /// Coordinates in [`Self::basis`]; components outside the support must be stably zero.
    pub fn coordinates(&self, h: &OrbitMorphism) -> Result<Vec<FieldElem>> {
        if h.domain != self.domain || h.codomain != self.codomain {
            return Err(Error::EndpointMismatch("coordinates outside this Hom space".into()));
        }
        let mut out = Vec::new();
        for (&n, c) in &self.components {
            match h.components.get(&n) {
                Some(f) => out.extend(c.reduce(f)?),
                None => out.extend(std::iter::repeat_n(0, c.dim())),
            }
        }
        for (&n, f) in &h.components {
            if !self.components.contains_key(&n) {
                let sp = StableHomSpace::compute(&self.domain, f.codomain())?;
                if !sp.is_stably_zero(f)? {
                    return Err(Error::Inconsistent(format!("nonzero component {n} outside the support")));
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero_morphism(&self, h: &OrbitMorphism) -> Result<bool> {
        Ok(self.coordinates(h)?.iter().all(|&c| c == 0))
    }
}

pub fn orbit_hom(x: &GradedModule, y: &GradedModule) -> Result<OrbitHomSpace> {
    orbit_hom_with(x, &mut WitnessChain::new(y))
}

/// [`orbit_hom`] reusing a witness chain for the codomain.
pub fn orbit_hom_with(x: &GradedModule, chain: &mut WitnessChain) -> Result<OrbitHomSpace> {
    let y = chain.base().clone();
    if !x.same_category(&y) {
        return Err(Error::AlgebraMismatch);
    }
    let mut components = BTreeMap::new();
    let (Some(xmin), Some(xmax)) = (x.min_degree(), x.max_degree()) else {
        return Ok(OrbitHomSpace {
            domain: x.clone(),
            codomain: y,
            components,
        });
    };
    let mut n = 0i64;
    loop {
        let w = chain.get(n).clone();
        match w.max_degree() {
            Some(m) if m >= xmin => {}
            _ => break,
        }
        let sp = StableHomSpace::compute(x, &w)?;
        if sp.dim() > 0 {
            components.insert(n, sp);
        }
        n += 1;
    }
    let mut n = -1i64;
    loop {
        let w = chain.get(n).clone();
        match w.min_degree() {
            Some(m) if m <= xmax => {}
            _ => break,
        }
        let sp = StableHomSpace::compute(x, &w)?;
        if sp.dim() > 0 {
            components.insert(n, sp);
        }
        n -= 1;
    }
    Ok(OrbitHomSpace {
        domain: x.clone(),
        codomain: y,
        components,
    })
}

/// Matrix of `h ↦ h ∘ g` from `Hom(X', Z)` to `Hom(X, Z)` in the two orbit bases.
pub fn precomposition_matrix(g: &OrbitMorphism, source: &OrbitHomSpace, target: &OrbitHomSpace) -> Result<Matrix> {
    let field = g.domain().field();
    let cols: Vec<Vec<FieldElem>> = source
        .basis()
        .iter()
        .map(|h| target.coordinates(&orbit_compose(h, g)?))
        .collect::<Result<_>>()?;
    Ok(Matrix::from_columns(field, target.total_dim(), &cols))
}

/// `dim Hom(K, Z)` for the cone `X -> X' -> K -> X(1)` of `g`, from the long exact sequence:
/// `dim ker(g^*) + dim coker(g(1)^*)`.
pub fn les_cone_hom_dim(g: &OrbitMorphism, z: &GradedModule) -> Result<usize> {
    let mut chain = WitnessChain::new(z);
    let x = g.domain().clone();
    let xp = g.codomain().clone();
    let h_xp = orbit_hom_with(&xp, &mut chain)?;
    let h_x = orbit_hom_with(&x, &mut chain)?;
    let ker = h_xp.total_dim() - precomposition_matrix(g, &h_xp, &h_x)?.rank();
    let g1 = g.shift(1);
    let h_xp1 = orbit_hom_with(&xp.shift(1), &mut chain)?;
    let h_x1 = orbit_hom_with(&x.shift(1), &mut chain)?;
    let coker = h_x1.total_dim() - precomposition_matrix(&g1, &h_xp1, &h_x1)?.rank();
    Ok(ker + coker)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::PrimeField;
    use crate::oracle::algebra::build_star_algebra;
    use crate::oracle::star_modules::{star_module, uniserial};

    #[test]
    fn simple_endomorphisms_live_in_degree_zero() {
        let a = build_star_algebra(PrimeField::default(), 3, 2).unwrap();
        let s = star_module(&a, 1, 1, 0).unwrap();
        let h = orbit_hom(&s, &s).unwrap();
        assert_eq!(h.support(), vec![0]);
        assert_eq!(h.total_dim(), 1);
    }

    #[test]
    fn nothing_into_projectives() {
        let a = build_star_algebra(PrimeField::default(), 3, 1).unwrap();
        let s = star_module(&a, 1, 2, 0).unwrap();
        let p = uniserial(&a, 2, 4, 0).unwrap();
        assert_eq!(orbit_hom(&s, &p).unwrap().total_dim(), 0);
    }

    #[test]
    fn identity_is_neutral() {
        let a = build_star_algebra(PrimeField::default(), 3, 2).unwrap();
        let x = star_module(&a, 1, 1, 0).unwrap();
        let y = star_module(&a, 1, 2, 4).unwrap();
        let h = orbit_hom(&x, &y).unwrap();
        assert_eq!(h.total_dim(), 1);
        let f = &h.basis()[0];
        let left = orbit_compose(&OrbitMorphism::identity(&y), f).unwrap();
        let right = orbit_compose(f, &OrbitMorphism::identity(&x)).unwrap();
        assert_eq!(h.coordinates(&left).unwrap(), vec![1]);
        assert_eq!(h.coordinates(&right).unwrap(), vec![1]);
    }

    #[test]
    fn composites_across_degrees() {
        // M^1_1 -> M^1_2(4) -> M^1_1(8), the second a degree shift of the first kind
        let a = build_star_algebra(PrimeField::default(), 3, 2).unwrap();
        let x = star_module(&a, 1, 2, 0).unwrap();
        let mut found = 0;
        for k in 0..14 {
            let y = star_module(&a, 1, 1, k).unwrap();
            let h1 = orbit_hom(&x, &y).unwrap();
            if h1.total_dim() == 0 {
                continue;
            }
            for k2 in 0..14 {
                let z = star_module(&a, 1, 2, k + k2).unwrap();
                let h2 = orbit_hom(&y, &z).unwrap();
                if h2.total_dim() == 0 {
                    continue;
                }
                let c = orbit_compose(&h2.basis()[0], &h1.basis()[0]).unwrap();
                let h = orbit_hom(&x, &z).unwrap();
                let coords = h.coordinates(&c).unwrap();
                if coords.iter().any(|&v| v != 0) {
                    found += 1;
                }
            }
        }
        assert!(found > 0);
    }
}
