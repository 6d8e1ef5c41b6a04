//! Sweeps checking the closed-form calculus against the oracle, and the acceptance criteria built on them.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::kronecker::{counterexample_report, dgstab_tables, grstab_tables, TableRanges};
use crate::linalg::PrimeField;
use crate::oracle::stable::{is_isomorphic, stable_hom, IsoVerdict, DEFAULT_SEED};
use crate::oracle::star_modules::{canonical_map, nonprojective_summands, star_module};
use crate::oracle::syzygy::{mapping_cone, omega, omega_inverse};
use crate::oracle::{build_star_algebra, orbit_compose, orbit_hom, Algebra, GradedModule, OrbitMorphism, WitnessChain};
use crate::star::{
    ar_quiver, canonical_map_symbol, compose_canonical, compose_dg, cone, dgstab_hom, grstab_hom_dim, normalize,
    omega_power, ArrowKind, CanonicalObject, DgMorphism, StarModuleSymbol, StarParams,
};

/// Number of items examined and a description of every failure.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn absorb(&mut self, other: Check) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

fn merge(parts: Vec<Result<Check>>) -> Result<Check> {
    let mut out = Check::default();
    for p in parts {
        out.absorb(p?);
    }
    Ok(out)
}

/// `M^1_l(k)` as an oracle module.
pub fn object_module(alg: &Algebra, c: CanonicalObject) -> Result<GradedModule> {
    star_module(alg, 1, c.l, c.k)
}

fn star(field: PrimeField, p: StarParams) -> Result<Algebra> {
    build_star_algebra(field, p.n(), p.d())
}

/// Canonical lengths with every residue `0 <= k < P`, unreduced.
fn raw_objects(p: StarParams) -> Vec<(usize, i64)> {
    (1..=p.max_length())
        .flat_map(|l| (0..p.big_p()).map(move |k| (l, k)))
        .collect()
}

/// Criteria 1 and 2 for one algebra: `dgstab_hom` against `orbit_hom`, and the support of every `orbit_hom`.
pub fn hom_sweep(field: PrimeField, p: StarParams, exec: Execution) -> Result<(Check, Check)> {
    let alg = star(field, p)?;
    let objs = raw_objects(p);
    let modules: Vec<GradedModule> = objs
        .iter()
        .map(|&(l, k)| star_module(&alg, 1, l, k))
        .collect::<Result<_>>()?;
    let parts = exec.map((0..objs.len()).collect(), |yi| -> Result<(Check, Check)> {
        let mut chain = WitnessChain::new(&modules[yi]);
        let (r, kr) = objs[yi];
        let y = CanonicalObject::new(p, r, kr)?;
        let (mut dims, mut support) = (Check::default(), Check::default());
        for (xi, &(l, kl)) in objs.iter().enumerate() {
            let x = CanonicalObject::new(p, l, kl)?;
            let sp = crate::oracle::orbit::orbit_hom_with(&modules[xi], &mut chain)?;
            let sym = usize::from(!dgstab_hom(p, x, y)?.is_zero());
            dims.expect(sym == sp.total_dim(), || {
                format!("{p:?} Hom(M[1,{l}]({kl}), M[1,{r}]({kr})): calculus {sym}, oracle {}", sp.total_dim())
            });
            support.expect(sp.support().len() <= 1, || {
                format!("{p:?} Hom(M[1,{l}]({kl}), M[1,{r}]({kr})) supported at {:?}", sp.support())
            });
        }
        Ok((dims, support))
    });
    let mut out = (Check::default(), Check::default());
    for part in parts {
        let (a, b) = part?;
        out.0.absorb(a);
        out.1.absorb(b);
    }
    Ok(out)
}

/// Oracle generators for the arrows met along quiver paths.
struct ArrowCache<'a> {
    alg: &'a Algebra,
    modules: BTreeMap<CanonicalObject, GradedModule>,
    arrows: BTreeMap<(CanonicalObject, CanonicalObject), OrbitMorphism>,
}

impl<'a> ArrowCache<'a> {
    fn new(alg: &'a Algebra) -> Self {
        Self {
            alg,
            modules: BTreeMap::new(),
            arrows: BTreeMap::new(),
        }
    }

    fn module(&mut self, c: CanonicalObject) -> Result<GradedModule> {
        if let Some(m) = self.modules.get(&c) {
            return Ok(m.clone());
        }
        let m = object_module(self.alg, c)?;
        self.modules.insert(c, m.clone());
        Ok(m)
    }

    fn arrow(&mut self, x: CanonicalObject, y: CanonicalObject) -> Result<OrbitMorphism> {
        if let Some(a) = self.arrows.get(&(x, y)) {
            return Ok(a.clone());
        }
        let (mx, my) = (self.module(x)?, self.module(y)?);
        let sp = orbit_hom(&mx, &my)?;
        if sp.total_dim() != 1 {
            return Err(Error::Inconsistent(format!("arrow {x} -> {y} spans {} dimensions", sp.total_dim())));
        }
        let a = sp.basis().remove(0);
        self.arrows.insert((x, y), a.clone());
        Ok(a)
    }
}

/// Criterion 3 for one algebra: paths of length 2 and 3 in the AR quiver.
pub fn composition_sweep(field: PrimeField, p: StarParams, exec: Execution) -> Result<Check> {
    let alg = star(field, p)?;
    let q = ar_quiver(p)?;
    let starts: Vec<_> = q.vertices.keys().copied().collect();
    let parts = exec.map(starts, |v| -> Result<Check> {
        let mut cache = ArrowCache::new(&alg);
        let mut check = Check::default();
        for len in [2usize, 3] {
            for w in q.paths_from(v, len) {
                let mut objs = vec![q.object_at(v)];
                let mut sym = Vec::new();
                let mut cur = v;
                for &kind in &w {
                    sym.push(q.arrow(kind, cur)?);
                    cur = match kind {
                        ArrowKind::Diagonal => (cur.0 + 1, cur.1 + 1),
                        ArrowKind::Vertical => (cur.0, cur.1 - 1),
                    };
                    objs.push(q.object_at(cur));
                }
                let orc: Vec<OrbitMorphism> = objs
                    .windows(2)
                    .map(|e| cache.arrow(e[0], e[1]))
                    .collect::<Result<_>>()?;
                let first = cache.module(objs[0])?;
                let last = cache.module(objs[len])?;
                let hom = orbit_hom(&first, &last)?;
                let s12 = compose_dg(p, &sym[1], &sym[0])?;
                let o12 = orbit_compose(&orc[1], &orc[0])?;
                let (s_all, o_all) = if len == 2 {
                    (s12, o12.clone())
                } else {
                    let s_left = compose_dg(p, &sym[2], &s12)?;
                    let s_right = compose_dg(p, &compose_dg(p, &sym[2], &sym[1])?, &sym[0])?;
                    check.expect(s_left == s_right, || format!("{p:?} {v:?} {w:?}: {s_left} != {s_right}"));
                    let o_left = orbit_compose(&orc[2], &o12)?;
                    let o_right = orbit_compose(&orbit_compose(&orc[2], &orc[1])?, &orc[0])?;
                    let (cl, cr) = (hom.coordinates(&o_left)?, hom.coordinates(&o_right)?);
                    check.expect(cl == cr, || format!("{p:?} {v:?} {w:?}: oracle composites {cl:?} vs {cr:?}"));
                    (s_left, o_left)
                };
                let oracle_zero = hom.is_zero_morphism(&o_all)?;
                check.expect(s_all.is_zero() == oracle_zero, || {
                    format!("{p:?} {v:?} {w:?}: calculus {s_all}, oracle zero = {oracle_zero}")
                });
                if !oracle_zero {
                    let basis = dgstab_hom(p, objs[0], objs[len])?;
                    check.expect(hom.total_dim() == 1 && basis.same_line(&s_all), || {
                        format!("{p:?} {v:?} {w:?}: composite {s_all} is not the basis {basis}")
                    });
                }
            }
        }
        Ok(check)
    });
    merge(parts)
}

fn iterate(x: &GradedModule, m: i64) -> GradedModule {
    let mut w = x.clone();
    for _ in 0..m.unsigned_abs() {
        w = if m > 0 { omega(&w) } else { omega_inverse(&w) };
    }
    w
}

fn expect_iso(check: &mut Check, seed: u64, x: &GradedModule, y: &GradedModule, what: impl Fn() -> String) -> Result<()> {
    let v = is_isomorphic(x, y, seed)?;
    check.expect(v == IsoVerdict::Yes, || format!("{}: {v:?}", what()));
    Ok(())
}

/// Is `x ≅ y` in the orbit category? One-dimensional Hom whose single component is a graded isomorphism.
pub fn oracle_isomorphic(x: &GradedModule, y: &GradedModule, seed: u64) -> Result<IsoVerdict> {
    let sp = orbit_hom(x, y)?;
    let support = sp.support();
    if support.len() != 1 || sp.total_dim() != 1 {
        return Ok(IsoVerdict::No);
    }
    let mut chain = WitnessChain::new(y);
    is_isomorphic(x, chain.get(support[0]), seed)
}

/// Middle term of the oracle's triangle on the generator of `Hom(X, Y)`, normalized and sorted.
pub fn oracle_cone_middle(alg: &Algebra, p: StarParams, m: &DgMorphism) -> Result<Vec<CanonicalObject>> {
    let sp = orbit_hom(&object_module(alg, m.domain)?, &object_module(alg, m.codomain)?)?;
    let Some((_, comp)) = sp.components().iter().next() else {
        return Err(Error::Inconsistent(format!("oracle Hom for {m} is zero")));
    };
    let c = mapping_cone(&comp.basis()[0])?;
    let mut out: Vec<CanonicalObject> = nonprojective_summands(&c)?
        .into_iter()
        .map(|(i, j, k)| normalize(p, StarModuleSymbol { i, j, k }))
        .collect();
    out.sort();
    Ok(out)
}

/// Criterion 4 for one algebra: `Ω^{2n} M ≅ M(d(n+1))`, and the half period for odd `n`.
pub fn periodicity_sweep(field: PrimeField, p: StarParams, seed: u64) -> Result<Check> {
    let alg = star(field, p)?;
    let (n, d) = (p.ni(), p.di());
    let mut check = Check::default();
    for i in 1..=p.n() {
        for j in 1..=p.n() {
            let x = star_module(&alg, i, j, 0)?;
            let full = star_module(&alg, i, j, d * (n + 1))?;
            expect_iso(&mut check, seed, &iterate(&x, 2 * n), &full, || format!("{p:?} Ω^2n M[{i},{j}]"))?;
        }
        if n % 2 == 1 {
            let j = p.vertex(i as i64 + (n - 1) / 2);
            let x = star_module(&alg, i, j, 0)?;
            let half = star_module(&alg, i, j, (n + 1) * d / 2)?;
            expect_iso(&mut check, seed, &iterate(&x, n), &half, || format!("{p:?} Ω^n M[{i},{j}]"))?;
        }
    }
    Ok(check)
}

/// Criterion 5 for one algebra: every nonzero basis morphism, its cone against the oracle's.
pub fn cone_sweep(field: PrimeField, p: StarParams, exec: Execution) -> Result<Check> {
    let alg = star(field, p)?;
    let objs = CanonicalObject::all(p);
    let parts = exec.map(objs.clone(), |x| -> Result<Check> {
        let mut check = Check::default();
        for &y in &objs {
            let m = dgstab_hom(p, x, y)?;
            if m.is_zero() {
                continue;
            }
            let t = cone(p, &m)?;
            check.expect(t.is_exact_shaped(p)?, || format!("{p:?} cone({m}) composites do not vanish"));
            let oracle = oracle_cone_middle(&alg, p, &m)?;
            let mut calc = t.middle.clone();
            calc.sort();
            check.expect(oracle == calc, || format!("{p:?} cone({m}): calculus {calc:?}, oracle {oracle:?}"));
        }
        Ok(check)
    });
    merge(parts)
}

/// Criterion 6 for one algebra (symbolic): vertex count, degrees, squares, and `zero_path`.
pub fn ar_sweep(p: StarParams) -> Result<Check> {
    let q = ar_quiver(p)?;
    let mut check = Check::default();
    let expected = p.ni() * p.big_p() / 2;
    check.expect(q.vertices.len() as i64 == expected, || {
        format!("{p:?}: {} vertices, expected {expected}", q.vertices.len())
    });
    for (&v, o) in &q.vertices {
        let deg = if o.l == 1 { 1 } else { 2 };
        check.expect(q.in_degree(v) == deg && q.out_degree(v) == deg, || format!("{p:?} degree at {v:?}"));
        if (2..p.n()).contains(&v.1) {
            let a = q.path_morphism(v, &[ArrowKind::Diagonal, ArrowKind::Vertical])?;
            let b = q.path_morphism(v, &[ArrowKind::Vertical, ArrowKind::Diagonal])?;
            check.expect(a.same_line(&b), || format!("{p:?} square at {v:?}: {a} vs {b}"));
        }
        for len in 0..=p.n() + 1 {
            for w in q.paths_from(v, len) {
                let pred = q.zero_path(v, &w)?;
                let m = q.path_morphism(v, &w)?;
                check.expect(pred == m.is_zero(), || format!("{p:?} {v:?} {w:?}: predicate {pred}, composite {m}"));
            }
        }
    }
    Ok(check)
}

/// `grstab_hom_dim` against `stable_hom` for `|k| <= (n+1)d` (and `|k| <= 2` when `d = 0`).
pub fn grstab_sweep(field: PrimeField, p: StarParams, exec: Execution) -> Result<Check> {
    let alg = star(field, p)?;
    let n = p.n();
    let kmax = ((n + 1) * p.d()).max(2) as i64;
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|a| (1..=n).map(move |b| (a, b))).collect();
    let parts = exec.map(pairs.clone(), |(a, b)| -> Result<Check> {
        let mut check = Check::default();
        let x = star_module(&alg, a, b, 0)?;
        for &(i, j) in &pairs {
            for k in -kmax..=kmax {
                let sym = grstab_hom_dim(p, a, b, i, j, k);
                let orc = stable_hom(&x, &star_module(&alg, i, j, k)?)?.dim();
                check.expect(sym == orc, || format!("{p:?} Hom(M[{a},{b}], M[{i},{j}]({k})): {sym} vs {orc}"));
            }
        }
        Ok(check)
    });
    merge(parts)
}

/// `compose_canonical` against composing the oracle's canonical maps.
pub fn canonical_composition_sweep(field: PrimeField, p: StarParams) -> Result<Check> {
    let alg = star(field, p)?;
    let n = p.n();
    let idx: Vec<(usize, usize)> = (1..=n).flat_map(|a| (1..=n).map(move |b| (a, b))).collect();
    let mut check = Check::default();
    for &(a, b) in &idx {
        for &(c, dd) in &idx {
            let Some(s1) = canonical_map_symbol(p, a, b, c, dd) else { continue };
            let m1 = canonical_map(&alg, a, b, c, dd)?.expect("arc condition holds");
            let shift1 = s1.codomain(p).k;
            for &(e, f) in &idx {
                let Some(s2) = canonical_map_symbol(p, c, dd, e, f) else { continue };
                let m2 = canonical_map(&alg, c, dd, e, f)?.expect("arc condition holds").shift(shift1);
                let m2 = m2.retarget(m1.codomain(), m2.codomain())?;
                let comp = m2.after(&m1)?;
                let sp = stable_hom(comp.domain(), comp.codomain())?;
                let nonzero = !sp.is_stably_zero(&comp)?;
                let sym = compose_canonical(p, &s2, &s1)?;
                check.expect(sym.is_some() == nonzero, || {
                    format!("{p:?} {s2} after {s1}: calculus {sym:?}, oracle nonzero = {nonzero}")
                });
            }
        }
    }
    Ok(check)
}

/// `omega_power` and `normalize` against the oracle's `Ω` and isomorphism test.
pub fn omega_normalize_sweep(field: PrimeField, p: StarParams, seed: u64) -> Result<Check> {
    let alg = star(field, p)?;
    let n = p.ni();
    let mut check = Check::default();
    for i in 1..=p.n() {
        for j in 1..=p.n() {
            let s = StarModuleSymbol { i, j, k: 0 };
            let x = star_module(&alg, i, j, 0)?;
            let (mut up, mut down) = (x.clone(), x.clone());
            for m in 1..=2 * n {
                up = omega(&up);
                down = omega_inverse(&down);
                for (w, e) in [(&up, m), (&down, -m)] {
                    let t = omega_power(p, s, e);
                    expect_iso(&mut check, seed, w, &star_module(&alg, t.i, t.j, t.k)?, || {
                        format!("{p:?} Ω^{e} M[{i},{j}] vs {t}")
                    })?;
                }
            }
            for k in [0, 1] {
                let x = star_module(&alg, i, j, k)?;
                let c = normalize(p, StarModuleSymbol { i, j, k });
                let v = oracle_isomorphic(&x, &object_module(&alg, c)?, seed)?;
                check.expect(v == IsoVerdict::Yes, || format!("{p:?} M[{i},{j}]({k}) vs {c}: {v:?}"));
            }
        }
    }
    Ok(check)
}

/// Outcome of one acceptance criterion.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: String,
    /// `None` when the outcome spans several primes.
    pub prime: Option<u32>,
    pub check: Check,
    pub seconds: f64,
}

impl CriterionOutcome {
    pub fn passed(&self) -> bool {
        self.check.passed()
    }

    pub fn line(&self) -> String {
        format!(
            "criterion {} [{}] p={}: {} ({} checks, {} failures, {:.2}s)",
            self.id,
            self.name,
            self.prime.map_or_else(|| "all".to_string(), |p| p.to_string()),
            if self.passed() { "PASS" } else { "FAIL" },
            self.check.checked,
            self.check.failures.len(),
            self.seconds
        )
    }
}

pub const CRITERIA: [(u8, &str); 9] = [
    (1, "hom oracle equivalence"),
    (2, "one morphism rule"),
    (3, "composition"),
    (4, "periodicity"),
    (5, "cone triangles"),
    (6, "AR quiver"),
    (7, "Kronecker tables"),
    (8, "counterexample"),
    (9, "field robustness"),
];

fn grid(ns: std::ops::RangeInclusive<usize>, ds: std::ops::RangeInclusive<usize>) -> Vec<StarParams> {
    ns.flat_map(|n| ds.clone().map(move |d| StarParams::new(n, d).expect("n >= 2")))
        .collect()
}

fn outcome(id: u8, field: PrimeField, start: Instant, check: Check) -> CriterionOutcome {
    CriterionOutcome {
        id,
        name: CRITERIA[id as usize - 1].1.to_string(),
        prime: Some(field.prime()),
        check,
        seconds: start.elapsed().as_secs_f64(),
    }
}

/// Criteria 1 and 2, which share one sweep.
pub fn criteria_hom(field: PrimeField, exec: Execution) -> Result<[CriterionOutcome; 2]> {
    let start = Instant::now();
    let (mut dims, mut support) = (Check::default(), Check::default());
    for p in grid(2..=4, 0..=2) {
        let (a, b) = hom_sweep(field, p, exec)?;
        dims.absorb(a);
        support.absorb(b);
    }
    Ok([outcome(1, field, start, dims), outcome(2, field, start, support)])
}

pub fn criterion_composition(field: PrimeField, exec: Execution) -> Result<CriterionOutcome> {
    let start = Instant::now();
    let parts = grid(2..=4, 0..=2).into_iter().map(|p| composition_sweep(field, p, exec)).collect();
    Ok(outcome(3, field, start, merge(parts)?))
}

pub fn criterion_periodicity(field: PrimeField) -> Result<CriterionOutcome> {
    let start = Instant::now();
    let parts = grid(2..=4, 0..=2).into_iter().map(|p| periodicity_sweep(field, p, DEFAULT_SEED)).collect();
    Ok(outcome(4, field, start, merge(parts)?))
}

pub fn criterion_cones(field: PrimeField, exec: Execution) -> Result<CriterionOutcome> {
    let start = Instant::now();
    let parts = grid(2..=3, 0..=2).into_iter().map(|p| cone_sweep(field, p, exec)).collect();
    Ok(outcome(5, field, start, merge(parts)?))
}

pub fn criterion_ar(field: PrimeField) -> Result<CriterionOutcome> {
    let start = Instant::now();
    let mut check = merge(grid(2..=5, 0..=3).into_iter().map(ar_sweep).collect())?;
    for (n, d, shape, cols, count) in [(3, 2, crate::star::Shape::Cylinder, 7, 21), (3, 1, crate::star::Shape::Moebius, 10, 15)] {
        let q = ar_quiver(StarParams::new(n, d)?)?;
        check.expect(q.shape == shape && q.columns == cols && q.vertices.len() == count, || {
            format!("n={n} d={d}: {:?} with {} columns and {} vertices", q.shape, q.columns, q.vertices.len())
        });
    }
    Ok(outcome(6, field, start, check))
}

pub fn criterion_kronecker_tables(field: PrimeField, exec: Execution) -> Result<CriterionOutcome> {
    let start = Instant::now();
    let mut check = Check::default();
    let ranges = TableRanges::default();
    for t in grstab_tables(field, ranges, exec)?.into_iter().chain(dgstab_tables(field, ranges, exec)?) {
        for c in &t.cells {
            check.expect(c.expected == c.computed, || {
                format!("{:?} {}: Hom({}, {}) = {}, expected {}", t.category, t.formula, c.from, c.to, c.computed, c.expected)
            });
        }
    }
    Ok(outcome(7, field, start, check))
}

pub fn criterion_counterexample(field: PrimeField, exec: Execution) -> Result<CriterionOutcome> {
    let start = Instant::now();
    let r = counterexample_report(field, exec)?;
    let mut check = Check::default();
    for row in &r.hom_dims_k {
        check.expect(row.expected == row.computed, || {
            format!("dim Hom(K, {}) = {}, expected {}", row.target, row.computed, row.expected)
        });
    }
    for c in &r.hom_dims_k_vs_candidates {
        check.expect(c.distinguished_by.is_some(), || format!("candidate {} not excluded", c.candidate));
    }
    check.expect(r.sweep_matches_candidates, || format!("catalogue survivors {:?}", r.sweep_survivors));
    check.expect(r.verdict, || "verdict false".into());
    Ok(outcome(8, field, start, check))
}

/// Criteria 1 through 8 over one field.
pub fn run_criteria(field: PrimeField, exec: Execution) -> Result<Vec<CriterionOutcome>> {
    let mut out = Vec::new();
    out.extend(criteria_hom(field, exec)?);
    out.push(criterion_composition(field, exec)?);
    out.push(criterion_periodicity(field)?);
    out.push(criterion_cones(field, exec)?);
    out.push(criterion_ar(field)?);
    out.push(criterion_kronecker_tables(field, exec)?);
    out.push(criterion_counterexample(field, exec)?);
    Ok(out)
}

pub const ROBUSTNESS_PRIMES: [u32; 3] = [2, 3, 32003];

/// Criterion 9: every criterion passes with identical check counts for each prime.
pub fn criterion_field_robustness(runs: &[Vec<CriterionOutcome>]) -> CriterionOutcome {
    let start = Instant::now();
    let mut check = Check::default();
    let reference = runs.first();
    for run in runs {
        for (o, r) in run.iter().zip(reference.into_iter().flatten()) {
            check.expect(o.passed(), || format!("criterion {} fails for p={:?}", o.id, o.prime));
            check.expect(o.check.checked == r.check.checked, || {
                format!("criterion {} checks {} items for p={:?} but {} for p={:?}", o.id, o.check.checked, o.prime, r.check.checked, r.prime)
            });
        }
    }
    CriterionOutcome {
        id: 9,
        name: CRITERIA[8].1.to_string(),
        prime: None,
        check,
        seconds: start.elapsed().as_secs_f64(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(n: usize, d: usize) -> StarParams {
        StarParams::new(n, d).unwrap()
    }

    #[test]
    fn small_hom_sweep() {
        let (a, b) = hom_sweep(PrimeField::default(), small(2, 1), Execution::Sequential).unwrap();
        assert!(a.passed(), "{:?}", a.failures);
        assert!(b.passed(), "{:?}", b.failures);
        assert_eq!(a.checked, 7 * 7);
    }

    #[test]
    fn small_sweeps() {
        let f = PrimeField::default();
        let p = small(3, 1);
        for c in [
            composition_sweep(f, p, Execution::Sequential).unwrap(),
            periodicity_sweep(f, p, DEFAULT_SEED).unwrap(),
            cone_sweep(f, p, Execution::Sequential).unwrap(),
            ar_sweep(p).unwrap(),
        ] {
            assert!(c.passed() && c.checked > 0, "{:?}", c.failures);
        }
    }

    #[test]
    fn robustness_flags_differences() {
        let mk = |prime: u32, checked, failures: Vec<String>| CriterionOutcome {
            id: 1,
            name: "x".into(),
            prime: Some(prime),
            check: Check { checked, failures },
            seconds: 0.0,
        };
        let ok = criterion_field_robustness(&[vec![mk(2, 3, vec![])], vec![mk(3, 3, vec![])]]);
        assert!(ok.passed());
        let bad = criterion_field_robustness(&[vec![mk(2, 3, vec![])], vec![mk(3, 4, vec!["f".into()])]]);
        assert_eq!(bad.check.failures.len(), 2);
    }
}
