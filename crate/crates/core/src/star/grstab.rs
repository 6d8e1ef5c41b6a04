//! The graded stable layer: arcs, canonical maps, and `Ω` on symbols.

use super::params::StarParams;
use super::symbols::{CanonicalMapSymbol, StarModuleSymbol};
use crate::error::{Error, Result};

/// `⟨a, j⟩ ⊂ ⟨i, b⟩` on the n-cycle, with `⟨x, x⟩` a point.
pub fn arc_contains(n: usize, a: usize, j: usize, i: usize, b: usize) -> bool {
    let len = |x: usize, y: usize| (y + n - x) % n;
    len(i, a) + len(a, j) <= len(i, b)
}

/// `dim Hom_{A-grstab}(M^a_b, M^i_j(k))`.
pub fn grstab_hom_dim(p: StarParams, a: usize, b: usize, i: usize, j: usize, k: i64) -> usize {
    let forced = if a < i { -p.di() } else { 0 };
    usize::from(k == forced && arc_contains(p.n(), a, j, i, b))
}

/// The canonical map `α^{a,i}_{b,j}`, if the arc condition allows it.
pub fn canonical_map_symbol(p: StarParams, a: usize, b: usize, i: usize, j: usize) -> Option<CanonicalMapSymbol> {
    arc_contains(p.n(), a, j, i, b).then_some(CanonicalMapSymbol { a, b, i, j })
}

/// `m2 ∘ m1` for `m1 = α^{a,c}_{b,d}` and `m2 = α^{c,e}_{d,f}`; `None` is the zero map.
///
/// `m2` is applied after shifting by the codomain shift of `m1`, so the composite lands in
/// `M^e_f(-d δ_{a<c} - d δ_{c<e})`, which is nonzero only when that equals `-d δ_{a<e}`.
pub fn compose_canonical(
    p: StarParams,
    m2: &CanonicalMapSymbol,
    m1: &CanonicalMapSymbol,
) -> Result<Option<CanonicalMapSymbol>> {
    if (m1.i, m1.j) != (m2.a, m2.b) {
        return Err(Error::EndpointMismatch(format!("{m2} after {m1}")));
    }
    let shift = |x: usize, y: usize| if x < y { -p.di() } else { 0 };
    if shift(m1.a, m1.i) + shift(m2.a, m2.i) != shift(m1.a, m2.i) {
        return Ok(None);
    }
    Ok(canonical_map_symbol(p, m1.a, m1.b, m2.i, m2.j))
}

fn delta(b: bool) -> i64 {
    i64::from(b)
}

/// `Ω(M^i_j) = M^{j+1}_i(d δ_{j+1 ≤ i})`.
pub fn omega_once(p: StarParams, s: StarModuleSymbol) -> StarModuleSymbol {
    let j1 = p.vertex(s.j as i64 + 1);
    StarModuleSymbol {
        i: j1,
        j: s.i,
        k: s.k + p.di() * delta(j1 <= s.i),
    }
}

/// `Ω⁻¹(M^i_j) = M^j_{i-1}(-d δ_{i ≤ j})`.
pub fn omega_inverse_once(p: StarParams, s: StarModuleSymbol) -> StarModuleSymbol {
    StarModuleSymbol {
        i: s.j,
        j: p.vertex(s.i as i64 - 1),
        k: s.k - p.di() * delta(s.i <= s.j),
    }
}

/// `Ω^m` on symbols for any integer `m`.
pub fn omega_power(p: StarParams, s: StarModuleSymbol, m: i64) -> StarModuleSymbol {
    let n = p.ni();
    let d = p.di();
    let (i, j) = (s.i as i64, s.j as i64);
    let v = |x: i64| p.vertex(x);
    let le = |x: i64, y: i64| delta(v(x) <= v(y));
    if m >= 0 {
        let (q, r) = (m / (2 * n), m % (2 * n));
        let base = s.k + d * (n + 1) * q;
        if r == 0 {
            return StarModuleSymbol { i: s.i, j: s.j, k: base };
        }
        if r % 2 == 0 {
            let k = r / 2;
            StarModuleSymbol {
                i: v(i + k),
                j: v(j + k),
                k: base + d * (k + delta(n + 1 - k <= i)),
            }
        } else {
            let k = (r + 1) / 2;
            StarModuleSymbol {
                i: v(j + k),
                j: v(i + k - 1),
                k: base + d * (k + delta(n + 1 - k <= i) - le(i + k, j + k)),
            }
        }
    } else {
        let m = -m;
        let (q, r) = (m / (2 * n), m % (2 * n));
        let base = s.k - d * (n + 1) * q;
        if r == 0 {
            return StarModuleSymbol { i: s.i, j: s.j, k: base };
        }
        if r % 2 == 0 {
            let k = r / 2;
            StarModuleSymbol {
                i: v(i - k),
                j: v(j - k),
                k: base - d * (k + delta(i <= k)),
            }
        } else {
            let k = (r + 1) / 2;
            StarModuleSymbol {
                i: v(j - k + 1),
                j: v(i - k),
                k: base - d * (k + delta(i <= k) - le(j - k + 1, i - k)),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params(n: usize, d: usize) -> StarParams {
        StarParams::new(n, d).unwrap()
    }

    // points of the cycle visited walking from x to y, both ends included
    fn walk(n: usize, x: usize, y: usize) -> Vec<usize> {
        let mut out = vec![x];
        let mut c = x;
        while c != y {
            c = c % n + 1;
            out.push(c);
        }
        out
    }

    // `⟨a, j⟩ ⊂ ⟨i, b⟩` on 2n discretized positions: vertex v sits at 2v, so a walk also
    // covers the midpoints between consecutive vertices it passes
    fn brute_contains(n: usize, a: usize, j: usize, i: usize, b: usize) -> bool {
        let cells = |x: usize, y: usize| {
            let w = walk(n, x, y);
            let mut s: Vec<usize> = w.iter().map(|v| 2 * v % (2 * n)).collect();
            s.extend(w.windows(2).map(|e| (2 * e[0] + 1) % (2 * n)));
            s
        };
        let outer = cells(i, b);
        cells(a, j).iter().all(|c| outer.contains(c))
    }

    #[test]
    fn arc_examples() {
        assert!(arc_contains(4, 2, 2, 1, 3));
        assert!(!arc_contains(4, 1, 3, 2, 1));
        assert!(arc_contains(4, 1, 1, 1, 1));
    }

    #[test]
    fn arc_matches_brute_force() {
        for n in 2..=8 {
            for a in 1..=n {
                for j in 1..=n {
                    for i in 1..=n {
                        for b in 1..=n {
                            assert_eq!(
                                arc_contains(n, a, j, i, b),
                                brute_contains(n, a, j, i, b),
                                "n={n} <{a},{j}> in <{i},{b}>"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn tier_inequality_for_a_equal_one() {
        // Hom(M^1_l, M^1_r) is nonzero iff max(1, r + l - n) <= j <= min(r, l) has a solution
        // with j the socle of the image; the arc form is <1, j> ⊂ <1, l> with j <= r.
        for n in 2..=8 {
            for l in 1..=n {
                for j in 1..=n {
                    assert_eq!(arc_contains(n, 1, j, 1, l), j <= l);
                }
            }
        }
    }

    #[test]
    fn grstab_examples() {
        let p = params(3, 2);
        assert_eq!(grstab_hom_dim(p, 1, 2, 1, 2, 0), 1);
        assert_eq!(grstab_hom_dim(p, 1, 2, 1, 2, 1), 0);
        assert_eq!(grstab_hom_dim(p, 1, 2, 3, 1, -2), 1);
        assert_eq!(grstab_hom_dim(p, 1, 2, 2, 3, -2), 0);
    }

    #[test]
    fn identity_is_neutral() {
        let p = params(4, 1);
        let m = canonical_map_symbol(p, 1, 3, 4, 2).unwrap();
        let id_src = canonical_map_symbol(p, 1, 3, 1, 3).unwrap();
        let id_tgt = canonical_map_symbol(p, 4, 2, 4, 2).unwrap();
        assert_eq!(compose_canonical(p, &m, &id_src).unwrap(), Some(m));
        assert_eq!(compose_canonical(p, &id_tgt, &m).unwrap(), Some(m));
        assert!(compose_canonical(p, &m, &m).is_err());
    }

    #[test]
    fn composition_respects_arcs() {
        let p = params(4, 1);
        let m1 = canonical_map_symbol(p, 2, 4, 1, 3).unwrap();
        let m2 = canonical_map_symbol(p, 1, 3, 4, 2).unwrap();
        // <2,2> ⊄ <4,4>
        assert_eq!(compose_canonical(p, &m2, &m1).unwrap(), None);
    }

    #[test]
    fn omega_examples() {
        let p = params(3, 2);
        let m12 = StarModuleSymbol { i: 1, j: 2, k: 0 };
        assert_eq!(omega_power(p, m12, 0), m12);
        assert_eq!(omega_power(p, m12, 1), StarModuleSymbol { i: 3, j: 1, k: 0 });
        assert_eq!(omega_power(p, m12, 6), StarModuleSymbol { i: 1, j: 2, k: 8 });
    }

    #[test]
    fn closed_forms_match_single_steps() {
        for n in 2..=6 {
            for d in 0..=3 {
                let p = params(n, d);
                for i in 1..=n {
                    for j in 1..=n {
                        let s = StarModuleSymbol { i, j, k: 0 };
                        let (mut up, mut down) = (s, s);
                        for m in 1..=(4 * n as i64 + 1) {
                            up = omega_once(p, up);
                            down = omega_inverse_once(p, down);
                            assert_eq!(omega_power(p, s, m), up, "n={n} d={d} M[{i},{j}] m={m}");
                            assert_eq!(omega_power(p, s, -m), down, "n={n} d={d} M[{i},{j}] m=-{m}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn single_steps_are_inverse() {
        let p = params(5, 2);
        for i in 1..=5 {
            for j in 1..=5 {
                let s = StarModuleSymbol { i, j, k: 3 };
                assert_eq!(omega_inverse_once(p, omega_once(p, s)), s);
                assert_eq!(omega_once(p, omega_inverse_once(p, s)), s);
            }
        }
    }

    proptest! {
        #[test]
        fn omega_power_is_additive(
            n in 2usize..=6, d in 0usize..=3, i in 1usize..=6, j in 1usize..=6,
            k in -20i64..20, m1 in -12i64..=12, m2 in -12i64..=12,
        ) {
            prop_assume!(i <= n && j <= n && m1.abs() <= 2 * n as i64 && m2.abs() <= 2 * n as i64);
            let p = params(n, d);
            let s = StarModuleSymbol { i, j, k };
            prop_assert_eq!(omega_power(p, s, m1 + m2), omega_power(p, omega_power(p, s, m1), m2));
        }
    }
}
