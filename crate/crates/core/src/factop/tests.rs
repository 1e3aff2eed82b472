use std::sync::Arc;

use super::*;
use crate::fixtures::{max_chain, parity, perm_fixtures, z2_discrete};
use crate::finstar::{all_maps, rho, PointedMap};

fn pm(s: &str) -> PointedMap {
    s.parse().unwrap()
}

fn towers(bound: usize) -> Vec<(&'static str, FactTower)> {
    perm_fixtures().into_iter().map(|fx| (fx.name, FactTower::sample(Arc::new(fx.perm), bound))).collect()
}

#[test]
fn operad_examples() {
    let o0 = FactOperad::build(0);
    assert_eq!(o0.colors, vec![0]);
    for k in 0..4 {
        assert_eq!(o0.multiarrows(k), vec![(vec![0; k], 0)]);
    }
    let o1 = FactOperad::build(1);
    assert_eq!(o1.colors, vec![0, 1]);
    assert!(o1.multiarrows(2).contains(&(vec![0, 1], 1)));
    assert!(FactOperad::has_multiarrow(&[1, 2], 3));
    assert!(!FactOperad::has_multiarrow(&[1, 1], 1));
    assert!(FactOperad::has_multiarrow(&[0, 0, 1], 1));
    for n in 0..=3 {
        assert!(FactOperad::build(n).check_closure(3).is_empty());
    }
}

#[test]
fn multiarrows_match_brute_force() {
    for n in 0..=3usize {
        let operad = FactOperad::build(n);
        for k in 0..=3usize {
            let mut brute = Vec::new();
            let colors = full(n) as usize + 1;
            for code in 0..colors.pow(k as u32) {
                let src: Vec<Subset> = (0..k).map(|i| (code / colors.pow(i as u32) % colors) as Subset).collect();
                let t = src.iter().fold(0, |a, &s| a | s);
                if FactOperad::has_multiarrow(&src, t) && FactOperad::is_canonical(&src) {
                    brute.push((src, t));
                }
            }
            brute.sort();
            assert_eq!(operad.multiarrows(k), brute, "n={n} k={k}");
        }
    }
}

#[test]
fn psi_examples() {
    let p = max_chain(1, &[]);
    let a = psi(&p, &[1]).unwrap();
    assert_eq!((a.at(0), a.at(1)), (p.unit(), 1));
    assert!(a.binary.values().all(|&m| p.base().is_identity(m)));
    let a = psi(&p, &[0, 1]).unwrap();
    assert_eq!(a.at(subset_of(&[1, 2])), 1);
    assert_eq!(a.binary[&(1, 2)], p.base().identity(1));
    assert_eq!(a.phi(), vec![0, 1]);
    let z = z2_discrete();
    let unit_alg = psi(&z, &[]).unwrap();
    assert!(unit_alg.validate(&z).is_empty() && unit_alg.is_fact_object(&z));
    assert!(unit_alg.phi().is_empty());
}

#[test]
fn phi_psi_is_identity() {
    for fx in perm_fixtures() {
        let objs = fx.perm.base().object_count();
        for n in 0..=3 {
            for code in 0..objs.pow(n as u32) {
                let xs: Vec<usize> = (0..n).map(|i| code / objs.pow(i as u32) % objs).collect();
                let a = psi(&fx.perm, &xs).unwrap();
                assert_eq!(a.phi(), xs, "{}", fx.name);
                assert!(a.validate(&fx.perm).is_empty(), "{}", fx.name);
                assert!(a.is_fact_object(&fx.perm));
            }
        }
    }
}

#[test]
fn sampled_algebras_are_valid_and_counit_is_weq() {
    for (name, t) in towers(3) {
        for level in &t.levels {
            for a in &level.algebras {
                assert!(a.validate(&t.ambient).is_empty(), "{name}");
                let m = counit_zigzag(&t.ambient, a).unwrap();
                if a.n == 1 {
                    assert!(t.ambient.base().is_identity(m.components[1]));
                }
                if a.n == 0 {
                    assert_eq!(m.components, vec![a.nullary]);
                }
            }
            let cmp = FactComparison::new(&t, level.n);
            assert!(cmp.witness().verify().is_empty(), "{name} n={}", level.n);
        }
    }
}

#[test]
fn broken_structure_map_is_not_fact() {
    let p = max_chain(1, &[]);
    let a = psi(&p, &[0, 0]).unwrap();
    let mut b = a.clone();
    // A(1,2) := 1 with the binary map 0 -> 1, which is not a weak equivalence.
    b.obj[3] = 1;
    let up = p.base().morphism_by_label("0<1").unwrap();
    b.binary.insert((1, 2), up);
    b.binary.insert((0, 3), p.base().identity(1));
    assert!(!b.is_fact_object(&p));
}

#[test]
fn exhaustive_algebras_agree_with_fact_condition() {
    for fx in perm_fixtures() {
        if fx.perm.base().object_count() > 3 {
            continue;
        }
        for n in 0..=2 {
            for a in enumerate_algebras(&fx.perm, n) {
                if a.is_fact_object(&fx.perm) {
                    assert!(counit_zigzag(&fx.perm, &a).is_ok(), "{}", fx.name);
                }
            }
        }
    }
    // In the max poset with the minimal marking, A(1,2) = 1 with A(1) = A(2) = 0
    // is an algebra that fails the Fact condition.
    let p = max_chain(1, &[]);
    let all = enumerate_algebras(&p, 2);
    assert!(all.iter().any(|a| !a.is_fact_object(&p)));
    assert!(all.iter().any(|a| a.is_fact_object(&p)));
}

#[test]
fn pullback_examples() {
    let p = parity();
    let a = psi(&p, &[1, 0, 1]).unwrap();
    assert_eq!(a.pullback(&p, &PointedMap::identity(3)).unwrap(), a);
    for i in 1..=3 {
        let b = a.pullback(&p, &rho(3, &[i])).unwrap();
        assert_eq!(b.at(1), a.at(singleton(i)));
    }
    let f = pm("2 1 : 1 1");
    let g = pm("1 1 : 1");
    let lhs = a.pullback(&p, &pm("3 2 : 1 2 2")).unwrap();
    assert_eq!(lhs.pullback(&p, &g.after(&f)), lhs.pullback(&p, &f).unwrap().pullback(&p, &g));
}

#[test]
fn pullback_is_strictly_functorial() {
    for (name, t) in towers(3) {
        assert!(check_pullback_functoriality(&t).is_empty(), "{name}");
    }
}

#[test]
fn lax_squares() {
    for (name, t) in towers(3) {
        let c = &*t.ambient;
        for n in 0..=3 {
            for m in 0..=3 {
                for u in all_maps(n, m) {
                    let sq = lax_square(&t, &u);
                    assert!(sq.check().is_empty(), "{name} {u}");
                    if u == PointedMap::identity(n) || u.classify().strongly_inert && m == 1 {
                        assert!(sq.transformation.components.iter().all(|&x| sq.transformation.target.target.is_identity(x)));
                    }
                }
            }
        }
        let fold = PointedMap::fold(2);
        let sq = lax_square(&t, &fold);
        let level = t.level(2);
        for (o, a) in level.algebras.iter().enumerate() {
            let comp = sq.transformation.component(o);
            assert_eq!(comp, a.binary[&(1, 2)], "{name}");
            assert!(c.rel.is_weq(comp));
        }
    }
}

#[test]
fn lax_squares_paste() {
    for (name, t) in towers(2) {
        for n in 0..=2 {
            for m in 0..=2 {
                for k in 0..=2 {
                    for u in all_maps(n, m) {
                        for v in all_maps(m, k) {
                            assert!(lax_pasting_check(&t, &u, &v).is_empty(), "{name} {u} {v}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn segal_witnesses_verify() {
    for (name, t) in towers(3) {
        for n in 0..=3 {
            let w = segal_witness(&t, n);
            assert!(w.verify().is_empty(), "{name} n={n}");
        }
        assert_eq!(segal_witness(&t, 0).f.target.base.object_count(), 1);
    }
}

#[test]
fn fact_morphisms_are_compatible_families() {
    for (name, t) in towers(2) {
        for level in &t.levels {
            for (d, e, comps) in &level.families {
                let m = FactMorphism { components: comps.clone() };
                assert!(m.check(&t.ambient, level.algebra(*d), level.algebra(*e)).is_empty(), "{name}");
            }
        }
    }
}

#[test]
fn algebra_json_round_trip() {
    let p = parity();
    let t = FactTower::sample(Arc::new(p.clone()), 2);
    for a in &t.level(2).algebras {
        let j = FactAlgebraJson::from_algebra(&p, a);
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains("\"struct\"") && text.contains("\"1|2->1,2\""));
        let back: FactAlgebraJson = serde_json::from_str(&text).unwrap();
        assert_eq!(&back.to_algebra(&p).unwrap(), a);
    }
    assert_eq!(subset_key(subset_of(&[2, 1])), "1,2");
    assert_eq!(parse_subset_key("1,3"), Some(5));
    assert_eq!(parse_subset_key(""), Some(0));
}
