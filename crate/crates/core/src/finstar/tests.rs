use proptest::prelude::*;

use super::*;

fn pm(s: &str) -> PointedMap {
    s.parse().unwrap()
}

#[test]
fn classification_examples() {
    for n in 0..4 {
        let c = PointedMap::identity(n).classify();
        assert!(c.inert && c.strongly_inert && c.active);
    }
    let rho1 = pm("2 1 : 1 0");
    assert_eq!(rho1, rho(2, &[1]));
    let c = rho1.classify();
    assert!(c.inert && c.strongly_inert && !c.active);
    let c = PointedMap::fold(2).classify();
    assert!(c.active && !c.inert);
    let c = pm("2 2 : 2 1").classify();
    assert!(c.inert && !c.strongly_inert && c.active);
}

#[test]
fn factorization_examples() {
    let fold = PointedMap::fold(2);
    assert_eq!(fold.factorize(), (PointedMap::identity(2), fold.clone()));
    let r = rho(3, &[2]);
    assert_eq!(r.factorize(), (r.clone(), PointedMap::identity(1)));
    let f = pm("3 1 : 1 0 1");
    assert_eq!(f.factorize(), (rho(3, &[1, 3]), fold));
}

#[test]
fn factorization_unique_exhaustively() {
    assert!(check_factorization(3).is_empty());
}

#[test]
fn rho_examples() {
    assert_eq!(rho(3, &[1, 2, 3]), PointedMap::identity(3));
    assert_eq!(rho(3, &[]), pm("3 0 : 0 0 0"));
    assert_eq!(rho(3, &[2]), pm("3 1 : 0 1 0"));
}

#[test]
fn rho_restricts_through_larger_subsets() {
    for n in 0..=4usize {
        for t_mask in 0u32..(1 << n) {
            let t: Vec<usize> = (1..=n).filter(|i| t_mask >> (i - 1) & 1 == 1).collect();
            for s_mask in 0u32..(1 << n) {
                if s_mask & !t_mask != 0 {
                    continue;
                }
                let s: Vec<usize> = (1..=n).filter(|i| s_mask >> (i - 1) & 1 == 1).collect();
                let inner: Vec<usize> = s.iter().map(|x| t.iter().position(|y| y == x).unwrap() + 1).collect();
                assert_eq!(rho(n, &s), rho(t.len(), &inner).after(&rho(n, &t)));
            }
        }
    }
}

#[test]
fn nabla_examples() {
    assert_eq!(delta_to_nabla(&MonotoneMap::identity(2)), NablaMap::identity(2));
    let u = MonotoneMap { n: 0, m: 1, table: vec![0] };
    let p = delta_to_nabla(&u);
    assert_eq!((p.n, p.m), (1, 0));
    assert_eq!(p.table, vec![-1, 0, 0]);
    assert!(check_nabla(3).is_empty());
}

#[test]
fn wedge_examples() {
    let id1 = PointedMap::identity(1);
    assert_eq!(id1.wedge(&id1), PointedMap::identity(2));
    assert_eq!(PointedMap::fold(2).wedge(&id1), pm("3 2 : 1 1 2"));
    let f = pm("2 1 : 1 0");
    assert_eq!(PointedMap::identity(0).wedge(&f), f);
    assert_eq!(f.wedge(&PointedMap::identity(0)), f);
}

#[test]
fn text_form_round_trips() {
    let f = pm("3 2 : 1 0 2");
    assert_eq!(f.to_string(), "3 2 : 1 0 2");
    assert!("3 2 : 1 0".parse::<PointedMap>().is_err());
    assert!("3 2 1 0 2".parse::<PointedMap>().is_err());
    assert!("1 1 : 2".parse::<PointedMap>().is_err());
}

#[test]
fn tw_active_census() {
    let t0 = enumerate_tw_active(0);
    assert_eq!((t0.category().object_count(), t0.category().morphism_count()), (1, 1));
    let t1 = enumerate_tw_active(1);
    let objs: Vec<String> = (0..t1.category().object_count()).map(|o| t1.object(o).to_string()).collect();
    assert_eq!(objs, vec!["0 0 :", "0 1 :", "1 1 : 1"]);
    let t2 = enumerate_tw_active(2);
    assert_eq!((t2.category().object_count(), t2.category().morphism_count()), (11, 211));
    assert!(t2.category().law_violations(1).is_empty());
}

#[test]
fn hom_out_of_id1_nonempty_when_source_nonempty() {
    let t = enumerate_tw_active(3);
    let id1 = t.object_id(&PointedMap::identity(1)).unwrap();
    for o in t.category().objects() {
        let f = t.object(o);
        let hom = t.category().hom(id1, o).len();
        // An active map <1> -> <n> exists only for n >= 1.
        assert_eq!(hom > 0, f.n >= 1, "{f}");
    }
}

fn arb_map(max: usize) -> impl Strategy<Value = PointedMap> {
    (0..=max, 0..=max).prop_flat_map(|(n, m)| {
        proptest::collection::vec(0..=m, n).prop_map(move |table| PointedMap { n, m, table })
    })
}

fn arb_active(max: usize) -> impl Strategy<Value = PointedMap> {
    (0..=max, 1..=max).prop_flat_map(|(n, m)| {
        proptest::collection::vec(1..=m, n).prop_map(move |table| PointedMap { n, m, table })
    })
}

proptest! {
    #[test]
    fn classify_flags_consistent(f in arb_map(5)) {
        let c = f.classify();
        prop_assert!(!c.strongly_inert || c.inert);
        let (i, a) = f.factorize();
        prop_assert!(i.classify().strongly_inert && a.classify().active);
        prop_assert_eq!(a.after(&i), f);
    }

    #[test]
    fn wedge_associative(f in arb_map(3), g in arb_map(3), h in arb_map(3)) {
        prop_assert_eq!(f.wedge(&g).wedge(&h), f.wedge(&g.wedge(&h)));
    }

    #[test]
    fn wedge_preserves_active(f in arb_active(3), g in arb_active(3)) {
        prop_assert!(f.wedge(&g).is_active());
    }

    #[test]
    fn swap_is_involution_and_natural(f in arb_map(3), g in arb_map(3)) {
        let s = PointedMap::swap(f.n, g.n);
        prop_assert_eq!(PointedMap::swap(g.n, f.n).after(&s), PointedMap::identity(f.n + g.n));
        prop_assert_eq!(g.wedge(&f).after(&s), PointedMap::swap(f.m, g.m).after(&f.wedge(&g)));
    }
}
