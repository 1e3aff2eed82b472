use std::sync::Arc;

use super::*;
use crate::factop::{full, FactTower};
use crate::fincat::{opposite, terminal, FinCategory, Functor};
use crate::finstar::PointedMap;
use crate::fixtures::{chain, discrete, max_chain, perm_fixtures, z2_discrete};
use crate::permcat::{LawBounds, PermRelCategory};
use crate::relcat::{RelCategory, RelFunctor};

fn functor_of(perm: PermRelCategory, bound: usize) -> (FactTower, Arc<TruncatedSegalFunctor>) {
    let tower = FactTower::sample(Arc::new(perm), bound);
    let f = Arc::new(TruncatedSegalFunctor::from_fact_tower(&tower));
    (tower, f)
}

fn pm(s: &str) -> PointedMap {
    s.parse().unwrap()
}

#[test]
fn tw_2_2_sizes() {
    let tw = TwTruncation::new(2, 2);
    assert_eq!(tw.category.object_count(), 11);
    assert_eq!(tw.category.morphism_count(), 211);
    assert!(tw.category.law_violations(8).is_empty());
}

#[test]
fn tw_morphisms_factor_their_source() {
    let tw = TwTruncation::new(2, 2);
    for (p, (u, v)) in tw.morphisms.iter().enumerate() {
        let f = tw.object(tw.category.dom(p));
        let g = tw.object(tw.category.cod(p));
        assert_eq!(&v.after(&g.after(u)), f);
    }
}

#[test]
fn fiber_arities_follow_preimages() {
    let (_, f) = functor_of(z2_discrete(), 2);
    let tw = Arc::new(TwTruncation::new(2, 2));
    let ftw = f_tw(&f, tw.clone()).unwrap();
    let one = tw.object_id(&PointedMap::identity(1)).unwrap();
    assert_eq!(ftw.fibers[one].arities, vec![1]);
    assert_eq!(ftw.fibers[one].rel.base.object_count(), f.value(1).base.object_count());
    let fold = tw.object_id(&PointedMap::fold(2)).unwrap();
    assert_eq!(ftw.fibers[fold].arities, vec![2]);
    let split = tw.object_id(&pm("2 2 : 2 1")).unwrap();
    assert_eq!(ftw.fibers[split].arities, vec![1, 1]);
    assert!(ftw.check_functoriality().is_empty());
}

#[test]
fn f_tw_needs_the_bound() {
    let (_, f) = functor_of(z2_discrete(), 1);
    let tw = Arc::new(TwTruncation::new(2, 2));
    assert!(matches!(f_tw(&f, tw), Err(PermConstrError::Bound { needed: 2, available: 1 })));
}

fn rel(c: Arc<FinCategory>) -> Arc<RelCategory> {
    Arc::new(RelCategory::minimal(c))
}

#[test]
fn grothendieck_over_terminal_is_the_fiber() {
    let index = terminal();
    let x = rel(chain(2));
    let (g, p) = grothendieck(index, vec![x.clone()], vec![RelFunctor::identity(x.clone())]).unwrap();
    assert_eq!(g.base().object_count(), 3);
    assert_eq!(g.base().morphism_count(), x.base.morphism_count());
    assert!(g.check().is_empty());
    assert!(p.check().is_empty());
}

#[test]
fn grothendieck_of_terminal_fibers_is_the_index() {
    let index = chain(1);
    let point = rel(terminal());
    let transition = index.morphisms().map(|_| RelFunctor::identity(point.clone())).collect();
    let (g, _) = grothendieck(index, vec![point.clone(), point], transition).unwrap();
    assert_eq!(g.base().object_count(), 2);
    assert_eq!(g.base().morphism_count(), 3);
    assert!(g.cartesian.iter().all(|&c| c));
}

#[test]
fn grothendieck_of_constant_fibers_is_a_product() {
    let index = chain(1);
    let x = rel(chain(1));
    let transition = index.morphisms().map(|_| RelFunctor::identity(x.clone())).collect();
    let (g, p) = grothendieck(index, vec![x.clone(), x.clone()], transition).unwrap();
    assert_eq!(g.base().object_count(), 4);
    assert_eq!(g.base().morphism_count(), 9);
    assert!(g.check().is_empty());
    // Cartesian exactly when the fiber part is an identity here.
    assert_eq!(g.cartesian.iter().filter(|&&c| c).count(), 3 * 2);
    assert!(p.check().is_empty());
}

#[test]
fn grothendieck_rejects_non_functorial_transitions() {
    let index = chain(1);
    let x = rel(discrete(2));
    let swap = Functor::from_fn(x.base.clone(), x.base.clone(), |m| 1 - m);
    let transition = vec![
        RelFunctor::identity(x.clone()),
        RelFunctor::new(x.clone(), x.clone(), swap.clone()),
        RelFunctor::new(x.clone(), x.clone(), swap),
    ];
    let err = grothendieck(index, vec![x.clone(), x], transition).unwrap_err();
    assert!(matches!(err, PermConstrError::Transition(_)));
}

#[test]
fn total_weqs_are_fiber_weqs_of_the_fiber_part() {
    let (_, f) = functor_of(max_chain(1, &["0<1"]), 2);
    let b = perm_build(&f, PermBounds::square(2)).unwrap();
    assert!(b.total.check().is_empty());
    let tw = b.tw();
    for (p, &(a, _, h)) in b.total.morphisms.iter().enumerate() {
        let fiber = &b.ftw.fibers[tw.category.cod(a)].rel;
        assert_eq!(b.perm.rel.is_weq(p), fiber.is_weq(h), "morphism {p}");
        if b.total.cartesian[p] {
            assert!(fiber.base.inverse(h).is_some());
        }
    }
}

#[test]
fn perm_object_text_round_trip() {
    let o: PermObject = "u = 2 2 : 2 1 | 0,1".parse().unwrap();
    assert_eq!(o.u, pm("2 2 : 2 1"));
    assert_eq!(o.xs, vec![0, 1]);
    assert_eq!(o.to_string().parse::<PermObject>().unwrap(), o);
    let unit: PermObject = "u = 0 0 : | ".parse().unwrap();
    assert!(unit.xs.is_empty());
}

#[test]
fn perm_object_parse_errors() {
    assert!(matches!("2 1 : 1 1 | 0".parse::<PermObject>(), Err(PermConstrError::Syntax(_))));
    assert!(matches!("u = 2 1 : 1 1 | a".parse::<PermObject>(), Err(PermConstrError::Syntax(_))));
    assert!(matches!("u = 2 1 : 1 1 | 0,0".parse::<PermObject>(), Err(PermConstrError::Arity(_))));
    // Not active: 2 goes to the base point.
    assert!(matches!("u = 2 1 : 1 0 | 0".parse::<PermObject>(), Err(PermConstrError::Arity(_))));
}

#[test]
fn tensor_concatenates_and_unit_is_neutral() {
    let (_, f) = functor_of(z2_discrete(), 2);
    let b = perm_build(&f, PermBounds::square(2)).unwrap();
    let t = b.perm.tensor.clone();
    let one = |x| b.object_of(&PermObject { u: PointedMap::identity(1), xs: vec![x] }).unwrap();
    let xy = t.tensor_obj(one(0), one(1)).unwrap();
    assert_eq!(b.perm_object(xy), PermObject { u: PointedMap::identity(2), xs: vec![0, 1] });
    for o in b.base().objects() {
        assert_eq!(t.tensor_obj(t.unit(), o), Some(o));
        assert_eq!(t.tensor_obj(o, t.unit()), Some(o));
    }
    // Three factors of arity one leave the truncation.
    assert_eq!(t.tensor_obj(xy, one(0)), None);
}

#[test]
fn braid_lies_over_the_swap() {
    let (_, f) = functor_of(z2_discrete(), 2);
    let b = perm_build(&f, PermBounds::square(2)).unwrap();
    let t = b.perm.tensor.clone();
    let one = |x| b.object_of(&PermObject { u: PointedMap::identity(1), xs: vec![x] }).unwrap();
    let br = t.braid(one(0), one(1)).unwrap();
    let (e, _, h) = b.total.morphisms[br];
    let (u, v) = &b.tw().morphisms[e];
    assert_eq!(u, &PointedMap::swap(1, 1));
    assert_eq!(v, &PointedMap::swap(1, 1));
    assert!(b.ftw.fibers[b.tw().category.cod(e)].rel.base.is_identity(h));
    assert_eq!(b.base().dom(br), t.tensor_obj(one(0), one(1)).unwrap());
    assert_eq!(b.base().cod(br), t.tensor_obj(one(1), one(0)).unwrap());
}

#[test]
fn perm_2_is_permutative_on_small_fixtures() {
    for perm in [z2_discrete(), max_chain(1, &[])] {
        let (_, f) = functor_of(perm, 2);
        let b = perm_build(&f, PermBounds::square(2)).unwrap();
        let bad = b.perm.validate_permutative(&LawBounds::default());
        assert!(bad.is_empty(), "{:?}", &bad[..bad.len().min(3)]);
    }
}

#[test]
fn perm_build_needs_the_bound() {
    let (_, f) = functor_of(z2_discrete(), 1);
    assert!(matches!(perm_build(&f, PermBounds::square(2)), Err(PermConstrError::Bound { .. })));
}

#[test]
fn counit_is_strict_symmetric_monoidal() {
    for perm in [z2_discrete(), max_chain(1, &["0<1"])] {
        let (tower, f) = functor_of(perm, 2);
        let b = perm_build(&f, PermBounds::square(2)).unwrap();
        let counit = counit_functor(&tower, &b).unwrap();
        let bad = counit.check(&tower, &b);
        assert!(bad.is_empty(), "{:?}", &bad[..bad.len().min(3)]);
    }
}

#[test]
fn counit_sends_unit_inclusion_to_evaluation() {
    let (tower, f) = functor_of(z2_discrete(), 2);
    let b = perm_build(&f, PermBounds::square(2)).unwrap();
    let counit = counit_functor(&tower, &b).unwrap();
    for x in f.value(1).base.objects() {
        let image = counit.functor.obj(b.unit_inclusion().obj(x));
        assert_eq!(image, tower.level(1).algebra(x).at(full(1)));
    }
}

#[test]
fn pi0_agrees_materialized_and_not() {
    for fx in perm_fixtures().into_iter().take(3) {
        let (_, f) = functor_of(fx.perm, 2);
        for n in 1..=2 {
            let bounds = PermBounds::square(n);
            let materialized = perm_build(&f, bounds).unwrap().pi0_report();
            let mut objects_only = pi0_unmaterialized(&f, bounds).unwrap();
            assert!(!objects_only.materialized);
            objects_only.materialized = true;
            assert_eq!(materialized, objects_only, "{} at {n}", fx.name);
            assert!(materialized.bijective());
        }
    }
}

#[test]
fn pi0_of_z2_at_three() {
    let (_, f) = functor_of(z2_discrete(), 3);
    let r = pi0_unmaterialized(&f, PermBounds::square(3)).unwrap();
    assert_eq!(r.source_components, 2);
    assert_eq!(r.total_components, 2);
    assert!(r.bijective());
}

#[test]
fn segal_witnesses_attach_to_fact_functors() {
    let (tower, _) = functor_of(max_chain(1, &["0<1"]), 2);
    let f = TruncatedSegalFunctor::from_fact_tower(&tower).with_segal_witnesses(&tower).unwrap();
    assert!(f.is_segal());
    assert!(f.check().is_empty());
}

#[test]
fn eta_algebra_values() {
    let (_, f) = functor_of(z2_discrete(), 2);
    let b = perm_build(&f, PermBounds { n: 2, m: 3 }).unwrap();
    for x in f.value(2).base.objects() {
        let a = eta_algebra(&b, 2, x).unwrap();
        assert!(a.validate(&b.perm).is_empty());
        assert!(a.is_fact_object(&b.perm));
        let top = b.perm_object(a.at(full(2)));
        assert_eq!(top.u, PointedMap::fold(2));
        assert_eq!(top.xs, vec![x]);
        assert_eq!(b.perm_object(a.at(0)).u, PointedMap { n: 0, m: 1, table: vec![] });
    }
}

#[test]
fn eta_is_an_oplax_transformation() {
    let (_, f) = functor_of(max_chain(1, &[]), 2);
    let e = eta(&f, 2).unwrap();
    let bad = e.oplax.check();
    assert!(bad.is_empty(), "{:?}", &bad[..bad.len().min(3)]);
    assert_eq!(e.perm.bounds, PermBounds { n: 2, m: 3 });
}

#[test]
fn identity_oplax_gives_a_strict_path_functor() {
    let (_, f) = functor_of(z2_discrete(), 2);
    let id = OplaxTransformation::identity(f.clone());
    assert!(id.check().is_empty());
    let path = path_of_oplax(&id).unwrap();
    assert!(path.check().is_empty());
}

#[test]
fn alpha_beta_on_z2() {
    let (_, f) = functor_of(z2_discrete(), 2);
    let (_, path, report) = alpha_beta_check(&f, 2).unwrap();
    assert!(report.passed(), "{report:?}");
    assert_eq!(path.functor.bound, 2);
}

#[test]
fn tw_opposite_indexes_the_total_category() {
    let (_, f) = functor_of(z2_discrete(), 1);
    let b = perm_build(&f, PermBounds::square(1)).unwrap();
    let index = opposite(&b.tw().category);
    assert!(b.projection.target.same_as(&index));
    assert!(b.projection.check().is_empty());
}
