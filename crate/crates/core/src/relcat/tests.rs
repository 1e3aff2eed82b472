use std::sync::Arc;

use super::*;
use crate::fincat::{terminal, Functor, NatTransformation};
use crate::fixtures::{arrow, chain, indiscrete};

#[test]
fn markings_validate() {
    let a = arrow();
    assert!(RelCategory::from_ids(a.clone(), &[0, 1], false).is_ok());
    assert!(RelCategory::new(a.clone(), vec![true; 3], false).is_ok());
    let i2 = indiscrete(2);
    let err = RelCategory::from_ids(i2.clone(), &[0, 1], false).unwrap_err();
    assert!(matches!(err, RelError::MissingIso(_)), "{err}");
    let completed = RelCategory::from_ids(i2, &[0, 1], true).unwrap();
    assert!(completed.weq.iter().all(|&w| w));
}

#[test]
fn composition_escape_is_reported() {
    let c = chain(2);
    let l01 = c.morphism_by_label("0<1").unwrap();
    let l12 = c.morphism_by_label("1<2").unwrap();
    let ids: Vec<_> = c.objects().map(|o| c.identity(o)).chain([l01, l12]).collect();
    let err = RelCategory::from_ids(c.clone(), &ids, false).unwrap_err();
    assert_eq!(err, RelError::CompositionEscape { g: "1<2".into(), f: "0<1".into() });
    let ok = RelCategory::from_ids(c, &ids, true).unwrap();
    assert_eq!(ok.weq_ids().len(), 6);
}

#[test]
fn identity_witness_passes() {
    let r = Arc::new(RelCategory::maximal(arrow()));
    assert!(HomotopyEquivWitness::identity(r).verify().is_empty());
}

#[test]
fn non_weq_component_is_named() {
    // id => const_1 on [1] is natural, but id_0 -> 1 is not a weq under the minimal marking.
    let a = arrow();
    let r = Arc::new(RelCategory::minimal(a.clone()));
    let id = RelFunctor::identity(r.clone());
    let top = RelFunctor::new(r.clone(), r.clone(), Functor::new(a.clone(), a.clone(), vec![1, 1], vec![1, 1, 1]));
    let f01 = a.morphism_by_label("0<1").unwrap();
    let t = NatTransformation::new(id.functor.clone(), top.functor.clone(), vec![f01, 1]);
    assert!(t.check().is_empty());
    let zz = ZigZag::forward(id.clone(), top, t);
    let v = zz.check();
    assert_eq!(v.len(), 1);
    assert!(v[0].kind == "weq" && v[0].detail.contains("component at 0"), "{v:?}");
}

#[test]
fn path_construction_counts() {
    let t = Arc::new(RelCategory::maximal(terminal()));
    assert_eq!(path_construction(&RelFunctor::identity(t)).rel.base.object_count(), 1);
    let min = Arc::new(RelCategory::minimal(arrow()));
    assert_eq!(path_construction(&RelFunctor::identity(min)).rel.base.object_count(), 2);
    let max = Arc::new(RelCategory::maximal(arrow()));
    let p = path_construction(&RelFunctor::identity(max));
    assert_eq!(p.rel.base.object_count(), 3);
    assert!(p.rel.base.law_violations(1).is_empty());
    assert!(p.rel.violations().is_empty());
    assert!(p.to_source.check().is_empty() && p.to_target.check().is_empty());
}

#[test]
fn path_adjunction_on_arrow() {
    let a = arrow();
    let max = Arc::new(RelCategory::maximal(a.clone()));
    let adj = path_adjunction_witness(&RelFunctor::identity(max));
    assert!(adj.check().is_empty(), "{:?}", adj.check());
    let f = a.morphism_by_label("0<1").unwrap();
    let o = adj.path.obj(0, f).unwrap();
    let c = adj.counit.component(o);
    let (x, b, _) = adj.path.mor_parts(c);
    assert_eq!((x, b), (a.identity(0), f));
    assert!(adj.path.rel.weq[c]);
}

#[test]
fn path_adjunction_for_non_identity_functors() {
    let i2 = Arc::new(RelCategory::maximal(indiscrete(2)));
    let c2 = Arc::new(RelCategory::maximal(chain(2)));
    // The collapse [2] -> I2 sending 0, 1 to 0 and 2 to 1.
    let functor = Functor::from_fn(c2.base.clone(), i2.base.clone(), |m| {
        let d = usize::from(c2.base.dom(m) >= 2);
        let c = usize::from(c2.base.cod(m) >= 2);
        i2.base.hom(d, c)[0]
    });
    assert!(functor.check().is_empty());
    let f = RelFunctor::new(c2, i2, functor);
    assert!(f.check().is_empty());
    assert!(path_adjunction_witness(&f).check().is_empty());
}

#[test]
fn relative_product_marks_componentwise() {
    let a = Arc::new(RelCategory::minimal(arrow()));
    let b = Arc::new(RelCategory::maximal(arrow()));
    let (p, rel) = RelCategory::product(&[a.clone(), b.clone()]);
    assert!(rel.violations().is_empty());
    for m in p.category.morphisms() {
        let parts = p.mor_parts(m);
        assert_eq!(rel.weq[m], a.weq[parts[0]] && b.weq[parts[1]]);
    }
}
