use std::sync::Arc;

use super::*;

fn arrow() -> Arc<FinCategory> {
    let mut b = CategoryBuilder::new();
    let (x, y) = (b.object("0"), b.object("1"));
    b.morphism("f", x, y);
    Arc::new(b.build().unwrap())
}

fn indiscrete2() -> Arc<FinCategory> {
    let mut b = CategoryBuilder::new();
    let (x, y) = (b.object("a"), b.object("b"));
    let f = b.morphism("f", x, y);
    let g = b.morphism("g", y, x);
    let (ia, ib) = (b.identity(x), b.identity(y));
    b.compose(g, f, ia).compose(f, g, ib);
    Arc::new(b.build().unwrap())
}

#[test]
fn terminal_and_arrow_validate() {
    let t = terminal();
    assert_eq!((t.object_count(), t.morphism_count()), (1, 1));
    assert!(t.law_violations(10).is_empty());
    let a = arrow();
    assert_eq!((a.object_count(), a.morphism_count()), (2, 3));
}

#[test]
fn non_associative_table_names_triple() {
    let mut b = CategoryBuilder::new();
    let (x, y) = (b.object("x"), b.object("y"));
    let e = b.morphism("e", x, x);
    let e2 = b.morphism("e2", x, x);
    let f = b.morphism("f", x, y);
    // (e o e) o e = e but e o (e o e) = e2.
    b.compose(e, e, e2).compose(e, e2, e2).compose(e2, e, e).compose(e2, e2, e2);
    b.compose(f, e, f).compose(f, e2, f);
    let err = b.build().unwrap_err();
    assert!(matches!(err, CategoryError::NonAssociative { .. }), "{err}");
}

#[test]
fn missing_identity_and_dangling_reported() {
    let raw = r#"{"objects":["x"],"morphisms":[{"id":"i","dom":"x","cod":"x"}],"identities":{},"compose":[]}"#;
    let err = parse_category(raw).unwrap_err().to_string();
    assert!(err.contains("no identity"), "{err}");
    let raw = r#"{"objects":["x"],"morphisms":[{"id":"i","dom":"x","cod":"x"},{"id":"f","dom":"x","cod":"z"}],"identities":{"x":"i"}}"#;
    let err = parse_category(raw).unwrap_err().to_string();
    assert!(err.contains("dangling"), "{err}");
}

#[test]
fn json_round_trip() {
    let c = indiscrete2();
    let text = serde_json::to_string(&CategoryJson::from_category(&c)).unwrap();
    let back = parse_category(&text).unwrap();
    assert!(back.same_as(&c));
    assert_eq!(back.composition_triples(), c.composition_triples());
}

#[test]
fn integer_labels_accepted() {
    let raw = r#"{"objects":[0,1],"morphisms":[{"id":0,"dom":0,"cod":0},{"id":1,"dom":1,"cod":1},{"id":2,"dom":0,"cod":1}],"identities":{"0":0,"1":1}}"#;
    let c = parse_category(raw).unwrap();
    assert_eq!(c.morphism_count(), 3);
}

#[test]
fn isomorphisms_match_two_sided_search() {
    assert_eq!(arrow().isomorphisms(), vec![0, 1]);
    assert_eq!(indiscrete2().isomorphisms(), vec![0, 1, 2, 3]);
    assert_eq!(terminal().isomorphisms(), vec![0]);
}

fn brute_tw_hom(c: &FinCategory, f: MorId, g: MorId) -> usize {
    let mut n = 0;
    for u in c.morphisms() {
        for v in c.morphisms() {
            let composite = c.compose(g, u).and_then(|gu| c.compose(v, gu));
            if composite == Some(f) {
                n += 1;
            }
        }
    }
    n
}

#[test]
fn twisted_arrow_examples() {
    let t = twisted_arrow(&terminal());
    assert_eq!((t.category.object_count(), t.category.morphism_count()), (1, 1));

    let a = arrow();
    let tw = twisted_arrow(&a);
    let c = &tw.category;
    assert_eq!(c.object_count(), 3);
    let f = a.morphism_by_label("f").unwrap();
    let non_id: Vec<_> = c.morphisms().filter(|&m| !c.is_identity(m)).map(|m| (c.dom(m), c.cod(m))).collect();
    assert_eq!(non_id, vec![(f, 0), (f, 1)]);

    let i2 = indiscrete2();
    let tw = twisted_arrow(&i2);
    assert_eq!(tw.category.object_count(), 4);
    for x in tw.category.objects() {
        for y in tw.category.objects() {
            assert_eq!(tw.category.hom(x, y).len(), 1);
        }
    }
    for base in [a, i2] {
        let tw = twisted_arrow(&base);
        assert!(tw.category.law_violations(1).is_empty());
        for f in base.morphisms() {
            for g in base.morphisms() {
                assert_eq!(tw.category.hom(f, g).len(), brute_tw_hom(&base, f, g));
            }
        }
    }
}

#[test]
fn twisted_arrow_is_functorial() {
    let a = indiscrete2();
    // Swap automorphism of the indiscrete category.
    let swap = Functor::new(a.clone(), a.clone(), vec![1, 0], vec![1, 0, 3, 2]);
    assert!(swap.check().is_empty());
    let tw = twisted_arrow(&a);
    let id = Functor::identity(a.clone());
    assert!(twisted_arrow_map(&id, &tw, &tw).equals(&Functor::identity(tw.category.clone())));
    let twice = twisted_arrow_map(&swap.then(&swap), &tw, &tw);
    let composed = twisted_arrow_map(&swap, &tw, &tw).then(&twisted_arrow_map(&swap, &tw, &tw));
    assert!(twice.equals(&composed));
}

#[test]
fn functor_and_transformation_checks() {
    let a = arrow();
    assert!(Functor::identity(a.clone()).check().is_empty());
    assert!(NatTransformation::identity(Functor::identity(a.clone())).check().is_empty());
    let broken = Functor::new(a.clone(), a.clone(), vec![1, 0], vec![0, 1, 2]);
    let v = broken.check();
    assert!(v.iter().any(|v| v.kind == "endpoints" && v.detail.contains('f')), "{v:?}");
}

#[test]
fn derived_categories_are_lawful() {
    let i2 = indiscrete2();
    let a = arrow();
    let p = Product::new(vec![a.clone(), i2.clone()]);
    assert_eq!(p.category.morphism_count(), 12);
    assert!(p.category.law_violations(1).is_empty());
    assert!(p.projection(0).check().is_empty());
    assert!(opposite(&a).law_violations(1).is_empty());
    let s = slice(&a, 1);
    assert_eq!(s.category.object_count(), 2);
    assert!(s.category.law_violations(1).is_empty());
    assert!(s.forget.check().is_empty());
    let ar = arrow_category(&i2, |_| true);
    assert_eq!(ar.category.object_count(), 4);
    assert!(ar.category.law_violations(1).is_empty());
    let empty = Product::new(vec![]);
    assert_eq!(empty.category.morphism_count(), 1);
}

#[test]
fn comma_probe_examples() {
    let ok = ProbeResult { component_count: 1, h1_rank: 0, h1_torsion: vec![] };
    assert_eq!(comma_probe(&terminal(), 0), ok);
    assert_eq!(comma_probe(&arrow(), 1), ok);
    assert_eq!(comma_probe(&indiscrete2(), 0), ok);
    assert_eq!(comma_probe(&indiscrete2(), 1), ok);
    let comma = comma_category(&arrow(), 1);
    assert!(comma.category.law_violations(1).is_empty());
}

#[test]
fn dot_export_counts() {
    let tw = twisted_arrow(&arrow());
    let dot = to_dot(&tw.category, None);
    assert_eq!(dot.matches(" -> ").count(), 2);
    let weq: Vec<bool> = (0..tw.category.morphism_count()).map(|_| true).collect();
    assert!(to_dot(&tw.category, Some(&weq)).contains("bold"));
}
