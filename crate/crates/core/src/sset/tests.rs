use std::sync::Arc;

use super::*;
use crate::fincat::{terminal, CategoryBuilder, FinCategory};

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

fn vertex(t: usize) -> EzForm {
    EzForm { epi: vec![0], dim: 0, nondeg: t }
}

/// Two vertices joined by two parallel edges.
fn circle() -> TruncatedSSet {
    TruncatedSSet::from_nondegenerate(
        2,
        vec![vec!["p".into(), "q".into()], vec!["a".into(), "b".into()]],
        vec![vec![], vec![vec![vertex(1), vertex(0)], vec![vertex(1), vertex(0)]]],
    )
    .unwrap()
}

#[test]
fn nerve_counts() {
    let t = nerve_truncate(&terminal(), 2);
    assert_eq!((t.sset.count(0), t.sset.count(1), t.sset.count(2)), (1, 1, 1));
    let a = nerve_truncate(&arrow(), 1);
    assert_eq!((a.sset.count(0), a.sset.count(1)), (2, 3));
    let i = nerve_truncate(&indiscrete2(), 2);
    assert_eq!((i.sset.count(0), i.sset.count(1), i.sset.count(2)), (2, 4, 8));
}

#[test]
fn nerve_chain_round_trip() {
    let n = nerve_truncate(&indiscrete2(), 3);
    for k in 0..=3 {
        for s in 0..n.sset.count(k) {
            let (start, chain) = n.chain(k, s);
            assert_eq!(n.simplex_of(start, &chain), s);
        }
    }
}

#[test]
fn homology_examples() {
    let ok = Homology { pi0: 1, h1_rank: 0, h1_torsion: vec![] };
    assert_eq!(homology(&nerve_truncate(&terminal(), 2).sset), ok);
    assert_eq!(homology(&nerve_truncate(&indiscrete2(), 2).sset), ok);
    assert_eq!(homology(&circle()), Homology { pi0: 1, h1_rank: 1, h1_torsion: vec![] });
}

#[test]
fn smith_normal_form_torsion() {
    assert_eq!(invariant_factors(vec![vec![2, 4], vec![6, 8]]), vec![2, 4]);
    assert_eq!(invariant_factors(vec![vec![2, 0], vec![0, 3]]), vec![1, 6]);
    assert_eq!(invariant_factors(vec![vec![0, 0]]), Vec::<u64>::new());
}

#[test]
fn homology_survives_relabelling() {
    let n = nerve_truncate(&indiscrete2(), 2).sset;
    let perms: Vec<Vec<usize>> = (0..=2)
        .map(|k| (0..n.nondegenerate_count(k)).rev().collect())
        .collect();
    assert_eq!(homology(&n.relabel(&perms).unwrap()), homology(&n));
}

#[test]
fn category_of_simplices_examples() {
    let point = nerve_truncate(&terminal(), 1).sset;
    assert_eq!(category_of_simplices(&point, 1).objects.len(), 2);
    let x = nerve_truncate(&arrow(), 1).sset;
    let sc = category_of_simplices(&x, 1);
    assert_eq!(sc.objects.len(), 5);
    assert!(sc.category.law_violations(1).is_empty());
    // hom((0, v), (1, f)) is the single map hitting v's position in f.
    let f = x.nondegenerate(1, 0);
    let fpos = sc.objects.iter().position(|&o| o == (1, f)).unwrap();
    for v in 0..2 {
        let vpos = sc.objects.iter().position(|&o| o == (0, v)).unwrap();
        let hom = sc.category.hom(vpos, fpos);
        assert_eq!(hom.len(), 1);
        assert_eq!(sc.morphisms[hom[0]].0, vec![v]);
    }
}

#[test]
fn epsilon_is_simplicial() {
    for c in [terminal(), arrow(), indiscrete2()] {
        let x = nerve_truncate(&c, 3).sset;
        let eps = epsilon(&x, 1, 3);
        assert_eq!(eps.simplicial_violation(&x), None);
    }
}

#[test]
fn epsilon_low_dimensions() {
    let x = nerve_truncate(&arrow(), 2).sset;
    let eps = epsilon(&x, 1, 2);
    for (o, &(k, s)) in eps.simplices.objects.iter().enumerate() {
        let v = eps.map[0][eps.nerve.simplex_of(o, &[])];
        assert_eq!(v, x.vertex(k, s, k));
        let id = eps.simplices.category.identity(o);
        let e = eps.map[1][eps.nerve.simplex_of(o, &[id])];
        assert_eq!(e, x.degeneracy(0, v, 0));
    }
}

#[test]
fn marking_examples() {
    let x = nerve_truncate(&arrow(), 2).sset;
    let eps = epsilon(&x, 1, 2);
    let f = x.nondegenerate(1, 0);
    let none = eps.marking(&x, &[]);
    let with_f = eps.marking(&x, &[f]);
    let all: Vec<usize> = (0..x.count(1)).collect();
    let every = eps.marking(&x, &all);
    for m in 0..none.len() {
        assert!(!none[m] || with_f[m]);
        assert!(!with_f[m] || every[m]);
    }
    let sc = &eps.simplices;
    let fpos = sc.objects.iter().position(|&o| o == (1, f)).unwrap();
    let incl = sc.morphisms.iter().position(|(a, t)| *a == [0] && *t == fpos).unwrap();
    assert!(!none[incl] && with_f[incl]);
    for o in sc.category.objects() {
        assert!(none[sc.category.identity(o)]);
    }
}
