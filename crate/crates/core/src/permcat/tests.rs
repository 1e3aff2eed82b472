use std::collections::HashMap;
use std::sync::Arc;

use super::*;
use crate::fincat::Functor;
use crate::fixtures::{max_chain, parity, perm_fixtures};
use crate::relcat::{RelCategory, RelFunctor};

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

fn words(objects: usize, k: usize) -> Vec<Vec<ObjId>> {
    (0..k).fold(vec![vec![]], |acc, _| {
        acc.into_iter().flat_map(|w| (0..objects).map(move |o| [w.clone(), vec![o]].concat())).collect()
    })
}

#[test]
fn fixtures_satisfy_all_laws() {
    for fx in perm_fixtures() {
        assert!(fx.perm.validate_permutative(&LawBounds::default()).is_empty(), "{}", fx.name);
    }
}

#[test]
fn iterated_tensor_examples() {
    let p = max_chain(1, &[]);
    assert_eq!(p.iterated_tensor(&[]), Some(p.unit()));
    assert_eq!(p.iterated_tensor(&[1]), Some(1));
    assert_eq!(p.iterated_tensor(&[0, 1, 0]), Some(1));
}

#[test]
fn iterated_tensor_splits_over_concatenation() {
    for fx in perm_fixtures() {
        let p = &fx.perm;
        let n = p.base().object_count();
        for w in words(n, 4) {
            for cut in 0..=w.len() {
                let (s, t) = w.split_at(cut);
                let joined = p.tensor_obj(p.iterated_tensor(s).unwrap(), p.iterated_tensor(t).unwrap());
                assert_eq!(p.iterated_tensor(&w), joined, "{}", fx.name);
            }
        }
    }
}

#[test]
fn symmetry_small_cases() {
    let p = parity();
    assert_eq!(p.symmetry(&[0, 1, 2], &[1, 1, 0]), Some(p.base().identity(0)));
    assert_eq!(p.symmetry(&[1, 0], &[1, 1]), p.braid(1, 1));
    // The two reduced words for the reversal of three odd objects.
    let xs = [1, 1, 1];
    let a = p.symmetry_along(&xs, &[2, 1, 0], &[0, 1, 0]);
    let b = p.symmetry_along(&xs, &[2, 1, 0], &[1, 0, 1]);
    assert!(a.is_some());
    assert_eq!(a, b);
    // A 3-cycle along two different words.
    let a = p.symmetry_along(&xs, &[1, 2, 0], &[1, 0]);
    let b = p.symmetry_along(&xs, &[1, 2, 0], &[1, 0, 1, 0, 1, 0, 1, 0]);
    assert_eq!(a, b);
    assert_eq!(Ok(a), p.canonical_symmetry(&[1, 2, 0], &xs));
}

#[test]
fn symmetry_is_a_homomorphism() {
    for fx in perm_fixtures() {
        let p = &fx.perm;
        let n = p.base().object_count();
        for k in 0..=4 {
            let perms = permutations(k);
            for xs in words(n, k).into_iter().take(16) {
                for a in &perms {
                    let ys: Vec<ObjId> = a.iter().map(|&i| xs[i]).collect();
                    let sa = p.symmetry(a, &xs).unwrap();
                    for b in &perms {
                        let ab: Vec<usize> = b.iter().map(|&q| a[q]).collect();
                        let composite = p.base().compose(sa, p.symmetry(b, &ys).unwrap());
                        assert_eq!(composite, p.symmetry(&ab, &xs), "{} {a:?} {b:?}", fx.name);
                        assert!(p.rel.is_weq(sa));
                    }
                }
            }
        }
    }
}

fn bad_braid() -> Arc<TableTensor> {
    let p = parity();
    let c = p.base().clone();
    let odd = 1;
    let mut t = TableTensor::tabulate(
        &c,
        0,
        |a, b| p.tensor_obj(a, b).unwrap(),
        |f, g| p.tensor_mor(f, g).unwrap(),
        |a, b| p.braid(a, b).unwrap(),
    );
    t.braids.insert((odd, odd), c.morphism_by_label("t1").unwrap());
    Arc::new(t)
}

#[test]
fn broken_braid_is_reported() {
    let p = parity();
    let v = PermRelCategory::trusted(p.rel.clone(), bad_braid()).validate_permutative(&LawBounds::default());
    assert!(v.iter().any(|v| v.kind == "braid"));
}

/// Objects `0` (unit), `1`, `2`, `3` and a sink `4` with automorphism group
/// `S3`; every nontrivial tensor lands in `4`. Braids are chosen so that two
/// reduced words for the same permutation give different composites.
struct Incoherent {
    s3: Vec<[usize; 3]>,
    ids: Vec<MorId>,
    braids: HashMap<(ObjId, ObjId), [usize; 3]>,
}

impl Incoherent {
    fn new() -> (Arc<FinCategory>, Self) {
        let s3: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let mut b = crate::fincat::CategoryBuilder::new();
        let objs: Vec<ObjId> = (0..5).map(|i| b.object(i.to_string())).collect();
        let mut ids = vec![b.identity(objs[4])];
        for (i, p) in s3.iter().enumerate().skip(1) {
            ids.push(b.morphism(format!("{p:?}#{i}"), objs[4], objs[4]));
        }
        for (x, p) in s3.iter().enumerate() {
            for (y, q) in s3.iter().enumerate() {
                let pq = [p[q[0]], p[q[1]], p[q[2]]];
                let z = s3.iter().position(|r| *r == pq).unwrap();
                b.compose(ids[x], ids[y], ids[z]);
            }
        }
        let c = Arc::new(b.build().unwrap());
        let mut braids = HashMap::new();
        braids.insert((1, 2), s3[1]);
        braids.insert((2, 1), s3[1]);
        braids.insert((1, 3), s3[4]);
        braids.insert((3, 1), s3[5]);
        (c, Incoherent { s3, ids, braids })
    }

    fn element(&self, p: [usize; 3]) -> MorId {
        self.ids[self.s3.iter().position(|r| *r == p).unwrap()]
    }
}

impl TensorStructure for Incoherent {
    fn unit(&self) -> ObjId {
        0
    }
    fn tensor_obj(&self, a: ObjId, b: ObjId) -> Option<ObjId> {
        Some(if a == 0 { b } else if b == 0 { a } else { 4 })
    }
    fn tensor_mor(&self, f: MorId, g: MorId) -> Option<MorId> {
        // Identities are morphisms 0..=4 in object order; S3 acts on 4 only.
        match (f < 4, g < 4) {
            (true, true) => Some(if f == 0 { g } else if g == 0 { f } else { self.ids[0] }),
            (true, false) => Some(g),
            (false, true) => Some(f),
            (false, false) => None,
        }
    }
    fn braid(&self, a: ObjId, b: ObjId) -> Option<MorId> {
        if a == 0 || b == 0 {
            return Some(self.tensor_obj(a, b).unwrap());
        }
        Some(self.element(self.braids.get(&(a, b)).copied().unwrap_or([0, 1, 2])))
    }
}

#[test]
fn decomposition_dependence_is_detected() {
    let (c, t) = Incoherent::new();
    let q = PermRelCategory::trusted(Arc::new(RelCategory::maximal(c)), Arc::new(t));
    let err = q.canonical_symmetry(&[2, 1, 0], &[1, 2, 3]).unwrap_err();
    assert_eq!(err.kind, "coherence");
    assert!(!q.validate_permutative(&LawBounds::default()).is_empty());
}

#[test]
fn strict_functor_checks() {
    for fx in perm_fixtures() {
        let id = RelFunctor::identity(fx.perm.rel.clone());
        assert!(check_strict_sm_functor(&id, &fx.perm, &fx.perm).is_empty(), "{}", fx.name);
    }
    // X |-> X (x) 1 on the max poset does not preserve the unit.
    let p = max_chain(1, &["0<1"]);
    let c = p.base().clone();
    let one = c.identity(1);
    let f = Functor::from_fn(c.clone(), c.clone(), |m| p.tensor_mor(m, one).unwrap());
    let f = RelFunctor::new(p.rel.clone(), p.rel.clone(), f);
    let v = check_strict_sm_functor(&f, &p, &p);
    assert!(v.iter().any(|v| v.kind == "unit"));
}

#[test]
fn json_round_trip() {
    for fx in perm_fixtures() {
        let text = serde_json::to_string(&PermCategoryJson::from_perm(&fx.perm)).unwrap();
        let back = parse_permcat(&text).unwrap();
        assert!(back.base().same_as(fx.perm.base()));
        assert_eq!(back.rel.weq, fx.perm.rel.weq);
        for a in back.base().objects() {
            for b in back.base().objects() {
                assert_eq!(back.tensor_obj(a, b), fx.perm.tensor_obj(a, b));
                assert_eq!(back.braid(a, b), fx.perm.braid(a, b));
            }
        }
    }
}

#[test]
fn json_rejects_partial_tables() {
    let mut raw = PermCategoryJson::from_perm(&parity());
    raw.tensor_mor.pop();
    assert!(raw.build().is_err());
}
