use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use super::algebra::{canonical_pairs, psi, FactAlgebra};
use super::{full, preimage, Subset};
use crate::fincat::{FinCategory, Functor, MorId, ObjId};
use crate::finstar::{all_maps, PointedMap};
use crate::permcat::PermRelCategory;
use crate::relcat::{RelCategory, RelFunctor};

/// The relative category `Fact_n(C)` on a finite set of algebras: all
/// compatible component families between them, with componentwise weak
/// equivalences.
#[derive(Clone, Debug)]
pub struct FactCategory {
    pub n: usize,
    pub ambient: Arc<PermRelCategory>,
    pub algebras: Vec<FactAlgebra>,
    /// `(domain, codomain, components by subset)`.
    pub families: Vec<(ObjId, ObjId, Vec<MorId>)>,
    pub rel: Arc<RelCategory>,
    algebra_index: HashMap<FactAlgebra, ObjId>,
    family_index: Arc<HashMap<(ObjId, ObjId, Vec<MorId>), MorId>>,
}

/// All compatible families `A -> B`, in lexicographic order.
fn families_between(c: &PermRelCategory, a: &FactAlgebra, b: &FactAlgebra) -> Vec<Vec<MorId>> {
    let top = full(a.n);
    let mut by_union: Vec<Vec<(Subset, Subset)>> = vec![Vec::new(); top as usize + 1];
    for (s, t) in canonical_pairs(a.n) {
        by_union[(s | t) as usize].push((s, t));
    }
    let mut out = Vec::new();
    let mut chosen: Vec<MorId> = Vec::new();
    fn go(
        c: &PermRelCategory,
        a: &FactAlgebra,
        b: &FactAlgebra,
        by_union: &[Vec<(Subset, Subset)>],
        chosen: &mut Vec<MorId>,
        out: &mut Vec<Vec<MorId>>,
    ) {
        let u = chosen.len();
        if u == by_union.len() {
            out.push(chosen.clone());
            return;
        }
        let base = c.base();
        for &m in base.hom(a.obj[u], b.obj[u]) {
            chosen.push(m);
            let ok = (u != 0 || base.compose(m, a.nullary) == Some(b.nullary))
                && by_union[u].iter().all(|&(s, t)| {
                    let lhs = base.compose(m, a.binary[&(s, t)]);
                    let rhs = c
                        .tensor_mor(chosen[s as usize], chosen[t as usize])
                        .and_then(|x| base.compose(b.binary[&(s, t)], x));
                    lhs.is_some() && lhs == rhs
                });
            if ok {
                go(c, a, b, by_union, chosen, out);
            }
            chosen.pop();
        }
    }
    go(c, a, b, &by_union, &mut chosen, &mut out);
    out
}

impl FactCategory {
    pub fn new(ambient: Arc<PermRelCategory>, n: usize, mut algebras: Vec<FactAlgebra>) -> Self {
        algebras.sort();
        algebras.dedup();
        let algebra_index: HashMap<FactAlgebra, ObjId> = algebras.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
        let mut families = Vec::new();
        for (i, a) in algebras.iter().enumerate() {
            for (j, b) in algebras.iter().enumerate() {
                for comps in families_between(&ambient, a, b) {
                    families.push((i, j, comps));
                }
            }
        }
        let family_index: Arc<HashMap<_, _>> =
            Arc::new(families.iter().cloned().enumerate().map(|(k, key)| (key, k)).collect());
        let base = ambient.base().clone();
        let identities = algebras
            .iter()
            .enumerate()
            .map(|(i, a)| family_index[&(i, i, a.obj.iter().map(|&o| base.identity(o)).collect())])
            .collect();
        let object_labels: Vec<String> = algebras.iter().map(|a| a.label(&ambient)).collect();
        let morphism_labels = families
            .iter()
            .map(|(i, j, comps)| {
                let ms: Vec<&str> = comps.iter().map(|&m| base.morphism_label(m)).collect();
                format!("{i}->{j}:({})", ms.join(","))
            })
            .collect();
        let endpoints = families.iter().map(|(i, j, _)| (*i, *j)).collect();
        let (fams, idx, b2) = (families.clone(), family_index.clone(), base.clone());
        let rule = Arc::new(move |g: MorId, f: MorId| {
            let (fd, fc, fcomps) = &fams[f];
            let (gd, gc, gcomps) = &fams[g];
            if fc != gd {
                return None;
            }
            let comps: Option<Vec<MorId>> = gcomps.iter().zip(fcomps).map(|(&y, &x)| b2.compose(y, x)).collect();
            idx.get(&(*fd, *gc, comps?)).copied()
        });
        let category = Arc::new(FinCategory::from_rule(object_labels, morphism_labels, endpoints, identities, rule));
        let weq = families.iter().map(|(_, _, comps)| comps.iter().all(|&m| ambient.rel.is_weq(m))).collect();
        let rel = Arc::new(RelCategory::trusted(category, weq));
        FactCategory { n, ambient, algebras, families, rel, algebra_index, family_index }
    }

    pub fn category(&self) -> &Arc<FinCategory> {
        &self.rel.base
    }

    pub fn algebra(&self, o: ObjId) -> &FactAlgebra {
        &self.algebras[o]
    }

    pub fn object_of(&self, a: &FactAlgebra) -> Option<ObjId> {
        self.algebra_index.get(a).copied()
    }

    pub fn morphism_of(&self, dom: ObjId, cod: ObjId, comps: Vec<MorId>) -> Option<MorId> {
        self.family_index.get(&(dom, cod, comps)).copied()
    }

    pub fn components(&self, m: MorId) -> &[MorId] {
        &self.families[m].2
    }
}

/// `Fact_n(C)` for `n <= bound` on a common sample of algebras: Psi-images of
/// all object tuples, closed under pullback along every based map.
#[derive(Clone, Debug)]
pub struct FactTower {
    pub ambient: Arc<PermRelCategory>,
    pub bound: usize,
    pub levels: Vec<FactCategory>,
}

impl FactTower {
    pub fn sample(ambient: Arc<PermRelCategory>, bound: usize) -> Self {
        let objects = ambient.base().object_count();
        let seeds = (0..=bound)
            .map(|n| {
                (0..objects.pow(n as u32))
                    .filter_map(|code| {
                        let xs: Vec<ObjId> = (0..n).map(|i| code / objects.pow(i as u32) % objects).collect();
                        psi(&ambient, &xs)
                    })
                    .collect()
            })
            .collect();
        Self::generated(ambient, seeds)
    }

    /// The closure of `seeds[n]` (algebras of arity `n`) under pullback
    /// along every based map within the bound `seeds.len() - 1`.
    pub fn generated(ambient: Arc<PermRelCategory>, seeds: Vec<Vec<FactAlgebra>>) -> Self {
        let bound = seeds.len() - 1;
        let mut sets: Vec<BTreeSet<FactAlgebra>> = vec![BTreeSet::new(); bound + 1];
        let mut work = Vec::new();
        for (set, level) in sets.iter_mut().zip(seeds) {
            for a in level {
                if set.insert(a.clone()) {
                    work.push(a);
                }
            }
        }
        let maps: Vec<Vec<Vec<PointedMap>>> = (0..=bound).map(|n| (0..=bound).map(|m| all_maps(n, m)).collect()).collect();
        while let Some(a) = work.pop() {
            for (m, fs) in maps[a.n].iter().enumerate() {
                for f in fs {
                    if let Some(b) = a.pullback(&ambient, f) {
                        if sets[m].insert(b.clone()) {
                            work.push(b);
                        }
                    }
                }
            }
        }
        Self::from_algebras(ambient, sets.into_iter().map(|s| s.into_iter().collect()).collect())
    }

    pub fn from_algebras(ambient: Arc<PermRelCategory>, levels: Vec<Vec<FactAlgebra>>) -> Self {
        let bound = levels.len() - 1;
        let levels = levels.into_iter().enumerate().map(|(n, algs)| FactCategory::new(ambient.clone(), n, algs)).collect();
        FactTower { ambient, bound, levels }
    }

    pub fn level(&self, n: usize) -> &FactCategory {
        &self.levels[n]
    }

    /// `f_*: Fact_n(C) -> Fact_m(C)`; `None` if the sample is not closed
    /// under `f`.
    pub fn pullback(&self, f: &PointedMap) -> Option<RelFunctor> {
        let (src, tgt) = (self.level(f.n), self.level(f.m));
        let object_map = src
            .algebras
            .iter()
            .map(|a| tgt.object_of(&a.pullback(&self.ambient, f)?))
            .collect::<Option<Vec<_>>>()?;
        let morphism_map = src
            .families
            .iter()
            .map(|(d, e, comps)| {
                let pulled = (0..=full(f.m)).map(|s| comps[preimage(f, s) as usize]).collect();
                tgt.morphism_of(object_map[*d], object_map[*e], pulled)
            })
            .collect::<Option<Vec<_>>>()?;
        let functor = Functor::new(src.category().clone(), tgt.category().clone(), object_map, morphism_map);
        Some(RelFunctor::new(src.rel.clone(), tgt.rel.clone(), functor))
    }

    /// Object and morphism counts per level.
    pub fn census(&self) -> BTreeMap<usize, (usize, usize)> {
        self.levels.iter().map(|l| (l.n, (l.category().object_count(), l.category().morphism_count()))).collect()
    }
}

/// Exhaustive enumeration of valid `Fact_n`-algebras; only for `n <= 2` and
/// at most three ambient objects.
pub fn enumerate_algebras(c: &PermRelCategory, n: usize) -> Vec<FactAlgebra> {
    let base = c.base();
    assert!(n <= 2 && base.object_count() <= 3, "exhaustive enumeration is bounded to n <= 2, 3 objects");
    let size = full(n) as usize + 1;
    let k = base.object_count();
    let pairs = canonical_pairs(n);
    let mut out = Vec::new();
    for code in 0..k.pow(size as u32) {
        let obj: Vec<ObjId> = (0..size).map(|i| code / k.pow(i as u32) % k).collect();
        let choices: Option<Vec<&[MorId]>> = std::iter::once(Some(base.hom(c.unit(), obj[0])))
            .chain(pairs.iter().map(|&(s, t)| {
                c.tensor_obj(obj[s as usize], obj[t as usize]).map(|d| base.hom(d, obj[(s | t) as usize]))
            }))
            .collect();
        let Some(choices) = choices else { continue };
        let mut pick = vec![0usize; choices.len()];
        if choices.iter().any(|c| c.is_empty()) {
            continue;
        }
        loop {
            let binary = pairs.iter().enumerate().map(|(i, &p)| (p, choices[i + 1][pick[i + 1]])).collect();
            let a = FactAlgebra { n, obj: obj.clone(), nullary: choices[0][pick[0]], binary };
            if a.validate(c).is_empty() {
                out.push(a);
            }
            let mut i = 0;
            while i < pick.len() {
                pick[i] += 1;
                if pick[i] < choices[i].len() {
                    break;
                }
                pick[i] = 0;
                i += 1;
            }
            if i == pick.len() {
                break;
            }
        }
    }
    out
}
