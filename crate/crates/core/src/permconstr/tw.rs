use std::collections::HashMap;
use std::sync::Arc;

use super::segal::TruncatedSegalFunctor;
use super::PermConstrError;
use crate::fincat::{FinCategory, Functor, MorId, ObjId, Product, Violation};
use crate::finstar::{active_maps, rho, PointedMap};
use crate::relcat::{RelCategory, RelFunctor};

/// `Tw(Fin_*^act)` on the active maps `<n> -> <m>` with `n <= n_max` and
/// `m <= m_max`. A morphism `f -> g` is a pair `(u, v)` with
/// `f = v o g o u`; `(u', v') o (u, v) = (u' o u, v o v')`.
#[derive(Clone, Debug)]
pub struct TwTruncation {
    pub n_max: usize,
    pub m_max: usize,
    pub objects: Vec<PointedMap>,
    /// `(u, v)` per morphism.
    pub morphisms: Vec<(PointedMap, PointedMap)>,
    pub category: Arc<FinCategory>,
    object_index: HashMap<PointedMap, ObjId>,
    morphism_index: Arc<HashMap<(ObjId, PointedMap, PointedMap), MorId>>,
}

impl TwTruncation {
    pub fn new(n_max: usize, m_max: usize) -> Self {
        let mut objects = Vec::new();
        for n in 0..=n_max {
            for m in 0..=m_max {
                objects.extend(active_maps(n, m));
            }
        }
        let object_index: HashMap<PointedMap, ObjId> = objects.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        let mut morphisms = Vec::new();
        let mut endpoints = Vec::new();
        let mut index = HashMap::new();
        for (a, f) in objects.iter().enumerate() {
            for (b, g) in objects.iter().enumerate() {
                let us = active_maps(f.n, g.n);
                let vs = active_maps(g.m, f.m);
                for u in &us {
                    let gu = g.after(u);
                    for v in &vs {
                        if v.after(&gu) == *f {
                            index.insert((b, u.clone(), v.clone()), morphisms.len());
                            morphisms.push((u.clone(), v.clone()));
                            endpoints.push((a, b));
                        }
                    }
                }
            }
        }
        let identities = objects
            .iter()
            .enumerate()
            .map(|(a, f)| index[&(a, PointedMap::identity(f.n), PointedMap::identity(f.m))])
            .collect();
        let object_labels = objects.iter().map(|f| format!("[{f}]")).collect();
        let morphism_labels = morphisms
            .iter()
            .zip(&endpoints)
            .map(|((u, v), &(a, b))| format!("([{u}],[{v}]):{a}->{b}"))
            .collect();
        let morphism_index = Arc::new(index);
        let (ms, ends, idx) = (morphisms.clone(), endpoints.clone(), morphism_index.clone());
        let rule = Arc::new(move |second: MorId, first: MorId| {
            let (u, v) = &ms[first];
            let (u2, v2) = &ms[second];
            if ends[first].1 != ends[second].0 {
                return None;
            }
            idx.get(&(ends[second].1, u2.after(u), v.after(v2))).copied()
        });
        let category = Arc::new(FinCategory::from_rule(object_labels, morphism_labels, endpoints, identities, rule));
        TwTruncation { n_max, m_max, objects, morphisms, category, object_index, morphism_index }
    }

    pub fn object(&self, o: ObjId) -> &PointedMap {
        &self.objects[o]
    }

    pub fn object_id(&self, f: &PointedMap) -> Option<ObjId> {
        self.object_index.get(f).copied()
    }

    /// The morphism `(u, v): f -> g`, if it lies in the truncation.
    pub fn morphism_id(&self, g: &PointedMap, u: &PointedMap, v: &PointedMap) -> Option<MorId> {
        let b = self.object_id(g)?;
        self.morphism_index.get(&(b, u.clone(), v.clone())).copied()
    }
}

/// `rho^{g^-1(j)} o u o incl_{f^-1(v(j))}: <n_{v(j)}> -> <k_j>` for a
/// morphism `(u, v): f -> g`.
pub fn leg(f: &PointedMap, g: &PointedMap, u: &PointedMap, v: &PointedMap, j: usize) -> PointedMap {
    let incl = PointedMap::inclusion(f.n, &f.preimage(v.apply(j)));
    rho(g.n, &g.preimage(j)).after(&u.after(&incl))
}

/// The product `prod_i F<n_i>` over an active map, keeping the arities.
#[derive(Clone, Debug)]
pub struct Fiber {
    pub arities: Vec<usize>,
    pub product: Product,
    pub rel: Arc<RelCategory>,
}

/// `F^Tw` on a `Tw` truncation: `f |-> prod_i F<n_i>` and
/// `(u, v) |-> prod_j F(m_j) o proj_{v(j)}`.
#[derive(Clone, Debug)]
pub struct FTw {
    pub tw: Arc<TwTruncation>,
    pub fibers: Vec<Fiber>,
    /// `F^Tw(phi): fiber(dom phi) -> fiber(cod phi)` per `Tw` morphism.
    pub maps: Vec<RelFunctor>,
}

pub fn f_tw(f: &TruncatedSegalFunctor, tw: Arc<TwTruncation>) -> Result<FTw, PermConstrError> {
    if tw.n_max > f.bound {
        return Err(PermConstrError::Bound { needed: tw.n_max, available: f.bound });
    }
    let fibers: Vec<Fiber> = tw
        .objects
        .iter()
        .map(|a| {
            let arities: Vec<usize> = (1..=a.m).map(|i| a.preimage(i).len()).collect();
            let factors: Vec<Arc<RelCategory>> = arities.iter().map(|&n| f.value(n).clone()).collect();
            let (product, rel) = RelCategory::product(&factors);
            Fiber { arities, product, rel }
        })
        .collect();
    let cat = &tw.category;
    let maps = cat
        .morphisms()
        .map(|p| {
            let (a, b) = (cat.dom(p), cat.cod(p));
            let (fa, gb) = (tw.object(a), tw.object(b));
            let (u, v) = &tw.morphisms[p];
            let legs: Vec<(usize, &RelFunctor)> = (1..=gb.m)
                .map(|j| (v.apply(j) - 1, f.apply(&leg(fa, gb, u, v, j))))
                .collect();
            let (src, tgt) = (&fibers[a], &fibers[b]);
            let functor = Functor::from_fn(src.product.category.clone(), tgt.product.category.clone(), |m| {
                let parts = src.product.mor_parts(m);
                let image: Vec<MorId> = legs.iter().map(|(i, fm)| fm.mor(parts[*i])).collect();
                tgt.product.mor(&image)
            });
            RelFunctor::new(src.rel.clone(), tgt.rel.clone(), functor)
        })
        .collect();
    Ok(FTw { tw, fibers, maps })
}

impl FTw {
    /// Identity and composition laws on every composable pair of `Tw`.
    pub fn check_functoriality(&self) -> Vec<Violation> {
        let cat = &self.tw.category;
        let mut out = Vec::new();
        for o in cat.objects() {
            if !self.maps[cat.identity(o)].equals(&RelFunctor::identity(self.fibers[o].rel.clone())) {
                out.push(Violation::new("identity", format!("F^Tw(id) is not the identity at {}", cat.object_label(o))));
            }
        }
        for (g, f) in cat.composable_pairs() {
            let gf = cat.compose(g, f).expect("composable");
            if !self.maps[gf].equals(&self.maps[f].then(&self.maps[g])) {
                out.push(Violation::new(
                    "composition",
                    format!("F^Tw({} o {}) differs from the composite", cat.morphism_label(g), cat.morphism_label(f)),
                ));
            }
        }
        out
    }
}
