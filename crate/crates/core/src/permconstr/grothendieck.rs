use std::collections::HashMap;
use std::sync::Arc;

use super::PermConstrError;
use crate::fincat::{FinCategory, Functor, MorId, ObjId, Violation};
use crate::relcat::{RelCategory, RelFunctor};

/// The Grothendieck construction of a contravariant functor
/// `T: index^op -> RelCat`. A morphism `(c, x) -> (d, y)` is a pair
/// `(a: c -> d, h: x -> T(a)(y))`, and `(b, k) o (a, h) = (b o a, T(a)(k) o h)`.
#[derive(Clone, Debug)]
pub struct GrothendieckTotal {
    pub index: Arc<FinCategory>,
    pub fibers: Vec<Arc<RelCategory>>,
    /// `T(a): fiber(cod a) -> fiber(dom a)` per index morphism.
    pub transition: Vec<RelFunctor>,
    pub total: Arc<RelCategory>,
    /// Membership flag per total morphism.
    pub cartesian: Vec<bool>,
    /// `(c, x)` per total object.
    pub objects: Vec<(ObjId, ObjId)>,
    /// `(a, y, h)` per total morphism.
    pub morphisms: Vec<(MorId, ObjId, MorId)>,
    object_index: HashMap<(ObjId, ObjId), ObjId>,
    morphism_index: Arc<HashMap<(MorId, ObjId, MorId), MorId>>,
}

fn transition_violations(index: &FinCategory, fibers: &[Arc<RelCategory>], transition: &[RelFunctor]) -> Vec<Violation> {
    let mut out = Vec::new();
    if transition.len() != index.morphism_count() || fibers.len() != index.object_count() {
        out.push(Violation::new("shape", "one fiber per object and one transition per morphism expected"));
        return out;
    }
    for a in index.morphisms() {
        let t = &transition[a];
        if !t.source.base.same_as(&fibers[index.cod(a)].base) || !t.target.base.same_as(&fibers[index.dom(a)].base) {
            out.push(Violation::new("endpoints", format!("T({}) has the wrong source or target", index.morphism_label(a))));
            return out;
        }
        out.extend(t.check().into_iter().map(|v| Violation::new(v.kind, format!("T({}): {}", index.morphism_label(a), v.detail))));
    }
    for o in index.objects() {
        if !transition[index.identity(o)].equals(&RelFunctor::identity(fibers[o].clone())) {
            out.push(Violation::new("identity", format!("T(id) is not the identity at {}", index.object_label(o))));
        }
    }
    for (b, a) in index.composable_pairs() {
        let ba = index.compose(b, a).expect("composable");
        if !transition[ba].equals(&transition[b].then(&transition[a])) {
            out.push(Violation::new(
                "composition",
                format!("T({} o {}) != T({}) o T({})", index.morphism_label(b), index.morphism_label(a), index.morphism_label(a), index.morphism_label(b)),
            ));
        }
    }
    out
}

/// Builds the total category with its cartesian morphisms and weak
/// equivalences (a fiberwise weak equivalence followed by a cartesian
/// morphism), together with the projection to the index.
pub fn grothendieck(
    index: Arc<FinCategory>,
    fibers: Vec<Arc<RelCategory>>,
    transition: Vec<RelFunctor>,
) -> Result<(GrothendieckTotal, Functor), PermConstrError> {
    let bad = transition_violations(&index, &fibers, &transition);
    if !bad.is_empty() {
        return Err(PermConstrError::Transition(bad));
    }
    Ok(grothendieck_trusted(index, fibers, transition))
}

/// As `grothendieck`, without re-checking the transition functors.
pub(crate) fn grothendieck_trusted(
    index: Arc<FinCategory>,
    fibers: Vec<Arc<RelCategory>>,
    transition: Vec<RelFunctor>,
) -> (GrothendieckTotal, Functor) {
    let mut objects = Vec::new();
    let mut object_labels = Vec::new();
    for c in index.objects() {
        for x in fibers[c].base.objects() {
            objects.push((c, x));
            object_labels.push(format!("({}, {})", index.object_label(c), fibers[c].base.object_label(x)));
        }
    }
    let object_index: HashMap<(ObjId, ObjId), ObjId> = objects.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut morphisms = Vec::new();
    let mut endpoints = Vec::new();
    let mut morphism_labels = Vec::new();
    for a in index.morphisms() {
        let (c, d) = (index.dom(a), index.cod(a));
        let fc = &fibers[c].base;
        for y in fibers[d].base.objects() {
            let ty = transition[a].obj(y);
            for &h in fc.incoming(ty) {
                morphisms.push((a, y, h));
                endpoints.push((object_index[&(c, fc.dom(h))], object_index[&(d, y)]));
                morphism_labels.push(format!("({}, {})", index.morphism_label(a), fc.morphism_label(h)));
            }
        }
    }
    let morphism_index: Arc<HashMap<(MorId, ObjId, MorId), MorId>> =
        Arc::new(morphisms.iter().enumerate().map(|(i, &k)| (k, i)).collect());
    let identities = objects
        .iter()
        .map(|&(c, x)| morphism_index[&(index.identity(c), x, fibers[c].base.identity(x))])
        .collect();
    let (idx, ms, ix, fs, ts) = (morphism_index.clone(), morphisms.clone(), index.clone(), fibers.clone(), transition.clone());
    let rule = Arc::new(move |second: MorId, first: MorId| {
        let (a, y, h) = ms[first];
        let (b, z, k) = ms[second];
        let d = ix.cod(a);
        if ix.dom(b) != d || fs[d].base.dom(k) != y {
            return None;
        }
        let ba = ix.compose(b, a)?;
        let hk = fs[ix.dom(a)].base.compose(ts[a].mor(k), h)?;
        idx.get(&(ba, z, hk)).copied()
    });
    let base = Arc::new(FinCategory::from_rule(object_labels, morphism_labels, endpoints, identities, rule));
    let mut cartesian = Vec::with_capacity(morphisms.len());
    let mut weq = Vec::with_capacity(morphisms.len());
    for &(a, y, h) in &morphisms {
        let fc = &fibers[index.dom(a)];
        cartesian.push(fc.base.inverse(h).is_some());
        weq.push(factors_as_weq_then_cartesian(fc, transition[a].obj(y), h));
    }
    let total = Arc::new(RelCategory::trusted(base.clone(), weq));
    let projection = Functor::new(
        base,
        index.clone(),
        objects.iter().map(|&(c, _)| c).collect(),
        morphisms.iter().map(|&(a, _, _)| a).collect(),
    );
    let g = GrothendieckTotal {
        index,
        fibers,
        transition,
        total,
        cartesian,
        objects,
        morphisms,
        object_index,
        morphism_index,
    };
    (g, projection)
}

/// Whether `h: x -> ty` splits as `i o w` with `w` a weak equivalence of the
/// fiber and `i: x' -> ty` invertible, i.e. `(id, w)` followed by the
/// cartesian `(a, i)`. Every such split is tried.
fn factors_as_weq_then_cartesian(fiber: &RelCategory, ty: ObjId, h: MorId) -> bool {
    let c = &fiber.base;
    c.incoming(ty).iter().any(|&i| {
        c.inverse(i)
            .and_then(|inv| c.compose(inv, h))
            .is_some_and(|w| fiber.is_weq(w))
    })
}

impl GrothendieckTotal {
    pub fn object_of(&self, c: ObjId, x: ObjId) -> Option<ObjId> {
        self.object_index.get(&(c, x)).copied()
    }

    pub fn morphism_of(&self, a: MorId, y: ObjId, h: MorId) -> Option<MorId> {
        self.morphism_index.get(&(a, y, h)).copied()
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        &self.total.base
    }

    /// Re-derives the three structural invariants from scratch.
    pub fn check(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let t = self.base();
        for (m, &(a, y, h)) in self.morphisms.iter().enumerate() {
            let c = self.index.dom(a);
            let fc = &self.fibers[c].base;
            if fc.cod(h) != self.transition[a].obj(y)
                || t.dom(m) != self.object_index[&(c, fc.dom(h))]
                || t.cod(m) != self.object_index[&(self.index.cod(a), y)]
            {
                out.push(Violation::new("shape", format!("morphism {} has inconsistent endpoints", t.morphism_label(m))));
            }
            if self.cartesian[m] != fc.inverse(h).is_some() {
                out.push(Violation::new("cartesian", format!("{} is misclassified", t.morphism_label(m))));
            }
        }
        out.extend(t.law_violations(8).into_iter().map(|e| Violation::new("category", e.to_string())));
        out.extend(self.total.violations().into_iter().map(|e| Violation::new("weq", e.to_string())));
        out
    }
}
