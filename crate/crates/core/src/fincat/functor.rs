use std::sync::Arc;

use serde::Serialize;

use super::category::{FinCategory, MorId, ObjId};

/// One violated law found while checking a functor or transformation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: &'static str,
    pub detail: String,
}

impl Violation {
    pub fn new(kind: &'static str, detail: impl Into<String>) -> Self {
        Violation { kind, detail: detail.into() }
    }
}

/// A functor between finite categories given by its object and morphism maps.
#[derive(Clone, Debug)]
pub struct Functor {
    pub source: Arc<FinCategory>,
    pub target: Arc<FinCategory>,
    pub object_map: Vec<ObjId>,
    pub morphism_map: Vec<MorId>,
}

pub(crate) fn same_category(a: &Arc<FinCategory>, b: &Arc<FinCategory>) -> bool {
    Arc::ptr_eq(a, b) || a.same_as(b)
}

impl Functor {
    pub fn new(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        object_map: Vec<ObjId>,
        morphism_map: Vec<MorId>,
    ) -> Self {
        Functor { source, target, object_map, morphism_map }
    }

    /// Builds a functor by evaluating `on_mor` on every morphism; objects
    /// are read off from identities.
    pub fn from_fn(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        mut on_mor: impl FnMut(MorId) -> MorId,
    ) -> Self {
        let morphism_map: Vec<MorId> = source.morphisms().map(&mut on_mor).collect();
        let object_map = source
            .objects()
            .map(|o| target.dom(morphism_map[source.identity(o)]))
            .collect();
        Functor { source, target, object_map, morphism_map }
    }

    pub fn identity(c: Arc<FinCategory>) -> Self {
        Functor {
            object_map: c.objects().collect(),
            morphism_map: c.morphisms().collect(),
            source: c.clone(),
            target: c,
        }
    }

    pub fn obj(&self, o: ObjId) -> ObjId {
        self.object_map[o]
    }

    pub fn mor(&self, f: MorId) -> MorId {
        self.morphism_map[f]
    }

    /// `other o self`.
    pub fn then(&self, other: &Functor) -> Functor {
        assert!(
            same_category(&self.target, &other.source),
            "functor composition across mismatched categories"
        );
        Functor {
            source: self.source.clone(),
            target: other.target.clone(),
            object_map: self.object_map.iter().map(|&o| other.obj(o)).collect(),
            morphism_map: self.morphism_map.iter().map(|&f| other.mor(f)).collect(),
        }
    }

    /// Exhaustive check of the functor laws.
    pub fn check(&self) -> Vec<Violation> {
        let (s, t) = (&*self.source, &*self.target);
        let mut out = Vec::new();
        if self.object_map.len() != s.object_count() || self.morphism_map.len() != s.morphism_count() {
            out.push(Violation::new("shape", "object or morphism map has the wrong length"));
            return out;
        }
        if let Some(&o) = self.object_map.iter().find(|&&o| o >= t.object_count()) {
            out.push(Violation::new("dangling", format!("object image {o} out of range")));
            return out;
        }
        if let Some(&f) = self.morphism_map.iter().find(|&&f| f >= t.morphism_count()) {
            out.push(Violation::new("dangling", format!("morphism image {f} out of range")));
            return out;
        }
        for f in s.morphisms() {
            let ff = self.mor(f);
            if t.dom(ff) != self.obj(s.dom(f)) || t.cod(ff) != self.obj(s.cod(f)) {
                out.push(Violation::new(
                    "endpoints",
                    format!("morphism {} maps to {} with wrong dom/cod", s.morphism_label(f), t.morphism_label(ff)),
                ));
            }
        }
        for o in s.objects() {
            if self.mor(s.identity(o)) != t.identity(self.obj(o)) {
                out.push(Violation::new(
                    "identity",
                    format!("identity of {} not preserved", s.object_label(o)),
                ));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for (g, f) in s.composable_pairs() {
            let gf = s.compose(g, f).expect("composable");
            if t.compose(self.mor(g), self.mor(f)) != Some(self.mor(gf)) {
                out.push(Violation::new(
                    "composition",
                    format!("F({} o {}) != F({}) o F({})", s.morphism_label(g), s.morphism_label(f), s.morphism_label(g), s.morphism_label(f)),
                ));
            }
        }
        out
    }

    pub fn equals(&self, other: &Functor) -> bool {
        same_category(&self.source, &other.source)
            && same_category(&self.target, &other.target)
            && self.object_map == other.object_map
            && self.morphism_map == other.morphism_map
    }
}

/// A natural transformation `source => target` between parallel functors.
#[derive(Clone, Debug)]
pub struct NatTransformation {
    pub source: Functor,
    pub target: Functor,
    pub components: Vec<MorId>,
}

impl NatTransformation {
    pub fn new(source: Functor, target: Functor, components: Vec<MorId>) -> Self {
        NatTransformation { source, target, components }
    }

    pub fn identity(f: Functor) -> Self {
        let components = f.source.objects().map(|o| f.target.identity(f.obj(o))).collect();
        NatTransformation { source: f.clone(), target: f, components }
    }

    pub fn component(&self, o: ObjId) -> MorId {
        self.components[o]
    }

    /// Vertical composite `other . self`.
    pub fn then(&self, other: &NatTransformation) -> NatTransformation {
        let t = &self.source.target;
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(&a, &b)| t.compose(b, a).expect("vertical composite"))
            .collect();
        NatTransformation {
            source: self.source.clone(),
            target: other.target.clone(),
            components,
        }
    }

    /// Whiskering `post . self . pre`.
    pub fn whisker(&self, pre: &Functor, post: &Functor) -> NatTransformation {
        let components = pre
            .object_map
            .iter()
            .map(|&o| post.mor(self.component(o)))
            .collect();
        NatTransformation {
            source: pre.then(&self.source).then(post),
            target: pre.then(&self.target).then(post),
            components,
        }
    }

    pub fn check(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let (f, g) = (&self.source, &self.target);
        if !same_category(&f.source, &g.source) || !same_category(&f.target, &g.target) {
            out.push(Violation::new("shape", "functors are not parallel"));
            return out;
        }
        let (s, t) = (&*f.source, &*f.target);
        if self.components.len() != s.object_count() {
            out.push(Violation::new("shape", "component count differs from object count"));
            return out;
        }
        for o in s.objects() {
            let c = self.component(o);
            if c >= t.morphism_count() || t.dom(c) != f.obj(o) || t.cod(c) != g.obj(o) {
                out.push(Violation::new(
                    "component",
                    format!("component at {} is not F(c) -> G(c)", s.object_label(o)),
                ));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for m in s.morphisms() {
            let lhs = t.compose(g.mor(m), self.component(s.dom(m)));
            let rhs = t.compose(self.component(s.cod(m)), f.mor(m));
            if lhs != rhs {
                out.push(Violation::new(
                    "naturality",
                    format!("square at {} does not commute", s.morphism_label(m)),
                ));
            }
        }
        out
    }
}
