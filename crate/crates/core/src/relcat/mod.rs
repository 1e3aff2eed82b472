//! Relative categories, relative functors, zig-zags of natural weak
//! equivalences and homotopy-equivalence witnesses.

mod json;
mod path;

use std::sync::Arc;

use thiserror::Error;

use crate::fincat::{FinCategory, Functor, MorId, NatTransformation, Product, Violation};

pub use json::{parse_relcat, RelCategoryJson};
pub use path::{path_adjunction_witness, path_construction, PathAdjunction, PathCategory};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RelError {
    #[error("isomorphism {0} is not marked as a weak equivalence")]
    MissingIso(String),
    #[error("composite {g} o {f} of weak equivalences is not marked")]
    CompositionEscape { g: String, f: String },
    #[error("marking has {got} entries for {expected} morphisms")]
    Shape { got: usize, expected: usize },
}

/// A finite category with a wide subcategory of weak equivalences.
#[derive(Clone, Debug)]
pub struct RelCategory {
    pub base: Arc<FinCategory>,
    pub weq: Vec<bool>,
}

impl RelCategory {
    /// Validates a marking as written. With `complete`, isomorphisms and
    /// composites are added first instead of being reported.
    pub fn new(base: Arc<FinCategory>, weq: Vec<bool>, complete: bool) -> Result<Self, RelError> {
        if weq.len() != base.morphism_count() {
            return Err(RelError::Shape { got: weq.len(), expected: base.morphism_count() });
        }
        let mut rel = RelCategory { base, weq };
        if complete {
            rel.complete();
        }
        match rel.violations().into_iter().next() {
            Some(e) => Err(e),
            None => Ok(rel),
        }
    }

    /// Unchecked constructor for generated categories whose marking is
    /// correct by construction; `violations` re-checks on demand.
    pub fn trusted(base: Arc<FinCategory>, weq: Vec<bool>) -> Self {
        RelCategory { base, weq }
    }

    pub fn from_ids(base: Arc<FinCategory>, ids: &[MorId], complete: bool) -> Result<Self, RelError> {
        let mut weq = vec![false; base.morphism_count()];
        for &f in ids {
            weq[f] = true;
        }
        Self::new(base, weq, complete)
    }

    pub fn minimal(base: Arc<FinCategory>) -> Self {
        let mut weq = vec![false; base.morphism_count()];
        for f in base.isomorphisms() {
            weq[f] = true;
        }
        RelCategory { base, weq }
    }

    pub fn maximal(base: Arc<FinCategory>) -> Self {
        let weq = vec![true; base.morphism_count()];
        RelCategory { base, weq }
    }

    fn complete(&mut self) {
        for f in self.base.isomorphisms() {
            self.weq[f] = true;
        }
        loop {
            let mut changed = false;
            for (g, f) in self.base.composable_pairs().collect::<Vec<_>>() {
                if self.weq[g] && self.weq[f] {
                    let gf = self.base.compose(g, f).expect("composable");
                    if !self.weq[gf] {
                        self.weq[gf] = true;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
    }

    pub fn violations(&self) -> Vec<RelError> {
        let c = &self.base;
        let mut out: Vec<RelError> = c
            .isomorphisms()
            .into_iter()
            .filter(|&f| !self.weq[f])
            .map(|f| RelError::MissingIso(c.morphism_label(f).to_string()))
            .collect();
        for (g, f) in c.composable_pairs() {
            if self.weq[g] && self.weq[f] && !self.weq[c.compose(g, f).expect("composable")] {
                out.push(RelError::CompositionEscape {
                    g: c.morphism_label(g).to_string(),
                    f: c.morphism_label(f).to_string(),
                });
            }
        }
        out
    }

    pub fn is_weq(&self, f: MorId) -> bool {
        self.weq[f]
    }

    pub fn weq_ids(&self) -> Vec<MorId> {
        (0..self.weq.len()).filter(|&f| self.weq[f]).collect()
    }

    /// Relative product: a morphism is a weak equivalence iff every
    /// component is.
    pub fn product(factors: &[Arc<RelCategory>]) -> (Product, Arc<RelCategory>) {
        let p = Product::new(factors.iter().map(|r| r.base.clone()).collect());
        let weq = p
            .category
            .morphisms()
            .map(|m| p.mor_parts(m).iter().zip(factors).all(|(&x, r)| r.weq[x]))
            .collect();
        let rel = Arc::new(RelCategory { base: p.category.clone(), weq });
        (p, rel)
    }
}

/// A functor preserving weak equivalences.
#[derive(Clone, Debug)]
pub struct RelFunctor {
    pub source: Arc<RelCategory>,
    pub target: Arc<RelCategory>,
    pub functor: Functor,
}

impl RelFunctor {
    pub fn new(source: Arc<RelCategory>, target: Arc<RelCategory>, functor: Functor) -> Self {
        RelFunctor { source, target, functor }
    }

    pub fn identity(c: Arc<RelCategory>) -> Self {
        RelFunctor { functor: Functor::identity(c.base.clone()), source: c.clone(), target: c }
    }

    /// `other o self`.
    pub fn then(&self, other: &RelFunctor) -> RelFunctor {
        RelFunctor {
            source: self.source.clone(),
            target: other.target.clone(),
            functor: self.functor.then(&other.functor),
        }
    }

    pub fn obj(&self, o: usize) -> usize {
        self.functor.obj(o)
    }

    pub fn mor(&self, f: MorId) -> MorId {
        self.functor.mor(f)
    }

    pub fn check(&self) -> Vec<Violation> {
        let mut out = self.functor.check();
        if !out.is_empty() {
            return out;
        }
        let s = &self.source.base;
        for f in s.morphisms() {
            if self.source.weq[f] && !self.target.weq[self.mor(f)] {
                out.push(Violation::new(
                    "weq",
                    format!("weak equivalence {} maps to a non-weak-equivalence", s.morphism_label(f)),
                ));
            }
        }
        out
    }

    pub fn equals(&self, other: &RelFunctor) -> bool {
        self.functor.equals(&other.functor)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Clone, Debug)]
pub struct ZigZagStep {
    pub direction: Direction,
    pub transformation: NatTransformation,
}

/// A zig-zag of natural weak equivalences between two relative functors.
#[derive(Clone, Debug)]
pub struct ZigZag {
    pub from: RelFunctor,
    pub to: RelFunctor,
    pub steps: Vec<ZigZagStep>,
}

impl ZigZag {
    pub fn empty(f: RelFunctor) -> Self {
        ZigZag { from: f.clone(), to: f, steps: Vec::new() }
    }

    pub fn forward(from: RelFunctor, to: RelFunctor, t: NatTransformation) -> Self {
        ZigZag { from, to, steps: vec![ZigZagStep { direction: Direction::Forward, transformation: t }] }
    }

    pub fn backward(from: RelFunctor, to: RelFunctor, t: NatTransformation) -> Self {
        ZigZag { from, to, steps: vec![ZigZagStep { direction: Direction::Backward, transformation: t }] }
    }

    pub fn concat(&self, next: &ZigZag) -> ZigZag {
        let mut steps = self.steps.clone();
        steps.extend(next.steps.iter().cloned());
        ZigZag { from: self.from.clone(), to: next.to.clone(), steps }
    }

    /// `post . zz . pre`.
    pub fn whisker(&self, pre: &RelFunctor, post: &RelFunctor) -> ZigZag {
        ZigZag {
            from: pre.then(&self.from).then(post),
            to: pre.then(&self.to).then(post),
            steps: self
                .steps
                .iter()
                .map(|s| ZigZagStep {
                    direction: s.direction,
                    transformation: s.transformation.whisker(&pre.functor, &post.functor),
                })
                .collect(),
        }
    }

    pub fn check(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut here = self.from.functor.clone();
        let target = &self.from.target;
        for (i, step) in self.steps.iter().enumerate() {
            let t = &step.transformation;
            let (start, end) = match step.direction {
                Direction::Forward => (&t.source, &t.target),
                Direction::Backward => (&t.target, &t.source),
            };
            if !start.equals(&here) {
                out.push(Violation::new("endpoint", format!("step {i} does not start where step {} ended", i.saturating_sub(1))));
                return out;
            }
            for v in t.check() {
                out.push(Violation::new(v.kind, format!("step {i}: {}", v.detail)));
            }
            for (o, &c) in t.components.iter().enumerate() {
                if c < target.weq.len() && !target.weq[c] {
                    out.push(Violation::new(
                        "weq",
                        format!("step {i}: component at {} is not a weak equivalence", t.source.source.object_label(o)),
                    ));
                }
            }
            here = end.clone();
        }
        if !here.equals(&self.to.functor) {
            out.push(Violation::new("endpoint", "zig-zag does not end at its stated target"));
        }
        out
    }
}

/// A homotopy equivalence `f: C -> D` with inverse `g` and zig-zags
/// `gf ~ id_C`, `fg ~ id_D`.
#[derive(Clone, Debug)]
pub struct HomotopyEquivWitness {
    pub f: RelFunctor,
    pub g: RelFunctor,
    pub zz_gf: ZigZag,
    pub zz_fg: ZigZag,
}

impl HomotopyEquivWitness {
    pub fn identity(c: Arc<RelCategory>) -> Self {
        let id = RelFunctor::identity(c);
        HomotopyEquivWitness {
            f: id.clone(),
            g: id.clone(),
            zz_gf: ZigZag::empty(id.clone()),
            zz_fg: ZigZag::empty(id),
        }
    }

    pub fn verify(&self) -> Vec<Violation> {
        let tag = |prefix: &'static str, vs: Vec<Violation>| {
            vs.into_iter()
                .map(move |v| Violation::new(v.kind, format!("{prefix}: {}", v.detail)))
        };
        let mut out: Vec<Violation> = tag("f", self.f.check()).chain(tag("g", self.g.check())).collect();
        if !out.is_empty() {
            return out;
        }
        let gf = self.f.then(&self.g);
        let fg = self.g.then(&self.f);
        if !self.zz_gf.from.equals(&gf) || !self.zz_gf.to.equals(&RelFunctor::identity(self.f.source.clone())) {
            out.push(Violation::new("endpoint", "first zig-zag does not connect gf to the identity"));
        }
        if !self.zz_fg.from.equals(&fg) || !self.zz_fg.to.equals(&RelFunctor::identity(self.f.target.clone())) {
            out.push(Violation::new("endpoint", "second zig-zag does not connect fg to the identity"));
        }
        out.extend(tag("gf", self.zz_gf.check()));
        out.extend(tag("fg", self.zz_fg.check()));
        out
    }

    /// Composite witness for `next.f o self.f`.
    pub fn paste(&self, next: &HomotopyEquivWitness) -> HomotopyEquivWitness {
        let f = self.f.then(&next.f);
        let g = next.g.then(&self.g);
        let zz_gf = next.zz_gf.whisker(&self.f, &self.g).concat(&self.zz_gf);
        let zz_fg = self.zz_fg.whisker(&next.g, &next.f).concat(&next.zz_fg);
        HomotopyEquivWitness { f, g, zz_gf, zz_fg }
    }

    /// Swaps the roles of `f` and `g`.
    pub fn inverse(&self) -> HomotopyEquivWitness {
        HomotopyEquivWitness {
            f: self.g.clone(),
            g: self.f.clone(),
            zz_gf: self.zz_fg.clone(),
            zz_fg: self.zz_gf.clone(),
        }
    }
}

#[cfg(test)]
mod tests;
