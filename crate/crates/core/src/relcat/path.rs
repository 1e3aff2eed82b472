use std::sync::Arc;

use super::{HomotopyEquivWitness, RelCategory, RelFunctor, ZigZag};
use crate::fincat::{arrow_category, fiber_product, ArrowCategory, FiberProduct, Functor, MorId, NatTransformation, ObjId, Violation};

/// `Path(f) = X x_Y Fun^weq([1], Y)`: pairs `(x, u: f(x) -> y)` with `u` a
/// weak equivalence.
#[derive(Clone, Debug)]
pub struct PathCategory {
    pub rel: Arc<RelCategory>,
    pub f: RelFunctor,
    pub pullback: FiberProduct,
    pub arrows: ArrowCategory,
    /// `(x, u) |-> x`.
    pub to_source: RelFunctor,
    /// `(x, u) |-> cod u`.
    pub to_target: RelFunctor,
}

impl PathCategory {
    pub fn obj(&self, x: ObjId, u: MorId) -> Option<ObjId> {
        self.pullback.obj(x, self.arrows.obj(u)?)
    }

    /// The morphism `(a, b)` from the object with arrow `source_u` to the one with arrow `target_u`.
    pub fn mor(&self, source_u: MorId, a: MorId, b: MorId, target_u: MorId) -> Option<MorId> {
        self.pullback.mor(a, self.arrows.mor(source_u, self.f.mor(a), b, target_u)?)
    }

    /// `(x, u)` for an object.
    pub fn parts(&self, o: ObjId) -> (ObjId, MorId) {
        let (x, a) = self.pullback.object_pairs[o];
        (x, self.arrows.objects[a])
    }

    /// `(a, b, target arrow)` for a morphism.
    pub fn mor_parts(&self, m: MorId) -> (MorId, MorId, MorId) {
        let (a, sq) = self.pullback.morphism_pairs[m];
        let (_, b, u) = self.arrows.squares[sq];
        (a, b, u)
    }
}

pub fn path_construction(f: &RelFunctor) -> PathCategory {
    let y = &f.target;
    let arrows = arrow_category(&y.base, |u| y.weq[u]);
    let pullback = fiber_product(&f.functor, &arrows.ev0);
    let base = pullback.category.clone();
    let weq = pullback
        .morphism_pairs
        .iter()
        .map(|&(a, sq)| f.source.weq[a] && y.weq[arrows.squares[sq].1])
        .collect();
    let rel = Arc::new(RelCategory::trusted(base, weq));
    let to_source = RelFunctor::new(rel.clone(), f.source.clone(), pullback.left.clone());
    let to_target = RelFunctor::new(rel.clone(), y.clone(), pullback.right.then(&arrows.ev1));
    PathCategory { rel, f: f.clone(), pullback, arrows, to_source, to_target }
}

/// The adjunction `l -| r` between `X` and `Path(f)` with `l(x) = (x, id)`.
#[derive(Clone, Debug)]
pub struct PathAdjunction {
    pub path: PathCategory,
    pub left: RelFunctor,
    pub counit: NatTransformation,
    pub witness: HomotopyEquivWitness,
}

impl PathAdjunction {
    /// Checks `r l = id`, both triangle identities and weq components.
    pub fn check(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let r = &self.path.to_source;
        let x = &self.path.f.source;
        out.extend(self.left.check());
        out.extend(self.path.rel.violations().into_iter().map(|e| Violation::new("marking", e.to_string())));
        if !self.left.then(r).equals(&RelFunctor::identity(x.clone())) {
            out.push(Violation::new("retraction", "r o l differs from the identity"));
        }
        out.extend(self.counit.check());
        let p = &self.path.rel;
        for o in p.base.objects() {
            if !p.weq[self.counit.component(o)] {
                out.push(Violation::new("weq", format!("counit at {} is not a weak equivalence", p.base.object_label(o))));
            }
            // r(counit) o (unit at r) = id_r, with the unit an identity.
            if r.mor(self.counit.component(o)) != x.base.identity(r.obj(o)) {
                out.push(Violation::new("triangle", format!("r(counit) at {} is not an identity", p.base.object_label(o))));
            }
        }
        for o in x.base.objects() {
            let lo = self.left.obj(o);
            if self.counit.component(lo) != p.base.identity(lo) {
                out.push(Violation::new("triangle", format!("counit at l({}) is not an identity", x.base.object_label(o))));
            }
        }
        out.extend(self.witness.verify());
        out
    }
}

pub fn path_adjunction_witness(f: &RelFunctor) -> PathAdjunction {
    let path = path_construction(f);
    let x = f.source.clone();
    let yb = &f.target.base;
    let left_functor = Functor::from_fn(x.base.clone(), path.rel.base.clone(), |a| {
        let source_u = yb.identity(f.obj(x.base.dom(a)));
        let target_u = yb.identity(f.obj(x.base.cod(a)));
        path.mor(source_u, a, f.mor(a), target_u).expect("l(a) is a commuting square")
    });
    let left = RelFunctor::new(x.clone(), path.rel.clone(), left_functor);
    let r = path.to_source.clone();
    let lr = r.then(&left);
    let id = RelFunctor::identity(path.rel.clone());
    let components = path
        .rel
        .base
        .objects()
        .map(|o| {
            let (xo, u) = path.parts(o);
            path.mor(yb.identity(f.obj(xo)), x.base.identity(xo), u, u).expect("counit square")
        })
        .collect();
    let counit = NatTransformation::new(lr.functor.clone(), id.functor.clone(), components);
    let witness = HomotopyEquivWitness {
        f: r.clone(),
        g: left.clone(),
        zz_gf: ZigZag::forward(lr, id, counit.clone()),
        zz_fg: ZigZag::empty(left.then(&r)),
    };
    PathAdjunction { path, left, counit, witness }
}
