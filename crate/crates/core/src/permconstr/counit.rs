use std::sync::Arc;

use super::perm::PermBuild;
use super::tw::leg;
use super::PermConstrError;
use crate::factop::{full, preimage, FactTower, Subset};
use crate::fincat::{Functor, MorId, ObjId, Violation};
use crate::permcat::check_strict_sm_functor;
use crate::relcat::RelFunctor;

/// `Perm_N(Fact(C)) -> C`: `(f, A^1, .., A^m) |-> (x)_i A^i(n_i)`. A morphism
/// over `(u, v): g -> f` with fiber part `(h_i)` goes to
/// `(x)_j B^j(structure) o symmetry o (x)_i h_i(n_i)`.
#[derive(Clone, Debug)]
pub struct Counit {
    pub functor: RelFunctor,
}

fn object_value(tower: &FactTower, build: &PermBuild, o: ObjId) -> Option<ObjId> {
    let c = &*tower.ambient;
    let po = build.perm_object(o);
    let fiber = &build.ftw.fibers[build.total.objects[o].0];
    let values: Vec<ObjId> =
        po.xs.iter().zip(&fiber.arities).map(|(&x, &n)| tower.level(n).algebra(x).at(full(n))).collect();
    c.iterated_tensor(&values)
}

fn morphism_value(tower: &FactTower, build: &PermBuild, p: MorId) -> Result<MorId, Violation> {
    let c = &*tower.ambient;
    let base = c.base();
    let tw = build.tw();
    let (e, y, h) = build.total.morphisms[p];
    let (gd, fc) = (tw.category.dom(e), tw.category.cod(e));
    let (g, f) = (tw.object(gd), tw.object(fc));
    let (u, v) = &tw.morphisms[e];
    let missing = |what: &str| Violation::new("bound", format!("{what} undefined at {}", build.base().morphism_label(p)));
    let hs = build.ftw.fibers[fc].product.mor_parts(h);
    let ys = build.ftw.fibers[gd].product.obj_parts(y);
    let g_arities = &build.ftw.fibers[gd].arities;
    // T_i: the part of g^-1(v(i)) that lands over i, as a subset of <k_{v(i)}>.
    let mut tensored = Vec::with_capacity(f.m);
    let mut pieces: Vec<(usize, usize, Subset, ObjId)> = Vec::with_capacity(f.m);
    for i in 1..=f.m {
        let ni = f.preimage(i).len();
        let hi = tower.level(ni).components(hs[i - 1])[full(ni) as usize];
        let j = v.apply(i);
        let t = preimage(&leg(g, f, u, v, i), full(ni));
        let b = tower.level(g_arities[j - 1]).algebra(ys[j - 1]);
        tensored.push(hi);
        pieces.push((j, i, t, b.at(t)));
    }
    let first = c.iterated_tensor_mor(&tensored).ok_or_else(|| missing("tensor of fiber components"))?;
    let mut order: Vec<usize> = (0..pieces.len()).collect();
    order.sort_by_key(|&p| (pieces[p].0, pieces[p].1));
    let mut arrangement = vec![0; order.len()];
    for (rank, &p) in order.iter().enumerate() {
        arrangement[p] = rank;
    }
    let grouped: Vec<ObjId> = order.iter().map(|&p| pieces[p].3).collect();
    let sym = c
        .canonical_symmetry(&arrangement, &grouped)?
        .ok_or_else(|| missing("grouping symmetry"))?;
    let structure: Vec<MorId> = (1..=g.m)
        .map(|j| {
            let parts: Vec<Subset> = order.iter().filter(|&&p| pieces[p].0 == j).map(|&p| pieces[p].2).collect();
            tower.level(g_arities[j - 1]).algebra(ys[j - 1]).structure_map(c, &parts)
        })
        .collect::<Option<_>>()
        .ok_or_else(|| missing("structure map"))?;
    let last = c.iterated_tensor_mor(&structure).ok_or_else(|| missing("tensor of structure maps"))?;
    base.compose(last, base.compose(sym, first).ok_or_else(|| missing("composite"))?)
        .ok_or_else(|| missing("composite"))
}

/// Builds the counit; `build` must be `Perm` of the tower's functor.
pub fn counit_functor(tower: &FactTower, build: &PermBuild) -> Result<Counit, PermConstrError> {
    let c = &tower.ambient;
    let pb = build.base();
    let object_map = pb
        .objects()
        .map(|o| object_value(tower, build, o).ok_or_else(|| Violation::new("bound", format!("tensor undefined at {}", pb.object_label(o)))))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|v| PermConstrError::Violations(vec![v]))?;
    let morphism_map = pb
        .morphisms()
        .map(|p| morphism_value(tower, build, p))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|v| PermConstrError::Violations(vec![v]))?;
    let functor = Functor::new(pb.clone(), c.base().clone(), object_map, morphism_map);
    Ok(Counit { functor: RelFunctor::new(build.perm.rel.clone(), c.rel.clone(), functor) })
}

impl Counit {
    /// Functor laws, weak equivalences, strict symmetric monoidality and
    /// the triangle with evaluation at `{1}`.
    pub fn check(&self, tower: &FactTower, build: &PermBuild) -> Vec<Violation> {
        let mut out = check_strict_sm_functor(&self.functor, &build.perm, &tower.ambient);
        out.extend(self.triangle(tower, build));
        out
    }

    /// `Fact_1(C) -> Perm(Fact(C)) -> C` against `A |-> A({1})`.
    pub fn triangle(&self, tower: &FactTower, build: &PermBuild) -> Vec<Violation> {
        let fact1 = tower.level(1);
        let composite = build.unit_inclusion().then(&self.functor);
        let eval = Functor::from_fn(fact1.category().clone(), tower.ambient.base().clone(), |m| fact1.components(m)[1]);
        let eval = RelFunctor::new(fact1.rel.clone(), tower.ambient.rel.clone(), eval);
        if Arc::ptr_eq(&composite.source, &eval.source) && composite.equals(&eval) {
            Vec::new()
        } else {
            vec![Violation::new("triangle", "counit o inclusion differs from evaluation at {1}")]
        }
    }
}

