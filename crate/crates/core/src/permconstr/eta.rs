use std::collections::HashMap;
use std::sync::Arc;

use super::perm::{perm_build, PermBounds, PermBuild, PermObject};
use super::segal::TruncatedSegalFunctor;
use super::PermConstrError;
use crate::factop::{canonical_pairs, elements, full, preimage, FactAlgebra, FactTower, Subset};
use crate::fincat::{Functor, MorId, NatTransformation, ObjId, Violation};
use crate::finstar::{all_maps, rho, PointedMap};
use crate::relcat::{path_adjunction_witness, PathAdjunction, RelFunctor};

/// Oplax transformation data `F => G` on a truncation: components
/// `alpha_n` and, per based map `u: <n> -> <m>`, a filler
/// `alpha_m o F(u) => G(u) o alpha_n`.
#[derive(Clone, Debug)]
pub struct OplaxTransformation {
    pub source: Arc<TruncatedSegalFunctor>,
    pub target: Arc<TruncatedSegalFunctor>,
    pub components: Vec<RelFunctor>,
    pub squares: HashMap<PointedMap, NatTransformation>,
}

impl OplaxTransformation {
    /// The identity of `F`, with identity fillers.
    pub fn identity(f: Arc<TruncatedSegalFunctor>) -> Self {
        let components: Vec<RelFunctor> = f.values.iter().map(|v| RelFunctor::identity(v.clone())).collect();
        let squares = f.action.iter().map(|(u, fu)| (u.clone(), NatTransformation::identity(fu.functor.clone()))).collect();
        OplaxTransformation { source: f.clone(), target: f, components, squares }
    }

    pub fn bound(&self) -> usize {
        self.source.bound.min(self.target.bound)
    }

    pub fn square(&self, u: &PointedMap) -> &NatTransformation {
        &self.squares[u]
    }

    /// Shapes, naturality, weak-equivalence components, identity fillers
    /// and the pasting law `sq(w o u)_X = G(w)(sq(u)_X) o sq(w)_{F(u) X}`.
    pub fn check(&self) -> Vec<Violation> {
        let (f, g) = (&self.source, &self.target);
        let b = self.bound();
        let mut out = Vec::new();
        for n in 0..=b {
            let a = &self.components[n];
            if !Arc::ptr_eq(&a.source, f.value(n)) || !Arc::ptr_eq(&a.target, g.value(n)) {
                out.push(Violation::new("endpoints", format!("component at <{n}> has the wrong source or target")));
                return out;
            }
            out.extend(a.check());
        }
        let maps: Vec<Vec<Vec<PointedMap>>> = (0..=b).map(|n| (0..=b).map(|m| all_maps(n, m)).collect()).collect();
        for n in 0..=b {
            for m in 0..=b {
                for u in &maps[n][m] {
                    let Some(sq) = self.squares.get(u) else {
                        out.push(Violation::new("missing", format!("no filler for [{u}]")));
                        continue;
                    };
                    let lower = f.apply(u).functor.then(&self.components[m].functor);
                    let upper = self.components[n].functor.then(&g.apply(u).functor);
                    if !sq.source.equals(&lower) || !sq.target.equals(&upper) {
                        out.push(Violation::new("endpoints", format!("filler for [{u}] has the wrong boundary")));
                        continue;
                    }
                    out.extend(sq.check().into_iter().map(|v| Violation::new(v.kind, format!("filler [{u}]: {}", v.detail))));
                    let gm = g.value(m);
                    if let Some(x) = sq.components.iter().position(|&c| !gm.is_weq(c)) {
                        out.push(Violation::new("weq", format!("filler [{u}] at object {x} is not a weak equivalence")));
                    }
                    if *u == PointedMap::identity(n) && sq.components.iter().any(|&c| !gm.base.is_identity(c)) {
                        out.push(Violation::new("identity", format!("filler of id<{n}> is not an identity")));
                    }
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for n in 0..=b {
            for m in 0..=b {
                for p in 0..=b {
                    for u in &maps[n][m] {
                        for w in &maps[m][p] {
                            let (su, sw, swu) = (&self.squares[u], &self.squares[w], &self.squares[&w.after(u)]);
                            let (fu, gw) = (f.apply(u), g.apply(w));
                            let gp = &g.value(p).base;
                            for x in f.value(n).base.objects() {
                                let pasted = gp.compose(gw.mor(su.component(x)), sw.component(fu.obj(x)));
                                if pasted != Some(swu.component(x)) {
                                    out.push(Violation::new(
                                        "pasting",
                                        format!("fillers for [{w}] o [{u}] do not paste at object {x}"),
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// `eta_F: F => Fact o Perm(F)` up to arity `n_max`, with the data it
/// lives on.
#[derive(Clone, Debug)]
pub struct Eta {
    pub perm: PermBuild,
    /// `Fact(Perm(F))` on the pullback closure of the `eta` images.
    pub tower: FactTower,
    pub oplax: OplaxTransformation,
}

fn fold_object(f: &TruncatedSegalFunctor, n: usize, s: Subset, x: ObjId) -> PermObject {
    let elems = elements(s);
    PermObject { u: PointedMap::fold(elems.len()), xs: vec![f.apply(&rho(n, &elems)).obj(x)] }
}

/// The rank of each element of `s` within `within`, as a map `<|s|> -> <|within|>`.
fn rank_map(s: &[usize], within: &[usize], image: impl Fn(usize) -> usize) -> PointedMap {
    let table = s.iter().map(|&e| within.iter().position(|&w| w == image(e)).expect("image lies in the target") + 1).collect();
    PointedMap { n: s.len(), m: within.len(), table }
}

/// `S |-> (<|S|> -> <1>, F rho^S (X))`, with structure maps over the
/// shuffles `<|S u T|> -> <|S|> v <|T|>` and identity fiber parts.
pub fn eta_algebra(build: &PermBuild, n: usize, x: ObjId) -> Result<FactAlgebra, PermConstrError> {
    let f = &*build.functor;
    let undefined = |what: String| PermConstrError::Violations(vec![Violation::new("bound", what)]);
    let obj = (0..=full(n))
        .map(|s| build.object_of(&fold_object(f, n, s, x)).ok_or_else(|| undefined(format!("eta({x})({s:b}) is outside the truncation"))))
        .collect::<Result<Vec<_>, _>>()?;
    let unit = PermObject { u: PointedMap::identity(0), xs: vec![] };
    let empty_to_one = PointedMap { n: 0, m: 1, table: vec![] };
    let nullary = build
        .structure_morphism(&unit, &fold_object(f, n, 0, x), &PointedMap::identity(0), &empty_to_one)
        .ok_or_else(|| undefined(format!("nullary map of eta({x})")))?;
    let mut binary = std::collections::BTreeMap::new();
    for (s, t) in canonical_pairs(n) {
        let (se, te) = (elements(s), elements(t));
        let union = elements(s | t);
        let (a, b) = (fold_object(f, n, s, x), fold_object(f, n, t, x));
        let source = PermObject { u: a.u.wedge(&b.u), xs: vec![a.xs[0], b.xs[0]] };
        let concat: Vec<usize> = se.iter().chain(&te).copied().collect();
        let shuffle = rank_map(&union, &concat, |e| e);
        let m = build
            .structure_morphism(&source, &fold_object(f, n, s | t, x), &shuffle, &PointedMap::fold(2))
            .ok_or_else(|| undefined(format!("binary map ({s:b}, {t:b}) of eta({x})")))?;
        binary.insert((s, t), m);
    }
    Ok(FactAlgebra { n, obj, nullary, binary })
}

/// Builds `eta_{F,<n>}` for `n <= n_max` together with its fillers. The
/// ambient `Perm` is truncated at `n <= n_max`, `m <= max(n_max, 3)` so that
/// ternary tensors of algebra values exist.
pub fn eta(f: &Arc<TruncatedSegalFunctor>, n_max: usize) -> Result<Eta, PermConstrError> {
    if n_max > f.bound {
        return Err(PermConstrError::Bound { needed: n_max, available: f.bound });
    }
    let build = perm_build(f, PermBounds { n: n_max, m: n_max.max(3) })?;
    let perm = build.perm.clone();
    let mut seeds = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut level = Vec::new();
        for x in f.value(n).base.objects() {
            let a = eta_algebra(&build, n, x)?;
            let mut bad = a.validate(&perm);
            if !a.is_fact_object(&perm) {
                bad.push(Violation::new("fact", format!("eta({x}) at <{n}> has non-weq structure maps")));
            }
            if !bad.is_empty() {
                return Err(PermConstrError::Violations(bad));
            }
            level.push(a);
        }
        seeds.push(level);
    }
    let tower = FactTower::generated(perm.clone(), seeds.clone());
    let target = Arc::new(TruncatedSegalFunctor::from_fact_tower(&tower));
    let missing = |what: String| PermConstrError::Violations(vec![Violation::new("family", what)]);
    let mut components = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let level = tower.level(n);
        let object_map: Vec<ObjId> = seeds[n].iter().map(|a| level.object_of(a).expect("seeds are sampled")).collect();
        let fx = &f.value(n).base;
        let rhos: Vec<(Subset, &RelFunctor)> =
            (0..=full(n)).map(|s| (s, f.apply(&rho(n, &elements(s))))).collect();
        let morphism_map = fx
            .morphisms()
            .map(|m| {
                let comps = rhos
                    .iter()
                    .map(|&(s, fr)| build.fiber_morphism(&PointedMap::fold(elements(s).len()), &[fr.mor(m)]))
                    .collect::<Option<Vec<MorId>>>()
                    .ok_or_else(|| missing(format!("eta on {}", fx.morphism_label(m))))?;
                level
                    .morphism_of(object_map[fx.dom(m)], object_map[fx.cod(m)], comps)
                    .ok_or_else(|| missing(format!("eta on {} is not a morphism of algebras", fx.morphism_label(m))))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let functor = Functor::new(fx.clone(), level.category().clone(), object_map, morphism_map);
        components.push(RelFunctor::new(f.value(n).clone(), level.rel.clone(), functor));
    }
    let mut squares = HashMap::new();
    for n in 0..=n_max {
        for m in 0..=n_max {
            for u in all_maps(n, m) {
                let fu = f.apply(&u);
                let gu = target.apply(&u);
                let level = tower.level(m);
                let comps = f
                    .value(n)
                    .base
                    .objects()
                    .map(|x| {
                        let family = (0..=full(m))
                            .map(|s| {
                                let back = preimage(&u, s);
                                let (se, be) = (elements(s), elements(back));
                                let w = rank_map(&be, &se, |e| u.apply(e));
                                build.structure_morphism(
                                    &fold_object(f, m, s, fu.obj(x)),
                                    &fold_object(f, n, back, x),
                                    &w,
                                    &PointedMap::identity(1),
                                )
                            })
                            .collect::<Option<Vec<MorId>>>()
                            .ok_or_else(|| missing(format!("filler for [{u}] at {x}")))?;
                        let dom = components[m].obj(fu.obj(x));
                        let cod = gu.obj(components[n].obj(x));
                        level.morphism_of(dom, cod, family).ok_or_else(|| missing(format!("filler for [{u}] at {x} is not a family")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let lower = fu.functor.then(&components[m].functor);
                let upper = components[n].functor.then(&gu.functor);
                squares.insert(u, NatTransformation::new(lower, upper, comps));
            }
        }
    }
    let oplax = OplaxTransformation { source: f.clone(), target, components, squares };
    Ok(Eta { perm: build, tower, oplax })
}

/// `Path(alpha)`: `n |-> Path(alpha_n)`, with
/// `f: (X, w) |-> (F(f) X, G(f)(w) o sq(f)_X)` and the projections to `F`
/// and `G`.
#[derive(Clone, Debug)]
pub struct PathFunctor {
    pub functor: Arc<TruncatedSegalFunctor>,
    pub adjunctions: Vec<PathAdjunction>,
    pub alpha: OplaxTransformation,
}

pub fn path_of_oplax(alpha: &OplaxTransformation) -> Result<PathFunctor, PermConstrError> {
    let bad = alpha.check();
    if !bad.is_empty() {
        return Err(PermConstrError::Violations(bad));
    }
    let b = alpha.bound();
    let (f, g) = (&alpha.source, &alpha.target);
    let adjunctions: Vec<PathAdjunction> = alpha.components.iter().map(path_adjunction_witness).collect();
    let mut action = HashMap::new();
    for n in 0..=b {
        for m in 0..=b {
            for u in all_maps(n, m) {
                let (pn, pm) = (&adjunctions[n].path, &adjunctions[m].path);
                let (fu, gu, sq) = (f.apply(&u), g.apply(&u), alpha.square(&u));
                let gm = &g.value(m).base;
                let moved = |o: ObjId| {
                    let (x, w) = pn.parts(o);
                    (fu.obj(x), gm.compose(gu.mor(w), sq.component(x)).expect("filler meets G(u)(w)"))
                };
                let functor = Functor::from_fn(pn.rel.base.clone(), pm.rel.base.clone(), |q| {
                    let (a, bmor, _) = pn.mor_parts(q);
                    let (_, w1) = moved(pn.rel.base.dom(q));
                    let (_, w2) = moved(pn.rel.base.cod(q));
                    pm.mor(w1, fu.mor(a), gu.mor(bmor), w2).expect("image of a path morphism")
                });
                action.insert(u, RelFunctor::new(pn.rel.clone(), pm.rel.clone(), functor));
            }
        }
    }
    let values = adjunctions.iter().map(|a| a.path.rel.clone()).collect();
    let functor = Arc::new(TruncatedSegalFunctor::new(b, values, action));
    Ok(PathFunctor { functor, adjunctions, alpha: alpha.clone() })
}

impl PathFunctor {
    pub fn to_source(&self, n: usize) -> &RelFunctor {
        &self.adjunctions[n].path.to_source
    }

    pub fn to_target(&self, n: usize) -> &RelFunctor {
        &self.adjunctions[n].path.to_target
    }

    /// Strict naturality of `(X, w) |-> X` against `F` (`which = source`) or
    /// of `(X, w) |-> cod w` against `G`.
    pub fn projection_violations(&self, to_source: bool) -> Vec<Violation> {
        let (f, g) = (&self.alpha.source, &self.alpha.target);
        let mut out = Vec::new();
        for (u, pu) in sorted(&self.functor.action) {
            let (proj_n, proj_m, other) = if to_source {
                (self.to_source(u.n), self.to_source(u.m), f.apply(u))
            } else {
                (self.to_target(u.n), self.to_target(u.m), g.apply(u))
            };
            if !pu.then(proj_m).equals(&proj_n.then(other)) {
                let name = if to_source { "alpha" } else { "beta" };
                out.push(Violation::new("naturality", format!("{name} is not natural along [{u}]")));
            }
        }
        out
    }

    /// Functoriality of `Path(alpha)` and naturality of both projections.
    pub fn check(&self) -> Vec<Violation> {
        let mut out = self.functor.check();
        out.extend(self.projection_violations(true));
        out.extend(self.projection_violations(false));
        out
    }
}

fn sorted<V>(map: &HashMap<PointedMap, V>) -> Vec<(&PointedMap, &V)> {
    let mut v: Vec<_> = map.iter().collect();
    v.sort_by(|a, b| a.0.cmp(b.0));
    v
}

/// Outcome of the three checks on `Id <= Path(eta_F) => Fact o Perm(F)`.
#[derive(Clone, Debug, Default, serde::Serialize)]
pub struct AlphaBetaReport {
    pub bound: usize,
    /// Path-adjunction witnesses on every `alpha_{F,<n>}`.
    pub witnesses: Vec<Violation>,
    /// `beta_1 o sigma_1 = eta_1`.
    pub section: Vec<Violation>,
    /// Functoriality of `Path(eta_F)`, naturality of `alpha` and `beta`.
    pub naturality: Vec<Violation>,
}

impl AlphaBetaReport {
    pub fn passed(&self) -> bool {
        self.witnesses.is_empty() && self.section.is_empty() && self.naturality.is_empty()
    }
}

pub fn alpha_beta_check(f: &Arc<TruncatedSegalFunctor>, n_max: usize) -> Result<(Eta, PathFunctor, AlphaBetaReport), PermConstrError> {
    let e = eta(f, n_max)?;
    let path = path_of_oplax(&e.oplax)?;
    let mut report = AlphaBetaReport { bound: n_max, ..Default::default() };
    for (n, adj) in path.adjunctions.iter().enumerate() {
        report.witnesses.extend(adj.check().into_iter().map(|v| Violation::new(v.kind, format!("<{n}>: {}", v.detail))));
    }
    if n_max >= 1 {
        let sigma = &path.adjunctions[1].left;
        if !sigma.then(path.to_target(1)).equals(&e.oplax.components[1]) {
            report.section.push(Violation::new("section", "beta_1 o sigma_1 differs from eta_1"));
        }
    }
    report.naturality = path.check();
    Ok((e, path, report))
}
