use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use super::grothendieck::{grothendieck, GrothendieckTotal};
use super::segal::TruncatedSegalFunctor;
use super::tw::{f_tw, leg, FTw, TwTruncation};
use super::PermConstrError;
use crate::fincat::{opposite, FinCategory, Functor, MorId, ObjId};
use crate::finstar::PointedMap;
use crate::permcat::{PermRelCategory, TensorStructure};
use crate::relcat::RelFunctor;

/// Truncation of `Perm(F)`: objects over active maps `<n> -> <m>` with
/// `n <= n` and `m <= m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PermBounds {
    pub n: usize,
    pub m: usize,
}

impl PermBounds {
    pub fn square(bound: usize) -> Self {
        PermBounds { n: bound, m: bound }
    }
}

/// An object `(u: <n> -> <m>, X_1, .., X_m)` with `X_i` an object id of
/// `F<n_i>`. Text form: `u = n m : table | X_1,..,X_m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PermObject {
    pub u: PointedMap,
    pub xs: Vec<ObjId>,
}

impl fmt::Display for PermObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let xs: Vec<String> = self.xs.iter().map(|x| x.to_string()).collect();
        write!(f, "u = {} | {}", self.u, xs.join(","))
    }
}

impl FromStr for PermObject {
    type Err = PermConstrError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let syntax = || PermConstrError::Syntax(s.to_string());
        let rest = s.trim().strip_prefix('u').map(str::trim_start).and_then(|r| r.strip_prefix('=')).ok_or_else(syntax)?;
        let (map, objs) = rest.split_once('|').ok_or_else(syntax)?;
        let u: PointedMap = map.trim().parse().map_err(|_| syntax())?;
        let xs = if objs.trim().is_empty() {
            Vec::new()
        } else {
            objs.split(',').map(|t| t.trim().parse::<ObjId>().map_err(|_| syntax())).collect::<Result<_, _>>()?
        };
        let o = PermObject { u, xs };
        if !o.u.is_active() || o.xs.len() != o.u.m {
            return Err(PermConstrError::Arity(o.to_string()));
        }
        Ok(o)
    }
}

/// Tensor, unit and braiding of `Perm_N(F)`: wedge of active maps and
/// concatenation of fiber tuples, defined while the result stays in bound.
struct PermTensor {
    ftw: Arc<FTw>,
    total: Arc<GrothendieckTotal>,
    unit: ObjId,
}

impl PermTensor {
    fn concat(&self, a: ObjId, xa: ObjId, b: ObjId, xb: ObjId) -> Vec<ObjId> {
        let fs = &self.ftw.fibers;
        let mut parts = fs[a].product.obj_parts(xa);
        parts.extend(fs[b].product.obj_parts(xb));
        parts
    }
}

impl TensorStructure for PermTensor {
    fn unit(&self) -> ObjId {
        self.unit
    }

    fn tensor_obj(&self, p: ObjId, q: ObjId) -> Option<ObjId> {
        let tw = &self.ftw.tw;
        let ((a, xa), (b, xb)) = (self.total.objects[p], self.total.objects[q]);
        let w = tw.object_id(&tw.object(a).wedge(tw.object(b)))?;
        let x = self.ftw.fibers[w].product.obj(&self.concat(a, xa, b, xb));
        self.total.object_of(w, x)
    }

    fn tensor_mor(&self, p: MorId, q: MorId) -> Option<MorId> {
        let tw = &self.ftw.tw;
        let cat = &tw.category;
        let fs = &self.ftw.fibers;
        let ((a, y, h), (b, z, k)) = (self.total.morphisms[p], self.total.morphisms[q]);
        let (fa, fb) = (tw.object(cat.dom(a)), tw.object(cat.dom(b)));
        let (ga, gb) = (tw.object(cat.cod(a)), tw.object(cat.cod(b)));
        let fits = |x: &PointedMap, y: &PointedMap| x.n + y.n <= tw.n_max && x.m + y.m <= tw.m_max;
        if !fits(fa, fb) || !fits(ga, gb) {
            return None;
        }
        // `a`, `b` are `Tw` morphisms from the target's map to the source's.
        let (ua, va) = &tw.morphisms[a];
        let (ub, vb) = &tw.morphisms[b];
        let cod = tw.object(cat.cod(a)).wedge(tw.object(cat.cod(b)));
        let ab = tw.morphism_id(&cod, &ua.wedge(ub), &va.wedge(vb))?;
        let yz = fs[cat.dom(ab)].product.obj(&self.concat(cat.dom(a), y, cat.dom(b), z));
        let mut hk = fs[cat.cod(a)].product.mor_parts(h);
        hk.extend(fs[cat.cod(b)].product.mor_parts(k));
        self.total.morphism_of(ab, yz, fs[cat.cod(ab)].product.mor(&hk))
    }

    fn braid(&self, p: ObjId, q: ObjId) -> Option<MorId> {
        let tw = &self.ftw.tw;
        let ((a, xa), (b, xb)) = (self.total.objects[p], self.total.objects[q]);
        let (f, g) = (tw.object(a), tw.object(b));
        let fg = f.wedge(g);
        let gf = g.wedge(f);
        let e = tw.morphism_id(&fg, &PointedMap::swap(g.n, f.n), &PointedMap::swap(f.m, g.m))?;
        let cat = &tw.category;
        let fs = &self.ftw.fibers;
        debug_assert_eq!(tw.object(cat.dom(e)), &gf);
        let y = fs[cat.dom(e)].product.obj(&self.concat(b, xb, a, xa));
        let x = fs[cat.cod(e)].product.obj(&self.concat(a, xa, b, xb));
        self.total.morphism_of(e, y, fs[cat.cod(e)].rel.base.identity(x))
    }
}

/// `Perm_N(F)` with the data it was built from.
#[derive(Clone, Debug)]
pub struct PermBuild {
    pub functor: Arc<TruncatedSegalFunctor>,
    pub bounds: PermBounds,
    pub ftw: Arc<FTw>,
    pub total: Arc<GrothendieckTotal>,
    /// Projection to `Tw^op`.
    pub projection: Functor,
    pub perm: Arc<PermRelCategory>,
}

/// The relative Grothendieck construction of `F^Tw` over `Tw^op`, with the
/// wedge tensor. Laws are quantified over the pairs whose tensor stays in
/// bound; `validate_permutative` checks them on demand.
pub fn perm_build(f: &Arc<TruncatedSegalFunctor>, bounds: PermBounds) -> Result<PermBuild, PermConstrError> {
    if bounds.n > f.bound {
        return Err(PermConstrError::Bound { needed: bounds.n, available: f.bound });
    }
    let tw = Arc::new(TwTruncation::new(bounds.n, bounds.m));
    let ftw = Arc::new(f_tw(f, tw.clone())?);
    let index = opposite(&tw.category);
    let fibers = ftw.fibers.iter().map(|x| x.rel.clone()).collect();
    let (total, projection) = grothendieck(index, fibers, ftw.maps.clone())?;
    let total = Arc::new(total);
    let empty = tw.object_id(&PointedMap::identity(0)).expect("id<0> is in every truncation");
    let unit = total.object_of(empty, 0).expect("the unit fiber has one object");
    let tensor = Arc::new(PermTensor { ftw: ftw.clone(), total: total.clone(), unit });
    let perm = Arc::new(PermRelCategory::trusted(total.total.clone(), tensor));
    Ok(PermBuild { functor: f.clone(), bounds, ftw, total, projection, perm })
}

impl PermBuild {
    pub fn tw(&self) -> &Arc<TwTruncation> {
        &self.ftw.tw
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        self.perm.base()
    }

    pub fn object_of(&self, o: &PermObject) -> Option<ObjId> {
        let c = self.tw().object_id(&o.u)?;
        let fiber = &self.ftw.fibers[c];
        if o.xs.len() != fiber.arities.len()
            || o.xs.iter().zip(&fiber.arities).any(|(&x, &n)| x >= self.functor.value(n).base.object_count())
        {
            return None;
        }
        self.total.object_of(c, fiber.product.obj(&o.xs))
    }

    pub fn perm_object(&self, o: ObjId) -> PermObject {
        let (c, x) = self.total.objects[o];
        PermObject { u: self.tw().object(c).clone(), xs: self.ftw.fibers[c].product.obj_parts(x) }
    }

    /// The morphism `(f, xs) -> (g, ys)` lying over the `Tw` morphism
    /// `(u, v): g -> f` whose fiber part is the identity; `None` unless
    /// `F^Tw(u, v)(ys) = xs`.
    pub fn structure_morphism(&self, source: &PermObject, target: &PermObject, u: &PointedMap, v: &PointedMap) -> Option<MorId> {
        let tw = self.tw();
        let e = tw.morphism_id(&source.u, u, v)?;
        if tw.object(tw.category.dom(e)) != &target.u {
            return None;
        }
        let (c, x) = self.total.objects[self.object_of(source)?];
        let (_, y) = self.total.objects[self.object_of(target)?];
        self.total.morphism_of(e, y, self.ftw.fibers[c].rel.base.identity(x))
    }

    /// The morphism over the identity of `Tw` with fiber part `hs`, one
    /// morphism of `F<n_i>` per factor.
    pub fn fiber_morphism(&self, u: &PointedMap, hs: &[MorId]) -> Option<MorId> {
        let tw = self.tw();
        let c = tw.object_id(u)?;
        let fiber = &self.ftw.fibers[c];
        let h = fiber.product.mor(hs);
        let y = fiber.rel.base.cod(h);
        self.total.morphism_of(tw.category.identity(c), y, h)
    }

    /// `X |-> (id<1>, X)`.
    pub fn unit_inclusion(&self) -> RelFunctor {
        let one = PointedMap::identity(1);
        let f1 = self.functor.value(1).clone();
        let functor = Functor::from_fn(f1.base.clone(), self.base().clone(), |m| {
            self.fiber_morphism(&one, &[m]).expect("id<1> is in the truncation")
        });
        RelFunctor::new(f1, self.perm.rel.clone(), functor)
    }

    /// Component count of `Perm_N(F)` and the `pi_0` comparison along the
    /// unit inclusion, on the materialized category.
    pub fn pi0_report(&self) -> Pi0Report {
        let incl = self.unit_inclusion();
        let perm_labels = components(self.base());
        let f1 = &self.functor.value(1).base;
        let source_labels = components(f1);
        let image: Vec<usize> = f1.objects().map(|o| perm_labels[incl.obj(o)]).collect();
        Pi0Report::compare(self.bounds, true, &source_labels, &image, &perm_labels)
    }
}

/// `pi_0` along `pi_0(F<1>) -> pi_0(Perm_N(F))`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Pi0Report {
    pub bound_n: usize,
    pub bound_m: usize,
    /// Whether the total category was materialized or only its objects.
    pub materialized: bool,
    pub source_components: usize,
    pub total_components: usize,
    pub injective: bool,
    pub surjective: bool,
}

impl Pi0Report {
    fn compare(bounds: PermBounds, materialized: bool, source: &[usize], image: &[usize], total: &[usize]) -> Self {
        let count = |labels: &[usize]| {
            let mut l = labels.to_vec();
            l.sort_unstable();
            l.dedup();
            l.len()
        };
        let mut pairs: Vec<(usize, usize)> = source.iter().copied().zip(image.iter().copied()).collect();
        pairs.sort_unstable();
        pairs.dedup();
        let source_components = count(source);
        let total_components = count(total);
        Pi0Report {
            bound_n: bounds.n,
            bound_m: bounds.m,
            materialized,
            source_components,
            total_components,
            injective: count(&pairs.iter().map(|p| p.1).collect::<Vec<_>>()) == source_components,
            surjective: count(image) == total_components,
        }
    }

    pub fn bijective(&self) -> bool {
        self.injective && self.surjective
    }
}

/// Connected-component representative per object.
fn components(c: &FinCategory) -> Vec<usize> {
    let mut uf = UnionFind::new(c.object_count());
    for f in c.morphisms() {
        uf.union(c.dom(f), c.cod(f));
    }
    uf.into_labeling()
}

/// The `pi_0` comparison for `Perm_N(F)` computed on objects only: inside a
/// fiber, tuples are connected factorwise; across fibers, `(c, T(a)(y))` is
/// joined to `(d, y)` by the cartesian lift of `a`.
pub fn pi0_unmaterialized(f: &TruncatedSegalFunctor, bounds: PermBounds) -> Result<Pi0Report, PermConstrError> {
    if bounds.n > f.bound {
        return Err(PermConstrError::Bound { needed: bounds.n, available: f.bound });
    }
    let tw = TwTruncation::new(bounds.n, bounds.m);
    let value_labels: Vec<Vec<usize>> = f.values.iter().map(|v| components(&v.base)).collect();
    let sizes: Vec<Vec<usize>> = tw
        .objects
        .iter()
        .map(|a| (1..=a.m).map(|i| f.value(a.preimage(i).len()).base.object_count()).collect())
        .collect();
    let mut offsets = Vec::with_capacity(tw.objects.len());
    let mut total = 0;
    for s in &sizes {
        offsets.push(total);
        total += s.iter().product::<usize>();
    }
    let encode = |c: usize, parts: &[usize]| offsets[c] + parts.iter().zip(&sizes[c]).fold(0, |acc, (&p, &s)| acc * s + p);
    let decode = |c: usize, mut id: usize| {
        let mut parts = vec![0; sizes[c].len()];
        for (slot, &s) in parts.iter_mut().zip(&sizes[c]).rev() {
            *slot = id % s;
            id /= s;
        }
        parts
    };
    let mut uf = UnionFind::new(total);
    for (c, a) in tw.objects.iter().enumerate() {
        let count: usize = sizes[c].iter().product();
        // Within a fiber: tuples with factorwise connected entries.
        let reps: Vec<Vec<usize>> = (1..=a.m).map(|i| value_labels[a.preimage(i).len()].clone()).collect();
        for x in 0..count {
            let parts = decode(c, x);
            let canon: Vec<usize> = parts.iter().zip(&reps).map(|(&p, r)| r[p]).collect();
            uf.union(encode(c, &parts), encode(c, &canon));
        }
    }
    let cat = &tw.category;
    for p in cat.morphisms() {
        let (a, b) = (cat.dom(p), cat.cod(p));
        let (fa, gb) = (tw.object(a), tw.object(b));
        let (u, v) = &tw.morphisms[p];
        let legs: Vec<(usize, &RelFunctor)> =
            (1..=gb.m).map(|j| (v.apply(j) - 1, f.apply(&leg(fa, gb, u, v, j)))).collect();
        let count: usize = sizes[a].iter().product();
        for y in 0..count {
            let parts = decode(a, y);
            let image: Vec<usize> = legs.iter().map(|(i, fm)| fm.obj(parts[*i])).collect();
            uf.union(encode(a, &parts), encode(b, &image));
        }
    }
    let labels = uf.into_labeling();
    let one = tw.object_id(&PointedMap::identity(1)).expect("id<1> is in the truncation");
    let source = &value_labels[1];
    let image: Vec<usize> = (0..source.len()).map(|x| labels[encode(one, &[x])]).collect();
    Ok(Pi0Report::compare(bounds, false, source, &image, &labels))
}
