//! Opposite, product, slice, twisted arrow, fiber product and arrow categories.

use std::collections::HashMap;
use std::sync::Arc;

use super::category::{FinCategory, MorId, ObjId};
use super::functor::Functor;

/// The terminal category: one object, one morphism.
pub fn terminal() -> Arc<FinCategory> {
    Arc::new(FinCategory::from_rule(
        vec!["*".into()],
        vec!["id_*".into()],
        vec![(0, 0)],
        vec![0],
        Arc::new(|_, _| Some(0)),
    ))
}

/// The unique functor `C -> *`.
pub fn to_terminal(c: Arc<FinCategory>, t: Arc<FinCategory>) -> Functor {
    Functor::new(
        c.clone(),
        t,
        vec![0; c.object_count()],
        vec![0; c.morphism_count()],
    )
}

pub fn opposite(c: &Arc<FinCategory>) -> Arc<FinCategory> {
    let base = c.clone();
    Arc::new(FinCategory::from_rule(
        c.object_labels().to_vec(),
        c.morphism_labels().to_vec(),
        c.morphisms().map(|f| (c.cod(f), c.dom(f))).collect(),
        c.objects().map(|o| c.identity(o)).collect(),
        Arc::new(move |g, f| base.compose(f, g)),
    ))
}

/// Mixed-radix encoding shared by n-ary products.
#[derive(Clone, Debug)]
struct Radix {
    sizes: Vec<usize>,
}

impl Radix {
    fn total(&self) -> usize {
        self.sizes.iter().product()
    }

    fn encode(&self, parts: &[usize]) -> usize {
        parts
            .iter()
            .zip(&self.sizes)
            .fold(0, |acc, (&p, &s)| acc * s + p)
    }

    fn decode(&self, mut id: usize) -> Vec<usize> {
        let mut parts = vec![0; self.sizes.len()];
        for (slot, &s) in parts.iter_mut().zip(&self.sizes).rev() {
            *slot = id % s;
            id /= s;
        }
        parts
    }
}

/// An n-ary product category with its encoding of tuples. The empty product
/// is the terminal category.
#[derive(Clone, Debug)]
pub struct Product {
    pub category: Arc<FinCategory>,
    pub factors: Vec<Arc<FinCategory>>,
    objs: Radix,
    mors: Radix,
}

impl Product {
    pub fn new(factors: Vec<Arc<FinCategory>>) -> Self {
        let objs = Radix { sizes: factors.iter().map(|c| c.object_count()).collect() };
        let mors = Radix { sizes: factors.iter().map(|c| c.morphism_count()).collect() };
        let tuple_label = |parts: Vec<String>| format!("({})", parts.join(","));
        let object_labels = (0..objs.total())
            .map(|o| {
                let p = objs.decode(o);
                tuple_label(factors.iter().zip(p).map(|(c, x)| c.object_label(x).to_string()).collect())
            })
            .collect();
        let mut morphism_labels = Vec::with_capacity(mors.total());
        let mut endpoints = Vec::with_capacity(mors.total());
        for m in 0..mors.total() {
            let p = mors.decode(m);
            morphism_labels.push(tuple_label(
                factors.iter().zip(&p).map(|(c, &x)| c.morphism_label(x).to_string()).collect(),
            ));
            let d: Vec<_> = factors.iter().zip(&p).map(|(c, &x)| c.dom(x)).collect();
            let e: Vec<_> = factors.iter().zip(&p).map(|(c, &x)| c.cod(x)).collect();
            endpoints.push((objs.encode(&d), objs.encode(&e)));
        }
        let identities = (0..objs.total())
            .map(|o| {
                let p = objs.decode(o);
                let ids: Vec<_> = factors.iter().zip(p).map(|(c, x)| c.identity(x)).collect();
                mors.encode(&ids)
            })
            .collect();
        let (fs, mr) = (factors.clone(), mors.clone());
        let rule = Arc::new(move |g: MorId, f: MorId| {
            let (pg, pf) = (mr.decode(g), mr.decode(f));
            let parts: Option<Vec<_>> = fs
                .iter()
                .zip(pg.iter().zip(&pf))
                .map(|(c, (&a, &b))| c.compose(a, b))
                .collect();
            parts.map(|p| mr.encode(&p))
        });
        let category = Arc::new(FinCategory::from_rule(
            object_labels,
            morphism_labels,
            endpoints,
            identities,
            rule,
        ));
        Product { category, factors, objs, mors }
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn obj(&self, parts: &[ObjId]) -> ObjId {
        self.objs.encode(parts)
    }

    pub fn mor(&self, parts: &[MorId]) -> MorId {
        self.mors.encode(parts)
    }

    pub fn obj_parts(&self, o: ObjId) -> Vec<ObjId> {
        self.objs.decode(o)
    }

    pub fn mor_parts(&self, f: MorId) -> Vec<MorId> {
        self.mors.decode(f)
    }

    pub fn projection(&self, i: usize) -> Functor {
        Functor::new(
            self.category.clone(),
            self.factors[i].clone(),
            self.category.objects().map(|o| self.objs.decode(o)[i]).collect(),
            self.category.morphisms().map(|f| self.mors.decode(f)[i]).collect(),
        )
    }

    /// The functor `X -> prod C_i` with components `fs`.
    pub fn pairing(&self, fs: &[Functor]) -> Functor {
        let source = fs
            .first()
            .map(|f| f.source.clone())
            .expect("pairing of zero functors needs an explicit source");
        self.pairing_from(source, fs)
    }

    pub fn pairing_from(&self, source: Arc<FinCategory>, fs: &[Functor]) -> Functor {
        let object_map = source
            .objects()
            .map(|o| self.obj(&fs.iter().map(|f| f.obj(o)).collect::<Vec<_>>()))
            .collect();
        let morphism_map = source
            .morphisms()
            .map(|m| self.mor(&fs.iter().map(|f| f.mor(m)).collect::<Vec<_>>()))
            .collect();
        Functor::new(source, self.category.clone(), object_map, morphism_map)
    }

    /// The product functor `prod F_i : prod A_i -> prod B_i`.
    pub fn map(&self, target: &Product, fs: &[Functor]) -> Functor {
        Functor::from_fn(self.category.clone(), target.category.clone(), |m| {
            let parts: Vec<_> = self.mor_parts(m).iter().zip(fs).map(|(&x, f)| f.mor(x)).collect();
            target.mor(&parts)
        })
    }
}

/// Twisted arrow category. Objects are the morphisms of `base`; a morphism
/// `f -> g` is a pair `(u, v)` with `v o g o u = f`.
#[derive(Clone, Debug)]
pub struct TwistedArrow {
    pub category: Arc<FinCategory>,
    pub base: Arc<FinCategory>,
    /// `(u, g, v)` for each morphism; its codomain is `g`.
    pub triples: Vec<(MorId, MorId, MorId)>,
    index: HashMap<(MorId, MorId, MorId), MorId>,
}

impl TwistedArrow {
    pub fn morphism(&self, u: MorId, g: MorId, v: MorId) -> Option<MorId> {
        self.index.get(&(u, g, v)).copied()
    }

    /// The covariant projection `(f: X -> Y) |-> X`.
    pub fn domain_projection(&self) -> Functor {
        let c = &self.base;
        Functor::new(
            self.category.clone(),
            c.clone(),
            c.morphisms().map(|f| c.dom(f)).collect(),
            self.triples.iter().map(|&(u, _, _)| u).collect(),
        )
    }

    /// The contravariant projection `(f: X -> Y) |-> Y`, as a functor into `C^op`.
    pub fn codomain_projection(&self, base_op: Arc<FinCategory>) -> Functor {
        let c = &self.base;
        Functor::new(
            self.category.clone(),
            base_op,
            c.morphisms().map(|f| c.cod(f)).collect(),
            self.triples.iter().map(|&(_, _, v)| v).collect(),
        )
    }
}

pub fn twisted_arrow(c: &Arc<FinCategory>) -> TwistedArrow {
    let mut triples = Vec::new();
    let mut index = HashMap::new();
    let mut endpoints = Vec::new();
    for f in c.morphisms() {
        for g in c.morphisms() {
            for &u in c.hom(c.dom(f), c.dom(g)) {
                let Some(gu) = c.compose(g, u) else { continue };
                for &v in c.hom(c.cod(g), c.cod(f)) {
                    if c.compose(v, gu) == Some(f) {
                        index.insert((u, g, v), triples.len());
                        triples.push((u, g, v));
                        endpoints.push((f, g));
                    }
                }
            }
        }
    }
    let identities = c
        .morphisms()
        .map(|f| index[&(c.identity(c.dom(f)), f, c.identity(c.cod(f)))])
        .collect();
    let object_labels = c.morphism_labels().to_vec();
    let morphism_labels = triples
        .iter()
        .zip(&endpoints)
        .map(|(&(u, _, v), &(f, g))| {
            format!(
                "({},{}):{}->{}",
                c.morphism_label(u),
                c.morphism_label(v),
                c.morphism_label(f),
                c.morphism_label(g)
            )
        })
        .collect();
    let (base, tr, idx) = (c.clone(), triples.clone(), index.clone());
    let rule = Arc::new(move |second: MorId, first: MorId| {
        let (u, _, v) = tr[first];
        let (u2, h, v2) = tr[second];
        let uu = base.compose(u2, u)?;
        let vv = base.compose(v, v2)?;
        idx.get(&(uu, h, vv)).copied()
    });
    let category = Arc::new(FinCategory::from_rule(
        object_labels,
        morphism_labels,
        endpoints,
        identities,
        rule,
    ));
    TwistedArrow { category, base: c.clone(), triples, index }
}

/// Strict pullback `A x_C B` of two functors into a common category.
#[derive(Clone, Debug)]
pub struct FiberProduct {
    pub category: Arc<FinCategory>,
    pub object_pairs: Vec<(ObjId, ObjId)>,
    pub morphism_pairs: Vec<(MorId, MorId)>,
    pub left: Functor,
    pub right: Functor,
    object_index: HashMap<(ObjId, ObjId), ObjId>,
    morphism_index: HashMap<(MorId, MorId), MorId>,
}

impl FiberProduct {
    pub fn obj(&self, a: ObjId, b: ObjId) -> Option<ObjId> {
        self.object_index.get(&(a, b)).copied()
    }

    pub fn mor(&self, f: MorId, g: MorId) -> Option<MorId> {
        self.morphism_index.get(&(f, g)).copied()
    }
}

pub fn fiber_product(f: &Functor, g: &Functor) -> FiberProduct {
    let (a, b) = (&f.source, &g.source);
    let mut object_pairs = Vec::new();
    let mut object_index = HashMap::new();
    for x in a.objects() {
        for y in b.objects() {
            if f.obj(x) == g.obj(y) {
                object_index.insert((x, y), object_pairs.len());
                object_pairs.push((x, y));
            }
        }
    }
    let mut morphism_pairs = Vec::new();
    let mut morphism_index = HashMap::new();
    let mut endpoints = Vec::new();
    for &(x, y) in &object_pairs {
        for &p in a.outgoing(x) {
            for &q in b.outgoing(y) {
                if f.mor(p) == g.mor(q) {
                    morphism_index.insert((p, q), morphism_pairs.len());
                    morphism_pairs.push((p, q));
                    endpoints.push((object_index[&(x, y)], object_index[&(a.cod(p), b.cod(q))]));
                }
            }
        }
    }
    let identities = object_pairs
        .iter()
        .map(|&(x, y)| morphism_index[&(a.identity(x), b.identity(y))])
        .collect();
    let object_labels = object_pairs
        .iter()
        .map(|&(x, y)| format!("({},{})", a.object_label(x), b.object_label(y)))
        .collect();
    let morphism_labels = morphism_pairs
        .iter()
        .map(|&(p, q)| format!("({},{})", a.morphism_label(p), b.morphism_label(q)))
        .collect();
    let (ca, cb, mp, mi) = (a.clone(), b.clone(), morphism_pairs.clone(), morphism_index.clone());
    let rule = Arc::new(move |s: MorId, t: MorId| {
        let (p2, q2) = mp[s];
        let (p1, q1) = mp[t];
        mi.get(&(ca.compose(p2, p1)?, cb.compose(q2, q1)?)).copied()
    });
    let category = Arc::new(FinCategory::from_rule(
        object_labels,
        morphism_labels,
        endpoints,
        identities,
        rule,
    ));
    let left = Functor::new(
        category.clone(),
        a.clone(),
        object_pairs.iter().map(|p| p.0).collect(),
        morphism_pairs.iter().map(|p| p.0).collect(),
    );
    let right = Functor::new(
        category.clone(),
        b.clone(),
        object_pairs.iter().map(|p| p.1).collect(),
        morphism_pairs.iter().map(|p| p.1).collect(),
    );
    FiberProduct {
        category,
        object_pairs,
        morphism_pairs,
        left,
        right,
        object_index,
        morphism_index,
    }
}

/// Slice category `C_{/c}` with its forgetful functor to `C`.
#[derive(Clone, Debug)]
pub struct Slice {
    pub category: Arc<FinCategory>,
    /// The structure map `x -> c` of each object.
    pub objects: Vec<MorId>,
    /// `(h, target structure map)` for each morphism.
    pub morphisms: Vec<(MorId, MorId)>,
    pub forget: Functor,
}

pub fn slice(c: &Arc<FinCategory>, over: ObjId) -> Slice {
    let objects: Vec<MorId> = c.incoming(over).to_vec();
    let pos: HashMap<MorId, ObjId> = objects.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let mut morphisms = Vec::new();
    let mut index = HashMap::new();
    let mut endpoints = Vec::new();
    for (i, &f) in objects.iter().enumerate() {
        for &h in c.outgoing(c.dom(f)) {
            for &f2 in c.hom(c.cod(h), over) {
                if c.compose(f2, h) == Some(f) {
                    index.insert((h, f2), morphisms.len());
                    morphisms.push((h, f2));
                    endpoints.push((i, pos[&f2]));
                }
            }
        }
    }
    let identities = objects
        .iter()
        .map(|&f| index[&(c.identity(c.dom(f)), f)])
        .collect();
    let object_labels = objects.iter().map(|&f| c.morphism_label(f).to_string()).collect();
    let morphism_labels = morphisms
        .iter()
        .map(|&(h, f2)| format!("{}/{}", c.morphism_label(h), c.morphism_label(f2)))
        .collect();
    let (base, ms, idx) = (c.clone(), morphisms.clone(), index.clone());
    let rule = Arc::new(move |s: MorId, t: MorId| {
        let (h2, f3) = ms[s];
        let (h1, _) = ms[t];
        idx.get(&(base.compose(h2, h1)?, f3)).copied()
    });
    let category = Arc::new(FinCategory::from_rule(
        object_labels,
        morphism_labels,
        endpoints,
        identities,
        rule,
    ));
    let forget = Functor::new(
        category.clone(),
        c.clone(),
        objects.iter().map(|&f| c.dom(f)).collect(),
        morphisms.iter().map(|&(h, _)| h).collect(),
    );
    Slice { category, objects, morphisms, forget }
}

/// Arrow category on the morphisms accepted by `keep`, which must form a
/// wide subcategory. A morphism `u -> u'` is a commuting square `(a, b)`
/// with `b o u = u' o a`.
#[derive(Clone, Debug)]
pub struct ArrowCategory {
    pub category: Arc<FinCategory>,
    pub objects: Vec<MorId>,
    /// `(a, b, u')` per morphism.
    pub squares: Vec<(MorId, MorId, MorId)>,
    pub ev0: Functor,
    pub ev1: Functor,
    object_index: HashMap<MorId, ObjId>,
    index: HashMap<(MorId, MorId, MorId, MorId), MorId>,
}

impl ArrowCategory {
    pub fn obj(&self, u: MorId) -> Option<ObjId> {
        self.object_index.get(&u).copied()
    }

    /// The square `(a, b): source -> target`.
    pub fn mor(&self, source: MorId, a: MorId, b: MorId, target: MorId) -> Option<MorId> {
        self.index.get(&(source, a, b, target)).copied()
    }
}

pub fn arrow_category(c: &Arc<FinCategory>, keep: impl Fn(MorId) -> bool) -> ArrowCategory {
    let objects: Vec<MorId> = c.morphisms().filter(|&u| keep(u)).collect();
    let object_index: HashMap<MorId, ObjId> =
        objects.iter().enumerate().map(|(i, &u)| (u, i)).collect();
    let mut squares = Vec::new();
    let mut index = HashMap::new();
    let mut endpoints = Vec::new();
    for (i, &u) in objects.iter().enumerate() {
        for &a in c.outgoing(c.dom(u)) {
            for &b in c.outgoing(c.cod(u)) {
                for &u2 in c.hom(c.cod(a), c.cod(b)) {
                    let Some(&j) = object_index.get(&u2) else { continue };
                    if c.compose(b, u) == c.compose(u2, a) {
                        index.insert((u, a, b, u2), squares.len());
                        squares.push((a, b, u2));
                        endpoints.push((i, j));
                    }
                }
            }
        }
    }
    let identities = objects
        .iter()
        .map(|&u| index[&(u, c.identity(c.dom(u)), c.identity(c.cod(u)), u)])
        .collect();
    let object_labels = objects.iter().map(|&u| c.morphism_label(u).to_string()).collect();
    let morphism_labels = squares
        .iter()
        .map(|&(a, b, _)| format!("[{},{}]", c.morphism_label(a), c.morphism_label(b)))
        .collect();
    let sources: Vec<MorId> = endpoints.iter().map(|&(i, _)| objects[i]).collect();
    let (base, sq, idx) = (c.clone(), squares.clone(), index.clone());
    let rule = Arc::new(move |s: MorId, t: MorId| {
        let (a2, b2, u3) = sq[s];
        let (a1, b1, _) = sq[t];
        idx.get(&(sources[t], base.compose(a2, a1)?, base.compose(b2, b1)?, u3)).copied()
    });
    let category = Arc::new(FinCategory::from_rule(
        object_labels,
        morphism_labels,
        endpoints,
        identities,
        rule,
    ));
    let ev0 = Functor::new(
        category.clone(),
        c.clone(),
        objects.iter().map(|&u| c.dom(u)).collect(),
        squares.iter().map(|s| s.0).collect(),
    );
    let ev1 = Functor::new(
        category.clone(),
        c.clone(),
        objects.iter().map(|&u| c.cod(u)).collect(),
        squares.iter().map(|s| s.1).collect(),
    );
    ArrowCategory { category, objects, squares, ev0, ev1, object_index, index }
}

/// Full subcategory on `keep` (in the given order) with its inclusion.
#[derive(Clone, Debug)]
pub struct Subcategory {
    pub category: Arc<FinCategory>,
    pub inclusion: Functor,
    object_index: HashMap<ObjId, ObjId>,
    morphism_index: HashMap<MorId, MorId>,
}

impl Subcategory {
    pub fn obj(&self, o: ObjId) -> Option<ObjId> {
        self.object_index.get(&o).copied()
    }

    pub fn mor(&self, f: MorId) -> Option<MorId> {
        self.morphism_index.get(&f).copied()
    }
}

pub fn full_subcategory(c: &Arc<FinCategory>, keep: &[ObjId]) -> Subcategory {
    let object_index: HashMap<ObjId, ObjId> = keep.iter().enumerate().map(|(i, &o)| (o, i)).collect();
    let mut mors = Vec::new();
    for &a in keep {
        for &f in c.outgoing(a) {
            if object_index.contains_key(&c.cod(f)) {
                mors.push(f);
            }
        }
    }
    let morphism_index: HashMap<MorId, MorId> = mors.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let endpoints = mors
        .iter()
        .map(|&f| (object_index[&c.dom(f)], object_index[&c.cod(f)]))
        .collect();
    let identities = keep.iter().map(|&o| morphism_index[&c.identity(o)]).collect();
    let (base, ms, mi) = (c.clone(), mors.clone(), morphism_index.clone());
    let rule = Arc::new(move |g: MorId, f: MorId| mi.get(&base.compose(ms[g], ms[f])?).copied());
    let category = Arc::new(FinCategory::from_rule(
        keep.iter().map(|&o| c.object_label(o).to_string()).collect(),
        mors.iter().map(|&f| c.morphism_label(f).to_string()).collect(),
        endpoints,
        identities,
        rule,
    ));
    let inclusion = Functor::new(category.clone(), c.clone(), keep.to_vec(), mors);
    Subcategory { category, inclusion, object_index, morphism_index }
}

/// `Tw(F): Tw(A) -> Tw(B)` for a functor `F: A -> B`.
pub fn twisted_arrow_map(f: &Functor, source: &TwistedArrow, target: &TwistedArrow) -> Functor {
    Functor::new(
        source.category.clone(),
        target.category.clone(),
        f.morphism_map.clone(),
        source
            .triples
            .iter()
            .map(|&(u, g, v)| {
                target
                    .morphism(f.mor(u), f.mor(g), f.mor(v))
                    .expect("image of a twisted square is a twisted square")
            })
            .collect(),
    )
}
