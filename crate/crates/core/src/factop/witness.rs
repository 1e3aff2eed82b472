use std::collections::HashMap;
use std::sync::Arc;

use super::algebra::{psi, FactAlgebra, FactMorphism};
use super::category::FactTower;
use super::{elements, full, preimage, singleton};
use crate::fincat::{Functor, MorId, NatTransformation, ObjId, Product, Violation};
use crate::finstar::{all_maps, rho, PointedMap};
use crate::permcat::PermRelCategory;
use crate::relcat::{HomotopyEquivWitness, RelCategory, RelFunctor, ZigZag};

/// `C^n` as a relative product.
pub fn power(c: &PermRelCategory, n: usize) -> (Product, Arc<RelCategory>) {
    RelCategory::product(&vec![c.rel.clone(); n])
}

/// The natural weak equivalence `Psi Phi (A) -> A`, whose components are
/// the structure maps at singleton decompositions.
pub fn counit_zigzag(c: &PermRelCategory, a: &FactAlgebra) -> Result<FactMorphism, Violation> {
    let source = psi(c, &a.phi()).ok_or_else(|| Violation::new("bound", "Psi(Phi(A)) leaves the ambient bound"))?;
    let components = (0..=full(a.n))
        .map(|s| a.singleton_map(c, s))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Violation::new("bound", "singleton structure map undefined"))?;
    let m = FactMorphism { components };
    if let Some(v) = m.check(c, &source, a).into_iter().next() {
        return Err(v);
    }
    if !m.is_weq(c) {
        return Err(Violation::new("weq", "counit component is not a weak equivalence"));
    }
    Ok(m)
}

/// `Phi_n`, `Psi_n` and the counit `Psi Phi => id` at one level of a tower.
#[derive(Clone, Debug)]
pub struct FactComparison {
    pub n: usize,
    pub power: Product,
    pub power_rel: Arc<RelCategory>,
    pub phi: RelFunctor,
    pub psi: RelFunctor,
    pub counit: NatTransformation,
}

impl FactComparison {
    pub fn new(tower: &FactTower, n: usize) -> Self {
        let c = &*tower.ambient;
        let level = tower.level(n);
        let (power, power_rel) = power(c, n);
        let singletons: Vec<usize> = (1..=n).map(|i| singleton(i) as usize).collect();
        let phi = Functor::from_fn(level.category().clone(), power.category.clone(), |m| {
            let comps = level.components(m);
            power.mor(&singletons.iter().map(|&s| comps[s]).collect::<Vec<_>>())
        });
        let base = c.base();
        let psi_obj: Vec<ObjId> = power
            .category
            .objects()
            .map(|o| {
                let a = psi(c, &power.obj_parts(o)).expect("Psi is defined on the sample");
                level.object_of(&a).expect("Psi-images are sampled")
            })
            .collect();
        let psi_f = Functor::from_fn(power.category.clone(), level.category().clone(), |m| {
            let parts = power.mor_parts(m);
            let comps: Vec<MorId> = (0..=full(n))
                .map(|s| {
                    let fs: Vec<MorId> = elements(s).iter().map(|&i| parts[i - 1]).collect();
                    c.iterated_tensor_mor(&fs).expect("tensor of a tuple of morphisms")
                })
                .collect();
            let d = psi_obj[power.obj(&parts.iter().map(|&f| base.dom(f)).collect::<Vec<_>>())];
            let e = psi_obj[power.obj(&parts.iter().map(|&f| base.cod(f)).collect::<Vec<_>>())];
            level.morphism_of(d, e, comps).expect("Psi of a tuple is a family")
        });
        let phi = RelFunctor::new(level.rel.clone(), power_rel.clone(), phi);
        let psi_r = RelFunctor::new(power_rel.clone(), level.rel.clone(), psi_f);
        let round = phi.then(&psi_r);
        let components = level
            .category()
            .objects()
            .map(|o| {
                let m = counit_zigzag(c, level.algebra(o)).expect("sampled algebras are Fact objects");
                level.morphism_of(round.obj(o), o, m.components).expect("counit family is sampled")
            })
            .collect();
        let counit = NatTransformation::new(round.functor.clone(), Functor::identity(level.category().clone()), components);
        FactComparison { n, power, power_rel, phi, psi: psi_r, counit }
    }

    /// `Phi` with inverse `Psi`: `Psi Phi => id` in one forward step and
    /// `Phi Psi = id` on the nose.
    pub fn witness(&self) -> HomotopyEquivWitness {
        let src = self.phi.source.clone();
        HomotopyEquivWitness {
            f: self.phi.clone(),
            g: self.psi.clone(),
            zz_gf: ZigZag::forward(self.phi.then(&self.psi), RelFunctor::identity(src), self.counit.clone()),
            zz_fg: ZigZag::empty(RelFunctor::identity(self.power_rel.clone())),
        }
    }
}

/// The witness that `(rho^1_*, .., rho^n_*): Fact_n(C) -> Fact_1(C)^n` is a
/// homotopy equivalence: the `Phi_n` witness pasted with the inverse of the
/// `n`-fold product of the `Phi_1` witness. The pasted forward functor is
/// `Psi_1^n Phi_n`; it is replaced by the pairing of the `rho^i_*`, and
/// `verify` rechecks every zig-zag endpoint against it.
pub fn segal_witness(tower: &FactTower, n: usize) -> HomotopyEquivWitness {
    let top = FactComparison::new(tower, n);
    let one = FactComparison::new(tower, 1);
    let fact1 = tower.level(1);
    let (fact_pow, fact_pow_rel) = RelCategory::product(&vec![fact1.rel.clone(); n]);
    let (c_pow, c_pow_rel) = (&top.power, &top.power_rel);
    let phi_n = RelFunctor::new(fact_pow_rel.clone(), c_pow_rel.clone(), fact_pow.map(c_pow, &vec![one.phi.functor.clone(); n]));
    let psi_n = RelFunctor::new(c_pow_rel.clone(), fact_pow_rel.clone(), c_pow.map(&fact_pow, &vec![one.psi.functor.clone(); n]));
    let round = phi_n.then(&psi_n);
    let counit = NatTransformation::new(
        round.functor.clone(),
        Functor::identity(fact_pow.category.clone()),
        fact_pow
            .category
            .objects()
            .map(|o| fact_pow.mor(&fact_pow.obj_parts(o).iter().map(|&x| one.counit.component(x)).collect::<Vec<_>>()))
            .collect(),
    );
    let product_witness = HomotopyEquivWitness {
        f: phi_n.clone(),
        g: psi_n,
        zz_gf: ZigZag::forward(round, RelFunctor::identity(fact_pow_rel.clone()), counit),
        zz_fg: ZigZag::empty(RelFunctor::identity(c_pow_rel.clone())),
    };
    let mut w = top.witness().paste(&product_witness.inverse());
    let rhos: Vec<Functor> = (1..=n)
        .map(|i| tower.pullback(&rho(n, &[i])).expect("sample is closed under pullback").functor)
        .collect();
    let segal = fact_pow.pairing_from(tower.level(n).category().clone(), &rhos);
    w.f = RelFunctor::new(tower.level(n).rel.clone(), fact_pow_rel, segal);
    w
}

/// `C^*(u): C^n -> C^m`, `(X_i) |-> ((x)_{i in u^{-1}(j)} X_i)_j`.
fn tensor_along(c: &PermRelCategory, u: &PointedMap, src: &Product, tgt: &Product) -> Functor {
    Functor::from_fn(src.category.clone(), tgt.category.clone(), |m| {
        let parts = src.mor_parts(m);
        let out: Vec<MorId> = (1..=u.m)
            .map(|j| {
                let fs: Vec<MorId> = elements(preimage(u, singleton(j))).iter().map(|&i| parts[i - 1]).collect();
                c.iterated_tensor_mor(&fs).expect("tensor within bound")
            })
            .collect();
        tgt.mor(&out)
    })
}

/// The oplax square `C^*(u) Phi_n => Phi_m u_*` for `u: <n> -> <m>`.
#[derive(Clone, Debug)]
pub struct LaxSquare {
    pub u: PointedMap,
    pub transformation: NatTransformation,
    pub target_rel: Arc<RelCategory>,
}

impl LaxSquare {
    /// Naturality plus weak-equivalence components.
    pub fn check(&self) -> Vec<Violation> {
        let mut out = self.transformation.check();
        for (o, &m) in self.transformation.components.iter().enumerate() {
            if !self.target_rel.is_weq(m) {
                out.push(Violation::new(
                    "weq",
                    format!("component at {} is not a weak equivalence", self.transformation.source.source.object_label(o)),
                ));
            }
        }
        out
    }
}

/// Components at `A` are the structure maps
/// `(x)_{i in u^{-1}(j)} A({i}) -> A(u^{-1}(j))`.
pub fn lax_square(tower: &FactTower, u: &PointedMap) -> LaxSquare {
    let c = &*tower.ambient;
    let src = FactComparison::new(tower, u.n);
    let tgt = FactComparison::new(tower, u.m);
    let push = tower.pullback(u).expect("sample is closed under pullback");
    let lower = src.phi.functor.then(&tensor_along(c, u, &src.power, &tgt.power));
    let upper = push.functor.then(&tgt.phi.functor);
    let level = tower.level(u.n);
    let components = level
        .algebras
        .iter()
        .map(|a| {
            let parts: Vec<MorId> =
                (1..=u.m).map(|j| a.singleton_map(c, preimage(u, singleton(j))).expect("structure map")).collect();
            tgt.power.mor(&parts)
        })
        .collect();
    LaxSquare { u: u.clone(), transformation: NatTransformation::new(lower, upper, components), target_rel: tgt.power_rel }
}

/// Pasting law for `u: <n> -> <m>`, `v: <m> -> <k>` on every sampled
/// algebra: the square of `v u` equals the pasting of the squares of `u`
/// and `v`, up to the symmetry reordering `(x)_l (x)_{u(i) = l}` into
/// `(x)_{v u (i) = j}`.
pub fn lax_pasting_check(tower: &FactTower, u: &PointedMap, v: &PointedMap) -> Vec<Violation> {
    let c = &*tower.ambient;
    let base = c.base();
    let vu = v.after(u);
    let mut out = Vec::new();
    for a in &tower.level(u.n).algebras {
        let Some(pushed) = a.pullback(c, u) else { continue };
        for j in 1..=v.m {
            let ls = elements(preimage(v, singleton(j)));
            let blocks: Vec<Vec<usize>> = ls.iter().map(|&l| elements(preimage(u, singleton(l)))).collect();
            let order: Vec<usize> = blocks.concat();
            let mut sorted = order.clone();
            sorted.sort();
            let arr: Vec<usize> = order.iter().map(|i| sorted.binary_search(i).expect("element")).collect();
            let xs: Vec<ObjId> = sorted.iter().map(|&i| a.at(singleton(i))).collect();
            let inner: Option<Vec<MorId>> =
                ls.iter().map(|&l| a.singleton_map(c, preimage(u, singleton(l)))).collect();
            let pasted = inner
                .and_then(|ms| c.iterated_tensor_mor(&ms))
                .and_then(|x| base.compose(pushed.singleton_map(c, preimage(v, singleton(j)))?, x));
            let direct = c
                .symmetry(&arr, &xs)
                .and_then(|sym| base.compose(a.singleton_map(c, preimage(&vu, singleton(j)))?, sym));
            if pasted.is_none() || pasted != direct {
                out.push(Violation::new(
                    "pasting",
                    format!("squares for {u} and {v} do not paste at j = {j} on {}", a.label(c)),
                ));
            }
        }
    }
    out
}

/// `id_* = id` and `(g f)_* = g_* f_*` for all based maps within the bound,
/// plus preservation of Fact objects.
pub fn check_pullback_functoriality(tower: &FactTower) -> Vec<Violation> {
    let mut out = Vec::new();
    let b = tower.bound;
    let mut cache: HashMap<PointedMap, RelFunctor> = HashMap::new();
    for n in 0..=b {
        for m in 0..=b {
            for f in all_maps(n, m) {
                match tower.pullback(&f) {
                    Some(p) => {
                        cache.insert(f, p);
                    }
                    None => out.push(Violation::new("closure", format!("sample not closed under {f}"))),
                }
            }
        }
        let id = &cache[&PointedMap::identity(n)];
        if !id.equals(&RelFunctor::identity(tower.level(n).rel.clone())) {
            out.push(Violation::new("identity", format!("pullback along id<{n}> is not the identity")));
        }
    }
    for (f, pf) in &cache {
        for g in (0..=b).flat_map(|k| all_maps(f.m, k)) {
            let lhs = &cache[&g.after(f)];
            if !lhs.equals(&pf.then(&cache[&g])) {
                out.push(Violation::new("composition", format!("(g f)_* != g_* f_* for f = {f}, g = {g}")));
            }
        }
        for (o, a) in tower.level(f.n).algebras.iter().enumerate() {
            let image = tower.level(f.m).algebra(pf.obj(o));
            if a.is_fact_object(&tower.ambient) && !image.is_fact_object(&tower.ambient) {
                out.push(Violation::new("fact-object", format!("pullback along {f} loses the Fact condition on {}", a.label(&tower.ambient))));
            }
        }
    }
    out.sort_by(|x, y| x.detail.cmp(&y.detail));
    out
}
