use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, OnceLock};

use thiserror::Error;

pub type ObjId = usize;
pub type MorId = usize;

/// Composition rule for generated categories whose composition table is too
/// large to materialize. Returns `None` on non-composable input.
pub type ComposeRule = Arc<dyn Fn(MorId, MorId) -> Option<MorId> + Send + Sync>;

#[derive(Clone)]
enum Composition {
    Table(HashMap<(MorId, MorId), MorId>),
    /// Rule with a cache of the composites computed so far.
    Rule(ComposeRule, Arc<OnceLock<Memo>>),
}

const UNKNOWN: usize = usize::MAX;
const UNDEFINED: usize = usize::MAX - 1;

/// One slot per composable pair: `(g, f)` lives at `base[f] + pos[g]`, where
/// `pos[g]` is the index of `g` among the arrows out of its domain.
struct Memo {
    base: Vec<usize>,
    pos: Vec<usize>,
    slots: Vec<AtomicUsize>,
}

impl Memo {
    fn new(cod: &[ObjId], outgoing: &[Vec<MorId>]) -> Self {
        let mut pos = vec![0; cod.len()];
        for out in outgoing {
            for (i, &g) in out.iter().enumerate() {
                pos[g] = i;
            }
        }
        let mut base = Vec::with_capacity(cod.len());
        let mut total = 0;
        for &c in cod {
            base.push(total);
            total += outgoing[c].len();
        }
        Memo { base, pos, slots: (0..total).map(|_| AtomicUsize::new(UNKNOWN)).collect() }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CategoryError {
    #[error("morphism {morphism} has dangling {endpoint} object {object}")]
    Dangling {
        morphism: String,
        endpoint: &'static str,
        object: String,
    },
    #[error("object {object} has no identity morphism")]
    MissingIdentity { object: String },
    #[error("identity {morphism} of object {object} is not an endomorphism of it")]
    BadIdentity { object: String, morphism: String },
    #[error("composite {g} o {f} is missing from the table")]
    MissingComposite { g: String, f: String },
    #[error("table entry {g} o {f} = {gf} has wrong domain/codomain")]
    BadComposite { g: String, f: String, gf: String },
    #[error("table entry {g} o {f} composes non-composable morphisms")]
    NotComposable { g: String, f: String },
    #[error("unit law fails for {morphism} with identity {identity}")]
    UnitLaw { morphism: String, identity: String },
    #[error("associativity fails on triple ({h}, {g}, {f})")]
    NonAssociative { h: String, g: String, f: String },
    #[error("unknown label {0}")]
    UnknownLabel(String),
    #[error("duplicate label {0}")]
    DuplicateLabel(String),
    #[error("conflicting table entries for {g} o {f}")]
    ConflictingComposite { g: String, f: String },
}

/// A finite category given by explicit object, morphism and composition data.
///
/// Object and morphism ids are dense indices. Generated categories (twisted
/// arrows, products, Grothendieck totals) compose through a rule instead of a
/// stored table; everything else about them is materialized.
#[derive(Clone)]
pub struct FinCategory {
    object_labels: Vec<String>,
    morphism_labels: Vec<String>,
    dom: Vec<ObjId>,
    cod: Vec<ObjId>,
    identities: Vec<MorId>,
    composition: Composition,
    outgoing: Vec<Vec<MorId>>,
    incoming: Vec<Vec<MorId>>,
    homs: HashMap<(ObjId, ObjId), Vec<MorId>>,
}

impl fmt::Debug for FinCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinCategory")
            .field("objects", &self.object_count())
            .field("morphisms", &self.morphism_count())
            .finish()
    }
}

impl FinCategory {
    fn assemble(
        object_labels: Vec<String>,
        morphism_labels: Vec<String>,
        dom: Vec<ObjId>,
        cod: Vec<ObjId>,
        identities: Vec<MorId>,
        composition: Composition,
    ) -> Self {
        let n = object_labels.len();
        let mut outgoing = vec![Vec::new(); n];
        let mut incoming = vec![Vec::new(); n];
        let mut homs: HashMap<(ObjId, ObjId), Vec<MorId>> = HashMap::new();
        for f in 0..dom.len() {
            outgoing[dom[f]].push(f);
            incoming[cod[f]].push(f);
            homs.entry((dom[f], cod[f])).or_default().push(f);
        }
        FinCategory {
            object_labels,
            morphism_labels,
            dom,
            cod,
            identities,
            composition,
            outgoing,
            incoming,
            homs,
        }
    }

    /// Builds a category from a full composition table and checks every law.
    pub fn from_table(
        object_labels: Vec<String>,
        morphism_labels: Vec<String>,
        endpoints: Vec<(ObjId, ObjId)>,
        identities: Vec<MorId>,
        table: HashMap<(MorId, MorId), MorId>,
    ) -> Result<Self, CategoryError> {
        let n = object_labels.len();
        for (f, &(d, c)) in endpoints.iter().enumerate() {
            for (endpoint, o) in [("domain", d), ("codomain", c)] {
                if o >= n {
                    return Err(CategoryError::Dangling {
                        morphism: morphism_labels[f].clone(),
                        endpoint,
                        object: o.to_string(),
                    });
                }
            }
        }
        if identities.len() != n {
            let missing = identities.len().min(n);
            return Err(CategoryError::MissingIdentity {
                object: object_labels[missing].clone(),
            });
        }
        for (o, &id) in identities.iter().enumerate() {
            if id >= endpoints.len() || endpoints[id] != (o, o) {
                return Err(CategoryError::BadIdentity {
                    object: object_labels[o].clone(),
                    morphism: morphism_labels.get(id).cloned().unwrap_or_else(|| id.to_string()),
                });
            }
        }
        let (dom, cod) = endpoints.into_iter().unzip();
        let cat = Self::assemble(
            object_labels,
            morphism_labels,
            dom,
            cod,
            identities,
            Composition::Table(table),
        );
        cat.check_table_shape()?;
        match cat.law_violations(1).into_iter().next() {
            Some(e) => Err(e),
            None => Ok(cat),
        }
    }

    /// Builds a category whose composition is computed by `rule`. The caller
    /// vouches for the laws; `law_violations` re-checks them on demand.
    pub fn from_rule(
        object_labels: Vec<String>,
        morphism_labels: Vec<String>,
        endpoints: Vec<(ObjId, ObjId)>,
        identities: Vec<MorId>,
        rule: ComposeRule,
    ) -> Self {
        let (dom, cod) = endpoints.into_iter().unzip();
        Self::assemble(
            object_labels,
            morphism_labels,
            dom,
            cod,
            identities,
            Composition::Rule(rule, Default::default()),
        )
    }

    fn check_table_shape(&self) -> Result<(), CategoryError> {
        let Composition::Table(table) = &self.composition else {
            return Ok(());
        };
        let mut entries: Vec<_> = table.iter().collect();
        entries.sort();
        for (&(g, f), &gf) in entries {
            if g >= self.morphism_count() || f >= self.morphism_count() {
                return Err(CategoryError::UnknownLabel(format!("{g} o {f}")));
            }
            if self.cod[f] != self.dom[g] {
                return Err(CategoryError::NotComposable {
                    g: self.morphism_label(g).to_string(),
                    f: self.morphism_label(f).to_string(),
                });
            }
            if gf >= self.morphism_count() || self.dom[gf] != self.dom[f] || self.cod[gf] != self.cod[g]
            {
                return Err(CategoryError::BadComposite {
                    g: self.morphism_label(g).to_string(),
                    f: self.morphism_label(f).to_string(),
                    gf: gf.to_string(),
                });
            }
        }
        Ok(())
    }

    /// Exhaustive scan of totality, unit and associativity laws. Stops after
    /// `limit` violations.
    pub fn law_violations(&self, limit: usize) -> Vec<CategoryError> {
        let mut out = Vec::new();
        let label = |m: MorId| self.morphism_label(m).to_string();
        for f in self.morphisms() {
            for &g in &self.outgoing[self.cod[f]] {
                match self.compose(g, f) {
                    None => out.push(CategoryError::MissingComposite { g: label(g), f: label(f) }),
                    Some(gf) if self.dom[gf] != self.dom[f] || self.cod[gf] != self.cod[g] => {
                        out.push(CategoryError::BadComposite {
                            g: label(g),
                            f: label(f),
                            gf: label(gf),
                        })
                    }
                    _ => {}
                }
                if out.len() >= limit {
                    return out;
                }
            }
        }
        for f in self.morphisms() {
            let left = self.identity(self.cod[f]);
            let right = self.identity(self.dom[f]);
            if self.compose(left, f) != Some(f) {
                out.push(CategoryError::UnitLaw { morphism: label(f), identity: label(left) });
            }
            if self.compose(f, right) != Some(f) {
                out.push(CategoryError::UnitLaw { morphism: label(f), identity: label(right) });
            }
            if out.len() >= limit {
                return out;
            }
        }
        for f in self.morphisms() {
            for &g in &self.outgoing[self.cod[f]] {
                let Some(gf) = self.compose(g, f) else { continue };
                for &h in &self.outgoing[self.cod[g]] {
                    let Some(hg) = self.compose(h, g) else { continue };
                    if self.compose(h, gf) != self.compose(hg, f) {
                        out.push(CategoryError::NonAssociative {
                            h: label(h),
                            g: label(g),
                            f: label(f),
                        });
                        if out.len() >= limit {
                            return out;
                        }
                    }
                }
            }
        }
        out
    }

    pub fn object_count(&self) -> usize {
        self.object_labels.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.dom.len()
    }

    pub fn objects(&self) -> std::ops::Range<ObjId> {
        0..self.object_count()
    }

    pub fn morphisms(&self) -> std::ops::Range<MorId> {
        0..self.morphism_count()
    }

    pub fn dom(&self, f: MorId) -> ObjId {
        self.dom[f]
    }

    pub fn cod(&self, f: MorId) -> ObjId {
        self.cod[f]
    }

    pub fn identity(&self, o: ObjId) -> MorId {
        self.identities[o]
    }

    pub fn is_identity(&self, f: MorId) -> bool {
        self.dom[f] == self.cod[f] && self.identities[self.dom[f]] == f
    }

    /// `g o f`, or `None` when `cod f != dom g`.
    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        if self.cod[f] != self.dom[g] {
            return None;
        }
        match &self.composition {
            Composition::Table(t) => t.get(&(g, f)).copied(),
            Composition::Rule(r, memo) => {
                let memo = memo.get_or_init(|| Memo::new(&self.cod, &self.outgoing));
                let slot = &memo.slots[memo.base[f] + memo.pos[g]];
                match slot.load(Ordering::Relaxed) {
                    UNKNOWN => {
                        let gf = r(g, f);
                        slot.store(gf.unwrap_or(UNDEFINED), Ordering::Relaxed);
                        gf
                    }
                    UNDEFINED => None,
                    gf => Some(gf),
                }
            }
        }
    }

    /// Composes a path given in diagrammatic order reversed: `[h, g, f]` is `h o g o f`.
    pub fn compose_all(&self, path: &[MorId]) -> Option<MorId> {
        let (&last, rest) = path.split_last()?;
        rest.iter().rev().try_fold(last, |acc, &g| self.compose(g, acc))
    }

    pub fn hom(&self, a: ObjId, b: ObjId) -> &[MorId] {
        self.homs.get(&(a, b)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn outgoing(&self, a: ObjId) -> &[MorId] {
        &self.outgoing[a]
    }

    pub fn incoming(&self, b: ObjId) -> &[MorId] {
        &self.incoming[b]
    }

    pub fn object_label(&self, o: ObjId) -> &str {
        &self.object_labels[o]
    }

    pub fn morphism_label(&self, f: MorId) -> &str {
        &self.morphism_labels[f]
    }

    pub fn object_labels(&self) -> &[String] {
        &self.object_labels
    }

    pub fn morphism_labels(&self) -> &[String] {
        &self.morphism_labels
    }

    pub fn object_by_label(&self, label: &str) -> Option<ObjId> {
        self.object_labels.iter().position(|l| l == label)
    }

    pub fn morphism_by_label(&self, label: &str) -> Option<MorId> {
        self.morphism_labels.iter().position(|l| l == label)
    }

    /// All composable pairs `(g, f)` in id order of `f`, then `g`.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (MorId, MorId)> + '_ {
        self.morphisms()
            .flat_map(move |f| self.outgoing[self.cod[f]].iter().map(move |&g| (g, f)))
    }

    /// Composition table as `(g, f, g o f)` triples in canonical order.
    pub fn composition_triples(&self) -> Vec<(MorId, MorId, MorId)> {
        self.composable_pairs()
            .filter_map(|(g, f)| self.compose(g, f).map(|gf| (g, f, gf)))
            .collect()
    }

    /// Structural equality: same shape, labels, identities and composition.
    /// Composition is compared only for table-backed categories or when
    /// both are pointer-equal.
    pub fn same_as(&self, other: &FinCategory) -> bool {
        if std::ptr::eq(self, other) {
            return true;
        }
        self.object_labels == other.object_labels
            && self.morphism_labels == other.morphism_labels
            && self.dom == other.dom
            && self.cod == other.cod
            && self.identities == other.identities
    }

    /// True if `f` has a two-sided inverse.
    pub fn inverse(&self, f: MorId) -> Option<MorId> {
        let (a, b) = (self.dom[f], self.cod[f]);
        self.hom(b, a).iter().copied().find(|&g| {
            self.compose(g, f) == Some(self.identity(a)) && self.compose(f, g) == Some(self.identity(b))
        })
    }

    /// Morphism ids admitting a two-sided inverse, in id order.
    pub fn isomorphisms(&self) -> Vec<MorId> {
        self.morphisms().filter(|&f| self.inverse(f).is_some()).collect()
    }
}

/// Incremental builder for table-backed categories.
#[derive(Default, Debug, Clone)]
pub struct CategoryBuilder {
    objects: Vec<String>,
    morphisms: Vec<String>,
    endpoints: Vec<(ObjId, ObjId)>,
    identities: Vec<Option<MorId>>,
    table: HashMap<(MorId, MorId), MorId>,
}

impl CategoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds an object together with its identity morphism `id_<label>`.
    pub fn object(&mut self, label: impl Into<String>) -> ObjId {
        let label = label.into();
        let o = self.objects.len();
        self.objects.push(label.clone());
        let id = self.morphisms.len();
        self.morphisms.push(format!("id_{label}"));
        self.endpoints.push((o, o));
        self.identities.push(Some(id));
        self.table.insert((id, id), id);
        o
    }

    pub fn identity(&self, o: ObjId) -> MorId {
        self.identities[o].expect("identity")
    }

    /// Adds a non-identity morphism and its unit-law table entries.
    pub fn morphism(&mut self, label: impl Into<String>, dom: ObjId, cod: ObjId) -> MorId {
        let f = self.morphisms.len();
        self.morphisms.push(label.into());
        self.endpoints.push((dom, cod));
        let (id_d, id_c) = (self.identity(dom), self.identity(cod));
        self.table.insert((f, id_d), f);
        self.table.insert((id_c, f), f);
        f
    }

    pub fn compose(&mut self, g: MorId, f: MorId, gf: MorId) -> &mut Self {
        self.table.insert((g, f), gf);
        self
    }

    pub fn build(self) -> Result<FinCategory, CategoryError> {
        let identities = self.identities.into_iter().map(|i| i.expect("identity")).collect();
        FinCategory::from_table(self.objects, self.morphisms, self.endpoints, identities, self.table)
    }
}
