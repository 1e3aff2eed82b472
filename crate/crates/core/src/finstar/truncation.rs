use std::collections::HashMap;
use std::sync::Arc;

use super::pointed::{active_maps, PointedMap};
use crate::fincat::{twisted_arrow, FinCategory, MorId, ObjId, TwistedArrow};

/// The full subcategory of active maps on `<0>, .., <N>`.
#[derive(Clone, Debug)]
pub struct ActiveTruncation {
    pub bound: usize,
    pub category: Arc<FinCategory>,
    pub maps: Vec<PointedMap>,
    index: HashMap<PointedMap, MorId>,
}

impl ActiveTruncation {
    pub fn new(bound: usize) -> Self {
        let mut maps = Vec::new();
        for n in 0..=bound {
            for m in 0..=bound {
                maps.extend(active_maps(n, m));
            }
        }
        let index: HashMap<PointedMap, MorId> = maps.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        let identities = (0..=bound).map(|n| index[&PointedMap::identity(n)]).collect();
        let (ms, idx) = (maps.clone(), index.clone());
        let rule = Arc::new(move |g: MorId, f: MorId| idx.get(&ms[g].after(&ms[f])).copied());
        let category = Arc::new(FinCategory::from_rule(
            (0..=bound).map(|n| format!("<{n}>")).collect(),
            maps.iter().map(|f| format!("[{f}]")).collect(),
            maps.iter().map(|f| (f.n, f.m)).collect(),
            identities,
            rule,
        ));
        ActiveTruncation { bound, category, maps, index }
    }

    pub fn id_of(&self, f: &PointedMap) -> Option<MorId> {
        self.index.get(f).copied()
    }
}

/// `Tw` of the active truncation: objects are active maps `<n> -> <m>`
/// with `n, m <= N`.
#[derive(Clone, Debug)]
pub struct TwActive {
    pub active: ActiveTruncation,
    pub tw: TwistedArrow,
}

impl TwActive {
    pub fn bound(&self) -> usize {
        self.active.bound
    }

    pub fn category(&self) -> &Arc<FinCategory> {
        &self.tw.category
    }

    /// The active map that object `o` stands for.
    pub fn object(&self, o: ObjId) -> &PointedMap {
        &self.active.maps[o]
    }

    pub fn object_id(&self, f: &PointedMap) -> Option<ObjId> {
        self.active.id_of(f)
    }

    /// `(u, g, v)` as based maps for a morphism `f -> g`.
    pub fn morphism(&self, m: MorId) -> (&PointedMap, &PointedMap, &PointedMap) {
        let (u, g, v) = self.tw.triples[m];
        let maps = &self.active.maps;
        (&maps[u], &maps[g], &maps[v])
    }

    pub fn morphism_id(&self, u: &PointedMap, g: &PointedMap, v: &PointedMap) -> Option<MorId> {
        let a = &self.active;
        self.tw.morphism(a.id_of(u)?, a.id_of(g)?, a.id_of(v)?)
    }
}

pub fn enumerate_tw_active(bound: usize) -> TwActive {
    let active = ActiveTruncation::new(bound);
    let tw = twisted_arrow(&active.category);
    TwActive { active, tw }
}
