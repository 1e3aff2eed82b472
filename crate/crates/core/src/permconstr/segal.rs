use std::collections::HashMap;
use std::sync::Arc;

use crate::factop::{segal_witness, FactTower};
use crate::fincat::Violation;
use crate::finstar::{all_maps, PointedMap};
use crate::relcat::{HomotopyEquivWitness, RelCategory, RelFunctor};

/// A functor `Fin_* -> RelCat` restricted to `<0>, .., <N>`, with its
/// action on every based map between them.
#[derive(Clone, Debug)]
pub struct TruncatedSegalFunctor {
    pub bound: usize,
    pub values: Vec<Arc<RelCategory>>,
    pub action: HashMap<PointedMap, RelFunctor>,
    /// Witnesses for `(rho^1, .., rho^n): F<n> -> F<1>^n`, one per `n`.
    pub segal: Option<Vec<HomotopyEquivWitness>>,
}

impl TruncatedSegalFunctor {
    pub fn new(bound: usize, values: Vec<Arc<RelCategory>>, action: HashMap<PointedMap, RelFunctor>) -> Self {
        TruncatedSegalFunctor { bound, values, action, segal: None }
    }

    /// `n |-> Fact_n(C)` with pullback functors, on the tower's sample.
    pub fn from_fact_tower(tower: &FactTower) -> Self {
        let bound = tower.bound;
        let mut action = HashMap::new();
        for n in 0..=bound {
            for m in 0..=bound {
                for f in all_maps(n, m) {
                    let push = tower.pullback(&f).expect("tower samples are closed under pullback");
                    action.insert(f, push);
                }
            }
        }
        let values = tower.levels.iter().map(|l| l.rel.clone()).collect();
        Self::new(bound, values, action)
    }

    /// Attaches Segal witnesses for every level of the tower; fails if any
    /// of them does not verify.
    pub fn with_segal_witnesses(mut self, tower: &FactTower) -> Result<Self, Vec<Violation>> {
        let witnesses: Vec<HomotopyEquivWitness> = (0..=self.bound).map(|n| segal_witness(tower, n)).collect();
        let bad: Vec<Violation> = witnesses.iter().flat_map(|w| w.verify()).collect();
        if !bad.is_empty() {
            return Err(bad);
        }
        self.segal = Some(witnesses);
        Ok(self)
    }

    pub fn value(&self, n: usize) -> &Arc<RelCategory> {
        &self.values[n]
    }

    /// `F(f)`; panics outside the bound.
    pub fn apply(&self, f: &PointedMap) -> &RelFunctor {
        self.action.get(f).unwrap_or_else(|| panic!("based map [{f}] is outside the bound {}", self.bound))
    }

    pub fn get(&self, f: &PointedMap) -> Option<&RelFunctor> {
        self.action.get(f)
    }

    pub fn is_segal(&self) -> bool {
        self.segal.is_some()
    }

    /// Strict functoriality on every identity and composable pair within
    /// the bound, plus the Segal witnesses when present.
    pub fn check(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let b = self.bound;
        let maps: Vec<Vec<Vec<PointedMap>>> = (0..=b).map(|n| (0..=b).map(|m| all_maps(n, m)).collect()).collect();
        for n in 0..=b {
            for m in 0..=b {
                for f in &maps[n][m] {
                    let Some(ff) = self.get(f) else {
                        out.push(Violation::new("missing", format!("no action for [{f}]")));
                        continue;
                    };
                    if !Arc::ptr_eq(&ff.source, &self.values[n]) || !Arc::ptr_eq(&ff.target, &self.values[m]) {
                        out.push(Violation::new("endpoints", format!("F[{f}] has the wrong source or target")));
                    }
                    out.extend(ff.check().into_iter().map(|v| Violation::new(v.kind, format!("F[{f}]: {}", v.detail))));
                }
            }
            let id = PointedMap::identity(n);
            if let Some(fid) = self.get(&id) {
                if !fid.equals(&RelFunctor::identity(self.values[n].clone())) {
                    out.push(Violation::new("identity", format!("F(id<{n}>) is not the identity")));
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for n in 0..=b {
            for m in 0..=b {
                for p in 0..=b {
                    for f in &maps[n][m] {
                        for g in &maps[m][p] {
                            let composite = self.apply(f).then(self.apply(g));
                            if !self.apply(&g.after(f)).equals(&composite) {
                                out.push(Violation::new("composition", format!("F([{g}] o [{f}]) != F[{g}] o F[{f}]")));
                            }
                        }
                    }
                }
            }
        }
        if let Some(ws) = &self.segal {
            for (n, w) in ws.iter().enumerate() {
                out.extend(w.verify().into_iter().map(|v| Violation::new(v.kind, format!("segal <{n}>: {}", v.detail))));
            }
        }
        out
    }
}
