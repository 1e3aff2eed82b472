use std::sync::Arc;

use serde::Serialize;

use super::category::{FinCategory, ObjId};
use super::constructions::{fiber_product, slice, twisted_arrow, FiberProduct};
use crate::sset::{homology, nerve_truncate};

/// Connectivity and first homology of a 2-truncated nerve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeResult {
    pub component_count: usize,
    pub h1_rank: usize,
    pub h1_torsion: Vec<u64>,
}

impl ProbeResult {
    pub fn looks_contractible(&self) -> bool {
        self.component_count == 1 && self.h1_rank == 0 && self.h1_torsion.is_empty()
    }
}

/// `Tw(C) x_C C_{/c}`, pulled back along the domain projection of `Tw(C)`.
pub fn comma_category(c: &Arc<FinCategory>, over: ObjId) -> FiberProduct {
    let tw = twisted_arrow(c);
    let sl = slice(c, over);
    fiber_product(&tw.domain_projection(), &sl.forget)
}

pub fn comma_probe(c: &Arc<FinCategory>, over: ObjId) -> ProbeResult {
    let comma = comma_category(c, over);
    let nerve = nerve_truncate(&comma.category, 2);
    let h = homology(&nerve.sset);
    ProbeResult {
        component_count: h.pi0,
        h1_rank: h.h1_rank,
        h1_torsion: h.h1_torsion,
    }
}
