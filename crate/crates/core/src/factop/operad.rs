use super::{full, min_element, Subset};
use crate::fincat::Violation;

/// Colors and multiarrows of `Fact_n`. A multiarrow `(S_1, .., S_k) -> T`
/// exists iff the `S_i` are pairwise disjoint with union `T`.
#[derive(Clone, Debug)]
pub struct FactOperad {
    pub n: usize,
    pub colors: Vec<Subset>,
}

impl FactOperad {
    pub fn build(n: usize) -> Self {
        FactOperad { n, colors: (0..=full(n)).collect() }
    }

    pub fn has_multiarrow(sources: &[Subset], target: Subset) -> bool {
        let mut seen = 0;
        for &s in sources {
            if s & seen != 0 {
                return false;
            }
            seen |= s;
        }
        seen == target
    }

    /// Empty sources first, then nonempty ones by increasing minimum.
    pub fn is_canonical(sources: &[Subset]) -> bool {
        let key = |s: Subset| min_element(s).unwrap_or(0);
        sources.windows(2).all(|w| key(w[0]) < key(w[1]) || (w[0] == 0 && w[1] == 0))
    }

    /// Canonical reordering of a source tuple, with the arrangement `arr`
    /// such that `sources[p] = canonical[arr[p]]`.
    pub fn canonical_form(sources: &[Subset]) -> (Vec<Subset>, Vec<usize>) {
        let mut order: Vec<usize> = (0..sources.len()).collect();
        order.sort_by_key(|&p| (min_element(sources[p]).unwrap_or(0), p));
        let canonical = order.iter().map(|&p| sources[p]).collect();
        let mut arr = vec![0; sources.len()];
        for (rank, &p) in order.iter().enumerate() {
            arr[p] = rank;
        }
        (canonical, arr)
    }

    /// Canonical multiarrows of the given arity, as (sources, target).
    pub fn multiarrows(&self, arity: usize) -> Vec<(Vec<Subset>, Subset)> {
        let mut out = Vec::new();
        // Assign each element to a slot or to none; then keep canonical tuples.
        let slots = arity + 1;
        let total = slots.pow(self.n as u32);
        for code in 0..total {
            let mut sources = vec![0 as Subset; arity];
            let mut c = code;
            for i in 0..self.n {
                let slot = c % slots;
                c /= slots;
                if slot < arity {
                    sources[slot] |= 1 << i;
                }
            }
            if Self::is_canonical(&sources) {
                let t = sources.iter().fold(0, |a, &s| a | s);
                out.push((sources, t));
            }
        }
        out.sort();
        out
    }

    /// Substituting multiarrows into every slot, and permuting sources,
    /// stays within the operad.
    pub fn check_closure(&self, max_arity: usize) -> Vec<Violation> {
        let mut out = Vec::new();
        for k in 0..=max_arity {
            for (sources, t) in self.multiarrows(k) {
                for slot in 0..k {
                    for j in 0..=max_arity.saturating_sub(k) {
                        for (inner, it) in self.multiarrows(j) {
                            if it != sources[slot] {
                                continue;
                            }
                            let mut composite = sources[..slot].to_vec();
                            composite.extend(&inner);
                            composite.extend(&sources[slot + 1..]);
                            if !Self::has_multiarrow(&composite, t) {
                                out.push(Violation::new("closure", format!("substitution into {sources:?} leaves the operad")));
                            }
                        }
                    }
                }
                let mut rotated = sources.clone();
                rotated.rotate_left(1.min(k));
                if !Self::has_multiarrow(&rotated, t) {
                    out.push(Violation::new("closure", format!("permutation of {sources:?} leaves the operad")));
                }
            }
        }
        out
    }
}
