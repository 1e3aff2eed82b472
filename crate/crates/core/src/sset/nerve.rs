use std::collections::HashMap;
use std::sync::Arc;

use super::simplicial::{EzForm, TruncatedSSet};
use crate::fincat::{FinCategory, MorId, ObjId};

/// The nerve of a finite category truncated at `dim`, remembering which
/// chain each nondegenerate simplex is.
#[derive(Debug, Clone)]
pub struct Nerve {
    pub sset: TruncatedSSet,
    pub category: Arc<FinCategory>,
    /// Nondegenerate `j`-simplices for `j >= 1`: chains of `j` non-identities.
    chains: Vec<Vec<Vec<MorId>>>,
    chain_index: Vec<HashMap<Vec<MorId>, usize>>,
}

impl Nerve {
    /// The composable chain `(start, [f_1, .., f_k])` behind a `k`-simplex.
    pub fn chain(&self, k: usize, s: usize) -> (ObjId, Vec<MorId>) {
        let e = self.sset.ez(k, s);
        let c = &self.category;
        if e.dim == 0 {
            let o = e.nondeg;
            return (o, vec![c.identity(o); k]);
        }
        let nd = &self.chains[e.dim][e.nondeg];
        let start = c.dom(nd[0]);
        let mut out = Vec::with_capacity(k);
        let mut here = start;
        for p in 1..=k {
            if e.epi[p] > e.epi[p - 1] {
                let f = nd[e.epi[p] - 1];
                out.push(f);
                here = c.cod(f);
            } else {
                out.push(c.identity(here));
            }
        }
        (start, out)
    }

    /// Simplex id of an arbitrary composable chain (identities allowed).
    pub fn simplex_of(&self, start: ObjId, chain: &[MorId]) -> usize {
        let k = chain.len();
        let (e, _) = reduce(&self.category, start, chain, &self.chain_index);
        self.sset.id_of(k, &e).expect("chain within bound")
    }
}

fn reduce(
    c: &FinCategory,
    start: ObjId,
    chain: &[MorId],
    index: &[HashMap<Vec<MorId>, usize>],
) -> (EzForm, Vec<MorId>) {
    let mut epi = vec![0];
    let mut reduced = Vec::new();
    for &f in chain {
        if !c.is_identity(f) {
            reduced.push(f);
        }
        epi.push(reduced.len());
    }
    let dim = reduced.len();
    let nondeg = if dim == 0 { start } else { index[dim][&reduced] };
    (EzForm { epi, dim, nondeg }, reduced)
}

pub fn nerve_truncate(c: &Arc<FinCategory>, dim: usize) -> Nerve {
    let mut chains: Vec<Vec<Vec<MorId>>> = vec![Vec::new()];
    if dim >= 1 {
        chains.push(c.morphisms().filter(|&f| !c.is_identity(f)).map(|f| vec![f]).collect());
    }
    for j in 2..=dim {
        let mut next = Vec::new();
        for ch in &chains[j - 1] {
            let last = *ch.last().expect("nonempty chain");
            for &g in c.outgoing(c.cod(last)) {
                if !c.is_identity(g) {
                    let mut ext = ch.clone();
                    ext.push(g);
                    next.push(ext);
                }
            }
        }
        chains.push(next);
    }
    let chain_index: Vec<HashMap<Vec<MorId>, usize>> = chains
        .iter()
        .map(|cs| cs.iter().cloned().enumerate().map(|(i, ch)| (ch, i)).collect())
        .collect();
    let mut labels = vec![c.object_labels().to_vec()];
    let mut faces = vec![Vec::new()];
    for j in 1..=dim {
        labels.push(
            chains[j]
                .iter()
                .map(|ch| ch.iter().map(|&f| c.morphism_label(f)).collect::<Vec<_>>().join(";"))
                .collect(),
        );
        let fj = chains[j]
            .iter()
            .map(|ch| {
                let start = c.dom(ch[0]);
                (0..=j)
                    .map(|i| {
                        let (s, face): (ObjId, Vec<MorId>) = if i == 0 {
                            (c.cod(ch[0]), ch[1..].to_vec())
                        } else if i == j {
                            (start, ch[..j - 1].to_vec())
                        } else {
                            let mut f = ch[..i - 1].to_vec();
                            f.push(c.compose(ch[i], ch[i - 1]).expect("composable chain"));
                            f.extend_from_slice(&ch[i + 1..]);
                            (start, f)
                        };
                        reduce(c, s, &face, &chain_index).0
                    })
                    .collect()
            })
            .collect();
        faces.push(fj);
    }
    let sset = TruncatedSSet::from_nondegenerate(dim, labels, faces).expect("nerve satisfies simplicial identities");
    Nerve { sset, category: c.clone(), chains, chain_index }
}
