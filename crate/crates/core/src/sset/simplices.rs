use std::collections::HashMap;
use std::sync::Arc;

use super::nerve::{nerve_truncate, Nerve};
use super::simplicial::{monotone_maps, TruncatedSSet};
use crate::fincat::{FinCategory, MorId};

/// The category of simplices of `X`, restricted to simplices of dimension
/// at most `d`. A morphism `(k, s) -> (l, t)` is a monotone `[k] -> [l]`
/// pulling `t` back to `s`.
#[derive(Debug, Clone)]
pub struct SimplexCategory {
    pub category: Arc<FinCategory>,
    /// `(dimension, simplex id)` for each object.
    pub objects: Vec<(usize, usize)>,
    /// `(map, target object)` for each morphism.
    pub morphisms: Vec<(Vec<usize>, usize)>,
}

pub fn category_of_simplices(x: &TruncatedSSet, d: usize) -> SimplexCategory {
    let d = d.min(x.dim());
    let objects: Vec<(usize, usize)> = (0..=d).flat_map(|k| (0..x.count(k)).map(move |s| (k, s))).collect();
    let pos: HashMap<(usize, usize), usize> = objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();
    let mut morphisms = Vec::new();
    let mut endpoints = Vec::new();
    let mut index = HashMap::new();
    for k in 0..=d {
        for (j, &(l, t)) in objects.iter().enumerate() {
            for alpha in monotone_maps(k, l) {
                let s = x.pullback(l, t, &alpha);
                index.insert((alpha.clone(), j), morphisms.len());
                morphisms.push((alpha, j));
                endpoints.push((pos[&(k, s)], j));
            }
        }
    }
    // Reorder so that morphisms are grouped by source object.
    let mut order: Vec<usize> = (0..morphisms.len()).collect();
    order.sort_by_key(|&m| (endpoints[m].0, endpoints[m].1, morphisms[m].0.clone()));
    let morphisms: Vec<_> = order.iter().map(|&m| morphisms[m].clone()).collect();
    let endpoints: Vec<_> = order.iter().map(|&m| endpoints[m]).collect();
    let index: HashMap<(Vec<usize>, usize), usize> =
        morphisms.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let identities = objects
        .iter()
        .enumerate()
        .map(|(i, &(k, _))| index[&((0..=k).collect::<Vec<_>>(), i)])
        .collect();
    let object_labels = objects.iter().map(|&(k, s)| format!("{k}:{}", x.label(k, s))).collect();
    let morphism_labels = morphisms
        .iter()
        .zip(&endpoints)
        .map(|((alpha, _), &(a, b))| {
            let vals: Vec<String> = alpha.iter().map(usize::to_string).collect();
            format!("[{}]:{a}->{b}", vals.join(""))
        })
        .collect();
    let (ms, idx) = (morphisms.clone(), index);
    let rule = Arc::new(move |g: MorId, f: MorId| {
        let (beta, target) = &ms[g];
        let (alpha, _) = &ms[f];
        let comp: Vec<usize> = alpha.iter().map(|&a| beta[a]).collect();
        idx.get(&(comp, *target)).copied()
    });
    let category = Arc::new(FinCategory::from_rule(
        object_labels,
        morphism_labels,
        endpoints,
        identities,
        rule,
    ));
    SimplexCategory { category, objects, morphisms }
}

/// `epsilon_X` on one chain of `Delta_{/X}`: vertex `i` goes to the image
/// of the last vertex of the `i`-th simplex in the final one.
pub fn epsilon_chain(x: &TruncatedSSet, sc: &SimplexCategory, start: usize, chain: &[MorId]) -> usize {
    let mut objs = vec![start];
    for &f in chain {
        objs.push(sc.morphisms[f].1);
    }
    let m = chain.len();
    let (km, sm) = sc.objects[objs[m]];
    let mut f = vec![0; m + 1];
    for i in 0..=m {
        let mut v = sc.objects[objs[i]].0;
        for &g in &chain[i..] {
            v = sc.morphisms[g].0[v];
        }
        f[i] = v;
    }
    debug_assert!(f[m] == km);
    x.pullback(km, sm, &f)
}

/// Table of `epsilon_X: N(Delta_{/X}) -> X` in every dimension up to `m`.
#[derive(Debug, Clone)]
pub struct Epsilon {
    pub simplices: SimplexCategory,
    pub nerve: Nerve,
    pub map: Vec<Vec<usize>>,
}

pub fn epsilon(x: &TruncatedSSet, d: usize, m: usize) -> Epsilon {
    assert!(m <= x.dim(), "target truncation too small");
    let sc = category_of_simplices(x, d);
    let nerve = nerve_truncate(&sc.category, m);
    let map = (0..=m)
        .map(|k| {
            (0..nerve.sset.count(k))
                .map(|s| {
                    let (start, chain) = nerve.chain(k, s);
                    epsilon_chain(x, &sc, start, &chain)
                })
                .collect()
        })
        .collect();
    Epsilon { simplices: sc, nerve, map }
}

impl Epsilon {
    /// First failing `(kind, dimension, simplex)`, if any.
    pub fn simplicial_violation(&self, x: &TruncatedSSet) -> Option<(&'static str, usize, usize)> {
        let n = &self.nerve.sset;
        let top = self.map.len() - 1;
        for k in 0..=top {
            for s in 0..n.count(k) {
                let e = self.map[k][s];
                for i in 0..=k {
                    if k > 0 && self.map[k - 1][n.face(k, s, i)] != x.face(k, e, i) {
                        return Some(("face", k, s));
                    }
                    if k < top && self.map[k + 1][n.degeneracy(k, s, i)] != x.degeneracy(k, e, i) {
                        return Some(("degeneracy", k, s));
                    }
                }
            }
        }
        None
    }

    /// The marked edge set `M_(X,S)` on morphisms of `Delta_{/X}`.
    pub fn marking(&self, x: &TruncatedSSet, edges: &[usize]) -> Vec<bool> {
        let sc = &self.simplices;
        let c = &sc.category;
        c.morphisms()
            .map(|f| {
                let edge = epsilon_chain(x, sc, c.dom(f), &[f]);
                let degenerate = x.is_degenerate(1, edge);
                let (alpha, target) = &sc.morphisms[f];
                let (l, t) = sc.objects[*target];
                let vertex_inclusion = l == 1 && *alpha == [0] && edges.contains(&t);
                degenerate || vertex_inclusion
            })
            .collect()
    }
}
