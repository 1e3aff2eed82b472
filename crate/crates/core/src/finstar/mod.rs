//! Finite pointed sets: classification and factorization of based maps,
//! the `nabla` model of the opposite simplex category, and truncated twisted
//! arrow categories of active maps.

mod nabla;
mod pointed;
mod truncation;

pub use nabla::{delta_to_nabla, MonotoneMap, NablaMap};
pub use pointed::{active_maps, all_maps, rho, Classification, PointedMap, PointedMapError};
pub use truncation::{enumerate_tw_active, ActiveTruncation, TwActive};

use crate::fincat::Violation;

/// Strongly inert maps `<n> -> <k>` are exactly the `rho^S` with `|S| = k`.
fn strongly_inert_maps(n: usize, k: usize) -> Vec<PointedMap> {
    all_maps(n, k).into_iter().filter(|f| f.classify().strongly_inert).collect()
}

/// For every `f: <n> -> <m>` with `n, m <= bound`, searches all
/// (strongly inert, active) pairs and checks there is exactly one, and that
/// `factorize` returns it.
pub fn check_factorization(bound: usize) -> Vec<Violation> {
    let mut out = Vec::new();
    for n in 0..=bound {
        for m in 0..=bound {
            let pairs: Vec<(PointedMap, PointedMap)> = (0..=n)
                .flat_map(|k| {
                    let acts = active_maps(k, m);
                    strongly_inert_maps(n, k)
                        .into_iter()
                        .flat_map(move |i| acts.clone().into_iter().map(move |a| (i.clone(), a)))
                })
                .collect();
            for f in all_maps(n, m) {
                let found: Vec<_> = pairs.iter().filter(|(i, a)| a.after(i) == f).collect();
                let claimed = f.factorize();
                if found.len() != 1 {
                    out.push(Violation::new("uniqueness", format!("{f} has {} factorizations", found.len())));
                } else if *found[0] != claimed {
                    out.push(Violation::new("factorize", format!("factorize({f}) disagrees with search")));
                }
            }
        }
    }
    out
}

/// Functoriality, hom-set bijectivity and the inert/active dictionary for
/// `delta_to_nabla` on `[n], [m]` with `n, m <= bound`.
pub fn check_nabla(bound: usize) -> Vec<Violation> {
    let mut out = Vec::new();
    for n in 0..=bound {
        out.extend(
            (delta_to_nabla(&MonotoneMap::identity(n)) != NablaMap::identity(n))
                .then(|| Violation::new("identity", format!("phi(id[{n}]) is not the identity"))),
        );
        for m in 0..=bound {
            let us = MonotoneMap::all(n, m);
            let mut images: Vec<NablaMap> = us.iter().map(delta_to_nabla).collect();
            for (u, p) in us.iter().zip(&images) {
                if !p.is_valid() {
                    out.push(Violation::new("range", format!("phi({:?}) is not a nabla map", u.table)));
                }
                if u.is_interval_inclusion() != p.interior_preimages_unique() {
                    out.push(Violation::new("inert", format!("inert dictionary fails at {:?}", u.table)));
                }
                if u.is_endpoint_preserving() != p.extremal_preimages_singleton() {
                    out.push(Violation::new("active", format!("active dictionary fails at {:?}", u.table)));
                }
            }
            let mut all = NablaMap::all(m, n);
            images.sort_by(|a, b| a.table.cmp(&b.table));
            all.sort_by(|a, b| a.table.cmp(&b.table));
            if images != all {
                out.push(Violation::new("bijection", format!("phi is not bijective on hom([{n}], [{m}])")));
            }
            for k in 0..=bound {
                for u in &us {
                    for v in MonotoneMap::all(m, k) {
                        let lhs = delta_to_nabla(&v.after(u));
                        let rhs = delta_to_nabla(u).after(&delta_to_nabla(&v));
                        if lhs != rhs {
                            out.push(Violation::new(
                                "functor",
                                format!("phi(v u) != phi(u) phi(v) at u={:?}, v={:?}", u.table, v.table),
                            ));
                        }
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests;
