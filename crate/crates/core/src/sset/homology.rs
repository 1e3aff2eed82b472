use petgraph::unionfind::UnionFind;
use serde::Serialize;

use super::simplicial::TruncatedSSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Homology {
    pub pi0: usize,
    pub h1_rank: usize,
    pub h1_torsion: Vec<u64>,
}

/// Invariant factors of an integer matrix, by Smith normal form.
pub fn invariant_factors(mut m: Vec<Vec<i128>>) -> Vec<u64> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot on the smallest nonzero entry in the remaining block.
        let Some((pr, pc)) = (t..rows)
            .flat_map(|r| (t..cols).map(move |c| (r, c)))
            .filter(|&(r, c)| m[r][c] != 0)
            .min_by_key(|&(r, c)| m[r][c].abs())
        else {
            break;
        };
        m.swap(t, pr);
        for row in m.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let p = m[t][t];
            let mut dirty = false;
            for r in t + 1..rows {
                let q = m[r][t] / p;
                if q != 0 {
                    for c in t..cols {
                        m[r][c] -= q * m[t][c];
                    }
                }
                dirty |= m[r][t] != 0;
            }
            for c in t + 1..cols {
                let q = m[t][c] / p;
                if q != 0 {
                    for row in m.iter_mut().skip(t) {
                        row[c] -= q * row[t];
                    }
                }
                dirty |= m[t][c] != 0;
            }
            if !dirty {
                // Divisibility: fold any entry not divisible by the pivot back in.
                let bad = (t + 1..rows)
                    .flat_map(|r| (t + 1..cols).map(move |c| (r, c)))
                    .find(|&(r, c)| m[r][c] % p != 0);
                match bad {
                    Some((r, _)) => {
                        for c in t..cols {
                            m[t][c] += m[r][c];
                        }
                        continue;
                    }
                    None => break,
                }
            }
            // A smaller remainder appeared; move it to the pivot.
            let (r, c) = (t..rows)
                .flat_map(|r| (t..cols).map(move |c| (r, c)))
                .filter(|&(r, c)| (r == t || c == t) && m[r][c] != 0)
                .min_by_key(|&(r, c)| m[r][c].abs())
                .expect("nonzero remainder");
            m.swap(t, r);
            for row in m.iter_mut() {
                row.swap(t, c);
            }
        }
        out.push(m[t][t].unsigned_abs() as u64);
        t += 1;
    }
    out
}

fn boundary(x: &TruncatedSSet, k: usize) -> Vec<Vec<i128>> {
    let rows = x.nondegenerate_count(k - 1);
    let cols = x.nondegenerate_count(k);
    let mut m = vec![vec![0i128; cols]; rows];
    for t in 0..cols {
        let s = x.nondegenerate(k, t);
        for i in 0..=k {
            let f = x.face(k, s, i);
            if !x.is_degenerate(k - 1, f) {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                m[x.ez(k - 1, f).nondeg][t] += sign;
            }
        }
    }
    m
}

pub fn connected_components(x: &TruncatedSSet) -> usize {
    let n = x.nondegenerate_count(0);
    let mut uf = UnionFind::new(n);
    if x.dim() >= 1 {
        for t in 0..x.nondegenerate_count(1) {
            let s = x.nondegenerate(1, t);
            let a = x.ez(0, x.face(1, s, 0)).nondeg;
            let b = x.ez(0, x.face(1, s, 1)).nondeg;
            uf.union(a, b);
        }
    }
    let mut reps = uf.into_labeling();
    reps.sort_unstable();
    reps.dedup();
    reps.len()
}

/// `pi_0` and integral `H_1` of the normalized chain complex.
pub fn homology(x: &TruncatedSSet) -> Homology {
    assert!(x.dim() >= 2, "homology needs the 2-skeleton");
    let d1 = invariant_factors(boundary(x, 1));
    let d2 = invariant_factors(boundary(x, 2));
    let c1 = x.nondegenerate_count(1);
    let pi0 = connected_components(x);
    debug_assert_eq!(pi0, x.nondegenerate_count(0) - d1.len());
    Homology {
        pi0,
        h1_rank: c1 - d1.len() - d2.len(),
        h1_torsion: d2.into_iter().filter(|&d| d > 1).collect(),
    }
}
