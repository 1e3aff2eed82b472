use std::collections::HashMap;

use serde::Serialize;

/// A monotone surjection `[k] -> [j]` stored as its value list.
pub type Epi = Vec<usize>;

/// Every simplex is `theta^* tau` for a unique epi `theta` and a
/// nondegenerate `tau` (Eilenberg-Zilber).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct EzForm {
    pub epi: Epi,
    pub dim: usize,
    pub nondeg: usize,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SSetError {
    #[error("face {face} of nondegenerate {dim}-simplex {simplex} is malformed")]
    BadFace { dim: usize, simplex: usize, face: usize },
    #[error("simplicial identity {identity} fails at dimension {dim}, simplex {simplex}")]
    Identity { identity: &'static str, dim: usize, simplex: usize },
}

/// A simplicial set truncated at dimension `dim`, with all simplices
/// (degenerate ones included) and face/degeneracy tables stored explicitly.
#[derive(Debug, Clone)]
pub struct TruncatedSSet {
    dim: usize,
    nondeg_labels: Vec<Vec<String>>,
    ez: Vec<Vec<EzForm>>,
    index: Vec<HashMap<EzForm, usize>>,
    faces: Vec<Vec<Vec<usize>>>,
    degens: Vec<Vec<Vec<usize>>>,
}

pub fn identity_epi(k: usize) -> Epi {
    (0..=k).collect()
}

pub fn is_surjective_onto(values: &[usize], j: usize) -> bool {
    values.first() == Some(&0) && values.last() == Some(&j) && values.windows(2).all(|w| w[1] - w[0] <= 1)
}

/// Monotone surjections `[k] -> [j]` in lexicographic order.
pub fn epis(k: usize, j: usize) -> Vec<Epi> {
    monotone_maps(k, j).into_iter().filter(|m| is_surjective_onto(m, j)).collect()
}

/// All monotone maps `[k] -> [l]` in lexicographic order.
pub fn monotone_maps(k: usize, l: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, l: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k + 1 {
            out.push(cur.clone());
            return;
        }
        let lo = cur.last().copied().unwrap_or(0);
        for v in lo..=l {
            cur.push(v);
            go(k, l, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, l, &mut Vec::new(), &mut out);
    out
}

impl TruncatedSSet {
    /// Builds the full truncation from nondegenerate data. `nondeg_faces[j][t][i]`
    /// is the `i`-th face of nondegenerate `j`-simplex `t`, in EZ form.
    pub fn from_nondegenerate(
        dim: usize,
        nondeg_labels: Vec<Vec<String>>,
        nondeg_faces: Vec<Vec<Vec<EzForm>>>,
    ) -> Result<Self, SSetError> {
        let top = nondeg_labels.len().saturating_sub(1).min(dim);
        let nd_count = |j: usize| nondeg_labels.get(j).map_or(0, Vec::len);
        for j in 1..=top {
            for t in 0..nd_count(j) {
                let fs = &nondeg_faces[j][t];
                if fs.len() != j + 1 {
                    return Err(SSetError::BadFace { dim: j, simplex: t, face: fs.len() });
                }
                for (i, f) in fs.iter().enumerate() {
                    if f.dim >= j || f.nondeg >= nd_count(f.dim) || !is_surjective_onto(&f.epi, f.dim) || f.epi.len() != j {
                        return Err(SSetError::BadFace { dim: j, simplex: t, face: i });
                    }
                }
            }
        }
        let mut ez = Vec::new();
        let mut index = Vec::new();
        for k in 0..=dim {
            let mut list = Vec::new();
            for j in (0..=k.min(top)).rev() {
                for epi in epis(k, j) {
                    for t in 0..nd_count(j) {
                        list.push(EzForm { epi: epi.clone(), dim: j, nondeg: t });
                    }
                }
            }
            index.push(list.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect::<HashMap<_, _>>());
            ez.push(list);
        }
        let lookup = |index: &Vec<HashMap<EzForm, usize>>, k: usize, e: &EzForm| index[k][e];
        let mut faces = vec![Vec::new()];
        for k in 1..=dim {
            let mut fk = Vec::with_capacity(ez[k].len());
            for e in &ez[k] {
                let row = (0..=k)
                    .map(|i| {
                        let mut theta = e.epi.clone();
                        theta.remove(i);
                        let face = if is_surjective_onto(&theta, e.dim) {
                            EzForm { epi: theta, dim: e.dim, nondeg: e.nondeg }
                        } else {
                            let p = e.epi[i];
                            let shifted: Vec<usize> = theta.iter().map(|&v| if v > p { v - 1 } else { v }).collect();
                            let f = &nondeg_faces[e.dim][e.nondeg][p];
                            EzForm {
                                epi: shifted.iter().map(|&v| f.epi[v]).collect(),
                                dim: f.dim,
                                nondeg: f.nondeg,
                            }
                        };
                        lookup(&index, k - 1, &face)
                    })
                    .collect();
                fk.push(row);
            }
            faces.push(fk);
        }
        let mut degens = Vec::new();
        for k in 0..dim {
            let dk = ez[k]
                .iter()
                .map(|e| {
                    (0..=k)
                        .map(|i| {
                            let mut theta = e.epi.clone();
                            theta.insert(i, e.epi[i]);
                            lookup(&index, k + 1, &EzForm { epi: theta, dim: e.dim, nondeg: e.nondeg })
                        })
                        .collect()
                })
                .collect();
            degens.push(dk);
        }
        let x = TruncatedSSet { dim, nondeg_labels, ez, index, faces, degens };
        x.check_identities()?;
        Ok(x)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn count(&self, k: usize) -> usize {
        self.ez[k].len()
    }

    pub fn nondegenerate_count(&self, k: usize) -> usize {
        self.nondeg_labels.get(k).map_or(0, Vec::len)
    }

    pub fn is_degenerate(&self, k: usize, s: usize) -> bool {
        self.ez[k][s].dim < k
    }

    pub fn ez(&self, k: usize, s: usize) -> &EzForm {
        &self.ez[k][s]
    }

    pub fn id_of(&self, k: usize, e: &EzForm) -> Option<usize> {
        self.index.get(k)?.get(e).copied()
    }

    /// Simplex id of nondegenerate `t` in dimension `k`.
    pub fn nondegenerate(&self, k: usize, t: usize) -> usize {
        self.index[k][&EzForm { epi: identity_epi(k), dim: k, nondeg: t }]
    }

    pub fn label(&self, k: usize, s: usize) -> String {
        let e = &self.ez[k][s];
        let base = &self.nondeg_labels[e.dim][e.nondeg];
        if e.dim == k {
            base.clone()
        } else {
            let epi: Vec<String> = e.epi.iter().map(usize::to_string).collect();
            format!("s[{}]{}", epi.join(""), base)
        }
    }

    pub fn face(&self, k: usize, s: usize, i: usize) -> usize {
        self.faces[k][s][i]
    }

    pub fn degeneracy(&self, k: usize, s: usize, i: usize) -> usize {
        self.degens[k][s][i]
    }

    /// Vertex `i` of a `k`-simplex.
    pub fn vertex(&self, k: usize, s: usize, i: usize) -> usize {
        let e = &self.ez[k][s];
        let v = e.epi[i];
        self.pullback(e.dim, self.nondegenerate(e.dim, e.nondeg), &[v])
    }

    /// `alpha^* s` for a monotone `alpha: [l] -> [k]` given by its values.
    pub fn pullback(&self, k: usize, s: usize, alpha: &[usize]) -> usize {
        let e = &self.ez[k][s];
        let comp: Vec<usize> = alpha.iter().map(|&a| e.epi[a]).collect();
        let mut image = comp.clone();
        image.dedup();
        let mut face = self.nondegenerate(e.dim, e.nondeg);
        let mut fd = e.dim;
        for m in (0..=e.dim).rev() {
            if image.binary_search(&m).is_err() {
                face = self.face(fd, face, m);
                fd -= 1;
            }
        }
        let eta: Vec<usize> = comp.iter().map(|v| image.binary_search(v).expect("in image")).collect();
        let fe = &self.ez[fd][face];
        self.index[alpha.len() - 1][&EzForm {
            epi: eta.iter().map(|&v| fe.epi[v]).collect(),
            dim: fe.dim,
            nondeg: fe.nondeg,
        }]
    }

    /// Checks all five families of simplicial identities within the bound.
    pub fn check_identities(&self) -> Result<(), SSetError> {
        let fail = |identity, dim, simplex| Err(SSetError::Identity { identity, dim, simplex });
        for k in 2..=self.dim {
            for x in 0..self.count(k) {
                for j in 1..=k {
                    for i in 0..j {
                        if self.face(k - 1, self.face(k, x, j), i) != self.face(k - 1, self.face(k, x, i), j - 1) {
                            return fail("d_i d_j = d_{j-1} d_i", k, x);
                        }
                    }
                }
            }
        }
        for k in 0..self.dim {
            for x in 0..self.count(k) {
                for i in 0..=k {
                    for j in i..=k {
                        if k + 2 <= self.dim
                            && self.degeneracy(k + 1, self.degeneracy(k, x, j), i)
                                != self.degeneracy(k + 1, self.degeneracy(k, x, i), j + 1)
                        {
                            return fail("s_i s_j = s_{j+1} s_i", k, x);
                        }
                    }
                }
                for j in 0..=k {
                    let y = self.degeneracy(k, x, j);
                    for i in 0..=k + 1 {
                        let lhs = self.face(k + 1, y, i);
                        let ok = if i == j || i == j + 1 {
                            lhs == x
                        } else if k == 0 {
                            true
                        } else if i < j {
                            lhs == self.degeneracy(k - 1, self.face(k, x, i), j - 1)
                        } else {
                            lhs == self.degeneracy(k - 1, self.face(k, x, i - 1), j)
                        };
                        if !ok {
                            return fail("d_i s_j", k, x);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Copy with nondegenerate simplices relabelled and renumbered per dimension.
    pub fn relabel(&self, perms: &[Vec<usize>]) -> Result<Self, SSetError> {
        let mut labels = vec![Vec::new(); self.nondeg_labels.len()];
        let mut faces: Vec<Vec<Vec<EzForm>>> = vec![Vec::new(); self.nondeg_labels.len()];
        for (j, ls) in self.nondeg_labels.iter().enumerate() {
            labels[j] = vec![String::new(); ls.len()];
            faces[j] = vec![Vec::new(); ls.len()];
            for t in 0..ls.len() {
                let nt = perms[j][t];
                labels[j][nt] = format!("r{}", ls[t]);
                if j > 0 {
                    let s = self.nondegenerate(j, t);
                    faces[j][nt] = (0..=j)
                        .map(|i| {
                            let e = self.ez(j - 1, self.face(j, s, i));
                            EzForm { epi: e.epi.clone(), dim: e.dim, nondeg: perms[e.dim][e.nondeg] }
                        })
                        .collect();
                }
            }
        }
        TruncatedSSet::from_nondegenerate(self.dim, labels, faces)
    }
}

/// A truncated simplicial set with a set of marked edges.
#[derive(Debug, Clone)]
pub struct MarkedSSet {
    pub underlying: TruncatedSSet,
    pub marked: Vec<bool>,
}

impl MarkedSSet {
    /// Marks `edges` together with every degenerate edge.
    pub fn new(underlying: TruncatedSSet, edges: &[usize]) -> Self {
        let mut marked: Vec<bool> = (0..underlying.count(1)).map(|e| underlying.is_degenerate(1, e)).collect();
        for &e in edges {
            marked[e] = true;
        }
        MarkedSSet { underlying, marked }
    }

    pub fn degenerate_edges_marked(&self) -> bool {
        (0..self.underlying.count(1)).all(|e| !self.underlying.is_degenerate(1, e) || self.marked[e])
    }
}
