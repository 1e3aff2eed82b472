//! Small categories used by tests, the check suite and the CLI.

use std::sync::Arc;

use crate::fincat::{CategoryBuilder, FinCategory, MorId};
use crate::permcat::{PermRelCategory, TableTensor};
use crate::relcat::RelCategory;

/// The poset `0 < 1 < .. < n` as a category, objects labelled by integers.
pub fn chain(n: usize) -> Arc<FinCategory> {
    let mut b = CategoryBuilder::new();
    let objs: Vec<_> = (0..=n).map(|i| b.object(i.to_string())).collect();
    let mut arrow = vec![vec![None; n + 1]; n + 1];
    for i in 0..=n {
        arrow[i][i] = Some(b.identity(objs[i]));
        for j in i + 1..=n {
            arrow[i][j] = Some(b.morphism(format!("{i}<{j}"), objs[i], objs[j]));
        }
    }
    for i in 0..=n {
        for j in i..=n {
            for k in j..=n {
                let (f, g, h) = (arrow[i][j].unwrap(), arrow[j][k].unwrap(), arrow[i][k].unwrap());
                b.compose(g, f, h);
            }
        }
    }
    Arc::new(b.build().expect("posets are categories"))
}

/// The free arrow `[1]`.
pub fn arrow() -> Arc<FinCategory> {
    chain(1)
}

/// The indiscrete (chaotic) category on `n` objects: one morphism between
/// any ordered pair.
pub fn indiscrete(n: usize) -> Arc<FinCategory> {
    let mut b = CategoryBuilder::new();
    let objs: Vec<_> = (0..n).map(|i| b.object(i.to_string())).collect();
    let mut m = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            m[i][j] = if i == j {
                b.identity(objs[i])
            } else {
                b.morphism(format!("{i}>{j}"), objs[i], objs[j])
            };
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                b.compose(m[j][k], m[i][j], m[i][k]);
            }
        }
    }
    Arc::new(b.build().expect("indiscrete categories are categories"))
}

/// One-object category of a finite group given by its multiplication table
/// (`mul[a][b] = a * b`, element 0 the unit).
pub fn group(name: &str, labels: &[&str], mul: &[Vec<usize>]) -> Arc<FinCategory> {
    let mut b = CategoryBuilder::new();
    let o = b.object(name);
    let mut ids: Vec<MorId> = vec![b.identity(o)];
    for l in &labels[1..] {
        ids.push(b.morphism(*l, o, o));
    }
    for (x, row) in mul.iter().enumerate() {
        for (y, &xy) in row.iter().enumerate() {
            b.compose(ids[x], ids[y], ids[xy]);
        }
    }
    Arc::new(b.build().expect("group tables are associative"))
}

/// The discrete category on `n` objects.
pub fn discrete(n: usize) -> Arc<FinCategory> {
    let mut b = CategoryBuilder::new();
    for i in 0..n {
        b.object(i.to_string());
    }
    Arc::new(b.build().expect("discrete categories are categories"))
}

/// Tensor on a thin category whose objects are totally ordered by id:
/// `a (x) b = max(a, b)`, morphisms determined by their endpoints, trivial braid.
fn thin_max(c: &Arc<FinCategory>) -> TableTensor {
    let cc = c.clone();
    TableTensor::tabulate(
        c,
        0,
        |a, b| a.max(b),
        move |f, g| {
            let d = cc.dom(f).max(cc.dom(g));
            let e = cc.cod(f).max(cc.cod(g));
            cc.hom(d, e)[0]
        },
        |a, b| c.identity(a.max(b)),
    )
}

fn perm(rel: RelCategory, tensor: TableTensor) -> PermRelCategory {
    PermRelCategory::new(Arc::new(rel), Arc::new(tensor)).expect("fixture satisfies the permutative laws")
}

/// `Z/2` as a discrete category, tensor given by addition.
pub fn z2_discrete() -> PermRelCategory {
    let c = discrete(2);
    let t = TableTensor::tabulate(&c, 0, |a, b| (a + b) % 2, |f, g| (f + g) % 2, |a, b| (a + b) % 2);
    perm(RelCategory::minimal(c), t)
}

/// The poset `0 < .. < n` with tensor `max` and unit `0`.
pub fn max_chain(n: usize, weq: &[&str]) -> PermRelCategory {
    let c = chain(n);
    let t = thin_max(&c);
    let mut ids: Vec<MorId> = c.objects().map(|o| c.identity(o)).collect();
    ids.extend(weq.iter().map(|l| c.morphism_by_label(l).expect("label of chain")));
    perm(RelCategory::from_ids(c, &ids, false).expect("marking is closed"), t)
}

/// The two-object indiscrete category with tensor `max`; every morphism is
/// an isomorphism, so the only marking is the maximal one.
pub fn indiscrete2_max() -> PermRelCategory {
    let c = indiscrete(2);
    let t = thin_max(&c);
    perm(RelCategory::minimal(c), t)
}

/// Objects `Z/2`, each with automorphism group `Z/2 = {1, t}`. Tensor adds
/// degrees and multiplies automorphisms; the braid on two odd objects is `t`.
pub fn parity() -> PermRelCategory {
    let mut b = CategoryBuilder::new();
    let even = b.object("0");
    let odd = b.object("1");
    let t0 = b.morphism("t0", even, even);
    let t1 = b.morphism("t1", odd, odd);
    let (i0, i1) = (b.identity(even), b.identity(odd));
    b.compose(t0, t0, i0).compose(t1, t1, i1);
    let c = Arc::new(b.build().expect("parity category"));
    // morphism -> (degree, sign)
    let parts = |f: MorId| (c.dom(f), usize::from(f == t0 || f == t1));
    let by_parts = |deg: usize, sign: usize| match (deg, sign) {
        (0, 0) => i0,
        (1, 0) => i1,
        (0, _) => t0,
        _ => t1,
    };
    let t = TableTensor::tabulate(
        &c,
        even,
        |a, b| (a + b) % 2,
        |f, g| {
            let ((df, sf), (dg, sg)) = (parts(f), parts(g));
            by_parts((df + dg) % 2, (sf + sg) % 2)
        },
        |a, b| by_parts((a + b) % 2, a * b),
    );
    perm(RelCategory::minimal(c), t)
}

/// A permutative fixture together with a name naming its marking.
#[derive(Clone, Debug)]
pub struct PermFixture {
    pub name: &'static str,
    pub perm: PermRelCategory,
}

/// Every permutative fixture and every marking used by the check suite.
pub fn perm_fixtures() -> Vec<PermFixture> {
    vec![
        PermFixture { name: "z2", perm: z2_discrete() },
        PermFixture { name: "maxposet-min", perm: max_chain(1, &[]) },
        PermFixture { name: "maxposet", perm: max_chain(1, &["0<1"]) },
        PermFixture { name: "indiscrete2", perm: indiscrete2_max() },
        PermFixture { name: "parity", perm: parity() },
        PermFixture { name: "chain2-top", perm: max_chain(2, &["1<2"]) },
    ]
}
