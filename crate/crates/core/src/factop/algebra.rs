use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::operad::FactOperad;
use super::{elements, full, min_element, parse_subset_key, preimage, subset_key, Subset};
use crate::fincat::{MorId, ObjId, Violation};
use crate::finstar::PointedMap;
use crate::permcat::PermRelCategory;

/// Canonical binary pairs `(S, T)`: `S` empty, or both nonempty with
/// `min S < min T`.
pub fn canonical_pairs(n: usize) -> Vec<(Subset, Subset)> {
    let mut out = Vec::new();
    for s in 0..=full(n) {
        for t in 0..=full(n) {
            if s & t == 0 && is_canonical_pair(s, t) {
                out.push((s, t));
            }
        }
    }
    out
}

fn is_canonical_pair(s: Subset, t: Subset) -> bool {
    s == 0 || (t != 0 && min_element(s) < min_element(t))
}

/// A `Fact_n`-algebra, presented by its nullary map `I -> A(0)` and its
/// binary maps at canonical pairs. Every other structure map is derived:
/// unary maps are identities, `k`-ary maps are left-nested composites of
/// binary ones and non-canonical orders go through the braiding.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactAlgebra {
    pub n: usize,
    /// Indexed by subset bitmask.
    pub obj: Vec<ObjId>,
    pub nullary: MorId,
    pub binary: BTreeMap<(Subset, Subset), MorId>,
}

impl FactAlgebra {
    pub fn at(&self, s: Subset) -> ObjId {
        self.obj[s as usize]
    }

    /// `A(S) (x) A(T) -> A(S u T)` for any disjoint pair.
    pub fn binary_at(&self, c: &PermRelCategory, s: Subset, t: Subset) -> Option<MorId> {
        if is_canonical_pair(s, t) {
            return self.binary.get(&(s, t)).copied();
        }
        let swapped = *self.binary.get(&(t, s))?;
        c.base().compose(swapped, c.braid(self.at(s), self.at(t))?)
    }

    /// The structure map at an arbitrary (not necessarily canonical) source
    /// tuple of pairwise disjoint subsets.
    pub fn structure_map(&self, c: &PermRelCategory, sources: &[Subset]) -> Option<MorId> {
        let base = c.base();
        let Some((&first, rest)) = sources.split_first() else {
            return Some(self.nullary);
        };
        let mut acc = base.identity(self.at(first));
        let mut union = first;
        for &s in rest {
            let widened = c.tensor_mor(acc, base.identity(self.at(s)))?;
            acc = base.compose(self.binary_at(c, union, s)?, widened)?;
            union |= s;
        }
        Some(acc)
    }

    /// Structure map at the decomposition of `s` into singletons.
    pub fn singleton_map(&self, c: &PermRelCategory, s: Subset) -> Option<MorId> {
        let parts: Vec<Subset> = elements(s).into_iter().map(super::singleton).collect();
        self.structure_map(c, &parts)
    }

    /// The tuple of values on singletons.
    pub fn phi(&self) -> Vec<ObjId> {
        (1..=self.n).map(|i| self.at(super::singleton(i))).collect()
    }

    /// `(f_* A)(S) = A(f^{-1} S)` for `f: <n> -> <m>`.
    pub fn pullback(&self, c: &PermRelCategory, f: &PointedMap) -> Option<FactAlgebra> {
        assert_eq!(f.n, self.n, "pullback along a map with the wrong source");
        let obj = (0..=full(f.m)).map(|s| self.at(preimage(f, s))).collect();
        let binary = canonical_pairs(f.m)
            .into_iter()
            .map(|(s, t)| Some(((s, t), self.binary_at(c, preimage(f, s), preimage(f, t))?)))
            .collect::<Option<_>>()?;
        Some(FactAlgebra { n: f.m, obj, nullary: self.nullary, binary })
    }

    /// Unit, associativity and equivariance laws, plus endpoint checks.
    pub fn validate(&self, c: &PermRelCategory) -> Vec<Violation> {
        let base = c.base();
        let mut out = Vec::new();
        let top = full(self.n);
        let pairs = canonical_pairs(self.n);
        if self.obj.len() != top as usize + 1 || self.binary.len() != pairs.len() || pairs.iter().any(|p| !self.binary.contains_key(p)) {
            out.push(Violation::new("shape", "algebra tables do not match the colors of Fact_n"));
            return out;
        }
        if base.dom(self.nullary) != c.unit() || base.cod(self.nullary) != self.at(0) {
            out.push(Violation::new("endpoints", "nullary map is not I -> A(0)"));
        }
        for &(s, t) in &pairs {
            let m = self.binary[&(s, t)];
            if c.tensor_obj(self.at(s), self.at(t)) != Some(base.dom(m)) || base.cod(m) != self.at(s | t) {
                out.push(Violation::new(
                    "endpoints",
                    format!("map at {{{}}},{{{}}} is not A(S) (x) A(T) -> A(S u T)", subset_key(s), subset_key(t)),
                ));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for s in 0..=top {
            let ids = base.identity(self.at(s));
            let left = c.tensor_mor(self.nullary, ids).and_then(|x| base.compose(self.binary_at(c, 0, s)?, x));
            let right = c.tensor_mor(ids, self.nullary).and_then(|x| base.compose(self.binary_at(c, s, 0)?, x));
            if left != Some(ids) || right != Some(ids) {
                out.push(Violation::new("unit", format!("unit law fails at {{{}}}", subset_key(s))));
            }
        }
        // Ordered triples of pairwise disjoint subsets: each element goes to
        // one of S, T, U or none.
        for code in 0..4usize.pow(self.n as u32) {
            let mut parts = [0 as Subset; 3];
            let mut x = code;
            for i in 0..self.n {
                if x % 4 < 3 {
                    parts[x % 4] |= 1 << i;
                }
                x /= 4;
            }
            let [s, t, u] = parts;
            let id = |v: Subset| base.identity(self.at(v));
            let lhs = self
                .binary_at(c, s, t)
                .and_then(|st| c.tensor_mor(st, id(u)))
                .and_then(|x| base.compose(self.binary_at(c, s | t, u)?, x));
            let rhs = self
                .binary_at(c, t, u)
                .and_then(|tu| c.tensor_mor(id(s), tu))
                .and_then(|x| base.compose(self.binary_at(c, s, t | u)?, x));
            if lhs.is_none() || lhs != rhs {
                out.push(Violation::new(
                    "associativity",
                    format!("associativity fails at ({{{}}}, {{{}}}, {{{}}})", subset_key(s), subset_key(t), subset_key(u)),
                ));
            }
        }
        let operad = FactOperad::build(self.n);
        for k in 2..=3 {
            for (sources, _) in operad.multiarrows(k) {
                let objs: Vec<ObjId> = sources.iter().map(|&s| self.at(s)).collect();
                let direct = self.structure_map(c, &sources);
                for arr in arrangements(k) {
                    let permuted: Vec<Subset> = arr.iter().map(|&i| sources[i]).collect();
                    let via = c
                        .canonical_symmetry(&arr, &objs)
                        .ok()
                        .flatten()
                        .and_then(|sym| base.compose(direct?, sym));
                    if via.is_none() || self.structure_map(c, &permuted) != via {
                        out.push(Violation::new("equivariance", format!("equivariance fails at {permuted:?}")));
                    }
                }
            }
        }
        out
    }

    /// Every structure map (nullary, all binary orders and canonical
    /// ternary decompositions) is a weak equivalence.
    pub fn is_fact_object(&self, c: &PermRelCategory) -> bool {
        let weq = |m: Option<MorId>| m.is_some_and(|m| c.rel.is_weq(m));
        let top = full(self.n);
        weq(Some(self.nullary))
            && (0..=top).all(|s| (0..=top).filter(|t| s & t == 0).all(|t| weq(self.binary_at(c, s, t))))
            && FactOperad::build(self.n).multiarrows(3).iter().all(|(src, _)| weq(self.structure_map(c, src)))
    }

    /// Object label: values on subsets, then structure maps.
    pub fn label(&self, c: &PermRelCategory) -> String {
        let base = c.base();
        let objs: Vec<&str> = self.obj.iter().map(|&o| base.object_label(o)).collect();
        let maps: Vec<&str> = std::iter::once(self.nullary)
            .chain(self.binary.values().copied())
            .map(|m| base.morphism_label(m))
            .collect();
        format!("[{} | {}]", objs.join(","), maps.join(","))
    }
}

pub(crate) fn arrangements(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in arrangements(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// `S |-> (x)_{s in S} X_s` with structure maps the symmetries that merge
/// two blocks into increasing order. `None` if a tensor leaves the bound of
/// a truncated ambient category.
pub fn psi(c: &PermRelCategory, xs: &[ObjId]) -> Option<FactAlgebra> {
    let n = xs.len();
    let pick = |s: Subset| -> Vec<ObjId> { elements(s).iter().map(|&i| xs[i - 1]).collect() };
    let obj = (0..=full(n)).map(|s| c.iterated_tensor(&pick(s))).collect::<Option<Vec<_>>>()?;
    let mut binary = BTreeMap::new();
    for (s, t) in canonical_pairs(n) {
        let union = elements(s | t);
        let arr: Vec<usize> = elements(s)
            .into_iter()
            .chain(elements(t))
            .map(|i| union.iter().position(|&j| j == i).expect("element of union"))
            .collect();
        binary.insert((s, t), c.symmetry(&arr, &pick(s | t))?);
    }
    Some(FactAlgebra { n, obj, nullary: c.base().identity(c.unit()), binary })
}

/// A family of maps `A(S) -> B(S)`, indexed by subset bitmask.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactMorphism {
    pub components: Vec<MorId>,
}

impl FactMorphism {
    pub fn check(&self, c: &PermRelCategory, a: &FactAlgebra, b: &FactAlgebra) -> Vec<Violation> {
        let base = c.base();
        let mut out = Vec::new();
        if a.n != b.n || self.components.len() != a.obj.len() {
            out.push(Violation::new("shape", "component family has the wrong size"));
            return out;
        }
        for (s, &m) in self.components.iter().enumerate() {
            if base.dom(m) != a.obj[s] || base.cod(m) != b.obj[s] {
                out.push(Violation::new("component", format!("component at {{{}}} has wrong endpoints", subset_key(s as Subset))));
            }
        }
        if !out.is_empty() {
            return out;
        }
        if base.compose(self.components[0], a.nullary) != Some(b.nullary) {
            out.push(Violation::new("compatibility", "nullary map is not preserved"));
        }
        for (s, t) in canonical_pairs(a.n) {
            let (cs, ct, cu) = (self.components[s as usize], self.components[t as usize], self.components[(s | t) as usize]);
            let lhs = base.compose(cu, a.binary[&(s, t)]);
            let rhs = c.tensor_mor(cs, ct).and_then(|x| base.compose(b.binary[&(s, t)], x));
            if lhs != rhs {
                out.push(Violation::new(
                    "compatibility",
                    format!("structure map at ({{{}}}, {{{}}}) is not preserved", subset_key(s), subset_key(t)),
                ));
            }
        }
        out
    }

    pub fn is_weq(&self, c: &PermRelCategory) -> bool {
        self.components.iter().all(|&m| c.rel.is_weq(m))
    }
}

/// `{"n": .., "obj": {"1,2": X}, "struct": {"1|2->1,2": m, "->": unit map}}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct FactAlgebraJson {
    pub n: usize,
    pub obj: BTreeMap<String, Value>,
    #[serde(rename = "struct")]
    pub structure: BTreeMap<String, Value>,
}

fn pair_key(s: Subset, t: Subset) -> String {
    format!("{}|{}->{}", subset_key(s), subset_key(t), subset_key(s | t))
}

impl FactAlgebraJson {
    pub fn from_algebra(c: &PermRelCategory, a: &FactAlgebra) -> Self {
        let base = c.base();
        let str_of = |l: &str| Value::String(l.to_string());
        let obj = (0..=full(a.n)).map(|s| (subset_key(s), str_of(base.object_label(a.at(s))))).collect();
        let mut structure: BTreeMap<String, Value> =
            a.binary.iter().map(|(&(s, t), &m)| (pair_key(s, t), str_of(base.morphism_label(m)))).collect();
        structure.insert("->".into(), str_of(base.morphism_label(a.nullary)));
        FactAlgebraJson { n: a.n, obj, structure }
    }

    pub fn to_algebra(&self, c: &PermRelCategory) -> Result<FactAlgebra, crate::Error> {
        let base = c.base();
        let bad = |what: String| crate::Error::Invalid(what);
        let label = |v: &Value| match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        let mut obj = vec![None; full(self.n) as usize + 1];
        for (k, v) in &self.obj {
            let s = parse_subset_key(k).filter(|&s| s <= full(self.n)).ok_or_else(|| bad(format!("bad subset key {k:?}")))?;
            obj[s as usize] = Some(base.object_by_label(&label(v)).ok_or_else(|| bad(format!("unknown object {v}")))?);
        }
        let obj = obj.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| bad("missing subsets".into()))?;
        let mor = |key: &str| -> Result<MorId, crate::Error> {
            let v = self.structure.get(key).ok_or_else(|| bad(format!("missing structure map {key:?}")))?;
            base.morphism_by_label(&label(v)).ok_or_else(|| bad(format!("unknown morphism {v}")))
        };
        let nullary = mor("->")?;
        let binary = canonical_pairs(self.n).into_iter().map(|(s, t)| Ok(((s, t), mor(&pair_key(s, t))?))).collect::<Result<_, crate::Error>>()?;
        Ok(FactAlgebra { n: self.n, obj, nullary, binary })
    }
}
