//! Permutative (strict symmetric monoidal) relative categories.

mod json;
mod laws;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::fincat::{FinCategory, MorId, ObjId, Violation};
use crate::relcat::{RelCategory, RelFunctor};

pub use json::{parse_permcat, PermCategoryJson};
pub use laws::LawBounds;

/// Strict tensor data. Every operation is partial so that truncated
/// constructions can answer `None` outside their bound.
pub trait TensorStructure: Send + Sync {
    fn unit(&self) -> ObjId;
    fn tensor_obj(&self, a: ObjId, b: ObjId) -> Option<ObjId>;
    fn tensor_mor(&self, f: MorId, g: MorId) -> Option<MorId>;
    /// The symmetry `a (x) b -> b (x) a`.
    fn braid(&self, a: ObjId, b: ObjId) -> Option<MorId>;
}

/// Tensor data stored as explicit tables.
#[derive(Clone, Debug, Default)]
pub struct TableTensor {
    pub unit: ObjId,
    pub objects: HashMap<(ObjId, ObjId), ObjId>,
    pub morphisms: HashMap<(MorId, MorId), MorId>,
    pub braids: HashMap<(ObjId, ObjId), MorId>,
}

impl TensorStructure for TableTensor {
    fn unit(&self) -> ObjId {
        self.unit
    }
    fn tensor_obj(&self, a: ObjId, b: ObjId) -> Option<ObjId> {
        self.objects.get(&(a, b)).copied()
    }
    fn tensor_mor(&self, f: MorId, g: MorId) -> Option<MorId> {
        self.morphisms.get(&(f, g)).copied()
    }
    fn braid(&self, a: ObjId, b: ObjId) -> Option<MorId> {
        self.braids.get(&(a, b)).copied()
    }
}

impl TableTensor {
    /// Tabulates a total tensor on `c` given by closures.
    pub fn tabulate(
        c: &FinCategory,
        unit: ObjId,
        obj: impl Fn(ObjId, ObjId) -> ObjId,
        mor: impl Fn(MorId, MorId) -> MorId,
        braid: impl Fn(ObjId, ObjId) -> MorId,
    ) -> Self {
        let mut t = TableTensor { unit, ..Default::default() };
        for a in c.objects() {
            for b in c.objects() {
                t.objects.insert((a, b), obj(a, b));
                t.braids.insert((a, b), braid(a, b));
            }
        }
        for f in c.morphisms() {
            for g in c.morphisms() {
                t.morphisms.insert((f, g), mor(f, g));
            }
        }
        t
    }
}

/// A relative category with a strict symmetric monoidal structure whose
/// tensor preserves weak equivalences.
#[derive(Clone)]
pub struct PermRelCategory {
    pub rel: Arc<RelCategory>,
    pub tensor: Arc<dyn TensorStructure>,
}

impl fmt::Debug for PermRelCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermRelCategory").field("base", &self.rel.base).finish()
    }
}

#[derive(Debug, thiserror::Error)]
#[error("permutative laws fail: {}", .0.iter().map(|v| v.detail.clone()).collect::<Vec<_>>().join("; "))]
pub struct PermError(pub Vec<Violation>);

impl PermRelCategory {
    /// Validates every law exhaustively.
    pub fn new(rel: Arc<RelCategory>, tensor: Arc<dyn TensorStructure>) -> Result<Self, PermError> {
        let p = PermRelCategory { rel, tensor };
        let v = p.validate_permutative(&LawBounds::default());
        if v.is_empty() {
            Ok(p)
        } else {
            Err(PermError(v))
        }
    }

    pub fn trusted(rel: Arc<RelCategory>, tensor: Arc<dyn TensorStructure>) -> Self {
        PermRelCategory { rel, tensor }
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        &self.rel.base
    }

    pub fn unit(&self) -> ObjId {
        self.tensor.unit()
    }

    pub fn tensor_obj(&self, a: ObjId, b: ObjId) -> Option<ObjId> {
        self.tensor.tensor_obj(a, b)
    }

    pub fn tensor_mor(&self, f: MorId, g: MorId) -> Option<MorId> {
        self.tensor.tensor_mor(f, g)
    }

    pub fn braid(&self, a: ObjId, b: ObjId) -> Option<MorId> {
        self.tensor.braid(a, b)
    }

    /// Left-nested tensor of a list of objects; the unit when empty.
    pub fn iterated_tensor(&self, objs: &[ObjId]) -> Option<ObjId> {
        match objs.split_first() {
            None => Some(self.unit()),
            Some((&first, rest)) => rest.iter().try_fold(first, |acc, &x| self.tensor_obj(acc, x)),
        }
    }

    /// Left-nested tensor of morphisms; the unit identity when empty.
    pub fn iterated_tensor_mor(&self, mors: &[MorId]) -> Option<MorId> {
        match mors.split_first() {
            None => Some(self.base().identity(self.unit())),
            Some((&first, rest)) => rest.iter().try_fold(first, |acc, &f| self.tensor_mor(acc, f)),
        }
    }

    /// `id_A (x) b (x) id_B` with `A`, `B` the tensors of `before`, `after`.
    fn whiskered(&self, before: &[ObjId], b: MorId, after: &[ObjId]) -> Option<MorId> {
        let c = self.base();
        let left = c.identity(self.iterated_tensor(before)?);
        let right = c.identity(self.iterated_tensor(after)?);
        self.tensor_mor(self.tensor_mor(left, b)?, right)
    }

    /// Composite of adjacent braids along a sequence of transpositions
    /// `(p, p + 1)`, starting from the arrangement `start`.
    pub fn symmetry_along(&self, objs: &[ObjId], start: &[usize], swaps: &[usize]) -> Option<MorId> {
        let c = self.base();
        let mut arr = start.to_vec();
        let here: Vec<ObjId> = arr.iter().map(|&i| objs[i]).collect();
        let mut acc = c.identity(self.iterated_tensor(&here)?);
        for &p in swaps {
            let cur: Vec<ObjId> = arr.iter().map(|&i| objs[i]).collect();
            let b = self.braid(cur[p], cur[p + 1])?;
            let step = self.whiskered(&cur[..p], b, &cur[p + 2..])?;
            acc = c.compose(step, acc)?;
            arr.swap(p, p + 1);
        }
        Some(acc)
    }

    /// The symmetry `(x)_p X_{arr[p]} -> (x)_i X_i` for an arrangement `arr`
    /// of `0..k`, i.e. `arr = sigma^-1` for the permutation `sigma`. Computed
    /// along bubble sort and cross-checked against insertion sort and a
    /// right-to-left bubble sort (the latter differs from both already for
    /// `k = 3`); `Err` reports a decomposition dependence.
    pub fn canonical_symmetry(&self, arrangement: &[usize], objs: &[ObjId]) -> Result<Option<MorId>, Violation> {
        let a = self.symmetry_along(objs, arrangement, &bubble_swaps(arrangement));
        let b = self.symmetry_along(objs, arrangement, &insertion_swaps(arrangement));
        let c = self.symmetry_along(objs, arrangement, &reverse_bubble_swaps(arrangement));
        if a != b || a != c {
            return Err(Violation::new(
                "coherence",
                format!("symmetry for arrangement {arrangement:?} depends on the decomposition"),
            ));
        }
        Ok(a)
    }

    /// Like `canonical_symmetry` but panics on incoherent data.
    pub fn symmetry(&self, arrangement: &[usize], objs: &[ObjId]) -> Option<MorId> {
        self.canonical_symmetry(arrangement, objs).expect("coherent braid data")
    }

    pub fn validate_permutative(&self, bounds: &LawBounds) -> Vec<Violation> {
        laws::validate(self, bounds)
    }
}

fn bubble_swaps(arr: &[usize]) -> Vec<usize> {
    let mut a = arr.to_vec();
    let mut out = Vec::new();
    loop {
        let mut clean = true;
        for p in 0..a.len().saturating_sub(1) {
            if a[p] > a[p + 1] {
                a.swap(p, p + 1);
                out.push(p);
                clean = false;
            }
        }
        if clean {
            return out;
        }
    }
}

fn reverse_bubble_swaps(arr: &[usize]) -> Vec<usize> {
    let mut a = arr.to_vec();
    let mut out = Vec::new();
    loop {
        let mut clean = true;
        for p in (0..a.len().saturating_sub(1)).rev() {
            if a[p] > a[p + 1] {
                a.swap(p, p + 1);
                out.push(p);
                clean = false;
            }
        }
        if clean {
            return out;
        }
    }
}

fn insertion_swaps(arr: &[usize]) -> Vec<usize> {
    let mut a = arr.to_vec();
    let mut out = Vec::new();
    for i in 1..a.len() {
        let mut j = i;
        while j > 0 && a[j - 1] > a[j] {
            a.swap(j - 1, j);
            out.push(j - 1);
            j -= 1;
        }
    }
    out
}

/// Checks that `f` strictly preserves unit, tensor and braiding.
pub fn check_strict_sm_functor(f: &RelFunctor, c: &PermRelCategory, d: &PermRelCategory) -> Vec<Violation> {
    let mut out = f.check();
    let s = c.base();
    if f.obj(c.unit()) != d.unit() {
        out.push(Violation::new("unit", "unit is not preserved"));
    }
    for a in s.objects() {
        for b in s.objects() {
            if let Some(ab) = c.tensor_obj(a, b) {
                if Some(f.obj(ab)) != d.tensor_obj(f.obj(a), f.obj(b)) {
                    out.push(Violation::new(
                        "tensor",
                        format!("F({} (x) {}) != F({}) (x) F({})", s.object_label(a), s.object_label(b), s.object_label(a), s.object_label(b)),
                    ));
                }
                if let Some(br) = c.braid(a, b) {
                    if Some(f.mor(br)) != d.braid(f.obj(a), f.obj(b)) {
                        out.push(Violation::new(
                            "braid",
                            format!("braid at ({}, {}) is not preserved", s.object_label(a), s.object_label(b)),
                        ));
                    }
                }
            }
        }
    }
    for g in s.morphisms() {
        for h in s.morphisms() {
            if let Some(gh) = c.tensor_mor(g, h) {
                if Some(f.mor(gh)) != d.tensor_mor(f.mor(g), f.mor(h)) {
                    out.push(Violation::new(
                        "tensor",
                        format!("F({} (x) {}) != F({}) (x) F({})", s.morphism_label(g), s.morphism_label(h), s.morphism_label(g), s.morphism_label(h)),
                    ));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests;
