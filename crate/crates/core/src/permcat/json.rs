use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{PermRelCategory, TableTensor};
use crate::relcat::RelCategoryJson;

/// Relative category plus complete tensor, unit and braid tables.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PermCategoryJson {
    #[serde(flatten)]
    pub rel: RelCategoryJson,
    pub unit: Value,
    pub tensor_obj: Vec<[Value; 3]>,
    pub tensor_mor: Vec<[Value; 3]>,
    pub braid: Vec<[Value; 3]>,
}

impl PermCategoryJson {
    pub fn build(&self) -> Result<PermRelCategory, crate::Error> {
        let (rel, labels) = self.rel.build()?;
        let mut t = TableTensor { unit: labels.obj(&self.unit)?, ..Default::default() };
        for [a, b, ab] in &self.tensor_obj {
            t.objects.insert((labels.obj(a)?, labels.obj(b)?), labels.obj(ab)?);
        }
        for [f, g, fg] in &self.tensor_mor {
            t.morphisms.insert((labels.mor(f)?, labels.mor(g)?), labels.mor(fg)?);
        }
        for [a, b, m] in &self.braid {
            t.braids.insert((labels.obj(a)?, labels.obj(b)?), labels.mor(m)?);
        }
        let (o, m) = (rel.base.object_count(), rel.base.morphism_count());
        if t.objects.len() != o * o || t.morphisms.len() != m * m || t.braids.len() != o * o {
            return Err(crate::Error::Invalid("tensor and braid tables must be total".into()));
        }
        PermRelCategory::new(Arc::new(rel), Arc::new(t)).map_err(|e| crate::Error::Invalid(e.to_string()))
    }

    /// Tabulates a permutative category whose tensor is total.
    pub fn from_perm(p: &PermRelCategory) -> Self {
        let c = p.base();
        let o = |x| Value::String(c.object_label(x).to_string());
        let m = |x| Value::String(c.morphism_label(x).to_string());
        let mut tensor_obj = Vec::new();
        let mut braid = Vec::new();
        for a in c.objects() {
            for b in c.objects() {
                if let Some(ab) = p.tensor_obj(a, b) {
                    tensor_obj.push([o(a), o(b), o(ab)]);
                }
                if let Some(br) = p.braid(a, b) {
                    braid.push([o(a), o(b), m(br)]);
                }
            }
        }
        let mut tensor_mor = Vec::new();
        for f in c.morphisms() {
            for g in c.morphisms() {
                if let Some(fg) = p.tensor_mor(f, g) {
                    tensor_mor.push([m(f), m(g), m(fg)]);
                }
            }
        }
        PermCategoryJson { rel: RelCategoryJson::from_rel(&p.rel), unit: o(p.unit()), tensor_obj, tensor_mor, braid }
    }
}

pub fn parse_permcat(text: &str) -> Result<PermRelCategory, crate::Error> {
    let raw: PermCategoryJson = serde_json::from_str(text)?;
    raw.build()
}
