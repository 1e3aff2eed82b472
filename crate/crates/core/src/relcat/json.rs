use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::RelCategory;
use crate::fincat::{CategoryJson, Labels};

/// A category description plus an explicit list of weak equivalences.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RelCategoryJson {
    #[serde(flatten)]
    pub category: CategoryJson,
    pub weq: Vec<Value>,
}

impl RelCategoryJson {
    /// The marking is audited as written: no closure is applied.
    pub(crate) fn build(&self) -> Result<(RelCategory, Labels), crate::Error> {
        let (cat, labels) = self.category.build()?;
        let ids = self.weq.iter().map(|v| labels.mor(v)).collect::<Result<Vec<_>, _>>()?;
        let rel = RelCategory::from_ids(Arc::new(cat), &ids, false).map_err(|e| crate::Error::Invalid(e.to_string()))?;
        Ok((rel, labels))
    }

    pub fn from_rel(r: &RelCategory) -> Self {
        RelCategoryJson {
            category: CategoryJson::from_category(&r.base),
            weq: r.weq_ids().into_iter().map(|f| Value::String(r.base.morphism_label(f).to_string())).collect(),
        }
    }
}

pub fn parse_relcat(text: &str) -> Result<RelCategory, crate::Error> {
    let raw: RelCategoryJson = serde_json::from_str(text)?;
    Ok(raw.build()?.0)
}
