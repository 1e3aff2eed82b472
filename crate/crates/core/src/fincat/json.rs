use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::category::{CategoryError, FinCategory, MorId};

/// Labels may be written as JSON strings or integers.
pub(crate) fn label_of(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MorphismJson {
    pub id: Value,
    pub dom: Value,
    pub cod: Value,
}

/// On-disk category description.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CategoryJson {
    pub objects: Vec<Value>,
    pub morphisms: Vec<MorphismJson>,
    pub identities: BTreeMap<String, Value>,
    #[serde(default)]
    pub compose: Vec<[Value; 3]>,
}

pub(crate) struct Labels {
    pub objects: HashMap<String, usize>,
    pub morphisms: HashMap<String, usize>,
}

impl Labels {
    pub fn obj(&self, v: &Value) -> Result<usize, CategoryError> {
        let l = label_of(v);
        self.objects.get(&l).copied().ok_or(CategoryError::UnknownLabel(l))
    }

    pub fn mor(&self, v: &Value) -> Result<MorId, CategoryError> {
        let l = label_of(v);
        self.morphisms.get(&l).copied().ok_or(CategoryError::UnknownLabel(l))
    }
}

fn index(labels: &[String]) -> Result<HashMap<String, usize>, CategoryError> {
    let mut out = HashMap::new();
    for (i, l) in labels.iter().enumerate() {
        if out.insert(l.clone(), i).is_some() {
            return Err(CategoryError::DuplicateLabel(l.clone()));
        }
    }
    Ok(out)
}

impl CategoryJson {
    /// Resolves labels to dense ids and validates every law. Unit-law table
    /// entries may be omitted; they are filled in from the identities.
    pub(crate) fn build(&self) -> Result<(FinCategory, Labels), CategoryError> {
        let object_labels: Vec<String> = self.objects.iter().map(label_of).collect();
        let morphism_labels: Vec<String> = self.morphisms.iter().map(|m| label_of(&m.id)).collect();
        let labels = Labels { objects: index(&object_labels)?, morphisms: index(&morphism_labels)? };
        let mut endpoints = Vec::new();
        for (i, m) in self.morphisms.iter().enumerate() {
            let resolve = |v: &Value, endpoint| {
                labels.obj(v).map_err(|_| CategoryError::Dangling {
                    morphism: morphism_labels[i].clone(),
                    endpoint,
                    object: label_of(v),
                })
            };
            endpoints.push((resolve(&m.dom, "domain")?, resolve(&m.cod, "codomain")?));
        }
        let mut identities = Vec::new();
        for l in &object_labels {
            let id = self
                .identities
                .get(l)
                .ok_or_else(|| CategoryError::MissingIdentity { object: l.clone() })?;
            identities.push(labels.mor(id)?);
        }
        let mut table = HashMap::new();
        for [g, f, gf] in &self.compose {
            let (g, f, gf) = (labels.mor(g)?, labels.mor(f)?, labels.mor(gf)?);
            if table.insert((g, f), gf).is_some_and(|old| old != gf) {
                return Err(CategoryError::ConflictingComposite {
                    g: morphism_labels[g].clone(),
                    f: morphism_labels[f].clone(),
                });
            }
        }
        for (f, &(d, c)) in endpoints.iter().enumerate() {
            if let (Some(&id_d), Some(&id_c)) = (identities.get(d), identities.get(c)) {
                table.entry((f, id_d)).or_insert(f);
                table.entry((id_c, f)).or_insert(f);
            }
        }
        let cat = FinCategory::from_table(object_labels, morphism_labels, endpoints, identities, table)?;
        Ok((cat, labels))
    }

    pub fn from_category(c: &FinCategory) -> Self {
        let s = |x: &str| Value::String(x.to_string());
        CategoryJson {
            objects: c.object_labels().iter().map(|l| s(l)).collect(),
            morphisms: c
                .morphisms()
                .map(|f| MorphismJson {
                    id: s(c.morphism_label(f)),
                    dom: s(c.object_label(c.dom(f))),
                    cod: s(c.object_label(c.cod(f))),
                })
                .collect(),
            identities: c
                .objects()
                .map(|o| (c.object_label(o).to_string(), s(c.morphism_label(c.identity(o)))))
                .collect(),
            compose: c
                .composition_triples()
                .into_iter()
                .map(|(g, f, gf)| [s(c.morphism_label(g)), s(c.morphism_label(f)), s(c.morphism_label(gf))])
                .collect(),
        }
    }
}

pub fn parse_category(text: &str) -> Result<FinCategory, crate::Error> {
    let raw: CategoryJson = serde_json::from_str(text)?;
    Ok(raw.build()?.0)
}
