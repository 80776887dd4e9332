use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cs::{Component, Label, Presentation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelChange {
    pub id: String,
    pub from: Label,
    pub to: Label,
}

/// What a rewrite changed. Applying it to the prior snapshot reproduces the
/// next one.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diff {
    #[serde(rename = "componentsAdded")]
    pub components_added: Vec<Component>,
    #[serde(rename = "componentsRemoved")]
    pub components_removed: Vec<Component>,
    #[serde(rename = "labelsChanged")]
    pub labels_changed: Vec<LabelChange>,
    #[serde(rename = "arrowsAdded")]
    pub arrows_added: BTreeSet<(String, String)>,
    #[serde(rename = "arrowsRemoved")]
    pub arrows_removed: BTreeSet<(String, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Diff {
    pub fn between(before: &Presentation, after: &Presentation) -> Diff {
        let mut d = Diff::default();
        for (id, c) in &before.components {
            match after.components.get(id) {
                None => d.components_removed.push(c.clone()),
                Some(n) if n.label != c.label => {
                    d.labels_changed.push(LabelChange { id: id.clone(), from: c.label, to: n.label })
                }
                Some(_) => {}
            }
        }
        for (id, c) in &after.components {
            if !before.components.contains_key(id) {
                d.components_added.push(c.clone());
            }
        }
        d.arrows_added = after.arrows.difference(&before.arrows).cloned().collect();
        d.arrows_removed = before.arrows.difference(&after.arrows).cloned().collect();
        d
    }

    pub fn is_empty(&self) -> bool {
        self.components_added.is_empty()
            && self.components_removed.is_empty()
            && self.labels_changed.is_empty()
            && self.arrows_added.is_empty()
            && self.arrows_removed.is_empty()
    }

    pub fn apply(&self, p: &Presentation) -> Presentation {
        let mut out = p.clone();
        for c in &self.components_removed {
            out.components.remove(&c.id);
        }
        for c in &self.components_added {
            out.components.insert(c.id.clone(), c.clone());
        }
        for ch in &self.labels_changed {
            if let Some(c) = out.components.get_mut(&ch.id) {
                c.label = ch.to;
            }
        }
        for a in &self.arrows_removed {
            out.arrows.remove(a);
        }
        out.arrows.extend(self.arrows_added.iter().cloned());
        out
    }
}
