//! Arrow classification table for optimized presentations.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::model::{Component, ComponentKind, Family, FamilyKind, Presentation, Report, Side};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "-")]
    Negative,
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "any")]
    Any,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Knot,
    Circle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Classification {
    pub family: FamilyKind,
    pub sign: Sign,
    pub role: Role,
    pub label: Side,
}

impl Classification {
    pub fn of(c: &Component) -> Option<Classification> {
        let signed = |n: i64| if n < 0 { Sign::Negative } else { Sign::Positive };
        let sign = match c.family {
            Family::B { i } => signed(i),
            Family::S { j, .. } | Family::N { j, .. } => signed(j),
            Family::Free => return None,
        };
        let role = match c.kind {
            ComponentKind::Knot => Role::Knot,
            ComponentKind::LinkingCircle => Role::Circle,
        };
        Some(Classification { family: c.family.kind(), sign, role, label: c.label.side() })
    }

    fn admits(&self, actual: &Classification) -> bool {
        self.family == actual.family
            && self.role == actual.role
            && self.label == actual.label
            && (self.sign == Sign::Any || self.sign == actual.sign)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DependencyRule {
    pub rule: String,
    pub from: Classification,
    pub to: Classification,
}

#[derive(Deserialize)]
struct Table {
    rules: Vec<DependencyRule>,
}

/// The shipped table, parsed once.
pub fn dependency_table() -> &'static [DependencyRule] {
    static TABLE: OnceLock<Vec<DependencyRule>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let t: Table = serde_json::from_str(include_str!("../../data/dependency_rules.json"))
            .expect("bundled dependency table is well-formed");
        t.rules
    })
}

/// The rule admitting an arrow between the two classifications, if any.
pub fn matching_rule(from: &Classification, to: &Classification) -> Option<&'static DependencyRule> {
    dependency_table().iter().find(|r| r.from.admits(from) && r.to.admits(to))
}

/// Checks every arrow against the table, and that a circle `A'_{pq}` lies
/// above a family knot `A_{rs}` only when `q = r`.
pub fn check_dependency_rules(p: &Presentation) -> Report {
    let mut r = Report::new();
    for (a, b) in &p.arrows {
        let (Some(ca), Some(cb)) = (p.components.get(a), p.components.get(b)) else {
            r.fail("dangling-arrow", format!("arrow {a} -> {b} references an unknown component"));
            continue;
        };
        match (Classification::of(ca), Classification::of(cb)) {
            (Some(x), Some(y)) => {
                if matching_rule(&x, &y).is_none() {
                    r.fail("dependency", format!("arrow {a} -> {b} has no rule for {x:?} -> {y:?}"));
                }
            }
            _ => r.fail("not-fwcs", format!("arrow {a} -> {b} touches a component outside B, S, N")),
        }
    }

    let mut adj: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for (a, b) in &p.arrows {
        adj.entry(a.as_str()).or_default().push(b.as_str());
    }
    for c in p.components.values() {
        let (Some((_, q)), ComponentKind::LinkingCircle) = (c.family.indices(), c.kind) else {
            continue;
        };
        let mut seen = BTreeSet::new();
        let mut stack: Vec<&str> = adj.get(c.id.as_str()).cloned().unwrap_or_default();
        while let Some(v) = stack.pop() {
            if !seen.insert(v) {
                continue;
            }
            stack.extend(adj.get(v).into_iter().flatten().copied());
            let Some(target) = p.components.get(v) else { continue };
            if let (Some((rr, _)), ComponentKind::Knot) = (target.family.indices(), target.kind) {
                if rr != q {
                    r.fail("corollary", format!("circle {} lies above knot {} but {q} != {rr}", c.id, target.id));
                }
            }
        }
    }
    r
}
