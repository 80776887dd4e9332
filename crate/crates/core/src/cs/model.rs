use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::forest::CurveForest;
use super::CsError;

/// Which side of the 0/• divide a label lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Zero,
    Bullet,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Zero => Side::Bullet,
            Side::Bullet => Side::Zero,
        }
    }

    pub fn concrete(self) -> Label {
        match self {
            Side::Zero => Label::Zero,
            Side::Bullet => Label::Bullet,
        }
    }

    pub fn abstracted(self) -> Label {
        match self {
            Side::Zero => Label::AbstractZero,
            Side::Bullet => Label::AbstractBullet,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Label {
    Zero,
    Bullet,
    AbstractZero,
    AbstractBullet,
}

impl Label {
    pub fn side(self) -> Side {
        match self {
            Label::Zero | Label::AbstractZero => Side::Zero,
            Label::Bullet | Label::AbstractBullet => Side::Bullet,
        }
    }

    pub fn is_abstract(self) -> bool {
        matches!(self, Label::AbstractZero | Label::AbstractBullet)
    }

    pub fn glyph(self) -> &'static str {
        match self {
            Label::Zero => "0",
            Label::Bullet => "•",
            Label::AbstractZero => "⊘",
            Label::AbstractBullet => "★",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.glyph())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentKind {
    Knot,
    LinkingCircle,
}

/// Where a component comes from. `parent` is the curve index of the curve
/// directly enclosing this one inside its Whitney disc.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum Family {
    B {
        i: i64,
    },
    S {
        i: i64,
        j: i64,
        curve: usize,
        parent: Option<usize>,
    },
    N {
        i: i64,
        j: i64,
        curve: usize,
        parent: Option<usize>,
    },
    /// Not attached to an F|W family; plain CS-presentation components.
    #[serde(rename = "free")]
    Free,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FamilyKind {
    B,
    S,
    N,
    #[serde(rename = "free")]
    Free,
}

impl Family {
    pub fn kind(&self) -> FamilyKind {
        match self {
            Family::B { .. } => FamilyKind::B,
            Family::S { .. } => FamilyKind::S,
            Family::N { .. } => FamilyKind::N,
            Family::Free => FamilyKind::Free,
        }
    }

    /// `(i, j)` for S and N families.
    pub fn indices(&self) -> Option<(i64, i64)> {
        match *self {
            Family::S { i, j, .. } | Family::N { i, j, .. } => Some((i, j)),
            _ => None,
        }
    }

    pub fn curve(&self) -> Option<usize> {
        match *self {
            Family::S { curve, .. } | Family::N { curve, .. } => Some(curve),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::B { i } => write!(f, "B_L({i})"),
            Family::S { i, j, curve, .. } => write!(f, "S({i},{j})#{curve}"),
            Family::N { i, j, curve, .. } => write!(f, "N({i},{j})#{curve}"),
            Family::Free => f.write_str("free"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Component {
    pub id: String,
    pub kind: ComponentKind,
    pub family: Family,
    pub label: Label,
    #[serde(default)]
    pub framing: i64,
    pub partner: String,
}

/// Curve forest recorded for the Whitney discs of the family `(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilyProvenance {
    pub i: i64,
    pub j: i64,
    pub forest: CurveForest,
}

/// A carving/surgery presentation. An arrow `(x, y)` reads `x > y`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Presentation {
    #[serde(default)]
    pub components: BTreeMap<String, Component>,
    #[serde(default)]
    pub arrows: BTreeSet<(String, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub provenance: Vec<FamilyProvenance>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub code: String,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub ok: bool,
    pub violations: Vec<Violation>,
    /// Assumptions the check could not verify, or interpretation notes.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
}

impl Report {
    pub fn new() -> Report {
        Report { ok: true, violations: Vec::new(), flags: Vec::new() }
    }

    pub fn fail(&mut self, code: &str, message: impl Into<String>) {
        self.ok = false;
        self.violations.push(Violation { code: code.into(), message: message.into() });
    }

    pub fn flag(&mut self, note: impl Into<String>) {
        let note = note.into();
        if !self.flags.contains(&note) {
            self.flags.push(note);
        }
    }

    pub fn merge(&mut self, other: Report) {
        self.ok &= other.ok;
        self.violations.extend(other.violations);
        for f in other.flags {
            self.flag(f);
        }
    }

    pub fn has(&self, code: &str) -> bool {
        self.violations.iter().any(|v| v.code == code)
    }
}

impl Presentation {
    pub fn new() -> Presentation {
        Presentation::default()
    }

    /// Adds a knot and its linking circle as partners.
    pub fn add_pair(&mut self, knot: Component, circle: Component) {
        self.components.insert(knot.id.clone(), knot);
        self.components.insert(circle.id.clone(), circle);
    }

    pub fn component(&self, id: &str) -> Result<&Component, CsError> {
        self.components.get(id).ok_or_else(|| CsError::NotFound(id.to_string()))
    }

    pub fn successors<'a>(&'a self, id: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.arrows.iter().filter(move |(a, _)| a == id).map(|(_, b)| b.as_str())
    }

    pub fn predecessors<'a>(&'a self, id: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.arrows.iter().filter(move |(_, b)| b == id).map(|(a, _)| a.as_str())
    }

    fn adjacency(&self) -> BTreeMap<&str, Vec<&str>> {
        let mut adj: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        for (a, b) in &self.arrows {
            adj.entry(a.as_str()).or_default().push(b.as_str());
        }
        adj
    }

    /// True if a directed path of length ≥ 1 runs from `from` to `to`.
    pub fn reaches(&self, from: &str, to: &str) -> bool {
        let adj = self.adjacency();
        let mut seen = BTreeSet::new();
        let mut stack: Vec<&str> = adj.get(from).cloned().unwrap_or_default();
        while let Some(v) = stack.pop() {
            if v == to {
                return true;
            }
            if seen.insert(v) {
                stack.extend(adj.get(v).into_iter().flatten().copied());
            }
        }
        false
    }

    /// Components in topological order (sources first), or `None` if cyclic.
    pub fn topological_order(&self) -> Option<Vec<&str>> {
        let mut indegree: BTreeMap<&str, usize> = self.components.keys().map(|k| (k.as_str(), 0)).collect();
        for (a, b) in &self.arrows {
            indegree.entry(a.as_str()).or_default();
            *indegree.entry(b.as_str()).or_default() += 1;
        }
        let adj = self.adjacency();
        let mut ready: Vec<&str> = indegree.iter().filter(|(_, &d)| d == 0).map(|(&k, _)| k).collect();
        ready.reverse();
        let mut order = Vec::with_capacity(indegree.len());
        while let Some(v) = ready.pop() {
            order.push(v);
            for &w in adj.get(v).into_iter().flatten() {
                let d = indegree.get_mut(w).unwrap();
                *d -= 1;
                if *d == 0 {
                    ready.push(w);
                }
            }
        }
        (order.len() == indegree.len()).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Depth of every component: 1 for minimal elements, otherwise one more
    /// than the smallest depth among its successors.
    pub fn depths(&self) -> Result<BTreeMap<String, u32>, CsError> {
        let order = self.topological_order().ok_or(CsError::Cyclic)?;
        let adj = self.adjacency();
        let mut depth: BTreeMap<&str, u32> = BTreeMap::new();
        for &v in order.iter().rev() {
            let d = adj.get(v).into_iter().flatten().map(|w| depth[w] + 1).min().unwrap_or(1);
            depth.insert(v, d);
        }
        Ok(depth.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
    }

    pub fn depth(&self, id: &str) -> Result<u32, CsError> {
        self.component(id)?;
        Ok(self.depths()?[id])
    }

    pub fn max_depth(&self) -> Result<u32, CsError> {
        Ok(self.depths()?.into_values().max().unwrap_or(0))
    }

    /// `i` nests in `j`: the arrow `i → j` is present.
    pub fn nests_in(&self, i: &str, j: &str) -> Result<bool, CsError> {
        self.component(i)?;
        self.component(j)?;
        Ok(self.arrows.contains(&(i.to_string(), j.to_string())))
    }

    /// `j` lodges `i`; the same relation as `nests_in(i, j)`.
    pub fn lodges(&self, j: &str, i: &str) -> Result<bool, CsError> {
        self.nests_in(i, j)
    }

    /// Structural validity: acyclic arrows between existing components, total
    /// partner pairing, 0-framed linking circles and the B_L label rule.
    pub fn validate(&self) -> Report {
        let mut r = Report::new();
        for (key, c) in &self.components {
            if key != &c.id {
                r.fail("id", format!("component stored under {key} has id {}", c.id));
            }
            match self.components.get(&c.partner) {
                None => r.fail("partner", format!("{} has no partner {}", c.id, c.partner)),
                Some(p) => {
                    if p.partner != c.id {
                        r.fail("partner", format!("{} and {} are not mutual partners", c.id, p.id));
                    }
                    if p.kind == c.kind {
                        r.fail("partner", format!("{} and {} are both {:?}", c.id, p.id, c.kind));
                    }
                }
            }
            if c.kind == ComponentKind::LinkingCircle && c.framing != 0 {
                r.fail("framing", format!("linking circle {} has framing {}", c.id, c.framing));
            }
            match c.family {
                Family::B { i } => {
                    if i == 0 {
                        r.fail("family", format!("{} has B_L index 0", c.id));
                    }
                    let knot_side = if i < 0 { Side::Zero } else { Side::Bullet };
                    let want = match c.kind {
                        ComponentKind::Knot => knot_side,
                        ComponentKind::LinkingCircle => knot_side.opposite(),
                    };
                    if c.label.side() != want {
                        r.fail("b-label", format!("{} in B_L({i}) is labeled {}", c.id, c.label));
                    }
                }
                Family::S { i, j, .. } | Family::N { i, j, .. } => {
                    let wrong_sign = match c.family.kind() {
                        FamilyKind::S => i >= 0,
                        _ => i <= 0,
                    };
                    if wrong_sign || j == 0 {
                        r.fail("family", format!("{} has family indices ({i}, {j})", c.id));
                    }
                }
                Family::Free => {}
            }
        }
        for (a, b) in &self.arrows {
            for end in [a, b] {
                if !self.components.contains_key(end) {
                    r.fail("dangling-arrow", format!("arrow {a} -> {b} references unknown {end}"));
                }
            }
        }
        if !self.is_acyclic() {
            r.fail("cyclic", "arrow relation contains a directed cycle");
        }
        r
    }
}
