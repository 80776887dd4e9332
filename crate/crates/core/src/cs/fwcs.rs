//! FWCS structure: the B_L, S_L and N_L families and the arrows they prescribe.

use std::collections::BTreeMap;

use super::forest::CurveForest;
use super::model::{Component, ComponentKind, Family, FamilyKind, Presentation, Report, Side};
use super::CsError;

pub fn b_knot_id(i: i64) -> String {
    format!("b[{i}]")
}

pub fn b_circle_id(i: i64) -> String {
    format!("b'[{i}]")
}

pub fn family_knot_id(kind: FamilyKind, i: i64, j: i64, curve: usize) -> String {
    let letter = if kind == FamilyKind::S { 's' } else { 'n' };
    format!("{letter}[{i},{j}]#{curve}")
}

pub fn family_circle_id(kind: FamilyKind, i: i64, j: i64, curve: usize) -> String {
    let letter = if kind == FamilyKind::S { 's' } else { 'n' };
    format!("{letter}'[{i},{j}]#{curve}")
}

/// Knot label prescribed for a family curve: S families start at 0 and N
/// families at • on level 1, alternating with each level.
pub fn family_knot_side(kind: FamilyKind, level: u32) -> Side {
    let top = if kind == FamilyKind::S { Side::Zero } else { Side::Bullet };
    if level % 2 == 1 {
        top
    } else {
        top.opposite()
    }
}

pub fn b_knot_side(i: i64) -> Side {
    if i < 0 {
        Side::Zero
    } else {
        Side::Bullet
    }
}

/// The pair `b_i`, `b'_i` of B_L.
pub fn b_pair(i: i64) -> (Component, Component) {
    let side = b_knot_side(i);
    let knot = Component {
        id: b_knot_id(i),
        kind: ComponentKind::Knot,
        family: Family::B { i },
        label: side.concrete(),
        framing: 0,
        partner: b_circle_id(i),
    };
    let circle = Component {
        id: b_circle_id(i),
        kind: ComponentKind::LinkingCircle,
        family: Family::B { i },
        label: side.opposite().concrete(),
        framing: 0,
        partner: b_knot_id(i),
    };
    (knot, circle)
}

/// One knot and one linking circle per curve of `f`; `i < 0` gives an S
/// family and `i > 0` an N family.
pub fn build_family(f: &CurveForest, i: i64, j: i64) -> Result<Vec<Component>, CsError> {
    if i == 0 || j == 0 {
        return Err(CsError::InvalidIndex(if i == 0 { i } else { j }));
    }
    let kind = if i < 0 { FamilyKind::S } else { FamilyKind::N };
    let mut out = Vec::new();
    for c in f.flatten() {
        let family = match kind {
            FamilyKind::S => Family::S { i, j, curve: c.index, parent: c.parent },
            _ => Family::N { i, j, curve: c.index, parent: c.parent },
        };
        let side = family_knot_side(kind, c.level);
        let knot_id = family_knot_id(kind, i, j, c.index);
        let circle_id = family_circle_id(kind, i, j, c.index);
        out.push(Component {
            id: knot_id.clone(),
            kind: ComponentKind::Knot,
            family,
            label: side.concrete(),
            framing: 0,
            partner: circle_id.clone(),
        });
        out.push(Component {
            id: circle_id,
            kind: ComponentKind::LinkingCircle,
            family,
            label: side.opposite().concrete(),
            framing: 0,
            partner: knot_id,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub(crate) struct Curve {
    pub knot: String,
    pub circle: String,
    pub parent: Option<usize>,
    pub level: u32,
}

#[derive(Clone, Debug)]
pub(crate) struct FamilyData {
    pub kind: FamilyKind,
    pub i: i64,
    pub j: i64,
    pub curves: BTreeMap<usize, Curve>,
}

impl FamilyData {
    pub fn maximal(&self) -> impl Iterator<Item = &Curve> {
        self.curves.values().filter(|c| c.level == 1)
    }
}

/// The family layout read back from component records.
#[derive(Clone, Debug, Default)]
pub(crate) struct Structure {
    pub b: BTreeMap<i64, (String, String)>,
    pub families: BTreeMap<(FamilyKind, i64, i64), FamilyData>,
    pub free: Vec<String>,
}

impl Structure {
    /// Expected label of every B, S and N component.
    pub fn expected_labels(&self) -> BTreeMap<&str, Side> {
        let mut out = BTreeMap::new();
        for (&i, (k, c)) in &self.b {
            out.insert(k.as_str(), b_knot_side(i));
            out.insert(c.as_str(), b_knot_side(i).opposite());
        }
        for fam in self.families.values() {
            for curve in fam.curves.values() {
                let side = family_knot_side(fam.kind, curve.level);
                out.insert(curve.knot.as_str(), side);
                out.insert(curve.circle.as_str(), side.opposite());
            }
        }
        out
    }
}

/// Knot id, circle id and parent curve seen so far for one curve.
type CurveParts = (Option<String>, Option<String>, Option<usize>);

pub(crate) fn structure(p: &Presentation) -> Result<Structure, CsError> {
    let bad = |msg: String| Err(CsError::InvalidFamily(msg));
    let mut st = Structure::default();
    let mut b_parts: BTreeMap<i64, (Option<String>, Option<String>)> = BTreeMap::new();
    let mut curve_parts: BTreeMap<(FamilyKind, i64, i64, usize), CurveParts> = BTreeMap::new();
    for c in p.components.values() {
        let partner =
            p.components.get(&c.partner).ok_or_else(|| CsError::InvalidFamily(format!("{} has no partner", c.id)))?;
        if partner.family != c.family || partner.kind == c.kind {
            return bad(format!("{} and its partner {} disagree on family or kind", c.id, partner.id));
        }
        let slot = |slots: &mut (Option<String>, Option<String>)| -> Result<(), CsError> {
            let cell = match c.kind {
                ComponentKind::Knot => &mut slots.0,
                ComponentKind::LinkingCircle => &mut slots.1,
            };
            if cell.replace(c.id.clone()).is_some() {
                return Err(CsError::InvalidFamily(format!("{} duplicates a family position", c.id)));
            }
            Ok(())
        };
        match c.family {
            Family::B { i } => {
                if i == 0 {
                    return bad(format!("{} has B_L index 0", c.id));
                }
                slot(b_parts.entry(i).or_default())?;
            }
            Family::S { i, j, curve, parent } | Family::N { i, j, curve, parent } => {
                let kind = c.family.kind();
                if j == 0 || (kind == FamilyKind::S && i >= 0) || (kind == FamilyKind::N && i <= 0) {
                    return bad(format!("{} has family indices ({i}, {j})", c.id));
                }
                if parent.is_some_and(|q| q >= curve) {
                    return bad(format!("{} has parent curve after itself", c.id));
                }
                let e = curve_parts.entry((kind, i, j, curve)).or_default();
                let mut pair = (e.0.take(), e.1.take());
                slot(&mut pair)?;
                *e = (pair.0, pair.1, parent);
            }
            Family::Free => st.free.push(c.id.clone()),
        }
    }
    for (i, (knot, circle)) in b_parts {
        match (knot, circle) {
            (Some(k), Some(c)) => {
                st.b.insert(i, (k, c));
            }
            _ => return bad(format!("B_L({i}) lacks a knot or a circle")),
        }
    }
    for ((kind, i, j, curve), (knot, circle, parent)) in curve_parts {
        let (Some(knot), Some(circle)) = (knot, circle) else {
            return bad(format!("curve {curve} of ({i}, {j}) lacks a knot or a circle"));
        };
        let fam = st.families.entry((kind, i, j)).or_insert_with(|| FamilyData { kind, i, j, curves: BTreeMap::new() });
        let level = match parent {
            None => 1,
            Some(q) => match fam.curves.get(&q) {
                Some(pc) => pc.level + 1,
                None => return bad(format!("curve {curve} of ({i}, {j}) has missing parent {q}")),
            },
        };
        fam.curves.insert(curve, Curve { knot, circle, parent, level });
    }
    Ok(st)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArrowMode {
    /// Every arrow the definition prescribes.
    Full,
    /// As `Full`, minus arrows leaving knots of level 2 or more.
    Optimized,
}

/// Arrow set prescribed by the FWCS definition, each with the clause it comes from.
pub(crate) fn prescribed_arrows(st: &Structure, mode: ArrowMode) -> BTreeMap<(String, String), &'static str> {
    let mut out = BTreeMap::new();
    let mut add = |a: &str, b: &str, rule: &'static str| {
        out.entry((a.to_string(), b.to_string())).or_insert(rule);
    };
    let same_sign = |a: i64, b: i64| (a < 0) == (b < 0);

    for (&i, (_, circle)) in &st.b {
        for (&l, (knot, _)) in &st.b {
            if same_sign(i, l) {
                add(circle, knot, "1a");
            }
        }
    }
    for fam in st.families.values() {
        let rule = if fam.kind == FamilyKind::S { "1b" } else { "1c" };
        for c in fam.curves.values() {
            if let Some(q) = c.parent {
                let parent = &fam.curves[&q];
                add(&parent.knot, &c.knot, rule);
                add(&c.circle, &parent.circle, rule);
            }
        }
    }
    for fam in st.families.values() {
        let toward_j = match fam.kind {
            FamilyKind::N => fam.j < 0,
            _ => fam.j > 0,
        };
        if toward_j {
            if let Some((_, bj_circle)) = st.b.get(&fam.j) {
                for m in fam.maximal() {
                    add(&m.circle, bj_circle, "2a");
                }
            }
        }
        if let Some((_, bi_circle)) = st.b.get(&fam.i) {
            for m in fam.maximal() {
                add(bi_circle, &m.knot, "2a");
            }
        }
        for c in fam.curves.values() {
            let side = family_knot_side(fam.kind, c.level);
            for (&l, (bl, _)) in &st.b {
                if (side == Side::Bullet && l < 0) || (side == Side::Zero && l > 0) {
                    add(&c.knot, bl, "2a");
                }
            }
        }
        for m in fam.maximal() {
            for (&l, (bl, _)) in &st.b {
                if (fam.kind == FamilyKind::S && l < 0) || (fam.kind == FamilyKind::N && l > 0) {
                    add(&m.circle, bl, "2a");
                }
            }
        }
    }
    for f1 in st.families.values() {
        for f2 in st.families.values() {
            if f1.kind != f2.kind || f1.j != f2.i {
                continue;
            }
            let rule = if f1.kind == FamilyKind::S { "2b" } else { "2c" };
            for m1 in f1.maximal() {
                for m2 in f2.maximal() {
                    add(&m1.circle, &m2.knot, rule);
                }
            }
        }
    }
    if mode == ArrowMode::Optimized {
        let deep: Vec<&str> = st
            .families
            .values()
            .flat_map(|f| f.curves.values().filter(|c| c.level >= 2).map(|c| c.knot.as_str()))
            .collect();
        out.retain(|(a, _), _| !deep.contains(&a.as_str()));
    }
    out
}

fn generate(p: &Presentation, mode: ArrowMode) -> Result<Presentation, CsError> {
    let st = structure(p)?;
    let mut out = p.clone();
    out.arrows = prescribed_arrows(&st, mode).into_keys().collect();
    if !out.is_acyclic() {
        return Err(CsError::Cyclic);
    }
    Ok(out)
}

/// Replaces the arrows of `p` by the full set the FWCS definition prescribes.
pub fn generate_fwcs_arrows(p: &Presentation) -> Result<Presentation, CsError> {
    generate(p, ArrowMode::Full)
}

/// As [`generate_fwcs_arrows`], without arrows out of knots of level 2 or more.
pub fn generate_optimized_arrows(p: &Presentation) -> Result<Presentation, CsError> {
    generate(p, ArrowMode::Optimized)
}

pub(crate) const FLAG_2A: &str =
    "knot-to-b_j arrows quantify over every b_j present, not only those with incident families";
pub(crate) const FLAG_SURGERY: &str = "surgery on the link is assumed, not verified, to give S^3";

/// A presentation is FWCS when its labels follow the family rules and its
/// arrows form a subset of the prescribed set.
pub fn check_fwcs(p: &Presentation) -> Report {
    let mut r = p.validate();
    let st = match structure(p) {
        Ok(st) => st,
        Err(e) => {
            r.fail("invalid-family", e.to_string());
            return r;
        }
    };
    for id in &st.free {
        r.fail("not-fwcs", format!("{id} belongs to no B, S or N family"));
    }
    for (id, side) in st.expected_labels() {
        let label = p.components[id].label;
        if label.is_abstract() {
            r.fail("abstract-label", format!("{id} is abstract ({label})"));
        } else if label.side() != side {
            r.fail("label", format!("{id} is labeled {label}, expected {}", side.concrete()));
        }
    }
    let full = prescribed_arrows(&st, ArrowMode::Full);
    for (a, b) in &p.arrows {
        if !full.contains_key(&(a.clone(), b.clone())) {
            r.fail("extra-arrow", format!("arrow {a} -> {b} is not prescribed"));
        }
    }
    if full.values().any(|&rule| rule == "2a") && !st.b.is_empty() {
        r.flag(FLAG_2A);
    }
    if !p.components.is_empty() {
        r.flag(FLAG_SURGERY);
    }
    r
}
