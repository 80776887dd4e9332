#![allow(dead_code)]

pub mod gen;

use std::collections::{BTreeMap, BTreeSet};

use fwcs_core::compiler::{CompilerInput, FamilyGeometry};
use fwcs_core::cs::{Component, ComponentKind, CurveForest, CurveNode, DiscCurves, Family, Label, Presentation};
use fwcs_core::fw::{DiscRecord, EyeIndex, FwSystem, Indexing};

/// Lifted system on one eye with a finger and a Whitney disc for each
/// `(red, green)`, paired by position.
pub fn lifted_pairs(ends: &[(i64, i64)]) -> FwSystem {
    let raw = |e: i64| if e > 0 { e } else { e + 1 };
    let shift = |r: i64, g: i64| raw(g) - raw(r);
    let mut s = FwSystem::new(
        1,
        ends.iter().map(|&(r, g)| DiscRecord::finger(r, g, shift(r, g))).collect(),
        ends.iter().map(|&(r, g)| DiscRecord::whitney(r, g, shift(r, g))).collect(),
    )
    .with_diagonal_pairing();
    s.indexing = Indexing::Lifted;
    s
}

pub fn forest(discs: Vec<Vec<CurveNode>>) -> CurveForest {
    CurveForest { discs: discs.into_iter().map(|roots| DiscCurves { roots, outside_incidence: Vec::new() }).collect() }
}

pub fn empty_input() -> CompilerInput {
    CompilerInput { system: FwSystem::empty(), geometry: Vec::new(), separation_ok: true }
}

/// Two fingers winding +1 and -1 on one eye, one root curve on each Whitney
/// disc, no red incidences.
pub fn two_finger_input() -> CompilerInput {
    CompilerInput {
        system: lifted_pairs(&[(-1, 1), (1, -1)]),
        geometry: vec![
            FamilyGeometry { i: -1, j: 1, forest: forest(vec![vec![CurveNode::leaf()]]) },
            FamilyGeometry { i: 1, j: -1, forest: forest(vec![vec![CurveNode::leaf()]]) },
        ],
        separation_ok: true,
    }
}

/// A hand of two fingers from -1 to 1. The first Whitney disc carries a root
/// curve meeting R1 with one nested curve; the second carries none.
pub fn hand_input() -> CompilerInput {
    let root = CurveNode { red_incidence: vec![EyeIndex(1)], children: vec![CurveNode::leaf()] };
    CompilerInput {
        system: lifted_pairs(&[(-1, 1), (-1, 1)]),
        geometry: vec![FamilyGeometry { i: -1, j: 1, forest: forest(vec![vec![root], vec![]]) }],
        separation_ok: true,
    }
}

/// The ±1 fixture as a base-indexed system on one eye.
pub fn winding_pm1_base() -> FwSystem {
    FwSystem::new(
        1,
        vec![DiscRecord::finger(1, 1, 1), DiscRecord::finger(1, 1, -1)],
        vec![DiscRecord::whitney(1, 1, 1), DiscRecord::whitney(1, 1, -1)],
    )
    .with_diagonal_pairing()
}

pub fn free_pair(p: &mut Presentation, name: &str, knot: Label, circle: Label) {
    let cid = format!("{name}'");
    p.add_pair(
        Component {
            id: name.into(),
            kind: ComponentKind::Knot,
            family: Family::Free,
            label: knot,
            framing: 0,
            partner: cid.clone(),
        },
        Component {
            id: cid,
            kind: ComponentKind::LinkingCircle,
            family: Family::Free,
            label: circle,
            framing: 0,
            partner: name.into(),
        },
    );
}

pub fn arrows(v: &[(&str, &str)]) -> BTreeSet<(String, String)> {
    v.iter().map(|&(a, b)| (a.to_string(), b.to_string())).collect()
}

pub fn labels(p: &Presentation) -> BTreeMap<String, Label> {
    p.components.iter().map(|(k, c)| (k.clone(), c.label)).collect()
}

fn label_map(v: &[(&str, Label)]) -> BTreeMap<String, Label> {
    v.iter().map(|&(k, l)| (k.to_string(), l)).collect()
}

pub struct Expected {
    pub labels: BTreeMap<String, Label>,
    pub arrows: BTreeSet<(String, String)>,
}

/// Hand-derived output for [`two_finger_input`]: b pairs at +1 and -1 from
/// the two plunged pies, a singleton S and N family, and the b'/family-circle
/// arrows.
pub fn two_finger_expected() -> Expected {
    use Label::*;
    Expected {
        labels: label_map(&[
            ("b[1]", Bullet),
            ("b'[1]", Zero),
            ("b[-1]", Zero),
            ("b'[-1]", Bullet),
            ("s[-1,1]#0", Zero),
            ("s'[-1,1]#0", Bullet),
            ("n[1,-1]#0", Bullet),
            ("n'[1,-1]#0", Zero),
        ]),
        arrows: arrows(&[
            ("b'[-1]", "s[-1,1]#0"),
            ("b'[1]", "n[1,-1]#0"),
            ("s'[-1,1]#0", "b'[1]"),
            ("n'[1,-1]#0", "b'[-1]"),
        ]),
    }
}

/// Hand-derived output for [`hand_input`]: one b pair, a two-level S family,
/// the nesting arrows, the minimal circle above b'[1], and the root knot
/// above b[1] from its red incidence.
pub fn hand_expected() -> Expected {
    use Label::*;
    Expected {
        labels: label_map(&[
            ("b[1]", Bullet),
            ("b'[1]", Zero),
            ("s[-1,1]#0", Zero),
            ("s'[-1,1]#0", Bullet),
            ("s[-1,1]#1", Bullet),
            ("s'[-1,1]#1", Zero),
        ]),
        arrows: arrows(&[
            ("s[-1,1]#0", "s[-1,1]#1"),
            ("s'[-1,1]#1", "s'[-1,1]#0"),
            ("s'[-1,1]#0", "b'[1]"),
            ("s[-1,1]#0", "b[1]"),
        ]),
    }
}
