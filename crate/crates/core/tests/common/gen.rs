//! Seeded random generators for systems, presentations and documents.

use std::collections::{BTreeMap, BTreeSet};

use fwcs_core::compiler::{CompilerInput, FamilyGeometry};
use fwcs_core::cs::{
    b_pair, build_family, Component, ComponentKind, CurveForest, CurveNode, DiscCurves, Family, FamilyProvenance,
    Label, Presentation,
};
use fwcs_core::document::{Document, Payload};
use fwcs_core::fw::{
    DiscKind, DiscRecord, DualSphere, EyeIndex, FwSystem, Incidence, Indexing, MapTag, PairCount, SphereColor,
    SphereCount, SphereRef, Twist,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Gen = ChaCha8Rng;

pub fn rng(seed: u64) -> Gen {
    ChaCha8Rng::seed_from_u64(seed)
}

fn twist(r: &mut Gen) -> Twist {
    let p = r.gen_range(-4..=4);
    let q = r.gen_range(-4..=4);
    Twist::new(p, q - (p + q).rem_euclid(2))
}

fn tag(r: &mut Gen) -> MapTag {
    let names = ["phi", "psi", "chi"];
    let mut t = MapTag::named(*names.choose(r).unwrap());
    for _ in 0..r.gen_range(0..3) {
        t = match r.gen_range(0..3) {
            0 => t.inverse(),
            1 => t.compose(MapTag::named(*names.choose(r).unwrap())),
            _ => MapTag::named(*names.choose(r).unwrap()).compose(t),
        };
    }
    t
}

fn incidence(r: &mut Gen, k: i64, nf: usize, nw: usize) -> Incidence {
    let mut inc = Incidence::default();
    if nf > 0 && nw > 0 {
        for _ in 0..r.gen_range(0..3) {
            let pc = PairCount { finger: r.gen_range(0..nf), whitney: r.gen_range(0..nw), count: r.gen_range(1..4) };
            if r.gen_bool(0.5) {
                inc.interior.push(pc);
            } else {
                inc.boundary.push(pc);
            }
        }
    }
    for _ in 0..r.gen_range(0..3) {
        let (kind, n) = if r.gen_bool(0.5) { (DiscKind::Finger, nf) } else { (DiscKind::Whitney, nw) };
        if n == 0 {
            continue;
        }
        let color = if r.gen_bool(0.5) { SphereColor::Red } else { SphereColor::Green };
        inc.spheres.push(SphereCount {
            kind,
            disc: r.gen_range(0..n),
            sphere: SphereRef { color, eye: EyeIndex(r.gen_range(1..=k)) },
            count: r.gen_range(1..3),
        });
    }
    if r.gen_bool(0.3) {
        let eye = EyeIndex(r.gen_range(1..=k));
        inc.duals.push(DualSphere {
            eye,
            sphere_hits: vec![(SphereRef { color: SphereColor::Green, eye }, 1)],
            disc_hits: r.gen_range(0..2),
        });
    }
    inc
}

/// A base-indexed system with boundary-germ coinciding pairs, random twists,
/// tag and, sometimes, incidence data.
pub fn system(r: &mut Gen, max_k: i64) -> FwSystem {
    let k = r.gen_range(1..=max_k);
    let n = r.gen_range(0..=5);
    let mut fingers = Vec::new();
    let mut whitneys = Vec::new();
    for _ in 0..n {
        let red = r.gen_range(1..=k);
        let green = r.gen_range(1..=k);
        let shift = r.gen_range(-2 * k..=2 * k);
        fingers.push(DiscRecord::finger(red, green, shift));
        let mut w = DiscRecord::whitney(red, green, shift);
        w.twist = twist(r);
        whitneys.push(w);
    }
    let mut s = FwSystem::new(k as u32, fingers, whitneys).with_diagonal_pairing();
    s.tag = tag(r);
    if r.gen_bool(0.4) {
        s.incidence = Some(incidence(r, k, n, n));
    }
    s
}

/// A system whose eyes admit a monotone placement: each finger's shift is at
/// least the rise of a random potential along it, plus one between distinct
/// eyes. Half the time all shifts are negated.
pub fn monotone_system(r: &mut Gen) -> FwSystem {
    let k = r.gen_range(1..=4);
    let phi: Vec<i64> = (0..=k).map(|_| r.gen_range(-3..=3)).collect();
    let down = r.gen_bool(0.5);
    let mut fingers = Vec::new();
    for _ in 0..r.gen_range(0..=8) {
        let a = r.gen_range(1..=k);
        let b = r.gen_range(1..=k);
        let floor = phi[b as usize] - phi[a as usize] + i64::from(a != b);
        let shift = floor + r.gen_range(0..=2);
        fingers.push(DiscRecord::finger(a, b, if down { -shift } else { shift }));
    }
    let whitneys = fingers.iter().map(|f| DiscRecord::whitney(f.red.0, f.green.0, f.shift)).collect();
    FwSystem::new(k as u32, fingers, whitneys).with_diagonal_pairing()
}

fn tree(r: &mut Gen, depth: u32, max_eye: i64) -> CurveNode {
    let mut node = CurveNode::leaf();
    if r.gen_bool(0.3) {
        let e = r.gen_range(1..=max_eye);
        node.red_incidence.push(EyeIndex(if r.gen_bool(0.5) { e } else { -e }));
    }
    if depth > 1 {
        for _ in 0..r.gen_range(0..=2) {
            if r.gen_bool(0.5) {
                node.children.push(tree(r, depth - 1, max_eye));
            }
        }
    }
    node
}

pub fn forest(r: &mut Gen, discs: usize, max_eye: i64) -> CurveForest {
    forest_of_height(r, discs, max_eye, 3)
}

pub fn forest_of_height(r: &mut Gen, discs: usize, max_eye: i64, height: u32) -> CurveForest {
    CurveForest {
        discs: (0..discs)
            .map(|_| DiscCurves {
                roots: (0..r.gen_range(0..=2)).map(|_| tree(r, height, max_eye)).collect(),
                outside_incidence: Vec::new(),
            })
            .collect(),
    }
}

fn nonzero(r: &mut Gen, m: i64) -> i64 {
    let v = r.gen_range(1..=m);
    if r.gen_bool(0.5) {
        v
    } else {
        -v
    }
}

pub fn family_configuration(r: &mut Gen) -> Presentation {
    family_configuration_of_height(r, 3)
}

/// B_L pairs for a random index set plus random S/N families whose curves
/// nest at most `height` deep, without arrows. Provenance is recorded for
/// every family.
pub fn family_configuration_of_height(r: &mut Gen, height: u32) -> Presentation {
    let mut p = Presentation::new();
    for i in [-3, -2, -1, 1, 2, 3] {
        if r.gen_bool(0.5) {
            let (k, c) = b_pair(i);
            p.add_pair(k, c);
        }
    }
    let mut seen = BTreeSet::new();
    for _ in 0..r.gen_range(0..=4) {
        let (i, j) = (nonzero(r, 3), nonzero(r, 3));
        if !seen.insert((i, j)) {
            continue;
        }
        let discs = r.gen_range(1..=2);
        let f = forest_of_height(r, discs, 3, height);
        for c in build_family(&f, i, j).unwrap() {
            p.components.insert(c.id.clone(), c);
        }
        p.provenance.push(FamilyProvenance { i, j, forest: f });
    }
    p
}

/// Random free knot/circle pairs with a random acyclic arrow relation and
/// arbitrary concrete labels.
pub fn free_presentation(r: &mut Gen) -> Presentation {
    let n = r.gen_range(1..=5);
    let mut p = Presentation::new();
    let concrete = |r: &mut Gen| if r.gen_bool(0.5) { Label::Zero } else { Label::Bullet };
    for i in 0..n {
        let (kl, cl) = (concrete(r), concrete(r));
        super::free_pair(&mut p, &format!("x{i}"), kl, cl);
    }
    let mut order: Vec<String> = p.components.keys().cloned().collect();
    order.shuffle(r);
    for a in 0..order.len() {
        for b in a + 1..order.len() {
            if r.gen_bool(0.25) && p.components[&order[a]].partner != order[b] {
                p.arrows.insert((order[a].clone(), order[b].clone()));
            }
        }
    }
    p
}

/// Either an FWCS presentation with its full arrow set or a free one.
pub fn valid_presentation(r: &mut Gen) -> Presentation {
    match r.gen_range(0..3) {
        0 => free_presentation(r),
        1 => fwcs_core::cs::generate_fwcs_arrows(&family_configuration(r)).unwrap(),
        _ => fwcs_core::cs::generate_optimized_arrows(&family_configuration(r)).unwrap(),
    }
}

/// Any presentation, valid or not: random labels, framings and arrows.
pub fn any_presentation(r: &mut Gen) -> Presentation {
    let mut p = valid_presentation(r);
    let labels = [Label::Zero, Label::Bullet, Label::AbstractZero, Label::AbstractBullet];
    let ids: Vec<String> = p.components.keys().cloned().collect();
    for id in &ids {
        let c = p.components.get_mut(id).unwrap();
        if r.gen_bool(0.3) {
            c.label = *labels.choose(r).unwrap();
        }
        if r.gen_bool(0.1) {
            c.framing = r.gen_range(-3..=3);
        }
    }
    if !ids.is_empty() && r.gen_bool(0.3) {
        let a = ids.choose(r).unwrap().clone();
        let b = ids.choose(r).unwrap().clone();
        p.arrows.insert((a, b));
    }
    if r.gen_bool(0.1) {
        let c = Component {
            id: "stray ⊘ \"id\"".into(),
            kind: ComponentKind::Knot,
            family: Family::Free,
            label: Label::AbstractZero,
            framing: 2,
            partner: "nowhere".into(),
        };
        p.components.insert(c.id.clone(), c);
    }
    p
}

pub fn compiler_input(r: &mut Gen) -> CompilerInput {
    let mut s = system(r, 3);
    s.indexing = if r.gen_bool(0.5) { Indexing::Lifted } else { Indexing::Base };
    let geometry = (0..r.gen_range(0..=2))
        .map(|_| {
            let (i, j) = (nonzero(r, 3), nonzero(r, 3));
            FamilyGeometry { i, j, forest: forest(r, 2, 3) }
        })
        .collect();
    CompilerInput { system: s, geometry, separation_ok: r.gen_bool(0.5) }
}

fn metadata(r: &mut Gen) -> BTreeMap<String, String> {
    let words = ["source", "note", "ünïcode", "quote\"d", "line\nbreak", "tab\t", "★", ""];
    (0..r.gen_range(0..=3))
        .map(|_| {
            let key = words.choose(r).unwrap().to_string();
            let word = *words.choose(r).unwrap();
            (key, word.repeat(r.gen_range(0..3)))
        })
        .collect()
}

pub fn document(r: &mut Gen) -> Document {
    let payload = match r.gen_range(0..3) {
        0 => Payload::FwSystem(system(r, 4)),
        1 => Payload::Presentation(any_presentation(r)),
        _ => Payload::CompilerInput(compiler_input(r)),
    };
    let mut d = Document::new(payload);
    d.metadata = metadata(r);
    d
}
