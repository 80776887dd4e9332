#![allow(dead_code)]

use fwcs_core::cs::{Component, ComponentKind, Family, Label, Presentation};
use fwcs_core::document::{serialize, Document};

fn pair(p: &mut Presentation, name: &str, knot: Label, circle: Label) {
    let cid = format!("{name}'");
    let make = |id: &str, kind, label, partner: &str| Component {
        id: id.into(),
        kind,
        family: Family::Free,
        label,
        framing: 0,
        partner: partner.into(),
    };
    p.add_pair(make(name, ComponentKind::Knot, knot, &cid), make(&cid, ComponentKind::LinkingCircle, circle, name));
}

/// `a` can be cancelled; `b` is blocked by the arrow from `c`.
pub fn presentation() -> Presentation {
    let mut p = Presentation::new();
    pair(&mut p, "a", Label::AbstractZero, Label::AbstractZero);
    pair(&mut p, "b", Label::AbstractZero, Label::AbstractZero);
    pair(&mut p, "c", Label::Zero, Label::Bullet);
    p.arrows.insert(("c".into(), "b".into()));
    p
}

pub fn presentation_bytes() -> Vec<u8> {
    serialize(&Document::presentation(presentation()))
}
