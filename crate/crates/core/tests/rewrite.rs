mod common;

use std::collections::BTreeSet;

use common::*;
use fwcs_core::cs::{ComponentKind, Label, Presentation};
use fwcs_core::rewrite::{
    apply, candidate_ops, make_abstract, make_concrete, slide, RewriteError, RewriteOp, SlideVariant, SplitFlag,
};
use fwcs_core::session::Session;
use proptest::prelude::*;
use rand::seq::SliceRandom;

fn ids(v: &[&str]) -> BTreeSet<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn pairs(spec: &[(&str, Label, Label)]) -> Presentation {
    let mut p = Presentation::new();
    for &(name, k, c) in spec {
        free_pair(&mut p, name, k, c);
    }
    p
}

#[test]
fn make_abstract_examples() {
    let mut p = pairs(&[("a", Label::Zero, Label::Bullet), ("b", Label::Bullet, Label::Zero)]);
    p.arrows = arrows(&[("a", "b"), ("b'", "a")]);
    assert_eq!(make_abstract(&p, &BTreeSet::new()).unwrap(), p);
    let q = make_abstract(&p, &ids(&["a"])).unwrap();
    assert_eq!(q.components["a"].label, Label::AbstractZero);
    assert_eq!(q.arrows, arrows(&[("b'", "a")]));
    assert!(matches!(make_abstract(&q, &ids(&["b"])), Err(RewriteError::ModeConflict(_))));
}

#[test]
fn make_concrete_examples() {
    let mut p = pairs(&[("a", Label::Zero, Label::AbstractZero), ("b", Label::Bullet, Label::Zero)]);
    p.arrows = arrows(&[("b", "a")]);
    assert_eq!(make_concrete(&p, &BTreeSet::new()).unwrap(), p);
    let q = make_concrete(&p, &ids(&["a'"])).unwrap();
    assert_eq!(q.components["a'"].label, Label::Zero);
    assert!(q.arrows.contains(&("a'".to_string(), "b'".to_string())));

    p.arrows.insert(("b'".into(), "a'".into()));
    assert!(matches!(make_concrete(&p, &ids(&["a'"])), Err(RewriteError::OrderConflict(_))));
    assert!(matches!(make_concrete(&p, &ids(&["b'"])), Err(RewriteError::NotAbstract(_))));
}

#[test]
fn cancellation_examples() {
    let mut p = pairs(&[("a", Label::AbstractZero, Label::AbstractZero), ("b", Label::Zero, Label::Bullet)]);
    let op = RewriteOp::CancelKnotCircle { knot: "a".into() };
    let (q, diff) = apply(&p, &op).unwrap();
    assert_eq!(q.components.keys().cloned().collect::<BTreeSet<_>>(), ids(&["b", "b'"]));
    assert_eq!(diff.components_removed.len(), 2);

    p.arrows = arrows(&[("b", "a")]);
    assert!(matches!(apply(&p, &op), Err(RewriteError::Blocked(_))));

    let unflagged = RewriteOp::CancelHopf {
        knot: "a".into(),
        witness: SplitFlag { pair: ("a".into(), "a'".into()), is_split_hopf: false },
    };
    assert!(matches!(apply(&p, &unflagged), Err(RewriteError::NotSplit(_))));
    let flagged = RewriteOp::CancelHopf {
        knot: "a".into(),
        witness: SplitFlag { pair: ("a".into(), "a'".into()), is_split_hopf: true },
    };
    let (q, _) = apply(&p, &flagged).unwrap();
    assert!(q.validate().ok && !q.components.contains_key("a"));
}

#[test]
fn slide_examples() {
    let p = pairs(&[("a", Label::Zero, Label::Bullet), ("b", Label::Bullet, Label::Zero)]);
    assert_eq!(slide(&p, "a", "b'", SlideVariant::ZeroZero).unwrap(), p);

    let mut q = p.clone();
    q.components.get_mut("b'").unwrap().label = Label::AbstractZero;
    free_pair(&mut q, "d", Label::Zero, Label::Bullet);
    q.arrows = arrows(&[("a", "d")]);
    let out = slide(&q, "a", "b'", SlideVariant::ZeroZero).unwrap();
    assert_eq!(out.components["a"].label, Label::AbstractZero);
    assert!(out.successors("a").next().is_none());

    let mut r = pairs(&[
        ("a", Label::Zero, Label::Bullet),
        ("b", Label::Bullet, Label::Zero),
        ("g", Label::Bullet, Label::Zero),
        ("d", Label::Zero, Label::Bullet),
    ]);
    r.arrows = arrows(&[("g", "a"), ("b'", "d")]);
    let out = slide(&r, "a", "b'", SlideVariant::ZeroZero).unwrap();
    assert!(out.arrows.contains(&("g".to_string(), "b'".to_string())));
    assert!(out.arrows.contains(&("a".to_string(), "d".to_string())));

    assert!(matches!(slide(&r, "a", "b'", SlideVariant::BulletBullet), Err(RewriteError::VariantMismatch(_))));
    r.arrows.insert(("b'".into(), "a".into()));
    assert!(matches!(slide(&r, "a", "b'", SlideVariant::ZeroZero), Err(RewriteError::OrderConflict(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn candidates_are_safe(seed in any::<u64>()) {
        let p = gen::valid_presentation(&mut gen::rng(seed));
        let bytes = fwcs_core::document::to_canonical_json(&p);
        for op in candidate_ops(&p).take(200) {
            match apply(&p, &op) {
                Ok((next, diff)) => {
                    prop_assert!(next.validate().ok);
                    prop_assert_eq!(diff.apply(&p), next);
                }
                Err(_) => prop_assert_eq!(fwcs_core::document::to_canonical_json(&p), bytes.clone()),
            }
        }
    }

    #[test]
    fn concrete_after_abstract_restores_labels(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let p = gen::valid_presentation(&mut r);
        let circles: Vec<&String> = p
            .components
            .values()
            .filter(|c| c.kind == ComponentKind::LinkingCircle && !c.label.is_abstract())
            .map(|c| &c.id)
            .collect();
        let Some(&target) = circles.choose(&mut r) else { return Ok(()) };
        let set = BTreeSet::from([target.clone()]);
        let Ok(abs) = make_abstract(&p, &set) else { return Ok(()) };
        let Ok(back) = make_concrete(&abs, &set) else { return Ok(()) };
        prop_assert_eq!(labels(&back), labels(&p));
        let mut want: BTreeSet<(String, String)> = p.arrows.iter().filter(|(a, _)| a != target).cloned().collect();
        let alpha = &p.components[target].partner;
        for beta in abs.predecessors(alpha) {
            want.insert((target.clone(), abs.components[beta].partner.clone()));
        }
        prop_assert_eq!(back.arrows, want);
    }

    #[test]
    fn session_history_replays(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let mut s = Session::new(gen::valid_presentation(&mut r)).unwrap();
        for _ in 0..10 {
            let ops: Vec<RewriteOp> = candidate_ops(s.current()).collect();
            let Some(op) = ops.choose(&mut r) else { break };
            let before = s.current().clone();
            if s.apply(op.clone()).is_ok() {
                s.undo().unwrap();
                prop_assert_eq!(s.current(), &before);
                s.redo().unwrap();
            }
        }
        for (i, e) in s.history().iter().enumerate() {
            prop_assert!(e.snapshot.validate().ok);
            let replayed = s.replay(i);
            prop_assert_eq!(replayed.as_ref(), Some(&e.snapshot));
        }
    }
}
