mod common;

use std::collections::BTreeMap;

use common::*;
use fwcs_core::compiler::{compile, replay, CompileError, CompilerInput};
use fwcs_core::cs::check_fwcs;
use fwcs_core::fw::{lift_to_cover, winding_classes};

#[test]
fn empty_system_compiles_to_empty_presentation() {
    let out = compile(&empty_input()).unwrap();
    assert!(out.presentation.components.is_empty());
    assert!(out.presentation.arrows.is_empty());
    assert!(out.trace.is_empty());
}

#[test]
fn two_finger_fixture() {
    let out = compile(&two_finger_input()).unwrap();
    let p = &out.presentation;
    let want = two_finger_expected();
    assert_eq!(labels(p), want.labels);
    assert_eq!(p.arrows, want.arrows);
    assert!(check_fwcs(p).ok);
    assert_eq!(&replay(&out.trace), p);
}

#[test]
fn hand_fixture() {
    let out = compile(&hand_input()).unwrap();
    let p = &out.presentation;
    let want = hand_expected();
    assert_eq!(labels(p), want.labels);
    assert_eq!(p.arrows, want.arrows);
    assert!(check_fwcs(p).ok);
    assert_eq!(&replay(&out.trace), p);
    let optional: Vec<_> = out.trace.iter().filter(|e| e.optional).flat_map(|e| e.arrows.clone()).collect();
    assert_eq!(optional, vec![("s[-1,1]#0".to_string(), "b[1]".to_string())]);
}

#[test]
fn every_arrow_cites_one_rule() {
    for input in [two_finger_input(), hand_input()] {
        let out = compile(&input).unwrap();
        let mut cited = BTreeMap::new();
        for e in &out.trace {
            for a in &e.arrows {
                assert!(cited.insert(a.clone(), e.rule.clone()).is_none(), "{a:?} cited twice");
            }
        }
        assert_eq!(cited.len(), out.presentation.arrows.len());
    }
}

#[test]
fn unseparated_input_needs_cover() {
    let s = winding_pm1_base();
    let input = CompilerInput::from_base(&s, Vec::new());
    assert_eq!(compile(&input), Err(CompileError::NeedsCover));
    let max = winding_classes(&s).iter().map(|h| h.shift.abs()).max().unwrap() / i64::from(s.k);
    let lifted = lift_to_cover(&s, max + 1).unwrap();
    let out = compile(&CompilerInput::from_base(&lifted, Vec::new())).unwrap();
    assert!(check_fwcs(&out.presentation).ok);
}

#[test]
fn invalid_geometry() {
    let mut input = hand_input();
    input.geometry[0].forest.discs.push(Default::default());
    assert!(matches!(compile(&input), Err(CompileError::InvalidGeometry(_))));
}
