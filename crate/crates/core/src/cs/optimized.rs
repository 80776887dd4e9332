//! Certificates and checks for optimized FWCS presentations.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::forest::FlatCurve;
use super::model::{ComponentKind, FamilyKind, Presentation, Report};
use super::CsError;

/// The A/B/C split of the S_L ∪ N_L knots together with the solid tori and
/// handlebodies witnessing it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OptimizedCert {
    #[serde(default, rename = "A")]
    pub a: BTreeSet<String>,
    #[serde(default, rename = "B")]
    pub b: BTreeSet<String>,
    #[serde(default, rename = "C")]
    pub c: BTreeSet<String>,
    /// `α ↦` the B knots inside the solid torus around `α`.
    #[serde(default, rename = "toriIncidence")]
    pub tori_incidence: BTreeMap<String, Vec<String>>,
    /// `α ↦` the C knots grouped by 1-handle of the handlebody around `α`.
    #[serde(default, rename = "handlebodyIncidence")]
    pub handlebody_incidence: BTreeMap<String, Vec<Vec<String>>>,
}

/// Level of every S/N knot, read from the recorded curve forests.
fn knot_levels(p: &Presentation) -> Result<BTreeMap<String, (FamilyKind, u32)>, CsError> {
    let mut flat: BTreeMap<(i64, i64), Vec<FlatCurve>> = BTreeMap::new();
    for prov in &p.provenance {
        flat.insert((prov.i, prov.j), prov.forest.flatten());
    }
    let mut out = BTreeMap::new();
    for c in p.components.values().filter(|c| c.kind == ComponentKind::Knot) {
        let (Some((i, j)), Some(curve)) = (c.family.indices(), c.family.curve()) else {
            continue;
        };
        let curves = flat
            .get(&(i, j))
            .ok_or_else(|| CsError::CannotCheckLevel(format!("no curve forest recorded for family ({i}, {j})")))?;
        let level = curves
            .get(curve)
            .ok_or_else(|| CsError::CannotCheckLevel(format!("family ({i}, {j}) records no curve {curve}")))?
            .level;
        out.insert(c.id.clone(), (c.family.kind(), level));
    }
    Ok(out)
}

/// Checks the five conditions of an optimized presentation against `cert`.
pub fn check_optimized(p: &Presentation, cert: &OptimizedCert) -> Result<Report, CsError> {
    let levels = knot_levels(p)?;
    let mut r = Report::new();

    for (id, &(_, level)) in &levels {
        if level > 2 {
            r.fail("level", format!("knot {id} has level {level}"));
        }
    }
    for c in p.components.values().filter(|c| c.kind == ComponentKind::Knot) {
        if c.framing != 0 {
            r.fail("framing", format!("knot {} has framing {}", c.id, c.framing));
        }
    }

    let mut owner: BTreeMap<&str, &str> = BTreeMap::new();
    for (name, set) in [("A", &cert.a), ("B", &cert.b), ("C", &cert.c)] {
        for id in set {
            if !levels.contains_key(id) {
                r.fail("partition", format!("{id} in {name} is not an S or N knot"));
            }
            if let Some(prev) = owner.insert(id, name) {
                r.fail("partition", format!("{id} lies in both {prev} and {name}"));
            }
        }
    }
    for id in levels.keys() {
        if !owner.contains_key(id.as_str()) {
            r.fail("partition", format!("{id} lies in none of A, B, C"));
        }
    }
    for id in cert.b.iter().chain(&cert.c) {
        if p.successors(id).next().is_some() {
            r.fail("minimality", format!("{id} has outgoing arrows"));
        }
    }
    for (id, &(_, level)) in &levels {
        if level == 2 && !cert.b.contains(id) && !cert.c.contains(id) {
            r.fail("minimality", format!("level-2 knot {id} is in neither B nor C"));
        }
    }

    let kind_of = |id: &str| levels.get(id).map(|&(k, _)| k);
    let level_of = |id: &str| levels.get(id).map(|&(_, l)| l);
    let mut covered_b: BTreeMap<&str, usize> = BTreeMap::new();
    for (alpha, betas) in &cert.tori_incidence {
        if !cert.a.contains(alpha) {
            r.fail("tori", format!("solid torus core {alpha} is not in A"));
            continue;
        }
        let alpha_kind = kind_of(alpha);
        for beta in betas {
            *covered_b.entry(beta).or_default() += 1;
            if !cert.b.contains(beta) {
                r.fail("tori", format!("{beta} in the torus of {alpha} is not in B"));
                continue;
            }
            let want = if kind_of(beta) == alpha_kind { 1 } else { 2 };
            if level_of(beta) != Some(want) {
                r.fail("tori", format!("{beta} in the torus of {alpha} should have level {want}"));
            }
        }
    }
    for id in &cert.b {
        match covered_b.get(id.as_str()) {
            Some(1) => {}
            n => r.fail("tori", format!("{id} appears in {} solid tori", n.copied().unwrap_or(0))),
        }
    }

    let mut covered_c: BTreeMap<&str, usize> = BTreeMap::new();
    for (alpha, groups) in &cert.handlebody_incidence {
        if !cert.a.contains(alpha) {
            r.fail("handlebody", format!("handlebody core {alpha} is not in A"));
            continue;
        }
        let alpha_kind = kind_of(alpha);
        for gamma in groups.iter().flatten() {
            *covered_c.entry(gamma).or_default() += 1;
            if !cert.c.contains(gamma) {
                r.fail("handlebody", format!("{gamma} in the handlebody of {alpha} is not in C"));
                continue;
            }
            let want = if kind_of(gamma) == alpha_kind { 2 } else { 1 };
            if level_of(gamma) != Some(want) {
                r.fail("handlebody", format!("{gamma} in the handlebody of {alpha} should have level {want}"));
            }
        }
    }
    for id in &cert.c {
        match covered_c.get(id.as_str()) {
            Some(1) => {}
            n => r.fail("handlebody", format!("{id} appears in {} handlebodies", n.copied().unwrap_or(0))),
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cs::forest::{CurveForest, CurveNode, DiscCurves};
    use crate::cs::fwcs::{build_family, generate_optimized_arrows};
    use crate::cs::model::FamilyProvenance;

    fn family(p: &mut Presentation, roots: Vec<CurveNode>, i: i64, j: i64) {
        let forest = CurveForest { discs: vec![DiscCurves { roots, outside_incidence: vec![] }] };
        for c in build_family(&forest, i, j).unwrap() {
            p.components.insert(c.id.clone(), c);
        }
        p.provenance.push(FamilyProvenance { i, j, forest });
    }

    #[test]
    fn empty_passes() {
        assert!(check_optimized(&Presentation::new(), &OptimizedCert::default()).unwrap().ok);
    }

    #[test]
    fn level_three_fails() {
        let mut p = Presentation::new();
        let deep = CurveNode::with_children(vec![CurveNode::with_children(vec![CurveNode::leaf()])]);
        family(&mut p, vec![deep], -1, 1);
        let r = check_optimized(&p, &OptimizedCert::default()).unwrap();
        assert!(r.has("level"));
    }

    #[test]
    fn missing_provenance() {
        let mut p = Presentation::new();
        family(&mut p, vec![CurveNode::leaf()], -1, 1);
        p.provenance.clear();
        assert!(matches!(check_optimized(&p, &OptimizedCert::default()), Err(CsError::CannotCheckLevel(_))));
    }

    fn two_level() -> (Presentation, OptimizedCert) {
        let mut p = Presentation::new();
        family(&mut p, vec![CurveNode::with_children(vec![CurveNode::leaf()])], -1, 1);
        let p = generate_optimized_arrows(&p).unwrap();
        let cert = OptimizedCert {
            a: BTreeSet::from(["s[-1,1]#0".to_string()]),
            b: BTreeSet::from(["s[-1,1]#1".to_string()]),
            c: BTreeSet::new(),
            tori_incidence: BTreeMap::new(),
            handlebody_incidence: BTreeMap::new(),
        };
        (p, cert)
    }

    #[test]
    fn torus_level_rule() {
        let (p, mut cert) = two_level();
        let r = check_optimized(&p, &cert).unwrap();
        assert!(r.has("tori"), "uncovered B knot must be reported");
        // α in S with β in S must have β at level 1
        cert.tori_incidence.insert("s[-1,1]#0".into(), vec!["s[-1,1]#1".into()]);
        let r = check_optimized(&p, &cert).unwrap();
        assert!(r.has("tori"));
        assert!(!r.has("minimality"));
    }

    #[test]
    fn b_knot_with_outgoing_arrow() {
        let (mut p, cert) = two_level();
        p.arrows.insert(("s[-1,1]#1".into(), "s'[-1,1]#0".into()));
        assert!(check_optimized(&p, &cert).unwrap().has("minimality"));
    }

    #[test]
    fn valid_certificate() {
        let mut p = Presentation::new();
        family(&mut p, vec![CurveNode::leaf()], 1, 2);
        family(&mut p, vec![CurveNode::with_children(vec![CurveNode::leaf()])], -1, 1);
        let p = generate_optimized_arrows(&p).unwrap();
        let cert = OptimizedCert {
            a: BTreeSet::from(["n[1,2]#0".to_string(), "s[-1,1]#0".to_string()]),
            b: BTreeSet::from(["s[-1,1]#1".to_string()]),
            c: BTreeSet::new(),
            tori_incidence: BTreeMap::from([("n[1,2]#0".to_string(), vec!["s[-1,1]#1".to_string()])]),
            handlebody_incidence: BTreeMap::new(),
        };
        let r = check_optimized(&p, &cert).unwrap();
        assert!(r.ok, "{:?}", r.violations);
    }
}
