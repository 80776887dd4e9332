//! Compiles a lifted F|W system and its Whitney-disc curve data into an FWCS
//! presentation, recording which rule produced each component and arrow.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cs::{
    b_pair, build_family, check_fwcs, prescribed_arrows, structure, ArrowMode, Component, CurveForest, FamilyKind,
    FamilyProvenance, Presentation, Report,
};
use crate::fw::{EyeIndex, FwSystem, Indexing};

/// Curve data for the Whitney discs running from `R̃_i` to `G̃_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilyGeometry {
    pub i: i64,
    pub j: i64,
    pub forest: CurveForest,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CompilerInput {
    pub system: FwSystem,
    #[serde(default)]
    pub geometry: Vec<FamilyGeometry>,
    /// Asserts that the lifts are far enough apart; see [`CompilerInput::from_base`].
    #[serde(rename = "separationOK")]
    pub separation_ok: bool,
}

impl CompilerInput {
    /// Lifts a base-indexed system to the window of sheets around the
    /// separating 3-sphere: each disc contributes its lifts with red end at raw
    /// positions `r` and `r - k`. Separation holds when every displacement is
    /// shorter than `k`, which a cover of degree above the largest winding
    /// always achieves.
    pub fn from_base(s: &FwSystem, geometry: Vec<FamilyGeometry>) -> CompilerInput {
        let k = i64::from(s.k);
        let lift = |d: &crate::fw::DiscRecord, sheet: i64| {
            let raw_red = d.red.0 - sheet * k;
            let mut out = d.clone();
            out.red = EyeIndex::from_raw_lift(raw_red);
            out.green = EyeIndex::from_raw_lift(raw_red + d.shift);
            out
        };
        let (nf, nw) = (s.fingers.len(), s.whitneys.len());
        let mut system = FwSystem {
            k: s.k,
            indexing: Indexing::Lifted,
            fingers: Vec::with_capacity(2 * nf),
            whitneys: Vec::with_capacity(2 * nw),
            pairing: Vec::with_capacity(2 * s.pairing.len()),
            incidence: None,
            tag: s.tag.clone(),
        };
        for sheet in 0..2 {
            system.fingers.extend(s.fingers.iter().map(|d| lift(d, sheet)));
            system.whitneys.extend(s.whitneys.iter().map(|d| lift(d, sheet)));
            let off = sheet as usize;
            system.pairing.extend(s.pairing.iter().map(|&(f, w)| (f + off * nf, w + off * nw)));
        }
        let separation_ok = s.discs().all(|d| d.shift.abs() < k);
        CompilerInput { system, geometry, separation_ok }
    }
}

/// One rule firing: what it read and what it emitted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub rule: String,
    #[serde(default)]
    pub inputs: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<Component>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub arrows: Vec<(String, String)>,
    /// Arrows the rule allows but does not force.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub optional: bool,
    /// Arrows the geometry suggested but the FWCS definition does not permit.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub suppressed: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<FamilyProvenance>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompilerOutput {
    pub presentation: Presentation,
    pub trace: Vec<TraceEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CompileError {
    #[error("lifts are not separated; pass to a cover of higher degree first")]
    NeedsCover,
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),
    #[error("invalid system: {0}")]
    InvalidSystem(String),
    #[error("compiled presentation fails the FWCS check: {0:?}")]
    Incoherent(Report),
}

impl CompileError {
    pub fn code(&self) -> &'static str {
        match self {
            CompileError::NeedsCover => "needs-cover",
            CompileError::InvalidGeometry(_) => "invalid-geometry",
            CompileError::InvalidSystem(_) => "invalid-system",
            CompileError::Incoherent(_) => "incoherent",
        }
    }
}

/// Green indices `j` of fingers whose ends lie on opposite sides of the
/// separating sphere. Each indexes a plunged pie and a knot `b_j`.
pub fn plunged_pies(s: &FwSystem) -> BTreeSet<EyeIndex> {
    s.fingers.iter().filter(|f| f.red.is_negative() != f.green.is_negative()).map(|f| f.green).collect()
}

struct Emitter {
    allowed: BTreeMap<(String, String), &'static str>,
    emitted: BTreeSet<(String, String)>,
    trace: Vec<TraceEntry>,
}

impl Emitter {
    fn entry(&mut self, rule: &str, inputs: Vec<String>, want: Vec<(String, String)>, optional: bool) {
        let mut e = TraceEntry { rule: rule.into(), inputs, optional, ..TraceEntry::default() };
        for a in want {
            if !self.allowed.contains_key(&a) {
                e.suppressed.push(a);
            } else if self.emitted.insert(a.clone()) {
                e.arrows.push(a);
            }
        }
        if !e.arrows.is_empty() || !e.suppressed.is_empty() {
            self.trace.push(e);
        }
    }
}

fn sign_eq(a: i64, b: i64) -> bool {
    (a < 0) == (b < 0)
}

pub fn compile(input: &CompilerInput) -> Result<CompilerOutput, CompileError> {
    let s = &input.system;
    if !input.separation_ok {
        return Err(CompileError::NeedsCover);
    }
    if s.has_discs() && s.indexing != Indexing::Lifted {
        return Err(CompileError::InvalidSystem("the compiler reads lifted indices".into()));
    }
    s.validate().map_err(|e| CompileError::InvalidSystem(e.to_string()))?;
    if !s.is_boundary_germ_coinciding() {
        return Err(CompileError::InvalidSystem("system is not boundary-germ coinciding".into()));
    }
    let mut geometry: BTreeMap<(i64, i64), &CurveForest> = BTreeMap::new();
    for g in &input.geometry {
        let discs = s.whitneys.iter().filter(|w| w.red.0 == g.i && w.green.0 == g.j).count();
        if discs == 0 {
            return Err(CompileError::InvalidGeometry(format!("no Whitney disc runs from {} to {}", g.i, g.j)));
        }
        if g.forest.discs.len() > discs {
            return Err(CompileError::InvalidGeometry(format!(
                "family ({}, {}) records {} discs but the system has {discs}",
                g.i,
                g.j,
                g.forest.discs.len()
            )));
        }
        if geometry.insert((g.i, g.j), &g.forest).is_some() {
            return Err(CompileError::InvalidGeometry(format!("family ({}, {}) given twice", g.i, g.j)));
        }
    }

    let mut p = Presentation::new();
    let mut trace = Vec::new();
    for j in plunged_pies(s) {
        let (knot, circle) = b_pair(j.0);
        let inputs = s
            .fingers
            .iter()
            .filter(|f| f.green == j && f.red.is_negative() != j.is_negative())
            .map(|f| format!("finger {} -> {}", f.red, f.green))
            .collect();
        trace.push(TraceEntry {
            rule: "memo1b".into(),
            inputs,
            components: vec![knot.clone(), circle.clone()],
            ..TraceEntry::default()
        });
        p.add_pair(knot, circle);
    }
    for (&(i, j), forest) in &geometry {
        let comps = build_family(forest, i, j).map_err(|e| CompileError::InvalidGeometry(e.to_string()))?;
        let prov = FamilyProvenance { i, j, forest: (*forest).clone() };
        trace.push(TraceEntry {
            rule: "memo3.1a".into(),
            inputs: vec![format!("curves on the Whitney discs from {i} to {j}")],
            components: comps.clone(),
            provenance: Some(prov.clone()),
            ..TraceEntry::default()
        });
        for c in comps {
            p.components.insert(c.id.clone(), c);
        }
        p.provenance.push(prov);
    }

    let st = structure(&p).map_err(|e| CompileError::InvalidGeometry(e.to_string()))?;
    let mut em = Emitter { allowed: prescribed_arrows(&st, ArrowMode::Full), emitted: BTreeSet::new(), trace };
    let b_knot = |l: i64| st.b.get(&l).map(|(k, _)| k.clone());
    let b_circle = |l: i64| st.b.get(&l).map(|(_, c)| c.clone());
    let outside: BTreeMap<i64, BTreeSet<i64>> = {
        let mut m: BTreeMap<i64, BTreeSet<i64>> = BTreeMap::new();
        for (&(i, _), forest) in &geometry {
            m.entry(i).or_default().extend(forest.outside_incidence().map(|e| e.0));
        }
        m
    };

    for fam in st.families.values() {
        let rule = if fam.kind == FamilyKind::S { "fwcs1b" } else { "fwcs1c" };
        for c in fam.curves.values() {
            if let Some(q) = c.parent {
                let parent = &fam.curves[&q];
                em.entry(
                    rule,
                    vec![format!("curve {q} encloses a curve of family ({}, {})", fam.i, fam.j)],
                    vec![(parent.knot.clone(), c.knot.clone()), (c.circle.clone(), parent.circle.clone())],
                    false,
                );
            }
        }
    }

    for fam in st.families.values() {
        let flat = geometry[&(fam.i, fam.j)].flatten();
        for (idx, c) in &fam.curves {
            let side = p.components[&c.knot].label.side();
            let mut want = Vec::new();
            let mut hits: BTreeMap<i64, u64> = BTreeMap::new();
            for e in &flat[*idx].red_incidence {
                *hits.entry(e.0).or_default() += 1;
            }
            for &l in hits.keys() {
                if let Some(bl) = b_knot(l) {
                    want.push((c.knot.clone(), bl));
                }
            }
            if !want.is_empty() {
                let inputs = hits
                    .iter()
                    .map(|(l, n)| format!("{} meets R{l} {n} time(s); knot labeled {}", c.knot, side.concrete()))
                    .collect();
                em.entry("memo5a", inputs, want, true);
            }
        }
    }

    for (&i, (_, bi_circle)) in &st.b {
        let mut want = Vec::new();
        for fam in st.families.values().filter(|f| f.i == i) {
            want.extend(fam.maximal().map(|m| (bi_circle.clone(), m.knot.clone())));
        }
        em.entry("memo5b", vec![format!("maximal knots of families ({i}, *)")], want, false);
        let mut want = Vec::new();
        for &l in outside.get(&i).into_iter().flatten() {
            if let Some(bl) = b_knot(l).filter(|_| sign_eq(i, l)) {
                want.push((bi_circle.clone(), bl));
            }
        }
        em.entry("memo5b", vec![format!("Whitney discs ({i}, *) meet red spheres outside their curves")], want, false);
    }

    for fam in st.families.values() {
        let (i, j) = (fam.i, fam.j);
        if !sign_eq(i, j) {
            if let Some(bj_circle) = b_circle(j) {
                let want = fam.maximal().map(|m| (m.circle.clone(), bj_circle.clone())).collect();
                em.entry("memo5c", vec![format!("minimal circles of family ({i}, {j})")], want, false);
            }
            continue;
        }
        let rule = if fam.kind == FamilyKind::S { "memo5d" } else { "memo5e" };
        let mut want = Vec::new();
        for m in fam.maximal() {
            for next in st.families.values().filter(|f| f.i == j && f.kind == fam.kind) {
                want.extend(next.maximal().map(|n| (m.circle.clone(), n.knot.clone())));
            }
            for &l in outside.get(&i).into_iter().flatten() {
                if let Some(bl) = b_knot(l).filter(|_| sign_eq(i, l)) {
                    want.push((m.circle.clone(), bl));
                }
            }
        }
        em.entry(rule, vec![format!("minimal circles of family ({i}, {j})")], want, false);
    }

    let maximal: u64 = st.families.values().map(|f| f.maximal().count() as u64).sum();
    if maximal > 0 {
        em.trace.push(TraceEntry {
            rule: "memo3.1f".into(),
            inputs: vec!["self-nestings of the Whitney discs in their maximal curves; no arrows emitted".into()],
            count: Some(maximal),
            ..TraceEntry::default()
        });
    }

    p.arrows = em.emitted;
    let report = check_fwcs(&p);
    if !report.ok {
        return Err(CompileError::Incoherent(report));
    }
    Ok(CompilerOutput { presentation: p, trace: em.trace })
}

/// Rebuilds the presentation from a trace alone.
pub fn replay(trace: &[TraceEntry]) -> Presentation {
    let mut p = Presentation::new();
    for e in trace {
        for c in &e.components {
            p.components.insert(c.id.clone(), c.clone());
        }
        p.arrows.extend(e.arrows.iter().cloned());
        if let Some(prov) = &e.provenance {
            p.provenance.push(prov.clone());
        }
    }
    p
}
