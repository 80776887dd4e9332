//! Winding, hands, and the group-like operations on Finger|Whitney systems.

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::system::{
    DiscKind, DiscRecord, DualSphere, EyeIndex, FwSystem, Incidence, Indexing, PairCount, SphereColor, SphereCount,
};
use super::twist::Twist;
use super::FwError;

/// Winding `shift / k` of a disc, in lowest terms.
pub fn winding(d: &DiscRecord, k: i64) -> Result<Ratio<i64>, FwError> {
    if k <= 0 {
        return Err(FwError::InvalidSystem(format!("winding needs k > 0, got {k}")));
    }
    Ok(Ratio::new(d.shift, k))
}

/// Twisting of `w` relative to `w0`, both recorded against their fingers.
pub fn relative_twist(w: &DiscRecord, w0: &DiscRecord) -> Twist {
    w.twist - w0.twist
}

/// A winding-equivalence class of fingers: one hand of the AHF normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HandClass {
    pub red: EyeIndex,
    pub green: EyeIndex,
    pub shift: i64,
    pub finger_count: usize,
}

impl HandClass {
    /// A hand with `f` fingers carries `f - 1` auxiliary discs.
    pub fn auxiliary_disc_count(&self) -> usize {
        self.finger_count - 1
    }
}

/// Partition of the fingers into hands, ordered by `(red, green, shift)`.
pub fn winding_classes(s: &FwSystem) -> Vec<HandClass> {
    let mut counts: BTreeMap<(EyeIndex, EyeIndex, i64), usize> = BTreeMap::new();
    for f in &s.fingers {
        *counts.entry((f.red, f.green, f.shift)).or_default() += 1;
    }
    counts
        .into_iter()
        .map(|((red, green, shift), finger_count)| HandClass { red, green, shift, finger_count })
        .collect()
}

fn retag(mut d: DiscRecord, kind: DiscKind) -> DiscRecord {
    d.kind = kind;
    d
}

fn swap_incidence_roles(inc: Incidence) -> Incidence {
    let swap = |pc: PairCount| PairCount { finger: pc.whitney, whitney: pc.finger, count: pc.count };
    Incidence {
        interior: inc.interior.into_iter().map(swap).collect(),
        boundary: inc.boundary.into_iter().map(swap).collect(),
        spheres: inc.spheres.into_iter().map(|sc| SphereCount { kind: sc.kind.other(), ..sc }).collect(),
        duals: inc.duals,
    }
}

/// Exchanges the roles of fingers and Whitney discs. Induces the inverse map.
pub fn reverse(s: &FwSystem) -> FwSystem {
    let s = s.clone();
    FwSystem {
        k: s.k,
        indexing: s.indexing,
        fingers: s.whitneys.into_iter().map(|d| retag(d, DiscKind::Finger)).collect(),
        whitneys: s.fingers.into_iter().map(|d| retag(d, DiscKind::Whitney)).collect(),
        pairing: s.pairing.into_iter().map(|(f, w)| (w, f)).collect(),
        incidence: s.incidence.map(swap_incidence_roles),
        tag: s.tag.inverse(),
    }
}

fn flip_color(c: SphereColor) -> SphereColor {
    match c {
        SphereColor::Red => SphereColor::Green,
        SphereColor::Green => SphereColor::Red,
    }
}

fn turn_over(d: DiscRecord, kind: DiscKind) -> DiscRecord {
    DiscRecord { red: d.green, green: d.red, shift: -d.shift, kind, twist: Twist::new(d.twist.q, d.twist.p), ..d }
}

/// Exchanges red with green and fingers with Whitney discs. Induces the same map.
pub fn upside_down(s: &FwSystem) -> FwSystem {
    let s = s.clone();
    let incidence = s.incidence.map(|inc| {
        let mut inc = swap_incidence_roles(inc);
        for sc in &mut inc.spheres {
            sc.sphere.color = flip_color(sc.sphere.color);
        }
        for d in &mut inc.duals {
            for (sphere, _) in &mut d.sphere_hits {
                sphere.color = flip_color(sphere.color);
            }
        }
        inc
    });
    FwSystem {
        k: s.k,
        indexing: s.indexing,
        fingers: s.whitneys.into_iter().map(|d| turn_over(d, DiscKind::Finger)).collect(),
        whitneys: s.fingers.into_iter().map(|d| turn_over(d, DiscKind::Whitney)).collect(),
        pairing: s.pairing.into_iter().map(|(f, w)| (w, f)).collect(),
        incidence,
        tag: s.tag,
    }
}

fn require_base(s: &FwSystem, what: &str) -> Result<(), FwError> {
    match s.indexing {
        Indexing::Base => Ok(()),
        Indexing::Lifted => Err(FwError::InvalidSystem(format!("{what} needs a base-indexed system"))),
    }
}

fn offset_eye(e: EyeIndex, by: i64) -> EyeIndex {
    EyeIndex(e.0 + by)
}

fn shift_incidence(inc: Incidence, eye_by: i64, fingers_by: usize, whitneys_by: usize) -> Incidence {
    let pair = |pc: PairCount| PairCount {
        finger: pc.finger + fingers_by,
        whitney: pc.whitney + whitneys_by,
        count: pc.count,
    };
    Incidence {
        interior: inc.interior.into_iter().map(pair).collect(),
        boundary: inc.boundary.into_iter().map(pair).collect(),
        spheres: inc
            .spheres
            .into_iter()
            .map(|mut sc| {
                sc.disc += match sc.kind {
                    DiscKind::Finger => fingers_by,
                    DiscKind::Whitney => whitneys_by,
                };
                sc.sphere.eye = offset_eye(sc.sphere.eye, eye_by);
                sc
            })
            .collect(),
        duals: inc
            .duals
            .into_iter()
            .map(|d| DualSphere {
                eye: offset_eye(d.eye, eye_by),
                sphere_hits: d
                    .sphere_hits
                    .into_iter()
                    .map(|(mut sphere, n)| {
                        sphere.eye = offset_eye(sphere.eye, eye_by);
                        (sphere, n)
                    })
                    .collect(),
                disc_hits: d.disc_hits,
            })
            .collect(),
    }
}

fn merge_incidence(a: Option<Incidence>, b: Option<Incidence>) -> Option<Incidence> {
    match (a, b) {
        (None, None) => None,
        (a, b) => {
            let mut out = a.unwrap_or_default();
            let b = b.unwrap_or_default();
            out.interior.extend(b.interior);
            out.boundary.extend(b.boundary);
            out.spheres.extend(b.spheres);
            out.duals.extend(b.duals);
            Some(out)
        }
    }
}

/// Disjoint union on `V_{k1+k2}`; the second system's eyes follow the first's.
pub fn concatenate(s1: &FwSystem, s2: &FwSystem) -> Result<FwSystem, FwError> {
    require_base(s1, "concatenation")?;
    require_base(s2, "concatenation")?;
    let by = i64::from(s1.k);
    let (nf, nw) = (s1.fingers.len(), s1.whitneys.len());
    let moved = |d: &DiscRecord| DiscRecord { red: offset_eye(d.red, by), green: offset_eye(d.green, by), ..d.clone() };
    let mut out = s1.clone();
    out.k = s1.k + s2.k;
    out.fingers.extend(s2.fingers.iter().map(moved));
    out.whitneys.extend(s2.whitneys.iter().map(moved));
    out.pairing.extend(s2.pairing.iter().map(|&(f, w)| (f + nf, w + nw)));
    out.incidence =
        merge_incidence(s1.incidence.clone(), s2.incidence.clone().map(|inc| shift_incidence(inc, by, nf, nw)));
    out.tag = s1.tag.clone().compose(s2.tag.clone());
    Ok(out)
}

fn same_disc_data(a: &DiscRecord, b: &DiscRecord) -> bool {
    a.red == b.red && a.green == b.green && a.shift == b.shift && a.twist == b.twist && a.geometry == b.geometry
}

/// Composes `(F1, F2)` after... precisely: given `(G, R, F1, F2)` and
/// `(G, R, F2, F3)`, returns `(G, R, F1, F3)`.
pub fn compose_factorization(s_ab: &FwSystem, s_bc: &FwSystem) -> Result<FwSystem, FwError> {
    if s_ab.k != s_bc.k || s_ab.indexing != s_bc.indexing {
        return Err(FwError::CompositionMismatch(format!("ambient mismatch: k = {} vs k = {}", s_ab.k, s_bc.k)));
    }
    let middle_ok = s_ab.whitneys.len() == s_bc.fingers.len()
        && s_ab.whitneys.iter().zip(&s_bc.fingers).all(|(a, b)| same_disc_data(a, b));
    if !middle_ok {
        return Err(FwError::CompositionMismatch(
            "Whitney discs of the first system differ from the fingers of the second".into(),
        ));
    }
    let mut pairing = Vec::new();
    for &(f, m) in &s_ab.pairing {
        if let Some(&(_, w)) = s_bc.pairing.iter().find(|&&(m2, _)| m2 == m) {
            pairing.push((f, w));
        }
    }
    Ok(FwSystem {
        k: s_ab.k,
        indexing: s_ab.indexing,
        fingers: s_ab.fingers.clone(),
        whitneys: s_bc.whitneys.clone(),
        pairing,
        incidence: None,
        tag: s_bc.tag.clone().compose(s_ab.tag.clone()),
    })
}

/// Pulls the system back to the `d`-sheeted cover, which lives on `V_{dk}`.
///
/// Sheet `t` holds the lift of each disc whose red end sits at `red + t·k`.
/// Displacements are kept, so windings measured against `d·k` shrink by `d`.
/// Discs are listed sheet by sheet; incidence data is copied onto each sheet.
pub fn lift_to_cover(s: &FwSystem, d: i64) -> Result<FwSystem, FwError> {
    if d <= 0 {
        return Err(FwError::InvalidDegree(d));
    }
    require_base(s, "lifting to a cover")?;
    let k = i64::from(s.k);
    let sheets = d as usize;
    let lift_disc = |disc: &DiscRecord, t: i64| -> DiscRecord {
        let turns = (disc.red.0 + disc.shift - disc.green.0).div_euclid(k);
        DiscRecord {
            red: EyeIndex(disc.red.0 + t * k),
            green: EyeIndex(disc.green.0 + (t + turns).rem_euclid(d) * k),
            ..disc.clone()
        }
    };
    let (nf, nw) = (s.fingers.len(), s.whitneys.len());
    let mut out = FwSystem {
        k: u32::try_from(k * d).map_err(|_| FwError::InvalidDegree(d))?,
        indexing: Indexing::Base,
        fingers: Vec::with_capacity(nf * sheets),
        whitneys: Vec::with_capacity(nw * sheets),
        pairing: Vec::with_capacity(s.pairing.len() * sheets),
        incidence: None,
        tag: s.tag.clone(),
    };
    for t in 0..d {
        let tu = t as usize;
        out.fingers.extend(s.fingers.iter().map(|f| lift_disc(f, t)));
        out.whitneys.extend(s.whitneys.iter().map(|w| lift_disc(w, t)));
        out.pairing.extend(s.pairing.iter().map(|&(f, w)| (f + tu * nf, w + tu * nw)));
        out.incidence = merge_incidence(
            out.incidence.take(),
            s.incidence.clone().map(|inc| shift_incidence(inc, t * k, tu * nf, tu * nw)),
        );
    }
    Ok(out)
}
