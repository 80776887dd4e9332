use std::fmt;

use serde::{Deserialize, Serialize};

use super::twist::Twist;
use super::FwError;

/// Index of an eye (an `S²×S²` summand) or of one of its lifts.
///
/// Base indices run over `1..=k`. Lifted indices are nonzero integers, with the
/// lifts at or below the separating 3-sphere shifted down by one so that the
/// indexing is symmetric about zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EyeIndex(pub i64);

impl EyeIndex {
    pub fn get(self) -> i64 {
        self.0
    }

    pub fn is_negative(self) -> bool {
        self.0 < 0
    }

    /// Lifted index of the raw cover position `raw`, skipping zero.
    pub fn from_raw_lift(raw: i64) -> EyeIndex {
        if raw <= 0 {
            EyeIndex(raw - 1)
        } else {
            EyeIndex(raw)
        }
    }
}

impl fmt::Display for EyeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Indexing {
    #[default]
    Base,
    Lifted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiscKind {
    Finger,
    Whitney,
}

impl DiscKind {
    pub fn other(self) -> DiscKind {
        match self {
            DiscKind::Finger => DiscKind::Whitney,
            DiscKind::Whitney => DiscKind::Finger,
        }
    }
}

/// A finger or Whitney disc running from a red sphere to a green sphere.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiscRecord {
    pub red: EyeIndex,
    pub green: EyeIndex,
    /// Displacement `q - p` of a lift running from `R̃_p` to `G̃_q`.
    pub shift: i64,
    pub kind: DiscKind,
    #[serde(default)]
    pub twist: Twist,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub geometry: Option<String>,
    /// Tubings picked up by reductions. Metadata only.
    #[serde(default, skip_serializing_if = "is_zero")]
    pub tubes: u64,
}

fn is_zero(n: &u64) -> bool {
    *n == 0
}

impl DiscRecord {
    pub fn new(kind: DiscKind, red: i64, green: i64, shift: i64) -> DiscRecord {
        DiscRecord {
            red: EyeIndex(red),
            green: EyeIndex(green),
            shift,
            kind,
            twist: Twist::ZERO,
            geometry: None,
            tubes: 0,
        }
    }

    pub fn finger(red: i64, green: i64, shift: i64) -> DiscRecord {
        DiscRecord::new(DiscKind::Finger, red, green, shift)
    }

    pub fn whitney(red: i64, green: i64, shift: i64) -> DiscRecord {
        DiscRecord::new(DiscKind::Whitney, red, green, shift)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SphereColor {
    Red,
    Green,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SphereRef {
    pub color: SphereColor,
    pub eye: EyeIndex,
}

/// `|int f ∩ w|` or `|∂f ∩ w|` for one finger/Whitney pair (by list position).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PairCount {
    pub finger: usize,
    pub whitney: usize,
    pub count: u32,
}

/// Intersection count between a disc and one red or green sphere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SphereCount {
    pub kind: DiscKind,
    pub disc: usize,
    pub sphere: SphereRef,
    pub count: u32,
}

/// Combinatorial record of an embedded sphere offered as a dual for one eye.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DualSphere {
    pub eye: EyeIndex,
    /// Intersections with each red or green sphere it meets.
    pub sphere_hits: Vec<(SphereRef, u32)>,
    /// Total intersections with finger and Whitney discs.
    pub disc_hits: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Incidence {
    #[serde(default)]
    pub interior: Vec<PairCount>,
    #[serde(default)]
    pub boundary: Vec<PairCount>,
    #[serde(default)]
    pub spheres: Vec<SphereCount>,
    #[serde(default)]
    pub duals: Vec<DualSphere>,
}

impl Incidence {
    pub fn is_empty(&self) -> bool {
        self.interior.is_empty() && self.boundary.is_empty() && self.spheres.is_empty() && self.duals.is_empty()
    }
}

/// Symbolic name of the diffeomorphism a system induces.
///
/// Constructors normalize so that involution and associativity laws hold
/// structurally: double inverses cancel and compositions are flat.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum MapTag {
    Named { name: String },
    Inverse { of: Box<MapTag> },
    Compose { factors: Vec<MapTag> },
}

impl Default for MapTag {
    fn default() -> MapTag {
        MapTag::named("phi")
    }
}

impl MapTag {
    pub fn identity() -> MapTag {
        MapTag::Compose { factors: Vec::new() }
    }

    pub fn named(name: impl Into<String>) -> MapTag {
        MapTag::Named { name: name.into() }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, MapTag::Compose { factors } if factors.is_empty())
    }

    pub fn inverse(self) -> MapTag {
        match self {
            MapTag::Inverse { of } => *of,
            MapTag::Compose { factors } => {
                let factors: Vec<MapTag> = factors.into_iter().rev().map(MapTag::inverse).collect();
                MapTag::Compose { factors }
            }
            named => MapTag::Inverse { of: Box::new(named) },
        }
    }

    /// `self ∘ other`.
    pub fn compose(self, other: MapTag) -> MapTag {
        let mut factors = Vec::new();
        for t in [self, other] {
            match t {
                MapTag::Compose { factors: inner } => factors.extend(inner),
                t => factors.push(t),
            }
        }
        if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            MapTag::Compose { factors }
        }
    }
}

/// A Finger|Whitney system on `V_k`: fingers and Whitney discs between the
/// red and green spheres of `k` eyes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FwSystem {
    pub k: u32,
    #[serde(default)]
    pub indexing: Indexing,
    #[serde(default)]
    pub fingers: Vec<DiscRecord>,
    #[serde(default)]
    pub whitneys: Vec<DiscRecord>,
    /// Finger/Whitney pairs sharing a boundary germ, by list position.
    #[serde(default)]
    pub pairing: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub incidence: Option<Incidence>,
    #[serde(default)]
    pub tag: MapTag,
}

impl FwSystem {
    /// The trivial system on `k = 0` eyes. Identity for concatenation.
    pub fn empty() -> FwSystem {
        FwSystem::trivial(0)
    }

    /// No discs on `k` eyes.
    pub fn trivial(k: u32) -> FwSystem {
        FwSystem {
            k,
            indexing: Indexing::Base,
            fingers: Vec::new(),
            whitneys: Vec::new(),
            pairing: Vec::new(),
            incidence: None,
            tag: MapTag::identity(),
        }
    }

    pub fn new(k: u32, fingers: Vec<DiscRecord>, whitneys: Vec<DiscRecord>) -> FwSystem {
        FwSystem {
            k,
            indexing: Indexing::Base,
            fingers,
            whitneys,
            pairing: Vec::new(),
            incidence: None,
            tag: MapTag::default(),
        }
    }

    /// Pairs finger `i` with Whitney disc `i` for every common position.
    pub fn with_diagonal_pairing(mut self) -> FwSystem {
        let n = self.fingers.len().min(self.whitneys.len());
        self.pairing = (0..n).map(|i| (i, i)).collect();
        self
    }

    pub fn discs(&self) -> impl Iterator<Item = &DiscRecord> {
        self.fingers.iter().chain(self.whitneys.iter())
    }

    pub fn list(&self, kind: DiscKind) -> &[DiscRecord] {
        match kind {
            DiscKind::Finger => &self.fingers,
            DiscKind::Whitney => &self.whitneys,
        }
    }

    pub fn has_discs(&self) -> bool {
        !(self.fingers.is_empty() && self.whitneys.is_empty())
    }

    pub fn eye_is_valid(&self, e: EyeIndex) -> bool {
        match self.indexing {
            Indexing::Base => e.0 >= 1 && e.0 <= i64::from(self.k),
            Indexing::Lifted => e.0 != 0,
        }
    }

    /// Eyes forming the vertex set of graphs built from this system.
    pub fn eyes(&self) -> Vec<EyeIndex> {
        match self.indexing {
            Indexing::Base => (1..=i64::from(self.k)).map(EyeIndex).collect(),
            Indexing::Lifted => {
                let mut v: Vec<EyeIndex> = self.discs().flat_map(|d| [d.red, d.green]).collect();
                v.sort();
                v.dedup();
                v
            }
        }
    }

    /// True when every finger is paired with a Whitney disc and vice versa.
    pub fn pairing_is_total(&self) -> bool {
        self.pairing.len() == self.fingers.len() && self.pairing.len() == self.whitneys.len()
    }

    /// A paired Whitney disc shares endpoints and displacement with its finger.
    pub fn is_boundary_germ_coinciding(&self) -> bool {
        self.pairing_is_total()
            && self.pairing.iter().all(|&(f, w)| {
                let (f, w) = (&self.fingers[f], &self.whitneys[w]);
                f.red == w.red && f.green == w.green && f.shift == w.shift
            })
    }

    pub fn validate(&self) -> Result<(), FwError> {
        for d in self.discs() {
            for e in [d.red, d.green] {
                if !self.eye_is_valid(e) {
                    return Err(FwError::InvalidSystem(format!(
                        "eye index {e} out of range for k = {} ({:?} indexing)",
                        self.k, self.indexing
                    )));
                }
            }
        }
        for (i, d) in self.fingers.iter().enumerate() {
            if d.kind != DiscKind::Finger {
                return Err(FwError::InvalidSystem(format!("finger {i} carries kind {:?}", d.kind)));
            }
        }
        for (i, d) in self.whitneys.iter().enumerate() {
            if d.kind != DiscKind::Whitney {
                return Err(FwError::InvalidSystem(format!("whitney {i} carries kind {:?}", d.kind)));
            }
        }
        let mut seen_f = vec![false; self.fingers.len()];
        let mut seen_w = vec![false; self.whitneys.len()];
        for &(f, w) in &self.pairing {
            if f >= seen_f.len() || w >= seen_w.len() {
                return Err(FwError::InvalidSystem(format!("pairing ({f}, {w}) out of range")));
            }
            if std::mem::replace(&mut seen_f[f], true) || std::mem::replace(&mut seen_w[w], true) {
                return Err(FwError::InvalidSystem(format!("pairing ({f}, {w}) is not injective")));
            }
        }
        if let Some(inc) = &self.incidence {
            for pc in inc.interior.iter().chain(&inc.boundary) {
                if pc.finger >= self.fingers.len() || pc.whitney >= self.whitneys.len() {
                    return Err(FwError::InvalidSystem(format!(
                        "incidence pair ({}, {}) out of range",
                        pc.finger, pc.whitney
                    )));
                }
            }
            for sc in &inc.spheres {
                if sc.disc >= self.list(sc.kind).len() || !self.eye_is_valid(sc.sphere.eye) {
                    return Err(FwError::InvalidSystem(format!(
                        "sphere incidence for {:?} {} out of range",
                        sc.kind, sc.disc
                    )));
                }
            }
            for d in &inc.duals {
                if !self.eye_is_valid(d.eye) {
                    return Err(FwError::InvalidSystem(format!("dual sphere for invalid eye {}", d.eye)));
                }
            }
        }
        Ok(())
    }
}
