use serde::{Deserialize, Serialize};

use super::CsError;
use crate::fw::EyeIndex;

/// A simple closed intersection curve, with the curves it directly encloses.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveNode {
    /// Lifted red spheres met by the filling section bounded by this curve,
    /// with multiplicity.
    #[serde(default, rename = "redIncidence")]
    pub red_incidence: Vec<EyeIndex>,
    #[serde(default)]
    pub children: Vec<CurveNode>,
}

impl CurveNode {
    pub fn leaf() -> CurveNode {
        CurveNode::default()
    }

    pub fn with_children(children: Vec<CurveNode>) -> CurveNode {
        CurveNode { red_incidence: Vec::new(), children }
    }
}

/// The curves on one Whitney disc.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiscCurves {
    #[serde(default)]
    pub roots: Vec<CurveNode>,
    /// Lifted red spheres met by the disc outside its curves, with multiplicity.
    #[serde(default, rename = "discOutsideIncidence")]
    pub outside_incidence: Vec<EyeIndex>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveForest {
    #[serde(default)]
    pub discs: Vec<DiscCurves>,
}

/// A curve located in the pre-order enumeration of a forest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatCurve {
    pub index: usize,
    pub disc: usize,
    pub parent: Option<usize>,
    pub level: u32,
    pub red_incidence: Vec<EyeIndex>,
}

impl CurveForest {
    /// All curves, disc by disc, each tree in pre-order. Curve indices used by
    /// presentations refer to positions in this list.
    pub fn flatten(&self) -> Vec<FlatCurve> {
        fn walk(node: &CurveNode, disc: usize, parent: Option<usize>, level: u32, out: &mut Vec<FlatCurve>) {
            let index = out.len();
            out.push(FlatCurve { index, disc, parent, level, red_incidence: node.red_incidence.clone() });
            for child in &node.children {
                walk(child, disc, Some(index), level + 1, out);
            }
        }
        let mut out = Vec::new();
        for (d, disc) in self.discs.iter().enumerate() {
            for root in &disc.roots {
                walk(root, d, None, 1, &mut out);
            }
        }
        out
    }

    pub fn curve_count(&self) -> usize {
        self.flatten().len()
    }

    /// Largest level present, 0 for an empty forest.
    pub fn height(&self) -> u32 {
        self.flatten().iter().map(|c| c.level).max().unwrap_or(0)
    }

    pub fn outside_incidence(&self) -> impl Iterator<Item = EyeIndex> + '_ {
        self.discs.iter().flat_map(|d| d.outside_incidence.iter().copied())
    }
}

/// Level of curve `node`: root curves have level 1, their children level 2.
pub fn level(f: &CurveForest, node: usize) -> Result<u32, CsError> {
    f.flatten().get(node).map(|c| c.level).ok_or_else(|| CsError::NotFound(format!("curve {node}")))
}
