//! Reductions that discard eyes: contraction, deletion of S-trivial
//! components, and dual-sphere interpolation.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::graph::s_trivial_by_graph;
use super::system::{DiscKind, EyeIndex, FwSystem, Incidence, Indexing};
use super::FwError;

/// Connected components of the eyes, joined by every finger and Whitney disc.
fn components(s: &FwSystem) -> Vec<BTreeSet<EyeIndex>> {
    let mut adj: BTreeMap<EyeIndex, Vec<(EyeIndex, i64)>> = s.eyes().into_iter().map(|e| (e, vec![])).collect();
    for d in s.discs() {
        adj.entry(d.red).or_default().push((d.green, d.shift));
        adj.entry(d.green).or_default().push((d.red, -d.shift));
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &start in adj.keys() {
        if !seen.insert(start) {
            continue;
        }
        let mut comp = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &(u, _) in &adj[&v] {
                if seen.insert(u) {
                    comp.insert(u);
                    queue.push_back(u);
                }
            }
        }
        out.push(comp);
    }
    out
}

/// A component is inessential when some potential `h` on its eyes satisfies
/// `shift = h(green) - h(red)` on every disc, i.e. every cycle has winding 0.
fn is_inessential(s: &FwSystem, comp: &BTreeSet<EyeIndex>) -> bool {
    let mut adj: BTreeMap<EyeIndex, Vec<(EyeIndex, i64)>> = BTreeMap::new();
    for d in s.discs().filter(|d| comp.contains(&d.red)) {
        adj.entry(d.red).or_default().push((d.green, d.shift));
        adj.entry(d.green).or_default().push((d.red, -d.shift));
    }
    let Some(&root) = comp.iter().next() else {
        return true;
    };
    let mut h = BTreeMap::from([(root, 0i64)]);
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &(u, w) in adj.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
            let want = h[&v] + w;
            match h.get(&u) {
                Some(&have) if have != want => return false,
                Some(_) => {}
                None => {
                    h.insert(u, want);
                    queue.push_back(u);
                }
            }
        }
    }
    true
}

/// Removes `gone` eyes and every disc touching one, adding `extra_tubes` to the
/// surviving discs (keyed by kind and old position) and renumbering base eyes.
fn remove_eyes(s: &FwSystem, gone: &BTreeSet<EyeIndex>, extra_tubes: &BTreeMap<(DiscKind, usize), u64>) -> FwSystem {
    if gone.is_empty() {
        return s.clone();
    }
    let renumber: BTreeMap<EyeIndex, EyeIndex> = match s.indexing {
        Indexing::Base => s
            .eyes()
            .into_iter()
            .filter(|e| !gone.contains(e))
            .enumerate()
            .map(|(i, e)| (e, EyeIndex(i as i64 + 1)))
            .collect(),
        Indexing::Lifted => s.eyes().into_iter().filter(|e| !gone.contains(e)).map(|e| (e, e)).collect(),
    };
    let mut index_maps: BTreeMap<DiscKind, BTreeMap<usize, usize>> = BTreeMap::new();
    let mut lists: BTreeMap<DiscKind, Vec<_>> = BTreeMap::new();
    for kind in [DiscKind::Finger, DiscKind::Whitney] {
        let map = index_maps.entry(kind).or_default();
        let list = lists.entry(kind).or_default();
        for (i, d) in s.list(kind).iter().enumerate() {
            if gone.contains(&d.red) || gone.contains(&d.green) {
                continue;
            }
            let mut d = d.clone();
            d.red = renumber[&d.red];
            d.green = renumber[&d.green];
            d.tubes += extra_tubes.get(&(kind, i)).copied().unwrap_or(0);
            map.insert(i, list.len());
            list.push(d);
        }
    }
    let fmap = &index_maps[&DiscKind::Finger];
    let wmap = &index_maps[&DiscKind::Whitney];
    let pairing = s.pairing.iter().filter_map(|&(f, w)| Some((*fmap.get(&f)?, *wmap.get(&w)?))).collect();
    let incidence = s.incidence.as_ref().map(|inc| {
        let pairs = |v: &[super::PairCount]| {
            v.iter()
                .filter_map(|pc| {
                    let mut pc = *pc;
                    pc.finger = *fmap.get(&pc.finger)?;
                    pc.whitney = *wmap.get(&pc.whitney)?;
                    Some(pc)
                })
                .collect()
        };
        Incidence {
            interior: pairs(&inc.interior),
            boundary: pairs(&inc.boundary),
            spheres: inc
                .spheres
                .iter()
                .filter_map(|sc| {
                    let mut sc = *sc;
                    sc.disc = *index_maps[&sc.kind].get(&sc.disc)?;
                    sc.sphere.eye = *renumber.get(&sc.sphere.eye)?;
                    Some(sc)
                })
                .collect(),
            duals: inc
                .duals
                .iter()
                .filter_map(|d| {
                    let mut d = d.clone();
                    d.eye = *renumber.get(&d.eye)?;
                    d.sphere_hits = d
                        .sphere_hits
                        .into_iter()
                        .filter_map(|(mut sphere, n)| {
                            sphere.eye = *renumber.get(&sphere.eye)?;
                            Some((sphere, n))
                        })
                        .collect();
                    Some(d)
                })
                .collect(),
        }
    });
    let removed_base = match s.indexing {
        Indexing::Base => gone.iter().filter(|e| s.eye_is_valid(**e)).count() as u32,
        Indexing::Lifted => 0,
    };
    FwSystem {
        k: s.k - removed_base,
        indexing: s.indexing,
        fingers: lists.remove(&DiscKind::Finger).unwrap_or_default(),
        whitneys: lists.remove(&DiscKind::Whitney).unwrap_or_default(),
        pairing,
        incidence,
        tag: s.tag.clone(),
    }
}

/// Contracts every component all of whose cycles have winding zero. Surviving
/// discs gain one tube per recorded intersection with a removed sphere.
pub fn contract_inessential(s: &FwSystem) -> FwSystem {
    let gone: BTreeSet<EyeIndex> = components(s).into_iter().filter(|c| is_inessential(s, c)).flatten().collect();
    let mut tubes: BTreeMap<(DiscKind, usize), u64> = BTreeMap::new();
    if let Some(inc) = &s.incidence {
        for sc in inc.spheres.iter().filter(|sc| gone.contains(&sc.sphere.eye)) {
            *tubes.entry((sc.kind, sc.disc)).or_default() += u64::from(sc.count);
        }
    }
    remove_eyes(s, &gone, &tubes)
}

/// Deletes every component whose fingers pass the graph criterion.
pub fn delete_s_trivial(s: &FwSystem) -> FwSystem {
    let gone: BTreeSet<EyeIndex> = components(s)
        .into_iter()
        .filter(|c| {
            let mut part = FwSystem::trivial(0);
            part.indexing = Indexing::Lifted;
            part.fingers = s.fingers.iter().filter(|f| c.contains(&f.red)).cloned().collect();
            s_trivial_by_graph(&part)
        })
        .flatten()
        .collect();
    remove_eyes(s, &gone, &BTreeMap::new())
}

/// Interpolates away the eyes in `duals`, each certified by a recorded dual
/// sphere meeting `R_i ∪ G_i` once and no disc. Every surviving Whitney disc
/// gains `2·|int f ∩ w| + |∂f ∩ w|` tubes per removed finger `f`.
pub fn dual_sphere_reduce(s: &FwSystem, duals: &BTreeSet<EyeIndex>) -> Result<FwSystem, FwError> {
    if duals.is_empty() {
        return Ok(s.clone());
    }
    let inc =
        s.incidence.as_ref().ok_or_else(|| FwError::InvalidDualCertificate("no incidence tables recorded".into()))?;
    for &eye in duals {
        if !s.eye_is_valid(eye) {
            return Err(FwError::InvalidDualCertificate(format!("eye {eye} does not exist")));
        }
        let cert = inc
            .duals
            .iter()
            .find(|d| d.eye == eye)
            .ok_or_else(|| FwError::InvalidDualCertificate(format!("no dual sphere recorded for eye {eye}")))?;
        let own: u32 = cert.sphere_hits.iter().filter(|(sphere, _)| sphere.eye == eye).map(|&(_, n)| n).sum();
        if own != 1 {
            return Err(FwError::InvalidDualCertificate(format!("dual sphere for eye {eye} meets R ∪ G {own} times")));
        }
        if cert.disc_hits != 0 {
            return Err(FwError::InvalidDualCertificate(format!(
                "dual sphere for eye {eye} meets the discs {} times",
                cert.disc_hits
            )));
        }
    }
    let removed_fingers: BTreeSet<usize> = s
        .fingers
        .iter()
        .enumerate()
        .filter(|(_, f)| duals.contains(&f.red) || duals.contains(&f.green))
        .map(|(i, _)| i)
        .collect();
    let mut tubes: BTreeMap<(DiscKind, usize), u64> = BTreeMap::new();
    for (weight, table) in [(2, &inc.interior), (1, &inc.boundary)] {
        for pc in table.iter().filter(|pc| removed_fingers.contains(&pc.finger)) {
            *tubes.entry((DiscKind::Whitney, pc.whitney)).or_default() += weight * u64::from(pc.count);
        }
    }
    Ok(remove_eyes(s, duals, &tubes))
}
