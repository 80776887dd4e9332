//! The five families of moves on carving/surgery presentations.

use std::collections::BTreeSet;

use serde::de::{self, DeserializeSeed, EnumAccess, IntoDeserializer, MapAccess, VariantAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize};

use super::diff::Diff;
use super::RewriteError;
use crate::cs::{Component, ComponentKind, Label, Presentation, Side};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SlideVariant {
    #[serde(rename = "00")]
    ZeroZero,
    #[serde(rename = "••")]
    BulletBullet,
    #[serde(rename = "0•")]
    ZeroBullet,
    #[serde(rename = "•0")]
    BulletZero,
}

impl SlideVariant {
    /// Sides required of `α` and `β'`.
    pub fn sides(self) -> (Side, Side) {
        match self {
            SlideVariant::ZeroZero => (Side::Zero, Side::Zero),
            SlideVariant::BulletBullet => (Side::Bullet, Side::Bullet),
            SlideVariant::ZeroBullet => (Side::Zero, Side::Bullet),
            SlideVariant::BulletZero => (Side::Bullet, Side::Zero),
        }
    }

    pub fn for_sides(alpha: Side, beta: Side) -> SlideVariant {
        match (alpha, beta) {
            (Side::Zero, Side::Zero) => SlideVariant::ZeroZero,
            (Side::Bullet, Side::Bullet) => SlideVariant::BulletBullet,
            (Side::Zero, Side::Bullet) => SlideVariant::ZeroBullet,
            (Side::Bullet, Side::Zero) => SlideVariant::BulletZero,
        }
    }

    fn crosses(self) -> bool {
        matches!(self, SlideVariant::ZeroBullet | SlideVariant::BulletZero)
    }
}

/// Witness that a knot and its linking circle form a split Hopf link.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SplitFlag {
    pub pair: (String, String),
    #[serde(rename = "isSplitHopf")]
    pub is_split_hopf: bool,
}

/// Serialized with an inline `"kind"` tag. Deserialization streams the
/// fields when `"kind"` comes first, so errors keep their position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RewriteOp {
    MakeAbstract {
        targets: BTreeSet<String>,
    },
    MakeConcrete {
        #[serde(rename = "aPrime")]
        a_prime: BTreeSet<String>,
    },
    CancelKnotCircle {
        knot: String,
    },
    CancelHopf {
        knot: String,
        witness: SplitFlag,
    },
    Slide {
        alpha: String,
        #[serde(rename = "betaPrime")]
        beta_prime: String,
        variant: SlideVariant,
    },
}

impl RewriteOp {
    pub fn name(&self) -> &'static str {
        match self {
            RewriteOp::MakeAbstract { .. } => "make_abstract",
            RewriteOp::MakeConcrete { .. } => "make_concrete",
            RewriteOp::CancelKnotCircle { .. } => "cancel_knot_circle",
            RewriteOp::CancelHopf { .. } => "cancel_hopf",
            RewriteOp::Slide { .. } => "slide",
        }
    }
}

#[derive(Deserialize)]
#[serde(rename_all = "snake_case")]
enum OpFields {
    MakeAbstract {
        targets: BTreeSet<String>,
    },
    MakeConcrete {
        #[serde(rename = "aPrime")]
        a_prime: BTreeSet<String>,
    },
    CancelKnotCircle {
        knot: String,
    },
    CancelHopf {
        knot: String,
        witness: SplitFlag,
    },
    Slide {
        alpha: String,
        #[serde(rename = "betaPrime")]
        beta_prime: String,
        variant: SlideVariant,
    },
}

impl From<OpFields> for RewriteOp {
    fn from(f: OpFields) -> RewriteOp {
        match f {
            OpFields::MakeAbstract { targets } => RewriteOp::MakeAbstract { targets },
            OpFields::MakeConcrete { a_prime } => RewriteOp::MakeConcrete { a_prime },
            OpFields::CancelKnotCircle { knot } => RewriteOp::CancelKnotCircle { knot },
            OpFields::CancelHopf { knot, witness } => RewriteOp::CancelHopf { knot, witness },
            OpFields::Slide { alpha, beta_prime, variant } => RewriteOp::Slide { alpha, beta_prime, variant },
        }
    }
}

/// The remaining fields of an op once its kind is known, presented as a
/// struct variant of [`OpFields`].
struct Tagged<M> {
    kind: String,
    fields: M,
}

impl<'de, M: MapAccess<'de>> Deserializer<'de> for Tagged<M> {
    type Error = M::Error;

    fn deserialize_any<V: Visitor<'de>>(self, visitor: V) -> Result<V::Value, M::Error> {
        visitor.visit_enum(self)
    }

    serde::forward_to_deserialize_any! {
        bool i8 i16 i32 i64 i128 u8 u16 u32 u64 u128 f32 f64 char str string bytes byte_buf option unit
        unit_struct newtype_struct seq tuple tuple_struct map struct enum identifier ignored_any
    }
}

impl<'de, M: MapAccess<'de>> EnumAccess<'de> for Tagged<M> {
    type Error = M::Error;
    type Variant = Fields<M>;

    fn variant_seed<S: DeserializeSeed<'de>>(self, seed: S) -> Result<(S::Value, Fields<M>), M::Error> {
        let v = seed.deserialize(IntoDeserializer::<M::Error>::into_deserializer(self.kind))?;
        Ok((v, Fields(self.fields)))
    }
}

struct Fields<M>(M);

impl<'de, M: MapAccess<'de>> VariantAccess<'de> for Fields<M> {
    type Error = M::Error;

    fn unit_variant(self) -> Result<(), M::Error> {
        Err(de::Error::custom("expected op fields"))
    }

    fn newtype_variant_seed<T: DeserializeSeed<'de>>(self, _: T) -> Result<T::Value, M::Error> {
        Err(de::Error::custom("expected op fields"))
    }

    fn tuple_variant<V: Visitor<'de>>(self, _: usize, _: V) -> Result<V::Value, M::Error> {
        Err(de::Error::custom("expected op fields"))
    }

    fn struct_variant<V: Visitor<'de>>(self, _: &'static [&'static str], visitor: V) -> Result<V::Value, M::Error> {
        visitor.visit_map(self.0)
    }
}

fn fields_of<'de, M: MapAccess<'de>>(kind: String, fields: M) -> Result<RewriteOp, M::Error> {
    OpFields::deserialize(Tagged { kind, fields }).map(RewriteOp::from)
}

impl<'de> Deserialize<'de> for RewriteOp {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<RewriteOp, D::Error> {
        struct OpVisitor;
        impl<'de> Visitor<'de> for OpVisitor {
            type Value = RewriteOp;

            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a rewrite op object with a \"kind\" field")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<RewriteOp, A::Error> {
                let Some(first) = map.next_key::<String>()? else {
                    return Err(de::Error::missing_field("kind"));
                };
                if first == "kind" {
                    let kind: String = map.next_value()?;
                    return fields_of(kind, map);
                }
                let mut rest = serde_json::Map::new();
                rest.insert(first, map.next_value()?);
                while let Some((k, v)) = map.next_entry::<String, serde_json::Value>()? {
                    rest.insert(k, v);
                }
                let kind = match rest.remove("kind") {
                    Some(serde_json::Value::String(k)) => k,
                    Some(_) => return Err(de::Error::custom("\"kind\" must be a string")),
                    None => return Err(de::Error::missing_field("kind")),
                };
                fields_of(kind, de::value::MapDeserializer::new(rest.into_iter())).map_err(de::Error::custom)
            }
        }
        d.deserialize_map(OpVisitor)
    }
}

fn get<'a>(p: &'a Presentation, id: &str) -> Result<&'a Component, RewriteError> {
    p.components.get(id).ok_or_else(|| RewriteError::NotFound(id.to_string()))
}

fn remove_outgoing(p: &mut Presentation, id: &str) {
    p.arrows.retain(|(a, _)| a != id);
}

fn relabel(p: &mut Presentation, id: &str, label: Label) {
    p.components.get_mut(id).expect("caller checked the id").label = label;
}

fn arrow(a: &str, b: &str) -> (String, String) {
    (a.to_string(), b.to_string())
}

/// Declares `targets`, all 0-labeled or all •-labeled, abstract. They keep
/// incoming arrows and lose outgoing ones.
pub fn make_abstract(p: &Presentation, targets: &BTreeSet<String>) -> Result<Presentation, RewriteError> {
    let mut side = None;
    for id in targets {
        let c = get(p, id)?;
        if c.label.is_abstract() {
            return Err(RewriteError::ModeConflict(format!("{id} is already abstract")));
        }
        if side.replace(c.label.side()).is_some_and(|s| s != c.label.side()) {
            return Err(RewriteError::ModeConflict("targets mix 0 and • labels".into()));
        }
    }
    let Some(side) = side else {
        return Ok(p.clone());
    };
    if let Some(other) = p.components.values().find(|c| c.label.is_abstract() && c.label.side() != side) {
        return Err(RewriteError::ModeConflict(format!(
            "presentation already has {} abstract component {}",
            other.label, other.id
        )));
    }
    let mut out = p.clone();
    for id in targets {
        relabel(&mut out, id, side.abstracted());
        remove_outgoing(&mut out, id);
    }
    Ok(out)
}

/// Makes the abstract linking circles `a_prime` concrete again. Every arrow
/// `β → α` into a partner knot `α` gains a companion `α' → β'`.
pub fn make_concrete(p: &Presentation, a_prime: &BTreeSet<String>) -> Result<Presentation, RewriteError> {
    let mut side = None;
    for id in a_prime {
        let c = get(p, id)?;
        if c.kind != ComponentKind::LinkingCircle {
            return Err(RewriteError::InvalidArgument(format!("{id} is not a linking circle")));
        }
        if !c.label.is_abstract() {
            return Err(RewriteError::NotAbstract(id.clone()));
        }
        if side.replace(c.label.side()).is_some_and(|s| s != c.label.side()) {
            return Err(RewriteError::ModeConflict("circles mix ⊘ and ★ labels".into()));
        }
    }
    let mut out = p.clone();
    let mut new_arrows = Vec::new();
    for alpha_circle in a_prime {
        let alpha = &p.components[alpha_circle].partner;
        for beta in p.predecessors(alpha) {
            let b = get(p, beta)?;
            if b.kind != ComponentKind::Knot {
                return Err(RewriteError::OrderConflict(format!(
                    "arrow into {alpha} comes from the linking circle {beta}"
                )));
            }
            new_arrows.push((alpha_circle.clone(), b.partner.clone()));
        }
    }
    for (alpha_circle, beta_circle) in &new_arrows {
        if alpha_circle == beta_circle || p.reaches(beta_circle, alpha_circle) {
            return Err(RewriteError::OrderConflict(format!("{beta_circle} ≥ {alpha_circle}")));
        }
    }
    for id in a_prime {
        let side = p.components[id].label.side();
        relabel(&mut out, id, side.concrete());
    }
    out.arrows.extend(new_arrows);
    if !out.is_acyclic() {
        return Err(RewriteError::OrderConflict("new arrows would create a cycle".into()));
    }
    Ok(out)
}

fn remove_pair(p: &Presentation, knot: &str, circle: &str) -> Presentation {
    let mut out = p.clone();
    out.components.remove(knot);
    out.components.remove(circle);
    out.arrows.retain(|(a, b)| a != knot && b != knot && a != circle && b != circle);
    out
}

fn abstract_partner<'a>(p: &'a Presentation, knot: &str) -> Result<&'a Component, RewriteError> {
    let k = get(p, knot)?;
    if k.kind != ComponentKind::Knot {
        return Err(RewriteError::InvalidArgument(format!("{knot} is not a knot")));
    }
    let circle = get(p, &k.partner)?;
    if !circle.label.is_abstract() {
        return Err(RewriteError::NotAbstract(circle.id.clone()));
    }
    Ok(circle)
}

/// Cancels a knot nothing points into against its abstract linking circle.
pub fn cancel_knot_circle(p: &Presentation, knot: &str) -> Result<(Presentation, Vec<String>), RewriteError> {
    let circle = abstract_partner(p, knot)?;
    if let Some(from) = p.predecessors(knot).next() {
        return Err(RewriteError::Blocked(format!("arrow {from} -> {knot}")));
    }
    let mut notes =
        vec![format!("{knot} cancelled against {}; the disc substitution leaves no arrow data behind", circle.id)];
    let dropped: Vec<&str> = p.predecessors(&circle.id).collect();
    if !dropped.is_empty() {
        notes.push(format!(
            "arrows into {} from {} were deleted rather than re-targeted",
            circle.id,
            dropped.join(", ")
        ));
    }
    Ok((remove_pair(p, knot, &circle.id), notes))
}

/// Deletes a split Hopf pair whose linking circle is abstract.
pub fn cancel_hopf(
    p: &Presentation,
    knot: &str,
    witness: &SplitFlag,
) -> Result<(Presentation, Vec<String>), RewriteError> {
    let k = get(p, knot)?;
    if witness.pair != (knot.to_string(), k.partner.clone()) || !witness.is_split_hopf {
        return Err(RewriteError::NotSplit(knot.to_string()));
    }
    let circle = abstract_partner(p, knot)?;
    let notes = vec![format!("split Hopf pair {knot}, {} deleted with all incident arrows", circle.id)];
    Ok((remove_pair(p, knot, &circle.id), notes))
}

/// Slides the knot `alpha` over the linking circle `beta_prime`.
pub fn slide(
    p: &Presentation,
    alpha: &str,
    beta_prime: &str,
    variant: SlideVariant,
) -> Result<Presentation, RewriteError> {
    let a = get(p, alpha)?;
    let b = get(p, beta_prime)?;
    if a.kind != ComponentKind::Knot || b.kind != ComponentKind::LinkingCircle {
        return Err(RewriteError::InvalidArgument(format!(
            "slides move a knot over a linking circle, not {alpha} over {beta_prime}"
        )));
    }
    if a.partner == beta_prime {
        return Err(RewriteError::InvalidArgument(format!("{alpha} cannot slide over its own linking circle")));
    }
    if (a.label.side(), b.label.side()) != variant.sides() {
        return Err(RewriteError::VariantMismatch(format!("{alpha} is {} and {beta_prime} is {}", a.label, b.label)));
    }
    if variant.crosses() && a.label.is_abstract() && b.label.is_abstract() {
        return Err(RewriteError::VariantMismatch(format!(
            "{alpha} and {beta_prime} cannot both be abstract in a {variant:?} slide"
        )));
    }
    if p.reaches(beta_prime, alpha) {
        return Err(RewriteError::OrderConflict(format!("{alpha} < {beta_prime}")));
    }

    let gammas: Vec<String> = p.predecessors(alpha).map(str::to_string).collect();
    let deltas: Vec<String> = p.successors(beta_prime).map(str::to_string).collect();
    let mut out = p.clone();
    if !variant.crosses() {
        let alpha_abstract = a.label.is_abstract() || b.label.is_abstract();
        if b.label.is_abstract() && !a.label.is_abstract() {
            relabel(&mut out, alpha, a.label.side().abstracted());
        }
        if alpha_abstract {
            remove_outgoing(&mut out, alpha);
        }
        for g in &gammas {
            out.arrows.insert(arrow(g, beta_prime));
        }
        if !alpha_abstract {
            for d in &deltas {
                out.arrows.insert(arrow(alpha, d));
            }
        }
    } else {
        let mut abstracted = BTreeSet::new();
        if b.label.is_abstract() {
            for g in &gammas {
                let label = p.components[g].label;
                if !label.is_abstract() {
                    relabel(&mut out, g, label.side().abstracted());
                }
                remove_outgoing(&mut out, g);
                abstracted.insert(g.clone());
            }
        }
        if a.label.is_abstract() {
            remove_outgoing(&mut out, alpha);
        } else {
            out.arrows.insert(arrow(alpha, beta_prime));
        }
        for g in gammas.iter().filter(|g| !abstracted.contains(*g)) {
            for d in &deltas {
                out.arrows.insert(arrow(g, d));
            }
        }
    }
    if !out.is_acyclic() {
        return Err(RewriteError::OrderConflict("slide would create a cycle".into()));
    }
    Ok(out)
}

/// Runs `op`, checks the result is valid, and reports what changed.
pub fn apply(p: &Presentation, op: &RewriteOp) -> Result<(Presentation, Diff), RewriteError> {
    let (out, notes) = match op {
        RewriteOp::MakeAbstract { targets } => (make_abstract(p, targets)?, vec![]),
        RewriteOp::MakeConcrete { a_prime } => (make_concrete(p, a_prime)?, vec![]),
        RewriteOp::CancelKnotCircle { knot } => cancel_knot_circle(p, knot)?,
        RewriteOp::CancelHopf { knot, witness } => cancel_hopf(p, knot, witness)?,
        RewriteOp::Slide { alpha, beta_prime, variant } => (slide(p, alpha, beta_prime, *variant)?, vec![]),
    };
    let report = out.validate();
    if !report.ok {
        return Err(RewriteError::InvalidResult(report.violations.into_iter().map(|v| v.message).collect()));
    }
    let mut diff = Diff::between(p, &out);
    diff.notes = notes;
    Ok((out, diff))
}

/// Every single-argument instance of every move on `p`, in a fixed order:
/// singleton abstractions, singleton concretions, cancellations, then slides.
pub fn candidate_ops(p: &Presentation) -> impl Iterator<Item = RewriteOp> + '_ {
    let comps = &p.components;
    let abstracts = comps
        .values()
        .filter(|c| !c.label.is_abstract())
        .map(|c| RewriteOp::MakeAbstract { targets: BTreeSet::from([c.id.clone()]) });
    let concretes = comps
        .values()
        .filter(|c| c.kind == ComponentKind::LinkingCircle && c.label.is_abstract())
        .map(|c| RewriteOp::MakeConcrete { a_prime: BTreeSet::from([c.id.clone()]) });
    let knots = || comps.values().filter(|c| c.kind == ComponentKind::Knot);
    let cancels = knots().map(|k| RewriteOp::CancelKnotCircle { knot: k.id.clone() });
    let hopfs = knots().map(|k| RewriteOp::CancelHopf {
        knot: k.id.clone(),
        witness: SplitFlag { pair: (k.id.clone(), k.partner.clone()), is_split_hopf: true },
    });
    let slides = knots().flat_map(move |k| {
        comps.values().filter(move |c| c.kind == ComponentKind::LinkingCircle && c.id != k.partner).map(move |c| {
            RewriteOp::Slide {
                alpha: k.id.clone(),
                beta_prime: c.id.clone(),
                variant: SlideVariant::for_sides(k.label.side(), c.label.side()),
            }
        })
    });
    abstracts.chain(concretes).chain(cancels).chain(hopfs).chain(slides)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cs::Family;

    fn pair(p: &mut Presentation, name: &str, knot: Label, circle: Label) {
        let cid = format!("{name}'");
        p.add_pair(
            Component {
                id: name.into(),
                kind: ComponentKind::Knot,
                family: Family::Free,
                label: knot,
                framing: 0,
                partner: cid.clone(),
            },
            Component {
                id: cid,
                kind: ComponentKind::LinkingCircle,
                family: Family::Free,
                label: circle,
                framing: 0,
                partner: name.into(),
            },
        );
    }

    fn ids(v: &[&str]) -> BTreeSet<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn has(p: &Presentation, a: &str, b: &str) -> bool {
        p.arrows.contains(&arrow(a, b))
    }

    #[test]
    fn abstraction() {
        let mut p = Presentation::new();
        pair(&mut p, "x", Label::Zero, Label::Bullet);
        pair(&mut p, "y", Label::Zero, Label::Bullet);
        pair(&mut p, "z", Label::Bullet, Label::Zero);
        p.arrows.insert(arrow("x", "y"));
        p.arrows.insert(arrow("z'", "x"));
        assert_eq!(make_abstract(&p, &BTreeSet::new()).unwrap(), p);

        let q = make_abstract(&p, &ids(&["x"])).unwrap();
        assert_eq!(q.components["x"].label, Label::AbstractZero);
        assert!(!has(&q, "x", "y"));
        assert!(has(&q, "z'", "x"));

        assert!(matches!(make_abstract(&q, &ids(&["z"])), Err(RewriteError::ModeConflict(_))));
        assert!(matches!(make_abstract(&p, &ids(&["x", "z"])), Err(RewriteError::ModeConflict(_))));
    }

    #[test]
    fn concretion() {
        let mut p = Presentation::new();
        pair(&mut p, "a", Label::Zero, Label::AbstractZero);
        pair(&mut p, "b", Label::Zero, Label::Bullet);
        p.arrows.insert(arrow("b", "a"));
        assert_eq!(make_concrete(&p, &BTreeSet::new()).unwrap(), p);
        let q = make_concrete(&p, &ids(&["a'"])).unwrap();
        assert_eq!(q.components["a'"].label, Label::Zero);
        assert!(has(&q, "a'", "b'"));

        let mut blocked = p.clone();
        blocked.arrows.insert(arrow("b'", "a'"));
        assert!(matches!(make_concrete(&blocked, &ids(&["a'"])), Err(RewriteError::OrderConflict(_))));
        assert!(matches!(make_concrete(&p, &ids(&["b'"])), Err(RewriteError::NotAbstract(_))));
    }

    #[test]
    fn cancellations() {
        let mut p = Presentation::new();
        pair(&mut p, "k", Label::Zero, Label::AbstractZero);
        pair(&mut p, "m", Label::Zero, Label::Bullet);
        p.arrows.insert(arrow("k", "m"));
        let (q, _) = cancel_knot_circle(&p, "k").unwrap();
        assert_eq!(q.components.len(), 2);
        assert!(q.arrows.is_empty());
        assert!(q.validate().ok);

        let mut blocked = p.clone();
        blocked.arrows.insert(arrow("m", "k"));
        assert!(matches!(cancel_knot_circle(&blocked, "k"), Err(RewriteError::Blocked(_))));
        assert!(matches!(cancel_knot_circle(&p, "m"), Err(RewriteError::NotAbstract(_))));

        let flag = SplitFlag { pair: ("k".into(), "k'".into()), is_split_hopf: true };
        let (q, _) = cancel_hopf(&blocked, "k", &flag).unwrap();
        assert!(q.arrows.is_empty());
        let unflagged = SplitFlag { is_split_hopf: false, ..flag };
        assert!(matches!(cancel_hopf(&p, "k", &unflagged), Err(RewriteError::NotSplit(_))));
    }

    #[test]
    fn zero_zero_slides() {
        let mut p = Presentation::new();
        pair(&mut p, "a", Label::Zero, Label::Bullet);
        pair(&mut p, "b", Label::Bullet, Label::Zero);
        assert_eq!(slide(&p, "a", "b'", SlideVariant::ZeroZero).unwrap(), p);

        pair(&mut p, "g", Label::Zero, Label::Bullet);
        pair(&mut p, "d", Label::Zero, Label::Bullet);
        p.arrows.insert(arrow("g", "a"));
        p.arrows.insert(arrow("b'", "d"));
        let q = slide(&p, "a", "b'", SlideVariant::ZeroZero).unwrap();
        assert!(has(&q, "g", "b'"));
        assert!(has(&q, "a", "d"));

        let mut abs = p.clone();
        abs.components.get_mut("b'").unwrap().label = Label::AbstractZero;
        abs.arrows.insert(arrow("a", "g'"));
        let q = slide(&abs, "a", "b'", SlideVariant::ZeroZero).unwrap();
        assert_eq!(q.components["a"].label, Label::AbstractZero);
        assert!(q.successors("a").next().is_none());

        let mut below = p.clone();
        below.arrows.insert(arrow("d", "a"));
        assert!(matches!(slide(&below, "a", "b'", SlideVariant::ZeroZero), Err(RewriteError::OrderConflict(_))));
        assert!(matches!(slide(&p, "a", "b'", SlideVariant::BulletBullet), Err(RewriteError::VariantMismatch(_))));
    }

    #[test]
    fn crossing_slides() {
        let mut p = Presentation::new();
        pair(&mut p, "a", Label::Zero, Label::Bullet);
        pair(&mut p, "b", Label::Zero, Label::AbstractBullet);
        pair(&mut p, "g", Label::Zero, Label::Bullet);
        pair(&mut p, "d", Label::Zero, Label::Bullet);
        p.arrows.insert(arrow("g", "a"));
        p.arrows.insert(arrow("b'", "d"));
        let q = slide(&p, "a", "b'", SlideVariant::ZeroBullet).unwrap();
        assert_eq!(q.components["g"].label, Label::AbstractZero);
        assert!(q.successors("g").next().is_none());
        assert!(has(&q, "a", "b'"));
        assert!(!has(&q, "g", "d"));

        let mut concrete = p.clone();
        concrete.components.get_mut("b'").unwrap().label = Label::Bullet;
        let q = slide(&concrete, "a", "b'", SlideVariant::ZeroBullet).unwrap();
        assert_eq!(q.components["g"].label, Label::Zero);
        assert!(has(&q, "g", "d"));
        assert!(has(&q, "a", "b'"));

        let mut both = p.clone();
        both.components.get_mut("a").unwrap().label = Label::AbstractZero;
        assert!(matches!(slide(&both, "a", "b'", SlideVariant::ZeroBullet), Err(RewriteError::VariantMismatch(_))));
    }

    #[test]
    fn apply_reports_diff() {
        let mut p = Presentation::new();
        pair(&mut p, "x", Label::Zero, Label::Bullet);
        let (q, d) = apply(&p, &RewriteOp::MakeAbstract { targets: BTreeSet::new() }).unwrap();
        assert_eq!(q, p);
        assert!(d.is_empty());
        let (q, d) = apply(&p, &RewriteOp::MakeAbstract { targets: ids(&["x"]) }).unwrap();
        assert_eq!(d.labels_changed.len(), 1);
        assert_eq!(d.apply(&p), q);
    }
}
