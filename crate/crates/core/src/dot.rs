//! Graphviz export of a presentation's arrow graph.

use std::fmt::Write;

use crate::cs::{ComponentKind, Presentation};

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        if ch == '"' || ch == '\\' {
            out.push('\\');
        }
        out.push(ch);
    }
    out.push('"');
    out
}

/// Nodes carry `kind`, `label`, `family` and `depth` attributes; depth is
/// omitted when the arrow graph is cyclic.
pub fn export_dot(p: &Presentation) -> String {
    let depths = p.depths().ok();
    let mut s = String::from("digraph presentation {\n");
    for (id, c) in &p.components {
        let kind = match c.kind {
            ComponentKind::Knot => "knot",
            ComponentKind::LinkingCircle => "linking_circle",
        };
        let shape = if c.kind == ComponentKind::Knot { "ellipse" } else { "box" };
        write!(
            s,
            "  {} [kind={}, label={}, family={}, shape={shape}",
            quote(id),
            quote(kind),
            quote(&format!("{id} {}", c.label.glyph())),
            quote(&c.family.to_string()),
        )
        .unwrap();
        if let Some(d) = depths.as_ref().and_then(|m| m.get(id)) {
            write!(s, ", depth={d}").unwrap();
        }
        s.push_str("];\n");
    }
    for (a, b) in &p.arrows {
        writeln!(s, "  {} -> {};", quote(a), quote(b)).unwrap();
    }
    s.push_str("}\n");
    s
}
