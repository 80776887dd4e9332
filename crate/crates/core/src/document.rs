//! Versioned JSON documents with a canonical byte form.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::{self, DeserializeOwned, MapAccess, Visitor};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::compiler::CompilerInput;
use crate::cs::{Presentation, Report};
use crate::fw::FwSystem;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Kind {
    #[serde(rename = "fwSystem")]
    FwSystem,
    #[serde(rename = "presentation")]
    Presentation,
    #[serde(rename = "compilerInput")]
    CompilerInput,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    FwSystem(FwSystem),
    Presentation(Presentation),
    CompilerInput(CompilerInput),
}

impl Payload {
    pub fn kind(&self) -> Kind {
        match self {
            Payload::FwSystem(_) => Kind::FwSystem,
            Payload::Presentation(_) => Kind::Presentation,
            Payload::CompilerInput(_) => Kind::CompilerInput,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub format_version: u32,
    pub payload: Payload,
    pub metadata: BTreeMap<String, String>,
}

impl Document {
    pub fn new(payload: Payload) -> Document {
        Document { format_version: FORMAT_VERSION, payload, metadata: BTreeMap::new() }
    }

    pub fn presentation(p: Presentation) -> Document {
        Document::new(Payload::Presentation(p))
    }

    pub fn fw_system(s: FwSystem) -> Document {
        Document::new(Payload::FwSystem(s))
    }

    pub fn compiler_input(c: CompilerInput) -> Document {
        Document::new(Payload::CompilerInput(c))
    }

    /// Checks the payload against the invariants of its kind.
    pub fn validate(&self) -> Report {
        let system = match &self.payload {
            Payload::Presentation(p) => return p.validate(),
            Payload::FwSystem(s) => s,
            Payload::CompilerInput(c) => &c.system,
        };
        let mut r = Report::new();
        if let Err(e) = system.validate() {
            r.fail(e.code(), e.to_string());
        }
        r
    }
}

impl Serialize for Document {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Document", 4)?;
        st.serialize_field("formatVersion", &self.format_version)?;
        st.serialize_field("kind", &self.payload.kind())?;
        match &self.payload {
            Payload::FwSystem(x) => st.serialize_field("payload", x)?,
            Payload::Presentation(x) => st.serialize_field("payload", x)?,
            Payload::CompilerInput(x) => st.serialize_field("payload", x)?,
        }
        st.serialize_field("metadata", &self.metadata)?;
        st.end()
    }
}

const FIELDS: &[&str] = &["formatVersion", "kind", "payload", "metadata"];

struct DocumentVisitor;

fn payload_from_value(kind: Kind, v: serde_json::Value) -> Result<Payload, serde_json::Error> {
    Ok(match kind {
        Kind::FwSystem => Payload::FwSystem(serde_json::from_value(v)?),
        Kind::Presentation => Payload::Presentation(serde_json::from_value(v)?),
        Kind::CompilerInput => Payload::CompilerInput(serde_json::from_value(v)?),
    })
}

impl<'de> Visitor<'de> for DocumentVisitor {
    type Value = Document;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a document object")
    }

    fn visit_map<A: MapAccess<'de>>(self, mut m: A) -> Result<Document, A::Error> {
        let mut version = None;
        let mut kind: Option<Kind> = None;
        let mut payload = None;
        let mut early_payload: Option<serde_json::Value> = None;
        let mut metadata = None;
        while let Some(key) = m.next_key::<String>()? {
            match key.as_str() {
                "formatVersion" => {
                    let v: u32 = m.next_value()?;
                    if v != FORMAT_VERSION {
                        return Err(de::Error::custom(format!(
                            "unsupported formatVersion {v}, expected {FORMAT_VERSION}"
                        )));
                    }
                    version = Some(v);
                }
                "kind" => kind = Some(m.next_value()?),
                // Parse in place when the kind is known so errors keep their position.
                "payload" => match kind {
                    Some(Kind::FwSystem) => payload = Some(Payload::FwSystem(m.next_value()?)),
                    Some(Kind::Presentation) => payload = Some(Payload::Presentation(m.next_value()?)),
                    Some(Kind::CompilerInput) => payload = Some(Payload::CompilerInput(m.next_value()?)),
                    None => early_payload = Some(m.next_value()?),
                },
                "metadata" => metadata = Some(m.next_value()?),
                other => return Err(de::Error::unknown_field(other, FIELDS)),
            }
        }
        let format_version = version.ok_or_else(|| de::Error::missing_field("formatVersion"))?;
        let kind = kind.ok_or_else(|| de::Error::missing_field("kind"))?;
        let payload = match (payload, early_payload) {
            (Some(p), _) => p,
            (None, Some(v)) => payload_from_value(kind, v).map_err(de::Error::custom)?,
            (None, None) => return Err(de::Error::missing_field("payload")),
        };
        Ok(Document { format_version, payload, metadata: metadata.unwrap_or_default() })
    }
}

impl<'de> Deserialize<'de> for Document {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Document, D::Error> {
        d.deserialize_map(DocumentVisitor)
    }
}

/// A parse failure located by line, column and field path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub path: String,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)?;
        if !self.path.is_empty() && self.path != "." {
            write!(f, ", at {}", self.path)?;
        }
        write!(f, ": {}", self.message)
    }
}

impl std::error::Error for ParseError {}

/// Parses any JSON value, reporting the failing field path on error.
pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T, ParseError> {
    let locate = |path: String, e: serde_json::Error| {
        let message = e.to_string();
        let message = match message.rfind(" at line ") {
            Some(i) => message[..i].to_string(),
            None => message,
        };
        ParseError { line: e.line(), column: e.column(), path, message }
    };
    let mut de = serde_json::Deserializer::from_str(text);
    let value = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let offset = value_offset(text, e.path());
        let path = e.path().to_string();
        let mut err = locate(path, e.into_inner());
        // tagged enums replay buffered content, which has no position
        if err.line == 0 {
            if let Some(off) = offset {
                (err.line, err.column) = line_column(text, off);
            }
        }
        err
    })?;
    de.end().map_err(|e| locate(String::new(), e))?;
    Ok(value)
}

fn skip_ws(b: &[u8], mut pos: usize) -> usize {
    while b.get(pos).is_some_and(|c| c.is_ascii_whitespace()) {
        pos += 1;
    }
    pos
}

fn skip_string(b: &[u8], mut pos: usize) -> Option<usize> {
    if b.get(pos)? != &b'"' {
        return None;
    }
    pos += 1;
    loop {
        match b.get(pos)? {
            b'\\' => pos += 2,
            b'"' => return Some(pos + 1),
            _ => pos += 1,
        }
    }
}

fn skip_value(b: &[u8], mut pos: usize) -> Option<usize> {
    match b.get(pos)? {
        b'"' => skip_string(b, pos),
        b'{' | b'[' => {
            let mut depth = 0usize;
            loop {
                match b.get(pos)? {
                    b'"' => {
                        pos = skip_string(b, pos)?;
                        continue;
                    }
                    b'{' | b'[' => depth += 1,
                    b'}' | b']' => {
                        depth -= 1;
                        if depth == 0 {
                            return Some(pos + 1);
                        }
                    }
                    _ => {}
                }
                pos += 1;
            }
        }
        _ => {
            while b.get(pos).is_some_and(|c| !b",}] \t\r\n".contains(c)) {
                pos += 1;
            }
            Some(pos)
        }
    }
}

/// Byte offset where the value at `path` starts in `text`.
fn value_offset(text: &str, path: &serde_path_to_error::Path) -> Option<usize> {
    use serde_path_to_error::Segment;
    let b = text.as_bytes();
    let mut pos = skip_ws(b, 0);
    for seg in path.iter() {
        match seg {
            Segment::Map { key } => {
                if b.get(pos)? != &b'{' {
                    return None;
                }
                pos = skip_ws(b, pos + 1);
                loop {
                    let end = skip_string(b, pos)?;
                    let k: String = serde_json::from_str(&text[pos..end]).ok()?;
                    pos = skip_ws(b, end);
                    if b.get(pos)? != &b':' {
                        return None;
                    }
                    pos = skip_ws(b, pos + 1);
                    if k == *key {
                        break;
                    }
                    pos = skip_ws(b, skip_value(b, pos)?);
                    if b.get(pos)? != &b',' {
                        return None;
                    }
                    pos = skip_ws(b, pos + 1);
                }
            }
            Segment::Seq { index } => {
                if b.get(pos)? != &b'[' {
                    return None;
                }
                pos = skip_ws(b, pos + 1);
                for _ in 0..*index {
                    pos = skip_ws(b, skip_value(b, pos)?);
                    if b.get(pos)? != &b',' {
                        return None;
                    }
                    pos = skip_ws(b, pos + 1);
                }
            }
            Segment::Enum { .. } => {}
            Segment::Unknown => break,
        }
    }
    Some(pos)
}

fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset];
    let line_start = before.rfind('\n').map_or(0, |i| i + 1);
    (1 + before.matches('\n').count(), 1 + before[line_start..].chars().count())
}

pub fn parse(bytes: &[u8]) -> Result<Document, ParseError> {
    let text = std::str::from_utf8(bytes).map_err(|e| {
        let good = &bytes[..e.valid_up_to()];
        let line_start = good.iter().rposition(|&b| b == b'\n').map_or(0, |i| i + 1);
        ParseError {
            line: 1 + good.iter().filter(|&&b| b == b'\n').count(),
            column: 1 + String::from_utf8_lossy(&good[line_start..]).chars().count(),
            path: String::new(),
            message: format!("input is not UTF-8: {e}"),
        }
    })?;
    parse_json(text)
}

/// Canonical form: two-space indented JSON with sorted map keys and a
/// trailing newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("document values always serialize");
    s.push('\n');
    s
}

pub fn serialize(d: &Document) -> Vec<u8> {
    to_canonical_json(d).into_bytes()
}
