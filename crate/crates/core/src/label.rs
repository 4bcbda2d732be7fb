//! Canonical, totally ordered vertex labels.
//!
//! Every complex in this crate names its vertices with a [`VertexLabel`].
//! Labels render to a unique string form (the grammar of the facet file
//! format) and the total order on labels is the lexicographic order of that
//! rendering, so vertex order is deterministic across runs.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Which boundary curve of a regular neighborhood an interval label names.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// The preferred boundary component; renders as `I[j..m]`.
    Canonical,
    /// The other boundary component of an odd interval; renders as `I'[j..m]`.
    Opposite,
    /// The marked-point variant used by the genus-2 witness; renders as `I''[j..m]`.
    Marked,
}

impl Side {
    fn ticks(self) -> &'static str {
        match self {
            Side::Canonical => "",
            Side::Opposite => "'",
            Side::Marked => "''",
        }
    }
}

/// A vertex name. The variants cover the vertex kinds produced by this crate:
/// subsets (tubes, sub-arc systems), intervals with a side mark, polygon
/// chords, and flags created by barycentric subdivision.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum VertexLabel {
    /// `S{a,b,...}` — a set of positive integers, stored sorted.
    Subset(Vec<u32>),
    /// `I[j..m]`, `I'[j..m]` or `I''[j..m]` — an integer interval with a side mark.
    Interval { lo: u32, hi: u32, side: Side },
    /// `P(a,b)` — an unordered pair of polygon side indices, stored with a < b.
    Chord(u32, u32),
    /// `F(l1|l2|...)` — the barycenter of the simplex with the given vertices.
    Flag(Vec<VertexLabel>),
}

impl VertexLabel {
    pub fn subset<I: IntoIterator<Item = u32>>(elems: I) -> Self {
        let mut v: Vec<u32> = elems.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexLabel::Subset(v)
    }

    pub fn interval(lo: u32, hi: u32) -> Self {
        VertexLabel::Interval { lo, hi, side: Side::Canonical }
    }

    pub fn interval_side(lo: u32, hi: u32, side: Side) -> Self {
        VertexLabel::Interval { lo, hi, side }
    }

    pub fn chord(a: u32, b: u32) -> Self {
        if a <= b {
            VertexLabel::Chord(a, b)
        } else {
            VertexLabel::Chord(b, a)
        }
    }

    pub fn flag(parts: Vec<VertexLabel>) -> Self {
        VertexLabel::Flag(parts)
    }

    /// The canonical rendering; doubles as the wire form in facet files.
    pub fn render(&self) -> String {
        let mut s = String::new();
        self.render_into(&mut s);
        s
    }

    fn render_into(&self, out: &mut String) {
        use std::fmt::Write;
        match self {
            VertexLabel::Subset(elems) => {
                out.push_str("S{");
                for (i, e) in elems.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    let _ = write!(out, "{e}");
                }
                out.push('}');
            }
            VertexLabel::Interval { lo, hi, side } => {
                let _ = write!(out, "I{}[{}..{}]", side.ticks(), lo, hi);
            }
            VertexLabel::Chord(a, b) => {
                let _ = write!(out, "P({a},{b})");
            }
            VertexLabel::Flag(parts) => {
                out.push_str("F(");
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        out.push('|');
                    }
                    p.render_into(out);
                }
                out.push(')');
            }
        }
    }

    /// Parse one label token of the facet file grammar.
    pub fn parse(token: &str) -> Result<Self> {
        let (label, rest) = parse_prefix(token)
            .map_err(|msg| Error::FacetParse { line: 0, msg: format!("{msg} in `{token}`") })?;
        if !rest.is_empty() {
            return Err(Error::FacetParse {
                line: 0,
                msg: format!("trailing characters `{rest}` in `{token}`"),
            });
        }
        Ok(label)
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl PartialOrd for VertexLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for VertexLabel {
    // Lexicographic on the rendering keeps the order stable across label kinds.
    fn cmp(&self, other: &Self) -> Ordering {
        self.render().cmp(&other.render())
    }
}

impl serde::Serialize for VertexLabel {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.render())
    }
}

fn parse_prefix(s: &str) -> std::result::Result<(VertexLabel, &str), String> {
    if let Some(rest) = s.strip_prefix("S{") {
        let end = rest.find('}').ok_or("missing `}`")?;
        let body = &rest[..end];
        let mut elems = Vec::new();
        if !body.is_empty() {
            for part in body.split(',') {
                elems.push(parse_u32(part)?);
            }
        }
        if elems.is_empty() {
            return Err("empty subset".into());
        }
        let sorted = {
            let mut v = elems.clone();
            v.sort_unstable();
            v.dedup();
            v
        };
        if sorted.len() != elems.len() || sorted != elems {
            return Err("subset elements must be strictly increasing".into());
        }
        return Ok((VertexLabel::Subset(elems), &rest[end + 1..]));
    }
    if let Some(rest) = s.strip_prefix("I") {
        let (side, rest) = if let Some(r) = rest.strip_prefix("''") {
            (Side::Marked, r)
        } else if let Some(r) = rest.strip_prefix('\'') {
            (Side::Opposite, r)
        } else {
            (Side::Canonical, rest)
        };
        let rest = rest.strip_prefix('[').ok_or("missing `[`")?;
        let end = rest.find(']').ok_or("missing `]`")?;
        let body = &rest[..end];
        let (lo, hi) = body.split_once("..").ok_or("missing `..`")?;
        let lo = parse_u32(lo)?;
        let hi = parse_u32(hi)?;
        if lo > hi {
            return Err("interval bounds out of order".into());
        }
        return Ok((VertexLabel::Interval { lo, hi, side }, &rest[end + 1..]));
    }
    if let Some(rest) = s.strip_prefix("P(") {
        let end = rest.find(')').ok_or("missing `)`")?;
        let body = &rest[..end];
        let (a, b) = body.split_once(',').ok_or("missing `,`")?;
        let a = parse_u32(a)?;
        let b = parse_u32(b)?;
        if a >= b {
            return Err("chord sides must be strictly increasing".into());
        }
        return Ok((VertexLabel::Chord(a, b), &rest[end + 1..]));
    }
    if let Some(rest) = s.strip_prefix("F(") {
        let mut parts = Vec::new();
        let mut rem = rest;
        loop {
            let (part, after) = parse_prefix(rem)?;
            parts.push(part);
            if let Some(r) = after.strip_prefix('|') {
                rem = r;
            } else if let Some(r) = after.strip_prefix(')') {
                return Ok((VertexLabel::Flag(parts), r));
            } else {
                return Err("expected `|` or `)` in flag label".into());
            }
        }
    }
    Err("unrecognized label".into())
}

fn parse_u32(s: &str) -> std::result::Result<u32, String> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("expected integer, got `{s}`"));
    }
    s.parse::<u32>().map_err(|e| e.to_string())
}
