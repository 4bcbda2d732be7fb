//! The facet file format.
//!
//! UTF-8 text. Lines starting with `#` are comments and blank lines are
//! ignored; every other line is one facet, its vertex labels separated by
//! whitespace. Labels follow the grammar of [`crate::label::VertexLabel`].

use std::io::{BufRead, Write};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::label::VertexLabel;

/// Write the complex, one facet per line, in canonical order.
pub fn write_facets<W: Write>(k: &SimplicialComplex, out: &mut W) -> Result<()> {
    writeln!(
        out,
        "# vertices={} facets={} dim={}",
        k.vertex_count(),
        k.facet_count(),
        k.dim()
    )?;
    for facet in k.facets() {
        let line: Vec<String> = facet.iter().map(|&v| k.vertex(v).render()).collect();
        writeln!(out, "{}", line.join(" "))?;
    }
    Ok(())
}

pub fn write_facets_to_string(k: &SimplicialComplex) -> String {
    let mut buf = Vec::new();
    write_facets(k, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("renderings are ASCII")
}

/// Parse a facet file. Parse failures carry the 1-based line number.
pub fn read_facets<R: BufRead>(input: R) -> Result<SimplicialComplex> {
    let mut facets: Vec<Vec<VertexLabel>> = Vec::new();
    for (ix, line) in input.lines().enumerate() {
        let line_no = ix + 1;
        let line = line.map_err(Error::Io)?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut facet = Vec::new();
        for token in trimmed.split_whitespace() {
            let label = VertexLabel::parse(token).map_err(|e| match e {
                Error::FacetParse { msg, .. } => Error::FacetParse { line: line_no, msg },
                other => other,
            })?;
            facet.push(label);
        }
        facets.push(facet);
    }
    SimplicialComplex::from_facets(facets)
}

pub fn read_facets_from_str(s: &str) -> Result<SimplicialComplex> {
    read_facets(s.as_bytes())
}
