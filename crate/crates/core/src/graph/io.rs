//! Edge-list and vertex-set text files.
//!
//! Edge lists hold one `u v` pair per line using canonical vertex tokens. A
//! line with a single token declares an isolated vertex. `#` starts a comment;
//! the comment `# truncation radius=R root=ID [root=ID ...]` (or
//! `# truncation complete root=ID`) records how the graph was materialized.

use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use super::{FiniteGraph, Truncation, VertexId, VertexSet};
use crate::error::{Error, Result};

const TRUNCATION_TAG: &str = "# truncation";

#[derive(Debug, Clone, PartialEq, Eq)]
enum TruncationHeader {
    Complete { root: VertexId },
    Ball { radius: u32, roots: Vec<VertexId> },
}

fn parse_token(tok: &str, line: usize) -> Result<VertexId> {
    tok.parse().map_err(|e: Error| Error::Parse { line, message: e.to_string() })
}

fn parse_header(rest: &str, line: usize) -> Result<TruncationHeader> {
    let mut complete = false;
    let mut radius = None;
    let mut roots = Vec::new();
    for tok in rest.split_whitespace() {
        if tok == "complete" {
            complete = true;
        } else if let Some(r) = tok.strip_prefix("radius=") {
            radius = Some(r.parse::<u32>().map_err(|e| Error::Parse {
                line,
                message: format!("bad truncation radius `{r}`: {e}"),
            })?);
        } else if let Some(id) = tok.strip_prefix("root=") {
            roots.push(parse_token(id, line)?);
        } else {
            return Err(Error::Parse { line, message: format!("unknown truncation field `{tok}`") });
        }
    }
    if roots.is_empty() {
        return Err(Error::Parse { line, message: "truncation header without root".into() });
    }
    match (complete, radius) {
        (true, None) if roots.len() == 1 => Ok(TruncationHeader::Complete { root: roots.remove(0) }),
        (false, Some(radius)) => Ok(TruncationHeader::Ball { radius, roots }),
        _ => Err(Error::Parse { line, message: "malformed truncation header".into() }),
    }
}

fn parse_edge_list<R: BufRead>(reader: R) -> Result<(FiniteGraph, Option<TruncationHeader>)> {
    let mut edges = Vec::new();
    let mut isolated = Vec::new();
    let mut header = None;
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        let trimmed = line.trim();
        if let Some(rest) = trimmed.strip_prefix(TRUNCATION_TAG) {
            header = Some(parse_header(rest, line_no)?);
            continue;
        }
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = trimmed.split_whitespace().collect();
        match toks.as_slice() {
            [v] => isolated.push(parse_token(v, line_no)?),
            [u, v] => {
                let (u, v) = (parse_token(u, line_no)?, parse_token(v, line_no)?);
                if u == v {
                    return Err(Error::Inconsistent(format!("self-loop at {u} (line {line_no})")));
                }
                edges.push((u, v));
            }
            _ => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected `u v`, found {} tokens", toks.len()),
                })
            }
        }
    }
    Ok((FiniteGraph::from_edges(edges, isolated)?, header))
}

pub fn read_edge_list<R: BufRead>(reader: R) -> Result<FiniteGraph> {
    Ok(parse_edge_list(reader)?.0)
}

/// Reads an edge list together with its truncation record. Files without a
/// truncation header are treated as complete graphs rooted at the lowest id.
pub fn read_truncated_edge_list<R: BufRead>(reader: R) -> Result<(FiniteGraph, Truncation)> {
    let (g, header) = parse_edge_list(reader)?;
    if g.is_empty() {
        return Err(Error::InvalidParameter("graph has no vertices".into()));
    }
    let t = match header {
        None => Truncation::complete(&g, 0),
        Some(TruncationHeader::Complete { root }) => Truncation::complete(&g, g.require_index(&root)?),
        Some(TruncationHeader::Ball { radius, roots }) => {
            let idx = roots.iter().map(|r| g.require_index(r)).collect::<Result<Vec<_>>>()?;
            Truncation::from_roots(&g, &idx, radius)?
        }
    };
    Ok((g, t))
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<FiniteGraph> {
    read_edge_list(BufReader::new(fs::File::open(path)?))
}

pub fn read_truncated_graph(path: impl AsRef<Path>) -> Result<(FiniteGraph, Truncation)> {
    read_truncated_edge_list(BufReader::new(fs::File::open(path)?))
}

pub fn write_edge_list<W: Write>(g: &FiniteGraph, t: Option<&Truncation>, mut w: W) -> Result<()> {
    writeln!(w, "# isogrowth edge list: {} vertices, {} edges", g.len(), g.edge_count())?;
    if let Some(t) = t {
        if t.is_complete() {
            writeln!(w, "{TRUNCATION_TAG} complete root={}", g.id(t.root()))?;
        } else {
            write!(w, "{TRUNCATION_TAG} radius={}", t.radius())?;
            for &r in t.roots() {
                write!(w, " root={}", g.id(r))?;
            }
            writeln!(w)?;
        }
    }
    for (u, v) in g.edges() {
        writeln!(w, "{} {}", g.id(u), g.id(v))?;
    }
    for v in 0..g.len() as u32 {
        if g.degree(v) == 0 {
            writeln!(w, "{}", g.id(v))?;
        }
    }
    Ok(())
}

pub fn write_graph(g: &FiniteGraph, t: Option<&Truncation>, path: impl AsRef<Path>) -> Result<()> {
    let mut buf = Vec::new();
    write_edge_list(g, t, &mut buf)?;
    atomic_write(path, &buf)
}

/// Parses a vertex-set file: one vertex token per line, `#` comments.
pub fn parse_vertex_set<R: BufRead>(g: &FiniteGraph, reader: R) -> Result<VertexSet> {
    let mut idx = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let v = parse_token(t, i + 1)?;
        idx.push(g.require_index(&v)?);
    }
    Ok(VertexSet::from_indices(idx))
}

pub fn read_vertex_set(g: &FiniteGraph, path: impl AsRef<Path>) -> Result<VertexSet> {
    parse_vertex_set(g, BufReader::new(fs::File::open(path)?))
}

pub fn write_vertex_set_to<W: Write>(g: &FiniteGraph, set: &VertexSet, mut w: W) -> Result<()> {
    for v in set.iter() {
        writeln!(w, "{}", g.id(v))?;
    }
    Ok(())
}

pub fn write_vertex_set(g: &FiniteGraph, set: &VertexSet, path: impl AsRef<Path>) -> Result<()> {
    let mut buf = Vec::new();
    write_vertex_set_to(g, set, &mut buf)?;
    atomic_write(path, &buf)
}

/// Writes `bytes` to a temporary file next to `path`, then renames it into
/// place, so readers never observe a partial file.
pub fn atomic_write(path: impl AsRef<Path>, bytes: &[u8]) -> Result<()> {
    let path = path.as_ref();
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}
