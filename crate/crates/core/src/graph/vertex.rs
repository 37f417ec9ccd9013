use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;

use crate::error::Error;

/// Opaque vertex identifier.
///
/// Family oracles encode their vertices as integer coordinate tuples (a lattice
/// point, a reduced tree word, a lamplighter state `pos, lamps...`). Graphs read
/// from edge-list files may also use free-form names. The derived ordering is
/// the ordering of [`VertexId::to_bytes`], and it drives every tie-break in the
/// crate.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexId {
    Coords(SmallVec<[i64; 4]>),
    Name(Box<str>),
}

impl VertexId {
    pub fn coords(c: &[i64]) -> Self {
        VertexId::Coords(SmallVec::from_slice(c))
    }

    pub fn from_vec(c: SmallVec<[i64; 4]>) -> Self {
        VertexId::Coords(c)
    }

    pub fn name(s: &str) -> Result<Self, Error> {
        match s.parse::<VertexId>()? {
            v @ VertexId::Name(_) => Ok(v),
            VertexId::Coords(_) => Err(Error::InvalidParameter(format!(
                "`{s}` is a coordinate token, not a name"
            ))),
        }
    }

    pub fn as_coords(&self) -> Option<&[i64]> {
        match self {
            VertexId::Coords(c) => Some(c),
            VertexId::Name(_) => None,
        }
    }

    /// Canonical byte encoding. Coordinates are written big-endian with the
    /// sign bit flipped, so byte order equals numeric lexicographic order.
    pub fn to_bytes(&self) -> Vec<u8> {
        match self {
            VertexId::Coords(c) => {
                let mut out = Vec::with_capacity(1 + 8 * c.len());
                out.push(0);
                for x in c {
                    out.extend_from_slice(&((*x as u64) ^ (1 << 63)).to_be_bytes());
                }
                out
            }
            VertexId::Name(s) => {
                let mut out = Vec::with_capacity(1 + s.len());
                out.push(1);
                out.extend_from_slice(s.as_bytes());
                out
            }
        }
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexId::Coords(c) if c.is_empty() => f.write_str("()"),
            VertexId::Coords(c) => {
                for (i, x) in c.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
            VertexId::Name(s) => f.write_str(s),
        }
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VertexId({self})")
    }
}

fn canonical_int(tok: &str) -> Option<i64> {
    let digits = tok.strip_prefix('-').unwrap_or(tok);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if (digits.len() > 1 && digits.starts_with('0')) || tok == "-0" {
        return None;
    }
    tok.parse().ok()
}

impl FromStr for VertexId {
    type Err = Error;

    /// Tokens made of canonical comma-separated integers (or `()`) are
    /// coordinates; any other non-blank token is a name.
    fn from_str(s: &str) -> Result<Self, Error> {
        if s.is_empty() || s.chars().any(char::is_whitespace) || s.starts_with('#') {
            return Err(Error::InvalidParameter(format!("`{s}` is not a vertex token")));
        }
        if s == "()" {
            return Ok(VertexId::Coords(SmallVec::new()));
        }
        let parts: Option<SmallVec<[i64; 4]>> = s.split(',').map(canonical_int).collect();
        Ok(match parts {
            Some(c) => VertexId::Coords(c),
            None => VertexId::Name(s.into()),
        })
    }
}

impl serde::Serialize for VertexId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for VertexId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
