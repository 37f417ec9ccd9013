use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A graph family plus its integer parameters, written as a short string such
/// as `tree:3`, `grid:2`, `lamplighter`, `comb`, `subdiv:4` or `file:g.edges`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum GeneratorSpec {
    RegularTree(u32),
    Lattice(u32),
    Lamplighter,
    Comb,
    BinaryTree(u32),
    SubdividedTree(u32),
    Cycle(u32),
    Torus(Vec<u32>),
    Path(u32),
    Complete(u32),
    File(PathBuf),
}

impl GeneratorSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidParameter(format!("{self}: {m}")));
        match self {
            GeneratorSpec::RegularTree(d) if *d < 3 => bad("regular tree needs degree >= 3"),
            GeneratorSpec::Lattice(d) if *d < 1 => bad("lattice needs dimension >= 1"),
            GeneratorSpec::SubdividedTree(k) if *k < 1 => bad("subdivision needs k >= 1"),
            GeneratorSpec::BinaryTree(d) if *d > 40 => bad("binary tree depth must be <= 40"),
            GeneratorSpec::Cycle(n) if *n < 3 => bad("cycle needs at least 3 vertices"),
            GeneratorSpec::Torus(dims) if dims.is_empty() || dims.iter().any(|&n| n < 3) => {
                bad("torus sides must be >= 3")
            }
            GeneratorSpec::Path(n) | GeneratorSpec::Complete(n) if *n < 1 => bad("needs at least one vertex"),
            _ => Ok(()),
        }
    }

    /// Families whose oracle graph is finite.
    pub fn is_finite(&self) -> bool {
        !matches!(
            self,
            GeneratorSpec::RegularTree(_)
                | GeneratorSpec::Lattice(_)
                | GeneratorSpec::Lamplighter
                | GeneratorSpec::Comb
                | GeneratorSpec::SubdividedTree(_)
        )
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::RegularTree(d) => write!(f, "tree:{d}"),
            GeneratorSpec::Lattice(d) => write!(f, "grid:{d}"),
            GeneratorSpec::Lamplighter => f.write_str("lamplighter"),
            GeneratorSpec::Comb => f.write_str("comb"),
            GeneratorSpec::BinaryTree(d) => write!(f, "binary:{d}"),
            GeneratorSpec::SubdividedTree(k) => write!(f, "subdiv:{k}"),
            GeneratorSpec::Cycle(n) => write!(f, "cycle:{n}"),
            GeneratorSpec::Torus(dims) => {
                let parts: Vec<String> = dims.iter().map(u32::to_string).collect();
                write!(f, "torus:{}", parts.join("x"))
            }
            GeneratorSpec::Path(n) => write!(f, "path:{n}"),
            GeneratorSpec::Complete(n) => write!(f, "complete:{n}"),
            GeneratorSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

impl FromStr for GeneratorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (tag, arg) = match s.split_once(':') {
            Some((t, a)) => (t, Some(a)),
            None => (s, None),
        };
        let int = |a: Option<&str>| -> Result<u32> {
            let a = a.ok_or_else(|| Error::InvalidParameter(format!("`{s}` needs an integer parameter")))?;
            a.parse()
                .map_err(|_| Error::InvalidParameter(format!("`{a}` is not a valid parameter in `{s}`")))
        };
        let spec = match tag {
            "tree" => GeneratorSpec::RegularTree(int(arg)?),
            "grid" | "lattice" => GeneratorSpec::Lattice(int(arg)?),
            "lamplighter" if arg.is_none() => GeneratorSpec::Lamplighter,
            "comb" if arg.is_none() => GeneratorSpec::Comb,
            "binary" => GeneratorSpec::BinaryTree(int(arg)?),
            "subdiv" => GeneratorSpec::SubdividedTree(int(arg)?),
            "cycle" => GeneratorSpec::Cycle(int(arg)?),
            "torus" => {
                let a = arg.ok_or_else(|| Error::InvalidParameter("torus needs sides, e.g. torus:8x8".into()))?;
                GeneratorSpec::Torus(a.split('x').map(|p| int(Some(p))).collect::<Result<_>>()?)
            }
            "path" => GeneratorSpec::Path(int(arg)?),
            "complete" => GeneratorSpec::Complete(int(arg)?),
            "file" => match arg {
                Some(p) if !p.is_empty() => GeneratorSpec::File(PathBuf::from(p)),
                _ => return Err(Error::InvalidParameter("file spec needs a path".into())),
            },
            _ => return Err(Error::InvalidParameter(format!("unknown generator spec `{s}`"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl TryFrom<String> for GeneratorSpec {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<GeneratorSpec> for String {
    fn from(s: GeneratorSpec) -> String {
        s.to_string()
    }
}
