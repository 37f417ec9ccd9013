//! Oracles for the graph families used throughout the crate.
//!
//! | spec string     | family                                                   | degree |
//! |-----------------|----------------------------------------------------------|--------|
//! | `tree:D`        | `D`-regular tree (free product of `D` copies of Z/2)     | `D`    |
//! | `grid:D`        | lattice Z^D with unit generators                         | `2D`   |
//! | `lamplighter`   | Z/2 wr Z with generators flip, right, left               | 3      |
//! | `comb`          | half-line with a depth-`n` binary tree at spine vertex n | -      |
//! | `binary:D`      | finite full binary tree of depth `D`                     | -      |
//! | `subdiv:K`      | 3-regular tree, each edge carrying `K` extra vertices    | -      |
//! | `cycle:N`       | cycle C_N                                                | 2      |
//! | `torus:AxB..`   | discrete torus                                           | `2·dims` |
//! | `path:N`        | path P_N                                                 | -      |
//! | `complete:N`    | complete graph K_N                                       | `N-1`  |
//! | `file:PATH`     | edge-list file                                           | -      |

mod comb;
mod lamplighter;
mod lattice;
mod spec;
mod tree;

pub use comb::{comb_attached_tree, CombTree};
pub use lamplighter::{lamplighter_box, lamplighter_state, Lamplighter};
pub use lattice::{Complete, Lattice, PathGraph, Torus};
pub use spec::GeneratorSpec;
pub use tree::{BinaryTree, RegularTree, SubdividedTree};

use crate::error::Result;
use crate::graph::{io, GraphOracle};

/// Builds the oracle described by `spec`.
pub fn make_oracle(spec: &GeneratorSpec) -> Result<Box<dyn GraphOracle>> {
    spec.validate()?;
    Ok(match spec {
        GeneratorSpec::RegularTree(d) => Box::new(RegularTree::new(*d)?),
        GeneratorSpec::Lattice(d) => Box::new(Lattice::new(*d)?),
        GeneratorSpec::Lamplighter => Box::new(Lamplighter),
        GeneratorSpec::Comb => Box::new(CombTree),
        GeneratorSpec::BinaryTree(depth) => Box::new(BinaryTree::new(*depth)?),
        GeneratorSpec::SubdividedTree(k) => Box::new(SubdividedTree::new(*k)?),
        GeneratorSpec::Cycle(n) => Box::new(Torus::new(vec![*n])?),
        GeneratorSpec::Torus(dims) => Box::new(Torus::new(dims.clone())?),
        GeneratorSpec::Path(n) => Box::new(PathGraph::new(*n)?),
        GeneratorSpec::Complete(n) => Box::new(Complete::new(*n)?),
        GeneratorSpec::File(path) => Box::new(io::read_graph(path)?),
    })
}
