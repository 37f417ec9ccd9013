use super::VertexId;

/// A pure neighbor function. Infinite families are only accessed this way.
///
/// Implementations must be symmetric (`u ∈ N(v) ⇔ v ∈ N(u)`), free of loops and
/// duplicate neighbors, and return neighbor lists sorted by [`VertexId`] order.
pub trait GraphOracle: Send + Sync {
    fn neighbors(&self, v: &VertexId) -> Vec<VertexId>;

    fn contains(&self, v: &VertexId) -> bool;

    /// `Some(m)` iff every vertex has exactly `m` neighbors.
    fn uniform_degree(&self) -> Option<usize>;

    fn family(&self) -> String;

    /// A distinguished vertex (identity element, origin, spine start).
    fn default_root(&self) -> Option<VertexId>;
}

impl<T: GraphOracle + ?Sized> GraphOracle for Box<T> {
    fn neighbors(&self, v: &VertexId) -> Vec<VertexId> {
        (**self).neighbors(v)
    }
    fn contains(&self, v: &VertexId) -> bool {
        (**self).contains(v)
    }
    fn uniform_degree(&self) -> Option<usize> {
        (**self).uniform_degree()
    }
    fn family(&self) -> String {
        (**self).family()
    }
    fn default_root(&self) -> Option<VertexId> {
        (**self).default_root()
    }
}
