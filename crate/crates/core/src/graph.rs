//! Dense digraphs over `0..n`, vertex sets, clique covers and the structural
//! predicates the cover algorithms rely on.
//!
//! Undirected graphs are symmetric digraphs: every undirected edge is stored
//! as two oppositely directed edges. Operations that only make sense for
//! graphs check [`Digraph::is_symmetric`] first.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a digraph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("duplicate vertex {0} in vertex set")]
    DuplicateVertex(usize),
    #[error("operation requires a symmetric digraph (undirected graph)")]
    NotSymmetric,
    #[error("induced sub-digraph contains a directed cycle")]
    Cyclic,
    #[error("invalid clique cover: {0}")]
    InvalidCover(String),
}

/// Fixed-width bitset backing one adjacency row.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitRow {
    words: Vec<u64>,
}

impl BitRow {
    pub fn new(len: usize) -> Self {
        BitRow {
            words: vec![0; len.div_ceil(64)],
        }
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        let fresh = !self.contains(i);
        self.words[i / 64] |= 1 << (i % 64);
        fresh
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + b)
            })
        })
    }
}

impl fmt::Debug for BitRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A digraph on the vertices `0..n` with a dense out-adjacency matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    out: Vec<BitRow>,
}

impl Digraph {
    /// The edgeless digraph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Digraph {
            n,
            out: (0..n).map(|_| BitRow::new(n)).collect(),
        }
    }

    /// Builds a digraph from directed edges, rejecting self-loops and repeats.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Digraph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a symmetric digraph from undirected edges. `{u,v}` listed twice
    /// (in either orientation) is a duplicate.
    pub fn from_undirected_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Digraph::empty(n);
        for &(u, v) in edges {
            g.add_undirected_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if !self.out[u].insert(v) {
            return Err(GraphError::DuplicateEdge(u, v));
        }
        Ok(())
    }

    pub fn add_undirected_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.has_edge(u, v) || self.has_edge(v, u) {
            return Err(GraphError::DuplicateEdge(u, v));
        }
        self.out[u].insert(v);
        self.out[v].insert(u);
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.out[u].contains(v)
    }

    /// Both `(u,v)` and `(v,u)` are present.
    #[inline]
    pub fn has_both(&self, u: usize, v: usize) -> bool {
        self.has_edge(u, v) && self.has_edge(v, u)
    }

    pub fn out_neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.out[u].iter()
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out[u].count()
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(BitRow::count).sum()
    }

    /// Directed edges in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| self.out[u].iter().map(move |v| (u, v)))
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|u| self.out[u].iter().all(|v| self.has_edge(v, u)))
    }

    pub fn require_symmetric(&self) -> Result<(), GraphError> {
        if self.is_symmetric() {
            Ok(())
        } else {
            Err(GraphError::NotSymmetric)
        }
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet((0..self.n).collect())
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    fn check_set(&self, s: &VertexSet) -> Result<(), GraphError> {
        match s.0.last() {
            Some(&v) if v >= self.n => Err(GraphError::VertexOutOfRange { vertex: v, n: self.n }),
            _ => Ok(()),
        }
    }

    /// The sub-digraph induced by `s`. Vertex `i` of the result is `map[i]`
    /// in `self`; the map is the sorted member list of `s`.
    pub fn induced_subdigraph(&self, s: &VertexSet) -> Result<(Digraph, Vec<usize>), GraphError> {
        self.check_set(s)?;
        Ok((self.induced_unchecked(s.as_slice()), s.0.clone()))
    }

    /// `members` must be sorted, distinct and in range.
    pub(crate) fn induced_unchecked(&self, members: &[usize]) -> Digraph {
        let k = members.len();
        let mut h = Digraph::empty(k);
        for (i, &u) in members.iter().enumerate() {
            for (j, &v) in members.iter().enumerate() {
                if i != j && self.has_edge(u, v) {
                    h.out[i].insert(j);
                }
            }
        }
        h
    }

    /// Every two distinct members are joined in both directions.
    pub fn is_clique(&self, s: &VertexSet) -> Result<bool, GraphError> {
        self.check_set(s)?;
        Ok(self.is_clique_unchecked(s.as_slice()))
    }

    pub(crate) fn is_clique_unchecked(&self, members: &[usize]) -> bool {
        members.iter().enumerate().all(|(i, &u)| {
            members[i + 1..].iter().all(|&v| self.has_both(u, v))
        })
    }

    pub fn is_acyclic(&self, s: &VertexSet) -> Result<bool, GraphError> {
        match self.topological_order(s) {
            Ok(_) => Ok(true),
            Err(GraphError::Cyclic) => Ok(false),
            Err(e) => Err(e),
        }
    }

    /// Kahn's algorithm restricted to `s`; among available vertices the
    /// smallest id goes first, so the order is deterministic.
    pub fn topological_order(&self, s: &VertexSet) -> Result<Vec<usize>, GraphError> {
        self.check_set(s)?;
        let members = s.as_slice();
        let mut indeg = vec![0usize; members.len()];
        for (i, &u) in members.iter().enumerate() {
            for (j, &v) in members.iter().enumerate() {
                if i != j && self.has_edge(v, u) {
                    indeg[i] += 1;
                }
            }
        }
        let mut ready: BinaryHeap<Reverse<usize>> = indeg
            .iter()
            .enumerate()
            .filter(|(_, &d)| d == 0)
            .map(|(i, _)| Reverse(i))
            .collect();
        let mut order = Vec::with_capacity(members.len());
        while let Some(Reverse(i)) = ready.pop() {
            order.push(members[i]);
            for (j, &v) in members.iter().enumerate() {
                if j != i && self.has_edge(members[i], v) {
                    indeg[j] -= 1;
                    if indeg[j] == 0 {
                        ready.push(Reverse(j));
                    }
                }
            }
        }
        if order.len() == members.len() {
            Ok(order)
        } else {
            Err(GraphError::Cyclic)
        }
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Digraph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

/// A sorted, duplicate-free set of vertex ids.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    /// Sorts `members` and rejects duplicates.
    pub fn from_vec(mut members: Vec<usize>) -> Result<Self, GraphError> {
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateVertex(w[0]));
        }
        Ok(VertexSet(members))
    }

    /// Like [`VertexSet::from_vec`] but also checks every id is `< n`.
    pub fn for_graph(members: Vec<usize>, n: usize) -> Result<Self, GraphError> {
        let s = Self::from_vec(members)?;
        match s.0.last() {
            Some(&v) if v >= n => Err(GraphError::VertexOutOfRange { vertex: v, n }),
            _ => Ok(s),
        }
    }

    pub(crate) fn from_sorted_unchecked(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        VertexSet(members)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = &'a usize;
    type IntoIter = std::slice::Iter<'a, usize>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// An ordered list of disjoint vertex sets whose union is `0..n`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CliqueCover {
    n: usize,
    cliques: Vec<VertexSet>,
}

impl CliqueCover {
    /// Checks disjointness and exhaustiveness over `0..n`. Whether each set
    /// is a clique depends on a graph; see [`CliqueCover::check_cliques`].
    pub fn new(n: usize, cliques: Vec<VertexSet>) -> Result<Self, GraphError> {
        let mut seen = vec![false; n];
        for c in &cliques {
            if c.is_empty() {
                return Err(GraphError::InvalidCover("empty set in cover".into()));
            }
            for v in c.iter() {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(GraphError::InvalidCover(format!("vertex {v} covered twice")));
                }
            }
        }
        if let Some(v) = seen.iter().position(|&b| !b) {
            return Err(GraphError::InvalidCover(format!("vertex {v} not covered")));
        }
        Ok(CliqueCover { n, cliques })
    }

    pub fn check_cliques(&self, g: &Digraph) -> Result<(), GraphError> {
        if g.n() != self.n {
            return Err(GraphError::InvalidCover(format!(
                "cover is over {} vertices, digraph has {}",
                self.n,
                g.n()
            )));
        }
        match self.cliques.iter().find(|c| !g.is_clique_unchecked(c.as_slice())) {
            Some(c) => Err(GraphError::InvalidCover(format!("{c:?} is not a clique"))),
            None => Ok(()),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    pub fn cliques(&self) -> &[VertexSet] {
        &self.cliques
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> VertexSet {
        VertexSet::from_vec(v.to_vec()).unwrap()
    }

    fn cycle3() -> Digraph {
        Digraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn triangle() -> Digraph {
        Digraph::from_undirected_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn induced_keeps_only_inner_edges() {
        let (h, map) = cycle3().induced_subdigraph(&set(&[0, 2])).unwrap();
        assert_eq!(map, vec![0, 2]);
        assert_eq!(h.edges(), vec![(1, 0)]);

        let g = cycle3();
        assert_eq!(g.induced_subdigraph(&g.all_vertices()).unwrap().0, g);

        let (h, _) = triangle().induced_subdigraph(&set(&[1, 2])).unwrap();
        assert_eq!(h.edges(), vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn out_of_range_set_rejected() {
        let err = cycle3().is_clique(&set(&[0, 3])).unwrap_err();
        assert_eq!(err, GraphError::VertexOutOfRange { vertex: 3, n: 3 });
        assert!(cycle3().induced_subdigraph(&set(&[5])).is_err());
        assert!(cycle3().topological_order(&set(&[7])).is_err());
    }

    #[test]
    fn clique_predicate() {
        assert!(triangle().is_clique(&set(&[0, 1, 2])).unwrap());
        assert!(!cycle3().is_clique(&set(&[0, 1])).unwrap());
        assert!(cycle3().is_clique(&set(&[1])).unwrap());
        assert!(cycle3().is_clique(&VertexSet::new()).unwrap());
    }

    #[test]
    fn acyclicity_and_order() {
        let g = cycle3();
        assert!(!g.is_acyclic(&g.all_vertices()).unwrap());
        assert_eq!(g.topological_order(&g.all_vertices()), Err(GraphError::Cyclic));
        assert_eq!(g.topological_order(&set(&[0, 1])).unwrap(), vec![0, 1]);
        assert_eq!(g.topological_order(&set(&[0, 2])).unwrap(), vec![2, 0]);

        let pair = Digraph::from_undirected_edges(2, &[(0, 1)]).unwrap();
        assert!(!pair.is_acyclic(&pair.all_vertices()).unwrap());
    }

    #[test]
    fn constructor_errors() {
        assert_eq!(Digraph::from_edges(2, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(
            Digraph::from_edges(2, &[(0, 1), (0, 1)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Digraph::from_undirected_edges(2, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(1, 0))
        );
        assert!(Digraph::from_edges(2, &[(0, 2)]).is_err());
        assert_eq!(VertexSet::from_vec(vec![2, 1, 2]), Err(GraphError::DuplicateVertex(2)));
    }

    #[test]
    fn symmetric_check() {
        assert!(triangle().is_symmetric());
        assert!(!cycle3().is_symmetric());
        assert!(Digraph::empty(0).is_symmetric());
    }

    #[test]
    fn cover_invariants() {
        let g = triangle();
        let c = CliqueCover::new(3, vec![set(&[0, 1]), set(&[2])]).unwrap();
        c.check_cliques(&g).unwrap();
        assert!(c.check_cliques(&cycle3()).is_err());
        assert!(CliqueCover::new(3, vec![set(&[0, 1]), set(&[1, 2])]).is_err());
        assert!(CliqueCover::new(3, vec![set(&[0, 1])]).is_err());
        assert!(CliqueCover::new(1, vec![set(&[0]), VertexSet::new()]).is_err());
    }

    #[test]
    fn bitrow_iterates_across_words() {
        let mut r = BitRow::new(130);
        for i in [0, 63, 64, 129] {
            r.insert(i);
        }
        assert_eq!(r.iter().collect::<Vec<_>>(), vec![0, 63, 64, 129]);
        assert_eq!(r.count(), 4);
    }
}
