//! Clique cover construction.
//!
//! [`iterative_cover`] is the generic engine: ask a finder for a clique of
//! the residual digraph, remove it, repeat. Plugging in the clique half of
//! [`dramsey`] or [`ramsey_undirected`] yields covers whose size is at most
//! `Σ_{i=1..n} 1/f_Q(i)` times the MAIS (independence number, for graphs).
//! [`cover_quasiline`] is a separate neighbourhood-based loop that stays
//! within twice the independence number on quasi-line graphs.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::graph::{CliqueCover, Digraph, GraphError, VertexSet};
use crate::ramsey::{dramsey, ramsey_undirected, FqTable, QFunction};

/// Evidence that some vertex neighbourhood does not split into two cliques.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuasiLineWitness {
    /// An odd cycle of non-adjacent pairs inside the neighbourhood.
    OddAntiCycle(Vec<usize>),
    /// Two non-adjacent vertices that landed in the same colour class.
    NonAdjacentPair(usize, usize),
}

impl fmt::Display for QuasiLineWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuasiLineWitness::OddAntiCycle(c) => {
                let vs: Vec<String> = c.iter().map(usize::to_string).collect();
                write!(f, "odd cycle of non-adjacent pairs {}", vs.join(" "))
            }
            QuasiLineWitness::NonAdjacentPair(a, b) => {
                write!(f, "non-adjacent pair {a} {b} in one colour class")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("not quasi-line: neighbourhood of vertex {vertex} contains an {witness}")]
    NotQuasiLine {
        vertex: usize,
        witness: QuasiLineWitness,
    },
    #[error("clique finder returned {0}")]
    FinderContract(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// One iteration of a cover loop, in the ids of the input digraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverStep {
    /// The vertex whose neighbourhood was covered (quasi-line loop only).
    pub pivot: Option<usize>,
    pub cliques: Vec<VertexSet>,
    /// Vertices left after this step.
    pub remaining: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverResult {
    pub cover: CliqueCover,
    /// Exact `Σ_{i=1..n} 1/f_Q(i)`; `None` for the quasi-line loop.
    pub bound: Option<BigRational>,
    pub trace: Vec<CoverStep>,
}

impl CoverResult {
    pub fn len(&self) -> usize {
        self.cover.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cover.is_empty()
    }

    /// Pivots chosen by the quasi-line loop, in order.
    pub fn pivots(&self) -> Vec<usize> {
        self.trace.iter().filter_map(|s| s.pivot).collect()
    }
}

/// Repeatedly extracts `finder(residual)` and removes it.
///
/// The finder sees the residual digraph relabelled to `0..k` in increasing
/// order of original id and must return a non-empty clique of it.
pub fn iterative_cover<F>(g: &Digraph, mut finder: F) -> Result<CoverResult, CoverError>
where
    F: FnMut(&Digraph) -> VertexSet,
{
    let mut remaining: Vec<usize> = (0..g.n()).collect();
    let mut cliques = Vec::new();
    let mut trace = Vec::new();
    while !remaining.is_empty() {
        let residual = g.induced_unchecked(&remaining);
        let found = finder(&residual);
        if found.is_empty() {
            return Err(CoverError::FinderContract("an empty set".into()));
        }
        if !residual.is_clique(&found)? {
            return Err(CoverError::FinderContract(format!("non-clique {found:?}")));
        }
        let clique = VertexSet::from_sorted_unchecked(found.iter().map(|i| remaining[i]).collect());
        remaining.retain(|v| !clique.contains(*v));
        trace.push(CoverStep {
            pivot: None,
            cliques: vec![clique.clone()],
            remaining: remaining.len(),
        });
        cliques.push(clique);
    }
    Ok(CoverResult {
        cover: CliqueCover::new(g.n(), cliques)?,
        bound: None,
        trace,
    })
}

/// Exact `Σ_{i=1..n} 1/f_Q(i)`.
pub fn cover_bound(q: &QFunction, n: u64) -> BigRational {
    FqTable::build(q, n).bound(n)
}

/// Clique cover of an arbitrary digraph of size at most
/// `cover_bound(Directed, n) · MAIS(g)`.
pub fn cover_digraph(g: &Digraph) -> CoverResult {
    let mut result =
        iterative_cover(g, |h| dramsey(h).clique).expect("directed extraction returns a clique");
    result.bound = Some(cover_bound(&QFunction::Directed, g.n() as u64));
    result
}

/// Clique cover of a graph of size at most `cover_bound(Undirected, n) · α(g)`.
pub fn cover_graph(g: &Digraph) -> Result<CoverResult, CoverError> {
    g.require_symmetric()?;
    let mut result = iterative_cover(g, |h| {
        ramsey_undirected(h)
            .expect("induced subgraph of a graph is symmetric")
            .clique
    })?;
    result.bound = Some(cover_bound(&QFunction::Undirected, g.n() as u64));
    Ok(result)
}

/// Splits `N(u)` into two cliques by 2-colouring the complement of `g[N(u)]`.
///
/// Components of the complement are coloured in order of their smallest
/// vertex, which receives colour 0.
pub fn neighborhood_two_cliques(
    g: &Digraph,
    u: usize,
) -> Result<(VertexSet, VertexSet), CoverError> {
    g.require_symmetric()?;
    if u >= g.n() {
        return Err(GraphError::VertexOutOfRange { vertex: u, n: g.n() }.into());
    }
    let nbrs: Vec<usize> = g.out_neighbors(u).collect();
    let k = nbrs.len();
    let anti = |i: usize, j: usize| i != j && !g.has_edge(nbrs[i], nbrs[j]);

    let mut colour: Vec<Option<u8>> = vec![None; k];
    let mut parent: Vec<usize> = (0..k).collect();
    let mut depth = vec![0usize; k];
    for root in 0..k {
        if colour[root].is_some() {
            continue;
        }
        colour[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            let ci = colour[i].expect("queued vertices are coloured");
            for j in 0..k {
                if !anti(i, j) {
                    continue;
                }
                match colour[j] {
                    None => {
                        colour[j] = Some(1 - ci);
                        parent[j] = i;
                        depth[j] = depth[i] + 1;
                        queue.push_back(j);
                    }
                    Some(cj) if cj == ci => {
                        let cycle = odd_cycle(&parent, &depth, i, j);
                        return Err(CoverError::NotQuasiLine {
                            vertex: u,
                            witness: QuasiLineWitness::OddAntiCycle(
                                cycle.into_iter().map(|x| nbrs[x]).collect(),
                            ),
                        });
                    }
                    Some(_) => {}
                }
            }
        }
    }

    let class = |c: u8| -> Vec<usize> {
        (0..k).filter(|&i| colour[i] == Some(c)).map(|i| nbrs[i]).collect()
    };
    let (first, second) = (class(0), class(1));
    for part in [&first, &second] {
        for (x, &a) in part.iter().enumerate() {
            if let Some(&b) = part[x + 1..].iter().find(|&&b| !g.has_edge(a, b)) {
                return Err(CoverError::NotQuasiLine {
                    vertex: u,
                    witness: QuasiLineWitness::NonAdjacentPair(a, b),
                });
            }
        }
    }
    Ok((
        VertexSet::from_sorted_unchecked(first),
        VertexSet::from_sorted_unchecked(second),
    ))
}

/// Closes the BFS-tree paths from `a` and `b` up to their common ancestor.
fn odd_cycle(parent: &[usize], depth: &[usize], a: usize, b: usize) -> Vec<usize> {
    let (mut x, mut y) = (a, b);
    let mut left = vec![x];
    let mut right = vec![y];
    while depth[x] > depth[y] {
        x = parent[x];
        left.push(x);
    }
    while depth[y] > depth[x] {
        y = parent[y];
        right.push(y);
    }
    while x != y {
        x = parent[x];
        y = parent[y];
        left.push(x);
        right.push(y);
    }
    right.pop();
    left.extend(right.into_iter().rev());
    left
}

/// At most two cliques per iteration, each iteration consuming the closed
/// neighbourhood of the smallest remaining vertex. The pivots are pairwise
/// non-adjacent, so the cover has at most `2·α(g)` cliques.
pub fn cover_quasiline(g: &Digraph) -> Result<CoverResult, CoverError> {
    g.require_symmetric()?;
    let mut remaining: Vec<usize> = (0..g.n()).collect();
    let mut cliques = Vec::new();
    let mut trace = Vec::new();
    while let Some(&pivot) = remaining.first() {
        let residual = g.induced_unchecked(&remaining);
        let to_orig = |s: &VertexSet| -> Vec<usize> { s.iter().map(|i| remaining[i]).collect() };
        let (k1, k2) = neighborhood_two_cliques(&residual, 0).map_err(|e| match e {
            CoverError::NotQuasiLine { witness, .. } => CoverError::NotQuasiLine {
                vertex: pivot,
                witness: match witness {
                    QuasiLineWitness::OddAntiCycle(c) => {
                        QuasiLineWitness::OddAntiCycle(c.into_iter().map(|i| remaining[i]).collect())
                    }
                    QuasiLineWitness::NonAdjacentPair(a, b) => {
                        QuasiLineWitness::NonAdjacentPair(remaining[a], remaining[b])
                    }
                },
            },
            other => other,
        })?;
        let mut first = to_orig(&k1);
        first.push(pivot);
        first.sort_unstable();
        let step: Vec<VertexSet> = [first, to_orig(&k2)]
            .into_iter()
            .filter(|c| !c.is_empty())
            .map(VertexSet::from_sorted_unchecked)
            .collect();
        remaining.retain(|v| !step.iter().any(|c| c.contains(*v)));
        trace.push(CoverStep {
            pivot: Some(pivot),
            cliques: step.clone(),
            remaining: remaining.len(),
        });
        cliques.extend(step);
    }
    Ok(CoverResult {
        cover: CliqueCover::new(g.n(), cliques)?,
        bound: None,
        trace,
    })
}

/// Decimal rendering rounded half away from zero.
pub fn format_decimal(x: &BigRational, places: u32) -> String {
    let scale = BigInt::from(10u32).pow(places);
    let scaled = x * BigRational::from_integer(scale.clone());
    let (q, r) = scaled.numer().div_rem(scaled.denom());
    let twice = r.abs() * 2u32;
    let mut units = q.abs();
    if twice >= *scaled.denom() {
        units += 1u32;
    }
    let (int, frac) = units.div_rem(&scale);
    let sign = if x.is_negative() && !units.is_zero() { "-" } else { "" };
    if places == 0 {
        return format!("{sign}{int}");
    }
    let frac: BigUint = frac.magnitude().clone();
    format!("{sign}{int}.{frac:0>width$}", width = places as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> VertexSet {
        VertexSet::from_vec(v.to_vec()).unwrap()
    }

    fn sets(c: &CliqueCover) -> Vec<Vec<usize>> {
        c.cliques().iter().map(|s| s.as_slice().to_vec()).collect()
    }

    fn c5() -> Digraph {
        Digraph::from_undirected_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap()
    }

    fn claw() -> Digraph {
        Digraph::from_undirected_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn iterative_cover_examples() {
        let r = iterative_cover(&Digraph::empty(0), |h| dramsey(h).clique).unwrap();
        assert!(r.is_empty());

        let tri = Digraph::from_undirected_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let r = iterative_cover(&tri, |h| dramsey(h).clique).unwrap();
        assert_eq!(sets(&r.cover), vec![vec![0, 1, 2]]);

        let c3 = Digraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let r = iterative_cover(&c3, |h| dramsey(h).clique).unwrap();
        assert_eq!(r.len(), 3);
        assert!(r.cover.cliques().iter().all(|c| c.len() == 1));
    }

    #[test]
    fn finder_contract_violations() {
        let c3 = Digraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(matches!(
            iterative_cover(&c3, |_| VertexSet::new()),
            Err(CoverError::FinderContract(_))
        ));
        assert!(matches!(
            iterative_cover(&c3, |h| h.all_vertices()),
            Err(CoverError::FinderContract(_))
        ));
    }

    #[test]
    fn trace_residual_strictly_decreases() {
        let g = Digraph::from_edges(6, &[(0, 1), (1, 0), (2, 3), (3, 2), (3, 4), (4, 5)]).unwrap();
        let r = cover_digraph(&g);
        let mut last = g.n();
        for step in &r.trace {
            assert!(step.remaining < last);
            last = step.remaining;
        }
        assert_eq!(last, 0);
        assert!(r.trace.len() <= g.n());
    }

    #[test]
    fn digraph_cover_examples() {
        let c3 = Digraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let r = cover_digraph(&c3);
        assert_eq!(r.len(), 3);
        assert_eq!(r.bound, Some(rat(3, 1)));

        let tri = Digraph::from_undirected_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let r = cover_digraph(&tri);
        assert_eq!(r.len(), 1);
    }

    #[test]
    fn graph_cover_examples() {
        let k5 = Digraph::from_undirected_edges(
            5,
            &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)],
        )
        .unwrap();
        assert_eq!(cover_graph(&k5).unwrap().len(), 1);

        assert_eq!(cover_graph(&Digraph::empty(6)).unwrap().len(), 6);

        let r = cover_graph(&c5()).unwrap();
        assert_eq!(r.bound, Some(rat(7, 3)));
        assert!(r.len() <= 4);
        r.cover.check_cliques(&c5()).unwrap();

        let c3 = Digraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(matches!(
            cover_graph(&c3),
            Err(CoverError::Graph(GraphError::NotSymmetric))
        ));
    }

    #[test]
    fn two_cliques_examples() {
        assert!(matches!(
            neighborhood_two_cliques(&claw(), 0),
            Err(CoverError::NotQuasiLine {
                vertex: 0,
                witness: QuasiLineWitness::OddAntiCycle(_)
            })
        ));
        assert_eq!(neighborhood_two_cliques(&c5(), 0).unwrap(), (set(&[1]), set(&[4])));
        let k4 = Digraph::from_undirected_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
            .unwrap();
        assert_eq!(
            neighborhood_two_cliques(&k4, 0).unwrap(),
            (set(&[1, 2, 3]), VertexSet::new())
        );
    }

    #[test]
    fn claw_witness_is_the_leaf_triangle() {
        let Err(CoverError::NotQuasiLine { witness, .. }) = neighborhood_two_cliques(&claw(), 0) else {
            panic!("claw accepted");
        };
        let QuasiLineWitness::OddAntiCycle(mut c) = witness else {
            panic!("expected odd cycle");
        };
        c.sort_unstable();
        assert_eq!(c, vec![1, 2, 3]);
    }

    #[test]
    fn odd_anticycle_of_length_five() {
        // neighbourhood of 0 is {1..5} inducing C5, whose complement is C5 too
        let mut edges: Vec<(usize, usize)> = (1..=5).map(|v| (0, v)).collect();
        edges.extend([(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]);
        let g = Digraph::from_undirected_edges(6, &edges).unwrap();
        let Err(CoverError::NotQuasiLine {
            witness: QuasiLineWitness::OddAntiCycle(c),
            ..
        }) = neighborhood_two_cliques(&g, 0)
        else {
            panic!("wheel accepted");
        };
        assert_eq!(c.len() % 2, 1);
        for i in 0..c.len() {
            let (a, b) = (c[i], c[(i + 1) % c.len()]);
            assert!(!g.has_edge(a, b), "{a} {b} adjacent in {c:?}");
        }
    }

    #[test]
    fn quasiline_examples() {
        let r = cover_quasiline(&c5()).unwrap();
        assert_eq!(sets(&r.cover), vec![vec![0, 1], vec![4], vec![2, 3]]);
        assert_eq!(r.pivots(), vec![0, 2]);
        assert!(r.bound.is_none());

        assert!(matches!(
            cover_quasiline(&claw()),
            Err(CoverError::NotQuasiLine { vertex: 0, .. })
        ));
    }

    #[test]
    fn quasiline_failure_maps_back_to_input_ids() {
        // isolated 0, then a claw centred at 1 on {1,2,3,4}
        let g = Digraph::from_undirected_edges(5, &[(1, 2), (1, 3), (1, 4)]).unwrap();
        let Err(CoverError::NotQuasiLine { vertex, witness }) = cover_quasiline(&g) else {
            panic!("claw accepted");
        };
        assert_eq!(vertex, 1);
        let QuasiLineWitness::OddAntiCycle(mut c) = witness else {
            panic!()
        };
        c.sort_unstable();
        assert_eq!(c, vec![2, 3, 4]);
    }

    #[test]
    fn bound_examples() {
        assert_eq!(cover_bound(&QFunction::Directed, 3), rat(3, 1));
        assert_eq!(cover_bound(&QFunction::Undirected, 0), rat(0, 1));
        assert_eq!(cover_bound(&QFunction::Directed, 0), rat(0, 1));
        assert_eq!(cover_bound(&QFunction::Directed, 12), rat(22, 3));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(format_decimal(&rat(22, 3), 6), "7.333333");
        assert_eq!(format_decimal(&rat(2, 3), 6), "0.666667");
        assert_eq!(format_decimal(&rat(3, 1), 6), "3.000000");
        assert_eq!(format_decimal(&rat(1, 8), 2), "0.13");
        assert_eq!(format_decimal(&rat(-1, 3), 3), "-0.333");
        assert_eq!(format_decimal(&rat(5, 2), 0), "3");
    }
}
