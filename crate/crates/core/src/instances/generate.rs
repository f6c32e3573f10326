use thiserror::Error;

use super::rng::SplitMix64;
use crate::coding::{CodingError, GenInstance};
use crate::graph::{Digraph, GraphError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenerateError {
    #[error("edge probability must lie in [0, 1], got {0}")]
    InvalidProbability(f64),
    #[error("{0}")]
    InvalidSize(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Coding(#[from] CodingError),
}

fn check_p(p: f64) -> Result<(), GenerateError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(GenerateError::InvalidProbability(p))
    }
}

/// Each ordered pair `(u, v)`, `u != v`, visited in lexicographic order,
/// consumes one draw and becomes an edge with probability `p`.
pub fn gen_gnp_digraph(n: usize, p: f64, seed: u64) -> Result<Digraph, GenerateError> {
    check_p(p)?;
    let mut rng = SplitMix64::new(seed);
    let mut g = Digraph::empty(n);
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.bernoulli(p) {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

/// Each unordered pair `u < v`, in lexicographic order, consumes one draw.
pub fn gen_gnp_graph(n: usize, p: f64, seed: u64) -> Result<Digraph, GenerateError> {
    check_p(p)?;
    let mut rng = SplitMix64::new(seed);
    let mut g = Digraph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.bernoulli(p) {
                g.add_undirected_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

/// Each unordered pair `u < v` consumes one draw: `u → v` if it falls below
/// one half, `v → u` otherwise.
pub fn gen_tournament(n: usize, seed: u64) -> Digraph {
    let mut rng = SplitMix64::new(seed);
    let mut g = Digraph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            let (a, b) = if rng.bernoulli(0.5) { (u, v) } else { (v, u) };
            g.add_edge(a, b).expect("each pair oriented once");
        }
    }
    g
}

/// Random generalized instance with `n` symbols and `m >= n` receivers.
///
/// Receiver `j < n` requires symbol `j`; every later receiver draws its
/// symbol uniformly. Then, receiver by receiver, each other symbol in
/// increasing order joins the side information with probability `p`.
pub fn gen_genic(n: usize, m: usize, p: f64, seed: u64) -> Result<GenInstance, GenerateError> {
    check_p(p)?;
    if m < n {
        return Err(GenerateError::InvalidSize(format!("need m >= n, got n = {n}, m = {m}")));
    }
    if n == 0 && m > 0 {
        return Err(GenerateError::InvalidSize("receivers need at least one symbol".into()));
    }
    let mut rng = SplitMix64::new(seed);
    let mut req = Vec::with_capacity(m);
    let mut side = Vec::with_capacity(m);
    for j in 0..m {
        let r = if j < n { j } else { rng.below(n as u64) as usize };
        let s: Vec<usize> = (0..n).filter(|&i| i != r).filter(|_| rng.bernoulli(p)).collect();
        req.push(r);
        side.push(s);
    }
    Ok(GenInstance::new(n, req, side)?)
}

pub fn complete_graph(n: usize) -> Digraph {
    let mut g = Digraph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_undirected_edge(u, v).expect("fresh pair");
        }
    }
    g
}

/// Vertices are the edges `{u, v}` (`u < v`) of `g` in lexicographic order,
/// adjacent when they share an endpoint. The second component labels each
/// vertex with its edge.
pub fn line_graph(g: &Digraph) -> Result<(Digraph, Vec<(usize, usize)>), GraphError> {
    g.require_symmetric()?;
    let labels: Vec<(usize, usize)> = g.edges().into_iter().filter(|&(u, v)| u < v).collect();
    let mut h = Digraph::empty(labels.len());
    for (i, &(a, b)) in labels.iter().enumerate() {
        for (j, &(c, d)) in labels.iter().enumerate().skip(i + 1) {
            if a == c || a == d || b == c || b == d {
                h.add_undirected_edge(i, j).expect("fresh pair");
            }
        }
    }
    Ok((h, labels))
}

/// Complement of the Kneser graph K(n, 2), i.e. the line graph of `K_n`.
pub fn kneser_complement(n: usize) -> Result<Digraph, GenerateError> {
    if n < 2 {
        return Err(GenerateError::InvalidSize(format!("kneser_complement needs n >= 2, got {n}")));
    }
    Ok(line_graph(&complete_graph(n))?.0)
}
