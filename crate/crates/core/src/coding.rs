//! XOR index codes built from clique covers, generalized index-coding
//! instances with `m >= n` receivers, expanding sequences, and the
//! round-based covering algorithm for generalized instances.

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::cover::{cover_bound, cover_digraph};
use crate::graph::{CliqueCover, Digraph, GraphError, VertexSet};
use crate::ramsey::QFunction;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodingError {
    #[error("instance has m = {m} receivers but n = {n} symbols (need m >= n)")]
    TooFewReceivers { n: usize, m: usize },
    #[error("receiver {receiver} refers to symbol {symbol}, but there are {n} symbols")]
    SymbolOutOfRange { receiver: usize, symbol: usize, n: usize },
    #[error("receiver {0} has its required symbol in its side information")]
    RequiredInSide(usize),
    #[error("receiver {receiver} lists side symbol {symbol} twice")]
    DuplicateSide { receiver: usize, symbol: usize },
    #[error("symbol {0} is not required by any receiver")]
    UnrequiredSymbol(usize),
    #[error("receiver {receiver} out of range (m = {m})")]
    ReceiverOutOfRange { receiver: usize, m: usize },
    #[error("xor set {0} is empty")]
    EmptyXorSet(usize),
    #[error("expected {expected} bits, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("receiver {0} has no usable xor set")]
    Undecodable(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A generalized index-coding instance: receiver `j` wants symbol `req[j]`
/// and already knows the symbols in `side[j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenInstance {
    n: usize,
    req: Vec<usize>,
    side: Vec<VertexSet>,
}

impl GenInstance {
    pub fn new(n: usize, req: Vec<usize>, side: Vec<Vec<usize>>) -> Result<Self, CodingError> {
        let m = req.len();
        assert_eq!(m, side.len(), "one side-information list per receiver");
        if m < n {
            return Err(CodingError::TooFewReceivers { n, m });
        }
        let mut required = vec![false; n];
        let mut sides = Vec::with_capacity(m);
        for (j, (&r, s)) in req.iter().zip(side).enumerate() {
            if r >= n {
                return Err(CodingError::SymbolOutOfRange { receiver: j, symbol: r, n });
            }
            required[r] = true;
            if let Some(&bad) = s.iter().find(|&&i| i >= n) {
                return Err(CodingError::SymbolOutOfRange { receiver: j, symbol: bad, n });
            }
            let s = VertexSet::from_vec(s).map_err(|e| match e {
                GraphError::DuplicateVertex(symbol) => CodingError::DuplicateSide { receiver: j, symbol },
                other => other.into(),
            })?;
            if s.contains(r) {
                return Err(CodingError::RequiredInSide(j));
            }
            sides.push(s);
        }
        if let Some(i) = required.iter().position(|&b| !b) {
            return Err(CodingError::UnrequiredSymbol(i));
        }
        Ok(GenInstance { n, req, side: sides })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.req.len()
    }

    pub fn required(&self, j: usize) -> usize {
        self.req[j]
    }

    pub fn side(&self, j: usize) -> &VertexSet {
        &self.side[j]
    }

    fn check_receiver(&self, j: usize) -> Result<(), CodingError> {
        if j < self.m() {
            Ok(())
        } else {
            Err(CodingError::ReceiverOutOfRange { receiver: j, m: self.m() })
        }
    }
}

/// Receiver `j` wants symbol `j` and knows the out-neighbours of `j`.
pub fn standard_instance(g: &Digraph) -> GenInstance {
    GenInstance {
        n: g.n(),
        req: (0..g.n()).collect(),
        side: (0..g.n())
            .map(|j| VertexSet::from_sorted_unchecked(g.out_neighbors(j).collect()))
            .collect(),
    }
}

/// A linear code over GF(2): one transmitted bit per xor set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexCode {
    n: usize,
    xor_sets: Vec<VertexSet>,
}

impl IndexCode {
    pub fn new(n: usize, xor_sets: Vec<VertexSet>) -> Result<Self, CodingError> {
        for (k, s) in xor_sets.iter().enumerate() {
            if s.is_empty() {
                return Err(CodingError::EmptyXorSet(k));
            }
            if let Some(&v) = s.as_slice().last().filter(|&&v| v >= n) {
                return Err(GraphError::VertexOutOfRange { vertex: v, n }.into());
            }
        }
        Ok(IndexCode { n, xor_sets })
    }

    /// Sends every symbol in the clear.
    pub fn trivial(n: usize) -> Self {
        IndexCode {
            n,
            xor_sets: (0..n).map(|i| VertexSet::from_sorted_unchecked(vec![i])).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.xor_sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xor_sets.is_empty()
    }

    pub fn xor_sets(&self) -> &[VertexSet] {
        &self.xor_sets
    }

    /// Drops repeated xor sets, keeping first occurrences.
    pub fn dedup(&self) -> Self {
        let mut seen = std::collections::HashSet::new();
        IndexCode {
            n: self.n,
            xor_sets: self
                .xor_sets
                .iter()
                .filter(|s| seen.insert((*s).clone()))
                .cloned()
                .collect(),
        }
    }
}

pub fn code_from_cover(cover: &CliqueCover) -> IndexCode {
    IndexCode {
        n: cover.n(),
        xor_sets: cover.cliques().to_vec(),
    }
}

pub fn encode(code: &IndexCode, x: &[bool]) -> Result<Vec<bool>, CodingError> {
    if x.len() != code.n {
        return Err(CodingError::LengthMismatch { expected: code.n, got: x.len() });
    }
    Ok(code
        .xor_sets
        .iter()
        .map(|s| s.iter().fold(false, |acc, i| acc ^ x[i]))
        .collect())
}

/// Index of the first xor set containing `r(j)` whose other members are all
/// side information of `j`.
fn covering_set(inst: &GenInstance, code: &IndexCode, j: usize) -> Option<usize> {
    let r = inst.req[j];
    let side = &inst.side[j];
    code.xor_sets
        .iter()
        .position(|s| s.contains(r) && s.iter().all(|i| i == r || side.contains(i)))
}

/// Recovers `x_{r(j)}` from the broadcast `y` and the side bits, given in
/// increasing symbol order of `N(j)`.
pub fn decode_receiver(
    inst: &GenInstance,
    code: &IndexCode,
    j: usize,
    y: &[bool],
    side_bits: &[bool],
) -> Result<bool, CodingError> {
    inst.check_receiver(j)?;
    if y.len() != code.len() {
        return Err(CodingError::LengthMismatch { expected: code.len(), got: y.len() });
    }
    let side = &inst.side[j];
    if side_bits.len() != side.len() {
        return Err(CodingError::LengthMismatch { expected: side.len(), got: side_bits.len() });
    }
    let k = covering_set(inst, code, j).ok_or(CodingError::Undecodable(j))?;
    let r = inst.req[j];
    let mut bit = y[k];
    for i in code.xor_sets[k].iter().filter(|&i| i != r) {
        let pos = side.as_slice().binary_search(&i).expect("covering set members are known");
        bit ^= side_bits[pos];
    }
    Ok(bit)
}

/// Per-receiver outcome of the structural check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub failing: Vec<usize>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failing.is_empty()
    }
}

/// Every receiver must have an xor set `C` with `r(j) ∈ C` and
/// `C \ {r(j)} ⊆ N(j)`.
pub fn validate_code(inst: &GenInstance, code: &IndexCode) -> ValidationReport {
    let failing = if code.n != inst.n {
        (0..inst.m()).collect()
    } else {
        (0..inst.m()).filter(|&j| covering_set(inst, code, j).is_none()).collect()
    };
    ValidationReport { failing }
}

/// Receivers whose required symbols are unknown to, and not already required
/// by, every earlier receiver in the sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpandingSequence(pub Vec<usize>);

pub fn is_expanding_sequence(inst: &GenInstance, seq: &[usize]) -> Result<bool, CodingError> {
    for &j in seq {
        inst.check_receiver(j)?;
    }
    let mut blocked = vec![false; inst.n];
    for &j in seq {
        if blocked[inst.req[j]] {
            return Ok(false);
        }
        blocked[inst.req[j]] = true;
        for i in inst.side[j].iter() {
            blocked[i] = true;
        }
    }
    Ok(true)
}

/// Orders the receivers of an acyclic set of the standard instance of `g`
/// by reverse topological order, which makes them an expanding sequence.
pub fn expanding_from_acyclic(g: &Digraph, s: &VertexSet) -> Result<ExpandingSequence, CodingError> {
    let mut order = g.topological_order(s)?;
    order.reverse();
    Ok(ExpandingSequence(order))
}

/// One round of [`genic_cover`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenicRound {
    /// Active symbols (= vertices of the round digraph), ascending.
    pub symbols: Vec<usize>,
    /// Receiver chosen for each active symbol, aligned with `symbols`.
    pub receivers: Vec<usize>,
    pub cliques: usize,
    /// `cover_bound(Directed, |symbols|)`.
    pub bound: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenicOutcome {
    pub code: IndexCode,
    pub rounds: Vec<GenicRound>,
    /// Symbols sent in the clear after the last round.
    pub tail: Vec<usize>,
}

impl GenicOutcome {
    /// `Σ_rounds cover_bound(Directed, |V_round|)`.
    pub fn round_bound_sum(&self) -> BigRational {
        self.rounds.iter().fold(BigRational::zero(), |acc, r| acc + &r.bound)
    }
}

/// Smallest `k` with `k² >= n`.
pub fn ceil_sqrt(n: usize) -> usize {
    let mut k = (n as f64).sqrt() as usize;
    while k * k > n {
        k -= 1;
    }
    while k * k < n {
        k += 1;
    }
    k
}

/// Covers a generalized instance round by round.
///
/// While at least `⌈√n⌉` symbols still have an unserved receiver, each
/// active symbol `i` picks its lowest-indexed unserved receiver `j_i`, the
/// digraph `i → N(j_i) ∩ active` is clique-covered, and the `j_i` are marked
/// served. Whatever is still active afterwards is sent in the clear.
pub fn genic_cover(inst: &GenInstance) -> GenicOutcome {
    let threshold = ceil_sqrt(inst.n);
    let mut pending: Vec<std::collections::VecDeque<usize>> = vec![Default::default(); inst.n];
    for (j, &r) in inst.req.iter().enumerate() {
        pending[r].push_back(j);
    }
    let mut xor_sets = Vec::new();
    let mut rounds = Vec::new();
    loop {
        let symbols: Vec<usize> = (0..inst.n).filter(|&i| !pending[i].is_empty()).collect();
        if symbols.is_empty() || symbols.len() < threshold {
            break;
        }
        let receivers: Vec<usize> = symbols.iter().map(|&i| pending[i][0]).collect();
        let mut index_of = vec![usize::MAX; inst.n];
        for (k, &i) in symbols.iter().enumerate() {
            index_of[i] = k;
        }
        let mut round = Digraph::empty(symbols.len());
        for (k, &j) in receivers.iter().enumerate() {
            for i in inst.side[j].iter() {
                if index_of[i] != usize::MAX {
                    round.add_edge(k, index_of[i]).expect("side info excludes the required symbol");
                }
            }
        }
        let cover = cover_digraph(&round);
        for c in cover.cover.cliques() {
            xor_sets.push(VertexSet::from_sorted_unchecked(c.iter().map(|k| symbols[k]).collect()));
        }
        for &i in &symbols {
            pending[i].pop_front();
        }
        rounds.push(GenicRound {
            bound: cover_bound(&QFunction::Directed, symbols.len() as u64),
            cliques: cover.len(),
            symbols,
            receivers,
        });
    }
    let tail: Vec<usize> = (0..inst.n).filter(|&i| !pending[i].is_empty()).collect();
    xor_sets.extend(tail.iter().map(|&i| VertexSet::from_sorted_unchecked(vec![i])));
    GenicOutcome {
        code: IndexCode { n: inst.n, xor_sets },
        rounds,
        tail,
    }
}
