//! Ramsey-type bound functions and the recursive clique / acyclic-set
//! extraction procedures.
//!
//! A [`QFunction`] upper-bounds the number of vertices that forces either a
//! clique of size `s` or an acyclic (independent, for graphs) set of size
//! `t`. From it we derive `f_Q(n) = min { s·t : Q(s+1, t+1) > n }`, which
//! lower-bounds `|C|·|I|` for the pair returned by the matching extraction
//! procedure on an `n`-vertex input.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::graph::{Digraph, GraphError, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RamseyError {
    #[error("Q(s,t) is defined for s,t >= 1, got ({0}, {1})")]
    InvalidArgument(u64, u64),
    #[error("polynomial Q needs c > 0, a >= 1 and c·2^a >= 1 (got c = {c}, a = {a})")]
    InvalidPolynomial { c: String, a: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// `Q(s,t) = ⌈c·(s·t)^a⌉` with rational `c` and `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialQ {
    c: BigRational,
    a: BigRational,
}

impl PolynomialQ {
    pub fn c(&self) -> &BigRational {
        &self.c
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    /// Smallest integer `k >= 0` with `k >= c·x^a`, i.e. with
    /// `k^q · cd^q >= cn^q · x^p` where `a = p/q` and `c = cn/cd`.
    fn eval(&self, x: &BigUint) -> BigUint {
        let (p, q) = rational_parts_u32(&self.a);
        let cn = self.c.numer().magnitude();
        let cd = self.c.denom().magnitude();
        let target = cn.pow(q) * x.pow(p);
        let scale = cd.pow(q);
        let needed = ceil_div(&target, &scale);
        ceil_root(&needed, q)
    }
}

fn rational_parts_u32(r: &BigRational) -> (u32, u32) {
    let p = r.numer().to_u32().expect("exponent numerator fits u32");
    let q = r.denom().to_u32().expect("exponent denominator fits u32");
    (p, q)
}

fn ceil_div(a: &BigUint, b: &BigUint) -> BigUint {
    let (quot, rem) = num_integer::Integer::div_rem(a, b);
    if rem.is_zero() {
        quot
    } else {
        quot + 1u32
    }
}

/// Smallest `k` with `k^q >= x`.
fn ceil_root(x: &BigUint, q: u32) -> BigUint {
    let r = x.nth_root(q);
    if &r.pow(q) < x {
        r + 1u32
    } else {
        r
    }
}

/// A bound `Q(s,t)` on the Ramsey numbers of some hereditary family.
///
/// All kinds are monotone non-decreasing in each argument and satisfy
/// `Q(s+1, 2) >= s+1` and `Q(2, t+1) >= t+1`, so the minimisation in
/// [`f_q`] never needs `s` or `t` beyond `max(n, 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QFunction {
    /// `C(s+t-2, s-1) · 2^(t-1)`, valid for all digraphs.
    Directed,
    /// `C(s+t-2, s-1)`, valid for all graphs.
    Undirected,
    Polynomial(PolynomialQ),
}

impl QFunction {
    /// Requires `c > 0`, `a >= 1`, and `c·2^a >= 1`. The last condition is
    /// what makes `Q(s+1, 2) >= s+1` hold; every genuine Ramsey bound has it
    /// since `R(s, 2) = s`.
    pub fn polynomial(c: BigRational, a: BigRational) -> Result<Self, RamseyError> {
        let bad = || RamseyError::InvalidPolynomial {
            c: c.to_string(),
            a: a.to_string(),
        };
        if !c.is_positive() || a < BigRational::one() {
            return Err(bad());
        }
        if a.numer().to_u32().is_none() || a.denom().to_u32().is_none() {
            return Err(bad());
        }
        let (p, q) = rational_parts_u32(&a);
        // c^q · 2^p >= 1  <=>  cn^q · 2^p >= cd^q
        let lhs = c.numer().magnitude().pow(q) << p as usize;
        if lhs < c.denom().magnitude().pow(q) {
            return Err(bad());
        }
        Ok(QFunction::Polynomial(PolynomialQ { c, a }))
    }

    pub fn eval(&self, s: u64, t: u64) -> Result<BigUint, RamseyError> {
        if s < 1 || t < 1 {
            return Err(RamseyError::InvalidArgument(s, t));
        }
        Ok(match self {
            QFunction::Directed => binomial(s + t - 2, s - 1) << (t - 1) as usize,
            QFunction::Undirected => binomial(s + t - 2, s - 1),
            QFunction::Polynomial(pq) => pq.eval(&(BigUint::from(s) * t)),
        })
    }

    fn eval_saturating(&self, s: u64, t: u64) -> u64 {
        self.eval(s, t)
            .expect("arguments are positive")
            .to_u64()
            .unwrap_or(u64::MAX)
    }

    pub fn name(&self) -> &'static str {
        match self {
            QFunction::Directed => "directed",
            QFunction::Undirected => "undirected",
            QFunction::Polynomial(_) => "polynomial",
        }
    }
}

/// `Q(s, t)`; see [`QFunction::eval`].
pub fn q_eval(q: &QFunction, s: u64, t: u64) -> Result<BigUint, RamseyError> {
    q.eval(s, t)
}

fn binomial(n: u64, k: u64) -> BigUint {
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// `f_Q(i)` for every `0 <= i <= n_max`.
///
/// Let `g(p)` be the largest `Q(s+1, t+1)` over `s·t <= p`. By monotonicity
/// of `Q`, `f_Q(n)` is the least `p` with `g(p) > n`, and `g(p)` only gains
/// the pairs with `s·t = p` exactly when moving from `p-1` to `p`.
#[derive(Debug, Clone)]
pub struct FqTable {
    values: Vec<u64>,
}

impl FqTable {
    pub fn build(q: &QFunction, n_max: u64) -> Self {
        let len = usize::try_from(n_max).expect("table size fits in memory") + 1;
        let mut values = Vec::with_capacity(len);
        let mut g = 0u64;
        let mut p = 0u64;
        for n in 0..=n_max {
            while g <= n {
                p += 1;
                let mut s = 1;
                while s * s <= p {
                    if p.is_multiple_of(s) {
                        let t = p / s;
                        g = g.max(q.eval_saturating(s + 1, t + 1));
                        g = g.max(q.eval_saturating(t + 1, s + 1));
                    }
                    s += 1;
                }
            }
            values.push(p);
        }
        FqTable { values }
    }

    pub fn get(&self, n: u64) -> u64 {
        self.values[n as usize]
    }

    pub fn n_max(&self) -> u64 {
        self.values.len() as u64 - 1
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Exact `Σ_{i=1..n} 1/f_Q(i)`.
    pub fn bound(&self, n: u64) -> BigRational {
        let mut sum = BigRational::zero();
        let mut i = 1;
        while i <= n {
            let v = self.get(i);
            let mut j = i;
            while j < n && self.get(j + 1) == v {
                j += 1;
            }
            sum += BigRational::new((j - i + 1).into(), v.into());
            i = j + 1;
        }
        sum
    }
}

/// `f_Q(n) = min { s·t : s,t >= 1, Q(s+1, t+1) > n }`.
pub fn f_q(q: &QFunction, n: u64) -> u64 {
    FqTable::build(q, n).get(n)
}

/// A clique together with a set inducing an acyclic sub-digraph (an
/// independent set, for graphs).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RamseyPair {
    pub clique: VertexSet,
    pub acyclic: VertexSet,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ExtractionStats {
    /// Invocations on a non-empty vertex set. Each picks a distinct pivot,
    /// so this never exceeds `n`.
    pub calls: usize,
}

type Partial = (Vec<usize>, Vec<usize>);

enum Task {
    Visit(Vec<usize>),
    Combine(usize),
}

/// Post-order evaluation of the pivot recursion with an explicit stack.
///
/// `classify(u, v)` sends `v` to one of `branches` sub-problems of pivot `u`;
/// `combine(u, results)` merges the sub-results listed in branch order.
fn run_extraction(
    vertices: Vec<usize>,
    branches: usize,
    classify: impl Fn(usize, usize) -> usize,
    combine: impl Fn(usize, Vec<Partial>) -> Partial,
) -> (RamseyPair, ExtractionStats) {
    let mut stats = ExtractionStats::default();
    let mut tasks = vec![Task::Visit(vertices)];
    let mut results: Vec<Partial> = Vec::new();
    while let Some(task) = tasks.pop() {
        match task {
            Task::Visit(vs) => {
                let Some((&u, rest)) = vs.split_first() else {
                    results.push((Vec::new(), Vec::new()));
                    continue;
                };
                stats.calls += 1;
                let mut parts = vec![Vec::new(); branches];
                for &v in rest {
                    parts[classify(u, v)].push(v);
                }
                tasks.push(Task::Combine(u));
                tasks.extend(parts.into_iter().rev().map(Task::Visit));
            }
            Task::Combine(u) => {
                let subs = results.split_off(results.len() - branches);
                results.push(combine(u, subs));
            }
        }
    }
    let (mut clique, mut acyclic) = results.pop().expect("root result");
    clique.sort_unstable();
    acyclic.sort_unstable();
    let pair = RamseyPair {
        clique: VertexSet::from_sorted_unchecked(clique),
        acyclic: VertexSet::from_sorted_unchecked(acyclic),
    };
    (pair, stats)
}

fn with(mut s: Vec<usize>, u: usize) -> Vec<usize> {
    s.push(u);
    s
}

/// First strictly largest candidate.
fn first_largest(candidates: impl IntoIterator<Item = Vec<usize>>) -> Vec<usize> {
    let mut best: Option<Vec<usize>> = None;
    for c in candidates {
        if best.as_ref().is_none_or(|b| c.len() > b.len()) {
            best = Some(c);
        }
    }
    best.unwrap_or_default()
}

/// Directed extraction: returns a clique `C` and a set `I` with `G[I]`
/// acyclic such that `Q_directed(|C|+1, |I|+1) > n`.
///
/// The pivot is always the smallest remaining vertex. Its other vertices
/// split into those joined to it both ways, those with only an edge into
/// the pivot, and the rest; ties between candidate sets go to the earliest
/// listed.
pub fn dramsey(g: &Digraph) -> RamseyPair {
    dramsey_traced(g).0
}

pub fn dramsey_traced(g: &Digraph) -> (RamseyPair, ExtractionStats) {
    run_extraction(
        (0..g.n()).collect(),
        3,
        |u, v| match (g.has_edge(u, v), g.has_edge(v, u)) {
            (true, true) => 0,
            (false, true) => 1,
            _ => 2,
        },
        |u, subs| {
            let [(c1, i1), (c2, i2), (c3, i3)]: [Partial; 3] =
                subs.try_into().expect("three branches");
            (
                first_largest([with(c1, u), c2, c3]),
                first_largest([i1, with(i2, u), with(i3, u)]),
            )
        },
    )
}

/// Undirected extraction on a symmetric digraph: a clique `C` and an
/// independent set `I` with `Q_undirected(|C|+1, |I|+1) > n`.
pub fn ramsey_undirected(g: &Digraph) -> Result<RamseyPair, RamseyError> {
    Ok(ramsey_undirected_traced(g)?.0)
}

pub fn ramsey_undirected_traced(g: &Digraph) -> Result<(RamseyPair, ExtractionStats), RamseyError> {
    g.require_symmetric()?;
    Ok(run_extraction(
        (0..g.n()).collect(),
        2,
        |u, v| if g.has_edge(u, v) { 0 } else { 1 },
        |u, subs| {
            let [(c1, i1), (c2, i2)]: [Partial; 2] = subs.try_into().expect("two branches");
            (first_largest([with(c1, u), c2]), first_largest([i1, with(i2, u)]))
        },
    ))
}
