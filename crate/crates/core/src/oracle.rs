//! Brute-force ground truth for small instances.
//!
//! Nothing here calls into the cover, extraction or coding algorithms; the
//! oracles read adjacency and instance data directly and run their own
//! exhaustive searches over 64-bit vertex masks.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::coding::{GenInstance, IndexCode};
use crate::graph::Digraph;
use crate::ramsey::QFunction;

/// Width of the vertex masks used by the searches.
pub const HARD_MAX_N: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance size {n} exceeds the oracle budget of {max}")]
    TooLarge { n: usize, max: usize },
    #[error("oracle time limit of {0:?} exceeded")]
    TimeLimit(Duration),
    #[error("oracle requires a symmetric digraph")]
    NotSymmetric,
    #[error("code is over {code} symbols, instance has {instance}")]
    SymbolMismatch { code: usize, instance: usize },
}

/// Size and wall-clock caps for an oracle call.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_n: usize,
    pub time_limit: Option<Duration>,
}

impl OracleBudget {
    const DEFAULT_TIME: Duration = Duration::from_secs(600);

    const fn with_cap(max_n: usize) -> Self {
        OracleBudget {
            max_n,
            time_limit: Some(Self::DEFAULT_TIME),
        }
    }

    pub const fn mais() -> Self {
        Self::with_cap(24)
    }

    pub const fn alpha() -> Self {
        Self::with_cap(24)
    }

    pub const fn omega() -> Self {
        Self::with_cap(24)
    }

    pub const fn cc() -> Self {
        Self::with_cap(18)
    }

    pub const fn mes() -> Self {
        Self::with_cap(12)
    }

    pub const fn verify() -> Self {
        Self::with_cap(16)
    }

    pub fn with_max_n(mut self, max_n: usize) -> Self {
        self.max_n = max_n;
        self
    }

    pub fn with_time_limit(mut self, limit: Option<Duration>) -> Self {
        self.time_limit = limit;
        self
    }

    fn admit(&self, n: usize) -> Result<Clock, OracleError> {
        let max = self.max_n.min(HARD_MAX_N);
        if n > max {
            return Err(OracleError::TooLarge { n, max });
        }
        Ok(Clock {
            start: Instant::now(),
            limit: self.time_limit,
            ticks: 0,
        })
    }
}

struct Clock {
    start: Instant,
    limit: Option<Duration>,
    ticks: u32,
}

impl Clock {
    fn tick(&mut self) -> Result<(), OracleError> {
        self.ticks = self.ticks.wrapping_add(1);
        if self.ticks.is_multiple_of(4096) {
            if let Some(limit) = self.limit {
                if self.start.elapsed() > limit {
                    return Err(OracleError::TimeLimit(limit));
                }
            }
        }
        Ok(())
    }
}

fn bit(v: usize) -> u64 {
    1u64 << v
}

fn out_masks(g: &Digraph) -> Vec<u64> {
    (0..g.n())
        .map(|u| (0..g.n()).filter(|&v| g.has_edge(u, v)).fold(0, |m, v| m | bit(v)))
        .collect()
}

fn is_symmetric(out: &[u64]) -> bool {
    (0..out.len()).all(|u| (0..out.len()).all(|v| (out[u] >> v & 1) == (out[v] >> u & 1)))
}

/// Descending degree, then ascending id.
fn degree_order(adj: &[u64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..adj.len()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(adj[v].count_ones()), v));
    order
}

/// Maximum size of a vertex set inducing an acyclic sub-digraph.
pub fn brute_mais(g: &Digraph, budget: &OracleBudget) -> Result<usize, OracleError> {
    let mut clock = budget.admit(g.n())?;
    let n = g.n();
    let out = out_masks(g);
    let mut inc = vec![0u64; n];
    for (u, &row) in out.iter().enumerate() {
        for (v, slot) in inc.iter_mut().enumerate() {
            if row >> v & 1 == 1 {
                *slot |= bit(u);
            }
        }
    }
    let degree: Vec<u64> = (0..n).map(|v| out[v] | inc[v]).collect();
    let order = degree_order(&degree);

    // Adding v to an acyclic set S keeps it acyclic iff nothing in S that v
    // reaches (within S) has an edge back to v.
    let closes_cycle = |chosen: u64, v: usize| -> bool {
        let mut seen = out[v] & chosen;
        let mut frontier = seen;
        while frontier != 0 {
            let w = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let next = out[w] & chosen & !seen;
            seen |= next;
            frontier |= next;
        }
        seen & inc[v] != 0
    };

    struct Search<'a, F: Fn(u64, usize) -> bool> {
        order: &'a [usize],
        closes_cycle: F,
        best: usize,
    }
    fn go<F: Fn(u64, usize) -> bool>(
        s: &mut Search<'_, F>,
        clock: &mut Clock,
        idx: usize,
        chosen: u64,
        size: usize,
    ) -> Result<(), OracleError> {
        clock.tick()?;
        if size + (s.order.len() - idx) <= s.best {
            return Ok(());
        }
        if idx == s.order.len() {
            s.best = size;
            return Ok(());
        }
        let v = s.order[idx];
        if !(s.closes_cycle)(chosen, v) {
            go(s, clock, idx + 1, chosen | bit(v), size + 1)?;
        }
        go(s, clock, idx + 1, chosen, size)
    }

    let mut search = Search {
        order: &order,
        closes_cycle,
        best: 0,
    };
    go(&mut search, &mut clock, 0, 0, 0)?;
    Ok(search.best)
}

/// Maximum independent set size of the conflict relation `adj` (symmetric).
fn max_independent(adj: &[u64], clock: &mut Clock) -> Result<usize, OracleError> {
    let n = adj.len();
    let order = degree_order(adj);
    // relabel so that bit k is the k-th vertex in search order
    let mut pos = vec![0; n];
    for (k, &v) in order.iter().enumerate() {
        pos[v] = k;
    }
    let relabelled: Vec<u64> = order
        .iter()
        .map(|&v| (0..n).filter(|&w| adj[v] >> w & 1 == 1).fold(0, |m, w| m | bit(pos[w])))
        .collect();

    fn go(adj: &[u64], clock: &mut Clock, cand: u64, size: usize, best: &mut usize) -> Result<(), OracleError> {
        clock.tick()?;
        if cand == 0 {
            *best = (*best).max(size);
            return Ok(());
        }
        if size + cand.count_ones() as usize <= *best {
            return Ok(());
        }
        let v = cand.trailing_zeros() as usize;
        go(adj, clock, cand & !adj[v] & !bit(v), size + 1, best)?;
        go(adj, clock, cand & !bit(v), size, best)
    }

    let all = if n == 64 { u64::MAX } else { bit(n) - 1 };
    let mut best = 0;
    go(&relabelled, clock, all, 0, &mut best)?;
    Ok(best)
}

/// Independence number of a graph.
pub fn brute_alpha(g: &Digraph, budget: &OracleBudget) -> Result<usize, OracleError> {
    let mut clock = budget.admit(g.n())?;
    let out = out_masks(g);
    if !is_symmetric(&out) {
        return Err(OracleError::NotSymmetric);
    }
    max_independent(&out, &mut clock)
}

/// Largest set of vertices pairwise joined in both directions.
pub fn brute_omega(g: &Digraph, budget: &OracleBudget) -> Result<usize, OracleError> {
    let mut clock = budget.admit(g.n())?;
    let non_mutual = non_mutual_masks(g);
    max_independent(&non_mutual, &mut clock)
}

/// `u ~ v` iff `u != v` and the pair is not joined in both directions.
fn non_mutual_masks(g: &Digraph) -> Vec<u64> {
    let out = out_masks(g);
    let n = g.n();
    (0..n)
        .map(|u| {
            (0..n)
                .filter(|&v| v != u && !(out[u] >> v & 1 == 1 && out[v] >> u & 1 == 1))
                .fold(0, |m, v| m | bit(v))
        })
        .collect()
}

/// Minimum number of cliques partitioning the vertices, computed as the
/// chromatic number of the non-mutual relation by DSATUR branch and bound.
pub fn brute_cc(g: &Digraph, budget: &OracleBudget) -> Result<usize, OracleError> {
    let mut clock = budget.admit(g.n())?;
    let n = g.n();
    if n == 0 {
        return Ok(0);
    }
    let conflict = non_mutual_masks(g);
    let lower = max_independent(
        &(0..n)
            .map(|u| !conflict[u] & !bit(u) & if n == 64 { u64::MAX } else { bit(n) - 1 })
            .collect::<Vec<_>>(),
        &mut clock,
    )?;

    struct State<'a> {
        conflict: &'a [u64],
        colour: Vec<Option<usize>>,
        best: usize,
        lower: usize,
    }

    fn pick(st: &State<'_>) -> Option<usize> {
        let n = st.conflict.len();
        (0..n)
            .filter(|&v| st.colour[v].is_none())
            .max_by_key(|&v| {
                let mut seen = 0u64;
                let mut nb = st.conflict[v];
                while nb != 0 {
                    let w = nb.trailing_zeros() as usize;
                    nb &= nb - 1;
                    if let Some(c) = st.colour[w] {
                        seen |= bit(c);
                    }
                }
                (seen.count_ones(), st.conflict[v].count_ones(), std::cmp::Reverse(v))
            })
    }

    fn go(st: &mut State<'_>, clock: &mut Clock, used: usize) -> Result<(), OracleError> {
        clock.tick()?;
        if st.best == st.lower || used >= st.best {
            return Ok(());
        }
        let Some(v) = pick(st) else {
            st.best = used;
            return Ok(());
        };
        let top = (used + 1).min(st.best - 1);
        for c in 0..top {
            let mut nb = st.conflict[v];
            let mut clash = false;
            while nb != 0 {
                let w = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                if st.colour[w] == Some(c) {
                    clash = true;
                    break;
                }
            }
            if clash {
                continue;
            }
            st.colour[v] = Some(c);
            go(st, clock, used.max(c + 1))?;
            st.colour[v] = None;
            if st.best == st.lower {
                break;
            }
        }
        Ok(())
    }

    let mut st = State {
        conflict: &conflict,
        colour: vec![None; n],
        best: n + 1,
        lower,
    };
    go(&mut st, &mut clock, 0)?;
    Ok(st.best)
}

/// Longest receiver sequence in which no receiver's required symbol was
/// required by, or known to, an earlier receiver.
pub fn brute_mes(inst: &GenInstance, budget: &OracleBudget) -> Result<usize, OracleError> {
    let mut clock = budget.admit(inst.m())?;
    if inst.n() > HARD_MAX_N {
        return Err(OracleError::TooLarge { n: inst.n(), max: HARD_MAX_N });
    }
    let receivers: Vec<(usize, u64)> = (0..inst.m())
        .map(|j| (inst.required(j), inst.side(j).iter().fold(0, |m, i| m | bit(i))))
        .collect();

    fn go(
        receivers: &[(usize, u64)],
        blocked: u64,
        memo: &mut HashMap<u64, usize>,
        clock: &mut Clock,
    ) -> Result<usize, OracleError> {
        if let Some(&v) = memo.get(&blocked) {
            return Ok(v);
        }
        clock.tick()?;
        let mut best = 0;
        for &(r, side) in receivers {
            if blocked >> r & 1 == 0 {
                best = best.max(1 + go(receivers, blocked | bit(r) | side, memo, clock)?);
            }
        }
        memo.insert(blocked, best);
        Ok(best)
    }

    go(&receivers, 0, &mut HashMap::new(), &mut clock)
}

/// Receivers that cannot recover their symbol for some message.
///
/// For each receiver `j` a decoder exists iff no two messages agree on the
/// broadcast and on `x_{N(j)}` yet differ at `r(j)`. The broadcast is
/// GF(2)-linear, so it suffices to look for a message `z` with zero
/// broadcast, zero side bits and `z_{r(j)} = 1`. All `2^n` messages are
/// enumerated.
pub fn exhaustive_failures(inst: &GenInstance, code: &IndexCode, budget: &OracleBudget) -> Result<Vec<usize>, OracleError> {
    let mut clock = budget.admit(inst.n())?;
    if code.n() != inst.n() {
        return Err(OracleError::SymbolMismatch { code: code.n(), instance: inst.n() });
    }
    let rows: Vec<u64> = code.xor_sets().iter().map(|s| s.iter().fold(0, |m, i| m | bit(i))).collect();
    let receivers: Vec<(u64, u64)> = (0..inst.m())
        .map(|j| (bit(inst.required(j)), inst.side(j).iter().fold(0, |m, i| m | bit(i))))
        .collect();
    let mut failing = vec![false; inst.m()];
    for x in 0..(1u64 << inst.n()) {
        clock.tick()?;
        if rows.iter().any(|&r| (x & r).count_ones() % 2 == 1) {
            continue;
        }
        for (j, &(want, side)) in receivers.iter().enumerate() {
            if x & want != 0 && x & side == 0 {
                failing[j] = true;
            }
        }
    }
    Ok((0..inst.m()).filter(|&j| failing[j]).collect())
}

/// True iff every receiver decodes its symbol for all `2^n` messages.
pub fn exhaustive_verify(inst: &GenInstance, code: &IndexCode, budget: &OracleBudget) -> Result<bool, OracleError> {
    Ok(exhaustive_failures(inst, code, budget)?.is_empty())
}

/// Calls `visit(s, row)` for `s = 1..=rows` with `row[t] = min(Q(s, t), cap)`
/// for `1 <= t <= cols` (`row[0]` unused). Values come from the Pascal
/// recurrences for the general kinds and from bisection for the polynomial
/// kind, never from the closed forms.
fn for_each_q_row(q: &QFunction, rows: u64, cols: u64, cap: u64, mut visit: impl FnMut(usize, &[u64])) {
    let c = cols as usize;
    match q {
        QFunction::Directed | QFunction::Undirected => {
            let factor = if matches!(q, QFunction::Directed) { 2 } else { 1 };
            let mut prev = vec![0u64; c + 1];
            let mut row = vec![0u64; c + 1];
            for s in 1..=rows as usize {
                for t in 1..=c {
                    row[t] = if s == 1 {
                        // Q(1, t) = factor^(t-1)
                        if t == 1 { 1 } else { row[t - 1].saturating_mul(factor).min(cap) }
                    } else if t == 1 {
                        1
                    } else {
                        prev[t].saturating_add(row[t - 1].saturating_mul(factor)).min(cap)
                    };
                }
                visit(s, &row);
                std::mem::swap(&mut prev, &mut row);
            }
        }
        QFunction::Polynomial(pq) => {
            let a = pq.a();
            let p = a.numer().to_u32().expect("small exponent");
            let d = a.denom().to_u32().expect("small exponent");
            let cn = pq.c().numer().magnitude().pow(d);
            let cd = pq.c().denom().magnitude().pow(d);
            let mut row = vec![0u64; c + 1];
            for s in 1..=rows as usize {
                for (t, cell) in row.iter_mut().enumerate().skip(1) {
                    // least k in [0, cap] with k^d · cd >= cn · (s·t)^p
                    let rhs = &cn * BigUint::from(s as u64 * t as u64).pow(p);
                    let ok = |k: u64| BigUint::from(k).pow(d) * &cd >= rhs;
                    if !ok(cap) {
                        *cell = cap;
                        continue;
                    }
                    let (mut lo, mut hi) = (0u64, cap);
                    while lo < hi {
                        let mid = lo + (hi - lo) / 2;
                        if ok(mid) {
                            hi = mid;
                        } else {
                            lo = mid + 1;
                        }
                    }
                    *cell = lo;
                }
                visit(s, &row);
            }
        }
    }
}

/// `f_Q(n)` by a plain double loop over `1 <= s, t <= max(n, 1)`.
pub fn f_q_oracle(q: &QFunction, n: u64) -> u64 {
    f_q_oracle_table(q, n)[n as usize]
}

/// `f_Q(i)` for all `i <= n_max` from one pass over the `(s, t)` grid with
/// `1 <= s, t <= max(n_max, 1)`: each pair is a candidate for every
/// `i < Q(s+1, t+1)`.
pub fn f_q_oracle_table(q: &QFunction, n_max: u64) -> Vec<u64> {
    let bound = n_max.max(1);
    let cap = n_max + 1;
    // best[v] = min s·t over pairs with min(Q(s+1,t+1), cap) = v
    let mut best = vec![u64::MAX; cap as usize + 1];
    for_each_q_row(q, bound + 1, bound + 1, cap, |s1, row| {
        if s1 < 2 {
            return;
        }
        let s = (s1 - 1) as u64;
        for t in 1..=bound as usize {
            let v = row[t + 1] as usize;
            best[v] = best[v].min(s * t as u64);
        }
    });
    let mut out = vec![u64::MAX; n_max as usize + 1];
    let mut running = u64::MAX;
    for v in (1..=cap as usize).rev() {
        running = running.min(best[v]);
        if v - 1 <= n_max as usize {
            out[v - 1] = running;
        }
    }
    out
}
