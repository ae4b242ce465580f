//! Exact containment of spanning subgraphs and existence of
//! degree-constrained factors.
//!
//! `contains_spanning` answers "does G contain a copy of F on all n
//! vertices?" by backtracking over vertex assignments with bitset candidate
//! domains, most-constrained-first selection, and two propagation rules
//! (degree dominance and neighborhood intersection). The search is exact; a
//! node-expansion budget turns pathological instances into an explicit
//! `BudgetExhausted` error instead of a silent wrong answer.
//!
//! `has_factor` answers "does G have a spanning subgraph with every degree in
//! [a, b]?" by the classical reduction to a perfect matching in a gadget
//! graph: per-vertex absorber blocks sized to the degree slack, plus a shared
//! clique of slack vertices that soaks up the interval freedom, solved with
//! the blossom algorithm. Both checks come with deliberately naive
//! counterparts (`contains_spanning_bruteforce`, `has_factor_backtracking`)
//! that serve as oracles in the test suites.

use serde::{Deserialize, Serialize};

use crate::graph::low_mask;
use crate::matching::maximum_matching;
use crate::{Error, Graph, Result};

/// Default node-expansion budget for `contains_spanning`.
pub const DEFAULT_EXPANSION_BUDGET: u64 = 100_000_000;

// ===== witnesses =====

/// A spanning embedding of F into G: `mapping[u]` is the G-vertex hosting
/// F-vertex `u`. Always a permutation of `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingWitness {
    pub mapping: Vec<usize>,
}

impl EmbeddingWitness {
    /// Checks that the mapping is a bijection carrying every F-edge to a
    /// G-edge.
    pub fn verify(&self, g: &Graph, f: &Graph) -> bool {
        if g.n() != f.n() || self.mapping.len() != f.n() {
            return false;
        }
        let mut seen = vec![false; g.n()];
        for &v in &self.mapping {
            if v >= g.n() || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        f.edges()
            .all(|(u, v)| g.has_edge(self.mapping[u], self.mapping[v]))
    }
}

// ===== degree dominance =====

/// Necessary condition for spanning containment: the i-th largest degree of F
/// must not exceed the i-th largest degree of G. A `false` certifies that no
/// spanning copy of F exists in G.
pub fn sorted_degree_dominance(g: &Graph, f: &Graph) -> Result<bool> {
    if g.n() != f.n() {
        return Err(Error::OrderMismatch(g.n(), f.n()));
    }
    let mut gd = g.degrees();
    let mut fd = f.degrees();
    gd.sort_unstable_by(|a, b| b.cmp(a));
    fd.sort_unstable_by(|a, b| b.cmp(a));
    Ok(fd.iter().zip(&gd).all(|(df, dg)| df <= dg))
}

// ===== spanning containment =====

/// `contains_spanning` with the default expansion budget.
pub fn contains_spanning(g: &Graph, f: &Graph) -> Result<Option<EmbeddingWitness>> {
    contains_spanning_with_budget(g, f, DEFAULT_EXPANSION_BUDGET)
}

/// Searches for a spanning copy of F in G. Returns a verified witness, `None`
/// when no copy exists, or `Err(BudgetExhausted)` when the search tried more
/// than `budget` assignments without settling the question. Deterministic for
/// fixed inputs.
pub fn contains_spanning_with_budget(
    g: &Graph,
    f: &Graph,
    budget: u64,
) -> Result<Option<EmbeddingWitness>> {
    if g.n() != f.n() {
        return Err(Error::OrderMismatch(g.n(), f.n()));
    }
    if !sorted_degree_dominance(g, f)? {
        return Ok(None);
    }
    let n = g.n();
    let words = n.div_ceil(64);
    let gdeg = g.degrees();
    let fdeg = f.degrees();

    // domain[u] = candidate G-vertices for F-vertex u, filtered by degree.
    let mut domains = vec![0u64; n * words];
    for u in 0..n {
        for v in 0..n {
            if gdeg[v] >= fdeg[u] {
                domains[u * words + v / 64] |= 1u64 << (v % 64);
            }
        }
    }
    let mut search = SpanningSearch {
        g,
        f,
        n,
        words,
        domains,
        saved: Vec::new(),
        mapping: vec![usize::MAX; n],
        assigned: vec![false; n],
        expansions: 0,
        budget,
    };
    if !search.globally_consistent() {
        return Ok(None);
    }
    match search.descend(0)? {
        true => {
            let witness = EmbeddingWitness {
                mapping: search.mapping,
            };
            debug_assert!(witness.verify(g, f));
            Ok(Some(witness))
        }
        false => Ok(None),
    }
}

struct SpanningSearch<'a> {
    g: &'a Graph,
    f: &'a Graph,
    n: usize,
    words: usize,
    /// Flat n x words candidate bitsets, trimmed as the search assigns.
    domains: Vec<u64>,
    /// Snapshot stack for backtracking.
    saved: Vec<Vec<u64>>,
    mapping: Vec<usize>,
    assigned: Vec<bool>,
    expansions: u64,
    budget: u64,
}

impl SpanningSearch<'_> {
    #[inline(always)]
    fn domain(&self, u: usize) -> &[u64] {
        &self.domains[u * self.words..(u + 1) * self.words]
    }

    fn domain_size(&self, u: usize) -> usize {
        self.domain(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Every unused G-vertex must still be reachable from some unassigned
    /// domain, otherwise the partial assignment cannot extend to a bijection.
    fn globally_consistent(&self) -> bool {
        let mut cover = vec![0u64; self.words];
        for u in 0..self.n {
            if self.assigned[u] {
                continue;
            }
            for (i, &w) in self.domain(u).iter().enumerate() {
                cover[i] |= w;
            }
        }
        for (u, &gv) in self.mapping.iter().enumerate() {
            if self.assigned[u] {
                cover[gv / 64] |= 1u64 << (gv % 64);
            }
        }
        let mut full = vec![!0u64; self.words];
        let spill = self.words * 64 - self.n;
        if spill > 0 {
            full[self.words - 1] = low_mask(self.n - (self.words - 1) * 64);
        }
        cover == full
    }

    fn descend(&mut self, depth: usize) -> Result<bool> {
        if depth == self.n {
            return Ok(true);
        }
        // Most constrained first: smallest live domain, lowest index on ties.
        let mut pick = usize::MAX;
        let mut pick_size = usize::MAX;
        for u in 0..self.n {
            if !self.assigned[u] {
                let s = self.domain_size(u);
                if s < pick_size {
                    pick = u;
                    pick_size = s;
                }
            }
        }
        if pick_size == 0 {
            return Ok(false);
        }
        let u = pick;
        let candidates: Vec<usize> = (0..self.words)
            .flat_map(|i| {
                let base = i * 64;
                let mut w = self.domain(u)[i];
                std::iter::from_fn(move || {
                    if w == 0 {
                        return None;
                    }
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(base + b)
                })
            })
            .collect();
        for v in candidates {
            self.expansions += 1;
            if self.expansions > self.budget {
                return Err(Error::BudgetExhausted(self.expansions));
            }
            self.saved.push(self.domains.clone());
            self.assigned[u] = true;
            self.mapping[u] = v;
            if self.propagate(u, v) && self.globally_consistent() {
                if self.descend(depth + 1)? {
                    return Ok(true);
                }
            }
            self.domains = self.saved.pop().expect("snapshot pushed above");
            self.assigned[u] = false;
            self.mapping[u] = usize::MAX;
        }
        Ok(false)
    }

    /// Narrows the remaining domains after assigning F-vertex `u` to
    /// G-vertex `v`. Returns false when some domain became empty.
    fn propagate(&mut self, u: usize, v: usize) -> bool {
        let words = self.words;
        let vmask_word = v / 64;
        let vmask_bit = 1u64 << (v % 64);
        let f_row: Vec<u64> = self.f.row(u).to_vec();
        let g_row: Vec<u64> = self.g.row(v).to_vec();
        for w in 0..self.n {
            if self.assigned[w] {
                continue;
            }
            let dom = &mut self.domains[w * words..(w + 1) * words];
            // v is now taken.
            dom[vmask_word] &= !vmask_bit;
            // F-neighbors of u must land on G-neighbors of v.
            if f_row[w / 64] >> (w % 64) & 1 == 1 {
                for i in 0..words {
                    dom[i] &= g_row[i];
                }
            }
            if dom.iter().all(|&x| x == 0) {
                return false;
            }
        }
        true
    }
}

/// Exhaustive reference: tries every one of the n! bijections in
/// lexicographic order and checks all F-edges at each leaf. No pruning at
/// all, which is the point; capped at n <= 8.
pub fn contains_spanning_bruteforce(g: &Graph, f: &Graph) -> Result<Option<EmbeddingWitness>> {
    if g.n() != f.n() {
        return Err(Error::OrderMismatch(g.n(), f.n()));
    }
    if g.n() > 8 {
        return Err(Error::CapacityExceeded(format!(
            "brute-force containment is capped at 8 vertices, got {}",
            g.n()
        )));
    }
    let n = g.n();
    let mut mapping: Vec<usize> = (0..n).collect();
    loop {
        let witness = EmbeddingWitness {
            mapping: mapping.clone(),
        };
        if witness.verify(g, f) {
            return Ok(Some(witness));
        }
        if !next_permutation(&mut mapping) {
            return Ok(None);
        }
    }
}

/// Standard next-permutation step; returns false after the last one.
pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

// ===== degree-constrained factors =====

/// Degree interval for a factor: every vertex of the spanning subgraph must
/// have degree in `[a, b]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorQuery {
    pub a: usize,
    pub b: usize,
}

/// Whether G has a spanning subgraph with all degrees in `[a, b]`.
///
/// Reduction: each edge becomes a pair of end vertices joined by an edge
/// (matched pair = edge unused). Each vertex v gets an absorber block of
/// `deg(v) - a` vertices joined to its ends; ends matched into the block are
/// the edges v uses beyond... the edges v does *not* use, leaving exactly
/// `a + (block vertices matched elsewhere)` used edges. Interval slack comes
/// from `min(b, deg(v)) - a` per-vertex slack vertices joined to the block
/// and to each other across all vertices (one shared clique, padded to even
/// size), so any used-degree in `[a, min(b, deg v)]` is realizable. G has an
/// [a, b]-factor iff the gadget has a perfect matching.
pub fn has_factor(g: &Graph, query: FactorQuery) -> Result<bool> {
    let FactorQuery { a, b } = query;
    if b < a {
        return Err(Error::InvalidQuery { a, b });
    }
    if a == 0 {
        // The empty subgraph is a [0, b]-factor.
        return Ok(true);
    }
    let degs = g.degrees();
    if degs.iter().any(|&d| d < a) {
        return Ok(false);
    }

    let n = g.n();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let m = edges.len();
    let caps: Vec<usize> = degs.iter().map(|&d| d.min(b)).collect();

    // Gadget vertex layout: ends, then per-vertex absorber blocks, then the
    // shared slack clique (with parity pad).
    let mut absorber_start = vec![0usize; n + 1];
    let mut slack_start = vec![0usize; n + 1];
    let mut acc = 2 * m;
    for v in 0..n {
        absorber_start[v] = acc;
        acc += degs[v] - a;
    }
    absorber_start[n] = acc;
    for v in 0..n {
        slack_start[v] = acc;
        acc += caps[v] - a;
    }
    slack_start[n] = acc;
    let total_slack: usize = caps.iter().map(|&c| c - a).sum();
    let pad = caps.iter().sum::<usize>() % 2;
    let total = acc + pad;

    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); total];
    let add = |adj: &mut Vec<Vec<usize>>, x: usize, y: usize| {
        adj[x].push(y);
        adj[y].push(x);
    };
    // End pairs, and end-to-absorber joins.
    for (e, &(u, v)) in edges.iter().enumerate() {
        add(&mut adj, 2 * e, 2 * e + 1);
        for (end, vertex) in [(2 * e, u), (2 * e + 1, v)] {
            for bi in absorber_start[vertex]..absorber_start[vertex + 1] {
                add(&mut adj, end, bi);
            }
        }
    }
    // Absorber-to-slack joins.
    for v in 0..n {
        for bi in absorber_start[v]..absorber_start[v + 1] {
            for si in slack_start[v]..slack_start[v + 1] {
                add(&mut adj, bi, si);
            }
        }
    }
    // Slack clique across all vertices, including the pad.
    let slack_lo = slack_start[0];
    let clique_size = total_slack + pad;
    for i in 0..clique_size {
        for j in (i + 1)..clique_size {
            add(&mut adj, slack_lo + i, slack_lo + j);
        }
    }

    // The pad vertex makes the gadget order even by construction.
    debug_assert_eq!(total % 2, 0);
    let (size, _) = maximum_matching(total, &adj);
    Ok(2 * size == total)
}

/// Exhaustive reference for factor existence: decides each edge in or out,
/// pruning only on the degree window. Exponential in the edge count; intended
/// for small oracles.
pub fn has_factor_backtracking(g: &Graph, a: usize, b: usize) -> Result<bool> {
    if b < a {
        return Err(Error::InvalidQuery { a, b });
    }
    if a == 0 {
        return Ok(true);
    }
    let n = g.n();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut cur = vec![0usize; n];
    let mut remaining = g.degrees();
    if remaining.iter().any(|&d| d < a) {
        return Ok(false);
    }
    fn rec(
        edges: &[(usize, usize)],
        i: usize,
        cur: &mut [usize],
        remaining: &mut [usize],
        a: usize,
        b: usize,
    ) -> bool {
        if i == edges.len() {
            return cur.iter().all(|&d| d >= a && d <= b);
        }
        let (u, v) = edges[i];
        remaining[u] -= 1;
        remaining[v] -= 1;
        // Include the edge.
        if cur[u] < b && cur[v] < b {
            cur[u] += 1;
            cur[v] += 1;
            if rec(edges, i + 1, cur, remaining, a, b) {
                cur[u] -= 1;
                cur[v] -= 1;
                remaining[u] += 1;
                remaining[v] += 1;
                return true;
            }
            cur[u] -= 1;
            cur[v] -= 1;
        }
        // Exclude the edge.
        if cur[u] + remaining[u] >= a && cur[v] + remaining[v] >= a {
            if rec(edges, i + 1, cur, remaining, a, b) {
                remaining[u] += 1;
                remaining[v] += 1;
                return true;
            }
        }
        remaining[u] += 1;
        remaining[v] += 1;
        false
    }
    Ok(rec(&edges, 0, &mut cur, &mut remaining, a, b))
}

// ===== tests =====
