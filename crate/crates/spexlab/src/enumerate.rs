//! Isomorph-free graph generation, canonical forms, and exhaustive extremal
//! search.
//!
//! Canonical labeling works by iterated color refinement plus backtracking:
//! refine to a stable partition, individualize one vertex from the first
//! non-singleton class (skipping choices certified equivalent by a
//! transposition automorphism), recurse, and keep the labeling whose packed
//! adjacency triangle is lexicographically smallest. Generation extends each
//! (n−1)-vertex representative by one vertex with every neighborhood subset
//! and keeps a child exactly when deleting the last vertex of its canonical
//! labeling lands back in the parent's class — each class on n vertices is
//! then produced from exactly one parent, and a per-parent dedup removes the
//! within-parent repeats. Search scores every F-free candidate under the
//! requested objective, keeps everything within a tie tolerance of the
//! maximum (so floating-point argmax cannot silently drop a co-extremal
//! graph), and independently re-verifies the winners on their canonical
//! relabelings.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use serde::{Deserialize, Serialize};

use crate::embed::{
    contains_spanning_with_budget, sorted_degree_dominance, DEFAULT_EXPANSION_BUDGET,
};
use crate::graph::{graph6_decode, graph6_encode, low_mask};
use crate::spectra::{dominant_eigenpair, MatrixKind};
use crate::{Error, FamilySpec, Graph, Result, MAX_CANONICAL_VERTICES};

/// Scores within this distance of the maximum count as co-extremal.
pub const TIE_TOLERANCE: f64 = 1e-9;

/// Exhaustive generation and full-mode search stop here: the class counts
/// beyond 10 vertices are out of desk reach.
pub const MAX_FULL_VERTICES: usize = 10;

// ===== canonical labeling =====

/// Packs the upper adjacency triangle, row-major with the most significant
/// bit first, into words. Lexicographic order on the result is the order the
/// canonical labeling minimizes.
fn pack_triangle(rows: &[u64]) -> Vec<u64> {
    let n = rows.len();
    let mut out = vec![0u64; (n * (n - 1) / 2).div_ceil(64)];
    let mut idx = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            if rows[i] >> j & 1 == 1 {
                out[idx / 64] |= 1u64 << (63 - idx % 64);
            }
            idx += 1;
        }
    }
    out
}

/// Relabels bitset rows: old vertex `v` becomes `perm[v]`.
fn apply_perm(rows: &[u64], perm: &[usize]) -> Vec<u64> {
    let n = rows.len();
    let mut out = vec![0u64; n];
    for (v, &row) in rows.iter().enumerate() {
        let mut w = row;
        let mut image = 0u64;
        while w != 0 {
            let u = w.trailing_zeros() as usize;
            w &= w - 1;
            image |= 1u64 << perm[u];
        }
        out[perm[v]] = image;
    }
    out
}

/// Refines a coloring to the coarsest stable partition below it: re-colors
/// every vertex by the rank of (current color, sorted neighbor colors) until
/// the class count stops growing. The output depends only on the isomorphism
/// type and the input partition, never on vertex labels.
fn refine(rows: &[u64], colors: &mut [u32]) {
    let n = rows.len();
    loop {
        let mut sigs: Vec<(u32, Vec<u32>)> = Vec::with_capacity(n);
        for v in 0..n {
            let mut nb: Vec<u32> = Vec::new();
            let mut w = rows[v];
            while w != 0 {
                let u = w.trailing_zeros() as usize;
                w &= w - 1;
                nb.push(colors[u]);
            }
            nb.sort_unstable();
            sigs.push((colors[v], nb));
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_unstable_by(|&a, &b| sigs[a].cmp(&sigs[b]));
        let old_classes = colors.iter().collect::<HashSet<_>>().len();
        let mut next = 0u32;
        let mut new_colors = vec![0u32; n];
        for (i, &v) in order.iter().enumerate() {
            if i > 0 && sigs[v] != sigs[order[i - 1]] {
                next += 1;
            }
            new_colors[v] = next;
        }
        let stable = next as usize + 1 == old_classes;
        colors.copy_from_slice(&new_colors);
        if stable {
            return;
        }
    }
}

struct Canonizer<'a> {
    rows: &'a [u64],
    n: usize,
    best_bits: Option<Vec<u64>>,
    best_perm: Vec<usize>,
}

impl Canonizer<'_> {
    fn search(&mut self, mut colors: Vec<u32>) {
        refine(self.rows, &mut colors);
        let mut counts = vec![0u32; self.n];
        for &c in &colors {
            counts[c as usize] += 1;
        }
        let Some(cell) = counts.iter().position(|&c| c >= 2) else {
            // Discrete partition: colors are exactly the ranks 0..n, i.e. a
            // labeling. Keep it if its triangle is the smallest so far.
            let perm: Vec<usize> = colors.iter().map(|&c| c as usize).collect();
            let bits = pack_triangle(&apply_perm(self.rows, &perm));
            if self.best_bits.as_ref().is_none_or(|b| bits < *b) {
                self.best_bits = Some(bits);
                self.best_perm = perm;
            }
            return;
        };
        let cell = cell as u32;
        let members: Vec<usize> = (0..self.n).filter(|&v| colors[v] == cell).collect();
        let mut tried: Vec<usize> = Vec::new();
        for &u in &members {
            // If swapping u with an already-tried classmate is an
            // automorphism, u's subtree yields the same leaves; skip it.
            if tried.iter().any(|&t| self.swap_is_automorphism(t, u)) {
                continue;
            }
            tried.push(u);
            // Individualize u: double all colors (preserving their order)
            // and push u's classmates one past it.
            let mut child: Vec<u32> = colors.iter().map(|&c| c * 2).collect();
            for &v in &members {
                if v != u {
                    child[v] += 1;
                }
            }
            self.search(child);
        }
    }

    fn swap_is_automorphism(&self, a: usize, b: usize) -> bool {
        let mask = !(1u64 << a | 1u64 << b);
        self.rows[a] & mask == self.rows[b] & mask
    }
}

/// Canonical packed triangle and a permutation (old → new) achieving it.
/// Ties between leaf labelings carry the same packed bits, hence the same
/// relabeled graph, so everything derived from the result is well defined.
fn canon_bits(rows: &[u64]) -> (Vec<u64>, Vec<usize>) {
    debug_assert!(!rows.is_empty() && rows.len() <= MAX_CANONICAL_VERTICES);
    let mut canonizer = Canonizer {
        rows,
        n: rows.len(),
        best_bits: None,
        best_perm: (0..rows.len()).collect(),
    };
    canonizer.search(vec![0u32; rows.len()]);
    (
        canonizer.best_bits.expect("every coloring reaches a leaf"),
        canonizer.best_perm,
    )
}

/// The canonical relabeling of `g` as a graph. Isomorphic inputs map to the
/// same output graph.
pub(crate) fn canonical_relabeling(g: &Graph) -> Result<Graph> {
    let rows = g.rows64()?;
    let (bits, perm) = canon_bits(&rows);
    let relabeled = apply_perm(&rows, &perm);
    debug_assert_eq!(pack_triangle(&relabeled), bits);
    Ok(Graph::from_rows64(&relabeled))
}

/// graph6 string of the canonical relabeling: equal for isomorphic inputs,
/// distinct for non-isomorphic ones. Capped at 64 vertices.
pub fn canonical_form(g: &Graph) -> Result<String> {
    Ok(graph6_encode(&canonical_relabeling(g)?))
}

// ===== isomorph-free generation =====

/// All `k`-bit masks with at most `max_bits` bits set, grouped by popcount
/// (Gosper's hack inside each group). Deterministic order.
fn masks_within(k: usize, max_bits: usize) -> impl Iterator<Item = u64> {
    debug_assert!(k < 64);
    let limit = (1u64 << k) - 1;
    (0..=max_bits.min(k)).flat_map(move |t| {
        let first = if t == 0 { 0 } else { (1u64 << t) - 1 };
        std::iter::successors(Some(first), move |&v| {
            if v == 0 {
                return None;
            }
            let low = v & v.wrapping_neg();
            let ripple = v + low;
            if ripple > limit {
                return None;
            }
            Some(ripple | ((v ^ ripple) / low) >> 2)
        })
    })
}

fn child_rows(parent: &[u64], mask: u64) -> Vec<u64> {
    let k = parent.len();
    let mut rows = Vec::with_capacity(k + 1);
    for (v, &row) in parent.iter().enumerate() {
        rows.push(row | (mask >> v & 1) << k);
    }
    rows.push(mask);
    rows
}

/// Expands one canonical parent on k vertices into the canonical rows of
/// every accepted child on k+1 vertices with at most `edge_budget` edges.
///
/// A child is accepted exactly when deleting the last vertex of its
/// canonical labeling recovers the parent's class. Acceptance depends only
/// on the child's isomorphism class, so a per-parent dedup on canonical bits
/// leaves one copy per class, and two distinct parents can never both accept
/// the same class (the canonical deletion names a unique parent class).
fn children_of(parent: &[u64], edge_budget: usize) -> Vec<Vec<u64>> {
    let k = parent.len();
    let parent_edges = parent
        .iter()
        .map(|r| r.count_ones() as usize)
        .sum::<usize>()
        / 2;
    let parent_bits = pack_triangle(parent);
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut out = Vec::new();
    for mask in masks_within(k, edge_budget.saturating_sub(parent_edges)) {
        let rows = child_rows(parent, mask);
        let (bits, perm) = canon_bits(&rows);
        if !seen.insert(bits) {
            continue;
        }
        let canonical = apply_perm(&rows, &perm);
        let deleted: Vec<u64> = canonical[..k].iter().map(|&r| r & low_mask(k)).collect();
        let (deleted_bits, _) = canon_bits(&deleted);
        if deleted_bits == parent_bits {
            out.push(canonical);
        }
    }
    out
}

#[cfg(feature = "parallel")]
fn expand_level(parents: &[Vec<u64>], edge_budget: usize) -> Vec<Vec<u64>> {
    parents
        .par_iter()
        .flat_map_iter(|p| children_of(p, edge_budget))
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn expand_level(parents: &[Vec<u64>], edge_budget: usize) -> Vec<Vec<u64>> {
    parents
        .iter()
        .flat_map(|p| children_of(p, edge_budget))
        .collect()
}

/// Canonical representatives of every class on `n` vertices with at most
/// `edge_budget` edges, built level by level.
fn representatives(n: usize, edge_budget: usize) -> Vec<Vec<u64>> {
    let mut level: Vec<Vec<u64>> = vec![vec![0u64]];
    for _ in 1..n {
        level = expand_level(&level, edge_budget);
    }
    level
}

/// Streams exactly one representative per isomorphism class of simple graphs
/// on `n` vertices, `1 <= n <= 10`. Levels through 9 are materialized up
/// front; the 10-vertex stream expands its 9-vertex parents one at a time to
/// keep memory flat across the twelve million classes.
pub fn generate_graphs(n: usize) -> Result<GraphStream> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "graph order must be at least 1".into(),
        ));
    }
    if n > MAX_FULL_VERTICES {
        return Err(Error::CapacityExceeded(format!(
            "exhaustive generation is capped at {MAX_FULL_VERTICES} vertices, got {n}"
        )));
    }
    let reps = representatives(n.min(9), usize::MAX);
    Ok(if n <= 9 {
        GraphStream {
            ready: reps.into_iter(),
            pending: Vec::new().into_iter(),
        }
    } else {
        GraphStream {
            ready: Vec::new().into_iter(),
            pending: reps.into_iter(),
        }
    })
}

/// Iterator over canonical representatives; see [`generate_graphs`].
pub struct GraphStream {
    ready: std::vec::IntoIter<Vec<u64>>,
    pending: std::vec::IntoIter<Vec<u64>>,
}

impl Iterator for GraphStream {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        loop {
            if let Some(rows) = self.ready.next() {
                return Some(Graph::from_rows64(&rows));
            }
            let parent = self.pending.next()?;
            self.ready = children_of(&parent, usize::MAX).into_iter();
        }
    }
}

// ===== extremal search =====

/// What the search maximizes over F-free graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Objective {
    /// Number of edges.
    #[serde(rename = "edges")]
    EdgeCount,
    /// Largest adjacency eigenvalue.
    #[serde(rename = "lambda")]
    AdjSpectralRadius,
    /// Largest signless-Laplacian eigenvalue.
    #[serde(rename = "q")]
    QSpectralRadius,
}

impl Objective {
    /// The objective value of one graph.
    pub fn score(self, g: &Graph) -> Result<f64> {
        Ok(match self {
            Objective::EdgeCount => g.edge_count() as f64,
            Objective::AdjSpectralRadius => dominant_eigenpair(g, MatrixKind::Adjacency)?.value,
            Objective::QSpectralRadius => {
                dominant_eigenpair(g, MatrixKind::SignlessLaplacian)?.value
            }
        })
    }

    fn token(self) -> &'static str {
        match self {
            Objective::EdgeCount => "edges",
            Objective::AdjSpectralRadius => "lambda",
            Objective::QSpectralRadius => "q",
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Objective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Objective> {
        match s {
            "edges" => Ok(Objective::EdgeCount),
            "lambda" => Ok(Objective::AdjSpectralRadius),
            "q" => Ok(Objective::QSpectralRadius),
            other => Err(Error::InvalidParameter(format!(
                "unknown objective {other:?}; expected edges, lambda, or q"
            ))),
        }
    }
}

/// Knobs for `search_extremal_with` and `search_stream`.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Scan complements of sparse graphs instead of all classes.
    pub dense_mode: bool,
    /// Dense mode's complement edge budget; `None` means `2n`.
    pub e_max: Option<usize>,
    /// `Some(1)` evaluates partitions on the calling thread (the sequential
    /// reference path); `Some(k)` uses a k-thread pool; `None` uses the
    /// global pool. Ignored by builds without the `parallel` feature, which
    /// always run sequentially.
    pub workers: Option<usize>,
    /// Scores within this distance of the maximum are co-extremal.
    pub tie_tolerance: f64,
    /// Node budget per containment test, as in `contains_spanning_with_budget`.
    pub embed_budget: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            dense_mode: false,
            e_max: None,
            workers: None,
            tie_tolerance: TIE_TOLERANCE,
            embed_budget: DEFAULT_EXPANSION_BUDGET,
        }
    }
}

/// Result of one extremal search: the best objective value over F-free
/// graphs, every witness attaining it within the tie tolerance (canonical
/// graph6, sorted), and how much work it took.
///
/// `graphs_examined` counts the candidate graphs considered;
/// `graphs_pruned` counts those whose containment test was settled by the
/// degree-dominance certificate alone (they are F-free and still scored —
/// only the expensive embedding search was skipped).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub n: usize,
    pub family: FamilySpec,
    pub objective: Objective,
    pub best_value: f64,
    pub witnesses: Vec<String>,
    pub graphs_examined: u64,
    pub graphs_pruned: u64,
    pub tie_tolerance: f64,
}

/// Per-partition accumulator. `merge` is commutative and associative, and a
/// graph within the tie tolerance of the global best is necessarily within
/// tolerance of its own partition's best, so the final witness set does not
/// depend on how candidates were partitioned across workers.
struct Local {
    best: f64,
    entries: Vec<(f64, String)>,
    examined: u64,
    pruned: u64,
}

impl Local {
    fn new() -> Local {
        Local {
            best: f64::NEG_INFINITY,
            entries: Vec::new(),
            examined: 0,
            pruned: 0,
        }
    }

    fn admit(&mut self, value: f64, witness: String, tol: f64) {
        if value > self.best {
            self.best = value;
            self.entries.retain(|(v, _)| *v >= self.best - tol);
        }
        if value >= self.best - tol {
            self.entries.push((value, witness));
        }
    }

    fn merge(mut self, other: Local, tol: f64) -> Local {
        self.best = self.best.max(other.best);
        self.examined += other.examined;
        self.pruned += other.pruned;
        self.entries.extend(other.entries);
        self.entries.retain(|(v, _)| *v >= self.best - tol);
        self
    }
}

/// Stable textual identifier for a graph: canonical graph6 while the order
/// permits canonicalization, plain graph6 (input labeling) beyond that.
pub(crate) fn graph_identifier(g: &Graph) -> Result<String> {
    if g.n() <= MAX_CANONICAL_VERTICES {
        canonical_form(g)
    } else {
        Ok(graph6_encode(g))
    }
}

/// Filters and scores one candidate into the accumulator.
fn evaluate_candidate(
    g: &Graph,
    f: &Graph,
    objective: Objective,
    embed_budget: u64,
    tol: f64,
    local: &mut Local,
) -> Result<()> {
    local.examined += 1;
    let f_free = if !sorted_degree_dominance(g, f)? {
        local.pruned += 1;
        true
    } else {
        contains_spanning_with_budget(g, f, embed_budget)?.is_none()
    };
    if !f_free {
        return Ok(());
    }
    let value = objective.score(g)?;
    if value >= local.best - tol {
        local.admit(value, graph_identifier(g)?, tol);
    }
    Ok(())
}

/// Searches for the F-free graphs on `n` vertices maximizing the objective,
/// with default settings. Full mode scans every isomorphism class (n ≤ 10);
/// dense mode scans every graph whose complement has at most `2n` edges
/// (n ≤ 64).
pub fn search_extremal(
    n: usize,
    family: &FamilySpec,
    objective: Objective,
    dense_mode: bool,
) -> Result<SearchOutcome> {
    search_extremal_with(
        n,
        family,
        objective,
        &SearchConfig {
            dense_mode,
            ..Default::default()
        },
    )
}

/// `search_extremal` with explicit settings.
pub fn search_extremal_with(
    n: usize,
    family: &FamilySpec,
    objective: Objective,
    config: &SearchConfig,
) -> Result<SearchOutcome> {
    let f = prepare(n, family, config)?;
    if config.dense_mode {
        if n > MAX_CANONICAL_VERTICES {
            return Err(Error::CapacityExceeded(format!(
                "dense-mode search is capped at {MAX_CANONICAL_VERTICES} vertices, got {n}"
            )));
        }
    } else if n > MAX_FULL_VERTICES {
        return Err(Error::CapacityExceeded(format!(
            "full-mode search is capped at {MAX_FULL_VERTICES} vertices, got {n}; \
             dense mode reaches {MAX_CANONICAL_VERTICES}"
        )));
    }
    let tol = config.tie_tolerance;
    let complement_budget = if config.dense_mode {
        config.e_max.unwrap_or(2 * n)
    } else {
        usize::MAX
    };

    let local = if n == 1 {
        let mut local = Local::new();
        evaluate_candidate(
            &Graph::empty(1)?,
            &f,
            objective,
            config.embed_budget,
            tol,
            &mut local,
        )?;
        Ok(local)
    } else {
        // Deterministic partitioning by (n−1)-vertex parent representative;
        // in dense mode the scanned graph is the complement of the class the
        // generator yields.
        let parents = representatives(n - 1, complement_budget);
        let job = |parent: &Vec<u64>| -> Result<Local> {
            let mut local = Local::new();
            for rows in children_of(parent, complement_budget) {
                let class = Graph::from_rows64(&rows);
                let candidate = if config.dense_mode {
                    class.complement()
                } else {
                    class
                };
                evaluate_candidate(
                    &candidate,
                    &f,
                    objective,
                    config.embed_budget,
                    tol,
                    &mut local,
                )?;
            }
            Ok(local)
        };
        fold_parents(&parents, &job, config.workers, tol)
    }?;

    finalize(n, family, objective, config, local, &f)
}

/// Scores an externally supplied stream of `n`-vertex graphs instead of the
/// internal generator. Runs on the calling thread in stream order; duplicate
/// classes are deduplicated at witness assembly.
pub fn search_stream<I>(
    n: usize,
    family: &FamilySpec,
    objective: Objective,
    graphs: I,
    config: &SearchConfig,
) -> Result<SearchOutcome>
where
    I: IntoIterator<Item = Graph>,
{
    let f = prepare(n, family, config)?;
    let mut local = Local::new();
    for g in graphs {
        if g.n() != n {
            return Err(Error::OrderMismatch(n, g.n()));
        }
        evaluate_candidate(
            &g,
            &f,
            objective,
            config.embed_budget,
            config.tie_tolerance,
            &mut local,
        )?;
    }
    finalize(n, family, objective, config, local, &f)
}

fn prepare(n: usize, family: &FamilySpec, config: &SearchConfig) -> Result<Graph> {
    if !(config.tie_tolerance.is_finite() && config.tie_tolerance >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tie tolerance must be finite and non-negative, got {}",
            config.tie_tolerance
        )));
    }
    if config.workers == Some(0) {
        return Err(Error::InvalidParameter(
            "worker count must be at least 1".into(),
        ));
    }
    let f = family.build()?;
    if f.n() != n {
        return Err(Error::OrderMismatch(n, f.n()));
    }
    Ok(f)
}

fn fold_parents(
    parents: &[Vec<u64>],
    job: &(dyn Fn(&Vec<u64>) -> Result<Local> + Sync),
    workers: Option<usize>,
    tol: f64,
) -> Result<Local> {
    fn sequential(
        parents: &[Vec<u64>],
        job: &(dyn Fn(&Vec<u64>) -> Result<Local> + Sync),
        tol: f64,
    ) -> Result<Local> {
        let mut acc = Local::new();
        for parent in parents {
            acc = acc.merge(job(parent)?, tol);
        }
        Ok(acc)
    }
    #[cfg(feature = "parallel")]
    fn parallel(
        parents: &[Vec<u64>],
        job: &(dyn Fn(&Vec<u64>) -> Result<Local> + Sync),
        tol: f64,
    ) -> Result<Local> {
        parents
            .par_iter()
            .map(job)
            .try_reduce(Local::new, |a, b| Ok(a.merge(b, tol)))
    }

    match workers {
        Some(1) => sequential(parents, job, tol),
        #[cfg(feature = "parallel")]
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| Error::Internal(format!("could not build worker pool: {e}")))?
            .install(|| parallel(parents, job, tol)),
        #[cfg(feature = "parallel")]
        None => parallel(parents, job, tol),
        #[cfg(not(feature = "parallel"))]
        _ => sequential(parents, job, tol),
    }
}

fn finalize(
    n: usize,
    family: &FamilySpec,
    objective: Objective,
    config: &SearchConfig,
    local: Local,
    f: &Graph,
) -> Result<SearchOutcome> {
    if local.entries.is_empty() {
        return Err(Error::Internal(
            "search found no feasible graph; the low-degree construction should always qualify"
                .into(),
        ));
    }
    let best = local.best;
    let tol = config.tie_tolerance;
    let witnesses: Vec<String> = local
        .entries
        .iter()
        .filter(|(v, _)| *v >= best - tol)
        .map(|(_, w)| w.clone())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    // Independent re-verification on the stored (canonical) labeling: decode,
    // re-test freeness, and re-score. The relabeled solve must agree with the
    // recorded score up to solver noise.
    for w in &witnesses {
        let wg = graph6_decode(w)?;
        if contains_spanning_with_budget(&wg, f, config.embed_budget)?.is_some() {
            return Err(Error::Internal(format!(
                "witness {w} failed re-verification: it contains the forbidden graph"
            )));
        }
        let rescore = objective.score(&wg)?;
        if rescore > best + 1e-8 || rescore < best - tol - 1e-8 {
            return Err(Error::Internal(format!(
                "witness {w} re-scored to {rescore}, outside the tie window around {best}"
            )));
        }
    }
    Ok(SearchOutcome {
        n,
        family: family.clone(),
        objective,
        best_value: best,
        witnesses,
        graphs_examined: local.examined,
        graphs_pruned: local.pruned,
        tie_tolerance: tol,
    })
}

// ===== tests =====

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(n: usize) -> usize {
        generate_graphs(n).unwrap().count()
    }

    #[test]
    fn class_counts_through_seven() {
        assert_eq!(counts(1), 1);
        assert_eq!(counts(2), 2);
        assert_eq!(counts(3), 4);
        assert_eq!(counts(4), 11);
        assert_eq!(counts(5), 34);
        assert_eq!(counts(6), 156);
        assert_eq!(counts(7), 1044);
    }

    #[test]
    fn generation_caps() {
        assert!(matches!(
            generate_graphs(11),
            Err(Error::CapacityExceeded(_))
        ));
        assert!(matches!(
            generate_graphs(0),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn canonical_form_is_permutation_invariant() {
        let c5 = FamilySpec::CyclePower { n: 5, k: 1 }.build().unwrap();
        let reference = canonical_form(&c5).unwrap();
        // All 120 relabelings of C_5 agree.
        let mut perm = vec![0, 1, 2, 3, 4];
        loop {
            let relabeled = c5.permuted(&perm).unwrap();
            assert_eq!(canonical_form(&relabeled).unwrap(), reference);
            if !crate::embed::next_permutation(&mut perm) {
                break;
            }
        }
    }

    #[test]
    fn canonical_form_separates_close_classes() {
        let k3k1 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let p3k1 = Graph::from_edges(4, &[(0, 1), (1, 2)]).unwrap();
        assert_ne!(
            canonical_form(&k3k1).unwrap(),
            canonical_form(&p3k1).unwrap()
        );
    }

    #[test]
    fn canonical_dedup_matches_labeled_enumeration_n5() {
        // All 2^10 labeled graphs on 5 vertices collapse to exactly the 34
        // classes the generator yields, with 34 distinct canonical strings.
        let mut labeled: HashSet<String> = HashSet::new();
        for code in 0u32..1 << 10 {
            let mut edges = Vec::new();
            let mut bit = 0;
            for i in 0..5 {
                for j in (i + 1)..5 {
                    if code >> bit & 1 == 1 {
                        edges.push((i, j));
                    }
                    bit += 1;
                }
            }
            let g = Graph::from_edges(5, &edges).unwrap();
            labeled.insert(canonical_form(&g).unwrap());
        }
        let generated: HashSet<String> = generate_graphs(5)
            .unwrap()
            .map(|g| canonical_form(&g).unwrap())
            .collect();
        assert_eq!(labeled.len(), 34);
        assert_eq!(generated, labeled);
    }

    #[test]
    fn generated_representatives_are_already_canonical() {
        for g in generate_graphs(6).unwrap() {
            assert_eq!(canonical_form(&g).unwrap(), graph6_encode(&g));
        }
    }

    #[test]
    fn highly_symmetric_graphs_canonicalize_quickly() {
        // Exercises the transposition-automorphism pruning; without it this
        // would branch into 40! leaves.
        let k40 = Graph::complete(40).unwrap();
        assert_eq!(canonical_form(&k40).unwrap(), graph6_encode(&k40));
        let t = FamilySpec::Turan { n: 30, r: 3 }.build().unwrap();
        let relabeled = t.permuted(&(0..30).rev().collect::<Vec<_>>()).unwrap();
        assert_eq!(
            canonical_form(&t).unwrap(),
            canonical_form(&relabeled).unwrap()
        );
    }

    #[test]
    fn canonical_cap_is_enforced() {
        let g = Graph::complete(65).unwrap();
        assert!(matches!(
            canonical_form(&g),
            Err(Error::CapacityExceeded(_))
        ));
    }

    #[test]
    fn join_is_associative_and_commutative_up_to_isomorphism() {
        let a = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let b = Graph::empty(3).unwrap();
        let c = FamilySpec::CyclePower { n: 4, k: 1 }.build().unwrap();
        let left = a.join(&b).unwrap().join(&c).unwrap();
        let right = a.join(&b.join(&c).unwrap()).unwrap();
        assert_eq!(
            canonical_form(&left).unwrap(),
            canonical_form(&right).unwrap()
        );
        let ab = a.join(&b).unwrap();
        let ba = b.join(&a).unwrap();
        assert_ne!(graph6_encode(&ab), graph6_encode(&ba));
        assert_eq!(canonical_form(&ab).unwrap(), canonical_form(&ba).unwrap());
    }

    #[test]
    fn hamilton_search_on_five_vertices() {
        let family = FamilySpec::CyclePower { n: 5, k: 1 };
        // Edge count: two co-extremal graphs at 7 edges — the low-degree
        // construction and K_2 joined to three isolated vertices.
        let outcome = search_extremal(5, &family, Objective::EdgeCount, false).unwrap();
        assert_eq!(outcome.best_value, 7.0);
        let h52 = canonical_form(&FamilySpec::ExtremalH { n: 5, k: 2 }.build().unwrap()).unwrap();
        let other = canonical_form(
            &Graph::complete(2)
                .unwrap()
                .join(&Graph::empty(3).unwrap())
                .unwrap(),
        )
        .unwrap();
        let mut expected = vec![h52.clone(), other];
        expected.sort();
        assert_eq!(outcome.witnesses, expected);
        assert_eq!(outcome.graphs_examined, 34);

        // The spectral objective separates the tie: only the low-degree
        // construction (which contains K_4) survives.
        let spectral = search_extremal(5, &family, Objective::AdjSpectralRadius, false).unwrap();
        assert_eq!(spectral.witnesses, vec![h52]);
        assert!(spectral.best_value > 3.0 && spectral.best_value < 4.0);
    }

    #[test]
    fn dense_mode_matches_full_mode_when_budget_covers_everything() {
        let family = FamilySpec::PerfectMatching { n: 6 };
        for objective in [Objective::EdgeCount, Objective::AdjSpectralRadius] {
            let full = search_extremal(6, &family, objective, false).unwrap();
            let dense = search_extremal_with(
                6,
                &family,
                objective,
                &SearchConfig {
                    dense_mode: true,
                    e_max: Some(15),
                    ..Default::default()
                },
            )
            .unwrap();
            assert_eq!(full.best_value, dense.best_value);
            assert_eq!(full.witnesses, dense.witnesses);
            assert_eq!(full.graphs_examined, dense.graphs_examined);
        }
    }

    #[test]
    fn dense_mode_with_small_budget_still_finds_near_complete_extrema() {
        // Complements of the extremal graphs here have at most n−2 edges, so
        // a budget of 2n comfortably contains them.
        let family = FamilySpec::CyclePower { n: 9, k: 1 };
        let outcome = search_extremal(9, &family, Objective::AdjSpectralRadius, true).unwrap();
        let h92 = canonical_form(&FamilySpec::ExtremalH { n: 9, k: 2 }.build().unwrap()).unwrap();
        assert_eq!(outcome.witnesses, vec![h92]);
    }

    #[test]
    fn worker_count_does_not_change_the_outcome() {
        let family = FamilySpec::CyclePower { n: 6, k: 1 };
        let mut outcomes = Vec::new();
        for workers in [Some(1), Some(4), None] {
            let config = SearchConfig {
                workers,
                ..Default::default()
            };
            outcomes.push(
                search_extremal_with(6, &family, Objective::AdjSpectralRadius, &config).unwrap(),
            );
        }
        assert_eq!(outcomes[0], outcomes[1]);
        assert_eq!(outcomes[0], outcomes[2]);
    }

    #[test]
    fn stream_search_matches_full_search() {
        let family = FamilySpec::CyclePower { n: 5, k: 1 };
        let config = SearchConfig::default();
        let streamed = search_stream(
            5,
            &family,
            Objective::EdgeCount,
            generate_graphs(5).unwrap(),
            &config,
        )
        .unwrap();
        let full = search_extremal(5, &family, Objective::EdgeCount, false).unwrap();
        assert_eq!(streamed, full);
    }

    #[test]
    fn stream_search_rejects_mis_sized_graphs() {
        let family = FamilySpec::CyclePower { n: 5, k: 1 };
        let result = search_stream(
            5,
            &family,
            Objective::EdgeCount,
            vec![Graph::complete(4).unwrap()],
            &SearchConfig::default(),
        );
        assert!(matches!(result, Err(Error::OrderMismatch(5, 4))));
    }

    #[test]
    fn search_input_validation() {
        let family = FamilySpec::CyclePower { n: 11, k: 1 };
        assert!(matches!(
            search_extremal(11, &family, Objective::EdgeCount, false),
            Err(Error::CapacityExceeded(_))
        ));
        assert!(matches!(
            search_extremal(
                6,
                &FamilySpec::ExtremalH { n: 7, k: 2 },
                Objective::EdgeCount,
                false
            ),
            Err(Error::OrderMismatch(6, 7))
        ));
        let bad_tol = SearchConfig {
            tie_tolerance: f64::NAN,
            ..Default::default()
        };
        assert!(matches!(
            search_extremal_with(
                5,
                &FamilySpec::CyclePower { n: 5, k: 1 },
                Objective::EdgeCount,
                &bad_tol
            ),
            Err(Error::InvalidParameter(_))
        ));
        let zero_workers = SearchConfig {
            workers: Some(0),
            ..Default::default()
        };
        assert!(matches!(
            search_extremal_with(
                5,
                &FamilySpec::CyclePower { n: 5, k: 1 },
                Objective::EdgeCount,
                &zero_workers
            ),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn objective_round_trip() {
        for (token, objective) in [
            ("edges", Objective::EdgeCount),
            ("lambda", Objective::AdjSpectralRadius),
            ("q", Objective::QSpectralRadius),
        ] {
            assert_eq!(token.parse::<Objective>().unwrap(), objective);
            assert_eq!(objective.to_string(), token);
            let json = serde_json::to_string(&objective).unwrap();
            assert_eq!(json, format!("\"{token}\""));
        }
        assert!("spectral".parse::<Objective>().is_err());
    }
}
