//! Immutable simple graphs on up to 512 vertices, stored as bitset adjacency
//! rows, plus the named constructions and the graph6 codec used everywhere
//! else in the crate.
//!
//! Representation: row `v` is `words_per_row` consecutive `u64` words in a
//! flat buffer; bit `u` of row `v` is set iff `u ~ v`. The diagonal is always
//! zero and rows are kept symmetric, so `degree` and `edge_count` are plain
//! popcounts. Graphs are immutable after construction: every operation
//! returns a new graph.

use std::fmt;
use std::io::BufRead;
use std::str::FromStr;

use crate::{Error, Result, MAX_CANONICAL_VERTICES, MAX_VERTICES};

// ===== core type =====

/// A simple undirected graph with vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words_per_row: usize,
    bits: Box<[u64]>,
    edge_count: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Graph(n={}, m={}, g6={})",
            self.n,
            self.edge_count,
            graph6_encode(self)
        )
    }
}

impl Graph {
    fn check_order(n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "graph order must be at least 1".into(),
            ));
        }
        if n > MAX_VERTICES {
            return Err(Error::CapacityExceeded(format!(
                "graph order {n} exceeds the {MAX_VERTICES}-vertex cap"
            )));
        }
        Ok(())
    }

    /// The edgeless graph on `n` vertices, `1 <= n <= 512`.
    pub fn empty(n: usize) -> Result<Graph> {
        Self::check_order(n)?;
        let words_per_row = n.div_ceil(64);
        Ok(Graph {
            n,
            words_per_row,
            bits: vec![0u64; n * words_per_row].into_boxed_slice(),
            edge_count: 0,
        })
    }

    /// The complete graph on `n` vertices.
    pub fn complete(n: usize) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for u in 0..n {
            for v in (u + 1)..n {
                g.set_edge(u, v);
            }
        }
        Ok(g)
    }

    /// Builds a graph from an explicit edge list. Rejects self-loops,
    /// out-of-range endpoints, and repeated edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at vertex {u}")));
            }
            if g.has_edge(u, v) {
                return Err(Error::InvalidParameter(format!(
                    "edge ({u}, {v}) listed twice"
                )));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    /// Internal mutation used by constructors only; `u != v` required.
    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        debug_assert!(!self.has_edge(u, v));
        let w = self.words_per_row;
        self.bits[u * w + v / 64] |= 1u64 << (v % 64);
        self.bits[v * w + u / 64] |= 1u64 << (u % 64);
        self.edge_count += 1;
    }

    /// Number of vertices.
    #[inline(always)]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    #[inline(always)]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Whether `u ~ v`. The diagonal is never set.
    #[inline(always)]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.n && v < self.n);
        self.bits[u * self.words_per_row + v / 64] >> (v % 64) & 1 == 1
    }

    /// Adjacency row of `v` as bit words (words beyond `n` bits are zero).
    #[inline(always)]
    pub fn row(&self, v: usize) -> &[u64] {
        debug_assert!(v < self.n);
        &self.bits[v * self.words_per_row..(v + 1) * self.words_per_row]
    }

    /// Degree of `v`.
    #[inline(always)]
    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// All degrees, indexed by vertex.
    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Iterator over the neighbors of `v` in increasing order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(wi, &word)| {
            let base = wi * 64;
            BitIter(word).map(move |b| base + b)
        })
    }

    /// Iterator over all edges `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Adjacency rows packed into single words; requires `n <= 64`.
    pub(crate) fn rows64(&self) -> Result<Vec<u64>> {
        if self.n > MAX_CANONICAL_VERTICES {
            return Err(Error::CapacityExceeded(format!(
                "operation requires at most {MAX_CANONICAL_VERTICES} vertices, got {}",
                self.n
            )));
        }
        Ok((0..self.n).map(|v| self.row(v)[0]).collect())
    }

    /// Rebuilds a graph on `n <= 64` vertices from single-word rows.
    pub(crate) fn from_rows64(rows: &[u64]) -> Graph {
        let n = rows.len();
        debug_assert!(0 < n && n <= 64);
        let mut g = Graph::empty(n).expect("row count within cap");
        for (v, &row) in rows.iter().enumerate() {
            debug_assert_eq!(row & !low_mask(n), 0, "row bits beyond n");
            debug_assert_eq!(row >> v & 1, 0, "diagonal bit set");
            for u in BitIter(row) {
                if u < v {
                    g.set_edge(u, v);
                }
            }
        }
        debug_assert!((0..n).all(|v| g.row(v)[0] == rows[v]), "rows not symmetric");
        g
    }

    // ===== derived graphs =====

    /// The complement graph.
    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n).expect("same order");
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.has_edge(u, v) {
                    g.set_edge(u, v);
                }
            }
        }
        g
    }

    /// Disjoint union; vertices of `other` are shifted up by `self.n`.
    pub fn union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        let mut g = Graph::empty(n)?;
        for (u, v) in self.edges() {
            g.set_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.set_edge(u + self.n, v + self.n);
        }
        Ok(g)
    }

    /// Join: disjoint union plus all edges between the two sides.
    pub fn join(&self, other: &Graph) -> Result<Graph> {
        let mut g = self.union(other)?;
        for u in 0..self.n {
            for v in 0..other.n {
                g.set_edge(u, self.n + v);
            }
        }
        Ok(g)
    }

    /// Relabels vertices: old vertex `i` becomes `perm[i]`. `perm` must be a
    /// permutation of `0..n`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: perm.len(),
            });
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || seen[p] {
                return Err(Error::InvalidParameter("not a permutation".into()));
            }
            seen[p] = true;
        }
        let mut g = Graph::empty(self.n).expect("same order");
        for (u, v) in self.edges() {
            g.set_edge(perm[u], perm[v]);
        }
        Ok(g)
    }

    /// The induced subgraph on all vertices except `v`, with labels above `v`
    /// shifted down by one.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph> {
        if v >= self.n {
            return Err(Error::InvalidParameter(format!("vertex {v} out of range")));
        }
        if self.n == 1 {
            return Err(Error::InvalidParameter(
                "cannot delete the only vertex".into(),
            ));
        }
        let map = |u: usize| if u > v { u - 1 } else { u };
        let mut g = Graph::empty(self.n - 1).expect("order shrinks");
        for (a, b) in self.edges() {
            if a != v && b != v {
                g.set_edge(map(a), map(b));
            }
        }
        Ok(g)
    }

    /// Copy with one extra edge; errors if it is already present.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        if u >= self.n || v >= self.n || u == v {
            return Err(Error::InvalidParameter(format!("invalid edge ({u}, {v})")));
        }
        if self.has_edge(u, v) {
            return Err(Error::InvalidParameter(format!(
                "edge ({u}, {v}) already present"
            )));
        }
        let mut g = self.clone();
        g.set_edge(u, v);
        Ok(g)
    }

    // ===== connectivity =====

    /// Connected components as sorted vertex lists, ordered by smallest
    /// member. Deterministic.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let w = self.words_per_row;
        let mut unvisited = vec![!0u64; w];
        // Clear bits at and beyond n.
        for (i, word) in unvisited.iter_mut().enumerate() {
            let lo = i * 64;
            if lo >= self.n {
                *word = 0;
            } else if lo + 64 > self.n {
                *word &= (1u64 << (self.n - lo)) - 1;
            }
        }
        let mut components = Vec::new();
        let mut frontier = vec![0u64; w];
        let mut comp = vec![0u64; w];
        while let Some(start) = first_bit(&unvisited) {
            comp.iter_mut().for_each(|x| *x = 0);
            frontier.iter_mut().for_each(|x| *x = 0);
            frontier[start / 64] |= 1u64 << (start % 64);
            loop {
                let mut progressed = false;
                for i in 0..w {
                    let new = frontier[i] & !comp[i];
                    if new != 0 {
                        progressed = true;
                        comp[i] |= new;
                    }
                }
                if !progressed {
                    break;
                }
                let mut next = vec![0u64; w];
                for v in bits_of(&comp) {
                    for (i, &word) in self.row(v).iter().enumerate() {
                        next[i] |= word;
                    }
                }
                frontier = next;
            }
            for i in 0..w {
                unvisited[i] &= !comp[i];
            }
            components.push(bits_of(&comp).collect());
        }
        components
    }

    /// Whether the graph has a single connected component.
    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }
}

/// Iterator over set bit positions of a single word, ascending.
struct BitIter(u64);

impl Iterator for BitIter {
    type Item = usize;
    #[inline(always)]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(b)
    }
}

fn first_bit(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .position(|&w| w != 0)
        .map(|i| i * 64 + words[i].trailing_zeros() as usize)
}

fn bits_of(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words
        .iter()
        .enumerate()
        .flat_map(|(i, &w)| BitIter(w).map(move |b| i * 64 + b))
}

#[inline(always)]
pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        !0
    } else {
        (1u64 << n) - 1
    }
}

// ===== degree summary =====

/// Degrees of a graph in non-increasing order, plus the extremes.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct DegreeSummary {
    pub sorted_degrees: Vec<usize>,
    pub min_degree: usize,
    pub max_degree: usize,
}

/// Sorted degree data for dominance checks and reports.
pub fn degree_summary(g: &Graph) -> DegreeSummary {
    let mut sorted_degrees = g.degrees();
    sorted_degrees.sort_unstable_by(|a, b| b.cmp(a));
    let max_degree = sorted_degrees.first().copied().unwrap_or(0);
    let min_degree = sorted_degrees.last().copied().unwrap_or(0);
    DegreeSummary {
        sorted_degrees,
        min_degree,
        max_degree,
    }
}

// ===== named families =====

/// Parameterized graph constructions, parsed from `h:n,k`, `turan:n,r`,
/// `cyclepower:n,k`, `cliquefactor:n,r`, `perfectmatching:n`, or
/// `g6:<string>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    /// An (n-1)-clique plus vertex n-1 joined to the k-1 clique vertices
    /// 0..k-2. The extremal candidate: vertex n-1 has degree k-1 (uniquely
    /// minimal for k < n-1), and there are C(n-1,2) + k - 1 edges.
    ExtremalH { n: usize, k: usize },
    /// Complete r-partite graph with balanced parts (vertex i in part i mod r).
    Turan { n: usize, r: usize },
    /// The k-th power of the n-cycle: i ~ j iff circular distance <= k.
    CyclePower { n: usize, k: usize },
    /// n/(r+1) disjoint copies of the complete graph on r+1 vertices.
    CliqueFactor { n: usize, r: usize },
    /// n/2 disjoint edges.
    PerfectMatching { n: usize },
    /// Any graph, given as its graph6 string.
    Custom { graph6: String },
}

impl FamilySpec {
    /// Materializes the construction.
    pub fn build(&self) -> Result<Graph> {
        match *self {
            FamilySpec::ExtremalH { n, k } => {
                Graph::check_order(n)?;
                if n < 2 || k < 1 || k > n - 1 {
                    return Err(Error::InvalidParameter(format!(
                        "extremal construction needs n >= 2 and 1 <= k <= n-1, got n={n}, k={k}"
                    )));
                }
                let mut g = Graph::empty(n)?;
                for u in 0..(n - 1) {
                    for v in (u + 1)..(n - 1) {
                        g.set_edge(u, v);
                    }
                }
                for u in 0..(k - 1) {
                    g.set_edge(u, n - 1);
                }
                debug_assert_eq!(g.edge_count(), (n - 1) * (n - 2) / 2 + k - 1);
                Ok(g)
            }
            FamilySpec::Turan { n, r } => {
                Graph::check_order(n)?;
                if r < 1 || r > n {
                    return Err(Error::InvalidParameter(format!(
                        "Turan graph needs 1 <= r <= n, got n={n}, r={r}"
                    )));
                }
                let mut g = Graph::empty(n)?;
                for u in 0..n {
                    for v in (u + 1)..n {
                        if u % r != v % r {
                            g.set_edge(u, v);
                        }
                    }
                }
                Ok(g)
            }
            FamilySpec::CyclePower { n, k } => {
                Graph::check_order(n)?;
                if n < 3 {
                    return Err(Error::InvalidParameter(format!(
                        "cycle power needs n >= 3, got n={n}"
                    )));
                }
                if k < 1 || 2 * k >= n {
                    return Err(Error::InvalidParameter(format!(
                        "cycle power needs 1 <= k < n/2, got n={n}, k={k}"
                    )));
                }
                let mut g = Graph::empty(n)?;
                for u in 0..n {
                    for v in (u + 1)..n {
                        let d = (v - u).min(n - (v - u));
                        if d <= k {
                            g.set_edge(u, v);
                        }
                    }
                }
                debug_assert!((0..n).all(|v| g.degree(v) == 2 * k));
                Ok(g)
            }
            FamilySpec::CliqueFactor { n, r } => {
                Graph::check_order(n)?;
                if r < 1 || n % (r + 1) != 0 {
                    return Err(Error::InvalidParameter(format!(
                        "clique factor needs r >= 1 and (r+1) | n, got n={n}, r={r}"
                    )));
                }
                let mut g = Graph::empty(n)?;
                for u in 0..n {
                    for v in (u + 1)..n {
                        if u / (r + 1) == v / (r + 1) {
                            g.set_edge(u, v);
                        }
                    }
                }
                Ok(g)
            }
            FamilySpec::PerfectMatching { n } => {
                Graph::check_order(n)?;
                if n % 2 != 0 {
                    return Err(Error::InvalidParameter(format!(
                        "perfect matching needs even n, got n={n}"
                    )));
                }
                let mut g = Graph::empty(n)?;
                for i in 0..n / 2 {
                    g.set_edge(2 * i, 2 * i + 1);
                }
                Ok(g)
            }
            FamilySpec::Custom { ref graph6 } => graph6_decode(graph6),
        }
    }

    /// Number of vertices of the built graph.
    pub fn order(&self) -> Result<usize> {
        match *self {
            FamilySpec::ExtremalH { n, .. }
            | FamilySpec::Turan { n, .. }
            | FamilySpec::CyclePower { n, .. }
            | FamilySpec::CliqueFactor { n, .. }
            | FamilySpec::PerfectMatching { n } => Ok(n),
            FamilySpec::Custom { ref graph6 } => Ok(graph6_decode(graph6)?.n()),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::ExtremalH { n, k } => write!(f, "h:{n},{k}"),
            FamilySpec::Turan { n, r } => write!(f, "turan:{n},{r}"),
            FamilySpec::CyclePower { n, k } => write!(f, "cyclepower:{n},{k}"),
            FamilySpec::CliqueFactor { n, r } => write!(f, "cliquefactor:{n},{r}"),
            FamilySpec::PerfectMatching { n } => write!(f, "perfectmatching:{n}"),
            FamilySpec::Custom { ref graph6 } => write!(f, "g6:{graph6}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<FamilySpec> {
        let bad = |msg: &str| Error::InvalidParameter(format!("family spec `{s}`: {msg}"));
        let (head, tail) = s
            .split_once(':')
            .ok_or_else(|| bad("expected `<name>:<params>`"))?;
        let two = |tail: &str| -> Result<(usize, usize)> {
            let (a, b) = tail
                .split_once(',')
                .ok_or_else(|| bad("expected two parameters"))?;
            Ok((
                a.trim()
                    .parse()
                    .map_err(|_| bad("first parameter is not an integer"))?,
                b.trim()
                    .parse()
                    .map_err(|_| bad("second parameter is not an integer"))?,
            ))
        };
        match head {
            "h" => {
                let (n, k) = two(tail)?;
                Ok(FamilySpec::ExtremalH { n, k })
            }
            "turan" => {
                let (n, r) = two(tail)?;
                Ok(FamilySpec::Turan { n, r })
            }
            "cyclepower" => {
                let (n, k) = two(tail)?;
                Ok(FamilySpec::CyclePower { n, k })
            }
            "cliquefactor" => {
                let (n, r) = two(tail)?;
                Ok(FamilySpec::CliqueFactor { n, r })
            }
            "perfectmatching" => {
                let n = tail
                    .trim()
                    .parse()
                    .map_err(|_| bad("parameter is not an integer"))?;
                Ok(FamilySpec::PerfectMatching { n })
            }
            "g6" => Ok(FamilySpec::Custom {
                graph6: tail.to_string(),
            }),
            _ => Err(bad("unknown family name")),
        }
    }
}

impl serde::Serialize for FamilySpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for FamilySpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

// ===== graph6 codec =====

/// Encodes a graph in graph6 format (no header line, no trailing newline).
pub fn graph6_encode(g: &Graph) -> String {
    let n = g.n();
    let mut bytes = Vec::new();
    if n <= 62 {
        bytes.push(63 + n as u8);
    } else {
        // Four-byte header: '~' then n as three 6-bit groups, high first.
        bytes.push(126);
        bytes.push(63 + ((n >> 12) & 63) as u8);
        bytes.push(63 + ((n >> 6) & 63) as u8);
        bytes.push(63 + (n & 63) as u8);
    }
    // Upper triangle in column order: (0,1), (0,2), (1,2), (0,3), ...
    let mut acc = 0u8;
    let mut filled = 0u8;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                bytes.push(63 + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        bytes.push(63 + (acc << (6 - filled)));
    }
    String::from_utf8(bytes).expect("graph6 bytes are printable ASCII")
}

/// Decodes a graph6 string. Errors carry the offending byte offset.
pub fn graph6_decode(s: &str) -> Result<Graph> {
    let bytes = s.as_bytes();
    let malformed = |byte: usize, reason: &str| Error::MalformedGraph6 {
        byte,
        reason: reason.to_string(),
    };
    if bytes.is_empty() {
        return Err(malformed(0, "empty string"));
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(malformed(i, "byte outside the graph6 range 63..=126"));
        }
    }
    let (n, header_len) = if bytes[0] == 126 {
        if bytes.len() >= 2 && bytes[1] == 126 {
            // An eight-byte header encodes n > 258047, far past our cap.
            return Err(Error::CapacityExceeded(format!(
                "graph6 order beyond 258047 exceeds the {MAX_VERTICES}-vertex cap"
            )));
        }
        if bytes.len() < 4 {
            return Err(malformed(bytes.len(), "truncated multi-byte order header"));
        }
        let n = ((bytes[1] as usize - 63) << 12)
            | ((bytes[2] as usize - 63) << 6)
            | (bytes[3] as usize - 63);
        (n, 4)
    } else {
        (bytes[0] as usize - 63, 1)
    };
    if n == 0 {
        return Err(Error::InvalidParameter(
            "graph6 encodes a graph on 0 vertices; order must be at least 1".into(),
        ));
    }
    if n > MAX_VERTICES {
        return Err(Error::CapacityExceeded(format!(
            "graph6 order {n} exceeds the {MAX_VERTICES}-vertex cap"
        )));
    }
    let triangle_bits = n * (n - 1) / 2;
    let expected = header_len + triangle_bits.div_ceil(6);
    if bytes.len() != expected {
        return Err(malformed(
            bytes.len().min(expected),
            &format!(
                "expected {expected} bytes for order {n}, got {}",
                bytes.len()
            ),
        ));
    }
    let mut g = Graph::empty(n)?;
    let mut idx = 0usize;
    'outer: for j in 1..n {
        for i in 0..j {
            let byte = bytes[header_len + idx / 6] - 63;
            let bit = byte >> (5 - idx % 6) & 1;
            if bit == 1 {
                g.set_edge(i, j);
            }
            idx += 1;
            if idx == triangle_bits {
                break 'outer;
            }
        }
    }
    // Padding bits beyond the triangle must be zero.
    if triangle_bits % 6 != 0 {
        let last = bytes[expected - 1] - 63;
        let pad = 6 - triangle_bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(malformed(expected - 1, "nonzero padding bits"));
        }
    }
    Ok(g)
}

/// Reads a newline-delimited graph6 stream, skipping blank lines. Each item
/// is `(line_number, decode result)` with 1-based line numbers.
pub fn read_graph6_stream<R: BufRead>(reader: R) -> impl Iterator<Item = (usize, Result<Graph>)> {
    reader
        .lines()
        .enumerate()
        .filter_map(|(i, line)| match line {
            Ok(l) => {
                let t = l.trim().to_string();
                if t.is_empty() {
                    None
                } else {
                    Some((i + 1, graph6_decode(&t)))
                }
            }
            Err(e) => Some((
                i + 1,
                Err(Error::MalformedGraph6 {
                    byte: 0,
                    reason: format!("read error: {e}"),
                }),
            )),
        })
}

// ===== clique number =====

/// Exact clique number by branch and bound with greedy-coloring upper bounds,
/// for graphs on at most 64 vertices.
pub fn clique_number(g: &Graph) -> Result<usize> {
    let rows = g.rows64()?;
    let mut best = 0usize;
    let full = low_mask(g.n());
    expand_clique(&rows, full, 0, &mut best);
    Ok(best)
}

fn expand_clique(rows: &[u64], cand: u64, size: usize, best: &mut usize) {
    if cand == 0 {
        *best = (*best).max(size);
        return;
    }
    // Greedy coloring of the candidate set: vertices in color class c can
    // contribute at most one clique vertex each, so size + color bounds any
    // completion through this vertex and all earlier ones.
    let mut order: Vec<(usize, usize)> = Vec::with_capacity(cand.count_ones() as usize);
    let mut rest = cand;
    let mut color = 0usize;
    while rest != 0 {
        color += 1;
        let mut avail = rest;
        while avail != 0 {
            let v = avail.trailing_zeros() as usize;
            order.push((color, v));
            rest &= !(1u64 << v);
            avail &= !(1u64 << v);
            avail &= !rows[v];
        }
    }
    let mut cand = cand;
    for (c, v) in order.into_iter().rev() {
        if size + c <= *best {
            return;
        }
        expand_clique(rows, cand & rows[v], size + 1, best);
        cand &= !(1u64 << v);
    }
}

// ===== tests =====
