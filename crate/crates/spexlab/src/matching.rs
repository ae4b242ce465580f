//! Maximum matching in general graphs by augmenting-path search with blossom
//! contraction. Used by the factor-existence check, which reduces
//! degree-constrained subgraph questions to perfect matchings in a gadget
//! graph.

const NONE: usize = usize::MAX;

/// Maximum matching on `0..n` with adjacency lists `adj`. Returns the mate
/// array (`NONE` sentinel replaced by `usize::MAX`) and the matching size.
pub(crate) fn maximum_matching(n: usize, adj: &[Vec<usize>]) -> (usize, Vec<usize>) {
    debug_assert_eq!(adj.len(), n);
    let mut mate = vec![NONE; n];
    // Greedy seed: cuts the number of augmentation phases roughly in half.
    for v in 0..n {
        if mate[v] == NONE {
            for &u in &adj[v] {
                if mate[u] == NONE {
                    mate[v] = u;
                    mate[u] = v;
                    break;
                }
            }
        }
    }
    let mut searcher = Searcher {
        adj,
        mate: &mut mate,
        parent: vec![NONE; n],
        base: vec![0; n],
        used: vec![false; n],
        blossom: vec![false; n],
    };
    for root in 0..n {
        if searcher.mate[root] == NONE {
            searcher.augment_from(root);
        }
    }
    let size = mate.iter().filter(|&&m| m != NONE).count() / 2;
    (size, mate)
}

struct Searcher<'a> {
    adj: &'a [Vec<usize>],
    mate: &'a mut Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    blossom: Vec<bool>,
}

impl Searcher<'_> {
    /// One BFS phase from an exposed vertex; flips the matching along an
    /// augmenting path if one exists.
    fn augment_from(&mut self, root: usize) -> bool {
        let n = self.adj.len();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for i in 0..self.adj[v].len() {
                let to = self.adj[v][i];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    // Odd cycle: contract the blossom rooted at the LCA.
                    let cur_base = self.lca(v, to);
                    self.blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur_base, to);
                    self.mark_path(to, cur_base, v);
                    for i in 0..n {
                        if self.blossom[self.base[i]] {
                            self.base[i] = cur_base;
                            if !self.used[i] {
                                self.used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        // Exposed vertex reached: flip along the path.
                        let mut cur = to;
                        while cur != NONE {
                            let prev = self.parent[cur];
                            let next = self.mate[prev];
                            self.mate[cur] = prev;
                            self.mate[prev] = cur;
                            cur = next;
                        }
                        return true;
                    }
                    self.used[self.mate[to]] = true;
                    queue.push_back(self.mate[to]);
                }
            }
        }
        false
    }

    /// Lowest common ancestor of two tree vertices, in base space.
    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let n = self.adj.len();
        let mut on_path = vec![false; n];
        loop {
            a = self.base[a];
            on_path[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if on_path[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    /// Marks blossom membership along the path from `v` down to the base `b`,
    /// rethreading parents so the contracted cycle can be traversed later.
    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.blossom[self.base[v]] = true;
            self.blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }
}
