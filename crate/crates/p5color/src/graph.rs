//! Immutable simple-graph representation with bitset adjacency, induced-subgraph
//! views, component decomposition and DIMACS `.col` I/O.
//!
//! Vertices are dense 0-based ids. Subproblems never copy adjacency: they hold a
//! [`VertexSet`] view over the one shared [`Graph`].

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// A set of small ids (vertices, component indices) backed by `u64` words.
///
/// Capacity is fixed at construction; all sets combined by binary operations
/// must come from the same universe.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: Box<[u64]>,
}

#[inline]
fn word_count(capacity: usize) -> usize {
    capacity.div_ceil(64)
}

impl VertexSet {
    /// Empty set over ids `0..capacity`.
    pub fn empty(capacity: usize) -> Self {
        VertexSet {
            words: vec![0u64; word_count(capacity)].into_boxed_slice(),
        }
    }

    /// Full set `{0, .., capacity-1}`.
    pub fn full(capacity: usize) -> Self {
        let mut s = Self::empty(capacity);
        let wc = s.words.len();
        for w in 0..wc {
            s.words[w] = u64::MAX;
        }
        if capacity % 64 != 0 && wc > 0 {
            s.words[wc - 1] = (1u64 << (capacity % 64)) - 1;
        }
        s
    }

    pub fn from_ids<I: IntoIterator<Item = usize>>(capacity: usize, ids: I) -> Self {
        let mut s = Self::empty(capacity);
        for id in ids {
            s.insert(id);
        }
        s
    }

    #[inline]
    pub fn contains(&self, id: usize) -> bool {
        match self.words.get(id / 64) {
            Some(w) => (w >> (id % 64)) & 1 == 1,
            None => false,
        }
    }

    #[inline]
    pub fn insert(&mut self, id: usize) {
        debug_assert!(id / 64 < self.words.len(), "id {id} out of capacity");
        self.words[id / 64] |= 1u64 << (id % 64);
    }

    #[inline]
    pub fn remove(&mut self, id: usize) {
        if let Some(w) = self.words.get_mut(id / 64) {
            *w &= !(1u64 << (id % 64));
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    #[inline]
    pub fn intersects(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        !self.intersects(other)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.subtract(other);
        out
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.words.len(), other.words.len());
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.words.len(), other.words.len());
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= b;
        }
    }

    pub fn subtract(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.words.len(), other.words.len());
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= !b;
        }
    }

    /// Iterates members in ascending order.
    pub fn iter(&self) -> VertexSetIter<'_> {
        VertexSetIter {
            words: &self.words,
            word_idx: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = VertexSetIter<'a>;
    fn into_iter(self) -> Self::IntoIter {
        self.iter()
    }
}

pub struct VertexSetIter<'a> {
    words: &'a [u64],
    word_idx: usize,
    current: u64,
}

impl Iterator for VertexSetIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.word_idx += 1;
            if self.word_idx >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_idx];
        }
        let bit = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(self.word_idx * 64 + bit)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Errors from DIMACS parsing or direct graph construction.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: expected problem header `p edge <n> <m>`")]
    BadHeader { line: usize },
    #[error("line {line}: duplicate problem header")]
    DuplicateHeader { line: usize },
    #[error("line {line}: malformed edge line")]
    BadEdge { line: usize },
    #[error("line {line}: vertex id {id} out of range 1..={n}")]
    VertexOutOfRange { line: usize, id: usize, n: usize },
    #[error("line {line}: self-loop on vertex {id}")]
    SelfLoop { line: usize, id: usize },
    #[error("line {line}: unrecognized line")]
    UnknownLine { line: usize },
    #[error("missing problem header")]
    MissingHeader,
    #[error("edge ({u}, {v}) out of range for n = {n}")]
    EdgeOutOfRange { u: usize, v: usize, n: usize },
    #[error("self-loop on vertex {0}")]
    ConstructionSelfLoop(usize),
}

/// Immutable simple undirected graph.
///
/// Invariants: no self-loops, symmetric adjacency, no duplicate edges, and all
/// neighbor ids below `n`. Safe for shared concurrent reads.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    /// Builds a graph from an edge list; duplicate edges collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut adj = vec![VertexSet::empty(n); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::EdgeOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::ConstructionSelfLoop(u));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        let m = adj.iter().map(VertexSet::len).sum::<usize>() / 2;
        Ok(Graph { n, m, adj })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Neighbors of `v` inside `s`.
    pub fn neighbors_in(&self, v: usize, s: &VertexSet) -> VertexSet {
        self.adj[v].intersection(s)
    }

    /// The full vertex set `{0, .., n-1}`.
    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Parses DIMACS `.col` text: `c` comment lines, one `p edge <n> <m>`
    /// header, `e <u> <v>` edge lines with 1-based ids. Symmetric duplicates
    /// collapse; self-loops are rejected.
    pub fn parse_dimacs(text: &str) -> Result<Graph, GraphError> {
        let mut n: Option<usize> = None;
        let mut adj: Vec<VertexSet> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let s = raw.trim();
            if s.is_empty() || s.starts_with('c') {
                continue;
            }
            let mut tok = s.split_whitespace();
            match tok.next() {
                Some("p") => {
                    if n.is_some() {
                        return Err(GraphError::DuplicateHeader { line });
                    }
                    let fmt_ok = matches!(tok.next(), Some("edge") | Some("col"));
                    let nv = tok.next().and_then(|t| t.parse::<usize>().ok());
                    let ne = tok.next().and_then(|t| t.parse::<usize>().ok());
                    match (fmt_ok, nv, ne, tok.next()) {
                        (true, Some(nv), Some(_), None) => {
                            n = Some(nv);
                            adj = vec![VertexSet::empty(nv); nv];
                        }
                        _ => return Err(GraphError::BadHeader { line }),
                    }
                }
                Some("e") => {
                    let n = n.ok_or(GraphError::MissingHeader)?;
                    let u = tok.next().and_then(|t| t.parse::<usize>().ok());
                    let v = tok.next().and_then(|t| t.parse::<usize>().ok());
                    let (u, v) = match (u, v, tok.next()) {
                        (Some(u), Some(v), None) => (u, v),
                        _ => return Err(GraphError::BadEdge { line }),
                    };
                    for id in [u, v] {
                        if id == 0 || id > n {
                            return Err(GraphError::VertexOutOfRange { line, id, n });
                        }
                    }
                    if u == v {
                        return Err(GraphError::SelfLoop { line, id: u });
                    }
                    adj[u - 1].insert(v - 1);
                    adj[v - 1].insert(u - 1);
                }
                _ => return Err(GraphError::UnknownLine { line }),
            }
        }
        let n = n.ok_or(GraphError::MissingHeader)?;
        let m = adj.iter().map(VertexSet::len).sum::<usize>() / 2;
        Ok(Graph { n, m, adj })
    }

    /// Canonical DIMACS serialization: header plus `e u v` lines with `u < v`,
    /// sorted, 1-based. `parse_dimacs` is the left inverse of this.
    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p edge {} {}\n", self.n, self.m);
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if v > u {
                    out.push_str(&format!("e {} {}\n", u + 1, v + 1));
                }
            }
        }
        out
    }

    /// Connected components of the subgraph induced by `s`, ordered by their
    /// minimum member id. The output partitions `s`.
    pub fn induced_components(&self, s: &VertexSet) -> Vec<VertexSet> {
        let mut remaining = s.clone();
        let mut out = Vec::new();
        while let Some(seed) = remaining.first() {
            let mut comp = VertexSet::empty(self.n);
            comp.insert(seed);
            let mut frontier = comp.clone();
            loop {
                let mut next = VertexSet::empty(self.n);
                for v in frontier.iter() {
                    next.union_with(&self.adj[v]);
                }
                next.intersect_with(&remaining);
                next.subtract(&comp);
                if next.is_empty() {
                    break;
                }
                comp.union_with(&next);
                frontier = next;
            }
            remaining.subtract(&comp);
            out.push(comp);
        }
        out
    }

    /// True iff every vertex of `b` has at least one neighbor in `a`.
    pub fn dominates(&self, a: &VertexSet, b: &VertexSet) -> bool {
        b.iter().all(|v| self.adj[v].intersects(a))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n, self.m)
    }
}

/// Convenience for the common "share one graph across many instances" pattern.
pub type SharedGraph = Arc<Graph>;

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn random_graph(rng: &mut StdRng, n: usize, p: f64) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.random_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn parse_simple_path() {
        let g = Graph::parse_dimacs("p edge 3 2\ne 1 2\ne 2 3").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 2);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2) && !g.has_edge(0, 2));
    }

    #[test]
    fn parse_dedups_symmetric_duplicate() {
        let g = Graph::parse_dimacs("p edge 2 2\ne 1 2\ne 2 1").unwrap();
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn parse_rejects_self_loop() {
        let err = Graph::parse_dimacs("p edge 2 1\ne 1 1").unwrap_err();
        assert_eq!(err, GraphError::SelfLoop { line: 2, id: 1 });
    }

    #[test]
    fn parse_rejects_out_of_range_and_bad_header() {
        let err = Graph::parse_dimacs("p edge 2 1\ne 1 3").unwrap_err();
        assert_eq!(
            err,
            GraphError::VertexOutOfRange {
                line: 2,
                id: 3,
                n: 2
            }
        );
        assert!(matches!(
            Graph::parse_dimacs("p edges 2 1\ne 1 2").unwrap_err(),
            GraphError::BadHeader { line: 1 }
        ));
        assert!(matches!(
            Graph::parse_dimacs("e 1 2").unwrap_err(),
            GraphError::MissingHeader
        ));
    }

    #[test]
    fn parse_ignores_comments() {
        let g = Graph::parse_dimacs("c hello\nc p edge 9 9\np edge 2 1\ne 1 2\nc done").unwrap();
        assert_eq!((g.n(), g.m()), (2, 1));
    }

    #[test]
    fn serialize_parse_roundtrip_random() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.random_range(1..=12);
            let g = random_graph(&mut rng, n, 0.4);
            let text = g.to_dimacs();
            let back = Graph::parse_dimacs(&text).unwrap();
            assert_eq!(back, g);
            assert_eq!(back.to_dimacs(), text);
        }
    }

    #[test]
    fn components_cycle_is_single() {
        let g = cycle(5);
        let comps = g.induced_components(&g.all_vertices());
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].len(), 5);
    }

    #[test]
    fn components_path_endpoints_split() {
        let g = path(3);
        let s = VertexSet::from_ids(3, [0, 2]);
        let comps = g.induced_components(&s);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0], VertexSet::from_ids(3, [0]));
        assert_eq!(comps[1], VertexSet::from_ids(3, [2]));
    }

    /// Independent oracle: plain queue BFS over an adjacency-list copy.
    fn bfs_component(g: &Graph, s: &VertexSet, start: usize) -> VertexSet {
        let mut seen = VertexSet::empty(g.n());
        seen.insert(start);
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for u in 0..g.n() {
                if g.has_edge(v, u) && s.contains(u) && !seen.contains(u) {
                    seen.insert(u);
                    queue.push_back(u);
                }
            }
        }
        seen
    }

    #[test]
    fn components_match_bfs_oracle() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..300 {
            let g = random_graph(&mut rng, 8, 0.3);
            let s = VertexSet::from_ids(8, (0..8).filter(|_| rng.random_bool(0.6)));
            let comps = g.induced_components(&s);

            // Partition checks: disjoint, union = s, internally connected,
            // no edge leaves a component within s.
            let mut union = VertexSet::empty(8);
            for c in &comps {
                assert!(c.is_disjoint(&union));
                union.union_with(c);
                let seed = c.first().unwrap();
                assert_eq!(&bfs_component(&g, &s, seed), c);
                for v in c.iter() {
                    let outside = g.neighbors_in(v, &s).difference(c);
                    assert!(outside.is_empty(), "edge leaves component");
                }
            }
            assert_eq!(union, s);
        }
    }

    #[test]
    fn dominates_star_and_cycle() {
        let star = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let center = VertexSet::from_ids(5, [0]);
        let leaves = VertexSet::from_ids(5, [1, 2, 3, 4]);
        assert!(star.dominates(&center, &leaves));

        let c5 = cycle(5);
        let one = VertexSet::from_ids(5, [0]);
        let rest = VertexSet::from_ids(5, [1, 2, 3, 4]);
        assert!(!c5.dominates(&one, &rest));
    }

    #[test]
    fn dominates_matches_double_loop_oracle() {
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..300 {
            let g = random_graph(&mut rng, 8, 0.35);
            let a = VertexSet::from_ids(8, (0..8).filter(|_| rng.random_bool(0.4)));
            let b = VertexSet::from_ids(8, (0..8).filter(|_| rng.random_bool(0.4)));
            let expected = b
                .iter()
                .all(|v| a.iter().any(|u| u != v && g.has_edge(u, v)));
            assert_eq!(g.dominates(&a, &b), expected);
        }
    }

    #[test]
    fn vertex_set_basics() {
        let mut s = VertexSet::empty(130);
        assert!(s.is_empty());
        for id in [0, 63, 64, 129] {
            s.insert(id);
        }
        assert_eq!(s.len(), 4);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 63, 64, 129]);
        s.remove(64);
        assert!(!s.contains(64));
        assert_eq!(s.first(), Some(0));

        let full = VertexSet::full(130);
        assert_eq!(full.len(), 130);
        assert!(s.is_subset(&full));
        assert!(full.difference(&s).len() == 127);
    }
}
