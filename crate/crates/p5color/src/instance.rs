//! Restricted list-coloring subproblems.
//!
//! An [`Instance`] is an immutable snapshot: a shared graph, the set of still
//! unassigned ("live") vertices, a color list per live vertex, and the partial
//! assignment accumulated so far. Branching copies the lists and assignment;
//! the graph is never copied.
//!
//! Assignments propagate eagerly: assigning `v = c` deletes `c` from every
//! live neighbor's list, and any list that shrinks to a single color triggers
//! a cascaded assignment. A list that empties makes the snapshot infeasible —
//! that is a value (`Err(Infeasible)`), not a fault.

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::graph::{Graph, VertexSet};

/// A subset of the colors `{1, .., k}`, packed into a `u32`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ColorSet(u32);

/// Colors are 1-based and at most [`ColorSet::MAX_COLORS`].
pub type Color = u8;

impl ColorSet {
    pub const MAX_COLORS: usize = 32;

    pub const EMPTY: ColorSet = ColorSet(0);

    /// The full universe `{1, .., k}`.
    pub fn first_k(k: usize) -> ColorSet {
        assert!(k <= Self::MAX_COLORS, "at most {} colors", Self::MAX_COLORS);
        if k == 0 {
            ColorSet(0)
        } else {
            ColorSet(u32::MAX >> (32 - k))
        }
    }

    pub fn from_colors<I: IntoIterator<Item = Color>>(colors: I) -> ColorSet {
        let mut s = ColorSet(0);
        for c in colors {
            s = s.with(c);
        }
        s
    }

    #[inline]
    pub fn contains(self, c: Color) -> bool {
        debug_assert!(c >= 1);
        self.0 >> (c - 1) & 1 == 1
    }

    #[inline]
    #[must_use]
    pub fn with(self, c: Color) -> ColorSet {
        debug_assert!((1..=Self::MAX_COLORS as u8).contains(&c));
        ColorSet(self.0 | 1 << (c - 1))
    }

    #[inline]
    #[must_use]
    pub fn without(self, c: Color) -> ColorSet {
        debug_assert!(c >= 1);
        ColorSet(self.0 & !(1 << (c - 1)))
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn intersection(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 & other.0)
    }

    #[inline]
    pub fn union(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 | other.0)
    }

    #[inline]
    pub fn difference(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: ColorSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// The single member, if the set has exactly one.
    #[inline]
    pub fn as_singleton(self) -> Option<Color> {
        if self.0.count_ones() == 1 {
            Some(self.0.trailing_zeros() as Color + 1)
        } else {
            None
        }
    }

    /// Ascending iteration over member colors.
    pub fn iter(self) -> impl Iterator<Item = Color> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let c = bits.trailing_zeros() as Color + 1;
                bits &= bits - 1;
                Some(c)
            }
        })
    }

    pub fn bits(self) -> u32 {
        self.0
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for c in self.iter() {
            if !first {
                f.write_char(',')?;
            }
            write!(f, "{c}")?;
            first = false;
        }
        Ok(())
    }
}

/// Marker value: a snapshot whose solution set is provably empty.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Infeasible;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InstanceError {
    #[error("vertex {0} has an empty color list")]
    EmptyList(usize),
    #[error("list length {got} does not match vertex count {expected}")]
    ListCountMismatch { got: usize, expected: usize },
    #[error("live vertex {0} has no neighbor in the witness (witness does not dominate)")]
    NotDominated(usize),
}

/// Membership class of a live vertex relative to a colored dominating witness:
/// bit `i` is set iff the vertex is adjacent to the witness's `i`-th vertex.
///
/// Vertices in one class share the exact same set of witness neighbors, hence
/// the same witness-removed colors; a class is never empty because the
/// witness dominates every live vertex.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FixedSetKey(u32);

impl FixedSetKey {
    pub fn bits(self) -> u32 {
        self.0
    }

    /// Witness vertex ids selected by this signature.
    pub fn witness_vertices(self, witness: &[usize]) -> Vec<usize> {
        witness
            .iter()
            .enumerate()
            .filter(|(i, _)| self.0 >> i & 1 == 1)
            .map(|(_, &w)| w)
            .collect()
    }
}

/// A restricted list-coloring subproblem: the unit of branching.
#[derive(Clone)]
pub struct Instance {
    graph: Arc<Graph>,
    live: VertexSet,
    lists: Vec<ColorSet>,
    universe: ColorSet,
    assigned: Vec<Option<Color>>,
}

impl Instance {
    /// Fresh instance with every vertex live and list `{1, .., k}`.
    pub fn new_uniform(graph: Arc<Graph>, k: usize) -> Instance {
        let n = graph.n();
        assert!(n == 0 || k >= 1, "need at least one color");
        let universe = ColorSet::first_k(k);
        Instance {
            live: graph.all_vertices(),
            lists: vec![universe; n],
            universe,
            assigned: vec![None; n],
            graph,
        }
    }

    /// Instance with explicit per-vertex lists (the restricted variant).
    /// The universe is the union of the lists.
    pub fn with_lists(graph: Arc<Graph>, lists: Vec<ColorSet>) -> Result<Instance, InstanceError> {
        if lists.len() != graph.n() {
            return Err(InstanceError::ListCountMismatch {
                got: lists.len(),
                expected: graph.n(),
            });
        }
        let mut universe = ColorSet::EMPTY;
        for (v, l) in lists.iter().enumerate() {
            if l.is_empty() {
                return Err(InstanceError::EmptyList(v));
            }
            universe = universe.union(*l);
        }
        Ok(Instance {
            live: graph.all_vertices(),
            lists,
            universe,
            assigned: vec![None; graph.n()],
            graph,
        })
    }

    /// A fresh sub-problem over `region`: same lists, cleared assignment,
    /// universe recomputed from the region's lists. Used when recursing into a
    /// connected component or an independent fixed set.
    pub fn restricted_to(&self, region: &VertexSet) -> Instance {
        debug_assert!(region.is_subset(&self.live));
        let mut universe = ColorSet::EMPTY;
        for v in region.iter() {
            universe = universe.union(self.lists[v]);
        }
        Instance {
            graph: Arc::clone(&self.graph),
            live: region.clone(),
            lists: self.lists.clone(),
            universe,
            assigned: vec![None; self.graph.n()],
        }
    }

    #[inline]
    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    #[inline]
    pub fn live(&self) -> &VertexSet {
        &self.live
    }

    #[inline]
    pub fn list(&self, v: usize) -> ColorSet {
        self.lists[v]
    }

    #[inline]
    pub fn universe(&self) -> ColorSet {
        self.universe
    }

    #[inline]
    pub fn color_of(&self, v: usize) -> Option<Color> {
        self.assigned[v]
    }

    /// All `(vertex, color)` pairs fixed so far, ascending by vertex.
    pub fn assigned_pairs(&self) -> Vec<(usize, Color)> {
        self.assigned
            .iter()
            .enumerate()
            .filter_map(|(v, c)| c.map(|c| (v, c)))
            .collect()
    }

    /// Assigns `v = c` and propagates. `v` must be live and `c` in its list.
    pub fn assign(&self, v: usize, c: Color) -> Result<Instance, Infeasible> {
        debug_assert!(self.live.contains(v), "assign target must be live");
        debug_assert!(self.lists[v].contains(c), "color must come from the list");
        let mut next = self.clone();
        next.fix_and_propagate(v, c)?;
        Ok(next)
    }

    /// Shrinks `v`'s list to `s ⊆ list(v)`; a singleton result assigns and
    /// propagates, an empty `s` is infeasible.
    pub fn restrict(&self, v: usize, s: ColorSet) -> Result<Instance, Infeasible> {
        debug_assert!(self.live.contains(v));
        debug_assert!(s.is_subset(self.lists[v]));
        if s.is_empty() {
            return Err(Infeasible);
        }
        if let Some(c) = s.as_singleton() {
            return self.assign(v, c);
        }
        let mut next = self.clone();
        next.lists[v] = s;
        Ok(next)
    }

    fn fix_and_propagate(&mut self, v: usize, c: Color) -> Result<(), Infeasible> {
        let mut forced: Vec<usize> = Vec::new();
        self.fix_one(v, c, &mut forced)?;
        while let Some(u) = forced.pop() {
            if !self.live.contains(u) {
                continue; // already fixed by an earlier cascade step
            }
            let only = self.lists[u]
                .as_singleton()
                .expect("queued vertex keeps its singleton list");
            self.fix_one(u, only, &mut forced)?;
        }
        Ok(())
    }

    fn fix_one(&mut self, v: usize, c: Color, forced: &mut Vec<usize>) -> Result<(), Infeasible> {
        self.live.remove(v);
        self.assigned[v] = Some(c);
        let affected = self.graph.neighbors_in(v, &self.live);
        for u in affected.iter() {
            if self.lists[u].contains(c) {
                let shrunk = self.lists[u].without(c);
                self.lists[u] = shrunk;
                if shrunk.is_empty() {
                    return Err(Infeasible);
                }
                if shrunk.len() == 1 {
                    forced.push(u);
                }
            }
        }
        Ok(())
    }

    /// Groups the live vertices by their exact witness-neighborhood signature.
    ///
    /// All witness vertices must already be assigned, and the witness must
    /// dominate every live vertex — a live vertex with no witness neighbor is
    /// a contract violation reported as an error.
    pub fn partition_by_signature(
        &self,
        witness: &[usize],
    ) -> Result<BTreeMap<FixedSetKey, VertexSet>, InstanceError> {
        debug_assert!(witness.iter().all(|&w| self.assigned[w].is_some()));
        let mut classes: BTreeMap<FixedSetKey, VertexSet> = BTreeMap::new();
        for v in self.live.iter() {
            let mut sig = 0u32;
            for (i, &w) in witness.iter().enumerate() {
                if self.graph.has_edge(v, w) {
                    sig |= 1 << i;
                }
            }
            if sig == 0 {
                return Err(InstanceError::NotDominated(v));
            }
            classes
                .entry(FixedSetKey(sig))
                .or_insert_with(|| VertexSet::empty(self.graph.n()))
                .insert(v);
        }
        Ok(classes)
    }

    /// Groups `fixed ∩ live` by current color list. Membership is dynamic:
    /// recompute after any assignment or restriction.
    pub fn dynamic_partition(&self, fixed: &VertexSet) -> BTreeMap<ColorSet, VertexSet> {
        let mut groups: BTreeMap<ColorSet, VertexSet> = BTreeMap::new();
        for v in fixed.intersection(&self.live).iter() {
            groups
                .entry(self.lists[v])
                .or_insert_with(|| VertexSet::empty(self.graph.n()))
                .insert(v);
        }
        groups
    }

    /// True iff some edge joins `a` and `b` with intersecting color lists.
    pub fn dependent(&self, a: &VertexSet, b: &VertexSet) -> bool {
        debug_assert!(a.is_disjoint(b));
        for u in a.iter() {
            let lu = self.lists[u];
            for v in self.graph.neighbors_in(u, b).iter() {
                if !lu.intersection(self.lists[v]).is_empty() {
                    return true;
                }
            }
        }
        false
    }

    /// Debug dump, one line per live vertex: `v <id> : c1,c2,...`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for v in self.live.iter() {
            let _ = writeln!(out, "v {} : {}", v, self.lists[v]);
        }
        out
    }

    /// Full invariant check; used by tests after every mutation.
    pub fn validate(&self) -> Result<(), String> {
        for v in self.live.iter() {
            if self.lists[v].is_empty() {
                return Err(format!("live vertex {v} has an empty list"));
            }
            if !self.lists[v].is_subset(self.universe) {
                return Err(format!("list of {v} leaves the universe"));
            }
            if self.assigned[v].is_some() {
                return Err(format!("vertex {v} both live and assigned"));
            }
        }
        for (v, c) in self.assigned_pairs() {
            if self.live.contains(v) {
                return Err(format!("assigned vertex {v} still live"));
            }
            for u in self.graph.neighbors(v).iter() {
                if self.assigned[u] == Some(c) {
                    return Err(format!("adjacent {v},{u} share color {c}"));
                }
                if self.live.contains(u) && self.lists[u].contains(c) {
                    return Err(format!(
                        "propagation incomplete: {c} still listed on {u}, neighbor of assigned {v}"
                    ));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Instance(live={}, universe={:?}, assigned={})",
            self.live.len(),
            self.universe,
            self.assigned.iter().filter(|c| c.is_some()).count()
        )
    }
}
