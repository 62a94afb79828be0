//! The branching solver.
//!
//! `solve` drives a depth-first worklist of immutable [`Instance`] snapshots:
//!
//! 1. split the live vertices into connected components;
//! 2. per component, bail UNSAT if a clique exceeds the color universe, then
//!    find a dominating witness (clique or induced path) and branch over all
//!    of its list-consistent proper colorings;
//! 3. partition the remaining live vertices into fixed sets by their exact
//!    witness-neighborhood signature, and remove every dependency between
//!    fixed-set pairs by pivot branching and component removal;
//! 4. recurse into each now-independent fixed set; every recursion level
//!    strictly shrinks the color universe, so the depth is at most k.
//!
//! A failure of the structural guarantees behind steps 2–3 proves the input
//! contains an induced P5; the solver extracts a certificate and rejects the
//! input instead of guessing.

use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::{Mutex, OnceLock};

use thiserror::Error;

use crate::dominating::{self, DominatingWitness};
use crate::graph::{Graph, VertexSet};
use crate::instance::{Color, ColorSet, FixedSetKey, Instance};
use crate::p5::{self, P5Certificate};

/// Outcome of a solve: a full coloring (1-based colors, indexed by vertex,
/// zero outside the instance's domain) or UNSAT.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Answer {
    Sat(Vec<Color>),
    Unsat,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    /// A structural guarantee failed and an induced P5 was extracted; the
    /// input was not P5-free.
    #[error("input is not P5-free: induced path {0}")]
    NotP5Free(P5Certificate),
}

/// True iff `coloring` is total on `g`, proper, and every color sits in its
/// vertex's list.
pub fn verify_coloring(g: &Graph, lists: &[ColorSet], coloring: &[Color]) -> bool {
    if coloring.len() != g.n() || lists.len() != g.n() {
        return false;
    }
    for v in 0..g.n() {
        let c = coloring[v];
        if c == 0 || !lists[v].contains(c) {
            return false;
        }
        if g.neighbors(v).iter().any(|u| coloring[u] == c) {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Statistics
// ---------------------------------------------------------------------------

/// Solver counters; all atomic so snapshots work under parallel exploration.
#[derive(Default)]
pub struct Stats {
    instances_created: AtomicU64,
    witness_colorings: AtomicU64,
    pivot_branches: AtomicU64,
    component_removals: AtomicU64,
    exceptional_components: AtomicU64,
    hview_builds: AtomicU64,
    disconnected_h: AtomicU64,
    incomparable_violations: AtomicU64,
    branch_vertex_violations: AtomicU64,
    sweep_restarts: AtomicU64,
    infeasible_dropped: AtomicU64,
    clique_cutoffs: AtomicU64,
    sat_leaves: AtomicU64,
    max_depth: AtomicU64,
    max_pair_rounds: AtomicU64,
}

/// Plain copy of the counters at one point in time.
#[derive(Clone, Copy, Default, Debug, PartialEq, Eq)]
pub struct StatsSnapshot {
    pub instances_created: u64,
    pub witness_colorings: u64,
    pub pivot_branches: u64,
    pub component_removals: u64,
    pub exceptional_components: u64,
    pub hview_builds: u64,
    pub disconnected_h: u64,
    pub incomparable_violations: u64,
    pub branch_vertex_violations: u64,
    pub sweep_restarts: u64,
    pub infeasible_dropped: u64,
    pub clique_cutoffs: u64,
    pub sat_leaves: u64,
    pub max_depth: u64,
    pub max_pair_rounds: u64,
}

impl Stats {
    pub fn snapshot(&self) -> StatsSnapshot {
        let ld = |a: &AtomicU64| a.load(Ordering::Relaxed);
        StatsSnapshot {
            instances_created: ld(&self.instances_created),
            witness_colorings: ld(&self.witness_colorings),
            pivot_branches: ld(&self.pivot_branches),
            component_removals: ld(&self.component_removals),
            exceptional_components: ld(&self.exceptional_components),
            hview_builds: ld(&self.hview_builds),
            disconnected_h: ld(&self.disconnected_h),
            incomparable_violations: ld(&self.incomparable_violations),
            branch_vertex_violations: ld(&self.branch_vertex_violations),
            sweep_restarts: ld(&self.sweep_restarts),
            infeasible_dropped: ld(&self.infeasible_dropped),
            clique_cutoffs: ld(&self.clique_cutoffs),
            sat_leaves: ld(&self.sat_leaves),
            max_depth: ld(&self.max_depth),
            max_pair_rounds: ld(&self.max_pair_rounds),
        }
    }

    #[inline]
    fn bump(a: &AtomicU64) {
        a.fetch_add(1, Ordering::Relaxed);
    }

    #[inline]
    fn raise(a: &AtomicU64, v: u64) {
        a.fetch_max(v, Ordering::Relaxed);
    }
}

impl StatsSnapshot {
    /// Total structural-guarantee violations observed (all of them certify
    /// that the input was not P5-free).
    pub fn structural_violations(&self) -> u64 {
        self.disconnected_h + self.incomparable_violations + self.branch_vertex_violations
    }
}

impl fmt::Display for StatsSnapshot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "instances_created={}", self.instances_created)?;
        writeln!(f, "witness_colorings={}", self.witness_colorings)?;
        writeln!(f, "pivot_branches={}", self.pivot_branches)?;
        writeln!(f, "component_removals={}", self.component_removals)?;
        writeln!(f, "exceptional_components={}", self.exceptional_components)?;
        writeln!(f, "hview_builds={}", self.hview_builds)?;
        writeln!(f, "disconnected_h={}", self.disconnected_h)?;
        writeln!(f, "incomparable_violations={}", self.incomparable_violations)?;
        writeln!(f, "branch_vertex_violations={}", self.branch_vertex_violations)?;
        writeln!(f, "sweep_restarts={}", self.sweep_restarts)?;
        writeln!(f, "infeasible_dropped={}", self.infeasible_dropped)?;
        writeln!(f, "clique_cutoffs={}", self.clique_cutoffs)?;
        writeln!(f, "sat_leaves={}", self.sat_leaves)?;
        writeln!(f, "max_depth={}", self.max_depth)?;
        write!(f, "max_pair_rounds={}", self.max_pair_rounds)
    }
}

// ---------------------------------------------------------------------------
// Expansion observation (used by the self-check suites)
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExpansionRule {
    WitnessColoring,
    RemoveComponent,
    PivotBranch,
}

/// Callback invoked at every expansion step with the parent and the surviving
/// children. The children's solution sets always partition the parent's.
pub trait ExpansionObserver: Send + Sync {
    fn on_expansion(&self, rule: ExpansionRule, parent: &Instance, children: &[Instance]);
}

// ---------------------------------------------------------------------------
// Pair state
// ---------------------------------------------------------------------------

/// One dynamic-set pair under dependency removal.
///
/// `pivot` is a witness vertex adjacent to every vertex of the Q-side class
/// and to none of the P-side class — it exists because the two classes have
/// different signatures. The residues are the class members that still carry
/// exactly `p_list` / `q_list`.
#[derive(Clone, Debug)]
pub struct PairState {
    pub p_class: VertexSet,
    pub q_class: VertexSet,
    pub p_list: ColorSet,
    pub q_list: ColorSet,
    pub pivot: usize,
}

impl PairState {
    pub fn p_residue(&self, inst: &Instance) -> VertexSet {
        self.residue(inst, &self.p_class, self.p_list)
    }

    pub fn q_residue(&self, inst: &Instance) -> VertexSet {
        self.residue(inst, &self.q_class, self.q_list)
    }

    fn residue(&self, inst: &Instance, class: &VertexSet, list: ColorSet) -> VertexSet {
        let mut out = VertexSet::empty(inst.graph().n());
        for v in class.intersection(inst.live()).iter() {
            if inst.list(v) == list {
                out.insert(v);
            }
        }
        out
    }
}

/// The working subgraph for one pair: retained components of `G(P)` and
/// `G(Q)` (those with at least one edge to the opposite side) plus the pivot.
#[derive(Clone, Debug)]
pub struct HView {
    pub p_components: Vec<VertexSet>,
    pub q_components: Vec<VertexSet>,
    pub p_active: VertexSet,
    pub q_active: VertexSet,
    pub pivot: usize,
}

/// Result of the branching-vertex search: a P-vertex adjacent to every
/// retained Q-component, dominating all of them except at most the flagged
/// one.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BranchVertex {
    pub vertex: usize,
    pub undominated_component: Option<usize>,
}

// Test hook: deliberately weakens the pivot branch so the self-check suite
// can demonstrate it catches an incomplete engine. Never set outside tests.
fn fault_drop_residue_branch() -> bool {
    static FLAG: OnceLock<bool> = OnceLock::new();
    *FLAG.get_or_init(|| {
        std::env::var("P5COLOR_TEST_FAULT").is_ok_and(|v| v == "drop-residue-branch")
    })
}

// ---------------------------------------------------------------------------
// Solver
// ---------------------------------------------------------------------------

type Partial = Vec<(usize, Color)>;

pub struct Solver {
    pub stats: Stats,
    threads: usize,
    observer: Option<Box<dyn ExpansionObserver>>,
}

impl Default for Solver {
    fn default() -> Self {
        Self::new()
    }
}

impl Solver {
    pub fn new() -> Solver {
        Solver {
            stats: Stats::default(),
            threads: 1,
            observer: None,
        }
    }

    /// Explore top-level branches on up to `threads` OS threads. The SAT/UNSAT
    /// answer is schedule-independent; the reported coloring may legitimately
    /// differ from the single-threaded (DFS-first) one.
    pub fn with_threads(mut self, threads: usize) -> Solver {
        self.threads = threads.max(1);
        self
    }

    pub fn with_observer(mut self, observer: Box<dyn ExpansionObserver>) -> Solver {
        self.observer = Some(observer);
        self
    }

    #[inline]
    fn observe(&self, rule: ExpansionRule, parent: &Instance, children: &[Instance]) {
        if let Some(obs) = &self.observer {
            obs.on_expansion(rule, parent, children);
        }
    }

    /// Decides the instance. On SAT the returned coloring covers the
    /// instance's domain and has been re-verified against the entry lists.
    pub fn solve(&self, inst: &Instance) -> Result<Answer, SolveError> {
        Stats::bump(&self.stats.instances_created);
        let n = inst.graph().n();
        match self.solve_instance(inst, 0)? {
            None => Ok(Answer::Unsat),
            Some(pairs) => {
                let mut coloring = vec![0 as Color; n];
                for &(v, c) in &pairs {
                    coloring[v] = c;
                }
                // Reconstruct the entry lists and re-verify before answering.
                let mut entry_lists = vec![ColorSet::EMPTY; n];
                let mut domain = VertexSet::empty(n);
                for v in 0..n {
                    if inst.live().contains(v) {
                        entry_lists[v] = inst.list(v);
                        domain.insert(v);
                    } else if let Some(c) = inst.color_of(v) {
                        entry_lists[v] = ColorSet::EMPTY.with(c);
                        domain.insert(v);
                    }
                }
                for v in domain.iter() {
                    let c = coloring[v];
                    assert!(
                        c != 0 && entry_lists[v].contains(c),
                        "solver produced a list-violating coloring"
                    );
                    assert!(
                        inst.graph().neighbors(v).iter().all(|u| coloring[u] != c),
                        "solver produced an improper coloring"
                    );
                }
                Ok(Answer::Sat(coloring))
            }
        }
    }

    /// Recursion entry: peel off connected components of the live set.
    fn solve_instance(&self, inst: &Instance, depth: usize) -> Result<Option<Partial>, SolveError> {
        Stats::raise(&self.stats.max_depth, depth as u64);
        if inst.live().is_empty() {
            Stats::bump(&self.stats.sat_leaves);
            return Ok(Some(inst.assigned_pairs()));
        }
        let comps = inst.graph().induced_components(inst.live());
        if comps.len() == 1 {
            return self.solve_component(inst, depth);
        }
        let mut merged = inst.assigned_pairs();
        for comp in comps {
            let sub = inst.restricted_to(&comp);
            Stats::bump(&self.stats.instances_created);
            match self.solve_component(&sub, depth)? {
                Some(pairs) => merged.extend(pairs),
                None => return Ok(None),
            }
        }
        Ok(Some(merged))
    }

    /// One connected component: clique cutoff, witness, witness colorings.
    fn solve_component(&self, inst: &Instance, depth: usize) -> Result<Option<Partial>, SolveError> {
        debug_assert!(!inst.live().is_empty());
        let g = inst.graph().clone();
        let bound = inst.universe().len();
        debug_assert!(bound >= 1);

        // A clique larger than the universe cannot be colored at all.
        if dominating::find_clique_exceeding(&g, inst.live(), bound).is_some() {
            Stats::bump(&self.stats.clique_cutoffs);
            return Ok(None);
        }

        let witness = match dominating::find_dominating_witness(&g, inst.live(), bound) {
            Some(w) => w,
            // No witness in a connected graph certifies an induced P5.
            None => return Err(self.reject(inst, inst.live())),
        };
        debug_assert!(witness.is_valid(&g, inst.live()));
        let order: Vec<usize> = witness.vertices().to_vec();

        let children = self.witness_coloring_branches(inst, &order);
        self.observe(ExpansionRule::WitnessColoring, inst, &children);

        if depth == 0 && self.threads > 1 && children.len() > 1 {
            return self.explore_parallel(children, &order, depth);
        }
        for child in children {
            if let Some(found) = self.explore_after_witness(child, &order, depth)? {
                return Ok(Some(found));
            }
        }
        Ok(None)
    }

    /// All list-consistent proper colorings of the witness vertices, applied
    /// with propagation; infeasible combinations are dropped. Propagation
    /// handles properness (and clique injectivity) by construction, and a
    /// vertex force-assigned by a cascade simply keeps its forced color —
    /// the skipped combinations have empty solution sets.
    pub fn witness_coloring_branches(&self, inst: &Instance, order: &[usize]) -> Vec<Instance> {
        let mut out = Vec::new();
        self.expand_witness(inst, order, &mut out);
        for _ in &out {
            Stats::bump(&self.stats.instances_created);
            Stats::bump(&self.stats.witness_colorings);
        }
        out
    }

    fn expand_witness(&self, cur: &Instance, order: &[usize], out: &mut Vec<Instance>) {
        match order.iter().copied().find(|&w| cur.live().contains(w)) {
            None => out.push(cur.clone()),
            Some(w) => {
                for c in cur.list(w).iter() {
                    match cur.assign(w, c) {
                        Ok(child) => self.expand_witness(&child, order, out),
                        Err(_) => Stats::bump(&self.stats.infeasible_dropped),
                    }
                }
            }
        }
    }

    /// Steps 2 and 3 for one witness coloring: sweep the fixed-set pairs in
    /// canonical signature order, removing dependencies; on a clean sweep,
    /// re-verify (later removals can resurrect earlier pairs) and either
    /// restart or recurse into the independent fixed sets.
    fn explore_after_witness(
        &self,
        inst: Instance,
        witness: &[usize],
        depth: usize,
    ) -> Result<Option<Partial>, SolveError> {
        if inst.live().is_empty() {
            Stats::bump(&self.stats.sat_leaves);
            return Ok(Some(inst.assigned_pairs()));
        }
        let classes: Vec<(FixedSetKey, VertexSet)> = inst
            .partition_by_signature(witness)
            .expect("a validated witness dominates every live vertex")
            .into_iter()
            .collect();
        let headers = pair_headers(&classes, witness);
        let nk_budget =
            (inst.graph().n() as u64 + 1) * (inst.universe().len() as u64 + 1) + 8;

        let mut stack: Vec<(Instance, usize, u64)> = vec![(inst, 0, 0)];
        while let Some((cur, start, restarts)) = stack.pop() {
            match self.first_dependent_pair(&cur, &classes, &headers, start) {
                Some((idx, pair)) => {
                    let children = self.remove_pair_dependencies(&cur, &pair)?;
                    for child in children.into_iter().rev() {
                        stack.push((child, idx, restarts));
                    }
                }
                None => {
                    if self.any_fixed_pair_dependent(&cur, &classes) {
                        // Every restart is preceded by at least one strictly
                        // shrinking expansion, so this terminates.
                        Stats::bump(&self.stats.sweep_restarts);
                        debug_assert!(restarts < nk_budget, "sweep restarts runaway");
                        stack.push((cur, 0, restarts + 1));
                    } else if let Some(found) = self.solve_fixed_sets(&cur, &classes, depth)? {
                        return Ok(Some(found));
                    }
                }
            }
        }
        Ok(None)
    }

    /// First dependent dynamic pair at or after `start`, visiting dynamic
    /// pairs largest-to-smallest by `|col(P)|`, then `|col(Q)|`.
    fn first_dependent_pair(
        &self,
        cur: &Instance,
        classes: &[(FixedSetKey, VertexSet)],
        headers: &[PairHeader],
        start: usize,
    ) -> Option<(usize, PairState)> {
        for (idx, hdr) in headers.iter().enumerate().skip(start) {
            let p_class = &classes[hdr.p_idx].1;
            let q_class = &classes[hdr.q_idx].1;
            let p_parts = cur.dynamic_partition(p_class);
            let q_parts = cur.dynamic_partition(q_class);
            let mut dyn_pairs: Vec<(ColorSet, ColorSet)> = Vec::new();
            for &cp in p_parts.keys() {
                for &cq in q_parts.keys() {
                    if !cp.intersection(cq).is_empty() {
                        dyn_pairs.push((cp, cq));
                    }
                }
            }
            dyn_pairs.sort_by_key(|&(cp, cq)| {
                (
                    std::cmp::Reverse(cp.len()),
                    std::cmp::Reverse(cq.len()),
                    cp.bits(),
                    cq.bits(),
                )
            });
            for (cp, cq) in dyn_pairs {
                if cur.dependent(&p_parts[&cp], &q_parts[&cq]) {
                    return Some((
                        idx,
                        PairState {
                            p_class: p_class.clone(),
                            q_class: q_class.clone(),
                            p_list: cp,
                            q_list: cq,
                            pivot: hdr.pivot,
                        },
                    ));
                }
            }
        }
        None
    }

    fn any_fixed_pair_dependent(&self, cur: &Instance, classes: &[(FixedSetKey, VertexSet)]) -> bool {
        for i in 0..classes.len() {
            let a = classes[i].1.intersection(cur.live());
            if a.is_empty() {
                continue;
            }
            for (_, class_b) in classes.iter().skip(i + 1) {
                let b = class_b.intersection(cur.live());
                if !b.is_empty() && cur.dependent(&a, &b) {
                    return true;
                }
            }
        }
        false
    }

    /// Step 3: the fixed sets are pairwise independent; color each one
    /// recursively with its strictly smaller universe and merge.
    fn solve_fixed_sets(
        &self,
        cur: &Instance,
        classes: &[(FixedSetKey, VertexSet)],
        depth: usize,
    ) -> Result<Option<Partial>, SolveError> {
        let mut merged = cur.assigned_pairs();
        for (_, class) in classes {
            let members = class.intersection(cur.live());
            if members.is_empty() {
                continue;
            }
            let sub = cur.restricted_to(&members);
            Stats::bump(&self.stats.instances_created);
            debug_assert!(
                sub.universe().is_subset(cur.universe()) && sub.universe() != cur.universe(),
                "fixed-set recursion must shrink the universe"
            );
            match self.solve_instance(&sub, depth + 1)? {
                Some(pairs) => merged.extend(pairs),
                None => return Ok(None),
            }
        }
        Ok(Some(merged))
    }

    /// Removes the dependencies between one dynamic-set pair, returning
    /// equivalent instances in which the pair's residues are independent.
    ///
    /// Loop shape: build the H view; remove the exceptional component of
    /// `G(P)` when one exists, otherwise branch on the pivot-adjacent vertex.
    /// Every expansion strictly shrinks the P residue, so each path performs
    /// at most `|P|` expansions (`|P| + 1` visits).
    pub fn remove_pair_dependencies(
        &self,
        inst: &Instance,
        pair: &PairState,
    ) -> Result<Vec<Instance>, SolveError> {
        let p0 = pair.p_residue(inst).len() as u64;
        let mut done = Vec::new();
        let mut work: Vec<(Instance, u64)> = vec![(inst.clone(), 0)];
        while let Some((cur, rounds)) = work.pop() {
            let p = pair.p_residue(&cur);
            let q = pair.q_residue(&cur);
            if p.is_empty() || q.is_empty() || !cur.dependent(&p, &q) {
                done.push(cur);
                continue;
            }
            debug_assert!(rounds < p0, "pair loop exceeded the |P| expansion bound");
            Stats::raise(&self.stats.max_pair_rounds, rounds + 1);

            let h = self.build_h_view(&cur, &p, &q, pair.pivot)?;
            let children = match self.find_exceptional_component(&cur, &h)? {
                Some(xc) => {
                    Stats::bump(&self.stats.exceptional_components);
                    self.remove_component(&cur, &xc)?
                }
                None => {
                    let bx = self.find_branching_vertex(&cur, &h)?;
                    self.branch_on_pivot(&cur, bx.vertex, pair)?
                }
            };
            for child in children.into_iter().rev() {
                work.push((child, rounds + 1));
            }
        }
        Ok(done)
    }

    /// Drops components of `G(P)` with no edge to Q (and vice versa) — they
    /// carry no dependencies — and checks that what remains hangs together.
    /// Two pieces would force an induced P5 through the pivot, which is
    /// extracted directly.
    pub fn build_h_view(
        &self,
        inst: &Instance,
        p: &VertexSet,
        q: &VertexSet,
        pivot: usize,
    ) -> Result<HView, SolveError> {
        Stats::bump(&self.stats.hview_builds);
        let g = inst.graph();
        let touches = |comp: &VertexSet, other: &VertexSet| {
            comp.iter().any(|v| g.neighbors(v).intersects(other))
        };
        let p_components: Vec<VertexSet> = g
            .induced_components(p)
            .into_iter()
            .filter(|c| touches(c, q))
            .collect();
        let q_components: Vec<VertexSet> = g
            .induced_components(q)
            .into_iter()
            .filter(|c| touches(c, p))
            .collect();
        let mut p_active = VertexSet::empty(g.n());
        for c in &p_components {
            p_active.union_with(c);
        }
        let mut q_active = VertexSet::empty(g.n());
        for c in &q_components {
            q_active.union_with(c);
        }
        debug_assert!(!p_active.is_empty() && !q_active.is_empty());
        debug_assert!(q_active.iter().all(|v| g.has_edge(pivot, v)));
        debug_assert!(p_active.iter().all(|v| !g.has_edge(pivot, v)));

        let union = p_active.union(&q_active);
        let pieces = g.induced_components(&union);
        if pieces.len() > 1 {
            // a - b - pivot - d - c with the crossing edges (a,b), (c,d)
            // taken from two different pieces.
            let (a, b) = crossing_edge(g, &pieces[0], &p_active, &q_active);
            let (c, d) = crossing_edge(g, &pieces[1], &p_active, &q_active);
            let cert = P5Certificate {
                path: [a, b, pivot, d, c],
            };
            debug_assert!(p5::verify_certificate(g, &cert));
            Stats::bump(&self.stats.disconnected_h);
            return Err(SolveError::NotP5Free(cert));
        }
        Ok(HView {
            p_components,
            q_components,
            p_active,
            q_active,
            pivot,
        })
    }

    /// The unique component of `G(P)` containing two vertices whose sets of
    /// adjacent Q-components are inclusion-incomparable, if any. Finding two
    /// such components is impossible in a P5-free graph, so that case rejects
    /// the input with a certificate.
    pub fn find_exceptional_component(
        &self,
        inst: &Instance,
        h: &HView,
    ) -> Result<Option<VertexSet>, SolveError> {
        let mut hits: Vec<usize> = Vec::new();
        for (xi, xc) in h.p_components.iter().enumerate() {
            let masks: Vec<VertexSet> = xc
                .iter()
                .map(|v| q_component_mask(inst.graph(), h, v))
                .collect();
            let incomparable = (0..masks.len()).any(|i| {
                (i + 1..masks.len())
                    .any(|j| !masks[i].is_subset(&masks[j]) && !masks[j].is_subset(&masks[i]))
            });
            if incomparable {
                hits.push(xi);
            }
        }
        match hits.len() {
            0 => Ok(None),
            1 => Ok(Some(h.p_components[hits[0]].clone())),
            _ => {
                Stats::bump(&self.stats.incomparable_violations);
                Err(self.reject_h(inst, h))
            }
        }
    }

    /// The P-vertex adjacent to the most retained Q-components (ties to the
    /// smallest id). With the exceptional component already removed, it must
    /// be adjacent to all of them and dominate all but at most one; anything
    /// else certifies an induced P5.
    pub fn find_branching_vertex(
        &self,
        inst: &Instance,
        h: &HView,
    ) -> Result<BranchVertex, SolveError> {
        let g = inst.graph();
        let mut best: Option<(usize, usize)> = None; // (count, vertex)
        for v in h.p_active.iter() {
            let count = q_component_mask(g, h, v).len();
            if best.is_none_or(|(bc, _)| count > bc) {
                best = Some((count, v));
            }
        }
        let (count, vertex) = best.expect("P side of an H view is never empty");
        if count < h.q_components.len() {
            Stats::bump(&self.stats.branch_vertex_violations);
            return Err(self.reject_h(inst, h));
        }
        let mut undominated_component = None;
        let mut misses = 0;
        for (i, yc) in h.q_components.iter().enumerate() {
            if !yc.is_subset(g.neighbors(vertex)) {
                misses += 1;
                undominated_component = Some(i);
            }
        }
        if misses >= 2 {
            Stats::bump(&self.stats.branch_vertex_violations);
            return Err(self.reject_h(inst, h));
        }
        Ok(BranchVertex {
            vertex,
            undominated_component,
        })
    }

    /// Branches on `x ∈ P`: one child per color in `col(P) ∩ col(Q)` (each
    /// empties the Q side except possibly fragments of one undominated
    /// component, which are then removed), plus one child restricting `x` to
    /// `col(P) − col(Q)` when that is non-empty.
    pub fn branch_on_pivot(
        &self,
        inst: &Instance,
        x: usize,
        pair: &PairState,
    ) -> Result<Vec<Instance>, SolveError> {
        Stats::bump(&self.stats.pivot_branches);
        debug_assert_eq!(inst.list(x), pair.p_list);
        let shared = pair.p_list.intersection(pair.q_list);
        let residue = pair.p_list.difference(pair.q_list);

        let mut assigns = Vec::new();
        for c in shared.iter() {
            match inst.assign(x, c) {
                Ok(child) => assigns.push(child),
                Err(_) => Stats::bump(&self.stats.infeasible_dropped),
            }
        }
        let mut atomic = assigns;
        let n_assign = atomic.len();
        if !residue.is_empty() && !fault_drop_residue_branch() {
            match inst.restrict(x, residue) {
                Ok(child) => atomic.push(child),
                Err(_) => Stats::bump(&self.stats.infeasible_dropped),
            }
        }
        for _ in &atomic {
            Stats::bump(&self.stats.instances_created);
        }
        self.observe(ExpansionRule::PivotBranch, inst, &atomic);

        let mut out = Vec::new();
        for (i, child) in atomic.into_iter().enumerate() {
            if i < n_assign {
                out.extend(self.clear_dependent_q_residue(child, pair)?);
            } else {
                out.push(child);
            }
        }
        Ok(out)
    }

    /// After an assignment child, removes every Q-residue component still
    /// dependent on the P residue. Each removal strictly shrinks the residue.
    fn clear_dependent_q_residue(
        &self,
        inst: Instance,
        pair: &PairState,
    ) -> Result<Vec<Instance>, SolveError> {
        let mut out = Vec::new();
        let mut work = vec![inst];
        while let Some(cur) = work.pop() {
            let p = pair.p_residue(&cur);
            let q = pair.q_residue(&cur);
            let target = if p.is_empty() || q.is_empty() {
                None
            } else {
                cur.graph()
                    .induced_components(&q)
                    .into_iter()
                    .find(|z| cur.dependent(z, &p))
            };
            match target {
                None => out.push(cur),
                Some(z) => work.extend(self.remove_component(&cur, &z)?.into_iter().rev()),
            }
        }
        Ok(out)
    }

    /// Removes a connected, list-uniform component from its dynamic set by
    /// coloring a dominating witness of the component in every
    /// list-consistent way. Every vertex of the component is dominated, so it
    /// either gets assigned or loses a color — in each child the whole
    /// component has left the dynamic set. An empty result means no witness
    /// coloring was feasible and the instance line dies.
    pub fn remove_component(
        &self,
        inst: &Instance,
        comp: &VertexSet,
    ) -> Result<Vec<Instance>, SolveError> {
        Stats::bump(&self.stats.component_removals);
        let g = inst.graph().clone();
        debug_assert!(comp.is_subset(inst.live()));
        debug_assert_eq!(g.induced_components(comp).len(), 1);
        let list = inst.list(comp.first().expect("component is non-empty"));
        debug_assert!(comp.iter().all(|v| inst.list(v) == list));

        let children = if dominating::find_clique_exceeding(&g, comp, list.len()).is_some() {
            Vec::new() // the component cannot be colored from its list at all
        } else {
            match dominating::find_dominating_witness(&g, comp, list.len()) {
                Some(w) => {
                    debug_assert!(w.is_valid(&g, comp));
                    self.witness_coloring_branches(inst, w.vertices())
                }
                None => return Err(self.reject(inst, comp)),
            }
        };
        self.observe(ExpansionRule::RemoveComponent, inst, &children);
        debug_assert!(children.iter().all(|ch| comp
            .iter()
            .all(|v| !ch.live().contains(v) || ch.list(v) != list)));
        Ok(children)
    }

    /// Extracts an induced-P5 certificate from `scope`. The callers invoke
    /// this only when a structural guarantee that holds for every P5-free
    /// graph has failed within `scope`, so the detector cannot miss.
    fn reject(&self, inst: &Instance, scope: &VertexSet) -> SolveError {
        let cert = p5::find_induced_p5_in(inst.graph(), scope)
            .expect("structural failure implies an induced P5 in scope");
        SolveError::NotP5Free(cert)
    }

    fn reject_h(&self, inst: &Instance, h: &HView) -> SolveError {
        let mut scope = h.p_active.union(&h.q_active);
        scope.insert(h.pivot);
        self.reject(inst, &scope)
    }

    fn explore_parallel(
        &self,
        children: Vec<Instance>,
        witness: &[usize],
        depth: usize,
    ) -> Result<Option<Partial>, SolveError> {
        let cursor = AtomicUsize::new(0);
        let stop = AtomicBool::new(false);
        let outcome: Mutex<Option<Result<Partial, SolveError>>> = Mutex::new(None);
        std::thread::scope(|scope| {
            for _ in 0..self.threads.min(children.len()) {
                scope.spawn(|| loop {
                    if stop.load(Ordering::Relaxed) {
                        break;
                    }
                    let i = cursor.fetch_add(1, Ordering::Relaxed);
                    if i >= children.len() {
                        break;
                    }
                    match self.explore_after_witness(children[i].clone(), witness, depth) {
                        Ok(None) => {}
                        Ok(Some(found)) => {
                            *outcome.lock().unwrap() = Some(Ok(found));
                            stop.store(true, Ordering::Relaxed);
                            break;
                        }
                        Err(e) => {
                            *outcome.lock().unwrap() = Some(Err(e));
                            stop.store(true, Ordering::Relaxed);
                            break;
                        }
                    }
                });
            }
        });
        match outcome.into_inner().unwrap() {
            None => Ok(None),
            Some(Ok(found)) => Ok(Some(found)),
            Some(Err(e)) => Err(e),
        }
    }
}

struct PairHeader {
    p_idx: usize,
    q_idx: usize,
    pivot: usize,
}

/// Builds the fixed-set pair list in canonical signature order. For each pair
/// the pivot is the smallest witness vertex in the signatures' symmetric
/// difference; the side whose signature contains it becomes Q.
fn pair_headers(classes: &[(FixedSetKey, VertexSet)], witness: &[usize]) -> Vec<PairHeader> {
    let mut headers = Vec::new();
    for i in 0..classes.len() {
        for j in (i + 1)..classes.len() {
            let (sig_a, sig_b) = (classes[i].0.bits(), classes[j].0.bits());
            let sym = sig_a ^ sig_b;
            debug_assert!(sym != 0, "distinct classes have distinct signatures");
            let (pivot, a_is_q) = (0..witness.len())
                .filter(|&t| sym >> t & 1 == 1)
                .map(|t| (witness[t], sig_a >> t & 1 == 1))
                .min()
                .expect("symmetric difference is non-empty");
            let (p_idx, q_idx) = if a_is_q { (j, i) } else { (i, j) };
            headers.push(PairHeader { p_idx, q_idx, pivot });
        }
    }
    headers
}

fn crossing_edge(g: &Graph, piece: &VertexSet, p: &VertexSet, q: &VertexSet) -> (usize, usize) {
    for v in piece.intersection(p).iter() {
        if let Some(u) = g.neighbors_in(v, &piece.intersection(q)).first() {
            return (v, u);
        }
    }
    unreachable!("every piece of the active union contains a crossing edge")
}

/// Indices of the retained Q-components adjacent to `v`, as a bitset over
/// component positions.
fn q_component_mask(g: &Graph, h: &HView, v: usize) -> VertexSet {
    let mut mask = VertexSet::empty(h.q_components.len());
    for (i, yc) in h.q_components.iter().enumerate() {
        if g.neighbors(v).intersects(yc) {
            mask.insert(i);
        }
    }
    mask
}
