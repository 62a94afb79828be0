//! Ground-truth brute force and reproducible test-graph generators.
//!
//! Everything here exists to check the solver, so the implementations favor
//! being obviously correct over being fast: plain backtracking, full
//! enumeration, definition-level subgraph tests. Generated corpora are
//! deterministic per seed (ChaCha8, identified as `prng=chacha8` in emitted
//! headers).

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::instance::{Color, ColorSet, Instance};
use crate::p5;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("brute force guard: n = {0} exceeds 25 vertices")]
    TooLargeForBruteForce(usize),
    #[error("enumeration guard: n = {0} exceeds 8 vertices")]
    TooLargeForEnumeration(usize),
    #[error("enumeration exceeded the node budget")]
    BudgetExceeded,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("rejection sampling supports n <= 12, got {0}")]
    RejectionTooLarge(usize),
    #[error("rejection sampling gave up after {0} attempts")]
    RejectionBudget(usize),
    #[error("clique size {size} invalid for n = {n}")]
    BadCliqueSize { size: usize, n: usize },
    #[error("density {0} outside [0, 1]")]
    BadDensity(f64),
    #[error("graph must have at least one vertex")]
    EmptyGraph,
}

// ---------------------------------------------------------------------------
// Brute-force list coloring
// ---------------------------------------------------------------------------

fn backtrack(
    g: &Graph,
    lists: &[ColorSet],
    order: &[usize],
    idx: usize,
    coloring: &mut Vec<Color>,
    budget: &mut u64,
    out: &mut dyn FnMut(&[Color]) -> bool,
) -> Result<bool, OracleError> {
    if idx == order.len() {
        return Ok(out(coloring));
    }
    let v = order[idx];
    for c in lists[v].iter() {
        if *budget == 0 {
            return Err(OracleError::BudgetExceeded);
        }
        *budget -= 1;
        let clash = g
            .neighbors(v)
            .iter()
            .any(|u| coloring[u] == c && order[..idx].contains(&u));
        if clash {
            continue;
        }
        coloring[v] = c;
        if backtrack(g, lists, order, idx + 1, coloring, budget, out)? {
            coloring[v] = 0;
            return Ok(true);
        }
        coloring[v] = 0;
    }
    Ok(false)
}

/// First list-respecting proper coloring in lexicographic vertex/color order,
/// or `None`. Guarded at 25 vertices.
pub fn brute_force_list_color(
    g: &Graph,
    lists: &[ColorSet],
) -> Result<Option<Vec<Color>>, OracleError> {
    if g.n() > 25 {
        return Err(OracleError::TooLargeForBruteForce(g.n()));
    }
    let order: Vec<usize> = (0..g.n()).collect();
    let mut coloring = vec![0; g.n()];
    let mut found = None;
    let mut budget = u64::MAX;
    backtrack(
        g,
        lists,
        &order,
        0,
        &mut coloring,
        &mut budget,
        &mut |sol| {
            found = Some(sol.to_vec());
            true
        },
    )?;
    Ok(found)
}

/// All list-respecting proper colorings, lexicographic order. Guarded at 8
/// vertices.
pub fn enumerate_solutions(g: &Graph, lists: &[ColorSet]) -> Result<Vec<Vec<Color>>, OracleError> {
    if g.n() > 8 {
        return Err(OracleError::TooLargeForEnumeration(g.n()));
    }
    let order: Vec<usize> = (0..g.n()).collect();
    let mut coloring = vec![0; g.n()];
    let mut all = Vec::new();
    let mut budget = u64::MAX;
    backtrack(
        g,
        lists,
        &order,
        0,
        &mut coloring,
        &mut budget,
        &mut |sol| {
            all.push(sol.to_vec());
            false
        },
    )?;
    Ok(all)
}

/// Solution set of an [`Instance`] over its domain (live and assigned
/// vertices), as full-length vectors with `0` outside the domain. Enumeration
/// is lexicographic; `budget` caps search nodes.
pub fn instance_solutions(inst: &Instance, budget: u64) -> Result<Vec<Vec<Color>>, OracleError> {
    let g = inst.graph();
    let mut lists = vec![ColorSet::EMPTY; g.n()];
    let mut order = Vec::new();
    for v in 0..g.n() {
        if inst.live().contains(v) {
            lists[v] = inst.list(v);
            order.push(v);
        } else if let Some(c) = inst.color_of(v) {
            lists[v] = ColorSet::EMPTY.with(c);
            order.push(v);
        }
    }
    let mut coloring = vec![0; g.n()];
    let mut all = Vec::new();
    let mut budget = budget;
    backtrack(g, &lists, &order, 0, &mut coloring, &mut budget, &mut |s| {
        all.push(s.to_vec());
        false
    })?;
    Ok(all)
}

// ---------------------------------------------------------------------------
// Definition-level subgraph oracles
// ---------------------------------------------------------------------------

/// Exhaustive induced-P5 search: every 5-subset, every ordering. The
/// independent cross-check for the fast detector.
pub fn find_p5_exhaustive(g: &Graph) -> Option<[usize; 5]> {
    let n = g.n();
    let vs: Vec<usize> = (0..n).collect();
    let mut subset = [0usize; 5];
    find_p5_subsets(g, &vs, 0, 0, &mut subset)
}

fn find_p5_subsets(
    g: &Graph,
    vs: &[usize],
    start: usize,
    depth: usize,
    subset: &mut [usize; 5],
) -> Option<[usize; 5]> {
    if depth == 5 {
        return order_as_p5(g, subset);
    }
    for i in start..vs.len() {
        subset[depth] = vs[i];
        if let Some(found) = find_p5_subsets(g, vs, i + 1, depth + 1, subset) {
            return Some(found);
        }
    }
    None
}

fn order_as_p5(g: &Graph, subset: &[usize; 5]) -> Option<[usize; 5]> {
    let mut perm = [0usize; 5];
    let mut used = [false; 5];
    order_as_p5_rec(g, subset, &mut perm, &mut used, 0)
}

fn order_as_p5_rec(
    g: &Graph,
    subset: &[usize; 5],
    perm: &mut [usize; 5],
    used: &mut [bool; 5],
    depth: usize,
) -> Option<[usize; 5]> {
    if depth == 5 {
        if perm[0] > perm[4] {
            return None; // each path counted once, forward orientation
        }
        for i in 0..5 {
            for j in (i + 1)..5 {
                let adjacent = g.has_edge(perm[i], perm[j]);
                if (j == i + 1) != adjacent {
                    return None;
                }
            }
        }
        return Some(*perm);
    }
    for i in 0..5 {
        if !used[i] {
            used[i] = true;
            perm[depth] = subset[i];
            if let Some(found) = order_as_p5_rec(g, subset, perm, used, depth + 1) {
                return Some(found);
            }
            used[i] = false;
        }
    }
    None
}

/// Clique number of `G(s)` by straightforward clique enumeration.
pub fn max_clique_size(g: &Graph, s: &VertexSet) -> usize {
    let mut best = 0;
    let members: Vec<usize> = s.iter().collect();
    fn extend(g: &Graph, cand: &[usize], size: usize, best: &mut usize) {
        if size > *best {
            *best = size;
        }
        if size + cand.len() <= *best {
            return;
        }
        for (i, &v) in cand.iter().enumerate() {
            let next: Vec<usize> = cand[i + 1..]
                .iter()
                .copied()
                .filter(|&u| g.has_edge(u, v))
                .collect();
            extend(g, &next, size + 1, best);
        }
    }
    extend(g, &members, 0, &mut best);
    best
}

// ---------------------------------------------------------------------------
// Exhaustive small-graph supply
// ---------------------------------------------------------------------------

/// All labeled connected graphs on `n` vertices, by upper-triangle bitmask
/// sweep. No isomorphism reduction — at n = 7 that is 2^21 masks, which is
/// cheap enough to sweep directly.
pub fn connected_graphs(n: usize) -> impl Iterator<Item = Graph> {
    assert!(n >= 1 && n <= 7, "bitmask sweep supports 1..=7 vertices");
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    let total: u64 = 1 << pairs.len();
    (0..total).filter_map(move |mask| {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let g = Graph::from_edges(n, &edges).expect("generated edges are valid");
        if g.induced_components(&g.all_vertices()).len() == 1 {
            Some(g)
        } else {
            None
        }
    })
}

/// The connected graphs that additionally contain no induced P5.
pub fn connected_p5_free_graphs(n: usize) -> impl Iterator<Item = Graph> {
    connected_graphs(n).filter(|g| p5::find_induced_p5(g).is_none())
}

// ---------------------------------------------------------------------------
// Seeded generators
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Model {
    /// Clique side plus independent side with density-controlled cross edges.
    /// Split graphs contain no induced 2K2, hence no P5. `clique_size: None`
    /// draws the partition at random.
    Split { clique_size: Option<usize> },
    /// Random cotree evaluated bottom-up; cographs are P4-free, a fortiori
    /// P5-free.
    Cograph,
    /// Erdos–Renyi filtered through the P5 detector; only for n <= 12.
    Rejection,
}

#[derive(Clone, Copy, PartialEq, Debug)]
pub struct GeneratorSpec {
    pub model: Model,
    pub n: usize,
    pub density: f64,
    pub seed: u64,
}

impl GeneratorSpec {
    fn validate(&self) -> Result<(), GenError> {
        if self.n == 0 {
            return Err(GenError::EmptyGraph);
        }
        if !(0.0..=1.0).contains(&self.density) {
            return Err(GenError::BadDensity(self.density));
        }
        Ok(())
    }

    /// Header line recorded in emitted DIMACS files.
    pub fn provenance(&self) -> String {
        let model = match self.model {
            Model::Split { clique_size: None } => "split".to_string(),
            Model::Split {
                clique_size: Some(c),
            } => format!("split clique_size={c}"),
            Model::Cograph => "cograph".to_string(),
            Model::Rejection => "rejection".to_string(),
        };
        format!(
            "c generator model={model} n={} density={:.3} seed={} prng=chacha8",
            self.n, self.density, self.seed
        )
    }
}

/// Generates a P5-free graph per the spec; deterministic per seed.
pub fn generate(spec: &GeneratorSpec) -> Result<Graph, GenError> {
    spec.validate()?;
    match spec.model {
        Model::Split { clique_size } => {
            let (g, _, _) = split_graph(spec.n, spec.density, spec.seed, clique_size)?;
            Ok(g)
        }
        Model::Cograph => {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            Ok(random_cotree(spec.n, &mut rng).realize())
        }
        Model::Rejection => rejection_p5_free(spec.n, spec.density, spec.seed),
    }
}

/// DIMACS text with a provenance comment header.
pub fn generate_dimacs(spec: &GeneratorSpec) -> Result<String, GenError> {
    let g = generate(spec)?;
    Ok(format!("{}\n{}", spec.provenance(), g.to_dimacs()))
}

/// Split-graph generator that also reports the construction's clique number
/// and clique side. Every independent vertex is kept strictly below full
/// adjacency to the clique side, so omega equals the clique side size.
pub fn split_graph(
    n: usize,
    density: f64,
    seed: u64,
    clique_size: Option<usize>,
) -> Result<(Graph, usize, Vec<usize>), GenError> {
    if n == 0 {
        return Err(GenError::EmptyGraph);
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(GenError::BadDensity(density));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let clique: Vec<usize> = match clique_size {
        Some(c) => {
            if c == 0 || c > n {
                return Err(GenError::BadCliqueSize { size: c, n });
            }
            let mut ids: Vec<usize> = (0..n).collect();
            for i in 0..c {
                let j = rng.random_range(i..n);
                ids.swap(i, j);
            }
            let mut side = ids[..c].to_vec();
            side.sort_unstable();
            side
        }
        None => {
            let mut side: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.5)).collect();
            if side.is_empty() {
                side.push(0);
            }
            side
        }
    };
    let in_clique = VertexSet::from_ids(n, clique.iter().copied());
    let mut edges = Vec::new();
    for (i, &u) in clique.iter().enumerate() {
        for &v in &clique[i + 1..] {
            edges.push((u, v));
        }
    }
    let mut cross: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &u in &clique {
        for v in 0..n {
            if !in_clique.contains(v) && rng.random_bool(density) {
                edges.push((u, v));
                cross[v].push(u);
            }
        }
    }
    // An independent vertex adjacent to the whole clique side would raise the
    // clique number; drop one of its cross edges.
    let top = *clique.last().expect("clique side is non-empty");
    for v in 0..n {
        if !in_clique.contains(v) && cross[v].len() == clique.len() {
            edges.retain(|&e| e != (top, v));
        }
    }
    let g = Graph::from_edges(n, &edges).expect("construction stays in range");
    Ok((g, clique.len(), clique))
}

fn gnp(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("valid edges")
}

fn rejection_p5_free(n: usize, density: f64, seed: u64) -> Result<Graph, GenError> {
    if n > 12 {
        return Err(GenError::RejectionTooLarge(n));
    }
    const ATTEMPTS: usize = 100_000;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ATTEMPTS {
        let g = gnp(n, density, &mut rng);
        if p5::find_induced_p5(&g).is_none() {
            return Ok(g);
        }
    }
    Err(GenError::RejectionBudget(ATTEMPTS))
}

/// A random Erdos–Renyi graph for negative tests; *not* filtered, so it
/// usually does contain induced P5s at moderate density.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    gnp(n, p, &mut rng)
}

// ---------------------------------------------------------------------------
// Cotrees
// ---------------------------------------------------------------------------

/// Cograph construction tree: leaves are single vertices; internal nodes take
/// the disjoint union or the join of their children.
#[derive(Clone, Debug)]
pub enum Cotree {
    Leaf,
    Union(Box<Cotree>, Box<Cotree>),
    Join(Box<Cotree>, Box<Cotree>),
}

impl Cotree {
    pub fn leaves(&self) -> usize {
        match self {
            Cotree::Leaf => 1,
            Cotree::Union(l, r) | Cotree::Join(l, r) => l.leaves() + r.leaves(),
        }
    }

    /// Builds the cograph, leaf ids assigned left to right.
    pub fn realize(&self) -> Graph {
        let mut edges = Vec::new();
        let n = self.collect_edges(0, &mut edges);
        Graph::from_edges(n, &edges).expect("cotree edges are valid")
    }

    fn collect_edges(&self, offset: usize, edges: &mut Vec<(usize, usize)>) -> usize {
        match self {
            Cotree::Leaf => 1,
            Cotree::Union(l, r) => {
                let a = l.collect_edges(offset, edges);
                let b = r.collect_edges(offset + a, edges);
                a + b
            }
            Cotree::Join(l, r) => {
                let a = l.collect_edges(offset, edges);
                let b = r.collect_edges(offset + a, edges);
                for u in offset..offset + a {
                    for v in offset + a..offset + a + b {
                        edges.push((u, v));
                    }
                }
                a + b
            }
        }
    }
}

/// Chromatic number straight off the cotree: leaf 1, union max, join sum.
pub fn cograph_chromatic(t: &Cotree) -> usize {
    match t {
        Cotree::Leaf => 1,
        Cotree::Union(l, r) => cograph_chromatic(l).max(cograph_chromatic(r)),
        Cotree::Join(l, r) => cograph_chromatic(l) + cograph_chromatic(r),
    }
}

/// Uniformly random recursive split into union/join nodes.
pub fn random_cotree(n: usize, rng: &mut ChaCha8Rng) -> Cotree {
    assert!(n >= 1);
    if n == 1 {
        return Cotree::Leaf;
    }
    let a = rng.random_range(1..n);
    let left = Box::new(random_cotree(a, rng));
    let right = Box::new(random_cotree(n - a, rng));
    if rng.random_bool(0.5) {
        Cotree::Union(left, right)
    } else {
        Cotree::Join(left, right)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn full_lists(n: usize, k: usize) -> Vec<ColorSet> {
        vec![ColorSet::first_k(k); n]
    }

    fn complete(n: usize) -> Graph {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn brute_force_k4_and_c5() {
        let k4 = complete(4);
        assert_eq!(brute_force_list_color(&k4, &full_lists(4, 3)).unwrap(), None);
        let c5 = cycle(5);
        let sol = brute_force_list_color(&c5, &full_lists(5, 3))
            .unwrap()
            .expect("C5 is 3-colorable");
        for i in 0..5 {
            assert_ne!(sol[i], sol[(i + 1) % 5]);
        }
    }

    #[test]
    fn brute_force_guard() {
        let g = Graph::from_edges(26, &[]).unwrap();
        assert_eq!(
            brute_force_list_color(&g, &full_lists(26, 2)).unwrap_err(),
            OracleError::TooLargeForBruteForce(26)
        );
    }

    #[test]
    fn enumerate_examples() {
        let single = Graph::from_edges(1, &[]).unwrap();
        assert_eq!(
            enumerate_solutions(&single, &[ColorSet::from_colors([1, 2])])
                .unwrap()
                .len(),
            2
        );

        let edge = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let ones = vec![ColorSet::from_colors([1]); 2];
        assert!(enumerate_solutions(&edge, &ones).unwrap().is_empty());

        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let sols = enumerate_solutions(&p3, &full_lists(3, 2)).unwrap();
        assert_eq!(sols, vec![vec![1, 2, 1], vec![2, 1, 2]]);
    }

    #[test]
    fn solution_count_matches_full_assignment_sweep() {
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..100 {
            let n = rng.random_range(1..=6);
            let k = rng.random_range(1..=3usize);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.random_bool(0.5) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            let lists = full_lists(n, k);

            // Independent route: sweep all k^n assignments.
            let mut expected = 0u64;
            let total = (k as u64).pow(n as u32);
            for code in 0..total {
                let mut x = code;
                let assignment: Vec<Color> = (0..n)
                    .map(|_| {
                        let c = (x % k as u64) as Color + 1;
                        x /= k as u64;
                        c
                    })
                    .collect();
                let proper = edges.iter().all(|&(u, v)| assignment[u] != assignment[v]);
                if proper {
                    expected += 1;
                }
            }
            let got = enumerate_solutions(&g, &lists).unwrap().len() as u64;
            assert_eq!(got, expected);
            let any = brute_force_list_color(&g, &lists).unwrap();
            assert_eq!(any.is_some(), expected > 0);
        }
    }

    #[test]
    fn instance_solutions_respects_assignments() {
        let g = Arc::new(Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap());
        let inst = Instance::new_uniform(g, 2).assign(0, 1).unwrap();
        // 0 fixed to 1, so 1 must be 2 (propagated), and 2 must be 1.
        let sols = instance_solutions(&inst, 1 << 20).unwrap();
        assert_eq!(sols, vec![vec![1, 2, 1]]);
    }

    #[test]
    fn split_graphs_are_p5_free_with_known_omega() {
        for seed in 0..10 {
            let (g, omega, clique) = split_graph(50, 0.5, seed, None).unwrap();
            assert!(p5::find_induced_p5(&g).is_none());
            assert_eq!(omega, clique.len());
        }
        // omega really is the clique number (oracle-checked at small n).
        for seed in 0..20 {
            let (g, omega, _) = split_graph(12, 0.6, seed, Some(4)).unwrap();
            assert_eq!(max_clique_size(&g, &g.all_vertices()), omega);
            assert_eq!(omega, 4);
        }
    }

    #[test]
    fn cographs_are_p5_free_and_chromatic_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..15 {
            let t = random_cotree(6, &mut rng);
            let g = t.realize();
            assert!(p5::find_induced_p5(&g).is_none());
            let chi = cograph_chromatic(&t);
            let sat = brute_force_list_color(&g, &full_lists(g.n(), chi))
                .unwrap()
                .is_some();
            assert!(sat, "chromatic recursion overshoots");
            if chi > 1 {
                let below = brute_force_list_color(&g, &full_lists(g.n(), chi - 1))
                    .unwrap()
                    .is_some();
                assert!(!below, "chromatic recursion undershoots");
            }
        }
        assert_eq!(cograph_chromatic(&Cotree::Leaf), 1);
        let k2 = Cotree::Join(Box::new(Cotree::Leaf), Box::new(Cotree::Leaf));
        assert_eq!(cograph_chromatic(&k2), 2);
        assert_eq!(k2.realize().m(), 1);
    }

    #[test]
    fn cograph_generation_is_p5_free_at_target_size() {
        let spec = GeneratorSpec {
            model: Model::Cograph,
            n: 40,
            density: 0.5,
            seed: 9,
        };
        let g = generate(&spec).unwrap();
        assert_eq!(g.n(), 40);
        assert!(p5::find_induced_p5(&g).is_none());
    }

    #[test]
    fn generation_is_deterministic_per_seed() {
        for model in [
            Model::Split { clique_size: None },
            Model::Cograph,
            Model::Rejection,
        ] {
            let spec = GeneratorSpec {
                model,
                n: 10,
                density: 0.4,
                seed: 1234,
            };
            let a = generate_dimacs(&spec).unwrap();
            let b = generate_dimacs(&spec).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn rejection_guard_and_validity() {
        assert_eq!(
            rejection_p5_free(20, 0.3, 0).unwrap_err(),
            GenError::RejectionTooLarge(20)
        );
        for seed in 0..10 {
            let g = rejection_p5_free(9, 0.3, seed).unwrap();
            assert!(find_p5_exhaustive(&g).is_none());
        }
    }

    #[test]
    fn exhaustive_p5_finds_path_ordering() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let found = find_p5_exhaustive(&g).unwrap();
        assert_eq!(found, [0, 1, 2, 3, 4]);
    }

    #[test]
    fn connected_graph_counts_are_right() {
        // Known labeled connected graph counts for n = 1..=5.
        let expected = [1u64, 1, 4, 38, 728];
        for (i, &want) in expected.iter().enumerate() {
            let n = i + 1;
            assert_eq!(connected_graphs(n).count() as u64, want, "n = {n}");
        }
        // Sanity: the P5-free filter keeps everything below n = 5 and drops
        // exactly the path (and nothing else is that sparse a path) at n = 5.
        assert_eq!(connected_p5_free_graphs(4).count(), 38);
        let with_p5 = connected_graphs(5)
            .filter(|g| p5::find_induced_p5(g).is_some())
            .count();
        assert!(with_p5 > 0);
        assert_eq!(connected_p5_free_graphs(5).count() + with_p5, 728);
    }

    #[test]
    fn max_clique_oracle_on_known_graphs() {
        assert_eq!(max_clique_size(&complete(6), &VertexSet::full(6)), 6);
        assert_eq!(max_clique_size(&cycle(5), &VertexSet::full(5)), 2);
        let g = cycle(5);
        assert_eq!(max_clique_size(&g, &VertexSet::from_ids(5, [0, 2])), 1);
    }
}
