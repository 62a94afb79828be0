//! Detection of induced five-vertex paths and certificate validation.
//!
//! The solver assumes its input has no induced P5; this module is the
//! gatekeeper. Detection enumerates ordered midpoints and extends both ways,
//! which is O(n^5) in the worst case — acceptable because it runs as a
//! pre-check (`--certify`) or once when a structural guarantee fails, never in
//! the branching loop.

use std::fmt;

use crate::graph::{Graph, VertexSet};

/// An ordered induced path `v1 - v2 - v3 - v4 - v5`: consecutive pairs
/// adjacent, all other pairs non-adjacent, all ids distinct.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct P5Certificate {
    pub path: [usize; 5],
}

impl fmt::Display for P5Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d, e] = self.path;
        write!(f, "{a} - {b} - {c} - {d} - {e}")
    }
}

/// Checks a certificate against the graph's adjacency.
pub fn verify_certificate(g: &Graph, cert: &P5Certificate) -> bool {
    let p = cert.path;
    if p.iter().any(|&v| v >= g.n()) {
        return false;
    }
    for i in 0..5 {
        for j in (i + 1)..5 {
            if p[i] == p[j] {
                return false;
            }
            let adjacent = g.has_edge(p[i], p[j]);
            if j == i + 1 {
                if !adjacent {
                    return false;
                }
            } else if adjacent {
                return false;
            }
        }
    }
    true
}

/// Finds an induced P5 in the whole graph.
pub fn find_induced_p5(g: &Graph) -> Option<P5Certificate> {
    find_induced_p5_in(g, &g.all_vertices())
}

/// Finds an induced P5 within the subgraph induced by `s`.
///
/// Deterministic: scans candidate vertices in ascending id order, so the same
/// graph always yields the same certificate.
pub fn find_induced_p5_in(g: &Graph, s: &VertexSet) -> Option<P5Certificate> {
    for v3 in s.iter() {
        let n3 = g.neighbors_in(v3, s);
        for v2 in n3.iter() {
            for v4 in n3.iter() {
                if v4 == v2 || g.has_edge(v2, v4) {
                    continue;
                }
                // v1: neighbor of v2, not adjacent to v3 or v4, not v3 itself.
                let mut cand1 = g.neighbors_in(v2, s);
                cand1.subtract(g.neighbors(v3));
                cand1.subtract(g.neighbors(v4));
                cand1.remove(v3);
                for v1 in cand1.iter() {
                    // v5: neighbor of v4, not adjacent to v1, v2 or v3.
                    let mut cand5 = g.neighbors_in(v4, s);
                    cand5.subtract(g.neighbors(v1));
                    cand5.subtract(g.neighbors(v2));
                    cand5.subtract(g.neighbors(v3));
                    cand5.remove(v3);
                    if let Some(v5) = cand5.first() {
                        let cert = P5Certificate {
                            path: [v1, v2, v3, v4, v5],
                        };
                        debug_assert!(verify_certificate(g, &cert));
                        return Some(cert);
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
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
    fn p5_path_detects_itself() {
        let g = path(5);
        let cert = find_induced_p5(&g).unwrap();
        assert_eq!(cert.path, [0, 1, 2, 3, 4]);
        assert!(verify_certificate(&g, &cert));
    }

    #[test]
    fn c5_is_p5_free() {
        // Oracle cross-check: every 5-subset of C5 induces C5 itself.
        let g = cycle(5);
        assert!(find_induced_p5(&g).is_none());
        assert!(oracle::find_p5_exhaustive(&g).is_none());
    }

    #[test]
    fn c6_contains_p5() {
        let g = cycle(6);
        let cert = find_induced_p5(&g).expect("C6 has an induced P5");
        assert!(verify_certificate(&g, &cert));
        assert!(oracle::find_p5_exhaustive(&g).is_some());
    }

    #[test]
    fn verify_rejects_chorded_orderings() {
        let g = cycle(5);
        // Any ordering of all five C5 vertices has a chord or a broken link.
        assert!(!verify_certificate(
            &g,
            &P5Certificate {
                path: [0, 1, 2, 3, 4]
            }
        ));
    }

    #[test]
    fn verify_rejects_duplicates_and_out_of_range() {
        let g = path(5);
        assert!(!verify_certificate(
            &g,
            &P5Certificate {
                path: [0, 1, 2, 3, 3]
            }
        ));
        assert!(!verify_certificate(
            &g,
            &P5Certificate {
                path: [0, 1, 2, 3, 9]
            }
        ));
    }

    #[test]
    fn detector_agrees_with_exhaustive_oracle_small() {
        let mut rng = StdRng::seed_from_u64(99);
        for round in 0..400 {
            let n = 5 + round % 6; // 5..=10
            let p = [0.2, 0.4, 0.6][round % 3];
            let g = random_graph(&mut rng, n, p);
            let fast = find_induced_p5(&g);
            let slow = oracle::find_p5_exhaustive(&g);
            assert_eq!(fast.is_some(), slow.is_some(), "graph: {}", g.to_dimacs());
            if let Some(c) = fast {
                assert!(verify_certificate(&g, &c));
            }
        }
    }

    #[test]
    fn detector_certificates_verify_on_random_graphs() {
        let mut rng = StdRng::seed_from_u64(5);
        let mut found = 0;
        for _ in 0..1000 {
            let n = rng.random_range(5..=12);
            let g = random_graph(&mut rng, n, rng.random_range(0.15..0.7));
            if let Some(c) = find_induced_p5(&g) {
                assert!(verify_certificate(&g, &c));
                found += 1;
            }
        }
        assert!(found > 200, "sample should contain many P5s, got {found}");
    }

    #[test]
    fn restricted_scope_ignores_outside_vertices() {
        // 0-1-2-3-4 is a P5 but only {0,1,2} are in scope.
        let g = path(5);
        let s = VertexSet::from_ids(5, [0, 1, 2]);
        assert!(find_induced_p5_in(&g, &s).is_none());
    }
}
