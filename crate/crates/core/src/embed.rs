//! Backtracking search for simplicial embeddings.
//!
//! An embedding of `S` into `Y` is an injective vertex map `J` with `J(σ) ∈ Y` for every face
//! `σ` of `S`. Pattern vertices are placed in a greedy order (most already-placed neighbors
//! first, then descending degree), and every face of `S` is checked as soon as its last vertex
//! is placed.

use alloc::vec;
use alloc::vec::Vec;

use crate::complex::Complex;

/// Default node budget for searches that must stay bounded.
pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000;

/// The search tried more candidate assignments than its budget allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("embedding search exceeded its budget of {budget} nodes")]
pub struct BudgetExhausted {
    pub budget: u64,
}

/// Number of embeddings of `pattern` into `host`.
pub fn count_embeddings(pattern: &Complex, host: &Complex) -> u64 {
    Search::new(pattern, host, u64::MAX).run(false).expect("unbounded search")
}

/// Whether `host` contains a copy of `pattern`.
pub fn contains_copy(pattern: &Complex, host: &Complex) -> bool {
    Search::new(pattern, host, u64::MAX).run(true).expect("unbounded search") > 0
}

pub fn count_embeddings_with_budget(pattern: &Complex, host: &Complex, budget: u64) -> Result<u64, BudgetExhausted> {
    Search::new(pattern, host, budget).run(false)
}

pub fn contains_copy_with_budget(pattern: &Complex, host: &Complex, budget: u64) -> Result<bool, BudgetExhausted> {
    Search::new(pattern, host, budget).run(true).map(|c| c > 0)
}

struct Search<'a> {
    host: &'a Complex,
    host_adj: Vec<Vec<u32>>,
    /// Pattern vertices (internal ids) in placement order.
    order: Vec<u32>,
    pattern_degree: Vec<usize>,
    /// For each position, the positions of already-placed pattern neighbors.
    placed_neighbors: Vec<Vec<usize>>,
    /// For each position, the faces (as positions) completed by placing that vertex.
    checks: Vec<Vec<Vec<usize>>>,
    budget: u64,
    nodes: u64,
}

impl<'a> Search<'a> {
    fn new(pattern: &Complex, host: &'a Complex, budget: u64) -> Self {
        let k = pattern.num_vertices();
        let adj = pattern.adjacency();

        let mut order: Vec<u32> = Vec::with_capacity(k);
        let mut position = vec![usize::MAX; k];
        let mut placed_count = vec![0usize; k];
        for _ in 0..k {
            let next = (0..k as u32)
                .filter(|&v| position[v as usize] == usize::MAX)
                .max_by(|&a, &b| {
                    let key = |v: u32| (placed_count[v as usize], adj[v as usize].len());
                    key(a).cmp(&key(b)).then(b.cmp(&a))
                })
                .expect("unplaced vertex");
            position[next as usize] = order.len();
            order.push(next);
            for &u in &adj[next as usize] {
                placed_count[u as usize] += 1;
            }
        }

        let placed_neighbors = order
            .iter()
            .enumerate()
            .map(|(pos, &v)| {
                adj[v as usize].iter().map(|&u| position[u as usize]).filter(|&p| p < pos).collect()
            })
            .collect();

        let mut checks = vec![Vec::new(); k];
        for level in pattern.levels().iter().skip(1) {
            for face in level {
                let positions: Vec<usize> = face.iter().map(|&v| position[v as usize]).collect();
                let last = *positions.iter().max().expect("nonempty face");
                checks[last].push(positions);
            }
        }

        Search {
            host,
            host_adj: host.adjacency(),
            pattern_degree: order.iter().map(|&v| adj[v as usize].len()).collect(),
            order,
            placed_neighbors,
            checks,
            budget,
            nodes: 0,
        }
    }

    fn run(mut self, stop_at_first: bool) -> Result<u64, BudgetExhausted> {
        if self.order.len() > self.host.num_vertices() {
            return Ok(0);
        }
        let mut image = Vec::with_capacity(self.order.len());
        let mut used = vec![false; self.host.num_vertices()];
        self.extend(&mut image, &mut used, stop_at_first)
    }

    fn extend(&mut self, image: &mut Vec<u32>, used: &mut [bool], stop_at_first: bool) -> Result<u64, BudgetExhausted> {
        let pos = image.len();
        if pos == self.order.len() {
            return Ok(1);
        }

        // Candidates: neighbors of the placed neighbor with the smallest host degree, else all.
        let anchor = self.placed_neighbors[pos]
            .iter()
            .map(|&p| image[p])
            .min_by_key(|&h| self.host_adj[h as usize].len());
        let candidates: Vec<u32> = match anchor {
            Some(h) => self.host_adj[h as usize].clone(),
            None => (0..self.host.num_vertices() as u32).collect(),
        };

        let mut total = 0u64;
        let mut buf: Vec<u32> = Vec::new();
        for h in candidates {
            if used[h as usize] || self.host_adj[h as usize].len() < self.pattern_degree[pos] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(BudgetExhausted { budget: self.budget });
            }
            image.push(h);
            let ok = self.checks[pos].iter().all(|face| {
                buf.clear();
                buf.extend(face.iter().map(|&p| image[p]));
                buf.sort_unstable();
                self.host.has_internal(&buf)
            });
            if ok {
                used[h as usize] = true;
                let found = self.extend(image, used, stop_at_first);
                used[h as usize] = false;
                match found {
                    Ok(c) => total = total.saturating_add(c),
                    Err(e) => {
                        image.pop();
                        return Err(e);
                    }
                }
            }
            image.pop();
            if stop_at_first && total > 0 {
                break;
            }
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::Vertex;
    use proptest::prelude::*;

    fn edge() -> Complex {
        Complex::from_facets([[1, 2]]).unwrap()
    }

    /// Enumerates every injection V(S) → V(Y) and keeps those mapping faces to faces.
    fn brute_force(pattern: &Complex, host: &Complex) -> u64 {
        fn go(pattern: &Complex, host: &Complex, image: &mut Vec<Vertex>, count: &mut u64) {
            let pv = pattern.vertices();
            if image.len() == pv.len() {
                let ok = (0..=pattern.dim().max(0) as usize).all(|d| {
                    pattern.faces(d).all(|face| {
                        let mapped: Vec<Vertex> = face
                            .iter()
                            .map(|v| image[pv.iter().position(|x| x == v).unwrap()])
                            .collect();
                        host.contains_face(&mapped)
                    })
                });
                if ok {
                    *count += 1;
                }
                return;
            }
            for &h in host.vertices() {
                if !image.contains(&h) {
                    image.push(h);
                    go(pattern, host, image, count);
                    image.pop();
                }
            }
        }
        let mut count = 0;
        go(pattern, host, &mut Vec::new(), &mut count);
        count
    }

    #[test]
    fn edge_into_cycle() {
        let cycle = catalog::full_simplex(2).skeleton(1);
        assert_eq!(count_embeddings(&edge(), &cycle), 6);
        assert!(contains_copy(&edge(), &cycle));
    }

    #[test]
    fn triangle_into_tetrahedron_boundary() {
        assert_eq!(count_embeddings(&catalog::full_simplex(2), &catalog::simplex_boundary(3)), 24);
        assert!(!contains_copy(&catalog::full_simplex(2), &catalog::full_simplex(2).skeleton(1)));
    }

    #[test]
    fn self_embedding_exists() {
        for s in [catalog::torus_seven(), catalog::s_t(4), catalog::unbalanced_disc()] {
            assert!(count_embeddings(&s, &s) >= 1);
        }
    }

    #[test]
    fn empty_pattern_and_small_host() {
        assert_eq!(count_embeddings(&Complex::empty(), &edge()), 1);
        assert_eq!(count_embeddings(&catalog::full_simplex(2), &edge()), 0);
        assert_eq!(count_embeddings(&edge(), &Complex::empty()), 0);
    }

    #[test]
    fn budget_is_enforced() {
        let host = catalog::full_simplex(6).skeleton(1);
        let pattern = catalog::full_simplex(4).skeleton(1);
        assert_eq!(
            count_embeddings_with_budget(&pattern, &host, 10),
            Err(BudgetExhausted { budget: 10 })
        );
        assert_eq!(contains_copy_with_budget(&pattern, &host, 1000), Ok(true));
    }

    fn arb_complex(max_vertex: u32, max_facets: usize) -> impl Strategy<Value = Complex> {
        prop::collection::vec(prop::collection::btree_set(1..=max_vertex, 1..=3), 0..=max_facets)
            .prop_map(|facets| Complex::from_facets(facets.into_iter().map(|f| f.into_iter().collect::<Vec<_>>())).unwrap())
    }

    proptest! {
        #[test]
        fn matches_brute_force(pattern in arb_complex(5, 4), host in arb_complex(7, 9)) {
            let expected = brute_force(&pattern, &host);
            prop_assert_eq!(count_embeddings(&pattern, &host), expected);
            prop_assert_eq!(contains_copy(&pattern, &host), expected > 0);
        }
    }
}
