//! Orderings of the interior vertices.
//!
//! The homological upper bound is parameterized by a listing of the interior
//! vertices: at the `i`-th vertex only the edges reaching a boundary vertex or
//! one of the first `i-1` listed vertices are counted, giving the reduced
//! slope count `t~_i <= t_i`. This module computes those counts, searches for
//! orderings that minimize the bound, checks Schumaker's adjacency condition,
//! builds an ordering where every vertex sees two earlier edges of distinct
//! slopes, and evaluates the exactness certificate (`t~_i = t_i` or
//! `t~_i >= r+1` everywhere).
//!
//! Ties are always broken toward the lowest vertex index, so every search is
//! deterministic.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{self, vertex_term_hom, SplineSpace};
use crate::mesh::{SlopeKey, Triangulation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderingError {
    #[error("ordering is not a permutation of the interior vertices: {0}")]
    NotPermutation(String),
    #[error("internal inconsistency: no vertex ordering with two distinct earlier slopes exists for interior vertices {remaining:?}")]
    LemmaOrderFailed { remaining: Vec<usize> },
}

/// One interior vertex at its position in an ordering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderedVertex {
    pub vertex: usize,
    pub slope_count: u32,
    pub tilde_slope_count: u32,
    /// Incident edges whose other end is a boundary vertex or an earlier
    /// interior vertex.
    pub earlier_edges: Vec<usize>,
}

/// An ordering of the interior vertices together with the `t~` counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderedStats {
    entries: Vec<OrderedVertex>,
}

impl OrderedStats {
    pub fn entries(&self) -> &[OrderedVertex] {
        &self.entries
    }

    pub fn ordering(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.vertex).collect()
    }

    pub fn tilde_counts(&self) -> Vec<u32> {
        self.entries.iter().map(|e| e.tilde_slope_count).collect()
    }

    /// Vertices that see no admissible edge at their position.
    pub fn zero_tilde_vertices(&self) -> Vec<usize> {
        self.entries
            .iter()
            .filter(|e| e.tilde_slope_count == 0)
            .map(|e| e.vertex)
            .collect()
    }
}

fn check_permutation(tri: &Triangulation, order: &[usize]) -> Result<(), OrderingError> {
    let interior = tri.interior_vertices();
    if order.len() != interior.len() {
        return Err(OrderingError::NotPermutation(format!(
            "expected {} vertices, got {}",
            interior.len(),
            order.len()
        )));
    }
    let mut seen = vec![false; tri.vertices().len()];
    for &v in order {
        if v >= seen.len() || tri.is_boundary_vertex(v) {
            return Err(OrderingError::NotPermutation(format!(
                "vertex {v} is not an interior vertex"
            )));
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(OrderingError::NotPermutation(format!(
                "vertex {v} appears twice"
            )));
        }
    }
    Ok(())
}

/// Computes `t~_i` and the admissible edge sets for `order`.
pub fn tilde_slope_counts(
    tri: &Triangulation,
    order: &[usize],
) -> Result<OrderedStats, OrderingError> {
    check_permutation(tri, order)?;
    let mut earlier = vec![false; tri.vertices().len()];
    let mut entries = Vec::with_capacity(order.len());
    for &v in order {
        let earlier_edges: Vec<usize> = tri
            .vertex_edges(v)
            .iter()
            .copied()
            .filter(|&e| {
                let w = tri.edge(e).other(v);
                tri.is_boundary_vertex(w) || earlier[w]
            })
            .collect();
        entries.push(OrderedVertex {
            vertex: v,
            slope_count: tri.slope_count(v).expect("checked interior"),
            tilde_slope_count: tri.distinct_slopes(earlier_edges.iter().copied()),
            earlier_edges,
        });
        earlier[v] = true;
    }
    Ok(OrderedStats { entries })
}

/// First consecutive pair of the listing that shares no triangle.
pub fn first_non_adjacent_pair(tri: &Triangulation, order: &[usize]) -> Option<(usize, usize)> {
    // Two vertices of a triangulation are corners of a common triangle
    // exactly when they are joined by an edge.
    order
        .windows(2)
        .find(|w| tri.edge_between(w[0], w[1]).is_none())
        .map(|w| (w[0], w[1]))
}

/// True iff consecutive vertices of `order` are corners of a common triangle.
pub fn is_schumaker_ordering(tri: &Triangulation, order: &[usize]) -> bool {
    first_non_adjacent_pair(tri, order).is_none()
}

/// Outcome of the search for a Schumaker-valid ordering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "ordering", rename_all = "snake_case")]
pub enum SchumakerSearch {
    Found(Vec<usize>),
    /// The search was exhaustive and no valid ordering exists.
    NoneExists,
    /// The search budget ran out; existence is undecided.
    BudgetExhausted,
}

/// Interior-vertex counts up to which the Schumaker search is exhaustive.
pub const SCHUMAKER_EXACT_LIMIT: usize = 12;
const SCHUMAKER_STEP_BUDGET: usize = 1_000_000;

/// Searches for a Hamiltonian path in the graph of interior vertices joined
/// by edges.
pub fn find_schumaker_ordering(tri: &Triangulation) -> SchumakerSearch {
    let interior = tri.interior_vertices();
    let n = interior.len();
    if n == 0 {
        return SchumakerSearch::Found(Vec::new());
    }
    let position: HashMap<usize, usize> =
        interior.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let adjacency: Vec<Vec<usize>> = interior
        .iter()
        .map(|&v| {
            let mut nbrs: Vec<usize> = tri
                .vertex_edges(v)
                .iter()
                .filter_map(|&e| position.get(&tri.edge(e).other(v)).copied())
                .collect();
            nbrs.sort_unstable();
            nbrs
        })
        .collect();

    let budget = if n <= SCHUMAKER_EXACT_LIMIT {
        usize::MAX
    } else {
        SCHUMAKER_STEP_BUDGET
    };
    let mut search = PathSearch {
        adjacency: &adjacency,
        visited: vec![false; n],
        path: Vec::with_capacity(n),
        steps: 0,
        budget,
    };
    for start in 0..n {
        match search.extend_from(start) {
            PathOutcome::Found => {
                return SchumakerSearch::Found(search.path.iter().map(|&i| interior[i]).collect())
            }
            PathOutcome::OutOfBudget => return SchumakerSearch::BudgetExhausted,
            PathOutcome::Dead => {}
        }
    }
    SchumakerSearch::NoneExists
}

enum PathOutcome {
    Found,
    Dead,
    OutOfBudget,
}

struct PathSearch<'a> {
    adjacency: &'a [Vec<usize>],
    visited: Vec<bool>,
    path: Vec<usize>,
    steps: usize,
    budget: usize,
}

impl PathSearch<'_> {
    fn extend_from(&mut self, v: usize) -> PathOutcome {
        self.steps += 1;
        if self.steps > self.budget {
            return PathOutcome::OutOfBudget;
        }
        self.visited[v] = true;
        self.path.push(v);
        if self.path.len() == self.adjacency.len() {
            return PathOutcome::Found;
        }
        if self.remaining_reachable(v) {
            for i in 0..self.adjacency[v].len() {
                let w = self.adjacency[v][i];
                if self.visited[w] {
                    continue;
                }
                match self.extend_from(w) {
                    PathOutcome::Dead => {}
                    other => return other,
                }
            }
        }
        self.visited[v] = false;
        self.path.pop();
        PathOutcome::Dead
    }

    /// All unvisited vertices must be reachable from `v` through unvisited
    /// vertices, otherwise no Hamiltonian completion exists.
    fn remaining_reachable(&self, v: usize) -> bool {
        let mut seen = self.visited.clone();
        let mut stack = vec![v];
        let mut reached = 0;
        while let Some(u) = stack.pop() {
            for &w in &self.adjacency[u] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == self.adjacency.len() - self.path.len()
    }
}

/// Orders the interior vertices so that each one has at least two edges of
/// distinct slopes reaching boundary vertices or earlier vertices.
///
/// Admissibility only grows as more vertices are placed, so repeatedly
/// taking the lowest-index admissible vertex succeeds whenever any such
/// ordering exists.
pub fn lemma_order(tri: &Triangulation) -> Result<Vec<usize>, OrderingError> {
    let mut placed = vec![false; tri.vertices().len()];
    let mut remaining: Vec<usize> = tri.interior_vertices().to_vec();
    let mut order = Vec::with_capacity(remaining.len());
    while !remaining.is_empty() {
        let next = remaining.iter().position(|&v| {
            let admissible = tri.vertex_edges(v).iter().copied().filter(|&e| {
                let w = tri.edge(e).other(v);
                tri.is_boundary_vertex(w) || placed[w]
            });
            tri.distinct_slopes(admissible) >= 2
        });
        match next {
            Some(i) => {
                let v = remaining.remove(i);
                placed[v] = true;
                order.push(v);
            }
            None => return Err(OrderingError::LemmaOrderFailed { remaining }),
        }
    }
    let stats = tilde_slope_counts(tri, &order)?;
    if let Some(bad) = stats.entries().iter().find(|e| e.tilde_slope_count < 2) {
        return Err(OrderingError::LemmaOrderFailed {
            remaining: vec![bad.vertex],
        });
    }
    Ok(order)
}

/// Result of the exactness test for one ordering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub holds: bool,
    /// Vertices with `t~ < t` and `t~ < r + 2`.
    pub failing_vertices: Vec<usize>,
}

/// Holds iff every interior vertex has `t~ = t` or `t~ >= r + 2`; then the
/// upper and lower homological bounds coincide for every `k >= r`.
///
/// The threshold is `r + 2` rather than `r + 1`: the vertex term is the same
/// for all `t >= r + 2`, but `t = r + 1` has `Omega = r + 2` and a different
/// term (for `r = 1, k = 2` it is 2 against 3).
pub fn exactness_certificate(
    tri: &Triangulation,
    order: &[usize],
    r: u32,
) -> Result<Certificate, OrderingError> {
    let stats = tilde_slope_counts(tri, order)?;
    Ok(certificate_from_stats(&stats, r))
}

pub fn certificate_from_stats(stats: &OrderedStats, r: u32) -> Certificate {
    let failing_vertices: Vec<usize> = stats
        .entries()
        .iter()
        .filter(|e| e.tilde_slope_count != e.slope_count && e.tilde_slope_count < r + 2)
        .map(|e| e.vertex)
        .collect();
    Certificate {
        holds: failing_vertices.is_empty(),
        failing_vertices,
    }
}

/// Knobs for [`minimize_upper_bound`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Exhaustive branch and bound when the interior vertex count is at most this.
    pub exhaustive_limit: usize,
    /// Maximum number of full-ordering evaluations during hill climbing.
    pub max_evaluations: usize,
    /// Extra hill-climbing runs from seeded random orderings.
    pub restarts: usize,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            exhaustive_limit: 8,
            max_evaluations: 20_000,
            restarts: 0,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMethod {
    Exhaustive,
    Greedy,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderSearch {
    pub ordering: Vec<usize>,
    pub value: i64,
    pub method: SearchMethod,
    pub evaluations: usize,
}

/// Precomputed slope incidences for fast `t~` evaluation during searches.
/// Interior vertices are addressed by their position in
/// [`Triangulation::interior_vertices`].
struct OrderEvaluator {
    /// Slope classes reached through boundary neighbours.
    boundary_slopes: Vec<Vec<usize>>,
    /// `(interior neighbour position, slope class)` pairs.
    interior_links: Vec<Vec<(usize, usize)>>,
    slope_classes: Vec<usize>,
    max_terms: Vec<i64>,
    r: u32,
    k: u32,
}

impl OrderEvaluator {
    fn new(tri: &Triangulation, space: SplineSpace) -> Self {
        let interior = tri.interior_vertices();
        let position: HashMap<usize, usize> =
            interior.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut boundary_slopes = Vec::with_capacity(interior.len());
        let mut interior_links = Vec::with_capacity(interior.len());
        let mut slope_classes = Vec::with_capacity(interior.len());
        let mut max_terms = Vec::with_capacity(interior.len());
        for &v in interior {
            let mut ids: HashMap<&SlopeKey, usize> = HashMap::new();
            let mut from_boundary = Vec::new();
            let mut links = Vec::new();
            for &e in tri.vertex_edges(v) {
                let edge = tri.edge(e);
                let next = ids.len();
                let id = *ids.entry(&edge.slope).or_insert(next);
                match position.get(&edge.other(v)) {
                    Some(&p) => links.push((p, id)),
                    None => from_boundary.push(id),
                }
            }
            from_boundary.sort_unstable();
            from_boundary.dedup();
            max_terms.push(vertex_term_hom(ids.len() as u32, space.r(), space.k()));
            slope_classes.push(ids.len());
            boundary_slopes.push(from_boundary);
            interior_links.push(links);
        }
        Self {
            boundary_slopes,
            interior_links,
            slope_classes,
            max_terms,
            r: space.r(),
            k: space.k(),
        }
    }

    fn len(&self) -> usize {
        self.boundary_slopes.len()
    }

    fn tilde(&self, p: usize, placed: &[bool], seen: &mut Vec<bool>) -> u32 {
        seen.clear();
        seen.resize(self.slope_classes[p], false);
        let mut count = 0;
        for &s in &self.boundary_slopes[p] {
            if !std::mem::replace(&mut seen[s], true) {
                count += 1;
            }
        }
        for &(q, s) in &self.interior_links[p] {
            if placed[q] && !std::mem::replace(&mut seen[s], true) {
                count += 1;
            }
        }
        count
    }

    fn term(&self, p: usize, placed: &[bool], seen: &mut Vec<bool>) -> i64 {
        vertex_term_hom(self.tilde(p, placed, seen), self.r, self.k)
    }

    /// Sum of vertex terms of a full ordering of positions.
    fn total(&self, order: &[usize], scratch: &mut Vec<bool>) -> i64 {
        let mut placed = vec![false; self.len()];
        let mut sum = 0;
        for &p in order {
            sum += self.term(p, &placed, scratch);
            placed[p] = true;
        }
        sum
    }
}

struct BranchAndBound<'a> {
    eval: &'a OrderEvaluator,
    placed: Vec<bool>,
    prefix: Vec<usize>,
    best_sum: i64,
    best: Vec<usize>,
    nodes: usize,
    scratch: Vec<bool>,
}

impl BranchAndBound<'_> {
    fn run(&mut self, acc: i64, optimistic_rest: i64) {
        self.nodes += 1;
        if self.prefix.len() == self.eval.len() {
            if acc > self.best_sum {
                self.best_sum = acc;
                self.best = self.prefix.clone();
            }
            return;
        }
        if acc + optimistic_rest <= self.best_sum {
            return;
        }
        for p in 0..self.eval.len() {
            if self.placed[p] {
                continue;
            }
            let gain = self.eval.term(p, &self.placed, &mut self.scratch);
            self.placed[p] = true;
            self.prefix.push(p);
            self.run(acc + gain, optimistic_rest - self.eval.max_terms[p]);
            self.prefix.pop();
            self.placed[p] = false;
        }
    }
}

/// Finds an ordering with small homological upper bound.
///
/// Exhaustive branch and bound (returning the true minimum, lexicographically
/// first among ties) when the interior vertex count is within
/// `budget.exhaustive_limit`; otherwise greedy construction followed by
/// first-improvement pairwise-swap hill climbing.
pub fn minimize_upper_bound(
    tri: &Triangulation,
    space: SplineSpace,
    budget: SearchBudget,
) -> OrderSearch {
    let eval = OrderEvaluator::new(tri, space);
    let interior = tri.interior_vertices();
    let base = space.polynomial_dim() + tri.f_vector().f1_interior as i64 * space.edge_term();
    let n = eval.len();

    let (positions, sum, method, evaluations) = if n <= budget.exhaustive_limit {
        let optimistic: i64 = eval.max_terms.iter().sum();
        let mut bb = BranchAndBound {
            eval: &eval,
            placed: vec![false; n],
            prefix: Vec::with_capacity(n),
            best_sum: i64::MIN,
            best: Vec::new(),
            nodes: 0,
            scratch: Vec::new(),
        };
        bb.run(0, optimistic);
        (bb.best, bb.best_sum, SearchMethod::Exhaustive, bb.nodes)
    } else {
        let (order, sum, evals) = greedy_then_climb(&eval, budget);
        (order, sum, SearchMethod::Greedy, evals)
    };

    OrderSearch {
        ordering: positions.iter().map(|&p| interior[p]).collect(),
        value: base - sum,
        method,
        evaluations,
    }
}

fn greedy_then_climb(eval: &OrderEvaluator, budget: SearchBudget) -> (Vec<usize>, i64, usize) {
    let n = eval.len();
    let mut scratch = Vec::new();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best: Option<(i64, usize)> = None;
        for p in (0..n).filter(|&p| !placed[p]) {
            let gain = eval.term(p, &placed, &mut scratch);
            if best.is_none_or(|(g, _)| gain > g) {
                best = Some((gain, p));
            }
        }
        let (_, p) = best.expect("an unplaced vertex remains");
        placed[p] = true;
        order.push(p);
    }

    let mut evaluations = 0;
    let (mut best_order, mut best_sum) =
        hill_climb(eval, order, &mut evaluations, budget.max_evaluations);
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    for _ in 0..budget.restarts {
        let mut start: Vec<usize> = (0..n).collect();
        start.shuffle(&mut rng);
        let (candidate, sum) = hill_climb(eval, start, &mut evaluations, budget.max_evaluations);
        if sum > best_sum {
            best_sum = sum;
            best_order = candidate;
        }
    }
    (best_order, best_sum, evaluations)
}

fn hill_climb(
    eval: &OrderEvaluator,
    mut order: Vec<usize>,
    evaluations: &mut usize,
    limit: usize,
) -> (Vec<usize>, i64) {
    let mut scratch = Vec::new();
    let mut current = eval.total(&order, &mut scratch);
    *evaluations += 1;
    'outer: loop {
        for i in 0..order.len() {
            for j in i + 1..order.len() {
                if *evaluations >= limit {
                    break 'outer;
                }
                order.swap(i, j);
                let candidate = eval.total(&order, &mut scratch);
                *evaluations += 1;
                if candidate > current {
                    current = candidate;
                    continue 'outer;
                }
                order.swap(i, j);
            }
        }
        break;
    }
    (order, current)
}

/// Convenience: UBH of the ordering returned by [`lemma_order`].
pub fn lemma_order_bound(tri: &Triangulation, space: SplineSpace) -> Result<i64, OrderingError> {
    let order = lemma_order(tri)?;
    let stats = tilde_slope_counts(tri, &order)?;
    Ok(bounds::upper_bound_from_stats(tri, &stats, space))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{lower_bound_hom, upper_bound_hom};
    use crate::fixtures;

    /// Interior vertices of the 12-split in figure order (gamma_1, gamma_2,
    /// gamma_3, gamma_0).
    fn ps12_named() -> (Triangulation, [usize; 4]) {
        let (centroid, medial, tri) = fixtures::ps12_single_named();
        (tri, [medial[0], medial[1], medial[2], centroid])
    }

    #[test]
    fn ps12_tilde_counts() {
        let (tri, [g1, g2, g3, g0]) = ps12_named();
        let stats = tilde_slope_counts(&tri, &[g1, g2, g3, g0]).unwrap();
        assert_eq!(stats.tilde_counts(), vec![2, 2, 2, 3]);
        let stats = tilde_slope_counts(&tri, &[g0, g1, g2, g3]).unwrap();
        assert_eq!(stats.tilde_counts()[0], 3);
        assert!(stats.zero_tilde_vertices().is_empty());
    }

    #[test]
    fn empty_ordering_on_mesh_without_interior_vertices() {
        let tri = fixtures::two_triangles();
        let stats = tilde_slope_counts(&tri, &[]).unwrap();
        assert!(stats.entries().is_empty());
        assert!(is_schumaker_ordering(&tri, &[]));
        assert_eq!(lemma_order(&tri).unwrap(), Vec::<usize>::new());
    }

    #[test]
    fn rejects_non_permutations() {
        let (tri, [g1, g2, g3, _]) = ps12_named();
        assert!(tilde_slope_counts(&tri, &[g1, g2, g3]).is_err());
        assert!(tilde_slope_counts(&tri, &[g1, g2, g3, g3]).is_err());
        assert!(tilde_slope_counts(&tri, &[g1, g2, g3, 0]).is_err());
    }

    #[test]
    fn ps12_schumaker() {
        let (tri, [g1, g2, g3, g0]) = ps12_named();
        assert!(!is_schumaker_ordering(&tri, &[g1, g2, g0, g3]));
        assert!(!is_schumaker_ordering(&tri, &[g0, g3, g1, g2]));
        assert_eq!(find_schumaker_ordering(&tri), SchumakerSearch::NoneExists);
    }

    #[test]
    fn small_meshes_have_schumaker_orderings() {
        let fan = fixtures::square_fan();
        assert_eq!(
            find_schumaker_ordering(&fan),
            SchumakerSearch::Found(vec![0])
        );
        assert!(is_schumaker_ordering(&fan, &[0]));
        let grid = fixtures::grid(3, 3);
        match find_schumaker_ordering(&grid) {
            SchumakerSearch::Found(order) => assert!(is_schumaker_ordering(&grid, &order)),
            other => panic!("expected a path, got {other:?}"),
        }
        let ms = fixtures::morgan_scott(true);
        let (a, b) = (ms.interior_vertices()[0], ms.interior_vertices()[1]);
        assert!(ms.edge_between(a, b).is_some());
    }

    #[test]
    fn lemma_order_examples() {
        let (tri, _) = ps12_named();
        let order = lemma_order(&tri).unwrap();
        let stats = tilde_slope_counts(&tri, &order).unwrap();
        assert!(stats.tilde_counts().iter().all(|&t| t >= 2));
        let fan = fixtures::fan(5);
        assert_eq!(lemma_order(&fan).unwrap(), vec![0]);
    }

    #[test]
    fn certificate_examples() {
        let (tri, [g1, g2, g3, g0]) = ps12_named();
        let cert = exactness_certificate(&tri, &[g1, g2, g3, g0], 1).unwrap();
        assert!(cert.holds);
        // The centre of a 5x5 grid has only interior neighbours, so listing
        // it first leaves it with no admissible edge.
        let grid = fixtures::grid(5, 5);
        let mut order = grid.interior_vertices().to_vec();
        order.retain(|&v| v != 12);
        order.insert(0, 12);
        let stats = tilde_slope_counts(&grid, &order).unwrap();
        assert_eq!(stats.zero_tilde_vertices(), vec![12]);
        let cert = certificate_from_stats(&stats, 1);
        assert!(!cert.holds);
        assert!(cert.failing_vertices.contains(&12));
    }

    #[test]
    fn exhaustive_minimum_on_ps12() {
        let tri = fixtures::ps12_single();
        let space = SplineSpace::new(1, 2).unwrap();
        let found = minimize_upper_bound(&tri, space, SearchBudget::default());
        assert_eq!(found.method, SearchMethod::Exhaustive);
        assert_eq!(found.value, 12);
        assert_eq!(upper_bound_hom(&tri, &found.ordering, space).unwrap(), 12);
    }

    #[test]
    fn no_interior_vertices_minimum() {
        let tri = fixtures::two_triangles();
        let space = SplineSpace::new(1, 2).unwrap();
        let found = minimize_upper_bound(&tri, space, SearchBudget::default());
        assert!(found.ordering.is_empty());
        assert_eq!(found.value, 6 + 1);
    }

    #[test]
    fn greedy_matches_reported_value() {
        let grid = fixtures::grid(5, 4);
        let space = SplineSpace::new(1, 3).unwrap();
        let budget = SearchBudget {
            exhaustive_limit: 0,
            restarts: 2,
            seed: 7,
            ..SearchBudget::default()
        };
        let found = minimize_upper_bound(&grid, space, budget);
        assert_eq!(found.method, SearchMethod::Greedy);
        assert_eq!(
            upper_bound_hom(&grid, &found.ordering, space).unwrap(),
            found.value
        );
        assert!(found.value >= lower_bound_hom(&grid, space));
        assert_eq!(found, minimize_upper_bound(&grid, space, budget));
    }
}
