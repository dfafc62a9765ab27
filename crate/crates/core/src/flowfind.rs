//! Pauli flow search: a backward layered GF(2) search and an exhaustive
//! brute-force decision procedure for small instances.
//!
//! Layers count from the outputs backwards: outputs sit in layer 0 and a
//! vertex in layer `k` is measured before every vertex in a lower layer, so
//! `u < v` iff `layer(u) > layer(v)`.

use std::collections::HashMap;

use thiserror::Error;

use crate::flowcheck::{input_label_constraint, CorrectionFlow, PartialOrder, Verdict, Violation};
use crate::gf2graph::linalg::{self, Equation};
use crate::gf2graph::{Axis, OpenGraph, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FindError {
    #[error("brute force needs |Oᶜ| ≤ {max_measured} and |Iᶜ| ≤ {max_correctors}, got {measured} and {correctors}")]
    Capacity {
        measured: usize,
        correctors: usize,
        max_measured: usize,
        max_correctors: usize,
    },
    #[error("required order pair ({0}, {1}) is not between measured vertices")]
    BadRequirement(usize, usize),
}

/// Limits within which the brute-force oracle runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BruteForceBound {
    pub max_measured: usize,
    pub max_correctors: usize,
}

impl Default for BruteForceBound {
    fn default() -> Self {
        Self {
            max_measured: 6,
            max_correctors: 8,
        }
    }
}

impl BruteForceBound {
    pub fn admits(&self, og: &OpenGraph) -> bool {
        og.non_outputs().len() <= self.max_measured && og.non_inputs().len() <= self.max_correctors
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NoneReason {
    /// A measured input has `Z` in its label.
    InputLabel(Violation),
    /// Exhaustive search over all total orders.
    BruteForce,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Found,
    NoneExists(NoneReason),
    /// Layering stalled and the instance exceeds the brute-force bound.
    NotFound,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Layering rounds, or total orders visited by brute force.
    pub nodes: usize,
    /// GF(2) systems solved, or candidate sets tested by brute force.
    pub solves: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowSearchResult {
    pub outcome: Outcome,
    pub flow: Option<CorrectionFlow>,
    /// Layer of every vertex (outputs 0); present with layered flows.
    pub layers: Option<Vec<usize>>,
    pub stats: SearchStats,
}

impl FlowSearchResult {
    pub fn found(&self) -> bool {
        self.outcome == Outcome::Found
    }

    fn none(reason: NoneReason, stats: SearchStats) -> Self {
        Self {
            outcome: Outcome::NoneExists(reason),
            flow: None,
            layers: None,
            stats,
        }
    }
}

/// Layered search with the default brute-force fallback bound.
pub fn find_pauli_flow(og: &OpenGraph) -> FlowSearchResult {
    find_pauli_flow_with(og, BruteForceBound::default())
}

pub fn find_pauli_flow_with(og: &OpenGraph, bound: BruteForceBound) -> FlowSearchResult {
    let mut stats = SearchStats::default();
    if let Verdict::Violated(v) = input_label_constraint(og) {
        return FlowSearchResult::none(NoneReason::InputLabel(v), stats);
    }
    let n = og.n();
    let columns: Vec<usize> = og.non_inputs().iter().collect();
    let mut p: Vec<Option<VertexSet>> = vec![None; n];
    let mut layers = vec![0usize; n];
    let mut unsolved = og.non_outputs();
    let mut layer = 0;
    while !unsolved.is_empty() {
        layer += 1;
        stats.nodes += 1;
        let mut solved = Vec::new();
        for u in unsolved.iter() {
            stats.solves += 1;
            if let Some(pu) = solve_vertex(og, &columns, &unsolved, u) {
                solved.push((u, pu));
            }
        }
        if solved.is_empty() {
            if bound.admits(og) {
                let brute = find_pauli_flow_bruteforce(og, bound)
                    .expect("bound checked above");
                stats.nodes += brute.stats.nodes;
                stats.solves += brute.stats.solves;
                debug_assert!(!brute.found(), "layered search is complete");
                return FlowSearchResult { stats, ..brute };
            }
            return FlowSearchResult {
                outcome: Outcome::NotFound,
                flow: None,
                layers: None,
                stats,
            };
        }
        for (u, pu) in solved {
            unsolved.remove(u);
            layers[u] = layer;
            p[u] = Some(pu);
        }
    }
    let measured = og.non_outputs();
    let rows = (0..n)
        .map(|u| {
            if !measured.contains(u) {
                return VertexSet::empty(n);
            }
            VertexSet::from_ids(n, measured.iter().filter(|&v| layers[v] < layers[u]))
        })
        .collect();
    let order = PartialOrder::from_relation(rows).expect("layer order is acyclic");
    FlowSearchResult {
        outcome: Outcome::Found,
        flow: Some(CorrectionFlow::new(p, order)),
        layers: Some(layers),
        stats,
    }
}

/// Minimum-weight `p(u) ⊆ Iᶜ` meeting `u`'s own conditions while leaving
/// every other vertex of `pending` unaffected.
fn solve_vertex(og: &OpenGraph, columns: &[usize], pending: &VertexSet, u: usize) -> Option<VertexSet> {
    let g = og.graph();
    let m = columns.len();
    // Row for "w ∈ Odd(p)", "w ∈ Odd[p]" or "w ∈ p" in column coordinates.
    let row = |w: usize, axis: Axis| {
        VertexSet::from_ids(
            m,
            columns.iter().enumerate().filter_map(|(j, &c)| {
                let hit = match axis {
                    Axis::X => g.has_edge(w, c),
                    Axis::Y => g.has_edge(w, c) ^ (w == c),
                    Axis::Z => w == c,
                };
                hit.then_some(j)
            }),
        )
    };
    let mut eqs = Vec::new();
    for w in pending.iter() {
        let label = og.label(w).expect("pending vertices are measured");
        for axis in [Axis::X, Axis::Y, Axis::Z] {
            if label.contains(axis) {
                eqs.push(Equation {
                    coeffs: row(w, axis),
                    rhs: w == u,
                });
            }
        }
    }
    let sol = linalg::solve(&eqs, m)?.min_weight();
    Some(VertexSet::from_ids(og.n(), sol.iter().map(|j| columns[j])))
}

/// Every subset of `Iᶜ`, sorted by (cardinality, lex), with the sets whose
/// membership the flow conditions test: `Odd(p)`, `Odd[p]`, `p`.
struct CandidateTable {
    sets: Vec<VertexSet>,
    affected: Vec<[VertexSet; 3]>,
    axes: Vec<[bool; 3]>,
}

impl CandidateTable {
    fn new(og: &OpenGraph, correctors: &[usize]) -> Self {
        let n = og.n();
        let g = og.graph();
        let mut sets: Vec<VertexSet> = (0u64..1 << correctors.len())
            .map(|mask| {
                VertexSet::from_ids(
                    n,
                    correctors
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| (mask >> i) & 1 == 1)
                        .map(|(_, &c)| c),
                )
            })
            .collect();
        sets.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp_lex(b)));
        let affected = sets
            .iter()
            .map(|p| {
                let odd = g.odd(p);
                let closed = &odd ^ p;
                [odd, closed, p.clone()]
            })
            .collect();
        let axes = (0..n)
            .map(|w| match og.label(w) {
                Some(l) if !og.outputs().contains(w) => [Axis::X, Axis::Y, Axis::Z].map(|a| l.contains(a)),
                _ => [false; 3],
            })
            .collect();
        Self { sets, affected, axes }
    }

    /// Candidate `ci` is a valid `p(u)` when exactly the vertices of `below`
    /// are not above `u`.
    fn admits(&self, ci: usize, u: usize, below: &VertexSet) -> bool {
        let sets = &self.affected[ci];
        (0..3).all(|a| {
            if self.axes[u][a] && !sets[a].contains(u) {
                return false;
            }
            below.iter().all(|w| !(self.axes[w][a] && sets[a].contains(w)))
        })
    }
}

/// Exhaustive decision over all total orders of `Oᶜ`.
pub fn find_pauli_flow_bruteforce(
    og: &OpenGraph,
    bound: BruteForceBound,
) -> Result<FlowSearchResult, FindError> {
    find_pauli_flow_bruteforce_filtered(og, bound, &[])
}

/// Brute force restricted to total orders containing every `(a, b)` of
/// `required` as `a < b`.
pub fn find_pauli_flow_bruteforce_filtered(
    og: &OpenGraph,
    bound: BruteForceBound,
    required: &[(usize, usize)],
) -> Result<FlowSearchResult, FindError> {
    let measured: Vec<usize> = og.non_outputs().iter().collect();
    let correctors: Vec<usize> = og.non_inputs().iter().collect();
    if !bound.admits(og) {
        return Err(FindError::Capacity {
            measured: measured.len(),
            correctors: correctors.len(),
            max_measured: bound.max_measured,
            max_correctors: bound.max_correctors,
        });
    }
    if let Some(&(a, b)) = required
        .iter()
        .find(|&&(a, b)| a == b || !measured.contains(&a) || !measured.contains(&b))
    {
        return Err(FindError::BadRequirement(a, b));
    }
    let n = og.n();
    let mut stats = SearchStats::default();
    let table = CandidateTable::new(og, &correctors);
    let candidates = &table.sets;

    let mut memo: HashMap<(usize, VertexSet), Option<usize>> = HashMap::new();
    let k = measured.len();
    for perm in crate::enumerate::permutations(k) {
        let seq: Vec<usize> = perm.iter().map(|&i| measured[i]).collect();
        let position = |v: usize| seq.iter().position(|&w| w == v).unwrap();
        if required.iter().any(|&(a, b)| position(a) > position(b)) {
            continue;
        }
        stats.nodes += 1;
        let mut below = VertexSet::empty(n);
        let mut chosen = Vec::with_capacity(k);
        for &u in &seq {
            let pick = *memo.entry((u, below.clone())).or_insert_with(|| {
                (0..candidates.len()).find(|&ci| {
                    stats.solves += 1;
                    table.admits(ci, u, &below)
                })
            });
            match pick {
                Some(ci) => chosen.push((u, ci)),
                None => break,
            }
            below.insert(u);
        }
        if chosen.len() == k {
            let mut p = vec![None; n];
            for (u, ci) in chosen {
                p[u] = Some(candidates[ci].clone());
            }
            return Ok(FlowSearchResult {
                outcome: Outcome::Found,
                flow: Some(CorrectionFlow::new(p, PartialOrder::total(n, &seq))),
                layers: None,
                stats,
            });
        }
    }
    Ok(FlowSearchResult::none(NoneReason::BruteForce, stats))
}

/// DFS nodes a correction-closed search may visit before giving up.
pub const CLOSED_SEARCH_BUDGET: usize = 1 << 20;

/// First Pauli flow, in the brute-force enumeration order, whose dropped
/// corrections are covered by the synthesized strategy: whenever `w ≠ u` is
/// a measured vertex in `p(u) ∪ Odd(p(u))` with `¬(u < w)`, the strategy's
/// dependency order has `w ≺ u`. Truncating such a strategy at a lowerset
/// never leaves a dropped byproduct on an unmeasured qubit.
///
/// `NotFound` means no such flow exists within the budget; a Pauli flow may
/// still exist.
pub fn find_correction_closed_flow(og: &OpenGraph, bound: BruteForceBound) -> Result<FlowSearchResult, FindError> {
    let measured = og.non_outputs();
    let correctors: Vec<usize> = og.non_inputs().iter().collect();
    if !bound.admits(og) {
        return Err(FindError::Capacity {
            measured: measured.len(),
            correctors: correctors.len(),
            max_measured: bound.max_measured,
            max_correctors: bound.max_correctors,
        });
    }
    let n = og.n();
    let table = CandidateTable::new(og, &correctors);
    let reach = table
        .affected
        .iter()
        .zip(&table.sets)
        .map(|([odd, ..], p)| (odd | p).intersection(&measured))
        .collect();
    let mut search = ClosedSearch {
        table,
        reach,
        memo: HashMap::new(),
        chosen: vec![0; n],
        pred: vec![VertexSet::empty(n); n],
        seq: Vec::new(),
        stats: SearchStats::default(),
    };
    if search.extend(&measured, &VertexSet::empty(n)) {
        let mut p = vec![None; n];
        for &u in &search.seq {
            p[u] = Some(search.table.sets[search.chosen[u]].clone());
        }
        return Ok(FlowSearchResult {
            outcome: Outcome::Found,
            flow: Some(CorrectionFlow::new(p, PartialOrder::total(n, &search.seq))),
            layers: None,
            stats: search.stats,
        });
    }
    Ok(FlowSearchResult {
        outcome: Outcome::NotFound,
        flow: None,
        layers: None,
        stats: search.stats,
    })
}

struct ClosedSearch {
    table: CandidateTable,
    /// `(p ∪ Odd(p)) ∩ Oᶜ` per candidate.
    reach: Vec<VertexSet>,
    memo: HashMap<(usize, VertexSet), Vec<usize>>,
    chosen: Vec<usize>,
    /// Strategy predecessors of each placed vertex.
    pred: Vec<VertexSet>,
    seq: Vec<usize>,
    stats: SearchStats,
}

impl ClosedSearch {
    fn extend(&mut self, remaining: &VertexSet, below: &VertexSet) -> bool {
        if remaining.is_empty() {
            return true;
        }
        for u in remaining.iter() {
            if self.stats.nodes >= CLOSED_SEARCH_BUDGET {
                return false;
            }
            self.stats.nodes += 1;
            let mut pred_u = VertexSet::empty(below.width());
            for a in below.iter() {
                if self.reach[self.chosen[a]].contains(u) {
                    pred_u.insert(a);
                    pred_u = &pred_u | &self.pred[a];
                }
            }
            let table = &self.table;
            let stats = &mut self.stats;
            let valid = self
                .memo
                .entry((u, below.clone()))
                .or_insert_with(|| {
                    (0..table.sets.len())
                        .filter(|&ci| {
                            stats.solves += 1;
                            table.admits(ci, u, below)
                        })
                        .collect()
                })
                .clone();
            let mut rest = remaining.clone();
            rest.remove(u);
            let mut next = below.clone();
            next.insert(u);
            for ci in valid {
                if !self.reach[ci].intersection(below).is_subset(&pred_u) {
                    continue;
                }
                self.chosen[u] = ci;
                self.pred[u] = pred_u.clone();
                self.seq.push(u);
                if self.extend(&rest, &next) {
                    return true;
                }
                self.seq.pop();
            }
        }
        false
    }
}

/// Flow for correction synthesis: a correction-closed flow when the instance
/// is within `bound` and one exists, otherwise the layered search result.
pub fn find_synthesis_flow(og: &OpenGraph, bound: BruteForceBound) -> FlowSearchResult {
    if let Verdict::Violated(v) = input_label_constraint(og) {
        return FlowSearchResult::none(NoneReason::InputLabel(v), SearchStats::default());
    }
    let mut stats = SearchStats::default();
    if let Ok(closed) = find_correction_closed_flow(og, bound) {
        if closed.found() {
            return closed;
        }
        stats = closed.stats;
    }
    let layered = find_pauli_flow_with(og, bound);
    FlowSearchResult {
        stats: SearchStats {
            nodes: stats.nodes + layered.stats.nodes,
            solves: stats.solves + layered.stats.solves,
        },
        ..layered
    }
}

/// Longest chain of the flow order, counted in comparisons.
pub fn flow_depth(f: &CorrectionFlow) -> usize {
    f.order.longest_chain()
}
