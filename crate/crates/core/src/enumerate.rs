//! Exhaustive enumeration of small instances: open-graph shapes up to vertex
//! relabelling, label assignments, strict partial orders and lowersets.

use crate::flowcheck::PartialOrder;
use crate::gf2graph::{Graph, MeasurementLabel, OpenGraph, VertexSet};

/// Bare open graph without labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shape {
    pub graph: Graph,
    pub inputs: VertexSet,
    pub outputs: VertexSet,
}

impl Shape {
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// The open graph with `labels[i]` on the `i`-th non-output.
    pub fn with_labels(&self, labels: &[MeasurementLabel]) -> OpenGraph {
        let n = self.n();
        let mut lab = vec![None; n];
        for (v, &l) in self.outputs.complement().iter().zip(labels) {
            lab[v] = Some(l);
        }
        OpenGraph::new(self.graph.clone(), self.inputs.clone(), self.outputs.clone(), lab)
            .expect("shape and labels line up")
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        // next_permutation
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
    }
}

fn pair_index(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect()
}

fn encode(n: usize, edges: u64, inputs: u64, outputs: u64) -> u64 {
    (edges << (2 * n)) | (inputs << n) | outputs
}

fn permute_mask(mask: u64, perm: &[usize]) -> u64 {
    perm.iter()
        .enumerate()
        .filter(|&(v, _)| (mask >> v) & 1 == 1)
        .fold(0, |acc, (_, &w)| acc | (1 << w))
}

/// One representative per isomorphism class of `(G, I, O)` on `n ≤ 5`
/// vertices, together with the size of its orbit. Summing the orbit sizes
/// gives `2^(n(n-1)/2) · 4^n`.
pub fn shapes(n: usize) -> Vec<(Shape, usize)> {
    assert!(n <= 5, "shape enumeration is meant for tiny n");
    let pairs = pair_index(n);
    let index_of = |a: usize, b: usize| {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        pairs.iter().position(|&p| p == (a, b)).unwrap()
    };
    let perms = permutations(n);
    let permute_edges = |edges: u64, perm: &[usize]| {
        pairs
            .iter()
            .enumerate()
            .filter(|&(k, _)| (edges >> k) & 1 == 1)
            .fold(0u64, |acc, (_, &(a, b))| acc | (1 << index_of(perm[a], perm[b])))
    };
    let mut out = Vec::new();
    for edges in 0u64..1 << pairs.len() {
        for inputs in 0u64..1 << n {
            for outputs in 0u64..1 << n {
                let code = encode(n, edges, inputs, outputs);
                let mut images: Vec<u64> = perms
                    .iter()
                    .map(|p| {
                        encode(
                            n,
                            permute_edges(edges, p),
                            permute_mask(inputs, p),
                            permute_mask(outputs, p),
                        )
                    })
                    .collect();
                if images.iter().any(|&c| c < code) {
                    continue;
                }
                images.sort_unstable();
                images.dedup();
                let graph = Graph::from_edges(
                    n,
                    pairs
                        .iter()
                        .enumerate()
                        .filter(|&(k, _)| (edges >> k) & 1 == 1)
                        .map(|(_, &e)| e),
                )
                .unwrap();
                out.push((
                    Shape {
                        graph,
                        inputs: VertexSet::from_mask(n, inputs),
                        outputs: VertexSet::from_mask(n, outputs),
                    },
                    images.len(),
                ));
            }
        }
    }
    out
}

/// Every assignment of `alphabet` to `k` slots, odometer order.
pub fn assignments<T: Copy>(alphabet: &[T], k: usize) -> Vec<Vec<T>> {
    let mut out = vec![Vec::with_capacity(k)];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                alphabet.iter().map(move |&a| {
                    let mut v = prefix.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    out
}

/// Every subset of `domain`, in increasing mask order of its members.
pub fn subsets(domain: &VertexSet) -> Vec<VertexSet> {
    let members: Vec<usize> = domain.iter().collect();
    (0u64..1 << members.len())
        .map(|m| {
            VertexSet::from_ids(
                domain.width(),
                members
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| (m >> i) & 1 == 1)
                    .map(|(_, &v)| v),
            )
        })
        .collect()
}

/// All strict partial orders on `domain` (a subset of `0..n`).
pub fn partial_orders(n: usize, domain: &VertexSet) -> Vec<PartialOrder> {
    let members: Vec<usize> = domain.iter().collect();
    let ordered: Vec<(usize, usize)> = members
        .iter()
        .flat_map(|&a| members.iter().filter(move |&&b| b != a).map(move |&b| (a, b)))
        .collect();
    let mut out = Vec::new();
    for m in 0u64..1 << ordered.len() {
        let pairs: Vec<(usize, usize)> = ordered
            .iter()
            .enumerate()
            .filter(|&(k, _)| (m >> k) & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        let closed = pairs.iter().all(|&(a, b)| {
            pairs.iter().all(|&(c, d)| c != b || pairs.contains(&(a, d)))
        });
        let antisymmetric = pairs.iter().all(|&(a, b)| !pairs.contains(&(b, a)));
        if closed && antisymmetric {
            out.push(PartialOrder::from_pairs(n, pairs).expect("closed antisymmetric relation"));
        }
    }
    out
}

/// All downward-closed subsets of `domain` under `order`, including `∅`
/// and `domain` itself.
pub fn lowersets(order: &PartialOrder, domain: &VertexSet) -> Vec<VertexSet> {
    subsets(domain)
        .into_iter()
        .filter(|s| {
            s.iter()
                .all(|v| domain.iter().all(|w| !order.lt(w, v) || s.contains(w)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_count_and_order() {
        let p = permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p[0], vec![0, 1, 2]);
        assert_eq!(p[1], vec![0, 2, 1]);
        assert_eq!(p[5], vec![2, 1, 0]);
    }

    #[test]
    fn orbits_cover_every_shape() {
        for n in 1..=3 {
            let total: usize = shapes(n).iter().map(|(_, k)| k).sum();
            assert_eq!(total, (1 << (n * (n - 1) / 2)) * (1 << (2 * n)));
        }
    }

    #[test]
    fn partial_order_counts() {
        // Labelled posets on 0..4 elements.
        for (k, count) in [(0, 1), (1, 1), (2, 3), (3, 19), (4, 219)] {
            let domain = VertexSet::from_ids(4, 0..k);
            assert_eq!(partial_orders(4, &domain).len(), count);
        }
    }

    #[test]
    fn lowersets_of_chain_and_antichain() {
        let d = VertexSet::full(3);
        assert_eq!(lowersets(&PartialOrder::total(3, &[0, 1, 2]), &d).len(), 4);
        assert_eq!(lowersets(&PartialOrder::empty(3), &d).len(), 8);
    }
}
