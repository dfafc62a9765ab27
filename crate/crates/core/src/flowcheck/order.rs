use crate::gf2graph::VertexSet;

use super::FlowError;

/// Strict partial order on `0..n`, stored transitively closed:
/// `successors[u] = {v : u < v}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PartialOrder {
    successors: Vec<VertexSet>,
}

impl PartialOrder {
    /// The empty order (every pair incomparable).
    pub fn empty(n: usize) -> Self {
        Self {
            successors: vec![VertexSet::empty(n); n],
        }
    }

    /// Transitive closure of the generator pairs `(a, b)` meaning `a < b`.
    /// Fails if the closure is not irreflexive.
    pub fn from_pairs<I>(n: usize, pairs: I) -> Result<Self, FlowError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut successors = vec![VertexSet::empty(n); n];
        for (a, b) in pairs {
            if a >= n || b >= n {
                return Err(FlowError::VertexOutOfRange(a.max(b)));
            }
            successors[a].insert(b);
        }
        Self::close(successors)
    }

    /// Builds the order from a successor relation given as rows.
    pub fn from_relation(rows: Vec<VertexSet>) -> Result<Self, FlowError> {
        Self::close(rows)
    }

    fn close(mut successors: Vec<VertexSet>) -> Result<Self, FlowError> {
        let n = successors.len();
        for k in 0..n {
            let row_k = successors[k].clone();
            for row in successors.iter_mut() {
                if row.contains(k) {
                    *row = row.union(&row_k);
                }
            }
        }
        if let Some(u) = (0..n).find(|&u| successors[u].contains(u)) {
            return Err(FlowError::CyclicOrder(u));
        }
        Ok(Self { successors })
    }

    /// The chain `seq[0] < seq[1] < …`.
    pub fn total(n: usize, seq: &[usize]) -> Self {
        let mut successors = vec![VertexSet::empty(n); n];
        for (i, &a) in seq.iter().enumerate() {
            for &b in &seq[i + 1..] {
                successors[a].insert(b);
            }
        }
        Self { successors }
    }

    pub fn n(&self) -> usize {
        self.successors.len()
    }

    /// `a < b`.
    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.successors[a].contains(b)
    }

    pub fn successors(&self, a: usize) -> &VertexSet {
        &self.successors[a]
    }

    /// All related pairs `(a, b)` with `a < b`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.successors
            .iter()
            .enumerate()
            .flat_map(|(a, row)| row.iter().map(move |b| (a, b)))
    }

    pub fn is_empty(&self) -> bool {
        self.successors.iter().all(VertexSet::is_empty)
    }

    /// Covering pairs only (the transitive reduction).
    pub fn covering_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs()
            .filter(|&(a, b)| !self.successors[a].iter().any(|c| self.lt(c, b)))
            .collect()
    }

    /// Every pair of `self` is also in `other`.
    pub fn is_subrelation_of(&self, other: &Self) -> bool {
        self.successors
            .iter()
            .zip(&other.successors)
            .all(|(a, b)| a.is_subset(b))
    }

    /// Number of elements on a longest chain above each vertex, so maximal
    /// elements get 0.
    pub fn heights(&self) -> Vec<usize> {
        let n = self.n();
        let mut height = vec![None; n];
        fn visit(order: &PartialOrder, u: usize, height: &mut [Option<usize>]) -> usize {
            if let Some(h) = height[u] {
                return h;
            }
            let h = order.successors[u]
                .iter()
                .map(|v| visit(order, v, height) + 1)
                .max()
                .unwrap_or(0);
            height[u] = Some(h);
            h
        }
        (0..n).map(|u| visit(self, u, &mut height)).collect()
    }

    /// Length (in comparisons) of the longest chain.
    pub fn longest_chain(&self) -> usize {
        self.heights().into_iter().max().unwrap_or(0)
    }

    /// Topological linearization of `domain`: repeatedly takes the smallest
    /// vertex id with no unplaced predecessor in `domain`.
    pub fn linearize(&self, domain: &VertexSet) -> Vec<usize> {
        let mut placed = VertexSet::empty(self.n());
        let mut seq = Vec::with_capacity(domain.len());
        while seq.len() < domain.len() {
            let next = domain
                .iter()
                .find(|&v| {
                    !placed.contains(v)
                        && domain
                            .iter()
                            .all(|w| w == v || placed.contains(w) || !self.lt(w, v))
                })
                .expect("a strict partial order always has a minimal element");
            placed.insert(next);
            seq.push(next);
        }
        seq
    }

    /// Same order after relabelling vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.n();
        let mut successors = vec![VertexSet::empty(n); n];
        for (a, b) in self.pairs() {
            successors[perm[a]].insert(perm[b]);
        }
        Self { successors }
    }
}
