use std::collections::VecDeque;

use super::{GraphError, VertexSet};

/// Simple undirected graph on the dense vertex ids `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Graph {
    adjacency: Vec<VertexSet>,
}

impl Graph {
    /// Graph with `n` vertices and no edges.
    pub fn new(n: usize) -> Self {
        Self {
            adjacency: vec![VertexSet::empty(n); n],
        }
    }

    /// Builds a graph from an edge list. Self-loops and repeated edges are
    /// rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.adjacency[u].contains(v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.adjacency[u].insert(v);
        self.adjacency[v].insert(u);
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    /// Open neighbourhood `N(u)`.
    pub fn neighbors(&self, u: usize) -> &VertexSet {
        &self.adjacency[u]
    }

    /// Closed neighbourhood `N[u]`.
    pub fn closed_neighbors(&self, u: usize) -> VertexSet {
        let mut s = self.adjacency[u].clone();
        s.insert(u);
        s
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    /// Vertex set `0..n`.
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    fn check_subset(&self, a: &VertexSet) -> Result<(), GraphError> {
        if a.width() == self.n() {
            return Ok(());
        }
        match a.iter().find(|&v| v >= self.n()) {
            Some(v) => Err(GraphError::VertexOutOfRange { vertex: v, n: self.n() }),
            None => Err(GraphError::WidthMismatch {
                width: a.width(),
                n: self.n(),
            }),
        }
    }

    /// `Odd(A)`: the vertices with an odd number of neighbours in `a`.
    pub fn odd_neighborhood(&self, a: &VertexSet) -> Result<VertexSet, GraphError> {
        self.check_subset(a)?;
        Ok(self.odd(a))
    }

    /// `Odd[A] = Odd(A) Δ A`.
    pub fn closed_odd_neighborhood(&self, a: &VertexSet) -> Result<VertexSet, GraphError> {
        self.check_subset(a)?;
        Ok(self.closed_odd(a))
    }

    /// Unchecked `Odd(A)`; `a` must have width `n`.
    pub(crate) fn odd(&self, a: &VertexSet) -> VertexSet {
        let mut out = VertexSet::empty(self.n());
        for v in a {
            out ^= &self.adjacency[v];
        }
        out
    }

    pub(crate) fn closed_odd(&self, a: &VertexSet) -> VertexSet {
        let mut out = self.odd(a);
        out ^= a;
        out
    }

    /// BFS 2-colouring in ascending vertex order. Each component's smallest
    /// vertex lands in the first class, so vertex 0 is always in `V₀`.
    /// Returns `None` when the graph has an odd cycle.
    pub fn bipartition(&self) -> Option<(VertexSet, VertexSet)> {
        let n = self.n();
        let mut colour: Vec<Option<bool>> = vec![None; n];
        let mut queue = VecDeque::new();
        for start in 0..n {
            if colour[start].is_some() {
                continue;
            }
            colour[start] = Some(false);
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                let cu = colour[u].expect("queued vertices are coloured");
                for v in self.neighbors(u) {
                    match colour[v] {
                        None => {
                            colour[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let v1 = VertexSet::from_ids(n, (0..n).filter(|&v| colour[v] == Some(true)));
        let v0 = v1.complement();
        Some((v0, v1))
    }

    /// Subgraph-preserving relabelling: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut g = Self::new(self.n());
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v])
                .expect("permutation of a simple graph is simple");
        }
        g
    }
}
