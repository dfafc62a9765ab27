use std::fmt;
use std::str::FromStr;

use super::{Graph, GraphError, VertexSet};

/// A Pauli axis of the Bloch sphere.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// Measurement label `λ_u`: a single Pauli axis or a measurement plane.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum MeasurementLabel {
    X,
    Y,
    Z,
    XY,
    YZ,
    /// The `{Z, X}` plane, observable `cos α Z + sin α X`.
    XZ,
}

impl MeasurementLabel {
    pub const ALL: [MeasurementLabel; 6] = [
        MeasurementLabel::X,
        MeasurementLabel::Y,
        MeasurementLabel::Z,
        MeasurementLabel::XY,
        MeasurementLabel::YZ,
        MeasurementLabel::XZ,
    ];

    /// Labels contained in `{X, Z}`.
    pub const REAL: [MeasurementLabel; 3] =
        [MeasurementLabel::X, MeasurementLabel::Z, MeasurementLabel::XZ];

    pub const PLANES: [MeasurementLabel; 3] =
        [MeasurementLabel::XY, MeasurementLabel::YZ, MeasurementLabel::XZ];

    pub fn contains(self, axis: Axis) -> bool {
        use MeasurementLabel as L;
        matches!(
            (self, axis),
            (L::X | L::XY | L::XZ, Axis::X) | (L::Y | L::XY | L::YZ, Axis::Y) | (L::Z | L::YZ | L::XZ, Axis::Z)
        )
    }

    /// Cardinality of the label as a subset of `{X, Y, Z}`.
    pub fn size(self) -> usize {
        if self.is_pauli() {
            1
        } else {
            2
        }
    }

    pub fn is_pauli(self) -> bool {
        matches!(self, Self::X | Self::Y | Self::Z)
    }

    pub fn is_plane(self) -> bool {
        !self.is_pauli()
    }

    /// `λ ⊆ {X, Z}`.
    pub fn is_real(self) -> bool {
        !self.contains(Axis::Y)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::X => "X",
            Self::Y => "Y",
            Self::Z => "Z",
            Self::XY => "XY",
            Self::YZ => "YZ",
            Self::XZ => "XZ",
        }
    }
}

impl fmt::Display for MeasurementLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MeasurementLabel {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, GraphError> {
        Ok(match s {
            "X" => Self::X,
            "Y" => Self::Y,
            "Z" => Self::Z,
            "XY" | "YX" => Self::XY,
            "YZ" | "ZY" => Self::YZ,
            "XZ" | "ZX" => Self::XZ,
            _ => return Err(GraphError::UnknownLabel(s.to_string())),
        })
    }
}

/// Open graph `(G, I, O, λ)` with a symbol table for external vertex names.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct OpenGraph {
    graph: Graph,
    inputs: VertexSet,
    outputs: VertexSet,
    labels: Vec<Option<MeasurementLabel>>,
    names: Vec<String>,
}

impl OpenGraph {
    /// Checks that `labels` is defined exactly on the non-outputs. Vertex
    /// names default to the decimal ids.
    pub fn new(
        graph: Graph,
        inputs: VertexSet,
        outputs: VertexSet,
        labels: Vec<Option<MeasurementLabel>>,
    ) -> Result<Self, GraphError> {
        let names = (0..graph.n()).map(|v| v.to_string()).collect();
        Self::with_names(graph, inputs, outputs, labels, names)
    }

    pub fn with_names(
        graph: Graph,
        inputs: VertexSet,
        outputs: VertexSet,
        labels: Vec<Option<MeasurementLabel>>,
        names: Vec<String>,
    ) -> Result<Self, GraphError> {
        let n = graph.n();
        for s in [&inputs, &outputs] {
            if s.width() != n {
                return Err(GraphError::WidthMismatch { width: s.width(), n });
            }
        }
        if labels.len() != n || names.len() != n {
            return Err(GraphError::WidthMismatch { width: labels.len().min(names.len()), n });
        }
        for (v, label) in labels.iter().enumerate() {
            match (outputs.contains(v), label) {
                (true, Some(_)) => return Err(GraphError::LabelOnOutput(v)),
                (false, None) => return Err(GraphError::MissingLabel(v)),
                _ => {}
            }
        }
        Ok(Self {
            graph,
            inputs,
            outputs,
            labels,
            names,
        })
    }

    /// Convenience constructor from id lists, used heavily by tests.
    pub fn from_parts(
        n: usize,
        edges: &[(usize, usize)],
        inputs: &[usize],
        outputs: &[usize],
        labels: &[(usize, MeasurementLabel)],
    ) -> Result<Self, GraphError> {
        let graph = Graph::from_edges(n, edges.iter().copied())?;
        let mut lab = vec![None; n];
        for &(v, l) in labels {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            lab[v] = Some(l);
        }
        Self::new(
            graph,
            VertexSet::from_ids(n, inputs.iter().copied()),
            VertexSet::from_ids(n, outputs.iter().copied()),
            lab,
        )
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn inputs(&self) -> &VertexSet {
        &self.inputs
    }

    pub fn outputs(&self) -> &VertexSet {
        &self.outputs
    }

    /// `Oᶜ`, the measured vertices.
    pub fn non_outputs(&self) -> VertexSet {
        self.outputs.complement()
    }

    /// `Iᶜ`, the vertices a correction set may use.
    pub fn non_inputs(&self) -> VertexSet {
        self.inputs.complement()
    }

    pub fn label(&self, v: usize) -> Option<MeasurementLabel> {
        self.labels[v]
    }

    pub fn labels(&self) -> &[Option<MeasurementLabel>] {
        &self.labels
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// `λ⁻¹({label})`: the non-outputs carrying exactly this label.
    pub fn labelled(&self, label: MeasurementLabel) -> VertexSet {
        VertexSet::from_ids(self.n(), (0..self.n()).filter(|&v| self.labels[v] == Some(label)))
    }

    /// The non-outputs whose label contains `axis`.
    pub fn with_axis(&self, axis: Axis) -> VertexSet {
        VertexSet::from_ids(
            self.n(),
            (0..self.n()).filter(|&v| self.labels[v].is_some_and(|l| l.contains(axis))),
        )
    }

    /// All labels are subsets of `{X, Z}`.
    pub fn is_real(&self) -> bool {
        self.labels.iter().flatten().all(|l| l.is_real())
    }

    /// All labels are measurement planes.
    pub fn is_planar(&self) -> bool {
        self.labels.iter().flatten().all(|l| l.is_plane())
    }

    /// Same open graph with a different output set; labels outside the new
    /// outputs must be supplied by `labels`, labels on new outputs are dropped.
    pub fn with_outputs(&self, outputs: VertexSet) -> Result<Self, GraphError> {
        let labels = (0..self.n())
            .map(|v| if outputs.contains(v) { None } else { self.labels[v] })
            .collect();
        Self::with_names(
            self.graph.clone(),
            self.inputs.clone(),
            outputs,
            labels,
            self.names.clone(),
        )
    }

    /// Relabels vertex `v` as `perm[v]`; names follow their vertices.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.n();
        let map = |s: &VertexSet| VertexSet::from_ids(n, s.iter().map(|v| perm[v]));
        let mut labels = vec![None; n];
        let mut names = vec![String::new(); n];
        for v in 0..n {
            labels[perm[v]] = self.labels[v];
            names[perm[v]] = self.names[v].clone();
        }
        Self {
            graph: self.graph.permuted(perm),
            inputs: map(&self.inputs),
            outputs: map(&self.outputs),
            labels,
            names,
        }
    }
}
