//! JSON open-graph format:
//! `{"vertices":[..], "edges":[[a,b],..], "inputs":[..], "outputs":[..], "labels":{"name":"XY",..}}`.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{Graph, GraphError, MeasurementLabel, OpenGraph, VertexSet};

/// Vertex name as written in a file; bare integers are accepted.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(untagged)]
pub enum Name {
    Text(String),
    Number(u64),
}

impl Name {
    pub fn into_string(self) -> String {
        match self {
            Name::Text(s) => s,
            Name::Number(n) => n.to_string(),
        }
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(deny_unknown_fields)]
pub struct OpenGraphDoc {
    pub vertices: Vec<Name>,
    #[serde(default)]
    pub edges: Vec<[Name; 2]>,
    #[serde(default)]
    pub inputs: Vec<Name>,
    #[serde(default)]
    pub outputs: Vec<Name>,
    #[serde(default)]
    pub labels: BTreeMap<String, String>,
}

/// Name → id table for one open graph.
pub struct SymbolTable {
    ids: HashMap<String, usize>,
}

impl SymbolTable {
    pub fn new(names: &[String]) -> Result<Self, GraphError> {
        let mut ids = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if ids.insert(name.clone(), i).is_some() {
                return Err(GraphError::DuplicateName(name.clone()));
            }
        }
        Ok(Self { ids })
    }

    pub fn id(&self, name: &str) -> Result<usize, GraphError> {
        self.ids
            .get(name)
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
    }
}

impl OpenGraph {
    pub fn from_doc(doc: OpenGraphDoc) -> Result<Self, GraphError> {
        let names: Vec<String> = doc.vertices.into_iter().map(Name::into_string).collect();
        let table = SymbolTable::new(&names)?;
        let n = names.len();
        let mut graph = Graph::new(n);
        for [a, b] in doc.edges {
            graph.add_edge(table.id(&a.into_string())?, table.id(&b.into_string())?)?;
        }
        let to_set = |list: Vec<Name>| -> Result<VertexSet, GraphError> {
            let mut s = VertexSet::empty(n);
            for name in list {
                s.insert(table.id(&name.into_string())?);
            }
            Ok(s)
        };
        let inputs = to_set(doc.inputs)?;
        let outputs = to_set(doc.outputs)?;
        let mut labels = vec![None; n];
        for (name, label) in &doc.labels {
            labels[table.id(name)?] = Some(label.parse::<MeasurementLabel>()?);
        }
        OpenGraph::with_names(graph, inputs, outputs, labels, names)
    }

    pub fn to_doc(&self) -> OpenGraphDoc {
        let name = |v: usize| Name::Text(self.name(v).to_string());
        OpenGraphDoc {
            vertices: (0..self.n()).map(name).collect(),
            edges: self.graph().edges().map(|(u, v)| [name(u), name(v)]).collect(),
            inputs: self.inputs().iter().map(name).collect(),
            outputs: self.outputs().iter().map(name).collect(),
            labels: (0..self.n())
                .filter_map(|v| self.label(v).map(|l| (self.name(v).to_string(), l.to_string())))
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        let doc: OpenGraphDoc =
            serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
        Self::from_doc(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("open graph documents serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const COUNTER: &str = r#"{
        "vertices": ["1", "2", "3"],
        "edges": [["1", "2"], ["1", "3"]],
        "inputs": [],
        "outputs": ["3"],
        "labels": {"1": "XY", "2": "X"}
    }"#;

    #[test]
    fn parses_named_graph() {
        let og = OpenGraph::from_json(COUNTER).unwrap();
        assert_eq!(og.n(), 3);
        assert!(og.graph().has_edge(0, 1) && og.graph().has_edge(0, 2));
        assert_eq!(og.label(0), Some(MeasurementLabel::XY));
        assert_eq!(og.vertex_by_name("3"), Some(2));
        assert_eq!(OpenGraph::from_json(&og.to_json()).unwrap(), og);
    }

    #[test]
    fn duplicate_edge_is_parse_error() {
        let text = r#"{"vertices":[0,1],"edges":[[0,1],[1,0]],"outputs":[1],"labels":{"0":"X"}}"#;
        assert_eq!(OpenGraph::from_json(text), Err(GraphError::DuplicateEdge(0, 1)));
    }

    #[test]
    fn unknown_names_rejected() {
        let text = r#"{"vertices":["a"],"outputs":["b"]}"#;
        assert_eq!(
            OpenGraph::from_json(text),
            Err(GraphError::UnknownVertex("b".into()))
        );
    }
}
