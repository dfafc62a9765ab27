//! Flow JSON: `{"p":{"u":[vertices],..}, "order":[[a,b],..]}` with `[a,b]`
//! meaning `a < b`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{CorrectionFlow, FlowError, PartialOrder};
use crate::gf2graph::{Name, OpenGraph, VertexSet};

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FlowDoc {
    pub p: BTreeMap<String, Vec<Name>>,
    #[serde(default)]
    pub order: Vec<[Name; 2]>,
}

fn lookup(og: &OpenGraph, name: Name) -> Result<usize, FlowError> {
    let name = name.into_string();
    og.vertex_by_name(&name).ok_or(FlowError::UnknownVertex(name))
}

impl CorrectionFlow {
    /// Resolves names against `og`; the shape is not checked here.
    pub fn from_doc(og: &OpenGraph, doc: FlowDoc) -> Result<Self, FlowError> {
        let n = og.n();
        let mut p = vec![None; n];
        for (u, set) in doc.p {
            let u = lookup(og, Name::Text(u))?;
            let mut s = VertexSet::empty(n);
            for v in set {
                s.insert(lookup(og, v)?);
            }
            p[u] = Some(s);
        }
        let mut pairs = Vec::with_capacity(doc.order.len());
        for [a, b] in doc.order {
            pairs.push((lookup(og, a)?, lookup(og, b)?));
        }
        Ok(Self::new(p, PartialOrder::from_pairs(n, pairs)?))
    }

    /// Writes `p` and the covering pairs of the order.
    pub fn to_doc(&self, og: &OpenGraph) -> FlowDoc {
        let name = |v: usize| Name::Text(og.name(v).to_string());
        FlowDoc {
            p: self
                .p
                .iter()
                .enumerate()
                .filter_map(|(u, s)| {
                    s.as_ref()
                        .map(|s| (og.name(u).to_string(), s.iter().map(name).collect()))
                })
                .collect(),
            order: self
                .order
                .covering_pairs()
                .into_iter()
                .map(|(a, b)| [name(a), name(b)])
                .collect(),
        }
    }

    pub fn from_json(og: &OpenGraph, text: &str) -> Result<Self, FlowError> {
        let doc: FlowDoc = serde_json::from_str(text).map_err(|e| FlowError::Json(e.to_string()))?;
        Self::from_doc(og, doc)
    }

    pub fn to_json(&self, og: &OpenGraph) -> String {
        serde_json::to_string_pretty(&self.to_doc(og)).expect("flow documents serialize")
    }
}
