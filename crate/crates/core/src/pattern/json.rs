//! JSON mirror of the command sequence:
//! `{"qubits":[..], "inputs":[..], "outputs":[..], "commands":[{"N":"1"}, {"E":["1","2"]},
//! {"M":{"qubit":"1","label":"XY","angle":"1/4 pi"}}, {"X":{"qubit":"2","signal":"1"}}, ..]}`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{Command, Pattern, PatternError};
use crate::gf2graph::VertexSet;

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct PatternDoc {
    pub qubits: Vec<String>,
    #[serde(default)]
    pub inputs: Vec<String>,
    #[serde(default)]
    pub outputs: Vec<String>,
    pub commands: Vec<CommandDoc>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub enum CommandDoc {
    N(String),
    E([String; 2]),
    M {
        qubit: String,
        label: String,
        angle: String,
    },
    X {
        qubit: String,
        signal: String,
    },
    Z {
        qubit: String,
        signal: String,
    },
}

impl Pattern {
    pub fn to_doc(&self) -> PatternDoc {
        let name = |v: usize| self.name(v).to_string();
        let list = |s: &VertexSet| s.iter().map(name).collect();
        PatternDoc {
            qubits: self.names.clone(),
            inputs: list(&self.inputs),
            outputs: list(&self.outputs),
            commands: self
                .commands
                .iter()
                .map(|c| match *c {
                    Command::New(u) => CommandDoc::N(name(u)),
                    Command::Entangle(u, v) => CommandDoc::E([name(u), name(v)]),
                    Command::Measure { qubit, label, angle } => CommandDoc::M {
                        qubit: name(qubit),
                        label: label.to_string(),
                        angle: angle.to_string(),
                    },
                    Command::CorrectX { qubit, signal } => CommandDoc::X {
                        qubit: name(qubit),
                        signal: name(signal),
                    },
                    Command::CorrectZ { qubit, signal } => CommandDoc::Z {
                        qubit: name(qubit),
                        signal: name(signal),
                    },
                })
                .collect(),
        }
    }

    pub fn from_doc(doc: PatternDoc) -> Result<Self, PatternError> {
        let bad = |m: String| PatternError::Json(m);
        let mut ids = HashMap::new();
        for (i, q) in doc.qubits.iter().enumerate() {
            if ids.insert(q.as_str(), i).is_some() {
                return Err(bad(format!("duplicate qubit {q:?}")));
            }
        }
        let id = |q: &str| ids.get(q).copied().ok_or_else(|| bad(format!("unknown qubit {q:?}")));
        let n = doc.qubits.len();
        let set = |names: &[String]| -> Result<VertexSet, PatternError> {
            let mut s = VertexSet::empty(n);
            for q in names {
                s.insert(id(q)?);
            }
            Ok(s)
        };
        let inputs = set(&doc.inputs)?;
        let outputs = set(&doc.outputs)?;
        let mut commands = Vec::with_capacity(doc.commands.len());
        for c in &doc.commands {
            commands.push(match c {
                CommandDoc::N(u) => Command::New(id(u)?),
                CommandDoc::E([u, v]) => Command::Entangle(id(u)?, id(v)?),
                CommandDoc::M { qubit, label, angle } => Command::Measure {
                    qubit: id(qubit)?,
                    label: label.parse().map_err(|_| bad(format!("unknown label {label:?}")))?,
                    angle: angle.parse().map_err(|e: super::AngleError| bad(e.to_string()))?,
                },
                CommandDoc::X { qubit, signal } => Command::CorrectX {
                    qubit: id(qubit)?,
                    signal: id(signal)?,
                },
                CommandDoc::Z { qubit, signal } => Command::CorrectZ {
                    qubit: id(qubit)?,
                    signal: id(signal)?,
                },
            });
        }
        Ok(Pattern::new(doc.qubits.clone(), inputs, outputs, commands))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("patterns serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, PatternError> {
        let doc: PatternDoc = serde_json::from_str(text).map_err(|e| PatternError::Json(e.to_string()))?;
        Self::from_doc(doc)
    }
}
