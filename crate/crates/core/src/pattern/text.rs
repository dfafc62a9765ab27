//! `.mcpat` text format, one command per line in application order:
//!
//! ```text
//! qubits: 1 2 3
//! input:
//! output: 3
//! N 1
//! E 1 2
//! M 1 XY 1/4 pi
//! X 2 s(1)
//! Z 3 s(2)
//! ```
//!
//! `#` starts a comment. Without a `qubits:` line the register is every
//! name in order of first appearance.

use std::collections::HashMap;

use super::{Angle, Command, Pattern, PatternError};
use crate::gf2graph::{MeasurementLabel, VertexSet};

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &line[s..i],
                    column: line[..s].chars().count() + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            column: line[..s].chars().count() + 1,
        });
    }
    out
}

#[derive(Default)]
struct Register {
    names: Vec<String>,
    ids: HashMap<String, usize>,
    fixed: bool,
}

impl Register {
    fn id(&mut self, name: &str) -> Option<usize> {
        if let Some(&id) = self.ids.get(name) {
            return Some(id);
        }
        if self.fixed {
            return None;
        }
        self.ids.insert(name.to_string(), self.names.len());
        self.names.push(name.to_string());
        Some(self.names.len() - 1)
    }
}

enum Raw {
    New(usize),
    Entangle(usize, usize),
    Measure(usize, MeasurementLabel, Angle),
    X(usize, usize),
    Z(usize, usize),
}

pub fn parse(text: &str) -> Result<Pattern, PatternError> {
    let mut reg = Register::default();
    let mut inputs: Option<Vec<usize>> = None;
    let mut outputs: Option<Vec<usize>> = None;
    let mut raw = Vec::new();
    let mut seen_command = false;
    for (lineno, full) in text.lines().enumerate() {
        let line = full.split('#').next().unwrap_or("");
        let toks = tokens(line);
        let Some(head) = toks.first() else { continue };
        let err = |column: usize, message: String| PatternError::Parse {
            line: lineno + 1,
            column,
            message,
        };
        let end_column = line.trim_end().chars().count() + 1;
        let name_of = |reg: &mut Register, t: &Token| {
            reg.id(t.text)
                .ok_or_else(|| err(t.column, format!("qubit {:?} not declared in qubits:", t.text)))
        };
        if let Some(key) = head.text.strip_suffix(':') {
            if seen_command {
                return Err(err(head.column, "header after the first command".into()));
            }
            match key {
                "qubits" => {
                    if reg.fixed || !reg.names.is_empty() {
                        return Err(err(head.column, "qubits: must come first and only once".into()));
                    }
                    for t in &toks[1..] {
                        if reg.ids.contains_key(t.text) {
                            return Err(err(t.column, format!("duplicate qubit {:?}", t.text)));
                        }
                        reg.id(t.text);
                    }
                    reg.fixed = true;
                }
                "input" | "output" => {
                    let slot = if key == "input" { &mut inputs } else { &mut outputs };
                    if slot.is_some() {
                        return Err(err(head.column, format!("repeated {key}: header")));
                    }
                    let mut ids = Vec::new();
                    for t in &toks[1..] {
                        ids.push(name_of(&mut reg, t)?);
                    }
                    *slot = Some(ids);
                }
                _ => return Err(err(head.column, format!("unknown header {:?}", head.text))),
            }
            continue;
        }
        seen_command = true;
        let arg = |i: usize| {
            toks.get(i)
                .ok_or_else(|| err(end_column, format!("{} needs more arguments", head.text)))
        };
        let too_many = |i: usize| -> Result<(), PatternError> {
            match toks.get(i) {
                Some(t) => Err(err(t.column, "unexpected extra token".into())),
                None => Ok(()),
            }
        };
        let signal = |t: &Token| {
            t.text
                .strip_prefix("s(")
                .and_then(|s| s.strip_suffix(')'))
                .filter(|s| !s.is_empty())
                .map(str::to_string)
                .ok_or_else(|| err(t.column, format!("expected s(v), found {:?}", t.text)))
        };
        let cmd = match head.text {
            "N" => {
                let u = name_of(&mut reg, arg(1)?)?;
                too_many(2)?;
                Raw::New(u)
            }
            "E" => {
                let u = name_of(&mut reg, arg(1)?)?;
                let v = name_of(&mut reg, arg(2)?)?;
                too_many(3)?;
                Raw::Entangle(u, v)
            }
            "M" => {
                let u = name_of(&mut reg, arg(1)?)?;
                let lt = arg(2)?;
                let label: MeasurementLabel = lt
                    .text
                    .parse()
                    .map_err(|_| err(lt.column, format!("unknown label {:?}", lt.text)))?;
                let at = arg(3)?;
                let rest: Vec<&str> = toks[3..].iter().map(|t| t.text).collect();
                let angle: Angle = rest
                    .join(" ")
                    .parse()
                    .map_err(|e: super::AngleError| err(at.column, e.to_string()))?;
                Raw::Measure(u, label, angle)
            }
            "X" | "Z" => {
                let u = name_of(&mut reg, arg(1)?)?;
                let st = arg(2)?;
                let sname = signal(st)?;
                let s = name_of(&mut reg, &Token { text: &sname, column: st.column + 2 })?;
                too_many(3)?;
                if head.text == "X" {
                    Raw::X(u, s)
                } else {
                    Raw::Z(u, s)
                }
            }
            other => return Err(err(head.column, format!("unknown command {other:?}"))),
        };
        raw.push(cmd);
    }
    let n = reg.names.len();
    let set = |ids: Option<Vec<usize>>| VertexSet::from_ids(n, ids.unwrap_or_default());
    let commands = raw
        .into_iter()
        .map(|r| match r {
            Raw::New(u) => Command::New(u),
            Raw::Entangle(u, v) => Command::Entangle(u, v),
            Raw::Measure(qubit, label, angle) => Command::Measure { qubit, label, angle },
            Raw::X(qubit, signal) => Command::CorrectX { qubit, signal },
            Raw::Z(qubit, signal) => Command::CorrectZ { qubit, signal },
        })
        .collect();
    Ok(Pattern::new(reg.names, set(inputs), set(outputs), commands))
}

pub fn print(pat: &Pattern) -> String {
    let name = |v: usize| pat.name(v);
    let list = |s: &VertexSet| {
        s.iter().map(|v| format!(" {}", name(v))).collect::<String>()
    };
    let mut out = String::new();
    out.push_str("qubits:");
    for v in 0..pat.n() {
        out.push(' ');
        out.push_str(name(v));
    }
    out.push('\n');
    out.push_str(&format!("input:{}\noutput:{}\n", list(&pat.inputs), list(&pat.outputs)));
    for cmd in &pat.commands {
        let line = match *cmd {
            Command::New(u) => format!("N {}", name(u)),
            Command::Entangle(u, v) => format!("E {} {}", name(u), name(v)),
            Command::Measure { qubit, label, angle } => {
                format!("M {} {} {}", name(qubit), label, angle)
            }
            Command::CorrectX { qubit, signal } => format!("X {} s({})", name(qubit), name(signal)),
            Command::CorrectZ { qubit, signal } => format!("Z {} s({})", name(qubit), name(signal)),
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}

impl Pattern {
    pub fn parse(text: &str) -> Result<Self, PatternError> {
        parse(text)
    }

    pub fn to_text(&self) -> String {
        print(self)
    }
}
