//! Correction strategies from Pauli flows, the bipartite real normal form
//! and its order-free parallelization.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::flowcheck::{
    verify_pauli_flow, verify_real_pauli_flow, CorrectionFlow, FlowError, PartialOrder, Violation,
};
use crate::gf2graph::{Axis, MeasurementLabel, Name, OpenGraph, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SynthesisError {
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error("not a Pauli flow: condition {} fails at vertex {}", .0.condition, .0.vertex)]
    InvalidFlow(Violation),
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("vertex {0} has a label outside {{X, Z}}")]
    NotReal(usize),
    #[error("normal-form equation on {which} fails at vertex {vertex}")]
    NormalForm { vertex: usize, which: NormalFormPart },
    #[error("correction dependencies form a cycle through vertex {0}")]
    Cyclic(usize),
    #[error("strategy entry for vertex {0}, which is not measured")]
    NotMeasured(usize),
    #[error("unknown vertex name {0:?}")]
    UnknownVertex(String),
    #[error("malformed strategy JSON: {0}")]
    Json(String),
}

/// Which of the two normal-form equations is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormalFormPart {
    /// `Odd(p(u)) \ (O ∪ λ⁻¹({Z})) = {u} \ λ⁻¹({Z})`
    Odd,
    /// `p(u) \ (O ∪ λ⁻¹({X})) = {u} \ λ⁻¹({X})`
    Set,
}

impl std::fmt::Display for NormalFormPart {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            NormalFormPart::Odd => "Odd(p(u))",
            NormalFormPart::Set => "p(u)",
        })
    }
}

/// Correction maps `x`, `z` on the measured vertices.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CorrectionStrategy {
    pub x: BTreeMap<usize, VertexSet>,
    pub z: BTreeMap<usize, VertexSet>,
}

impl CorrectionStrategy {
    /// Empty corrections on every vertex of `measured`.
    pub fn empty(measured: &VertexSet) -> Self {
        let none = VertexSet::empty(measured.width());
        Self {
            x: measured.iter().map(|u| (u, none.clone())).collect(),
            z: measured.iter().map(|u| (u, none.clone())).collect(),
        }
    }

    pub fn x(&self, u: usize) -> Option<&VertexSet> {
        self.x.get(&u)
    }

    pub fn z(&self, u: usize) -> Option<&VertexSet> {
        self.z.get(&u)
    }

    /// `x(u) ∪ z(u)`.
    pub fn targets(&self, u: usize, n: usize) -> VertexSet {
        let empty = VertexSet::empty(n);
        self.x.get(&u).unwrap_or(&empty) | self.z.get(&u).unwrap_or(&empty)
    }

    /// Transitive closure of `u ≺ v` for `v ∈ x(u) ∪ z(u)`, over `0..n`.
    pub fn induced_order(&self, n: usize) -> Result<PartialOrder, SynthesisError> {
        let rows = (0..n).map(|u| self.targets(u, n)).collect();
        PartialOrder::from_relation(rows).map_err(|e| match e {
            FlowError::CyclicOrder(u) => SynthesisError::Cyclic(u),
            other => SynthesisError::Flow(other),
        })
    }

    /// `v ∈ x(u) ∪ z(u) ⇒ u < v`, with outputs above every measured vertex.
    pub fn is_extensive_wrt(&self, og: &OpenGraph, order: &PartialOrder) -> bool {
        let n = og.n();
        (0..n).all(|u| {
            self.targets(u, n)
                .iter()
                .all(|v| og.outputs().contains(v) || order.lt(u, v))
        })
    }

    /// Keeps the entries of vertices in `s`.
    pub fn restrict(&self, s: &VertexSet) -> Self {
        let keep = |m: &BTreeMap<usize, VertexSet>| {
            m.iter()
                .filter(|(u, _)| s.contains(**u))
                .map(|(u, v)| (*u, v.clone()))
                .collect()
        };
        Self {
            x: keep(&self.x),
            z: keep(&self.z),
        }
    }

    /// Every correction target is an output.
    pub fn targets_outputs_only(&self, og: &OpenGraph) -> bool {
        self.x
            .values()
            .chain(self.z.values())
            .all(|t| t.is_subset(og.outputs()))
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        let map = |m: &BTreeMap<usize, VertexSet>| {
            m.iter()
                .map(|(u, s)| (perm[*u], VertexSet::from_ids(s.width(), s.iter().map(|v| perm[v]))))
                .collect()
        };
        Self {
            x: map(&self.x),
            z: map(&self.z),
        }
    }
}

/// `{"x":{"u":[...]}, "z":{"u":[...]}}`.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct StrategyDoc {
    #[serde(default)]
    pub x: BTreeMap<String, Vec<Name>>,
    #[serde(default)]
    pub z: BTreeMap<String, Vec<Name>>,
}

impl CorrectionStrategy {
    pub fn to_doc(&self, og: &OpenGraph) -> StrategyDoc {
        let side = |m: &BTreeMap<usize, VertexSet>| {
            m.iter()
                .map(|(u, s)| {
                    (
                        og.name(*u).to_string(),
                        s.iter().map(|v| Name::Text(og.name(v).to_string())).collect(),
                    )
                })
                .collect()
        };
        StrategyDoc {
            x: side(&self.x),
            z: side(&self.z),
        }
    }

    pub fn from_doc(og: &OpenGraph, doc: StrategyDoc) -> Result<Self, SynthesisError> {
        let id = |name: String| {
            og.vertex_by_name(&name)
                .ok_or(SynthesisError::UnknownVertex(name))
        };
        let side = |m: BTreeMap<String, Vec<Name>>| -> Result<BTreeMap<usize, VertexSet>, SynthesisError> {
            let mut out = BTreeMap::new();
            for (u, targets) in m {
                let u = id(u)?;
                if og.outputs().contains(u) {
                    return Err(SynthesisError::NotMeasured(u));
                }
                let mut s = VertexSet::empty(og.n());
                for t in targets {
                    s.insert(id(t.into_string())?);
                }
                out.insert(u, s);
            }
            Ok(out)
        };
        Ok(Self {
            x: side(doc.x)?,
            z: side(doc.z)?,
        })
    }

    pub fn to_json(&self, og: &OpenGraph) -> String {
        serde_json::to_string_pretty(&self.to_doc(og)).expect("strategies serialize")
    }

    pub fn from_json(og: &OpenGraph, text: &str) -> Result<Self, SynthesisError> {
        let doc = serde_json::from_str(text).map_err(|e| SynthesisError::Json(e.to_string()))?;
        Self::from_doc(og, doc)
    }
}

/// `x(u) = {v ∈ p(u) | u < v}`, `z(u) = {v ∈ Odd(p(u)) | u < v}`, where
/// every output counts as above every measured vertex.
pub fn synthesize_corrections(
    og: &OpenGraph,
    f: &CorrectionFlow,
) -> Result<CorrectionStrategy, SynthesisError> {
    if let Some(v) = verify_pauli_flow(og, f)?.violation() {
        return Err(SynthesisError::InvalidFlow(v));
    }
    let n = og.n();
    let mut strategy = CorrectionStrategy::default();
    for u in og.non_outputs().iter() {
        let above = og.outputs() | f.order.successors(u);
        let pu = f.correction(u);
        strategy.x.insert(u, pu.intersection(&above));
        strategy.z.insert(u, og.graph().odd(pu).intersection(&above));
        debug_assert_eq!(pu.width(), n);
    }
    Ok(strategy)
}

/// Every correction that synthesis drops from a valid flow, on a measured
/// `w ≠ u` with `¬(u < w)`, lands on a vertex that precedes `u` in the
/// synthesized strategy's dependency order.
pub fn is_correction_closed(og: &OpenGraph, f: &CorrectionFlow) -> Result<bool, SynthesisError> {
    let strategy = synthesize_corrections(og, f)?;
    let induced = strategy.induced_order(og.n())?;
    let measured = og.non_outputs();
    Ok(measured.iter().all(|u| {
        let pu = f.correction(u);
        (pu | &og.graph().odd(pu))
            .intersection(&measured)
            .iter()
            .all(|w| w == u || f.order.lt(u, w) || induced.lt(w, u))
    }))
}

fn check_real_bipartite(og: &OpenGraph) -> Result<(VertexSet, VertexSet), SynthesisError> {
    if let Some(v) = (0..og.n()).find(|&v| og.label(v).is_some_and(|l| !l.is_real())) {
        return Err(SynthesisError::NotReal(v));
    }
    og.graph().bipartition().ok_or(SynthesisError::NotBipartite)
}

/// Rebuilds the correction sets of `g0` into the bipartite normal form,
/// processing maximal vertices of `g0`'s order first (ties by ascending id).
pub fn bipartite_normal_form(
    og: &OpenGraph,
    g0: &CorrectionFlow,
) -> Result<Vec<Option<VertexSet>>, SynthesisError> {
    let (v0, _) = check_real_bipartite(og)?;
    if let Some(v) = verify_real_pauli_flow(og, g0)?.violation() {
        return Err(SynthesisError::InvalidFlow(v));
    }
    let n = og.n();
    let g = og.graph();
    let heights = g0.order.heights();
    let mut schedule: Vec<usize> = og.non_outputs().iter().collect();
    schedule.sort_by_key(|&u| (heights[u], u));

    let side_of = |v: usize| if v0.contains(v) { v0.clone() } else { v0.complement() };
    let mut p: Vec<Option<VertexSet>> = vec![None; n];
    for u in schedule {
        let gu = g0.correction(u);
        let mut pu = gu.clone();
        let pick = |set: &VertexSet, axis: Axis| {
            let mut terms: Vec<usize> = set
                .iter()
                .filter(|&v| v != u && og.label(v).is_some_and(|l| l.contains(axis)))
                .collect();
            terms.sort_unstable();
            terms
        };
        for v in pick(&g.odd(gu), Axis::X) {
            let pv = p[v].as_ref().expect("flow conditions put v above u");
            pu ^= &pv.difference(&side_of(v));
        }
        for v in pick(gu, Axis::Z) {
            let pv = p[v].as_ref().expect("flow conditions put v above u");
            pu ^= &pv.intersection(&side_of(v));
        }
        p[u] = Some(pu);
    }
    if let Some((vertex, which)) = normal_form_violation(og, &p) {
        return Err(SynthesisError::NormalForm { vertex, which });
    }
    Ok(p)
}

/// First vertex whose `p(u)` breaks one of the two normal-form equations.
pub fn normal_form_violation(
    og: &OpenGraph,
    p: &[Option<VertexSet>],
) -> Option<(usize, NormalFormPart)> {
    let n = og.n();
    let z_only = og.labelled(MeasurementLabel::Z);
    let x_only = og.labelled(MeasurementLabel::X);
    for u in og.non_outputs().iter() {
        let Some(pu) = p.get(u).and_then(Option::as_ref) else {
            return Some((u, NormalFormPart::Set));
        };
        let me = VertexSet::singleton(n, u);
        let lhs = og.graph().odd(pu).difference(&(og.outputs() | &z_only));
        if lhs != me.difference(&z_only) {
            return Some((u, NormalFormPart::Odd));
        }
        let lhs = pu.difference(&(og.outputs() | &x_only));
        if lhs != me.difference(&x_only) {
            return Some((u, NormalFormPart::Set));
        }
    }
    None
}

/// `x′(u) = p(u) \ (λ⁻¹({X}) ∪ {u})`, `z′(u) = Odd(p(u)) \ (λ⁻¹({Z}) ∪ {u})`.
pub fn parallelize(
    og: &OpenGraph,
    p: &[Option<VertexSet>],
) -> Result<CorrectionStrategy, SynthesisError> {
    if let Some((vertex, which)) = normal_form_violation(og, p) {
        return Err(SynthesisError::NormalForm { vertex, which });
    }
    let n = og.n();
    let x_only = og.labelled(MeasurementLabel::X);
    let z_only = og.labelled(MeasurementLabel::Z);
    let mut strategy = CorrectionStrategy::default();
    for u in og.non_outputs().iter() {
        let pu = p[u].as_ref().expect("checked above");
        let me = VertexSet::singleton(n, u);
        strategy.x.insert(u, pu.difference(&(&x_only | &me)));
        strategy.z.insert(u, og.graph().odd(pu).difference(&(&z_only | &me)));
    }
    debug_assert!(strategy.targets_outputs_only(og));
    Ok(strategy)
}

/// Flow with the given correction sets and no order.
pub fn order_free_flow(p: Vec<Option<VertexSet>>) -> CorrectionFlow {
    let n = p.len();
    CorrectionFlow::new(p, PartialOrder::empty(n))
}

/// Number of measurement rounds the strategy forces: layers of the
/// dependency order among measured vertices, 0 when nothing is measured.
pub fn measurement_depth(og: &OpenGraph, strategy: &CorrectionStrategy) -> Result<usize, SynthesisError> {
    let measured = og.non_outputs();
    if measured.is_empty() {
        return Ok(0);
    }
    let order = strategy.induced_order(og.n())?;
    let rows = (0..og.n())
        .map(|u| {
            if measured.contains(u) {
                order.successors(u).intersection(&measured)
            } else {
                VertexSet::empty(og.n())
            }
        })
        .collect();
    let inner = PartialOrder::from_relation(rows)?;
    Ok(inner.longest_chain() + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flowfind::{find_pauli_flow, find_pauli_flow_bruteforce, BruteForceBound};
    use crate::gf2graph::MeasurementLabel as L;

    fn set(n: usize, ids: &[usize]) -> VertexSet {
        VertexSet::from_ids(n, ids.iter().copied())
    }

    #[test]
    fn single_edge_strategy() {
        let og = OpenGraph::from_parts(2, &[(0, 1)], &[], &[1], &[(0, L::X)]).unwrap();
        let f = CorrectionFlow::new(vec![Some(set(2, &[1])), None], PartialOrder::empty(2));
        let s = synthesize_corrections(&og, &f).unwrap();
        assert_eq!(s.x(0), Some(&set(2, &[1])));
        assert_eq!(s.z(0), Some(&set(2, &[])));
        assert!(s.is_extensive_wrt(&og, &f.order));

        let p = bipartite_normal_form(&og, &f).unwrap();
        assert_eq!(p[0], Some(set(2, &[1])));
        let par = parallelize(&og, &p).unwrap();
        // p(0) \ ({0} ∪ λ⁻¹({X})) = {1}; Odd({1}) = {0} is removed.
        assert_eq!(par.x(0), Some(&set(2, &[1])));
        assert_eq!(par.z(0), Some(&set(2, &[])));
        assert!(par.targets_outputs_only(&og));
        assert_eq!(measurement_depth(&og, &par).unwrap(), 1);
    }

    #[test]
    fn invalid_flow_rejected() {
        let og = OpenGraph::from_parts(2, &[(0, 1)], &[], &[1], &[(0, L::Z)]).unwrap();
        let f = CorrectionFlow::new(vec![Some(set(2, &[1])), None], PartialOrder::empty(2));
        assert!(matches!(
            synthesize_corrections(&og, &f),
            Err(SynthesisError::InvalidFlow(_))
        ));
    }

    /// 2×3 grid: rows 0–1–2 and 3–4–5 with rungs; right column is the output.
    fn grid() -> OpenGraph {
        OpenGraph::from_parts(
            6,
            &[(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5)],
            &[0, 3],
            &[2, 5],
            &[(0, L::X), (3, L::X), (1, L::X), (4, L::X)],
        )
        .unwrap()
    }

    #[test]
    fn grid_normal_form_equations() {
        let og = grid();
        // The exhaustive search returns a total order, so the normal form
        // has real work to do.
        let found = find_pauli_flow_bruteforce(&og, BruteForceBound::default()).unwrap();
        let flow = found.flow.expect("grid fragment has a flow");
        assert!(crate::flowfind::flow_depth(&flow) >= 2);
        let p = bipartite_normal_form(&og, &flow).unwrap();
        assert_eq!(normal_form_violation(&og, &p), None);
        let f = order_free_flow(p.clone());
        assert!(verify_real_pauli_flow(&og, &f).unwrap().is_valid());
        let par = parallelize(&og, &p).unwrap();
        assert!(par.targets_outputs_only(&og));
    }

    #[test]
    fn non_bipartite_rejected() {
        let og = OpenGraph::from_parts(
            3,
            &[(0, 1), (1, 2), (0, 2)],
            &[],
            &[2],
            &[(0, L::X), (1, L::X)],
        )
        .unwrap();
        let f = find_pauli_flow(&og).flow.unwrap();
        assert_eq!(bipartite_normal_form(&og, &f), Err(SynthesisError::NotBipartite));
    }

    #[test]
    fn strategy_json_round_trip() {
        let og = grid();
        let f = find_pauli_flow(&og).flow.unwrap();
        let s = synthesize_corrections(&og, &f).unwrap();
        assert_eq!(CorrectionStrategy::from_json(&og, &s.to_json(&og)).unwrap(), s);
    }
}
