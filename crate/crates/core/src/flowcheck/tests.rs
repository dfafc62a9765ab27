use proptest::prelude::*;

use super::*;
use crate::gf2graph::{Graph, MeasurementLabel as L};

fn set(n: usize, ids: &[usize]) -> VertexSet {
    VertexSet::from_ids(n, ids.iter().copied())
}

fn flow(n: usize, p: &[(usize, &[usize])], order: &[(usize, usize)]) -> CorrectionFlow {
    let mut ps = vec![None; n];
    for &(u, s) in p {
        ps[u] = Some(set(n, s));
    }
    CorrectionFlow::new(ps, PartialOrder::from_pairs(n, order.iter().copied()).unwrap())
}

fn single_edge(label: L) -> OpenGraph {
    OpenGraph::from_parts(2, &[(0, 1)], &[], &[1], &[(0, label)]).unwrap()
}

/// Vertices 1, 2, 3 of the counterexample become 0, 1, 2.
fn counter_xy() -> OpenGraph {
    OpenGraph::from_parts(3, &[(0, 1), (0, 2)], &[], &[2], &[(0, L::XY), (1, L::X)]).unwrap()
}

#[test]
fn single_edge_examples() {
    let f = flow(2, &[(0, &[1])], &[]);
    assert!(verify_pauli_flow(&single_edge(L::X), &f).unwrap().is_valid());
    let v = verify_pauli_flow(&single_edge(L::Z), &f).unwrap();
    assert_eq!(
        v.violation(),
        Some(Violation {
            vertex: 0,
            condition: Condition::CZ,
            witness: None
        })
    );
    let og = single_edge(L::XZ);
    assert!(!verify_real_pauli_flow(&og, &f).unwrap().is_valid());
    let both = flow(2, &[(0, &[0, 1])], &[]);
    // Odd({0,1}) = {0,1} and 0 ∈ p(0).
    assert!(verify_real_pauli_flow(&og, &both).unwrap().is_valid());
}

#[test]
fn counter_xy_rejects_every_flow_with_1_before_2() {
    let og = counter_xy();
    for m0 in 0u64..8 {
        for m1 in 0u64..8 {
            let p = vec![
                Some(VertexSet::from_mask(3, m0)),
                Some(VertexSet::from_mask(3, m1)),
                None,
            ];
            let f = CorrectionFlow::new(p, PartialOrder::from_pairs(3, [(0, 1)]).unwrap());
            assert!(!verify_pauli_flow(&og, &f).unwrap().is_valid());
            assert!(!verify_pauli_flow_original(&og, &f).unwrap().is_valid());
        }
    }
    let good = flow(3, &[(0, &[2]), (1, &[0])], &[(1, 0)]);
    assert!(verify_pauli_flow(&og, &good).unwrap().is_valid());
    assert!(verify_pauli_flow_original(&og, &good).unwrap().is_valid());
}

#[test]
fn witness_names_offending_vertex() {
    let og = counter_xy();
    let f = flow(3, &[(0, &[2]), (1, &[0])], &[]);
    assert_eq!(
        verify_pauli_flow(&og, &f).unwrap().violation(),
        Some(Violation {
            vertex: 0,
            condition: Condition::CY,
            witness: Some(1)
        })
    );
}

#[test]
fn y_conditions_in_original_definition() {
    // Isolated vertex 0 labelled Y next to an output: p(0) = {0} gives
    // Odd({0}) = ∅, so the second disjunct of (P9) holds.
    let og = OpenGraph::from_parts(2, &[], &[], &[1], &[(0, L::Y)]).unwrap();
    let f = flow(2, &[(0, &[0])], &[]);
    assert!(verify_pauli_flow_original(&og, &f).unwrap().is_valid());
    assert!(verify_pauli_flow(&og, &f).unwrap().is_valid());

    // Triangle 0–1–2 with 2 the output: p(0) = {0, 1} has 0 ∈ p and
    // 0 ∈ Odd({0,1}) = {0,1}, so neither disjunct holds.
    let og = OpenGraph::from_parts(3, &[(0, 1), (1, 2), (0, 2)], &[], &[2], &[(0, L::Y), (1, L::X)])
        .unwrap();
    let f = flow(3, &[(0, &[0, 1]), (1, &[2])], &[(0, 1)]);
    assert_eq!(
        verify_pauli_flow_original(&og, &f).unwrap().violation(),
        Some(Violation {
            vertex: 0,
            condition: Condition::P9,
            witness: None
        })
    );
    assert!(!verify_pauli_flow(&og, &f).unwrap().is_valid());
}

#[test]
fn contract_errors() {
    let og = single_edge(L::X);
    let wrong = flow(2, &[(0, &[1]), (1, &[])], &[]);
    assert_eq!(verify_pauli_flow(&og, &wrong), Err(FlowError::CorrectionOnOutput(1)));
    let missing = flow(2, &[], &[]);
    assert_eq!(verify_pauli_flow(&og, &missing), Err(FlowError::MissingCorrection(0)));
    let og_in = OpenGraph::from_parts(2, &[(0, 1)], &[1], &[1], &[(0, L::X)]).unwrap();
    let f = flow(2, &[(0, &[1])], &[]);
    assert_eq!(
        verify_pauli_flow(&og_in, &f),
        Err(FlowError::CorrectionOnInput { vertex: 0, input: 1 })
    );
    assert_eq!(
        verify_real_pauli_flow(&single_edge(L::XY), &f),
        Err(FlowError::NotReal(0))
    );
    assert_eq!(verify_gflow(&og, &f), Err(FlowError::NotPlanar(0)));
}

fn line(n: usize, label: L) -> OpenGraph {
    let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    let labels: Vec<_> = (0..n - 1).map(|i| (i, label)).collect();
    OpenGraph::from_parts(n, &edges, &[0], &[n - 1], &labels).unwrap()
}

#[test]
fn causal_flow_on_lines() {
    for n in [2, 4] {
        let og = line(n, L::XY);
        let p: Vec<(usize, Vec<usize>)> = (0..n - 1).map(|i| (i, vec![i + 1])).collect();
        let p: Vec<(usize, &[usize])> = p.iter().map(|(u, s)| (*u, s.as_slice())).collect();
        let order: Vec<_> = (0..n - 2).map(|i| (i, i + 1)).collect();
        let f = flow(n, &p, &order);
        assert!(verify_causal_flow(&og, &f).unwrap().is_valid());
        assert!(verify_gflow(&og, &f).unwrap().is_valid());
    }
    let og = OpenGraph::from_parts(4, &[(0, 1), (0, 2), (0, 3)], &[], &[1, 2, 3], &[(0, L::XY)])
        .unwrap();
    let f = flow(4, &[(0, &[1, 2, 3])], &[]);
    // Odd({1,2,3}) = {0}: a gflow but not a causal flow.
    assert!(verify_gflow(&og, &f).unwrap().is_valid());
    assert_eq!(
        verify_causal_flow(&og, &f).unwrap().violation().unwrap().condition,
        Condition::Singleton
    );
}

#[test]
fn measured_inputs_exclude_z_labels() {
    for (label, ok) in [(L::Z, false), (L::XY, true), (L::XZ, false), (L::YZ, false), (L::X, true)] {
        let og = OpenGraph::from_parts(2, &[(0, 1)], &[0], &[1], &[(0, label)]).unwrap();
        assert_eq!(input_label_constraint(&og).is_valid(), ok, "{label}");
    }
}

#[test]
fn flow_json_round_trip() {
    let og = counter_xy();
    let f = flow(3, &[(0, &[2]), (1, &[0])], &[(1, 0)]);
    let back = CorrectionFlow::from_json(&og, &f.to_json(&og)).unwrap();
    assert_eq!(back, f);
    assert!(matches!(
        CorrectionFlow::from_json(&og, r#"{"p":{"9":[]}}"#),
        Err(FlowError::UnknownVertex(_))
    ));
}

/// Random open graph with up to 5 vertices, plus a random candidate flow.
fn arb_instance() -> impl Strategy<Value = (OpenGraph, CorrectionFlow)> {
    (1usize..=5).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (
            proptest::collection::vec(any::<bool>(), pairs),
            any::<u64>(),
            any::<u64>(),
            proptest::collection::vec(0usize..6, n),
            proptest::collection::vec(any::<u64>(), n),
            any::<u64>(),
            proptest::collection::vec(0usize..n, n),
        )
            .prop_map(move |(edges, imask, omask, labels, pmasks, omask2, perm_seed)| {
                let mut g = Graph::new(n);
                let mut k = 0;
                for a in 0..n {
                    for b in a + 1..n {
                        if edges[k] {
                            g.add_edge(a, b).unwrap();
                        }
                        k += 1;
                    }
                }
                let inputs = VertexSet::from_mask(n, imask & ((1 << n) - 1));
                let outputs = VertexSet::from_mask(n, omask & ((1 << n) - 1));
                let lab = (0..n)
                    .map(|v| (!outputs.contains(v)).then(|| L::ALL[labels[v]]))
                    .collect();
                let og = OpenGraph::new(g, inputs.clone(), outputs.clone(), lab).unwrap();
                let non_inputs = inputs.complement();
                let p = (0..n)
                    .map(|u| {
                        (!outputs.contains(u))
                            .then(|| VertexSet::from_mask(n, pmasks[u]).intersection(&non_inputs))
                    })
                    .collect();
                // Random order: a random DAG along a random ranking of Oᶜ.
                let mut rank: Vec<usize> = (0..n).collect();
                rank.sort_by_key(|&v| (perm_seed[v], v));
                let measured = outputs.complement();
                let mut pairs = Vec::new();
                let mut bit = 0;
                for (i, &a) in rank.iter().enumerate() {
                    for &b in &rank[i + 1..] {
                        if measured.contains(a) && measured.contains(b) && (omask2 >> (bit % 64)) & 1 == 1 {
                            pairs.push((a, b));
                        }
                        bit += 1;
                    }
                }
                let order = PartialOrder::from_pairs(n, pairs).unwrap();
                (og, CorrectionFlow::new(p, order))
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn simplified_and_original_definitions_agree((og, f) in arb_instance()) {
        let a = verify_pauli_flow(&og, &f).unwrap().is_valid();
        let b = verify_pauli_flow_original(&og, &f).unwrap().is_valid();
        prop_assert_eq!(a, b);
        if og.is_real() {
            prop_assert_eq!(verify_real_pauli_flow(&og, &f).unwrap().is_valid(), a);
        }
        if og.is_planar() {
            prop_assert_eq!(verify_gflow(&og, &f).unwrap().is_valid(), a);
        }
    }

    #[test]
    fn dropping_order_pairs_never_helps((og, f) in arb_instance(), drop in any::<u64>()) {
        let kept: Vec<_> = f
            .order
            .covering_pairs()
            .into_iter()
            .enumerate()
            .filter(|(i, _)| (drop >> (i % 64)) & 1 == 0)
            .map(|(_, pair)| pair)
            .collect();
        let coarser = CorrectionFlow::new(
            f.p.clone(),
            PartialOrder::from_pairs(og.n(), kept).unwrap(),
        );
        prop_assert!(coarser.order.is_subrelation_of(&f.order));
        if verify_pauli_flow(&og, &coarser).unwrap().is_valid() {
            prop_assert!(verify_pauli_flow(&og, &f).unwrap().is_valid());
        }
    }

    #[test]
    fn verdicts_respect_relabelling((og, f) in arb_instance(), seed in any::<u64>()) {
        let n = og.n();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by_key(|&v| (seed.rotate_left(v as u32 * 7) & 0xff, v));
        let a = verify_pauli_flow(&og, &f).unwrap().is_valid();
        let b = verify_pauli_flow(&og.permuted(&perm), &f.permuted(&perm)).unwrap().is_valid();
        prop_assert_eq!(a, b);
    }
}
