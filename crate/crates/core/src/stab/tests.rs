use num_complex::Complex64 as C64;
use proptest::prelude::*;

use super::*;
use crate::flowfind::{find_correction_closed_flow, find_pauli_flow, BruteForceBound};
use crate::gf2graph::MeasurementLabel as L;
use crate::pattern::{to_pattern, Angle, Command, Mbqc, Pattern};
use crate::simsv::branch_states;
use crate::synthesis::{is_correction_closed, synthesize_corrections, CorrectionStrategy};

fn arb_pauli(n: usize) -> impl Strategy<Value = PauliOperator> {
    (0u8..4, 0u64..1 << n, 0u64..1 << n).prop_map(move |(k, x, z)| {
        PauliOperator::from_parts(k, VertexSet::from_mask(n, x), VertexSet::from_mask(n, z))
    })
}

fn dense(p: &PauliOperator) -> Vec<Vec<C64>> {
    let n = p.n();
    let reg: Vec<usize> = (0..n).collect();
    (0..1 << n)
        .map(|c| {
            let mut e = vec![C64::new(0.0, 0.0); 1 << n];
            e[c] = C64::new(1.0, 0.0);
            p.apply(&reg, &e)
        })
        .collect()
}

fn close(a: &[C64], b: &[C64]) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).norm() < 1e-12)
}

fn cz_dense(n: usize, a: usize, b: usize, v: &[C64]) -> Vec<C64> {
    (0..1usize << n)
        .map(|i| if i >> a & 1 == 1 && i >> b & 1 == 1 { -v[i] } else { v[i] })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn product_matches_matrices(p in arb_pauli(3), q in arb_pauli(3), r in arb_pauli(3)) {
        let reg = [0, 1, 2];
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        for (c, col) in dense(&q).iter().enumerate() {
            prop_assert!(close(&p.apply(&reg, col), &dense(&p.mul(&q))[c]));
        }
        let pq = p.mul(&q);
        let qp = q.mul(&p);
        prop_assert_eq!(p.commutes(&q), pq == qp);
        if !p.commutes(&q) {
            prop_assert_eq!(pq, qp.neg());
        }
    }

    #[test]
    fn cz_conjugation_matches_matrices(p in arb_pauli(3), a in 0usize..3, d in 1usize..3) {
        let b = (a + d) % 3;
        let reg = [0, 1, 2];
        let mut c = p.clone();
        c.conjugate_cz(a, b);
        for (i, col) in dense(&p).iter().enumerate() {
            // CZ · P · CZ applied to CZ e_i equals CZ · P e_i.
            let e: Vec<C64> = (0..8).map(|j| C64::new((i == j) as u8 as f64, 0.0)).collect();
            let lhs = c.apply(&reg, &cz_dense(3, a, b, &e));
            prop_assert!(close(&lhs, &cz_dense(3, a, b, col)));
        }
        let mut back = c.clone();
        back.conjugate_cz(a, b);
        prop_assert_eq!(back, p);
    }
}

#[test]
fn display_uses_y() {
    let y = PauliOperator::single(3, 1, Axis::Y);
    assert_eq!(y.to_string(), "+IYI");
    let p = PauliOperator::single(3, 0, Axis::X).mul(&PauliOperator::single(3, 0, Axis::Z));
    assert_eq!(p.to_string(), "-iYII");
    assert!(y.is_hermitian() && !p.is_hermitian());
}

fn edge() -> OpenGraph {
    OpenGraph::from_parts(2, &[(0, 1)], &[0], &[1], &[(0, L::X)]).unwrap()
}

fn counter() -> OpenGraph {
    OpenGraph::from_parts(3, &[(0, 1), (0, 2)], &[], &[2], &[(0, L::XY), (1, L::X)]).unwrap()
}

#[test]
fn initial_generators() {
    let single = OpenGraph::from_parts(1, &[], &[], &[0], &[]).unwrap();
    let g = initial_stabilizers(&single, &VertexSet::empty(1)).unwrap();
    assert_eq!(g.generators(), &[PauliOperator::single(1, 0, Axis::X)]);
    let g = initial_stabilizers(&edge(), &VertexSet::empty(2)).unwrap();
    let names: Vec<String> = g.generators().iter().map(|p| p.to_string()).collect();
    assert_eq!(names, ["+XZ", "+ZX"]);
    let g = initial_stabilizers(&edge(), &VertexSet::singleton(2, 0)).unwrap();
    assert_eq!(g.generators()[0], PauliOperator::single(2, 0, Axis::Z));
    assert_eq!(
        initial_stabilizers(&edge(), &VertexSet::singleton(2, 1)),
        Err(StabError::NotInput(1))
    );
}

#[test]
fn initial_generators_fix_the_graph_state() {
    let og = counter();
    let g = initial_stabilizers(&og, &VertexSet::empty(3)).unwrap();
    let pat = Pattern::with_ids(3, &[], &[0, 1, 2], vec![
        Command::New(0),
        Command::New(1),
        Command::New(2),
        Command::Entangle(0, 1),
        Command::Entangle(0, 2),
    ]);
    let (_, psi) = branch_states(&pat, &[C64::new(1.0, 0.0)]).unwrap().remove(0);
    for p in g.generators() {
        assert!(close(&p.apply(&[0, 1, 2], &psi), &psi), "{p}");
    }
    assert!(projector_distance(g.generators(), &[0, 1, 2], &psi) < 1e-12);
}

#[test]
fn group_validation() {
    let x = PauliOperator::single(2, 0, Axis::X);
    let z = PauliOperator::single(2, 0, Axis::Z);
    assert_eq!(StabilizerGroup::new(vec![x.clone(), z]), Err(StabError::NotCommuting(0, 1)));
    assert_eq!(StabilizerGroup::new(vec![x.clone(), x.neg()]), Err(StabError::Dependent));
    let ix = PauliOperator::from_parts(1, x.x.clone(), x.z.clone());
    assert_eq!(
        StabilizerGroup::new(vec![ix, PauliOperator::single(2, 1, Axis::X)]),
        Err(StabError::NotHermitian(0))
    );
}

#[test]
fn measuring_plus() {
    let plus = StabilizerGroup::new(vec![PauliOperator::single(1, 0, Axis::X)]).unwrap();
    assert_eq!(plus.measure(&PauliOperator::single(1, 0, Axis::X)), Measurement::Determined(false));
    assert_eq!(
        plus.measure(&PauliOperator::single(1, 0, Axis::X).neg()),
        Measurement::Determined(true)
    );
    let Measurement::Random(posts) = plus.measure(&PauliOperator::single(1, 0, Axis::Z)) else {
        panic!("Z on |+⟩ is uniform");
    };
    assert_eq!(posts[1].generators()[0].to_string(), "-Z");
}

fn assert_claim1(group: &StabilizerGroup, ms: &[PauliOperator]) {
    let reordered = reorder_generators(group, ms).unwrap();
    let rows = |g: &StabilizerGroup| -> Vec<VertexSet> { g.generators().iter().map(|p| p.symplectic()).collect() };
    assert!(linalg::same_row_space(&rows(group), &rows(&reordered)));
    for p in reordered.generators() {
        assert_eq!(group.contains(p), Some(true));
    }
    for (i, m) in ms.iter().enumerate() {
        for j in i + 1..group.n() {
            assert!(m.commutes(&reordered.generators()[j]), "M_{i} vs P_{j}");
        }
    }
}

#[test]
fn reordering_examples() {
    let g = initial_stabilizers(&edge(), &VertexSet::empty(2)).unwrap();
    // Z_0 anticommutes only with X_0 Z_1, which is already in front.
    let z0 = PauliOperator::single(2, 0, Axis::Z);
    assert_eq!(reorder_generators(&g, &[z0.clone()]).unwrap(), g);
    assert_claim1(&g, &[z0]);
    // X_1 anticommutes with X_0 Z_1 only: nothing to eliminate either.
    let x1 = PauliOperator::single(2, 1, Axis::X);
    assert_claim1(&g, &[x1]);

    let og = counter();
    let g = initial_stabilizers(&og, &VertexSet::empty(3)).unwrap();
    for a in [Axis::X, Axis::Y, Axis::Z] {
        let ms = [PauliOperator::single(3, 0, a), PauliOperator::single(3, 1, Axis::X)];
        assert_claim1(&g, &ms);
    }
    assert_eq!(
        reorder_generators(&g, &[PauliOperator::single(3, 0, Axis::X), PauliOperator::single(3, 0, Axis::Z)]),
        Err(StabError::Remeasured(0))
    );
}

/// After `k` measurements along the reordered generators, the state is
/// stabilized by `±M_{v_j}` for `j < k` and by `P⁽ⁱ⁾` for `i ≥ k`.
#[test]
fn reordered_generators_survive_measurement() {
    let og = OpenGraph::from_parts(4, &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)], &[], &[3], &[(0, L::X), (1, L::X), (2, L::X)])
        .unwrap();
    let axes = [Axis::X, Axis::Y, Axis::Z];
    for a in axes {
        for b in axes {
            for c in axes {
                let ms = [
                    PauliOperator::single(4, 0, a),
                    PauliOperator::single(4, 1, b),
                    PauliOperator::single(4, 2, c),
                ];
                let g = initial_stabilizers(&og, &VertexSet::empty(4)).unwrap();
                let p = reorder_generators(&g, &ms).unwrap();
                let mut states = vec![(g.clone(), Vec::<bool>::new())];
                for (k, m) in ms.iter().enumerate() {
                    let mut next = Vec::new();
                    for (state, signs) in states {
                        match state.measure(m) {
                            Measurement::Determined(s) => next.push((state, [signs, vec![s]].concat())),
                            Measurement::Random(posts) => {
                                let [zero, one] = *posts;
                                next.push((zero, [signs.clone(), vec![false]].concat()));
                                next.push((one, [signs, vec![true]].concat()));
                            }
                        }
                    }
                    for (state, signs) in &next {
                        for (j, mj) in ms.iter().enumerate().take(k + 1) {
                            assert_eq!(state.contains(mj), Some(!signs[j]));
                        }
                        for i in k + 1..4 {
                            assert_eq!(state.contains(&p.generators()[i]), Some(true));
                        }
                    }
                    states = next;
                }
            }
        }
    }
}

/// Exhaustive all-Pauli instantiations of a four-vertex open graph, against
/// the dense simulator.
#[test]
fn agrees_with_state_vectors() {
    let pauli = [(L::X, Angle::ZERO), (L::X, Angle::PI), (L::Y, Angle::ZERO), (L::XY, Angle::from_ratio(1, 2)), (L::XZ, Angle::ZERO), (L::YZ, Angle::PI)];
    let mut checked = 0;
    for &(l0, a0) in &pauli[..4] {
        for &(l1, a1) in &pauli {
            for &(l2, a2) in &pauli {
                let pat = Pattern::with_ids(4, &[0], &[3], vec![
                    Command::New(1),
                    Command::New(2),
                    Command::New(3),
                    Command::Entangle(0, 1),
                    Command::Entangle(1, 2),
                    Command::Entangle(2, 3),
                    Command::Entangle(1, 3),
                    Command::Measure { qubit: 0, label: l0, angle: a0 },
                    Command::CorrectX { qubit: 1, signal: 0 },
                    Command::Measure { qubit: 1, label: l1, angle: a1 },
                    Command::CorrectZ { qubit: 3, signal: 1 },
                    Command::CorrectX { qubit: 2, signal: 1 },
                    Command::Measure { qubit: 2, label: l2, angle: a2 },
                    Command::CorrectX { qubit: 3, signal: 2 },
                ]);
                for zero in [VertexSet::empty(4), VertexSet::singleton(4, 0)] {
                    let h = std::f64::consts::FRAC_1_SQRT_2;
                    let input = if zero.is_empty() {
                        vec![C64::new(h, 0.0); 2]
                    } else {
                        vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)]
                    };
                    let dense = branch_states(&pat, &input).unwrap();
                    let stab = simulate_pattern(&pat, &zero).unwrap();
                    for (signals, psi) in &dense {
                        let norm = psi.iter().map(|a| a.norm_sqr()).sum::<f64>();
                        match stab.iter().find(|b| &b.signals == signals) {
                            Some(b) => {
                                assert!(projector_distance(&b.output, &[3], psi) < 1e-9);
                                let expected = 0.5f64.powi(3 - (!b.uniform) as i32);
                                if b.uniform {
                                    assert!((norm - expected).abs() < 1e-9);
                                }
                            }
                            None => assert!(norm < 1e-20),
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    assert_eq!(checked, 4 * 6 * 6 * 2 * 8);
}

#[test]
fn non_pauli_measurement_rejected() {
    let pat = Pattern::with_ids(2, &[], &[1], vec![
        Command::New(0),
        Command::New(1),
        Command::Entangle(0, 1),
        Command::Measure { qubit: 0, label: L::XY, angle: Angle::from_ratio(1, 4) },
    ]);
    assert_eq!(simulate_pattern(&pat, &VertexSet::empty(2)), Err(StabError::NonPauli(0)));
}

fn real_counter() -> OpenGraph {
    OpenGraph::from_parts(3, &[(0, 1), (0, 2)], &[], &[2], &[(0, L::X), (1, L::XZ)]).unwrap()
}

#[test]
fn probe_passes_synthesized_and_fails_uncorrected() {
    let og = real_counter();
    let flow = find_correction_closed_flow(&og, BruteForceBound::default())
        .unwrap()
        .flow
        .expect("flow");
    assert!(is_correction_closed(&og, &flow).unwrap());
    let strategy = synthesize_corrections(&og, &flow).unwrap();
    let m = Mbqc::with_uniform_angle(og.clone(), Angle::from_ratio(1, 3), strategy).unwrap();
    let report = pauli_robustness_probe(&m).unwrap();
    assert!(report.passed, "{report:?}");
    assert!(report.cases > 1);

    let bare = Mbqc::with_uniform_angle(og.clone(), Angle::from_ratio(1, 3), CorrectionStrategy::empty(&og.non_outputs()))
        .unwrap();
    let report = pauli_robustness_probe(&bare).unwrap();
    assert!(!report.passed);
    serde_json::to_string(&report).unwrap();
    assert!(to_pattern(&bare).is_ok());
}

// The layered flow has p(1) = {0, 1, 2} with 0 unordered against 1, so the
// synthesized strategy drops the Z byproduct on 0. Stopping after measuring
// 1 alone leaves it on the unmeasured qubit 0.
#[test]
fn probe_catches_dropped_byproduct() {
    let og = real_counter();
    let flow = find_pauli_flow(&og).flow.expect("flow");
    assert!(!is_correction_closed(&og, &flow).unwrap());
    let strategy = synthesize_corrections(&og, &flow).unwrap();
    let m = Mbqc::with_uniform_angle(og.clone(), Angle::from_ratio(1, 3), strategy).unwrap();
    let report = pauli_robustness_probe(&m).unwrap();
    let failure = report.failure.expect("fails");
    assert_eq!(failure.lowerset, vec!["1".to_string()]);
}

#[test]
fn probe_edge_cases() {
    let og = OpenGraph::from_parts(2, &[(0, 1)], &[0], &[0, 1], &[]).unwrap();
    let m = Mbqc::new(og, vec![None, None], CorrectionStrategy::default()).unwrap();
    let report = pauli_robustness_probe(&m).unwrap();
    assert!(report.passed);
    let og = counter();
    let flow = find_pauli_flow(&og).flow.unwrap();
    let s = synthesize_corrections(&og, &flow).unwrap();
    let m = Mbqc::with_uniform_angle(og, Angle::ZERO, s).unwrap();
    assert_eq!(pauli_robustness_probe(&m), Err(StabError::NotReal(0)));
}
