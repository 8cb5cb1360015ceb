//! Randomized cross-module properties.

use proptest::prelude::*;

use qladder::circuit::{Circuit, Gate, WireSpec};
use qladder::format;
use qladder::sim::StateVector;

/// Block-free random gate valid for the given spec.
fn arb_gate(d: usize, n: usize) -> impl Strategy<Value = Gate> {
    let pair = (0..n, 0..n).prop_filter("distinct wires", |(c, t)| c != t);
    prop_oneof![
        (pair.clone(), 1..d as i64)
            .prop_map(move |((c, t), a)| Gate::controlled_increment(c, t, d - 1, a, d)),
        (pair.clone(), 1..d as i64)
            .prop_map(move |((c, t), a)| Gate::conditional_increment(c, t, d - 1, a, d)),
        (pair.clone(), any::<bool>()).prop_map(move |((c, t), neg)| {
            let k = if neg { -(d as i64) } else { d as i64 };
            Gate::controlled_increment(c, t, d - 1, k, 2 * d)
        }),
        pair.prop_map(move |(c, t)| Gate::negated_sum(c, t, d)),
        (0..n, 1..d as i64).prop_map(move |(w, k)| Gate::increment(w, k, d)),
    ]
}

fn arb_circuit() -> impl Strategy<Value = Circuit> {
    (2..4usize, 2..4usize).prop_flat_map(|(d, n)| {
        prop::collection::vec(arb_gate(d, n), 0..8).prop_map(move |gates| {
            Circuit::from_gates(WireSpec::new(d, n).unwrap(), gates).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn inverse_is_involution(circuit in arb_circuit()) {
        let back = circuit.inverse().unwrap().inverse().unwrap();
        prop_assert_eq!(circuit, back);
    }

    #[test]
    fn circuit_followed_by_inverse_is_identity(circuit in arb_circuit()) {
        // NegatedSum only acts on base-level values, so simulate over the
        // base dims where every random gate is total.
        let spec = circuit.spec();
        let has_promotion = circuit.gates().iter().any(|g| match g.kind {
            qladder::GateKind::ControlledIncrement { modulus, .. }
            | qladder::GateKind::ConditionalIncrement { modulus, .. } => {
                modulus == spec.working_dim
            }
            _ => false,
        });
        let dim = if has_promotion { spec.working_dim } else { spec.base_dim };
        let has_negated_sum = circuit
            .gates()
            .iter()
            .any(|g| matches!(g.kind, qladder::GateKind::NegatedSum { .. }));
        prop_assume!(!(has_promotion && has_negated_sum));

        let mut round_trip = circuit.clone();
        for g in circuit.inverse().unwrap().gates() {
            round_trip.push(g.clone()).unwrap();
        }
        let dims = vec![dim; spec.count];
        let total: usize = dims.iter().product();
        for idx in 0..total {
            let mut digits = vec![0usize; spec.count];
            let mut rest = idx;
            for i in (0..spec.count).rev() {
                digits[i] = rest % dim;
                rest /= dim;
            }
            let state = StateVector::<f64>::basis_state(&dims, &digits).unwrap();
            let out = state.run(&round_trip).unwrap();
            let back = out.amplitude_of(&digits);
            prop_assert!((back.re - 1.0).abs() < 1e-12 && back.im.abs() < 1e-12);
        }
    }

    #[test]
    fn print_parse_round_trip(circuit in arb_circuit()) {
        let printed = format::print_circuit(&circuit).unwrap();
        let reparsed = format::parse_circuit(&printed).unwrap();
        prop_assert_eq!(&circuit, &reparsed);
        prop_assert_eq!(format::print_circuit(&reparsed).unwrap(), printed);
    }
}
