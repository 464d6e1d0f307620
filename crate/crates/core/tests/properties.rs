use proptest::prelude::*;

use qudit_arith::ir::{Circuit, Control, Digit, Gate, GateKind};
use qudit_arith::json::{from_json, to_json};
use qudit_arith::sim::{full_space, is_injective, permutation_table, run, run_statevector, BasisState, Statevector};

/// A random valid circuit over a few small-dimension wires.
fn arb_circuit() -> impl Strategy<Value = Circuit> {
    prop::collection::vec(2u32..=4, 1..=4).prop_flat_map(|dims| {
        let w = dims.len();
        let gate = (0..w, 0..w, 0..w, any::<u8>(), any::<u8>(), any::<u8>(), 0usize..3, 0usize..3);
        prop::collection::vec(gate, 0..24).prop_map(move |raw| {
            let mut c = Circuit::with_dims(&dims).unwrap();
            for (t, c0, c1, p, q, v, kind, nctl) in raw {
                let d = dims[t];
                let kind = match kind {
                    0 => {
                        let i = p as Digit % d;
                        let j = (i + 1 + q as Digit % (d - 1)) % d;
                        GateKind::Flip(i, j)
                    }
                    1 => GateKind::Increment(1 + p as Digit % (d - 1)),
                    _ => GateKind::Swap,
                };
                let targets = if kind == GateKind::Swap {
                    match (0..w).find(|&o| o != t && dims[o] == d) {
                        Some(o) => vec![t, o],
                        None => continue,
                    }
                } else {
                    vec![t]
                };
                let mut controls = Vec::new();
                if kind != GateKind::Swap {
                    for cw in [c0, c1].into_iter().take(nctl) {
                        if !targets.contains(&cw) && controls.iter().all(|c: &Control| c.wire != cw) {
                            controls.push(Control::new(cw, v as Digit % dims[cw]));
                        }
                    }
                }
                c.push(Gate::new(kind, targets, controls)).unwrap();
            }
            c
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inverse_undoes_run(c in arb_circuit(), seed in any::<u64>()) {
        let dims = c.dims();
        let s = BasisState(dims.iter().enumerate().map(|(i, &d)| ((seed >> (4 * i)) as Digit) % d).collect());
        let out = run(&c, &s).unwrap();
        prop_assert_eq!(run(&c.inverse(), &out).unwrap(), s);
    }

    #[test]
    fn depth_bounds(c in arb_circuit()) {
        prop_assert!(c.depth() <= c.len());
        if !c.is_empty() {
            prop_assert!(c.depth() >= 1);
            prop_assert!(c.depth() * c.width() >= c.gates().iter().map(|g| g.arity()).sum::<usize>());
        }
        let again = c.concat(&c).unwrap();
        prop_assert!(again.depth() <= 2 * c.depth());
    }

    #[test]
    fn permutation(c in arb_circuit()) {
        let table = permutation_table(&c, full_space(&c)).unwrap();
        prop_assert!(is_injective(&table));
    }

    #[test]
    fn statevector_agrees(c in arb_circuit()) {
        let dims = c.dims();
        for s in full_space(&c).take(16) {
            let v = run_statevector(&c, &Statevector::basis(&dims, &s).unwrap()).unwrap();
            let out = run(&c, &s).unwrap();
            prop_assert!((v.amplitude(&out).re - 1.0).abs() < 1e-12);
            prop_assert!((v.norm_sqr() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn json_round_trip(c in arb_circuit()) {
        let s = to_json(&c);
        let back = from_json(&s).unwrap();
        prop_assert_eq!(back.gates(), c.gates());
        prop_assert_eq!(to_json(&back), s);
    }
}
