use num_bigint::BigUint;

use qudit_arith::block_builder::{
    build_block_adder, build_block_plus_k, build_zero_ancilla_adder, min_blocks_exact, plan_blocks, step_budget,
    worst_case_feasible, BlockAssembler, BlockPlan, Mode, RegisterLayout,
};
use qudit_arith::compress::CompressionScheme;
use qudit_arith::sim::{run, run_instrumented, BasisState};
use qudit_arith::Digit;

const S231: CompressionScheme = CompressionScheme::TWO_THREE_ONE;
const S241: CompressionScheme = CompressionScheme::TWO_FOUR_ONE;

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn pow2(n: usize) -> BigUint {
    BigUint::from(1u8) << n
}

fn input(regs: &RegisterLayout, width: usize, a: &BigUint, b: &BigUint, cin: Digit) -> BasisState {
    let mut s = BasisState::zeros(width);
    s.set_bits(&regs.a, a);
    s.set_bits(&regs.b, b);
    if let Some(w) = regs.carry_in {
        s.0[w] = cin;
    }
    s
}

#[test]
fn a_plus_b_examples() {
    let plan = plan_blocks(Mode::APlusB, S231, 30).unwrap();
    let circ = build_block_adder(&plan, false, true).unwrap();
    let regs = RegisterLayout::new(Mode::APlusB, 30, false, true);
    let cout = regs.carry_out.unwrap();
    assert_eq!(circ.width(), 61);

    let out = run(&circ, &input(&regs, 61, &big(1), &big(1), 0)).unwrap();
    assert_eq!(out.get_bits(&regs.b), big(2));
    assert_eq!(out.get_bits(&regs.a), big(1));
    assert_eq!(out.0[cout], 0);
    assert!(out.max_digit() <= 1);

    let out = run(&circ, &input(&regs, 61, &(pow2(30) - 1u8), &big(1), 0)).unwrap();
    assert_eq!(out.get_bits(&regs.b), big(0));
    assert_eq!(out.0[cout], 1);

    let zero = BasisState::zeros(61);
    assert_eq!(run(&circ, &zero).unwrap(), zero);
}

#[test]
fn plus_k_examples() {
    let plan = plan_blocks(Mode::PlusK, S231, 168).unwrap();
    let regs = RegisterLayout::new(Mode::PlusK, 168, false, false);
    let one = build_block_plus_k(&plan, &big(1), false, false).unwrap();
    assert_eq!(one.width(), 168);

    let out = run(&one, &BasisState::zeros(168)).unwrap();
    assert_eq!(out.get_bits(&regs.b), big(1));

    let all = pow2(168) - 1u8;
    let out = run(&one, &input(&regs, 168, &big(0), &all, 0)).unwrap();
    assert_eq!(out.get_bits(&regs.b), big(0));
    assert!(out.max_digit() <= 1);

    let zero_k = build_block_plus_k(&plan, &big(0), false, false).unwrap();
    let b = pow2(167) + 0xdead_beef_u64;
    let out = run(&zero_k, &input(&regs, 168, &big(0), &b, 0)).unwrap();
    assert_eq!(out.get_bits(&regs.b), b);
}

/// State right after gate index `end - 1` (or the input when `end == 0`).
fn snapshot(circ: &qudit_arith::Circuit, s: &BasisState, end: usize) -> Vec<Digit> {
    let mut snap = s.0.clone();
    run_instrumented(circ, s, |i, d| {
        if i + 1 == end {
            snap = d.to_vec();
        }
    })
    .unwrap();
    snap
}

fn check_uncompute(plan: &BlockPlan, carry_in: bool, carry_out: bool, samples: &[(u64, u64, Digit)]) {
    let (circ, phases) = BlockAssembler::new(plan, carry_in, carry_out, None).unwrap().build().unwrap();
    let regs = RegisterLayout::new(plan.mode, plan.n, carry_in, carry_out);
    for &(a, b, cin) in samples {
        let s = input(&regs, circ.width(), &big(a), &big(b), cin);
        let before = snapshot(&circ, &s, phases.forward_end);
        let after = snapshot(&circ, &s, phases.uncompute_end);
        for &slot in &plan.carry_slots {
            assert_eq!(after[slot], 0, "slot {slot} not cleared");
        }
        for w in 0..circ.width() {
            if !plan.carry_slots.contains(&w) {
                assert_eq!(before[w], after[w], "wire {w} changed during uncompute");
            }
        }
    }
}

#[test]
fn uncompute_clears_slots_and_keeps_sums() {
    let plan = plan_blocks(Mode::APlusB, S231, 30).unwrap();
    let max = (1u64 << 30) - 1;
    let samples = [(max, 1, 0), (max, max, 1), (0x2aaa_aaaa, 0x1555_5556, 1), (123_456, 654_321, 0)];
    check_uncompute(&plan, true, true, &samples);
    check_uncompute(&plan, false, false, &samples);

    // c = 2: a single carry slot
    let small = BlockPlan::with_blocks(Mode::APlusB, S241, 6, 2).unwrap();
    assert_eq!(small.carry_slots.len(), 1);
    let samples: Vec<(u64, u64, Digit)> = (0..64).map(|a| (a, 63 - a + (a & 1), (a & 1) as Digit)).collect();
    check_uncompute(&small, true, true, &samples);
}

#[test]
fn plans_are_minimal() {
    for (mode, scheme) in [(Mode::APlusB, S231), (Mode::APlusB, S241), (Mode::PlusK, S231), (Mode::PlusK, S241)] {
        for n in 1..=400 {
            let Some(plan) = plan_blocks(mode, scheme, n) else {
                continue;
            };
            assert!(worst_case_feasible(mode, scheme, n, plan.c));
            assert!(plan.budget.fits());
            for c in 2..plan.c {
                let both = n % c == 0
                    && worst_case_feasible(mode, scheme, n, c)
                    && step_budget(mode, scheme, n, c).unwrap().fits();
                assert!(!both, "{mode} {} n={n}: c={c} also works", scheme.label());
            }
            // blocks partition the registers
            let mut all: Vec<usize> = plan.blocks.concat();
            all.sort_unstable();
            let regs = match mode {
                Mode::APlusB => 2 * n,
                Mode::PlusK => n,
            };
            assert_eq!(all, (0..regs).collect::<Vec<_>>());
        }
    }
}

#[test]
fn exact_accounting_versus_worst_case() {
    assert_eq!(min_blocks_exact(Mode::APlusB, S241, 12), Some(3));
    assert_eq!(plan_blocks(Mode::APlusB, S241, 12).unwrap().c, 4);
    for (mode, scheme, n, c) in [
        (Mode::APlusB, S231, 30, 5),
        (Mode::APlusB, S241, 12, 4),
        (Mode::PlusK, S231, 168, 8),
        (Mode::PlusK, S241, 60, 6),
    ] {
        // both tests accept the threshold plans
        assert!(step_budget(mode, scheme, n, c).unwrap().fits());
        assert!(worst_case_feasible(mode, scheme, n, c));
    }
}

#[test]
fn small_n_fallback_exhaustive() {
    for n in 1..=6usize {
        for (ci, co) in [(false, false), (true, false), (false, true), (true, true)] {
            let circ = build_zero_ancilla_adder(S231, n, ci, co).unwrap();
            let regs = RegisterLayout::new(Mode::APlusB, n, ci, co);
            assert_eq!(circ.width(), regs.width());
            for a in 0..1u64 << n {
                for b in 0..1u64 << n {
                    for cin in 0..=ci as Digit {
                        let out = run(&circ, &input(&regs, circ.width(), &big(a), &big(b), cin)).unwrap();
                        let total = a + b + cin as u64;
                        assert_eq!(out.get_bits(&regs.b), big(total % (1 << n)));
                        assert_eq!(out.get_bits(&regs.a), big(a));
                        if let Some(w) = regs.carry_out {
                            assert_eq!(out.0[w] as u64, total >> n);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn small_block_plans_exhaustive() {
    // forced small plans, both schemes, end to end
    let cases = [(Mode::APlusB, S241, 6, 2), (Mode::APlusB, S241, 6, 3), (Mode::APlusB, S231, 9, 3)];
    for (mode, scheme, n, c) in cases {
        let plan = BlockPlan::with_blocks(mode, scheme, n, c).unwrap();
        let circ = build_block_adder(&plan, true, true).unwrap();
        let regs = RegisterLayout::new(mode, n, true, true);
        for a in 0..1u64 << n {
            for b in (0..1u64 << n).step_by(3) {
                let out = run(&circ, &input(&regs, circ.width(), &big(a), &big(b), 1)).unwrap();
                let total = a + b + 1;
                assert_eq!(out.get_bits(&regs.b), big(total % (1 << n)), "{} n={n} c={c}", scheme.label());
                assert_eq!(out.0[regs.carry_out.unwrap()] as u64, total >> n);
                assert!(out.max_digit() <= 1);
            }
        }
    }
}
