"""Smoke test for the qudit_arith_py extension.

Build and install first, e.g.

    (cd crates/python && maturin build --release)
    pip install target/wheels/qudit_arith_py-*.whl
"""

import json
import random

import qudit_arith_py as q


def main():
    c = q.compress_231()
    rows = {
        (0, 0, 0): [0, 0, 0], (0, 0, 1): [2, 2, 0], (0, 1, 0): [0, 1, 0], (0, 1, 1): [0, 2, 0],
        (1, 0, 0): [1, 0, 0], (1, 0, 1): [2, 1, 0], (1, 1, 0): [1, 1, 0], (1, 1, 1): [1, 2, 0],
    }
    for inp, out in rows.items():
        assert c.run(list(inp)) == out, (inp, c.run(list(inp)))
    assert len(q.compress_241()) == 3

    plan = json.loads(q.plan_blocks("a+b", "241", 12))
    print("2-4-1 plan for n=12:", plan["c"], "blocks")

    rng = random.Random(1)
    for n, scheme in [(30, "231"), (12, "241")]:
        for _ in range(20):
            a, b = rng.getrandbits(n), rng.getrandbits(n)
            s, carry = q.block_add(n, a, b, scheme)
            assert (s, carry) == ((a + b) % 2**n, (a + b) >> n)

    adder = q.block_adder(30, "231", carry_in=True, carry_out=True)
    state = [rng.randrange(2) for _ in range(adder.width)]
    out, peak = adder.run_max_digit(state)
    assert peak <= 2 and max(out) <= 1
    assert adder.inverse().run(out) == state
    print(adder, json.loads(adder.report())["max_dim_touched"])
    print("smoke test passed")


if __name__ == "__main__":
    main()
