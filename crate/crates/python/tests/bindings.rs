use pyo3::prelude::*;
use pyo3::types::PyDict;

use qudit_arith_py::qudit_arith_py;

#[test]
fn module_from_python() {
    pyo3::append_to_inittab!(qudit_arith_py);
    Python::initialize();
    Python::attach(|py| {
        let locals = PyDict::new(py);
        py.run(
            cr#"
import json
import qudit_arith_py as q

c = q.compress_231()
assert c.run([1, 0, 1]) == [2, 1, 0]
assert len(q.compress_241()) == 3
assert q.ancilla_required(8) == 12

back = q.Circuit.from_json(c.to_json())
assert back.to_json() == c.to_json()
assert c.inverse().run([2, 1, 0]) == [1, 0, 1]

plan = json.loads(q.plan_blocks("a+b", "231", 30))
assert plan["c"] == 5
assert q.plan_blocks("a+b", "231", 29) is None

a, b = 2**29 + 12345, 2**30 - 7
s, carry = q.block_add(30, a, b)
assert s == (a + b) % 2**30 and carry == (a + b) >> 30

k = 2**59 + 3
adder = q.block_plus_k(60, k, "241")
assert adder.width == 60

try:
    q.block_adder(29)
except ValueError as e:
    assert "2n/c + c - 1" in str(e)
else:
    raise AssertionError("expected ValueError")
result = "ok"
"#,
            None,
            Some(&locals),
        )
        .unwrap();
        let r: String = locals.get_item("result").unwrap().unwrap().extract().unwrap();
        assert_eq!(r, "ok");
    });
}
