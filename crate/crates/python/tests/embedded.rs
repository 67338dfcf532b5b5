use pyo3::prelude::*;
use pyo3::types::PyDict;

use jacquet::jacquet;

fn run(code: &str) {
    pyo3::append_to_inittab!(jacquet);
    pyo3::prepare_freethreaded_python();
    Python::with_gil(|py| {
        let globals = PyDict::new(py);
        let code = std::ffi::CString::new(code).unwrap();
        if let Err(e) = py.run(&code, Some(&globals), None) {
            e.print(py);
            panic!("python failed: {e}");
        }
    });
}

#[test]
fn module_from_embedded_interpreter() {
    run(r#"
import jacquet
assert jacquet.parse("nu^1/2 rho x nu^3/2 rho |x| sigma")[1] == "g"
assert len(jacquet.m_star("d([0,1;rho])")) == 3
d = jacquet.aubert("z([-2,-1;rho0]) |x| sigma", bruteforce=True)
assert d["matches_factorwise"] and d["hat"] == "d([1,2;rho0]) |x| sigma", d
v = jacquet.dps(alpha=2, a=1, b=2, x=4, same=True)
assert v["length"] == 2 and not v["irreducible"], v
try:
    jacquet.dps(alpha=2, a=1, b=2, x=4)
    raise AssertionError("missing beta accepted")
except jacquet.JacquetError:
    pass
try:
    jacquet.m_star("d([2,1;rho])")
    raise AssertionError("hi < lo accepted")
except ValueError as e:
    assert "hi < lo" in str(e), e
assert all(s != "fail" for _, s, _ in jacquet.verify(["beta0.block-once.1-2"]))
"#);
}
