use std::ffi::CString;

use pyo3::prelude::*;

use graphheight_py::graphheight_py;

fn run(code: &str) {
    pyo3::append_to_inittab!(graphheight_py);
    Python::initialize();
    Python::attach(|py| {
        let code = CString::new(code).unwrap();
        py.run(&code, None, None).unwrap();
    });
}

#[test]
fn module_round_trip() {
    run(r#"
import json, math
import graphheight as gh

g = gh.Graph.family("star:5")
assert g.base_height() == 2
assert g.scheme_height(gh.Graph.family("star:5").plan(6)) == 6
assert gh.Graph.family("circle").base_height() == 0
assert gh.Graph.family("interval").plan(math.inf) == '{"variant":"Trivial"}'
assert json.loads(g.cross_check())["agree"]

f = gh.PLMap([("0", "0"), ("1/2", "1/4"), ("1", "1")])
assert f.eval("1/2") == "1/4"
cert = f.infinity_certificate(4)
assert f.verify_certificate(cert)

try:
    gh.Graph.from_json("{}")
    raise AssertionError("expected ValueError")
except ValueError:
    pass
"#);
}
