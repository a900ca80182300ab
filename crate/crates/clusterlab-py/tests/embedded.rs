use clusterlab_py::clusterlab_module;
use pyo3::prelude::*;

#[test]
fn module_works_inside_an_embedded_interpreter() {
    pyo3::append_to_inittab!(clusterlab_module);
    Python::attach(|py| {
        py.run(
            cr#"
import clusterlab
s = clusterlab.Seed([[0, 1], [-1, 0]])
assert sorted(s.mutate_word([1, 2, 1, 2, 1]).cluster) == sorted(s.cluster)
assert clusterlab.somos4(8)[-1] == 23
try:
    s.mutate(5)
    raise AssertionError("no error")
except IndexError:
    pass
"#,
            None,
            None,
        )
        .unwrap();
    });
}
