import subprocess
import sys

import numpy as np
import pytest

from qplex.cli import dispatch, main
from qplex.docio import (
    Document,
    DocumentError,
    decode_complex,
    dumps,
    fiducial_doc,
    fiducial_from,
    load_document,
    loads,
    operator_doc,
    points_doc,
    prob_doc,
    save_document,
    sic_system_doc,
    system_from,
)
from qplex.linalg import random_density
from qplex.rep import state_to_prob
from qplex.sic import (
    SicSystem,
    build_quasi_sic,
    find_sic_fiducial,
    known_fiducial,
    sic_defect,
    sic_from_fiducial,
    verify_sic,
)


# documents ----------------------------------------------------------------------

def test_fiducial_round_trip_bit_exact(tmp_path):
    fid = find_sic_fiducial(3, seed=2)
    path = tmp_path / "fid.json"
    save_document(fiducial_doc(fid), path)
    back = fiducial_from(load_document(path))
    assert back.vector.tobytes() == fid.vector.tobytes()


def test_awkward_floats_round_trip():
    x = np.array([0.1, 1 / 3, 2**-1074, 1e308, -0.0, np.nextafter(1.0, 2.0)])
    doc = loads(dumps(Document("point_set", None, {"points": [x.tolist()]})))
    got = np.array(doc.data["points"][0])
    assert got.tobytes() == x.tobytes()


def test_sic_system_round_trip(sics):
    doc = loads(dumps(sic_system_doc(sics[3])))
    s = system_from(doc)
    np.testing.assert_array_equal(s.projectors, sics[3].projectors)
    np.testing.assert_array_equal(s.fiducial.vector, sics[3].fiducial.vector)
    q = system_from(loads(dumps(sic_system_doc(build_quasi_sic(4), quasi=True))))
    np.testing.assert_array_equal(q.operators, build_quasi_sic(4).operators)


def test_complex_encoding():
    enc = loads(dumps(operator_doc(np.eye(2) * (1 + 1j), 2))).data["matrix"]
    assert enc[0][0] == [1.0, 1.0] and enc[0][1] == [0.0, 0.0]
    np.testing.assert_array_equal(decode_complex([[[1, 2], [0, -3]]], "x"), [[1 + 2j, -3j]])


def test_negative_probability_names_index():
    with pytest.raises(DocumentError, match=r"data\.p\[2\]: negative probability -0\.2"):
        loads(dumps(prob_doc([0.6, 0.6, -0.2, 0.0], 2)))


def test_document_errors():
    with pytest.raises(DocumentError, match=r"<string>:1:"):
        loads("{not json")
    with pytest.raises(DocumentError, match="format"):
        loads('{"format": "other", "kind": "params", "data": {}}')
    with pytest.raises(DocumentError, match="unknown document kind"):
        Document("banana", None, {})
    with pytest.raises(DocumentError, match="dim: required"):
        loads(dumps(Document("fiducial", None, {"vector": [[1, 0]]})))
    with pytest.raises(DocumentError, match="data.vector"):
        loads(dumps(Document("fiducial", 3, {"vector": [[1, 0], [0, 0]]})))
    with pytest.raises(DocumentError, match="labels"):
        loads(dumps(points_doc(np.full((2, 4), 0.25), 2, labels=["a"])))
    with pytest.raises(DocumentError, match="no such file"):
        load_document("/nonexistent/doc.json")


def test_non_finite_rejected():
    text = dumps(Document("point_set", None, {"points": [[0.5, 0.5]]})).replace("0.5", "NaN", 1)
    with pytest.raises(DocumentError, match="non-finite"):
        loads(text)


def test_dumps_is_deterministic(sics):
    a = dumps(sic_system_doc(sics[2], meta={"b": 1, "a": 2}))
    b = dumps(sic_system_doc(sics[2], meta={"a": 2, "b": 1}))
    assert a == b


# CLI ----------------------------------------------------------------------------

def test_sic_find_example(tmp_path, capsys):
    out = tmp_path / "fid.json"
    status, rep = dispatch(["sic", "find", "--dim", "3", "--seed", "7", "--tol", "1e-12", "--out", str(out)])
    assert status == 0 and rep.passed
    assert "seed = 7" in capsys.readouterr().out
    fid = fiducial_from(load_document(out))
    assert sic_defect(fid) < 1e-12


def test_sic_find_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert main(["sic", "find", "--dim", "4", "--seed", "3", "--out", str(p), "--quiet"]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_sic_find_failure_exit_code():
    assert main(["sic", "find", "--dim", "2", "--tol", "0", "--max-iter", "2", "--quiet"]) == 1


def test_sic_verify_with_verify_flag(tmp_path, sics):
    good = tmp_path / "sic.json"
    save_document(sic_system_doc(sics[2]), good)
    status, rep = dispatch(["sic", "verify", "--in", str(good), "--verify", "--quiet"])
    assert status == 0 and rep.checks["loaded_sic_valid"]
    bad = tmp_path / "bad.json"
    proj = sics[2].projectors.copy()
    proj[0] = np.eye(2) / 2
    save_document(sic_system_doc(SicSystem(2, proj)), bad)
    status, rep = dispatch(["sic", "verify", "--in", str(bad), "--verify", "--quiet"])
    assert status == 1 and not rep.checks["loaded_sic_valid"]


def test_sic_quasi():
    status, _ = dispatch(["sic", "quasi", "--dim", "4", "--quiet"])
    assert status == 0


def test_check_germ_on_quantum_states(tmp_path, sics):
    pts = np.array([state_to_prob(random_density(2, 1, k), sics[2]) for k in range(30)])
    path = tmp_path / "states.json"
    save_document(points_doc(pts, 2), path)
    assert main(["geom", "check-germ", "--in", str(path), "--dim", "2", "--quiet"]) == 0
    save_document(points_doc(np.vstack([pts, np.eye(4)[:1]]), 2), path)
    assert main(["geom", "check-germ", "--in", str(path), "--dim", "2", "--quiet"]) == 1


def test_urgleichung_dim_mismatch(tmp_path):
    p = tmp_path / "p.json"
    r = tmp_path / "r.json"
    save_document(prob_doc(np.full(4, 0.25), 2), p)
    save_document(Document("measurement", 3, {"r": (np.ones((3, 9)) / 3).tolist()}), r)
    assert main(["rep", "urgleichung", "--in", str(p), "--measurement", str(r), "--quiet"]) == 2


def test_rep_pipeline(tmp_path):
    probs = tmp_path / "p.json"
    ops = tmp_path / "ops.json"
    assert main(["rep", "to-prob", "--dim", "3", "--count", "5", "--rank", "1",
                 "--seed", "2", "--out", str(probs), "--quiet"]) == 0
    assert main(["rep", "to-op", "--in", str(probs), "--out", str(ops), "--quiet"]) == 0
    m = decode_complex(load_document(ops).data["matrix"], "m")
    assert m.shape == (5, 3, 3)
    np.testing.assert_allclose(np.einsum("kab,kba->k", m, m).real, 1, atol=1e-10)
    single = tmp_path / "one.json"
    assert main(["rep", "to-prob", "--dim", "2", "--out", str(single), "--quiet"]) == 0
    assert load_document(single).kind == "prob_vector"
    for cmd in (["rep", "evolve"], ["geom", "polar"], ["geom", "stem"]):
        assert main(cmd + ["--in", str(single), "--quiet"]) == 0, cmd


def test_geom_mmd(tmp_path, sics):
    from qplex.linalg import haar_unitary, projector

    u = haar_unitary(3, 1)
    pts = np.array([state_to_prob(projector(u[:, k]), sics[3]) for k in range(3)])
    path = tmp_path / "basis.json"
    save_document(points_doc(pts, 3), path)
    status, rep = dispatch(["geom", "mmd", "--in", str(path), "--quiet"])
    assert status == 0
    assert rep.summaries["largest"] == 3


def test_sym_commands(tmp_path):
    out = tmp_path / "R.json"
    assert main(["sym", "from-unitary", "--dim", "3", "--seed", "1", "--out", str(out), "--quiet"]) == 0
    assert main(["sym", "from-unitary", "--dim", "2", "--anti", "--quiet"]) == 0
    assert main(["sym", "closure", "--dim", "2", "--n-unitaries", "5", "--n-products", "20", "--quiet"]) == 0
    assert main(["sym", "closure", "--in", str(out), "--quiet"]) == 0


def test_sym_stretch(tmp_path, sics):
    from qplex.rep import povm_to_measurement

    r = povm_to_measurement(sics[2].projectors / 2, sics[2])
    path = tmp_path / "r.json"
    save_document(Document("measurement", 2, {"r": r.r.tolist()}), path)
    assert main(["sym", "stretch", "--in", str(path), "--quiet"]) == 0


def test_germ_and_params_commands(tmp_path):
    report = tmp_path / "rep.json"
    assert main(["germ", "grow", "--dim", "2", "--n-candidates", "500", "--report", str(report), "--quiet"]) == 0
    doc = load_document(report)
    assert doc.kind == "report" and "tolerances" in doc.meta and doc.data["passed"]
    assert main(["germ", "lemma", "--values", "1", "0", "0", "--quiet"]) == 0
    assert main(["germ", "lemma", "--values", "0.5", "0.5", "--quiet"]) == 2
    assert main(["germ", "lemma", "--dim", "3", "--count", "1000", "--quiet"]) == 0
    assert main(["params", "--N", "9", "--alpha", "4", "--quiet"]) == 0
    assert main(["params", "--dim", "3", "--quiet"]) == 0


def test_report_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        main(["germ", "lemma", "--dim", "4", "--count", "500", "--seed", "5", "--report", str(p), "--quiet"])
    da, db = load_document(a), load_document(b)
    assert da.data["summaries"] == db.data["summaries"]
    assert da.data["input_digest"] == db.data["input_digest"]


def test_usage_errors(capsys):
    assert main(["sic", "find", "--quiet"]) == 2
    assert main(["nonsense"]) == 2
    assert main(["rep", "to-op", "--in", "/no/such/file.json", "--quiet"]) == 2
    assert "error" in capsys.readouterr().err


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "qplex", "params", "--dim", "2"], capture_output=True, text=True)
    assert res.returncode == 0
    assert "beta" in res.stdout


def test_known_fiducial_verifies_via_cli(tmp_path):
    path = tmp_path / "fid.json"
    save_document(fiducial_doc(known_fiducial(3)), path)
    status, rep = dispatch(["sic", "verify", "--in", str(path), "--verify", "--quiet"])
    assert status == 0
    doc = loads(dumps(sic_system_doc(sic_from_fiducial(known_fiducial(3)))))
    assert verify_sic(system_from(doc), 1e-12).passed
