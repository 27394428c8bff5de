import json

import numpy as np
import pytest

from _util import np_norm
from polarpert.cli import main
from polarpert.genlab import named_instance
from polarpert.jsonio import matrix_from_json, matrix_to_json, subspace_to_json
from polarpert.subspace import Subspace


def write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


def mat(tmp_path, name, a):
    return write(tmp_path / f"{name}.json", matrix_to_json(np.asarray(a, dtype=complex)))


def run(argv, tmp_path):
    out = tmp_path / "out.json"
    code = main([*argv, "--out", str(out)])
    return code, (json.loads(out.read_text()) if out.exists() else None)


def test_certify_remark_projections(tmp_path):
    a1, a2 = named_instance("remark-projections")
    code, cert = run(["certify", "--a1", mat(tmp_path, "a1", a1), "--a2", mat(tmp_path, "a2", a2)], tmp_path)
    assert code == 0
    assert cert["bound_main"] == pytest.approx(2.0, abs=1e-12)
    assert list(cert) == sorted(cert)


def test_require_main_on_nested_rank_drop(tmp_path):
    a1, a2 = named_instance("nested-rank-drop(0.01)")
    args = ["certify", "--a1", mat(tmp_path, "a1", a1), "--a2", mat(tmp_path, "a2", a2)]
    assert run(args, tmp_path)[0] == 0
    code, cert = run([*args, "--require-main"], tmp_path)
    assert code == 1 and cert["main_applicable"] is False


def test_certify_shape_mismatch_exits_2(tmp_path, capsys):
    code = main(["certify", "--a1", mat(tmp_path, "a1", np.eye(2)), "--a2", mat(tmp_path, "a2", np.eye(3))])
    assert code == 2
    err = capsys.readouterr().err.strip()
    assert err and "\n" not in err


def test_malformed_matrix_exits_2(tmp_path):
    bad = write(tmp_path / "bad.json", {"rows": 2, "cols": 2, "data": [[1, 0]]})
    assert main(["polar", "--a", bad]) == 2
    notjson = tmp_path / "x.json"
    notjson.write_text("{")
    assert main(["polar", "--a", str(notjson)]) == 2


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["bogus"],
        ["polar"],
        ["corpus", "--trials", "0"],
        ["corpus", "--shape", "8by6"],
        ["gen", "--shape", "3x3", "--seed", "-1"],
        ["scan", "--a", "x.json", "--radius", "1", "--center", "1"],
        ["polar", "--a", "x.json", "--format", "csv"],
    ],
)
def test_bad_flags_exit_2(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_gen_then_polar_round_trip(tmp_path):
    gen_out = tmp_path / "g.json"
    assert main(["gen", "--shape", "5x4", "--rank", "2", "--seed", "9", "--out", str(gen_out)]) == 0
    a = matrix_from_json(json.loads(gen_out.read_text()))
    code, res = run(["polar", "--a", str(gen_out)], tmp_path)
    assert code == 0 and res["rank"] == 2
    q, h = matrix_from_json(res["q"]), matrix_from_json(res["h"])
    assert np_norm(q @ h - a) <= 1e-9


def test_gap_and_classify(tmp_path):
    e = np.eye(3)
    v = write(tmp_path / "v.json", subspace_to_json(Subspace.from_orthonormal(e[:, :1])))
    w = write(tmp_path / "w.json", subspace_to_json(Subspace.from_orthonormal(e[:, 1:])))
    code, rep = run(["gap", "--v", v, "--w", w], tmp_path)
    assert code == 0 and rep["gap_hat"] == 1.0 and rep["gap_diff"] == 0.0
    code, rep = run(["classify", "--v", v, "--w", w], tmp_path)
    assert code == 0 and rep["tag"] == "NeitherSurjective"


def test_sylvester(tmp_path):
    args = ["sylvester", "--s", mat(tmp_path, "s", [[3]]), "--t", mat(tmp_path, "t", [[1]])]
    code, rep = run([*args, "--y", mat(tmp_path, "y", [[1]])], tmp_path)
    assert code == 0 and rep["bound_holds"] is True
    assert matrix_from_json(rep["x"])[0, 0] == pytest.approx(0.5)
    assert main([*args, "--y", mat(tmp_path, "y2", np.ones((2, 2)))]) == 2


def test_trace(tmp_path):
    a1, a2 = named_instance("nested-rank-drop(0.01)")
    code, rep = run(["trace", "--a1", mat(tmp_path, "a1", a1), "--a2", mat(tmp_path, "a2", a2)], tmp_path)
    assert code == 0 and rep["main"] is None and rep["cr"]["vanishing_term"] == 0.0


def test_corpus_with_report_alias(tmp_path):
    report = tmp_path / "r.json"
    code = main(["corpus", "--trials", "30", "--seed", "42", "--shape", "8x6", "--report", str(report)])
    assert code == 0
    rep = json.loads(report.read_text())
    assert rep["trials"] == 30 and rep["failures"] == []


def test_scan_and_named(tmp_path):
    code, rep = run(["scan", "--a", mat(tmp_path, "a", np.diag([1, 0])), "--radius", "0.1", "--samples", "8"], tmp_path)
    assert code == 0 and len(rep["samples"]) == 8
    code, rep = run(["named", "--name", "remark-projections"], tmp_path)
    assert code == 0 and rep["a1"]["rows"] == 3
    assert main(["named", "--name", "foo"]) == 2


def test_tol_override(tmp_path):
    # negative slack is rejected by the policy
    a = mat(tmp_path, "a", np.eye(2))
    assert main(["certify", "--a1", a, "--a2", a, "--tol", "-1"]) == 2
    assert main(["certify", "--a1", a, "--a2", a, "--tol", "0", "--out", str(tmp_path / "o.json")]) == 0


@pytest.mark.slow
def test_flagship_corpus(tmp_path):
    report = tmp_path / "r.json"
    code = main(["corpus", "--trials", "10000", "--seed", "42", "--shape", "8x6", "--report", str(report)])
    rep = json.loads(report.read_text())
    assert code == 0
    assert rep["failures"] == []
    assert rep["worst_slack"]["main"] <= 1
