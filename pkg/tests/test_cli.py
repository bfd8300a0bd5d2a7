import json
import subprocess
import sys

import pytest

from brauer_pbw.classification import classify
from brauer_pbw.cli import run
from brauer_pbw.combinatorics import Partition, Pseudograph, enumerate_basis
from brauer_pbw.diagram_core import Morphism, cap, compose, cup, identity, tensor
from brauer_pbw.specialization import SuperMap, specialize


def _write(path, data):
    path.write_text(json.dumps(data))
    return str(path)


def _json_out(capsys):
    return json.loads(capsys.readouterr().out)


def test_compose_and_tensor(tmp_path, capsys):
    a = _write(tmp_path / "a.json", cap().to_json())
    b = _write(tmp_path / "b.json", cup().to_json())
    assert run(["compose", "--a", a, "--b", b]) == 0
    assert Morphism.from_json(_json_out(capsys)) == compose(cap(), cup())
    assert run(["tensor", "--a", a, "--b", b]) == 0
    assert Morphism.from_json(_json_out(capsys)) == tensor(cap(), cup())


def test_compose_accepts_bare_diagram(tmp_path, capsys):
    a = _write(tmp_path / "a.json", identity(2).to_json())
    b = _write(tmp_path / "b.json", cup().to_json())
    assert run(["compose", "--a", a, "--b", b]) == 0
    assert Morphism.from_json(_json_out(capsys)) == compose(identity(2), cup())


def test_shape_mismatch_exits_one(tmp_path, capsys):
    a = _write(tmp_path / "a.json", cap().to_json())
    b = _write(tmp_path / "b.json", identity(1).to_json())
    assert run(["compose", "--a", a, "--b", b]) == 1
    assert _json_out(capsys)["error"] == "shape"


def test_malformed_json_exits_two(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["compose", "--a", str(bad), "--b", str(bad)]) == 2
    assert _json_out(capsys)["error"] == "malformed-input"


def test_bad_arguments_exit_two(capsys):
    assert run(["basis", "--p", "2"]) == 2
    assert run(["omega", "--e", "1", "--rho", "0", "--graph", "x.json"]) == 2
    capsys.readouterr()


def test_basis_matches_library(capsys):
    assert run(["basis", "--p", "2", "--e", "1", "--d", "2"]) == 0
    out = _json_out(capsys)
    got = [(Pseudograph.from_json(x["graph"]), Partition.from_json(x["partition"])) for x in out["basis"]]
    assert got == enumerate_basis(2, 1, 2)


def test_omega_both_modes_agree(tmp_path, capsys):
    graph = _write(tmp_path / "g.json", Pseudograph(2, 1, ((1, 2, 3),)).to_json())
    assert run(["omega", "--e", "1", "--rho", "-1", "--graph", graph, "--mode", "both"]) == 0
    out = _json_out(capsys)
    assert out["equal"] is True and "graphical" in out and "direct" in out


def test_omega_rejects_wrong_valence(tmp_path, capsys):
    graph = _write(tmp_path / "g.json", Pseudograph(2, 1, ((1, 2, 3),)).to_json())
    assert run(["omega", "--e", "2", "--rho", "1", "--graph", graph]) == 1
    capsys.readouterr()


def test_classify_lists_families(capsys):
    assert run(["classify", "--e", "1", "--rho", "-1", "--dmax", "3"]) == 0
    out = _json_out(capsys)
    assert [f["name"] for f in out["families"]] == [f.name for f in classify(1, -1, 3)]


def test_classify_audit_writes_figure(tmp_path, capsys):
    figures = tmp_path / "figs"
    assert run(["classify", "--e", "1", "--rho", "+1", "--dmax", "3", "--audit", "--figures", str(figures)]) == 0
    out = _json_out(capsys)
    assert out["audit"]["ok"] is True
    (path,) = out["figures"]
    assert path.endswith(".png") and (figures / "audit_e1_rhop.png").stat().st_size > 0


def test_specialize_round_trip(tmp_path, capsys):
    f = _write(tmp_path / "f.json", cup().to_json())
    assert run(["specialize", "--m", "1", "--n", "1", "--morphism", f]) == 0
    assert SuperMap.from_json(_json_out(capsys)) == specialize(cup(), 1, 1)


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    assert run(["--output", str(target), "basis", "--p", "2", "--e", "1", "--d", "1"]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(target.read_text())["d"] == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--suite", "functoriality", "--m", "1", "--n", "1", "--samples", "20"],
        ["verify", "--suite", "form-lie", "--m", "0", "--n", "1"],
        ["verify", "--suite", "jacobi-specialized", "--m", "3", "--n", "0", "--e", "1", "--dmax", "3"],
        ["verify", "--suite", "tsymbaliuk", "--N", "1"],
        ["verify", "--suite", "omega-oracle", "--e", "1", "--dmax", "2"],
    ],
)
def test_verify_suites_pass(argv, capsys):
    assert run(argv) == 0
    assert _json_out(capsys)["passed"] is True


def test_verify_reports_failure_without_error_exit(capsys):
    # the symplectic comparison mismatches at N = 1; the command still succeeds
    assert run(["verify", "--suite", "egg", "--m", "0", "--n", "1", "--N", "1"]) == 0
    assert _json_out(capsys)["passed"] is False


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "brauer_pbw.cli", "basis", "--p", "2", "--e", "1", "--d", "1"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["p"] == 2
