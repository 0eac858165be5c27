import os
import sys

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))
import json

import pytest

from main import build_parser, collect_overrides, main
from util.errors import EXIT_CAPACITY, EXIT_FAILURE, EXIT_INPUT, EXIT_OK
from util.families import FamilyKind, FamilySpec, generate
from util.graph_io import format_graph, parse_graph


def write_graph(tmp_path, g, name="g.txt"):
    path = tmp_path / name
    path.write_text(format_graph(g))
    return str(path)


def write_json(tmp_path, data, name="w.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def run(capsys, argv):
    code = main(argv)
    return code, capsys.readouterr().out

# ─── Argument handling ─────────────────────────────────────────

def test_overrides_go_to_their_sections():
    args = build_parser().parse_args(["sweep", "--n", "2", "--workers", "3", "--log-level", "debug"])
    assert collect_overrides(args) == {"sweep": {"n": 2}, "solver": {"workers": 3}, "main": {"log_level": "debug"}}

def test_unset_flags_do_not_override():
    args = build_parser().parse_args(["compute", "dpw", "g.txt"])
    assert collect_overrides(args) == {}

def test_unknown_measure_is_a_usage_error():
    with pytest.raises(SystemExit):
        build_parser().parse_args(["compute", "treewidth", "g.txt"])

# ─── compute ───────────────────────────────────────────────────

def test_compute_dpw_of_transitive_tournament(tmp_path, capsys):
    path = write_graph(tmp_path, generate(FamilySpec(FamilyKind.TRANSITIVE_TOURNAMENT, 5)))
    code, out = run(capsys, ["compute", "dpw", path])
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["schema"] == "diwidth/1"
    assert data["value"] == 0
    assert sorted(data["layout"]) == [0, 1, 2, 3, 4]

def test_compute_dcutw_of_complete_digraph(tmp_path, capsys):
    path = write_graph(tmp_path, generate(FamilySpec(FamilyKind.BIDIRECTIONAL_COMPLETE, 4)))
    code, out = run(capsys, ["compute", "dcutw", path])
    assert code == EXIT_OK
    assert json.loads(out)["value"] == 4

def test_compute_expression_measure(tmp_path, capsys):
    path = write_graph(tmp_path, generate(FamilySpec(FamilyKind.DIRECTED_PATH, 4)))
    code, out = run(capsys, ["compute", "dlnlc", path])
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["kind"] == "nlc"
    assert data["value"] == 2

def test_malformed_graph_exits_with_input_error(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("3 2\n0 1\n")
    code, out = run(capsys, ["compute", "dpw", str(path)])
    assert code == EXIT_INPUT
    assert out == ""

def test_undecodable_graph_exits_with_input_error(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_bytes(b"2 1\n0 \xff\n")
    code, out = run(capsys, ["compute", "dpw", str(path)])
    assert code == EXIT_INPUT
    assert out == ""

def test_missing_graph_file(tmp_path, capsys):
    code, _ = run(capsys, ["compute", "dpw", str(tmp_path / "missing.txt")])
    assert code == EXIT_INPUT

def test_dp_limit_exits_with_capacity_error(tmp_path, capsys):
    path = write_graph(tmp_path, generate(FamilySpec(FamilyKind.DIRECTED_PATH, 3)))
    code, out = run(capsys, ["compute", "dpw", path, "--dp-limit", "2"])
    assert code == EXIT_CAPACITY
    assert out == ""

def test_directed_measure_on_undirected_graph(tmp_path, capsys):
    path = tmp_path / "u.txt"
    path.write_text("u 2 1\n0 1\n")
    code, _ = run(capsys, ["compute", "dpw", str(path)])
    assert code == EXIT_INPUT

def test_config_file_overrides_defaults(tmp_path, capsys):
    config = tmp_path / "config.yml"
    config.write_text("solver:\n  dp_limit: 2\n")
    path = write_graph(tmp_path, generate(FamilySpec(FamilyKind.DIRECTED_PATH, 3)))
    code, _ = run(capsys, ["compute", "dpw", path, "--config", str(config)])
    assert code == EXIT_CAPACITY
    code, _ = run(capsys, ["compute", "dpw", path, "--config", str(config), "--dp-limit", "5"])
    assert code == EXIT_OK

# ─── witness-verify ────────────────────────────────────────────

def test_compute_then_verify(tmp_path, capsys):
    path = write_graph(tmp_path, generate(FamilySpec(FamilyKind.DIRECTED_CYCLE, 4)))
    for measure, kind in (("dnw", "layout"), ("dlcw", "expr")):
        code, out = run(capsys, ["compute", measure, path])
        assert code == EXIT_OK
        witness = tmp_path / f"{measure}.json"
        witness.write_text(out)
        code, out = run(capsys, ["witness-verify", kind, path, str(witness)])
        assert code == EXIT_OK
        assert json.loads(out)["ok"] is True

def test_bad_decomposition_names_the_arc(tmp_path, capsys):
    graph = write_graph(tmp_path, generate(FamilySpec(FamilyKind.DIRECTED_PATH, 2)))
    witness = write_json(tmp_path, {"schema": "diwidth/1", "width": 0, "bags": [[1], [0]]})
    code, out = run(capsys, ["witness-verify", "dpd", graph, witness])
    assert code == EXIT_FAILURE
    data = json.loads(out)
    assert data["ok"] is False
    assert data["condition"] == 2
    assert "arc (0, 1)" in data["detail"]

def test_wrong_claimed_value_is_rejected(tmp_path, capsys):
    graph = write_graph(tmp_path, generate(FamilySpec(FamilyKind.DIRECTED_CYCLE, 3)))
    witness = write_json(tmp_path, {"measure": "dpw", "value": 0, "layout": [0, 1, 2]})
    code, out = run(capsys, ["witness-verify", "layout", graph, witness])
    assert code == EXIT_FAILURE
    assert "witness claims 0" in json.loads(out)["detail"]

def test_malformed_witness_is_an_input_error(tmp_path, capsys):
    graph = write_graph(tmp_path, generate(FamilySpec(FamilyKind.DIRECTED_PATH, 2)))
    witness = tmp_path / "w.json"
    witness.write_text("{not json")
    code, _ = run(capsys, ["witness-verify", "dpd", graph, str(witness)])
    assert code == EXIT_INPUT
    witness.write_bytes(b"{\"width\": \xff}")
    code, _ = run(capsys, ["witness-verify", "dpd", graph, str(witness)])
    assert code == EXIT_INPUT

# ─── convert ───────────────────────────────────────────────────

def test_convert_nlc_to_cw(tmp_path, capsys):
    path = write_graph(tmp_path, generate(FamilySpec(FamilyKind.DIRECTED_PATH, 4)))
    _, out = run(capsys, ["compute", "dlnlc", path])
    nlc = tmp_path / "nlc.json"
    nlc.write_text(out)
    code, out = run(capsys, ["convert", "nlc-cw", str(nlc)])
    assert code == EXIT_OK
    cw = tmp_path / "cw.json"
    cw.write_text(out)
    assert json.loads(out)["kind"] == "cw"
    code, out = run(capsys, ["witness-verify", "expr", path, str(cw)])
    assert code == EXIT_OK

def test_convert_layout_needs_graph(tmp_path, capsys):
    path = write_graph(tmp_path, generate(FamilySpec(FamilyKind.DIRECTED_PATH, 3)))
    witness = write_json(tmp_path, {"measure": "dpw", "value": 0, "layout": [0, 1, 2]})
    code, _ = run(capsys, ["convert", "layout-dpd", witness])
    assert code == EXIT_INPUT
    code, out = run(capsys, ["convert", "layout-dpd", witness, "--graph", path])
    assert code == EXIT_OK
    assert json.loads(out)["width"] == 0

def test_unknown_conversion(tmp_path, capsys):
    witness = write_json(tmp_path, {"kind": "nlc", "k": 1, "ops": [{"op": "leaf", "label": 1}]})
    code, _ = run(capsys, ["convert", "nlc-tree", witness])
    assert code == EXIT_INPUT

# ─── generate and recognize ────────────────────────────────────

def test_generate_prints_graph_text(capsys):
    code, out = run(capsys, ["generate", "transitive_tournament", "3"])
    assert code == EXIT_OK
    assert parse_graph(out) == generate(FamilySpec(FamilyKind.TRANSITIVE_TOURNAMENT, 3))

def test_generate_undirected_family(capsys):
    code, out = run(capsys, ["generate", "u:path", "3"])
    assert code == EXIT_OK
    assert out.startswith("u 3 2")

def test_generate_unknown_family(capsys):
    code, _ = run(capsys, ["generate", "hypercube", "3"])
    assert code == EXIT_INPUT

def test_recognize_threshold(tmp_path, capsys):
    path = write_graph(tmp_path, generate(FamilySpec(FamilyKind.TRANSITIVE_TOURNAMENT, 4)))
    code, out = run(capsys, ["recognize", "threshold", path])
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["is_threshold"] is True
    assert len(data["sequence"]) == 4

def test_negative_recognition_is_not_a_failure(tmp_path, capsys):
    path = write_graph(tmp_path, generate(FamilySpec(FamilyKind.DIRECTED_CYCLE, 3)))
    code, out = run(capsys, ["recognize", "threshold", path])
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["is_threshold"] is False
    assert data["residual"] == [0, 1, 2]

# ─── sweep ─────────────────────────────────────────────────────

def test_small_sweep(capsys):
    code, out = run(capsys, ["sweep", "--n", "2"])
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["instances_checked"] == 5
    assert data["violations"] == []

def test_sweep_rejects_unknown_property(capsys):
    code, _ = run(capsys, ["sweep", "--n", "2", "--properties", "nonsense"])
    assert code == EXIT_INPUT

def test_sweep_with_nothing_to_run(capsys):
    code, _ = run(capsys, ["sweep", "--n", "0"])
    assert code == EXIT_INPUT
