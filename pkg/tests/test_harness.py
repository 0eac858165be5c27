import os
import sys

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from util.digraph import Digraph, underlying_undirected
from util.errors import InputError
from util.expressions import (
    cw_to_nlc,
    drop_directions_cw,
    drop_directions_nlc,
    evaluate,
    exact_dlcw,
    exact_dlnlc,
    nlc_to_cw,
)
from util.families import FamilyKind, FamilySpec, generate
from util.harness import (
    PROPERTY_IDS,
    check_all_properties,
    check_biorientation_equalities,
    check_table1,
    directed_values,
    merge_reports,
    run_sweep,
    tightness_notes,
    validate_selection,
    width_profile,
)
from util.layout import DIRECTED_KINDS, MeasureKind, measure_cost, solve_exact
from util.pathdecomp import from_layout, validate, width
from util.rankdecomp import layout_to_rank_decomposition, verify_rank_decomposition
from util.threshold import eval_threshold, recognize_threshold, threshold_to_nlc1
from util.witness import SweepReport, Violation


def digraph_from_bits(n, bits):
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    return Digraph(n, [p for i, p in enumerate(pairs) if bits >> i & 1])


random_digraphs = st.integers(1, 8).flatmap(
    lambda n: st.integers(0, (1 << (n * (n - 1))) - 1).map(lambda bits: digraph_from_bits(n, bits))
)

# ─── Width profiles ────────────────────────────────────────────

def test_edgeless_profile():
    values = directed_values(Digraph(3))
    assert values == {"dpw": 0, "dcutw": 0, "dnw": 1, "dlrw": 0, "dlnlc": 1, "dlcw": 1}

def test_transitive_tournament_profile():
    profile = width_profile(generate(FamilySpec(FamilyKind.TRANSITIVE_TOURNAMENT, 4)))
    assert profile["dpw"] == 0
    assert profile["pw"] == 3
    assert profile["dlcw"] == 2
    assert profile["delta"] == 3

def test_empty_digraph_has_no_profile():
    with pytest.raises(InputError):
        width_profile(Digraph(0))
    assert check_all_properties(Digraph(0)) == []

# ─── Per-digraph properties ────────────────────────────────────

@pytest.mark.parametrize("g", [
    generate(FamilySpec(FamilyKind.BIDIRECTIONAL_COMPLETE, 3)),
    generate(FamilySpec(FamilyKind.TRANSITIVE_TOURNAMENT, 4)),
    generate(FamilySpec(FamilyKind.DIRECTED_CYCLE, 4)),
    generate(FamilySpec(FamilyKind.DIRECTED_PATH, 4)),
    Digraph(3),
])
def test_all_properties_hold(g):
    results = check_all_properties(g)
    failed = [(r.id, r.detail) for r in results if not r.ok]
    assert failed == []
    assert {r.id for r in results} <= set(PROPERTY_IDS)

def test_conditional_properties():
    k3 = {r.id for r in check_all_properties(generate(FamilySpec(FamilyKind.BIDIRECTIONAL_COMPLETE, 3)))}
    assert {"cw-pw-semi", "rank-gf2-gf4", "threshold-roundtrip"} <= k3
    c4 = {r.id for r in check_all_properties(generate(FamilySpec(FamilyKind.DIRECTED_CYCLE, 4)))}
    assert "Tpw-nw2x" not in c4
    assert "threshold-roundtrip" not in c4
    assert "rank-gf2-gf4" not in c4

def test_slack_is_reported_for_inequalities():
    results = {r.id: r for r in check_all_properties(generate(FamilySpec(FamilyKind.DIRECTED_PATH, 3)))}
    assert results["T3b-nlc-lower"].slack is not None
    assert results["eq1-eq2"].slack is None

# ─── Selection ─────────────────────────────────────────────────

def test_validate_selection():
    assert validate_selection(["udw", "", "L2"]) == ("udw", "L2")
    with pytest.raises(InputError):
        validate_selection(["no-such-property"])

def test_selection_filters_results():
    report = run_sweep(2, properties=["T3b"])
    assert report.instances_checked == 1 + 4
    assert set(report.extremal_witnesses) <= {"T3b-nlc-lower", "T3b-nlc-upper", "T3b-cw-lower", "T3b-cw-upper"}

# ─── Exhaustive sweep ──────────────────────────────────────────

def test_sweep_on_three_vertices():
    report = run_sweep(3)
    assert report.instances_checked == 1 + 4 + 64
    assert report.violations == []
    assert report.max_lcw_rank_ratio is not None

def test_sweep_up_to_isomorphism():
    report = run_sweep(3, up_to_iso=True)
    assert report.instances_checked == 1 + 3 + 16
    assert report.violations == []

def test_tightness_notes_name_the_equalities():
    for note in tightness_notes(run_sweep(3, up_to_iso=True)):
        assert note.startswith(("dlnlc = dnw + 1", "dlcw = dlnlc + 1"))

@pytest.mark.slow
def test_sweep_on_four_vertices():
    report = run_sweep(4)
    assert report.instances_checked == 1 + 4 + 64 + 4096
    assert report.violations == []

@pytest.mark.slow
def test_tightness_is_attained_on_five_vertices():
    report = run_sweep(5, up_to_iso=True, properties=["T3b", "T3a"])
    assert report.violations == []
    notes = tightness_notes(report)
    for equality in ("dlnlc = dnw + 1", "dlcw = dlnlc + 1"):
        [note] = [n for n in notes if n.startswith(equality)]
        assert "attained on" in note

@pytest.mark.slow
def test_sweep_on_four_vertices_with_workers():
    report = run_sweep(4, up_to_iso=True, workers=2)
    assert report.instances_checked == 1 + 3 + 16 + 218
    assert report.violations == []

# ─── Family table ──────────────────────────────────────────────

def test_family_table():
    report = check_table1(4, orientation_max_n=4)
    assert report.violations == []
    assert report.instances_checked > 0

@pytest.mark.slow
def test_family_table_with_longer_paths():
    report = check_table1(5, orientation_max_n=6)
    assert report.violations == []

@pytest.mark.slow
def test_family_table_on_six_vertices():
    report = check_table1(6)
    assert report.violations == []
    assert report.instances_checked > 0

# ─── Biorientation equalities ──────────────────────────────────

def test_biorientation_equalities():
    report = check_biorientation_equalities(4)
    assert report.instances_checked == 1 + 2 + 4 + 11
    assert report.violations == []

@pytest.mark.slow
def test_biorientation_equalities_on_five_vertices():
    report = check_biorientation_equalities(5)
    assert report.instances_checked == 1 + 2 + 4 + 11 + 34
    assert report.violations == []

# ─── Witness closure ───────────────────────────────────────────

@pytest.mark.slow
@given(random_digraphs)
@settings(max_examples=100, deadline=None)
def test_every_witness_checks_out(g):
    layouts = {}
    for kind in DIRECTED_KINDS:
        result = solve_exact(g, kind)
        assert measure_cost(g, kind, result.witness) == result.value
        layouts[kind] = result

    dpd = from_layout(g, layouts[MeasureKind.DVSN_IN].witness)
    assert validate(g, dpd).ok
    assert width(dpd) == layouts[MeasureKind.DVSN_IN].value

    rank = layouts[MeasureKind.DLRW]
    check = verify_rank_decomposition(g, layout_to_rank_decomposition(g, rank.witness), rank.value)
    assert check.ok and check.width == rank.value

    _, nlc = exact_dlnlc(g)
    _, cw = exact_dlcw(g)
    for expr in (nlc, cw, nlc_to_cw(nlc), cw_to_nlc(cw)):
        assert evaluate(expr).graph == g
    gu = underlying_undirected(g)
    assert evaluate(drop_directions_nlc(nlc)).graph == gu
    assert evaluate(drop_directions_cw(cw)).graph == gu

    threshold = recognize_threshold(g)
    if threshold.is_threshold:
        assert eval_threshold(threshold.sequence) == g
        assert evaluate(threshold_to_nlc1(threshold.sequence)).graph == g

# ─── Reports ───────────────────────────────────────────────────

def test_merge_reports():
    a = SweepReport(
        n=3,
        instances_checked=10,
        violations=[Violation(property="udw-1", n=3, arcs=[(0, 1)], values={})],
        max_lcw_rank_ratio=0.125,
    )
    b = SweepReport(
        n=5,
        instances_checked=4,
        violations=[Violation(property="L2", n=2, arcs=[], values={})],
        notes=["table note"],
    )
    merged = merge_reports([a, b])
    assert merged.n == 5
    assert merged.instances_checked == 14
    assert [v.property for v in merged.violations] == ["L2", "udw-1"]
    assert merged.notes == ["table note"]
    assert merged.max_lcw_rank_ratio == 0.125
