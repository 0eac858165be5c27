import os
import sys

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from util.digraph import Digraph, underlying_undirected
from util.errors import InputError
from util.families import FamilyKind, FamilySpec, generate, generate_undirected
from util.layout import Layout, MeasureKind, measure_cost, solve_exact
from util.rankdecomp import (
    RankDecomposition,
    decomposition_width,
    layout_to_rank_decomposition,
    parse_leaves,
    verify_rank_decomposition,
)


def digraph_from_bits(n, bits):
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    return Digraph(n, [p for i, p in enumerate(pairs) if bits >> i & 1])


layouts = st.integers(1, 5).flatmap(
    lambda n: st.tuples(
        st.integers(0, (1 << (n * (n - 1))) - 1).map(lambda bits: digraph_from_bits(n, bits)),
        st.permutations(list(range(n))),
    )
)

# ─── Caterpillars ──────────────────────────────────────────────

def test_caterpillar_edges():
    edges = list(RankDecomposition((2, 0, 1)).edges())
    assert edges == [
        ("pendant 1", 0b100),
        ("spine 1-2", 0b100),
        ("pendant 2", 0b001),
        ("spine 2-3", 0b101),
        ("pendant 3", 0b010),
    ]

@pytest.mark.parametrize("g,order,value", [
    (generate(FamilySpec(FamilyKind.BIDIRECTIONAL_COMPLETE, 4)), [3, 1, 0, 2], 1),
    (generate(FamilySpec(FamilyKind.DIRECTED_PATH, 4)), [0, 1, 2, 3], 1),
    (Digraph(3), [0, 1, 2], 0),
    (generate_undirected("complete", 4), [0, 1, 2, 3], 1),
])
def test_decomposition_width_examples(g, order, value):
    dec = layout_to_rank_decomposition(g, Layout(order))
    assert decomposition_width(g, dec) == value

def test_cycle_width_is_bounded_by_neighbourhood_cost():
    g = generate(FamilySpec(FamilyKind.DIRECTED_CYCLE, 4))
    dec = layout_to_rank_decomposition(g, Layout.identity(4))
    assert decomposition_width(g, dec) <= measure_cost(g, MeasureKind.DNW, Layout.identity(4))

@given(layouts)
@settings(max_examples=80, deadline=None)
def test_caterpillar_width_equals_layout_cost(case):
    g, order = case
    layout = Layout(order)
    dec = layout_to_rank_decomposition(g, layout)
    assert decomposition_width(g, dec) == measure_cost(g, MeasureKind.DLRW, layout)
    gu = underlying_undirected(g)
    assert decomposition_width(gu, dec) == measure_cost(gu, MeasureKind.U_LRW, layout)

def test_optimal_caterpillar_reaches_dlrw():
    g = generate(FamilySpec(FamilyKind.PATH_POWER, 6, k=2))
    result = solve_exact(g, MeasureKind.DLRW)
    dec = layout_to_rank_decomposition(g, result.witness)
    assert verify_rank_decomposition(g, dec, result.value).ok

# ─── Verification ──────────────────────────────────────────────

def test_verify_reports_wrong_claim():
    g = generate(FamilySpec(FamilyKind.DIRECTED_CYCLE, 4))
    check = verify_rank_decomposition(g, RankDecomposition((0, 1, 2, 3)), 0)
    assert not check.ok
    assert check.width == 2
    assert "claimed width 0" in check.detail

def test_verify_without_claim():
    check = verify_rank_decomposition(Digraph(2, [(0, 1)]), RankDecomposition((1, 0)))
    assert check.ok and check.width == 1

def test_verify_rejects_non_bijection():
    check = verify_rank_decomposition(Digraph(3), RankDecomposition((0, 0, 1)))
    assert not check.ok
    assert check.width == -1

def test_parse_leaves():
    assert parse_leaves([1, 0, 2], 3) == RankDecomposition((1, 0, 2))
    with pytest.raises(InputError):
        parse_leaves([0, 1], 3)
    with pytest.raises(InputError):
        layout_to_rank_decomposition(Digraph(3), Layout([0, 1]))
