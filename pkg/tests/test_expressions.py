import os
import sys

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from util.digraph import Digraph, UndirectedGraph, complete_biorientation, underlying_undirected
from util.errors import CapacityError, InputError
from util.expressions import (
    Add,
    AddArcs,
    AddEdges,
    Expression,
    Join,
    Leaf,
    Relabel,
    Rename,
    UJoin,
    biorient_cw,
    biorient_nlc,
    cw_to_nlc,
    drop_directions_cw,
    drop_directions_nlc,
    eval_cw,
    eval_nlc,
    evaluate,
    exact_dlcw,
    exact_dlnlc,
    exact_lcw,
    exact_lnlc,
    nlc_to_cw,
)
from util.families import FamilyKind, FamilySpec, generate, generate_undirected
from util.layout import Layout, MeasureKind, solve_exact

BOTH = frozenset({(1, 1)})


def digraph_from_bits(n, bits):
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    return Digraph(n, [p for i, p in enumerate(pairs) if bits >> i & 1])


small_digraphs = st.integers(1, 4).flatmap(
    lambda n: st.integers(0, (1 << (n * (n - 1))) - 1).map(lambda bits: digraph_from_bits(n, bits))
)
small_graphs = st.integers(1, 5).flatmap(
    lambda n: st.integers(0, (1 << (n * (n - 1) // 2)) - 1).map(
        lambda bits: UndirectedGraph(
            n, [p for i, p in enumerate((u, v) for u in range(n) for v in range(u + 1, n)) if bits >> i & 1]
        )
    )
)


def path_expression():
    return Expression("nlc", 2, (Leaf(1), Join(2, frozenset({(1, 2)})), Join(1, frozenset({(2, 1)}))))

# ─── Evaluation ────────────────────────────────────────────────

def test_one_label_joins_build_complete_digraph():
    expr = Expression("nlc", 1, (Leaf(1), Join(1, BOTH, BOTH), Join(1, BOTH, BOTH)))
    result = eval_nlc(expr)
    assert result.graph == generate(FamilySpec(FamilyKind.BIDIRECTIONAL_COMPLETE, 3))
    assert result.labels == (1, 1, 1)

def test_two_labels_build_directed_path():
    result = evaluate(path_expression())
    assert result.graph == Digraph(3, [(0, 1), (1, 2)])
    assert result.labels == (1, 2, 1)

def test_single_leaf():
    result = evaluate(Expression("nlc", 1, (Leaf(1),)))
    assert result.graph == Digraph(1)
    assert result.labels == (1,)

def test_relabel_merges_labels():
    expr = Expression("nlc", 2, (Leaf(1), Join(2), Relabel((1, 1)), Join(2, frozenset({(1, 2)}))))
    assert evaluate(expr).graph == Digraph(3, [(0, 2), (1, 2)])

def test_clique_width_expression_builds_bidirected_edge():
    expr = Expression("cw", 2, (Leaf(1), Add(2), AddArcs(1, 2), AddArcs(2, 1)))
    assert eval_cw(expr).graph == Digraph(2, [(0, 1), (1, 0)])

def test_repeated_arc_insertion_is_idempotent():
    once = Expression("cw", 2, (Leaf(1), Add(2), AddArcs(1, 2)))
    twice = Expression("cw", 2, (Leaf(1), Add(2), AddArcs(1, 2), AddArcs(1, 2)))
    assert evaluate(once).graph == evaluate(twice).graph

def test_edgeless_clique_width_expression():
    expr = Expression("cw", 1, (Leaf(1), Add(1), Add(1)))
    assert evaluate(expr).graph == Digraph(3)

def test_rename_moves_all_vertices_of_a_label():
    expr = Expression("cw", 2, (Leaf(1), Add(1), Rename(1, 2), Add(1), AddArcs(2, 1)))
    assert evaluate(expr).graph == Digraph(3, [(0, 2), (1, 2)])

def test_undirected_grammars():
    unlc = Expression("unlc", 1, (Leaf(1), UJoin(1, BOTH), UJoin(1, BOTH)))
    assert evaluate(unlc).graph == generate_undirected("complete", 3)
    ucw = Expression("ucw", 2, (Leaf(1), Add(2), AddEdges(1, 2)))
    assert evaluate(ucw).graph == generate_undirected("path", 2)

def test_explicit_vertex_ids():
    expr = Expression("nlc", 2, (Leaf(1, 2), Join(2, frozenset({(1, 2)}), vertex=0), Join(1, frozenset({(2, 1)}), vertex=1)))
    assert evaluate(expr).graph == Digraph(3, [(2, 0), (0, 1)])
    assert expr.layout() == Layout([2, 0, 1])

@pytest.mark.parametrize("expr", [
    Expression("nlc", 1, (Join(1),)),
    Expression("nlc", 1, (Leaf(1), Leaf(1))),
    Expression("nlc", 2, (Leaf(1), Relabel((1,)))),
    Expression("nlc", 1, (Leaf(1), Join(2))),
    Expression("nlc", 1, (Leaf(0),)),
    Expression("cw", 2, (Leaf(1), Add(2), AddArcs(2, 2))),
    Expression("cw", 2, (Leaf(1), Join(2))),
    Expression("nlc", 2, (Leaf(1, 0), Join(2))),
    Expression("nlc", 2, (Leaf(1, 0), Join(2, vertex=0))),
    Expression("tree", 1, (Leaf(1),)),
])
def test_invalid_expressions(expr):
    with pytest.raises(InputError):
        evaluate(expr)

def test_grammar_specific_evaluators():
    with pytest.raises(InputError):
        eval_cw(path_expression())
    with pytest.raises(InputError):
        eval_nlc(Expression("cw", 1, (Leaf(1),)))

# ─── Exact solvers ─────────────────────────────────────────────

@pytest.mark.parametrize("g,value", [
    (generate(FamilySpec(FamilyKind.DIRECTED_PATH, 4)), 2),
    (generate(FamilySpec(FamilyKind.DIRECTED_PATH, 5)), 3),
    (generate(FamilySpec(FamilyKind.BIDIRECTIONAL_COMPLETE, 5)), 1),
    (generate(FamilySpec(FamilyKind.TRANSITIVE_TOURNAMENT, 4)), 1),
    (Digraph(3), 1),
])
def test_exact_dlnlc_examples(g, value):
    width, expr = exact_dlnlc(g)
    assert width == value
    assert expr.k == value
    assert evaluate(expr).graph == g

@pytest.mark.parametrize("g,value", [
    (generate(FamilySpec(FamilyKind.DIRECTED_PATH, 4)), 3),
    (generate(FamilySpec(FamilyKind.BIDIRECTIONAL_COMPLETE, 4)), 2),
    (generate(FamilySpec(FamilyKind.PATH_POWER, 8, k=2)), 4),
    (generate(FamilySpec(FamilyKind.TRANSITIVE_TOURNAMENT, 4)), 2),
    (Digraph(3), 1),
])
def test_exact_dlcw_examples(g, value):
    width, expr = exact_dlcw(g)
    assert width == value
    assert evaluate(expr).graph == g

def test_undirected_solvers():
    assert exact_lnlc(generate_undirected("complete", 4))[0] == 1
    assert exact_lcw(generate_undirected("complete", 4))[0] == 2
    assert exact_lcw(generate_undirected("edgeless", 3))[0] == 1
    width, expr = exact_lcw(generate_undirected("path", 4))
    assert evaluate(expr).graph == generate_undirected("path", 4)

def test_expression_limit():
    with pytest.raises(CapacityError):
        exact_dlnlc(Digraph(5), limit=4)

@given(small_digraphs)
@settings(max_examples=60, deadline=None)
def test_solver_witnesses_rebuild_the_digraph(g):
    nlc_width, nlc = exact_dlnlc(g)
    cw_width, cw = exact_dlcw(g)
    assert evaluate(nlc).graph == g and nlc.k == nlc_width
    assert evaluate(cw).graph == g and cw.k == cw_width
    dnw = solve_exact(g, MeasureKind.DNW).value
    assert dnw <= nlc_width <= dnw + 1
    assert nlc_width <= cw_width <= nlc_width + 1

@given(small_graphs)
@settings(max_examples=40, deadline=None)
def test_biorientation_keeps_expression_widths(gu):
    bio = complete_biorientation(gu)
    assert exact_lnlc(gu)[0] == exact_dlnlc(bio)[0]
    assert exact_lcw(gu)[0] == exact_dlcw(bio)[0]

# ─── Converters ────────────────────────────────────────────────

def test_nlc_to_cw_on_complete_digraph():
    expr = Expression("nlc", 1, (Leaf(1), Join(1, BOTH, BOTH), Join(1, BOTH, BOTH)))
    cw = nlc_to_cw(expr)
    assert cw.kind == "cw" and cw.k == 2
    assert evaluate(cw).graph == evaluate(expr).graph

def test_cw_to_nlc_on_edgeless():
    nlc = cw_to_nlc(Expression("cw", 1, (Leaf(1), Add(1), Add(1))))
    assert nlc.k == 1
    assert all(not op.forward and not op.backward for op in nlc.ops if isinstance(op, Join))
    assert evaluate(nlc).graph == Digraph(3)

def test_round_trip_on_path_expression():
    expr = path_expression()
    assert evaluate(cw_to_nlc(nlc_to_cw(expr))).graph == evaluate(expr).graph

def test_drop_directions_examples():
    k3 = Expression("nlc", 1, (Leaf(1), Join(1, BOTH, BOTH), Join(1, BOTH, BOTH)))
    assert evaluate(drop_directions_nlc(k3)).graph == generate_undirected("complete", 3)
    assert evaluate(drop_directions_nlc(path_expression())).graph == generate_undirected("path", 3)
    edgeless = Expression("cw", 1, (Leaf(1), Add(1)))
    assert drop_directions_cw(edgeless).ops == edgeless.ops

def test_biorient_examples():
    kn = Expression("unlc", 1, (Leaf(1), UJoin(1, BOTH), UJoin(1, BOTH), UJoin(1, BOTH)))
    assert evaluate(biorient_nlc(kn)).graph == generate(FamilySpec(FamilyKind.BIDIRECTIONAL_COMPLETE, 4))
    ucw = Expression("ucw", 2, (Leaf(1), Add(2), AddEdges(1, 2)))
    assert biorient_cw(ucw).ops[2:] == (AddArcs(1, 2), AddArcs(2, 1))

def test_converters_check_grammar():
    with pytest.raises(InputError):
        nlc_to_cw(Expression("cw", 1, (Leaf(1),)))
    with pytest.raises(InputError):
        biorient_nlc(path_expression())

@given(small_digraphs)
@settings(max_examples=50, deadline=None)
def test_converters_preserve_the_built_graph(g):
    _, nlc = exact_dlnlc(g)
    _, cw = exact_dlcw(g)
    converted = nlc_to_cw(nlc)
    assert converted.k <= nlc.k + 1
    assert evaluate(converted).graph == g
    back = cw_to_nlc(cw)
    assert back.k <= cw.k
    assert evaluate(back).graph == g
    assert evaluate(drop_directions_nlc(nlc)).graph == underlying_undirected(g)
    assert evaluate(drop_directions_cw(cw)).graph == underlying_undirected(g)

@given(small_graphs)
@settings(max_examples=40, deadline=None)
def test_biorient_converters_preserve_the_built_graph(gu):
    _, unlc = exact_lnlc(gu)
    _, ucw = exact_lcw(gu)
    assert evaluate(biorient_nlc(unlc)).graph == complete_biorientation(gu)
    assert evaluate(biorient_cw(ucw)).graph == complete_biorientation(gu)
