from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from util.digraph import Digraph, UndirectedGraph, disjoint_union, induced_subdigraph, iter_bits
from util.errors import InputError
from util.expressions import Expression, Join, Leaf, Relabel

LOOP_PAIR = frozenset({(1, 1)})


class StepKind(str, Enum):
    START = "start"
    ISOLATED = "isolated"  # G + new vertex
    SINK = "sink"  # every old vertex -> new vertex
    SOURCE = "source"  # new vertex -> every old vertex
    SERIES = "series"  # both directions


@dataclass(frozen=True)
class ThresholdBuildSequence:
    """Build steps; the first one only creates the starting vertex.

    `vertices[i]` names the vertex created by step i; when omitted step i
    creates vertex i.
    """

    steps: Tuple[StepKind, ...]
    vertices: Optional[Tuple[int, ...]] = None

    @property
    def oriented(self) -> bool:
        return StepKind.SERIES not in self.steps[1:]

    def vertex_order(self) -> List[int]:
        if self.vertices is None:
            return list(range(len(self.steps)))
        if len(self.vertices) != len(self.steps) or sorted(self.vertices) != list(range(len(self.steps))):
            raise InputError("threshold sequence vertices must list 0..n-1 once, one per step")
        return list(self.vertices)


@dataclass(frozen=True)
class ThresholdResult:
    is_threshold: bool
    sequence: Optional[ThresholdBuildSequence] = None
    residual: Optional[Digraph] = None
    residual_vertices: Tuple[int, ...] = ()


def eval_threshold(seq: ThresholdBuildSequence) -> Digraph:
    if not seq.steps:
        raise InputError("a threshold build sequence needs at least one step")
    order = seq.vertex_order()
    arcs = []
    for i, (kind, v) in enumerate(zip(seq.steps, order)):
        if i == 0:
            continue
        kind = StepKind(kind)
        if kind is StepKind.START:
            raise InputError(f"step {i}: only the first step may be start")
        for u in order[:i]:
            if kind in (StepKind.SINK, StepKind.SERIES):
                arcs.append((u, v))
            if kind in (StepKind.SOURCE, StepKind.SERIES):
                arcs.append((v, u))
    return Digraph(len(order), arcs)


def _peel_kind(g: Digraph, v: int, rest: int, oriented: bool) -> Optional[StepKind]:
    out, inn = g.out_mask[v] & rest, g.in_mask[v] & rest
    if not rest:
        return StepKind.START
    if not out and not inn:
        return StepKind.ISOLATED
    if inn == rest and not out:
        return StepKind.SINK
    if out == rest and not inn:
        return StepKind.SOURCE
    if inn == rest and out == rest and not oriented:
        return StepKind.SERIES
    return None


def recognize_threshold(g: Digraph, oriented: bool = False, logger=None) -> ThresholdResult:
    """Recognise directed threshold graphs by peeling the last-added vertex.

    Repeatedly removes the smallest vertex that is isolated, a universal
    sink, a universal source or (unless oriented) universally joined both
    ways with respect to the remaining vertices. The removed vertices in
    reverse form the build sequence; if peeling gets stuck the remaining
    induced subdigraph is returned instead.

    Args:
        g (Digraph): Digraph with at least one vertex.
        oriented (bool): Recognise oriented threshold graphs (no series steps).
        logger (Optional[Any]): Logger for the peel trace.

    Returns:
        ThresholdResult: Sequence on success, residual subdigraph otherwise.
    """
    if g.n == 0:
        raise InputError("threshold recognition needs at least one vertex")
    remaining = g.full_mask
    peeled: List[Tuple[StepKind, int]] = []
    while remaining:
        for v in iter_bits(remaining):
            kind = _peel_kind(g, v, remaining ^ (1 << v), oriented)
            if kind is not None:
                peeled.append((kind, v))
                remaining ^= 1 << v
                break
        else:
            stuck = tuple(iter_bits(remaining))
            if logger:
                logger.debug(f"peeling stuck on {len(stuck)} vertices: {list(stuck)}")
            return ThresholdResult(
                False, residual=induced_subdigraph(g, stuck), residual_vertices=stuck
            )
    peeled.reverse()
    sequence = ThresholdBuildSequence(
        tuple(kind for kind, _ in peeled), tuple(v for _, v in peeled)
    )
    return ThresholdResult(True, sequence=sequence)


_STEP_PAIRS = {
    StepKind.ISOLATED: (frozenset(), frozenset()),
    StepKind.SINK: (LOOP_PAIR, frozenset()),
    StepKind.SOURCE: (frozenset(), LOOP_PAIR),
    StepKind.SERIES: (LOOP_PAIR, LOOP_PAIR),
}


def threshold_to_nlc1(seq: ThresholdBuildSequence) -> Expression:
    """Translate each build step into a one-label NLC join."""
    if not seq.steps:
        raise InputError("a threshold build sequence needs at least one step")
    order = seq.vertex_order()
    vertex = (lambda i: order[i]) if seq.vertices is not None else (lambda i: None)
    ops = [Leaf(1, vertex(0))]
    for i, kind in enumerate(seq.steps[1:], start=1):
        forward, backward = _STEP_PAIRS[StepKind(kind)]
        ops.append(Join(1, forward, backward, vertex(i)))
    return Expression("nlc", 1, tuple(ops))


def nlc1_to_threshold(expr: Expression) -> ThresholdBuildSequence:
    expr.validate()
    if expr.kind != "nlc":
        raise InputError(f"expected an nlc expression, got {expr.kind}")
    if expr.k > 1:
        raise InputError(f"expression uses {expr.k} labels; threshold sequences need exactly one")
    steps: List[StepKind] = []
    vertices: List[Optional[int]] = []
    for op in expr.ops:
        if isinstance(op, Relabel):
            continue
        vertices.append(op.vertex)
        if isinstance(op, Leaf):
            steps.append(StepKind.START)
            continue
        forward, backward = (1, 1) in op.forward, (1, 1) in op.backward
        if forward and backward:
            steps.append(StepKind.SERIES)
        elif forward:
            steps.append(StepKind.SINK)
        elif backward:
            steps.append(StepKind.SOURCE)
        else:
            steps.append(StepKind.ISOLATED)
    given = None if all(v is None for v in vertices) else tuple(vertices)
    return ThresholdBuildSequence(tuple(steps), given)


def is_undirected_threshold(gu: UndirectedGraph) -> bool:
    """Peel isolated or dominating vertices until nothing or a stuck core is left."""
    remaining = gu.full_mask
    while remaining:
        for v in iter_bits(remaining):
            rest = remaining ^ (1 << v)
            nbrs = gu.adj[v] & rest
            if not nbrs or nbrs == rest:
                remaining = rest
                break
        else:
            return False
    return True


def forbidden_threshold_subdigraphs() -> Dict[str, Digraph]:
    """Small digraphs no directed threshold graph contains as an induced subdigraph."""
    p2 = Digraph(2, [(0, 1)])
    bi_p2 = Digraph(2, [(0, 1), (1, 0)])
    return {
        "2P2": disjoint_union(p2, p2),
        "P2+biP2": disjoint_union(p2, bi_p2),
        "2biP2": disjoint_union(bi_p2, bi_p2),
        "C3": Digraph(3, [(0, 1), (1, 2), (2, 0)]),
    }
