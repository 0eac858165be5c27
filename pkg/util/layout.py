from array import array
from enum import Enum
from itertools import permutations
from typing import Callable, Iterable, List, NamedTuple, Optional, Tuple, Union

from util.digraph import MAX_VERTICES, Digraph, UndirectedGraph, iter_bits, mask_of, popcount, underlying_undirected
from util.errors import CapacityError, InputError
from util.gf4 import cut_rank_gf2, cut_rank_gf4

DEFAULT_DP_LIMIT = 20
BRUTE_FORCE_LIMIT = 8

Graph = Union[Digraph, UndirectedGraph]
StepCost = Callable[[int, int], int]


class MeasureKind(str, Enum):
    DVSN_IN = "dvsn_in"
    DVSN_OUT = "dvsn_out"
    DCUTW_FWD = "dcutw_fwd"
    DCUTW_BWD = "dcutw_bwd"
    DNW = "dnw"
    DLRW = "dlrw"
    U_VSN = "u_vsn"
    U_CUTW = "u_cutw"
    U_NW = "u_nw"
    U_LRW = "u_lrw"

    @property
    def undirected(self) -> bool:
        return self.value.startswith("u_")


DIRECTED_KINDS = tuple(k for k in MeasureKind if not k.undirected)
UNDIRECTED_KINDS = tuple(k for k in MeasureKind if k.undirected)

# CLI names of the layout measures
NAMED_MEASURES = {
    "dpw": MeasureKind.DVSN_IN,
    "dvsn_out": MeasureKind.DVSN_OUT,
    "dcutw": MeasureKind.DCUTW_FWD,
    "dcutw_bwd": MeasureKind.DCUTW_BWD,
    "dnw": MeasureKind.DNW,
    "dlrw": MeasureKind.DLRW,
    "pw": MeasureKind.U_VSN,
    "cutw": MeasureKind.U_CUTW,
    "nw": MeasureKind.U_NW,
    "lrw": MeasureKind.U_LRW,
}

# directed measure <-> the undirected measure it is compared with
BIORIENTATION_PAIRS = {
    MeasureKind.U_VSN: MeasureKind.DVSN_IN,
    MeasureKind.U_CUTW: MeasureKind.DCUTW_FWD,
    MeasureKind.U_NW: MeasureKind.DNW,
    MeasureKind.U_LRW: MeasureKind.DLRW,
}


class Layout:
    """A bijection from the vertices onto positions 1..n, stored as the vertex order."""

    __slots__ = ("order", "_position")

    def __init__(self, order: Iterable[int]) -> None:
        self.order: Tuple[int, ...] = tuple(order)
        self._position = {v: i + 1 for i, v in enumerate(self.order)}

    @classmethod
    def identity(cls, n: int) -> "Layout":
        return cls(range(n))

    def __len__(self) -> int:
        return len(self.order)

    def __eq__(self, other) -> bool:
        return isinstance(other, Layout) and self.order == other.order

    def __hash__(self) -> int:
        return hash(self.order)

    def __repr__(self) -> str:
        return f"Layout({list(self.order)})"

    def validate(self, n: int) -> None:
        if len(self.order) != n or sorted(self.order) != list(range(n)):
            raise InputError(f"layout {list(self.order)} is not a bijection onto the {n} vertices")

    def position(self, v: int) -> int:
        return self._position[v]

    def reverse(self) -> "Layout":
        return Layout(reversed(self.order))

    def prefix_mask(self, i: int) -> int:
        """Vertex mask of L(i), the first i vertices."""
        return mask_of(self.order[:i])

    def prefix_masks(self) -> Iterable[int]:
        mask = 0
        for v in self.order:
            mask |= 1 << v
            yield mask


class SolveResult(NamedTuple):
    value: int
    witness: Layout


# ─── Prefix costs ──────────────────────────────────────────────


def _as_undirected(g: Graph) -> UndirectedGraph:
    return g if isinstance(g, UndirectedGraph) else underlying_undirected(g)


def cost_function(g: Graph, kind: MeasureKind) -> Callable[[int], int]:
    """Return S -> cost of the cut (S, V - S) for the given measure, S as a vertex mask."""
    kind = MeasureKind(kind)
    full = (1 << g.n) - 1

    if kind.undirected:
        gu = _as_undirected(g)
        adj = gu.adj
        if kind is MeasureKind.U_VSN:
            return lambda s: sum(1 for u in iter_bits(s) if adj[u] & (full ^ s))
        if kind is MeasureKind.U_CUTW:
            return lambda s: sum(popcount(adj[u] & (full ^ s)) for u in iter_bits(s))
        if kind is MeasureKind.U_NW:
            return lambda s: len({adj[u] & (full ^ s) for u in iter_bits(s)})
        return lambda s: cut_rank_gf2(gu, s, full ^ s)

    if not isinstance(g, Digraph):
        raise InputError(f"{kind.value} is a directed measure and needs a digraph")
    out, inn = g.out_mask, g.in_mask
    if kind is MeasureKind.DVSN_IN:
        return lambda s: sum(1 for u in iter_bits(s) if inn[u] & (full ^ s))
    if kind is MeasureKind.DVSN_OUT:
        return lambda s: sum(1 for u in iter_bits(s) if out[u] & (full ^ s))
    if kind is MeasureKind.DCUTW_FWD:
        return lambda s: sum(popcount(out[u] & (full ^ s)) for u in iter_bits(s))
    if kind is MeasureKind.DCUTW_BWD:
        return lambda s: sum(popcount(inn[u] & (full ^ s)) for u in iter_bits(s))
    if kind is MeasureKind.DNW:
        return lambda s: len({(out[u] & (full ^ s), inn[u] & (full ^ s)) for u in iter_bits(s)})
    return lambda s: cut_rank_gf4(g, s, full ^ s)


def _to_mask(n: int, s: Union[int, Iterable[int]]) -> int:
    if isinstance(s, int):
        if s < 0 or s >> n:
            raise InputError(f"vertex mask {s:#x} outside the {n} vertices")
        return s
    vertices = list(s)
    for v in vertices:
        if not 0 <= v < n:
            raise InputError(f"vertex {v} outside [0, {n})")
    return mask_of(vertices)


def prefix_cost(g: Graph, kind: MeasureKind, s: Union[int, Iterable[int]]) -> int:
    """Cost of the cut (S, V - S); S is a vertex mask or an iterable of vertices."""
    return cost_function(g, kind)(_to_mask(g.n, s))


def _singleton_term(g: Graph, kind: MeasureKind) -> int:
    """Largest cut-rank of a pendant caterpillar edge, ({v}, V - v)."""
    if kind is MeasureKind.DLRW:
        return int(any(g.out_mask[v] | g.in_mask[v] for v in range(g.n)))
    if kind is MeasureKind.U_LRW:
        return int(any(_as_undirected(g).adj))
    return 0


def measure_cost(g: Graph, kind: MeasureKind, layout: Layout) -> int:
    kind = MeasureKind(kind)
    layout.validate(g.n)
    cost = cost_function(g, kind)
    value = max((cost(s) for s in layout.prefix_masks()), default=0)
    return max(value, _singleton_term(g, kind))


# ─── Subset DP ─────────────────────────────────────────────────


def _check_limit(n: int, limit: Optional[int]) -> None:
    limit = DEFAULT_DP_LIMIT if limit is None else limit
    if n > min(limit, MAX_VERTICES):
        raise CapacityError(f"{n} vertices exceed the exact-solver limit of {min(limit, MAX_VERTICES)}")


def minimize_layout(
    n: int,
    step_cost: StepCost,
    bound: int = None,
    limit: Optional[int] = None,
    logger=None,
) -> Tuple[int, List[int]]:
    """Minimise the largest step cost over all vertex orders.

    f(S) = min over v in S of max(f(S - v), step_cost(S - v, v)) with
    f({}) = 0. The optimal order is rebuilt backwards from the full set,
    always taking the smallest vertex that attains f.

    Args:
        n (int): Vertex count.
        step_cost (Callable[[int, int], int]): Cost of appending vertex v
            after the placed set given as a mask.
        bound (int): Upper bound on every step cost; picks the table width.
        limit (Optional[int]): Largest n accepted.
        logger (Optional[Any]): Logger for table statistics.

    Returns:
        Tuple[int, List[int]]: Optimal value and a vertex order attaining it.
    """
    _check_limit(n, limit)
    if n == 0:
        return 0, []
    size = 1 << n
    if bound is not None and bound < 255:
        table = bytearray(size)
        cell = 1
    else:
        table = array("I", [0]) * size
        cell = table.itemsize
    if logger:
        logger.debug(f"subset DP over {size} sets ({cell} byte cells)")

    for s in range(1, size):
        best = None
        rest = s
        while rest:
            low = rest & -rest
            rest ^= low
            prev = s ^ low
            value = table[prev]
            if best is not None and value >= best:
                continue
            step = step_cost(prev, low.bit_length() - 1)
            if step > value:
                value = step
            if best is None or value < best:
                best = value
        table[s] = best

    value = table[size - 1]
    order: List[int] = []
    s = size - 1
    while s:
        for v in iter_bits(s):
            prev = s ^ (1 << v)
            if max(table[prev], step_cost(prev, v)) <= table[s]:
                order.append(v)
                s = prev
                break
    order.reverse()
    return value, order


def _set_cost_table(n: int, cost: Callable[[int], int]) -> Union[bytearray, array]:
    """Cost of every vertex set, one byte per set until a cost needs more."""
    table = bytearray(1 << n)
    for s in range(1 << n):
        c = cost(s)
        if c > 255 and isinstance(table, bytearray):
            table = array("I", iter(table))
        table[s] = c
    return table


def _solve_prefix(g: Graph, kind: MeasureKind, limit: Optional[int], logger) -> SolveResult:
    _check_limit(g.n, limit)
    costs = _set_cost_table(g.n, cost_function(g, kind))
    bound = max(costs, default=0)
    value, order = minimize_layout(
        g.n, lambda prev, v: costs[prev | 1 << v], bound=bound, limit=limit, logger=logger
    )
    return SolveResult(max(value, _singleton_term(g, kind)), Layout(order))


def solve_exact(
    g: Digraph, kind: MeasureKind, limit: Optional[int] = None, logger=None
) -> SolveResult:
    """Exact minimum of measure_cost over all layouts of g, with an optimal layout."""
    kind = MeasureKind(kind)
    result = _solve_prefix(g, kind, limit, logger)
    if logger:
        logger.debug(f"{kind.value}: value {result.value}, layout {list(result.witness.order)}")
    return result


def dpw(g: Digraph, limit: Optional[int] = None, logger=None) -> SolveResult:
    """Directed path-width, computed as the directed vertex separation number."""
    return solve_exact(g, MeasureKind.DVSN_IN, limit=limit, logger=logger)


def undirected_measure(
    gu: UndirectedGraph, kind: MeasureKind, limit: Optional[int] = None, logger=None
) -> SolveResult:
    kind = MeasureKind(kind)
    if not kind.undirected:
        raise InputError(f"{kind.value} is not an undirected measure")
    return _solve_prefix(gu, kind, limit, logger)


def brute_force_measure(g: Graph, kind: MeasureKind) -> int:
    """Minimum of measure_cost over all n! layouts; a test oracle for small n."""
    if g.n > BRUTE_FORCE_LIMIT:
        raise CapacityError(f"brute force is limited to {BRUTE_FORCE_LIMIT} vertices")
    return min(measure_cost(g, kind, Layout(p)) for p in permutations(range(g.n)))
