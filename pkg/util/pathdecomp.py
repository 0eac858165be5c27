from typing import FrozenSet, Iterable, List, NamedTuple, Optional, Tuple

from util.digraph import Digraph
from util.errors import InputError
from util.layout import Layout


class DirectedPathDecomposition:
    """A sequence of bags X_1..X_r of vertices."""

    __slots__ = ("bags",)

    def __init__(self, bags: Iterable[Iterable[int]]) -> None:
        self.bags: Tuple[FrozenSet[int], ...] = tuple(frozenset(b) for b in bags)

    def __len__(self) -> int:
        return len(self.bags)

    def __eq__(self, other) -> bool:
        return isinstance(other, DirectedPathDecomposition) and self.bags == other.bags

    def __repr__(self) -> str:
        return f"DirectedPathDecomposition({[sorted(b) for b in self.bags]})"

    def as_lists(self) -> List[List[int]]:
        return [sorted(b) for b in self.bags]


class ValidationReport(NamedTuple):
    ok: bool
    condition: Optional[int] = None
    detail: str = ""


def width(d: DirectedPathDecomposition) -> int:
    return max((len(b) for b in d.bags), default=0) - 1


def validate(g: Digraph, d: DirectedPathDecomposition) -> ValidationReport:
    """Check the three decomposition conditions and name the first one violated.

    (1) every vertex lies in a bag, (2) every arc (u, v) has u in X_i and v
    in X_j with i <= j, (3) the bags holding any vertex are consecutive.
    """
    first = [None] * g.n
    last = [None] * g.n
    count = [0] * g.n
    for i, bag in enumerate(d.bags):
        for v in bag:
            if not 0 <= v < g.n:
                raise InputError(f"bag {i + 1} holds vertex {v} outside [0, {g.n})")
            if first[v] is None:
                first[v] = i
            last[v] = i
            count[v] += 1

    for v in range(g.n):
        if first[v] is None:
            return ValidationReport(False, 1, f"vertex {g.label(v)} is in no bag")

    for u, v in g.arcs:
        if first[u] > last[v]:
            return ValidationReport(
                False,
                2,
                f"arc ({g.label(u)}, {g.label(v)}): {g.label(u)} first appears in bag "
                f"{first[u] + 1} after the last bag {last[v] + 1} holding {g.label(v)}",
            )

    for v in range(g.n):
        if count[v] != last[v] - first[v] + 1:
            missing = next(i for i in range(first[v], last[v] + 1) if v not in d.bags[i])
            return ValidationReport(
                False, 3, f"vertex {g.label(v)} is missing from bag {missing + 1} between its occurrences"
            )
    return ValidationReport(True)


def from_layout(g: Digraph, layout: Layout) -> DirectedPathDecomposition:
    """Build a decomposition whose width is the vertex separation cost of layout.

    Bag i holds the i-th vertex plus every earlier vertex that still has an
    in-neighbour at position i or later.
    """
    layout.validate(g.n)
    last_in = [0] * g.n
    for u in range(g.n):
        last_in[u] = max((layout.position(w) for w in g.in_neighbours(u)), default=0)
    bags = []
    for i, v in enumerate(layout.order, start=1):
        bag = {v}
        for u in layout.order[: i - 1]:
            if last_in[u] >= i:
                bag.add(u)
        bags.append(bag)
    return DirectedPathDecomposition(bags)
