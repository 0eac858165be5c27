from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple

from util.digraph import Arc, Digraph, UndirectedGraph, complete_biorientation
from util.errors import InputError


class FamilyKind(str, Enum):
    EDGELESS = "edgeless"
    DIRECTED_PATH = "directed_path"
    DIRECTED_CYCLE = "directed_cycle"
    BIDIRECTIONAL_COMPLETE = "bidirectional_complete"
    PATH_POWER = "path_power"
    BIORIENTED_GRID = "bioriented_grid"
    BIORIENTED_STAR = "bioriented_star"
    BIORIENTED_COMPLETE_BIPARTITE = "bioriented_complete_bipartite"
    TRANSITIVE_TOURNAMENT = "transitive_tournament"
    ORIENTED_PATH = "oriented_path"
    ACYCLIC_GRID = "acyclic_grid"


@dataclass(frozen=True)
class FamilySpec:
    """A named family member.

    `n` is the main size parameter. `k` is the power of a path power, `m`
    the second side of a complete bipartite graph and `bits` the
    orientation vector of an oriented path (bit i set orients edge
    {i, i+1} forward).
    """

    family: FamilyKind
    n: int
    k: Optional[int] = None
    m: Optional[int] = None
    bits: Optional[int] = None


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise InputError(message)


def _path_edges(n: int) -> List[Arc]:
    return [(i, i + 1) for i in range(n - 1)]


def _grid_edges(n: int) -> List[Arc]:
    edges = []
    for r in range(n):
        for c in range(n):
            v = r * n + c
            if c + 1 < n:
                edges.append((v, v + 1))
            if r + 1 < n:
                edges.append((v, v + n))
    return edges


def _bipartite_edges(n: int, m: int) -> List[Arc]:
    return [(i, n + j) for i in range(n) for j in range(m)]


def generate(spec: FamilySpec) -> Digraph:
    """Materialize one member of a digraph family.

    Args:
        spec (FamilySpec): Family and parameters.

    Returns:
        Digraph: The family member with vertices numbered along the
            family's natural order (row-major for grids, centre 0 for stars).
    """
    family = FamilyKind(spec.family)
    n = spec.n
    _require(isinstance(n, int) and n >= 0, f"{family.value}: n must be a non-negative integer")

    if family is FamilyKind.EDGELESS:
        return Digraph(n)
    if family is FamilyKind.DIRECTED_PATH:
        _require(n >= 1, "directed_path needs n >= 1")
        return Digraph(n, _path_edges(n))
    if family is FamilyKind.DIRECTED_CYCLE:
        _require(n >= 2, "directed_cycle needs n >= 2")
        return Digraph(n, [(i, (i + 1) % n) for i in range(n)])
    if family is FamilyKind.BIDIRECTIONAL_COMPLETE:
        return Digraph(n, [(u, v) for u in range(n) for v in range(n) if u != v])
    if family is FamilyKind.PATH_POWER:
        k = spec.k
        _require(n >= 1, "path_power needs n >= 1")
        _require(k is not None and k >= 0, "path_power needs k >= 0")
        return Digraph(n, [(i, j) for i in range(n) for j in range(i + 1, min(n, i + k + 1))])
    if family is FamilyKind.BIORIENTED_GRID:
        _require(n >= 1, "bioriented_grid needs n >= 1")
        return complete_biorientation(UndirectedGraph(n * n, _grid_edges(n)))
    if family is FamilyKind.ACYCLIC_GRID:
        _require(n >= 1, "acyclic_grid needs n >= 1")
        return Digraph(n * n, _grid_edges(n))
    if family is FamilyKind.BIORIENTED_STAR:
        return complete_biorientation(UndirectedGraph(n + 1, [(0, i) for i in range(1, n + 1)]))
    if family is FamilyKind.BIORIENTED_COMPLETE_BIPARTITE:
        m = spec.m
        _require(m is not None and m >= 0, "bioriented_complete_bipartite needs m >= 0")
        return complete_biorientation(UndirectedGraph(n + m, _bipartite_edges(n, m)))
    if family is FamilyKind.TRANSITIVE_TOURNAMENT:
        return Digraph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
    if family is FamilyKind.ORIENTED_PATH:
        _require(n >= 1, "oriented_path needs n >= 1")
        bits = spec.bits if spec.bits is not None else (1 << max(n - 1, 0)) - 1
        _require(0 <= bits < 1 << max(n - 1, 0), f"oriented_path bits must fit in {n - 1} bits")
        arcs = [(i, i + 1) if bits >> i & 1 else (i + 1, i) for i in range(n - 1)]
        return Digraph(n, arcs)
    raise InputError(f"unknown family {spec.family!r}")


UNDIRECTED_FAMILIES = ("edgeless", "path", "cycle", "complete", "star", "complete_bipartite", "grid")


def generate_undirected(family: str, n: int, m: Optional[int] = None) -> UndirectedGraph:
    """Undirected counterparts: path, cycle, complete, star K_{1,n}, K_{n,m}, n x n grid."""
    _require(isinstance(n, int) and n >= 0, f"{family}: n must be a non-negative integer")
    if family == "edgeless":
        return UndirectedGraph(n)
    if family == "path":
        return UndirectedGraph(n, _path_edges(n))
    if family == "cycle":
        _require(n >= 3, "cycle needs n >= 3")
        return UndirectedGraph(n, [(i, (i + 1) % n) for i in range(n)])
    if family == "complete":
        return UndirectedGraph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])
    if family == "star":
        return UndirectedGraph(n + 1, [(0, i) for i in range(1, n + 1)])
    if family == "complete_bipartite":
        _require(m is not None and m >= 0, "complete_bipartite needs m >= 0")
        return UndirectedGraph(n + m, _bipartite_edges(n, m))
    if family == "grid":
        return UndirectedGraph(n * n, _grid_edges(n))
    raise InputError(f"unknown undirected family {family!r}")


def parse_family_params(family: str, params: List[str]) -> FamilySpec:
    """Build a FamilySpec from CLI tokens such as `path_power 8 2` or `oriented_path 5 0b1011`."""
    try:
        kind = FamilyKind(family)
    except ValueError:
        raise InputError(
            f"unknown family {family!r}; expected one of {[f.value for f in FamilyKind]}"
        )
    try:
        values: Tuple[int, ...] = tuple(int(p, 0) for p in params)
    except ValueError:
        raise InputError(f"family parameters must be integers, got {params}")
    expected = {
        FamilyKind.PATH_POWER: ("n", "k"),
        FamilyKind.BIORIENTED_COMPLETE_BIPARTITE: ("n", "m"),
        FamilyKind.ORIENTED_PATH: ("n", "bits"),
    }.get(kind, ("n",))
    required = 1 if kind is FamilyKind.ORIENTED_PATH else len(expected)
    if not required <= len(values) <= len(expected):
        raise InputError(f"{kind.value} takes parameters {' '.join(expected)}")
    return FamilySpec(kind, **dict(zip(expected, values)))
