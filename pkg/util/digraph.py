from itertools import combinations
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from util.errors import CapacityError, InputError

MAX_VERTICES = 64

Arc = Tuple[int, int]


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return mask.bit_count()


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def _check_size(n: int) -> None:
    if not isinstance(n, int) or n < 0:
        raise InputError(f"vertex count must be a non-negative integer, got {n!r}")
    if n > MAX_VERTICES:
        raise CapacityError(f"{n} vertices exceed the {MAX_VERTICES}-vertex bitset cap")


class Digraph:
    """Loop-free digraph on vertices 0..n-1 with per-vertex out/in bitsets.

    Instances are immutable after construction and hash by their arc set.
    """

    __slots__ = ("n", "out_mask", "in_mask", "labels")

    def __init__(
        self,
        n: int,
        arcs: Iterable[Arc] = (),
        labels: Optional[Sequence[str]] = None,
    ) -> None:
        _check_size(n)
        out_mask = [0] * n
        in_mask = [0] * n
        for arc in arcs:
            u, v = arc
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"arc ({u}, {v}) has an endpoint outside [0, {n})")
            if u == v:
                raise InputError(f"loop at vertex {u} is not allowed")
            out_mask[u] |= 1 << v
            in_mask[v] |= 1 << u
        if labels is not None and len(labels) != n:
            raise InputError(f"expected {n} vertex labels, got {len(labels)}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "out_mask", tuple(out_mask))
        object.__setattr__(self, "in_mask", tuple(in_mask))
        object.__setattr__(self, "labels", tuple(labels) if labels is not None else None)

    def __setattr__(self, name, value):
        raise AttributeError("Digraph is immutable")

    def __reduce__(self):
        return (Digraph, (self.n, self.arcs, self.labels))

    @classmethod
    def from_masks(cls, out_mask: Sequence[int]) -> "Digraph":
        n = len(out_mask)
        return cls(n, ((u, v) for u in range(n) for v in iter_bits(out_mask[u])))

    @property
    def arcs(self) -> List[Arc]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.out_mask[u])]

    @property
    def arc_count(self) -> int:
        return sum(popcount(m) for m in self.out_mask)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out_mask[u] >> v & 1)

    def out_neighbours(self, v: int) -> List[int]:
        return list(iter_bits(self.out_mask[v]))

    def in_neighbours(self, v: int) -> List[int]:
        return list(iter_bits(self.in_mask[v]))

    def out_degree(self, v: int) -> int:
        return popcount(self.out_mask[v])

    def in_degree(self, v: int) -> int:
        return popcount(self.in_mask[v])

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.n == other.n and self.out_mask == other.out_mask

    def __hash__(self) -> int:
        return hash((self.n, self.out_mask))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={self.arcs})"


class UndirectedGraph:
    """Loop-free simple graph on vertices 0..n-1 with one adjacency bitset per vertex."""

    __slots__ = ("n", "adj")

    def __init__(self, n: int, edges: Iterable[Arc] = ()) -> None:
        _check_size(n)
        adj = [0] * n
        for edge in edges:
            u, v = edge
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge {{{u}, {v}}} has an endpoint outside [0, {n})")
            if u == v:
                raise InputError(f"loop at vertex {u} is not allowed")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "adj", tuple(adj))

    def __setattr__(self, name, value):
        raise AttributeError("UndirectedGraph is immutable")

    def __reduce__(self):
        return (UndirectedGraph, (self.n, self.edges))

    @property
    def edges(self) -> List[Arc]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u]) if u < v]

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def __eq__(self, other) -> bool:
        if not isinstance(other, UndirectedGraph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"UndirectedGraph(n={self.n}, edges={self.edges})"


class DegreeProfile(NamedTuple):
    max_out: int
    max_in: int
    max_total: int


# ─── Derived graphs ────────────────────────────────────────────


def underlying_undirected(g: Digraph) -> UndirectedGraph:
    return UndirectedGraph(g.n, g.arcs)


def complete_biorientation(gu: UndirectedGraph) -> Digraph:
    arcs = []
    for u, v in gu.edges:
        arcs.append((u, v))
        arcs.append((v, u))
    return Digraph(gu.n, arcs)


def converse(g: Digraph) -> Digraph:
    return Digraph(g.n, ((v, u) for u, v in g.arcs), labels=g.labels)


def induced_subdigraph(g: Digraph, vertices: Iterable[int]) -> Digraph:
    """Return the subdigraph induced by vertices, relabelled 0.. by ascending original id.

    Args:
        g (Digraph): Host digraph.
        vertices (Iterable[int]): Vertex subset of g.

    Returns:
        Digraph: Induced subdigraph; labels follow the host's labels.
    """
    chosen = sorted(set(vertices))
    for v in chosen:
        if not 0 <= v < g.n:
            raise InputError(f"vertex {v} outside [0, {g.n})")
    index: Dict[int, int] = {v: i for i, v in enumerate(chosen)}
    arcs = [
        (index[u], index[v])
        for u in chosen
        for v in iter_bits(g.out_mask[u])
        if v in index
    ]
    labels = [g.labels[v] for v in chosen] if g.labels is not None else None
    return Digraph(len(chosen), arcs, labels=labels)


def induced_subgraph(gu: UndirectedGraph, vertices: Iterable[int]) -> UndirectedGraph:
    chosen = sorted(set(vertices))
    for v in chosen:
        if not 0 <= v < gu.n:
            raise InputError(f"vertex {v} outside [0, {gu.n})")
    index = {v: i for i, v in enumerate(chosen)}
    return UndirectedGraph(
        len(chosen),
        ((index[u], index[v]) for u, v in gu.edges if u in index and v in index),
    )


def disjoint_union(g1: Digraph, g2: Digraph) -> Digraph:
    shift = g1.n
    arcs = g1.arcs + [(u + shift, v + shift) for u, v in g2.arcs]
    return Digraph(g1.n + g2.n, arcs)


# ─── Degrees and structure ─────────────────────────────────────


def degree_profile(g: Digraph) -> DegreeProfile:
    if g.n == 0:
        return DegreeProfile(0, 0, 0)
    return DegreeProfile(
        max_out=max(g.out_degree(v) for v in range(g.n)),
        max_in=max(g.in_degree(v) for v in range(g.n)),
        max_total=max(g.out_degree(v) + g.in_degree(v) for v in range(g.n)),
    )


def max_undirected_degree(gu: UndirectedGraph) -> int:
    return max((gu.degree(v) for v in range(gu.n)), default=0)


def is_dag(g: Digraph) -> bool:
    """Kahn's algorithm on bitsets; a 2-cycle counts as a directed cycle."""
    remaining = g.full_mask
    while remaining:
        sources = [v for v in iter_bits(remaining) if not g.in_mask[v] & remaining]
        if not sources:
            return False
        for v in sources:
            remaining &= ~(1 << v)
    return True


def classify(g: Digraph) -> str:
    """Most specific class among edgeless, oriented, tournament, semicomplete, complete, general."""
    if g.n < 1:
        raise InputError("classify needs at least one vertex")
    if g.n == 1 or g.arc_count == 0:
        return "edgeless"
    both = 0
    missing = 0
    for u, v in combinations(range(g.n), 2):
        forward, backward = g.has_arc(u, v), g.has_arc(v, u)
        if forward and backward:
            both += 1
        elif not forward and not backward:
            missing += 1
    pairs = g.n * (g.n - 1) // 2
    if missing == 0:
        if both == pairs:
            return "complete"
        return "tournament" if both == 0 else "semicomplete"
    return "oriented" if both == 0 else "general"


def contains_induced(g: Digraph, h: Digraph) -> bool:
    """Check whether some vertex subset of g induces a copy of h.

    Backtracking over injections h -> g, pruned by out/in degrees.
    """
    if h.n > g.n:
        return False
    if h.n == 0:
        return True
    # Place high-degree pattern vertices first; they prune hardest.
    order = sorted(range(h.n), key=lambda x: -(h.out_degree(x) + h.in_degree(x)))
    image = [-1] * h.n
    used = 0

    def fits(x: int, y: int) -> bool:
        if g.out_degree(y) < h.out_degree(x) or g.in_degree(y) < h.in_degree(x):
            return False
        for x2 in range(h.n):
            y2 = image[x2]
            if y2 < 0:
                continue
            if h.has_arc(x, x2) != g.has_arc(y, y2):
                return False
            if h.has_arc(x2, x) != g.has_arc(y2, y):
                return False
        return True

    def extend(depth: int) -> bool:
        nonlocal used
        if depth == h.n:
            return True
        x = order[depth]
        for y in range(g.n):
            if used >> y & 1 or not fits(x, y):
                continue
            image[x] = y
            used |= 1 << y
            if extend(depth + 1):
                return True
            image[x] = -1
            used &= ~(1 << y)
        return False

    return extend(0)


def has_biclique_subgraph(gu: UndirectedGraph, size: int) -> bool:
    """Whether gu contains K_{size,size} as a subgraph (not necessarily induced)."""
    if size <= 0:
        return True
    for side in combinations(range(gu.n), size):
        common = gu.full_mask
        for v in side:
            common &= gu.adj[v]
        if popcount(common) >= size:
            return True
    return False
