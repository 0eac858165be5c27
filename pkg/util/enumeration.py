from itertools import permutations, product
from typing import Dict, Iterator, List, Sequence, Tuple

from util.digraph import Digraph, UndirectedGraph
from util.errors import CapacityError

ENUMERATION_LIMIT = 5


def _check(n: int) -> None:
    if n < 0:
        raise CapacityError(f"cannot enumerate graphs on {n} vertices")
    if n > ENUMERATION_LIMIT:
        raise CapacityError(f"enumeration is limited to {ENUMERATION_LIMIT} vertices, got {n}")


def _ordered_pairs(n: int) -> List[Tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(n) if u != v]


def _blocks(signature: Sequence) -> List[List[int]]:
    groups: Dict[object, List[int]] = {}
    for v, sig in enumerate(signature):
        groups.setdefault(sig, []).append(v)
    return [groups[s] for s in sorted(groups)]


def _min_code(n: int, signature: Sequence, adjacent) -> int:
    best = None
    for parts in product(*(permutations(b) for b in _blocks(signature))):
        order = [v for part in parts for v in part]
        code = 0
        for u in order:
            for v in order:
                if u != v:
                    code = code << 1 | adjacent(u, v)
        if best is None or code < best:
            best = code
    return best if best is not None else 0


def canonical_form(g: Digraph) -> Tuple[int, int]:
    """Isomorphism invariant: (n, smallest adjacency code over degree-sorted orders)."""
    signature = [(g.out_degree(v), g.in_degree(v)) for v in range(g.n)]
    return g.n, _min_code(g.n, signature, g.has_arc)


def canonical_form_undirected(gu: UndirectedGraph) -> Tuple[int, int]:
    signature = [gu.degree(v) for v in range(gu.n)]
    return gu.n, _min_code(gu.n, signature, gu.has_edge)


def enumerate_digraphs(n: int, up_to_iso: bool = False) -> Iterator[Digraph]:
    """All loop-free digraphs on n labelled vertices, or one per isomorphism class.

    Isomorphism classes on n vertices are grown from the classes on n - 1
    vertices by attaching a new vertex in every possible way, which reaches
    every digraph because deleting the last vertex lands in some class.
    """
    _check(n)
    if not up_to_iso:
        pairs = _ordered_pairs(n)
        for code in range(1 << len(pairs)):
            yield Digraph(n, (p for i, p in enumerate(pairs) if code >> i & 1))
        return
    yield from _digraph_classes(n)


def _digraph_classes(n: int) -> List[Digraph]:
    classes = [Digraph(0)]
    for size in range(1, n + 1):
        seen = set()
        grown = []
        for base in classes:
            old = size - 1
            for pattern in range(1 << (2 * old)):
                arcs = base.arcs
                for u in range(old):
                    if pattern >> (2 * u) & 1:
                        arcs.append((u, old))
                    if pattern >> (2 * u + 1) & 1:
                        arcs.append((old, u))
                g = Digraph(size, arcs)
                key = canonical_form(g)
                if key not in seen:
                    seen.add(key)
                    grown.append(g)
        classes = grown
    return classes


def enumerate_graphs(n: int, up_to_iso: bool = False) -> Iterator[UndirectedGraph]:
    _check(n)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    if not up_to_iso:
        for code in range(1 << len(pairs)):
            yield UndirectedGraph(n, (p for i, p in enumerate(pairs) if code >> i & 1))
        return
    classes = [UndirectedGraph(0)]
    for size in range(1, n + 1):
        seen = set()
        grown = []
        for base in classes:
            old = size - 1
            for pattern in range(1 << old):
                edges = base.edges + [(u, old) for u in range(old) if pattern >> u & 1]
                gu = UndirectedGraph(size, edges)
                key = canonical_form_undirected(gu)
                if key not in seen:
                    seen.add(key)
                    grown.append(gu)
        classes = grown
    yield from classes
