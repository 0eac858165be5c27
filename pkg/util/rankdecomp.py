from dataclasses import dataclass
from typing import Iterator, List, NamedTuple, Tuple, Union

from util.digraph import Digraph, UndirectedGraph
from util.errors import InputError
from util.gf4 import cut_rank_gf2, cut_rank_gf4
from util.layout import Layout


@dataclass(frozen=True)
class RankDecomposition:
    """Caterpillar decomposition: spine nodes s_1..s_n, leaf i hangs off s_i.

    Pendant edge i separates {leaves[i]} from the rest, spine edge
    (s_i, s_{i+1}) separates leaves[:i + 1] from the rest.
    """

    leaves: Tuple[int, ...]

    def edges(self) -> Iterator[Tuple[str, int]]:
        """Yield (edge name, vertex mask of one side) for every tree edge."""
        prefix = 0
        for i, v in enumerate(self.leaves):
            yield f"pendant {i + 1}", 1 << v
            prefix |= 1 << v
            if i + 1 < len(self.leaves):
                yield f"spine {i + 1}-{i + 2}", prefix


class RankCheck(NamedTuple):
    ok: bool
    width: int
    detail: str = ""


def layout_to_rank_decomposition(g: Union[Digraph, UndirectedGraph], layout: Layout) -> RankDecomposition:
    layout.validate(g.n)
    return RankDecomposition(layout.order)


def decomposition_width(g: Union[Digraph, UndirectedGraph], dec: RankDecomposition) -> int:
    """Largest cut-rank over all caterpillar edges, GF(4) for digraphs and GF(2) otherwise."""
    full = (1 << g.n) - 1
    if isinstance(g, Digraph):
        rank = lambda side: cut_rank_gf4(g, side, full ^ side)
    else:
        rank = lambda side: cut_rank_gf2(g, side, full ^ side)
    return max((rank(side) for _, side in dec.edges()), default=0)


def verify_rank_decomposition(
    g: Union[Digraph, UndirectedGraph], dec: RankDecomposition, claimed_width: int = None
) -> RankCheck:
    if sorted(dec.leaves) != list(range(g.n)):
        return RankCheck(False, -1, f"leaves {list(dec.leaves)} are not a bijection onto the {g.n} vertices")
    w = decomposition_width(g, dec)
    if claimed_width is not None and w != claimed_width:
        return RankCheck(False, w, f"recomputed width {w} differs from claimed width {claimed_width}")
    return RankCheck(True, w)


def parse_leaves(leaves: List[int], n: int) -> RankDecomposition:
    if sorted(leaves) != list(range(n)):
        raise InputError(f"caterpillar leaves {leaves} must list each of the {n} vertices once")
    return RankDecomposition(tuple(leaves))
