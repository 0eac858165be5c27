"""Arithmetic over GF(2) and GF(4), cut matrices of graphs and their ranks.

GF(4) elements are encoded as 2-bit integers 0, 1, 2 = a, 3 = a^2. The
tables below are generated once at import from the field axioms
x + x = 0, 1 + a + a^2 = 0 and a^3 = 1. With this encoding bit 0 and bit 1
are the coordinates of an element in the basis {1, a}, so a matrix row is
stored as two GF(2) bit planes and row operations are plain XORs.
"""

from itertools import product
from typing import Iterable, List, Sequence, Tuple

from util.digraph import Digraph, UndirectedGraph, iter_bits, mask_of
from util.errors import InputError

ZERO, ONE, A, A2 = 0, 1, 2, 3
ELEMENTS = (ZERO, ONE, A, A2)
NAMES = {ZERO: "0", ONE: "1", A: "a", A2: "a2"}

# a^i for i = 0, 1, 2 and the inverse map
EXP = (ONE, A, A2)
LOG = {ONE: 0, A: 1, A2: 2}


def _build_add_table() -> Tuple[Tuple[int, ...], ...]:
    table = [[0] * 4 for _ in range(4)]
    for x, y in product(ELEMENTS, repeat=2):
        if x == y:
            table[x][y] = ZERO
        elif x == ZERO or y == ZERO:
            table[x][y] = x or y
        else:
            # the three nonzero elements sum to zero
            table[x][y] = ({ONE, A, A2} - {x, y}).pop()
    return tuple(tuple(row) for row in table)


def _build_mul_table() -> Tuple[Tuple[int, ...], ...]:
    table = [[0] * 4 for _ in range(4)]
    for x, y in product(ELEMENTS, repeat=2):
        if x != ZERO and y != ZERO:
            table[x][y] = EXP[(LOG[x] + LOG[y]) % 3]
    return tuple(tuple(row) for row in table)


ADD = _build_add_table()
MUL = _build_mul_table()
INV = (None, ONE, A2, A)


def gf4_add(x: int, y: int) -> int:
    return ADD[x][y]


def gf4_mul(x: int, y: int) -> int:
    return MUL[x][y]


def frobenius(x: int) -> int:
    """x -> x^2, the field automorphism swapping a and a^2."""
    return MUL[x][x]


# ─── Bit-plane elimination ─────────────────────────────────────


def _scale_planes(p0: int, p1: int, c: int) -> Tuple[int, int]:
    if c == ONE:
        return p0, p1
    if c == A:
        return p1, p0 ^ p1
    if c == A2:
        return p0 ^ p1, p0
    return 0, 0


def _entry(p0: int, p1: int, bit: int) -> int:
    return (1 if p0 & bit else 0) | (2 if p1 & bit else 0)


def rank_planes(rows: Iterable[Tuple[int, int]]) -> int:
    """Rank of a GF(4) matrix given as (bit plane 0, bit plane 1) per row."""
    pending = [(p0, p1) for p0, p1 in rows if p0 | p1]
    rank = 0
    while pending:
        p0, p1 = pending.pop()
        support = p0 | p1
        bit = support & -support
        # normalise so the pivot entry is 1
        p0, p1 = _scale_planes(p0, p1, INV[_entry(p0, p1, bit)])
        rank += 1
        reduced = []
        for q0, q1 in pending:
            e = _entry(q0, q1, bit)
            if e:
                s0, s1 = _scale_planes(p0, p1, e)
                q0, q1 = q0 ^ s0, q1 ^ s1
            if q0 | q1:
                reduced.append((q0, q1))
        pending = reduced
    return rank


def rank_gf2_rows(rows: Iterable[int]) -> int:
    """Rank over GF(2) of rows given as bitmasks, by XOR basis reduction."""
    pivots = {}
    for row in rows:
        while row:
            top = row.bit_length() - 1
            if top not in pivots:
                pivots[top] = row
                break
            row ^= pivots[top]
    return len(pivots)


# ─── Matrices ──────────────────────────────────────────────────


class Gf4Matrix:
    """Dense rectangular matrix over GF(4)."""

    def __init__(self, entries: Sequence[Sequence[int]], cols: int = None) -> None:
        rows = [tuple(r) for r in entries]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise InputError("GF(4) matrix rows must have equal length")
            for x in r:
                if x not in ELEMENTS:
                    raise InputError(f"{x!r} is not a GF(4) element")
        self.entries: Tuple[Tuple[int, ...], ...] = tuple(rows)
        self.rows = len(rows)
        self.cols = cols

    def planes(self) -> List[Tuple[int, int]]:
        out = []
        for r in self.entries:
            p0 = p1 = 0
            for c, x in enumerate(r):
                if x & 1:
                    p0 |= 1 << c
                if x & 2:
                    p1 |= 1 << c
            out.append((p0, p1))
        return out

    def rank(self) -> int:
        return rank_planes(self.planes())

    def scale_row(self, i: int, c: int) -> "Gf4Matrix":
        entries = [list(r) for r in self.entries]
        entries[i] = [MUL[c][x] for x in entries[i]]
        return Gf4Matrix(entries, self.cols)

    def permuted(self, row_order: Sequence[int], col_order: Sequence[int]) -> "Gf4Matrix":
        return Gf4Matrix(
            [[self.entries[i][j] for j in col_order] for i in row_order], len(col_order)
        )

    def map(self, fn) -> "Gf4Matrix":
        return Gf4Matrix([[fn(x) for x in r] for r in self.entries], self.cols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Gf4Matrix):
            return NotImplemented
        return self.cols == other.cols and self.entries == other.entries

    def __repr__(self) -> str:
        body = "; ".join(" ".join(NAMES[x] for x in r) for r in self.entries)
        return f"Gf4Matrix[{self.rows}x{self.cols}]({body})"


class Gf2Matrix:
    """Rectangular 0/1 matrix; rows are kept as bitmasks for elimination."""

    def __init__(self, entries: Sequence[Sequence[int]], cols: int = None) -> None:
        rows = [tuple(r) for r in entries]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols or any(x not in (0, 1) for x in r):
                raise InputError("GF(2) matrix rows must be equal-length 0/1 sequences")
        self.entries: Tuple[Tuple[int, ...], ...] = tuple(rows)
        self.rows = len(rows)
        self.cols = cols

    def rank(self) -> int:
        return rank_gf2_rows(mask_of(c for c, x in enumerate(r) if x) for r in self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Gf2Matrix):
            return NotImplemented
        return self.cols == other.cols and self.entries == other.entries

    def __repr__(self) -> str:
        return f"Gf2Matrix[{self.rows}x{self.cols}]{list(self.entries)}"


def gf4_rank(m: Gf4Matrix) -> int:
    return m.rank()


def gf2_rank(m: Gf2Matrix) -> int:
    return m.rank()


def _sides(n: int, a: Iterable[int], b: Iterable[int]) -> Tuple[List[int], List[int]]:
    rows, cols = sorted(set(a)), sorted(set(b))
    for v in rows + cols:
        if not 0 <= v < n:
            raise InputError(f"vertex {v} outside [0, {n})")
    if set(rows) & set(cols):
        raise InputError("cut sides must be disjoint")
    return rows, cols


def gf4_entry(g: Digraph, u: int, v: int) -> int:
    forward, backward = g.has_arc(u, v), g.has_arc(v, u)
    if forward and backward:
        return ONE
    if forward:
        return A
    if backward:
        return A2
    return ZERO


def cut_matrix_gf4(g: Digraph, a: Iterable[int], b: Iterable[int]) -> Gf4Matrix:
    """Cut matrix of (A, B); rows and columns follow ascending vertex id.

    Entry (u, v) is a for an arc u->v only, a^2 for v->u only, 1 for both
    and 0 for neither.
    """
    rows, cols = _sides(g.n, a, b)
    return Gf4Matrix([[gf4_entry(g, u, v) for v in cols] for u in rows], len(cols))


def cut_matrix_gf2(gu: UndirectedGraph, a: Iterable[int], b: Iterable[int]) -> Gf2Matrix:
    rows, cols = _sides(gu.n, a, b)
    return Gf2Matrix([[int(gu.has_edge(u, v)) for v in cols] for u in rows], len(cols))


def cut_rank_gf4(g: Digraph, a_mask: int, b_mask: int) -> int:
    """GF(4) cut-rank of disjoint vertex masks without building a matrix.

    Plane 0 of row u is its in-neighbourhood in B, plane 1 the symmetric
    difference of its out- and in-neighbourhoods in B.
    """
    rows = []
    for u in iter_bits(a_mask):
        fwd = g.out_mask[u] & b_mask
        bwd = g.in_mask[u] & b_mask
        if fwd | bwd:
            rows.append((bwd, fwd ^ bwd))
    return rank_planes(rows)


def cut_rank_gf2(gu: UndirectedGraph, a_mask: int, b_mask: int) -> int:
    return rank_gf2_rows(gu.adj[u] & b_mask for u in iter_bits(a_mask))
