"""Linear NLC-width and linear clique-width expressions, directed and undirected.

An expression is kept as its operations in evaluation order. Every
vertex-creating operation adds exactly one vertex, so the creation order
is a layout of the resulting graph. Labels are 1..k.

Grammars:
    nlc   Leaf, Join (directed arcs by label pairs), Relabel (total map)
    unlc  Leaf, UJoin (edges by label pairs), Relabel
    cw    Leaf, Add, AddArcs (alpha_{a,b}), Rename (rho_{a->b})
    ucw   Leaf, Add, AddEdges (eta_{a,b}), Rename
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from util.digraph import Digraph, UndirectedGraph, iter_bits
from util.errors import InputError
from util.layout import Layout, minimize_layout

DEFAULT_EXPRESSION_LIMIT = 10

Pair = Tuple[int, int]
Pairs = FrozenSet[Pair]


def _pairs(items: Iterable[Sequence[int]]) -> Pairs:
    return frozenset((int(a), int(b)) for a, b in items)


def transpose(pairs: Iterable[Pair]) -> Pairs:
    return frozenset((b, a) for a, b in pairs)


@dataclass(frozen=True)
class Leaf:
    label: int
    vertex: Optional[int] = None


@dataclass(frozen=True)
class Join:
    """G x_(forward, backward) new vertex with the given label.

    forward holds (old label, new label) pairs creating arcs old -> new,
    backward holds (new label, old label) pairs creating arcs new -> old.
    """

    label: int
    forward: Pairs = field(default_factory=frozenset)
    backward: Pairs = field(default_factory=frozenset)
    vertex: Optional[int] = None


@dataclass(frozen=True)
class UJoin:
    label: int
    pairs: Pairs = field(default_factory=frozenset)
    vertex: Optional[int] = None


@dataclass(frozen=True)
class Relabel:
    # mapping[i - 1] is the new label of label i
    mapping: Tuple[int, ...]


@dataclass(frozen=True)
class Add:
    label: int
    vertex: Optional[int] = None


@dataclass(frozen=True)
class AddArcs:
    source: int
    target: int


@dataclass(frozen=True)
class AddEdges:
    a: int
    b: int


@dataclass(frozen=True)
class Rename:
    source: int
    target: int


Op = Union[Leaf, Join, UJoin, Relabel, Add, AddArcs, AddEdges, Rename]

GRAMMAR_OPS = {
    "nlc": (Leaf, Join, Relabel),
    "unlc": (Leaf, UJoin, Relabel),
    "cw": (Leaf, Add, AddArcs, Rename),
    "ucw": (Leaf, Add, AddEdges, Rename),
}
CREATING = (Leaf, Join, UJoin, Add)


@dataclass(frozen=True)
class LabeledGraph:
    graph: Union[Digraph, UndirectedGraph]
    labels: Tuple[int, ...]


@dataclass(frozen=True)
class Expression:
    kind: str
    k: int
    ops: Tuple[Op, ...]

    @property
    def directed(self) -> bool:
        return self.kind in ("nlc", "cw")

    @property
    def vertex_count(self) -> int:
        return sum(1 for op in self.ops if isinstance(op, CREATING))

    def insertion_order(self) -> List[int]:
        given = [op.vertex for op in self.ops if isinstance(op, CREATING)]
        if all(v is None for v in given):
            return list(range(len(given)))
        if any(v is None for v in given) or sorted(given) != list(range(len(given))):
            raise InputError("vertex ids must be given for every created vertex and form 0..n-1")
        return given

    def layout(self) -> Layout:
        return Layout(self.insertion_order())

    def max_label(self) -> int:
        return max((_op_labels(op) for op in self.ops), default=0)

    def validate(self) -> None:
        if self.kind not in GRAMMAR_OPS:
            raise InputError(f"unknown expression kind {self.kind!r}")
        allowed = GRAMMAR_OPS[self.kind]
        if self.ops and self.k < 1:
            raise InputError("a non-empty expression needs k >= 1")
        for i, op in enumerate(self.ops):
            if not isinstance(op, allowed):
                raise InputError(f"op {i}: {type(op).__name__} is not part of the {self.kind} grammar")
            if isinstance(op, Leaf) != (i == 0):
                raise InputError(f"op {i}: an expression starts with exactly one leaf")
            if isinstance(op, Relabel) and len(op.mapping) != self.k:
                raise InputError(f"op {i}: relabel map must cover all {self.k} labels")
            if _op_labels(op) > self.k or _op_min_label(op) < 1:
                raise InputError(f"op {i}: label outside 1..{self.k}")
            if isinstance(op, (AddArcs, AddEdges)) and _ends(op)[0] == _ends(op)[1]:
                raise InputError(f"op {i}: arc insertion needs two different labels")
        self.insertion_order()


def _op_label_values(op: Op) -> List[int]:
    if isinstance(op, (Leaf, Add)):
        return [op.label]
    if isinstance(op, Join):
        return [op.label] + [x for p in op.forward | op.backward for x in p]
    if isinstance(op, UJoin):
        return [op.label] + [x for p in op.pairs for x in p]
    if isinstance(op, Relabel):
        return list(op.mapping)
    return list(_ends(op))


def _op_labels(op: Op) -> int:
    return max(_op_label_values(op), default=0)


def _op_min_label(op: Op) -> int:
    return min(_op_label_values(op), default=1)


def _ends(op: Op) -> Pair:
    if isinstance(op, AddArcs):
        return op.source, op.target
    if isinstance(op, AddEdges):
        return op.a, op.b
    return op.source, op.target


# ─── Evaluation ────────────────────────────────────────────────


def evaluate(expr: Expression) -> LabeledGraph:
    """Evaluate an expression of any of the four grammars."""
    expr.validate()
    order = expr.insertion_order()
    n = len(order)
    labels = [0] * n
    placed: List[int] = []
    arcs = set()
    created = iter(order)

    def with_label(lab: int) -> List[int]:
        return [u for u in placed if labels[u] == lab]

    for op in expr.ops:
        if isinstance(op, (Leaf, Add)):
            v = next(created)
        elif isinstance(op, Join):
            v = next(created)
            for u in placed:
                if (labels[u], op.label) in op.forward:
                    arcs.add((u, v))
                if (op.label, labels[u]) in op.backward:
                    arcs.add((v, u))
        elif isinstance(op, UJoin):
            v = next(created)
            for u in placed:
                if (labels[u], op.label) in op.pairs:
                    arcs.add((min(u, v), max(u, v)))
        elif isinstance(op, Relabel):
            for u in placed:
                labels[u] = op.mapping[labels[u] - 1]
            continue
        elif isinstance(op, AddArcs):
            for u in with_label(op.source):
                for w in with_label(op.target):
                    arcs.add((u, w))
            continue
        elif isinstance(op, AddEdges):
            for u in with_label(op.a):
                for w in with_label(op.b):
                    arcs.add((min(u, w), max(u, w)))
            continue
        else:
            for u in placed:
                if labels[u] == op.source:
                    labels[u] = op.target
            continue
        labels[v] = op.label
        placed.append(v)

    graph = Digraph(n, arcs) if expr.directed else UndirectedGraph(n, arcs)
    return LabeledGraph(graph, tuple(labels))


def eval_nlc(expr: Expression) -> LabeledGraph:
    if expr.kind != "nlc":
        raise InputError(f"expected an nlc expression, got {expr.kind}")
    return evaluate(expr)


def eval_cw(expr: Expression) -> LabeledGraph:
    if expr.kind != "cw":
        raise InputError(f"expected a cw expression, got {expr.kind}")
    return evaluate(expr)


# ─── Exact linear NLC-width and clique-width ───────────────────
#
# Both solvers run the subset DP over insertion orders. After each vertex
# the placed vertices are relabelled to the coarsest partition that keeps
# apart vertices with different neighbourhoods among the unplaced ones, so
# the label count while inserting v after the set P is the number of such
# classes of P plus one, unless v can reuse the label of a class.


class _DirectedView:
    def __init__(self, g: Digraph) -> None:
        self.n = g.n
        self.out = g.out_mask
        self.inn = g.in_mask

    def key(self, u: int, rest: int):
        return self.out[u] & rest, self.inn[u] & rest

    def to_new(self, u: int, v: int) -> bool:
        return bool(self.out[u] >> v & 1)

    def from_new(self, v: int, u: int) -> bool:
        return bool(self.out[v] >> u & 1)

    def can_share(self, v: int, c: int, others: Iterable[int]) -> bool:
        """Whether v may take the label of class c when arcs go in right after v.

        Arc insertions for v then also hit c, so every arc they add to c
        must already exist.
        """
        if (self.out[v] | self.inn[v]) & c:
            return False
        for a in others:
            rep = a & -a
            if self.inn[v] & rep and any(self.out[x] & c != c for x in iter_bits(a)):
                return False
            if self.out[v] & rep and any(self.out[y] & a != a for y in iter_bits(c)):
                return False
        return True


class _UndirectedView:
    def __init__(self, gu: UndirectedGraph) -> None:
        self.n = gu.n
        self.adj = gu.adj

    def key(self, u: int, rest: int):
        return self.adj[u] & rest

    def to_new(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def from_new(self, v: int, u: int) -> bool:
        return False

    def can_share(self, v: int, c: int, others: Iterable[int]) -> bool:
        if self.adj[v] & c:
            return False
        for a in others:
            if self.adj[v] & a and any(self.adj[x] & c != c for x in iter_bits(a)):
                return False
        return True


def _classes(view, placed: int, rest: int) -> List[int]:
    """Masks of the vertices of placed grouped by neighbourhood in rest, by first vertex."""
    groups: Dict[object, int] = {}
    for u in iter_bits(placed):
        key = view.key(u, rest)
        groups[key] = groups.get(key, 0) | 1 << u
    return list(groups.values())


def _step_cost(view, clique_width: bool) -> Callable[[int, int], int]:
    full = (1 << view.n) - 1
    cache: Dict[int, List[int]] = {}

    def step(prev: int, v: int) -> int:
        if not prev:
            return 1
        classes = cache.get(prev)
        if classes is None:
            classes = cache[prev] = _classes(view, prev, full ^ prev)
        after = full ^ prev ^ (1 << v)
        kv = view.key(v, after)
        for c in classes:
            if view.key((c & -c).bit_length() - 1, after) != kv:
                continue
            if not clique_width or view.can_share(v, c, [a for a in classes if a != c]):
                return len(classes)
        return len(classes) + 1

    return step


def _replay(view, order: Sequence[int], grammar: str, k: int) -> Expression:
    """Rebuild an expression with k labels along order using the coarsest labelling."""
    full = (1 << view.n) - 1
    clique_width = grammar in ("cw", "ucw")
    directed = grammar in ("nlc", "cw")
    ops: List[Op] = []
    label: Dict[int, int] = {}
    placed = 0

    for v in order:
        if not placed:
            ops.append(Leaf(1, v))
            label[v] = 1
            placed = 1 << v
            continue
        by_label: Dict[int, int] = {}
        for u in iter_bits(placed):
            by_label[label[u]] = by_label.get(label[u], 0) | 1 << u
        after = full ^ placed ^ (1 << v)
        kv = view.key(v, after)

        new = None
        for lab in sorted(by_label):
            c = by_label[lab]
            if view.key((c & -c).bit_length() - 1, after) != kv:
                continue
            others = [m for other, m in by_label.items() if other != lab]
            if not clique_width or view.can_share(v, c, others):
                new = lab
                break
        if new is None:
            new = next(lab for lab in range(1, len(by_label) + 2) if lab not in by_label)
        incoming = []
        outgoing = []
        for lab in sorted(by_label):
            rep = (by_label[lab] & -by_label[lab]).bit_length() - 1
            if view.to_new(rep, v):
                incoming.append(lab)
            if view.from_new(v, rep):
                outgoing.append(lab)

        if grammar == "nlc":
            ops.append(
                Join(
                    new,
                    frozenset((lab, new) for lab in incoming),
                    frozenset((new, lab) for lab in outgoing),
                    v,
                )
            )
        elif grammar == "unlc":
            ops.append(UJoin(new, frozenset((lab, new) for lab in incoming), v))
        else:
            ops.append(Add(new, v))
            for lab in incoming:
                if lab != new:
                    ops.append(AddArcs(lab, new) if directed else AddEdges(lab, new))
            for lab in outgoing:
                if lab != new:
                    ops.append(AddArcs(new, lab))

        label[v] = new
        placed |= 1 << v
        by_label[new] = by_label.get(new, 0) | 1 << v

        group_min: Dict[object, int] = {}
        for lab in sorted(by_label):
            key = view.key((by_label[lab] & -by_label[lab]).bit_length() - 1, after)
            group_min.setdefault(key, lab)
        target = {
            lab: group_min[view.key((m & -m).bit_length() - 1, after)]
            for lab, m in by_label.items()
        }
        if any(lab != t for lab, t in target.items()):
            if clique_width:
                ops.extend(Rename(lab, t) for lab, t in sorted(target.items()) if lab != t)
            else:
                ops.append(Relabel(tuple(target.get(lab, lab) for lab in range(1, k + 1))))
            for u in iter_bits(placed):
                label[u] = target[label[u]]

    return Expression(grammar, k, tuple(ops))


def _solve_expression(view, grammar: str, limit: Optional[int], logger) -> Tuple[int, Expression]:
    limit = DEFAULT_EXPRESSION_LIMIT if limit is None else limit
    value, order = minimize_layout(
        view.n,
        _step_cost(view, grammar in ("cw", "ucw")),
        bound=view.n + 1,
        limit=limit,
        logger=logger,
    )
    expr = _replay(view, order, grammar, value)
    if logger:
        logger.debug(f"{grammar}: width {value} along {order}")
    return value, expr


def exact_dlnlc(g: Digraph, limit: Optional[int] = None, logger=None) -> Tuple[int, Expression]:
    """Directed linear NLC-width with a witness expression that evaluates to g."""
    return _solve_expression(_DirectedView(g), "nlc", limit, logger)


def exact_dlcw(g: Digraph, limit: Optional[int] = None, logger=None) -> Tuple[int, Expression]:
    """Directed linear clique-width with a witness expression that evaluates to g."""
    return _solve_expression(_DirectedView(g), "cw", limit, logger)


def exact_lnlc(gu: UndirectedGraph, limit: Optional[int] = None, logger=None) -> Tuple[int, Expression]:
    return _solve_expression(_UndirectedView(gu), "unlc", limit, logger)


def exact_lcw(gu: UndirectedGraph, limit: Optional[int] = None, logger=None) -> Tuple[int, Expression]:
    return _solve_expression(_UndirectedView(gu), "ucw", limit, logger)


# ─── Converters ────────────────────────────────────────────────


def _require_kind(expr: Expression, kind: str) -> None:
    expr.validate()
    if expr.kind != kind:
        raise InputError(f"expected a {kind} expression, got {expr.kind}")


def _renames_for(mapping: Sequence[int], spare: int) -> List[Rename]:
    """Realise a total label map with single-label renames.

    A rename x -> y is safe once y itself no longer has to move. When every
    pending label points at a pending label, a cycle is opened by parking
    one of its labels on the spare label.
    """
    target = {x: y for x, y in enumerate(mapping, start=1) if x != y}
    ops: List[Rename] = []
    while target:
        ready = [x for x in sorted(target) if target[x] not in target]
        if ready:
            x = ready[0]
            ops.append(Rename(x, target.pop(x)))
            continue
        x = min(target)
        seen = set()
        while x not in seen:
            seen.add(x)
            x = target[x]
        ops.append(Rename(x, spare))
        target[spare] = target.pop(x)
    return ops


def nlc_to_cw(expr: Expression) -> Expression:
    """Directed linear NLC expression with k labels -> clique-width expression with k + 1 labels."""
    _require_kind(expr, "nlc")
    spare = expr.k + 1
    ops: List[Op] = []
    for op in expr.ops:
        if isinstance(op, Leaf):
            ops.append(op)
        elif isinstance(op, Join):
            ops.append(Add(spare, op.vertex))
            for x in sorted({x for x, b in op.forward if b == op.label}):
                ops.append(AddArcs(x, spare))
            for y in sorted({y for b, y in op.backward if b == op.label}):
                ops.append(AddArcs(spare, y))
            ops.append(Rename(spare, op.label))
        else:
            ops.extend(_renames_for(op.mapping, spare))
    return Expression("cw", spare, tuple(ops))


def cw_to_nlc(expr: Expression) -> Expression:
    """Directed linear clique-width expression -> NLC expression with the same labels.

    Each arc insertion is charged to the join of the later endpoint: a join
    creating a vertex labelled a gets (x, a) in forward whenever a later
    alpha_{b,c} sees old label x as b and a as c through the renames in
    between, and symmetrically for backward.
    """
    _require_kind(expr, "cw")
    k = expr.k
    ops: List[Op] = []
    for t, op in enumerate(expr.ops):
        if isinstance(op, Leaf):
            ops.append(op)
        elif isinstance(op, Add):
            a = op.label
            forward, backward = set(), set()
            current = list(range(k + 1))
            for later in expr.ops[t + 1 :]:
                if isinstance(later, Rename):
                    current = [later.target if lab == later.source else lab for lab in current]
                elif isinstance(later, AddArcs):
                    for x in range(1, k + 1):
                        if current[x] == later.source and current[a] == later.target:
                            forward.add((x, a))
                        if current[a] == later.source and current[x] == later.target:
                            backward.add((a, x))
            ops.append(Join(a, frozenset(forward), frozenset(backward), op.vertex))
        elif isinstance(op, Rename):
            ops.append(
                Relabel(tuple(op.target if lab == op.source else lab for lab in range(1, k + 1)))
            )
    return Expression("nlc", k, tuple(ops))


def drop_directions_nlc(expr: Expression) -> Expression:
    """Directed NLC expression -> undirected one evaluating to the underlying graph."""
    _require_kind(expr, "nlc")
    ops: List[Op] = []
    for op in expr.ops:
        if isinstance(op, Join):
            ops.append(UJoin(op.label, op.forward | transpose(op.backward), op.vertex))
        else:
            ops.append(op)
    return Expression("unlc", expr.k, tuple(ops))


def drop_directions_cw(expr: Expression) -> Expression:
    _require_kind(expr, "cw")
    ops = [AddEdges(op.source, op.target) if isinstance(op, AddArcs) else op for op in expr.ops]
    return Expression("ucw", expr.k, tuple(ops))


def biorient_nlc(expr: Expression) -> Expression:
    """Undirected NLC expression -> directed one evaluating to the complete biorientation."""
    _require_kind(expr, "unlc")
    ops: List[Op] = []
    for op in expr.ops:
        if isinstance(op, UJoin):
            ops.append(Join(op.label, op.pairs, transpose(op.pairs), op.vertex))
        else:
            ops.append(op)
    return Expression("nlc", expr.k, tuple(ops))


def biorient_cw(expr: Expression) -> Expression:
    _require_kind(expr, "ucw")
    ops: List[Op] = []
    for op in expr.ops:
        if isinstance(op, AddEdges):
            ops.append(AddArcs(op.a, op.b))
            ops.append(AddArcs(op.b, op.a))
        else:
            ops.append(op)
    return Expression("cw", expr.k, tuple(ops))
