from typing import List, Optional, Tuple, Union

from util.digraph import Digraph, UndirectedGraph
from util.errors import InputError

Graph = Union[Digraph, UndirectedGraph]


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _parse_count(token: str, what: str, line_no: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise InputError(f"{what} must be an integer, got {token!r}", line=line_no)
    if value < 0:
        raise InputError(f"{what} must be non-negative, got {value}", line=line_no)
    return value


def parse_graph(text: str) -> Graph:
    """Parse the `n m` digraph format or the `u n m` undirected format.

    Vertex tokens that are all integers in [0, n) are used as ids directly;
    otherwise every distinct token gets the next free id in order of first
    appearance and the token is kept as the vertex label.

    Args:
        text (str): File contents.

    Returns:
        Digraph or UndirectedGraph: Parsed graph.
    """
    header: Optional[Tuple[bool, int, int, int]] = None
    pairs: List[Tuple[str, str, int]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        tokens = line.split()
        if header is None:
            undirected = tokens[0] == "u"
            if undirected:
                tokens = tokens[1:]
            if len(tokens) != 2:
                raise InputError("header must be `n m` or `u n m`", line=line_no)
            n = _parse_count(tokens[0], "vertex count", line_no)
            m = _parse_count(tokens[1], "arc count", line_no)
            header = (undirected, n, m, line_no)
            continue
        if len(tokens) != 2:
            raise InputError(f"expected two vertex tokens, got {len(tokens)}", line=line_no)
        pairs.append((tokens[0], tokens[1], line_no))

    if header is None:
        raise InputError("empty graph file: missing `n m` header")
    undirected, n, m, header_line = header
    if len(pairs) != m:
        raise InputError(f"header announces {m} arcs but {len(pairs)} follow", line=header_line)

    def numeric(token: str) -> bool:
        return token.isascii() and token.isdigit() and int(token) < n

    labels: Optional[List[str]] = None
    if all(numeric(a) and numeric(b) for a, b, _ in pairs):
        resolved = [(int(a), int(b), line_no) for a, b, line_no in pairs]
    else:
        index = {}
        resolved = []
        for a, b, line_no in pairs:
            for token in (a, b):
                if token not in index:
                    if len(index) == n:
                        raise InputError(f"more than {n} distinct vertices", line=line_no)
                    index[token] = len(index)
            resolved.append((index[a], index[b], line_no))
        labels = list(index) + [str(i) for i in range(len(index), n)]

    seen = set()
    for u, v, line_no in resolved:
        if u == v:
            raise InputError(f"loop at vertex {_label_of(labels, u)}", line=line_no)
        key = (min(u, v), max(u, v)) if undirected else (u, v)
        if key in seen:
            raise InputError(f"duplicate arc {_label_of(labels, u)} {_label_of(labels, v)}", line=line_no)
        seen.add(key)

    arcs = [(u, v) for u, v, _ in resolved]
    if undirected:
        return UndirectedGraph(n, arcs)
    return Digraph(n, arcs, labels=labels)


def _label_of(labels: Optional[List[str]], v: int) -> str:
    return labels[v] if labels is not None else str(v)


def read_graph(path: str) -> Graph:
    try:
        with open(path, "rb") as f:
            data = f.read()
    except OSError as e:
        raise InputError(f"cannot read graph file {path}: {e}")
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise InputError(f"graph file {path} is not valid UTF-8", line=data[: e.start].count(b"\n") + 1)
    return parse_graph(text)


def format_graph(g: Graph) -> str:
    if isinstance(g, UndirectedGraph):
        edges = g.edges
        lines = [f"u {g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    else:
        arcs = g.arcs
        lines = [f"{g.n} {len(arcs)}"] + [f"{g.label(u)} {g.label(v)}" for u, v in arcs]
    return "\n".join(lines) + "\n"
