import multiprocessing
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from util.digraph import (
    Digraph,
    UndirectedGraph,
    classify,
    complete_biorientation,
    contains_induced,
    converse,
    degree_profile,
    has_biclique_subgraph,
    is_dag,
    max_undirected_degree,
    underlying_undirected,
)
from util.enumeration import enumerate_digraphs, enumerate_graphs
from util.errors import InputError
from util.expressions import (
    Expression,
    biorient_cw,
    biorient_nlc,
    cw_to_nlc,
    drop_directions_cw,
    drop_directions_nlc,
    evaluate,
    exact_dlcw,
    exact_dlnlc,
    exact_lcw,
    exact_lnlc,
    nlc_to_cw,
)
from util.families import FamilyKind, FamilySpec, generate
from util.layout import BIORIENTATION_PAIRS, Layout, MeasureKind, measure_cost, solve_exact, undirected_measure
from util.pathdecomp import from_layout, validate, width
from util.rankdecomp import decomposition_width, layout_to_rank_decomposition
from util.threshold import (
    forbidden_threshold_subdigraphs,
    is_undirected_threshold,
    recognize_threshold,
    threshold_to_nlc1,
)
from util.utility import create_table, progress
from util.witness import SweepReport, Violation

DIRECTED_LAYOUT_MEASURES = (
    ("dpw", MeasureKind.DVSN_IN),
    ("dvsn_out", MeasureKind.DVSN_OUT),
    ("dcutw", MeasureKind.DCUTW_FWD),
    ("dcutw_bwd", MeasureKind.DCUTW_BWD),
    ("dnw", MeasureKind.DNW),
    ("dlrw", MeasureKind.DLRW),
)
UNDIRECTED_LAYOUT_MEASURES = (
    ("pw", MeasureKind.U_VSN),
    ("cutw", MeasureKind.U_CUTW),
    ("nw", MeasureKind.U_NW),
    ("lrw", MeasureKind.U_LRW),
)
SIX_MEASURES = ("dcutw", "dpw", "dlcw", "dlnlc", "dnw", "dlrw")
SEMICOMPLETE_CLASSES = ("tournament", "semicomplete", "complete")

PROPERTY_IDS = (
    "eq1-eq2",
    "eq3-eq4",
    "reverse-layout",
    "witness-expressions",
    "insertion-layout",
    "T3b-nlc-lower",
    "T3b-nlc-upper",
    "T3b-cw-lower",
    "T3b-cw-upper",
    "T3a-lower",
    "T3a-upper",
    "T3a-convert-nlc-cw",
    "T3a-convert-cw-nlc",
    "T3ac",
    "caterpillar",
    "L2",
    "pw-vs-decomposition",
    "pw-cutw",
    "cutw-pw2",
    "pw-nw",
    "Tpw-deg-nlc",
    "Tpw-deg-cw",
    "Tpw-deg-rw",
    "udw-1",
    "udw-2",
    "udw-3-lower",
    "udw-3-upper",
    "udw-4-lower",
    "udw-4-upper",
    "udw-5-lower",
    "udw-5-upper",
    "udw-6-lower",
    "udw-6-upper",
    "udw-convert-nlc",
    "udw-convert-cw",
    "small-pw0",
    "Tpw-nw2x",
    "Tpw-nw2x-directed",
    "cw-pw-semi",
    "semi-nlc",
    "semi-nw",
    "semi-rw",
    "concl-nw",
    "concl-lcw",
    "rank-gf2-gf4",
    "converse",
    "threshold-nlc1",
    "threshold-oriented",
    "threshold-roundtrip",
    "threshold-underlying",
    "threshold-forbidden",
    "threshold-dlcw2",
    "threshold-dpw",
)

# extremal witness id -> the equality it certifies when its slack is 0
TIGHTNESS = {
    "T3b-nlc-upper": "dlnlc = dnw + 1",
    "T3a-upper": "dlcw = dlnlc + 1",
}


class PropertyResult(NamedTuple):
    id: str
    ok: bool
    detail: str
    values: Dict[str, int]
    slack: Optional[int] = None


@dataclass(frozen=True)
class WidthProfile:
    """Exact values of every directed and undirected measure of one digraph, with witnesses."""

    values: Dict[str, int]
    layouts: Dict[str, Layout]
    expressions: Dict[str, Expression]

    def __getitem__(self, key: str) -> int:
        return self.values[key]


def width_profile(
    g: Digraph, dp_limit: Optional[int] = None, expression_limit: Optional[int] = None, logger=None
) -> WidthProfile:
    if g.n == 0:
        raise InputError("width profiles need at least one vertex")
    gu = underlying_undirected(g)
    values: Dict[str, int] = {}
    layouts: Dict[str, Layout] = {}
    expressions: Dict[str, Expression] = {}
    for name, kind in DIRECTED_LAYOUT_MEASURES:
        values[name], layouts[name] = solve_exact(g, kind, limit=dp_limit, logger=logger)
    for name, kind in UNDIRECTED_LAYOUT_MEASURES:
        values[name], layouts[name] = undirected_measure(gu, kind, limit=dp_limit, logger=logger)
    for name, solver, target in (
        ("dlnlc", exact_dlnlc, g),
        ("dlcw", exact_dlcw, g),
        ("lnlc", exact_lnlc, gu),
        ("lcw", exact_lcw, gu),
    ):
        values[name], expressions[name] = solver(target, limit=expression_limit, logger=logger)
    degrees = degree_profile(g)
    values["delta"] = max_undirected_degree(gu)
    values["dmin"] = min(degrees.max_out, degrees.max_in)
    return WidthProfile(values, layouts, expressions)


def directed_values(
    g: Digraph, dp_limit: Optional[int] = None, expression_limit: Optional[int] = None
) -> Dict[str, int]:
    """The six directed parameters only, keyed as in SIX_MEASURES."""
    values = {
        "dpw": solve_exact(g, MeasureKind.DVSN_IN, limit=dp_limit).value,
        "dcutw": solve_exact(g, MeasureKind.DCUTW_FWD, limit=dp_limit).value,
        "dnw": solve_exact(g, MeasureKind.DNW, limit=dp_limit).value,
        "dlrw": solve_exact(g, MeasureKind.DLRW, limit=dp_limit).value,
    }
    values["dlnlc"] = exact_dlnlc(g, limit=expression_limit)[0]
    values["dlcw"] = exact_dlcw(g, limit=expression_limit)[0]
    return values


# ─── Per-digraph properties ────────────────────────────────────


def _at_most(pid: str, lhs_name: str, lhs: int, rhs_name: str, rhs: int) -> PropertyResult:
    return PropertyResult(
        pid, lhs <= rhs, f"{lhs_name} = {lhs} <= {rhs_name} = {rhs}", {lhs_name: lhs, rhs_name: rhs}, rhs - lhs
    )


def _equal(pid: str, lhs_name: str, lhs: int, rhs_name: str, rhs: int) -> PropertyResult:
    return PropertyResult(pid, lhs == rhs, f"{lhs_name} = {lhs}, {rhs_name} = {rhs}", {lhs_name: lhs, rhs_name: rhs})


def _holds(pid: str, ok: bool, detail: str, values: Optional[Dict[str, int]] = None) -> PropertyResult:
    return PropertyResult(pid, bool(ok), detail, values or {})


def _builds(expr: Expression, target) -> bool:
    return evaluate(expr).graph == target


def _layout_checks(g: Digraph, p: WidthProfile) -> List[PropertyResult]:
    v = p.values
    phi = p.layouts["dcutw"]
    backward = measure_cost(g, MeasureKind.DCUTW_BWD, phi)
    reversed_forward = measure_cost(g, MeasureKind.DCUTW_FWD, phi.reverse())

    dec = from_layout(g, p.layouts["dpw"])
    report = validate(g, dec)
    cat_width = decomposition_width(g, layout_to_rank_decomposition(g, p.layouts["dnw"]))
    return [
        _equal("eq1-eq2", "dvsn_in", v["dpw"], "dvsn_out", v["dvsn_out"]),
        _equal("eq3-eq4", "dcutw_fwd", v["dcutw"], "dcutw_bwd", v["dcutw_bwd"]),
        _equal("reverse-layout", "bwd(phi)", backward, "fwd(reverse phi)", reversed_forward),
        _holds(
            "pw-vs-decomposition",
            report.ok and width(dec) == v["dpw"],
            f"decomposition of width {width(dec)} from a dvsn-optimal layout; {report.detail or 'valid'}",
            {"width": width(dec), "dpw": v["dpw"]},
        ),
        _holds(
            "caterpillar",
            v["dlrw"] <= cat_width <= v["dnw"],
            f"caterpillar along a dnw-optimal layout has width {cat_width}",
            {"dlrw": v["dlrw"], "caterpillar": cat_width, "dnw": v["dnw"]},
        ),
    ]


def _expression_checks(g: Digraph, gu: UndirectedGraph, p: WidthProfile) -> List[PropertyResult]:
    v = p.values
    nlc, cw = p.expressions["dlnlc"], p.expressions["dlcw"]
    witnesses_ok = (
        _builds(nlc, g)
        and _builds(cw, g)
        and _builds(p.expressions["lnlc"], gu)
        and _builds(p.expressions["lcw"], gu)
    )
    layout_costs = {
        "nlc": measure_cost(g, MeasureKind.DNW, nlc.layout()),
        "cw": measure_cost(g, MeasureKind.DNW, cw.layout()),
    }
    as_cw, as_nlc = nlc_to_cw(nlc), cw_to_nlc(cw)
    undirected_nlc, undirected_cw = drop_directions_nlc(nlc), drop_directions_cw(cw)
    return [
        _holds("witness-expressions", witnesses_ok, "every witness expression evaluates to its graph"),
        _holds(
            "insertion-layout",
            layout_costs["nlc"] <= nlc.k and layout_costs["cw"] <= cw.k,
            f"dnw along insertion orders: {layout_costs}",
            {"nlc-layout": layout_costs["nlc"], "cw-layout": layout_costs["cw"]},
        ),
        _holds(
            "T3a-convert-nlc-cw",
            _builds(as_cw, g) and as_cw.k <= v["dlnlc"] + 1,
            f"nlc with {nlc.k} labels -> cw with {as_cw.k} labels",
            {"nlc": nlc.k, "cw": as_cw.k},
        ),
        _holds(
            "T3a-convert-cw-nlc",
            _builds(as_nlc, g) and as_nlc.k <= v["dlcw"],
            f"cw with {cw.k} labels -> nlc with {as_nlc.k} labels",
            {"cw": cw.k, "nlc": as_nlc.k},
        ),
        _holds(
            "udw-convert-nlc",
            _builds(undirected_nlc, gu) and undirected_nlc.k == nlc.k,
            "dropping directions of the nlc witness builds the underlying graph",
        ),
        _holds(
            "udw-convert-cw",
            _builds(undirected_cw, gu) and undirected_cw.k == cw.k,
            "dropping directions of the cw witness builds the underlying graph",
        ),
    ]


def _threshold_checks(g: Digraph, gu: UndirectedGraph, v: Dict[str, int]) -> List[PropertyResult]:
    result = recognize_threshold(g)
    oriented = recognize_threshold(g, oriented=True).is_threshold
    symmetric_pair = any(g.out_mask[u] & g.in_mask[u] for u in range(g.n))
    checks = [
        _holds(
            "threshold-nlc1",
            result.is_threshold == (v["dlnlc"] == 1),
            f"threshold {result.is_threshold}, dlnlc {v['dlnlc']}",
            {"dlnlc": v["dlnlc"]},
        ),
        _holds(
            "threshold-oriented",
            oriented == (result.is_threshold and not symmetric_pair),
            f"oriented threshold {oriented}, threshold {result.is_threshold}, 2-cycle {symmetric_pair}",
        ),
    ]
    if not result.is_threshold:
        return checks
    found = [name for name, h in forbidden_threshold_subdigraphs().items() if contains_induced(g, h)]
    checks += [
        _holds(
            "threshold-roundtrip",
            _builds(threshold_to_nlc1(result.sequence), g),
            "the one-label expression of the build sequence evaluates to the digraph",
        ),
        _holds("threshold-underlying", is_undirected_threshold(gu), "underlying graph is a threshold graph"),
        _holds("threshold-forbidden", not found, f"forbidden induced subdigraphs found: {found}"),
        _at_most("threshold-dlcw2", "dlcw", v["dlcw"], "2", 2),
        _at_most("threshold-dpw", "dpw", v["dpw"], "dmin", v["dmin"]),
    ]
    return checks


def _converse_check(g: Digraph, v: Dict[str, int], dp_limit, expression_limit) -> PropertyResult:
    flipped = directed_values(converse(g), dp_limit, expression_limit)
    differing = {k: flipped[k] for k in SIX_MEASURES if flipped[k] != v[k]}
    return _holds("converse", not differing, f"converse differs on {sorted(differing)}", differing)


def check_all_properties(
    g: Digraph,
    profile: Optional[WidthProfile] = None,
    dp_limit: Optional[int] = None,
    expression_limit: Optional[int] = None,
    logger=None,
) -> List[PropertyResult]:
    """Evaluate every per-digraph inequality and equality on exact values.

    Failures are reported in the returned results; nothing is raised for a
    violated property. Properties about semicomplete digraphs, digraphs whose
    underlying graph has no 4-cycle subgraph, symmetric digraphs and
    threshold digraphs are only evaluated when their condition holds.

    Args:
        g (Digraph): Digraph with at least one vertex.
        profile (Optional[WidthProfile]): Precomputed values of g.
        dp_limit (Optional[int]): Vertex limit of the layout DP.
        expression_limit (Optional[int]): Vertex limit of the expression DP.
        logger (Optional[Any]): Logger for solver statistics.

    Returns:
        List[PropertyResult]: One result per evaluated property id.
    """
    if g.n == 0:
        return []
    p = profile or width_profile(g, dp_limit, expression_limit, logger)
    v = p.values
    gu = underlying_undirected(g)
    d1 = max(v["delta"], 1)
    dmin = v["dmin"]
    rank_bound = 4 ** (v["dlrw"] + 1) - 1

    results = _layout_checks(g, p) + _expression_checks(g, gu, p)
    results += [
        _at_most("T3b-nlc-lower", "dnw", v["dnw"], "dlnlc", v["dlnlc"]),
        _at_most("T3b-nlc-upper", "dlnlc", v["dlnlc"], "dnw+1", v["dnw"] + 1),
        _at_most("T3b-cw-lower", "dnw", v["dnw"], "dlcw", v["dlcw"]),
        _at_most("T3b-cw-upper", "dlcw", v["dlcw"], "dnw+1", v["dnw"] + 1),
        _at_most("T3a-lower", "dlnlc", v["dlnlc"], "dlcw", v["dlcw"]),
        _at_most("T3a-upper", "dlcw", v["dlcw"], "dlnlc+1", v["dlnlc"] + 1),
        _at_most("T3ac", "dlrw", v["dlrw"], "dnw", v["dnw"]),
        _at_most("L2", "dlcw", v["dlcw"], "4^(dlrw+1)-1", rank_bound),
        _at_most("pw-cutw", "dpw", v["dpw"], "dcutw", v["dcutw"]),
        _at_most("cutw-pw2", "dcutw", v["dcutw"], "dmin*dpw", dmin * v["dpw"]),
        _at_most("pw-nw", "dpw", v["dpw"], "dmin*dnw", dmin * v["dnw"]),
        _at_most("Tpw-deg-nlc", "dpw", v["dpw"], "dmin*dlnlc", dmin * v["dlnlc"]),
        _at_most("Tpw-deg-cw", "dpw", v["dpw"], "dmin*dlcw", dmin * v["dlcw"]),
        _at_most("Tpw-deg-rw", "dpw", v["dpw"], "dmin*(4^(dlrw+1)-1)", dmin * rank_bound),
        _at_most("udw-1", "dpw", v["dpw"], "pw", v["pw"]),
        _at_most("udw-2", "dcutw", v["dcutw"], "cutw", v["cutw"]),
        _at_most("udw-3-lower", "nw", v["nw"], "dnw", v["dnw"]),
        _at_most("udw-3-upper", "dnw", v["dnw"], "delta*nw", d1 * v["nw"]),
        _at_most("udw-4-lower", "lnlc", v["lnlc"], "dlnlc", v["dlnlc"]),
        _at_most("udw-4-upper", "dlnlc", v["dlnlc"], "delta*lnlc+1", d1 * v["lnlc"] + 1),
        _at_most("udw-5-lower", "lcw", v["lcw"], "dlcw", v["dlcw"]),
        _at_most("udw-5-upper", "dlcw", v["dlcw"], "delta*lcw+1", d1 * v["lcw"] + 1),
        _at_most("udw-6-lower", "lrw", v["lrw"], "dlrw", v["dlrw"]),
        _at_most("udw-6-upper", "dlrw", v["dlrw"], "delta*2^(lrw+1)-1", d1 * 2 ** (v["lrw"] + 1) - 1),
        _at_most("concl-nw", "dnw", v["dnw"], "pw+1", v["pw"] + 1),
        _at_most("concl-lcw", "dlcw", v["dlcw"], "pw+2", v["pw"] + 2),
    ]

    dag = is_dag(g)
    results.append(
        _holds(
            "small-pw0",
            dag == (v["dpw"] == 0) == (v["dcutw"] == 0),
            f"dag {dag}, dpw {v['dpw']}, dcutw {v['dcutw']}",
            {"dpw": v["dpw"], "dcutw": v["dcutw"]},
        )
    )

    if not has_biclique_subgraph(gu, 2):
        results.append(_at_most("Tpw-nw2x", "pw", v["pw"], "2*lnlc", 2 * v["lnlc"]))
        results.append(_at_most("Tpw-nw2x-directed", "dpw", v["dpw"], "2*dlnlc", 2 * v["dlnlc"]))

    if classify(g) in SEMICOMPLETE_CLASSES:
        results += [
            _at_most("cw-pw-semi", "dlcw", v["dlcw"], "dpw+2", v["dpw"] + 2),
            _at_most("semi-nlc", "dlnlc", v["dlnlc"], "dpw+2", v["dpw"] + 2),
            _at_most("semi-nw", "dnw", v["dnw"], "dpw+2", v["dpw"] + 2),
            _at_most("semi-rw", "dlrw", v["dlrw"], "dpw+2", v["dpw"] + 2),
        ]

    if g == complete_biorientation(gu):
        results.append(_equal("rank-gf2-gf4", "dlrw", v["dlrw"], "lrw", v["lrw"]))

    results.append(_converse_check(g, v, dp_limit, expression_limit))
    results += _threshold_checks(g, gu, v)
    return results


# ─── Exhaustive sweep ──────────────────────────────────────────


def _matches(pid: str, selected: Sequence[str]) -> bool:
    return not selected or any(pid == s or pid.startswith(s + "-") for s in selected)


def validate_selection(selected: Iterable[str]) -> Tuple[str, ...]:
    """Reject property names that select nothing; a name also selects its `name-*` ids."""
    selected = tuple(s for s in selected if s)
    unknown = [s for s in selected if not any(_matches(pid, (s,)) for pid in PROPERTY_IDS)]
    if unknown:
        raise InputError(f"unknown property ids {unknown}")
    return selected


def _check_instance(job) -> Tuple[Digraph, List[PropertyResult], float]:
    g, selected, dp_limit, expression_limit = job
    profile = width_profile(g, dp_limit, expression_limit)
    results = [
        r for r in check_all_properties(g, profile, dp_limit, expression_limit) if _matches(r.id, selected)
    ]
    return g, results, profile["dlcw"] / 4 ** (profile["dlrw"] + 1)


def _violation(pid: str, g: Digraph, values: Dict[str, int], detail: str) -> Violation:
    return Violation(property=pid, n=g.n, arcs=g.arcs, values=values, detail=detail)


@dataclass
class _Tally:
    checked: int = 0
    violations: List[Violation] = field(default_factory=list)
    extremal: Dict[str, Tuple[tuple, Violation]] = field(default_factory=dict)
    counts: Dict[str, List[int]] = field(default_factory=dict)
    max_ratio: float = 0.0

    def add(self, g: Digraph, results: List[PropertyResult], ratio: float) -> None:
        self.checked += 1
        self.max_ratio = max(self.max_ratio, ratio)
        for r in results:
            count = self.counts.setdefault(r.id, [0, 0])
            count[0] += 1
            if not r.ok:
                count[1] += 1
                self.violations.append(_violation(r.id, g, r.values, r.detail))
            if r.slack is None:
                continue
            key = (r.slack, g.n, g.arcs)
            best = self.extremal.get(r.id)
            if best is None or key < best[0]:
                self.extremal[r.id] = (key, _violation(r.id, g, r.values, f"slack {r.slack}"))

    def report(self, n: int) -> SweepReport:
        violations = sorted(self.violations, key=lambda x: (x.property, x.n, x.arcs))
        return SweepReport(
            n=n,
            instances_checked=self.checked,
            violations=violations,
            extremal_witnesses={pid: self.extremal[pid][1] for pid in sorted(self.extremal)},
            max_lcw_rank_ratio=round(self.max_ratio, 6),
        )

    def summary(self) -> str:
        rows = []
        for pid in sorted(self.counts):
            checked, failed = self.counts[pid]
            best = self.extremal.get(pid)
            rows.append([pid, checked, failed, best[0][0] if best else "-"])
        return create_table(["Property", "Checked", "Failed", "Min slack"], rows, left=["Property"])


def tightness_notes(report: SweepReport) -> List[str]:
    notes = []
    for pid, equality in TIGHTNESS.items():
        witness = report.extremal_witnesses.get(pid)
        if witness is not None and witness.detail == "slack 0":
            notes.append(f"{equality} attained on n={witness.n} arcs={witness.arcs}")
        elif witness is not None:
            notes.append(f"{equality} not attained up to n={report.n}")
    return notes


def run_sweep(
    n: int,
    up_to_iso: bool = False,
    properties: Sequence[str] = (),
    workers: int = 1,
    dp_limit: Optional[int] = None,
    expression_limit: Optional[int] = None,
    show_progress: bool = False,
    logger=None,
) -> SweepReport:
    """Check every property on all digraphs with 1..n vertices.

    Instances are spread over a process pool when workers > 1; results come
    back in enumeration order and violations are sorted, so the report does
    not depend on the worker count.
    """
    selected = validate_selection(properties)
    instances = [g for size in range(1, n + 1) for g in enumerate_digraphs(size, up_to_iso)]
    jobs = [(g, selected, dp_limit, expression_limit) for g in instances]
    if logger:
        logger.info(f"Sweeping {len(jobs)} digraphs on at most {n} vertices with {workers} worker(s)")
    tally = _Tally()
    if workers > 1:
        with multiprocessing.Pool(workers) as pool:
            outcomes = pool.imap(_check_instance, jobs, chunksize=64)
            for outcome in progress(outcomes, desc="sweep", total=len(jobs), unit="digraph", enabled=show_progress):
                tally.add(*outcome)
    else:
        for job in progress(jobs, desc="sweep", total=len(jobs), unit="digraph", enabled=show_progress):
            tally.add(*_check_instance(job))
    report = tally.report(n)
    report.notes.extend(tightness_notes(report))
    if logger:
        logger.info("\n" + tally.summary())
        logger.info(f"{report.instances_checked} digraphs checked, {len(report.violations)} violation(s)")
    return report


# ─── Family table ──────────────────────────────────────────────


@dataclass
class _FamilyRows:
    rows: List[Tuple[str, int, Dict[str, int]]] = field(default_factory=list)
    violations: List[Violation] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def expect(self, column: str, g: Digraph, size: int, values: Dict[str, int], expected: Dict[str, int]) -> None:
        self.rows.append((column, size, values))
        for name, want in expected.items():
            if values[name] != want:
                self.violations.append(
                    _violation(
                        f"table1-{column}", g, {name: values[name], "expected": want}, f"{column} n={size}: {name}"
                    )
                )

    def grows(self, column: str, name: str, series: List[Tuple[int, int, Digraph]]) -> None:
        """Strict growth of a value over consecutive family members."""
        for (n1, a, _), (n2, b, g) in zip(series, series[1:]):
            if b <= a:
                self.violations.append(
                    _violation(
                        f"table1-{column}-growth", g, {f"{name}@{n1}": a, f"{name}@{n2}": b}, f"{name} does not grow"
                    )
                )

    def summary(self) -> str:
        rows = [[column, size, *(values.get(m, "-") for m in SIX_MEASURES)] for column, size, values in self.rows]
        return create_table(["Family", "n", *SIX_MEASURES], rows, left=["Family"])


def check_table1(
    max_n: int,
    orientation_max_n: int = 6,
    dp_limit: Optional[int] = None,
    expression_limit: Optional[int] = None,
    logger=None,
) -> SweepReport:
    """Check the family values of the six directed parameters.

    Finite cells are compared exactly; unbounded cells are checked as strict
    growth over three family members. The DAG column uses the path powers
    of sizes k(k+1)+2 for k = 0, 1, 2, oriented paths are searched over all
    orientation vectors up to orientation_max_n vertices and bioriented stars
    use 2, 4 and 6 leaves.
    """
    rows = _FamilyRows()
    solve = lambda g: directed_values(g, dp_limit, expression_limit)

    tt, cb = [], []
    for n in range(2, max_n + 1):
        g = generate(FamilySpec(FamilyKind.TRANSITIVE_TOURNAMENT, n))
        values = solve(g)
        values["pw"] = undirected_measure(underlying_undirected(g), MeasureKind.U_VSN, limit=dp_limit).value
        rows.expect("TT", g, n, values, {"dcutw": 0, "dpw": 0, "dlcw": 2, "dlnlc": 1, "dnw": 1, "dlrw": 1, "pw": n - 1})
        tt.append((n, values["pw"] - values["dpw"], g))

        g = generate(FamilySpec(FamilyKind.BIDIRECTIONAL_COMPLETE, n))
        values = solve(g)
        expected = {"dpw": n - 1, "dcutw": (n // 2) * ((n + 1) // 2), "dlcw": 2, "dlnlc": 1, "dnw": 1, "dlrw": 1}
        rows.expect("CB", g, n, values, expected)
        cb.append((n, values, g))
    rows.grows("TT", "pw-dpw", tt)
    rows.grows("CB", "dpw", [(n, v["dpw"], g) for n, v, g in cb])
    rows.grows("CB", "dcutw", [(n, v["dcutw"], g) for n, v, g in cb])
    rows.grows("CB", "dpw-dlcw", [(n, v["dpw"] - v["dlcw"], g) for n, v, g in cb])

    bs = []
    for leaves in (2, 4, 6):
        g = generate(FamilySpec(FamilyKind.BIORIENTED_STAR, leaves))
        values = solve(g)
        expected = {"dpw": 1, "dcutw": (leaves + 1) // 2, "dlcw": 2, "dlnlc": 1, "dnw": 1, "dlrw": 1}
        rows.expect("BS", g, leaves, values, expected)
        bs.append((leaves, values, g))
    rows.grows("BS", "dcutw", [(n, v["dcutw"], g) for n, v, g in bs])
    rows.grows("BS", "dcutw-dpw", [(n, v["dcutw"] - v["dpw"], g) for n, v, g in bs])

    dag = []
    for k in (0, 1, 2):
        n = k * (k + 1) + 2
        g = generate(FamilySpec(FamilyKind.PATH_POWER, n, k=k))
        values = solve(g)
        expected = {"dcutw": 0, "dpw": 0}
        if k:
            expected.update(dnw=k + 1, dlcw=k + 2)
        rows.expect("DAG", g, n, values, expected)
        dag.append((n, values, g))
    for name in ("dlcw", "dnw"):
        rows.grows("DAG", name, [(n, v[name], g) for n, v, g in dag])

    _check_oriented_paths(rows, orientation_max_n, solve)

    if logger:
        logger.info("\n" + rows.summary())
    checked = len(rows.rows)
    return SweepReport(
        n=max_n,
        instances_checked=checked,
        violations=sorted(rows.violations, key=lambda x: (x.property, x.n, x.arcs)),
        notes=rows.notes,
    )


OP_CLASS_VALUES = {"dcutw": 0, "dpw": 0, "dlcw": 3, "dlnlc": 3, "dnw": 2, "dlrw": 2}


def _check_oriented_paths(rows: _FamilyRows, max_n: int, solve) -> None:
    """All orientations are DAGs; the class maxima are compared with the table."""
    best: Dict[str, Tuple[int, Optional[Digraph]]] = {m: (-1, None) for m in SIX_MEASURES}
    for n in range(2, max_n + 1):
        for bits in range(1 << (n - 1)):
            g = generate(FamilySpec(FamilyKind.ORIENTED_PATH, n, bits=bits))
            values = solve(g)
            for name in ("dcutw", "dpw"):
                if values[name] != 0:
                    rows.violations.append(_violation("table1-OP", g, {name: values[name]}, f"{name} of an oriented path"))
            for name in SIX_MEASURES:
                if values[name] > best[name][0]:
                    best[name] = (values[name], g)
    maxima = {name: value for name, (value, _) in best.items()}
    rows.rows.append((f"OP<= {max_n}", max_n, maxima))
    for name in ("dlcw", "dlnlc", "dnw", "dlrw"):
        value, g = best[name]
        want = OP_CLASS_VALUES[name]
        if value > want:
            rows.violations.append(_violation("table1-OP", g, {name: value, "expected": want}, f"{name} exceeds the class value"))
        elif value < want:
            note = f"OP {name} = {want} not attained by oriented paths on at most {max_n} vertices (maximum {value})"
            if name == "dlrw" or max_n < 5:
                rows.notes.append(note)
            else:
                rows.violations.append(_violation("table1-OP", g, {name: value, "expected": want}, note))


# ─── Biorientation equalities ──────────────────────────────────


_BIO_NAMES = {
    MeasureKind.U_VSN: "bio-pw",
    MeasureKind.U_CUTW: "bio-cutw",
    MeasureKind.U_NW: "bio-nw",
    MeasureKind.U_LRW: "bio-lrw",
}


def _bio_violation(pid: str, gu: UndirectedGraph, values: Dict[str, int], detail: str) -> Violation:
    return Violation(property=pid, n=gu.n, arcs=gu.edges, values=values, detail=detail)


def check_biorientation_equalities(
    max_n: int, dp_limit: Optional[int] = None, expression_limit: Optional[int] = None, logger=None
) -> SweepReport:
    """Compare each undirected measure of G with its directed version on the complete biorientation.

    Runs over one graph per isomorphism class with 1..max_n vertices and also
    checks that the biorientation converters turn undirected witnesses into
    directed ones with the same label count.
    """
    violations: List[Violation] = []
    checked = 0
    for n in range(1, max_n + 1):
        for gu in enumerate_graphs(n, up_to_iso=True):
            checked += 1
            bio = complete_biorientation(gu)
            for u_kind, d_kind in BIORIENTATION_PAIRS.items():
                a = undirected_measure(gu, u_kind, limit=dp_limit).value
                b = solve_exact(bio, d_kind, limit=dp_limit).value
                if a != b:
                    violations.append(_bio_violation(_BIO_NAMES[u_kind], gu, {"undirected": a, "directed": b}, ""))
            for name, u_solver, d_solver, convert in (
                ("lnlc", exact_lnlc, exact_dlnlc, biorient_nlc),
                ("lcw", exact_lcw, exact_dlcw, biorient_cw),
            ):
                a, expr = u_solver(gu, limit=expression_limit)
                b, _ = d_solver(bio, limit=expression_limit)
                if a != b:
                    violations.append(_bio_violation(f"bio-{name}", gu, {"undirected": a, "directed": b}, ""))
                converted = convert(expr)
                if not _builds(converted, bio) or converted.k != expr.k:
                    violations.append(
                        _bio_violation(f"bio-convert-{name}", gu, {"k": expr.k}, "biorientation of the witness")
                    )
    if logger:
        logger.info(f"{checked} undirected graphs checked, {len(violations)} violation(s)")
    return SweepReport(
        n=max_n,
        instances_checked=checked,
        violations=sorted(violations, key=lambda x: (x.property, x.n, x.arcs)),
    )


def merge_reports(reports: Sequence[SweepReport]) -> SweepReport:
    """Combine reports of separate runs into one; n is the largest size among them."""
    merged = SweepReport(n=max(r.n for r in reports), instances_checked=0)
    ratios = [r.max_lcw_rank_ratio for r in reports if r.max_lcw_rank_ratio is not None]
    for r in reports:
        merged.instances_checked += r.instances_checked
        merged.violations.extend(r.violations)
        merged.notes.extend(r.notes)
        merged.extremal_witnesses.update(r.extremal_witnesses)
    merged.violations.sort(key=lambda x: (x.property, x.n, x.arcs))
    merged.max_lcw_rank_ratio = max(ratios) if ratios else None
    return merged
