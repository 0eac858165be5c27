import json
from typing import Dict, List, Literal, Optional, Tuple, Type, TypeVar, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError
from typing_extensions import Annotated

from util.errors import InputError
from util.expressions import (
    Add,
    AddArcs,
    AddEdges,
    Expression,
    Join,
    Leaf,
    Op,
    Relabel,
    Rename,
    UJoin,
)
from util.threshold import StepKind, ThresholdBuildSequence

SCHEMA = "diwidth/1"

M = TypeVar("M", bound=BaseModel)


class Document(BaseModel):
    """Base of every JSON document; carries the versioned schema tag."""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    schema_tag: Literal["diwidth/1"] = Field(SCHEMA, alias="schema")


class LayoutWitness(Document):
    measure: str
    value: int
    layout: List[int]


class DecompositionWitness(Document):
    width: int
    bags: List[List[int]]


class RankDecompositionWitness(Document):
    width: int
    leaves: List[int]


# ─── Expression ops ────────────────────────────────────────────


class _OpModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class LeafOp(_OpModel):
    op: Literal["leaf"] = "leaf"
    label: int
    vertex: Optional[int] = None


class JoinOp(_OpModel):
    op: Literal["join"] = "join"
    label: int
    forward: List[Tuple[int, int]] = []
    backward: List[Tuple[int, int]] = []
    vertex: Optional[int] = None


class UJoinOp(_OpModel):
    op: Literal["ujoin"] = "ujoin"
    label: int
    pairs: List[Tuple[int, int]] = []
    vertex: Optional[int] = None


class RelabelOp(_OpModel):
    op: Literal["relabel"] = "relabel"
    map: List[int]


class AddOp(_OpModel):
    op: Literal["add"] = "add"
    label: int
    vertex: Optional[int] = None


class AddArcsOp(_OpModel):
    op: Literal["add_arcs"] = "add_arcs"
    source: int
    target: int


class AddEdgesOp(_OpModel):
    op: Literal["add_edges"] = "add_edges"
    a: int
    b: int


class RenameOp(_OpModel):
    op: Literal["rename"] = "rename"
    source: int
    target: int


OpModel = Annotated[
    Union[LeafOp, JoinOp, UJoinOp, RelabelOp, AddOp, AddArcsOp, AddEdgesOp, RenameOp],
    Field(discriminator="op"),
]


class ExpressionWitness(Document):
    kind: Literal["nlc", "cw", "unlc", "ucw"]
    k: int
    value: Optional[int] = None
    ops: List[OpModel]


class ThresholdWitness(Document):
    is_threshold: bool
    sequence: Optional[List[StepKind]] = None
    vertices: Optional[List[int]] = None
    residual: Optional[List[int]] = None


class Violation(BaseModel):
    property: str
    n: int
    arcs: List[Tuple[int, int]]
    values: Dict[str, int] = {}
    detail: str = ""


class VerificationResult(Document):
    kind: str
    ok: bool
    condition: Optional[int] = None
    value: Optional[int] = None
    detail: str = ""


class ClassificationResult(Document):
    recognizer: str
    holds: bool
    graph_class: str


class SweepReport(Document):
    n: int
    instances_checked: int
    violations: List[Violation] = []
    extremal_witnesses: Dict[str, Violation] = {}
    notes: List[str] = []
    max_lcw_rank_ratio: Optional[float] = None


# ─── Conversions ───────────────────────────────────────────────


def op_to_model(op: Op) -> BaseModel:
    if isinstance(op, Leaf):
        return LeafOp(label=op.label, vertex=op.vertex)
    if isinstance(op, Join):
        return JoinOp(
            label=op.label,
            forward=sorted(op.forward),
            backward=sorted(op.backward),
            vertex=op.vertex,
        )
    if isinstance(op, UJoin):
        return UJoinOp(label=op.label, pairs=sorted(op.pairs), vertex=op.vertex)
    if isinstance(op, Relabel):
        return RelabelOp(map=list(op.mapping))
    if isinstance(op, Add):
        return AddOp(label=op.label, vertex=op.vertex)
    if isinstance(op, AddArcs):
        return AddArcsOp(source=op.source, target=op.target)
    if isinstance(op, AddEdges):
        return AddEdgesOp(a=op.a, b=op.b)
    return RenameOp(source=op.source, target=op.target)


def model_to_op(model: BaseModel) -> Op:
    if isinstance(model, LeafOp):
        return Leaf(model.label, model.vertex)
    if isinstance(model, JoinOp):
        return Join(model.label, frozenset(model.forward), frozenset(model.backward), model.vertex)
    if isinstance(model, UJoinOp):
        return UJoin(model.label, frozenset(model.pairs), model.vertex)
    if isinstance(model, RelabelOp):
        return Relabel(tuple(model.map))
    if isinstance(model, AddOp):
        return Add(model.label, model.vertex)
    if isinstance(model, AddArcsOp):
        return AddArcs(model.source, model.target)
    if isinstance(model, AddEdgesOp):
        return AddEdges(model.a, model.b)
    return Rename(model.source, model.target)


def expression_to_witness(expr: Expression, value: Optional[int] = None) -> ExpressionWitness:
    return ExpressionWitness(
        kind=expr.kind, k=expr.k, value=value, ops=[op_to_model(op) for op in expr.ops]
    )


def witness_to_expression(witness: ExpressionWitness) -> Expression:
    expr = Expression(witness.kind, witness.k, tuple(model_to_op(m) for m in witness.ops))
    expr.validate()
    return expr


def sequence_to_witness(seq: ThresholdBuildSequence) -> ThresholdWitness:
    return ThresholdWitness(
        is_threshold=True,
        sequence=list(seq.steps),
        vertices=list(seq.vertices) if seq.vertices is not None else None,
    )


def witness_to_sequence(witness: ThresholdWitness) -> ThresholdBuildSequence:
    if not witness.sequence:
        raise InputError("threshold witness carries no build sequence")
    vertices = tuple(witness.vertices) if witness.vertices is not None else None
    return ThresholdBuildSequence(tuple(witness.sequence), vertices)


# ─── JSON ──────────────────────────────────────────────────────


def dump_document(model: BaseModel) -> str:
    """Serialise with aliases and without empty optionals; key order follows the model."""
    return json.dumps(model.model_dump(mode="json", by_alias=True, exclude_none=True), indent=2)


def load_document(text: str, model: Type[M]) -> M:
    try:
        return model.model_validate_json(text)
    except ValidationError as e:
        raise InputError(f"invalid {model.__name__} document: {e}")


def read_document(path: str, model: Type[M]) -> M:
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except (OSError, UnicodeDecodeError) as e:
        raise InputError(f"cannot read witness file {path}: {e}")
    return load_document(text, model)


def sniff_kind(text: str) -> Optional[str]:
    """Return the expression kind of a JSON document, if it is an expression witness."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"witness is not valid JSON: {e}")
    return data.get("kind") if isinstance(data, dict) else None
