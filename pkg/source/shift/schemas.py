"""JSON documents: the tree-spec input schema and every emitted payload."""

from typing import Annotated, Any, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, ValidationError

from .errors import DomainError, EncodingError, ErrorCode
from .families import AlmostRegularTree, AlternatingTree, ExplicitBeta, StretchedTree, TreeSpec

SCHEMA_REFERENCE = """graphshift JSON reference:

TREE SPECS (input, selected by "kind"):
  {"kind": "alternating", "m": 2, "M": 4}
  {"kind": "almost-regular", "k": 3, "root_children": 3}
  {"kind": "stretched", "M": 2, "t": "squares"}        t: "squares" | "selfpow" | [1, 2, 4]
  {"kind": "explicit", "levels": [3, 1, 2], "default": 2}

  Every child count is >= 1 (leafless trees). An explicit t list repeats its
  last entry.

PAYLOADS:
  gamma          {"family": "lattice(d=2)", "counts": [1, 4, 8, 12]}
  norm           {"family": ..., "p": 2.0 | "inf", "lower": ..., "upper": ...,
                  "witness": {"kind": "ball", "n": 200, "ratio": ...},
                  "formulas": ["degree"], "skipped": []}
  kernel class   {"m": 2, "M": 4, "p": 2.0, "verdict": "Undetermined", "theorem": ...}
  level sums     {"p": 2.0, "sums": ["1", "1/2", ...], "ratios": ["1/2", ...]}
                 exact values are rational strings, others are floats
  polynomial     {"coefficients": [-1, 0, 2, 1], "degree": 3}
  roots          {"polynomial": {...}, "interval": [-1.0, 1.0],
                  "roots": [{"root": 0.618..., "residual": ...}]}
  spectrum       {"essential": [[-2.0, 2.0]],
                  "point": [{"lambda": 2.236..., "b": 0.618..., "branch": "tail",
                             "residual": ..., "embedded": false}]}
  membership     {"lambda": 1.0, "in_spectrum": true, "criterion": true, "interval": true}

Every command wraps its payload as
  {"command": ..., "parameters": {...}, "payload": ..., "elapsed_ms": ...}
"""


# ─────────────────────────────────────────────────────────────────────────────
# Tree specs
# ─────────────────────────────────────────────────────────────────────────────

class AlternatingTreeDoc(BaseModel):
    kind: Literal["alternating"]
    m: int = Field(ge=1, description="Children at even levels")
    M: int = Field(ge=1, description="Children at odd levels")

    def to_spec(self) -> TreeSpec:
        return AlternatingTree(self.m, self.M)


class AlmostRegularTreeDoc(BaseModel):
    kind: Literal["almost-regular"]
    k: int = Field(ge=2, description="Degree of every non-root vertex")
    root_children: int | None = Field(default=None, ge=1, description="Children of the root (default k)")

    def to_spec(self) -> TreeSpec:
        return AlmostRegularTree(self.k, self.root_children)


class StretchedTreeDoc(BaseModel):
    kind: Literal["stretched"]
    M: int = Field(ge=2, description="Children of every bifurcation node")
    t: Literal["squares", "selfpow"] | list[Annotated[int, Field(ge=1)]] = Field(
        default="squares", description="Named divergent t-sequence or an explicit prefix"
    )

    def to_spec(self) -> TreeSpec:
        return StretchedTree(self.M, self.t if isinstance(self.t, str) else tuple(self.t))


class ExplicitBetaDoc(BaseModel):
    kind: Literal["explicit"]
    levels: list[Annotated[int, Field(ge=1)]] = Field(description="Children per level, from the root")
    default: int = Field(ge=1, description="Children on every later level")

    def to_spec(self) -> TreeSpec:
        return ExplicitBeta(tuple(self.levels), self.default)


TreeSpecDocument = Annotated[
    Union[AlternatingTreeDoc, AlmostRegularTreeDoc, StretchedTreeDoc, ExplicitBetaDoc],
    Field(discriminator="kind"),
]

_TREE_SPEC = TypeAdapter(TreeSpecDocument)


def parse_tree_spec(doc: str | dict) -> TreeSpec:
    """Validate a tree-spec JSON document (text or parsed) into a TreeSpec."""
    try:
        parsed = _TREE_SPEC.validate_json(doc) if isinstance(doc, str) else _TREE_SPEC.validate_python(doc)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(x) for x in first["loc"])
        raise DomainError.create(
            ErrorCode.KERNEL_INVALID_SPEC, f"Invalid tree spec at {where or 'root'}: {first['msg']}"
        ) from None
    return parsed.to_spec()


# ─────────────────────────────────────────────────────────────────────────────
# Payload records
# ─────────────────────────────────────────────────────────────────────────────

PValue = float | Literal["inf"]
ExactOrFloat = float | str


class GammaRecord(BaseModel):
    family: str
    counts: list[int]


class RatioRecord(BaseModel):
    family: str
    n: int
    ratio: float


class NormBracketRecord(BaseModel):
    family: str
    p: PValue
    lower: float
    upper: float
    witness: dict[str, Any]
    formulas: list[str] = []
    skipped: list[str] = []
    finite_section_estimate: float | None = Field(default=None, description="Power iteration at p = 2, not certified")


class WitnessRecord(BaseModel):
    family: str
    witness: dict[str, Any]
    p: PValue
    support_radius: int
    truncation_radius: int
    vertices: int
    ratio: float


class KernelClassRecord(BaseModel):
    m: int
    M: int
    p: PValue
    verdict: Literal["Trivial", "Nontrivial", "Undetermined"]
    theorem: str


class KernelValuesRecord(BaseModel):
    family: str
    depth: int
    exact: bool = True
    values: dict[str, str | float] = Field(description="Nonzero values keyed by vertex text")
    max_interior_residual: str
    vanishes: bool = Field(description="Sf = 0 exactly, or below kernel_zero_tol in floating mode")


class LevelSumsRecord(BaseModel):
    p: PValue
    sums: list[ExactOrFloat]
    ratios: list[ExactOrFloat | None]


class StretchedSumsRecord(BaseModel):
    M: int
    t: str
    p: PValue
    partial_sums: list[float]


class PolynomialRecord(BaseModel):
    coefficients: list[int | str]
    degree: int


class RootEntry(BaseModel):
    root: float
    residual: float


class RootsRecord(BaseModel):
    polynomial: PolynomialRecord
    interval: tuple[float, float]
    roots: list[RootEntry]


class EigenpairRecord(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    lam: float = Field(alias="lambda")
    b: float | None
    branch: Literal["zero", "tail"]
    residual: float
    embedded: bool


class SpectrumRecord(BaseModel):
    essential: list[tuple[float, float]]
    point: list[EigenpairRecord]


class MembershipRecord(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    lam: float = Field(alias="lambda")
    in_spectrum: bool
    criterion: bool
    interval: bool


class TreeInfoRecord(BaseModel):
    family: str
    params: dict[str, Any]
    degree_bound: int
    beta: list[int]
    gamma: list[int]
    bounds: dict[str, int]


class CommandResult(BaseModel):
    command: str
    parameters: dict[str, Any]
    payload: Any
    elapsed_ms: float


RECORDS: dict[str, type[BaseModel]] = {
    "gamma": GammaRecord,
    "ratio": RatioRecord,
    "norm": NormBracketRecord,
    "witness": WitnessRecord,
    "kernel-class": KernelClassRecord,
    "kernel-values": KernelValuesRecord,
    "level-sums": LevelSumsRecord,
    "stretched-sums": StretchedSumsRecord,
    "polynomial": PolynomialRecord,
    "roots": RootsRecord,
    "spectrum": SpectrumRecord,
    "membership": MembershipRecord,
    "tree-info": TreeInfoRecord,
    "command": CommandResult,
}


def validate_record(name: str, data: dict) -> dict:
    """Round-trip a payload through its record model; keys use their JSON aliases."""
    return RECORDS[name].model_validate(data).model_dump(mode="json", by_alias=True)


def get_json_schema(name: str) -> dict:
    """JSON schema of a payload record, or of the tree-spec input for ``tree-spec``."""
    if name == "tree-spec":
        return _TREE_SPEC.json_schema()
    try:
        return RECORDS[name].model_json_schema(by_alias=True)
    except KeyError:
        raise EncodingError.create(
            ErrorCode.ENC_WRONG_VARIANT, f"Unknown schema {name!r}; choose from {sorted(RECORDS)} or 'tree-spec'"
        ) from None
