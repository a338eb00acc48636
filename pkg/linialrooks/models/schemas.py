from __future__ import annotations

from typing import Optional, Any, List, Tuple
from pydantic import BaseModel, ConfigDict, Field
from enum import Enum


# ─── Enums ────────────────────────────────────────────────────────────────────

class CommandStatus(str, Enum):
    OK = "ok"
    VERIFICATION_FAILED = "verification-failed"
    INVALID_INPUT = "invalid-input"
    RESOURCE_LIMIT = "resource-limit"

    @property
    def exit_code(self) -> int:
        return _EXIT_CODES[self]


_EXIT_CODES = {
    CommandStatus.OK: 0,
    CommandStatus.VERIFICATION_FAILED: 1,
    CommandStatus.INVALID_INPUT: 2,
    CommandStatus.RESOURCE_LIMIT: 3,
}


class TreeClass(str, Enum):
    INCREASING = "increasing"
    RIGHT_INCREASING = "right-increasing"
    LTREE = "ltree"
    LTREE_B = "ltree-b"
    ALL = "all"


class BoardFamily(str, Enum):
    CATALAN = "catalan"
    SHI = "shi"
    LINIAL = "linial"


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"
    LATEX = "latex"


# ─── exact-algebra ────────────────────────────────────────────────────────────

class PolynomialJSON(BaseModel):
    variable: str = "x"
    coefficients: List[str] = Field(..., description="Decimal strings, low degree first")


class MonomialJSON(BaseModel):
    u: List[int]
    v: List[int]
    coefficient: str


class GesselJSON(BaseModel):
    n: int
    k: int
    terms: List[MonomialJSON]


# ─── boards ───────────────────────────────────────────────────────────────────

class BoardRowJSON(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    from_: int = Field(..., alias="from", ge=1)
    to: int = Field(..., ge=0)


class BoardJSON(BaseModel):
    rows: List[BoardRowJSON] = []
    cells: Optional[List[Tuple[int, int]]] = Field(
        None, description="Arbitrary cell set as (row, column) pairs; overrides rows"
    )


class RookVectorJSON(BaseModel):
    r: List[str]


# ─── trees / bijection ────────────────────────────────────────────────────────

class TreeNodeJSON(BaseModel):
    label: int = Field(..., ge=1)
    parent: int = Field(..., ge=1)
    slot: int = Field(..., ge=1)


class TreeJSON(BaseModel):
    n: int = Field(..., ge=1)
    k: int = Field(..., ge=1)
    root: int = Field(..., ge=1)
    nodes: List[TreeNodeJSON] = []


class ColoredPlacementJSON(BaseModel):
    n: int = Field(..., ge=1)
    k: int = Field(..., ge=1)
    g: List[Tuple[int, int]] = []


class FlatPlacementJSON(BaseModel):
    n: int = Field(..., ge=1)
    k: int = Field(..., ge=1)
    f: List[int] = []


class ClassCountJSON(BaseModel):
    tree_class: TreeClass = Field(..., alias="class")
    n: int
    k: int
    count: str
    closed_form: Optional[str] = None
    enumerated: Optional[str] = None

    model_config = ConfigDict(populate_by_name=True)


# ─── arrangements / graphs ────────────────────────────────────────────────────

class ArrangementJSON(BaseModel):
    n: int
    a: int
    b: int
    chi: PolynomialJSON
    regions: str
    bounded: str


class RegionCountJSON(BaseModel):
    regions: str
    bounded: str


class GraphJSON(BaseModel):
    vertices: int = Field(..., ge=0)
    edges: List[Tuple[int, int]] = []


class MatchingJSON(BaseModel):
    size: int
    count: str


# ─── series / verification ────────────────────────────────────────────────────

class VerificationReport(BaseModel):
    identity: str
    order: int
    status: str  # "pass" | "fail" | "skipped"
    first_mismatch: Optional[int] = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    @property
    def failed(self) -> bool:
        return self.status == "fail"


class SuiteReport(BaseModel):
    suite: str
    status: str
    checks: List[VerificationReport]


class VerifyAllReport(BaseModel):
    max_n: int
    status: str
    suites: List[SuiteReport]


# ─── CLI ──────────────────────────────────────────────────────────────────────

class CommandResult(BaseModel):
    status: CommandStatus
    payload: Any = None
    elapsed: float = Field(0.0, description="Milliseconds")
    output_format: OutputFormat = OutputFormat.JSON
    detail: Optional[str] = Field(None, description="Diagnostic for non-ok results; written to stderr")

    @property
    def exit_code(self) -> int:
        return self.status.exit_code
