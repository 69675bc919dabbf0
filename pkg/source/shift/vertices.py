"""Vertex identifiers and their canonical text forms.

Every graph family labels its vertices with one of the variants below. The
text forms are stable so they can serve as JSON keys:

    z:(c1,...,cd)      lattice point of Z^d
    p:(x,y)            planar tessellation point
    lad:(i,s)          semi-infinite ladder, rung i, side s in {0, 1}
    v:i | w:i | u:i    finite part (v, w) and tail (u) of tail graphs
    t:[i1,...,ik]      rooted tree, child-index path from the root

Example:
    >>> render(parse("t:[0,2]"))
    't:[0,2]'
"""

import re
from dataclasses import dataclass
from enum import StrEnum
from typing import TypeAlias

from .errors import EncodingError, ErrorCode


@dataclass(frozen=True, slots=True, order=True)
class LatticePoint:
    coords: tuple[int, ...]


@dataclass(frozen=True, slots=True, order=True)
class PlanarPoint:
    x: int
    y: int


@dataclass(frozen=True, slots=True, order=True)
class LadderPoint:
    i: int
    side: int

    def __post_init__(self):
        if self.i < 0 or self.side not in (0, 1):
            raise EncodingError.create(
                ErrorCode.ENC_INVALID_FIELD, f"Invalid ladder vertex ({self.i},{self.side})"
            )


class TailRole(StrEnum):
    V = "v"
    W = "w"
    U = "u"


@dataclass(frozen=True, slots=True, order=True)
class TailVertex:
    role: TailRole
    index: int

    def __post_init__(self):
        if self.index < 0 or (self.role is TailRole.U and self.index < 1):
            raise EncodingError.create(
                ErrorCode.ENC_INVALID_FIELD, f"Invalid tail vertex {self.role.value}:{self.index}"
            )


@dataclass(frozen=True, slots=True, order=True)
class TreePath:
    """Root-to-vertex child indices; the empty path is the root."""
    path: tuple[int, ...] = ()

    def __post_init__(self):
        if any(i < 0 for i in self.path):
            raise EncodingError.create(
                ErrorCode.ENC_INVALID_FIELD, f"Negative child index in {self.path}"
            )

    @property
    def depth(self) -> int:
        return len(self.path)

    def parent(self) -> "TreePath":
        return TreePath(self.path[:-1])

    def child(self, i: int) -> "TreePath":
        return TreePath(self.path + (i,))


VertexId: TypeAlias = LatticePoint | PlanarPoint | LadderPoint | TailVertex | TreePath

ROOT = TreePath()


def V(i: int) -> TailVertex:
    return TailVertex(TailRole.V, i)


def W(i: int) -> TailVertex:
    return TailVertex(TailRole.W, i)


def U(i: int) -> TailVertex:
    return TailVertex(TailRole.U, i)


def _ints(body: str) -> tuple[int, ...]:
    body = body.strip()
    if not body:
        return ()
    return tuple(int(tok) for tok in body.split(","))


def render(v: VertexId) -> str:
    """Canonical text form of a vertex."""
    match v:
        case LatticePoint(coords=coords):
            return "z:(" + ",".join(str(c) for c in coords) + ")"
        case PlanarPoint(x=x, y=y):
            return f"p:({x},{y})"
        case LadderPoint(i=i, side=s):
            return f"lad:({i},{s})"
        case TailVertex(role=role, index=index):
            return f"{role.value}:{index}"
        case TreePath(path=path):
            return "t:[" + ",".join(str(i) for i in path) + "]"
    raise EncodingError.create(ErrorCode.ENC_WRONG_VARIANT, f"Not a vertex: {v!r}")


_INT = r"-?\d+"
_PATTERNS = [
    (re.compile(rf"z:\(((?:{_INT})(?:,{_INT})*)\)"), "z"),
    (re.compile(rf"p:\(({_INT}),({_INT})\)"), "p"),
    (re.compile(r"lad:\((\d+),([01])\)"), "lad"),
    (re.compile(r"([vwu]):(\d+)"), "tail"),
    (re.compile(r"t:\[((?:\d+(?:,\d+)*)?)\]"), "t"),
]


def parse(text: str) -> VertexId:
    """Parse a canonical text form; inverse of :func:`render`."""
    s = text.replace(" ", "")
    for pattern, kind in _PATTERNS:
        m = pattern.fullmatch(s)
        if not m:
            continue
        match kind:
            case "z":
                return LatticePoint(_ints(m.group(1)))
            case "p":
                return PlanarPoint(int(m.group(1)), int(m.group(2)))
            case "lad":
                return LadderPoint(int(m.group(1)), int(m.group(2)))
            case "tail":
                return TailVertex(TailRole(m.group(1)), int(m.group(2)))
            case "t":
                return TreePath(_ints(m.group(1)))
    raise EncodingError.create(ErrorCode.ENC_MALFORMED_TEXT, f"Malformed vertex text: {text!r}")
