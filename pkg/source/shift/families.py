"""Constructors for the graph families: homogeneous graphs, finite graphs with
an infinite tail, the infinite comb, and leafless rooted trees."""

import logging
from dataclasses import dataclass
from enum import StrEnum
from typing import Callable, TypeAlias

from .errors import DomainError, ErrorCode
from .graph import GraphFamily
from .vertices import (
    ROOT, LadderPoint, LatticePoint, PlanarPoint, TailRole, TailVertex, TreePath, U, V, VertexId, W,
)

logger = logging.getLogger(__name__)


# ─────────────────────────────────────────────────────────────────────────────
# Homogeneous families
# ─────────────────────────────────────────────────────────────────────────────

@dataclass(frozen=True, slots=True)
class Lattice(GraphFamily):
    """Z^d; neighbor order +e_1, -e_1, +e_2, -e_2, ..."""
    d: int
    kind = "lattice"

    def __post_init__(self):
        if self.d < 1:
            raise DomainError.create(ErrorCode.GRAPH_INVALID_PARAMS, f"Lattice dimension must be >= 1, got {self.d}")

    @property
    def degree_bound(self) -> int:
        return 2 * self.d

    @property
    def distinguished_vertex(self) -> VertexId:
        return LatticePoint((0,) * self.d)

    @property
    def params(self) -> dict:
        return {"d": self.d}

    def contains(self, v: VertexId) -> bool:
        return isinstance(v, LatticePoint) and len(v.coords) == self.d

    def _adjacent(self, v: LatticePoint) -> list[VertexId]:
        out = []
        c = v.coords
        for axis in range(self.d):
            for step in (1, -1):
                out.append(LatticePoint(c[:axis] + (c[axis] + step,) + c[axis + 1:]))
        return out


@dataclass(frozen=True, slots=True)
class Triangular(GraphFamily):
    """Axial coordinates: (+-1,0), (0,+-1), (1,-1), (-1,1)."""
    kind = "triangular"
    degree_bound = 6

    @property
    def distinguished_vertex(self) -> VertexId:
        return PlanarPoint(0, 0)

    @property
    def params(self) -> dict:
        return {}

    def contains(self, v: VertexId) -> bool:
        return isinstance(v, PlanarPoint)

    def _adjacent(self, v: PlanarPoint) -> list[VertexId]:
        x, y = v.x, v.y
        return [
            PlanarPoint(x + 1, y), PlanarPoint(x - 1, y),
            PlanarPoint(x, y + 1), PlanarPoint(x, y - 1),
            PlanarPoint(x + 1, y - 1), PlanarPoint(x - 1, y + 1),
        ]


@dataclass(frozen=True, slots=True)
class Hexagonal(GraphFamily):
    """Brick-wall model: (x+-1, y) always, (x, y+1) iff x+y even."""
    kind = "hexagonal"
    degree_bound = 3

    @property
    def distinguished_vertex(self) -> VertexId:
        return PlanarPoint(0, 0)

    @property
    def params(self) -> dict:
        return {}

    def contains(self, v: VertexId) -> bool:
        return isinstance(v, PlanarPoint)

    def _adjacent(self, v: PlanarPoint) -> list[VertexId]:
        x, y = v.x, v.y
        vertical = PlanarPoint(x, y + 1) if (x + y) % 2 == 0 else PlanarPoint(x, y - 1)
        return [PlanarPoint(x + 1, y), PlanarPoint(x - 1, y), vertical]


@dataclass(frozen=True, slots=True)
class Ladder(GraphFamily):
    """Semi-infinite ladder rooted at rung 0, side 0."""
    kind = "ladder"
    degree_bound = 3

    @property
    def distinguished_vertex(self) -> VertexId:
        return LadderPoint(0, 0)

    @property
    def params(self) -> dict:
        return {}

    def contains(self, v: VertexId) -> bool:
        return isinstance(v, LadderPoint)

    def _adjacent(self, v: LadderPoint) -> list[VertexId]:
        out = [LadderPoint(v.i - 1, v.side)] if v.i > 0 else []
        return out + [LadderPoint(v.i + 1, v.side), LadderPoint(v.i, 1 - v.side)]


@dataclass(frozen=True, slots=True)
class Ray(GraphFamily):
    """The infinite tail u_1 ~ u_2 ~ ... on its own, rooted at u_1."""
    kind = "ray"
    degree_bound = 2

    @property
    def distinguished_vertex(self) -> VertexId:
        return U(1)

    @property
    def params(self) -> dict:
        return {}

    def contains(self, v: VertexId) -> bool:
        return isinstance(v, TailVertex) and v.role is TailRole.U

    def _adjacent(self, v: TailVertex) -> list[VertexId]:
        return ([U(v.index - 1)] if v.index > 1 else []) + [U(v.index + 1)]


HOMOGENEOUS_KINDS = ("lattice", "triangular", "hexagonal", "ladder", "ray")


def make_homogeneous(kind: str, d: int | None = None) -> GraphFamily:
    match kind:
        case "lattice":
            if d is None:
                raise DomainError.create(ErrorCode.GRAPH_INVALID_PARAMS, "Lattice needs a dimension d")
            return Lattice(d)
        case "triangular":
            return Triangular()
        case "hexagonal":
            return Hexagonal()
        case "ladder":
            return Ladder()
        case "ray":
            return Ray()
    raise DomainError.create(ErrorCode.GRAPH_INVALID_PARAMS, f"Unknown homogeneous family: {kind}")


# ─────────────────────────────────────────────────────────────────────────────
# Finite graphs with an infinite tail
# ─────────────────────────────────────────────────────────────────────────────

class TailShape(StrEnum):
    KITE = "kite"
    FLY_SWATTER = "fly-swatter"
    COMB = "comb"


@dataclass(frozen=True, slots=True)
class TailKind:
    shape: TailShape
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise DomainError.create(ErrorCode.GRAPH_INVALID_PARAMS, f"{self.shape} needs n >= 2, got {self.n}")


def Kite(n: int) -> TailKind:
    return TailKind(TailShape.KITE, n)


def FlySwatter(n: int) -> TailKind:
    return TailKind(TailShape.FLY_SWATTER, n)


def CombWithTail(n: int) -> TailKind:
    return TailKind(TailShape.COMB, n)


@dataclass(frozen=True, slots=True)
class TailGraph(GraphFamily):
    """A finite graph H with the tail u_1 ~ u_2 ~ ... attached at one vertex.

    Kite: (n+1)-cycle on v_0..v_n, tail at v_0.
    Fly-swatter: K_{n+1} on v_0..v_n, tail at v_0.
    Comb: path v_1..v_n with teeth w_j ~ v_j, tail at v_n.
    """
    tail: TailKind

    @property
    def kind(self) -> str:
        return self.tail.shape.value

    @property
    def n(self) -> int:
        return self.tail.n

    @property
    def degree_bound(self) -> int:
        return self.n + 1 if self.tail.shape is TailShape.FLY_SWATTER else 3

    @property
    def attach_vertex(self) -> TailVertex:
        return V(self.n) if self.tail.shape is TailShape.COMB else V(0)

    @property
    def distinguished_vertex(self) -> VertexId:
        return V(1) if self.tail.shape is TailShape.COMB else V(0)

    @property
    def params(self) -> dict:
        return {"n": self.n}

    def finite_vertices(self) -> list[TailVertex]:
        if self.tail.shape is TailShape.COMB:
            return [V(j) for j in range(1, self.n + 1)] + [W(j) for j in range(1, self.n + 1)]
        return [V(j) for j in range(self.n + 1)]

    def contains(self, v: VertexId) -> bool:
        if not isinstance(v, TailVertex):
            return False
        if v.role is TailRole.U:
            return True
        lo = 1 if self.tail.shape is TailShape.COMB else 0
        if v.role is TailRole.W and self.tail.shape is not TailShape.COMB:
            return False
        return lo <= v.index <= self.n

    def _finite_adjacent(self, v: TailVertex) -> list[VertexId]:
        n, k = self.n, v.index
        match self.tail.shape:
            case TailShape.KITE:
                if k == 0:
                    return [V(1), V(n)]
                return [V(k - 1), V((k + 1) % (n + 1))]
            case TailShape.FLY_SWATTER:
                return [V(j) for j in range(n + 1) if j != k]
            case TailShape.COMB:
                if v.role is TailRole.W:
                    return [V(k)]
                out = [V(k - 1)] if k > 1 else []
                if k < n:
                    out.append(V(k + 1))
                return out + [W(k)]

    def _adjacent(self, v: TailVertex) -> list[VertexId]:
        if v.role is TailRole.U:
            prev = self.attach_vertex if v.index == 1 else U(v.index - 1)
            return [prev, U(v.index + 1)]
        out = self._finite_adjacent(v)
        if v == self.attach_vertex:
            out.append(U(1))
        return out

    def finite_part(self) -> dict[TailVertex, list[TailVertex]]:
        """The finite graph H: adjacency with every u-vertex removed."""
        return {v: self._finite_adjacent(v) for v in self.finite_vertices()}


def make_tail_graph(kind: TailKind) -> TailGraph:
    return TailGraph(kind)


@dataclass(frozen=True, slots=True)
class InfiniteComb(GraphFamily):
    """v_j ~ v_{j+1} and v_j ~ w_j for every j >= 1, rooted at v_1."""
    kind = "infinite-comb"
    degree_bound = 3

    @property
    def distinguished_vertex(self) -> VertexId:
        return V(1)

    @property
    def params(self) -> dict:
        return {}

    def contains(self, v: VertexId) -> bool:
        return isinstance(v, TailVertex) and v.role is not TailRole.U and v.index >= 1

    def _adjacent(self, v: TailVertex) -> list[VertexId]:
        j = v.index
        if v.role is TailRole.W:
            return [V(j)]
        return ([V(j - 1)] if j > 1 else []) + [V(j + 1), W(j)]


def make_infinite_comb() -> InfiniteComb:
    return InfiniteComb()


# ─────────────────────────────────────────────────────────────────────────────
# Rooted trees
# ─────────────────────────────────────────────────────────────────────────────

def _invalid(msg: str) -> DomainError:
    return DomainError.create(ErrorCode.KERNEL_INVALID_SPEC, msg)


@dataclass(frozen=True, slots=True)
class AlternatingTree:
    """m children at even levels, M children at odd levels."""
    m: int
    M: int

    def __post_init__(self):
        if self.m < 1 or self.M < 1:
            raise _invalid(f"Alternating tree needs m, M >= 1, got ({self.m}, {self.M})")


@dataclass(frozen=True, slots=True)
class AlmostRegularTree:
    """Root has root_children children, every other vertex k - 1."""
    k: int
    root_children: int | None = None

    def __post_init__(self):
        if self.k < 2:
            raise _invalid(f"Almost regular tree needs k >= 2, got {self.k}")
        if self.root_children is not None and self.root_children < 1:
            raise _invalid(f"Root needs at least one child, got {self.root_children}")

    @property
    def root_count(self) -> int:
        return self.k if self.root_children is None else self.root_children


T_SEQUENCES: dict[str, Callable[[int], int]] = {
    "squares": lambda j: 2 ** ((j - 1) ** 2),
    "selfpow": lambda j: j ** (j - 1),
}


@dataclass(frozen=True, slots=True)
class StretchedTree:
    """The root is a bifurcation node with M children. The path of 2 t_1 - 1
    edges leaving it through each child ends at a bifurcation node with M
    children, whose paths have 2 t_2 - 1 edges, and so on.

    ``t`` names a divergent sequence ("squares": 2^((j-1)^2), "selfpow":
    j^(j-1)) or gives an explicit prefix whose last entry repeats.
    """
    M: int
    t: str | tuple[int, ...] = "squares"

    def __post_init__(self):
        if self.M < 2:
            raise _invalid(f"Stretched tree needs M >= 2, got {self.M}")
        if isinstance(self.t, str):
            if self.t not in T_SEQUENCES:
                raise _invalid(f"Unknown t-sequence {self.t!r}; choose from {sorted(T_SEQUENCES)}")
        elif not self.t or any(tj < 1 for tj in self.t):
            raise _invalid(f"Explicit t-sequence must be a nonempty list of positive integers, got {self.t}")

    def t_value(self, j: int) -> int:
        if isinstance(self.t, str):
            return T_SEQUENCES[self.t](j)
        return self.t[min(j, len(self.t)) - 1]


@dataclass(frozen=True, slots=True)
class ExplicitBeta:
    """Child counts per level from ``levels``, then ``default``."""
    levels: tuple[int, ...]
    default: int

    def __post_init__(self):
        if any(b < 1 for b in self.levels) or self.default < 1:
            raise _invalid(f"Child counts must be >= 1 (leafless), got {self.levels} / {self.default}")


TreeSpec: TypeAlias = AlternatingTree | AlmostRegularTree | StretchedTree | ExplicitBeta


def is_bifurcation_level(spec: StretchedTree, level: int) -> bool:
    """Bifurcation levels are L_0 = 0 and L_j = L_{j-1} + 2 t_j - 1."""
    at, j = 0, 1
    while at < level:
        at += 2 * spec.t_value(j) - 1
        j += 1
    return at == level


@dataclass(frozen=True, slots=True)
class TreeFamily(GraphFamily):
    """Leafless rooted tree whose child count depends only on the level.

    Neighbor order: parent first, then children by index.
    """
    spec: TreeSpec

    @property
    def kind(self) -> str:
        return {
            AlternatingTree: "alternating-tree",
            AlmostRegularTree: "almost-regular-tree",
            StretchedTree: "stretched-tree",
            ExplicitBeta: "explicit-tree",
        }[type(self.spec)]

    @property
    def params(self) -> dict:
        match self.spec:
            case AlternatingTree(m=m, M=M):
                return {"m": m, "M": M}
            case AlmostRegularTree(k=k):
                return {"k": k, "root_children": self.spec.root_count}
            case StretchedTree(M=M, t=t):
                return {"M": M, "t": t if isinstance(t, str) else list(t)}
            case ExplicitBeta(levels=levels, default=default):
                return {"levels": list(levels), "default": default}

    @property
    def distinguished_vertex(self) -> VertexId:
        return ROOT

    def beta(self, level: int) -> int:
        """Number of children of every vertex at ``level``."""
        match self.spec:
            case AlternatingTree(m=m, M=M):
                return m if level % 2 == 0 else M
            case AlmostRegularTree(k=k):
                return self.spec.root_count if level == 0 else k - 1
            case StretchedTree(M=M):
                return M if is_bifurcation_level(self.spec, level) else 1
            case ExplicitBeta(levels=levels, default=default):
                return levels[level] if level < len(levels) else default

    @property
    def degree_bound(self) -> int:
        match self.spec:
            case AlternatingTree(m=m, M=M):
                return max(m, M) + 1
            case AlmostRegularTree(k=k):
                return max(k, self.spec.root_count)
            case StretchedTree(M=M):
                return M + 1
            case ExplicitBeta(levels=levels, default=default):
                return max((*levels, default)) + 1

    def level_counts(self, nmax: int) -> list[int]:
        """gamma(0..nmax) from the level-wise child counts."""
        counts = [1]
        for j in range(nmax):
            counts.append(counts[-1] * self.beta(j))
        return counts

    def contains(self, v: VertexId) -> bool:
        return isinstance(v, TreePath) and all(i < self.beta(d) for d, i in enumerate(v.path))

    def _adjacent(self, v: TreePath) -> list[VertexId]:
        out: list[VertexId] = [v.parent()] if v.depth else []
        return out + [v.child(i) for i in range(self.beta(v.depth))]


def make_tree(spec: TreeSpec) -> TreeFamily:
    return TreeFamily(spec)
