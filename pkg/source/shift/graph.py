"""Neighbor-oracle contract, BFS truncations and coordination sequences.

An infinite graph is only ever seen through its neighbor oracle. A
:class:`Truncation` is the finite BFS ball of radius R around the
distinguished vertex; vertices with level <= R - 1 see all their neighbors.
"""

import logging
from abc import ABC, abstractmethod
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy import sparse

from .config import get_settings
from .errors import DomainError, EncodingError, ErrorCode, ResourceError
from .vertices import VertexId, render

logger = logging.getLogger(__name__)


class GraphFamily(ABC):
    """Immutable neighbor oracle with a distinguished vertex and a degree bound."""
    __slots__ = ()

    kind: str
    degree_bound: int

    @property
    @abstractmethod
    def distinguished_vertex(self) -> VertexId: ...

    @property
    @abstractmethod
    def params(self) -> dict: ...

    @abstractmethod
    def contains(self, v: VertexId) -> bool:
        """Whether ``v`` is a well-formed vertex of this family."""

    @abstractmethod
    def _adjacent(self, v: VertexId) -> list[VertexId]:
        """Ordered neighbor list of a valid vertex."""

    def neighbors(self, v: VertexId) -> list[VertexId]:
        if not self.contains(v):
            raise EncodingError.create(
                ErrorCode.ENC_WRONG_VARIANT, f"{v!r} is not a vertex of {self.label}"
            )
        out = self._adjacent(v)
        if len(out) > self.degree_bound:
            raise DomainError.create(
                ErrorCode.GRAPH_DEGREE_BOUND,
                f"{render(v)} has {len(out)} neighbors, bound is {self.degree_bound}",
            )
        return out

    def degree(self, v: VertexId) -> int:
        return len(self.neighbors(v))

    @property
    def label(self) -> str:
        args = ",".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.kind}({args})" if args else self.kind


def neighbors(family: GraphFamily, v: VertexId) -> list[VertexId]:
    """Deterministic ordered neighbor list of ``v``."""
    return family.neighbors(v)


def _check_cap(count: int, family: GraphFamily, radius: int) -> None:
    cap = get_settings().max_truncation_vertices
    if count > cap:
        raise ResourceError.create(
            ErrorCode.GRAPH_RESOURCE_CAP,
            f"Truncation of {family.label} at radius {radius} exceeds {cap} vertices",
        )


def _bfs(family: GraphFamily, radius: int) -> tuple[list[VertexId], list[int], dict[VertexId, int], list[list[VertexId]]]:
    """BFS to ``radius``; neighbor lists are kept for vertices below the last level."""
    if radius < 0:
        raise DomainError.create(ErrorCode.GRAPH_NEGATIVE_RADIUS, f"Negative radius {radius}")
    root = family.distinguished_vertex
    vertices: list[VertexId] = [root]
    level: list[int] = [0]
    index: dict[VertexId, int] = {root: 0}
    nbrs: list[list[VertexId]] = []
    queue = deque([0])
    while queue:
        i = queue.popleft()
        if level[i] >= radius:
            continue
        out = family.neighbors(vertices[i])
        nbrs.append(out)
        for u in out:
            if u not in index:
                index[u] = len(vertices)
                vertices.append(u)
                level.append(level[i] + 1)
                queue.append(index[u])
        _check_cap(len(vertices), family, radius)
    return vertices, level, index, nbrs


@dataclass(frozen=True)
class Truncation:
    """Finite BFS ball of a graph family."""
    family: GraphFamily
    radius: int
    vertices: list[VertexId]
    level: list[int]
    adjacency: list[list[int]]
    index: dict[VertexId, int] = field(repr=False)

    @property
    def interior_radius(self) -> int:
        return self.radius - 1

    def __len__(self) -> int:
        return len(self.vertices)

    def index_of(self, v: VertexId) -> int:
        try:
            return self.index[v]
        except KeyError:
            raise EncodingError.create(
                ErrorCode.GRAPH_INVALID_VERTEX, f"{render(v)} is outside the truncation"
            ) from None

    def is_interior(self, i: int) -> bool:
        return self.level[i] <= self.interior_radius

    @cached_property
    def levels(self) -> np.ndarray:
        return np.asarray(self.level, dtype=np.int64)

    @cached_property
    def shift_matrix(self) -> sparse.csr_matrix:
        """Adjacency over every edge among truncation vertices."""
        rows = np.repeat(np.arange(len(self.adjacency)), [len(a) for a in self.adjacency])
        cols = np.fromiter((j for a in self.adjacency for j in a), dtype=np.int64, count=len(rows))
        data = np.ones(len(rows), dtype=np.float64)
        n = len(self.vertices)
        return sparse.csr_matrix((data, (rows, cols)), shape=(n, n))


def truncate(family: GraphFamily, radius: int) -> Truncation:
    """BFS ball of the given radius around the distinguished vertex."""
    vertices, level, index, nbrs = _bfs(family, radius)
    adjacency: list[list[int]] = []
    for i, v in enumerate(vertices):
        out = nbrs[i] if i < len(nbrs) else family.neighbors(v)
        adjacency.append([index[u] for u in out if u in index])
    logger.debug(f"Truncated {family.label} at radius {radius}: {len(vertices)} vertices")
    return Truncation(family, radius, vertices, level, adjacency, index)


@dataclass(frozen=True, slots=True)
class GammaSequence:
    """Coordination sequence: counts[n] vertices at distance n from the distinguished vertex."""
    family: str
    counts: tuple[int, ...]

    @property
    def nmax(self) -> int:
        return len(self.counts) - 1

    def to_csv(self) -> str:
        return "n,gamma\n" + "".join(f"{n},{c}\n" for n, c in enumerate(self.counts))

    def to_record(self) -> dict:
        return {"family": self.family, "counts": list(self.counts)}


def gamma_sequence(family: GraphFamily, nmax: int) -> GammaSequence:
    if nmax < 0:
        raise DomainError.create(ErrorCode.GRAPH_NEGATIVE_RADIUS, f"Negative nmax {nmax}")
    _, level, _, _ = _bfs(family, nmax)
    counts = np.bincount(np.asarray(level, dtype=np.int64), minlength=nmax + 1)
    return GammaSequence(family.label, tuple(int(c) for c in counts))


def euclidean_ratio(gamma: GammaSequence, n: int) -> float:
    """(gamma(n) + gamma(n+1)) / (gamma(0) + ... + gamma(n))."""
    if n < 0 or n + 1 > gamma.nmax:
        raise DomainError.create(
            ErrorCode.GRAPH_INDEX_RANGE, f"Index {n} needs gamma up to {n + 1}, have {gamma.nmax}"
        )
    c = gamma.counts
    return (c[n] + c[n + 1]) / sum(c[: n + 1])


def degree_bounds(trunc: Truncation) -> tuple[int, int]:
    """(max, min) degree over interior vertices, the distinguished vertex included.

    On a rooted tree the root has no parent, so its degree is its child count
    and AlternatingTree(2, 4) gives (5, 2).
    """
    if trunc.radius < 1:
        raise DomainError.create(ErrorCode.GRAPH_EMPTY_INTERIOR, "Radius 0 truncation has no interior")
    degrees = [len(a) for i, a in enumerate(trunc.adjacency) if trunc.is_interior(i)]
    return max(degrees), min(degrees)


def lattice_gamma_closed_form(d: int, n: int) -> int:
    """The octahedral count (n-1)(2d(d-1)) + 2d; agrees with BFS only for d <= 2."""
    if n == 0:
        return 1
    return (n - 1) * (2 * d * (d - 1)) + 2 * d
