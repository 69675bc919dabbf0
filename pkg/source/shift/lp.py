"""Shift operator on truncations, lp norms, witness functions and certified
norm brackets.

A function lives on a :class:`~shift.graph.Truncation` and is zero outside
it. Values are either float64 or exact ``Fraction`` (object arrays); the two
modes never mix.

Example:
    >>> ball = witness_function(make_homogeneous("lattice", d=2), BallIndicator(3))
    >>> 3.0 < rayleigh_ratio(ball, Exponent(2)) <= 4.0
    True

With p = inf the indicator of any finite set A containing a vertex of maximal
degree together with its neighbors already attains the degree bound:
    >>> ray = truncate(make_homogeneous("ray"), 3)
    >>> chi = LpFunction.indicator(ray, ray.vertices[:3])
    >>> rayleigh_ratio(chi, Exponent.parse("inf"))
    2.0
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, TypeAlias

import numpy as np
from sympy import integer_nthroot

from .config import get_settings
from .errors import CertificationError, DomainError, ErrorCode
from .families import TreeFamily
from .graph import GraphFamily, Truncation, truncate
from .vertices import VertexId, render

logger = logging.getLogger(__name__)

Scalar: TypeAlias = float | Fraction

# Integer exponents above this fall back to floating powers.
_MAX_EXACT_POWER = 1000


# ─────────────────────────────────────────────────────────────────────────────
# Exponent
# ─────────────────────────────────────────────────────────────────────────────

@dataclass(frozen=True, slots=True)
class Exponent:
    """p in [1, inf] with its conjugate q = p / (p - 1)."""
    p: float

    def __post_init__(self):
        if math.isnan(self.p) or self.p < 1:
            raise DomainError.create(ErrorCode.LP_INVALID_EXPONENT, f"p must lie in [1, inf], got {self.p}")

    @classmethod
    def parse(cls, text: str | float) -> "Exponent":
        if isinstance(text, str):
            if text.strip().lower() in ("inf", "infinity", "oo"):
                return cls(math.inf)
            try:
                return cls(float(text))
            except ValueError:
                raise DomainError.create(ErrorCode.LP_INVALID_EXPONENT, f"Not an exponent: {text!r}") from None
        return cls(float(text))

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.p)

    @property
    def is_integer(self) -> bool:
        return not self.is_infinite and float(self.p).is_integer()

    @property
    def exact_power(self) -> int | None:
        """p as an int when exact rational powers stay affordable, else None."""
        if self.is_integer and self.p <= _MAX_EXACT_POWER:
            return int(self.p)
        return None

    @property
    def q(self) -> float:
        if self.p == 1:
            return math.inf
        if self.is_infinite:
            return 1.0
        return self.p / (self.p - 1)

    def to_json(self) -> float | str:
        return "inf" if self.is_infinite else self.p

    def __str__(self) -> str:
        return "inf" if self.is_infinite else f"{self.p:g}"


# ─────────────────────────────────────────────────────────────────────────────
# Functions on truncations
# ─────────────────────────────────────────────────────────────────────────────

@dataclass(frozen=True, eq=False)
class LpFunction:
    """Finitely supported function on a truncation."""
    trunc: Truncation
    values: np.ndarray = field(repr=False)
    exact: bool = False

    def __post_init__(self):
        if len(self.values) != len(self.trunc):
            raise DomainError.create(
                ErrorCode.LP_FOREIGN_TRUNCATION,
                f"{len(self.values)} values for a truncation of {len(self.trunc)} vertices",
            )

    @classmethod
    def zeros(cls, trunc: Truncation, exact: bool = False) -> "LpFunction":
        if exact:
            return cls(trunc, np.full(len(trunc), Fraction(0), dtype=object), True)
        return cls(trunc, np.zeros(len(trunc)), False)

    @classmethod
    def from_mapping(cls, trunc: Truncation, mapping: Mapping[VertexId, Scalar],
                     exact: bool | None = None) -> "LpFunction":
        if exact is None:
            exact = any(isinstance(x, (Fraction, int)) for x in mapping.values()) and not any(
                isinstance(x, float) for x in mapping.values()
            )
        f = cls.zeros(trunc, exact)
        for v, x in mapping.items():
            f.values[trunc.index_of(v)] = Fraction(x) if exact else float(x)
        return f

    @classmethod
    def indicator(cls, trunc: Truncation, vertices: Iterable[VertexId], exact: bool = False) -> "LpFunction":
        one = Fraction(1) if exact else 1.0
        return cls.from_mapping(trunc, {v: one for v in vertices}, exact)

    @classmethod
    def from_levels(cls, trunc: Truncation, by_level: Mapping[int, Scalar], exact: bool = False) -> "LpFunction":
        """Radial function: value by_level[|v|], zero on missing levels."""
        f = cls.zeros(trunc, exact)
        for i, lvl in enumerate(trunc.level):
            if lvl in by_level:
                f.values[i] = by_level[lvl]
        return f

    def value(self, v: VertexId) -> Scalar:
        return self.values[self.trunc.index_of(v)]

    @cached_property
    def support(self) -> np.ndarray:
        return np.flatnonzero(self.values != 0)

    @property
    def support_radius(self) -> int:
        """Largest level carrying a nonzero value; -1 for the zero function."""
        idx = self.support
        return int(self.trunc.levels[idx].max()) if len(idx) else -1

    @property
    def is_zero(self) -> bool:
        return len(self.support) == 0

    def _check_compatible(self, other: "LpFunction") -> None:
        if other.trunc is not self.trunc:
            raise DomainError.create(ErrorCode.LP_FOREIGN_TRUNCATION, "Functions live on different truncations")
        if other.exact != self.exact:
            raise DomainError.create(ErrorCode.LP_MIXED_MODES, "Cannot combine exact and floating functions")

    def __add__(self, other: "LpFunction") -> "LpFunction":
        self._check_compatible(other)
        return LpFunction(self.trunc, self.values + other.values, self.exact)

    def __sub__(self, other: "LpFunction") -> "LpFunction":
        self._check_compatible(other)
        return LpFunction(self.trunc, self.values - other.values, self.exact)

    def scale(self, alpha: Scalar) -> "LpFunction":
        if self.exact and isinstance(alpha, float):
            raise DomainError.create(ErrorCode.LP_MIXED_MODES, "Floating scalar applied to an exact function")
        return LpFunction(self.trunc, self.values * (Fraction(alpha) if self.exact else alpha), self.exact)

    def __rmul__(self, alpha: Scalar) -> "LpFunction":
        return self.scale(alpha)

    def as_float(self) -> np.ndarray:
        return self.values.astype(np.float64) if self.exact else self.values

    def to_record(self) -> dict[str, str | float]:
        """Nonzero values keyed by the canonical vertex text."""
        out = {}
        for i in self.support:
            x = self.values[i]
            out[render(self.trunc.vertices[i])] = str(x) if self.exact else float(x)
        return out


def apply_shift(f: LpFunction) -> tuple[LpFunction, int]:
    """(Sf)(u) = sum of f over the neighbors of u, with the validity radius.

    Every truncation vertex up to level R - 1 sees all its neighbors. When f
    vanishes on level R the whole of Sf lies inside the truncation and the
    validity radius is R itself.
    """
    trunc = f.trunc
    if f.exact:
        out = np.full(len(trunc), Fraction(0), dtype=object)
        for i, nbrs in enumerate(trunc.adjacency):
            acc = Fraction(0)
            for j in nbrs:
                acc += f.values[j]
            out[i] = acc
        sf = LpFunction(trunc, out, True)
    else:
        sf = LpFunction(trunc, trunc.shift_matrix @ f.values, False)
    validity = trunc.radius if f.support_radius + 1 <= trunc.radius else trunc.interior_radius
    return sf, validity


def pairing(f: LpFunction, g: LpFunction) -> Scalar:
    """Duality pairing: the sum of f(v) g(v)."""
    f._check_compatible(g)
    if f.exact:
        return sum((a * b for a, b in zip(f.values, g.values)), Fraction(0))
    return float(np.dot(f.values, g.values))


def _exact_root(x: Fraction, n: int) -> Fraction | None:
    num, num_exact = integer_nthroot(x.numerator, n)
    den, den_exact = integer_nthroot(x.denominator, n)
    return Fraction(int(num), int(den)) if num_exact and den_exact else None


def lp_power_sum(f: LpFunction, p: Exponent) -> Scalar:
    """The sum of |f(v)|^p; exact in rational mode for integer p."""
    if p.is_infinite:
        raise DomainError.create(ErrorCode.LP_INVALID_EXPONENT, "Power sums need finite p")
    k = p.exact_power
    if f.exact and k is not None:
        return sum((abs(x) ** k for x in f.values[f.support]), Fraction(0))
    return float(np.sum(np.abs(f.as_float()) ** p.p))


def lp_norm(f: LpFunction, p: Exponent) -> Scalar:
    """||f||_p; exact in rational mode for p in {1, inf} and for perfect integer roots."""
    if f.exact:
        if p.is_infinite:
            return max((abs(x) for x in f.values), default=Fraction(0))
        k = p.exact_power
        if k is not None:
            s = lp_power_sum(f, p)
            root = s if k == 1 else _exact_root(s, k)
            return root if root is not None else float(s) ** (1.0 / k)
    return float(np.linalg.norm(f.as_float(), ord=p.p))


# ─────────────────────────────────────────────────────────────────────────────
# Witness functions
# ─────────────────────────────────────────────────────────────────────────────

@dataclass(frozen=True, slots=True)
class BallIndicator:
    """f = 1 on |v| <= n."""
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise DomainError.create(ErrorCode.LP_INVALID_WITNESS, f"Ball radius must be >= 0, got {self.n}")

    @property
    def support_radius(self) -> int:
        return self.n


@dataclass(frozen=True, slots=True)
class TreeWeight:
    """f = (k-1)^(-|v|/p) on N < |v| <= n."""
    k: int
    p: float
    N: int
    n: int

    def __post_init__(self):
        if self.k < 2 or self.N < 0 or self.N >= self.n or self.p < 1:
            raise DomainError.create(
                ErrorCode.LP_INVALID_WITNESS,
                f"TreeWeight needs k >= 2, p >= 1 and 0 <= N < n, got k={self.k} p={self.p} N={self.N} n={self.n}",
            )

    @property
    def support_radius(self) -> int:
        return self.n

    def level_value(self, j: int) -> float:
        if not self.N < j <= self.n:
            return 0.0
        if math.isinf(self.p):
            return 1.0
        return (self.k - 1) ** (-j / self.p)


@dataclass(frozen=True, slots=True)
class PointMass:
    """f = indicator of a single vertex (the distinguished vertex by default)."""
    vertex: VertexId | None = None


WitnessKind: TypeAlias = BallIndicator | TreeWeight | PointMass

_MAX_LOCATE_RADIUS = 1024


def _locate(family: GraphFamily, v: VertexId) -> int:
    """Level of ``v`` found by growing truncations."""
    radius = 1
    while radius <= _MAX_LOCATE_RADIUS:
        trunc = truncate(family, radius)
        if v in trunc.index:
            return trunc.level[trunc.index[v]]
        radius *= 2
    raise DomainError.create(ErrorCode.LP_INVALID_WITNESS, f"{render(v)} not within {_MAX_LOCATE_RADIUS} of the root")


def witness_function(source: GraphFamily | Truncation, kind: WitnessKind) -> LpFunction:
    """The witness function on a truncation of radius >= support + 1.

    Given a family, a truncation of exactly that radius is built.
    """
    if isinstance(kind, PointMass):
        family = source.family if isinstance(source, Truncation) else source
        vertex = family.distinguished_vertex if kind.vertex is None else kind.vertex
        needed = _locate(family, vertex) + 1 if kind.vertex is not None else 1
    else:
        needed = kind.support_radius + 1
    if isinstance(source, Truncation):
        trunc = source
        if trunc.radius < needed:
            raise CertificationError.create(
                ErrorCode.LP_RADIUS_TOO_SMALL,
                f"Witness {kind} needs radius {needed}, truncation has {trunc.radius}",
            )
    else:
        trunc = truncate(source, needed)
    match kind:
        case BallIndicator(n=n):
            return LpFunction(trunc, (trunc.levels <= n).astype(np.float64))
        case TreeWeight():
            weights = np.array([kind.level_value(j) for j in range(trunc.radius + 1)])
            return LpFunction(trunc, weights[trunc.levels])
        case PointMass():
            return LpFunction.indicator(trunc, [vertex])


def rayleigh_ratio(f: LpFunction, p: Exponent) -> float:
    """||Sf||_p / ||f||_p, refused unless Sf fits entirely inside the truncation."""
    if f.is_zero:
        raise DomainError.create(ErrorCode.LP_INVALID_WITNESS, "Rayleigh ratio of the zero function")
    if f.support_radius + 1 > f.trunc.radius:
        raise CertificationError.create(
            ErrorCode.LP_RADIUS_TOO_SMALL,
            f"Support radius {f.support_radius} needs a truncation of radius "
            f"{f.support_radius + 1}, have {f.trunc.radius}",
        )
    sf, _ = apply_shift(f)
    return float(lp_norm(sf, p)) / float(lp_norm(f, p))


def _radial_profile(kind: WitnessKind) -> tuple[int, list[float]]:
    match kind:
        case BallIndicator(n=n):
            return n, [1.0] * (n + 1)
        case TreeWeight(n=n):
            return n, [kind.level_value(j) for j in range(n + 1)]
    raise DomainError.create(ErrorCode.LP_INVALID_WITNESS, f"{kind} is not a radial witness")


def radial_rayleigh_ratio(tree: TreeFamily, kind: WitnessKind, p: Exponent) -> float:
    """Rayleigh ratio of a radial witness on a level-regular tree.

    Radial functions stay radial under S:
    (Sf)_j = g(j-1) [j >= 1] + beta(j) g(j+1), and level j holds gamma(j)
    vertices, so no vertex is ever materialized.
    """
    n, g = _radial_profile(kind)
    g = np.array(g + [0.0, 0.0])
    beta = np.array([tree.beta(j) for j in range(n + 2)], dtype=np.float64)
    gamma = np.concatenate(([1.0], np.cumprod(beta[: n + 1])))
    sf = beta * g[1: n + 3]
    sf[1:] += g[: n + 1]
    if p.is_infinite:
        return float(np.max(np.abs(sf)) / np.max(np.abs(g)))
    num = np.sum(gamma * np.abs(sf) ** p.p)
    den = np.sum(gamma * np.abs(g[: n + 2]) ** p.p)
    return float((num / den) ** (1.0 / p.p))


# ─────────────────────────────────────────────────────────────────────────────
# Norm brackets
# ─────────────────────────────────────────────────────────────────────────────

@dataclass(frozen=True, slots=True)
class NormBracket:
    """lower <= ||S||_p <= upper."""
    family: str
    p: Exponent
    lower: float
    upper: float
    witness: dict
    formulas: tuple[str, ...] = ()
    skipped: tuple[str, ...] = ()

    def to_record(self) -> dict:
        return {
            "family": self.family,
            "p": self.p.to_json(),
            "lower": self.lower,
            "upper": self.upper,
            "witness": self.witness,
            "formulas": list(self.formulas),
            "skipped": list(self.skipped),
        }


def tree_norm_bound(k: int, p: Exponent) -> float:
    """(k-1)^(1/p) + (k-1)^(1/q) for trees of maximal degree k, 1 < p < inf."""
    if not 1 < p.p < math.inf:
        raise DomainError.create(ErrorCode.LP_INVALID_EXPONENT, f"Tree bound needs 1 < p < inf, got {p}")
    return (k - 1) ** (1 / p.p) + (k - 1) ** (1 / p.q)


def _max_degree_level(tree: TreeFamily, budget: int) -> int:
    degrees = [tree.beta(j) + (j > 0) for j in range(budget + 1)]
    return degrees.index(max(degrees))


def _tree_witnesses(tree: TreeFamily, p: Exponent, n: int) -> list[tuple[float, dict]]:
    out = [(radial_rayleigh_ratio(tree, BallIndicator(n), p), {"kind": "ball", "n": n})]
    if not p.is_infinite and n >= 1:
        k = tree.degree_bound
        tw = TreeWeight(k, p.p, 0, n)
        out.append((radial_rayleigh_ratio(tree, tw, p), {"kind": "tree-weight", "k": k, "N": 0, "n": n}))
    if p.p == 1:
        level = _max_degree_level(tree, n)
        vertex = tree.distinguished_vertex
        for _ in range(level):
            vertex = vertex.child(0)
        trunc = truncate(tree, level + 1)
        f = witness_function(trunc, PointMass(vertex))
        out.append((rayleigh_ratio(f, p), {"kind": "point-mass", "vertex": render(vertex)}))
    return out


def _graph_witnesses(family: GraphFamily, p: Exponent, n: int) -> list[tuple[float, dict]]:
    trunc = truncate(family, n + 1)
    ball = witness_function(trunc, BallIndicator(n))
    out = [(rayleigh_ratio(ball, p), {"kind": "ball", "n": n})]
    if p.p == 1:
        interior = [i for i in range(len(trunc)) if trunc.level[i] <= n]
        best = max(interior, key=lambda i: len(trunc.adjacency[i]))
        f = LpFunction.indicator(trunc, [trunc.vertices[best]])
        out.append((rayleigh_ratio(f, p), {"kind": "point-mass", "vertex": render(trunc.vertices[best])}))
    return out


def norm_bounds(family: GraphFamily, p: Exponent, n: int) -> NormBracket:
    """Certified bracket for ||S||_p.

    Upper: the degree bound, sharpened by the tree bound for trees when
    1 < p < inf. Lower: the best witness ratio with support radius <= n.
    """
    if n < 0:
        raise DomainError.create(ErrorCode.LP_INVALID_WITNESS, f"Witness budget must be >= 0, got {n}")
    uppers = {"degree": float(family.degree_bound)}
    skipped: list[str] = []
    if isinstance(family, TreeFamily):
        if 1 < p.p < math.inf:
            uppers["tree"] = tree_norm_bound(family.degree_bound, p)
        else:
            logger.warning(f"Tree bound skipped on {family.label}: p={p} is outside 1 < p < inf")
            skipped.append("tree")
        witnesses = _tree_witnesses(family, p, n)
    else:
        witnesses = _graph_witnesses(family, p, n)
    upper = min(uppers.values())
    lower, witness = max(witnesses, key=lambda w: w[0])
    witness = {**witness, "ratio": lower}
    if lower > upper + get_settings().bracket_slack:
        raise CertificationError.create(
            ErrorCode.LP_INVALID_WITNESS,
            f"Witness ratio {lower} exceeds upper bound {upper} on {family.label}",
        )
    logger.debug(f"Bracket for {family.label} at p={p}: [{lower}, {upper}]")
    return NormBracket(
        family.label, p, lower, upper, witness,
        formulas=tuple(sorted(k for k, v in uppers.items() if v == upper)),
        skipped=tuple(skipped),
    )


def power_iteration_norm(trunc: Truncation, iters: int = 200, tol: float = 1e-10, seed: int = 15210) -> float:
    """Spectral norm estimate of the truncation's shift matrix (p = 2).

    A finite-section estimate, not a certified bound: it never enters a
    :class:`NormBracket`.
    """
    a = trunc.shift_matrix
    rng = np.random.default_rng(seed)
    x = rng.random(a.shape[1])
    x /= np.linalg.norm(x)
    estimate = 0.0
    for _ in range(iters):
        y = a @ (a @ x)
        ynorm = float(np.linalg.norm(y))
        if ynorm == 0:
            return 0.0
        x = y / ynorm
        previous, estimate = estimate, math.sqrt(ynorm)
        if abs(estimate - previous) < tol:
            break
    return estimate
