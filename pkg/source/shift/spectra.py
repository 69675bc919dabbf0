"""Eigenvalues and spectra of finite graphs with an infinite tail, and of the
infinite comb.

On the tail an eigenvector satisfies f(u_{j-1}) + f(u_{j+1}) = lambda f(u_j),
so f(u_j) = C_1 b^j + C_2 b^-j with b + 1/b = lambda. Square summability
leaves two branches: the tail part vanishes (zero branch, |lambda| <= 2
possible) or f(u_j) = b^j with |b| < 1 (tail branch, |lambda| > 2). The
essential spectrum is [-2, 2] for every such graph.
"""

import logging
import math
from dataclasses import dataclass, replace
from enum import StrEnum

import numpy as np
from scipy.sparse.linalg import eigsh

from .config import get_settings
from .errors import DomainError, ErrorCode
from .families import TailKind, TailShape, make_tail_graph
from .graph import GraphFamily, truncate
from .lp import LpFunction, apply_shift
from .poly import CombH, KiteP, family_polynomial, roots_in_open_interval
from .vertices import TailRole

logger = logging.getLogger(__name__)

ESSENTIAL = (-2.0, 2.0)
DEFAULT_DEPTH = 60
SQRT2 = math.sqrt(2.0)
COMB_BANDS = ((-1.0 - SQRT2, 1.0 - SQRT2), (-1.0 + SQRT2, 1.0 + SQRT2))

# Largest truncation diagonalized densely.
_DENSE_LIMIT = 2000


class Branch(StrEnum):
    ZERO = "zero"
    TAIL = "tail"


@dataclass(frozen=True, slots=True)
class TailEigenpair:
    lam: float
    b: float | None
    branch: Branch
    residual: float = math.nan

    @property
    def embedded(self) -> bool:
        return abs(self.lam) <= 2.0

    def to_record(self) -> dict:
        return {
            "lambda": self.lam,
            "b": self.b,
            "branch": self.branch.value,
            "residual": self.residual,
            "embedded": self.embedded,
        }


@dataclass(frozen=True, slots=True)
class Spectrum:
    """Closed essential intervals plus eigenvalues sorted by lambda."""
    essential: tuple[tuple[float, float], ...]
    point: tuple[TailEigenpair, ...] = ()

    def eigenvalues(self) -> list[float]:
        return [pair.lam for pair in self.point]

    def union(self) -> list[float]:
        """Eigenvalues outside the essential intervals, deduplicated."""
        tol = get_settings().float_tol
        out: list[float] = []
        for lam in self.eigenvalues():
            if any(lo - tol <= lam <= hi + tol for lo, hi in self.essential):
                continue
            if not out or abs(lam - out[-1]) > tol:
                out.append(lam)
        return out

    def to_record(self) -> dict:
        return {
            "essential": [list(iv) for iv in self.essential],
            "point": [pair.to_record() for pair in self.point],
        }


@dataclass(frozen=True, slots=True)
class Membership:
    lam: float
    in_spectrum: bool
    criterion: bool
    interval: bool

    def to_record(self) -> dict:
        return {"lambda": self.lam, "in_spectrum": self.in_spectrum,
                "criterion": self.criterion, "interval": self.interval}


def tail_parameter(lam: float) -> float:
    """The root b of t^2 - lambda t + 1 with |b| < 1; sign(b) = sign(lambda)."""
    if abs(lam) <= 2.0:
        raise DomainError.create(ErrorCode.SPEC_NO_DECAY, f"|lambda| = {abs(lam)} <= 2 admits no decaying tail")
    s = math.copysign(1.0, lam)
    return 2.0 / (lam + s * math.sqrt(lam * lam - 4.0))


def zero_branch_eigenvalues(kind: TailKind) -> list[float]:
    """Eigenvalues whose eigenvectors vanish on the tail."""
    n = kind.n
    match kind.shape:
        case TailShape.KITE:
            return [2.0 * math.cos(2.0 * math.pi * j / (n + 1)) for j in range(1, n // 2 + 1)]
        case TailShape.FLY_SWATTER:
            return [-1.0]
        case TailShape.COMB:
            return []


def _tail_roots(kind: TailKind) -> list[float]:
    n = kind.n
    match kind.shape:
        case TailShape.KITE:
            return roots_in_open_interval(family_polynomial(KiteP(n)), -1.0, 1.0, exclude_zero=True)
        case TailShape.FLY_SWATTER:
            return [-0.5 + 0.5 * math.sqrt((n + 3) / (n - 1))]
        case TailShape.COMB:
            return roots_in_open_interval(family_polynomial(CombH(n)), -1.0, 1.0, exclude_zero=True)


def tail_branch_eigenvalues(kind: TailKind, depth: int = DEFAULT_DEPTH) -> list[TailEigenpair]:
    """Eigenpairs lambda = b + 1/b, each certified by a synthesized eigenvector."""
    pairs = []
    for b in _tail_roots(kind):
        pair = TailEigenpair(b + 1.0 / b, b, Branch.TAIL)
        _, residual = synthesize_eigenvector(kind, pair, max(depth, kind.n + 5))
        pairs.append(replace(pair, residual=residual))
    logger.debug(f"{len(pairs)} tail-branch eigenvalues for {kind.shape}(n={kind.n})")
    return sorted(pairs, key=lambda pr: pr.lam)


def _kite_zero_mode(n: int, lam: float) -> list[float]:
    tol = get_settings().float_tol
    for j in range(1, n // 2 + 1):
        theta = 2.0 * math.pi * j / (n + 1)
        if abs(2.0 * math.cos(theta) - lam) < tol:
            return [math.sin(theta * k) for k in range(n + 1)]
    raise DomainError.create(ErrorCode.SPEC_WRONG_BRANCH, f"{lam} is not a zero-branch eigenvalue of the kite")


def _finite_values(kind: TailKind, pair: TailEigenpair) -> dict[tuple[TailRole, int], float]:
    """Eigenvector values on the finite part H."""
    n, lam, b = kind.n, pair.lam, pair.b
    if pair.branch is Branch.ZERO:
        match kind.shape:
            case TailShape.KITE:
                return {(TailRole.V, k): x for k, x in enumerate(_kite_zero_mode(n, lam))}
            case TailShape.FLY_SWATTER:
                if abs(lam + 1.0) > get_settings().float_tol:
                    raise DomainError.create(ErrorCode.SPEC_WRONG_BRANCH, f"{lam} is not -1")
                return {(TailRole.V, 1): 1.0, (TailRole.V, 2): -1.0}
            case TailShape.COMB:
                raise DomainError.create(ErrorCode.SPEC_WRONG_BRANCH, "The comb has no zero-branch eigenvalues")
    match kind.shape:
        case TailShape.KITE:
            den = 1.0 + b ** (n + 1)
            return {(TailRole.V, k): (b**k + b ** (n - k + 1)) / den for k in range(n + 1)}
        case TailShape.FLY_SWATTER:
            x = 1.0 / (lam - (n - 1))
            return {(TailRole.V, 0): 1.0, **{(TailRole.V, i): x for i in range(1, n + 1)}}
        case TailShape.COMB:
            mu = lam - 1.0 / lam
            x = {n: 1.0, n - 1: mu - b}
            for j in range(n - 1, 1, -1):
                x[j - 1] = mu * x[j] - x[j + 1]
            return {
                **{(TailRole.V, j): x[j] for j in range(1, n + 1)},
                **{(TailRole.W, j): x[j] / lam for j in range(1, n + 1)},
            }


def synthesize_eigenvector(kind: TailKind, pair: TailEigenpair, depth: int = DEFAULT_DEPTH) -> tuple[LpFunction, float]:
    """The eigenvector on a truncation of radius ``depth`` and its residual.

    Tail branch: f(v_0) = 1 (kite, fly-swatter) or f(v_n) = 1 (comb) and
    f(u_j) = b^j. Zero branch: the tail is identically 0. The residual is the
    largest |(Sf)(v) - lambda f(v)| over interior vertices.
    """
    if depth < kind.n + 5:
        raise DomainError.create(ErrorCode.SPEC_DEPTH_TOO_SMALL, f"Depth {depth} < n + 5 = {kind.n + 5}")
    finite = _finite_values(kind, pair)
    trunc = truncate(make_tail_graph(kind), depth)
    values = np.zeros(len(trunc))
    for i, v in enumerate(trunc.vertices):
        if v.role is TailRole.U:
            values[i] = pair.b ** v.index if pair.branch is Branch.TAIL else 0.0
        else:
            values[i] = finite.get((v.role, v.index), 0.0)
    f = LpFunction(trunc, values)
    sf, _ = apply_shift(f)
    interior = trunc.levels <= trunc.interior_radius
    residual = float(np.max(np.abs(sf.values - pair.lam * f.values)[interior]))
    return f, residual


def full_spectrum(kind: TailKind, depth: int = DEFAULT_DEPTH) -> Spectrum:
    """[-2, 2] together with every certified eigenvalue."""
    zero = []
    if kind.shape is not TailShape.COMB:
        for lam in zero_branch_eigenvalues(kind):
            pair = TailEigenpair(lam, None, Branch.ZERO)
            _, residual = synthesize_eigenvector(kind, pair, max(depth, kind.n + 5))
            zero.append(replace(pair, residual=residual))
    point = sorted(zero + tail_branch_eigenvalues(kind, depth), key=lambda pr: pr.lam)
    return Spectrum((ESSENTIAL,), tuple(point))


def _criterion(lam: float, tol: float) -> bool:
    return lam != 0 and abs(lam - 1.0 / lam) <= 2.0 + tol


def _in_bands(lam: float, tol: float) -> bool:
    return any(lo - tol <= lam <= hi + tol for lo, hi in COMB_BANDS)


def infinite_comb_spectrum(lam: float | None = None) -> Spectrum | Membership:
    """The two spectral bands, or membership of ``lam``.

    lambda belongs to the spectrum iff lambda != 0 and lambda - 1/lambda lies
    in [-2, 2]; there are no eigenvalues.
    """
    if lam is None:
        return Spectrum(COMB_BANDS, ())
    tol = 1e-12
    criterion, interval = _criterion(lam, tol), _in_bands(lam, tol)
    if criterion != interval:
        logger.warning(f"Comb membership criteria disagree at lambda={lam!r}")
    return Membership(lam, criterion, criterion, interval)


def finite_section_eigenvalues(family: GraphFamily | TailKind, radius: int, k: int = 6) -> list[float]:
    """Eigenvalues of the adjacency matrix of a truncation, ascending.

    Small truncations are diagonalized densely; larger ones report the ``k``
    eigenvalues at each end of the spectrum.
    """
    if isinstance(family, TailKind):
        family = make_tail_graph(family)
    a = truncate(family, radius).shift_matrix
    n = a.shape[0]
    if n <= _DENSE_LIMIT:
        return [float(x) for x in np.linalg.eigvalsh(a.toarray())]
    vals = eigsh(a.astype(np.float64), k=min(2 * k, n - 1), which="BE", return_eigenvectors=False)
    return sorted(float(x) for x in vals)

