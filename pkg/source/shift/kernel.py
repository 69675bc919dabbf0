"""Kernel elements of the shift on leafless trees.

Both constructions put the value 1 on the root, vanish on odd levels and
cancel level by level: a vertex w at odd level sees f(Par(w)) from above and
beta(w) equal shares of -f(Par(w)) / beta(w) from below.

Example:
    >>> f = alternating_kernel(2, 4, depth=4)
    >>> f.value(TreePath((0, 0)))
    Fraction(-1, 4)

Trees with leaves fall outside this module. For them a finite path between
two leaves at even distance through degree-2 vertices already carries a
kernel element with alternating values +1, 0, -1, 0, ... on the path.
"""

import logging
import math
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction

import numpy as np

from .config import get_settings
from .errors import CertificationError, DomainError, ErrorCode
from .families import (
    AlmostRegularTree, AlternatingTree, ExplicitBeta, StretchedTree, TreeFamily, make_tree,
)
from .graph import GraphFamily, Truncation, truncate
from .lp import Exponent, LpFunction, Scalar, apply_shift
from .vertices import TreePath

logger = logging.getLogger(__name__)

# Exponents given as short decimals are compared as exact integer powers.
_EXACT_DENOMINATOR = 1000
_EXACT_NUMERATOR = 10_000


@dataclass(frozen=True, slots=True)
class BranchingBounds:
    """Essential child-count bounds: beta in [m, M] on every level >= 2N."""
    m: int
    M: int
    N: int = 0

    def __post_init__(self):
        if not 1 <= self.m <= self.M or self.N < 0:
            raise DomainError.create(
                ErrorCode.KERNEL_INVALID_SPEC,
                f"Branching bounds need 1 <= m <= M and N >= 0, got m={self.m} M={self.M} N={self.N}",
            )


class Verdict(StrEnum):
    TRIVIAL = "Trivial"
    NONTRIVIAL = "Nontrivial"
    UNDETERMINED = "Undetermined"


@dataclass(frozen=True, slots=True)
class KernelClass:
    m: int
    M: int
    p: Exponent
    verdict: Verdict
    theorem: str

    def to_record(self) -> dict:
        return {"m": self.m, "M": self.M, "p": self.p.to_json(),
                "verdict": self.verdict.value, "theorem": self.theorem}


@dataclass(frozen=True, slots=True)
class LevelPowerSums:
    """sigma_k = sum of |f(u)|^p over |u| = 2k."""
    p: Exponent
    sums: tuple[Scalar, ...]

    @property
    def ratios(self) -> tuple[Scalar | None, ...]:
        """sigma_{k+1} / sigma_k, None where sigma_k = 0."""
        return tuple(
            (b / a if a else None) for a, b in zip(self.sums, self.sums[1:])
        )

    def to_csv(self) -> str:
        rows = ["k,sigma_k,ratio"]
        ratios = self.ratios + (None,)
        for k, (s, r) in enumerate(zip(self.sums, ratios)):
            rows.append(f"{k},{_fmt(s)},{'' if r is None else _fmt(r)}")
        return "\n".join(rows) + "\n"

    def to_record(self) -> dict:
        return {
            "p": self.p.to_json(),
            "sums": [_json_scalar(s) for s in self.sums],
            "ratios": [None if r is None else _json_scalar(r) for r in self.ratios],
        }


def _fmt(x: Scalar) -> str:
    return str(x) if isinstance(x, Fraction) else repr(float(x))


def _json_scalar(x: Scalar) -> float | str:
    return str(x) if isinstance(x, Fraction) else float(x)


def _check_depth(depth: int) -> None:
    if depth < 0 or depth % 2:
        raise DomainError.create(ErrorCode.KERNEL_ODD_DEPTH, f"Kernel depth must be even and >= 0, got {depth}")


def _tree_truncation(tree: TreeFamily, depth: int, trunc: Truncation | None) -> Truncation:
    if trunc is None:
        return truncate(tree, depth + 1)
    if trunc.family != tree:
        raise DomainError.create(ErrorCode.LP_FOREIGN_TRUNCATION, f"Truncation is not of {tree.label}")
    if trunc.radius < depth + 1:
        raise CertificationError.create(
            ErrorCode.LP_RADIUS_TOO_SMALL,
            f"Kernel depth {depth} needs a truncation of radius {depth + 1}, have {trunc.radius}",
        )
    return trunc


def alternating_kernel(m: int, M: int, depth: int, trunc: Truncation | None = None,
                       exact: bool = True) -> LpFunction:
    """f(v) = (-M)^(-|v|/2) on even levels up to ``depth``, 0 on odd levels."""
    _check_depth(depth)
    tree = make_tree(AlternatingTree(m, M))
    trunc = _tree_truncation(tree, depth, trunc)
    by_level = {2 * k: Fraction(1, (-M) ** k) for k in range(depth // 2 + 1)}
    if not exact:
        by_level = {level: float(x) for level, x in by_level.items()}
    return LpFunction.from_levels(trunc, by_level, exact=exact)


def inductive_kernel(tree: GraphFamily, depth: int, trunc: Truncation | None = None,
                     exact: bool = True) -> LpFunction:
    """f(root) = 1, f = 0 on level 1, f(v) = -f(Par^2(v)) / beta(Par(v))."""
    if not isinstance(tree, TreeFamily):
        raise DomainError.create(ErrorCode.KERNEL_NOT_TREE, f"{tree.label} is not a rooted tree")
    _check_depth(depth)
    trunc = _tree_truncation(tree, depth, trunc)
    f = LpFunction.zeros(trunc, exact=exact)
    for i, v in enumerate(trunc.vertices):
        level = trunc.level[i]
        if level == 0:
            f.values[i] = Fraction(1) if exact else 1.0
        elif level % 2 == 0 and level <= depth:
            parent = trunc.index_of(v.parent())
            children = len(trunc.adjacency[parent]) - 1
            if children < 1:
                raise DomainError.create(ErrorCode.KERNEL_LEAF, f"Leaf at level {level - 1}")
            f.values[i] = -f.values[trunc.index_of(v.parent().parent())] / children
    logger.debug(f"Inductive kernel on {tree.label} to depth {depth}: {len(f.support)} nonzero values")
    return f


@dataclass(frozen=True, slots=True)
class KernelResidual:
    """Largest |Sf| over interior vertices and whether it counts as zero."""
    max_residual: Scalar
    exact: bool
    vanishes: bool


def kernel_residual(f: LpFunction) -> KernelResidual:
    """Exact functions must give Sf = 0; floating ones |Sf| < kernel_zero_tol."""
    sf, _ = apply_shift(f)
    interior = np.flatnonzero(f.trunc.levels <= f.trunc.interior_radius)
    zero = Fraction(0) if f.exact else 0.0
    residual = max((abs(sf.values[i]) for i in interior), default=zero)
    vanishes = residual == 0 if f.exact else residual < get_settings().kernel_zero_tol
    if not vanishes:
        logger.warning(f"Kernel candidate on {f.trunc.family.label} has interior residual {float(residual):.3g}")
    return KernelResidual(residual if f.exact else float(residual), f.exact, bool(vanishes))


def level_power_sums(f: LpFunction, p: Exponent) -> LevelPowerSums:
    """Even-level power sums of a kernel-shaped function; exact for integer p."""
    if p.is_infinite:
        raise DomainError.create(ErrorCode.KERNEL_INFINITE_EXPONENT, "Level power sums need finite p; use sup norms")
    levels = f.trunc.levels
    if np.any((levels[f.support] % 2) == 1):
        raise DomainError.create(ErrorCode.KERNEL_NOT_KERNEL_SHAPED, "Function does not vanish on odd levels")
    top = max(f.support_radius, 0) // 2
    k = p.exact_power
    if f.exact and k is not None:
        sums = [Fraction(0)] * (top + 1)
        for i in f.support:
            sums[levels[i] // 2] += abs(f.values[i]) ** k
    else:
        mags = np.abs(f.as_float()) ** p.p
        sums = [float(np.sum(mags[levels == 2 * j])) for j in range(top + 1)]
    return LevelPowerSums(p, tuple(sums))


def _exact_exponent(p: float) -> Fraction | None:
    q = Fraction(repr(p))
    return q if q.denominator <= _EXACT_DENOMINATOR and q.numerator <= _EXACT_NUMERATOR else None


def _power_le(base: int, p: float, bound: int) -> bool:
    """base^(p-1) <= bound, exactly when p is a short decimal."""
    q = _exact_exponent(p)
    if q is None:
        return (p - 1) * math.log(base) <= math.log(bound) + 1e-15
    e = q - 1
    return base ** e.numerator <= bound ** e.denominator


def classify_kernel(bounds: BranchingBounds, p: Exponent) -> KernelClass:
    """Kernel triviality from the essential branching bounds alone.

    Trivial when M = 1 with p finite, or M^(p-1) <= m (p <= 1 + log_M m).
    Nontrivial when m > 1 with m^(p-1) > M (p > 1 + log_m M), or p = inf.
    Anything in between is left open.
    """
    m, M = bounds.m, bounds.M
    if p.is_infinite:
        verdict, theorem = Verdict.NONTRIVIAL, "nontrivial: p = inf, bounded leafless tree"
    elif M == 1:
        verdict, theorem = Verdict.TRIVIAL, "trivial: M = 1"
    elif _power_le(M, p.p, m):
        verdict, theorem = Verdict.TRIVIAL, "trivial: p <= 1 + log_M(m)"
    elif m > 1 and not _power_le(m, p.p, M):
        verdict, theorem = Verdict.NONTRIVIAL, "nontrivial: p > 1 + log_m(M)"
    else:
        verdict, theorem = Verdict.UNDETERMINED, "open: 1 + log_M(m) < p <= 1 + log_m(M)"
    return KernelClass(m, M, p, verdict, theorem)


def tree_bounds(tree: TreeFamily) -> BranchingBounds:
    """Essential branching bounds of a shipped tree family."""
    match tree.spec:
        case AlternatingTree(m=m, M=M):
            return BranchingBounds(min(m, M), max(m, M), 0)
        case AlmostRegularTree(k=k):
            return BranchingBounds(k - 1, k - 1, 0 if tree.spec.root_count == k - 1 else 1)
        case StretchedTree(M=M):
            return BranchingBounds(1, M, 0)
        case ExplicitBeta(levels=levels, default=d):
            return BranchingBounds(d, d, (len(levels) + 1) // 2)


@dataclass(frozen=True, slots=True)
class SandwichReport:
    """Both geometric level-sum bounds, checked for every k >= N."""
    lower: tuple[float, ...]
    upper: tuple[float, ...]
    lower_holds: bool
    upper_holds: bool


def sandwich_bounds(sums: LevelPowerSums, bounds: BranchingBounds, p: Exponent) -> SandwichReport:
    """Lower C (m / M^(p-1))^k and upper sigma_N M^(k-N) / m^((p-1)(k-N)).

    The lower constant is C = (m / M^(p-1))^(-N) sigma_N, so both bounds are
    tight at k = N.
    """
    m, M, N = bounds.m, bounds.M, bounds.N
    if N >= len(sums.sums):
        raise DomainError.create(ErrorCode.KERNEL_INVALID_SPEC, f"Need level sums beyond k = {N}")
    k = p.exact_power
    exact = isinstance(sums.sums[N], Fraction) and k is not None and p.p == sums.p.p
    if exact:
        down, up = Fraction(m, M ** (k - 1)), Fraction(M, m ** (k - 1))
    else:
        down = m * np.float_power(M, 1 - p.p)
        up = M * np.float_power(m, 1 - p.p)
    sigma_n = sums.sums[N]
    ks = range(N, len(sums.sums))
    lower = [sigma_n * down ** (k - N) for k in ks]
    upper = [sigma_n * up ** (k - N) for k in ks]
    tol = 0 if exact else get_settings().float_tol
    observed = [sums.sums[k] for k in ks]
    lower_holds = all(s >= lo - tol * abs(lo) for s, lo in zip(observed, lower))
    upper_holds = all(s <= hi + tol * abs(hi) for s, hi in zip(observed, upper))
    return SandwichReport(
        tuple(float(x) for x in lower), tuple(float(x) for x in upper), lower_holds, upper_holds,
    )


def stretched_partial_sums(M: int, t: str | tuple[int, ...], p: Exponent, J: int) -> list[float]:
    """S_J = sum over j <= J of t_j / M^((j-1) p)."""
    if J < 1:
        raise DomainError.create(ErrorCode.KERNEL_INVALID_SPEC, f"J must be >= 1, got {J}")
    if p.is_infinite:
        raise DomainError.create(ErrorCode.KERNEL_INFINITE_EXPONENT, "Partial sums need finite p")
    spec = StretchedTree(M, t)
    k = p.exact_power
    out, acc = [], (Fraction(0) if k is not None else 0.0)
    for j in range(1, J + 1):
        if k is not None:
            acc += Fraction(spec.t_value(j), M ** ((j - 1) * k))
        else:
            acc += spec.t_value(j) * float(M) ** (-(j - 1) * p.p)
        out.append(float(acc))
    return out
