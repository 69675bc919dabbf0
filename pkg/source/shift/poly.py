"""Exact polynomial families and real-root isolation on open intervals.

Coefficients are exact integers (or rationals), lowest degree first. Root
isolation scans a uniform grid and bisects every sign change; signs are
evaluated exactly at rational points, so cancellation in high-degree
polynomials never hides a sign change. Roots of even multiplicity produce no
sign change and may be missed.

Example:
    >>> roots_in_open_interval(family_polynomial(KiteP(2)), -1, 1)
    [0.6180339887...]
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import TypeAlias

import sympy
from sympy import Poly, Rational, Symbol

from .config import get_settings
from .errors import DomainError, ErrorCode

logger = logging.getLogger(__name__)

X = Symbol("x")

Coefficient: TypeAlias = int | Fraction


@dataclass(frozen=True, slots=True)
class Polynomial:
    """Ascending coefficients with a nonzero leading entry; () is the zero polynomial."""
    coeffs: tuple[Coefficient, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Coefficient:
        return self.coeffs[-1] if self.coeffs else 0

    def eval(self, x: float | int | Fraction) -> float | Fraction:
        """Horner evaluation; exact for rational x."""
        acc: float | Fraction = Fraction(0) if isinstance(x, (int, Fraction)) else 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __call__(self, x: float | int | Fraction) -> float | Fraction:
        return self.eval(x)

    def to_sympy(self) -> Poly:
        coeffs = [Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else c
                  for c in reversed(self.coeffs)]
        return Poly(coeffs or [0], X, domain="QQ" if any(isinstance(c, Fraction) for c in self.coeffs) else "ZZ")

    @classmethod
    def from_sympy(cls, poly: Poly) -> "Polynomial":
        coeffs = []
        for c in reversed(poly.all_coeffs()):
            c = sympy.Rational(c)
            coeffs.append(int(c.p) if c.q == 1 else Fraction(int(c.p), int(c.q)))
        return cls(tuple(coeffs))

    def integer_coeffs(self) -> tuple[int, ...]:
        """Coefficients scaled by a positive common denominator."""
        lcm = math.lcm(*(c.denominator for c in self.coeffs if isinstance(c, Fraction))) if any(
            isinstance(c, Fraction) for c in self.coeffs) else 1
        return tuple(int(c * lcm) for c in self.coeffs)

    def to_record(self) -> dict:
        return {"coefficients": [c if isinstance(c, int) else str(c) for c in self.coeffs],
                "degree": self.degree}

    def __str__(self) -> str:
        return str(self.to_sympy().as_expr())


# ─────────────────────────────────────────────────────────────────────────────
# Families
# ─────────────────────────────────────────────────────────────────────────────

@dataclass(frozen=True, slots=True)
class KiteP:
    """x^(n+1) + 2x^2 - 1, the tail equation of the kite."""
    n: int


@dataclass(frozen=True, slots=True)
class CombH:
    """h_1 = 1, h_2 = -x^6 - x^4 + 1,
    h_n = (x^4 + x^2 + 1) h_{n-1} - x^2 (x^2 + 1)^2 h_{n-2}."""
    n: int


PolyFamily: TypeAlias = KiteP | CombH


@lru_cache(maxsize=None)
def _comb_h(n: int) -> Poly:
    if n == 1:
        return Poly(1, X, domain="ZZ")
    if n == 2:
        return Poly(-X**6 - X**4 + 1, X, domain="ZZ")
    a = Poly(X**4 + X**2 + 1, X, domain="ZZ")
    b = Poly(X**2 * (X**2 + 1) ** 2, X, domain="ZZ")
    return a * _comb_h(n - 1) - b * _comb_h(n - 2)


def family_polynomial(kind: PolyFamily) -> Polynomial:
    match kind:
        case KiteP(n=n):
            if n < 2:
                raise DomainError.create(ErrorCode.POLY_INVALID_FAMILY, f"KiteP needs n >= 2, got {n}")
            coeffs = [0] * (n + 2)
            coeffs[0], coeffs[2] = -1, 2
            coeffs[n + 1] += 1
            return Polynomial(tuple(coeffs))
        case CombH(n=n):
            if n < 1:
                raise DomainError.create(ErrorCode.POLY_INVALID_FAMILY, f"CombH needs n >= 1, got {n}")
            return Polynomial.from_sympy(_comb_h(n))
    raise DomainError.create(ErrorCode.POLY_INVALID_FAMILY, f"Unknown polynomial family {kind!r}")


def comb_determinant(n: int, b: float | Fraction) -> float | Fraction:
    """P_n(b) with lambda = b + 1/b, so that h_n(b) = (b (b^2 + 1))^n P_n(b).

    P_1 = lambda - 1/lambda - b, P_2 = h_2(b) / (b (b^2 + 1))^2 and
    P_n = (lambda - 1/lambda) P_{n-1} - P_{n-2}.
    """
    if n < 1:
        raise DomainError.create(ErrorCode.POLY_INVALID_FAMILY, f"Determinant needs n >= 1, got {n}")
    if b == 0:
        raise DomainError.create(ErrorCode.SPEC_NO_DECAY, "Tail parameter b must be nonzero")
    lam = b + 1 / b
    mu = lam - 1 / lam
    p1 = mu - b
    if n == 1:
        return p1
    p2 = (-b**6 - b**4 + 1) / (b * (b**2 + 1)) ** 2
    prev, cur = p1, p2
    for _ in range(n - 2):
        prev, cur = cur, mu * cur - prev
    return cur


# ─────────────────────────────────────────────────────────────────────────────
# Root isolation
# ─────────────────────────────────────────────────────────────────────────────

def _sign_at(coeffs: tuple[int, ...], x: Fraction) -> int:
    """Sign of the polynomial at x = k/q by integer Horner on k and q."""
    k, q = x.numerator, x.denominator
    acc, qpow = coeffs[-1], 1
    for c in reversed(coeffs[:-1]):
        qpow *= q
        acc = acc * k + c * qpow
    return (acc > 0) - (acc < 0)


def _bisect(coeffs: tuple[int, ...], lo: Fraction, hi: Fraction, s_lo: int, tol: Fraction) -> Fraction:
    while hi - lo > tol:
        mid = (lo + hi) / 2
        s = _sign_at(coeffs, mid)
        if s == 0:
            return mid
        if s == s_lo:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def _scan(coeffs: tuple[int, ...], a: Fraction, b: Fraction, points: int, tol: Fraction) -> list[Fraction]:
    lo, hi = a + tol, b - tol
    if lo >= hi:
        return []
    step = (hi - lo) / (points - 1)
    roots: list[Fraction] = []
    x_prev, s_prev = lo, _sign_at(coeffs, lo)
    if s_prev == 0:
        roots.append(lo)
    for i in range(1, points):
        x = lo + i * step
        s = _sign_at(coeffs, x)
        if s == 0:
            roots.append(x)
        elif s_prev != 0 and s != s_prev:
            roots.append(_bisect(coeffs, x_prev, x, s_prev, tol))
        x_prev, s_prev = x, s
    return roots


def roots_in_open_interval(poly: Polynomial, a: float | Fraction, b: float | Fraction,
                           tol: float | None = None, exclude_zero: bool = False) -> list[float]:
    """Sorted real roots in (a, b), refined to width ``tol``.

    With ``exclude_zero`` the interval is split at 0 and 0 itself is never
    reported.
    """
    settings = get_settings()
    tol = settings.root_tol if tol is None else tol
    if not a < b:
        raise DomainError.create(ErrorCode.POLY_INVALID_INTERVAL, f"Empty interval ({a}, {b})")
    if tol <= 0:
        raise DomainError.create(ErrorCode.POLY_INVALID_INTERVAL, f"Tolerance must be positive, got {tol}")
    if poly.degree < 1:
        return []
    coeffs = poly.integer_coeffs()
    points = settings.root_grid_per_degree * poly.degree + settings.root_grid_extra
    fa, fb, ftol = Fraction(a), Fraction(b), Fraction(tol)
    pieces = [(fa, Fraction(0)), (Fraction(0), fb)] if exclude_zero and fa < 0 < fb else [(fa, fb)]
    found = sorted(r for lo, hi in pieces for r in _scan(coeffs, lo, hi, points, ftol))
    merged: list[Fraction] = []
    for r in found:
        if merged and r - merged[-1] < 10 * ftol:
            continue
        merged.append(r)
    if poly.to_sympy().sqf_part().degree() < poly.degree:
        logger.warning(f"Repeated roots in a degree {poly.degree} polynomial; even-multiplicity roots may be missed")
    logger.debug(f"{len(merged)} roots of a degree {poly.degree} polynomial in ({float(a)}, {float(b)})")
    return [float(r) for r in merged]


def count_roots_exact(poly: Polynomial, a: float | Fraction, b: float | Fraction) -> int:
    """Number of distinct real roots in the open interval (a, b), by Sturm sequences."""
    if not a < b:
        raise DomainError.create(ErrorCode.POLY_INVALID_INTERVAL, f"Empty interval ({a}, {b})")
    if poly.degree < 1:
        return 0
    fa, fb = Fraction(a), Fraction(b)
    sqf = poly.to_sympy().sqf_part()
    count = sqf.count_roots(Rational(fa.numerator, fa.denominator), Rational(fb.numerator, fb.denominator))
    return int(count) - (poly.eval(fa) == 0) - (poly.eval(fb) == 0)
