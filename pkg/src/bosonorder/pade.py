"""Padé approximants, used to assign values to divergent generating functions.

The ``[m/n]`` approximant ``P/Q`` with ``Q(0) = 1`` matches a power series
through ``lambda^(m+n)``. The denominator comes from the Hankel system

    sum_{j=1..n} b_j c_{k-j} = -c_k,    k = m+1 .. m+n

and the numerator from ``a_k = sum_{j<=min(k,n)} b_j c_{k-j}``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import poly
from .errors import OutOfRangeError, PoleProximityError, SingularSystemError
from .genfun import egf_coefficients, egf_d0_dobinski
from .weyl import AlphaSpec, exact

__all__ = [
    "PadeApproximant",
    "pade_approximant",
    "pade_eval",
    "resum_gen_egf",
    "HarnessRow",
    "diagonal_harness",
    "is_decreasing",
]

FLOAT_RESIDUAL = 1e-10
FLOAT_COND_LIMIT = 1e13
POLE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class PadeApproximant:
    """``numerator / denominator``, coefficients in ascending powers of lambda."""

    numerator: tuple
    denominator: tuple
    exact: bool = True

    def __post_init__(self):
        if not self.denominator or self.denominator[0] != 1:
            raise ValueError("denominator must have constant term 1")

    @property
    def m(self) -> int:
        return len(self.numerator) - 1

    @property
    def n(self) -> int:
        return len(self.denominator) - 1

    def taylor(self, order: int) -> list:
        """Series coefficients of ``numerator / denominator`` through ``order``."""
        out: list = []
        for k in range(order + 1):
            c = self.numerator[k] if k < len(self.numerator) else 0
            for j in range(1, min(k, self.n) + 1):
                c -= self.denominator[j] * out[k - j]
            out.append(exact(c) if self.exact else c)
        return out

    def reduced(self) -> tuple[tuple, tuple]:
        """Lowest-terms ``(numerator, denominator)`` with trailing zeros dropped.

        Only meaningful in exact mode.
        """
        num, den = poly.trim(self.numerator), poly.trim(self.denominator)
        g = _gcd(num, den)
        if len(g) > 1:
            num, den = _divexact(num, g), _divexact(den, g)
        lead = den[0]
        return tuple(exact(Fraction(c) / lead) for c in num), tuple(exact(Fraction(c) / lead) for c in den)


def _divmod_poly(p: tuple, d: tuple) -> tuple[tuple, tuple]:
    rem = list(p)
    quot = [Fraction(0)] * max(len(p) - len(d) + 1, 0)
    while len(rem) >= len(d) and rem:
        shift = len(rem) - len(d)
        c = Fraction(rem[-1]) / d[-1]
        quot[shift] = c
        for i, di in enumerate(d):
            rem[shift + i] -= c * di
        rem = list(poly.trim(rem))
    return poly.trim(quot), poly.trim(rem)


def _gcd(p: tuple, q: tuple) -> tuple:
    while q:
        p, q = q, _divmod_poly(p, q)[1]
    return p


def _divexact(p: tuple, d: tuple) -> tuple:
    quot, rem = _divmod_poly(p, d)
    assert not rem
    return tuple(exact(c) for c in quot)


def _solve_exact(rows: list[list], rhs: list) -> list:
    """Gauss-Jordan over the rationals; free variables are set to zero."""
    size = len(rhs)
    aug = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    pivots: list[int] = []
    r = 0
    for col in range(size):
        pivot = next((i for i in range(r, size) if aug[i][col]), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = 1 / aug[r][col]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(size):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
    if any(aug[i][size] for i in range(r, size)):
        raise SingularSystemError("Hankel system is singular and inconsistent; this table entry does not exist")
    sol = [Fraction(0)] * size
    for i, col in enumerate(pivots):
        sol[col] = aug[i][size]
    return sol


def _hankel(c: Sequence, m: int, n: int) -> tuple[list[list], list]:
    def coeff(i: int):
        return c[i] if i >= 0 else 0

    rows = [[coeff(k - j) for j in range(1, n + 1)] for k in range(m + 1, m + n + 1)]
    rhs = [-coeff(k) for k in range(m + 1, m + n + 1)]
    return rows, rhs


def _numerator(c: Sequence, b: Sequence, m: int) -> list:
    return [sum(b[j] * c[k - j] for j in range(min(k, len(b) - 1) + 1)) for k in range(m + 1)]


def pade_approximant(series: Sequence, m: int, n: int, exact_mode: bool = True) -> PadeApproximant:
    """The ``[m/n]`` approximant of ``series`` (exactly ``m + n + 1`` coefficients).

    Exact mode works over the rationals and, when the Hankel matrix is
    singular but consistent, still returns an approximant (its lowest-terms
    form is unique). Float mode uses binary64 and rejects ill-conditioned
    systems or solutions whose Taylor residual exceeds ``1e-10``.
    """
    if m < 0 or n < 0:
        raise OutOfRangeError(f"m and n must be nonnegative, got m={m}, n={n}")
    if len(series) != m + n + 1:
        raise OutOfRangeError(f"need exactly {m + n + 1} coefficients, got {len(series)}")
    if exact_mode:
        c = [exact(Fraction(v)) for v in series]
        rows, rhs = _hankel(c, m, n)
        b = [1] + [exact(v) for v in _solve_exact(rows, rhs)] if n else [1]
        a = [exact(v) for v in _numerator(c, b, m)]
        return PadeApproximant(tuple(a), tuple(b), True)

    c = [float(v) for v in series]
    b = [1.0]
    if n:
        rows, rhs = _hankel(c, m, n)
        mat = np.array(rows, dtype=float)
        if not np.all(np.isfinite(mat)) or np.linalg.cond(mat) > FLOAT_COND_LIMIT:
            raise SingularSystemError(f"Hankel system for [{m}/{n}] is numerically singular")
        b += np.linalg.solve(mat, np.array(rhs, dtype=float)).tolist()
    out = PadeApproximant(tuple(_numerator(c, b, m)), tuple(b), False)
    residual = max((abs(x - y) for x, y in zip(out.taylor(m + n), c)), default=0.0)
    scale = max(max(abs(v) for v in c), 1e-300)
    if residual > FLOAT_RESIDUAL * scale:
        raise SingularSystemError(f"Taylor residual {residual:.3g} exceeds tolerance for [{m}/{n}]")
    return out


def pade_eval(p: PadeApproximant, lam: float) -> float:
    """``numerator(lam) / denominator(lam)``; refuses to divide near a pole."""
    lam_x = Fraction(lam) if p.exact else float(lam)
    num = poly.evaluate(p.numerator, lam_x)
    den = poly.evaluate(p.denominator, lam_x)
    scale = sum(abs(float(b)) * abs(float(lam)) ** j for j, b in enumerate(p.denominator))
    if abs(float(den)) < POLE_TOLERANCE * scale:
        raise PoleProximityError(f"denominator {float(den):.3g} vanishes near lambda={lam}")
    return float(num / den) if p.exact else num / den


def resum_gen_egf(alpha: AlphaSpec, lam: float, x: float, m: int, n: int) -> float:
    """Evaluate the ``[m/n]`` approximant of ``sum_k B(k, x) lambda^k / k!``."""
    if alpha.d != 0:
        raise OutOfRangeError(f"only defined for excess 0, got d={alpha.d}")
    if m < 1 or n < 1:
        raise OutOfRangeError(f"m and n must be positive, got m={m}, n={n}")
    coeffs = egf_coefficients(alpha, x, m + n)
    return pade_eval(pade_approximant(coeffs, m, n), lam)


@dataclass(frozen=True)
class HarnessRow:
    m: int
    value: float
    reference: float
    error: float


def diagonal_harness(alpha: AlphaSpec, lam: float, x: float, orders: Sequence[int] = range(2, 7)) -> list[HarnessRow]:
    """``[m/m]`` resummation against the convergent series, one row per ``m``."""
    reference = egf_d0_dobinski(alpha, lam, x)
    rows = []
    for m in orders:
        value = resum_gen_egf(alpha, lam, x, m, m)
        rows.append(HarnessRow(m, value, reference, abs(value - reference)))
    return rows


def is_decreasing(rows: Sequence[HarnessRow]) -> bool:
    return all(b.error < a.error for a, b in zip(rows, rows[1:]))

