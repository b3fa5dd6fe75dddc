"""Generalized Stirling numbers of homogeneous boson polynomials.

For ``H = ad^d sum_k alpha_k ad^k a^k`` the normal form of ``H^n`` is
``ad^(n d) sum_k S(n, k) ad^k a^k``; this module computes ``S(n, k)`` three
ways (recurrence, closed alternating sum, brute-force operator powers) plus the
derived Bell polynomials and the Dobinski-type series.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from . import poly
from ._numeric import poisson_log_weight, truncated_sum
from .errors import InternalInvariantError, OutOfRangeError
from .weyl import (
    ANNIHILATE,
    CREATE,
    AlphaSpec,
    exact,
    extract_alpha,
    falling_factorial,
    normal_order_words,
    power,
)

__all__ = [
    "GenStirlingTable",
    "gen_stirling_table",
    "gen_stirling_recurrence",
    "gen_stirling_explicit",
    "gen_stirling_from_operator",
    "gen_bell_polynomial",
    "gen_bell_number",
    "gen_dobinski_eval",
    "connection_polynomial",
    "connection_identity_check",
]


@lru_cache(maxsize=256)
def _rows(alpha: AlphaSpec, max_n: int) -> tuple[dict, ...]:
    # rows[0] is H^0 = identity
    rows: list[dict] = [{0: 1}]
    if max_n >= 1:
        rows.append(dict(alpha.coeffs))
    d, lo, hi = alpha.d, alpha.min_k, alpha.max_k
    for n in range(1, max_n):
        prev = rows[n]
        row: dict = {}
        for k in range(lo, (n + 1) * hi + 1):
            total = 0
            for l, a_l in alpha.coeffs:
                inner = 0
                for p in range(l + 1):
                    s = prev.get(k - l + p)
                    if s:
                        inner += comb(l, p) * falling_factorial(n * d + k - l + p, p) * s
                total += a_l * inner
            if total:
                row[k] = exact(total)
        rows.append(row)
    return tuple(rows)


@dataclass(frozen=True)
class GenStirlingTable:
    """Exact ``S(n, k)`` for ``0 <= n <= max_n``; absent entries are zero."""

    alpha: AlphaSpec
    max_n: int
    rows: tuple[dict, ...]

    def __getitem__(self, nk: tuple[int, int]):
        n, k = nk
        if not 0 <= n <= self.max_n:
            raise OutOfRangeError(f"row {n} not in table (max_n={self.max_n})")
        return self.rows[n].get(k, 0)

    def row(self, n: int) -> dict:
        return dict(self.rows[n])


def gen_stirling_table(alpha: AlphaSpec, max_n: int) -> GenStirlingTable:
    if max_n < 0:
        raise OutOfRangeError(f"max_n must be >= 0, got {max_n}")
    return GenStirlingTable(alpha, max_n, _rows(alpha, max_n))


def gen_stirling_recurrence(alpha: AlphaSpec, n: int, k: int):
    if n < 1:
        raise OutOfRangeError(f"n must be >= 1, got {n}")
    return _rows(alpha, n)[n].get(k, 0)


def _product_weight(alpha: AlphaSpec, n: int, j):
    out = 1
    for i in range(1, n + 1):
        out *= alpha.operator_value(j + (i - 1) * alpha.d)
    return out


def gen_stirling_explicit(alpha: AlphaSpec, n: int, k: int):
    """Closed form as a ``k``-th finite difference at zero, divided by ``k!``."""
    if n < 1 or k < 0:
        raise OutOfRangeError(f"need n >= 1 and k >= 0, got n={n}, k={k}")
    total = sum(
        comb(k, j) * (-1) ** (k - j) * _product_weight(alpha, n, j) for j in range(k + 1)
    )
    return exact(Fraction(total) / math.factorial(k))


def _alpha_words(alpha: AlphaSpec):
    return [((CREATE,) * (alpha.d + k) + (ANNIHILATE,) * k, a) for k, a in alpha.coeffs]


def gen_stirling_from_operator(alpha: AlphaSpec, n: int, method: str = "contraction") -> dict:
    """Row ``n`` read off the normal form of ``H^n`` itself.

    ``method="contraction"`` multiplies normal forms; ``method="rewrite"``
    expands ``H^n`` into words and normal orders them by commutator rewriting,
    which is only practical for small ``n (d + max_k)``.
    """
    if n < 1:
        raise OutOfRangeError(f"n must be >= 1, got {n}")
    if method == "contraction":
        nf = power(alpha.to_normal_form(), n)
    elif method == "rewrite":
        combo: dict = {}
        for parts in itertools.product(_alpha_words(alpha), repeat=n):
            word = tuple(itertools.chain.from_iterable(w for w, _ in parts))
            combo[word] = combo.get(word, 0) + math.prod(c for _, c in parts)
        nf = normal_order_words(combo)
    else:
        raise ValueError(f"unknown method {method!r}")
    if nf.is_zero():
        return {}
    spec = extract_alpha(nf)
    if spec.d != n * alpha.d:
        raise InternalInvariantError(f"H^{n} has excess {spec.d}, expected {n * alpha.d}")
    return dict(spec.coeffs)


def gen_bell_polynomial(alpha: AlphaSpec, n: int, x):
    if n < 0:
        raise OutOfRangeError(f"n must be >= 0, got {n}")
    row = _rows(alpha, n)[n]
    if isinstance(x, float):
        return sum(c * x**k for k, c in row.items())
    x = Fraction(x)
    return exact(sum(c * x**k for k, c in row.items()))


def gen_bell_number(alpha: AlphaSpec, n: int):
    return gen_bell_polynomial(alpha, n, 1)


def gen_dobinski_eval(alpha: AlphaSpec, n: int, x: float, eps: float = 1e-12) -> float:
    """Numerically sum ``e^-x sum_l [prod_i sum_k alpha_k (l+(i-1)d)^(k)] x^l / l!``."""
    if n < 0:
        raise OutOfRangeError(f"n must be >= 0, got {n}")
    if not x > 0:
        raise OutOfRangeError(f"x must be positive, got {x}")
    x = float(x)
    start = max(2 * n * alpha.max_k, math.ceil(x), 10)

    def term(l: int) -> float:
        weight = _product_weight(alpha, n, l)
        if not weight:
            return 0.0
        return float(weight) * math.exp(poisson_log_weight(l, x))

    value, _ = truncated_sum(term, eps, start)
    return value


def connection_polynomial(alpha: AlphaSpec, n: int) -> poly.Poly:
    """``prod_{i=1..n} sum_k alpha_k (x + (i-1) d)^(k)`` as an exact polynomial."""
    out = poly.ONE
    for i in range(1, n + 1):
        factor = poly.ZERO
        for k, a in alpha.coeffs:
            factor = poly.add(factor, poly.scale(poly.shifted_falling(k, (i - 1) * alpha.d), a))
        out = poly.mul(out, factor)
    return out


def connection_identity_check(alpha: AlphaSpec, n: int) -> bool:
    if n < 1:
        raise OutOfRangeError(f"n must be >= 1, got {n}")
    return poly.to_falling_basis(connection_polynomial(alpha, n)) == _rows(alpha, n)[n]
