"""Dense univariate polynomials with exact coefficients.

A polynomial is a tuple of coefficients in ascending degree, trailing zeros
trimmed; the zero polynomial is the empty tuple. Coefficients are whatever
exact numbers the caller supplies (``int`` / ``Fraction``); nothing here
divides. Only what the rest of the package needs is here.
"""
from __future__ import annotations

from typing import Sequence

Poly = tuple

ZERO: Poly = ()
ONE: Poly = (1,)
X: Poly = (0, 1)


def trim(coeffs: Sequence) -> Poly:
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


def const(c) -> Poly:
    return trim([c])


def degree(p: Poly) -> int:
    return len(p) - 1


def add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, scale(q, -1))


def scale(p: Poly, c) -> Poly:
    return trim([a * c for a in p])


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ZERO
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def pow_(p: Poly, n: int) -> Poly:
    result = ONE
    for _ in range(n):
        result = mul(result, p)
    return result


def evaluate(p: Poly, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def compose(p: Poly, q: Poly) -> Poly:
    """Return ``p(q(x))``."""
    acc = ZERO
    for c in reversed(p):
        acc = add(mul(acc, q), const(c))
    return acc


def shifted_falling(k: int, shift=0) -> Poly:
    """Coefficients of ``(x + shift)(x + shift - 1)...(x + shift - k + 1)``."""
    out = ONE
    for i in range(k):
        out = mul(out, (shift - i, 1))
    return out


def to_falling_basis(p: Poly) -> dict:
    """Rewrite ``p`` as ``sum_k c_k x(x-1)...(x-k+1)`` by repeated division.

    The falling factorial of order ``k`` is monic of degree ``k``, so the
    leading coefficient of the remainder fixes each ``c_k`` from the top down.
    Zero coefficients are omitted from the result.
    """
    rem = trim(p)
    out: dict = {}
    while rem:
        k = degree(rem)
        c = rem[-1]
        out[k] = c
        rem = sub(rem, scale(shifted_falling(k), c))
    return out
