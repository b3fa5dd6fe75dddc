"""Normal ordering of ``exp(lambda [q(ad) a + v(ad)])`` for polynomial q, v.

The normal form is ``:g(lambda, ad) exp((T(lambda, ad) - ad) a):`` where

    dT/dlambda = q(T),      T(0, x) = x
    dg/dlambda = v(T) g,    g(0, x) = 1

Both are solved here as truncated power series in ``lambda`` whose
coefficients are exact polynomials in ``x``. :func:`verify_sheffer` compares
the result against brute-force operator powers.

Internally series are kept in exponential normalization (slice ``m`` holds
``m!`` times the coefficient of ``lambda^m``), which keeps everything in
integers when q and v have integer coefficients.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Sequence

from . import poly
from .errors import OutOfRangeError
from .weyl import NormalForm, exact

__all__ = [
    "PolySpec",
    "BivariateSeries",
    "solve_T",
    "solve_g",
    "sheffer_operator",
    "sheffer_normal_form_series",
    "verify_sheffer",
    "flow_property_check",
    "cocycle_check",
    "sheffer_coherent_egf",
]

MAX_DEGREE = 8
MAX_ORDER = 16
MAX_VERIFY_ORDER = 10
MAX_VERIFY_DEGREE = 4


@dataclass(frozen=True)
class PolySpec:
    """Exact polynomial in one variable, coefficients in ascending degree."""

    coeffs: tuple = ()

    def __post_init__(self):
        coeffs = poly.trim([exact(c) for c in self.coeffs])
        if len(coeffs) - 1 > MAX_DEGREE:
            raise OutOfRangeError(f"degree {len(coeffs) - 1} exceeds {MAX_DEGREE}")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        return poly.evaluate(self.coeffs, x)


def _spec(p) -> PolySpec:
    return p if isinstance(p, PolySpec) else PolySpec(tuple(p))


def _check_order(order: int, cap: int = MAX_ORDER) -> None:
    if not 0 <= order <= cap:
        raise OutOfRangeError(f"order must lie in [0, {cap}], got {order}")


# Exponentially normalized lambda-series: list of polynomials in x.


def _e_slice(a: Sequence, b: Sequence, m: int) -> poly.Poly:
    """Slice ``m`` of the product of two exponentially normalized series."""
    acc: list = []
    for i in range(max(0, m - len(b) + 1), min(m, len(a) - 1) + 1):
        ai, bj = a[i], b[m - i]
        if not ai or not bj:
            continue
        w = comb(m, i)
        need = len(ai) + len(bj) - 1
        if len(acc) < need:
            acc.extend([0] * (need - len(acc)))
        for p, x in enumerate(ai):
            if x:
                xw = x * w
                for q, y in enumerate(bj):
                    acc[p + q] += xw * y
    return poly.trim(acc)


def _e_mul(a: Sequence, b: Sequence, order: int) -> list:
    return [_e_slice(a, b, m) for m in range(order + 1)]


def _e_poly(p: Sequence, s: Sequence, order: int) -> list:
    """``p(s(lambda, x))`` for a plain polynomial ``p``."""
    acc = [poly.ZERO] * (order + 1)
    for c in reversed(p):
        acc = _e_mul(acc, s, order)
        acc[0] = poly.add(acc[0], poly.const(c))
    return acc


def _solve_T_egf(q: PolySpec, order: int) -> list:
    t = [poly.X] + [poly.ZERO] * order
    for m in range(order):
        t[m + 1] = _e_poly(q.coeffs, t[: m + 1], m)[m]
    return t


def _solve_g_egf(v: PolySpec, t: list, order: int, t_powers: Sequence | None = None) -> list:
    if t_powers is None:
        vt = _e_poly(v.coeffs, t, order)
    else:
        vt = [poly.ZERO] * (order + 1)
        for j, c in enumerate(v.coeffs):
            if c:
                vt = [poly.add(a, poly.scale(b, c)) for a, b in zip(vt, t_powers[j])]
    g = [poly.ONE] + [poly.ZERO] * order
    for m in range(order):
        g[m + 1] = _e_slice(vt, g[: m + 1], m)
    return g


@lru_cache(maxsize=64)
def _q_data(q: PolySpec, order: int) -> tuple:
    """Everything that depends on ``q`` alone: ``T``, its powers and ``(T - x)^k / k!``."""
    t = _solve_T_egf(q, order)
    t_powers = [[poly.ONE] + [poly.ZERO] * order]
    for _ in range(MAX_DEGREE):
        t_powers.append(_e_mul(t_powers[-1], t, order))
    shift = [poly.ZERO] + t[1:]  # T - x has no lambda^0 part
    divided = [[poly.ONE] + [poly.ZERO] * order]
    for k in range(1, order + 1):
        divided.append([_divide(p, k) for p in _e_mul(divided[-1], shift, order)])
    return t, t_powers, divided


def _to_ordinary(slices: Sequence) -> tuple:
    return tuple(poly.trim([exact(Fraction(c, factorial(m))) for c in p]) for m, p in enumerate(slices))


@dataclass(frozen=True)
class BivariateSeries:
    """``sum_m slices[m](x) lambda^m`` truncated at ``order``."""

    order: int
    slices: tuple

    def __call__(self, lam, x):
        return sum(poly.evaluate(p, x) * lam**m for m, p in enumerate(self.slices))

    def at(self, x) -> list:
        """The lambda-series obtained by substituting a number for ``x``."""
        return [poly.evaluate(p, x) for p in self.slices]


def solve_T(q, order: int) -> BivariateSeries:
    _check_order(order)
    return BivariateSeries(order, _to_ordinary(_solve_T_egf(_spec(q), order)))


def solve_g(q, v, order: int) -> BivariateSeries:
    _check_order(order)
    t = _solve_T_egf(_spec(q), order)
    return BivariateSeries(order, _to_ordinary(_solve_g_egf(_spec(v), t, order)))


def sheffer_operator(q, v) -> NormalForm:
    """``q(ad) a + v(ad)`` as a normal form."""
    q, v = _spec(q), _spec(v)
    terms = [((j, 1), c) for j, c in enumerate(q.coeffs)]
    terms += [((j, 0), c) for j, c in enumerate(v.coeffs)]
    return NormalForm(terms)


def _divide(p: Sequence, k: int) -> tuple:
    return tuple(c // k if type(c) is int and c % k == 0 else exact(Fraction(c, k)) for c in p)


def _normal_form_egf(q: PolySpec, v: PolySpec, order: int) -> list[NormalForm]:
    t, t_powers, divided = _q_data(q, order)
    g = _solve_g_egf(v, t, order, t_powers)
    slices: list[dict] = [{} for _ in range(order + 1)]
    for k in range(order + 1):
        for m, p in enumerate(_e_mul(g, divided[k], order)):
            for j, c in enumerate(p):
                if c:
                    slices[m][(j, k)] = c
    return [NormalForm._trusted(s) for s in slices]


def sheffer_normal_form_series(q, v, order: int) -> list[NormalForm]:
    """Coefficients of ``lambda^m`` in ``:g exp((T - ad) a):`` as normal forms."""
    _check_order(order)
    return [nf.scale(Fraction(1, factorial(m))) for m, nf in enumerate(_normal_form_egf(_spec(q), _spec(v), order))]


def _rhs_dense(q: PolySpec, v: PolySpec, order: int) -> list:
    """``rhs[m][k]``: polynomial in ``ad`` multiplying ``a^k`` in slice ``m``."""
    t, t_powers, divided = _q_data(q, order)
    g = _solve_g_egf(v, t, order, t_powers)
    by_k = [_e_mul(g, divided[k], order) for k in range(order + 1)]
    return [[by_k[k][m] for k in range(order + 1)] for m in range(order + 1)]


def _left_multiply(q: Sequence, v: Sequence, lhs: list, width: int) -> list:
    """``(q(ad) a + v(ad)) * sum_s p_s(ad) a^s`` via ``a p(ad) = p(ad) a + p'(ad)``.

    Each ``p_s`` is a dense list of length ``width``, large enough to hold
    every product formed through the requested order.
    """
    out = [[0] * width for _ in range(len(lhs) + 1)]
    qs = [(j, c) for j, c in enumerate(q) if c]
    vs = [(j, c) for j, c in enumerate(v) if c]
    for s_, p in enumerate(lhs):
        up, here = out[s_ + 1], out[s_]
        for i, c in enumerate(p):
            if not c:
                continue
            for j, qj in qs:
                up[i + j] += qj * c
                if i:
                    here[i - 1 + j] += qj * i * c
            for j, vj in vs:
                here[i + j] += vj * c
    return out


def verify_sheffer(q, v, order: int) -> bool:
    """Exact comparison of both sides through ``lambda^order``.

    The left side is ``X^m`` for ``X = q(ad) a + v(ad)``, built by repeated
    left multiplication; the right side is ``m!`` times the ``lambda^m`` slice
    of the solved normal form.
    """
    _check_order(order, MAX_VERIFY_ORDER)
    q, v = _spec(q), _spec(v)
    if max(q.degree, v.degree) > MAX_VERIFY_DEGREE:
        raise OutOfRangeError(f"verify_sheffer needs deg q, deg v <= {MAX_VERIFY_DEGREE}")
    rhs = _rhs_dense(q, v, order)
    width = max(q.degree, v.degree, 0) * order + 2
    lhs = [[1] + [0] * (width - 1)]
    for m in range(order + 1):
        if m:
            lhs = _left_multiply(q.coeffs, v.coeffs, lhs, width)
        if [poly.trim(p) for p in lhs] + [poly.ZERO] * (order - m) != rhs[m]:
            return False
    return True


def _place(rhs: dict, j: int, series: Sequence) -> None:
    for i, p in enumerate(series):
        if p:
            rhs[(i, j)] = p


def flow_property_check(q, order: int = 8) -> bool:
    """``T(lambda + mu, x) == T(mu, T(lambda, x))`` through total degree ``order``.

    Checked on exponentially normalized slices in both variables.
    """
    _check_order(order)
    t = _solve_T_egf(_spec(q), order)
    rhs: dict = {}
    for j, tj in enumerate(t):
        _place(rhs, j, _e_poly(tj, t, order - j))
    lhs = {(i, m - i): p for m, p in enumerate(t) if p for i in range(m + 1)}
    return lhs == rhs


def cocycle_check(q, v, order: int = 8) -> bool:
    """``g(lambda + mu, x) == g(lambda, x) g(mu, T(lambda, x))`` through total degree ``order``."""
    _check_order(order)
    t = _solve_T_egf(_spec(q), order)
    g = _solve_g_egf(_spec(v), t, order)
    rhs: dict = {}
    for j, gj in enumerate(g):
        _place(rhs, j, _e_mul(g, _e_poly(gj, t, order - j), order - j))
    lhs = {(i, m - i): p for m, p in enumerate(g) if p for i in range(m + 1)}
    return lhs == rhs


def sheffer_coherent_egf(q, v, z, order: int) -> list:
    """Coefficients of ``lambda^m`` in ``<z|exp(lambda[q(ad)a + v(ad)])|z>``.

    Equals ``g(lambda, z*) exp((T(lambda, z*) - z*) z)``. Exact when ``z`` is
    an exact rational, complex floating point otherwise.
    """
    _check_order(order)
    T = solve_T(q, order)
    g = solve_g(q, v, order)
    zbar = z.conjugate()
    shift = [0] + [c * z for c in T.at(zbar)[1:]]
    # exp of a series with zero constant term: m E_m = sum_j j S_j E_{m-j}
    e = [1] + [0] * order
    for m in range(1, order + 1):
        total = sum(j * shift[j] * e[m - j] for j in range(1, m + 1))
        e[m] = Fraction(total, m) if isinstance(total, (int, Fraction)) else total / m
    gz = g.at(zbar)
    return [sum(gz[i] * e[m - i] for i in range(m + 1)) for m in range(order + 1)]
