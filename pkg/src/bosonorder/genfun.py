"""Generating functions and coherent-state matrix elements.

Quantities that are polynomials in ``lambda`` and ``x`` with rational
coefficients are accumulated exactly and converted to floating point only at
the end; float inputs are taken at their exact binary value.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from . import fock
from ._numeric import max_terms, poisson_log_weight, truncated_sum
from .errors import (
    DivergenceConditionError,
    EvaluationOverflowError,
    OutOfRangeError,
)
from .genstirling import gen_bell_polynomial
from .weyl import AlphaSpec, NormalForm, Word, multiply, normal_order_word, normal_order_words

__all__ = [
    "CoherentLabel",
    "EGFQuery",
    "egf_bell_closed",
    "egf_coefficients",
    "egf_truncated",
    "egf_d0_dobinski",
    "coherent_matrix_element_exp",
    "normal_form_of_exp_number_operator",
    "exp_series",
    "coherent_transfer_check",
]

DEFAULT_TRUNCATION = 40
MAX_TRUNCATION = 60
MAX_EXP_ORDER = 20


@dataclass(frozen=True)
class CoherentLabel:
    z: complex

    def __post_init__(self):
        z = complex(self.z)
        if not cmath.isfinite(z):
            raise ValueError(f"coherent label must be finite, got {z}")
        object.__setattr__(self, "z", z)

    @property
    def abs2(self) -> float:
        return abs(self.z) ** 2

    def conjugate(self) -> complex:
        return self.z.conjugate()


def _label(z) -> complex:
    return z.z if isinstance(z, CoherentLabel) else CoherentLabel(z).z


def _check_truncation(truncation: int) -> None:
    if not 1 <= truncation <= min(MAX_TRUNCATION, max_terms()):
        raise OutOfRangeError(f"truncation must lie in [1, {MAX_TRUNCATION}], got {truncation}")


def _exact(value) -> Fraction:
    return Fraction(value)


def egf_bell_closed(lam: float, x: float) -> float:
    """``exp(x (e^lambda - 1))``."""
    try:
        exponent = x * math.expm1(lam)
        return math.exp(exponent)
    except OverflowError:
        raise EvaluationOverflowError(f"exp overflows for lambda={lam}, x={x}") from None


def egf_coefficients(alpha: AlphaSpec, x, truncation: int) -> list[Fraction]:
    """``[B(n, x) / n! for n = 0..truncation]`` exactly."""
    x = _exact(x)
    return [Fraction(gen_bell_polynomial(alpha, n, x), math.factorial(n)) for n in range(truncation + 1)]


def egf_truncated(alpha: AlphaSpec, lam, x, truncation: int = DEFAULT_TRUNCATION) -> float:
    """Partial sum ``sum_{n<=truncation} B(n, x) lambda^n / n!``.

    For ``max_k >= 2`` this series has zero radius of convergence, so the
    partial sum is only meaningful for very small ``|lambda|``; see
    :func:`egf_d0_dobinski` and :mod:`bosonorder.pade` for the summed value.
    """
    _check_truncation(truncation)
    lam = _exact(lam)
    acc = Fraction(0)
    for c in reversed(egf_coefficients(alpha, x, truncation)):
        acc = acc * lam + c
    return float(acc)


@dataclass(frozen=True)
class EGFQuery:
    alpha: AlphaSpec
    lam: float
    x: float
    truncation: int = DEFAULT_TRUNCATION

    def __post_init__(self):
        if self.truncation < 1:
            raise OutOfRangeError(f"truncation must be >= 1, got {self.truncation}")

    def evaluate(self) -> float:
        return egf_truncated(self.alpha, self.lam, self.x, self.truncation)


def egf_d0_dobinski(alpha: AlphaSpec, lam: float, x: float, eps: float = 1e-12) -> float:
    """Convergent form ``e^-x sum_l exp(lambda sum_k alpha_k l^(k)) x^l / l!`` (``d = 0`` only)."""
    if alpha.d != 0:
        raise OutOfRangeError(f"only defined for excess 0, got d={alpha.d}")
    if not x > 0:
        raise OutOfRangeError(f"x must be positive, got {x}")
    lam, x = float(lam), float(x)
    if lam == 0:
        return 1.0
    if alpha.alpha(alpha.max_k) * lam >= 0:
        raise DivergenceConditionError(
            f"series diverges unless alpha_N * lambda < 0 (alpha_N={alpha.alpha(alpha.max_k)}, lambda={lam})"
        )
    start = max(2 * alpha.max_k, math.ceil(x), 10)

    def term(l: int) -> float:
        return math.exp(lam * float(alpha.operator_value(l)) + poisson_log_weight(l, x))

    value, _ = truncated_sum(term, eps, start)
    return value


def coherent_matrix_element_exp(alpha: AlphaSpec, lam, z, truncation: int = DEFAULT_TRUNCATION) -> complex:
    """Truncated ``<z|exp(lambda H)|z> = sum_n B(n, |z|^2) ((z*)^d lambda)^n / n!``."""
    _check_truncation(truncation)
    z = _label(z)
    step = z.conjugate() ** alpha.d * complex(lam)
    coeffs = egf_coefficients(alpha, abs(z) ** 2, truncation)
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * step + float(c)
    return acc


def normal_form_of_exp_number_operator(order: int) -> list[NormalForm]:
    """Coefficients of ``lambda^m`` (``m = 0..order``) in ``:exp(ad a (e^lambda - 1)):``.

    Built by expanding ``(e^lambda - 1)^k / k!`` as exact power series, with
    no reference to operator products or Stirling tables.
    """
    if not 0 <= order <= MAX_EXP_ORDER:
        raise OutOfRangeError(f"order must lie in [0, {MAX_EXP_ORDER}], got {order}")
    e_minus_1 = [Fraction(0)] + [Fraction(1, math.factorial(m)) for m in range(1, order + 1)]
    slices: list[dict] = [{} for _ in range(order + 1)]
    acc = [Fraction(1)] + [Fraction(0)] * order  # (e^lambda - 1)^k
    for k in range(order + 1):
        for m, c in enumerate(acc):
            if c:
                slices[m][(k, k)] = c / math.factorial(k)
        acc = [sum(acc[i] * e_minus_1[m - i] for i in range(m + 1)) for m in range(order + 1)]
    return [NormalForm(s) for s in slices]


def exp_series(nf: NormalForm, order: int) -> list[NormalForm]:
    """Coefficients of ``lambda^m`` in ``exp(lambda * nf)``, i.e. ``nf^m / m!``."""
    out = [NormalForm.identity()]
    for m in range(1, order + 1):
        out.append(multiply(out[-1], nf).scale(Fraction(1, m)))
    return out


def _normal_form_of(operator) -> NormalForm:
    if isinstance(operator, NormalForm):
        return operator
    if isinstance(operator, Word):
        return normal_order_word(operator)
    return normal_order_words(operator)


def coherent_transfer_check(operator, z, zprime, dim: int = fock.DEFAULT_DIM, rtol: float = 1e-8) -> bool:
    """Check ``<z'|F|z> == <z'|z> G(z'*, z)`` where ``G`` is the normal form of ``F``.

    ``operator`` may be a :class:`Word`, a ``{Word: coeff}`` mapping or a
    :class:`NormalForm`; the left side is always computed from the operator
    as given, by truncated Fock matrices.
    """
    z, zprime = _label(z), _label(zprime)
    nf = _normal_form_of(operator)
    lhs = fock.matrix_element(operator, z, zprime, dim)
    overlap = fock.coherent_overlap(zprime, z)
    zbar = zprime.conjugate()
    g = sum(complex(float(c)) * zbar**r * z**s for (r, s), c in nf.items())
    rhs = overlap * g
    scale = abs(overlap) * sum(abs(float(c)) * abs(zprime) ** r * abs(z) ** s for (r, s), c in nf.items())
    if not isinstance(operator, NormalForm):
        # words can cancel in the normal form; measure against the uncancelled sizes
        words = {operator: 1} if isinstance(operator, Word) else operator
        scale = max(scale, sum(abs(float(c)) * abs(fock.matrix_element(w, z, zprime, dim)) for w, c in words.items()))
    return abs(lhs - rhs) <= rtol * max(scale, abs(rhs), 1e-300)
