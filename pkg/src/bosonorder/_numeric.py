from __future__ import annotations

import math
import os
from typing import Callable

from .errors import NoConvergenceError, OutOfRangeError

DEFAULT_MAX_TERMS = 10**6


def max_terms() -> int:
    """Iteration/series cap, overridable through ``BOSONORDER_MAX_TERMS``."""
    raw = os.environ.get("BOSONORDER_MAX_TERMS")
    if raw is None:
        return DEFAULT_MAX_TERMS
    try:
        value = int(raw)
    except ValueError:
        raise OutOfRangeError(f"BOSONORDER_MAX_TERMS must be an integer, got {raw!r}") from None
    if value < 1:
        raise OutOfRangeError("BOSONORDER_MAX_TERMS must be positive")
    return value


def poisson_log_weight(k: int, x: float) -> float:
    """``log(e^-x x^k / k!)``."""
    return k * math.log(x) - math.lgamma(k + 1) - x


def truncated_sum(term: Callable[[int], float], eps: float, min_index: int) -> tuple[float, int]:
    """Sum ``term(0) + term(1) + ...`` until the tail is negligible.

    Stops at the first ``K > min_index`` with ``|term(K)| < eps * |partial sum|``
    and returns ``(sum, K)``. Raises :class:`NoConvergenceError` when the cap
    from :func:`max_terms` is reached first.
    """
    if not eps > 0:
        raise OutOfRangeError(f"eps must be positive, got {eps}")
    cap = max_terms()
    terms = []
    partial = 0.0
    for k in range(cap):
        t = term(k)
        if not math.isfinite(t):
            raise NoConvergenceError(f"term {k} is not finite ({t})")
        terms.append(t)
        partial += t
        if k > min_index and abs(t) < eps * abs(partial):
            return math.fsum(terms), k
    raise NoConvergenceError(f"series did not settle within {cap} terms")
