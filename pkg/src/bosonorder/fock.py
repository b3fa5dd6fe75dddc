"""Dense truncated Fock-space representation of the ladder operators.

Used as a numerical oracle: matrix elements computed here know nothing about
normal ordering, so agreement with the exact normal forms is a real check.
Truncation to ``dim`` states is harmless as long as the states involved have
negligible weight near the cutoff (coherent states with ``|z| <= 2`` at the
default ``dim = 64``).
"""
from __future__ import annotations

from collections.abc import Mapping

import numpy as np
from scipy.linalg import expm

from .weyl import CREATE, NormalForm, Word

DEFAULT_DIM = 64


def annihilation(dim: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1)


def creation(dim: int) -> np.ndarray:
    return annihilation(dim).T.copy()


def coherent_state(z: complex, dim: int = DEFAULT_DIM) -> np.ndarray:
    """``e^{-|z|^2/2} sum_{n<dim} z^n / sqrt(n!) |n>``."""
    z = complex(z)
    amp = np.empty(dim, dtype=complex)
    amp[0] = np.exp(-abs(z) ** 2 / 2)
    for n in range(1, dim):
        amp[n] = amp[n - 1] * z / np.sqrt(n)
    return amp


def coherent_overlap(zprime: complex, z: complex) -> complex:
    """Exact ``<z'|z>`` for normalized coherent states."""
    z, zprime = complex(z), complex(zprime)
    return complex(np.exp(-abs(z) ** 2 / 2 - abs(zprime) ** 2 / 2 + zprime.conjugate() * z))


def word_matrix(word: Word, dim: int = DEFAULT_DIM) -> np.ndarray:
    a, ad = annihilation(dim), creation(dim)
    out = np.eye(dim)
    for g in word:
        out = out @ (ad if g is CREATE else a)
    return out


def operator_matrix(operator, dim: int = DEFAULT_DIM) -> np.ndarray:
    """Matrix of a :class:`Word`, a :class:`NormalForm` or a ``{Word: coeff}`` mapping."""
    if isinstance(operator, Word):
        return word_matrix(operator, dim)
    if isinstance(operator, NormalForm):
        a, ad = annihilation(dim), creation(dim)
        out = np.zeros((dim, dim))
        for (r, s), c in operator.items():
            out += float(c) * np.linalg.matrix_power(ad, r) @ np.linalg.matrix_power(a, s)
        return out
    if isinstance(operator, Mapping):
        out = np.zeros((dim, dim))
        for word, c in operator.items():
            w = word if isinstance(word, Word) else Word(tuple(word))
            out += float(c) * word_matrix(w, dim)
        return out
    raise TypeError(f"cannot build a matrix from {type(operator).__name__}")


def vacuum_expectation(word: Word) -> float:
    """``<0|word|0>`` on the smallest truncation that represents it exactly."""
    return float(word_matrix(word, len(word) + 1)[0, 0])


def matrix_element(operator, z: complex, zprime: complex | None = None, dim: int = DEFAULT_DIM) -> complex:
    """``<z'|operator|z>`` (diagonal when ``zprime`` is omitted)."""
    ket = coherent_state(z, dim)
    bra = coherent_state(z if zprime is None else zprime, dim)
    return complex(np.vdot(bra, operator_matrix(operator, dim) @ ket))


def exp_matrix_element(operator, lam: complex, z: complex, dim: int = DEFAULT_DIM) -> complex:
    """``<z|exp(lam * operator)|z>`` via a dense matrix exponential."""
    ket = coherent_state(z, dim)
    return complex(np.vdot(ket, expm(complex(lam) * operator_matrix(operator, dim)) @ ket))
