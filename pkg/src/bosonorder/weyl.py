"""Boson words, normal forms and the Weyl-algebra arithmetic behind them.

Two independent routes to a normal form live here:

* :func:`normal_order_word` / :func:`normal_order_words` apply the rewrite
  ``a ad -> ad a + 1`` until nothing is left to rewrite. It is slow but
  obviously correct, and the rest of the package uses it as ground truth.
* :func:`multiply` / :func:`power` work directly on normal forms through the
  contraction identity ``a^s ad^r = sum_i C(s,i) r(r-1)..(r-i+1) ad^(r-i) a^(s-i)``.

Creation is spelled ``ad`` throughout (``a†`` is accepted when parsing words).
"""
from __future__ import annotations

import enum
from collections import defaultdict
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

from .errors import MixedExcessError, NegativeExcessError, OutOfRangeError

__all__ = [
    "Generator",
    "Word",
    "NormalForm",
    "AlphaSpec",
    "normal_order_word",
    "normal_order_words",
    "multiply",
    "power",
    "extract_alpha",
    "falling_factorial",
]


class Generator(enum.Enum):
    CREATE = "ad"
    ANNIHILATE = "a"

    def __str__(self) -> str:
        return self.value


CREATE = Generator.CREATE
ANNIHILATE = Generator.ANNIHILATE

_SPELLINGS = {"ad": CREATE, "a†": CREATE, "a": ANNIHILATE}


def falling_factorial(x, k: int):
    """Return ``x (x-1) ... (x-k+1)``; the empty product (``k == 0``) is 1."""
    if k < 0:
        raise OutOfRangeError(f"falling factorial order must be >= 0, got {k}")
    result = 1
    for i in range(k):
        result *= x - i
    return result


@dataclass(frozen=True)
class Word:
    """A product of ladder operators in written order (leftmost factor first)."""

    letters: tuple[Generator, ...] = ()

    def __post_init__(self):
        letters = tuple(self.letters)
        for letter in letters:
            if not isinstance(letter, Generator):
                raise TypeError(f"not a Generator: {letter!r}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def from_string(cls, text: str) -> Word:
        """Build a word from whitespace separated ``a`` / ``ad`` tokens."""
        try:
            return cls(tuple(_SPELLINGS[tok] for tok in text.split()))
        except KeyError as exc:
            raise ValueError(f"unknown ladder operator {exc.args[0]!r}") from None

    @property
    def excess(self) -> int:
        return sum(1 if g is CREATE else -1 for g in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Generator]:
        return iter(self.letters)

    def __add__(self, other: Word) -> Word:
        if not isinstance(other, Word):
            return NotImplemented
        return Word(self.letters + other.letters)

    def __str__(self) -> str:
        return " ".join(g.value for g in self.letters)


def exact(value):
    """Normalize an exact rational: integral values become ``int``, the rest ``Fraction``."""
    if isinstance(value, bool):
        return int(value)
    if isinstance(value, int):
        return value
    if isinstance(value, (Rational, str)):
        value = Fraction(value)
        return value.numerator if value.denominator == 1 else value
    raise TypeError(f"coefficients must be exact rationals, got {type(value).__name__}")


class NormalForm(Mapping):
    """Finite linear combination of ``ad^r a^s`` with exact rational coefficients.

    Behaves as an immutable mapping ``(r, s) -> coefficient``. Coefficients
    are ``int`` when integral and ``Fraction`` otherwise; zero coefficients are
    dropped on construction, so two normal forms are equal exactly when their
    mappings are.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[tuple[int, int], object] = {}
        for key, coeff in items:
            r, s = key
            if not (isinstance(r, int) and isinstance(s, int)) or r < 0 or s < 0:
                raise ValueError(f"powers must be nonnegative integers, got {key!r}")
            c = exact(coeff)
            total = clean.get((r, s), 0) + c
            if total:
                clean[(r, s)] = exact(total)
            else:
                clean.pop((r, s), None)
        self._terms = clean
        self._hash = None

    @classmethod
    def _trusted(cls, terms: dict) -> NormalForm:
        # terms already have valid keys and exact values; only zeros need pruning
        nf = cls.__new__(cls)
        nf._terms = {
            k: (c.numerator if type(c) is Fraction and c.denominator == 1 else c)
            for k, c in terms.items()
            if c
        }
        nf._hash = None
        return nf

    @classmethod
    def identity(cls) -> NormalForm:
        return cls({(0, 0): 1})

    @classmethod
    def monomial(cls, r: int, s: int, coeff=1) -> NormalForm:
        return cls({(r, s): coeff})

    @classmethod
    def from_word(cls, word: Word | str) -> NormalForm:
        return normal_order_word(Word.from_string(word) if isinstance(word, str) else word)

    def __getitem__(self, key):
        return self._terms[key]

    def __iter__(self):
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, NormalForm):
            return self._terms == other._terms
        if isinstance(other, Mapping):
            return self._terms == NormalForm(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"({r}, {s}): {c}" for (r, s), c in self.sorted_terms())
        return f"NormalForm({{{body}}})"

    def sorted_terms(self) -> list:
        """Terms ordered by total degree, then by creation power."""
        return sorted(self._terms.items(), key=lambda kv: (kv[0][0] + kv[0][1], kv[0][0]))

    def excesses(self) -> set[int]:
        return {r - s for r, s in self._terms}

    def is_zero(self) -> bool:
        return not self._terms

    def scale(self, factor) -> NormalForm:
        f = exact(factor)
        return NormalForm({k: c * f for k, c in self._terms.items()})

    def __add__(self, other: NormalForm) -> NormalForm:
        if not isinstance(other, NormalForm):
            return NotImplemented
        return NormalForm(list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> NormalForm:
        return self.scale(-1)

    def __sub__(self, other: NormalForm) -> NormalForm:
        if not isinstance(other, NormalForm):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, NormalForm):
            return multiply(self, other)
        if isinstance(other, Rational):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Rational):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> NormalForm:
        return power(self, n)


def _first_inversion(letters: tuple[Generator, ...]) -> int:
    for i in range(len(letters) - 1):
        if letters[i] is ANNIHILATE and letters[i + 1] is CREATE:
            return i
    return -1


def normal_order_words(combination: Mapping) -> NormalForm:
    """Normal order a linear combination ``{word: coeff}`` by plain rewriting.

    Words may be :class:`Word` instances or bare tuples of generators. Each
    step replaces the leftmost ``a ad`` by ``ad a`` plus the word with that
    pair deleted; identical words are merged as they appear.
    """
    pending: dict[tuple[Generator, ...], object] = {}
    for word, coeff in combination.items():
        letters = word.letters if isinstance(word, Word) else tuple(word)
        pending[letters] = pending.get(letters, 0) + coeff

    done: dict[tuple[int, int], object] = defaultdict(int)
    while pending:
        letters, coeff = pending.popitem()
        if not coeff:
            continue
        i = _first_inversion(letters)
        if i < 0:
            r = sum(1 for g in letters if g is CREATE)
            done[(r, len(letters) - r)] += coeff
            continue
        swapped = letters[:i] + (CREATE, ANNIHILATE) + letters[i + 2:]
        contracted = letters[:i] + letters[i + 2:]
        pending[swapped] = pending.get(swapped, 0) + coeff
        pending[contracted] = pending.get(contracted, 0) + coeff
    return NormalForm(done)


def normal_order_word(word: Word) -> NormalForm:
    return normal_order_words({word: 1})


def multiply(left: NormalForm, right: NormalForm) -> NormalForm:
    """Normal form of the operator product ``left * right``."""
    out: dict[tuple[int, int], object] = {}
    right_items = list(right._terms.items())
    for (r1, s1), c1 in left._terms.items():
        for (r2, s2), c2 in right_items:
            c = c1 * c2
            r, s = r1 + r2, s1 + s2
            weight = 1  # C(s1, i) * r2 (r2-1) ... (r2-i+1)
            for i in range(min(s1, r2) + 1):
                key = (r - i, s - i)
                out[key] = out.get(key, 0) + c * weight
                weight = weight * (s1 - i) * (r2 - i) // (i + 1)
    return NormalForm._trusted(out)


def power(nf: NormalForm, n: int) -> NormalForm:
    if n < 0:
        raise OutOfRangeError(f"power must be >= 0, got {n}")
    result = NormalForm.identity()
    base = nf
    while n:
        if n & 1:
            result = multiply(result, base)
        n >>= 1
        if n:
            base = multiply(base, base)
    return result


@dataclass(frozen=True)
class AlphaSpec:
    """A homogeneous boson polynomial ``ad^d * sum_k alpha_k ad^k a^k``.

    ``coeffs`` may be given as a mapping or as ``(k, alpha_k)`` pairs; it is
    stored as a sorted tuple of pairs with zero coefficients removed, which
    keeps the spec hashable.
    """

    d: int
    coeffs: tuple = field(default=())

    def __post_init__(self):
        raw = self.coeffs.items() if isinstance(self.coeffs, Mapping) else self.coeffs
        merged: dict[int, object] = {}
        for k, alpha in raw:
            if not isinstance(k, int) or k < 0:
                raise ValueError(f"alpha indices must be nonnegative integers, got {k!r}")
            merged[k] = exact(merged.get(k, 0) + exact(alpha))
        pairs = tuple(sorted((k, a) for k, a in merged.items() if a))
        if not isinstance(self.d, int) or self.d < 0:
            raise NegativeExcessError(f"excess must be a nonnegative integer, got {self.d!r}")
        if not pairs:
            raise ValueError("AlphaSpec needs at least one nonzero coefficient")
        object.__setattr__(self, "coeffs", pairs)

    @property
    def min_k(self) -> int:
        return self.coeffs[0][0]

    @property
    def max_k(self) -> int:
        return self.coeffs[-1][0]

    def alpha(self, k: int):
        return dict(self.coeffs).get(k, 0)

    def to_normal_form(self) -> NormalForm:
        return NormalForm({(self.d + k, k): a for k, a in self.coeffs})

    def operator_value(self, x):
        """``sum_k alpha_k x(x-1)..(x-k+1)``, the eigenvalue-like weight used by
        the Dobinski and connection formulas."""
        return sum(a * falling_factorial(x, k) for k, a in self.coeffs)

    def __str__(self) -> str:
        body = ", ".join(f"{k}: {a}" for k, a in self.coeffs)
        return f"AlphaSpec(d={self.d}, {{{body}}})"


def extract_alpha(nf: NormalForm) -> AlphaSpec:
    if nf.is_zero():
        raise ValueError("cannot extract alpha from the zero operator")
    excesses = nf.excesses()
    if len(excesses) > 1:
        raise MixedExcessError(f"terms have different excess: {sorted(excesses)}")
    (d,) = excesses
    if d < 0:
        raise NegativeExcessError(f"excess {d} is negative")
    return AlphaSpec(d, {s: c for (r, s), c in nf.items()})
