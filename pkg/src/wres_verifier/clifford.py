"""Boundary Clifford algebra on the alphabet {c(xi'), c(dx_n), p0}.

With |xi'| = 1 both generators square to -1 and anticommute, so every word
without p0 reduces to one of 1, CXI, CDXN, CXI.CDXN times a sign.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, Iterable, Optional, Sequence

import numpy as np

from wres_verifier.arith import I, ONE, ZERO, GaussianRational
from wres_verifier.errors import UnresolvedP0

logger = logging.getLogger("wres_verifier.clifford")


class CliffordLetter(str, Enum):
    CXI = "CXI"
    CDXN = "CDXN"
    P0 = "P0"

    @classmethod
    def parse(cls, token: str) -> "CliffordLetter":
        try:
            return cls(token.strip().upper())
        except ValueError:
            raise ValueError(f"Unknown Clifford letter '{token}'") from None


Word = tuple[CliffordLetter, ...]
IDENTITY: Word = ()

_LETTER_RANK = {CliffordLetter.CXI: 0, CliffordLetter.CDXN: 1, CliffordLetter.P0: 2}


def word_key(word: Word) -> tuple:
    return (len(word), tuple(_LETTER_RANK[letter] for letter in word))


def word_text(word: Word) -> str:
    return ".".join(letter.value for letter in word) if word else "1"


def parse_word(text: str) -> Word:
    text = text.strip()
    if text in ("", "1"):
        return IDENTITY
    return tuple(CliffordLetter.parse(token) for token in text.split("."))


def _is_zero(value: Any) -> bool:
    check = getattr(value, "is_zero", None)
    if callable(check):
        return bool(check())
    return value == 0


# --------------------------------------------------
# Normal ordering
# --------------------------------------------------

def _reducible(word: list[CliffordLetter]) -> list[int]:
    return [
        k for k in range(len(word) - 1)
        if word[k] == word[k + 1]
        or (word[k] is CliffordLetter.CDXN and word[k + 1] is CliffordLetter.CXI)
    ]


def reduce_word(word: Sequence[CliffordLetter], pick: Optional[Callable[[list[int]], int]] = None) -> tuple[int, Word]:
    """Rewrites a p0-free word to (sign, normal word).

    ``pick`` chooses which reducible position to rewrite next; the result does
    not depend on it.
    """
    letters = [CliffordLetter(letter) for letter in word]
    if CliffordLetter.P0 in letters:
        raise UnresolvedP0(f"p0 left in word {word_text(tuple(letters))}; substitute it first")
    sign = 1
    while True:
        positions = _reducible(letters)
        if not positions:
            return sign, tuple(letters)
        k = positions[0] if pick is None else pick(positions)
        if letters[k] == letters[k + 1]:
            del letters[k:k + 2]
        else:
            letters[k], letters[k + 1] = letters[k + 1], letters[k]
        sign = -sign


def normal_order(word: Sequence[CliffordLetter], pick: Optional[Callable[[list[int]], int]] = None) -> "CliffordElement":
    sign, reduced = reduce_word(word, pick)
    return CliffordElement(((reduced, GaussianRational(sign)),))


# --------------------------------------------------
# Elements
# --------------------------------------------------

@dataclass(frozen=True)
class CliffordElement:
    """Linear combination of words with exact coefficients.

    Words without p0 are stored normal-ordered. Words containing p0 are kept
    verbatim until :func:`substitute_p0` resolves them.
    """

    terms: tuple[tuple[Word, Any], ...] = ()

    def __post_init__(self) -> None:
        merged: dict[Word, Any] = {}
        for word, coeff in self.terms:
            word = tuple(CliffordLetter(letter) for letter in word)
            if isinstance(coeff, int):
                coeff = GaussianRational(coeff)
            if CliffordLetter.P0 not in word:
                sign, word = reduce_word(word)
                if sign < 0:
                    coeff = -coeff
            merged[word] = merged[word] + coeff if word in merged else coeff
        terms = tuple(
            (word, merged[word])
            for word in sorted(merged, key=word_key)
            if not _is_zero(merged[word])
        )
        object.__setattr__(self, "terms", terms)

    @classmethod
    def identity(cls, coeff: Any = ONE) -> "CliffordElement":
        return cls(((IDENTITY, coeff),))

    @classmethod
    def from_word(cls, word: Iterable[CliffordLetter], coeff: Any = ONE) -> "CliffordElement":
        return cls(((tuple(word), coeff),))

    @classmethod
    def letter(cls, letter: CliffordLetter, coeff: Any = ONE) -> "CliffordElement":
        return cls((((CliffordLetter(letter),), coeff),))

    def is_zero(self) -> bool:
        return not self.terms

    def has_p0(self) -> bool:
        return any(CliffordLetter.P0 in word for word, _ in self.terms)

    def words(self) -> tuple[Word, ...]:
        return tuple(word for word, _ in self.terms)

    def coefficient(self, word: Iterable[CliffordLetter], default: Any = ZERO) -> Any:
        word = tuple(word)
        for w, c in self.terms:
            if w == word:
                return c
        return default

    def __add__(self, other: "CliffordElement") -> "CliffordElement":
        if not isinstance(other, CliffordElement):
            return NotImplemented
        return CliffordElement(self.terms + other.terms)

    def __neg__(self) -> "CliffordElement":
        return CliffordElement(tuple((w, -c) for w, c in self.terms))

    def __sub__(self, other: "CliffordElement") -> "CliffordElement":
        if not isinstance(other, CliffordElement):
            return NotImplemented
        return self + (-other)

    def scale(self, factor: Any) -> "CliffordElement":
        return CliffordElement(tuple((w, c * factor) for w, c in self.terms))

    def __mul__(self, other: Any) -> "CliffordElement":
        if not isinstance(other, CliffordElement):
            return self.scale(other)
        return CliffordElement(tuple(
            (w1 + w2, c1 * c2) for w1, c1 in self.terms for w2, c2 in other.terms
        ))

    def __rmul__(self, other: Any) -> "CliffordElement":
        return CliffordElement(tuple((w, other * c) for w, c in self.terms))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{word_text(w)}" for w, c in self.terms)


def spinor_rank(dim: int) -> int:
    """Dimension of the spinor module in manifold dimension ``dim``."""
    if dim < 1:
        raise ValueError("dimension must be positive")
    return 2 ** (dim // 2)


def spinor_trace(e: CliffordElement, n: int, rank: Optional[int] = None) -> Any:
    """Trace over spinors: rank times the identity coefficient.

    ``rank`` defaults to 2^(n/2) for even ``n``; pass it explicitly for the
    odd-dimensional boundary theorems.
    """
    if rank is None:
        if n < 4 or n % 2:
            raise ValueError(f"spinor_trace needs an even n >= 4, got {n}")
        rank = spinor_rank(n)
    if e.has_p0():
        raise UnresolvedP0("cannot trace an element that still contains p0")
    return e.coefficient(IDENTITY) * rank


def substitute_p0(e: CliffordElement, rule: CliffordElement) -> CliffordElement:
    """Replaces every p0 letter by ``rule`` and normal-orders the result."""
    if rule.has_p0():
        raise ValueError("p0 rule must not contain p0")
    if not e.has_p0():
        return e
    total = CliffordElement()
    for word, coeff in e.terms:
        product = CliffordElement.identity(coeff)
        for letter in word:
            factor = rule if letter is CliffordLetter.P0 else CliffordElement.letter(letter)
            product = product * factor
        total = total + product
    return total


# --------------------------------------------------
# Explicit 4x4 gamma matrices (n = 4 oracle)
# --------------------------------------------------

def _matrix(rows: list[list[Any]]) -> np.ndarray:
    return np.array([[GaussianRational.of(v) for v in row] for row in rows], dtype=object)


def _kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    outer = np.multiply.outer(a, b)
    return outer.transpose(0, 2, 1, 3).reshape(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])


def _generators() -> dict[CliffordLetter, np.ndarray]:
    sigma_x = _matrix([[0, 1], [1, 0]])
    sigma_y = _matrix([[0, -I], [I, 0]])
    sigma_z = _matrix([[1, 0], [0, -1]])
    unit = _matrix([[1, 0], [0, 1]])
    gammas = [
        _kron(sigma_x, unit),
        _kron(sigma_y, unit),
        _kron(sigma_z, sigma_x),
        _kron(sigma_z, sigma_y),
    ]
    # c(e_k) = i*Gamma_k squares to -1
    c = [gamma * I for gamma in gammas]
    third = GaussianRational(1, 0) / 3
    cxi = c[0] * (third * 2) + c[1] * third + c[2] * (third * 2)
    return {CliffordLetter.CXI: cxi, CliffordLetter.CDXN: c[3]}


_GENERATORS = _generators()
_UNIT4 = _kron(_matrix([[1, 0], [0, 1]]), _matrix([[1, 0], [0, 1]]))


def gamma_oracle_trace(word: Sequence[CliffordLetter], n: int = 4) -> GaussianRational:
    """Exact trace of the word realised with explicit 4x4 matrices."""
    if n != 4:
        raise ValueError("the matrix oracle is fixed at n = 4")
    product = _UNIT4
    for letter in word:
        letter = CliffordLetter(letter)
        if letter is CliffordLetter.P0:
            raise UnresolvedP0("substitute p0 before calling the matrix oracle")
        product = product @ _GENERATORS[letter]
    return sum((product[k, k] for k in range(product.shape[0])), ZERO)


def gamma_oracle_trace_element(e: CliffordElement, n: int = 4) -> Any:
    total: Any = ZERO
    for word, coeff in e.terms:
        total = total + coeff * gamma_oracle_trace(word, n)
    return total
