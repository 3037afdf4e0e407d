"""Words in a unitary and its adjoint, and their moment quasi-polynomials.

A Word is a string over the two-letter alphabet {1, *}, standing for a
product of first powers of a unitary (letter 1) and its adjoint (letter *).
The moment of such a word under the free unitary flow depends only
on the signed letter excess d = |#1 - #*|, through the degree-(d-1)
polynomial family Q_d and the substitution y = exp(-t/2).
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

from .errors import SizeError, StructureError
from .qpoly import POLY_ONE, Poly, QuasiPoly

Letters = tuple[int, ...]


class Word:
    """An immutable word over {1, *}; letters stored as +1 / -1."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[int]):
        letts = tuple(letters)
        if not letts:
            raise SizeError("empty word")
        if any(l not in (1, -1) for l in letts):
            raise StructureError(f"letters must be +1 or -1, got {letts}")
        object.__setattr__(self, "letters", letts)

    @classmethod
    def parse(cls, text: str) -> "Word":
        """Parse '1*1' or 'uu*u' style spellings (case-insensitive)."""
        letters = []
        i = 0
        s = text.strip()
        while i < len(s):
            ch = s[i]
            if ch == "1":
                letters.append(1)
                i += 1
            elif ch in ("u", "U"):
                if i + 1 < len(s) and s[i + 1] == "*":
                    letters.append(-1)
                    i += 2
                else:
                    letters.append(1)
                    i += 1
            elif ch == "*":
                letters.append(-1)
                i += 1
            else:
                raise StructureError(f"cannot parse word {text!r} at {ch!r}")
        if not letters:
            raise SizeError(f"empty word {text!r}")
        return cls(letters)

    @property
    def n(self) -> int:
        return len(self.letters)

    @property
    def count_ones(self) -> int:
        return sum(1 for l in self.letters if l == 1)

    @property
    def count_stars(self) -> int:
        return sum(1 for l in self.letters if l == -1)

    def rotate(self, r: int) -> "Word":
        r %= self.n
        return Word(self.letters[r:] + self.letters[:r])

    def reverse(self) -> "Word":
        return Word(self.letters[::-1])

    def swap(self) -> "Word":
        """Exchange the roles of 1 and *."""
        return Word(tuple(-l for l in self.letters))

    def restrict(self, positions: Iterable[int]) -> "Word":
        """Subword at the given 1-based positions, in increasing order."""
        pos = sorted(set(positions))
        if not pos:
            raise SizeError("empty position set")
        if pos[0] < 1 or pos[-1] > self.n:
            raise SizeError(f"positions {pos} outside 1..{self.n}")
        return Word(tuple(self.letters[i - 1] for i in pos))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self):
        return hash(("Word", self.letters))

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    def __str__(self):
        return "".join("1" if l == 1 else "*" for l in self.letters)

    def __repr__(self):
        return f"Word.parse({str(self)!r})"


def as_word(w: Union[Word, str, Iterable[int]]) -> Word:
    if isinstance(w, Word):
        return w
    if isinstance(w, str):
        return Word.parse(w)
    return Word(w)


@lru_cache(maxsize=None)
def biane_Q(n: int) -> Poly:
    """The degree-(n-1) moment polynomial Q_n, normalized by Q_n(0) = 1."""
    if n < 1:
        raise SizeError(f"Q index must be >= 1, got {n}")
    coeffs = []
    for j in range(n):
        base = Fraction(1, -n) if j == 0 else Fraction((-n) ** (j - 1))
        coeffs.append(-base * math.comb(n, j + 1) / math.factorial(j))
    return Poly(coeffs)


def m_poly(w: Union[Word, str]) -> QuasiPoly:
    """Moment of the word as a quasi-polynomial: Q_d(t) y^d with d the letter excess."""
    word = as_word(w)
    d = abs(word.count_ones - word.count_stars)
    if d == 0:
        return QuasiPoly.constant(1)
    return QuasiPoly({-d: biane_Q(d)})


def diag_cumulant(n: int) -> QuasiPoly:
    """Free cumulant of n copies of the same letter: ((-n)^(n-1)/n!) t^(n-1) y^n."""
    if n < 1:
        raise SizeError(f"order must be >= 1, got {n}")
    c = Fraction((-n) ** (n - 1), math.factorial(n))
    return QuasiPoly({-n: Poly((0,) * (n - 1) + (c,))})


def lambert_coeff(n: int) -> Fraction:
    """Taylor coefficient of the principal Lambert W branch at 0."""
    if n < 1:
        raise SizeError(f"index must be >= 1, got {n}")
    return Fraction((-n) ** (n - 1), math.factorial(n))


def exp_neg_sW_coeff(s, n: int):
    """Coefficient of y^n in exp(-s W(y)): (-1)^n s (s+n)^(n-1) / n!.

    Accepts a rational s (returns Fraction) or a symbolic s given as a
    Poly (returns Poly). The n = 0 coefficient is 1.
    """
    if n < 0:
        raise SizeError(f"index must be >= 0, got {n}")
    if isinstance(s, Poly):
        if n == 0:
            return POLY_ONE
        shift = s + Poly((n,))
        return s * shift ** (n - 1) * Fraction((-1) ** n, math.factorial(n))
    s = Fraction(s)
    if n == 0:
        return Fraction(1)
    return Fraction((-1) ** n) * s * (s + n) ** (n - 1) / math.factorial(n)
