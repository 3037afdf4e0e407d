"""Exact quasi-polynomial arithmetic.

A QuasiPoly is a finite sum  sum_c p_c(t) * exp(c*t)  with rational
polynomial coefficients and exponents c in (1/2)Z. Exponents are stored as
the even/odd integer exp2 = 2c, so the substitution y = exp(-t/2) turns the
term with exp2 = -m into (polynomial) * y^m.

All ring and calculus operations are exact over Fraction; numeric
evaluation goes through mpmath at a caller-chosen binary precision.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

import mpmath

Rat = Union[int, Fraction]


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    raise TypeError(f"expected a rational, got {type(v).__name__}")


class Poly:
    """Polynomial over Q, coefficients stored ascending with no trailing zeros."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Rat] = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def const(cls, c: Rat) -> "Poly":
        return cls((c,))

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial assigned -1."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly((other,))
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly((other,))
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly(tuple(c * other for c in self.coeffs))
        if not isinstance(other, Poly):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return POLY_ZERO
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = POLY_ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def derivative(self) -> "Poly":
        return Poly(tuple(c * i for i, c in enumerate(self.coeffs) if i >= 1))

    def antiderivative(self) -> "Poly":
        """Antiderivative vanishing at 0."""
        return Poly((Fraction(0),) + tuple(c / (i + 1) for i, c in enumerate(self.coeffs)))

    def __call__(self, x):
        """Horner evaluation; exact for Fraction/int arguments."""
        out = Fraction(0) if isinstance(x, (int, Fraction)) else x * 0
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def eval_mp(self, x) -> mpmath.mpf:
        out = mpmath.mpf(0)
        for c in reversed(self.coeffs):
            out = out * x + mpmath.mpf(c.numerator) / c.denominator
        return out

    def shift_arg(self, a: Rat) -> "Poly":
        """The polynomial p(x + a)."""
        a = _frac(a)
        out = POLY_ZERO
        base = Poly((a, 1))
        for i, c in enumerate(self.coeffs):
            out = out + base**i * c
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly((other,))
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("Poly", self.coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"

    def __str__(self):
        return poly_text(self, "x")


POLY_ZERO = Poly(())
POLY_ONE = Poly((1,))
POLY_X = Poly((0, 1))


class QuasiPoly:
    """Finite sum of Poly(t) * exp((exp2/2) * t) terms, exp2 integer."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Union[Mapping[int, Poly], Iterable[tuple[int, Poly]]] = ()):
        if isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = terms
        acc: dict[int, Poly] = {}
        for e2, p in items:
            if not isinstance(e2, int):
                raise TypeError(f"exp2 must be int, got {e2!r}")
            if isinstance(p, (int, Fraction)):
                p = Poly((p,))
            if p.is_zero:
                continue
            acc[e2] = acc[e2] + p if e2 in acc else p
        object.__setattr__(
            self,
            "_terms",
            tuple(sorted(((e2, p) for e2, p in acc.items() if not p.is_zero), key=lambda kv: -kv[0])),
        )

    @classmethod
    def constant(cls, c: Rat) -> "QuasiPoly":
        return cls({0: Poly((c,))})

    @classmethod
    def from_poly(cls, p: Poly, exp2: int = 0) -> "QuasiPoly":
        return cls({exp2: p})

    @property
    def terms(self) -> dict[int, Poly]:
        """Mapping exp2 -> Poly (a fresh dict; instances stay immutable)."""
        return dict(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def exp2_values(self) -> tuple[int, ...]:
        return tuple(e2 for e2, _ in self._terms)

    def grade(self, m: int) -> Poly:
        """Coefficient polynomial of y^m, i.e. the term with exp2 = -m."""
        for e2, p in self._terms:
            if e2 == -m:
                return p
        return POLY_ZERO

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QuasiPoly.constant(other)
        if not isinstance(other, QuasiPoly):
            return NotImplemented
        acc = dict(self._terms)
        for e2, p in other._terms:
            acc[e2] = acc[e2] + p if e2 in acc else p
        return QuasiPoly(acc)

    __radd__ = __add__

    def __neg__(self):
        return QuasiPoly({e2: -p for e2, p in self._terms})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QuasiPoly.constant(other)
        if not isinstance(other, QuasiPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            return QuasiPoly({e2: p * other for e2, p in self._terms})
        if not isinstance(other, QuasiPoly):
            return NotImplemented
        acc: dict[int, Poly] = {}
        for e2a, pa in self._terms:
            for e2b, pb in other._terms:
                e2 = e2a + e2b
                prod = pa * pb
                acc[e2] = acc[e2] + prod if e2 in acc else prod
        return QuasiPoly(acc)

    __rmul__ = __mul__

    def scale(self, c: Rat) -> "QuasiPoly":
        return self * _frac(c)

    def shift_exp2(self, delta: int) -> "QuasiPoly":
        """Multiply by exp((delta/2) t)."""
        return QuasiPoly({e2 + delta: p for e2, p in self._terms})

    def ddt(self) -> "QuasiPoly":
        """Derivative in t."""
        out: dict[int, Poly] = {}
        for e2, p in self._terms:
            out[e2] = p.derivative() + p * Fraction(e2, 2)
        return QuasiPoly(out)

    def integrate_from_zero(self) -> "QuasiPoly":
        """The antiderivative F with F(0) = 0 and F' = self."""
        acc: dict[int, Poly] = {}
        const = Fraction(0)

        def add(e2: int, p: Poly) -> None:
            if p.is_zero:
                return
            acc[e2] = acc[e2] + p if e2 in acc else p

        for e2, p in self._terms:
            if e2 == 0:
                add(0, p.antiderivative())
                continue
            c = Fraction(e2, 2)
            total = POLY_ZERO
            q = p
            power = Fraction(1)
            sign = 1
            while not q.is_zero:
                power *= c
                total = total + q * (Fraction(sign) / power)
                q = q.derivative()
                sign = -sign
            add(e2, total)
            const -= total(Fraction(0))
        if const != 0:
            add(0, Poly((const,)))
        return QuasiPoly(acc)

    def value_at_zero(self) -> Fraction:
        """Exact value at t = 0."""
        out = Fraction(0)
        for _, p in self._terms:
            out += p(Fraction(0))
        return out

    def eval(self, t, prec_bits: int = 128) -> mpmath.mpf:
        """Numeric value at t, computed at the given binary precision."""
        with mpmath.workprec(prec_bits):
            if isinstance(t, Fraction):
                tv = mpmath.mpf(t.numerator) / t.denominator
            else:
                tv = mpmath.mpf(t)
            total = mpmath.mpf(0)
            for e2, p in self._terms:
                total += p.eval_mp(tv) * mpmath.exp(tv * e2 / 2)
            return +total

    def to_json_dict(self) -> dict:
        return {
            "terms": [
                {"exp2": e2, "coeffs": [str(c) for c in p.coeffs]} for e2, p in self._terms
            ]
        }

    def to_text(self, picture: str = "y") -> str:
        return _quasipoly_text(self, picture, latex=False)

    def to_latex(self, picture: str = "y") -> str:
        return _quasipoly_text(self, picture, latex=True)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QuasiPoly.constant(other)
        return isinstance(other, QuasiPoly) and self._terms == other._terms

    def __hash__(self):
        return hash(("QuasiPoly", self._terms))

    def __setattr__(self, name, value):
        raise AttributeError("QuasiPoly is immutable")

    def __repr__(self):
        return f"QuasiPoly({{{', '.join(f'{e2}: {p!r}' for e2, p in self._terms)}}})"

    def __str__(self):
        return self.to_text("y")


QP_ZERO = QuasiPoly()
QP_ONE = QuasiPoly.constant(1)


def quasipoly_from_json(data: Mapping) -> QuasiPoly:
    """Inverse of QuasiPoly.to_json_dict; extra keys are ignored."""
    terms = {}
    for item in data["terms"]:
        e2 = int(item["exp2"])
        p = Poly(tuple(Fraction(s) for s in item["coeffs"]))
        if e2 in terms:
            raise ValueError(f"duplicate exp2 {e2}")
        terms[e2] = p
    return QuasiPoly(terms)


# ---------------------------------------------------------------------------
# text / LaTeX emitters


def _frac_text(c: Fraction, latex: bool) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    if latex:
        sign = "-" if c < 0 else ""
        return f"{sign}\\tfrac{{{abs(c.numerator)}}}{{{c.denominator}}}"
    return f"{c.numerator}/{c.denominator}"


def _var_power(var: str, k: int, latex: bool) -> str:
    if k == 0:
        return ""
    if k == 1:
        return var
    return f"{var}^{{{k}}}" if latex else f"{var}^{k}"


def poly_text(p: Poly, var: str = "x", latex: bool = False) -> str:
    """Render with powers descending, e.g. (3/2)x^2+2x+1."""
    if p.is_zero:
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if c == 0:
            continue
        vp = _var_power(var, k, latex)
        if not vp:
            body = _frac_text(c, latex)
        elif c == 1:
            body = vp
        elif c == -1:
            body = "-" + vp
        elif c.denominator == 1:
            body = f"{c.numerator}{vp}"
        else:
            body = (_frac_text(c, latex) if latex else f"({_frac_text(c, False)})") + vp
        if parts and not body.startswith("-"):
            parts.append("+" + body)
        else:
            parts.append(body)
    return "".join(parts)


def _exp_factor_text(e2: int, latex: bool) -> str:
    # exp((e2/2) t) rendered in terms of t
    if e2 == 0:
        return ""
    if e2 % 2 == 0:
        k = e2 // 2
        if latex:
            inner = "t" if k == 1 else ("-t" if k == -1 else f"{k}t")
            return f"e^{{{inner}}}"
        if k == 1:
            return "e^t"
        if k == -1:
            return "e^-t"
        return f"e^({k}t)"
    if latex:
        inner = "t/2" if e2 == 1 else ("-t/2" if e2 == -1 else f"{e2}t/2")
        return f"e^{{{inner}}}"
    if e2 == 1:
        return "e^(t/2)"
    if e2 == -1:
        return "e^(-t/2)"
    return f"e^({e2}t/2)"


def _factor_text(e2: int, picture: str, latex: bool) -> str:
    if picture == "y" and e2 <= 0:
        m = -e2
        if m == 0:
            return ""
        if m == 1:
            return "y"
        return f"y^{{{m}}}" if latex else f"y^{m}"
    return _exp_factor_text(e2, latex)


def _quasipoly_text(f: QuasiPoly, picture: str, latex: bool) -> str:
    if picture not in ("y", "t"):
        raise ValueError(f"unknown picture {picture!r}")
    if f.is_zero:
        return "0"
    var = "x" if picture == "y" else "t"
    pieces = []
    for e2, p in f._terms:  # exp2 descending, i.e. y-powers ascending
        fac = _factor_text(e2, picture, latex)
        neg = p.leading() < 0
        if neg:
            p = -p
        if not fac:
            body = poly_text(p, var, latex)
        elif p == POLY_ONE:
            body = fac
        elif p.degree == 0 and p.coeffs[0].denominator == 1:
            body = f"{p.coeffs[0].numerator}{fac}"
        else:
            body = f"({poly_text(p, var, latex)}){fac}"
        if not pieces:
            pieces.append(("-" if neg else "") + body)
        else:
            pieces.append((" - " if neg else " + ") + body)
    return "".join(pieces)
