"""Exact coefficient arithmetic: rationals, sparse polynomials in the
deformation parameter (printed ``L``), and formal linear combinations of
canonical trees.

Coefficients stay symbolic polynomials by default; specializing the
parameter to a concrete rational is always an explicit step.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import ParseError, TreeError
from .trees import WeightedTree

Rational = Fraction


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class LambdaPoly:
    """Sparse univariate polynomial with exact rational coefficients and
    nonnegative integer exponents."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, Fraction] | Iterable[tuple[int, Fraction]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, Fraction] = {}
        for exp, coeff in items:
            if not isinstance(exp, int) or exp < 0:
                raise ValueError(f"exponent must be a nonnegative integer, got {exp!r}")
            c = _as_fraction(coeff)
            if not c:
                continue
            c = acc.get(exp, Fraction(0)) + c
            if c:
                acc[exp] = c
            else:
                acc.pop(exp, None)
        self._terms = tuple(sorted(acc.items()))

    @classmethod
    def zero(cls) -> "LambdaPoly":
        return cls()

    @classmethod
    def one(cls) -> "LambdaPoly":
        return cls(((0, Fraction(1)),))

    @classmethod
    def constant(cls, value) -> "LambdaPoly":
        return cls(((0, _as_fraction(value)),))

    @classmethod
    def monomial(cls, exp: int, coeff=1) -> "LambdaPoly":
        return cls(((exp, _as_fraction(coeff)),))

    def terms(self) -> tuple[tuple[int, Fraction], ...]:
        return self._terms

    def coefficient(self, exp: int) -> Fraction:
        for e, c in self._terms:
            if e == exp:
                return c
        return Fraction(0)

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return self._terms[-1][0] if self._terms else -1

    def evaluate(self, value) -> Fraction:
        value = _as_fraction(value)
        return sum((c * value**e for e, c in self._terms), Fraction(0))

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        # constants hash like their value, matching the coercing __eq__
        if not self._terms:
            return hash(0)
        if len(self._terms) == 1 and self._terms[0][0] == 0:
            return hash(self._terms[0][1])
        return hash(self._terms)

    def __neg__(self):
        return LambdaPoly(tuple((e, -c) for e, c in self._terms))

    def __add__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return LambdaPoly(self._terms + other._terms)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        if len(self._terms) == 1 and len(other._terms) == 1:
            (e1, c1), = self._terms
            (e2, c2), = other._terms
            out = object.__new__(LambdaPoly)
            out._terms = ((e1 + e2, c1 * c2),)
            return out
        acc: dict[int, Fraction] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                acc[e1 + e2] = acc.get(e1 + e2, Fraction(0)) + c1 * c2
        return LambdaPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = LambdaPoly.one()
        for _ in range(n):
            out = out * self
        return out

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self._terms:
            if e == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append("L" if e == 1 else f"L^{e}")
            elif c == -1:
                parts.append("-L" if e == 1 else f"-L^{e}")
            else:
                parts.append(f"{c}*L" if e == 1 else f"{c}*L^{e}")
        return " + ".join(parts)

    def __repr__(self):
        return f"LambdaPoly.parse({str(self)!r})"

    @staticmethod
    def parse(text: str) -> "LambdaPoly":
        return parse_poly(text)


LAMBDA = LambdaPoly.monomial(1)

_MONOMIALS: dict[int, LambdaPoly] = {}


def monomial(exp: int) -> LambdaPoly:
    """Shared unit-coefficient monomials (hot path of the compositions)."""
    hit = _MONOMIALS.get(exp)
    if hit is None:
        hit = LambdaPoly.monomial(exp)
        _MONOMIALS[exp] = hit
    return hit


def _coerce_poly(x):
    if isinstance(x, LambdaPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LambdaPoly.constant(x)
    return NotImplemented


_TERM_RE = re.compile(
    r"^\s*(?P<coeff>-?\d+(?:\s*/\s*\d+)?)?\s*"
    r"(?:(?(coeff)\*\s*)?(?P<neg>-)?L(?:\^(?P<exp>\d+))?)?\s*$"
)


def parse_poly(text: str) -> LambdaPoly:
    """Parse ``1 + 2*L^3`` style polynomial text; lambda may be written L."""
    text = text.replace("λ", "L")
    if text.strip() == "0":
        return LambdaPoly.zero()
    terms: list[tuple[int, Fraction]] = []
    offset = 0
    for chunk in text.split("+"):
        m = _TERM_RE.match(chunk)
        stripped = chunk.strip()
        if not stripped or m is None or (m.group("coeff") is None and "L" not in chunk):
            raise ParseError(f"bad polynomial term {stripped!r}", offset)
        coeff = Fraction(m.group("coeff").replace(" ", "")) if m.group("coeff") else Fraction(1)
        if m.group("neg"):
            coeff = -coeff
        if "L" in chunk:
            exp = int(m.group("exp")) if m.group("exp") else 1
        else:
            exp = 0
        terms.append((exp, coeff))
        offset += len(chunk) + 1
    return LambdaPoly(terms)


def poly_eval(p: LambdaPoly, value) -> Fraction:
    """Exact evaluation of p at a rational value of the parameter."""
    return p.evaluate(value)


class Combination:
    """Finite formal sum of hashable terms with LambdaPoly coefficients.

    Zero coefficients are pruned eagerly; instances are immutable.
    Subclasses pin down the admissible term type and the print order.
    """

    __slots__ = ("_terms",)

    def __init__(self, data: Mapping | Iterable[tuple] = ()):
        items = data.items() if isinstance(data, Mapping) else data
        acc: dict = {}
        for term, coeff in items:
            poly = coeff if isinstance(coeff, LambdaPoly) else LambdaPoly.constant(coeff)
            if not poly:
                continue
            prev = acc.get(term)
            poly = poly if prev is None else prev + poly
            if poly:
                acc[term] = poly
            else:
                acc.pop(term, None)
        self._validate(acc)
        self._terms = acc

    def _validate(self, acc: dict) -> None:
        raise NotImplementedError

    @classmethod
    def _raw(cls, terms: dict):
        """Wrap an already-normalized term dict without copying or
        validation; internal fast path, the dict must not be shared."""
        obj = object.__new__(cls)
        obj._terms = terms
        return obj

    @staticmethod
    def _sort_key(term):
        return str(term)

    @staticmethod
    def _format_term(term) -> str:
        return str(term)

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def of(cls, term, coeff=1):
        return cls(((term, coeff if isinstance(coeff, LambdaPoly) else LambdaPoly.constant(coeff)),))

    def terms(self) -> list[tuple]:
        return sorted(self._terms.items(), key=lambda kv: self._sort_key(kv[0]))

    def coefficient(self, term) -> LambdaPoly:
        return self._terms.get(term, LambdaPoly.zero())

    def support(self) -> set:
        return set(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self.terms())

    def __eq__(self, other):
        return type(other) is type(self) and self._terms == other._terms

    def __neg__(self):
        return type(self)(tuple((t, -c) for t, c in self._terms.items()))

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return type(self)(tuple(self._terms.items()) + tuple(other._terms.items()))

    def __sub__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self + (-other)

    def scale(self, coeff):
        poly = coeff if isinstance(coeff, LambdaPoly) else LambdaPoly.constant(coeff)
        return type(self)(tuple((t, poly * c) for t, c in self._terms.items()))

    def __rmul__(self, coeff):
        if isinstance(coeff, (int, Fraction, LambdaPoly)):
            return self.scale(coeff)
        return NotImplemented

    def __mul__(self, coeff):
        if isinstance(coeff, (int, Fraction, LambdaPoly)):
            return self.scale(coeff)
        return NotImplemented

    def specialize(self, value) -> "Combination":
        """Evaluate every coefficient at a rational parameter value."""
        return type(self)(
            tuple((t, LambdaPoly.constant(c.evaluate(value)))
                  for t, c in self._terms.items())
        )

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for term, poly in self.terms():
            ps = str(poly)
            if len(poly) > 1:
                ps = f"({ps})"
            parts.append(f"{ps} * {self._format_term(term)}")
        return " + ".join(parts)

    def __repr__(self):
        return f"<{type(self).__name__} {self}>"


class TreeCombination(Combination):
    """Formal linear combination of canonical weighted trees."""

    __slots__ = ()

    def _validate(self, acc: dict) -> None:
        modes = set()
        for term in acc:
            if not isinstance(term, WeightedTree):
                raise TreeError(f"tree combination term must be a WeightedTree, got {term!r}")
            modes.add(term.is_labeled)
        if len(modes) > 1:
            raise TreeError("cannot mix labeled and unlabeled trees in one combination")

    @staticmethod
    def _sort_key(term):
        return term.encoding

    @staticmethod
    def _format_term(term) -> str:
        return term.encoding


def combo_add(a: Combination, b: Combination) -> Combination:
    return a + b


def combo_sub(a: Combination, b: Combination) -> Combination:
    return a - b


def combo_scale(coeff, c: Combination) -> Combination:
    return c.scale(coeff)


def specialize(c: Combination, value) -> Combination:
    return c.specialize(value)
