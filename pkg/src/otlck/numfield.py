"""Exact arithmetic in K = Q[x]/(f).

Elements are stored as power-basis coordinate tuples of ``Fraction``. The
defining polynomial is trusted to be irreducible; squarefreeness and the
absence of rational roots are checked, and any inverse computation that
runs into a nontrivial factor of f raises :class:`ReducibleFieldError`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

from . import poly as P
from .errors import FieldMismatchError, FieldValidationError, ReducibleFieldError
from .linalg import nullspace
from .poly import RationalPoly

Scalar = Union[int, Fraction]


class NumberField:
    """K = Q[x]/(minpoly) with its signature (s, t).

    Construction checks monic / integer / squarefree only, so small fields such
    as Q(sqrt 2) can be used for arithmetic. Use :func:`validate_field` for the
    full admission rules applied to Oeljeklaus-Toma input.
    """

    def __init__(self, minpoly: RationalPoly | Sequence[Scalar]):
        if not isinstance(minpoly, RationalPoly):
            minpoly = RationalPoly(minpoly)
        if minpoly.degree < 1:
            raise FieldValidationError("degree", "defining polynomial must have degree >= 1")
        if not minpoly.is_monic():
            raise FieldValidationError("non-monic", f"{minpoly} is not monic")
        if not minpoly.has_integer_coeffs():
            raise FieldValidationError("non-integer", f"{minpoly} has non-integer coefficients")
        if not P.is_squarefree(minpoly):
            raise FieldValidationError("not-squarefree", f"{minpoly} is not squarefree")
        s, t = P.signature(minpoly)
        self.minpoly = minpoly
        self.s = s
        self.t = t
        self._cache: dict = {}

    @property
    def degree(self) -> int:
        return self.minpoly.degree

    @property
    def signature(self) -> tuple[int, int]:
        return self.s, self.t

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.minpoly == other.minpoly

    def __hash__(self):
        return hash(("NumberField", self.minpoly))

    def __repr__(self):
        return f"NumberField({self.minpoly}, signature=({self.s}, {self.t}))"

    def element(self, coords: Iterable[Scalar]) -> FieldElement:
        coords = [Fraction(c) for c in coords]
        if len(coords) > self.degree:
            return self.from_poly(RationalPoly(coords))
        coords += [Fraction(0)] * (self.degree - len(coords))
        return FieldElement(self, tuple(coords))

    def from_poly(self, p: RationalPoly) -> FieldElement:
        r = p % self.minpoly
        coords = list(r.coeffs) + [Fraction(0)] * (self.degree - len(r.coeffs))
        return FieldElement(self, tuple(coords))

    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatchError("element belongs to another field")
            return value
        if isinstance(value, RationalPoly):
            return self.from_poly(value)
        if isinstance(value, (int, Fraction)):
            return self.element([value])
        return self.element(value)

    @property
    def gen(self) -> FieldElement:
        """The class of x."""
        return self.from_poly(RationalPoly.x())

    @property
    def one(self) -> FieldElement:
        return self.element([1])

    @property
    def zero(self) -> FieldElement:
        return self.element([])

    def embeddings(self, precision_bits: int = 64):
        """Certified root enclosures refined to ``precision_bits`` (cached, see :mod:`otlck.embeddings`)."""
        from .embeddings import field_embeddings

        return field_embeddings(self, precision_bits)


@dataclass(frozen=True)
class FieldElement:
    field: NumberField
    coords: tuple[Fraction, ...]

    @property
    def poly(self) -> RationalPoly:
        return RationalPoly(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def _check(self, other) -> FieldElement:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError("operands belong to different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.element([other])
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return element_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return element_mul(self, element_inverse(other))

    def __rtruediv__(self, other):
        return element_mul(self._check(other), element_inverse(self))

    def __pow__(self, e: int):
        if e < 0:
            return element_inverse(self) ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __repr__(self):
        return f"FieldElement({self.poly} mod {self.field.minpoly})"

    def __str__(self):
        return str(self.poly)

    def inverse(self) -> FieldElement:
        return element_inverse(self)

    def norm(self) -> Fraction:
        return norm(self)

    def minimal_polynomial(self) -> RationalPoly:
        return minimal_polynomial(self)

    def is_unit(self) -> bool:
        return is_unit(self)

    @property
    def degree(self) -> int:
        """Degree of the element over Q."""
        return minimal_polynomial(self).degree


def element_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    if a.field != b.field:
        raise FieldMismatchError("operands belong to different fields")
    return a.field.from_poly(a.poly * b.poly)


def element_inverse(a: FieldElement) -> FieldElement:
    if a.is_zero():
        raise ZeroDivisionError("inverse of zero element")
    f = a.field.minpoly
    g, s, _ = P.poly_xgcd(a.poly, f)
    if g.degree > 0:
        a.field._cache["rejected"] = g
        raise ReducibleFieldError(f"defining polynomial {f} has the factor {g}; field rejected")
    return a.field.from_poly(s)


def norm(a: FieldElement) -> Fraction:
    """N_{K/Q}(a) = Res(f, a) for monic f."""
    if a.is_zero():
        return Fraction(0)
    return P.resultant(a.field.minpoly, a.poly)


@lru_cache(maxsize=4096)
def minimal_polynomial(a: FieldElement) -> RationalPoly:
    """Monic minimal polynomial of a over Q, from the first linear dependency among 1, a, a^2, ..."""
    n = a.field.degree
    powers = [a.field.one]
    for _ in range(n):
        powers.append(powers[-1] * a)
    # columns are the power vectors; the first kernel vector in RREF order is the minimal relation
    mat = [[powers[k].coords[i] for k in range(n + 1)] for i in range(n)]
    kernel = nullspace(mat)
    rel = kernel[0]
    d = max(k for k, c in enumerate(rel) if c != 0)
    lead = rel[d]
    return RationalPoly(c / lead for c in rel[: d + 1])


def is_unit(a: FieldElement) -> bool:
    """a is an algebraic integer with norm +-1."""
    if a.is_zero():
        return False
    g = minimal_polynomial(a)
    return g.has_integer_coeffs() and abs(g[0]) == 1


def validate_field(minpoly: RationalPoly | Sequence[Scalar]) -> NumberField:
    """Admission checks for Oeljeklaus-Toma input, each failure with its own ``reason`` label.

    Labels: ``non-monic``, ``non-integer``, ``not-squarefree``, ``rational-root``,
    ``degree``, ``no-real-embedding``.
    """
    if not isinstance(minpoly, RationalPoly):
        minpoly = RationalPoly(minpoly)
    if minpoly.degree < 1:
        raise FieldValidationError("degree", "defining polynomial must be non-constant")
    if not minpoly.is_monic():
        raise FieldValidationError("non-monic", f"{minpoly} is not monic")
    if not minpoly.has_integer_coeffs():
        raise FieldValidationError("non-integer", f"{minpoly} has non-integer coefficients")
    if not P.is_squarefree(minpoly):
        raise FieldValidationError("not-squarefree", f"{minpoly} is not squarefree")
    roots = P.rational_roots(minpoly)
    if roots:
        raise FieldValidationError("rational-root", f"{minpoly} has the rational root {roots[0]}")
    if minpoly.degree < 3:
        raise FieldValidationError("degree", f"degree {minpoly.degree} < 3")
    K = NumberField(minpoly)
    if K.s == 0:
        raise FieldValidationError("no-real-embedding", f"{minpoly} has no real root (s = 0)")
    return K
