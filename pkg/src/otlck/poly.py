"""Dense univariate polynomials with exact rational coefficients.

Coefficients are stored in ascending order as normalized ``Fraction``
instances; nothing in this module ever rounds.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, gcd
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]


def _strip(coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class RationalPoly:
    """Immutable polynomial over Q, ``coeffs[k]`` is the coefficient of x**k."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[Number] = ()):
        self.coeffs = _strip([Fraction(c) for c in coeffs])
        self._hash = None

    @classmethod
    def x(cls) -> RationalPoly:
        return cls((0, 1))

    @classmethod
    def constant(cls, c: Number) -> RationalPoly:
        return cls((c,))

    @classmethod
    def from_roots(cls, roots: Iterable[Number]) -> RationalPoly:
        p = cls((1,))
        for r in roots:
            p = p * cls((-Fraction(r), 1))
        return p

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def has_integer_coeffs(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, RationalPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _strip([Fraction(other)])
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("RationalPoly", self.coeffs))
        return self._hash

    def __repr__(self):
        return f"RationalPoly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{'*' if mono else ''}{mono}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    @staticmethod
    def _coerce(other) -> RationalPoly:
        if isinstance(other, RationalPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return RationalPoly((other,))
        raise TypeError(f"cannot coerce {type(other).__name__} to RationalPoly")

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] += c
        return RationalPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return RationalPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalPoly(c * other for c in self.coeffs)
        other = self._coerce(other)
        if not self.coeffs or not other.coeffs:
            return RationalPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RationalPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = RationalPoly((1,))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        lc = other.lc
        if len(rem) - 1 < db:
            return RationalPoly(), self
        quot = [Fraction(0)] * (len(rem) - db)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            q = c / lc
            quot[k - db] = q
            for j, b in enumerate(other.coeffs):
                rem[k - db + j] -= q * b
        return RationalPoly(quot), RationalPoly(rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> RationalPoly:
        return RationalPoly(k * c for k, c in enumerate(self.coeffs) if k)

    def monic(self) -> RationalPoly:
        if self.is_zero():
            return self
        lc = self.lc
        return RationalPoly(c / lc for c in self.coeffs)

    def reflect(self) -> RationalPoly:
        """p(-x)."""
        return RationalPoly(-c if k & 1 else c for k, c in enumerate(self.coeffs))

    def primitive_integer(self) -> list[int]:
        """Integer coefficient list proportional to ``self`` with positive lc and content 1."""
        if self.is_zero():
            return []
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for a in ints:
            g = gcd(g, a)
        ints = [a // g for a in ints]
        if ints[-1] < 0:
            ints = [-a for a in ints]
        return ints

    def sign_at(self, x: Fraction) -> int:
        """Exact sign of p(x) at a rational point."""
        v = self(Fraction(x))
        return (v > 0) - (v < 0)


def poly_gcd(a: RationalPoly, b: RationalPoly) -> RationalPoly:
    """Monic gcd (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: RationalPoly, b: RationalPoly):
    """Return (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = a, b
    s0, s1 = RationalPoly((1,)), RationalPoly()
    t0, t1 = RationalPoly(), RationalPoly((1,))
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    lc = r0.lc
    return r0.monic(), s0 * (1 / lc), t0 * (1 / lc)


def is_squarefree(f: RationalPoly) -> bool:
    return poly_gcd(f, f.derivative()).degree == 0


def squarefree_part(f: RationalPoly) -> RationalPoly:
    g = poly_gcd(f, f.derivative())
    return (f // g).monic()


def resultant(f: RationalPoly, g: RationalPoly) -> Fraction:
    """Res(f, g) via the Euclidean recurrence."""
    if f.is_zero() or g.is_zero():
        return Fraction(0)
    m, n = f.degree, g.degree
    if n == 0:
        return g.lc ** m
    if m == 0:
        return f.lc ** n
    if m < n:
        sign = -1 if (m * n) & 1 else 1
        return sign * resultant(g, f)
    r = f % g
    if r.is_zero():
        return Fraction(0)
    # Res(f, g) = (-1)^(mn) lc(g)^(m - deg r) Res(g, r)
    sign = -1 if (m * n) & 1 else 1
    return sign * g.lc ** (m - r.degree) * resultant(g, r)


def rational_roots(f: RationalPoly) -> list[Fraction]:
    """All rational roots (rational root theorem on the primitive integer form)."""
    ints = f.primitive_integer()
    if not ints:
        raise ValueError("zero polynomial")
    roots = []
    k = 0
    while k < len(ints) and ints[k] == 0:
        k += 1
    if k:
        roots.append(Fraction(0))
    ints = ints[k:]
    if len(ints) <= 1:
        return roots
    a0, an = abs(ints[0]), abs(ints[-1])
    ps = _divisors(a0)
    qs = _divisors(an)
    seen = set()
    for p in ps:
        for q in qs:
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand in seen:
                    continue
                seen.add(cand)
                if f(cand) == 0:
                    roots.append(cand)
    return sorted(roots)


def _divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d * d != n:
                out.append(n // d)
        d += 1
    return sorted(out)


# -- Sturm sequences ---------------------------------------------------------

def sturm_sequence(f: RationalPoly) -> list[RationalPoly]:
    seq = [f, f.derivative()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    return seq[:-1]


def _sign_variations(seq: Sequence[RationalPoly], x: Fraction) -> int:
    signs = [s for s in (p.sign_at(x) for p in seq) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sign_variations_at_inf(seq: Sequence[RationalPoly], positive: bool) -> int:
    signs = []
    for p in seq:
        lc = p.lc
        s = (lc > 0) - (lc < 0)
        if not positive and p.degree & 1:
            s = -s
        signs.append(s)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def cauchy_bound(f: RationalPoly) -> Fraction:
    """Strict upper bound on the modulus of every root."""
    lc = abs(f.lc)
    return 1 + max((abs(c) / lc for c in f.coeffs[:-1]), default=Fraction(0))


def count_real_roots(f: RationalPoly, lo: Fraction | None = None, hi: Fraction | None = None,
                     seq: Sequence[RationalPoly] | None = None) -> int:
    """Number of distinct real roots in the open interval (lo, hi).

    ``None`` endpoints stand for -inf / +inf. Finite endpoints must not be
    roots of ``f``.
    """
    if seq is None:
        seq = sturm_sequence(f)
    vlo = _sign_variations_at_inf(seq, False) if lo is None else _sign_variations(seq, Fraction(lo))
    vhi = _sign_variations_at_inf(seq, True) if hi is None else _sign_variations(seq, Fraction(hi))
    return vlo - vhi


def signature(f: RationalPoly) -> tuple[int, int]:
    """(s, t): distinct real roots by Sturm count and number of conjugate pairs."""
    if f.degree < 1:
        raise ValueError("signature of a constant polynomial")
    if not is_squarefree(f):
        raise ValueError("polynomial is not squarefree")
    s = count_real_roots(f)
    return s, (f.degree - s) // 2


# -- power sums and product polynomials --------------------------------------

def power_sums(f: RationalPoly, count: int) -> list[Fraction]:
    """p_1 .. p_count of the roots of ``f`` (Newton's identities)."""
    f = f.monic()
    n = f.degree
    # e_k with sign: f = x^n + a_{n-1} x^{n-1} + ... ; a_{n-k} = (-1)^k e_k
    a = [f[n - k] for k in range(n + 1)]  # a[k] = coefficient of x^(n-k)
    p = [Fraction(n)]
    for k in range(1, count + 1):
        acc = Fraction(0)
        for i in range(1, min(k, n + 1)):
            acc += a[i] * p[k - i]
        if k <= n:
            acc += k * a[k]
        p.append(-acc)
    return p[1:]


def from_power_sums(sums: Sequence[Fraction], degree: int) -> RationalPoly:
    """Monic polynomial of the given degree whose roots have power sums ``sums``."""
    a = [Fraction(1)]
    for k in range(1, degree + 1):
        acc = Fraction(0)
        for i in range(1, k):
            acc += a[i] * sums[k - i - 1]
        acc += sums[k - 1]
        a.append(-acc / k)
    return RationalPoly(reversed(a))


def pair_product_polynomial(g: RationalPoly) -> RationalPoly:
    """Monic polynomial whose roots are all ordered products a*b of roots of g.

    Equals Res_y(g(y), y^m g(x/y)) for monic g of degree m; computed from
    power sums, since sum_{a,b} (ab)^k = p_k(g)^2.
    """
    m = g.degree
    d = m * m
    ps = power_sums(g, d)
    return from_power_sums([p * p for p in ps], d)


def symmetric_square_polynomial(g: RationalPoly) -> RationalPoly:
    """Monic polynomial whose roots are the products a*b over unordered pairs a <= b."""
    m = g.degree
    d = m * (m + 1) // 2
    ps = power_sums(g, 2 * d)
    sums = [(ps[k - 1] ** 2 + ps[2 * k - 1]) / 2 for k in range(1, d + 1)]
    return from_power_sums(sums, d)


def multiset_count(m: int, k: int) -> int:
    """Number of size-k multisets drawn from m items."""
    return comb(m + k - 1, k)
