"""Rigorous rational enclosures: real intervals, complex balls, sqrt and log bounds.

Endpoints are exact ``Fraction`` values. Operations may round outward to a
dyadic grid to keep numerators small; rounding is always in the safe
direction, so every result still contains the true value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Sequence


def floor_dyadic(q: Fraction, bits: int) -> Fraction:
    """Largest multiple of 2^-bits that is <= q."""
    if bits >= 0:
        return Fraction((q.numerator << bits) // q.denominator, 1 << bits)
    return Fraction((q.numerator // (q.denominator << -bits)) << -bits)


def ceil_dyadic(q: Fraction, bits: int) -> Fraction:
    return -floor_dyadic(-q, bits)


def nearest_dyadic(q: Fraction, bits: int) -> Fraction:
    return floor_dyadic(q + Fraction(1, 1 << (bits + 1)) if bits >= 0 else q, bits)


def log2_floor(q: Fraction) -> int:
    """floor(log2(q)) for q > 0."""
    e = q.numerator.bit_length() - q.denominator.bit_length()
    # 2^e <= q < 2^(e+1) after adjustment
    if e >= 0:
        if q.numerator < (q.denominator << e):
            e -= 1
    else:
        if (q.numerator << -e) < q.denominator:
            e -= 1
    return e


def sqrt_lower(q: Fraction, bits: int) -> Fraction:
    if q <= 0:
        return Fraction(0)
    scale = 4 ** bits
    return Fraction(isqrt((q.numerator * scale) // q.denominator), 1 << bits)


def sqrt_upper(q: Fraction, bits: int) -> Fraction:
    if q <= 0:
        return Fraction(0)
    scale = 4 ** bits
    v = -((-q.numerator * scale) // q.denominator)  # ceil
    r = isqrt(v)
    if r * r < v:
        r += 1
    return Fraction(r, 1 << bits)


def _atanh_sum(p: int, q: int, work: int) -> tuple[int, int]:
    """Fixed-point enclosure of atanh(p/q) * 2^work, for 0 <= p/q <= 1/3.

    Returns (s, err) with s <= 2^work * atanh(p/q) <= s + err.
    """
    if p == 0:
        return 0, 0
    one = 1 << work
    power = (one * p) // q
    pp, qq = p * p, q * q
    total = 0
    j = 0
    while power:
        total += power // (2 * j + 1)
        power = (power * pp) // qq
        j += 1
    # truncation of each power and term: at most (j + 2) ulps each; tail below 2 (j + 1) ulps
    return total, 2 * (j + 2) * (j + 1) + 4


@lru_cache(maxsize=64)
def _ln2_fixed(work: int) -> tuple[int, int]:
    s, err = _atanh_sum(1, 3, work)
    return 2 * s, 2 * err


def log_enclosure(x: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """(lo, hi) with lo <= ln(x) <= hi and hi - lo <= 2^-bits, for rational x > 0."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError("log of non-positive number")
    if x == 1:
        return Fraction(0), Fraction(0)
    e = log2_floor(x)
    y = x / (Fraction(2) ** e)  # 1 <= y < 2
    z = (y - 1) / (y + 1)  # 0 <= z < 1/3
    guard = 16 + 2 * max(bits, 1).bit_length() + abs(e).bit_length()
    work = bits + guard
    s, err = _atanh_sum(z.numerator, z.denominator, work)
    l2, l2err = _ln2_fixed(work)
    lo_fixed = 2 * s
    hi_fixed = 2 * (s + err)
    if e >= 0:
        lo_fixed += e * l2
        hi_fixed += e * (l2 + l2err)
    else:
        lo_fixed += e * (l2 + l2err)
        hi_fixed += e * l2
    scale = 1 << work
    return Fraction(lo_fixed, scale), Fraction(hi_fixed, scale)


def log_upper(x: Fraction, bits: int = 40) -> Fraction:
    return log_enclosure(x, bits)[1]


@dataclass(frozen=True)
class Interval:
    """Closed real interval [lo, hi] with rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x) -> Interval:
        x = Fraction(x)
        return cls(x, x)

    @classmethod
    def ball(cls, center, radius) -> Interval:
        return cls(Fraction(center) - radius, Fraction(center) + radius)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def rad(self) -> Fraction:
        return (self.hi - self.lo) / 2

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def overlaps(self, other: Interval) -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def subset_of(self, other: Interval) -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def __add__(self, other):
        if not isinstance(other, Interval):
            other = Interval.point(other)
        return Interval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        if not isinstance(other, Interval):
            other = Interval.point(other)
        return Interval(self.lo - other.hi, self.hi - other.lo)

    def __mul__(self, other):
        if not isinstance(other, Interval):
            c = Fraction(other)
            return Interval(min(self.lo * c, self.hi * c), max(self.lo * c, self.hi * c))
        ps = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return Interval(min(ps), max(ps))

    __rmul__ = __mul__

    def square(self) -> Interval:
        if self.lo >= 0:
            return Interval(self.lo ** 2, self.hi ** 2)
        if self.hi <= 0:
            return Interval(self.hi ** 2, self.lo ** 2)
        return Interval(Fraction(0), max(self.lo ** 2, self.hi ** 2))

    def abs(self) -> Interval:
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Interval(Fraction(0), max(-self.lo, self.hi))

    def outward(self, bits: int) -> Interval:
        """Round endpoints outward to multiples of 2^-bits."""
        return Interval(floor_dyadic(self.lo, bits), ceil_dyadic(self.hi, bits))

    def log(self, bits: int) -> Interval:
        if self.lo <= 0:
            raise ValueError("log of an interval reaching zero")
        return Interval(log_enclosure(self.lo, bits)[0], log_enclosure(self.hi, bits)[1])

    def __repr__(self):
        return f"Interval({float(self.lo):.17g}, {float(self.hi):.17g})"


def interval_sum(items: Sequence[Interval]) -> Interval:
    lo = sum((i.lo for i in items), Fraction(0))
    hi = sum((i.hi for i in items), Fraction(0))
    return Interval(lo, hi)


def abs_upper(re: Fraction, im: Fraction, bits: int = 64) -> Fraction:
    """Upper bound on |re + i*im|."""
    if im == 0:
        return abs(re)
    if re == 0:
        return abs(im)
    return sqrt_upper(re * re + im * im, bits)


def abs_lower(re: Fraction, im: Fraction, bits: int = 64) -> Fraction:
    if im == 0:
        return abs(re)
    if re == 0:
        return abs(im)
    return sqrt_lower(re * re + im * im, bits)


@dataclass(frozen=True)
class ComplexBall:
    """Closed disc {z : |z - (re + i*im)| <= rad}; a real interval when im == 0 and ``real``."""

    re: Fraction
    im: Fraction
    rad: Fraction
    real: bool = False

    @classmethod
    def from_interval(cls, iv: Interval) -> ComplexBall:
        return cls(iv.mid, Fraction(0), iv.rad, True)

    @classmethod
    def exact(cls, re, im=0) -> ComplexBall:
        im = Fraction(im)
        return cls(Fraction(re), im, Fraction(0), im == 0)

    def conjugate(self) -> ComplexBall:
        return ComplexBall(self.re, -self.im, self.rad, self.real)

    def coarsened(self, bits: int) -> ComplexBall:
        """A ball with dyadic center on a 2^-bits grid that contains this one."""
        re, im = nearest_dyadic(self.re, bits), nearest_dyadic(self.im, bits)
        err = abs(self.re - re) + abs(self.im - im)
        return ComplexBall(re, im, ceil_dyadic(self.rad + err, bits), self.real)

    def real_interval(self) -> Interval:
        if not self.real:
            raise ValueError("ball is not real")
        return Interval(self.re - self.rad, self.re + self.rad)

    @property
    def box(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.re - self.rad, self.re + self.rad, self.im - self.rad, self.im + self.rad)

    def contains_zero(self) -> bool:
        if self.real:
            return abs(self.re) <= self.rad
        return self.re * self.re + self.im * self.im <= self.rad * self.rad

    def abs_interval(self, bits: int = 64) -> Interval:
        """Interval enclosing |z| over the ball."""
        if self.real:
            return self.real_interval().abs()
        lo = abs_lower(self.re, self.im, bits + 8) - self.rad
        hi = abs_upper(self.re, self.im, bits + 8) + self.rad
        return Interval(max(lo, Fraction(0)), hi)

    def abs_square_interval(self) -> Interval:
        """Interval enclosing |z|^2 over the ball (exact endpoints, no sqrt of the center needed)."""
        if self.real:
            return self.real_interval().square()
        c2 = self.re * self.re + self.im * self.im
        r = self.rad
        # (|c| - r)^2 = c2 - 2 r |c| + r^2; bound |c| on both sides
        cu = sqrt_upper(c2, 64 + max(0, -log2_floor(r) if r else 0))
        cl = sqrt_lower(c2, 64 + max(0, -log2_floor(r) if r else 0))
        lo = c2 - 2 * r * cu + r * r if cl > r else Fraction(0)
        hi = c2 + 2 * r * cu + r * r
        return Interval(max(lo, Fraction(0)), hi)

    def __repr__(self):
        return f"ComplexBall({float(self.re):.17g}{float(self.im):+.17g}j, rad={float(self.rad):.3g})"


def taylor_shift(coeffs: Sequence[Fraction], c_re: Fraction, c_im: Fraction):
    """Coefficients of p(c + h) in h, as lists of (re, im) pairs (exact)."""
    re = [Fraction(a) for a in coeffs]
    im = [Fraction(0)] * len(re)
    n = len(re)
    for k in range(n - 1):
        for j in range(n - 2, k - 1, -1):
            # a_j += c * a_{j+1}
            ar, ai = re[j + 1], im[j + 1]
            re[j] += c_re * ar - c_im * ai
            im[j] += c_re * ai + c_im * ar
    return re, im


def eval_poly_ball(coeffs: Sequence[Fraction], z: ComplexBall, out_bits: int) -> ComplexBall:
    """Rigorous enclosure of p(z) over the ball z.

    Uses the exact Taylor expansion of p at the center:
    |p(c + h) - p(c)| <= sum_{k>=1} |p_k(c)| rad^k.
    The center is then rounded to 2^-(out_bits + 2), and the rounding error
    is folded into the radius.
    """
    if not coeffs:
        return ComplexBall.exact(0, 0) if not z.real else ComplexBall(Fraction(0), Fraction(0), Fraction(0), True)
    if z.real:
        re, im = taylor_shift(coeffs, z.re, Fraction(0))
        im = [Fraction(0)] * len(re)
    else:
        re, im = taylor_shift(coeffs, z.re, z.im)
    r = z.rad
    rad = Fraction(0)
    rk = Fraction(1)
    for k in range(1, len(re)):
        rk *= r
        if rk == 0:
            break
        rad += abs_upper(re[k], im[k], 8) * rk
    grid = out_bits + 2
    cre = nearest_dyadic(re[0], grid)
    cim = nearest_dyadic(im[0], grid) if not z.real else Fraction(0)
    rad += abs(cre - re[0]) + abs(cim - im[0])
    rad = ceil_dyadic(rad, grid + 2) if rad else rad
    return ComplexBall(cre, cim, rad, z.real)


def mul_balls(a: ComplexBall, b: ComplexBall, bits: int) -> ComplexBall:
    """Product enclosure with the center rounded to 2^-(bits + 2)."""
    if a.real and b.real:
        iv = a.real_interval() * b.real_interval()
        return ComplexBall.from_interval(iv.outward(bits + 2))
    re = a.re * b.re - a.im * b.im
    im = a.re * b.im + a.im * b.re
    rad = abs_upper(a.re, a.im, 16) * b.rad + abs_upper(b.re, b.im, 16) * a.rad + a.rad * b.rad
    grid = bits + 2
    cre, cim = nearest_dyadic(re, grid), nearest_dyadic(im, grid)
    rad += abs(cre - re) + abs(cim - im)
    return ComplexBall(cre, cim, ceil_dyadic(rad, grid + 2), False)


def fraction_to_decimal(q: Fraction, digits: int, direction: str = "nearest") -> str:
    """Decimal string with ``digits`` fractional digits, rounded down, up, or to nearest."""
    scale = 10 ** digits
    v = q * scale
    if direction == "down":
        n = v.numerator // v.denominator
    elif direction == "up":
        n = -((-v.numerator) // v.denominator)
    else:
        n = round(v)
    sign = "-" if n < 0 else ""
    n = abs(n)
    whole, frac = divmod(n, scale)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"
