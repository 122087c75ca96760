"""Certified enclosures of the roots of a squarefree integer polynomial.

Real roots are isolated by Sturm sequences and refined by sign-checked
Newton steps (bisection as a fallback). Complex roots are seeded by
``mpmath.polyroots`` (untrusted) and certified with the inclusion disc
``|z - c| <= n |f(c) / f'(c)|``: if the s real intervals and the 2t discs are
pairwise disjoint and the discs avoid the real axis, each one holds exactly
one root, because there are only n roots in total.

Embedding indices follow the labeling used throughout the package:
``1..s`` are the real roots in increasing order, ``s+1..s+t`` the roots in
the upper half-plane, and ``s+t+k`` is the complex conjugate of ``s+k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

import mpmath

from . import poly as P
from .errors import PrecisionExhausted
from .intervals import (
    ComplexBall,
    Interval,
    eval_poly_ball,
    log2_floor,
    nearest_dyadic,
    sqrt_upper,
)
from .numfield import FieldElement, NumberField
from .poly import RationalPoly

START_BITS = 64
MAX_BITS = 16384


@dataclass(frozen=True)
class RealEnclosure:
    """Open interval (lo, hi) holding exactly one real root; lo == hi marks an exact rational root."""

    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def ball(self) -> ComplexBall:
        return ComplexBall.from_interval(Interval(self.lo, self.hi))

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi


@dataclass(frozen=True)
class ComplexEnclosure:
    """Disc of radius ``rad`` around ``re + i*im`` holding exactly one root, with im > rad."""

    re: Fraction
    im: Fraction
    rad: Fraction

    @property
    def box(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        """(re_lo, re_hi, im_lo, im_hi) of the bounding box."""
        return (self.re - self.rad, self.re + self.rad, self.im - self.rad, self.im + self.rad)

    def ball(self) -> ComplexBall:
        return ComplexBall(self.re, self.im, self.rad, False)


@dataclass(frozen=True)
class EmbeddingSet:
    poly: RationalPoly
    reals: tuple[RealEnclosure, ...]
    complexes: tuple[ComplexEnclosure, ...]
    precision_bits: int

    @property
    def s(self) -> int:
        return len(self.reals)

    @property
    def t(self) -> int:
        return len(self.complexes)

    @property
    def n(self) -> int:
        return self.s + 2 * self.t

    def kind(self, i: int) -> str:
        if not 1 <= i <= self.n:
            raise IndexError(f"embedding index {i} outside 1..{self.n}")
        if i <= self.s:
            return "real"
        return "upper" if i <= self.s + self.t else "lower"

    def conjugate_index(self, i: int) -> int:
        kind = self.kind(i)
        if kind == "real":
            return i
        return i + self.t if kind == "upper" else i - self.t

    def ball(self, i: int) -> ComplexBall:
        kind = self.kind(i)
        if kind == "real":
            return self.reals[i - 1].ball()
        if kind == "upper":
            return self.complexes[i - self.s - 1].ball()
        return self.complexes[i - self.s - self.t - 1].ball().conjugate()

    def index_map(self) -> list[tuple[int, str, int]]:
        """(sigma index, kind, position within its group) for every embedding."""
        out = []
        for i in range(1, self.n + 1):
            kind = self.kind(i)
            pos = i - 1 if kind == "real" else (i - self.s - 1) % self.t
            out.append((i, kind, pos))
        return out

    def refined(self, bits: int) -> EmbeddingSet:
        if bits <= self.precision_bits:
            return self
        f = self.poly
        df = f.derivative()
        reals = tuple(_refine_real(f, df, r, bits) for r in self.reals)
        complexes = tuple(_refine_complex(f, df, c, bits) for c in self.complexes)
        return EmbeddingSet(f, reals, complexes, bits)


# -- real roots --------------------------------------------------------------

def isolate_real_roots(f: RationalPoly) -> list[RealEnclosure]:
    """Disjoint isolating intervals for the real roots of squarefree f, ascending."""
    seq = P.sturm_sequence(f)
    bound = P.cauchy_bound(f)
    total = P.count_real_roots(f, -bound, bound, seq)
    out = []
    stack = [(-bound, bound, total)]
    while stack:
        lo, hi, k = stack.pop()
        if k == 0:
            continue
        if k == 1:
            out.append(RealEnclosure(lo, hi))
            continue
        mid = _split_point(f, lo, hi)
        left = P.count_real_roots(f, lo, mid, seq)
        stack.append((lo, mid, left))
        stack.append((mid, hi, k - left))
    return sorted(out, key=lambda r: r.lo)


def _split_point(f: RationalPoly, lo: Fraction, hi: Fraction) -> Fraction:
    w = hi - lo
    mid = (lo + hi) / 2
    k = 1
    while f(mid) == 0:
        mid = (lo + hi) / 2 + (w / 64) * (k if k % 2 else -k)
        k += 1
    return mid


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def _refine_real(f: RationalPoly, df: RationalPoly, enc: RealEnclosure, bits: int) -> RealEnclosure:
    target = Fraction(1, 1 << bits)
    lo, hi = enc.lo, enc.hi
    if hi - lo <= target:
        return enc
    slo = _sign(f(lo))
    while hi - lo > target:
        # Newton from the midpoint, then accept only a sign-verified bracket
        x = (lo + hi) / 2
        acc = max(2, -log2_floor(hi - lo))
        ok = True
        while acc < bits + 4:
            acc = min(2 * acc, bits + 4)
            d = df(x)
            if d == 0:
                ok = False
                break
            x = nearest_dyadic(x - f(x) / d, acc + 4)
            if not lo < x < hi:
                ok = False
                break
        if ok:
            e = Fraction(1, 1 << (bits + 2))
            a, b = x - e, x + e
            if lo <= a and b <= hi:
                sa, sb = _sign(f(a)), _sign(f(b))
                if sa == 0:
                    return RealEnclosure(a, a)
                if sb == 0:
                    return RealEnclosure(b, b)
                if sa != sb:
                    return RealEnclosure(a, b)
        for _ in range(8):
            mid = (lo + hi) / 2
            sm = _sign(f(mid))
            if sm == 0:
                return RealEnclosure(mid, mid)
            if sm == slo:
                lo = mid
            else:
                hi = mid
            if hi - lo <= target:
                break
    return RealEnclosure(lo, hi)


# -- complex roots -----------------------------------------------------------

def _horner_complex(coeffs, re: Fraction, im: Fraction) -> tuple[Fraction, Fraction]:
    ar, ai = Fraction(0), Fraction(0)
    for c in reversed(coeffs):
        ar, ai = ar * re - ai * im + c, ar * im + ai * re
    return ar, ai


def _newton_step(f: RationalPoly, df: RationalPoly, re: Fraction, im: Fraction, bits: int):
    fr, fi = _horner_complex(f.coeffs, re, im)
    dr, di = _horner_complex(df.coeffs, re, im)
    den = dr * dr + di * di
    if den == 0:
        return None
    qr = (fr * dr + fi * di) / den
    qi = (fi * dr - fr * di) / den
    return nearest_dyadic(re - qr, bits), nearest_dyadic(im - qi, bits)


def _inclusion_radius(f: RationalPoly, df: RationalPoly, re: Fraction, im: Fraction, bits: int):
    """Upper bound on n |f(c)/f'(c)|; a disc of that radius around c contains a root."""
    fr, fi = _horner_complex(f.coeffs, re, im)
    if fr == 0 and fi == 0:
        return Fraction(0)
    dr, di = _horner_complex(df.coeffs, re, im)
    den = dr * dr + di * di
    if den == 0:
        return None
    n = f.degree
    r2 = Fraction(n * n) * (fr * fr + fi * fi) / den
    return sqrt_upper(r2, bits + 8)


def _mpf_to_fraction(x) -> Fraction:
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    if man == 0:
        return Fraction(0)
    return Fraction(-man if sign else man) * Fraction(2) ** exp


def _complex_seeds(f: RationalPoly, t: int, bits: int) -> list[tuple[Fraction, Fraction]]:
    coeffs = [int(c) if c.denominator == 1 else mpmath.mpf(c.numerator) / c.denominator
              for c in reversed(f.coeffs)]
    dps = max(30, bits // 3 + 10)
    with mpmath.workdps(dps):
        try:
            roots = mpmath.polyroots(coeffs, maxsteps=200 + 20 * f.degree, extraprec=4 * dps)
        except mpmath.libmp.NoConvergence as exc:  # pragma: no cover - exercised only on hard inputs
            raise PrecisionExhausted(f"root seeding did not converge for {f}") from exc
        roots = [mpmath.mpc(r) for r in roots]
        upper = sorted(roots, key=lambda z: -z.imag)[:t]
        return [(_mpf_to_fraction(z.real), _mpf_to_fraction(z.imag)) for z in upper]


def _certify_complex(f: RationalPoly, df: RationalPoly, seeds, bits: int):
    discs = []
    for re, im in seeds:
        re, im = nearest_dyadic(re, bits + 8), nearest_dyadic(im, bits + 8)
        for _ in range(6):
            step = _newton_step(f, df, re, im, bits + 8)
            if step is None:
                return None
            re, im = step
        r = _inclusion_radius(f, df, re, im, bits)
        if r is None or im <= r:
            return None
        discs.append(ComplexEnclosure(re, im, r))
    for a in range(len(discs)):
        for b in range(a + 1, len(discs)):
            da, db = discs[a], discs[b]
            dist2 = (da.re - db.re) ** 2 + (da.im - db.im) ** 2
            if dist2 <= (da.rad + db.rad) ** 2:
                return None
    return discs


def _refine_complex(f: RationalPoly, df: RationalPoly, enc: ComplexEnclosure, bits: int) -> ComplexEnclosure:
    target = Fraction(1, 1 << bits)
    if enc.rad <= target:
        return enc
    n_bits = f.degree.bit_length()
    re, im = enc.re, enc.im
    acc = max(2, -log2_floor(enc.rad) if enc.rad else bits)
    work = bits + n_bits + 6
    for attempt in range(4):
        while acc < work:
            acc = min(2 * acc, work)
            step = _newton_step(f, df, re, im, acc + 4)
            if step is None:
                break
            re, im = step
        r = _inclusion_radius(f, df, re, im, work)
        if r is not None and r <= target:
            # the new disc must sit inside the old one, which holds exactly one root
            slack = enc.rad - r
            if slack >= 0 and (re - enc.re) ** 2 + (im - enc.im) ** 2 <= slack * slack:
                return ComplexEnclosure(re, im, r)
        work += 16 * (attempt + 1)
        acc = acc // 2
    raise PrecisionExhausted(f"could not refine complex root of {f} to {bits} bits")


def isolate_roots(target: Union[NumberField, RationalPoly], precision_bits: int = START_BITS,
                  max_bits: int = MAX_BITS) -> EmbeddingSet:
    """Certified enclosures of all roots, refined to radius <= 2^-precision_bits.

    Raises PrecisionExhausted if certification of the complex roots fails
    even at ``max_bits``.
    """
    f = target.minpoly if isinstance(target, NumberField) else target
    if not P.is_squarefree(f):
        raise ValueError(f"{f} is not squarefree")
    f = f.monic()
    df = f.derivative()
    reals = isolate_real_roots(f)
    s = len(reals)
    t = (f.degree - s) // 2
    complexes: list[ComplexEnclosure] = []
    if t:
        bits = START_BITS
        while True:
            seeds = _complex_seeds(f, t, bits)
            found = _certify_complex(f, df, seeds, bits)
            if found is not None:
                complexes = found
                break
            if bits >= max_bits:
                raise PrecisionExhausted(f"complex roots of {f} not certified at {max_bits} bits")
            bits = min(2 * bits, max_bits)
    complexes.sort(key=lambda c: (c.re - c.rad, c.im - c.rad))
    base = EmbeddingSet(f, tuple(reals), tuple(complexes), 0)
    # normalise: the real intervals come from Sturm isolation and need refining too
    return base.refined(precision_bits)


def signature(minpoly: RationalPoly) -> tuple[int, int]:
    """(s, t) from an exact Sturm count; raises ValueError if not squarefree."""
    if not isinstance(minpoly, RationalPoly):
        minpoly = RationalPoly(minpoly)
    return P.signature(minpoly)


def field_embeddings(K: NumberField, precision_bits: int) -> EmbeddingSet:
    """Embeddings of K refined to at least ``precision_bits``; the most refined set is cached on K."""
    cached = K._cache.get("embeddings")
    if cached is None:
        cached = isolate_roots(K, max(precision_bits, START_BITS))
    elif cached.precision_bits < precision_bits:
        cached = cached.refined(precision_bits)
    else:
        return cached
    K._cache["embeddings"] = cached
    return cached


@lru_cache(maxsize=65536)
def _evaluate_upper(a: FieldElement, i: int, bits: int) -> ComplexBall:
    K = a.field
    target = Fraction(1, 1 << bits)
    guard = 16
    for _ in range(12):
        emb = field_embeddings(K, bits + guard)
        ball = emb.ball(i)
        if emb.precision_bits > 2 * (bits + guard):
            # the cache may hold far more digits than needed; big centers make the shift slow
            ball = ball.coarsened(bits + guard + 2)
        out = eval_poly_ball(a.coords, ball, bits)
        if out.rad <= target:
            return out
        guard += max(8, log2_floor(out.rad) + bits + 4)
    raise PrecisionExhausted(f"evaluation of {a} at index {i} did not reach {bits} bits")


def evaluate(a: FieldElement, i: int, precision_bits: int = START_BITS, max_bits: int = MAX_BITS) -> ComplexBall:
    """Enclosure of sigma_i(a) with radius <= 2^-precision_bits.

    Conjugate indices are returned as the exact conjugate of the upper-half
    enclosure, so sigma_{s+t+k}(a) and sigma_{s+k}(a) are mirror images.
    """
    if precision_bits > max_bits:
        raise PrecisionExhausted(f"requested {precision_bits} bits exceeds the cap {max_bits}")
    K = a.field
    emb = field_embeddings(K, START_BITS)
    kind = emb.kind(i)
    if kind == "lower":
        return _evaluate_upper(a, i - K.t, precision_bits).conjugate()
    return _evaluate_upper(a, i, precision_bits)


def sign_at(a: FieldElement, i: int, max_bits: int = MAX_BITS) -> int:
    """Exact sign of sigma_i(a) for a real index i."""
    K = a.field
    if not 1 <= i <= K.s:
        raise IndexError(f"index {i} is not a real embedding (s = {K.s})")
    if a.is_zero():
        return 0
    g = P.poly_gcd(K.minpoly, a.poly)
    if g.degree >= 1:
        enc = field_embeddings(K, START_BITS).reals[i - 1]
        if enc.lo == enc.hi:
            if g(enc.lo) == 0:
                return 0
        elif P.count_real_roots(g, enc.lo, enc.hi) > 0:
            return 0
    bits = START_BITS
    while True:
        ball = evaluate(a, i, bits, max_bits)
        iv = ball.real_interval()
        if iv.lo > 0:
            return 1
        if iv.hi < 0:
            return -1
        if bits >= max_bits:
            raise PrecisionExhausted(f"sign of {a} at index {i} undecided at {max_bits} bits")
        bits = min(2 * bits, max_bits)


def norm_enclosure(a: FieldElement, precision_bits: int = START_BITS) -> ComplexBall:
    """Ball-arithmetic product of all n embedding values (contains the exact norm)."""
    from .intervals import mul_balls

    K = a.field
    acc = ComplexBall(Fraction(1), Fraction(0), Fraction(0), True)
    for i in range(1, K.degree + 1):
        acc = mul_balls(acc, evaluate(a, i, precision_bits), precision_bits)
    return acc
