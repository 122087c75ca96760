"""Randomized search for number fields of a prescribed signature with known units.

Candidates are monic integer polynomials with f(0) = +-1 and f(1) = +-1, so
x and x - 1 are units; their squares are totally positive. A candidate is
kept when Sturm counting gives the requested signature, factor-degree
patterns modulo a few primes rule out every proper factor over Q, and the
squared units have certified multiplicative rank 2.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .loglattice import RankResult, UnitSubgroup, subgroup_rank
from .numfield import FieldElement, NumberField
from .poly import RationalPoly, is_squarefree, rational_roots, signature

_PRIMES = [p for p in range(3, 400) if all(p % q for q in range(2, int(p ** 0.5) + 1))]


# -- polynomials over F_p, ascending int lists -------------------------------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _zip_padded(a, b):
    m = max(len(a), len(b))
    return zip(list(a) + [0] * (m - len(a)), list(b) + [0] * (m - len(b)))


def _pdivmod(a, b, p):
    a = _trim([c % p for c in a])
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        shift = len(a) - len(b)
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        _trim(a)
    return q, a


def _pmulmod(a, b, f, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _pdivmod(out, f, p)[1]


def _ppowmod(a, e, f, p):
    result = [1]
    while e:
        if e & 1:
            result = _pmulmod(result, a, f, p)
        a = _pmulmod(a, a, f, p)
        e >>= 1
    return result


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    return a


def factor_degrees_mod_p(f: RationalPoly, p: int) -> Optional[list[int]]:
    """Degrees of the irreducible factors of f modulo p (distinct-degree factorization).

    None when p divides the leading coefficient or f is not squarefree mod p.
    """
    fp = _trim([int(c) % p for c in f.coeffs])
    if len(fp) != f.degree + 1:
        return None
    deriv = _trim([(i * c) % p for i, c in enumerate(fp)][1:])
    if len(_pgcd(fp, deriv, p)) > 1:
        return None
    degrees = []
    rest = fp
    xp = [0, 1]
    d = 0
    while len(rest) > 1:
        d += 1
        if 2 * d > len(rest) - 1:
            degrees.append(len(rest) - 1)
            break
        xp = _ppowmod(xp, p, rest, p)
        diff = _trim([(a - b) % p for a, b in _zip_padded(xp, [0, 1])])
        g = _pgcd(rest, diff, p)
        if len(g) > 1:
            degrees += [d] * ((len(g) - 1) // d)
            rest = _pdivmod(rest, g, p)[0]
            xp = _pdivmod(xp, rest, p)[1]
    return sorted(degrees)


def _subset_sums(parts: list[int]) -> set[int]:
    sums = {0}
    for x in parts:
        sums |= {y + x for y in sums}
    return sums


def irreducibility_certificate(f: RationalPoly, primes=_PRIMES) -> Optional[tuple[int, ...]]:
    """Primes whose factor-degree patterns leave no room for a proper factor over Q.

    A factor of degree d over Q reduces to a product of factors mod p, so d
    must be a subset sum of every pattern. An empty intersection in 1..n-1
    proves irreducibility.
    """
    possible = set(range(1, f.degree))
    used = []
    for p in primes:
        if not possible:
            break
        pattern = factor_degrees_mod_p(f, p)
        if pattern is None:
            continue
        sums = _subset_sums(pattern)
        if possible <= sums:
            continue
        possible &= sums
        used.append(p)
    return tuple(used) if not possible else None


# -- the search ---------------------------------------------------------------

@dataclass(frozen=True)
class SearchResult:
    field: NumberField
    units: tuple[FieldElement, ...]
    rank: RankResult
    primes: tuple[int, ...]  # irreducibility certificate
    tries: int
    seed: int


def _candidate(rng: random.Random, n: int, bound: int) -> RationalPoly:
    c = [rng.randint(-bound, bound) for _ in range(n)]
    c[0] = rng.choice((-1, 1))
    # pick the x^(n-1) coefficient so that f(1) = +-1
    target = rng.choice((-1, 1))
    c[n - 1] += target - (1 + sum(c))
    return RationalPoly(c + [1])


def _even(g: RationalPoly) -> RationalPoly:
    out = []
    for c in g.coeffs:
        out += [c, 0]
    return RationalPoly(out[:-1])


def find_field(signature_: tuple[int, int] = (4, 2), seed: int = 0, coeff_bound: int = 4,
               max_tries: int = 200_000, even: bool = False) -> SearchResult:
    """Search for a field of the given signature carrying two independent totally positive units.

    With ``even`` the candidates have the form g(x^2), so K contains the
    index-2 subfield Q(x^2) and the audit sees nontrivial subfield satisfiers.
    """
    s, t = signature_
    n = s + 2 * t
    if even and n % 2:
        raise ValueError("even search needs even degree")
    rng = random.Random(seed)
    for tries in range(1, max_tries + 1):
        if even:
            f = _even(_candidate(rng, n // 2, coeff_bound))
        else:
            f = _candidate(rng, n, coeff_bound)
        if max(abs(c) for c in f.coeffs) > 4 * coeff_bound:
            continue
        if not is_squarefree(f) or signature(f) != (s, t) or rational_roots(f):
            continue
        cert = irreducibility_certificate(f)
        if cert is None:
            continue
        K = NumberField(f)
        x = K.gen
        units = (x ** 2, (x - 1) ** 2)
        rank = subgroup_rank(UnitSubgroup(K, units))
        if rank.certified and rank.rank == 2:
            return SearchResult(K, units, rank, cert, tries, seed)
    raise RuntimeError(f"no field of signature {signature_} found in {max_tries} tries")
