"""Logarithmic embedding of units, the Dirichlet hyperplane, and lattice tools.

The rank of a unit group is certified from two sides: integer relations
found by LLL on scaled log vectors are checked exactly in the field
(prod g_i^a_i must be +1 or -1, the only roots of unity when s >= 1), and
the remaining log vectors are shown independent through an interval minor
that provably avoids singularity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

import numpy as np

from .embeddings import MAX_BITS, START_BITS, evaluate, field_embeddings, sign_at
from .errors import (
    DimensionMismatchError,
    FieldMismatchError,
    FullRankSublatticeError,
    NotAUnitError,
    PrecisionExhausted,
)
from .intervals import Interval, interval_sum, log2_floor, nearest_dyadic
from .linalg import hnf, in_integer_span, in_rational_span, inverse, lll, rank as exact_rank
from .numfield import FieldElement, NumberField, is_unit


class NotTotallyPositiveError(NotAUnitError):
    pass


@dataclass(frozen=True)
class LogVector:
    """(log|sigma_1(u)|, ..., log|sigma_{s+t}(u)|) as certified intervals."""

    entries: tuple[Interval, ...]
    s: int
    source: Optional[FieldElement] = field(default=None, compare=False)

    @property
    def t(self) -> int:
        return len(self.entries) - self.s

    def midpoints(self) -> list[Fraction]:
        return [e.mid for e in self.entries]

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]


def log_embedding(u: FieldElement, precision_bits: int = 128, max_bits: int = MAX_BITS,
                  check_unit: bool = True) -> LogVector:
    """Certified enclosure of l(u); every entry has width <= 2^-precision_bits."""
    if check_unit and not is_unit(u):
        raise NotAUnitError(f"{u} is not a unit")
    K = u.field
    entries = []
    for i in range(1, K.s + K.t + 1):
        entries.append(_log_abs(u, i, precision_bits, max_bits))
    return LogVector(tuple(entries), K.s, u)


def _log_abs(u: FieldElement, i: int, bits: int, max_bits: int) -> Interval:
    target = Fraction(1, 1 << bits)
    guard = 8
    while True:
        ball = evaluate(u, i, bits + guard, max_bits + 64)
        a = ball.abs_interval(bits + guard)
        if a.lo > 0:
            iv = a.log(bits + 2)
            if iv.width <= target:
                return iv
            # relative width of |sigma| limits the log width; need more bits of sigma
            guard += max(4, log2_floor(iv.width) + bits + 2)
        else:
            guard += 32
        if bits + guard > max_bits + 64:
            raise PrecisionExhausted(f"log|sigma_{i}({u})| not resolved below the cap")


def dirichlet_residual(v, s: Optional[int] = None) -> Interval:
    """Enclosure of x_1 + ... + x_s + 2 x_{s+1} + ... + 2 x_{s+t}.

    ``v`` is a LogVector or any sequence of intervals/rationals together with ``s``.
    """
    if isinstance(v, LogVector):
        entries, s = v.entries, v.s
    else:
        if s is None:
            raise ValueError("s is required for a plain vector")
        entries = [e if isinstance(e, Interval) else Interval.point(e) for e in v]
    terms = [e if k < s else e * 2 for k, e in enumerate(entries)]
    return interval_sum(terms)


# -- integer lattices --------------------------------------------------------

def _common_denominator(rows: Iterable[Sequence]) -> int:
    den = 1
    for row in rows:
        for x in row:
            d = Fraction(x).denominator
            den = den * d // gcd(den, d)
    return den


class IntegerLattice:
    """Z-span of finitely many rational vectors, kept in Hermite normal form."""

    def __init__(self, basis: Sequence[Sequence], dimension: Optional[int] = None):
        rows = [[Fraction(x) for x in row] for row in basis]
        if dimension is None:
            if not rows:
                raise ValueError("dimension required for an empty basis")
            dimension = len(rows[0])
        for row in rows:
            if len(row) != dimension:
                raise DimensionMismatchError(f"vector of length {len(row)} in a lattice of dimension {dimension}")
        self.dimension = dimension
        self.scale = _common_denominator(rows)
        self.hnf = hnf([[int(x * self.scale) for x in row] for row in rows])

    @property
    def rank(self) -> int:
        return len(self.hnf)

    @property
    def basis(self) -> list[list[Fraction]]:
        return [[Fraction(x, self.scale) for x in row] for row in self.hnf]

    def __contains__(self, v) -> bool:
        return lattice_membership(v, self)

    def in_rational_span(self, v: Sequence) -> bool:
        if len(v) != self.dimension:
            raise DimensionMismatchError("dimension mismatch")
        return in_rational_span(v, self.hnf)

    def __repr__(self):
        return f"IntegerLattice(rank={self.rank}, basis={[[str(x) for x in r] for r in self.basis]})"


def lattice_membership(v: Sequence, lattice: IntegerLattice) -> bool:
    """Exact test for v in the Z-span of the lattice basis."""
    if len(v) != lattice.dimension:
        raise DimensionMismatchError(f"vector of length {len(v)} vs lattice dimension {lattice.dimension}")
    scaled = [Fraction(x) * lattice.scale for x in v]
    if any(x.denominator != 1 for x in scaled):
        return False
    return in_integer_span([int(x) for x in scaled], lattice.hnf)


def _shell(rank: int, radius: int):
    """Integer vectors of sup-norm exactly ``radius``.

    Coordinates are ordered 0, 1, -1, 2, -2, ... and vectors lexicographically
    in that order, so the positive choice wins ties (Z^1 gives 1 before -1).
    """
    if radius == 0:
        yield (0,) * rank
        return
    values = [0]
    for k in range(1, radius + 1):
        values += [k, -k]
    for c in itertools.product(values, repeat=rank):
        if max(abs(x) for x in c) == radius:
            yield c


def lemma_witness(lattice: IntegerLattice, sublattices: Sequence[IntegerLattice],
                  max_radius: int = 10_000) -> list[Fraction]:
    """A vector of ``lattice`` outside the rational span of every sublattice.

    Coefficient vectors over the lattice's HNF basis are scanned shell by
    shell (sup-norm 0, 1, 2, ...); within a shell the lexicographically
    smallest valid coefficient vector (in the order of
    :func:`_shell`) wins. Each sublattice must have rank
    below the lattice's rank, which guarantees the scan terminates.
    """
    for i, sub in enumerate(sublattices):
        if sub.dimension != lattice.dimension:
            raise DimensionMismatchError(f"sublattice {i} has dimension {sub.dimension}")
        if sub.rank >= lattice.rank:
            raise FullRankSublatticeError(
                f"sublattice {i} has rank {sub.rank}, not below the lattice rank {lattice.rank}")
    basis = lattice.basis
    r = lattice.rank
    spans = [sub.hnf for sub in sublattices]
    for radius in range(max_radius + 1):
        for coeffs in _shell(r, radius):
            w = [sum((c * b[j] for c, b in zip(coeffs, basis)), Fraction(0)) for j in range(lattice.dimension)]
            if not any(w) and r > 0:
                continue
            if all(not in_rational_span(w, span) for span in spans):
                return w
    raise RuntimeError("witness search exceeded its radius limit")  # pragma: no cover


# -- unit subgroups and certified rank ---------------------------------------

@dataclass(frozen=True)
class UnitSubgroup:
    """Subgroup of totally positive units given by generators (checked on construction)."""

    field: NumberField
    generators: tuple[FieldElement, ...]

    def __init__(self, field: NumberField, generators: Iterable[FieldElement], verify: bool = True):
        gens = tuple(generators)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "generators", gens)
        for g in gens:
            if g.field != field:
                raise FieldMismatchError("generator belongs to another field")
            if verify:
                if not is_unit(g):
                    raise NotAUnitError(f"generator {g} is not a unit")
                for i in range(1, field.s + 1):
                    if sign_at(g, i) != 1:
                        raise NotTotallyPositiveError(f"generator {g} is not positive at real embedding {i}")

    def __len__(self):
        return len(self.generators)

    def element(self, exponents: Sequence[int]) -> FieldElement:
        return power_product(self.generators, exponents, self.field)


def power_product(gens: Sequence[FieldElement], exponents: Sequence[int], K: NumberField) -> FieldElement:
    num, den = K.one, K.one
    for g, e in zip(gens, exponents):
        if e > 0:
            num = num * g ** e
        elif e < 0:
            den = den * g ** (-e)
    return num if den == K.one else num / den


def is_torsion_relation(gens: Sequence[FieldElement], exponents: Sequence[int], K: NumberField) -> bool:
    """Exact check that prod g_i^a_i is +1 or -1 (no inversion needed)."""
    num, den = K.one, K.one
    for g, e in zip(gens, exponents):
        if e > 0:
            num = num * g ** e
        elif e < 0:
            den = den * g ** (-e)
    return num == den or num == -den


@dataclass(frozen=True)
class RankResult:
    rank: Optional[int]
    status: str  # "certified" or "indeterminate"
    relations: tuple[tuple[int, ...], ...]
    independent: tuple[int, ...]
    precision_bits: int
    lower: int
    upper: int

    @property
    def certified(self) -> bool:
        return self.status == "certified"


def _find_relations(gens, logs: Sequence[LogVector], bits: int, K: NumberField,
                    max_exponent: int = 1 << 16) -> list[tuple[int, ...]]:
    k = len(gens)
    dim = len(logs[0])
    scale = Fraction(1 << (bits // 2))
    rows = []
    for i in range(k):
        ident = [int(i == j) for j in range(k)]
        rows.append(ident + [round(scale * logs[i][c].mid) for c in range(dim)])
    reduced = lll(rows)
    found: list[tuple[int, ...]] = []
    for row in reduced:
        a = row[:k]
        if not any(a) or max(abs(x) for x in a) > max_exponent:
            continue
        g = 0
        for x in a:
            g = gcd(g, x)
        a = [x // g for x in a]
        combo_ok = True
        for c in range(dim):
            iv = interval_sum([logs[i][c] * a[i] for i in range(k) if a[i]])
            if not iv.contains_zero():
                combo_ok = False
                break
        if combo_ok and is_torsion_relation(gens, a, K):
            found.append(tuple(a))
    return found


def _greedy_rows(mat: np.ndarray, count: int) -> list[int]:
    """Indices of ``count`` rows picked by largest residual after projection (untrusted selection)."""
    chosen: list[int] = []
    residual = mat.astype(float).copy()
    for _ in range(count):
        norms = np.linalg.norm(residual, axis=1)
        for c in chosen:
            norms[c] = -1.0
        idx = int(np.argmax(norms))
        if norms[idx] <= 0:
            break
        chosen.append(idx)
        v = residual[idx] / norms[idx]
        residual = residual - np.outer(residual @ v, v)
    return chosen


def certify_nonsingular(mid: Sequence[Sequence[Fraction]], rad: Sequence[Sequence[Fraction]]) -> bool:
    """True if every matrix within entrywise radius ``rad`` of ``mid`` is nonsingular.

    Sufficient condition: ||mid^-1||_inf * ||rad||_inf < 1 (exact arithmetic).
    """
    try:
        inv = inverse(mid)
    except ZeroDivisionError:
        return False
    inv_norm = max(sum(abs(x) for x in row) for row in inv)
    rad_norm = max(sum(row) for row in rad)
    return inv_norm * rad_norm < 1


def certified_independent(logs: Sequence[LogVector], count: int, rows: Optional[Sequence[int]] = None,
                          columns: Optional[Sequence[int]] = None) -> Optional[tuple[int, ...]]:
    """Pick ``count`` log vectors and certify they are linearly independent.

    Returns the chosen row indices, or None if no certificate was found at
    the current enclosure widths.
    """
    if count == 0:
        return ()
    cols = list(range(len(logs[0]))) if columns is None else list(columns)
    cand = list(range(len(logs))) if rows is None else list(rows)
    if count > len(cols) or count > len(cand):
        return None
    mids = np.array([[float(logs[i][c].mid) for c in cols] for i in cand])
    pick_rows = [cand[j] for j in _greedy_rows(mids, count)]
    if len(pick_rows) < count:
        return None
    sub = np.array([[float(logs[i][c].mid) for c in cols] for i in pick_rows])
    pick_cols = [cols[j] for j in _greedy_rows(sub.T, count)]
    if len(pick_cols) < count:
        return None
    mid = [[logs[i][c].mid for c in pick_cols] for i in pick_rows]
    rad = [[logs[i][c].rad for c in pick_cols] for i in pick_rows]
    if certify_nonsingular(mid, rad):
        return tuple(sorted(pick_rows))
    return None


def subgroup_rank(U, precision_bits: int = START_BITS, max_bits: int = MAX_BITS) -> RankResult:
    """Rank of the group generated by the given units, modulo torsion {+1, -1}.

    ``U`` is a UnitSubgroup or a sequence of unit FieldElements. Precision
    doubles from ``precision_bits`` until both the relation side and the
    independence side are certified; at ``max_bits`` the result is
    reported as indeterminate with the best bounds found.
    """
    gens = list(U.generators) if isinstance(U, UnitSubgroup) else list(U)
    k = len(gens)
    if k == 0:
        return RankResult(0, "certified", (), (), precision_bits, 0, 0)
    K = gens[0].field
    dim = K.s + K.t
    bits = max(precision_bits, START_BITS)
    best_lower = 0
    upper = k
    while True:
        logs = [log_embedding(g, bits, max_bits) for g in gens]
        relations = _find_relations(gens, logs, bits, K)
        q = exact_rank(relations) if relations else 0
        upper = min(upper, k - q, dim - 1 if dim > 1 else 0)
        target = k - q
        indep = None
        if target <= dim:
            indep = certified_independent(logs, target)
        if indep is not None:
            rel_basis = tuple(tuple(r) for r in hnf(relations)) if relations else ()
            return RankResult(target, "certified", rel_basis, indep, bits, target, target)
        for r in range(min(target, dim) - 1, best_lower, -1):
            if certified_independent(logs, r) is not None:
                best_lower = r
                break
        if bits >= max_bits:
            rel_basis = tuple(tuple(r) for r in hnf(relations)) if relations else ()
            return RankResult(None, "indeterminate", rel_basis, (), bits, best_lower, max(upper, best_lower))
        bits = min(2 * bits, max_bits)


def log_matrix(gens: Sequence[FieldElement], precision_bits: int = 128) -> list[LogVector]:
    return [log_embedding(g, precision_bits) for g in gens]
