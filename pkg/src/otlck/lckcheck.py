"""LCK criterion on Oeljeklaus-Toma data and the rank-obstruction audit.

Every equality between moduli of embedded units is decided exactly. Both
sides are roots of an integer polynomial whose roots are products of
conjugates of u; if the enclosures overlap at a width below the Mahler
root-separation bound of that polynomial's squarefree part, the two
values coincide, and disjoint enclosures prove they differ.
"""

from __future__ import annotations

import enum
import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Optional, Sequence

from .embeddings import MAX_BITS, START_BITS, evaluate, sign_at
from .errors import HypothesisError
from .intervals import Interval, ceil_dyadic, log_enclosure
from .linalg import hnf
from .loglattice import (
    RankResult,
    UnitSubgroup,
    certified_independent,
    log_embedding,
    power_product,
    subgroup_rank,
)
from .numfield import FieldElement, NumberField, minimal_polynomial
from .poly import multiset_count, signature as poly_signature


class Decision(str, enum.Enum):
    EQUAL = "equal"
    NOT_EQUAL = "not_equal"
    INDETERMINATE = "indeterminate"


class Membership(str, enum.Enum):
    ON = "on"
    OFF = "off"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class Comparison:
    lhs: tuple[int, ...]
    rhs: tuple[int, ...]
    decision: Decision
    precision_bits: int
    separation_bits: Optional[int] = None


def _prime_index(K: NumberField, i: int) -> int:
    """Map sigma_{s+t+k} to sigma_{s+k}; the two have equal modulus."""
    n = K.degree
    if not 1 <= i <= n:
        raise IndexError(f"embedding index {i} outside 1..{n}")
    return i - K.t if i > K.s + K.t else i


def _log_abs_uppers(u: FieldElement) -> list[Fraction]:
    """Rational upper bounds on log|sigma_i(u)|, i = 1..n, on a 2^-32 grid."""
    K = u.field
    out = []
    for i in range(1, K.degree + 1):
        bits = START_BITS
        while True:
            a = evaluate(u, i, bits).abs_interval(bits)
            if a.lo > 0 or bits >= 1024:
                break
            bits *= 2
        hi = a.hi
        out.append(ceil_dyadic(log_enclosure(hi, 40)[1], 32))
    return out


_LN2_LO = log_enclosure(Fraction(2), 64)[0]


def _log2_upper(x: Fraction) -> Fraction:
    if x <= 0:
        return Fraction(0)
    return x / _LN2_LO


def mahler_log_bound(u: FieldElement, arity: int, signed: bool) -> tuple[int, Fraction]:
    """(D, B) with D the degree of the product polynomial and B >= log M of it.

    The product polynomial has as roots all products of ``arity`` roots of
    the minimal polynomial g of u, one per multiset; ``signed`` adjoins the
    negatives (P(x) P(-x)), which doubles both D and log M. The bound comes
    from upper bounds on log|sigma_i(u)|: every multiset product appears
    among the ordered products, each conjugate of u occurs n/m times among
    the n embeddings, and for pairs the multiset product is computed exactly
    from the ordered and diagonal ones.
    """
    K = u.field
    n = K.degree
    m = minimal_polynomial(u).degree
    D = multiset_count(m, arity)
    lam = _log_abs_uppers(u)
    ratio = Fraction(m, n)
    if arity == 1:
        log_m = ratio * sum(max(Fraction(0), x) for x in lam)
    elif arity == 2:
        pairs = sum(max(Fraction(0), a + b) for a in lam for b in lam)
        diag = sum(max(Fraction(0), 2 * a) for a in lam)
        log_m = (ratio ** 2 * pairs + ratio * diag) / 2
    else:
        total = Fraction(0)
        for tup in itertools.product(lam, repeat=arity):
            v = sum(tup)
            if v > 0:
                total += v
        log_m = ratio ** arity * total
    if signed:
        D *= 2
        log_m *= 2
    return D, log_m


def separation_bits(u: FieldElement, arity: int, signed: bool) -> int:
    """b such that distinct roots of the product polynomial differ by more than 2^-b.

    Mahler's bound for a squarefree integer polynomial of degree D,
    sep > sqrt(3) D^(-(D+2)/2) M^(-(D-1)), applied to the squarefree part
    (degree <= D, Mahler measure <= M since the cofactor is a monic integer
    polynomial). The sqrt(3) factor is dropped, which only weakens the bound.
    """
    D, log_m = mahler_log_bound(u, arity, signed)
    if D <= 1:
        return 0
    log2_d = _log2_upper(log_enclosure(Fraction(D), 40)[1])
    bound = Fraction(D + 2, 2) * log2_d + (D - 1) * _log2_upper(log_m)
    return int(ceil(bound)) + 1


def _side_interval(balls, indices: Sequence[int], K: NumberField, signed: bool) -> Interval:
    acc = Interval.point(1)
    if signed:
        for i in indices:
            acc = acc * balls[i].real_interval()
        return acc.abs()
    for i in indices:
        acc = acc * balls[i].abs_square_interval()
    return acc


def compare_abs_products(u: FieldElement, lhs: Sequence[int], rhs: Sequence[int],
                         precision_bits: int = START_BITS, max_bits: int = MAX_BITS) -> Comparison:
    """Decide prod_{a in lhs} |sigma_a(u)| == prod_{b in rhs} |sigma_b(u)| exactly."""
    K = u.field
    if len(lhs) != len(rhs):
        raise ValueError("both sides need the same number of factors")
    lc = Counter(_prime_index(K, i) for i in lhs)
    rc = Counter(_prime_index(K, i) for i in rhs)
    common = lc & rc
    left = tuple(sorted((lc - common).elements()))
    right = tuple(sorted((rc - common).elements()))
    if not left:
        return Comparison(left, right, Decision.EQUAL, 0)
    if u.is_zero() or u.is_rational():
        return Comparison(left, right, Decision.EQUAL, 0)
    signed = all(i <= K.s for i in left + right)
    arity = len(left) if signed else 2 * len(left)
    needed = set(left + right)
    bits = max(precision_bits, START_BITS)
    sep = None
    while True:
        balls = {i: evaluate(u, i, bits, max_bits) for i in needed}
        a = _side_interval(balls, left, K, signed)
        b = _side_interval(balls, right, K, signed)
        if not a.overlaps(b):
            return Comparison(left, right, Decision.NOT_EQUAL, bits, sep)
        if sep is None:
            sep = separation_bits(u, arity, signed)
        if a.width + b.width < Fraction(1, 1 << sep):
            return Comparison(left, right, Decision.EQUAL, bits, sep)
        if bits >= max_bits:
            return Comparison(left, right, Decision.INDETERMINATE, bits, sep)
        bits = min(2 * bits, max_bits)


def decide_abs_equal(u: FieldElement, i: int, j: int, precision_bits: int = START_BITS,
                     max_bits: int = MAX_BITS) -> Decision:
    """Exact decision of |sigma_i(u)| == |sigma_j(u)| for complex indices s+1 <= i, j <= s+t."""
    return compare_moduli(u, i, j, precision_bits, max_bits).decision


def compare_moduli(u: FieldElement, i: int, j: int, precision_bits: int = START_BITS,
                   max_bits: int = MAX_BITS) -> Comparison:
    K = u.field
    for idx in (i, j):
        if not K.s + 1 <= idx <= K.s + K.t:
            raise IndexError(f"index {idx} is not in s+1..s+t = {K.s + 1}..{K.s + K.t}")
    # compared as squared moduli sigma_i(u) * conj(sigma_i(u))
    return compare_abs_products(u, (i,), (j,), precision_bits, max_bits)


def relation_check(u: FieldElement, precision_bits: int = START_BITS, max_bits: int = MAX_BITS) -> list[Decision]:
    """sigma_{s+k}(u) sigma_{s+t+k}(u) == sigma_{s+k+1}(u) sigma_{s+t+k+1}(u), for k = 1..t-1."""
    K = u.field
    if K.t < 2:
        raise HypothesisError("relation chain needs t >= 2")
    s = K.s
    return [decide_abs_equal(u, s + k, s + k + 1, precision_bits, max_bits) for k in range(1, K.t)]


def hyperplane_membership(u: FieldElement, triple: tuple[int, int, int], precision_bits: int = START_BITS,
                          max_bits: int = MAX_BITS) -> Membership:
    """Is log|sigma_1(u)| + log|sigma_j(u)| == log|sigma_k(u)| + log|sigma_l(u)|?"""
    K = u.field
    j, k, l = triple
    for idx in triple:
        if not 2 <= idx <= K.s + K.t:
            raise IndexError(f"hyperplane index {idx} outside 2..{K.s + K.t}")
    c = compare_abs_products(u, (1, j), (k, l), precision_bits, max_bits)
    return {Decision.EQUAL: Membership.ON, Decision.NOT_EQUAL: Membership.OFF}.get(c.decision, Membership.INDETERMINATE)


# -- the criterion -----------------------------------------------------------

@dataclass(frozen=True)
class CriterionVerdict:
    holds: tuple[Optional[bool], ...]  # per generator; None = indeterminate
    overall: Optional[bool]
    comparisons: tuple[tuple[int, int, int, Decision], ...]  # (generator index, i, j, decision)
    precision_bits: int
    signature: tuple[int, int]

    @property
    def status(self) -> str:
        return {True: "holds", False: "fails", None: "indeterminate"}[self.overall]


def _kleene_and(values: Sequence[Optional[bool]]) -> Optional[bool]:
    if any(v is False for v in values):
        return False
    if any(v is None for v in values):
        return None
    return True


def lck_criterion(U: UnitSubgroup, precision_bits: int = START_BITS, max_bits: int = MAX_BITS) -> CriterionVerdict:
    """|sigma_{s+1}(g)| == |sigma_{s+k}(g)| for every generator g and k = 2..t.

    Checking generators suffices: u -> log|sigma_i(u)| - log|sigma_j(u)| is
    a homomorphism, so it vanishes on U iff it vanishes on a generating set.
    """
    K = U.field
    s, t = K.s, K.t
    holds = []
    comps = []
    used = precision_bits
    for gi, g in enumerate(U.generators):
        per = []
        for k in range(2, t + 1):
            c = compare_moduli(g, s + 1, s + k, precision_bits, max_bits)
            used = max(used, c.precision_bits)
            comps.append((gi, s + 1, s + k, c.decision))
            per.append({Decision.EQUAL: True, Decision.NOT_EQUAL: False}.get(c.decision))
        holds.append(_kleene_and(per))
    return CriterionVerdict(tuple(holds), _kleene_and(holds), tuple(comps), used, (s, t))


# -- signature classification -------------------------------------------------

@dataclass(frozen=True)
class SignatureClass:
    lck: bool
    reason: str

    @property
    def label(self) -> str:
        return "LCK-exists" if self.lck else "LCK-none"


def classify_signature(s: int, t: int) -> SignatureClass:
    """Existence of LCK metrics on X(K, U) as a function of the signature of K.

    Reason tags: ``t=1`` (metrics exist), ``oeljeklaus-toma`` (s = 1),
    ``rank-obstruction`` (s >= 2t, no rank-s subgroup satisfies the modulus
    chain), ``cited-case-analysis`` (the remaining 2 <= s < 2t cases).
    """
    if s < 1:
        raise ValueError("s = 0 is not an admissible signature")
    if t < 1:
        raise ValueError("t must be at least 1")
    if t == 1:
        return SignatureClass(True, "t=1")
    if s == 1:
        return SignatureClass(False, "oeljeklaus-toma")
    if s >= 2 * t:
        return SignatureClass(False, "rank-obstruction")
    return SignatureClass(False, "cited-case-analysis")


# -- subfield bookkeeping ----------------------------------------------------

@dataclass(frozen=True)
class SubfieldBound:
    signature: tuple[int, int]
    rank: int
    satisfies_bound: bool  # rank < s
    inequality_holds: bool  # 2t - d(t'+1) < (d-1) s


def subfield_rank_bound(n: int, d: int, s: int, t: int) -> list[SubfieldBound]:
    """Unit ranks of every possible signature of a subfield of index d in a degree-n field."""
    if d < 2:
        raise ValueError("index d must be at least 2")
    if n % d:
        raise ValueError(f"{d} does not divide {n}")
    if s + 2 * t != n:
        raise ValueError(f"signature ({s}, {t}) does not match degree {n}")
    m = n // d
    out = []
    for t2 in range(m // 2 + 1):
        s2 = m - 2 * t2
        rank = s2 + t2 - 1
        below = rank < s
        ineq = 2 * t - d * (t2 + 1) < (d - 1) * s
        if below != ineq:
            raise AssertionError("rank bound and inequality chain disagree")  # pragma: no cover
        out.append(SubfieldBound((s2, t2), rank, below, ineq))
    return out


# -- classification of relation satisfiers -----------------------------------

@dataclass(frozen=True)
class Classification:
    kind: str  # "proper-subfield", "hyperplane", "none-found"
    degree: int
    subfield_signature: Optional[tuple[int, int]] = None
    subfield_rank: Optional[int] = None
    triples: tuple[tuple[int, int, int], ...] = ()
    undecided_triples: tuple[tuple[int, int, int], ...] = ()

    @property
    def anomaly(self) -> bool:
        return self.kind == "none-found"


def hyperplane_triples(K: NumberField):
    """All (j', k', l') with 2 <= j', k', l' <= s+t, k' <= l' (the equation is symmetric in k', l')."""
    top = K.s + K.t
    for j in range(2, top + 1):
        for k in range(2, top + 1):
            for l in range(k, top + 1):
                yield (j, k, l)


def classify_element(u: FieldElement, precision_bits: int = START_BITS, max_bits: int = MAX_BITS,
                     stop_at_first: bool = False) -> Classification:
    """Trap a relation-satisfying unit in a proper subfield or on a hyperplane x_1 + x_j' = x_k' + x_l'."""
    K = u.field
    g = minimal_polynomial(u)
    m = g.degree
    if m < K.degree:
        s2, t2 = poly_signature(g)
        return Classification("proper-subfield", m, (s2, t2), s2 + t2 - 1)
    on, undecided = hyperplane_search(u, precision_bits, max_bits, stop_at_first)
    if on:
        return Classification("hyperplane", m, triples=on, undecided_triples=undecided)
    return Classification("none-found", m, undecided_triples=undecided)


def hyperplane_search(u: FieldElement, precision_bits: int = START_BITS, max_bits: int = MAX_BITS,
                      stop_at_first: bool = False):
    """Triples whose hyperplane contains l(u), and triples left undecided at the cap."""
    on, undecided = [], []
    for triple in hyperplane_triples(u.field):
        res = hyperplane_membership(u, triple, precision_bits, max_bits)
        if res is Membership.ON:
            on.append(triple)
            if stop_at_first:
                break
        elif res is Membership.INDETERMINATE:
            undecided.append(triple)
    return tuple(on), tuple(undecided)


# -- the audit ---------------------------------------------------------------

@dataclass(frozen=True)
class Satisfier:
    exponents: tuple[int, ...]
    sign: int
    element: FieldElement = field(compare=False)
    classification: Classification = field(compare=False)


@dataclass(frozen=True)
class AuditReport:
    signature: tuple[int, int]
    box: int
    enumerated: int
    totally_positive: int
    satisfiers: tuple[Satisfier, ...]
    indeterminate: tuple[tuple[tuple[int, ...], int], ...]
    satisfier_rank: RankResult
    conclusion: str  # "consistent", "inconsistent", "withheld"
    precision_bits: int

    @property
    def consistent(self) -> bool:
        return self.conclusion == "consistent"


def check_hypothesis(s: int, t: int) -> None:
    if not (s >= 1 and t >= 2 and s >= 2 * t):
        raise HypothesisError(f"signature ({s}, {t}) does not satisfy s >= 1, t >= 2, s >= 2t")


def nolck_audit(U: UnitSubgroup, box: int = 2, precision_bits: int = START_BITS,
                max_bits: int = MAX_BITS) -> AuditReport:
    """Enumerate u = +-prod g_i^e_i with |e_i| <= box and trap every relation satisfier.

    Candidates that are not totally positive are dropped; survivors are run
    through :func:`relation_check`, each satisfier is classified, and the
    rank of the satisfiers' log span is certified. The conclusion is
    "consistent" when that rank is below s.
    """
    K = U.field
    s, t = K.s, K.t
    check_hypothesis(s, t)
    gens = U.generators
    exps = list(itertools.product(range(-box, box + 1), repeat=len(gens)))
    enumerated = 0
    positive = 0
    sats: list[Satisfier] = []
    undecided: list[tuple[tuple[int, ...], int]] = []
    for e in exps:
        base = power_product(gens, e, K)
        for sign in (1, -1):
            enumerated += 1
            u = base if sign == 1 else -base
            if any(sign_at(u, i, max_bits) != 1 for i in range(1, s + 1)):
                continue
            positive += 1
            chain = relation_check(u, precision_bits, max_bits)
            if any(d is Decision.INDETERMINATE for d in chain) and not any(d is Decision.NOT_EQUAL for d in chain):
                undecided.append((e, sign))
                continue
            if all(d is Decision.EQUAL for d in chain):
                cls = classify_element(u, precision_bits, max_bits)
                sats.append(Satisfier(tuple(e), sign, u, cls))
    sats.sort(key=lambda x: (x.exponents, -x.sign))
    # Z-basis of the satisfiers' exponent vectors generates the same log span
    basis = hnf([list(x.exponents) for x in sats]) if sats else []
    reps = [power_product(gens, b, K) for b in basis]
    rank = subgroup_rank(reps, precision_bits, max_bits)
    if undecided or not rank.certified or any(x.classification.undecided_triples and x.classification.anomaly
                                              for x in sats):
        conclusion = "withheld"
    elif rank.rank < s:
        conclusion = "consistent"
    else:
        conclusion = "inconsistent"
    return AuditReport((s, t), box, enumerated, positive, tuple(sats), tuple(undecided), rank, conclusion,
                       precision_bits)


def ot_admissibility(U: UnitSubgroup, precision_bits: int = 128, max_bits: int = MAX_BITS) -> dict:
    """Auxiliary flag: rank(l(U)) = s and the first s log coordinates of U have certified rank s.

    This is the discreteness/cocompactness condition of the OT construction,
    taken as given here rather than proved.
    """
    K = U.field
    rank = subgroup_rank(U, precision_bits, max_bits)
    proj = False
    if rank.certified and rank.rank == K.s and len(U) >= K.s:
        logs = [log_embedding(g, rank.precision_bits, max_bits) for g in U.generators]
        proj = certified_independent(logs, K.s, columns=range(K.s)) is not None
    return {"rank": rank.rank, "rank_equals_s": rank.rank == K.s, "projection_rank_s": proj,
            "admissible": bool(rank.rank == K.s and proj)}
