import itertools

import mpmath
import pytest
from hypothesis import given, strategies as st

from otlck import NumberField
from otlck.errors import HypothesisError
from otlck.lckcheck import (
    Decision,
    Membership,
    check_hypothesis,
    classify_element,
    classify_signature,
    compare_abs_products,
    decide_abs_equal,
    hyperplane_membership,
    hyperplane_search,
    lck_criterion,
    mahler_log_bound,
    nolck_audit,
    ot_admissibility,
    relation_check,
    separation_bits,
    subfield_rank_bound,
)
from otlck.loglattice import UnitSubgroup
from otlck.numfield import minimal_polynomial
from otlck.poly import RationalPoly, symmetric_square_polynomial

from conftest import CUBIC, OCTIC, QUINTIC
from oracles import mp_embedding_values, mp_roots

# frozen from the mpmath oracle: |sigma_2(x)|, |sigma_3(x)| in x^5 - x - 1
QUINTIC_MODULI = (0.8421902323860581, 1.0990003151464572)


def test_quintic_moduli_oracle():
    r = mp_roots(QUINTIC, 30)
    assert abs(float(abs(r[1])) - QUINTIC_MODULI[0]) < 1e-14
    assert abs(float(abs(r[2])) - QUINTIC_MODULI[1]) < 1e-14


def test_decide_abs_equal_examples(quintic):
    x = quintic.gen
    assert decide_abs_equal(quintic.one, 2, 3) is Decision.EQUAL
    assert decide_abs_equal(-quintic.one, 2, 3) is Decision.EQUAL
    assert decide_abs_equal(x, 2, 3) is Decision.NOT_EQUAL
    assert decide_abs_equal(x, 2, 2) is Decision.EQUAL
    with pytest.raises(IndexError):
        decide_abs_equal(x, 1, 2)


def test_equal_requires_separation_bound(octic):
    # x^2 lies in the quartic subfield: |sigma_5| = |sigma_6| is a genuine identity
    u = octic.gen ** 2
    c = compare_abs_products(u, (5,), (6,))
    assert c.decision is Decision.EQUAL and c.separation_bits is not None
    assert c.precision_bits >= c.separation_bits


def test_relation_check_examples(quintic, octic):
    assert relation_check(quintic.one) == [Decision.EQUAL]
    assert relation_check(quintic.gen) == [Decision.NOT_EQUAL]
    assert relation_check(quintic(2)) == [Decision.EQUAL]
    assert relation_check(octic.gen ** 2) == [Decision.EQUAL]
    assert relation_check((octic.gen - 1) ** 2) == [Decision.NOT_EQUAL]


def test_relation_check_needs_t2(cubic):
    with pytest.raises(HypothesisError):
        relation_check(cubic.gen)


def test_hyperplane_examples(octic, cubic):
    assert hyperplane_membership(octic.one, (2, 3, 4)) is Membership.ON
    assert hyperplane_membership(octic(3), (5, 2, 6)) is Membership.ON
    # in Q(x^2) the real embeddings pair up as sigma_1 ~ sigma_4, sigma_2 ~ sigma_3
    assert hyperplane_membership(octic.gen ** 2, (2, 3, 4)) is Membership.ON
    assert hyperplane_membership((octic.gen - 1) ** 2, (2, 3, 4)) is Membership.OFF
    with pytest.raises(IndexError):
        hyperplane_membership(cubic.gen, (2, 3, 4))


def test_hyperplane_matches_numeric_oracle(octic):
    u = octic.gen ** 2
    vals = [abs(v) for v in mp_embedding_values(OCTIC, u.coords, 40)]
    on, undecided = hyperplane_search(u)
    assert not undecided
    for j, k, l in itertools.product(range(2, 7), repeat=3):
        if k > l:
            continue
        numeric = abs(vals[0] * vals[j - 1] - vals[k - 1] * vals[l - 1]) < mpmath.mpf(10) ** -30
        assert ((j, k, l) in on) == numeric


@pytest.mark.parametrize("coeffs", [QUINTIC, OCTIC])
def test_mahler_bound_dominates_true_measure(coeffs):
    K = NumberField(coeffs)
    for u in (K.gen ** 2, (K.gen - 1) ** 2 * K.gen ** 2):
        g = minimal_polynomial(u)
        for poly, arity, signed in ((g * g.reflect(), 1, True), (symmetric_square_polynomial(g), 2, False)):
            D, bound = mahler_log_bound(u, arity, signed)
            assert poly.degree == D
            roots = mpmath.polyroots([float(c) for c in reversed(poly.coeffs)], maxsteps=400, extraprec=400)
            true = sum(max(mpmath.mpf(0), mpmath.log(abs(r))) for r in roots)
            assert true <= float(bound) + 1e-9


def test_separation_bits_positive(octic):
    assert separation_bits(octic.gen ** 2, 2, False) > 0
    assert separation_bits(octic.one, 2, False) == 0


def test_lck_criterion_examples(cubic, quintic):
    v = lck_criterion(UnitSubgroup(cubic, [cubic.gen]))
    assert v.overall is True and v.comparisons == ()
    v = lck_criterion(UnitSubgroup(quintic, [quintic.gen]))
    assert v.overall is False and v.status == "fails"
    assert v.comparisons[0][3] is Decision.NOT_EQUAL
    assert lck_criterion(UnitSubgroup(quintic, [quintic.one])).overall is True
    assert lck_criterion(UnitSubgroup(quintic, [])).overall is True


def test_lck_criterion_holds_on_subfield_units(octic):
    x = octic.gen
    v = lck_criterion(UnitSubgroup(octic, [x ** 2, (x ** 2 - 1) ** 2]))
    assert v.overall is True
    v = lck_criterion(UnitSubgroup(octic, [x ** 2, (x - 1) ** 2]))
    assert v.holds == (True, False) and v.overall is False


@pytest.mark.parametrize("s,t,label,reason", [
    (1, 1, "LCK-exists", "t=1"),
    (1, 2, "LCK-none", "oeljeklaus-toma"),
    (4, 2, "LCK-none", "rank-obstruction"),
    (2, 2, "LCK-none", "cited-case-analysis"),
    (5, 3, "LCK-none", "cited-case-analysis"),
])
def test_classify_signature(s, t, label, reason):
    c = classify_signature(s, t)
    assert (c.label, c.reason) == (label, reason)


def test_classify_signature_rejects_s0():
    with pytest.raises(ValueError):
        classify_signature(0, 2)


def test_subfield_rank_bound_examples():
    rows = subfield_rank_bound(8, 2, 4, 2)
    assert [(r.signature, r.rank, r.satisfies_bound) for r in rows] == [
        ((4, 0), 3, True), ((2, 1), 2, True), ((0, 2), 1, True)]
    assert [(r.signature, r.rank) for r in subfield_rank_bound(3, 3, 1, 1)] == [((1, 0), 0)]
    with pytest.raises(ValueError):
        subfield_rank_bound(6, 4, 2, 2)


def test_subfield_rank_bound_exhaustive():
    for n in range(1, 41):
        for t in range(2, n // 2 + 1):
            s = n - 2 * t
            if s < 2 * t:
                continue
            for d in range(2, n + 1):
                if n % d == 0:
                    assert all(r.satisfies_bound and r.inequality_holds for r in subfield_rank_bound(n, d, s, t))


def test_classify_element(octic):
    c = classify_element(octic.one)
    assert (c.kind, c.degree) == ("proper-subfield", 1)
    c = classify_element(octic.gen ** 2)
    assert (c.kind, c.degree, c.subfield_signature, c.subfield_rank) == ("proper-subfield", 4, (2, 1), 2)
    c = classify_element((octic.gen - 1) ** 2)
    assert c.kind == "none-found" and c.anomaly and c.degree == 8


def test_audit_trivial_cases(octic):
    a = nolck_audit(UnitSubgroup(octic, [octic.gen ** 2]), box=0)
    assert [s.exponents for s in a.satisfiers] == [(0,)]
    assert a.satisfier_rank.rank == 0 and a.conclusion == "consistent"
    a = nolck_audit(UnitSubgroup(octic, [octic.one]), box=1)
    assert a.satisfier_rank.rank == 0 and a.consistent


def test_audit_hypothesis(quintic):
    with pytest.raises(HypothesisError):
        nolck_audit(UnitSubgroup(quintic, [quintic.gen]), box=1)
    with pytest.raises(HypothesisError):
        check_hypothesis(2, 2)


def test_audit_octic(octic):
    x = octic.gen
    a = nolck_audit(UnitSubgroup(octic, [x ** 2, (x - 1) ** 2, (x + 1) ** 2]), box=2)
    assert a.enumerated == 2 * 5 ** 3 and a.totally_positive == 5 ** 3
    assert a.conclusion == "consistent" and a.satisfier_rank.rank == 2
    exps = {s.exponents for s in a.satisfiers}
    # closed under inversion
    assert all(tuple(-e for e in x) in exps for x in exps)
    assert all(s.classification.kind in ("proper-subfield", "hyperplane") for s in a.satisfiers)
    assert (0, 1, 1) in exps and (1, 0, 0) in exps and (0, 1, 0) not in exps


def test_ot_admissibility(cubic, quintic):
    assert ot_admissibility(UnitSubgroup(cubic, [cubic.gen]))["admissible"]
    flags = ot_admissibility(UnitSubgroup(quintic, [quintic.gen]))
    assert flags["rank_equals_s"] and flags["admissible"]
    assert not ot_admissibility(UnitSubgroup(quintic, [quintic.one]))["admissible"]


@pytest.mark.parametrize("coeffs,gens", [(QUINTIC, lambda x: [x, x - 1, x + 1]),
                                         (OCTIC, lambda x: [x ** 2, (x - 1) ** 2, (x + 1) ** 2, (x ** 2 - 1) ** 2])])
@given(data=st.data())
def test_decide_invariants(coeffs, gens, data):
    K = NumberField(coeffs)
    pool = gens(K.gen)
    u = data.draw(st.sampled_from(pool))
    i = data.draw(st.integers(K.s + 1, K.s + K.t))
    j = data.draw(st.integers(K.s + 1, K.s + K.t))
    d = decide_abs_equal(u, i, j)
    assert d is decide_abs_equal(u, j, i)
    for e in (-1, 2, 3):
        assert decide_abs_equal(u ** e, i, j) is d
    chain = relation_check(u)
    pairwise = [decide_abs_equal(u, K.s + 1, K.s + k) for k in range(2, K.t + 1)]
    assert all(c is Decision.EQUAL for c in chain) == all(c is Decision.EQUAL for c in pairwise)
