"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v -s`` or
``python3 tests/test_acceptance.py``; the lines are also collected into the
terminal summary.
"""

import itertools
import json
import random
import time

import pytest

from otlck import NumberField
from otlck.cli import main as cli_main
from otlck.embeddings import signature
from otlck.lckcheck import Decision, compare_moduli, decide_abs_equal, lck_criterion, nolck_audit, subfield_rank_bound
from otlck.loglattice import IntegerLattice, UnitSubgroup, dirichlet_residual, lattice_membership, lemma_witness, log_embedding
from otlck.poly import RationalPoly
from otlck.search import find_field

from conftest import CUBIC, OCTIC, QUINTIC
from oracles import bisection_real_root_count

RESULTS = {}


def record(number, title, ok, detail=""):
    line = f"ACCEPTANCE {number}: {'PASS' if ok else 'FAIL'} {title}" + (f" ({detail})" if detail else "")
    RESULTS[number] = line
    print(line)
    assert ok, line


def corpus_fields():
    """(field, generators) used across criteria: the fixed test fields plus two searched (4,2) fields."""
    out = []
    K = NumberField(CUBIC)
    out.append((K, [K.gen ** 2]))
    K = NumberField(QUINTIC)
    x = K.gen
    out.append((K, [x ** 2, (x - 1) ** 2, (x + 1) ** 2]))
    K = NumberField(OCTIC)
    x = K.gen
    out.append((K, [x ** 2, (x - 1) ** 2, (x + 1) ** 2]))
    for even in (False, True):
        r = find_field((4, 2), seed=0, even=even)
        out.append((r.field, list(r.units)))
    return out


def test_criterion_1_signature():
    exact = {(-2, 0, 1): (2, 0), (1, 0, 1): (0, 1)}
    derived = {tuple(CUBIC): (1, 1), tuple(QUINTIC): (1, 2)}
    ok, worst = True, 0.0
    for coeffs, expected in {**exact, **derived}.items():
        t0 = time.perf_counter()
        got = signature(RationalPoly(coeffs))
        worst = max(worst, time.perf_counter() - t0)
        ok &= got == expected
        if coeffs in derived:
            ok &= bisection_real_root_count(list(coeffs)) == got[0]
    record(1, "signature correctness", ok and worst < 1.0, f"slowest {worst:.3f}s")


def test_criterion_2_dirichlet():
    rng = random.Random(2024)
    fields = corpus_fields()
    t0 = time.perf_counter()
    ok = True
    for k in range(100):
        K, gens = fields[k % len(fields)]
        e = [rng.randint(-3, 3) for _ in gens]
        u = UnitSubgroup(K, gens, verify=False).element(e)
        for bits in (128, 512):
            ok &= dirichlet_residual(log_embedding(u, bits)).contains_zero()
    dt = time.perf_counter() - t0
    record(2, "Dirichlet identity on 100 units at 128/512 bits", ok and dt < 30, f"{dt:.2f}s")


def _cli(tmp_path, name, data):
    inp, out = tmp_path / f"{name}.json", tmp_path / f"{name}.out.json"
    inp.write_text(json.dumps(data))
    code = cli_main(["lck-check", str(inp), "--output", str(out)])
    return code, json.loads(out.read_text())


def test_criterion_3_trichotomy(tmp_path):
    t0 = time.perf_counter()
    code_c, rep_c = _cli(tmp_path, "cubic", {"minpoly": CUBIC, "generators": [["0", "1", "0"]]})
    code_q, rep_q = _cli(tmp_path, "quintic", {"minpoly": QUINTIC, "generators": [["0", "1", "0", "0", "0"]]})
    dt = time.perf_counter() - t0
    ok = code_c == 0 and rep_c["result"]["status"] == "holds"
    ok &= rep_c["result"]["classification"]["label"] == "LCK-exists"
    ok &= code_q == 1 and rep_q["result"]["status"] == "fails"
    ok &= [c["decision"] for c in rep_q["result"]["comparisons"]] == ["not_equal"]
    # certified: the not_equal rests on disjoint exact enclosures, no tolerance
    K = NumberField(QUINTIC)
    c = compare_moduli(K.gen, 2, 3)
    ok &= c.decision is Decision.NOT_EQUAL
    record(3, "LCK trichotomy endpoints", ok and dt < 5, f"{dt:.2f}s")


def test_criterion_4_separation_soundness():
    checked = 0
    ok = True
    decided = {Decision.EQUAL: 0, Decision.NOT_EQUAL: 0}
    for K, gens in corpus_fields():
        if K.t < 2:
            continue
        pool = list(gens) + [gens[0] * gens[-1], gens[0].inverse(), K.one]
        extra = (K.gen ** 2 - 1) ** 2
        if K.degree == 8 and extra.is_unit():
            pool.append(extra)
        for u in pool:
            for i, j in itertools.combinations_with_replacement(range(K.s + 1, K.s + K.t + 1), 2):
                first = compare_moduli(u, i, j, 64)
                again = decide_abs_equal(u, i, j, precision_bits=4 * max(first.precision_bits, 64))
                checked += 1
                if first.decision is not Decision.INDETERMINATE:
                    decided[first.decision] += 1
                    ok &= again is first.decision
    ok &= decided[Decision.EQUAL] > 0 and decided[Decision.NOT_EQUAL] > 0
    record(4, "separation-bound soundness under 4x precision", ok,
           f"{checked} comparisons, {decided[Decision.EQUAL]} equal, {decided[Decision.NOT_EQUAL]} not equal")


def test_criterion_5_lemma_witness():
    rng = random.Random(55)
    t0 = time.perf_counter()
    ok = True
    for _ in range(50):
        r = rng.randint(2, 4)
        dim = r + rng.randint(0, 2)
        while True:
            basis = [[rng.randint(-4, 4) for _ in range(dim)] for _ in range(r)]
            lat = IntegerLattice(basis)
            if lat.rank == r:
                break
        subs = []
        for _ in range(rng.randint(1, 6)):
            k = rng.randint(1, r - 1)
            rows = [[sum(rng.randint(-2, 2) * b[j] for b in basis) for j in range(dim)] for _ in range(k)]
            subs.append(IntegerLattice(rows, dimension=dim))
        w = lemma_witness(lat, subs)
        ok &= lattice_membership(w, lat) and not any(lattice_membership(w, s) for s in subs)
    dt = time.perf_counter() - t0
    record(5, "lemma witness on 50 random instances", ok and dt < 10, f"{dt:.2f}s")


def test_criterion_6_subfield_table():
    t0 = time.perf_counter()
    ok, rows = True, 0
    for n in range(1, 41):
        for t in range(2, n // 2 + 1):
            s = n - 2 * t
            if s < 1 or s < 2 * t:
                continue
            for d in range(2, n + 1):
                if n % d == 0:
                    for r in subfield_rank_bound(n, d, s, t):
                        rows += 1
                        ok &= r.satisfies_bound and r.inequality_holds and r.rank < s
    dt = time.perf_counter() - t0
    record(6, "subfield rank table n <= 40", ok and rows > 0 and dt < 1, f"{rows} rows, {dt:.3f}s")


def test_criterion_7_audit():
    t0 = time.perf_counter()
    ok = True
    details = []
    for even in (False, True):
        found = find_field((4, 2), seed=0, even=even)
        K = found.field
        x = K.gen
        gens = list(found.units) + ([(x + 1) ** 2] if (x + 1).is_unit() else [])
        ok &= found.rank.certified and found.rank.rank >= 2
        a = nolck_audit(UnitSubgroup(K, gens), box=2, precision_bits=256)
        ok &= a.conclusion == "consistent" and a.satisfier_rank.certified and a.satisfier_rank.rank < 4
        ok &= all(s.classification.kind in ("proper-subfield", "hyperplane") for s in a.satisfiers)
        details.append(f"{K.minpoly}: {len(a.satisfiers)} satisfiers, rank {a.satisfier_rank.rank}")
    dt = time.perf_counter() - t0
    record(7, "desk-scale audit on searched (4,2) fields", ok and dt < 600, "; ".join(details) + f"; {dt:.1f}s")


def test_criterion_8_invariance():
    ok = True
    count = 0
    for K, gens in corpus_fields():
        pool = list(gens)
        extra = (K.gen ** 2 - 1) ** 2
        if K.degree == 8 and extra.is_unit():
            pool.append(extra)
        for g1, g2 in itertools.permutations(pool, 2):
            base = lck_criterion(UnitSubgroup(K, [g1, g2])).overall
            ok &= lck_criterion(UnitSubgroup(K, [g1 * g2, g2])).overall == base
            ok &= lck_criterion(UnitSubgroup(K, [g1.inverse(), g2])).overall == base
            ok &= lck_criterion(UnitSubgroup(K, [g1, g2.inverse()])).overall == base
            count += 1
    record(8, "criterion invariant under generator moves", ok, f"{count} generator pairs")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
