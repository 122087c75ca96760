"""Independent reference computations used to derive and cross-check expected values.

Nothing here imports the package's exact layer; each oracle uses a different
route (grid sign counting, mpmath root finding, sympy algebra).
"""

from fractions import Fraction

import mpmath
import sympy

X = sympy.Symbol("X")


def horner(coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def bisection_real_root_count(coeffs, levels=14):
    """Count sign changes of f on ever finer rational grids over [-B, B] until the count settles.

    For squarefree f all real roots are simple, so once the grid separates
    them the count of sign changes equals the number of real roots.
    """
    lead = Fraction(coeffs[-1])
    bound = 1 + max(abs(Fraction(c) / lead) for c in coeffs[:-1])
    prev = None
    for k in range(4, levels):
        m = 2 ** k
        xs = [-bound + Fraction(2 * bound * i, m) for i in range(m + 1)]
        vals = [horner(coeffs, x) for x in xs]
        count = sum(1 for a, b in zip(vals, vals[1:]) if a * b < 0 or (a == 0 and b != 0))
        count += vals[-1] == 0
        if count == prev:
            return count
        prev = count
    return prev


def bisect_root(coeffs, lo, hi, steps=200):
    lo, hi = Fraction(lo), Fraction(hi)
    flo = horner(coeffs, lo)
    for _ in range(steps):
        mid = (lo + hi) / 2
        fm = horner(coeffs, mid)
        if fm == 0:
            return mid, mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return lo, hi


def mp_roots(coeffs, dps=60):
    """Roots in the labeling convention: reals ascending, upper half-plane, then conjugates."""
    with mpmath.workdps(dps):
        roots = mpmath.polyroots([int(c) for c in reversed(coeffs)], maxsteps=500, extraprec=4 * dps)
        eps = mpmath.mpf(10) ** (-dps // 2)
        reals = sorted(mpmath.re(r) for r in roots if abs(mpmath.im(r)) < eps)
        uppers = sorted((r for r in roots if mpmath.im(r) >= eps), key=lambda z: (mpmath.re(z), mpmath.im(z)))
        return [mpmath.mpc(r) for r in reals] + uppers + [mpmath.conj(z) for z in uppers]


def sympy_poly(coeffs):
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else c
                       for c in reversed(list(coeffs))], X)


def sylvester_resultant(f_coeffs, g_coeffs):
    """Res(f, g) as the determinant of the Sylvester matrix (sympy's resultant has sign slips)."""
    f = [sympy.Rational(str(Fraction(c))) for c in reversed(list(f_coeffs))]
    g = [sympy.Rational(str(Fraction(c))) for c in reversed(list(g_coeffs))]
    while len(g) > 1 and g[0] == 0:
        g = g[1:]
    m, n = len(f) - 1, len(g) - 1
    if n == 0:
        return Fraction(str(g[0] ** m))
    size = m + n
    rows = [[0] * i + f + [0] * (size - m - 1 - i) for i in range(n)]
    rows += [[0] * i + g + [0] * (size - n - 1 - i) for i in range(m)]
    return Fraction(str(sympy.Matrix(rows).det()))


def sympy_norm(f_coeffs, a_coeffs):
    """N(a) = Res(f, a) for monic f."""
    return sylvester_resultant(f_coeffs, a_coeffs)


def sympy_inverse(f_coeffs, a_coeffs):
    inv = sympy.invert(sympy_poly(a_coeffs).as_expr(), sympy_poly(f_coeffs).as_expr(), X)
    p = sympy.Poly(inv, X)
    return [Fraction(str(c)) for c in reversed(p.all_coeffs())]


def sympy_minpoly_of(f_coeffs, a_coeffs):
    """Minimal polynomial of a(theta), theta a root of f, via a resultant and factorization."""
    Y = sympy.Symbol("Y")
    res = sympy.resultant(sympy_poly(f_coeffs).as_expr(), Y - sympy_poly(a_coeffs).as_expr(), X)
    # pick the irreducible factor vanishing at a numerically evaluated conjugate
    roots = mp_roots(f_coeffs, 40)
    val = horner([complex(c) for c in a_coeffs], complex(roots[0]))
    best = None
    for fac, _ in sympy.factor_list(res, Y)[1]:
        v = abs(complex(sympy.Poly(fac, Y).eval(val)))
        if best is None or v < best[0]:
            best = (v, sympy.Poly(fac, Y).monic())
    return [Fraction(str(c)) for c in reversed(best[1].all_coeffs())]


def mp_embedding_values(f_coeffs, a_coeffs, dps=60):
    with mpmath.workdps(dps):
        return [horner([mpmath.mpf(Fraction(c).numerator) / Fraction(c).denominator for c in a_coeffs], r)
                for r in mp_roots(f_coeffs, dps)]
