"""Harish-Chandra shadow of the center: elementary supersymmetric
polynomials, the invariant subalgebras cut out by the derivative congruence,
and the generating-series route to the same generators.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .multipoly import MultiPoly


def e_sym(m: int, n: int, r: int) -> MultiPoly:
    """Elementary symmetric polynomial e_r in the x variables."""
    out = MultiPoly(m, n)
    if r == 0:
        return MultiPoly.constant(m, n, 1)
    for combo in itertools.combinations(range(1, m + 1), r):
        term = MultiPoly.constant(m, n, 1)
        for i in combo:
            term = term * MultiPoly.x(m, n, i)
        out = out + term
    return out


def h_sym(m: int, n: int, r: int) -> MultiPoly:
    """Complete homogeneous symmetric polynomial h_r in the y variables."""
    if r == 0:
        return MultiPoly.constant(m, n, 1)
    out = MultiPoly(m, n)
    for combo in itertools.combinations_with_replacement(range(1, n + 1), r):
        term = MultiPoly.constant(m, n, 1)
        for j in combo:
            term = term * MultiPoly.y(m, n, j)
        out = out + term
    return out


def e_super(r: int, m: int, n: int) -> MultiPoly:
    """Elementary supersymmetric polynomial: the alternating convolution of
    elementary symmetric (x) with complete symmetric (y) pieces of total
    degree r."""
    if r < 1:
        raise ValueError("e_super requires r >= 1")
    out = MultiPoly(m, n)
    for s in range(r + 1):
        t = r - s
        if s > m:
            continue
        term = e_sym(m, n, s) * h_sym(m, n, t)
        if t % 2:
            term = -term
        out = out + term
    return out


def _transposition_perm(m: int, n: int, a: int, b: int):
    """Variable-slot permutation swapping slots a and b (0-based)."""
    perm = list(range(m + n))
    perm[a], perm[b] = perm[b], perm[a]
    return perm


def is_symmetric(f: MultiPoly) -> bool:
    """S_m x S_n symmetry, checked on adjacent transpositions (they generate
    the group)."""
    m, n = f.m, f.n
    for a in range(m - 1):
        if f.permute_vars(_transposition_perm(m, n, a, a + 1)) != f:
            return False
    for a in range(n - 1):
        if f.permute_vars(_transposition_perm(m, n, m + a, m + a + 1)) != f:
            return False
    return True


def _congruence_holds(f: MultiPoly, i: int, j: int) -> bool:
    """Whether df/dx_i + df/dy_j vanishes mod (x_i - y_j), tested by
    substituting x_i <- y_j (the quotient ring is a polynomial ring)."""
    g = f.partial_x(i) + f.partial_y(j)
    return g.subst(i - 1, MultiPoly.y(f.m, f.n, j)).is_zero()


def in_I(f: MultiPoly, m: int, n: int) -> bool:
    """Membership in the image of the center: S_m x S_n symmetry plus the
    derivative congruence for every pair (i, j)."""
    if (f.m, f.n) != (m, n):
        raise ValueError("variable sets differ")
    if not is_symmetric(f):
        return False
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            if not _congruence_holds(f, i, j):
                return False
    return True


def in_J(f: MultiPoly, m: int, n: int, s_minus: int = 0) -> bool:
    """Membership in the larger subalgebra: the congruence only for the
    diagonal pairs (i, i + s_minus), with no symmetry demand."""
    if (f.m, f.n) != (m, n):
        raise ValueError("variable sets differ")
    for i in range(1, m + 1):
        j = i + s_minus
        if not 1 <= j <= n:
            raise ValueError("diagonal pair leaves the y range")
        if not _congruence_holds(f, i, j):
            return False
    return True


def hc_series_coeff(r: int, m: int, n: int) -> MultiPoly:
    """Coefficient of u^{-r} in prod_k (1 + u^{-1} x_k) / prod_k
    (1 + u^{-1} y_k), computed by truncated series expansion in u^{-1}.

    This is the generating-series route to e_super; the two are compared as
    an independent cross-check.
    """
    if r < 1:
        raise ValueError("hc_series_coeff requires r >= 1")
    # series[d] = coefficient of u^{-d}, truncated at degree r
    series = [MultiPoly.constant(m, n, 1)] + [MultiPoly(m, n) for _ in range(r)]
    for k in range(1, m + 1):
        xk = MultiPoly.x(m, n, k)
        for d in range(r, 0, -1):
            series[d] = series[d] + series[d - 1] * xk
    for k in range(1, n + 1):
        # 1 / (1 + u^{-1} y_k) = sum_t (-1)^t y_k^t u^{-t}
        yk = MultiPoly.y(m, n, k)
        geo = [MultiPoly.constant(m, n, 1)]
        for t in range(1, r + 1):
            geo.append(geo[-1] * yk * Fraction(-1))
        new = [MultiPoly(m, n) for _ in range(r + 1)]
        for d1 in range(r + 1):
            if series[d1].is_zero():
                continue
            for d2 in range(r + 1 - d1):
                new[d1 + d2] = new[d1 + d2] + series[d1] * geo[d2]
        series = new
    return series[r]


def symmetrize(f: MultiPoly) -> MultiPoly:
    """Average of f over S_m x S_n (used to generate random symmetric
    test polynomials)."""
    m, n = f.m, f.n
    out = MultiPoly(m, n)
    count = 0
    for pm in itertools.permutations(range(m)):
        for pn in itertools.permutations(range(n)):
            perm = list(pm) + [m + a for a in pn]
            out = out + f.permute_vars(perm)
            count += 1
    return out * Fraction(1, count)
