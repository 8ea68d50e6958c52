# cython: language_level=3, boundscheck=False, wraparound=False
"""Cython kernel for Laurent-polynomial arithmetic in one variable q.

Same interface and semantics as ``_laurent_py``: Laurent polynomials are
plain dicts {exponent: coefficient}, zero coefficients never stored,
arguments never mutated.  Coefficients stay Python ints so arbitrary
precision is preserved; the speedup comes from compiled dict traversal in
the inner loops.
"""

KERNEL = "cython"


def ladd(dict a, dict b):
    cdef dict out = dict(a)
    cdef object e, c, s
    for e, c in b.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def lsub(dict a, dict b):
    cdef dict out = dict(a)
    cdef object e, c, s
    for e, c in b.items():
        s = out.get(e, 0) - c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def lneg(dict a):
    cdef dict out = {}
    cdef object e, c
    for e, c in a.items():
        out[e] = -c
    return out


def lmul(dict a, dict b):
    if not a or not b:
        return {}
    if len(b) < len(a):
        a, b = b, a
    cdef dict out = {}
    cdef object ea, ca, eb, cb, e, s
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            s = out.get(e, 0) + ca * cb
            if s:
                out[e] = s
            else:
                del out[e]
    return out


def lscale(dict a, c):
    if c == 0:
        return {}
    cdef dict out = {}
    cdef object e, k
    for e, k in a.items():
        out[e] = k * c
    return out


def lshift(dict a, k):
    if k == 0:
        return dict(a)
    cdef dict out = {}
    cdef object e, c
    for e, c in a.items():
        out[e + k] = c
    return out


def lbar(dict a):
    cdef dict out = {}
    cdef object e, c
    for e, c in a.items():
        out[-e] = c
    return out


def ldivexact(dict a, dict b):
    if not b:
        raise ValueError("division by zero Laurent polynomial")
    if not a:
        return {}
    cdef object eb = max(b)
    cdef object cb = b[eb]
    cdef dict rem = dict(a)
    cdef dict quo = {}
    cdef object ea, ca, c, k, e2, c2, e, s
    while rem:
        ea = max(rem)
        ca = rem[ea]
        if ca % cb:
            raise ValueError("inexact Laurent division")
        c = ca // cb
        k = ea - eb
        quo[k] = c
        for e2, c2 in b.items():
            e = e2 + k
            s = rem.get(e, 0) - c * c2
            if s:
                rem[e] = s
            else:
                rem.pop(e, None)
    return quo
