"""Pure-Python kernel for Laurent-polynomial arithmetic in one variable q.

A Laurent polynomial is a plain dict mapping exponent (int) to coefficient
(int, arbitrary precision).  Zero coefficients are never stored; the zero
polynomial is the empty dict.  All functions return fresh dicts and never
mutate their arguments.

The Cython module ``_laurent_cy`` implements the same interface; see
``wblocks.laurent`` for the import-time selection.
"""

KERNEL = "python"


def ladd(a, b):
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def lsub(a, b):
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) - c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def lneg(a):
    return {e: -c for e, c in a.items()}


def lmul(a, b):
    if not a or not b:
        return {}
    if len(b) < len(a):
        a, b = b, a
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            s = out.get(e, 0) + ca * cb
            if s:
                out[e] = s
            else:
                del out[e]
    return out


def lscale(a, c):
    if c == 0:
        return {}
    return {e: k * c for e, k in a.items()}


def lshift(a, k):
    if k == 0:
        return dict(a)
    return {e + k: c for e, c in a.items()}


def lbar(a):
    return {-e: c for e, c in a.items()}


def ldivexact(a, b):
    """Exact division a / b; raises ValueError if b is zero or the division
    leaves a remainder (which signals an internal bug in callers)."""
    if not b:
        raise ValueError("division by zero Laurent polynomial")
    if not a:
        return {}
    eb = max(b)
    cb = b[eb]
    rem = dict(a)
    quo = {}
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
