"""Exact Laurent polynomials in q with arbitrary-precision integer coefficients.

The coefficient dict work is delegated to a kernel module: the compiled
Cython kernel ``_laurent_cy`` when available, otherwise the pure-Python
``_laurent_py``.  Set WBLOCKS_KERNEL=py to force the pure kernel (used by the
benchmark to compare both).
"""

from __future__ import annotations

import os
from functools import lru_cache

if os.environ.get("WBLOCKS_KERNEL") == "py":
    from . import _laurent_py as _k
else:
    try:
        from . import _laurent_cy as _k  # type: ignore[attr-defined]
    except ImportError:
        from . import _laurent_py as _k

KERNEL = _k.KERNEL


class LaurentQ:
    """A Laurent polynomial sum c_e q^e, stored sparsely as {e: c}.

    Values are immutable by convention: no method mutates self, and the
    coefficient dict must not be modified by callers.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        if coeffs is None:
            self.coeffs = {}
        elif isinstance(coeffs, dict):
            self.coeffs = {int(e): int(c) for e, c in coeffs.items() if c}
        elif isinstance(coeffs, int):
            self.coeffs = {0: coeffs} if coeffs else {}
        else:
            raise TypeError(f"cannot build LaurentQ from {type(coeffs)!r}")

    @classmethod
    def _raw(cls, d: dict) -> "LaurentQ":
        out = object.__new__(cls)
        out.coeffs = d
        return out

    @classmethod
    def term(cls, coeff: int, exp: int = 0) -> "LaurentQ":
        return cls._raw({exp: coeff} if coeff else {})

    def __bool__(self):
        return bool(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if isinstance(other, int):
            return self.coeffs == ({0: other} if other else {})
        if isinstance(other, LaurentQ):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentQ(other)
        return LaurentQ._raw(_k.ladd(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentQ(other)
        return LaurentQ._raw(_k.lsub(self.coeffs, other.coeffs))

    def __rsub__(self, other):
        return LaurentQ(other) - self

    def __neg__(self):
        return LaurentQ._raw(_k.lneg(self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentQ._raw(_k.lscale(self.coeffs, other))
        return LaurentQ._raw(_k.lmul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentQ":
        """Multiply by q^k."""
        return LaurentQ._raw(_k.lshift(self.coeffs, k))

    def bar(self) -> "LaurentQ":
        """The bar involution q -> q^{-1}."""
        return LaurentQ._raw(_k.lbar(self.coeffs))

    def divexact(self, other: "LaurentQ") -> "LaurentQ":
        """Exact division; inexactness raises ValueError (an internal bug)."""
        return LaurentQ._raw(_k.ldivexact(self.coeffs, other.coeffs))

    def eval1(self) -> int:
        """Evaluate at q = 1 (sum of coefficients)."""
        return sum(self.coeffs.values())

    def min_exp(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no exponents")
        return min(self.coeffs)

    def max_exp(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no exponents")
        return max(self.coeffs)

    def is_poly_in_q(self) -> bool:
        """True iff all exponents are >= 0."""
        return all(e >= 0 for e in self.coeffs)

    def has_nonneg_coeffs(self) -> bool:
        return all(c >= 0 for c in self.coeffs.values())

    def in_q_zq(self) -> bool:
        """True iff the polynomial lies in q Z[q] (positive exponents only)."""
        return all(e >= 1 for e in self.coeffs)

    def positive_part(self) -> "LaurentQ":
        """The part with strictly positive exponents."""
        return LaurentQ._raw({e: c for e, c in self.coeffs.items() if e > 0})

    def to_json(self) -> dict:
        return {"coeffs": {str(e): str(c) for e, c in sorted(self.coeffs.items())}}

    @classmethod
    def from_json(cls, data: dict) -> "LaurentQ":
        return cls({int(e): int(c) for e, c in data["coeffs"].items()})

    def __repr__(self):
        if not self.coeffs:
            return "0"
        bits = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            if e == 0:
                bits.append(f"{c}")
            elif e == 1:
                bits.append(f"{c}*q" if c != 1 else "q")
            else:
                bits.append(f"{c}*q^{e}" if c != 1 else f"q^{e}")
        return " + ".join(bits).replace("+ -", "- ")


ZERO = LaurentQ._raw({})
ONE = LaurentQ._raw({0: 1})
Q = LaurentQ._raw({1: 1})
QINV = LaurentQ._raw({-1: 1})


def qint(n: int) -> LaurentQ:
    """The symmetric quantum integer [n] = (q^n - q^-n)/(q - q^-1)."""
    if n < 0:
        raise ValueError("qint requires n >= 0")
    return LaurentQ._raw({n - 1 - 2 * k: 1 for k in range(n)})


@lru_cache(maxsize=None)
def qfact(n: int) -> LaurentQ:
    """The quantum factorial [n]!."""
    if n < 0:
        raise ValueError("qfact requires n >= 0")
    if n == 0:
        return ONE
    return qfact(n - 1) * qint(n)


@lru_cache(maxsize=None)
def qbinom(n: int, r: int) -> LaurentQ:
    """The quantum binomial coefficient, computed by exact division."""
    if n < 0 or r < 0 or r > n:
        raise ValueError(f"qbinom({n},{r}) out of range")
    return qfact(n).divexact(qfact(r) * qfact(n - r))
