"""Exact multivariate polynomials in x_1..x_m, y_1..y_n over Q.

Terms are stored canonically as {exponent tuple: Fraction}, zero-free.
Exponent tuples have length m + n: positions 0..m-1 are the x's, positions
m..m+n-1 are the y's.
"""

from __future__ import annotations

from fractions import Fraction


class MultiPoly:
    __slots__ = ("m", "n", "terms")

    def __init__(self, m: int, n: int, terms=None):
        self.m = m
        self.n = n
        self.terms: dict = {}
        if terms:
            for exps, c in terms.items():
                c = Fraction(c)
                if c:
                    key = tuple(int(e) for e in exps)
                    if len(key) != m + n:
                        raise ValueError("exponent tuple has wrong length")
                    self.terms[key] = self.terms.get(key, Fraction(0)) + c
            self.terms = {k: v for k, v in self.terms.items() if v}

    @classmethod
    def _raw(cls, m, n, terms):
        out = object.__new__(cls)
        out.m, out.n, out.terms = m, n, terms
        return out

    @classmethod
    def constant(cls, m: int, n: int, c) -> "MultiPoly":
        c = Fraction(c)
        return cls._raw(m, n, {tuple([0] * (m + n)): c} if c else {})

    @classmethod
    def x(cls, m: int, n: int, i: int) -> "MultiPoly":
        """The variable x_i, 1 <= i <= m."""
        if not 1 <= i <= m:
            raise ValueError(f"x index {i} out of range")
        e = [0] * (m + n)
        e[i - 1] = 1
        return cls._raw(m, n, {tuple(e): Fraction(1)})

    @classmethod
    def y(cls, m: int, n: int, j: int) -> "MultiPoly":
        """The variable y_j, 1 <= j <= n."""
        if not 1 <= j <= n:
            raise ValueError(f"y index {j} out of range")
        e = [0] * (m + n)
        e[m + j - 1] = 1
        return cls._raw(m, n, {tuple(e): Fraction(1)})

    def _check(self, other):
        if self.m != other.m or self.n != other.n:
            raise ValueError("variable sets differ")

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return (self.m, self.n, self.terms) == (other.m, other.n, other.terms)
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.m, self.n, other)
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, Fraction(0)) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return MultiPoly._raw(self.m, self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.m, self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, MultiPoly) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return MultiPoly._raw(self.m, self.n, {})
            return MultiPoly._raw(self.m, self.n, {k: v * c for k, v in self.terms.items()})
        self._check(other)
        out: dict = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                k = tuple(a + b for a, b in zip(ka, kb))
                s = out.get(k, Fraction(0)) + ca * cb
                if s:
                    out[k] = s
                else:
                    del out[k]
        return MultiPoly._raw(self.m, self.n, out)

    __rmul__ = __mul__

    def partial(self, var: int) -> "MultiPoly":
        """Partial derivative with respect to variable index var (0-based
        over the combined tuple; use partial_x/partial_y for labels)."""
        out: dict = {}
        for k, c in self.terms.items():
            e = k[var]
            if e:
                k2 = list(k)
                k2[var] = e - 1
                k2 = tuple(k2)
                s = out.get(k2, Fraction(0)) + c * e
                if s:
                    out[k2] = s
                else:
                    del out[k2]
        return MultiPoly._raw(self.m, self.n, out)

    def partial_x(self, i: int) -> "MultiPoly":
        if not 1 <= i <= self.m:
            raise ValueError(f"x index {i} out of range")
        return self.partial(i - 1)

    def partial_y(self, j: int) -> "MultiPoly":
        if not 1 <= j <= self.n:
            raise ValueError(f"y index {j} out of range")
        return self.partial(self.m + j - 1)

    def subst(self, var: int, g: "MultiPoly") -> "MultiPoly":
        """Substitute polynomial g for the variable at index var."""
        self._check(g)
        out = MultiPoly._raw(self.m, self.n, {})
        powers = {0: MultiPoly.constant(self.m, self.n, 1)}

        def g_pow(e):
            if e not in powers:
                powers[e] = g_pow(e - 1) * g
            return powers[e]

        for k, c in self.terms.items():
            k2 = list(k)
            e = k2[var]
            k2[var] = 0
            mono = MultiPoly._raw(self.m, self.n, {tuple(k2): c})
            out = out + mono * g_pow(e)
        return out

    def permute_vars(self, perm) -> "MultiPoly":
        """Apply a permutation of the m+n variable slots: new slot i gets the
        exponent of old slot perm[i]."""
        out: dict = {}
        for k, c in self.terms.items():
            k2 = tuple(k[perm[i]] for i in range(len(k)))
            s = out.get(k2, Fraction(0)) + c
            if s:
                out[k2] = s
            else:
                del out[k2]
        return MultiPoly._raw(self.m, self.n, out)

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(k) for k in self.terms)

    def to_json(self) -> dict:
        items = sorted(self.terms.items())
        return {
            "m": self.m,
            "n": self.n,
            "terms": [
                {"exponents": list(k), "coeff": f"{c.numerator}/{c.denominator}"}
                for k, c in items
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "MultiPoly":
        terms = {
            tuple(t["exponents"]): Fraction(t["coeff"]) for t in data["terms"]
        }
        return cls(data["m"], data["n"], terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        names = [f"x{i+1}" for i in range(self.m)] + [f"y{j+1}" for j in range(self.n)]
        bits = []
        for k, c in sorted(self.terms.items()):
            mono = "*".join(
                (names[i] if e == 1 else f"{names[i]}^{e}")
                for i, e in enumerate(k)
                if e
            )
            bits.append(f"{c}" if not mono else (mono if c == 1 else f"{c}*{mono}"))
        return " + ".join(bits)
