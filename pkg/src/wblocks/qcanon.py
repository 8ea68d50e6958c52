"""Quantum sl_N engine: tensor space of natural/dual-natural modules,
R-matrix actions, bar involutions, canonical and dual canonical bases via
Lusztig's lemma, the braided symmetric algebra on x/y generators, and both
evaluations of the canonical-basis pairing.
"""

from __future__ import annotations

import itertools
from math import comb

from .combinat import Composition
from .laurent import ONE, ZERO, LaurentQ, qbinom, qfact
from . import cache as _cache

# q - q^{-1}, used throughout the R-matrix formulas
_QDIFF = LaurentQ({1: 1, -1: -1})


class TensorVec:
    """Element of V^{s_1} x ... x V^{s_k} over quantum sl_N: finitely
    supported map from index tuples in [1, N]^k to Laurent polynomials."""

    __slots__ = ("N", "signs", "terms")

    def __init__(self, N: int, signs: str, terms=None):
        self.N = N
        self.signs = signs
        self.terms: dict = {}
        if terms:
            for key, c in terms.items():
                if not isinstance(c, LaurentQ):
                    c = LaurentQ(c)
                if c.is_zero():
                    continue
                key = tuple(key)
                if len(key) != len(signs) or not all(1 <= i <= N for i in key):
                    raise ValueError(f"bad index tuple {key}")
                self.terms[key] = c

    @classmethod
    def unit(cls, N: int, signs: str, key) -> "TensorVec":
        return cls(N, signs, {tuple(key): ONE})

    def _check(self, other: "TensorVec"):
        if self.N != other.N or self.signs != other.signs:
            raise ValueError("tensor shapes differ")

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, TensorVec):
            return (self.N, self.signs, self.terms) == (other.N, other.signs, other.terms)
        return NotImplemented

    def __add__(self, other: "TensorVec") -> "TensorVec":
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, ZERO) + c
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        v = TensorVec(self.N, self.signs)
        v.terms = out
        return v

    def __sub__(self, other: "TensorVec") -> "TensorVec":
        return self + other.scaled(LaurentQ(-1))

    def scaled(self, c) -> "TensorVec":
        if isinstance(c, int):
            c = LaurentQ(c)
        v = TensorVec(self.N, self.signs)
        if not c.is_zero():
            v.terms = {k: x * c for k, x in self.terms.items()}
        return v

    def bar_coeffs(self) -> "TensorVec":
        v = TensorVec(self.N, self.signs)
        v.terms = {k: c.bar() for k, c in self.terms.items()}
        return v

    def coeff(self, key) -> LaurentQ:
        return self.terms.get(tuple(key), ZERO)

    def weight(self):
        """Common weight of the support as a dict eps-index -> int; raises if
        the support is not weight-homogeneous or empty."""
        if not self.terms:
            raise ValueError("zero vector has no weight")
        weights = {_key_weight(self.signs, k) for k in self.terms}
        if len(weights) > 1:
            raise ValueError("vector is not weight-homogeneous")
        return dict(weights.pop())

    def to_json(self) -> dict:
        items = sorted(self.terms.items(), key=lambda kc: kc[0], reverse=True)
        return {
            "N": self.N,
            "signs": self.signs,
            "terms": [
                {"key": list(k), "coeff": {str(e): str(c) for e, c in sorted(v.coeffs.items())}}
                for k, v in items
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "TensorVec":
        terms = {
            tuple(t["key"]): LaurentQ({int(e): int(c) for e, c in t["coeff"].items()})
            for t in data["terms"]
        }
        return cls(data["N"], data["signs"], terms)

    def __repr__(self):
        return f"TensorVec({self.N}, {self.signs!r}, {len(self.terms)} terms)"


def _key_weight(signs: str, key) -> tuple:
    w: dict = {}
    for s, i in zip(signs, key):
        w[i] = w.get(i, 0) + (1 if s == "+" else -1)
    return tuple(sorted((i, c) for i, c in w.items() if c))


def _alpha_eps(i: int, j: int) -> int:
    """(alpha_i, eps_j) for the standard symmetric form."""
    return (1 if j == i else 0) - (1 if j == i + 1 else 0)


def _slot_K_exp(sign: str, i: int, j: int) -> int:
    """Exponent of q from K_i acting on v_j^{sign}."""
    e = _alpha_eps(i, j)
    return e if sign == "+" else -e


def act_gen(gen: str, i: int, v: TensorVec) -> TensorVec:
    """Action of F_i, E_i, K_i or K_i^{-1} through the iterated
    comultiplication (F carries K's to its right, E carries K^{-1}'s to its
    left)."""
    N, signs = v.N, v.signs
    if not 1 <= i < N:
        raise ValueError(f"generator index {i} out of range 1..{N - 1}")
    k = len(signs)
    out = TensorVec(N, signs)
    if gen in ("K", "Kinv"):
        sgn = 1 if gen == "K" else -1
        for key, c in v.terms.items():
            e = sum(_slot_K_exp(signs[a], i, key[a]) for a in range(k))
            out = out + TensorVec(N, signs, {key: c.shift(sgn * e)})
        return out
    if gen not in ("F", "E"):
        raise ValueError(f"unknown generator {gen!r}")
    for key, c in v.terms.items():
        for a in range(k):
            s, j = signs[a], key[a]
            if gen == "F":
                if s == "+" and j == i:
                    new_j = i + 1
                elif s == "-" and j == i + 1:
                    new_j = i
                else:
                    continue
                shift = sum(_slot_K_exp(signs[b], i, key[b]) for b in range(a + 1, k))
            else:
                if s == "+" and j == i + 1:
                    new_j = i
                elif s == "-" and j == i:
                    new_j = i + 1
                else:
                    continue
                shift = -sum(_slot_K_exp(signs[b], i, key[b]) for b in range(a))
            key2 = key[:a] + (new_j,) + key[a + 1 :]
            out = out + TensorVec(N, signs, {key2: c.shift(shift)})
    return out


# ---------------------------------------------------------------------------
# R-matrix


def _r_pair(N: int, s1: str, s2: str, i: int, j: int, inverse: bool):
    """R (or R^{-1}) on v_i^{s1} x v_j^{s2}: list of ((jj, ii), coeff) with
    the output living in V^{s2} x V^{s1}."""
    out = []
    if s1 == s2:
        if i == j:
            out.append(((j, i), LaurentQ({-1 if inverse else 1: 1})))
            return out
        out.append(((j, i), ONE))
        disorder = (i > j) if s1 == "+" else (i < j)
        if not inverse and disorder:
            out.append(((i, j), _QDIFF))
        elif inverse and not disorder:
            out.append(((i, j), _QDIFF * -1))
        return out
    # mixed signs
    if i != j:
        out.append(((j, i), ONE))
        return out
    out.append(((j, i), LaurentQ({1 if inverse else -1: 1})))
    # the correction runs down the indices for (R on +-) and (R^{-1} on -+),
    # up for the other two diagonal cases
    down = (s1 == "+") != inverse
    rng = range(1, i) if down else range(1, N - i + 1)
    step = -1 if down else 1
    for r in rng:
        c = _QDIFF * ((-1) ** (r + 1) if not inverse else (-1) ** r)
        c = c.shift(r if inverse else -r)
        out.append(((j + step * r, i + step * r), c))
    return out


def r_apply(slot: int, v: TensorVec, inverse: bool = False) -> TensorVec:
    """Apply the R-matrix (or its inverse) at adjacent slots (slot, slot+1),
    1-based; the sign sequence is swapped at those slots."""
    k = len(v.signs)
    if not 1 <= slot < k:
        raise ValueError(f"slot {slot} out of range 1..{k - 1}")
    a = slot - 1
    s1, s2 = v.signs[a], v.signs[a + 1]
    new_signs = v.signs[:a] + s2 + s1 + v.signs[a + 2 :]
    out = TensorVec(v.N, new_signs)
    for key, c in v.terms.items():
        i, j = key[a], key[a + 1]
        for (jj, ii), rc in _r_pair(v.N, s1, s2, i, j, inverse):
            if not (1 <= jj <= v.N and 1 <= ii <= v.N):
                continue
            key2 = key[:a] + (jj, ii) + key[a + 2 :]
            out = out + TensorVec(v.N, new_signs, {key2: c * rc})
    return out


def _w0_word(k: int):
    """Canonical reduced word for the longest element: s1, s2 s1, s3 s2 s1,..."""
    word = []
    for top in range(1, k):
        word.extend(range(top, 0, -1))
    return word


def _psi_key(v_key, signs, N, inverse: bool, word=None) -> TensorVec:
    """R_{w0} (or its inverse version) applied to the reversed pure tensor,
    with the q-prefactor from the pairwise form values."""
    k = len(signs)
    e = 0
    for r in range(k):
        for s in range(r + 1, k):
            if v_key[r] == v_key[s]:
                sr = 1 if signs[r] == "+" else -1
                ss = 1 if signs[s] == "+" else -1
                e += sr * ss
    if word is None:
        word = _w0_word(k)
    rev_signs = signs[::-1]
    cur = TensorVec.unit(N, rev_signs, tuple(reversed(v_key)))
    for idx in reversed(word):
        cur = r_apply(idx, cur, inverse=inverse)
    if cur.signs != signs:
        raise AssertionError("reduced word did not restore the sign sequence")
    return cur.scaled(LaurentQ({e if inverse else -e: 1}))


def psi(v: TensorVec, word=None) -> TensorVec:
    """The bar involution compatible with bar on the quantum group
    (anti-linear; built from the R-matrix along a reduced word for w0)."""
    out = TensorVec(v.N, v.signs)
    for key, c in v.terms.items():
        out = out + _psi_key(key, v.signs, v.N, inverse=False, word=word).scaled(c.bar())
    return out


def psi_star(v: TensorVec, word=None) -> TensorVec:
    """The adjoint bar involution with respect to the orthonormal-basis
    form (anti-linear; built from inverse R-matrices)."""
    out = TensorVec(v.N, v.signs)
    for key, c in v.terms.items():
        out = out + _psi_key(key, v.signs, v.N, inverse=True, word=word).scaled(c.bar())
    return out


def pairing(v: TensorVec, w: TensorVec) -> LaurentQ:
    """Bilinear form making the monomial basis orthonormal."""
    v._check(w)
    out = ZERO
    small, large = (v.terms, w.terms) if len(v.terms) < len(w.terms) else (w.terms, v.terms)
    for key, c in small.items():
        d = large.get(key)
        if d is not None:
            out = out + c * d
    return out


# ---------------------------------------------------------------------------
# canonical and dual canonical bases (Lusztig's lemma)


def _split_signs(signs: str):
    m = signs.count("+")
    if signs != "+" * m + "-" * (len(signs) - m):
        raise ValueError("canonical bases live in (+)^m (-)^n tensor spaces")
    return m, len(signs) - m


def key_stat(signs: str, key) -> tuple:
    """Statistic compatible with the Bruhat order: (entry sum, number of
    top inversions plus bottom co-inversions, the key itself)."""
    m, _ = _split_signs(signs)
    top, bottom = key[:m], key[m:]
    ell = sum(
        1 for a in range(len(top)) for b in range(a + 1, len(top)) if top[a] > top[b]
    ) + sum(
        1
        for a in range(len(bottom))
        for b in range(a + 1, len(bottom))
        if bottom[a] < bottom[b]
    )
    return (sum(key), ell, key)


def _weight_space_keys(N: int, signs: str, weight: tuple):
    for key in itertools.product(range(1, N + 1), repeat=len(signs)):
        if _key_weight(signs, key) == weight:
            yield key


_family_memo: dict = {}


def _basis_family(N: int, signs: str, weight: tuple, dual: bool) -> dict:
    """All canonical (dual=False) or dual canonical (dual=True) basis vectors
    of one weight space, computed by Lusztig's-lemma recursion and memoized
    (in memory, and in the file cache when one is configured)."""
    memo_key = (N, signs, weight, dual)
    if memo_key in _family_memo:
        return _family_memo[memo_key]

    request = {
        "kind": "dual_family" if dual else "family",
        "N": N,
        "signs": signs,
        "weight": [list(p) for p in weight],
    }
    cached = _cache.get(request)
    if cached is not None:
        family = {
            tuple(item["key"]): TensorVec.from_json(item["vec"])
            for item in cached["family"]
        }
        _family_memo[memo_key] = family
        return family

    keys = sorted(_weight_space_keys(N, signs, weight), key=lambda k: key_stat(signs, k))
    if not dual:
        keys.reverse()
    bar = psi_star if dual else psi
    family: dict = {}
    for key in keys:
        c = TensorVec.unit(N, signs, key)
        d = bar(c) - c
        while not d.is_zero():
            if dual:
                head = max(d.terms, key=lambda k: key_stat(signs, k))
            else:
                head = min(d.terms, key=lambda k: key_stat(signs, k))
            r = d.terms[head]
            if not (r + r.bar()).is_zero():
                raise ArithmeticError("non-triangular bar involution (internal bug)")
            p = r.positive_part()
            c = c + family[head].scaled(p)
            d = d - family[head].scaled(r)
        for k2, coeff in c.terms.items():
            if k2 != key and not coeff.in_q_zq():
                raise ArithmeticError("basis coefficient not in qZ[q] (internal bug)")
        family[key] = c
    _cache.put(
        request,
        {
            "family": [
                {"key": list(k), "vec": vec.to_json()} for k, vec in sorted(family.items())
            ]
        },
    )
    _family_memo[memo_key] = family
    return family


def _key_of(top, bottom):
    return tuple(top) + tuple(bottom)


def dual_canonical(N: int, top, bottom) -> TensorVec:
    """Dual canonical basis vector: the unique psi*-fixed vector equal to
    the monomial plus a q Z[q] combination of lower monomials."""
    signs = "+" * len(top) + "-" * len(bottom)
    key = _key_of(top, bottom)
    weight = _key_weight(signs, key)
    return _basis_family(N, signs, weight, dual=True)[key]


def canonical(N: int, top, bottom) -> TensorVec:
    """Canonical basis vector: psi-fixed, unitriangular the other way."""
    signs = "+" * len(top) + "-" * len(bottom)
    key = _key_of(top, bottom)
    weight = _key_weight(signs, key)
    return _basis_family(N, signs, weight, dual=False)[key]


# ---------------------------------------------------------------------------
# the braided symmetric algebra S


class SVec:
    """Element of the x/y algebra in normal form: map from anti-dominant
    index tableaux (top ascending, bottom descending) to Laurent
    polynomials."""

    __slots__ = ("N", "terms")

    def __init__(self, N: int, terms=None):
        self.N = N
        self.terms: dict = {}
        if terms:
            for (top, bottom), c in terms.items():
                if c.is_zero():
                    continue
                top, bottom = tuple(top), tuple(bottom)
                if list(top) != sorted(top) or list(bottom) != sorted(bottom, reverse=True):
                    raise ValueError("SVec keys must be anti-dominant")
                self.terms[(top, bottom)] = c

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, SVec):
            return (self.N, self.terms) == (other.N, other.terms)
        return NotImplemented

    def __add__(self, other: "SVec") -> "SVec":
        if self.N != other.N:
            raise ValueError("rank mismatch")
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, ZERO) + c
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        v = SVec(self.N)
        v.terms = out
        return v

    def __sub__(self, other: "SVec") -> "SVec":
        return self + other.scaled(LaurentQ(-1))

    def scaled(self, c: LaurentQ) -> "SVec":
        v = SVec(self.N)
        if not c.is_zero():
            v.terms = {k: x * c for k, x in self.terms.items()}
        return v

    def coeff(self, top, bottom) -> LaurentQ:
        return self.terms.get((tuple(top), tuple(bottom)), ZERO)

    def __repr__(self):
        return f"SVec({self.N}, {len(self.terms)} terms)"


def straighten(top, bottom):
    """Straightening data of a monomial: (ell, anti-dominant key) with
    ell counting top inversions plus bottom co-inversions, so that the
    monomial equals q^ell times the sorted one."""
    top, bottom = tuple(top), tuple(bottom)
    ell = sum(
        1 for a in range(len(top)) for b in range(a + 1, len(top)) if top[a] > top[b]
    ) + sum(
        1
        for a in range(len(bottom))
        for b in range(a + 1, len(bottom))
        if bottom[a] < bottom[b]
    )
    return ell, (tuple(sorted(top)), tuple(sorted(bottom, reverse=True)))


def word_to_svec(N: int, word, coeff: LaurentQ = ONE) -> SVec:
    """Normal form of a word in the generators: word is a sequence of
    ('x'|'y', index) pairs.  Rewrites y-past-x using the commutation rules
    (with branching on the equal-index case), then sorts each letter block."""
    out = SVec(N)
    stack = [(coeff, list(word))]
    while stack:
        c, w = stack.pop()
        pos = None
        for p in range(len(w) - 1):
            if w[p][0] == "y" and w[p + 1][0] == "x":
                pos = p
                break
        if pos is None:
            top = [i for kind, i in w if kind == "x"]
            bottom = [i for kind, i in w if kind == "y"]
            ell, key = straighten(top, bottom)
            term = SVec(N)
            term.terms = {key: c.shift(ell)}
            out = out + term
            continue
        yi = w[pos][1]
        xj = w[pos + 1][1]
        if yi != xj:
            w2 = w[:pos] + [w[pos + 1], w[pos]] + w[pos + 2 :]
            stack.append((c, w2))
        else:
            i = yi
            w2 = w[:pos] + [("x", i), ("y", i)] + w[pos + 2 :]
            stack.append((c.shift(1), w2))
            for r in range(1, i):
                wr = w[:pos] + [("x", i - r), ("y", i - r)] + w[pos + 2 :]
                cr = c * (_QDIFF * ((-1) ** r)).shift(r)
                stack.append((cr, wr))
    return out


def s_mul(a: SVec, b: SVec) -> SVec:
    """Product in the algebra, renormalized."""
    if a.N != b.N:
        raise ValueError("rank mismatch")
    out = SVec(a.N)
    for (ta, ba), ca in a.terms.items():
        for (tb, bb), cb in b.terms.items():
            word = (
                [("x", i) for i in ta]
                + [("y", j) for j in ba]
                + [("x", i) for i in tb]
                + [("y", j) for j in bb]
            )
            out = out + word_to_svec(a.N, word, ca * cb)
    return out


def z_word_terms(N: int, c: int):
    """Expansion of z_c = sum_{r} (-q)^r x_{c-r} y_{c-r} as (coeff, pair)."""
    if not 1 <= c <= N:
        raise ValueError("z index out of range")
    return [
        (LaurentQ({r: (-1) ** r}), ("x", c - r), ("y", c - r)) for r in range(c)
    ]


def atyp_split(top, bottom):
    """Split an anti-dominant key into (paired values c, leftover top,
    leftover bottom) realizing the maximal number of matched value pairs."""
    top_count: dict = {}
    for a in top:
        top_count[a] = top_count.get(a, 0) + 1
    bot_count: dict = {}
    for b in bottom:
        bot_count[b] = bot_count.get(b, 0) + 1
    cs = []
    for v in sorted(set(top_count) & set(bot_count)):
        cs.extend([v] * min(top_count[v], bot_count[v]))
    rest_top = []
    taken = {v: cs.count(v) for v in cs}
    for a in sorted(top):
        if taken.get(a, 0) > 0:
            taken[a] -= 1
        else:
            rest_top.append(a)
    taken = {v: cs.count(v) for v in cs}
    rest_bottom = []
    for b in sorted(bottom, reverse=True):
        if taken.get(b, 0) > 0:
            taken[b] -= 1
        else:
            rest_bottom.append(b)
    return cs, rest_top, rest_bottom


def d_basis(N: int, top, bottom) -> SVec:
    """Dual canonical basis element of the algebra, from its closed form:
    a q-power times x's, central z's for the matched values, then y's."""
    top, bottom = tuple(top), tuple(bottom)
    if list(top) != sorted(top) or list(bottom) != sorted(bottom, reverse=True):
        raise ValueError("d_basis requires an anti-dominant key")
    cs, rest_top, rest_bottom = atyp_split(top, bottom)
    t = len(cs)
    pre = -(t * (t - 1)) // 2
    pre -= sum(1 for a in rest_top for c in cs if a > c)
    pre -= sum(1 for b in rest_bottom for c in cs if b > c)
    out = SVec(N)
    base_word = [("x", a) for a in rest_top]
    for z_expansion in itertools.product(*(z_word_terms(N, c) for c in cs)):
        coeff = LaurentQ({pre: 1})
        word = list(base_word)
        for zc, xg, yg in z_expansion:
            coeff = coeff * zc
            word.extend([xg, yg])
        word.extend(("y", b) for b in rest_bottom)
        out = out + word_to_svec(N, word, coeff)
    return out


def project_to_S(v: TensorVec) -> SVec:
    """The projection sending each monomial tensor to q^ell times the
    anti-dominant algebra monomial it straightens to."""
    m, n = _split_signs(v.signs)
    out = SVec(v.N)
    for key, c in v.terms.items():
        ell, skey = straighten(key[:m], key[m:])
        term = SVec(v.N)
        term.terms = {skey: c.shift(ell)}
        out = out + term
    return out


def psi_star_S(v: SVec) -> SVec:
    """The bar involution on the algebra, computed independently of the
    tensor space: generators are fixed and products reverse with the
    q^{(weight, weight') - mm' - nn'} twist."""
    out = SVec(v.N)
    for (top, bottom), c in v.terms.items():
        out = out + _psi_star_word(v.N, list(top), list(bottom)).scaled(c.bar())
    return out


def _psi_star_word(N: int, top, bottom) -> SVec:
    if not top and not bottom:
        unit = SVec(N)
        unit.terms = {((), ()): ONE}
        return unit
    if top:
        kind, idx = "x", top[0]
        rest_top, rest_bottom = top[1:], bottom
    else:
        kind, idx = "y", bottom[0]
        rest_top, rest_bottom = top, bottom[1:]
    rest = _psi_star_word(N, rest_top, rest_bottom)
    mp, np_ = len(rest_top), len(rest_bottom)
    wt_idx = {}
    for a in rest_top:
        wt_idx[a] = wt_idx.get(a, 0) + 1
    for b in rest_bottom:
        wt_idx[b] = wt_idx.get(b, 0) - 1
    if kind == "x":
        e = wt_idx.get(idx, 0) - mp
        gen_word = [("x", idx)]
    else:
        e = -wt_idx.get(idx, 0) - np_
        gen_word = [("y", idx)]
    out = SVec(N)
    for (rt, rb), rc in rest.terms.items():
        word = [("x", a) for a in rt] + [("y", b) for b in rb] + gen_word
        out = out + word_to_svec(N, word, rc.shift(e))
    return out


# ---------------------------------------------------------------------------
# closed-form expansions and the pairing formula


def expand_u_in_d(lam: Composition, mu: Composition, nu: Composition, N: int) -> dict:
    """Coefficients of the monomial basis element on the dual canonical
    basis of the algebra: {kappa: q^{theta_i (lam_{i+1} + gamma_{i+1})}
    qbinom(lam_{i+1}, theta_i) products}."""
    gamma = mu + nu
    for c in (lam, gamma):
        lo, hi = c.support_bounds()
        if hi >= lo and not (1 <= lo and hi <= N):
            raise ValueError("supports must lie in [1, N]")
    out: dict = {}
    spans = [range(lam[i + 1] + 1) for i in range(1, N)]
    for theta in itertools.product(*spans):
        coeff = ONE
        items = {i: lam[i] for i in range(1, N + 1)}
        for idx, th in enumerate(theta):
            i = idx + 1
            if th:
                coeff = coeff * qbinom(lam[i + 1], th).shift(th * (lam[i + 1] + gamma[i + 1]))
                items[i] += th
                items[i + 1] -= th
        kappa = Composition.from_items(items)
        out[kappa] = out.get(kappa, ZERO) + coeff
    return {k: v for k, v in out.items() if not v.is_zero()}


def pairing_formula(
    kappa: Composition,
    lam: Composition,
    gamma: Composition,
    N: int,
    m: int,
    n: int,
) -> LaurentQ:
    """Closed formula for the canonical-basis pairing (b_kappa, b_lambda) in
    rank N, with the stated boundary conventions tau_1 = rho_1 = lambda_1
    and tau_{N+1} = 0."""
    t = lam.total
    if kappa.total != t:
        raise ValueError("kappa and lambda must have equal size")
    for c in (kappa, lam, gamma):
        lo, hi = c.support_bounds()
        if hi >= lo and not (1 <= lo and hi <= N):
            raise ValueError("supports must lie in [1, N]")
    L = [0] + [lam[i] for i in range(1, N + 2)]  # L[i] = lambda_i, L[N+1] = 0
    K = [0] + [kappa[i] for i in range(1, N + 1)]
    G = [0] + [gamma[i] for i in range(1, N + 1)]
    # rho from the difference kappa - lambda
    rho = [0] * (N + 1)
    rho[1] = L[1]
    run = 0
    for i in range(1, N):
        run += K[i] - L[i]
        rho[i + 1] = L[i + 1] - run
        if rho[i + 1] < 0:
            return ZERO
    if run + K[N] - L[N] != 0:
        return ZERO
    for i in range(1, N):
        if not 0 <= rho[i + 1] <= L[i + 1] + min(L[i], rho[i]):
            return ZERO
    spans = []
    for i in range(1, N):
        a = max(L[i + 1], rho[i + 1])
        b = L[i + 1] + min(L[i], rho[i])
        if a > b:
            return ZERO
        spans.append(range(a, b + 1))
    total = ZERO
    mn_fact = qfact(m) * qfact(n)
    for mid in itertools.product(*spans):
        tau = [0] * (N + 2)
        tau[1] = L[1]
        for idx, v in enumerate(mid):
            tau[idx + 2] = v
        beta = [0] * (N + 1)
        for i in range(1, N + 1):
            beta[i] = L[i + 1] + tau[i] - tau[i + 1]
        s = comb(m, 2) + comb(n, 2)
        for i in range(2, N + 1):
            s += (2 * tau[i] - L[i] - rho[i]) * (beta[i] + G[i])
        for i in range(1, N + 1):
            s -= comb(beta[i], 2) + comb(beta[i] + G[i], 2)
        num = mn_fact
        den = ONE
        for i in range(2, N + 1):
            num = num * qbinom(beta[i], tau[i] - L[i]) * qbinom(beta[i], tau[i] - rho[i])
        for i in range(1, N + 1):
            den = den * qfact(beta[i]) * qfact(beta[i] + G[i])
        total = total + num.divexact(den).shift(s)
    return total


def stable_pairing(kappa, lam, mu, nu, N_max: int = 16):
    """pairing_formula at the first N where the value stabilizes (equal at N
    and N+1) with all supports in [2, N-1]; returns (value, N_used)."""
    gamma = mu + nu
    m = lam.total + mu.total
    n = lam.total + nu.total
    his = [c.support_bounds()[1] for c in (kappa, lam, gamma) if not c.is_zero()]
    los = [c.support_bounds()[0] for c in (kappa, lam, gamma) if not c.is_zero()]
    if los and min(los) < 2:
        raise ValueError("supports must start at 2 or later for stability")
    N0 = max(his, default=2) + 1
    for N in range(N0, N_max):
        a = pairing_formula(kappa, lam, gamma, N, m, n)
        b = pairing_formula(kappa, lam, gamma, N + 1, m, n)
        if a == b:
            return a, N
    raise ArithmeticError("pairing did not stabilize below N_max")
