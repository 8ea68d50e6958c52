from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from wblocks.multipoly import MultiPoly


def x(i, m=2, n=2):
    return MultiPoly.x(m, n, i)


def y(j, m=2, n=2):
    return MultiPoly.y(m, n, j)


exps = st.tuples(*(st.integers(min_value=0, max_value=3) for _ in range(4)))
polys = st.dictionaries(exps, st.integers(min_value=-9, max_value=9), max_size=5).map(
    lambda d: MultiPoly(2, 2, d)
)


class TestCalculus:
    def test_partial_x_of_product(self):
        f = x(1) * y(1)
        assert f.partial_x(1) == y(1)

    def test_partial_wrong_variable(self):
        assert (x(1) * x(1)).partial_y(1).is_zero()

    def test_subst_kills_difference(self):
        f = x(1) - y(1)
        assert f.subst(0, y(1)).is_zero()

    def test_partial_leibniz(self):
        f = x(1) * x(1) * y(2) + 3 * x(2)
        g = x(1) * y(2)
        lhs = (f * g).partial_x(1)
        rhs = f.partial_x(1) * g + f * g.partial_x(1)
        assert lhs == rhs

    def test_rational_coefficients(self):
        f = MultiPoly(1, 1, {(2, 0): Fraction(1, 3)})
        assert f.partial_x(1) == MultiPoly(1, 1, {(1, 0): Fraction(2, 3)})


class TestRingAxioms:
    @given(polys, polys, polys)
    @settings(max_examples=40)
    def test_associative(self, a, b, c):
        assert (a * b) * c == a * (b * c)

    @given(polys, polys, polys)
    @settings(max_examples=40)
    def test_distributive(self, a, b, c):
        assert a * (b + c) == a * b + a * c

    @given(polys, polys)
    def test_commutative(self, a, b):
        assert a * b == b * a


def test_json_round_trip():
    f = x(1) * y(2) - MultiPoly.constant(2, 2, Fraction(1, 2))
    assert MultiPoly.from_json(f.to_json()) == f
