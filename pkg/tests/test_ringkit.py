from fractions import Fraction

from hypothesis import given, settings, strategies as st

from ampletwist.ringkit import (
    PrimeField,
    Rationals,
    VectorSpaceQuotient,
    echelonize,
    make_field,
    rank,
    solve,
    units_and_embedding,
)
from ampletwist.twistkit import FiniteAbelianGroup


def test_make_field():
    assert make_field("Q") == Rationals()
    assert make_field(5) == PrimeField(5)


def test_parse_literals():
    F = PrimeField(5)
    assert F.parse("3 mod 5") == 3
    assert F.parse("1/2") == 3
    assert Rationals().parse("-2/4") == Fraction(-1, 2)


def test_z2_embeds_as_plus_minus_one():
    Z2 = FiniteAbelianGroup.cyclic(2)
    assert units_and_embedding(PrimeField(5), Z2) == (1, 4)
    assert units_and_embedding(Rationals(), Z2) == (Fraction(1), Fraction(-1))
    assert units_and_embedding(Rationals(), FiniteAbelianGroup.cyclic(3)) is None
    assert units_and_embedding(PrimeField(2), Z2) is None


def test_quotient_by_span():
    F = PrimeField(5)
    Q = VectorSpaceQuotient(F, 3, [(1, 1, 0)])
    assert Q.quotient_dim == 2
    assert Q.contains((2, 2, 0))
    assert Q.coset_rep((1, 0, 0)) == Q.coset_rep((0, 4, 0))


vectors = st.lists(st.lists(st.integers(0, 6), min_size=3, max_size=3), min_size=0, max_size=5)


@given(vectors)
@settings(max_examples=80, deadline=None)
def test_rref_properties(vs):
    F = PrimeField(7)
    E = echelonize(F, vs, 3)
    assert rank(F, E) == len(E) == rank(F, vs)
    Q = VectorSpaceQuotient(F, 3, vs)
    for v in vs:
        assert Q.contains(v)
    # coords/lift round trip
    for c in ([1, 0, 0][: Q.quotient_dim], [0] * Q.quotient_dim):
        assert tuple(Q.coords(Q.lift(c))) == tuple(c)


@given(st.lists(st.lists(st.integers(-3, 3), min_size=2, max_size=2), min_size=2, max_size=2),
       st.lists(st.integers(-3, 3), min_size=2, max_size=2))
@settings(max_examples=60, deadline=None)
def test_solve_over_q(cols, x):
    F = Rationals()
    cols = [[Fraction(a) for a in c] for c in cols]
    target = [sum(Fraction(x[j]) * cols[j][i] for j in range(2)) for i in range(2)]
    sol = solve(F, cols, target)
    assert sol is not None
    assert [sum(sol[j] * cols[j][i] for j in range(2)) for i in range(2)] == target
