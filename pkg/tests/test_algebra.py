from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schurlab.algebra import (
    GroupAlgebraElement,
    GroupContext,
    convolve,
    element,
    frobenius,
    frobenius_set,
    hadamard,
    naive_convolve,
    project_free,
    project_torsion,
    simple,
    stabilizer,
    star,
)
from schurlab.errors import ContextMismatch, SchurLabError


def terms(ctx, *pairs):
    return element(ctx, {g: c for g, c in pairs})


@st.composite
def algebra_elements(draw, n=None):
    n = n or draw(st.integers(1, 12))
    ctx = GroupContext(n)
    support = draw(
        st.dictionaries(
            st.tuples(st.integers(-3, 3), st.integers(0, n - 1)),
            st.one_of(st.integers(-5, 5), st.fractions(max_denominator=4).filter(lambda f: abs(f) < 5)),
            max_size=8,
        )
    )
    return element(ctx, support)


@st.composite
def element_pairs(draw):
    n = draw(st.integers(1, 12))
    return draw(algebra_elements(n)), draw(algebra_elements(n))


class TestProducts:
    def test_inverse_pair_gives_identity(self):
        ctx = GroupContext(4)
        x = simple(ctx, [(1, 1)]) * simple(ctx, [(-1, 3)])
        assert x.items() == [((0, 0), 1)]

    def test_square_of_nonidentity_torsion_in_z4(self):
        ctx = GroupContext(4)
        C = simple(ctx, [(0, 1), (0, 2), (0, 3)])
        assert convolve(C, C) == terms(ctx, ((0, 0), 3), ((0, 1), 2), ((0, 2), 2), ((0, 3), 2))

    def test_singleton_product(self):
        ctx = GroupContext(3)
        assert convolve(simple(ctx, [(1, 0)]), simple(ctx, [(0, 1)])).items() == [((1, 1), 1)]

    def test_context_mismatch(self):
        with pytest.raises(ContextMismatch):
            convolve(simple(GroupContext(2), [(0, 1)]), simple(GroupContext(3), [(0, 1)]))

    def test_exact_fractions_kept(self):
        ctx = GroupContext(2)
        x = terms(ctx, ((0, 1), Fraction(1, 3)))
        assert (x * x).coeff((0, 0)) == Fraction(1, 9)

    def test_float_coefficients_rejected(self):
        with pytest.raises(SchurLabError):
            GroupAlgebraElement(GroupContext(2), {(0, 0): 0.5})


class TestHadamard:
    def test_intersection_of_simple_quantities(self):
        ctx = GroupContext(3)
        got = hadamard(simple(ctx, [(0, 1), (1, 0)]), simple(ctx, [(1, 0), (2, 0)]))
        assert got == simple(ctx, [(1, 0)])

    @given(algebra_elements())
    def test_idempotent_on_zero_one_vectors(self, x):
        s = simple(x.ctx, x.support())
        assert hadamard(s, s) == s

    def test_pointwise(self):
        ctx = GroupContext(5)
        got = hadamard(terms(ctx, ((0, 1), 2), ((1, 0), 3)), terms(ctx, ((0, 1), 5)))
        assert got == terms(ctx, ((0, 1), 10))


class TestStar:
    def test_definition(self):
        ctx = GroupContext(6)
        assert star(simple(ctx, [(1, 1)])) == simple(ctx, [(-1, 5)])

    def test_symmetric_fixed(self):
        ctx = GroupContext(1)
        x = simple(ctx, [(1, 0), (-1, 0)])
        assert star(x) == x

    def test_inverse_set_mod5(self):
        ctx = GroupContext(5)
        assert star(simple(ctx, [(0, 1), (0, 2)])) == simple(ctx, [(0, 3), (0, 4)])

    @given(algebra_elements())
    def test_involution(self, x):
        assert star(star(x)) == x

    @given(element_pairs())
    def test_antihomomorphism(self, pair):
        x, y = pair
        # the group is abelian, so (xy)* = x* y*
        assert star(x * y) == star(x) * star(y)


class TestFrobenius:
    def test_definition_mod5(self):
        ctx = GroupContext(5)
        got = frobenius(terms(ctx, ((1, 1), 1), ((2, 0), 1)), 2)
        assert got == terms(ctx, ((2, 2), 1), ((4, 0), 1))

    @given(algebra_elements())
    def test_identity_multiplier(self, x):
        assert frobenius(x, 1) == x

    def test_collision_adds(self):
        ctx = GroupContext(2)
        assert frobenius(simple(ctx, [(0, 0), (0, 1)]), 2) == terms(ctx, ((0, 0), 2))

    @given(algebra_elements(), st.integers(-4, 4), st.integers(-4, 4))
    def test_composition(self, x, m, k):
        assert frobenius(x, m * k) == frobenius(frobenius(x, m), k)

    def test_frobenius_set(self):
        ctx = GroupContext(5)
        assert frobenius_set(ctx, [(1, 1), (1, 2)], 3) == {(3, 3), (3, 1)}


@pytest.mark.parametrize(
    "n, subset, expected",
    [
        (5, [(1, k) for k in range(5)], {(0, k) for k in range(5)}),
        (5, [(1, 1)], {(0, 0)}),
        (4, [(0, 0), (0, 2)], {(0, 0), (0, 2)}),
        (6, [(0, 1), (0, 4), (2, 1), (2, 4)], {(0, 0), (0, 3)}),
    ],
)
def test_stabilizer(n, subset, expected):
    assert stabilizer(GroupContext(n), subset) == expected


def test_stabilizer_rejects_empty():
    with pytest.raises(SchurLabError):
        stabilizer(GroupContext(3), [])


class TestProjections:
    def test_free_collapses_coset(self):
        ctx = GroupContext(3)
        got = project_free(simple(ctx, [(1, 1), (1, 2)]))
        assert got.items() == [((1, 0), 2)]
        assert got.ctx.n == 1

    def test_free_of_torsion_element(self):
        assert project_free(simple(GroupContext(4), [(0, 1)])).items() == [((0, 0), 1)]

    def test_free_scales_by_coset(self):
        ctx = GroupContext(3)
        x = simple(ctx, [(1, 0), (-1, 0)]) * simple(ctx, ctx.torsion())
        assert project_free(x).items() == [((-1, 0), 3), ((1, 0), 3)]

    @pytest.mark.parametrize(
        "pairs, expected",
        [
            ([(1, 1), (-1, 2)], [((0, 1), 1), ((0, 2), 1)]),
            ([(3, 0)], [((0, 0), 1)]),
            ([(1, 1), (2, 1)], [((0, 1), 2)]),
        ],
    )
    def test_torsion(self, pairs, expected):
        assert project_torsion(simple(GroupContext(3), pairs)).items() == expected

    @given(element_pairs())
    def test_projections_are_homomorphisms(self, pair):
        x, y = pair
        assert project_free(x * y) == project_free(x) * project_free(y)
        assert project_torsion(x * y) == project_torsion(x) * project_torsion(y)


@settings(max_examples=200)
@given(element_pairs())
def test_convolution_matches_naive(pair):
    x, y = pair
    assert convolve(x, y) == naive_convolve(x, y)


@given(algebra_elements())
def test_record_round_trip(x):
    assert GroupAlgebraElement.from_record(x.to_record()) == x
