import random

import pytest

from schurlab import automorphisms as A
from schurlab import cyclic as Z
from schurlab import oracles as O
from schurlab.algebra import GroupContext, GroupElement, simple, convolve
from schurlab.errors import AxiomViolation, SchurLabError, WedgeCompatibilityError


def full_affine(p):
    return A.closure([A.rho(p), A.sigma(A.primitive_root(p), p), A.inversion(p)])


def coefficient(ctx, C, D, g):
    """Brute count of ordered pairs (c, d) with c d = g."""
    return sum(1 for c in C for d in D if ctx.mul(GroupElement(*c), GroupElement(*d)) == g)


def coset(n, ts):
    return {GroupElement(t, k) for t in ts for k in range(n)}


class TestAutomorphic:
    def test_discrete_singletons(self):
        o = O.discrete(4)
        assert all(o.class_of(g) == {g} for g in o.ctx.window(3))

    def test_symmetric_over_z(self):
        o = O.symmetric(1)
        assert o.class_of((3, 0)) == {(3, 0), (-3, 0)}

    def test_full_affine_class_of_z(self):
        o = O.make_automorphic(full_affine(5))
        assert o.class_of((1, 0)) == coset(5, [1, -1])

    def test_free_power_is_fixed_by_rho(self):
        # rho fixes z^p, so Z^(p) is an S-subgroup of the full affine ring
        o = O.make_automorphic(full_affine(3))
        assert O.detect_max_free_subgroup(o, 20) == 3
        assert o.class_of((3, 0)) == {(3, 0), (-3, 0)}


class TestWedge:
    def test_lift_of_discrete_z2(self):
        o = O.make_wedge(O.discrete(2), 3, "discrete")
        assert o.class_of((1, 0)) == coset(2, [1])
        assert o.class_of((3, 1)) == {(3, 1)}

    def test_sigma_inner_with_discrete_outer(self):
        inner = O.make_automorphic(A.closure([A.sigma(2, 5)]))
        o = O.make_wedge(inner, 2, "discrete")
        assert o.class_of((1, 0)) == coset(5, [1])
        assert o.class_of((2, 1)) == {(2, 1), (2, 2), (2, 4), (2, 3)}

    def test_sigma_inner_with_symmetric_outer_is_rejected(self):
        inner = O.make_automorphic(A.closure([A.sigma(2, 5)]))
        with pytest.raises(WedgeCompatibilityError) as info:
            O.make_wedge(inner, 2, "symmetric")
        assert info.value.witness["class"] == [[2, 0]]

    def test_unguarded_mismatched_glue_is_not_schur(self):
        inner = O.make_automorphic(A.closure([A.sigma(2, 5)]))
        with pytest.raises(AxiomViolation):
            O.verify_on_window(O.WedgeOracle(inner, 2, "symmetric"), 3)

    @pytest.mark.parametrize("s, n", [(1, 3), (0, 3), (2, 1)])
    def test_degenerate(self, s, n):
        with pytest.raises(SchurLabError):
            O.make_wedge(O.discrete(n), s, "discrete")

    def test_detect_free_index(self):
        o = O.make_wedge(O.discrete(5), 3, "discrete")
        assert O.detect_max_free_subgroup(o, 10) == 3
        assert O.detect_max_free_subgroup(O.discrete(5), 10) == 1


def test_verify_discrete_constants_are_zero_one():
    sc = O.verify_on_window(O.discrete(3), 2)
    assert set(sc.table.values()) == {1}


def test_full_affine_coefficient_matches_expansion():
    o = O.make_automorphic(full_affine(5))
    sc = O.verify_on_window(o, 4)
    C = o.class_of((1, 0))
    E = o.class_of((2, 0))
    key = (O.class_key(C), O.class_key(C), O.class_key(E))
    assert sc[key] == coefficient(o.ctx, C, C, GroupElement(2, 0)) == 5


def test_every_window_constant_matches_brute_count():
    o = O.make_wedge(O.make_automorphic(A.closure([A.psi(3)])), 2, "symmetric")
    sc = O.verify_on_window(o, 3)
    classes = {k: set(v) for k, v in sc.classes.items()}
    for (c, d, e), lam in sc.table.items():
        for g in classes[e]:
            assert coefficient(o.ctx, classes[c], classes[d], g) == lam


@pytest.mark.parametrize(
    "C, D, expected",
    [
        ([(1, 0)], [(-1, 0)], [({(0, 0)}, 1)]),
    ],
)
def test_decompose_discrete(C, D, expected):
    assert O.decompose_product(O.discrete(1), C, D) == expected


def test_decompose_symmetric():
    got = O.decompose_product(O.symmetric(1), [(1, 0), (-1, 0)], [(1, 0), (-1, 0)])
    assert got == [({(-2, 0), (2, 0)}, 1), ({(0, 0)}, 2)]


def test_decompose_coset_product_mass():
    o = O.make_lift(Z.trivial_partition(3), "discrete")
    got = O.decompose_product(o, coset(3, [1]), coset(3, [-1]))
    assert sum(lam * len(E) for E, lam in got) == 9
    assert got == [({(0, 0)}, 3), ({(0, 1), (0, 2)}, 3)]


def test_decompose_rejects_non_class():
    with pytest.raises(SchurLabError):
        O.decompose_product(O.symmetric(1), [(1, 0)], [(1, 0)])


def test_corrupted_oracle_witness():
    o = O.move_element(O.discrete(3), (2, 1), (2, 0))
    with pytest.raises(AxiomViolation) as info:
        O.verify_on_window(o, 3)
    w = info.value.witness
    assert w["axiom"] == "ii"
    assert w["class_of_inverse"] != w["C_star"]


def test_coefficient_witness_is_real():
    # {z, z^-1} glued with {a, a^2} is inverse closed but not a Schur ring
    o = O.OverrideOracle(O.discrete(3), [[(1, 0), (-1, 0)]])
    with pytest.raises(AxiomViolation) as info:
        O.verify_on_window(o, 2)
    w = info.value.witness
    assert w["axiom"] == "iii"
    got = [coefficient(o.ctx, w["C"], w["D"], GroupElement(*x)) for x in w["elements"]]
    assert got == w["coefficients"] and got[0] != got[1]


@pytest.mark.parametrize(
    "A_, B_, expected",
    [
        ([(0, 1), (0, 2)], [(0, 2), (0, 3)], {(0, 4)}),
        ([(0, 0), (0, 1)], [(0, 0), (0, 2)], set()),
    ],
)
def test_tycoons(A_, B_, expected):
    assert O.tycoons(GroupContext(5), A_, B_) == expected


def test_tycoon_characterization():
    rng = random.Random(7)
    ctx = GroupContext(4)
    pool = list(ctx.window(2))
    for _ in range(200):
        X = set(rng.sample(pool, 3))
        Y = set(rng.sample(pool, 3))
        brute = {x for x in ctx.window(4) if {ctx.mul(x, y) for y in Y} == X}
        assert O.tycoons(ctx, X, Y) == brute


def test_two_tycoons_inside_ring():
    # translates of a class by distinct tycoons force a nontrivial stabilizer
    o = O.make_automorphic(full_affine(3))
    C = o.class_of((1, 0))
    ty = O.tycoons(o.ctx, C, C)
    assert len(ty) >= 2
    assert ty == {(0, k) for k in range(3)}


def test_transform_identity():
    o = O.make_wedge(O.discrete(3), 2, "discrete")
    t = O.transform_oracle(A.identity(3), o)
    assert O.oracles_equal_on_window(o, t, 4)


def test_transform_automorphic_is_conjugate():
    H = A.closure([A.inversion(3)])
    t = O.transform_oracle(A.rho(3), O.make_automorphic(H))
    c = O.make_automorphic(A.conjugate_subgroup(A.rho(3), H))
    generic = O.TransformedOracle(A.rho(3), O.make_automorphic(H))
    assert O.oracles_equal_on_window(t, c, 4)
    assert O.oracles_equal_on_window(t, generic, 4)
    base = O.make_automorphic(H)
    for g in base.ctx.window(3):
        assert t.class_of(A.rho(3)(g)) == {A.rho(3)(h) for h in base.class_of(g)}


def test_transformed_wedge_still_verifies():
    o = O.make_wedge(O.make_automorphic(A.closure([A.sigma(2, 5)])), 2, "discrete")
    t = O.TransformedOracle(A.rho(5), o)
    O.verify_on_window(t, 3)


def test_window_equality():
    assert O.oracles_equal_on_window(O.discrete(2), O.discrete(2), 3)
    assert not O.oracles_equal_on_window(O.discrete(2), O.symmetric(2), 1)
    assert O.first_difference(O.discrete(1), O.symmetric(1), 2) == (-2, 0)


def test_conjugate_subgroups_differ():
    H = A.closure([A.sigma(2, 5)])
    C = A.conjugate_subgroup(A.rho(5), H)
    assert set(H.elements) != set(C.elements)
    assert not O.oracles_equal_on_window(O.make_automorphic(H), O.make_automorphic(C), 3)


def test_torsion_partition():
    o = O.make_automorphic(full_affine(7))
    assert O.torsion_partition(o) == Z.trivial_partition(7)
    o = O.make_lift(Z.automorphic_partition(7, [2]), "symmetric")
    assert O.torsion_partition(o) == Z.automorphic_partition(7, [2])


@pytest.mark.parametrize("p", [3, 5, 7])
def test_coset_intersections_constant(p):
    for H in A.all_subgroups(p):
        o = O.make_automorphic(H)
        for C in O.window_classes(o, 3):
            assert len(O.coset_intersection_sizes(C)) == 1


def test_frobenius_image_of_classes():
    o = O.make_wedge(O.make_automorphic(A.closure([A.sigma(4, 5)])), 5, "discrete")
    for C in O.window_classes(o, 3):
        for k in (1, 2, 3, 4):
            assert O.frobenius_image_is_class(o, C, k)


def test_size_lemma_holds_on_verified_ring():
    o = O.make_automorphic(A.closure([A.psi(5), A.sigma(4, 5)]))
    assert O.size_lemma_violations(o, O.verify_on_window(o, 4)) == []


@pytest.mark.parametrize(
    "spec",
    [
        {"n": 3, "family": "discrete"},
        {"n": 3, "family": "symmetric"},
        {"n": 5, "family": "automorphic", "generators": [{"eps": 1, "m": 2, "i": 0}]},
        {"n": 5, "family": "wedge", "s": 2, "outer": "discrete", "inner": {"family": "discrete"}},
        {"n": 3, "family": "finite-lift", "outer": "symmetric", "classes": [[0], [1, 2]]},
        {"n": 3, "family": "transformed", "tau": {"eps": 1, "m": 1, "i": 1}, "base": {"family": "symmetric"}},
    ],
)
def test_spec_round_trip(spec):
    o = O.oracle_from_spec(spec)
    again = O.oracle_from_spec(o.to_spec())
    assert O.oracles_equal_on_window(o, again, 4)
    O.verify_on_window(o, 3)


def test_override_spec_round_trip():
    o = O.move_element(O.discrete(3), (2, 1), (2, 0))
    again = O.oracle_from_spec(o.to_spec())
    assert O.oracles_equal_on_window(o, again, 3)


@pytest.mark.parametrize("spec", [{}, {"n": "x", "family": "discrete"}, {"n": 3, "family": "nope"}])
def test_bad_specs(spec):
    with pytest.raises(SchurLabError):
        O.oracle_from_spec(spec)


def test_multiplicity_matches_convolution():
    ctx = GroupContext(4)
    X, Y = {(1, 0), (1, 1)}, {(-1, 2), (0, 3)}
    prod = convolve(simple(ctx, X), simple(ctx, Y))
    for g, c in prod.terms.items():
        assert O.multiplicity(ctx, X, Y, [g]) == c
