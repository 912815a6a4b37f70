import math
import random

import pytest

from iwalambda.errors import FieldError
from iwalambda.groups import (
    FiniteAbelianGroup,
    all_subgroups,
    quotient,
    subgroup_generated,
    trivial_subgroup,
    unit_group,
)
from oracles import group_order_census, unit_order_census


class TestUnitGroup:
    def test_examples(self):
        assert unit_group(3).group.invariant_factors == (2,)
        assert unit_group(15).group.invariant_factors == (2, 4)
        assert unit_group(9).group.invariant_factors == (6,)

    def test_structure_matches_order_census(self):
        # the abstract group and (Z/m)* must have identical element-order counts
        for m in (3, 8, 9, 15, 16, 21, 24, 33, 35, 45, 99, 120, 200, 255):
            U = unit_group(m)
            assert group_order_census(U.group) == unit_order_census(m), m

    def test_bijections_exhaustive(self):
        for m in (3, 9, 15, 16, 40, 99, 256, 1000):
            U = unit_group(m)
            for el in U.group.elements():
                assert U.dlog(U.residue_of(el)) == el
            units = [a for a in range(1, m) if math.gcd(a, m) == 1]
            assert len(units) == U.group.order
            for a in units:
                assert U.residue_of(U.dlog(a)) == a

    def test_conductor_cap(self):
        with pytest.raises(FieldError, match="conductor too large"):
            unit_group(10**5 + 1)

    def test_non_unit_dlog(self):
        with pytest.raises(ValueError, match="not a unit"):
            unit_group(15).dlog(5)


class TestSubgroups:
    def test_generated_examples(self):
        G = FiniteAbelianGroup((2, 4))
        assert trivial_subgroup(G).order == 1
        assert subgroup_generated(G, [(1, 0)]).order == 2
        assert subgroup_generated(G, [(0, 1)]).order == 4

    def test_out_of_range_coordinates_reduce(self):
        G = FiniteAbelianGroup((2, 4))
        assert G.element((3, 7)).coords == (1, 3)

    def test_idempotent(self):
        G = FiniteAbelianGroup((2, 4, 4))
        rng = random.Random(5)
        for _ in range(20):
            gens = [G.element([rng.randrange(d) for d in G.invariant_factors]) for _ in range(2)]
            H = subgroup_generated(G, gens)
            H2 = subgroup_generated(G, list(H.elements))
            assert H == H2

    def test_structure_bijects(self):
        G = FiniteAbelianGroup((2, 4))
        for H in all_subgroups(G):
            T, to_parent, from_parent = H.as_group()
            assert T.order == H.order
            images = {to_parent(t).coords for t in T.elements()}
            assert images == {e.coords for e in H.elements}
            for t in T.elements():
                assert from_parent[to_parent(t).coords] == t

    def test_all_subgroups_of_2_4(self):
        # Z/2 x Z/4 has 8 subgroups
        assert [s.order for s in all_subgroups(FiniteAbelianGroup((2, 4)))] == [1, 2, 2, 2, 4, 4, 4, 8]


class TestQuotient:
    def test_trivial_and_full(self):
        G = FiniteAbelianGroup((2, 4))
        assert quotient(G, trivial_subgroup(G)).group.invariant_factors == (2, 4)
        full = subgroup_generated(G, [(1, 0), (0, 1)])
        assert quotient(G, full).group.invariant_factors == ()

    def test_unit_group_quotient_example(self):
        U = unit_group(15)
        H = subgroup_generated(U.group, [U.dlog(4)])
        assert H.order == 2
        Q = quotient(U.group, H)
        assert Q.group.order == 4

    def test_order_multiplicativity_and_kernel(self):
        rng = random.Random(6)
        for factors in ((2, 4), (3, 9), (2, 2, 4), (12,)):
            G = FiniteAbelianGroup(factors)
            for _ in range(6):
                gens = [
                    G.element([rng.randrange(d) for d in G.invariant_factors])
                    for _ in range(rng.randint(0, 2))
                ]
                H = subgroup_generated(G, gens)
                Q = quotient(G, H)
                assert H.order * Q.group.order == G.order
                kernel = {g.coords for g in G.elements() if Q.project(g).is_identity}
                assert kernel == {h.coords for h in H.elements}
                for q in Q.group.elements():
                    assert Q.project(Q.section(q)) == q

    def test_projection_is_homomorphism(self):
        G = FiniteAbelianGroup((2, 4))
        H = subgroup_generated(G, [(1, 2)])
        Q = quotient(G, H)
        for a in G.elements():
            for b in G.elements():
                assert Q.project(a + b) == Q.project(a) + Q.project(b)


def test_invariant_factor_validation():
    with pytest.raises(ValueError):
        FiniteAbelianGroup((4, 2))
    with pytest.raises(ValueError):
        FiniteAbelianGroup((1, 2))
    assert FiniteAbelianGroup(()).order == 1
    assert FiniteAbelianGroup(()).exponent == 1


def test_element_order():
    G = FiniteAbelianGroup((2, 4))
    assert G.element((1, 2)).order() == 2
    assert G.element((1, 1)).order() == 4
    assert G.identity().order() == 1


def test_quotient_by_handbuilt_subgroup():
    # quotient must key off the element list, not stored generator data
    from iwalambda.groups import Subgroup

    G = FiniteAbelianGroup((2, 4))
    ref = subgroup_generated(G, [(0, 1)])
    frankenstein = Subgroup(G, [], ref.elements)  # no generators recorded
    Q = quotient(G, frankenstein)
    assert Q.group.order == 2
    kernel = {g.coords for g in G.elements() if Q.project(g).is_identity}
    assert kernel == {e.coords for e in ref.elements}
