import random

import pytest

from iwalambda.characters import (
    IMAGINARY,
    REAL,
    AbsChar,
    LadicChar,
    VirtualChar,
    all_abs_chars,
    all_ladic_chars,
    contragredient,
    induce_trivial,
    inner_product,
    mirror,
    mirror_abs,
    parity_split,
    restrict,
    teichmuller,
    trivial_char,
)
from iwalambda.errors import FieldError
from iwalambda.fields import field_spec
from iwalambda.groups import FiniteAbelianGroup, all_subgroups, full_subgroup, trivial_subgroup


def stable_random_char(field, rng, lo=-3, hi=3):
    mults = {}
    for phi in all_ladic_chars(field.delta, field.ell, field.tau_bar):
        k = rng.randint(lo, hi)
        for chi in phi.orbit:
            mults[chi] = k
    return VirtualChar(field.delta, mults)


class TestOrbits:
    def test_trivial_group(self):
        F = FiniteAbelianGroup(())
        chars = all_ladic_chars(F, 3, F.identity())
        assert len(chars) == 1 and chars[0].degree == 1 and chars[0].parity == REAL

    def test_degrees_2_4_example(self):
        F = field_spec(3, 15)
        chars = all_ladic_chars(F.delta, 3, F.tau_bar)
        assert sorted(c.degree for c in chars) == [1, 1, 1, 1, 2, 2]

    def test_quadratic_group_any_ell(self):
        F = field_spec(3, 3)  # delta = Z/2
        chars = all_ladic_chars(F.delta, 5, F.tau_bar)
        assert [c.degree for c in chars] == [1, 1]

    def test_partition(self):
        for ell, m, gens in ((3, 15, ()), (3, 33, ()), (5, 5, ()), (3, 15, (4,))):
            F = field_spec(ell, m, gens)
            chars = all_ladic_chars(F.delta, ell, F.tau_bar)
            assert sum(c.degree for c in chars) == F.delta.order

    def test_ell_divides_order_rejected(self):
        F = field_spec(3, 9)
        with pytest.raises(FieldError, match="ell divides group order"):
            all_ladic_chars(F.delta, 3, F.tau_bar)

    def test_non_involution_rejected(self):
        F = field_spec(3, 15)
        order4 = next(g for g in F.delta.elements() if g.order() == 4)
        with pytest.raises(FieldError):
            all_ladic_chars(F.delta, 3, order4)


class TestInnerProduct:
    def test_degree_identity(self):
        F = field_spec(3, 15)
        for phi in all_ladic_chars(F.delta, 3, F.tau_bar):
            v = VirtualChar.from_ladic(phi)
            assert inner_product(v, v) == phi.degree

    def test_one(self):
        F = field_spec(3, 3)
        one = VirtualChar.one(F.delta)
        assert inner_product(one, one) == 1

    def test_regular_against_each_orbit(self):
        F = field_spec(3, 15)
        reg = VirtualChar(F.delta, {chi: 1 for chi in all_abs_chars(F.delta)})
        for phi in all_ladic_chars(F.delta, 3, F.tau_bar):
            assert inner_product(reg, VirtualChar.from_ladic(phi)) == phi.degree

    def test_group_mismatch(self):
        with pytest.raises(ValueError):
            inner_product(
                VirtualChar.one(FiniteAbelianGroup((2,))),
                VirtualChar.one(FiniteAbelianGroup((4,))),
            )


class TestInduction:
    def test_full_subgroup_gives_one(self):
        F = field_spec(3, 15)
        assert induce_trivial(F.delta, full_subgroup(F.delta)) == VirtualChar.one(F.delta)

    def test_trivial_subgroup_gives_regular(self):
        F = field_spec(3, 15)
        ind = induce_trivial(F.delta, trivial_subgroup(F.delta))
        assert ind.total_multiplicity() == F.delta.order
        assert all(ind.multiplicity(chi) == 1 for chi in all_abs_chars(F.delta))

    def test_kernel_scan_example(self):
        # subgroup generated by (1,0) in (2,4): characters with first coeff 0
        G = FiniteAbelianGroup((2, 4))
        from iwalambda.groups import subgroup_generated

        D = subgroup_generated(G, [(1, 0)])
        ind = induce_trivial(G, D)
        assert sorted(chi.coeffs for chi in ind.support()) == [(0, 0), (0, 1), (0, 2), (0, 3)]

    def test_class_function_values(self):
        # definitional check: the induced virtual character, evaluated as an
        # exact sum of roots of unity (reduced mod the cyclotomic polynomial),
        # takes the value [Delta : D] on D and 0 elsewhere
        from functools import lru_cache

        def polydiv_exact(num, den):  # den monic, ascending coefficients
            num = list(num)
            out = [0] * (len(num) - len(den) + 1)
            for k in range(len(out) - 1, -1, -1):
                c = num[k + len(den) - 1]
                out[k] = c
                if c:
                    for j, dj in enumerate(den):
                        num[k + j] -= c * dj
            assert all(x == 0 for x in num[: len(den) - 1])
            return out

        @lru_cache(maxsize=None)
        def cyclotomic(e):
            poly = [-1] + [0] * (e - 1) + [1]
            for d in range(1, e):
                if e % d == 0:
                    poly = polydiv_exact(poly, cyclotomic(d))
            return tuple(poly)

        def root_sum(values, e):  # sum of zeta_e^v, as a vector mod Phi_e
            vec = [0] * e
            for v in values:
                vec[v % e] += 1
            phi = cyclotomic(e)
            deg = len(phi) - 1
            for k in range(e - 1, deg - 1, -1):
                c = vec[k]
                if c:
                    for j in range(len(phi)):
                        vec[k - deg + j] -= c * phi[j]
            return vec[:deg]

        for F in (field_spec(3, 15), field_spec(3, 33)):
            e = F.delta.exponent
            for D in all_subgroups(F.delta):
                ind = induce_trivial(F.delta, D)
                index = F.delta.order // D.order
                for g in F.delta.elements():
                    vals = [chi.value_at(g) for chi in ind.support()]
                    want = [index if g in D else 0] + [0] * (len(cyclotomic(e)) - 2)
                    assert root_sum(vals, e) == want, (D.order, g.coords)

    def test_frobenius_reciprocity_vs_restriction(self):
        # <Ind_D 1, phi> computed three ways: inner product, kernel scan,
        # and multiplicity of the unit character in the restriction
        for ell, m, gens in ((3, 15, ()), (3, 33, ()), (3, 15, (4,))):
            F = field_spec(ell, m, gens)
            chars = all_ladic_chars(F.delta, ell, F.tau_bar)
            for D in all_subgroups(F.delta):
                ind = induce_trivial(F.delta, D)
                for phi in chars:
                    v = VirtualChar.from_ladic(phi)
                    lhs = inner_product(ind, v)
                    res = restrict(v, D)
                    assert lhs == res.multiplicity(trivial_char(res.group))
                    assert lhs == (phi.degree if phi.rep.is_trivial_on(D.elements) else 0)


class TestRestrict:
    def test_identity_cases(self):
        F = field_spec(3, 15)
        one = VirtualChar.one(F.delta)
        assert restrict(one, trivial_subgroup(F.delta)).total_multiplicity() == 1
        full = full_subgroup(F.delta)
        x = restrict(one, full)
        assert x.multiplicity(trivial_char(x.group)) == 1

    def test_regular_restricts_to_scaled_regular(self):
        F = field_spec(3, 15)
        reg = VirtualChar(F.delta, {chi: 1 for chi in all_abs_chars(F.delta)})
        for D in all_subgroups(F.delta):
            res = restrict(reg, D)
            index = F.delta.order // D.order
            assert all(res.multiplicity(c) == index for c in all_abs_chars(res.group))


class TestContragredient:
    def test_examples(self):
        G = FiniteAbelianGroup((2, 4))
        one = VirtualChar.one(G)
        assert contragredient(one) == one
        chi = AbsChar(G, (0, 1))
        assert contragredient(VirtualChar.from_abs(chi)) == VirtualChar.from_abs(AbsChar(G, (0, 3)))

    def test_involution(self):
        F = field_spec(3, 33)
        rng = random.Random(8)
        for _ in range(20):
            x = stable_random_char(F, rng)
            assert contragredient(contragredient(x)) == x


class TestTeichmuller:
    def test_conductor_3(self):
        F = field_spec(3, 3)
        om = teichmuller(F)
        assert om.rep.coeffs == (1,) and om.parity == IMAGINARY

    def test_kernel_mod_15(self):
        F = field_spec(3, 15)
        om = teichmuller(F)
        fixed = [a for a in range(1, 15) if a % 3 and a % 5 and om.rep.value_at(F.delta_element(a)) == 0]
        assert fixed == [1, 4, 7, 13]
        # omega has order ell - 1 = 2 (its coefficient vector does, in the dual)
        assert F.delta.element(om.rep.coeffs).order() == 2
        e = F.delta.exponent
        assert om.rep.value_at(F.tau_bar) == e // 2

    def test_imaginary_everywhere(self):
        for ell, m, gens in ((3, 15, ()), (3, 33, ()), (5, 5, ()), (5, 35, ()), (7, 7, ()), (3, 15, (4,))):
            F = field_spec(ell, m, gens)
            om = teichmuller(F)
            e = F.delta.exponent
            assert om.rep.value_at(F.tau_bar) == e // 2  # omega(tau) = -1
            assert om.degree == 1

    def test_requires_mu_ell(self):
        # H = <2> mod 15 contains 2 != 1 mod 3, so K loses the cube roots
        F = field_spec(3, 15, (2,))
        assert not F.contains_mu_ell
        with pytest.raises(FieldError, match="roots of unity"):
            teichmuller(F)


class TestMirror:
    def test_one_and_omega_swap(self):
        F = field_spec(3, 15)
        one = VirtualChar.one(F.delta)
        om = VirtualChar.from_ladic(teichmuller(F))
        assert mirror(one, F) == om
        assert mirror(om, F) == one

    def test_involution_random(self):
        rng = random.Random(9)
        for ell, m in ((3, 15), (3, 33), (5, 35)):
            F = field_spec(ell, m)
            for _ in range(15):
                x = stable_random_char(F, rng)
                assert x.is_frobenius_stable(ell)
                assert mirror(mirror(x, F), F) == x

    def test_parity_swap(self):
        for ell, m in ((3, 15), (3, 33), (5, 35)):
            F = field_spec(ell, m)
            omega = teichmuller(F).rep
            for phi in all_ladic_chars(F.delta, ell, F.tau_bar):
                starred = LadicChar.from_abs(mirror_abs(phi.rep, omega), ell, F.tau_bar)
                assert {phi.parity, starred.parity} == {REAL, IMAGINARY}


class TestParitySplit:
    def test_one_and_omega(self):
        F = field_spec(3, 3)
        one = VirtualChar.one(F.delta)
        om = VirtualChar.from_ladic(teichmuller(F))
        re, im = parity_split(one, F.tau_bar)
        assert re == one and im.is_zero
        re, im = parity_split(om, F.tau_bar)
        assert re.is_zero and im == om

    def test_regular_halves(self):
        F = field_spec(3, 15)
        reg = VirtualChar(F.delta, {chi: 1 for chi in all_abs_chars(F.delta)})
        re, im = parity_split(reg, F.tau_bar)
        assert re.total_multiplicity() == 4 and im.total_multiplicity() == 4
        assert re + im == reg
        assert inner_product(re, im) == 0

    def test_direct_sum_random(self):
        F = field_spec(3, 33)
        rng = random.Random(10)
        for _ in range(20):
            x = stable_random_char(F, rng)
            re, im = parity_split(x, F.tau_bar)
            assert re + im == x
            assert inner_product(re, im) == 0


def test_virtual_char_frobenius_stability_flag():
    F = field_spec(3, 15)
    deg2 = next(c for c in all_ladic_chars(F.delta, 3, F.tau_bar) if c.degree == 2)
    partial = VirtualChar.from_abs(deg2.orbit[0])  # half an orbit
    assert not partial.is_frobenius_stable(3)
    assert VirtualChar.from_ladic(deg2).is_frobenius_stable(3)
