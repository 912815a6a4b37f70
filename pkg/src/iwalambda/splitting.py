"""Decomposition data of rational primes in K and in the cyclotomic tower.

For p with m = p^a * m' (p not dividing m'), inertia in Delta is the image
of the units congruent to 1 mod m', and the Frobenius class is the CRT
element congruent to p mod m' and to 1 mod p^a.  The splitting exponent
n_p (the place above p stops splitting at layer n_p of the Z_ell-tower)
has the closed form v_ell(p^(ell-1) - 1) - 1; an independent place-count
oracle keeps that formula honest.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .characters import VirtualChar, induce_trivial
from .errors import PrimeSetError, ScaleError
from .exact import crt, is_prime, mult_order, valuation
from .fields import FieldSpec
from .groups import GroupElement, Subgroup, subgroup_generated
from .groups import _unit_gens_prime_power


@dataclass(frozen=True)
class PrimeLocalData:
    """Delta_p, I_p and the tower splitting data of one rational prime.

    frobenius is the CRT class generating Delta_p over I_p; weight is
    ell^{n_p}, except that the wild prime is totally non-split in the
    tower and carries n_p = 0, weight 1.
    """

    p: int
    decomposition: Subgroup
    inertia: Subgroup
    frobenius: GroupElement
    n_p: int
    weight: int


def splitting_exponent(ell: int, p: int) -> int:
    """n_p = v_ell(p^(ell-1) - 1) - 1 for a tame prime p.

    Valid whenever ell does not divide [K:Q], which every FieldSpec here
    guarantees; splitting_exponent_oracle checks the formula by counting
    places layer by layer.
    """
    if ell == 2 or not is_prime(ell):
        raise PrimeSetError("ell must be an odd prime")
    if not is_prime(p):
        raise PrimeSetError(f"{p} is not prime")
    if p == ell:
        raise PrimeSetError("wild prime has no tame splitting exponent")
    return valuation(pow(p, ell - 1) - 1, ell) - 1


def splitting_exponent_oracle(ell: int, p: int, n_max: int = 8) -> int:
    """Count places over p in each tower layer until the count freezes.

    Layer n has ell^n / ord places, where ord is the order of p in the
    ell-part of (Z/ell^(n+1))*; the stabilized count is ell^{n_p}.
    """
    if n_max > 8:
        raise ScaleError("oracle scale exceeded")
    if ell == 2 or not is_prime(ell) or not is_prime(p):
        raise PrimeSetError("arguments must be primes, ell odd")
    if p == ell:
        raise PrimeSetError("wild prime has no tame splitting exponent")

    def places(n: int) -> int:
        order = mult_order(p, ell ** (n + 1))
        return ell**n // ell ** valuation(order, ell) if order % ell == 0 else ell**n

    prev = places(0)
    for n in range(1, n_max + 1):
        cur = places(n)
        if cur == prev:
            return valuation(cur, ell) if cur > 1 else 0
        prev = cur
    raise ScaleError("increase n_max")


@lru_cache(maxsize=None)
def decomposition_data(field: FieldSpec, p: int) -> PrimeLocalData:
    """Delta_p and I_p inside Delta, from residues mod the conductor."""
    if not is_prime(p):
        raise PrimeSetError(f"{p} is not prime")
    m = field.conductor
    a = 0
    m_prime = m
    while m_prime % p == 0:
        m_prime //= p
        a += 1
    q = p**a

    inertia_gens = []
    if a > 0:
        for g, _ in _unit_gens_prime_power(p, a):
            residue = crt([1, g], [m_prime, q]) if m_prime > 1 else g % m
            inertia_gens.append(field.delta_element(residue))
    inertia = subgroup_generated(field.delta, inertia_gens)

    if m_prime > 1:
        frob_residue = crt([p % m_prime, 1], [m_prime, q]) if a > 0 else p % m
        frob = field.delta_element(frob_residue)
    else:
        frob = field.delta.identity()
    decomposition = subgroup_generated(field.delta, [g for g in inertia_gens] + [frob])

    n_p = 0 if p == field.ell else splitting_exponent(field.ell, p)
    weight = 1 if p == field.ell else field.ell**n_p
    return PrimeLocalData(p, decomposition, inertia, frob, n_p, weight)


def validate_prime_set(S) -> tuple[int, ...]:
    S = tuple(S)
    if len(set(S)) != len(S):
        raise PrimeSetError("S must be a set")
    for p in S:
        if not is_prime(p):
            raise PrimeSetError(f"{p} is not prime")
    return tuple(sorted(S))


def chi_p(field: FieldSpec, p: int) -> VirtualChar:
    """Induction of the trivial character of Delta_p, weighted by the
    splitting index ell^{n_p} (weight 1 for the wild prime)."""
    data = decomposition_data(field, p)
    weight = 1 if p == field.ell else field.ell**data.n_p
    return weight * induce_trivial(field.delta, data.decomposition)


def chi_S(field: FieldSpec, S) -> VirtualChar:
    """Sum of the weighted inductions over the places of S; empty S gives 0."""
    S = validate_prime_set(S)
    total = VirtualChar.zero(field.delta)
    for p in S:
        total = total + chi_p(field, p)
    return total
