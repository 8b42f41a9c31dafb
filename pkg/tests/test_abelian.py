"""Unit-group arithmetic and fixed-subgroup counts against element enumeration."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fcigroups.abelian import (
    AbelianPComponent,
    AbelianPVector,
    FiniteAbelianPGroup,
    UnitResidue,
    fixed_subgroup_order,
    omega1_order,
    teichmuller_lift,
    unit_order,
)


def brute_force_fixed_count(group: FiniteAbelianPGroup, t: int, k: int) -> int:
    """Literal enumeration of {a : (t^k - 1) a = 0 componentwise}."""
    s = pow(t, k, group.exponent) if group.exponents else 1
    count = 0
    for coords in itertools.product(*(range(m) for m in group.moduli)):
        if all((c * (s - 1)) % m == 0 for c, m in zip(coords, group.moduli)):
            count += 1
    return count


@pytest.mark.parametrize(
    "value,p,n,expected",
    [
        (1, 5, 1, 1),
        (2, 5, 1, 4),
        (7, 5, 2, 4),
    ],
)
def test_unit_order_examples(value, p, n, expected):
    assert unit_order(UnitResidue(n, value), p) == expected


def test_unit_order_rejects_bad_input():
    with pytest.raises(ValueError):
        unit_order(UnitResidue(2, 5), 5)  # not a unit
    with pytest.raises(ValueError):
        unit_order(UnitResidue(1, 3), 4)  # not a prime


@pytest.mark.parametrize(
    "t0,p,depth,expected",
    [
        (2, 5, 1, 2),
        (2, 5, 2, 7),  # 2^5 = 32 = 7 mod 25, fixed under the next Frobenius
        (1, 7, 3, 1),
    ],
)
def test_teichmuller_examples(t0, p, depth, expected):
    lift = teichmuller_lift(t0, p, depth)
    assert lift.value == expected
    assert lift.modulus_exponent == depth


def test_teichmuller_rejects_p2():
    with pytest.raises(ValueError):
        teichmuller_lift(1, 2, 3)


@pytest.mark.parametrize("t0,p,depth", [(2, 5, 4), (3, 7, 3), (5, 13, 2), (10, 11, 5)])
def test_teichmuller_is_frobenius_fixed_with_order_prime_to_p(t0, p, depth):
    lift = teichmuller_lift(t0, p, depth)
    mod = p**depth
    assert pow(lift.value, p, mod) == lift.value
    order = unit_order(lift, p)
    assert order % p != 0
    assert (p - 1) % order == 0
    assert unit_order(UnitResidue(1, t0 % p), p) == order


@pytest.mark.parametrize(
    "exponents,p,t,k,expected",
    [
        ((1,), 5, 2, 1, 1),
        ((3, 1), 2, 7, 1, 4),  # inversion mod 8 fixes the 2-torsion
        ((2,), 3, 4, 3, 9),  # 4^3 = 64 = 1 mod 9, everything fixed
    ],
)
def test_fixed_subgroup_order_examples(exponents, p, t, k, expected):
    group = FiniteAbelianPGroup(p, exponents)
    residue = UnitResidue(max(exponents), t)
    assert fixed_subgroup_order(group, residue, k) == expected
    assert brute_force_fixed_count(group, t, k) == expected


def test_fixed_subgroup_identity_power_returns_group_order():
    group = FiniteAbelianPGroup(3, (2, 1))
    assert fixed_subgroup_order(group, UnitResidue(2, 4), 0) == group.order


@pytest.mark.parametrize(
    "exponents,p,expected",
    [((2, 1), 2, 4), ((3,), 3, 3), ((3, 3, 1), 2, 8)],
)
def test_omega1_order(exponents, p, expected):
    assert omega1_order(FiniteAbelianPGroup(p, exponents)) == expected


@settings(max_examples=150, deadline=None)
@given(
    p=st.sampled_from([2, 3, 5, 7]),
    exponents=st.lists(st.integers(1, 4), min_size=1, max_size=3),
    t=st.integers(1, 500),
    k=st.integers(1, 12),
)
def test_fixed_subgroup_order_matches_enumeration(p, exponents, t, k):
    group = FiniteAbelianPGroup(p, tuple(exponents))
    if group.order > 10_000:
        return
    if t % p == 0:
        t += 1
    t %= group.exponent
    if t == 0:
        t = 1
    residue = UnitResidue(max(exponents), t)
    assert fixed_subgroup_order(group, residue, k) == brute_force_fixed_count(group, t, k)


def test_component_invariants():
    comp = AbelianPComponent(5, (), 1)
    assert not comp.is_finite
    assert comp.order is None and comp.exponent is None
    assert comp.rank == 1
    assert comp.truncate(2) == FiniteAbelianPGroup(5, (2,))

    finite = AbelianPComponent(2, (3, 1))
    assert finite.is_finite
    assert finite.order == 16 and finite.exponent == 8 and finite.rank == 2

    with pytest.raises(ValueError):
        AbelianPComponent(4, (1,))
    with pytest.raises(ValueError):
        AbelianPComponent(3, (1, 2))  # must be non-increasing
    with pytest.raises(ValueError):
        AbelianPComponent(3, (), 0)  # empty component
    with pytest.raises(ValueError):
        AbelianPComponent(3, (0,), 1)


def test_vector_reduction_and_validation():
    group = FiniteAbelianPGroup(3, (2, 1))
    vec = AbelianPVector.reduce(group, (10, 5))
    assert vec.coords == (1, 2)
    with pytest.raises(ValueError):
        AbelianPVector(group, (9, 0))
    with pytest.raises(ValueError):
        AbelianPVector(group, (1,))


def test_unit_residue_of_reduces():
    r = UnitResidue.of(12, 5, 2)
    assert r.value == 12
    assert UnitResidue.of(27, 5, 2).value == 2
    with pytest.raises(ValueError):
        UnitResidue.of(10, 5, 2)
