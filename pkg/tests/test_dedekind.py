"""Dedekind specs, their truncations, and the normality oracle."""

import pytest

from fcigroups.abelian import AbelianPComponent
from fcigroups.bruteforce import (
    CayleyGroup,
    Q8_LABELS,
    abelian_group,
    center,
    dih,
    q8_group,
)
from fcigroups.dedekind import (
    DedekindSpec,
    DedekindTruncation,
    TailRule,
    TruncationParams,
    center_elements,
    is_dedekind_bruteforce,
    truncate,
    validate_spec,
)
from fcigroups.errors import OrderCapError, SpecError


def test_q8_table_relations():
    g = q8_group()
    lab = {name: i for i, name in enumerate(Q8_LABELS)}
    i, j, k, minus = lab["i"], lab["j"], lab["k"], lab["-1"]
    assert g.mul(i, i) == minus
    assert g.mul(j, j) == minus
    assert g.mul(i, j) == k
    assert g.mul(j, i) == lab["-k"]
    assert g.mul(j, k) == i
    assert g.mul(k, i) == j
    assert g.element_order(i) == 4
    assert g.element_order(minus) == 2


@pytest.mark.parametrize(
    "group_builder,expected",
    [
        (q8_group, True),
        (lambda: dih(abelian_group((4,))), False),
        (lambda: CayleyGroup.cyclic(12), True),
    ],
)
def test_is_dedekind_bruteforce(group_builder, expected):
    assert is_dedekind_bruteforce(group_builder()) is expected


def test_validate_spec_examples():
    ok = DedekindSpec(False, (AbelianPComponent(5, (1,)),))
    assert validate_spec(ok) == []

    bad = DedekindSpec(True, (AbelianPComponent(2, (2,)),))
    assert "2-component not elementary abelian" in validate_spec(bad)
    # the oracle agrees: Q8 x C4 has a non-normal cyclic subgroup
    product = CayleyGroup.direct_product(q8_group(), CayleyGroup.cyclic(4))
    assert not is_dedekind_bruteforce(product)

    good_q8 = DedekindSpec(True, (AbelianPComponent(3, (1,)),))
    assert validate_spec(good_q8) == []
    assert is_dedekind_bruteforce(CayleyGroup.direct_product(q8_group(), CayleyGroup.cyclic(3)))


def test_validate_spec_tail_collision():
    spec = DedekindSpec(
        False, (AbelianPComponent(5, (1,)),), TailRule(m=4, min_prime=5)
    )
    assert any("collides" in v for v in validate_spec(spec))


def test_tail_rule_primes():
    assert TailRule(m=4, min_prime=5).primes(3) == (5, 13, 17)
    assert TailRule(m=2, min_prime=3).primes(4) == (3, 5, 7, 11)
    with pytest.raises(ValueError):
        TailRule(m=1)


@pytest.mark.parametrize(
    "spec,params,expected_order",
    [
        (DedekindSpec(False, (AbelianPComponent(5, (), 1),)), TruncationParams(2, 0), 25),
        (DedekindSpec(True, (AbelianPComponent(3, (1,)),)), TruncationParams(1, 0), 24),
        (DedekindSpec(False, (), TailRule(4, 5)), TruncationParams(1, 2), 65),
    ],
)
def test_truncate_orders(spec, params, expected_order):
    inst = truncate(spec, params)
    assert inst.order == expected_order


def test_truncate_rejects_invalid_spec_and_cap():
    bad = DedekindSpec(True, (AbelianPComponent(2, (2,)),))
    with pytest.raises(SpecError):
        truncate(bad, TruncationParams())
    big = DedekindSpec(False, (AbelianPComponent(5, (), 1),))
    with pytest.raises(OrderCapError):
        truncate(big, TruncationParams(4, 0), cap=100)


def test_truncation_arithmetic_and_axioms():
    spec = DedekindSpec(True, (AbelianPComponent(3, (1,)),))
    inst = truncate(spec, TruncationParams())
    g = inst.to_cayley()  # construction validates the axioms exhaustively
    assert g.order == 24
    x = inst.element(q8="i", parts={3: (2,)})
    y = inst.element(q8="j", parts={3: (1,)})
    prod = inst.mul(x, y)
    assert prod == inst.element(q8="k", parts={3: (0,)})
    assert inst.mul(x, inst.inverse(x)) == inst.identity
    # element order is the lcm of the component orders
    assert inst.element_order(x) == 12
    assert inst.element_order(inst.identity) == 1
    assert g.element_order(inst.index_of(x)) == 12


def test_truncation_element_orders_match_cayley():
    spec = DedekindSpec(False, (AbelianPComponent(2, (2,), 1), AbelianPComponent(3, (1,)),))
    inst = truncate(spec, TruncationParams(2, 0))
    g = inst.to_cayley()
    for idx in range(inst.order):
        assert g.element_order(idx) == inst.element_order(inst.element_at(idx))


def test_truncation_monotone_embedding():
    spec = DedekindSpec(False, (AbelianPComponent(3, (), 1),), TailRule(4, 5))
    shallow = truncate(spec, TruncationParams(1, 1))
    deep = truncate(spec, TruncationParams(2, 2))
    images = {}
    for x in shallow.elements():
        images[x] = shallow.embed(x, deep)
    # injective homomorphism preserving orders
    assert len(set(images.values())) == shallow.order
    for x in shallow.elements():
        for y in shallow.elements():
            assert deep.mul(images[x], images[y]) == images[shallow.mul(x, y)]
        assert deep.element_order(images[x]) == shallow.element_order(x)
    with pytest.raises(ValueError):
        deep.embed(deep.identity, shallow)


def test_q8_spec_truncations_are_dedekind():
    spec = DedekindSpec(True, (AbelianPComponent(3, (1,)), AbelianPComponent(2, (1, 1))))
    assert validate_spec(spec) == []
    inst = truncate(spec, TruncationParams())
    assert inst.order == 96
    assert is_dedekind_bruteforce(inst.to_cayley())


@pytest.mark.parametrize(
    "spec,params,expected_center",
    [
        (DedekindSpec(True, (AbelianPComponent(3, (1,)),)), TruncationParams(), 6),
        (DedekindSpec(False, (AbelianPComponent(5, (2,)),)), TruncationParams(), 25),
        (DedekindSpec(True, ()), TruncationParams(), 2),
    ],
)
def test_center_elements_formula(spec, params, expected_center):
    inst = truncate(spec, params)
    elems = center_elements(inst)
    assert len(elems) == expected_center
    # cross-check against the generic centralizer intersection
    g = inst.to_cayley()
    generic = center(g).elements
    assert sorted(inst.index_of(x) for x in elems) == list(generic)


def test_center_matches_bruteforce_on_mixed_instance():
    spec = DedekindSpec(True, (AbelianPComponent(3, (1,)), AbelianPComponent(5, (1,))))
    inst = truncate(spec, TruncationParams())
    g = inst.to_cayley()
    assert sorted(inst.index_of(x) for x in center_elements(inst)) == list(center(g).elements)


def test_realize_symbolic_elements():
    from fcigroups.dedekind import ComponentElementSpec, DedekindElementSpec

    spec = DedekindSpec(False, (AbelianPComponent(2, (), 1),))
    inst2 = truncate(spec, TruncationParams(2, 0))
    involution = DedekindElementSpec("1", (ComponentElementSpec(2, (), ((1, 1),)),))
    x = inst2.realize(involution)
    assert inst2.element_order(x) == 2
    inst3 = truncate(spec, TruncationParams(3, 0))
    y = inst3.realize(involution)
    assert inst3.element_order(y) == 2
    assert inst2.embed(x, inst3) == y
    too_deep = DedekindElementSpec("1", (ComponentElementSpec(2, (), ((1, 5),)),))
    with pytest.raises(SpecError):
        inst2.realize(too_deep)
