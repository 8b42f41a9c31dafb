"""Per-prime unit labels: orders, prime sets, bounds, and symbolic centralizers."""

import pytest

from fcigroups.abelian import AbelianPComponent
from fcigroups.dedekind import DedekindSpec, TailRule, TruncationParams, truncate
from fcigroups.errors import SpecError
from fcigroups.power_aut import (
    Cardinal,
    INFINITE,
    M_value,
    PowerAutSpec,
    UnitLabel,
    apply,
    centralizer_bound,
    component_order,
    finiteness_check,
    phi_index_permutation,
    phi_order,
    pi0_pi1,
    symbolic_centralizer_order,
    tail_unit,
    truncated_phi_order,
    validate_phi,
)

Z5_INF = DedekindSpec(False, (AbelianPComponent(5, (), 1),))
PHI_Z5 = PowerAutSpec.of({5: UnitLabel.teichmuller(2)})

Z2_INF = DedekindSpec(False, (AbelianPComponent(2, (), 1),))
PHI_Z2_INV = PowerAutSpec.of({2: UnitLabel.inversion()})

Q8_Z3 = DedekindSpec(True, (AbelianPComponent(3, (), 1),))
PHI_Q8_Z3 = PowerAutSpec.of({3: UnitLabel.inversion()})

MIXED = DedekindSpec(False, (AbelianPComponent(3, (1,)), AbelianPComponent(7, (), 1)))
PHI_MIXED = PowerAutSpec.of({3: UnitLabel.identity(), 7: UnitLabel.teichmuller(2)})


def test_cardinal_arithmetic():
    assert Cardinal(3) * Cardinal(4) == 12
    assert Cardinal(3) * INFINITE == INFINITE
    assert 5 * Cardinal(2) == Cardinal(10)
    assert not INFINITE.is_finite
    assert Cardinal(7) <= INFINITE
    assert not INFINITE <= Cardinal(7)
    assert INFINITE.to_json() == "infinite"
    assert str(Cardinal(4)) == "4"


def test_component_order_examples():
    c5 = AbelianPComponent(5, (1,))
    assert component_order(UnitLabel.unit(2), 5, c5) == 4
    z2 = AbelianPComponent(2, (), 1)
    assert component_order(UnitLabel.inversion(), 2, z2) == 2
    c9 = AbelianPComponent(3, (2,))
    assert component_order(UnitLabel.identity(), 3, c9) == 1
    # inversion collapses on an exponent-2 finite component
    c2 = AbelianPComponent(2, (1,))
    assert component_order(UnitLabel.inversion(), 2, c2) == 1


def test_phi_order_examples():
    assert phi_order(PHI_Z5, Z5_INF) == 4
    odd = DedekindSpec(
        False, (AbelianPComponent(3, (1,)), AbelianPComponent(5, (1,)))
    )
    inv = PowerAutSpec.of({3: UnitLabel.inversion(), 5: UnitLabel.inversion()})
    assert phi_order(inv, odd) == 2
    ident = PowerAutSpec.of({3: UnitLabel.identity(), 5: UnitLabel.identity()})
    assert phi_order(ident, odd) == 1


def test_phi_order_tail_consistency():
    tail_spec = DedekindSpec(False, (), TailRule(4, 5))
    phi = PowerAutSpec((), tail_rule="least_order_m")
    assert phi_order(phi, tail_spec) == 4
    # an explicit component of order 3 cannot coexist with a tail of order 4
    bad = DedekindSpec(False, (AbelianPComponent(7, (1,)),), TailRule(4, 11))
    phi_bad = PowerAutSpec.of({7: UnitLabel.unit(2)}, tail_rule="least_order_m")
    assert component_order(UnitLabel.unit(2), 7, AbelianPComponent(7, (1,))) == 3
    with pytest.raises(SpecError):
        phi_order(phi_bad, bad)


def test_validate_phi_violations():
    missing = PowerAutSpec(())
    assert any("no unit label" in v for v in validate_phi(missing, Z5_INF))
    extra = PowerAutSpec.of({5: UnitLabel.teichmuller(2), 7: UnitLabel.unit(2)})
    assert any("without a matching component" in v for v in validate_phi(extra, Z5_INF))
    raw_unit = PowerAutSpec.of({5: UnitLabel.unit(2)})
    assert any("infinite-exponent" in v for v in validate_phi(raw_unit, Z5_INF))
    teich_on_finite = PowerAutSpec.of({3: UnitLabel.teichmuller(2), 7: UnitLabel.teichmuller(2)})
    assert any("finite" in v for v in validate_phi(teich_on_finite, MIXED))
    no_tail_rule = PowerAutSpec(())
    tail_spec = DedekindSpec(False, (), TailRule(4, 5))
    assert any("tail" in v for v in validate_phi(no_tail_rule, tail_spec))
    assert validate_phi(PHI_MIXED, MIXED) == []


@pytest.mark.parametrize(
    "phi,spec,m,pi0,pi1",
    [
        (PHI_Q8_Z3, Q8_Z3, 2, (2,), ()),
        (
            PowerAutSpec.of({7: UnitLabel.unit(2)}),
            DedekindSpec(False, (AbelianPComponent(7, (1,)),)),
            3,
            (),
            (),
        ),
        (
            PowerAutSpec.of({5: UnitLabel.unit(2), 7: UnitLabel.unit(6)}),
            DedekindSpec(False, (AbelianPComponent(5, (1,)), AbelianPComponent(7, (1,)))),
            4,
            (7,),
            (),
        ),
    ],
)
def test_pi0_pi1_examples(phi, spec, m, pi0, pi1):
    assert phi_order(phi, spec) == m
    assert pi0_pi1(phi, spec, m) == (pi0, pi1)


def test_pi1_membership():
    # 6 has order 5 mod 25, and 5 is not 1 mod 5, so 5 lands in pi1
    spec = DedekindSpec(False, (AbelianPComponent(5, (2,)),))
    phi = PowerAutSpec.of({5: UnitLabel.unit(6)})
    assert phi_order(phi, spec) == 5
    assert pi0_pi1(phi, spec, 5) == ((), (5,))
    assert centralizer_bound(phi, spec, 1) == 25


def test_finiteness_check_examples():
    assert finiteness_check(PHI_Z5, Z5_INF)
    assert finiteness_check(PHI_Q8_Z3, Q8_Z3)
    assert finiteness_check(PHI_MIXED, MIXED)
    # identity on an infinite part pushes its prime into pi0 with infinite order
    bad = DedekindSpec(
        False, (AbelianPComponent(2, (), 1), AbelianPComponent(3, (1,)))
    )
    phi = PowerAutSpec.of({2: UnitLabel.identity(), 3: UnitLabel.inversion()})
    assert not finiteness_check(phi, bad)


@pytest.mark.parametrize(
    "spec,expected",
    [
        (DedekindSpec(True, (AbelianPComponent(2, (1,)),)), 16),
        (Z2_INF, 2),
        (DedekindSpec(False, (AbelianPComponent(3, (1,)),)), 1),
    ],
)
def test_M_value(spec, expected):
    assert M_value(spec) == expected


def test_centralizer_bound_examples():
    assert centralizer_bound(PHI_Z5, Z5_INF, 1) == 1
    assert centralizer_bound(PHI_Q8_Z3, Q8_Z3, 1) == 64
    spec = DedekindSpec(False, (AbelianPComponent(5, (1,)), AbelianPComponent(7, (1,))))
    phi = PowerAutSpec.of({5: UnitLabel.unit(2), 7: UnitLabel.unit(6)})
    assert centralizer_bound(phi, spec, 1) == 7
    bad = DedekindSpec(False, (AbelianPComponent(2, (), 1), AbelianPComponent(3, (1,))))
    phi_bad = PowerAutSpec.of({2: UnitLabel.identity(), 3: UnitLabel.inversion()})
    assert centralizer_bound(phi_bad, bad, 1) == INFINITE
    with pytest.raises(ValueError):
        centralizer_bound(PHI_Z5, Z5_INF, 4)


def test_symbolic_centralizer_order_examples():
    assert symbolic_centralizer_order(PHI_Z5, Z5_INF, 2) == 1
    assert symbolic_centralizer_order(PHI_Z2_INV, Z2_INF, 1) == 2
    assert symbolic_centralizer_order(PHI_Q8_Z3, Q8_Z3, 1) == 8
    assert symbolic_centralizer_order(PHI_MIXED, MIXED, 1) == 3
    assert symbolic_centralizer_order(PHI_MIXED, MIXED, 2) == 3
    with pytest.raises(ValueError):
        symbolic_centralizer_order(PHI_Z5, Z5_INF, 0)


def test_symbolic_infinite_when_label_order_divides_k():
    spec = DedekindSpec(False, (AbelianPComponent(5, (), 1), AbelianPComponent(3, (1,))))
    phi = PowerAutSpec.of({5: UnitLabel.inversion(), 3: UnitLabel.unit(2)})
    # order lcm(2, 2) = 2? order of 2 mod 3 is 2; inversion is 2; m = 2
    assert phi_order(phi, spec) == 2
    # no wait: both have order 2, so k = 1 only; make a deeper case instead
    spec4 = DedekindSpec(False, (AbelianPComponent(5, (), 1), AbelianPComponent(13, (1,))))
    phi4 = PowerAutSpec.of({5: UnitLabel.inversion(), 13: UnitLabel.unit(5)})
    assert phi_order(phi4, spec4) == 4
    assert symbolic_centralizer_order(phi4, spec4, 2) == INFINITE  # inversion^2 = identity
    assert symbolic_centralizer_order(phi4, spec4, 1) == 1
    assert not finiteness_check(phi4, spec4)


def test_finiteness_equivalence_with_symbolic_orders():
    cases = [
        (PHI_Z5, Z5_INF),
        (PHI_Z2_INV, Z2_INF),
        (PHI_Q8_Z3, Q8_Z3),
        (PHI_MIXED, MIXED),
        (
            PowerAutSpec.of({2: UnitLabel.identity(), 3: UnitLabel.inversion()}),
            DedekindSpec(False, (AbelianPComponent(2, (), 1), AbelianPComponent(3, (1,)))),
        ),
    ]
    for phi, spec in cases:
        m = phi_order(phi, spec)
        all_finite = all(
            symbolic_centralizer_order(phi, spec, k).is_finite for k in range(1, m)
        )
        assert finiteness_check(phi, spec) == all_finite


def test_tail_unit():
    assert tail_unit(5, 4) == 2
    assert tail_unit(13, 4) == 5
    assert tail_unit(7, 3) == 2
    assert tail_unit(7, 1) == 1
    with pytest.raises(ValueError):
        tail_unit(7, 4)


def test_apply_examples():
    inst = truncate(Z5_INF, TruncationParams(2, 0))
    x = inst.element(parts={5: (1,)})
    assert apply(PHI_Z5, x, inst) == inst.element(parts={5: (7,)})

    ident_phi = PowerAutSpec.of({5: UnitLabel.identity()})
    assert apply(ident_phi, x, inst) == x

    c8 = DedekindSpec(False, (AbelianPComponent(2, (3,)),))
    inst8 = truncate(c8, TruncationParams())
    phi_inv = PowerAutSpec.of({2: UnitLabel.inversion()})
    y = inst8.element(parts={2: (3,)})
    assert apply(phi_inv, y, inst8) == inst8.element(parts={2: (5,)})


@pytest.mark.parametrize(
    "phi,spec,params",
    [
        (PHI_Z5, Z5_INF, TruncationParams(2, 0)),
        (PHI_Q8_Z3, Q8_Z3, TruncationParams(2, 0)),
        (PHI_MIXED, MIXED, TruncationParams(1, 0)),
        (PowerAutSpec((), tail_rule="least_order_m"), DedekindSpec(False, (), TailRule(4, 5)), TruncationParams(1, 2)),
    ],
)
def test_apply_is_a_power_automorphism_of_the_truncation(phi, spec, params):
    inst = truncate(spec, params)
    g = inst.to_cayley()
    perm = phi_index_permutation(phi, inst)
    # bijective and multiplicative
    assert sorted(perm) == list(range(inst.order))
    table = g.table
    assert (perm[table] == table[perm][:, perm]).all()
    # sends every element to one of its own powers
    for idx in range(inst.order):
        cyc = g.cyclic_subgroup(idx)
        assert int(perm[idx]) in cyc


def test_symbolic_centralizer_matches_truncation_counts():
    # per-k fixed points on truncations agree whenever the symbolic value is finite
    cases = [
        (PHI_Z5, Z5_INF, TruncationParams(2, 0)),
        (PHI_Z2_INV, Z2_INF, TruncationParams(3, 0)),
        (PHI_Q8_Z3, Q8_Z3, TruncationParams(2, 0)),
        (PHI_MIXED, MIXED, TruncationParams(2, 0)),
    ]
    for phi, spec, params in cases:
        inst = truncate(spec, params)
        m = phi_order(phi, spec)
        assert truncated_phi_order(phi, inst) == m
        perm = phi_index_permutation(phi, inst)
        for k in range(1, m):
            symbolic = symbolic_centralizer_order(phi, spec, k)
            if not symbolic.is_finite:
                continue
            pk = list(range(inst.order))
            for _ in range(k):
                pk = [int(perm[i]) for i in pk]
            fixed = sum(1 for i, v in enumerate(pk) if i == v)
            assert symbolic == fixed
            assert symbolic <= centralizer_bound(phi, spec, k)


def test_truncated_phi_order_collapse():
    inst1 = truncate(Z2_INF, TruncationParams(1, 0))
    assert truncated_phi_order(PHI_Z2_INV, inst1) == 1  # inversion dies on C_2
    inst2 = truncate(Z2_INF, TruncationParams(2, 0))
    assert truncated_phi_order(PHI_Z2_INV, inst2) == 2
    tail_spec = DedekindSpec(False, (), TailRule(4, 5))
    tail_phi = PowerAutSpec((), tail_rule="least_order_m")
    empty = truncate(tail_spec, TruncationParams(1, 0))
    assert truncated_phi_order(tail_phi, empty) == 1  # no tail primes kept
