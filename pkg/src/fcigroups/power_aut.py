"""Power automorphisms of Dedekind specs as per-prime unit labels.

A label per explicit component prime fixes how that Sylow part is scaled;
the quaternion factor, when present, is always fixed pointwise. From the
labels alone one reads off the automorphism order, the prime sets pi0/pi1
that control finiteness of centralizers, and exact symbolic centralizer
orders per power.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm, prod
from typing import Mapping

import numpy as np

from .abelian import (
    AbelianPComponent,
    FiniteAbelianPGroup,
    UnitResidue,
    fixed_subgroup_order,
    is_prime,
    multiplicative_order,
    teichmuller_lift,
)
from .dedekind import DedekindSpec, DedekindTruncation
from .errors import SpecError

__all__ = [
    "Cardinal",
    "INFINITE",
    "PowerAutSpec",
    "TAIL_RULE_LEAST",
    "UnitLabel",
    "M_value",
    "apply",
    "centralizer_bound",
    "component_order",
    "concrete_unit",
    "dp_order",
    "finiteness_check",
    "phi_index_permutation",
    "phi_order",
    "pi0_pi1",
    "symbolic_centralizer_order",
    "tail_unit",
    "truncated_phi_order",
    "truncated_units",
    "validate_phi",
]

TAIL_RULE_LEAST = "least_order_m"


@dataclass(frozen=True, eq=False)
class Cardinal:
    """A group order: a non-negative integer, or infinity (value None).

    Multiplication follows finite * finite = finite, anything * infinity =
    infinity. Comparisons treat infinity as larger than every integer.
    """

    value: int | None

    @classmethod
    def finite(cls, v: int) -> "Cardinal":
        return cls(int(v))

    @property
    def is_finite(self) -> bool:
        return self.value is not None

    def _coerce(self, other: "Cardinal | int") -> "Cardinal":
        return other if isinstance(other, Cardinal) else Cardinal(int(other))

    def __mul__(self, other: "Cardinal | int") -> "Cardinal":
        o = self._coerce(other)
        if self.value is None or o.value is None:
            return INFINITE
        return Cardinal(self.value * o.value)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Cardinal):
            return self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.value)

    def __le__(self, other: "Cardinal | int") -> bool:
        o = self._coerce(other)
        if o.value is None:
            return True
        if self.value is None:
            return False
        return self.value <= o.value

    def __lt__(self, other: "Cardinal | int") -> bool:
        o = self._coerce(other)
        return self != o and self <= o

    def __str__(self) -> str:
        return "infinite" if self.value is None else str(self.value)

    def to_json(self) -> int | str:
        return "infinite" if self.value is None else self.value


INFINITE = Cardinal(None)

_LABEL_KINDS = ("unit", "teichmuller", "identity", "inversion")


@dataclass(frozen=True)
class UnitLabel:
    """How one Sylow component is scaled.

    kind "unit": an explicit unit residue (finite components, stored mod the
    component exponent). kind "teichmuller": the torsion p-adic unit tagged
    by its residue mod p (infinite components, p odd). "identity" and
    "inversion" are universal shorthands; for p = 2 with infinite exponent
    they are the only torsion choices.
    """

    kind: str
    value: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in _LABEL_KINDS:
            raise ValueError(f"unknown label kind {self.kind!r}")
        if self.kind in ("unit", "teichmuller") and self.value is None:
            raise ValueError(f"label kind {self.kind!r} requires a value")
        if self.kind in ("identity", "inversion") and self.value is not None:
            raise ValueError(f"label kind {self.kind!r} takes no value")

    @classmethod
    def unit(cls, v: int) -> "UnitLabel":
        return cls("unit", int(v))

    @classmethod
    def teichmuller(cls, t0: int) -> "UnitLabel":
        return cls("teichmuller", int(t0))

    @classmethod
    def identity(cls) -> "UnitLabel":
        return cls("identity")

    @classmethod
    def inversion(cls) -> "UnitLabel":
        return cls("inversion")


@dataclass(frozen=True)
class PowerAutSpec:
    """One unit label per explicit component prime, plus the tail rule marker."""

    labels: tuple[tuple[int, UnitLabel], ...] = ()
    tail_rule: str | None = None

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.labels, key=lambda kv: kv[0]))
        object.__setattr__(self, "labels", ordered)
        primes = [p for p, _ in ordered]
        if len(set(primes)) != len(primes):
            raise ValueError("duplicate prime in power automorphism labels")

    @classmethod
    def of(cls, mapping: Mapping[int, UnitLabel], tail_rule: str | None = None) -> "PowerAutSpec":
        return cls(tuple(mapping.items()), tail_rule)

    def label_for(self, p: int) -> UnitLabel | None:
        for q, lbl in self.labels:
            if q == p:
                return lbl
        return None


def validate_phi(phi: PowerAutSpec, spec: DedekindSpec) -> list[str]:
    """Label-to-component consistency; empty list means valid."""
    violations: list[str] = []
    explicit = {c.p: c for c in spec.components}
    for p, label in phi.labels:
        comp = explicit.get(p)
        if comp is None:
            violations.append(f"label for prime {p} without a matching component")
            continue
        if comp.is_finite:
            if label.kind == "teichmuller":
                violations.append(f"torsion p-adic label on the finite {p}-component")
            elif label.kind == "unit" and label.value % p == 0:
                violations.append(f"label {label.value} is not a unit at prime {p}")
        else:
            if label.kind == "unit":
                violations.append(
                    f"explicit unit label on the infinite-exponent {p}-component"
                )
            elif p == 2 and label.kind == "teichmuller":
                violations.append("the infinite 2-component only admits identity or inversion")
            elif label.kind == "teichmuller" and label.value % p == 0:
                violations.append(f"label {label.value} is not a unit at prime {p}")
    for comp in spec.components:
        if phi.label_for(comp.p) is None:
            violations.append(f"component at prime {comp.p} has no unit label")
    if spec.tail is not None and phi.tail_rule != TAIL_RULE_LEAST:
        violations.append(f"tail components require the {TAIL_RULE_LEAST!r} rule label")
    if spec.tail is None and phi.tail_rule is not None:
        violations.append("tail rule label given but the spec has no tail")
    return violations


def _ensure_valid(phi: PowerAutSpec, spec: DedekindSpec) -> None:
    violations = validate_phi(phi, spec)
    if violations:
        raise SpecError("; ".join(violations))


def concrete_unit(label: UnitLabel, p: int, depth: int) -> int:
    """The unit of Z/p^depth Z realizing the label at this depth."""
    if depth < 1:
        raise ValueError(f"depth must be positive, got {depth}")
    mod = p**depth
    if label.kind == "identity":
        return 1
    if label.kind == "inversion":
        return (-1) % mod
    if label.kind == "unit":
        return label.value % mod
    return teichmuller_lift(label.value, p, depth).value


def tail_unit(p: int, m: int) -> int:
    """Least positive integer of multiplicative order exactly m modulo p."""
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if (p - 1) % m != 0:
        raise ValueError(f"no unit of order {m} mod {p}: {m} does not divide {p - 1}")
    if m == 1:
        return 1
    for u in range(2, p):
        if multiplicative_order(u, p, p - 1) == m:
            return u
    raise RuntimeError(f"unit group mod {p} has no element of order {m}")


def component_order(label: UnitLabel, p: int, component: AbelianPComponent) -> int:
    """Order of the scaling automorphism on one component."""
    if component.is_finite:
        e1 = max(component.cyclic_exponents)
        value = concrete_unit(label, p, e1)
        return multiplicative_order(value, p**e1, p ** (e1 - 1) * (p - 1))
    if label.kind == "identity":
        return 1
    if label.kind == "inversion":
        return 2  # infinite exponent, so inversion never collapses
    # torsion p-adic unit: its order equals the order of the residue mod p
    return multiplicative_order(label.value % p, p, p - 1)


def phi_order(phi: PowerAutSpec, spec: DedekindSpec) -> int:
    """Total automorphism order: lcm of component orders, the tail included.

    Every prime selected by a tail rule carries a unit of order exactly
    tail.m, so the lcm of the explicit orders must divide tail.m; otherwise
    the spec is inconsistent.
    """
    _ensure_valid(phi, spec)
    m = 1
    for comp in spec.components:
        m = lcm(m, component_order(phi.label_for(comp.p), comp.p, comp))
    if spec.tail is not None:
        if spec.tail.m % m != 0:
            raise SpecError(
                f"tail rule order {spec.tail.m} is not a multiple of the explicit order {m}"
            )
        return spec.tail.m
    return m


def _explicit_orders(phi: PowerAutSpec, spec: DedekindSpec) -> dict[int, int]:
    orders: dict[int, int] = {}
    for comp in spec.components:
        orders[comp.p] = component_order(phi.label_for(comp.p), comp.p, comp)
    if spec.has_q8 and 2 not in orders:
        orders[2] = 1  # the quaternion factor is fixed pointwise
    return orders


def pi0_pi1(
    phi: PowerAutSpec, spec: DedekindSpec, m: int
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """The primes whose Sylow parts must stay finite.

    pi0: component order drops below m. pi1: odd primes of full order that
    are not 1 mod m. Tail primes never qualify by construction (full order,
    1 mod m), so only explicit primes are scanned.
    """
    if spec.tail is not None and spec.tail.m != m:
        raise SpecError("tail rule order disagrees with the automorphism order")
    orders = _explicit_orders(phi, spec)
    pi0 = tuple(sorted(p for p, o in orders.items() if o < m))
    pi1 = tuple(
        sorted(p for p, o in orders.items() if o == m and p > 2 and p % m != 1)
    )
    return pi0, pi1


def dp_order(spec: DedekindSpec, p: int) -> Cardinal:
    raw = spec.dp_order(p)
    return INFINITE if raw is None else Cardinal(raw)


def M_value(spec: DedekindSpec) -> int:
    """The 2-part contribution to the centralizer bound.

    The order of the full 2-part when finite; 2 to its rank when infinite
    (always a finite integer either way).
    """
    d2 = spec.d2_order()
    if d2 is not None:
        return d2
    return 2 ** spec.d2_rank()


def finiteness_check(phi: PowerAutSpec, spec: DedekindSpec) -> bool:
    """Whether every nontrivial power of the automorphism has finite centralizer.

    Equivalent condition: all Sylow parts at primes in pi0 and pi1 are finite
    (the 2-part has finite rank by representation, and the prime sets are
    finite because only explicitly listed primes can enter them).
    """
    m = phi_order(phi, spec)
    if m < 2:
        raise SpecError("finiteness check needs an automorphism of order at least 2")
    pi0, pi1 = pi0_pi1(phi, spec, m)
    return all(spec.dp_order(p) is not None for p in (*pi0, *pi1))


def centralizer_bound(phi: PowerAutSpec, spec: DedekindSpec, k: int) -> Cardinal:
    """M times the product of |D_p| over pi0 and pi1; infinite when the
    finiteness condition fails. Independent of k, which is only range-checked."""
    m = phi_order(phi, spec)
    if not 1 <= k <= m - 1:
        raise ValueError(f"k must lie in 1..{m - 1}, got {k}")
    if not finiteness_check(phi, spec):
        return INFINITE
    pi0, pi1 = pi0_pi1(phi, spec, m)
    bound = Cardinal(M_value(spec))
    for p in sorted({*pi0, *pi1}):
        bound = bound * dp_order(spec, p)
    return bound


def symbolic_centralizer_order(phi: PowerAutSpec, spec: DedekindSpec, k: int) -> Cardinal:
    """Exact order of the centralizer of the k-th power of the automorphism.

    Per-prime factorization: finite components contribute their exact fixed
    subgroup order; an infinite odd component contributes 1 unless the label
    order divides k, in which case the whole (infinite) component is fixed;
    an infinite 2-component under inversion contributes its p-torsion (2 per
    summand) for odd k and everything for even k; the quaternion factor
    contributes 8. Primes of full order congruent to 1 mod m, tail primes
    included, contribute exactly 1.
    """
    m = phi_order(phi, spec)
    if m < 2:
        raise SpecError("centralizer orders are defined for automorphism order at least 2")
    if not 1 <= k <= m - 1:
        raise ValueError(f"k must lie in 1..{m - 1}, got {k}")
    result = Cardinal(8 if spec.has_q8 else 1)
    for comp in spec.components:
        label = phi.label_for(comp.p)
        if comp.is_finite:
            e1 = max(comp.cyclic_exponents)
            unit = UnitResidue(e1, concrete_unit(label, comp.p, e1))
            group = FiniteAbelianPGroup(comp.p, comp.cyclic_exponents)
            result = result * fixed_subgroup_order(group, unit, k)
        elif comp.p == 2:
            if label.kind == "identity" or k % 2 == 0:
                result = result * INFINITE
            else:
                result = result * 2**comp.rank
        else:
            d = component_order(label, comp.p, comp)
            result = result * (INFINITE if k % d == 0 else 1)
    return result


def apply(
    phi: PowerAutSpec, x: tuple[int, ...], truncation: DedekindTruncation
) -> tuple[int, ...]:
    """Apply the automorphism to a concrete element of a truncation."""
    return truncation.scale_element(x, truncated_units(phi, truncation))


def truncated_units(
    phi: PowerAutSpec, truncation: DedekindTruncation
) -> dict[int, int]:
    """Concrete scaling unit per truncated prime, reduced to its depth."""
    _ensure_valid(phi, truncation.spec)
    units: dict[int, int] = {}
    for part in truncation.parts:
        if part.component is None:
            units[part.p] = tail_unit(part.p, truncation.spec.tail.m)
        else:
            depth = max(part.group.exponents)
            units[part.p] = concrete_unit(phi.label_for(part.p), part.p, depth)
    return units


def phi_index_permutation(
    phi: PowerAutSpec, truncation: DedekindTruncation
) -> np.ndarray:
    """The automorphism as a permutation of truncation element indices."""
    return truncation.index_permutation(truncated_units(phi, truncation))


def truncated_phi_order(phi: PowerAutSpec, truncation: DedekindTruncation) -> int:
    """Multiplicative order the automorphism retains on this truncation.

    Shallow truncations can collapse the order (inversion dies on C_2, a
    dropped tail loses its full-order witnesses); comparing this with the
    symbolic order is what flags a truncation as faithful.
    """
    units = truncated_units(phi, truncation)
    m = 1
    for part in truncation.parts:
        depth = max(part.group.exponents)
        mod = part.p**depth
        group_order = part.p ** (depth - 1) * (part.p - 1)
        m = lcm(m, multiplicative_order(units[part.p] % mod, mod, group_order))
    return m
