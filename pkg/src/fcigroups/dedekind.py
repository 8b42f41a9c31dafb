"""Periodic Dedekind groups Q8 x A as symbolic specs with finite truncations."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm, prod
from typing import Iterator, Mapping, Sequence

import numpy as np

from .abelian import AbelianPComponent, AbelianPVector, FiniteAbelianPGroup, is_prime
from .bruteforce import Q8_LABELS, Q8_TABLE, CayleyGroup, is_normal_cyclic, order_cap
from .errors import OrderCapError, SpecError

__all__ = [
    "ComponentElementSpec",
    "DedekindElementSpec",
    "DedekindSpec",
    "DedekindTruncation",
    "IDENTITY_ELEMENT",
    "TailRule",
    "TruncationParams",
    "center_elements",
    "is_dedekind_bruteforce",
    "truncate",
    "validate_spec",
]

_Q8_INVERSE = tuple(int(np.nonzero(Q8_TABLE[x] == 0)[0][0]) for x in range(8))
_Q8_ELEMENT_ORDER = (1, 2, 4, 4, 4, 4, 4, 4)


@dataclass(frozen=True)
class TailRule:
    """One cyclic summand C_p for every prime p >= min_prime with p = 1 (mod m).

    Dirichlet guarantees infinitely many such primes; truncations pick off a
    finite prefix of them.
    """

    m: int
    min_prime: int = 3

    def __post_init__(self) -> None:
        if self.m < 2:
            raise ValueError(f"tail modulus must be at least 2, got {self.m}")
        if self.min_prime < 2:
            raise ValueError(f"min_prime must be at least 2, got {self.min_prime}")

    def matches(self, p: int) -> bool:
        return p >= self.min_prime and p % self.m == 1 and is_prime(p)

    def primes(self, count: int) -> tuple[int, ...]:
        """The first `count` primes selected by the rule, in increasing order."""
        if count < 0:
            raise ValueError(f"count must be non-negative, got {count}")
        out: list[int] = []
        p = self.min_prime
        while len(out) < count:
            if self.matches(p):
                out.append(p)
            p += 1
        return tuple(out)


@dataclass(frozen=True)
class DedekindSpec:
    """A periodic Dedekind group: optional quaternion factor times abelian components.

    When the quaternion factor is present the explicit 2-component must be
    elementary abelian, otherwise the described group is not Dedekind (the
    brute-force oracle confirms this on small instances).
    """

    has_q8: bool = False
    components: tuple[AbelianPComponent, ...] = ()
    tail: TailRule | None = None

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "components", tuple(sorted(self.components, key=lambda c: c.p))
        )

    def component(self, p: int) -> AbelianPComponent | None:
        for comp in self.components:
            if comp.p == p:
                return comp
        return None

    @property
    def primes(self) -> tuple[int, ...]:
        """Explicit primes, including 2 when only the quaternion factor carries it."""
        ps = {comp.p for comp in self.components}
        if self.has_q8:
            ps.add(2)
        return tuple(sorted(ps))

    def is_infinite(self) -> bool:
        return self.tail is not None or any(not c.is_finite for c in self.components)

    def two_component(self) -> AbelianPComponent | None:
        return self.component(2)

    def d2_order(self) -> int | None:
        """Order of the full 2-part (quaternion factor included); None if infinite."""
        base = 8 if self.has_q8 else 1
        two = self.two_component()
        if two is None:
            return base
        if two.order is None:
            return None
        return base * two.order

    def d2_rank(self) -> int:
        two = self.two_component()
        return (2 if self.has_q8 else 0) + (two.rank if two is not None else 0)

    def dp_order(self, p: int) -> int | None:
        """Order of the Sylow p-part; None if infinite."""
        if p == 2:
            return self.d2_order()
        comp = self.component(p)
        return 1 if comp is None else comp.order


def validate_spec(spec: DedekindSpec) -> list[str]:
    """Cross-component constraints; an empty list means the spec is valid."""
    violations: list[str] = []
    seen: set[int] = set()
    for comp in spec.components:
        if comp.p in seen:
            violations.append(f"duplicate component for prime {comp.p}")
        seen.add(comp.p)
    if spec.has_q8:
        two = spec.two_component()
        if two is not None and (
            two.quasicyclic_count > 0 or any(e != 1 for e in two.cyclic_exponents)
        ):
            violations.append("2-component not elementary abelian")
    if spec.tail is not None:
        for comp in spec.components:
            if spec.tail.matches(comp.p):
                violations.append(f"component prime {comp.p} collides with the tail rule")
    return violations


@dataclass(frozen=True)
class TruncationParams:
    """How deep to materialise a spec: quasicyclic depth and tail prefix length."""

    quasicyclic_depth: int = 1
    tail_count: int = 0

    def __post_init__(self) -> None:
        if self.quasicyclic_depth < 1:
            raise ValueError(f"quasicyclic depth must be positive, got {self.quasicyclic_depth}")
        if self.tail_count < 0:
            raise ValueError(f"tail count must be non-negative, got {self.tail_count}")


@dataclass(frozen=True)
class _TruncatedPart:
    p: int
    group: FiniteAbelianPGroup
    component: AbelianPComponent | None  # None marks a tail prime


@dataclass(frozen=True)
class ComponentElementSpec:
    """Coordinates of a symbolic element inside one p-component.

    `cyclic` holds one integer per invariant factor (shorter tuples pad with
    zeros); each `quasicyclic` entry is a (numerator, depth) pair encoding
    the element numerator / p^depth of the Pruefer group.
    """

    p: int
    cyclic: tuple[int, ...] = ()
    quasicyclic: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "cyclic", tuple(int(c) for c in self.cyclic))
        object.__setattr__(
            self, "quasicyclic", tuple((int(a), int(d)) for a, d in self.quasicyclic)
        )
        if any(d < 1 for _, d in self.quasicyclic):
            raise ValueError("quasicyclic coordinate depths must be positive")


@dataclass(frozen=True)
class DedekindElementSpec:
    """A truncation-independent element of a DedekindSpec with finite support."""

    q8: str = "1"
    parts: tuple[ComponentElementSpec, ...] = ()

    def __post_init__(self) -> None:
        if self.q8 not in Q8_LABELS:
            raise ValueError(f"unknown quaternion element {self.q8!r}")

    def part(self, p: int) -> ComponentElementSpec | None:
        for part in self.parts:
            if part.p == p:
                return part
        return None

    def is_identity(self) -> bool:
        return self.q8 == "1" and all(
            all(c == 0 for c in part.cyclic)
            and all(a % part.p**d == 0 for a, d in part.quasicyclic)
            for part in self.parts
        )


IDENTITY_ELEMENT = DedekindElementSpec()


class DedekindTruncation:
    """A finite Dedekind group assembled from a spec at fixed truncation params.

    Elements are flat tuples: a leading quaternion coordinate (always 0 when
    the spec has no quaternion factor) followed by one coordinate per cyclic
    summand, grouped by prime in increasing order. Cyclic summands of each
    component come first, truncated quasicyclic summands after them, tail
    primes contribute a single coordinate each.
    """

    def __init__(
        self, spec: DedekindSpec, params: TruncationParams, cap: int | None = None
    ) -> None:
        violations = validate_spec(spec)
        if violations:
            raise SpecError("; ".join(violations))
        parts = [
            _TruncatedPart(c.p, c.truncate(params.quasicyclic_depth), c)
            for c in spec.components
        ]
        if spec.tail is not None:
            for p in spec.tail.primes(params.tail_count):
                parts.append(_TruncatedPart(p, FiniteAbelianPGroup(p, (1,)), None))
        parts.sort(key=lambda part: part.p)
        self.spec = spec
        self.params = params
        self.has_q8 = spec.has_q8
        self.parts = tuple(parts)
        moduli: list[int] = []
        offsets: list[int] = []
        for part in self.parts:
            offsets.append(len(moduli))
            moduli.extend(part.group.moduli)
        self.moduli = tuple(moduli)
        self._offsets = tuple(offsets)
        self.order = (8 if self.has_q8 else 1) * prod(self.moduli, start=1)
        limit = order_cap() if cap is None else cap
        if self.order > limit:
            raise OrderCapError(f"truncated order {self.order} exceeds the cap {limit}")
        slots = ((8 if self.has_q8 else 1),) + self.moduli
        strides = [1] * len(slots)
        for i in range(len(slots) - 2, -1, -1):
            strides[i] = strides[i + 1] * slots[i + 1]
        self._slots = slots
        self._strides = tuple(strides)
        self.identity = (0,) * len(slots)
        self._table: np.ndarray | None = None

    # -- element plumbing ---------------------------------------------------

    def coordinate_slice(self, p: int) -> slice:
        """Slice of the flat coordinate block used by prime p (Q8 slot excluded)."""
        for part, off in zip(self.parts, self._offsets):
            if part.p == p:
                return slice(1 + off, 1 + off + part.group.rank)
        raise KeyError(f"prime {p} not present in this truncation")

    def element(
        self, q8: str = "1", parts: Mapping[int, Sequence[int]] | None = None
    ) -> tuple[int, ...]:
        coords = [0] * len(self.moduli)
        for part, off in zip(self.parts, self._offsets):
            given = None if parts is None else parts.get(part.p)
            if given is None:
                continue
            mods = part.group.moduli
            if len(given) > len(mods):
                raise ValueError(f"too many coordinates for prime {part.p}")
            for i, c in enumerate(given):
                coords[off + i] = int(c) % mods[i]
        if q8 != "1" and not self.has_q8:
            raise ValueError("no quaternion factor in this truncation")
        return (Q8_LABELS.index(q8),) + tuple(coords)

    def decompose(self, x: tuple[int, ...]) -> tuple[str, dict[int, AbelianPVector]]:
        parts = {}
        for part, off in zip(self.parts, self._offsets):
            parts[part.p] = AbelianPVector(
                part.group, tuple(x[1 + off : 1 + off + part.group.rank])
            )
        return Q8_LABELS[x[0]], parts

    def index_of(self, x: tuple[int, ...]) -> int:
        return int(sum(c * s for c, s in zip(x, self._strides)))

    def element_at(self, idx: int) -> tuple[int, ...]:
        return tuple(int((idx // s) % r) for s, r in zip(self._strides, self._slots))

    def elements(self) -> Iterator[tuple[int, ...]]:
        for idx in range(self.order):
            yield self.element_at(idx)

    # -- arithmetic ----------------------------------------------------------

    def mul(self, x: tuple[int, ...], y: tuple[int, ...]) -> tuple[int, ...]:
        head = int(Q8_TABLE[x[0], y[0]])
        return (head,) + tuple(
            (a + b) % m for a, b, m in zip(x[1:], y[1:], self.moduli)
        )

    def inverse(self, x: tuple[int, ...]) -> tuple[int, ...]:
        return (_Q8_INVERSE[x[0]],) + tuple(
            (-c) % m for c, m in zip(x[1:], self.moduli)
        )

    def element_order(self, x: tuple[int, ...]) -> int:
        orders = [_Q8_ELEMENT_ORDER[x[0]]]
        for c, m in zip(x[1:], self.moduli):
            orders.append(m // gcd(c, m))
        return lcm(*orders)

    def scale_element(self, x: tuple[int, ...], units: Mapping[int, int]) -> tuple[int, ...]:
        """Multiply each abelian coordinate by its prime's unit; Q8 part fixed."""
        coords = list(x[1:])
        for part, off in zip(self.parts, self._offsets):
            u = units[part.p]
            for i, m in enumerate(part.group.moduli):
                coords[off + i] = (coords[off + i] * u) % m
        return (x[0],) + tuple(coords)

    def index_permutation(self, units: Mapping[int, int]) -> np.ndarray:
        """The scaling map as a permutation of element indices."""
        idx = np.arange(self.order, dtype=np.int64)
        out = np.zeros(self.order, dtype=np.int64)
        for slot, (stride, radix) in enumerate(zip(self._strides, self._slots)):
            c = (idx // stride) % radix
            if slot == 0:
                out += c * stride
                continue
            p = self._prime_of_slot(slot - 1)
            out += ((c * units[p]) % radix) * stride
        return out.astype(np.int32)

    def _prime_of_slot(self, coord_index: int) -> int:
        for part, off in zip(self.parts, self._offsets):
            if off <= coord_index < off + part.group.rank:
                return part.p
        raise IndexError(coord_index)

    # -- realization of symbolic elements ------------------------------------

    def realize(self, elem: DedekindElementSpec) -> tuple[int, ...]:
        """Materialise a symbolic element at this truncation depth."""
        if elem.q8 != "1" and not self.has_q8:
            raise SpecError("element uses a quaternion coordinate but the spec has none")
        coords = [0] * len(self.moduli)
        depth = self.params.quasicyclic_depth
        for part_spec in elem.parts:
            match = [
                (part, off)
                for part, off in zip(self.parts, self._offsets)
                if part.p == part_spec.p and part.component is not None
            ]
            if not match:
                raise SpecError(f"element supported at prime {part_spec.p} outside the spec")
            part, off = match[0]
            comp = part.component
            if len(part_spec.cyclic) > len(comp.cyclic_exponents):
                raise SpecError(f"too many cyclic coordinates at prime {part_spec.p}")
            if len(part_spec.quasicyclic) > comp.quasicyclic_count:
                raise SpecError(f"too many quasicyclic coordinates at prime {part_spec.p}")
            for i, c in enumerate(part_spec.cyclic):
                coords[off + i] = c % part.group.moduli[i]
            base = len(comp.cyclic_exponents)
            for i, (num, dep) in enumerate(part_spec.quasicyclic):
                if dep > depth:
                    raise SpecError(
                        f"element needs quasicyclic depth {dep} but the truncation uses {depth}"
                    )
                coords[off + base + i] = (num % part_spec.p**dep) * part_spec.p ** (depth - dep)
        return (Q8_LABELS.index(elem.q8),) + tuple(coords)

    # -- embeddings and concrete tables ---------------------------------------

    def embed(self, x: tuple[int, ...], deeper: "DedekindTruncation") -> tuple[int, ...]:
        """Canonical embedding into a truncation with at least this depth and tail."""
        dp, sp = deeper.params, self.params
        if dp.quasicyclic_depth < sp.quasicyclic_depth or dp.tail_count < sp.tail_count:
            raise ValueError("target truncation is shallower than the source")
        if deeper.spec != self.spec:
            raise ValueError("truncations of different specs")
        coords = [0] * len(deeper.moduli)
        shift = dp.quasicyclic_depth - sp.quasicyclic_depth
        for part, off in zip(self.parts, self._offsets):
            doff = deeper.coordinate_slice(part.p).start - 1
            if part.component is None:
                coords[doff] = x[1 + off]
                continue
            ncyc = len(part.component.cyclic_exponents)
            for i in range(part.group.rank):
                scale = part.p**shift if i >= ncyc else 1
                coords[doff + i] = x[1 + off + i] * scale
        return (x[0],) + tuple(coords)

    def mul_table(self) -> np.ndarray:
        """Dense multiplication table on element indices (cached)."""
        if self._table is not None:
            return self._table
        n = self.order
        idx = np.arange(n, dtype=np.int64)
        table = np.zeros((n, n), dtype=np.int64)
        for slot, (stride, radix) in enumerate(zip(self._strides, self._slots)):
            c = (idx // stride) % radix
            if slot == 0:
                if self.has_q8:
                    table += Q8_TABLE.astype(np.int64)[np.ix_(c, c)] * stride
                continue
            table += ((c[:, None] + c[None, :]) % radix) * stride
        self._table = table.astype(np.int32)
        return self._table

    def label_of(self, x: tuple[int, ...]) -> str:
        coords = ",".join(str(c) for c in x[1:])
        if self.has_q8:
            return f"{Q8_LABELS[x[0]]}|{coords}" if coords else Q8_LABELS[x[0]]
        return coords if coords else "e"

    def to_cayley(self, name: str | None = None) -> CayleyGroup:
        labels = None
        if self.order <= 1024:
            labels = [self.label_of(self.element_at(i)) for i in range(self.order)]
        return CayleyGroup(
            self.mul_table(), labels=labels, name=name or "D", validate=True
        )

    def center(self) -> list[tuple[int, ...]]:
        """Central elements: quaternion part +-1, abelian part unrestricted."""
        if not self.has_q8:
            return [self.element_at(i) for i in range(self.order)]
        d_block = self.order // 8
        out = []
        for q in (0, 1):
            out.extend(self.element_at(q * d_block + i) for i in range(d_block))
        return sorted(out, key=self.index_of)


def truncate(
    spec: DedekindSpec, params: TruncationParams, cap: int | None = None
) -> DedekindTruncation:
    """Materialise a validated spec as a finite group at the given depth."""
    return DedekindTruncation(spec, params, cap=cap)


def center_elements(instance: DedekindTruncation) -> list[tuple[int, ...]]:
    return instance.center()


def is_dedekind_bruteforce(group: CayleyGroup) -> bool:
    """Exhaustive check that every cyclic subgroup is normal."""
    return all(is_normal_cyclic(group, x) for x in group.elements())
