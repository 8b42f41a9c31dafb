"""Cyclic extensions <g, D> of Dedekind specs by a power automorphism.

Elements are cosets g^i * d with 0 <= i < m. The action convention is
g^-1 d g = phi(d), which yields the multiplication law

    (i, d) (j, e) = (r, n^q * phi^j(d) * e)   where i + j = q m + r.

The fiber element n = g^m must be central and fixed by phi; with the
automorphism order equal to m those are exactly the admissible choices.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

import numpy as np

from . import power_aut
from .bruteforce import CayleyGroup, centralizer, is_normal_cyclic, order_cap
from .dedekind import (
    DedekindElementSpec,
    DedekindSpec,
    DedekindTruncation,
    IDENTITY_ELEMENT,
    TruncationParams,
    validate_spec,
)
from .errors import OrderCapError, SpecError
from .power_aut import PowerAutSpec, concrete_unit, phi_order, validate_phi

__all__ = [
    "BciReport",
    "Certificate",
    "Classification",
    "ExtensionTruncation",
    "FciGroupSpec",
    "classify",
    "empirical_bci",
    "global_bound",
    "multiply",
    "truncate_group",
    "validate_all",
    "validate_extension",
]


@dataclass(frozen=True)
class FciGroupSpec:
    """Extension datum: the Dedekind base, the automorphism, its order, and g^m."""

    dedekind: DedekindSpec
    phi: PowerAutSpec
    m: int = 1
    n: DedekindElementSpec = IDENTITY_ELEMENT


@dataclass(frozen=True)
class Certificate:
    """The finiteness certificate attached to a positive classification."""

    m: int
    pi0: tuple[int, ...]
    pi1: tuple[int, ...]
    M: int
    bound: int

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "pi0": list(self.pi0),
            "pi1": list(self.pi1),
            "M": self.M,
            "bound": self.bound,
        }


@dataclass(frozen=True)
class Classification:
    kind: str  # "dedekind" | "fci" | "not_fci"
    certificate: Certificate | None = None
    reason: str | None = None

    @property
    def is_fci(self) -> bool:
        return self.kind == "fci"


def validate_extension(spec: FciGroupSpec) -> list[str]:
    """Extension-level constraints, assuming the Dedekind spec itself is valid."""
    violations: list[str] = []
    d = spec.dedekind
    if spec.m < 1:
        violations.append(f"extension order must be positive, got {spec.m}")
        return violations
    try:
        order = phi_order(spec.phi, d)
    except SpecError as exc:
        violations.append(str(exc))
        return violations
    if spec.m != order:
        violations.append(
            f"declared extension order {spec.m} differs from the automorphism order {order}"
        )
    violations.extend(_validate_fiber(spec))
    return violations


def _validate_fiber(spec: FciGroupSpec) -> list[str]:
    violations: list[str] = []
    d, n = spec.dedekind, spec.n
    if n.q8 != "1" and not d.has_q8:
        violations.append("n uses a quaternion coordinate but D has no quaternion factor")
    elif n.q8 not in ("1", "-1"):
        violations.append("n not central")
    seen: set[int] = set()
    for part in n.parts:
        if part.p in seen:
            violations.append(f"n has duplicate coordinates at prime {part.p}")
        seen.add(part.p)
        comp = d.component(part.p)
        if comp is None:
            violations.append(f"n supported at prime {part.p} outside the explicit components")
            continue
        if len(part.cyclic) > len(comp.cyclic_exponents):
            violations.append(f"n has too many cyclic coordinates at prime {part.p}")
            continue
        if len(part.quasicyclic) > comp.quasicyclic_count:
            violations.append(f"n has too many quasicyclic coordinates at prime {part.p}")
            continue
        label = spec.phi.label_for(part.p)
        if label is None:
            continue  # reported by the phi validator
        fixed = True
        for c, e in zip(part.cyclic, comp.cyclic_exponents):
            u = concrete_unit(label, part.p, e)
            if (u * c - c) % part.p**e != 0:
                fixed = False
        for num, dep in part.quasicyclic:
            num_r = num % part.p**dep
            if num_r == 0:
                continue
            u = concrete_unit(label, part.p, dep)
            if (u * num_r - num_r) % part.p**dep != 0:
                fixed = False
        if not fixed:
            violations.append("n not fixed by phi")
    return violations


def validate_all(spec: FciGroupSpec) -> list[str]:
    """Every violation across the Dedekind spec, the labels, and the extension."""
    violations = validate_spec(spec.dedekind)
    violations += validate_phi(spec.phi, spec.dedekind)
    if not violations:
        violations += validate_extension(spec)
    return violations


def _ensure_valid(spec: FciGroupSpec) -> None:
    violations = validate_all(spec)
    if violations:
        raise SpecError("; ".join(violations))


def classify(spec: FciGroupSpec) -> Classification:
    """Decide which case of the classification the spec lands in.

    "dedekind": trivial extension of an infinite base. "fci": nontrivial
    extension meeting the finiteness condition, with its certificate.
    "not_fci" otherwise, naming the first failing condition. Finite bases
    are rejected as out of scope (finite groups satisfy the centralizer
    condition vacuously and are handled by the brute-force side).
    """
    _ensure_valid(spec)
    d = spec.dedekind
    if not d.is_infinite():
        return Classification(
            "not_fci", reason="D finite: only infinite groups are classified here"
        )
    if spec.m == 1:
        return Classification("dedekind")
    two = d.two_component()
    if two is not None and not two.is_finite:
        label = spec.phi.label_for(2)
        if label.kind != "inversion" or spec.m != 2:
            return Classification(
                "not_fci",
                reason="infinite 2-part requires the inversion action and total order 2",
            )
    if not power_aut.finiteness_check(spec.phi, d):
        pi0, pi1 = power_aut.pi0_pi1(spec.phi, d, spec.m)
        bad = next(p for p in sorted({*pi0, *pi1}) if d.dp_order(p) is None)
        return Classification(
            "not_fci",
            reason=f"infinite Sylow {bad}-part lies in pi0/pi1, so the centralizer product diverges",
        )
    pi0, pi1 = power_aut.pi0_pi1(spec.phi, d, spec.m)
    m_val = power_aut.M_value(d)
    bound = spec.m * m_val * prod((d.dp_order(p) for p in sorted({*pi0, *pi1})), start=1)
    return Classification("fci", certificate=Certificate(spec.m, pi0, pi1, m_val, bound))


def global_bound(spec: FciGroupSpec) -> int:
    """The uniform centralizer bound m * M * prod |D_p| of a positive classification."""
    result = classify(spec)
    if not result.is_fci:
        raise SpecError(f"global bound is defined for fci specs only, got {result.kind}")
    return result.certificate.bound


class ExtensionTruncation:
    """Finite realization of an extension spec over a truncated base.

    Element (i, d) has index i * |D| + index(d), so the embedded copy of D
    is exactly the first |D| indices. The truncation is faithful when the
    truncated automorphism keeps its full order m.
    """

    def __init__(
        self, spec: FciGroupSpec, params: TruncationParams, cap: int | None = None
    ) -> None:
        _ensure_valid(spec)
        limit = order_cap() if cap is None else cap
        self.spec = spec
        self.params = params
        self.d = DedekindTruncation(spec.dedekind, params, cap=limit)
        self.m = spec.m
        self.order = self.m * self.d.order
        if self.order > limit:
            raise OrderCapError(f"extension order {self.order} exceeds the cap {limit}")
        self.n = self.d.realize(spec.n)
        self._units = power_aut.truncated_units(spec.phi, self.d)
        self.faithful = power_aut.truncated_phi_order(spec.phi, self.d) == self.m

    def apply_phi(self, x: tuple[int, ...], times: int = 1) -> tuple[int, ...]:
        units = {}
        for part in self.d.parts:
            mod = part.p ** max(part.group.exponents)
            units[part.p] = pow(self._units[part.p], times, mod)
        return self.d.scale_element(x, units)

    def mul(
        self, x: tuple[int, tuple[int, ...]], y: tuple[int, tuple[int, ...]]
    ) -> tuple[int, tuple[int, ...]]:
        i, d = x
        j, e = y
        if not (0 <= i < self.m and 0 <= j < self.m):
            raise ValueError("coset exponents out of range")
        q, r = divmod(i + j, self.m)
        value = self.apply_phi(d, j)
        if q:
            value = self.d.mul(self.n, value)
        return r, self.d.mul(value, e)

    def inverse(self, x: tuple[int, tuple[int, ...]]) -> tuple[int, tuple[int, ...]]:
        # solve (i, d)(j, e) = (0, 1) componentwise
        i, d = x
        j = (self.m - i) % self.m
        value = self.apply_phi(d, j)
        if i > 0:
            value = self.d.mul(self.n, value)
        return j, self.d.inverse(value)

    def index_of(self, x: tuple[int, tuple[int, ...]]) -> int:
        return x[0] * self.d.order + self.d.index_of(x[1])

    def element_at(self, idx: int) -> tuple[int, tuple[int, ...]]:
        i, rest = divmod(idx, self.d.order)
        return i, self.d.element_at(rest)

    def d_indices(self) -> range:
        """Indices of the embedded copy of the truncated base."""
        return range(self.d.order)

    def cayley(self, name: str | None = None) -> CayleyGroup:
        dn = self.d.order
        td = self.d.mul_table().astype(np.int64)
        base = power_aut.phi_index_permutation(self.spec.phi, self.d).astype(np.int64)
        perms = [np.arange(dn, dtype=np.int64)]
        for _ in range(1, self.m):
            perms.append(base[perms[-1]])
        n_idx = self.d.index_of(self.n)
        out = np.empty((self.order, self.order), dtype=np.int32)
        for i in range(self.m):
            for j in range(self.m):
                q, r = divmod(i + j, self.m)
                rowmap = perms[j] if q == 0 else td[n_idx, perms[j]]
                block = td[rowmap] + r * dn
                out[i * dn : (i + 1) * dn, j * dn : (j + 1) * dn] = block
        labels = None
        if self.order <= 1024:
            labels = []
            for i in range(self.m):
                for didx in range(dn):
                    dlab = self.d.label_of(self.d.element_at(didx))
                    labels.append(dlab if i == 0 else f"g^{i}*{dlab}")
        return CayleyGroup(out, labels=labels, name=name or "G")


def multiply(
    x: tuple[int, tuple[int, ...]],
    y: tuple[int, tuple[int, ...]],
    group: ExtensionTruncation,
) -> tuple[int, tuple[int, ...]]:
    """Coset multiplication (i, d)(j, e) = (r, n^q phi^j(d) e)."""
    return group.mul(x, y)


def truncate_group(
    spec: FciGroupSpec, params: TruncationParams, cap: int | None = None
) -> CayleyGroup:
    """Concrete group of order m * |truncated D| with the coset multiplication."""
    return ExtensionTruncation(spec, params, cap=cap).cayley()


@dataclass(frozen=True)
class BciReport:
    """Extremes of |C_G(x)| and |C_G(x) : <x>| over non-normal cyclic generators.

    Witnesses are the least element indices attaining the maxima. A group in
    which every cyclic subgroup is normal reports zeros and no witnesses.
    """

    max_centralizer_order: int
    max_index: int
    centralizer_witness: int | None
    index_witness: int | None
    non_normal_count: int

    @property
    def is_dedekind(self) -> bool:
        return self.non_normal_count == 0


def empirical_bci(group: CayleyGroup) -> BciReport:
    """Scan every element generating a non-normal subgroup."""
    max_c = 0
    max_i = 0
    wit_c: int | None = None
    wit_i: int | None = None
    count = 0
    for x in group.elements():
        if is_normal_cyclic(group, x):
            continue
        count += 1
        c = centralizer(group, x).order
        index = c // len(group.cyclic_subgroup(x))
        if c > max_c:
            max_c, wit_c = c, x
        if index > max_i:
            max_i, wit_i = index, x
    return BciReport(max_c, max_i, wit_c, wit_i, count)
