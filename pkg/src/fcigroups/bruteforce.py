"""Dense Cayley-table groups and exhaustive verification scans.

Groups live as N x N multiplication tables over element indices 0..N-1 with
the identity pinned at index 0. Every scan (centralizers, normality, kernel
sets, quotients) is a straight table sweep; numpy keeps them cache-friendly
at the configured cap.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import permutations
from math import gcd
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .abelian import distinct_prime_factors
from .errors import OrderCapError

__all__ = [
    "CayleyGroup",
    "KernelSet",
    "Prop22Result",
    "Q8AutomorphismReport",
    "SubgroupHandle",
    "Q8_LABELS",
    "catalog",
    "centralizer",
    "center",
    "check_example21",
    "check_lucido",
    "check_prop22",
    "conjugacy_classes",
    "derived_subgroup",
    "dih",
    "element_order",
    "is_cyclic",
    "is_metabelian",
    "is_normal",
    "is_normal_cyclic",
    "is_soluble",
    "kernel_set",
    "normal_subgroups",
    "order_cap",
    "q8_automorphisms",
    "q8_group",
    "quotient",
    "read_table",
    "subgroup_closure",
    "write_table",
]

DEFAULT_ORDER_CAP = 5000
FULL_AXIOM_LIMIT = 500
SAMPLED_TRIPLES = 100_000
_SAMPLE_SEED = 0x5EED


def order_cap() -> int:
    """Hard cap on constructed group orders; FCIGROUPS_ORDER_CAP overrides."""
    raw = os.environ.get("FCIGROUPS_ORDER_CAP")
    if raw is None or raw == "":
        return DEFAULT_ORDER_CAP
    try:
        return int(raw)
    except ValueError as exc:
        raise ValueError(f"FCIGROUPS_ORDER_CAP must be an integer, got {raw!r}") from exc


class CayleyGroup:
    """A finite group as a dense multiplication table.

    Construction validates the axioms: identity at index 0, two-sided
    inverses, and associativity (exhaustive up to order 500, a fixed-seed
    sample of 100000 triples above).
    """

    def __init__(
        self,
        table: Sequence[Sequence[int]] | np.ndarray,
        labels: Sequence[str] | None = None,
        name: str = "G",
        validate: bool = True,
        cap: int | None = None,
    ) -> None:
        tbl = np.ascontiguousarray(np.asarray(table, dtype=np.int32))
        if tbl.ndim != 2 or tbl.shape[0] != tbl.shape[1]:
            raise ValueError(f"multiplication table must be square, got shape {tbl.shape}")
        n = int(tbl.shape[0])
        if n == 0:
            raise ValueError("group must be non-empty")
        limit = order_cap() if cap is None else cap
        if n > limit:
            raise OrderCapError(f"group order {n} exceeds the cap {limit}")
        if tbl.min() < 0 or tbl.max() >= n:
            raise ValueError("table entries must be element indices")
        self.table = tbl
        self.order = n
        self.name = name
        if labels is not None and len(labels) != n:
            raise ValueError(f"got {len(labels)} labels for {n} elements")
        self.labels = list(labels) if labels is not None else None
        self.inverse = self._find_inverses()
        if validate:
            self._validate()

    def _find_inverses(self) -> np.ndarray:
        rows, cols = np.nonzero(self.table == 0)
        inv = np.full(self.order, -1, dtype=np.int32)
        inv[rows] = cols
        if (inv < 0).any():
            raise ValueError("some element has no right inverse")
        return inv

    def _validate(self) -> None:
        n = self.order
        idx = np.arange(n, dtype=np.int32)
        if not np.array_equal(self.table[0], idx) or not np.array_equal(self.table[:, 0], idx):
            raise ValueError("index 0 is not a two-sided identity")
        if not np.array_equal(self.table[self.inverse, idx], np.zeros(n, dtype=np.int32)):
            raise ValueError("inverses are not two-sided")
        t = self.table
        if n <= FULL_AXIOM_LIMIT:
            for a in range(n):
                if not np.array_equal(t[t[a]], t[a][t]):
                    raise ValueError(f"associativity fails at element {a}")
        else:
            rng = np.random.default_rng(_SAMPLE_SEED ^ n)
            a, b, c = rng.integers(0, n, size=(3, SAMPLED_TRIPLES))
            if not np.array_equal(t[t[a, b], c], t[a, t[b, c]]):
                raise ValueError("associativity fails on sampled triples")

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def elements(self) -> range:
        return range(self.order)

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels is not None else str(x)

    @property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def element_order(self, x: int) -> int:
        k = 1
        y = x
        while y != 0:
            y = int(self.table[y, x])
            k += 1
        return k

    def cyclic_subgroup(self, x: int) -> tuple[int, ...]:
        out = [0]
        y = x
        while y != 0:
            out.append(y)
            y = int(self.table[y, x])
        return tuple(sorted(out))

    def to_text(self) -> str:
        lines = [str(self.order)]
        for row in self.table:
            lines.append(" ".join(str(int(v)) for v in row))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, name: str = "G", validate: bool = True) -> "CayleyGroup":
        rows = [line for line in text.splitlines() if line.strip()]
        if not rows:
            raise ValueError("empty table file")
        n = int(rows[0])
        if len(rows) != n + 1:
            raise ValueError(f"expected {n} table rows, found {len(rows) - 1}")
        table = [[int(v) for v in line.split()] for line in rows[1:]]
        if any(len(r) != n for r in table):
            raise ValueError("ragged table row")
        return cls(table, name=name, validate=validate)

    @classmethod
    def cyclic(cls, n: int, name: str | None = None) -> "CayleyGroup":
        idx = np.arange(n, dtype=np.int32)
        table = (idx[:, None] + idx[None, :]) % n
        return cls(table, name=name or f"C{n}")

    @classmethod
    def direct_product(cls, g: "CayleyGroup", h: "CayleyGroup", name: str | None = None) -> "CayleyGroup":
        hn = h.order
        idx = np.arange(g.order * hn, dtype=np.int32)
        a, b = idx // hn, idx % hn
        table = g.table[np.ix_(a, a)] * hn + h.table[np.ix_(b, b)]
        labels = None
        if g.labels is not None and h.labels is not None:
            labels = [f"({g.labels[x]},{h.labels[y]})" for x, y in zip(a, b)]
        return cls(table, labels=labels, name=name or f"{g.name}x{h.name}")

    @classmethod
    def from_permutations(cls, generators: Iterable[Sequence[int]], name: str = "G") -> "CayleyGroup":
        """Close a set of permutations under composition and index the result.

        Composition convention: (a * b)(x) = a[b[x]]. The identity gets
        index 0; the remaining elements are sorted for determinism.
        """
        gens = [tuple(int(v) for v in g) for g in generators]
        if not gens:
            raise ValueError("need at least one generator")
        degree = len(gens[0])
        if any(len(g) != degree or sorted(g) != list(range(degree)) for g in gens):
            raise ValueError("generators must be permutations of a common domain")
        identity = tuple(range(degree))
        seen = {identity}
        frontier = [identity]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    prod = tuple(a[g[x]] for x in range(degree))
                    if prod not in seen:
                        seen.add(prod)
                        nxt.append(prod)
            frontier = nxt
        elements = [identity] + sorted(seen - {identity})
        index = {e: i for i, e in enumerate(elements)}
        n = len(elements)
        table = np.zeros((n, n), dtype=np.int32)
        for i, a in enumerate(elements):
            for j, b in enumerate(elements):
                table[i, j] = index[tuple(a[b[x]] for x in range(degree))]
        return cls(table, name=name)


def write_table(group: CayleyGroup, path: str | Path) -> None:
    Path(path).write_text(group.to_text(), encoding="utf-8")


def read_table(path: str | Path, name: str | None = None) -> CayleyGroup:
    text = Path(path).read_text(encoding="utf-8")
    return CayleyGroup.from_text(text, name=name or Path(path).stem)


@dataclass(frozen=True)
class SubgroupHandle:
    """A subgroup as a sorted tuple of element indices."""

    elements: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self.elements

    @classmethod
    def from_elements(cls, group: CayleyGroup, elems: Iterable[int]) -> "SubgroupHandle":
        """Build a handle after verifying closure under products and inverses."""
        members = tuple(sorted(set(int(x) for x in elems)))
        mask = np.zeros(group.order, dtype=bool)
        mask[list(members)] = True
        sub = np.array(members, dtype=np.int32)
        if not mask[group.table[np.ix_(sub, sub)]].all():
            raise ValueError("element set is not closed under multiplication")
        if not mask[group.inverse[sub]].all():
            raise ValueError("element set is not closed under inversion")
        if 0 not in members:
            raise ValueError("subgroup must contain the identity")
        return cls(members)


def subgroup_closure(group: CayleyGroup, generators: Iterable[int]) -> tuple[int, ...]:
    """Smallest subgroup containing the generators, as a sorted index tuple."""
    current = np.unique(np.array([0, *generators], dtype=np.int32))
    while True:
        products = group.table[np.ix_(current, current)]
        grown = np.union1d(current, products.ravel())
        if grown.size == current.size:
            return tuple(int(x) for x in current)
        current = grown


def centralizer(group: CayleyGroup, x: int) -> SubgroupHandle:
    """All y with xy = yx: one row/column comparison."""
    members = np.nonzero(group.table[x] == group.table[:, x])[0]
    return SubgroupHandle(tuple(int(v) for v in members))


def center(group: CayleyGroup) -> SubgroupHandle:
    mask = (group.table == group.table.T).all(axis=1)
    return SubgroupHandle(tuple(int(v) for v in np.nonzero(mask)[0]))


def is_normal(group: CayleyGroup, elements: Iterable[int]) -> bool:
    sub = np.array(sorted(set(int(v) for v in elements)), dtype=np.int32)
    mask = np.zeros(group.order, dtype=bool)
    mask[sub] = True
    idx = np.arange(group.order, dtype=np.int32)
    # conj[y, h] = y^-1 h y
    t1 = group.table[np.ix_(group.inverse, sub)]
    conj = group.table[t1, idx[:, None]]
    return bool(mask[conj].all())


def is_normal_cyclic(group: CayleyGroup, x: int) -> bool:
    """Whether <x> is normal: y^-1 x y must fall back into <x> for every y."""
    cyc = group.cyclic_subgroup(x)
    mask = np.zeros(group.order, dtype=bool)
    mask[list(cyc)] = True
    idx = np.arange(group.order, dtype=np.int32)
    conj = group.table[group.table[group.inverse, x], idx]
    return bool(mask[conj].all())


@dataclass(frozen=True)
class KernelSet:
    """The set {x : <x> is normal}, plus whether it is multiplicatively closed."""

    elements: tuple[int, ...]
    is_subgroup: bool


def kernel_set(group: CayleyGroup) -> KernelSet:
    members = tuple(x for x in group.elements() if is_normal_cyclic(group, x))
    sub = np.array(members, dtype=np.int32)
    mask = np.zeros(group.order, dtype=bool)
    mask[sub] = True
    closed = bool(mask[group.table[np.ix_(sub, sub)]].all())
    return KernelSet(members, closed)


def element_order(group: CayleyGroup, x: int) -> int:
    return group.element_order(x)


def conjugacy_classes(group: CayleyGroup) -> list[tuple[int, ...]]:
    idx = np.arange(group.order, dtype=np.int32)
    seen = np.zeros(group.order, dtype=bool)
    classes = []
    for x in group.elements():
        if seen[x]:
            continue
        orbit = np.unique(group.table[group.table[group.inverse, x], idx])
        seen[orbit] = True
        classes.append(tuple(int(v) for v in orbit))
    return classes


def normal_subgroups(group: CayleyGroup) -> list[SubgroupHandle]:
    """Every normal subgroup, generated as joins of conjugacy classes.

    A normal subgroup is the closure of the classes it contains, so a BFS
    that repeatedly joins one more class reaches them all.
    """
    classes = conjugacy_classes(group)
    trivial = (0,)
    seen = {trivial}
    frontier = [trivial]
    while frontier:
        base = frontier.pop()
        base_set = set(base)
        for cls in classes:
            if cls[0] in base_set:
                continue
            grown = subgroup_closure(group, base + cls)
            if grown not in seen:
                seen.add(grown)
                frontier.append(grown)
    return [SubgroupHandle(s) for s in sorted(seen, key=lambda s: (len(s), s))]


def quotient(group: CayleyGroup, normal: SubgroupHandle | Iterable[int]) -> CayleyGroup:
    """Coset group with least-index canonical representatives."""
    elems = normal.elements if isinstance(normal, SubgroupHandle) else tuple(sorted(set(normal)))
    if not is_normal(group, elems):
        raise ValueError("quotient requires a normal subgroup")
    sub = np.array(elems, dtype=np.int32)
    coset_of = np.full(group.order, -1, dtype=np.int32)
    reps = []
    for x in group.elements():
        if coset_of[x] >= 0:
            continue
        members = group.table[x, sub]
        coset_of[members] = len(reps)
        reps.append(x)
    reps_arr = np.array(reps, dtype=np.int32)
    qtable = coset_of[group.table[np.ix_(reps_arr, reps_arr)]]
    labels = None
    if group.labels is not None:
        labels = [f"[{group.labels[r]}]" for r in reps]
    return CayleyGroup(qtable, labels=labels, name=f"{group.name}/N{len(elems)}")


@dataclass(frozen=True)
class Prop22Result:
    """Outcome of the quotient centralizer-index bound check."""

    holds: bool
    max_ratio: float
    checked: int
    witness: tuple[int, int] | None  # (coset index, minimizing representative)


def check_prop22(group: CayleyGroup, normal: SubgroupHandle) -> Prop22Result:
    """Check |C_Q(xN) : <xN>| <= |N| |C_G(x) : <x>| over the quotient Q = G/N.

    For each coset whose image generates a non-normal subgroup, the bound is
    tested against the representative minimizing the right-hand side (the
    binding one; every representative of such a coset generates a non-normal
    subgroup of G).
    """
    q = quotient(group, normal)
    sub = np.array(normal.elements, dtype=np.int32)
    coset_of = np.full(group.order, -1, dtype=np.int32)
    reps: list[int] = []
    for x in group.elements():
        if coset_of[x] >= 0:
            continue
        coset_of[group.table[x, sub]] = len(reps)
        reps.append(x)
    holds = True
    max_ratio = 0.0
    checked = 0
    witness = None
    nn = normal.order
    for xbar in q.elements():
        if is_normal_cyclic(q, xbar):
            continue
        checked += 1
        lhs = centralizer(q, xbar).order // len(q.cyclic_subgroup(xbar))
        members = [x for x in group.elements() if coset_of[x] == xbar]
        rhs_indices = [
            centralizer(group, x).order // len(group.cyclic_subgroup(x))
            for x in members
            if not is_normal_cyclic(group, x)
        ]
        if not rhs_indices:
            continue
        rhs_min = min(rhs_indices)
        ratio = lhs / (nn * rhs_min)
        if ratio > max_ratio:
            max_ratio = ratio
            witness = (xbar, members[rhs_indices.index(rhs_min)])
        if lhs > nn * rhs_min:
            holds = False
    return Prop22Result(holds, max_ratio, checked, witness)


def dih(abelian: CayleyGroup, name: str | None = None) -> CayleyGroup:
    """Generalized dihedral group: A extended by the inverting involution."""
    if not abelian.is_abelian:
        raise ValueError("dih requires an abelian group")
    n = abelian.order
    ta, inv = abelian.table, abelian.inverse
    table = np.zeros((2 * n, 2 * n), dtype=np.int32)
    # (a, s^e)(b, s^f) = (a * b^(+-1), s^(e+f)) with the sign flipped when e = 1
    table[:n, :n] = ta
    table[:n, n:] = ta + n
    table[n:, :n] = ta[:, inv] + n
    table[n:, n:] = ta[:, inv]
    labels = None
    if abelian.labels is not None:
        labels = [*abelian.labels, *(f"s*{lab}" for lab in abelian.labels)]
    return CayleyGroup(table, labels=labels, name=name or f"Dih({abelian.name})")


@dataclass(frozen=True)
class Example21Result:
    """Centralizer profile of a generalized dihedral group.

    `applicable` is False when inversion is trivial (exponent <= 2) and the
    construction is abelian. Otherwise the outside elements must be exactly
    the ones generating non-normal subgroups, each with centralizer of order
    twice the 2-torsion count of A.
    """

    applicable: bool
    non_normal_iff_outside: bool = True
    centralizer_orders_match: bool = True
    two_torsion: int = 0
    checked_outside: int = 0


def check_example21(abelian: CayleyGroup) -> Example21Result:
    if not abelian.is_abelian:
        raise ValueError("check_example21 requires an abelian group")
    n = abelian.order
    if all(abelian.element_order(x) <= 2 for x in abelian.elements()):
        return Example21Result(applicable=False)
    g = dih(abelian)
    two_torsion = sum(1 for x in abelian.elements() if abelian.table[x, x] == 0)
    iff_ok = True
    orders_ok = True
    for x in g.elements():
        inside = x < n
        if is_normal_cyclic(g, x) != inside:
            iff_ok = False
        if not inside and centralizer(g, x).order != 2 * two_torsion:
            orders_ok = False
    return Example21Result(True, iff_ok, orders_ok, two_torsion, n)


# ---------------------------------------------------------------------------
# The quaternion group and its automorphisms.

Q8_LABELS = ("1", "-1", "i", "-i", "j", "-j", "k", "-k")


def _build_q8_table() -> np.ndarray:
    # index = 2 * axis + sign, axes ordered (1, i, j, k)
    pos = {(1, 2): (3, 0), (2, 3): (1, 0), (3, 1): (2, 0)}
    neg = {(b, a): (c, 1) for (a, b), (c, _) in pos.items()}
    axis_mul = {**pos, **neg}
    table = np.zeros((8, 8), dtype=np.int32)
    for x in range(8):
        ax, sx = divmod(x, 2)
        for y in range(8):
            ay, sy = divmod(y, 2)
            if ax == 0:
                az, s = ay, 0
            elif ay == 0:
                az, s = ax, 0
            elif ax == ay:
                az, s = 0, 1
            else:
                az, s = axis_mul[(ax, ay)]
            table[x, y] = 2 * az + (sx ^ sy ^ s)
    return table


Q8_TABLE = _build_q8_table()


def q8_group() -> CayleyGroup:
    return CayleyGroup(Q8_TABLE, labels=list(Q8_LABELS), name="Q8")


@dataclass(frozen=True)
class Q8AutomorphismReport:
    automorphisms: tuple[tuple[int, ...], ...]
    power_automorphisms: tuple[tuple[int, ...], ...]
    inner_automorphisms: tuple[tuple[int, ...], ...]

    @property
    def aut_count(self) -> int:
        return len(self.automorphisms)

    @property
    def power_equals_inner(self) -> bool:
        return set(self.power_automorphisms) == set(self.inner_automorphisms)


def q8_automorphisms() -> Q8AutomorphismReport:
    """Enumerate Aut(Q8) by filtering all identity-fixing bijections.

    5040 candidates, each checked against the full table, so the counts are
    an oracle rather than a consequence of any structure theory. Power
    automorphisms send every element into its own cyclic subgroup; inner
    ones come from conjugation.
    """
    g = q8_group()
    tbl = g.table
    cyclic = [set(g.cyclic_subgroup(x)) for x in g.elements()]
    auts = []
    for rest in permutations(range(1, 8)):
        perm = np.array((0, *rest), dtype=np.int32)
        if np.array_equal(perm[tbl], tbl[np.ix_(perm, perm)]):
            auts.append(tuple(int(v) for v in perm))
    power = tuple(a for a in auts if all(a[x] in cyclic[x] for x in g.elements()))
    inner = set()
    idx = np.arange(8, dtype=np.int32)
    for h in g.elements():
        conj = tbl[tbl[g.inv(h), idx], h]
        inner.add(tuple(int(v) for v in conj))
    return Q8AutomorphismReport(tuple(auts), power, tuple(sorted(inner)))


# ---------------------------------------------------------------------------
# Derived series and the soluble-order spot check.


def _derived_within(group: CayleyGroup, elements: tuple[int, ...]) -> tuple[int, ...]:
    """Closure of all commutators [a, b] with a, b drawn from `elements`."""
    sub = np.array(elements, dtype=np.int32)
    inv = group.inverse[sub]
    left = group.table[np.ix_(inv, inv)]
    pairs = group.table[np.ix_(sub, sub)]
    comms = group.table[left, pairs]
    return subgroup_closure(group, np.unique(comms))


def _sub_table(group: CayleyGroup, elements: tuple[int, ...]) -> np.ndarray:
    return group.table[np.ix_(elements, elements)]


def derived_subgroup(group: CayleyGroup) -> SubgroupHandle:
    return SubgroupHandle(_derived_within(group, tuple(group.elements())))


def is_metabelian(group: CayleyGroup) -> bool:
    der = derived_subgroup(group)
    sub = _sub_table(group, der.elements)
    return bool(np.array_equal(sub, sub.T))


def is_cyclic(group: CayleyGroup) -> bool:
    return any(group.element_order(x) == group.order for x in group.elements())


def is_soluble(group: CayleyGroup) -> bool:
    current = tuple(group.elements())
    while True:
        if len(current) == 1:
            return True
        sub = _sub_table(group, current)
        if np.array_equal(sub, sub.T):
            return True
        nxt = _derived_within(group, current)
        if nxt == current:
            return False
        current = nxt


def check_lucido(group: CayleyGroup) -> bool | None:
    """With >= 3 primes dividing a soluble order, look for an element of order pq.

    Returns None (not applicable) for insoluble groups or orders with fewer
    than three prime factors, True/False otherwise.
    """
    primes = distinct_prime_factors(group.order)
    if len(primes) < 3 or not is_soluble(group):
        return None
    targets = {
        p * q for i, p in enumerate(primes) for q in primes[i + 1 :]
    }
    return any(group.element_order(x) in targets for x in group.elements())


# ---------------------------------------------------------------------------
# Generated catalog of small soluble groups.


def abelian_group(orders: Sequence[int], name: str | None = None) -> CayleyGroup:
    """Direct product of cyclic groups of the given orders."""
    if not orders:
        raise ValueError("need at least one cyclic factor")
    g = CayleyGroup.cyclic(orders[0])
    for n in orders[1:]:
        g = CayleyGroup.direct_product(g, CayleyGroup.cyclic(n))
    g.name = name or "x".join(f"C{n}" for n in orders)
    return g


def catalog(max_order: int = 200) -> list[CayleyGroup]:
    """Deterministic soluble-group catalog, built entirely from constructors.

    Mixes cyclic groups, abelian products, generalized dihedral groups,
    quaternion products, and finite truncations of the bundled extension
    specs; filtered to the requested order.
    """
    from .dedekind import TruncationParams  # late imports avoid a module cycle
    from .extension import ExtensionTruncation
    from .specio import BUNDLED_FCI, load_bundled

    groups: list[CayleyGroup] = []
    for n in (2, 3, 4, 5, 6, 8, 9, 12, 16, 30, 60, 105, 210):
        groups.append(CayleyGroup.cyclic(n))
    for orders in ((2, 2), (2, 4), (2, 6), (3, 3), (2, 2, 2), (2, 2, 3), (3, 9)):
        groups.append(abelian_group(orders))
    for base in ((3,), (4,), (5,), (6,), (8,), (9,), (12,), (15,), (2, 4), (3, 3), (105,)):
        groups.append(dih(abelian_group(base)))
    q8 = q8_group()
    groups.append(q8)
    for orders in ((3,), (5,), (7,), (9,), (15,)):
        groups.append(CayleyGroup.direct_product(q8, abelian_group(orders)))
    s3 = dih(abelian_group((3,)))
    groups.append(CayleyGroup.direct_product(s3, CayleyGroup.cyclic(5), name="S3xC5"))
    trunc_plan = (
        ("z5_teichmuller4", 1, 0),
        ("z5_teichmuller4", 2, 0),
        ("z2_inversion_split", 2, 0),
        ("z2_inversion_split", 3, 0),
        ("z2_inversion_fiber", 2, 0),
        ("z2_inversion_fiber", 3, 0),
        ("q8_z3_inversion", 1, 0),
        ("mixed_pi0", 1, 0),
        ("tail_mod4", 1, 1),
        ("tail_mod4", 1, 2),
    )
    for name, depth, tails in trunc_plan:
        spec = load_bundled(name)
        ext = ExtensionTruncation(spec, TruncationParams(depth, tails))
        if ext.order <= max_order:
            g = ext.cayley(name=f"{name}[d{depth},t{tails}]")
            groups.append(g)
            if name == "z5_teichmuller4" and depth == 1 and g.order * 3 <= max_order:
                groups.append(
                    CayleyGroup.direct_product(g, CayleyGroup.cyclic(3), name="F20xC3")
                )
    return [g for g in groups if g.order <= max_order]
