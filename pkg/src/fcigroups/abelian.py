"""Exact arithmetic for abelian p-groups and the unit groups of Z/p^n Z."""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

__all__ = [
    "AbelianPComponent",
    "AbelianPVector",
    "FiniteAbelianPGroup",
    "UnitResidue",
    "fixed_subgroup_order",
    "is_prime",
    "multiplicative_order",
    "omega1_order",
    "teichmuller_lift",
    "unit_order",
]


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test; all inputs here are desk scale."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def distinct_prime_factors(n: int) -> list[int]:
    out: list[int] = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


def multiplicative_order(value: int, modulus: int, group_order: int) -> int:
    """Order of `value` in (Z/modulus)^x, given the order of that unit group.

    Starts from `group_order` and strips prime factors while the power still
    evaluates to 1, so only O(log) modular exponentiations are needed.
    """
    if pow(value, group_order, modulus) != 1:
        raise ValueError(f"{value} is not a unit of order dividing {group_order} mod {modulus}")
    order = group_order
    for q in distinct_prime_factors(group_order):
        while order % q == 0 and pow(value, order // q, modulus) == 1:
            order //= q
    return order


def padic_valuation_capped(x: int, p: int, cap: int) -> int:
    """v_p(x) truncated at `cap`; x = 0 counts as at least `cap`."""
    if x == 0:
        return cap
    v = 0
    while v < cap and x % p == 0:
        x //= p
        v += 1
    return v


@dataclass(frozen=True)
class UnitResidue:
    """A unit of Z/p^n Z: the modulus exponent n and a reduced representative.

    The prime itself is supplied by the operations that consume the residue.
    """

    modulus_exponent: int
    value: int

    @classmethod
    def of(cls, value: int, p: int, modulus_exponent: int) -> "UnitResidue":
        if not is_prime(p):
            raise ValueError(f"p must be prime, got {p}")
        if modulus_exponent < 1:
            raise ValueError(f"modulus exponent must be positive, got {modulus_exponent}")
        v = value % p**modulus_exponent
        if v % p == 0:
            raise ValueError(f"{value} is not a unit modulo {p}^{modulus_exponent}")
        return cls(modulus_exponent, v)


def unit_order(t: UnitResidue, p: int) -> int:
    """Multiplicative order of t mod p^n; always divides p^(n-1) (p-1)."""
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    n = t.modulus_exponent
    if n < 1:
        raise ValueError(f"modulus exponent must be positive, got {n}")
    pn = p**n
    v = t.value % pn
    if v % p == 0:
        raise ValueError(f"{t.value} is not a unit modulo {p}^{n}")
    return multiplicative_order(v, pn, p ** (n - 1) * (p - 1))


def teichmuller_lift(t0: int, p: int, depth: int) -> UnitResidue:
    """The torsion unit of Z/p^depth Z reducing to t0 modulo p (p odd).

    Computed by iterating the Frobenius x -> x^p until it stabilises. The
    result keeps the multiplicative order of t0 mod p, a divisor of p - 1,
    and is fixed by one further Frobenius step.
    """
    if p == 2:
        raise ValueError("p = 2 has no odd-style torsion lift; use the identity/inversion labels")
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if depth < 1:
        raise ValueError(f"depth must be positive, got {depth}")
    pn = p**depth
    x = t0 % pn
    if x % p == 0:
        raise ValueError(f"{t0} is not a unit modulo {p}")
    for _ in range(depth + 1):
        y = pow(x, p, pn)
        if y == x:
            return UnitResidue(depth, x)
        x = y
    raise RuntimeError(f"Frobenius iteration failed to stabilise mod {p}^{depth}")


@dataclass(frozen=True)
class FiniteAbelianPGroup:
    """A finite abelian p-group as an explicit direct sum of cyclic summands.

    Summand order is positional (coordinates are read slot by slot), so the
    exponent list need not be sorted; truncations of symbolic components keep
    their cyclic summands first and the truncated quasicyclic ones after.
    """

    p: int
    exponents: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "exponents", tuple(int(e) for e in self.exponents))
        if not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        if any(e < 1 for e in self.exponents):
            raise ValueError(f"summand exponents must be positive, got {self.exponents}")

    @property
    def order(self) -> int:
        return self.p ** sum(self.exponents)

    @property
    def exponent(self) -> int:
        return self.p ** max(self.exponents) if self.exponents else 1

    @property
    def rank(self) -> int:
        return len(self.exponents)

    @property
    def moduli(self) -> tuple[int, ...]:
        return tuple(self.p**e for e in self.exponents)


@dataclass(frozen=True)
class AbelianPVector:
    """A concrete element of a FiniteAbelianPGroup, one coordinate per summand."""

    component: FiniteAbelianPGroup
    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))
        if len(self.coords) != self.component.rank:
            raise ValueError(
                f"expected {self.component.rank} coordinates, got {len(self.coords)}"
            )
        for c, mod in zip(self.coords, self.component.moduli):
            if not 0 <= c < mod:
                raise ValueError(f"coordinate {c} out of range [0, {mod})")

    @classmethod
    def reduce(cls, component: FiniteAbelianPGroup, coords: tuple[int, ...]) -> "AbelianPVector":
        return cls(component, tuple(c % m for c, m in zip(coords, component.moduli)))


def omega1_order(group: FiniteAbelianPGroup) -> int:
    """Order of the subgroup generated by the elements of order p: p^rank."""
    return group.p**group.rank


def fixed_subgroup_order(group: FiniteAbelianPGroup, t: UnitResidue, k: int) -> int:
    """Order of {a : a^(t^k) = a}, which is prod_i gcd(t^k - 1, p^(e_i)).

    The gcd factors are read off the p-adic valuation of t^k - 1 computed
    modulo exp(A), so huge powers never materialise. k = 0 is accepted and
    returns the full group order (identity automorphism).
    """
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    if not group.exponents:
        return 1
    p = group.p
    e1 = max(group.exponents)
    if t.modulus_exponent < e1:
        raise ValueError(
            f"unit is given mod {p}^{t.modulus_exponent} but the group has exponent {p}^{e1}"
        )
    pe = p**e1
    value = t.value % pe
    if value % p == 0:
        raise ValueError(f"{t.value} is not a unit modulo {p}^{e1}")
    s = pow(value, k, pe)
    v = padic_valuation_capped((s - 1) % pe, p, e1)
    return prod(p ** min(v, e) for e in group.exponents)


@dataclass(frozen=True)
class AbelianPComponent:
    """Symbolic abelian p-group: cyclic invariant factors plus quasicyclic summands.

    `cyclic_exponents` must be positive and non-increasing; `quasicyclic_count`
    counts direct summands isomorphic to the Pruefer p-group, which are never
    materialised and only become cyclic groups of order p^depth on truncation.
    """

    p: int
    cyclic_exponents: tuple[int, ...] = ()
    quasicyclic_count: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "cyclic_exponents", tuple(int(e) for e in self.cyclic_exponents)
        )
        if not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        exps = self.cyclic_exponents
        if any(e < 1 for e in exps):
            raise ValueError(f"cyclic exponents must be positive, got {exps}")
        if any(exps[i] < exps[i + 1] for i in range(len(exps) - 1)):
            raise ValueError(f"cyclic exponents must be non-increasing, got {exps}")
        if self.quasicyclic_count < 0:
            raise ValueError(f"quasicyclic count must be non-negative, got {self.quasicyclic_count}")
        if not exps and self.quasicyclic_count == 0:
            raise ValueError("component must contain at least one summand")

    @property
    def rank(self) -> int:
        return len(self.cyclic_exponents) + self.quasicyclic_count

    @property
    def is_finite(self) -> bool:
        return self.quasicyclic_count == 0

    @property
    def order(self) -> int | None:
        """Group order, or None when a quasicyclic summand makes it infinite."""
        if not self.is_finite:
            return None
        return self.p ** sum(self.cyclic_exponents)

    @property
    def exponent(self) -> int | None:
        """Group exponent, or None when infinite."""
        if not self.is_finite:
            return None
        return self.p ** max(self.cyclic_exponents)

    def truncate(self, depth: int) -> FiniteAbelianPGroup:
        """Replace each quasicyclic summand by a cyclic group of order p^depth."""
        if depth < 1:
            raise ValueError(f"truncation depth must be positive, got {depth}")
        return FiniteAbelianPGroup(
            self.p, self.cyclic_exponents + (depth,) * self.quasicyclic_count
        )
