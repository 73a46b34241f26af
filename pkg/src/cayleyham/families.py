"""Concrete families of non-traceable and non-hamiltonian Cayley digraphs."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .catalog import A4, build_entry, catalog
from .errors import BadPrime, ConditionFailed, PreconditionFailed
from .groups import (
    Cyclic,
    DirectProduct,
    FiniteGroup,
    GroupSpec,
    SemidirectCyclic,
    SemidirectMetacyclic,
    build_group,
    commutator_subgroup,
    is_prime,
    perm_from_cycles,
    smallest_primitive_root,
    subgroup_generated,
)


@dataclass
class FamilyInstance:
    """A group spec together with generators given by their coordinates."""

    name: str
    spec: GroupSpec
    generators: tuple  # coordinate tuples
    strict: bool = True
    params: dict = field(default_factory=dict)

    def build(self) -> tuple[FiniteGroup, list[int]]:
        G = build_group(self.spec, strict=self.strict)
        G.name = self.name
        return G, [G.index(c) for c in self.generators]


# ---------------------------------------------------------------------------
# (Z_alpha x Z_beta) ⋉ Z_p


def _choose_alpha_beta(p: int, n: int, coprime: bool) -> tuple[int, int]:
    half = (p - 1) // 2
    alpha = n + 1 + (n + 1) % 2
    while coprime and math.gcd(alpha, half) != 1:
        alpha += 2
    beta = half * (n // half + 1)
    while coprime and math.gcd(alpha, beta) != 1:
        beta += half
    return alpha, beta


def theorem13_family(p: int, n: int, *, unsafe_any_prime: bool = False) -> FamilyInstance:
    """``(Z_alpha x Z_beta) ⋉ Z_p`` with ``a = abar z``, ``b = bbar z``; no hamiltonian path
    and both generators of order greater than ``n``.

    ``alpha``, ``beta`` and the primitive root ``r`` are the smallest values
    meeting the constraints.  With ``unsafe_any_prime`` any odd prime is
    accepted and the coprimality constraints are dropped where they cannot
    hold; the result is then just a group to search, not a theorem instance.
    """
    if n < 1:
        raise PreconditionFailed("n must be positive")
    if not is_prime(p) or p <= 3 or (p % 4 != 3 and not unsafe_any_prime):
        if not (unsafe_any_prime and is_prime(p) and p > 2):
            raise BadPrime(f"need a prime p > 3 with p = 3 mod 4, got {p}")
    half = (p - 1) // 2
    coprime = half % 2 == 1  # an even alpha prime to (p-1)/2 needs (p-1)/2 odd
    alpha, beta = _choose_alpha_beta(p, n, coprime)
    r = smallest_primitive_root(p)
    strict = coprime
    spec = SemidirectMetacyclic(alpha, beta, p, r)
    inst = FamilyInstance(f"(Z{alpha} x Z{beta}) ⋉ Z{p}", spec, ((1, 0, 1), (0, 1, 1)), strict,
                          {"p": p, "n": n, "alpha": alpha, "beta": beta, "r": r})
    if not unsafe_any_prime:
        check_theorem13(inst)
    return inst


def check_theorem13(inst: FamilyInstance) -> None:
    """Assert the emitted instance meets the theorem's hypotheses."""
    P = inst.params
    p, n, alpha, beta = P["p"], P["n"], P["alpha"], P["beta"]
    half = (p - 1) // 2
    assert p % 4 == 3 and alpha % 2 == 0 and alpha > n and beta > n and beta % half == 0
    assert math.gcd(alpha, half) == 1 and math.gcd(alpha, beta) == 1
    G, (a, b) = inst.build()
    assert G.element_order(a) == alpha and G.element_order(b) == beta
    assert subgroup_generated(G, [a, b]).is_whole
    assert commutator_subgroup(G).order == p


def g5_example() -> FamilyInstance:
    """``Z_12 ⋉ Z_5`` with ``z^h = z^3``, ``a = h^2 z`` and ``b = h^3 z``."""
    spec = SemidirectCyclic(12, 5, 3)
    return FamilyInstance("Z12 ⋉ Z5", spec, ((2, 1), (3, 1)))


def a4z2_example() -> FamilyInstance:
    """``A_4 x Z_2`` with ``a = ((1 2)(3 4), 1)`` and ``b = ((1 2 3), 0)``."""
    spec = DirectProduct((A4, Cyclic(2)))
    a = perm_from_cycles(4, [(1, 2), (3, 4)]) + (1,)
    b = perm_from_cycles(4, [(1, 2, 3)]) + (0,)
    return FamilyInstance("A4 x Z2", spec, (a, b))


# ---------------------------------------------------------------------------
# Milnor's criterion


@dataclass
class MilnorInstance:
    name: str
    spec: GroupSpec
    a: int  # element indices in the built group
    b: int
    ab2_order: int


def milnor_instances(max_order: int) -> list[MilnorInstance]:
    """Catalog pairs with ``a^2 = b^3 = e``, ``<a, b> = G`` and ``|G| >= 9|ab^2|``."""
    out = []
    for entry in catalog(max_order):
        if entry.order < 9:
            continue
        G = build_entry(entry)
        invols = [g for g in range(G.order) if G.element_order(g) == 2]
        thirds = [g for g in range(G.order) if G.element_order(g) == 3]
        for a in invols:
            for b in thirds:
                m = G.element_order(G.mul(a, G.mul(b, b)))
                if G.order < 9 * m:
                    continue
                if subgroup_generated(G, [a, b]).is_whole:
                    out.append(MilnorInstance(entry.name, entry.spec, a, b, m))
    return out


# ---------------------------------------------------------------------------
# cyclic groups with three generators


def locke_witte_12k(k: int) -> FamilyInstance:
    """``Cay(Z_12k; 6k, 6k+2, 6k+3)``, which has no hamiltonian cycle."""
    if k < 1:
        raise PreconditionFailed("k must be positive")
    n = 12 * k
    return FamilyInstance(f"Z{n}", Cyclic(n), ((6 * k,), (6 * k + 2,), (6 * k + 3,)), params={"k": k})


def locke_witte_conditions(a: int, b: int, k: int) -> list[str]:
    """The clauses among (i)-(v) that ``(a, b, k)`` violates."""
    bad = []
    if a % 2 == 0 and k % 2 == 0:
        bad.append("i")
    if not (a % 2 == 0 or (b % 2 == 0 and k % 2 == 0)):
        bad.append("ii")
    if math.gcd(a - b, k) != 1:
        bad.append("iii")
    if math.gcd(a, 2 * k) == 1:
        bad.append("iv")
    if math.gcd(b, k) == 1:
        bad.append("v")
    return bad


_CLAUSE_TEXT = {
    "i": "either a or k is odd",
    "ii": "either a is even or b and k are both even",
    "iii": "gcd(a - b, k) = 1",
    "iv": "gcd(a, 2k) != 1",
    "v": "gcd(b, k) != 1",
}


def locke_witte_2k(a: int, b: int, k: int) -> FamilyInstance:
    """``Cay(Z_2k; a, b, b+k)`` after checking all five side conditions."""
    if min(a, b, k) < 1:
        raise PreconditionFailed("a, b, k must be positive integers")
    n = 2 * k
    gens = [a % n, b % n, (b + k) % n]
    if len(set(gens)) != 3 or 0 in gens:
        raise PreconditionFailed("a, b, b+k must be distinct and nonzero mod 2k")
    bad = locke_witte_conditions(a, b, k)
    if bad:
        raise ConditionFailed(bad[0], f"condition ({bad[0]}) fails: {_CLAUSE_TEXT[bad[0]]}")
    return FamilyInstance(f"Z{n}", Cyclic(n), tuple((g,) for g in gens), params={"a": a, "b": b, "k": k})


def smallest_locke_witte_2k(max_k: int = 12) -> FamilyInstance | None:
    """The first connected instance by ``k``, then ``a``, then ``b`` (all in ``1..2k-1``)."""
    for k in range(1, max_k + 1):
        n = 2 * k
        for a in range(1, n):
            for b in range(1, n):
                try:
                    inst = locke_witte_2k(a, b, k)
                except (ConditionFailed, PreconditionFailed):
                    continue
                if math.gcd(math.gcd(a, b), math.gcd(k, n)) == 1:
                    return inst
    return None
