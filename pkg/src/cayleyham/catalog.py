"""A catalog of small groups given as specs, plus helpers for sweeping generating sets.

The catalog is a practical census, not a classification: every abelian group,
every split metacyclic group ``Z_m ⋉ Z_n``, the dicyclic groups, the
``(2,3,6)``-quotients ``Z_6 ⋉ Z[w]/(alpha)``, and a list of named groups and
direct products.  Entries that agree on a strong isomorphism invariant are
listed once.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .groups import (
    Cyclic,
    DirectProduct,
    FiniteGroup,
    GroupSpec,
    Permutation,
    SemidirectCyclic,
    Table,
    build_group,
    commutator_subgroup,
    is_prime,
    perm_from_cycles,
    subgroup_generated,
)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    spec: GroupSpec
    order: int

    def build(self) -> FiniteGroup:
        G = build_group(self.spec)
        G.name = self.name
        return G


# ---------------------------------------------------------------------------
# abelian groups


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _partitions(k: int, largest: int | None = None) -> Iterator[tuple]:
    largest = k if largest is None else largest
    if k == 0:
        yield ()
        return
    for first in range(min(k, largest), 0, -1):
        for rest in _partitions(k - first, first):
            yield (first,) + rest


def abelian_invariants(n: int) -> list[tuple]:
    """Invariant factor lists ``(d_1 | d_2 | ... )`` of every abelian group of order n."""
    if n == 1:
        return [(1,)]
    per_prime = [[(p, part) for part in _partitions(e)] for p, e in sorted(_factorize(n).items())]
    out = []
    for choice in itertools.product(*per_prime):
        rank = max(len(part) for _, part in choice)
        factors = [1] * rank
        for p, part in choice:
            for i, e in enumerate(part):
                factors[rank - 1 - i] *= p**e
        out.append(tuple(factors))
    return sorted(out, key=lambda f: (len(f), f))


def abelian_spec(factors: Sequence[int]) -> GroupSpec:
    factors = [f for f in factors if f > 1] or [1]
    if len(factors) == 1:
        return Cyclic(factors[0])
    return DirectProduct(tuple(Cyclic(f) for f in factors))


def abelian_name(factors: Sequence[int]) -> str:
    return " x ".join(f"Z{f}" for f in factors)


def abelian_groups(max_order: int, min_order: int = 1) -> list[CatalogEntry]:
    return [CatalogEntry(abelian_name(f), abelian_spec(f), n)
            for n in range(min_order, max_order + 1) for f in abelian_invariants(n)]


# ---------------------------------------------------------------------------
# metacyclic and other constructions


def _units(n: int) -> list[int]:
    return [u for u in range(1, n) if math.gcd(u, n) == 1]


def metacyclic_spec(m: int, n: int, u: int) -> GroupSpec:
    """``Z_m ⋉ Z_n`` with ``z^h = z^u``; uses the native spec when n is an odd prime.

    Otherwise it is the permutation group on ``Z_n ⊔ Z_m`` generated by
    ``h: (x, y) -> (u x, y + 1)`` and ``z: (x, y) -> (x + 1, y)``.
    """
    if is_prime(n) and n > 2:
        return SemidirectCyclic(m, n, u % n)
    deg = n + m
    h = tuple([x * u % n for x in range(n)] + [n + (y + 1) % m for y in range(m)])
    z = tuple([(x + 1) % n for x in range(n)] + [n + y for y in range(m)])
    return Permutation(deg, (h, z))


def metacyclic_groups(max_order: int) -> list[CatalogEntry]:
    out = []
    for n in range(3, max_order + 1):
        for m in range(2, max_order // n + 1):
            seen = set()
            for u in _units(n):
                if u == 1 or pow(u, m, n) != 1:
                    continue
                cyc = frozenset(pow(u, i, n) for i in range(m))
                if cyc in seen:
                    continue
                seen.add(cyc)
                out.append(CatalogEntry(f"Z{m} x|_{u} Z{n}", metacyclic_spec(m, n, u), m * n))
    return out


def dicyclic_spec(n: int) -> Table:
    """``Dic_n`` of order 4n: ``x^(2n) = e``, ``y^2 = x^n``, ``x^y = x^-1``; element ``x^i y^j`` is ``2n j + i``."""
    N = 2 * n
    order = 2 * N

    def mul(g: int, h: int) -> int:
        j1, i1 = divmod(g, N)
        j2, i2 = divmod(h, N)
        i = (i1 + (i2 if j1 == 0 else -i2)) % N
        if j1 and j2:
            i = (i + n) % N
            return i
        return (j1 ^ j2) * N + i

    table = tuple(tuple(mul(g, h) for h in range(order)) for g in range(order))
    return Table(order, table)


def _hnf2(v1: tuple, v2: tuple) -> tuple[int, int, int]:
    """Hermite form (d1, t, d2) of the lattice spanned by two integer vectors in Z^2,
    with basis (d1, t), (0, d2)."""
    (a, b), (c, d) = v1, v2

    def egcd(x, y):
        if y == 0:
            return (x, 1, 0) if x >= 0 else (-x, -1, 0)
        g, s, t = egcd(y, x % y)
        return g, t, s - (x // y) * t

    g, s, t = egcd(a, c)
    row1 = (g, s * b + t * d)
    det = abs(a * d - b * c)
    d2 = det // g
    return g, row1[1] % d2 if d2 else row1[1], d2


def eisenstein_quotient_spec(x: int, y: int) -> Table:
    """``Z_6 ⋉ Z[w]/(x + y w)``, with the generator of Z_6 acting as multiplication by ``1 + w``.

    These are the finite quotients of the (2,3,6) triangle group.
    """
    d1, t, d2 = _hnf2((x, y), (-y, x - y))
    A = d1 * d2

    def reduce(p: int, q: int) -> int:
        k = p // d1
        p, q = p - k * d1, (q - k * t) % d2
        return p * d2 + q

    reps = [(p, q) for p in range(d1) for q in range(d2)]
    rot = [reduce(p - q, p) for p, q in reps]  # (p + q w)(1 + w) = (p - q) + p w
    rotp = [list(range(A))]
    for _ in range(5):
        rotp.append([rot[v] for v in rotp[-1]])
    add = [[reduce(p1 + p2, q1 + q2) for (p2, q2) in reps] for (p1, q1) in reps]
    order = 6 * A

    def mul(g: int, h: int) -> int:
        c1, v1 = divmod(g, A)
        c2, v2 = divmod(h, A)
        return ((c1 + c2) % 6) * A + add[rotp[c2][v1]][v2]

    return Table(order, tuple(tuple(mul(g, h) for h in range(order)) for g in range(order)))


def eisenstein_quotients(max_order: int) -> list[CatalogEntry]:
    out = []
    seen = set()
    bound = max_order // 6
    for x in range(0, bound + 2):
        for y in range(-bound - 1, bound + 2):
            N = x * x - x * y + y * y
            if not 2 <= N <= bound:
                continue
            key = _hnf2((x, y), (-y, x - y))
            if key in seen:
                continue
            seen.add(key)
            out.append(CatalogEntry(f"Z6 x| Z[w]/({x}{y:+d}w)", eisenstein_quotient_spec(x, y), 6 * N))
    return out


def _perm(deg: int, *cycles) -> tuple:
    return perm_from_cycles(deg, cycles)


S3 = Permutation(3, (_perm(3, (1, 2)), _perm(3, (1, 2, 3))))
A4 = Permutation(4, (_perm(4, (1, 2), (3, 4)), _perm(4, (1, 2, 3))))
S4 = Permutation(4, (_perm(4, (1, 2)), _perm(4, (1, 2, 3, 4))))
A5 = Permutation(5, (_perm(5, (1, 2), (3, 4)), _perm(5, (1, 3, 5))))
D4 = Permutation(4, (_perm(4, (1, 2, 3, 4)), _perm(4, (1, 3))))
# SL(2,3) acting on the 8 nonzero vectors of F_3^2
_F3_VECTORS = [(x, y) for x in range(3) for y in range(3) if (x, y) != (0, 0)]


def _matrix_perm(M) -> tuple:
    idx = {v: i for i, v in enumerate(_F3_VECTORS)}
    return tuple(idx[((M[0][0] * x + M[0][1] * y) % 3, (M[1][0] * x + M[1][1] * y) % 3)] for x, y in _F3_VECTORS)


SL23 = Permutation(8, (_matrix_perm(((1, 1), (0, 1))), _matrix_perm(((1, 0), (1, 1)))))

NAMED: list[tuple[str, GroupSpec]] = [
    ("S3", S3),
    ("D4", D4),
    ("A4", A4),
    ("S4", S4),
    ("A5", A5),
    ("SL(2,3)", SL23),
    ("A4 x Z2", DirectProduct((A4, Cyclic(2)))),
    ("A4 x Z3", DirectProduct((A4, Cyclic(3)))),
    ("A4 x Z4", DirectProduct((A4, Cyclic(4)))),
    ("A4 x Z2 x Z2", DirectProduct((A4, Cyclic(2), Cyclic(2)))),
    ("A4 x Z5", DirectProduct((A4, Cyclic(5)))),
    ("A4 x Z6", DirectProduct((A4, Cyclic(6)))),
    ("S4 x Z2", DirectProduct((S4, Cyclic(2)))),
    ("S4 x Z3", DirectProduct((S4, Cyclic(3)))),
    ("SL(2,3) x Z2", DirectProduct((SL23, Cyclic(2)))),
    ("S3 x S3", DirectProduct((S3, S3))),
    ("S3 x A4", DirectProduct((S3, A4))),
    ("D4 x S3", DirectProduct((D4, S3))),
    ("S3 x Z2 x Z2", DirectProduct((S3, Cyclic(2), Cyclic(2)))),
    ("D4 x Z2", DirectProduct((D4, Cyclic(2)))),
    ("D4 x Z3", DirectProduct((D4, Cyclic(3)))),
    ("D4 x Z2 x Z2", DirectProduct((D4, Cyclic(2), Cyclic(2)))),
    ("Q8 x Z2", DirectProduct((dicyclic_spec(2), Cyclic(2)))),
    ("Q8 x Z3", DirectProduct((dicyclic_spec(2), Cyclic(3)))),
    ("S3 x Z4", DirectProduct((S3, Cyclic(4)))),
    ("S3 x Z6", DirectProduct((S3, Cyclic(6)))),
    ("S3 x Z3 x Z3", DirectProduct((S3, Cyclic(3), Cyclic(3)))),
    ("D4 x Z4", DirectProduct((D4, Cyclic(4)))),
    ("D4 x Z5", DirectProduct((D4, Cyclic(5)))),
    ("D4 x Z6", DirectProduct((D4, Cyclic(6)))),
    ("Q8 x Z4", DirectProduct((dicyclic_spec(2), Cyclic(4)))),
    ("Q8 x Z6", DirectProduct((dicyclic_spec(2), Cyclic(6)))),
    ("S3 x D4", DirectProduct((S3, D4))),
    ("S3 x Q8", DirectProduct((S3, dicyclic_spec(2)))),
]


def invariant(G: FiniteGroup) -> tuple:
    """A strong isomorphism invariant used to drop duplicate catalog entries."""
    orders = G.element_orders
    T = G.table
    centralizer = (T == T.T).sum(axis=1).tolist()
    profile = sorted(zip(orders, centralizer))
    sq = sorted(orders[G.mul(g, g)] for g in range(G.order))
    return (G.order, G.is_abelian, commutator_subgroup(G).order, tuple(profile), tuple(sq))


@lru_cache(maxsize=None)
def catalog(max_order: int) -> tuple[CatalogEntry, ...]:
    """Catalog groups of order at most ``max_order``, sorted by order then name, without repeats."""
    cands: list[CatalogEntry] = []
    for name, spec in NAMED:
        G = build_group(spec)
        if G.order <= max_order:
            cands.append(CatalogEntry(name, spec, G.order))
    cands += abelian_groups(max_order)
    cands += metacyclic_groups(max_order)
    cands += [CatalogEntry(f"Dic{n}", dicyclic_spec(n), 4 * n) for n in range(2, max_order // 4 + 1)]
    cands += eisenstein_quotients(max_order)
    out = []
    seen = set()
    # stable sort: named groups come first and win ties
    for entry in sorted(cands, key=lambda e: e.order):
        key = invariant(entry.build())
        if key in seen:
            continue
        seen.add(key)
        out.append(entry)
    return tuple(sorted(out, key=lambda e: (e.order, e.name)))


@lru_cache(maxsize=None)
def build_entry(entry: CatalogEntry) -> FiniteGroup:
    return entry.build()


# ---------------------------------------------------------------------------
# automorphisms and generating sets


def small_generating_set(G: FiniteGroup) -> list[int]:
    """A short generating set, greedily preferring elements of large order."""
    order = sorted(range(1, G.order), key=lambda g: (-G.element_order(g), g))
    gens: list[int] = []
    span = subgroup_generated(G, [])
    while not span.is_whole:
        best = max(order, key=lambda g: subgroup_generated(G, gens + [g]).order)
        gens.append(best)
        span = subgroup_generated(G, gens)
    return gens


def automorphisms(G: FiniteGroup) -> np.ndarray:
    """All automorphisms as rows ``phi[g]``, found by trying images of a generating set."""
    gens = small_generating_set(G)
    if not gens:
        return np.zeros((1, 1), dtype=np.int64)
    rows = G.rows
    orders = G.element_orders
    cands = [[x for x in range(G.order) if orders[x] == orders[g]] for g in gens]
    # spanning tree of Cay(G; gens): each vertex reached from a parent by one generator
    parent = [(-1, -1)] * G.order
    seen = [False] * G.order
    seen[0] = True
    queue = [0]
    for v in queue:
        for i, g in enumerate(gens):
            w = rows[v][g]
            if not seen[w]:
                seen[w] = True
                parent[w] = (v, i)
                queue.append(w)
    out = []
    n = G.order
    for imgs in itertools.product(*cands):
        phi = [0] * n
        ok = True
        for w in queue[1:]:
            v, i = parent[w]
            phi[w] = rows[phi[v]][imgs[i]]
        if len(set(phi)) != n:
            continue
        for v in range(n):
            pv = phi[v]
            for i, g in enumerate(gens):
                if phi[rows[v][g]] != rows[pv][imgs[i]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(phi)
    return np.array(out, dtype=np.int64)


def generating_sets(G: FiniteGroup, size: int, *, up_to_automorphism: bool = False,
                    auts: np.ndarray | None = None) -> Iterator[tuple]:
    """Generating sets of exactly ``size`` non-identity elements, as sorted tuples.

    With ``up_to_automorphism`` only the first set of each Aut(G)-orbit is
    produced (in lexicographic order), which is enough whenever the property
    being tested is invariant under relabeling the group.
    """
    seen: set = set()
    for S in itertools.combinations(range(1, G.order), size):
        if S in seen or not subgroup_generated(G, S).is_whole:
            continue
        if up_to_automorphism:
            # automorphisms map generating sets to generating sets, so only those need marking
            if auts is None:
                auts = automorphisms(G)
            images = np.sort(auts[:, list(S)], axis=1)
            seen.update(map(tuple, images.tolist()))
        yield S


def generating_pairs(G: FiniteGroup, *, up_to_automorphism: bool = False) -> Iterator[tuple]:
    """Ordered generating pairs (a, b), a != b; with the reduction, one per orbit of unordered pairs."""
    for a, b in generating_sets(G, 2, up_to_automorphism=up_to_automorphism):
        yield (a, b)
        if not up_to_automorphism:
            yield (b, a)
