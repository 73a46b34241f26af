"""Finite groups as indexed multiplication tables.

Every group built here has elements ``0 .. order-1``, index 0 is the
identity, and each element carries a coordinate tuple that depends on the
kind of spec it was built from:

* ``Cyclic(n)``: ``(i,)``
* ``SemidirectCyclic(m, p, u)``: ``(h, e)`` meaning ``h^h z^e``
* ``SemidirectMetacyclic(alpha, beta, p, r)``: ``(x, y, e)`` meaning
  ``abar^x bbar^y z^e``
* ``Permutation``: the array form of the permutation (0-based images)
* ``Table``: ``(i,)``, the row index in the given table
* ``DirectProduct``: the concatenation of the factor coordinates

Elements are ordered lexicographically by coordinates (tables keep the
order they were given in). Permutations multiply left to right:
``(g*h)[i] = h[g[i]]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import (
    InvalidAction,
    InvalidElement,
    InvalidSpec,
    NotAGroup,
    NotNormal,
    NotPrimitiveRoot,
)

# ---------------------------------------------------------------------------
# specs


@dataclass(frozen=True)
class Cyclic:
    n: int


@dataclass(frozen=True)
class DirectProduct:
    factors: tuple


@dataclass(frozen=True)
class SemidirectCyclic:
    """``Z_m ⋉ Z_p`` with ``z^h = z^u``."""

    m: int
    p: int
    u: int


@dataclass(frozen=True)
class SemidirectMetacyclic:
    """``(Z_alpha × Z_beta) ⋉ Z_p`` with ``z^abar = z^-1`` and ``z^bbar = z^(r^2)``."""

    alpha: int
    beta: int
    p: int
    r: int


@dataclass(frozen=True)
class Permutation:
    degree: int
    generators: tuple


@dataclass(frozen=True)
class Table:
    order: int
    table: tuple


GroupSpec = Union[Cyclic, DirectProduct, SemidirectCyclic, SemidirectMetacyclic, Permutation, Table]

ASSOC_FULL_SCAN_MAX = 128
ASSOC_SAMPLES = 100_000


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def is_primitive_root(r: int, p: int) -> bool:
    if not is_prime(p):
        return False
    r %= p
    if r == 0:
        return False
    phi = p - 1
    for q in range(2, phi + 1):
        if phi % q == 0 and is_prime(q) and pow(r, phi // q, p) == 1:
            return False
    return True


def smallest_primitive_root(p: int) -> int:
    for r in range(1, p):
        if is_primitive_root(r, p):
            return r
    raise NotPrimitiveRoot(f"{p} has no primitive root (not prime)")


def perm_from_cycles(degree: int, cycles: Iterable[Sequence[int]], *, one_based: bool = True) -> tuple:
    """Array form of a product of disjoint cycles, e.g. ``[(1, 2), (3, 4)]``."""
    img = list(range(degree))
    shift = 1 if one_based else 0
    for cyc in cycles:
        cyc = [c - shift for c in cyc]
        for i, c in enumerate(cyc):
            img[c] = cyc[(i + 1) % len(cyc)]
    return tuple(img)


# ---------------------------------------------------------------------------
# the group object


class FiniteGroup:
    """An immutable finite group given by its multiplication table."""

    def __init__(self, table: np.ndarray, coords: Sequence[tuple], spec: GroupSpec | None = None,
                 name: str | None = None):
        table = np.ascontiguousarray(table, dtype=np.int64)
        table.setflags(write=False)
        self.table = table
        self.order = int(table.shape[0])
        self.coords = tuple(tuple(int(x) for x in c) for c in coords)
        self.spec = spec
        self.name = name or (spec_name(spec) if spec is not None else f"G{self.order}")
        # python-level rows are much faster than numpy scalars in tight loops
        self.rows: list[list[int]] = table.tolist()
        inv = np.argmin(table, axis=1)  # the identity 0 is the row minimum
        self.inverses: list[int] = [int(x) for x in inv]

    def __repr__(self) -> str:
        return f"<FiniteGroup {self.name} order={self.order}>"

    @cached_property
    def _index(self) -> dict:
        return {c: i for i, c in enumerate(self.coords)}

    def index(self, coord) -> int:
        if isinstance(coord, (int, np.integer)):
            coord = (int(coord),)
        try:
            return self._index[tuple(int(x) for x in coord)]
        except KeyError:
            raise InvalidElement(f"no element with coordinates {coord!r} in {self.name}") from None

    def coord(self, g: int) -> tuple:
        return self.coords[g]

    def check(self, g) -> int:
        if not isinstance(g, (int, np.integer)) or not 0 <= g < self.order:
            raise InvalidElement(f"{g!r} is not an element index of {self.name}")
        return int(g)

    def elements(self) -> range:
        return range(self.order)

    identity = 0

    def mul(self, g: int, h: int) -> int:
        return self.rows[g][h]

    def inv(self, g: int) -> int:
        return self.inverses[g]

    def prod(self, elems: Iterable[int]) -> int:
        x = 0
        rows = self.rows
        for g in elems:
            x = rows[x][g]
        return x

    def conj(self, x: int, g: int) -> int:
        """``x^g = g^-1 x g``."""
        return self.rows[self.rows[self.inverses[g]][x]][g]

    def comm(self, g: int, h: int) -> int:
        """``[g, h] = g^-1 h^-1 g h``."""
        r, inv = self.rows, self.inverses
        return r[r[r[inv[g]][inv[h]]][g]][h]

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inverses[g], -k
        x, y = 0, g
        while k:
            if k & 1:
                x = self.rows[x][y]
            y = self.rows[y][y]
            k >>= 1
        return x

    @cached_property
    def element_orders(self) -> list[int]:
        orders = [0] * self.order
        for g in range(self.order):
            x, n = g, 1
            while x != 0:
                x = self.rows[x][g]
                n += 1
            orders[g] = n
        return orders

    def element_order(self, g: int) -> int:
        return self.element_orders[g]

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))


def spec_name(spec: GroupSpec) -> str:
    if isinstance(spec, Cyclic):
        return f"Z{spec.n}"
    if isinstance(spec, DirectProduct):
        return " x ".join(spec_name(f) for f in spec.factors)
    if isinstance(spec, SemidirectCyclic):
        return f"Z{spec.m} ⋉_{spec.u} Z{spec.p}"
    if isinstance(spec, SemidirectMetacyclic):
        return f"(Z{spec.alpha} x Z{spec.beta}) ⋉ Z{spec.p} [r={spec.r}]"
    if isinstance(spec, Permutation):
        return f"Perm({spec.degree}; {len(spec.generators)} gens)"
    if isinstance(spec, Table):
        return f"Table({spec.order})"
    raise InvalidSpec(f"unknown group spec {spec!r}")


# ---------------------------------------------------------------------------
# builders


def build_group(spec: GroupSpec, *, strict: bool = True) -> FiniteGroup:
    """Build the group described by ``spec``.

    With ``strict=False`` the coprimality conditions on a
    ``SemidirectMetacyclic`` spec are skipped; only the conditions that make
    the action well defined are enforced.
    """
    if isinstance(spec, Cyclic):
        table, coords = _cyclic(spec)
    elif isinstance(spec, SemidirectCyclic):
        table, coords = _semidirect_cyclic(spec)
    elif isinstance(spec, SemidirectMetacyclic):
        table, coords = _semidirect_metacyclic(spec, strict)
    elif isinstance(spec, Permutation):
        table, coords = _permutation(spec)
    elif isinstance(spec, Table):
        table, coords = _table(spec)
    elif isinstance(spec, DirectProduct):
        if not spec.factors:
            raise InvalidSpec("direct product needs at least one factor")
        parts = [build_group(f, strict=strict) for f in spec.factors]
        table, coords = parts[0].table, list(parts[0].coords)
        for part in parts[1:]:
            n2 = part.order
            i = np.arange(table.shape[0] * n2)
            a, b = np.divmod(i, n2)
            table = table[a[:, None], a[None, :]] * n2 + part.table[b[:, None], b[None, :]]
            coords = [c + d for c in coords for d in part.coords]
    else:
        raise InvalidSpec(f"unknown group spec {spec!r}")
    return FiniteGroup(table, coords, spec)


def _cyclic(spec: Cyclic):
    n = spec.n
    if not isinstance(n, int) or n < 1:
        raise InvalidSpec(f"cyclic order must be a positive integer, got {n!r}")
    i = np.arange(n)
    return (i[:, None] + i[None, :]) % n, [(x,) for x in range(n)]


def _semidirect_cyclic(spec: SemidirectCyclic):
    m, p, u = spec.m, spec.p, spec.u
    if m < 1:
        raise InvalidSpec(f"m must be positive, got {m}")
    if p == 2 or not is_prime(p):
        raise InvalidSpec(f"p must be an odd prime, got {p}")
    if u % p == 0 or pow(u, m, p) != 1:
        raise InvalidAction(f"u={u} does not satisfy u^{m} = 1 (mod {p})")
    upow = np.array([pow(u, h, p) for h in range(m)])
    idx = np.arange(m * p)
    h, e = np.divmod(idx, p)
    hh = (h[:, None] + h[None, :]) % m
    ee = (e[:, None] * upow[h][None, :] + e[None, :]) % p
    return hh * p + ee, [(x, y) for x in range(m) for y in range(p)]


def _semidirect_metacyclic(spec: SemidirectMetacyclic, strict: bool):
    alpha, beta, p, r = spec.alpha, spec.beta, spec.p, spec.r
    if p == 2 or not is_prime(p):
        raise InvalidSpec(f"p must be an odd prime, got {p}")
    if not is_primitive_root(r, p):
        raise NotPrimitiveRoot(f"{r} is not a primitive root mod {p}")
    half = (p - 1) // 2
    if alpha < 1 or beta < 1:
        raise InvalidSpec("alpha and beta must be positive")
    if alpha % 2:
        raise InvalidAction(f"alpha={alpha} must be even for abar to act by inversion")
    if beta % half:
        raise InvalidAction(f"beta={beta} must be a multiple of (p-1)/2={half} for bbar to act by r^2")
    if strict:
        if math.gcd(alpha, half) != 1:
            raise InvalidAction(f"gcd(alpha, (p-1)/2) = gcd({alpha}, {half}) != 1")
        if math.gcd(alpha, beta) != 1:
            raise InvalidAction(f"gcd(alpha, beta) = gcd({alpha}, {beta}) != 1")
    r2 = r * r % p
    phi = np.array([[(-1) ** x * pow(r2, y, p) % p for y in range(beta)] for x in range(alpha)])
    idx = np.arange(alpha * beta * p)
    xy, e = np.divmod(idx, p)
    x, y = np.divmod(xy, beta)
    xx = (x[:, None] + x[None, :]) % alpha
    yy = (y[:, None] + y[None, :]) % beta
    ee = (e[:, None] * phi[x, y][None, :] + e[None, :]) % p
    coords = [(a, b, c) for a in range(alpha) for b in range(beta) for c in range(p)]
    return (xx * beta + yy) * p + ee, coords


def _permutation(spec: Permutation):
    deg = spec.degree
    gens = [tuple(int(x) for x in g) for g in spec.generators]
    for g in gens:
        if len(g) != deg or sorted(g) != list(range(deg)):
            raise InvalidSpec(f"{g} is not a permutation of 0..{deg - 1}")
    ident = tuple(range(deg))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(g[i] for i in x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    elems = sorted(seen)
    arr = np.array(elems, dtype=np.int64).reshape(len(elems), deg)
    index = {e: i for i, e in enumerate(elems)}
    n = len(elems)
    table = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        # (g*h)[k] = h[g[k]] for g = elems[i] and every h
        prod = np.take_along_axis(arr, np.broadcast_to(arr[i], (n, deg)), axis=1)
        table[i] = [index[tuple(row)] for row in prod.tolist()]
    return table, elems


def _table(spec: Table):
    n = spec.order
    table = np.array(spec.table, dtype=np.int64)
    if n < 1 or table.shape != (n, n):
        raise NotAGroup(f"table must be {n}x{n}")
    if table.min() < 0 or table.max() >= n:
        raise NotAGroup("table entries out of range")
    ar = np.arange(n)
    if not (np.array_equal(table[0], ar) and np.array_equal(table[:, 0], ar)):
        raise NotAGroup("element 0 is not a two-sided identity")
    for axis in (0, 1):
        if not np.all(np.sort(table, axis=axis) == (ar[:, None] if axis == 0 else ar[None, :])):
            raise NotAGroup("table is not a latin square (missing inverses)")
    if not _associative(table):
        raise NotAGroup("table is not associative")
    return table, [(i,) for i in range(n)]


def _associative(table: np.ndarray) -> bool:
    n = table.shape[0]
    if n <= ASSOC_FULL_SCAN_MAX:
        left = table[table]  # left[a,b,c] = (ab)c
        right = table[np.arange(n)[:, None, None], table[None, :, :]]
        return bool(np.array_equal(left, right))
    rng = np.random.default_rng(0)
    a, b, c = rng.integers(0, n, size=(3, ASSOC_SAMPLES))
    return bool(np.array_equal(table[table[a, b], c], table[a, table[b, c]]))


def multiply(G: FiniteGroup, g: int, h: int) -> int:
    return G.mul(G.check(g), G.check(h))


def inverse(G: FiniteGroup, g: int) -> int:
    return G.inv(G.check(g))


def conjugate(G: FiniteGroup, x: int, g: int) -> int:
    return G.conj(G.check(x), G.check(g))


def element_order(G: FiniteGroup, g: int) -> int:
    return G.element_order(G.check(g))


# ---------------------------------------------------------------------------
# subgroups


@dataclass(frozen=True, eq=False)
class Subgroup:
    group: FiniteGroup = field(repr=False)
    elements: tuple
    generators: tuple = ()

    @cached_property
    def members(self) -> frozenset:
        return frozenset(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, g) -> bool:
        return g in self.members

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.group is other.group and self.elements == other.elements

    def __hash__(self) -> int:
        return hash((id(self.group), self.elements))

    def __le__(self, other: "Subgroup") -> bool:
        return self.members <= other.members

    @property
    def index(self) -> int:
        return self.group.order // len(self.elements)

    @property
    def is_whole(self) -> bool:
        return len(self.elements) == self.group.order


def subgroup_generated(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    gens = tuple(dict.fromkeys(int(g) for g in gens))
    rows = G.rows
    seen = bytearray(G.order)
    seen[0] = 1
    out = [0]
    active = [g for g in gens if g != 0]
    i = 0
    while i < len(out):
        x = out[i]
        row = rows[x]
        for g in active:
            y = row[g]
            if not seen[y]:
                seen[y] = 1
                out.append(y)
        i += 1
    return Subgroup(G, tuple(sorted(out)), gens)


def whole_group(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, tuple(range(G.order)), tuple(range(G.order)))


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, (0,), ())


def commutator_subgroup(G: FiniteGroup) -> Subgroup:
    T = G.table
    inv = np.array(G.inverses)
    comms = T[T[np.ix_(inv, inv)], T]  # [g,h] = (g^-1 h^-1)(g h)
    return subgroup_generated(G, np.unique(comms).tolist())


def normal_closure(G: FiniteGroup, H: Subgroup | Iterable[int]) -> Subgroup:
    elems = list(H.elements) if isinstance(H, Subgroup) else list(H)
    T = G.table
    inv = np.array(G.inverses)
    x = np.array(elems, dtype=np.int64)
    conj = T[T[inv[None, :], x[:, None]], np.arange(G.order)[None, :]]
    return subgroup_generated(G, np.unique(conj).tolist())


def is_normal(G: FiniteGroup, H: Subgroup) -> bool:
    return normal_closure(G, H.generators or H.elements).order == H.order


def left_cosets(G: FiniteGroup, H: Subgroup) -> list[tuple]:
    """Left cosets ``gH``, each sorted, listed by ascending minimal element."""
    return _cosets(G, H, left=True)


def right_cosets(G: FiniteGroup, H: Subgroup) -> list[tuple]:
    """Right cosets ``Hg``, each sorted, listed by ascending minimal element."""
    return _cosets(G, H, left=False)


def _cosets(G: FiniteGroup, H: Subgroup, left: bool) -> list[tuple]:
    seen = bytearray(G.order)
    out = []
    rows = G.rows
    for g in range(G.order):
        if seen[g]:
            continue
        coset = sorted(rows[g][h] for h in H.elements) if left else sorted(rows[h][g] for h in H.elements)
        for x in coset:
            seen[x] = 1
        out.append(tuple(coset))
    return out


def coset_index_map(G: FiniteGroup, cosets: Sequence[tuple]) -> list[int]:
    where = [0] * G.order
    for i, c in enumerate(cosets):
        for x in c:
            where[x] = i
    return where


def quotient_group(G: FiniteGroup, N: Subgroup) -> tuple[FiniteGroup, np.ndarray]:
    """``G/N`` as a table group, plus the projection ``G -> G/N`` as an index array.

    Quotient element ``i`` is the ``i``-th coset in ascending order of minimal
    representative, so 0 is ``N`` itself.
    """
    if not is_normal(G, N):
        raise NotNormal(f"subgroup of order {N.order} is not normal in {G.name}")
    cosets = left_cosets(G, N)
    proj = np.array(coset_index_map(G, cosets), dtype=np.int64)
    reps = np.array([c[0] for c in cosets], dtype=np.int64)
    qtable = proj[G.table[np.ix_(reps, reps)]]
    # well-definedness: any pair of representatives gives the same product coset
    full = proj[G.table]
    if not np.array_equal(full, qtable[np.ix_(proj, proj)]):
        raise NotNormal("quotient multiplication is not well defined")
    Q = FiniteGroup(qtable, [(i,) for i in range(len(cosets))], name=f"{G.name} / N{N.order}")
    return Q, proj


def restrict(G: FiniteGroup, K: Subgroup) -> tuple[FiniteGroup, np.ndarray]:
    """The subgroup ``K`` as a group in its own right, plus its embedding into ``G``.

    Element ``i`` of the result is ``K.elements[i]``; coordinates are inherited.
    """
    emb = np.array(K.elements, dtype=np.int64)
    back = np.full(G.order, -1, dtype=np.int64)
    back[emb] = np.arange(len(emb))
    table = back[G.table[np.ix_(emb, emb)]]
    sub = FiniteGroup(table, [G.coords[g] for g in K.elements], name=f"{G.name} > K{K.order}")
    return sub, emb


def centralizes_or_inverts(G: FiniteGroup, N: Subgroup) -> bool:
    """True if every element of G acts on the cyclic subgroup N trivially or by inversion."""
    gens = [x for x in N.elements if G.element_order(x) == N.order] or [0]
    c = gens[0]
    cinv = G.inv(c)
    return all(G.conj(c, g) in (c, cinv) for g in range(G.order))


def is_cyclic(G: FiniteGroup, H: Subgroup) -> bool:
    return any(G.element_order(x) == H.order for x in H.elements)
