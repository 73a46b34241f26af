"""Cayley digraphs, arc-forcing cosets, coset digraphs and certificates."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DuplicateGenerator, IdentityInS, InvalidElement
from .groups import (
    FiniteGroup,
    Subgroup,
    coset_index_map,
    left_cosets,
    right_cosets,
    subgroup_generated,
)

PATH = "path"
CYCLE = "cycle"


class CayleyDigraph:
    """``Cay(G; S)``: an arc ``g -> g s`` for every vertex g and generator s.

    Arcs are addressed by generator position (the label), in the order the
    generators were given.
    """

    def __init__(self, group: FiniteGroup, generators: Sequence[int]):
        self.group = group
        self.generators = tuple(int(s) for s in generators)
        rows = group.rows
        self.succ: list[list[int]] = [[rows[g][s] for s in self.generators] for g in range(group.order)]

    def __repr__(self) -> str:
        return f"<Cay({self.group.name}; {list(self.generators)})>"

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def degree(self) -> int:
        return len(self.generators)

    def arc(self, g: int, label: int) -> int:
        return self.succ[g][label]

    def label_of(self, s: int) -> int:
        return self.generators.index(s)

    def pred(self) -> list[list[int]]:
        """``pred[v][i]`` is the vertex entering v along label i."""
        inv = self.group.inverses
        rows = self.group.rows
        invs = [inv[s] for s in self.generators]
        return [[rows[v][t] for t in invs] for v in range(self.order)]

    def span(self) -> Subgroup:
        return subgroup_generated(self.group, self.generators)

    def is_connected(self) -> bool:
        return self.span().is_whole


def build_cayley(G: FiniteGroup, S: Iterable[int]) -> CayleyDigraph:
    S = [G.check(s) for s in S]
    if 0 in S:
        raise IdentityInS("the identity cannot be a generator")
    if len(set(S)) != len(S):
        raise DuplicateGenerator(f"repeated generator in {S}")
    return CayleyDigraph(G, S)


def arc_forcing_subgroup(G: FiniteGroup, S: Sequence[int]) -> Subgroup:
    """``<S S^-1>``; for S = {a, b} this is ``<a b^-1>``."""
    inv = G.inverses
    return subgroup_generated(G, [G.mul(s, inv[t]) for s in S for t in S])


@dataclass(frozen=True)
class Coset:
    subgroup: Subgroup
    representative: int
    elements: tuple
    terminal: bool

    @property
    def kind(self) -> str:
        return "terminal" if self.terminal else "regular"


def classify_cosets(G: FiniteGroup, S: Sequence[int], H: Subgroup | None = None) -> list[Coset]:
    """Left cosets of the arc-forcing subgroup, with the terminal coset ``a^-1 H`` flagged."""
    if H is None:
        H = arc_forcing_subgroup(G, S)
    cosets = left_cosets(G, H)
    terminal = G.inv(S[0]) if S else None
    return [Coset(H, c[0], c, terminal is not None and terminal in c) for c in cosets]


@dataclass(frozen=True)
class CosetDigraph:
    """``K \\ Cay(G; S)``: right cosets ``Kg`` with arcs ``Kg -> Kgs``."""

    subgroup: Subgroup
    cosets: tuple
    where: tuple
    succ: tuple

    def vertex_of(self, g: int) -> int:
        return self.where[g]

    def is_ham_cycle(self, labels: Sequence[int], start: int = 0) -> bool:
        n = len(self.cosets)
        if len(labels) != n:
            return False
        seen = set()
        v = start
        for lab in labels:
            if v in seen:
                return False
            seen.add(v)
            v = self.succ[v][lab]
        return v == start and len(seen) == n


def coset_quotient_digraph(K: Subgroup, G: FiniteGroup, S: Sequence[int]) -> CosetDigraph:
    cosets = right_cosets(G, K)
    where = coset_index_map(G, cosets)
    rows = G.rows
    succ = tuple(tuple(where[rows[c[0]][s]] for s in S) for c in cosets)
    return CosetDigraph(K, tuple(cosets), tuple(where), succ)


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class Certificate:
    """A start vertex plus generator labels claiming a hamiltonian path or cycle."""

    kind: str
    start: int
    labels: tuple

    def __post_init__(self):
        if self.kind not in (PATH, CYCLE):
            raise ValueError(f"certificate kind must be 'path' or 'cycle', got {self.kind!r}")
        object.__setattr__(self, "labels", tuple(int(x) for x in self.labels))

    def __len__(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class Verification:
    ok: bool
    reason: str = ""
    step: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def walk(D: CayleyDigraph, start: int, labels: Iterable[int]) -> list[int]:
    v = start
    out = [v]
    for lab in labels:
        v = D.succ[v][lab]
        out.append(v)
    return out


def verify_certificate(D: CayleyDigraph, c: Certificate) -> Verification:
    n = D.order
    want = n - 1 if c.kind == PATH else n
    if not isinstance(c.start, int) or not 0 <= c.start < n:
        return Verification(False, f"start {c.start!r} is not a vertex")
    if len(c.labels) != want:
        return Verification(False, f"wrong length: {len(c.labels)} labels, expected {want}")
    seen = bytearray(n)
    v = c.start
    seen[v] = 1
    for i, lab in enumerate(c.labels):
        if not 0 <= lab < D.degree:
            return Verification(False, f"label {lab} out of range at step {i}", i)
        v = D.succ[v][lab]
        if c.kind == CYCLE and i == n - 1:
            if v != c.start:
                return Verification(False, "walk does not close up", i)
            break
        if seen[v]:
            return Verification(False, f"vertex {v} repeated at step {i}", i)
        seen[v] = 1
    return Verification(True)


def certificate_from_elements(D: CayleyDigraph, elems: Sequence[int], kind: str = PATH, start: int = 0) -> Certificate:
    """Translate a sequence of generator elements into a label certificate."""
    pos = {s: i for i, s in enumerate(D.generators)}
    try:
        labels = tuple(pos[s] for s in elems)
    except KeyError as exc:
        raise InvalidElement(f"element {exc.args[0]} is not a generator of {D!r}") from None
    return Certificate(kind, start, labels)


def certificate_elements(D: CayleyDigraph, c: Certificate) -> list[int]:
    return [D.generators[lab] for lab in c.labels]


def translate(D: CayleyDigraph, c: Certificate, g: int) -> Certificate:
    """Left-translate a certificate by g; the labels are unchanged."""
    return Certificate(c.kind, D.group.mul(g, c.start), c.labels)
