"""Hamiltonian cycles in ``Cay(G; a, b, b+k)`` for non-cyclic abelian G with ``|k| = 2``.

The construction starts from a spanning subdigraph ``H_0`` in which every
vertex has in- and out-degree one (an :class:`ArcSystem`), then merges its
cycles a few at a time by local three-arc surgery until one cycle remains.
The abelian group is written additively in comments; in code ``G.mul`` is
the group operation.
"""

from __future__ import annotations

import hashlib
import json
import logging
from dataclasses import dataclass, field
from typing import IO, Sequence

from .cayley import CYCLE, Certificate, build_cayley, verify_certificate
from .errors import ArcNotInDigraph, ConstructionFailed, ImprovementStalled, PreconditionFailed
from .groups import FiniteGroup, subgroup_generated

log = logging.getLogger(__name__)

A, B, BK = 0, 1, 2  # labels: travel by a, b, b + k
LABEL_NAMES = ("a", "b", "b+k")


@dataclass(frozen=True)
class ArcSystem:
    """A choice of one outgoing generator per vertex; in class C when that is a bijection."""

    group: FiniteGroup = field(repr=False, compare=False)
    gens: tuple  # (a, b, b + k)
    labels: tuple  # labels[v] in {A, B, BK}

    @property
    def succ(self) -> list[int]:
        rows = self.group.rows
        return [rows[v][self.gens[lab]] for v, lab in enumerate(self.labels)]

    def pred(self) -> list[int]:
        out = [-1] * len(self.labels)
        for v, w in enumerate(self.succ):
            out[w] = v
        return out

    def in_class_C(self) -> bool:
        return len(set(self.succ)) == len(self.labels)

    def in_class_E(self, k: int) -> bool:
        """Each coset {v, v+k} has exactly one vertex travelling by a."""
        rows = self.group.rows
        return self.in_class_C() and all(
            (self.labels[v] == A) != (self.labels[rows[v][k]] == A) for v in range(len(self.labels)))

    def components(self) -> list[int]:
        """Component id of every vertex (ids in order of first appearance)."""
        succ = self.succ
        comp = [-1] * len(succ)
        c = 0
        for v in range(len(succ)):
            if comp[v] >= 0:
                continue
            w = v
            while comp[w] < 0:
                comp[w] = c
                w = succ[w]
            c += 1
        return comp

    def count(self) -> int:
        return max(self.components()) + 1 if self.labels else 0

    def digest(self) -> str:
        return hashlib.sha1(bytes(self.labels)).hexdigest()[:12]

    def with_arcs(self, changes: dict[int, int]) -> "ArcSystem":
        labels = list(self.labels)
        for v, lab in changes.items():
            labels[v] = lab
        return ArcSystem(self.group, self.gens, tuple(labels))


def _label_for(H: ArcSystem, u: int, v: int) -> int:
    """The label of an arc u -> v of the Cayley digraph."""
    G = H.group
    diff = G.mul(G.inv(u), v)
    try:
        return H.gens.index(diff)
    except ValueError:
        raise ArcNotInDigraph(f"no arc from {G.coord(u)} to {G.coord(v)}") from None


def sigma_parity(H: ArcSystem, us: Sequence[int]) -> int:
    """Parity (0 even, 1 odd) of the return permutation on three vertices of H."""
    succ = H.succ
    pos = {u: i for i, u in enumerate(us)}
    sigma = []
    for u in us:
        w = succ[u]
        while w not in pos:
            w = succ[w]
        sigma.append(pos[w])
    # parity of a permutation of three points: identity/3-cycles even, transpositions odd
    fixed = sum(1 for i, s in enumerate(sigma) if i == s)
    return 1 if fixed == 1 else 0


def three_arc_rotate(H: ArcSystem, u1: int, u2: int, u3: int) -> ArcSystem:
    """Replace ``u_i -> v_i`` by ``u1 -> v2``, ``u2 -> v3``, ``u3 -> v1``."""
    if len({u1, u2, u3}) != 3:
        raise PreconditionFailed("rotation needs three distinct vertices")
    succ = H.succ
    v1, v2, v3 = succ[u1], succ[u2], succ[u3]
    return H.with_arcs({u1: _label_for(H, u1, v2), u2: _label_for(H, u2, v3), u3: _label_for(H, u3, v1)})


def _surgery(H: ArcSystem, u: int, k: int, a: int) -> tuple[ArcSystem, tuple]:
    G = H.group
    u1 = u
    u2 = G.mul(u, k)
    v3 = G.mul(u2, a)
    u3 = H.pred()[v3]
    return three_arc_rotate(H, u1, u2, u3), (u1, u2, u3)


def amalgamate(H: ArcSystem, u: int, k: int) -> ArcSystem:
    """Merge the components of u, u+k and u+a+k (three distinct ones) into one."""
    G = H.group
    a = H.gens[A]
    if H.labels[u] != A:
        raise PreconditionFailed(f"{G.coord(u)} does not travel by a")
    comp = H.components()
    w = G.mul(G.mul(u, a), k)
    if len({comp[u], comp[G.mul(u, k)], comp[w]}) != 3:
        raise PreconditionFailed(f"u, u+k, u+a+k are not on three different components for u={G.coord(u)}")
    out, _ = _surgery(H, u, k, a)
    comp = out.components()
    if not comp[u] == comp[G.mul(u, k)] == comp[w]:
        raise ConstructionFailed("amalgamation did not merge the three components")
    return out


def amalgamate_pair(H: ArcSystem, u: int, k: int) -> ArcSystem:
    """With u+k and u+a+k together and u apart: join u to the successor v of u+k,
    splitting u+a+k off."""
    G = H.group
    a = H.gens[A]
    if H.labels[u] != A:
        raise PreconditionFailed(f"{G.coord(u)} does not travel by a")
    comp = H.components()
    uk = G.mul(u, k)
    w = G.mul(uk, a)
    if comp[uk] != comp[w] or comp[u] == comp[uk]:
        raise PreconditionFailed(f"amalgamate_pair precondition fails at u={G.coord(u)}")
    v = H.succ[uk]
    out, _ = _surgery(H, u, k, a)
    comp = out.components()
    if comp[u] != comp[v] or comp[w] == comp[u]:
        raise ConstructionFailed("pair amalgamation did not produce the claimed components")
    return out


# ---------------------------------------------------------------------------
# preconditions and coordinates


def validate(G: FiniteGroup, a: int, b: int, k: int) -> None:
    if not G.is_abelian:
        raise PreconditionFailed(f"{G.name} is not abelian")
    if any(G.element_order(x) == G.order for x in range(G.order)):
        raise PreconditionFailed(f"{G.name} is cyclic")
    if G.element_order(k) != 2:
        raise PreconditionFailed("k must have order 2")
    bk = G.mul(b, k)
    if len({a, b, bk}) != 3 or 0 in (a, b, bk):
        raise PreconditionFailed("a, b, b+k must be three distinct nontrivial elements")
    if not subgroup_generated(G, [a, b, k]).is_whole:
        raise PreconditionFailed("<a, b, k> != G")


def _sub(G: FiniteGroup, *gens: int):
    return subgroup_generated(G, list(gens))


@dataclass
class CoordinateFrame:
    """``v = x a + y b (+ z k)``; ``z`` is absent when k lies in <a>."""

    case: int  # 1: k not in <a>; 2: k in <a>
    coords: list  # coords[v] = (x, y, z) or (x, y)
    a_order: int
    y_range: int

    def point(self, v: int) -> tuple:
        return self.coords[v]


def coordinate_frame(G: FiniteGroup, a: int, b: int, k: int) -> CoordinateFrame:
    na = G.element_order(a)
    if k not in _sub(G, a):
        m = G.order // _sub(G, a, k).order
        zs = (0, 1)
        case = 1
    else:
        m = G.order // _sub(G, a).order
        zs = (0,)
        case = 2
    coords: list = [None] * G.order
    for x in range(na):
        xa = G.power(a, x)
        for y in range(m):
            xy = G.mul(xa, G.power(b, y))
            for z in zs:
                v = G.mul(xy, k) if z else xy
                if coords[v] is not None:
                    raise PreconditionFailed("coordinates are not unique")
                coords[v] = (x, y, z) if case == 1 else (x, y)
    if any(c is None for c in coords):
        raise PreconditionFailed("coordinates do not cover G")
    return CoordinateFrame(case, coords, na, m)


def h0_construct(G: FiniteGroup, a: int, b: int, k: int) -> ArcSystem:
    """The starting arc system ``H_0``."""
    validate(G, a, b, k)
    if not _sub(G, G.mul(a, G.inv(b)), k).is_whole:
        raise PreconditionFailed("<a - b, k> != G, so H_0 is not the starting point")
    frame = coordinate_frame(G, a, b, k)
    gens = (a, b, G.mul(b, k))
    labels = []
    half = frame.a_order // 2
    for v in range(G.order):
        c = frame.coords[v]
        nxt = frame.coords[G.mul(v, b)]
        if frame.case == 1:
            if c[2] == 0:
                labels.append(A)
            else:
                labels.append(B if nxt[2] == 1 else BK)
        else:
            if c[0] < half:
                labels.append(A)
            elif 1 <= nxt[0] <= half:
                labels.append(BK)
            else:
                labels.append(B)
    H = ArcSystem(G, gens, tuple(labels))
    if not H.in_class_E(k):
        raise ConstructionFailed("H_0 is not in class E")
    return H


def h0_component_formula(G: FiniteGroup, a: int, b: int, k: int) -> int:
    ibk = G.order // _sub(G, b, k).order
    if k not in _sub(G, a):
        return G.order // _sub(G, a, k).order + ibk
    return ibk


# ---------------------------------------------------------------------------
# run record


@dataclass
class Abelian3Run:
    branch: str = ""
    frame_case: int | None = None
    decomposition: dict = field(default_factory=dict)
    steps: list = field(default_factory=list)
    incidents: list = field(default_factory=list)

    def record(self, step: str, H: ArcSystem, u: int | None = None, sink: IO | None = None) -> None:
        G = H.group
        entry = {"step": step, "u": None if u is None else list(G.coord(u)),
                 "components": H.count(), "digest": H.digest()}
        self.steps.append(entry)
        if sink is not None:
            sink.write(json.dumps(entry) + "\n")


def _cycle_certificate(H: ArcSystem) -> Certificate:
    succ = H.succ
    labels = []
    v = 0
    for _ in range(len(succ)):
        labels.append(H.labels[v])
        v = succ[v]
    return Certificate(CYCLE, 0, labels)


def _expect_component(H: ArcSystem, members: set, total: int, where: str) -> None:
    """Assert the claimed shape: ``members`` is one component and the count is ``total``."""
    comp = H.components()
    ids = {comp[v] for v in members}
    size = sum(1 for c in comp if c == next(iter(ids)))
    if len(ids) != 1 or size != len(members) or H.count() != total:
        raise ConstructionFailed(f"component shape mismatch after {where}")


# ---------------------------------------------------------------------------
# the non-generating case


def _initial_nongenerating(G: FiniteGroup, a: int, b: int, k: int) -> ArcSystem:
    c = G.mul(a, G.inv(b))
    C = _sub(G, c)
    gens = (a, b, G.mul(b, k))
    if k not in C:
        labels = [A if v in C else B for v in range(G.order)]
    else:
        n = C.order
        travel_a = {G.power(c, j) for j in range(n // 2)}
        labels = [A if v in travel_a else (BK if v == k else B) for v in range(G.order)]
    return ArcSystem(G, gens, tuple(labels))


def _in_family(H: ArcSystem, L, k: int) -> bool:
    rows = H.group.rows
    for v, lab in enumerate(H.labels):
        if v in L:
            if (lab == A) == (H.labels[rows[v][k]] == A):
                return False
        elif lab == A:
            return False
    return H.in_class_C()


def reduce_components_nongenerating(G: FiniteGroup, a: int, b: int, k: int,
                                    run: Abelian3Run | None = None, sink: IO | None = None) -> Certificate:
    """Hamiltonian cycle when ``<a - b, k> != G``, by repeatedly merging components.

    Each round picks the least vertex u of ``L = <a - b, k>`` whose coset
    partner ``u + k`` (or, failing that, ``u + (a - b)``) lies on another
    component, fixes the parity with an optional two-arc swap, and rotates
    three arcs.  If a round fails to reduce the component count the exhaustive
    cycle search finishes the job and the incident is recorded.
    """
    validate(G, a, b, k)
    run = run if run is not None else Abelian3Run()
    c = G.mul(a, G.inv(b))
    L = _sub(G, c, k)
    if L.is_whole:
        raise PreconditionFailed("<a - b, k> = G; use the H_0 schedules instead")
    H = _initial_nongenerating(G, a, b, k)
    if not _in_family(H, L.members, k):
        raise ConstructionFailed("initial arc system is outside the constrained family")
    run.record("initial", H, sink=sink)
    budget = H.count()
    try:
        while H.count() > 1:
            if budget == 0:
                raise ImprovementStalled("iteration bound exhausted")
            budget -= 1
            before = H.count()
            H = _improve(H, L, k, c)
            if not _in_family(H, L.members, k) or H.count() >= before:
                raise ImprovementStalled("a round did not reduce the component count")
            run.record("improve", H, sink=sink)
    except (ImprovementStalled, ArcNotInDigraph, PreconditionFailed) as exc:
        from .search import dfs_ham_cycle

        run.incidents.append({"error": repr(exc), "components": H.count()})
        log.warning("component reduction stalled on %s (%s); falling back to search", G.name, exc)
        report = dfs_ham_cycle(build_cayley(G, H.gens))
        if not report.verdict:
            raise ConstructionFailed("fallback search found no hamiltonian cycle") from exc
        return report.certificate
    return _cycle_certificate(H)


def _improve(H: ArcSystem, L, k: int, c: int) -> ArcSystem:
    """One merging round.

    Candidates u run over ``L`` in index order, first those separated from
    ``u + k`` and then those separated from ``u + (a - b)``.  For each, the
    plain rotation and the swap-then-rotate variant are tried, and the first
    result that stays in the family with fewer components wins.  Whether a
    rotation merges depends on the cyclic order of the three vertices, so the
    outcome is checked rather than predicted from the parity alone.
    """
    G = H.group
    comp = H.components()
    rows = G.rows
    a = H.gens[A]
    members = sorted(L.members)
    before = H.count()
    cands = [v for v in members if comp[v] != comp[rows[v][k]]]
    cands += [v for v in members if comp[v] != comp[rows[v][c]] and v not in cands]
    for u in cands:
        u1 = u if H.labels[u] == A else rows[u][k]
        u2 = rows[u1][k]
        v3 = rows[rows[u1][a]][k]
        variants = [H]
        pred = H.pred()
        w1, w2 = pred[u1], pred[u2]
        try:
            variants.append(H.with_arcs({w1: _label_for(H, w1, u2), w2: _label_for(H, w2, u1)}))
        except ArcNotInDigraph:
            pass
        if sigma_parity(H, (u1, u2, pred[v3])):
            variants.reverse()
        for K in variants:
            if not K.in_class_C():
                continue
            u3 = K.pred()[v3]
            if len({u1, u2, u3}) != 3:
                continue
            try:
                out = three_arc_rotate(K, u1, u2, u3)
            except ArcNotInDigraph:
                continue
            if out.count() < before and _in_family(out, L.members, k):
                return out
    raise ImprovementStalled("no candidate round reduces the component count")


# ---------------------------------------------------------------------------
# schedules


def _bk_generates(G: FiniteGroup, a: int, b: int, k: int) -> Certificate:
    bk = G.mul(b, k)
    n = G.order
    if _sub(G, b).is_whole:
        return Certificate(CYCLE, 0, [B] * n)
    if _sub(G, bk).is_whole:
        return Certificate(CYCLE, 0, [BK] * n)
    # G = <b> + <k>: run through <b>, step by b+k into the other coset, and back
    nb = G.element_order(b)
    return Certificate(CYCLE, 0, ([B] * (nb - 1) + [BK]) * 2)


def _odd_schedule(G, a, b, k, H: ArcSystem, frame: CoordinateFrame, run: Abelian3Run, sink) -> ArcSystem:
    q = G.order // _sub(G, b, k).order
    mul, pw = G.mul, G.power
    coords = frame.coords
    total = H.count()
    if frame.case == 1:
        m = G.order // _sub(G, a, k).order
        H = amalgamate(H, 0, k)
        total -= 2
        run.record("H0'", H, 0, sink)
        u = mul(a, b)
        H = amalgamate(H, u, k)
        total -= 2
        run.record("H1", H, u, sink)

        def shape_h(i):
            return {v for v in range(G.order) if (coords[v][2] == 0 and coords[v][1] <= 2 * i - 1)
                    or (coords[v][2] == 1 and coords[v][0] % q in (0, 1, 2))}

        _expect_component(H, shape_h(1), total, "H1")
        for i in range(2, m // 2 + 1):
            u = pw(b, 2 * i - 2)
            H = amalgamate_pair(H, u, k)
            run.record(f"H{i - 1}'", H, u, sink)
            u = pw(b, 2 * i - 1)
            H = amalgamate(H, u, k)
            total -= 2
            run.record(f"H{i}", H, u, sink)
            _expect_component(H, shape_h(i), total, f"H{i}")
        first = 2
    else:
        first = 1
    for i in range(first, (q - 1) // 2 + 1):
        u = pw(a, 2 * i - 1)
        H = amalgamate(H, u, k)
        total -= 2
        run.record(f"K{i}", H, u, sink)
        if frame.case == 1:
            members = {v for v in range(G.order) if coords[v][2] == 0 or coords[v][0] % q <= 2 * i}
        else:
            half = frame.a_order // 2
            members = {v for v in range(G.order) if coords[v][0] < half or coords[v][0] % q <= 2 * i}
        _expect_component(H, members, total, f"K{i}")
    return H


def _even_schedule(G, a, b, k, H: ArcSystem, frame: CoordinateFrame, run: Abelian3Run, sink) -> ArcSystem:
    q = G.order // _sub(G, b, k).order
    m = G.order // _sub(G, a, k).order
    pw = G.power
    coords = frame.coords
    if frame.case != 1 or m % 2 == 0:
        raise ConstructionFailed("even index requires k outside <a> and odd |G : <a, k>|")
    total = H.count()
    H = amalgamate(H, 0, k)
    total -= 2
    run.record("H1", H, 0, sink)

    def shape_h(i):
        return {v for v in range(G.order) if (coords[v][2] == 0 and coords[v][1] <= 2 * i - 2)
                or (coords[v][2] == 1 and coords[v][0] % q in (0, 1))}

    _expect_component(H, shape_h(1), total, "H1")
    for i in range(2, (m + 1) // 2 + 1):
        u = pw(b, 2 * i - 3)
        H = amalgamate_pair(H, u, k)
        run.record(f"H{i - 1}'", H, u, sink)
        u = pw(b, 2 * i - 2)
        H = amalgamate(H, u, k)
        total -= 2
        run.record(f"H{i}", H, u, sink)
        _expect_component(H, shape_h(i), total, f"H{i}")
    for i in range(2, q // 2 + 1):
        u = pw(a, 2 * i - 2)
        H = amalgamate(H, u, k)
        total -= 2
        run.record(f"K{i}", H, u, sink)
        members = {v for v in range(G.order) if coords[v][2] == 0 or coords[v][0] % q <= 2 * i - 1}
        _expect_component(H, members, total, f"K{i}")
    return H


def decomposition(G: FiniteGroup, a: int, b: int, k: int) -> dict:
    """``a = a' + k'`` and ``b = b' + k''`` with ``a', b'`` in ``<a - b>`` and ``k', k''`` in ``<k>``."""
    C = _sub(G, G.mul(a, G.inv(b)))
    out = {}
    for name, x in (("a", a), ("b", b)):
        kp = 0 if x in C else k
        out[name + "'"] = list(G.coord(G.mul(x, G.inv(kp))))
        out["k'" if name == "a" else "k''"] = list(G.coord(kp))
    return out


def abelian3_ham_cycle(G: FiniteGroup, a: int, b: int, k: int, *, run: Abelian3Run | None = None,
                       trace: IO | None = None) -> Certificate:
    """Hamiltonian cycle in ``Cay(G; a, b, b+k)``; labels index ``(a, b, b+k)``.

    ``run`` collects the branch taken and one record per surgery step;
    ``trace`` additionally receives those records as JSON lines.
    """
    validate(G, a, b, k)
    run = run if run is not None else Abelian3Run()
    gens = (a, b, G.mul(b, k))
    D = build_cayley(G, gens)
    c = G.mul(a, G.inv(b))
    if not _sub(G, c, k).is_whole:
        run.branch = "nongenerating"
        cert = reduce_components_nongenerating(G, a, b, k, run, trace)
    elif _sub(G, b, k).is_whole:
        run.branch = "bk-generates"
        cert = _bk_generates(G, a, b, k)
    else:
        frame = coordinate_frame(G, a, b, k)
        run.frame_case = frame.case
        run.decomposition = decomposition(G, a, b, k)
        H = h0_construct(G, a, b, k)
        run.record("H0", H, sink=trace)
        q = G.order // _sub(G, b, k).order
        if q % 2:
            run.branch = "odd-index"
            H = _odd_schedule(G, a, b, k, H, frame, run, trace)
        else:
            run.branch = "even-index"
            H = _even_schedule(G, a, b, k, H, frame, run, trace)
        if H.count() != 1:
            raise ConstructionFailed(f"{H.count()} components remain after the schedule")
        cert = _cycle_certificate(H)
    v = verify_certificate(D, cert)
    if not v:
        raise ConstructionFailed(f"constructed cycle does not verify: {v.reason}")
    return cert


def valid_triples(G: FiniteGroup):
    """All (a, b, k) meeting the hypotheses, in index order."""
    involutions = [x for x in range(G.order) if G.element_order(x) == 2]
    for k in involutions:
        for a in range(1, G.order):
            for b in range(1, G.order):
                bk = G.mul(b, k)
                if len({a, b, bk}) != 3 or bk == 0:
                    continue
                if _sub(G, a, b, k).is_whole:
                    yield a, b, k
