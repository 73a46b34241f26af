"""Exact decision procedures for hamiltonian paths and cycles.

Two independent routes:

* :func:`dfs_ham_path` / :func:`dfs_ham_cycle` - exhaustive backtracking
  over any Cayley digraph, with reachability and dead-end pruning.
* :func:`structured_ham_path_2gen` - for ``S = {a, b}``, enumerate travel
  patterns: one generator per regular coset of ``H = <a b^-1>`` plus a split
  index ``d`` in the terminal coset ``a^-1 H``.  Every hamiltonian path from
  the identity induces exactly one such pattern, and each pattern determines
  at most one candidate path, so the enumeration is a complete decision.
"""

from __future__ import annotations

import enum
import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .cayley import CYCLE, PATH, CayleyDigraph, Certificate, build_cayley, verify_certificate
from .errors import BudgetExceeded, NotTwoGenerated, PatternLimitExceeded
from .groups import FiniteGroup, Subgroup, left_cosets, subgroup_generated

DEFAULT_NODE_CAP = 10**8
PATTERN_LIMIT = 2**24
WORKERS_ENV = "CAYLEYHAM_WORKERS"


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


@dataclass
class SearchReport:
    verdict: bool | None  # None means unknown (budget exhausted)
    certificate: Certificate | None = None
    stats: dict = field(default_factory=dict)
    method: str = ""
    pattern: "TravelPattern | None" = None

    @property
    def exists(self) -> bool | None:
        return self.verdict


# ---------------------------------------------------------------------------
# backtracking


class _Abort(Exception):
    pass


def _dfs(D: CayleyDigraph, start: int, cycle: bool, node_cap: int, prefix: Sequence[int] = ()):
    """Backtracking from ``start``.  Returns (labels or None, nodes expanded).

    ``prefix`` forces the first labels (used to split work across workers).
    """
    n = D.order
    succ = D.succ
    pred = D.pred()
    k = D.degree
    visited = bytearray(n)
    visited[start] = 1
    # in-neighbours still usable (unvisited, or the current endpoint)
    avail_in = [k] * n
    # unvisited out-neighbours
    out_free = [k] * n
    for u in pred[start]:
        out_free[u] -= 1
    dead = sum(1 for w in range(n) if not visited[w] and out_free[w] == 0)
    closes = [False] * n
    if cycle:
        for u in pred[start]:
            closes[u] = True
    labels: list[int] = []
    nodes = 0
    if n == 1:
        return ([], 0) if not cycle else (None, 0)

    def step(cur: int, depth: int, dead: int):
        nonlocal nodes
        if depth == n - 1:
            if not cycle:
                return True
            for lab in range(k):
                if succ[cur][lab] == start:
                    labels.append(lab)
                    return True
            return False
        choices = range(k) if depth >= len(prefix) else (prefix[depth],)
        for lab in choices:
            v = succ[cur][lab]
            if visited[v]:
                continue
            nodes += 1
            if nodes > node_cap:
                raise _Abort
            # v would have no exits left while vertices remain
            if out_free[v] == 0 and depth + 2 < n:
                continue
            # another vertex is already a forced endpoint
            if dead - (1 if out_free[v] == 0 else 0) > (0 if depth + 2 == n else 1):
                continue
            visited[v] = 1
            ok = True
            new_dead = dead - (1 if out_free[v] == 0 else 0)
            touched_out = []
            for u in pred[v]:
                out_free[u] -= 1
                touched_out.append(u)
                if not visited[u] and out_free[u] == 0:
                    new_dead += 1
                    if cycle and not closes[u]:
                        ok = False
            if new_dead > 1:
                ok = False
            touched_in = []
            if ok:
                for w in succ[cur]:
                    if w != v and (not visited[w] or (cycle and w == start)):
                        avail_in[w] -= 1
                        touched_in.append(w)
                        if avail_in[w] == 0:
                            ok = False
            if ok:
                labels.append(lab)
                if step(v, depth + 1, new_dead):
                    return True
                labels.pop()
            for w in touched_in:
                avail_in[w] += 1
            for u in touched_out:
                out_free[u] += 1
            visited[v] = 0
        return False

    found = step(start, 0, dead)
    return (list(labels) if found else None), nodes


def _dfs_worker(args):
    group, gens, start, cycle, node_cap, prefix = args
    D = CayleyDigraph(group, gens)
    try:
        labels, nodes = _dfs(D, start, cycle, node_cap, prefix)
        return labels, nodes, False
    except _Abort:
        return None, node_cap, True


def _run_dfs(D: CayleyDigraph, start: int, cycle: bool, node_cap: int, workers: int | None) -> SearchReport:
    kind = CYCLE if cycle else PATH
    method = "dfs"
    workers = default_workers() if workers is None else workers
    if workers <= 1 or D.degree < 2 or D.order < 3:
        try:
            labels, nodes = _dfs(D, start, cycle, node_cap)
        except _Abort:
            return SearchReport(None, None, {"nodes": node_cap, "budget_exceeded": True}, method)
        cert = Certificate(kind, start, labels) if labels is not None else None
        return SearchReport(labels is not None, cert, {"nodes": nodes}, method)
    jobs = [(D.group, D.generators, start, cycle, node_cap, (lab,)) for lab in range(D.degree)]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        results = list(ex.map(_dfs_worker, jobs))
    total = sum(r[1] for r in results)
    for labels, _, aborted in results:
        if labels is not None:
            return SearchReport(True, Certificate(kind, start, labels), {"nodes": total, "workers": workers}, method)
        if aborted:
            return SearchReport(None, None, {"nodes": total, "budget_exceeded": True}, method)
    return SearchReport(False, None, {"nodes": total, "workers": workers}, method)


def dfs_ham_path(D: CayleyDigraph, fixed_start: int | None = None, *, node_cap: int = DEFAULT_NODE_CAP,
                 workers: int | None = None) -> SearchReport:
    """Exhaustive hamiltonian path search.

    Without ``fixed_start`` the path starts at the identity, which loses
    nothing because Cayley digraphs are vertex-transitive.  A verdict of
    ``None`` means the node cap was hit.
    """
    start = 0 if fixed_start is None else D.group.check(fixed_start)
    return _run_dfs(D, start, False, node_cap, workers)


def dfs_ham_cycle(D: CayleyDigraph, *, node_cap: int = DEFAULT_NODE_CAP, workers: int | None = None) -> SearchReport:
    return _run_dfs(D, 0, True, node_cap, workers)


# ---------------------------------------------------------------------------
# travel patterns


@dataclass(frozen=True)
class TravelPattern:
    """Generator label (0 = a, 1 = b) per regular coset, keyed by coset representative,
    plus the terminal-coset split ``d``."""

    labels: tuple  # ((representative, label), ...) in ascending representative order
    d: int

    def label_of(self, rep: int) -> int:
        return dict(self.labels)[rep]


@dataclass(frozen=True)
class CosetStructure:
    """Arc-forcing data for ``Cay(G; a, b)``."""

    group: FiniteGroup
    a: int
    b: int
    H: Subgroup
    terminal: tuple  # terminal[i] = a^-1 (b a^-1)^i
    regular: tuple  # regular cosets, each a sorted tuple, ascending representative

    @property
    def pattern_count(self) -> int:
        return 2 ** len(self.regular) * len(self.terminal)


def coset_structure(G: FiniteGroup, a: int, b: int) -> CosetStructure:
    inv = G.inverses
    H = subgroup_generated(G, [G.mul(a, inv[b])])
    ba = G.mul(b, inv[a])
    t = inv[a]
    terminal = []
    for _ in range(H.order):
        terminal.append(t)
        t = G.mul(t, ba)
    tset = set(terminal)
    regular = tuple(c for c in left_cosets(G, H) if c[0] not in tset)
    return CosetStructure(G, a, b, H, tuple(terminal), regular)


def pattern_successors(st: CosetStructure, pattern: TravelPattern) -> list[tuple[int, int]]:
    """Functional digraph of a pattern: ``succ[v] = (label, w)``; the terminal vertex maps to (-1, -1)."""
    G = st.group
    gens = (st.a, st.b)
    succ: list[tuple[int, int]] = [(-1, -1)] * G.order
    lab_of = dict(pattern.labels)
    for coset in st.regular:
        lab = lab_of[coset[0]]
        for v in coset:
            succ[v] = (lab, G.mul(v, gens[lab]))
    for i, t in enumerate(st.terminal):
        if i < pattern.d:
            succ[t] = (1, G.mul(t, st.b))
        elif i > pattern.d:
            succ[t] = (0, G.mul(t, st.a))
    return succ


def _follow(succ_v: list[int], succ_l: list[int], n: int) -> list[int] | None:
    """Labels of the walk from the identity if it is a hamiltonian path."""
    seen = bytearray(n)
    v = 0
    seen[0] = 1
    labels = []
    while succ_v[v] >= 0:
        labels.append(succ_l[v])
        v = succ_v[v]
        if seen[v]:
            return None
        seen[v] = 1
    return labels if len(labels) == n - 1 else None


def induced_pattern(st: CosetStructure, cert: Certificate) -> TravelPattern:
    """Read off the travel pattern of a hamiltonian path starting at the identity."""
    G = st.group
    gens = (st.a, st.b)
    travel = {}
    v = cert.start
    for lab in cert.labels:
        travel[v] = lab
        v = G.mul(v, gens[lab])
    labels = []
    for coset in st.regular:
        labs = {travel[x] for x in coset}
        if len(labs) != 1:
            raise ValueError(f"regular coset {coset[0]} does not travel by a single generator")
        labels.append((coset[0], labs.pop()))
    d = st.terminal.index(v)
    return TravelPattern(tuple(labels), d)


def _structured_exhaustive(st: CosetStructure, limit: int, first_labels: Sequence[int] | None = None):
    G = st.group
    n = G.order
    total = st.pattern_count
    if total > limit:
        raise PatternLimitExceeded(f"{total} travel patterns exceeds the limit {limit}")
    gens = (st.a, st.b)
    rows = G.rows
    r = len(st.regular)
    base_v = [-1] * n
    base_l = [-1] * n
    checked = 0
    heads = [(x,) for x in (first_labels if first_labels is not None else (0, 1))] if r else [()]
    for head in heads:
        for tail in itertools.product((0, 1), repeat=max(r - len(head), 0)):
            labs = head + tail
            for coset, lab in zip(st.regular, labs):
                s = gens[lab]
                for v in coset:
                    base_v[v] = rows[v][s]
                    base_l[v] = lab
            for d in range(len(st.terminal)):
                for i, t in enumerate(st.terminal):
                    if i < d:
                        base_v[t], base_l[t] = rows[t][st.b], 1
                    elif i > d:
                        base_v[t], base_l[t] = rows[t][st.a], 0
                    else:
                        base_v[t], base_l[t] = -1, -1
                checked += 1
                path = _follow(base_v, base_l, n)
                if path is not None:
                    pattern = TravelPattern(tuple((c[0], l) for c, l in zip(st.regular, labs)), d)
                    return path, pattern, checked
    return None, None, checked


def _structured_pruned(st: CosetStructure, limit: int, first_labels: Sequence[int] | None = None):
    """Backtracking over regular cosets; a partial assignment is discarded as soon as
    its arcs close a cycle, since every completion would contain that cycle."""
    G = st.group
    n = G.order
    gens = (st.a, st.b)
    rows = G.rows
    regular = st.regular
    r = len(regular)
    h = len(st.terminal)
    succ_v = [-1] * n
    succ_l = [-1] * n
    stats = {"checked": 0, "pruned": 0}
    labs: list[int] = []
    terminal = st.terminal

    def closes_cycle(vertices) -> bool:
        for v in vertices:
            w = succ_v[v]
            steps = 0
            while w >= 0 and steps <= n:
                if w == v:
                    return True
                w = succ_v[w]
                steps += 1
        return False

    def leaf():
        for d in range(h):
            for i, t in enumerate(terminal):
                if i < d:
                    succ_v[t], succ_l[t] = rows[t][st.b], 1
                elif i > d:
                    succ_v[t], succ_l[t] = rows[t][st.a], 0
                else:
                    succ_v[t], succ_l[t] = -1, -1
            stats["checked"] += 1
            if stats["checked"] > limit:
                raise PatternLimitExceeded(f"more than {limit} travel patterns examined")
            path = _follow(succ_v, succ_l, n)
            if path is not None:
                return path, d
        for t in terminal:
            succ_v[t] = succ_l[t] = -1
        return None

    def rec(i: int):
        if i == r:
            return leaf()
        choices = (0, 1) if (i > 0 or first_labels is None) else tuple(first_labels)
        for lab in choices:
            coset = regular[i]
            s = gens[lab]
            for v in coset:
                succ_v[v] = rows[v][s]
                succ_l[v] = lab
            if closes_cycle(coset):
                stats["pruned"] += 2 ** (r - i - 1) * h
            else:
                labs.append(lab)
                found = rec(i + 1)
                if found is not None:
                    return found
                labs.pop()
            for v in coset:
                succ_v[v] = succ_l[v] = -1
        return None

    found = rec(0)
    if found is None:
        return None, None, stats
    path, d = found
    pattern = TravelPattern(tuple((c[0], l) for c, l in zip(regular, labs)), d)
    return path, pattern, stats


def _structured_worker(args):
    G, a, b, exhaustive, limit, first = args
    st = coset_structure(G, a, b)
    if exhaustive:
        path, pattern, checked = _structured_exhaustive(st, limit, (first,))
        return path, pattern, {"checked": checked}
    return _structured_pruned(st, limit, (first,))


def structured_ham_path_2gen(G: FiniteGroup, S: Sequence[int], *, exhaustive: bool = False,
                             pattern_limit: int = PATTERN_LIMIT, workers: int | None = None) -> SearchReport:
    """Complete travel-pattern search for a hamiltonian path in ``Cay(G; a, b)``.

    ``exhaustive=True`` evaluates every one of the ``2^r * |H|`` patterns one
    by one; the default discards partial assignments that already close a
    cycle.  Both enumerate in the same order, so they return the same
    certificate.
    """
    S = tuple(S)
    if len(S) != 2 or S[0] == S[1]:
        raise NotTwoGenerated(f"structured search needs exactly two distinct generators, got {S}")
    D = build_cayley(G, S)
    a, b = S
    if not D.is_connected():
        return SearchReport(False, None, {"disconnected": True}, "structured")
    st = coset_structure(G, a, b)
    total = st.pattern_count
    stats = {"patterns_total": total, "regular_cosets": len(st.regular), "H_order": st.H.order}
    workers = default_workers() if workers is None else workers
    if workers > 1 and st.regular:
        jobs = [(G, a, b, exhaustive, pattern_limit, first) for first in (0, 1)]
        with ProcessPoolExecutor(max_workers=min(workers, 2)) as ex:
            results = list(ex.map(_structured_worker, jobs))
        path = pattern = None
        checked = pruned = 0
        for p, pat, sub in results:
            checked += sub.get("checked", 0)
            pruned += sub.get("pruned", 0)
            if p is not None and path is None:
                path, pattern = p, pat
        stats.update(checked=checked, pruned=pruned, workers=workers)
    elif exhaustive:
        path, pattern, checked = _structured_exhaustive(st, pattern_limit)
        stats["checked"] = checked
    else:
        path, pattern, sub = _structured_pruned(st, pattern_limit)
        stats.update(sub)
    if path is None:
        return SearchReport(False, None, stats, "structured")
    cert = Certificate(PATH, 0, path)
    return SearchReport(True, cert, stats, "structured", pattern)


# ---------------------------------------------------------------------------
# Milnor's criterion


class MilnorVerdict(enum.Enum):
    NO_PATH = "NoPath"
    INCONCLUSIVE = "Inconclusive"


def milnor_bound(G: FiniteGroup, a: int, b: int, sharp: bool = False) -> int:
    """Smallest group order for which the criterion rules out a hamiltonian path."""
    m = G.element_order(G.mul(a, G.mul(b, b)))
    return 9 * m - 2 if sharp else 9 * m


def milnor_test(G: FiniteGroup, a: int, b: int, sharp: bool = False) -> MilnorVerdict:
    """``NO_PATH`` when a^2 = b^3 = e, <a, b> = G and |G| >= 9|ab^2|
    (``9|ab^2| - 2`` with ``sharp``); never claims traceability."""
    if G.element_order(a) != 2 or G.element_order(b) != 3:
        return MilnorVerdict.INCONCLUSIVE
    if not subgroup_generated(G, [a, b]).is_whole:
        return MilnorVerdict.INCONCLUSIVE
    if G.order >= milnor_bound(G, a, b, sharp):
        return MilnorVerdict.NO_PATH
    return MilnorVerdict.INCONCLUSIVE


def decide_path(G: FiniteGroup, S: Sequence[int], method: str = "auto", **kw) -> SearchReport:
    """Dispatch helper: structured search for two generators, DFS otherwise."""
    D = build_cayley(G, S)
    if method == "structured" or (method == "auto" and len(S) == 2):
        return structured_ham_path_2gen(G, S, **kw)
    if not D.is_connected():
        return SearchReport(False, None, {"disconnected": True}, "dfs")
    return dfs_ham_path(D, **kw)


def decide_cycle(G: FiniteGroup, S: Sequence[int], **kw) -> SearchReport:
    D = build_cayley(G, S)
    if not D.is_connected():
        return SearchReport(False, None, {"disconnected": True}, "dfs")
    return dfs_ham_cycle(D, **kw)


def checked_report(D: CayleyDigraph, report: SearchReport) -> SearchReport:
    """Assert the report's certificate (if any) verifies."""
    if report.certificate is not None:
        v = verify_certificate(D, report.certificate)
        if not v:
            raise AssertionError(f"search produced an invalid certificate: {v.reason}")
    return report
