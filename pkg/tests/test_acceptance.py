"""Acceptance checks, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line (visible with ``pytest -s``
or when this file is run directly) and then asserts.
"""

from __future__ import annotations

import sys
import time

import pytest

from cayleyham.abelian3 import (
    Abelian3Run,
    abelian3_ham_cycle,
    h0_component_formula,
    h0_construct,
    valid_triples,
)
from cayleyham.catalog import abelian_groups, build_entry, catalog, generating_pairs, generating_sets
from cayleyham.cayley import build_cayley, verify_certificate
from cayleyham.construct import abelian_ham_path, rankin_decide, small_commutator_applies, small_commutator_path
from cayleyham.families import (
    a4z2_example,
    g5_example,
    locke_witte_12k,
    milnor_instances,
    smallest_locke_witte_2k,
    theorem13_family,
)
from cayleyham.groups import Cyclic, build_group, commutator_subgroup, subgroup_generated
from cayleyham.search import (
    MilnorVerdict,
    TravelPattern,
    coset_structure,
    dfs_ham_cycle,
    dfs_ham_path,
    milnor_test,
    pattern_successors,
    structured_ham_path_2gen,
)

_printer = None


@pytest.fixture(autouse=True)
def _uncaptured(capsys):
    global _printer
    _printer = capsys
    yield
    _printer = None


def report(n: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {n:2d}. {title}" + (f" ({detail})" if detail else "")
    if _printer is not None:
        with _printer.disabled():
            print(line)
    else:
        print(line)
    assert ok, line


# ---------------------------------------------------------------------------
# 1. Z12 ⋉ Z5


A, B = 0, 1
# (i, range of m) -> cycle z^j h^i written as (j, i), alternating with the label travelled
G5_CYCLES = {
    (0, range(0, 9)): [(2, 3), B, (1, 6), B, (3, 9), B, (4, 0), B, (2, 3)],
    (0, range(9, 12)): [(0, 2), A, (1, 4), B, (4, 7), A, (1, 9), B, (2, 0), B, (0, 3), A, (2, 5), B, (3, 8), B,
                        (1, 11), B, (0, 2)],
    (1, range(0, 8)): [(0, 4), B, (3, 7), B, (2, 10), B, (4, 1), B, (0, 4)],
    (1, range(8, 12)): [(0, 1), B, (1, 4), A, (0, 6), B, (2, 9), B, (3, 0), B, (1, 3), A, (3, 5), B, (4, 8), A,
                        (3, 10), B, (0, 1)],
    (2, range(0, 10)): [(0, 5), B, (1, 8), B, (4, 11), B, (3, 2), B, (0, 5)],
    (2, range(10, 12)): [(2, 3), A, (4, 5), A, (2, 7), A, (4, 9), A, (2, 11), A, (4, 1), A, (2, 3)],
    (3, range(0, 11)): [(0, 7), B, (4, 10), B, (1, 1), B, (2, 4), B, (0, 7)],
    (3, range(11, 12)): [(3, 2), A, (4, 4), A, (3, 6), A, (4, 8), A, (3, 10), A, (4, 0), A, (3, 2)],
}


def test_criterion_1_g5_example():
    t = time.perf_counter()
    G, (a, b) = g5_example().build()
    rep = structured_ham_path_2gen(G, [a, b], exhaustive=True)
    st = coset_structure(G, a, b)

    def el(j, i):  # z^j h^i = h^i z^(j u^i)
        return G.index((i % 12, (j * pow(3, i % 12, 5)) % 5))

    missing = []
    for (i, ms), cyc in G5_CYCLES.items():
        regular = min(c for c in st.regular if el(i, 0) in c)
        for m in ms:
            pat = TravelPattern(tuple((c[0], A if c == regular else B) for c in st.regular), 11 - m)
            succ = pattern_successors(st, pat)
            for t_ in range(0, len(cyc) - 2, 2):
                if succ[el(*cyc[t_])] != (cyc[t_ + 1], el(*cyc[t_ + 2])):
                    missing.append((i, m))
                    break
    elapsed = time.perf_counter() - t
    ok = (rep.verdict is False and rep.stats["patterns_total"] == 192 == 2**4 * st.H.order
          and not missing and elapsed < 1)
    report(1, "Z12 ⋉ Z5: 192 patterns, no path, 8 cycle ranges match", ok,
           f"{rep.stats['patterns_total']} patterns, mismatches {missing}, {elapsed:.2f}s")


# ---------------------------------------------------------------------------
# 2-4. non-traceable families


def test_criterion_2_theorem_family_p7():
    t = time.perf_counter()
    G, (a, b) = theorem13_family(7, 1).build()
    rep = structured_ham_path_2gen(G, [a, b], exhaustive=True)
    elapsed = time.perf_counter() - t
    ok = (rep.verdict is False and rep.stats["patterns_total"] == 384 and commutator_subgroup(G).order == 7
          and G.element_order(a) == 2 and G.element_order(b) == 3 and G.order == 42 and elapsed < 1)
    report(2, "theorem family p=7, n=1: 384 patterns, no path", ok, f"{elapsed:.2f}s")


def test_criterion_3_a4z2():
    t = time.perf_counter()
    G, S = a4z2_example().build()
    D = build_cayley(G, S)
    rep = dfs_ham_path(D, workers=1)
    elapsed = time.perf_counter() - t
    ok = G.order == 24 and D.is_connected() and rep.verdict is False and elapsed < 60
    report(3, "A4 x Z2: DFS finds no hamiltonian path", ok, f"{rep.stats['nodes']} nodes, {elapsed:.2f}s")


def test_criterion_4_milnor_sweep():
    insts = milnor_instances(72)
    bad = []
    for inst in insts:
        G = build_entry_for(inst)
        if milnor_test(G, inst.a, inst.b) is not MilnorVerdict.NO_PATH:
            bad.append((inst.name, inst.a, inst.b, "test"))
        elif structured_ham_path_2gen(G, [inst.a, inst.b]).verdict is not False:
            bad.append((inst.name, inst.a, inst.b, "search"))
    report(4, "Milnor sweep up to order 72: no counterexamples", bool(insts) and not bad,
           f"{len(insts)} instances, {len(bad)} counterexamples")


_groups: dict = {}


def build_entry_for(inst):
    if inst.name not in _groups:
        _groups[inst.name] = build_group(inst.spec)
    return _groups[inst.name]


# ---------------------------------------------------------------------------
# 5-7. constructions


def test_criterion_5_rankin_equivalence():
    disagree = []
    count = 0
    for n in range(3, 25):
        G = build_group(Cyclic(n))
        for a in range(1, n):
            for b in range(1, n):
                if a == b or not subgroup_generated(G, [a, b]).is_whole:
                    continue
                count += 1
                r = rankin_decide(G, a, b) is not None
                d = dfs_ham_cycle(build_cayley(G, [a, b]), workers=1).verdict
                if r != d:
                    disagree.append((n, a, b))
    z12 = rankin_decide(build_group(Cyclic(12)), 2, 3)
    report(5, "Rankin verdict equals DFS on connected Cay(Z_n; a, b), n <= 24", not disagree and z12 is None,
           f"{count} digraphs, {len(disagree)} disagreements")


def test_criterion_6_abelian_paths():
    fails = []
    count = 0
    for entry in abelian_groups(48):
        G = entry.build()
        for size in (1, 2, 3):
            for S in generating_sets(G, size):
                count += 1
                if not verify_certificate(build_cayley(G, S), abelian_ham_path(G, S)):
                    fails.append((entry.name, S))
    report(6, "abelian_ham_path verifies on every abelian group <= 48, |S| <= 3", not fails,
           f"{count} digraphs, {len(fails)} failures")


def test_criterion_7_small_commutator():
    fails = []
    count = 0
    for entry in catalog(48):
        G = build_entry(entry)
        if not small_commutator_applies(G):
            continue
        for size in (1, 2, 3):
            for S in generating_sets(G, size):
                count += 1
                try:
                    ok = bool(verify_certificate(build_cayley(G, S), small_commutator_path(G, S)))
                except Exception as exc:  # any error counts as a failure here
                    ok = False
                    S = (S, repr(exc))
                if not ok:
                    fails.append((entry.name, S))
    report(7, "small_commutator_path verifies on catalog groups <= 48 with small [G,G]", not fails,
           f"{count} digraphs, {len(fails)} failures")


# ---------------------------------------------------------------------------
# 8. three generators on abelian groups


def test_criterion_8_abelian3_sweep():
    t = time.perf_counter()
    fails = []
    h0_bad = []
    count = 0
    for entry in abelian_groups(64):
        G = entry.build()
        if any(o == G.order for o in G.element_orders):
            continue
        for a, b, k in valid_triples(G):
            count += 1
            run = Abelian3Run()
            try:
                cert = abelian3_ham_cycle(G, a, b, k, run=run)
                ok = bool(verify_certificate(build_cayley(G, [a, b, G.mul(b, k)]), cert)) and not run.incidents
            except Exception as exc:
                ok = False
                run.incidents.append(repr(exc))
            if not ok:
                fails.append((entry.name, a, b, k, run.incidents))
            if run.branch in ("odd-index", "even-index"):
                n = h0_construct(G, a, b, k).count()
                if n != h0_component_formula(G, a, b, k) or n % 2 == 0:
                    h0_bad.append((entry.name, a, b, k, n))
    elapsed = time.perf_counter() - t
    report(8, "abelian3 cycle for every valid triple, |G| <= 64; H0 count formula, odd",
           not fails and not h0_bad and elapsed < 600,
           f"{count} triples, {len(fails)} failures, {len(h0_bad)} H0 mismatches, {elapsed:.0f}s")


# ---------------------------------------------------------------------------
# 9-10


def test_criterion_9_locke_witte():
    G, S = locke_witte_12k(1).build()
    first = dfs_ham_cycle(build_cayley(G, S), workers=1).verdict
    inst = smallest_locke_witte_2k(12)
    H, T = inst.build()
    second = dfs_ham_cycle(build_cayley(H, T), workers=1).verdict
    ok = [G.coord(s)[0] for s in S] == [6, 8, 9] and first is False and second is False
    report(9, "Locke-Witte: Cay(Z12; 6, 8, 9) and smallest 2k instance have no cycle", ok,
           f"2k instance {inst.params}")


def _oracle_sweep(max_order: int) -> tuple[int, list, list]:
    count = 0
    disagree = []
    certs = []
    for entry in catalog(max_order):
        G = build_entry(entry)
        if G.order < 3:
            continue
        for a, b in generating_pairs(G):
            count += 1
            D = build_cayley(G, [a, b])
            d = dfs_ham_path(D, workers=1)
            s = structured_ham_path_2gen(G, [a, b], workers=1)
            if d.verdict != s.verdict:
                disagree.append((entry.name, a, b))
            for r in (d, s):
                if r.certificate is not None and not verify_certificate(D, r.certificate):
                    disagree.append((entry.name, a, b, r.method))
            certs.append((d.certificate, s.certificate))
    return count, disagree, certs


def test_criterion_10_oracle_agreement():
    count, disagree, first = _oracle_sweep(40)
    _, _, second = _oracle_sweep(40)
    report(10, "DFS and structured agree on 2-generated digraphs <= 40; deterministic", not disagree and
           first == second, f"{count} digraphs, {len(disagree)} disagreements")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
