from __future__ import annotations

import io
import json
import random

import pytest

from cayleyham.abelian3 import (
    A,
    Abelian3Run,
    ArcSystem,
    abelian3_ham_cycle,
    amalgamate,
    amalgamate_pair,
    coordinate_frame,
    h0_component_formula,
    h0_construct,
    reduce_components_nongenerating,
    three_arc_rotate,
    valid_triples,
)
from cayleyham.catalog import abelian_groups, build_entry
from cayleyham.cayley import build_cayley, verify_certificate
from cayleyham.errors import ArcNotInDigraph, PreconditionFailed
from cayleyham.groups import Cyclic, DirectProduct, build_group, subgroup_generated
from cayleyham.search import dfs_ham_cycle


def _z(*ns):
    return build_group(DirectProduct(tuple(Cyclic(n) for n in ns)))


@pytest.fixture(scope="module")
def z4z2():
    G = _z(4, 2)
    return G, G.index((3, 0)), G.index((2, 0)), G.index((0, 1))


def _generates(G, *xs):
    return subgroup_generated(G, list(xs)).is_whole


def test_h0_example(z4z2):
    G, a, b, k = z4z2
    H = h0_construct(G, a, b, k)
    assert coordinate_frame(G, a, b, k).case == 1
    assert H.in_class_E(k)
    assert H.count() == h0_component_formula(G, a, b, k) == 3


def test_coordinate_frame_is_bijective():
    for G in (_z(4, 2), _z(6, 2), _z(4, 4), _z(2, 2, 2)):
        for a, b, k in valid_triples(G):
            if not _generates(G, G.mul(a, G.inv(b)), k) or _generates(G, b, k):
                continue
            frame = coordinate_frame(G, a, b, k)
            assert len(set(frame.coords)) == G.order


def test_h0_odd_and_formula_small():
    for entry in abelian_groups(32):
        G = build_entry(entry)
        if any(G.element_order(x) == G.order for x in range(G.order)):
            continue
        for a, b, k in valid_triples(G):
            if not _generates(G, G.mul(a, G.inv(b)), k) or _generates(G, b, k):
                continue
            H = h0_construct(G, a, b, k)
            assert H.in_class_E(k)
            assert H.count() == h0_component_formula(G, a, b, k)
            assert H.count() % 2 == 1


def test_rotation_preserves_parity(z4z2):
    G, a, b, k = z4z2
    H = h0_construct(G, a, b, k)
    rng = random.Random(3)
    legal = 0
    while legal < 1000:
        us = rng.sample(range(G.order), 3)
        try:
            H2 = three_arc_rotate(H, *us)
        except ArcNotInDigraph:
            continue
        assert H2.in_class_C()
        assert H2.count() % 2 == H.count() % 2
        legal += 1
        H = H2


def test_rotation_rejects_repeated_vertex(z4z2):
    G, a, b, k = z4z2
    H = h0_construct(G, a, b, k)
    with pytest.raises(PreconditionFailed):
        three_arc_rotate(H, 1, 1, 1)


def _amalgamation_sites(H, k):
    G = H.group
    a = H.gens[A]
    comp = H.components()
    for u in range(G.order):
        if H.labels[u] != A:
            continue
        uk, w = G.mul(u, k), G.mul(G.mul(u, a), k)
        yield u, len({comp[u], comp[uk], comp[w]}), comp[uk] == comp[w] != comp[u]


def test_amalgamate_counts():
    seen_triple = seen_pair = 0
    for G in (_z(4, 2), _z(6, 2)):
        for a, b, k in valid_triples(G):
            if not _generates(G, G.mul(a, G.inv(b)), k) or _generates(G, b, k):
                continue
            H0 = h0_construct(G, a, b, k)
            # H0 itself and everything one amalgamation away
            systems = [H0] + [amalgamate(H0, u, k) for u, d, _ in _amalgamation_sites(H0, k) if d == 3]
            for H in systems:
                for u, distinct, pair in _amalgamation_sites(H, k):
                    if distinct == 3:
                        out = amalgamate(H, u, k)
                        assert out.count() == H.count() - 2 and out.in_class_E(k)
                        seen_triple += 1
                    elif pair:
                        v = H.succ[G.mul(u, k)]
                        out = amalgamate_pair(H, u, k)
                        assert out.count() == H.count() and out.in_class_E(k)
                        comp = out.components()
                        assert comp[u] == comp[v]
                        seen_pair += 1
                    else:
                        with pytest.raises(PreconditionFailed):
                            amalgamate(H, u, k)
    assert seen_triple and seen_pair


def test_amalgamate_requires_a_arc(z4z2):
    G, a, b, k = z4z2
    H = h0_construct(G, a, b, k)
    u = next(v for v in range(G.order) if H.labels[v] != A)
    with pytest.raises(PreconditionFailed):
        amalgamate(H, u, k)


def test_klein_four_triples():
    G = _z(2, 2)
    triples = list(valid_triples(G))
    assert triples
    for a, b, k in triples:
        cert = abelian3_ham_cycle(G, a, b, k)
        assert len(cert.labels) == 4


def test_nongenerating_instance_with_trace():
    G = _z(2, 4)
    a, b, k = next((a, b, k) for a, b, k in valid_triples(G)
                   if not _generates(G, G.mul(a, G.inv(b)), k))
    run = Abelian3Run()
    sink = io.StringIO()
    cert = abelian3_ham_cycle(G, a, b, k, run=run, trace=sink)
    assert run.branch == "nongenerating"
    assert verify_certificate(build_cayley(G, [a, b, G.mul(b, k)]), cert)
    lines = [json.loads(x) for x in sink.getvalue().splitlines()]
    assert lines and all({"step", "u", "components", "digest"} <= set(x) for x in lines)
    counts = [x["components"] for x in lines]
    assert all(x > y for x, y in zip(counts, counts[1:]))
    assert not run.incidents


def test_nongenerating_rejects_generating_pair(z4z2):
    G, a, b, k = z4z2
    with pytest.raises(PreconditionFailed):
        reduce_components_nongenerating(G, a, b, k)


def test_preconditions():
    Z8 = build_group(Cyclic(8))
    with pytest.raises(PreconditionFailed):
        abelian3_ham_cycle(Z8, 1, 2, 4)
    G = _z(4, 2)
    with pytest.raises(PreconditionFailed):
        abelian3_ham_cycle(G, G.index((1, 0)), G.index((2, 0)), G.index((1, 0)))
    with pytest.raises(PreconditionFailed):
        abelian3_ham_cycle(G, G.index((2, 0)), G.index((2, 1)), G.index((0, 1)))


def test_branches_and_step_records():
    branches = set()
    for G in (_z(4, 2), _z(6, 2), _z(4, 4), _z(2, 2, 2), _z(6, 6)):
        for a, b, k in valid_triples(G):
            run = Abelian3Run()
            abelian3_ham_cycle(G, a, b, k, run=run)
            branches.add(run.branch)
            if run.branch in ("odd-index", "even-index"):
                counts = [s["components"] for s in run.steps]
                assert counts[-1] == 1 and counts[0] % 2 == 1
                assert set(run.decomposition) == {"a'", "k'", "b'", "k''"}
    assert branches == {"nongenerating", "bk-generates", "odd-index", "even-index"}


def test_existence_matches_dfs():
    """On every distinct generator set {a, b, b+k} with |G| <= 32 both methods find a cycle."""
    for entry in abelian_groups(32):
        G = build_entry(entry)
        if any(G.element_order(x) == G.order for x in range(G.order)):
            continue
        seen = set()
        for a, b, k in valid_triples(G):
            S = frozenset((a, b, G.mul(b, k)))
            if S in seen:
                continue
            seen.add(S)
            cert = abelian3_ham_cycle(G, a, b, k)
            D = build_cayley(G, [a, b, G.mul(b, k)])
            assert verify_certificate(D, cert)
            assert dfs_ham_cycle(D, workers=1).verdict is True


def test_arc_system_values(z4z2):
    G, a, b, k = z4z2
    H = h0_construct(G, a, b, k)
    same = ArcSystem(G, H.gens, H.labels)
    assert same == H and same.digest() == H.digest()
    assert sorted(H.succ) == list(range(G.order))
