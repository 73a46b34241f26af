from __future__ import annotations

import pytest

from cayleyham.cayley import build_cayley
from cayleyham.errors import BadPrime, ConditionFailed
from cayleyham.families import (
    a4z2_example,
    g5_example,
    locke_witte_12k,
    locke_witte_2k,
    milnor_instances,
    smallest_locke_witte_2k,
    theorem13_family,
)
from cayleyham.groups import commutator_subgroup, is_cyclic, subgroup_generated
from cayleyham.search import dfs_ham_cycle, dfs_ham_path, structured_ham_path_2gen


def test_theorem13_parameters():
    inst = theorem13_family(7, 1)
    assert (inst.params["alpha"], inst.params["beta"], inst.params["r"]) == (2, 3, 3)
    G, (a, b) = inst.build()
    assert G.order == 42
    inst = theorem13_family(7, 4)
    assert (inst.params["alpha"], inst.params["beta"]) == (8, 9)
    G, (a, b) = inst.build()
    assert G.order == 504 and G.element_order(a) == 8 and G.element_order(b) == 9


def test_theorem13_other_primes():
    for p, n in ((11, 2), (19, 3)):
        inst = theorem13_family(p, n)
        G, (a, b) = inst.build()
        assert G.element_order(a) > n and G.element_order(b) > n
        assert commutator_subgroup(G).order == p


@pytest.mark.parametrize("p", [2, 3, 5, 9, 13])
def test_theorem13_bad_primes(p):
    with pytest.raises(BadPrime):
        theorem13_family(p, 1)


def test_theorem13_unsafe_any_prime():
    inst = theorem13_family(5, 1, unsafe_any_prime=True)
    assert not inst.strict
    G, _ = inst.build()
    P = inst.params
    assert G.order == P["alpha"] * P["beta"] * 5
    with pytest.raises(BadPrime):
        theorem13_family(9, 1, unsafe_any_prime=True)


def test_g5_facts():
    G, (a, b) = g5_example().build()
    assert G.order == 60 and commutator_subgroup(G).order == 5
    assert build_cayley(G, [a, b]).is_connected()
    assert structured_ham_path_2gen(G, [a, b]).verdict is False


def test_a4z2_facts():
    G, (a, b) = a4z2_example().build()
    C = commutator_subgroup(G)
    assert C.order == 4 and not is_cyclic(G, C)
    assert subgroup_generated(G, [a, b]).is_whole
    assert dfs_ham_path(build_cayley(G, [a, b])).verdict is False


def test_milnor_instances():
    assert milnor_instances(20) == []
    found = milnor_instances(60)
    assert found and all(x.spec.__class__.__name__ for x in found)
    assert not any(x.name == "A4" for x in found)
    assert min(9 * x.ab2_order for x in found) <= 60


def test_locke_witte_12k():
    G, S = locke_witte_12k(1).build()
    assert G.order == 12 and [G.coord(s)[0] for s in S] == [6, 8, 9]
    assert dfs_ham_cycle(build_cayley(G, S)).verdict is False


def test_locke_witte_conditions():
    with pytest.raises(ConditionFailed) as err:
        locke_witte_2k(2, 5, 9)
    assert err.value.clause == "iii"
    inst = smallest_locke_witte_2k(12)
    assert inst is not None
    G, S = inst.build()
    assert build_cayley(G, S).is_connected()
    assert dfs_ham_cycle(build_cayley(G, S)).verdict is False
