"""Constructive hamiltonicity: explicit paths and cycles built from group structure.

Internally every construction produces a *word*: the list of generator
elements traversed from the start vertex.  Public functions turn words into
label certificates and refuse to return anything that does not verify.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Callable, Sequence

from .cayley import CYCLE, PATH, Certificate, build_cayley, certificate_elements, verify_certificate
from .errors import (
    CommutatorNotContained,
    ConstructionFailed,
    NotAbelian,
    NotConnected,
    NotCyclicNormal,
    NotGenerating,
    NotHamCycleInQuotient,
    PreconditionFailed,
    SkewedSetNotGeneratingK,
)
from .groups import (
    FiniteGroup,
    Subgroup,
    commutator_subgroup,
    coset_index_map,
    is_cyclic,
    is_normal,
    normal_closure,
    restrict,
    right_cosets,
    subgroup_generated,
)

Word = list  # generator elements, in walk order
PathBuilder = Callable[[FiniteGroup, Sequence[int]], Word]


def _certify(G: FiniteGroup, S: Sequence[int], word: Sequence[int], kind: str = PATH, start: int = 0) -> Certificate:
    D = build_cayley(G, S)
    pos = {s: i for i, s in enumerate(D.generators)}
    cert = Certificate(kind, start, [pos[s] for s in word])
    v = verify_certificate(D, cert)
    if not v:
        raise ConstructionFailed(f"constructed {kind} does not verify: {v.reason}")
    return cert


def _require_connected(G: FiniteGroup, S: Sequence[int]) -> None:
    if not subgroup_generated(G, S).is_whole:
        raise NotConnected(f"the generators {list(S)} do not generate {G.name}")


# ---------------------------------------------------------------------------
# abelian paths


def _abelian_word(G: FiniteGroup, S: Sequence[int], base: Subgroup | None = None) -> Word:
    """Hamiltonian path in ``Cay(G/base; S)``, valid whenever G/base is abelian.

    Peels off the first generator ``s``: with a path ``(t_i)`` on the quotient
    by ``<base, s>``, the walk ``((s^(m-1), t_i)_i, s^(m-1))`` covers the group,
    where ``m`` is the order of ``s`` modulo the generators peeled after it.
    """
    base_gens = list(base.generators if base is not None and base.generators else (base.elements if base else ()))
    S = list(S)[::-1]
    # chain[i] = <base, S[i:]>
    chain = [0] * (len(S) + 1)
    chain[len(S)] = subgroup_generated(G, base_gens).order
    for i in range(len(S) - 1, -1, -1):
        chain[i] = subgroup_generated(G, base_gens + S[i:]).order

    def word(idx: int) -> Word:
        if idx == 0:
            return []
        s = S[idx - 1]
        m = chain[idx - 1] // chain[idx]
        inner = word(idx - 1)
        out: Word = []
        for t in inner:
            out.extend([s] * (m - 1))
            out.append(t)
        out.extend([s] * (m - 1))
        return out

    return word(len(S))


def abelian_ham_path(G: FiniteGroup, S: Sequence[int]) -> Certificate:
    """Hamiltonian path from the identity in a connected Cayley digraph on an abelian group."""
    if not G.is_abelian:
        raise NotAbelian(f"{G.name} is not abelian")
    _require_connected(G, S)
    return _certify(G, S, _abelian_word(G, S))


# ---------------------------------------------------------------------------
# lifting and skewing


def _lift_word(G: FiniteGroup, S: Sequence[int], N: Subgroup, inner: Word) -> Word:
    outer = _abelian_word(G, S, N)
    out: Word = []
    for s in outer:
        out.extend(inner)
        out.append(s)
    out.extend(inner)
    return out


def concat_lift_path(G: FiniteGroup, S: Sequence[int], N: Subgroup, inner: Certificate,
                     inner_gens: Sequence[int]) -> Certificate:
    """Lift a hamiltonian path of ``Cay(N; inner_gens)`` to ``Cay(G; S)``.

    ``G/N`` must be abelian; the result is ``(((t_j)_j, s_i)_i, (t_j)_j)`` with
    ``(s_i)`` an abelian path of ``Cay(G/N; S)``.
    """
    if not commutator_subgroup(G).members <= N.members:
        raise CommutatorNotContained("[G,G] is not contained in N, so G/N is not abelian")
    if not set(inner_gens) <= set(S) or not set(inner_gens) <= N.members:
        raise PreconditionFailed("inner generators must be elements of S lying in N")
    Ng, emb = restrict(G, N)
    back = {int(g): i for i, g in enumerate(emb)}
    D_in = build_cayley(Ng, [back[s] for s in inner_gens])
    if inner.kind != PATH or not verify_certificate(D_in, Certificate(PATH, 0, inner.labels)):
        raise PreconditionFailed("inner certificate is not a hamiltonian path of Cay(N; a, b)")
    _require_connected(G, S)
    word = _lift_word(G, S, N, [inner_gens[lab] for lab in inner.labels])
    return _certify(G, S, word)


def _is_quotient_cycle(G: FiniteGroup, K: Subgroup, cycle: Sequence[int]) -> bool:
    cosets = right_cosets(G, K)
    where = coset_index_map(G, cosets)
    if len(cycle) != len(cosets):
        return False
    seen = set()
    g = 0
    for s in cycle:
        if where[g] in seen:
            return False
        seen.add(where[g])
        g = G.mul(g, s)
    return where[g] == where[0]


def default_path_builder(G: FiniteGroup, S: Sequence[int]) -> Word:
    """Any hamiltonian path: structure first, complete search as the fallback."""
    S = list(S)
    if G.is_abelian:
        return _abelian_word(G, S)
    if small_commutator_applies(G):
        return _small_commutator_word(G, S)
    from .search import dfs_ham_path, structured_ham_path_2gen

    D = build_cayley(G, S)
    report = structured_ham_path_2gen(G, S) if len(S) == 2 else dfs_ham_path(D)
    if not report.verdict:
        raise ConstructionFailed(f"no hamiltonian path found in {D!r}")
    return certificate_elements(D, report.certificate)


def _skewed_word(G: FiniteGroup, S: Sequence[int], K: Subgroup, outer: Sequence[int],
                 builder: PathBuilder) -> Word:
    if not outer or not set(outer) <= set(S) or not _is_quotient_cycle(G, K, outer):
        raise NotHamCycleInQuotient("outer walk is not a hamiltonian cycle of the right-coset digraph")
    tail = list(outer[1:])
    sigma = G.prod(tail)
    skew = {}  # element of S*sigma -> the generator it came from
    for s in S:
        x = G.mul(s, sigma)
        if x != 0:
            skew.setdefault(x, s)
    if subgroup_generated(G, skew).elements != K.elements:
        raise SkewedSetNotGeneratingK("S * s_2...s_n does not generate K")
    Kg, emb = restrict(G, K)
    back = {int(g): i for i, g in enumerate(emb)}
    local = [back[x] for x in skew]
    inner = builder(Kg, local)
    # walk (s_2..s_n) and then one (t_j, s_2..s_n) block per step of the inner path
    out: Word = list(tail)
    for x in inner:
        out.append(skew[int(emb[x])])
        out.extend(tail)
    return out


def skewed_generators_path(G: FiniteGroup, S: Sequence[int], K: Subgroup, outer_cycle: Sequence[int],
                           builder: PathBuilder | None = None) -> Certificate:
    """Hamiltonian path from a coset cycle ``(s_i)`` of ``K \\ Cay(G; S)`` and a path on
    ``Cay(K; S s_2...s_n)``.

    ``outer_cycle`` lists generator elements.  The returned walk starts at the
    identity: ``((s_i)_{i=2}^n, (t_j, (s_i)_{i=2}^n)_j)`` where ``(t_j s_2...s_n)_j``
    is the inner path.
    """
    _require_connected(G, S)
    return _certify(G, S, _skewed_word(G, S, K, outer_cycle, builder or default_path_builder))


# ---------------------------------------------------------------------------
# factor group lemma and Rankin


def factor_group_cycle(G: FiniteGroup, S: Sequence[int], N: Subgroup,
                       quotient_cycle: Sequence[int]) -> Certificate | None:
    """Lift a hamiltonian cycle of ``Cay(G/N; S)`` to ``((s_i)_i)^|N|``.

    Returns None when ``<s_1...s_d> != N``, in which case the lifted walk is
    not hamiltonian.
    """
    if not is_normal(G, N) or not is_cyclic(G, N):
        raise NotCyclicNormal(f"subgroup of order {N.order} is not cyclic and normal")
    if not set(quotient_cycle) <= set(S) or not _is_quotient_cycle(G, N, quotient_cycle):
        raise NotHamCycleInQuotient("walk is not a hamiltonian cycle of Cay(G/N; S)")
    if subgroup_generated(G, [G.prod(quotient_cycle)]).elements != N.elements:
        return None
    return _certify(G, S, list(quotient_cycle) * N.order, CYCLE)


@dataclass(frozen=True)
class RankinWitness:
    k: int
    l: int


def _rankin_setup(G: FiniteGroup, a: int, b: int) -> Subgroup:
    if not G.is_abelian:
        raise NotAbelian(f"{G.name} is not abelian")
    if not subgroup_generated(G, [a, b]).is_whole:
        raise NotGenerating("a and b do not generate G")
    return subgroup_generated(G, [G.mul(a, G.inv(b))])


def rankin_decide(G: FiniteGroup, a: int, b: int) -> RankinWitness | None:
    """Find k, l >= 0 with k + l = |G : <a - b>| and <ka + lb> = <a - b>, or None.

    k is scanned from high to low, so an a-heavy witness is preferred.
    """
    H = _rankin_setup(G, a, b)
    d = H.index
    for k in range(d, -1, -1):
        x = G.mul(G.power(a, k), G.power(b, d - k))
        if subgroup_generated(G, [x]).elements == H.elements:
            return RankinWitness(k, d - k)
    return None


def rankin_cycle(G: FiniteGroup, a: int, b: int, w: RankinWitness) -> Certificate:
    H = _rankin_setup(G, a, b)
    if w.k < 0 or w.l < 0 or w.k + w.l != H.index:
        raise PreconditionFailed(f"k + l must equal |G : <a - b>| = {H.index}")
    block = [a] * w.k + [b] * w.l
    cert = factor_group_cycle(G, [a, b], H, block)
    if cert is None:
        raise PreconditionFailed(f"<{w.k}a + {w.l}b> is not <a - b>")
    return cert


def easy_no_ham_check(n: int, a: int) -> bool:
    """True when neither a nor a+1 is a unit mod n, which rules out a cycle in Cay(Z_n; a, a+1)."""
    return gcd(a, n) > 1 and gcd(a + 1, n) > 1


# ---------------------------------------------------------------------------
# cyclic commutator subgroup of prime-power order


def _prime_power(n: int) -> int | None:
    """The prime p with n = p^k, or None (1 counts as an empty power and returns 1)."""
    if n == 1:
        return 1
    p = next(q for q in range(2, n + 1) if n % q == 0)
    while n % p == 0:
        n //= p
    return p if n == 1 else None


def small_commutator_applies(G: FiniteGroup) -> bool:
    C = commutator_subgroup(G)
    if not is_cyclic(G, C) or _prime_power(C.order) is None:
        return False
    return all(G.conj(x, g) in (x, G.inv(x)) for x in _cyclic_generator(G, C) for g in range(G.order))


def _cyclic_generator(G: FiniteGroup, C: Subgroup) -> list[int]:
    return [next(x for x in C.elements if G.element_order(x) == C.order)]


def _inverts(G: FiniteGroup, g: int, C: Subgroup) -> bool:
    c = _cyclic_generator(G, C)[0]
    return G.conj(c, g) == G.inv(c)


@dataclass
class SmallCommutatorStep:
    """One level of the recursion, kept for inspection."""

    order: int
    branch: str
    generators: tuple
    detail: dict


def _small_commutator_word(G: FiniteGroup, S: Sequence[int], trace: list | None = None) -> Word:
    S = list(S)
    if G.order <= 2:
        return [s for s in S if s != 0][: G.order - 1]
    if G.is_abelian:
        if trace is not None:
            trace.append(SmallCommutatorStep(G.order, "abelian", tuple(S), {}))
        return _abelian_word(G, S)
    C = commutator_subgroup(G)
    p = _prime_power(C.order)
    pair = next(((a, b) for i, a in enumerate(S) for b in S[i + 1:]
                 if subgroup_generated(G, [G.comm(a, b)]).order == C.order), None)
    if pair is None:
        raise PreconditionFailed("no pair of generators has a commutator generating [G,G]")
    a, b = pair
    N = subgroup_generated(G, [a, b])
    if not N.is_whole:
        Ng, emb = restrict(G, N)
        back = {int(g): i for i, g in enumerate(emb)}
        inner = _small_commutator_word(Ng, [back[a], back[b]], trace)
        if trace is not None:
            trace.append(SmallCommutatorStep(G.order, "lift", (a, b), {"N": N.order}))
        return _lift_word(G, S, N, [int(emb[x]) for x in inner])

    H = subgroup_generated(G, [G.mul(b, G.inv(a))])
    HG = normal_closure(G, H)
    builder = lambda K, T: _small_commutator_word(K, T, trace)  # noqa: E731
    if not HG.is_whole:
        n = HG.index
        if HG.elements == H.elements:
            outer = [a] * n
            detail = {"M": None}
        else:
            X = Subgroup(G, tuple(sorted(HG.members & C.members)))
            Xp = [G.power(x, p) for x in X.elements]
            M = subgroup_generated(G, list(H.elements) + Xp)
            # the lemma only needs one of (x^(n-1), c), (x^(n-2), y, c) to have product
            # outside M; a triple with (x^-1 y)^c outside M is one way to get it
            outer = None
            for x in (a, b):
                for y in (a, b):
                    for c in (a, b):
                        for cand in ([x] * (n - 1) + [c], [x] * (n - 2) + [y, c]):
                            if outer is None and G.prod(cand) not in M:
                                outer = cand
            if outer is None:
                raise ConstructionFailed("every candidate coset cycle has its product in M")
            detail = {"M": M.order}
        if trace is not None:
            trace.append(SmallCommutatorStep(G.order, "normal-closure", (a, b), {"HG": HG.order, **detail}))
        return _skewed_word(G, [a, b], HG, outer, builder)

    if _inverts(G, a, C) and _inverts(G, b, C):
        # G is nilpotent here; a complete search is guaranteed to succeed
        from .search import structured_ham_path_2gen

        if trace is not None:
            trace.append(SmallCommutatorStep(G.order, "nilpotent", (a, b), {}))
        report = structured_ham_path_2gen(G, [a, b])
        if not report.verdict:
            raise ConstructionFailed("structured search found no path in the nilpotent case")
        return [(a, b)[lab] for lab in report.certificate.labels]
    if _inverts(G, a, C):
        a, b = b, a
    # a centralizes [G,G]; write a = a_bar z with a_bar in H and z in [G,G]
    z = next((z for z in C.elements if G.mul(a, G.inv(z)) in H), None)
    if z is None or len({G.mul(h, w) for h in H.elements for w in subgroup_generated(G, [z]).elements}) != G.order:
        raise PreconditionFailed("H<z> != G for the centralizing generator")
    if trace is not None:
        trace.append(SmallCommutatorStep(G.order, "centralizer", (a, b), {"H": H.order}))
    return _skewed_word(G, [a, b], H, [a] * H.index, lambda K, T: _abelian_word(K, T))


def small_commutator_path(G: FiniteGroup, S: Sequence[int], trace: list | None = None) -> Certificate:
    """Hamiltonian path when [G,G] is cyclic of prime-power order and every element
    centralizes or inverts it.

    ``trace``, if given, collects one :class:`SmallCommutatorStep` per recursion level.
    """
    C = commutator_subgroup(G)
    if not is_cyclic(G, C) or _prime_power(C.order) is None:
        raise PreconditionFailed(f"[G,G] of order {C.order} is not cyclic of prime-power order")
    if not small_commutator_applies(G):
        raise PreconditionFailed("some element neither centralizes nor inverts [G,G]")
    _require_connected(G, S)
    return _certify(G, S, _small_commutator_word(G, S, trace))


__all__ = [
    "RankinWitness",
    "SmallCommutatorStep",
    "abelian_ham_path",
    "concat_lift_path",
    "default_path_builder",
    "easy_no_ham_check",
    "factor_group_cycle",
    "rankin_cycle",
    "rankin_decide",
    "skewed_generators_path",
    "small_commutator_applies",
    "small_commutator_path",
]
