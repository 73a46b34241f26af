"""Walk through the two small Cayley digraphs without hamiltonian paths."""

# %%
from __future__ import annotations

import numpy as np

from cayleyham.cayley import arc_forcing_subgroup, build_cayley, classify_cosets
from cayleyham.families import a4z2_example, g5_example, theorem13_family
from cayleyham.groups import commutator_subgroup
from cayleyham.search import coset_structure, dfs_ham_path, structured_ham_path_2gen

# %% Z12 ⋉ Z5 with a = h^2 z, b = h^3 z
G, (a, b) = g5_example().build()
print(G.name, "order", G.order, "commutator subgroup order", commutator_subgroup(G).order)
print("a =", G.coord(a), "b =", G.coord(b))

# %% the arc-forcing subgroup <a b^-1> and its cosets
H = arc_forcing_subgroup(G, [a, b])
cosets = classify_cosets(G, [a, b])
print("|<ab^-1>| =", H.order, "cosets:", len(cosets), "terminal:", sum(c.terminal for c in cosets))

# %% every travel pattern is tried; none closes into a path
rep = structured_ham_path_2gen(G, [a, b], exhaustive=True)
print("patterns", rep.stats["patterns_total"], "verdict", rep.verdict)

# %% the orbit sizes of the patterns' successor maps
st = coset_structure(G, a, b)
print("regular cosets", len(st.regular), "terminal coset size", len(st.terminal))

# %% A4 x Z2, checked by plain backtracking
G2, S2 = a4z2_example().build()
rep2 = dfs_ham_path(build_cayley(G2, S2))
print(G2.name, "hamiltonian path:", rep2.verdict, "nodes", rep2.stats.get("nodes"))

# %% generator orders grow with n in the metacyclic family
for n in (1, 2, 4, 6):
    inst = theorem13_family(7, n)
    Gn, (an, bn) = inst.build()
    orders = np.array([Gn.element_order(an), Gn.element_order(bn)])
    print(f"n={n}: |G|={Gn.order}, generator orders {orders}, min > n: {bool(orders.min() > n)}")
