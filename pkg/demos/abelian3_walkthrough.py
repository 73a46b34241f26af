"""Build a hamiltonian cycle in Cay(G; a, b, b+k) step by step."""

# %%
from __future__ import annotations

import io

import numpy as np

from cayleyham.abelian3 import LABEL_NAMES, Abelian3Run, abelian3_ham_cycle, h0_construct
from cayleyham.cayley import build_cayley, verify_certificate
from cayleyham.groups import Cyclic, DirectProduct, build_group

# %% Z6 + Z2, a = (1,0), b = (2,0), k = (0,1): <b, k> has index 2
G = build_group(DirectProduct((Cyclic(6), Cyclic(2))))
a, b, k = G.index((1, 0)), G.index((2, 0)), G.index((0, 1))

# %% the starting arc system and its components
H = h0_construct(G, a, b, k)
print("H0 components:", H.count())
grid = np.array([LABEL_NAMES[H.labels[G.index((x, z))]] for z in range(2) for x in range(6)]).reshape(2, 6)
print(grid)

# %% run the construction with a step trace
run = Abelian3Run()
trace = io.StringIO()
cert = abelian3_ham_cycle(G, a, b, k, run=run, trace=trace)
print("branch", run.branch, "frame case", run.frame_case)
print(trace.getvalue())

# %% the result is a single cycle through all 12 vertices
D = build_cayley(G, [a, b, G.mul(b, k)])
print("verified:", bool(verify_certificate(D, cert)))
print(" ".join(LABEL_NAMES[x] for x in cert.labels))
