# %% [markdown]
# # A bump on a Neumann interval
#
# H_c = -d^2/du^2 + h 1_(c, c + delta l) on (0, l) with Neumann ends.  The
# ground state energy is lowest when the bump touches an end.

# %%
import numpy as np

from dnwaveguide.schrodinger1d import verify_lemma

for h, l, delta in ((1, 1, 0.25), (5, 2, 0.4), (0.5, 1, 0.1)):
    rep = verify_lemma(h, l, delta, n_c=64)
    vals = np.array(rep.eigenvalues)
    print(f"h={h}, l={l}, delta={delta}: inf spec H_0 = {rep.baseline:.8f}, "
          f"max over c = {vals.max():.8f}, violations = {len(rep.violations)}")
