"""Canonical spectrum of the quarter Cantor measure.

Run: python3 demos/01_canonical_spectrum.py
"""
# %% Setup
import numpy as np

from cantor_spectra import MeasureParams
from cantor_spectra.certify import QEvaluator, check_bizero, qn_identity_check
from cantor_spectra.fourier import compute_mask_constants, mu_hat
from cantor_spectra.treemap import canonical_spec, enumerate_spec

P = MeasureParams(2, 4)          # digits {0, 1}, contraction 1/4, r = 2
spec = canonical_spec(P)
c = enumerate_spec(spec, 4096)
print("first frequencies:", c.scaled()[:10])

# %% The transform vanishes exactly on the zero set
for x in (1.0, 2.0, 8.0, 6.0):
    v, tail = mu_hat(x, P)
    print(f"|mu_hat({x:g})| = {abs(v):.3e}  (tail bound {tail:.1e})")

# %% Pairwise differences are zeros: exact integer check
print("bi-zero on 512 elements:", check_bizero(c.prefix(512)))

# %% The finite identity holds to rounding
xs = np.linspace(-1, 1, 21)
print("finite identity deviation, n = 6:", qn_identity_check(c, 6, xs))

# %% Q(xi) on a grid, with error budgets
ev = QEvaluator(c, 4096)
for xi in (0.01, 0.1, 0.25, 0.5):
    Q, err = ev(xi)
    print(f"Q({xi}) = {Q:.10f}  +/- {err:.1e}")

# %% Constants used by the growth criteria
mc = compute_mask_constants(P)
print("c_min in", mc.c_min_interval, " c_max in", mc.c_max_interval)
