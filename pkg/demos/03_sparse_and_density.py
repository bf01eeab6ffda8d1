"""A sparse spectrum candidate and its window counts.

One tail digit per element, placed deeper and deeper, makes the set thin
out faster than any chosen density target.  The price is visible in the
partial sums: the mass lost early is only recovered at astronomically large
indices, so a 4096-term Q grid stays visibly below 1.

Run: python3 demos/03_sparse_and_density.py
"""
# %%
from cantor_spectra import MeasureParams
from cantor_spectra.certify import QEvaluator, beurling_density
from cantor_spectra.treemap import enumerate_spec, sparse_depths, sparse_spec

P = MeasureParams(2, 4)
print("depths m_n for g = ln(1+R):", sparse_depths(P, "log"))
spec = sparse_spec(P, "log")
c = enumerate_spec(spec, 4096)
print("digits of lambda_1:", c.supports[1], " N* of first elements:", c.Nstar[:8])

# %% Window counts against g(R) = ln(1 + R)
for row in beurling_density(c, "log", [4.0**s for s in range(2, 11)]):
    print(f"R = {row.R:>9.0f}  count = {row.count}  ratio = {row.ratio:.4f}")

# %% Partial sums grow slowly with the number of terms
for terms in (64, 512, 4096):
    Q, _ = QEvaluator(c, terms)(0.25)
    print(f"Q_{terms}(0.25) = {Q:.6f}")
