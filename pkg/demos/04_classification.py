"""Which consecutive-digit measures admit infinitely many orthogonal exponentials.

Run: python3 demos/04_classification.py
"""
# %%
from math import gcd

from cantor_spectra import MeasureParams
from cantor_spectra.certify import classify_qb, max_orthogonal_search

SHORT = {"AtMostFinitelyManyExponentials": "finite", "SpectralByConstruction": "spectral",
         "UnknownSpectrality": "unknown"}
for b in range(3, 9):
    print("  ".join(f"({q},{b}) {SHORT[classify_qb(q, b).label]:<8}" for q in range(2, b)))
print("finite = at most finitely many exponentials; unknown = infinitely many orthogonal,"
      " spectrality undecided")

# %% Coprime pairs: the largest orthogonal set stops growing
for q, b in [(2, 3), (3, 5), (4, 7), (5, 12)]:
    sizes = [max_orthogonal_search(MeasureParams(q, b), W).size for W in (250, 500, 1000)]
    print(f"(q, b) = ({q}, {b}), gcd {gcd(q, b)}: sizes at W = 250/500/1000 -> {sizes}")

# %% Divisible pairs keep growing
for W in (50, 100, 200):
    res = max_orthogonal_search(MeasureParams(2, 4), W)
    print(f"(2, 4) window {W}: size {res.size}")
