"""A maximal orthogonal set that is not a spectrum.

Long blocks of tail digits push every element far out; the partial sums of
Q then stay strictly below 1, and a product bound certifies it for the full
sum.

Run: python3 demos/02_nonspectrum_certificate.py
"""
# %%
from cantor_spectra import MeasureParams
from cantor_spectra.certify import (QEvaluator, VerdictConfig, criterion_report,
                                    deficit_certificate, spectrum_verdict)
from cantor_spectra.fourier import compute_mask_constants
from cantor_spectra.treemap import enumerate_spec, nonspectrum_spec, spec_stats

P = MeasureParams(2, 4)
mc = compute_mask_constants(P)
spec = nonspectrum_spec(P, epsilon=1.0, mc=mc)
st = spec_stats(spec)
print("L*_n for n = 1..11:", [st.Lstar(n) for n in range(1, 12)])

# %% Criterion II: sum c2^{L*_n} converges
rep = criterion_report(st, mc)
print("conclusion:", rep.conclusion, "|", rep.notes[-1])

# %% Certificate at a few points
c = enumerate_spec(spec, 4096)
ev = QEvaluator(c, 4096)
for xi in (0.01, 0.1, 0.25, 1 / 3):
    cert = deficit_certificate(ev, st, mc, xi)
    print(f"xi = {xi:.4f}: Q_(2^{cert.n0}) = {cert.q_n0:.4f}, B = {cert.B:.4f}, "
          f"Q <= {cert.upper_bound:.4f}")

# %% The full pipeline
v = spectrum_verdict(spec, VerdictConfig(terms=4096))
print(v.kind.value, "at xi0 =", v.xi0, "with Q(xi0) <=", round(v.upper_bound, 4))
