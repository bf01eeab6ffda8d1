"""The twelve acceptance criteria, each at its stated tolerance.

Every test records a single PASS/FAIL line (printed and repeated in the
terminal summary) before asserting.
"""
import math
import time
from itertools import combinations

import numpy as np

from cantor_spectra.certify import (VerdictConfig, VerdictKind, beurling_density, check_bizero,
                                    check_maximality_window, classify_qb, compare_regularized,
                                    max_orthogonal_search, qn_identity_check, spectrum_verdict)
from cantor_spectra.fourier import evaluate_transform, hadamard_check, prop33_bounds_check
from cantor_spectra.numtheory import MeasureParams, b_adic_eval, b_adic_expand, in_zero_set
from cantor_spectra.treemap import (canonical_spec, enumerate_spec, mapping_from_set,
                                    nonspectrum_spec, slow_growth_spec, sparse_spec,
                                    with_irregular)

import oracles
from conftest import P24, P36, record


def test_01_signed_expansion_bijection():
    t = time.perf_counter()
    bad = 0
    for b in (3, 4, 5, 6, 10):
        for n in range(-10**5, 10**5 + 1):
            d = b_adic_expand(n, b)
            if b_adic_eval(d) != n or not d.canonical:
                bad += 1
    dup = 0
    for b in (3, 4):
        table = oracles.signed_table(b, 4)
        dup += sum(1 for v in table.values() if len(v) > 1)
    dt = time.perf_counter() - t
    ok = bad == 0 and dup == 0
    record(1, ok, f"round-trip failures {bad}, duplicate strings {dup}, {dt:.1f}s")
    assert ok


def test_02_zero_set_transform_consistency():
    t = time.perf_counter()
    rng = np.random.default_rng(2)
    mism = 0
    worst_floor = math.inf
    for qb in [(2, 4), (3, 6), (2, 6)]:
        p = MeasureParams(*qb)
        for d in rng.integers(-10**4, 10**4 + 1, 1000):
            d = int(d)
            ev = evaluate_transform(float(d), p)
            vanish = abs(ev.value) < 1e-10
            if in_zero_set(d, p):
                mism += not vanish
            else:
                mism += vanish or ev.lower <= 1e-10
                worst_floor = min(worst_floor, ev.lower)
    dt = time.perf_counter() - t
    ok = mism == 0
    record(2, ok, f"mismatches {mism}, smallest certified floor off the zero set "
                  f"{worst_floor:.3g}, {dt:.1f}s")
    assert ok


def test_03_finite_identity():
    t = time.perf_counter()
    rng = np.random.default_rng(3)
    worst = 0.0
    for p in (P24, P36):
        for spec in (canonical_spec(p), sparse_spec(p)):
            c = enumerate_spec(spec, p.q**6)
            for n in range(1, 7):
                xs = list(rng.uniform(-1, 1, 100))
                worst = max(worst, qn_identity_check(c, n, xs))
    dt = time.perf_counter() - t
    ok = worst < 1e-10
    record(3, ok, f"max deviation {worst:.3g} (< 1e-10), {dt:.1f}s")
    assert ok


def test_04_bizero_exactness(mc24):
    t = time.perf_counter()
    specs = {"canonical": canonical_spec(P24), "sparse": sparse_spec(P24),
             "slow": slow_growth_spec(P24, mc24), "nonspectrum": nonspectrum_spec(P24, 1.0, mc24)}
    fails = {}
    for name, s in specs.items():
        ok, pair = check_bizero(enumerate_spec(s, 512))
        if not ok:
            fails[name] = pair
    dt = time.perf_counter() - t
    ok = not fails
    record(4, ok, f"4 specs x {512 * 511 // 2} pairs, failures {fails or 'none'}, {dt:.1f}s")
    assert ok


def test_05_maximality_window():
    t = time.perf_counter()
    c = enumerate_spec(canonical_spec(P24), 256)
    surv = check_maximality_window(c, 500, 256)
    k = 5
    gone = c.without(k)
    back = check_maximality_window(gone, 500, 255)
    dt = time.perf_counter() - t
    ok = surv == [] and back == [2 * c.lambdas[k]]
    record(5, ok, f"survivors {surv}, after deleting lambda={c.lambdas[k]}: {back}, {dt:.1f}s")
    assert ok


def test_06_canonical_q_grid():
    t = time.perf_counter()
    cfg = VerdictConfig(terms=4096, depth=40)
    devs = {}
    for p in (P24, P36):
        v = spectrum_verdict(canonical_spec(p), cfg)
        devs[(p.q, p.b)] = v.max_deviation
    dt = time.perf_counter() - t
    ok = all(d <= 1e-3 for d in devs.values())
    record(6, ok, "max |Q-1| - budget: " +
           ", ".join(f"{k} {v:.3g}" for k, v in devs.items()) + f" (<= 1e-3), {dt:.1f}s")
    assert ok


def test_07_nonspectrum_deficiency(mc24):
    t = time.perf_counter()
    v = spectrum_verdict(nonspectrum_spec(P24, 1.0, mc24), VerdictConfig(terms=4096))
    dt = time.perf_counter() - t
    ok = v.kind is VerdictKind.NOT_SPECTRUM_NUMERIC and v.upper_bound < 0.99
    record(7, ok, f"verdict {v.kind.value}, xi0 = {v.xi0}, certified Q(xi0) <= "
                  f"{v.upper_bound:.4f} (< 0.99), {dt:.1f}s")
    assert ok


def test_08_sparse_spectrum():
    t = time.perf_counter()
    s = sparse_spec(P24, "log")
    c = enumerate_spec(s, 4096)
    biz, _ = check_bizero(c.prefix(512))
    v = spectrum_verdict(s, VerdictConfig(terms=4096))
    qdev = v.max_deviation
    nstar = all(x == 1 for x in c.Nstar[1:])
    L = c.lambdas
    gap = all(L[n + 1] - L[n] >= 4 ** (s.tail_rule.m(n) + 1) for n in range(1, 1001))
    rows = beurling_density(c, "log", [4.0**k for k in range(2, 11)])
    ratios = [r.ratio for r in rows]
    mono = all(b < a for a, b in zip(ratios, ratios[1:]))
    shrink = ratios[-1] / ratios[0]
    dt = time.perf_counter() - t
    parts = {"bizero": biz, "Q grid": qdev <= 1e-3, "N*=1": nstar, "gap law": gap,
             "density decreasing": mono, "final < 0.2 initial": shrink < 0.2}
    ok = all(parts.values())
    failed = [k for k, x in parts.items() if not x]
    record(8, ok, f"max |Q-1| - budget {qdev:.3g}, ratio final/initial {shrink:.4f}, "
                  f"failed parts {failed or 'none'}, {dt:.1f}s")
    assert ok


def test_09_two_sided_bounds(mc24, mc36):
    t = time.perf_counter()
    rng = np.random.default_rng(9)
    viol = 0
    for p, mc in ((P24, mc24), (P36, mc36)):
        r = p.r
        lim = r * (p.b - 2) / (p.b - 1)
        for _ in range(1000):
            N = int(rng.integers(0, 7))
            pos = sorted(rng.choice(np.arange(1, 25), size=N, replace=False).tolist())
            digits = rng.integers(1, r, size=N).tolist() if r > 1 else []
            xi = float(rng.uniform(-lim, lim))
            rep = prop33_bounds_check(xi, list(zip(pos, digits)), p, mc)
            viol += not rep.holds
    dt = time.perf_counter() - t
    ok = viol == 0
    record(9, ok, f"violations {viol} in 2000 samples, {dt:.1f}s")
    assert ok


def test_10_classification():
    t = time.perf_counter()
    wrong, growth, hada = [], [], []
    for b in range(3, 13):
        for q in range(2, b):
            g = math.gcd(q, b)
            res = classify_qb(q, b)
            want = ("AtMostFinitelyManyExponentials" if g == 1 else
                    "SpectralByConstruction" if g == q else "UnknownSpectrality")
            if res.label != want:
                wrong.append((q, b))
            if g == q and not hadamard_check(q, b // q):
                hada.append((q, b))
            if g == 1:
                p = MeasureParams(q, b)
                a = max_orthogonal_search(p, 500).size
                c = max_orthogonal_search(p, 1000).size
                if c != a:
                    growth.append((q, b, a, c))
    dt = time.perf_counter() - t
    ok = not (wrong or growth or hada)
    record(10, ok, f"misclassified {wrong or 'none'}, growing clique sizes {growth or 'none'}, "
                   f"Hadamard failures {hada or 'none'}, {dt:.1f}s")
    assert ok


def test_11_regularization(mc24):
    t = time.perf_counter()
    cfg = VerdictConfig(terms=4096)
    pairs = {
        "canonical": with_irregular(canonical_spec(P24), (1,)),
        "sparse": with_irregular(sparse_spec(P24), (1,)),
        "nonspectrum": with_irregular(nonspectrum_spec(P24, 1.0, mc24), (1,)),
    }
    out = {}
    for name, s in pairs.items():
        cmp = compare_regularized(s, cfg)
        out[name] = (cmp.original.kind.value, cmp.regularized.kind.value, cmp.agree)
    dt = time.perf_counter() - t
    ok = all(a for _, _, a in out.values())
    record(11, ok, "; ".join(f"{k}: {a}/{b}" for k, (a, b, _) in out.items()) + f", {dt:.1f}s")
    assert ok


def _first_bad_pair(vals, p):
    for x, y in combinations(sorted(set(vals)), 2):
        if not in_zero_set(y - x, p):
            return (y, x)
    return None


def test_12_reconstruction():
    t = time.perf_counter()
    d = 3
    mism, missed = 0, 0
    for spec in (canonical_spec(P24), sparse_spec(P24), canonical_spec(P36), sparse_spec(P36)):
        p = spec.params
        S = enumerate_spec(spec, p.q**d).scaled()
        pm = mapping_from_set(S, p, d)
        if pm.bizero_violation is not None:
            mism += 1
        for w, lab in pm.determined().items():
            mism += spec.label(w) != lab
        rng = np.random.default_rng(12)
        for _ in range(20):
            x = int(rng.integers(1, 10**5)) * p.r
            if x in S:
                continue
            want = _first_bad_pair(S + [x], p)
            got = mapping_from_set(S + [x], p, d).bizero_violation
            missed += got != want
    dt = time.perf_counter() - t
    ok = mism == 0 and missed == 0
    record(12, ok, f"label mismatches {mism}, wrong/missed witnesses {missed}, {dt:.1f}s")
    assert ok
