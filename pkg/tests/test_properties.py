"""Property-based checks over exact integer arithmetic and transform bounds."""

from hypothesis import given, settings
from hypothesis import strategies as st

from cantor_spectra.certify import QEvaluator
from cantor_spectra.fourier import mu_hat
from cantor_spectra.numtheory import (MeasureParams, b_adic_eval, b_adic_expand, in_zero_set,
                                      q_adic_eval, q_adic_expand, strip_base_powers)
from cantor_spectra.treemap import canonical_spec, enumerate_spec, mapping_from_set

import oracles
from conftest import P24

bases = st.integers(min_value=3, max_value=12)
divisible = st.sampled_from([(2, 4), (3, 6), (2, 6), (3, 9), (4, 8)])


@given(st.integers(min_value=-10**30, max_value=10**30), bases)
def test_signed_roundtrip(n, b):
    d = b_adic_expand(n, b)
    assert d.canonical and b_adic_eval(d) == n


@given(st.integers(min_value=1, max_value=10**12), st.integers(min_value=2, max_value=9))
def test_q_adic_roundtrip(n, q):
    assert q_adic_eval(q_adic_expand(n, q), q) == n


@given(st.integers(min_value=-10**9, max_value=10**9).filter(bool), bases)
def test_strip_base_powers(m, b):
    n, a = strip_base_powers(m, b)
    assert a * b**n == m and a % b != 0


@given(st.integers(min_value=-10**6, max_value=10**6), divisible)
def test_zero_set_oracle(d, qb):
    assert in_zero_set(d, MeasureParams(*qb)) == oracles.zero_set_oracle(d, *qb)


@given(st.integers(min_value=-10**6, max_value=10**6).filter(bool), divisible,
       st.integers(min_value=1, max_value=6))
def test_zero_set_scale_invariant(d, qb, k):
    p = MeasureParams(*qb)
    assert in_zero_set(d, p) == in_zero_set(d * p.b**k, p)


@settings(max_examples=50, deadline=None)
@given(st.floats(min_value=-50, max_value=50))
def test_mu_hat_bounded_and_even(x):
    a, ta = mu_hat(x, P24)
    b, tb = mu_hat(-x, P24)
    assert abs(a) <= 1 + ta + 1e-12
    assert abs(abs(a) - abs(b)) <= ta + tb + 1e-12


_ev = None


def _evaluator():
    global _ev
    if _ev is None:
        _ev = QEvaluator(enumerate_spec(canonical_spec(P24), 1024), 1024, xi_max=3.0)
    return _ev


@settings(max_examples=100, deadline=None)
@given(st.floats(min_value=-3, max_value=3))
def test_bessel_ceiling(xi):
    Q, e = _evaluator()(xi)
    assert Q <= 1 + e


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(min_value=1, max_value=63), max_size=6, unique=True))
def test_reconstruction_detects_injected_violation(idx):
    c = enumerate_spec(canonical_spec(P24), 64)
    S = [c.scaled()[i] for i in [0] + sorted(idx)]
    pm = mapping_from_set(S, P24, 3)
    assert pm.bizero_violation is None
    target = next(v for v in range(2, 10**4, 2)
                  if v not in S and any(not in_zero_set(v - s, P24) for s in S if s != v))
    pm = mapping_from_set(S + [target], P24, 3)
    assert pm.bizero_violation is not None
    y, x = pm.bizero_violation
    assert not in_zero_set(y - x, P24)
