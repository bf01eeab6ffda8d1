import cmath
import math

import numpy as np
import pytest

from cantor_spectra.errors import DomainError, ParameterError, TruncationInfeasible
from cantor_spectra.fourier import (TruncationPolicy, build_shift_plan, compute_mask_constants,
                                    evaluate_transform, hadamard_check, mask, mask_sq, mu_hat,
                                    mu_n_hat, prop33_bounds_check, shift_support)
from cantor_spectra.numtheory import MeasureParams

import oracles
from conftest import P24, P36

# frozen from the high-precision oracle in tests/oracles.py
C_MIN = {(2, 4): 0.13333230627666937, (3, 6): 0.04464941242958618, (2, 6): 0.06376241594163073}
C_MAX = {(2, 4): math.cos(math.pi / 16) ** 2, (3, 6): 0.9798462504022943,
         (2, 6): 0.9924038765061041}


def test_mask_values():
    assert mask(0.0, 3) == 1
    assert abs(mask(0.5, 2)) < 1e-15
    x = np.linspace(-1, 1, 101)
    assert np.allclose(np.abs(mask(x, 3)) ** 2, mask_sq(x, 3), atol=1e-14)
    assert abs(mask(0.3, 2) - (1 + cmath.exp(2j * math.pi * 0.3)) / 2) < 1e-15


@pytest.mark.parametrize("x", [0.0, 0.3, 1.0, 2.7, -5.25, 123.456, 1e4 + 0.1])
@pytest.mark.parametrize("p", [P24, P36])
def test_mu_hat_against_mpmath(x, p):
    val, tail = mu_hat(x, p)
    ref = float(oracles.mu_hat_abs_mp(x, p.q, p.b))
    ev = evaluate_transform(x, p)
    assert abs(abs(val) - ref) <= tail + ev.rounding + 1e-14


def test_mu_hat_zero_and_known():
    assert abs(mu_hat(2.0, P24)[0]) < 1e-15
    assert abs(abs(mu_hat(1.0, P24)[0]) ** 2 - 0.47973) < 1e-5


def test_shift_equals_plain_argument():
    a = mu_hat(0.0, P24, shift=3)[0]
    b = mu_hat(3.0, P24)[0]
    assert abs(a - b) < 1e-13
    big = [(0, 1), (200, 2)]
    v, t = mu_hat(0.25, P24, shift=big)
    assert 0 <= abs(v) <= 1 and t < 1e-10
    assert shift_support(5, 4) == [(0, 1), (1, 1)]


def test_truncation_infeasible():
    with pytest.raises(TruncationInfeasible):
        evaluate_transform(4.0**41, P24, TruncationPolicy(depth=2))


def test_mu_n_hat_matches_direct_product():
    for x in [0.1, 0.77, 3.3, -9.2]:
        got = abs(mu_n_hat(x, 5, P24)) ** 2
        assert abs(got - oracles.mu_n_hat_sq(x, 5, 2, 4)) < 1e-13


def test_shift_plan_matches_scalar():
    sups = [shift_support(n, 4) for n in range(0, 300, 7)] + [[(0, 1), (90, 2)]]
    plan = build_shift_plan(sups, P24, xi_max=1.0)
    for xi in [0.0, 0.2, -0.9]:
        vals, err = plan.sq_terms(xi)
        for k, s in enumerate(sups):
            v, t = mu_hat(xi, P24, shift=s)
            assert abs(vals[k] - abs(v) ** 2) <= err[k] + 2 * t + 1e-13
    with pytest.raises(DomainError):
        plan.sq_terms(2.0)


@pytest.mark.parametrize("qb", sorted(C_MIN))
def test_mask_constants_enclose_oracle(qb):
    mc = compute_mask_constants(MeasureParams(*qb))
    lo, hi = mc.c_min_interval
    assert lo <= C_MIN[qb] <= hi
    lo, hi = mc.c_max_interval
    assert lo <= C_MAX[qb] <= hi
    assert 0 < mc.c1 < mc.c2 < 1


def test_mask_constants_errors():
    with pytest.raises(ParameterError):
        compute_mask_constants(P24, resolution=0)


@pytest.mark.parametrize("q,r", [(2, 2), (3, 2), (2, 3), (4, 3), (5, 2)])
def test_hadamard(q, r):
    assert hadamard_check(q, r)


def test_prop33_examples(mc24):
    rep = prop33_bounds_check(0.1, [(1, 1), (3, 1)], P24, mc24)
    assert rep.holds and rep.upper == mc24.c2 ** 2
    with pytest.raises(DomainError):
        prop33_bounds_check(0.1, [(3, 1), (1, 1)], P24, mc24)
    with pytest.raises(DomainError):
        prop33_bounds_check(0.1, [(1, 2)], P24, mc24)
