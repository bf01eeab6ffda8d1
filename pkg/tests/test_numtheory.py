import pytest

from cantor_spectra.errors import (CanonicalFormError, DomainError, ParameterError,
                                   UnsupportedParameters)
from cantor_spectra.numtheory import (MeasureParams, SignedDigits, b_adic_eval, b_adic_expand,
                                      check_word, in_scaled_zero_set, in_zero_set,
                                      q_adic_eval, q_adic_expand, strip_base_powers)

import oracles


def test_params():
    p = MeasureParams(2, 4)
    assert (p.r, p.divisible, p.gcd) == (2, True, 2)
    assert MeasureParams(4, 6).r is None
    assert p.residue_class(0) == (0, 2)
    with pytest.raises(ParameterError):
        MeasureParams(4, 4)
    with pytest.raises(ParameterError):
        MeasureParams(1, 3)
    with pytest.raises(UnsupportedParameters):
        MeasureParams(3, 5).require_r()


@pytest.mark.parametrize("n,b,digits", [(0, 4, ()), (3, 4, (-1, 1)), (-1, 3, (-1,)),
                                        (5, 4, (1, 1)), (2, 3, (-1, 1))])
def test_expand_examples(n, b, digits):
    assert b_adic_expand(n, b).digits == digits


@pytest.mark.parametrize("b", [3, 4, 5, 10])
def test_expand_matches_brute_table(b):
    table = oracles.signed_table(b, 4)
    for v, strings in table.items():
        assert len(strings) == 1, (v, strings)
        assert b_adic_expand(v, b).digits == strings[0]


def test_expand_rejects_small_base():
    with pytest.raises(ParameterError):
        b_adic_expand(3, 2)


def test_signed_digits_range():
    with pytest.raises(DomainError):
        SignedDigits((3,), 4)
    d = SignedDigits((1, 0, -1), 4)
    assert d.canonical and d.support() == [(0, 1), (2, -1)]
    assert b_adic_eval(d) == 1 - 16
    assert not SignedDigits((1, 0), 4).canonical


def test_q_adic():
    assert q_adic_expand(6, 2) == (0, 1, 1)
    assert q_adic_eval((0, 1, 1), 2) == 6
    with pytest.raises(DomainError):
        q_adic_expand(0, 2)
    with pytest.raises(CanonicalFormError):
        q_adic_eval((1, 0), 2)
    with pytest.raises(CanonicalFormError):
        q_adic_eval((), 2)
    with pytest.raises(DomainError):
        check_word((0, 2), 2)


def test_strip_base_powers():
    assert strip_base_powers(32, 4) == (2, 2)
    assert strip_base_powers(-8, 2) == (3, -1)
    assert strip_base_powers(7, 4) == (0, 7)
    with pytest.raises(DomainError):
        strip_base_powers(0, 4)


@pytest.mark.parametrize("q,b", [(2, 4), (3, 6), (2, 6), (3, 9)])
def test_zero_set_matches_oracle(q, b):
    p = MeasureParams(q, b)
    for d in range(-600, 601):
        assert in_zero_set(d, p) == oracles.zero_set_oracle(d, q, b), d


@pytest.mark.parametrize("q,b", [(2, 4), (2, 3), (3, 5), (4, 6)])
def test_scaled_zero_set_matches_oracle(q, b):
    for m in range(-300, 301):
        assert in_scaled_zero_set(m, q, b) == oracles._scaled_zero(m, q, b), m


def test_zero_set_examples():
    p = MeasureParams(2, 4)
    assert in_zero_set(2, p) and not in_zero_set(4, p) and not in_zero_set(0, p)
    assert in_zero_set(-2, p) and in_zero_set(2 * 4**5 * 3, p)
