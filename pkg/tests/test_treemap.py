import json

import pytest

from cantor_spectra.errors import DomainError, ParameterError, ResourceError, SchemaError
from cantor_spectra.numtheory import MeasureParams, b_adic_eval
from cantor_spectra.treemap import (Custom, IrregularPath, LogBlock, SparsePowers,
                                    TreeMappingSpec, canonical_spec, enumerate_spec,
                                    mapping_from_set, nonspectrum_spec, prefix_value, regularize,
                                    slow_growth_spec, sparse_depths, sparse_spec, spec_from_json,
                                    spec_stats, spec_to_json, stats, stem_of, subtree_enumerate,
                                    validate, with_irregular)

import oracles
from conftest import P24, P36


def test_stem_of():
    assert stem_of((1, 0, 0)) == ((1,), 2)
    assert stem_of((0, 1)) == ((0, 1), 0)
    assert stem_of((0, 0)) == ((), 2)


@pytest.mark.parametrize("p", [P24, P36, MeasureParams(2, 6)])
def test_canonical_matches_base_q_oracle(p):
    c = enumerate_spec(canonical_spec(p), 300)
    assert c.lambdas == oracles.canonical_lambdas(p.q, p.b, 300)
    assert all(s == 0 for s in c.Nstar)


def test_labels_and_validation():
    s = canonical_spec(P24)
    assert s.label((0, 0)) == 0 and s.label((1,)) == 1 and s.label((1, 0)) == 0
    assert validate(s, 6).ok
    bad = TreeMappingSpec(P24, (0, 1), overrides=[((1, 1), 2)])
    rep = validate(bad, 3)
    assert not rep.ok and rep.violations[0].node == (1, 1) and rep.violations[0].clause == "ii"
    with pytest.raises(ParameterError):
        TreeMappingSpec(P24, (1, 1))
    with pytest.raises(DomainError):
        TreeMappingSpec(P24, (0, 1), overrides=[((0, 0), 2)])


def test_negative_residue_labels():
    s = TreeMappingSpec(P24, (0, -1))
    assert validate(s, 5).ok
    c = enumerate_spec(s, 8)
    assert c.lambdas[:4] == [0, -1, -4, -5]


def test_sparse_depths_and_elements():
    assert sparse_depths(P24, "log") == (13, 47, 186, 740)
    s = sparse_spec(P24)
    c = enumerate_spec(s, 64)
    assert all(x == 1 for x in c.Nstar[1:]) and c.Nstar[0] == 0
    assert c.lambdas == sorted(c.lambdas)
    # node sigma 0^m_n of a length-k stem sits at power k + m_n - 1
    assert c.lambdas[1] == 1 + 2 * 4**13
    assert c.lambdas[2] == 4 + 2 * 4**48
    m = s.tail_rule
    assert m.m(5) == 741 and m.m(4) == 740
    with pytest.raises(ParameterError):
        sparse_spec(P24, digit=1)


def test_nonspectrum_block_sizes(mc24):
    s = nonspectrum_spec(P24, 1.0, mc24)
    st = spec_stats(s)
    L = [st.Lstar(n) for n in range(1, 12)]
    assert L[0] == 1 and L[1] == 37 and L[-1] == 125
    assert L == sorted(L)
    with pytest.raises(ParameterError):
        nonspectrum_spec(P24, 0.0, mc24)


def test_slow_growth_small_blocks(mc24):
    c = enumerate_spec(slow_growth_spec(P24, mc24), 4096)
    assert max(c.Nstar) == 0
    assert LogBlock(2, 1.0, base="index", rounding="floor").count(2**20, 21, 2) == 2


def test_stats_from_candidate_match_rule(mc24):
    for s in [canonical_spec(P24), sparse_spec(P24), nonspectrum_spec(P24, 1.0, mc24)]:
        c = enumerate_spec(s, 2**9)
        a = stats(c, 9)
        b = spec_stats(s)
        for k in range(1, 10):
            assert a.level(k) == b.level(k), (s.tail_rule, k)


def test_enumerate_cap():
    with pytest.raises(ResourceError):
        enumerate_spec(canonical_spec(P24), 10, cap=5)


def test_irregular_and_regularize():
    s = with_irregular(canonical_spec(P24), (1,))
    c = enumerate_spec(s, 10)
    assert 1 not in c.indices and c.indices[:3] == [0, 2, 3]
    assert validate(s, 5).ok
    r = regularize(s, s.irregular_paths)
    assert not r.irregular_paths and r.zeroed_stems == ((1,),)
    assert regularize(r, [(1,)]) == r
    assert regularize(s, []) is s
    assert enumerate_spec(r, 10).lambdas == enumerate_spec(canonical_spec(P24), 10).lambdas


def test_irregular_tail_digits():
    s = with_irregular(canonical_spec(P24), (1,), "q_every_level")
    assert [s.label((1,) + (0,) * k) for k in range(1, 4)] == [2, 2, 2]
    s2 = with_irregular(canonical_spec(P24), (1,), "q_even_levels")
    assert [s2.label((1,) + (0,) * k) for k in range(1, 5)] == [0, 2, 0, 2]
    with pytest.raises(ParameterError):
        IrregularPath((1,), "nope")


def test_subtree_and_prefix():
    s = canonical_spec(P24)
    sub = subtree_enumerate(s, (1,), 4)
    assert sub.lambdas == [0, 1, 4, 5]
    assert prefix_value(s, (1, 1)) == 5


def test_custom_rule_roundtrip():
    rule = Custom(((((1,), 2, 2)),))
    s = TreeMappingSpec(P24, (0, 1), rule)
    assert s.label((1, 0, 0)) == 2
    doc = spec_to_json(s)
    assert spec_from_json(json.loads(json.dumps(doc))) == s


@pytest.mark.parametrize("make", [lambda mc: canonical_spec(P36), lambda mc: sparse_spec(P24),
                                  lambda mc: nonspectrum_spec(P24, 1.0, mc),
                                  lambda mc: with_irregular(slow_growth_spec(P24, mc), (1, 1))])
def test_json_roundtrip(make, mc24):
    s = make(mc24)
    doc = json.loads(json.dumps(spec_to_json(s)))
    doc["validation"] = {"ok": True}
    assert spec_from_json(doc) == s


@pytest.mark.parametrize("doc,path", [
    ({"b": 4}, "q"),
    ({"q": 2, "b": 5}, "q,b"),
    ({"q": 2, "b": 4, "tail_rule": {"kind": "what"}}, "tail_rule.kind"),
    ({"q": 2, "b": 4, "overrides": [{"word": [1]}]}, "overrides[0]"),
    ({"q": 2, "b": 4, "overrides": [{"word": [3], "digit": 1}]}, "overrides[0]"),
    ({"q": 2, "b": 4, "base_residues": "x"}, "base_residues"),
])
def test_schema_errors(doc, path):
    with pytest.raises(SchemaError) as e:
        spec_from_json(doc)
    assert e.value.path == path


def test_reconstruction_examples():
    pm = mapping_from_set([0, 2, 8, 10], P24, 2)
    assert pm.bizero_violation is None
    assert pm.determined()[(1,)] == 1 and pm.determined()[(0, 1)] == 1
    assert mapping_from_set([0, 2, 6], P24, 2).bizero_violation == (6, 2)
    with pytest.raises(DomainError):
        mapping_from_set([2, 4], P24, 2)
    with pytest.raises(DomainError):
        mapping_from_set([0, 3], P24, 2)


def test_lambda_is_sum_of_labels():
    s = sparse_spec(P36)
    c = enumerate_spec(s, 40)
    for lam, sup in zip(c.lambdas, c.supports):
        assert lam == sum(d * 6**p for p, d in sup)
        digits = [0] * (sup[-1][0] + 1 if sup else 0)
        for p, d in sup:
            digits[p] = d
        assert b_adic_eval(digits, 6) == lam
