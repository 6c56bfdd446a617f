import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import cached_bf, cached_oracle
from occ.config import Config
from occ.errors import NotFound
from occ.oracle import build_oracle, reverse
from occ.spec import BuiltinCounter, BuiltinReset, Reversed, Union, describe, full_shift
from occ.sync import (
    boundary_sets,
    certify_synchronizing,
    characteristic_pair,
    markov_code_truncation,
    reset_analysis,
    synchronizing_symbols,
)

SPECS = [
    BuiltinReset(1),
    BuiltinReset(2),
    BuiltinCounter(1),
    BuiltinCounter(2),
    Reversed(BuiltinReset(1)),
    Union((BuiltinReset(1), BuiltinCounter(1))),
]
UNION = Union((BuiltinReset(2), BuiltinCounter(2)))
RANK = {"certified_false": 0, "unknown": 1, "certified_true": 2}


def sync_names(spec, cfg=Config()):
    o = cached_oracle(spec)
    ids, cert = synchronizing_symbols(o, cfg)
    return {o.alphabet.names[i] for i in ids}, cert


def assert_witness(spec, v, cert):
    u, w = cert.witness
    bf = cached_bf(spec, 16)
    v = cached_oracle(spec).word(v)
    assert bf.decide(u + v) and bf.decide(v + w) and not bf.decide(u + v + w)


# ---------------------------------------------------------------- synchronizing words


def test_full_shift_word_synchronizing():
    assert certify_synchronizing(build_oracle(full_shift(["0", "1"])), "0 1").verdict == "certified_true"


def test_counter_minus_not_synchronizing():
    cert = certify_synchronizing(cached_oracle(BuiltinCounter(1)), "α₋")
    assert cert.verdict == "certified_false"
    assert_witness(BuiltinCounter(1), "α₋", cert)


def test_documented_counter_witness_is_valid():
    bf = cached_bf(BuiltinCounter(1), 16)
    u, v, w = "b₁ α₋ α₋ α₋ α₋ α₋".split(), ["α₋"], "α₊ α₊ α₊ b₁".split()
    assert bf.decide(u + v) and bf.decide(v + w) and not bf.decide(u + v + w)


def test_reset_a1_synchronizing():
    assert certify_synchronizing(cached_oracle(BuiltinReset(1)), "a₁").verdict == "certified_true"


@pytest.mark.parametrize("spec", SPECS, ids=describe)
def test_false_verdicts_carry_valid_witnesses(spec):
    o = cached_oracle(spec)
    for name in o.alphabet.names:
        cert = certify_synchronizing(o, name)
        if cert.verdict == "certified_false":
            assert cert.witness is not None
            assert_witness(spec, name, cert)
        if cert.verdict == "unknown":
            assert cert.horizon_used > 0


@pytest.mark.parametrize("spec", SPECS[:4], ids=describe)
def test_true_verdicts_hold_on_brute_force(spec):
    o = cached_oracle(spec)
    bf = cached_bf(spec, 12)
    k = len(o.alphabet)
    words = [w for n in range(1, 5) for w in itertools.product(range(k), repeat=n) if bf.decide(w)]
    for s in range(k):
        if certify_synchronizing(o, (s,)).verdict != "certified_true":
            continue
        for u in words:
            if not bf.decide(u + (s,)):
                continue
            for w in words:
                if bf.decide((s,) + w):
                    assert bf.decide(u + (s,) + w)


def test_sync_symbols_full_shift():
    assert sync_names(full_shift(["0", "1"]))[0] == {"0", "1"}


def test_sync_symbols_reset():
    names, cert = sync_names(BuiltinReset(2))
    assert names == {"a_1", "a_2"} and cert.verdict == "certified_true"


def test_sync_symbols_counter():
    assert sync_names(BuiltinCounter(1))[0] == {"b_1"}


@pytest.mark.parametrize("spec", [BuiltinReset(2), BuiltinCounter(1)], ids=describe)
def test_sync_symbols_mirror(spec):
    assert sync_names(spec)[0] == sync_names(reverse(spec))[0]


# ---------------------------------------------------------------- characteristic pair


@pytest.mark.parametrize("spec", [BuiltinReset(1), BuiltinReset(3), BuiltinCounter(2), UNION], ids=describe)
def test_pair_found(spec):
    pair = characteristic_pair(cached_oracle(spec))
    assert pair.names == ("α_-", "α_+")
    assert pair.c_X_text == ""


def test_pair_mirrors_under_reversal():
    assert characteristic_pair(cached_oracle(Reversed(BuiltinReset(2)))).names == ("α_+", "α_-")


def test_pair_absent_in_full_shift():
    with pytest.raises(NotFound):
        characteristic_pair(build_oracle(full_shift(["0", "1"])))


# ---------------------------------------------------------------- boundary sets and reset


def test_reset_boundary_sets():
    o = cached_oracle(BuiltinReset(1))
    b = boundary_sets(o).to_json(o)
    assert b["sigma_minus"] == ["a_1"]
    assert b["d_sets"]["minus:a_1"] == ["ε"]
    assert b["omega_plus_reset"] == ["a_1"]
    assert b["reset_defect"] == {"a_1": 0}


def test_counter_reset_set_empty():
    o = cached_oracle(BuiltinCounter(1))
    assert boundary_sets(o).to_json(o)["omega_plus_reset"] == []


@pytest.mark.parametrize(
    "spec, verdict",
    [
        (BuiltinReset(1), "certified_true"),
        (BuiltinReset(3), "certified_true"),
        (BuiltinCounter(1), "certified_false"),
        (BuiltinCounter(2), "certified_false"),
        (UNION, "certified_true"),
    ],
    ids=lambda x: describe(x) if not isinstance(x, str) else x,
)
def test_has_reset(spec, verdict):
    assert reset_analysis(cached_oracle(spec)).has_reset.verdict == verdict


# ---------------------------------------------------------------- truncation


def words_of(code):
    return {code.alphabet.format(w) for w in code.words}


def test_truncation_reset():
    assert words_of(markov_code_truncation(cached_oracle(BuiltinReset(1)), Config(cutoff=4))) == {
        "a_1 α_- α_+",
        "a_1 α_- α_- α_+",
    }


def test_truncation_counter():
    assert words_of(markov_code_truncation(cached_oracle(BuiltinCounter(1)), Config(cutoff=5))) == {
        "b_1 α_- α_+",
        "b_1 α_- α_- α_+ α_+",
    }


def test_truncation_full_shift():
    code = markov_code_truncation(build_oracle(full_shift(["0", "1"])), Config(cutoff=2))
    assert words_of(code) == {"0", "1"}
    n = len(code.words)
    assert all(code.transition[code.t[a]][code.s[b]] for a in range(n) for b in range(n))


@pytest.mark.parametrize("spec", [BuiltinReset(2), BuiltinCounter(1), UNION], ids=describe)
def test_truncation_sound(spec):
    o = cached_oracle(spec)
    code = markov_code_truncation(o, Config(cutoff=5))
    sync, _ = synchronizing_symbols(o)
    n = len(code.words)
    for w in code.words:
        assert o.decide(w) and w[0] in sync
        assert not any(x in sync for x in w[1:])
    # allowed successions stay admissible
    for a, b, c in itertools.product(range(n), repeat=3):
        if code.transition[code.t[a]][code.s[b]] and code.transition[code.t[b]][code.s[c]]:
            assert o.decide(code.words[a] + code.words[b] + code.words[c])


# ---------------------------------------------------------------- horizon monotonicity


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SPECS), st.integers(0, 3), st.integers(2, 10), st.integers(1, 6))
def test_sync_horizon_monotone(spec, sym, h, dh):
    o = cached_oracle(spec)
    if sym >= len(o.alphabet):
        return
    lo = certify_synchronizing(o, (sym,), Config(horizon=h))
    hi = certify_synchronizing(o, (sym,), Config(horizon=h + dh))
    if lo.verdict != "unknown":
        assert hi.verdict == lo.verdict


@pytest.mark.parametrize("spec", [BuiltinReset(2), BuiltinCounter(2), UNION], ids=describe)
def test_pair_and_reset_horizon_monotone(spec):
    o = cached_oracle(spec)
    seen = {}
    for h in (4, 6, 8, 10, 12):
        cfg = Config(horizon=h)
        pair = characteristic_pair(o, cfg)
        rep = reset_analysis(o, pair, cfg)
        now = {
            "a": pair.condition_a.verdict,
            "b": pair.condition_b.verdict,
            "has_reset": rep.has_reset.verdict,
            "reset_condition": rep.reset_condition.verdict,
        }
        for key, v in now.items():
            if key in seen and seen[key] != "unknown":
                assert v == seen[key], (key, h)
        seen = now
