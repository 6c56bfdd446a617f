import itertools
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import bf_language
from occ import spec as specmod
from occ.alphabet import Alphabet, words_upto
from occ.bruteforce import brute_force_oracle
from occ.errors import ParseError, SchemaError, WordTooLong
from occ.oracle import build_oracle, expand_symbol, extender_set, higher_block, language, reverse, union
from occ.spec import BuiltinCounter, BuiltinReset, ExplicitMarkov, MarkovCode, Reversed, Union, full_shift

FIVE = [
    BuiltinReset(2),
    BuiltinCounter(2),
    Reversed(BuiltinReset(2)),
    Reversed(BuiltinCounter(2)),
    Union((BuiltinReset(2), BuiltinCounter(2))),
]


def names(oracle, words):
    return {oracle.fmt(w) for w in words}


# ---------------------------------------------------------------- membership


def test_counter_rejects_plus_then_minus():
    o = build_oracle(BuiltinCounter(1))
    assert not o.decide("α₊ α₋")
    assert not brute_force_oracle(BuiltinCounter(1)).decide("α₊ α₋")


def test_counter_accepts_factor_of_code_concatenation():
    o = build_oracle(BuiltinCounter(1))
    assert o.decide("α₋ α₊ α₊ b₁")
    assert brute_force_oracle(BuiltinCounter(1)).decide("α₋ α₊ α₊ b₁")


@pytest.mark.parametrize("spec", FIVE + [full_shift(["0", "1"])], ids=specmod.describe)
def test_empty_word_admissible(spec):
    assert build_oracle(spec).decide(())
    assert brute_force_oracle(spec).decide(())


def test_single_code_word_admissible():
    o = build_oracle(BuiltinReset(3))
    bf = brute_force_oracle(BuiltinReset(3))
    for w in ("α₋ α₋ α₊ a₃", "α₋ α₊ α₊ a₁", "α₋ α₊ a₂"):
        assert o.decide(w) and bf.decide(w)
    assert not o.decide("α₋ α₊ α₊ α₊ a₁ α₊")


def test_brute_force_length_guard():
    with pytest.raises(WordTooLong):
        brute_force_oracle(BuiltinReset(1), 17)


def test_unknown_symbol_is_parse_error():
    with pytest.raises(ParseError):
        build_oracle(BuiltinReset(1)).decide("α₋ q")


# ---------------------------------------------------------------- language


def test_full_shift_language():
    assert len(language(build_oracle(full_shift(["0", "1"])), 2)) == 4


def test_reset_language_length_one():
    o = build_oracle(BuiltinReset(1))
    assert names(o, language(o, 1)) == {"α_-", "α_+", "a_1"}


def test_counter_language_length_two():
    o = build_oracle(BuiltinCounter(1))
    assert names(o, language(o, 2)) == {"α_- α_-", "α_- α_+", "α_+ α_+", "α_+ b_1", "b_1 α_-"}


# ---------------------------------------------------------------- extenders


def test_full_shift_extenders():
    o = build_oracle(full_shift(["0", "1", "2"]))
    for direction in ("future", "past"):
        assert extender_set(o, "0 1", 2, direction) == set(itertools.product(range(3), repeat=2))


def test_reversed_reset_extender():
    o = build_oracle(Reversed(BuiltinReset(1)))
    assert names(o, extender_set(o, "a₁", 1, "future")) == {"α_+"}


def test_counter_past_extender():
    o = build_oracle(BuiltinCounter(1))
    assert names(o, extender_set(o, "b₁", 1, "past")) == {"α_+"}


@pytest.mark.parametrize("spec", FIVE[:3], ids=specmod.describe)
def test_extender_sets_match_brute_force(spec):
    o = build_oracle(spec)
    bf = brute_force_oracle(spec)
    for a in bf_language(bf, 3):
        fut = {b for b in bf_language(bf, 2) if bf.decide(a + b)}
        past = {b for b in bf_language(bf, 2) if bf.decide(b + a)}
        assert extender_set(o, a, 2, "future") == fut
        assert extender_set(o, a, 2, "past") == past


# ---------------------------------------------------------------- transforms


def test_reverse_is_involution():
    for spec in (BuiltinReset(2), BuiltinCounter(1)):
        o = build_oracle(spec)
        rr = build_oracle(reverse(reverse(spec)))
        for w in words_upto(len(o.alphabet), 8):
            assert o.decide(w) == rr.decide(w)


def test_reversal_duality():
    for spec in FIVE[:2]:
        o = build_oracle(spec)
        r = build_oracle(reverse(spec))
        for w in words_upto(len(o.alphabet), 8):
            assert o.decide(w) == r.decide(tuple(reversed(w)))


def test_higher_block_counts():
    base = build_oracle(BuiltinReset(1))
    hb = build_oracle(higher_block(BuiltinReset(1), 2))
    for k in range(1, 7):
        assert len(language(hb, k)) == len(language(base, k + 1))


def test_higher_block_three_counts():
    base = build_oracle(BuiltinCounter(1))
    hb = build_oracle(higher_block(BuiltinCounter(1), 3))
    for k in range(1, 6):
        assert len(language(hb, k)) == len(language(base, k + 2))


def test_expand_symbol_full_shift():
    o = build_oracle(expand_symbol(full_shift(["0", "1"]), "0", "0′"))
    assert not o.decide("0 1 0 0′")
    assert o.decide("0 0′ 1 0")
    bf = brute_force_oracle(expand_symbol(full_shift(["0", "1"]), "0", "0′"))
    assert not bf.decide("0 1 0 0′")
    assert bf.decide("0 0′ 1 0")


def test_union_contains_both_languages():
    a, b = BuiltinReset(1), BuiltinCounter(1)
    u = build_oracle(union(a, b))
    for member in (a, b):
        o = build_oracle(member)
        for w in language(o, 7):
            assert u.decide(o.fmt(w))
    # code words of both members concatenate freely
    assert u.decide("α₋ α₊ a₁ α₋ α₊ b₁")


# ---------------------------------------------------------------- properties


@pytest.mark.parametrize("spec", FIVE, ids=specmod.describe)
def test_oracle_matches_brute_force(spec):
    o = build_oracle(spec)
    bf = brute_force_oracle(spec, 10)
    k = len(o.alphabet)
    frontier = [()]
    for _ in range(10):
        nxt = []
        for w in frontier:
            for s in range(k):
                v = w + (s,)
                got = bf.decide(v)
                assert o.decide(v) == got, o.fmt(v)
                if got:
                    nxt.append(v)
        frontier = nxt


@pytest.mark.parametrize("spec", FIVE[:2], ids=specmod.describe)
def test_factor_closure(spec):
    o = build_oracle(spec)
    for w in language(o, 8):
        assert o.decide(w[1:]) and o.decide(w[:-1])


@pytest.mark.parametrize("spec", [BuiltinReset(2), BuiltinCounter(2)], ids=specmod.describe)
def test_extensibility(spec):
    o = build_oracle(spec)
    k = len(o.alphabet)
    for w in language(o, 7):
        assert any(o.decide(w + (s,)) for s in range(k))
        assert any(o.decide((s,) + w) for s in range(k))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 3), max_size=14))
def test_factor_closure_random(word):
    o = build_oracle(BuiltinCounter(2))
    w = tuple(word)
    if o.decide(w):
        for i in range(len(w) + 1):
            for j in range(i, len(w) + 1):
                assert o.decide(w[i:j])


# ---------------------------------------------------------------- serialization


@pytest.mark.parametrize(
    "spec",
    FIVE + [full_shift(["0", "1"]), higher_block(BuiltinReset(1), 2), expand_symbol(BuiltinCounter(1), "α_+", "z")],
    ids=specmod.describe,
)
def test_json_round_trip(spec):
    assert specmod.loads(specmod.dumps(spec)) == spec


def test_spec_file_reads(tmp_path):
    p = tmp_path / "r.json"
    p.write_text(specmod.dumps(BuiltinReset(3)))
    assert specmod.validate_spec_file(p) == BuiltinReset(3)


def test_spec_file_rejects_zero_N(tmp_path):
    p = tmp_path / "r.json"
    p.write_text(json.dumps({"schema": "occ.codespec/1", "variant": "BuiltinReset", "N": 0}))
    with pytest.raises(SchemaError, match="N must be ≥ 1"):
        specmod.validate_spec_file(p)


def test_spec_file_rejects_empty_code_word(tmp_path):
    obj = specmod.to_json(full_shift(["0", "1"]))
    obj["words"].append([])
    p = tmp_path / "m.json"
    p.write_text(json.dumps(obj))
    with pytest.raises(SchemaError):
        specmod.validate_spec_file(p)


def test_explicit_markov_transitions_respected():
    # x and y must alternate
    code = MarkovCode(Alphabet(("x", "y")), ((0,), (1,)), ("p", "q"), (0, 1), (1, 0), ((1, 0), (0, 1)))
    o = build_oracle(ExplicitMarkov(code))
    bf = brute_force_oracle(ExplicitMarkov(code))
    assert o.decide("x y x y") and bf.decide("x y x y")
    assert not o.decide("x x") and not bf.decide("x x")
