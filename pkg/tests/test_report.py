import json
from functools import lru_cache

import pytest

from conftest import cached_graph
from occ.groups import FgAbelianGroup as Z
from occ.oracle import expand_symbol, higher_block
from occ.report import COMPARE_SCHEMA, REPORT_SCHEMA, compare_reports, full_report, k_result
from occ.spec import BuiltinCounter, BuiltinReset, Reversed, describe, full_shift


@lru_cache(maxsize=None)
def report(spec):
    return full_report(spec)


def test_reset_report():
    r = report(BuiltinReset(2))
    assert r.k0 == Z(1, (2,)) and r.k1 == Z(0)
    assert r.simplicity_future == "simple" and r.simplicity_past == "not_simple"
    assert r.bf.bf0 == Z(0, (2,)) and r.bf.bf1 == Z(1)
    assert r.unresolved == []


def test_counter_report():
    r = report(BuiltinCounter(2))
    assert r.k0 == Z(2, (2,)) and r.k1 == Z(1)
    assert r.simplicity_future == "not_simple"


def test_reversed_reset_report():
    r = report(Reversed(BuiltinReset(3)))
    assert r.k0 == Z(1, (3,)) and r.k1 == Z(0)


def test_full_shift_report_names_gaps():
    r = report(full_shift(["0", "1"]))
    assert r.k0 == Z(0) and r.k1 == Z(0)
    assert "characteristic_pair" in r.unresolved


def test_report_json_deterministic():
    a = full_report(BuiltinReset(1)).dumps()
    b = full_report(BuiltinReset(1)).dumps()
    assert a == b
    obj = json.loads(a)
    assert obj["schema"] == REPORT_SCHEMA
    assert obj["K0"] == {"rank": 1, "torsion": []}
    assert obj["bowen_franks"]["BF1_stated_in_source"] == {"rank": 2, "torsion": []}


def test_report_text_mentions_groups():
    text = report(BuiltinReset(2)).render_text()
    assert "ℤ/2ℤ ⊕ ℤ" in text and "simple" in text


# ---------------------------------------------------------------- comparison


def test_reset_vs_reverse_by_ideal_structure():
    v = compare_reports(report(BuiltinReset(2)), report(Reversed(BuiltinReset(2))))
    assert v.verdict == "distinguished"
    assert v.reason == "ideal structure (future simple vs not simple)"
    assert v.render_text() == "distinguished: ideal structure (future simple vs not simple)"


def test_reset_two_vs_three_by_torsion():
    v = compare_reports(report(BuiltinReset(2)), report(BuiltinReset(3)))
    assert v.verdict == "distinguished" and v.reason.startswith("torsion of K0")


@pytest.mark.parametrize("spec", [BuiltinReset(2), BuiltinCounter(2), Reversed(BuiltinReset(2))], ids=describe)
def test_compare_reflexive(spec):
    assert compare_reports(report(spec), report(spec)).verdict == "not_distinguished"


def test_compare_symmetric():
    specs = [BuiltinReset(2), BuiltinReset(3), BuiltinCounter(2), Reversed(BuiltinReset(2))]
    for a in specs:
        for b in specs:
            assert compare_reports(report(a), report(b)).verdict == compare_reports(report(b), report(a)).verdict


def test_compare_json_schema():
    obj = compare_reports(report(BuiltinReset(2)), report(BuiltinReset(3))).to_json()
    assert obj["schema"] == COMPARE_SCHEMA and obj["verdict"] == "distinguished"


# ---------------------------------------------------------------- flow-move invariance


@pytest.mark.parametrize("base", [BuiltinReset(2), BuiltinCounter(2)], ids=describe)
@pytest.mark.parametrize(
    "move",
    [lambda s: higher_block(s, 2), lambda s: expand_symbol(s, "α_-", "z"), lambda s: expand_symbol(s, "α_+", "z")],
    ids=["block2", "expand-minus", "expand-plus"],
)
def test_k_groups_flow_invariant(base, move):
    want = k_result(cached_graph(base, "future"), 3)
    got = k_result(cached_graph(move(base), "future"), 3)
    assert not got.error
    assert (got.k0, got.k1) == (want.k0, want.k1)
