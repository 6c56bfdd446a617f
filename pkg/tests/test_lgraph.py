import copy

import pytest

from conftest import bf_language, cached_bf, cached_graph, cached_oracle
from occ import fixtures as fx
from occ.errors import StructureViolation
from occ.lgraph import (
    build,
    hereditary_closure,
    hereditary_subsets,
    is_hereditary,
    matrix_systems,
    simplicity_verdict,
    verify_structure,
)
from occ.oracle import reverse
from occ.spec import BuiltinCounter, BuiltinReset, Reversed, Union, describe, full_shift
from occ.sync import characteristic_pair, reset_analysis

SMALL = [
    BuiltinReset(1),
    BuiltinCounter(1),
    Reversed(BuiltinReset(1)),
    Reversed(BuiltinCounter(1)),
    Union((BuiltinReset(1), BuiltinCounter(1))),
]


def bf_classes(spec, l, n, m):
    """Γ_l⁺ sets of words w of length n whose class is realised by pasts extended by every length ≤ m."""
    bf = cached_bf(spec, 16)
    Ll = bf_language(bf, l)
    gam = lambda w: frozenset(b for b in Ll if bf.decide(w + b))
    langs = {j: bf_language(bf, j) for j in range(1, m + 1)}
    out = set()
    for w in bf_language(bf, n):
        G = gam(w)
        if all(any(bf.decide(u + w) and gam(u + w) == G for u in langs[j]) for j in range(1, m + 1)):
            out.add(G)
    return out


# ---------------------------------------------------------------- vertices against brute force


@pytest.mark.parametrize("spec", SMALL, ids=describe)
def test_vertex_classes_match_brute_force(spec):
    g = cached_graph(spec, "future", 4)
    for l in (2, 3):
        assert {g.extender(l, i) for i in range(g.m(l))} == bf_classes(spec, l, l + 3, l + 3)


@pytest.mark.parametrize("spec", SMALL, ids=describe)
def test_past_graph_is_future_of_reverse(spec):
    past = build(cached_oracle(spec), "past", 5)
    fut = build(cached_oracle(reverse(spec)), "future", 5)
    # vertex orders may differ; match vertices by extender set
    perm = []
    for l in range(6):
        index = {fut.extender(l, j): j for j in range(fut.m(l))}
        perm.append([index[past.extender(l, i)] for i in range(past.m(l))])
    for l in range(5):
        moved = {(perm[l][i], s, perm[l + 1][j]) for i, s, j in past.levels[l].edges}
        assert moved == set(fut.levels[l].edges)
        assert {perm[l + 1][j]: perm[l][i] for j, i in past.levels[l].iota.items()} == fut.levels[l].iota


# ---------------------------------------------------------------- structure


def test_full_shift_one_vertex():
    for direction in ("future", "past"):
        g = build(cached_oracle(full_shift(["0", "1", "2"])), direction, 5)
        assert all(g.m(l) == 1 for l in range(6))
        _, nm = matrix_systems(g)
        assert all(M == ((3,),) for M in nm.M)
        assert all(I == ((1,),) for I in nm.I)


@pytest.mark.parametrize("N", [1, 2, 3])
def test_reversed_reset_vertex_count(N):
    for direction in ("future", "past"):
        g = cached_graph(Reversed(BuiltinReset(N)), direction)
        assert [g.m(l) for l in range(1, 11)] == [2 * l + 2 for l in range(1, 11)]


@pytest.mark.parametrize("N", [1, 2])
def test_reversed_reset_iota_case_split(N):
    g = cached_graph(Reversed(BuiltinReset(N)), "past")
    for l in range(2, 9):
        got = {j + 1: i + 1 for j, i in g.levels[l].iota.items()}
        want = {1: 1, **{j: j - 1 for j in range(2, 2 * l + 4)}, 2 * l + 4: 2 * l + 2}
        assert got == want == fx.iota(l)


@pytest.mark.parametrize("N", [1, 2, 3])
def test_reversed_reset_matches_display(N):
    g = cached_graph(Reversed(BuiltinReset(N)), "past")
    sym, nm = matrix_systems(g)
    fam = fx.FixtureFamily("reset_rev", N)
    for l in range(2, 9):
        assert [list(r) for r in nm.M[l]] == [list(r) for r in fx.M(fam, l)]
        assert [list(r) for r in nm.I[l]] == [list(r) for r in fx.I(l)]
        assert [list(r) for r in nm.MtminusIt(l)] == [list(r) for r in fx.MtminusIt(fam, l)]
        want = fx.symbolic(fam, l)
        for i in range(g.m(l)):
            for j in range(g.m(l + 1)):
                assert sym.entry(l, i, j) == want.get((i + 1, j + 1), {})


def test_verify_reversed_reset_through_eight():
    assert verify_structure(build(cached_oracle(Reversed(BuiltinReset(2))), "future", 8), extender_levels=5).ok


def test_verify_union_through_six():
    assert verify_structure(build(cached_oracle(Union((BuiltinReset(1), BuiltinCounter(1)))), "future", 6)).ok


@pytest.mark.parametrize("spec", [BuiltinReset(2), BuiltinCounter(2)], ids=describe)
def test_compatibility_relation(spec):
    for direction in ("future", "past"):
        verify_structure(cached_graph(spec, direction), extender_levels=4)


def test_missing_iota_arrow_is_violation():
    g = copy.deepcopy(build(cached_oracle(Reversed(BuiltinReset(1))), "future", 5))
    lv = g.levels[3]
    del lv.iota[max(lv.iota)]
    with pytest.raises(StructureViolation) as exc:
        verify_structure(g)
    assert exc.value.kind == "iota" and exc.value.level == 3


def test_matrix_json_shapes():
    g = cached_graph(Reversed(BuiltinReset(1)), "past")
    sym, nm = matrix_systems(g)
    level2 = nm.to_json(sym, first=2)["levels"][0]
    assert level2["level"] == 2 and level2["m"] == [6, 8]
    assert len(level2["MtminusIt"]) == 8 and len(level2["MtminusIt"][0]) == 6
    assert level2["symbolic"][0][0] == {"α_+": 1}


# ---------------------------------------------------------------- hereditary subsets and simplicity


def test_counter_future_has_proper_hereditary_subset():
    g = cached_graph(BuiltinCounter(1), "future")
    hv = hereditary_subsets(g)
    assert hv.found and hv.proper
    fam = [set(i - 1 for i in level) for level in hv.subset]
    assert is_hereditary(g, fam)


def test_reset_future_has_none():
    hv = hereditary_subsets(cached_graph(BuiltinReset(2), "future"))
    assert not hv.found and hv.level_checked >= 10


def test_reset_past_has_one():
    assert hereditary_subsets(cached_graph(BuiltinReset(2), "past")).found


def test_closure_is_hereditary():
    g = cached_graph(BuiltinCounter(2), "future")
    for seed in [(1, 0), (2, 1), (3, 4)]:
        assert is_hereditary(g, hereditary_closure(g, [seed]))


@pytest.mark.parametrize("N", [1, 2])
def test_simplicity_verdicts(N):
    reset = reset_analysis(cached_oracle(BuiltinReset(N)), characteristic_pair(cached_oracle(BuiltinReset(N))))
    assert simplicity_verdict(cached_graph(BuiltinReset(N), "future"), reset).verdict == "simple"
    assert simplicity_verdict(cached_graph(BuiltinReset(N), "past"), reset).verdict == "not_simple"
    assert simplicity_verdict(cached_graph(BuiltinCounter(N), "future")).verdict == "not_simple"


def test_simple_needs_reset_certificate():
    assert simplicity_verdict(cached_graph(BuiltinReset(2), "future")).verdict == "unknown"
