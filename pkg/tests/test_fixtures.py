import random

import pytest

from occ import fixtures as fx
from occ.errors import CrosscheckFailure, UnsupportedLevel
from occ.groups import FgAbelianGroup, cokernel
from occ.intlin import matmul, matvec

REV = [fx.FixtureFamily("reset_rev", N) for N in (1, 2, 3)]


@pytest.fixture(scope="module")
def builder_mats():
    cache = {}

    def get(fam):
        if fam not in cache:
            cache[fam] = fx.builder_matrices(fam, 9)
        return cache[fam]

    return get


@pytest.mark.parametrize("fam", REV[:2], ids=str)
def test_reversed_family_passes_every_check(fam, builder_mats):
    for l in range(2, 9):
        rep = fx.fixture_crosscheck(fam, l, mats=builder_mats(fam))
        assert rep.ok
        assert all(c.passed is True for c in rep.checks)


def test_reset_family_builder_mismatch_is_reported(builder_mats):
    fam = fx.FixtureFamily("reset", 2)
    with pytest.raises(CrosscheckFailure) as exc:
        fx.fixture_crosscheck(fam, 3, mats=builder_mats(fam))
    assert exc.value.check == "builder_equality" and exc.value.level == 3


@pytest.mark.parametrize("N", [1, 2, 3])
def test_reset_family_other_checks(N, builder_mats):
    fam = fx.FixtureFamily("reset", N)
    for l in range(2, 7):
        rep = fx.fixture_crosscheck(fam, l, mats=builder_mats(fam), raise_on_failure=False)
        by = {c.name: c.passed for c in rep.checks}
        assert by["display_consistency"] and by["cokernel_isomorphism"]
        assert by["lattice_equality"] is None
        assert by["builder_equality"] is False


@pytest.mark.parametrize("N", [1, 2])
def test_reset_family_cokernel(N):
    fam = fx.FixtureFamily("reset", N)
    for l in range(2, 7):
        assert cokernel(fx.MtminusIt(fam, l)).group == FgAbelianGroup.from_orders(2, [N])


def test_level_below_two_unsupported():
    with pytest.raises(UnsupportedLevel):
        fx.paper_fixtures(REV[0], 1)


def test_display_shape_level_two():
    b = fx.paper_fixtures(REV[0], 2)
    assert len(b.MtminusIt) == 8 and len(b.MtminusIt[0]) == 6
    assert len(b.M) == 6 and len(b.M[0]) == 8


@pytest.mark.parametrize("l", range(2, 9))
def test_P_structure(l):
    P = fx.P(l)
    n = 2 * l + 2
    for i in range(n):
        for j in range(n):
            if i == j:
                assert P[i][j] == 1
            elif j == 0 and 1 <= i <= l:
                assert P[i][j] == -1
            else:
                assert P[i][j] == 0


def test_L_matrix():
    assert [list(r) for r in fx.L_MATRIX] == [[1, 0, 0], [0, 0, 0], [0, 1, 1]]


def test_iota_matches_I():
    for l in range(2, 9):
        I = fx.I(l)
        for j, i in fx.iota(l).items():
            assert I[i - 1][j - 1] == 1
        assert sum(map(sum, I)) == 2 * l + 4


@pytest.mark.parametrize("N", [1, 2, 5])
def test_xi_on_leading_coordinates(N):
    rng = random.Random(N)
    for l in range(2, 7):
        for _ in range(20):
            g, mm, k = rng.randint(0, N - 1), rng.randint(-50, 50), rng.randint(-50, 50)
            z = (g, mm, k) + (0,) * (2 * l + 1)
            assert fx.xi(N, l, z) == (g, mm, k)


@pytest.mark.parametrize("N", [1, 3])
def test_decomposition_identity(N):
    rng = random.Random(7)
    for l in range(2, 8):
        B = fx.B(fx.FixtureFamily("reset_rev", N), l)
        for _ in range(30):
            z = tuple(rng.randint(-20, 20) for _ in range(2 * l + 4))
            x = fx.decomposition_x(N, l, z)
            r, phi, psi = fx.xi(N, l, z)
            rebuilt = tuple(a + b for a, b in zip(matvec(B, x), (r, phi, psi) + (0,) * (2 * l + 1)))
            assert rebuilt == z


def test_bundle_json():
    js = fx.paper_fixtures(REV[1], 2).to_json()
    assert js["family"] == "reset_rev" and js["N"] == 2 and js["level"] == 2
    assert len(js["MtminusIt"]) == 8
    assert js["L"] == [[1, 0, 0], [0, 0, 0], [0, 1, 1]]
