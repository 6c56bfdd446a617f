import time
from functools import lru_cache

import pytest

from occ.bruteforce import brute_force_oracle
from occ.lgraph import build
from occ.oracle import build_oracle


@lru_cache(maxsize=None)
def cached_oracle(spec):
    return build_oracle(spec)


@lru_cache(maxsize=None)
def cached_bf(spec, max_len=12):
    return brute_force_oracle(spec, max_len)


@lru_cache(maxsize=None)
def cached_graph(spec, direction, L=10):
    return build(cached_oracle(spec), direction, L)


def bf_language(bf, n):
    k = len(bf.alphabet)
    out = [()]
    for _ in range(n):
        out = [w + (s,) for w in out for s in range(k) if bf.decide(w + (s,))]
    return out


@pytest.fixture(scope="session")
def oracle_of():
    return cached_oracle


@pytest.fixture(scope="session")
def bf_of():
    return cached_bf


@pytest.fixture(scope="session")
def graph_of():
    return cached_graph


_SESSION_START = time.perf_counter()
SUITE_BUDGET = 600


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: acceptance criteria gate")


def pytest_terminal_summary(terminalreporter):
    elapsed = time.perf_counter() - _SESSION_START
    ok = elapsed <= SUITE_BUDGET
    terminalreporter.write_line(f"criterion 10 (suite runtime): {'PASS' if ok else 'FAIL'}  {elapsed:.0f}s of {SUITE_BUDGET}s")
