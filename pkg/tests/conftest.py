import re
import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from hamlab import Digraph

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def digraphs(draw, min_order=1, max_order=6):
    n = draw(st.integers(min_order, max_order))
    arcs = draw(st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda a: a[0] != a[1])))
    return Digraph.from_arcs(n, arcs)


@st.composite
def dense_digraphs(draw, min_order=3, max_order=7):
    """Digraphs biased towards many arcs (each arc kept with probability ~0.8)."""
    n = draw(st.integers(min_order, max_order))
    keep = draw(st.lists(st.integers(0, 9), min_size=n * n, max_size=n * n))
    return Digraph.from_arcs(n, ((u, v) for u in range(n) for v in range(n) if u != v and keep[u * n + v] < 8))


def random_corpus(count, orders, seed, p_low=0.05, p_high=0.95):
    """Seeded digraphs with a per-digraph arc probability drawn from [p_low, p_high]."""
    rng = np.random.Generator(np.random.PCG64(seed))
    out = []
    for _ in range(count):
        n = int(rng.choice(orders))
        p = rng.uniform(p_low, p_high)
        a = rng.random((n, n)) < p
        np.fill_diagonal(a, False)
        out.append(Digraph.from_matrix(a.astype(int).tolist()))
    return out


def random_rows(count, n, seed, p_low=0.05, p_high=0.95):
    rng = np.random.Generator(np.random.PCG64(seed))
    p = rng.uniform(p_low, p_high, count)
    a = rng.random((count, n, n)) < p[:, None, None]
    a[:, range(n), range(n)] = False
    return (a * (np.int64(1) << np.arange(n, dtype=np.int64))).sum(axis=2).astype(np.int64)


@pytest.fixture(scope="session")
def small_corpus():
    return random_corpus(400, [2, 3, 4, 5, 6], seed=12345)


_ACCEPTANCE: dict[int, str] = {}
_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)")


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    k = int(m.group(1))
    if report.failed:
        _ACCEPTANCE[k] = "FAIL"
    elif report.when == "call" and report.passed:
        _ACCEPTANCE.setdefault(k, "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    titles = getattr(sys.modules.get("test_acceptance"), "CRITERIA", {})
    terminalreporter.section("acceptance criteria")
    for k in sorted(set(titles) | set(_ACCEPTANCE)):
        terminalreporter.write_line(f"criterion {k:2d}: {_ACCEPTANCE.get(k, 'NOT RUN'):7s} {titles.get(k, '')}")
