from itertools import combinations

import pytest
from hypothesis import strategies as st

from hyperind.generators import load_fixture
from hyperind.hypercore import Hypergraph


@pytest.fixture
def fano():
    return load_fixture("fano")


@pytest.fixture
def sts9():
    return load_fixture("sts9")


def complete(n, u):
    return Hypergraph(u, n, tuple(combinations(range(n), u)))


@pytest.fixture
def k5_3():
    return complete(5, 3)


# -- independent brute-force oracles -----------------------------------------


def brute_alpha(h):
    """Largest independent set by checking every subset, largest first."""
    edges = [set(e) for e in h.edges]
    for size in range(h.n, -1, -1):
        for cand in combinations(range(h.n), size):
            s = set(cand)
            if not any(e <= s for e in edges):
                return size
    return 0


def brute_independent_sets(h):
    edges = [set(e) for e in h.edges]
    out = []
    for size in range(h.n + 1):
        for cand in combinations(range(h.n), size):
            if not any(e <= set(cand) for e in edges):
                out.append(cand)
    return sorted(out)


def brute_max_degree(h):
    """Max r-degree by scanning every (u-1)-subset of V, not edge-side."""
    best = 0
    for s in combinations(range(h.n), h.uniformity - 1):
        best = max(best, sum(1 for e in h.edges if set(s) <= set(e)))
    return best


def brute_triangles(h):
    sets = [set(e) for e in h.edges]
    out = []
    for i, j, k in combinations(range(len(sets)), 3):
        e, f, g = sets[i], sets[j], sets[k]
        if len(e & f) == len(f & g) == len(g & e) == 1 and not (e & f & g):
            if len({*(e & f), *(f & g), *(g & e)}) == 3:
                out.append((i, j, k))
    return out


@st.composite
def hypergraphs(draw, max_n=9, uniformities=(2, 3, 4), max_edges=14):
    u = draw(st.sampled_from(uniformities))
    n = draw(st.integers(min_value=u, max_value=max_n))
    all_edges = list(combinations(range(n), u))
    edges = draw(st.lists(st.sampled_from(all_edges), unique=True, max_size=max_edges))
    return Hypergraph(u, n, tuple(sorted(edges)))


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for num in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[num])
