from itertools import combinations
from math import comb, sqrt

import numpy as np
import pytest

import hyperind.generators as generators
from conftest import brute_alpha, brute_independent_sets, brute_max_degree
from hyperind.generators import (
    BlowupSpec,
    gen_blowup,
    gen_partial_steiner,
    gen_random,
    gen_star_gadget,
    gen_t_r,
    load_fixture,
)
from hyperind.hypercore import Hypergraph, has_independent_neighborhoods, is_linear, max_r_degree, validate
from hyperind.oracle import alpha_exact


def test_fixtures_are_steiner_systems(fano, sts9):
    assert fano.m == 7 and max_r_degree(fano) == 1
    assert sts9.m == 12 and max_r_degree(sts9) == 1
    # every pair covered exactly once
    assert fano.m * 3 == comb(7, 2) and sts9.m * 3 == comb(9, 2)
    with pytest.raises(ValueError):
        load_fixture("nope")


@pytest.mark.parametrize("n, r", [(7, 2), (12, 2), (30, 2), (10, 3), (16, 3), (8, 4)])
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_partial_steiner(n, r, seed):
    h = gen_partial_steiner(n, r, seed)
    assert validate(h) is None
    assert h.uniformity == r + 1 and h.n == n
    assert max_r_degree(h) <= 1
    if r == 2:
        assert is_linear(h)
    assert h == gen_partial_steiner(n, r, seed)


def test_partial_steiner_single_edge():
    for r in (2, 3, 4):
        assert gen_partial_steiner(r + 1, r, 5).m == 1


def test_partial_steiner_rejects_bad_args():
    with pytest.raises(ValueError):
        gen_partial_steiner(2, 2)
    with pytest.raises(ValueError):
        gen_partial_steiner(5, 1)


def test_blowup_fano_d2(fano):
    h = gen_blowup(BlowupSpec(fano, 2))
    assert h.n == 14 and h.m == 7 * 2**3
    assert brute_max_degree(h) == 2
    assert brute_alpha(fano) == 4
    assert brute_alpha(h) == 8


def test_blowup_d1_is_base(fano, sts9):
    assert gen_blowup(BlowupSpec(fano, 1)) == fano
    assert gen_blowup(BlowupSpec(sts9, 1)) == sts9


def test_blowup_rejects_non_steiner():
    with pytest.raises(ValueError):
        BlowupSpec(Hypergraph(3, 4, ((0, 1, 2), (0, 1, 3))), 2)
    with pytest.raises(ValueError):
        BlowupSpec(load_fixture("fano"), 0)


@pytest.mark.parametrize("base_name, d", [("fano", 1), ("fano", 2), ("fano", 3), ("sts9", 1), ("sts9", 2)])
def test_blowup_alpha_relation(base_name, d):
    base = load_fixture(base_name)
    h = gen_blowup(BlowupSpec(base, d))
    assert h.n <= 24
    r = base.uniformity - 1
    assert max_r_degree(h) <= d
    assert alpha_exact(h).alpha == min(d, r) * alpha_exact(base).alpha


def test_blowup_within_part_edges():
    base = gen_partial_steiner(5, 2, 0)
    h = gen_blowup(BlowupSpec(base, 4))
    assert h.m == 5 * comb(4, 3) + base.m * 4**3
    assert max_r_degree(h) <= 4


def test_random_extremes():
    assert gen_random(10, 3, 0.0).m == 0
    assert gen_random(8, 3, 1.0, 3).m == comb(8, 3)
    assert gen_random(20, 3, 0.3, 9) == gen_random(20, 3, 0.3, 9)
    assert gen_random(20, 3, 0.3, 9) != gen_random(20, 3, 0.3, 10)


def test_random_edge_count_concentration():
    total = comb(20, 3)
    mu, sigma = 0.1 * total, sqrt(total * 0.1 * 0.9)
    misses = sum(abs(gen_random(20, 3, 0.1, s).m - mu) > 4 * sigma for s in range(100))
    assert misses <= 1


def test_random_sparse_path_matches_dense(monkeypatch):
    """The binomial-count shortcut must give the same edge-count law at small n."""
    total = comb(9, 3)
    dense = np.array([gen_random(9, 3, 0.25, s).m for s in range(400)])
    monkeypatch.setattr(generators, "DENSE_LIMIT", 0)
    sparse_graphs = [gen_random(9, 3, 0.25, s) for s in range(400)]
    sparse = np.array([h.m for h in sparse_graphs])
    assert all(validate(h) is None for h in sparse_graphs)
    mu, sd = 0.25 * total, sqrt(total * 0.25 * 0.75)
    se = sd / sqrt(400)
    assert abs(dense.mean() - mu) < 4 * se
    assert abs(sparse.mean() - mu) < 4 * se
    assert 0.7 < sparse.std() / sd < 1.3
    # every edge equally likely under the shortcut
    counts = {}
    for h in sparse_graphs:
        for e in h.edges:
            counts[e] = counts.get(e, 0) + 1
    freq = np.array([counts.get(e, 0) for e in combinations(range(9), 3)]) / 400
    assert np.all(np.abs(freq - 0.25) < 5 * sqrt(0.25 * 0.75 / 400))


def test_star_gadget_shape():
    h, c = gen_star_gadget(2, 0, 3)
    assert (h.n, h.m, c) == (4, 0, 0)
    h, c = gen_star_gadget(2, 2, 1)
    assert h.n == 6 and h.m == 2
    assert set(h.edges[0]) & set(h.edges[1]) == {c}


def test_star_gadget_count_brute():
    h, _ = gen_star_gadget(2, 2, 1)
    assert len(brute_independent_sets(h)) == 2**1 * (2**4 + 3**2) == 50


def test_t_r():
    t2 = gen_t_r(2)
    assert (t2.uniformity, t2.n, t2.m) == (2, 3, 3)
    for r in (2, 3, 4):
        h = gen_t_r(r)
        assert h.n == 2 * r - 1 and h.m == r + 1
        assert not has_independent_neighborhoods(h)
        big_r = tuple(range(r - 1, 2 * r - 1))
        star = Hypergraph(r, h.n, tuple(e for e in h.edges if e != big_r))
        assert has_independent_neighborhoods(star)
