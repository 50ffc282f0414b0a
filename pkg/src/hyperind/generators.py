"""Instance families: partial Steiner systems, blowups, random hypergraphs,
the star gadget and the forbidden configuration T_r."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from itertools import combinations, compress, product
from math import comb, sqrt

import numpy as np

from hyperind.hypercore import Hypergraph, max_r_degree, parse_hg
from hyperind.rng import stream

FIXTURES = ("fano", "sts9")

# Binomial-count-then-sample is used above this many candidate edges.
DENSE_LIMIT = 2_000_000


def load_fixture(name: str) -> Hypergraph:
    if name not in FIXTURES:
        raise ValueError(f"unknown fixture {name!r}; choose from {FIXTURES}")
    text = (resources.files("hyperind") / "data" / f"{name}.hg").read_text()
    return parse_hg(text)


def gen_partial_steiner(n: int, r: int, seed: int = 0, max_failures: int | None = None) -> Hypergraph:
    """Random greedy partial Steiner (n, r+1, r)-system.

    Draws uniformly random (r+1)-sets and keeps one whenever none of its
    r-subsets is already covered. Stops after ``max_failures`` consecutive
    rejections (default ``50 * n``).
    """
    if r < 2 or n < r + 1:
        raise ValueError(f"need n >= r+1 >= 3, got n={n}, r={r}")
    if max_failures is None:
        max_failures = 50 * n
    rng = stream(seed, "steiner")
    used: set[tuple[int, ...]] = set()
    edges: list[tuple[int, ...]] = []
    failures = 0
    while failures < max_failures:
        # rows with a repeated vertex are discarded, leaving uniform (r+1)-sets
        batch = np.sort(rng.integers(0, n, size=(4096, r + 1)), axis=1)
        batch = batch[(np.diff(batch, axis=1) > 0).all(axis=1)]
        for row in batch.tolist():
            e = tuple(row)
            subs = list(combinations(e, r))
            if any(s in used for s in subs):
                failures += 1
                if failures >= max_failures:
                    break
                continue
            used.update(subs)
            edges.append(e)
            failures = 0
    return Hypergraph(r + 1, n, tuple(sorted(edges)))


@dataclass(frozen=True)
class BlowupSpec:
    base: Hypergraph
    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError(f"part size d must be >= 1, got {self.d}")
        if max_r_degree(self.base) > 1:
            raise ValueError("blowup base must be a partial Steiner system (max r-degree <= 1)")


def gen_blowup(spec: BlowupSpec) -> Hypergraph:
    """Replace every base vertex by a part of ``d`` vertices.

    Part ``i`` occupies ids ``[i*d, (i+1)*d)``. Edges are all
    ``uniformity``-subsets inside a part plus, for each base edge, every
    transversal picking one vertex from each of its parts.
    """
    base, d = spec.base, spec.d
    u = base.uniformity
    parts = [range(i * d, (i + 1) * d) for i in range(base.n)]
    edges: list[tuple[int, ...]] = []
    for part in parts:
        edges.extend(combinations(part, u))
    for e in base.edges:
        edges.extend(product(*(parts[x] for x in e)))
    return Hypergraph(u, base.n * d, tuple(sorted(edges)))


def gen_random(n: int, uniformity: int, p: float, seed: int = 0) -> Hypergraph:
    """Binomial random hypergraph: each ``uniformity``-set kept independently with probability ``p``."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    if uniformity < 2 or n < 0:
        raise ValueError(f"invalid n={n}, uniformity={uniformity}")
    total = comb(n, uniformity)
    rng = stream(seed, "random-hypergraph")
    if p == 0.0 or total == 0:
        return Hypergraph(uniformity, n, ())
    if total <= DENSE_LIMIT:
        keep = rng.random(total) < p
        edges = tuple(compress(combinations(range(n), uniformity), keep.tolist()))
        return Hypergraph(uniformity, n, edges)
    if total < 2**63:
        m = int(rng.binomial(total, p))
    else:
        mu, sigma = total * p, sqrt(total * p * (1.0 - p))
        m = min(total, max(0, round(rng.normal(mu, sigma))))
    if m > 50_000_000:
        raise ValueError(f"{m} edges requested; too many to materialize")
    chosen: set[tuple[int, ...]] = set()
    while len(chosen) < m:
        chosen.add(tuple(sorted(int(v) for v in rng.choice(n, size=uniformity, replace=False))))
    return Hypergraph(uniformity, n, tuple(sorted(chosen)))


def gen_star_gadget(r: int, k: int, l: int) -> tuple[Hypergraph, int]:
    """Center 0, ``k`` disjoint r-sets each forming an edge with it, ``l`` isolated vertices."""
    if r < 2 or k < 0 or l < 0:
        raise ValueError(f"need r >= 2, k >= 0, l >= 0; got r={r}, k={k}, l={l}")
    edges = tuple((0, *range(1 + i * r, 1 + (i + 1) * r)) for i in range(k))
    return Hypergraph(r + 1, 1 + r * k + l, edges), 0


def gen_t_r(r: int) -> Hypergraph:
    """The r-graph T_r on ``S ∪ R`` with ``|S| = r-1``, ``|R| = r``.

    S occupies ids ``0..r-2`` and R ids ``r-1..2r-2``; edges are ``S ∪ {v}``
    for each ``v`` in R, plus R itself.
    """
    if r < 2:
        raise ValueError(f"r must be >= 2, got {r}")
    s = tuple(range(r - 1))
    big_r = tuple(range(r - 1, 2 * r - 1))
    edges = [s + (v,) for v in big_r] + [big_r]
    return Hypergraph(r, 2 * r - 1, tuple(sorted(edges)))
