"""Exact brute-force ground truth for small hypergraphs.

Everything here is exponential and guarded by an explicit
:class:`EnumerationBudget`; exceeding it raises :class:`BudgetExceeded`
instead of silently truncating.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

from hyperind.generators import gen_star_gadget
from hyperind.hypercore import Hypergraph, VertexSet, edge_masks, incidence
from hyperind.rng import stream


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class EnumerationBudget:
    max_vertices: int = 26
    max_sets: int = 2**26

    def __post_init__(self):
        if self.max_vertices <= 0 or self.max_sets <= 0:
            raise ValueError("budget limits must be positive")


DEFAULT_BUDGET = EnumerationBudget()


@dataclass(frozen=True)
class AlphaCertificate:
    alpha: int
    witness: VertexSet
    method: str  # "exact" or "greedy-lower-bound"

    def to_dict(self) -> dict:
        return {"alpha": self.alpha, "witness": list(self.witness), "method": self.method}


def _mask_to_set(mask: int) -> VertexSet:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def _incident_masks(h: Hypergraph) -> list[list[int]]:
    masks = edge_masks(h)
    return [[masks[i] for i in edges] for edges in incidence(h)]


def _check_vertex_budget(h: Hypergraph, budget: EnumerationBudget) -> None:
    if h.n > budget.max_vertices:
        raise BudgetExceeded(f"n = {h.n} exceeds max_vertices = {budget.max_vertices}")


def alpha_exact(h: Hypergraph, budget: EnumerationBudget = DEFAULT_BUDGET) -> AlphaCertificate:
    """Independence number by branch and bound on vertex inclusion."""
    _check_vertex_budget(h, budget)
    inc = _incident_masks(h)
    order = sorted(range(h.n), key=lambda v: (-len(inc[v]), v))
    n = h.n

    def addable(cur: int, v: int) -> bool:
        with_v = cur | (1 << v)
        return all(e & ~with_v for e in inc[v])

    # greedy start so the bound prunes from the first branch
    best_mask = 0
    for v in reversed(order):
        if addable(best_mask, v):
            best_mask |= 1 << v
    best = bin(best_mask).count("1")

    def branch(i: int, cur: int, size: int) -> None:
        nonlocal best, best_mask
        if size > best:
            best, best_mask = size, cur
        if i == n or size + (n - i) <= best:
            return
        v = order[i]
        if addable(cur, v):
            branch(i + 1, cur | (1 << v), size + 1)
        branch(i + 1, cur, size)

    branch(0, 0, 0)
    return AlphaCertificate(best, _mask_to_set(best_mask), "exact")


def iter_independent_masks(h: Hypergraph, budget: EnumerationBudget = DEFAULT_BUDGET) -> Iterator[int]:
    """Yield every independent set as a bitmask, in lexicographic order of the sorted tuples."""
    _check_vertex_budget(h, budget)
    inc = _incident_masks(h)
    n = h.n
    count = 0

    def rec(cur: int, start: int) -> Iterator[int]:
        nonlocal count
        count += 1
        if count > budget.max_sets:
            raise BudgetExceeded(f"more than max_sets = {budget.max_sets} independent sets")
        yield cur
        for w in range(start, n):
            with_w = cur | (1 << w)
            if all(e & ~with_w for e in inc[w]):
                yield from rec(with_w, w + 1)

    yield from rec(0, 0)


def enumerate_independent_sets(h: Hypergraph, budget: EnumerationBudget = DEFAULT_BUDGET) -> list[VertexSet]:
    return [_mask_to_set(m) for m in iter_independent_masks(h, budget)]


def count_independent_sets_star(r: int, k: int, l: int) -> int:
    """Closed-form count ``2^l (2^(rk) + (2^r - 1)^k)`` for the star gadget."""
    if r < 2 or k < 0 or l < 0:
        raise ValueError(f"need r >= 2, k >= 0, l >= 0; got r={r}, k={k}, l={l}")
    return 2**l * (2 ** (r * k) + (2**r - 1) ** k)


def sample_uniform_independent_set(
    h: Hypergraph, seed: int = 0, budget: EnumerationBudget = DEFAULT_BUDGET
) -> VertexSet:
    """Exactly uniform independent set, by enumerating all of them and indexing."""
    sets = enumerate_independent_sets(h, budget)
    rng = stream(seed, "uniform-independent-set")
    return sets[int(rng.integers(len(sets)))]


def sample_many(h: Hypergraph, draws: int, seed: int = 0, budget: EnumerationBudget = DEFAULT_BUDGET):
    """Indices into ``enumerate_independent_sets(h)`` for ``draws`` uniform samples, plus the sets."""
    sets = enumerate_independent_sets(h, budget)
    rng = stream(seed, "uniform-independent-set")
    return rng.integers(len(sets), size=draws), sets


def brute_conditional_weight(r: int, k: int, l: int, b: float) -> float:
    """Average of the centre's weight over all independent sets of the star gadget.

    The weight is ``e^b`` when the centre is in the set, otherwise the number
    of gadget r-sets fully inside the set, capped at ``b``.
    """
    if b <= 0:
        raise ValueError(f"b must be positive, got {b}")
    h, center = gen_star_gadget(r, k, l)
    blocks = [sum(1 << v for v in e if v != center) for e in h.edges]
    eb = math.exp(b)
    terms = []
    for z in iter_independent_masks(h, EnumerationBudget(max_vertices=h.n, max_sets=2**30)):
        if z >> center & 1:
            terms.append(eb)
        else:
            full = sum(1 for blk in blocks if z & blk == blk)
            terms.append(min(b, full))
    return math.fsum(terms) / len(terms)

