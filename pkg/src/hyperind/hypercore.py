"""Uniform hypergraphs: representation, structural predicates and counters.

Vertices are dense integers ``0..n-1``; edges are strictly ascending tuples.
Vertex sets are plain sorted tuples of ints.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from itertools import combinations
from math import comb
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence

Edge = tuple[int, ...]
VertexSet = tuple[int, ...]


@dataclass(frozen=True)
class Hypergraph:
    """An immutable ``uniformity``-uniform hypergraph on ``n`` vertices.

    The raw constructor does not check anything, so that :func:`validate`
    can report on malformed instances. Use :meth:`from_edges` to build a
    canonical, checked instance.
    """

    uniformity: int
    n: int
    edges: tuple[Edge, ...] = ()

    @classmethod
    def from_edges(cls, uniformity: int, n: int, edges: Iterable[Iterable[int]]) -> "Hypergraph":
        canon = sorted({tuple(sorted(e)) for e in edges})
        h = cls(uniformity, n, tuple(canon))
        problem = validate(h)
        if problem is not None:
            raise ValueError(problem)
        return h

    @property
    def m(self) -> int:
        return len(self.edges)

    def __repr__(self) -> str:
        return f"Hypergraph(uniformity={self.uniformity}, n={self.n}, m={self.m})"


class Triangle(NamedTuple):
    e: int
    f: int
    g: int


def vertex_set(vertices: Iterable[int]) -> VertexSet:
    return tuple(sorted(set(vertices)))


def _check_vertices(h: Hypergraph, vertices: Iterable[int]) -> None:
    for v in vertices:
        if not 0 <= v < h.n:
            raise ValueError(f"vertex {v} out of range [0, {h.n})")


def validate(h: Hypergraph) -> str | None:
    """Return ``None`` if ``h`` is well formed, else a description of the first violation."""
    if h.uniformity < 2:
        return f"uniformity {h.uniformity} < 2"
    if h.n < 0:
        return f"negative vertex count {h.n}"
    prev = None
    for idx, e in enumerate(h.edges):
        if len(e) != h.uniformity:
            return f"edge {idx} {e}: size {len(e)} != uniformity {h.uniformity}"
        if any(not 0 <= v < h.n for v in e):
            return f"edge {idx} {e}: vertex out of range [0, {h.n})"
        if any(a >= b for a, b in zip(e, e[1:])):
            return f"edge {idx} {e}: non-ascending edge"
        if prev is not None:
            if e == prev:
                return f"edge {idx} {e}: duplicate edge"
            if e < prev:
                return f"edge {idx} {e}: edge list not in sorted order"
        prev = e
    return None


def degree_of_set(h: Hypergraph, s: Iterable[int]) -> int:
    """Number of edges containing ``s``."""
    s = frozenset(s)
    if len(s) >= h.uniformity:
        raise ValueError(f"|S| = {len(s)} must be < uniformity {h.uniformity}")
    return sum(1 for e in h.edges if s.issubset(e))


def codegree_tally(h: Hypergraph, size: int | None = None) -> Counter:
    """Tally of edges per ``size``-subset, built edge-side (default size: uniformity-1)."""
    if size is None:
        size = h.uniformity - 1
    tally: Counter = Counter()
    for e in h.edges:
        tally.update(combinations(e, size))
    return tally


def max_r_degree(h: Hypergraph) -> int:
    """Largest number of edges through any (uniformity-1)-set; 0 when edgeless."""
    if not h.edges:
        return 0
    return max(codegree_tally(h).values())


def max_degree_of_size(h: Hypergraph, size: int) -> int:
    """Largest number of edges through any ``size``-set (``size < uniformity``)."""
    if not 0 <= size < h.uniformity:
        raise ValueError(f"size {size} must lie in [0, {h.uniformity})")
    if not h.edges:
        return 0
    return max(codegree_tally(h, size).values())


def is_independent(h: Hypergraph, z: Iterable[int]) -> bool:
    zs = set(z)
    _check_vertices(h, zs)
    if len(zs) < h.uniformity:
        return True
    return not any(zs.issuperset(e) for e in h.edges)


def is_linear(h: Hypergraph) -> bool:
    tally = codegree_tally(h, 2) if h.uniformity > 2 else Counter()
    return all(c <= 1 for c in tally.values())


def intersection_profile(h: Hypergraph) -> dict[int, int]:
    """Counts of unordered edge pairs by intersection size (keys ``0..uniformity-1``)."""
    counts = {i: 0 for i in range(h.uniformity)}
    sets = [frozenset(e) for e in h.edges]
    for a, b in combinations(sets, 2):
        counts[len(a & b)] += 1
    return counts


def incidence(h: Hypergraph) -> list[list[int]]:
    """Edge indices incident to each vertex."""
    inc: list[list[int]] = [[] for _ in range(h.n)]
    for idx, e in enumerate(h.edges):
        for v in e:
            inc[v].append(idx)
    return inc


def _pair_index(h: Hypergraph) -> dict[tuple[int, int], list[int]]:
    idx: dict[tuple[int, int], list[int]] = defaultdict(list)
    for i, e in enumerate(h.edges):
        for pair in combinations(e, 2):
            idx[pair].append(i)
    return idx


def iter_triangles(h: Hypergraph, alive=None):
    """Yield triangles in lexicographic order of edge indices.

    A triangle is three edges meeting pairwise in exactly one vertex with an
    empty common intersection. ``alive`` optionally filters edge indices.
    """
    sets = [frozenset(e) for e in h.edges]
    inc = incidence(h)
    pairs = _pair_index(h)
    ok = alive if alive is not None else (lambda i: True)
    for i, e in enumerate(sets):
        if not ok(i):
            continue
        later: set[int] = set()
        for v in e:
            later.update(j for j in inc[v] if j > i)
        for j in sorted(later):
            if not ok(i):
                break
            if not ok(j):
                continue
            f = sets[j]
            shared = e & f
            if len(shared) != 1:
                continue
            (x,) = shared
            cands: set[int] = set()
            for y in e - shared:
                for z in f - shared:
                    key = (y, z) if y < z else (z, y)
                    cands.update(k for k in pairs.get(key, ()) if k > j)
            for k in sorted(cands):
                if not (ok(i) and ok(j)):
                    break
                if not ok(k):
                    continue
                g = sets[k]
                if x not in g and len(g & e) == 1 and len(g & f) == 1:
                    yield Triangle(i, j, k)


def find_triangles(h: Hypergraph) -> list[Triangle]:
    return list(iter_triangles(h))


def iter_overlapping_pairs(h: Hypergraph, alive=None):
    """Yield edge index pairs ``(i, j)``, ``i < j``, sharing at least two vertices, in lex order."""
    if h.uniformity < 3:
        return
    pairs = _pair_index(h)
    ok = alive if alive is not None else (lambda i: True)
    for i, e in enumerate(h.edges):
        if not ok(i):
            continue
        partners: set[int] = set()
        for pair in combinations(e, 2):
            partners.update(j for j in pairs[pair] if j > i)
        for j in sorted(partners):
            if not ok(i):
                break
            if ok(j):
                yield (i, j)


def has_independent_neighborhoods(h: Hypergraph) -> bool:
    """True iff every (uniformity-1)-set's link is an independent vertex set."""
    links: dict[Edge, set[int]] = defaultdict(set)
    for e in h.edges:
        for r in combinations(e, h.uniformity - 1):
            links[r].update(v for v in e if v not in r)
    return all(is_independent(h, link) for link in links.values())


def induced(h: Hypergraph, x: Iterable[int]) -> tuple[Hypergraph, VertexSet]:
    """Subgraph induced by ``x``, relabelled ``0..|x|-1`` in ascending order.

    Returns the subgraph and the relabelling map (new id -> original id).
    """
    keep = vertex_set(x)
    _check_vertices(h, keep)
    new_id = {v: i for i, v in enumerate(keep)}
    edges = tuple(
        tuple(new_id[v] for v in e) for e in h.edges if all(v in new_id for v in e)
    )
    return Hypergraph(h.uniformity, len(keep), edges), keep


def delete_vertices(h: Hypergraph, d: Iterable[int]) -> tuple[Hypergraph, VertexSet]:
    gone = set(d)
    _check_vertices(h, gone)
    return induced(h, (v for v in range(h.n) if v not in gone))


def pair_count_bound(h: Hypergraph, i: int, d: int | None = None) -> int:
    """Upper bound ``d^2 n^(2r-i)`` on edge pairs meeting in ``i`` vertices (r = uniformity-1)."""
    if d is None:
        d = max_r_degree(h)
    return d * d * h.n ** (2 * (h.uniformity - 1) - i)


# -- .hg text format ---------------------------------------------------------


class HgParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def parse_hg(text: str) -> Hypergraph:
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise HgParseError(1, "missing header '<uniformity> <n> <m>'")
    try:
        header = [int(tok) for tok in lines[0].split()]
    except ValueError:
        raise HgParseError(1, f"non-integer header {lines[0]!r}") from None
    if len(header) != 3:
        raise HgParseError(1, f"header needs 3 integers, got {len(header)}")
    u, n, m = header
    if u < 2 or n < 0 or m < 0:
        raise HgParseError(1, f"invalid header values {header}")
    body = lines[1:]
    while body and not body[-1].strip():
        body.pop()
    if len(body) != m:
        raise HgParseError(len(lines), f"expected {m} edge lines, found {len(body)}")
    edges: list[Edge] = []
    seen: set[Edge] = set()
    for offset, line in enumerate(body):
        lineno = offset + 2
        try:
            e = tuple(int(tok) for tok in line.split())
        except ValueError:
            raise HgParseError(lineno, f"non-integer token in {line!r}") from None
        if len(e) != u:
            raise HgParseError(lineno, f"edge has {len(e)} vertices, expected {u}")
        if any(not 0 <= v < n for v in e):
            raise HgParseError(lineno, f"vertex out of range [0, {n})")
        if any(a >= b for a, b in zip(e, e[1:])):
            raise HgParseError(lineno, "edge not strictly ascending")
        if e in seen:
            raise HgParseError(lineno, "duplicate edge")
        seen.add(e)
        edges.append(e)
    return Hypergraph(u, n, tuple(sorted(edges)))


def format_hg(h: Hypergraph) -> str:
    out = [f"{h.uniformity} {h.n} {h.m}"]
    out.extend(" ".join(map(str, e)) for e in h.edges)
    return "\n".join(out) + "\n"


def read_hg(path: str | Path) -> Hypergraph:
    return parse_hg(Path(path).read_text())


def write_hg(h: Hypergraph, path: str | Path) -> None:
    from hyperind._io import atomic_write_text

    atomic_write_text(path, format_hg(h))


def num_pairs(h: Hypergraph) -> int:
    return comb(h.m, 2)


def as_mask(vertices: Sequence[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def edge_masks(h: Hypergraph) -> list[int]:
    return [as_mask(e) for e in h.edges]
