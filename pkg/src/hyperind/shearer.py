"""Random subset, cleanup and weight statistics behind the independence lower bound.

The pipeline samples a random vertex subset, deletes a vertex from every
overlapping edge pair and every triangle until the induced subgraph is
linear and triangle-free, then looks for a large independent set there and
compares both sides of the weight inequality.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from hyperind.bounds import c_r_value, truncated_binomial_mean
from hyperind.hypercore import (
    Hypergraph,
    VertexSet,
    edge_masks,
    find_triangles,
    incidence,
    induced,
    is_independent,
    is_linear,
    iter_overlapping_pairs,
    iter_triangles,
    max_r_degree,
    vertex_set,
)
from hyperind.oracle import (
    AlphaCertificate,
    BudgetExceeded,
    EnumerationBudget,
    iter_independent_masks,
)
from hyperind.rng import stream

# Smallest integer n with log log log n >= 1, i.e. the first integer above e^(e^e).
LLL_MIN_N = 3814280
DEFAULT_THRESHOLD = 0.1
EXACT_LIMIT = 24


class ParameterError(ValueError):
    pass


@dataclass(frozen=True)
class PipelineParams:
    n: int
    d: float
    r: int
    p: float
    b: float
    seed: int = 0
    flags: tuple = ()

    def __post_init__(self):
        if not 0 < self.p <= 1:
            raise ParameterError(f"p must lie in (0, 1], got {self.p}")
        if self.b <= 0:
            raise ParameterError(f"b must be positive, got {self.b}")
        if self.d < 1:
            raise ParameterError(f"d must be >= 1, got {self.d}")
        if self.r < 2:
            raise ParameterError(f"r must be >= 2, got {self.r}")

    @property
    def q(self) -> float:
        return 1.0 - 2.0**-self.r

    @property
    def pn(self) -> float:
        return self.p * self.n

    def with_seed(self, seed: int) -> "PipelineParams":
        return replace(self, seed=seed)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["flags"] = list(self.flags)
        out["q"] = self.q
        out["pn"] = self.pn
        return out


def choose_parameters(n: int, d: float, r: int) -> PipelineParams:
    """Sampling probability and weight cap used by the proof.

    ``pn = (n / (d log log log n))^(3/(3r-1))`` and
    ``b = log(n/d) / (r(3r-1))``. Below ``LLL_MIN_N`` the triple log is
    replaced by 1 and the substitution is flagged.
    """
    if r < 2:
        raise ParameterError(f"r must be >= 2, got {r}")
    if d < 1 or d >= n:
        raise ParameterError(f"need 1 <= d < n, got d={d}, n={n}")
    flags = []
    if n >= LLL_MIN_N:
        lll = math.log(math.log(math.log(n)))
    else:
        lll = 1.0
        flags.append(f"logloglog-substituted (n < {LLL_MIN_N})")
    if d >= n / math.log(n) ** (3 * r * r):
        flags.append("degree-hypothesis-unmet")
    pn = (n / (d * lll)) ** (3.0 / (3 * r - 1))
    p = pn / n
    if p > 1:
        p = 1.0
        flags.append("p-clamped")
    b = math.log(n / d) / (r * (3 * r - 1))
    return PipelineParams(n=n, d=d, r=r, p=p, b=b, seed=0, flags=tuple(flags))


# -- condition ratios --------------------------------------------------------


@dataclass(frozen=True)
class ConditionReport:
    """Each "A << B" is stored as ``small``/``large`` sides and ``ratio = small/large``."""

    alpha: float
    threshold: float
    entries: dict = field(default_factory=dict)
    degenerate: bool = False

    def ratios(self) -> dict:
        return {name: e["ratio"] for name, e in self.entries.items()}

    def satisfied(self) -> dict:
        return {name: e["satisfied"] for name, e in self.entries.items()}

    def to_dict(self) -> dict:
        return {
            "alpha": _finite_or_none(self.alpha),
            "threshold": self.threshold,
            "degenerate": self.degenerate,
            "ratios": {k: _finite_or_none(v) for k, v in self.ratios().items()},
            "satisfied": self.satisfied(),
        }


def _finite_or_none(x):
    return x if x is not None and math.isfinite(x) else None


def _log(x: float) -> float:
    return math.log(x) if x > 0 else -math.inf


def structure_ratio(n: float, d: float, r: int, p: float) -> float:
    """``d^3 n^(3r-3) p^(3r) / (pn)``: expected triangles in the sample relative to its size."""
    log_small = 3 * _log(d) + (3 * r - 3) * _log(n) + 3 * r * _log(p)
    log_large = _log(p) + _log(n)
    return math.exp(min(log_small - log_large, 700.0))


def check_conditions(
    params: PipelineParams, alpha: float | None = None, threshold: float = DEFAULT_THRESHOLD
) -> ConditionReport:
    """Evaluate the three asymptotic inequalities numerically.

    The first two together are the sampling lemma's hypothesis; the third
    compares the weight of ``Z`` against the bound on ``h``. Ratios are
    reported as numbers; ``satisfied`` only means ``ratio <= threshold``.
    """
    n, d, r, p, b = params.n, params.d, params.r, params.p, params.b
    if alpha is None:
        alpha = c_r_value(r) * (n / d * math.log(n / d)) ** (1.0 / r) if d < n else 0.0
    la, ln, ld, lp = _log(alpha), _log(n), _log(d), _log(p)
    log_first_large = lp + 2 * ld + 2 * r * la - _log(n * b * b + d * b * alpha**r)
    sides = {
        "first": (la + _log(math.log(n)), log_first_large),
        "second": (3 * ld + (3 * r - 3) * ln + 3 * r * lp, lp + ln),
        "third": (b + la, lp + ld + r * la),
    }
    entries = {}
    degenerate = False
    for name, (ls, ll) in sides.items():
        if not (math.isfinite(ls) and math.isfinite(ll)):
            degenerate = True
            entries[name] = {"small": None, "large": None, "ratio": math.nan, "satisfied": False}
            continue
        ratio = math.exp(min(ls - ll, 700.0))
        entries[name] = {
            "small": math.exp(min(ls, 700.0)),
            "large": math.exp(min(ll, 700.0)),
            "ratio": ratio,
            "satisfied": ratio <= threshold,
        }
    return ConditionReport(alpha=alpha, threshold=threshold, entries=entries, degenerate=degenerate)


# -- random subset and cleanup -----------------------------------------------


def random_subset(h: Hypergraph | int, p: float, seed: int = 0) -> VertexSet:
    if not 0 <= p <= 1:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    n = h if isinstance(h, int) else h.n
    draws = stream(seed, "random-subset").random(n)
    return tuple(int(v) for v in np.flatnonzero(draws < p))


@dataclass(frozen=True)
class CleanupReport:
    sampled: VertexSet
    deleted: VertexSet
    kept: VertexSet
    triangles_found: int
    overlap_pairs_found: int

    def to_dict(self) -> dict:
        return {
            "x_size": len(self.sampled),
            "y_size": len(self.kept),
            "triangles": self.triangles_found,
            "overlaps": self.overlap_pairs_found,
            "deleted": list(self.deleted),
        }


def cleanup(h: Hypergraph, x) -> CleanupReport:
    """Delete vertices of ``x`` until ``H[kept]`` is linear and triangle-free.

    Overlapping edge pairs are handled first, then triangles, each in
    lexicographic order of edge indices. For each structure still present,
    the smallest vertex of its pairwise intersections is deleted. Deleting
    never creates structures, so one ordered pass yields the same result as
    rescanning from the start after every deletion. The two counters record
    how many structures triggered a deletion.
    """
    sampled = vertex_set(x)
    sub, labels = induced(h, sampled)
    masks = edge_masks(sub)
    dead_vertices = 0

    def alive(i: int) -> bool:
        return not masks[i] & dead_vertices

    overlaps = 0
    for i, j in iter_overlapping_pairs(sub, alive):
        if alive(i) and alive(j):
            dead_vertices |= 1 << min(set(sub.edges[i]) & set(sub.edges[j]))
            overlaps += 1
    triangles = 0
    for t in iter_triangles(sub, alive):
        if alive(t.e) and alive(t.f) and alive(t.g):
            e, f, g = (set(sub.edges[i]) for i in t)
            support = (e & f) | (f & g) | (g & e)
            dead_vertices |= 1 << min(support)
            triangles += 1
    deleted = tuple(labels[v] for v in range(sub.n) if dead_vertices >> v & 1)
    gone = set(deleted)
    kept = tuple(v for v in sampled if v not in gone)
    return CleanupReport(sampled, deleted, kept, triangles, overlaps)


# -- weight statistics -----------------------------------------------------


def _completion_counts(h: Hypergraph, z: set[int]) -> dict[int, int]:
    """For each vertex outside ``z``, the number of edges it would complete inside ``z``."""
    counts: dict[int, int] = {}
    for e in h.edges:
        missing = [v for v in e if v not in z]
        if len(missing) == 1:
            counts[missing[0]] = counts.get(missing[0], 0) + 1
    return counts


def _require_independent(h: Hypergraph, z: set[int]) -> None:
    if not is_independent(h, z):
        raise ValueError("Z is not independent")


def omega(h: Hypergraph, z, v: int, b: float) -> float:
    """``min(b, #{r-sets e in Z : e + v is an edge})``."""
    zs = set(z)
    if v in zs:
        raise ValueError(f"vertex {v} lies in Z")
    if not 0 <= v < h.n:
        raise ValueError(f"vertex {v} out of range")
    _require_independent(h, zs)
    count = sum(1 for e in h.edges if v in e and all(w in zs for w in e if w != v))
    return min(b, count)


def h_statistic(h: Hypergraph, z, b: float) -> float:
    zs = set(z)
    _require_independent(h, zs)
    return math.fsum(min(b, c) for c in _completion_counts(h, zs).values())


@dataclass(frozen=True)
class WeightReport:
    z_size: int
    h_value: float
    w_value: float
    omegas: dict

    def to_dict(self) -> dict:
        return {
            "z_size": self.z_size,
            "h_value": self.h_value,
            "w_value": self.w_value,
            "omegas": {str(k): v for k, v in self.omegas.items()},
        }


def weight_statistic(h: Hypergraph, z, b: float) -> WeightReport:
    """``W = e^b |Z| + h(Z, b)`` with the per-vertex terms of ``h``."""
    zs = set(z)
    _require_independent(h, zs)
    counts = _completion_counts(h, zs)
    omegas = {v: min(b, counts.get(v, 0)) for v in range(h.n) if v not in zs}
    h_value = math.fsum(omegas.values())
    return WeightReport(len(zs), h_value, math.exp(b) * len(zs) + h_value, omegas)


def closed_conditional_weight(r: int, k: int, b: float) -> float:
    """Conditional expectation of a vertex weight given ``k`` full r-sets in its link.

    ``e^b q^k/(1+q^k) + sum_j C(k,j)(2^r-1)^(k-j) min(j,b) / (2^(rk)+(2^r-1)^k)``
    with ``q = 1 - 2^-r``. The second term equals
    ``E[min(Bin(k, 2^-r), b)] / (1 + q^k)``.
    """
    if r < 2 or k < 0 or b <= 0:
        raise ValueError(f"need r >= 2, k >= 0, b > 0; got r={r}, k={k}, b={b}")
    log_q = math.log1p(-(2.0**-r))
    qk = math.exp(k * log_q)
    first = math.exp(min(b + k * log_q - math.log1p(qk), 700.0))
    second = truncated_binomial_mean(k, 2.0**-r, b) / (1.0 + qk)
    return first + second


def lemma4_rhs(m: int, r: int, b: float) -> float:
    """``b m / (-2^r log(1 - 2^-r))``."""
    return b * m / (-(2.0**r) * math.log1p(-(2.0**-r)))


# -- witness search --------------------------------------------------------


def greedy_alpha(h: Hypergraph, seed: int = 0, restarts: int = 1) -> AlphaCertificate:
    """Best of ``restarts`` randomized greedy passes; always a valid independent set."""
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    rng = stream(seed, "greedy")
    masks = edge_masks(h)
    inc = [[masks[i] for i in edges] for edges in incidence(h)]
    best: VertexSet = ()
    for _ in range(restarts):
        cur = 0
        for v in rng.permutation(h.n).tolist():
            with_v = cur | (1 << v)
            if all(e & ~with_v for e in inc[v]):
                cur = with_v
        found = tuple(v for v in range(h.n) if cur >> v & 1)
        if len(found) > len(best):
            best = found
    return AlphaCertificate(len(best), best, "greedy-lower-bound")


# -- expectations over a uniform independent set ----------------------------


def _h_of_mask(z: int, masks: list[int], b: float) -> float:
    counts: dict[int, int] = {}
    for e in masks:
        rest = e & ~z
        if rest & (rest - 1) == 0:
            v = rest.bit_length() - 1
            counts[v] = counts.get(v, 0) + 1
    return math.fsum(min(b, c) for c in counts.values())


def exact_expectations(h: Hypergraph, b: float, budget: EnumerationBudget) -> tuple[float, float]:
    """``(E h(Z,b), E|Z|)`` for ``Z`` uniform over all independent sets, by enumeration."""
    masks = edge_masks(h)
    hs, zs = [], []
    for z in iter_independent_masks(h, budget):
        hs.append(_h_of_mask(z, masks, b))
        zs.append(bin(z).count("1"))
    return math.fsum(hs) / len(hs), math.fsum(zs) / len(zs)


def mc_expectations(h: Hypergraph, b: float, seed: int, samples: int = 2000):
    """Heat-bath chain on independent sets (stationary law: uniform).

    Returns means of ``h(Z,b)`` and ``|Z|`` and the standard error of
    ``e^b |Z| + h(Z,b)``, from samples thinned by ``n`` steps after a
    ``20 n`` step burn-in.
    """
    rng = stream(seed, "lemma4-mc")
    masks = edge_masks(h)
    inc = [[masks[i] for i in edges] for edges in incidence(h)]
    n = max(h.n, 1)
    steps = 20 * n + samples * n
    picks = rng.integers(n, size=steps).tolist()
    coins = (rng.random(steps) < 0.5).tolist()
    eb = math.exp(b)
    z = 0
    hs, sizes, ws = [], [], []
    for step in range(steps):
        if h.n:
            v = picks[step]
            z &= ~(1 << v)
            with_v = z | (1 << v)
            if coins[step] and all(e & ~with_v for e in inc[v]):
                z = with_v
        if step >= 20 * n and (step - 20 * n) % n == n - 1:
            hv = _h_of_mask(z, masks, b)
            sz = bin(z).count("1")
            hs.append(hv)
            sizes.append(sz)
            ws.append(eb * sz + hv)
    stderr = float(np.std(ws, ddof=1) / math.sqrt(len(ws))) if len(ws) > 1 else 0.0
    return math.fsum(hs) / len(hs), math.fsum(sizes) / len(sizes), stderr


# -- pipeline --------------------------------------------------------------


@dataclass(frozen=True)
class PipelineResult:
    params: PipelineParams
    cleanup: CleanupReport
    witness: AlphaCertificate
    lemma4: dict
    conditions: ConditionReport
    linear: bool
    triangle_free: bool

    def to_report(self) -> dict:
        return {
            "version": "report_v1",
            "params": self.params.to_dict(),
            "cleanup": self.cleanup.to_dict(),
            "witness": {"size": self.witness.alpha, "vertices": list(self.witness.witness)},
            "lemma4": self.lemma4,
            "conditions": self.conditions.to_dict(),
        }


def run_pipeline(
    h: Hypergraph,
    params: PipelineParams,
    restarts: int = 20,
    exact_limit: int = EXACT_LIMIT,
    budget: EnumerationBudget = EnumerationBudget(max_vertices=EXACT_LIMIT, max_sets=2**20),
    mc_samples: int = 2000,
) -> PipelineResult:
    """Sample, clean up, find a witness in ``H[Y]`` and compare both sides of the weight inequality."""
    if h.uniformity != params.r + 1:
        raise ParameterError(f"hypergraph uniformity {h.uniformity} != r+1 = {params.r + 1}")
    x = random_subset(h, params.p, params.seed)
    report = cleanup(h, x)
    sub, labels = induced(h, report.kept)
    local = greedy_alpha(sub, params.seed, restarts)
    witness = AlphaCertificate(local.alpha, tuple(labels[v] for v in local.witness), local.method)

    b = params.b
    lemma4: dict = {"rhs": lemma4_rhs(sub.n, params.r, b), "m": sub.n}
    exact = None
    if sub.n <= exact_limit:
        try:
            exact = exact_expectations(sub, b, budget)
        except BudgetExceeded:
            exact = None
    if exact is not None:
        eh, ez = exact
        lemma4.update(method="exact", stderr=None)
    else:
        eh, ez, se = mc_expectations(sub, b, params.seed, mc_samples)
        lemma4.update(method="monte-carlo", stderr=se)
    lemma4.update(expected_h=eh, expected_z=ez, lhs=eh + math.exp(b) * ez)
    lemma4["margin"] = lemma4["lhs"] / lemma4["rhs"] if lemma4["rhs"] > 0 else None
    return PipelineResult(
        params=params,
        cleanup=report,
        witness=witness,
        lemma4=lemma4,
        conditions=check_conditions(params),
        linear=is_linear(sub),
        triangle_free=not find_triangles(sub),
    )


def params_for(h: Hypergraph, seed: int = 0, p: float | None = None, b: float | None = None) -> PipelineParams:
    """Parameters for a concrete instance: degree read off ``h``, overrides applied."""
    r = h.uniformity - 1
    d = max(1, max_r_degree(h))
    if d < h.n:
        base = choose_parameters(h.n, d, r)
    else:
        base = PipelineParams(n=h.n, d=d, r=r, p=1.0, b=1.0, flags=("degenerate-degree",))
    return replace(base, seed=seed, p=base.p if p is None else p, b=base.b if b is None else b)
