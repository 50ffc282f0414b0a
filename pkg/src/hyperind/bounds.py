"""Closed-form constants and bound calculators.

All evaluations that can overflow are done in log space.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from scipy.special import lambertw

# Binomial coefficients above this value are handled via log-gamma.
EXACT_BINOM_LIMIT = 10**15


def log_binom(n: int, k: int) -> float:
    """``log C(n, k)``; ``-inf`` when the coefficient is zero."""
    if k < 0 or k > n:
        return -math.inf
    approx = math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)
    if approx < math.log(EXACT_BINOM_LIMIT):
        return math.log(math.comb(n, k))
    return approx


# -- the lower-bound constant c_r -----------------------------------------


def _log_c(r: int) -> float:
    # r = 1 is allowed here: the Ramsey calculator needs the constant one index down.
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    denom = -r * (3 * r - 1) * 2.0**r * math.log1p(-(2.0**-r))
    return (math.lgamma(r + 1) - math.log(denom)) / r


def c_r_value(r: int) -> float:
    return math.exp(_log_c(r))


@dataclass(frozen=True)
class ConstantReport:
    r: int
    c_r: float
    c_r_asymptote_ratio: float
    upper_constant: float
    formula_inputs: dict = field(default_factory=dict)
    formula: str = "c_r = (r! / (-r(3r-1) 2^r log(1-2^-r)))^(1/r)"

    def to_dict(self) -> dict:
        return asdict(self)


def c_r_constant(r: int) -> ConstantReport:
    """The lower-bound constant ``c_r`` with its asymptotic ratio ``c_r e / r``.

    ``upper_constant`` is ``(r+1)!^(1/r)``, the constant of the random
    construction, which also tends to ``r/e``.
    """
    if r < 2:
        raise ValueError(f"r must be >= 2, got {r}")
    c = c_r_value(r)
    inputs = {
        "log_r_factorial": math.lgamma(r + 1),
        "r_times_3r_minus_1": r * (3 * r - 1),
        "two_pow_r": 2.0**r,
        "log_one_minus_two_pow_minus_r": math.log1p(-(2.0**-r)),
    }
    return ConstantReport(
        r=r,
        c_r=c,
        c_r_asymptote_ratio=c * math.e / r,
        upper_constant=math.exp(math.lgamma(r + 2) / r),
        formula_inputs=inputs,
    )


def c_r_round_trip_residual(r: int) -> float:
    """Relative residual of ``c_r^r * (-r(3r-1) 2^r log(1-2^-r)) = r!``."""
    c = c_r_value(r)
    lhs = c**r * (-r * (3 * r - 1) * 2.0**r * math.log1p(-(2.0**-r)))
    rhs = float(math.factorial(r))
    return abs(lhs - rhs) / rhs


def main_lower_bound(n: float, d: float, r: int) -> float:
    """``c_r ((n/d) log(n/d))^(1/r)``."""
    if d <= 0 or d >= n:
        raise ValueError(f"need 0 < d < n, got d={d}, n={n}")
    ratio = n / d
    return c_r_value(r) * math.exp((math.log(ratio) + math.log(math.log(ratio))) / r)


# -- concentration -----------------------------------------------------------


def chernoff_general(variance: float, b: float, lam: float) -> float:
    """``exp(-lam^2 / (2V + b lam))``, upper tail for sums of independent terms bounded above by mean + b."""
    if variance < 0 or b <= 0 or lam < 0:
        raise ValueError(f"need V >= 0, b > 0, lambda >= 0; got {variance}, {b}, {lam}")
    if lam == 0:
        return 1.0
    return math.exp(-(lam * lam) / (2.0 * variance + b * lam))


def chernoff_binomial(mu: float, epsilon: float) -> float:
    """Two-sided binomial tail ``P(|U - mu| >= eps mu) <= 2 exp(-eps^2 mu / 2)``, capped at 1."""
    if mu < 0 or epsilon < 0:
        raise ValueError(f"need mu >= 0, epsilon >= 0; got {mu}, {epsilon}")
    return min(1.0, 2.0 * math.exp(-epsilon * epsilon * mu / 2.0))


# -- the truncated binomial mean --------------------------------------------


def lemma3_sum(k: int, q, b, exact: bool = False):
    """``S = E[min(Bin(k, q), b)]`` together with its limit ``min(qk, b)``.

    With ``exact=True`` (or Fraction inputs) the sum is evaluated in
    rational arithmetic and both values are Fractions.
    """
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if not 0 < q <= 1 or b <= 0:
        raise ValueError(f"need q in (0, 1], b > 0; got q={q}, b={b}")
    if exact or isinstance(q, Fraction):
        q, b = Fraction(q), Fraction(b)
        s = sum(
            (math.comb(k, j) * q**j * (1 - q) ** (k - j) * min(j, b) for j in range(k + 1)),
            Fraction(0),
        )
        return s, min(q * k, b)
    return truncated_binomial_mean(k, float(q), float(b)), min(q * k, b)


def truncated_binomial_mean(k: int, q: float, cap: float) -> float:
    if q == 1.0:
        return float(min(k, cap))
    lq, l1q = math.log(q), math.log1p(-q)
    terms = [math.exp(log_binom(k, j) + j * lq + (k - j) * l1q) * min(j, cap) for j in range(1, k + 1)]
    return math.fsum(terms)


# -- random-hypergraph first moment -----------------------------------------


def log_expected_independent(n: int, r: int, p: float, x: int) -> float:
    """``log( C(n, x) (1-p)^C(x, r+1) )``: expected number of independent x-sets."""
    lc = log_binom(n, x)
    if lc == -math.inf:
        return -math.inf
    edges_inside = math.comb(x, r + 1)
    if edges_inside == 0:
        return lc
    if p >= 1.0:
        return -math.inf
    return lc + edges_inside * math.log1p(-p)


@dataclass(frozen=True)
class FirstMomentReport:
    n: int
    r: int
    d: float
    epsilon: float
    p: float
    x: int
    logE: float
    exponent_drop: float  # (d/n)(x-r)^(r+1)/(r+1)!
    x_log_n: float
    flags: tuple = ()
    formula: str = "E = C(n,x) (1-p)^C(x,r+1), p = d/(n-r), x = (1+eps)(r+1)!^(1/r) ((n/d) log n)^(1/r)"

    def to_dict(self) -> dict:
        out = asdict(self)
        out["flags"] = list(self.flags)
        return out


def first_moment(n: int, r: int, d: float, epsilon: float) -> FirstMomentReport:
    if n <= r or d < 1 or epsilon <= 0:
        raise ValueError(f"need n > r, d >= 1, epsilon > 0; got n={n}, r={r}, d={d}, epsilon={epsilon}")
    p = d / (n - r)
    flags = []
    if p > 1:
        flags.append("p-above-one")
        p = 1.0
    log_x = math.log1p(epsilon) + math.lgamma(r + 2) / r + (math.log(n / d) + math.log(math.log(n))) / r
    x = math.ceil(math.exp(log_x))
    if x > n:
        flags.append("x-exceeds-n")
    log_drop = math.log(d / n) + (r + 1) * math.log(max(x - r, 1)) - math.lgamma(r + 2)
    return FirstMomentReport(
        n=n,
        r=r,
        d=d,
        epsilon=epsilon,
        p=p,
        x=x,
        logE=log_expected_independent(n, r, p, x),
        exponent_drop=math.exp(log_drop) if x > r else 0.0,
        x_log_n=x * math.log(n),
        flags=tuple(flags),
    )


# -- Ramsey numbers for independent neighbourhoods ---------------------------

SMALL_T = 10


@dataclass(frozen=True)
class RamseyReport:
    r: int
    t: int
    c: float
    n: float
    scaling: float  # t^r / log t
    ratio: float  # n / scaling
    flags: tuple = ()
    formula: str = "smallest n with c (n log n / t)^(1/(r-1)) >= t, c = c_(r-1)"

    def to_dict(self) -> dict:
        out = asdict(self)
        out["flags"] = list(self.flags)
        return out


def ramsey_upper(r: int, t: int, c: float | None = None) -> RamseyReport:
    """Explicit upper bound on R(T_r, K_t^(r)) from the two-case argument.

    If some (r-1)-set has degree >= t its neighbourhood is independent of
    size >= t. Otherwise the lower bound for r-graphs with (r-1)-degree below
    ``t`` applies, which reaches ``t`` once ``n log n >= t^r / c^(r-1)``.
    """
    if r < 2 or t < 3:
        raise ValueError(f"need r >= 2, t >= 3; got r={r}, t={t}")
    if c is None:
        c = c_r_value(r - 1)
    log_target = r * math.log(t) - (r - 1) * math.log(c)
    # n log n = T  <=>  log n = W(T)
    if log_target < 700:
        log_n = float(lambertw(math.exp(log_target)).real)
    else:
        log_n = log_target - math.log(log_target)
        for _ in range(50):
            log_n = log_target - math.log(log_n)
    n = math.exp(log_n)
    if n < 2**52:
        n_int = max(2, math.ceil(n))
        while n_int > 2 and (n_int - 1) * math.log(n_int - 1) >= math.exp(log_target):
            n_int -= 1
        while n_int * math.log(n_int) < math.exp(log_target):
            n_int += 1
        n = float(n_int)
    flags = []
    if t < SMALL_T:
        flags.append("small-t")
    if t >= n / math.log(n) ** (3 * (r - 1) ** 2):
        flags.append("degree-hypothesis-unmet")
    scaling = t**r / math.log(t)
    return RamseyReport(r=r, t=t, c=c, n=n, scaling=scaling, ratio=n / scaling, flags=tuple(flags))
