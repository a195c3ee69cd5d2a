"""Closed-form bounds on m(n, r), chain event probabilities and the local lemma search.

Every bound is returned as a natural logarithm: r^(n-1) leaves float range
long before n gets interesting.
"""

import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, get_args

import numpy as np

from hyperchroma.config import BoundsInput
from hyperchroma.errors import InvalidParameterError

BoundName = Literal["eq1", "eq2", "eq3", "eq4", "eq5", "eq6"]
BOUND_NAMES: tuple[BoundName, ...] = get_args(BoundName)

SERIES_TOLERANCE = 1e-15
SERIES_CHUNK = 1 << 16
MAX_LOG_FLOAT = math.log(np.finfo(float).max)

Rate = Fraction | float


def q_prime(r: int) -> float:
    """(r!)^(1/r) / (2^(1/r) (1 - 1/r)^((r-1)/r) r^((r-2)/r)), evaluated through logs."""
    if r < 2:
        raise InvalidParameterError(f"q' needs r >= 2, got {r}")
    log_value = (
        math.lgamma(r + 1) - math.log(2) - (r - 1) * math.log1p(-1 / r) - (r - 2) * math.log(r)
    ) / r
    return math.exp(log_value)


def default_q(r: int) -> float:
    """Coefficient used for eq1/eq6 when none is given: half of q'(r)."""
    return q_prime(r) / 2


def bound_applies(name: BoundName, r: int) -> bool:
    """eq1 holds only for two colors and eq4 only for three or more; the rest hold for all r."""
    if name == "eq1":
        return r == 2
    if name == "eq4":
        return r >= 3
    return True


def _require_q(name: BoundName, q: float | None, r: int) -> float:
    if q is None:
        raise InvalidParameterError(f"{name} needs a coefficient q")
    limit = q_prime(r)
    if not q < limit:
        raise InvalidParameterError(f"{name} needs q < q'({r}) = {limit:.6f}, got {q}")
    return q


def evaluate_bound(which: BoundName, bounds: BoundsInput) -> float:
    """Natural log of the named lower bound on m(n, r).

    Raises:
        InvalidParameterError: If the bound does not apply to r, or q is missing
            or not below q'(r) for eq1/eq6
    """
    n, r = bounds.n, bounds.r
    if not bound_applies(which, r):
        raise InvalidParameterError(f"{which} does not apply to r={r}")

    log_n = math.log(n)
    log_ratio = log_n - math.log(log_n)
    log_r = math.log(r)

    match which:
        case "eq1":
            q = _require_q(which, bounds.q, r)
            return math.log(q) + 0.5 * log_ratio + (n - 1) * math.log(2)
        case "eq2":
            return math.log(math.sqrt(3) - 1) + 0.5 * log_ratio + (n - 1) * log_r
        case "eq3":
            a = r.bit_length() - 1
            return -4 * r * r + a / (a + 1) * log_ratio + n * log_r
        case "eq4":
            return math.log(0.25) + 0.5 * log_n + (n - 1) * log_r
        case "eq5":
            return (
                math.log(math.pi) / r
                - 1 / (12 * (n - 1))
                - 1
                - 0.5 * math.log(2 * math.pi)
                + (0.5 - 1 / (2 * r)) * math.log(n - 1)
                + (n + 2 / r) * log_r
            )
        case "eq6":
            q = _require_q(which, bounds.q, r)
            return math.log(q) + (r - 1) / r * log_ratio + (n - 1) * log_r
    raise InvalidParameterError(f"unknown bound {which!r}")


@dataclass(frozen=True)
class BoundRow:
    """One line of the bound table; dominates marks the largest applicable bound."""

    name: str
    log_value: float
    dominates: bool = False

    @property
    def value(self) -> float | None:
        """The bound itself, or None when it does not fit in a float."""
        return math.exp(self.log_value) if self.log_value < MAX_LOG_FLOAT else None


def bound_table(bounds: BoundsInput) -> list[BoundRow]:
    """Every bound applicable to r, with the largest one marked.

    eq1 and eq6 use bounds.q, or default_q(r) when it is not given.
    """
    if bounds.q is None:
        bounds = bounds.model_copy(update={"q": default_q(bounds.r)})
    values = [
        (name, evaluate_bound(name, bounds))
        for name in BOUND_NAMES
        if bound_applies(name, bounds.r)
    ]
    best = max(log_value for _, log_value in values)
    return [BoundRow(name, log_value, log_value == best) for name, log_value in values]


def _validate_sizes(a: Sequence[int]) -> None:
    if len(a) < 2:
        raise InvalidParameterError(f"a chain profile needs r >= 2 sizes, got {len(a)}")
    if any(size < 2 for size in a):
        raise InvalidParameterError(f"every truncated size must be >= 2, got {tuple(a)}")


def chain_ordered_prob_m(a: Sequence[int], exact: bool = True) -> Rate:
    """M(a) = 2 (a_1-1)! (a_r-1)! prod_{1<i<r} (a_i-2)! / (sum a - r + 1)!.

    Exact as a Fraction by default, otherwise a float through log-gamma.
    """
    _validate_sizes(a)
    r = len(a)
    total = sum(a) - r + 1
    if exact:
        numerator = 2 * math.factorial(a[0] - 1) * math.factorial(a[-1] - 1)
        numerator *= math.prod(math.factorial(size - 2) for size in a[1:-1])
        return Fraction(numerator, math.factorial(total))
    log_value = (
        math.log(2)
        + math.lgamma(a[0])
        + math.lgamma(a[-1])
        + sum(math.lgamma(size - 1) for size in a[1:-1])
        - math.lgamma(total + 1)
    )
    return math.exp(log_value)


@dataclass(frozen=True)
class ChainProfile:
    """Truncated sizes a_1..a_r of a chain in an n-uniform hypergraph at colorless rate p.

    A Fraction p selects exact arithmetic downstream.
    """

    a: tuple[int, ...]
    n: int
    p: Rate

    def __post_init__(self) -> None:
        _validate_sizes(self.a)
        if any(size > self.n - 1 for size in self.a):
            raise InvalidParameterError(
                f"truncated sizes must be <= n-1 = {self.n - 1}, got {self.a}"
            )
        if not 0 < self.p < 1:
            raise InvalidParameterError(f"p must lie in (0, 1), got {self.p}")

    @property
    def r(self) -> int:
        return len(self.a)


def _log_comb(total: int, chosen: int) -> float:
    return math.lgamma(total + 1) - math.lgamma(chosen + 1) - math.lgamma(total - chosen + 1)


def chain_strong_prob_n(profile: ChainProfile) -> Rate:
    """Probability that a fixed chain with truncated sizes a is strong after phase 1.

    The r-1 shared vertices are colorless; an end edge picks its other a-1
    colorless vertices from n-1, a middle edge its other a-2 from n-2, and the
    remaining n-a vertices of edge i all take color i.
    """
    a, n, p, r = profile.a, profile.n, profile.p, profile.r
    ends = (a[0], a[-1])
    middles = a[1:-1]

    if isinstance(p, Fraction):
        q = (1 - p) / r
        value = p ** (r - 1)
        for size in ends:
            value *= p ** (size - 1) * q ** (n - size) * math.comb(n - 1, size - 1)
        for size in middles:
            value *= p ** (size - 2) * q ** (n - size) * math.comb(n - 2, size - 2)
        return value

    log_p = math.log(p)
    log_q = math.log((1 - p) / r)
    log_value = (r - 1) * log_p
    for size in ends:
        log_value += (size - 1) * log_p + (n - size) * log_q + _log_comb(n - 1, size - 1)
    for size in middles:
        log_value += (size - 2) * log_p + (n - size) * log_q + _log_comb(n - 2, size - 2)
    return math.exp(log_value)


def _require_rates(n: int, r: int, p: float) -> None:
    if n < 2:
        raise InvalidParameterError(f"edge size n must be >= 2, got {n}")
    if r < 2:
        raise InvalidParameterError(f"number of colors must be >= 2, got {r}")
    if not 0 < p < 1:
        raise InvalidParameterError(f"p must lie in (0, 1), got {p}")


def _log_phase1_terms(n: int, r: int, p: float, log_m: float) -> tuple[float, float, float]:
    """Logs of m r q^n, m r n p q^(n-1) and m p^n with q = (1-p)/r."""
    log_p = math.log(p)
    log_q = math.log((1 - p) / r)
    log_r = math.log(r)
    return (
        log_m + log_r + n * log_q,
        log_m + log_r + math.log(n) + log_p + (n - 1) * log_q,
        log_m + n * log_p,
    )


class _ChainSeries:
    """Terms of sum_{t>=1} t^(r-1) p^(t+r-1) n^t q^(nr-t-2r+2) / (t+r-1)!.

    The term ratio ((t+1)/t)^(r-1) x / (t+r), x = p n / q, decreases in t, so
    the terms rise up to a single peak near x and fall after it.
    """

    def __init__(self, n: int, r: int, p: float) -> None:
        self.n = n
        self.r = r
        self.log_p = math.log(p)
        self.log_q = math.log((1 - p) / r)
        self.log_n = math.log(n)
        self.log_x = self.log_p + self.log_n - self.log_q

    def log_term(self, t: int) -> float:
        n, r = self.n, self.r
        return (
            (r - 1) * math.log(t)
            + (t + r - 1) * self.log_p
            + t * self.log_n
            + (n * r - t - 2 * r + 2) * self.log_q
            - math.lgamma(t + r)
        )

    def log_ratio(self, t: int) -> float:
        """log of term(t + 1) / term(t)."""
        return (self.r - 1) * math.log1p(1 / t) + self.log_x - math.log(t + self.r)

    def log_window(self, lo: int, hi: int) -> float:
        """Log of the sum of terms lo..hi, in chunks of SERIES_CHUNK."""
        n, r = self.n, self.r
        total = -math.inf
        for start in range(lo, hi + 1, SERIES_CHUNK):
            t = np.arange(start, min(start + SERIES_CHUNK, hi + 1), dtype=float)
            log_factorial = math.lgamma(start + r) + np.concatenate(
                ([0.0], np.cumsum(np.log(t[1:] + r - 1)))
            )
            log_terms = (
                (r - 1) * np.log(t)
                + (t + r - 1) * self.log_p
                + t * self.log_n
                + (n * r - t - 2 * r + 2) * self.log_q
                - log_factorial
            )
            total = float(np.logaddexp(total, np.logaddexp.reduce(log_terms)))
        return total

    def log_left_tail(self, lo: int) -> float:
        """Bound on the terms below lo; inf when lo is not left of the peak."""
        if lo <= 1:
            return -math.inf
        log_ratio = self.log_ratio(lo - 1)
        if log_ratio <= 0:
            return math.inf
        # term(lo - k) <= term(lo) / ratio(lo - 1)^k for k = 1..lo-1
        log_factor = min(math.log(lo - 1), -math.log(math.expm1(log_ratio)))
        return self.log_term(lo) + log_factor

    def log_right_tail(self, hi: int) -> float:
        """Bound on the terms above hi; inf when hi is not right of the peak."""
        log_ratio = self.log_ratio(hi)
        if log_ratio >= 0:
            return math.inf
        return self.log_term(hi) + log_ratio - math.log1p(-math.exp(log_ratio))


def _log_chain_series(n: int, r: int, p: float) -> float:
    """Log of the chain series, summed over a window around its peak.

    The window starts at x +- (10 sqrt(x) + 100 + r) and doubles until both tail
    bounds drop below SERIES_TOLERANCE of the window sum. Widening always ends:
    the left edge reaches t = 1 and the right ratio falls to zero.
    """
    series = _ChainSeries(n, r, p)
    x = math.exp(series.log_x)
    half_width = 10 * math.sqrt(x) + 100 + r
    while True:
        lo = max(1, math.floor(x - half_width))
        hi = math.ceil(x + half_width)
        total = series.log_window(lo, hi)
        log_tail = max(series.log_left_tail(lo), series.log_right_tail(hi))
        if log_tail < total + math.log(SERIES_TOLERANCE):
            return total
        half_width *= 2


@dataclass(frozen=True)
class FailureBound:
    """Union-bound terms for one attempt of the two-phase colorer, as natural logs."""

    log_monochromatic: float
    log_almost_monochromatic: float
    log_fully_colorless: float
    log_chains: float

    @property
    def log_phase1(self) -> float:
        return float(
            np.logaddexp.reduce(
                [self.log_monochromatic, self.log_almost_monochromatic, self.log_fully_colorless]
            )
        )

    @property
    def log_total(self) -> float:
        return float(np.logaddexp(self.log_phase1, self.log_chains))

    @property
    def total(self) -> float:
        return math.exp(self.log_total) if self.log_total < MAX_LOG_FLOAT else math.inf


def failure_probability_terms(n: int, r: int, m: int, p: float) -> FailureBound:
    """The three phase-1 terms and the chain series for m edges.

    Raises:
        InvalidParameterError: If m < 1, n < 2, r < 2 or p is outside (0, 1)
    """
    if m < 1:
        raise InvalidParameterError(f"edge count must be >= 1, got {m}")
    _require_rates(n, r, p)
    log_m = math.log(m)
    mono, almost, colorless = _log_phase1_terms(n, r, p, log_m)
    log_chains = math.log(2) + r * log_m - math.lgamma(r + 1) + _log_chain_series(n, r, p)
    return FailureBound(mono, almost, colorless, log_chains)


def failure_probability_upper(n: int, r: int, m: int, p: float) -> float:
    """Upper bound on the probability that one attempt fails (may exceed 1)."""
    return failure_probability_terms(n, r, m, p).total


def max_chain_event_probability(n: int, r: int, p: float) -> tuple[float, tuple[int, ...]]:
    """log max over profiles a in {2..n-1}^r of M(a) N(a), and a maximizing profile.

    log M + log N is a sum of per-position scores minus log (sum a - r + 1)!, so
    the maximum is a max-plus convolution over the running sum of sizes.
    """
    _require_rates(n, r, p)
    if n < 3:
        raise InvalidParameterError(f"chains need edges of size >= 3 before truncation, got n={n}")

    log_p = math.log(p)
    log_q = math.log((1 - p) / r)
    sizes = np.arange(2, n)

    def end_gain(size: int) -> float:
        log_n = (size - 1) * log_p + (n - size) * log_q + _log_comb(n - 1, size - 1)
        return math.lgamma(size) + log_n

    def middle_gain(size: int) -> float:
        log_n = (size - 2) * log_p + (n - size) * log_q + _log_comb(n - 2, size - 2)
        return math.lgamma(size - 1) + log_n

    end_score = np.array([end_gain(int(size)) for size in sizes])
    middle_score = np.array([middle_gain(int(size)) for size in sizes])

    width = r * (n - 1) + 1
    best = np.full(width, -np.inf)
    best[sizes] = end_score
    choices: list[np.ndarray] = []
    for position in range(2, r + 1):
        score = end_score if position == r else middle_score
        reached = np.full(width, -np.inf)
        chosen = np.zeros(width, dtype=int)
        for size, gain in zip(sizes, score, strict=True):
            shifted = np.full(width, -np.inf)
            shifted[size:] = best[:-size] + gain
            better = shifted > reached
            reached[better] = shifted[better]
            chosen[better] = size
        best = reached
        choices.append(chosen)

    totals = np.arange(width)
    log_sum_factorial = np.array(
        [math.lgamma(s - r + 2) if s >= 2 * r else np.inf for s in totals]
    )
    objective = best - log_sum_factorial + math.log(2) + (r - 1) * log_p
    total = int(np.argmax(objective))

    profile: list[int] = []
    for chosen in reversed(choices):
        size = int(chosen[total])
        profile.append(size)
        total -= size
    profile.append(total)
    return float(objective.max()), tuple(reversed(profile))


@dataclass(frozen=True)
class LLLWitness:
    """A pair (x, y) meeting both local lemma inequalities at degree D."""

    x: float
    y: float
    log_p1: float
    log_p2: float
    profile: tuple[int, ...]


def _log_power_of_complement(log_count: np.ndarray | float, log_y: np.ndarray) -> np.ndarray:
    """count * log(1 - y) for y = exp(log_y) without forming count or y directly."""
    small = log_y < -30
    y = np.exp(np.where(small, -30.0, log_y))
    log_neg_log1m = np.where(small, log_y, np.log(-np.log1p(-y)))
    return -np.exp(log_count + log_neg_log1m)


def _lll_grid_search(
    log_p1: float, log_p2: float, r: int, degree: int, grid_points: int
) -> tuple[float, float] | None:
    log_d = math.log(degree)
    log_x = np.log(np.logspace(-4, 1.5, grid_points)) - log_d
    log_y = np.log(np.logspace(-8, math.log10(32), grid_points)) - math.log(r) - r * log_d
    log_x = log_x[log_x < 0]
    log_y = log_y[log_y < 0]
    if not log_x.size or not log_y.size:
        return None

    x_factor = np.log1p(-np.exp(log_x))[:, None]
    rhs1 = (
        log_x[:, None]
        + degree * x_factor
        + _log_power_of_complement(r * log_d, log_y)[None, :]
    )
    rhs2 = (
        log_y[None, :]
        + r * degree * x_factor
        + _log_power_of_complement(math.log(r) + r * log_d, log_y)[None, :]
    )
    hits = np.flatnonzero(((log_p1 <= rhs1) & (log_p2 <= rhs2)).ravel())
    if not hits.size:
        return None
    row, column = divmod(int(hits[0]), log_y.size)
    return math.exp(log_x[row]), math.exp(log_y[column])


def _lll_event_logs(n: int, r: int, p: float) -> tuple[float, float, tuple[int, ...]]:
    log_p1 = float(np.logaddexp.reduce(_log_phase1_terms(n, r, p, 0.0)))
    log_p2, profile = max_chain_event_probability(n, r, p)
    return log_p1, log_p2, profile


def lll_check(n: int, r: int, degree: int, p: float, grid_points: int = 64) -> LLLWitness | None:
    """Search x = a/D and y = b/(r D^r) on log grids for
    P1 <= x (1-x)^D (1-y)^(D^r) and P2 <= y (1-x)^(rD) (1-y)^(r D^r).

    P1 is the probability that one edge is bad after phase 1 and P2 the largest
    M(a) N(a). Returns the first hit in row-major (x, y) order.
    """
    if degree < 1:
        raise InvalidParameterError(f"maximum edge degree must be >= 1, got {degree}")
    log_p1, log_p2, profile = _lll_event_logs(n, r, p)
    found = _lll_grid_search(log_p1, log_p2, r, degree, grid_points)
    if found is None:
        return None
    return LLLWitness(found[0], found[1], log_p1, log_p2, profile)


def lll_max_degree(
    n: int, r: int, p: float, degree_limit: int = 2**62, grid_points: int = 64
) -> int:
    """Largest D <= degree_limit accepted by the local lemma search, 0 if D = 1 fails.

    Doubling then bisection; acceptance is downward closed in D.
    """
    log_p1, log_p2, _ = _lll_event_logs(n, r, p)

    def accepted(degree: int) -> bool:
        return _lll_grid_search(log_p1, log_p2, r, degree, grid_points) is not None

    if not accepted(1):
        return 0
    low = 1
    high = 2
    while high <= degree_limit and accepted(high):
        low, high = high, high * 2
    if high > degree_limit:
        if accepted(degree_limit):
            return degree_limit
        high = degree_limit
    while high - low > 1:
        middle = (low + high) // 2
        if accepted(middle):
            low = middle
        else:
            high = middle
    return low


def empirical_c(n: int, r: int, p: float, grid_points: int = 64) -> float:
    """lll_max_degree scaled by (n / ln n)^((r-1)/r) r^(n-1)."""
    degree = lll_max_degree(n, r, p, grid_points=grid_points)
    if degree == 0:
        return 0.0
    log_n = math.log(n)
    log_scale = (r - 1) / r * (log_n - math.log(log_n)) + (n - 1) * math.log(r)
    return math.exp(math.log(degree) - log_scale)
