"""Upper bounds on the (elementary) trapping redundancy.

Standard Lovász-Local-Lemma bounds are decided in exact rational arithmetic,
with Euler's number replaced by a rational bracket.  High-probability bounds
involve ``(1 - eps/C(n,a))**tau`` with ``tau`` around 1e37, so they are decided
on certified log2 intervals instead.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Literal

from mpmath import libmp
from mpmath.ctx_iv import MPIntervalContext

Variant = Literal["std", "hp"]

WORK_PREC = 256
MAX_PREC = 8192
E_BRACKET_BITS = 100  # bracket width below 2**-100 ~ 1e-30
ANOMALY_LOOKAHEAD = 8
MAX_M = 1_000_000


class PrecisionError(ArithmeticError):
    """A bound inequality could not be decided at the maximum working precision."""


# -- exact ingredients ------------------------------------------------------------


@lru_cache(maxsize=None)
def e_bracket(bits: int = E_BRACKET_BITS) -> tuple[Fraction, Fraction]:
    """Rationals lo < e < hi with hi - lo < 2**-bits, from the factorial series.

    With ``lo`` the sum of 1/j! for j < k, the remainder is below 2/k!.
    """
    lo = Fraction(0)
    fact = 1  # k!
    k = 0
    while True:
        lo += Fraction(1, fact)
        k += 1
        fact *= k
        if Fraction(2, fact) < Fraction(1, 2**bits):
            return lo, lo + Fraction(2, fact)


def tau(n: int, a: int) -> int:
    """Dependence count: a-subsets sharing a column with a fixed one, excluding itself."""
    if not 0 <= a <= n:
        raise ValueError("need 0 <= a <= n")
    return comb(n, a) - comb(n - a, a) - 1


def dependent_events(n: int, a: int) -> int:
    """tau + 1 = C(n, a) - C(n - a, a)."""
    return comb(n, a) - comb(n - a, a)


def tail_sum(m: int, b: int) -> int:
    """sum_{j<b} C(m, j)."""
    return sum(comb(m, j) for j in range(min(b, m + 1)))


def elementary_tail_sum(m: int, a: int, b: int) -> int:
    """sum_{j<b} C(m, j) (2a)^j (a^2 - a + 2)^(m - j)."""
    c = a * a - a + 2
    return sum(comb(m, j) * (2 * a) ** j * c ** (m - j) for j in range(min(b, m + 1)))


def event_numerator(m: int, a: int, b: int, elementary: bool) -> tuple[int, int]:
    """P{E_i} as (numerator, log2 of the power-of-two denominator)."""
    if elementary:
        return elementary_tail_sum(m, a, b), (a + 1) * m
    return tail_sum(m, b), m


def p_event(m: int, a: int, b: int, elementary: bool = False) -> Fraction:
    """Probability that a fixed a-column restriction of m dual codewords is bad.

    Bad means fewer than b odd rows; for the elementary event additionally
    every row has weight at most two.  Exact under the orthogonal-array
    property, i.e. for a below the dual code's strength.
    """
    if b > m:
        raise ValueError(f"b={b} exceeds m={m}")
    if b < 1 or a < 1:
        raise ValueError("need a >= 1 and b >= 1")
    num, shift = event_numerator(m, a, b, elementary)
    return Fraction(num, 1 << shift)


def trapping_redundancy_upper(m: int, n: int, k: int) -> int:
    """Rows of the full-rank matrix obtained from m sampled rows: m + n - k - 1."""
    return m + n - k - 1


# -- results ------------------------------------------------------------------------


@dataclass
class BoundQuery:
    n: int
    a: int
    b: int
    k: int | None = None
    variant: Variant = "std"
    elementary: bool = False
    epsilon: Fraction | None = None
    d: int | None = None

    def to_json(self) -> dict:
        out = asdict(self)
        out["epsilon"] = None if self.epsilon is None else str(self.epsilon)
        return out


@dataclass
class BoundResult:
    query: BoundQuery
    m: int
    m_hat: int | None
    exact: bool
    certificate: dict
    anomalies: list[int] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "query": self.query.to_json(),
            "m": self.m,
            "m_hat": self.m_hat,
            "exact": self.exact,
            "certificate": self.certificate,
            "anomalies": self.anomalies,
        }


def _check_query(n: int, a: int, b: int, d: int | None, enforce_a_range: bool) -> None:
    if b < 1:
        raise ValueError("b must be >= 1")
    if not 1 <= a <= n:
        raise ValueError(f"a={a} out of range 1..{n}")
    if enforce_a_range and d is not None and a > (d - 1) // 2:
        raise ValueError(f"a={a} exceeds floor((d-1)/2) = {(d - 1) // 2} for d={d}")


def _scan(decide, b: int) -> tuple[int, list[int]]:
    m = b
    while not decide(m):
        m += 1
        if m > MAX_M:
            raise ValueError("no m found below the search cap")
    anomalies = [m + i for i in range(1, ANOMALY_LOOKAHEAD + 1) if not decide(m + i)]
    return m, anomalies


# -- standard LLL ------------------------------------------------------------------------


def _std_decide(n: int, a: int, b: int, elementary: bool):
    dep = dependent_events(n, a)

    def core(m: int) -> tuple[int, int]:
        num, shift = event_numerator(m, a, b, elementary)
        return dep * num, shift

    def decide(m: int) -> bool:
        c, shift = core(m)
        den = 1 << shift
        bits = E_BRACKET_BITS
        while bits <= MAX_PREC:
            lo, hi = e_bracket(bits)
            if hi * c <= den:
                return True
            if lo * c > den:
                return False
            bits *= 2
        raise PrecisionError(f"cannot decide e*LHS <= 1 at m={m}")

    def lhs(m: int, upper: bool) -> Fraction:
        c, shift = core(m)
        lo, hi = e_bracket()
        return (hi if upper else lo) * Fraction(c, 1 << shift)

    return decide, lhs


def _min_m_std(n, a, b, elementary, k, d, enforce_a_range) -> BoundResult:
    _check_query(n, a, b, d, enforce_a_range)
    decide, lhs = _std_decide(n, a, b, elementary)
    m, anomalies = _scan(decide, b)
    cert = {"inequality": "e*(C(n,a)-C(n-a,a))*P{E} <= 1", "lhs_upper_at_m": _frac_str(lhs(m, True))}
    if m > b:
        cert["lhs_lower_at_m_minus_1"] = _frac_str(lhs(m - 1, False))
    query = BoundQuery(n, a, b, k, "std", elementary, None, d)
    m_hat = None if k is None else trapping_redundancy_upper(m, n, k)
    return BoundResult(query, m, m_hat, True, cert, anomalies)


def _frac_str(x: Fraction) -> dict:
    return {"rational": f"{x.numerator}/{x.denominator}", "approx": f"{float(x):.12g}"}


def min_m_std(n: int, a: int, b: int, k: int | None = None, d: int | None = None,
              enforce_a_range: bool = True) -> BoundResult:
    """Smallest m >= b with e*(C(n,a)-C(n-a,a)) * 2^-m * sum_{j<b} C(m,j) <= 1."""
    return _min_m_std(n, a, b, False, k, d, enforce_a_range)


def min_m_std_elementary(n: int, a: int, b: int, k: int | None = None, d: int | None = None,
                         enforce_a_range: bool = True) -> BoundResult:
    """As ``min_m_std`` with the elementary event probability."""
    return _min_m_std(n, a, b, True, k, d, enforce_a_range)


# -- high-probability LLL: certified log2 intervals --------------------------------------


@dataclass(frozen=True)
class LogInterval:
    """Enclosure [lower, upper] of a log2 value, endpoints as raw mpmath mpf tuples."""

    lower: tuple
    upper: tuple
    prec: int

    @classmethod
    def from_iv(cls, x, prec: int) -> "LogInterval":
        lo, hi = x._mpi_
        return cls(lo, hi, prec)

    def certainly_le(self, other: "LogInterval") -> bool:
        return libmp.mpf_le(self.upper, other.lower)

    def certainly_gt(self, other: "LogInterval") -> bool:
        return libmp.mpf_gt(self.lower, other.upper)

    def to_json(self, digits: int = 25) -> dict:
        return {
            "lower": libmp.to_str(self.lower, digits),
            "upper": libmp.to_str(self.upper, digits),
            "prec_bits": self.prec,
        }


def _iv_ctx(prec: int) -> MPIntervalContext:
    ctx = MPIntervalContext()
    ctx.prec = prec
    return ctx


def _iv_fraction(ctx, x: Fraction):
    return ctx.mpf(x.numerator) / ctx.mpf(x.denominator)


def log1m_bracket(x: Fraction, terms: int) -> tuple[Fraction, Fraction]:
    """Rational bracket of ln(1 - x), 0 < x <= 1/2, from the first ``terms`` series terms.

    Every term of -sum x^k/k is negative, so the partial sum is an upper bound
    and the geometric tail x^(K+1) / ((K+1)(1-x)) closes the lower bound.
    """
    if not 0 < x <= Fraction(1, 2):
        raise ValueError("x must lie in (0, 1/2]")
    partial = Fraction(0)
    power = Fraction(1)
    for k in range(1, terms + 1):
        power *= x
        partial -= power / k
    tail = power * x / ((terms + 1) * (1 - x))
    return partial - tail, partial


def hp_rhs_log2(n: int, a: int, epsilon: Fraction, prec: int = WORK_PREC) -> LogInterval:
    """log2 of (eps/C(n,a)) * (1 - eps/C(n,a))^tau as a certified interval."""
    ctx = _iv_ctx(prec)
    N = comb(n, a)
    x = Fraction(epsilon) / N
    t = tau(n, a)
    terms = 2
    while True:
        lo, hi = log1m_bracket(x, terms)
        if (hi - lo) * t < Fraction(1, 2 ** (prec // 2)) or terms >= 64:
            break
        terms *= 2
    ln2 = ctx.log(2)
    scaled = ctx.mpf([_iv_fraction(ctx, t * lo).a, _iv_fraction(ctx, t * hi).b])
    value = ctx.log(_iv_fraction(ctx, x)) / ln2 + scaled / ln2
    return LogInterval.from_iv(value, prec)


def lhs_log2(m: int, a: int, b: int, elementary: bool, prec: int = WORK_PREC) -> LogInterval:
    """log2 P{E_i} as a certified interval."""
    ctx = _iv_ctx(prec)
    num, shift = event_numerator(m, a, b, elementary)
    value = ctx.log(ctx.mpf(num)) / ctx.log(2) - shift
    return LogInterval.from_iv(value, prec)


def _min_m_hp(n, a, b, epsilon, elementary, k, d, enforce_a_range) -> BoundResult:
    _check_query(n, a, b, d, enforce_a_range)
    eps = Fraction(epsilon) if not isinstance(epsilon, str) else Fraction(epsilon)
    if not 0 < eps < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    rhs_cache: dict[int, LogInterval] = {}

    def rhs(prec: int) -> LogInterval:
        if prec not in rhs_cache:
            rhs_cache[prec] = hp_rhs_log2(n, a, eps, prec)
        return rhs_cache[prec]

    def decide(m: int) -> bool:
        prec = WORK_PREC
        while prec <= MAX_PREC:
            left, right = lhs_log2(m, a, b, elementary, prec), rhs(prec)
            if left.certainly_le(right):
                return True
            if left.certainly_gt(right):
                return False
            prec *= 2
        raise PrecisionError(f"log-interval comparison undecided at m={m}")

    m, anomalies = _scan(decide, b)
    cert = {
        "inequality": "log2 P{E} <= log2(eps/C(n,a)) + tau*log2(1-eps/C(n,a))",
        "rhs_log2": rhs(WORK_PREC).to_json(),
        "lhs_log2_at_m": lhs_log2(m, a, b, elementary).to_json(),
    }
    if m > b:
        cert["lhs_log2_at_m_minus_1"] = lhs_log2(m - 1, a, b, elementary).to_json()
    query = BoundQuery(n, a, b, k, "hp", elementary, eps, d)
    m_hat = None if k is None else trapping_redundancy_upper(m, n, k)
    return BoundResult(query, m, m_hat, False, cert, anomalies)


def min_m_hp(n: int, a: int, b: int, epsilon, k: int | None = None, d: int | None = None,
             enforce_a_range: bool = True) -> BoundResult:
    """Smallest m >= b with P{E} <= (eps/C(n,a)) (1 - eps/C(n,a))^tau."""
    return _min_m_hp(n, a, b, epsilon, False, k, d, enforce_a_range)


def min_m_hp_elementary(n: int, a: int, b: int, epsilon, k: int | None = None, d: int | None = None,
                        enforce_a_range: bool = True) -> BoundResult:
    return _min_m_hp(n, a, b, epsilon, True, k, d, enforce_a_range)


def min_m(query: BoundQuery, enforce_a_range: bool = True) -> BoundResult:
    """Dispatch a ``BoundQuery`` to the matching evaluator."""
    q = query
    if q.variant == "std":
        return _min_m_std(q.n, q.a, q.b, q.elementary, q.k, q.d, enforce_a_range)
    if q.variant == "hp":
        if q.epsilon is None:
            raise ValueError("hp bounds need epsilon")
        return _min_m_hp(q.n, q.a, q.b, q.epsilon, q.elementary, q.k, q.d, enforce_a_range)
    raise ValueError(f"unknown variant {q.variant!r}")


# -- constructive bounds -------------------------------------------------------------------


def constructive_bound(r: int, a: int, b: int, mode: str = "general", t: int | None = None,
                       d: int | None = None) -> int:
    """Row counts of the deterministic redundant-matrix constructions.

    ``mode``:
      * ``"t"``: all combinations of 1..t rows, sum_{i<=t} C(r,i); requires
        b <= 2^(a-1) - sum_{j=t+1}^{a} C(r,j)
      * ``"general"``: sum_{i<=a} C(r,i) + b - 2^(a-1)
      * ``"elementary"``: sum_{i<=a} C(r,i)
      * ``"pairwise"``: r(r+1)/2, for b <= r
      * ``"elementary_pairwise"``: b*r
    """
    if r <= 2:
        raise ValueError("constructive bounds need r = n-k > 2")
    if a < 1 or b < 1:
        raise ValueError("need a >= 1 and b >= 1")
    if d is not None and a > d - 1:
        raise ValueError(f"a={a} exceeds d-1={d - 1}")
    if mode == "t":
        if t is None or not 1 <= t <= a:
            raise ValueError("mode 't' needs 1 <= t <= a")
        guaranteed = 2 ** (a - 1) - sum(comb(r, j) for j in range(t + 1, a + 1))
        if b > guaranteed:
            raise ValueError(f"t={t} only guarantees b >= {guaranteed}")
        return sum(comb(r, i) for i in range(1, t + 1))
    if mode == "general":
        return sum(comb(r, i) for i in range(1, a + 1)) + b - 2 ** (a - 1)
    if mode == "elementary":
        return sum(comb(r, i) for i in range(1, a + 1))
    if mode == "pairwise":
        if b > r:
            raise ValueError("pairwise construction needs b <= r")
        return r * (r + 1) // 2
    if mode == "elementary_pairwise":
        return b * r
    raise ValueError(f"unknown mode {mode!r}")


# -- asymptotic estimates -------------------------------------------------------------------


def binary_entropy(x: float) -> float:
    if x <= 0 or x >= 1:
        return 0.0
    return -x * math.log2(x) - (1 - x) * math.log2(1 - x)


def phi(y: float, r: float) -> float:
    """Binomial upper-tail ratio (y - 1) / (y - r)."""
    return (y - 1) / (y - r)


@dataclass
class AsymptoticEstimate:
    kind: str
    value: float
    lam: float | None
    iterations: int


def _fixed_point(step, b: int, floor_m: float = 0.0, max_iter: int = 200) -> tuple[float, float, int]:
    # lambda < 1/2 needs m > 2(b - 1); start at the first such m if max(b, 8) is too small
    m = float(max(b, 8, 2 * b - 1, floor_m))
    for it in range(1, max_iter + 1):
        lam = (b - 1) / m
        if lam >= 0.5:
            raise ValueError(f"lambda={lam:.3f} is not below 1/2")
        nxt = step(m, lam)
        if not math.isfinite(nxt) or nxt <= 0:
            raise ValueError("estimate left the formula's domain")
        if abs(nxt - m) < 1:
            return nxt, (b - 1) / nxt, it
        m = nxt
    raise ValueError("fixed-point iteration did not converge")


def asymptotic_m(kind: str, n: int | None = None, a: int | None = None, b: int | None = None,
                 epsilon: float | None = None, r: int | None = None) -> AsymptoticEstimate:
    """Closed-form large-m estimates of the bound row counts.

    b and m are coupled through b = floor(lambda*m) + 1, so the estimate is the
    fixed point of m -> m'(m) started at max(b, 8).  Kinds: ``std``, ``hp``,
    ``elem_std``, ``elem_hp`` (need n, a, b and epsilon for hp) and
    ``constructive`` (needs r, a, b).  The hp expressions are evaluated as
    displayed, without reinterpretation.
    """
    if kind == "constructive":
        if r is None or a is None or b is None:
            raise ValueError("constructive estimate needs r, a, b")
        alpha = a / r
        if alpha >= 0.5:
            raise ValueError("alpha = a/r must be below 1/2")
        value = comb(r, a) / (1 - alpha / (1 - alpha)) + b - 2 ** (a - 1)
        return AsymptoticEstimate(kind, float(value), None, 0)
    if n is None or a is None or b is None:
        raise ValueError(f"{kind} estimate needs n, a, b")
    dep = dependent_events(n, a)
    C = comb(n, a)
    ld_e_dep = math.log2(math.e) + math.log2(dep)
    if kind in ("hp", "elem_hp"):
        if epsilon is None or not 0 < epsilon < 1:
            raise ValueError("hp estimates need 0 < epsilon < 1")
        x = epsilon / C
        ld_x1mx = math.log2(x) + math.log2(1 - x)

    if kind == "std":
        def step(m, lam):
            return (ld_e_dep + math.log2(1 / (1 - lam / (1 - lam)))) / (1 - binary_entropy(lam))
    elif kind == "hp":
        def step(m, lam):
            bracket = math.log2(1 - lam / (1 - lam)) + (dep - 1) * ld_x1mx
            return bracket / (binary_entropy(lam) - 1)
    elif kind in ("elem_std", "elem_hp"):
        y = (a * a + a + 2) / (a * a - a + 2)
        # phi needs y > m/(m-b+1), i.e. m > y(b-1)/(y-1)
        floor_m = math.floor(y * (b - 1) / (y - 1)) + 1
        ld_ratio = math.log2(2 * a / (a * a - a + 2))
        denom_const = math.log2(a * a - a + 2) - (a + 1)

        def step(m, lam):
            ratio = m / (m - b + 1)
            ph = phi(y, ratio)
            if ph <= 0:
                raise ValueError("phi is not positive here (y <= m/(m-b+1))")
            if kind == "elem_std":
                num = -(ld_e_dep + math.log2(ph)) - (b - 1) * ld_ratio
            else:
                num = (dep - 1) * ld_x1mx - math.log2(ph) - (b - 1) * ld_ratio
            return num / (binary_entropy(lam) + denom_const)
    else:
        raise ValueError(f"unknown kind {kind!r}")

    value, lam, its = _fixed_point(step, b, floor_m if kind.startswith("elem") else 0.0)
    return AsymptoticEstimate(kind, value, lam, its)
