"""Finite fields and projective geometries PG(M, q), M in {2, 3}.

Field elements are integers ``0 .. q-1`` encoding polynomial coefficients in
base ``p`` (lowest degree first), reduced modulo a fixed monic irreducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .gf2core import BitMatrix

# Fixed binary moduli, bit i = coefficient of x^i.  Any change alters point
# order and therefore every exported incidence matrix.
BINARY_MODULI = {
    1: 0b11,  # x + 1
    2: 0b111,  # x^2 + x + 1
    3: 0b1011,  # x^3 + x + 1
    4: 0b10011,  # x^4 + x + 1
    5: 0b100101,  # x^5 + x^2 + 1
    6: 0b1000011,  # x^6 + x + 1
}

MAX_Q = 64


class SearchBudgetError(RuntimeError):
    """An exhaustive search was refused because it exceeds the configured budget."""

    def __init__(self, message: str, estimate: int):
        self.estimate = estimate
        super().__init__(message)


def factor_prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, m)`` with ``q = p**m``, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    m, r = 0, q
    while r % p == 0:
        r //= p
        m += 1
    if r != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, m


def _poly_mod_is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    # brute force: no root-free check suffices for degree > 3, so test all monic divisors
    deg = len(coeffs) - 1
    for d in range(1, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            divisor = list(tail) + [1]
            rem = list(coeffs)
            for shift in range(deg - d, -1, -1):
                lead = rem[shift + d]
                if lead:
                    for i in range(d + 1):
                        rem[shift + i] = (rem[shift + i] - lead * divisor[i]) % p
            if not any(rem[:d]):
                return False
    return True


def default_modulus(p: int, m: int) -> tuple[int, ...]:
    """Coefficients (low to high) of the fixed monic irreducible of degree m over GF(p)."""
    if p == 2 and m in BINARY_MODULI:
        bits = BINARY_MODULI[m]
        return tuple((bits >> i) & 1 for i in range(m + 1))
    if m == 1:
        return (0, 1)
    for tail in itertools.product(range(p), repeat=m):
        coeffs = tuple(reversed(tail)) + (1,)
        if coeffs[0] and _poly_mod_is_irreducible(coeffs, p):
            return coeffs
    raise AssertionError("no irreducible polynomial found")


class FiniteField:
    """GF(p^m) with full addition and multiplication tables."""

    def __init__(self, q: int, modulus: Sequence[int] | None = None):
        p, m = factor_prime_power(q)
        self.p, self.m, self.q = p, m, q
        self.modulus = tuple(modulus) if modulus is not None else default_modulus(p, m)
        if len(self.modulus) != m + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree m")
        if m > 1 and not _poly_mod_is_irreducible(self.modulus, p):
            raise ValueError("modulus is reducible")
        digits = np.array([self._digits(x) for x in range(q)], dtype=np.int64)
        weights = p ** np.arange(m)
        self.add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        self.mul = np.array([[self._mul_slow(x, y) for y in range(q)] for x in range(q)], dtype=np.int64)
        self.neg = np.array([int(np.flatnonzero(self.add[x] == 0)[0]) for x in range(q)])
        self.inv = np.zeros(q, dtype=np.int64)
        for x in range(1, q):
            self.inv[x] = int(np.flatnonzero(self.mul[x] == 1)[0])

    def _digits(self, x: int) -> list[int]:
        return [(x // self.p**i) % self.p for i in range(self.m)]

    def _mul_slow(self, x: int, y: int) -> int:
        p, m = self.p, self.m
        a, b = self._digits(x), self._digits(y)
        prod = [0] * (2 * m - 1)
        for i, ai in enumerate(a):
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
        for top in range(2 * m - 2, m - 1, -1):
            lead = prod[top]
            if lead:
                for i in range(m + 1):
                    prod[top - m + i] = (prod[top - m + i] - lead * self.modulus[i]) % p
        return sum(c * p**i for i, c in enumerate(prod[:m]))

    def __repr__(self) -> str:
        return f"FiniteField(q={self.q}, modulus={self.modulus})"


@dataclass
class ProjectiveGeometry:
    M: int
    field: FiniteField
    points: list[tuple[int, ...]]
    lines: list[tuple[int, ...]]
    _index: dict[tuple[int, ...], int] = field(repr=False, default_factory=dict)
    _point_lines: list[list[int]] = field(repr=False, default_factory=list)

    @property
    def q(self) -> int:
        return self.field.q

    def point_index(self, coords: Sequence[int]) -> int:
        return self._index[normalize(self.field, coords)]

    def lines_through(self, point: int) -> list[int]:
        return self._point_lines[point]

    def line_through(self, i: int, j: int) -> int:
        common = set(self._point_lines[i]) & set(self._point_lines[j])
        (line,) = common
        return line


def normalize(F: FiniteField, coords: Sequence[int]) -> tuple[int, ...]:
    """Scale so the first nonzero coordinate is 1."""
    lead = next(c for c in coords if c)
    s = F.inv[lead]
    return tuple(int(F.mul[s, c]) for c in coords)


def point_count(M: int, q: int) -> int:
    return (q ** (M + 1) - 1) // (q - 1)


def line_count(M: int, q: int) -> int:
    top = sum(q**i for i in range(M + 1))
    below = sum(q**i for i in range(M))
    return top * below // (q + 1)


def build_geometry(M: int, q: int) -> ProjectiveGeometry:
    if M not in (2, 3):
        raise ValueError("only PG(2,q) and PG(3,q) are supported")
    if q > MAX_Q:
        raise ValueError(f"q={q} exceeds the supported maximum {MAX_Q}")
    F = FiniteField(q)
    points = [
        pt
        for pt in itertools.product(range(q), repeat=M + 1)
        if any(pt) and pt[next(i for i, c in enumerate(pt) if c)] == 1
    ]
    index = {pt: i for i, pt in enumerate(points)}
    P = len(points)
    arr = np.array(points, dtype=np.int64)
    radix = q ** np.arange(M, -1, -1)
    lookup = np.full(q ** (M + 1), -1, dtype=np.int64)
    lookup[arr @ radix] = np.arange(P)
    nonzero = np.arange(1, q)

    def canonical_indices(rows: np.ndarray) -> np.ndarray:
        lead = rows[np.arange(len(rows)), np.argmax(rows != 0, axis=1)]
        scaled = F.mul[F.inv[lead][:, None], rows]
        return lookup[scaled @ radix]

    lines: list[tuple[int, ...]] = []
    point_lines: list[list[int]] = [[] for _ in range(P)]
    covered = np.zeros(P, dtype=bool)
    for i in range(P):
        covered[:] = False
        covered[: i + 1] = True
        for li in point_lines[i]:
            covered[list(lines[li])] = True
        a = arr[i]
        for j in np.flatnonzero(~covered):
            if covered[j]:
                continue
            b = arr[j]
            # a + t*b for t != 0, plus b itself
            others = F.add[a[None, :], F.mul[nonzero[:, None], b[None, :]]]
            line = tuple(sorted({i, int(j), *map(int, canonical_indices(others))}))
            covered[list(line)] = True
            for pt in line:
                point_lines[pt].append(len(lines))
            lines.append(line)
    order = sorted(range(len(lines)), key=lambda k: lines[k])
    lines = [lines[k] for k in order]
    point_lines = [[] for _ in range(P)]
    for li, line in enumerate(lines):
        for pt in line:
            point_lines[pt].append(li)
    return ProjectiveGeometry(M, F, points, lines, index, point_lines)


def incidence_matrix(geo: ProjectiveGeometry) -> BitMatrix:
    """Line-point incidence matrix (rows are lines)."""
    return BitMatrix.from_supports(geo.lines, len(geo.points))


# -- arcs ---------------------------------------------------------------------


@dataclass(frozen=True)
class Arc:
    point_indices: tuple[int, ...]

    @property
    def s(self) -> int:
        return len(self.point_indices)


def max_arc_size(M: int, q: int) -> int:
    if M == 3:
        return q * q + 1
    return q + 2 if q % 2 == 0 else q + 1


def is_arc(geo: ProjectiveGeometry, point_indices: Sequence[int]) -> bool:
    """True when no line meets the set in three or more points."""
    counts: dict[int, int] = {}
    for p in point_indices:
        for line in geo.lines_through(p):
            counts[line] = counts.get(line, 0) + 1
            if counts[line] > 2:
                return False
    return True


def secant_profile(geo: ProjectiveGeometry, arc: Arc | Sequence[int]) -> tuple[int, int]:
    """(unisecants, bisecants) by direct tally."""
    pts = arc.point_indices if isinstance(arc, Arc) else tuple(arc)
    if not is_arc(geo, pts):
        raise ValueError("point set is not an arc")
    counts: dict[int, int] = {}
    for p in pts:
        for line in geo.lines_through(p):
            counts[line] = counts.get(line, 0) + 1
    values = list(counts.values())
    return values.count(1), values.count(2)


def unisecant_formula(M: int, q: int, s: int) -> int:
    return s * (q + 2 - s) if M == 2 else s * (q * q + q + 2 - s)


@dataclass
class ArcEnumeration:
    arcs: list[Arc]
    truncated: bool
    nodes_visited: int


def enumerate_arcs(
    geo: ProjectiveGeometry, s: int, limit: int | None = None, budget: int = 10**8
) -> ArcEnumeration:
    """All s-arcs in lexicographic order, by orderly backtracking.

    Points are only ever appended in increasing index order, so each arc is
    generated exactly once.  ``budget`` caps the number of search nodes.
    """
    from math import comb

    P = len(geo.points)
    estimate = comb(P, s)
    if estimate > budget:
        raise SearchBudgetError(f"C({P},{s}) = {estimate} candidate sets exceeds budget {budget}", estimate)
    arcs: list[Arc] = []
    line_count_ = np.zeros(len(geo.lines), dtype=np.int64)
    chosen: list[int] = []
    visited = 0
    truncated = False

    def extend(start: int) -> bool:
        nonlocal visited, truncated
        if len(chosen) == s:
            arcs.append(Arc(tuple(chosen)))
            if limit is not None and len(arcs) >= limit:
                truncated = True
                return False
            return True
        for p in range(start, P - (s - len(chosen)) + 1):
            visited += 1
            if visited > budget:
                raise SearchBudgetError("arc search exceeded its node budget", estimate)
            ls = geo.lines_through(p)
            if (line_count_[ls] >= 2).any():
                continue
            line_count_[ls] += 1
            chosen.append(p)
            keep_going = extend(p + 1)
            chosen.pop()
            line_count_[ls] -= 1
            if not keep_going:
                return False
        return True

    extend(0)
    return ArcEnumeration(arcs, truncated, visited)
