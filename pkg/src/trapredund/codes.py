"""Codes evaluated in the bound tables plus small brute-force fixtures."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from . import gf2core
from .geometry import build_geometry, incidence_matrix
from .gf2core import BitMatrix, rank

DistanceKind = Literal["exact", "estimated", "unknown"]

# extended binary Golay code: cyclic [23,12] generator plus an overall parity bit
GOLAY_GENERATOR = (1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1)  # 1 + x^2 + x^4 + x^5 + x^6 + x^10 + x^11

# SL2(F_p) generator matrices (a, b, c, d) for [[a, b], [c, d]]
MARGULIS_A = (1, 2, 0, 1)
MARGULIS_B = (1, 0, 2, 1)
# check g is joined to variable g*w in copy 0 for w in the first triple and in
# copy 1 for w in the second; words over A, B and their inverses ("a" = A^-1)
MARGULIS_RULE = (("I", "A", "B"), ("a", "aB", "AA"))
MARGULIS_RULE_ID = "sl2-cayley-I.A.B|a.aB.AA"

ENUMERATION_MAX_K = 16
FULL_DUAL_MAX = 20


@dataclass
class LinearCode:
    n: int
    k: int
    H: BitMatrix
    d: int | None = None
    d_kind: DistanceKind = "unknown"
    dual_distance: int | None = None
    provenance: dict = field(default_factory=dict)

    @property
    def r(self) -> int:
        return self.n - self.k

    @property
    def is_redundant(self) -> bool:
        return self.H.rows > self.n - self.k

    def dual_basis(self) -> BitMatrix:
        """Independent rows spanning the dual code."""
        reduced, _ = gf2core.rref(self.H)
        return reduced

    def generator(self) -> BitMatrix:
        return gf2core.dual_basis(self.H)

    def max_lll_a(self) -> int | None:
        """Largest a allowed by the LLL bounds, floor((d - 1) / 2)."""
        return None if self.d is None else (self.d - 1) // 2


def _span_min_weight(basis: BitMatrix) -> int | None:
    """Minimum nonzero weight in the row span, by Gray-code enumeration."""
    rows = basis.row_ints()
    if not rows:
        return None
    best = None
    current = 0
    for i in range(1, 1 << len(rows)):
        flip = (i & -i).bit_length() - 1
        current ^= rows[flip]
        w = current.bit_count()
        if w and (best is None or w < best):
            best = w
    return best


def min_distance(code: LinearCode) -> int | None:
    if code.k > ENUMERATION_MAX_K:
        raise ValueError(f"k={code.k} exceeds the enumeration budget {ENUMERATION_MAX_K}")
    return _span_min_weight(code.generator())


def make_code(H: BitMatrix, provenance: dict, d: int | None = None, d_kind: DistanceKind = "unknown") -> LinearCode:
    n = H.cols
    k = n - rank(H)
    code = LinearCode(n, k, H, d, d_kind, provenance=dict(provenance))
    if d is None and 0 < k <= ENUMERATION_MAX_K:
        code.d, code.d_kind = min_distance(code), "exact"
    if code.r <= ENUMERATION_MAX_K and code.r > 0:
        code.dual_distance = _span_min_weight(code.dual_basis())
    return code


# -- reference fixtures ---------------------------------------------------------


def hamming7_H() -> BitMatrix:
    cols = [[(j >> i) & 1 for i in range(3)] for j in range(1, 8)]
    return BitMatrix.from_dense(np.array(cols, dtype=np.uint8).T)


def golay24_G() -> BitMatrix:
    rows = np.zeros((12, 24), dtype=np.uint8)
    for i in range(12):
        rows[i, i : i + 12] = GOLAY_GENERATOR
    rows[:, 23] = rows[:, :23].sum(axis=1) & 1
    return BitMatrix.from_dense(rows)


def repetition_H(n: int) -> BitMatrix:
    if n < 2:
        raise ValueError("repetition code needs n >= 2")
    rows = np.zeros((n - 1, n), dtype=np.uint8)
    for i in range(n - 1):
        rows[i, i] = rows[i, i + 1] = 1
    return BitMatrix.from_dense(rows)


def build_reference_code(which: str, n: int | None = None, alist_text: str | None = None,
                         k: int | None = None) -> LinearCode:
    if which == "hamming7":
        return make_code(hamming7_H(), {"construction": "hamming7"})
    if which == "golay24":
        # self-dual: the generator matrix doubles as a parity-check matrix
        return make_code(golay24_G(), {"construction": "golay24", "generator_poly": "1+x^2+x^4+x^5+x^6+x^10+x^11"})
    if which == "repetition":
        if n is None:
            raise ValueError("repetition code needs n")
        return make_code(repetition_H(n), {"construction": "repetition", "n": n})
    if which == "alist":
        if alist_text is None:
            raise ValueError("alist text required")
        H = gf2core.from_alist(alist_text)
        code = make_code(H, {"construction": "alist"})
        if k is not None and code.k != k:
            raise ValueError(f"alist matrix has rank {H.cols - code.k}, inconsistent with declared k={k}")
        return code
    raise ValueError(f"unknown reference code {which!r}")


def full_dual_matrix(code: LinearCode) -> BitMatrix:
    """All 2^(n-k) dual codewords, zero first, in binary-counter order over the RREF basis."""
    basis = code.dual_basis()
    r = basis.rows
    if r > FULL_DUAL_MAX:
        raise ValueError(f"n-k={r} exceeds the full-dual budget {FULL_DUAL_MAX}")
    rows = basis.row_ints()
    words = [0] * (1 << r)
    for i in range(1, 1 << r):
        low = (i & -i).bit_length() - 1
        words[i] = words[i & (i - 1)] ^ rows[low]
    return BitMatrix.from_ints(words, code.n)


# -- projective geometry codes ---------------------------------------------------


def build_pg_code(M: int, q: int) -> LinearCode:
    geo = build_geometry(M, q)
    H = incidence_matrix(geo)
    prov = {"construction": "pg-type1", "M": M, "q": q, "modulus": list(geo.field.modulus)}
    d, kind = None, "unknown"
    if M == 2 and q % 2 == 0:
        d, kind = q + 2, "exact"
    n = H.cols
    k = n - rank(H)
    code = LinearCode(n, k, H, d, kind, provenance=prov)
    if d is None and 0 < k <= ENUMERATION_MAX_K:
        code.d, code.d_kind = min_distance(code), "exact"
    return code


# -- Margulis ----------------------------------------------------------------------


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def sl2_elements(p: int) -> list[tuple[int, int, int, int]]:
    """SL2(F_p) in lexicographic order of (a, b, c, d)."""
    return [g for g in itertools.product(range(p), repeat=4) if (g[0] * g[3] - g[1] * g[2]) % p == 1]


def _mat_mul(x, y, p):
    a, b, c, d = x
    e, f, g, h = y
    return ((a * e + b * g) % p, (a * f + b * h) % p, (c * e + d * g) % p, (c * f + d * h) % p)


def _word(w: str, p: int):
    A, B = MARGULIS_A, MARGULIS_B
    inv = lambda x: (x[3] % p, -x[1] % p, -x[2] % p, x[0] % p)  # noqa: E731
    letters = {"A": A, "B": B, "a": inv(A), "b": inv(B)}
    out = (1, 0, 0, 1)
    if w == "I":
        return out
    for ch in w:
        out = _mat_mul(out, letters[ch], p)
    return out


def build_margulis(p: int = 11, d_estimate: int | None = 40) -> LinearCode:
    """(3,6)-regular Cayley-type code over SL2(F_p); p = 11 gives 1320 x 2640.

    Checks are indexed by G = SL2(F_p); variables by two copies of G.  Check
    ``g`` is adjacent to ``(g*w, copy)`` for the words in ``MARGULIS_RULE``.
    The minimum distance is not computed; ``d_estimate`` is carried as an
    estimate for p = 11 only.
    """
    if not _is_prime(p) or p < 5:
        raise ValueError(f"p={p} must be a prime >= 5")
    G = sl2_elements(p)
    index = {g: i for i, g in enumerate(G)}
    N = len(G)
    supports = []
    for g in G:
        cols = []
        for copy, words in enumerate(MARGULIS_RULE):
            for w in words:
                cols.append(copy * N + index[_mat_mul(g, _word(w, p), p)])
        supports.append(sorted(cols))
    H = BitMatrix.from_supports(supports, 2 * N)
    prov = {
        "construction": "margulis",
        "p": p,
        "generators": {"A": list(MARGULIS_A), "B": list(MARGULIS_B)},
        "rule": MARGULIS_RULE_ID,
    }
    d, kind = (d_estimate, "estimated") if (p == 11 and d_estimate is not None) else (None, "unknown")
    return LinearCode(2 * N, 2 * N - rank(H), H, d, kind, provenance=prov)


# -- graph structure ----------------------------------------------------------------


def girth(H: BitMatrix, cap: int | None = None) -> int | None:
    """Length of the shortest Tanner-graph cycle, or None if acyclic.

    With ``cap`` set, only cycles of length <= cap are searched for; ``None``
    then means the girth exceeds ``cap``.
    """
    rows = H.row_supports()
    n = H.cols
    adj: list[list[int]] = [[] for _ in range(H.rows + n)]
    for i, cols in enumerate(rows):
        for c in cols:
            adj[i].append(H.rows + c)
            adj[H.rows + c].append(i)
    best = None
    limit = cap
    for start in range(len(adj)):
        dist = {start: 0}
        parent = {start: -1}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            du = dist[u]
            # any cycle closed from depth du has length >= 2*du
            if best is not None and 2 * du >= best:
                break
            if limit is not None and 2 * du > limit:
                break
            for w in adj[u]:
                if w == parent[u]:
                    continue
                if w in dist:
                    length = du + dist[w] + 1
                    if best is None or length < best:
                        best = length
                else:
                    dist[w] = du + 1
                    parent[w] = u
                    queue.append(w)
    if best is not None and limit is not None and best > limit:
        return None
    return best
