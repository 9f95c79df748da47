"""Trapping-set measurement, exhaustive scans, LLL-ensemble sampling and
redundant-row construction.

Column subsets are scanned with columns held as Python ints over the rows, so
the restriction of a subset is summarized by bit-sliced counters: ``parity``
(odd rows), and ``ge1``/``ge2``/``ge3`` (rows meeting the subset at least one,
two, three times).  A subset is elementary exactly when ``ge3 == 0``.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from math import comb
from typing import Iterator, Sequence

import numpy as np

from . import gf2core
from .codes import LinearCode
from .geometry import SearchBudgetError
from .gf2core import BitMatrix, BitVector

DEFAULT_BUDGET = 10**9


@dataclass(frozen=True)
class TrappingSetReport:
    columns: tuple[int, ...]
    a: int
    b: int
    elementary: bool
    odd_rows: tuple[int, ...]
    max_restriction_row_weight: int

    @property
    def is_codeword_support(self) -> bool:
        return self.b == 0

    def to_json(self) -> dict:
        return asdict(self)


def measure(H: BitMatrix, columns: Sequence[int]) -> TrappingSetReport:
    prof = gf2core.odd_row_profile(H, columns)
    cols = tuple(int(c) for c in columns)
    return TrappingSetReport(cols, len(cols), prof.b, prof.max_row_weight <= 2, prof.odd_rows, prof.max_row_weight)


@dataclass
class SearchOutcome:
    a: int
    min_b: int | None
    witness: TrappingSetReport | None
    subsets_scanned: int
    exhaustive: bool

    def to_json(self) -> dict:
        out = asdict(self)
        out["witness"] = self.witness.to_json() if self.witness else None
        return out


def scan_cost(H: BitMatrix, a: int) -> tuple[int, int]:
    """(number of a-subsets, estimated subset-row word operations)."""
    subsets = comb(H.cols, a)
    return subsets, subsets * max(1, (H.rows + 63) // 64)


def _guard(H: BitMatrix, a: int, budget: int) -> None:
    if not 1 <= a <= H.cols:
        raise ValueError(f"a={a} out of range for {H.cols} columns")
    subsets, cost = scan_cost(H, a)
    if cost > budget:
        raise SearchBudgetError(
            f"scanning all C({H.cols},{a}) = {subsets:.3e} subsets exceeds budget {budget:.0e}", subsets
        )


def _walk(cols: Sequence[int], a: int, elementary_only: bool, firsts: Sequence[int]) -> Iterator[tuple]:
    """Yield (subset, parity, ge3) for a-subsets in lexicographic order.

    With ``elementary_only`` any branch whose restriction already has a row of
    weight >= 3 is cut, since adding columns cannot lower row weights.
    """
    n = len(cols)
    chosen: list[int] = []

    def rec(start: int, parity: int, ge1: int, ge2: int, ge3: int):
        depth = len(chosen)
        if depth == a:
            yield tuple(chosen), parity, ge3
            return
        for j in range(start, n - (a - depth) + 1):
            c = cols[j]
            n3 = ge3 | (ge2 & c)
            if elementary_only and n3:
                continue
            chosen.append(j)
            yield from rec(j + 1, parity ^ c, ge1 | c, ge2 | (ge1 & c), n3)
            chosen.pop()

    for f in firsts:
        if f > n - a:
            break
        c = cols[f]
        chosen.append(f)
        yield from rec(f + 1, c, c, 0, 0)
        chosen.pop()


def _scan_min(cols, a, elementary_only, firsts, positive_only):
    best = None
    witness = None
    count = 0
    for subset, parity, _ in _walk(cols, a, elementary_only, firsts):
        count += 1
        b = parity.bit_count()
        if positive_only and b == 0:
            continue
        if best is None or b < best:
            best, witness = b, subset
    return best, witness, count


def _scan_first_violation(cols, a, b_max, elementary_only, firsts):
    count = 0
    for subset, parity, _ in _walk(cols, a, elementary_only, firsts):
        count += 1
        b = parity.bit_count()
        if 1 <= b < b_max:
            return subset, count
    return None, count


def _scan_counts(cols, a, b_max, elementary_only, firsts):
    with_zero = without_zero = count = 0
    for _, parity, _ in _walk(cols, a, elementary_only, firsts):
        count += 1
        b = parity.bit_count()
        if b < b_max:
            with_zero += 1
            if b >= 1:
                without_zero += 1
    return with_zero, without_zero, count


def _chunks(n: int, a: int, workers: int) -> list[list[int]]:
    firsts = list(range(n - a + 1))
    return [firsts[i::workers] for i in range(workers)]


def exhaustive_min_b(
    H: BitMatrix,
    a: int,
    elementary_only: bool = False,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    positive_only: bool = False,
) -> SearchOutcome:
    """Minimum number of odd rows over all a-column subsets.

    Ties resolve to the lexicographically smallest subset.  With
    ``elementary_only`` the minimum runs over elementary subsets only and
    ``min_b`` is ``None`` when there are none.  ``positive_only`` skips
    codeword supports (b = 0).
    """
    _guard(H, a, budget)
    cols = H.col_ints()
    if workers > 1:
        parts = _chunks(H.cols, a, workers)
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_scan_min, *zip(*[(cols, a, elementary_only, p, positive_only) for p in parts])))
        scanned = sum(r[2] for r in results)
        found = [(r[0], r[1]) for r in results if r[0] is not None]
        best = min(found) if found else (None, None)
    else:
        b, w, scanned = _scan_min(cols, a, elementary_only, range(H.cols), positive_only)
        best = (b, w)
    min_b, subset = best
    witness = measure(H, subset) if subset is not None else None
    return SearchOutcome(a, min_b, witness, scanned, True)


@dataclass
class VerifyResult:
    passed: bool
    witness: TrappingSetReport | None
    subsets_scanned: int

    def __bool__(self) -> bool:
        return self.passed


def verify_free(
    H: BitMatrix, a: int, b: int, elementary_only: bool = False, budget: int = DEFAULT_BUDGET
) -> VerifyResult:
    """Pass iff no a-subset has 1 <= b' < b odd rows.

    Codeword supports (b' = 0) never fail; use ``theta_counts`` to see them.
    """
    if b <= 1:
        return VerifyResult(True, None, 0)
    _guard(H, a, budget)
    subset, scanned = _scan_first_violation(H.col_ints(), a, b, elementary_only, range(H.cols))
    witness = measure(H, subset) if subset is not None else None
    return VerifyResult(subset is None, witness, scanned)


def theta_counts(
    H: BitMatrix, a: int, b: int, elementary_only: bool = False, budget: int = DEFAULT_BUDGET
) -> tuple[int, int]:
    """Number of a-subsets with ``0 <= b' < b`` and with ``1 <= b' < b`` odd rows."""
    _guard(H, a, budget)
    with_zero, without_zero, _ = _scan_counts(H.col_ints(), a, b, elementary_only, range(H.cols))
    return with_zero, without_zero


def codeword_supports(H: BitMatrix, a: int, budget: int = DEFAULT_BUDGET) -> list[tuple[int, ...]]:
    """All a-subsets whose restriction has only even rows."""
    _guard(H, a, budget)
    return [s for s, parity, _ in _walk(H.col_ints(), a, False, range(H.cols)) if parity == 0]


# -- LLL ensemble sampling -----------------------------------------------------------


@dataclass
class SampleOutcome:
    success: bool
    matrix: BitMatrix | None
    attempts: int
    sampled_rows: int
    best_min_b: int | None
    log: list[dict] = field(default_factory=list)


def sample_lll_matrix(
    code: LinearCode,
    m: int,
    a: int,
    b: int,
    elementary_only: bool = False,
    max_attempts: int = 100,
    seed: int = 0,
    budget: int = DEFAULT_BUDGET,
) -> SampleOutcome:
    """Draw m dual codewords with replacement until no (a, s) set with s < b remains.

    A draw is accepted when every a-subset (every elementary one when
    flagged) has at least b odd rows, including s = 0, which also forces
    rank >= 1.  The accepted draw is then topped up with basis rows to full
    rank n - k, adding at most n - k - 1 rows.
    """
    if b < 1 or m < b:
        raise ValueError(f"need m >= b >= 1, got m={m}, b={b}")
    basis = code.dual_basis()
    probe = BitMatrix(m, code.n)
    _guard(probe, a, budget)
    rng = np.random.default_rng(seed)
    best = None
    log = []
    for attempt in range(1, max_attempts + 1):
        sample = gf2core.sample_dual_matrix(basis, m, rng)
        outcome = exhaustive_min_b(sample, a, elementary_only, budget)
        min_b = outcome.min_b
        ok = min_b is None or min_b >= b
        log.append({"attempt": attempt, "min_b": min_b, "accepted": ok})
        if min_b is not None and (best is None or min_b > best):
            best = min_b
        if ok:
            full = gf2core.extend_to_full_rank(sample, basis)
            return SampleOutcome(True, full, attempt, m, best, log)
    return SampleOutcome(False, None, max_attempts, m, best, log)


# -- constructive matrices -------------------------------------------------------------


def build_combination_matrix(H: BitMatrix, t: int) -> BitMatrix:
    """All XORs of 1..t rows of a full-rank H, by size then lexicographically."""
    r = H.rows
    if gf2core.rank(H) != r:
        raise ValueError("H must have full row rank")
    if not 1 <= t <= r:
        raise ValueError(f"t={t} must lie in 1..{r}")
    out = []
    for size in range(1, t + 1):
        for combo in itertools.combinations(range(r), size):
            out.append(np.bitwise_xor.reduce(H.data[list(combo)], axis=0))
    return BitMatrix(len(out), H.cols, np.stack(out))


@dataclass(frozen=True)
class CandidateRow:
    combo: tuple[int, ...]
    restriction_weight: int
    full_weight: int
    row: BitVector = field(repr=False, compare=False)

    def to_json(self) -> dict:
        return {
            "combo": list(self.combo),
            "restriction_weight": self.restriction_weight,
            "full_weight": self.full_weight,
            "support": self.row.support(),
        }


@dataclass
class BreakResult:
    candidates: list[CandidateRow]
    max_combo_size: int
    found: bool


def break_trapping_set(
    H: BitMatrix, columns: Sequence[int], max_combo_size: int = 3, max_combos: int = 10**6
) -> BreakResult:
    """Row combinations whose restriction to ``columns`` has odd weight.

    Only rows meeting ``columns`` are combined: adding a row that misses the
    set leaves the restriction unchanged.  Results are ordered by combination
    size, then full Hamming weight, then row indices.
    """
    cols = list(columns)
    dense = H.to_dense()
    restr = dense[:, cols]
    relevant = [int(i) for i in np.flatnonzero(restr.any(axis=1))]
    restr_ints = {i: sum(int(bit) << k for k, bit in enumerate(restr[i])) for i in relevant}
    cands: list[CandidateRow] = []
    enumerated = 0
    for size in range(1, max_combo_size + 1):
        for combo in itertools.combinations(relevant, size):
            enumerated += 1
            if enumerated > max_combos:
                raise SearchBudgetError("too many row combinations", comb(len(relevant), size))
            acc = 0
            for i in combo:
                acc ^= restr_ints[i]
            w = acc.bit_count()
            if w % 2:
                row = gf2core.combine_rows(H, combo)
                cands.append(CandidateRow(combo, w, row.weight, row))
    cands.sort(key=lambda c: (len(c.combo), c.full_weight, c.combo))
    return BreakResult(cands, max_combo_size, bool(cands))


# -- the (12,4) -> (14,4) expansion surgery -----------------------------------------

S1_COMBOS = (("E", "EO1", "BE2"), ("E", "EO2", "BE1"), ("EO1", "BE1"), ("EO2", "BE2"))
S2_COMBOS = (("E", "EO1"), ("E", "EO2"))
S3_COMBOS = (
    ("E", "BO1"),
    ("E", "BO2"),
    ("E", "BE1", "BE2", "BO1"),
    ("E", "BE1", "BE2", "BO2"),
    ("BO1", "BO2", "EO1", "BE2"),
    ("BO1", "BO2", "EO2", "BE1"),
)
CONFIG_B_COMBOS = (("EO1", "BE1"), ("EO1", "BE2"))

# restriction of checks (E, EO1, EO2, BE1, BE2, BO1, BO2) on variables
# (vE1, vE2, vBE1, vBE2, vBO1, vBO2)
EXPANSION_BLOCK = np.array(
    [
        [1, 1, 0, 0, 0, 0],
        [1, 0, 0, 0, 0, 0],
        [0, 1, 0, 0, 0, 0],
        [1, 0, 1, 0, 0, 0],
        [0, 1, 0, 1, 0, 0],
        [0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 1],
    ],
    dtype=np.uint8,
)
BLOCK_CHECKS = ("E", "EO1", "EO2", "BE1", "BE2", "BO1", "BO2")
BLOCK_VARS = ("vE1", "vE2", "vBE1", "vBE2", "vBO1", "vBO2")


@dataclass(frozen=True)
class ExpansionRow:
    method: str
    checks: tuple[str, ...]
    rows: tuple[int, ...]
    basic_weight: int
    extended_weight: int
    full_weight: int

    def to_json(self) -> dict:
        return asdict(self)


@dataclass
class ExpansionResult:
    config: str  # "a", "b" or "unclassified"
    labels: dict[str, int]
    extended_columns: tuple[int, ...]
    rows: list[ExpansionRow]
    note: str = ""

    def method(self, name: str) -> list[ExpansionRow]:
        return [r for r in self.rows if r.method == name]


def _adjacency(H: BitMatrix):
    dense = H.to_dense()
    check_vars = [list(map(int, np.flatnonzero(r))) for r in dense]
    var_checks = [list(map(int, np.flatnonzero(c))) for c in dense.T]
    return dense, check_vars, var_checks


def margulis_expansion(
    H: BitMatrix, basic_columns: Sequence[int], degree_one_checks: Sequence[int] | None = None
) -> ExpansionResult:
    """Locate the expansion of an elementary (12,4) set and emit S1/S2/S3 rows.

    Configuration a: two outside variables share a new check and each hangs
    off a different degree-one check of the basic set, so that the union is
    an elementary (14,4) set.  Configuration b: an outside variable touches
    two degree-one checks.  The variables of the basic set are assumed to
    have degree 3.
    """
    basic = tuple(sorted(int(c) for c in basic_columns))
    rep = measure(H, basic)
    if (rep.a, rep.b) != (12, 4) or not rep.elementary:
        raise ValueError(f"basic set measures ({rep.a},{rep.b}), elementary={rep.elementary}; need elementary (12,4)")
    dense, check_vars, var_checks = _adjacency(H)
    if any(len(var_checks[v]) != 3 for v in basic):
        raise ValueError("basic variables must have degree 3")
    D = tuple(sorted(degree_one_checks)) if degree_one_checks is not None else rep.odd_rows
    if set(D) != set(rep.odd_rows):
        raise ValueError("degree_one_checks disagree with the measured odd rows")
    basic_set = set(basic)
    touched = {c for v in basic for c in var_checks[v]}
    owner = {c: next(v for v in check_vars[c] if v in basic_set) for c in D}

    def weights(row_ids, extended):
        row = np.bitwise_xor.reduce(dense[list(row_ids)], axis=0)
        return int(row[list(basic)].sum()), int(row[list(extended)].sum()), int(row.sum())

    def third_check(v, known):
        rest = [c for c in var_checks[v] if c not in known]
        return rest[0] if len(rest) == 1 else None

    # configuration a
    for c1, c2 in itertools.permutations(D, 2):
        for v1 in check_vars[c1]:
            if v1 in basic_set or len(var_checks[v1]) != 3:
                continue
            for v2 in check_vars[c2]:
                if v2 in basic_set or v2 == v1 or len(var_checks[v2]) != 3:
                    continue
                shared = [c for c in var_checks[v1] if c in var_checks[v2] and c not in touched]
                if len(shared) != 1:
                    continue
                cE = shared[0]
                eo1 = third_check(v1, {c1, cE})
                eo2 = third_check(v2, {c2, cE})
                if eo1 is None or eo2 is None or eo1 in touched or eo2 in touched or eo1 == eo2:
                    continue
                ext = tuple(sorted(basic + (v1, v2)))
                ext_rep = measure(H, ext)
                if (ext_rep.b, ext_rep.elementary) != (4, True):
                    continue
                bo = [c for c in D if c not in (c1, c2)]
                labels = {
                    "E": cE, "EO1": eo1, "EO2": eo2, "BE1": c1, "BE2": c2, "BO1": bo[0], "BO2": bo[1],
                    "vE1": v1, "vE2": v2, "vBE1": owner[c1], "vBE2": owner[c2],
                    "vBO1": owner[bo[0]], "vBO2": owner[bo[1]],
                }
                rows = []
                for method, combos in (("S1", S1_COMBOS), ("S2", S2_COMBOS), ("S3", S3_COMBOS)):
                    for names in combos:
                        ids = tuple(labels[x] for x in names)
                        rows.append(ExpansionRow(method, names, ids, *weights(ids, ext)))
                return ExpansionResult("a", labels, ext, rows)

    # configuration b
    hits = []
    for v in sorted({v for c in D for v in check_vars[c]} - basic_set):
        on_d = [c for c in var_checks[v] if c in D]
        if len(on_d) == 2 and len(var_checks[v]) == 3:
            eo1 = third_check(v, set(on_d))
            if eo1 is not None and eo1 not in touched:
                hits.append((v, on_d, eo1))
    if hits:
        v, (c1, c2), eo1 = hits[0]
        labels = {"EO1": eo1, "BE1": c1, "BE2": c2, "vE1": v, "vBE1": owner[c1], "vBE2": owner[c2]}
        partial = tuple(sorted(basic + (v,)))
        rows = []
        for names in CONFIG_B_COMBOS:
            ids = tuple(labels[x] for x in names)
            rows.append(ExpansionRow("B", names, ids, *weights(ids, partial)))
        note = "second expansion variable not determined; extended weights use basic + vE1"
        if len(hits) > 1:
            note += f"; {len(hits)} candidate variables, first chosen"
        return ExpansionResult("b", labels, partial, rows, note)

    return ExpansionResult("unclassified", {}, basic, [], "no expansion matching either configuration")


def expansion_fixture(config: str = "a") -> tuple[BitMatrix, tuple[int, ...], dict[str, int]]:
    """Small synthetic matrix wired as in the (12,4)/(14,4) restriction table.

    The basic set is a 3-regular prism graph on 12 variables with two disjoint
    edges removed, each edge becoming a degree-2 check.  Rows 0..6 are the
    labeled checks in table order; columns 0..5 are the labeled variables.
    """
    prism = [(i, (i + 1) % 6) for i in range(6)] + [(6 + i, 6 + (i + 1) % 6) for i in range(6)]
    prism += [(i, i + 6) for i in range(6)]
    removed = [(0, 1), (9, 10)]
    edges = [e for e in prism if e not in removed]
    # prism vertex -> column; 0, 1 become vBE1, vBE2 and 9, 10 become vBO1, vBO2
    colmap = {0: 2, 1: 3, 9: 4, 10: 5}
    nxt = 6
    for v in range(12):
        if v not in colmap:
            colmap[v] = nxt
            nxt += 1
    basic = tuple(range(2, 14))
    if config == "a":
        labeled = [[0, 1], [0], [1], [0, 2], [1, 3], [4], [5]]
        extra: list[list[int]] = []
    elif config == "b":
        # vE1 on both BE checks plus EO1; vE2 on BO1 plus two fresh checks
        labeled = [[0], [0, 2], [0, 3], [1, 4], [5]]
        extra = [[1], [1]]
    else:
        raise ValueError("config must be 'a' or 'b'")
    internal = [[colmap[u], colmap[v]] for u, v in edges]
    supports = labeled + internal + extra
    H = BitMatrix.from_supports(supports, 14)
    if config == "a":
        labels = {name: i for i, name in enumerate(BLOCK_CHECKS)}
        labels.update({name: j for j, name in enumerate(BLOCK_VARS)})
    else:
        labels = {"EO1": 0, "BE1": 1, "BE2": 2, "BO1": 3, "BO2": 4, "vE1": 0, "vE2": 1}
    return H, basic, labels
