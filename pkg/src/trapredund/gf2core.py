"""Bit-packed GF(2) vectors and matrices.

Rows are packed little-endian into ``uint64`` words: bit ``j`` of a row lives in
word ``j // 64`` at position ``j % 64``.  Duplicate rows are always allowed, so a
``BitMatrix`` can hold redundant parity-check matrices and sampled ensembles.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

WORD = 64


class AlistError(ValueError):
    """Malformed alist input; ``lineno`` is 1-based."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        prefix = f"line {lineno}: " if lineno is not None else ""
        super().__init__(prefix + message)


class SpanError(ValueError):
    """A row does not lie in the span it was claimed to lie in."""


def _nwords(cols: int) -> int:
    return (cols + WORD - 1) // WORD


def _pack_int(value: int, nwords: int) -> np.ndarray:
    out = np.zeros(nwords, dtype=np.uint64)
    mask = (1 << WORD) - 1
    for w in range(nwords):
        out[w] = (value >> (WORD * w)) & mask
    return out


def _unpack_int(words: np.ndarray) -> int:
    value = 0
    for w in range(len(words) - 1, -1, -1):
        value = (value << WORD) | int(words[w])
    return value


@dataclass(frozen=True)
class BitVector:
    length: int
    words: np.ndarray

    @classmethod
    def zeros(cls, length: int) -> "BitVector":
        return cls(length, np.zeros(_nwords(length), dtype=np.uint64))

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "BitVector":
        return BitMatrix.from_dense(np.asarray(bits, dtype=np.uint8)[None, :]).row(0)

    @classmethod
    def from_int(cls, value: int, length: int) -> "BitVector":
        return cls(length, _pack_int(value, _nwords(length)))

    def to_int(self) -> int:
        return _unpack_int(self.words)

    def to_dense(self) -> np.ndarray:
        return BitMatrix(1, self.length, self.words[None, :]).to_dense()[0]

    def support(self) -> list[int]:
        return [int(j) for j in np.flatnonzero(self.to_dense())]

    @property
    def weight(self) -> int:
        return int(np.bitwise_count(self.words).sum())

    def __xor__(self, other: "BitVector") -> "BitVector":
        if other.length != self.length:
            raise ValueError("length mismatch")
        return BitVector(self.length, self.words ^ other.words)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BitVector)
            and other.length == self.length
            and bool(np.array_equal(self.words, other.words))
        )

    def __hash__(self) -> int:
        return hash((self.length, self.words.tobytes()))

    def __repr__(self) -> str:
        bits = "".join(str(int(x)) for x in self.to_dense())
        return f"BitVector({bits})"


class BitMatrix:
    """Row-major bit-packed binary matrix."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: np.ndarray | None = None):
        if cols <= 0:
            raise ValueError("a BitMatrix needs at least one column")
        nw = _nwords(cols)
        if data is None:
            data = np.zeros((rows, nw), dtype=np.uint64)
        data = np.ascontiguousarray(data, dtype=np.uint64).reshape(rows, nw)
        self.rows = rows
        self.cols = cols
        self.data = data

    # -- construction -------------------------------------------------------

    @classmethod
    def from_dense(cls, array) -> "BitMatrix":
        a = np.asarray(array, dtype=np.uint8) & 1
        if a.ndim != 2:
            raise ValueError("expected a 2-d array")
        rows, cols = a.shape
        nw = _nwords(cols)
        padded = np.zeros((rows, nw * WORD), dtype=np.uint8)
        padded[:, :cols] = a
        bytes_ = np.packbits(padded, axis=1, bitorder="little")
        data = bytes_.view("<u8").astype(np.uint64).reshape(rows, nw)
        return cls(rows, cols, data)

    @classmethod
    def from_supports(cls, supports: Iterable[Iterable[int]], cols: int) -> "BitMatrix":
        supports = [list(s) for s in supports]
        dense = np.zeros((len(supports), cols), dtype=np.uint8)
        for i, s in enumerate(supports):
            dense[i, s] = 1
        return cls.from_dense(dense)

    @classmethod
    def from_vectors(cls, vectors: Sequence[BitVector], cols: int | None = None) -> "BitMatrix":
        if cols is None:
            if not vectors:
                raise ValueError("cols required for an empty vector list")
            cols = vectors[0].length
        if not vectors:
            return cls(0, cols)
        if any(v.length != cols for v in vectors):
            raise ValueError("vector length mismatch")
        return cls(len(vectors), cols, np.stack([v.words for v in vectors]))

    @classmethod
    def from_ints(cls, values: Sequence[int], cols: int) -> "BitMatrix":
        nw = _nwords(cols)
        data = np.zeros((len(values), nw), dtype=np.uint64)
        for i, v in enumerate(values):
            data[i] = _pack_int(v, nw)
        return cls(len(values), cols, data)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls.from_dense(np.eye(n, dtype=np.uint8))

    # -- views --------------------------------------------------------------

    def to_dense(self) -> np.ndarray:
        as_bytes = self.data.astype("<u8").view(np.uint8).reshape(self.rows, self.data.shape[1] * 8)
        bits = np.unpackbits(as_bytes, axis=1, bitorder="little")
        return bits[:, : self.cols].copy()

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, self.data[i].copy())

    def row_ints(self) -> list[int]:
        return [_unpack_int(self.data[i]) for i in range(self.rows)]

    def col_ints(self) -> list[int]:
        """Columns as Python ints, bit ``i`` set when row ``i`` has a one."""
        dense_t = self.to_dense().T
        out = []
        for col in dense_t:
            packed = np.packbits(col, bitorder="little").tobytes()
            out.append(int.from_bytes(packed, "little"))
        return out

    def row_weights(self) -> np.ndarray:
        return np.bitwise_count(self.data).sum(axis=1).astype(np.int64)

    def col_weights(self) -> np.ndarray:
        return self.to_dense().sum(axis=0).astype(np.int64)

    def row_supports(self) -> list[list[int]]:
        dense = self.to_dense()
        return [list(map(int, np.flatnonzero(r))) for r in dense]

    def copy(self) -> "BitMatrix":
        return BitMatrix(self.rows, self.cols, self.data.copy())

    def vstack(self, other: "BitMatrix") -> "BitMatrix":
        if other.cols != self.cols:
            raise ValueError("column count mismatch")
        return BitMatrix(self.rows + other.rows, self.cols, np.vstack([self.data, other.data]))

    def append_row(self, v: BitVector) -> "BitMatrix":
        return self.vstack(BitMatrix(1, self.cols, v.words[None, :]))

    def take_rows(self, indices: Sequence[int]) -> "BitMatrix":
        idx = np.asarray(list(indices), dtype=np.int64)
        return BitMatrix(len(idx), self.cols, self.data[idx])

    def mul_vec(self, v: BitVector) -> np.ndarray:
        """Syndrome ``M v^T`` as a 0/1 array of length ``rows``."""
        return (np.bitwise_count(self.data & v.words).sum(axis=1) & 1).astype(np.uint8)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BitMatrix)
            and (self.rows, self.cols) == (other.rows, other.cols)
            and bool(np.array_equal(self.data, other.data))
        )

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols})"

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols


# -- elimination --------------------------------------------------------------


def _rref(data: np.ndarray, cols: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of packed rows (returns a new array)."""
    a = data.copy()
    nrows = a.shape[0]
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == nrows:
            break
        w, bit = divmod(c, WORD)
        colbits = (a[r:, w] >> np.uint64(bit)) & np.uint64(1)
        hits = np.flatnonzero(colbits)
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        mask = ((a[:, w] >> np.uint64(bit)) & np.uint64(1)).astype(bool)
        mask[r] = False
        a[mask] ^= a[r]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(m: BitMatrix) -> int:
    """GF(2) row rank."""
    if m.rows == 0:
        return 0
    return len(_rref(m.data, m.cols)[1])


def rref(m: BitMatrix) -> tuple[BitMatrix, list[int]]:
    reduced, pivots = _rref(m.data, m.cols)
    return BitMatrix(len(pivots), m.cols, reduced), pivots


def dual_basis(m: BitMatrix) -> BitMatrix:
    """Basis of the null space ``{x : M x^T = 0}``, one basis vector per row."""
    n = m.cols
    if m.rows == 0:
        return BitMatrix.identity(n)
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    if not free:
        return BitMatrix(0, n)
    dense = reduced.to_dense()
    out = np.zeros((len(free), n), dtype=np.uint8)
    for k, f in enumerate(free):
        out[k, f] = 1
        out[k, pivots] = dense[:, f]
    return BitMatrix.from_dense(out)


def in_span(basis: BitMatrix, v: BitVector) -> bool:
    if basis.rows == 0:
        return v.weight == 0
    return rank(basis.append_row(v)) == rank(basis)


# -- restrictions -------------------------------------------------------------


def _check_columns(m: BitMatrix, cols: Sequence[int]) -> list[int]:
    cols = [int(c) for c in cols]
    if len(set(cols)) != len(cols):
        raise ValueError(f"duplicate column index in {cols}")
    for c in cols:
        if not 0 <= c < m.cols:
            raise ValueError(f"column index {c} out of range for {m.cols} columns")
    return cols


def restriction(m: BitMatrix, cols: Sequence[int]) -> BitMatrix:
    """The ``rows x len(cols)`` submatrix on ``cols``, in the given order."""
    cols = _check_columns(m, cols)
    if not cols:
        raise ValueError("restriction needs at least one column")
    return BitMatrix.from_dense(m.to_dense()[:, cols])


@dataclass(frozen=True)
class OddRowProfile:
    b: int
    odd_rows: tuple[int, ...]
    max_row_weight: int


def odd_row_profile(m: BitMatrix, cols: Sequence[int]) -> OddRowProfile:
    cols = _check_columns(m, cols)
    if m.rows == 0 or not cols:
        return OddRowProfile(0, (), 0)
    w = m.to_dense()[:, cols].sum(axis=1)
    odd = tuple(int(i) for i in np.flatnonzero(w & 1))
    return OddRowProfile(len(odd), odd, int(w.max()))


def combine_rows(m: BitMatrix, row_indices: Sequence[int]) -> BitVector:
    """XOR of the selected rows."""
    idx = [int(i) for i in row_indices]
    if not idx:
        raise ValueError("combine_rows needs at least one row index")
    if len(set(idx)) != len(idx):
        raise ValueError(f"duplicate row index in {idx}")
    for i in idx:
        if not 0 <= i < m.rows:
            raise ValueError(f"row index {i} out of range for {m.rows} rows")
    acc = np.bitwise_xor.reduce(m.data[idx], axis=0)
    return BitVector(m.cols, acc)


# -- dual code sampling ---------------------------------------------------------


def sample_dual_codeword(basis: BitMatrix, rng: np.random.Generator) -> BitVector:
    """Uniform element of the row span: XOR of a uniformly random subset of rows."""
    if basis.rows == 0:
        return BitVector.zeros(basis.cols)
    pick = rng.integers(0, 2, size=basis.rows).astype(bool)
    if not pick.any():
        return BitVector.zeros(basis.cols)
    return BitVector(basis.cols, np.bitwise_xor.reduce(basis.data[pick], axis=0))


def sample_dual_matrix(basis: BitMatrix, m: int, rng: np.random.Generator) -> BitMatrix:
    """``m`` independent uniform span elements, drawn with replacement."""
    return BitMatrix.from_vectors([sample_dual_codeword(basis, rng) for _ in range(m)], basis.cols)


def extend_to_full_rank(m: BitMatrix, basis: BitMatrix) -> BitMatrix:
    """Append basis rows greedily, in basis order, until rank(basis) is reached."""
    if m.cols != basis.cols:
        raise ValueError("column count mismatch")
    target = rank(basis)
    current = rank(m)
    if m.rows and rank(basis.vstack(m)) != target:
        raise SpanError("matrix has a row outside the span of the basis")
    out = m
    for i in range(basis.rows):
        if current == target:
            break
        trial = out.append_row(basis.row(i))
        r = rank(trial)
        if r > current:
            out, current = trial, r
    return out


# -- alist ------------------------------------------------------------------------


def to_alist(m: BitMatrix) -> str:
    """Serialize in the usual MacKay alist layout, padding lists with zeros."""
    dense = m.to_dense()
    col_lists = [list(np.flatnonzero(dense[:, j]) + 1) for j in range(m.cols)]
    row_lists = [list(np.flatnonzero(dense[i]) + 1) for i in range(m.rows)]
    max_c = max((len(c) for c in col_lists), default=0)
    max_r = max((len(r) for r in row_lists), default=0)
    lines = [
        f"{m.cols} {m.rows}",
        f"{max_c} {max_r}",
        " ".join(str(len(c)) for c in col_lists),
        " ".join(str(len(r)) for r in row_lists),
    ]
    for lst in col_lists:
        lines.append(" ".join(str(int(x)) for x in lst + [0] * (max_c - len(lst))))
    for lst in row_lists:
        lines.append(" ".join(str(int(x)) for x in lst + [0] * (max_r - len(lst))))
    return "\n".join(lines) + "\n"


def _ints(line: str, lineno: int) -> list[int]:
    try:
        return [int(t) for t in line.split()]
    except ValueError:
        raise AlistError(f"non-integer token in {line.strip()!r}", lineno) from None


def from_alist(text: str) -> BitMatrix:
    """Parse alist text; zero-padded and unpadded index lists are both accepted."""
    lines = [(i + 1, ln) for i, ln in enumerate(text.splitlines()) if ln.strip()]
    if len(lines) < 2:
        raise AlistError("missing header", 1)
    lineno, first = lines[0]
    header = _ints(first, lineno)
    if len(header) != 2 or header[0] <= 0 or header[1] < 0:
        raise AlistError("header must be 'n m'", lineno)
    n, m = header
    lineno, second = lines[1]
    maxes = _ints(second, lineno)
    if len(maxes) != 2:
        raise AlistError("second line must hold the max column and row degrees", lineno)
    max_c, max_r = maxes
    pos = 2

    def take_numbers(count: int, what: str) -> list[int]:
        nonlocal pos
        out: list[int] = []
        while len(out) < count:
            if pos >= len(lines):
                raise AlistError(f"unexpected end of input while reading {what}", lines[-1][0])
            ln_no, ln = lines[pos]
            out.extend(_ints(ln, ln_no))
            pos += 1
        if len(out) != count:
            raise AlistError(f"expected {count} {what}, got {len(out)}", lines[pos - 1][0])
        return out

    col_deg = take_numbers(n, "column degrees") if n else []
    row_deg = take_numbers(m, "row degrees") if m else []
    if col_deg and max(col_deg) > max_c:
        raise AlistError("column degree exceeds declared maximum", lines[1][0])
    if row_deg and max(row_deg) > max_r:
        raise AlistError("row degree exceeds declared maximum", lines[1][0])

    dense = np.zeros((m, n), dtype=np.uint8)
    for j in range(n):
        # an empty list may be a zero-padded line or (blank, hence skipped) nothing
        if col_deg[j] == 0 and (pos >= len(lines) or any(_ints(lines[pos][1], lines[pos][0]))):
            continue
        if pos >= len(lines):
            raise AlistError("missing column index lists", lines[-1][0])
        ln_no, ln = lines[pos]
        pos += 1
        entries = [x for x in _ints(ln, ln_no) if x != 0]
        if len(entries) != col_deg[j]:
            raise AlistError(f"column {j + 1} lists {len(entries)} entries, degree says {col_deg[j]}", ln_no)
        for x in entries:
            if not 1 <= x <= m:
                raise AlistError(f"row index {x} out of range", ln_no)
            dense[x - 1, j] = 1
    seen = np.zeros((m, n), dtype=np.uint8)
    for i in range(m):
        # an empty list may be a zero-padded line or (blank, hence skipped) nothing
        if row_deg[i] == 0 and (pos >= len(lines) or any(_ints(lines[pos][1], lines[pos][0]))):
            continue
        if pos >= len(lines):
            raise AlistError("missing row index lists", lines[-1][0])
        ln_no, ln = lines[pos]
        pos += 1
        entries = [x for x in _ints(ln, ln_no) if x != 0]
        if len(entries) != row_deg[i]:
            raise AlistError(f"row {i + 1} lists {len(entries)} entries, degree says {row_deg[i]}", ln_no)
        for x in entries:
            if not 1 <= x <= n:
                raise AlistError(f"column index {x} out of range", ln_no)
            seen[i, x - 1] = 1
    if not np.array_equal(seen, dense):
        raise AlistError("row lists disagree with column lists", lines[-1][0])
    if m == 0:
        return BitMatrix(0, n)
    return BitMatrix.from_dense(dense)
