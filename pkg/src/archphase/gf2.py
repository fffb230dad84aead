"""Dense GF(2) vectors and matrices with rows packed into Python integers.

Bit ``j`` of a row integer is the entry in column ``j``.  Row XOR is a single
integer operation, which keeps row reductions cheap for the sizes used here
(a few hundred columns at most per row for basis transforms, a few thousand
for parity matrices).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class SingularMatrixError(ValueError):
    """Raised when a matrix that must be invertible over GF(2) is not."""


def _bits_from_string(text: str) -> int:
    value = 0
    for j, ch in enumerate(text):
        if ch == "1":
            value |= 1 << j
        elif ch != "0":
            raise ValueError(f"invalid bit character {ch!r} in {text!r}")
    return value


def _bits_to_string(value: int, length: int) -> str:
    return "".join("1" if value >> j & 1 else "0" for j in range(length))


@dataclass(frozen=True, order=False)
class BitVector:
    """Fixed-length bit string; index 0 is the leftmost character."""

    n: int
    value: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("length must be non-negative")
        if self.value < 0 or self.value >> self.n:
            raise ValueError(f"value {self.value} does not fit in {self.n} bits")

    @classmethod
    def from_string(cls, text: str) -> BitVector:
        return cls(len(text), _bits_from_string(text))

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> BitVector:
        return cls.from_string("".join(str(int(b) & 1) for b in bits))

    @classmethod
    def unit(cls, n: int, index: int) -> BitVector:
        return cls(n, 1 << index)

    def __xor__(self, other: BitVector) -> BitVector:
        if self.n != other.n:
            raise ValueError(f"length mismatch: {self.n} vs {other.n}")
        return BitVector(self.n, self.value ^ other.value)

    def __getitem__(self, index: int) -> int:
        if not 0 <= index < self.n:
            raise IndexError(index)
        return self.value >> index & 1

    def __len__(self) -> int:
        return self.n

    def __str__(self) -> str:
        return _bits_to_string(self.value, self.n)

    def weight(self) -> int:
        return self.value.bit_count()

    def is_zero(self) -> bool:
        return self.value == 0

    def dot(self, other: BitVector) -> int:
        """Inner product over GF(2)."""
        if self.n != other.n:
            raise ValueError(f"length mismatch: {self.n} vs {other.n}")
        return (self.value & other.value).bit_count() & 1

    def sort_key(self) -> str:
        return str(self)


class BitMatrix:
    """Dense ``rows x cols`` matrix over GF(2).

    Mutating operations (:meth:`row_add`, :meth:`swap_rows`, ``m[i, j] = b``)
    work in place; everything else returns a new matrix.
    """

    __slots__ = ("_rows", "_ncols")

    def __init__(self, rows: Iterable[int], ncols: int) -> None:
        self._rows = list(rows)
        self._ncols = ncols
        limit = 1 << ncols
        for r in self._rows:
            if r < 0 or r >= limit:
                raise ValueError(f"row value {r} does not fit in {ncols} columns")

    # construction -----------------------------------------------------------

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> BitMatrix:
        return cls([0] * nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls([1 << i for i in range(n)], n)

    @classmethod
    def from_strings(cls, rows: Sequence[str]) -> BitMatrix:
        if not rows:
            return cls([], 0)
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("rows have different lengths")
        return cls([_bits_from_string(r) for r in rows], width)

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]]) -> BitMatrix:
        return cls.from_strings(["".join(str(int(b) & 1) for b in r) for r in rows])

    @classmethod
    def from_columns(cls, columns: Sequence[int], nrows: int) -> BitMatrix:
        """Build a matrix whose column ``j`` has bit ``i`` of ``columns[j]`` in row ``i``."""
        rows = [0] * nrows
        for j, col in enumerate(columns):
            i = 0
            while col:
                if col & 1:
                    rows[i] |= 1 << j
                col >>= 1
                i += 1
            if i > nrows:
                raise ValueError(f"column {j} has entries beyond row {nrows - 1}")
        return cls(rows, len(columns))

    def copy(self) -> BitMatrix:
        return BitMatrix(self._rows, self._ncols)

    # shape and access -------------------------------------------------------

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def ncols(self) -> int:
        return self._ncols

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self._rows), self._ncols)

    def row(self, i: int) -> int:
        """Packed integer value of row ``i``."""
        return self._rows[i]

    @property
    def rows(self) -> tuple[int, ...]:
        return tuple(self._rows)

    def column(self, j: int) -> int:
        """Packed integer value of column ``j`` (bit ``i`` is row ``i``)."""
        self._check_col(j)
        out = 0
        for i, r in enumerate(self._rows):
            if r >> j & 1:
                out |= 1 << i
        return out

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        self._check_row(i)
        self._check_col(j)
        return self._rows[i] >> j & 1

    def __setitem__(self, key: tuple[int, int], bit: int) -> None:
        i, j = key
        self._check_row(i)
        self._check_col(j)
        if bit & 1:
            self._rows[i] |= 1 << j
        else:
            self._rows[i] &= ~(1 << j)

    def _check_row(self, i: int) -> None:
        if not 0 <= i < len(self._rows):
            raise IndexError(f"row index {i} out of range for {len(self._rows)} rows")

    def _check_col(self, j: int) -> None:
        if not 0 <= j < self._ncols:
            raise IndexError(f"column index {j} out of range for {self._ncols} columns")

    # elementary operations --------------------------------------------------

    def row_add(self, target_row: int, source_row: int) -> BitMatrix:
        """Replace row ``target_row`` by its XOR with row ``source_row``, in place."""
        self._check_row(target_row)
        self._check_row(source_row)
        if target_row == source_row:
            raise ValueError("row_add needs two distinct rows")
        self._rows[target_row] ^= self._rows[source_row]
        return self

    def swap_rows(self, i: int, j: int) -> BitMatrix:
        self._check_row(i)
        self._check_row(j)
        self._rows[i], self._rows[j] = self._rows[j], self._rows[i]
        return self

    # algebra ----------------------------------------------------------------

    def transpose(self) -> BitMatrix:
        return BitMatrix.from_columns(self._rows, self._ncols)

    def __matmul__(self, other: BitMatrix) -> BitMatrix:
        return multiply(self, other)

    def apply(self, vector: int) -> int:
        """Matrix-vector product with a packed column vector."""
        out = 0
        for i, r in enumerate(self._rows):
            if (r & vector).bit_count() & 1:
                out |= 1 << i
        return out

    def rank(self) -> int:
        rows = list(self._rows)
        rank = 0
        for j in range(self._ncols):
            bit = 1 << j
            pivot = next((i for i in range(rank, len(rows)) if rows[i] & bit), None)
            if pivot is None:
                continue
            rows[rank], rows[pivot] = rows[pivot], rows[rank]
            for i in range(len(rows)):
                if i != rank and rows[i] & bit:
                    rows[i] ^= rows[rank]
            rank += 1
        return rank

    def is_square(self) -> bool:
        return len(self._rows) == self._ncols

    def is_identity(self) -> bool:
        return self.is_square() and all(r == 1 << i for i, r in enumerate(self._rows))

    def is_invertible(self) -> bool:
        return self.is_square() and self.rank() == self._ncols

    def inverse(self) -> BitMatrix:
        return invert(self)

    # comparison and display -------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self._ncols == other._ncols and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self._ncols, tuple(self._rows)))

    def to_strings(self) -> list[str]:
        return [_bits_to_string(r, self._ncols) for r in self._rows]

    def to_lists(self) -> list[list[int]]:
        return [[r >> j & 1 for j in range(self._ncols)] for r in self._rows]

    def __str__(self) -> str:
        return "\n".join(self.to_strings())

    def __repr__(self) -> str:
        return f"BitMatrix.from_strings({self.to_strings()!r})"


def row_add(m: BitMatrix, target_row: int, source_row: int) -> BitMatrix:
    """Functional alias for :meth:`BitMatrix.row_add` (mutates ``m``)."""
    return m.row_add(target_row, source_row)


def multiply(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Matrix product over GF(2)."""
    if a.ncols != b.nrows:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    brows = b.rows
    out = []
    for r in a.rows:
        acc = 0
        k = 0
        while r:
            if r & 1:
                acc ^= brows[k]
            r >>= 1
            k += 1
        out.append(acc)
    return BitMatrix(out, b.ncols)


def invert(m: BitMatrix) -> BitMatrix:
    """Gauss-Jordan inverse; the pivot is the first row at or below the diagonal with a 1."""
    if not m.is_square():
        raise ValueError(f"cannot invert non-square matrix of shape {m.shape}")
    n = m.nrows
    rows = list(m.rows)
    inv = [1 << i for i in range(n)]
    for j in range(n):
        bit = 1 << j
        pivot = next((i for i in range(j, n) if rows[i] & bit), None)
        if pivot is None:
            raise SingularMatrixError(f"matrix is singular (no pivot in column {j})")
        if pivot != j:
            rows[j], rows[pivot] = rows[pivot], rows[j]
            inv[j], inv[pivot] = inv[pivot], inv[j]
        for i in range(n):
            if i != j and rows[i] & bit:
                rows[i] ^= rows[j]
                inv[i] ^= inv[j]
    return BitMatrix(inv, n)
