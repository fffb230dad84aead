"""Phase polynomials ``(f, A)`` and their parity-matrix form.

A term maps a nonzero parity (bit ``i`` set when input ``x_i`` participates)
to an RZ angle in radians.  ``transform`` is the basis transform ``A`` with
row ``i`` holding the output parity of wire ``i``, so that the circuit maps
the basis state ``|x>`` to ``|A x>``.
"""

from __future__ import annotations

import ast
import math
import operator
import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .gf2 import BitMatrix, BitVector, SingularMatrixError

TWO_PI = 2.0 * math.pi
ZERO_ANGLE_TOL = 1e-12
DEFAULT_ATOL = 1e-9


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


class PhasePolyParseError(ValueError):
    pass


def normalize_angle(theta: float) -> float:
    """Map ``theta`` into ``[0, 2*pi)``."""
    a = math.fmod(theta, TWO_PI)
    if a < 0:
        a += TWO_PI
    if a >= TWO_PI:
        a = 0.0
    return a


def is_zero_angle(theta: float, tol: float = ZERO_ANGLE_TOL) -> bool:
    a = normalize_angle(theta)
    return a <= tol or TWO_PI - a <= tol


def angle_distance(a: float, b: float) -> float:
    """Distance between two angles on the circle."""
    d = normalize_angle(a - b)
    return min(d, TWO_PI - d)


def _as_parity(p: BitVector | str | int, n: int) -> int:
    if isinstance(p, BitVector):
        if p.n != n:
            raise ValueError(f"parity {p} has length {p.n}, expected {n}")
        return p.value
    if isinstance(p, str):
        if len(p) != n:
            raise ValueError(f"parity {p!r} has length {len(p)}, expected {n}")
        return BitVector.from_string(p).value
    if isinstance(p, int) and not isinstance(p, bool):
        if p < 0 or p >> n:
            raise ValueError(f"parity {p} does not fit in {n} bits")
        return p
    raise TypeError(f"cannot interpret {p!r} as a parity")


def _parity_str(value: int, n: int) -> str:
    return "".join("1" if value >> i & 1 else "0" for i in range(n))


@dataclass(frozen=True)
class PhasePolynomial:
    """Immutable phase polynomial; build it with :func:`from_terms`."""

    n: int
    terms: Mapping[int, float]
    transform: BitMatrix = field(compare=False)

    def __post_init__(self) -> None:
        if self.transform.shape != (self.n, self.n):
            raise ValueError(f"transform must be {self.n}x{self.n}, got {self.transform.shape}")

    def __len__(self) -> int:
        return len(self.terms)

    def parities(self) -> list[int]:
        """Support of ``f`` in canonical order (lexicographic bitstring, qubit 0 first)."""
        return sorted(self.terms, key=lambda v: _parity_str(v, self.n))

    def items(self) -> list[tuple[BitVector, float]]:
        return [(BitVector(self.n, p), self.terms[p]) for p in self.parities()]

    def angle(self, parity: BitVector | str | int) -> float:
        return self.terms.get(_as_parity(parity, self.n), 0.0)

    def evaluate(self, x: int) -> float:
        """Phase ``sum_y f(y) * (y . x)`` for the packed input ``x``, in ``[0, 2*pi)``."""
        total = 0.0
        for y, a in self.terms.items():
            if (y & x).bit_count() & 1:
                total += a
        return normalize_angle(total)

    def is_close(self, other: PhasePolynomial, atol: float = DEFAULT_ATOL) -> bool:
        """Same support, angles equal modulo 2*pi within ``atol``, equal transforms."""
        return not self.differences(other, atol)

    def differences(self, other: PhasePolynomial, atol: float = DEFAULT_ATOL) -> list[str]:
        """Human-readable list of mismatches against ``other``."""
        if self.n != other.n:
            return [f"qubit count {self.n} != {other.n}"]
        out = []
        for y in sorted(set(self.terms) | set(other.terms)):
            a = self.terms.get(y)
            b = other.terms.get(y)
            if a is None or b is None:
                out.append(f"parity {_parity_str(y, self.n)} only in {'right' if a is None else 'left'}")
            elif angle_distance(a, b) > atol:
                out.append(f"parity {_parity_str(y, self.n)}: angle {a!r} != {b!r}")
        if self.transform != other.transform:
            out.append("basis transforms differ")
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PhasePolynomial):
            return NotImplemented
        return self.n == other.n and dict(self.terms) == dict(other.terms) and self.transform == other.transform

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.terms.items()), self.transform))


def from_terms(
    n: int,
    terms: Iterable[tuple[BitVector | str | int, float]] | Mapping,
    transform: BitMatrix | None = None,
) -> PhasePolynomial:
    """Build a phase polynomial, merging repeated parities and dropping zero angles.

    Angles are summed modulo 2*pi; a term whose total is within 1e-12 of 0
    is removed.  ``transform`` defaults to the identity and must be invertible.
    """
    if n < 1:
        raise ValueError("a phase polynomial needs at least one qubit")
    pairs = terms.items() if isinstance(terms, Mapping) else terms
    acc: dict[int, float] = {}
    for parity, theta in pairs:
        y = _as_parity(parity, n)
        if y == 0:
            raise DomainError("the all-zero parity is not a valid term")
        acc[y] = acc.get(y, 0.0) + float(theta)
    merged = {y: normalize_angle(a) for y, a in acc.items() if not is_zero_angle(a)}
    if transform is None:
        transform = BitMatrix.identity(n)
    elif transform.shape != (n, n):
        raise ValueError(f"transform must be {n}x{n}, got {transform.shape}")
    elif not transform.is_invertible():
        raise SingularMatrixError("basis transform is not invertible over GF(2)")
    return PhasePolynomial(n, merged, transform.copy())


# parity matrix ---------------------------------------------------------------


class ParityMatrix:
    """Qubits-by-gadgets binary matrix with one angle per column.

    Rows are packed integers: bit ``j`` of ``rows[q]`` is set when qubit ``q``
    participates in gadget ``j``.  Mutated in place by synthesis.
    """

    __slots__ = ("n", "rows", "angles")

    def __init__(self, n: int, columns: list[int], angles: list[float]) -> None:
        if len(columns) != len(angles):
            raise ValueError("one angle per column is required")
        if len(set(columns)) != len(columns):
            raise DomainError("parity matrix columns must be unique")
        if any(c == 0 for c in columns):
            raise DomainError("parity matrix columns must be nonzero")
        self.n = n
        self.rows = BitMatrix.from_columns(columns, n).rows
        self.rows = list(self.rows)
        self.angles = list(angles)

    @property
    def k(self) -> int:
        return len(self.angles)

    def column(self, j: int) -> int:
        out = 0
        for q, r in enumerate(self.rows):
            if r >> j & 1:
                out |= 1 << q
        return out

    def columns(self) -> list[int]:
        return [self.column(j) for j in range(self.k)]

    def to_bitmatrix(self) -> BitMatrix:
        return BitMatrix(self.rows, self.k)

    def render(self, cols: Iterable[int] | None = None) -> str:
        """Rows of 0/1 restricted to ``cols`` (all columns by default), one qubit per line."""
        idx = list(range(self.k)) if cols is None else list(cols)
        return "\n".join(" ".join(str(r >> j & 1) for j in idx) for r in self.rows)


def to_parity_matrix(p: PhasePolynomial) -> ParityMatrix:
    """Columns are the support of ``f`` in canonical order."""
    cols = p.parities()
    return ParityMatrix(p.n, cols, [p.terms[c] for c in cols])


# random instances ------------------------------------------------------------


def random_phase_polynomial(n: int, k: int, seed: int | str | None = None) -> PhasePolynomial:
    """``k`` distinct nonzero parities drawn uniformly, angles uniform in ``[0, 2*pi)``.

    Duplicates are rejected and redrawn.  The transform is the identity.
    """
    if n < 1 or k < 1:
        raise DomainError("need n >= 1 and k >= 1")
    if k > (1 << n) - 1:
        raise DomainError(f"cannot draw {k} distinct nonzero parities on {n} qubits")
    rng = random.Random(seed)
    terms: dict[int, float] = {}
    while len(terms) < k:
        y = rng.getrandbits(n)
        if y == 0 or y in terms:
            continue
        theta = rng.random() * TWO_PI
        # a zero angle would be dropped; redraw to keep exactly k terms
        while is_zero_angle(theta):
            theta = rng.random() * TWO_PI
        terms[y] = theta
    return from_terms(n, terms.items())


# text format -----------------------------------------------------------------

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv}


def parse_angle(text: str) -> float:
    """Evaluate a real literal or an arithmetic expression in ``pi`` such as ``3*pi/4``."""
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise PhasePolyParseError(f"cannot parse angle {text!r}") from exc

    def ev(node: ast.AST) -> float:
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) and not isinstance(node.value, bool):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id == "pi":
            return math.pi
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            try:
                return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
            except ZeroDivisionError as exc:
                raise PhasePolyParseError(f"division by zero in angle {text!r}") from exc
        raise PhasePolyParseError(f"unsupported angle expression {text!r}")

    value = ev(tree)
    if not math.isfinite(value):
        raise PhasePolyParseError(f"angle {text!r} is not finite")
    return value


def parse_phasepoly(text: str) -> PhasePolynomial:
    """Parse the line format::

        qubits 3
        011 3*pi/4
        110 0.5
        transform
        100
        010
        001

    Blank lines and ``#`` comments are ignored; the transform block is optional.
    """
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((lineno, line))
    if not lines:
        raise PhasePolyParseError("empty phase polynomial")
    lineno, first = lines[0]
    head = first.split()
    if len(head) != 2 or head[0] != "qubits":
        raise PhasePolyParseError(f"line {lineno}: expected 'qubits N'")
    try:
        n = int(head[1])
    except ValueError as exc:
        raise PhasePolyParseError(f"line {lineno}: bad qubit count {head[1]!r}") from exc
    if n < 1:
        raise PhasePolyParseError(f"line {lineno}: qubit count must be positive")

    terms: list[tuple[str, float]] = []
    transform_rows: list[str] | None = None
    for lineno, line in lines[1:]:
        if transform_rows is not None:
            if len(line) != n or set(line) - {"0", "1"}:
                raise PhasePolyParseError(f"line {lineno}: transform row must be {n} bits")
            transform_rows.append(line)
            continue
        if line == "transform":
            transform_rows = []
            continue
        bits, _, angle = line.partition(" ")
        if len(bits) != n or set(bits) - {"0", "1"}:
            raise PhasePolyParseError(f"line {lineno}: parity {bits!r} must be {n} bits")
        if not angle.strip():
            raise PhasePolyParseError(f"line {lineno}: missing angle")
        try:
            terms.append((bits, parse_angle(angle)))
        except PhasePolyParseError as exc:
            raise PhasePolyParseError(f"line {lineno}: {exc}") from exc

    transform = None
    if transform_rows is not None:
        if len(transform_rows) != n:
            raise PhasePolyParseError(f"transform block has {len(transform_rows)} rows, expected {n}")
        transform = BitMatrix.from_strings(transform_rows)
    try:
        return from_terms(n, terms, transform)
    except DomainError as exc:
        raise PhasePolyParseError(str(exc)) from exc
    except SingularMatrixError as exc:
        raise PhasePolyParseError(f"transform block: {exc}") from exc


def render_phasepoly(p: PhasePolynomial) -> str:
    """Inverse of :func:`parse_phasepoly`; angles use ``repr`` so they round-trip exactly."""
    out = [f"qubits {p.n}"]
    for y in p.parities():
        out.append(f"{_parity_str(y, p.n)} {p.terms[y]!r}")
    if not p.transform.is_identity():
        out.append("transform")
        out.extend(p.transform.to_strings())
    return "\n".join(out) + "\n"
