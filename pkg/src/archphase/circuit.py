"""CX/RZ circuit IR, parity-label extraction, CX metrics and OpenQASM 2.0 I/O."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Union

from .gf2 import BitMatrix
from .phasepoly import PhasePolynomial, from_terms, parse_angle, PhasePolyParseError


class QasmError(ValueError):
    pass


@dataclass(frozen=True)
class CX:
    control: int
    target: int

    def __post_init__(self) -> None:
        if self.control == self.target:
            raise ValueError(f"CX control and target coincide ({self.control})")
        if self.control < 0 or self.target < 0:
            raise ValueError("qubit indices must be non-negative")

    @property
    def qubits(self) -> tuple[int, int]:
        return (self.control, self.target)


@dataclass(frozen=True)
class RZ:
    qubit: int
    angle: float

    def __post_init__(self) -> None:
        if self.qubit < 0:
            raise ValueError("qubit indices must be non-negative")

    @property
    def qubits(self) -> tuple[int]:
        return (self.qubit,)


Gate = Union[CX, RZ]


class Circuit:
    """Ordered gate list over ``n`` qubits."""

    __slots__ = ("n", "_gates")

    def __init__(self, n: int, gates: Iterable[Gate] = ()) -> None:
        if n < 0:
            raise ValueError("qubit count must be non-negative")
        self.n = n
        self._gates: list[Gate] = []
        for g in gates:
            self.append(g)

    def append(self, gate: Gate) -> None:
        if not isinstance(gate, (CX, RZ)):
            raise TypeError(f"unsupported gate {gate!r}")
        for q in gate.qubits:
            if q >= self.n:
                raise ValueError(f"qubit {q} out of range for {self.n} qubits")
        self._gates.append(gate)

    def cx(self, control: int, target: int) -> None:
        self.append(CX(control, target))

    def rz(self, qubit: int, angle: float) -> None:
        self.append(RZ(qubit, angle))

    def extend(self, gates: Iterable[Gate]) -> None:
        for g in gates:
            self.append(g)

    @property
    def gates(self) -> tuple[Gate, ...]:
        return tuple(self._gates)

    def __iter__(self) -> Iterator[Gate]:
        return iter(self._gates)

    def __len__(self) -> int:
        return len(self._gates)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Circuit):
            return NotImplemented
        return self.n == other.n and self._gates == other._gates

    def __repr__(self) -> str:
        return f"Circuit(n={self.n}, gates={len(self._gates)})"

    def cx_gates(self) -> list[CX]:
        return [g for g in self._gates if isinstance(g, CX)]


def extract_phase_polynomial(c: Circuit) -> PhasePolynomial:
    """Recover ``(f, A)`` by labelling every wire segment with its parity.

    Wire ``i`` starts as ``x_i``.  A CX leaves the control label alone and
    XORs it into the target; an RZ adds its angle to the current label.
    Row ``i`` of the returned transform is the final label of wire ``i``.
    """
    labels = [1 << i for i in range(c.n)]
    acc: list[tuple[int, float]] = []
    for g in c:
        if isinstance(g, CX):
            labels[g.target] ^= labels[g.control]
        elif isinstance(g, RZ):
            acc.append((labels[g.qubit], g.angle))
        else:
            raise TypeError(f"unsupported gate {g!r}")
    if c.n == 0:
        raise ValueError("cannot extract from a zero-qubit circuit")
    return from_terms(c.n, acc, BitMatrix(labels, c.n))


def cx_count(c: Circuit) -> int:
    return sum(1 for g in c if isinstance(g, CX))


def cx_depth(c: Circuit) -> int:
    """Critical-path length over CX gates; RZ gates are free."""
    level = [0] * c.n
    depth = 0
    for g in c:
        if isinstance(g, CX):
            lvl = max(level[g.control], level[g.target]) + 1
            level[g.control] = level[g.target] = lvl
            if lvl > depth:
                depth = lvl
    return depth


# OpenQASM ---------------------------------------------------------------------


def to_qasm(c: Circuit, register: str = "q") -> str:
    out = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg {register}[{c.n}];"]
    for g in c:
        if isinstance(g, CX):
            out.append(f"cx {register}[{g.control}],{register}[{g.target}];")
        else:
            out.append(f"rz({format(g.angle, '.17g')}) {register}[{g.qubit}];")
    return "\n".join(out) + "\n"


_QREG = re.compile(r"^qreg\s+([A-Za-z_]\w*)\s*\[\s*(\d+)\s*\]$")
_ARG = re.compile(r"^([A-Za-z_]\w*)\s*\[\s*(\d+)\s*\]$")
_GATE = re.compile(r"^([A-Za-z_]\w*)\s*(?:\((.*)\))?\s*(.*)$")


def from_qasm(text: str) -> Circuit:
    """Parse the OpenQASM 2.0 subset ``qreg``/``cx``/``rz``/``u1``.

    Several ``qreg`` declarations are laid out consecutively in declaration
    order.  Anything else raises :class:`QasmError` naming the line.
    """
    regs: dict[str, tuple[int, int]] = {}
    total = 0
    pending: list[tuple[int, str, str | None, list[tuple[str, int]]]] = []
    body = re.sub(r"//[^\n]*", "", text)
    lineno = 1
    seen_header = False
    for raw_line in body.split("\n"):
        *stmts, tail = raw_line.split(";")
        if tail.strip():
            raise QasmError(f"line {lineno}: missing ';' after {tail.strip()!r}")
        for stmt in stmts:
            s = stmt.strip()
            if not s:
                continue
            if s.startswith("OPENQASM"):
                if s.split()[1:] != ["2.0"]:
                    raise QasmError(f"line {lineno}: only OPENQASM 2.0 is supported")
                seen_header = True
                continue
            if s.startswith("include"):
                continue
            m = _QREG.match(s)
            if m:
                name, size = m.group(1), int(m.group(2))
                if name in regs:
                    raise QasmError(f"line {lineno}: register {name!r} declared twice")
                regs[name] = (total, size)
                total += size
                continue
            m = _GATE.match(s)
            if not m:
                raise QasmError(f"line {lineno}: cannot parse {s!r}")
            name, param, args = m.group(1), m.group(2), m.group(3)
            if name not in ("cx", "CX", "rz", "u1"):
                raise QasmError(f"line {lineno}: unsupported gate {name!r}")
            operands = []
            for a in (x.strip() for x in args.split(",")):
                am = _ARG.match(a)
                if not am:
                    raise QasmError(f"line {lineno}: bad operand {a!r}")
                operands.append((am.group(1), int(am.group(2))))
            pending.append((lineno, name, param, operands))
        lineno += 1
    if not seen_header:
        raise QasmError("missing 'OPENQASM 2.0;' header")

    c = Circuit(total)
    for ln, name, param, operands in pending:
        qubits = []
        for reg, idx in operands:
            if reg not in regs:
                raise QasmError(f"line {ln}: unknown register {reg!r}")
            base, size = regs[reg]
            if idx >= size:
                raise QasmError(f"line {ln}: index {idx} out of range for {reg}[{size}]")
            qubits.append(base + idx)
        if name in ("cx", "CX"):
            if param is not None or len(qubits) != 2:
                raise QasmError(f"line {ln}: cx takes two qubits and no parameter")
            if qubits[0] == qubits[1]:
                raise QasmError(f"line {ln}: cx control equals target")
            c.cx(qubits[0], qubits[1])
        else:
            if param is None or len(qubits) != 1:
                raise QasmError(f"line {ln}: {name} takes one angle and one qubit")
            try:
                c.rz(qubits[0], parse_angle(param))
            except PhasePolyParseError as exc:
                raise QasmError(f"line {ln}: {exc}") from exc
    return c
