"""Architecture-aware phase polynomial synthesis.

The parity matrix is consumed by a recursion over non-cutting vertices of the
coupling graph.  A *base* frame ``(cols, qubits)`` picks the row that is most
uniform over ``cols`` and splits on it.  The zero half continues on the
smaller qubit set and the ones half goes to a *ones* frame ``(cols, qubits,
row)``, which drains the row with CX gates towards neighbours.  Columns that
reach weight one become RZ gates.  The leftover linear map is handed to
Steiner-Gauss.

Both frame kinds run on an explicit stack, so large instances do not touch
the interpreter's recursion limit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .arch import Architecture, non_cutting_vertices
from .circuit import CX, Circuit
from .gf2 import invert, multiply
from .phasepoly import ParityMatrix, PhasePolynomial, to_parity_matrix
from .steiner_gauss import simulate_linear_action, steiner_gauss

ChooseRow = Callable[[Sequence[int]], int]


class ConnectivityViolation(AssertionError):
    """A CX was requested between qubits that are not coupled."""


class SynthesisError(RuntimeError):
    """An internal invariant of the recursion failed."""


def _iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass
class SynthState:
    g: Architecture
    p: ParityMatrix
    circuit: Circuit
    placed_angles: int = 0
    active: frozenset[int] = frozenset()
    cx_budget: int = 0
    trace: list[str] | None = field(default=None, repr=False)
    live: int = 0

    @classmethod
    def start(cls, p: PhasePolynomial, g: Architecture, trace: list[str] | None = None) -> SynthState:
        pm = to_parity_matrix(p)
        return cls(
            g=g,
            p=pm,
            circuit=Circuit(p.n),
            active=frozenset(range(p.n)),
            cx_budget=2 * p.n * pm.k,
            trace=trace,
            live=(1 << pm.k) - 1,
        )

    def log(self, msg: str) -> None:
        if self.trace is not None:
            self.trace.append(msg)

    def log_matrix(self) -> None:
        if self.trace is None:
            return
        cols = list(_iter_bits(self.live))
        if not cols:
            self.trace.append("  P = (empty)")
            return
        header = " ".join(f"a{j + 1}" for j in cols)
        self.trace.append(f"     {header}")
        for q, row in enumerate(self.p.rows):
            cells = " ".join(f"{row >> j & 1:>{len(f'a{j + 1}')}}" for j in cols)
            self.trace.append(f"  x{q + 1} {cells}")


def reduce_columns(state: SynthState, cols: int) -> int:
    """Emit an RZ for every column of ``cols`` with a single 1 and drop it.

    RZ gates are emitted in ascending column order.  Returns the surviving mask.
    """
    seen1 = seen2 = 0
    rows = state.p.rows
    for row in rows:
        r = row & cols
        seen2 |= seen1 & r
        seen1 |= r
    trivial = seen1 & ~seen2 & cols
    if not trivial:
        return cols
    owner: dict[int, int] = {}
    for q, row in enumerate(rows):
        hit = row & trivial
        for j in _iter_bits(hit):
            owner[j] = q
    for j in sorted(owner):
        q = owner[j]
        if q not in state.active:
            raise SynthesisError(f"phase on qubit {q} outside the active set")
        state.circuit.rz(q, state.p.angles[j])
        state.placed_angles += 1
        state.log(f"RZ(a{j + 1}) on x{q + 1}")
    state.live &= ~trivial
    return cols & ~trivial


def place_cx(state: SynthState, control: int, target: int) -> None:
    """Append CX(control, target) and update ``P[control] ^= P[target]``."""
    if not state.g.are_adjacent(control, target):
        raise ConnectivityViolation(f"CX({control},{target}) is not an edge of {state.g.name}")
    if control not in state.active or target not in state.active:
        raise SynthesisError(f"CX({control},{target}) touches a qubit removed from the recursion")
    state.circuit.append(CX(control, target))
    state.p.rows[control] ^= state.p.rows[target]
    state.cx_budget -= 1
    if state.cx_budget < 0:
        raise SynthesisError("CX budget exhausted; the recursion is not converging")
    state.log(f"CX x{control + 1} -> x{target + 1}")
    state.log_matrix()


def split_cols_on_row(state: SynthState, cols: int, row: int) -> tuple[int, int]:
    """``(cols0, cols1)``: the columns of ``cols`` with a 0, resp. a 1, in ``row``."""
    r = state.p.rows[row]
    return cols & ~r, cols & r


def _default_choice(candidates: Sequence[int]) -> int:
    return candidates[0]


def base_recursion_step(
    state: SynthState, cols: int, qubits: frozenset[int], choose_row: ChooseRow = _default_choice
) -> tuple[int, int, int] | None:
    """Pick the split row for a base frame.

    Returns ``(row, cols0, cols1)`` or ``None`` when there is nothing to do.
    The caller schedules ``base(cols0, qubits - {row})`` before ``ones(cols1, qubits, row)``.
    """
    if not cols or not qubits:
        return None
    if len(qubits) == 1:
        raise SynthesisError("non-trivial columns left on a single qubit")
    total = cols.bit_count()
    rows = state.p.rows
    best = -1
    tied: list[int] = []
    for r in non_cutting_vertices(state.g, qubits):
        ones = (rows[r] & cols).bit_count()
        score = max(ones, total - ones)
        if score > best:
            best, tied = score, [r]
        elif score == best:
            tied.append(r)
    chosen = choose_row(tuple(tied))
    if chosen not in tied:
        raise ValueError(f"row choice {chosen} is not among the best candidates {tied}")
    cols0, cols1 = split_cols_on_row(state, cols, chosen)
    state.log(
        f"base: qubits {{{', '.join(f'x{q + 1}' for q in sorted(qubits))}}}, "
        f"candidates {{{', '.join(f'x{q + 1}' for q in tied)}}}, chose x{chosen + 1}"
    )
    return chosen, cols0, cols1


def ones_recursion_step(state: SynthState, cols: int, qubits: frozenset[int], row: int) -> tuple[int, int] | None:
    """Drain ones out of ``row``; returns ``(cols0, cols1)`` of the follow-up split, or ``None``."""
    if not cols:
        return None
    rows = state.p.rows
    best_n = -1
    best = -1
    for n in state.g.adjacency[row]:
        if n not in qubits:
            continue
        ones = (rows[n] & cols).bit_count()
        if ones > best:
            best, best_n = ones, n
    if best_n < 0:
        raise SynthesisError(f"x{row + 1} has no neighbour in the active qubit set")
    state.log(f"ones: row x{row + 1}, neighbour x{best_n + 1}")
    if best > 0:
        place_cx(state, row, best_n)
        cols = reduce_columns(state, cols)
    else:
        place_cx(state, best_n, row)
        place_cx(state, row, best_n)
    return split_cols_on_row(state, cols, row)


def _run_recursion(state: SynthState, cols: int, choose_row: ChooseRow) -> None:
    # frames: (cols, qubits, row); row < 0 marks a base frame
    stack: list[tuple[int, frozenset[int], int]] = [(cols, state.active, -1)]
    while stack:
        cols, qubits, row = stack.pop()
        state.active = qubits
        if row < 0:
            step = base_recursion_step(state, cols, qubits, choose_row)
            if step is None:
                continue
            row, cols0, cols1 = step
        else:
            step = ones_recursion_step(state, cols, qubits, row)
            if step is None:
                continue
            cols0, cols1 = step
        stack.append((cols1, qubits, row))
        stack.append((cols0, qubits - {row}, -1))
    state.active = frozenset(range(state.g.n))


def synthesize(
    p: PhasePolynomial,
    g: Architecture,
    choose_row: ChooseRow | None = None,
    trace: list[str] | None = None,
) -> Circuit:
    """Synthesize ``p`` as a CX/RZ circuit whose CX gates all lie on edges of ``g``.

    ``choose_row`` receives the tied best rows of each non-empty base frame in
    ascending order and returns one of them; the default takes the lowest.
    When ``trace`` is a list, a readable log of every step is appended to it.
    """
    if p.n != g.n:
        raise ValueError(f"polynomial has {p.n} qubits but architecture {g.name} has {g.n}")
    state = SynthState.start(p, g, trace)
    state.log_matrix()
    cols = reduce_columns(state, state.live)
    _run_recursion(state, cols, choose_row or _default_choice)
    if state.live:
        raise SynthesisError("recursion finished with unsynthesized columns")

    p_prime = simulate_linear_action(Circuit(p.n, state.circuit.cx_gates()))
    rest = multiply(p.transform, invert(p_prime))
    state.log(f"gadget phase done: {len(state.circuit)} gates; synthesizing the remaining linear map")
    tail = steiner_gauss(rest, g)
    state.circuit.extend(tail)
    return state.circuit
