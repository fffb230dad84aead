"""Connectivity-constrained CX synthesis of GF(2) linear maps.

Convention: a CX(c, t) is the row operation "row t ^= row c" on the wire
label matrix, so :func:`simulate_linear_action` of a circuit is the basis
transform ``A`` that :func:`~archphase.circuit.extract_phase_polynomial`
reports.  :func:`steiner_gauss` reduces ``m`` to the identity with such
row operations and returns them in reverse, which realizes ``m`` because
each operation is its own inverse.
"""

from __future__ import annotations

from .arch import Architecture, SteinerTree, elimination_order, steiner_tree
from .circuit import CX, Circuit
from .gf2 import BitMatrix, SingularMatrixError

Op = tuple[int, int]  # (target, source): row target ^= row source


def simulate_linear_action(c: Circuit) -> BitMatrix:
    """GF(2) action of a CX-only circuit, starting from the identity."""
    m = BitMatrix.identity(c.n)
    for g in c:
        if not isinstance(g, CX):
            raise TypeError(f"simulate_linear_action accepts CX gates only, got {g!r}")
        m.row_add(g.target, g.control)
    return m


def _fan_in(tree: SteinerTree) -> list[Op]:
    """Ops leaving ``root ^= sum of the other terminals`` and every other row unchanged."""
    root = tree.root
    post = tree.postorder()
    steiner = tree.steiner_nodes
    # cancel Steiner contributions: each Steiner node is copied into one child
    prep = [(tree.children[s][0], s) for _, s in post if s in steiner]
    ops = list(prep)
    ops.extend((p, c) for p, c in post)
    for v in _preorder_nodes(tree):
        if v == root:
            continue
        for c in tree.children.get(v, ()):
            ops.append((v, c))
    ops.extend(reversed(prep))
    return ops


def _preorder_nodes(tree: SteinerTree) -> list[int]:
    return [tree.root] + [c for _, c in tree.preorder()]


def _fan_out(tree: SteinerTree) -> list[Op]:
    """Ops leaving ``t ^= root`` for every terminal ``t`` and every other row unchanged."""
    return [(s, t) for t, s in reversed(_fan_in(tree))]


def _apply(rows: list[int], ops: list[Op], out: list[Op]) -> None:
    for t, s in ops:
        rows[t] ^= rows[s]
        out.append((t, s))


def steiner_gauss(m: BitMatrix, g: Architecture) -> Circuit:
    """CX circuit whose :func:`simulate_linear_action` equals ``m``; every CX is an edge of ``g``.

    Pivots follow an order whose every suffix is connected in ``g``.  In the
    forward pass each pivot column is cleared below the pivot through a
    Steiner tree confined to the unfinished rows (fill, then clear).  The
    backward pass clears the remaining entries with exact fan-outs from the
    pivot row, which may route through any vertex because Steiner rows are
    restored.
    """
    n = g.n
    if m.shape != (n, n):
        raise ValueError(f"matrix shape {m.shape} does not match {n}-qubit architecture")
    rows = list(m.rows)
    ops: list[Op] = []
    order = elimination_order(g)
    remaining = set(range(n))

    for v in order:
        bit = 1 << v
        ones = [r for r in remaining if rows[r] & bit]
        if not ones:
            raise SingularMatrixError(f"matrix is singular (no pivot for column {v})")
        tree = steiner_tree(g, v, ones, within=remaining)
        post = tree.postorder()
        # fill Steiner rows bottom-up, then clear every non-root row
        for p, c in post:
            if not rows[p] & bit and rows[c] & bit:
                rows[p] ^= rows[c]
                ops.append((p, c))
        _apply(rows, [(c, p) for p, c in post], ops)
        remaining.discard(v)

    for v in reversed(order):
        bit = 1 << v
        targets = [r for r in range(n) if r != v and rows[r] & bit]
        if not targets:
            continue
        tree = steiner_tree(g, v, targets + [v])
        _apply(rows, _fan_out(tree), ops)

    if any(r != 1 << i for i, r in enumerate(rows)):
        raise AssertionError("elimination did not reach the identity")
    c = Circuit(n)
    for t, s in reversed(ops):
        if not g.are_adjacent(t, s):
            raise AssertionError(f"non-adjacent row operation {s}->{t}")
        c.cx(s, t)
    return c
