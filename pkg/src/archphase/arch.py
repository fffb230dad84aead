"""Qubit connectivity graphs: adjacency, non-cutting vertices and Steiner trees."""

from __future__ import annotations

import json
import math
import re
from collections import deque
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping


class ArchitectureError(ValueError):
    """Invalid architecture description or an impossible graph query."""


def _norm_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class GraphView:
    """Undirected graph on an arbitrary vertex subset; vertex labels are preserved."""

    vertices: frozenset[int]
    edges: frozenset[tuple[int, int]]
    adjacency: Mapping[int, tuple[int, ...]] = field(repr=False, compare=False)

    def neighbours(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def is_connected(self) -> bool:
        return _is_connected(self.vertices, self.adjacency)


class Architecture:
    """Connected undirected graph on vertices ``0..n-1``.

    Immutable after construction.  ``adjacency[v]`` lists neighbours in
    ascending order, which fixes every tie-break that walks neighbours.
    """

    __slots__ = ("name", "n", "edges", "adjacency", "_neighbour_masks")

    def __init__(self, name: str, n: int, edges: Iterable[tuple[int, int]]) -> None:
        if n < 1:
            raise ArchitectureError(f"{name}: an architecture needs at least one qubit")
        normalised: set[tuple[int, int]] = set()
        for raw in edges:
            try:
                u, v = (int(x) for x in raw)
            except (TypeError, ValueError) as exc:
                raise ArchitectureError(f"{name}: malformed edge {raw!r}") from exc
            if u == v:
                raise ArchitectureError(f"{name}: self-loop on vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ArchitectureError(f"{name}: edge ({u}, {v}) out of range for {n} qubits")
            e = _norm_edge(u, v)
            if e in normalised:
                raise ArchitectureError(f"{name}: duplicate edge ({u}, {v})")
            normalised.add(e)
        adj: dict[int, list[int]] = {v: [] for v in range(n)}
        for u, v in normalised:
            adj[u].append(v)
            adj[v].append(u)
        self.name = name
        self.n = n
        self.edges = frozenset(normalised)
        self.adjacency = {v: tuple(sorted(ns)) for v, ns in adj.items()}
        self._neighbour_masks = [sum(1 << u for u in self.adjacency[v]) for v in range(n)]
        if not _is_connected(frozenset(range(n)), self.adjacency):
            raise ArchitectureError(f"{name}: graph is not connected")

    def __repr__(self) -> str:
        return f"Architecture({self.name!r}, n={self.n}, edges={len(self.edges)})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Architecture):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    @property
    def vertices(self) -> range:
        return range(self.n)

    def are_adjacent(self, u: int, v: int) -> bool:
        return _norm_edge(u, v) in self.edges

    def neighbour_mask(self, v: int) -> int:
        """Neighbours of ``v`` packed as a bit mask."""
        return self._neighbour_masks[v]

    def view(self) -> GraphView:
        return induced_subgraph(self, range(self.n))

    def to_dict(self) -> dict:
        return {"name": self.name, "qubits": self.n, "edges": [list(e) for e in sorted(self.edges)]}


def _is_connected(vertices: frozenset[int] | set[int], adjacency: Mapping[int, Iterable[int]]) -> bool:
    if not vertices:
        return True
    start = min(vertices)
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u in adjacency[v]:
            if u in vertices and u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(vertices)


# queries ---------------------------------------------------------------------


def induced_subgraph(g: Architecture, subset: Iterable[int]) -> GraphView:
    verts = frozenset(subset)
    if not verts:
        raise ArchitectureError("induced subgraph of an empty vertex set")
    bad = [v for v in verts if not 0 <= v < g.n]
    if bad:
        raise ArchitectureError(f"vertices {sorted(bad)} not in {g.name}")
    adj = {v: tuple(u for u in g.adjacency[v] if u in verts) for v in verts}
    edges = frozenset(e for e in g.edges if e[0] in verts and e[1] in verts)
    return GraphView(verts, edges, adj)


def neighbours(g: Architecture, v: int, within: Iterable[int] | None = None) -> list[int]:
    """Neighbours of ``v`` inside ``within`` (all vertices when omitted), ascending."""
    if within is None:
        return list(g.adjacency[v])
    allowed = within if isinstance(within, (set, frozenset)) else set(within)
    if v not in allowed:
        raise ArchitectureError(f"vertex {v} is not in the given vertex set")
    return [u for u in g.adjacency[v] if u in allowed]


def articulation_points(g: Architecture, subset: Iterable[int]) -> set[int]:
    """Cut vertices of the subgraph induced by ``subset``.

    Iterative lowlink DFS; the induced subgraph must be connected.
    """
    verts = subset if isinstance(subset, (set, frozenset)) else set(subset)
    if not verts:
        return set()
    adj = g.adjacency
    root = min(verts)
    disc = {root: 0}
    low = {root: 0}
    cut: set[int] = set()
    root_children = 0
    counter = 1
    # frames of (vertex, parent, neighbour iterator)
    stack = [(root, -1, iter(adj[root]))]
    while stack:
        v, parent, it = stack[-1]
        advanced = False
        for u in it:
            if u not in verts or u == parent:
                continue
            if u in disc:
                if disc[u] < low[v]:
                    low[v] = disc[u]
                continue
            disc[u] = low[u] = counter
            counter += 1
            if v == root:
                root_children += 1
            stack.append((u, v, iter(adj[u])))
            advanced = True
            break
        if advanced:
            continue
        stack.pop()
        if parent >= 0:
            if low[v] < low[parent]:
                low[parent] = low[v]
            if parent != root and low[v] >= disc[parent]:
                cut.add(parent)
    if len(disc) != len(verts):
        raise ArchitectureError("induced subgraph is disconnected")
    if root_children > 1:
        cut.add(root)
    return cut


def non_cutting_vertices(g: Architecture, subset: Iterable[int]) -> list[int]:
    """Vertices of ``subset`` whose removal keeps the induced subgraph connected, ascending."""
    verts = subset if isinstance(subset, (set, frozenset)) else set(subset)
    if len(verts) == 1:
        return list(verts)
    cut = articulation_points(g, verts)
    return sorted(v for v in verts if v not in cut)


def elimination_order(g: Architecture, subset: Iterable[int] | None = None) -> list[int]:
    """Order vertices so that every suffix of the order induces a connected subgraph.

    Built by repeatedly removing the lowest-index non-cutting vertex.
    """
    remaining = set(range(g.n) if subset is None else subset)
    order = []
    while remaining:
        v = non_cutting_vertices(g, remaining)[0]
        order.append(v)
        remaining.discard(v)
    return order


def bfs_paths(g: Architecture, source: int, within: frozenset[int] | set[int] | None = None) -> tuple[dict[int, int], dict[int, int]]:
    """Distances and BFS parents from ``source``; neighbours are expanded in ascending order."""
    dist = {source: 0}
    parent = {source: source}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for u in g.adjacency[v]:
            if within is not None and u not in within:
                continue
            if u not in dist:
                dist[u] = dist[v] + 1
                parent[u] = v
                queue.append(u)
    return dist, parent


# Steiner trees ------------------------------------------------------------------


@dataclass(frozen=True)
class SteinerTree:
    """Tree in the architecture spanning ``terminals`` (which include ``root``)."""

    root: int
    terminals: frozenset[int]
    edges: frozenset[tuple[int, int]]
    parent: Mapping[int, int] = field(repr=False, compare=False)
    children: Mapping[int, tuple[int, ...]] = field(repr=False, compare=False)

    @property
    def nodes(self) -> frozenset[int]:
        return frozenset(self.parent) | {self.root}

    @property
    def steiner_nodes(self) -> frozenset[int]:
        return self.nodes - self.terminals

    def preorder(self) -> list[tuple[int, int]]:
        """``(parent, child)`` pairs, parents before their children."""
        return _dfs_pairs(self.root, self.children, post=False)

    def postorder(self) -> list[tuple[int, int]]:
        """``(parent, child)`` pairs, every child's subtree before the child itself."""
        return _dfs_pairs(self.root, self.children, post=True)


def _dfs_pairs(root: int, children: Mapping[int, tuple[int, ...]], post: bool) -> list[tuple[int, int]]:
    out: list[tuple[int, int]] = []
    # frames: (node, parent, next child index)
    stack: list[list[int]] = [[root, -1, 0]]
    while stack:
        frame = stack[-1]
        v, p, idx = frame
        kids = children.get(v, ())
        if idx == 0 and not post and p >= 0:
            out.append((p, v))
        if idx < len(kids):
            frame[2] += 1
            stack.append([kids[idx], v, 0])
            continue
        stack.pop()
        if post and p >= 0:
            out.append((p, v))
    return out


def steiner_tree(
    g: Architecture,
    root: int,
    terminals: Iterable[int],
    within: Iterable[int] | None = None,
) -> SteinerTree:
    """Approximate Steiner tree through the metric closure of the terminals.

    Shortest-path distances between terminals define a complete graph; its
    minimum spanning tree is expanded back into graph paths, the union is
    reduced to a BFS spanning tree from ``root`` and non-terminal leaves are
    pruned.  Ties always go to the lowest vertex index.  ``within`` limits
    the vertices the tree may use.
    """
    terms = set(terminals)
    terms.add(root)
    allowed = frozenset(range(g.n) if within is None else within)
    if not terms <= allowed:
        raise ArchitectureError(f"terminals {sorted(terms - allowed)} outside the allowed vertex set")
    ordered = sorted(terms)
    if len(ordered) == 1:
        return SteinerTree(root, frozenset(terms), frozenset(), {}, {})

    bfs = {t: bfs_paths(g, t, allowed) for t in ordered}
    for t in ordered:
        missing = terms - bfs[t][0].keys()
        if missing:
            raise ArchitectureError(f"terminals {sorted(missing)} unreachable from {t}")

    # Prim on the metric closure, starting from the root
    in_tree = {root}
    best = {t: (bfs[root][0][t], root) for t in ordered if t != root}
    union_nodes = {root}
    while best:
        t = min(best, key=lambda x: (best[x][0], x, best[x][1]))
        _, src = best.pop(t)
        in_tree.add(t)
        # expand the closure edge src-t into a graph path (parents come from t's BFS)
        parents = bfs[t][1]
        v = src
        while v != t:
            union_nodes.add(v)
            v = parents[v]
        union_nodes.add(t)
        for other in best:
            d = bfs[t][0][other]
            if (d, t) < best[other]:
                best[other] = (d, t)

    # spanning tree of the union from the root, then prune
    _, par = bfs_paths(g, root, frozenset(union_nodes))
    parent = {v: p for v, p in par.items() if v != root}
    kids: dict[int, list[int]] = {}
    for v, p in parent.items():
        kids.setdefault(p, []).append(v)
    leaves = [v for v in parent if v not in kids and v not in terms]
    while leaves:
        leaf = leaves.pop()
        p = parent.pop(leaf)
        siblings = kids[p]
        siblings.remove(leaf)
        if not siblings:
            del kids[p]
            if p != root and p not in terms:
                leaves.append(p)
    children = {v: tuple(sorted(cs)) for v, cs in kids.items()}
    edges = frozenset(_norm_edge(v, p) for v, p in parent.items())
    return SteinerTree(root, frozenset(terms), edges, dict(parent), children)


# catalog and loading -------------------------------------------------------------


def line(n: int) -> Architecture:
    return Architecture(f"line_{n}", n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Architecture:
    if n < 3:
        return Architecture(f"cycle_{n}", n, [(i, i + 1) for i in range(n - 1)])
    return Architecture(f"cycle_{n}", n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Architecture:
    return Architecture(f"complete_{n}", n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def grid(rows: int, cols: int, name: str | None = None) -> Architecture:
    """Row-major grid: vertex ``r * cols + c``."""
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Architecture(name or f"grid_{rows}x{cols}", rows * cols, edges)


def square(n: int) -> Architecture:
    side = math.isqrt(n)
    if side * side != n:
        raise ArchitectureError(f"square_{n}: {n} is not a perfect square")
    return grid(side, side, name=f"square_{n}")


_FAMILIES = {"line": line, "cycle": cycle, "complete": complete, "square": square}
_FAMILY_RE = re.compile(r"^(line|cycle|complete|square)_(\d+)$")
_GRID_RE = re.compile(r"^grid_(\d+)x(\d+)$")


def catalog_names() -> list[str]:
    """Names of the bundled architecture files."""
    root = resources.files("archphase") / "catalog"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def parse_architecture(source: str | Mapping, origin: str = "<string>") -> Architecture:
    """Build an architecture from JSON text (or an already decoded mapping)."""
    if isinstance(source, str):
        try:
            data = json.loads(source)
        except json.JSONDecodeError as exc:
            raise ArchitectureError(f"{origin}: not valid JSON ({exc})") from exc
    else:
        data = source
    if not isinstance(data, Mapping):
        raise ArchitectureError(f"{origin}: expected an object with name, qubits and edges")
    missing = [k for k in ("name", "qubits", "edges") if k not in data]
    if missing:
        raise ArchitectureError(f"{origin}: missing field(s) {', '.join(missing)}")
    name, qubits, edges = data["name"], data["qubits"], data["edges"]
    if not isinstance(name, str):
        raise ArchitectureError(f"{origin}: name must be a string")
    if not isinstance(qubits, int) or isinstance(qubits, bool):
        raise ArchitectureError(f"{origin}: qubits must be an integer")
    if not isinstance(edges, list) or any(not isinstance(e, (list, tuple)) or len(e) != 2 for e in edges):
        raise ArchitectureError(f"{origin}: edges must be a list of integer pairs")
    if any(not isinstance(x, int) or isinstance(x, bool) for e in edges for x in e):
        raise ArchitectureError(f"{origin}: edges must be a list of integer pairs")
    return Architecture(name, qubits, [tuple(e) for e in edges])


def load_architecture(name_or_path: str) -> Architecture:
    """Resolve ``name_or_path`` as a catalog name first, then as a path to a JSON file.

    Catalog names are the bundled files (``aspen_16``, ``singapore_20``) and the
    generated families ``line_N``, ``cycle_N``, ``complete_N``, ``square_N`` and
    ``grid_RxC``.
    """
    m = _FAMILY_RE.match(name_or_path)
    if m:
        return _FAMILIES[m.group(1)](int(m.group(2)))
    m = _GRID_RE.match(name_or_path)
    if m:
        return grid(int(m.group(1)), int(m.group(2)))
    bundled = resources.files("archphase") / "catalog" / f"{name_or_path}.json"
    if bundled.is_file():
        return parse_architecture(bundled.read_text(encoding="utf-8"), origin=name_or_path)
    path = Path(name_or_path)
    if path.is_file():
        return parse_architecture(path.read_text(encoding="utf-8"), origin=str(path))
    raise ArchitectureError(f"unknown architecture {name_or_path!r}: not a catalog name or a readable file")
