"""(k, l)-sparsity via the pebble game, with a brute-force oracle.

Counting convention: for 0 <= l < 2k every subgraph on at least two vertices
must satisfy |E(H)| <= k|V(H)| - l. For 2k <= l < 3k two-vertex subgraphs
can never satisfy the count, so only subgraphs on at least three vertices
are counted (the usual convention for (3, 6) in three dimensions), and the
graph must be simple.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import networkx as nx
import numpy as np

from .exceptions import DegenerateFrameworkError, FileFormatError, SparsityRangeError

BRUTE_FORCE_CAP = 12


@dataclass(frozen=True)
class Graph:
    """Undirected graph with named vertices; edges keep their given order."""

    vertices: tuple
    edges: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        known = set(self.vertices)
        if len(known) != len(self.vertices):
            raise ValueError("duplicate vertex names")
        for u, v in self.edges:
            if u not in known or v not in known:
                raise ValueError(f"edge {(u, v)} uses an undeclared vertex")
            if u == v:
                raise DegenerateFrameworkError(f"loop at vertex {u!r}")

    @classmethod
    def from_edges(cls, edges, vertices=None) -> "Graph":
        edges = [tuple(e) for e in edges]
        if vertices is None:
            seen = {}
            for e in edges:
                for x in e:
                    seen.setdefault(x, None)
            vertices = list(seen)
        return cls(tuple(vertices), tuple(edges))

    @classmethod
    def complete(cls, m, start=1) -> "Graph":
        vs = tuple(range(start, start + m))
        return cls(vs, tuple(combinations(vs, 2)))

    @property
    def is_simple(self) -> bool:
        return len({frozenset(e) for e in self.edges}) == len(self.edges)

    def index_edges(self) -> list[tuple[int, int]]:
        pos = {v: i for i, v in enumerate(self.vertices)}
        return [(pos[u], pos[v]) for u, v in self.edges]

    def subgraph(self, edges) -> "Graph":
        return Graph(self.vertices, tuple(edges))

    def to_networkx(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges)
        return g


@dataclass(frozen=True)
class SparsityVerdict:
    k: int
    l: int
    sparse: bool
    tight: bool
    witness_vertices: tuple = ()
    witness_edges: tuple = ()

    @property
    def witness(self) -> Graph | None:
        if self.sparse:
            return None
        return Graph(self.witness_vertices, self.witness_edges)

    def to_dict(self) -> dict:
        out = {"k": self.k, "l": self.l, "sparse": self.sparse, "tight": self.tight}
        if not self.sparse:
            out["witness"] = {
                "vertices": list(self.witness_vertices),
                "edges": [list(e) for e in self.witness_edges],
            }
        return out


def _check_range(k, l):
    if not (isinstance(k, (int, np.integer)) and k >= 1):
        raise SparsityRangeError(f"k must be a positive integer, got {k!r}")
    if not (0 <= l < 3 * k):
        raise SparsityRangeError(f"l must lie in [0, {3 * k - 1}] for k = {k}, got {l}")


def min_counted(k, l) -> int:
    """Smallest subgraph order the count applies to."""
    return 3 if l >= 2 * k else 2


class _PebbleState:
    def __init__(self, n, k):
        self.free = [k] * n
        # out[u] lists heads of edges currently covered by a pebble of u
        self.out = [[] for _ in range(n)]

    def _find(self, root, blocked):
        # DFS over directed edges for a vertex outside ``blocked`` with a free pebble
        parent = {root: None}
        stack = [root]
        while stack:
            x = stack.pop()
            for y in self.out[x]:
                if y in parent or y in blocked:
                    continue
                parent[y] = x
                if self.free[y] > 0:
                    return y, parent
                stack.append(y)
        return None, parent

    def _pull(self, target, parent):
        # reverse the path root -> ... -> target, moving one pebble back to root
        y = target
        self.free[y] -= 1
        while parent[y] is not None:
            x = parent[y]
            self.out[x].remove(y)
            self.out[y].append(x)
            y = x
        self.free[y] += 1

    def gather(self, targets, need) -> set | None:
        """Collect ``need`` free pebbles on ``targets``; on failure return the reach set."""
        blocked = set(targets)
        while sum(self.free[t] for t in targets) < need:
            for t in targets:
                found, parent = self._find(t, blocked)
                if found is not None:
                    self._pull(found, parent)
                    break
            else:
                reach = set(targets)
                for t in targets:
                    reach |= set(self._find(t, blocked)[1])
                return reach
        return None

    def insert(self, u, v):
        if self.free[u] > 0:
            self.free[u] -= 1
            self.out[u].append(v)
        else:
            self.free[v] -= 1
            self.out[v].append(u)


def _witness(graph, idx_edges, accepted, reach, bad):
    names = graph.vertices
    wv = tuple(names[i] for i in sorted(reach))
    we = [graph.edges[j] for j in accepted if idx_edges[j][0] in reach and idx_edges[j][1] in reach]
    we.append(graph.edges[bad])
    return wv, tuple(we)


def pebble_game(graph: Graph, k: int, l: int) -> SparsityVerdict:
    """Decide (k, l)-sparsity and tightness.

    Edges are inserted in the graph's edge order. An edge uv is accepted when
    l + 1 pebbles can be gathered on {u, v} (or on {u, v, x} for every other
    vertex x when l >= 2k). On rejection the vertices reachable from the
    gathering set span a subgraph that, with the rejected edge, breaks the
    count; it is returned as the witness. Witnesses are not minimal.
    """
    _check_range(k, l)
    n = len(graph.vertices)
    triple = l >= 2 * k
    if triple and not graph.is_simple:
        raise SparsityRangeError(f"(k, l) = ({k}, {l}) needs a simple graph")
    state = _PebbleState(n, k)
    idx_edges = graph.index_edges()
    accepted = []
    for j, (u, v) in enumerate(idx_edges):
        if triple:
            reach = None
            for x in range(n):
                if x in (u, v):
                    continue
                reach = state.gather((u, v, x), l + 1)
                if reach is not None:
                    break
        else:
            reach = state.gather((u, v), l + 1)
        if reach is not None:
            wv, we = _witness(graph, idx_edges, accepted, reach, j)
            return SparsityVerdict(k, l, False, False, wv, we)
        state.insert(u, v)
        accepted.append(j)
    tight = len(idx_edges) == k * n - l
    return SparsityVerdict(k, l, True, tight)


def brute_force_sparsity(graph: Graph, k: int, l: int) -> SparsityVerdict:
    """Check the count on every vertex subset. Exponential; |V| <= 12."""
    _check_range(k, l)
    n = len(graph.vertices)
    if n > BRUTE_FORCE_CAP:
        raise ValueError(f"brute force is capped at {BRUTE_FORCE_CAP} vertices, got {n}")
    if l >= 2 * k and not graph.is_simple:
        raise SparsityRangeError(f"(k, l) = ({k}, {l}) needs a simple graph")
    masks = np.arange(1 << n, dtype=np.int64)
    sizes = np.zeros(masks.shape, dtype=np.int64)
    for i in range(n):
        sizes += (masks >> i) & 1
    counts = np.zeros(masks.shape, dtype=np.int64)
    idx_edges = graph.index_edges()
    for u, v in idx_edges:
        counts += ((masks >> u) & 1) & ((masks >> v) & 1)
    bad = (sizes >= min_counted(k, l)) & (counts > k * sizes - l)
    if bad.any():
        # smallest violating subset first, for readable witnesses
        order = np.lexsort((masks[bad], sizes[bad]))
        mask = int(masks[bad][order[0]])
        inside = [i for i in range(n) if mask >> i & 1]
        wv = tuple(graph.vertices[i] for i in inside)
        we = tuple(e for e, (u, v) in zip(graph.edges, idx_edges) if mask >> u & 1 and mask >> v & 1)
        return SparsityVerdict(k, l, False, False, wv, we)
    return SparsityVerdict(k, l, True, len(idx_edges) == k * n - l)


def is_laman(graph: Graph) -> bool:
    return pebble_game(graph, 2, 3).tight


def is_spanning_tree(graph: Graph, vertex_set=None) -> bool:
    """Connected, acyclic and touching every vertex of ``vertex_set``."""
    vs = list(graph.vertices if vertex_set is None else vertex_set)
    if not vs:
        return False
    g = nx.MultiGraph()
    g.add_nodes_from(vs)
    for u, v in graph.edges:
        if u not in g or v not in g:
            return False
        g.add_edge(u, v)
    return nx.is_tree(g)


def is_connected(graph: Graph) -> bool:
    if not graph.vertices:
        return False
    return nx.is_connected(graph.to_networkx())


def _token(text):
    try:
        return int(text)
    except ValueError:
        return text


def parse_edge_list(text: str) -> Graph:
    """Parse one "u v" pair per line. Blank lines and ``#`` comments are skipped.

    A line with a single token declares an isolated vertex.
    """
    vertices: dict = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) > 2:
            raise FileFormatError(f"expected 'u v', got {raw.strip()!r}", lineno)
        toks = [_token(p) for p in parts]
        for t in toks:
            vertices.setdefault(t, None)
        if len(toks) == 2:
            if toks[0] == toks[1]:
                raise FileFormatError(f"loop at vertex {toks[0]!r}", lineno)
            edges.append(tuple(toks))
    return Graph(tuple(vertices), tuple(edges))
