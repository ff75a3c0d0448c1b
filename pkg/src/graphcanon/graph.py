"""Colored graphs, labelings, canonical codes, and the brute-force isomorphism oracle.

Vertices are always the integers 1..n. Colors are finite sets of non-negative
integers attached per vertex; isomorphisms must preserve them exactly.
"""

from __future__ import annotations

import os
from functools import total_ordering

from .errors import InvalidGraphError, InvalidLabelingError, OracleCapacityError

#: Default size cap for factorial-search oracles. Override per call, or set the
#: GRAPHCANON_ORACLE_CAP environment variable before import.
DEFAULT_ORACLE_CAP = int(os.environ.get("GRAPHCANON_ORACLE_CAP", "10"))


def resolve_cap(cap: int | None) -> int:
    return DEFAULT_ORACLE_CAP if cap is None else int(cap)


class ColoredGraph:
    """Simple undirected graph on vertices 1..n with a color set per vertex.

    Instances are immutable and hashable; operations that "modify" a graph
    return a new one, so graphs can be shared freely across worker threads.
    """

    __slots__ = ("n", "edges", "colors", "_adj", "_key")

    def __init__(self, n, edges=(), colors=None):
        n = int(n)
        if n < 0:
            raise InvalidGraphError("vertex count must be non-negative")
        self.n = n
        adj = {v: set() for v in range(1, n + 1)}
        canon_edges = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if not (1 <= u <= n and 1 <= v <= n):
                raise InvalidGraphError(f"edge ({u},{v}) leaves the vertex range 1..{n}")
            if u == v:
                raise InvalidGraphError(f"loop at vertex {u}")
            a, b = (u, v) if u < v else (v, u)
            canon_edges.add((a, b))
            adj[a].add(b)
            adj[b].add(a)
        self.edges = frozenset(canon_edges)
        palette = {}
        for v, cs in (colors or {}).items():
            v = int(v)
            if not 1 <= v <= n:
                raise InvalidGraphError(f"colored vertex {v} outside 1..{n}")
            cset = frozenset(int(c) for c in cs)
            if any(c < 0 for c in cset):
                raise InvalidGraphError("colors must be non-negative integers")
            if cset:
                palette[v] = cset
        self.colors = palette
        self._adj = {v: frozenset(s) for v, s in adj.items()}
        self._key = (n, self.edges, frozenset(palette.items()))

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def neighbors(self, v: int) -> frozenset:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def color_set(self, v: int) -> frozenset:
        return self.colors.get(v, frozenset())

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def with_extra_colors(self, extra) -> "ColoredGraph":
        """New graph with extra[v] unioned onto each listed vertex's color set."""
        merged = {v: set(cs) for v, cs in self.colors.items()}
        for v, cs in extra.items():
            merged.setdefault(v, set()).update(cs)
        return ColoredGraph(self.n, self.edges, merged)

    def induced_subgraph(self, vertices):
        """Renumbered induced subgraph plus the map from new ids back to originals.

        New vertices 1..t follow the sorted order of the kept originals.
        """
        kept = sorted(set(vertices))
        index = {v: i + 1 for i, v in enumerate(kept)}
        keptset = set(kept)
        edges = [
            (index[a], index[b]) for (a, b) in self.edges if a in keptset and b in keptset
        ]
        colors = {index[v]: self.colors[v] for v in kept if v in self.colors}
        origin = {i + 1: v for i, v in enumerate(kept)}
        return ColoredGraph(len(kept), edges, colors), origin

    def components(self):
        """Connected components as frozensets, ordered by smallest member."""
        seen: set[int] = set()
        comps = []
        for start in self.vertices:
            if start in seen:
                continue
            stack = [start]
            comp = {start}
            seen.add(start)
            while stack:
                x = stack.pop()
                for y in self._adj[x]:
                    if y not in comp:
                        comp.add(y)
                        seen.add(y)
                        stack.append(y)
            comps.append(frozenset(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def __eq__(self, other):
        return isinstance(other, ColoredGraph) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"ColoredGraph(n={self.n}, edges={len(self.edges)}, colored={len(self.colors)})"


class Labeling:
    """A bijection from vertices 1..n onto labels 1..n, stored as the image tuple."""

    __slots__ = ("mapping",)

    def __init__(self, mapping):
        m = tuple(int(x) for x in mapping)
        if sorted(m) != list(range(1, len(m) + 1)):
            raise InvalidLabelingError("mapping is not a bijection onto 1..n")
        self.mapping = m

    @classmethod
    def identity(cls, n: int) -> "Labeling":
        return cls(range(1, n + 1))

    @classmethod
    def from_position_order(cls, order) -> "Labeling":
        """Labeling that gives label p to the p-th vertex of `order`."""
        order = list(order)
        m = [0] * len(order)
        for p, v in enumerate(order, start=1):
            m[v - 1] = p
        return cls(m)

    @property
    def n(self) -> int:
        return len(self.mapping)

    def __getitem__(self, v: int) -> int:
        return self.mapping[v - 1]

    def inverse(self) -> "Labeling":
        m = [0] * len(self.mapping)
        for v, img in enumerate(self.mapping, start=1):
            m[img - 1] = v
        return Labeling(m)

    def compose(self, inner: "Labeling") -> "Labeling":
        """The bijection v -> self[inner[v]]."""
        return Labeling(self.mapping[x - 1] for x in inner.mapping)

    def __eq__(self, other):
        return isinstance(other, Labeling) and self.mapping == other.mapping

    def __hash__(self):
        return hash(self.mapping)

    def __iter__(self):
        return iter(self.mapping)

    def __repr__(self):
        return f"Labeling({list(self.mapping)})"


@total_ordering
class CanonicalCode:
    """A finite byte string under length-then-lexicographic total order."""

    __slots__ = ("data",)

    def __init__(self, data: bytes):
        self.data = bytes(data)

    def __eq__(self, other):
        return isinstance(other, CanonicalCode) and self.data == other.data

    def __lt__(self, other):
        return (len(self.data), self.data) < (len(other.data), other.data)

    def __hash__(self):
        return hash(self.data)

    def __repr__(self):
        head = self.data[:32]
        dots = "..." if len(self.data) > 32 else ""
        return f"CanonicalCode({head!r}{dots})"


def apply_permutation(graph: ColoredGraph, labeling: Labeling) -> ColoredGraph:
    """Image graph: edge {s(u),s(v)} for every edge {u,v}; s(v) inherits v's colors."""
    if labeling.n != graph.n:
        raise InvalidLabelingError(
            f"labeling has {labeling.n} entries for a graph on {graph.n} vertices"
        )
    m = labeling.mapping
    edges = ((m[u - 1], m[v - 1]) for u, v in graph.edges)
    colors = {m[v - 1]: cs for v, cs in graph.colors.items()}
    return ColoredGraph(graph.n, edges, colors)


def color_record(graph: ColoredGraph, v: int) -> bytes:
    """The byte record of v's sorted colors, ending in the '|' delimiter."""
    return ",".join(str(c) for c in sorted(graph.color_set(v))).encode("ascii") + b"|"


def encode(graph: ColoredGraph) -> CanonicalCode:
    """Injective byte encoding of a labeled colored graph.

    Layout: decimal n and a newline, then one record per vertex v holding v's
    sorted colors (comma separated), a '|' delimiter, and v's adjacency bits
    toward vertices 1..v-1 as '0'/'1' characters, newline terminated. Two
    labeled colored graphs produce equal codes exactly when they are equal.
    """
    out = bytearray(b"%d\n" % graph.n)
    for v in graph.vertices:
        out += color_record(graph, v)
        nb = graph._adj[v]
        for u in range(1, v):
            out += b"1" if u in nb else b"0"
        out += b"\n"
    return CanonicalCode(bytes(out))


def encoded_length(graph: ColoredGraph) -> int:
    """len(encode(graph).data) without building the encoding."""
    total = len(b"%d\n" % graph.n)
    for v in graph.vertices:
        total += len(color_record(graph, v)) + (v - 1) + 1
    return total


def are_isomorphic_bf(
    graph: ColoredGraph, other: ColoredGraph, cap: int | None = None
) -> Labeling | None:
    """First color- and adjacency-preserving bijection in lexicographic order, or None.

    Ground-truth oracle with factorial worst case; the candidate filters only
    discard images that can never complete, so the lexicographic-first contract
    is preserved.
    """
    if graph.n != other.n:
        return None
    limit = resolve_cap(cap)
    if graph.n > limit:
        raise OracleCapacityError(
            f"isomorphism oracle capped at n <= {limit}, got n = {graph.n}"
        )
    if len(graph.edges) != len(other.edges):
        return None
    if sorted(map(graph.degree, graph.vertices)) != sorted(map(other.degree, other.vertices)):
        return None
    if sorted(tuple(sorted(graph.color_set(v))) for v in graph.vertices) != sorted(
        tuple(sorted(other.color_set(v))) for v in other.vertices
    ):
        return None

    n = graph.n
    image = [0] * (n + 1)
    used: set[int] = set()

    def extend(v: int) -> bool:
        if v > n:
            return True
        gcol = graph.color_set(v)
        gdeg = graph.degree(v)
        for u in other.vertices:
            if u in used:
                continue
            if other.degree(u) != gdeg or other.color_set(u) != gcol:
                continue
            ok = True
            for w in range(1, v):
                if graph.has_edge(v, w) != other.has_edge(u, image[w]):
                    ok = False
                    break
            if not ok:
                continue
            image[v] = u
            used.add(u)
            if extend(v + 1):
                return True
            used.remove(u)
            image[v] = 0
        return False

    if extend(1):
        return Labeling(image[1:])
    return None
