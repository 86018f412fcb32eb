"""Core graph representation, deterministic text I/O, and instance generators.

Vertices are dense integer ids 0..n-1. A Graph is immutable once built, so it
is safe to share across worker processes. Group structure (for the hardness
constructions) lives in LabeledInstance, keeping every solver oblivious to it.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import GraphParseError

Edge = tuple[int, int]


def canonical_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Simple undirected unweighted graph with sorted per-vertex neighbor lists."""

    __slots__ = ("n", "m", "_adj", "_adjsets")

    def __init__(self, n: int, adj: Sequence[Sequence[int]]):
        self.n = n
        self._adj = tuple(tuple(nbrs) for nbrs in adj)
        self._adjsets = tuple(frozenset(nbrs) for nbrs in self._adj)
        self.m = sum(len(nbrs) for nbrs in self._adj) // 2

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> "Graph":
        """Build a graph from an edge collection.

        Rejects self-loops, duplicate edges (in either orientation), and
        out-of-range endpoints.
        """
        adj: list[list[int]] = [[] for _ in range(n)]
        seen: set[Edge] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            e = canonical_edge(u, v)
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
            adj[u].append(v)
            adj[v].append(u)
        for nbrs in adj:
            nbrs.sort()
        return cls(n, adj)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def neighbor_set(self, v: int) -> frozenset[int]:
        return self._adjsets[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adjsets[u]

    def edges(self) -> list[Edge]:
        """All edges as canonical (u, v) pairs, sorted."""
        return [(u, v) for u in range(self.n) for v in self._adj[u] if u < v]

    def validate(self) -> None:
        """Assert the structural invariants; raises AssertionError on violation."""
        deg_total = 0
        for u in range(self.n):
            nbrs = self._adj[u]
            assert list(nbrs) == sorted(set(nbrs)), f"adjacency of {u} not sorted/unique"
            assert u not in self._adjsets[u], f"self-loop at {u}"
            for v in nbrs:
                assert 0 <= v < self.n, f"neighbor {v} of {u} out of range"
                assert u in self._adjsets[v], f"asymmetric edge ({u}, {v})"
            deg_total += len(nbrs)
        assert self.m == deg_total // 2, "edge count does not match degree sum"

    def without_vertices(self, removed: Iterable[int]) -> "Graph":
        """Drop all edges incident to `removed`, keeping the vertex-id space.

        The stripped vertices stay as isolated ids so that every other vertex
        keeps its name; isolated vertices never affect pairwise connectivity.
        """
        gone = set(removed)
        adj = [
            () if u in gone else tuple(v for v in self._adj[u] if v not in gone)
            for u in range(self.n)
        ]
        return Graph(self.n, adj)

    def with_edges(self, extra: Iterable[Edge]) -> "Graph":
        """Union with additional edges (duplicates with existing edges allowed)."""
        edge_set = set(self.edges())
        for u, v in extra:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            edge_set.add(canonical_edge(u, v))
        return Graph.from_edges(self.n, sorted(edge_set))

    def union(self, other: "Graph") -> "Graph":
        """Edge union on the shared id space; n is the larger vertex count."""
        n = max(self.n, other.n)
        edge_set = set(self.edges()) | set(other.edges())
        return Graph.from_edges(n, sorted(edge_set))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self.n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class EdgeSet:
    """Deduplicated list of canonical unordered vertex pairs."""

    pairs: tuple[Edge, ...]

    @classmethod
    def of(cls, pairs: Iterable[Edge]) -> "EdgeSet":
        canon = set()
        for u, v in pairs:
            if u == v:
                raise ValueError(f"self-loop pair ({u}, {v})")
            canon.add(canonical_edge(u, v))
        return cls(tuple(sorted(canon)))

    def validate(self, n: int) -> None:
        for u, v in self.pairs:
            assert 0 <= u < v < n, f"pair ({u}, {v}) not canonical for n={n}"

    def __contains__(self, pair: Edge) -> bool:
        return canonical_edge(*pair) in set(self.pairs)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)


@dataclass
class LabeledInstance:
    """A graph plus a partition of its vertices into named groups.

    Groups are disjoint and cover V(graph); vertices not claimed by a named
    group fall into the "plain" group.
    """

    graph: Graph
    groups: dict[str, tuple[int, ...]]
    meta: dict = field(default_factory=dict)

    @classmethod
    def build(cls, graph: Graph, groups: dict[str, Iterable[int]], meta: dict | None = None) -> "LabeledInstance":
        norm = {tag: tuple(sorted(vs)) for tag, vs in groups.items()}
        claimed: set[int] = set()
        for tag, vs in norm.items():
            overlap = claimed.intersection(vs)
            if overlap:
                raise ValueError(f"group {tag!r} overlaps earlier groups on {sorted(overlap)}")
            claimed.update(vs)
        leftovers = [v for v in range(graph.n) if v not in claimed]
        if leftovers:
            norm["plain"] = tuple(leftovers)
        inst = cls(graph, norm, meta or {})
        inst.validate()
        return inst

    def group(self, tag: str) -> tuple[int, ...]:
        return self.groups[tag]

    def validate(self) -> None:
        seen: set[int] = set()
        for tag, vs in self.groups.items():
            assert list(vs) == sorted(vs), f"group {tag!r} not sorted"
            for v in vs:
                assert 0 <= v < self.graph.n, f"group {tag!r} has out-of-range vertex {v}"
                assert v not in seen, f"vertex {v} in two groups"
                seen.add(v)
        assert len(seen) == self.graph.n, "groups do not cover the vertex set"


# ---------------------------------------------------------------------------
# Text format: "n m" header, one "u v" line per edge, optional label sidecar
# after a "%labels" line. Emission is canonical so files diff cleanly.
# ---------------------------------------------------------------------------


def parse_graph(text: str) -> Graph:
    """Parse an edge-list document; errors name the offending line (1-based)."""
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise GraphParseError("missing header", line=1)
    header = lines[0].split()
    if len(header) != 2:
        raise GraphParseError(f"header must be 'n m', got {lines[0]!r}", line=1)
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise GraphParseError(f"non-integer header {lines[0]!r}", line=1) from None
    if n < 0 or m < 0:
        raise GraphParseError("negative n or m", line=1)

    edges: list[Edge] = []
    seen: set[Edge] = set()
    for i, raw in enumerate(lines[1:], start=2):
        if raw.strip().startswith("%"):
            break
        if not raw.strip():
            continue
        parts = raw.split()
        if len(parts) != 2:
            raise GraphParseError(f"expected 'u v', got {raw!r}", line=i)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError(f"non-integer endpoint in {raw!r}", line=i) from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphParseError(f"vertex out of range in {raw!r}", line=i)
        if u == v:
            raise GraphParseError(f"self-loop {u}", line=i)
        e = canonical_edge(u, v)
        if e in seen:
            raise GraphParseError(f"duplicate edge {u} {v}", line=i)
        seen.add(e)
        edges.append(e)
    if len(edges) != m:
        raise GraphParseError(f"header declares m={m} but found {len(edges)} edges", line=1)
    return Graph.from_edges(n, edges)


def emit_graph(g: Graph) -> str:
    """Serialize to the canonical edge-list document (round-trips bit-exactly)."""
    out = [f"{g.n} {g.m}"]
    out.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(out) + "\n"


def parse_labels(text: str) -> dict[str, tuple[int, ...]]:
    """Parse the "%labels" sidecar section into a group map."""
    groups: dict[str, tuple[int, ...]] = {}
    in_labels = False
    for i, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped == "%labels":
            in_labels = True
            continue
        if not in_labels or not stripped:
            continue
        if stripped.startswith("%"):
            break
        if not stripped.startswith("group "):
            raise GraphParseError(f"expected 'group <tag>: ...', got {raw!r}", line=i)
        head, _, body = stripped[len("group "):].partition(":")
        tag = head.strip()
        if not tag:
            raise GraphParseError("empty group tag", line=i)
        try:
            groups[tag] = tuple(int(tok) for tok in body.split())
        except ValueError:
            raise GraphParseError(f"non-integer vertex in group {tag!r}", line=i) from None
    return groups


def emit_labeled(inst: LabeledInstance) -> str:
    """Edge-list document plus the label sidecar."""
    out = [emit_graph(inst.graph).rstrip("\n"), "%labels"]
    for tag in sorted(inst.groups):
        members = " ".join(str(v) for v in inst.groups[tag])
        out.append(f"group {tag}: {members}".rstrip())
    return "\n".join(out) + "\n"


def parse_labeled(text: str) -> LabeledInstance:
    graph = parse_graph(text)
    groups = parse_labels(text)
    return LabeledInstance.build(graph, groups)


def parse_edge_pairs(text: str) -> EdgeSet:
    """Parse a bare list of "u v" lines (no header) into an EdgeSet."""
    pairs = []
    for i, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        parts = raw.split()
        if len(parts) != 2:
            raise GraphParseError(f"expected 'u v', got {raw!r}", line=i)
        try:
            pairs.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphParseError(f"non-integer endpoint in {raw!r}", line=i) from None
    return EdgeSet.of(pairs)


def emit_edge_pairs(es: EdgeSet) -> str:
    return "".join(f"{u} {v}\n" for u, v in es)


# ---------------------------------------------------------------------------
# Generators. All are deterministic for a fixed seed.
# ---------------------------------------------------------------------------


def gen_gnp(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, p): each of the C(n, 2) edges appears independently."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p={p} not in [0, 1]")
    rng = random.Random(seed)
    edges = [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p]
    return Graph.from_edges(n, edges)


def gen_planted_4clique(n: int, base_p: float, plant: bool, seed: int) -> Graph:
    """G(n, base_p) with, optionally, a uniformly chosen 4-subset completed to a clique."""
    if n < 4:
        raise ValueError(f"need n >= 4, got {n}")
    rng = random.Random(seed)
    edges = {(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < base_p}
    if plant:
        four = rng.sample(range(n), 4)
        edges.update(canonical_edge(u, v) for u, v in itertools.combinations(four, 2))
    return Graph.from_edges(n, sorted(edges))


def pad_with_isolated_vertices(g: Graph, extra: int) -> Graph:
    """Append `extra` isolated vertices; original ids and edges are unchanged."""
    if extra < 0:
        raise ValueError(f"extra must be >= 0, got {extra}")
    return Graph(g.n + extra, list(g._adj) + [()] * extra)
