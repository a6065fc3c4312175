"""Undirected simple graphs and deterministic generation.

Graphs are immutable: a vertex count plus a frozenset of normalized edges
(u, v) with u < v. Random generation uses Python's Mersenne Twister
(`random.Random`) with a documented iteration order so identical seeds give
identical graphs on every platform.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable


@dataclass(frozen=True)
class Graph:
    num_vertices: int
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.num_vertices < 0:
            raise ValueError("vertex count must be >= 0")
        object.__setattr__(self, "edges", frozenset(self.edges))
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop ({u}, {v}) not allowed")
            if not (0 <= u < v < self.num_vertices):
                raise ValueError(f"edge ({u}, {v}) not normalized or out of range")

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)


def make_graph(num_vertices: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a Graph, normalizing edge orientation. Rejects self-loops."""
    normalized = set()
    for u, v in edges:
        if u == v:
            raise ValueError(f"self-loop ({u}, {v}) not allowed")
        normalized.add((min(u, v), max(u, v)))
    return Graph(num_vertices, frozenset(normalized))


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset((u, v) for u in range(n) for v in range(u + 1, n)))


def complement(g: Graph) -> Graph:
    """Graph on the same vertices whose edges are exactly the missing pairs."""
    n = g.num_vertices
    missing = frozenset(
        (u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in g.edges
    )
    return Graph(n, missing)


def erdos_renyi(n: int, p_edge: float, seed: int) -> Graph:
    """G(n, p) sample, reproducible across platforms.

    Draws one uniform variate per pair (u, v), u < v, in row-major order
    (0,1), (0,2), ..., (n-2,n-1) from random.Random(seed) (Mersenne
    Twister); the pair is an edge when the variate is below p_edge.
    """
    if not 0 <= p_edge <= 1:
        raise ValueError(f"edge probability must be in [0, 1], got {p_edge}")
    rng = random.Random(seed)
    edges = set()
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p_edge:
                edges.add((u, v))
    return Graph(n, frozenset(edges))


def random_permutation(n: int, seed: int) -> tuple[int, ...]:
    """Seeded uniform permutation of range(n) (Fisher-Yates via random.Random)."""
    perm = list(range(n))
    random.Random(seed).shuffle(perm)
    return tuple(perm)


def permute_graph(g: Graph, perm: Iterable[int]) -> Graph:
    """Relabel vertices: edge (u, v) becomes (perm[u], perm[v]).

    The result is isomorphic to g by construction, which is how guaranteed
    isomorphic test pairs are produced.
    """
    p = tuple(perm)
    if sorted(p) != list(range(g.num_vertices)):
        raise ValueError("perm is not a bijection on the vertex range")
    return make_graph(g.num_vertices, ((p[u], p[v]) for u, v in g.edges))


def format_edge_list(g: Graph) -> str:
    """Render the edge-list format: `graph <n>` then edges sorted by (u, v)."""
    lines = [f"graph {g.num_vertices}"]
    for u, v in g.sorted_edges():
        lines.append(f"{u} {v}")
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list format; duplicate edge lines collapse to one edge."""
    n: int | None = None
    edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if n is None:
            if fields[0] != "graph" or len(fields) != 2:
                raise ValueError(f"line {lineno}: expected header 'graph <numVertices>'")
            try:
                n = int(fields[1])
            except ValueError:
                raise ValueError(f"line {lineno}: malformed vertex count") from None
            if n < 0:
                raise ValueError(f"line {lineno}: vertex count must be >= 0")
            continue
        if len(fields) != 2:
            raise ValueError(f"line {lineno}: expected '<u> <v>'")
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise ValueError(f"line {lineno}: malformed edge {line!r}") from None
        if u == v:
            raise ValueError(f"line {lineno}: self-loop ({u}, {v})")
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"line {lineno}: vertex out of range in ({u}, {v})")
        edges.add((min(u, v), max(u, v)))
    if n is None:
        raise ValueError("missing 'graph <numVertices>' header")
    return Graph(n, frozenset(edges))
