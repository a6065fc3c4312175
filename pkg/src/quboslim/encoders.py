"""QUBO encoders for four graph problems, with decode-and-validate.

Every encoding rewards each set variable with a -1 linear term and punishes
each violated constraint with a positive coupling A, applied once per
unordered variable pair even when several constraint conditions hit the
same pair. Variable indexing is canonical so encoders are deterministic:

    max clique     variable v            <-> vertex v
    cycle cover    variable v*|V| + p    <-> vertex v at cycle position p
    coloring       variable v*k + c      <-> vertex v gets color c
    isomorphism    variable i*|V| + j    <-> left vertex i maps to right vertex j

Positions are 0-based with wrap adjacency between |V|-1 and 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .graphs import Graph
from .qubo import QuboMatrix, as_fraction

PROBLEMS = ("maxclique", "hamilton", "coloring", "isomorphism")

_TUPLE_ARITY = {"maxclique": 1, "hamilton": 2, "coloring": 2, "isomorphism": 2}


@dataclass(frozen=True)
class VariableMap:
    """Bijection between semantic tuples and QUBO variable indices."""

    problem: str
    tuples: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.problem not in PROBLEMS:
            raise ValueError(f"unknown problem {self.problem!r}")
        arity = _TUPLE_ARITY[self.problem]
        if any(len(t) != arity for t in self.tuples):
            raise ValueError(f"{self.problem} tuples must have {arity} fields")
        if len(set(self.tuples)) != len(self.tuples):
            raise ValueError("duplicate semantic tuples")

    @property
    def n(self) -> int:
        return len(self.tuples)

    @cached_property
    def _index(self) -> dict[tuple[int, ...], int]:
        return {t: i for i, t in enumerate(self.tuples)}

    def index(self, key: tuple[int, ...]) -> int:
        return self._index[key]

    def tuple_of(self, index: int) -> tuple[int, ...]:
        return self.tuples[index]


def _default_penalty(num_variables: int) -> Fraction:
    return Fraction(num_variables + 1)


def _check_penalty(penalty) -> Fraction:
    a = as_fraction(penalty)
    if a <= 0:
        raise ValueError(f"penalty must be > 0, got {a}")
    return a


def encode_max_clique(g: Graph, penalty=3) -> tuple[QuboMatrix, VariableMap]:
    """Reward every chosen vertex; punish choosing a non-adjacent pair.

    The penalty couples exactly the complement edges, so penalty-free
    assignments are the cliques of g. The default penalty 3 suits unit
    rewards (any violation outweighs the two rewards it could buy).
    """
    a = _check_penalty(penalty)
    n = g.num_vertices
    q = QuboMatrix(n)
    for v in range(n):
        q.set(v, v, -1)
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in g.edges:
                q.set(u, v, a)
    vmap = VariableMap("maxclique", tuple((v,) for v in range(n)))
    return q, vmap


def encode_hamilton_cycles(g: Graph, penalty=None) -> tuple[QuboMatrix, VariableMap]:
    """Vertex-at-position one-hot encoding of a closed tour.

    Punished pairs: the same vertex at two positions, two vertices at the
    same position, and two non-adjacent vertices at cyclically neighboring
    positions (wrap pair included).
    """
    v_count = g.num_vertices
    if v_count < 3:
        raise ValueError("cycle encoding needs at least 3 vertices")
    n = v_count * v_count
    a = _default_penalty(n) if penalty is None else _check_penalty(penalty)
    idx = lambda v, p: v * v_count + p

    pairs: set[tuple[int, int]] = set()
    for v in range(v_count):
        for p1 in range(v_count):
            for p2 in range(p1 + 1, v_count):
                pairs.add((idx(v, p1), idx(v, p2)))
    for p in range(v_count):
        for v1 in range(v_count):
            for v2 in range(v1 + 1, v_count):
                pairs.add((idx(v1, p), idx(v2, p)))
    adjacent_positions = {(p, (p + 1) % v_count) for p in range(v_count)}
    for p1, p2 in adjacent_positions:
        for v1 in range(v_count):
            for v2 in range(v_count):
                if v1 != v2 and not g.has_edge(v1, v2):
                    x, y = idx(v1, p1), idx(v2, p2)
                    pairs.add((min(x, y), max(x, y)))

    q = QuboMatrix(n)
    for i in range(n):
        q.set(i, i, -1)
    for i, j in pairs:
        q.set(i, j, a)
    vmap = VariableMap(
        "hamilton", tuple((v, p) for v in range(v_count) for p in range(v_count))
    )
    return q, vmap


def encode_graph_coloring(g: Graph, k: int, penalty=None) -> tuple[QuboMatrix, VariableMap]:
    """Vertex-color assignment: punish two colors on one vertex and one color
    on two adjacent vertices."""
    if k < 1:
        raise ValueError(f"color count must be >= 1, got {k}")
    v_count = g.num_vertices
    n = v_count * k
    a = _default_penalty(n) if penalty is None else _check_penalty(penalty)
    idx = lambda v, c: v * k + c

    pairs: set[tuple[int, int]] = set()
    for v in range(v_count):
        for c1 in range(k):
            for c2 in range(c1 + 1, k):
                pairs.add((idx(v, c1), idx(v, c2)))
    for u, v in g.edges:
        for c in range(k):
            pairs.add((idx(u, c), idx(v, c)))

    q = QuboMatrix(n)
    for i in range(n):
        q.set(i, i, -1)
    for i, j in pairs:
        q.set(i, j, a)
    vmap = VariableMap(
        "coloring", tuple((v, c) for v in range(v_count) for c in range(k))
    )
    return q, vmap


def encode_graph_isomorphism(
    g1: Graph, g2: Graph, penalty=None
) -> tuple[QuboMatrix, VariableMap]:
    """Vertex-mapping encoding: variable (i, j) maps left vertex i to right vertex j.

    Punished pairs: one source mapped twice, one target used twice, and any
    pair of mappings whose edge/non-edge status disagrees between the two
    graphs. Graphs of unequal size are rejected (trivially non-isomorphic).
    """
    v_count = g1.num_vertices
    if g2.num_vertices != v_count:
        raise ValueError(
            f"graphs must have equal sizes, got {v_count} and {g2.num_vertices}"
        )
    n = v_count * v_count
    a = _default_penalty(n) if penalty is None else _check_penalty(penalty)

    q = QuboMatrix(n)
    for i in range(n):
        q.set(i, i, -1)
    for x in range(n):
        i1, j1 = divmod(x, v_count)
        for y in range(x + 1, n):
            i2, j2 = divmod(y, v_count)
            hit = i1 == i2 or j1 == j2
            if not hit:
                hit = g1.has_edge(i1, i2) != g2.has_edge(j1, j2)
            if hit:
                q.set(x, y, a)
    vmap = VariableMap(
        "isomorphism", tuple((i, j) for i in range(v_count) for j in range(v_count))
    )
    return q, vmap


# ---------------------------------------------------------------------------
# Decoding
# ---------------------------------------------------------------------------

def decode_and_validate(
    vmap: VariableMap,
    bits,
    graph: Graph,
    graph2: Graph | None = None,
) -> tuple[tuple, bool]:
    """Turn an assignment back into a candidate solution and check it classically.

    Returns (payload, is_valid). The payload lists the set variables as
    semantic tuples; is_valid reports whether they form a complete, correct
    solution (a clique, a closed tour visiting every vertex once, a proper
    all-vertex coloring, or an edge-preserving bijection). Invalid
    assignments never raise.
    """
    x = tuple(bits)
    if len(x) != vmap.n:
        raise ValueError(f"assignment length {len(x)} does not match map size {vmap.n}")
    chosen = [vmap.tuple_of(i) for i in range(vmap.n) if x[i]]

    if vmap.problem == "maxclique":
        vertices = tuple(sorted(v for (v,) in chosen))
        ok = all(
            graph.has_edge(vertices[a], vertices[b])
            for a in range(len(vertices))
            for b in range(a + 1, len(vertices))
        )
        return vertices, ok

    if vmap.problem == "hamilton":
        placed = tuple(sorted(((p, v) for v, p in chosen)))
        v_count = graph.num_vertices
        positions = [p for p, _ in placed]
        vertices = [v for _, v in placed]
        if len(placed) != v_count or sorted(positions) != list(range(v_count)) \
                or sorted(vertices) != list(range(v_count)):
            return placed, False
        at = dict(placed)
        ok = all(graph.has_edge(at[p], at[(p + 1) % v_count]) for p in range(v_count))
        return placed, ok

    if vmap.problem == "coloring":
        colored = tuple(sorted(chosen))
        counts: dict[int, int] = {}
        for v, _ in colored:
            counts[v] = counts.get(v, 0) + 1
        if sorted(counts) != list(range(graph.num_vertices)) or any(
            c != 1 for c in counts.values()
        ):
            return colored, False
        color_of = dict(colored)
        ok = all(color_of[u] != color_of[v] for u, v in graph.edges)
        return colored, ok

    if vmap.problem == "isomorphism":
        if graph2 is None:
            raise ValueError("isomorphism decoding needs both graphs")
        mapping = tuple(sorted(chosen))
        v_count = graph.num_vertices
        sources = [i for i, _ in mapping]
        targets = [j for _, j in mapping]
        if len(mapping) != v_count or sorted(sources) != list(range(v_count)) \
                or sorted(targets) != list(range(v_count)):
            return mapping, False
        to = dict(mapping)
        ok = all(
            graph.has_edge(i1, i2) == graph2.has_edge(to[i1], to[i2])
            for i1 in range(v_count)
            for i2 in range(i1 + 1, v_count)
        )
        return mapping, ok

    raise ValueError(f"unknown problem {vmap.problem!r}")


# ---------------------------------------------------------------------------
# Map serialization
# ---------------------------------------------------------------------------

def format_variable_map(vmap: VariableMap) -> str:
    """`map <problem> <n>` header then one `var <index> <fields...>` line each."""
    lines = [f"map {vmap.problem} {vmap.n}"]
    for i, t in enumerate(vmap.tuples):
        lines.append("var " + str(i) + " " + " ".join(str(f) for f in t))
    return "\n".join(lines) + "\n"


def parse_variable_map(text: str) -> VariableMap:
    problem: str | None = None
    declared = 0
    rows: list[tuple[int, tuple[int, ...]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if problem is None:
            if fields[0] != "map" or len(fields) != 3:
                raise ValueError(f"line {lineno}: expected header 'map <problem> <n>'")
            problem = fields[1]
            if problem not in PROBLEMS:
                raise ValueError(f"line {lineno}: unknown problem {problem!r}")
            try:
                declared = int(fields[2])
            except ValueError:
                raise ValueError(f"line {lineno}: malformed variable count") from None
            continue
        if fields[0] != "var" or len(fields) != 2 + _TUPLE_ARITY[problem]:
            raise ValueError(f"line {lineno}: expected 'var <index> <fields...>'")
        try:
            idx = int(fields[1])
            tup = tuple(int(f) for f in fields[2:])
        except ValueError:
            raise ValueError(f"line {lineno}: malformed var line {line!r}") from None
        rows.append((idx, tup))
    if problem is None:
        raise ValueError("missing 'map <problem> <n>' header")
    rows.sort()
    if [i for i, _ in rows] != list(range(declared)):
        raise ValueError("var indices must cover 0..n-1 exactly once")
    return VariableMap(problem, tuple(t for _, t in rows))
