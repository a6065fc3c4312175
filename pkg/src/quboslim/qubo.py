"""Sparse QUBO matrices with exact rational entries.

Storage is upper-triangular: one entry per index pair (i, j) with i <= j.
Diagonal entries are linear terms, off-diagonal entries are couplings, and
reading (j, i) transparently returns the value stored at (i, j). The energy
of a binary vector x is the upper-triangular sum of x_i * x_j * Q_ij, kept
exact with fractions.Fraction so that transformation identities can be
asserted with equality instead of tolerances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

#: Largest variable count accepted by full spectrum enumeration.
DEFAULT_ENUMERATION_CAP = 24

# Guard for the int64 fast path: the absolute energy of any assignment is
# bounded by the sum of scaled entry magnitudes, which must stay well below
# 2**63 for exactness.
_INT64_SAFE_LIMIT = 2**62


def as_fraction(value: int | str | float | Fraction) -> Fraction:
    """Convert a user-supplied number ('3', '3/4', '1.5', 2, Fraction) to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError("boolean is not a valid matrix value")
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite value {value!r}")
        return Fraction(value).limit_denominator(10**12)
    raise ValueError(f"cannot interpret {value!r} as a rational number")


class QuboMatrix:
    """Symmetric QUBO matrix over n binary variables, stored upper-triangular.

    Zero writes delete the entry, so iteration only ever sees nonzeros.
    Builder functions in this package treat instances as frozen once
    returned; use :meth:`copy` before modifying a matrix you received.
    """

    __slots__ = ("_n", "_entries")

    def __init__(self, n: int, entries: Iterable[tuple[int, int, object]] = ()):
        if n < 0:
            raise ValueError(f"variable count must be >= 0, got {n}")
        self._n = n
        self._entries: dict[tuple[int, int], Fraction] = {}
        for i, j, v in entries:
            self.set(i, j, v)

    @property
    def n(self) -> int:
        return self._n

    def _key(self, i: int, j: int) -> tuple[int, int]:
        if not (0 <= i < self._n and 0 <= j < self._n):
            raise ValueError(f"index pair ({i}, {j}) out of range for n={self._n}")
        return (i, j) if i <= j else (j, i)

    def set(self, i: int, j: int, value: int | str | float | Fraction) -> "QuboMatrix":
        """Store value at the normalized key; value 0 removes the entry."""
        key = self._key(i, j)
        v = as_fraction(value)
        if v == 0:
            self._entries.pop(key, None)
        else:
            self._entries[key] = v
        return self

    def add(self, i: int, j: int, value: int | str | float | Fraction) -> "QuboMatrix":
        return self.set(i, j, self.get(i, j) + as_fraction(value))

    def get(self, i: int, j: int) -> Fraction:
        return self._entries.get(self._key(i, j), Fraction(0))

    def entries(self) -> Iterator[tuple[int, int, Fraction]]:
        """All stored entries sorted by (i, j)."""
        for (i, j) in sorted(self._entries):
            yield i, j, self._entries[(i, j)]

    def couplings(self) -> Iterator[tuple[int, int, Fraction]]:
        """Off-diagonal entries sorted by (i, j)."""
        for i, j, v in self.entries():
            if i != j:
                yield i, j, v

    def row(self, i: int) -> dict[int, Fraction]:
        """Nonzero off-diagonal neighbors of variable i (symmetric access)."""
        out: dict[int, Fraction] = {}
        for (a, b), v in self._entries.items():
            if a == i and b != i:
                out[b] = v
            elif b == i and a != i:
                out[a] = v
        return out

    @property
    def num_entries(self) -> int:
        return len(self._entries)

    @property
    def num_couplings(self) -> int:
        return sum(1 for (i, j) in self._entries if i != j)

    def copy(self) -> "QuboMatrix":
        out = QuboMatrix(self._n)
        out._entries = dict(self._entries)
        return out

    def grown(self, extra: int = 1) -> "QuboMatrix":
        """Copy with `extra` fresh variables appended (their rows empty)."""
        if extra < 0:
            raise ValueError("extra must be >= 0")
        out = QuboMatrix(self._n + extra)
        out._entries = dict(self._entries)
        return out

    def energy(self, bits: Sequence[int]) -> Fraction:
        """Exact Hamiltonian value: sum over stored (i<=j) of x_i x_j Q_ij."""
        x = _check_bits(bits, self._n)
        total = Fraction(0)
        for (i, j), v in self._entries.items():
            if x[i] and x[j]:
                total += v
        return total

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QuboMatrix):
            return NotImplemented
        return self._n == other._n and self._entries == other._entries

    def __hash__(self):  # mutable; containers should not hash it
        raise TypeError("QuboMatrix is unhashable")

    def __repr__(self) -> str:
        return f"QuboMatrix(n={self._n}, entries={self.num_entries})"


def _check_bits(bits: Sequence[int], n: int) -> tuple[int, ...]:
    x = tuple(bits)
    if len(x) != n:
        raise ValueError(f"assignment length {len(x)} does not match n={n}")
    if any(b not in (0, 1) for b in x):
        raise ValueError("assignment entries must be 0 or 1")
    return x


@dataclass(frozen=True)
class QuboStats:
    """Structural statistics with circuit-cost proxies for p cost layers."""

    num_variables: int
    num_couplings: int
    density: Fraction
    cnot_count: int
    zz_layer_count: int


def stats(q: QuboMatrix, p: int = 1) -> QuboStats:
    """Count couplings and derive cost proxies.

    cnot_count is 2 * C * p for C nonzero couplings. zz_layer_count is the
    number of classes in a greedy edge coloring of the coupling graph with
    edges scanned in (i, j) order; each class is one layer of two-qubit
    interactions that can run simultaneously.
    """
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    pairs = [(i, j) for i, j, _ in q.couplings()]
    c = len(pairs)
    max_pairs = q.n * (q.n - 1) // 2
    density = Fraction(c, max_pairs) if max_pairs else Fraction(0)
    return QuboStats(
        num_variables=q.n,
        num_couplings=c,
        density=density,
        cnot_count=2 * c * p,
        zz_layer_count=_greedy_edge_coloring(pairs),
    )


def _greedy_edge_coloring(pairs: list[tuple[int, int]]) -> int:
    used: dict[int, set[int]] = {}
    layers = 0
    for i, j in pairs:
        si = used.setdefault(i, set())
        sj = used.setdefault(j, set())
        color = 0
        while color in si or color in sj:
            color += 1
        si.add(color)
        sj.add(color)
        layers = max(layers, color + 1)
    return layers


# ---------------------------------------------------------------------------
# Fast exact enumeration
# ---------------------------------------------------------------------------

def scaled_int_entries(
    q: QuboMatrix, denominator: int | None = None
) -> tuple[list[tuple[int, int, int]], int]:
    """Entries rescaled to integers by the LCM of denominators.

    Returns (entries, d) with each value v stored as the integer v * d.
    Passing an explicit denominator (a multiple of the natural one) lets two
    matrices share a scale so their integer energies are comparable.
    """
    d = 1
    for _, _, v in q.entries():
        d = d * v.denominator // math.gcd(d, v.denominator)
    if denominator is not None:
        if denominator % d:
            raise ValueError("denominator must be a multiple of the entry LCM")
        d = denominator
    out = [(i, j, int(v * d)) for i, j, v in q.entries()]
    total = sum(abs(v) for _, _, v in out)
    if total >= _INT64_SAFE_LIMIT:
        raise ValueError("entry magnitudes too large for exact int64 enumeration")
    return out, d


def all_energies_scaled(q: QuboMatrix, denominator: int | None = None) -> tuple[np.ndarray, int]:
    """Energies of all 2**n assignments as exact scaled integers.

    Index m encodes the assignment with x_i = (m >> i) & 1. Built one
    variable at a time: turning variable v on adds its diagonal plus the
    couplings to already-set lower-indexed variables, which is applied to
    block slices of the growing table.
    """
    entries, d = scaled_int_entries(q, denominator)
    n = q.n
    diag = [0] * n
    below: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for i, j, v in entries:
        if i == j:
            diag[i] = v
        else:
            below[j].append((i, v))
    energies = np.zeros(1, dtype=np.int64)
    for v in range(n):
        turn_on = np.full(1 << v, diag[v], dtype=np.int64)
        for j, val in below[v]:
            turn_on.reshape(-1, 1 << (j + 1))[:, (1 << j):] += val
        energies = np.concatenate([energies, energies + turn_on])
    return energies, d


def _bit_reversed(indices: np.ndarray, n: int) -> np.ndarray:
    """Map assignment index m to the integer whose bits are reversed over n positions.

    Ascending order of the result is lexicographic order of the bit tuples
    (x_0, ..., x_{n-1}).
    """
    out = np.zeros_like(indices)
    for i in range(n):
        out |= ((indices >> i) & 1) << (n - 1 - i)
    return out


def bits_of_index(m: int, n: int) -> tuple[int, ...]:
    return tuple((m >> i) & 1 for i in range(n))


def enumerate_spectrum(
    q: QuboMatrix, max_n: int = DEFAULT_ENUMERATION_CAP
) -> list[tuple[tuple[int, ...], Fraction]]:
    """All 2**n (assignment, energy) pairs, ascending by energy.

    Ties are broken by lexicographic order of the bit vectors. Refuses
    n > max_n to prevent runaway enumeration.
    """
    if q.n > max_n:
        raise ValueError(f"n={q.n} exceeds enumeration cap {max_n}")
    energies, d = all_energies_scaled(q)
    order = np.lexsort((_bit_reversed(np.arange(energies.size, dtype=np.int64), q.n), energies))
    return [(bits_of_index(int(m), q.n), Fraction(int(energies[m]), d)) for m in order]


# ---------------------------------------------------------------------------
# File format
# ---------------------------------------------------------------------------

def format_value(v: Fraction) -> str:
    return str(v)


def format_qubo(q: QuboMatrix) -> str:
    """Render as the `.qubo` text format: `qubo <n> <m>` then sorted entries."""
    lines = [f"qubo {q.n} {q.num_entries}"]
    for i, j, v in q.entries():
        lines.append(f"{i} {j} {format_value(v)}")
    return "\n".join(lines) + "\n"


def parse_qubo(text: str) -> QuboMatrix:
    """Parse the `.qubo` format; `#` starts a comment, entries must be unique."""
    q: QuboMatrix | None = None
    declared = 0
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if q is None:
            if fields[0] != "qubo" or len(fields) != 3:
                raise ValueError(f"line {lineno}: expected header 'qubo <n> <m>'")
            try:
                n, declared = int(fields[1]), int(fields[2])
            except ValueError:
                raise ValueError(f"line {lineno}: malformed header counts") from None
            q = QuboMatrix(n)
            continue
        if len(fields) != 3:
            raise ValueError(f"line {lineno}: expected '<i> <j> <value>'")
        try:
            i, j = int(fields[0]), int(fields[1])
            v = Fraction(fields[2])
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"line {lineno}: malformed entry {line!r}") from None
        if i > j:
            raise ValueError(f"line {lineno}: entries must have i <= j")
        if not (0 <= i < q.n and 0 <= j < q.n):
            raise ValueError(f"line {lineno}: index pair ({i}, {j}) out of range")
        if (i, j) in seen:
            raise ValueError(f"line {lineno}: duplicate entry ({i}, {j})")
        seen.add((i, j))
        q.set(i, j, v)
    if q is None:
        raise ValueError("missing 'qubo <n> <m>' header")
    if len(seen) != declared:
        raise ValueError(f"header declared {declared} entries, found {len(seen)}")
    return q
