"""Classical solvers: exhaustive ground truth and simulated annealing.

Annealing works on an integer-rescaled copy of the matrix so flip deltas
stay exact; only the Metropolis acceptance test uses floating point. All
randomness flows from the caller's seed, with one derived child seed per
restart, so results are reproducible and restarts could run independently.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .qubo import (
    DEFAULT_ENUMERATION_CAP,
    QuboMatrix,
    _bit_reversed,
    all_energies_scaled,
    bits_of_index,
    scaled_int_entries,
)


@dataclass(frozen=True)
class SolveResult:
    best_assignment: tuple[int, ...]
    best_energy: Fraction
    method: str
    samples: int
    success_fraction: float | None = None
    restart_bests: tuple[tuple[tuple[int, ...], Fraction], ...] = ()


def exhaustive_solve(q: QuboMatrix, max_n: int = DEFAULT_ENUMERATION_CAP) -> SolveResult:
    """Exact global minimum; ties resolve to the lexicographically smallest bits."""
    if q.n > max_n:
        raise ValueError(f"n={q.n} exceeds enumeration cap {max_n}")
    energies, d = all_energies_scaled(q)
    best = energies.min()
    minimizers = np.flatnonzero(energies == best)
    winner = minimizers[np.argmin(_bit_reversed(minimizers, q.n))]
    return SolveResult(
        best_assignment=bits_of_index(int(winner), q.n),
        best_energy=Fraction(int(best), d),
        method="exhaustive",
        samples=int(energies.size),
    )


def flip_delta(q: QuboMatrix, bits: Sequence[int], i: int) -> Fraction:
    """Exact energy change of flipping bit i: (1-2x_i)(Q_ii + sum_j Q_ij x_j)."""
    x = tuple(bits)
    acc = q.get(i, i)
    for j, v in q.row(i).items():
        if x[j]:
            acc += v
    return (1 - 2 * x[i]) * acc


def _temperatures(q: QuboMatrix, sweeps: int, t_start, t_end) -> list[float]:
    magnitudes = [abs(v) for _, _, v in q.entries()]
    if t_start is None:
        t_start = float(max(magnitudes)) if magnitudes else 1.0
    if t_end is None:
        t_end = 0.01 * float(min(magnitudes)) if magnitudes else 0.01
    t_start = max(float(t_start), 1e-12)
    t_end = min(max(float(t_end), 1e-12), t_start)
    if sweeps <= 1:
        return [t_start] * sweeps
    ratio = (t_end / t_start) ** (1.0 / (sweeps - 1))
    return [t_start * ratio**s for s in range(sweeps)]


def simulated_anneal(
    q: QuboMatrix,
    sweeps: int = 1000,
    restarts: int = 10,
    seed: int = 0,
    t_start: float | None = None,
    t_end: float | None = None,
    reference_energy: Fraction | None = None,
) -> SolveResult:
    """Single-bit-flip Metropolis annealing with a geometric cooling schedule.

    One sweep proposes flipping each bit once, in index order. The default
    schedule runs from the largest entry magnitude down to 1% of the
    smallest. With sweeps=0 each restart just reports its random initial
    state. When reference_energy is given, success_fraction counts the
    restarts whose best energy reached it.
    """
    if restarts < 1:
        raise ValueError(f"restarts must be >= 1, got {restarts}")
    if sweeps < 0:
        raise ValueError(f"sweeps must be >= 0, got {sweeps}")
    n = q.n
    entries, denom = scaled_int_entries(q)
    diag = [0] * n
    neighbors: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for i, j, v in entries:
        if i == j:
            diag[i] = v
        else:
            neighbors[i].append((j, v))
            neighbors[j].append((i, v))
    temps = _temperatures(q, sweeps, t_start, t_end)

    master = random.Random(seed)
    child_seeds = [master.getrandbits(64) for _ in range(restarts)]

    restart_bests: list[tuple[tuple[int, ...], Fraction]] = []
    for child in child_seeds:
        rng = random.Random(child)
        x = [rng.randint(0, 1) for _ in range(n)]
        energy = sum(diag[i] for i in range(n) if x[i]) + sum(
            v for i, j, v in entries if i != j and x[i] and x[j]
        )
        best_energy, best_x = energy, list(x)
        for t in temps:
            for i in range(n):
                delta = diag[i]
                for j, v in neighbors[i]:
                    if x[j]:
                        delta += v
                if x[i]:
                    delta = -delta
                if delta <= 0 or rng.random() < math.exp(-delta / (denom * t)):
                    x[i] ^= 1
                    energy += delta
                    if energy < best_energy:
                        best_energy, best_x = energy, list(x)
        restart_bests.append((tuple(best_x), Fraction(best_energy, denom)))

    overall_bits, overall_energy = min(
        restart_bests, key=lambda be: (be[1], be[0])
    )
    success = None
    if reference_energy is not None:
        hits = sum(1 for _, e in restart_bests if e == reference_energy)
        success = hits / restarts
    return SolveResult(
        best_assignment=overall_bits,
        best_energy=overall_energy,
        method="sa",
        samples=restarts * sweeps * n,
        success_fraction=success,
        restart_bests=tuple(restart_bests),
    )
