"""Exhaustive certification that a reduction preserves the energy landscape.

For every assignment of the original variables the reduced matrix is scored
at its best ancilla completion and compared with the original energy.
Assignments that set both members of some factored pair are classified
invalid; the remaining (valid) assignments must keep their energy exactly,
invalid ones must not drop, and the global optimum must survive projection.
The three checks are reported separately because an undersized penalty
weight z can break per-assignment non-decrease while still preserving the
optimum.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from .qubo import (
    DEFAULT_ENUMERATION_CAP,
    QuboMatrix,
    all_energies_scaled,
    bits_of_index,
)
from .reducer import ReductionTrace

#: Largest ancilla count best_ancilla_energy will enumerate.
DEFAULT_ANCILLA_CAP = 20

#: Keep reports readable; violations beyond this many are counted, not listed.
MAX_COUNTEREXAMPLES = 16


@dataclass(frozen=True)
class EquivalenceReport:
    valid_count: int
    invalid_count: int
    max_valid_energy_deviation: Fraction
    invalid_non_decrease: bool
    optimum_preserved: bool
    min_energy_original: Fraction
    min_energy_reduced: Fraction
    counterexamples: tuple[tuple[int, ...], ...]

    @property
    def all_checks_pass(self) -> bool:
        return (
            self.max_valid_energy_deviation == 0
            and self.invalid_non_decrease
            and self.optimum_preserved
        )


def is_valid_assignment(trace: ReductionTrace, bits: Sequence[int]) -> bool:
    """False iff some factored pair of original variables has both bits set.

    Pairs whose members include an ancilla from an earlier step cannot be
    judged from the original bits and never invalidate an assignment here;
    the conflict test that admitted them guarantees a minimizing completion
    never sets both anyway.
    """
    x = tuple(bits)
    if len(x) != trace.original_n:
        raise ValueError(
            f"assignment length {len(x)} does not match original size {trace.original_n}"
        )
    for step in trace.steps:
        if step.j < trace.original_n and x[step.i] and x[step.j]:
            return False
    return True


def best_ancilla_energy(
    qmod: QuboMatrix,
    trace: ReductionTrace,
    bits: Sequence[int],
    max_ancillas: int = DEFAULT_ANCILLA_CAP,
) -> tuple[Fraction, tuple[int, ...]]:
    """Minimum reduced energy over every ancilla completion of `bits`.

    Returns the energy and the lexicographically smallest minimizing
    completion. Exhaustive in 2**a; refuses more than max_ancillas ancillas.
    """
    x = tuple(bits)
    if len(x) != trace.original_n:
        raise ValueError(
            f"assignment length {len(x)} does not match original size {trace.original_n}"
        )
    a = trace.ancilla_count
    if a > max_ancillas:
        raise ValueError(f"{a} ancillas exceed cap {max_ancillas}")
    if qmod.n != trace.reduced_n:
        raise ValueError("reduced matrix size does not match trace")
    best_energy: Fraction | None = None
    best_tail: tuple[int, ...] = ()
    for tail in itertools.product((0, 1), repeat=a):
        e = qmod.energy(x + tail)
        if best_energy is None or e < best_energy:
            best_energy, best_tail = e, tail
    return best_energy, best_tail


def or_completion(trace: ReductionTrace, bits: Sequence[int]) -> tuple[int, ...]:
    """Closed-form ancilla completion: each ancilla gets the OR of its pair.

    Evaluated in step order so pairs may reference earlier ancillas. Equals
    the exhaustive optimum whenever no two ancillas are coupled and every
    step's z is at least the positive mass of its shared couplings (the
    safe and tight modes both guarantee that).
    """
    x = list(bits)
    if len(x) != trace.original_n:
        raise ValueError("assignment length does not match original size")
    for step in trace.steps:
        x.append(x[step.i] | x[step.j])
    return tuple(x[trace.original_n:])


def project_assignment(trace: ReductionTrace, bits: Sequence[int]) -> tuple[int, ...]:
    """Drop the ancilla tail of a reduced-space assignment."""
    x = tuple(bits)
    if len(x) != trace.reduced_n:
        raise ValueError(
            f"assignment length {len(x)} does not match reduced size {trace.reduced_n}"
        )
    return x[: trace.original_n]


def verify_equivalence(
    q: QuboMatrix,
    qmod: QuboMatrix,
    trace: ReductionTrace,
    max_n: int = DEFAULT_ENUMERATION_CAP,
) -> EquivalenceReport:
    """Exhaustively compare the original and reduced energy landscapes.

    Enumerates all 2**(n+a) reduced assignments exactly (integer-scaled), so
    n must stay at or below max_n and the combined size within reach of
    memory; intended for oracle-sized instances.
    """
    n = trace.original_n
    if q.n != n:
        raise ValueError(f"original matrix has {q.n} variables, trace expects {n}")
    if qmod.n != trace.reduced_n:
        raise ValueError(
            f"reduced matrix has {qmod.n} variables, trace expects {trace.reduced_n}"
        )
    if n > max_n:
        raise ValueError(f"originalN={n} exceeds enumeration cap {max_n}")
    a = trace.ancilla_count

    denom = 1
    for matrix in (q, qmod):
        for _, _, v in matrix.entries():
            denom = lcm(denom, v.denominator)
    orig, _ = all_energies_scaled(q, denom)
    reduced, _ = all_energies_scaled(qmod, denom)
    best = reduced.reshape(1 << a, 1 << n).min(axis=0)

    index = np.arange(1 << n, dtype=np.int64)
    invalid = np.zeros(1 << n, dtype=bool)
    for step in trace.steps:
        if step.j < n:
            invalid |= ((index >> step.i) & 1 & (index >> step.j)).astype(bool)
    valid = ~invalid

    deviation = np.abs(best - orig)
    max_dev_scaled = int(deviation[valid].max()) if valid.any() else 0
    non_decrease = bool(np.all(best[invalid] >= orig[invalid])) if invalid.any() else True

    min_orig_scaled = int(orig.min())
    min_red_scaled = int(best.min())
    reduced_minimizers = best == min_red_scaled
    optimum_preserved = min_red_scaled == min_orig_scaled and bool(
        np.all(orig[reduced_minimizers] == min_orig_scaled)
    )

    bad = valid & (deviation != 0)
    bad |= invalid & (best < orig)
    if not optimum_preserved:
        bad |= reduced_minimizers & ~((best == min_orig_scaled) & (orig == min_orig_scaled))
    bad_indices = np.flatnonzero(bad)[:MAX_COUNTEREXAMPLES]

    return EquivalenceReport(
        valid_count=int(valid.sum()),
        invalid_count=int(invalid.sum()),
        max_valid_energy_deviation=Fraction(max_dev_scaled, denom),
        invalid_non_decrease=non_decrease,
        optimum_preserved=optimum_preserved,
        min_energy_original=Fraction(min_orig_scaled, denom),
        min_energy_reduced=Fraction(min_red_scaled, denom),
        counterexamples=tuple(bits_of_index(int(m), n) for m in bad_indices),
    )


def format_report(report: EquivalenceReport) -> str:
    """Line-oriented rendering with a fixed field order."""
    if report.counterexamples:
        examples = " ".join("".join(map(str, x)) for x in report.counterexamples)
    else:
        examples = "none"
    lines = [
        f"validCount: {report.valid_count}",
        f"invalidCount: {report.invalid_count}",
        f"maxValidEnergyDeviation: {report.max_valid_energy_deviation}",
        f"invalidNonDecrease: {'true' if report.invalid_non_decrease else 'false'}",
        f"optimumPreserved: {'true' if report.optimum_preserved else 'false'}",
        f"minEnergyOriginal: {report.min_energy_original}",
        f"minEnergyReduced: {report.min_energy_reduced}",
        f"counterexamples: {examples}",
    ]
    return "\n".join(lines) + "\n"
