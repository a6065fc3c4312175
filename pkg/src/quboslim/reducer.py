"""Coupling reduction by factoring shared couplings into ancilla variables.

The transformation targets *conflicting* pairs: variables (i, j) whose
coupling is so strongly positive that no minimizer ever sets both. When such
a pair also has identical nonzero couplings to at least 3 other variables,
those shared couplings can be rerouted through one fresh ancilla variable,
deleting 2*|shared| couplings and adding |shared| + 2, a net loss of at
least one coupling per ancilla. A penalty weight z keeps the energies of
pair-respecting assignments unchanged under the best ancilla value and
prevents the optimum from escaping to pair-violating assignments.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .qubo import QuboMatrix, as_fraction, format_value


@dataclass(frozen=True)
class ReductionStep:
    ancilla: int
    i: int
    j: int
    z: Fraction
    syms: tuple[int, ...]


@dataclass(frozen=True)
class ReductionTrace:
    """Replayable record of every factoring step, in application order."""

    original_n: int
    steps: tuple[ReductionStep, ...] = ()

    def __post_init__(self):
        for count, step in enumerate(self.steps):
            if step.ancilla != self.original_n + count:
                raise ValueError("ancilla indices must be consecutive from original_n")
            if not step.i < step.j:
                raise ValueError("step pair must satisfy i < j")

    @property
    def ancilla_count(self) -> int:
        return len(self.steps)

    @property
    def reduced_n(self) -> int:
        return self.original_n + len(self.steps)


def conflict_list(q: QuboMatrix) -> list[tuple[int, int]]:
    """Pairs (i, j), i < j, whose coupling outweighs both rows' negative mass.

    Z[i] sums every negative entry of row i (diagonal included, symmetric
    access). A pair with Q_ij > -Z[i] - Z[j] can never have both variables
    set in a minimizer: switching either off wins regardless of the rest of
    the assignment, so the pair is conflicting. Returned in lexicographic
    order.
    """
    n = q.n
    z = [Fraction(0)] * n
    for i, j, v in q.entries():
        if v < 0:
            z[i] += v
            if i != j:
                z[j] += v
    out = []
    for i, j, v in q.couplings():
        if v > -z[i] - z[j]:
            out.append((i, j))
    return sorted(out)


def most_symmetric_pair(
    q: QuboMatrix, conflicts: list[tuple[int, int]]
) -> tuple[list[int], tuple[int, int]]:
    """The conflicting pair sharing the most identical nonzero couplings.

    For each pair the shared set is {k not in {i, j} : Q_ik == Q_jk != 0}
    under exact equality. Later pairs win ties (>= update while scanning
    conflicts in order), matching the reduction loop's deterministic trace.
    """
    if not conflicts:
        raise ValueError("conflict list is empty")
    best_pair: tuple[int, int] | None = None
    best_syms: list[int] = []
    for i, j in conflicts:
        row_i = q.row(i)
        row_j = q.row(j)
        syms = sorted(
            k for k, v in row_i.items() if k != j and row_j.get(k) == v
        )
        if best_pair is None or len(syms) >= len(best_syms):
            best_pair, best_syms = (i, j), syms
    return best_syms, best_pair


def enhance(
    q: QuboMatrix, pair: tuple[int, int], syms, z
) -> QuboMatrix:
    """Factor the shared couplings of `pair` into one new ancilla variable.

    With a the fresh index: both pair diagonals and the ancilla diagonal
    gain z, the pair members couple to the ancilla with -2z, the pair
    coupling gains 2z on top of its current value, and each shared coupling
    Q_ik moves to Q_ka with Q_ik and Q_jk zeroed. Returns a new matrix; the
    input is untouched.
    """
    zf = as_fraction(z)
    if zf <= 0:
        raise ValueError(f"z must be > 0, got {zf}")
    i, j = pair
    if i == j:
        raise ValueError("pair members must differ")
    sym_list = list(syms)
    if len(set(sym_list)) != len(sym_list):
        raise ValueError("syms contains duplicates")
    if i in sym_list or j in sym_list:
        raise ValueError("syms must be disjoint from the pair")
    if q.get(i, j) == 0:
        raise ValueError(f"pair ({i}, {j}) has no coupling to factor")
    out = q.grown(1)
    a = q.n
    out.add(i, i, zf)
    out.add(j, j, zf)
    out.set(a, a, zf)
    out.set(i, a, -2 * zf)
    out.set(j, a, -2 * zf)
    out.add(i, j, 2 * zf)
    for k in sym_list:
        out.set(k, a, q.get(i, k))
        out.set(i, k, 0)
        out.set(j, k, 0)
    return out


def _safe_z(q: QuboMatrix) -> Fraction:
    return sum((abs(v) for _, _, v in q.couplings()), Fraction(0))


def _tight_z(q: QuboMatrix, i: int, syms) -> Fraction:
    total = sum((q.get(i, k) for k in syms), Fraction(0))
    z = abs(total)
    # shared couplings can cancel to zero; any positive weight is then safe
    return z if z > 0 else Fraction(1)


def factor_semi_symmetries(
    q: QuboMatrix,
    num_ancillas: int | None = None,
    z_mode: str | int | Fraction = "safe",
    min_shared: int = 3,
) -> tuple[QuboMatrix, ReductionTrace]:
    """Repeatedly factor the most shareable conflicting pair into ancillas.

    Stops when no conflicting pair remains, the best pair shares fewer than
    `min_shared` couplings, or the ancilla budget is spent. num_ancillas =
    None means unlimited (termination is still guaranteed: every step
    removes at least one coupling net).

    z_mode selects the per-step penalty weight:
      "safe"   one global z = sum of |couplings| of the input matrix;
      "tight"  per step, |sum of the shared couplings| at that step;
      a number fixes z for every step (must be > 0).

    Returns the reduced matrix plus the trace needed to replay or verify
    the reduction. The input matrix is not modified.
    """
    if num_ancillas is not None and num_ancillas < 0:
        raise ValueError("num_ancillas must be >= 0 or None")
    if min_shared < 3:
        raise ValueError("min_shared below 3 loses the net coupling reduction")
    fixed_z: Fraction | None = None
    if z_mode == "safe":
        safe_value = _safe_z(q)
    elif z_mode == "tight":
        safe_value = None
    else:
        fixed_z = as_fraction(z_mode)
        if fixed_z <= 0:
            raise ValueError(f"fixed z must be > 0, got {fixed_z}")
        safe_value = None

    work = q.copy()
    steps: list[ReductionStep] = []
    conflicts = conflict_list(work)
    while conflicts:
        syms, (i, j) = most_symmetric_pair(work, conflicts)
        if len(syms) < min_shared:
            break
        if num_ancillas is not None and len(steps) == num_ancillas:
            break
        if fixed_z is not None:
            z = fixed_z
        elif z_mode == "safe":
            z = safe_value
        else:
            z = _tight_z(work, i, syms)
        ancilla = work.n
        work = enhance(work, (i, j), syms, z)
        steps.append(ReductionStep(ancilla, i, j, z, tuple(syms)))
        conflicts = conflict_list(work)
    return work, ReductionTrace(q.n, tuple(steps))


def replay_trace(q: QuboMatrix, trace: ReductionTrace) -> QuboMatrix:
    """Re-apply a recorded reduction to its original matrix."""
    if q.n != trace.original_n:
        raise ValueError(
            f"matrix has {q.n} variables, trace expects {trace.original_n}"
        )
    work = q.copy()
    for step in trace.steps:
        if step.ancilla != work.n:
            raise ValueError("trace ancilla index does not match matrix growth")
        work = enhance(work, (step.i, step.j), step.syms, step.z)
    return work


# ---------------------------------------------------------------------------
# Trace file format
# ---------------------------------------------------------------------------

def format_trace(trace: ReductionTrace) -> str:
    """`trace <originalN>` then one line per step, replayable bit-exactly."""
    lines = [f"trace {trace.original_n}"]
    for s in trace.steps:
        syms = ",".join(str(k) for k in s.syms)
        lines.append(
            f"ancilla {s.ancilla} pair {s.i} {s.j} z {format_value(s.z)} syms {syms}"
        )
    return "\n".join(lines) + "\n"


def parse_trace(text: str) -> ReductionTrace:
    original_n: int | None = None
    steps: list[ReductionStep] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if original_n is None:
            if fields[0] != "trace" or len(fields) != 2:
                raise ValueError(f"line {lineno}: expected header 'trace <originalN>'")
            try:
                original_n = int(fields[1])
            except ValueError:
                raise ValueError(f"line {lineno}: malformed original size") from None
            continue
        expected = ("ancilla", None, "pair", None, None, "z", None, "syms", None)
        if len(fields) != len(expected) or any(
            tag is not None and fields[pos] != tag for pos, tag in enumerate(expected)
        ):
            raise ValueError(
                f"line {lineno}: expected 'ancilla <a> pair <i> <j> z <value> syms <list>'"
            )
        try:
            ancilla = int(fields[1])
            i, j = int(fields[3]), int(fields[4])
            z = Fraction(fields[6])
            syms = tuple(int(k) for k in fields[8].split(",") if k != "")
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"line {lineno}: malformed step {line!r}") from None
        steps.append(ReductionStep(ancilla, i, j, z, syms))
    if original_n is None:
        raise ValueError("missing 'trace <originalN>' header")
    return ReductionTrace(original_n, tuple(steps))
