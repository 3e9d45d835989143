"""Product-measured CSP instances: the measure, the exhaustive solver used as
the correctness oracle everywhere, the approximation harness, and the ratio
check with its zero rule.

Assignments are plain 0/1 tuples; position l holds the value of variable
x_{l+1}. An assignment's integer encoding (x1 as the most significant bit)
makes numeric order coincide with lexicographic order, which is the argmax
tie-break everywhere.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import ArgumentError, ArityError, CapExceededError
from .ratmath import frac_log2
from .tables import ConstraintTable

Assignment = tuple[int, ...]

DEFAULT_MAX_N = 24

Application = tuple[ConstraintTable, tuple[int, ...]]


@dataclass(frozen=True)
class CspInstance:
    """A variable count plus an ordered multiset of constraint applications.

    Variable indices are 1-based; repeats inside one tuple are allowed (the
    constraint then reads the same variable several times).
    """

    num_vars: int
    applications: tuple[Application, ...]

    def __post_init__(self):
        if self.num_vars < 0:
            raise ArgumentError("variable count must be nonnegative")
        apps = []
        for table, variables in self.applications:
            variables = tuple(int(v) for v in variables)
            if len(variables) != table.arity:
                raise ArityError(
                    f"{table.name or 'constraint'} has arity {table.arity}, "
                    f"applied to {len(variables)} variables"
                )
            for v in variables:
                if not (1 <= v <= self.num_vars):
                    raise ArgumentError(
                        f"variable index {v} out of range 1..{self.num_vars}"
                    )
            apps.append((table, variables))
        object.__setattr__(self, "applications", tuple(apps))

    def tables(self) -> list[ConstraintTable]:
        """Distinct applied tables, in first-use order."""
        seen = []
        for table, _ in self.applications:
            if table not in seen:
                seen.append(table)
        return seen

    def named_tables(self) -> tuple[dict[int, str], dict[str, ConstraintTable]]:
        """A stable name per applied table object.

        Returns (object id -> name, name -> table). Unnamed tables get
        positional names; equal tables keep their own names, and a name clash
        between unequal tables is uniquified.
        """
        names: dict[int, str] = {}
        chosen: dict[str, ConstraintTable] = {}
        pos = 0
        for table, _ in self.applications:
            if id(table) in names:
                continue
            pos += 1
            name = table.name or f"c{pos}"
            while name in chosen and chosen[name] != table:
                name += "x"
            chosen.setdefault(name, table)
            names[id(table)] = name
        return names, chosen


def assignment_to_int(bits: Sequence[int]) -> int:
    value = 0
    for b in bits:
        value = (value << 1) | (b & 1)
    return value


def int_to_assignment(value: int, n: int) -> Assignment:
    return tuple((value >> (n - 1 - i)) & 1 for i in range(n))


def measure(inst: CspInstance, bits: Sequence[int]) -> Fraction:
    """Exact product of all applied constraint values; empty product is 1 and
    any zero factor makes the whole measure exactly 0."""
    if len(bits) != inst.num_vars:
        raise ArityError(
            f"assignment length {len(bits)} != variable count {inst.num_vars}"
        )
    total = Fraction(1)
    for table, variables in inst.applications:
        value = table.weights[
            assignment_to_int([bits[v - 1] for v in variables])
        ]
        if value == 0:
            return Fraction(0)
        total *= value
    return total


@dataclass(frozen=True)
class SolveResult:
    """Exact optimum with its maximizing assignment.

    log2 carries the optimum's logarithm for display; it is None exactly when
    the optimum is zero (is_zero is the explicit flag).
    """

    optimum: Fraction
    argmax: Assignment
    method: str
    is_zero: bool = field(init=False)
    log2: float | None = field(init=False)

    def __post_init__(self):
        zero = self.optimum == 0
        object.__setattr__(self, "is_zero", zero)
        object.__setattr__(self, "log2", None if zero else frac_log2(self.optimum))


def _scan_chunk(
    start: int,
    stop: int,
    napps: int,
    shifts: list[tuple[int, ...]],
    offsets: list[tuple[int, ...]],
    tables: list[tuple[int, ...]],
) -> tuple[int, int]:
    """Best (integer value, smallest assignment int) over [start, stop)."""
    best = -1
    best_at = start
    for a in range(start, stop):
        value = 1
        for t in range(napps):
            idx = 0
            sh = shifts[t]
            off = offsets[t]
            for p in range(len(sh)):
                idx |= ((a >> sh[p]) & 1) << off[p]
            value *= tables[t][idx]
            if value == 0:
                break
        if value > best:
            best = value
            best_at = a
    return best, best_at


def brute_force(
    inst: CspInstance,
    max_n: int = DEFAULT_MAX_N,
    workers: int = 1,
) -> SolveResult:
    """Exhaustive exact optimum; argmax is the lexicographically smallest
    maximizer, independent of how the assignment space is partitioned."""
    n = inst.num_vars
    if n > max_n:
        raise CapExceededError(
            f"{n} variables exceed the exhaustive cap {max_n}; raise max_n, or "
            "use the tractable or approximate paths"
        )
    # Clear denominators per application: a constant factor per application
    # cannot change which assignments maximize the product.
    denominator = Fraction(1)
    shifts, offsets, int_tables = [], [], []
    for table, variables in inst.applications:
        k = table.arity
        lcm = 1
        for w in table.weights:
            lcm = lcm * w.denominator // math.gcd(lcm, w.denominator)
        denominator *= lcm
        int_tables.append(tuple(int(w * lcm) for w in table.weights))
        shifts.append(tuple(n - v for v in variables))
        offsets.append(tuple(k - 1 - p for p in range(k)))
    napps = len(inst.applications)
    total = 1 << n
    if workers <= 1 or total < 2 * workers:
        best, best_at = _scan_chunk(0, total, napps, shifts, offsets, int_tables)
    else:
        bounds = [total * w // workers for w in range(workers + 1)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(
                pool.map(
                    lambda w: _scan_chunk(
                        bounds[w], bounds[w + 1], napps, shifts, offsets, int_tables
                    ),
                    range(workers),
                )
            )
        best, best_at = -1, 0
        for value, at in parts:  # chunk order = ascending assignment ranges
            if value > best:
                best, best_at = value, at
    return SolveResult(
        Fraction(best, 1) / denominator, int_to_assignment(best_at, n), "brute_force"
    )


def check_ratio(
    optimum: Fraction, value: Fraction, alpha: float | Fraction
) -> bool:
    """The two-sided approximation bound 1/alpha <= value/optimum <= alpha,
    with the zero rule: a zero optimum demands a zero value."""
    if alpha < 1:
        raise ArgumentError(f"approximation factor must be >= 1, got {alpha}")
    if optimum == 0:
        return value == 0
    if value == 0:
        return False
    bound = Fraction(alpha)
    ratio = Fraction(value) / Fraction(optimum)
    return 1 / bound <= ratio <= bound


def hill_climb(
    inst: CspInstance, seed: int = 0, restarts: int = 8
) -> Assignment:
    """Best-effort local search: greedy single-bit improvement from seeded
    restarts. No approximation guarantee is claimed."""
    import random

    n = inst.num_vars
    rng = random.Random(seed)
    space = 1 << n
    count = min(restarts, space)
    starts = rng.sample(range(space), count) if space <= (1 << 22) else [
        rng.randrange(space) for _ in range(count)
    ]
    best_bits: Assignment = (0,) * n
    best_value = measure(inst, best_bits)
    for start in starts:
        bits = list(int_to_assignment(start, n))
        value = measure(inst, bits)
        improved = True
        while improved:
            improved = False
            for i in range(n):
                bits[i] ^= 1
                candidate = measure(inst, bits)
                if candidate > value:
                    value = candidate
                    improved = True
                else:
                    bits[i] ^= 1
        if value > best_value or (
            value == best_value and assignment_to_int(bits) < assignment_to_int(best_bits)
        ):
            best_value, best_bits = value, tuple(bits)
    return best_bits


def approx_scheme(
    inst: CspInstance,
    eps: Fraction | float,
    strategy: str = "exact",
    seed: int = 0,
    restarts: int = 8,
    max_n: int = DEFAULT_MAX_N,
) -> Assignment:
    """Randomized-approximation-scheme harness.

    The exact strategy always meets the 2^eps bound; hill_climb is a
    best-effort exerciser for the harness with no guarantee.
    """
    if not (0 < eps < 1):
        raise ArgumentError(f"error tolerance must lie in (0,1), got {eps}")
    if strategy == "exact":
        return brute_force(inst, max_n=max_n).argmax
    if strategy in ("hill", "hill_climb"):
        return hill_climb(inst, seed=seed, restarts=restarts)
    raise ArgumentError(f"unknown strategy {strategy!r}")
