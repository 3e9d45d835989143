"""Vertex-weighted graph problems with product measures: independent set,
bipartite independent set, and directed flow design.

Vertices are 1-based. For IS/BIS an assignment selects the set A = {x :
sigma(x)=1}; the measure is the product of selected vertex weights when A is
independent and exactly 0 otherwise (the empty set scores 1). For FLOW each
edge (x,y) contributes its rate when sigma(x) >= sigma(y) and every selected
vertex contributes its influx rate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ArgumentError, ArityError, CapExceededError
from .instances import DEFAULT_MAX_N, SolveResult, int_to_assignment

KINDS = ("IS", "BIS", "FLOW")


@dataclass(frozen=True)
class GraphInstance:
    kind: str
    num_vertices: int
    edges: tuple[tuple[int, int], ...]
    weights: tuple[Fraction, ...]  # vertex weights (IS/BIS) or influx rates (FLOW)
    rates: tuple[Fraction, ...] = ()  # per-edge flow rates, FLOW only
    blocks: tuple[int, ...] = ()  # bipartition sides, BIS only

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ArgumentError(f"graph kind must be one of {KINDS}, got {self.kind}")
        n = self.num_vertices
        if n < 0:
            raise ArgumentError("vertex count must be nonnegative")
        weights = tuple(Fraction(w) for w in self.weights)
        if len(weights) != n:
            raise ArityError(f"need {n} vertex weights, got {len(weights)}")
        if any(w < 0 for w in weights):
            raise ArgumentError("vertex weights must be nonnegative")
        object.__setattr__(self, "weights", weights)
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        for u, v in edges:
            if not (1 <= u <= n and 1 <= v <= n):
                raise ArgumentError(f"edge ({u},{v}) out of range 1..{n}")
            if self.kind != "FLOW" and u == v:
                raise ArgumentError(f"self-loop ({u},{v}) not allowed for {self.kind}")
        object.__setattr__(self, "edges", edges)
        if self.kind == "FLOW":
            rates = tuple(Fraction(r) for r in self.rates)
            if len(rates) != len(edges):
                raise ArityError(f"need {len(edges)} edge rates, got {len(rates)}")
            if any(r < 1 for r in rates):
                raise ArgumentError("flow rates must be >= 1")
            object.__setattr__(self, "rates", rates)
        elif self.rates:
            raise ArgumentError("edge rates are for FLOW graphs only")
        if self.kind == "BIS":
            blocks = tuple(int(b) for b in self.blocks) if self.blocks else (0,) * n
            if len(blocks) != n or any(b not in (0, 1) for b in blocks):
                raise ArgumentError("BIS needs one 0/1 block per vertex")
            for u, v in edges:
                if blocks[u - 1] == blocks[v - 1]:
                    raise ArgumentError(
                        f"edge ({u},{v}) stays inside block {blocks[u - 1]}; "
                        "not a valid bipartition"
                    )
            object.__setattr__(self, "blocks", blocks)
        elif self.blocks:
            raise ArgumentError("bipartition blocks are for BIS graphs only")


def graph_measure(g: GraphInstance, bits: Sequence[int]) -> Fraction:
    if len(bits) != g.num_vertices:
        raise ArityError(
            f"assignment length {len(bits)} != vertex count {g.num_vertices}"
        )
    if g.kind == "FLOW":
        total = Fraction(1)
        for (u, v), rate in zip(g.edges, g.rates):
            if bits[u - 1] >= bits[v - 1]:
                total *= rate
        for x in range(1, g.num_vertices + 1):
            if bits[x - 1] == 1:
                total *= g.weights[x - 1]
                if total == 0:
                    return Fraction(0)
        return total
    # IS / BIS
    for u, v in g.edges:
        if bits[u - 1] == 1 and bits[v - 1] == 1:
            return Fraction(0)
    total = Fraction(1)
    for x in range(1, g.num_vertices + 1):
        if bits[x - 1] == 1:
            total *= g.weights[x - 1]
            if total == 0:
                return Fraction(0)
    return total


def graph_brute_force(
    g: GraphInstance, max_n: int = DEFAULT_MAX_N
) -> SolveResult:
    """Exhaustive exact optimum with the lexicographically smallest argmax."""
    n = g.num_vertices
    if n > max_n:
        raise CapExceededError(
            f"{n} vertices exceed the exhaustive cap {max_n}; raise max_n"
        )
    best = Fraction(-1)
    best_at = 0
    for a in range(1 << n):
        value = graph_measure(g, int_to_assignment(a, n))
        if value > best:
            best, best_at = value, a
    return SolveResult(best, int_to_assignment(best_at, n), "brute_force")
