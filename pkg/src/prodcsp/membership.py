"""Decision procedures, with machine-checkable certificates, for the structural
classes of weighted Boolean constraints:

- nonzero:     every output is positive
- degenerate:  a product of unary factors on distinct variables
- ed:          a product of unary factors, binary equalities, and binary
               disequalities (parity links)
- af:          a degenerate part times a star of binary affine relations
               sharing one pivot variable
- imopt:       a product of unary factors and implication-weighted factors
               (1,1,lambda,1) with 0 <= lambda < 1

plus the two support predicates (affine support, implication-definable
support) and the multilinear log2 expansion used by the full-support
imopt test.

Conventions for the degenerate corner cases:
- the all-zero constraint of arity >= 1 belongs to ed/af/imopt/degenerate
  (realizable with a (0,0) unary factor);
- an arity-0 constraint (c) belongs to these classes iff c == 1 (the empty
  product), since there is no variable to hang a factor on.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional

import numpy as np

from .construct import ConstructionScript
from .errors import ArgumentError, DomainError
from .ratmath import frac_log2, rel_close
from .tables import ConstraintTable, Support

ONE = Fraction(1)
ZERO = Fraction(0)


# ---------------------------------------------------------------------------
# certificates


def _unary_product(
    factors: tuple[tuple[Fraction, Fraction], ...], index: int, arity: int
) -> Fraction:
    value = ONE
    for var in range(1, arity + 1):
        value *= factors[var - 1][(index >> (arity - var)) & 1]
        if value == 0:
            return ZERO
    return value


@dataclass(frozen=True)
class DegenerateCertificate:
    """Unary factors whose pointwise product reproduces f exactly."""

    unary_factors: tuple[tuple[Fraction, Fraction], ...]

    def to_table(self) -> ConstraintTable:
        k = len(self.unary_factors)
        return ConstraintTable(
            k, tuple(_unary_product(self.unary_factors, i, k) for i in range(1 << k))
        )


@dataclass(frozen=True)
class EdCertificate:
    """Pins + parity links + unary factors reproducing f."""

    pins: tuple[tuple[int, int], ...]  # (variable, forced bit)
    parity_links: frozenset[tuple[int, int, str]]  # (i, j, "equal"|"unequal")
    unary_factors: tuple[tuple[Fraction, Fraction], ...]

    def to_table(self) -> ConstraintTable:
        k = len(self.unary_factors)
        out = []
        for idx in range(1 << k):
            bit = lambda v: (idx >> (k - v)) & 1
            ok = all(bit(v) == c for v, c in self.pins) and all(
                (bit(i) ^ bit(j)) == (0 if parity == "equal" else 1)
                for i, j, parity in self.parity_links
            )
            out.append(_unary_product(self.unary_factors, idx, k) if ok else ZERO)
        return ConstraintTable(k, tuple(out))


@dataclass(frozen=True)
class AfCertificate:
    """Unary factors times binary affine relations all sharing the pivot.

    Pins are encoded as zero entries of the unary factors, so the fields
    alone rebuild f.
    """

    pivot: int
    binary_relations: tuple[tuple[int, frozenset[tuple[int, int]]], ...]
    unary_factors: tuple[tuple[Fraction, Fraction], ...]

    def to_table(self) -> ConstraintTable:
        k = len(self.unary_factors)
        out = []
        for idx in range(1 << k):
            bit = lambda v: (idx >> (k - v)) & 1
            ok = all((bit(self.pivot), bit(j)) in rel for j, rel in self.binary_relations)
            out.append(_unary_product(self.unary_factors, idx, k) if ok else ZERO)
        return ConstraintTable(k, tuple(out))


@dataclass(frozen=True)
class ImOptCertificate:
    """Unary factors plus (1,1,lambda,1) pair factors reproducing f.

    A pair (r, s, lam) contributes lam exactly when x_r=1 and x_s=0;
    lam == 0 encodes a hard implication. Pins are zero entries of the
    unary factors.
    """

    unary_factors: tuple[tuple[Fraction, Fraction], ...]
    lambda_pairs: frozenset[tuple[int, int, Fraction]]

    def to_table(self) -> ConstraintTable:
        k = len(self.unary_factors)
        out = []
        for idx in range(1 << k):
            bit = lambda v: (idx >> (k - v)) & 1
            value = _unary_product(self.unary_factors, idx, k)
            for r, s, lam in self.lambda_pairs:
                if bit(r) == 1 and bit(s) == 0:
                    value *= lam
            out.append(value)
        return ConstraintTable(k, tuple(out))


Certificate = DegenerateCertificate | EdCertificate | AfCertificate | ImOptCertificate


def certificate_matches(
    cert: Certificate, table: ConstraintTable, rel_tol: float = 1e-9
) -> bool:
    """Check that a certificate's rebuilt table reproduces f: exact zeros off
    support, within rel_tol on support."""
    rebuilt = cert.to_table()
    if rebuilt.arity != table.arity:
        return False
    for got, want in zip(rebuilt.weights, table.weights):
        if want == 0:
            if got != 0:
                return False
        elif not rel_close(got, want, rel_tol):
            return False
    return True


# ---------------------------------------------------------------------------
# support analysis (cached on the (arity, mask) pair)


def _bit(idx: int, var: int, arity: int) -> int:
    return (idx >> (arity - var)) & 1


@lru_cache(maxsize=None)
def _support_points(arity: int, mask: int) -> tuple[int, ...]:
    return tuple(i for i in range(1 << arity) if (mask >> i) & 1)


@lru_cache(maxsize=None)
def _affine_mask(arity: int, mask: int) -> bool:
    """Affine = closed under triple XOR = the difference set is a linear span."""
    if mask == 0:
        return True
    pts = _support_points(arity, mask)
    base = pts[0]
    pivots: dict[int, int] = {}
    for p in pts:
        x = p ^ base
        while x:
            h = x.bit_length() - 1
            if h in pivots:
                x ^= pivots[h]
            else:
                pivots[h] = x
                break
    return len(pts) == 1 << len(pivots)


@lru_cache(maxsize=None)
def _pins_of(arity: int, mask: int) -> tuple[tuple[int, int], ...]:
    """Variables that are constant across the support (nonempty support only)."""
    pts = _support_points(arity, mask)
    pins = []
    for v in range(1, arity + 1):
        seen = {_bit(p, v, arity) for p in pts}
        if len(seen) == 1:
            pins.append((v, seen.pop()))
    return tuple(pins)


@lru_cache(maxsize=None)
def _parity_pairs(arity: int, mask: int) -> tuple[tuple[int, int, int], ...]:
    """Unpinned pairs (i, j, parity) with x_i xor x_j constant on the support."""
    pts = _support_points(arity, mask)
    pinned = {v for v, _ in _pins_of(arity, mask)}
    out = []
    for i in range(1, arity + 1):
        if i in pinned:
            continue
        for j in range(i + 1, arity + 1):
            if j in pinned:
                continue
            seen = {_bit(p, i, arity) ^ _bit(p, j, arity) for p in pts}
            if len(seen) == 1:
                out.append((i, j, seen.pop()))
    return tuple(out)


@lru_cache(maxsize=None)
def _parity_rebuild(arity: int, mask: int) -> int:
    pins = _pins_of(arity, mask)
    links = _parity_pairs(arity, mask)
    rebuilt = 0
    for idx in range(1 << arity):
        if all(_bit(idx, v, arity) == c for v, c in pins) and all(
            (_bit(idx, i, arity) ^ _bit(idx, j, arity)) == p for i, j, p in links
        ):
            rebuilt |= 1 << idx
    return rebuilt


@lru_cache(maxsize=None)
def _implication_pairs(arity: int, mask: int) -> tuple[tuple[int, int], ...]:
    """Ordered pairs (r, s) whose forbidden pattern (x_r, x_s) = (1, 0) never
    occurs on the support."""
    pts = _support_points(arity, mask)
    out = []
    for r in range(1, arity + 1):
        for s in range(1, arity + 1):
            if r == s:
                continue
            if all(not (_bit(p, r, arity) == 1 and _bit(p, s, arity) == 0) for p in pts):
                out.append((r, s))
    return tuple(out)


@lru_cache(maxsize=None)
def _imp_rebuild(arity: int, mask: int) -> int:
    pins = _pins_of(arity, mask)
    imps = _implication_pairs(arity, mask)
    rebuilt = 0
    for idx in range(1 << arity):
        if all(_bit(idx, v, arity) == c for v, c in pins) and all(
            not (_bit(idx, r, arity) == 1 and _bit(idx, s, arity) == 0) for r, s in imps
        ):
            rebuilt |= 1 << idx
    return rebuilt


def has_affine_support(table: ConstraintTable) -> bool:
    """True iff the support is closed under triple XOR (empty support counts)."""
    return _affine_mask(table.arity, table.support().mask)


def has_imp_support(table: ConstraintTable) -> bool:
    """True iff the support equals the solution set of its own derived pins
    and pairwise implications."""
    mask = table.support().mask
    if mask == 0:
        return True
    return _imp_rebuild(table.arity, mask) == mask


# ---------------------------------------------------------------------------
# unary-product factorization over a structured support


def _components_from_links(
    arity: int, pinned: set[int], links: Iterable[tuple[int, int, int]]
) -> list[list[tuple[int, int]]]:
    """Group unpinned variables into parity components.

    Returns one list per component of (variable, parity-to-representative),
    the representative (smallest index, parity 0) first.
    """
    adj: dict[int, list[tuple[int, int]]] = {
        v: [] for v in range(1, arity + 1) if v not in pinned
    }
    for i, j, p in links:
        adj[i].append((j, p))
        adj[j].append((i, p))
    seen: set[int] = set()
    comps = []
    for v in sorted(adj):
        if v in seen:
            continue
        comp = [(v, 0)]
        seen.add(v)
        queue = [(v, 0)]
        while queue:
            u, pu = queue.pop()
            for w, p in adj[u]:
                if w not in seen:
                    seen.add(w)
                    comp.append((w, pu ^ p))
                    queue.append((w, pu ^ p))
        comps.append(comp)
    return comps


def _factor_over_components(
    table: ConstraintTable,
    pins: tuple[tuple[int, int], ...],
    comps: list[list[tuple[int, int]]],
) -> Optional[tuple[tuple[Fraction, Fraction], ...]]:
    """Try to factor f over its support as constant x product of one unary
    weight per component. Exact; returns per-variable factors or None.

    Assumes the support is exactly {base xor any subset of component masks}.
    """
    k = table.arity
    pts = _support_points(k, table.support().mask)
    base = pts[0]
    const = table.weights[base]
    masks = []
    for comp in comps:
        m = 0
        for v, _ in comp:
            m |= 1 << (k - v)
        masks.append(m)
    ratios = [table.weights[base ^ m] / const for m in masks]
    for t in range(1 << len(comps)):
        idx = base
        expected = const
        for c in range(len(comps)):
            if (t >> c) & 1:
                idx ^= masks[c]
                expected *= ratios[c]
        if table.weights[idx] != expected:
            return None
    factors: list[tuple[Fraction, Fraction]] = [(ONE, ONE)] * k
    for comp, ratio in zip(comps, ratios):
        rep, _ = comp[0]
        b = _bit(base, rep, k)
        factors[rep - 1] = (ONE, ratio) if b == 0 else (ratio, ONE)
    # fold the base constant into variable 1
    u0, u1 = factors[0]
    factors[0] = (const * u0, const * u1)
    return tuple(factors)


# ---------------------------------------------------------------------------
# the deciders


def is_nonzero(table: ConstraintTable) -> bool:
    """True iff every output value is strictly positive."""
    return all(w > 0 for w in table.weights)


def _dg_factor_list(
    weights: tuple[Fraction, ...], k: int
) -> Optional[list[tuple[Fraction, Fraction]]]:
    if k == 1:
        return [(weights[0], weights[1])]
    half = 1 << (k - 1)
    lo, hi = weights[:half], weights[half:]
    lo_zero = all(w == 0 for w in lo)
    hi_zero = all(w == 0 for w in hi)
    if lo_zero and hi_zero:
        return [(ZERO, ZERO)] + [(ONE, ONE)] * (k - 1)
    if lo_zero:
        sub = _dg_factor_list(hi, k - 1)
        return None if sub is None else [(ZERO, ONE)] + sub
    if hi_zero:
        sub = _dg_factor_list(lo, k - 1)
        return None if sub is None else [(ONE, ZERO)] + sub
    pivot = next(t for t in range(half) if lo[t] != 0)
    rho = hi[pivot] / lo[pivot]
    if any(hi[t] != rho * lo[t] for t in range(half)):
        return None
    sub = _dg_factor_list(lo, k - 1)
    return None if sub is None else [(ONE, rho)] + sub


def is_degenerate(table: ConstraintTable) -> Optional[DegenerateCertificate]:
    """Recursive half-table proportionality; one unary factor per variable."""
    if table.arity == 0:
        return DegenerateCertificate(()) if table.weights[0] == 1 else None
    factors = _dg_factor_list(table.weights, table.arity)
    return None if factors is None else DegenerateCertificate(tuple(factors))


def _all_zero_factors(arity: int) -> tuple[tuple[Fraction, Fraction], ...]:
    return ((ZERO, ZERO),) + ((ONE, ONE),) * (arity - 1)


def is_ed(table: ConstraintTable) -> Optional[EdCertificate]:
    """Pins + pairwise parity links must rebuild the support exactly, and the
    values on the support must factor into per-component unary weights."""
    k = table.arity
    if k == 0:
        return EdCertificate((), frozenset(), ()) if table.weights[0] == 1 else None
    mask = table.support().mask
    if mask == 0:
        return EdCertificate((), frozenset(), _all_zero_factors(k))
    if not _affine_mask(k, mask):
        return None
    if _parity_rebuild(k, mask) != mask:
        return None
    pins = _pins_of(k, mask)
    links = _parity_pairs(k, mask)
    comps = _components_from_links(k, {v for v, _ in pins}, links)
    factors = _factor_over_components(table, pins, comps)
    if factors is None:
        return None
    span_links = set()
    for comp in comps:
        rep, _ = comp[0]
        for v, p in comp[1:]:
            span_links.add((rep, v, "equal" if p == 0 else "unequal"))
    return EdCertificate(pins, frozenset(span_links), factors)


def _pair_closure(pairs: frozenset[tuple[int, int]]) -> frozenset[tuple[int, int]]:
    """Affine closure inside {0,1}^2: only the four 3-element subsets are not
    already affine."""
    if len(pairs) == 3:
        return frozenset([(0, 0), (0, 1), (1, 0), (1, 1)])
    return pairs


_DIAGONALS = {
    frozenset([(0, 0), (1, 1)]): 0,  # equal
    frozenset([(0, 1), (1, 0)]): 1,  # unequal
}


def is_af(table: ConstraintTable) -> Optional[AfCertificate]:
    """Search for a pivot whose pairwise affine closures, together with the
    per-variable pins, rebuild the support; then factor the values."""
    k = table.arity
    if k == 0:
        return AfCertificate(1, (), ()) if table.weights[0] == 1 else None
    mask = table.support().mask
    if mask == 0:
        return AfCertificate(1, (), _all_zero_factors(k))
    if not _affine_mask(k, mask):
        return None
    pts = _support_points(k, mask)
    pins = _pins_of(k, mask)
    pinned = {v for v, _ in pins}
    projections = {
        v: {_bit(p, v, k) for p in pts} for v in range(1, k + 1)
    }
    for pivot in range(1, k + 1):
        closures = {}
        for j in range(1, k + 1):
            if j == pivot:
                continue
            proj = frozenset((_bit(p, pivot, k), _bit(p, j, k)) for p in pts)
            closures[j] = _pair_closure(proj)
        rebuilt = 0
        for idx in range(1 << k):
            if all(_bit(idx, v, k) in projections[v] for v in range(1, k + 1)) and all(
                (_bit(idx, pivot, k), _bit(idx, j, k)) in rel
                for j, rel in closures.items()
            ):
                rebuilt |= 1 << idx
        if rebuilt != mask:
            continue
        links = []
        if pivot not in pinned:
            for j, rel in closures.items():
                if j not in pinned and rel in _DIAGONALS:
                    links.append((pivot, j, _DIAGONALS[rel]))
        comps = _components_from_links(k, pinned, links)
        factors = _factor_over_components(table, pins, comps)
        if factors is None:
            continue
        factors = list(factors)
        for v, c in pins:
            u = factors[v - 1]
            factors[v - 1] = (u[0], ZERO) if c == 0 else (ZERO, u[1])
        return AfCertificate(
            pivot, tuple(sorted(closures.items())), tuple(factors)
        )
    return None


# ---------------------------------------------------------------------------
# multilinear log expansion and the imopt decider


@dataclass(frozen=True)
class LogExpansion:
    """Multilinear coefficients of log2 f for a full-support constraint:
    log2 f(x) = sum over subsets S of coefficients[S] * prod_{i in S} x_i."""

    domain: Support
    coefficients: dict[frozenset[int], float]

    def reconstruct(self, bits) -> float:
        ones = {i + 1 for i, b in enumerate(bits) if b}
        return sum(c for S, c in self.coefficients.items() if S <= ones)

    def pair_coefficient(self, r: int, s: int) -> float:
        return self.coefficients.get(frozenset((r, s)), 0.0)

    def degree(self) -> int:
        return max((len(S) for S, c in self.coefficients.items() if c != 0), default=0)


def log_expansion(table: ConstraintTable) -> LogExpansion:
    """Finite-difference (Moebius) transform of log2 f on the full cube."""
    if not is_nonzero(table):
        raise DomainError("log expansion requires a strictly positive constraint")
    k = table.arity
    values = np.array([frac_log2(w) for w in table.weights], dtype=float)
    arr = values.reshape([2] * k) if k else values.reshape(())
    for axis in range(k):
        hi = [slice(None)] * k
        lo = [slice(None)] * k
        hi[axis], lo[axis] = 1, 0
        arr[tuple(hi)] -= arr[tuple(lo)]
    coeffs: dict[frozenset[int], float] = {}
    flat = arr.reshape(-1)
    for idx in range(1 << k):
        S = frozenset(v for v in range(1, k + 1) if (idx >> (k - v)) & 1)
        coeffs[S] = float(flat[idx])
    return LogExpansion(table.support(), coeffs)


def _mobius_products(table: ConstraintTable, subset: tuple[int, ...]) -> tuple[Fraction, Fraction]:
    """Exact even/odd inclusion-exclusion products over a variable subset.

    The multilinear coefficient of prod_{v in subset} x_v in log2 f equals
    log2(even/odd); its sign is decided exactly by comparing the two products.
    """
    k = table.arity
    even = odd = ONE
    n = len(subset)
    for tmask in range(1 << n):
        idx = 0
        for t in range(n):
            if (tmask >> t) & 1:
                idx |= 1 << (k - subset[t])
        if (n - bin(tmask).count("1")) % 2 == 0:
            even *= table.weights[idx]
        else:
            odd *= table.weights[idx]
    return even, odd


def _imopt_full_support(table: ConstraintTable) -> Optional[ImOptCertificate]:
    """Exact full-support test: the multilinear log expansion must have degree
    at most 2 with every pairwise coefficient nonnegative."""
    k = table.arity
    for size in range(3, k + 1):
        for subset in itertools.combinations(range(1, k + 1), size):
            even, odd = _mobius_products(table, subset)
            if even != odd:
                return None
    pair_ratio: dict[tuple[int, int], Fraction] = {}
    for r in range(1, k + 1):
        for s in range(r + 1, k + 1):
            even, odd = _mobius_products(table, (r, s))
            if even < odd:
                return None
            pair_ratio[(r, s)] = even / odd  # >= 1
    lambda_pairs = {
        (r, s, ONE / ratio) for (r, s), ratio in pair_ratio.items() if ratio != 1
    }
    zero_index = 0
    base = table.weights[zero_index]
    factors = []
    for v in range(1, k + 1):
        ratio_v = table.weights[1 << (k - v)] / base
        for s in range(v + 1, k + 1):
            ratio_v *= pair_ratio[(v, s)]
        factors.append((ONE, ratio_v))
    factors[0] = (base * factors[0][0], base * factors[0][1])
    return ImOptCertificate(tuple(factors), frozenset(lambda_pairs))


def _imopt_lp(table: ConstraintTable, rel_tol: float) -> Optional[tuple[list[float], list[float], float]]:
    """Feasibility of log2 f(x) = a0 + sum a_l x_l + sum c_rs x_r (1-x_s) on the
    support, with every c_rs <= 0. Returns (a, c, a0) or None."""
    from scipy.optimize import linprog

    k = table.arity
    pts = _support_points(k, table.support().mask)
    pairs = [(r, s) for r in range(1, k + 1) for s in range(1, k + 1) if r != s]
    nvar = 1 + k + len(pairs)
    rows = []
    rhs = []
    for p in pts:
        row = [0.0] * nvar
        row[0] = 1.0
        for v in range(1, k + 1):
            row[v] = float(_bit(p, v, k))
        for t, (r, s) in enumerate(pairs):
            row[1 + k + t] = float(_bit(p, r, k) * (1 - _bit(p, s, k)))
        rows.append(row)
        rhs.append(frac_log2(table.weights[p]))
    bounds = [(None, None)] * (1 + k) + [(None, 0.0)] * len(pairs)
    res = linprog(
        c=[0.0] * nvar,
        A_eq=np.array(rows),
        b_eq=np.array(rhs),
        bounds=bounds,
        method="highs",
    )
    if res.status != 0:
        return None
    x = res.x
    residual = np.array(rows) @ x - np.array(rhs)
    scale = max(1.0, float(np.max(np.abs(rhs)))) if rhs else 1.0
    if float(np.max(np.abs(residual), initial=0.0)) > rel_tol * scale:
        return None
    a0 = float(x[0])
    a = [float(x[v]) for v in range(1, k + 1)]
    c = {pairs[t]: float(x[1 + k + t]) for t in range(len(pairs))}
    return a, c, a0


def is_imopt(table: ConstraintTable, rel_tol: float = 1e-9) -> Optional[ImOptCertificate]:
    """Implication-definable support plus sign-constrained log-affine values.

    Full-support constraints are decided in exact rational arithmetic; other
    supports go through a small linear feasibility program in log2 space.
    """
    k = table.arity
    if k == 0:
        return ImOptCertificate((), frozenset()) if table.weights[0] == 1 else None
    support = table.support()
    if support.is_empty:
        return ImOptCertificate(_all_zero_factors(k), frozenset())
    if not has_imp_support(table):
        return None
    if support.is_full:
        return _imopt_full_support(table)
    solved = _imopt_lp(table, rel_tol)
    if solved is None:
        return None
    a, c, a0 = solved
    pins = dict(_pins_of(k, support.mask))
    implications = _implication_pairs(k, support.mask)
    factors = []
    for v in range(1, k + 1):
        hi = Fraction(2.0 ** a[v - 1])
        u: tuple[Fraction, Fraction] = (ONE, hi)
        if v in pins:
            u = (ZERO, hi) if pins[v] == 1 else (ONE, ZERO)
        factors.append(u)
    base = Fraction(2.0 ** a0)
    factors[0] = (base * factors[0][0], base * factors[0][1])
    lambda_pairs: set[tuple[int, int, Fraction]] = set()
    for (r, s) in implications:
        if r not in pins and s not in pins:
            lambda_pairs.add((r, s, ZERO))
    for (r, s), value in c.items():
        if value < -1e-12 and (r, s, ZERO) not in lambda_pairs:
            lambda_pairs.add((r, s, Fraction(2.0 ** value)))
    return ImOptCertificate(tuple(factors), frozenset(lambda_pairs))


# ---------------------------------------------------------------------------
# reachable-binary diagnostic


def binary_witness_search(
    table: ConstraintTable,
) -> list[tuple[ConstructionScript, ConstraintTable]]:
    """All distinct binary constraints reachable by pinning, linking and
    permuting (one witness derivation each, scale-normalized to a leading 1).

    Permutations before pins/links are absorbed by trying every position, so
    only the final argument swap is enumerated explicitly.
    """
    if table.arity < 2:
        raise ArgumentError("binary witness search needs arity >= 2")
    name = table.name or "f"
    start = ConstructionScript(name)
    frontier: list[tuple[ConstraintTable, ConstructionScript]] = [(table, start)]
    seen_intermediate = {(table.arity, table.weights)}
    found: dict[tuple[Fraction, ...], tuple[ConstructionScript, ConstraintTable]] = {}

    def record(t: ConstraintTable, script: ConstructionScript):
        lead = next((w for w in t.weights if w != 0), None)
        if lead is not None and lead != 1:
            script = script.extended(("scale", ONE / lead))
            t = t.scale(ONE / lead)
        if t.weights not in found:
            found[t.weights] = (script, t)

    while frontier:
        current, script = frontier.pop()
        k = current.arity
        if k == 2:
            record(current, script)
            record(current.permute(1, 2), script.extended(("perm", 1, 2)))
            continue
        nexts = []
        for i in range(1, k + 1):
            for c in (0, 1):
                nexts.append((current.pin(i, c), ("pin", i, c)))
            for j in range(1, k + 1):
                if i != j:
                    nexts.append((current.link(i, j), ("link", i, j)))
        for t, step in nexts:
            key = (t.arity, t.weights)
            if key not in seen_intermediate:
                seen_intermediate.add(key)
                frontier.append((t, script.extended(step)))
    return [found[w] for w in sorted(found)]


# ---------------------------------------------------------------------------
# bundled membership lookup

CLASS_NAMES = ("NZ", "DG", "ED", "AF", "IM_opt", "affine_support", "imp_support")


def memberships(
    table: ConstraintTable, rel_tol: float = 1e-9
) -> tuple[frozenset[str], dict[str, Certificate]]:
    """All class memberships of one constraint, with certificates where the
    class carries one."""
    members: set[str] = set()
    certs: dict[str, Certificate] = {}
    if is_nonzero(table):
        members.add("NZ")
    if has_affine_support(table):
        members.add("affine_support")
    if has_imp_support(table):
        members.add("imp_support")
    for label, decide in (("DG", is_degenerate), ("ED", is_ed), ("AF", is_af)):
        cert = decide(table)
        if cert is not None:
            members.add(label)
            certs[label] = cert
    cert = is_imopt(table, rel_tol)
    if cert is not None:
        members.add("IM_opt")
        certs["IM_opt"] = cert
    return frozenset(members), certs
