"""Cayley digraphs on Z/pZ and their minimum feedback arc sets.

A connection set A of d distinct nonzero residues defines the digraph with an
edge x -> x+a for every vertex x and every a in A. Multiplication orderings of
the vertices yield small feedback arc sets whose minimum size equals the
height of <a_1, ..., a_d>; an exact subset DP settles small instances, and a
scan driver audits the inequality beta <= gamma/2 on triangle-free graphs.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Hashable, Iterable, Sequence

import numpy as np

from .heights import (
    DEFAULT_POINT_BUDGET,
    BudgetExceededError,
    SumFreeCertificate,
    height,
    is_k_sum_free,
)
from .modular import (
    PrimeModulus,
    canonical_connection_sets,
    canonicalize,
    mod_inverse,
    primes_up_to,
)

DEFAULT_EXACT_CAP = 24

Edge = tuple[Hashable, Hashable]


class CapExceededError(Exception):
    """An exact computation was asked for more vertices than its cap allows."""

    def __init__(self, size: int, cap: int):
        super().__init__(f"graph has {size} vertices, exact cap is {cap}")
        self.size = size
        self.cap = cap


@dataclass(frozen=True)
class CayleyGraph:
    """Digraph on Z/pZ with an edge x -> x+a for every a in the connection set."""

    modulus: PrimeModulus
    A: tuple[int, ...]

    def __init__(self, p: int | PrimeModulus, A: Iterable[int]):
        pm = p if isinstance(p, PrimeModulus) else PrimeModulus(p)
        elems = tuple(sorted(x % pm.p for x in A))
        if not elems or elems[0] == 0 or len(set(elems)) != len(elems):
            raise ValueError("connection set must be distinct nonzero residues")
        object.__setattr__(self, "modulus", pm)
        object.__setattr__(self, "A", elems)

    @property
    def p(self) -> int:
        return self.modulus.p

    @property
    def d(self) -> int:
        return len(self.A)


def edges(G: CayleyGraph) -> list[tuple[int, int]]:
    """All d*p edges (x, (x+a) mod p), sorted."""
    p = G.p
    return sorted((x, (x + a) % p) for x in range(p) for a in G.A)


def is_triangle_free(G: CayleyGraph) -> SumFreeCertificate:
    """No directed cycle of length 1, 2, or 3; equivalent to A being 3-sum-free."""
    return is_k_sum_free(G.A, 3, G.modulus)


def gamma(G: CayleyGraph) -> int:
    """Number of unordered nonadjacent vertex pairs.

    Loop-free and digon-free graphs have exactly p(p-1-2d)/2 such pairs;
    otherwise the pairs are counted directly.
    """
    p = G.p
    members = set(G.A)
    if any((p - a) % p in members for a in G.A):
        return gamma_direct(G)
    return p * (p - 1 - 2 * G.d) // 2


def gamma_direct(G: CayleyGraph) -> int:
    """gamma by direct pair counting; the cross-check branch for the closed form."""
    p = G.p
    adjacent = {(min(u, v), max(u, v)) for u, v in edges(G) if u != v}
    return p * (p - 1) // 2 - len(adjacent)


def is_acyclic(edge_list: Iterable[Edge]) -> bool:
    """True iff the digraph on the labels appearing in edge_list has no cycle.

    Peels vertices of outdegree 0 repeatedly; the graph is acyclic iff
    everything peels.
    """
    eset = set(edge_list)
    outdeg: dict[Hashable, int] = {}
    preds: dict[Hashable, list[Hashable]] = {}
    for u, v in eset:
        outdeg[u] = outdeg.get(u, 0) + 1
        outdeg.setdefault(v, 0)
        preds.setdefault(v, []).append(u)
        preds.setdefault(u, [])
    stack = [v for v, deg in outdeg.items() if deg == 0]
    removed = 0
    while stack:
        v = stack.pop()
        removed += 1
        for u in preds[v]:
            outdeg[u] -= 1
            if outdeg[u] == 0:
                stack.append(u)
    return removed == len(outdeg)


@dataclass(frozen=True)
class DeletionSet:
    """Backward edges of the vertex ordering 0, k, 2k, ..., (p-1)k."""

    graph: CayleyGraph
    k: int
    edges: frozenset[tuple[int, int]]

    @property
    def size(self) -> int:
        return len(self.edges)


def deletion_set(G: CayleyGraph, k: int) -> DeletionSet:
    """The edges that go backward in the ordering by multiples of k.

    With u = k^-1 and r_j = (u * a_j) mod p, the edge from position i along
    a_j goes backward exactly when i >= p - r_j, giving r_j backward edges per
    a_j, sum_j r_j in total. Removing them leaves an acyclic digraph.
    """
    p = G.p
    if not 1 <= k <= p - 1:
        raise ValueError(f"k must be in [1, {p - 1}]")
    u = mod_inverse(k, p)
    out = set()
    for a in G.A:
        r = (u * a) % p
        for i in range(p - r, p):
            x = (k * i) % p
            out.add((x, (x + a) % p))
    return DeletionSet(G, k, frozenset(out))


def beta_upper(G: CayleyGraph) -> tuple[int, int]:
    """Minimum deletion-set size over all multiplier orderings, with its witness.

    Returns (value, k) for the smallest k attaining the minimum; the value
    equals the height of <a_1, ..., a_d> and so bounds the feedback arc set
    size from above.
    """
    p = G.p
    best = p * G.d
    best_k = 1
    for k in range(1, p):
        u = mod_inverse(k, p)
        s = 0
        for a in G.A:
            s += (u * a) % p
        if s < best:
            best, best_k = s, k
    return best, best_k


def _popcount16_table() -> np.ndarray:
    table = np.zeros(1 << 16, dtype=np.uint8)
    for i in range(16):
        table[1 << i : 1 << (i + 1)] = table[: 1 << i] + 1
    return table


_PC16 = _popcount16_table()


@lru_cache(maxsize=2)
def _popcount_layers(m: int) -> tuple[np.ndarray, np.ndarray]:
    """Subsets of an m-element set grouped by popcount, with layer offsets."""
    idx = np.arange(1 << m, dtype=np.int32)
    pc = _PC16[idx & 0xFFFF] + _PC16[idx >> 16]
    order = np.argsort(pc, kind="stable").astype(np.int32)
    counts = np.bincount(pc, minlength=m + 1)
    offsets = np.concatenate(([0], np.cumsum(counts)))
    return order, offsets


def beta_exact(edge_list: Iterable[Edge], cap: int = DEFAULT_EXACT_CAP) -> int:
    """Exact minimum feedback arc set size of the digraph given by edge_list.

    A digraph is acyclic iff some linear order has no backward edge, so beta
    equals |E| minus the maximum forward-edge count over all orders. That
    maximum satisfies best(S) = max over v in S of best(S - v) plus the number
    of edges into v from S - v, a DP over vertex subsets evaluated here one
    popcount layer at a time. Time O(m * 2^m); refuses more than cap vertices.
    """
    simple: set[Edge] = set()
    loops: set[Edge] = set()
    for u, v in edge_list:
        (loops if u == v else simple).add((u, v))
    seen: dict[Hashable, int] = {}
    for u, v in sorted(simple) + sorted(loops):
        for w in (u, v):
            if w not in seen:
                seen[w] = len(seen)
    m = len(seen)
    # int32 subset masks and the 2^m DP table both stop being viable past 30
    if m > min(cap, 30):
        raise CapExceededError(m, min(cap, 30))
    if not simple:
        return len(loops)
    pred = [0] * m
    for u, v in simple:
        pred[seen[v]] |= 1 << seen[u]
    order, offsets = _popcount_layers(m)
    best = np.zeros(1 << m, dtype=np.int32)
    for c in range(1, m + 1):
        layer = order[offsets[c] : offsets[c + 1]]
        vals = np.zeros(layer.size, dtype=np.int32)
        for v in range(m):
            pv = pred[v]
            sel = (layer >> v) & 1 == 1
            sub = layer[sel] ^ (1 << v)
            into = np.int32(pv) & sub
            cand = best[sub] + _PC16[into & 0xFFFF] + _PC16[into >> 16]
            merged = vals[sel]
            np.maximum(merged, cand, out=merged)
            vals[sel] = merged
        best[layer] = vals
    return len(simple) - int(best[(1 << m) - 1]) + len(loops)


def shortest_cycle(G: CayleyGraph) -> int:
    """Length of the shortest directed cycle.

    Vertex-transitivity makes one source enough: breadth-first search from 0,
    then close a cycle through each -a.
    """
    p = G.p
    dist = [-1] * p
    dist[0] = 0
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for a in G.A:
            y = (x + a) % p
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                queue.append(y)
    return 1 + min(dist[(p - a) % p] for a in G.A)


@dataclass(frozen=True)
class BetaReport:
    """Feedback arc set bounds and CSS assertion outcomes for one graph.

    css_margin is gamma/2 minus the best available beta bound; violations
    lists any failed assertion (expected empty).
    """

    graph: CayleyGraph
    triangle_free: bool
    gamma: int
    beta_upper: int
    witness_k: int
    beta_exact: int | None
    css_margin: Fraction
    violations: tuple[str, ...]


def css_check(G: CayleyGraph, exact: bool = False, cap: int = DEFAULT_EXACT_CAP) -> BetaReport:
    """Populate a BetaReport and evaluate the CSS assertions that apply.

    Triangle-free graphs with d = 2 and p >= 7 must satisfy the chain
    beta_upper <= (p-1)/2 <= gamma/2; a triangle-free graph with an exact beta
    must satisfy beta_exact <= gamma/2. Failures are recorded, not raised.
    """
    cert = is_triangle_free(G)
    g = gamma(G)
    upper, witness_k = beta_upper(G)
    exact_beta = beta_exact(edges(G), cap=cap) if exact else None
    bounds = [upper] if exact_beta is None else [upper, exact_beta]
    margin = Fraction(g, 2) - min(bounds)
    violations: list[str] = []
    if cert.ok:
        if G.d == 2 and G.p >= 7:
            if 2 * upper > G.p - 1:
                violations.append("beta_upper > (p-1)/2")
            if G.p - 1 > g:
                violations.append("(p-1)/2 > gamma/2")
        if exact_beta is not None and 2 * exact_beta > g:
            violations.append("beta_exact > gamma/2")
    return BetaReport(
        graph=G,
        triangle_free=cert.ok,
        gamma=g,
        beta_upper=upper,
        witness_k=witness_k,
        beta_exact=exact_beta,
        css_margin=margin,
        violations=tuple(violations),
    )


@dataclass(frozen=True)
class ScanRow:
    """One audited graph inside a scan."""

    p: int
    A: tuple[int, ...]
    d: int
    triangle_free: bool
    gamma: int
    beta_upper: int
    witness_k: int
    beta_exact: int | None
    shortest_cycle: int
    css_margin: Fraction
    in_critical_window: bool
    violations: tuple[str, ...]


@dataclass(frozen=True)
class CssScanReport:
    """Aggregated audit over all connection sets up to scalar equivalence."""

    p_max: int
    d: int
    exact: bool
    rows: tuple[ScanRow, ...]

    @property
    def instances(self) -> int:
        return len(self.rows)

    @property
    def triangle_free_count(self) -> int:
        return sum(1 for r in self.rows if r.triangle_free)

    @property
    def violation_count(self) -> int:
        return sum(len(r.violations) for r in self.rows)


def scan_css(
    p_max: int,
    d: int,
    exact: bool = False,
    cap: int = DEFAULT_EXACT_CAP,
    budget: int = DEFAULT_POINT_BUDGET,
) -> CssScanReport:
    """Audit every size-d connection set on every odd prime p <= p_max.

    Sets are enumerated up to scalar equivalence (A and cA are isomorphic via
    x -> cx). Each row records the bounds, the girth, and whether d falls in
    the window p/4 < d < p/3.
    """
    primes = [p for p in primes_up_to(p_max) if p > 2]
    total = sum(math.comb(p - 1, d) for p in primes)
    if total > budget:
        raise BudgetExceededError(total, budget)
    rows = []
    for p in primes:
        for A in canonical_connection_sets(p, d):
            G = CayleyGraph(p, A)
            report = css_check(G, exact=exact, cap=cap)
            rows.append(
                ScanRow(
                    p=p,
                    A=A,
                    d=d,
                    triangle_free=report.triangle_free,
                    gamma=report.gamma,
                    beta_upper=report.beta_upper,
                    witness_k=report.witness_k,
                    beta_exact=report.beta_exact,
                    shortest_cycle=shortest_cycle(G),
                    css_margin=report.css_margin,
                    in_critical_window=4 * d > p and 3 * d < p,
                    violations=report.violations,
                )
            )
    return CssScanReport(p_max=p_max, d=d, exact=exact, rows=tuple(rows))
