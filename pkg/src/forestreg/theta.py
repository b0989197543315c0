"""The closed-form regularity function for accepted forests.

For an accepted forest with matched pairs (x_i, y_i), a family is a nonempty
set of pairwise non-adjacent matched edges.  The function computed here is

    theta(k) = max over families of (max weight + 1)*(k-1) + sum weights + 1

with theta(0) = 0 and theta = 0 when no family exists.  Three engines produce
the same values: direct family enumeration, a symmetric reformulation, and a
tree dynamic program that never enumerates subsets.  The k-dependence is the
upper envelope of one affine line per family, exposed as a piecewise-linear
function.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .digraph import (
    HypothesisError,
    PerfectMatching,
    WeightedOrientedGraph,
    check_cm_hypothesis,
    induced_subgraph,
    without_isolated,
)

ENUMERATION_CAP = 24

_NEG = -(10**9)


class FamilyEnumerationCapError(ValueError):
    """Too many matched pairs for subset enumeration; use theta_tree_dp."""


@dataclass(frozen=True)
class NonAdjacentFamily:
    """Indices of pairwise non-adjacent matched edges with their y-weights."""

    indices: tuple[int, ...]
    weights: tuple[int, ...]

    def line(self) -> tuple[int, int]:
        """(slope, intercept) of this family's affine contribution."""
        return (max(self.weights) + 1, sum(self.weights) + 1)

    def value(self, k: int) -> int:
        slope, intercept = self.line()
        return slope * (k - 1) + intercept


@dataclass(frozen=True)
class MatchedForest:
    """Validated context: stripped graph, matching, weights, conflicts."""

    graph: WeightedOrientedGraph
    matching: PerfectMatching
    weights: tuple[int, ...]
    adjacency: tuple[frozenset[int], ...]

    @property
    def size(self) -> int:
        return len(self.matching)


@lru_cache(maxsize=4096)
def matched_context(graph: WeightedOrientedGraph) -> MatchedForest:
    """Strip isolated vertices and validate the forest hypothesis.

    Induced subgraphs produced by deleting closed neighborhoods legitimately
    contain stranded leaves; they carry no edges, so they are dropped here
    rather than rejected.
    """
    core = without_isolated(graph)
    report = check_cm_hypothesis(core)
    if not report.accepted:
        raise HypothesisError(
            "forest hypothesis rejected:\n" + report.summary()
        )
    matching = report.matching
    assert matching is not None
    weights = tuple(core.weight(y) for _, y in matching.pairs)
    edges = conflict_graph(core, matching)
    adjacency = [set() for _ in matching.pairs]
    for i, j in edges:
        adjacency[i].add(j)
        adjacency[j].add(i)
    return MatchedForest(
        graph=core,
        matching=matching,
        weights=weights,
        adjacency=tuple(frozenset(s) for s in adjacency),
    )


def conflict_graph(
    graph: WeightedOrientedGraph, matching: PerfectMatching
) -> tuple[tuple[int, int], ...]:
    """Edges (i, j) between pair indices whose matched edges are adjacent.

    Adjacency is tested on the full endpoint sets {x_i, y_i} x {x_j, y_j},
    not just the internal vertices, so the leaf-based shortcut is something
    the tests can verify rather than an assumption baked in here.
    """
    underlying = set(graph.underlying_edges())
    pairs = matching.pairs
    edges = []
    for i in range(len(pairs)):
        for j in range(i + 1, len(pairs)):
            endpoints_i = pairs[i]
            endpoints_j = pairs[j]
            if any(
                tuple(sorted((a, b))) in underlying
                for a in endpoints_i
                for b in endpoints_j
            ):
                edges.append((i, j))
    return tuple(edges)


def enumerate_families(graph: WeightedOrientedGraph) -> list[NonAdjacentFamily]:
    """All nonempty non-adjacent families, in lexicographic index order."""
    ctx = matched_context(graph)
    r = ctx.size
    if r > ENUMERATION_CAP:
        raise FamilyEnumerationCapError(
            f"{r} matched pairs exceeds the enumeration cap "
            f"({ENUMERATION_CAP}); theta_tree_dp handles any size"
        )
    adjacency = ctx.adjacency
    weights = ctx.weights
    out: list[NonAdjacentFamily] = []

    def extend(prefix: tuple[int, ...], banned: frozenset[int], start: int):
        for i in range(start, r):
            if i in banned:
                continue
            family = prefix + (i,)
            out.append(
                NonAdjacentFamily(family, tuple(weights[j] for j in family))
            )
            extend(family, banned | adjacency[i], i + 1)

    extend((), frozenset(), 0)
    return out


def _require_k(k: int, minimum: int = 0) -> None:
    if not isinstance(k, int) or k < minimum:
        raise ValueError(f"k must be an integer >= {minimum}, got {k!r}")


def theta(k: int, graph: WeightedOrientedGraph) -> int:
    """Reference evaluation by family enumeration (tree DP above the cap)."""
    _require_k(k)
    if k == 0:
        return 0
    ctx = matched_context(graph)
    if ctx.size > ENUMERATION_CAP:
        return theta_tree_dp(k, graph)
    best = 0
    for family in enumerate_families(graph):
        value = family.value(k)
        if value > best:
            best = value
    return best


def theta_symmetric(k: int, graph: WeightedOrientedGraph) -> int:
    """Evaluation via max over families and distinguished members l of
    (w_l + 1)*k + sum of the other weights."""
    _require_k(k, minimum=1)
    best = 0
    for family in enumerate_families(graph):
        total = sum(family.weights)
        for wl in set(family.weights):
            value = (wl + 1) * k + (total - wl)
            if value > best:
                best = value
    return best


def theta_tree_dp(k: int, graph: WeightedOrientedGraph) -> int:
    """Evaluation without subset enumeration.

    The conflict graph of an accepted forest is itself a forest on the pair
    indices.  For each distinct weight value W, restrict to indices of weight
    <= W and compute, by a two-flag tree DP (vertex in/out of the family,
    some weight-W vertex chosen yet), the best weight sum of an independent
    set containing at least one weight-W vertex; that family realizes the
    slope W + 1.
    """
    _require_k(k)
    if k == 0:
        return 0
    ctx = matched_context(graph)
    if ctx.size == 0:
        return 0
    best = 0
    for cap_weight in sorted(set(ctx.weights)):
        sum_best = _best_sum_with_weight(ctx, cap_weight)
        if sum_best is None:
            continue
        value = (cap_weight + 1) * (k - 1) + sum_best + 1
        if value > best:
            best = value
    return best


def _best_sum_with_weight(ctx: MatchedForest, cap_weight: int) -> Optional[int]:
    """Max weight sum of an independent set of the conflict forest using only
    weights <= cap_weight and containing at least one weight == cap_weight."""
    allowed = [i for i in range(ctx.size) if ctx.weights[i] <= cap_weight]
    allowed_set = set(allowed)
    visited: set[int] = set()
    total_free = 0
    best_gain = None
    for root in allowed:
        if root in visited:
            continue
        tree_free, tree_hit = _tree_component_dp(
            ctx, root, allowed_set, visited, cap_weight
        )
        total_free += tree_free
        if tree_hit > _NEG // 2:
            gain = tree_hit - tree_free
            if best_gain is None or gain > best_gain:
                best_gain = gain
    if best_gain is None:
        return None
    return total_free + best_gain


def _tree_component_dp(
    ctx: MatchedForest,
    root: int,
    allowed: set[int],
    visited: set[int],
    cap_weight: int,
) -> tuple[int, int]:
    """DFS a component; returns (best sum, best sum hitting cap_weight)."""
    weights = ctx.weights
    # children listing via iterative DFS (the conflict forest is acyclic)
    parent: dict[int, int] = {root: -1}
    order = [root]
    visited.add(root)
    idx = 0
    while idx < len(order):
        v = order[idx]
        idx += 1
        for u in ctx.adjacency[v]:
            if u in allowed and u not in parent:
                parent[u] = v
                visited.add(u)
                order.append(u)
    # out[v] / inn[v]: pair (no-hit, hit) of best sums for the subtree at v
    out: dict[int, tuple[int, int]] = {}
    inn: dict[int, tuple[int, int]] = {}
    for v in reversed(order):
        hit_here = weights[v] == cap_weight
        v_in = (_NEG, weights[v]) if hit_here else (weights[v], _NEG)
        v_out = (0, _NEG)
        for u in ctx.adjacency[v]:
            if parent.get(u) == v:
                child_any = _flag_max(out[u], inn[u])
                v_in = _flag_add(v_in, out[u])
                v_out = _flag_add(v_out, child_any)
        inn[v] = v_in
        out[v] = v_out
    root_any = _flag_max(out[root], inn[root])
    return max(root_any[0], root_any[1], 0), root_any[1]


def _flag_max(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
    return (max(a[0], b[0]), max(a[1], b[1]))


def _flag_add(acc: tuple[int, int], child: tuple[int, int]) -> tuple[int, int]:
    """Max-plus composition where the hit flag is OR-ed across parts."""
    no_hit = acc[0] + child[0]
    hit = max(acc[1] + child[1], acc[1] + child[0], acc[0] + child[1])
    return (max(no_hit, _NEG), max(hit, _NEG))


# ---------------------------------------------------------------------------
# piecewise-linear description in k
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PiecewiseLinearFunction:
    """Upper envelope of lines value(k) = slope*(k-1) + intercept for k >= 1.

    Lines are sorted by slope and pruned to the ones that attain the maximum
    somewhere on k >= 1; breakpoints are the smallest integers k at which the
    next line weakly dominates.
    """

    lines: tuple[tuple[int, int], ...]
    breakpoints: tuple[int, ...]

    def value(self, k: int) -> int:
        if not self.lines:
            return 0
        return max(slope * (k - 1) + intercept for slope, intercept in self.lines)

    def regimes(self) -> list[tuple[int, int, int, Optional[int]]]:
        """(slope, intercept, k_from, k_to) spans; k_to None means unbounded.

        At an exact integer crossing both neighbors report the tied k, e.g.
        ``1 <= k <= 4`` followed by ``k >= 4``.
        """
        if not self.lines:
            return []
        spans = []
        for pos, (slope, intercept) in enumerate(self.lines):
            k_from = 1 if pos == 0 else self.breakpoints[pos - 1]
            if pos + 1 < len(self.lines):
                bp = self.breakpoints[pos]
                here = slope * (bp - 1) + intercept
                nxt_slope, nxt_intercept = self.lines[pos + 1]
                nxt = nxt_slope * (bp - 1) + nxt_intercept
                k_to = bp if here == nxt else bp - 1
            else:
                k_to = None
            if k_to is not None and k_to < k_from:
                # leads only on a sub-integer interval; nothing to report
                continue
            spans.append((slope, intercept, k_from, k_to))
        return spans

    def to_json(self) -> dict:
        return {
            "lines": [list(line) for line in self.lines],
            "breakpoints": list(self.breakpoints),
        }


def upper_envelope(
    lines: list[tuple[int, int]]
) -> PiecewiseLinearFunction:
    """Envelope of slope*(k-1)+intercept over real k >= 1."""
    best_intercept: dict[int, int] = {}
    for slope, intercept in lines:
        if intercept > best_intercept.get(slope, _NEG):
            best_intercept[slope] = intercept
    ordered = sorted(best_intercept.items())
    # stack entries: (slope, intercept, start) with start the Fraction k
    # from which the line leads the envelope
    stack: list[tuple[int, int, Fraction]] = []
    for slope, intercept in ordered:
        start = Fraction(1)
        while stack:
            top_slope, top_intercept, top_start = stack[-1]
            # crossing of the top line with the new one
            cross = Fraction(top_intercept - intercept, slope - top_slope) + 1
            if cross <= top_start:
                stack.pop()
                continue
            start = cross
            break
        stack.append((slope, intercept, start))
    # clamp the envelope to k >= 1
    while len(stack) > 1 and stack[1][2] <= 1:
        stack.pop(0)
    kept = [(slope, intercept) for slope, intercept, _ in stack]
    breakpoints = []
    for _, _, start in stack[1:]:
        bp = -((-start.numerator) // start.denominator)  # ceil
        breakpoints.append(bp)
    return PiecewiseLinearFunction(tuple(kept), tuple(breakpoints))


def theta_piecewise(graph: WeightedOrientedGraph) -> PiecewiseLinearFunction:
    """One line per family, reduced to the envelope attaining theta(k)."""
    families = enumerate_families(graph)
    return upper_envelope([family.line() for family in families])


# ---------------------------------------------------------------------------
# bounds and recursion checks
# ---------------------------------------------------------------------------


def corollary_bound(k: int, graph: WeightedOrientedGraph) -> int:
    """(k-1)*(w+1) + theta(1) with w the maximum vertex weight."""
    _require_k(k, minimum=1)
    ctx = matched_context(graph)
    w = max((weight for _, weight in ctx.graph.vertices), default=1)
    return (k - 1) * (w + 1) + theta(1, graph)


def theta_recursion_check(
    graph: WeightedOrientedGraph, t: int, k: int
) -> bool:
    """Check the deletion recursion and the growth inequality at (t, k).

    Requires the matched pair t to have exactly one non-matched neighbor z.
    Verifies theta(k, D) equals the max of theta(k, D minus N[x_t]) + w_t,
    theta(k, D minus {x_t, y_t}) and theta(k-1, D) + w_t + 1, and that the
    last term never exceeds theta(k, D).
    """
    _require_k(k, minimum=1)
    ctx = matched_context(graph)
    if not 0 <= t < ctx.size:
        raise ValueError(f"matched index {t} out of range")
    x, y = ctx.matching.pairs[t]
    neighbors = ctx.graph.neighbors(x)
    if len(neighbors) != 2:
        raise HypothesisError(
            f"pair {t} is not pendant: N({x}) = {list(neighbors)}"
        )
    w_t = ctx.weights[t]
    minus_pair = induced_subgraph(ctx.graph, {x, y})
    minus_closed = induced_subgraph(ctx.graph, ctx.graph.closed_neighborhood(x))
    lhs = theta(k, ctx.graph)
    candidates = (
        theta(k, minus_closed) + w_t,
        theta(k, minus_pair),
        theta(k - 1, ctx.graph) + w_t + 1,
    )
    growth_ok = theta(k - 1, ctx.graph) + w_t + 1 <= lhs
    return lhs == max(candidates) and growth_ok
