"""Property harness: random instances, identity checkers, formula-vs-oracle
equivalence reports, and the exhaustive small-instance corpora.

Oracle disagreement is a hard failure; a row may be skipped only when the
homology oracle reports the instance infeasible, and every skip carries the
reason.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .digraph import (
    HypothesisError,
    WeightedOrientedGraph,
    induced_subgraph,
)
from .monomial import (
    Monomial,
    MonomialIdeal,
    VariableRegistry,
    edge_ideal,
    minimalize,
    monomial_from_map,
    principal_ideal,
    registry_for,
)
from .resolution import (
    DEFAULT_LATTICE_CAP,
    DEFAULT_SUPPORT_CAP,
    OracleInfeasibleError,
    betti_table,
    regularity,
)
from .theta import matched_context, theta

# ---------------------------------------------------------------------------
# instance generation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ForestGenSpec:
    """Deterministic recipe for one random accepted forest."""

    pairs: int
    max_weight: int = 3
    seed: int = 0
    internal_edge_density: float = 0.7


def random_cm_forest(spec: ForestGenSpec) -> WeightedOrientedGraph:
    """Random forest that always satisfies the acceptance hypothesis.

    Internal vertices x_i carry weight 1 and form a random forest (each new
    vertex attaches to an earlier one with the configured probability, in a
    random direction); every x_i gets a pendant sink y_i with a random
    weight in [1, max_weight].
    """
    if spec.pairs < 1:
        raise ValueError("need at least one matched pair")
    rng = random.Random(spec.seed)
    r = spec.pairs
    vertices = [(f"x{i}", 1) for i in range(1, r + 1)]
    vertices += [
        (f"y{i}", rng.randint(1, spec.max_weight)) for i in range(1, r + 1)
    ]
    edges = []
    for i in range(2, r + 1):
        if rng.random() < spec.internal_edge_density:
            j = rng.randint(1, i - 1)
            if rng.random() < 0.5:
                edges.append((f"x{j}", f"x{i}"))
            else:
                edges.append((f"x{i}", f"x{j}"))
    edges += [(f"x{i}", f"y{i}") for i in range(1, r + 1)]
    return WeightedOrientedGraph(vertices, edges)


def build_forest(
    internal_edges: tuple[tuple[int, int], ...],
    weights: tuple[int, ...],
    orientations: Optional[tuple[bool, ...]] = None,
) -> WeightedOrientedGraph:
    """Forest from 0-based internal edges and per-pair leaf weights.

    ``orientations[e]`` flips internal edge e; pendant edges always point at
    the leaf, so the result is accepted by construction.
    """
    r = len(weights)
    vertices = [(f"x{i}", 1) for i in range(1, r + 1)]
    vertices += [(f"y{i}", w) for i, w in enumerate(weights, start=1)]
    edges = []
    for pos, (a, b) in enumerate(internal_edges):
        flip = orientations[pos] if orientations is not None else False
        a_id, b_id = f"x{a + 1}", f"x{b + 1}"
        edges.append((b_id, a_id) if flip else (a_id, b_id))
    edges += [(f"x{i}", f"y{i}") for i in range(1, r + 1)]
    return WeightedOrientedGraph(vertices, edges)


# forests on r unlabeled internal vertices, one representative per shape
INTERNAL_FOREST_SHAPES: dict[int, tuple[tuple[tuple[int, int], ...], ...]] = {
    1: ((),),
    2: ((), ((0, 1),)),
    3: ((), ((0, 1),), ((0, 1), (1, 2))),
    4: (
        (),
        ((0, 1),),
        ((0, 1), (2, 3)),
        ((0, 1), (1, 2)),
        ((0, 1), (1, 2), (1, 3)),
        ((0, 1), (1, 2), (2, 3)),
    ),
}


def iter_shape_forests(
    r: int, weight_values: tuple[int, ...] = (1, 2, 3)
) -> Iterator[WeightedOrientedGraph]:
    """Every internal forest shape on r pairs with every leaf-weight vector.

    Internal orientations are irrelevant to the edge ideal (internal weights
    are all 1), so one representative orientation per shape covers the ideal
    identities for every accepted forest of that size up to relabeling.
    """
    for shape in INTERNAL_FOREST_SHAPES[r]:
        for weights in itertools.product(weight_values, repeat=r):
            yield build_forest(shape, weights)


def _acyclic_edge_subsets(r: int) -> list[tuple[tuple[int, int], ...]]:
    all_edges = list(itertools.combinations(range(r), 2))
    subsets = []
    for size in range(len(all_edges) + 1):
        for subset in itertools.combinations(all_edges, size):
            parent = list(range(r))

            def find(v: int) -> int:
                while parent[v] != v:
                    parent[v] = parent[parent[v]]
                    v = parent[v]
                return v

            ok = True
            for a, b in subset:
                ra, rb = find(a), find(b)
                if ra == rb:
                    ok = False
                    break
                parent[ra] = rb
            if ok:
                subsets.append(subset)
    return subsets


def iter_labeled_forests(
    r: int, weight_values: tuple[int, ...] = (1, 2, 3)
) -> Iterator[WeightedOrientedGraph]:
    """Every labeled internal topology, orientation and weight choice."""
    for subset in _acyclic_edge_subsets(r):
        for orientation in itertools.product((False, True), repeat=len(subset)):
            for weights in itertools.product(weight_values, repeat=r):
                yield build_forest(subset, weights, orientation)


def reorient_matched_edge(
    graph: WeightedOrientedGraph, t: int
) -> WeightedOrientedGraph:
    """Flip the direction of matched pendant edge t (negative control)."""
    ctx = matched_context(graph)
    x, y = ctx.matching.pairs[t]
    edges = []
    for head, tail in graph.edges:
        if (head, tail) == (x, y):
            edges.append((y, x))
        elif (head, tail) == (y, x):
            edges.append((x, y))
        else:
            edges.append((head, tail))
    return WeightedOrientedGraph(graph.vertices, edges)


# ---------------------------------------------------------------------------
# cached oracle regularity
# ---------------------------------------------------------------------------

_REG_CACHE: dict[tuple, int] = {}


def _canonical_ideal_key(ideal: MonomialIdeal) -> tuple:
    """Support-compressed key; order-preserving relabelings share it."""
    support = ideal.support()
    position = {v: p for p, v in enumerate(support)}
    gens = tuple(
        tuple(sorted((position[v], e) for v, e in g.exponents.items()))
        for g in ideal.gens
    )
    return (len(support), gens)


def cached_regularity(
    ideal: MonomialIdeal,
    cap: int = DEFAULT_SUPPORT_CAP,
    lattice_cap: int = DEFAULT_LATTICE_CAP,
) -> int:
    key = (_canonical_ideal_key(ideal), cap)
    value = _REG_CACHE.get(key)
    if value is None:
        value = regularity(ideal, cap=cap, lattice_cap=lattice_cap)
        _REG_CACHE[key] = value
    return value


def clear_regularity_cache() -> None:
    _REG_CACHE.clear()


# ---------------------------------------------------------------------------
# pendant decompositions and the ideal identities
# ---------------------------------------------------------------------------


class PendantView:
    """Ideals around a pendant matched pair, with cached powers.

    All ideals live in the registry of the full graph so they can be
    compared directly.
    """

    def __init__(self, graph: WeightedOrientedGraph, t: int):
        ctx = matched_context(graph)
        if not 0 <= t < ctx.size:
            raise ValueError(f"matched index {t} out of range")
        x, y = ctx.matching.pairs[t]
        neighbors = ctx.graph.neighbors(x)
        if len(neighbors) != 2:
            raise HypothesisError(
                f"pair {t} is not pendant: N({x}) = {list(neighbors)}"
            )
        self.graph = ctx.graph
        self.x, self.y = x, y
        self.z = neighbors[0] if neighbors[1] == y else neighbors[1]
        self.weight = ctx.weights[t]
        self.registry = registry_for(ctx.graph)
        self.x_mon = monomial_from_map(self.registry, {x: 1})
        self.z_mon = monomial_from_map(self.registry, {self.z: 1})
        self.zx_mon = monomial_from_map(self.registry, {self.z: 1, x: 1})
        self.pendant_mon = monomial_from_map(
            self.registry, {x: 1, y: self.weight}
        )
        self._bases = {
            "full": edge_ideal(ctx.graph, self.registry),
            "no_y": edge_ideal(
                induced_subgraph(ctx.graph, {y}), self.registry
            ),
            "no_pair": edge_ideal(
                induced_subgraph(ctx.graph, {x, y}), self.registry
            ),
            "no_closed": edge_ideal(
                induced_subgraph(ctx.graph, ctx.graph.closed_neighborhood(x)),
                self.registry,
            ),
        }
        self._powers: dict[tuple[str, int], MonomialIdeal] = {}

    def power(self, which: str, k: int) -> MonomialIdeal:
        key = (which, k)
        cached = self._powers.get(key)
        if cached is None:
            if k == 0:
                cached = self._bases[which] ** 0
            else:
                cached = self.power(which, k - 1) * self._bases[which]
            self._powers[key] = cached
        return cached


def check_lemma_identities(
    graph: WeightedOrientedGraph, t: int, k: int
) -> dict[str, bool]:
    """The five pendant-pair ideal identities at power k, as exact equalities.

    With m = x*y^w the pendant generator and z the internal neighbor of x:

    - intersection_splits:      J^k  meet  m*I^(k-1)
                                 == z*m*J^(k-1) + m*C^k
    - nested_intersection_absorbs: z*m*J^(k-1)  meet  m*C^k  ==  z*m*C^k
    - colon_by_pendant_product: (J^k : z*x) == J^(k-1)
    - adjoin_x_collapses:       (J^k, x) == (P^k, x)
    - colon_then_adjoin_z:      ((J^k : x), z) == ((C^k : x), z) == (C^k, z)

    where J, P, C are the ideals of the graph minus y, minus the pair, and
    minus the closed neighborhood of x.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    view = PendantView(graph, t)
    return _lemma_outcomes(view, k)


def _lemma_outcomes(view: PendantView, k: int) -> dict[str, bool]:
    m = view.pendant_mon
    z = view.z_mon
    x = view.x_mon
    J_k = view.power("no_y", k)
    J_km1 = view.power("no_y", k - 1)
    C_k = view.power("no_closed", k)
    P_k = view.power("no_pair", k)
    I_km1 = view.power("full", k - 1)
    registry = view.registry

    left = J_k.intersect(m * I_km1)
    right = (z * m) * J_km1 + m * C_k
    outcomes = {"intersection_splits": left == right}

    left = ((z * m) * J_km1).intersect(m * C_k)
    right = (z * m) * C_k
    outcomes["nested_intersection_absorbs"] = left == right

    outcomes["colon_by_pendant_product"] = J_k.colon(view.zx_mon) == J_km1

    x_ideal = principal_ideal(registry, x)
    outcomes["adjoin_x_collapses"] = J_k + x_ideal == P_k + x_ideal

    z_ideal = principal_ideal(registry, z)
    first = J_k.colon(x) + z_ideal
    second = C_k.colon(x) + z_ideal
    third = C_k + z_ideal
    outcomes["colon_then_adjoin_z"] = first == second == third
    return outcomes


def check_regularity_bounds(
    graph: WeightedOrientedGraph,
    t: int,
    k: int,
    cap: int = DEFAULT_SUPPORT_CAP,
) -> dict[str, bool]:
    """Oracle-verified inequalities around a pendant pair at power k.

    - deletion_bound: reg(J^k) <= max(reg(J^(k-1)) + 2, reg(C^k) + 1,
      reg(P^k)), zero ideals dropped from the max.
    - corollary_bound: reg(I^k) <= (k-1)(w+1) + reg(I).
    - ses_regularity: the short-exact-sequence inequalities for
      (A, B, C) = (J^k meet L, J^k plus-direct L, J^k + L) with
      L = m * I^(k-1).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    view = PendantView(graph, t)

    def reg_or_none(ideal: MonomialIdeal) -> Optional[int]:
        if ideal.is_zero():
            return None
        return cached_regularity(ideal, cap=cap)

    J_k = view.power("no_y", k)
    bounds = [
        value
        for value in (
            _shift(reg_or_none(view.power("no_y", k - 1)), 2),
            _shift(reg_or_none(view.power("no_closed", k)), 1),
            reg_or_none(view.power("no_pair", k)),
        )
        if value is not None
    ]
    outcomes = {
        "deletion_bound": cached_regularity(J_k, cap=cap) <= max(bounds)
    }

    I_k = view.power("full", k)
    w = max(weight for _, weight in view.graph.vertices)
    outcomes["corollary_bound"] = cached_regularity(I_k, cap=cap) <= (
        (k - 1) * (w + 1) + cached_regularity(view.power("full", 1), cap=cap)
    )

    L = view.pendant_mon * view.power("full", k - 1)
    A = J_k.intersect(L)
    reg_a = reg_or_none(A)
    reg_b = max(cached_regularity(J_k, cap=cap), cached_regularity(L, cap=cap))
    reg_c = cached_regularity(I_k, cap=cap)
    ses_ok = reg_a is not None and (
        reg_b <= max(reg_a, reg_c)
        and reg_a <= max(reg_b, reg_c + 1)
        and reg_c <= max(reg_a - 1, reg_b)
    )
    outcomes["ses_regularity"] = ses_ok
    return outcomes


def _shift(value: Optional[int], offset: int) -> Optional[int]:
    return None if value is None else value + offset


# ---------------------------------------------------------------------------
# formula vs oracle
# ---------------------------------------------------------------------------


@dataclass
class EquivalenceRow:
    k: int
    theta: int
    oracle: Optional[int]
    match: Optional[bool]
    skipped: bool = False
    reason: str = ""
    runtime: float = 0.0


@dataclass
class EquivalenceReport:
    instance: str
    rows: list[EquivalenceRow] = field(default_factory=list)
    lemma_outcomes: Optional[dict[str, bool]] = None

    @property
    def passed(self) -> bool:
        rows_ok = all(row.match for row in self.rows if not row.skipped)
        lemmas_ok = self.lemma_outcomes is None or all(
            self.lemma_outcomes.values()
        )
        return rows_ok and lemmas_ok

    @property
    def skips(self) -> int:
        return sum(1 for row in self.rows if row.skipped)

    def to_csv(self) -> str:
        lines = ["instance,k,theta,oracle,match,skipped,reason"]
        for row in self.rows:
            oracle = "" if row.oracle is None else row.oracle
            match = "" if row.match is None else str(row.match).lower()
            lines.append(
                f"{self.instance},{row.k},{row.theta},{oracle},"
                f"{match},{str(row.skipped).lower()},{row.reason}"
            )
        return "\n".join(lines)

    def to_json(self) -> dict:
        payload = {
            "instance": self.instance,
            "rows": [
                {
                    "k": row.k,
                    "theta": row.theta,
                    "oracle": row.oracle,
                    "match": row.match,
                    "skipped": row.skipped,
                    "reason": row.reason,
                    "runtime": row.runtime,
                }
                for row in self.rows
            ],
            "passed": self.passed,
        }
        if self.lemma_outcomes is not None:
            payload["lemma_outcomes"] = dict(self.lemma_outcomes)
        return payload


def instance_label(graph: WeightedOrientedGraph) -> str:
    vertices = ";".join(f"{v}:{w}" for v, w in graph.vertices)
    edges = ";".join(f"{a}->{b}" for a, b in graph.edges)
    return f"{vertices}|{edges}"


def formula_vs_oracle(
    graph: WeightedOrientedGraph,
    k_max: int,
    cap: int = DEFAULT_SUPPORT_CAP,
    lattice_cap: int = DEFAULT_LATTICE_CAP,
    instance: Optional[str] = None,
    with_identities: bool = False,
) -> EquivalenceReport:
    """Compare theta(k) with the homology oracle for k = 1..k_max.

    Raises HypothesisError when the graph is outside the formula's scope;
    oracle-infeasible rows are marked skipped with the reason.  With
    ``with_identities`` the report also carries the pendant ideal identity
    outcomes, AND-ed over every valid pendant pair and power.
    """
    ctx = matched_context(graph)  # raises HypothesisError when rejected
    report = EquivalenceReport(
        instance=instance if instance is not None else instance_label(graph)
    )
    if with_identities:
        combined: dict[str, bool] = {}
        for t in range(ctx.size):
            x = ctx.matching.pairs[t][0]
            if len(ctx.graph.neighbors(x)) != 2:
                continue
            view = PendantView(graph, t)
            for k in range(1, k_max + 1):
                for name, ok in _lemma_outcomes(view, k).items():
                    combined[name] = combined.get(name, True) and ok
        report.lemma_outcomes = combined or None
    ideal = edge_ideal(ctx.graph)
    power = ideal ** 0
    for k in range(1, k_max + 1):
        started = time.perf_counter()
        value = theta(k, ctx.graph)
        power = power * ideal
        try:
            oracle = cached_regularity(power, cap=cap, lattice_cap=lattice_cap)
        except OracleInfeasibleError as exc:
            report.rows.append(
                EquivalenceRow(
                    k=k,
                    theta=value,
                    oracle=None,
                    match=None,
                    skipped=True,
                    reason=str(exc),
                    runtime=time.perf_counter() - started,
                )
            )
            continue
        report.rows.append(
            EquivalenceRow(
                k=k,
                theta=value,
                oracle=oracle,
                match=value == oracle,
                runtime=time.perf_counter() - started,
            )
        )
    return report


# ---------------------------------------------------------------------------
# Betti splitting diagnostic
# ---------------------------------------------------------------------------


def betti_splitting_check(
    ideal_one: MonomialIdeal,
    ideal_two: MonomialIdeal,
    cap: int = DEFAULT_SUPPORT_CAP,
) -> bool:
    """True iff Betti numbers of the sum split with the shifted intersection.

    Requires the generators of the sum to be exactly the disjoint union of
    the two generator sets.
    """
    total = ideal_one + ideal_two
    merged = sorted(ideal_one.gens + ideal_two.gens, key=Monomial.sort_key)
    if list(total.gens) != merged:
        raise ValueError(
            "generators of the sum must be the disjoint union of both "
            "generator sets"
        )
    table = betti_table(total, cap=cap)
    table_one = betti_table(ideal_one, cap=cap)
    table_two = betti_table(ideal_two, cap=cap)
    table_meet = betti_table(ideal_one.intersect(ideal_two), cap=cap)
    keys = (
        set(table.entries)
        | set(table_one.entries)
        | set(table_two.entries)
        | {(i + 1, j) for i, j in table_meet.entries}
    )
    for i, j in keys:
        expected = (
            table_one.rank(i, j)
            + table_two.rank(i, j)
            + (table_meet.rank(i - 1, j) if i > 0 else 0)
        )
        if table.rank(i, j) != expected:
            return False
    return True


# ---------------------------------------------------------------------------
# random monomial ideals (for the polarization / disjoint-variable suites)
# ---------------------------------------------------------------------------


def random_monomial_ideal(
    rng: random.Random,
    max_vars: int = 5,
    max_exp: int = 4,
    max_gens: int = 6,
    polarized_support_cap: int = 10,
    registry: Optional[VariableRegistry] = None,
    var_offset: int = 0,
) -> MonomialIdeal:
    """Seeded nonzero, non-unit monomial ideal with small polarized support.

    Exponents favor small values; draws whose polarized variable count would
    exceed the cap are rejected and redrawn, keeping the homology oracle
    comfortably inside its feasibility region.
    """
    if registry is None:
        registry = VariableRegistry([f"v{i}" for i in range(1, max_vars + 1)])
    exp_choices = list(range(1, max_exp + 1))
    exp_weights = [2 ** (max_exp - e) for e in exp_choices]
    while True:
        count = rng.randint(2, max_gens)
        gens = []
        for _ in range(count):
            size = rng.randint(1, min(3, max_vars))
            chosen = rng.sample(range(max_vars), size)
            exps = [0] * len(registry)
            for v in chosen:
                exps[var_offset + v] = rng.choices(exp_choices, exp_weights)[0]
            gens.append(Monomial(exps))
        ideal = minimalize(registry, gens)
        if ideal.is_zero() or ideal.is_unit():
            continue
        polarized_support = sum(
            max(g.exps[i] for g in ideal.gens) for i in range(len(registry))
        )
        if polarized_support > polarized_support_cap:
            continue
        return ideal


def random_disjoint_pair(
    rng: random.Random, block_vars: int = 3, max_exp: int = 3, max_gens: int = 4
) -> tuple[MonomialIdeal, MonomialIdeal]:
    """Two ideals over one registry with disjoint variable supports."""
    registry = VariableRegistry(
        [f"a{i}" for i in range(1, block_vars + 1)]
        + [f"b{i}" for i in range(1, block_vars + 1)]
    )
    first = random_monomial_ideal(
        rng,
        max_vars=block_vars,
        max_exp=max_exp,
        max_gens=max_gens,
        registry=registry,
        var_offset=0,
    )
    second = random_monomial_ideal(
        rng,
        max_vars=block_vars,
        max_exp=max_exp,
        max_gens=max_gens,
        registry=registry,
        var_offset=block_vars,
    )
    return first, second


# ---------------------------------------------------------------------------
# suites (exhaustive / random) used by the CLI and the acceptance gate
# ---------------------------------------------------------------------------


@dataclass
class SuiteResult:
    name: str
    instances: int = 0
    failures: list[tuple[str, str]] = field(default_factory=list)
    skipped: list[tuple[str, str]] = field(default_factory=list)
    counterexample: Optional[WeightedOrientedGraph] = None

    @property
    def passed(self) -> bool:
        return not self.failures

    def render(self) -> str:
        lines = [
            f"suite {self.name}: {self.instances} instances, "
            f"{len(self.failures)} failures, {len(self.skipped)} skipped"
        ]
        for label, reason in self.failures[:10]:
            lines.append(f"  FAIL {label}: {reason}")
        for label, reason in self.skipped[:10]:
            lines.append(f"  skip {label}: {reason}")
        return "\n".join(lines)


def run_equivalence_suite(
    graphs: Iterator[WeightedOrientedGraph],
    k_max: int,
    name: str,
    cap: int = DEFAULT_SUPPORT_CAP,
    allow_skips: bool = False,
) -> SuiteResult:
    result = SuiteResult(name=name)
    for graph in graphs:
        result.instances += 1
        report = formula_vs_oracle(graph, k_max, cap=cap)
        for row in report.rows:
            if row.skipped:
                entry = (report.instance, f"k={row.k}: {row.reason}")
                if allow_skips:
                    result.skipped.append(entry)
                else:
                    result.failures.append(entry)
                    result.counterexample = result.counterexample or graph
            elif not row.match:
                result.failures.append(
                    (
                        report.instance,
                        f"k={row.k}: theta={row.theta} oracle={row.oracle}",
                    )
                )
                if result.counterexample is None:
                    result.counterexample = graph
    return result


def run_lemma_suite(
    graphs: Iterator[WeightedOrientedGraph],
    k_max: int,
    name: str = "lemma-identities",
) -> SuiteResult:
    result = SuiteResult(name=name)
    for graph in graphs:
        result.instances += 1
        ctx = matched_context(graph)
        for t in range(ctx.size):
            x = ctx.matching.pairs[t][0]
            if len(ctx.graph.neighbors(x)) != 2:
                continue
            view = PendantView(graph, t)
            for k in range(1, k_max + 1):
                outcomes = _lemma_outcomes(view, k)
                for identity, ok in outcomes.items():
                    if not ok:
                        result.failures.append(
                            (
                                instance_label(graph),
                                f"t={t} k={k}: {identity}",
                            )
                        )
                        if result.counterexample is None:
                            result.counterexample = graph
    return result


def run_exhaustive_suite(
    r_max: int = 3,
    k_max: int = 2,
    weight_values: tuple[int, ...] = (1, 2, 3),
    cap: int = DEFAULT_SUPPORT_CAP,
) -> SuiteResult:
    """Formula == oracle on every labeled forest with r <= r_max."""

    def graphs() -> Iterator[WeightedOrientedGraph]:
        for r in range(1, r_max + 1):
            yield from iter_labeled_forests(r, weight_values)

    return run_equivalence_suite(
        graphs(), k_max, name=f"exhaustive r<={r_max} k<={k_max}", cap=cap
    )


def run_random_suite(
    count: int = 100,
    seed: int = 0,
    r_max: int = 4,
    k_max: int = 2,
    max_weight: int = 3,
    cap: int = DEFAULT_SUPPORT_CAP,
) -> SuiteResult:
    """Formula == oracle on seeded random forests; no skips allowed."""

    def graphs() -> Iterator[WeightedOrientedGraph]:
        for i in range(count):
            spec = ForestGenSpec(
                pairs=(i % r_max) + 1,
                max_weight=max_weight,
                seed=seed * 100003 + i,
            )
            yield random_cm_forest(spec)

    return run_equivalence_suite(
        graphs(),
        k_max,
        name=f"random n={count} r<={r_max} k<={k_max} seed={seed}",
        cap=cap,
    )
