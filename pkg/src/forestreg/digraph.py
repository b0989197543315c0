"""Weighted oriented graphs and the Cohen-Macaulay forest hypothesis checks.

A weighted oriented graph carries a positive integer weight on every vertex
and a set of directed edges.  The acceptance hypothesis used throughout the
package: the underlying graph is a forest without isolated vertices, it has a
perfect matching {x_i, y_i} in which every y_i is a leaf and a sink, and every
matched x_i has weight 1.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence


class GraphFormatError(ValueError):
    """Malformed graph description (carries a 1-based line number when known)."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class HypothesisError(ValueError):
    """Raised when an operation requires the forest hypothesis and it fails."""


class WeightedOrientedGraph:
    """Immutable weighted oriented graph.

    Vertices are (id, weight) pairs with unique string ids and weights >= 1;
    edges are ordered (head, tail) pairs meaning head -> tail.  Self-loops and
    duplicate directed edges are rejected.  All derived orderings are by
    vertex id, so equal inputs produce identical outputs.
    """

    __slots__ = (
        "vertices",
        "edges",
        "normalization_notes",
        "_weights",
        "_out",
        "_in",
        "_und",
    )

    def __init__(
        self,
        vertices: Iterable[tuple[str, int]],
        edges: Iterable[tuple[str, str]],
        normalization_notes: Sequence[str] = (),
    ):
        weights: dict[str, int] = {}
        for vid, w in vertices:
            if vid in weights:
                raise GraphFormatError(f"duplicate vertex {vid!r}")
            if not isinstance(w, int) or w < 1:
                raise GraphFormatError(f"vertex {vid!r} has weight {w!r} < 1")
            weights[vid] = w
        edge_list: list[tuple[str, str]] = []
        seen: set[tuple[str, str]] = set()
        for head, tail in edges:
            for endpoint in (head, tail):
                if endpoint not in weights:
                    raise GraphFormatError(f"unknown endpoint {endpoint!r}")
            if head == tail:
                raise GraphFormatError(f"self-loop at {head!r}")
            if (head, tail) in seen:
                raise GraphFormatError(f"duplicate edge {head!r}->{tail!r}")
            seen.add((head, tail))
            edge_list.append((head, tail))

        self.vertices: tuple[tuple[str, int], ...] = tuple(sorted(weights.items()))
        self.edges: tuple[tuple[str, str], ...] = tuple(sorted(edge_list))
        self.normalization_notes = tuple(normalization_notes)
        self._weights = weights
        out: dict[str, list[str]] = {v: [] for v in weights}
        inn: dict[str, list[str]] = {v: [] for v in weights}
        und: dict[str, set[str]] = {v: set() for v in weights}
        for head, tail in self.edges:
            out[head].append(tail)
            inn[tail].append(head)
            und[head].add(tail)
            und[tail].add(head)
        self._out = {v: tuple(sorted(ns)) for v, ns in out.items()}
        self._in = {v: tuple(sorted(ns)) for v, ns in inn.items()}
        self._und = {v: tuple(sorted(ns)) for v, ns in und.items()}

    # -- basic accessors -------------------------------------------------

    @property
    def vertex_ids(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.vertices)

    def weight(self, vid: str) -> int:
        return self._weights[vid]

    def out_neighbors(self, vid: str) -> tuple[str, ...]:
        return self._out[vid]

    def in_neighbors(self, vid: str) -> tuple[str, ...]:
        return self._in[vid]

    def neighbors(self, vid: str) -> tuple[str, ...]:
        """Neighbors in the underlying simple graph."""
        return self._und[vid]

    def closed_neighborhood(self, vid: str) -> tuple[str, ...]:
        return tuple(sorted(set(self._und[vid]) | {vid}))

    def degree(self, vid: str) -> int:
        return len(self._und[vid])

    def is_sink(self, vid: str) -> bool:
        return not self._out[vid]

    def is_source(self, vid: str) -> bool:
        return not self._in[vid]

    def underlying_edges(self) -> tuple[tuple[str, str], ...]:
        """Edges of the underlying simple graph as sorted unordered pairs."""
        pairs = {tuple(sorted((a, b))) for a, b in self.edges}
        return tuple(sorted(pairs))

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightedOrientedGraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    def __repr__(self) -> str:
        return (
            f"WeightedOrientedGraph({len(self.vertices)} vertices, "
            f"{len(self.edges)} edges)"
        )

    def normalized_source_weights(self) -> "WeightedOrientedGraph":
        """Copy with every source vertex forced to weight 1.

        Records one note per adjusted vertex; weights of non-sources are data
        and are never touched.
        """
        notes = list(self.normalization_notes)
        vertices = []
        for vid, w in self.vertices:
            if w != 1 and self.is_source(vid):
                notes.append(f"source {vid} declared with weight {w}; normalized to 1")
                vertices.append((vid, 1))
            else:
                vertices.append((vid, w))
        return WeightedOrientedGraph(vertices, self.edges, notes)


@dataclass(frozen=True)
class PerfectMatching:
    """Perfect matching into (x_i, y_i) pairs, every y_i a leaf, sorted by x id."""

    pairs: tuple[tuple[str, str], ...]

    def __len__(self) -> int:
        return len(self.pairs)

    def x_ids(self) -> tuple[str, ...]:
        return tuple(x for x, _ in self.pairs)

    def y_ids(self) -> tuple[str, ...]:
        return tuple(y for _, y in self.pairs)


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of the Cohen-Macaulay forest hypothesis check."""

    is_forest: bool
    matching: Optional[PerfectMatching]
    all_matched_leaves_are_sinks: bool
    weight_condition_ok: bool
    violations: tuple[str, ...] = field(default=())

    @property
    def accepted(self) -> bool:
        return (
            self.is_forest
            and self.matching is not None
            and self.all_matched_leaves_are_sinks
            and self.weight_condition_ok
        )

    def summary(self) -> str:
        status = "accepted" if self.accepted else "rejected"
        lines = [f"hypothesis {status}"]
        lines.append(f"  forest: {'yes' if self.is_forest else 'no'}")
        if self.matching is not None:
            rendered = ", ".join(f"({x},{y})" for x, y in self.matching.pairs)
            lines.append(f"  leaf perfect matching: {rendered}")
        else:
            lines.append("  leaf perfect matching: none")
        lines.append(
            f"  matched leaves are sinks: "
            f"{'yes' if self.all_matched_leaves_are_sinks else 'no'}"
        )
        lines.append(
            f"  matched partners have weight 1: "
            f"{'yes' if self.weight_condition_ok else 'no'}"
        )
        for v in self.violations:
            lines.append(f"  violation: {v}")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------


def parse_digraph(text: str) -> WeightedOrientedGraph:
    """Parse a graph description, normalizing source weights to 1.

    Two formats are accepted.  The line format has one statement per line or
    per ';'-separated chunk: ``name:weight`` declares a vertex, ``a->b``
    declares a directed edge, ``#`` starts a comment.  If the first non-space
    byte is ``{`` the input is instead read as JSON with fields
    ``vertices: [{"id":..., "weight":...}]`` and ``edges: [[head, tail]]``.
    """
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return _parse_json(text)
    vertices: list[tuple[str, int]] = []
    edges: list[tuple[str, str]] = []
    declared: set[str] = set()
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0]
        for stmt in line.split(";"):
            stmt = stmt.strip()
            if not stmt:
                continue
            if "->" in stmt:
                head, _, tail = stmt.partition("->")
                head, tail = head.strip(), tail.strip()
                if not head or not tail:
                    raise GraphFormatError(f"malformed edge {stmt!r}", lineno)
                for endpoint in (head, tail):
                    if endpoint not in declared:
                        raise GraphFormatError(
                            f"unknown endpoint {endpoint!r}", lineno
                        )
                if head == tail:
                    raise GraphFormatError(f"self-loop at {head!r}", lineno)
                if (head, tail) in edges:
                    raise GraphFormatError(
                        f"duplicate edge {head!r}->{tail!r}", lineno
                    )
                edges.append((head, tail))
            elif ":" in stmt:
                name, _, weight_text = stmt.partition(":")
                name, weight_text = name.strip(), weight_text.strip()
                if not name:
                    raise GraphFormatError(f"malformed vertex {stmt!r}", lineno)
                try:
                    weight = int(weight_text)
                except ValueError:
                    raise GraphFormatError(
                        f"vertex {name!r} has non-integer weight {weight_text!r}",
                        lineno,
                    ) from None
                if weight < 1:
                    raise GraphFormatError(
                        f"vertex {name!r} has weight {weight} < 1", lineno
                    )
                if name in declared:
                    raise GraphFormatError(f"duplicate vertex {name!r}", lineno)
                declared.add(name)
                vertices.append((name, weight))
            else:
                raise GraphFormatError(f"unrecognized statement {stmt!r}", lineno)
    graph = WeightedOrientedGraph(vertices, edges)
    return graph.normalized_source_weights()


def _parse_json(text: str) -> WeightedOrientedGraph:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON: {exc}", exc.lineno) from None
    if not isinstance(payload, dict):
        raise GraphFormatError("top-level JSON value must be an object")
    try:
        vertices = [(v["id"], v["weight"]) for v in payload.get("vertices", [])]
        edges = [(e[0], e[1]) for e in payload.get("edges", [])]
    except (TypeError, KeyError, IndexError) as exc:
        raise GraphFormatError(f"malformed JSON graph: {exc!r}") from None
    graph = WeightedOrientedGraph(vertices, edges)
    return graph.normalized_source_weights()


def render_digraph(graph: WeightedOrientedGraph) -> str:
    """Line-format rendering; parse_digraph round-trips it."""
    lines = [f"{vid}:{w}" for vid, w in graph.vertices]
    lines.extend(f"{head}->{tail}" for head, tail in graph.edges)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# structure checks
# ---------------------------------------------------------------------------


def is_forest(graph: WeightedOrientedGraph) -> bool:
    """True iff the underlying simple graph is acyclic."""
    parent: dict[str, str] = {v: v for v in graph.vertex_ids}

    def find(v: str) -> str:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b in graph.underlying_edges():
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    return True


def find_leaf_perfect_matching(
    graph: WeightedOrientedGraph,
) -> Optional[PerfectMatching]:
    """Unique perfect matching whose pairs each contain an original leaf.

    Peels current leaves in id order, matching each to its unique neighbor.
    Absent whenever the peeling strands a vertex or a matched pair contains
    no degree-1 vertex of the original graph.  Within a pair the leaf is the
    y; for a two-vertex component (both endpoints leaves) the y is the sink
    end of the directed edge when there is one, else the larger id.
    """
    if not is_forest(graph):
        return None
    ids = graph.vertex_ids
    if not ids:
        return PerfectMatching(())
    if len(ids) % 2 == 1:
        return None
    degree = {v: graph.degree(v) for v in ids}
    if any(d == 0 for d in degree.values()):
        return None
    original_degree = dict(degree)
    alive = {v: set(graph.neighbors(v)) for v in ids}
    leaves = [v for v in ids if degree[v] == 1]
    heapq.heapify(leaves)
    matched: dict[str, str] = {}
    while leaves:
        leaf = heapq.heappop(leaves)
        if leaf in matched:
            continue
        if degree[leaf] != 1:
            # became isolated before being matched
            return None
        (partner,) = alive[leaf]
        matched[leaf] = partner
        matched[partner] = leaf
        for v in (leaf, partner):
            for u in tuple(alive[v]):
                alive[u].discard(v)
                degree[u] -= 1
                if degree[u] == 1 and u not in matched:
                    heapq.heappush(leaves, u)
            alive[v] = set()
            degree[v] = 0
    if len(matched) != len(ids):
        return None
    pairs = []
    for a, b in sorted(
        {tuple(sorted((u, v))) for u, v in matched.items()}
    ):
        la, lb = original_degree[a] == 1, original_degree[b] == 1
        if la and lb:
            # single-edge component: prefer the sink end as y
            if graph.is_sink(b):
                x, y = a, b
            elif graph.is_sink(a):
                x, y = b, a
            else:
                x, y = a, b
        elif la:
            x, y = b, a
        elif lb:
            x, y = a, b
        else:
            return None
        pairs.append((x, y))
    return PerfectMatching(tuple(sorted(pairs)))


def check_cm_hypothesis(graph: WeightedOrientedGraph) -> ValidationReport:
    """Validate: forest, no isolated vertices, leaf matching, sinks, weights."""
    violations: list[str] = []
    forest = is_forest(graph)
    if not forest:
        violations.append("underlying graph contains a cycle")
    isolated = [v for v in graph.vertex_ids if graph.degree(v) == 0]
    for v in isolated:
        violations.append(f"isolated vertex {v}")
    matching = find_leaf_perfect_matching(graph) if forest and not isolated else None
    if forest and not isolated and matching is None:
        violations.append("no perfect matching with all matched partners leaves")
    sinks_ok = True
    weights_ok = True
    if matching is not None:
        for x, y in matching.pairs:
            if not graph.is_sink(y):
                sinks_ok = False
                violations.append(f"matched leaf {y} is not a sink (edge {y}->{x})")
            if graph.weight(x) != 1:
                weights_ok = False
                violations.append(f"w({x})={graph.weight(x)}>=2 on a matched vertex")
    else:
        sinks_ok = False
        weights_ok = False
    return ValidationReport(
        is_forest=forest,
        matching=matching,
        all_matched_leaves_are_sinks=sinks_ok,
        weight_condition_ok=weights_ok,
        violations=tuple(violations),
    )


def induced_subgraph(
    graph: WeightedOrientedGraph, removed: Iterable[str]
) -> WeightedOrientedGraph:
    """Induced subgraph on V minus ``removed``; weights kept as-is."""
    removed_set = set(removed)
    unknown = removed_set - set(graph.vertex_ids)
    if unknown:
        raise GraphFormatError(f"unknown vertex id {sorted(unknown)[0]!r}")
    vertices = [(v, w) for v, w in graph.vertices if v not in removed_set]
    edges = [
        (a, b)
        for a, b in graph.edges
        if a not in removed_set and b not in removed_set
    ]
    return WeightedOrientedGraph(vertices, edges)


def without_isolated(graph: WeightedOrientedGraph) -> WeightedOrientedGraph:
    """Drop degree-0 vertices (they carry no edges, hence no generators)."""
    isolated = [v for v in graph.vertex_ids if graph.degree(v) == 0]
    if not isolated:
        return graph
    return induced_subgraph(graph, isolated)


@dataclass(frozen=True)
class PendantEdge:
    """Matched pair (x, y) whose x has exactly one extra neighbor z."""

    x: str
    y: str
    z: str


def pick_pendant_matched_edge(
    graph: WeightedOrientedGraph, matching: PerfectMatching
) -> Optional[PendantEdge]:
    """Smallest-x matched pair with N(x) = {y, z}.

    Returns None when every component is a single matched edge (the callers'
    base case).  Raises if the matching has fewer than two pairs.
    """
    if len(matching) < 2:
        raise HypothesisError("need at least two matched pairs")
    for x, y in matching.pairs:
        nbrs = graph.neighbors(x)
        if len(nbrs) == 2:
            z = nbrs[0] if nbrs[1] == y else nbrs[1]
            return PendantEdge(x, y, z)
    return None
