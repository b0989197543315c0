"""Monomial ideal arithmetic: edge ideals, sums, products, powers, colons,
intersections and polarization, all over an explicit variable registry.

Ideals are kept in canonical form: the unique minimal generating set, sorted
by (total degree, exponent vector).  The zero ideal has no generators; the
unit ideal has the single generator 1.
"""

from __future__ import annotations

import re
from typing import Iterable, Optional, Sequence

from .digraph import WeightedOrientedGraph


class RegistryMismatchError(ValueError):
    """Operands live over different variable registries."""


class VariableRegistry:
    """Ordered variable names, with provenance for polarized copies."""

    __slots__ = ("names", "origin", "_index")

    def __init__(
        self,
        names: Sequence[str],
        origin: Optional[dict[str, tuple[str, int]]] = None,
    ):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")
        self.names = names
        self.origin = dict(origin) if origin else {}
        self._index = {name: i for i, name in enumerate(names)}

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self._index[name]

    def __eq__(self, other) -> bool:
        if not isinstance(other, VariableRegistry):
            return NotImplemented
        return self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"VariableRegistry({list(self.names)!r})"


class Monomial:
    """Immutable monomial stored as a dense exponent tuple."""

    __slots__ = ("exps", "degree", "_hash")

    def __init__(self, exps: Iterable[int]):
        exps = tuple(exps)
        if exps and min(exps) < 0:
            raise ValueError("exponents must be nonnegative")
        self.exps = exps
        self.degree = sum(exps)
        self._hash = hash(exps)

    @property
    def exponents(self) -> dict[int, int]:
        """Sparse view: variable index -> positive exponent."""
        return {i: e for i, e in enumerate(self.exps) if e}

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, e in enumerate(self.exps) if e)

    def is_one(self) -> bool:
        return self.degree == 0

    def divides(self, other: "Monomial") -> bool:
        return all(a <= b for a, b in zip(self.exps, other.exps))

    def lcm(self, other: "Monomial") -> "Monomial":
        return Monomial(map(max, self.exps, other.exps))

    def gcd(self, other: "Monomial") -> "Monomial":
        return Monomial(map(min, self.exps, other.exps))

    def __mul__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        return Monomial(a + b for a, b in zip(self.exps, other.exps))

    def colon_residual(self, m: "Monomial") -> "Monomial":
        """self / gcd(self, m), i.e. max(e_i - m_i, 0) componentwise."""
        return Monomial(max(a - b, 0) for a, b in zip(self.exps, m.exps))

    def sort_key(self) -> tuple:
        return (self.degree, self.exps)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Monomial):
            return NotImplemented
        return self.exps == other.exps

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Monomial({self.exps!r})"

    def render(self, registry: VariableRegistry) -> str:
        if self.degree == 0:
            return "1"
        parts = []
        for i, e in enumerate(self.exps):
            if e == 1:
                parts.append(registry.names[i])
            elif e > 1:
                parts.append(f"{registry.names[i]}^{e}")
        return "*".join(parts)


def monomial_from_map(registry: VariableRegistry, exps: dict[str, int]) -> Monomial:
    dense = [0] * len(registry)
    for name, e in exps.items():
        dense[registry.index(name)] += e
    return Monomial(dense)


class MonomialIdeal:
    """Monomial ideal in canonical minimal form over a registry."""

    __slots__ = ("registry", "gens")

    def __init__(self, registry: VariableRegistry, gens: tuple[Monomial, ...]):
        # callers go through minimalize(); this constructor trusts its input
        self.registry = registry
        self.gens = gens

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return len(self.gens) == 1 and self.gens[0].is_one()

    def contains(self, m: Monomial) -> bool:
        return any(g.divides(m) for g in self.gens)

    def support(self) -> tuple[int, ...]:
        used: set[int] = set()
        for g in self.gens:
            used.update(g.support)
        return tuple(sorted(used))

    def _check_registry(self, other: "MonomialIdeal") -> None:
        if self.registry != other.registry:
            raise RegistryMismatchError(
                f"{self.registry!r} vs {other.registry!r}"
            )

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        self._check_registry(other)
        return minimalize(self.registry, self.gens + other.gens)

    def __mul__(self, other) -> "MonomialIdeal":
        if isinstance(other, Monomial):
            return MonomialIdeal(
                self.registry, tuple(g * other for g in self.gens)
            )
        self._check_registry(other)
        products = {g * h for g in self.gens for h in other.gens}
        return minimalize(self.registry, products)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MonomialIdeal":
        if k < 0:
            raise ValueError("power requires k >= 0")
        result = unit_ideal(self.registry)
        for _ in range(k):
            result = result * self
        return result

    def intersect(self, other: "MonomialIdeal") -> "MonomialIdeal":
        self._check_registry(other)
        lcms = {g.lcm(h) for g in self.gens for h in other.gens}
        return minimalize(self.registry, lcms)

    def colon(self, m: Monomial) -> "MonomialIdeal":
        return minimalize(
            self.registry, (g.colon_residual(m) for g in self.gens)
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return self.registry == other.registry and self.gens == other.gens

    def __hash__(self) -> int:
        return hash((self.registry, self.gens))

    def __len__(self) -> int:
        return len(self.gens)

    def render(self) -> str:
        return ", ".join(g.render(self.registry) for g in self.gens)

    def __repr__(self) -> str:
        return f"MonomialIdeal({self.render()})"


def zero_ideal(registry: VariableRegistry) -> MonomialIdeal:
    return MonomialIdeal(registry, ())


def unit_ideal(registry: VariableRegistry) -> MonomialIdeal:
    return MonomialIdeal(registry, (Monomial((0,) * len(registry)),))


def principal_ideal(registry: VariableRegistry, m: Monomial) -> MonomialIdeal:
    return MonomialIdeal(registry, (m,))


def minimalize(
    registry: VariableRegistry, gens: Iterable[Monomial]
) -> MonomialIdeal:
    """Divisibility-reduce, deduplicate and sort a generating set.

    A generator survives iff no other (smaller-degree or equal) generator
    divides it; scanning in degree order means each candidate is only tested
    against already-kept generators.
    """
    candidates = sorted(set(gens), key=Monomial.sort_key)
    kept: list[Monomial] = []
    for cand in candidates:
        c = cand.exps
        divisible = False
        for g in kept:
            if g.degree >= cand.degree:
                # equal-degree distinct monomials never divide each other
                break
            if all(a <= b for a, b in zip(g.exps, c)):
                divisible = True
                break
        if not divisible:
            kept.append(cand)
    return MonomialIdeal(registry, tuple(kept))


# ---------------------------------------------------------------------------
# edge ideals
# ---------------------------------------------------------------------------


def registry_for(graph: WeightedOrientedGraph) -> VariableRegistry:
    return VariableRegistry(graph.vertex_ids)


def edge_ideal(
    graph: WeightedOrientedGraph,
    registry: Optional[VariableRegistry] = None,
) -> MonomialIdeal:
    """Ideal generated by head * tail^weight(tail) over the directed edges.

    Passing an explicit registry embeds the ideal of a subgraph into the
    ring of a larger graph, which is how ideals of induced subgraphs are
    compared against ideals of the ambient graph.
    """
    if registry is None:
        registry = registry_for(graph)
    gens = []
    for head, tail in graph.edges:
        gens.append(
            monomial_from_map(registry, {head: 1, tail: graph.weight(tail)})
        )
    return minimalize(registry, gens)


# ---------------------------------------------------------------------------
# polarization
# ---------------------------------------------------------------------------


def polarized_registry(ideal: MonomialIdeal) -> VariableRegistry:
    """Registry with max-exponent many copies of each original variable."""
    maxexp = [0] * len(ideal.registry)
    for g in ideal.gens:
        for i, e in enumerate(g.exps):
            if e > maxexp[i]:
                maxexp[i] = e
    names: list[str] = []
    origin: dict[str, tuple[str, int]] = {}
    for i, base in enumerate(ideal.registry.names):
        for copy in range(1, maxexp[i] + 1):
            name = f"{base}_{copy}"
            names.append(name)
            origin[name] = (base, copy)
    return VariableRegistry(names, origin)


def polarize(
    ideal: MonomialIdeal, registry: Optional[VariableRegistry] = None
) -> MonomialIdeal:
    """Squarefree polarization: x^e expands to the first e copies of x.

    With the default registry the result lives in exactly the copies the
    ideal needs; a caller may pass the polarized registry of a larger ideal
    to polarize a subideal into the same ring.
    """
    if registry is None:
        registry = polarized_registry(ideal)
    gens = []
    for g in ideal.gens:
        exps: dict[str, int] = {}
        for i, e in enumerate(g.exps):
            base = ideal.registry.names[i]
            for copy in range(1, e + 1):
                exps[f"{base}_{copy}"] = 1
        gens.append(monomial_from_map(registry, exps))
    return minimalize(registry, gens)


# ---------------------------------------------------------------------------
# text round-trip
# ---------------------------------------------------------------------------

_FACTOR_RE = re.compile(r"^([^\^\*\s]+)(?:\^(\d+))?$")


def parse_monomial(registry: VariableRegistry, text: str) -> Monomial:
    text = text.strip()
    if text == "1":
        return Monomial((0,) * len(registry))
    exps: dict[str, int] = {}
    for factor in text.split("*"):
        match = _FACTOR_RE.match(factor.strip())
        if match is None:
            raise ValueError(f"malformed monomial factor {factor!r}")
        name, power = match.group(1), match.group(2)
        if name not in registry.names:
            raise ValueError(f"unknown variable {name!r}")
        exps[name] = exps.get(name, 0) + (int(power) if power else 1)
    return monomial_from_map(registry, exps)


def parse_ideal(registry: VariableRegistry, text: str) -> MonomialIdeal:
    text = text.strip()
    if not text:
        return zero_ideal(registry)
    gens = [parse_monomial(registry, part) for part in text.split(",")]
    return minimalize(registry, gens)
