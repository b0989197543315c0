"""Betti tables and regularity of monomial ideals, from scratch.

The graded Betti numbers are computed one multidegree at a time: every
multidegree carrying a nonzero Betti number is the lcm of a subset of the
minimal generators, and at such a multidegree the Betti number is a reduced
homology rank of the squarefree complex whose faces b satisfy
x^(a-b) in I.  Homology ranks use exact integer elimination; a second,
structurally different route through the multigraded strands of the full
generator-subset resolution is provided as a cross-check oracle.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterable, Optional

from .digraph import WeightedOrientedGraph
from .monomial import Monomial, MonomialIdeal, edge_ideal

DEFAULT_SUPPORT_CAP = 22
DEFAULT_LATTICE_CAP = 100_000


class OracleInfeasibleError(RuntimeError):
    """Instance exceeds a configured cap; carries the offending size."""

    def __init__(self, message: str, support_size: Optional[int] = None):
        super().__init__(message)
        self.support_size = support_size


# ---------------------------------------------------------------------------
# exact rank of sparse integer matrices
# ---------------------------------------------------------------------------


def exact_rank(columns: list[dict[int, int]], prime: Optional[int] = None) -> int:
    """Rank of a sparse integer matrix given as columns {row: value}.

    Over the rationals, elimination pivots only on +-1 entries, which keeps
    every intermediate entry an exact integer; any remaining block without a
    unit entry is finished by fraction-free (Bareiss) elimination.  With a
    prime, all arithmetic is mod p and any nonzero pivot works.
    """
    cols: dict[int, dict[int, int]] = {}
    for j, col in enumerate(columns):
        if prime is None:
            c = {r: v for r, v in col.items() if v}
        else:
            c = {r: v % prime for r, v in col.items() if v % prime}
        if c:
            cols[j] = c
    rows: dict[int, set[int]] = defaultdict(set)
    for j, c in cols.items():
        for r in c:
            rows[r].add(j)
    rank = 0
    queue = sorted(cols, key=lambda j: (len(cols[j]), j))
    while queue:
        stalled: list[int] = []
        progress = False
        for pcol in queue:
            col = cols.get(pcol)
            if not col:
                cols.pop(pcol, None)
                continue
            pivot = _column_pivot(col, rows, prime)
            if pivot is None:
                stalled.append(pcol)
                continue
            progress = True
            rank += 1
            prow = pivot
            pval = col[prow]
            pivot_col = cols.pop(pcol)
            for r in pivot_col:
                rows[r].discard(pcol)
            inv = pval if prime is None else pow(pval, -1, prime)
            for j in tuple(rows[prow]):
                other = cols[j]
                factor = other[prow] * inv
                if prime is not None:
                    factor %= prime
                for r, v in pivot_col.items():
                    new = other.get(r, 0) - factor * v
                    if prime is not None:
                        new %= prime
                    if new:
                        other[r] = new
                        rows[r].add(j)
                    elif r in other:
                        del other[r]
                        rows[r].discard(j)
                if not other:
                    del cols[j]
            del rows[prow]
        if not stalled:
            break
        if not progress:
            rank += _bareiss_rank({j: cols[j] for j in stalled if j in cols})
            break
        queue = stalled
    return rank


def _column_pivot(
    col: dict[int, int], rows: dict[int, set[int]], prime: Optional[int]
) -> Optional[int]:
    """Pivot row for this column: a unit entry over Q (any entry mod p),
    preferring rows met by few other columns."""
    best = None
    for r, v in col.items():
        if prime is None and v not in (1, -1):
            continue
        cost = (len(rows[r]), r)
        if best is None or cost < best[0]:
            best = (cost, r)
    return None if best is None else best[1]


def _bareiss_rank(cols: dict[int, dict[int, int]]) -> int:
    """Fraction-free rank of the (small, unit-free) leftover block."""
    row_ids = sorted({r for c in cols.values() for r in c})
    row_pos = {r: i for i, r in enumerate(row_ids)}
    matrix = [[0] * len(cols) for _ in row_ids]
    for jj, (_, col) in enumerate(sorted(cols.items())):
        for r, v in col.items():
            matrix[row_pos[r]][jj] = v
    n_rows, n_cols = len(matrix), len(cols)
    rank = 0
    prev = 1
    for col in range(n_cols):
        pivot_row = next(
            (i for i in range(rank, n_rows) if matrix[i][col]), None
        )
        if pivot_row is None:
            continue
        matrix[rank], matrix[pivot_row] = matrix[pivot_row], matrix[rank]
        pivot = matrix[rank][col]
        for i in range(rank + 1, n_rows):
            row_i, row_k = matrix[i], matrix[rank]
            factor = row_i[col]
            for jj in range(col, n_cols):
                row_i[jj] = (row_i[jj] * pivot - factor * row_k[jj]) // prev
        prev = pivot
        rank += 1
        if rank == n_rows:
            break
    return rank


# ---------------------------------------------------------------------------
# lcm lattice and the squarefree complexes attached to its multidegrees
# ---------------------------------------------------------------------------


def lcm_lattice(
    ideal: MonomialIdeal, max_size: int = DEFAULT_LATTICE_CAP
) -> list[Monomial]:
    """All lcms of nonempty generator subsets, by iterated join closure.

    Generators are absorbed one at a time: after absorbing g, the set holds
    every join of a nonempty subset of the generators so far, so the total
    work is one join per (lattice element, generator) pair instead of a
    quadratic fixpoint sweep.
    """
    if ideal.is_zero():
        raise ValueError("the zero ideal has no lcm lattice")
    lattice: set[tuple[int, ...]] = set()
    for gen in ideal.gens:
        g = gen.exps
        joined = {tuple(map(max, element, g)) for element in lattice}
        lattice.add(g)
        lattice |= joined
        if len(lattice) > max_size:
            raise OracleInfeasibleError(
                f"lcm lattice exceeds {max_size} elements"
            )
    return sorted((Monomial(t) for t in lattice), key=Monomial.sort_key)


class UpperKoszulComplex:
    """Simplicial complex on supp(a) with faces b such that x^(a-b) in I."""

    __slots__ = ("ideal", "multidegree", "vertices", "_covers")

    def __init__(
        self,
        ideal: MonomialIdeal,
        multidegree: Monomial,
        cap: int = DEFAULT_SUPPORT_CAP,
    ):
        support = multidegree.support
        if len(support) > cap:
            raise OracleInfeasibleError(
                f"multidegree support has {len(support)} variables, "
                f"cap is {cap}",
                support_size=len(support),
            )
        self.ideal = ideal
        self.multidegree = multidegree
        self.vertices = support
        a = multidegree.exps
        covers = set()
        for g in ideal.gens:
            if g.divides(multidegree):
                mask = 0
                for pos, var in enumerate(support):
                    if g.exps[var] < a[var]:
                        mask |= 1 << pos
                covers.add(mask)
        # the faces are exactly the subsets of these masks, so only
        # inclusion-maximal masks matter
        maximal = [
            c
            for c in covers
            if not any(c != d and c & ~d == 0 for d in covers)
        ]
        self._covers = tuple(sorted(maximal, reverse=True))

    def is_face(self, b: Iterable[int]) -> bool:
        """Face predicate by divisibility: x^(a-b) lies in the ideal."""
        b = set(b)
        unknown = b - set(self.vertices)
        if unknown:
            raise ValueError(f"vertex {sorted(unknown)[0]} not in the support")
        residual = Monomial(
            e - (1 if i in b else 0)
            for i, e in enumerate(self.multidegree.exps)
        )
        return self.ideal.contains(residual)

    def face_masks(self) -> list[int]:
        """All faces as bitmasks over positions in ``vertices``."""
        faces: set[int] = set()
        for cover in self._covers:
            if cover in faces:
                continue
            # iterate all submasks of the cover
            sub = cover
            while True:
                faces.add(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & cover
        return sorted(faces)

    @property
    def cover_masks(self) -> tuple[int, ...]:
        """Maximal vertex sets whose full simplices union to the complex."""
        return self._covers

    def is_dominated_cone(self) -> bool:
        """True when one cover contains every other, i.e. the complex is a
        full simplex: contractible unless it is just the empty face."""
        return len(self._covers) == 1

    def signature(self) -> tuple:
        """Canonical key: complexes with equal signatures are identical."""
        return (len(self.vertices), self._covers)


def koszul_complex(
    ideal: MonomialIdeal,
    multidegree: Monomial,
    cap: int = DEFAULT_SUPPORT_CAP,
) -> UpperKoszulComplex:
    """The squarefree complex at a multidegree; errors above the support cap."""
    return UpperKoszulComplex(ideal, multidegree, cap=cap)


_HOMOLOGY_CACHE: dict[tuple, dict[int, int]] = {}
_HOMOLOGY_CACHE_LIMIT = 60_000


def clear_homology_cache() -> None:
    _HOMOLOGY_CACHE.clear()


def reduced_homology_ranks(
    complex_view: UpperKoszulComplex, prime: Optional[int] = None
) -> dict[int, int]:
    """Nonzero reduced homology ranks by dimension (including -1).

    Computed from the ranks of the boundary matrices of the augmented chain
    complex over the rationals, or over GF(prime) when a prime is given.
    """
    if complex_view.is_dominated_cone():
        # a single maximal cover means the complex is a full simplex, whose
        # reduced homology vanishes except for the bare empty face
        only = complex_view.cover_masks[0]
        return {-1: 1} if only == 0 else {}
    key = (prime, complex_view.signature())
    cached = _HOMOLOGY_CACHE.get(key)
    if cached is not None:
        return dict(cached)
    ranks = _homology_from_masks(complex_view.face_masks(), prime)
    if len(_HOMOLOGY_CACHE) >= _HOMOLOGY_CACHE_LIMIT:
        _HOMOLOGY_CACHE.clear()
    _HOMOLOGY_CACHE[key] = dict(ranks)
    return ranks


def _homology_from_masks(
    faces: list[int], prime: Optional[int]
) -> dict[int, int]:
    if not faces:
        return {}
    by_dim: dict[int, list[int]] = defaultdict(list)
    for mask in faces:
        by_dim[bin(mask).count("1") - 1].append(mask)
    top = max(by_dim)
    for d in by_dim:
        by_dim[d].sort()
    index_of = {
        d: {mask: i for i, mask in enumerate(masks)}
        for d, masks in by_dim.items()
    }
    boundary_rank: dict[int, int] = {}
    for d in range(0, top + 1):
        cols = []
        lower = index_of.get(d - 1, {})
        for mask in by_dim[d]:
            col: dict[int, int] = {}
            sign = 1
            m = mask
            while m:
                low = m & -m
                face = mask & ~low
                row = lower.get(face)
                if row is not None:
                    col[row] = sign
                sign = -sign
                m &= m - 1
            cols.append(col)
        boundary_rank[d] = exact_rank(cols, prime)
    ranks: dict[int, int] = {}
    for d in range(-1, top + 1):
        n_d = len(by_dim.get(d, ()))
        h = n_d - boundary_rank.get(d, 0) - boundary_rank.get(d + 1, 0)
        if h:
            ranks[d] = h
    return ranks


# ---------------------------------------------------------------------------
# Betti tables
# ---------------------------------------------------------------------------


@dataclass
class BettiTable:
    """Graded Betti numbers of an ideal: (homological index, total degree) -> rank."""

    entries: dict[tuple[int, int], int]
    field: str = "Q"
    prime_mismatches: tuple[str, ...] = ()

    def regularity(self) -> int:
        if not self.entries:
            raise ValueError("empty Betti table")
        return max(j - i for i, j in self.entries)

    def projective_dimension(self) -> int:
        return max(i for i, _ in self.entries)

    def rank(self, i: int, j: int) -> int:
        return self.entries.get((i, j), 0)

    def to_json(self) -> dict:
        return {
            "entries": [
                {"i": i, "j": j, "rank": rank}
                for (i, j), rank in sorted(self.entries.items())
            ],
            "field": self.field,
        }

    def render(self) -> str:
        lines = ["  i   j   rank"]
        for (i, j), rank in sorted(self.entries.items()):
            lines.append(f"{i:3d} {j:3d} {rank:6d}")
        return "\n".join(lines)


def betti_table(
    ideal: MonomialIdeal,
    cap: int = DEFAULT_SUPPORT_CAP,
    prime: Optional[int] = None,
    lattice_cap: int = DEFAULT_LATTICE_CAP,
) -> BettiTable:
    """Full Betti table via homology at every lattice multidegree."""
    if ideal.is_zero():
        raise ValueError("the zero ideal has no Betti table")
    entries: Counter = Counter()
    mismatches: list[str] = []
    for a in lcm_lattice(ideal, max_size=lattice_cap):
        complex_view = UpperKoszulComplex(ideal, a, cap=cap)
        ranks = reduced_homology_ranks(complex_view)
        if prime is not None:
            ranks_p = reduced_homology_ranks(complex_view, prime)
            if ranks_p != ranks:
                mismatches.append(
                    f"multidegree {a.render(ideal.registry)}: "
                    f"Q ranks {ranks} vs GF({prime}) ranks {ranks_p}"
                )
        for d, rank in ranks.items():
            entries[(d + 1, a.degree)] += rank
    return BettiTable(
        entries=dict(entries),
        field="Q" if prime is None else f"Q,GF({prime})",
        prime_mismatches=tuple(mismatches),
    )


def betti_table_via_taylor(
    ideal: MonomialIdeal, max_generators: int = 16
) -> BettiTable:
    """Cross-check oracle: homology of the multigraded strands of the full
    generator-subset resolution (one basis element per nonempty subset)."""
    if ideal.is_zero():
        raise ValueError("the zero ideal has no Betti table")
    gens = ideal.gens
    m = len(gens)
    if m > max_generators:
        raise OracleInfeasibleError(
            f"{m} generators exceeds the subset-resolution cap "
            f"({max_generators})"
        )
    lcm_of: dict[int, Monomial] = {}
    for mask in range(1, 1 << m):
        low = mask & (mask - 1)
        g = gens[(mask & -mask).bit_length() - 1]
        lcm_of[mask] = g if low == 0 else lcm_of[low].lcm(g)
    strands: dict[Monomial, list[int]] = defaultdict(list)
    for mask, value in lcm_of.items():
        strands[value].append(mask)
    entries: Counter = Counter()
    for a, masks in strands.items():
        by_size: dict[int, list[int]] = defaultdict(list)
        for mask in masks:
            by_size[bin(mask).count("1")].append(mask)
        for size in by_size:
            by_size[size].sort()
        index_of = {
            size: {mask: i for i, mask in enumerate(ms)}
            for size, ms in by_size.items()
        }
        top = max(by_size)
        boundary_rank: dict[int, int] = {}
        for size in range(2, top + 1):
            lower = index_of.get(size - 1, {})
            cols = []
            for mask in by_size.get(size, ()):
                col: dict[int, int] = {}
                sign = 1
                rest = mask
                while rest:
                    low = rest & -rest
                    sub = mask & ~low
                    row = lower.get(sub)
                    if row is not None:  # absent means the lcm dropped
                        col[row] = sign
                    sign = -sign
                    rest &= rest - 1
                cols.append(col)
            boundary_rank[size] = exact_rank(cols)
        for size in range(1, top + 1):
            n = len(by_size.get(size, ()))
            h = n - boundary_rank.get(size, 0) - boundary_rank.get(size + 1, 0)
            if h:
                entries[(size - 1, a.degree)] += h
    return BettiTable(entries=dict(entries), field="Q")


# ---------------------------------------------------------------------------
# regularity
# ---------------------------------------------------------------------------


def regularity(
    ideal: MonomialIdeal,
    cap: int = DEFAULT_SUPPORT_CAP,
    lattice_cap: int = DEFAULT_LATTICE_CAP,
) -> int:
    """max(j - i) over the nonzero Betti numbers of the ideal.

    Undefined (ValueError) for the zero ideal; 0 for the unit ideal by the
    convention that a free module is resolved by itself.
    """
    return betti_table(ideal, cap=cap, lattice_cap=lattice_cap).regularity()


def regularity_quotient(ideal: MonomialIdeal) -> int:
    """reg of the quotient ring by the ideal; informational shift by one."""
    return regularity(ideal) - 1


def regularity_power(
    graph: WeightedOrientedGraph,
    k: int,
    cap: int = DEFAULT_SUPPORT_CAP,
    lattice_cap: int = DEFAULT_LATTICE_CAP,
) -> int:
    """Oracle value of reg(I(D)^k)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    ideal = edge_ideal(graph) ** k
    return regularity(ideal, cap=cap, lattice_cap=lattice_cap)
