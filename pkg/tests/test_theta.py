import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from forestreg.digraph import (
    HypothesisError,
    check_cm_hypothesis,
    induced_subgraph,
    parse_digraph,
)
from forestreg.theta import (
    FamilyEnumerationCapError,
    conflict_graph,
    corollary_bound,
    enumerate_families,
    matched_context,
    theta,
    theta_piecewise,
    theta_recursion_check,
    theta_symmetric,
    theta_tree_dp,
    upper_envelope,
)
from forestreg.verify import ForestGenSpec, random_cm_forest


def matching_of(graph):
    return check_cm_hypothesis(graph).matching


class TestConflictGraph:
    def test_bundled_twelve(self, forest12):
        edges = conflict_graph(forest12, matching_of(forest12))
        assert set(edges) == {(0, 1), (1, 2), (1, 3), (1, 4), (2, 5)}

    def test_bundled_ten(self, forest10):
        edges = conflict_graph(forest10, matching_of(forest10))
        assert set(edges) == {(0, 1), (1, 2), (1, 3), (3, 4)}

    def test_disjoint_edges(self):
        g = parse_digraph("a:1;b:2;c:1;d:3; a->b; c->d")
        assert conflict_graph(g, matching_of(g)) == ()

    def test_adjacency_reduces_to_internal_edges(self):
        # matched edges touch iff their internal vertices are joined
        for seed in range(30):
            g = random_cm_forest(ForestGenSpec(pairs=5, seed=seed))
            matching = matching_of(g)
            underlying = set(g.underlying_edges())
            edges = set(conflict_graph(g, matching))
            for i in range(len(matching)):
                for j in range(i + 1, len(matching)):
                    xi = matching.pairs[i][0]
                    xj = matching.pairs[j][0]
                    internal = tuple(sorted((xi, xj))) in underlying
                    assert ((i, j) in edges) == internal


class TestFamilies:
    def test_single_edge(self, edge_w4):
        families = enumerate_families(edge_w4)
        assert [f.indices for f in families] == [(0,)]
        assert families[0].weights == (4,)

    def test_bundled_ten_contains_maximal_families(self, forest10):
        families = {f.indices for f in enumerate_families(forest10)}
        assert (0, 2, 3) in families
        assert (0, 2, 4) in families
        assert (1, 4) in families

    def test_two_adjacent_edges(self):
        g = parse_digraph("x1:1;x2:1;y1:2;y2:3; x1->x2; x1->y1; x2->y2")
        families = enumerate_families(g)
        assert [f.indices for f in families] == [(0,), (1,)]

    def test_deterministic_lexicographic_order(self, forest10):
        families = [f.indices for f in enumerate_families(forest10)]
        assert families == sorted(families)

    def test_cap_exceeded(self):
        g = random_cm_forest(
            ForestGenSpec(pairs=25, seed=1, internal_edge_density=1.0)
        )
        with pytest.raises(FamilyEnumerationCapError):
            enumerate_families(g)
        # the dp engine still evaluates
        assert theta_tree_dp(1, g) >= 2


class TestTheta:
    def test_bundled_twelve_value(self, forest12):
        assert theta(1, forest12) == 25

    def test_single_edge_closed_form(self):
        for w in (1, 2, 4, 9):
            g = parse_digraph(f"x:1; y:{w}; x->y")
            for k in range(1, 6):
                assert theta(k, g) == k * (w + 1)

    def test_k_zero(self, forest12, forest10, edge_w4):
        for g in (forest12, forest10, edge_w4):
            assert theta(0, g) == 0

    def test_bundled_ten_values(self, forest10):
        assert theta(1, forest10) == 10
        assert theta(2, forest10) == 14
        assert [theta(k, forest10) for k in (3, 4, 5)] == [18, 22, 27]

    def test_rejected_graph_raises(self, nonsink10):
        with pytest.raises(HypothesisError):
            theta(1, nonsink10)

    def test_negative_k_rejected(self, edge_w4):
        with pytest.raises(ValueError):
            theta(-1, edge_w4)


class TestSymmetric:
    def test_agrees_on_bundled(self, forest10, forest12):
        for k in range(1, 11):
            assert theta_symmetric(k, forest10) == theta(k, forest10)
        assert theta_symmetric(1, forest12) == 25

    def test_single_edge(self):
        g = parse_digraph("x:1; y:4; x->y")
        assert theta_symmetric(2, g) == 10


class TestTreeDp:
    def test_agrees_on_bundled(self, forest12, forest10):
        assert theta_tree_dp(1, forest12) == 25
        for k in range(1, 8):
            assert theta_tree_dp(k, forest10) == theta(k, forest10)

    def test_single_edge(self):
        g = parse_digraph("x:1; y:4; x->y")
        for k in range(1, 5):
            assert theta_tree_dp(k, g) == 5 * k

    def test_random_forest_agreement(self):
        for seed in range(120):
            g = random_cm_forest(
                ForestGenSpec(
                    pairs=(seed % 12) + 1,
                    max_weight=4,
                    seed=seed,
                    internal_edge_density=(seed % 3) * 0.45,
                )
            )
            for k in (1, 2, 5):
                expected = theta(k, g)
                assert theta_tree_dp(k, g) == expected
                assert theta_symmetric(k, g) == expected


class TestPiecewise:
    def test_bundled_ten(self, forest10):
        pw = theta_piecewise(forest10)
        assert pw.lines == ((4, 10), (5, 7))
        assert pw.breakpoints == (4,)
        assert pw.value(4) == 22
        assert pw.regimes() == [(4, 10, 1, 4), (5, 7, 4, None)]
        for k in range(1, 12):
            assert pw.value(k) == theta(k, forest10)

    def test_single_edge(self):
        g = parse_digraph("x:1; y:3; x->y")
        pw = theta_piecewise(g)
        assert pw.lines == ((4, 4),)
        assert pw.breakpoints == ()

    def test_bundled_twelve_value(self, forest12):
        assert theta_piecewise(forest12).value(1) == 25

    def test_envelope_prunes_dominated(self):
        pw = upper_envelope([(4, 10), (4, 9), (5, 7), (2, 3)])
        assert pw.lines == ((4, 10), (5, 7))

    def test_envelope_middle_line_never_leads(self):
        # at k=2 all three tie at 11, so the middle line is redundant
        pw = upper_envelope([(1, 10), (2, 9), (3, 8)])
        assert pw.lines == ((1, 10), (3, 8))
        assert pw.breakpoints == (2,)

    def test_json_shape(self, forest10):
        payload = theta_piecewise(forest10).to_json()
        assert payload == {"lines": [[4, 10], [5, 7]], "breakpoints": [4]}


class TestCorollaryBound:
    def test_bundled_ten(self, forest10):
        assert corollary_bound(3, forest10) == 2 * 5 + 10 == 20
        assert theta(3, forest10) == 18 <= 20

    def test_k_one_is_theta(self, forest12, forest10):
        for g in (forest12, forest10):
            assert corollary_bound(1, g) == theta(1, g)

    def test_single_edge_equality(self):
        g = parse_digraph("x:1; y:4; x->y")
        for k in range(1, 6):
            assert corollary_bound(k, g) == theta(k, g)

    def test_always_an_upper_bound(self):
        for seed in range(40):
            g = random_cm_forest(ForestGenSpec(pairs=5, max_weight=5, seed=seed))
            for k in (1, 2, 4):
                assert theta(k, g) <= corollary_bound(k, g)


class TestRecursion:
    def test_bundled_ten_all_k(self, forest10):
        for k in range(1, 6):
            assert theta_recursion_check(forest10, 0, k)

    def test_bundled_twelve_pendant_pair(self, forest12):
        # pair 5 is (x6, y6); its internal vertex has the single neighbor x3
        ctx = matched_context(forest12)
        assert ctx.matching.pairs[5] == ("x6", "y6")
        assert theta_recursion_check(forest12, 5, 2)

    def test_non_pendant_pair_rejected(self, forest12):
        # x2 has four internal neighbors plus its leaf
        with pytest.raises(HypothesisError):
            theta_recursion_check(forest12, 1, 1)

    def test_random_instances(self):
        checked = 0
        for seed in range(60):
            g = random_cm_forest(ForestGenSpec(pairs=4, seed=seed))
            ctx = matched_context(g)
            for t in range(ctx.size):
                x = ctx.matching.pairs[t][0]
                if len(ctx.graph.neighbors(x)) != 2:
                    continue
                for k in (1, 2, 3):
                    assert theta_recursion_check(g, t, k)
                checked += 1
        assert checked > 20


class TestGrowthInvariants:
    def test_increments_at_least_two(self):
        for seed in range(30):
            g = random_cm_forest(ForestGenSpec(pairs=5, max_weight=4, seed=seed))
            values = [theta(k, g) for k in range(8)]
            for a, b in zip(values, values[1:]):
                if a:
                    assert b - a >= 2

    def test_increment_dominates_pendant_weights(self):
        for seed in range(30):
            g = random_cm_forest(ForestGenSpec(pairs=5, max_weight=4, seed=seed))
            ctx = matched_context(g)
            for t in range(ctx.size):
                x = ctx.matching.pairs[t][0]
                if len(ctx.graph.neighbors(x)) != 2:
                    continue
                w = ctx.weights[t]
                for k in (1, 2, 3):
                    assert theta(k, g) - theta(k - 1, g) >= w + 1

    def test_deleting_matched_pair_never_increases(self):
        for seed in range(30):
            g = random_cm_forest(ForestGenSpec(pairs=4, seed=seed))
            ctx = matched_context(g)
            for x, y in ctx.matching.pairs:
                sub = induced_subgraph(g, {x, y})
                for k in (1, 2, 4):
                    assert theta(k, sub) <= theta(k, g)

    def test_disjoint_union_splits_across_components(self):
        # theta of a union is the best combination of per-component families
        for seed in range(20):
            g1 = random_cm_forest(ForestGenSpec(pairs=3, seed=seed))
            g2 = random_cm_forest(ForestGenSpec(pairs=2, seed=seed + 500))
            union = parse_digraph(
                "\n".join(
                    [f"a_{v}:{w}" for v, w in g1.vertices]
                    + [f"b_{v}:{w}" for v, w in g2.vertices]
                    + [f"a_{h}->a_{t}" for h, t in g1.edges]
                    + [f"b_{h}->b_{t}" for h, t in g2.edges]
                )
            )
            for k in (1, 2, 3):
                combined = set()
                for f1 in enumerate_families(g1):
                    combined.add((max(f1.weights), sum(f1.weights)))
                for f2 in enumerate_families(g2):
                    combined.add((max(f2.weights), sum(f2.weights)))
                for f1 in enumerate_families(g1):
                    for f2 in enumerate_families(g2):
                        combined.add(
                            (
                                max(f1.weights + f2.weights),
                                sum(f1.weights + f2.weights),
                            )
                        )
                expected = max(
                    (mx + 1) * (k - 1) + total + 1 for mx, total in combined
                )
                assert theta(k, union) == expected

    def test_union_matches_component_sum_and_oracle(self):
        from forestreg.monomial import edge_ideal
        from forestreg.resolution import regularity

        for seed in range(6):
            g1 = random_cm_forest(ForestGenSpec(pairs=2, seed=seed))
            g2 = random_cm_forest(ForestGenSpec(pairs=2, seed=seed + 90))
            union = parse_digraph(
                "\n".join(
                    [f"a_{v}:{w}" for v, w in g1.vertices]
                    + [f"b_{v}:{w}" for v, w in g2.vertices]
                    + [f"a_{h}->a_{t}" for h, t in g1.edges]
                    + [f"b_{h}->b_{t}" for h, t in g2.edges]
                )
            )
            expected = theta(1, g1) + theta(1, g2) - 1
            assert theta(1, union) == expected
            assert regularity(edge_ideal(union)) == expected

    def test_envelope_slope_bounded_by_max_weight(self):
        for seed in range(30):
            g = random_cm_forest(ForestGenSpec(pairs=5, max_weight=6, seed=seed))
            pw = theta_piecewise(g)
            w = max(weight for _, weight in g.vertices)
            assert max(slope for slope, _ in pw.lines) <= w + 1


@given(
    pairs=st.integers(min_value=1, max_value=9),
    seed=st.integers(min_value=0, max_value=100_000),
    k=st.integers(min_value=1, max_value=6),
    density=st.sampled_from([0.0, 0.5, 1.0]),
)
@settings(max_examples=80, deadline=None)
def test_three_engines_and_envelope_agree(pairs, seed, k, density):
    g = random_cm_forest(
        ForestGenSpec(
            pairs=pairs, max_weight=5, seed=seed, internal_edge_density=density
        )
    )
    reference = theta(k, g)
    assert theta_symmetric(k, g) == reference
    assert theta_tree_dp(k, g) == reference
    assert theta_piecewise(g).value(k) == reference
