import numpy as np
import pytest

from qemc.core import (
    EncodingConfig,
    OptimizerConfig,
    cost,
    cost_gradient_params,
    cost_gradient_wrt_probs,
    cut_ratio,
    decode,
    default_shots,
    rescaled_ratio,
    scan_blue_sizes,
    train,
)
from qemc.errors import (
    DegenerateDenominator,
    HistogramTooShort,
    InvalidBlueCount,
    ShapeMismatch,
)
from qemc.graphs import Graph, complete_bipartite_graph, cut_value
from qemc.simulator import (
    PARAMETER_SHIFT,
    AnsatzConfig,
    ProbabilityHistogram,
    probabilities,
    random_parameters,
)


def hist(values, shots=None):
    return ProbabilityHistogram(np.asarray(values, dtype=float), shots=shots)


class TestEncodingConfig:
    def test_threshold(self):
        assert EncodingConfig(2, 4).threshold == 0.25
        assert EncodingConfig(4, 8).threshold == 0.125

    def test_blue_count_range(self):
        with pytest.raises(InvalidBlueCount):
            EncodingConfig(0, 4)
        with pytest.raises(InvalidBlueCount):
            EncodingConfig(3, 4)  # the smaller set is designated blue

    def test_half(self):
        assert EncodingConfig.half(9).blue_count == 4


class TestDecode:
    def test_two_high_entries(self):
        part = decode(hist([0.5, 0.5, 0.0, 0.0]), EncodingConfig(2, 4))
        assert part.blue_nodes() == [0, 1]

    def test_uniform_boundary_is_white(self):
        # p(k) equal to the threshold decodes white, not blue.
        part = decode(hist([0.25, 0.25, 0.25, 0.25]), EncodingConfig(2, 4))
        assert part.blue_count == 0

    def test_padding_ignored(self):
        part = decode(hist([0.6, 0.2, 0.1, 0.1]), EncodingConfig(1, 3))
        assert part.num_nodes == 3
        assert part.blue_nodes() == [0]

    def test_padding_values_irrelevant(self):
        enc = EncodingConfig(1, 3)
        a = decode(hist([0.3, 0.2, 0.1, 0.4]), enc)
        b = decode(hist([0.3, 0.2, 0.4, 0.1]), enc)
        assert a == b

    def test_too_short(self):
        with pytest.raises(HistogramTooShort):
            decode(hist([0.5, 0.5]), EncodingConfig(2, 4))

    def test_blue_set_grows_with_blue_count(self):
        # Larger B means a smaller threshold, hence a superset of blue nodes.
        rng = np.random.default_rng(0)
        for _ in range(100):
            p = rng.dirichlet(np.ones(8))
            previous = set()
            for blue_count in range(1, 5):
                current = set(decode(hist(p), EncodingConfig(blue_count, 8)).blue_nodes())
                assert previous <= current
                previous = current


class TestCost:
    def test_ideal_edge_term_is_zero(self):
        # One endpoint at 0, the other at 1/B: both summands vanish.
        g = Graph.from_edges(4, [(0, 1)])
        enc = EncodingConfig(2, 4)
        assert cost(hist([0.0, 0.5, 0.25, 0.25]), g, enc) == pytest.approx(0.0)

    def test_both_zero_edge(self):
        g = Graph.from_edges(4, [(0, 1)])
        enc = EncodingConfig(2, 4)
        # d = 0, s = 0, 1/B = 0.5 -> (0-.5)^2 + (0-.5)^2
        assert cost(hist([0.0, 0.0, 0.5, 0.5]), g, enc) == pytest.approx(0.5)

    def test_k4_uniform(self, k4):
        value = cost(hist([0.25] * 4), k4, EncodingConfig(2, 4))
        assert value == pytest.approx(6 * 0.25)

    def test_non_negative(self, k4):
        rng = np.random.default_rng(1)
        enc = EncodingConfig(2, 4)
        for _ in range(200):
            assert cost(hist(rng.dirichlet(np.ones(4))), k4, enc) >= 0.0

    def test_weighted_edges_scale_terms(self):
        g = Graph.from_edges(4, [(0, 1, 3.0)])
        enc = EncodingConfig(2, 4)
        assert cost(hist([0.0, 0.0, 0.5, 0.5]), g, enc) == pytest.approx(1.5)

    def test_zero_cost_implies_full_cut(self, k33):
        ideal = hist([1 / 3, 1 / 3, 1 / 3, 0, 0, 0, 0, 0])
        enc = EncodingConfig(3, 6)
        assert cost(ideal, k33, enc) == pytest.approx(0.0, abs=1e-12)
        part = decode(ideal, enc)
        assert cut_value(k33, part) == k33.total_weight


class TestCostGradient:
    def test_uniform_histogram_formula(self, k4):
        # With equal probabilities the difference terms vanish (sign(0) = 0).
        enc = EncodingConfig(2, 4)
        grad = cost_gradient_wrt_probs(hist([0.25] * 4), k4, enc)
        expected = 3 * 2 * (0.5 - 0.5)  # degree * 2 * (s - 1/B) = 0 here
        assert np.allclose(grad, expected)
        enc1 = EncodingConfig(1, 4)
        grad = cost_gradient_wrt_probs(hist([0.25] * 4), k4, enc1)
        assert np.allclose(grad, 3 * 2 * (0.5 - 1.0))

    def test_zero_at_minimum(self):
        g = Graph.from_edges(4, [(0, 1)])
        grad = cost_gradient_wrt_probs(hist([0.0, 0.5, 0.25, 0.25]), g,
                                       EncodingConfig(2, 4))
        assert np.allclose(grad, 0.0)

    def test_padded_entries_zero(self):
        g = Graph.from_edges(3, [(0, 1), (1, 2)])
        grad = cost_gradient_wrt_probs(hist([0.4, 0.3, 0.2, 0.1]), g,
                                       EncodingConfig(1, 3))
        assert grad.size == 4
        assert grad[3] == 0.0

    def test_matches_finite_differences(self, k4):
        rng = np.random.default_rng(2)
        enc = EncodingConfig(2, 4)
        h = 1e-7
        for _ in range(50):
            p = rng.dirichlet(np.ones(4))
            if np.min(np.abs(p[k4.edge_u] - p[k4.edge_v])) < 1e-6:
                continue  # keep away from the |.| kink
            grad = cost_gradient_wrt_probs(hist(p), k4, enc)
            for j in range(4):
                up, down = p.copy(), p.copy()
                up[j] += h
                down[j] -= h
                fd = (cost(hist(up), k4, enc) - cost(hist(down), k4, enc)) / (2 * h)
                assert grad[j] == pytest.approx(fd, rel=1e-6, abs=1e-9)

    def test_chain_rule_matches_finite_differences(self, k4):
        config = AnsatzConfig(2, 2)
        enc = EncodingConfig(2, 4)
        params = random_parameters(config, seed=3)
        grad = cost_gradient_params(k4, config, enc, params)
        h = 1e-5
        for i in range(config.num_parameters):
            up, down = params.copy(), params.copy()
            up[i] += h
            down[i] -= h
            fd = (cost(probabilities(config, up), k4, enc)
                  - cost(probabilities(config, down), k4, enc)) / (2 * h)
            assert grad[i] == pytest.approx(fd, rel=1e-4, abs=1e-8)


class TestTrain:
    def test_k4_reaches_optimum(self, k4):
        ansatz = AnsatzConfig(2, 1)
        enc = EncodingConfig(2, 4)
        for seed in range(3):
            record = train(k4, ansatz, enc,
                           OptimizerConfig(step_size=0.99, max_iterations=300,
                                           seed=seed))
            assert record.final_best_cut == 4.0

    def test_zero_iterations(self, k4):
        record = train(k4, AnsatzConfig(2, 1), EncodingConfig(2, 4),
                       OptimizerConfig(step_size=0.5, max_iterations=0))
        assert record.iterations_executed == 0
        assert record.costs.size == 0
        assert record.final_best_cut == 0.0

    def test_deterministic_replay(self, k4):
        cfg = OptimizerConfig(step_size=0.9, max_iterations=40, seed=11)
        a = train(k4, AnsatzConfig(2, 1), EncodingConfig(2, 4), cfg)
        b = train(k4, AnsatzConfig(2, 1), EncodingConfig(2, 4), cfg)
        assert np.array_equal(a.costs, b.costs)
        assert np.array_equal(a.cuts, b.cuts)
        assert np.array_equal(a.final_params, b.final_params)
        assert a.counters == b.counters

    def test_best_so_far_monotone(self, k4):
        record = train(k4, AnsatzConfig(2, 2), EncodingConfig(2, 4),
                       OptimizerConfig(step_size=0.3, max_iterations=60, seed=4))
        assert np.all(np.diff(record.best_cuts) >= 0)
        assert np.all(record.best_cuts >= record.cuts)

    def test_counters_analytic_exact(self, k4):
        record = train(k4, AnsatzConfig(2, 1), EncodingConfig(2, 4),
                       OptimizerConfig(step_size=0.5, max_iterations=25, seed=0))
        assert record.counters.circuit_executions == 25
        assert record.counters.shots_total == 0

    def test_counters_parameter_shift_shots(self, k4):
        record = train(k4, AnsatzConfig(2, 1), EncodingConfig(2, 4),
                       OptimizerConfig(step_size=0.5, max_iterations=4, shots=32,
                                       gradient_mode=PARAMETER_SHIFT, seed=0))
        per_iter = 1 + 2 * 6
        assert record.counters.circuit_executions == 4 * per_iter
        assert record.counters.shots_total == 4 * per_iter * 32

    def test_shot_mode_trains(self, k4):
        record = train(k4, AnsatzConfig(2, 1), EncodingConfig(2, 4),
                       OptimizerConfig(step_size=0.9, max_iterations=60,
                                       shots=default_shots(4),
                                       gradient_mode=PARAMETER_SHIFT, seed=1))
        assert record.final_best_cut == 4.0
        assert record.counters.shots_total > 0

    def test_qubit_count_checked(self, k4):
        with pytest.raises(ShapeMismatch):
            train(k4, AnsatzConfig(3, 1), EncodingConfig(2, 4),
                  OptimizerConfig(step_size=0.5, max_iterations=1))

    def test_json_schema(self, k4):
        record = train(k4, AnsatzConfig(2, 1), EncodingConfig(2, 4),
                       OptimizerConfig(step_size=0.5, max_iterations=3, seed=2))
        payload = record.to_json_dict()
        assert set(payload) == {"config", "seed", "iterations", "final_params",
                                "counters"}
        assert len(payload["iterations"]) == 3
        assert set(payload["iterations"][0]) == {"cost", "cut", "best_cut"}
        assert set(payload["counters"]) == {"circuit_executions", "shots_total",
                                            "gate_applications"}


class TestScanBlueSizes:
    def test_k4_scans_both_sizes_and_picks_two(self, k4):
        # B = 1 cannot decode a balanced split (two probabilities > 1/2 would
        # exceed normalization), so B = 2 wins with cut 4.
        blue, record = scan_blue_sizes(
            k4, AnsatzConfig(2, 1),
            OptimizerConfig(step_size=0.99, max_iterations=200, seed=0))
        assert blue == 2
        assert record.final_best_cut == 4.0
        assert record.encoding.blue_count == 2

    def test_tie_prefers_smaller_blue_count(self):
        # A star K_{1,3} is fully cut by blue = {center}, reachable under both
        # B = 1 and B = 2, so both saturate at 3 and the tie goes to B = 1.
        star = complete_bipartite_graph(1, 3)
        blue, record = scan_blue_sizes(
            star, AnsatzConfig(2, 2),
            OptimizerConfig(step_size=0.9, max_iterations=200, seed=3),
            trials_per_blue=2)
        assert record.final_best_cut == 3.0
        assert blue == 1

    def test_bipartite_two_six(self):
        g = complete_bipartite_graph(2, 6)
        blue, record = scan_blue_sizes(
            g, AnsatzConfig(3, 3),
            OptimizerConfig(step_size=0.8, max_iterations=150, seed=0))
        assert record.final_best_cut == g.total_weight == 12.0


class TestRatios:
    def test_equal_cuts(self):
        assert cut_ratio(4, 4) == 1.0
        assert rescaled_ratio(4, 4, 6) == 1.0

    def test_half_cut_rescales_to_zero(self):
        assert rescaled_ratio(3, 4, 6) == pytest.approx(0.0)

    def test_sixteen_node_example(self):
        assert cut_ratio(18.6, 21) == pytest.approx(0.8857, abs=5e-5)

    def test_degenerate(self):
        with pytest.raises(DegenerateDenominator):
            cut_ratio(1, 0)
        with pytest.raises(DegenerateDenominator):
            rescaled_ratio(1, 2, 4)

    def test_default_shots(self):
        assert default_shots(4) == 48
        assert default_shots(16) == 768
        assert default_shots(32) == 3072
