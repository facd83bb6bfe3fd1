import math

import pytest
from hypothesis import given, strategies as st

from mixedfp.contraction import (
    ContractionTriple,
    DeclaredProperties,
    UnsupportedDiagnosticError,
    builtin_log_triple,
    check_triple_on_grid,
    default_check_grid,
    gain_bound_sequence,
    verify_contraction_sampled,
)
from mixedfp.order import Partition, max_metric, product_leq

absdist = lambda a, b: abs(a - b)  # noqa: E731


class TestBuiltinTriple:
    def test_zero_at_zero(self):
        t = builtin_log_triple()
        assert t.psi(0.0) == t.theta(0.0) == t.phi(0.0) == 0.0

    def test_gap_at_one(self):
        # 1 - ln 2
        assert builtin_log_triple().gap(1.0) == pytest.approx(
            1.0 - math.log(2.0), abs=1e-15
        )

    def test_theta_hits_one(self):
        assert builtin_log_triple().theta(math.e - 1.0) == pytest.approx(1.0, abs=1e-15)

    def test_declared_truthfully(self):
        d = builtin_log_triple().declared
        assert d.psi_altering and d.theta_usc and d.phi_lsc and d.zero_at_zero


class TestCheckTripleOnGrid:
    def test_builtin_passes_spot_grid(self):
        report = check_triple_on_grid(
            builtin_log_triple(), [1e-6, 1e-3, 1.0, 10.0, 1e3]
        )
        assert report.passed
        assert report.min_gap > 0.0

    def test_builtin_passes_default_grid(self):
        assert check_triple_on_grid(builtin_log_triple(), default_check_grid()).passed

    def test_default_grid_shape(self):
        g = default_check_grid()
        assert g.size == 121
        assert g[0] == pytest.approx(1e-8) and g[-1] == pytest.approx(1e4)

    def test_failing_triple(self):
        bad = ContractionTriple(lambda x: x, lambda x: 2 * x, lambda x: 0.0)
        report = check_triple_on_grid(bad, [1.0])
        assert not report.passed
        assert report.violations == ((1.0, -1.0),)

    def test_zero_sample_is_structural(self):
        with pytest.raises(ValueError):
            check_triple_on_grid(builtin_log_triple(), [0.0, 1.0])


class TestGainBound:
    def test_zero_start(self):
        assert gain_bound_sequence(0.0, 5, builtin_log_triple()) == [0.0] * 6

    def test_known_values(self):
        seq = gain_bound_sequence(1.0, 2, builtin_log_triple())
        assert seq[1] == pytest.approx(math.log(2.0), abs=1e-15)
        assert seq[2] == pytest.approx(math.log(1.0 + math.log(2.0)), abs=1e-15)

    @given(st.floats(1e-8, 1e3))
    def test_strictly_decreasing(self, d0):
        seq = gain_bound_sequence(d0, 20, builtin_log_triple())
        assert all(b < a for a, b in zip(seq, seq[1:]))
        assert all(v >= 0.0 for v in seq)

    def test_non_identity_psi_refused(self):
        t = ContractionTriple(lambda x: 2 * x, lambda x: x, lambda x: 0.0)
        with pytest.raises(UnsupportedDiagnosticError):
            gain_bound_sequence(1.0, 3, t)

    def test_negative_start_rejected(self):
        with pytest.raises(ValueError):
            gain_bound_sequence(-1.0, 3, builtin_log_triple())


class TestVerifyContractionSampled:
    partition = Partition.of(2, [1])

    def ordered(self, x, z):
        return product_leq(x, z, self.partition, lambda a, b: a <= b)

    def dk(self, x, z):
        return max_metric(x, z, absdist)

    def test_equal_pair_slack_zero(self):
        report = verify_contraction_sampled(
            lambda x: 0.5 * (x[0] + x[1]),
            [((1.0, 1.0), (1.0, 1.0))],
            builtin_log_triple(),
            dist=absdist,
            dist_k=self.dk,
            ordered=self.ordered,
        )
        assert report.slacks == (0.0,)
        assert report.passed

    def test_expanding_operator_fails(self):
        # F(a, b) = 2a: psi(2) = 2 exceeds theta(1) = ln 2
        report = verify_contraction_sampled(
            lambda x: 2.0 * x[0],
            [((0.0, 0.0), (1.0, 0.0))],
            builtin_log_triple(),
            dist=absdist,
            dist_k=self.dk,
            ordered=self.ordered,
        )
        assert not report.passed
        assert report.min_slack == pytest.approx(math.log(2.0) - 2.0)

    def test_unordered_pair_rejected_before_evaluation(self):
        def boom(x):
            raise AssertionError("must not evaluate")

        report = verify_contraction_sampled(
            boom,
            [((1.0, 0.0), (0.0, 0.0))],
            builtin_log_triple(),
            dist=absdist,
            dist_k=self.dk,
            ordered=self.ordered,
        )
        assert report.rejected_pairs == (0,)
        assert not report.passed
