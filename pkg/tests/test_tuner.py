import io

import pytest

from qapsolve import tuner
from qapsolve.errors import DomainError
from qapsolve.multistart import SearchConfig


class TestValidateConfig:
    def test_published_configuration(self):
        ok, violations = tuner.validate_config(tuner.ThreadConfig(6144, 192, 32))
        assert ok and not violations

    def test_non_warp_multiple_threads(self):
        ok, violations = tuner.validate_config(tuner.ThreadConfig(6144, 100, 61))
        assert not ok
        assert any("not a multiple of warp size" in v for v in violations)

    def test_boundary_point(self):
        ok, _ = tuner.validate_config(tuner.ThreadConfig(1024, 1024, 1))
        assert ok

    def test_wrong_block_count(self):
        ok, violations = tuner.validate_config(tuner.ThreadConfig(1024, 512, 3))
        assert not ok
        assert any("blocks" in v for v in violations)

    def test_out_of_range_starts(self):
        ok, violations = tuner.validate_config(tuner.ThreadConfig(512, 32, 16))
        assert not ok


class TestEnumerateConfigs:
    def test_filter_1024(self):
        configs = tuner.enumerate_configs(1024)
        assert [c.threads_per_block for c in configs] == [32, 64, 128, 256, 512, 1024]
        assert all(c.blocks == 1024 // c.threads_per_block for c in configs)

    def test_filter_1056(self):
        configs = tuner.enumerate_configs(1056)
        assert [c.threads_per_block for c in configs] == [32, 96, 352]

    def test_every_config_valid(self):
        configs = tuner.enumerate_configs()
        assert all(tuner.validate_config(c)[0] for c in configs)

    def test_ordering(self):
        configs = tuner.enumerate_configs()
        keys = [(c.n_starts, c.threads_per_block) for c in configs]
        assert keys == sorted(keys)

    def test_filter_outside_range_is_empty(self):
        assert tuner.enumerate_configs(512) == []
        assert tuner.enumerate_configs(1030) == []  # not a warp multiple


class TestMakeSweep:
    def base(self):
        return SearchConfig(algorithm="tabu", n_starts=64, iterations=50, master_seed=3)

    def test_instances_axis_powers_of_two(self):
        plan = tuner.make_sweep("instances", [64, 128, 256, 512, 1024], self.base())
        assert plan.values == (64, 128, 256, 512, 1024)

    def test_instances_axis_rejects_non_power_of_two(self):
        with pytest.raises(DomainError):
            tuner.make_sweep("instances", [100], self.base())

    def test_instances_axis_bounded(self):
        with pytest.raises(DomainError):
            tuner.make_sweep("instances", [2048], self.base())

    def test_neighborhoods_axis(self):
        plan = tuner.make_sweep("neighborhoods", [100, 200, 400, 800], self.base())
        assert plan.axis == "neighborhoods"

    def test_values_must_increase(self):
        with pytest.raises(DomainError):
            tuner.make_sweep("neighborhoods", [200, 100], self.base())
        with pytest.raises(DomainError):
            tuner.make_sweep("seeds", [], self.base())

    def test_unknown_axis(self):
        with pytest.raises(DomainError):
            tuner.make_sweep("blocks", [1, 2], self.base())

    def test_expansion_count(self):
        plan = tuner.make_sweep("seeds", [1, 2, 4, 8], self.base())
        runs = list(tuner.expand(plan, repetitions=3))
        assert len(runs) == 4 * 3

    def test_plan_serialization(self):
        plan = tuner.make_sweep("neighborhoods", [100, 200], self.base())
        buf = io.StringIO()
        tuner.write_plan(plan, repetitions=2, sink=buf)
        lines = buf.getvalue().splitlines()
        assert lines[0] == "axis,value,master_seed,repetition"
        assert len(lines) == 1 + 4
        assert lines[1] == "neighborhoods,100,3,0"
