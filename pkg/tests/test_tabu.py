import dataclasses
import io

import numpy as np
import pytest

from qapsolve import core, tabu, two_opt
from qapsolve.errors import DomainError
from qapsolve.rng import SplitMix64


class TestTenureBounds:
    @pytest.mark.parametrize(
        "n,low,high", [(30, 3, 10), (40, 4, 14), (2, 1, 1), (10, 1, 4), (100, 10, 33)]
    )
    def test_interval(self, n, low, high):
        interval = tabu.tenure_bounds(n)
        assert (interval.low, interval.high) == (low, high)

    def test_invalid_interval_rejected(self):
        with pytest.raises(DomainError):
            tabu.TenureInterval(3, 2)
        with pytest.raises(DomainError):
            tabu.TenureInterval(0, 2)


class TestSampleTenure:
    def test_degenerate_interval(self):
        rng = SplitMix64(1)
        assert all(tabu.sample_tenure(tabu.TenureInterval(1, 1), rng) == 1 for _ in range(20))

    def test_deterministic(self):
        interval = tabu.TenureInterval(3, 10)
        assert tabu.sample_tenure(interval, SplitMix64(5)) == tabu.sample_tenure(
            interval, SplitMix64(5)
        )

    def test_uniformity_chi_squared(self):
        # 8 cells, 7 dof; chi2 critical value at 99.9% is 24.32.
        interval = tabu.TenureInterval(3, 10)
        rng = SplitMix64(314)
        draws = 10_000
        counts = {v: 0 for v in range(3, 11)}
        for _ in range(draws):
            counts[tabu.sample_tenure(interval, rng)] += 1
        assert all(c > 0 for c in counts.values())
        expected = draws / 8
        chi2 = sum((c - expected) ** 2 / expected for c in counts.values())
        assert chi2 < 24.32


class TestIsAdmissible:
    def test_zero_matrix_forbids_nothing(self):
        cells = tabu.new_tabu_matrix(5)
        assert tabu.is_admissible(cells, (0, 1), candidate_cost=50, best_cost=10, iteration=1)

    def test_aspiration_overrides_tabu(self):
        cells = tabu.new_tabu_matrix(5)
        cells[0, 1] = 6
        assert tabu.is_admissible(cells, (0, 1), candidate_cost=9, best_cost=10, iteration=1)

    def test_equal_cost_is_not_aspirated(self):
        cells = tabu.new_tabu_matrix(5)
        cells[0, 1] = 6
        assert not tabu.is_admissible(cells, (0, 1), candidate_cost=10, best_cost=10, iteration=1)

    def test_expired_move_is_free(self):
        cells = tabu.new_tabu_matrix(5)
        cells[0, 1] = 4
        assert tabu.is_admissible(cells, (0, 1), candidate_cost=99, best_cost=10, iteration=4)
        assert not tabu.is_admissible(cells, (0, 1), candidate_cost=99, best_cost=10, iteration=3)


class TestTabuStep:
    def test_first_step_matches_two_opt_choice(self, rand_instance_factory):
        inst = rand_instance_factory(8, 40)
        perm = core.random_permutation(8, SplitMix64(2))
        t_state = tabu.tabu_step(inst, tabu.initial_tabu_state(inst, perm), SplitMix64(0))
        o_state = two_opt.two_opt_step(inst, two_opt.initial_state(inst, perm))
        assert np.array_equal(t_state.current, o_state.current)
        assert t_state.current_cost == o_state.current_cost

    def test_recency_and_frequency_bookkeeping(self, toy2):
        # Exchange at iteration 1 with t=4 writes expiry 5 above the diagonal
        # and count 1 below; a repeat once expired bumps the count to 2.
        state = tabu.initial_tabu_state(toy2, np.array([0, 1]), tabu.TenureInterval(4, 4))
        state = tabu.tabu_step(toy2, state, SplitMix64(0))
        assert state.tabu[0, 1] == 5
        assert state.tabu[1, 0] == 1
        state = dataclasses.replace(state, iteration=6)
        state = tabu.tabu_step(toy2, state, SplitMix64(0))
        assert not state.stopped_early
        assert state.tabu[1, 0] == 2
        assert state.tabu[0, 1] == 6 + 4

    def test_premature_stop_on_toy_optimum(self, toy2):
        state = tabu.initial_tabu_state(toy2, np.array([0, 1]), tabu.TenureInterval(5, 5))
        state = tabu.tabu_step(toy2, state, SplitMix64(0))
        assert state.current.tolist() == [1, 0]
        assert state.current_cost == 17
        assert state.best_cost == 13
        stopped = tabu.tabu_step(toy2, state, SplitMix64(0))
        assert stopped.stopped_early
        assert np.array_equal(stopped.current, state.current)
        assert tabu.tabu_step(toy2, stopped, SplitMix64(0)) is stopped

    def test_selection_ignores_frequency_triangle(self, rand_instance_factory):
        inst = rand_instance_factory(7, 9)
        perm = core.random_permutation(7, SplitMix64(3))
        clean = tabu.initial_tabu_state(inst, perm)
        poisoned_cells = clean.tabu.copy()
        poisoned_cells[np.tril_indices(7, k=-1)] = 10**9
        poisoned = dataclasses.replace(clean, tabu=poisoned_cells)
        a = tabu.tabu_step(inst, clean, SplitMix64(1))
        b = tabu.tabu_step(inst, poisoned, SplitMix64(1))
        assert np.array_equal(a.current, b.current)
        assert a.current_cost == b.current_cost


class TestRunTabu:
    def test_deterministic_record_and_trail(self, rand_instance_factory):
        inst = rand_instance_factory(10, 60)
        a_rec, a_trail = tabu.run_tabu(inst, seed=11, iterations=40)
        b_rec, b_trail = tabu.run_tabu(inst, seed=11, iterations=40)
        assert a_rec.cost == b_rec.cost
        assert np.array_equal(a_rec.permutation, b_rec.permutation)
        assert np.array_equal(a_trail.move_i, b_trail.move_i)
        assert np.array_equal(a_trail.tenure_drawn, b_trail.tenure_drawn)

    def test_run_matches_stepwise_reference(self, rand_instance_factory):
        inst = rand_instance_factory(7, 61)
        iterations = 30
        record, trail = tabu.run_tabu(inst, seed=5, iterations=iterations)
        rng = SplitMix64(5)
        state = tabu.initial_tabu_state(
            inst, core.random_permutation(7, rng), tabu.tenure_bounds(7)
        )
        for _ in range(iterations):
            state = tabu.tabu_step(inst, state, rng)
            if state.stopped_early:
                break
        assert record.cost == state.best_cost
        assert np.array_equal(record.permutation, state.best)
        assert trail.stopped_early == state.stopped_early
        assert np.array_equal(trail.final_tabu, state.tabu)

    def test_trail_replays_cleanly(self, rand_instance_factory):
        inst = rand_instance_factory(9, 62)
        record, trail = tabu.run_tabu(inst, seed=21, iterations=60)
        replayed = tabu.replay_and_audit(inst, trail)
        assert replayed.cost == record.cost
        assert np.array_equal(replayed.permutation, record.permutation)

    def test_premature_stop_sets_flag(self, toy2):
        record, trail = tabu.run_tabu(
            toy2, seed=1, iterations=50, tenure=tabu.TenureInterval(40, 40)
        )
        assert trail.stopped_early
        assert len(trail) < 50
        assert record.cost == 13

    def test_aggregate_not_worse_than_two_opt(self, rand_instance_factory):
        gaps = []
        for seed in range(20):
            inst = rand_instance_factory(6, 700 + seed)
            iterations = 30
            t_rec, _ = tabu.run_tabu(inst, seed=seed, iterations=iterations)
            o_rec = two_opt.run_two_opt(inst, seed=seed, iterations=iterations)
            gaps.append(o_rec.cost - t_rec.cost)
        assert sum(gaps) >= 0


class TestTrailSerialization:
    def test_csv_format_and_stability(self, rand_instance_factory):
        inst = rand_instance_factory(6, 88)
        _, trail = tabu.run_tabu(inst, seed=2, iterations=5)
        buf1, buf2 = io.StringIO(), io.StringIO()
        tabu.write_trail(trail, buf1)
        tabu.write_trail(trail, buf2)
        lines = buf1.getvalue().splitlines()
        assert lines[0] == "iter,i,j,delta,tabu_flag,aspirated_flag,tenure_drawn"
        assert len(lines) == 1 + len(trail)
        first = lines[1].split(",")
        assert first[0] == "1"
        assert 1 <= int(first[1]) < int(first[2]) <= 6  # 1-based positions
        assert buf1.getvalue() == buf2.getvalue()
