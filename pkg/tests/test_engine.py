"""Protocol enforcement, reveal sources, and expectation runs."""

from fractions import Fraction

import pytest

from testsched.algorithms import parse_algorithm
from testsched.core import EXEC_TESTED, EXEC_UNTESTED, TEST, Instance, cost_of_trace
from testsched.engine import (
    AdaptiveSource,
    ProtocolError,
    StaticSource,
    run,
    run_expected,
    trial_seed,
)
from testsched.generators import det_lb_adversary, gen_random


def run_static(gen_fn, pairs):
    inst = Instance.from_pairs(pairs)
    return run(gen_fn, StaticSource(inst), inst.n, inst.uppers())


class TestRun:
    def test_threshold_runs_small_limit_blind(self):
        tr = run_static(parse_algorithm("threshold").generator(), [(1.5, 0.7)])
        assert [s[:2] for s in tr.steps] == [(EXEC_UNTESTED, 0)]
        assert tr.total == 1.5

    def test_delay_all_waits_for_every_test(self):
        # two free jobs still cost 4: both tests run before either execution
        tr = run_static(parse_algorithm("delay_all").generator(), [(2, 0), (2, 0)])
        assert tr.total == 4
        kinds = [s[0] for s in tr.steps]
        assert kinds == [TEST, TEST, EXEC_TESTED, EXEC_TESTED]

    def test_revealed_time_is_sent_back(self):
        seen = []

        def probe(view):
            p = yield TEST, 0
            seen.append(p)
            yield EXEC_TESTED, 0

        run_static(probe, [(3, Fraction(5, 4))])
        assert seen == [Fraction(5, 4)]

    def test_trace_costs_recompute(self):
        inst = gen_random(12, seed="replay")
        tr = run(parse_algorithm("threshold").generator(), StaticSource(inst), inst.n, inst.uppers())
        total, makespan = cost_of_trace(tr)
        assert total == tr.total
        assert makespan == tr.makespan

    def test_double_test_rejected(self):
        def bad(view):
            yield TEST, 0
            yield TEST, 0

        with pytest.raises(ProtocolError, match="action 1"):
            run_static(bad, [(2, 1)])

    def test_exec_tested_before_test_rejected(self):
        def bad(view):
            yield EXEC_TESTED, 0

        with pytest.raises(ProtocolError, match="action 0"):
            run_static(bad, [(2, 1)])

    def test_untested_exec_after_test_rejected(self):
        def bad(view):
            yield TEST, 0
            yield EXEC_UNTESTED, 0

        with pytest.raises(ProtocolError, match="action 1"):
            run_static(bad, [(2, 1)])

    def test_unknown_job_rejected(self):
        def bad(view):
            yield EXEC_UNTESTED, 5

        with pytest.raises(ProtocolError):
            run_static(bad, [(2, 1)])

    def test_early_stop_rejected(self):
        def bad(view):
            yield EXEC_UNTESTED, 0

        with pytest.raises(ProtocolError, match="unfinished"):
            run_static(bad, [(2, 1), (2, 1)])

    def test_double_execution_rejected(self):
        def bad(view):
            yield EXEC_UNTESTED, 0
            yield EXEC_UNTESTED, 0

        with pytest.raises(ProtocolError):
            run_static(bad, [(2, 1), (2, 1)])

    def test_view_must_match(self):
        inst = Instance.from_pairs([(2, 1)])
        with pytest.raises(ProtocolError):
            run(parse_algorithm("threshold").generator(), StaticSource(inst), 2, (2, 2))


class TestAdaptiveSource:
    def test_commit_happens_once(self):
        calls = []

        def rule(job, via_test, rank, upper):
            calls.append((job, via_test, rank))
            return upper

        src = AdaptiveSource(rule)

        def alg(view):
            yield TEST, 0
            yield EXEC_TESTED, 0

        tr = run(alg, src, 1, (2,))
        assert calls == [(0, True, 1)]
        assert tr.total == 3  # test + the committed full limit

    def test_single_use(self):
        src = det_lb_adversary(4, 0.5, 2.0)
        run(parse_algorithm("threshold").generator(), src, 4, [2.0] * 4)
        with pytest.raises(ProtocolError, match="already used"):
            run(parse_algorithm("threshold").generator(), src, 4, [2.0] * 4)

    def test_realized_instance_only_after_full_run(self):
        src = det_lb_adversary(2, 0.5, 2.0)
        with pytest.raises(ProtocolError):
            src.realized_instance()
        run(parse_algorithm("threshold").generator(), src, 2, [2.0] * 2)
        inst = src.realized_instance()
        assert inst.n == 2
        # first touch was a test within budget, so it came out long
        assert inst.jobs[0].proc == 2.0

    def test_rule_cannot_exceed_limit(self):
        src = AdaptiveSource(lambda job, via_test, rank, upper: upper + 1)

        def alg(view):
            yield TEST, 0
            yield EXEC_TESTED, 0

        with pytest.raises(ProtocolError, match="outside"):
            run(alg, src, 1, (2,))


class TestRunExpected:
    def test_deterministic_single_trial(self):
        inst = Instance.from_pairs([(2, 0), (2, 0)])
        res = run_expected(parse_algorithm("delay_all"), StaticSource(inst), 2, inst.uppers())
        assert res.total == 4
        assert res.trials == 1
        assert res.total_stderr == 0

    def test_randomized_needs_seed(self):
        inst = Instance.from_pairs([(2, 0), (2, 0)])
        with pytest.raises(ProtocolError, match="seed"):
            run_expected(parse_algorithm("random"), StaticSource(inst), 2, inst.uppers())

    def test_seeded_runs_reproduce(self):
        inst = gen_random(20, seed="mc")
        alg = parse_algorithm("random")
        a = run_expected(alg, StaticSource(inst), inst.n, inst.uppers(), trials=40, seed="s1")
        b = run_expected(alg, StaticSource(inst), inst.n, inst.uppers(), trials=40, seed="s1")
        c = run_expected(alg, StaticSource(inst), inst.n, inst.uppers(), trials=40, seed="s2")
        assert a.total == b.total
        assert a.total != c.total

    def test_trial_seed_shape(self):
        assert trial_seed("master", 3) == "master:3"

    def test_exact_outcomes_weighted(self):
        # random order over 3 tested jobs: 6 permutations, Fraction weights
        inst = Instance.from_pairs([(Fraction(2), Fraction(2))] * 3)
        alg = parse_algorithm("random[T=1.7453,E=2.8609]", exact=True)
        res = run_expected(alg, lambda: StaticSource(inst), 3, inst.uppers(), exact=True)
        assert res.exact
        assert res.trials == 6
        # 2 <= E, so each job runs right after its test: completions 3, 6, 9
        assert res.total == Fraction(3 + 6 + 9)

    def test_exact_gate_on_size(self):
        inst = Instance.from_pairs([(2, 0)] * 9)
        with pytest.raises(ProtocolError, match="n <= 8"):
            run_expected(parse_algorithm("random"), StaticSource(inst), 9, inst.uppers(), exact=True)

    def test_exact_expected_makespan_single_job(self):
        inst = Instance.from_pairs([(Fraction(2), Fraction(0))])
        res = run_expected(parse_algorithm("makespan_rand", exact=True),
                           lambda: StaticSource(inst), 1, inst.uppers(), exact=True)
        # test w.p. 2/3 costs 1, otherwise the full limit 2
        assert res.makespan == Fraction(4, 3)
