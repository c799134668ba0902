import pytest

from trc_utils import (
    ClauseLimitExceeded,
    Rule,
    SnfClause,
    TemporalResolutionSolver,
    TimeLimitExceeded,
    Verdict,
    default_config,
    parse,
    parse_snf,
)
from trc_utils.solving import MAIN, MalformedLogError, PartitionId, ProofEvent, ProofLog, check_event, waits_for
from trc_utils.solving.temporal_resolution import _ClauseIndex
from trc_utils.structs import neg, parse_snf_clause, pos


def rules_of(log) -> list[Rule]:
    return [event.rule for event in log.events]


class TestTemporalResolutionSolver:
    """Verdicts and proof logs of the temporal resolution engine."""

    def test_initial_clash(self, clash):
        result = TemporalResolutionSolver().solve_from_file(clash)
        assert result.verdict is Verdict.UNSAT
        assert rules_of(result.log) == [Rule.INIT_II]
        empty = result.log.empty_clause_id()
        assert result.log.clause(empty) == SnfClause.initial()
        assert result.log.partition(empty) == MAIN

    def test_eventuality_alone_is_sat(self, eventually_c):
        result = TemporalResolutionSolver().solve_from_file(eventually_c)
        assert result.verdict is Verdict.SAT
        assert not result.is_unsat
        assert result.log.empty_clause_id() is None
        assert rules_of(result.log).count(Rule.AUG1) == 1
        assert rules_of(result.log).count(Rule.AUG2) == 1

    def test_augmentation_clauses(self, eventually_c):
        log = TemporalResolutionSolver().solve_from_file(eventually_c).log
        clauses = [log.clause(i) for i in range(len(log))]
        wait = waits_for(pos("c"))
        assert wait == pos("_w_c")
        assert SnfClause.always([pos("c"), wait]) in clauses
        assert SnfClause.always([wait.negate()], [pos("c"), wait]) in clauses

    def test_aug2_once_per_eventuality_literal(self):
        clauses = parse_snf("G(~a | F c)\nG(F c)\nG(~b | F ~c)")
        log = TemporalResolutionSolver().solve(clauses).log
        assert rules_of(log).count(Rule.AUG1) == 3
        assert rules_of(log).count(Rule.AUG2) == 2

    def test_step_nn(self):
        clauses = parse_snf("a\nG(~a | c)\nG(~a | ~c)")
        result = TemporalResolutionSolver().solve(clauses)
        assert result.is_unsat
        g_not_a = parse_snf_clause("G(~a)")
        assert any(e.rule is Rule.STEP_NN and result.log.clause(e.conclusion) == g_not_a for e in result.log.events)

    @pytest.mark.parametrize("selection", ["weight", "fifo"])
    def test_every_second_snf(self, every_second_snf, selection):
        config = default_config(selection=selection)
        result = TemporalResolutionSolver(config).solve_from_file(every_second_snf)
        assert result.verdict is Verdict.UNSAT
        assert Rule.LOOP_IT_SUB in rules_of(result.log)

    def test_every_second_snf_ordered(self, every_second_snf, ordered_config):
        result = TemporalResolutionSolver(ordered_config).solve_from_file(every_second_snf)
        assert result.verdict is Verdict.UNSAT
        assert result.statistics["loop_searches"] == 1
        assert result.statistics["loop_iterations"] == 2
        assert rules_of(result.log).count(Rule.LOOP_IT_SUB) == 2
        partitions = {result.log.partition(i) for i in range(len(result.log))}
        assert {MAIN, PartitionId(0, 0), PartitionId(0, 1)} <= partitions

    def test_events_match_their_rules(self, every_second_snf, ordered_config):
        log = TemporalResolutionSolver(ordered_config).solve_from_file(every_second_snf).log
        assert all(check_event(log, event) for event in log.events)

    def test_starting_clauses_come_first(self, every_second_snf):
        result = TemporalResolutionSolver().solve_from_file(every_second_snf)
        assert result.log.n_start == 6
        assert result.log.starting_clauses() == result.clauses

    def test_duplicate_input_clauses(self):
        result = TemporalResolutionSolver().solve([SnfClause.initial(pos("a"))] * 2 + [SnfClause.initial(neg("a"))])
        assert result.is_unsat
        assert result.log.n_start == 2

    @pytest.mark.parametrize(
        "text, verdict",
        [
            ("(G p) & (X ~p)", Verdict.UNSAT),
            ("p & G(p -> X X p) & F(~p & X ~p)", Verdict.UNSAT),
            ("G F p & F G ~p", Verdict.UNSAT),
            ("p U q", Verdict.SAT),
            ("G(p -> X ~p) & G F p", Verdict.SAT),
        ],
    )
    def test_solve_ltl(self, text, verdict):
        result = TemporalResolutionSolver().solve_ltl(parse(text))
        assert result.verdict is verdict
        assert result.occurrences is not None

    def test_statistics(self, every_second_snf):
        solver = TemporalResolutionSolver()
        result = solver.solve_from_file(every_second_snf)
        keys = {"solve_time", "clauses", "events", "loop_searches", "loop_iterations", "given_clauses"}
        assert keys <= set(result.statistics)
        assert result.statistics["clauses"] == len(result.log)
        assert solver.get_statistics() == result.statistics
        solver.reset_statistics()
        assert solver.get_statistics() == {}

    def test_clause_limit(self, every_second_snf):
        solver = TemporalResolutionSolver(default_config(max_clauses=6))
        with pytest.raises(ClauseLimitExceeded):
            solver.solve_from_file(every_second_snf)

    def test_time_limit(self, every_second_snf):
        solver = TemporalResolutionSolver(default_config(time_limit=-1.0))
        with pytest.raises(TimeLimitExceeded):
            solver.solve_from_file(every_second_snf)


class TestProofLog:
    def test_start_clauses_precede_derived_ones(self):
        log = ProofLog()
        log.add_start(SnfClause.initial(pos("a")))
        log.add_clause(SnfClause.initial(), MAIN)
        with pytest.raises(MalformedLogError):
            log.add_start(SnfClause.initial(neg("a")))

    def test_unknown_premise(self):
        log = ProofLog()
        log.add_start(SnfClause.initial(pos("a")))
        with pytest.raises(MalformedLogError):
            log.record(ProofEvent(Rule.INIT_II, 0, 0, 5))

    def test_check_event_rejects_wrong_conclusion(self):
        log = ProofLog()
        a = log.add_start(SnfClause.initial(pos("a"), pos("b")))
        not_a = log.add_start(SnfClause.initial(neg("a")))
        wrong = log.add_clause(SnfClause.initial(pos("c")), MAIN)
        right = log.add_clause(SnfClause.initial(pos("b")), MAIN)
        assert not check_event(log, ProofEvent(Rule.INIT_II, wrong, a, not_a))
        assert check_event(log, ProofEvent(Rule.INIT_II, right, a, not_a))
        assert not check_event(log, ProofEvent(Rule.STEP_NN, right, a, not_a))

    def test_json(self, clash):
        log = TemporalResolutionSolver().solve_from_file(clash).log
        data = log.to_json()
        assert data["n_start"] == 3
        assert data["events"][0]["rule"] == "init-ii"
        assert data["clauses"][-1] == {"clause": {"kind": "initial", "now": [], "next": []}, "partition": "M"}

    def test_partition_names(self):
        assert str(MAIN) == "M"
        assert str(PartitionId(2, 3)) == "L2.3"
        assert waits_for(neg("c")) == pos("_wn_c")


class TestClauseIndex:
    """Literal index used for subsumption and resolution partners."""

    def test_candidates(self):
        index = _ClauseIndex()
        clauses = [parse_snf_clause(text) for text in ("G(~a | X(b))", "G(~a)", "a", "G(F c)")]
        for clause_id, clause in enumerate(clauses):
            index.add(clause_id, clause)
        assert 3 not in index.sizes
        assert {0, 1} <= index.subset_candidates(parse_snf_clause("G(~a | ~c | X(b))"))
        assert 2 not in index.subset_candidates(parse_snf_clause("G(~a | X(b))"))
        assert index.superset_candidates(parse_snf_clause("G(~a)")) == {0, 1}
        index.remove(1, clauses[1])
        assert index.superset_candidates(parse_snf_clause("G(~a)")) == {0}
        assert index.subset_candidates(parse_snf_clause("G(~a)")) == set()

    def test_clause_without_literals(self):
        index = _ClauseIndex()
        index.add(0, SnfClause.always())
        index.add(1, SnfClause.initial(pos("a")))
        assert index.subset_candidates(SnfClause.initial(neg("b"))) == {0}
        assert index.superset_candidates(SnfClause.always()) == {0, 1}

    @pytest.mark.parametrize("selection", ["weight", "fifo"])
    def test_active_clauses_stay_unsubsumed(self, every_second_snf, selection):
        solver = TemporalResolutionSolver(default_config(selection=selection))
        solver.solve_from_file(every_second_snf)
        active = solver.main.active_ids()
        clauses = {i: solver.log.clause(i) for i in active}
        assert not any(clauses[a].subsumes(clauses[b]) for a in active for b in active if a != b)
        assert set(solver.main.active_index.sizes) == {i for i in active if not clauses[i].is_eventuality}

    def test_backward_subsumption(self):
        clauses = parse_snf("G(~a | ~b | X c)\nG(~a | X c)")
        solver = TemporalResolutionSolver()
        solver.solve(clauses)
        assert 0 not in solver.main.active
        assert 1 in solver.main.active
