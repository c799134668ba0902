import pytest

from trc_utils import SnfClause, annotate_ltl_uc, map_uc_to_ltl, parse, translate
from trc_utils.structs import EMPTY_INITIAL, TRUE, And, Globally, Prop, neg, parse_semilinear, pos
from trc_utils.translation import Mark, Slot, UcMappingError, occurrence_sets


def x(n: int) -> str:
    return f"_x{n}"


class TestTranslate:
    """Polarity-based translation into SNF."""

    def test_globally(self):
        clauses, occ_map = translate(parse("G p"))
        assert clauses == [
            SnfClause.initial(pos(x(0))),
            SnfClause.always([neg(x(0))], [pos(x(0))]),
            SnfClause.always([neg(x(0)), pos("p")]),
        ]
        assert occ_map.marks_of(clauses[2]) == (Mark((0,), Slot.NOW),)
        assert occ_map.marks_of(clauses[1]) == ()
        assert occ_map.root == x(0)

    def test_g_and_x_not(self):
        clauses, occ_map = translate(parse("(G p) & (X ~p)"))
        assert [str(c) for c in clauses] == [
            "_x0",
            "G(~_x0 | _x1)",
            "G(~_x0 | _x2)",
            "G(~_x1 | X(_x1))",
            "G(~_x1 | p)",
            "G(~_x2 | X(_x3))",
            "G(~_x3 | ~p)",
        ]
        assert occ_map.proxies == {(): x(0), (0,): x(1), (1,): x(2), (1, 0): x(3)}
        assert occ_map.marks_of(clauses[5]) == (Mark((1, 0), Slot.NEXT),)

    def test_finally_is_an_eventuality(self):
        clauses, occ_map = translate(parse("F q"))
        assert clauses[1] == SnfClause.eventuality(pos("q"), [neg(x(0))])
        assert occ_map.marks_of(clauses[1]) == (Mark((0,), Slot.EVENTUALITY),)

    def test_negative_globally(self):
        # ~G p needs an eventuality on ~p
        clauses, _ = translate(parse("~G p"))
        assert SnfClause.eventuality(neg("p"), [pos(x(1))]) in clauses

    def test_constants(self):
        assert translate(TRUE)[0] == []
        assert translate(parse("false"))[0] == [EMPTY_INITIAL]
        clauses, _ = translate(parse("p | true"))
        assert clauses == [SnfClause.initial(pos(x(0)))]

    def test_proposition_root(self):
        clauses, occ_map = translate(parse("p"))
        assert clauses == [SnfClause.initial(pos("p"))]
        assert occ_map.root == "p"

    @pytest.mark.parametrize("text", ["p U q", "p R q", "~(p U q)", "~(p R q)", "F ~p", "(p -> q) & ~(q | r)"])
    def test_every_operand_is_marked(self, text):
        f = parse(text)
        clauses, occ_map = translate(f)
        marked = {mark.occurrence for c in clauses for mark in occ_map.marks_of(c)}
        assert marked == {occ for occ, _ in f.occurrences()}


class TestMapUcToLtl:
    def test_all_clauses_give_the_formula(self):
        f = parse("(G p) & (X ~p)")
        clauses, occ_map = translate(f)
        assert map_uc_to_ltl(clauses, occ_map, f) == f

    def test_unused_conjunct_becomes_true(self):
        f = parse("(G p) & q")
        clauses, occ_map = translate(f)
        uc = [c for c in clauses if "q" not in c.props]
        assert map_uc_to_ltl(uc, occ_map, f) == And(Globally(Prop("p")), TRUE)

    def test_negative_occurrence_becomes_false(self):
        f = parse("~q & G p")
        clauses, occ_map = translate(f)
        uc = [c for c in clauses if "q" not in c.props]
        assert str(map_uc_to_ltl(uc, occ_map, f)) == "(~false) & (G p)"

    def test_foreign_clause(self):
        f = parse("G p")
        clauses, occ_map = translate(f)
        with pytest.raises(UcMappingError):
            map_uc_to_ltl(clauses + [SnfClause.initial(pos("q"))], occ_map, f)


class TestAnnotateLtlUc:
    def test_g_and_x_not(self):
        f = parse("(G p) & (X ~p)")
        clauses, occ_map = translate(f)
        one, zero = parse_semilinear("{1}"), parse_semilinear("{0}")
        labels = [zero, zero, zero, zero, one, zero, one]
        annotated = annotate_ltl_uc(list(zip(clauses, labels)), occ_map, f)
        assert str(annotated) == "(G[{1}] p) &[{0},{0}] (X[{1}] ~[{1}] p)"

    def test_slots(self):
        f = parse("(X p) & F q")
        clauses, occ_map = translate(f)
        s = parse_semilinear("{3} u 2N+5")
        sets = occurrence_sets([(c, s) for c in clauses], occ_map)
        assert sets[(0, 0)] == parse_semilinear("{4} u 2N+6")
        assert sets[(1, 0)] == parse_semilinear("N+3")
        assert sets[(0,)] == s

    def test_union_over_clauses(self):
        f = parse("p U q")
        clauses, occ_map = translate(f)
        labels = ["{0}", "{0}", "{2}", "{5}"]
        labelled = [(c, parse_semilinear(s)) for c, s in zip(clauses, labels)]
        assert str(annotate_ltl_uc(labelled, occ_map, f)) == "p U[{0},{0,2} u N+5] q"

    def test_missing_reference(self):
        f = parse("G p")
        clauses, occ_map = translate(f)
        with pytest.raises(UcMappingError):
            annotate_ltl_uc([(clauses[0], parse_semilinear("{0}"))], occ_map, f)
