import pytest

from trc_utils import AnnotatedFormula, LtlSyntaxError, parse, parse_ltlp
from trc_utils.structs import (
    FALSE,
    NATURALS,
    TRUE,
    And,
    Finally,
    Globally,
    Implies,
    Next,
    Not,
    OccurrenceError,
    Or,
    Polarity,
    Prop,
    Release,
    Until,
    parse_any,
    parse_semilinear,
    polarity_of,
    simplify,
    simplify_annotated,
)

p, q, r = Prop("p"), Prop("q"), Prop("r")


class TestParse:
    """Parsing of the ASCII grammar."""

    @pytest.mark.parametrize(
        "text, expected",
        [
            ("(G p) & (X ~p)", And(Globally(p), Next(Not(p)))),
            ("p U (q R r)", Until(p, Release(q, r))),
            ("true", TRUE),
            ("~false", Not(FALSE)),
            ("p -> q -> r", Implies(p, Implies(q, r))),
            ("p & q | r", Or(And(p, q), r)),
            ("p | q & r", Or(p, And(q, r))),
            ("p & q & r", And(p, And(q, r))),
            ("F G p", Finally(Globally(p))),
            ("X(p U q)", Next(Until(p, q))),
            ("p U q & r", And(Until(p, q), r)),
            ("p # comment\n & q", And(p, q)),
        ],
    )
    def test_parse(self, text, expected):
        assert parse(text) == expected

    @pytest.mark.parametrize(
        "text",
        ["(G p) & (X ~p)", "p U (q R r)", "F G p", "X(p U q)", "(p -> q) -> r", "~(p & q)", "G(p -> X X p)"],
    )
    def test_print_reparses(self, text):
        f = parse(text)
        assert parse(str(f)) == f

    def test_print(self):
        assert str(parse("(G p) & (X ~p)")) == "(G p) & (X ~p)"
        assert str(parse("G(p -> X X p)")) == "G(p -> (X X p))"

    @pytest.mark.parametrize(
        "text, line, column",
        [
            ("p &", 1, 4),
            ("p & (q", 1, 7),
            ("p\n& $", 2, 3),
            ("p q", 1, 3),
            ("G", 1, 2),
        ],
    )
    def test_syntax_error_position(self, text, line, column):
        with pytest.raises(LtlSyntaxError) as excinfo:
            parse(text)
        assert excinfo.value.line == line
        assert excinfo.value.column == column

    def test_reserved_names(self):
        with pytest.raises(LtlSyntaxError):
            parse("_x0 & p")
        assert parse("_x0 & p", allow_reserved=True) == And(Prop("_x0"), p)

    def test_sets_not_allowed_in_plain_input(self):
        with pytest.raises(LtlSyntaxError):
            parse("G[N] p")

    def test_keywords_are_not_propositions(self):
        with pytest.raises(ValueError):
            Prop("X")
        with pytest.raises(LtlSyntaxError):
            parse("p & U")


class TestOccurrences:
    def test_preorder(self):
        f = parse("a & ~b")
        assert [occ for occ, _ in f.occurrences()] == [(), (0,), (1,), (1, 0)]
        assert f.size == 4
        assert f.props() == frozenset({"a", "b"})

    @pytest.mark.parametrize(
        "text, occ, expected",
        [
            ("G ~p", (0, 0), Polarity.NEGATIVE),
            ("~~p", (0, 0), Polarity.POSITIVE),
            ("p -> q", (0,), Polarity.NEGATIVE),
            ("p -> q", (1,), Polarity.POSITIVE),
            ("~(p -> q)", (0, 0), Polarity.POSITIVE),
            ("p U ~q", (1, 0), Polarity.NEGATIVE),
            ("p", (), Polarity.POSITIVE),
        ],
    )
    def test_polarity(self, text, occ, expected):
        f = parse(text)
        assert polarity_of(f, occ) is expected
        assert f.polarities()[occ] is expected

    def test_replace(self):
        f = parse("(G p) & (X ~p)")
        assert f.replace((1, 0), TRUE) == And(Globally(p), Next(TRUE))
        assert f.replace((), q) == q
        with pytest.raises(OccurrenceError):
            f.replace((2,), q)

    def test_invalid_occurrence(self):
        with pytest.raises(OccurrenceError):
            parse("G p").subformula((0, 0))


class TestLtlp:
    """Annotated formulas and their notation."""

    def test_parse_and_print(self):
        text = "(G[{1}] p) &[{0},{0}] (X[{1}] ~[{1}] p)"
        a = parse_ltlp(text)
        assert str(a) == text
        assert a.strip() == parse("(G p) & (X ~p)")
        assert a.operand_set((1, 0)) == parse_semilinear("{1}")
        assert a.operand_set((0,)) == parse_semilinear("{0}")

    def test_implication_carries_two_sets(self):
        a = parse_ltlp("p ->[2N,2N+1] q")
        assert a.sets == (parse_semilinear("2N"), parse_semilinear("2N+1"))

    def test_root_has_no_set(self):
        with pytest.raises(OccurrenceError):
            parse_ltlp("G[N] p").operand_set(())

    @pytest.mark.parametrize("text", ["G p", "G[N,N] p", "p &[N] q", "G[2N p", "G[0N] p"])
    def test_invalid(self, text):
        with pytest.raises(LtlSyntaxError):
            parse_ltlp(text)

    def test_uniform(self):
        a = AnnotatedFormula.uniform(parse("G(p -> X q)"), NATURALS)
        assert str(a) == "G[N](p ->[N,N] (X[N] q))"

    @pytest.mark.parametrize(
        "text",
        [
            "G[{0}](F[N] c)",
            "F[N](G[2N+1] p)",
            "G[N](X[N+1] p)",
            "X[{1}] G[{1}] b1",
            "X[{1}] X[{2}] ~[{2}] p",
            "G[N] ~[N] p",
        ],
    )
    def test_nested_temporal_operands(self, text):
        a = parse_ltlp(text)
        assert str(a) == text
        assert parse_ltlp(str(a)) == a

    def test_with_sets(self):
        f = parse("G p")
        a = AnnotatedFormula.uniform(f, NATURALS).with_sets({(0,): parse_semilinear("2N")})
        assert str(a) == "G[2N] p"
        with pytest.raises(OccurrenceError):
            AnnotatedFormula.uniform(parse("p & q"), NATURALS).with_sets({(0,): NATURALS})

    def test_parse_any(self):
        assert isinstance(parse_any("G[N] p"), AnnotatedFormula)
        assert parse_any("G p") == Globally(p)


class TestSimplify:
    @pytest.mark.parametrize(
        "text, expected",
        [
            ("true & p", "p"),
            ("p | true", "true"),
            ("false -> p", "true"),
            ("p -> false", "~p"),
            ("G true", "true"),
            ("p U false", "false"),
            ("(G p) & ((X ~p) & true)", "(G p) & (X ~p)"),
            ("~(true & false)", "true"),
        ],
    )
    def test_simplify(self, text, expected):
        assert simplify(parse(text)) == parse(expected)

    def test_annotated_neutral_operand(self):
        a = parse_ltlp("(G[{1}] p) &[{0},{0}] ((X[{1}] ~[{1}] p) &[{0},{}] true)")
        assert str(simplify_annotated(a)) == "(G[{1}] p) &[{0},{0}] (X[{1}] ~[{1}] p)"

    def test_annotated_operand_kept_when_sets_differ(self):
        # p is only required at odd points
        a = parse_ltlp("G[N](p &[2N+1,{}] true)")
        assert simplify_annotated(a) == a
