import json

import pytest

from trc_utils import (
    UcReport,
    Verdict,
    default_config,
    eval_ltlp,
    extract,
    extract_uc,
    load_instance,
    parse,
    parse_ltlp,
    parse_word,
)
from trc_utils.structs import AnnotatedFormula, SnfClause


class TestExtractUc:
    """Cores of LTL and SNF inputs, with and without sets of time points."""

    def test_g_and_x_not(self, g_and_x_not, g_and_x_not_ltlp):
        report = extract_uc(load_instance(g_and_x_not))
        assert report.verdict is Verdict.UNSAT
        assert str(report.uc_ltl) == "(G[{1}] p) &[{0},{0}] (X[{1}] ~[{1}] p)"
        assert report.uc_ltl == load_instance(g_and_x_not_ltlp)

    def test_without_timepoints(self):
        f = parse("(G p) & (X ~p)")
        report = extract_uc(f, timepoints=False)
        assert report.timepoints is None
        assert report.annotated == []
        assert report.uc_ltl == f

    def test_unused_conjunct(self):
        f = parse("(G p) & (X ~p) & F q")
        plain = extract_uc(f, timepoints=False)
        assert str(plain.uc_ltl) == "(G p) & ((X ~p) & true)"
        assert extract_uc(f, timepoints=False, simplify=True).uc_ltl == parse("(G p) & (X ~p)")
        annotated = extract_uc(f, simplify=True)
        assert str(annotated.uc_ltl) == "(G[{1}] p) &[{0},{0}] (X[{1}] ~[{1}] p)"

    def test_sat_instance(self, eventually_c):
        extraction = extract(load_instance(eventually_c))
        assert extraction.report.verdict is Verdict.SAT
        assert extraction.graph is None
        assert extraction.report.to_text() == "SAT\n"
        assert extraction.report.uc_snf == []

    def test_every_second_text(self, every_second_snf, ordered_config):
        # these labels come from the refutation found with c > b > a; other
        # selection orders find other refutations with other labels
        report = extract_uc(load_instance(every_second_snf), ordered_config)
        assert report.to_text().splitlines() == [
            "UNSAT",
            "c core in SNF",
            "a",
            "G[2N](~[2N]a | X[2N+1] b)",
            "G[2N+1](~[2N+1]b | X[2N+2] a)",
            "G[2N](~[2N]a | ~[2N]c)",
            "G[2N+1](~[2N+1]c | X[2N+2] ~[2N+2]a)",
            "G[{0}](F[N] c)",
        ]

    def test_statistics(self, every_second_snf):
        stats = extract_uc(load_instance(every_second_snf)).statistics
        assert stats["input_clauses"] == 6
        assert stats["uc_size"] == 6
        assert stats["core_vertices"] <= stats["vertices"]
        assert "labeling_time" in stats

    def test_every_second_ltl(self, every_second):
        report = extract_uc(load_instance(every_second))
        assert report.verdict is Verdict.UNSAT
        assert isinstance(report.uc_ltl, AnnotatedFormula)
        for word in ["; {p}", "; {p}.{}", "{p}.{} ; {p}.{p}.{}"]:
            assert not eval_ltlp(parse_word(word), report.uc_ltl)

    @pytest.mark.parametrize("method", ["multi-final", "layered"])
    def test_every_second_sets(self, every_second, every_second_ltlp, method):
        report = extract_uc(load_instance(every_second), default_config(parikh_method=method))
        expected = load_instance(every_second_ltlp)
        assert report.uc_ltl.strip() == expected.strip()
        for occ, _ in expected.occurrences():
            if occ:
                assert report.uc_ltl.operand_set(occ).equals(expected.operand_set(occ)), occ


class TestUcReport:
    def test_json(self, g_and_x_not):
        report = extract_uc(load_instance(g_and_x_not))
        data = json.loads(report.dumps())
        assert data["status"] == "unsat"
        assert set(data) == {"status", "uc_snf", "uc_ltl", "stats"}
        assert all("timepoints" in c for c in data["uc_snf"])
        loaded = UcReport.loads(report.dumps())
        assert loaded.uc_snf == report.uc_snf
        assert loaded.uc_ltl == report.uc_ltl
        assert [str(s) for s in loaded.timepoints] == [str(s) for s in report.timepoints]

    def test_json_without_timepoints(self, clash):
        report = extract_uc(load_instance(clash), timepoints=False)
        loaded = UcReport.loads(report.dumps())
        assert loaded.timepoints is None
        assert loaded.uc_ltl is None
        assert loaded.uc_snf == [SnfClause.from_json(c) for c in report.to_json()["uc_snf"]]

    def test_text_of_clash(self, clash):
        assert extract_uc(load_instance(clash), timepoints=False).to_text() == "UNSAT\nc core in SNF\na\n~a\n"


class TestLoadInstance:
    def test_formats(self, g_and_x_not, g_and_x_not_ltlp, clash):
        assert load_instance(g_and_x_not) == parse("(G p) & (X ~p)")
        assert load_instance(g_and_x_not_ltlp) == parse_ltlp("(G[{1}] p) &[{0},{0}] (X[{1}] ~[{1}] p)")
        assert len(load_instance(clash)) == 3

    def test_unknown_suffix(self, temp_dir):
        path = f"{temp_dir}/instance.txt"
        with open(path, "w") as f:
            f.write("G p\n")
        with pytest.raises(ValueError):
            load_instance(path)
