import numpy as np
import pytest

from trc_utils import SemilinearSet, parse_semilinear
from trc_utils.structs.semilinear import (
    DEFAULT_LCM_CAP,
    EMPTY,
    NATURALS,
    ZERO,
    SemilinearOverflowError,
    set_lcm_cap,
)


def S(text: str) -> SemilinearSet:
    return parse_semilinear(text)


class TestSemilinearSet:
    """Canonical form and set operations."""

    @pytest.mark.parametrize(
        "text, k, expected",
        [
            ("2N+1", 5, True),
            ("{0}", 1, False),
            ("2N", 1, False),
            ("{0,3} u 5N+4", 3, True),
            ("{0,3} u 5N+4", 2, False),
            ("{}", 0, False),
            ("N", 0, True),
        ],
    )
    def test_contains(self, text, k, expected):
        assert (k in S(text)) is expected

    def test_contains_negative(self):
        assert not NATURALS.contains(-1)

    @pytest.mark.parametrize(
        "parts, expected",
        [
            (["{0}", "2N+2"], "2N"),
            (["{}", "3N+1"], "3N+1"),
            (["{1}", "{3}", "{5}", "2N+7"], "2N+1"),
            (["2N", "2N+1"], "N"),
            (["{0}", "N+1"], "N"),
            (["4N+1", "4N+3"], "2N+1"),
        ],
    )
    def test_union_canonicalizes(self, parts, expected):
        result = EMPTY.union(*(S(p) for p in parts))
        assert result == S(expected)
        assert str(result) == expected

    def test_canonical_form_keeps_uncovered_elements(self):
        s = SemilinearSet((0, 3), ((4, 5),))
        assert s.finite == (0, 3)
        assert s.progressions == ((4, 5),)
        assert str(s) == "{0,3} u 5N+4"

    def test_covered_finite_elements_are_dropped(self):
        s = SemilinearSet((0, 3), ((1, 2),))
        assert str(s) == "{0} u 2N+1"

    @pytest.mark.parametrize("text", ["{1} u 2N", "{3} u 2N", "{1,5} u 4N"])
    def test_constant_next_to_a_progression(self, text):
        assert str(S(text)) == text

    def test_union_with_a_constant_inside_the_gaps(self):
        s = SemilinearSet.of(1).union(SemilinearSet.progression(2))
        assert s == S("{1} u 2N")
        assert s.finite == (1,)
        assert s.progressions == ((0, 2),)

    @pytest.mark.parametrize(
        "text, d, expected",
        [
            ("2N+1", 1, "2N+2"),
            ("{0}", 0, "{0}"),
            ("{0,3} u 5N+4", 2, "{2,5} u 5N+6"),
            ("{}", 3, "{}"),
        ],
    )
    def test_shift(self, text, d, expected):
        assert S(text).shift(d) == S(expected)

    def test_negative_shift(self):
        with pytest.raises(ValueError):
            ZERO.shift(-1)

    @pytest.mark.parametrize(
        "text, expected",
        [
            ("{0}", "N"),
            ("2N+3", "N+3"),
            ("{5} u 2N+8", "N+5"),
        ],
    )
    def test_tail_from_min(self, text, expected):
        assert S(text).tail_from_min() == S(expected)

    def test_min_of_empty(self):
        with pytest.raises(ValueError):
            EMPTY.min()

    @pytest.mark.parametrize(
        "left, right, expected",
        [
            ("2N u 2N+1", "N", True),
            ("{0} u 2N+2", "2N", True),
            ("4N+1", "4N+3", False),
            ("{}", "{}", True),
            ("{0,2,4} u 6N+6", "2N", False),
            ("{0,2,4} u 2N+6", "2N", True),
        ],
    )
    def test_equals(self, left, right, expected):
        assert S(left).equals(S(right)) is expected

    @pytest.mark.parametrize(
        "left, right, expected",
        [
            ("2N+2", "2N", True),
            ("2N", "2N+2", False),
            ("{}", "{0}", True),
            ("6N+3", "3N", True),
            ("{1,7}", "2N+1", True),
            ("N+1", "2N u 2N+3", False),
        ],
    )
    def test_issubset(self, left, right, expected):
        assert S(left).issubset(S(right)) is expected
        assert (S(left) <= S(right)) is expected

    def test_characteristic(self):
        expected = np.array([True, False, False, True, True, False, False, False, False, True])
        assert np.array_equal(S("{0,3} u 5N+4").characteristic(10), expected)

    def test_properties(self):
        s = S("{1} u 3N+5 u 4N+7")
        assert s.periods == (3, 4)
        assert s.max_constant == 7
        assert s.min() == 1
        assert not s.is_finite
        assert S("{2,9}").is_finite
        assert EMPTY.is_empty and EMPTY.max_constant == 0

    def test_constants(self):
        assert str(EMPTY) == "{}"
        assert str(NATURALS) == "N"
        assert str(ZERO) == "{0}"
        assert str(SemilinearSet.progression(3)) == "3N"
        assert str(SemilinearSet.progression(1, 4)) == "N+4"

    def test_hashable(self):
        assert len({S("2N"), S("{0} u 2N+2"), S("2N+1")}) == 2


class TestParseSemilinear:
    """The textual notation."""

    @pytest.mark.parametrize("text", ["{0,3} u 5N+4", "N", "{}", "2N+1", "{7}", "{1} u N+3"])
    def test_rendering_is_parseable(self, text):
        assert str(S(text)) == text

    def test_whitespace(self):
        assert S(" { 0 , 3 }  u  5N + 4 ") == S("{0,3} u 5N+4")

    @pytest.mark.parametrize("text", ["0N", "x", "{a}", "2N-1", "{0"])
    def test_invalid(self, text):
        with pytest.raises(ValueError):
            S(text)

    def test_invalid_progression(self):
        with pytest.raises(ValueError):
            SemilinearSet((), ((0, 0),))
        with pytest.raises(ValueError):
            SemilinearSet((-1,))


class TestLcmCap:
    def test_overflow(self):
        set_lcm_cap(10)
        try:
            with pytest.raises(SemilinearOverflowError):
                SemilinearSet((), ((0, 7), (0, 11)))
        finally:
            set_lcm_cap(DEFAULT_LCM_CAP)

    def test_invalid_cap(self):
        with pytest.raises(ValueError):
            set_lcm_cap(0)


def _random_parts(rng: np.random.Generator) -> tuple[list[int], list[tuple[int, int]]]:
    finite = [int(k) for k in rng.integers(0, 13, size=rng.integers(0, 5))]
    progressions = [(int(rng.integers(0, 13)), int(rng.integers(1, 7))) for _ in range(rng.integers(0, 4))]
    return finite, progressions


def _reference_bits(finite, progressions, length: int) -> np.ndarray:
    bits = np.zeros(length, dtype=bool)
    for k in finite:
        bits[k] = True
    for offset, period in progressions:
        for k in range(offset, length, period):
            bits[k] = True
    return bits


class TestSemilinearAgainstBits:
    """Set operations agree with membership vectors on random sets."""

    LENGTH = 12 + 2 * 60 + 1

    @pytest.mark.parametrize("seed", range(100))
    def test_canonical_form(self, seed):
        rng = np.random.default_rng(seed)
        finite, progressions = _random_parts(rng)
        s = SemilinearSet(tuple(finite), tuple(progressions))
        bits = _reference_bits(finite, progressions, self.LENGTH)
        assert np.array_equal(s.characteristic(self.LENGTH), bits)
        assert SemilinearSet(s.finite, s.progressions) == s
        assert parse_semilinear(str(s)) == s
        # adding members again does not change the canonical form
        extra = [int(k) for k in np.flatnonzero(bits)[:3]]
        assert SemilinearSet(tuple(finite + extra), tuple(progressions)) == s

    @pytest.mark.parametrize("seed", range(100))
    def test_operations(self, seed):
        rng = np.random.default_rng(500 + seed)
        (f1, p1), (f2, p2) = _random_parts(rng), _random_parts(rng)
        s, t = SemilinearSet(tuple(f1), tuple(p1)), SemilinearSet(tuple(f2), tuple(p2))
        a, b = _reference_bits(f1, p1, self.LENGTH), _reference_bits(f2, p2, self.LENGTH)
        assert np.array_equal(s.union(t).characteristic(self.LENGTH), a | b)
        d = int(rng.integers(0, 5))
        shifted = np.concatenate([np.zeros(d, dtype=bool), a])[: self.LENGTH]
        assert np.array_equal(s.shift(d).characteristic(self.LENGTH), shifted)
        assert s.equals(t) is bool(np.array_equal(a, b))
        assert s.issubset(t) is (not np.any(a & ~b))
        assert s.issubset(s.union(t))
