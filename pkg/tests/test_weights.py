"""Canonicalization, case dispatch, and the input grammar."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from radsum import (
    EXACT,
    FLOAT,
    CaseTag,
    DegenerateVectorError,
    InputError,
    canonicalize,
    case_of,
    exact_sqrt,
    from_squares,
    parse_weights,
)


class TestCanonicalizeExamples:
    def test_three_four_five(self):
        w = canonicalize([3, 4], EXACT)
        assert w.values == (Fraction(4, 5), Fraction(3, 5))
        assert w.scale == 5
        wf = canonicalize([3.0, 4.0], FLOAT)
        assert wf.values == (0.8, 0.6)

    def test_sign_absorption(self):
        w = canonicalize([-1], EXACT)
        assert w.values == (Fraction(1),)

    def test_symmetric_pair(self):
        w = canonicalize([1, 1], EXACT)
        assert w.values[0] == w.values[1] == exact_sqrt(Fraction(1, 2))
        assert w.squares == (Fraction(1, 2), Fraction(1, 2))

    def test_norm_squared_is_one(self):
        w = canonicalize([2, 5, 1], EXACT)
        assert sum(w.squares) == 1

    def test_zero_entries_kept(self):
        w = canonicalize([1, 0], EXACT)
        assert w.values == (Fraction(1), Fraction(0))
        assert w.n == 2


class TestCanonicalizeErrors:
    def test_all_zero(self):
        with pytest.raises(DegenerateVectorError, match="degenerate vector"):
            canonicalize([0, 0], EXACT)
        with pytest.raises(DegenerateVectorError, match="degenerate vector"):
            canonicalize([0.0], FLOAT)

    def test_non_finite(self):
        with pytest.raises(InputError, match="invalid input"):
            canonicalize([1.0, float("nan")], FLOAT)
        with pytest.raises(InputError, match="invalid input"):
            canonicalize([float("inf")], FLOAT)

    def test_empty(self):
        with pytest.raises(InputError):
            canonicalize([], FLOAT)

    def test_float_rejected_in_exact_mode(self):
        with pytest.raises(InputError, match="float"):
            canonicalize([0.5, 0.5], EXACT)

    def test_multi_radical_rejected_in_exact_mode(self):
        with pytest.raises(InputError, match="rational squares"):
            canonicalize([1 + exact_sqrt(2)], EXACT)

    def test_bad_mode(self):
        with pytest.raises(InputError):
            canonicalize([1], "decimal")


class TestCanonicalizeProperties:
    @given(
        st.lists(
            st.floats(min_value=-1e6, max_value=1e6, allow_nan=False),
            min_size=1,
            max_size=8,
        ).filter(lambda xs: any(abs(x) > 1e-9 for x in xs))
    )
    @settings(max_examples=200, deadline=None)
    def test_float_idempotent_and_unit(self, xs):
        w = canonicalize(xs, FLOAT)
        again = canonicalize(list(w.values), FLOAT)
        assert again.values == w.values
        assert abs(math.fsum(v * v for v in w.values) - 1.0) <= 1e-12

    @given(
        st.lists(
            st.fractions(min_value=-20, max_value=20, max_denominator=20),
            min_size=1,
            max_size=4,
        ).filter(lambda xs: any(xs)),
        st.randoms(use_true_random=False),
    )
    @settings(max_examples=100, deadline=None)
    def test_exact_invariance_under_signs_and_permutation(self, xs, rnd):
        w = canonicalize(xs, EXACT)
        shuffled = [x if rnd.random() < 0.5 else -x for x in xs]
        rnd.shuffle(shuffled)
        assert canonicalize(shuffled, EXACT).values == w.values

    @given(
        st.lists(
            st.fractions(min_value=-20, max_value=20, max_denominator=20),
            min_size=1,
            max_size=4,
        ).filter(lambda xs: any(xs))
    )
    @settings(max_examples=100, deadline=None)
    def test_exact_idempotent(self, xs):
        w = canonicalize(xs, EXACT)
        assert canonicalize(list(w.values), EXACT).values == w.values

    def test_extreme_scales_do_not_overflow(self):
        w = canonicalize([1e200, 1e200], FLOAT)
        assert w.values[0] == pytest.approx(1 / math.sqrt(2))
        w = canonicalize([1e-200, 1e-200], FLOAT)
        assert w.values[0] == pytest.approx(1 / math.sqrt(2))


class TestFromSquares:
    def test_normalizes_square_sum(self):
        w = from_squares([16, 9])
        assert w.values == (Fraction(4, 5), Fraction(3, 5))

    def test_irrational_weights(self):
        w = from_squares([Fraction(1, 2), Fraction(1, 2)])
        assert w.values[0] == exact_sqrt(Fraction(1, 2))
        assert w.squares == (Fraction(1, 2), Fraction(1, 2))

    def test_negative_rejected(self):
        with pytest.raises(InputError):
            from_squares([Fraction(1, 2), Fraction(-1, 2)])


class TestCaseOf:
    def test_examples(self):
        assert case_of(canonicalize([3, 4], EXACT)) is CaseTag.CASE1
        assert case_of(canonicalize([1], EXACT)) is CaseTag.CASE2
        assert case_of(from_squares([Fraction(1, 4)] * 4)) is CaseTag.CASE2

    def test_exact_tie_is_case2(self):
        # x = (3/5, 2/5, 1/5 * 12 of them): x1 + x2 = 1 exactly
        squares = [Fraction(9, 25), Fraction(4, 25)] + [Fraction(1, 25)] * 12
        w = from_squares(squares)
        assert w.x1 + w.x2 == 1
        assert case_of(w) is CaseTag.CASE2

    def test_n1_uses_zero_x2(self):
        w = canonicalize([7], EXACT)
        assert w.x2 == 0
        assert case_of(w) is CaseTag.CASE2


class TestGrammar:
    def test_decimal_list(self):
        w = parse_weights("0.8,0.6")
        assert w.mode == FLOAT
        assert w.values == (0.8, 0.6)

    def test_squared_rationals(self):
        w = parse_weights("sq:16/25,9/25")
        assert w.mode == EXACT
        assert w.values == (Fraction(4, 5), Fraction(3, 5))

    def test_squares_normalized(self):
        assert parse_weights("sq:16,9").values == (Fraction(4, 5), Fraction(3, 5))

    def test_whitespace_tolerated(self):
        w = parse_weights("sq: 1/4 , 1/4 , 1/4 , 1/4 ")
        assert w.values == (Fraction(1, 2),) * 4

    @pytest.mark.parametrize(
        "text", ["", "sq:", "abc", "sq:1/0", "sq:-1/4", "0.5,,0.5", "sq:1/4;1/4"]
    )
    def test_bad_grammar(self, text):
        with pytest.raises(InputError):
            parse_weights(text)
