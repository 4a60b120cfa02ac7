from fractions import Fraction as F

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from harmonic_sched.euclid import euclid_trace, halt_number
from harmonic_sched.timing import (
    beats_biker_hiker,
    biker_hiker_time,
    optimal_time_two_type,
    percent,
    significant,
    total_time,
)

EPS = F(1, 200)


def row(r1, r2):
    h = optimal_time_two_type(r1, r2, 2)
    cyclic = total_time(h, r1 + r2 - 1, EPS)
    euclid = total_time(h, halt_number(euclid_trace(r1, r2)), EPS)
    return h, cyclic, euclid


class TestTable:
    def test_fibonacci_row(self):
        h, c, e = row(8, 5)
        assert h == F(26, 21)
        assert [significant(x.total) for x in (c, e)] == ["1.3031", "1.2681"]
        assert significant(h) == "1.2381"

    def test_large_row(self):
        h, c, e = row(180, 53)
        assert h == F(466, 413)
        assert significant(h) == "1.1283"
        assert significant(c.total) == "2.2933"
        assert significant(e.total) == "1.2183"

    def test_small_excess(self):
        _, c, e = row(8, 5)
        assert percent(c.excess_percent) == "5.3"
        assert percent(e.excess_percent) == "2.4"

    def test_large_excess_at_integer_precision(self):
        _, c, e = row(180, 53)
        assert percent(c.excess_percent, 0) == "103"
        assert percent(e.excess_percent, 0) == "8"
        # exact value, kept to record where the rounded figure comes from
        assert c.excess_percent == F(233 * 5 * 413, 10 * 466)

    def test_cyclic_total_is_h_plus_n_eps(self):
        h, c, _ = row(180, 53)
        assert c.total == h + 233 * EPS

    def test_zero_epsilon(self):
        rep = total_time(F(3, 2), 5, 0)
        assert rep.total == F(3, 2) and rep.excess_percent == 0

    def test_negative_inputs(self):
        with pytest.raises(ValueError):
            total_time(1, 2, F(-1, 10))
        with pytest.raises(ValueError):
            total_time(1, -1, 0)


class TestBikerHiker:
    def test_values(self):
        assert biker_hiker_time(8, 5, 2) == F(18, 13)
        assert biker_hiker_time(1, 1, 2) == F(3, 2)

    def test_equal_times_rejected(self):
        with pytest.raises(ValueError):
            optimal_time_two_type(3, 2, 1)
        with pytest.raises(ValueError):
            biker_hiker_time(3, 2, 1)

    def test_slow_first_type(self):
        assert beats_biker_hiker(3, 2, F(1, 2))


class TestRendering:
    @pytest.mark.parametrize(
        "value, text",
        [(F(1, 3), "0.33333"), (F(123456), "1.2346E+5"), (F(5, 2), "2.5000"), (F(0), "0"),
         (F(100005, 100000), "1.0001")],
    )
    def test_significant(self, value, text):
        assert significant(value) == text

    def test_percent_half_up(self):
        assert percent(F(105, 100), 1) == "1.1"


@given(
    st.integers(1, 500),
    st.integers(1, 500),
    st.fractions(min_value=F(1, 100), max_value=100, max_denominator=1000),
)
def test_optimum_beats_biker_hiker(r1, r2, T):
    assume(T != 1)
    assert optimal_time_two_type(r1, r2, T) < biker_hiker_time(r1, r2, T)


@given(st.fractions(min_value=1, max_value=10, max_denominator=50), st.integers(0, 100),
       st.fractions(min_value=0, max_value=1, max_denominator=1000))
def test_total_time_linear(h, halts, eps):
    rep = total_time(h, halts, eps)
    assert rep.total - rep.H == (halts + 1) * eps
