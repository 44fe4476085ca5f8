from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import DATA, mn_pdas, small_pdas
from golden import EX1_G, EX1_P, PROFILE, PUE_G, TABLE_PROFILE
from oracles import pue_subset_load_numerator
from pdacache import (
    GeneralizedPdaArray,
    PdaArray,
    build_mn_pda,
    compare,
    expand,
    load_from_gpda,
    load_pda,
    load_shortcut,
    pue_baseline,
    uniform_load,
)
from pdacache.errors import InvalidT, NonIntegralT, ProfileLengthMismatch, RatioMismatch

EX1 = PdaArray(4, 2, 1, 2, EX1_P)


class TestLoadFromGpda:
    def test_worked_example(self):
        r = load_from_gpda(GeneralizedPdaArray.from_rows(EX1_G))
        assert r.load == Fraction(5, 2)
        assert (r.load_num, r.load_den) == (5, 2)
        assert r.coding_gains == (2, 1, 1, 2, 2)

    def test_pue(self):
        r = load_from_gpda(GeneralizedPdaArray.from_rows(PUE_G))
        assert r.load == Fraction(11, 6)
        assert r.gain_histogram() == {3: 5, 2: 3, 1: 3}

    @pytest.mark.parametrize("pda", small_pdas()[::7] + mn_pdas(6), ids=str)
    def test_one_user_per_cache_is_s_over_f(self, pda):
        g, _ = expand(pda, (1,) * pda.num_caches)
        assert load_from_gpda(g).load == Fraction(pda.num_integers, pda.num_rows)


class TestShortcut:
    def test_worked_example(self):
        assert load_shortcut(EX1, PROFILE).load == Fraction(5, 2)

    def test_mn_9_3(self):
        r = load_shortcut(build_mn_pda(9, 3), TABLE_PROFILE)
        assert (r.load_num, r.load_den) == (897, 84)

    def test_mn_9_6(self):
        r = load_shortcut(build_mn_pda(9, 6), TABLE_PROFILE)
        assert (r.load_num, r.load_den) == (279, 84)

    def test_profile_length(self):
        with pytest.raises(ProfileLengthMismatch):
            load_shortcut(EX1, (1, 1))

    def test_unreduced_numerator(self):
        r = load_shortcut(build_mn_pda(9, 3), TABLE_PROFILE)
        assert r.load == Fraction(299, 28)
        assert r.load_num == 897


pool = small_pdas() + mn_pdas(6)


@st.composite
def pda_and_profile(draw):
    pda = draw(st.sampled_from(pool))
    counts = draw(
        st.lists(st.integers(0, 4), min_size=pda.num_caches, max_size=pda.num_caches)
        .filter(lambda c: sum(c) > 0)
    )
    return pda, tuple(counts)


@settings(max_examples=300, deadline=None)
@given(pda_and_profile())
def test_shortcut_matches_expansion(case):
    pda, counts = case
    g, _ = expand(pda, counts)
    a, b = load_shortcut(pda, counts), load_from_gpda(g)
    assert (a.load_num, a.load_den, a.coding_gains) == (b.load_num, b.load_den, b.coding_gains)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 7).flatmap(
    lambda K: st.tuples(st.integers(0, K - 1), st.lists(st.integers(0, 6), min_size=K, max_size=K))
))
def test_mn_numerator_is_subset_sum(case):
    t, counts = case
    K = len(counts)
    r = load_shortcut(build_mn_pda(K, t), counts)
    assert r.load_num == pue_subset_load_numerator(counts, t)


class TestUniform:
    def test_ex1(self):
        assert uniform_load(EX1, 2).load == 2

    def test_mn(self):
        assert uniform_load(build_mn_pda(4, 2), 1).load == Fraction(2, 3)

    @settings(max_examples=100, deadline=None)
    @given(st.sampled_from(pool), st.integers(1, 4))
    def test_matches_shortcut(self, pda, u):
        a = uniform_load(pda, u)
        b = load_shortcut(pda, (u,) * pda.num_caches)
        assert a.load == b.load
        assert a.transmissions == b.transmissions
        assert sorted(a.coding_gains) == sorted(b.coding_gains)

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            uniform_load(EX1, 0)


class TestPue:
    def test_worked_example(self):
        r = pue_baseline(4, Fraction(1, 2), PROFILE)
        assert (r.sub_packetization_F, r.load) == (6, Fraction(11, 6))

    def test_third(self):
        r = pue_baseline(9, Fraction(1, 3), TABLE_PROFILE)
        assert (r.sub_packetization_F, r.load_num) == (84, 897)
        assert r.decimal() == "10.68"

    def test_two_thirds(self):
        r = pue_baseline(9, Fraction(2, 3), TABLE_PROFILE)
        assert (r.sub_packetization_F, r.load_num) == (84, 279)
        assert r.decimal() == "3.321"

    def test_non_integral(self):
        with pytest.raises(NonIntegralT):
            pue_baseline(4, Fraction(1, 3), PROFILE)

    def test_out_of_range(self):
        with pytest.raises(InvalidT):
            pue_baseline(4, Fraction(3, 2), PROFILE)


class TestCompare:
    def test_worked_example(self):
        report = compare(EX1, PROFILE, Fraction(1, 2))
        ours, pue = report.rows
        assert (ours.sub_packetization_F, ours.load, ours.decimal()) == (2, Fraction(5, 2), "2.5")
        assert (pue.sub_packetization_F, pue.load, pue.decimal()) == (6, Fraction(11, 6), "1.833")

    def test_mn_with_one_user_each(self):
        ours, pue = compare(build_mn_pda(4, 2), (1, 1, 1, 1), "1/2").rows
        assert ours.load == pue.load
        assert ours.sub_packetization_F == pue.sub_packetization_F
        assert ours.coding_gains == pue.coding_gains

    def test_ratio_mismatch(self):
        with pytest.raises(RatioMismatch):
            compare(EX1, PROFILE, Fraction(1, 3))

    def test_default_ratio(self):
        assert compare(EX1, PROFILE).rows[1].load == Fraction(11, 6)

    def test_csv(self):
        csv_text = compare(EX1, PROFILE, "1/2").render_csv()
        assert csv_text == (
            "scheme,F,S,load_num,load_den,load_decimal\n"
            "ours,2,2,5,2,2.5\n"
            "PUE,6,4,11,6,1.833\n"
        )

    def test_table(self):
        text = compare(EX1, PROFILE, "1/2").render_table()
        assert text.splitlines() == [
            "scheme  F  S  load  decimal",
            "ours    2  2  5/2   2.5",
            "PUE     6  4  11/6  1.833",
        ]


def test_non_uniform_gains_vary():
    r = load_shortcut(EX1, PROFILE)
    assert len(set(r.coding_gains)) > 1
    assert len(set(load_shortcut(EX1, (2, 2, 2, 2)).coding_gains)) == 1


def _raw_shortcut(text, profile):
    """Load numerator and F straight from file text: Σ_s max L over columns carrying s."""
    rows = [ln.split() for ln in text.splitlines()[2:] if ln and not ln.startswith("#")]
    carriers = {}
    for row in rows:
        for k, tok in enumerate(row):
            if tok != "*":
                carriers.setdefault(int(tok), set()).add(k)
    return sum(max(profile[k] for k in ks) for ks in carriers.values()), len(rows)


@pytest.mark.parametrize(
    "name,expected",
    [("standin_q3_m2_a.pda", Fraction(14)), ("standin_q3_z2_m2.pda", Fraction(69, 18))],
)
def test_standin_loads_under_table_profile(name, expected):
    raw = (DATA / name).read_text()
    lines = [ln for ln in raw.splitlines() if not ln.startswith("#")]
    num, F = _raw_shortcut("\n".join(lines), TABLE_PROFILE)
    assert Fraction(num, F) == expected
    pda = load_pda(DATA / name)
    g, _ = expand(pda, TABLE_PROFILE)
    assert load_from_gpda(g).load == expected
