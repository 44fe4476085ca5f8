import itertools
from fractions import Fraction
from math import comb

import pytest

from golden import EX1_P, PUE_P
from oracles import column_permutation_equivalent, failing_conditions
from pdacache import (
    STAR,
    MnParameters,
    PdaArray,
    brute_force_search,
    build_mn_pda,
    paper_exemplar,
    pda_stats,
    table_one_parameters,
    validate_pda,
)
from pdacache.errors import InvalidParameter, InvalidT, SearchSpaceTooLarge, UnknownExemplar


class TestMn:
    def test_golden_4_2(self):
        arr = build_mn_pda(4, 2)
        assert arr == PdaArray(4, 6, 3, 4, PUE_P)

    def test_t0_is_unicast(self):
        arr = build_mn_pda(2, 0)
        assert arr.grid == ((0, 1),)
        assert arr.params == (2, 1, 0, 2)

    def test_5_2(self):
        arr = build_mn_pda(5, 2)
        assert arr.params == (5, 10, 4, 10)
        assert validate_pda(arr).ok
        stats = pda_stats(arr)
        assert stats.is_regular and stats.regularity_g == 3

    def test_t_equal_k_is_full_cache(self):
        arr = build_mn_pda(3, 3)
        assert arr.params == (3, 1, 1, 0)
        assert validate_pda(arr).ok

    @pytest.mark.parametrize("K,t", [(4, 5), (4, -1), (0, 0)])
    def test_invalid_t(self, K, t):
        with pytest.raises(InvalidT):
            build_mn_pda(K, t)

    @pytest.mark.parametrize("K", range(1, 9))
    def test_valid_and_regular(self, K):
        for t in range(K + 1):
            arr = build_mn_pda(K, t)
            assert validate_pda(arr).ok
            p = MnParameters(K, t)
            assert arr.params == (K, p.F, p.Z, p.S)
            if t < K:
                stats = pda_stats(arr)
                assert stats.is_regular and stats.regularity_g == t + 1

    @pytest.mark.parametrize("K,t", [(k, t) for k in range(1, 8) for t in range(k)])
    def test_integers_are_subsets(self, K, t):
        arr = build_mn_pda(K, t)
        rows = list(itertools.combinations(range(K), t))
        seen = {}
        for s, cells in arr.cells_by_integer().items():
            sets = {frozenset(rows[j]) | {k} for j, k in cells}
            assert len(sets) == 1
            (subset,) = sets
            assert len(subset) == t + 1
            seen[subset] = s
        assert len(seen) == comb(K, t + 1)


class TestExemplars:
    def test_ex1(self):
        assert paper_exemplar("ex1") == PdaArray(4, 2, 1, 2, EX1_P)

    def test_pue_example(self):
        assert paper_exemplar("pue_example") == build_mn_pda(4, 2)

    def test_unknown(self):
        with pytest.raises(UnknownExemplar):
            paper_exemplar("bogus")


class TestTableOne:
    def test_yct_a(self):
        e = table_one_parameters("YCT-A", q=3, m=2)
        assert (e.K, e.M_over_N, e.F, e.S) == (9, Fraction(1, 3), 9, 18)

    def test_pda2(self):
        e = table_one_parameters("PDA2", q=3, z=2, m=2)
        assert (e.K, e.M_over_N, e.F, e.S) == (9, Fraction(2, 3), 18, 9)

    def test_mn(self):
        e = table_one_parameters("MN", K=4, t=2)
        assert (e.K, e.M_over_N, e.F, e.S) == (4, Fraction(1, 2), 6, 4)

    def test_yct_b(self):
        e = table_one_parameters("YCT-B", q=3, m=2)
        assert (e.K, e.M_over_N, e.F, e.S) == (9, Fraction(2, 3), 18, 9)

    def test_pda2_floor(self):
        e = table_one_parameters("PDA2", q=5, z=2, m=1)
        assert (e.F, e.S) == ((4 // 3) * 5, 15)

    @pytest.mark.parametrize(
        "scheme,params,match",
        [
            ("YCT-A", dict(q=1, m=2), "q >= 2"),
            ("YCT-A", dict(q=3, m=0), "m >= 1"),
            ("PDA2", dict(q=3, z=3, m=1), "z <= 2"),
            ("PDA2", dict(q=3, z=0, m=1), "z >= 1"),
            ("PDA2", dict(q=3, m=1), "missing parameter 'z'"),
            ("MN", dict(K=3, t=4), "t <= 3"),
            ("nope", dict(), "unknown"),
        ],
    )
    def test_invalid(self, scheme, params, match):
        with pytest.raises(InvalidParameter, match=match):
            table_one_parameters(scheme, **params)


def canonical(grid, F, K):
    """Relabel integers by first use in column-major order."""
    relabel = {}
    for k in range(K):
        for j in range(F):
            x = grid[j][k]
            if x != "*" and x not in relabel:
                relabel[x] = len(relabel)
    return tuple(tuple("*" if x == "*" else relabel[x] for x in row) for row in grid)


def enumerate_all(K, F, Z, S):
    """Every valid PDA with these parameters, by trying every grid."""
    found = set()
    for cells in itertools.product(["*", *range(S)], repeat=K * F):
        grid = [list(cells[j * K:(j + 1) * K]) for j in range(F)]
        if not failing_conditions(grid, Z, S):
            found.add(canonical(grid, F, K))
    return found


def as_plain(arr):
    return tuple(tuple("*" if x is STAR else x for x in row) for row in arr.grid)


class TestBruteForce:
    def test_ex1_params(self):
        found = brute_force_search(4, 2, 1, 2)
        assert found
        assert any(column_permutation_equivalent(EX1_P, as_plain(a)) for a in found)

    def test_no_integer_cells(self):
        assert brute_force_search(2, 2, 2, 1) == []

    def test_2_2_1_1(self):
        found = brute_force_search(2, 2, 1, 1)
        assert PdaArray(2, 2, 1, 1, [[STAR, 0], [0, STAR]]) in found

    @pytest.mark.parametrize(
        "params",
        [(2, 2, 1, 1), (2, 2, 0, 2), (2, 2, 0, 4), (3, 2, 1, 2), (3, 2, 1, 3), (2, 3, 1, 2),
         (2, 3, 2, 1), (4, 2, 1, 2), (3, 2, 0, 3), (1, 3, 1, 2)],
    )
    def test_matches_exhaustive_enumeration(self, params):
        K, F, Z, S = params
        expected = enumerate_all(K, F, Z, S)
        got = {as_plain(a) for a in brute_force_search(K, F, Z, S)}
        assert got == expected

    def test_limit(self):
        assert len(brute_force_search(4, 4, 2, 6, limit=3)) == 3

    def test_results_are_valid(self):
        for arr in brute_force_search(3, 4, 2, 3, limit=50):
            assert validate_pda(arr).ok
            assert arr.params == (3, 4, 2, 3)

    def test_cap(self):
        with pytest.raises(SearchSpaceTooLarge):
            brute_force_search(3, 6, 1, 2)

    def test_all_star(self):
        assert brute_force_search(2, 2, 2, 0) == [PdaArray(2, 2, 2, 0, [[STAR, STAR]] * 2)]

    def test_impossible(self):
        assert brute_force_search(2, 2, 1, 3) == []
