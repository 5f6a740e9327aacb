from __future__ import annotations

import random
from fractions import Fraction

import pytest

from ftknots.diagrams.chord import ChordDiagram, ham
from ftknots.errors import ValidationError
from ftknots.ranks import (
    RelatorSystem,
    build_system,
    check_weight_system,
    gf2_rank,
    parse_kinds,
    rank_of_rows,
    theta_quotient,
    theta_system,
)


def naive_rank(rows: list[int], width: int) -> int:
    """Row reduction on explicit bit lists, pivoting on the lowest column."""
    mat = [[(r >> c) & 1 for c in range(width)] for r in rows]
    rank = 0
    for c in range(width):
        p = next((i for i in range(rank, len(mat)) if mat[i][c]), None)
        if p is None:
            continue
        mat[rank], mat[p] = mat[p], mat[rank]
        for i in range(len(mat)):
            if i != rank and mat[i][c]:
                mat[i] = [a ^ b for a, b in zip(mat[i], mat[rank])]
        rank += 1
    return rank


class TestGf2:
    def test_empty(self):
        sys_ = build_system(3, [])
        assert gf2_rank(sys_) == (0, 5)

    def test_duplicates(self):
        sys_ = build_system(4, "4T")
        assert gf2_rank(sys_.with_relators(sys_.relators)) == gf2_rank(sys_)

    def test_random_against_naive(self):
        rng = random.Random(4)
        for _ in range(100):
            width = rng.randint(1, 40)
            rows = [rng.getrandbits(width) for _ in range(rng.randint(0, 50))]
            r = rank_of_rows(rows)
            assert r == naive_rank(rows, width)
            rng.shuffle(rows)
            assert rank_of_rows(rows) == r

    def test_bad_system(self):
        basis = (ChordDiagram.parse("1 1"),)
        with pytest.raises(ValidationError):
            RelatorSystem(1, basis + basis, ())
        with pytest.raises(ValidationError):
            RelatorSystem(1, basis, (4,))


class TestBuild:
    def test_kinds(self):
        assert parse_kinds("4T, sep,2iv") == {"fourT", "separated", "twoiv"}
        with pytest.raises(ValidationError):
            parse_kinds("5T")

    def test_guards(self):
        with pytest.raises(ValidationError):
            build_system(6, "iv")
        with pytest.raises(ValidationError):
            build_system(7, "4T")

    def test_degree_two(self):
        assert gf2_rank(build_system(2, "4T,sep"))[1] == 1

    def test_primitive_dimensions(self):
        # mod-2 dimensions of A_n modulo separated diagrams, n = 2..6
        assert [gf2_rank(build_system(n, "4T,sep"))[1] for n in range(2, 7)] == [1, 1, 2, 3, 5]

    def test_degree_four_iv(self):
        assert gf2_rank(build_system(4, "4T,sep,iv"))[1] == 1

    def test_degree_four_2iv(self):
        assert gf2_rank(build_system(4, "4T,sep,2iv"))[1] == 2

    def test_degree_three_iv(self):
        assert gf2_rank(build_system(3, "4T,sep,iv"))[1] == 1

    def test_degree_five_iv(self):
        assert gf2_rank(build_system(5, "4T,sep,iv"))[1] == 1


class TestWeightSystem:
    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    def test_ham_descends(self, n):
        assert check_weight_system(build_system(n, "4T,sep"), ham)

    @pytest.mark.parametrize("n", [4, 5])
    def test_ham_descends_with_iv(self, n):
        assert check_weight_system(build_system(n, "4T,sep,iv"), ham)

    def test_constant_one(self):
        sys_ = build_system(4, "4T")
        for r in sys_.relators:
            single = RelatorSystem(4, sys_.basis, (r,))
            assert check_weight_system(single, lambda d: 1) == (bin(r).count("1") % 2 == 0)

    def test_indicator_counterexample(self):
        sys_ = build_system(4, "4T")
        r = next(r for r in sys_.relators if r)
        target = sys_.basis[r.bit_length() - 1]
        assert not check_weight_system(sys_, lambda d: int(d == target))


class TestTheta:
    def test_system_shape(self):
        s = theta_system(5)
        assert s.generators[-1] == (0, 1, 3)
        assert all(sum(t) == 4 and list(t) == sorted(t) for t in s.generators)

    def test_rejects(self):
        for n in (4, 1, 17):
            with pytest.raises(ValidationError):
                theta_quotient(n)

    @pytest.mark.parametrize("n", [3, 5, 7, 9, 11, 13, 15])
    def test_dimension_one(self, n):
        assert theta_quotient(n) == (1, [(0, 1, n - 2)])

    def test_base_relation(self):
        # (0,0,n-2) bumped gives (0,0,n-1) + 2 (0,1,n-2)
        s = theta_system(5)
        col = {t: i for i, t in enumerate(s.generators)}
        row = [Fraction(0)] * len(s.generators)
        row[col[(0, 0, 4)]] = 1
        row[col[(0, 1, 3)]] = 2
        assert tuple(row) in s.relators

    @pytest.mark.parametrize("n", [7, 9, 11, 13, 15])
    def test_dropping_kills_increases(self, n):
        assert theta_quotient(n, kill_all_nonzero=False)[0] > theta_quotient(n)[0]

    def test_dropping_kills_degree_five(self):
        assert theta_quotient(5, kill_all_nonzero=False)[0] > theta_quotient(5)[0]
