from __future__ import annotations

import random
from math import prod

import pytest
from hypothesis import given, strategies as st

from oracles import ham_brute

from ftknots.diagrams.chord import (
    ChordDiagram,
    IntersectionGraph,
    canonicalize,
    enumerate_chord_diagrams,
    four_t_relators,
    ham,
    hamiltonian_count,
    intersection_graph,
    is_separated,
    raw_pairings,
)
from ftknots.errors import ValidationError


def D(text: str) -> ChordDiagram:
    return ChordDiagram.parse(text)


def random_word(rng: random.Random, n: int) -> tuple[int, ...]:
    w = [i for i in range(1, n + 1) for _ in (0, 1)]
    rng.shuffle(w)
    return tuple(w)


words = st.integers(1, 7).flatmap(
    lambda n: st.permutations([i for i in range(1, n + 1) for _ in (0, 1)])
).map(tuple)


class TestCanonical:
    def test_relabel(self):
        assert str(canonicalize(D("2 1 2 1"))) == "1 2 1 2"

    def test_rotation(self):
        assert D("1 2 1 2").rotated(1).canonical() == D("1 2 1 2")

    def test_all_rotations_agree(self):
        d = D("1 4 2 1 3 2 4 3")
        forms = {d.rotated(r).canonical() for r in range(8)}
        assert len(forms) == 1

    def test_malformed(self):
        for bad in ("1 2 1", "1 1 1 2 2 2", "a b"):
            with pytest.raises(ValidationError):
                D(bad)

    @given(words, st.integers(0, 13))
    def test_idempotent_and_rotation_invariant(self, w, r):
        d = ChordDiagram(w)
        c = d.canonical()
        assert c.canonical() == c and c.is_canonical()
        assert d.rotated(r).canonical() == c


class TestEnumerate:
    def test_degree_one(self):
        assert enumerate_chord_diagrams(1) == [D("1 1")]

    def test_degree_two(self):
        # "1 2 2 1" rotates to "1 1 2 2", so three pairings give two classes
        assert [str(d) for d in enumerate_chord_diagrams(2)] == ["1 1 2 2", "1 2 1 2"]
        assert D("1 2 2 1").canonical() == D("1 1 2 2")
        assert sum(1 for _ in raw_pairings(2)) == 3

    def test_raw_counts(self):
        for n in range(1, 7):
            assert sum(1 for _ in raw_pairings(n)) == prod(range(1, 2 * n, 2))

    def test_class_counts(self):
        # chord diagrams up to rotation (OEIS A007769)
        assert [len(enumerate_chord_diagrams(n)) for n in range(1, 7)] == [1, 2, 5, 18, 105, 902]

    def test_covers_every_pairing(self):
        rng = random.Random(5)
        basis = set(enumerate_chord_diagrams(5))
        for _ in range(200):
            assert ChordDiagram(random_word(rng, 5)).canonical() in basis

    def test_guard(self):
        with pytest.raises(ValidationError):
            enumerate_chord_diagrams(8)
        with pytest.raises(ValidationError):
            enumerate_chord_diagrams(0)


class TestIntersectionGraph:
    def test_crossing(self):
        assert intersection_graph(D("1 2 1 2")).edges() == [(0, 1)]

    def test_nested(self):
        assert intersection_graph(D("1 2 2 1")).edges() == []

    def test_path(self):
        assert intersection_graph(D("1 2 1 3 2 3")).edges() == [(0, 1), (1, 2)]

    @given(words)
    def test_against_alternation(self, w):
        pos = {}
        for i, x in enumerate(w):
            pos.setdefault(x, []).append(i)
        labels = []
        for x in w:
            if x not in labels:
                labels.append(x)
        g = intersection_graph(ChordDiagram(w))
        for i, a in enumerate(labels):
            for j, b in enumerate(labels):
                if i < j:
                    a1, a2 = pos[a]
                    inside = sum(a1 < p < a2 for p in pos[b])
                    assert g.adjacency[i][j] == (inside == 1)


class TestHam:
    def test_triangle(self):
        assert hamiltonian_count(intersection_graph(D("1 2 3 1 2 3"))) == 1
        assert ham(D("1 2 3 1 2 3")) == 1

    def test_path(self):
        assert hamiltonian_count(intersection_graph(D("1 2 1 3 2 3"))) == 0

    def test_k4_and_c4(self):
        assert hamiltonian_count(intersection_graph(D("1 2 3 4 1 2 3 4"))) == 3
        assert ham(D("1 2 3 4 1 2 3 4")) == 1
        g = intersection_graph(D("1 4 2 1 3 2 4 3"))
        assert len(g.edges()) == 4 and hamiltonian_count(g) == 1

    def test_disconnected(self):
        assert hamiltonian_count(intersection_graph(D("1 1 2 2 3 3"))) == 0

    def test_small_graphs(self):
        assert hamiltonian_count(IntersectionGraph.from_edges(2, [(0, 1)])) == 0
        assert hamiltonian_count(IntersectionGraph.from_edges(1, [])) == 0

    def test_complete_graphs(self):
        for n in range(3, 9):
            g = IntersectionGraph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
            assert hamiltonian_count(g) == prod(range(1, n)) // 2

    @pytest.mark.parametrize("n", range(1, 6))
    def test_brute_force_exhaustive(self, n):
        for d in enumerate_chord_diagrams(n):
            g = intersection_graph(d)
            assert hamiltonian_count(g) == ham_brute(g.n, g.edges())

    def test_brute_force_random(self):
        rng = random.Random(7)
        for n in (6, 7):
            for _ in range(60):
                g = intersection_graph(ChordDiagram(random_word(rng, n)))
                assert hamiltonian_count(g) == ham_brute(g.n, g.edges())
        for _ in range(60):
            n = rng.randint(3, 7)
            edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.6]
            assert hamiltonian_count(IntersectionGraph.from_edges(n, edges)) == ham_brute(n, edges)


class TestSeparated:
    def test_examples(self):
        assert is_separated(D("1 1 2 2"))
        assert not is_separated(D("1 2 1 2"))
        assert is_separated(D("3 1 2 1 2 3"))
        assert not is_separated(D("1 1"))

    @pytest.mark.parametrize("n", range(1, 7))
    def test_ham_vanishes(self, n):
        assert all(ham(d) == 0 for d in enumerate_chord_diagrams(n) if is_separated(d))


def _rel_sums(n):
    return [sum(ham(d) for d in r) % 2 for r in four_t_relators(n)]


class TestFourT:
    def test_shape(self):
        for n in (2, 3, 4):
            for r in four_t_relators(n):
                assert len(r) == 4 and list(r) == sorted(r)
                assert all(d.is_canonical() and d.degree == n for d in r)

    def test_counts(self):
        assert [len(four_t_relators(n)) for n in (2, 3, 4, 5)] == [1, 4, 34, 396]

    def test_relator_is_endpoint_slide(self):
        # moving an endpoint of chord 1 around chord 2 in "1 2 3 1 2 3"
        r = set().union(*four_t_relators(3))
        assert D("1 2 3 1 2 3") in r and D("1 1 2 3 2 3") in r

    def test_degree_three_triangle_relator(self):
        rels = [r for r in four_t_relators(3) if D("1 2 3 1 2 3") in r]
        assert rels
        assert any(sum(ham(d) for d in r) % 2 == 0 for r in rels)

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_ham_vanishes(self, n):
        assert not any(_rel_sums(n))

    @pytest.mark.slow
    def test_ham_vanishes_degree_six(self):
        assert not any(_rel_sums(6))
