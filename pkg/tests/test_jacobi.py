from __future__ import annotations

import random
from itertools import permutations

import pytest

from oracles import jacobi_classes

from ftknots.diagrams.chord import ChordDiagram
from ftknots.diagrams.jacobi import (
    JacobiDiagram,
    enumerate_jacobi,
    haired_tetrahedron,
    has_two_nonadjacent_insulated,
    insulated_vertices,
    is_good_vertex,
    parse_jacobi,
    random_picker,
    read_jacobi,
    stu_reduce,
    wheel,
)
from ftknots.errors import ValidationError

TRIPOD = parse_jacobi("legs 3\nedge p0 v0\nedge p1 v0\nedge p2 v0\n")


def relabel(j: JacobiDiagram, rng: random.Random) -> JacobiDiagram:
    """Same diagram with the loop rotated and internal vertices renumbered."""
    m, k = j.n_legs, j.n_internal
    r = rng.randrange(max(m, 1))
    perm = list(range(k))
    rng.shuffle(perm)

    def f(x):
        return (x + r) % m if x < m else m + perm[x - m]

    return JacobiDiagram(m, k, tuple((f(a), f(b)) for a, b in j.edges))


class TestValidation:
    def test_parse_round_trip(self):
        w = wheel(3)
        assert parse_jacobi(w.to_text()) == w

    def test_read(self, tmp_path):
        f = tmp_path / "y.txt"
        f.write_text("# tripod\nlegs 3\nedge p0 v0\nedge p1 v0\nedge p2 v0\n")
        assert read_jacobi(f) == TRIPOD

    @pytest.mark.parametrize("text", [
        "edge p0 p1",                                   # no legs line
        "legs 2\nedge p0 p1\nedge p0 p1",               # leg of degree 2
        "legs 2\nedge p0 v0\nedge p1 v0",               # internal vertex of degree 2
        "legs 2\nedge p0 p2",                           # unknown leg
        "legs 1\nedge p0 v1\nedge v1 v1",               # skipped v0 / loop
        "legs 4\nedge p0 p1\nedge p2 p3\nedge v0 v1\nedge v0 v1\nedge v0 v1",  # floating piece
        "legs 2\nedge p0 x1",
        "legs 2\nbogus",
    ])
    def test_rejects(self, text):
        with pytest.raises(ValidationError):
            parse_jacobi(text)

    def test_disconnected_internal_graph(self):
        # a theta graph floating off the loop next to a chord
        edges = ((0, 1), (2, 3), (2, 3), (2, 3))
        with pytest.raises(ValidationError, match="connected"):
            JacobiDiagram(2, 2, edges)

    def test_loop_edge(self):
        with pytest.raises(ValidationError, match="loop"):
            JacobiDiagram(1, 1, ((0, 1), (1, 1)))


class TestWheel:
    def test_shape(self):
        w = wheel(3)
        assert (w.n_legs, w.n_internal, w.degree) == (3, 3, 3)
        assert insulated_vertices(w) == set()

    def test_bad_perm(self):
        with pytest.raises(ValidationError):
            wheel(3, [0, 0, 1])
        with pytest.raises(ValidationError):
            wheel(1)

    def test_degree_two_accepted(self):
        assert wheel(2).degree == 2

    @pytest.mark.parametrize("n", range(2, 7))
    def test_term_count(self, n):
        assert stu_reduce(wheel(n)).terms == 2 ** n

    def test_rotated_labels_are_isomorphic(self):
        assert wheel(3).isomorphic(wheel(3, [1, 2, 0]))

    def test_permutation_example(self):
        a = stu_reduce(wheel(4)).ham()
        b = stu_reduce(wheel(4, [2, 1, 0, 3])).ham()
        assert a == b

    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    def test_ham_is_one(self, n):
        rng = random.Random(n)
        perms = [list(range(n))] + [rng.sample(range(n), n) for _ in range(12)]
        assert [stu_reduce(wheel(n, p)).ham() for p in perms] == [1] * len(perms)


class TestStu:
    def test_chord_input(self):
        d = ChordDiagram.parse("1 2 1 2")
        res = stu_reduce(JacobiDiagram.from_chord(d))
        assert set(res) == {d} and res.terms == 1

    def test_tripod(self):
        # the two legs split from p0 land next to p1, p2 in both orders
        res = stu_reduce(TRIPOD)
        assert res.terms == 2
        assert {str(d) for d in res} == {"1 1 2 2", "1 2 1 2"}

    def test_terminal_degree(self):
        for j in enumerate_jacobi(3):
            assert all(d.degree == 3 for d in stu_reduce(j))
            assert stu_reduce(j).terms == 2 ** j.n_internal

    def test_order_independence_sample(self):
        rng = random.Random(1)
        for j in enumerate_jacobi(4)[::7]:
            base = stu_reduce(j).ham()
            for _ in range(5):
                assert stu_reduce(j, random_picker(rng)).ham() == base


class TestInsulated:
    def test_haired_tetrahedron(self):
        t = haired_tetrahedron()
        assert t.degree == 4
        # all four tetrahedron corners are insulated; only the two hair vertices touch the loop
        assert insulated_vertices(t) == {0, 1, 2, 3}
        assert has_two_nonadjacent_insulated(t)

    def test_good_vertices(self):
        t = haired_tetrahedron()
        assert all(is_good_vertex(t, v) for v in range(6))
        # pendant structure: removing v0 strands v1 and v2
        j = parse_jacobi("legs 1\nedge p0 v0\nedge v0 v1\nedge v0 v2\nedge v1 v2\nedge v1 v2")
        assert not is_good_vertex(j, 0)
        assert is_good_vertex(j, 1)
        assert insulated_vertices(j) == {1, 2}

    def test_unknown_vertex(self):
        with pytest.raises(ValidationError):
            is_good_vertex(wheel(3), 7)

    def test_degree_two_iv_diagrams_vanish(self):
        ivs = enumerate_jacobi(2, "has_iv")
        assert len(ivs) == 1
        assert all(len(stu_reduce(j)) == 0 for j in ivs)

    def test_degree_two_iv_not_empty(self):
        assert enumerate_jacobi(2, "has_iv") != []

    @pytest.mark.parametrize("n", [3, 4])
    def test_ham_vanishes(self, n):
        assert [stu_reduce(j).ham() for j in enumerate_jacobi(n, "has_iv")].count(1) == 0

    @pytest.mark.slow
    def test_ham_vanishes_degree_five(self):
        assert [stu_reduce(j).ham() for j in enumerate_jacobi(5, "has_iv")].count(1) == 0


class TestEnumerate:
    def test_degree_one(self):
        (j,) = enumerate_jacobi(1)
        assert j.to_chord_diagram() == ChordDiagram.parse("1 1")

    def test_filters(self):
        with pytest.raises(ValidationError):
            enumerate_jacobi(3, "bogus")
        with pytest.raises(ValidationError):
            enumerate_jacobi(6)

    def test_chord_part_matches_chord_enumeration(self):
        from ftknots.diagrams.chord import enumerate_chord_diagrams

        for n in range(1, 5):
            chords = sorted(j.to_chord_diagram() for j in enumerate_jacobi(n) if j.is_chord_diagram())
            assert chords == enumerate_chord_diagrams(n)

    def test_four_has_2iv_contains_tetrahedron(self):
        certs = {j.certificate() for j in enumerate_jacobi(4, "has_2iv")}
        assert haired_tetrahedron().certificate() in certs

    def test_no_duplicates(self):
        for n in range(1, 5):
            certs = [j.certificate() for j in enumerate_jacobi(n)]
            assert len(certs) == len(set(certs))

    def test_certificate_invariance(self):
        rng = random.Random(2)
        for j in enumerate_jacobi(4)[::5]:
            for _ in range(4):
                assert relabel(j, rng).certificate() == j.certificate()

    def test_certificate_separates(self):
        # wheels with different leg orders are distinct diagrams in general
        a = wheel(4)
        b = wheel(4, [0, 2, 1, 3])
        assert a.certificate() != b.certificate()
        assert not a.isomorphic(b)

    def test_exhaustive_relabelling_agrees(self):
        # brute-force canonical form over every rotation and vertex numbering
        def brute(j):
            m, k = j.n_legs, j.n_internal
            best = None
            for r in range(max(m, 1)):
                for perm in permutations(range(k)):
                    def f(x):
                        return (x - r) % m if x < m else m + perm[x - m]
                    enc = tuple(sorted(tuple(sorted((f(a), f(b)))) for a, b in j.edges))
                    best = enc if best is None or enc < best else best
            return best

        for n in (2, 3):
            js = enumerate_jacobi(n)
            assert len({brute(j) for j in js}) == len(js)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_against_networkx(self, n):
        classes = jacobi_classes(n)
        assert len(enumerate_jacobi(n)) == len(classes)
        assert len(enumerate_jacobi(n, "has_iv")) == sum(1 for c in classes if c[2][0])
        assert len(enumerate_jacobi(n, "has_2iv")) == sum(1 for c in classes if c[2][1])

    @pytest.mark.slow
    def test_against_networkx_degree_four(self):
        classes = jacobi_classes(4)
        assert len(enumerate_jacobi(4)) == len(classes) == 142
        assert len(enumerate_jacobi(4, "has_iv")) == sum(1 for c in classes if c[2][0]) == 77
        assert len(enumerate_jacobi(4, "has_2iv")) == sum(1 for c in classes if c[2][1]) == 46

    def test_frozen_counts(self):
        assert [len(enumerate_jacobi(n)) for n in (1, 2, 3, 4)] == [1, 5, 22, 142]
        assert [len(enumerate_jacobi(n, "has_iv")) for n in (1, 2, 3, 4)] == [0, 1, 10, 77]
        assert [len(enumerate_jacobi(n, "has_2iv")) for n in (1, 2, 3, 4)] == [0, 0, 4, 46]
