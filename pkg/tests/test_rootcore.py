import itertools

import numpy as np
import pytest

from sphc import rootcore as rc

TYPES = [("A", 1), ("A", 4), ("B", 3), ("C", 2), ("C", 4), ("D", 4), ("D", 5),
         ("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)]
COUNTS = {"A": lambda n: n * (n + 1) // 2, "B": lambda n: n * n, "C": lambda n: n * n,
          "D": lambda n: n * (n - 1)}
EXC = {("E", 6): 36, ("E", 7): 63, ("E", 8): 120, ("F", 4): 24, ("G", 2): 6}


@pytest.mark.parametrize("series,rank", TYPES)
def test_positive_root_counts(series, rank):
    rs = rc.build_root_system(series, rank)
    expected = EXC.get((series, rank)) or COUNTS[series](rank)
    assert rs.num_positive_roots == expected
    for b in rs.positive_roots:
        assert all(c >= 0 for c in b) and any(b)


@pytest.mark.parametrize("series,rank", [("C", 3), ("D", 4), ("F", 4), ("G", 2), ("E", 6)])
def test_reflections_permute_roots(series, rank):
    rs = rc.build_root_system(series, rank)
    roots = set(rs.positive_roots) | {tuple(-c for c in b) for b in rs.positive_roots}
    for beta in rs.positive_roots:
        s = rc.reflection(rs, beta)
        assert s.permutes_roots()
        assert {s(g) for g in roots} == roots
        assert s.determinant() == -1
        assert (s * s).is_identity()


def test_rejects_bad_types():
    for args in [("D", 3), ("E", 5), ("G", 3), ("Q", 2), ("A", 0)]:
        with pytest.raises(rc.RootSystemError):
            rc.build_root_system(*args)
    assert rc.matrix_root_system("D", 3).num_positive_roots == 6


def test_small_examples():
    a1 = rc.build_root_system("A", 1)
    assert a1.positive_roots == ((1,),)
    assert rc.reflection(a1, (1,))((1,)) == (-1,)
    g2 = rc.build_root_system("G", 2)
    assert g2.highest_short_root == (2, 1)
    f4 = rc.build_root_system("F", 4)
    assert (2, 3, 4, 2) in f4.positive_roots


def test_reflection_lengths():
    c2 = rc.build_root_system("C", 2)
    assert rc.reflection(c2, c2.from_ambient((2, 0))).length == 3
    e6 = rc.build_root_system("E", 6)
    assert rc.reflection(e6, (1, 2, 2, 3, 2, 1)).length == 21


def test_length_matches_inversion_count():
    rs = rc.build_root_system("F", 4)
    w = rc.product_of_reflections(rs, [(0, 1, 2, 2), (0, 1, 0, 0), (1, 1, 1, 0)])
    count = sum(1 for b in rs.positive_roots if not rs.is_positive(w(b)))
    assert w.length == count


def test_longest_elements():
    for series, rank, ell in [("E", 6, 36), ("E", 8, 120), ("C", 2, 4), ("D", 5, 20)]:
        rs = rc.build_root_system(series, rank)
        assert rs.w0.length == ell
        assert (rs.w0 * rs.w0).is_identity()
    c2 = rc.build_root_system("C", 2)
    assert np.array_equal(c2.w0.matrix, -np.eye(2))
    assert rc.longest_element(c2, ()).is_identity()
    assert rc.longest_element(c2, (1, 2)) == c2.w0


def test_rank_one_minus():
    for n in range(2, 6):
        rs = rc.build_root_system("C", n)
        assert rc.rank_one_minus(rs.w0) == n
        assert rc.rank_one_minus(rs.identity()) == 0
    e6 = rc.build_root_system("E", 6)
    tau = rc.graph_automorphism(e6)
    assert rc.rank_one_minus(rc.TwistedElement(e6.w0, tau, 1)) == 6


def test_criterion_values():
    f4 = rc.build_root_system("F", 4)
    w = rc.product_of_reflections(f4, [(2, 3, 4, 2), (0, 1, 2, 2)])
    assert rc.criterion_value(w) == 22
    for m in range(1, 5):
        rs = rc.build_root_system("A", 2 * m)
        t = rc.TwistedElement(rs.w0, rc.graph_automorphism(rs), 1)
        assert rc.criterion_value(t) == 2 * m * m + 3 * m
    d4 = rc.build_root_system("D", 4)
    t = rc.TwistedElement(d4.w0 * d4.simple_reflection(2), rc.triality(d4), 1)
    assert rc.criterion_value(t) == 14


@pytest.mark.parametrize("series,rank", [("A", 5), ("D", 4), ("E", 6)])
def test_diagram_automorphisms(series, rank):
    rs = rc.build_root_system(series, rank)
    autos = [rc.graph_automorphism(rs)] + ([rc.triality(rs)] if (series, rank) == ("D", 4) else [])
    for tau in autos:
        P = tau.matrix
        assert np.array_equal(np.linalg.matrix_power(P, tau.order), np.eye(rank, dtype=int))
        assert np.array_equal(P.T @ rs.pairing @ P, rs.pairing)
        assert set(tau(a) for a in rs.simple_roots) == set(rs.simple_roots)


def test_reduced_word_round_trip(rng):
    rs = rc.build_root_system("E", 7)
    for _ in range(20):
        w = rs.identity()
        for i in rng.integers(1, 8, size=15):
            w = w * rs.simple_reflection(int(i))
        word = rc.reduced_word(w)
        assert len(word) == w.length
        v = rs.identity()
        for i in word:
            v = v * rs.simple_reflection(i)
        assert v == w


def test_bruhat_order():
    g2 = rc.build_root_system("G", 2)
    s_b1 = rc.reflection(g2, (3, 2))
    w = rc.product_of_reflections(g2, [(3, 2), (1, 0)])
    assert rc.bruhat_leq(g2.identity(), w)
    assert rc.bruhat_leq(s_b1, w)
    assert not rc.bruhat_leq(w, s_b1)
    c3 = rc.build_root_system("C", 3)
    elems = {c3.identity()}
    frontier = [c3.identity()]
    while frontier:
        nxt = []
        for x in frontier:
            for i in (1, 2, 3):
                y = x * c3.simple_reflection(i)
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    assert len(elems) == 48
    for x in elems:
        assert rc.bruhat_leq(x, c3.w0)
        assert rc.bruhat_leq(c3.w0, x) == (x == c3.w0)
    # order is compatible with length
    sample = list(elems)[:20]
    for x, y in itertools.product(sample, sample):
        if rc.bruhat_leq(x, y) and x != y:
            assert x.length < y.length


def test_involution_decomposition():
    c2 = rc.build_root_system("C", 2)
    assert rc.involution_orthogonal_decomposition(c2, c2.identity()) == ()
    got = {c2.to_ambient(b) for b in rc.involution_orthogonal_decomposition(c2, c2.w0)}
    assert got == {(2, 0), (0, 2)}
    e7 = rc.build_root_system("E", 7)
    roots = [(2, 2, 3, 4, 3, 2, 1), (0, 1, 1, 2, 2, 2, 1), (0, 1, 1, 2, 1, 0, 0)]
    w = rc.product_of_reflections(e7, roots)
    dec = rc.involution_orthogonal_decomposition(e7, w)
    assert rc.product_of_reflections(e7, dec) == w
    assert set(dec) == set(roots)
