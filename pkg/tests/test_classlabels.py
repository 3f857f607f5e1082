import pytest

from sphc.classlabels import (
    ClassLabel, LabelError, Partition, all_labels, dominance_leq, dual_partition,
    format_label, involution_labels, label_leq, make_label, order4_minimal_labels,
    outer_involution_labels, parse_label, partitions, spherical_unipotent_classes,
    validate_label,
)


def test_partition_basics():
    lam = Partition.of([1, 2, 2])
    assert lam.parts == (2, 2, 1) and lam.size == 5
    assert lam.c(2) == 2 and lam.c(3) == 0
    assert str(lam) == "2^2+1"
    assert dual_partition(Partition.of([2, 2])) == Partition.of([2, 2])
    assert dual_partition(Partition.of([3, 3])) == Partition.of([2, 2, 2])
    for n in range(2, 6):
        for k in range(1, n + 1):
            lam = Partition.of([2] * k + [1] * (2 * n - 2 * k))
            assert lam.dual().parts[0] == 2 * n - k


def test_dual_is_involutive():
    for lam in partitions(8):
        lam = Partition.of(lam)
        assert lam.dual().dual() == lam


def test_dominance():
    P = Partition.of
    assert dominance_leq(P([2, 1]), P([2, 1]))
    assert dominance_leq(P([2, 2]), P([4]))
    assert not dominance_leq(P([4]), P([2, 2]))
    assert dominance_leq(P([3, 3]), P([4, 1, 1])) is False
    assert dominance_leq(P([4, 1, 1]), P([3, 3])) is False
    with pytest.raises(LabelError):
        dominance_leq(P([2]), P([3]))


def test_validate_examples():
    assert validate_label(make_label("Sp", 2, [2, 2], {2: 0}))
    bad = ClassLabel("Sp", 2, Partition.of([3, 1]), ())
    assert not validate_label(bad)
    bad = ClassLabel("Sp", 2, Partition.of([2, 1, 1]), ((0, 1), (2, 0)))
    v = validate_label(bad)
    assert not v and v.reason


def test_label_counts():
    counts = {("Sp", 2): 5, ("Sp", 3): 9, ("SO", 2): 4, ("SO", 3): 5, ("SO", 4): 12}
    for (kind, n), c in counts.items():
        labels = all_labels(kind, n)
        assert len(labels) == c
        assert all(validate_label(x) for x in labels)


def test_label_order():
    y2 = make_label("Sp", 2, [2, 2], {2: 0})
    x2 = make_label("Sp", 2, [2, 2])
    x1 = make_label("Sp", 2, [2, 1, 1])
    assert label_leq(y2, x2)
    assert label_leq(x1, x2)
    assert not label_leq(x2, y2)
    for a in all_labels("Sp", 3):
        assert label_leq(a, a)


def test_involution_labels():
    sp2 = {c.name: c.dim for c in involution_labels("Sp", 2)}
    assert sp2 == {"X_1": 4, "Y_2": 4, "X_2": 6}
    sp3 = {c.name: c.dim for c in involution_labels("Sp", 3)}
    assert sp3 == {"X_1": 6, "Y_2": 8, "X_2": 10, "X_3": 12}
    so4 = {c.name: c for c in involution_labels("SO", 4)}
    assert so4["X'_2"].dim == 12 and so4["X'_2"].label.so_split_tag == "II"
    assert all(c.consists_of_involutions for c in so4.values())


def test_outer_involution_labels():
    assert [(c.name, c.dim) for c in outer_involution_labels(4)] == [("O_1", 7), ("O_3", 15)]
    assert [c.dim for c in outer_involution_labels(5)] == [9, 21, 25]


def test_order4_minimal():
    def names(n):
        return {format_label(x) for x in order4_minimal_labels(n)}
    assert names(2) == {"4_1"}
    assert names(3) == {"3^2", "4_1+1^2"}
    assert names(4) == {"3^2+1^2", "4_1+1^4"}


def test_spherical_classes():
    f4 = spherical_unipotent_classes("F", 4, 2)
    assert sorted(c.dim for c in f4) == [16, 16, 22, 28]
    e6 = spherical_unipotent_classes("E", 6, 2)
    assert [(c.name, c.dim) for c in e6] == [("A1", 22), ("2A1", 32), ("3A1", 40)]
    c3 = spherical_unipotent_classes("C", 3, 2)
    assert all(c.consists_of_involutions for c in c3)
    with pytest.raises(LabelError):
        spherical_unipotent_classes("C", 3, 3)


@pytest.mark.parametrize("kind,n", [("Sp", 3), ("SO", 4), ("GL", 4)])
def test_format_parse_round_trip(kind, n):
    for lab in all_labels(kind, n):
        assert parse_label(format_label(lab), kind, n) == lab


def test_parse_accepts_oplus():
    assert parse_label("4⊕1^2", "Sp", 3) == make_label("Sp", 3, [4, 1, 1])
    assert not validate_label(parse_label("3+1", "Sp", 2))
    with pytest.raises(LabelError):
        parse_label("2+x", "Sp", 2)


@pytest.mark.parametrize("kind,n", [("Sp", 3), ("Sp", 4), ("SO", 4), ("GL", 5)])
def test_label_leq_is_a_partial_order(kind, n):
    labels = all_labels(kind, n)
    leq = {(a, b): label_leq(a, b) for a in labels for b in labels}
    for a in labels:
        assert leq[a, a]
        for b in labels:
            if a != b and leq[a, b]:
                assert not leq[b, a]
            for c in labels:
                if leq[a, b] and leq[b, c]:
                    assert leq[a, c]


def test_label_leq_rejects_mixed_groups():
    with pytest.raises(LabelError):
        label_leq(make_label("Sp", 2, [2, 2]), make_label("Sp", 3, [2, 2, 1, 1]))


def test_involution_label_counts():
    for n in range(2, 6):
        for ell in range(1, n + 1):
            lam = Partition.of([2] * ell + [1] * (2 * n - 2 * ell))
            count = sum(1 for x in all_labels("Sp", n) if x.lam == lam)
            assert count == (1 if ell % 2 else 2)
