"""Root datum construction: Cartan matrices, highest roots, cominuscule nodes."""

import pytest

from qsigma.cartan import ConfigError, build, weight_sub


def test_a3_cartan_matrix():
    cd = build("A", 3)
    assert cd.cartan_matrix == ((2, -1, 0), (-1, 2, -1), (0, -1, 2))


def test_a3_highest_root():
    assert build("A", 3).highest_root == (1, 1, 1)


def test_a_series_cominuscule_nodes():
    for n in range(1, 6):
        cd = build("A", n)
        assert sorted(cd.cominuscule_nodes) == list(range(1, n + 1))


def test_pairing_examples():
    cd = build("A", 3)
    a1, a2, a3 = cd.simple_root(1), cd.simple_root(2), cd.simple_root(3)
    assert cd.pairing(a1, a1) == 2
    assert cd.pairing(a1, a2) == -1
    assert cd.pairing(a1, a3) == 0
    # bilinearity: (a1 - a2, a3) = (a1, a3) - (a2, a3)
    assert cd.pairing(weight_sub(a1, a2), a3) == 0 - (-1)


def test_unit_coefficient_roots_examples():
    cd = build("A", 3)
    got = set(cd.positive_roots_with_unit_coefficient(2))
    assert got == {(0, 1, 0), (1, 1, 0), (0, 1, 1), (1, 1, 1)}
    cd2 = build("A", 2)
    assert set(cd2.positive_roots_with_unit_coefficient(1)) == {(1, 0), (1, 1)}
    assert build("A", 1).positive_roots_with_unit_coefficient(1) == [(1,)]


def test_grassmannian_dimension_formula():
    # |{roots with coefficient 1 at x}| = x(n+1-x) in type A
    for n in range(1, 6):
        cd = build("A", n)
        for x in range(1, n + 1):
            count = len(cd.positive_roots_with_unit_coefficient(x))
            assert count == x * (n + 1 - x)


def test_highest_root_dominates():
    for series, rank in [("A", 4), ("B", 3), ("C", 3), ("D", 4), ("E6", 6), ("E7", 7)]:
        cd = build(series, rank)
        for r in cd.positive_roots:
            assert all(c >= 0 for c in weight_sub(cd.highest_root, r))


def test_bilinear_symmetric_and_reconstructs_cartan():
    for series, rank in [("A", 3), ("B", 3), ("C", 3), ("D", 4), ("E6", 6)]:
        cd = build(series, rank)
        n = cd.rank
        for i in range(n):
            for j in range(n):
                assert cd.bilinear[i][j] == cd.bilinear[j][i]
                # a_ij = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i)
                assert cd.cartan_matrix[i][j] * cd.bilinear[i][i] == 2 * cd.bilinear[i][j]
        # shortest simple roots have norm 2
        assert min(cd.bilinear[i][i] for i in range(n)) == 2


def test_series_tables():
    b = build("B", 3)
    assert b.highest_root == (1, 2, 2)
    assert sorted(b.cominuscule_nodes) == [1]
    c = build("C", 3)
    assert c.highest_root == (2, 2, 1)
    assert sorted(c.cominuscule_nodes) == [3]
    d = build("D", 5)
    assert d.highest_root == (1, 2, 2, 1, 1)
    assert sorted(d.cominuscule_nodes) == [1, 4, 5]
    e6 = build("E6", 6)
    assert e6.highest_root == (1, 2, 2, 3, 2, 1)
    assert sorted(e6.cominuscule_nodes) == [1, 6]
    assert len(e6.positive_roots) == 36
    e7 = build("E7", 7)
    assert e7.highest_root == (2, 2, 3, 4, 3, 2, 1)
    assert sorted(e7.cominuscule_nodes) == [7]
    assert len(e7.positive_roots) == 63


def test_b2_data():
    b2 = build("B", 2)
    assert b2.cartan_matrix == ((2, -1), (-2, 2))
    assert b2.bilinear == ((4, -2), (-2, 2))
    assert b2.symmetrizers == (2, 1)
    assert b2.highest_root == (1, 2)
    assert sorted(b2.cominuscule_nodes) == [1]


def test_invalid_configurations():
    with pytest.raises(ConfigError):
        build("D", 3)
    with pytest.raises(ConfigError):
        build("B", 1)
    with pytest.raises(ConfigError):
        build("E8", 8)
    with pytest.raises(ConfigError):
        build("G", 2)


def test_non_cominuscule_node_rejected():
    with pytest.raises(ConfigError):
        build("B", 2).positive_roots_with_unit_coefficient(2)
