from fractions import Fraction

import pytest

from fractal_forest.algebra import Weights
from fractal_forest.errors import DecimationSingularError
from fractal_forest.graphs import LabelledEdge, LabelledGraph, build_hanoi, build_sierpinski
from fractal_forest.hanoi import hanoi_bundle, hanoi_counts_closed
from fractal_forest.kirchhoff import (
    RationalMatrix,
    SchurState,
    generator_matrices,
    hanoi_tn_schur,
    lambda_matrix,
    schur_denominator,
    schur_denominator_rederived,
    schur_map,
    schur_map_divergence,
    schur_map_rederived,
    schur_pipeline,
    tree_gf_cofactor,
    weighted_laplacian,
)
from fractal_forest.sierpinski import rot_counts

from conftest import positive_weight_list, random_states

ONES = Weights.ones()


def test_bareiss_determinant_basics():
    m = RationalMatrix([[Fraction(1, 2), 1], [1, Fraction(3)]])
    assert m.det() == Fraction(1, 2)
    singular = RationalMatrix([[1, 2], [2, 4]])
    assert singular.det() == 0
    permuted = RationalMatrix([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    assert permuted.det() == -1


def test_laplacian_examples():
    L = weighted_laplacian(build_hanoi(1), ONES)
    assert L.rows == [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]
    L123 = weighted_laplacian(build_hanoi(1), Weights.of(1, 2, 3))
    assert L123[0, 0] == 3  # vertex 0 carries the a and b edges
    assert all(s == 0 for s in L123.row_sums())
    degrees = [
        weighted_laplacian(build_sierpinski(1, "rotational"), ONES)[i, i]
        for i in range(6)
    ]
    assert degrees == [2, 4, 4, 2, 4, 2]
    disconnected = LabelledGraph(
        "hanoi", 1, ("0", "1", "2"), (LabelledEdge(0, 1, "a"),), {"top": 1, "left": 0, "right": 2}
    )
    with pytest.raises(ValueError):
        weighted_laplacian(disconnected, ONES)


def test_cofactor_examples():
    g1 = build_hanoi(1)
    assert tree_gf_cofactor(g1, ONES) == 3
    for w in positive_weight_list(51, 5):
        assert tree_gf_cofactor(g1, w) == w.a * w.b + w.a * w.c + w.b * w.c
    assert tree_gf_cofactor(build_sierpinski(1, "rotational"), ONES) == 54
    single = LabelledGraph("hanoi", 1, ("0",), (), {"top": 0, "left": 0, "right": 0})
    assert tree_gf_cofactor(single, ONES) == 1


def test_cofactor_invariant_under_index_choice():
    for g in (build_hanoi(2), build_sierpinski(1, "rotational")):
        for w in positive_weight_list(53, 5):
            ref = tree_gf_cofactor(g, w, index=0)
            for i in range(1, len(g.vertices)):
                assert tree_gf_cofactor(g, w, index=i) == ref


def test_all_ones_cofactor_equals_closed_counts():
    for n in range(1, 5):
        assert tree_gf_cofactor(build_hanoi(n), ONES) == hanoi_counts_closed(n).tau
    for n in range(1, 4):
        assert tree_gf_cofactor(build_sierpinski(n, "rotational"), ONES) == rot_counts(n).tau


def test_generator_matrices_match_action():
    for n in range(1, 5):
        w = Weights.of(2, 3, 5)
        A, B, C = generator_matrices(n, w)
        g = build_hanoi(n, include_loops=True)
        words = g.vertices
        index = {v: i for i, v in enumerate(words)}
        from fractal_forest.graphs import apply_generator

        for mat, label, weight in ((A, "a", w.a), (B, "b", w.b), (C, "c", w.c)):
            for i, word in enumerate(words):
                j = index[apply_generator(label, word)]
                for k in range(len(words)):
                    assert mat[i][k] == (weight if k == j else 0)


def test_denominator_at_initial_ones_state():
    s0 = SchurState.initial(ONES)
    assert schur_denominator(s0) == 320
    assert schur_denominator_rederived(s0) == 320


def test_map_fixes_first_three_coordinates():
    for s in random_states(57, 5):
        p = schur_map(s)
        assert (p.x1, p.x2, p.x3) == (s.x1, s.x2, s.x3)


def test_map_equals_rederived_on_random_states():
    for s in random_states(59, 10):
        assert schur_map_divergence(s) == {}
        assert schur_map(s) == schur_map_rederived(s)
        assert schur_denominator(s) == schur_denominator_rederived(s)


def test_lambda2_structure_at_initial_state():
    s0 = SchurState.initial(ONES)
    lam = lambda_matrix(2, s0)
    assert lam[0, 0] == 2
    assert all(lam[0, j] == 0 for j in range(1, 9))
    assert all(lam[i, 0] == 0 for i in range(1, 9))
    assert lam.det() == 2 * 135
    # masked matrix equals the Laplacian away from the first row/column
    L = weighted_laplacian(build_hanoi(2), ONES)
    for i in range(1, 9):
        for j in range(1, 9):
            assert lam[i, j] == L[i, j]
    # block pattern: generator matrices on the diagonal blocks
    w123 = Weights.of(1, 2, 3)
    s = SchurState.initial(w123)
    lam = lambda_matrix(2, s)
    A1, B1, C1 = generator_matrices(1, w123)
    for i in range(3):
        for j in range(3):
            if i != j:
                assert lam[i, j] == -C1[i][j]
                assert lam[3 + i, 3 + j] == -B1[i][j]
                assert lam[6 + i, 6 + j] == -A1[i][j]


def test_decimation_identity_on_weight_orbits():
    for w in positive_weight_list(61, 10):
        s0 = SchurState.initial(w)
        lhs = lambda_matrix(3, s0).det()
        rhs = schur_denominator(s0) ** 3 * lambda_matrix(2, schur_map(s0)).det()
        assert lhs == rhs


def test_decimation_identity_on_generic_states():
    for k, seed in ((3, 63), (4, 65)):
        for s in random_states(seed, 2):
            lhs = lambda_matrix(k, s).det()
            rhs = schur_denominator(s) ** (3 ** (k - 2)) * lambda_matrix(
                k - 1, schur_map(s)
            ).det()
            assert lhs == rhs


def test_schur_pipeline_examples():
    assert hanoi_tn_schur(3, ONES) == 20503125
    assert hanoi_tn_schur(4, ONES) == 3**22 * 5**18
    w = Weights.of(1, 2, 3)
    assert hanoi_tn_schur(3, w) == hanoi_bundle(3, w).T
    value, orbit = schur_pipeline(3, ONES)
    assert value == 20503125 and orbit == [320]
    # small levels delegate to the direct cofactor
    assert hanoi_tn_schur(1, ONES) == 3
    assert hanoi_tn_schur(2, Weights.of(1, 2, 3)) == hanoi_bundle(2, Weights.of(1, 2, 3)).T


def test_singular_denominator_raises():
    # with x4=x5=x6=0 the denominator factors as
    # (x9^2-x1^2)(x7^2-x3^2)(x8^2-x2^2); x9 = x1 kills it
    s = SchurState.of([1, 2, 3, 0, 0, 0, 5, 7, 1])
    assert schur_denominator(s) == 0
    with pytest.raises(DecimationSingularError):
        schur_map(s)


def test_lambda_matrix_validates_level():
    with pytest.raises(ValueError):
        lambda_matrix(1, SchurState.initial(ONES))
