"""Subspace, chordal-distance, and fusion-frame certificates.

The chordal oracle here materializes full projection matrices as Fraction
arrays and traces their product directly, independent of the library's
Frobenius-norm shortcut.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from hadframes import (
    ValidationError,
    build_gff,
    build_walsh,
    chordal_dist,
    chordal_dist_sq,
    equidistance_certificate,
    etf_from_hadamard,
    frame_from_integer_columns,
    fusion_analyze,
    fusion_reconstruct_tight,
    fusion_tight,
    gram,
    lemma_row_check,
    make_fusion_frame,
    projection,
    subspace_from_columns,
)

# ---------------------------------------------------------------------------
# oracles and helpers


def projection_oracle(s):
    basis = s.basis_raw.tolist()
    m = len(basis)
    return [
        [
            sum(Fraction(basis[r][c]) * Fraction(basis[t][c]) for c in range(s.dim))
            * s.scale_sq
            for t in range(m)
        ]
        for r in range(m)
    ]


def trace_product_oracle(s1, s2):
    p1, p2 = projection_oracle(s1), projection_oracle(s2)
    m = len(p1)
    return sum(p1[r][t] * p2[t][r] for r in range(m) for t in range(m))


def line(ambient: int, axis: int):
    col = np.zeros((ambient, 1), dtype=int)
    col[axis, 0] = 1
    return subspace_from_columns(col, 1)


# ---------------------------------------------------------------------------
# subspaces


def test_coordinate_plane_in_f4():
    s = subspace_from_columns(np.eye(4, dtype=int)[:, :2], 1)
    assert (s.ambient_dim, s.dim) == (4, 2)


def test_scaled_hadamard_columns_span_plane():
    s = subspace_from_columns([[1, 1], [1, -1]], Fraction(1, 2))
    assert s.dim == 2


def test_equal_columns_are_not_orthonormal():
    with pytest.raises(ValidationError, match="not orthonormal"):
        subspace_from_columns([[1, 1], [1, 1]], Fraction(1, 2))


def test_subspace_dim_cannot_exceed_ambient():
    with pytest.raises(ValidationError, match="exceeds ambient"):
        subspace_from_columns(np.ones((1, 2), dtype=int), 1)


def test_projection_onto_first_axis():
    assert projection(line(2, 0)).tolist() == [[1, 0], [0, 0]]


def test_projection_onto_whole_space_is_identity():
    s = subspace_from_columns(np.eye(2, dtype=int), 1)
    assert projection(s).tolist() == [[1, 0], [0, 1]]


def test_projection_onto_diagonal_line():
    s = subspace_from_columns([[1], [1]], Fraction(1, 2))
    assert projection(s).tolist() == [
        [Fraction(1, 2), Fraction(1, 2)],
        [Fraction(1, 2), Fraction(1, 2)],
    ]


def test_projection_is_idempotent_symmetric_with_trace_dim():
    for s in build_gff(3, 1).subspaces:
        p = projection(s)
        assert np.array_equal(p @ p, p)
        assert np.array_equal(p.T, p)
        assert sum(p[i, i] for i in range(s.ambient_dim)) == s.dim
        assert p.tolist() == projection_oracle(s)


# ---------------------------------------------------------------------------
# chordal distance


def test_chordal_distance_to_self_is_zero():
    s = subspace_from_columns([[1, 1], [1, -1], [1, 1], [1, -1]], Fraction(1, 4))
    assert chordal_dist_sq(s, s) == 0


def test_orthogonal_lines_at_distance_one():
    assert chordal_dist_sq(line(2, 0), line(2, 1)) == 1


def test_gff31_pair_distance_matches_projection_oracle():
    subs = build_gff(3, 1).subspaces
    for i in range(len(subs)):
        for j in range(i + 1, len(subs)):
            tr = trace_product_oracle(subs[i], subs[j])
            assert tr == Fraction(2, 9)
            assert chordal_dist_sq(subs[i], subs[j]) == Fraction(2) - tr == Fraction(16, 9)


def test_chordal_distance_is_symmetric():
    subs = build_gff(3, 1).subspaces
    assert chordal_dist_sq(subs[0], subs[1]) == chordal_dist_sq(subs[1], subs[0])


def test_chordal_distance_stays_within_bounds():
    subs = build_gff(4, 1).subspaces
    for i in range(len(subs)):
        for j in range(i + 1, len(subs)):
            d2 = chordal_dist_sq(subs[i], subs[j])
            assert 0 < d2 <= subs[i].dim


def test_chordal_distance_requires_equal_dims():
    plane = subspace_from_columns(np.eye(2, dtype=int), 1)
    with pytest.raises(ValidationError, match="equal dimensions"):
        chordal_dist_sq(line(2, 0), plane)


def test_chordal_float_accessor():
    assert chordal_dist(line(2, 0), line(2, 1)) == pytest.approx(1.0)


# ---------------------------------------------------------------------------
# tightness, two routes


def test_axis_partition_is_tight():
    ff = make_fusion_frame([line(2, 0), line(2, 1)])
    assert fusion_tight(ff) == (True, 1)


def test_overlapping_subspaces_are_not_tight():
    whole = subspace_from_columns(np.eye(2, dtype=int), 1)
    ff = make_fusion_frame([line(2, 0), whole])
    assert fusion_tight(ff) == (False, None)


def test_gff31_is_tight_with_expected_bound():
    assert fusion_tight(build_gff(3, 1)) == (True, Fraction(4, 3))


def test_mixed_scale_tightness_uses_exact_combination():
    # two coordinate axes plus the two diagonals: projections sum to 2 I
    diag_plus = subspace_from_columns([[1], [1]], Fraction(1, 2))
    diag_minus = subspace_from_columns([[1], [-1]], Fraction(1, 2))
    ff = make_fusion_frame([line(2, 0), line(2, 1), diag_plus, diag_minus])
    assert fusion_tight(ff) == (True, 2)
    assert lemma_row_check(ff) == (True, 2)


def test_row_check_on_identity_partition():
    basis = np.eye(4, dtype=int)
    ff = make_fusion_frame(
        [
            subspace_from_columns(basis[:, :2], 1),
            subspace_from_columns(basis[:, 2:], 1),
        ]
    )
    assert lemma_row_check(ff) == (True, 1)


@pytest.mark.parametrize("n,m", [(2, 0), (3, 0), (3, 1), (4, 2), (5, 3)])
def test_row_check_on_constructed_fusion_frames(n, m):
    ff = build_gff(n, m)
    expected = Fraction(1 << n, (1 << n) - (1 << m))
    assert lemma_row_check(ff) == (True, expected)


def test_row_check_fails_on_repeated_subspace():
    ff = make_fusion_frame([line(2, 0), line(2, 0), line(2, 1)])
    ok, _ = lemma_row_check(ff)
    assert not ok


def test_row_check_implies_tightness_with_same_bound():
    frames_under_test = [
        build_gff(3, 1),
        build_gff(4, 2),
        make_fusion_frame([line(3, 0), line(3, 1), line(3, 2)]),
    ]
    for ff in frames_under_test:
        ok, a_row = lemma_row_check(ff)
        assert ok
        tight, a_sum = fusion_tight(ff)
        assert tight and a_sum == a_row


# ---------------------------------------------------------------------------
# construction


def test_gff31_shape():
    ff = build_gff(3, 1)
    assert ff.ambient_dim == 6
    assert len(ff.subspaces) == 4
    assert all(s.dim == 2 for s in ff.subspaces)
    assert all(s.scale_sq == Fraction(1, 6) for s in ff.subspaces)
    assert ff.constructed_grassmannian and not ff.degenerate


def test_gff21_degenerate_whole_space_pair():
    ff = build_gff(2, 1)
    assert ff.degenerate
    assert ff.ambient_dim == 2 and len(ff.subspaces) == 2
    assert fusion_tight(ff) == (True, 2)
    assert chordal_dist_sq(ff.subspaces[0], ff.subspaces[1]) == 0


def test_gff41_values():
    ff = build_gff(4, 1)
    assert ff.ambient_dim == 14 and len(ff.subspaces) == 8
    assert fusion_tight(ff) == (True, Fraction(8, 7))
    subs = ff.subspaces
    tr = Fraction(2) - chordal_dist_sq(subs[0], subs[1])
    assert tr == Fraction(2, 49)
    assert chordal_dist_sq(subs[0], subs[1]) == Fraction(96, 49)


def test_gff_rejects_bad_parameters():
    with pytest.raises(ValidationError, match="n > m"):
        build_gff(3, 3)
    with pytest.raises(ValidationError, match="n > m"):
        build_gff(2, -1)
    with pytest.raises(ValidationError, match="integers"):
        build_gff(3.0, 1)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_gff_with_lines_recovers_the_etf_gram(n):
    ff = build_gff(n, 0)
    stacked = np.hstack([s.basis_raw for s in ff.subspaces])
    as_frame = frame_from_integer_columns(stacked, ff.subspaces[0].scale_sq)
    etf = etf_from_hadamard(build_walsh(n).base)
    assert np.array_equal(gram(as_frame), gram(etf))


# ---------------------------------------------------------------------------
# certificate


def test_certificate_of_gff31():
    c = equidistance_certificate(build_gff(3, 1))
    assert c.tight and c.bound_A == Fraction(4, 3)
    assert c.equal_dim and c.equi_distance
    assert c.dist_sq == Fraction(16, 9)
    assert c.grassmannian_by_construction


def test_certificate_of_coordinate_lines():
    ff = make_fusion_frame([line(3, 0), line(3, 1), line(3, 2)])
    c = equidistance_certificate(ff)
    assert c.tight and c.bound_A == 1
    assert c.equal_dim and c.equi_distance and c.dist_sq == 1
    assert not c.grassmannian_by_construction  # provenance, not geometry


def test_certificate_detects_unequal_distances():
    diag = subspace_from_columns([[1], [1]], Fraction(1, 2))
    ff = make_fusion_frame([line(2, 0), line(2, 1), diag])
    c = equidistance_certificate(ff)
    assert c.equal_dim and not c.equi_distance and c.dist_sq is None
    # distances are 1 (axes) and 1/2 (axis vs diagonal)
    assert chordal_dist_sq(ff.subspaces[0], ff.subspaces[1]) == 1
    assert chordal_dist_sq(ff.subspaces[0], ff.subspaces[2]) == Fraction(1, 2)
    assert chordal_dist_sq(ff.subspaces[1], ff.subspaces[2]) == Fraction(1, 2)


def test_certificate_needs_two_subspaces():
    whole = subspace_from_columns(np.eye(2, dtype=int), 1)
    ff = make_fusion_frame([whole])
    with pytest.raises(ValidationError, match="two subspaces"):
        equidistance_certificate(ff)


def test_certificate_unequal_dims():
    whole = subspace_from_columns(np.eye(2, dtype=int), 1)
    ff = make_fusion_frame([line(2, 0), whole])
    c = equidistance_certificate(ff)
    assert not c.equal_dim and not c.equi_distance and not c.tight


# ---------------------------------------------------------------------------
# analysis / reconstruction


def test_zero_signal_gives_zero_pieces():
    ff = build_gff(3, 1)
    pieces = fusion_analyze(ff, np.zeros(6))
    assert all(np.allclose(p, 0) for p in pieces)
    assert np.allclose(fusion_reconstruct_tight(ff, pieces), 0)


def test_partition_round_trip_is_exact():
    basis = np.eye(4, dtype=int)
    ff = make_fusion_frame(
        [
            subspace_from_columns(basis[:, :2], 1),
            subspace_from_columns(basis[:, 2:], 1),
        ]
    )
    x = [Fraction(1, 3), Fraction(-2, 7), Fraction(5), Fraction(0)]
    back = fusion_reconstruct_tight(ff, fusion_analyze(ff, x, exact=True), exact=True)
    assert list(back) == x


def test_gff42_float_round_trip():
    ff = build_gff(4, 2)
    rng = np.random.default_rng(42)
    worst = 0.0
    for _ in range(100):
        x = rng.standard_normal(12)
        back = fusion_reconstruct_tight(ff, fusion_analyze(ff, x))
        worst = max(worst, float(np.abs(back - x).max()))
    assert worst < 1e-12


def test_gff31_exact_round_trip():
    ff = build_gff(3, 1)
    x = [Fraction(i, i + 1) for i in range(6)]
    back = fusion_reconstruct_tight(ff, fusion_analyze(ff, x, exact=True), exact=True)
    assert list(back) == x


def test_reconstruct_requires_tight_fusion_frame():
    whole = subspace_from_columns(np.eye(2, dtype=int), 1)
    ff = make_fusion_frame([line(2, 0), whole])
    with pytest.raises(ValidationError, match="not tight"):
        fusion_reconstruct_tight(ff, fusion_analyze(ff, [1.0, 2.0]))


def test_analyze_checks_ambient_dimension():
    ff = build_gff(3, 1)
    with pytest.raises(ValidationError, match="length 6"):
        fusion_analyze(ff, np.zeros(5))


def test_fusion_frame_must_span():
    with pytest.raises(ValidationError, match="span"):
        make_fusion_frame([line(3, 0), line(3, 1)])
