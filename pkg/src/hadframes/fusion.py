"""Subspaces, fusion frames, chordal distances, and exact tightness checks.

A subspace is stored as integer basis columns plus a rational scale making
them exactly orthonormal. Tightness of a fusion frame (sum of projections
equal to A * I) is decided two independent ways: by accumulating the
projection sum subspace by subspace, and by the row criterion on the
matrix stacking every basis vector. Both are exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import ValidationError
from .hadamard import build_walsh
from .intlinalg import (
    as_fraction,
    as_int_matrix,
    checked_matmul,
    identity_multiple,
    int_rank,
    scaled_fraction_matrix,
)


@dataclass(frozen=True, eq=False)
class Subspace:
    """m-dimensional subspace of F^M with an exactly orthonormal scaled basis."""

    ambient_dim: int
    dim: int
    basis_raw: np.ndarray
    scale_sq: Fraction


@dataclass(frozen=True, eq=False)
class FusionFrame:
    """Ordered collection of subspaces spanning F^M.

    ``constructed_grassmannian`` is a provenance flag set by build_gff;
    ``degenerate`` marks constructions whose subspaces coincide.
    """

    ambient_dim: int
    subspaces: tuple[Subspace, ...]
    constructed_grassmannian: bool = False
    degenerate: bool = False


@dataclass(frozen=True)
class FusionCertificate:
    """Exact fusion-frame verdicts; rational fields present iff their flag holds."""

    tight: bool
    bound_A: Fraction | None
    equal_dim: bool
    equi_distance: bool
    dist_sq: Fraction | None
    grassmannian_by_construction: bool


def subspace_from_columns(basis_raw, scale_sq) -> Subspace:
    """Validate exact orthonormality of the scaled columns and wrap them."""
    b = as_int_matrix(basis_raw, name="basis")
    scale = as_fraction(scale_sq)
    if scale <= 0:
        raise ValidationError(f"scale_sq must be positive, got {scale}")
    big_m, m = b.shape
    if m > big_m:
        raise ValidationError(f"subspace dimension {m} exceeds ambient {big_m}")
    g = checked_matmul(b.T, b)
    for i in range(m):
        for j in range(i, m):
            want = 1 if i == j else 0
            if int(g[i, j]) * scale != want:
                raise ValidationError(
                    f"columns {i},{j} have inner product {int(g[i, j])} * {scale}"
                    f" != {want}: basis is not orthonormal under the scale"
                )
    b = b.copy()
    b.setflags(write=False)
    return Subspace(ambient_dim=big_m, dim=m, basis_raw=b, scale_sq=scale)


def projection(s: Subspace) -> np.ndarray:
    """Orthogonal projection onto the subspace as an exact Fraction matrix."""
    return scaled_fraction_matrix(
        checked_matmul(s.basis_raw, s.basis_raw.T), s.scale_sq
    )


def chordal_dist_sq(s1: Subspace, s2: Subspace) -> Fraction:
    """Exact squared chordal distance m - tr(P1 @ P2), in [0, m].

    Uses tr(P1 P2) = scale1 * scale2 * ||B1.T @ B2||_F^2, avoiding the
    M x M projection matrices.
    """
    if s1.ambient_dim != s2.ambient_dim:
        raise ValidationError(
            f"ambient dimensions differ: {s1.ambient_dim} vs {s2.ambient_dim}"
        )
    if s1.dim != s2.dim:
        raise ValidationError(
            f"chordal distance needs equal dimensions, got {s1.dim} and {s2.dim}"
        )
    cross = checked_matmul(s1.basis_raw.T, s2.basis_raw)
    ssq = int((cross.astype(object) ** 2).sum()) if cross.dtype == object else int(
        np.einsum("ij,ij->", cross, cross)
    )
    return Fraction(s1.dim) - Fraction(ssq) * s1.scale_sq * s2.scale_sq


def chordal_dist(s1: Subspace, s2: Subspace) -> float:
    """Float square root of chordal_dist_sq, for reporting."""
    return math.sqrt(float(chordal_dist_sq(s1, s2)))


def make_fusion_frame(
    subspaces: Sequence[Subspace],
    *,
    constructed_grassmannian: bool = False,
    degenerate: bool = False,
) -> FusionFrame:
    """Validate a nonempty spanning collection of subspaces of one space."""
    subs = tuple(subspaces)
    if not subs:
        raise ValidationError("fusion frame needs at least one subspace")
    big_m = subs[0].ambient_dim
    for i, s in enumerate(subs):
        if s.ambient_dim != big_m:
            raise ValidationError(
                f"subspace {i} lives in F^{s.ambient_dim}, expected F^{big_m}"
            )
    stacked = np.hstack([s.basis_raw for s in subs])
    if int_rank(stacked) < big_m:
        raise ValidationError("subspaces do not jointly span the ambient space")
    return FusionFrame(
        ambient_dim=big_m,
        subspaces=subs,
        constructed_grassmannian=constructed_grassmannian,
        degenerate=degenerate,
    )


def _grouped_projection_sums(ff: FusionFrame) -> dict[Fraction, np.ndarray]:
    # Integer sum of B @ B.T per distinct scale, accumulated subspace by
    # subspace so the route stays independent of the stacked row check.
    groups: dict[Fraction, np.ndarray] = {}
    for s in ff.subspaces:
        outer = checked_matmul(s.basis_raw, s.basis_raw.T)
        acc = groups.get(s.scale_sq)
        groups[s.scale_sq] = outer if acc is None else acc + outer
    return groups


def _rational_identity_multiple(parts: dict[Fraction, np.ndarray]) -> Fraction | None:
    scales = list(parts)
    if len(scales) == 1:
        c = identity_multiple(parts[scales[0]])
        return None if c is None else Fraction(c) * scales[0]
    total = sum(
        scaled_fraction_matrix(parts[sc], sc) for sc in scales
    )
    diag = np.diagonal(total)
    if not all(d == diag[0] for d in diag):
        return None
    off = np.array(total, copy=True)
    np.fill_diagonal(off, Fraction(0))
    if any(x != 0 for x in off.reshape(-1)):
        return None
    return diag[0]


def fusion_tight(ff: FusionFrame) -> tuple[bool, Fraction | None]:
    """Decide sum_i P_i == A * I exactly; return A when tight."""
    a = _rational_identity_multiple(_grouped_projection_sums(ff))
    return (a is not None), a


def lemma_row_check(ff: FusionFrame) -> tuple[bool, Fraction | None]:
    """Row criterion: stack every scaled basis vector as a column and test
    whether the rows of the stacked matrix are pairwise orthogonal with one
    common squared norm. When they are, the fusion frame is tight with
    bound equal to that squared row norm.

    This is a sufficient condition only; a failed row check never infers
    non-tightness (fusion_tight remains the decision procedure).
    """
    by_scale: dict[Fraction, list[np.ndarray]] = {}
    for s in ff.subspaces:
        by_scale.setdefault(s.scale_sq, []).append(s.basis_raw)
    row_grams = {
        sc: checked_matmul(np.hstack(blocks), np.hstack(blocks).T)
        for sc, blocks in by_scale.items()
    }
    a = _rational_identity_multiple(row_grams)
    return (a is not None), a


def build_gff(n: int, m: int) -> FusionFrame:
    """Equi-distance tight fusion frame from the sequency-ordered matrix W_n.

    Drops the first 2^m rows of W_n and groups the columns into 2^(n-m)
    subspaces of dimension 2^m in F^(2^n - 2^m): subspace i is spanned by
    columns i + k * 2^(n-m) for k = 0 .. 2^m - 1, each scaled by
    1/sqrt(2^n - 2^m). The result is tight with bound 2^n / (2^n - 2^m)
    and all pairwise squared chordal distances equal
    2^m - 2^m / (2^(n-m) - 1)^2.
    """
    if not isinstance(n, (int, np.integer)) or not isinstance(m, (int, np.integer)):
        raise ValidationError("n and m must be integers")
    n, m = int(n), int(m)
    if m < 0 or m >= n:
        raise ValidationError(f"need n > m >= 0, got n={n}, m={m}")
    w = build_walsh(n)
    dropped = w.base.entries[1 << m :, :].astype(np.int64)
    big_m = (1 << n) - (1 << m)
    n_sub = 1 << (n - m)
    scale = Fraction(1, big_m)
    subs = [
        subspace_from_columns(
            dropped[:, [i + k * n_sub for k in range(1 << m)]], scale
        )
        for i in range(n_sub)
    ]
    return make_fusion_frame(
        subs, constructed_grassmannian=True, degenerate=(n_sub == 2)
    )


def equidistance_certificate(ff: FusionFrame) -> FusionCertificate:
    """Tightness, equal dimensions, and equal pairwise chordal distances.

    ``grassmannian_by_construction`` is a provenance flag: it is set only
    for frames produced by build_gff (and only when every computed check
    also holds); it is not an independent optimality proof.
    """
    if len(ff.subspaces) < 2:
        raise ValidationError("certificate needs at least two subspaces")
    tight, bound = fusion_tight(ff)
    dims = {s.dim for s in ff.subspaces}
    equal_dim = len(dims) == 1
    equi = False
    dist_sq: Fraction | None = None
    if equal_dim:
        subs = ff.subspaces
        seen: set[Fraction] = set()
        for i in range(len(subs)):
            for j in range(i + 1, len(subs)):
                seen.add(chordal_dist_sq(subs[i], subs[j]))
                if len(seen) > 1:
                    break
            if len(seen) > 1:
                break
        if len(seen) == 1:
            equi = True
            dist_sq = seen.pop()
    return FusionCertificate(
        tight=tight,
        bound_A=bound,
        equal_dim=equal_dim,
        equi_distance=equi,
        dist_sq=dist_sq,
        grassmannian_by_construction=(
            ff.constructed_grassmannian and tight and equal_dim and equi
        ),
    )


def _float_projection(s: Subspace) -> np.ndarray:
    b = s.basis_raw.astype(np.float64)
    return (b @ b.T) * float(s.scale_sq)


def fusion_analyze(ff: FusionFrame, x, *, exact: bool = False) -> list[np.ndarray]:
    """Project x onto every subspace; returns the list of pieces P_i @ x."""
    if exact:
        xv = np.array([as_fraction(e) for e in np.asarray(x, dtype=object).reshape(-1)], dtype=object)
        if xv.size != ff.ambient_dim:
            raise ValidationError(f"signal must have length {ff.ambient_dim}")
        return [
            (s.basis_raw.astype(object) @ (s.basis_raw.T.astype(object) @ xv))
            * s.scale_sq
            for s in ff.subspaces
        ]
    xf = np.asarray(x, dtype=np.float64).reshape(-1)
    if xf.size != ff.ambient_dim:
        raise ValidationError(f"signal must have length {ff.ambient_dim}")
    return [_float_projection(s) @ xf for s in ff.subspaces]


def fusion_reconstruct_tight(ff: FusionFrame, pieces, *, exact: bool = False) -> np.ndarray:
    """Reconstruct x = (1/A) * sum_i piece_i on a tight fusion frame."""
    tight, bound = fusion_tight(ff)
    if not tight:
        raise ValidationError("fusion frame is not tight; least-squares is required")
    ps = list(pieces)
    if len(ps) != len(ff.subspaces):
        raise ValidationError(
            f"expected {len(ff.subspaces)} pieces, got {len(ps)}"
        )
    if exact:
        total = np.array([Fraction(0)] * ff.ambient_dim, dtype=object)
        for p in ps:
            pv = np.asarray(p, dtype=object).reshape(-1)
            if pv.size != ff.ambient_dim:
                raise ValidationError("piece has wrong ambient dimension")
            total = total + np.array([as_fraction(e) for e in pv], dtype=object)
        return total * (1 / bound)
    total = np.zeros(ff.ambient_dim, dtype=np.float64)
    for p in ps:
        pf = np.asarray(p, dtype=np.float64).reshape(-1)
        if pf.size != ff.ambient_dim:
            raise ValidationError("piece has wrong ambient dimension")
        total += pf
    return total / float(bound)
