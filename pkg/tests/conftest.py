"""Shared fixtures: a known order-12 Hadamard matrix and small helpers."""

from __future__ import annotations

import numpy as np
import pytest

from hadframes import sign_matrix

# Order-12 Hadamard matrix (quadratic-residue construction, frozen as data;
# the library itself only builds power-of-two orders). Verified in-test.
HAD12_ROWS = [
    [1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
    [-1, 1, 1, -1, 1, 1, 1, -1, -1, -1, 1, -1],
    [-1, -1, 1, 1, -1, 1, 1, 1, -1, -1, -1, 1],
    [-1, 1, -1, 1, 1, -1, 1, 1, 1, -1, -1, -1],
    [-1, -1, 1, -1, 1, 1, -1, 1, 1, 1, -1, -1],
    [-1, -1, -1, 1, -1, 1, 1, -1, 1, 1, 1, -1],
    [-1, -1, -1, -1, 1, -1, 1, 1, -1, 1, 1, 1],
    [-1, 1, -1, -1, -1, 1, -1, 1, 1, -1, 1, 1],
    [-1, 1, 1, -1, -1, -1, 1, -1, 1, 1, -1, 1],
    [-1, 1, 1, 1, -1, -1, -1, 1, -1, 1, 1, -1],
    [-1, -1, 1, 1, 1, -1, -1, -1, 1, -1, 1, 1],
    [-1, 1, -1, 1, 1, 1, -1, -1, -1, 1, -1, 1],
]


@pytest.fixture(scope="session")
def had12():
    m = sign_matrix(np.asarray(HAD12_ROWS))
    g = m.entries.astype(np.int64) @ m.entries.astype(np.int64).T
    assert np.array_equal(g, 12 * np.eye(12, dtype=np.int64)), "fixture must be Hadamard"
    return m
