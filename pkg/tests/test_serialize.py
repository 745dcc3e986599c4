"""JSON/CSV round trips and byte stability."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from hadframes import (
    ChannelConfig,
    ErasureSpec,
    ValidationError,
    build_gff,
    build_sylvester,
    build_walsh,
    etf_from_hadamard,
    make_fusion_frame,
    simulate_frame,
    subspace_from_columns,
)
from hadframes import serialize as ser


def test_fraction_pairs_are_lowest_terms_positive_denominator():
    assert ser.fraction_to_pair(Fraction(2, -6)) == {"num": -1, "den": 3}
    assert ser.pair_to_fraction({"num": 4, "den": 6}) == Fraction(2, 3)
    with pytest.raises(ValidationError):
        ser.pair_to_fraction({"num": 1})


def test_sign_matrix_json_round_trip():
    m = build_sylvester(3)
    back = ser.object_from_dict(ser.sign_matrix_to_dict(m))
    assert np.array_equal(back.entries, m.entries)


def test_walsh_matrix_json_round_trip():
    w = build_walsh(3)
    back = ser.object_from_dict(ser.walsh_matrix_to_dict(w))
    assert back.log_order == 3
    assert np.array_equal(back.base.entries, w.base.entries)


def test_frame_json_round_trip():
    f = etf_from_hadamard(build_walsh(3).base)
    back = ser.object_from_dict(ser.frame_to_dict(f))
    assert np.array_equal(back.raw, f.raw)
    assert back.scale_sq == f.scale_sq
    assert back.degenerate == f.degenerate


def test_fusion_json_round_trip_keeps_provenance():
    ff = build_gff(3, 1)
    back = ser.object_from_dict(ser.fusion_frame_to_dict(ff))
    assert back.constructed_grassmannian
    assert len(back.subspaces) == 4
    for a, b in zip(back.subspaces, ff.subspaces):
        assert np.array_equal(a.basis_raw, b.basis_raw)
        assert a.scale_sq == b.scale_sq


def test_json_bytes_are_stable():
    ff = build_gff(3, 1)
    blob1 = ser.canonical_dumps(ser.fusion_frame_to_dict(ff))
    blob2 = ser.canonical_dumps(ser.fusion_frame_to_dict(build_gff(3, 1)))
    assert blob1 == blob2


def test_golden_bytes_for_order2_walsh():
    blob = ser.canonical_dumps(ser.walsh_matrix_to_dict(build_walsh(1)))
    assert blob == (
        '{"entries":[1,1,1,-1],"kind":"walsh_matrix","log_order":1,"order":2}\n'
    )


def test_csv_round_trips():
    for obj in (build_sylvester(2), build_walsh(3), etf_from_hadamard(build_walsh(2).base), build_gff(3, 1)):
        back = ser.object_from_csv(ser.object_to_csv(obj))
        assert type(back).__name__ == type(obj).__name__


def test_csv_frame_preserves_scale():
    f = etf_from_hadamard(build_walsh(2).base)
    text = ser.object_to_csv(f)
    assert text.splitlines()[0] == "# kind=frame scale_sq=1/3"
    back = ser.object_from_csv(text)
    assert back.scale_sq == Fraction(1, 3)
    assert np.array_equal(back.raw, f.raw)


def test_csv_fusion_preserves_subspace_layout():
    ff = build_gff(3, 1)
    back = ser.object_from_csv(ser.object_to_csv(ff))
    assert [s.dim for s in back.subspaces] == [2, 2, 2, 2]
    for a, b in zip(back.subspaces, ff.subspaces):
        assert np.array_equal(a.basis_raw, b.basis_raw)


def test_mixed_scale_fusion_frame_cannot_use_single_scale_schema():
    e = np.eye(2, dtype=int)
    diag = np.array([[1], [1]])
    ff = make_fusion_frame(
        [
            subspace_from_columns(e[:, :1], 1),
            subspace_from_columns(e[:, 1:], 1),
            subspace_from_columns(diag, Fraction(1, 2)),
            subspace_from_columns(np.array([[1], [-1]]), Fraction(1, 2)),
        ]
    )
    with pytest.raises(ValidationError, match="single scale"):
        ser.fusion_frame_to_dict(ff)
    with pytest.raises(ValidationError, match="single"):
        ser.object_to_csv(ff)


def test_unknown_kind_rejected():
    with pytest.raises(ValidationError, match="unknown object kind"):
        ser.object_from_dict({"kind": "sonnet"})


def test_corrupted_csv_rejected():
    with pytest.raises(ValidationError, match="header"):
        ser.object_from_csv("1,2\n3,4\n")
    with pytest.raises(ValidationError, match="integer"):
        ser.object_from_csv("# kind=frame scale_sq=1/2\n1.5,2\n")


def test_corrupted_json_payload_rejected():
    d = ser.frame_to_dict(etf_from_hadamard(build_walsh(2).base))
    d["raw"] = d["raw"][:-1]
    with pytest.raises(ValidationError, match="expected"):
        ser.object_from_dict(d)


def test_config_round_trip():
    cfg = ChannelConfig(
        noise_std=0.25,
        erasure=ErasureSpec.fixed([0, 2]),
        trials=42,
        seed=9,
        mode="naive",
    )
    back = ser.config_from_dict(ser.config_to_dict(cfg))
    assert back == cfg


def test_report_dict_carries_config_echo():
    f = etf_from_hadamard(build_walsh(2).base)
    cfg = ChannelConfig(noise_std=0.1, trials=10, seed=3)
    d = ser.report_to_dict(simulate_frame(f, cfg))
    assert d["trials_run"] == 10
    assert d["config"]["noise_std"] == 0.1
    assert d["config"]["erasure"]["mode"] == "none"
