"""Canonical JSON and CSV interchange for matrices, frames, and reports.

JSON is emitted with sorted keys and fixed separators so identical objects
serialize to identical bytes; rationals appear as {"num", "den"} pairs in
lowest terms with positive denominator. CSV carries only the raw integer
matrix plus one header line with the scale (and subspace dimensions for
fusion frames); flags that cannot ride along in CSV are JSON-only.
"""

from __future__ import annotations

import json
from fractions import Fraction

import numpy as np

from .channel import ChannelConfig, ErasureSpec, SimReport
from .errors import ValidationError
from .frames import FrameCertificate, ScaledFrame, frame_from_integer_columns
from .fusion import (
    FusionCertificate,
    FusionFrame,
    make_fusion_frame,
    subspace_from_columns,
)
from .hadamard import MatrixCertificate, SignMatrix, WalshMatrix, sign_matrix


def fraction_to_pair(fr: Fraction) -> dict:
    return {"num": fr.numerator, "den": fr.denominator}


def pair_to_fraction(d) -> Fraction:
    if not isinstance(d, dict) or set(d) != {"num", "den"}:
        raise ValidationError(f"expected a {{num, den}} pair, got {d!r}")
    return Fraction(int(d["num"]), int(d["den"]))


def _optional_pair(fr: Fraction | None):
    return None if fr is None else fraction_to_pair(fr)


def canonical_dumps(payload: dict) -> str:
    """Deterministic, byte-stable JSON encoding."""
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


# ---------------------------------------------------------------------------
# objects -> dict


def sign_matrix_to_dict(m: SignMatrix) -> dict:
    return {
        "kind": "sign_matrix",
        "order": m.order,
        "entries": [int(x) for x in m.entries.reshape(-1)],
    }


def walsh_matrix_to_dict(w: WalshMatrix) -> dict:
    d = sign_matrix_to_dict(w.base)
    d["kind"] = "walsh_matrix"
    d["log_order"] = w.log_order
    return d


def frame_to_dict(f: ScaledFrame) -> dict:
    return {
        "kind": "frame",
        "ambient_dim": f.ambient_dim,
        "count": f.count,
        "scale_sq": fraction_to_pair(f.scale_sq),
        "raw": [int(x) for x in f.raw.reshape(-1)],
        "degenerate": f.degenerate,
    }


def fusion_frame_to_dict(ff: FusionFrame) -> dict:
    scales = {s.scale_sq for s in ff.subspaces}
    if len(scales) != 1:
        raise ValidationError(
            "fusion frame schema carries a single scale_sq; subspace scales differ"
        )
    return {
        "kind": "fusion_frame",
        "ambient_dim": ff.ambient_dim,
        "scale_sq": fraction_to_pair(next(iter(scales))),
        "subspaces": [
            [int(x) for x in s.basis_raw.reshape(-1)] for s in ff.subspaces
        ],
        "constructed_grassmannian": ff.constructed_grassmannian,
        "degenerate": ff.degenerate,
    }


def matrix_certificate_to_dict(c: MatrixCertificate) -> dict:
    return {"ok": c.ok, "order": c.order, "check": c.check, "detail": c.detail}


def frame_certificate_to_dict(c: FrameCertificate) -> dict:
    return {
        "tight": c.tight,
        "bound_A": _optional_pair(c.bound_A),
        "equiangular": c.equiangular,
        "alpha_sq": _optional_pair(c.alpha_sq),
        "welch_equality": c.welch_equality,
        "grassmannian_by_etf": c.grassmannian_by_etf,
    }


def fusion_certificate_to_dict(c: FusionCertificate) -> dict:
    return {
        "tight": c.tight,
        "bound_A": _optional_pair(c.bound_A),
        "equal_dim": c.equal_dim,
        "equi_distance": c.equi_distance,
        "dist_sq": _optional_pair(c.dist_sq),
        "grassmannian_by_construction": c.grassmannian_by_construction,
    }


def erasure_to_dict(e: ErasureSpec) -> dict:
    return {"mode": e.mode, "indices": list(e.indices), "k": e.k}


def config_to_dict(cfg: ChannelConfig) -> dict:
    return {
        "noise_std": cfg.noise_std,
        "erasure": erasure_to_dict(cfg.erasure),
        "trials": cfg.trials,
        "seed": cfg.seed,
        "mode": cfg.mode,
        "exact_threshold": cfg.exact_threshold,
    }


def config_from_dict(d: dict) -> ChannelConfig:
    er = d.get("erasure", {"mode": "none"})
    spec = ErasureSpec(
        mode=er.get("mode", "none"),
        indices=tuple(er.get("indices", ())),
        k=int(er.get("k", 0)),
    )
    return ChannelConfig(
        noise_std=float(d.get("noise_std", 0.0)),
        erasure=spec,
        trials=int(d.get("trials", 1)),
        seed=int(d.get("seed", 0)),
        mode=str(d.get("mode", "lstsq")),
        exact_threshold=float(d.get("exact_threshold", 1e-20)),
    )


def report_to_dict(r: SimReport) -> dict:
    return {
        "mean_mse": r.mean_mse,
        "max_mse": r.max_mse,
        "trials_run": r.trials_run,
        "exact_recovery_count": r.exact_recovery_count,
        "non_recoverable_count": r.non_recoverable_count,
        "config": config_to_dict(r.config),
    }


# ---------------------------------------------------------------------------
# dict -> objects


def _reshape(flat, rows: int, cols: int, what: str) -> np.ndarray:
    arr = np.asarray([int(x) for x in flat], dtype=np.int64)
    if arr.size != rows * cols:
        raise ValidationError(f"{what}: expected {rows * cols} entries, got {arr.size}")
    return arr.reshape(rows, cols)


def object_from_dict(d: dict):
    """Rebuild a SignMatrix, WalshMatrix, ScaledFrame, or FusionFrame.

    Constructors re-run all structural validation, so a dict that decodes
    successfully always yields an internally consistent object.
    """
    kind = d.get("kind")
    if kind in ("sign_matrix", "walsh_matrix"):
        order = int(d["order"])
        m = sign_matrix(_reshape(d["entries"], order, order, "entries"))
        if kind == "sign_matrix":
            return m
        log_order = int(d.get("log_order", max(order.bit_length() - 1, 0)))
        if 1 << log_order != order:
            raise ValidationError(f"walsh matrix order {order} is not 2**{log_order}")
        return WalshMatrix(log_order=log_order, base=m)
    if kind == "frame":
        m, n = int(d["ambient_dim"]), int(d["count"])
        return frame_from_integer_columns(
            _reshape(d["raw"], m, n, "raw"),
            pair_to_fraction(d["scale_sq"]),
            degenerate=bool(d.get("degenerate", False)),
        )
    if kind == "fusion_frame":
        m = int(d["ambient_dim"])
        scale = pair_to_fraction(d["scale_sq"])
        subs = []
        for i, flat in enumerate(d["subspaces"]):
            if len(flat) % m:
                raise ValidationError(f"subspace {i}: length not a multiple of {m}")
            subs.append(
                subspace_from_columns(_reshape(flat, m, len(flat) // m, f"subspace {i}"), scale)
            )
        return make_fusion_frame(
            subs,
            constructed_grassmannian=bool(d.get("constructed_grassmannian", False)),
            degenerate=bool(d.get("degenerate", False)),
        )
    raise ValidationError(f"unknown object kind {kind!r}")


# ---------------------------------------------------------------------------
# CSV


def _csv_header(fields: dict) -> str:
    body = " ".join(f"{k}={v}" for k, v in fields.items())
    return f"# {body}\n"


def _scale_token(fr: Fraction) -> str:
    return f"{fr.numerator}/{fr.denominator}"


def object_to_csv(obj) -> str:
    """Raw integer matrix rows under a single metadata header line."""
    if isinstance(obj, WalshMatrix):
        header = _csv_header({"kind": "walsh_matrix", "scale_sq": "1/1"})
        mat = obj.base.entries
    elif isinstance(obj, SignMatrix):
        header = _csv_header({"kind": "sign_matrix", "scale_sq": "1/1"})
        mat = obj.entries
    elif isinstance(obj, ScaledFrame):
        header = _csv_header({"kind": "frame", "scale_sq": _scale_token(obj.scale_sq)})
        mat = obj.raw
    elif isinstance(obj, FusionFrame):
        scales = {s.scale_sq for s in obj.subspaces}
        if len(scales) != 1:
            raise ValidationError("CSV fusion export needs a single shared scale_sq")
        dims = ",".join(str(s.dim) for s in obj.subspaces)
        header = _csv_header(
            {
                "kind": "fusion_frame",
                "scale_sq": _scale_token(next(iter(scales))),
                "subspace_dims": dims,
            }
        )
        mat = np.hstack([s.basis_raw for s in obj.subspaces])
    else:
        raise ValidationError(f"cannot export {type(obj).__name__} as CSV")
    rows = "\n".join(",".join(str(int(x)) for x in row) for row in mat)
    return header + rows + "\n"


def object_from_csv(text: str):
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("#"):
        raise ValidationError("CSV must start with a '# key=value ...' header line")
    fields = {}
    for token in lines[0].lstrip("#").split():
        if "=" not in token:
            raise ValidationError(f"malformed CSV header token {token!r}")
        k, v = token.split("=", 1)
        fields[k] = v
    try:
        mat = np.asarray([[int(x) for x in ln.split(",")] for ln in lines[1:]], dtype=np.int64)
    except Exception as exc:
        raise ValidationError(f"CSV body is not an integer matrix: {exc}") from None
    if mat.ndim != 2:
        raise ValidationError("CSV rows have inconsistent lengths")
    kind = fields.get("kind")
    if kind in ("sign_matrix", "walsh_matrix"):
        m = sign_matrix(mat)
        if kind == "sign_matrix":
            return m
        log_order = max(m.order.bit_length() - 1, 0)
        if 1 << log_order != m.order:
            raise ValidationError(f"walsh matrix order {m.order} is not a power of two")
        return WalshMatrix(log_order=log_order, base=m)
    scale = Fraction(fields.get("scale_sq", "1"))
    if kind == "frame":
        return frame_from_integer_columns(mat, scale)
    if kind == "fusion_frame":
        dims = [int(x) for x in fields.get("subspace_dims", "").split(",") if x]
        if sum(dims) != mat.shape[1]:
            raise ValidationError("subspace_dims do not add up to the column count")
        subs, at = [], 0
        for m_dim in dims:
            subs.append(subspace_from_columns(mat[:, at : at + m_dim], scale))
            at += m_dim
        return make_fusion_frame(subs)
    raise ValidationError(f"unknown CSV kind {kind!r}")


# ---------------------------------------------------------------------------
# text rendering


def _fr_text(fr: Fraction | None) -> str:
    return "-" if fr is None else f"{fr.numerator}/{fr.denominator}"


def frame_certificate_to_text(c: FrameCertificate) -> str:
    lines = [
        f"tight                {'yes' if c.tight else 'NO'}   A = {_fr_text(c.bound_A)}",
        f"equiangular          {'yes' if c.equiangular else 'NO'}   alpha^2 = {_fr_text(c.alpha_sq)}",
        f"welch_equality       {'yes' if c.welch_equality else 'NO'}",
        f"grassmannian_by_etf  {'yes' if c.grassmannian_by_etf else 'NO'}",
    ]
    return "\n".join(lines) + "\n"


def fusion_certificate_to_text(c: FusionCertificate) -> str:
    lines = [
        f"tight                         {'yes' if c.tight else 'NO'}   A = {_fr_text(c.bound_A)}",
        f"equal_dim                     {'yes' if c.equal_dim else 'NO'}",
        f"equi_distance                 {'yes' if c.equi_distance else 'NO'}   dist^2 = {_fr_text(c.dist_sq)}",
        f"grassmannian_by_construction  {'yes' if c.grassmannian_by_construction else 'NO'}",
    ]
    return "\n".join(lines) + "\n"


def report_to_text(r: SimReport) -> str:
    return (
        f"trials            {r.trials_run}\n"
        f"mean_mse          {r.mean_mse:.6e}\n"
        f"max_mse           {r.max_mse:.6e}\n"
        f"exact_recoveries  {r.exact_recovery_count}\n"
        f"non_recoverable   {r.non_recoverable_count}\n"
    )


def compare_to_text(rows: list[tuple[str, SimReport]]) -> str:
    width = max(len(name) for name, _ in rows)
    head = f"{'name'.ljust(width)}  {'mean_mse':>12}  {'max_mse':>12}  {'exact':>7}  {'nonrec':>6}\n"
    body = "".join(
        f"{name.ljust(width)}  {r.mean_mse:12.6e}  {r.max_mse:12.6e}"
        f"  {r.exact_recovery_count:7d}  {r.non_recoverable_count:6d}\n"
        for name, r in rows
    )
    return head + body


def compare_to_dict(rows: list[tuple[str, SimReport]]) -> dict:
    return {"rows": [{"name": name, "report": report_to_dict(r)} for name, r in rows]}
