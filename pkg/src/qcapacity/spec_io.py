"""Channel-spec JSON files.

Two forms are accepted::

    {"d_in": 2, "d_out": 2, "kraus": [[[[re, im], ...], ...], ...]}
    {"zoo": "ad_qudit", "params": {"gammas": [0.3, 0.1]}}

In the explicit form each Kraus operator is a list of rows and each entry a
``[re, im]`` pair.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .channels import KrausChannel
from .errors import InvalidChannel
from . import zoo


def _decode_matrix(rows) -> np.ndarray:
    arr = np.asarray(rows, dtype=float)
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise InvalidChannel("Kraus entries must be [re, im] pairs arranged in rows")
    return arr[..., 0] + 1j * arr[..., 1]


def _encode_matrix(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m)]


def _decode_param(value):
    # nested [re, im] lists become complex arrays, other lists real arrays
    if isinstance(value, list):
        arr = np.asarray(value)
        if arr.dtype.kind in "fi" and arr.ndim >= 3 and arr.shape[-1] == 2:
            return arr[..., 0] + 1j * arr[..., 1]
        return arr if arr.ndim >= 2 else list(value)
    return value


def channel_from_dict(spec: dict) -> KrausChannel:
    if "zoo" in spec:
        name = spec["zoo"]
        if name not in zoo.ZOO:
            raise InvalidChannel(f"unknown zoo channel {name!r}; known: {sorted(zoo.ZOO)}")
        params = {k: _decode_param(v) for k, v in spec.get("params", {}).items()}
        return zoo.ZOO[name](**params)
    try:
        d_in, d_out, kraus = int(spec["d_in"]), int(spec["d_out"]), spec["kraus"]
    except KeyError as exc:
        raise InvalidChannel(f"channel spec is missing field {exc}") from exc
    ops = np.stack([_decode_matrix(k) for k in kraus])
    if ops.shape[1:] != (d_out, d_in):
        raise InvalidChannel(f"Kraus shape {ops.shape[1:]} does not match (d_out, d_in) = {(d_out, d_in)}")
    return KrausChannel(ops)


def channel_to_dict(ch: KrausChannel) -> dict:
    return {"d_in": ch.d_in, "d_out": ch.d_out, "kraus": [_encode_matrix(k) for k in ch.ops]}


def load_channel(path) -> KrausChannel:
    return channel_from_dict(json.loads(Path(path).read_text()))


def save_channel(ch: KrausChannel, path) -> None:
    Path(path).write_text(json.dumps(channel_to_dict(ch)))
